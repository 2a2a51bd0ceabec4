#include "qsys/funcat.hpp"

#include "qsys/errors.hpp"

namespace qsys {

namespace {

std::string list_label(const PresentedTwoCat &C, const Path &p) {
    if (p.empty()) return "1_" + C.zero_cells[static_cast<std::size_t>(p.at)];
    std::string s;
    for (std::size_t k = 0; k < p.gens.size(); ++k) {
        if (k) s += ".";
        s += C.gen_one_cells[static_cast<std::size_t>(p.gens[k])].label;
    }
    return s;
}

TwoCell lr(const OneCell &X) { return unitor_left(X).adjoint() * unitor_right(X); }

void expect_cell(const TwoCell &f, const OneCell &src, const OneCell &tgt, const std::string &what) {
    if (f.source() != src || f.target() != tgt) throw CellMismatch(what + " has the wrong boundary");
}

} // namespace

int PresentedTwoCat::path_src(const Path &p) const {
    check_path(p);
    return p.empty() ? p.at : gen_one_cells[static_cast<std::size_t>(p.gens.back())].src;
}

int PresentedTwoCat::path_tgt(const Path &p) const {
    check_path(p);
    return p.empty() ? p.at : gen_one_cells[static_cast<std::size_t>(p.gens.front())].tgt;
}

void PresentedTwoCat::check_path(const Path &p) const {
    if (p.empty()) {
        if (p.at < 0 || p.at >= num0()) throw IllTypedPath("empty path at unknown 0-cell " + std::to_string(p.at + 1));
        return;
    }
    for (int g : p.gens)
        if (g < 0 || g >= num1()) throw IllTypedPath("unknown generator " + std::to_string(g + 1));
    for (std::size_t k = 0; k + 1 < p.gens.size(); ++k) {
        const auto &outer = gen_one_cells[static_cast<std::size_t>(p.gens[k])];
        const auto &inner = gen_one_cells[static_cast<std::size_t>(p.gens[k + 1])];
        if (outer.src != inner.tgt) throw IllTypedPath(outer.label + " cannot follow " + inner.label);
    }
}

Path PresentedTwoCat::concat(const Path &outer, const Path &inner) const {
    if (path_src(outer) != path_tgt(inner)) throw IllTypedPath("paths do not compose");
    Path p;
    p.gens = outer.gens;
    p.gens.insert(p.gens.end(), inner.gens.begin(), inner.gens.end());
    p.at = path_src(inner);
    return p;
}

OneCell one_cell_image(const PresentedTwoCat &C, const FunctorData &F, const Path &p) {
    C.check_path(p);
    if (p.empty()) return id1(F.on0[static_cast<std::size_t>(p.at)]);
    std::vector<OneCell> cells;
    for (int g : p.gens) cells.push_back(F.on1[static_cast<std::size_t>(g)]);
    return hcomp1(cells);
}

TwoCell fit(const TwoCell &f, const OneCell &source, const OneCell &target) {
    if (f.source() == source && f.target() == target) return f;
    return canonical_iso(f.target(), target) * f * canonical_iso(source, f.source());
}

Path expr_source(const PresentedTwoCat &C, const Expr &e) {
    switch (e.kind) {
    case Expr::Kind::Gen: return C.gen_two_cells.at(static_cast<std::size_t>(e.gen)).source;
    case Expr::Kind::Id: return e.path;
    case Expr::Kind::V:
        if (e.args.empty()) throw IllTypedPath("empty vertical composite");
        return expr_source(C, e.args.back());
    case Expr::Kind::H: {
        if (e.args.empty()) throw IllTypedPath("empty horizontal composite");
        Path p = expr_source(C, e.args.back());
        for (std::size_t k = e.args.size() - 1; k-- > 0;) p = C.concat(expr_source(C, e.args[k]), p);
        return p;
    }
    case Expr::Kind::Dag:
        if (e.args.size() != 1) throw IllTypedPath("dagger takes one argument");
        return expr_target(C, e.args[0]);
    }
    return {};
}

Path expr_target(const PresentedTwoCat &C, const Expr &e) {
    switch (e.kind) {
    case Expr::Kind::Gen: return C.gen_two_cells.at(static_cast<std::size_t>(e.gen)).target;
    case Expr::Kind::Id: return e.path;
    case Expr::Kind::V:
        if (e.args.empty()) throw IllTypedPath("empty vertical composite");
        return expr_target(C, e.args.front());
    case Expr::Kind::H: {
        if (e.args.empty()) throw IllTypedPath("empty horizontal composite");
        Path p = expr_target(C, e.args.back());
        for (std::size_t k = e.args.size() - 1; k-- > 0;) p = C.concat(expr_target(C, e.args[k]), p);
        return p;
    }
    case Expr::Kind::Dag:
        if (e.args.size() != 1) throw IllTypedPath("dagger takes one argument");
        return expr_source(C, e.args[0]);
    }
    return {};
}

TwoCell two_cell_image(const PresentedTwoCat &C, const FunctorData &F, const Expr &e) {
    switch (e.kind) {
    case Expr::Kind::Gen:
        if (e.gen < 0 || e.gen >= C.num2()) throw IllTypedPath("unknown 2-cell generator");
        return F.on2[static_cast<std::size_t>(e.gen)];
    case Expr::Kind::Id: return id2(one_cell_image(C, F, e.path));
    case Expr::Kind::V: {
        for (std::size_t k = 0; k + 1 < e.args.size(); ++k)
            if (!(expr_source(C, e.args[k]) == expr_target(C, e.args[k + 1]))) throw IllTypedPath("vertical composite does not compose");
        TwoCell out = two_cell_image(C, F, e.args.front());
        for (std::size_t k = 1; k < e.args.size(); ++k) out = out * two_cell_image(C, F, e.args[k]);
        return out;
    }
    case Expr::Kind::H: {
        std::vector<TwoCell> parts;
        for (const auto &a : e.args) parts.push_back(two_cell_image(C, F, a));
        return fit(hcomp2(parts), one_cell_image(C, F, expr_source(C, e)), one_cell_image(C, F, expr_target(C, e)));
    }
    case Expr::Kind::Dag: return two_cell_image(C, F, e.args.at(0)).adjoint();
    }
    return {};
}

void validate_functor(const PresentedTwoCat &C, const FunctorData &F) {
    if (static_cast<int>(F.on0.size()) != C.num0() || static_cast<int>(F.on1.size()) != C.num1() ||
        static_cast<int>(F.on2.size()) != C.num2() || static_cast<int>(F.F1.size()) != C.num0())
        throw CellMismatch("functor data does not cover the presentation");
    for (int n : F.on0)
        if (n < 1) throw CellMismatch("0-cells of D are positive integers");
    for (int g = 0; g < C.num1(); ++g) {
        const auto &gc = C.gen_one_cells[static_cast<std::size_t>(g)];
        const auto &X  = F.on1[static_cast<std::size_t>(g)];
        if (X.src() != F.on0[static_cast<std::size_t>(gc.src)] || X.tgt() != F.on0[static_cast<std::size_t>(gc.tgt)])
            throw CellMismatch("image of " + gc.label + " has the wrong endpoints");
    }
    for (int f = 0; f < C.num2(); ++f) {
        const auto &gc = C.gen_two_cells[static_cast<std::size_t>(f)];
        if (C.path_src(gc.source) != C.path_src(gc.target) || C.path_tgt(gc.source) != C.path_tgt(gc.target))
            throw IllTypedPath(gc.label + " joins non-parallel paths");
        expect_cell(F.on2[static_cast<std::size_t>(f)], one_cell_image(C, F, gc.source), one_cell_image(C, F, gc.target),
                    "image of " + gc.label);
    }
    for (int a = 0; a < C.num0(); ++a) {
        OneCell one = id1(F.on0[static_cast<std::size_t>(a)]);
        expect_cell(F.F1[static_cast<std::size_t>(a)], one, one, "unit 2-cell");
    }
}

namespace {

std::vector<std::pair<int, int>> composable_pairs(const PresentedTwoCat &C) {
    std::vector<std::pair<int, int>> out;
    for (int x = 0; x < C.num1(); ++x)
        for (int y = 0; y < C.num1(); ++y)
            if (C.gen_one_cells[static_cast<std::size_t>(x)].src == C.gen_one_cells[static_cast<std::size_t>(y)].tgt) out.push_back({x, y});
    return out;
}

} // namespace

Report check_functor(const PresentedTwoCat &C, const FunctorData &F, const Tolerance &tol) {
    validate_functor(C, F);
    Report r;
    for (int a = 0; a < C.num0(); ++a) {
        const TwoCell &u   = F.F1[static_cast<std::size_t>(a)];
        TwoCell        one = id2(u.source());
        r.add("F1 unitary [" + C.zero_cells[static_cast<std::size_t>(a)] + "]", "functor unit",
              std::max(residual(u.adjoint() * u, one), residual(u * u.adjoint(), one)), tol.atol);
    }
    for (int g = 0; g < C.num1(); ++g) {
        const auto    &gc = C.gen_one_cells[static_cast<std::size_t>(g)];
        const OneCell &X  = F.on1[static_cast<std::size_t>(g)];
        TwoCell        iX = id2(X);
        TwoCell        l = unitor_left(X), rr = unitor_right(X);
        r.add("left unit [" + gc.label + "]", "functor unit",
              residual(l * hcomp2(F.F1[static_cast<std::size_t>(gc.tgt)], iX), l), tol.atol);
        r.add("right unit [" + gc.label + "]", "functor unit",
              residual(rr * hcomp2(iX, F.F1[static_cast<std::size_t>(gc.src)]), rr), tol.atol);
    }
    // tensorators of the free extension on composable triples
    auto pairs = composable_pairs(C);
    for (auto [x, y] : pairs)
        for (int z = 0; z < C.num1(); ++z) {
            if (C.gen_one_cells[static_cast<std::size_t>(y)].src != C.gen_one_cells[static_cast<std::size_t>(z)].tgt) continue;
            const OneCell &X = F.on1[static_cast<std::size_t>(x)], &Y = F.on1[static_cast<std::size_t>(y)], &Z = F.on1[static_cast<std::size_t>(z)];
            OneCell        XYZ = one_cell_image(C, F, Path{{x, y, z}, 0});
            OneCell        XY = hcomp1(X, Y), YZ = hcomp1(Y, Z);
            TwoCell        lhs = canonical_iso(hcomp1(XY, Z), XYZ) * hcomp2(canonical_iso(XY, XY), id2(Z));
            TwoCell        rhs = canonical_iso(hcomp1(X, YZ), XYZ) * hcomp2(id2(X), canonical_iso(YZ, YZ));
            r.add("associativity [" + list_label(C, Path{{x, y, z}, 0}) + "]", "functor tensorator", residual(lhs, rhs), tol.atol);
        }
    for (std::size_t k = 0; k < C.relations.size(); ++k) {
        const auto &[lhs, rhs] = C.relations[k];
        if (!(expr_source(C, lhs) == expr_source(C, rhs)) || !(expr_target(C, lhs) == expr_target(C, rhs)))
            throw IllTypedPath("relation " + std::to_string(k + 1) + " joins different paths");
        r.add("relation " + std::to_string(k + 1), "functor relation", residual(two_cell_image(C, F, lhs), two_cell_image(C, F, rhs)),
              tol.atol);
    }
    return r;
}

TwoCell transformation_on_path(const PresentedTwoCat &C, const TransformationData &phi, const FunctorData &F, const FunctorData &G,
                               const Path &p) {
    C.check_path(p);
    if (p.empty()) return lr(phi.comp0[static_cast<std::size_t>(p.at)]);
    TwoCell acc = phi.comp1[static_cast<std::size_t>(p.gens[0])];
    OneCell GX  = G.on1[static_cast<std::size_t>(p.gens[0])];
    for (std::size_t k = 1; k < p.gens.size(); ++k) {
        int g = p.gens[k];
        acc   = hcomp2(id2(GX), phi.comp1[static_cast<std::size_t>(g)]) * hcomp2(acc, id2(F.on1[static_cast<std::size_t>(g)]));
        GX    = hcomp1(GX, G.on1[static_cast<std::size_t>(g)]);
    }
    return acc;
}

namespace {

void validate_transformation(const PresentedTwoCat &C, const TransformationData &phi, const FunctorData &F, const FunctorData &G) {
    if (static_cast<int>(phi.comp0.size()) != C.num0() || static_cast<int>(phi.comp1.size()) != C.num1())
        throw CellMismatch("transformation data does not cover the presentation");
    for (int a = 0; a < C.num0(); ++a) {
        const auto &x = phi.comp0[static_cast<std::size_t>(a)];
        if (x.src() != F.on0[static_cast<std::size_t>(a)] || x.tgt() != G.on0[static_cast<std::size_t>(a)])
            throw CellMismatch("component at " + C.zero_cells[static_cast<std::size_t>(a)] + " has the wrong endpoints");
    }
    for (int g = 0; g < C.num1(); ++g) {
        const auto &gc = C.gen_one_cells[static_cast<std::size_t>(g)];
        expect_cell(phi.comp1[static_cast<std::size_t>(g)],
                    hcomp1(phi.comp0[static_cast<std::size_t>(gc.tgt)], F.on1[static_cast<std::size_t>(g)]),
                    hcomp1(G.on1[static_cast<std::size_t>(g)], phi.comp0[static_cast<std::size_t>(gc.src)]), "component at " + gc.label);
    }
}

} // namespace

Report check_transformation(const PresentedTwoCat &C, const TransformationData &phi, const FunctorData &F, const FunctorData &G,
                            const Tolerance &tol) {
    validate_transformation(C, phi, F, G);
    Report r;
    for (int g = 0; g < C.num1(); ++g) {
        const TwoCell &u = phi.comp1[static_cast<std::size_t>(g)];
        r.add("unitary [" + C.gen_one_cells[static_cast<std::size_t>(g)].label + "]", "transformation unitary",
              std::max(residual(u.adjoint() * u, id2(u.source())), residual(u * u.adjoint(), id2(u.target()))), tol.atol);
    }
    for (auto [x, y] : composable_pairs(C)) {
        Path    X{{x}, 0}, Y{{y}, 0};
        Path    XY = C.concat(X, Y);
        int     c  = C.path_src(Y);
        TwoCell px = transformation_on_path(C, phi, F, G, X), py = transformation_on_path(C, phi, F, G, Y);
        OneCell GX = G.on1[static_cast<std::size_t>(x)], FY = F.on1[static_cast<std::size_t>(y)];
        TwoCell lhs = hcomp2(id2(GX), py) * hcomp2(px, id2(FY));
        TwoCell rhs = transformation_on_path(C, phi, F, G, XY);
        // free tensorators of F and G are identities on nonempty paths
        lhs = fit(lhs, rhs.source(), hcomp1(one_cell_image(C, G, XY), phi.comp0[static_cast<std::size_t>(c)]));
        r.add("composite [" + list_label(C, XY) + "]", "transformation coherence", residual(lhs, rhs), tol.atol);
    }
    for (int f = 0; f < C.num2(); ++f) {
        const auto &gc = C.gen_two_cells[static_cast<std::size_t>(f)];
        int         a = C.path_src(gc.source), b = C.path_tgt(gc.source);
        TwoCell     lhs = hcomp2(G.on2[static_cast<std::size_t>(f)], id2(phi.comp0[static_cast<std::size_t>(a)])) *
                      transformation_on_path(C, phi, F, G, gc.source);
        TwoCell rhs = transformation_on_path(C, phi, F, G, gc.target) *
                      hcomp2(id2(phi.comp0[static_cast<std::size_t>(b)]), F.on2[static_cast<std::size_t>(f)]);
        r.add("naturality [" + gc.label + "]", "transformation naturality", residual(lhs, rhs), tol.atol);
    }
    for (int a = 0; a < C.num0(); ++a) {
        const OneCell &x = phi.comp0[static_cast<std::size_t>(a)];
        TwoCell        s = lr(x);
        TwoCell        lhs = hcomp2(G.F1[static_cast<std::size_t>(a)], id2(x)) * s;
        TwoCell        rhs = s * hcomp2(id2(x), F.F1[static_cast<std::size_t>(a)]);
        r.add("unit [" + C.zero_cells[static_cast<std::size_t>(a)] + "]", "transformation unit", residual(lhs, rhs), tol.atol);
    }
    return r;
}

Report check_modification(const PresentedTwoCat &C, const ModificationData &eta, const TransformationData &phi,
                          const TransformationData &psi, const FunctorData &F, const FunctorData &G, const Tolerance &tol) {
    if (static_cast<int>(eta.comp.size()) != C.num0()) throw CellMismatch("modification data does not cover the presentation");
    for (int a = 0; a < C.num0(); ++a)
        expect_cell(eta.comp[static_cast<std::size_t>(a)], phi.comp0[static_cast<std::size_t>(a)], psi.comp0[static_cast<std::size_t>(a)],
                    "modification component");
    Report r;
    double sup = 0.0;
    for (const auto &e : eta.comp) sup = std::max(sup, e.norm());
    r.note("sup |eta_a|", sup);
    for (int g = 0; g < C.num1(); ++g) {
        const auto &gc  = C.gen_one_cells[static_cast<std::size_t>(g)];
        TwoCell     lhs = psi.comp1[static_cast<std::size_t>(g)] * hcomp2(eta.comp[static_cast<std::size_t>(gc.tgt)], id2(F.on1[static_cast<std::size_t>(g)]));
        TwoCell     rhs = hcomp2(id2(G.on1[static_cast<std::size_t>(g)]), eta.comp[static_cast<std::size_t>(gc.src)]) * phi.comp1[static_cast<std::size_t>(g)];
        r.add("slide [" + gc.label + "]", "modification", residual(lhs, rhs), tol.atol);
    }
    return r;
}

TransformationData identity_transformation(const PresentedTwoCat &C, const FunctorData &F) {
    TransformationData t;
    for (int a = 0; a < C.num0(); ++a) t.comp0.push_back(id1(F.on0[static_cast<std::size_t>(a)]));
    for (int g = 0; g < C.num1(); ++g) {
        const OneCell &X = F.on1[static_cast<std::size_t>(g)];
        t.comp1.push_back(unitor_right(X).adjoint() * unitor_left(X));
    }
    return t;
}

TransformationData tensor_transformations(const PresentedTwoCat &C, const TransformationData &phi, const TransformationData &psi,
                                          const FunctorData &F, const FunctorData &G, const FunctorData &H) {
    validate_transformation(C, psi, F, G);
    validate_transformation(C, phi, G, H);
    TransformationData t;
    for (int a = 0; a < C.num0(); ++a)
        t.comp0.push_back(hcomp1(phi.comp0[static_cast<std::size_t>(a)], psi.comp0[static_cast<std::size_t>(a)]));
    for (int g = 0; g < C.num1(); ++g) {
        const auto &gc = C.gen_one_cells[static_cast<std::size_t>(g)];
        t.comp1.push_back(hcomp2(phi.comp1[static_cast<std::size_t>(g)], id2(psi.comp0[static_cast<std::size_t>(gc.src)])) *
                          hcomp2(id2(phi.comp0[static_cast<std::size_t>(gc.tgt)]), psi.comp1[static_cast<std::size_t>(g)]));
    }
    return t;
}

ModificationData tensor_modifications(const ModificationData &n, const ModificationData &t) {
    if (n.comp.size() != t.comp.size()) throw CellMismatch("modifications over different presentations");
    ModificationData out;
    for (std::size_t a = 0; a < n.comp.size(); ++a) out.comp.push_back(hcomp2(n.comp[a], t.comp[a]));
    return out;
}

ModificationData vcomp_modifications(const ModificationData &n2, const ModificationData &n1) {
    if (n2.comp.size() != n1.comp.size()) throw CellMismatch("modifications over different presentations");
    ModificationData out;
    for (std::size_t a = 0; a < n1.comp.size(); ++a) out.comp.push_back(n2.comp[a] * n1.comp[a]);
    return out;
}

ModificationSplit split_modification_projection(const PresentedTwoCat &C, const TransformationData &phi, const ModificationData &p,
                                                const FunctorData &F, const FunctorData &G, const Tolerance &tol) {
    validate_transformation(C, phi, F, G);
    if (static_cast<int>(p.comp.size()) != C.num0()) throw CellMismatch("modification data does not cover the presentation");
    ModificationSplit out;
    for (int a = 0; a < C.num0(); ++a) {
        auto sp = split_projection(phi.comp0[static_cast<std::size_t>(a)], p.comp[static_cast<std::size_t>(a)], tol);
        out.x.comp0.push_back(sp.Y);
        out.iso.comp.push_back(sp.u);
    }
    for (int g = 0; g < C.num1(); ++g) {
        const auto &gc = C.gen_one_cells[static_cast<std::size_t>(g)];
        const auto &va = out.iso.comp[static_cast<std::size_t>(gc.src)];
        const auto &vb = out.iso.comp[static_cast<std::size_t>(gc.tgt)];
        out.x.comp1.push_back(hcomp2(id2(G.on1[static_cast<std::size_t>(g)]), va.adjoint()) * phi.comp1[static_cast<std::size_t>(g)] *
                              hcomp2(vb, id2(F.on1[static_cast<std::size_t>(g)])));
    }
    return out;
}

Report check_endf_qsystem(const PresentedTwoCat &C, const FunctorData &F, const EndFQSystem &q, const Tolerance &tol) {
    validate_functor(C, F);
    validate_transformation(C, q.psi, F, F);
    Report r;
    for (int a = 0; a < C.num0(); ++a) {
        QSystem qa{q.psi.comp0[static_cast<std::size_t>(a)], q.m.comp.at(static_cast<std::size_t>(a)), q.i.comp.at(static_cast<std::size_t>(a))};
        r.append(check_qsystem(qa, tol), "psi[" + C.zero_cells[static_cast<std::size_t>(a)] + "] ");
    }
    r.append(check_transformation(C, q.psi, F, F, tol), "psi ");
    auto pp = tensor_transformations(C, q.psi, q.psi, F, F, F);
    r.append(check_modification(C, q.m, pp, q.psi, F, F, tol), "m ");
    r.append(check_modification(C, q.i, identity_transformation(C, F), q.psi, F, F, tol), "i ");
    return r;
}

EndFQSystem qsystem_from_dualizable_transformation(const PresentedTwoCat &C, const FunctorData &F, const FunctorData &G,
                                                   const TransformationData &phi, const TransformationData &phibar) {
    validate_transformation(C, phi, F, G);
    validate_transformation(C, phibar, G, F);
    EndFQSystem q;
    q.psi = tensor_transformations(C, phibar, phi, F, G, F);
    for (int a = 0; a < C.num0(); ++a) {
        auto pair = standard_dual(phibar.comp0[static_cast<std::size_t>(a)]);
        if (pair.Xbar != phi.comp0[static_cast<std::size_t>(a)])
            throw CellMismatch("phi at " + C.zero_cells[static_cast<std::size_t>(a)] + " is not the standard dual of phibar");
        auto qa = qsystem_from_dual(pair);
        q.m.comp.push_back(qa.m);
        q.i.comp.push_back(qa.i);
    }
    return q;
}

Scenario constant_functor_scenario(const PresentedTwoCat &C, const QSystem &Q) {
    require_qsystem(Q, Tolerance{});
    const int b = Q.Q.src();
    Scenario  s;
    s.C = C;
    OneCell one = id1(b);
    s.F.on0.assign(static_cast<std::size_t>(C.num0()), b);
    s.F.on1.assign(static_cast<std::size_t>(C.num1()), one);
    s.F.F1.assign(static_cast<std::size_t>(C.num0()), id2(one));
    for (int f = 0; f < C.num2(); ++f) {
        const auto &gc = C.gen_two_cells[static_cast<std::size_t>(f)];
        s.F.on2.push_back(fit(id2(one), one_cell_image(C, s.F, gc.source), one_cell_image(C, s.F, gc.target)));
    }
    s.q.psi.comp0.assign(static_cast<std::size_t>(C.num0()), Q.Q);
    s.q.psi.comp1.assign(static_cast<std::size_t>(C.num1()), lr(Q.Q));
    s.q.m.comp.assign(static_cast<std::size_t>(C.num0()), Q.m);
    s.q.i.comp.assign(static_cast<std::size_t>(C.num0()), Q.i);
    return s;
}

} // namespace qsys
