#include "qsys/errors.hpp"
#include "qsys/funcat.hpp"

// Notation: for each 0-cell a of C the split of psi_a gives X_a: k_a -> F(a) and its dual
// Xbar_a, with gamma_a: X_a (x) Xbar_a -> psi_a. The projection p_X lives on
// Xbar_b (x) F(X) (x) X_a and G(X) is its range.
namespace qsys {

namespace {

std::vector<int> key_of(const Path &p) { return p.empty() ? std::vector<int>{-1 - p.at} : p.gens; }

std::string label(const PresentedTwoCat &C, const Path &p) {
    if (p.empty()) return "1_" + C.zero_cells[static_cast<std::size_t>(p.at)];
    std::string s;
    for (std::size_t k = 0; k < p.gens.size(); ++k) {
        if (k) s += ".";
        s += C.gen_one_cells[static_cast<std::size_t>(p.gens[k])].label;
    }
    return s;
}

const DualPair &pair_at(const GConstruction &g, int a) { return g.splits[static_cast<std::size_t>(a)].pair; }
const TwoCell  &gamma_at(const GConstruction &g, int a) { return g.splits[static_cast<std::size_t>(a)].gamma; }

// The cell Xbar_b (x) F(p) (x) X_a.
OneCell frame(const GConstruction &g, const PresentedTwoCat &C, const FunctorData &F, const Path &p) {
    return hcomp1({pair_at(g, C.path_tgt(p)).Xbar, one_cell_image(C, F, p), pair_at(g, C.path_src(p)).X});
}

TwoCell projection(const GConstruction &g, const PresentedTwoCat &C, const FunctorData &F, const EndFQSystem &q, const Path &p) {
    const int       a = C.path_src(p), b = C.path_tgt(p);
    const DualPair &A = pair_at(g, a), &B = pair_at(g, b);
    OneCell         FX  = one_cell_image(C, F, p);
    OneCell         V   = frame(g, C, F, p);
    TwoCell         psi = transformation_on_path(C, q.psi, F, F, p);
    TwoCell         iB = id2(B.Xbar), iF = id2(FX), iA = id2(A.X);
    TwoCell         t1 = fit(hcomp2({iB, iF, iA, A.ev.adjoint()}), V, hcomp1({B.Xbar, FX, A.X, A.Xbar, A.X}));
    TwoCell         t2 = hcomp2({iB, iF, gamma_at(g, a), iA});
    TwoCell         t3 = hcomp2({iB, psi.adjoint(), iA});
    TwoCell         t4 = hcomp2({iB, gamma_at(g, b).adjoint(), iF, iA});
    TwoCell         t5 = hcomp2({B.ev, id2(B.Xbar), iF, iA});
    return fit(t5 * t4 * t3 * t2 * t1, V, V);
}

const SplitResult &split_of(const GConstruction &g, int a) { return g.splits[static_cast<std::size_t>(a)]; }

} // namespace

const PathSplit &path_split(GConstruction &g, const PresentedTwoCat &C, const FunctorData &F, const EndFQSystem &q, const Path &p,
                            const Tolerance &tol) {
    auto key = key_of(p);
    auto it  = g.paths.find(key);
    if (it != g.paths.end()) return it->second;
    PathSplit ps;
    if (p.empty()) {
        const DualPair &A = pair_at(g, p.at);
        ps.u              = fit(A.ev.adjoint(), id1(split_of(g, p.at).k), frame(g, C, F, p));
        ps.p              = ps.u * ps.u.adjoint();
    } else {
        ps.p    = projection(g, C, F, q, p);
        auto sp = split_projection(ps.p.source(), ps.p, tol);
        ps.u    = sp.u;
    }
    return g.paths.emplace(key, std::move(ps)).first->second;
}

OneCell path_image(GConstruction &g, const PresentedTwoCat &C, const FunctorData &F, const EndFQSystem &q, const Path &p,
                   const Tolerance &tol) {
    return path_split(g, C, F, q, p, tol).u.source();
}

TwoCell tensorator(GConstruction &g, const PresentedTwoCat &C, const FunctorData &F, const EndFQSystem &q, const Path &X,
                   const Path &Y, const Tolerance &tol) {
    Path            XY = C.concat(X, Y);
    const int       a  = C.path_src(X);
    const DualPair &A  = pair_at(g, a);
    TwoCell         uX = path_split(g, C, F, q, X, tol).u;
    TwoCell         uY = path_split(g, C, F, q, Y, tol).u;
    TwoCell         uXY = path_split(g, C, F, q, XY, tol).u;
    OneCell         Bbar = pair_at(g, C.path_tgt(X)).Xbar, Cx = pair_at(g, C.path_src(Y)).X;
    OneCell         FX = one_cell_image(C, F, X), FY = one_cell_image(C, F, Y);
    TwoCell         mid = hcomp2({id2(Bbar), id2(FX), A.coev.adjoint(), id2(FY), id2(Cx)});
    return uXY.adjoint() * fit(mid * hcomp2(uX, uY), hcomp1(uX.source(), uY.source()), uXY.target());
}

TwoCell sandwich(GConstruction &g, const PresentedTwoCat &C, const FunctorData &F, const EndFQSystem &q, int f, const Tolerance &tol) {
    const auto &gc = C.gen_two_cells[static_cast<std::size_t>(f)];
    TwoCell     uX = path_split(g, C, F, q, gc.source, tol).u;
    TwoCell     uY = path_split(g, C, F, q, gc.target, tol).u;
    TwoCell     mid = hcomp2({id2(pair_at(g, C.path_tgt(gc.source)).Xbar), F.on2[static_cast<std::size_t>(f)], id2(pair_at(g, C.path_src(gc.source)).X)});
    return uY.adjoint() * fit(mid, uX.target(), uY.target()) * uX;
}

namespace {

// Iterated tensorator from G(X1) (x) ... (x) G(Xn) to G(X1...Xn).
TwoCell chain(GConstruction &g, const PresentedTwoCat &C, const FunctorData &F, const EndFQSystem &q, const Path &p, const Tolerance &tol) {
    if (p.gens.size() <= 1) return id2(path_image(g, C, F, q, p, tol));
    Path head{{p.gens[0]}, 0};
    Path rest{std::vector<int>(p.gens.begin() + 1, p.gens.end()), 0};
    return tensorator(g, C, F, q, head, rest, tol) * hcomp2(id2(path_image(g, C, F, q, head, tol)), chain(g, C, F, q, rest, tol));
}

} // namespace

GConstruction construct_G(const PresentedTwoCat &C, const FunctorData &F, const EndFQSystem &q, const Tolerance &tol, std::uint64_t seed) {
    validate_functor(C, F);
    GConstruction g;
    for (int a = 0; a < C.num0(); ++a) {
        QSystem qa{q.psi.comp0.at(static_cast<std::size_t>(a)), q.m.comp.at(static_cast<std::size_t>(a)), q.i.comp.at(static_cast<std::size_t>(a))};
        if (qa.Q.src() != F.on0[static_cast<std::size_t>(a)]) throw CellMismatch("psi component lives on the wrong 0-cell");
        g.splits.push_back(split_qsystem(qa, tol, seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(a + 1)));
    }
    for (int a = 0; a < C.num0(); ++a) {
        g.G.on0.push_back(g.splits[static_cast<std::size_t>(a)].k);
        g.G.F1.push_back(id2(id1(g.G.on0.back())));
    }
    for (int x = 0; x < C.num1(); ++x) g.G.on1.push_back(path_image(g, C, F, q, Path{{x}, 0}, tol));
    for (int f = 0; f < C.num2(); ++f) {
        const auto &gc = C.gen_two_cells[static_cast<std::size_t>(f)];
        TwoCell     Ts = chain(g, C, F, q, gc.source, tol), Tt = chain(g, C, F, q, gc.target, tol);
        TwoCell     Gf = sandwich(g, C, F, q, f, tol);
        g.G.on2.push_back(fit(Tt.adjoint() * Gf * Ts, one_cell_image(C, g.G, gc.source), one_cell_image(C, g.G, gc.target)));
    }
    return g;
}

namespace {

// phi on a path with the path's own isometry: (u_p* (x) id)(id (x) coev_a).
TwoCell phi_path(GConstruction &g, const PresentedTwoCat &C, const FunctorData &F, const EndFQSystem &q, const Path &p, const Tolerance &tol) {
    const int       a = C.path_src(p), b = C.path_tgt(p);
    const DualPair &A = pair_at(g, a), &B = pair_at(g, b);
    TwoCell         u  = path_split(g, C, F, q, p, tol).u;
    OneCell         FX = one_cell_image(C, F, p);
    TwoCell         t  = hcomp2({id2(B.Xbar), id2(FX), A.coev});
    return hcomp2(u.adjoint(), id2(A.Xbar)) * fit(t, hcomp1(B.Xbar, FX), hcomp1({B.Xbar, FX, A.X, A.Xbar}));
}

TwoCell phibar_path(GConstruction &g, const PresentedTwoCat &C, const FunctorData &F, const EndFQSystem &q, const Path &p, const Tolerance &tol) {
    const int       a = C.path_src(p), b = C.path_tgt(p);
    const DualPair &A = pair_at(g, a), &B = pair_at(g, b);
    TwoCell         u  = path_split(g, C, F, q, p, tol).u;
    OneCell         FX = one_cell_image(C, F, p);
    TwoCell         t  = hcomp2({B.coev.adjoint(), id2(FX), id2(A.X)});
    return fit(t * hcomp2(id2(B.X), u), hcomp1(B.X, u.source()), hcomp1(FX, A.X));
}

} // namespace

TransformationData construct_phi(const PresentedTwoCat &C, const FunctorData &F, GConstruction &g, const EndFQSystem &q,
                                 const Tolerance &tol) {
    TransformationData t;
    for (int a = 0; a < C.num0(); ++a) t.comp0.push_back(pair_at(g, a).Xbar);
    for (int x = 0; x < C.num1(); ++x) t.comp1.push_back(phi_path(g, C, F, q, Path{{x}, 0}, tol));
    return t;
}

TransformationData construct_phibar(const PresentedTwoCat &C, const FunctorData &F, GConstruction &g, const EndFQSystem &q,
                                    const Tolerance &tol) {
    TransformationData t;
    for (int a = 0; a < C.num0(); ++a) t.comp0.push_back(pair_at(g, a).X);
    for (int x = 0; x < C.num1(); ++x) t.comp1.push_back(phibar_path(g, C, F, q, Path{{x}, 0}, tol));
    return t;
}

namespace {

double unitarity(const TwoCell &u) { return std::max(residual(u.adjoint() * u, id2(u.source())), residual(u * u.adjoint(), id2(u.target()))); }

struct Ctx {
    const PresentedTwoCat &C;
    const FunctorData     &F;
    const EndFQSystem     &q;
    const Tolerance       &tol;
    GConstruction         &g;
    double                 thr;
    Report                &r;

    void add(const std::string &name, const std::string &anchor, double res) { r.add(name, anchor, res, thr); }
    std::string zl(int a) const { return C.zero_cells[static_cast<std::size_t>(a)]; }
    const PathSplit &ps(const Path &p) { return path_split(g, C, F, q, p, tol); }
    OneCell FX(const Path &p) const { return one_cell_image(C, F, p); }
    QSystem qs(int a) const {
        return {q.psi.comp0[static_cast<std::size_t>(a)], q.m.comp[static_cast<std::size_t>(a)], q.i.comp[static_cast<std::size_t>(a)]};
    }
};

void gamma_identities(Ctx &c) {
    for (int a = 0; a < c.C.num0(); ++a) {
        const DualPair &P  = pair_at(c.g, a);
        const TwoCell  &gm = gamma_at(c.g, a);
        QSystem         Q  = c.qs(a);
        QSystem         D  = qsystem_from_dual(P);
        OneCell         XX = D.Q;
        TwoCell         evQ   = Q.i.adjoint() * Q.m;
        TwoCell         coevD = D.m.adjoint() * D.i;
        TwoCell         iQ = id2(Q.Q), iX = id2(XX);
        TwoCell         left = fit(hcomp2({evQ, iX}) * hcomp2({iQ, gm, iX}) * fit(hcomp2(iQ, coevD), Q.Q, hcomp1({Q.Q, XX, XX})), Q.Q, XX);
        TwoCell right = fit(hcomp2({iX, evQ}) * hcomp2({iX, gm, iQ}) * fit(hcomp2(coevD, iQ), Q.Q, hcomp1({XX, XX, Q.Q})), Q.Q, XX);
        std::string s = " [" + c.zl(a) + "]";
        c.add("(a) gamma transpose left" + s, "gamma self-transpose", residual(left, gm.adjoint()));
        c.add("(a) gamma transpose right" + s, "gamma self-transpose", residual(right, gm.adjoint()));
        c.add("(a) counit" + s, "gamma counit", residual(Q.i.adjoint() * gm, P.coev.adjoint()));
        c.add("(a) comultiplication" + s, "gamma comultiplication", residual(Q.m.adjoint() * gm, hcomp2(gm, gm) * D.m.adjoint()));

        TwoCell iXa = id2(P.X), iXb = id2(P.Xbar);
        TwoCell contract = fit(hcomp2({iXa, P.ev, iXb}), hcomp1({P.X, P.Xbar, P.X, P.Xbar}), XX);
        TwoCell l = gm * contract * hcomp2(iX, gm.adjoint());
        TwoCell rr = gm * contract * hcomp2(gm.adjoint(), iX);
        c.add("(d) gamma multiplication left" + s, "gamma multiplication", residual(l, Q.m * hcomp2(gm, iQ)));
        c.add("(d) gamma multiplication right" + s, "gamma multiplication", residual(rr, Q.m * hcomp2(iQ, gm)));
    }
}

} // namespace

Report verify_main_theorem(const PresentedTwoCat &C, const FunctorData &F, const EndFQSystem &q, const Tolerance &tol,
                           std::uint64_t seed) {
    Report        r;
    GConstruction g = construct_G(C, F, q, tol, seed);
    Ctx           c{C, F, q, tol, g, 10 * tol.atol, r};
    Tolerance     t10{10 * tol.atol, std::max(tol.gap_tol, 10 * tol.atol)};

    std::vector<Path> gens, pairs, triples, units;
    for (int a = 0; a < C.num0(); ++a) units.push_back(Path{{}, a});
    for (int x = 0; x < C.num1(); ++x) gens.push_back(Path{{x}, 0});
    for (const auto &X : gens)
        for (const auto &Y : gens)
            if (C.path_src(X) == C.path_tgt(Y)) pairs.push_back(C.concat(X, Y));
    for (const auto &XY : pairs)
        for (const auto &Z : gens)
            if (C.path_src(XY) == C.path_tgt(Z) && triples.size() < 12) triples.push_back(C.concat(XY, Z));
    auto first = [](const Path &p) { return Path{{p.gens.front()}, 0}; };
    auto tail  = [](const Path &p) { return Path{std::vector<int>(p.gens.begin() + 1, p.gens.end()), 0}; };

    gamma_identities(c);

    // (b) projections and their isometries
    for (const auto *set : {&units, &gens, &pairs, &triples})
        for (const auto &p : *set) {
            const auto &s = c.ps(p);
            c.add("(b) p projection [" + label(C, p) + "]", "p_X projection",
                  std::max(residual(s.p * s.p, s.p), residual(s.p.adjoint(), s.p)));
            c.add("(b) u isometry [" + label(C, p) + "]", "u_X isometry",
                  std::max(residual(s.u.adjoint() * s.u, id2(s.u.source())), residual(s.u * s.u.adjoint(), s.p)));
        }

    // (c) contraction of u_X (x) u_Y
    for (const auto &XY : pairs) {
        Path            X = first(XY), Y = tail(XY);
        int             a = C.path_src(X), b = C.path_tgt(X), cc = C.path_src(Y);
        const DualPair &A = pair_at(g, a), &B = pair_at(g, b), &Cp = pair_at(g, cc);
        OneCell         FXc = c.FX(X), FYc = c.FX(Y);
        TwoCell         uu  = hcomp2(c.ps(X).u, c.ps(Y).u);
        OneCell         out = hcomp1({B.Xbar, FXc, FYc, Cp.X});
        TwoCell         iB = id2(B.Xbar), iFX = id2(FXc), iFY = id2(FYc), iC = id2(Cp.X);
        TwoCell         lhs = fit(hcomp2({iB, iFX, A.coev.adjoint(), iFY, iC}), uu.target(), out) * uu;
        TwoCell psiX = transformation_on_path(C, q.psi, F, F, X), psiY = transformation_on_path(C, q.psi, F, F, Y);
        TwoCell iPa  = id2(q.psi.comp0[static_cast<std::size_t>(a)]);
        TwoCell r1   = fit(hcomp2({iB, iFX, gamma_at(g, a), iFY, iC, Cp.ev.adjoint()}), uu.target(),
                           hcomp1({B.Xbar, FXc, q.psi.comp0[static_cast<std::size_t>(a)], FYc, Cp.X, Cp.Xbar, Cp.X}));
        TwoCell r2   = hcomp2({iB, iFX, iPa, iFY, gamma_at(g, cc), iC});
        TwoCell r3   = hcomp2({iB, iFX, iPa, psiY.adjoint(), iC});
        TwoCell r4   = hcomp2({iB, iFX, q.m.comp[static_cast<std::size_t>(a)], iFY, iC});
        TwoCell r5   = hcomp2({iB, psiX.adjoint(), iFY, iC});
        TwoCell r6   = hcomp2({iB, gamma_at(g, b).adjoint(), iFX, iFY, iC});
        TwoCell r7   = hcomp2({B.ev, iB, iFX, iFY, iC});
        TwoCell rhs  = fit(r7 * r6 * r5 * r4 * r3 * r2 * r1, uu.target(), out) * uu;
        c.add("(c) contraction [" + label(C, XY) + "]", "u_X u_Y contraction", residual(lhs, rhs));
    }

    // (e) p commutes with F^2 and with F(f)
    for (const auto &XY : pairs) {
        Path    X = first(XY), Y = tail(XY);
        TwoCell psiXY = transformation_on_path(C, q.psi, F, F, XY);
        TwoCell split = hcomp2(id2(c.FX(X)), transformation_on_path(C, q.psi, F, F, Y)) *
                        hcomp2(transformation_on_path(C, q.psi, F, F, X), id2(c.FX(Y)));
        c.add("(e) tensorator crossing [" + label(C, XY) + "]", "psi on composites", residual(psiXY, split));
    }
    for (int f = 0; f < C.num2(); ++f) {
        const auto &gc  = C.gen_two_cells[static_cast<std::size_t>(f)];
        const auto &pX  = c.ps(gc.source).p;
        const auto &pY  = c.ps(gc.target).p;
        TwoCell     mid = fit(hcomp2({id2(pair_at(g, C.path_tgt(gc.source)).Xbar), F.on2[static_cast<std::size_t>(f)],
                                      id2(pair_at(g, C.path_src(gc.source)).X)}),
                              pX.source(), pY.source());
        c.add("(e) 2-cell naturality [" + gc.label + "]", "p_X naturality", residual(pY * mid, mid * pX));
    }

    // (f) and (g) tensorators
    auto G2 = [&](const Path &X, const Path &Y) { return tensorator(g, C, F, q, X, Y, tol); };
    auto GX = [&](const Path &p) { return path_image(g, C, F, q, p, tol); };
    for (const auto &XY : pairs) c.add("(f) G2 unitary [" + label(C, XY) + "]", "G2 unitary", unitarity(G2(first(XY), tail(XY))));
    for (const auto &X : gens) {
        Path ua{{}, C.path_src(X)}, ub{{}, C.path_tgt(X)};
        c.add("(f) G2 unitary [" + label(C, X) + ".1]", "G2 unitary", unitarity(G2(X, ua)));
        c.add("(f) G2 unitary [1." + label(C, X) + "]", "G2 unitary", unitarity(G2(ub, X)));
        c.add("(g) G2 right unit [" + label(C, X) + "]", "G2 unit",
              residual(fit(G2(X, ua), hcomp1(GX(X), id1(g.G.on0[static_cast<std::size_t>(ua.at)])), GX(X)), unitor_right(GX(X))));
        c.add("(g) G2 left unit [" + label(C, X) + "]", "G2 unit",
              residual(fit(G2(ub, X), hcomp1(id1(g.G.on0[static_cast<std::size_t>(ub.at)]), GX(X)), GX(X)), unitor_left(GX(X))));
    }
    for (const auto &XYZ : triples) {
        Path    X = first(XYZ), YZ = tail(XYZ), Y = first(YZ), Z = tail(YZ), XY = C.concat(X, Y);
        TwoCell lhs = G2(XY, Z) * hcomp2(G2(X, Y), id2(GX(Z)));
        TwoCell rhs = G2(X, YZ) * hcomp2(id2(GX(X)), G2(Y, Z));
        c.add("(g) G2 associativity [" + label(C, XYZ) + "]", "G2 associativity", residual(lhs, rhs));
    }

    // (h) G as a freely presented functor
    r.append(check_functor(C, g.G, t10), "(h) G ");

    // (i) phi and phibar
    auto phi    = construct_phi(C, F, g, q, tol);
    auto phibar = construct_phibar(C, F, g, q, tol);
    for (const auto &X : gens) c.add("(i) phi unitary [" + label(C, X) + "]", "phi unitary", unitarity(phi_path(g, C, F, q, X, tol)));
    for (const auto &XY : pairs) {
        Path    X = first(XY), Y = tail(XY);
        int     cc = C.path_src(Y);
        TwoCell lhs = hcomp2(G2(X, Y), id2(phi.comp0[static_cast<std::size_t>(cc)])) * hcomp2(id2(GX(X)), phi_path(g, C, F, q, Y, tol)) *
                      hcomp2(phi_path(g, C, F, q, X, tol), id2(c.FX(Y)));
        TwoCell rhs = phi_path(g, C, F, q, XY, tol);
        c.add("(i) phi composite [" + label(C, XY) + "]", "phi composite", residual(fit(lhs, rhs.source(), rhs.target()), rhs));
    }
    for (int f = 0; f < C.num2(); ++f) {
        const auto &gc = C.gen_two_cells[static_cast<std::size_t>(f)];
        int         a = C.path_src(gc.source), b = C.path_tgt(gc.source);
        TwoCell     lhs = hcomp2(sandwich(g, C, F, q, f, tol), id2(phi.comp0[static_cast<std::size_t>(a)])) * phi_path(g, C, F, q, gc.source, tol);
        TwoCell     rhs = phi_path(g, C, F, q, gc.target, tol) * hcomp2(id2(phi.comp0[static_cast<std::size_t>(b)]), F.on2[static_cast<std::size_t>(f)]);
        c.add("(i) phi naturality [" + gc.label + "]", "phi naturality", residual(lhs, rhs));
    }
    for (int a = 0; a < C.num0(); ++a) {
        const OneCell &x   = phi.comp0[static_cast<std::size_t>(a)];
        TwoCell        s   = unitor_left(x).adjoint() * unitor_right(x);
        TwoCell        p1  = phi_path(g, C, F, q, Path{{}, a}, tol);
        TwoCell        lhs = hcomp2(g.G.F1[static_cast<std::size_t>(a)], id2(x)) * s;
        TwoCell        rhs = fit(p1, s.source(), s.target()) * hcomp2(id2(x), F.F1[static_cast<std::size_t>(a)]);
        c.add("(i) phi unit [" + c.zl(a) + "]", "phi unit", residual(lhs, rhs));
    }
    r.append(check_transformation(C, phi, F, g.G, t10), "(i) phi ");
    r.append(check_transformation(C, phibar, g.G, F, t10), "(i) phibar ");
    for (const auto &X : gens) {
        int             a = C.path_src(X), b = C.path_tgt(X);
        const DualPair &A = pair_at(g, a), &B = pair_at(g, b);
        TwoCell         pX = phi.comp1[static_cast<std::size_t>(X.gens[0])];
        OneCell         GXc = GX(X), FXc = c.FX(X);
        TwoCell         t1 = fit(hcomp2({id2(B.X), id2(GXc), A.ev.adjoint()}), hcomp1(B.X, GXc), hcomp1({B.X, GXc, A.Xbar, A.X}));
        TwoCell         t2 = hcomp2({id2(B.X), pX.adjoint(), id2(A.X)});
        TwoCell         t3 = fit(hcomp2({B.coev.adjoint(), id2(FXc), id2(A.X)}), hcomp1({B.X, B.Xbar, FXc, A.X}), hcomp1(FXc, A.X));
        c.add("(i) phibar bent phi [" + label(C, X) + "]", "phibar as bent phi", residual(t3 * t2 * t1, phibar.comp1[static_cast<std::size_t>(X.gens[0])]));
    }

    // (j) duality in Fun(C, D)
    auto             bar_phi = tensor_transformations(C, phibar, phi, F, g.G, F);
    auto             phi_bar = tensor_transformations(C, phi, phibar, g.G, F, g.G);
    ModificationData coev, evd;
    for (int a = 0; a < C.num0(); ++a) {
        const DualPair &P = pair_at(g, a);
        coev.comp.push_back(P.coev);
        evd.comp.push_back(P.ev.adjoint());
        auto z = dual_residuals(P);
        c.add("(j) zigzag [" + c.zl(a) + "]", "unitarily separable dual", std::max(z.zigzag_X, z.zigzag_Xbar));
        c.add("(j) ev ev* [" + c.zl(a) + "]", "unitarily separable dual", z.separable);
    }
    r.append(check_modification(C, coev, identity_transformation(C, F), bar_phi, F, F, t10), "(j) coev ");
    r.append(check_modification(C, evd, identity_transformation(C, g.G), phi_bar, g.G, g.G, t10), "(j) ev* ");

    // (k), (l), (m) gamma as a Q-system isomorphism in End(F)
    ModificationData gm;
    for (int a = 0; a < C.num0(); ++a) {
        QSystem     D = qsystem_from_dual(pair_at(g, a));
        QSystem     Q = c.qs(a);
        const auto &G = gamma_at(g, a);
        gm.comp.push_back(G);
        c.add("(k) multiplicative [" + c.zl(a) + "]", "gamma algebra map", residual(G * D.m, Q.m * hcomp2(G, G)));
        c.add("(k) unital [" + c.zl(a) + "]", "gamma algebra map", residual(G * D.i, Q.i));
        r.append(check_qsystem_iso(G, D, Q, t10), "(m) [" + c.zl(a) + "] ");
    }
    r.append(check_modification(C, gm, bar_phi, q.psi, F, F, t10), "(l) gamma ");

    for (int a = 0; a < C.num0(); ++a) r.note("G(" + c.zl(a) + ")", g.G.on0[static_cast<std::size_t>(a)]);
    return r;
}

} // namespace qsys
