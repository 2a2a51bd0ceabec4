#include <algorithm>

#include "qsys/errors.hpp"
#include "qsys/funcat.hpp"

namespace qsys {

namespace {

// Global position of the basis pair (p, q) in Y (x) X, indexed [p][q]; -1 when incompatible.
std::vector<std::vector<int>> pair_positions(const OneCell &Y, const OneCell &X) {
    std::vector<std::vector<int>> pos(static_cast<std::size_t>(Y.dim()), std::vector<int>(static_cast<std::size_t>(X.dim()), -1));
    int                           n = 0;
    for (int p = 0; p < Y.dim(); ++p)
        for (int q = 0; q < X.dim(); ++q)
            if (Y.grade(p).col == X.grade(q).row) pos[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = n++;
    return pos;
}

// Sector-wise copy of h into the copies-of-F layout of the G images.
TwoCell lift(const TwoCell &h, const OneCell &src, const OneCell &tgt, int copies) {
    TwoCell out(src, tgt);
    for (int r = 0; r < h.source().tgt(); ++r)
        for (int c = 0; c < h.source().src(); ++c)
            for (int s = 0; s < copies; ++s) out.block(r * copies + s, c * copies + s) = h.block(r, c);
    return out;
}

} // namespace

PresentedTwoCat random_presentation(Rng &rng, int max_zero_cells, int max_generators) {
    PresentedTwoCat C;
    int             n0 = uniform_int(rng, 1, std::max(1, max_zero_cells));
    for (int a = 0; a < n0; ++a) C.zero_cells.push_back(std::string(1, static_cast<char>('a' + a)));
    int n1 = uniform_int(rng, 1, std::max(1, max_generators));
    for (int g = 0; g < n1; ++g) C.gen_one_cells.push_back({"X" + std::to_string(g + 1), uniform_int(rng, 0, n0 - 1), uniform_int(rng, 0, n0 - 1)});

    // candidate boundaries: paths of length 1 and 2
    std::vector<Path> paths;
    for (int x = 0; x < n1; ++x) paths.push_back(Path{{x}, 0});
    for (int x = 0; x < n1; ++x)
        for (int y = 0; y < n1; ++y)
            if (C.gen_one_cells[static_cast<std::size_t>(x)].src == C.gen_one_cells[static_cast<std::size_t>(y)].tgt) paths.push_back(Path{{x, y}, 0});
    std::vector<std::pair<int, int>> parallel;
    for (std::size_t i = 0; i < paths.size(); ++i)
        for (std::size_t j = 0; j < paths.size(); ++j)
            if (C.path_src(paths[i]) == C.path_src(paths[j]) && C.path_tgt(paths[i]) == C.path_tgt(paths[j]) &&
                paths[i].gens.size() + paths[j].gens.size() <= 3)
                parallel.push_back({static_cast<int>(i), static_cast<int>(j)});
    int n2 = parallel.empty() ? 0 : uniform_int(rng, 0, 2);
    for (int f = 0; f < n2; ++f) {
        auto [i, j] = parallel[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(parallel.size()) - 1))];
        C.gen_two_cells.push_back({"f" + std::to_string(f + 1), paths[static_cast<std::size_t>(i)], paths[static_cast<std::size_t>(j)]});
    }
    return C;
}

FunctorData random_functor(Rng &rng, const PresentedTwoCat &C, int max_dim, int max_sector_dim) {
    FunctorData F;
    for (int a = 0; a < C.num0(); ++a) {
        F.on0.push_back(uniform_int(rng, 1, max_dim));
        F.F1.push_back(id2(id1(F.on0.back())));
    }
    for (const auto &g : C.gen_one_cells)
        F.on1.push_back(random_one_cell(rng, F.on0[static_cast<std::size_t>(g.src)], F.on0[static_cast<std::size_t>(g.tgt)], max_sector_dim, false));
    for (const auto &f : C.gen_two_cells)
        F.on2.push_back(random_two_cell(rng, one_cell_image(C, F, f.source), one_cell_image(C, F, f.target)));
    return F;
}

// G(a) = copies * F(a); G is F repeated `copies` times and conjugated by random unitaries W_X
// on each copy. phibar_a: G(a) -> F(a) joins j to each of its copies with multiplicity m, and
// phi_X = (W_X (x) id) composed with the flip of the multiplicity space past F(X).
DualizableTransformation random_dualizable_transformation(Rng &rng, const PresentedTwoCat &C, const FunctorData &F, int max_copies,
                                                          int max_multiplicity) {
    const int                s = uniform_int(rng, 1, max_copies);
    const int                d = uniform_int(rng, 1, max_multiplicity);
    DualizableTransformation out;
    out.copies       = s;
    out.multiplicity = d;
    FunctorData &G   = out.G;

    std::vector<DualPair> pairs;
    for (int a = 0; a < C.num0(); ++a) {
        int n = F.on0[static_cast<std::size_t>(a)];
        G.on0.push_back(n * s);
        G.F1.push_back(id2(id1(n * s)));
        std::vector<Grade> gr;
        for (int j = 0; j < n; ++j)
            for (int c = 0; c < s; ++c)
                for (int mu = 0; mu < d; ++mu) gr.push_back({j, j * s + c});
        pairs.push_back(standard_dual(OneCell(n * s, n, std::move(gr))));
        out.phibar.comp0.push_back(pairs.back().X);
        out.phi.comp0.push_back(pairs.back().Xbar);
    }

    std::vector<TwoCell> W;
    for (int g = 0; g < C.num1(); ++g) {
        const OneCell     &FX = F.on1[static_cast<std::size_t>(g)];
        std::vector<Grade> gr;
        for (int c = 0; c < s; ++c)
            for (auto q : FX.grading()) gr.push_back({q.row * s + c, q.col * s + c});
        G.on1.push_back(OneCell(FX.src() * s, FX.tgt() * s, std::move(gr)));
        W.push_back(random_unitary_two_cell(rng, G.on1.back()));
    }
    auto W_path = [&](const Path &p) {
        if (p.empty()) return id2(id1(G.on0[static_cast<std::size_t>(p.at)]));
        std::vector<TwoCell> parts;
        for (int g : p.gens) parts.push_back(W[static_cast<std::size_t>(g)]);
        return hcomp2(parts);
    };
    for (int f = 0; f < C.num2(); ++f) {
        const auto &gc  = C.gen_two_cells[static_cast<std::size_t>(f)];
        OneCell     src = one_cell_image(C, G, gc.source), tgt = one_cell_image(C, G, gc.target);
        TwoCell     Ff  = lift(F.on2[static_cast<std::size_t>(f)], src, tgt, s);
        G.on2.push_back(W_path(gc.target) * Ff * W_path(gc.source).adjoint());
    }

    for (int g = 0; g < C.num1(); ++g) {
        const auto    &gc    = C.gen_one_cells[static_cast<std::size_t>(g)];
        const OneCell &FX    = F.on1[static_cast<std::size_t>(g)];
        const OneCell &GX    = G.on1[static_cast<std::size_t>(g)];
        const OneCell &phi_b = out.phi.comp0[static_cast<std::size_t>(gc.tgt)];
        const OneCell &phi_a = out.phi.comp0[static_cast<std::size_t>(gc.src)];
        OneCell        S = hcomp1(phi_b, FX), T = hcomp1(GX, phi_a);
        auto           spos = pair_positions(phi_b, FX), tpos = pair_positions(GX, phi_a);
        Mat            P    = Mat::Zero(T.dim(), S.dim());
        for (int p = 0; p < phi_b.dim(); ++p) {
            int c = (p / d) % s, mu = p % d;
            for (int q = 0; q < FX.dim(); ++q) {
                int from = spos[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
                if (from < 0) continue;
                int qq = c * FX.dim() + q;
                int pp = (FX.grade(q).col * s + c) * d + mu;
                P(tpos[static_cast<std::size_t>(qq)][static_cast<std::size_t>(pp)], from) = 1.0;
            }
        }
        TwoCell flip = TwoCell::from_dense(S, T, P);
        out.phi.comp1.push_back(hcomp2(W[static_cast<std::size_t>(g)], id2(phi_a)) * flip);
    }

    // phibar_X = (coev_b* (x) id)(id (x) phi_X* (x) id)(id (x) ev_a*), pairs[a] = (phibar_a, phi_a)
    for (int g = 0; g < C.num1(); ++g) {
        const auto    &gc = C.gen_one_cells[static_cast<std::size_t>(g)];
        const DualPair &pa = pairs[static_cast<std::size_t>(gc.src)], &pb = pairs[static_cast<std::size_t>(gc.tgt)];
        const OneCell &FX = F.on1[static_cast<std::size_t>(g)], &GX = G.on1[static_cast<std::size_t>(g)];
        TwoCell        t1 = hcomp2({id2(pb.X), id2(GX), pa.ev.adjoint()});
        TwoCell        t2 = hcomp2({id2(pb.X), out.phi.comp1[static_cast<std::size_t>(g)].adjoint(), id2(pa.X)});
        TwoCell        t3 = hcomp2({pb.coev.adjoint(), id2(FX), id2(pa.X)});
        out.phibar.comp1.push_back(fit(t3 * t2 * t1, hcomp1(pb.X, GX), hcomp1(FX, pa.X)));
    }
    return out;
}

ModificationData random_modification_projection(Rng &rng, const PresentedTwoCat &C, const DualizableTransformation &d,
                                                const FunctorData &F) {
    const int        s = d.copies, m = d.multiplicity;
    std::vector<Mat> P;
    for (int c = 0; c < s; ++c) {
        Mat V = random_isometry(rng, m, uniform_int(rng, 0, m));
        P.push_back(V * V.adjoint());
    }
    ModificationData out;
    for (int a = 0; a < C.num0(); ++a) {
        const OneCell &x = d.phi.comp0[static_cast<std::size_t>(a)];
        TwoCell        p(x, x);
        for (int j = 0; j < F.on0[static_cast<std::size_t>(a)]; ++j)
            for (int c = 0; c < s; ++c) p.block(j * s + c, j) = P[static_cast<std::size_t>(c)];
        out.comp.push_back(p);
    }
    return out;
}

EndFQSystem transport_endf(Rng &rng, const PresentedTwoCat &C, const FunctorData &F, const EndFQSystem &q) {
    std::vector<TwoCell> u;
    for (const auto &x : q.psi.comp0) u.push_back(random_unitary_two_cell(rng, x));
    EndFQSystem out = q;
    for (int a = 0; a < C.num0(); ++a) {
        auto t = transport(QSystem{q.psi.comp0[static_cast<std::size_t>(a)], q.m.comp[static_cast<std::size_t>(a)], q.i.comp[static_cast<std::size_t>(a)]},
                           u[static_cast<std::size_t>(a)]);
        out.m.comp[static_cast<std::size_t>(a)] = t.m;
        out.i.comp[static_cast<std::size_t>(a)] = t.i;
    }
    for (int g = 0; g < C.num1(); ++g) {
        const auto &gc = C.gen_one_cells[static_cast<std::size_t>(g)];
        TwoCell     iX = id2(F.on1[static_cast<std::size_t>(g)]);
        out.psi.comp1[static_cast<std::size_t>(g)] =
            hcomp2(iX, u[static_cast<std::size_t>(gc.src)]) * q.psi.comp1[static_cast<std::size_t>(g)] * hcomp2(u[static_cast<std::size_t>(gc.tgt)].adjoint(), iX);
    }
    return out;
}

Scenario random_scenario(Rng &rng, int max_zero_cells, int max_generators) {
    Scenario s;
    s.C    = random_presentation(rng, max_zero_cells, max_generators);
    s.F    = random_functor(rng, s.C, 2, 2);
    auto d = random_dualizable_transformation(rng, s.C, s.F, 2, 2);
    s.q    = transport_endf(rng, s.C, s.F, qsystem_from_dualizable_transformation(s.C, s.F, d.G, d.phi, d.phibar));
    return s;
}

} // namespace qsys
