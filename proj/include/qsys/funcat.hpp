#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qsys/random.hpp"
#include "qsys/splitting.hpp"

// Fun(C, D) for a finitely presented 2-category C and D = graded matrices.
//
// C is free on generator 1-cells and 2-cells. A path lists generator indices in
// composition order: {g0, g1, g2} stands for g0 (x) g1 (x) g2, so g2 acts first and
// src(g_k) == tgt(g_{k+1}). The empty path at a 0-cell is the unit 1-cell there.
namespace qsys {

struct Path {
    std::vector<int> gens;
    int              at = 0; // 0-cell of an empty path, ignored otherwise

    bool empty() const { return gens.empty(); }
    bool operator==(const Path &) const = default;
};

struct GenOneCell {
    std::string label;
    int         src;
    int         tgt;
};

struct GenTwoCell {
    std::string label;
    Path        source;
    Path        target;
};

// Formal 2-cell expression used in relations.
struct Expr {
    enum class Kind { Gen, Id, V, H, Dag };
    Kind              kind = Kind::Id;
    int               gen  = 0;  // Gen
    Path              path;      // Id
    std::vector<Expr> args;      // V: args[0] . args[1] . ...; H: args[0] (x) args[1] (x) ...; Dag: args[0]
};

struct PresentedTwoCat {
    std::vector<std::string>         zero_cells;
    std::vector<GenOneCell>          gen_one_cells;
    std::vector<GenTwoCell>          gen_two_cells;
    std::vector<std::pair<Expr, Expr>> relations;

    int num0() const { return static_cast<int>(zero_cells.size()); }
    int num1() const { return static_cast<int>(gen_one_cells.size()); }
    int num2() const { return static_cast<int>(gen_two_cells.size()); }

    // Throws IllTypedPath.
    int  path_src(const Path &p) const;
    int  path_tgt(const Path &p) const;
    void check_path(const Path &p) const;
    Path concat(const Path &outer, const Path &inner) const;
};

// Freely extended *-2-functor: F^2 is the identity on nonempty paths and a unitor otherwise.
struct FunctorData {
    std::vector<int>     on0;
    std::vector<OneCell> on1;
    std::vector<TwoCell> on2;
    std::vector<TwoCell> F1; // 1_{F a} -> F(1_a) = 1_{F a}; the identity unless corrupted
};

// phi: F => G. comp1[X]: comp0[b] (x) F(X) -> G(X) (x) comp0[a] for X: a -> b.
struct TransformationData {
    std::vector<OneCell> comp0;
    std::vector<TwoCell> comp1;
};

struct ModificationData {
    std::vector<TwoCell> comp;
};

struct EndFQSystem {
    TransformationData psi;
    ModificationData   m;
    ModificationData   i;
};

OneCell one_cell_image(const PresentedTwoCat &C, const FunctorData &F, const Path &p);
// Value of a generator 2-cell or formal expression under F.
TwoCell two_cell_image(const PresentedTwoCat &C, const FunctorData &F, const Expr &e);
Path    expr_source(const PresentedTwoCat &C, const Expr &e);
Path    expr_target(const PresentedTwoCat &C, const Expr &e);

// Reinterpret f between cells that differ only by unit strands.
TwoCell fit(const TwoCell &f, const OneCell &source, const OneCell &target);

// Shape checks throw CellMismatch; axiom residuals are reported.
void   validate_functor(const PresentedTwoCat &C, const FunctorData &F);
Report check_functor(const PresentedTwoCat &C, const FunctorData &F, const Tolerance &tol);

// Free extension of a transformation to a path: phi_b (x) F(p) -> G(p) (x) phi_a.
TwoCell transformation_on_path(const PresentedTwoCat &C, const TransformationData &phi, const FunctorData &F, const FunctorData &G,
                               const Path &p);

Report check_transformation(const PresentedTwoCat &C, const TransformationData &phi, const FunctorData &F, const FunctorData &G,
                            const Tolerance &tol);
Report check_modification(const PresentedTwoCat &C, const ModificationData &eta, const TransformationData &phi,
                          const TransformationData &psi, const FunctorData &F, const FunctorData &G, const Tolerance &tol);

TransformationData identity_transformation(const PresentedTwoCat &C, const FunctorData &F);
// phi: G => H, psi: F => G; the result F => H has components phi_a (x) psi_a.
TransformationData tensor_transformations(const PresentedTwoCat &C, const TransformationData &phi, const TransformationData &psi,
                                          const FunctorData &F, const FunctorData &G, const FunctorData &H);
ModificationData tensor_modifications(const ModificationData &n, const ModificationData &t);
ModificationData vcomp_modifications(const ModificationData &n2, const ModificationData &n1);

struct ModificationSplit {
    TransformationData x;
    ModificationData   iso; // x => phi, isometric with iso iso* = p
};
ModificationSplit split_modification_projection(const PresentedTwoCat &C, const TransformationData &phi, const ModificationData &p,
                                                const FunctorData &F, const FunctorData &G, const Tolerance &tol);

Report check_endf_qsystem(const PresentedTwoCat &C, const FunctorData &F, const EndFQSystem &q, const Tolerance &tol);

// psi = phibar (x) phi with the Q-system of the standard dual of each phibar_a.
// phi_a must carry the transposed grading of phibar_a (the standard dual).
EndFQSystem qsystem_from_dualizable_transformation(const PresentedTwoCat &C, const FunctorData &F, const FunctorData &G,
                                                   const TransformationData &phi, const TransformationData &phibar);

// Split data for one path of C.
struct PathSplit {
    TwoCell p; // projection on xbar_b-side (x) F(path) (x) x_a-side
    TwoCell u; // G(path) -> that cell, u* u = id, u u* = p
};

struct GConstruction {
    std::vector<SplitResult> splits; // per 0-cell of C
    FunctorData              G;      // freely extended form on generators
    // Keyed by path generators; empty paths are keyed by {-1 - a}.
    std::map<std::vector<int>, PathSplit> paths;
};

GConstruction construct_G(const PresentedTwoCat &C, const FunctorData &F, const EndFQSystem &q, const Tolerance &tol,
                          std::uint64_t seed);

// Path-level pieces of the construction, computed on demand and cached.
const PathSplit &path_split(GConstruction &g, const PresentedTwoCat &C, const FunctorData &F, const EndFQSystem &q,
                            const Path &p, const Tolerance &tol);
// G(path) as the source of u_path.
OneCell path_image(GConstruction &g, const PresentedTwoCat &C, const FunctorData &F, const EndFQSystem &q, const Path &p,
                   const Tolerance &tol);
// G^2_{X,Y}: G(X) (x) G(Y) -> G(XY).
TwoCell tensorator(GConstruction &g, const PresentedTwoCat &C, const FunctorData &F, const EndFQSystem &q, const Path &X,
                   const Path &Y, const Tolerance &tol);
// G(f) = u_Y* (id (x) F(f) (x) id) u_X for a generator 2-cell f: X => Y.
TwoCell sandwich(GConstruction &g, const PresentedTwoCat &C, const FunctorData &F, const EndFQSystem &q, int f,
                 const Tolerance &tol);

TransformationData construct_phi(const PresentedTwoCat &C, const FunctorData &F, GConstruction &g, const EndFQSystem &q,
                                 const Tolerance &tol);
TransformationData construct_phibar(const PresentedTwoCat &C, const FunctorData &F, GConstruction &g, const EndFQSystem &q,
                                    const Tolerance &tol);

Report verify_main_theorem(const PresentedTwoCat &C, const FunctorData &F, const EndFQSystem &q, const Tolerance &tol,
                           std::uint64_t seed);

struct Scenario {
    PresentedTwoCat C;
    FunctorData     F;
    EndFQSystem     q;
};

Scenario constant_functor_scenario(const PresentedTwoCat &C, const QSystem &Q);

// Random instances. Sizes are kept small: at most 3 0-cells and 4 generator 1-cells.
PresentedTwoCat random_presentation(Rng &rng, int max_zero_cells, int max_generators);
FunctorData     random_functor(Rng &rng, const PresentedTwoCat &C, int max_dim, int max_sector_dim);

// A dualizable phi: F => G together with G and the standard dual phibar: G => F.
struct DualizableTransformation {
    FunctorData        G;
    TransformationData phi;
    TransformationData phibar;
    int                copies;       // G(a) = copies * F(a)
    int                multiplicity; // sector dimension of phi_a
};
DualizableTransformation random_dualizable_transformation(Rng &rng, const PresentedTwoCat &C, const FunctorData &F,
                                                          int max_copies, int max_multiplicity);
// Projection modification on phi of a random dualizable transformation.
ModificationData random_modification_projection(Rng &rng, const PresentedTwoCat &C, const DualizableTransformation &d,
                                                const FunctorData &F);
// Conjugate psi_a by random unitaries; the result is an isomorphic Q-system in End(F).
EndFQSystem transport_endf(Rng &rng, const PresentedTwoCat &C, const FunctorData &F, const EndFQSystem &q);

// phi-bar (x) phi for a random dualizable phi, then transported.
Scenario random_scenario(Rng &rng, int max_zero_cells, int max_generators);

} // namespace qsys
