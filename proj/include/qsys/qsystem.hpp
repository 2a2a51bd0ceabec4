#pragma once

#include "qsys/mathilb.hpp"
#include "qsys/report.hpp"

namespace qsys {

struct QSystem {
    OneCell Q; // src == tgt
    TwoCell m; // Q (x) Q -> Q
    TwoCell i; // 1 -> Q
};

// Q acts on the left of X (lambda: Q (x) X -> X), P on the right (rho: X (x) P -> X).
struct Bimodule {
    QSystem P;
    QSystem Q;
    OneCell X;
    TwoCell lambda;
    TwoCell rho;
};

// Throws CellMismatch if m or i have the wrong boundaries.
void validate_shapes(const QSystem &q);

Report check_qsystem(const QSystem &q, const Tolerance &tol);
Report check_dual_pair(const DualPair &d, const Tolerance &tol);

QSystem trivial_qsystem(int n);
QSystem qsystem_from_dual(const DualPair &d);

struct Pairing {
    TwoCell ev;   // Q (x) Q -> 1
    TwoCell coev; // 1 -> Q (x) Q
};
Pairing canonical_pairing(const QSystem &q);
// Zig-zag residual of the canonical self-duality.
double canonical_pairing_residual(const QSystem &q);

// Left Q-module and right P-module structure of Q and P acting on themselves.
Bimodule regular_bimodule(const QSystem &q);

Report check_bimodule(const Bimodule &b, const Tolerance &tol);
Report check_intertwiner(const TwoCell &f, const Bimodule &src, const Bimodule &dst, const Tolerance &tol);

struct RelativeTensor {
    OneCell Z;
    TwoCell r; // X (x) Y -> Z, coisometry with r^dagger r = p
    TwoCell p; // separability idempotent on X (x) Y
};
// Uses the right P-action of xb and the left P-action of yb.
RelativeTensor relative_tensor(const Bimodule &xb, const Bimodule &yb, const Tolerance &tol);

// (Q, u m (u* (x) u*), u i) for a unitary u on Q.
QSystem transport(const QSystem &q, const TwoCell &u);

Report check_qsystem_iso(const TwoCell &g, const QSystem &a, const QSystem &b, const Tolerance &tol);

} // namespace qsys
