#include "qsys/qsystem.hpp"

#include "qsys/splitting.hpp"

namespace qsys {

void validate_shapes(const QSystem &q) {
    const OneCell &Q = q.Q;
    if (Q.src() != Q.tgt()) throw CellMismatch("Q-system 1-cell must be an endomorphism");
    if (q.m.source() != hcomp1(Q, Q) || q.m.target() != Q) throw CellMismatch("m must map Q(x)Q to Q");
    if (q.i.source() != id1(Q.src()) || q.i.target() != Q) throw CellMismatch("i must map 1 to Q");
}

Report check_qsystem(const QSystem &q, const Tolerance &tol) {
    validate_shapes(q);
    const OneCell &Q  = q.Q;
    TwoCell        iQ = id2(Q);
    TwoCell        md = q.m.adjoint();
    Report         r;
    // m (m (x) id) = ((m* (x) id) m*)*
    r.add("Q1 associativity", "Q-system (Q1)",
          residual(whisker_right_apply(md, Q, md).adjoint(), whisker_left_apply(Q, md, md).adjoint()), tol.atol);
    r.add("Q2 left unit", "Q-system (Q2)", residual(q.m * hcomp2(q.i, iQ), unitor_left(Q)), tol.atol);
    r.add("Q2 right unit", "Q-system (Q2)", residual(q.m * hcomp2(iQ, q.i), unitor_right(Q)), tol.atol);
    TwoCell mm = md * q.m;
    r.add("Q3 Frobenius left", "Q-system (Q3)", residual(snake_left(Q, Q, Q, md, q.m), mm), tol.atol);
    r.add("Q3 Frobenius right", "Q-system (Q3)", residual(snake_right(Q, Q, Q, q.m, md), mm), tol.atol);
    r.add("Q4 separability", "Q-system (Q4)", residual(q.m * md, iQ), tol.atol);
    // i^dagger i is not normalized by the axioms; record it per 0-cell index
    TwoCell ii = q.i.adjoint() * q.i;
    for (int j = 0; j < Q.src(); ++j) r.note("i*i[" + std::to_string(j + 1) + "]", ii.block(j, j)(0, 0).real());
    return r;
}

Report check_dual_pair(const DualPair &d, const Tolerance &tol) {
    auto   z = dual_residuals(d);
    Report r;
    r.add("zigzag X", "dual pair zig-zag", z.zigzag_X, tol.atol);
    r.add("zigzag Xbar", "dual pair zig-zag", z.zigzag_Xbar, tol.atol);
    r.add("ev ev* = id", "unitarily separable dual", z.separable, tol.atol);
    return r;
}

QSystem trivial_qsystem(int n) {
    OneCell one = id1(n);
    return {one, unitor_left(one), id2(one)};
}

QSystem qsystem_from_dual(const DualPair &d) {
    QSystem q;
    q.Q = hcomp1(d.X, d.Xbar);
    // X Xb X Xb -> X 1 Xb, then drop the unit strand
    TwoCell mid = hcomp2({id2(d.X), d.ev, id2(d.Xbar)});
    q.m         = canonical_iso(mid.target(), q.Q) * mid;
    q.i         = d.coev;
    return q;
}

Pairing canonical_pairing(const QSystem &q) {
    return {q.i.adjoint() * q.m, q.m.adjoint() * q.i};
}

double canonical_pairing_residual(const QSystem &q) {
    auto           p  = canonical_pairing(q);
    const OneCell &Q  = q.Q;
    TwoCell        iQ = id2(Q);
    TwoCell        z1 = unitor_right(Q) * hcomp2(iQ, p.ev) * hcomp2(p.coev, iQ) * unitor_left(Q).adjoint();
    TwoCell        z2 = unitor_left(Q) * hcomp2(p.ev, iQ) * hcomp2(iQ, p.coev) * unitor_right(Q).adjoint();
    return std::max(residual(z1, iQ), residual(z2, iQ));
}

Bimodule regular_bimodule(const QSystem &q) { return {q, q, q.Q, q.m, q.m}; }

Report check_bimodule(const Bimodule &b, const Tolerance &tol) {
    validate_shapes(b.P);
    validate_shapes(b.Q);
    const OneCell &X = b.X, &P = b.P.Q, &Q = b.Q.Q;
    if (b.lambda.source() != hcomp1(Q, X) || b.lambda.target() != X) throw CellMismatch("lambda must map Q(x)X to X");
    if (b.rho.source() != hcomp1(X, P) || b.rho.target() != X) throw CellMismatch("rho must map X(x)P to X");
    TwoCell iX = id2(X), iP = id2(P), iQ = id2(Q);
    TwoCell la = b.lambda, ro = b.rho, lad = la.adjoint(), rod = ro.adjoint();
    Report  r;
    r.add("B1 left associativity", "bimodule (B1)", residual(la * hcomp2(b.Q.m, iX), la * hcomp2(iQ, la)), tol.atol);
    r.add("B1 right associativity", "bimodule (B1)", residual(ro * hcomp2(iX, b.P.m), ro * hcomp2(ro, iP)), tol.atol);
    r.add("B1 middle associativity", "bimodule (B1)", residual(la * hcomp2(iQ, ro), ro * hcomp2(la, iP)), tol.atol);
    r.add("B2 left unit", "bimodule (B2)", residual(la * hcomp2(b.Q.i, iX), unitor_left(X)), tol.atol);
    r.add("B2 right unit", "bimodule (B2)", residual(ro * hcomp2(iX, b.P.i), unitor_right(X)), tol.atol);
    TwoCell ll = lad * la, rr = rod * ro;
    r.add("B3 left Frobenius (a)", "bimodule (B3)", residual(hcomp2(b.Q.m, iX) * hcomp2(iQ, lad), ll), tol.atol);
    r.add("B3 left Frobenius (b)", "bimodule (B3)", residual(hcomp2(iQ, la) * hcomp2(b.Q.m.adjoint(), iX), ll), tol.atol);
    r.add("B3 right Frobenius (a)", "bimodule (B3)", residual(hcomp2(iX, b.P.m) * hcomp2(rod, iP), rr), tol.atol);
    r.add("B3 right Frobenius (b)", "bimodule (B3)", residual(hcomp2(ro, iP) * hcomp2(iX, b.P.m.adjoint()), rr), tol.atol);
    r.add("B4 left separability", "bimodule (B4)", residual(la * lad, iX), tol.atol);
    r.add("B4 right separability", "bimodule (B4)", residual(ro * rod, iX), tol.atol);
    return r;
}

Report check_intertwiner(const TwoCell &f, const Bimodule &src, const Bimodule &dst, const Tolerance &tol) {
    if (f.source() != src.X || f.target() != dst.X) throw CellMismatch("intertwiner must map src.X to dst.X");
    if (src.Q.Q != dst.Q.Q || src.P.Q != dst.P.Q) throw CellMismatch("bimodules over different Q-systems");
    Report r;
    r.add("left intertwining", "bimodule intertwiner", residual(f * src.lambda, dst.lambda * hcomp2(id2(src.Q.Q), f)), tol.atol);
    r.add("right intertwining", "bimodule intertwiner", residual(f * src.rho, dst.rho * hcomp2(f, id2(src.P.Q))), tol.atol);
    return r;
}

RelativeTensor relative_tensor(const Bimodule &xb, const Bimodule &yb, const Tolerance &tol) {
    const OneCell &X = xb.X, &Y = yb.X, &P = xb.P.Q;
    if (yb.Q.Q != P) throw CellMismatch("relative tensor needs the same Q-system acting in the middle");
    TwoCell sep = xb.P.m.adjoint() * xb.P.i; // 1 -> P P
    TwoCell up  = hcomp2({id2(X), sep, id2(Y)});
    OneCell XY  = hcomp1(X, Y);
    TwoCell p   = hcomp2(xb.rho, yb.lambda) * up * canonical_iso(XY, up.source());
    auto    sp  = split_projection(XY, p, tol);
    return {sp.Y, sp.u.adjoint(), p};
}

QSystem transport(const QSystem &q, const TwoCell &u) {
    TwoCell ud = u.adjoint();
    return {u.target(), u * q.m * hcomp2(ud, ud), u * q.i};
}

Report check_qsystem_iso(const TwoCell &g, const QSystem &a, const QSystem &b, const Tolerance &tol) {
    validate_shapes(a);
    validate_shapes(b);
    if (g.source() != a.Q || g.target() != b.Q) throw CellMismatch("g must map a.Q to b.Q");
    Report r;
    r.add("unitary g*g", "Q-system isomorphism", residual(g.adjoint() * g, id2(a.Q)), tol.atol);
    r.add("unitary gg*", "Q-system isomorphism", residual(g * g.adjoint(), id2(b.Q)), tol.atol);
    r.add("multiplicative", "Q-system isomorphism", residual(g * a.m, b.m * hcomp2(g, g)), tol.atol);
    r.add("unital", "Q-system isomorphism", residual(g * a.i, b.i), tol.atol);
    return r;
}

} // namespace qsys
