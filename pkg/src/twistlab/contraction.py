"""The q-side: q-exponentials, the singular similarity G, q-twist F(x) and exact q -> 1 limits.

Everything is expressed in ``s`` with ``q = s**2``; limits are taken as
``s -> 1`` on fully assembled matrices.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from .errors import DivergentLimit, LimitMismatch, NonPolynomialLimit, SingularDiagonal
from .polymat import RingMatrix, _power_chain, kron, unipotent_inv
from .quasihopf import rh_matrix, twist_matrix
from .rep import QRep, Spin, build_jordanian, build_qrep, s_power
from .report import CheckReport, CheckResult, PASS, FAIL, SKIPPED, compare
from .scalar import MPoly, QFraction, limit_orders, limit_q_to_1, q_factorial

S = MPoly.var("s")
HV = MPoly.var("h")
Y = MPoly.var("y")
Q = S ** 2
ETA = QFraction(HV, Q - 1)
Q_MINUS_QINV = QFraction(S ** 4 - 1, S ** 2)
REPARAM_X2 = QFraction(Y * (Q - 1))  # x^2 = y (q - 1)


def qfact(n: int) -> QFraction:
    return q_factorial(n, "s", 2)


@dataclass(frozen=True, eq=False)
class ContractionContext:
    j1: Spin
    j2: Spin
    qreps: tuple[QRep, QRep]
    eta: QFraction = ETA
    reparam: dict = field(default_factory=lambda: {"x^2": "y*(q - 1)"})

    @classmethod
    def create(cls, j1, j2) -> "ContractionContext":
        a, b = Spin.parse(j1), Spin.parse(j2)
        ctx = cls(a, b, (build_qrep(a), build_qrep(b)))
        if not ctx.eta * QFraction(Q - 1) == QFraction(HV):
            raise ValueError("eta (q - 1) must equal h")
        return ctx


def q_exponential(m: RingMatrix) -> RingMatrix:
    """``E_q(M) = sum M^n / [n]_q!`` for nilpotent M."""
    m = m.to_fraction()
    total = RingMatrix.zeros(m.dim, QFraction)
    for n, p in enumerate(_power_chain(m)):
        total = total + p.scale(1 / qfact(n))
    return total


def e_eta(rep: QRep, power_of_q: int = 0) -> RingMatrix:
    """``E_q(q^power * eta * J+)``."""
    return q_exponential(rep.Jp.scale(ETA * QFraction(Q) ** power_of_q))


def build_G(ctx: ContractionContext) -> RingMatrix:
    return kron(e_eta(ctx.qreps[0]), e_eta(ctx.qreps[1]))


def build_G_inverse(ctx: ContractionContext) -> RingMatrix:
    return kron(unipotent_inv(e_eta(ctx.qreps[0])), unipotent_inv(e_eta(ctx.qreps[1])))


def build_Fx(ctx: ContractionContext, x2=REPARAM_X2) -> RingMatrix:
    """The q-twist ``F(x)`` with ``x^2`` given (default: the reparametrisation ``y (q - 1)``)."""
    a, b = ctx.qreps
    x2 = QFraction.lift(x2)
    n = a.dim * b.dim
    total = RingMatrix.zeros(n, QFraction)
    k = 0
    jp_k = RingMatrix.identity(a.dim, QFraction)
    jm_k = RingMatrix.identity(b.dim, QFraction)
    while not (jp_k.is_zero or jm_k.is_zero):
        coeff = Q_MINUS_QINV ** k / qfact(k) * x2 ** k * s_power(k * (k + 1))
        if k % 2:
            coeff = -coeff
        term = kron(a.q_pow_J0(k) @ jp_k, b.q_pow_J0(3 * k) @ jm_k)
        diag = [QFraction(MPoly.one)] * b.dim
        for l in range(1, k + 1):
            for i, m2 in enumerate(b.J0):
                factor = 1 - x2 * s_power(4 * l + 4 * m2)
                if not factor:
                    raise SingularDiagonal(f"1 - x^2 q^{2 * l} q^(2 J0) vanishes at 2m={m2}")
                diag[i] = diag[i] / factor
        inv_prod = kron(RingMatrix.identity(a.dim, QFraction), RingMatrix.diag(diag, QFraction))
        total = total + (inv_prod @ term).scale(coeff)
        k += 1
        jp_k, jm_k = jp_k @ a.Jp, jm_k @ b.Jm
    return total


# R_q = q^{J0 (x) J0 / 2} sum_n (q - q^-1)^n / [n]! q^{n(n-1)/2} (q^{a n J0/2} J+^n q^{b n J0/2}) (x) (...)
RQ_CONVENTIONS = {
    # name: (first factor carries J+ ?, (left, right) half-units of J0 per n on leg 1, same on leg 2)
    "left_placed": (True, (1, 0), (-1, 0)),
    "opposite": (False, (-1, 0), (1, 0)),
    "right_placed": (True, (1, 0), (0, -1)),
}


def build_Rq(ctx: ContractionContext, convention: str = "right_placed") -> RingMatrix:
    a, b = ctx.qreps
    plus_first, (l1, r1), (l2, r2) = RQ_CONVENTIONS[convention]
    ga, gb = (a.Jp, b.Jm) if plus_first else (a.Jm, b.Jp)
    n_dim = a.dim * b.dim
    diag = RingMatrix.diag([s_power(m1 * m2) for m1 in a.J0 for m2 in b.J0], QFraction)
    total = RingMatrix.zeros(n_dim, QFraction)
    pa = RingMatrix.identity(a.dim, QFraction)
    pb = RingMatrix.identity(b.dim, QFraction)
    n = 0
    while not (pa.is_zero or pb.is_zero):
        coeff = Q_MINUS_QINV ** n / qfact(n) * s_power(n * (n - 1))
        left = a.q_pow_J0(l1 * n) @ pa @ a.q_pow_J0(r1 * n)
        right = b.q_pow_J0(l2 * n) @ pb @ b.q_pow_J0(r2 * n)
        total = total + kron(left, right).scale(coeff)
        n += 1
        pa, pb = pa @ ga, pb @ gb
    return diag @ total


def matrix_limit(m: RingMatrix) -> RingMatrix:
    """Entrywise ``s -> 1``; DivergentLimit if any entry has a pole."""
    return RingMatrix([[limit_q_to_1(x, "s") for x in row] for row in m.rows])


def order_trace(m: RingMatrix) -> list[tuple[int, int, int | None, int]]:
    """``(row, col, order of s-1 in numerator, in denominator)`` for every entry."""
    out = []
    for i, row in enumerate(m.rows):
        for j, x in enumerate(row):
            a, b = limit_orders(x, "s")
            out.append((i, j, a, b))
    return out


def order_trace_csv(m: RingMatrix) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["row", "col", "num_order", "den_order"])
    for r in order_trace(m):
        w.writerow(["" if v is None else v for v in r])
    return buf.getvalue()


def conjugated_Rq(ctx: ContractionContext, convention: str = "right_placed") -> RingMatrix:
    return build_G_inverse(ctx) @ build_Rq(ctx, convention) @ build_G(ctx)


def conjugated_Fx(ctx: ContractionContext) -> RingMatrix:
    return build_G_inverse(ctx) @ build_Fx(ctx) @ build_G(ctx)


def _limit_compare(identity_id: str, formula: str, labels, assembled: RingMatrix,
                   target: RingMatrix, strict: bool) -> CheckResult:
    try:
        lim = matrix_limit(assembled)
    except (DivergentLimit, NonPolynomialLimit) as exc:
        if strict:
            raise
        return CheckResult(identity_id, formula, labels, FAIL, {"reason": str(exc)})
    return compare(identity_id, formula, labels, lim, target)


def check_contraction_identities(j) -> CheckReport:
    spin = Spin.parse(j)
    rep = build_qrep(spin)
    labels = (str(spin),)
    out = CheckReport()
    e = e_eta(rep)
    einv = unipotent_inv(e)

    def t_alpha(alpha: int) -> RingMatrix:
        return einv @ e_eta(rep, alpha)

    for alpha in (1, -1, 2):
        qa = rep.q_pow_J0(alpha)
        out.add(compare(f"contraction_conjugate_qJ0_alpha{alpha}",
                        "E(ηJ₊)⁻¹q^{αJ₀/2}E(ηJ₊) = 𝒯₍α₎q^{αJ₀/2}", labels,
                        einv @ qa @ e, t_alpha(alpha) @ qa))
    rhs = (t_alpha(1) @ rep.qJ0 - t_alpha(-1) @ rep.qJ0inv).scale(-ETA / Q_MINUS_QINV) + rep.Jm
    out.add(compare("contraction_conjugate_Jminus",
                    "E(ηJ₊)⁻¹J₋E(ηJ₊) = −η/(q−q⁻¹)(𝒯₍₁₎q^{J₀} − 𝒯₍₋₁₎q^{−J₀}) + J₋", labels,
                    einv @ rep.Jm @ e, rhs))
    T = build_jordanian(spin)
    for alpha in (1, -1, 2):
        out.add(_limit_compare(f"contraction_T_alpha_limit_{alpha}", "lim 𝒯₍α₎ = T^α", labels,
                               t_alpha(alpha), T.T_power(alpha), strict=False))
    return out


def check_R_contraction(j1, j2, strict: bool = False) -> CheckReport:
    """Try the R_q placements in order; the first whose limit reproduces R_h is adopted."""
    ctx = ContractionContext.create(j1, j2)
    labels = (str(ctx.j1), str(ctx.j2))
    target = rh_matrix(build_jordanian(ctx.j1), build_jordanian(ctx.j2))
    out = CheckReport()
    gi, g = build_G_inverse(ctx), build_G(ctx)
    for name in RQ_CONVENTIONS:
        res = _limit_compare("R_contraction", f"R_h = lim G⁻¹R_qG (R_q placement: {name})", labels,
                             gi @ build_Rq(ctx, name) @ g, target, strict=False)
        if res.status == PASS:
            out.add(res)
            return out
        out.add(CheckResult(f"R_contraction_rejected_{name}", res.formula, labels, SKIPPED,
                            {"reason": "placement does not contract to R_h", **(res.witness or {})}))
    if strict:
        raise LimitMismatch(f"no R_q placement contracts to R_h at {labels}")
    out.add(CheckResult("R_contraction", "R_h = lim G⁻¹R_qG", labels, FAIL,
                        {"reason": "no R_q placement contracts to R_h"}))
    return out


def check_F_contraction(j1, j2) -> CheckReport:
    ctx = ContractionContext.create(j1, j2)
    labels = (str(ctx.j1), str(ctx.j2))
    target = twist_matrix(build_jordanian(ctx.j1), build_jordanian(ctx.j2))
    return CheckReport([_limit_compare("F_contraction", "F_h(y) = lim G⁻¹F(x)G at x² = y(q−1)", labels,
                                       conjugated_Fx(ctx), target, strict=False)])


def contract(j1, j2, convention: str = "right_placed") -> dict[str, RingMatrix]:
    """Limits of the conjugated R_q and F(x) for one pair."""
    ctx = ContractionContext.create(j1, j2)
    return {"R": matrix_limit(conjugated_Rq(ctx, convention)), "F": matrix_limit(conjugated_Fx(ctx))}
