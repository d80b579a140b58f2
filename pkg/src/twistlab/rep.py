"""Finite-dimensional representations: classical sl(2), Jordanian U_h(sl(2)) and U_q(sl(2)).

Bases are ordered by descending weight ``|j,j>, ..., |j,-j>`` and ``J0`` acts
by ``2m``.  The q-side lives in the variable ``s`` with ``q = s**2`` so that
half-integer powers of q stay polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from gmpy2 import mpq

from .errors import MapInconsistency, NoImplementer
from .polymat import (
    RingMatrix,
    kron,
    nilpotent_log_unipotent,
    nilpotent_sqrt_one_plus,
)
from .scalar import MPoly, QFraction, _univariate_gcd, q_number

H = MPoly.var("h")


@dataclass(frozen=True, order=True)
class Spin:
    two_j: int

    def __post_init__(self):
        if self.two_j < 0:
            raise ValueError("spin must be nonnegative")

    @classmethod
    def parse(cls, text) -> "Spin":
        if isinstance(text, Spin):
            return text
        try:
            value = Fraction(str(text).strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"not a spin: {text!r}") from None
        if (2 * value).denominator != 1 or value < 0:
            raise ValueError(f"not a spin: {text!r}")
        return cls(int(2 * value))

    @property
    def j(self) -> mpq:
        return mpq(self.two_j, 2)

    @property
    def dim(self) -> int:
        return self.two_j + 1

    def two_m(self) -> list[int]:
        """Eigenvalues ``2m`` of J0 in basis order."""
        return [self.two_j - 2 * i for i in range(self.dim)]

    def __str__(self) -> str:
        return str(self.two_j // 2) if self.two_j % 2 == 0 else f"{self.two_j}/2"


def commutator(a: RingMatrix, b: RingMatrix) -> RingMatrix:
    return a @ b - b @ a


@dataclass(frozen=True, eq=False)
class ClassicalRep:
    j: Spin
    Jp: RingMatrix
    Jm: RingMatrix
    J0: RingMatrix


@lru_cache(maxsize=None)
def build_classical(j: Spin) -> ClassicalRep:
    d = j.dim
    jj = j.j
    jp, jm = RingMatrix.zeros(d), RingMatrix.zeros(d)
    for i, two_m in enumerate(j.two_m()):
        m = mpq(two_m, 2)
        if i > 0:
            jp.rows[i - 1][i] = MPoly.const((jj - m) * (jj + m + 1))
        if i < d - 1:
            jm.rows[i + 1][i] = MPoly.one
    j0 = RingMatrix.diag(j.two_m())
    rep = ClassicalRep(j, jp, jm, j0)
    if not (commutator(jp, jm) == j0 and commutator(j0, jp) == jp.scale(2)
            and commutator(j0, jm) == jm.scale(-2)):
        raise MapInconsistency(f"classical relations fail at j={j}")
    return rep


@dataclass(frozen=True, eq=False)
class JordanianRep:
    """Generator matrices of a U_h(sl(2)) module.

    ``j`` is ``None`` for composite modules (tensor products, the counit);
    ``leg_dims`` records the tensor factors the matrices act on.
    """

    j: Spin | None
    T: RingMatrix
    Tinv: RingMatrix
    X: RingMatrix
    Y: RingMatrix
    H: RingMatrix
    leg_dims: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not self.leg_dims:
            object.__setattr__(self, "leg_dims", (self.T.dim,))

    @property
    def dim(self) -> int:
        return self.T.dim

    @property
    def I(self) -> RingMatrix:  # noqa: E743
        return RingMatrix.identity(self.dim)

    @property
    def TH(self) -> RingMatrix:
        return self.T @ self.H

    def T_power(self, n: int) -> RingMatrix:
        return self.T ** n if n >= 0 else self.Tinv ** (-n)

    def generator(self, name: str) -> RingMatrix:
        return {"T": self.T, "Tinv": self.Tinv, "X": self.X, "Y": self.Y,
                "H": self.H, "TH": self.TH}[name]

    def relation_residuals(self) -> dict[str, RingMatrix]:
        """Left minus right side of each defining relation (all zero for a module)."""
        T, Ti, Y, Hm, X, I = self.T, self.Tinv, self.Y, self.H, self.X, self.I
        S = T + Ti
        return {
            "[H,T]=T^2-1": commutator(Hm, T) - (T @ T - I),
            "[H,T^-1]=T^-2-1": commutator(Hm, Ti) - (Ti @ Ti - I),
            "[H,Y]=-(Y(T+T^-1)+(T+T^-1)Y)/2": commutator(Hm, Y) + (Y @ S + S @ Y).scale(mpq(1, 2)),
            "[X,Y]=H": commutator(X, Y) - Hm,
            "T*T^-1=1": T @ Ti - I,
        }


@lru_cache(maxsize=None)
def build_jordanian(j: Spin) -> JordanianRep:
    c = build_classical(j)
    d = j.dim
    I = RingMatrix.identity(d)
    hjp = c.Jp.scale(H)
    root = nilpotent_sqrt_one_plus(hjp @ hjp)
    T = hjp + root
    Y = c.Jm - (c.Jp @ (c.J0 @ c.J0 - I)).scale(H * H * mpq(1, 4))
    Hm = root @ c.J0
    log_t = nilpotent_log_unipotent(T)
    X = log_t.map(lambda e: _divide_by_h(e))
    Tinv = T.inverse()
    rep = JordanianRep(j, T, Tinv, X, Y, Hm)
    for name, res in rep.relation_residuals().items():
        if not res.is_zero:
            raise MapInconsistency(f"relation {name} fails at j={j}")
    if not (T @ c.Jp).scale(H) == (T @ T - I).scale(mpq(1, 2)):
        raise MapInconsistency(f"h*T*J+ != (T^2-1)/2 at j={j}")
    return rep


def _divide_by_h(e: MPoly) -> MPoly:
    if not e:
        return e
    q = e.divexact(H)
    if q is None:
        raise MapInconsistency(f"log T entry {e} is not divisible by h")
    return q


def counit_rep() -> JordanianRep:
    """One-dimensional module realising the counit (T -> 1, X, Y, H -> 0)."""
    one, zero = RingMatrix.identity(1), RingMatrix.zeros(1)
    return JordanianRep(None, one, one, zero, zero, zero, (1,))


def tensor_rep(r1: JordanianRep, r2: JordanianRep) -> JordanianRep:
    """The module ``r1 (x) r2`` with generators acting through the coproduct."""
    return JordanianRep(
        None,
        kron(r1.T, r2.T),
        kron(r1.Tinv, r2.Tinv),
        kron(r1.X, r2.I) + kron(r1.I, r2.X),
        kron(r1.Y, r2.T) + kron(r1.Tinv, r2.Y),
        kron(r1.H, r2.T) + kron(r1.Tinv, r2.H),
        r1.leg_dims + r2.leg_dims,
    )


def jordanian_at_h0(rep: JordanianRep) -> JordanianRep:
    return JordanianRep(rep.j, *(m.subs("h", 0) for m in (rep.T, rep.Tinv, rep.X, rep.Y, rep.H)), rep.leg_dims)


# -- U_q(sl(2)) ---------------------------------------------------------------

S_VAR = MPoly.var("s")


def s_power(n: int) -> QFraction:
    return QFraction(S_VAR ** n) if n >= 0 else QFraction(MPoly.one, S_VAR ** (-n))


def qn(n: int) -> QFraction:
    """q-number in the variable ``s = q**(1/2)``."""
    return q_number(n, "s", 2)


@dataclass(frozen=True, eq=False)
class QRep:
    j: Spin
    Jp: RingMatrix
    Jm: RingMatrix
    qJ0: RingMatrix
    qJ0inv: RingMatrix
    J0: tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.j.dim

    def q_pow_J0(self, half_units: int) -> RingMatrix:
        """Diagonal ``q^(half_units * J0 / 2)``; eigenvalue ``s^(half_units * 2m)``."""
        return RingMatrix.diag([s_power(half_units * m2) for m2 in self.J0], QFraction)

    def relation_residuals(self) -> dict[str, RingMatrix]:
        q2 = s_power(4)
        bracket = RingMatrix.diag([qn(m2) for m2 in self.J0], QFraction)
        return {
            "q^J0 J+ q^-J0 = q^2 J+": self.qJ0 @ self.Jp @ self.qJ0inv - self.Jp.scale(q2),
            "q^J0 J- q^-J0 = q^-2 J-": self.qJ0 @ self.Jm @ self.qJ0inv - self.Jm.scale(1 / q2),
            "[J+,J-]=[J0]_q": commutator(self.Jp, self.Jm) - bracket,
        }


@lru_cache(maxsize=None)
def build_qrep(j: Spin) -> QRep:
    d = j.dim
    two_m = tuple(j.two_m())
    jp = RingMatrix.zeros(d, QFraction)
    jm = RingMatrix.zeros(d, QFraction)
    for i, m2 in enumerate(two_m):
        if i > 0:
            jp.rows[i - 1][i] = qn((j.two_j - m2) // 2) * qn((j.two_j + m2) // 2 + 1)
        if i < d - 1:
            jm.rows[i + 1][i] = QFraction(MPoly.one)
    rep = QRep(j, jp, jm, RingMatrix.zeros(d, QFraction), RingMatrix.zeros(d, QFraction), two_m)
    rep = QRep(j, jp, jm, rep.q_pow_J0(2), rep.q_pow_J0(-2), two_m)
    for name, res in rep.relation_residuals().items():
        if not res.is_zero:
            raise MapInconsistency(f"U_q relation {name} fails at j={j}")
    return rep


# -- antipode implementer ---------------------------------------------------------

@dataclass(frozen=True, eq=False)
class AntipodeImpl:
    """``C`` with ``C g^t C^-1 = S(g)``; ``apply`` realises S on represented matrices."""

    j: Spin
    C: RingMatrix
    Cinv: RingMatrix

    def apply(self, m: RingMatrix) -> RingMatrix:
        return self.C @ m.transpose() @ self.Cinv


def antipode_targets(rep: JordanianRep) -> list[tuple[str, RingMatrix, RingMatrix]]:
    T, Ti = rep.T, rep.Tinv
    return [
        ("T", T, Ti),
        ("Y", rep.Y, -(T @ rep.Y @ Ti)),
        ("H", rep.H, -(T @ rep.H @ Ti)),
    ]


def _row_content(row: list[MPoly]) -> MPoly:
    g = MPoly.zero
    for x in row:
        if x:
            g = x if g.is_zero else _univariate_gcd(g, x)
            if g.is_constant:
                return MPoly.one
    return g


def nullspace_fraction_free(rows: list[list[MPoly]], ncols: int) -> list[list[QFraction]]:
    """Nullspace basis of a polynomial system in one variable, by fraction-free elimination."""
    a = [list(r) for r in rows if any(r)]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][col]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][col]
        for i in range(len(a)):
            if i != r and a[i][col]:
                f = a[i][col]
                a[i] = [p * x - f * y for x, y in zip(a[i], a[r])]
                g = _row_content(a[i])
                if not g.is_zero and not g.is_constant:
                    a[i] = [x.divexact(g) if x else x for x in a[i]]
        pivots.append(col)
        r += 1
        if r == len(a):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [QFraction(MPoly.zero)] * ncols
        v[fcol] = QFraction(MPoly.one)
        for i, pcol in enumerate(pivots):
            v[pcol] = QFraction(-a[i][fcol], a[i][pcol])
        basis.append(v)
    return basis


def find_antipode_impl(rep: JordanianRep) -> AntipodeImpl:
    """Solve ``C g^t = S(g) C`` for g in {T, Y, H}; C normalised to a polynomial matrix."""
    d = rep.dim
    n = d * d
    rows: list[list[MPoly]] = []
    for _, g, sg in antipode_targets(rep):
        gt = g.transpose()
        # (C gt)_{ik} - (sg C)_{ik} = sum_l C_il gt_lk - sum_l sg_il C_lk
        for i in range(d):
            for k in range(d):
                row = [MPoly.zero] * n
                for l in range(d):
                    if gt[l, k]:
                        row[i * d + l] = row[i * d + l] + gt[l, k]
                    if sg[i, l]:
                        row[l * d + k] = row[l * d + k] - sg[i, l]
                rows.append(row)
    basis = nullspace_fraction_free(rows, n)
    for v in basis:
        c = _normalise(v, d)
        try:
            cinv = c.inverse()
        except ZeroDivisionError:
            continue
        impl = AntipodeImpl(rep.j, c, cinv)
        if all(impl.apply(g) == sg for _, g, sg in antipode_targets(rep)):
            return impl
    raise NoImplementer(f"no invertible antipode implementer at j={rep.j}")


def _normalise(v: list[QFraction], d: int) -> RingMatrix:
    den = MPoly.one
    for x in v:
        if x and not x.den.is_constant:
            den = den * x.den.divexact(_univariate_gcd(den, x.den))
    polys = [(x * den).to_mpoly() for x in v]
    g = _row_content(polys)
    if not g.is_constant:
        polys = [p.divexact(g) if p else p for p in polys]
    pivot = polys[(d - 1) * d] if polys[(d - 1) * d] else next(p for p in polys if p)
    if pivot.is_constant:
        inv = 1 / pivot.constant
        polys = [p * inv for p in polys]
    return RingMatrix([polys[i * d:(i + 1) * d] for i in range(d)])
