"""Dense square matrices over exact rings, nilpotent calculus and tensor legs.

Composite indices follow the row-major convention: on legs with dimensions
``(d1, d2, ...)`` the basis vector ``(i1, i2, ...)`` has index
``i1*d2*d3... + i2*d3... + ...``.  Legs are numbered from 1.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable, Sequence

from gmpy2 import mpq

from .errors import DimensionMismatch, NotNilpotent, NotUnipotent
from .scalar import MPoly, QFraction


def _coerce(x, ring):
    if ring is MPoly:
        if isinstance(x, MPoly):
            return x
        if isinstance(x, QFraction):
            return x.to_mpoly()
        if isinstance(x, str):
            return MPoly.parse(x)
        return MPoly.const(x)
    if isinstance(x, QFraction):
        return x
    if isinstance(x, str):
        return QFraction(MPoly.parse(x))
    return QFraction(x)


class RingMatrix:
    """Square matrix whose entries all belong to one ring (``MPoly`` or ``QFraction``)."""

    __slots__ = ("rows", "ring")

    def __init__(self, rows: Sequence[Sequence], ring=MPoly):
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise DimensionMismatch("RingMatrix must be square and non-empty")
        self.ring = ring
        self.rows = [[_coerce(x, ring) for x in r] for r in rows]

    @classmethod
    def _raw(cls, rows, ring):
        m = cls.__new__(cls)
        m.rows = rows
        m.ring = ring
        return m

    @classmethod
    def zeros(cls, n: int, ring=MPoly) -> "RingMatrix":
        z = _zero(ring)
        return cls._raw([[z] * n for _ in range(n)], ring)

    @classmethod
    def identity(cls, n: int, ring=MPoly) -> "RingMatrix":
        z, o = _zero(ring), _one(ring)
        return cls._raw([[o if i == j else z for j in range(n)] for i in range(n)], ring)

    @classmethod
    def diag(cls, entries: Sequence, ring=MPoly) -> "RingMatrix":
        m = cls.zeros(len(entries), ring)
        for i, e in enumerate(entries):
            m.rows[i][i] = _coerce(e, ring)
        return m

    @classmethod
    def unit(cls, n: int, i: int, j: int, ring=MPoly) -> "RingMatrix":
        """Matrix unit E_ij (0-based indices)."""
        m = cls.zeros(n, ring)
        m.rows[i][j] = _one(ring)
        return m

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def copy_rows(self) -> list[list]:
        return [list(r) for r in self.rows]

    def nonzeros(self) -> Iterable[tuple[int, int, object]]:
        for i, r in enumerate(self.rows):
            for j, x in enumerate(r):
                if x:
                    yield i, j, x

    def to_fraction(self) -> "RingMatrix":
        if self.ring is QFraction:
            return self
        return RingMatrix._raw([[QFraction(x, reduce=False) for x in r] for r in self.rows], QFraction)

    def to_poly(self) -> "RingMatrix":
        if self.ring is MPoly:
            return self
        return RingMatrix._raw([[x.to_mpoly() for x in r] for r in self.rows], MPoly)

    # -- arithmetic -----------------------------------------------------------
    def _check(self, other: "RingMatrix") -> "RingMatrix":
        if not isinstance(other, RingMatrix):
            raise TypeError("expected RingMatrix")
        if other.dim != self.dim:
            raise DimensionMismatch(f"{self.dim} vs {other.dim}")
        if other.ring is not self.ring:
            return other.to_fraction() if self.ring is QFraction else other.to_poly()
        return other

    def __add__(self, other: "RingMatrix") -> "RingMatrix":
        if self.ring is MPoly and isinstance(other, RingMatrix) and other.ring is QFraction:
            return self.to_fraction() + other
        other = self._check(other)
        return RingMatrix._raw(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)], self.ring
        )

    def __sub__(self, other: "RingMatrix") -> "RingMatrix":
        if self.ring is MPoly and isinstance(other, RingMatrix) and other.ring is QFraction:
            return self.to_fraction() - other
        other = self._check(other)
        return RingMatrix._raw(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)], self.ring
        )

    def __neg__(self) -> "RingMatrix":
        return RingMatrix._raw([[-a for a in r] for r in self.rows], self.ring)

    def scale(self, c) -> "RingMatrix":
        if self.ring is MPoly and isinstance(c, QFraction):
            return self.to_fraction().scale(c)
        c = _coerce(c, self.ring)
        if not c:
            return RingMatrix.zeros(self.dim, self.ring)
        return RingMatrix._raw([[a * c if a else a for a in r] for r in self.rows], self.ring)

    def __rmul__(self, c) -> "RingMatrix":
        return self.scale(c)

    def __mul__(self, other):
        if isinstance(other, RingMatrix):
            return self @ other
        return self.scale(other)

    def __matmul__(self, other: "RingMatrix") -> "RingMatrix":
        if self.ring is MPoly and other.ring is QFraction:
            return self.to_fraction() @ other
        other = self._check(other)
        if self.ring is MPoly:
            return _poly_matmul(self, other)
        return _generic_matmul(self, other)

    def __pow__(self, n: int) -> "RingMatrix":
        if n < 0:
            return self.inverse() ** (-n)
        result = RingMatrix.identity(self.dim, self.ring)
        base = self
        while n:
            if n & 1:
                result = result @ base
            n >>= 1
            if n:
                base = base @ base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingMatrix) or other.dim != self.dim:
            return False
        return self.first_difference(other) is None

    __hash__ = None

    def first_difference(self, other: "RingMatrix"):
        """First ``(i, j, self[i,j], other[i,j])`` where the matrices differ, else ``None``."""
        for i, (ra, rb) in enumerate(zip(self.rows, other.rows)):
            for j, (a, b) in enumerate(zip(ra, rb)):
                if not (a == b):
                    return i, j, a, b
        return None

    @property
    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    @property
    def is_identity(self) -> bool:
        return self == RingMatrix.identity(self.dim, self.ring)

    def map(self, fn: Callable) -> "RingMatrix":
        rows = [[fn(x) for x in r] for r in self.rows]
        ring = QFraction if rows and isinstance(rows[0][0], QFraction) else self.ring
        return RingMatrix._raw([[_coerce(x, ring) for x in r] for r in rows], ring)

    def transpose(self) -> "RingMatrix":
        return RingMatrix._raw([list(c) for c in zip(*self.rows)], self.ring)

    def subs(self, var: str, value) -> "RingMatrix":
        return RingMatrix._raw([[x.subs(var, value) if x else x for x in r] for r in self.rows], self.ring)

    def negate_var(self, var: str) -> "RingMatrix":
        return RingMatrix._raw([[x.negate_var(var) if x else x for x in r] for r in self.rows], self.ring)

    def diff(self, var: str) -> "RingMatrix":
        if self.ring is not MPoly:
            raise TypeError("derivative only defined for polynomial matrices")
        return RingMatrix._raw([[x.diff(var) if x else x for x in r] for r in self.rows], MPoly)

    def coefficients(self, var: str) -> dict[int, "RingMatrix"]:
        """Split a polynomial matrix into ``{power: coefficient matrix}`` in ``var``."""
        if self.ring is not MPoly:
            raise TypeError("coefficient split needs a polynomial matrix")
        n = self.dim
        out: dict[int, list[list]] = {}
        for i, r in enumerate(self.rows):
            for j, x in enumerate(r):
                if not x:
                    continue
                for e, c in x.coefficients(var).items():
                    rows = out.get(e)
                    if rows is None:
                        rows = out[e] = [[MPoly.zero] * n for _ in range(n)]
                    rows[i][j] = c
        if not out:
            return {0: RingMatrix.zeros(n)}
        return {e: RingMatrix._raw(rows, MPoly) for e, rows in sorted(out.items())}

    def variables(self) -> tuple[str, ...]:
        used: set[str] = set()
        for r in self.rows:
            for x in r:
                if x:
                    used.update(x.variables)
        return tuple(sorted(used))

    def block(self, bi: int, bj: int, size: int) -> "RingMatrix":
        return RingMatrix._raw(
            [r[bj * size:(bj + 1) * size] for r in self.rows[bi * size:(bi + 1) * size]], self.ring
        )

    def inverse(self) -> "RingMatrix":
        """Inverse; unipotent matrices use the finite series, others Gauss-Jordan over fractions."""
        if self.is_unipotent():
            return unipotent_inv(self)
        return _gauss_jordan_inverse(self)

    def is_unipotent(self) -> bool:
        try:
            _power_chain(self - RingMatrix.identity(self.dim, self.ring))
        except NotNilpotent:
            return False
        return True

    def __str__(self) -> str:
        return "[" + ",\n ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows) + "]"

    def __repr__(self) -> str:
        return f"RingMatrix({self.dim}x{self.dim}, ring={self.ring.__name__})"


def _zero(ring):
    return MPoly.zero if ring is MPoly else QFraction(MPoly.zero)


def _one(ring):
    return MPoly.one if ring is MPoly else QFraction(MPoly.one)


def _poly_matmul(a: RingMatrix, b: RingMatrix) -> RingMatrix:
    n = a.dim
    b_rows = [[(j, x._terms) for j, x in enumerate(r) if x._terms] for r in b.rows]
    out_rows = []
    for ra in a.rows:
        acc: dict[int, dict[int, object]] = {}
        for k, x in enumerate(ra):
            xt = x._terms
            if not xt:
                continue
            for j, yt in b_rows[k]:
                d = acc.get(j)
                if d is None:
                    d = acc[j] = {}
                get = d.get
                for kx, cx in xt.items():
                    for ky, cy in yt.items():
                        key = kx + ky
                        d[key] = get(key, 0) + cx * cy
        row = [MPoly.zero] * n
        for j, d in acc.items():
            terms = {key: c for key, c in d.items() if c}
            if terms:
                row[j] = MPoly._raw(terms)
        out_rows.append(row)
    return RingMatrix._raw(out_rows, MPoly)


def _generic_matmul(a: RingMatrix, b: RingMatrix) -> RingMatrix:
    n = a.dim
    z = _zero(a.ring)
    b_rows = [[(j, x) for j, x in enumerate(r) if x] for r in b.rows]
    out_rows = []
    for ra in a.rows:
        acc: dict[int, object] = {}
        for k, x in enumerate(ra):
            if not x:
                continue
            for j, y in b_rows[k]:
                p = x * y
                acc[j] = acc[j] + p if j in acc else p
        out_rows.append([acc.get(j, z) for j in range(n)])
    return RingMatrix._raw(out_rows, a.ring)


def _gauss_jordan_inverse(m: RingMatrix) -> RingMatrix:
    n = m.dim
    a = [[QFraction.lift(x) for x in r] + [QFraction(1 if i == j else 0) for j in range(n)]
         for i, r in enumerate(m.to_fraction().rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv if x else x for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y if y else x for x, y in zip(a[r], a[col])]
    rows = [r[n:] for r in a]
    inv_m = RingMatrix._raw(rows, QFraction)
    if m.ring is MPoly and all(x.is_polynomial or x.num.divexact(x.den) is not None for r in rows for x in r):
        return inv_m.to_poly()
    return inv_m


def kron(a: RingMatrix, b: RingMatrix, *more: RingMatrix) -> RingMatrix:
    """Kronecker product; composite index ``(i1, i2) -> i1*dim(b) + i2``."""
    if more:
        return kron(kron(a, b), *more)
    if a.ring is not b.ring:
        a, b = a.to_fraction(), b.to_fraction()
    n, m = a.dim, b.dim
    z = _zero(a.ring)
    rows = [[z] * (n * m) for _ in range(n * m)]
    b_nz = list(b.nonzeros())
    for i, j, x in a.nonzeros():
        for k, l, y in b_nz:
            rows[i * m + k][j * m + l] = x * y
    return RingMatrix._raw(rows, a.ring)


# -- nilpotent calculus --------------------------------------------------------

def _power_chain(n: RingMatrix) -> list[RingMatrix]:
    """``[I, N, N^2, ..., N^k]`` with ``N^(k+1) = 0``; NotNilpotent if ``N^dim != 0``."""
    chain = [RingMatrix.identity(n.dim, n.ring)]
    p = n
    while not p.is_zero:
        if len(chain) > n.dim:
            raise NotNilpotent(f"power {len(chain)} of a {n.dim}x{n.dim} matrix is nonzero")
        chain.append(p)
        p = p @ n
    return chain


def nilpotent_series(n: RingMatrix, coefficient: Callable[[int], object]) -> RingMatrix:
    """``sum_k coefficient(k) * n^k`` for nilpotent ``n``."""
    chain = _power_chain(n)
    result = RingMatrix.zeros(n.dim, n.ring)
    for k, p in enumerate(chain):
        c = coefficient(k)
        if c:
            result = result + p.scale(c)
    return result


def nilpotent_exp(n: RingMatrix) -> RingMatrix:
    return nilpotent_series(n, lambda k: mpq(1, math.factorial(k)))


def _unipotent_part(u: RingMatrix) -> RingMatrix:
    n = u - RingMatrix.identity(u.dim, u.ring)
    try:
        _power_chain(n)
    except NotNilpotent as exc:
        raise NotUnipotent(str(exc)) from None
    return n


def nilpotent_log_unipotent(u: RingMatrix) -> RingMatrix:
    n = _unipotent_part(u)
    return nilpotent_series(n, lambda k: mpq((-1) ** (k + 1), k) if k else 0)


def _binom_half(k: int) -> mpq:
    c = mpq(1)
    for i in range(k):
        c = c * (mpq(1, 2) - i) / (i + 1)
    return c


def nilpotent_sqrt_one_plus(n: RingMatrix) -> RingMatrix:
    """Square root of ``1 + n`` on the branch with leading term 1."""
    return nilpotent_series(n, _binom_half)


def unipotent_inv(u: RingMatrix) -> RingMatrix:
    n = _unipotent_part(u)
    return nilpotent_series(n, lambda k: -1 if k & 1 else 1)


def exp_kron(scalar, factors: Sequence[RingMatrix]) -> RingMatrix:
    """``exp(scalar * f1 (x) f2 (x) ...)`` expanded as ``sum_k scalar^k/k! f1^k (x) f2^k ...``.

    Requires one of the factors to be nilpotent.
    """
    chains = [_safe_chain(f) for f in factors]
    if all(c is None for c in chains):
        raise NotNilpotent("no nilpotent tensor factor")
    length = min(len(c) for c in chains if c is not None)
    total = None
    scalar = MPoly._lift(scalar) if not isinstance(scalar, QFraction) else scalar
    power = MPoly.one
    for k in range(length):
        mats = [c[k] if c is not None and k < len(c) else factors[i] ** k for i, c in enumerate(chains)]
        term = kron(*mats) if len(mats) > 1 else mats[0]
        term = term.scale(power * mpq(1, math.factorial(k)))
        total = term if total is None else total + term
        power = power * scalar
    return total


def _safe_chain(f: RingMatrix):
    try:
        return _power_chain(f)
    except NotNilpotent:
        return None


# -- tensor legs ----------------------------------------------------------------

@dataclass(frozen=True)
class LegSpace:
    leg_dims: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "leg_dims", tuple(self.leg_dims))
        if not self.leg_dims or any(d < 1 for d in self.leg_dims):
            raise DimensionMismatch(f"invalid leg dimensions {self.leg_dims}")

    @property
    def dim(self) -> int:
        return math.prod(self.leg_dims)

    @property
    def nlegs(self) -> int:
        return len(self.leg_dims)

    def strides(self) -> tuple[int, ...]:
        out, acc = [], 1
        for d in reversed(self.leg_dims):
            out.append(acc)
            acc *= d
        return tuple(reversed(out))


@dataclass(frozen=True, eq=False)
class LegOp:
    space: LegSpace
    mat: RingMatrix
    support: frozenset

    def __post_init__(self):
        if self.mat.dim != self.space.dim:
            raise DimensionMismatch(f"matrix dim {self.mat.dim} != space dim {self.space.dim}")
        object.__setattr__(self, "support", frozenset(self.support))

    def __matmul__(self, other: "LegOp") -> "LegOp":
        _same_space(self, other)
        return LegOp(self.space, self.mat @ other.mat, self.support | other.support)

    __mul__ = __matmul__

    def __add__(self, other: "LegOp") -> "LegOp":
        _same_space(self, other)
        return LegOp(self.space, self.mat + other.mat, self.support | other.support)

    def __sub__(self, other: "LegOp") -> "LegOp":
        _same_space(self, other)
        return LegOp(self.space, self.mat - other.mat, self.support | other.support)

    def scale(self, c) -> "LegOp":
        return LegOp(self.space, self.mat.scale(c), self.support)

    def inverse(self) -> "LegOp":
        return LegOp(self.space, self.mat.inverse(), self.support)

    def __eq__(self, other) -> bool:
        return isinstance(other, LegOp) and self.space == other.space and self.mat == other.mat

    __hash__ = None

    @classmethod
    def identity(cls, space: LegSpace, ring=MPoly) -> "LegOp":
        return cls(space, RingMatrix.identity(space.dim, ring), frozenset())

    def acts_trivially_on(self, leg: int) -> bool:
        """Direct identity-block test: does the operator factor as ``(...) (x) I`` on ``leg``?"""
        dims = self.space.leg_dims
        strides = self.space.strides()
        i = leg - 1
        d, st = dims[i], strides[i]
        for r, c, x in self.mat.nonzeros():
            if (r // st) % d != (c // st) % d:
                return False
        for r, c, x in self.mat.nonzeros():
            base_r = r - ((r // st) % d) * st
            base_c = c - ((c // st) % d) * st
            for k in range(d):
                if not (self.mat[base_r + k * st, base_c + k * st] == x):
                    return False
        return True


def _same_space(a: LegOp, b: LegOp) -> None:
    if a.space != b.space:
        raise DimensionMismatch(f"leg spaces differ: {a.space.leg_dims} vs {b.space.leg_dims}")


def embed_on_legs(space: LegSpace, op: RingMatrix, legs: Sequence[int]) -> LegOp:
    """Place ``op`` (acting on ``legs[0] (x) legs[1] (x) ...``) into ``space``.

    Tensor factor ``k`` of ``op`` lands on leg ``legs[k]``; identity elsewhere.
    """
    legs = tuple(legs)
    if len(set(legs)) != len(legs) or any(not 1 <= l <= space.nlegs for l in legs):
        raise DimensionMismatch(f"bad legs {legs} for {space.nlegs}-leg space")
    sub_dims = [space.leg_dims[l - 1] for l in legs]
    if math.prod(sub_dims) != op.dim:
        raise DimensionMismatch(f"operator dim {op.dim} does not match legs {legs} of {space.leg_dims}")
    strides = space.strides()
    leg_strides = [strides[l - 1] for l in legs]
    others = [i for i in range(1, space.nlegs + 1) if i not in legs]
    other_offsets = [0]
    for o in others:
        st, d = strides[o - 1], space.leg_dims[o - 1]
        other_offsets = [base + k * st for base in other_offsets for k in range(d)]

    def offset(idx: int) -> int:
        off = 0
        for st, d in zip(reversed(leg_strides), reversed(sub_dims)):
            idx, digit = divmod(idx, d)
            off += digit * st
        return off

    n = space.dim
    z = _zero(op.ring)
    rows = [[z] * n for _ in range(n)]
    offs = [offset(i) for i in range(op.dim)]
    for i, j, x in op.nonzeros():
        ri, cj = offs[i], offs[j]
        for base in other_offsets:
            rows[base + ri][base + cj] = x
    return LegOp(space, RingMatrix._raw(rows, op.ring), frozenset(legs))


def leg_permute(op: LegOp, perm: Sequence[int]) -> LegOp:
    """Move the content of leg ``k`` to leg ``perm[k-1]`` (conjugation by the leg permutation)."""
    perm = tuple(perm)
    n = op.space.nlegs
    if sorted(perm) != list(range(1, n + 1)):
        raise DimensionMismatch(f"{perm} is not a permutation of {n} legs")
    old_dims = op.space.leg_dims
    new_dims = [0] * n
    for k, p in enumerate(perm):
        new_dims[p - 1] = old_dims[k]
    new_space = LegSpace(tuple(new_dims))
    new_strides = new_space.strides()

    def move(idx: int) -> int:
        out = 0
        for k in range(n - 1, -1, -1):
            idx, digit = divmod(idx, old_dims[k])
            out += digit * new_strides[perm[k] - 1]
        return out

    dim = op.space.dim
    z = _zero(op.mat.ring)
    rows = [[z] * dim for _ in range(dim)]
    moved = [move(i) for i in range(dim)]
    for i, j, x in op.mat.nonzeros():
        rows[moved[i]][moved[j]] = x
    support = frozenset(perm[k - 1] for k in op.support)
    return LegOp(new_space, RingMatrix._raw(rows, op.mat.ring), support)


def swap_matrix(d1: int, d2: int) -> RingMatrix:
    """Permutation P with ``P (u (x) v) = v (x) u`` for u in C^d1, v in C^d2."""
    p = RingMatrix.zeros(d1 * d2)
    for a, b in product(range(d1), range(d2)):
        p.rows[b * d1 + a][a * d2 + b] = MPoly.one
    return p


def matrix_derivative_y(op: LegOp) -> LegOp:
    return LegOp(op.space, op.mat.diff("y"), op.support)


# -- serialisation ----------------------------------------------------------------

def matrix_to_json(m: RingMatrix) -> list[list[str]]:
    return [[str(x) for x in r] for r in m.rows]


def matrix_from_json(rows: list[list[str]], ring=MPoly) -> RingMatrix:
    return RingMatrix([[MPoly.parse(x) for x in r] for r in rows], ring)


def dumps_matrix(m: RingMatrix) -> str:
    return json.dumps(matrix_to_json(m))


def _latex_scalar(text: str) -> str:
    import re

    out = re.sub(r"(\d+)/(\d+)", r"\\tfrac{\1}{\2}", text)
    out = out.replace("kappa", r"\kappa").replace("*", " ")
    out = re.sub(r"\^(\d{2,})", r"^{\1}", out)
    return out


def matrix_to_latex(m: RingMatrix) -> str:
    body = " \\\\\n".join(" & ".join(_latex_scalar(str(x)) for x in r) for r in m.rows)
    return "\\begin{pmatrix}\n" + body + "\n\\end{pmatrix}"
