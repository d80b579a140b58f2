"""Exact scalar rings: rationals, multivariate polynomials and polynomial fractions.

Polynomials live in a fixed variable universe ``h, y, q, s, kappa`` (``s`` is
the square root of ``q`` used by the q-side constructions, ``kappa`` is the
formal exponent of the shift-operator oracle).  Monomials are packed into a
single integer, 16 bits per variable, so monomial multiplication is integer
addition.
"""

from __future__ import annotations

import re
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping, Union

from gmpy2 import mpq

from .errors import DivergentLimit, NonPolynomialLimit

Rational = mpq

VARIABLES: tuple[str, ...] = ("h", "y", "q", "s", "kappa")
_INDEX = {name: i for i, name in enumerate(VARIABLES)}
_BITS = 16
_FIELD = (1 << _BITS) - 1
_NVARS = len(VARIABLES)

Number = Union[int, _RationalABC, "mpq"]


def _pack(exps: Iterable[int]) -> int:
    key = 0
    for i, e in enumerate(exps):
        if e < 0 or e > _FIELD:
            raise ValueError(f"exponent {e} out of range")
        key |= e << (_BITS * i)
    return key


def _unpack(key: int) -> tuple[int, ...]:
    return tuple((key >> (_BITS * i)) & _FIELD for i in range(_NVARS))


def _exponent(key: int, index: int) -> int:
    return (key >> (_BITS * index)) & _FIELD


def _order_key(key: int) -> tuple:
    exps = _unpack(key)
    return (sum(exps), exps[::-1])


def _coerce_rational(c) -> mpq:
    if isinstance(c, mpq):
        return c
    if isinstance(c, (int, _RationalABC)):
        return mpq(c)
    if isinstance(c, str):
        return mpq(c)
    raise TypeError(f"cannot use {type(c).__name__} as a rational coefficient")


class MPoly:
    """Immutable multivariate polynomial with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, mpq] | None = None):
        # terms must already be free of zero coefficients
        self._terms: dict[int, mpq] = dict(terms) if terms else {}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "MPoly":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c) -> "MPoly":
        c = _coerce_rational(c)
        return cls._raw({0: c} if c else {})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "MPoly":
        return cls._raw({power << (_BITS * _INDEX[name]): mpq(1)})

    @classmethod
    def from_dict(cls, data: Mapping) -> "MPoly":
        """Build from ``{exponent-mapping: coefficient}``.

        Exponents are either tuples over :data:`VARIABLES` or ``{name: e}`` dicts.
        """
        terms: dict[int, mpq] = {}
        for exps, c in data.items():
            if isinstance(exps, Mapping):
                vec = [0] * _NVARS
                for name, e in exps.items():
                    vec[_INDEX[name]] = e
                exps = vec
            key = _pack(exps)
            val = terms.get(key, 0) + _coerce_rational(c)
            if val:
                terms[key] = val
            else:
                terms.pop(key, None)
        return cls._raw(terms)

    zero: "MPoly"
    one: "MPoly"

    @property
    def terms(self) -> Mapping[int, mpq]:
        return self._terms

    def monomials(self) -> list[tuple[tuple[int, ...], mpq]]:
        """Terms as ``(exponent tuple, coefficient)`` in canonical order."""
        keys = sorted(self._terms, key=_order_key)
        return [(_unpack(k), self._terms[k]) for k in keys]

    @property
    def variables(self) -> tuple[str, ...]:
        used = 0
        for key in self._terms:
            used |= key
        return tuple(n for i, n in enumerate(VARIABLES) if (used >> (_BITS * i)) & _FIELD)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    @property
    def constant(self) -> mpq:
        return self._terms.get(0, mpq(0))

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- arithmetic ---------------------------------------------------------
    @staticmethod
    def _lift(other) -> "MPoly":
        if isinstance(other, MPoly):
            return other
        return MPoly.const(other)

    def __add__(self, other) -> "MPoly":
        if not isinstance(other, MPoly):
            if isinstance(other, QFraction):
                return NotImplemented
            other = MPoly.const(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        terms = dict(self._terms)
        for k, c in other._terms.items():
            v = terms.get(k)
            if v is None:
                terms[k] = c
            else:
                v = v + c
                if v:
                    terms[k] = v
                else:
                    del terms[k]
        return MPoly._raw(terms)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> "MPoly":
        if isinstance(other, QFraction):
            return NotImplemented
        return self + (-MPoly._lift(other))

    def __rsub__(self, other) -> "MPoly":
        return MPoly._lift(other) + (-self)

    def __mul__(self, other) -> "MPoly":
        if not isinstance(other, MPoly):
            if isinstance(other, QFraction):
                return NotImplemented
            c = _coerce_rational(other)
            if not c:
                return MPoly.zero
            return MPoly._raw({k: v * c for k, v in self._terms.items()})
        a, b = self._terms, other._terms
        if not a or not b:
            return MPoly.zero
        if len(a) < len(b):
            a, b = b, a
        out: dict[int, mpq] = {}
        get = out.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        return MPoly._raw({k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = MPoly.one, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (MPoly, QFraction)):
            return QFraction(self) / other
        c = _coerce_rational(other)
        return self * (1 / c)

    def __rtruediv__(self, other):
        return QFraction(MPoly._lift(other), self)

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self._terms == other._terms
        if isinstance(other, QFraction):
            return other == self
        try:
            return self._terms == MPoly.const(other)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- structure ----------------------------------------------------------
    def degree(self, var: str | None = None) -> int:
        if not self._terms:
            return -1
        if var is None:
            return max(sum(_unpack(k)) for k in self._terms)
        i = _INDEX[var]
        return max(_exponent(k, i) for k in self._terms)

    def coefficients(self, var: str) -> dict[int, "MPoly"]:
        """Split into ``{power: coefficient}`` with respect to ``var``."""
        i = _INDEX[var]
        shift = _BITS * i
        mask = ~(_FIELD << shift)
        groups: dict[int, dict[int, mpq]] = {}
        for k, c in self._terms.items():
            groups.setdefault((k >> shift) & _FIELD, {})[k & mask] = c
        return {e: MPoly._raw(t) for e, t in groups.items()}

    def subs(self, var: str, value) -> "MPoly":
        """Substitute ``var`` by a number or polynomial."""
        coeffs = self.coefficients(var)
        if not coeffs:
            return self
        if not isinstance(value, MPoly):
            value = MPoly.const(value)
        if value.is_constant:
            v = value.constant
            terms: dict[int, mpq] = {}
            for e, p in coeffs.items():
                f = v ** e if e else mpq(1)
                if not f:
                    continue
                for k, c in p._terms.items():
                    terms[k] = terms.get(k, 0) + c * f
            return MPoly._raw({k: c for k, c in terms.items() if c})
        result = MPoly.zero
        top = max(coeffs)
        for e in range(top, -1, -1):
            result = result * value
            if e in coeffs:
                result = result + coeffs[e]
        return result

    def negate_var(self, var: str) -> "MPoly":
        i = _INDEX[var]
        return MPoly._raw({k: (-c if _exponent(k, i) & 1 else c) for k, c in self._terms.items()})

    def diff(self, var: str) -> "MPoly":
        i = _INDEX[var]
        step = 1 << (_BITS * i)
        out = {}
        for k, c in self._terms.items():
            e = _exponent(k, i)
            if e:
                out[k - step] = c * e
        return MPoly._raw(out)

    def leading_key(self) -> int:
        return max(self._terms, key=_order_key)

    def divide_by_linear(self, var: str, root=1) -> "MPoly | None":
        """Exact quotient by ``var - root``; ``None`` when it does not divide."""
        i = _INDEX[var]
        shift = _BITS * i
        mask = ~(_FIELD << shift)
        root = _coerce_rational(root)
        groups: dict[int, dict[int, mpq]] = {}
        for k, c in self._terms.items():
            groups.setdefault(k & mask, {})[(k >> shift) & _FIELD] = c
        out: dict[int, mpq] = {}
        for rest, cs in groups.items():
            n = max(cs)
            carry = mpq(0)
            for e in range(n, 0, -1):
                carry = cs.get(e, 0) + root * carry
                if carry:
                    out[rest | ((e - 1) << shift)] = carry
            if cs.get(0, 0) + root * carry:
                return None
        return MPoly._raw(out)

    def divexact(self, other: "MPoly") -> "MPoly | None":
        """Exact multivariate quotient ``self / other`` or ``None``."""
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if other.is_constant:
            return self * (1 / other.constant)
        lk = other.leading_key()
        lc = other._terms[lk]
        lexp = _unpack(lk)
        rem = dict(self._terms)
        quot: dict[int, mpq] = {}
        while rem:
            rk = max(rem, key=_order_key)
            rexp = _unpack(rk)
            if any(r < l for r, l in zip(rexp, lexp)):
                return None
            mk = rk - lk
            mc = rem[rk] / lc
            quot[mk] = quot.get(mk, 0) + mc
            for k, c in other._terms.items():
                key = k + mk
                v = rem.get(key, 0) - c * mc
                if v:
                    rem[key] = v
                else:
                    rem.pop(key, None)
        return MPoly._raw({k: c for k, c in quot.items() if c})

    def monomial_content(self) -> int:
        """Packed key of the largest monomial dividing every term."""
        if not self._terms:
            return 0
        mins = None
        for k in self._terms:
            e = _unpack(k)
            mins = e if mins is None else tuple(map(min, mins, e))
        return _pack(mins)

    def shift_down(self, key: int) -> "MPoly":
        return MPoly._raw({k - key: c for k, c in self._terms.items()})

    # -- text -----------------------------------------------------------------
    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exps, c in self.monomials():
            mono = "*".join(
                name if e == 1 else f"{name}^{e}" for name, e in zip(VARIABLES, exps) if e
            )
            neg = c < 0
            mag = -c if neg else c
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"MPoly('{self}')"

    @classmethod
    def parse(cls, text: str) -> "MPoly":
        """Inverse of :meth:`__str__` (also accepts ``**`` and spaces freely)."""
        src = text.replace(" ", "").replace("**", "^")
        if not src:
            raise ValueError("empty polynomial text")
        if src[0] not in "+-":
            src = "+" + src
        terms: dict[tuple, mpq] = {}
        for sign, body in re.findall(r"([+-])([^+-]+)", src):
            coeff = mpq(1)
            vec = [0] * _NVARS
            for factor in body.split("*"):
                m = re.fullmatch(r"(\d+(?:/\d+)?)", factor)
                if m:
                    coeff *= mpq(m.group(1))
                    continue
                m = re.fullmatch(r"([a-z]+)(?:\^(\d+))?", factor)
                if not m or m.group(1) not in _INDEX:
                    raise ValueError(f"bad factor {factor!r} in {text!r}")
                vec[_INDEX[m.group(1)]] += int(m.group(2) or 1)
            if sign == "-":
                coeff = -coeff
            key = tuple(vec)
            terms[key] = terms.get(key, 0) + coeff
        return cls.from_dict(terms)


MPoly.zero = MPoly._raw({})
MPoly.one = MPoly._raw({0: mpq(1)})


def poly(text: str) -> MPoly:
    return MPoly.parse(text)


def poly_arith(a: MPoly, b: MPoly, op: str) -> MPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


# -- univariate gcd, used only to keep fractions small ---------------------

def _univariate_gcd(a: MPoly, b: MPoly) -> MPoly:
    while not b.is_zero:
        a, b = b, _univariate_rem(a, b)
    if a.is_zero:
        return a
    return a * (1 / a._terms[a.leading_key()])


def _univariate_rem(a: MPoly, b: MPoly) -> MPoly:
    lk = b.leading_key()
    lc = b._terms[lk]
    rem = dict(a._terms)
    ldeg = sum(_unpack(lk))
    while rem:
        rk = max(rem, key=_order_key)
        if sum(_unpack(rk)) < ldeg:
            break
        mk, mc = rk - lk, rem[rk] / lc
        for k, c in b._terms.items():
            key = k + mk
            v = rem.get(key, 0) - c * mc
            if v:
                rem[key] = v
            else:
                rem.pop(key, None)
    return MPoly._raw(rem)


def _content_gcd(num: MPoly, den: MPoly, var: str) -> MPoly:
    """gcd of a univariate ``den`` (in ``var``) with ``num`` viewed over ``Q[var]``."""
    i = _INDEX[var]
    shift = _BITS * i
    mask = ~(_FIELD << shift)
    groups: dict[int, dict[int, mpq]] = {}
    for k, c in num._terms.items():
        groups.setdefault(k & mask, {})[k & ~mask] = c
    g = den
    for t in groups.values():
        g = _univariate_gcd(g, MPoly._raw(t))
        if g.is_constant:
            break
    return g


class QFraction:
    """Fraction of polynomials; equality is decided by cross-multiplication.

    Construction applies cheap normalisations (monomial content, univariate
    gcd when the denominator involves a single variable, exact division) so
    that chained arithmetic stays small, but no general gcd is attempted.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, reduce: bool = True):
        num = MPoly._lift(num)
        den = MPoly.one if den is None else MPoly._lift(den)
        if den.is_zero:
            raise ZeroDivisionError("QFraction with zero denominator")
        if reduce:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den

    @staticmethod
    def lift(x) -> "QFraction":
        return x if isinstance(x, QFraction) else QFraction(x)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __bool__(self) -> bool:
        return not self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den.is_constant

    def to_mpoly(self) -> MPoly:
        if self.den.is_constant:
            return self.num * (1 / self.den.constant)
        q = self.num.divexact(self.den)
        if q is None:
            raise ValueError(f"{self} is not a polynomial")
        return q

    @property
    def variables(self) -> tuple[str, ...]:
        used = set(self.num.variables) | set(self.den.variables)
        return tuple(v for v in VARIABLES if v in used)

    def __add__(self, other) -> "QFraction":
        o = QFraction.lift(other)
        if self.den == o.den:
            return QFraction(self.num + o.num, self.den)
        if o.num.is_zero:
            return self
        if self.num.is_zero:
            return o
        return QFraction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "QFraction":
        return QFraction(-self.num, self.den, reduce=False)

    def __sub__(self, other) -> "QFraction":
        return self + (-QFraction.lift(other))

    def __rsub__(self, other) -> "QFraction":
        return QFraction.lift(other) + (-self)

    def __mul__(self, other) -> "QFraction":
        o = QFraction.lift(other)
        if self.num.is_zero or o.num.is_zero:
            return QFraction(MPoly.zero)
        return QFraction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "QFraction":
        o = QFraction.lift(other)
        if o.num.is_zero:
            raise ZeroDivisionError("QFraction division by zero")
        return QFraction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other) -> "QFraction":
        return QFraction.lift(other) / self

    def __pow__(self, n: int) -> "QFraction":
        if n < 0:
            return QFraction(self.den ** (-n), self.num ** (-n))
        return QFraction(self.num ** n, self.den ** n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, (QFraction, MPoly, int, _RationalABC, mpq)):
            return NotImplemented
        return qfrac_eq(self, QFraction.lift(other))

    def __hash__(self):
        raise TypeError("QFraction is unhashable: equality is by cross-multiplication")

    def subs(self, var: str, value) -> "QFraction":
        if isinstance(value, QFraction):
            return _subs_fraction(self.num, var, value) / _subs_fraction(self.den, var, value)
        return QFraction(self.num.subs(var, value), self.den.subs(var, value))

    def negate_var(self, var: str) -> "QFraction":
        return QFraction(self.num.negate_var(var), self.den.negate_var(var))

    def __str__(self) -> str:
        if self.den == MPoly.one:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"QFraction('{self}')"


def _subs_fraction(p: MPoly, var: str, value: QFraction) -> QFraction:
    coeffs = p.coefficients(var)
    result = QFraction(MPoly.zero)
    if not coeffs:
        return QFraction(p)
    for e in range(max(coeffs), -1, -1):
        result = result * value
        if e in coeffs:
            result = result + coeffs[e]
    return result


def _reduce(num: MPoly, den: MPoly) -> tuple[MPoly, MPoly]:
    if num.is_zero:
        return MPoly.zero, MPoly.one
    if den.is_constant:
        c = den.constant
        return (num if c == 1 else num * (1 / c)), MPoly.one
    content = _pack(map(min, _unpack(num.monomial_content()), _unpack(den.monomial_content())))
    if content:
        num, den = num.shift_down(content), den.shift_down(content)
    dvars = den.variables
    if len(dvars) == 1:
        g = _content_gcd(num, den, dvars[0])
        if not g.is_constant:
            num, den = num.divexact(g), den.divexact(g)
    elif len(den.terms) <= len(num.terms):
        q = num.divexact(den)
        if q is not None:
            return q, MPoly.one
    if den.is_constant:
        return num * (1 / den.constant), MPoly.one
    lc = den.terms[den.leading_key()]
    if lc != 1:
        inv = 1 / lc
        num, den = num * inv, den * inv
    return num, den


def qfrac_eq(a: QFraction, b: QFraction) -> bool:
    a, b = QFraction.lift(a), QFraction.lift(b)
    return a.num * b.den == b.num * a.den


# -- q-numbers and limits ----------------------------------------------------

def q_number(n: int, var: str = "q", root: int = 1) -> QFraction:
    """Symmetric q-number ``(q^n - q^-n)/(q - q^-1)`` with q powers cleared.

    ``q = var**root``; ``root=2`` with ``var="s"`` expresses everything in
    the square root of q.
    """
    if n == 0:
        return QFraction(MPoly.zero)
    if n < 0:
        return -q_number(-n, var, root)
    q = MPoly.var(var, root)
    return QFraction(q ** (2 * n) - 1, q ** (n - 1) * (q ** 2 - 1))


def q_factorial(n: int, var: str = "q", root: int = 1) -> QFraction:
    if n < 0:
        raise ValueError("q_factorial of a negative integer")
    result = QFraction(MPoly.one)
    for k in range(1, n + 1):
        result = result * q_number(k, var, root)
    return result


def root_order(p: MPoly, var: str = "q") -> tuple[int, MPoly]:
    """Split ``p = (var - 1)^a * rest`` with ``rest(var=1) != 0``."""
    if p.is_zero:
        raise ValueError("root order of the zero polynomial")
    order = 0
    while True:
        quot = p.divide_by_linear(var, 1)
        if quot is None:
            return order, p
        p, order = quot, order + 1


def limit_q_to_1(f, var: str = "q") -> MPoly:
    """Exact limit ``var -> 1`` of a fraction, by repeated division by ``var - 1``."""
    f = QFraction.lift(f)
    if f.num.is_zero:
        return MPoly.zero
    a, n1 = root_order(f.num, var)
    b, d1 = root_order(f.den, var)
    if a > b:
        return MPoly.zero
    if a < b:
        raise DivergentLimit(f"pole of order {b - a} at {var}=1 in {f}")
    n_at = n1.subs(var, 1)
    d_at = d1.subs(var, 1)
    if d_at.is_constant:
        return n_at * (1 / d_at.constant)
    quot = n_at.divexact(d_at)
    if quot is None:
        raise NonPolynomialLimit(f"limit leaves denominator {d_at}")
    return quot


def limit_orders(f, var: str = "q") -> tuple[int | None, int]:
    """``(a, b)``: orders of ``var - 1`` in numerator and denominator (``a`` is None for 0)."""
    f = QFraction.lift(f)
    if f.num.is_zero:
        return None, root_order(f.den, var)[0]
    return root_order(f.num, var)[0], root_order(f.den, var)[0]
