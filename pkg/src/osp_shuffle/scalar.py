"""
Exact scalars: Laurent polynomials in ``q`` over the integers and their
fraction field.

Both types are immutable and hashable.  ``RationalFunction`` is kept in a
normal form (see :class:`RationalFunction`) so that ``==`` is syntactic.
The super bar-involution is the ring map ``q -> -q^{-1}``.

>>> q = LaurentPoly.q()
>>> str(super_qint(2, 1, 1))
'-q + q^-1'
>>> str(RationalFunction(q ** -1, q - q ** -1))
'(1)/(q^2 - 1)'
"""

from __future__ import annotations

import math
import re
from typing import Iterable, Mapping, Union

__all__ = [
    "LaurentPoly",
    "RationalFunction",
    "Scalar",
    "as_rational",
    "bar",
    "parse_scalar",
    "super_qfact",
    "super_qint",
]


# ---------------------------------------------------------------------------
# dense integer polynomial helpers (coefficient lists, lowest degree first)
# ---------------------------------------------------------------------------

def _trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _content(p: list[int]) -> int:
    g = 0
    for c in p:
        g = math.gcd(g, c)
    return g


def _primitive(p: list[int]) -> list[int]:
    g = _content(p)
    if g in (0, 1):
        return p
    return [c // g for c in p]


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of ``a`` by ``b`` (``b`` nonzero)."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        a = [c * lb for c in a]
        for k, c in enumerate(b):
            a[k + shift] -= la * c
        _trim(a)
    return a


def _poly_gcd(a: list[int], b: list[int]) -> list[int]:
    if not a:
        return _normalize_sign(_primitive(list(b))) if b else []
    if not b:
        return _normalize_sign(_primitive(list(a)))
    c = math.gcd(_content(a), _content(b))
    a, b = _primitive(list(a)), _primitive(list(b))
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _prem(a, b)
        a, b = b, _primitive(r)
    g = _normalize_sign(a)
    return [c * x for x in g]


def _normalize_sign(p: list[int]) -> list[int]:
    if p and p[-1] < 0:
        return [-c for c in p]
    return p


def _exact_div(a: list[int], b: list[int]) -> list[int] | None:
    """``a / b`` in Z[x] if it divides exactly, else None."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if not a:
        return []
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return None
    out = [0] * (len(a) - db)
    lb = b[-1]
    for shift in range(len(a) - 1 - db, -1, -1):
        top = a[shift + db]
        if top == 0:
            continue
        quo, rem = divmod(top, lb)
        if rem:
            return None
        out[shift] = quo
        for k, c in enumerate(b):
            a[k + shift] -= quo * c
    if any(a):
        return None
    return out


# ---------------------------------------------------------------------------
# LaurentPoly
# ---------------------------------------------------------------------------

class LaurentPoly:
    """Element of Z[q, q^-1], stored sparsely as ``{exponent: coefficient}``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | int | None = None):
        if terms is None:
            self._terms: dict[int, int] = {}
        elif isinstance(terms, int):
            self._terms = {0: terms} if terms else {}
        else:
            self._terms = {int(k): int(v) for k, v in terms.items() if v}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[int, int]) -> LaurentPoly:
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def q(cls, k: int = 1, coeff: int = 1) -> LaurentPoly:
        return cls._raw({k: coeff} if coeff else {})

    @classmethod
    def from_dense(cls, coeffs: Iterable[int], shift: int = 0) -> LaurentPoly:
        return cls._raw({k + shift: c for k, c in enumerate(coeffs) if c})

    # -- inspection ---------------------------------------------------------
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def coefficient(self, k: int) -> int:
        return self._terms.get(k, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {0: 1}

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    @property
    def min_exp(self) -> int:
        return min(self._terms)

    @property
    def max_exp(self) -> int:
        return max(self._terms)

    def leading_coefficient(self) -> int:
        return self._terms[self.max_exp]

    def dense(self) -> tuple[int, list[int]]:
        """``(shift, coeffs)`` with ``self == q^shift * sum coeffs[k] q^k``."""
        if not self._terms:
            return 0, []
        lo, hi = self.min_exp, self.max_exp
        out = [0] * (hi - lo + 1)
        for k, c in self._terms.items():
            out[k - lo] = c
        return lo, out

    def positive_part(self) -> LaurentPoly:
        return LaurentPoly._raw({k: c for k, c in self._terms.items() if k > 0})

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return LaurentPoly()
            return LaurentPoly._raw({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (kb, cb), = b.items()
            return LaurentPoly._raw({k + kb: c * cb for k, c in a.items()})
        out: dict[int, int] = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = ka + kb
                out[k] = out.get(k, 0) + ca * cb
        return LaurentPoly._raw({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if not self.is_monomial() or abs(self.leading_coefficient()) != 1:
                raise ValueError("negative power of a non-unit Laurent polynomial")
            (k, c), = self._terms.items()
            return LaurentPoly._raw({k * e: c ** (-e)})
        result = LaurentPoly(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift(self, k: int) -> LaurentPoly:
        return LaurentPoly._raw({e + k: c for e, c in self._terms.items()})

    def exact_div(self, other: LaurentPoly) -> LaurentPoly | None:
        """Quotient in Z[q, q^-1] if ``other`` divides ``self``, else None."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero")
        if self.is_zero():
            return LaurentPoly()
        sa, a = self.dense()
        sb, b = other.dense()
        quo = _exact_div(a, b)
        if quo is None:
            return None
        return LaurentPoly.from_dense(quo, sa - sb)

    def bar(self) -> LaurentPoly:
        """Image under q -> -q^{-1}."""
        return LaurentPoly._raw(
            {-k: (-c if k % 2 else c) for k, c in self._terms.items()})

    # -- comparison / hashing -----------------------------------------------
    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        if isinstance(other, RationalFunction):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"

    def __str__(self):
        return _format_laurent(self)


def _format_monomial(c: int, k: int) -> str:
    mag = abs(c)
    if k == 0:
        body = str(mag)
    else:
        power = "q" if k == 1 else f"q^{k}"
        body = power if mag == 1 else f"{mag}*{power}"
    return body


def _format_laurent(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for k, c in sorted(p._terms.items(), reverse=True):
        body = _format_monomial(c, k)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


# ---------------------------------------------------------------------------
# RationalFunction
# ---------------------------------------------------------------------------

class RationalFunction:
    """Element of Q(q) as ``numerator / denominator``.

    Normal form: the denominator is a polynomial in ``q`` with nonzero
    constant term and positive leading coefficient, and it is coprime to the
    numerator in Z[q].  Laurent polynomials have denominator 1.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: LaurentPoly | int = 0, den: LaurentPoly | int = 1):
        if isinstance(num, int):
            num = LaurentPoly(num)
        if isinstance(den, int):
            den = LaurentPoly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num, self.den = _normalize(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, num: LaurentPoly, den: LaurentPoly) -> RationalFunction:
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def q(cls, k: int = 1) -> RationalFunction:
        return cls._raw(LaurentPoly.q(k), _ONE_POLY)

    # -- predicates / conversion -------------------------------------------
    def is_laurent(self) -> bool:
        return self.den.is_one()

    def to_laurent(self) -> LaurentPoly:
        if not self.den.is_one():
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self.num

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.den.is_one() and self.num.is_one()

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return RationalFunction._raw(self.num + other.num, _ONE_POLY)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(-self.num, self.den)

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return RationalFunction._raw(self.num * other.num, _ONE_POLY)
        if other.den.is_one() and other.num.is_monomial() and abs(other.num.leading_coefficient()) == 1:
            return RationalFunction._raw(self.num * other.num, self.den)
        if self.den.is_one() and self.num.is_monomial() and abs(self.num.leading_coefficient()) == 1:
            return RationalFunction._raw(self.num * other.num, other.den)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> RationalFunction:
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return RationalFunction._raw(self.num ** e, self.den ** e) if self.den.is_one() \
            else RationalFunction(self.num ** e, self.den ** e)

    def bar(self) -> RationalFunction:
        if self.den.is_one():
            return RationalFunction._raw(self.num.bar(), _ONE_POLY)
        return RationalFunction(self.num.bar(), self.den.bar())

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return not self.num.is_zero()

    def __repr__(self):
        return f"RationalFunction({str(self)!r})"

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"


Scalar = Union[int, LaurentPoly, RationalFunction]

_ONE_POLY = LaurentPoly(1)


def _coerce(x) -> RationalFunction | None:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, LaurentPoly):
        return RationalFunction._raw(x, _ONE_POLY)
    if isinstance(x, int):
        return RationalFunction._raw(LaurentPoly(x), _ONE_POLY)
    return None


def as_rational(x: Scalar) -> RationalFunction:
    out = _coerce(x)
    if out is None:
        raise TypeError(f"not a scalar: {x!r}")
    return out


def _normalize(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if num.is_zero():
        return LaurentPoly(), _ONE_POLY
    dshift, d = den.dense()
    nshift, n = num.dense()
    nshift -= dshift
    if len(d) == 1:
        c = d[0]
        g = math.gcd(_content(n), c)
        if c < 0:
            g = -g
        n = [x // g for x in n]
        c //= g
        return LaurentPoly.from_dense(n, nshift), LaurentPoly(c)
    g = _poly_gcd(n, d)
    if len(g) > 1 or g[0] != 1:
        n = _exact_div(n, g)
        d = _exact_div(d, g)
        assert n is not None and d is not None
        # dividing may leave trailing zero low-order terms in n
        k = 0
        while n[k] == 0:
            k += 1
        n = n[k:]
        nshift += k
    if d[-1] < 0:
        n = [-x for x in n]
        d = [-x for x in d]
    return LaurentPoly.from_dense(n, nshift), LaurentPoly.from_dense(d)


def bar(x: Scalar) -> RationalFunction:
    """Apply the ring involution q -> -q^{-1}."""
    return as_rational(x).bar()


# ---------------------------------------------------------------------------
# super quantum integers
# ---------------------------------------------------------------------------

def super_qint(m: int, parity: int, s: int) -> LaurentPoly:
    """The super quantum integer ``[m]`` with ``q_i = q^s``.

    For even parity this is ``(q_i^m - q_i^-m)/(q_i - q_i^-1)``; for odd
    parity ``((-q_i)^m - q_i^-m)/(-q_i - q_i^-1)``.  Both expand to
    ``sum_k eps^(m-1-k) q_i^(m-1-2k)`` with ``eps = -1`` in the odd case.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    sign = -1 if parity % 2 else 1
    out: dict[int, int] = {}
    for k in range(m):
        out[s * (m - 1 - 2 * k)] = sign ** (m - 1 - k)
    return LaurentPoly(out)


def super_qfact(m: int, parity: int, s: int) -> LaurentPoly:
    out = LaurentPoly(1)
    for k in range(1, m + 1):
        out = out * super_qint(k, parity, s)
    return out


# ---------------------------------------------------------------------------
# text form
# ---------------------------------------------------------------------------

_TERM_RE = re.compile(r"\s*([+-])?\s*(\d+)?\s*(\*)?\s*(q(?:\^(-?\d+))?)?\s*")


def _parse_laurent(text: str) -> LaurentPoly:
    text = text.strip()
    if text == "0":
        return LaurentPoly()
    out: dict[int, int] = {}
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse scalar near {text[pos:]!r}")
        sign, digits, star, qpart, exp = m.groups()
        if sign is None and not first:
            raise ValueError(f"missing operator near {text[pos:]!r}")
        if digits is None and qpart is None:
            raise ValueError(f"empty term near {text[pos:]!r}")
        if star and (digits is None or qpart is None):
            raise ValueError(f"bad product near {text[pos:]!r}")
        c = int(digits) if digits is not None else 1
        if sign == "-":
            c = -c
        k = 0 if qpart is None else (1 if exp is None else int(exp))
        out[k] = out.get(k, 0) + c
        pos = m.end()
        first = False
    return LaurentPoly(out)


def parse_scalar(text: str) -> RationalFunction:
    """Inverse of ``str`` on scalars: ``'-q + q^-1'`` or ``'(num)/(den)'``."""
    text = text.strip()
    m = re.fullmatch(r"\((.*)\)\s*/\s*\((.*)\)", text)
    if m:
        return RationalFunction(_parse_laurent(m.group(1)), _parse_laurent(m.group(2)))
    return as_rational(_parse_laurent(text))
