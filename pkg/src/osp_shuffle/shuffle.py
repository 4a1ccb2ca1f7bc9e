"""
The quantum shuffle superalgebra on words over I = {1, ..., n}.

``Element`` is a sparse linear combination of words with coefficients in
Q(q).  ``ShuffleAlgebra`` binds a root datum and provides the product,
coproduct, the involutions tau / bar / sigma and the bilinear form, with
per-weight caches.

The product of two words sums over all interleavings.  A letter ``a`` of the
left factor that ends up before a letter ``b`` of the right factor contributes
``(-1)^(p(a)p(b)) q^-(alpha_a, alpha_b)``; nothing else is weighted.  This
is the closed form of the usual recursion

    (x i) * (y j) = (x * (y j)) i + (-1)^(p(xi)p(j)) q^-(|xi|,|j|) ((x i) * y) j,

which is kept as :meth:`ShuffleAlgebra.shuffle_recursive` for cross-checks.

The bilinear form is only defined on the subalgebra U generated by the
letters.  Writing ``T_v = (v_k) * ... * (v_1)`` for a word ``v``, the
adjunction with the coproduct forces ``(x, T_v) = [v]x`` for every ``x`` in
U.  Per weight we pick words ``v_1..v_m`` whose ``T_v`` form a basis of U and
use the fact that a nonzero element of U has a dominant maximal word, so an
element of U is determined by its coefficients on dominant words.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .cartan import RootDatum, Weight, datum
from .linalg import IncrementalBasis, inverse
from .scalar import LaurentPoly, RationalFunction, Scalar, as_rational, parse_scalar
from .words import Word, dominant_words, format_word, parse_word, words_of_weight

__all__ = ["Element", "TensorElement", "ShuffleAlgebra", "NotInSubalgebraError", "algebra"]

_ONE_POLY = LaurentPoly(1)


class NotInSubalgebraError(ValueError):
    """Raised when the form is evaluated on something outside U."""


# ---------------------------------------------------------------------------
# Element
# ---------------------------------------------------------------------------

class Element:
    """Immutable finite linear combination of words."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Iterable[int], Scalar] | None = None):
        out: dict[Word, RationalFunction] = {}
        for w, c in (terms or {}).items():
            c = as_rational(c)
            if c:
                w = tuple(w)
                out[w] = out[w] + c if w in out else c
                if not out[w]:
                    del out[w]
        self._terms = out

    @classmethod
    def _raw(cls, terms: dict[Word, RationalFunction]) -> Element:
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @classmethod
    def word(cls, w: Iterable[int], coeff: Scalar = 1) -> Element:
        return cls({tuple(w): coeff})

    @classmethod
    def one(cls) -> Element:
        return cls.word(())

    # -- mapping-ish access ---------------------------------------------------
    def __iter__(self) -> Iterator[Word]:
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def items(self):
        return self._terms.items()

    def words(self) -> list[Word]:
        return list(self._terms)

    def coefficient(self, w: Iterable[int]) -> RationalFunction:
        return self._terms.get(tuple(w), RationalFunction(0))

    __getitem__ = coefficient

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def max_word(self) -> tuple[Word, RationalFunction]:
        """Lexicographically largest word with nonzero coefficient."""
        if not self._terms:
            raise ValueError("max_word of the zero element")
        w = max(self._terms)
        return w, self._terms[w]

    def weight(self, dat: RootDatum) -> Weight | None:
        """Common weight of all words, or None if not homogeneous."""
        weights = {dat.weight_of_word(w) for w in self._terms}
        if len(weights) > 1:
            return None
        return weights.pop() if weights else None

    def is_laurent(self) -> bool:
        return all(c.is_laurent() for c in self._terms.values())

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other: Element) -> Element:
        if not isinstance(other, Element):
            return NotImplemented
        out = dict(self._terms)
        for w, c in other._terms.items():
            v = out[w] + c if w in out else c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return Element._raw(out)

    def __neg__(self) -> Element:
        return Element._raw({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: Element) -> Element:
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def scale(self, c: Scalar) -> Element:
        c = as_rational(c)
        if not c:
            return Element()
        if c.is_one():
            return self
        return Element._raw({w: v * c for w, v in self._terms.items()})

    def __rmul__(self, c):
        if isinstance(c, (int, LaurentPoly, RationalFunction)):
            return self.scale(c)
        return NotImplemented

    def __truediv__(self, c):
        return self.scale(as_rational(c).inverse())

    def map_coefficients(self, f) -> Element:
        return Element({w: f(c) for w, c in self._terms.items()})

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    # -- text / json ----------------------------------------------------------
    def __repr__(self):
        return f"Element({str(self)!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for w in sorted(self._terms):
            c = self._terms[w]
            ws = format_word(w)
            if c.is_one():
                parts.append(("+", ws))
            elif (-c).is_one():
                parts.append(("-", ws))
            elif c.is_laurent() and c.num.is_monomial():
                neg = c.num.leading_coefficient() < 0
                body = str(-c if neg else c)
                parts.append(("-" if neg else "+", f"{body} {ws}"))
            else:
                parts.append(("+", f"[{c}] {ws}"))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def to_json(self, dat: RootDatum | None = None) -> dict:
        weight = self.weight(dat) if dat is not None else None
        return {
            "weight": weight.to_json() if weight is not None else None,
            "terms": [{"word": list(w), "coeff": str(self._terms[w])}
                      for w in sorted(self._terms, reverse=True)],
        }

    @classmethod
    def from_json(cls, payload: Mapping) -> Element:
        return cls({tuple(t["word"]): parse_scalar(t["coeff"]) for t in payload["terms"]})


@dataclass(frozen=True)
class TensorElement:
    """Sparse linear combination of pairs of words."""

    terms: Mapping[tuple[Word, Word], RationalFunction]

    @classmethod
    def build(cls, terms: Mapping[tuple[Word, Word], Scalar]) -> TensorElement:
        out: dict[tuple[Word, Word], RationalFunction] = {}
        for key, c in terms.items():
            c = as_rational(c)
            if c:
                out[key] = out[key] + c if key in out else c
                if not out[key]:
                    del out[key]
        return cls(out)

    def __add__(self, other: TensorElement) -> TensorElement:
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return TensorElement.build(out)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return dict(self.terms) == dict(other.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"[{c}] {format_word(a)}⊗{format_word(b)}"
                          for (a, b), c in sorted(self.terms.items(), reverse=True))


# ---------------------------------------------------------------------------
# algebra
# ---------------------------------------------------------------------------

@dataclass
class _FormData:
    weight: Weight
    dominant: list[Word]          # columns, decreasing lex order
    basis_words: list[Word]       # v_1..v_m with T_v a basis of U_weight
    basis: list[Element]          # the T_v themselves
    expansion: list[list[RationalFunction]]   # [D_j] T_{v_i}
    expansion_inv: list[list[RationalFunction]]


class ShuffleAlgebra:
    def __init__(self, dat: RootDatum | int):
        self.datum = dat if isinstance(dat, RootDatum) else datum(dat)
        n = self.datum.n
        self._parity = [0] + [self.datum.parity(i) for i in range(1, n + 1)]
        # cross[a][b]: (sign, q-exponent) when left letter a precedes right letter b
        self._cross = [[(0, 0)] * (n + 1) for _ in range(n + 1)]
        for a in range(1, n + 1):
            for b in range(1, n + 1):
                self._cross[a][b] = (self._parity[a] * self._parity[b], -self.datum.b(a, b))
        self._word_cache: dict[tuple[Word, Word], dict[Word, LaurentPoly]] = {}
        self._rec_cache: dict[tuple[Word, Word], dict[Word, LaurentPoly]] = {}
        self._mono_cache: dict[Word, Element] = {(): Element.one()}
        self._form_cache: dict[Weight, _FormData] = {}

    # -- word level ------------------------------------------------------------
    def _check(self, w: Word) -> None:
        for i in w:
            if not 1 <= i <= self.datum.n:
                raise ValueError(f"letter {i} outside 1..{self.datum.n}")

    def shuffle_words(self, a: Word, b: Word) -> dict[Word, LaurentPoly]:
        """``a * b`` for words, by direct enumeration of interleavings."""
        key = (a, b)
        hit = self._word_cache.get(key)
        if hit is not None:
            return hit
        self._check(a)
        self._check(b)
        la, lb = len(a), len(b)
        cross = self._cross
        # suffix[i][j]: total (sign, exp) of a[i] preceding b[j:]
        suffix = [[(0, 0)] * (lb + 1) for _ in range(la)]
        for i in range(la):
            sg = ex = 0
            row = [(0, 0)] * (lb + 1)
            for j in range(lb - 1, -1, -1):
                s, e = cross[a[i]][b[j]]
                sg += s
                ex += e
                row[j] = (sg, ex)
            suffix[i] = row
        acc: dict[Word, dict[int, int]] = {}
        buf: list[int] = []

        def rec(i: int, j: int, sg: int, ex: int) -> None:
            if i == la:
                w = tuple(buf) + b[j:]
                d = acc.setdefault(w, {})
                d[ex] = d.get(ex, 0) + (-1 if sg & 1 else 1)
                return
            if j == lb:
                w = tuple(buf) + a[i:]
                d = acc.setdefault(w, {})
                d[ex] = d.get(ex, 0) + (-1 if sg & 1 else 1)
                return
            s, e = suffix[i][j]
            buf.append(a[i])
            rec(i + 1, j, sg + s, ex + e)
            buf.pop()
            buf.append(b[j])
            rec(i, j + 1, sg, ex)
            buf.pop()

        rec(0, 0, 0, 0)
        out = {}
        for w, d in acc.items():
            p = LaurentPoly(d)
            if p:
                out[w] = p
        self._word_cache[key] = out
        return out

    def shuffle_recursive(self, a: Word, b: Word) -> dict[Word, LaurentPoly]:
        """Literal two-term recursion on last letters (reference oracle)."""
        key = (a, b)
        hit = self._rec_cache.get(key)
        if hit is not None:
            return hit
        if not a:
            out = {b: _ONE_POLY}
        elif not b:
            out = {a: _ONE_POLY}
        else:
            x_i, i = a, a[-1]
            y, j = b[:-1], b[-1]
            out: dict[Word, LaurentPoly] = {}
            for w, c in self.shuffle_recursive(a[:-1], b).items():
                _acc(out, w + (i,), c)
            odd = sum(self._parity[t] for t in x_i) * self._parity[j]
            exp = -sum(self.datum.b(t, j) for t in x_i)
            factor = LaurentPoly.q(exp, -1 if odd % 2 else 1)
            for w, c in self.shuffle_recursive(x_i, y).items():
                _acc(out, w + (j,), c * factor)
            out = {w: c for w, c in out.items() if c}
        self._rec_cache[key] = out
        return out

    # -- element level -------------------------------------------------------------
    def shuffle(self, x: Element, y: Element, *, recursive: bool = False) -> Element:
        prod = self.shuffle_recursive if recursive else self.shuffle_words
        # accumulate numerators per (word, denominator) to avoid rational adds
        acc: dict[Word, dict[LaurentPoly, LaurentPoly]] = {}
        for u, cu in x.items():
            for v, cv in y.items():
                c = cu * cv
                for w, p in prod(u, v).items():
                    d = acc.setdefault(w, {})
                    num = c.num * p
                    d[c.den] = d[c.den] + num if c.den in d else num
        out: dict[Word, RationalFunction] = {}
        for w, d in acc.items():
            total = None
            for den, num in d.items():
                if not num:
                    continue
                term = RationalFunction._raw(num, den) if den.is_one() else RationalFunction(num, den)
                total = term if total is None else total + term
            if total:
                out[w] = total
        return Element._raw(out)

    def shuffle_many(self, factors: Iterable[Element]) -> Element:
        out = Element.one()
        for f in factors:
            out = self.shuffle(out, f)
        return out

    def power(self, x: Element, m: int) -> Element:
        return self.shuffle_many([x] * m)

    def monomial(self, v: Iterable[int]) -> Element:
        """``T_v = (v_k) * (v_(k-1)) * ... * (v_1)``."""
        v = tuple(v)
        hit = self._mono_cache.get(v)
        if hit is None:
            hit = self.shuffle(Element.word((v[-1],)), self.monomial(v[:-1]))
            self._mono_cache[v] = hit
        return hit

    def coproduct(self, x: Element) -> TensorElement:
        out: dict[tuple[Word, Word], RationalFunction] = {}
        for w, c in x.items():
            for k in range(len(w) + 1):
                key = (w[k:], w[:k])
                out[key] = out[key] + c if key in out else c
        return TensorElement.build(out)

    def tensor_shuffle(self, s: TensorElement, t: TensorElement) -> TensorElement:
        """``(w⊗x)*(y⊗z) = (-1)^(p(x)p(y)) q^-(|x|,|y|) (w*y)⊗(x*z)``."""
        dat = self.datum
        out: dict[tuple[Word, Word], RationalFunction] = {}
        for (w, x), c1 in s.terms.items():
            px = dat.weight_of_word(x)
            for (y, z), c2 in t.terms.items():
                py = dat.weight_of_word(y)
                odd = dat.weight_parity(px) * dat.weight_parity(py)
                twist = LaurentPoly.q(-dat.bilinear(px, py), -1 if odd % 2 else 1)
                c = c1 * c2 * twist
                left = self.shuffle_words(w, y)
                right = self.shuffle_words(x, z)
                for a, pa in left.items():
                    for b, pb in right.items():
                        key = (a, b)
                        v = c * (pa * pb)
                        out[key] = out[key] + v if key in out else v
        return TensorElement.build(out)

    # -- involutions --------------------------------------------------------------
    def _bar_factor(self, w: Word) -> LaurentPoly:
        odd = sum(self._parity[i] for i in w)
        sign = -1 if (odd * (odd - 1) // 2) % 2 else 1
        return LaurentPoly.q(-self.datum.bigN(self.datum.weight_of_word(w)), sign)

    def tau(self, x: Element) -> Element:
        return Element._raw({w[::-1]: c for w, c in x.items()})

    def bar(self, x: Element) -> Element:
        """Algebra bar map: bars coefficients and twists-and-reverses words."""
        return Element({w[::-1]: c.bar() * self._bar_factor(w) for w, c in x.items()})

    def sigma(self, x: Element) -> Element:
        return Element({w: c.bar() * self._bar_factor(w) for w, c in x.items()})

    def coefficient_bar(self, x: Element) -> Element:
        """Bars every word coefficient, fixing the words."""
        return Element._raw({w: c.bar() for w, c in x.items()})

    # -- bilinear form --------------------------------------------------------------
    def form_data(self, nu: Weight) -> _FormData:
        hit = self._form_cache.get(nu)
        if hit is not None:
            return hit
        dom = dominant_words(self.datum, nu)
        col = {w: k for k, w in enumerate(dom)}
        m = len(dom)
        # reversed dominant words first: they usually give a basis immediately
        candidates = [w[::-1] for w in dom]
        seen = set(candidates)
        candidates += [w for w in words_of_weight(self.datum, nu) if w not in seen]
        sel = IncrementalBasis(m)
        words_sel, basis, rows = [], [], []
        for v in candidates:
            if len(words_sel) == m:
                break
            t = self.monomial(v)
            row = [RationalFunction(0)] * m
            for w, c in t.items():
                k = col.get(w)
                if k is not None:
                    row[k] = c
            if sel.add(row):
                words_sel.append(v)
                basis.append(t)
                rows.append(row)
        if len(words_sel) != m:
            raise ArithmeticError(f"could not find a monomial basis for weight {nu}")
        data = _FormData(nu, dom, words_sel, basis, rows, inverse(rows) if m else [])
        self._form_cache[nu] = data
        return data

    def _homogeneous_weight(self, x: Element) -> Weight:
        w = x.weight(self.datum)
        if w is None:
            if x.is_zero():
                raise ValueError("zero element has no weight")
            raise ValueError("element is not homogeneous")
        return w

    def coordinates(self, y: Element, nu: Weight | None = None) -> list[RationalFunction]:
        """``c`` with ``y == sum c_i T_{v_i}``; raises if ``y`` is not in U."""
        if nu is None:
            nu = self._homogeneous_weight(y)
        data = self.form_data(nu)
        yd = [y.coefficient(w) for w in data.dominant]
        m = len(yd)
        inv = data.expansion_inv
        coords = []
        for i in range(m):
            total = RationalFunction(0)
            for j in range(m):
                if yd[j] and inv[j][i]:
                    total = total + inv[j][i] * yd[j]
            coords.append(total)
        rebuilt = Element()
        for c, t in zip(coords, data.basis):
            if c:
                rebuilt = rebuilt + t.scale(c)
        if rebuilt != y:
            raise NotInSubalgebraError("element is not in the subalgebra generated by the letters")
        return coords

    def in_subalgebra(self, y: Element) -> bool:
        if y.is_zero():
            return True
        nu = y.weight(self.datum)
        if nu is None:
            return all(self.in_subalgebra(part) for part in self.homogeneous_parts(y))
        try:
            self.coordinates(y, nu)
        except NotInSubalgebraError:
            return False
        return True

    def homogeneous_parts(self, x: Element) -> list[Element]:
        parts: dict[Weight, dict] = {}
        for w, c in x.items():
            parts.setdefault(self.datum.weight_of_word(w), {})[w] = c
        return [Element(p) for _, p in sorted(parts.items())]

    def dual_vector(self, y: Element) -> Element:
        """A preimage ``f`` with ``sum_v f_v T_v == y`` (so ``(x, y) = <x, f>``)."""
        if y.is_zero():
            return Element()
        coords = self.coordinates(y)
        data = self.form_data(self._homogeneous_weight(y))
        return Element({v: c for v, c in zip(data.basis_words, coords)})

    def bilinear_form(self, x: Element, y: Element, *, check: bool = True) -> RationalFunction:
        """The symmetric form on U; zero between different weights.

        With ``check=False`` the first argument may be any element of F of the
        right weight (the form is then extended linearly through the chosen
        monomial basis); the second must still lie in U.
        """
        if x.is_zero() or y.is_zero():
            return RationalFunction(0)
        total = RationalFunction(0)
        for yp in self.homogeneous_parts(y):
            f = self.dual_vector(yp)
            nu = self._homogeneous_weight(yp)
            xp = Element({w: c for w, c in x.items() if self.datum.weight_of_word(w) == nu})
            if check and not xp.is_zero():
                self.coordinates(xp, nu)
            for v, c in f.items():
                a = xp.coefficient(v)
                if a:
                    total = total + a * c
        if check:
            for xp in self.homogeneous_parts(x):
                self.coordinates(xp)
        return total

    def tensor_form(self, t: TensorElement, y: Element, z: Element) -> RationalFunction:
        """``(t, y⊗z)`` with ``(a⊗b, y⊗z) = (a, y)(b, z)``; ``y, z`` in U."""
        if y.is_zero() or z.is_zero():
            return RationalFunction(0)
        fy, fz = self.dual_vector(y), self.dual_vector(z)
        total = RationalFunction(0)
        for (a, b), c in t.terms.items():
            ca, cb = fy.coefficient(a), fz.coefficient(b)
            if ca and cb:
                total = total + c * ca * cb
        return total

    def gram(self, nu: Weight) -> tuple[list[Word], list[list[RationalFunction]]]:
        """Gram matrix of the form on the monomial basis ``T_{v_i}`` of U_nu."""
        data = self.form_data(nu)
        mat = [[t_j.coefficient(v_i) for t_j in data.basis] for v_i in data.basis_words]
        return data.basis_words, mat


_ALGEBRAS: dict[int, ShuffleAlgebra] = {}


def algebra(n: int) -> ShuffleAlgebra:
    """Shared algebra for rank ``n`` so caches persist across calls."""
    if n not in _ALGEBRAS:
        _ALGEBRAS[n] = ShuffleAlgebra(datum(n))
    return _ALGEBRAS[n]


def _acc(out: dict, key, value) -> None:
    out[key] = out[key] + value if key in out else value
