"""
PBW, dual PBW and dual canonical bases of U, indexed by dominant words.

All per-word constructions go through :class:`BasisEngine`, which caches per
rank.  The module-level functions are thin wrappers over the shared engine.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cartan import Root, RootDatum, Weight
from .scalar import LaurentPoly, RationalFunction, as_rational, super_qfact, super_qint
from .shuffle import Element, ShuffleAlgebra, algebra
from .words import (
    Word,
    _check_dominant,
    canonical_factorize,
    dominant_words,
    format_word,
    iota_plus,
    iota_plus_inverse,
    lyndon_data,
    varsigma,
    xi_and_s,
)

__all__ = [
    "BasisEngine",
    "DualCanonicalBasis",
    "BasisMismatchError",
    "engine",
    "kappa",
    "lattice_check",
    "pbw_lyndon",
    "pbw",
    "pbw_norm",
    "dual_pbw",
    "dual_canonical",
    "top_coefficient",
]

_Q2 = LaurentPoly({2: 1, -2: -1})     # q^2 - q^-2
_TWO_ODD = super_qint(2, 1, 1)        # [2]_n = -q + q^-1


class BasisMismatchError(ArithmeticError):
    """Two independent computations of the same quantity disagree."""


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def root_vector_exponent(dat: RootDatum, root: Root) -> int:
    """Power of ``(q^2 - q^-2)`` in the PBW root vector: word length minus one.

    For ``beta(i, j)`` this is ``2n - i - j + 1``; it is the normalization
    under which norm division returns ``E* = [2]_n * word``.
    """
    return len(iota_plus(dat, root)) - 1


def top_coefficient(dat: RootDatum, w: Word) -> LaurentPoly:
    """``(-1)^xi q^-s prod [n_k]!``: predicted leading coefficient of the
    shuffle product of Lyndon powers along the canonical factorization."""
    xi, s = xi_and_s(dat, w)
    return LaurentPoly.q(-s, _sign(xi)) * varsigma(dat, w)


def kappa(dat: RootDatum, w: Word) -> LaurentPoly:
    """Leading coefficient of ``b*_w``: ``prod kappa_l^m [m]_l!``."""
    out = LaurentPoly(1)
    for f, m in _check_dominant(dat, tuple(w)):
        root = iota_plus_inverse(dat, f)
        parity, half = lyndon_data(dat, f)
        lead = LaurentPoly(1) if root.kind == "alpha" else _TWO_ODD
        out = out * lead ** m * super_qfact(m, parity, half)
    return out


def lattice_check(dat: RootDatum, x: Element) -> bool:
    """True iff each coefficient of word ``i`` lies in ``A * varsigma_i``."""
    for w, c in x.items():
        if not c.is_laurent():
            return False
        if w and c.to_laurent().exact_div(varsigma(dat, w, require_dominant=False)) is None:
            return False
    return True


@dataclass
class DualCanonicalBasis:
    """Dual canonical basis of one weight space.

    ``gamma[i][j]`` is the coefficient of ``E*_j`` in ``b*_i`` (``gamma[i][i] = 1``).
    """

    weight: Weight
    words: list[Word]                         # decreasing lexicographic order
    elements: dict[Word, Element]
    gamma: dict[Word, dict[Word, LaurentPoly]] = field(default_factory=dict)

    def __getitem__(self, w: Word) -> Element:
        return self.elements[tuple(w)]


class BasisEngine:
    def __init__(self, alg: ShuffleAlgebra):
        self.alg = alg
        self.datum = alg.datum
        self._pbw: dict[Word, Element] = {}
        self._dual: dict[tuple[Word, str], Element] = {}
        self._norm: dict[tuple[Word, str], RationalFunction] = {}
        self._canonical: dict[Weight, DualCanonicalBasis] = {}

    # -- PBW ---------------------------------------------------------------
    def pbw_lyndon(self, root: Root) -> Element:
        dat = self.datum
        w = iota_plus(dat, root)
        coeff = as_rational(_Q2 ** root_vector_exponent(dat, root)
                            * LaurentPoly.q(-dat.bigN(root.weight), _sign(root.j - root.i)))
        if root.kind == "beta":
            coeff = coeff / _TWO_ODD
        return Element.word(w, coeff)

    def _divided_power(self, x: Element, lyndon: Word, m: int) -> Element:
        parity, half = lyndon_data(self.datum, lyndon)
        return self.alg.power(x, m) / super_qfact(m, parity, half)

    def pbw(self, w: Word) -> Element:
        w = tuple(w)
        hit = self._pbw.get(w)
        if hit is not None:
            return hit
        fac = _check_dominant(self.datum, w)
        if not fac:
            out = Element.one()
        else:
            # E_{i_d}^{(n_d)} * ... * E_{i_1}^{(n_1)}: smallest factor on the left
            parts = [self._divided_power(self.pbw_lyndon(iota_plus_inverse(self.datum, f)), f, m)
                     for f, m in reversed(fac)]
            out = self.alg.shuffle_many(parts)
        self._pbw[w] = out
        return out

    def pbw_norm(self, w: Word, route: str = "checked") -> RationalFunction:
        """``(E_w, E_w)``; ``route`` is ``direct``, ``product`` or ``checked``."""
        w = tuple(w)
        if route == "checked":
            a = self.pbw_norm(w, "direct")
            b = self.pbw_norm(w, "product")
            if a != b:
                raise BasisMismatchError(f"norm of E_{format_word(w)}: form gives {a}, product formula {b}")
            return a
        key = (w, route)
        hit = self._norm.get(key)
        if hit is not None:
            return hit
        if route == "direct":
            e = self.pbw(w)
            out = self.alg.bilinear_form(e, e, check=False) if w else RationalFunction(1)
        elif route == "product":
            fac = _check_dominant(self.datum, w)
            xi, s = xi_and_s(self.datum, w)
            out = as_rational(LaurentPoly.q(-s, _sign(xi)))
            for f, m in fac:
                parity, half = lyndon_data(self.datum, f)
                out = out * self.pbw_norm(f, "direct") ** m / super_qfact(m, parity, half)
        else:
            raise ValueError(f"unknown route {route!r}")
        self._norm[key] = out
        return out

    # -- dual PBW -------------------------------------------------------------
    def dual_lyndon(self, root: Root) -> Element:
        """Explicit dual root vector: the word, times ``[2]_n`` for beta roots."""
        w = iota_plus(self.datum, root)
        return Element.word(w, 1 if root.kind == "alpha" else _TWO_ODD)

    def dual_pbw(self, w: Word, route: str = "checked") -> Element:
        """``E*_w``; ``route`` is ``norm``, ``product`` or ``checked``."""
        w = tuple(w)
        if route == "checked":
            a = self.dual_pbw(w, "norm")
            b = self.dual_pbw(w, "product")
            if a != b:
                raise BasisMismatchError(f"E*_{format_word(w)}: norm division and product formula disagree")
            return a
        key = (w, route)
        hit = self._dual.get(key)
        if hit is not None:
            return hit
        if route == "norm":
            out = self.pbw(w) / self.pbw_norm(w, "direct")
        elif route == "product":
            fac = _check_dominant(self.datum, w)
            xi, s = xi_and_s(self.datum, w)
            parts = [self.alg.power(self.dual_lyndon(iota_plus_inverse(self.datum, f)), m)
                     for f, m in reversed(fac)]
            out = self.alg.shuffle_many(parts).scale(LaurentPoly.q(s, _sign(xi)))
        else:
            raise ValueError(f"unknown route {route!r}")
        self._dual[key] = out
        return out

    def dual_pbw_basis(self, nu: Weight, route: str = "product") -> dict[Word, Element]:
        return {w: self.dual_pbw(w, route) for w in dominant_words(self.datum, nu)}

    # -- expansion in the dual PBW basis ------------------------------------------
    def expand_dual_pbw(self, y: Element, nu: Weight) -> dict[Word, RationalFunction]:
        """Coordinates of ``y`` in the dual PBW basis, by max-word reduction."""
        basis = self.dual_pbw_basis(nu)
        coords: dict[Word, RationalFunction] = {}
        rest = y
        while rest:
            top, c = rest.max_word()
            if top not in basis:
                raise ArithmeticError(f"max word {format_word(top)} is not dominant; element not in U")
            e = basis[top]
            factor = c / e.coefficient(top)
            coords[top] = factor
            rest = rest - e.scale(factor)
        return coords

    # -- dual canonical basis --------------------------------------------------
    def dual_canonical(self, nu: Weight) -> DualCanonicalBasis:
        hit = self._canonical.get(nu)
        if hit is not None:
            return hit
        words = dominant_words(self.datum, nu)
        basis = self.dual_pbw_basis(nu)
        # r[j][k]: coefficient of E*_k in the coefficient-wise bar of E*_j
        r: dict[Word, dict[Word, RationalFunction]] = {}
        for j in words:
            r[j] = self.expand_dual_pbw(self.alg.coefficient_bar(basis[j]), nu)
            if not r[j].get(j, RationalFunction(0)).is_one():
                raise ArithmeticError(f"bar of E*_{format_word(j)} is not unitriangular")
        gamma: dict[Word, dict[Word, LaurentPoly]] = {}
        elements: dict[Word, Element] = {}
        for pos, i in enumerate(words):
            g: dict[Word, LaurentPoly] = {i: LaurentPoly(1)}
            for k in words[pos + 1:]:
                a = RationalFunction(0)
                for j, gij in g.items():
                    rjk = r[j].get(k)
                    if rjk:
                        a = a + as_rational(gij.bar()) * rjk
                if not a.is_laurent():
                    raise ArithmeticError(f"bar correction for ({format_word(i)}, {format_word(k)}) is not Laurent")
                a = a.to_laurent()
                if a + a.bar() or a.coefficient(0):
                    raise ArithmeticError(f"bar correction for ({format_word(i)}, {format_word(k)}) is not solvable in qZ[q]")
                c = a.positive_part()
                if c:
                    g[k] = c
            b = Element()
            for j, c in g.items():
                b = b + basis[j].scale(c)
            for w, c in b.items():
                if not c.is_laurent() or c.bar() != c:
                    raise ArithmeticError(f"b*_{format_word(i)} has a coefficient that is not a bar-invariant Laurent polynomial")
            gamma[i] = g
            elements[i] = b
        out = DualCanonicalBasis(nu, words, elements, gamma)
        self._canonical[nu] = out
        return out


_ENGINES: dict[int, BasisEngine] = {}


def engine(n: int) -> BasisEngine:
    if n not in _ENGINES:
        _ENGINES[n] = BasisEngine(algebra(n))
    return _ENGINES[n]


def pbw_lyndon(dat: RootDatum, root: Root) -> Element:
    return engine(dat.n).pbw_lyndon(root)


def pbw(dat: RootDatum, w: Word) -> Element:
    return engine(dat.n).pbw(w)


def pbw_norm(dat: RootDatum, w: Word, route: str = "checked") -> RationalFunction:
    return engine(dat.n).pbw_norm(w, route)


def dual_pbw(dat: RootDatum, w: Word, route: str = "checked") -> Element:
    return engine(dat.n).dual_pbw(w, route)


def dual_canonical(dat: RootDatum, nu: Weight) -> DualCanonicalBasis:
    return engine(dat.n).dual_canonical(nu)
