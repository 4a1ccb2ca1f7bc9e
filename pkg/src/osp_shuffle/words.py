"""
Combinatorics of words over I = {1, ..., n} ordered by 1 < 2 < ... < n.

Words are plain tuples of ints.  Python's tuple ordering is exactly the
lexicographic order used throughout (a proper prefix is smaller).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from .cartan import Root, RootDatum, Weight
from .scalar import LaurentPoly, super_qfact

Word = tuple[int, ...]

__all__ = [
    "Word",
    "canonical_factorize",
    "dominant_lyndon_words",
    "dominant_words",
    "format_word",
    "iota_plus",
    "iota_plus_inverse",
    "is_dominant",
    "is_lyndon",
    "kostant_partitions",
    "lex_compare",
    "lyndon_data",
    "parse_word",
    "varsigma",
    "words_of_weight",
    "xi_and_s",
]


def parse_word(text: str) -> Word:
    """Parse ``(i1,...,id)``; whitespace is ignored, ``()`` is the empty word."""
    s = "".join(text.split())
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError(f"word must look like (i1,...,id), got {text!r}")
    body = s[1:-1]
    if not body:
        return ()
    try:
        return tuple(int(tok) for tok in body.split(","))
    except ValueError:
        raise ValueError(f"bad letter in word {text!r}") from None


def format_word(w: Sequence[int]) -> str:
    return "(" + ",".join(str(i) for i in w) + ")"


def lex_compare(a: Sequence[int], b: Sequence[int]) -> int:
    a, b = tuple(a), tuple(b)
    return (a > b) - (a < b)


def is_lyndon(w: Sequence[int]) -> bool:
    w = tuple(w)
    if not w:
        raise ValueError("the empty word is not Lyndon")
    return all(w < w[k:] for k in range(1, len(w)))


def _duval(w: Word) -> list[Word]:
    factors: list[Word] = []
    n = len(w)
    i = 0
    while i < n:
        j, k = i + 1, i
        while j < n and w[k] <= w[j]:
            k = i if w[k] < w[j] else k + 1
            j += 1
        while i <= k:
            factors.append(w[i:i + j - k])
            i += j - k
    return factors


def canonical_factorize(w: Sequence[int]) -> list[tuple[Word, int]]:
    """Non-increasing Lyndon factorization grouped as ``[(factor, mult), ...]``."""
    w = tuple(w)
    if not w:
        raise ValueError("cannot factorize the empty word")
    grouped: list[tuple[Word, int]] = []
    for f in _duval(w):
        if grouped and grouped[-1][0] == f:
            grouped[-1] = (f, grouped[-1][1] + 1)
        else:
            grouped.append((f, 1))
    return grouped


# ---------------------------------------------------------------------------
# dominant Lyndon words and the root bijection
# ---------------------------------------------------------------------------

def iota_plus(dat: RootDatum, root: Root) -> Word:
    n = dat.n
    if root.kind == "alpha":
        return tuple(range(root.i, root.j + 1))
    if root.kind == "beta":
        return tuple(range(root.i, n + 1)) + tuple(range(n, root.j - 1, -1))
    raise ValueError(f"unknown root kind {root.kind!r}")


@lru_cache(maxsize=None)
def _lyndon_table(dat: RootDatum) -> dict[Word, Root]:
    return {iota_plus(dat, r): r for r in dat.reduced_positive_roots()}


def dominant_lyndon_words(dat: RootDatum) -> list[Word]:
    """Dominant Lyndon words in the order of ``reduced_positive_roots``."""
    return list(_lyndon_table(dat))


def iota_plus_inverse(dat: RootDatum, w: Sequence[int]) -> Root:
    w = tuple(w)
    try:
        return _lyndon_table(dat)[w]
    except KeyError:
        raise ValueError(f"{format_word(w)} is not a dominant Lyndon word for n={dat.n}") from None


def is_dominant(dat: RootDatum, w: Sequence[int]) -> bool:
    w = tuple(w)
    if not w:
        return True
    table = _lyndon_table(dat)
    return all(f in table for f, _ in canonical_factorize(w))


def _check_dominant(dat: RootDatum, w: Word) -> list[tuple[Word, int]]:
    if not w:
        return []
    fac = canonical_factorize(w)
    table = _lyndon_table(dat)
    for f, _ in fac:
        if f not in table:
            raise ValueError(f"{format_word(w)} is not dominant (factor {format_word(f)})")
    return fac


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def words_of_weight(dat: RootDatum, nu: Weight) -> list[Word]:
    """All words of weight ``nu`` in increasing lexicographic order."""
    return list(_words_of_weight(nu.coeffs))


@lru_cache(maxsize=256)
def _words_of_weight(coeffs: tuple[int, ...]) -> tuple[Word, ...]:
    out: list[Word] = []
    counts = list(coeffs)
    total = sum(counts)
    buf: list[int] = []

    def rec():
        if len(buf) == total:
            out.append(tuple(buf))
            return
        for i, c in enumerate(counts):
            if c:
                counts[i] -= 1
                buf.append(i + 1)
                rec()
                buf.pop()
                counts[i] += 1

    rec()
    return tuple(out)


def kostant_partitions(dat: RootDatum, nu: Weight) -> list[tuple[Root, ...]]:
    """Multisets of reduced positive roots summing to ``nu``.

    Each multiset is listed in decreasing order of the roots' Lyndon words.
    """
    roots = sorted(dat.reduced_positive_roots(), key=lambda r: iota_plus(dat, r), reverse=True)
    weights = [r.weight for r in roots]

    @lru_cache(maxsize=None)
    def rec(rest: Weight, start: int) -> tuple[tuple[int, ...], ...]:
        if rest.height == 0:
            return ((),)
        found = []
        for k in range(start, len(roots)):
            if rest.covers(weights[k]):
                for tail in rec(rest - weights[k], k):
                    found.append((k,) + tail)
        return tuple(found)

    return [tuple(roots[k] for k in part) for part in rec(nu, 0)]


def dominant_words(dat: RootDatum, nu: Weight, method: str = "partition") -> list[Word]:
    """Dominant words of weight ``nu`` in decreasing lexicographic order.

    ``method="partition"`` concatenates the Lyndon words of each root
    partition in decreasing order; ``method="filter"`` tests every word of
    weight ``nu`` for dominance.  The two are independent and must agree.
    """
    if method == "partition":
        out = [sum((iota_plus(dat, r) for r in part), ()) for part in kostant_partitions(dat, nu)]
    elif method == "filter":
        out = [w for w in words_of_weight(dat, nu) if is_dominant(dat, w)]
    else:
        raise ValueError(f"unknown method {method!r}")
    return sorted(out, reverse=True)


# ---------------------------------------------------------------------------
# statistics of canonical factorizations
# ---------------------------------------------------------------------------

def lyndon_data(dat: RootDatum, w: Sequence[int]) -> tuple[int, int]:
    """``(parity, s)`` of a word, with ``q_w = q^s`` and ``s = (|w|,|w|)/2``."""
    nu = dat.weight_of_word(w)
    return dat.weight_parity(nu) % 2, dat.bilinear(nu, nu) // 2


def xi_and_s(dat: RootDatum, w: Sequence[int]) -> tuple[int, int]:
    xi = s = 0
    for f, m in _check_dominant(dat, tuple(w)):
        parity, half = lyndon_data(dat, f)
        xi += parity * m * (m - 1) // 2
        s += 2 * half * m * (m - 1) // 4
    return xi, s


def varsigma(dat: RootDatum, w: Sequence[int], require_dominant: bool = True) -> LaurentPoly:
    """Product of super quantum factorials over the canonical factorization."""
    w = tuple(w)
    fac = _check_dominant(dat, w) if require_dominant else (canonical_factorize(w) if w else [])
    out = LaurentPoly(1)
    for f, m in fac:
        parity, half = lyndon_data(dat, f)
        out = out * super_qfact(m, parity, half)
    return out


def all_words(n: int, max_len: int, min_len: int = 0) -> Iterable[Word]:
    from itertools import product

    for length in range(min_len, max_len + 1):
        yield from product(range(1, n + 1), repeat=length)
