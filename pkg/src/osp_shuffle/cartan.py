"""Root datum of osp(1|2n): Cartan matrix, symmetrizer, parity, the form on Q."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

__all__ = ["RootDatum", "Weight", "Root", "datum"]


@dataclass(frozen=True)
class RootDatum:
    """Rank ``n`` datum: tridiagonal Cartan matrix with ``a[n-1][n-2] = -2``.

    Indices in the public API are 1-based letters ``1..n``; only ``n`` is odd.
    """

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("rank must be at least 1")

    @cached_property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        n = self.n
        a = [[0] * n for _ in range(n)]
        for i in range(n):
            a[i][i] = 2
            if i + 1 < n:
                a[i][i + 1] = -1
                a[i + 1][i] = -1
        if n >= 2:
            a[n - 1][n - 2] = -2
        return tuple(tuple(row) for row in a)

    @cached_property
    def symmetrizer(self) -> tuple[int, ...]:
        return tuple([2] * (self.n - 1) + [1])

    @cached_property
    def form(self) -> tuple[tuple[int, ...], ...]:
        """B = DA, so ``form[i-1][j-1] == (alpha_i, alpha_j)``."""
        d, a = self.symmetrizer, self.cartan
        return tuple(tuple(d[i] * a[i][j] for j in range(self.n)) for i in range(self.n))

    def parity(self, i: int) -> int:
        self._check_letter(i)
        return 1 if i == self.n else 0

    def s(self, i: int) -> int:
        return self.symmetrizer[i - 1]

    def b(self, i: int, j: int) -> int:
        return self.form[i - 1][j - 1]

    def adjacent(self, i: int, j: int) -> bool:
        return i != j and self.cartan[i - 1][j - 1] != 0

    def _check_letter(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise ValueError(f"letter {i} outside 1..{self.n}")

    # -- weights -------------------------------------------------------------
    def simple(self, i: int) -> Weight:
        self._check_letter(i)
        c = [0] * self.n
        c[i - 1] = 1
        return Weight(tuple(c))

    def zero(self) -> Weight:
        return Weight((0,) * self.n)

    def weight(self, coeffs: Sequence[int]) -> Weight:
        if len(coeffs) != self.n:
            raise ValueError(f"weight {list(coeffs)} has length {len(coeffs)}, rank is {self.n}")
        return Weight(tuple(int(c) for c in coeffs))

    def weight_of_word(self, word: Iterable[int]) -> Weight:
        c = [0] * self.n
        for i in word:
            self._check_letter(i)
            c[i - 1] += 1
        return Weight(tuple(c))

    def bilinear(self, mu: Weight, nu: Weight) -> int:
        if len(mu) != self.n or len(nu) != self.n:
            raise ValueError("rank mismatch")
        b = self.form
        total = 0
        for i, ci in enumerate(mu.coeffs):
            if ci:
                row = b[i]
                for j, dj in enumerate(nu.coeffs):
                    if dj:
                        total += ci * dj * row[j]
        return total

    def weight_parity(self, nu: Weight) -> int:
        """Odd-letter count of ``nu`` as an integer (not reduced mod 2)."""
        return nu.coeffs[self.n - 1]

    def bigN(self, nu: Weight) -> int:
        diag = sum(c * self.form[i][i] for i, c in enumerate(nu.coeffs))
        twice = self.bilinear(nu, nu) - diag
        return twice // 2

    def bigP(self, nu: Weight) -> int:
        p = self.weight_parity(nu)
        return (p * p - p) // 2

    # -- roots -----------------------------------------------------------------
    def alpha(self, i: int, j: int) -> Root:
        if not 1 <= i <= j <= self.n:
            raise ValueError(f"alpha({i},{j}) needs 1 <= i <= j <= {self.n}")
        c = [0] * self.n
        for r in range(i, j + 1):
            c[r - 1] = 1
        return Root("alpha", i, j, Weight(tuple(c)))

    def beta(self, i: int, j: int) -> Root:
        if not 1 <= i < j <= self.n:
            raise ValueError(f"beta({i},{j}) needs 1 <= i < j <= {self.n}")
        c = [0] * self.n
        for r in range(i, j):
            c[r - 1] = 1
        for r in range(j, self.n + 1):
            c[r - 1] = 2
        return Root("beta", i, j, Weight(tuple(c)))

    def root(self, kind: str, i: int, j: int) -> Root:
        if kind == "alpha":
            return self.alpha(i, j)
        if kind == "beta":
            return self.beta(i, j)
        raise ValueError(f"unknown root kind {kind!r}")

    @cached_property
    def _reduced(self) -> tuple[Root, ...]:
        n = self.n
        alphas = [self.alpha(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
        betas = [self.beta(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        return tuple(alphas + betas)

    def reduced_positive_roots(self) -> list[Root]:
        """Alphas ordered by (i, j), then betas ordered by (i, j)."""
        return list(self._reduced)

    def full_positive_roots(self) -> dict[str, list[Weight]]:
        """Positive roots with their parity split.

        Keys: ``all``, ``even``, ``odd`` for the full system and
        ``reduced``, ``reduced_even``, ``reduced_odd`` for the reduced one.
        Doubled odd roots are listed after the reduced roots.
        """
        reduced = [r.weight for r in self._reduced]
        odd = [w for w in reduced if self.weight_parity(w) % 2]
        doubled = [w.scale(2) for w in odd]
        full = reduced + doubled
        return {
            "all": full,
            "even": [w for w in full if self.weight_parity(w) % 2 == 0],
            "odd": [w for w in full if self.weight_parity(w) % 2],
            "reduced": reduced,
            "reduced_even": [w for w in reduced if self.weight_parity(w) % 2 == 0],
            "reduced_odd": odd,
        }


@dataclass(frozen=True, order=True)
class Weight:
    """``sum c_i alpha_i`` in Q+, as the coefficient vector."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if any(c < 0 for c in self.coeffs):
            raise ValueError(f"negative coefficient in weight {list(self.coeffs)}")

    def __len__(self):
        return len(self.coeffs)

    @property
    def height(self) -> int:
        return sum(self.coeffs)

    def __add__(self, other: Weight) -> Weight:
        if len(other) != len(self):
            raise ValueError("rank mismatch")
        return Weight(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: Weight) -> Weight:
        return Weight(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def covers(self, other: Weight) -> bool:
        return all(a >= b for a, b in zip(self.coeffs, other.coeffs))

    def scale(self, m: int) -> Weight:
        return Weight(tuple(m * c for c in self.coeffs))

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs, start=1):
            if c:
                terms.append(f"a{i}" if c == 1 else f"{c}a{i}")
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class Root:
    kind: str
    i: int
    j: int
    weight: Weight = field(compare=False)

    def to_json(self) -> dict:
        return {"kind": self.kind, "i": self.i, "j": self.j}

    def __str__(self):
        return f"{self.kind}({self.i},{self.j})"


_CACHE: dict[int, RootDatum] = {}


def datum(n: int) -> RootDatum:
    """Shared datum for rank ``n`` (keeps per-rank caches warm)."""
    if n not in _CACHE:
        _CACHE[n] = RootDatum(n)
    return _CACHE[n]
