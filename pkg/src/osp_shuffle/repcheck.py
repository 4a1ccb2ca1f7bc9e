"""
Finite-dimensional graded super-modules over spin quiver Hecke algebras.

A module is a list of basis vectors, each carrying a degree, a parity and the
word ``i`` of the idempotent ``e(i)`` it lives under, together with exact
matrices for ``y_1..y_d`` and ``tau_1..tau_(d-1)``.  Matrices act on column
vectors: column ``b`` of ``M`` is the image of basis vector ``b``.  The
idempotents are the coordinate projections onto blocks.

The relation verifier checks every defining relation block by block as an
exact matrix identity and reports the first failing basis vector for each
violated instance.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .cartan import Root, RootDatum, Weight, datum
from .scalar import LaurentPoly
from .shuffle import Element, algebra
from .words import Word, _check_dominant, format_word, iota_plus, iota_plus_inverse, xi_and_s

__all__ = [
    "QuiverData",
    "QPolynomial",
    "BasisVector",
    "GradedSuperModule",
    "Violation",
    "RelationReport",
    "q_polynomial",
    "cuspidal_module",
    "verify_relations",
    "character",
    "induced_character",
    "standard_character",
    "power_character",
    "highest_weight",
    "load_module",
    "dump_module",
]


# ---------------------------------------------------------------------------
# quiver data and Q polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuiverData:
    """Arrow-orbit counts ``d[(i, j)]`` for ``i != j``; missing pairs count 0."""

    datum: RootDatum
    d: Mapping[tuple[int, int], int]

    def __post_init__(self):
        n = self.datum.n
        for (i, j), v in self.d.items():
            if i == j or not (1 <= i <= n and 1 <= j <= n) or v < 0:
                raise ValueError(f"bad arrow count d[{i},{j}] = {v}")
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                dij, dji = self.arrows(i, j), self.arrows(j, i)
                if self.datum.adjacent(i, j) and dij + dji != 1:
                    raise ValueError(f"adjacent pair ({i},{j}) needs d_ij + d_ji = 1")
                if not self.datum.adjacent(i, j) and (dij or dji):
                    raise ValueError(f"non-adjacent pair ({i},{j}) must have no arrows")

    @classmethod
    def oriented(cls, dat: RootDatum, orientation: str = "up") -> QuiverData:
        """``up``: arrows ``i -> i+1``; ``down``: arrows ``i+1 -> i``."""
        if orientation not in ("up", "down"):
            raise ValueError(f"orientation must be 'up' or 'down', got {orientation!r}")
        d = {}
        for i in range(1, dat.n):
            d[(i, i + 1) if orientation == "up" else (i + 1, i)] = 1
        return cls(dat, d)

    def arrows(self, i: int, j: int) -> int:
        return self.d.get((i, j), 0)


@dataclass(frozen=True)
class QPolynomial:
    """``sign * (u^u_exp - v^v_exp)``, or zero when ``sign == 0``."""

    sign: int
    u_exp: int
    v_exp: int
    adjacent: bool = True

    def is_zero(self) -> bool:
        return self.sign == 0

    def evaluate(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        if self.sign == 0:
            return _zeros(u.shape[0])
        return self.sign * (_mpow(u, self.u_exp) - _mpow(v, self.v_exp))

    def divided_difference_u(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """``(Q(a, v) - Q(b, v)) / (a - b)`` for commuting ``a, b``, as a
        matrix polynomial ``sign * sum a^k b^(m-1-k)``."""
        size = a.shape[0]
        if self.sign == 0:
            return _zeros(size)
        out = _zeros(size)
        for k in range(self.u_exp):
            out = out + _mpow(a, k) @ _mpow(b, self.u_exp - 1 - k)
        return self.sign * out

    def __str__(self):
        if self.sign == 0:
            return "0"
        u = "u" if self.u_exp == 1 else f"u^{self.u_exp}"
        v = "v" if self.v_exp == 1 else f"v^{self.v_exp}"
        return f"({u} - {v})" if self.sign > 0 else f"-({u} - {v})"


def q_polynomial(quiver: QuiverData, i: int, j: int) -> QPolynomial:
    dat = quiver.datum
    if i == j:
        return QPolynomial(0, 0, 0)
    sign = -1 if quiver.arrows(i, j) % 2 else 1
    return QPolynomial(sign, 2 // dat.s(i), 2 // dat.s(j), dat.adjacent(i, j))


# ---------------------------------------------------------------------------
# modules
# ---------------------------------------------------------------------------

def _zeros(size: int) -> np.ndarray:
    m = np.empty((size, size), dtype=object)
    m.fill(Fraction(0))
    return m


def _identity(size: int) -> np.ndarray:
    m = _zeros(size)
    for k in range(size):
        m[k, k] = Fraction(1)
    return m


def _mpow(m: np.ndarray, e: int) -> np.ndarray:
    out = _identity(m.shape[0])
    for _ in range(e):
        out = out @ m
    return out


def _as_matrix(rows, size: int) -> np.ndarray:
    m = np.array(rows, dtype=object).reshape(size, size) if size else _zeros(0)
    return np.vectorize(Fraction, otypes=[object])(m) if size else m


@dataclass(frozen=True)
class BasisVector:
    label: str
    degree: int
    parity: int
    block: Word


@dataclass
class GradedSuperModule:
    n: int
    nu: Weight
    basis: list[BasisVector]
    y: list[np.ndarray]
    tau: list[np.ndarray]

    def __post_init__(self):
        size = len(self.basis)
        d = self.nu.height
        if len(self.y) != d or len(self.tau) != max(d - 1, 0):
            raise ValueError(f"need {d} y-matrices and {max(d - 1, 0)} tau-matrices, "
                             f"got {len(self.y)} and {len(self.tau)}")
        self.y = [_as_matrix(m, size) for m in self.y]
        self.tau = [_as_matrix(m, size) for m in self.tau]
        for m in self.y + self.tau:
            if m.shape != (size, size):
                raise ValueError(f"matrix of shape {m.shape} does not match dimension {size}")
        for b in self.basis:
            if len(b.block) != d:
                raise ValueError(f"block {format_word(b.block)} has length {len(b.block)}, expected {d}")

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def height(self) -> int:
        return self.nu.height

    def datum(self) -> RootDatum:
        return datum(self.n)

    def blocks(self) -> list[Word]:
        return sorted({b.block for b in self.basis}, reverse=True)

    def idempotent(self, block: Word) -> np.ndarray:
        m = _zeros(self.dimension)
        for k, b in enumerate(self.basis):
            if b.block == block:
                m[k, k] = Fraction(1)
        return m

    def with_tau_entry(self, r: int, row: int, col: int, value) -> GradedSuperModule:
        """Copy with ``tau_r[row, col]`` replaced (1-based ``r``, 0-based indices)."""
        tau = [m.copy() for m in self.tau]
        tau[r - 1][row, col] = Fraction(value)
        return GradedSuperModule(self.n, self.nu, list(self.basis), [m.copy() for m in self.y], tau)

    def index(self, label: str) -> int:
        for k, b in enumerate(self.basis):
            if b.label == label:
                return k
        raise KeyError(label)


def zero_module(n: int, nu: Weight) -> GradedSuperModule:
    d = nu.height
    return GradedSuperModule(n, nu, [], [_zeros(0)] * d, [_zeros(0)] * max(d - 1, 0))


def cuspidal_module(dat: RootDatum, root: Root) -> GradedSuperModule:
    """The cuspidal module of a reduced positive root.

    ``alpha(i, j)`` gives the trivial one-dimensional module on the word
    ``(i..j)``.  ``beta(i, j)`` gives the two-dimensional module on
    ``(i..n, n..j)`` spanned by ``v1`` (degree 1, odd) and ``v-1`` (degree -1,
    even), where the two ``y``'s on the doubled letter send ``v-1`` to ``v1``
    and the ``tau`` between them sends ``v1`` to ``v-1``.
    """
    word = iota_plus(dat, root)
    d = len(word)
    if root.kind == "alpha":
        basis = [BasisVector("v", 0, 0, word)]
        return GradedSuperModule(dat.n, root.weight, basis, [_zeros(1) for _ in range(d)],
                                 [_zeros(1) for _ in range(d - 1)])
    basis = [BasisVector("v1", 1, 1, word), BasisVector("v-1", -1, 0, word)]
    y = [_zeros(2) for _ in range(d)]
    tau = [_zeros(2) for _ in range(d - 1)]
    r = dat.n - root.i + 1            # 1-based position of the first n
    y[r - 1][0, 1] = Fraction(1)
    y[r][0, 1] = Fraction(1)
    tau[r - 1][1, 0] = Fraction(1)
    return GradedSuperModule(dat.n, root.weight, basis, y, tau)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    relation: str                 # "1".."10" or "homogeneity"
    block: Word | None
    indices: tuple[int, ...]
    witness: str | None           # label of a basis vector exposing the failure
    detail: str

    def __str__(self):
        where = f" on e{format_word(self.block)}" if self.block is not None else ""
        idx = f" at {self.indices}" if self.indices else ""
        wit = f" (witness {self.witness})" if self.witness is not None else ""
        return f"relation {self.relation}{idx}{where}{wit}: {self.detail}"


@dataclass
class RelationReport:
    violations: list[Violation] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def relations_violated(self) -> set[str]:
        return {v.relation for v in self.violations}

    def __str__(self):
        lines = [f"{'PASS' if self.ok else 'FAIL'}: {self.checked} relation instances checked, "
                 f"{len(self.violations)} violated"]
        lines += [f"  {v}" for v in self.violations]
        lines += [f"  warning: {w}" for w in self.warnings]
        return "\n".join(lines)


class _Checker:
    def __init__(self, m: GradedSuperModule, quiver: QuiverData):
        self.m = m
        self.quiver = quiver
        self.dat = quiver.datum
        self.report = RelationReport()
        self.size = m.dimension

    def expect(self, relation: str, block: Word | None, indices: tuple[int, ...],
               lhs: np.ndarray, rhs: np.ndarray, detail: str) -> None:
        self.report.checked += 1
        diff = lhs - rhs
        for col in range(self.size):
            if any(x != 0 for x in diff[:, col]):
                self.report.violations.append(
                    Violation(relation, block, indices, self.m.basis[col].label, detail))
                return

    def q_eval(self, i: int, j: int, u: np.ndarray, v: np.ndarray, where: str) -> np.ndarray:
        qp = q_polynomial(self.quiver, i, j)
        self._warn_nonadjacent(qp, i, j, where)
        return qp.evaluate(u, v)

    def _warn_nonadjacent(self, qp: QPolynomial, i: int, j: int, where: str) -> None:
        if not qp.is_zero() and not qp.adjacent:
            msg = f"Q_{{{i},{j}}} evaluated for non-adjacent letters in {where}; used the verbatim formula {qp}"
            if msg not in self.report.warnings:
                self.report.warnings.append(msg)

    def run(self) -> RelationReport:
        m, dat = self.m, self.dat
        d = m.height
        p = dat.parity
        y, tau = m.y, m.tau
        size = self.size
        blocks = m.blocks()
        E = {b: m.idempotent(b) for b in blocks}

        # (1) idempotents: orthogonal projections summing to 1, blocks in I^nu
        for b in blocks:
            if dat.weight_of_word(b) != m.nu:
                self.report.violations.append(Violation("1", b, (), None, "block word has the wrong weight"))
        total = _zeros(size)
        for b in blocks:
            total = total + E[b]
            for c in blocks:
                self.expect("1", b, (), E[b] @ E[c], E[b] if b == c else _zeros(size),
                            f"e(i)e(j) = delta e(i) with j = {format_word(c)}")
        self.expect("1", None, (), total, _identity(size), "sum of idempotents is 1")

        for b in blocks:
            e = E[b]
            # (2), (3)
            for r in range(1, d + 1):
                self.expect("2", b, (r,), y[r - 1] @ e, e @ y[r - 1], "y_r e(i) = e(i) y_r")
            for r in range(1, d):
                sb = b[:r - 1] + (b[r], b[r - 1]) + b[r + 1:]
                es = E.get(sb, _zeros(size))
                self.expect("3", b, (r,), tau[r - 1] @ e, es @ tau[r - 1], "tau_r e(i) = e(s_r i) tau_r")
            # (4)
            for r in range(1, d + 1):
                for s in range(1, d + 1):
                    if r != s:
                        sign = -1 if p(b[r - 1]) * p(b[s - 1]) else 1
                        self.expect("4", b, (r, s), y[r - 1] @ y[s - 1] @ e,
                                    sign * (y[s - 1] @ y[r - 1] @ e), "y_r y_s super-commute")
            # (5)
            for r in range(1, d):
                for s in range(1, d + 1):
                    if s not in (r, r + 1):
                        sign = -1 if p(b[r - 1]) * p(b[r]) * p(b[s - 1]) else 1
                        self.expect("5", b, (r, s), tau[r - 1] @ y[s - 1] @ e,
                                    sign * (y[s - 1] @ tau[r - 1] @ e), "tau_r y_s super-commute")
            # (6)
            for r in range(1, d):
                for s in range(1, d):
                    if abs(r - s) > 1:
                        sign = -1 if p(b[r - 1]) * p(b[r]) * p(b[s - 1]) * p(b[s]) else 1
                        self.expect("6", b, (r, s), tau[r - 1] @ tau[s - 1] @ e,
                                    sign * (tau[s - 1] @ tau[r - 1] @ e), "tau_r tau_s super-commute")
            for r in range(1, d):
                ir, ir1 = b[r - 1], b[r]
                sign = -1 if p(ir) * p(ir1) else 1
                delta = e if ir == ir1 else _zeros(size)
                # (7), (8)
                self.expect("7", b, (r,), tau[r - 1] @ y[r] @ e,
                            sign * (y[r - 1] @ tau[r - 1] @ e) + delta, "tau_r y_(r+1)")
                self.expect("8", b, (r,), y[r] @ tau[r - 1] @ e,
                            sign * (tau[r - 1] @ y[r - 1] @ e) + delta, "y_(r+1) tau_r")
                # (9)
                qv = self.q_eval(ir, ir1, y[r - 1], y[r], f"relation 9 (r={r})")
                self.expect("9", b, (r,), tau[r - 1] @ tau[r - 1] @ e, qv @ e, "tau_r^2 = Q(y_r, y_(r+1))")
            # (10)
            for r in range(1, d - 1):
                lhs = (tau[r - 1] @ tau[r] @ tau[r - 1] - tau[r] @ tau[r - 1] @ tau[r]) @ e
                self.expect("10", b, (r,), lhs, self._braid_rhs(b, r) @ e, "braid deviation")

        self._homogeneity()
        return self.report

    def _braid_rhs(self, b: Word, r: int) -> np.ndarray:
        size = self.size
        ir, ir1, ir2 = b[r - 1], b[r], b[r + 1]
        if ir != ir2:
            return _zeros(size)
        qp = q_polynomial(self.quiver, ir, ir1)
        self._warn_nonadjacent(qp, ir, ir1, f"relation 10 (r={r})")
        y_r, y_r2 = self.m.y[r - 1], self.m.y[r + 1]
        if ir != self.dat.n:
            return qp.divided_difference_u(y_r2, y_r)
        if qp.is_zero():
            return _zeros(size)
        # Q(u, v) is sign * (u^2 - v^b): the quotient by (u^2 - w^2) is the sign
        sign = -1 if self.dat.parity(ir1) else 1
        return (sign * qp.sign) * (y_r2 - y_r)

    def _homogeneity(self) -> None:
        m, dat = self.m, self.dat
        basis = m.basis
        for r, mat in enumerate(m.y, start=1):
            for a in range(self.size):
                for c in range(self.size):
                    if mat[a, c] == 0:
                        continue
                    src, dst = basis[c], basis[a]
                    i = src.block[r - 1]
                    ok = (dst.block == src.block
                          and dst.degree == src.degree + dat.b(i, i)
                          and dst.parity % 2 == (src.parity + dat.parity(i)) % 2)
                    self.report.checked += 1
                    if not ok:
                        self.report.violations.append(Violation(
                            "homogeneity", src.block, (r,), src.label,
                            f"y_{r} sends {src.label} to {dst.label} with the wrong block, degree or parity"))
        for r, mat in enumerate(m.tau, start=1):
            for a in range(self.size):
                for c in range(self.size):
                    if mat[a, c] == 0:
                        continue
                    src, dst = basis[c], basis[a]
                    i, j = src.block[r - 1], src.block[r]
                    swapped = src.block[:r - 1] + (j, i) + src.block[r + 1:]
                    ok = (dst.block == swapped
                          and dst.degree == src.degree - dat.b(i, j)
                          and dst.parity % 2 == (src.parity + dat.parity(i) * dat.parity(j)) % 2)
                    self.report.checked += 1
                    if not ok:
                        self.report.violations.append(Violation(
                            "homogeneity", src.block, (r,), src.label,
                            f"tau_{r} sends {src.label} to {dst.label} with the wrong block, degree or parity"))


def verify_relations(m: GradedSuperModule, quiver: QuiverData | None = None) -> RelationReport:
    quiver = quiver or QuiverData.oriented(m.datum())
    if quiver.datum.n != m.n:
        raise ValueError("quiver and module have different ranks")
    report = _Checker(m, quiver).run()
    for w in report.warnings:
        warnings.warn(w, stacklevel=2)
    return report


# ---------------------------------------------------------------------------
# characters
# ---------------------------------------------------------------------------

def character(m: GradedSuperModule) -> Element:
    """Signed graded dimension of each block, as a combination of words."""
    acc: dict[Word, LaurentPoly] = {}
    for b in m.basis:
        term = LaurentPoly.q(b.degree, -1 if b.parity % 2 else 1)
        acc[b.block] = acc[b.block] + term if b.block in acc else term
    return Element(acc)


def induced_character(n: int, ch_m: Element, ch_n: Element) -> Element:
    """Character of the induced module ``M o N``: ``ch(N) * ch(M)``."""
    return algebra(n).shuffle(ch_n, ch_m)


def power_character(dat: RootDatum, root: Root, m: int) -> Element:
    """Character of the ``m``-fold induction of the cuspidal module of ``root``."""
    ch = character(cuspidal_module(dat, root))
    out = Element.one()
    for _ in range(m):
        out = induced_character(dat.n, out, ch)
    return out


def standard_character(dat: RootDatum, w: Word) -> Element:
    """Character of the standard module of a dominant word.

    The module is the induction of cuspidal powers along the canonical
    factorization, shifted in parity by ``xi(w)`` and in degree by ``s(w)``.
    """
    fac = _check_dominant(dat, tuple(w))
    ch = Element.one()
    for f, m in fac:
        ch = induced_character(dat.n, ch, power_character(dat, iota_plus_inverse(dat, f), m))
    xi, s = xi_and_s(dat, w)
    return ch.scale(LaurentPoly.q(s, -1 if xi % 2 else 1))


def highest_weight(ch: Element) -> Word:
    if ch.is_zero():
        raise ValueError("the zero character has no highest weight")
    return ch.max_word()[0]


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def _matrix_to_json(mat: np.ndarray) -> list[list[str]]:
    return [[str(Fraction(x)) for x in row] for row in mat]


def dump_module(m: GradedSuperModule) -> dict:
    return {
        "n": m.n,
        "nu": m.nu.to_json(),
        "basis": [{"label": b.label, "deg": b.degree, "parity": b.parity, "block": list(b.block)}
                  for b in m.basis],
        "y": [_matrix_to_json(x) for x in m.y],
        "tau": [_matrix_to_json(x) for x in m.tau],
    }


def load_module(payload: Mapping | str) -> GradedSuperModule:
    """Build a module from its JSON form; raises ValueError on malformed input."""
    if isinstance(payload, str):
        payload = json.loads(payload)
    try:
        n = int(payload["n"])
        dat = datum(n)
        nu = dat.weight(payload["nu"])
        basis = [BasisVector(str(b["label"]), int(b["deg"]), int(b["parity"]) % 2,
                             tuple(int(i) for i in b["block"])) for b in payload["basis"]]
        size = len(basis)

        def mat(rows):
            if len(rows) != size or any(len(row) != size for row in rows):
                raise ValueError(f"matrix is not {size}x{size}")
            return [[Fraction(str(x)) for x in row] for row in rows]

        y = [mat(rows) for rows in payload["y"]]
        tau = [mat(rows) for rows in payload["tau"]]
    except (KeyError, TypeError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed module file: {exc!r}") from None
    for b in basis:
        for i in b.block:
            if not 1 <= i <= n:
                raise ValueError(f"letter {i} in block {format_word(b.block)} outside 1..{n}")
    return GradedSuperModule(n, nu, basis, y, tau)
