"""Command-line interface: ``osp-shuffle <command> [options]``.

Exit codes: 0 success, 1 mathematical failure, 2 malformed input.
Set ``OSP_SHUFFLE_CACHE_DIR`` to memoize command output on disk.
"""

from __future__ import annotations

import argparse
import hashlib
import itertools
import json
import os
import re
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from . import __version__
from .bases import BasisMismatchError, engine, kappa, top_coefficient
from .cartan import Root, RootDatum, Weight, datum
from .linalg import determinant
from .repcheck import (
    QuiverData,
    character,
    cuspidal_module,
    dump_module,
    highest_weight,
    load_module,
    standard_character,
    verify_relations,
)
from .scalar import RationalFunction
from .shuffle import Element, algebra
from .words import (
    canonical_factorize,
    dominant_lyndon_words,
    dominant_words,
    format_word,
    iota_plus,
    iota_plus_inverse,
    is_dominant,
    parse_word,
    varsigma,
)

CACHE_ENV = "OSP_SHUFFLE_CACHE_DIR"


class InputError(ValueError):
    """Malformed command-line input (exit code 2)."""


class MathFailure(Exception):
    """A computed identity or relation failed (exit code 1)."""


@dataclass(frozen=True)
class Config:
    n: int
    max_height: int
    format: str
    orientation: str
    output: str | None

    def __post_init__(self):
        if self.n < 1:
            raise InputError(f"rank must be at least 1, got {self.n}")
        if self.max_height < 1:
            raise InputError(f"max height must be at least 1, got {self.max_height}")

    @property
    def datum(self) -> RootDatum:
        return datum(self.n)


# ---------------------------------------------------------------------------
# parsing helpers
# ---------------------------------------------------------------------------

def _word(cfg: Config, text: str) -> tuple[int, ...]:
    try:
        w = parse_word(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    for i in w:
        if not 1 <= i <= cfg.n:
            raise InputError(f"letter {i} in {text!r} outside 1..{cfg.n}")
    if len(w) > cfg.max_height:
        raise InputError(f"word {text!r} is longer than --max-height {cfg.max_height}")
    return w


def _dominant_word(cfg: Config, text: str) -> tuple[int, ...]:
    w = _word(cfg, text)
    if not w or not is_dominant(cfg.datum, w):
        raise InputError(f"{text!r} is not a dominant word for n={cfg.n}")
    return w


def _weight(cfg: Config, text: str) -> Weight:
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    tokens = [t.strip() for t in body.split(",")] if body.strip() else []
    coeffs = []
    for tok in tokens:
        if not re.fullmatch(r"\d+", tok):
            raise InputError(f"bad weight coefficient {tok!r} in {text!r}")
        coeffs.append(int(tok))
    if len(coeffs) != cfg.n:
        raise InputError(f"weight {text!r} has {len(coeffs)} coefficients, rank is {cfg.n}")
    nu = Weight(tuple(coeffs))
    if nu.height == 0:
        raise InputError("weight must be nonzero")
    if nu.height > cfg.max_height:
        raise InputError(f"weight {text!r} has height {nu.height} > --max-height {cfg.max_height}")
    return nu


_ROOT_RE = re.compile(r"\s*(alpha|beta)\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*")


def _root(cfg: Config, text: str) -> Root:
    m = _ROOT_RE.fullmatch(text)
    if not m:
        raise InputError(f"root must look like alpha(i,j) or beta(i,j), got {text!r}")
    try:
        return cfg.datum.root(m.group(1), int(m.group(2)), int(m.group(3)))
    except ValueError as exc:
        raise InputError(f"{text!r}: {exc}") from None


# ---------------------------------------------------------------------------
# commands: each returns (text, json-payload)
# ---------------------------------------------------------------------------

def cmd_roots(cfg: Config, args) -> tuple[str, object]:
    dat = cfg.datum
    full = dat.full_positive_roots()
    reduced = dat.reduced_positive_roots()
    lines = [f"reduced positive roots ({len(reduced)}):"]
    for r in reduced:
        parity = "odd" if dat.weight_parity(r.weight) % 2 else "even"
        lines.append(f"  {str(r):<12} {str(r.weight):<20} {parity:<5} {format_word(iota_plus(dat, r))}")
    for key, title in [("all", "full positive roots"), ("even", "even"), ("odd", "odd"),
                       ("reduced_even", "reduced even"), ("reduced_odd", "reduced odd")]:
        lines.append(f"{title} ({len(full[key])}): " + ", ".join(str(w) for w in full[key]))
    payload = {
        "n": dat.n,
        "reduced": [dict(r.to_json(), weight=r.weight.to_json()) for r in reduced],
        **{key: [w.to_json() for w in ws] for key, ws in full.items() if key != "reduced"},
    }
    return "\n".join(lines), payload


def cmd_lyndon(cfg: Config, args) -> tuple[str, object]:
    dat = cfg.datum
    rows = [(w, iota_plus_inverse(dat, w)) for w in dominant_lyndon_words(dat)]
    text = "\n".join(f"{format_word(w):<24} {r}  {r.weight}" for w, r in rows)
    return text, [{"word": list(w), "root": r.to_json(), "weight": r.weight.to_json()} for w, r in rows]


def cmd_dominant(cfg: Config, args) -> tuple[str, object]:
    nu = _weight(cfg, args.weight)
    ws = dominant_words(cfg.datum, nu)
    return "\n".join(format_word(w) for w in ws), {"weight": nu.to_json(), "words": [list(w) for w in ws]}


def cmd_shuffle(cfg: Config, args) -> tuple[str, object]:
    a, b = _word(cfg, args.left), _word(cfg, args.right)
    x = algebra(cfg.n).shuffle(Element.word(a), Element.word(b))
    return str(x), x.to_json(cfg.datum)


def cmd_gram(cfg: Config, args) -> tuple[str, object]:
    nu = _weight(cfg, args.weight)
    words, mat = algebra(cfg.n).gram(nu)
    det = determinant(mat)
    lines = ["monomial basis T_v for v in: " + ", ".join(format_word(w) for w in words)]
    for w, row in zip(words, mat):
        lines.append(f"{format_word(w)}: " + " | ".join(str(c) for c in row))
    lines.append(f"det = {det}")
    payload = {"weight": nu.to_json(), "basis": [list(w) for w in words],
               "matrix": [[str(c) for c in row] for row in mat], "det": str(det)}
    return "\n".join(lines), payload


def _per_word(cfg: Config, args, build: Callable) -> tuple[str, object]:
    nu = _weight(cfg, args.weight)
    dat = cfg.datum
    lines, items = [], []
    for w in dominant_words(dat, nu):
        x, extra = build(w)
        lines.append(f"{format_word(w)}: {x}")
        items.append({"word": list(w), "element": x.to_json(dat), **extra})
    return "\n".join(lines), {"weight": nu.to_json(), "basis": items}


def cmd_pbw(cfg: Config, args) -> tuple[str, object]:
    eng = engine(cfg.n)
    return _per_word(cfg, args, lambda w: (eng.pbw(w), {"norm": str(eng.pbw_norm(w))}))


def cmd_dual_pbw(cfg: Config, args) -> tuple[str, object]:
    eng = engine(cfg.n)
    dat = cfg.datum
    return _per_word(cfg, args, lambda w: (eng.dual_pbw(w), {"kappa": str(kappa(dat, w))}))


def cmd_dual_canonical(cfg: Config, args) -> tuple[str, object]:
    eng = engine(cfg.n)
    dat = cfg.datum
    nu = _weight(cfg, args.weight)
    basis = eng.dual_canonical(nu)
    lines, items = [], []
    for w in basis.words:
        b = basis[w]
        lines.append(f"{format_word(w)}: {b}")
        items.append({
            "word": list(w),
            "pbw": eng.pbw(w).to_json(dat),
            "dual_pbw": eng.dual_pbw(w).to_json(dat),
            "dual_canonical": b.to_json(dat),
            "kappa": str(kappa(dat, w)),
            "varsigma": str(varsigma(dat, w)),
            "gamma": [{"word": list(j), "coeff": str(c)} for j, c in sorted(basis.gamma[w].items(), reverse=True)],
        })
    return "\n".join(lines), {"weight": nu.to_json(), "basis": items}


def cmd_kappa(cfg: Config, args) -> tuple[str, object]:
    w = _dominant_word(cfg, args.word)
    k = kappa(cfg.datum, w)
    return str(k), {"word": list(w), "kappa": str(k)}


def cmd_cuspidal(cfg: Config, args) -> tuple[str, object]:
    root = _root(cfg, args.root)
    m = cuspidal_module(cfg.datum, root)
    payload = dump_module(m)
    lines = [f"cuspidal module of {root} on {format_word(iota_plus(cfg.datum, root))}, dimension {m.dimension}"]
    for b in m.basis:
        lines.append(f"  {b.label}: degree {b.degree}, parity {b.parity}")
    for r, mat in enumerate(m.y, start=1):
        for a, c in zip(*mat.nonzero()):
            lines.append(f"  y_{r} {m.basis[c].label} = {mat[a, c]} {m.basis[a].label}")
    for r, mat in enumerate(m.tau, start=1):
        for a, c in zip(*mat.nonzero()):
            lines.append(f"  tau_{r} {m.basis[c].label} = {mat[a, c]} {m.basis[a].label}")
    lines.append(f"  character: {character(m)}")
    return "\n".join(lines), payload


def cmd_verify(cfg: Config, args) -> tuple[str, object]:
    try:
        text = Path(args.module).read_text()
    except OSError as exc:
        raise InputError(f"cannot read module file {args.module!r}: {exc.strerror}") from None
    try:
        m = load_module(text)
    except (ValueError, json.JSONDecodeError) as exc:
        raise InputError(f"{args.module}: {exc}") from None
    report = verify_relations(m, QuiverData.oriented(m.datum(), cfg.orientation))
    payload = {
        "ok": report.ok,
        "checked": report.checked,
        "violations": [{"relation": v.relation, "block": list(v.block) if v.block else None,
                        "indices": list(v.indices), "witness": v.witness, "detail": v.detail}
                       for v in report.violations],
        "warnings": report.warnings,
    }
    if not report.ok:
        raise MathFailure(str(report), payload)
    return str(report), payload


def cmd_standard_char(cfg: Config, args) -> tuple[str, object]:
    w = _dominant_word(cfg, args.word)
    ch = standard_character(cfg.datum, w)
    expected = engine(cfg.n).dual_pbw(w)
    if ch != expected:
        raise MathFailure(f"standard character of {format_word(w)} differs from E*: {ch} vs {expected}")
    return str(ch), {"word": list(w), "character": ch.to_json(cfg.datum),
                     "highest_weight": list(highest_weight(ch))}


# ---------------------------------------------------------------------------
# selftest
# ---------------------------------------------------------------------------

def _weights(dat: RootDatum, max_height: int):
    for h in range(1, max_height + 1):
        for c in itertools.product(range(h + 1), repeat=dat.n):
            if sum(c) == h:
                yield Weight(c)


def run_selftest(n: int, max_height: int, orientation: str = "up") -> list[tuple[str, bool, str]]:
    """Run the invariant suite at the given caps; returns ``(name, ok, detail)``."""
    dat = datum(n)
    alg = algebra(n)
    eng = engine(n)
    quiver = QuiverData.oriented(dat, orientation)
    results = []

    def check(name: str, fn: Callable[[], str | None]) -> None:
        try:
            detail = fn()
            results.append((name, detail is None, detail or ""))
        except (ArithmeticError, BasisMismatchError) as exc:
            results.append((name, False, str(exc)))

    weights = list(_weights(dat, max_height))
    short = min(max_height, 4)

    def census():
        lw = dominant_lyndon_words(dat)
        if len(lw) != n * n:
            return f"{len(lw)} dominant Lyndon words, expected {n * n}"
        if sorted(iota_plus_inverse(dat, w).weight for w in lw) != sorted(r.weight for r in dat.reduced_positive_roots()):
            return "root bijection fails"

    def dominance():
        for nu in weights:
            if dominant_words(dat, nu) != dominant_words(dat, nu, method="filter"):
                return f"dominant word enumerations disagree at {nu}"

    def oracle():
        ws = [w for k in range(short) for w in itertools.product(range(1, n + 1), repeat=k)]
        for a in ws:
            for b in ws:
                if len(a) + len(b) <= short and alg.shuffle_words(a, b) != alg.shuffle_recursive(a, b):
                    return f"shuffle oracles disagree on {format_word(a)}, {format_word(b)}"

    def involutions():
        ws = [w for k in range(1, short + 1) for w in itertools.product(range(1, n + 1), repeat=k)]
        for w in ws:
            x = Element.word(w)
            if alg.sigma(alg.sigma(x)) != x or alg.bar(alg.bar(x)) != x or alg.sigma(x) != alg.bar(alg.tau(x)):
                return f"involution identity fails on {format_word(w)}"
        for a in ws[: 3 * n]:
            for b in ws[: 3 * n]:
                xa, xb = Element.word(a), Element.word(b)
                prod = alg.shuffle(xa, xb)
                if alg.bar(prod) != alg.shuffle(alg.bar(xa), alg.bar(xb)):
                    return f"bar is not multiplicative on {format_word(a)}, {format_word(b)}"
                if alg.sigma(prod) != alg.shuffle(alg.sigma(xb), alg.sigma(xa)):
                    return f"sigma is not anti-multiplicative on {format_word(a)}, {format_word(b)}"

    def top():
        for nu in weights:
            for w in dominant_words(dat, nu):
                fac = canonical_factorize(w)
                prod = alg.shuffle_many(alg.power(Element.word(f), m) for f, m in reversed(fac))
                top_w, c = prod.max_word()
                if top_w != w or c != RationalFunction(top_coefficient(dat, w)):
                    return f"leading term of the Lyndon power product fails at {format_word(w)}"

    def forms():
        for nu in weights:
            words, mat = alg.gram(nu)
            if any(mat[i][j] != mat[j][i] for i in range(len(mat)) for j in range(len(mat))):
                return f"Gram matrix not symmetric at {nu}"
            if not determinant(mat):
                return f"Gram matrix singular at {nu}"

    def pbw():
        for nu in weights:
            ws = dominant_words(dat, nu)
            es = {w: eng.pbw(w) for w in ws}
            for w in ws:
                eng.pbw_norm(w, "checked")
                eng.dual_pbw(w, "checked")
                for v in ws:
                    if v < w and alg.bilinear_form(es[w], es[v], check=False):
                        return f"PBW vectors {format_word(w)}, {format_word(v)} not orthogonal"

    def canonical():
        for nu in weights:
            basis = eng.dual_canonical(nu)
            for w in basis.words:
                b = basis[w]
                if b.max_word() != (w, RationalFunction(kappa(dat, w))):
                    return f"leading term of b*_{format_word(w)} is wrong"
                if not b.is_laurent():
                    return f"b*_{format_word(w)} has a non-Laurent coefficient"

    def standard():
        for nu in weights:
            for w in dominant_words(dat, nu):
                if standard_character(dat, w) != eng.dual_pbw(w):
                    return f"standard character of {format_word(w)} differs from E*"

    def cuspidal():
        for r in dat.reduced_positive_roots():
            report = verify_relations(cuspidal_module(dat, r), quiver)
            if not report.ok:
                return f"cuspidal module of {r}: {report.violations[0]}"

    for name, fn in [("dominant Lyndon census", census), ("dominant word enumerations", dominance),
                     ("shuffle oracle agreement", oracle), ("involutions", involutions),
                     ("leading coefficients", top), ("bilinear form", forms), ("PBW bases", pbw),
                     ("dual canonical basis", canonical), ("standard characters", standard),
                     ("cuspidal relations", cuspidal)]:
        check(name, fn)
    return results


def cmd_selftest(cfg: Config, args) -> tuple[str, object]:
    results = run_selftest(cfg.n, cfg.max_height, cfg.orientation)
    lines = [f"{'PASS' if ok else 'FAIL'} {name}" + (f": {detail}" if detail else "") for name, ok, detail in results]
    payload = [{"check": name, "ok": ok, "detail": detail} for name, ok, detail in results]
    if not all(ok for _, ok, _ in results):
        raise MathFailure("\n".join(lines), payload)
    return "\n".join(lines), payload


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

COMMANDS: dict[str, tuple[Callable, str]] = {
    "roots": (cmd_roots, "positive root tables"),
    "lyndon": (cmd_lyndon, "dominant Lyndon words and their roots"),
    "dominant": (cmd_dominant, "dominant words of a weight"),
    "shuffle": (cmd_shuffle, "shuffle product of two words"),
    "gram": (cmd_gram, "Gram matrix of the form on a monomial basis"),
    "pbw": (cmd_pbw, "PBW basis of a weight space"),
    "dual-pbw": (cmd_dual_pbw, "dual PBW basis of a weight space"),
    "dual-canonical": (cmd_dual_canonical, "dual canonical basis of a weight space"),
    "kappa": (cmd_kappa, "leading coefficient of a dual canonical basis element"),
    "cuspidal": (cmd_cuspidal, "cuspidal module of a root"),
    "verify": (cmd_verify, "check all relations on a module file"),
    "standard-char": (cmd_standard_char, "character of a standard module"),
    "selftest": (cmd_selftest, "run the invariant suite"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-n", type=int, default=2, help="rank (default 2)")
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--max-height", type=int, default=6, help="cap on weight height (default 6)")
    common.add_argument("--orientation", choices=["up", "down"], default="up",
                        help="quiver orientation: arrows i -> i+1 (up) or i+1 -> i (down)")
    common.add_argument("--output", help="write output to this file instead of stdout")

    parser = _Parser(prog="osp-shuffle", description="Quantum shuffle superalgebra computations for osp(1|2n).")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name in ("dominant", "gram", "pbw", "dual-pbw", "dual-canonical"):
            p.add_argument("--weight", required=True, help="coefficients, e.g. [1,2]")
        elif name == "shuffle":
            p.add_argument("left")
            p.add_argument("right")
        elif name in ("kappa", "standard-char"):
            p.add_argument("word")
        elif name == "cuspidal":
            p.add_argument("root", help="alpha(i,j) or beta(i,j)")
        elif name == "verify":
            p.add_argument("module", help="module JSON file")
    return parser


def _render(cfg: Config, text: str, payload) -> str:
    if cfg.format == "json":
        return json.dumps(payload, indent=2, sort_keys=False)
    return text


def _cache_path(argv: list[str]) -> Path | None:
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    key = hashlib.sha256(json.dumps([__version__, argv]).encode()).hexdigest()
    return Path(root) / f"{key}.out"


def _emit(cfg: Config, out: str) -> None:
    if cfg.output:
        Path(cfg.output).write_text(out + "\n")
    else:
        print(out)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        cfg = Config(args.n, args.max_height, args.format, args.orientation, args.output)
        cache = _cache_path(argv) if args.command not in ("verify", "selftest") else None
        if cache is not None and cache.exists():
            _emit(cfg, cache.read_text())
            return 0
        fn, _ = COMMANDS[args.command]
        text, payload = fn(cfg, args)
        out = _render(cfg, text, payload)
        if cache is not None:
            cache.parent.mkdir(parents=True, exist_ok=True)
            cache.write_text(out)
        _emit(cfg, out)
        return 0
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MathFailure as exc:
        message = exc.args[0]
        payload = exc.args[1] if len(exc.args) > 1 else None
        if payload is not None and args.format == "json":
            _emit(cfg, json.dumps(payload, indent=2))
        else:
            _emit(cfg, message)
        return 1
    except (ArithmeticError, BasisMismatchError) as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
