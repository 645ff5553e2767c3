"""Line-oriented algebra file format.

    # comments and blank lines are skipped
    field p=3 k=2 poly=1,0,1      # poly optional; constant coefficient first
    gens x1 x2 y1
    bracket x1 x2 : y1
    bracket x1 y1 : 2*x2 + [0,1]*y1

Declarations must appear in this order: one field line, one gens line,
then bracket lines.  A term is either a bare generator name (coefficient
1), ``c*name`` with an integer c in [0, p) for prime fields, or
``[c0,...,c_{k-1}]*name`` for extension fields.  Each unordered generator
pair may carry at most one bracket line; self-brackets are rejected.
"""

from __future__ import annotations

import re

from .algebra import FullLieAlgebra
from .errors import InputError, ParseError
from .field import FieldConfig, make_field

_FIELD_RE = re.compile(r"^field\s+(.*)$")
_KV_RE = re.compile(r"^(p|k|poly)=(\S+)$")
_EXT_COEFF_RE = re.compile(r"^\[([0-9,\s]*)\]$")


def _strip(line: str) -> str:
    if "#" in line:
        line = line[: line.index("#")]
    return line.strip()


def _parse_field_line(body: str, lineno: int) -> FieldConfig:
    params: dict[str, str] = {}
    for tok in body.split():
        m = _KV_RE.match(tok)
        if not m:
            raise ParseError(f"bad field parameter {tok!r}", lineno)
        key, val = m.groups()
        if key in params:
            raise ParseError(f"repeated field parameter {key!r}", lineno)
        params[key] = val
    if "p" not in params:
        raise ParseError("field line needs p=<prime>", lineno)
    try:
        p = int(params["p"])
        k = int(params.get("k", "1"))
        poly = None
        if "poly" in params:
            poly = tuple(int(c) for c in params["poly"].split(","))
    except ValueError:
        raise ParseError("field parameters must be integers", lineno) from None
    try:
        return make_field(p, k, modulus=poly)
    except InputError as exc:
        raise ParseError(str(exc), lineno, kind=exc.kind) from None


def _parse_coeff(tok: str, cfg: FieldConfig, lineno: int) -> int:
    m = _EXT_COEFF_RE.match(tok)
    if m:
        parts = [s.strip() for s in m.group(1).split(",") if s.strip()]
        if len(parts) != cfg.k:
            raise ParseError(
                f"coefficient {tok} needs exactly {cfg.k} coordinates",
                lineno,
                kind="coefficient-out-of-range",
            )
        coords = [int(s) for s in parts]
        if any(c < 0 or c >= cfg.p for c in coords):
            raise ParseError(
                f"coefficient {tok} has coordinates outside [0, {cfg.p})",
                lineno,
                kind="coefficient-out-of-range",
            )
        return cfg.element(coords)
    try:
        c = int(tok)
    except ValueError:
        raise ParseError(f"bad coefficient {tok!r}", lineno) from None
    if c < 0 or c >= cfg.p:
        raise ParseError(
            f"integer coefficient {c} outside [0, {cfg.p})",
            lineno,
            kind="coefficient-out-of-range",
        )
    return cfg.from_int(c)


def parse_algebra_file(text: str) -> FullLieAlgebra:
    """Parse the document into a FullLieAlgebra (see module docstring)."""
    cfg: FieldConfig | None = None
    names: tuple[str, ...] | None = None
    index: dict[str, int] = {}
    table: dict[tuple[int, int], list[int]] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        head = line.split(None, 1)[0]

        if head == "field":
            if cfg is not None:
                raise ParseError("duplicate field line", lineno)
            cfg = _parse_field_line(line[len("field"):].strip(), lineno)
            continue

        if head == "gens":
            if cfg is None:
                raise ParseError("gens before field declaration", lineno)
            if names is not None:
                raise ParseError("duplicate gens line", lineno)
            toks = line.split()[1:]
            if not toks:
                raise ParseError("gens line lists no generators", lineno)
            if len(set(toks)) != len(toks):
                raise ParseError("duplicate generator name", lineno)
            names = tuple(toks)
            index = {nm: i for i, nm in enumerate(names)}
            continue

        if head == "bracket":
            if names is None:
                raise ParseError("bracket before gens declaration", lineno)
            body = line[len("bracket"):].strip()
            if ":" not in body:
                raise ParseError("bracket line needs ':'", lineno)
            lhs, rhs = body.split(":", 1)
            pair = lhs.split()
            if len(pair) != 2:
                raise ParseError("bracket needs exactly two generators", lineno)
            for nm in pair:
                if nm not in index:
                    raise ParseError(
                        f"unknown generator {nm!r}", lineno, kind="unknown-generator"
                    )
            i, j = index[pair[0]], index[pair[1]]
            if i == j:
                raise ParseError(f"self-bracket [{pair[0]},{pair[0]}]", lineno)
            key = (min(i, j), max(i, j))
            if key in table:
                raise ParseError(
                    f"duplicate bracket for ({pair[0]}, {pair[1]})",
                    lineno,
                    kind="duplicate-bracket",
                )
            flip = i > j
            vec = [0] * len(names)
            for term in rhs.split("+"):
                term = term.strip()
                if not term:
                    raise ParseError("empty term in bracket value", lineno)
                if "*" in term:
                    coeff_tok, name_tok = term.rsplit("*", 1)
                    coeff = _parse_coeff(coeff_tok.strip(), cfg, lineno)
                    name_tok = name_tok.strip()
                else:
                    coeff, name_tok = cfg.one, term
                if name_tok not in index:
                    raise ParseError(
                        f"unknown generator {name_tok!r}",
                        lineno,
                        kind="unknown-generator",
                    )
                if flip:
                    coeff = cfg.neg(coeff)
                m = index[name_tok]
                vec[m] = cfg.add(vec[m], coeff)
            table[key] = vec
            continue

        raise ParseError(f"unrecognized line {head!r}", lineno)

    if cfg is None:
        raise ParseError("missing field declaration", 1)
    if names is None:
        raise ParseError("missing gens declaration", 1)
    brackets = tuple(
        (i, j, tuple(vec)) for (i, j), vec in sorted(table.items()) if any(vec)
    )
    return FullLieAlgebra(cfg, names, brackets)


def rebase(alg: FullLieAlgebra, cfg: FieldConfig) -> FullLieAlgebra:
    """Re-read structure constants over a new field (base extension).

    The source algebra must live over the prime field F_p with the same p;
    its integer coefficients embed into the extension.
    """
    old = alg.cfg
    if old.k != 1:
        raise InputError("base extension starts from a prime-field algebra (k = 1)")
    if old.p != cfg.p:
        raise InputError(
            f"base extension cannot change the characteristic ({old.p} -> {cfg.p})"
        )
    brackets = tuple(
        (i, j, tuple(cfg.from_int(c) for c in vec)) for i, j, vec in alg.brackets
    )
    return FullLieAlgebra(cfg, alg.names, brackets)
