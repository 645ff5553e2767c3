"""Deterministic text output: canonical JSON and aligned tables.

Tables show rationals as 6-significant-digit decimals; the JSON carries
the exact values.  Identical inputs render byte-identically (the version
string appears only on the table header line).
"""

from __future__ import annotations

import json
from fractions import Fraction

from . import __version__
from .service.models import (
    AnalyzeResponse,
    BoundResponse,
    ExamplesResponse,
    VerifyResponse,
)


def canonical_json(model) -> str:
    """Stable serialization: sorted keys, fixed separators, trailing newline."""
    return (
        json.dumps(model.model_dump(), sort_keys=True, separators=(",", ":"), ensure_ascii=True)
        + "\n"
    )


def _dec(exact: str) -> str:
    try:
        return f"{float(Fraction(exact)):.6g}"
    except (OverflowError, ValueError):
        return exact


def _coord_str(c) -> str:
    if isinstance(c, list):
        return "[" + ",".join(str(x) for x in c) + "]"
    return str(c)


def _vec_str(v) -> str:
    return "(" + ", ".join(_coord_str(c) for c in v) + ")"


def _header() -> list[str]:
    return [f"commfibre {__version__}"]


def _field_lines(f) -> list[str]:
    if f.k == 1:
        return [f"field: F_{f.q} (p = {f.p})"]
    mod = ",".join(str(c) for c in f.modulus)
    return [f"field: F_{f.q} (p = {f.p}, k = {f.k}, modulus coeffs {mod})"]


def render_analyze(r: AnalyzeResponse) -> str:
    lines = _header() + _field_lines(r.field)
    p = r.presentation
    lines.append(
        f"presentation: n = {p.n}  a = {p.a}  b = {p.b}  class = {p.nilpotency_class}"
    )
    lines.append(f"generators: {' '.join(p.generators)}")
    g = r.group
    lines.append(
        f"group: |G| = {g.order}  |G'| = {g.derived_order}  |G/G'| = {g.abelianization_order}"
    )
    lines.append("rank profile R: " + " ".join(str(c) for c in r.rank_profile))
    lines.append("degree counts D: " + " ".join(r.degree_counts))
    lines.append(f"class number k(G): {r.class_number}")
    lines.append(f"t values: {' '.join(str(t) for t in r.t_values)}")
    lines.append("classes over G' (zeta taken at s = 2t-1):")
    for cls in r.classes:
        lines.append(
            f"  g = {_vec_str(cls.g)}  multiplicity {cls.multiplicity}"
            f"  K = {tuple(cls.K)}  V = {tuple(cls.V)}"
        )
        for st in cls.stats:
            lines.append(
                f"    t={st.t}: zeta = {_dec(st.zeta)}  N = {st.N}  P = {_dec(st.P)}"
            )
    lines.append("uniformity (L1 distance to uniform on G' vs bound):")
    for b in r.bounds:
        verdict = "holds" if b.holds else "VIOLATED"
        lines.append(
            f"  t={b.t}: L1 = {_dec(b.l1)}  bound = {b.bound_decimal}  {verdict}"
        )
    return "\n".join(lines) + "\n"


def render_verify(r: VerifyResponse) -> str:
    lines = _header() + _field_lines(r.field)
    lines.append(f"group order: {r.group_order}")
    lines.append(f"t values: {' '.join(str(t) for t in r.t_values)}")
    lines.append(
        f"checked {r.checked} fibre counts against {r.evaluated_pairs} evaluated pairs"
    )
    lines.append(
        f"class number: formula {r.class_number_formula}  oracle {r.class_number_oracle}"
    )
    if r.mismatches:
        lines.append(f"MISMATCHES ({len(r.mismatches)}):")
        for m in r.mismatches:
            lines.append(
                f"  t={m.t} g={_vec_str(m.g)}: formula {m.formula} != oracle {m.oracle}"
            )
    lines.append("result: " + ("OK" if r.ok else "MISMATCH"))
    return "\n".join(lines) + "\n"


def render_bound(r: BoundResponse) -> str:
    lines = _header() + _field_lines(r.field)
    lines.append(f"t = {r.t}")
    lines.append(f"bound^2 = {r.bound_squared} (exact)")
    lines.append(f"bound   = {r.bound_decimal}")
    lines.append(f"L1      = {r.l1} (exact) = {_dec(r.l1)}")
    lines.append(f"L1^2    = {r.l1_squared} (exact)")
    lines.append("inequality L1^2 <= bound^2: " + ("holds" if r.holds else "VIOLATED"))
    return "\n".join(lines) + "\n"


def render_examples(r: ExamplesResponse) -> str:
    lines = _header() + ["built-in algebras:"]
    for b in r.builtins:
        params = f" (params: {', '.join(b.params)})" if b.params else ""
        lines.append(f"  {b.name}{params}: {b.description}")
    return "\n".join(lines) + "\n"
