"""Request handlers: the single implementation behind both the HTTP app
and the in-process CLI client."""

from __future__ import annotations

import os
from fractions import Fraction

from ..algebra import (
    BUILTINS,
    FullLieAlgebra,
    LiePresentation,
    builtin,
    check,
    reduce_presentation,
)
from ..algfile import parse_algebra_file, rebase
from ..enumeration import (
    DEFAULT_ENUM_BUDGET,
    KVVectors,
    classify_elements,
    kv_vectors,
    scan_strata,
)
from ..errors import InputError
from ..field import FieldConfig, make_field
from ..oracle import DEFAULT_ORACLE_BUDGET, compare
from ..zeta import (
    class_number,
    degree_counts,
    fibre_count_from_zeta,
    l1_distance,
    uniformity_bound,
    zeta_value,
)
from .models import (
    AnalyzeRequest,
    AnalyzeResponse,
    BoundInfo,
    BoundRequest,
    BoundResponse,
    BuiltinInfo,
    Coord,
    ErrorInfo,
    ExamplesResponse,
    FieldInfo,
    GroupInfo,
    KVClassInfo,
    LambdaEntry,
    MismatchInfo,
    PresentationInfo,
    TStats,
    VerifyRequest,
    VerifyResponse,
)

BUDGET_ENV = "COMMFIBRE_BUDGET"

DEFAULT_BUILTIN_FIELD = (3, 1)


def _env_budget() -> int | None:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None or raw == "":
        return None
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise InputError(f"{BUDGET_ENV} must be positive, got {value}")
    return value


def _budget(explicit: int | None, fallback: int) -> int:
    if explicit is not None:
        if explicit < 1:
            raise InputError(f"budget must be positive, got {explicit}")
        return explicit
    env = _env_budget()
    return env if env is not None else fallback


def _field_from_spec(spec) -> FieldConfig:
    return make_field(spec.p, spec.k, modulus=spec.modulus)


def resolve_algebra(source, field_spec) -> FullLieAlgebra:
    """Turn an AlgebraSource (+ optional field) into a FullLieAlgebra."""
    if (source.builtin is None) == (source.text is None):
        raise InputError("provide exactly one of builtin / text in source")
    if source.builtin is not None:
        cfg = (
            _field_from_spec(field_spec)
            if field_spec is not None
            else make_field(*DEFAULT_BUILTIN_FIELD)
        )
        return builtin(source.builtin, cfg, alpha=source.alpha)
    alg = parse_algebra_file(source.text)
    if field_spec is not None:
        alg = rebase(alg, _field_from_spec(field_spec))
    return alg


# ---------------------------------------------------------------------------
# exact-value formatting
# ---------------------------------------------------------------------------

def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_decimal(x) -> str:
    """Six significant digits; falls back to the exact string if the value
    does not fit a float."""
    try:
        return f"{float(Fraction(x)):.6g}"
    except OverflowError:
        return format_rational(x)


def _coord(cfg: FieldConfig, a: int) -> Coord:
    if cfg.k == 1:
        return int(a)
    return [int(c) for c in cfg.coords(a)]


def _coord_vec(cfg: FieldConfig, v) -> list[Coord]:
    return [_coord(cfg, a) for a in v]


def _field_info(cfg: FieldConfig) -> FieldInfo:
    return FieldInfo(p=cfg.p, k=cfg.k, q=cfg.q, modulus=list(cfg.modulus))


def _presentation_info(alg: FullLieAlgebra, pres: LiePresentation) -> PresentationInfo:
    cfg = pres.cfg
    return PresentationInfo(
        n=pres.n,
        a=pres.a,
        b=pres.b,
        nilpotency_class=pres.cls,
        generators=list(alg.names),
        e_indices=list(pres.e_indices),
        f_pivots=list(pres.f_pivots),
        lam=[
            LambdaEntry(i=i, j=j, coeffs=_coord_vec(cfg, coeffs))
            for i, j, coeffs in pres.lam
        ],
    )


def _t_list(ts) -> list[int]:
    if not ts:
        raise InputError("at least one t value is required")
    out = sorted(set(int(t) for t in ts))
    if out[0] < 1:
        raise InputError(f"t values must be >= 1, got {out[0]}")
    return out


# ---------------------------------------------------------------------------
# handlers
# ---------------------------------------------------------------------------

def handle_analyze(req: AnalyzeRequest) -> AnalyzeResponse:
    alg = resolve_algebra(req.source, req.field)
    cfg = alg.cfg
    rep = check(alg)
    pres = reduce_presentation(alg, rep)
    t_values = _t_list(req.t)
    budget = _budget(req.enum_budget, DEFAULT_ENUM_BUDGET)
    scan = scan_strata(pres, budget=budget, workers=req.threads)
    classes = classify_elements(pres, scan=scan)
    profile = scan.profile
    d_counts = degree_counts(pres, profile=profile)
    k_g = class_number(pres, profile=profile)

    q = cfg.q
    rows = []
    zero_kv = kv_vectors(pres, (0,) * pres.b, scan=scan)
    class_rows = [(zero_kv.g, zero_kv.K, zero_kv.V, 1)]
    class_rows += [(c.rep, c.K, c.V, c.multiplicity) for c in classes]
    for g, K, V, multiplicity in class_rows:
        stats = []
        for t in t_values:
            z = zeta_value(pres, KVVectors(g=g, K=K, V=V), 2 * t - 1)
            n_t = fibre_count_from_zeta(pres, z.total, t)
            stats.append(
                TStats(
                    t=t,
                    zeta=format_rational(z.total),
                    N=str(n_t),
                    P=format_rational(Fraction(n_t, q ** (2 * t * pres.n))),
                )
            )
        rows.append(
            KVClassInfo(
                g=_coord_vec(cfg, g),
                multiplicity=multiplicity,
                K=list(K),
                V=list(V),
                stats=stats,
            )
        )

    bounds = []
    for t in t_values:
        sq, dec = uniformity_bound(pres, t, profile=profile)
        l1 = l1_distance(pres, t, scan=scan, classes=classes)
        bounds.append(
            BoundInfo(
                t=t,
                bound_squared=format_rational(sq),
                bound_decimal=format_decimal(dec),
                l1=format_rational(l1),
                l1_squared=format_rational(l1 * l1),
                holds=l1 * l1 <= sq,
            )
        )

    return AnalyzeResponse(
        field=_field_info(cfg),
        presentation=_presentation_info(alg, pres),
        group=GroupInfo(
            order=str(q ** pres.n),
            derived_order=str(q ** pres.b),
            abelianization_order=str(q ** (pres.n - pres.b)),
        ),
        rank_profile=list(profile.counts),
        degree_counts=[str(d) for d in d_counts],
        class_number=str(k_g),
        t_values=t_values,
        classes=rows,
        bounds=bounds,
    )


def handle_verify(req: VerifyRequest) -> VerifyResponse:
    alg = resolve_algebra(req.source, req.field)
    if req.t_max < 1:
        raise InputError(f"t_max must be >= 1, got {req.t_max}")
    result = compare(
        alg,
        t_max=req.t_max,
        oracle_budget=_budget(req.oracle_budget, DEFAULT_ORACLE_BUDGET),
        enum_budget=_budget(req.enum_budget, DEFAULT_ENUM_BUDGET),
        workers=req.threads,
    )
    cfg = alg.cfg
    return VerifyResponse(
        ok=result.ok,
        field=_field_info(cfg),
        group_order=str(result.group_order),
        t_values=list(result.t_values),
        checked=result.checked,
        evaluated_pairs=result.evaluated_pairs,
        class_number_formula=str(result.class_number_formula),
        class_number_oracle=str(result.class_number_oracle),
        mismatches=[
            MismatchInfo(
                t=m.t,
                g=_coord_vec(cfg, m.g),
                formula=str(m.formula),
                oracle=str(m.oracle),
            )
            for m in result.mismatches
        ],
    )


def handle_bound(req: BoundRequest) -> BoundResponse:
    alg = resolve_algebra(req.source, req.field)
    rep = check(alg)
    pres = reduce_presentation(alg, rep)
    if req.t < 1:
        raise InputError(f"t must be >= 1, got {req.t}")
    budget = _budget(req.enum_budget, DEFAULT_ENUM_BUDGET)
    scan = scan_strata(pres, budget=budget, workers=req.threads)
    classes = classify_elements(pres, scan=scan)
    sq, dec = uniformity_bound(pres, req.t, profile=scan.profile)
    l1 = l1_distance(pres, req.t, scan=scan, classes=classes)
    return BoundResponse(
        field=_field_info(alg.cfg),
        t=req.t,
        bound_squared=format_rational(sq),
        bound_decimal=format_decimal(dec),
        l1=format_rational(l1),
        l1_squared=format_rational(l1 * l1),
        holds=l1 * l1 <= sq,
    )


def handle_examples() -> ExamplesResponse:
    return ExamplesResponse(
        builtins=[
            BuiltinInfo(name=name, description=desc, params=list(params))
            for name, (_, desc, params) in sorted(BUILTINS.items())
        ]
    )


def error_info(exc) -> ErrorInfo:
    return ErrorInfo(
        kind=getattr(exc, "kind", "error"),
        message=str(exc),
        line=getattr(exc, "line", None),
    )
