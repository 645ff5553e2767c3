"""Request/response schemas for the HTTP service and the CLI.

Conventions (documented in the README):

* field elements of F_{p^k} appear as plain integers when k = 1 and as
  k-element coordinate lists (constant coefficient first) when k > 1;
* exact rationals and potentially huge integers travel as strings,
  "num/den" with the "/den" part omitted for integers;
* strata counts (bounded by the enumeration budget) stay JSON numbers.
"""

from __future__ import annotations

from pydantic import BaseModel, Field

Coord = int | list[int]

SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# requests
# ---------------------------------------------------------------------------

class FieldSpec(BaseModel):
    p: int
    k: int = 1
    modulus: list[int] | None = None


class AlgebraSource(BaseModel):
    """Exactly one of ``builtin`` / ``text`` must be set."""

    builtin: str | None = None
    alpha: int | None = None     # parameter of the elliptic9 builtin
    text: str | None = None      # algebra file content


class AnalyzeRequest(BaseModel):
    source: AlgebraSource
    field: FieldSpec | None = None   # builtin field / base extension for files
    t: list[int] = Field(default_factory=lambda: [1])
    enum_budget: int | None = None
    threads: int = 1


class VerifyRequest(BaseModel):
    source: AlgebraSource
    field: FieldSpec | None = None
    t_max: int = 2
    oracle_budget: int | None = None
    enum_budget: int | None = None
    threads: int = 1


class BoundRequest(BaseModel):
    source: AlgebraSource
    field: FieldSpec | None = None
    t: int
    enum_budget: int | None = None
    threads: int = 1


# ---------------------------------------------------------------------------
# responses
# ---------------------------------------------------------------------------

class FieldInfo(BaseModel):
    p: int
    k: int
    q: int
    modulus: list[int]


class LambdaEntry(BaseModel):
    i: int
    j: int
    coeffs: list[Coord]


class PresentationInfo(BaseModel):
    n: int
    a: int
    b: int
    nilpotency_class: int
    generators: list[str]
    e_indices: list[int]
    f_pivots: list[int]
    lam: list[LambdaEntry]


class GroupInfo(BaseModel):
    order: str
    derived_order: str
    abelianization_order: str


class TStats(BaseModel):
    t: int
    zeta: str    # zeta(2t - 1, g), exact
    N: str       # fibre count N_t(g), exact integer
    P: str       # N_t(g) / |G|^(2t), exact


class KVClassInfo(BaseModel):
    g: list[Coord]
    multiplicity: int
    K: list[int]
    V: list[int]
    stats: list[TStats]


class BoundInfo(BaseModel):
    t: int
    bound_squared: str
    bound_decimal: str
    l1: str
    l1_squared: str
    holds: bool


class AnalyzeResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    field: FieldInfo
    presentation: PresentationInfo
    group: GroupInfo
    rank_profile: list[int]
    degree_counts: list[str]
    class_number: str
    t_values: list[int]
    classes: list[KVClassInfo]   # the zero class first, then by first rep
    bounds: list[BoundInfo]


class MismatchInfo(BaseModel):
    t: int
    g: list[Coord]
    formula: str
    oracle: str


class VerifyResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    ok: bool
    field: FieldInfo
    group_order: str
    t_values: list[int]
    checked: int
    evaluated_pairs: int
    class_number_formula: str
    class_number_oracle: str
    mismatches: list[MismatchInfo]


class BoundResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    field: FieldInfo
    t: int
    bound_squared: str
    bound_decimal: str
    l1: str
    l1_squared: str
    holds: bool


class BuiltinInfo(BaseModel):
    name: str
    description: str
    params: list[str]


class ExamplesResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    builtins: list[BuiltinInfo]


class ErrorInfo(BaseModel):
    kind: str
    message: str
    line: int | None = None


class ErrorResponse(BaseModel):
    error: ErrorInfo
