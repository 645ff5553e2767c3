"""Exact evaluation of twisted zeta values and commutator-fibre statistics.

Everything here is arbitrary-precision rational arithmetic; floats appear
only as display renderings produced elsewhere.

Two parameters must not be confused:

* ``s`` is the exponent of the character sum zeta(s, g) =
  sum_chi chi(g) / chi(1)^s.  Per half-rank stratum i,

      zeta^i(s, g) = |G/G'| * q^(-i(1+s)) * (K^i(g) - V^i(g) / (q - 1)).

* ``t`` counts commutator blocks in the word [x1,y1]...[xt,yt].  Since the
  fibre-count class function of one commutator has Fourier coefficients
  |G| / chi(1), a t-fold convolution gives

      N_t(g) = |G|^(2t-1) * zeta(2t - 1, g),

  so every word-map statistic evaluates zeta at s = 2t - 1.  (The t = 1
  case is the classical commuting-count formula; higher t is verified
  against the brute-force oracle.)

Integrality and positivity of the derived counts are asserted as hard
internal checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import LiePresentation
from .enumeration import (
    KVClass,
    KVVectors,
    RankProfile,
    StratumScan,
    classify_elements,
    kv_vectors,
    rank_profile,
    scan_strata,
)
from .errors import ConsistencyError, InputError, MismatchedTError

__all__ = [
    "ZetaValue",
    "zeta_stratum",
    "zeta_value",
    "zeta_total",
    "class_number",
    "degree_counts",
    "fibre_count",
    "fibre_count_from_zeta",
    "fibre_prob",
    "uniformity_bound",
    "l1_distance",
    "second_moment",
    "direct_product",
]


@dataclass(frozen=True)
class ZetaValue:
    """Per-stratum zeta values for one (s, g); total = sum of strata."""

    s: int
    g: tuple[int, ...]
    strata: tuple[Fraction, ...]

    @property
    def total(self) -> Fraction:
        return sum(self.strata, Fraction(0))


def _check_positive(name: str, value: int):
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise InputError(f"{name} must be a positive integer, got {value!r}")


def zeta_stratum(pres: LiePresentation, kv: KVVectors, i: int, s: int) -> Fraction:
    _check_positive("s", s)
    q = pres.cfg.q
    if not 0 <= i < len(kv.K):
        raise InputError(f"stratum index {i} out of range")
    lin = q ** (pres.n - pres.b)  # |G/G'|
    weight = Fraction(1, q ** (i * (1 + s)))
    return lin * weight * (kv.K[i] - Fraction(kv.V[i], q - 1))


def zeta_value(pres: LiePresentation, kv: KVVectors, s: int) -> ZetaValue:
    strata = tuple(zeta_stratum(pres, kv, i, s) for i in range(len(kv.K)))
    return ZetaValue(s=s, g=kv.g, strata=strata)


def zeta_total(
    pres: LiePresentation,
    g,
    s: int,
    scan: StratumScan | None = None,
) -> Fraction:
    kv = kv_vectors(pres, g, scan=scan)
    return zeta_value(pres, kv, s).total


def degree_counts(
    pres: LiePresentation,
    profile: RankProfile | None = None,
) -> tuple[int, ...]:
    """D[i] = number of irreducible characters of degree q^i."""
    if profile is None:
        profile = rank_profile(pres)
    q = pres.cfg.q
    lin = q ** (pres.n - pres.b)
    out = []
    for i, r in enumerate(profile.counts):
        d = Fraction(lin * r, q ** (2 * i))
        if d.denominator != 1:
            raise ConsistencyError(f"non-integral degree count D[{i}] = {d}")
        out.append(int(d))
    if sum(d * q ** (2 * i) for i, d in enumerate(out)) != q ** pres.n:
        raise ConsistencyError("degree counts fail the mass identity")
    return tuple(out)


def class_number(
    pres: LiePresentation,
    profile: RankProfile | None = None,
) -> int:
    """Number of conjugacy classes: the zeta total at s = 1, g = 0."""
    if profile is None:
        profile = rank_profile(pres)
    q = pres.cfg.q
    lin = q ** (pres.n - pres.b)
    total = sum(Fraction(lin * r, q ** (2 * i)) for i, r in enumerate(profile.counts))
    if total.denominator != 1 or total <= 0:
        raise ConsistencyError(f"non-integral class number {total}")
    return int(total)


def fibre_count(
    pres: LiePresentation,
    g,
    t: int,
    scan: StratumScan | None = None,
) -> int:
    """N_t(g): number of 2t-tuples whose commutator-word value is g."""
    _check_positive("t", t)
    z = zeta_total(pres, g, 2 * t - 1, scan=scan)
    return fibre_count_from_zeta(pres, z, t)


def fibre_count_from_zeta(pres: LiePresentation, zeta: Fraction, t: int) -> int:
    """N_t from an already-evaluated zeta(2t - 1, g)."""
    _check_positive("t", t)
    q = pres.cfg.q
    val = q ** (pres.n * (2 * t - 1)) * zeta
    if val.denominator != 1 or val < 0:
        raise ConsistencyError(f"negative or fractional fibre count {val}")
    return int(val)


def fibre_prob(
    pres: LiePresentation,
    g,
    t: int,
    scan: StratumScan | None = None,
) -> Fraction:
    """P_t(g) = N_t(g) / |G|^(2t) = zeta(2t - 1, g) / |G|."""
    _check_positive("t", t)
    return zeta_total(pres, g, 2 * t - 1, scan=scan) / pres.cfg.q ** pres.n


def _nonlinear_weight(pres: LiePresentation, t: int, profile: RankProfile | None) -> Fraction:
    """sum over nonlinear characters of chi(1)^(-2(2t-1))."""
    d = degree_counts(pres, profile=profile)
    q = pres.cfg.q
    return sum(
        (Fraction(d[i], q ** (2 * (2 * t - 1) * i)) for i in range(1, len(d))),
        Fraction(0),
    )


def uniformity_bound(
    pres: LiePresentation,
    t: int,
    profile: RankProfile | None = None,
) -> tuple[Fraction, float]:
    """Upper bound on ||P_t - uniform||_1 over G'.

    Returns (exact square of the bound, float rendering of the bound).
    """
    _check_positive("t", t)
    q = pres.cfg.q
    ratio = Fraction(q ** pres.b, q ** pres.n)  # |G'| / |G|
    sq = ratio * _nonlinear_weight(pres, t, profile)
    return sq, float(sq) ** 0.5


def l1_distance(
    pres: LiePresentation,
    t: int,
    scan: StratumScan | None = None,
    classes: tuple[KVClass, ...] | None = None,
) -> Fraction:
    """Exact L1 distance between the c_t value distribution on G' and uniform."""
    _check_positive("t", t)
    if scan is None:
        scan = scan_strata(pres)
    if classes is None:
        classes = classify_elements(pres, scan=scan)
    q = pres.cfg.q
    s = 2 * t - 1
    uniform = Fraction(1, q ** pres.b)
    order = q ** pres.n
    zero_kv = kv_vectors(pres, (0,) * pres.b, scan=scan)
    total = abs(zeta_value(pres, zero_kv, s).total / order - uniform)
    for cls in classes:
        kv = KVVectors(g=cls.rep, K=cls.K, V=cls.V)
        p_val = zeta_value(pres, kv, s).total / order
        total += cls.multiplicity * abs(p_val - uniform)
    return total


def second_moment(
    pres: LiePresentation,
    t: int,
    profile: RankProfile | None = None,
) -> Fraction:
    """sum over g in G' of P_t(g)^2, evaluated from the degree counts."""
    _check_positive("t", t)
    q = pres.cfg.q
    return Fraction(1, q ** pres.b) + _nonlinear_weight(pres, t, profile) / q ** pres.n


def direct_product(za: ZetaValue, zb: ZetaValue) -> ZetaValue:
    """Zeta value of (g_a, g_b) in a direct product of two groups.

    Characters of the product are outer products, so degrees multiply and
    the per-stratum values convolve; the total is the plain product.
    """
    if za.s != zb.s:
        raise MismatchedTError(f"zeta arguments differ: {za.s} vs {zb.s}")
    strata = [Fraction(0)] * (len(za.strata) + len(zb.strata) - 1)
    for i, x in enumerate(za.strata):
        for j, y in enumerate(zb.strata):
            strata[i + j] += x * y
    out = ZetaValue(s=za.s, g=za.g + zb.g, strata=tuple(strata))
    if out.total != za.total * zb.total:
        raise ConsistencyError("stratum convolution disagrees with the product")  # pragma: no cover
    return out
