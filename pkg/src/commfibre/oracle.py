"""Brute-force ground truth from the group side.

The group attached to a nilpotent algebra of class c < p (c <= 3 here) is
realized on coordinate vectors with the truncated product

    u * v = u + v + [u,v]/2                         (class <= 2)
    u * v = u + v + [u,v]/2 + ([u,[u,v]] + [v,[v,u]])/12   (class 3)

Fibre counting uses two exact group-theoretic reductions:

  * commutators ignore central factors ([uz, vz'] = [u, v] for central
    z, z'), so pairs are enumerated over a transversal of the centre and
    weighted by |Z|^2;
  * for t > 1 the value distribution is the convolution of the t = 1
    distribution with itself over the (elementary abelian) derived
    subgroup.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    FullLieAlgebra,
    ValidationReport,
    check,
    in_span,
    reduce_presentation,
    vec_add,
    vec_neg,
    vec_scale,
    vec_zero,
    rref,
)
from .enumeration import DEFAULT_ENUM_BUDGET, kv_vectors, scan_strata
from .errors import BudgetExceededError, ConsistencyError, UnsupportedClassError
from .field import enumerate_vectors, get_kernel, vector_rank
from .zeta import class_number, fibre_count_from_zeta, zeta_value

DEFAULT_ORACLE_BUDGET = 10 ** 9


# ---------------------------------------------------------------------------
# the truncated group law
# ---------------------------------------------------------------------------

def _require_supported(alg: FullLieAlgebra, cls: int):
    if cls > 3:
        raise UnsupportedClassError(
            f"group law implemented for classes <= 3 only (got class {cls})"
        )
    if cls >= alg.cfg.p:
        raise UnsupportedClassError(
            f"class {cls} >= p = {alg.cfg.p}; the correspondence needs class < p"
        )


def bch_multiply(u, v, alg: FullLieAlgebra, cls: int | None = None):
    """Group product of coordinate vectors via the truncated series."""
    if cls is None:
        cls = check(alg).cls
    _require_supported(alg, cls)
    cfg = alg.cfg
    out = vec_add(cfg, u, v)
    if cls < 2:
        return out
    comm = alg.bracket(u, v)
    half = cfg.inv(cfg.from_int(2))
    out = vec_add(cfg, out, vec_scale(cfg, half, comm))
    if cls == 3:
        tw = cfg.inv(cfg.from_int(12))
        t1 = alg.bracket(u, comm)   # [u,[u,v]]
        t2 = alg.bracket(v, alg.bracket(v, u))
        out = vec_add(cfg, out, vec_scale(cfg, tw, vec_add(cfg, t1, t2)))
    return out


def group_commutator(u, v, alg: FullLieAlgebra, cls: int | None = None):
    """u^-1 v^-1 u v; collapses to the bracket for class <= 2."""
    if cls is None:
        cls = check(alg).cls
    _require_supported(alg, cls)
    if cls <= 2:
        return alg.bracket(u, v)
    cfg = alg.cfg
    acc = bch_multiply(vec_neg(cfg, u), vec_neg(cfg, v), alg, cls)
    acc = bch_multiply(acc, u, alg, cls)
    return bch_multiply(acc, v, alg, cls)


@dataclass(frozen=True)
class LazardGroup:
    """Convenience wrapper binding an algebra to its validated group data."""

    alg: FullLieAlgebra
    report: ValidationReport = field(compare=False)

    @classmethod
    def of(cls, alg: FullLieAlgebra) -> "LazardGroup":
        rep = check(alg)
        _require_supported(alg, rep.cls)
        return cls(alg=alg, report=rep)

    @property
    def cls(self) -> int:
        return self.report.cls

    @property
    def order(self) -> int:
        return self.alg.cfg.q ** self.alg.n

    def identity(self):
        return vec_zero(self.alg.n)

    def multiply(self, u, v):
        return bch_multiply(u, v, self.alg, self.cls)

    def inverse(self, u):
        return vec_neg(self.alg.cfg, u)

    def commutator(self, u, v):
        return group_commutator(u, v, self.alg, self.cls)

    def conjugate(self, x, g):
        if self.cls <= 2:
            return vec_add(self.alg.cfg, x, self.alg.bracket(x, g))
        acc = self.multiply(self.inverse(g), x)
        return self.multiply(acc, g)


# ---------------------------------------------------------------------------
# transversal of the centre
# ---------------------------------------------------------------------------

def _complement_indices(alg: FullLieAlgebra, rep: ValidationReport) -> tuple[int, ...]:
    pivots = set(rep.center_pivots)
    return tuple(i for i in range(alg.n) if i not in pivots)


def _transversal(alg: FullLieAlgebra, rep: ValidationReport):
    """Coset representatives of Z(G): vectors supported off the centre pivots."""
    comp = _complement_indices(alg, rep)
    for vals in enumerate_vectors(alg.cfg, len(comp)):
        v = [0] * alg.n
        for idx, val in zip(comp, vals):
            v[idx] = val
        yield tuple(v)


# ---------------------------------------------------------------------------
# fibre tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FibreTable:
    """Exact counts N_t(g) for every g in the derived subgroup (f-basis
    coordinates); values over all of G sum to |G|^(2t)."""

    t: int
    counts: dict[tuple[int, ...], int]
    evaluated_pairs: int

    def total(self) -> int:
        return sum(self.counts.values())


def _count_n1_class2(alg: FullLieAlgebra, rep: ValidationReport, budget: int) -> tuple[np.ndarray, int]:
    """Vectorized t=1 counts by g-rank for class-2 algebras."""
    cfg = alg.cfg
    comp = _complement_indices(alg, rep)
    b = len(rep.derived_basis)
    pivots = rep.derived_pivots
    q = cfg.q
    size = q ** len(comp)
    if size * size > budget:
        raise BudgetExceededError(
            f"oracle needs {size}^2 = {size * size} pair evaluations, budget is {budget}"
        )
    kernel = get_kernel(cfg)
    lexrank = np.array([cfg.lex_rank(a) for a in range(q)], dtype=np.int64)

    # transversal as a matrix (size x n)
    tmat = np.zeros((size, alg.n), dtype=np.int64)
    for r, vals in enumerate(enumerate_vectors(cfg, len(comp))):
        for idx, val in zip(comp, vals):
            tmat[r, idx] = val

    counts = np.zeros(q ** b, dtype=np.int64)
    for u in tmat:
        # [u, v] is linear in v: precompute w_j = [u, e_j] restricted to the
        # derived-basis pivot coordinates
        w = [[0] * b for _ in range(alg.n)]
        active = []
        for j in range(alg.n):
            wj = alg.bracket_with_basis(tuple(int(x) for x in u), j)
            coords = [wj[pc] for pc in pivots]
            if any(coords):
                w[j] = coords
                active.append(j)
        key = np.zeros(size, dtype=np.int64)
        for m in range(b):
            acc = np.zeros(size, dtype=np.int64)
            nonzero = False
            for j in active:
                c = w[j][m]
                if c:
                    acc = kernel.add(acc, kernel.mul_scalar(int(c), tmat[:, j]))
                    nonzero = True
            if nonzero:
                key = key * q + lexrank[acc]
            else:
                key = key * q
        counts += np.bincount(key, minlength=q ** b)
    return counts, size * size


def _count_n1_generic(alg: FullLieAlgebra, rep: ValidationReport, budget: int) -> tuple[np.ndarray, int]:
    """Pure-Python t=1 counts by g-rank (any supported class)."""
    cfg = alg.cfg
    cls = rep.cls
    comp = _complement_indices(alg, rep)
    q = cfg.q
    b = len(rep.derived_basis)
    size = q ** len(comp)
    if size * size > budget:
        raise BudgetExceededError(
            f"oracle needs {size}^2 = {size * size} pair evaluations, budget is {budget}"
        )
    counts = np.zeros(q ** b, dtype=np.int64)
    transversal = list(_transversal(alg, rep))
    for u in transversal:
        for v in transversal:
            c = group_commutator(u, v, alg, cls)
            coeffs = in_span(cfg, rep.derived_basis, rep.derived_pivots, c)
            if coeffs is None:
                raise ConsistencyError(
                    "a commutator value escaped the derived subalgebra"
                )  # pragma: no cover
            counts[vector_rank(cfg, coeffs)] += 1
    return counts, size * size


def brute_fibre_tables(
    alg: FullLieAlgebra,
    t_max: int,
    budget: int = DEFAULT_ORACLE_BUDGET,
    report: ValidationReport | None = None,
) -> tuple[FibreTable, ...]:
    """Exact N_t for t = 1 .. t_max; the t = 1 pass is done once, higher t
    values come from convolution over the derived subgroup."""
    if t_max < 1:
        raise ConsistencyError(f"t_max must be >= 1, got {t_max}")
    rep = report if report is not None else check(alg)
    _require_supported(alg, rep.cls)
    cfg = alg.cfg
    q = cfg.q
    b = len(rep.derived_basis)
    zdim = len(rep.center_basis)

    if rep.cls <= 2:
        n1, pairs = _count_n1_class2(alg, rep, budget)
    else:
        n1, pairs = _count_n1_generic(alg, rep, budget)
    n1 = [int(c) * q ** (2 * zdim) for c in n1]

    # G' has exponent p and class 1, so it is the additive group of F_q^b:
    # convolve t-1 times over vector addition (python ints: counts overflow
    # int64 quickly)
    vectors = list(enumerate_vectors(cfg, b))
    add_rank = None
    if t_max > 1:
        add_rank = [
            [vector_rank(cfg, vec_add(cfg, h, d)) for d in vectors] for h in vectors
        ]
    tables = []
    cur = list(n1)
    for t in range(1, t_max + 1):
        if t > 1:
            nxt = [0] * len(cur)
            for r1, c1 in enumerate(cur):
                if not c1:
                    continue
                row = add_rank[r1]
                for r2, c2 in enumerate(n1):
                    if c2:
                        nxt[row[r2]] += c1 * c2
            cur = nxt
        counts = {v: cur[r] for r, v in enumerate(vectors)}
        table = FibreTable(t=t, counts=counts, evaluated_pairs=pairs)
        if table.total() != (q ** alg.n) ** (2 * t):
            raise ConsistencyError(
                f"oracle mass check failed: {table.total()} != |G|^{2 * t}"
            )  # pragma: no cover
        tables.append(table)
    return tuple(tables)


def brute_fibres(
    alg: FullLieAlgebra,
    t: int = 1,
    budget: int = DEFAULT_ORACLE_BUDGET,
    report: ValidationReport | None = None,
) -> FibreTable:
    return brute_fibre_tables(alg, t, budget=budget, report=report)[-1]


# ---------------------------------------------------------------------------
# conjugacy classes
# ---------------------------------------------------------------------------

def _encode(cfg, x) -> int:
    code = 0
    for c in reversed(x):
        code = code * cfg.q + c
    return code


def conjugacy_count(
    alg: FullLieAlgebra,
    budget: int = DEFAULT_ORACLE_BUDGET,
    report: ValidationReport | None = None,
) -> int:
    """Number of conjugacy classes by an orbit sweep with a visited mask."""
    rep = report if report is not None else check(alg)
    _require_supported(alg, rep.cls)
    cfg = alg.cfg
    n, q = alg.n, cfg.q
    order = q ** n
    zdim = len(rep.center_basis)
    cost = order if rep.cls <= 2 else order * q ** (n - zdim)
    if cost > budget:
        raise BudgetExceededError(f"conjugacy sweep cost {cost} exceeds budget {budget}")

    visited = np.zeros(order, dtype=bool)
    classes = 0
    group = LazardGroup(alg=alg, report=rep)
    transversal = None
    for code in range(order):
        if visited[code]:
            continue
        classes += 1
        x = []
        c = code
        for _ in range(n):
            c, d = divmod(c, q)
            x.append(d)
        x = tuple(x)
        if rep.cls <= 2:
            # orbit = x + [x, g]: an affine subspace over the image of ad_x
            rows = [alg.bracket_with_basis(x, j) for j in range(n)]
            basis, _ = rref(cfg, rows)
            for coeffs in itertools.product(range(q), repeat=len(basis)):
                v = x
                for cf, row in zip(coeffs, basis):
                    if cf:
                        v = vec_add(cfg, v, vec_scale(cfg, cf, row))
                visited[_encode(cfg, v)] = True
        else:
            if transversal is None:
                transversal = list(_transversal(alg, rep))
            for g in transversal:
                visited[_encode(cfg, group.conjugate(x, g))] = True
    return classes


# ---------------------------------------------------------------------------
# formula side vs oracle comparison
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Mismatch:
    t: int
    g: tuple[int, ...]
    formula: int
    oracle: int


@dataclass(frozen=True)
class ComparisonReport:
    t_values: tuple[int, ...]
    group_order: int
    class_number_formula: int
    class_number_oracle: int
    checked: int
    mismatches: tuple[Mismatch, ...]
    evaluated_pairs: int

    @property
    def ok(self) -> bool:
        return not self.mismatches and self.class_number_formula == self.class_number_oracle


def compare(
    alg: FullLieAlgebra,
    t_max: int = 2,
    oracle_budget: int = DEFAULT_ORACLE_BUDGET,
    enum_budget: int | None = None,
    workers: int = 1,
) -> ComparisonReport:
    """Run both routes and compare every N_t(g) plus the class number."""
    rep = check(alg)
    pres = reduce_presentation(alg, rep)
    scan = scan_strata(
        pres,
        budget=DEFAULT_ENUM_BUDGET if enum_budget is None else enum_budget,
        workers=workers,
    )
    cfg = alg.cfg

    mismatches = []
    checked = 0
    kv_by_g = {
        g: kv_vectors(pres, g, scan=scan) for g in enumerate_vectors(cfg, pres.b)
    }
    tables = brute_fibre_tables(alg, t_max, budget=oracle_budget, report=rep)
    pairs = tables[0].evaluated_pairs
    for table in tables:
        for g, oracle_n in table.counts.items():
            formula_n = fibre_count_from_zeta(
                pres, zeta_value(pres, kv_by_g[g], 2 * table.t - 1).total, table.t
            )
            checked += 1
            if formula_n != oracle_n:
                mismatches.append(
                    Mismatch(t=table.t, g=g, formula=formula_n, oracle=oracle_n)
                )

    k_formula = class_number(pres, profile=scan.profile)
    k_oracle = conjugacy_count(alg, budget=oracle_budget, report=rep)
    return ComparisonReport(
        t_values=tuple(range(1, t_max + 1)),
        group_order=cfg.q ** alg.n,
        class_number_formula=k_formula,
        class_number_oracle=k_oracle,
        checked=checked,
        mismatches=tuple(mismatches),
        evaluated_pairs=pairs,
    )
