"""Rank strata of the commutator matrix over F_q^b and the K/V counts.

The commutator matrix B(Y) is the a x a skew-symmetric matrix of linear
forms with B(Y)_ij = sum_m lambda_ij^m Y_m.  For every point y in F_q^b
the evaluated matrix has even rank 2i; the scan buckets all q^b points by
half-rank i.  For a group element g (coordinates in the f-basis), K^i(g)
counts stratum-i points on the hyperplane g.y = 0 and V^i(g) = R^i - K^i(g)
counts the rest.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import LiePresentation
from .errors import (
    BudgetExceededError,
    ConsistencyError,
    DimensionMismatchError,
    InputError,
    NotSkewError,
)
from .field import FieldConfig, get_kernel, enumerate_vectors, vector_matrix

DEFAULT_ENUM_BUDGET = 10 ** 8


# ---------------------------------------------------------------------------
# scalar ops used by the per-point elimination loop
# ---------------------------------------------------------------------------

class _ScalarOps:
    """mod-p lambdas for prime fields, table lookups for small extensions."""

    __slots__ = ("add", "sub", "mul", "neg", "inv")

    def __init__(self, cfg: FieldConfig):
        if cfg.k == 1:
            p = cfg.p
            self.add = lambda a, b: (a + b) % p
            self.sub = lambda a, b: (a - b) % p
            self.mul = lambda a, b: (a * b) % p
            self.neg = lambda a: (-a) % p
            self.inv = lambda a: pow(a, p - 2, p)
        elif cfg.q <= 4096:
            q = cfg.q
            add = [[cfg.add(x, y) for y in range(q)] for x in range(q)]
            mul = [[cfg.mul(x, y) for y in range(q)] for x in range(q)]
            neg = [cfg.neg(x) for x in range(q)]
            inv = [0] + [cfg.inv(x) for x in range(1, q)]
            self.add = lambda a, b: add[a][b]
            self.sub = lambda a, b: add[a][neg[b]]
            self.mul = lambda a, b: mul[a][b]
            self.neg = lambda a: neg[a]
            self.inv = lambda a: inv[a]
        else:
            self.add, self.sub = cfg.add, cfg.sub
            self.mul, self.neg, self.inv = cfg.mul, cfg.neg, cfg.inv


@lru_cache(maxsize=16)
def _scalar_ops(cfg: FieldConfig) -> _ScalarOps:
    return _ScalarOps(cfg)


# ---------------------------------------------------------------------------
# the commutator matrix
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CommutatorMatrix:
    a: int
    b: int
    entries: tuple[tuple[tuple[int, ...], ...], ...]  # a x a of b-length coeff vectors

    def evaluate(self, cfg: FieldConfig, y) -> list[list[int]]:
        """B(y) as a dense a x a matrix of element indices."""
        if len(y) != self.b:
            raise DimensionMismatchError(f"expected point in F_q^{self.b}")
        ops = _scalar_ops(cfg)
        out = [[0] * self.a for _ in range(self.a)]
        for i in range(self.a):
            for j in range(self.a):
                acc = 0
                row = self.entries[i][j]
                for m in range(self.b):
                    c = row[m]
                    if c and y[m]:
                        acc = ops.add(acc, ops.mul(c, y[m]))
                out[i][j] = acc
        return out


def build_matrix(pres: LiePresentation) -> CommutatorMatrix:
    a, b, cfg = pres.a, pres.b, pres.cfg
    rows = []
    for i in range(a):
        row = []
        for j in range(a):
            row.append(tuple(pres.lam_vec(i, j)))
        rows.append(tuple(row))
    return CommutatorMatrix(a=a, b=b, entries=tuple(rows))


# ---------------------------------------------------------------------------
# exact rank of a skew-symmetric matrix
# ---------------------------------------------------------------------------

def matrix_rank(mat, cfg: FieldConfig) -> int:
    """Gaussian elimination rank of a dense list-of-lists matrix."""
    ops = _scalar_ops(cfg)
    work = [row[:] for row in mat]
    nrows = len(work)
    ncols = len(work[0]) if nrows else 0
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, nrows):
            if work[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv = ops.inv(work[rank][col])
        work[rank] = [ops.mul(inv, x) for x in work[rank]]
        for r in range(nrows):
            if r != rank and work[r][col]:
                c = work[r][col]
                work[r] = [ops.sub(x, ops.mul(c, y)) for x, y in zip(work[r], work[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank


def rank_skew(mat, cfg: FieldConfig, check: bool = True) -> int:
    """Rank of a skew-symmetric matrix; guaranteed even."""
    a = len(mat)
    if check:
        for i in range(a):
            if mat[i][i] != 0:
                raise NotSkewError(f"nonzero diagonal entry at ({i},{i})")
            for j in range(i + 1, a):
                if mat[i][j] != cfg.neg(mat[j][i]):
                    raise NotSkewError(f"entry ({i},{j}) is not the negative of ({j},{i})")
    r = matrix_rank(mat, cfg)
    if r % 2:
        raise ConsistencyError("skew-symmetric matrix produced odd rank")  # pragma: no cover
    return r


# ---------------------------------------------------------------------------
# the stratum scan over F_q^b
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RankProfile:
    counts: tuple[int, ...]  # counts[i] = #{y : rk B(y) = 2i}, i = 0 .. floor(a/2)
    q: int
    b: int

    @property
    def total(self) -> int:
        return self.q ** self.b


def _halfranks_for_range(pres: LiePresentation, start: int, stop: int) -> np.ndarray:
    """Half-ranks of B(y) for the y-points with enumeration ranks [start, stop)."""
    cfg = pres.cfg
    mat = build_matrix(pres)
    ops = _scalar_ops(cfg)
    a, b = mat.a, mat.b
    # sparse form list: entries above the diagonal only
    forms = []
    for i in range(a):
        for j in range(i + 1, a):
            terms = [(m, c) for m, c in enumerate(mat.entries[i][j]) if c]
            if terms:
                forms.append((i, j, terms))
    out = np.empty(stop - start, dtype=np.uint8)
    points = itertools.islice(enumerate_vectors(cfg, b), start, stop)
    neg = ops.neg
    for pos, y in enumerate(points):
        rows = [[0] * a for _ in range(a)]
        for i, j, terms in forms:
            acc = 0
            for m, c in terms:
                ym = y[m]
                if ym:
                    acc = ops.add(acc, ops.mul(c, ym))
            if acc:
                rows[i][j] = acc
                rows[j][i] = neg(acc)
        out[pos] = matrix_rank(rows, cfg) // 2
    return out


def _scan_chunk(args):
    pres, start, stop = args
    return _halfranks_for_range(pres, start, stop)


@dataclass(frozen=True)
class StratumScan:
    """One pass over F_q^b: per-point half-ranks plus the aggregated profile."""

    pres: LiePresentation
    strata: np.ndarray       # uint8, length q^b, indexed by enumeration rank
    ymat: np.ndarray         # (q^b, b) element indices in enumeration order
    profile: RankProfile


def scan_strata(
    pres: LiePresentation,
    budget: int = DEFAULT_ENUM_BUDGET,
    workers: int = 1,
) -> StratumScan:
    cfg = pres.cfg
    total = cfg.q ** pres.b
    if total > budget:
        raise BudgetExceededError(
            f"enumeration needs q^b = {total} points, budget is {budget}"
        )
    if workers < 1:
        raise InputError(f"workers must be >= 1, got {workers}")
    if workers == 1 or total < 4096:
        strata = _halfranks_for_range(pres, 0, total)
    else:
        step = -(-total // workers)
        ranges = [(pres, s, min(s + step, total)) for s in range(0, total, step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scan_chunk, ranges))
        strata = np.concatenate(parts)
    imax = pres.a // 2
    counts = np.bincount(strata, minlength=imax + 1)
    if len(counts) > imax + 1:
        raise ConsistencyError("half-rank exceeded a/2")  # pragma: no cover
    profile = RankProfile(counts=tuple(int(c) for c in counts), q=cfg.q, b=pres.b)
    if sum(profile.counts) != total or profile.counts[0] < 1:
        raise ConsistencyError("stratum counts do not cover the point space")  # pragma: no cover
    return StratumScan(pres=pres, strata=strata, ymat=vector_matrix(cfg, pres.b), profile=profile)


def rank_profile(
    pres: LiePresentation,
    budget: int = DEFAULT_ENUM_BUDGET,
    workers: int = 1,
    scan: StratumScan | None = None,
) -> RankProfile:
    if scan is not None:
        return scan.profile
    return scan_strata(pres, budget=budget, workers=workers).profile


# ---------------------------------------------------------------------------
# K/V vectors and the classification of group elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KVVectors:
    g: tuple[int, ...]
    K: tuple[int, ...]
    V: tuple[int, ...]


@dataclass(frozen=True)
class KVClass:
    rep: tuple[int, ...]     # first representative in enumeration order
    K: tuple[int, ...]
    V: tuple[int, ...]
    multiplicity: int


def _dot_all(scan: StratumScan, g) -> np.ndarray:
    """g . y for every enumerated y, vectorized."""
    kernel = get_kernel(scan.pres.cfg)
    total = scan.ymat.shape[0]
    acc = np.zeros(total, dtype=np.int64)
    for m, gm in enumerate(g):
        if gm:
            acc = kernel.add(acc, kernel.mul_scalar(int(gm), scan.ymat[:, m]))
    return acc


def _k_vector(scan: StratumScan, g) -> tuple[int, ...]:
    imax = scan.pres.a // 2
    mask = _dot_all(scan, g) == 0
    counts = np.bincount(scan.strata[mask], minlength=imax + 1)
    return tuple(int(c) for c in counts)


def kv_vectors(
    pres: LiePresentation,
    g,
    scan: StratumScan | None = None,
    budget: int = DEFAULT_ENUM_BUDGET,
    workers: int = 1,
) -> KVVectors:
    g = tuple(int(x) for x in g)
    if len(g) != pres.b:
        raise DimensionMismatchError(
            f"g must have {pres.b} coordinates in the derived-subalgebra basis"
        )
    if any(x < 0 or x >= pres.cfg.q for x in g):
        raise InputError(f"g coordinates must be element indices in [0, {pres.cfg.q})")
    if scan is None:
        scan = scan_strata(pres, budget=budget, workers=workers)
    R = scan.profile.counts
    if not any(g):
        return KVVectors(g=g, K=R, V=(0,) * len(R))
    K = _k_vector(scan, g)
    V = tuple(r - k for r, k in zip(R, K))
    if any(v < 0 for v in V):
        raise ConsistencyError("K exceeded the stratum count")  # pragma: no cover
    return KVVectors(g=g, K=K, V=V)


def classify_elements(
    pres: LiePresentation,
    scan: StratumScan | None = None,
    budget: int = DEFAULT_ENUM_BUDGET,
    workers: int = 1,
) -> tuple[KVClass, ...]:
    """Partition the nonzero g in F_q^b by their KV vectors.

    Classes come back sorted by their first representative's enumeration
    rank; multiplicities add up to q^b - 1.  Quadratic in q^b.
    """
    if scan is None:
        scan = scan_strata(pres, budget=budget, workers=workers)
    R = scan.profile.counts
    total = scan.ymat.shape[0]
    groups: dict[tuple[int, ...], list] = {}
    order: list[tuple[int, ...]] = []
    for rank in range(1, total):
        g = tuple(int(x) for x in scan.ymat[rank])
        K = _k_vector(scan, g)
        if K in groups:
            groups[K][1] += 1
        else:
            groups[K] = [g, 1]
            order.append(K)
    out = []
    for K in order:
        rep, mult = groups[K]
        V = tuple(r - k for r, k in zip(R, K))
        out.append(KVClass(rep=rep, K=K, V=V, multiplicity=mult))
    if sum(c.multiplicity for c in out) != total - 1:
        raise ConsistencyError("class multiplicities do not cover F_q^b - 0")  # pragma: no cover
    return tuple(out)
