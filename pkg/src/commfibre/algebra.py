"""Finite nilpotent Lie algebras over F_q and their commutator data.

A full algebra is given by structure constants on a chosen basis; the
reduction step extracts the data that drives everything downstream: a
complement basis e for g/z(g), an echelon basis f for the derived
subalgebra g', and the constants lambda with [e_i, e_j] = sum lambda^m f_m.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    AbelianAlgebraError,
    BadParamError,
    ClassTooLargeError,
    ConsistencyError,
    InputError,
    JacobiViolationError,
    NotNilpotentError,
    UnknownBuiltinError,
)
from .field import FieldConfig


# ---------------------------------------------------------------------------
# small exact linear algebra over F_q (vectors are tuples of element indices)
# ---------------------------------------------------------------------------

def vec_zero(n: int) -> tuple[int, ...]:
    return (0,) * n


def vec_add(cfg: FieldConfig, u, v):
    return tuple(cfg.add(a, b) for a, b in zip(u, v))


def vec_neg(cfg: FieldConfig, u):
    return tuple(cfg.neg(a) for a in u)


def vec_scale(cfg: FieldConfig, c: int, u):
    return tuple(cfg.mul(c, a) for a in u)


def rref(cfg: FieldConfig, rows) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    """Reduced row echelon form of the span of ``rows``.

    Returns (basis_rows, pivot_columns); the output is the canonical RREF
    of the row space, so pivot columns always prefer the earliest indices.
    """
    work = [list(r) for r in rows if any(r)]
    ncols = len(work[0]) if work else 0
    basis: list[list[int]] = []
    pivots: list[int] = []
    for row in work:
        # reduce against current basis
        for bi, pc in enumerate(pivots):
            c = row[pc]
            if c:
                row = [cfg.sub(x, cfg.mul(c, y)) for x, y in zip(row, basis[bi])]
        if not any(row):
            continue
        pc = next(i for i, x in enumerate(row) if x)
        inv = cfg.inv(row[pc])
        row = [cfg.mul(inv, x) for x in row]
        # clear the new pivot column in existing rows
        for bi in range(len(basis)):
            c = basis[bi][pc]
            if c:
                basis[bi] = [cfg.sub(x, cfg.mul(c, y)) for x, y in zip(basis[bi], row)]
        basis.append(row)
        pivots.append(pc)
    order = sorted(range(len(pivots)), key=lambda i: pivots[i])
    basis = [tuple(basis[i]) for i in order]
    pivots_sorted = tuple(pivots[i] for i in order)
    return tuple(basis), pivots_sorted


def in_span(cfg: FieldConfig, basis, pivots, v):
    """Coefficients of v w.r.t. an RREF basis, or None if v is outside."""
    coeffs = tuple(v[pc] for pc in pivots)
    rec = vec_zero(len(v))
    for c, row in zip(coeffs, basis):
        if c:
            rec = vec_add(cfg, rec, vec_scale(cfg, c, row))
    return coeffs if rec == tuple(v) else None


def nullspace(cfg: FieldConfig, rows, ncols: int):
    """RREF basis of {v : M v = 0} for the matrix with the given rows."""
    basis, pivots = rref(cfg, rows)
    free = [j for j in range(ncols) if j not in pivots]
    out = []
    for j in free:
        v = [0] * ncols
        v[j] = cfg.one
        for row, pc in zip(basis, pivots):
            v[pc] = cfg.neg(row[j])
        out.append(tuple(v))
    return rref(cfg, out) if out else ((), ())


# ---------------------------------------------------------------------------
# the algebra itself
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FullLieAlgebra:
    """Structure constants c_ij on basis ``names``; only i < j stored."""

    cfg: FieldConfig
    names: tuple[str, ...]
    brackets: tuple[tuple[int, int, tuple[int, ...]], ...]  # (i, j, coeff vector)

    def __post_init__(self):
        n = len(self.names)
        if n == 0:
            raise InputError("algebra needs at least one basis vector")
        if len(set(self.names)) != n:
            raise InputError("duplicate generator names")
        seen = set()
        for i, j, vec in self.brackets:
            if not (0 <= i < j < n):
                raise InputError(f"bracket indices out of range: ({i}, {j})")
            if (i, j) in seen:
                raise InputError(f"duplicate bracket ({i}, {j})")
            seen.add((i, j))
            if len(vec) != n:
                raise InputError("bracket coefficient vector has wrong length")
        object.__setattr__(self, "_table", {(i, j): vec for i, j, vec in self.brackets})

    @property
    def n(self) -> int:
        return len(self.names)

    def bracket_vec(self, i: int, j: int) -> tuple[int, ...]:
        """[e_i, e_j] as a coefficient vector (antisymmetric completion)."""
        if i == j:
            return vec_zero(self.n)
        if i < j:
            return self._table.get((i, j), vec_zero(self.n))
        return vec_neg(self.cfg, self._table.get((j, i), vec_zero(self.n)))

    def bracket(self, u, v) -> tuple[int, ...]:
        """Bilinear extension [u, v] for coefficient vectors u, v."""
        cfg = self.cfg
        acc = [0] * self.n
        for i, j, vec in self.brackets:
            c = cfg.sub(cfg.mul(u[i], v[j]), cfg.mul(u[j], v[i]))
            if c:
                for m, w in enumerate(vec):
                    if w:
                        acc[m] = cfg.add(acc[m], cfg.mul(c, w))
        return tuple(acc)

    def bracket_with_basis(self, w, m: int) -> tuple[int, ...]:
        """[w, e_m] for a coefficient vector w."""
        cfg = self.cfg
        acc = [0] * self.n
        for l, wl in enumerate(w):
            if wl:
                bv = self.bracket_vec(l, m)
                for t, c in enumerate(bv):
                    if c:
                        acc[t] = cfg.add(acc[t], cfg.mul(wl, c))
        return tuple(acc)


def from_relations(cfg: FieldConfig, names, relations) -> FullLieAlgebra:
    """Build an algebra from {(name_i, name_j): {name_m: coeff}} relations.

    Integer coefficients embed through the prime subfield; coefficients may
    also be element indices produced by cfg.element.
    """
    names = tuple(names)
    index = {nm: i for i, nm in enumerate(names)}
    table: dict[tuple[int, int], list[int]] = {}
    for (na, nb), terms in relations.items():
        if na not in index or nb not in index:
            raise InputError(f"unknown generator in relation [{na},{nb}]")
        i, j = index[na], index[nb]
        if i == j:
            raise InputError(f"self-bracket [{na},{na}]")
        vec = table.setdefault((min(i, j), max(i, j)), [0] * len(names))
        sign_flip = i > j
        for nm, coeff in terms.items():
            if nm not in index:
                raise InputError(f"unknown generator {nm!r} in relation value")
            c = cfg.from_int(coeff) if isinstance(coeff, int) else coeff
            if sign_flip:
                c = cfg.neg(c)
            vec[index[nm]] = cfg.add(vec[index[nm]], c)
    brackets = tuple(
        (i, j, tuple(vec)) for (i, j), vec in sorted(table.items()) if any(vec)
    )
    return FullLieAlgebra(cfg, names, brackets)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ValidationReport:
    jacobi_ok: bool
    jacobi_violation: tuple[int, int, int] | None
    nilpotent: bool
    cls: int | None                      # nilpotency class, None if not nilpotent
    lcs_dims: tuple[int, ...]            # dims of the lower central series
    center_basis: tuple[tuple[int, ...], ...]
    center_pivots: tuple[int, ...]
    derived_basis: tuple[tuple[int, ...], ...]
    derived_pivots: tuple[int, ...]


def validate(alg: FullLieAlgebra) -> ValidationReport:
    """Diagnostic pass: Jacobi, nilpotency class, center, derived subalgebra."""
    cfg, n = alg.cfg, alg.n

    jacobi_ok, violation = True, None
    for i in range(n):
        for j in range(i + 1, n):
            cij = alg.bracket_vec(i, j)
            for k in range(j + 1, n):
                t1 = alg.bracket_with_basis(cij, k)
                t2 = alg.bracket_with_basis(alg.bracket_vec(j, k), i)
                t3 = alg.bracket_with_basis(alg.bracket_vec(k, i), j)
                total = vec_add(cfg, vec_add(cfg, t1, t2), t3)
                if any(total):
                    jacobi_ok, violation = False, (i, j, k)
                    break
            if not jacobi_ok:
                break
        if not jacobi_ok:
            break

    # derived subalgebra = span of all bracket images
    derived_rows = [vec for _, _, vec in alg.brackets]
    derived_basis, derived_pivots = rref(cfg, derived_rows) if derived_rows else ((), ())

    # lower central series
    dims = [n]
    cur_basis = derived_basis
    while True:
        dims.append(len(cur_basis))
        if not cur_basis:
            nilpotent, cls = True, len(dims) - 1
            break
        nxt_rows = [alg.bracket_with_basis(v, m) for v in cur_basis for m in range(n)]
        nxt_basis, _ = rref(cfg, nxt_rows)
        if len(nxt_basis) >= len(cur_basis):
            nilpotent, cls = False, None
            break
        cur_basis = nxt_basis

    # center: v with [v, e_m] = 0 for all m
    rows = []
    for i in range(n):
        col = [alg.bracket_vec(i, m) for m in range(n)]
        rows.append(col)
    # assemble as (n*n) x n system: row (m, t) has entry bracket_vec(i, m)[t] at i
    sys_rows = []
    for m in range(n):
        for t in range(n):
            sys_rows.append(tuple(rows[i][m][t] for i in range(n)))
    center_basis, center_pivots = nullspace(cfg, sys_rows, n)

    return ValidationReport(
        jacobi_ok=jacobi_ok,
        jacobi_violation=violation,
        nilpotent=nilpotent,
        cls=cls,
        lcs_dims=tuple(dims),
        center_basis=center_basis,
        center_pivots=center_pivots,
        derived_basis=derived_basis,
        derived_pivots=derived_pivots,
    )


def check(alg: FullLieAlgebra) -> ValidationReport:
    """validate() that raises on anything fatal for downstream use."""
    rep = validate(alg)
    if not rep.jacobi_ok:
        i, j, k = rep.jacobi_violation
        names = alg.names
        raise JacobiViolationError(
            f"Jacobi identity fails on ({names[i]}, {names[j]}, {names[k]})"
        )
    if not rep.nilpotent:
        raise NotNilpotentError("lower central series does not reach zero")
    if rep.cls >= alg.cfg.p:
        raise ClassTooLargeError(
            f"nilpotency class {rep.cls} >= p = {alg.cfg.p}; the rank-stratum "
            "correspondence requires class < p"
        )
    return rep


# ---------------------------------------------------------------------------
# reduction to commutator data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LiePresentation:
    cfg: FieldConfig
    n: int
    a: int
    b: int
    cls: int
    lam: tuple[tuple[int, int, tuple[int, ...]], ...]  # (i, j, coeffs in f-basis), i < j < a
    e_indices: tuple[int, ...]                         # which standard vectors represent e
    f_basis: tuple[tuple[int, ...], ...]               # RREF basis of g' (full coordinates)
    f_pivots: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "_lam_table", {(i, j): v for i, j, v in self.lam})

    def lam_vec(self, i: int, j: int) -> tuple[int, ...]:
        if i == j:
            return vec_zero(self.b)
        if i < j:
            return self._lam_table.get((i, j), vec_zero(self.b))
        return vec_neg(self.cfg, self._lam_table.get((j, i), vec_zero(self.b)))


def reduce_presentation(alg: FullLieAlgebra, report: ValidationReport | None = None) -> LiePresentation:
    """Extract (a, b, lambda) with deterministic earliest-index basis choices."""
    rep = report if report is not None else check(alg)
    cfg, n = alg.cfg, alg.n
    b = len(rep.derived_basis)
    if b == 0:
        raise AbelianAlgebraError("abelian algebra: derived subalgebra is zero")
    center_pivots = set(rep.center_pivots)
    e_indices = tuple(i for i in range(n) if i not in center_pivots)
    a = len(e_indices)
    if a < 2:
        raise ConsistencyError("non-abelian algebra with a < 2")  # pragma: no cover
    lam = []
    for ii in range(a):
        for jj in range(ii + 1, a):
            w = alg.bracket_vec(e_indices[ii], e_indices[jj])
            coeffs = in_span(cfg, rep.derived_basis, rep.derived_pivots, w)
            if coeffs is None:
                raise ConsistencyError(
                    "bracket image escapes the derived subalgebra"
                )  # pragma: no cover
            if any(coeffs):
                lam.append((ii, jj, coeffs))
    return LiePresentation(
        cfg=cfg,
        n=n,
        a=a,
        b=b,
        cls=rep.cls,
        lam=tuple(lam),
        e_indices=e_indices,
        f_basis=rep.derived_basis,
        f_pivots=rep.derived_pivots,
    )


# ---------------------------------------------------------------------------
# built-in example algebras
# ---------------------------------------------------------------------------

def _heisenberg(cfg: FieldConfig, alpha=None) -> FullLieAlgebra:
    return from_relations(cfg, ("x1", "x2", "y1"), {("x1", "x2"): {"y1": 1}})


def _quadric7(cfg: FieldConfig, alpha=None) -> FullLieAlgebra:
    names = ("x1", "x2", "x3", "x4", "y1", "y2", "y3")
    rel = {
        ("x1", "x3"): {"y1": 1},
        ("x1", "x4"): {"y2": 1},
        ("x2", "x3"): {"y3": 1},
        ("x2", "x4"): {"y1": 1},
    }
    return from_relations(cfg, names, rel)


def _quadric8(cfg: FieldConfig, alpha=None) -> FullLieAlgebra:
    names = ("x1", "x2", "x3", "x4", "y1", "y2", "y3", "y4")
    rel = {
        ("x1", "x3"): {"y1": 1},
        ("x1", "x4"): {"y2": 1},
        ("x2", "x3"): {"y3": 1},
        ("x2", "x4"): {"y4": 1},
    }
    return from_relations(cfg, names, rel)


def _elliptic9(cfg: FieldConfig, alpha=None) -> FullLieAlgebra:
    if cfg.k != 1:
        raise BadParamError("elliptic9 is defined over prime fields only (k = 1)")
    if alpha is None:
        alpha = 1
    alpha = int(alpha) % cfg.p
    if alpha == 0:
        raise BadParamError("elliptic9 needs alpha in F_p^* (alpha != 0 mod p)")
    names = ("x1", "x2", "x3", "x4", "x5", "x6", "y1", "y2", "y3")
    rel = {
        ("x1", "x4"): {"y1": 1},
        ("x1", "x5"): {"y2": 1},
        ("x1", "x6"): {"y3": alpha},
        ("x2", "x4"): {"y3": 1},
        ("x2", "x5"): {"y1": 1},
        ("x2", "x6"): {"y2": 1},
        ("x3", "x4"): {"y3": 1},
        ("x3", "x6"): {"y1": 1},
    }
    return from_relations(cfg, names, rel)


BUILTINS = {
    "heisenberg": (_heisenberg, "3-dim Heisenberg algebra: [x1,x2] = y1", ()),
    "quadric7": (_quadric7, "7-dim class-2 algebra; rank locus is a plane conic", ()),
    "quadric8": (_quadric8, "8-dim class-2 algebra; rank locus is a quadric surface", ()),
    "elliptic9": (_elliptic9, "9-dim class-2 algebra; rank locus is a plane cubic", ("alpha",)),
}


def builtin(name: str, cfg: FieldConfig, alpha=None) -> FullLieAlgebra:
    if name not in BUILTINS:
        raise UnknownBuiltinError(
            f"unknown builtin {name!r}; available: {', '.join(sorted(BUILTINS))}"
        )
    factory, _, _ = BUILTINS[name]
    return factory(cfg, alpha=alpha)


def direct_sum(a: FullLieAlgebra, b: FullLieAlgebra) -> FullLieAlgebra:
    """Direct sum with componentwise brackets (same field required)."""
    if a.cfg != b.cfg:
        raise InputError("direct sum requires both algebras over the same field")
    na = a.n
    names = tuple(f"{nm}_1" for nm in a.names) + tuple(f"{nm}_2" for nm in b.names)
    brackets = [(i, j, vec + vec_zero(b.n)) for i, j, vec in a.brackets]
    brackets += [(i + na, j + na, vec_zero(na) + vec) for i, j, vec in b.brackets]
    return FullLieAlgebra(a.cfg, names, tuple(brackets))
