"""Exact arithmetic in F_q, q = p^k with p an odd prime.

Elements are encoded as integers in [0, q): the element with coordinates
(c_0, ..., c_{k-1}) w.r.t. the power basis of the generator (constant
coefficient first) has index sum(c_i * p^i).  For k = 1 the index is the
residue itself.  The prime subfield therefore always sits at indices
0 .. p-1 and ``one`` is literally 1.

The *reporting/enumeration* order of elements is different: it is the
lexicographic order on coordinate tuples, constant coefficient most
significant.  ``lex_rank`` / ``at_lex_rank`` convert between the two
(they are base-p digit reversals; the identity map when k = 1).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    BudgetExceededError,
    EvenCharacteristicError,
    InputError,
    NotPrimeError,
    ReducibleModulusError,
)

# Largest q for which dense q x q lookup tables are built for the
# vectorized kernels.  2048^2 int32 entries = 16 MiB per table.
TABLE_MAX_Q = 2048


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# dense polynomial arithmetic over F_p (coefficient tuples, constant first)
# ---------------------------------------------------------------------------

def _poly_trim(a: tuple[int, ...]) -> tuple[int, ...]:
    i = len(a)
    while i > 0 and a[i - 1] == 0:
        i -= 1
    return a[:i]


def _poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(tuple(out))


def _poly_mod(a, f, p):
    """Remainder of a modulo the monic polynomial f."""
    a = list(a)
    df = len(f) - 1
    while len(a) > df:
        lead = a[-1] % p
        if lead:
            for i in range(df + 1):
                a[len(a) - df - 1 + i] = (a[len(a) - df - 1 + i] - lead * f[i]) % p
        a.pop()
    return _poly_trim(tuple(a))


def _poly_mulmod(a, b, f, p):
    return _poly_mod(_poly_mul(a, b, p), f, p)


def _poly_powmod(base, e, f, p):
    result = (1,)
    base = _poly_mod(base, f, p)
    while e > 0:
        if e & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def _poly_rem(a, b, p):
    """Remainder of a modulo b (b not necessarily monic)."""
    a = list(_poly_trim(a))
    b = _poly_trim(b)
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) - 1 >= db and a:
        lead = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - db
        for i in range(db + 1):
            a[shift + i] = (a[shift + i] - lead * b[i]) % p
        while a and a[-1] == 0:
            a.pop()
    return _poly_trim(tuple(a))


def _gcd_poly(a, b, p):
    a, b = _poly_trim(a), _poly_trim(b)
    while b:
        a, b = b, _poly_rem(a, b, p)
    return a


def _poly_eval(f, x, p):
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _is_irreducible(f: tuple[int, ...], p: int) -> bool:
    """Irreducibility of a monic polynomial of degree >= 1 over F_p.

    Degrees 2 and 3 are settled by the absence of roots; higher degrees
    use the Frobenius-power gcd criterion.
    """
    k = len(f) - 1
    if k == 1:
        return True
    if k <= 3:
        return all(_poly_eval(f, x, p) != 0 for x in range(p))
    x = (0, 1)
    for d in _prime_factors(k):
        h = _poly_powmod(x, p ** (k // d), f, p)
        diff = _poly_trim(tuple((hc - xc) % p for hc, xc in itertools.zip_longest(h, x, fillvalue=0)))
        if len(_gcd_poly(diff, f, p)) != 1:
            return False
    frob = _poly_powmod(x, p ** k, f, p)
    return frob == x


# ---------------------------------------------------------------------------
# field configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldConfig:
    """The finite field F_q, q = p^k.  Immutable; safe to share."""

    p: int
    k: int
    modulus: tuple[int, ...]  # k+1 coefficients, constant first, monic

    @property
    def q(self) -> int:
        return self.p ** self.k

    # -- element codec ------------------------------------------------------

    def coords(self, a: int) -> tuple[int, ...]:
        """Coordinates w.r.t. the power basis, constant coefficient first."""
        cs = []
        for _ in range(self.k):
            a, c = divmod(a, self.p)
            cs.append(c)
        return tuple(cs)

    def element(self, coords) -> int:
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.k:
            raise InputError(f"expected {self.k} coordinates, got {len(coords)}")
        if any(c < 0 or c >= self.p for c in coords):
            raise InputError(f"coordinate out of range [0,{self.p}): {coords}")
        a = 0
        for c in reversed(coords):
            a = a * self.p + c
        return a

    def from_int(self, m: int) -> int:
        """Embed an integer via the prime subfield."""
        return m % self.p

    # -- scalar arithmetic on element indices -------------------------------

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        p = self.p
        out = 0
        mult = 1
        for _ in range(self.k):
            out += ((a % p + b % p) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        p = self.p
        out = 0
        mult = 1
        for _ in range(self.k):
            out += ((-(a % p)) % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        prod = _poly_mulmod(self.coords(a), self.coords(b), self.modulus, self.p)
        return self.element(prod + (0,) * (self.k - len(prod)))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("division by zero in F_q")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        out = self.one
        base, e = a, self.q - 2
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def eq(self, a: int, b: int) -> bool:
        return a == b

    def elements(self):
        """All element indices (natural index order)."""
        return range(self.q)

    # -- reporting / enumeration order --------------------------------------

    def lex_rank(self, a: int) -> int:
        """Rank of an element in coordinate-lex order (constant coeff first)."""
        r = 0
        for c in self.coords(a):
            r = r * self.p + c
        return r

    def at_lex_rank(self, r: int) -> int:
        cs = []
        for _ in range(self.k):
            r, c = r // self.p, r % self.p
            cs.append(c)
        return self.element(tuple(reversed(cs)))



def make_field(p: int, k: int = 1, modulus=None) -> FieldConfig:
    """Build F_{p^k}; picks the lex-smallest irreducible modulus when omitted.

    The lex order on monic degree-k candidates compares coefficient tuples
    constant term first.
    """
    if not is_prime(p):
        raise NotPrimeError(f"p = {p} is not prime")
    if p == 2:
        raise EvenCharacteristicError("characteristic 2 is not supported (p must be odd)")
    if k < 1:
        raise InputError(f"extension degree must be >= 1, got {k}")
    if k == 1:
        if modulus is not None:
            modulus = tuple(int(c) for c in modulus)
            if modulus != (0, 1):
                raise InputError("for k = 1 the modulus must be X, i.e. (0, 1)")
        return FieldConfig(p, 1, (0, 1))
    if modulus is not None:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise InputError(f"modulus must be monic of degree {k}")
        if not _is_irreducible(modulus, p):
            raise ReducibleModulusError(f"modulus {list(modulus)} is reducible over F_{p}")
        return FieldConfig(p, k, modulus)
    for lower in itertools.product(range(p), repeat=k):
        cand = tuple(lower) + (1,)
        if _is_irreducible(cand, p):
            return FieldConfig(p, k, cand)
    raise ReducibleModulusError(
        f"no irreducible polynomial of degree {k} over F_{p} found"
    )  # pragma: no cover


# ---------------------------------------------------------------------------
# vectorized kernels
# ---------------------------------------------------------------------------

class FieldKernel:
    """Vectorized index arithmetic on numpy arrays of element indices.

    Prime fields use direct mod-p arithmetic; extension fields use dense
    lookup tables (requires q <= TABLE_MAX_Q).
    """

    def __init__(self, cfg: FieldConfig):
        self.cfg = cfg
        self.prime = cfg.k == 1
        if self.prime:
            self._add = self._mul = self._neg = None
        else:
            q = cfg.q
            if q > TABLE_MAX_Q:
                raise BudgetExceededError(
                    f"q = {q} too large for extension-field kernel tables (max {TABLE_MAX_Q})"
                )
            add = np.empty((q, q), dtype=np.int32)
            mul = np.empty((q, q), dtype=np.int32)
            for a in range(q):
                for b in range(a, q):
                    s = cfg.add(a, b)
                    m = cfg.mul(a, b)
                    add[a, b] = add[b, a] = s
                    mul[a, b] = mul[b, a] = m
            self._add = add
            self._mul = mul
            self._neg = np.array([cfg.neg(a) for a in range(q)], dtype=np.int32)

    def add(self, A, B):
        if self.prime:
            return (A + B) % self.cfg.p
        return self._add[A, B]

    def mul(self, A, B):
        if self.prime:
            return (A * B) % self.cfg.p
        return self._mul[A, B]

    def neg(self, A):
        if self.prime:
            return (-A) % self.cfg.p
        return self._neg[A]

    def mul_scalar(self, c: int, A):
        if self.prime:
            return (c * A) % self.cfg.p
        return self._mul[c, A]


@lru_cache(maxsize=8)
def get_kernel(cfg: FieldConfig) -> FieldKernel:
    return FieldKernel(cfg)


# ---------------------------------------------------------------------------
# enumeration of F_q^b
# ---------------------------------------------------------------------------

def enumerate_vectors(cfg: FieldConfig, b: int):
    """Yield all q^b tuples over F_q, lexicographic on concatenated
    coordinate lists, zero tuple first."""
    if b < 0:
        raise InputError(f"vector length must be >= 0, got {b}")
    lex_elems = [cfg.at_lex_rank(r) for r in range(cfg.q)]
    return itertools.product(lex_elems, repeat=b)


def vector_rank(cfg: FieldConfig, y) -> int:
    """Position of the tuple y in the enumerate_vectors order."""
    r = 0
    for a in y:
        r = r * cfg.q + cfg.lex_rank(a)
    return r


def vector_at_rank(cfg: FieldConfig, b: int, r: int) -> tuple[int, ...]:
    out = []
    for _ in range(b):
        r, d = r // cfg.q, r % cfg.q
        out.append(cfg.at_lex_rank(d))
    return tuple(reversed(out))


def vector_matrix(cfg: FieldConfig, b: int) -> np.ndarray:
    """(q^b, b) array of element indices, rows in enumerate_vectors order."""
    q = cfg.q
    n = q ** b
    lex_elems = np.array([cfg.at_lex_rank(r) for r in range(q)], dtype=np.int64)
    out = np.empty((n, b), dtype=np.int64)
    idx = np.arange(n, dtype=np.int64)
    for m in range(b):
        power = q ** (b - 1 - m)
        out[:, m] = lex_elems[(idx // power) % q]
    return out
