import itertools
import random

import numpy as np
import pytest

from commfibre.errors import (
    EvenCharacteristicError,
    InputError,
    NotPrimeError,
    ReducibleModulusError,
)
from commfibre.field import (
    enumerate_vectors,
    get_kernel,
    make_field,
    vector_at_rank,
    vector_matrix,
    vector_rank,
)


def poly_mul_mod(a, b, modulus, p):
    """Independent reference: coordinate-list product reduced mod modulus."""
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            prod[i + j] = (prod[i + j] + ai * bj) % p
    deg = len(modulus) - 1
    while len(prod) > deg:
        lead = prod.pop()
        for i in range(deg):
            prod[len(prod) - deg + i] = (prod[len(prod) - deg + i] - lead * modulus[i]) % p
    prod += [0] * (deg - len(prod))
    return tuple(prod)


def has_root(poly, p):
    for x in range(p):
        acc = 0
        for c in reversed(poly):
            acc = (acc * x + c) % p
        if acc == 0:
            return True
    return False


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def test_prime_field():
    cfg = make_field(3)
    assert (cfg.p, cfg.k, cfg.q) == (3, 1, 3)
    assert cfg.modulus == (0, 1)


def test_f9_modulus_is_lex_smallest_irreducible():
    # oracle: scan the 9 monic quadratics over F_3 in lex order (constant
    # term first) and take the first with no root
    expected = None
    for c0, c1 in itertools.product(range(3), repeat=2):
        cand = (c0, c1, 1)
        if not has_root(cand, 3):
            expected = cand
            break
    assert expected == (1, 0, 1)  # X^2 + 1
    cfg = make_field(3, 2)
    assert cfg.modulus == expected
    assert cfg.q == 9


def test_f25_modulus_lex_smallest():
    expected = None
    for c0, c1 in itertools.product(range(5), repeat=2):
        cand = (c0, c1, 1)
        if not has_root(cand, 5):
            expected = cand
            break
    cfg = make_field(5, 2)
    assert cfg.modulus == expected


def test_make_field_rejections():
    with pytest.raises(NotPrimeError):
        make_field(4)
    with pytest.raises(NotPrimeError):
        make_field(9)
    with pytest.raises(EvenCharacteristicError):
        make_field(2)
    with pytest.raises(ReducibleModulusError):
        make_field(3, 2, modulus=(2, 0, 1))  # X^2 - 1 = (X-1)(X+1)
    with pytest.raises(InputError):
        make_field(3, 0)
    with pytest.raises(InputError):
        make_field(3, 2, modulus=(1, 0, 0, 1))  # degree mismatch


def test_user_modulus_accepted():
    # X^2 + X + 2 over F_3: no roots (x=0 -> 2, x=1 -> 4=1, x=2 -> 8=2)
    cfg = make_field(3, 2, modulus=(2, 1, 1))
    assert cfg.modulus == (2, 1, 1)


def test_rabin_path_degree_4():
    cfg = make_field(3, 4)
    # verify irreducibility independently: no roots and no quadratic factor
    f = cfg.modulus
    assert not has_root(f, 3)
    for c0, c1 in itertools.product(range(3), repeat=2):
        g = (c0, c1, 1)
        # trial division: f mod g must be nonzero
        rem = list(f)
        while len(rem) > 2:
            lead = rem.pop()
            for i in range(2):
                rem[len(rem) - 2 + i] = (rem[len(rem) - 2 + i] - lead * g[i]) % 3
        assert any(c % 3 for c in rem), f"degree-4 modulus divisible by {g}"


# ---------------------------------------------------------------------------
# arithmetic
# ---------------------------------------------------------------------------

def test_inv_2_in_f3():
    cfg = make_field(3)
    assert cfg.inv(2) == 2  # 2*2 = 4 = 1


def test_f9_generator_square():
    # X * X = -1 = 2 mod X^2 + 1, checked against the reference product
    cfg = make_field(3, 2)
    x = cfg.element((0, 1))
    ref = poly_mul_mod([0, 1], [0, 1], cfg.modulus, 3)
    assert ref == (2, 0)
    assert cfg.mul(x, x) == cfg.element(ref)


@pytest.mark.parametrize("p,k", [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (3, 3)])
def test_field_axioms_random(p, k):
    cfg = make_field(p, k)
    rng = random.Random(20240 + p * 10 + k)
    for _ in range(60):
        a, b, c = (rng.randrange(cfg.q) for _ in range(3))
        assert cfg.add(a, b) == cfg.add(b, a)
        assert cfg.mul(a, b) == cfg.mul(b, a)
        assert cfg.add(cfg.add(a, b), c) == cfg.add(a, cfg.add(b, c))
        assert cfg.mul(cfg.mul(a, b), c) == cfg.mul(a, cfg.mul(b, c))
        assert cfg.mul(a, cfg.add(b, c)) == cfg.add(cfg.mul(a, b), cfg.mul(a, c))
        assert cfg.add(a, cfg.neg(a)) == 0
        assert cfg.mul(a, cfg.one) == a
        assert cfg.mul(a, cfg.zero) == 0


@pytest.mark.parametrize("p,k", [(3, 1), (7, 1), (3, 2), (3, 4), (5, 2)])
def test_inverses_exhaustive(p, k):
    cfg = make_field(p, k)
    assert cfg.q <= 81
    for a in range(1, cfg.q):
        assert cfg.mul(a, cfg.inv(a)) == cfg.one
    with pytest.raises(ZeroDivisionError):
        cfg.inv(0)


def test_coords_roundtrip_and_range():
    cfg = make_field(3, 3)
    for a in cfg.elements():
        cs = cfg.coords(a)
        assert len(cs) == 3
        assert all(0 <= c < 3 for c in cs)
        assert cfg.element(cs) == a
    with pytest.raises(InputError):
        cfg.element((3, 0, 0))
    with pytest.raises(InputError):
        cfg.element((0, 0))


def test_from_int_embeds_prime_subfield():
    cfg = make_field(5, 2)
    assert cfg.from_int(7) == 2
    assert cfg.add(cfg.from_int(3), cfg.from_int(2)) == 0


# ---------------------------------------------------------------------------
# enumeration order
# ---------------------------------------------------------------------------

def test_enumerate_f3_b1():
    cfg = make_field(3)
    assert list(enumerate_vectors(cfg, 1)) == [(0,), (1,), (2,)]


def test_enumerate_f3_b3():
    cfg = make_field(3)
    vs = list(enumerate_vectors(cfg, 3))
    assert len(vs) == 27
    assert vs[0] == (0, 0, 0)
    assert len(set(vs)) == 27


def test_enumerate_f9_b2_distinct():
    cfg = make_field(3, 2)
    vs = list(enumerate_vectors(cfg, 2))
    assert len(set(vs)) == 81


def test_enumeration_is_lex_on_concatenated_coords():
    cfg = make_field(3, 2)
    seen = [sum((cfg.coords(a) for a in v), ()) for v in enumerate_vectors(cfg, 2)]
    assert seen == sorted(seen)
    assert seen[0] == (0, 0, 0, 0)


def test_vector_rank_roundtrip():
    cfg = make_field(3, 2)
    for r, v in enumerate(enumerate_vectors(cfg, 2)):
        assert vector_rank(cfg, v) == r
        assert vector_at_rank(cfg, 2, r) == v


def test_vector_matrix_matches_enumeration():
    cfg = make_field(3, 2)
    mat = vector_matrix(cfg, 2)
    for r, v in enumerate(enumerate_vectors(cfg, 2)):
        assert tuple(mat[r]) == v


def test_no_repeats_exhaustive_medium():
    cfg = make_field(7)
    vs = list(enumerate_vectors(cfg, 4))
    assert len(vs) == 7 ** 4
    assert len(set(vs)) == 7 ** 4


# ---------------------------------------------------------------------------
# vectorized kernel agrees with scalar ops
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("p,k", [(5, 1), (3, 2), (7, 1)])
def test_kernel_matches_scalar(p, k):
    cfg = make_field(p, k)
    ker = get_kernel(cfg)
    rng = np.random.default_rng(99)
    A = rng.integers(0, cfg.q, size=200)
    B = rng.integers(0, cfg.q, size=200)
    add = ker.add(A, B)
    mul = ker.mul(A, B)
    neg = ker.neg(A)
    for i in range(200):
        assert add[i] == cfg.add(int(A[i]), int(B[i]))
        assert mul[i] == cfg.mul(int(A[i]), int(B[i]))
        assert neg[i] == cfg.neg(int(A[i]))


def test_config_hashable_and_equal():
    assert make_field(3, 2) == make_field(3, 2)
    assert len({make_field(3), make_field(5), make_field(3)}) == 2
