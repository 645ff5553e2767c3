import itertools
import random

import pytest

from commfibre.algebra import builtin, from_relations, reduce_presentation
from commfibre.errors import BudgetExceededError, UnsupportedClassError
from commfibre.field import make_field
from commfibre.oracle import (
    LazardGroup,
    _count_n1_class2,
    _count_n1_generic,
    bch_multiply,
    brute_fibre_tables,
    brute_fibres,
    compare,
    conjugacy_count,
    group_commutator,
)
from commfibre.zeta import class_number

F3 = make_field(3)
F5 = make_field(5)
F9 = make_field(3, 2)


def filiform4(cfg):
    return from_relations(
        cfg,
        ("x1", "x2", "x3", "x4"),
        {("x1", "x2"): {"x3": 1}, ("x1", "x3"): {"x4": 1}},
    )


def filiform5(cfg):
    # class 4: out of oracle range
    return from_relations(
        cfg,
        ("x1", "x2", "x3", "x4", "x5"),
        {("x1", "x2"): {"x3": 1}, ("x1", "x3"): {"x4": 1}, ("x1", "x4"): {"x5": 1}},
    )


def all_elements(group):
    return list(itertools.product(range(group.alg.cfg.q), repeat=group.alg.n))


# ---------------------------------------------------------------------------
# group law
# ---------------------------------------------------------------------------

def test_identity_and_inverse_class2():
    g = LazardGroup.of(builtin("heisenberg", F3))
    u = (1, 2, 0)
    assert g.multiply(u, g.identity()) == u
    assert g.multiply(g.identity(), u) == u
    assert g.multiply(u, g.inverse(u)) == g.identity()


def test_identity_and_inverse_class3():
    g = LazardGroup.of(filiform4(F5))
    u = (1, 2, 3, 4)
    assert g.multiply(u, g.identity()) == u
    assert g.multiply(u, g.inverse(u)) == g.identity()
    assert g.multiply(g.inverse(u), u) == g.identity()


def test_heisenberg_noncommutativity():
    alg = builtin("heisenberg", F3)
    u, v = (1, 0, 0), (0, 1, 0)
    uv = bch_multiply(u, v, alg, 2)
    vu = bch_multiply(v, u, alg, 2)
    assert uv == (1, 1, 2)  # half of [u,v] is 2*y1 mod 3
    assert vu == (1, 1, 1)
    assert group_commutator(u, v, alg, 2) == (0, 0, 1)


def test_commutator_basics():
    alg = filiform4(F5)
    g = LazardGroup.of(alg)
    u, v = (1, 2, 3, 0), (4, 1, 0, 2)
    assert g.commutator(u, u) == g.identity()
    assert g.multiply(g.commutator(u, v), g.commutator(v, u)) == g.identity()


def test_bch_associativity_exhaustive_order27():
    g = LazardGroup.of(builtin("heisenberg", F3))
    elems = all_elements(g)
    for u in elems:
        for v in elems:
            uv = g.multiply(u, v)
            for w in elems:
                assert g.multiply(uv, w) == g.multiply(u, g.multiply(v, w))


@pytest.mark.parametrize("alg", [filiform4(F5), builtin("quadric7", F3), builtin("heisenberg", F9)])
def test_bch_associativity_random(alg):
    g = LazardGroup.of(alg)
    rng = random.Random(777)
    q, n = alg.cfg.q, alg.n
    for _ in range(1000):
        u, v, w = (tuple(rng.randrange(q) for _ in range(n)) for _ in range(3))
        assert g.multiply(g.multiply(u, v), w) == g.multiply(u, g.multiply(v, w))


@pytest.mark.parametrize(
    "alg",
    [
        builtin("heisenberg", F3),
        builtin("heisenberg", F9),
        builtin("quadric7", F3),
        filiform4(F5),
    ],
)
def test_exponent_p(alg):
    g = LazardGroup.of(alg)
    p = alg.cfg.p
    for u in all_elements(g):
        acc = g.identity()
        for _ in range(p):
            acc = g.multiply(acc, u)
        assert acc == g.identity()


def test_centre_elements_commute():
    alg = builtin("quadric7", F3)
    g = LazardGroup.of(alg)
    rng = random.Random(5)
    for _ in range(50):
        u = tuple(rng.randrange(3) for _ in range(7))
        z = (0, 0, 0, 0) + tuple(rng.randrange(3) for _ in range(3))  # central span
        assert g.multiply(u, z) == g.multiply(z, u)
        assert g.commutator(u, z) == g.identity()


def test_class_4_unsupported():
    alg = filiform5(make_field(7))
    with pytest.raises(UnsupportedClassError):
        LazardGroup.of(alg)
    with pytest.raises(UnsupportedClassError):
        brute_fibres(alg, 1)


# ---------------------------------------------------------------------------
# fibre tables
# ---------------------------------------------------------------------------

def test_heisenberg_f3_fibres():
    table = brute_fibres(builtin("heisenberg", F3), 1)
    assert table.counts == {(0,): 297, (1,): 216, (2,): 216}


def test_heisenberg_f3_fibres_t2():
    tables = brute_fibre_tables(builtin("heisenberg", F3), 2)
    t2 = tables[1].counts
    assert sum(t2.values()) == 27 ** 4
    # direct convolution of the t=1 table over F_3
    t1 = tables[0].counts
    expected = {}
    for h in range(3):
        for d in range(3):
            g = (h + d) % 3
            expected[(g,)] = expected.get((g,), 0) + t1[(h,)] * t1[(d,)]
    assert t2 == expected


def test_commuting_pair_count_is_order_times_class_number():
    # N_1(0) = |G| * k(G)
    for alg in (builtin("heisenberg", F3), builtin("quadric7", F3)):
        pres = reduce_presentation(alg)
        table = brute_fibres(alg, 1)
        order = alg.cfg.q ** alg.n
        assert table.counts[(0,) * pres.b] == order * class_number(pres)


def test_vectorized_class2_matches_generic_path():
    for alg in (builtin("quadric7", F3), builtin("heisenberg", F9)):
        from commfibre.algebra import check

        rep = check(alg)
        fast, fast_pairs = _count_n1_class2(alg, rep, 10 ** 9)
        slow, slow_pairs = _count_n1_generic(alg, rep, 10 ** 9)
        assert list(fast) == list(slow)
        assert fast_pairs == slow_pairs


def test_budget_exceeded():
    with pytest.raises(BudgetExceededError):
        brute_fibres(builtin("quadric8", F3), 1, budget=100)


# ---------------------------------------------------------------------------
# conjugacy classes
# ---------------------------------------------------------------------------

def test_conjugacy_counts_small():
    assert conjugacy_count(builtin("heisenberg", F3)) == 11
    assert conjugacy_count(builtin("heisenberg", F9)) == 89
    assert conjugacy_count(builtin("quadric7", F3)) == 171


def test_conjugacy_count_class3():
    # the formula side gives 2q^2 - 1 for the 4-dim filiform algebra
    alg = filiform4(F5)
    assert conjugacy_count(alg) == 2 * 25 - 1 == class_number(reduce_presentation(alg))


# ---------------------------------------------------------------------------
# full comparison
# ---------------------------------------------------------------------------

def test_compare_heisenberg_f3():
    rep = compare(builtin("heisenberg", F3), t_max=3)
    assert rep.ok
    assert rep.checked == 9  # 3 values of g x 3 values of t
    assert rep.class_number_formula == rep.class_number_oracle == 11


def test_compare_heisenberg_f9_decisive():
    # the q = p^2 case separates the base-q stratum weights from base-p ones
    rep = compare(builtin("heisenberg", F9), t_max=2)
    assert rep.ok
    assert rep.class_number_formula == 89


def test_compare_filiform_class3():
    rep = compare(filiform4(F5), t_max=2)
    assert rep.ok
    assert rep.class_number_formula == 49


def test_compare_quadric7():
    rep = compare(builtin("quadric7", F3), t_max=2)
    assert rep.ok
    assert rep.group_order == 3 ** 7
