import pytest

from commfibre.algebra import (
    FullLieAlgebra,
    builtin,
    check,
    direct_sum,
    from_relations,
    reduce_presentation,
    rref,
    validate,
    vec_zero,
)
from commfibre.errors import (
    AbelianAlgebraError,
    BadParamError,
    ClassTooLargeError,
    InputError,
    JacobiViolationError,
    NotNilpotentError,
    UnknownBuiltinError,
)
from commfibre.field import make_field

F3 = make_field(3)
F5 = make_field(5)
F9 = make_field(3, 2)


def heisenberg(cfg=F3):
    return builtin("heisenberg", cfg)


def filiform4(cfg):
    # class-3 example: [x1,x2] = x3, [x1,x3] = x4
    return from_relations(
        cfg,
        ("x1", "x2", "x3", "x4"),
        {("x1", "x2"): {"x3": 1}, ("x1", "x3"): {"x4": 1}},
    )


def implied_algebra(pres):
    """Rebuild the class-2 algebra a presentation describes."""
    names = tuple(f"e{i}" for i in range(pres.a)) + tuple(f"f{m}" for m in range(pres.b))
    brackets = []
    for i, j, coeffs in pres.lam:
        vec = vec_zero(pres.a) + coeffs
        brackets.append((i, j, vec))
    return FullLieAlgebra(pres.cfg, names, tuple(brackets))


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def test_heisenberg_validation():
    rep = validate(heisenberg())
    assert rep.jacobi_ok and rep.nilpotent
    assert rep.cls == 2
    assert len(rep.center_basis) == 1
    assert len(rep.derived_basis) == 1
    assert rep.lcs_dims == (3, 1, 0)
    assert rep.derived_basis[0] == (0, 0, 1)


def test_quadric7_validation():
    rep = validate(builtin("quadric7", F3))
    assert rep.cls == 2
    assert len(rep.derived_basis) == 3
    assert len(rep.center_basis) == 3


def test_elliptic9_center_equals_derived():
    rep = validate(builtin("elliptic9", F5, alpha=1))
    assert rep.cls == 2
    assert len(rep.center_basis) == 3
    assert len(rep.derived_basis) == 3
    assert rep.center_pivots == rep.derived_pivots == (6, 7, 8)


def test_not_nilpotent():
    alg = from_relations(F3, ("x1", "x2"), {("x1", "x2"): {"x1": 1}})
    rep = validate(alg)
    assert not rep.nilpotent
    with pytest.raises(NotNilpotentError):
        check(alg)


def test_jacobi_violation_detected():
    alg = from_relations(
        F3,
        ("e1", "e2", "e3"),
        {("e1", "e2"): {"e1": 1}, ("e1", "e3"): {"e2": 1}},
    )
    rep = validate(alg)
    assert not rep.jacobi_ok
    assert rep.jacobi_violation == (0, 1, 2)
    with pytest.raises(JacobiViolationError):
        check(alg)


def test_class_too_large():
    with pytest.raises(ClassTooLargeError):
        check(filiform4(F3))  # class 3 >= p = 3


def test_class3_accepted_when_p_large_enough():
    rep = check(filiform4(F5))
    assert rep.cls == 3
    assert rep.lcs_dims == (4, 2, 1, 0)
    assert len(rep.center_basis) == 1
    assert rep.center_pivots == (3,)


@pytest.mark.parametrize("name", ["heisenberg", "quadric7", "quadric8"])
@pytest.mark.parametrize("cfg", [F3, F5, F9])
def test_builtins_satisfy_jacobi(name, cfg):
    rep = validate(builtin(name, cfg))
    assert rep.jacobi_ok
    assert rep.cls == 2


# ---------------------------------------------------------------------------
# reduction
# ---------------------------------------------------------------------------

def test_heisenberg_reduction():
    pres = reduce_presentation(heisenberg())
    assert (pres.n, pres.a, pres.b, pres.cls) == (3, 2, 1, 2)
    assert pres.e_indices == (0, 1)
    assert pres.lam == ((0, 1, (1,)),)


def test_quadric7_reduction_matches_relations():
    pres = reduce_presentation(builtin("quadric7", F3))
    assert (pres.n, pres.a, pres.b) == (7, 4, 3)
    assert pres.e_indices == (0, 1, 2, 3)
    lam = {(i, j): v for i, j, v in pres.lam}
    assert lam == {
        (0, 2): (1, 0, 0),
        (0, 3): (0, 1, 0),
        (1, 2): (0, 0, 1),
        (1, 3): (1, 0, 0),
    }


def test_quadric8_reduction():
    pres = reduce_presentation(builtin("quadric8", F3))
    assert (pres.a, pres.b) == (4, 4)
    lam = {(i, j): v for i, j, v in pres.lam}
    assert lam[(1, 3)] == (0, 0, 0, 1)


def test_elliptic9_reduction():
    pres = reduce_presentation(builtin("elliptic9", F5, alpha=2))
    assert (pres.a, pres.b) == (6, 3)
    lam = {(i, j): v for i, j, v in pres.lam}
    assert lam[(0, 5)] == (0, 0, 2)  # [x1,x6] = alpha*y3


def test_filiform_reduction_class3():
    pres = reduce_presentation(filiform4(F5))
    assert (pres.a, pres.b, pres.cls) == (3, 2, 3)
    assert pres.e_indices == (0, 1, 2)
    lam = {(i, j): v for i, j, v in pres.lam}
    assert lam == {(0, 1): (1, 0), (0, 2): (0, 1)}


def test_abelian_rejected():
    alg = from_relations(F3, ("x1", "x2"), {})
    assert validate(alg).cls == 1
    with pytest.raises(AbelianAlgebraError):
        reduce_presentation(alg)


@pytest.mark.parametrize("name", ["heisenberg", "quadric7", "quadric8"])
def test_reduce_idempotent_for_class2(name):
    pres = reduce_presentation(builtin(name, F3))
    again = reduce_presentation(implied_algebra(pres))
    assert (again.a, again.b, again.cls) == (pres.a, pres.b, pres.cls)
    assert again.lam == pres.lam


# ---------------------------------------------------------------------------
# builtins / misc
# ---------------------------------------------------------------------------

def test_unknown_builtin():
    with pytest.raises(UnknownBuiltinError):
        builtin("nope", F3)


def test_elliptic9_param_checks():
    with pytest.raises(BadParamError):
        builtin("elliptic9", F3, alpha=0)
    with pytest.raises(BadParamError):
        builtin("elliptic9", F9, alpha=1)  # k = 1 required


def test_bracket_bilinearity_heisenberg():
    alg = heisenberg()
    # [x1 + y1, x2] = [x1, x2] = y1 (y1 central)
    u = (1, 0, 1)
    v = (0, 1, 0)
    assert alg.bracket(u, v) == (0, 0, 1)
    assert alg.bracket(v, u) == (0, 0, 2)  # = -y1


def test_duplicate_bracket_rejected():
    with pytest.raises(InputError):
        FullLieAlgebra(F3, ("a", "b"), (((0, 1, (0, 1))), (0, 1, (1, 0))))


def test_direct_sum_structure():
    s = direct_sum(heisenberg(), heisenberg())
    assert s.n == 6
    rep = validate(s)
    assert rep.cls == 2
    pres = reduce_presentation(s)
    assert (pres.a, pres.b) == (4, 2)


def test_rref_canonical():
    rows = [(1, 2, 0), (2, 1, 1), (0, 0, 0)]
    basis, pivots = rref(F3, rows)
    # (2,1,1) - 2*(1,2,0) = (0,0,1) mod 3, so the pivots sit at columns 0 and 2
    assert pivots == (0, 2)
    assert basis == ((1, 2, 0), (0, 0, 1))
    # pivot columns carry the identity
    for r, pc in zip(basis, pivots):
        assert r[pc] == 1
        for other in pivots:
            if other != pc:
                assert r[other] == 0
