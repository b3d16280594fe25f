import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wittpoisson.algebra import AlgebraVector, GradedMap, LinearMap, Verdict, apply_map, bracket, bracket_basis, verify_jacobi
from wittpoisson.errors import CoefficientDomainError, InputError
from wittpoisson.exactnum import ONE, ZERO, Scalar
from wittpoisson.group import GroupSpec, Window

from conftest import cyclic_f, witt_z

Z = GroupSpec(1, ())
small = st.builds(Scalar, st.integers(-3, 3), st.integers(-3, 3))


def vectors(group, radius=3):
    keys = st.sampled_from(group.window(radius))
    return st.dictionaries(keys, small, max_size=4).map(AlgebraVector)


def test_bracket_examples():
    f = witt_z()
    assert bracket_basis(f, (1,), (2,)) == AlgebraVector.basis((3,))
    f4 = cyclic_f(4, [0, 1, 0, 1])
    assert bracket_basis(f4, (1,), (2,)) == AlgebraVector.basis((3,), Scalar(-1))


def test_vector_literals():
    g = GroupSpec.cyclic(4)
    v = AlgebraVector.parse("e0:1,e2:1/2", g)
    assert v.coeff((0,)) == ONE and v.coeff((2,)) == Scalar(1) / 2
    assert v.to_literal() == "e0:1,e2:1/2"
    assert AlgebraVector.parse("e1:1,e5:-1", g).is_zero()
    assert AlgebraVector.parse("0", g).to_literal() == "0"
    g2 = GroupSpec(1, (2,))
    assert AlgebraVector.parse("e-1,1:2-i", g2).coeff((-1, 1)) == Scalar(2, -1)
    for bad in ["e0", "x0:1", "e0:1/0", "e0,1:1"]:
        with pytest.raises(InputError):
            AlgebraVector.parse(bad, g)


def test_no_stored_zeros():
    v = AlgebraVector({(0,): ZERO, (1,): ONE})
    assert v.support() == [(1,)]
    assert (v - v).terms == {}


def test_apply_map_examples():
    dom = Z.window(4)
    x = AlgebraVector.basis((1,))
    assert apply_map(LinearMap.shift((2,), 1, dom), x, Z) == AlgebraVector.basis((3,))
    assert apply_map(LinearMap([]), x, Z).is_zero()
    assert apply_map(LinearMap.scalar(Z, Scalar(0, 1), dom), x, Z) == x * Scalar(0, 1)


def test_missing_coefficient_is_not_zero():
    m = GradedMap((0,), {(0,): ONE})
    with pytest.raises(CoefficientDomainError):
        m.coefficient((1,))


def test_graded_decomposition():
    g = GroupSpec.cyclic(3)
    images = {(0,): AlgebraVector({(1,): ONE, (0,): Scalar(2)}), (1,): AlgebraVector({(2,): ONE}), (2,): AlgebraVector.zero()}
    phi = LinearMap.from_images(g, images)
    for a, img in images.items():
        assert phi.image(g, a) == img
    assert [p.degree for p in phi.parts] == sorted({(0,), (1,)})


def test_jacobi_examples():
    assert verify_jacobi(cyclic_f(3, [0, 1, -1]), Window(0)).verdict is Verdict.PASS
    rep = verify_jacobi(cyclic_f(4, [0, 1, 2, 1]), Window(0))
    assert rep.verdict is Verdict.FAIL and len(rep.witness) == 3
    assert verify_jacobi(cyclic_f(4, [0] * 4), Window(0)).verdict is Verdict.PASS
    assert verify_jacobi(witt_z(), Window(3)).verdict is Verdict.PASS


def test_jacobi_window_shortfall():
    rep = verify_jacobi(witt_z(), Window(3), padding=1)
    assert rep.verdict is Verdict.INCONCLUSIVE and rep.skipped > 0


@settings(max_examples=50, deadline=None)
@given(vectors(Z), vectors(Z), vectors(Z), small)
def test_lie_algebra_laws_on_witt(x, y, z, c):
    f = witt_z()
    assert bracket(f, x, x).is_zero()
    assert bracket(f, x, y) == -bracket(f, y, x)
    assert bracket(f, x + z * 1, y) == bracket(f, x, y) + bracket(f, z, y)
    assert bracket(f, x * c, y) == bracket(f, x, y) * c
    jac = bracket(f, x, bracket(f, y, z)) + bracket(f, y, bracket(f, z, x)) + bracket(f, z, bracket(f, x, y))
    assert jac.is_zero()


@given(vectors(Z), vectors(Z), vectors(Z))
def test_vector_space_laws(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert x - x == AlgebraVector.zero()
    assert AlgebraVector.parse(x.to_literal(), Z) == x
