import pytest
from hypothesis import given
from hypothesis import strategies as st

from wittpoisson.errors import InfiniteGroupError, InputError, NotASubgroupError
from wittpoisson.group import GroupSpec, SubgroupTable, Window, coset_decompose, elem_add, enumerate_group

groups = st.builds(
    GroupSpec,
    st.integers(0, 2),
    st.lists(st.integers(2, 5), max_size=2).map(tuple),
)


def elements_of(g):
    coords = [st.integers(-20, 20) for _ in range(g.rank)] + [st.integers(0, m - 1) for m in g.torsion]
    return st.tuples(*coords) if coords else st.just(())


def test_spec_examples():
    z6 = GroupSpec.cyclic(6)
    assert elem_add(z6, (4,), (5,)) == (3,)
    g = GroupSpec(1, (2,))
    assert g.add((3, 1), (-5, 1)) == (-2, 0)
    assert enumerate_group(GroupSpec.cyclic(3)) == [(0,), (1,), (2,)]
    with pytest.raises(InfiniteGroupError):
        enumerate_group(GroupSpec(1, ()))


def test_window_sizes():
    assert len(GroupSpec(1, ()).window(3)) == 7
    assert len(GroupSpec(2, (2,)).window(1)) == 18
    assert Window(5).elements(GroupSpec.cyclic(4)) == GroupSpec.cyclic(4).elements()


def test_parse_and_format():
    g = GroupSpec(1, (2, 2))
    assert g.parse_element("1,0,1") == (1, 0, 1)
    assert g.parse_element("-1,3,1") == (-1, 1, 1)
    assert GroupSpec.format_element((-1, 1, 1)) == "-1,1,1"
    for bad in ["1,0", "a,b,c", ""]:
        with pytest.raises(InputError):
            g.parse_element(bad)


def test_bad_specs():
    for rank, torsion in [(-1, ()), (0, (1,)), (0, (0,))]:
        with pytest.raises(InputError):
            GroupSpec(rank, torsion)
    for frag in [{"torsion": [2]}, {"rank": "x"}, {"rank": 0, "torsion": [1]}, [1]]:
        with pytest.raises(InputError):
            GroupSpec.from_json(frag)
    assert GroupSpec.from_json({"rank": 1}) == GroupSpec(1, ())


def test_coset_decomposition():
    z6 = GroupSpec.cyclic(6)
    cosets = coset_decompose(z6, {(0,), (3,)})
    assert [c.representative for c in cosets] == [(0,), (1,), (2,)]
    assert sorted(e for c in cosets for e in c.elements) == z6.elements()
    with pytest.raises(NotASubgroupError):
        coset_decompose(z6, {(0,), (1,)})


def test_closure_witness():
    z4 = GroupSpec.cyclic(4)
    assert SubgroupTable(z4, frozenset({(0,), (2,)})).closure_witness() is None
    assert SubgroupTable(z4, frozenset({(0,), (1,)})).closure_witness() is not None


@given(groups.flatmap(lambda g: st.tuples(st.just(g), elements_of(g), elements_of(g), elements_of(g))))
def test_group_laws(data):
    g, a, b, c = data
    a, b, c = g.canonical(a), g.canonical(b), g.canonical(c)
    assert g.add(a, b) == g.add(b, a)
    assert g.add(g.add(a, b), c) == g.add(a, g.add(b, c))
    assert g.add(a, g.zero()) == a
    assert g.add(a, g.neg(a)) == g.zero()
    assert g.parse_element(GroupSpec.format_element(a)) == a


@given(groups.filter(lambda g: g.rank == 0))
def test_finite_enumeration(g):
    elems = g.elements()
    assert len(elems) == len(set(elems)) == g.order()
    assert elems == sorted(elems)
