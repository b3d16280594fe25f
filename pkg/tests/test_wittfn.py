import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wittpoisson.errors import InputError
from wittpoisson.exactnum import ONE, ZERO, Scalar
from wittpoisson.group import GroupSpec
from wittpoisson.wittfn import CaseTag, WittFunction, classify, evaluate, kernel, lie_condition, validate

from conftest import cyclic_f, witt_z

VALUES = [Scalar(0), Scalar(1), Scalar(-1), Scalar(0, 1), Scalar(0, -1), Scalar(1, 1)]


def test_validate_examples():
    assert validate(cyclic_f(3, [0, 1, -1])).valid
    bad = validate(cyclic_f(4, [0, 1, 2, 1]))
    assert not bad.valid and bad.witness == ((1,), (2,))
    shifted = validate(cyclic_f(3, [1, 1, 1]))
    assert not shifted.valid and "f(0)" in shifted.reason and shifted.hint


def test_evaluate():
    f = witt_z()
    assert evaluate(f, (5,)) == Scalar(5)
    assert evaluate(f, (-5,)) == -evaluate(f, (5,))
    assert evaluate(cyclic_f(4, [0, 1, 0, 1]), (2,)) == ZERO
    assert evaluate(cyclic_f(4, [0, 1, 0, 1]), (6,)) == ZERO


def test_classify_examples():
    p = classify(cyclic_f(3, [0, 1, -1]))
    assert p.case_tag is CaseTag.THREE and p.c == ONE
    assert p.tau == {(0,): 0, (1,): 1, (2,): 2}
    p = classify(cyclic_f(4, [0, 1, 0, 1]))
    assert p.case_tag is CaseTag.TWO and p.c == ONE
    assert p.gamma0.sorted_elements() == [(0,), (2,)]
    assert classify(witt_z()).case_tag is CaseTag.BIG
    assert classify(cyclic_f(5, [0] * 5)).case_tag is CaseTag.ABELIAN


def test_kernel_examples():
    assert kernel(cyclic_f(4, [0, 1, 0, 1])).sorted_elements() == [(0,), (2,)]
    assert kernel(cyclic_f(3, [0, 1, 1])).sorted_elements() == [(0,)]
    assert kernel(cyclic_f(3, [0, 0, 0])).sorted_elements() == [(0,), (1,), (2,)]
    k = kernel(WittFunction.additive(GroupSpec(2, ()), [1, -1]))
    assert (3, 3) in k and (1, 0) not in k


def test_classify_rejects_invalid():
    with pytest.raises(InputError):
        classify(cyclic_f(4, [0, 1, 2, 1]))


def test_json_round_trip():
    f = cyclic_f(3, [0, "1/2+i", "-1/2-i"])
    g = WittFunction.from_json(f.group, f.to_json())
    assert g.to_json() == f.to_json()
    h = WittFunction.from_json(GroupSpec(1, (2,)), {"kind": "additive", "gen_values": ["2/3"]})
    assert h((3, 1)) == Scalar(2)


@pytest.mark.parametrize(
    "group, frag",
    [
        (GroupSpec.cyclic(3), {"kind": "table", "values": {"0": "0", "1": "1"}}),
        (GroupSpec(1, ()), {"kind": "table", "values": {"0": "0"}}),
        (GroupSpec(1, ()), {"kind": "additive", "gen_values": []}),
        (GroupSpec(1, ()), {"kind": "additive", "gen_values": ["1/0"]}),
        (GroupSpec(1, ()), {"kind": "polynomial"}),
        (GroupSpec(1, ()), "id"),
    ],
)
def test_malformed_fragments(group, frag):
    with pytest.raises(InputError):
        WittFunction.from_json(group, frag)


# The valid functions on a finite cyclic group come from three shapes:
# zero, c off a subgroup, and (0, c, -c) along a map onto Z/3.
def _shaped(m, data):
    divisors = [d for d in range(2, m + 1) if m % d == 0]
    c = data.draw(st.sampled_from(VALUES[1:]))
    shape = data.draw(st.sampled_from(["two", "three"] if m % 3 == 0 else ["two"]))
    if shape == "two":
        d = data.draw(st.sampled_from(divisors))  # Gamma_0 = multiples of d
        return [ZERO if x % d == 0 else c for x in range(m)]
    s = data.draw(st.sampled_from([1, 2]))
    return [[ZERO, c, -c][(s * x) % 3] for x in range(m)]


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 9), st.data())
def test_shaped_functions_are_valid(m, data):
    f = cyclic_f(m, _shaped(m, data))
    assert validate(f).valid
    part = classify(f)
    assert part.case_tag in (CaseTag.TWO, CaseTag.THREE)


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 6).flatmap(lambda m: st.lists(st.sampled_from(VALUES), min_size=m, max_size=m)))
def test_validation_report_is_exact(values):
    values[0] = ZERO
    f = cyclic_f(len(values), values)
    rep = validate(f)
    elems = f.group.elements()
    holds = all(lie_condition(f, a, b).is_zero() for a in elems for b in elems)
    assert rep.valid == holds
    if not holds:
        assert not lie_condition(f, *rep.witness).is_zero()
    if holds:
        part = classify(f)
        # f is constant on every coset of Gamma_0
        for a in elems:
            for z in part.gamma0.sorted_elements():
                assert f(f.group.add(a, z)) == f(a)
