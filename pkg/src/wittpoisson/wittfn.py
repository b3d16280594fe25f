"""The function f: Gamma -> Q(i) that defines V(f), its validation and case split."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import InputError, InternalConsistencyError
from .exactnum import ZERO, Scalar, parse_scalar
from .group import Element, GroupSpec, SubgroupTable


class CaseTag(str, enum.Enum):
    ABELIAN = "Abelian"
    TWO = "Two"
    THREE = "Three"
    BIG = "Big"


def _as_scalar(v) -> Scalar:
    if isinstance(v, Scalar):
        return v
    if isinstance(v, str):
        return parse_scalar(v)
    return Scalar(v)


class WittFunction:
    """Either a full value table on a finite group or an additive form.

    An additive f is given by its values on the free generators; torsion
    generators map to zero since there is no other additive choice in
    characteristic zero.
    """

    def __init__(self, group: GroupSpec, kind: str, table=None, gen_values=None):
        self.group = group
        self.kind = kind
        if kind == "table":
            if not group.is_finite():
                raise InputError("a table-valued f needs a finite group")
            table = {group.canonical(k): _as_scalar(v) for k, v in table.items()}
            missing = [g for g in group.elements() if g not in table]
            if missing:
                raise InputError(f"table is missing group elements {missing[:5]}")
            self.table = table
            self.gen_values = None
        elif kind == "additive":
            gen_values = tuple(_as_scalar(v) for v in gen_values)
            if len(gen_values) != group.rank:
                raise InputError(f"additive f needs {group.rank} generator values, got {len(gen_values)}")
            self.gen_values = gen_values
            self.table = None
            self._memo = {}
        else:
            raise InputError(f"unknown f kind {kind!r}")

    @classmethod
    def from_table(cls, group: GroupSpec, values: Mapping | Sequence) -> WittFunction:
        """Build from a mapping, or from a sequence in group enumeration order."""
        if not isinstance(values, Mapping):
            elems = group.elements()
            if len(values) != len(elems):
                raise InputError(f"expected {len(elems)} values, got {len(values)}")
            values = dict(zip(elems, values))
        return cls(group, "table", table=values)

    @classmethod
    def additive(cls, group: GroupSpec, gen_values: Sequence) -> WittFunction:
        return cls(group, "additive", gen_values=gen_values)

    @classmethod
    def from_json(cls, group: GroupSpec, obj) -> WittFunction:
        if not isinstance(obj, dict):
            raise InputError(f"f fragment must be an object, got {obj!r}")
        kind = obj.get("kind")
        try:
            if kind == "table":
                values = {group.parse_element(k): parse_scalar(v) for k, v in obj["values"].items()}
                return cls(group, "table", table=values)
            if kind == "additive":
                return cls(group, "additive", gen_values=[parse_scalar(v) for v in obj["gen_values"]])
        except (KeyError, AttributeError, ValueError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"malformed f fragment: {exc}") from exc
        raise InputError(f"unknown f kind {kind!r}")

    def to_json(self) -> dict:
        fmt = GroupSpec.format_element
        if self.kind == "table":
            return {"kind": "table", "values": {fmt(k): str(self.table[k]) for k in sorted(self.table)}}
        return {"kind": "additive", "gen_values": [str(v) for v in self.gen_values]}

    def __call__(self, alpha: Element) -> Scalar:
        if self.table is not None:
            try:
                return self.table[alpha]
            except KeyError:
                raise InputError(f"{alpha} is outside the table domain") from None
        hit = self._memo.get(alpha)
        if hit is None:
            hit = ZERO
            for g, x in zip(self.gen_values, alpha):
                if x:
                    hit = hit + g * x
            if len(self._memo) < 1_000_000:
                self._memo[alpha] = hit
        return hit

    def is_zero(self) -> bool:
        if self.table is not None:
            return all(v.is_zero() for v in self.table.values())
        return all(v.is_zero() for v in self.gen_values)

    def image(self) -> set | None:
        """The finite image f(Gamma), or None when it is infinite."""
        if self.table is not None:
            return set(self.table.values())
        return {ZERO} if self.is_zero() else None

    def __repr__(self):
        return f"WittFunction({self.group}, {self.to_json()})"


def evaluate(f: WittFunction, alpha: Element) -> Scalar:
    return f(f.group.canonical(alpha))


@dataclass
class ValidationReport:
    valid: bool
    witness: tuple | None = None
    reason: str = ""
    hint: str | None = None

    def to_json(self) -> dict:
        fmt = GroupSpec.format_element
        return {
            "valid": self.valid,
            "witness": [fmt(x) for x in self.witness] if self.witness else None,
            "reason": self.reason,
            "hint": self.hint,
        }


def lie_condition(f: WittFunction, a: Element, b: Element) -> Scalar:
    """(f(a+b) - f(a) - f(b)) * (f(a) - f(b)); zero iff the Lie condition holds at (a, b)."""
    fa, fb = f(a), f(b)
    return (f(f.group.add(a, b)) - fa - fb) * (fa - fb)


def validate(f: WittFunction) -> ValidationReport:
    g = f.group
    if not f(g.zero()).is_zero():
        return ValidationReport(
            False, None, "f(0) != 0",
            hint=f"replace f by f - f(0) (f(0) = {f(g.zero())}); the bracket is unchanged",
        )
    if f.kind == "additive":
        return ValidationReport(True, None, "additive f satisfies f(a+b) = f(a) + f(b) identically")
    for a in g.elements():
        for b in g.elements():
            if not lie_condition(f, a, b).is_zero():
                return ValidationReport(False, (a, b), "Lie condition fails")
    return ValidationReport(True, None, "Lie condition holds for every pair")


def kernel(f: WittFunction) -> SubgroupTable:
    """Gamma_0 = f^{-1}(0), closure-checked when the group is finite."""
    g = f.group
    if not g.is_finite():
        gens = f.gen_values

        def member(alpha, _gens=gens):
            total = ZERO
            for c, x in zip(_gens, alpha):
                total = total + c * x
            return total.is_zero()

        return SubgroupTable(g, None, member, description="kernel of an additive form")
    elems = frozenset(a for a in g.elements() if f(a).is_zero())
    sub = SubgroupTable(g, elems, description="f^{-1}(0)")
    bad = sub.closure_witness()
    if bad is not None:
        raise InternalConsistencyError(f"f^-1(0) is not a subgroup: {bad}")
    for a in g.elements():
        for b in g.elements():
            if g.sub(a, b) in elems and f(a) != f(b):
                raise InternalConsistencyError(f"f is not constant on the Gamma_0-coset of {a}, {b}")
    return sub


@dataclass
class CasePartition:
    case_tag: CaseTag
    f: WittFunction = field(repr=False)
    gamma0: SubgroupTable
    c: Scalar | None = None
    tau: dict | None = None

    @property
    def group(self) -> GroupSpec:
        return self.f.group

    def coset_index(self, alpha: Element) -> int:
        """The Z/3 label tau(alpha); case Three only."""
        return self.tau[alpha]

    def coset_representatives(self) -> list:
        """gamma_0 = 0, gamma_1, gamma_2: least element of each tau-fibre."""
        reps = [None, None, None]
        for a in self.group.elements():
            i = self.tau[a]
            if reps[i] is None:
                reps[i] = a
        return reps

    def to_json(self) -> dict:
        fmt = GroupSpec.format_element
        out = {"case": self.case_tag.value, "c": str(self.c) if self.c is not None else None}
        if self.gamma0.is_materialized():
            out["gamma0"] = [fmt(a) for a in self.gamma0.sorted_elements()]
        else:
            out["gamma0"] = self.gamma0.description
        if self.tau is not None:
            out["tau"] = {fmt(a): self.tau[a] for a in sorted(self.tau)}
        return out


def classify(f: WittFunction) -> CasePartition:
    report = validate(f)
    if not report.valid:
        raise InputError(f"cannot classify an invalid f: {report.reason}")
    g = f.group
    gamma0 = kernel(f)
    image = f.image()
    if image is None:
        return CasePartition(CaseTag.BIG, f, gamma0)
    n = len(image)
    if n == 1:
        return CasePartition(CaseTag.ABELIAN, f, gamma0)
    if n == 2:
        (c,) = image - {ZERO}
        for a in g.elements():
            if (a in gamma0) == (f(a) == c):
                raise InternalConsistencyError(f"f is not constant off Gamma_0 at {a}")
        return CasePartition(CaseTag.TWO, f, gamma0, c=c)
    if n == 3:
        elems = g.elements()
        c = next(f(a) for a in elems if not f(a).is_zero())
        if image != {ZERO, c, -c}:
            raise InternalConsistencyError(f"three-valued f has image {sorted(map(str, image))}, expected {{0, c, -c}}")
        tau = {}
        for a in elems:
            v = f(a)
            tau[a] = 0 if v.is_zero() else (1 if v == c else 2)
        for a in elems:
            for b in elems:
                if tau[g.add(a, b)] != (tau[a] + tau[b]) % 3:
                    raise InternalConsistencyError(f"tau is not a homomorphism at {a}, {b}")
        return CasePartition(CaseTag.THREE, f, gamma0, c=c, tau=tau)
    raise InternalConsistencyError(
        f"a valid f on a finite group cannot take {n} >= 4 values (it would be additive, hence zero)"
    )
