"""Finitely generated abelian groups Z^r x Z/m1 x ... x Z/mk.

Elements are plain tuples of ints, free coordinates first, torsion
coordinates reduced into ``range(m)``.  Tuples keep elements hashable and
give the lexicographic order used for every deterministic enumeration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .errors import InfiniteGroupError, InputError, NotASubgroupError

Element = tuple


@dataclass(frozen=True)
class GroupSpec:
    rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(m) for m in self.torsion))
        if self.rank < 0:
            raise InputError("rank must be nonnegative")
        if any(m < 2 for m in self.torsion):
            raise InputError(f"torsion orders must be >= 2, got {list(self.torsion)}")

    @classmethod
    def cyclic(cls, m: int) -> GroupSpec:
        return cls(0, (m,))

    @classmethod
    def from_json(cls, obj) -> GroupSpec:
        if not isinstance(obj, dict) or "rank" not in obj:
            raise InputError(f"group spec needs a 'rank' field: {obj!r}")
        try:
            return cls(int(obj["rank"]), tuple(obj.get("torsion", ())))
        except (TypeError, ValueError) as exc:
            raise InputError(f"bad group spec {obj!r}: {exc}") from exc

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    @property
    def width(self) -> int:
        return self.rank + len(self.torsion)

    def is_finite(self) -> bool:
        return self.rank == 0

    def order(self) -> int:
        if not self.is_finite():
            raise InfiniteGroupError("an infinite group has no finite order")
        n = 1
        for m in self.torsion:
            n *= m
        return n

    def zero(self) -> Element:
        return (0,) * self.width

    def canonical(self, elem: Sequence[int]) -> Element:
        elem = tuple(int(x) for x in elem)
        if len(elem) != self.width:
            raise InputError(f"element {elem} does not match group shape {self}")
        r = self.rank
        return elem[:r] + tuple(x % m for x, m in zip(elem[r:], self.torsion))

    def add(self, a: Element, b: Element) -> Element:
        r = self.rank
        if not self.torsion:
            return tuple(x + y for x, y in zip(a, b))
        free = tuple(x + y for x, y in zip(a[:r], b[:r]))
        return free + tuple((x + y) % m for x, y, m in zip(a[r:], b[r:], self.torsion))

    def neg(self, a: Element) -> Element:
        r = self.rank
        return tuple(-x for x in a[:r]) + tuple((-x) % m for x, m in zip(a[r:], self.torsion))

    def sub(self, a: Element, b: Element) -> Element:
        return self.add(a, self.neg(b))

    def scale(self, k: int, a: Element) -> Element:
        r = self.rank
        return tuple(k * x for x in a[:r]) + tuple((k * x) % m for x, m in zip(a[r:], self.torsion))

    def norm(self, a: Element) -> int:
        """Max-norm of the free part (0 for purely torsion elements)."""
        return max((abs(x) for x in a[: self.rank]), default=0)

    def elements(self) -> list:
        if not self.is_finite():
            raise InfiniteGroupError(f"cannot enumerate the infinite group {self}")
        return list(itertools.product(*(range(m) for m in self.torsion)))

    def window(self, radius: int) -> list:
        free = [range(-radius, radius + 1)] * self.rank
        return list(itertools.product(*free, *(range(m) for m in self.torsion)))

    def parse_element(self, text: str) -> Element:
        try:
            parts = [int(x) for x in str(text).split(",")] if str(text) != "" else []
        except ValueError as exc:
            raise InputError(f"malformed group element literal {text!r}") from exc
        if len(parts) != self.width:
            raise InputError(f"element literal {text!r} has {len(parts)} components, group needs {self.width}")
        return self.canonical(parts)

    @staticmethod
    def format_element(elem: Element) -> str:
        return ",".join(str(x) for x in elem)

    def __str__(self):
        factors = ["Z"] * self.rank + [f"Z/{m}" for m in self.torsion]
        return " x ".join(factors) if factors else "0"


@dataclass(frozen=True)
class Window:
    """Finite symmetric truncation of a group: free part bounded by ``radius``."""

    radius: int

    def __post_init__(self):
        if self.radius < 0:
            raise InputError("window radius must be nonnegative")

    def elements(self, group: GroupSpec) -> list:
        if group.is_finite():
            return group.elements()
        return group.window(self.radius)

    def contains(self, group: GroupSpec, elem: Element, padding: int = 0) -> bool:
        return group.is_finite() or group.norm(elem) <= self.radius + padding


@dataclass(frozen=True)
class SubgroupTable:
    parent: GroupSpec
    elements: frozenset | None = None
    predicate: Callable | None = field(default=None, compare=False)
    description: str = ""

    def __contains__(self, elem) -> bool:
        if self.elements is not None:
            return elem in self.elements
        return bool(self.predicate(elem))

    def is_materialized(self) -> bool:
        return self.elements is not None

    def sorted_elements(self) -> list:
        if self.elements is None:
            raise InfiniteGroupError("kernel-defined subgroup of an infinite group is not materialized")
        return sorted(self.elements)

    def closure_witness(self):
        """First violation of subgroup closure, or None.  Finite tables only."""
        g = self.parent
        if g.zero() not in self.elements:
            return ("zero", g.zero())
        for a in sorted(self.elements):
            if g.neg(a) not in self.elements:
                return ("neg", a)
            for b in sorted(self.elements):
                if g.add(a, b) not in self.elements:
                    return ("add", a, b)
        return None


@dataclass(frozen=True)
class Coset:
    representative: Element
    elements: tuple


def elem_add(spec: GroupSpec, a: Element, b: Element) -> Element:
    return spec.add(spec.canonical(a), spec.canonical(b))


def enumerate_group(spec: GroupSpec) -> list:
    return spec.elements()


def window_elements(spec: GroupSpec, w: Window) -> list:
    return w.elements(spec)


def coset_decompose(spec: GroupSpec, sub: SubgroupTable | Iterable) -> list:
    """Partition a finite group into cosets of ``sub``.

    Representatives are the lexicographically least element of each coset,
    so the coset of zero comes first with representative zero.
    """
    if not isinstance(sub, SubgroupTable):
        sub = SubgroupTable(spec, frozenset(spec.canonical(x) for x in sub))
    if not sub.is_materialized():
        raise InfiniteGroupError("coset decomposition needs a finite subgroup table")
    bad = sub.closure_witness()
    if bad is not None:
        raise NotASubgroupError(f"not a subgroup of {spec}: closure fails at {bad}")
    seen = set()
    cosets = []
    for g in spec.elements():
        if g in seen:
            continue
        members = tuple(sorted(spec.add(g, h) for h in sub.elements))
        seen.update(members)
        cosets.append(Coset(members[0], members))
    return cosets
