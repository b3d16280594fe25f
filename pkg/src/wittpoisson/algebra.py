"""The Lie algebra V(f): sparse vectors, the bracket, graded linear maps.

Sign convention: ``[e_a, e_b] = (f(b) - f(a)) e_{a+b}``.  For Gamma = Z and
f = id this is the negative of the common ``(a - b) e_{a+b}`` Witt
bracket; the two algebras are isomorphic through ``e_a -> -e_a``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import CoefficientDomainError, InputError
from .exactnum import ONE, ZERO, Scalar, parse_scalar
from .group import Element, GroupSpec, Window
from .wittfn import WittFunction


class Verdict(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"

    @staticmethod
    def combine(verdicts: Iterable[Verdict]) -> Verdict:
        verdicts = list(verdicts)
        if Verdict.FAIL in verdicts:
            return Verdict.FAIL
        if Verdict.INCONCLUSIVE in verdicts:
            return Verdict.INCONCLUSIVE
        return Verdict.PASS


@dataclass
class CheckReport:
    verdict: Verdict
    witness: tuple | None = None
    checked: int = 0
    skipped: int = 0
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "witness": _format_witness(self.witness),
            "checked": self.checked,
            "skipped": self.skipped,
            "detail": self.detail,
        }


def _format_witness(w):
    if w is None:
        return None
    return [GroupSpec.format_element(x) if isinstance(x, tuple) else str(x) for x in w]


class AlgebraVector:
    """Finite linear combination of basis vectors e_alpha, zeros dropped."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        if terms:
            for k, v in terms.items():
                v = v if isinstance(v, Scalar) else Scalar(v)
                if v:
                    clean[tuple(k)] = v
        self._terms = clean

    @classmethod
    def _trusted(cls, terms: dict) -> AlgebraVector:
        obj = object.__new__(cls)
        obj._terms = terms
        return obj

    @classmethod
    def basis(cls, alpha: Element, coeff=ONE) -> AlgebraVector:
        return cls({alpha: coeff})

    @classmethod
    def zero(cls) -> AlgebraVector:
        return cls._trusted({})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def support(self) -> list:
        return sorted(self._terms)

    def coeff(self, alpha: Element) -> Scalar:
        return self._terms.get(alpha, ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, AlgebraVector):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: AlgebraVector) -> AlgebraVector:
        out = dict(self._terms)
        for k, v in other._terms.items():
            s = out.get(k)
            s = v if s is None else s + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return AlgebraVector._trusted(out)

    def __neg__(self):
        return AlgebraVector._trusted({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c) -> AlgebraVector:
        c = c if isinstance(c, Scalar) else Scalar(c)
        if not c:
            return AlgebraVector.zero()
        return AlgebraVector._trusted({k: v * c for k, v in self._terms.items()})

    __rmul__ = __mul__

    def restrict(self, keep) -> AlgebraVector:
        return AlgebraVector._trusted({k: v for k, v in self._terms.items() if keep(k)})

    def shift(self, group: GroupSpec, gamma: Element) -> AlgebraVector:
        """Group-algebra product with e_gamma."""
        return AlgebraVector._trusted({group.add(k, gamma): v for k, v in self._terms.items()})

    def __repr__(self):
        return f"AlgebraVector('{self.to_literal()}')"

    def to_literal(self) -> str:
        if not self._terms:
            return "0"
        return ",".join(f"e{GroupSpec.format_element(k)}:{self._terms[k]}" for k in sorted(self._terms))

    @classmethod
    def parse(cls, text: str, group: GroupSpec) -> AlgebraVector:
        """Parse ``e<elem>:<scalar>`` terms joined by commas, e.g. ``e0:1,e2:1/2``."""
        text = text.strip()
        if text in ("", "0"):
            return cls.zero()
        terms: dict = {}
        pos = 0
        while pos < len(text):
            m = _TERM.match(text, pos)
            if not m:
                raise InputError(f"malformed vector literal {text!r} near position {pos}")
            try:
                key = group.parse_element(m.group(1))
                val = parse_scalar(m.group(2))
            except ValueError as exc:
                raise InputError(f"malformed vector literal {text!r}: {exc}") from exc
            terms[key] = terms.get(key, ZERO) + val
            pos = m.end()
            if pos < len(text):
                if text[pos] != ",":
                    raise InputError(f"malformed vector literal {text!r} near position {pos}")
                pos += 1
                if pos == len(text):
                    raise InputError(f"trailing comma in vector literal {text!r}")
        return cls(terms)


_TERM = re.compile(r"e(-?\d+(?:,-?\d+)*):([^,]+)")


def group_product(group: GroupSpec, x: AlgebraVector, y: AlgebraVector) -> AlgebraVector:
    """The group-algebra product e_a . e_b = e_{a+b}."""
    out: dict = {}
    for a, ca in x.items():
        for b, cb in y.items():
            k = group.add(a, b)
            s = out.get(k)
            v = ca * cb
            s = v if s is None else s + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return AlgebraVector._trusted(out)


def bracket_basis(f: WittFunction, a: Element, b: Element) -> AlgebraVector:
    c = f(b) - f(a)
    if not c:
        return AlgebraVector.zero()
    return AlgebraVector._trusted({f.group.add(a, b): c})


def bracket(f: WittFunction, x: AlgebraVector, y: AlgebraVector) -> AlgebraVector:
    g = f.group
    out: dict = {}
    fx = {a: f(a) for a, _ in x.items()}
    fy = {b: f(b) for b, _ in y.items()}
    for a, ca in x.items():
        for b, cb in y.items():
            c = fy[b] - fx[a]
            if not c:
                continue
            k = g.add(a, b)
            v = c * ca * cb
            s = out.get(k)
            s = v if s is None else s + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return AlgebraVector._trusted(out)


@dataclass
class GradedMap:
    """phi_gamma(e_alpha) = d_gamma(alpha) e_{alpha+gamma}.

    ``coeffs`` is the tabulated function d_gamma.  A missing key means the
    coefficient is unknown (outside the tabulated window), not zero.
    """

    degree: Element
    coeffs: dict

    def __post_init__(self):
        self.coeffs = {tuple(k): (v if isinstance(v, Scalar) else Scalar(v)) for k, v in self.coeffs.items()}

    def coefficient(self, alpha: Element) -> Scalar:
        try:
            return self.coeffs[alpha]
        except KeyError:
            raise CoefficientDomainError(f"degree-{self.degree} map has no coefficient at {alpha}") from None

    def is_zero(self) -> bool:
        return all(not v for v in self.coeffs.values())


@dataclass
class LinearMap:
    parts: list = field(default_factory=list)

    def __post_init__(self):
        degrees = [p.degree for p in self.parts]
        if len(set(degrees)) != len(degrees):
            raise InputError(f"graded parts must have distinct degrees, got {degrees}")
        self.parts = sorted(self.parts, key=lambda p: p.degree)

    @classmethod
    def shift(cls, gamma: Element, a, domain: Iterable) -> LinearMap:
        """e_alpha -> a e_{alpha+gamma}, tabulated on ``domain``."""
        a = a if isinstance(a, Scalar) else Scalar(a)
        return cls([GradedMap(gamma, {alpha: a for alpha in domain})])

    @classmethod
    def scalar(cls, group: GroupSpec, a, domain: Iterable) -> LinearMap:
        return cls.shift(group.zero(), a, domain)

    @classmethod
    def from_images(cls, group: GroupSpec, images: Mapping) -> LinearMap:
        """Graded decomposition of the map e_alpha -> images[alpha].

        Every part is tabulated on all keys of ``images`` (with explicit
        zeros), so the result has the same coefficient domain as the input.
        """
        by_degree: dict = {}
        for alpha, vec in images.items():
            for target, c in vec.items():
                by_degree.setdefault(group.sub(target, alpha), {})[alpha] = c
        parts = []
        for deg, table in by_degree.items():
            parts.append(GradedMap(deg, {alpha: table.get(alpha, ZERO) for alpha in images}))
        return cls(parts)

    def part(self, degree: Element) -> GradedMap | None:
        for p in self.parts:
            if p.degree == degree:
                return p
        return None

    def degrees(self) -> list:
        return [p.degree for p in self.parts]

    def image(self, group: GroupSpec, alpha: Element) -> AlgebraVector:
        out = {}
        for p in self.parts:
            c = p.coefficient(alpha)
            if c:
                out[group.add(alpha, p.degree)] = c
        return AlgebraVector._trusted(out)

    def is_scalar(self, group: GroupSpec) -> bool:
        """True when the map is a constant multiple of the identity on its domain."""
        zero = group.zero()
        for p in self.parts:
            if p.degree != zero:
                if not p.is_zero():
                    return False
            elif len(set(p.coeffs.values())) > 1:
                return False
        return True


def apply_map(phi: LinearMap, x: AlgebraVector, group: GroupSpec) -> AlgebraVector:
    out: dict = {}
    for alpha, c in x.items():
        for p in phi.parts:
            d = p.coefficient(alpha)
            if not d:
                continue
            k = group.add(alpha, p.degree)
            v = d * c
            s = out.get(k)
            s = v if s is None else s + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return AlgebraVector._trusted(out)


def verify_jacobi(f: WittFunction, domain: Window, padding: int | None = None) -> CheckReport:
    """Jacobi identity on all basis triples of the window.

    Accepts invalid f on purpose: this is the independent route for the
    Lie condition.  A triple whose partial sums leave ``radius + padding``
    is skipped and turns a would-be pass into an inconclusive verdict.
    """
    g = f.group
    elems = domain.elements(g)
    if padding is None:
        padding = 2 * domain.radius
    basis = {a: AlgebraVector.basis(a) for a in elems}
    checked = skipped = 0
    for a in elems:
        for b in elems:
            ab = g.add(a, b)
            for c in elems:
                sums = (ab, g.add(b, c), g.add(c, a), g.add(ab, c))
                if not all(domain.contains(g, s, padding) for s in sums):
                    skipped += 1
                    continue
                x, y, z = basis[a], basis[b], basis[c]
                total = (
                    bracket(f, bracket(f, x, y), z)
                    + bracket(f, bracket(f, y, z), x)
                    + bracket(f, bracket(f, z, x), y)
                )
                checked += 1
                if total:
                    return CheckReport(Verdict.FAIL, (a, b, c), checked, skipped, "Jacobi identity fails")
    verdict = Verdict.INCONCLUSIVE if skipped else Verdict.PASS
    return CheckReport(verdict, None, checked, skipped)
