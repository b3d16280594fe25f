"""Half-derivations (and delta-derivations) of V(f).

Any linear map splits into graded pieces phi_gamma(e_a) = d_gamma(a) e_{a+gamma},
and phi is a half-derivation iff every piece is.  For a single piece the
condition at (a, b) reads

    2 (f(b) - f(a)) d(a+b) = (f(b) - f(a+gamma)) d(a) + (f(b+gamma) - f(a)) d(b)

which is linear in the values of d.  On a finite group all these
equations form one exact linear system whose nullspace is the full
half-derivation space.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .algebra import AlgebraVector, CheckReport, GradedMap, LinearMap, Verdict, apply_map, bracket, bracket_basis
from .errors import AbelianCaseError, CoefficientDomainError, IndexMismatchError, InfiniteGroupError, InputError
from .exactnum import HALF, ZERO, Scalar
from .group import Element, GroupSpec, Window
from .linalg import in_span, nullspace, rank
from .wittfn import CasePartition, CaseTag, WittFunction, classify, validate


def is_delta_derivation(f: WittFunction, phi: LinearMap, delta, domain: Window) -> CheckReport:
    """Check phi([x, y]) = delta ([phi x, y] + [x, phi y]) on basis pairs of the window.

    A pair that needs a coefficient phi does not tabulate is skipped; if no
    checked pair fails, any skip makes the verdict inconclusive.
    """
    delta = delta if isinstance(delta, Scalar) else Scalar(delta)
    g = f.group
    elems = domain.elements(g)
    images = {}
    for a in elems:
        try:
            images[a] = phi.image(g, a)
        except CoefficientDomainError:
            images[a] = None
    checked = skipped = 0
    for a in elems:
        for b in elems:
            pa, pb = images[a], images[b]
            if pa is None or pb is None:
                skipped += 1
                continue
            try:
                lhs = apply_map(phi, bracket_basis(f, a, b), g)
            except CoefficientDomainError:
                skipped += 1
                continue
            rhs = (bracket(f, pa, AlgebraVector.basis(b)) + bracket(f, AlgebraVector.basis(a), pb)) * delta
            checked += 1
            if lhs != rhs:
                return CheckReport(Verdict.FAIL, (a, b), checked, skipped, f"{delta}-derivation identity fails")
    verdict = Verdict.INCONCLUSIVE if skipped else Verdict.PASS
    return CheckReport(verdict, None, checked, skipped)


def homogeneous_residual(f: WittFunction, d: GradedMap, alpha: Element, beta: Element) -> Scalar:
    """LHS minus RHS of the graded half-derivation equation at (alpha, beta)."""
    g = f.group
    gam = d.degree
    fa, fb = f(alpha), f(beta)
    return (
        2 * (fb - fa) * d.coefficient(g.add(alpha, beta))
        - (fb - f(g.add(alpha, gam))) * d.coefficient(alpha)
        - (f(g.add(beta, gam)) - fa) * d.coefficient(beta)
    )


def _equation(f: WittFunction, gam: Element, a: Element, b: Element) -> dict:
    """Coefficients of the unknowns d_gam(.) in the residual at (a, b)."""
    g = f.group
    fa, fb = f(a), f(b)
    row: dict = {}
    for key, c in (
        (g.add(a, b), 2 * (fb - fa)),
        (a, -(fb - f(g.add(a, gam)))),
        (b, -(f(g.add(b, gam)) - fa)),
    ):
        if c:
            row[key] = row.get(key, ZERO) + c
    return {k: v for k, v in row.items() if v}


@dataclass
class SolutionSpace:
    unknown_index: list
    basis: list
    group: GroupSpec = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vector_to_map(self, vec: Sequence[Scalar]) -> LinearMap:
        tables: dict = {}
        for (gam, alpha), c in zip(self.unknown_index, vec):
            tables.setdefault(gam, {})[alpha] = c
        return LinearMap([GradedMap(gam, t) for gam, t in tables.items()])

    def maps(self) -> list:
        return [self.vector_to_map(v) for v in self.basis]

    def to_json(self) -> dict:
        fmt = GroupSpec.format_element
        return {
            "dim": self.dim,
            "unknowns": [[fmt(gm), fmt(a)] for gm, a in self.unknown_index],
            "basis": [[str(x) for x in v] for v in self.basis],
        }


def _require_nonabelian(f: WittFunction):
    report = validate(f)
    if not report.valid:
        raise InputError(f"f is not a valid Witt function: {report.reason}")
    if f.is_zero():
        raise AbelianCaseError("f is identically zero: V(f) is abelian and every linear map is a half-derivation")


def solve_halfder_space(f: WittFunction) -> SolutionSpace:
    """All half-derivations of V(f) for finite Gamma, by one exact nullspace."""
    g = f.group
    if not g.is_finite():
        raise InfiniteGroupError("solve_halfder_space needs a finite group; use the windowed solver")
    _require_nonabelian(f)
    elems = g.elements()
    unknowns = [(gam, a) for gam in elems for a in elems]
    col = {u: i for i, u in enumerate(unknowns)}
    n = len(unknowns)
    rows = []
    for gam in elems:
        for a in elems:
            for b in elems:
                eq = _equation(f, gam, a, b)
                if eq:
                    row = [ZERO] * n
                    for k, v in eq.items():
                        row[col[(gam, k)]] = v
                    rows.append(row)
    return SolutionSpace(unknowns, nullspace(rows, n), g)


@dataclass
class DegreeSolution:
    degree: Element
    space: SolutionSpace
    under_constrained: bool
    reasons: list
    equations: int

    def is_constant(self) -> bool:
        return all(len(set(v)) == 1 for v in self.space.basis)

    def to_json(self) -> dict:
        out = self.space.to_json()
        out.update(
            degree=GroupSpec.format_element(self.degree),
            under_constrained=self.under_constrained,
            reasons=list(self.reasons),
            equations=self.equations,
            constant=self.is_constant(),
        )
        return out


def solve_halfder_space_windowed(f: WittFunction, degrees: Iterable[Element], w: Window) -> dict:
    """Per-degree half-derivation spaces restricted to a window of an infinite group.

    Unknowns are d_gamma(a) for a in the window; an equation is used when
    a, b and a+b all lie in the window.  A degree is flagged
    under-constrained when the window is narrower than twice the degree's
    norm, when some unknown occurs in no equation, or when no window
    element b has f(b) outside {0, f(gamma), 2 f(gamma)} (the auxiliary
    element the constancy argument needs).
    """
    g = f.group
    if g.is_finite():
        raise InputError("the windowed solver is for groups of positive rank")
    _require_nonabelian(f)
    elems = w.elements(g)
    if not elems:
        raise InputError("empty window")
    inside = set(elems)
    result = {}
    for gam in degrees:
        gam = g.canonical(gam)
        col = {a: i for i, a in enumerate(elems)}
        rows = []
        touched = set()
        for a in elems:
            for b in elems:
                if g.add(a, b) not in inside:
                    continue
                eq = _equation(f, gam, a, b)
                if eq:
                    row = [ZERO] * len(elems)
                    for k, v in eq.items():
                        row[col[k]] = v
                        touched.add(k)
                    rows.append(row)
        reasons = []
        if w.radius < 2 * g.norm(gam):
            reasons.append(f"radius {w.radius} < 2*|gamma| = {2 * g.norm(gam)}")
        if len(touched) < len(elems):
            reasons.append(f"{len(elems) - len(touched)} unknowns occur in no equation")
        fg = f(gam)
        if not any(f(b) not in (ZERO, fg, 2 * fg) for b in elems):
            reasons.append("no auxiliary element with f(b) outside {0, f(gamma), 2f(gamma)} in window")
        space = SolutionSpace([(gam, a) for a in elems], nullspace(rows, len(elems)), g)
        result[gam] = DegreeSolution(gam, space, bool(reasons), reasons, len(rows))
    return result


def classified_basis(part: CasePartition, domain: Window, degrees: Iterable[Element] | None = None) -> list:
    """The classified half-derivation family, one map per parameter.

    Maps are tabulated on the whole group when it is finite, otherwise on
    the window of twice the radius so that every pair check on ``domain``
    finds its coefficients.
    """
    g = part.group
    tag = part.case_tag
    if tag is CaseTag.ABELIAN:
        raise AbelianCaseError("no classified half-derivation family for abelian V(f)")
    if g.is_finite():
        tab = g.elements()
        degs = tab if degrees is None else [g.canonical(d) for d in degrees]
    else:
        if degrees is None:
            raise InputError("degrees are required for an infinite group")
        tab = Window(2 * domain.radius).elements(g)
        degs = [g.canonical(d) for d in degrees]
    gamma0 = part.gamma0
    maps = []
    for gam in sorted(degs):
        if tag is CaseTag.BIG or gam in gamma0:
            maps.append(LinearMap.shift(gam, 1, tab))
        elif tag is CaseTag.TWO:
            maps.append(LinearMap([GradedMap(gam, {a: (1 if a in gamma0 else 0) for a in tab})]))
    return maps


@dataclass
class EquivalenceReport:
    equivalent: bool
    family_in_span: bool
    solved_in_family_span: bool
    solved_dim: int
    family_rank: int
    family_size: int
    discrepancy: list | None = None

    def to_json(self) -> dict:
        return {
            "equivalent": self.equivalent,
            "family_in_span": self.family_in_span,
            "solved_in_family_span": self.solved_in_family_span,
            "solved_dim": self.solved_dim,
            "family_rank": self.family_rank,
            "family_size": self.family_size,
            "discrepancy": [str(x) for x in self.discrepancy] if self.discrepancy is not None else None,
        }


def map_to_vector(phi: LinearMap, unknown_index: Sequence) -> list:
    """Coordinates of phi in the (degree, alpha) unknown ordering."""
    index_degrees = {gam for gam, _ in unknown_index}
    for p in phi.parts:
        if p.degree not in index_degrees and not p.is_zero():
            raise IndexMismatchError(f"map has a nonzero part of degree {p.degree} outside the unknown index")
    vec = []
    for gam, alpha in unknown_index:
        p = phi.part(gam)
        if p is None:
            vec.append(ZERO)
            continue
        try:
            vec.append(p.coefficient(alpha))
        except CoefficientDomainError as exc:
            raise IndexMismatchError(str(exc)) from None
    return vec


def compare_spaces(solved: SolutionSpace, family: Sequence[LinearMap]) -> EquivalenceReport:
    fam = [map_to_vector(m, solved.unknown_index) for m in family]
    discrepancy = None
    family_in = True
    for v in fam:
        if not in_span(solved.basis, v):
            family_in, discrepancy = False, v
            break
    solved_in = True
    for v in solved.basis:
        if not in_span(fam, v):
            solved_in = False
            discrepancy = discrepancy or v
            break
    frank = rank(fam)
    equivalent = family_in and solved_in and frank == solved.dim
    return EquivalenceReport(equivalent, family_in, solved_in, solved.dim, frank, len(fam), discrepancy)


def compare_windowed(part: CasePartition, solutions: dict, w: Window) -> tuple[str, dict]:
    """Per-degree comparison of windowed solutions with the classified family.

    Returns ("consistent with classification" | "discrepancy" | "inconclusive", reports).
    A family map outside the solved span is a genuine discrepancy; a solved
    space larger than the family is only a discrepancy when the window was
    not flagged under-constrained.
    """
    family = classified_basis(part, w, solutions.keys())
    reports = {}
    status = "consistent with classification"
    for gam, sol in solutions.items():
        idx = sol.space.unknown_index
        # restrict the tabulation to the solve window
        maps = [
            LinearMap([GradedMap(gam, {a: m.part(gam).coeffs[a] for _, a in idx})])
            for m in family
            if m.part(gam) is not None
        ]
        rep = compare_spaces(sol.space, maps)
        reports[gam] = rep
        if not rep.family_in_span:
            status = "discrepancy"
        elif not rep.equivalent:
            if sol.under_constrained:
                status = status if status == "discrepancy" else "inconclusive"
            else:
                status = "discrepancy"
        elif sol.under_constrained and status == "consistent with classification":
            status = "inconclusive"
    return status, reports


def half_derivation_summary(f: WittFunction) -> dict:
    """Solve, classify and cross-check on a finite group."""
    part = classify(f)
    solved = solve_halfder_space(f)
    family = classified_basis(part, Window(0))
    eq = compare_spaces(solved, family)
    return {"partition": part, "solved": solved, "family": family, "equivalence": eq}


def is_half_derivation(f: WittFunction, phi: LinearMap, domain: Window) -> CheckReport:
    return is_delta_derivation(f, phi, HALF, domain)
