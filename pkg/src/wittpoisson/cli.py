"""Command line front end.

Exit codes: 0 every check passed, 1 a mathematical check failed (the
report carries a witness), 2 input error, 3 inconclusive because a
window was too small.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .algebra import AlgebraVector, GradedMap, LinearMap, Verdict, verify_jacobi
from .derivations import (
    classified_basis,
    compare_spaces,
    compare_windowed,
    is_delta_derivation,
    solve_halfder_space,
    solve_halfder_space_windowed,
)
from .errors import ClassificationMismatchError, InputError, InternalConsistencyError, UnverifiedProductError
from .exactnum import HALF, parse_scalar
from .group import GroupSpec, Window
from .sampling import Lcg, build_product, draw_parameters
from .tpa import Product, classify_tpp, homlie_check, is_tpp, trivial_structure_report
from .wittfn import CaseTag, WittFunction, classify, validate

EXIT = {"pass": 0, "fail": 1, "error": 2, "inconclusive": 3}
STATUS = {Verdict.PASS: "pass", Verdict.FAIL: "fail", Verdict.INCONCLUSIVE: "inconclusive"}


def _worst(*statuses: str) -> str:
    for s in ("error", "fail", "inconclusive"):
        if s in statuses:
            return s
    return "pass"


class SpecFile:
    def __init__(self, path: str):
        try:
            raw = json.loads(Path(path).read_text(encoding="utf-8"))
        except OSError as exc:
            raise InputError(f"cannot read spec file {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise InputError(f"spec file {path} is not valid JSON: {exc}") from exc
        if not isinstance(raw, dict) or "group" not in raw or "f" not in raw:
            raise InputError("spec file needs 'group' and 'f' fields")
        self.raw = raw
        self.group = GroupSpec.from_json(raw["group"])
        self.f = WittFunction.from_json(self.group, raw["f"])
        window = raw.get("window")
        self.radius = None
        if window is not None:
            try:
                self.radius = int(window["radius"])
            except (KeyError, TypeError, ValueError) as exc:
                raise InputError(f"bad window {window!r}") from exc
            if self.radius < 1:
                raise InputError("window radius must be positive")
        seed = raw.get("seed")
        if seed is not None and (not isinstance(seed, int) or seed < 0):
            raise InputError("seed must be a nonnegative integer")
        self.seed = seed

    def window(self, override: int | None, default: int) -> Window:
        if override is not None:
            return Window(override)
        return Window(self.radius if self.radius is not None else default)


def _load_json_arg(text: str):
    p = Path(text)
    if not text.lstrip().startswith("{") and p.exists():
        text = p.read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"not valid JSON: {exc}") from exc


def _parse_degrees(text: str, g: GroupSpec) -> list:
    try:
        lo, hi = (int(x) for x in text.split(".."))
    except ValueError as exc:
        raise InputError(f"degrees must look like a..b, got {text!r}") from exc
    if lo > hi:
        raise InputError(f"empty degree range {text!r}")
    return [d for d in g.window(max(abs(lo), abs(hi))) if all(lo <= x <= hi for x in d[: g.rank])]


def parse_map(text: str, g: GroupSpec, domain: list) -> LinearMap:
    """``shift:<elem>:<scalar>`` terms joined by ';', or a JSON object with tabulated parts."""
    text = text.strip()
    if text.startswith("{"):
        obj = _load_json_arg(text)
        try:
            parts = [
                GradedMap(
                    g.parse_element(p["degree"]),
                    {g.parse_element(k): parse_scalar(v) for k, v in p["coeffs"].items()},
                )
                for p in obj["parts"]
            ]
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"malformed map: {exc}") from exc
        return LinearMap(parts)
    parts = {}
    for term in filter(None, text.split(";")):
        bits = term.split(":")
        if len(bits) not in (2, 3) or bits[0] != "shift":
            raise InputError(f"malformed map term {term!r}; expected shift:<elem>[:<scalar>]")
        try:
            coeff = parse_scalar(bits[2]) if len(bits) == 3 else parse_scalar("1")
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        deg = g.parse_element(bits[1])
        if deg in parts:
            raise InputError(f"degree {bits[1]} appears twice in the map")
        parts[deg] = GradedMap(deg, {a: coeff for a in domain})
    if not parts:
        raise InputError("empty map literal")
    return LinearMap(list(parts.values()))


# --- commands -----------------------------------------------------------


def cmd_validate(spec: SpecFile, args) -> tuple[str, dict]:
    f = spec.f
    rep = validate(f)
    out = {"validation": rep.to_json()}
    status = "pass" if rep.valid else "fail"
    if f(f.group.zero()).is_zero():
        jac = verify_jacobi(f, spec.window(args.radius, 2))
        out["jacobi"] = jac.to_json()
        if jac.verdict is not Verdict.INCONCLUSIVE and (jac.verdict is Verdict.PASS) != rep.valid:
            raise InternalConsistencyError("Lie condition and Jacobi identity disagree")
    if rep.valid:
        out["classification"] = classify(f).to_json()
    return status, out


def cmd_classify(spec: SpecFile, args) -> tuple[str, dict]:
    return "pass", {"classification": classify(spec.f).to_json()}


def _verify_maps(f, maps, domain) -> tuple[str, list]:
    reps = [is_delta_derivation(f, m, HALF, domain) for m in maps]
    status = STATUS[Verdict.combine(r.verdict for r in reps)]
    return status, [r.to_json() for r in reps]


def cmd_derivations(spec: SpecFile, args) -> tuple[str, dict]:
    f = spec.f
    g = f.group
    part = classify(f)
    if part.case_tag is CaseTag.ABELIAN:
        raise InputError("f is identically zero: V(f) is abelian, every linear map is a half-derivation")
    if g.is_finite():
        solved = solve_halfder_space(f)
        family = classified_basis(part, Window(0))
        eq = compare_spaces(solved, family)
        basis_status, _ = _verify_maps(f, solved.maps(), Window(0))
        sol = solved.to_json()
        sol["verdict"] = "pass" if eq.equivalent else "fail"
        sol["witness"] = eq.to_json()["discrepancy"]
        status = _worst(sol["verdict"], basis_status)
        out = {
            "case": part.case_tag.value,
            "solution": sol,
            "family_size": len(family),
            "equivalence": eq.to_json(),
            "basis_verified": basis_status,
            "structures": trivial_structure_report(f),
        }
        return status, out
    w = spec.window(args.radius, 8)
    degrees = _parse_degrees(args.degrees or "-2..2", g)
    solutions = solve_halfder_space_windowed(f, degrees, w)
    verdict, reports = compare_windowed(part, solutions, w)
    status = {"consistent with classification": "pass", "discrepancy": "fail", "inconclusive": "inconclusive"}[verdict]
    fmt = GroupSpec.format_element
    return status, {
        "case": part.case_tag.value,
        "radius": w.radius,
        "verdict": verdict,
        "degrees": {fmt(d): {**s.to_json(), "equivalence": reports[d].to_json()} for d, s in solutions.items()},
    }


def _domain_for(spec: SpecFile, args, default=4) -> Window:
    return Window(0) if spec.group.is_finite() else spec.window(args.radius, default)


def cmd_tpp_verify(spec: SpecFile, args) -> tuple[str, dict]:
    p = Product.from_json(_load_json_arg(args.product), spec.f)
    rep = is_tpp(spec.f, p, _domain_for(spec, args))
    return STATUS[rep.verdict], {"product": p.to_json(), "tpp": rep.to_json()}


def cmd_tpp_classify(spec: SpecFile, args) -> tuple[str, dict]:
    f = spec.f
    p = Product.from_json(_load_json_arg(args.product), f)
    domain = _domain_for(spec, args)
    try:
        res = classify_tpp(f, p, domain)
    except UnverifiedProductError as exc:
        rep = is_tpp(f, p, domain)
        return "fail", {"product": p.to_json(), "error": str(exc), "tpp": rep.to_json()}
    except ClassificationMismatchError as exc:
        fmt = GroupSpec.format_element
        return "fail", {"product": p.to_json(), "error": f"NOT CLASSIFIED: {exc}", "witness": [fmt(x) for x in exc.witness]}
    return "pass", {"product": p.to_json(), "classification": res.to_json()}


def _run_trial(spec_raw: dict, params: dict, radius: int) -> dict:
    """One random trial; module level so a process pool can run it."""
    g = GroupSpec.from_json(spec_raw["group"])
    f = WittFunction.from_json(g, spec_raw["f"])
    part = classify(f)
    params = {k: AlgebraVector.parse(v, g) for k, v in params.items()}
    p = build_product(part, params)
    domain = Window(0) if g.is_finite() else Window(radius)
    rep = is_tpp(f, p, domain)
    trial = {
        "params": {k: v.to_literal() for k, v in params.items()},
        "verdict": rep.verdict.value,
        "axioms": {k: v["verdict"] for k, v in rep.axioms.to_json().items() if isinstance(v, dict)},
        "witness": rep.to_json()["axioms"]["transposed_leibniz"]["witness"],
        "routes_agree": True,
    }
    if rep.verdict is Verdict.PASS:
        res = classify_tpp(f, p, domain, verify=False)
        trial["round_trip"] = res.params == params
        trial["certified"] = res.certified
    else:
        trial["round_trip"] = None
    return trial


def cmd_tpp_random(spec: SpecFile, args) -> tuple[str, dict]:
    f = spec.f
    part = classify(f)
    if part.case_tag is CaseTag.ABELIAN:
        raise InputError("f is identically zero: no classified products to sample")
    seed = args.seed if args.seed is not None else (spec.seed or 0)
    radius = spec.window(args.radius, 4).radius
    rng = Lcg(seed)
    draws = [
        {k: v.to_literal() for k, v in draw_parameters(part, rng).items()} for _ in range(args.trials)
    ]
    raw = {"group": spec.group.to_json(), "f": f.to_json()}
    if args.threads and args.threads > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            trials = list(pool.map(_run_trial, [raw] * len(draws), draws, [radius] * len(draws)))
    else:
        trials = [_run_trial(raw, d, radius) for d in draws]
    failed = sum(t["verdict"] == "fail" for t in trials)
    inconclusive = sum(t["verdict"] == "inconclusive" for t in trials)
    bad_round_trip = sum(t["round_trip"] is False for t in trials)
    status = _worst(*(t["verdict"] for t in trials), "fail" if bad_round_trip else "pass")
    return status, {
        "case": part.case_tag.value,
        "seed": seed,
        "trials": len(trials),
        "domain_radius": None if f.group.is_finite() else radius,
        "summary": {"failed": failed, "inconclusive": inconclusive, "round_trip_failures": bad_round_trip},
        "results": trials,
    }


def cmd_homlie(spec: SpecFile, args) -> tuple[str, dict]:
    g = spec.group
    domain = _domain_for(spec, args)
    phi = parse_map(args.map, g, domain.elements(g))
    rep = homlie_check(spec.f, phi, domain, literal_form=args.literal_form)
    return STATUS[rep.verdict], {"form": "literal" if args.literal_form else "cyclic", "homlie": rep.to_json()}


def cmd_report(spec: SpecFile, args) -> tuple[str, dict]:
    f = spec.f
    sections = {}
    statuses = []
    st, sections["validate"] = cmd_validate(spec, args)
    statuses.append(st)
    if st != "pass" or classify(f).case_tag is CaseTag.ABELIAN:
        return _worst(*statuses), sections
    st, sections["derivations"] = cmd_derivations(spec, args)
    statuses.append(st)

    part = classify(f)
    g = f.group
    domain = _domain_for(spec, args)
    degrees = None if g.is_finite() else _parse_degrees(args.degrees or "-2..2", g)
    family = classified_basis(part, domain, degrees)
    hom = []
    for m in family:
        if m.is_scalar(g):
            continue
        rep = homlie_check(f, m, domain)
        hom.append({"degree": GroupSpec.format_element(m.parts[0].degree), **rep.to_json()})
        statuses.append(STATUS[rep.verdict])
    sections["homlie"] = hom

    st, sections["tpp_random"] = cmd_tpp_random(spec, args)
    statuses.append(st)
    return _worst(*statuses), sections


# --- driver -------------------------------------------------------------


def _flatten(prefix: str, obj, out: list):
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(obj, list) and any(isinstance(x, (dict, list)) for x in obj):
        for i, v in enumerate(obj):
            _flatten(f"{prefix}[{i}]", v, out)
    else:
        out.append(f"{prefix}: {json.dumps(obj, ensure_ascii=False)}")


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False)
    lines: list = []
    _flatten("", report, lines)
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--radius", type=int, default=None, help="window radius for infinite groups")
    common.add_argument("--threads", type=int, default=1, help="cap on parallel workers")
    common.add_argument("--timing", action="store_true", help="include wall-clock timing (breaks byte-identity)")

    parser = argparse.ArgumentParser(prog="wittpoisson", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    for name, fn in (("validate", cmd_validate), ("classify", cmd_classify)):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("spec")
        p.set_defaults(func=fn)

    p = sub.add_parser("derivations", parents=[common])
    p.add_argument("spec")
    p.add_argument("--degrees", default=None, help="degree range a..b, e.g. --degrees=-2..2 (infinite groups)")
    p.set_defaults(func=cmd_derivations)

    tpp = sub.add_parser("tpp").add_subparsers(dest="tpp_command", required=True)
    p = tpp.add_parser("verify", parents=[common])
    p.add_argument("spec")
    p.add_argument("--product", required=True)
    p.set_defaults(func=cmd_tpp_verify)
    p = tpp.add_parser("classify", parents=[common])
    p.add_argument("spec")
    p.add_argument("--product", required=True)
    p.set_defaults(func=cmd_tpp_classify)
    p = tpp.add_parser("random", parents=[common])
    p.add_argument("spec")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_tpp_random)

    p = sub.add_parser("homlie", parents=[common])
    p.add_argument("spec")
    p.add_argument("--map", required=True, help="shift:<elem>[:<scalar>] terms joined by ';', or JSON parts")
    p.add_argument("--literal-form", action="store_true", help="use [phi y,[z,y]] in the middle term")
    p.set_defaults(func=cmd_homlie)

    p = sub.add_parser("report", parents=[common])
    p.add_argument("spec")
    p.add_argument("--degrees", default=None)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_report)
    return parser


def run(argv) -> tuple[int, str]:
    """Execute a command line; returns (exit code, rendered report)."""
    parser = build_parser()
    argv = list(argv)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), ""
    report = {"tool": "wittpoisson", "version": __version__, "command": argv}
    start = time.perf_counter()
    try:
        spec = SpecFile(args.spec)
        if getattr(args, "trials", 1) is not None and getattr(args, "trials", 1) < 1:
            raise InputError("--trials must be positive")
        status, results = args.func(spec, args)
        report["results"] = results
    except InputError as exc:
        status = "error"
        report["error"] = str(exc)
    report["status"] = status
    report["exit_code"] = EXIT[status]
    if args.timing:
        report["timing_seconds"] = round(time.perf_counter() - start, 3)
    return EXIT[status], render(report, args.format)


def main(argv=None) -> int:
    code, text = run(sys.argv[1:] if argv is None else argv)
    if text:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
