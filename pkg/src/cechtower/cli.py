"""Batch front door: one command per process, JSON payload in, JSON report out.

Results go to stdout with sorted keys and no timestamps, so identical
requests produce byte-identical responses.  Diagnostics go to stderr.
Exit codes: 0 success, 2 schema/validation failure (message names the JSON
path), 3 internal verification failure (always a bug), 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from typing import Any, Optional

from cechtower import jsonio
from cechtower.abelian import GroupElement
from cechtower.cochain import (
    cech_complex,
    class_of,
    coboundary,
    cohomology,
    Cochain,
)
from cechtower.errors import (
    BudgetExceededError,
    SchemaError,
    ValidationError,
    VerificationError,
)
from cechtower.exactseq import connecting, long_exact_sequence
from cechtower.liftgerbe import LIFT_SEARCH_BUDGET, brute_force_lift, lifting_obstruction
from cechtower.spectral import check_degeneration, filtered_terms
from cechtower.tower import compare_towers, tower_classes, verify_tower

_RELIFT_SEED = 0x5EC710
_RELIFT_COUNT = 20


@dataclass(frozen=True)
class Options:
    max_degree: Optional[int] = None
    budget: Optional[int] = None
    verify: bool = False


@dataclass(frozen=True)
class Request:
    command: str
    payload: Any
    options: Options = Options()


def _payload_dict(payload: Any) -> dict:
    if not isinstance(payload, dict):
        raise SchemaError("payload", "expected an object")
    return payload


def _random_element(rng: random.Random, group) -> GroupElement:
    coords = []
    for o in group.orders:
        coords.append(rng.randrange(o) if o else rng.randint(-2, 2))
    return GroupElement(group, tuple(coords))


def _random_cochain(rng: random.Random, complex_, degree: int) -> Cochain:
    group = complex_.group(degree)
    return Cochain(complex_, degree, tuple(
        (rng.randrange(o) if o else rng.randint(-2, 2)) for o in group.orders))


def _cmd_cohomology(payload: Any, options: Options) -> dict:
    d = _payload_dict(payload)
    x = jsonio.parse_complex(jsonio._get(d, "complex", "payload"), "payload.complex")
    group = jsonio.parse_group(jsonio._get(d, "group", "payload"), "payload.group")
    degree = d.get("degree", "all")
    comp = cech_complex(x, group)
    if degree == "all":
        top = options.max_degree if options.max_degree is not None else x.dim
        degrees = list(range(top + 1))
    elif isinstance(degree, int) and not isinstance(degree, bool) and degree >= 0:
        degrees = [degree]
    else:
        raise SchemaError("payload.degree", 'expected "all" or a non-negative integer')
    result = {f"H{p}": cohomology(comp, p).group.label() for p in degrees}
    if options.verify:
        ok = True
        for p in degrees:
            h = cohomology(comp, p)
            for k, rep in enumerate(h.representatives):
                coords = h.coords_of(rep)
                expected = tuple(1 if i == k else 0 for i in range(h.group.ngens))
                ok = ok and coords == expected
        result["verify"] = {"representatives_project_to_generators": ok}
    return result


def _parse_connecting_payload(payload: Any):
    d = _payload_dict(payload)
    x = jsonio.parse_complex(jsonio._get(d, "complex", "payload"), "payload.complex")
    ses = jsonio.parse_ses(jsonio._get(d, "ses", "payload"), "payload.ses")
    comp = cech_complex(x, ses.c)
    c = jsonio.parse_cochain(jsonio._get(d, "cochain", "payload"), comp,
                             "payload.cochain")
    return x, ses, c


def _cmd_connecting(payload: Any, options: Options) -> dict:
    x, ses, c = _parse_connecting_payload(payload)
    try:
        out = connecting(x, ses, c)
    except ValidationError as e:
        raise SchemaError("payload.cochain", str(e)) from None
    cl = class_of(cech_complex(x, ses.a), out)
    result = {"degree": out.degree, "cochain": jsonio.cochain_to_doc(out),
              "class": jsonio.class_to_doc(cl)}
    if options.verify:
        rng = random.Random(_RELIFT_SEED)
        k = cech_complex(x, ses.c).ncells(c.degree)
        stable = True
        for _ in range(_RELIFT_COUNT):
            twist = [_random_element(rng, ses.a) for _ in range(k)]
            alt = connecting(x, ses, c, twist=twist)
            alt_cl = class_of(cech_complex(x, ses.a), alt)
            stable = stable and alt_cl.coords == cl.coords
        result["verify"] = {"section_independence": stable,
                            "relifts": _RELIFT_COUNT}
    return result


def _cmd_les(payload: Any, options: Options) -> dict:
    d = _payload_dict(payload)
    x = jsonio.parse_complex(jsonio._get(d, "complex", "payload"), "payload.complex")
    ses = jsonio.parse_ses(jsonio._get(d, "ses", "payload"), "payload.ses")
    top = options.max_degree if options.max_degree is not None else x.dim + 1
    report = long_exact_sequence(x, ses, top)
    return {
        "nodes": [{"label": n.label, "group": jsonio.group_to_doc(n.group)}
                  for n in report.nodes],
        "exact_at": [{"label": e.label, "ok": e.ok} for e in report.exact_at],
        "ok": report.ok,
    }


def _cmd_tower(payload: Any, options: Options) -> dict:
    spec = jsonio.parse_tower_spec(payload, "payload")
    classes = tower_classes(spec)
    result = {"stages": [
        {"degree": cl.degree, "group": jsonio.group_to_doc(cl.group),
         "coords": list(cl.coords),
         "representative": jsonio.cochain_to_doc(cl.representative)}
        for cl in classes.stages]}
    if options.verify:
        report = verify_tower(spec)
        rng = random.Random(_RELIFT_SEED)
        base = spec.c2.complex
        perturb = coboundary(_random_cochain(rng, base, 1))
        alt_spec = type(spec)(spec.complex, spec.c2 + perturb, spec.sequences)
        stable = compare_towers(classes, tower_classes(alt_spec)).equal
        result["verify"] = {
            "checks": [{"name": c.name, "ok": c.ok} for c in report.checks],
            "ok": report.ok,
            "class_stability_under_perturbation": stable,
        }
    return result


def _cmd_spectral(payload: Any, options: Options) -> dict:
    f = jsonio.parse_filtered(payload, "payload")
    r_max = options.max_degree if options.max_degree is not None else 3
    if r_max < 1:
        raise SchemaError("options.max_degree", "page bound must be >= 1")
    grid = {}
    pages: list = list(range(1, r_max + 1)) + [None]
    for r in pages:
        for p in range(1, f.depth + 1):
            for n in range(0, f.site.dim + 2):
                q = n - p
                terms = filtered_terms(f, r, p, q)
                key = f"{'inf' if r is None else r}/{p}/{q}"
                grid[key] = {"Z": jsonio.group_to_doc(terms.z_group),
                             "B": jsonio.group_to_doc(terms.b_group),
                             "E": jsonio.group_to_doc(terms.e_group)}
    result = {"grid": grid}
    if options.verify:
        result["verify"] = {"degeneration_ok": check_degeneration(f, r_max).ok}
    return result


def _cmd_gerbe_lift(payload: Any, options: Options) -> dict:
    d = _payload_dict(payload)
    x = jsonio.parse_complex(jsonio._get(d, "complex", "payload"), "payload.complex")
    ext = jsonio.parse_extension(jsonio._get(d, "extension", "payload"),
                                 "payload.extension")
    t_doc = jsonio._get(d, "transition", "payload")
    t = jsonio.parse_transition(t_doc, x, ext.quotient, "payload.transition")
    cochain, cl = lifting_obstruction(t, ext)
    result = {"cocycle": jsonio.cochain_to_doc(cochain),
              "class": jsonio.class_to_doc(cl),
              "obstruction_zero": cl.is_zero}
    if options.verify:
        budget = options.budget if options.budget is not None else LIFT_SEARCH_BUDGET
        lift = brute_force_lift(t, ext, budget=budget)
        rng = random.Random(_RELIFT_SEED)
        fibers = [[g for g in range(ext.group.order) if ext.projection[g] == q]
                  for q in range(ext.quotient.order)]
        stable = True
        for _ in range(_RELIFT_COUNT):
            section = tuple(rng.choice(f) for f in fibers)
            _, alt_cl = lifting_obstruction(t, ext, section=section)
            stable = stable and alt_cl.coords == cl.coords
        result["verify"] = {
            "lift_found": lift is not None,
            "oracle_agrees": (lift is not None) == cl.is_zero,
            "section_independence": stable,
        }
    return result


_VALIDATORS = {
    "group": jsonio.parse_group,
    "homomorphism": jsonio.parse_homomorphism,
    "complex": jsonio.parse_complex,
    "ses": jsonio.parse_ses,
    "finite_group": jsonio.parse_finite_group,
    "extension": jsonio.parse_extension,
    "tower": jsonio.parse_tower_spec,
    "filtered": jsonio.parse_filtered,
}


def _cmd_validate(payload: Any, options: Options) -> dict:
    d = _payload_dict(payload)
    kind = jsonio._get(d, "kind", "payload")
    if kind not in _VALIDATORS:
        raise SchemaError("payload.kind",
                          f"unknown kind {kind!r}; expected one of "
                          f"{sorted(_VALIDATORS)}")
    _VALIDATORS[kind](jsonio._get(d, "value", "payload"), "payload.value")
    return {"valid": True, "kind": kind}


_COMMANDS = {
    "cohomology": _cmd_cohomology,
    "connecting": _cmd_connecting,
    "les": _cmd_les,
    "tower": _cmd_tower,
    "spectral": _cmd_spectral,
    "gerbe-lift": _cmd_gerbe_lift,
    "validate": _cmd_validate,
}


def execute(request: Request) -> dict:
    """Dispatch a request; raises the package exceptions on failure."""
    if request.command not in _COMMANDS:
        raise SchemaError("command", f"unknown command {request.command!r}")
    return _COMMANDS[request.command](request.payload, request.options)


def _read_payload(path: str) -> Any:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
    except OSError as e:
        raise SchemaError("input", f"cannot read payload: {e}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError("input", f"payload is not valid JSON: {e}") from None


def main(argv: Optional[list[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="cechtower",
        description="Exact Cech cohomology engine: one JSON request per run.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--input", default="-",
                       help="payload JSON file ('-' for stdin)")
        p.add_argument("--max-degree", type=int, default=None,
                       help="top cohomology degree (page bound for spectral)")
        p.add_argument("--budget", type=int, default=None,
                       help="state budget for exhaustive searches")
        p.add_argument("--verify", action="store_true",
                       help="re-run the instance's invariant suite and embed "
                            "the verdicts")
    args = parser.parse_args(argv)

    try:
        payload = _read_payload(args.input)
        request = Request(args.command, payload,
                          Options(args.max_degree, args.budget, args.verify))
        result = execute(request)
    except (SchemaError, ValidationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except VerificationError as e:
        print(f"internal verification failure: {e}", file=sys.stderr)
        return 3
    except BudgetExceededError as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return 4
    sys.stdout.write(json.dumps(result, sort_keys=True, separators=(",", ":")))
    sys.stdout.write("\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
