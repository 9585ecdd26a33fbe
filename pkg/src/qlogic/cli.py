"""Command-line workbench.

Subcommands:

    build     load + validate a model, print its context poset
    eval      evaluate a formula against a model
    hasse     export the section frame's Hasse diagram as DOT
    check     run the invariant suites (adjunction, distributivity, ...)
    quotient  show the quotient logic at a context (coarse or refined)
    decidable list the decidable sections of the frame
    bell      CHSH demo: Born-rule terms vs the classical bound
    bridge    classical model vs its diagonal commutative quantum twin

Exit codes: 0 success, 1 check failure, 2 usage/parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .bell import (
    BellScenario,
    DEFAULT_ANGLES,
    chsh_terms,
    classical_vertex_check,
    maximally_mixed_state,
    orthodox_distributivity_witness,
    singlet_state,
)
from .classical import ClassicalModel, ClassicalObservable, OutcomeSpace
from .errors import QLogicError, ResourceLimitError
from .formulas import ParseError, eval_formula, parse_formula
from .hasse import export_dot, section_label
from .quantum import QuantumModel, classical_bridge


def load_model(path: str):
    with open(path) as fh:
        doc = json.load(fh)
    kind = doc.get("kind")
    options = doc.get("options", {})
    if kind == "classical":
        omega = OutcomeSpace(frozenset(str(p) for p in doc["points"]))
        observables = {
            name: ClassicalObservable.from_dict(
                name, {str(k): v for k, v in vm.items()}
            )
            for name, vm in doc["observables"].items()
        }
        return ClassicalModel(omega, observables)
    if kind == "quantum":
        observables = {}
        for name, rows in doc["observables"].items():
            mat = np.array(
                [[complex(re, im) for re, im in row] for row in rows]
            )
            observables[name] = mat
        kwargs = {
            k: options[k] for k in ("tau_herm", "tau_proj", "tau_eig") if k in options
        }
        return QuantumModel(observables, **kwargs)
    raise QLogicError(f"model kind must be 'classical' or 'quantum', got {kind!r}")


# -- subcommands -------------------------------------------------------------


def cmd_build(args) -> int:
    model = load_model(args.model)
    poset = model.poset
    issues = poset.validate()
    print(f"contexts ({len(poset.context_ids)}):")
    for c in poset.context_ids:
        atoms = poset.algebra(c).atoms
        print(f"  {c}: atoms {list(atoms)}")
    print("cover relations:")
    for c1 in poset.context_ids:
        for c2 in poset.context_ids:
            if c1 == c2 or not poset.leq(c1, c2):
                continue
            between = [
                d
                for d in poset.context_ids
                if d not in (c1, c2) and poset.leq(c1, d) and poset.leq(d, c2)
            ]
            if not between:
                print(f"  {c1} < {c2}")
    if issues:
        print("violations:")
        for issue in issues:
            print(f"  {issue}")
        return 1
    print("poset valid")
    return 0


def cmd_eval(args) -> int:
    model = load_model(args.model)
    ast = parse_formula(args.formula)
    section = eval_formula(model, ast)
    print(f"section: {section_label(model.frame, section)}")
    for c, v in section.items:
        print(f"  {c}: {{{','.join(sorted(v))}}}")
    pieces = model.frame.decompose_to_elementary(section)
    if pieces:
        print("elementary decomposition:")
        for e in pieces:
            print(f"  ({e.context}, {{{','.join(sorted(e.value))}}})")
    else:
        print("elementary decomposition: BOT")
    return 0


def cmd_hasse(args) -> int:
    model = load_model(args.model)
    dot = export_dot(model.frame)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(dot)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(dot)
    return 0


def cmd_check(args) -> int:
    model = load_model(args.model)
    frame = model.frame
    failures = 0

    issues = model.poset.validate()
    print(f"poset invariants: {'ok' if not issues else f'{len(issues)} violations'}")
    failures += len(issues)

    sections = frame.enumerate_sections()
    n = len(sections)
    print(f"sections: {n}")

    bad = sum(not frame.is_monotone(s) for s in sections)
    print(f"monotonicity: {n - bad}/{n}")
    failures += bad

    implies_bad = 0
    for s1 in sections:
        for s2 in sections:
            if frame.implies(s1, s2) != frame.brute_force_implies(s1, s2):
                implies_bad += 1
    print(f"implies vs brute force: {n * n - implies_bad}/{n * n}")
    failures += implies_bad

    adj_bad = 0
    triples = 0
    for s1 in sections:
        for s2 in sections:
            imp = frame.implies(s1, s2)
            lowered = [frame.meet([s, s1]) for s in sections]
            for s, low in zip(sections, lowered):
                triples += 1
                if frame.leq(s, imp) != frame.leq(low, s2):
                    adj_bad += 1
    print(f"adjunction: {triples - adj_bad}/{triples}")
    failures += adj_bad

    if args.exhaustive:
        dist = frame.check_distributive(exhaustive=True)
        print(f"distributivity: {'ok' if not dist else f'{len(dist)} violations'}")
        failures += len(dist)

    if failures:
        print(f"FAILED ({failures} violations)")
        return 1
    print("all checks passed")
    return 0


def cmd_quotient(args) -> int:
    model = load_model(args.model)
    frame = model.frame
    if args.refined:
        sub = frame.restrict_upset(args.context)
        sections = sub.enumerate_sections()
        decidable = sub.decidable_elements()
        print(
            f"refined quotient at {args.context}: frame over "
            f"{list(sub.poset.context_ids)}"
        )
        print(f"sections: {len(sections)}, decidable: {len(decidable)}")
        for s in sections:
            print(f"  {section_label(sub, s)}")
    else:
        alg = model.poset.algebra(args.context)
        elements = list(alg.elements())
        print(
            f"coarse quotient at {args.context}: Boolean algebra with "
            f"{len(elements)} elements over atoms {list(alg.atoms)}"
        )
        for e in elements:
            print(f"  {{{','.join(sorted(e))}}}")
    return 0


def cmd_decidable(args) -> int:
    model = load_model(args.model)
    decidable = model.frame.decidable_elements()
    print(f"decidable sections: {len(decidable)}")
    for s in decidable:
        print(f"  {section_label(model.frame, s)}")
    return 0


def cmd_bell(args) -> int:
    angles = DEFAULT_ANGLES
    if args.angles:
        parts = [float(x) for x in args.angles.split(",")]
        if len(parts) != 4:
            raise QLogicError("--angles needs four comma-separated degrees")
        angles = tuple(parts)
    if args.vertices:
        report = classical_vertex_check()
        print(
            f"classical vertices: {report.satisfied}/{report.total} satisfy the "
            f"inequality (min slack {report.min_slack:.3g})"
        )
        if not report.ok:
            return 1
    if args.sweep:
        print("theta,lhs,rhs,violated")
        for k in range(args.sweep + 1):
            theta = 90.0 * k / args.sweep
            scenario = BellScenario.from_angles(0.0, 2 * theta, 3 * theta, theta)
            terms = chsh_terms(singlet_state(), scenario)
            print(
                f"{theta:.6g},{terms.lhs:.9f},{terms.rhs:.9f},"
                f"{str(not terms.satisfied).lower()}"
            )
        return 0
    scenario = BellScenario.from_angles(*angles)
    terms = chsh_terms(singlet_state(), scenario)
    print(f"angles (deg): a1={angles[0]:g} a2={angles[1]:g} b1={angles[2]:g} b2={angles[3]:g}")
    print(f"P(A1&B1)       = {terms.lhs:.9f}")
    print(f"P(A1&B2)       = {terms.t1:.9f}")
    print(f"P(A2&B1)       = {terms.t2:.9f}")
    print(f"P(~A2&~B2)     = {terms.t3:.9f}")
    print(f"bound (rhs)    = {terms.rhs:.9f}")
    print("SATISFIED" if terms.satisfied else "VIOLATED")
    mixed = chsh_terms(maximally_mixed_state(), scenario)
    print(
        f"maximally mixed: lhs {mixed.lhs:.6f} vs rhs {mixed.rhs:.6f} -> "
        + ("SATISFIED" if mixed.satisfied else "VIOLATED")
    )
    witness = orthodox_distributivity_witness(2)
    print(
        "orthodox projection lattice: P1^(P2v~P2) has rank "
        f"{int(round(np.trace(witness.lhs).real))}, "
        f"(P1^P2)v(P1^~P2) has rank {int(round(np.trace(witness.rhs).real))}"
    )
    return 0


def cmd_bridge(args) -> int:
    model = load_model(args.model)
    if not isinstance(model, ClassicalModel):
        raise QLogicError("bridge requires a classical model")
    _, report = classical_bridge(model)
    print(f"classical sections: {report.section_count_classical}")
    print(f"quantum sections:   {report.section_count_quantum}")
    print(f"result: {report.detail}")
    return 0 if report.isomorphic else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qlogic",
        description="Workbench for epistemic measurement logics (classical and quantum).",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="load and validate a model")
    p.add_argument("model")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("eval", help="evaluate a formula")
    p.add_argument("model")
    p.add_argument("-f", "--formula", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("hasse", help="export the Hasse diagram as DOT")
    p.add_argument("model")
    p.add_argument("--out")
    p.set_defaults(func=cmd_hasse)

    p = sub.add_parser("check", help="run the invariant suites")
    p.add_argument("model")
    p.add_argument("--exhaustive", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("quotient", help="quotient logic at a context")
    p.add_argument("model")
    p.add_argument("--context", required=True)
    p.add_argument("--refined", action="store_true")
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("decidable", help="list decidable sections")
    p.add_argument("model")
    p.set_defaults(func=cmd_decidable)

    p = sub.add_parser("bell", help="CHSH demo")
    p.add_argument("--angles", help="a1,a2,b1,b2 in degrees")
    p.add_argument("--vertices", action="store_true")
    p.add_argument("--sweep", type=int, metavar="N", help="CSV sweep over N steps")
    p.set_defaults(func=cmd_bell)

    p = sub.add_parser("bridge", help="classical vs commutative-quantum frames")
    p.add_argument("model")
    p.set_defaults(func=cmd_bridge)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ParseError, QLogicError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:  # pragma: no cover - subclass of QLogicError
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
