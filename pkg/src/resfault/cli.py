"""Command-line interface.

Subcommands: bounds, strategy, verify, solve, resistance, classes, delta.
Networks are given as JSON files or family shorthands (K8, K2,3,4).
Exit codes: 0 success (verify: distinguishing; solve: plan found),
1 verification failed, 2 bad input or out-of-scope family, 3 solver
timeout, 4 infeasible candidate pool.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bounds as bounds_mod
from . import closed_forms, signatures, solver, strategies
from .families import KPartiteShape, complete_network
from .fileio import (
    FileFormatError,
    NetworkSpec,
    load_network,
    load_plan,
    plan_to_dict,
    resistance_text,
    resistance_with_decimal,
    validate_plan_for,
)
from .network import FaultMode, Measurement, effective_resistance, perturbed_effective_resistance

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_TIMEOUT = 3
EXIT_INFEASIBLE = 4


def _family_args(parser: argparse.ArgumentParser):
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--complete", type=int, metavar="N", help="complete graph on N vertices")
    group.add_argument(
        "--k-partite",
        metavar="A,B,...",
        help="complete k-partite graph with the given partition sizes",
    )


def _parse_family(args) -> tuple[str, object]:
    if args.complete is not None:
        return "complete", args.complete
    parts = tuple(sorted(int(x) for x in args.k_partite.split(",")))
    return "k_partite", KPartiteShape(parts)


def _mode(args) -> FaultMode:
    return FaultMode(args.mode)


def cmd_bounds(args) -> int:
    family, param = _parse_family(args)
    try:
        report = bounds_mod.best_bound(family, param)
    except ValueError as exc:
        print(f"out of scope: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    if args.json:
        print(
            json.dumps(
                {
                    "family": report.family,
                    "lower": report.lower,
                    "upper": report.upper,
                    "exact": report.exact,
                    "lower_formula": report.lower_formula,
                    "upper_formula": report.upper_formula,
                }
            )
        )
    else:
        print(f"family:  {report.family}")
        print(f"lower:   {report.lower}   [{report.lower_formula}]")
        print(f"upper:   {report.upper}   [{report.upper_formula}]")
        print(f"exact:   {report.exact if report.exact is not None else '-'}")
    return EXIT_OK


def _generate_plan(family: str, param) -> strategies.MeasurementPlan:
    if family == "complete":
        return strategies.complete_strategy(param)
    shape: KPartiteShape = param
    if shape.k == 2:
        return strategies.bipartite_strategy(*shape.parts)
    if shape.k == 3:
        return strategies.tripartite_strategy(*shape.parts)
    return strategies.kpartite_strategy(shape)


def cmd_strategy(args) -> int:
    family, param = _parse_family(args)
    try:
        plan = _generate_plan(family, param)
    except ValueError as exc:
        print(f"out of scope: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    net = param.network() if family == "k_partite" else complete_network(param)
    mode = _mode(args)
    ok = signatures.is_distinguishing(net, plan.measurements, mode)
    doc = plan_to_dict(plan)
    doc["mode"] = mode.value
    text = json.dumps(doc, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if not ok:
        print(
            f"verification FAILED: plan of size {len(plan)} does not distinguish "
            f"all faults under mode={mode.value}",
            file=sys.stderr,
        )
        return EXIT_VERIFY_FAILED
    print(f"verified: {len(plan)} measurements distinguish all faults", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        spec = load_network(args.network)
        plan = load_plan(args.plan)
        validate_plan_for(plan, spec.network)
    except FileFormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    mode = plan.mode if args.mode is None else FaultMode(args.mode)
    distinguishing = signatures.is_distinguishing(spec.network, plan.measurements, mode)
    print(f"network: {spec.describe()}  mode: {mode.value}  measurements: {len(plan)}")
    print(f"distinguishing: {'yes' if distinguishing else 'no'}")
    if not distinguishing:
        pairs = signatures.undistinguished_pairs(spec.network, plan.measurements, mode)
        print(f"undistinguished edge pairs ({len(pairs)}):")
        for e1, e2 in pairs:
            print(f"  {e1.pair} ~ {e2.pair}")
        report = solver.analyze_measurement_graph(spec.n, plan.measurements, spec.shape)
        print(f"measurement graph: {len(report.components)} components, "
              f"{len(report.isolated)} isolated, "
              f"{len(report.size_two_components)} size-two components")
        for violation in report.violations:
            print(f"  violated: {violation}")
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def cmd_solve(args) -> int:
    try:
        spec = load_network(args.network)
    except FileFormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    mode = FaultMode(args.mode)
    if args.greedy:
        result = solver.solve_greedy(spec.network, mode=mode, family=spec.describe())
        if isinstance(result, solver.Infeasible):
            return _print_infeasible(result)
        plan, status = result, "greedy (upper bound, not proven minimum)"
    else:
        result = solver.solve_exact(
            spec.network,
            mode=mode,
            budget_seconds=args.budget,
            first_probe_orbits=spec.orbit_representatives(),
            family=spec.describe(),
        )
        if isinstance(result, solver.Infeasible):
            return _print_infeasible(result)
        if isinstance(result, solver.TimedOut):
            print(
                f"timed out: best known plan has {len(result.incumbent)} measurements; "
                f"at least {result.lower_bound} are necessary",
                file=sys.stderr,
            )
            if result.incumbent is not None:
                print(json.dumps(plan_to_dict(result.incumbent), indent=2))
            return EXIT_TIMEOUT
        plan, status = result.plan, "optimal (proven minimum)"
    if args.allow_no_fault:
        extended = signatures.extend_for_no_fault(spec.network, plan.measurements, mode)
        if len(extended) > len(plan):
            plan = strategies.MeasurementPlan(
                tuple(extended),
                plan.provenance + ("no-fault-extension",),
                plan.family,
                mode,
            )
            status += " + 1 no-fault measurement"
        else:
            status += " (already separates the no-fault column)"
    print(json.dumps(plan_to_dict(plan), indent=2))
    print(f"{len(plan)} measurements: {status}", file=sys.stderr)
    return EXIT_OK


def _print_infeasible(result: solver.Infeasible) -> int:
    print("infeasible: no candidate measurement separates:", file=sys.stderr)
    for e1, e2 in result.witness_pairs:
        print(f"  {e1.pair} ~ {e2.pair}", file=sys.stderr)
    return EXIT_INFEASIBLE


def cmd_resistance(args) -> int:
    try:
        spec = load_network(args.network)
    except FileFormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    m = Measurement(args.pair[0], args.pair[1])
    if args.fault:
        edge = spec.network.edge_between(args.fault[0], args.fault[1])
        value = perturbed_effective_resistance(spec.network, m, edge, FaultMode(args.mode))
        label = f"R'{m.pair} with {FaultMode(args.mode).value} fault {edge.pair}"
    else:
        value = effective_resistance(spec.network, m)
        label = f"R{m.pair}"
    if args.json:
        print(json.dumps({"value": resistance_text(value)}))
    else:
        print(f"{label} = {resistance_with_decimal(value)}")
    return EXIT_OK


def cmd_classes(args) -> int:
    try:
        spec = load_network(args.network)
    except FileFormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    m = Measurement(args.measurement[0], args.measurement[1])
    mode = FaultMode(args.mode)
    classes = signatures.equivalence_classes(spec.network, m, mode)
    if args.json:
        doc = [
            {
                "reading": resistance_text(
                    perturbed_effective_resistance(spec.network, m, group[0], mode)
                ),
                "edges": [list(e.pair) for e in group],
            }
            for group in classes.classes
        ]
        print(json.dumps({"measurement": list(m.pair), "classes": doc}))
    else:
        print(
            f"measurement {m.pair} on {spec.describe()}, mode={mode.value}: "
            f"{classes.class_count} classes"
        )
        for group in classes.classes:
            reading = perturbed_effective_resistance(spec.network, m, group[0], mode)
            members = " ".join(str(e.pair) for e in group)
            print(f"  reading {resistance_with_decimal(reading)}: {members}")
    return EXIT_OK


def cmd_delta(args) -> int:
    family, param = _parse_family(args)
    rows = []
    if family == "complete":
        n = param
        if n < 3:
            print("out of scope: complete-graph table needs n >= 3", file=sys.stderr)
            return EXIT_BAD_INPUT
        for case in closed_forms.CompleteCase:
            rows.append(
                {
                    "case": case.value,
                    "shorted": str(closed_forms.complete_delta(n, case, FaultMode.SHORTED)),
                    "removed": str(closed_forms.complete_delta(n, case, FaultMode.REMOVED)),
                }
            )
        title = f"resistance-change table for complete({n})"
    else:
        shape: KPartiteShape = param
        seen = set()
        combos = []
        for q in range(shape.k):
            for g in range(shape.k):
                if q == g:
                    continue
                key = (shape.parts[q], shape.parts[g])
                if key not in seen:
                    seen.add(key)
                    combos.append((q, g))
        for column in closed_forms.KPartiteColumn:
            if column in closed_forms.ZERO_COLUMNS:
                rows.append({"column": column.value, "roles": "-", "shorted": "0", "removed": "0"})
                continue
            for q, g in combos:
                case = closed_forms.KPartiteCase(column, q, g)
                rows.append(
                    {
                        "column": column.value,
                        "roles": f"|p_a|={shape.parts[q]}, |p_ground|={shape.parts[g]}",
                        "shorted": str(closed_forms.kpartite_delta(shape, case, FaultMode.SHORTED)),
                        "removed": str(closed_forms.kpartite_delta(shape, case, FaultMode.REMOVED)),
                    }
                )
        title = f"resistance-change table for k_partite{shape.parts}"
    if args.json:
        print(json.dumps(rows))
    else:
        print(title)
        for row in rows:
            head = row.get("case") or f"{row['column']:>4} [{row['roles']}]"
            cells = ", ".join(
                f"{mode} {row[mode]} (~{float(Fraction(row[mode])):.6g})"
                for mode in ("shorted", "removed")
            )
            print(f"  {head}: {cells}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="resfault",
        description="Faulty-edge detection in resistive networks via exact "
        "effective-resistance probes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="measurement-count bounds for a family")
    _family_args(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("strategy", help="generate and verify a measurement plan")
    _family_args(p)
    p.add_argument("--mode", choices=["removed", "shorted"], default="removed")
    p.add_argument("--out", help="write the plan JSON here instead of stdout")
    p.set_defaults(func=cmd_strategy)

    p = sub.add_parser("verify", help="check whether a plan distinguishes all faults")
    p.add_argument("--network", required=True, help="network file or shorthand (K8, K2,3)")
    p.add_argument("--plan", required=True, help="plan JSON file")
    p.add_argument("--mode", choices=["removed", "shorted"], default=None,
                   help="override the plan file's mode")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", help="minimum (or greedy) distinguishing plan")
    p.add_argument("--network", required=True)
    p.add_argument("--mode", choices=["removed", "shorted"], default="removed")
    how = p.add_mutually_exclusive_group()
    how.add_argument("--exact", action="store_true", default=True)
    how.add_argument("--greedy", action="store_true")
    p.add_argument("--budget", type=float, default=300.0, help="seconds, exact solve")
    p.add_argument("--allow-no-fault", action="store_true",
                   help="also separate the nothing-is-broken outcome")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("resistance", help="effective resistance, optionally under a fault")
    p.add_argument("--network", required=True)
    p.add_argument("--pair", nargs=2, type=int, required=True, metavar=("R", "S"))
    p.add_argument("--fault", nargs=2, type=int, metavar=("U", "V"))
    p.add_argument("--mode", choices=["removed", "shorted"], default="removed")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_resistance)

    p = sub.add_parser("classes", help="fault equivalence classes of one measurement")
    p.add_argument("--network", required=True)
    p.add_argument("--measurement", nargs=2, type=int, required=True, metavar=("R", "S"))
    p.add_argument("--mode", choices=["removed", "shorted"], default="removed")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("delta", help="closed-form resistance-change table for a family")
    _family_args(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_delta)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
