"""Command-line interface.

Subcommands build complexes and fields, run the homology / spectral /
continuation computations and experiment sweeps, and emit one JSON report on
stdout (optionally also to a file via ``--json``).

Exit codes: 0 success, 1 a checked property failed, 2 bad input.

Examples::

    morsespec homology --complex torus:4:4 --field expr:random:7
    morsespec spectral --complex torus:3:3 --field expr:twobump --class all --oracle
    morsespec compare --complex torus:3:3 --trials 500 --seed 7
    morsespec sweep --complex torus:6:6 --field expr:bump --family translate:6
    morsespec bounds iterate --x0 1 --alpha 2 --beta 1 --n 3
    morsespec bounds chain --delta 0.5 --d0 0.1 --d1 0.2 --d2 0.05 --sigma 1 --convergence
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import bounds as bnd
from . import homology as fullh
from . import morse, spectral
from .complex import (
    CellComplex,
    build_torus_grid,
    c0_distance,
    load_field,
    load_simplicial,
    make_field,
)
from .continuation import sandwich_built
from .errors import MorsespecError
from .fields import expression_field, random_field, translate_field
from .homology import HomologyClass


def _parse_complex(spec: str) -> CellComplex:
    if spec.startswith("torus:"):
        parts = spec.split(":")
        if len(parts) != 3:
            raise MorsespecError(f"bad complex spec {spec!r}; want torus:NX:NY")
        return build_torus_grid(int(parts[1]), int(parts[2]))
    if spec.startswith("file:"):
        return load_simplicial(spec[5:])
    raise MorsespecError(f"bad complex spec {spec!r}; want torus:NX:NY or file:PATH")


def _parse_field(spec: str, cx: CellComplex):
    if spec.startswith("expr:"):
        return expression_field(cx, spec[5:])
    return load_field(spec, cx)


def _resolve_classes(cx: CellComplex, selector: str) -> list[tuple[str, HomologyClass]]:
    if selector == "point":
        v0 = next(c.id for c in cx.cells if c.dim == 0)
        return [("point", HomologyClass(0, frozenset({v0}), "full", owner=cx))]
    if selector == "fundamental":
        top = frozenset(c.id for c in cx.cells if c.dim == cx.top_dim)
        if not fullh.is_cycle(cx, top):
            raise MorsespecError("complex has no fundamental cycle (not closed)")
        return [("fundamental", HomologyClass(cx.top_dim, top, "full", owner=cx))]
    if selector == "all":
        out = []
        for k, classes in sorted(fullh.homology_basis(cx).items()):
            for i, h in enumerate(classes):
                out.append((f"grade:{k}:index:{i}", h))
        return out
    if selector.startswith("grade:"):
        parts = selector.split(":")
        if len(parts) != 4 or parts[2] != "index":
            raise MorsespecError(f"bad class selector {selector!r}")
        k, i = int(parts[1]), int(parts[3])
        basis = fullh.homology_basis(cx).get(k, [])
        if i >= len(basis):
            raise MorsespecError(f"grade {k} has only {len(basis)} classes")
        return [(selector, basis[i])]
    raise MorsespecError(f"unknown class selector {selector!r}")


def _emit(report: dict, json_path: str | None) -> None:
    text = json.dumps(report, indent=2)
    print(text)
    if json_path:
        Path(json_path).write_text(text + "\n")


def _report(command, inputs, results, passed, failed, seed) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "results": results,
        "pass_counts": {"passed": passed, "failed": failed},
        "seed": seed,
    }


# ------------------------------------------------------------------- commands


def _cmd_homology(args) -> int:
    cx = _parse_complex(args.complex)
    fld = _parse_field(args.field, cx)
    gradient = morse.build_gradient(cx, fld)
    mc = morse.build_morse_complex(cx, fld, gradient)
    d2 = morse.verify_d_squared(mc)
    results = {
        "betti": mc.betti(),
        "critical_census": {str(k): mc.rank(k) for k in sorted(mc.grades)},
        "d_squared_zero": d2,
        "morse_complex": mc.to_json_dict(),
    }
    report = _report(
        "homology",
        {"complex": args.complex, "field": args.field},
        results,
        int(d2),
        int(not d2),
        args.seed,
    )
    _emit(report, args.json)
    return 0 if d2 else 1


def _cmd_spectral(args) -> int:
    cx = _parse_complex(args.complex)
    fld = _parse_field(args.field, cx)
    passed = failed = 0
    results = []
    for label, Y in _resolve_classes(cx, args.cls):
        mc, rep = spectral.evaluate_rho(cx, fld, Y)
        entry = {"class": label, **rep.to_json_dict(), "spectrum_member": rep.spectrum_member}
        ok = rep.spectrum_member
        if args.oracle:
            xi = mc.gradient.flow_down(Y.support)
            brute = spectral.exhaustive_spectral_value(
                mc, HomologyClass(Y.grade, xi, "morse", owner=mc)
            )
            entry["oracle_sigma"] = brute
            entry["oracle_match"] = brute == rep.sigma
            ok = ok and entry["oracle_match"]
        passed += int(ok)
        failed += int(not ok)
        results.append(entry)
    report = _report(
        "spectral",
        {"complex": args.complex, "field": args.field, "class": args.cls},
        results,
        passed,
        failed,
        args.seed,
    )
    _emit(report, args.json)
    return 0 if failed == 0 else 1


def _compare_one(cx, fa, fb, classes, results):
    passed = failed = 0
    g_minus = morse.build_gradient(cx, fa)
    mc_minus = morse.build_morse_complex(cx, fa, g_minus)
    g_plus = morse.build_gradient(cx, fb)
    mc_plus = morse.build_morse_complex(cx, fb, g_plus)
    for label, Y in classes:
        xi = g_minus.flow_down(Y.support)
        X = HomologyClass(Y.grade, xi, "morse", owner=mc_minus)
        rep = sandwich_built(mc_minus, mc_plus, X)
        results.append({"class": label, **rep.to_json_dict()})
        passed += int(rep.passed)
        failed += int(not rep.passed)
    return passed, failed


def _cmd_compare(args) -> int:
    cx = _parse_complex(args.complex)
    classes = _resolve_classes(cx, args.cls)
    results: list[dict] = []
    passed = failed = 0
    if args.trials > 0:
        rng = random.Random(args.seed)
        for _ in range(args.trials):
            fa = random_field(cx, rng)
            fb = random_field(cx, rng)
            p, f = _compare_one(cx, fa, fb, classes, results)
            passed += p
            failed += f
    else:
        if not args.field_a or not args.field_b:
            raise MorsespecError("compare needs --field-a and --field-b, or --trials")
        fa = _parse_field(args.field_a, cx)
        fb = _parse_field(args.field_b, cx)
        passed, failed = _compare_one(cx, fa, fb, classes, results)
    report = _report(
        "compare",
        {
            "complex": args.complex,
            "field_a": args.field_a,
            "field_b": args.field_b,
            "class": args.cls,
            "trials": args.trials,
        },
        results,
        passed,
        failed,
        args.seed,
    )
    _emit(report, args.json)
    return 0 if failed == 0 else 1


def _family_fields(args, cx, base):
    kind, _, rest = args.family.partition(":")
    if kind == "translate":
        if rest:
            steps = int(rest)
        elif cx.torus_shape:
            steps = cx.torus_shape[0]
        else:
            raise MorsespecError("translate family needs a torus grid")
        return [translate_field(base, k, 0) for k in range(steps)]
    if kind == "constant":
        steps = int(rest) if rest else 3
        return [base for _ in range(steps)]
    if kind == "perturb":
        parts = rest.split(":")
        if len(parts) < 2:
            raise MorsespecError("perturb family needs EPS_MAX:STEPS")
        eps_max, steps = float(parts[0]), int(parts[1])
        rng = random.Random(int(parts[2]) if len(parts) > 2 else args.seed)
        g = [rng.random() for _ in range(cx.n_vertices)]
        fields = []
        for i in range(steps):
            eps = eps_max * i / max(steps - 1, 1)
            fields.append(
                make_field(cx, [a + eps * b for a, b in zip(base.vertex_values, g)])
            )
        return fields
    raise MorsespecError(f"unknown family {args.family!r}")


def _cmd_sweep(args) -> int:
    cx = _parse_complex(args.complex)
    base = _parse_field(args.field, cx)
    family = _family_fields(args, cx, base)
    passed = failed = 0
    results: list[dict] = []
    for label, Y in _resolve_classes(cx, args.cls):
        values = []
        spectra = []
        for fld in family:
            mc, rep = spectral.evaluate_rho(cx, fld, Y)
            values.append(rep.sigma)
            spectra.append(tuple(spectral.spectrum(mc)))
        margins = []
        for fa, fb, va, vb in zip(family, family[1:], values, values[1:]):
            margin = c0_distance(fa, fb) - abs(va - vb)
            margins.append(margin)
            passed += int(margin >= 0)
            failed += int(margin < 0)
        spectra_equal = all(sp == spectra[0] for sp in spectra)
        constant = None
        if spectra_equal:
            constant = len(set(values)) <= 1
            passed += int(constant)
            failed += int(not constant)
        results.append(
            {
                "class": label,
                "rho_values": values,
                "lipschitz_margins": margins,
                "spectra_equal": spectra_equal,
                "constant": constant,
            }
        )
    report = _report(
        "sweep",
        {
            "complex": args.complex,
            "field": args.field,
            "family": args.family,
            "class": args.cls,
        },
        results,
        passed,
        failed,
        args.seed,
    )
    _emit(report, args.json)
    return 0 if failed == 0 else 1


def _cmd_bounds(args) -> int:
    sub = args.bounds_cmd
    failed = 0
    if sub == "iterate":
        inputs = {"x0": args.x0, "alpha": args.alpha, "beta": args.beta, "n": args.n}
        results = {
            "value": bnd.iteration_bound(args.x0, args.alpha, args.beta, args.n),
            "precondition_ok": True,
            "oracle": bnd.iteration_oracle(args.x0, args.alpha, args.beta, args.n),
        }
    elif sub == "eta":
        inputs = {"action": args.action, "delta": args.delta, "kappa": args.kappa}
        results = {
            "value": bnd.eta_bound(args.action, args.delta, args.kappa),
            "precondition_ok": True,
        }
    elif sub in ("step", "chain", "limit"):
        inputs = {
            "delta": args.delta,
            "d0": args.d0,
            "d1": args.d1,
            "d2": args.d2,
            "sigma": args.sigma,
        }
        p = bnd.BoundParams(args.delta, args.d0, args.d1, args.d2, args.sigma)
        if sub == "step":
            results = {
                "value": bnd.per_step_bound(p),
                "precondition_ok": True,
                "threshold": bnd.step_threshold(args.delta),
            }
        elif sub == "chain":
            n = args.n_steps if args.n_steps else bnd.min_steps(args.delta, args.d1)
            inputs["n_steps"] = n
            results = {
                "value": bnd.chained_bound(p, n),
                "precondition_ok": True,
                "min_steps": bnd.min_steps(args.delta, args.d1),
            }
            if args.convergence:
                limit = bnd.adiabatic_limit_bound(p)
                table = []
                m, prev_gap, monotone = n, None, True
                for _ in range(args.doublings):
                    val = bnd.chained_bound(p, m)
                    gap = abs(val - limit)
                    if prev_gap is not None and gap > prev_gap:
                        monotone = False
                    table.append({"n": m, "value": val, "gap": gap})
                    prev_gap = gap
                    m *= 2
                results["limit"] = limit
                results["doubling_table"] = table
                results["gap_monotone"] = monotone
                failed = int(not monotone)
        else:
            inputs["statement_variant"] = args.statement_variant
            results = {
                "value": bnd.adiabatic_limit_bound(
                    p, statement_variant=args.statement_variant
                ),
                "precondition_ok": True,
            }
    elif sub == "corollary":
        inputs = {
            "sigma": args.sigma,
            "norm_plus": args.norm_plus,
            "norm_minus": args.norm_minus,
            "norm_diff": args.norm_diff,
            "delta": args.delta,
        }
        results = {
            "value": bnd.corollary_bound(
                args.sigma, args.norm_plus, args.norm_minus, args.norm_diff, args.delta
            ),
            "precondition_ok": True,
        }
    else:  # pragma: no cover - argparse enforces choices
        raise MorsespecError(f"unknown bounds subcommand {sub!r}")
    report = _report(f"bounds {sub}", inputs, results, 1 - failed, failed, args.seed)
    _emit(report, args.json)
    return 0 if failed == 0 else 1


# --------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="morsespec", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p, with_field=True):
        p.add_argument("--complex", required=True, help="torus:NX:NY or file:PATH")
        if with_field:
            p.add_argument("--field", required=True, help="value file path or expr:NAME")
        p.add_argument("--class", dest="cls", default="all",
                       help="point | fundamental | grade:K:index:I | all")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--json", default=None, help="also write the report here")

    p = sub.add_parser("homology", help="Betti numbers and critical-cell census")
    common(p)

    p = sub.add_parser("spectral", help="spectral values of selected classes")
    common(p)
    p.add_argument("--oracle", action="store_true",
                   help="cross-check against exhaustive coset enumeration")

    p = sub.add_parser("compare", help="two-field continuation comparison")
    common(p, with_field=False)
    p.add_argument("--field-a", default=None)
    p.add_argument("--field-b", default=None)
    p.add_argument("--trials", type=int, default=0,
                   help="run this many random field pairs instead")

    p = sub.add_parser("sweep", help="family sweeps: invariance and Lipschitz margins")
    common(p)
    p.add_argument("--family", required=True,
                   help="translate:STEPS | perturb:EPS_MAX:STEPS[:SEED] | constant:STEPS")

    pb = sub.add_parser("bounds", help="closed-form estimate arithmetic")
    bsub = pb.add_subparsers(dest="bounds_cmd", required=True)

    def bounds_common(q):
        q.add_argument("--seed", type=int, default=0)
        q.add_argument("--json", default=None)

    q = bsub.add_parser("iterate")
    q.add_argument("--x0", type=float, required=True)
    q.add_argument("--alpha", type=float, required=True)
    q.add_argument("--beta", type=float, required=True)
    q.add_argument("--n", type=int, required=True)
    bounds_common(q)

    q = bsub.add_parser("eta")
    q.add_argument("--action", type=float, required=True)
    q.add_argument("--delta", type=float, required=True)
    q.add_argument("--kappa", type=float, default=0.0)
    bounds_common(q)

    for name in ("step", "chain", "limit"):
        q = bsub.add_parser(name)
        q.add_argument("--delta", type=float, required=True)
        q.add_argument("--d0", type=float, default=0.0)
        q.add_argument("--d1", type=float, default=0.0)
        q.add_argument("--d2", type=float, default=0.0)
        q.add_argument("--sigma", type=float, required=True)
        if name == "chain":
            q.add_argument("--n-steps", type=int, default=0)
            q.add_argument("--convergence", action="store_true")
            q.add_argument("--doublings", type=int, default=10)
        if name == "limit":
            q.add_argument("--statement-variant", action="store_true")
        bounds_common(q)

    q = bsub.add_parser("corollary")
    q.add_argument("--sigma", type=float, required=True)
    q.add_argument("--norm-plus", type=float, required=True)
    q.add_argument("--norm-minus", type=float, required=True)
    q.add_argument("--norm-diff", type=float, required=True)
    q.add_argument("--delta", type=float, required=True)
    bounds_common(q)

    return ap


_DISPATCH = {
    "homology": _cmd_homology,
    "spectral": _cmd_spectral,
    "compare": _cmd_compare,
    "sweep": _cmd_sweep,
    "bounds": _cmd_bounds,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _DISPATCH[args.cmd](args)
    except (MorsespecError, OSError, ValueError) as e:
        diag = {"error": str(e), "kind": type(e).__name__}
        for attr in ("threshold", "minimum", "line"):
            if getattr(e, attr, None) is not None:
                diag[attr] = getattr(e, attr)
        print(json.dumps(diag), file=sys.stderr)
        return 2


def entry() -> None:  # console-script hook
    sys.exit(main())


if __name__ == "__main__":
    entry()
