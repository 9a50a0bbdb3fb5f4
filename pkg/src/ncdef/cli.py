"""Command-line front end.

Exit codes: 0 pass, 1 property-check failure, 2 parse error,
3 validation error, 4 precondition violation.  Machine-readable reports
(--json) are byte-identical for identical input + flags + seed; timing
goes to stdout only.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .artin import (AlgebraModule, dimension_signature, duality_check,
                    end_algebra, flatness_check, socle_and_gorenstein,
                    spherical_permutation, verify_pointed_artin)
from .errors import (NCDefError, PreconditionError, ProblemFormatError,
                     UsageError, ValidationError)
from .homext import common_extension, ext1_space, extension_of, hom_space
from .problems import ProblemFile, load_problem, problem_json
from .quiver import is_isomorphic
from .tower import (Collection, CustomStep, check_simple_collection,
                    random_maximal_sequence, run_custom_sequence, run_tower)

COMMANDS = ("check-collection", "hom", "ext1", "extend", "common-ext",
            "tower", "custom-sequence", "end-algebra", "gorenstein",
            "duality", "spherical", "flat-check", "iso")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ncdef",
        description="versal multi-pointed deformations of quiver representations")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", required=True,
                   help="problem file path or shipped fixture name")
    p.add_argument("--collection", default=None)
    p.add_argument("--modules", default=None, help="comma-separated module names")
    p.add_argument("--max-steps", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--json", dest="json_out", default=None,
                   help="write the full report as canonical JSON")
    return p


def _modules(problem: ProblemFile, args, n: int):
    if not args.modules:
        raise UsageError(f"this command needs --modules with {n} names")
    names = [x.strip() for x in args.modules.split(",")]
    if len(names) != n:
        raise UsageError(f"expected {n} module names, got {len(names)}")
    return names, [problem.module(x) for x in names]


def _dims(rep):
    return {v: rep.dims[v] for v in rep.pres.quiver.vertices}


def _tower(problem: ProblemFile, args):
    col = problem.collection(args.collection)
    return col, run_tower(col, max_steps=args.max_steps)


def _tower_result_json(tr):
    return {
        "status": tr.status,
        "terminated_level": tr.terminated_level,
        "cutoff_reason": tr.cutoff_reason,
        "r_sequence": list(tr.state.r_sequence),
        "multiplicities": list(tr.state.multiplicities),
        "summand_dims": [_dims(s) for s in tr.summands],
        "total_dim": tr.state.total_dim,
    }


def run_command(command: str, problem: ProblemFile, args):
    """Dispatch; returns (result dict, exit code, human lines)."""
    if command == "check-collection":
        col = problem.collection(args.collection)
        rep = check_simple_collection(col)
        lines = [f"simple collection: {'pass' if rep.ok else 'FAIL'}",
                 f"hom table: {rep.hom_table}"]
        return ({"ok": rep.ok, "hom_table": rep.hom_table,
                 "failures": [list(f) for f in rep.failures]},
                0 if rep.ok else 1, lines)

    if command == "hom":
        names, (m, n) = _modules(problem, args, 2)
        d = hom_space(m, n).dim
        return ({"modules": names, "dim": d}, 0,
                [f"dim Hom({names[0]}, {names[1]}) = {d}"])

    if command == "ext1":
        names, (m, n) = _modules(problem, args, 2)
        d = ext1_space(m, n).dim
        return ({"modules": names, "dim": d}, 0,
                [f"dim Ext1({names[0]}, {names[1]}) = {d}"])

    if command == "extend":
        names, (m, n) = _modules(problem, args, 2)
        space = ext1_space(m, n)
        if space.dim == 0:
            raise PreconditionError(
                f"Ext1({names[0]}, {names[1]}) = 0; nothing to extend by")
        ext = extension_of(space.basis_class(0))
        return ({"modules": names, "ext_dim": space.dim,
                 "middle_dims": _dims(ext.middle)}, 0,
                [f"extension middle dims: {_dims(ext.middle)} "
                 f"(Ext dim {space.dim}, basis class 0)"])

    if command == "common-ext":
        names, (g, n0, n1) = _modules(problem, args, 3)
        s0 = ext1_space(g, n0)
        s1 = ext1_space(g, n1)
        if s0.dim == 0 or s1.dim == 0:
            raise PreconditionError("both extension classes must be nonzero")
        k1 = 1 if (n1 is n0 and s1.dim > 1) else 0
        ce = common_extension(s0.basis_class(0), s1.basis_class(k1))
        return ({"modules": names, "middle_dims": _dims(ce.middle),
                 "total_dim": ce.middle.total_dim}, 0,
                [f"common extension dims: {_dims(ce.middle)}"])

    if command == "tower":
        col, tr = _tower(problem, args)
        if tr.status == "terminated":
            head = f"Terminated({tr.terminated_level})"
        else:
            head = f"CutoffReached({args.max_steps})"
        lines = [head,
                 f"r-sequence: {tuple(tr.state.r_sequence)}",
                 f"summand dims: {[_dims(s) for s in tr.summands]}"]
        return (_tower_result_json(tr), 0, lines)

    if command == "custom-sequence":
        col = problem.collection(args.collection)
        steps_spec = problem.options.get("steps")
        if steps_spec:
            steps = [CustomStep(int(i), int(j), int(k)) for i, j, k in steps_spec]
            res = run_custom_sequence(col, steps)
        else:
            res = random_maximal_sequence(col, seed=args.seed,
                                          max_steps=args.max_steps)
        return ({"steps": [list(s) for s in res.steps_taken],
                 "summand_dims": [_dims(s) for s in res.summands],
                 "seed": None if steps_spec else args.seed}, 0,
                [f"steps taken: {res.steps_taken}",
                 f"final summand dims: {[_dims(s) for s in res.summands]}"])

    if command == "end-algebra":
        col, tr = _tower(problem, args)
        ea = end_algebra(tr, col)
        art = verify_pointed_artin(ea.algebra)
        sig = dimension_signature(ea.algebra) if art.nilpotency else None
        result = {
            "dim": ea.algebra.dim,
            "r": ea.algebra.r,
            "commutative": ea.algebra.is_commutative(),
            "artin_ok": art.ok,
            "nilpotency": art.nilpotency,
            "signature": sig.grid if sig else None,
            "tower": _tower_result_json(tr),
        }
        lines = [f"algebra dim {ea.algebra.dim}, r = {ea.algebra.r}, "
                 f"commutative = {result['commutative']}, "
                 f"nilpotency = {art.nilpotency}"]
        if sig:
            for m, layer in enumerate(sig.grid):
                lines.append(f"dim(e_j M^{m} e_i) grid: {layer}")
        return (result, 0 if art.ok else 1, lines)

    if command == "gorenstein":
        col, tr = _tower(problem, args)
        ea = end_algebra(tr, col)
        soc = socle_and_gorenstein(ea.algebra)
        lines = [f"Gorenstein: {soc.gorenstein} "
                 f"(socle dim {soc.socle_dim}, colors {soc.color_dims})"]
        return ({"gorenstein": soc.gorenstein, "socle_dim": soc.socle_dim,
                 "color_dims": soc.color_dims},
                0 if soc.gorenstein else 1, lines)

    if command == "duality":
        col, tr = _tower(problem, args)
        ea = end_algebra(tr, col)
        checks = []
        ok = True
        for i in range(ea.algebra.r):
            rep = duality_check(ea.algebra, AlgebraModule.simple_right(ea.algebra, i))
            checks.append({"i": i, "module_dim": rep.module_dim,
                           "hom_to_r_dim": rep.hom_to_r_dim, "ok": rep.ok})
            ok = ok and rep.ok
        return ({"ok": ok, "checks": checks}, 0 if ok else 1,
                [f"duality on R/M_{c['i']}: dim Hom = {c['hom_to_r_dim']} "
                 f"({'pass' if c['ok'] else 'FAIL'})" for c in checks])

    if command == "spherical":
        col, tr = _tower(problem, args)
        rep = spherical_permutation(tr, col)
        lines = [f"hom grid: {rep.hom_grid}",
                 f"permutation: {rep.permutation}" if rep.ok
                 else f"no spherical permutation (rows {rep.failing_rows} fail)"]
        return ({"ok": rep.ok, "permutation": rep.permutation,
                 "hom_grid": rep.hom_grid}, 0 if rep.ok else 1, lines)

    if command == "flat-check":
        col, tr = _tower(problem, args)
        ea = end_algebra(tr, col)
        rep = flatness_check(ea.algebra, tr, col, trials=args.trials,
                             seed=args.seed)
        lines = [f"dimension identity: {'pass' if rep.dimension_identity_ok else 'FAIL'}",
                 f"fiber identity: {'pass' if rep.fiber_identity_ok else 'FAIL'}"]
        return ({"ok": rep.ok, "dimension_identity_ok": rep.dimension_identity_ok,
                 "fiber_identity_ok": rep.fiber_identity_ok,
                 "mismatches": rep.mismatches}, 0 if rep.ok else 1, lines)

    if command == "iso":
        names, (a, b) = _modules(problem, args, 2)
        v = is_isomorphic(a, b, trials=args.trials, seed=args.seed)
        lines = [f"{'Iso' if v.is_iso else 'LikelyNot'}: {v.reason}"]
        return ({"modules": names, "is_iso": v.is_iso, "reason": v.reason,
                 "seed": v.seed, "trials_used": v.trials_used},
                0 if v.is_iso else 1, lines)

    raise UsageError(f"unknown command {command!r}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    started = time.perf_counter()
    try:
        problem = load_problem(args.input)
        result, code, lines = run_command(args.command, problem, args)
    except ProblemFormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 3
    except PreconditionError as exc:
        print(f"precondition violation: {exc}", file=sys.stderr)
        if exc.report is not None:
            print(f"  report: {exc.report}", file=sys.stderr)
        return 4
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2

    for line in lines:
        print(line)
    elapsed = time.perf_counter() - started
    print(f"elapsed: {elapsed:.3f}s")

    if args.json_out:
        report = {
            "command": args.command,
            "flags": {
                "collection": args.collection,
                "modules": args.modules,
                "max_steps": args.max_steps,
                "seed": args.seed,
                "trials": args.trials,
            },
            "exit_code": code,
            "result": result,
            "problem": problem_json(problem),
        }
        with open(args.json_out, "w") as fh:
            fh.write(json.dumps(report, sort_keys=True, indent=2))
            fh.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
