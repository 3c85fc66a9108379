"""Problem-file ingestion, command dispatch and JSON reporting.

Problem files are JSON: a prime characteristic, an ordered variable list,
named ideals as lists of exponent vectors, an optional coefficient module
(named ideal), an optional coarse grading matrix and an optional box
override.  Reports echo their inputs and serialize every table as a sorted
array of {"i", "degree", "dim"} records, so identical inputs produce
byte-identical output; wall-clock timing is opt-in for that reason.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from . import __version__
from .errors import (
    HomotorError,
    ParamOutOfRange,
    ParseError,
    UnknownCommand,
    ValidationError,
)
from .exactlin import GF, _is_prime
from .monomial import MonomialIdeal, Multidegree, iter_box
from .spectral import build_filtration, mv_double, pages
from .sumprod import (
    build_p_complex,
    build_s_complex,
    complex_homology_table,
    exactness_equivalences,
    verify_identities,
)
from .support import region_compare, support_region, supportoftors_check
from .torlab import (
    betti_table,
    family_box,
    independence,
    multi_tor,
    rigidity_check,
    serre_a8_check,
    tor1_oracle,
)
from .multicomplex import tensor
from .gcomplex import taylor_resolution

COMMANDS = (
    "tor",
    "tor1-oracle",
    "betti",
    "indep",
    "scomplex",
    "pcomplex",
    "verify",
    "spectral",
    "support",
    "rigidity",
    "a8",
    "equiv-exactness",
    "selftest",
)

SPECTRAL_KINDS = ("kcone", "kcone_augmented", "interior", "interior_augmented")
MV_KINDS = ("sum_to_product", "product_to_sum")


class ProblemFile:
    def __init__(self, characteristic, variables, ideals, module=None,
                 grading=None, box=None):
        self.characteristic = characteristic
        self.variables = variables
        self.ideals = ideals  # name -> MonomialIdeal, insertion-ordered
        self.module = module
        self.grading = grading
        self.box = box

    @property
    def n(self):
        return len(self.variables)

    def family(self):
        return list(self.ideals.values())

    def coefficient(self):
        if self.module is None:
            return None
        return self.ideals[self.module]

    def echo(self):
        return {
            "characteristic": self.characteristic,
            "variables": list(self.variables),
            "ideals": {
                name: [list(g) for g in ideal.gens]
                for name, ideal in self.ideals.items()
            },
            "module": self.module,
            "grading": self.grading,
            "box": list(self.box) if self.box else None,
        }


def parse_problem(path) -> ProblemFile:
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise ValidationError("problem file must be a JSON object")
    char = raw.get("characteristic", GF().p)
    if not isinstance(char, int) or not _is_prime(char):
        raise ValidationError(f"characteristic {char!r} is not a prime integer")
    variables = raw.get("variables")
    if not isinstance(variables, list) or not variables or \
            len(set(variables)) != len(variables):
        raise ValidationError("variables must be a nonempty list of unique names")
    n = len(variables)
    ideals_raw = raw.get("ideals")
    if not isinstance(ideals_raw, dict) or not ideals_raw:
        raise ValidationError("ideals must be a nonempty object of generator lists")
    ideals = {}
    for name, gens in ideals_raw.items():
        if not isinstance(gens, list):
            raise ValidationError(f"ideal {name!r}: generators must be a list")
        for g in gens:
            if not isinstance(g, list) or len(g) != n or \
                    any(not isinstance(e, int) or e < 0 for e in g):
                raise ValidationError(
                    f"ideal {name!r}: exponent vector {g!r} must have "
                    f"{n} non-negative integer entries"
                )
        ideals[name] = MonomialIdeal(n, [Multidegree(g) for g in gens])
    module = raw.get("module")
    if module is not None and module not in ideals:
        raise ValidationError(f"module {module!r} does not name an ideal")
    grading = raw.get("grading")
    if grading is not None:
        if not isinstance(grading, list) or \
                any(not isinstance(r, list) or len(r) != n for r in grading):
            raise ValidationError(f"grading must be a list of length-{n} rows")
    box = raw.get("box")
    if box is not None:
        if not isinstance(box, list) or len(box) != n or \
                any(not isinstance(b, int) or b < 0 for b in box):
            raise ValidationError(f"box must be {n} non-negative integers")
        box = Multidegree(box)
    return ProblemFile(char, variables, ideals, module, grading, box)


def random_instance(seed: int, n_vars: int = 3, n_ideals: int = 3,
                    max_gens: int = 2, max_exp: int = 2):
    """A deterministic family of proper, nonzero monomial ideals."""
    if not 1 <= n_vars <= 4:
        raise ParamOutOfRange(f"n_vars {n_vars} outside 1..4")
    if not 1 <= n_ideals <= 4:
        raise ParamOutOfRange(f"n_ideals {n_ideals} outside 1..4")
    if not 1 <= max_gens <= 3:
        raise ParamOutOfRange(f"max_gens {max_gens} outside 1..3")
    if not 1 <= max_exp <= 2:
        raise ParamOutOfRange(f"max_exp {max_exp} outside 1..2")
    rng = random.Random(seed)
    family = []
    for _ in range(n_ideals):
        k = rng.randint(1, max_gens)
        gens = []
        for _ in range(k):
            g = [0] * n_vars
            while not any(g):
                g = [rng.randint(0, max_exp) for _ in range(n_vars)]
            gens.append(Multidegree(g))
        family.append(MonomialIdeal(n_vars, gens))
    return family


def _assertion(name, passed, witnesses=None):
    return {"name": name, "passed": bool(passed), "witnesses": witnesses or []}


def _report_assertions(check_report):
    out = []
    for a in check_report.assertions:
        if not a["checked"]:
            out.append({"name": a["name"], "passed": True, "skipped": True,
                        "witnesses": []})
        else:
            out.append(_assertion(a["name"], a["passed"], a["witnesses"]))
    return out


def _sample_degrees(box, cap=12):
    cells = list(iter_box(box))
    if len(cells) <= cap:
        return cells
    stride = max(1, len(cells) // (cap - 1))
    picked = cells[::stride][: cap - 1]
    if cells[-1] not in picked:
        picked.append(cells[-1])
    return picked


def run(command: str, problem: ProblemFile | None, flags: dict) -> dict:
    """Execute one CLI command and build its report."""
    if command not in COMMANDS:
        raise UnknownCommand(f"unknown command {command!r}")
    fld = GF(flags.get("field") or (problem.characteristic if problem else GF().p))
    report = {
        "command": command,
        "inputs": {
            "problem": problem.echo() if problem else None,
            "flags": {k: v for k, v in sorted(flags.items()) if v is not None},
        },
        "box": None,
        "results": {},
        "assertions": [],
    }
    box = flags.get("box") or (problem.box if problem else None)

    if command == "tor":
        family = problem.family()
        coeff = _flag_coefficient(problem, flags)
        use_box = box if box is not None else family_box(family, coeff)
        table = multi_tor(family, coefficient=coeff, fld=fld, box=use_box)
        report["box"] = list(table.box)
        report["results"]["tor"] = table.records()

    elif command == "tor1-oracle":
        family = problem.family()
        use_box = box if box is not None else family_box(family)
        table = multi_tor(family, fld=fld, box=use_box)
        oracle = tor1_oracle(family, fld=fld, box=use_box)
        report["box"] = list(use_box)
        report["results"]["tor1"] = oracle.records()
        mismatches = []
        for g in iter_box(use_box):
            a = table.dim(1, g)
            b = oracle.dim(1, g)
            if a != b:
                mismatches.append({"degree": list(g), "expected": b, "actual": a})
        report["assertions"].append(
            _assertion("tor1_oracle_equivalence", not mismatches, mismatches[:8])
        )

    elif command == "betti":
        names = [flags["module"]] if flags.get("module") else list(problem.ideals)
        for name in names:
            report["results"][name] = betti_table(problem.ideals[name], fld).to_json()

    elif command == "indep":
        rep = independence(problem.family(), fld=fld, strong=flags.get("strong", False))
        report["results"]["independence"] = rep.to_json()
        if rep.strong:
            report["assertions"].append(_assertion("criteria_agree", rep.agreement))

    elif command in ("scomplex", "pcomplex"):
        variant = flags.get("kind") or "quotient"
        family = problem.family()
        if command == "scomplex":
            c = build_s_complex(family, variant=variant)
        else:
            c = build_p_complex(family, variant=variant)
        table = complex_homology_table(c, fld, box)
        report["box"] = list(table.box)
        report["results"]["ranks"] = {
            str(i): len(ss) for i, ss in sorted(c.underlying.terms.items())
        }
        report["results"]["homology"] = table.records()

    elif command == "verify":
        rep = verify_identities(problem.family(), fld)
        report["results"]["context"] = rep.context
        report["assertions"] = _report_assertions(rep)

    elif command == "spectral":
        kind = flags.get("kind")
        if kind not in SPECTRAL_KINDS + MV_KINDS:
            raise ValidationError(
                f"--kind must be one of {SPECTRAL_KINDS + MV_KINDS}"
            )
        family = problem.family()
        coeff = _flag_coefficient(problem, flags)
        if kind in SPECTRAL_KINDS:
            m = tensor([taylor_resolution(i) for i in family])
            use_box = box if box is not None else m.stable_box()
        else:
            use_box = box if box is not None else family_box(family, coeff)
        report["box"] = list(use_box)
        all_ok = True
        out = {}
        for gamma in _sample_degrees(use_box):
            if kind in SPECTRAL_KINDS:
                pg = pages(build_filtration(m, gamma, kind, fld), fld)
            else:
                pg = mv_double(kind, family, coeff, gamma, fld)
            all_ok = all_ok and pg.converged
            out[",".join(map(str, gamma))] = {
                "e1": _page_records(pg.e1),
                "e_infinity": _page_records(pg.e_infinity),
                "r_stab": pg.r_stab,
                "converged": pg.converged,
            }
        report["results"]["pages"] = out
        report["assertions"].append(_assertion("convergence", all_ok))

    elif command == "support":
        family = problem.family()
        coeff = _flag_coefficient(problem, flags)
        partitions = _variable_partitions(family)
        if partitions is not None:
            coeff_ideal = coeff if coeff is not None else MonomialIdeal.zero(problem.n)
            subset = flags.get("subset")
            ps = [len(subset)] if subset else list(range(1, len(partitions) + 1))
            all_ok = True
            for p in ps:
                rep = supportoftors_check(partitions, coeff_ideal, p, fld)
                report["results"][f"p={p}"] = rep.to_json()
                all_ok = all_ok and rep.passed
            report["assertions"].append(_assertion("support_union_equality", all_ok))
        else:
            regions = {}
            for name, ideal in problem.ideals.items():
                table = multi_tor([ideal], coefficient=coeff, fld=fld)
                regions[name] = support_region(table)
                report["results"][name] = [list(c) for c in regions[name].sorted_cells()]
            names = list(regions)
            if len(names) >= 2:
                report["results"]["compare_first_two"] = region_compare(
                    regions[names[0]], regions[names[1]]
                )

    elif command == "rigidity":
        rep = rigidity_check(problem.family(), fld)
        report["results"]["rigidity"] = rep.to_json()
        report["assertions"].append(
            _assertion("no_rigidity_violations", rep.passed, rep.violations)
        )

    elif command == "a8":
        rep = serre_a8_check(problem.family(), fld)
        report["results"]["a8"] = rep.to_json()
        report["assertions"].append(
            _assertion("three_way_equivalence", rep.passed,
                       [] if rep.passed else [{"triple": list(rep.triple)}])
        )

    elif command == "equiv-exactness":
        rep = exactness_equivalences(problem.family(), fld)
        report["results"]["context"] = rep.context
        report["assertions"] = _report_assertions(rep)

    elif command == "selftest":
        seed = flags.get("seed", 0)
        trials = flags.get("trials", 10)
        report["results"]["summary"] = _selftest(seed, trials, fld, report["assertions"])

    return report


def _page_records(table):
    return [
        {"p": p, "q": q, "dim": d}
        for (p, q), d in sorted(table.items())
    ]


def _flag_coefficient(problem, flags):
    name = flags.get("module") or (problem.module if problem else None)
    if name is None:
        return None
    if name not in problem.ideals:
        raise ValidationError(f"--module {name!r} does not name an ideal")
    return problem.ideals[name]


def _variable_partitions(family):
    """If every ideal is generated by distinct single variables with pairwise
    disjoint supports, return the partition; otherwise None."""
    partitions = []
    seen = set()
    for ideal in family:
        indices = set()
        for g in ideal.gens:
            if g.total() != 1:
                return None
            indices |= g.support()
        if seen & indices:
            return None
        seen |= indices
        partitions.append(sorted(indices))
    return partitions


def _selftest(seed, trials, fld, assertions):
    """Deterministic random-instance sweep over the main checkers."""
    summary = {"trials": trials, "families": []}
    failures = []
    for t in range(trials):
        family = random_instance(seed * 100003 + t, n_vars=2 + t % 2,
                                 n_ideals=2 + t % 2, max_gens=2, max_exp=2)
        echo = [[list(g) for g in ideal.gens] for ideal in family]
        summary["families"].append(echo)
        box = family_box(family)
        table = multi_tor(family, fld=fld, box=box)
        oracle = tor1_oracle(family, fld=fld, box=box)
        for g in iter_box(box):
            if table.dim(1, g) != oracle.dim(1, g):
                failures.append({"trial": t, "check": "tor1_oracle",
                                 "degree": list(g)})
                break
        rep = rigidity_check(family, fld)
        if not rep.passed:
            failures.append({"trial": t, "check": "rigidity",
                             "violations": rep.violations[:2]})
        a8 = serre_a8_check(family, fld)
        if not a8.passed:
            failures.append({"trial": t, "check": "a8", "triple": list(a8.triple)})
    assertions.append(_assertion("selftest", not failures, failures[:8]))
    summary["failures"] = len(failures)
    return summary


def _emit(report, flags, started):
    if flags.get("timing"):
        report["timing"] = {"wall_ms": round((time.time() - started) * 1000.0, 3)}
    else:
        report["timing"] = {"wall_ms": None}
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if flags.get("json"):
        with open(flags["json"], "w") as fh:
            fh.write(text)
    sys.stdout.write(text)


def main(argv=None) -> int:
    started = time.time()
    parser = argparse.ArgumentParser(
        prog="homotor",
        description="Multigraded Tor tables, sum/product complexes and "
                    "spectral sequences for monomial ideals",
    )
    parser.add_argument("command", help=f"one of: {', '.join(COMMANDS)}")
    parser.add_argument("problem", nargs="?", help="problem JSON file")
    parser.add_argument("--field", type=int, help="prime characteristic override")
    parser.add_argument("--box", help="comma-separated degree box override")
    parser.add_argument("--strong", action="store_true",
                        help="strong (all-subsets) independence")
    parser.add_argument("--subset", help="comma-separated index subset")
    parser.add_argument("--module", help="coefficient module (ideal name)")
    parser.add_argument("--kind", help="builder kind / complex variant")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--trials", type=int, default=10)
    parser.add_argument("--json", help="also write the report to this file")
    parser.add_argument("--timing", action="store_true",
                        help="include wall-clock timing (breaks byte-stability)")
    parser.add_argument("--version", action="version", version=__version__)
    args = parser.parse_args(argv)

    flags = {
        "field": args.field,
        "strong": args.strong,
        "module": args.module,
        "kind": args.kind,
        "seed": args.seed,
        "trials": args.trials,
        "json": args.json,
        "timing": args.timing,
    }
    try:
        if args.box:
            flags["box"] = Multidegree(int(v) for v in args.box.split(","))
        if args.subset:
            flags["subset"] = [int(v) for v in args.subset.split(",")]
        if args.command not in COMMANDS:
            raise UnknownCommand(f"unknown command {args.command!r}")
        problem = None
        if args.command != "selftest":
            if not args.problem:
                raise ParseError(f"command {args.command!r} needs a problem file")
            problem = parse_problem(args.problem)
        report = run(args.command, problem, flags)
    except HomotorError as exc:
        diag = {
            "command": args.command,
            "error": {"type": type(exc).__name__, "message": str(exc)},
        }
        sys.stdout.write(json.dumps(diag, indent=2, sort_keys=True) + "\n")
        return 2
    _emit(report, flags, started)
    return 0 if all(a["passed"] for a in report["assertions"]) else 1


if __name__ == "__main__":
    sys.exit(main())
