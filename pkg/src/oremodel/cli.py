"""Command-line front end.

Exit status: 0 on success, 1 on input errors, 2 when verification fails.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional

from .gb import ModuleOrder, ModuleVector, Submodule, module_equal
from .modops import intersect
from .oracle import difference_oracle_kernel, weyl_oracle_kernel
from .orecore import SignalDomainError
from .problem import ProblemError, ProblemFile, parse_operator, parse_problem
from .verify import DEFAULT_SEED, check_annihilation, falsifiability_probe
from .vmpum import KernelRepresentation, minimize_generators, vmpum_of

log = logging.getLogger("oremodel")

FORMAT_VERSION = 1
EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2


def _bool(text: str) -> bool:
    v = text.lower()
    if v in ("true", "yes", "1", "on"):
        return True
    if v in ("false", "no", "0", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="oremodel",
        description="Kernel representation of the variant most powerful unfalsified model of a signal set.",
    )
    p.add_argument("problem", help="problem file ('-' for stdin)")
    p.add_argument("--order", choices=("deglex", "degrevlex"), default=None)
    p.add_argument("--opvars-first", type=_bool, default=True, metavar="BOOL",
                   help="mixed algebra: difference operators above derivatives (default true)")
    p.add_argument("--minimize", action="store_true", default=None)
    p.add_argument("--verify", dest="verify", action="store_true", default=None)
    p.add_argument("--no-verify", dest="verify", action="store_false")
    p.add_argument("--oracle", action="store_true", default=None)
    p.add_argument("--probe", type=int, default=0, metavar="TRIALS",
                   help="run the falsifiability probe with this many random candidates")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--output", choices=("text", "json"), default="text")
    p.add_argument("--rows", metavar="FILE",
                   help="verify the rows of a JSON kernel representation instead of computing one")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _oracle_module(prob: ProblemFile, rep: KernelRepresentation) -> Optional[Submodule]:
    spec = prob.spec
    kinds = set(spec.kinds)
    if kinds == {"weyl"}:
        route = weyl_oracle_kernel
    elif kinds == {"difference"}:
        route = difference_oracle_kernel
    else:
        return None
    if any(not s.is_polynomial() for s in prob.signals):
        return None
    mods = [route([e.poly for e in s], spec) for s in prob.signals]
    return mods[0] if len(mods) == 1 else intersect(mods, rep.order)


def _load_rows(path: str, prob: ProblemFile, order: ModuleOrder) -> KernelRepresentation:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise ProblemError(f"cannot read rows file: {exc}") from exc
    spec = prob.spec
    rows = []
    for r in data.get("rows", []):
        if len(r) != prob.signals.m:
            raise ProblemError(f"row {r} does not match the signal dimension {prob.signals.m}")
        rows.append(ModuleVector([parse_operator(e, spec) for e in r], spec))
    return KernelRepresentation(spec, rows, order, prob.signals.m, ["supplied rows"])


def _render_text(result: dict) -> str:
    rows = result["rows"]
    lines = [f"algebra: {result['algebra']}", f"order:   {result['order']}", f"rows:    {len(rows)}"]
    if rows:
        widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
        for r in rows:
            cells = "  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip()
            lines.append(f"  [ {cells} ]")
    lines.append(f"verified: {json.dumps(result['verified'])}")
    lines.append(f"oracle_agrees: {json.dumps(result['oracle_agrees'])}")
    if "probe" in result:
        lines.append(f"probe: {json.dumps(result['probe'], sort_keys=True)}")
    return "\n".join(lines) + "\n"


def run(prob: ProblemFile, args: argparse.Namespace) -> tuple:
    """Run the pipeline; returns ``(exit status, result dict)``."""
    opts = dict(prob.options)
    order_name = args.order or opts.get("order", "degrevlex")
    minimize = args.minimize if args.minimize is not None else opts.get("minimize", False)
    verify = args.verify if args.verify is not None else opts.get("verify", True)
    oracle = args.oracle if args.oracle is not None else opts.get("oracle", False)
    spec = prob.spec
    order = ModuleOrder.default(spec, order_name, args.opvars_first)

    if args.rows:
        rep = _load_rows(args.rows, prob, order)
    else:
        rep = vmpum_of(prob.signals, order)
        if minimize:
            full = rep
            rep = minimize_generators(rep)
            assert module_equal(full.module(), rep.module(), order), "minimization changed the module"

    verified = None
    if verify or args.rows:
        verified = check_annihilation(rep, prob.signals).passed
    oracle_agrees = None
    if oracle:
        omod = _oracle_module(prob, rep)
        if omod is None:
            log.warning("no oracle route for %s with these signals", spec)
        else:
            oracle_agrees = module_equal(omod, rep.module(), order)
    result = {
        "format_version": FORMAT_VERSION,
        "algebra": prob.algebra,
        "order": order_name,
        "rows": rep.to_strings(),
        "verified": verified,
        "oracle_agrees": oracle_agrees,
    }
    status = EXIT_OK
    if args.probe:
        sig = prob.signals
        if len(sig) != 1 or sig.m != 1 or not sig[0].is_polynomial():
            raise ProblemError("the probe needs a single scalar polynomial signal")
        report = falsifiability_probe(rep, sig[0][0], trials=args.probe, seed=args.seed)
        result["probe"] = report.to_dict()
        if not report.passed:
            status = EXIT_VERIFY
    if verified is False or oracle_agrees is False:
        status = EXIT_VERIFY
    return status, result


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        text = sys.stdin.read() if args.problem == "-" else Path(args.problem).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        prob = parse_problem(text)
        status, result = run(prob, args)
    except (ProblemError, SignalDomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.output == "json":
        stdout.write(json.dumps(result, indent=2) + "\n")
    else:
        stdout.write(_render_text(result))
    if status == EXIT_VERIFY:
        print("error: verification failed", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
