"""Command-line front end.

Exit codes: 0 success or verification pass, 1 verification failure,
2 bad input, 3 internal invariant violation.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from . import corpus
from .embedding import EmbeddingError, embed, read_itable
from .gates import (
    ORDERS, Circuit, CircuitError, equivalent, first_mismatch, format_circ, read_circ,
)
from .reduction import apply_templates, reduce_logged, remove_useless_pairs
from .spec import SpecError, complexity, cycles, format_rspec, misplaced, read_rspec
from .synthesis import STRATEGY_ALIASES, SynthesisError, SynthesisOptions, reduce_controls, synthesize

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class InternalError(RuntimeError):
    pass


def _atomic_write(path: str, text: str) -> None:
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent or ".", prefix=f".{target.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(report: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(report, sort_keys=True) + "\n")
        return
    for key, value in report.items():
        if isinstance(value, (list, tuple)):
            value = " ".join(map(str, value)) if value else "-"
        out.write(f"{key}: {value}\n")


# -- commands -------------------------------------------------------------

def cmd_synth(args) -> tuple[int, dict]:
    spec = read_rspec(args.spec)
    opts = SynthesisOptions(
        strategy=args.strategy,
        seed=args.seed,
        trials=args.trials,
        direction=f"{args.direction}_translation",
        tie_break=args.tie_break,
    )
    rep = synthesize(spec, opts)
    order = rep.order
    if first_mismatch(rep.circuit, spec, order) is not None:
        raise InternalError("synthesized circuit does not realize the spec")
    if args.output:
        _atomic_write(args.output, format_circ(rep.circuit, order))
    return EXIT_OK, {
        "command": "synth",
        "n": spec.n,
        "strategy": opts.strategy,
        "direction": opts.direction,
        "tie_break": opts.tie_break,
        "complexity": complexity(spec),
        "gates": len(rep.circuit),
        "swaps": rep.swap_count,
        "reverse_ops": rep.reverse_op_count,
        "order": order,
        "circuit": str(rep.circuit),
    }


def _resolve_order(flag: str | None, annotated: str | None) -> str:
    if flag and flag != "auto":
        return flag
    return annotated or "reversed"


def cmd_verify(args) -> tuple[int, dict]:
    circuit, annotated = read_circ(args.circuit)
    spec = read_rspec(args.spec)
    order = _resolve_order(args.order, annotated)
    bad = first_mismatch(circuit, spec, order)
    report = {
        "command": "verify",
        "n": spec.n,
        "gates": len(circuit),
        "order": order,
        "result": "pass" if bad is None else "fail",
    }
    if bad is not None:
        report["first_mismatch_row"] = bad
        report["expected"] = spec[bad]
        report["got"] = circuit.apply(bad, order)
    return (EXIT_OK if bad is None else EXIT_FAIL), report


def cmd_optimize(args) -> tuple[int, dict]:
    circuit, annotated = read_circ(args.circuit)
    order = _resolve_order(args.order, annotated)
    spec = None
    if args.reduce_controls:
        if not args.spec:
            raise SpecError("--reduce-controls needs --spec")
        spec = read_rspec(args.spec)
    rewrites = 0
    current = circuit
    if args.pairs or args.templates:
        current, log = _reduce(current, args.pairs, args.templates)
        rewrites += len(log)
    if spec is not None:
        before = current.control_count()
        current = reduce_controls(current, spec, order)
        rewrites += before - current.control_count()
        if args.pairs or args.templates:
            current, log = _reduce(current, args.pairs, args.templates)
            rewrites += len(log)
    if not equivalent(circuit, current) or len(current) > len(circuit):
        raise InternalError("optimization changed the circuit's function")
    if args.output:
        _atomic_write(args.output, format_circ(current, annotated or order))
    return EXIT_OK, {
        "command": "optimize",
        "n": circuit.width,
        "gates_before": len(circuit),
        "gates_after": len(current),
        "controls_before": circuit.control_count(),
        "controls_after": current.control_count(),
        "rewrites": rewrites,
        "circuit": str(current),
    }


def _reduce(c: Circuit, pairs: bool, templates: bool):
    if pairs and templates:
        return reduce_logged(c)
    log: list = []
    c = remove_useless_pairs(c, log) if pairs else apply_templates(c, log)
    return c, log


def cmd_embed(args) -> tuple[int, dict]:
    table = read_itable(args.table)
    res = embed(table)
    report = {
        "command": "embed",
        "inputs": table.n,
        "outputs": table.k,
        "m": res.m,
        "p": res.p,
        "width": res.width,
        "constant_lines": list(res.constant_lines),
        "output_lines": list(res.output_lines),
        "passthrough_lines": list(res.passthrough_lines),
        "perm": list(res.spec.perm),
    }
    if args.output:
        _atomic_write(args.output, format_rspec(res.spec))
        side = json.dumps(report, sort_keys=True) + "\n"
        _atomic_write(args.output + ".report.json", side)
    return EXIT_OK, report


def cmd_stats(args) -> tuple[int, dict]:
    spec = read_rspec(args.spec)
    cyc = cycles(spec)
    return EXIT_OK, {
        "command": "stats",
        "n": spec.n,
        "complexity": complexity(spec),
        "misplaced": len(misplaced(spec)),
        "cycle_lengths": sorted((len(c) for c in cyc), reverse=True),
        "cycles": ["(" + " ".join(map(str, c)) + ")" for c in cyc],
    }


def cmd_corpus(args) -> tuple[int, dict]:
    results = corpus.run()
    failed = [r.name for r in results if not r.ok]
    if args.format == "text":
        for r in results:
            sys.stdout.write(f"{'PASS' if r.ok else 'FAIL'}  {r.name}: {r.detail}\n")
    return (EXIT_OK if not failed else EXIT_FAIL), {
        "command": "corpus",
        "cases": len(results),
        "failed": failed,
    }


# -- argument parsing -----------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="revsynth",
        description="Synthesize and optimize reversible Toffoli circuits",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("synth", parents=[fmt], help="synthesize a circuit from a .rspec file")
    p.add_argument("spec")
    p.add_argument("-o", "--output", help="write the circuit as a .circ file")
    p.add_argument("--strategy", choices=sorted(STRATEGY_ALIASES), default="bsssn")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--tie-break", choices=("low", "high"), default="low")
    p.add_argument("--direction", choices=("output", "input"), default="output")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("verify", parents=[fmt], help="check a circuit against a spec")
    p.add_argument("circuit")
    p.add_argument("spec")
    p.add_argument("--order", choices=ORDERS + ("auto",), default="auto",
                   help="gate application order; auto uses the file's annotation")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("optimize", parents=[fmt], help="reduce a circuit")
    p.add_argument("circuit")
    p.add_argument("-o", "--output")
    p.add_argument("--spec", help=".rspec the circuit realizes (for --reduce-controls)")
    p.add_argument("--order", choices=ORDERS + ("auto",), default="auto")
    p.add_argument("--no-pairs", dest="pairs", action="store_false")
    p.add_argument("--no-templates", dest="templates", action="store_false")
    p.add_argument("--reduce-controls", action="store_true")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("embed", parents=[fmt], help="embed an .itable into a reversible spec")
    p.add_argument("table")
    p.add_argument("-o", "--output", help="write .rspec here plus a .report.json sidecar")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("stats", parents=[fmt], help="metrics of a .rspec file")
    p.add_argument("spec")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("corpus", parents=[fmt], help="run the bundled regression corpus")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, report = args.func(args)
    except (SpecError, CircuitError, EmbeddingError, SynthesisError, OSError) as exc:
        print(f"revsynth {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InternalError, AssertionError) as exc:
        print(f"revsynth {args.command}: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    _emit(report, args.format)
    return code


if __name__ == "__main__":
    sys.exit(main())
