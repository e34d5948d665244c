"""Regression corpus of small hand-checked functions and circuits.

Each case synthesizes, embeds or reduces one bundled file and compares the
outcome with a stored circuit or a known gate count. All checks are
exhaustive simulations.
"""
from __future__ import annotations

from importlib import resources
from typing import Callable, NamedTuple

from .embedding import embed, parse_itable
from .gates import equivalent, parse_circ, realizes
from .reduction import reduce
from .spec import ReversibleSpec, parse_rspec
from .synthesis import SynthesisOptions, synthesize


class CaseResult(NamedTuple):
    name: str
    ok: bool
    detail: str


def read_text(name: str) -> str:
    return (resources.files(__package__) / "data" / name).read_text(encoding="utf-8")


def load_spec(name: str) -> ReversibleSpec:
    return parse_rspec(read_text(name))


def load_circ(name: str):
    return parse_circ(read_text(name))


def load_table(name: str):
    return parse_itable(read_text(name))


def _exact(spec_file: str, circ_file: str, **opts) -> tuple[bool, str]:
    spec = load_spec(spec_file)
    want, order = load_circ(circ_file)
    rep = synthesize(spec, SynthesisOptions(**opts))
    ok = rep.circuit == want and rep.order == order and realizes(rep.circuit, spec, order)
    return ok, f"{rep.circuit} ({order})"


def _count(spec_file: str, gates: int, reduced: bool = False, **opts) -> tuple[bool, str]:
    spec = load_spec(spec_file)
    rep = synthesize(spec, SynthesisOptions(**opts))
    c = reduce(rep.circuit) if reduced else rep.circuit
    ok = len(c) == gates and realizes(c, spec, rep.order)
    return ok, f"{len(c)} gates: {c}"


def _verify(circ_file: str, spec_file: str) -> tuple[bool, str]:
    c, order = load_circ(circ_file)
    ok = realizes(c, load_spec(spec_file), order or "reversed")
    return ok, f"{c} realizes {spec_file} ({order})"


def _embed_single_gate(table_file: str, perm: list[int], gate: str) -> tuple[bool, str]:
    res = embed(load_table(table_file))
    rep = synthesize(res.spec)
    ok = list(res.spec.perm) == perm and str(rep.circuit) == gate
    return ok, f"spec {res.spec}, circuit {rep.circuit}"


def _full_adder() -> tuple[bool, str]:
    table = load_table("full_adder.itable")
    res = embed(table)
    raw = synthesize(res.spec, SynthesisOptions("lowest_value")).circuit
    want, _ = load_circ("full_adder_unreduced.circ")
    small = reduce(raw)
    decoded = res.decode(small.table("reversed").tolist(), table.n)
    ok = raw == want and len(small) < len(raw) and decoded == list(table.rows)
    return ok, f"{len(raw)} -> {len(small)} gates: {small}"


def _full_adder_minimal() -> tuple[bool, str]:
    table = load_table("full_adder.itable")
    c, order = load_circ("full_adder_minimal.circ")
    res = embed(table)
    decoded = res.decode(c.table(order).tolist(), table.n)
    return decoded == list(table.rows), f"{c} on constant-0 rows"


def _reduces_to(circ_file: str, expected: str) -> tuple[bool, str]:
    c, _ = load_circ(circ_file)
    r = reduce(c)
    return str(r) == expected and equivalent(c, r), f"{c} -> {r}"


CASES: dict[str, Callable[[], tuple[bool, str]]] = {
    "three_line/ascending": lambda: _exact("three_line.rspec", "three_line_ascending.circ"),
    "three_line/lowest_value": lambda: _exact(
        "three_line.rspec", "three_line_lowest.circ", strategy="lowest_value"),
    "three_line/input_ascending": lambda: _exact(
        "three_line.rspec", "three_line_inverse_ascending.circ", direction="input_translation"),
    "three_line/input_lowest_value": lambda: _exact(
        "three_line.rspec", "three_line_inverse_lowest.circ",
        strategy="lowest_value", direction="input_translation"),
    "fredkin/3_gates": lambda: _count("fredkin.rspec", 3),
    "swap_3_4/5_gates": lambda: _count("swap_3_4.rspec", 5),
    "decrement/reduced_3_gates": lambda: _count(
        "decrement.rspec", 3, reduced=True, strategy="lowest_value"),
    "identity/empty": lambda: _count("identity3.rspec", 0),
    "fredkin/verify": lambda: _verify("fredkin.circ", "fredkin.rspec"),
    "fredkin/verify_variant": lambda: _verify("fredkin_variant.circ", "fredkin.rspec"),
    "swap_3_4/verify": lambda: _verify("swap_3_4.circ", "swap_3_4.rspec"),
    "swap_3_4/verify_variant": lambda: _verify("swap_3_4_variant.circ", "swap_3_4.rspec"),
    "decrement/verify": lambda: _verify("decrement.circ", "decrement.rspec"),
    "three_line/verify_inverse_ascending": lambda: _verify(
        "three_line_inverse_ascending.circ", "three_line.rspec"),
    "xor2/embed_synth": lambda: _embed_single_gate("xor2.itable", [0, 3, 2, 1], "T(a:b)"),
    "and2/embed_synth": lambda: _embed_single_gate(
        "and2.itable", [0, 1, 2, 7, 4, 5, 6, 3], "T(a,b:c)"),
    "full_adder/pipeline": _full_adder,
    "full_adder/minimal": _full_adder_minimal,
    "useless_pair/reduce": lambda: _reduces_to("useless_pair.circ", "T(c:a)"),
    "template/reduce": lambda: _reduces_to("template.circ", "T(:b)T(b:a)"),
}


def run() -> list[CaseResult]:
    out = []
    for name, case in CASES.items():
        ok, detail = case()
        out.append(CaseResult(name, ok, detail))
    return out
