"""Sorting-network synthesis by distance-1 bit-string swaps.

The working copy of the permutation is sorted in place. Every swap of two
values at Hamming distance 1 is a full-control Toffoli gate, so the emitted
gate list, read left to right, maps ``f(x)`` back to ``x``. The realized
function ``f`` is obtained by applying the list in reverse.

Values that are already in their intended place may be displaced while a
string is routed toward its slot; the gates that displaced them are kept on
a stack and re-applied (last in, first out) once the routed string lands.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Literal, NamedTuple

import numpy as np

from .gates import Circuit, CircuitError, Order, ToffoliGate, realizes
from .spec import MAX_WIDTH, Pattern, ReversibleSpec, hamming, inverse

Strategy = Literal["ascending", "lowest_value", "random"]
Direction = Literal["output_translation", "input_translation"]
TieBreak = Literal["low", "high"]

STRATEGY_ALIASES = {
    "ascending": "ascending",
    "bsssn": "ascending",
    "lowest_value": "lowest_value",
    "var_bsssn": "lowest_value",
    "variant": "lowest_value",
    "random": "random",
}


class SynthesisError(ValueError):
    pass


@dataclass(frozen=True)
class SynthesisOptions:
    """Knobs for :func:`synthesize`.

    ``strategy`` picks which misplaced string is routed next:
    ``ascending`` takes the one sitting at the smallest index,
    ``lowest_value`` the one with the smallest value, ``random`` a uniform
    pick from ``random.Random(seed)`` (Mersenne Twister). With ``random``,
    ``trials`` runs share one generator stream and the circuit with the
    fewest gates wins, ties going to the lexicographically smallest text.
    """

    strategy: Strategy = "ascending"
    seed: int = 0
    trials: int = 1
    direction: Direction = "output_translation"
    tie_break: TieBreak = "low"

    def __post_init__(self):
        strategy = STRATEGY_ALIASES.get(str(self.strategy).lower())
        if strategy is None:
            raise SynthesisError(f"unknown strategy {self.strategy!r}")
        object.__setattr__(self, "strategy", strategy)
        if self.trials < 1:
            raise SynthesisError("trials must be >= 1")
        if self.seed < 0:
            raise SynthesisError("seed must be non-negative")
        if self.direction not in ("output_translation", "input_translation"):
            raise SynthesisError(f"unknown direction {self.direction!r}")
        if self.tie_break not in ("low", "high"):
            raise SynthesisError(f"unknown tie-break {self.tie_break!r}")


class Placement(NamedTuple):
    value: int
    route_length: int
    reverse_ops: int


@dataclass
class SynthesisReport:
    circuit: Circuit
    swap_count: int
    reverse_op_count: int
    trace: list[Placement] = field(default_factory=list)
    # order under which ``circuit`` realizes the requested spec
    order: Order = "reversed"

    @property
    def gate_count(self) -> int:
        return len(self.circuit)


def neighbor_candidates(b: Pattern, n: int | None = None) -> list[int]:
    """The ``n`` patterns one bit-flip away from ``b``, by flipped-bit index."""
    if n is None:
        n = getattr(b, "width", None)
        if n is None:
            raise TypeError("width n is required for plain integers")
    b = int(b)
    return [b ^ (1 << i) for i in range(n)]


def swap_gate(p: Pattern, q: Pattern, n: int | None = None) -> ToffoliGate:
    """Full-control gate exchanging exactly the values ``p`` and ``q``."""
    if n is None:
        n = getattr(p, "width", None) or getattr(q, "width", None)
        if n is None:
            raise TypeError("width n is required for plain integers")
    if hamming(p, q) != 1:
        raise SynthesisError(f"swap needs Hamming distance 1, got {hamming(p, q)}")
    p, q = int(p), int(q)
    diff = p ^ q
    target = diff.bit_length() - 1
    others = ((1 << n) - 1) & ~diff
    return ToffoliGate(n, target, pos=p & others, neg=~p & others)


class _Sorter:
    """One sorting run over a working copy of the permutation."""

    def __init__(self, n: int, perm, tie_break: TieBreak):
        self.n = n
        self.work = list(perm)
        self.pos = [0] * len(self.work)
        for i, v in enumerate(self.work):
            self.pos[v] = i
        self.high = tie_break == "high"
        self.gates: list[ToffoliGate] = []
        self.trace: list[Placement] = []
        self.reverse_ops = 0

    def in_place(self, v: int) -> bool:
        return self.pos[v] == v

    def swap(self, p: int, q: int) -> None:
        i, j = self.pos[p], self.pos[q]
        self.work[i], self.work[j] = q, p
        self.pos[p], self.pos[q] = j, i
        self.gates.append(swap_gate(p, q, self.n))

    def route(self, a: int) -> list[int]:
        """Bring ``a`` into slot ``a``; returns every value touched."""
        start = len(self.gates)
        touched = [a]
        pending: list[tuple[int, int]] = []
        while True:
            b = self.work[a]
            touched.append(b)
            if hamming(a, b) == 1:
                self.swap(a, b)
                break
            # closest to a first, then misplaced before placed, then by value
            c = min(
                neighbor_candidates(b, self.n),
                key=lambda c: (hamming(a, c), self.in_place(c), -c if self.high else c),
            )
            displaced = self.in_place(c)
            self.swap(b, c)
            if displaced:
                pending.append((b, c))
        unwinds = len(pending)
        while pending:
            self.swap(*pending.pop())
        self.reverse_ops += unwinds
        self.trace.append(Placement(a, len(self.gates) - start, unwinds))
        return touched


def _sort(n: int, perm, strategy: str, tie_break: TieBreak,
          rng: random.Random | None = None) -> _Sorter:
    s = _Sorter(n, perm, tie_break)
    size = len(perm)
    if strategy == "random":
        # swap-remove list keeps picks reproducible for a given seed
        pool = [v for v in range(size) if not s.in_place(v)]
        where = {v: i for i, v in enumerate(pool)}
        while pool:
            a = pool[rng.randrange(len(pool))]
            for v in s.route(a):
                if s.in_place(v) and v in where:
                    i = where.pop(v)
                    last = pool.pop()
                    if last != v:
                        pool[i] = last
                        where[last] = i
                elif not s.in_place(v) and v not in where:
                    where[v] = len(pool)
                    pool.append(v)
        return s

    # i is the smallest slot not yet holding its own value; placed slots
    # never empty again, so the scan only moves forward.
    i = 0
    while i < size:
        if s.work[i] == i:
            i += 1
            continue
        s.route(s.work[i] if strategy == "ascending" else i)
    return s


def synthesize(spec: ReversibleSpec, opts: SynthesisOptions | None = None) -> SynthesisReport:
    """Sort ``spec`` into the identity with full-control gates."""
    opts = opts or SynthesisOptions()
    if not isinstance(spec, ReversibleSpec):
        raise SynthesisError("spec must be a ReversibleSpec")
    if spec.n > MAX_WIDTH:
        raise SynthesisError(f"width {spec.n} exceeds {MAX_WIDTH}")
    if opts.direction == "input_translation":
        target, order = inverse(spec), "listed"
    else:
        target, order = spec, "reversed"

    if opts.strategy != "random":
        runs = [_sort(spec.n, target.perm, opts.strategy, opts.tie_break)]
    else:
        rng = random.Random(opts.seed)
        runs = [_sort(spec.n, target.perm, "random", opts.tie_break, rng)
                for _ in range(opts.trials)]

    best = min(runs, key=lambda s: (len(s.gates), "".join(map(str, s.gates))))
    return SynthesisReport(
        circuit=Circuit(spec.n, best.gates),
        swap_count=len(best.gates),
        reverse_op_count=best.reverse_ops,
        trace=best.trace,
        order=order,
    )


def reduce_controls(c: Circuit, spec: ReversibleSpec, order: Order = "reversed") -> Circuit:
    """Greedily drop controls while the circuit still realizes ``spec``.

    Gates are visited in application order; each gate's controls in
    ascending line order. A deletion is kept only if the whole circuit
    still matches ``spec`` on every row.
    """
    try:
        ok = realizes(c, spec, order)
    except CircuitError as exc:
        raise SynthesisError(str(exc)) from None
    if not ok:
        raise SynthesisError(f"circuit does not realize the spec under {order!r} order")
    if not len(c):
        return c

    seq = list(c.ordered(order))
    # need: gate_i(prefix) == g_i . g_{i+1} ... g_last (spec), walked forward
    rest = np.asarray(spec.perm, dtype=np.int64)
    for g in reversed(seq):
        rest = g.apply_all(rest)
    prefix = np.arange(1 << c.width, dtype=np.int64)
    for i, g in enumerate(seq):
        rest = g.apply_all(rest)
        for line, _ in g.controls():
            trial = g.without_control(line)
            if np.array_equal(trial.apply_all(prefix), rest):
                g = trial
        seq[i] = g
        prefix = g.apply_all(prefix)

    out = Circuit(c.width, seq if order == "listed" else seq[::-1])
    if not realizes(out, spec, order):
        raise AssertionError("control reduction broke the circuit")
    return out
