"""Peephole reduction of Toffoli circuits.

Two passes, alternated until neither changes the circuit:

* useless-pair removal: two identical gates cancel when every gate between
  them leaves the pair's target alone and never targets one of the pair's
  controls;
* templates, tried in priority order and leftmost match first:

  - ``R1`` adjacent identical gates are deleted;
  - ``R2`` ``T(x:y) T(:x) T(:y)`` becomes ``T(:x) T(x:y)`` (either polarity on x);
  - ``R3`` adjacent gates on the same target whose controls differ only in
    the polarity of one line merge into one gate without that control;
  - ``R4`` the R1/R3 patterns across intervening gates that commute with
    one of the two.

Every rule strictly lowers the gate count, so the loop terminates.
New rules go in ``TEMPLATES``; each must be sound on its own.
"""
from __future__ import annotations

from bisect import bisect_right
from collections import defaultdict
from typing import Callable, NamedTuple, Sequence

from .gates import Circuit, ToffoliGate


class Rewrite(NamedTuple):
    rule: str
    start: int
    removed: int
    inserted: tuple[ToffoliGate, ...]


def _same(g: ToffoliGate, h: ToffoliGate) -> bool:
    return g.target == h.target and g.pos == h.pos and g.neg == h.neg


def _passes(pair: ToffoliGate, between: Sequence[ToffoliGate]) -> bool:
    """The identical-pair removal condition for the gates in ``between``."""
    for g in between:
        if g.control_mask >> pair.target & 1:
            return False
        if pair.control_mask >> g.target & 1:
            return False
    return True


def commute(g: ToffoliGate, h: ToffoliGate) -> bool:
    """Sufficient test for ``g h == h g``.

    Either neither target feeds the other's controls, or the two gates
    require opposite values on a line that neither of them flips.
    """
    if not (g.control_mask >> h.target & 1) and not (h.control_mask >> g.target & 1):
        return True
    clash = (g.pos & h.neg) | (g.neg & h.pos)
    clash &= ~((1 << g.target) | (1 << h.target))
    return clash != 0


def _merge(g: ToffoliGate, h: ToffoliGate) -> tuple[ToffoliGate, ...] | None:
    """Replacement for the adjacent pair ``g h``, if R1 or R3 applies."""
    if g.target != h.target or g.control_mask != h.control_mask:
        return None
    flipped = g.pos ^ h.pos
    if flipped == 0:
        return ()
    if flipped.bit_count() == 1:
        return (g.without_control(flipped.bit_length() - 1),)
    return None


def removable_pair(c: Circuit, i: int, j: int) -> bool:
    """Whether gates ``i`` and ``j`` can be deleted together."""
    if not (0 <= i < j < len(c)):
        raise IndexError(f"need 0 <= i < j < {len(c)}, got ({i}, {j})")
    if not _same(c[i], c[j]):
        raise ValueError(f"gates {i} and {j} are not identical")
    return _passes(c[i], c.gates[i + 1:j])


def _find_useless_pair(gates: Sequence[ToffoliGate]) -> Rewrite | None:
    for i, g in enumerate(gates):
        for j in range(i + 1, len(gates)):
            if _same(g, gates[j]):
                return Rewrite("useless-pair", i, j - i + 1, tuple(gates[i + 1:j]))
            if not _passes(g, (gates[j],)):
                # blocks every later partner too
                break
    return None


def _r1(gates: Sequence[ToffoliGate]) -> Rewrite | None:
    for i in range(len(gates) - 1):
        if _same(gates[i], gates[i + 1]):
            return Rewrite("R1", i, 2, ())
    return None


def _r2(gates: Sequence[ToffoliGate]) -> Rewrite | None:
    for i in range(len(gates) - 2):
        cx, nx, ny = gates[i:i + 3]
        if cx.num_controls != 1 or nx.num_controls or ny.num_controls:
            continue
        x = cx.control_mask.bit_length() - 1
        if nx.target == x and ny.target == cx.target:
            return Rewrite("R2", i, 3, (nx, cx))
    return None


def _r3(gates: Sequence[ToffoliGate]) -> Rewrite | None:
    for i in range(len(gates) - 1):
        merged = _merge(gates[i], gates[i + 1])
        if merged is not None and len(merged) == 1:
            return Rewrite("R3", i, 2, merged)
    return None


def _r4(gates: Sequence[ToffoliGate]) -> Rewrite | None:
    # only gates sharing target and control lines can merge
    partners: dict[tuple[int, int], list[int]] = defaultdict(list)
    for idx, g in enumerate(gates):
        partners[g.target, g.control_mask].append(idx)
    left_block: dict[int, int] = {}  # j -> last k < j not commuting with gates[j]

    def last_blocker(j: int) -> int:
        if j not in left_block:
            h = gates[j]
            left_block[j] = next((k for k in range(j - 1, -1, -1)
                                  if not commute(h, gates[k])), -1)
        return left_block[j]

    for i, g in enumerate(gates):
        group = partners[g.target, g.control_mask]
        first_block = None  # first k > i not commuting with g
        for j in group[bisect_right(group, i + 1):]:
            merged = _merge(g, gates[j])
            if merged is None:
                continue
            if last_blocker(j) <= i:
                return Rewrite("R4", i, j - i + 1, merged + tuple(gates[i + 1:j]))
            if first_block is None:
                first_block = next((k for k in range(i + 1, len(gates))
                                    if not commute(g, gates[k])), len(gates))
            if j <= first_block:
                return Rewrite("R4", i, j - i + 1, tuple(gates[i + 1:j]) + merged)
    return None


TEMPLATES: tuple[Callable[[Sequence[ToffoliGate]], Rewrite | None], ...] = (_r1, _r2, _r3, _r4)


def _splice(gates: list[ToffoliGate], rw: Rewrite) -> list[ToffoliGate]:
    return gates[:rw.start] + list(rw.inserted) + gates[rw.start + rw.removed:]


def _remove_pairs(gates: list[ToffoliGate], log: list[Rewrite]) -> list[ToffoliGate]:
    while (rw := _find_useless_pair(gates)) is not None:
        log.append(rw)
        gates = _splice(gates, rw)
    return gates


def _templates(gates: list[ToffoliGate], log: list[Rewrite]) -> list[ToffoliGate]:
    while True:
        for rule in TEMPLATES:
            rw = rule(gates)
            if rw is not None:
                log.append(rw)
                gates = _splice(gates, rw)
                break
        else:
            return gates


def remove_useless_pairs(c: Circuit, log: list[Rewrite] | None = None) -> Circuit:
    return Circuit(c.width, _remove_pairs(list(c), [] if log is None else log))


def apply_templates(c: Circuit, log: list[Rewrite] | None = None) -> Circuit:
    return Circuit(c.width, _templates(list(c), [] if log is None else log))


def reduce_logged(c: Circuit) -> tuple[Circuit, list[Rewrite]]:
    """Run both passes to a fixpoint; also return the rewrites applied."""
    log: list[Rewrite] = []
    gates = list(c)
    while True:
        before = len(log)
        gates = _remove_pairs(gates, log)
        gates = _templates(gates, log)
        if len(log) == before:
            return Circuit(c.width, gates), log


def reduce(c: Circuit) -> Circuit:
    return reduce_logged(c)[0]
