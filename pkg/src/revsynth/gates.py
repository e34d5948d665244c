"""Mixed-polarity generalized Toffoli gates and circuits built from them.

Gate text syntax is ``T(<controls>:<target>)`` where controls are
comma-separated line names and a trailing ``'`` marks a negative control,
e.g. ``T(b',c':a)``. ``T(:a)`` is a NOT on line ``a``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Literal

import numpy as np

from .spec import MAX_WIDTH, Pattern, ReversibleSpec, BitPattern

Order = Literal["listed", "reversed"]
ORDERS = ("listed", "reversed")


class CircuitError(ValueError):
    """Malformed gate or circuit, or a width mismatch."""


def line_name(i: int) -> str:
    return chr(ord("a") + i)


def line_index(name: str, width: int | None = None) -> int:
    """Resolve ``a``..``z`` or ``x1``..``xn`` to a 0-based line index."""
    name = name.strip()
    if re.fullmatch(r"[a-z]", name):
        idx = ord(name) - ord("a")
    elif re.fullmatch(r"x[1-9][0-9]*", name):
        idx = int(name[1:]) - 1
    else:
        raise CircuitError(f"bad line name {name!r}")
    if width is not None and idx >= width:
        raise CircuitError(f"line {name!r} out of range for width {width}")
    return idx


@dataclass(frozen=True)
class ToffoliGate:
    """Flip ``target`` iff every positive control is 1 and every negative control is 0.

    Controls are held as two bit masks over line indices.
    """

    width: int
    target: int
    pos: int = 0
    neg: int = 0
    control_mask: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "control_mask", self.pos | self.neg)
        if not 1 <= self.width <= MAX_WIDTH:
            raise CircuitError(f"width must be in 1..{MAX_WIDTH}")
        full = (1 << self.width) - 1
        if not 0 <= self.target < self.width:
            raise CircuitError(f"target {self.target} out of range")
        if self.pos & self.neg:
            raise CircuitError("a line cannot be both a positive and negative control")
        if (self.pos | self.neg) & (1 << self.target):
            raise CircuitError("target cannot also be a control")
        if (self.pos | self.neg) & ~full:
            raise CircuitError("control line out of range")

    @classmethod
    def from_controls(
        cls, width: int, target: int, controls: Iterable[tuple[int, bool]] = ()
    ) -> "ToffoliGate":
        """Build from ``(line, positive)`` pairs."""
        pos = neg = 0
        for line, positive in controls:
            bit = 1 << line
            if (pos | neg) & bit:
                raise CircuitError(f"duplicate control on line {line_name(line)}")
            if positive:
                pos |= bit
            else:
                neg |= bit
        return cls(width, target, pos, neg)

    @property
    def num_controls(self) -> int:
        return self.control_mask.bit_count()

    def controls(self) -> list[tuple[int, bool]]:
        """``(line, positive)`` pairs in ascending line order."""
        return [
            (i, bool(self.pos >> i & 1))
            for i in range(self.width)
            if self.control_mask >> i & 1
        ]

    def fires(self, p: int) -> bool:
        return (p & self.pos) == self.pos and (p & self.neg) == 0

    def apply(self, p: Pattern) -> int:
        if isinstance(p, BitPattern) and p.width != self.width:
            raise CircuitError(f"pattern width {p.width} != gate width {self.width}")
        p = int(p)
        return p ^ (1 << self.target) if self.fires(p) else p

    def apply_all(self, values: np.ndarray) -> np.ndarray:
        hit = ((values & self.pos) == self.pos) & ((values & self.neg) == 0)
        return values ^ (hit.astype(values.dtype) << self.target)

    def moved_points(self) -> int:
        return 1 << (self.width - self.num_controls)

    def without_control(self, line: int) -> "ToffoliGate":
        keep = ~(1 << line)
        return ToffoliGate(self.width, self.target, self.pos & keep, self.neg & keep)

    def __str__(self) -> str:
        ctl = ",".join(
            line_name(i) + ("" if positive else "'") for i, positive in self.controls()
        )
        return f"T({ctl}:{line_name(self.target)})"


def apply_gate(g: ToffoliGate, p: Pattern) -> int:
    return g.apply(p)


def gate_moved_points(g: ToffoliGate) -> int:
    return g.moved_points()


_GATE_RE = re.compile(r"T\s*\(([^()]*)\)")


def parse_gate(text: str, width: int) -> ToffoliGate:
    m = _GATE_RE.fullmatch(text.strip())
    if not m:
        raise CircuitError(f"cannot parse gate {text!r}")
    return _gate_from_body(m.group(1), width)


def _gate_from_body(body: str, width: int) -> ToffoliGate:
    # ';' appears in some printed sources; accept it as an alias of ':'
    body = body.replace("′", "'").replace(";", ":")
    if body.count(":") != 1:
        raise CircuitError(f"gate needs exactly one ':' in {body!r}")
    ctl_text, target_text = body.split(":")
    controls = []
    if ctl_text.strip():
        for tok in ctl_text.split(","):
            tok = tok.strip()
            if not tok:
                raise CircuitError(f"empty control name in {body!r}")
            positive = not tok.endswith("'")
            controls.append((line_index(tok.rstrip("'"), width), positive))
    return ToffoliGate.from_controls(width, line_index(target_text, width), controls)


def parse_gates(text: str, width: int) -> list[ToffoliGate]:
    """Parse every ``T(...)`` occurring in ``text``; anything else must be whitespace."""
    gates = []
    pos = 0
    for m in _GATE_RE.finditer(text):
        if text[pos:m.start()].strip():
            raise CircuitError(f"unexpected text {text[pos:m.start()].strip()!r}")
        gates.append(_gate_from_body(m.group(1), width))
        pos = m.end()
    if text[pos:].strip():
        raise CircuitError(f"unexpected text {text[pos:].strip()!r}")
    return gates


class Circuit:
    """An ordered sequence of gates over ``width`` lines."""

    __slots__ = ("_width", "_gates")

    def __init__(self, width: int, gates: Iterable[ToffoliGate] = ()):
        gates = tuple(gates)
        for g in gates:
            if g.width != width:
                raise CircuitError(f"gate {g} has width {g.width}, circuit has {width}")
        self._width = width
        self._gates = gates

    @classmethod
    def parse(cls, text: str, width: int) -> "Circuit":
        return cls(width, parse_gates(text, width))

    @property
    def width(self) -> int:
        return self._width

    @property
    def gates(self) -> tuple[ToffoliGate, ...]:
        return self._gates

    def __len__(self) -> int:
        return len(self._gates)

    def __iter__(self):
        return iter(self._gates)

    def __getitem__(self, i):
        return self._gates[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Circuit):
            return NotImplemented
        return self._width == other._width and self._gates == other._gates

    def __hash__(self) -> int:
        return hash((self._width, self._gates))

    def __str__(self) -> str:
        return "".join(map(str, self._gates))

    def __repr__(self) -> str:
        return f"Circuit({self._width}, {str(self)!r})"

    def control_count(self) -> int:
        return sum(g.num_controls for g in self._gates)

    def reversed(self) -> "Circuit":
        return Circuit(self._width, self._gates[::-1])

    def ordered(self, order: Order) -> tuple[ToffoliGate, ...]:
        if order == "listed":
            return self._gates
        if order == "reversed":
            return self._gates[::-1]
        raise CircuitError(f"order must be one of {ORDERS}, got {order!r}")

    def apply(self, p: Pattern, order: Order = "listed") -> int:
        if isinstance(p, BitPattern) and p.width != self._width:
            raise CircuitError(f"pattern width {p.width} != circuit width {self._width}")
        p = int(p)
        for g in self.ordered(order):
            p = g.apply(p)
        return p

    def table(self, order: Order = "listed") -> np.ndarray:
        """Output value for every input ``0 .. 2**width - 1``."""
        values = np.arange(1 << self._width, dtype=np.int64)
        for g in self.ordered(order):
            values = g.apply_all(values)
        return values

    def to_spec(self, order: Order = "listed") -> ReversibleSpec:
        return ReversibleSpec(self._width, self.table(order).tolist())


def circuit_apply(c: Circuit, p: Pattern, order: Order = "listed") -> int:
    return c.apply(p, order)


def circuit_to_spec(c: Circuit, order: Order = "listed") -> ReversibleSpec:
    return c.to_spec(order)


def equivalent(c1: Circuit, c2: Circuit) -> bool:
    if c1.width != c2.width:
        raise CircuitError(f"width mismatch: {c1.width} vs {c2.width}")
    return bool(np.array_equal(c1.table("listed"), c2.table("listed")))


def realizes(c: Circuit, spec: ReversibleSpec, order: Order = "reversed") -> bool:
    if c.width != spec.n:
        raise CircuitError(f"circuit width {c.width} != spec width {spec.n}")
    return c.table(order).tolist() == list(spec.perm)


def first_mismatch(c: Circuit, spec: ReversibleSpec, order: Order) -> int | None:
    """First input row where the circuit disagrees with ``spec``, or None."""
    if c.width != spec.n:
        raise CircuitError(f"circuit width {c.width} != spec width {spec.n}")
    got = c.table(order)
    bad = np.flatnonzero(got != np.asarray(spec.perm))
    return int(bad[0]) if bad.size else None


# -- .circ files ----------------------------------------------------------

_ORDER_RE = re.compile(r"#\s*order\s*:\s*(\w+)")


def parse_circ(text: str) -> tuple[Circuit, Order | None]:
    """Parse a ``.circ`` file; returns the circuit and its order annotation, if any."""
    width = None
    order = None
    body = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        m = _ORDER_RE.search(raw)
        if m:
            if m.group(1) not in ORDERS:
                raise CircuitError(f"line {lineno}: unknown order {m.group(1)!r}")
            order = m.group(1)
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if width is None:
            key, _, rest = line.partition(" ")
            if key != "n":
                raise CircuitError(f"line {lineno}: expected 'n <int>' header")
            try:
                width = int(rest)
            except ValueError:
                raise CircuitError(f"line {lineno}: bad width {rest!r}") from None
            continue
        try:
            body.extend(parse_gates(line, width))
        except CircuitError as exc:
            raise CircuitError(f"line {lineno}: {exc}") from None
    if width is None:
        raise CircuitError("missing 'n <int>' header")
    return Circuit(width, body), order


def format_circ(c: Circuit, order: Order | None = None, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c_}" for c_ in comment.splitlines())
    lines.append(f"n {c.width}")
    lines.extend(str(g) for g in c)
    if order is not None:
        lines.append(f"# order: {order}")
    return "\n".join(lines) + "\n"


def read_circ(path: str | Path) -> tuple[Circuit, Order | None]:
    return parse_circ(Path(path).read_text(encoding="utf-8"))


def write_circ(path: str | Path, c: Circuit, order: Order | None = None,
               comment: str | None = None) -> None:
    Path(path).write_text(format_circ(c, order, comment), encoding="utf-8")

