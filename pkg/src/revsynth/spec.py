"""Reversible specifications as permutations of ``{0, ..., 2**n - 1}``.

Bit 0 of a pattern is line ``a``, bit ``n - 1`` the most significant line,
so a truth-table row written ``c b a`` reads directly as an integer.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence, Union

MAX_WIDTH = 16


class SpecError(ValueError):
    """Raised for malformed or non-bijective specifications."""


@dataclass(frozen=True)
class BitPattern:
    """An ``width``-bit assignment stored as an unsigned integer."""

    value: int
    width: int

    def __post_init__(self):
        if not 1 <= self.width <= MAX_WIDTH:
            raise ValueError(f"width must be in 1..{MAX_WIDTH}, got {self.width}")
        if not 0 <= self.value < (1 << self.width):
            raise ValueError(f"value {self.value} does not fit in {self.width} bits")

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def bits(self) -> tuple[int, ...]:
        """Bits from the most significant line down to line ``a``."""
        return tuple((self.value >> i) & 1 for i in reversed(range(self.width)))

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "BitPattern":
        value = 0
        for b in bits:
            value = (value << 1) | (1 if b else 0)
        return cls(value, len(bits))


Pattern = Union[int, BitPattern]


def hamming(p: Pattern, q: Pattern) -> int:
    """Number of bit positions in which ``p`` and ``q`` differ."""
    if isinstance(p, BitPattern) and isinstance(q, BitPattern) and p.width != q.width:
        raise ValueError(f"width mismatch: {p.width} vs {q.width}")
    return (int(p) ^ int(q)).bit_count()


class ReversibleSpec:
    """A totally specified reversible function, ``perm[i] = f(i)``.

    Bijectivity is checked on construction; instances are immutable.
    """

    __slots__ = ("_n", "_perm")

    def __init__(self, n: int, perm: Iterable[int]):
        perm = tuple(int(v) for v in perm)
        if not 1 <= n <= MAX_WIDTH:
            raise SpecError(f"line count must be in 1..{MAX_WIDTH}, got {n}")
        size = 1 << n
        if len(perm) != size:
            raise SpecError(f"expected {size} values for n={n}, got {len(perm)}")
        seen = bytearray(size)
        for v in perm:
            if not 0 <= v < size:
                raise SpecError(f"value {v} out of range for n={n}")
            if seen[v]:
                raise SpecError(f"value {v} appears more than once; not a bijection")
            seen[v] = 1
        self._n = n
        self._perm = perm

    @classmethod
    def from_list(cls, perm: Sequence[int]) -> "ReversibleSpec":
        """Infer ``n`` from the length of ``perm``."""
        n = max(len(perm) - 1, 1).bit_length()
        return cls(n, perm)

    @classmethod
    def identity(cls, n: int) -> "ReversibleSpec":
        return cls(n, range(1 << n))

    @property
    def n(self) -> int:
        return self._n

    @property
    def perm(self) -> tuple[int, ...]:
        return self._perm

    def __len__(self) -> int:
        return len(self._perm)

    def __getitem__(self, i: int) -> int:
        return self._perm[i]

    def __iter__(self):
        return iter(self._perm)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ReversibleSpec):
            return NotImplemented
        return self._n == other._n and self._perm == other._perm

    def __hash__(self) -> int:
        return hash((self._n, self._perm))

    def __repr__(self) -> str:
        return f"ReversibleSpec({self._n}, {list(self._perm)})"

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self._perm)) + "}"


def complexity(spec: ReversibleSpec) -> int:
    """Sum of Hamming distances between each input and its output."""
    return sum((i ^ v).bit_count() for i, v in enumerate(spec.perm))


def inverse(spec: ReversibleSpec) -> ReversibleSpec:
    inv = [0] * len(spec)
    for i, v in enumerate(spec.perm):
        inv[v] = i
    return ReversibleSpec(spec.n, inv)


def is_identity(spec: ReversibleSpec) -> bool:
    return all(i == v for i, v in enumerate(spec.perm))


def misplaced(spec: ReversibleSpec) -> list[int]:
    """Indices whose value is not in its intended place."""
    return [i for i, v in enumerate(spec.perm) if i != v]


def cycles(spec: ReversibleSpec) -> list[tuple[int, ...]]:
    """Cycle decomposition of the permutation, fixed points excluded."""
    seen = [False] * len(spec)
    out = []
    for start in range(len(spec)):
        if seen[start] or spec[start] == start:
            seen[start] = True
            continue
        cyc = []
        i = start
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            i = spec[i]
        out.append(tuple(cyc))
    return out


# -- .rspec files ---------------------------------------------------------

def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_rspec(text: str) -> ReversibleSpec:
    """Parse ``n <int>`` / ``perm <values...>`` text."""
    n = None
    perm = None
    for lineno, line in _content_lines(text):
        key, _, rest = line.partition(" ")
        try:
            if key == "n" and n is None:
                n = int(rest)
            elif key == "perm" and perm is None:
                perm = [int(tok) for tok in rest.split()]
            else:
                raise SpecError(f"line {lineno}: unexpected {line!r}")
        except ValueError as exc:
            if isinstance(exc, SpecError):
                raise
            raise SpecError(f"line {lineno}: {exc}") from None
    if n is None or perm is None:
        raise SpecError("missing 'n' or 'perm' line")
    return ReversibleSpec(n, perm)


def format_rspec(spec: ReversibleSpec, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"n {spec.n}")
    lines.append("perm " + " ".join(map(str, spec.perm)))
    return "\n".join(lines) + "\n"


def read_rspec(path: str | Path) -> ReversibleSpec:
    return parse_rspec(Path(path).read_text(encoding="utf-8"))


def write_rspec(path: str | Path, spec: ReversibleSpec, comment: str | None = None) -> None:
    Path(path).write_text(format_rspec(spec, comment), encoding="utf-8")
