"""Embedding irreversible truth tables into reversible specifications.

An n-input, k-output table whose most frequent output pattern occurs m
times needs ``p = ceil(log2 m)`` garbage outputs. When ``p + k > n`` the
missing ``p + k - n`` lines are appended above the originals as constant-0
inputs; the k functional outputs always occupy the top k lines of the
region ``p .. p + k - 1`` (or ``n - k .. n - 1`` when no line is added)
and the remaining low lines pass original inputs through.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .spec import MAX_WIDTH, ReversibleSpec, SpecError


class EmbeddingError(ValueError):
    pass


@dataclass(frozen=True)
class IrreversibleTable:
    """``rows[x]`` is the k-bit output for input ``x``."""

    n: int
    k: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_WIDTH:
            raise EmbeddingError(f"input count must be in 1..{MAX_WIDTH}")
        if not 1 <= self.k <= MAX_WIDTH:
            raise EmbeddingError(f"output count must be in 1..{MAX_WIDTH}")
        rows = tuple(int(r) for r in self.rows)
        if len(rows) != 1 << self.n:
            raise EmbeddingError(f"expected {1 << self.n} rows, got {len(rows)}")
        for x, r in enumerate(rows):
            if not 0 <= r < 1 << self.k:
                raise EmbeddingError(f"row {x}: output {r} does not fit in {self.k} bits")
        object.__setattr__(self, "rows", rows)


@dataclass(frozen=True)
class EmbeddingResult:
    spec: ReversibleSpec
    m: int
    p: int
    constant_lines: tuple[int, ...]
    output_lines: tuple[int, ...]
    passthrough_lines: tuple[int, ...]

    @property
    def width(self) -> int:
        return self.spec.n

    def decode(self, perm: Sequence[int], n: int) -> list[int]:
        """Functional outputs of ``perm`` on the rows where every constant line is 0.

        For a correct embedding this reproduces the original table.
        """
        lo = self.output_lines[0]
        mask = (1 << len(self.output_lines)) - 1
        return [(perm[x] >> lo) & mask for x in range(1 << n)]


def output_multiplicity(t: IrreversibleTable) -> int:
    return max(Counter(t.rows).values())


def garbage_bound(m: int) -> int:
    """``ceil(log2 m)``, computed exactly on integers."""
    if m < 1:
        raise EmbeddingError("multiplicity must be >= 1")
    return (m - 1).bit_length()


def _repair(outs: list[int], funcs: list[int], low_bits: int) -> list[int]:
    """Reassign garbage bits so rows sharing a functional value differ.

    Rows keep their rule-given garbage when it is still free for their
    functional value; the rest take the smallest free pattern, in ascending
    row order.
    """
    used: dict[int, set[int]] = {}
    keep = [False] * len(outs)
    for x, (o, v) in enumerate(zip(outs, funcs)):
        g = o & ((1 << low_bits) - 1)
        taken = used.setdefault(v, set())
        if g not in taken:
            taken.add(g)
            keep[x] = True
    fixed = list(outs)
    for x, v in enumerate(funcs):
        if keep[x]:
            continue
        taken = used[v]
        g = next((g for g in range(1 << low_bits) if g not in taken), None)
        if g is None:
            raise EmbeddingError(
                f"functional value {v} occurs more than {1 << low_bits} times; "
                "garbage lines cannot separate its rows"
            )
        taken.add(g)
        fixed[x] = (v << low_bits) | g
    return fixed


def embed(t: IrreversibleTable) -> EmbeddingResult:
    n, k = t.n, t.k
    m = output_multiplicity(t)
    p = garbage_bound(m)
    width = max(n, p + k)
    if width > MAX_WIDTH:
        raise EmbeddingError(f"embedding needs {width} lines, more than {MAX_WIDTH}")
    size = 1 << width
    added = width - n
    low = width - k  # functional outputs sit on lines low .. width-1
    low_mask = (1 << low) - 1
    out_lines = tuple(range(low, width))
    const_lines = tuple(range(n, width))

    rows = [(t.rows[x] << low) | (x & low_mask) for x in range(1 << n)]
    if len(set(rows)) != len(rows):
        rows = _repair(rows, list(t.rows), low)
    if not added:
        perm = rows
    elif len({r & ((1 << n) - 1) for r in rows}) == len(rows):
        # constant lines echo their own input XORed onto the output, the
        # multi-output form of replacing f by f xor x_{n+1}
        perm = [rows[x & ((1 << n) - 1)] ^ (x >> n << n) for x in range(size)]
    else:
        used = set(rows)
        free = iter(v for v in range(size) if v not in used)
        perm = rows + [next(free) for _ in range(size - len(rows))]

    try:
        spec = ReversibleSpec(width, perm)
    except SpecError as exc:
        raise EmbeddingError(f"embedding is not reversible: {exc}") from None

    passthrough = tuple(
        i for i in range(min(low, n))
        if all((spec[x] >> i & 1) == (x >> i & 1) for x in range(1 << n))
    )
    return EmbeddingResult(spec, m, p, const_lines, out_lines, passthrough)


# -- .itable files --------------------------------------------------------

def parse_itable(text: str) -> IrreversibleTable:
    n = k = None
    rows: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        if key in ("inputs", "outputs"):
            try:
                val = int(rest)
            except ValueError:
                raise EmbeddingError(f"line {lineno}: bad count {rest!r}") from None
            if key == "inputs":
                n = val
            else:
                k = val
            continue
        if n is None or k is None:
            raise EmbeddingError(f"line {lineno}: 'inputs' and 'outputs' must come first")
        bits = line.replace(" ", "")
        if len(bits) != k or set(bits) - {"0", "1"}:
            raise EmbeddingError(f"line {lineno}: expected {k} bits, got {line!r}")
        rows.append(int(bits, 2))
    if n is None or k is None:
        raise EmbeddingError("missing 'inputs' or 'outputs' header")
    return IrreversibleTable(n, k, tuple(rows))


def format_itable(t: IrreversibleTable, comment: str | None = None) -> str:
    lines = [f"# {c}" for c in comment.splitlines()] if comment else []
    lines += [f"inputs {t.n}", f"outputs {t.k}"]
    lines += [format(r, f"0{t.k}b") for r in t.rows]
    return "\n".join(lines) + "\n"


def read_itable(path: str | Path) -> IrreversibleTable:
    return parse_itable(Path(path).read_text(encoding="utf-8"))
