import random

import pytest

from revsynth.gates import Circuit, ToffoliGate


def bits_of(x, n):
    return [(x >> i) & 1 for i in range(n)]


def oracle_apply(gate: ToffoliGate, x: int) -> int:
    """Bit-list evaluation of one gate, independent of the mask arithmetic."""
    b = bits_of(x, gate.width)
    if all(b[line] == (1 if positive else 0) for line, positive in gate.controls()):
        b[gate.target] ^= 1
    return sum(bit << i for i, bit in enumerate(b))


def oracle_table(circuit: Circuit, order: str = "listed") -> list[int]:
    gates = list(circuit) if order == "listed" else list(circuit)[::-1]
    out = []
    for x in range(1 << circuit.width):
        for g in gates:
            x = oracle_apply(g, x)
        out.append(x)
    return out


def random_gate(rng: random.Random, n: int, max_controls: int | None = None) -> ToffoliGate:
    target = rng.randrange(n)
    others = [i for i in range(n) if i != target]
    k = rng.randint(0, len(others) if max_controls is None else min(max_controls, len(others)))
    lines = rng.sample(others, k)
    return ToffoliGate.from_controls(n, target, [(ln, rng.random() < 0.5) for ln in lines])


def random_circuit(rng: random.Random, n: int, length: int) -> Circuit:
    return Circuit(n, [random_gate(rng, n) for _ in range(length)])


def random_perm(rng: random.Random, n: int) -> list[int]:
    p = list(range(1 << n))
    rng.shuffle(p)
    return p


@pytest.fixture
def rng():
    return random.Random(20240611)
