import pytest
from hypothesis import given, strategies as st

from revsynth.spec import (
    BitPattern, ReversibleSpec, SpecError, complexity, cycles, format_rspec, hamming,
    inverse, is_identity, misplaced, parse_rspec,
)

TABLE = [1, 0, 3, 2, 5, 7, 4, 6]


def perms(min_n=1, max_n=5):
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.permutations(range(1 << n)).map(lambda p: ReversibleSpec(n, p)))


def brute_hamming(p, q, n):
    return sum(1 for i in range(n) if (p >> i) & 1 != (q >> i) & 1)


@pytest.mark.parametrize("p, q, d", [
    (0b101, 0b011, 2),
    (0b110, 0b110, 0),
    (0b000, 0b111, 3),
])
def test_hamming_examples(p, q, d):
    assert hamming(p, q) == d
    assert hamming(BitPattern(p, 3), BitPattern(q, 3)) == d


def test_hamming_width_mismatch():
    with pytest.raises(ValueError):
        hamming(BitPattern(1, 3), BitPattern(1, 4))


@given(st.integers(1, 8).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(0, 2**n - 1), st.integers(0, 2**n - 1),
                        st.integers(0, 2**n - 1))))
def test_hamming_metric(args):
    n, p, q, r = args
    d = hamming(p, q)
    assert d == brute_hamming(p, q, n)
    assert d == hamming(q, p)
    assert (d == 0) == (p == q)
    if p != q:
        assert 1 <= d <= n
    assert hamming(p, r) <= hamming(p, q) + hamming(q, r)


def test_bitpattern():
    p = BitPattern.from_bits([1, 0, 1])
    assert int(p) == 5 and p.bits() == (1, 0, 1)
    with pytest.raises(ValueError):
        BitPattern(8, 3)


@pytest.mark.parametrize("perm, c", [
    (TABLE, 8),
    (list(range(8)), 0),
    ([1, 0], 2),
])
def test_complexity(perm, c):
    assert complexity(ReversibleSpec.from_list(perm)) == c


def test_inverse_examples():
    assert inverse(ReversibleSpec(3, TABLE)).perm == (1, 0, 3, 2, 6, 4, 7, 5)
    assert is_identity(inverse(ReversibleSpec.identity(3)))
    # brute-force inversion: find i with f(i) == v for every v
    f = [2, 0, 1, 3]
    expected = [next(i for i in range(4) if f[i] == v) for v in range(4)]
    assert expected == [1, 2, 0, 3]
    assert list(inverse(ReversibleSpec(2, f)).perm) == expected


def test_is_identity():
    assert is_identity(ReversibleSpec.identity(3))
    assert not is_identity(ReversibleSpec(3, TABLE))


@given(perms())
def test_spec_properties(spec):
    inv = inverse(spec)
    assert inverse(inv) == spec
    assert all(inv[spec[i]] == i for i in range(len(spec)))
    assert complexity(spec) == complexity(inv)
    assert (complexity(spec) == 0) == is_identity(spec)
    assert len(misplaced(spec)) == sum(len(c) for c in cycles(spec))


@pytest.mark.parametrize("n, perm", [
    (2, [0, 1, 2]),
    (2, [0, 1, 1, 3]),
    (2, [0, 1, 2, 4]),
    (17, [0]),
])
def test_spec_rejects_invalid(n, perm):
    with pytest.raises(SpecError):
        ReversibleSpec(n, perm)


def test_rspec_roundtrip():
    spec = ReversibleSpec(3, TABLE)
    assert parse_rspec(format_rspec(spec, comment="demo")) == spec


def test_rspec_names_duplicate():
    with pytest.raises(SpecError, match="value 3"):
        parse_rspec("# dup\nn 2\nperm 0 3 3 1\n")


@pytest.mark.parametrize("text", ["n 2\n", "perm 0 1\n", "n x\nperm 0 1\n", "n 1\nperm 0 1\nzzz\n"])
def test_rspec_malformed(text):
    with pytest.raises(SpecError):
        parse_rspec(text)


def test_cycles():
    assert cycles(ReversibleSpec(3, TABLE)) == [(0, 1), (2, 3), (4, 5, 7, 6)]
