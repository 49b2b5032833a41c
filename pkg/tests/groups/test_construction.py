import pytest
import numpy as np
from numpy.testing import assert_equal

from sgpower.groups import (sylvester_oracle, nonpositive_from_oracle,
                            nested_chain, greedy_extend, classify,
                            ConstructionSpec, full_signflip_group,
                            sample_uniform_signflip,
                            ORACLE, NONPOSITIVE)
from sgpower.utils import UnsupportedSizeError, ImpossibleSizeError


def _as_integers(elements):
    bits = (np.asarray(elements) < 0).astype(np.int64)
    return bits @ (1 << np.arange(bits.shape[1], dtype=np.int64))


def _is_closed(elements):
    keys = _as_integers(elements)
    products = np.bitwise_xor.outer(keys, keys)
    return bool(np.isin(products.ravel(), keys).all())


@pytest.mark.parametrize("n", [1, 2, 4, 8, 16, 32, 64])
def test_sylvester_oracle(n):
    subgroup = sylvester_oracle(n)
    assert subgroup.size == n
    assert subgroup.kind == ORACLE
    assert_equal(subgroup.elements[0], np.ones(n))
    if n > 1:
        assert subgroup.leak_spectrum() == {0.0: n - 1, 1.0: 1}


@pytest.mark.parametrize("n", [3, 12, 24])
def test_sylvester_oracle_unsupported(n):
    with pytest.raises(UnsupportedSizeError):
        sylvester_oracle(n)


def test_nonpositive_from_oracle():
    subgroup = nonpositive_from_oracle(sylvester_oracle(16))
    assert subgroup.size == 32
    assert subgroup.kind == NONPOSITIVE
    assert subgroup.leak_spectrum() == {-1.0: 1, 0.0: 30, 1.0: 1}
    assert subgroup.max_leak == 0


def test_nonpositive_from_general():
    with pytest.raises(ValueError) as e:
        nonpositive_from_oracle(classify(full_signflip_group(2)))
    assert str(e.value) == "Expected an Oracle subgroup, got General"


def test_nested_chain_is_nested():
    sizes = [1, 2, 4, 8, 16, 32, 64]
    chain = nested_chain(8, sizes, random_state=0)
    assert_equal([s.size for s in chain], sizes)
    for small, large in zip(chain, chain[1:]):
        assert small.issubset(large)
    assert chain[3].kind == ORACLE
    assert chain[4].kind == NONPOSITIVE


def test_nested_chain_leak_does_not_decrease():
    chain = nested_chain(16, [16, 32, 64, 128, 256], random_state=1)
    max_leaks = [s.max_leak for s in chain]
    assert all(a <= b for a, b in zip(max_leaks, max_leaks[1:]))


def test_nested_chain_same_seed_same_prefix():
    long = nested_chain(8, [64, 128], random_state=5)
    short = nested_chain(8, [64], random_state=5)
    assert_equal(long[0].elements, short[0].elements)


def test_nested_chain_errors():
    with pytest.raises(UnsupportedSizeError):
        nested_chain(6, [2])
    with pytest.raises(ValueError, match="strictly ascending"):
        nested_chain(8, [4, 2])
    with pytest.raises(ValueError):
        nested_chain(8, [3])
    with pytest.raises(ImpossibleSizeError):
        nested_chain(4, [32])


def test_greedy_extend_reproducible():
    start = nonpositive_from_oracle(sylvester_oracle(8))
    a = greedy_extend(start, 64, pool_size=64, random_state=11)
    b = greedy_extend(start, 64, pool_size=64, random_state=11)
    assert_equal(a.elements, b.elements)
    assert a.size == 64
    assert start.issubset(a)
    assert _is_closed(a.elements)


def test_greedy_extend_parallel_matches_serial():
    start = sylvester_oracle(16)
    serial = greedy_extend(start, 64, pool_size=128, random_state=2)
    parallel = greedy_extend(start, 64, pool_size=128, random_state=2,
                             n_jobs=2)
    assert_equal(serial.elements, parallel.elements)


def test_greedy_extend_beats_random_generators():
    start = sylvester_oracle(16)
    greedy = greedy_extend(start, 64, random_state=0)

    rng = np.random.default_rng(0)
    baselines = []
    for _ in range(20):
        current = start
        while current.size < 64:
            g = sample_uniform_signflip(16, rng)
            if g in current:
                continue
            current = classify(np.vstack([current.elements,
                                          g * current.elements]))
        baselines.append(current.max_leak)
    assert greedy.max_leak <= np.median(baselines)


def test_greedy_extend_history():
    start = sylvester_oracle(8)
    result, history = greedy_extend(start, 32, random_state=0,
                                    return_history=True)
    assert_equal([s.size for s in history], [8, 16, 32])
    assert history[-1] is result


def test_greedy_extend_exhausted_pool_warns():
    # the six balanced vectors of n=4 already lie in the non-positive group
    start = nonpositive_from_oracle(sylvester_oracle(4))
    with pytest.warns(RuntimeWarning):
        result = greedy_extend(start, 16, random_state=0)
    assert result.size == 16


def test_greedy_extend_bad_targets():
    start = sylvester_oracle(4)
    with pytest.raises(ValueError):
        greedy_extend(start, 12)
    with pytest.raises(ImpossibleSizeError):
        greedy_extend(start, 32)


def test_greedy_from_trivial_any_n():
    trivial = classify(np.ones((1, 6)))
    subgroup = greedy_extend(trivial, 8, random_state=0)
    assert subgroup.size == 8
    assert subgroup.kind in (ORACLE, NONPOSITIVE, "General")
    assert _is_closed(subgroup.elements)


@pytest.mark.parametrize("strategy, size, kind", [
    ("sylvester", 32, ORACLE),
    ("SylvesterOracle", 8, ORACLE),
    ("nonpositive", 64, NONPOSITIVE),
    ("NonPositive", 16, NONPOSITIVE),
    ("nested", 64, NONPOSITIVE),
])
def test_construction_spec_build(strategy, size, kind):
    subgroup = ConstructionSpec(32, size, strategy).build()
    assert subgroup.size == size
    assert subgroup.kind == kind


def test_construction_spec_greedy_non_power_of_two():
    subgroup = ConstructionSpec(12, 16, "greedy").build(random_state=0)
    assert subgroup.size == 16
    assert subgroup.n == 12
    with pytest.raises(UnsupportedSizeError):
        ConstructionSpec(12, 16, "nested").build()


def test_construction_spec_errors():
    with pytest.raises(ValueError) as e:
        ConstructionSpec(8, 8, "magic")
    assert "Unknown strategy" in str(e.value)
    with pytest.raises(ImpossibleSizeError):
        ConstructionSpec(8, 16, "sylvester")
    with pytest.raises(ImpossibleSizeError):
        ConstructionSpec(8, 32, "nonpositive")


@pytest.mark.acceptance
def test_every_chain_member_is_closed():
    sizes = [2 ** k for k in range(1, 13)]
    chain = nested_chain(32, sizes, random_state=0)
    for subgroup in chain:
        assert _is_closed(subgroup.elements)
    assert chain[4].leak_spectrum() == {0.0: 31, 1.0: 1}
    assert chain[5].leak_spectrum() == {-1.0: 1, 0.0: 62, 1.0: 1}
