import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from weakmonads import (GF, QQ, DimensionMismatch, LinMap, Reading, as_map, compare,
                        flag, identity, juxt, juxtaposer, kron, mirror_map, zeros)

F7 = GF(7)


def rand(rng, rows, cols, field=F7):
    return LinMap(field, field.random(rng, (rows, cols)))


def test_readings():
    assert Reading.from_handedness("left") is Reading.STANDARD
    assert Reading.from_handedness("right") is Reading.MODULE
    assert Reading.STANDARD.other() is Reading.MODULE
    with pytest.raises(ValueError):
        Reading.from_handedness("up")


@given(st.integers(0, 10 ** 6))
def test_juxtaposition_is_kron_in_each_reading(seed):
    rng = np.random.default_rng(seed)
    a, b = rand(rng, 2, 3), rand(rng, 3, 1)
    i2 = identity(F7, 2)
    assert as_map(juxt(Reading.STANDARD, a, 2, b)) == kron(a, i2, b)
    assert as_map(juxt(Reading.MODULE, a, 2, b)) == kron(b, i2, a)


@given(st.integers(0, 10 ** 6), st.sampled_from(list(Reading)))
def test_lazy_chain_matches_dense(seed, reading):
    rng = np.random.default_rng(seed)
    J = juxtaposer(reading)
    f, g = rand(rng, 2, 2), rand(rng, 3, 2)
    lazy = J(g, 2) @ J(2, f) @ J(f, 2)
    dense = as_map(J(g, 2)) @ as_map(J(2, f)) @ as_map(J(f, 2))
    assert as_map(lazy) == dense


def test_identity_factors_collapse():
    f = rand(np.random.default_rng(0), 2, 3)
    assert juxt(Reading.STANDARD, 1, f, 1) is f
    with pytest.raises(ValueError):
        juxt(Reading.STANDARD, 2, 3)


def test_zero_dimensional_factors():
    f = zeros(F7, 0, 2)
    assert as_map(juxt(Reading.STANDARD, 3, f)).shape == (0, 6)
    g = zeros(QQ, 2, 0)
    assert as_map(juxt(Reading.MODULE, g, 2)).shape == (4, 0)


def test_dimension_mismatch():
    f = rand(np.random.default_rng(1), 2, 2)
    with pytest.raises(DimensionMismatch):
        juxt(Reading.STANDARD, f, 2) @ identity(F7, 3)


@given(st.integers(0, 10 ** 6))
def test_mirror_map_swaps_readings(seed):
    rng = np.random.default_rng(seed)
    a, b = rand(rng, 2, 3), rand(rng, 3, 2)
    std = as_map(juxt(Reading.STANDARD, a, b))
    mod = as_map(juxt(Reading.MODULE, a, b))
    assert mirror_map(std, [3, 2], [2, 3]) == mod
    assert mirror_map(mirror_map(std, [3, 2], [2, 3]), [2, 3], [3, 2]) == std


def test_compare_locates_witness():
    a = LinMap.from_rows(QQ, [[1, 0, 0, 0], [0, 1, 0, 0]])
    b = LinMap.from_rows(QQ, [[1, 0, 0, 0], [0, 1, 0, 5]])
    v = compare("x", a, b, [2, 2])
    assert not v.passed
    assert v.witness.basis_index == 3 and v.witness.multi_index == (1, 1)
    assert compare("x", a, a).passed
    assert flag("y", 0).passed is False
    with pytest.raises(DimensionMismatch):
        compare("x", a, identity(QQ, 2))
