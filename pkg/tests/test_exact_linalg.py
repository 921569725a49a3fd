from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from weakmonads import (GF, QQ, DimensionMismatch, FieldMismatch, LinalgError, LinMap,
                        NotIdempotent, NotSquare, cokernel, compose, identity, inverse,
                        kron, nullspace, permute_factors, rank, rref, split_idempotent, swap,
                        zeros)

FIELDS = [GF(7), QQ, GF(5), GF(2)]


def mat(field, rows):
    return LinMap.from_rows(field, rows)


def matrices(field, rows, cols):
    lo, hi = (-4, 4) if field.is_rational else (0, field.p - 1)
    return st.lists(st.lists(st.integers(lo, hi), min_size=cols, max_size=cols),
                    min_size=rows, max_size=rows).map(lambda r: mat(field, r))


shapes = st.tuples(st.integers(1, 4), st.integers(1, 4))


# fields

def test_field_rejects_composite_modulus():
    with pytest.raises(ValueError):
        GF(4)


def test_scalars_are_normalized():
    assert GF(5).scalar(7) == 2
    assert GF(5).scalar(Fraction(1, 2)) == 3
    assert QQ.scalar("2/4") == Fraction(1, 2)
    assert QQ.format(Fraction(2, 4)) == "1/2"
    assert QQ.format(3) == "3"


def test_parse_rejects_booleans_and_floats():
    with pytest.raises(ValueError):
        QQ.parse(True)
    with pytest.raises(ValueError):
        QQ.parse(0.5)
    with pytest.raises(ValueError):
        GF(7).parse(1.0)


def test_wide_prime_uses_object_arithmetic():
    p = 2 ** 61 - 1
    f = GF(p)
    a = mat(f, [[p - 1, 2], [3, p - 2]])
    assert a @ inverse(a) == identity(f, 2)


# composition and tensor products

def test_compose_examples():
    f5 = GF(5)
    assert mat(f5, [[2]]) @ mat(f5, [[3]]) == mat(f5, [[1]])
    f = mat(QQ, [[1, 2], [3, 4], [5, 6]])
    assert identity(QQ, 3) @ f == f
    assert f @ zeros(QQ, 2, 4) == zeros(QQ, 3, 4)


def test_compose_checks_dimensions_and_fields():
    with pytest.raises(DimensionMismatch):
        compose(identity(QQ, 2), identity(QQ, 3))
    with pytest.raises(FieldMismatch):
        compose(identity(QQ, 2), identity(GF(7), 2))


def test_kron_units():
    f7 = GF(7)
    assert kron(identity(f7, 2), identity(f7, 3)) == identity(f7, 6)
    f = mat(f7, [[1, 2], [3, 4]])
    assert kron(f, identity(f7, 1)) == f


def test_kron_basis_convention():
    e = [LinMap.from_rows(QQ, [[1], [0]]), LinMap.from_rows(QQ, [[0], [1]])]
    v = kron(e[1], e[0])
    assert v.tolist() == [["0"], ["0"], ["1"], ["0"]]


@pytest.mark.parametrize("field", FIELDS[:2])
def test_kron_interchange_random(field):
    rng = np.random.default_rng(0)
    for _ in range(20):
        a, b, c, d = (LinMap(field, field.random(rng, (2, 2))) for _ in range(4))
        assert kron(a, b) @ kron(c, d) == kron(a @ c, b @ d)


@given(st.data())
def test_compose_associative(data):
    field = data.draw(st.sampled_from(FIELDS))
    n, m, k, l = (data.draw(st.integers(1, 4)) for _ in range(4))
    a = data.draw(matrices(field, n, m))
    b = data.draw(matrices(field, m, k))
    c = data.draw(matrices(field, k, l))
    assert (a @ b) @ c == a @ (b @ c)


@given(st.data())
def test_kron_mixed_product(data):
    field = data.draw(st.sampled_from(FIELDS))
    a = data.draw(matrices(field, 2, 3))
    b = data.draw(matrices(field, 3, 2))
    c = data.draw(matrices(field, 3, 1))
    d = data.draw(matrices(field, 2, 2))
    assert kron(a, b) @ kron(c, d) == kron(a @ c, b @ d)


# echelon forms

def test_rref_example():
    r, piv = rref(mat(QQ, [[2, 4], [1, 3]]))
    assert r == identity(QQ, 2) and piv == [0, 1]
    assert rank(mat(QQ, [[1, 2], [2, 4]])) == 1


@given(st.data())
def test_rank_nullity(data):
    field = data.draw(st.sampled_from(FIELDS))
    rows, cols = data.draw(shapes)
    a = data.draw(matrices(field, rows, cols))
    k = nullspace(a)
    assert rank(a) + k.cols == cols
    assert (a @ k).is_zero() if k.cols else True
    if k.cols:
        assert rank(k) == k.cols


@given(st.data())
def test_inverse(data):
    field = data.draw(st.sampled_from(FIELDS))
    n = data.draw(st.integers(1, 4))
    a = data.draw(matrices(field, n, n))
    if rank(a) < n:
        with pytest.raises(LinalgError):
            inverse(a)
    else:
        assert a @ inverse(a) == identity(field, n) == inverse(a) @ a


def test_inverse_needs_square():
    with pytest.raises(NotSquare):
        inverse(zeros(QQ, 2, 3))


# idempotents

def test_split_identity_and_zero():
    s = split_idempotent(identity(QQ, 3))
    assert s.retract_dim == 3 and s.iota == identity(QQ, 3) and s.pi == identity(QQ, 3)
    assert split_idempotent(zeros(QQ, 3, 3)).retract_dim == 0


def test_split_diagonal():
    e = mat(GF(7), [[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1]])
    s = split_idempotent(e)
    assert s.retract_dim == 2
    assert s.iota @ s.pi == e
    assert s.pi @ s.iota == identity(GF(7), 2)


def test_split_rejects_non_idempotent():
    with pytest.raises(NotIdempotent):
        split_idempotent(mat(QQ, [[2]]))


@given(st.data())
def test_split_random_idempotent(data):
    field = data.draw(st.sampled_from(FIELDS[:2]))
    n = data.draw(st.integers(1, 4))
    p = data.draw(matrices(field, n, n))
    if rank(p) < n:
        return
    diag = [data.draw(st.integers(0, 1)) for _ in range(n)]
    d = LinMap.from_rows(field, [[diag[i] if i == j else 0 for j in range(n)] for i in range(n)])
    e = p @ d @ inverse(p)
    s = split_idempotent(e)
    assert s.retract_dim == sum(diag) == rank(e)
    assert s.iota @ s.pi == e
    assert s.pi @ s.iota == identity(field, s.retract_dim)


# cokernels

def test_cokernel_examples():
    assert cokernel(identity(QQ, 3)).dim == 0
    q = cokernel(zeros(QQ, 2, 3))
    assert q.proj == identity(QQ, 2)
    f = mat(QQ, [[1, 2], [2, 4], [3, 6]])
    q = cokernel(f)
    assert q.dim == 2
    assert (q.proj @ f).is_zero()


@given(st.data())
def test_cokernel_random(data):
    field = data.draw(st.sampled_from(FIELDS))
    rows, cols = data.draw(shapes)
    f = data.draw(matrices(field, rows, cols))
    q = cokernel(f)
    assert q.dim == rows - rank(f)
    assert (q.proj @ f).is_zero()
    assert q.proj @ q.section == identity(field, q.dim)


# permutations

def test_swap_moves_factors():
    a = mat(QQ, [[1, 2], [3, 4]])
    b = mat(QQ, [[5, 6, 7]])
    assert swap(QQ, 2, 1) @ kron(a, b) == kron(b, a) @ swap(QQ, 2, 3)


@given(st.permutations([0, 1, 2]), st.lists(st.integers(1, 3), min_size=3, max_size=3))
def test_permute_factors_on_basis(perm, dims):
    p = permute_factors(QQ, dims, perm)
    vs = [LinMap.from_rows(QQ, [[1 if i == k else 0] for i in range(d)])
          for d, k in zip(dims, [d - 1 for d in dims])]
    assert p @ kron(*vs) == kron(*(vs[i] for i in perm))
    inv = [perm.index(i) for i in range(3)]
    back = permute_factors(QQ, [dims[i] for i in perm], inv)
    assert back @ p == identity(QQ, p.rows)


def test_primality_matches_trial_division():
    small = [n for n in range(2, 2000) if all(n % d for d in range(2, int(n ** 0.5) + 1))]
    accepted = []
    for n in range(2, 2000):
        try:
            GF(n)
            accepted.append(n)
        except ValueError:
            pass
    assert accepted == small
