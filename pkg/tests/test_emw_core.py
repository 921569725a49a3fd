from dataclasses import replace

import pytest
from hypothesis import given
from hypothesis import strategies as st

from weakmonads import (GF, QQ, BoundaryMismatch, EMWOneCell, EMWTwoCell, MonadInEMW,
                        Reading, ShapeMismatch, as_column, check_monad_in_emw, check_onecell,
                        check_twocell, cyclic_group_table, group_algebra, groupoid_algebra,
                        LinMap, hcompose_onecells, hcompose_twocells, identity, identity_onecell,
                        identity_twocell, induced_iota, induced_pi, law_suite, matrix_algebra,
                        membership_characterizations, membership_space, mirror_monad,
                        mirror_onecell, mirror_twocell, mnd_membership, pair_groupoid,
                        pointwise_algebra, psi_R, trivial_algebra, truncated_polynomial,
                        twocell_space, upper_triangular, vcompose_twocells, zeros)
from weakmonads.sampling import (algebra_pool, random_law_configuration, random_omega,
                                 random_onecells, random_strict_wreath, random_twocell, rng_for)

F7 = GF(7)


def corner_cell(field, reading=Reading.STANDARD):
    """``k -> k^2`` sending ``1`` to ``e1``: a 1-cell that ignores units."""
    return EMWOneCell(pointwise_algebra(field, 2), trivial_algebra(field), 1,
                      as_column(field, [1, 0]), reading)


# 1-cells and 2-cells

@pytest.mark.parametrize("reading", list(Reading))
def test_identity_cells(field, reading):
    for entry in algebra_pool(field):
        c = identity_onecell(entry.algebra, reading)
        assert check_onecell(c).ok
        i = identity_twocell(c)
        assert check_twocell(i).ok
        assert i.rho == entry.algebra.unit


def test_non_unital_onecell():
    c = corner_cell(F7)
    assert check_onecell(c).ok
    assert check_twocell(identity_twocell(c)).ok
    assert identity_twocell(c).rho == as_column(F7, [1, 0])


def test_non_multiplicative_onecell_fails():
    c = EMWOneCell(pointwise_algebra(F7, 2), trivial_algebra(F7), 1,
                   as_column(F7, [1, 1 + 1]), Reading.STANDARD)
    rep = check_onecell(c)
    assert not rep.passed("mult_compat")
    assert rep["mult_compat"].witness.basis_index == 0


@pytest.mark.parametrize("build,centre", [
    (lambda f: pointwise_algebra(f, 3), 3),
    (lambda f: truncated_polynomial(f, 3), 3),
    (lambda f: matrix_algebra(f, 2), 1),
    (upper_triangular, 1),
    (lambda f: group_algebra(f, cyclic_group_table(3)).algebra, 3),
])
def test_endo_twocells_of_identity_are_the_centre(field, build, centre):
    t = build(field)
    c = identity_onecell(t)
    assert len(twocell_space(c, c)) == centre


def test_groupoid_entwining_is_onecell(field):
    h = groupoid_algebra(field, *pair_groupoid([0, 1]))
    d = psi_R(h)
    c = EMWOneCell(d.A, d.A, d.C.dim, d.psi, Reading.MODULE)
    assert check_onecell(c).ok
    assert check_onecell(mirror_onecell(c)).ok


def test_onecell_shape_checked():
    with pytest.raises(ShapeMismatch):
        EMWOneCell(trivial_algebra(QQ), trivial_algebra(QQ), 2, identity(QQ, 3))


def test_twocell_boundaries_checked():
    a = identity_onecell(pointwise_algebra(F7, 2))
    b = identity_onecell(truncated_polynomial(F7, 2))
    with pytest.raises(BoundaryMismatch):
        EMWTwoCell(a, b, as_column(F7, [1, 0]))
    with pytest.raises(BoundaryMismatch):
        hcompose_onecells(a, b)


def test_composite_dimension():
    rng = rng_for(5)
    pool = algebra_pool(F7)
    t0, t1, t2 = pool[1], pool[3], pool[2]
    (V,) = random_onecells(rng, t0, t1, 1, Reading.STANDARD, 2)
    (Vp,) = random_onecells(rng, t1, t2, 1, Reading.STANDARD, 2)
    VV = hcompose_onecells(V, Vp)
    assert VV.V_dim == V.V_dim * Vp.V_dim
    assert check_onecell(VV).ok


def test_twocell_normalization_is_checked():
    c = corner_cell(F7)
    # rho = e2 is compatible but not fixed by the normalizing idempotent
    r = EMWTwoCell(c, c, as_column(F7, [0, 1]))
    rep = check_twocell(r)
    assert not rep.passed("normalized")


# laws

@given(st.integers(0, 10 ** 6))
def test_law_suite(seed):
    cfg = random_law_configuration(rng_for(seed), F7, max_dim=2)
    rep = law_suite(cfg)
    assert rep.ok, rep.render()


def test_law_suite_over_rationals():
    for seed in range(3):
        assert law_suite(random_law_configuration(rng_for(seed), QQ, max_dim=2)).ok


def test_law_suite_detects_bad_cell():
    for seed in range(20):
        cfg = random_law_configuration(rng_for(seed), F7, max_dim=2)
        e = cfg.rho.rho.entries.copy()
        if e.size == 0:
            continue
        e[0, 0] = (e[0, 0] + 1) % 7
        bad = EMWTwoCell(cfg.rho.src, cfg.rho.dst, LinMap(F7, e))
        if check_twocell(bad).ok:
            continue
        rep = law_suite(replace(cfg, rho=bad))
        assert not rep.passed("composites_valid")
        return
    pytest.fail("no configuration could be perturbed out of the 2-cells")


# memberships

@given(st.integers(0, 10 ** 6), st.sampled_from(["free", "iota", "pi", "strict"]))
def test_membership_characterizations_agree(seed, side):
    rng = rng_for(seed)
    pool = algebra_pool(F7)
    t0, t1 = (pool[i] for i in rng.integers(0, len(pool), size=2))
    reading = list(Reading)[int(rng.integers(0, 2))]
    a, b = random_onecells(rng, t0, t1, 2, reading, 2)
    omega = random_omega(rng, a, b, side)
    rep = membership_characterizations(omega, a, b)
    for s in ("iota", "pi"):
        vals = {rep.passed(f"{s}.{k}") for k in ("cell", "identity", "normalized")}
        assert len(vals) == 1, rep.render()
        assert mnd_membership(omega, s, a, b)[0] == rep.passed(f"{s}.identity")
    if rep.passed("both.strict"):
        assert rep.passed("both.cells_equal")
    if side in ("iota", "pi", "strict"):
        for s in (("iota", "pi") if side == "strict" else (side,)):
            assert rep.passed(f"{s}.identity")


def test_membership_example():
    c = corner_cell(F7)
    omega = identity(F7, 1)
    assert induced_iota(omega, c, c) == as_column(F7, [1, 0])
    assert induced_pi(omega, c, c) == as_column(F7, [1, 0])
    ok, cell = mnd_membership(omega, "iota", c, c)
    assert ok and cell.rho == identity_twocell(c).rho
    assert len(membership_space(c, c, "strict")) == 1


def test_membership_side_validated():
    c = corner_cell(F7)
    with pytest.raises(ValueError):
        mnd_membership(identity(F7, 1), "both", c, c)


# mirrors

@given(st.integers(0, 10 ** 6))
def test_mirror_involutions(seed):
    rng = rng_for(seed)
    pool = algebra_pool(F7)
    t0, t1 = (pool[i] for i in rng.integers(0, len(pool), size=2))
    reading = list(Reading)[int(rng.integers(0, 2))]
    a, b = random_onecells(rng, t0, t1, 2, reading, 2)
    assert mirror_onecell(mirror_onecell(a)) == a
    assert check_onecell(mirror_onecell(a)).ok
    r = random_twocell(rng, a, b)
    m = mirror_twocell(r)
    assert mirror_twocell(m) == r
    assert check_twocell(m).ok


# monads

@given(st.integers(0, 10 ** 6), st.sampled_from(list(Reading)))
def test_strict_wreaths_are_monads(seed, reading):
    m = random_strict_wreath(rng_for(seed), F7, reading)
    assert check_monad_in_emw(m).ok
    assert mirror_monad(mirror_monad(m)) == m
    assert check_monad_in_emw(mirror_monad(m)).ok


def test_monad_with_zero_unit_fails_units():
    m = random_strict_wreath(rng_for(2), F7, Reading.STANDARD)
    bad = MonadInEMW(m.base, m.s_dim, m.psi, m.nu, zeros(F7, m.theta.rows, 1), m.reading)
    rep = check_monad_in_emw(bad)
    assert not rep.passed("left_unit") and not rep.passed("right_unit")
    assert rep.passed("psi_mult") and rep.passed("nu_assoc")


def test_monad_cells():
    m = random_strict_wreath(rng_for(4), QQ, Reading.STANDARD)
    assert check_twocell(m.mult_cell).ok
    assert check_twocell(m.unit_cell).ok
    mu = m.mult_cell
    assert check_twocell(vcompose_twocells(mu, hcompose_twocells(identity_twocell(m.onecell),
                                                                 m.unit_cell))).ok
