"""Cells of the weak Eilenberg-Moore 2-category over finite-dimensional spaces.

The base 2-category has a single object; its 1-cells are spaces and its
horizontal composition is the tensor product, read according to a
``Reading``.  A monad is an algebra ``t``.

* A 1-cell ``t -> t'`` is a pair ``(V, psi)`` with ``psi: t'V => Vt``
  compatible with both multiplications; units need not be respected.
* A 2-cell ``(V, psi) => (W, phi)`` is ``rho: V => Wt`` compatible with the
  multiplications and fixed by the normalizing idempotent built from the
  unit of ``t'``.

Throughout, ``J(...)`` is juxtaposition (see ``whisker``) and ``@`` is
vertical composition, right to left.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exact_linalg import FieldSpec, LinMap, identity, nullspace
from .report import Report, compare, flag
from .structures import Algebra, ShapeMismatch, opposite
from .whisker import Reading, as_map, juxtaposer, mirror_map

__all__ = [
    "EMWOneCell", "EMWTwoCell", "MonadInEMW", "BoundaryMismatch",
    "identity_onecell", "identity_twocell", "check_onecell", "check_twocell",
    "hcompose_onecells", "hcompose_twocells", "vcompose_twocells",
    "induced_iota", "induced_pi", "mnd_membership", "membership_characterizations",
    "check_monad_in_emw", "twocell_space", "membership_space",
    "induced_composition_checks", "mirror_onecell", "mirror_twocell", "mirror_monad",
    "LawConfiguration", "law_suite",
]


class BoundaryMismatch(ValueError):
    pass


@dataclass(frozen=True)
class EMWOneCell:
    """``(V, psi): source -> target`` with ``psi: target V => V source``."""

    source: Algebra
    target: Algebra
    V_dim: int
    psi: LinMap
    reading: Reading = Reading.STANDARD

    def __post_init__(self):
        t, tp, v = self.source.dim, self.target.dim, self.V_dim
        if self.source.field != self.target.field or self.psi.field != self.source.field:
            raise ShapeMismatch("cells over different fields")
        if self.psi.shape != (v * t, tp * v):
            raise ShapeMismatch(f"psi has shape {self.psi.shape}, expected {(v * t, tp * v)}")

    @property
    def field(self) -> FieldSpec:
        return self.source.field


@dataclass(frozen=True)
class EMWTwoCell:
    """``rho: V => W t`` between 1-cells with the same ends."""

    src: EMWOneCell
    dst: EMWOneCell
    rho: LinMap

    def __post_init__(self):
        a, b = self.src, self.dst
        if a.source != b.source or a.target != b.target or a.reading != b.reading:
            raise BoundaryMismatch("2-cell between 1-cells with different ends")
        if self.rho.shape != (b.V_dim * a.source.dim, a.V_dim):
            raise ShapeMismatch(
                f"rho has shape {self.rho.shape}, expected {(b.V_dim * a.source.dim, a.V_dim)}")

    @property
    def field(self) -> FieldSpec:
        return self.src.field


@dataclass(frozen=True)
class MonadInEMW:
    """A monad ``((s, psi), nu, theta)`` on ``base`` in the weak 2-category.

    ``psi: ts => st``, ``nu: ss => st``, ``theta: k => st``.
    """

    base: Algebra
    s_dim: int
    psi: LinMap
    nu: LinMap
    theta: LinMap
    reading: Reading = Reading.STANDARD

    def __post_init__(self):
        s, t = self.s_dim, self.base.dim
        for name, m, shape in (("psi", self.psi, (s * t, t * s)),
                               ("nu", self.nu, (s * t, s * s)),
                               ("theta", self.theta, (s * t, 1))):
            if m.field != self.base.field:
                raise ShapeMismatch(f"{name} over a different field")
            if m.shape != shape:
                raise ShapeMismatch(f"{name} has shape {m.shape}, expected {shape}")

    @property
    def field(self) -> FieldSpec:
        return self.base.field

    @property
    def onecell(self) -> EMWOneCell:
        return EMWOneCell(self.base, self.base, self.s_dim, self.psi, self.reading)

    @property
    def mult_cell(self) -> EMWTwoCell:
        c = self.onecell
        return EMWTwoCell(hcompose_onecells(c, c), c, self.nu)

    @property
    def unit_cell(self) -> EMWTwoCell:
        return EMWTwoCell(identity_onecell(self.base, self.reading), self.onecell, self.theta)


# identities and checks

def identity_onecell(t: Algebra, reading: Reading = Reading.STANDARD) -> EMWOneCell:
    return EMWOneCell(t, t, 1, identity(t.field, t.dim), reading)


def identity_twocell(c: EMWOneCell) -> EMWTwoCell:
    J = juxtaposer(c.reading)
    rho = as_map(c.psi @ J(c.target.unit, c.V_dim))
    return EMWTwoCell(c, c, rho)


def check_onecell(c: EMWOneCell) -> Report:
    J = juxtaposer(c.reading)
    V, t, tp = c.V_dim, c.source.dim, c.target.dim
    mu, mup = c.source.mult, c.target.mult
    lhs = J(V, mu) @ J(c.psi, t) @ J(tp, c.psi)
    rhs = c.psi @ J(mup, V)
    rep = Report("1-cell")
    rep.add(compare("mult_compat", lhs, rhs))
    return rep


def _twocell_sides(src: EMWOneCell, dst: EMWOneCell, rho: LinMap):
    J = juxtaposer(src.reading)
    psi, phi = src.psi, dst.psi
    W, t, tp = dst.V_dim, src.source.dim, src.target.dim
    mu, etap = src.source.mult, src.target.unit
    compat = (J(W, mu) @ J(rho, t) @ psi, J(W, mu) @ J(phi, t) @ J(tp, rho))
    normal = (rho, J(W, mu) @ J(phi, t) @ J(etap, W, t) @ rho)
    return compat, normal


def check_twocell(r: EMWTwoCell) -> Report:
    compat, normal = _twocell_sides(r.src, r.dst, r.rho)
    rep = Report("2-cell")
    rep.add(compare("mult_compat", *compat))
    rep.add(compare("normalized", *normal))
    return rep


# composition

def hcompose_onecells(a: EMWOneCell, b: EMWOneCell) -> EMWOneCell:
    """``a: t -> t'`` then ``b: t' -> t''``, giving ``(V'V, V'psi * psi'V)``."""
    if a.target != b.source or a.reading != b.reading:
        raise BoundaryMismatch("1-cells are not composable")
    J = juxtaposer(a.reading)
    psi = J(b.V_dim, a.psi) @ J(b.psi, a.V_dim)
    return EMWOneCell(a.source, b.target, b.V_dim * a.V_dim, as_map(psi), a.reading)


def hcompose_twocells(r: EMWTwoCell, rp: EMWTwoCell) -> EMWTwoCell:
    """``rp o r`` for ``r`` over ``t -> t'`` and ``rp`` over ``t' -> t''``."""
    if r.src.target != rp.src.source or r.src.reading != rp.src.reading:
        raise BoundaryMismatch("2-cells are not horizontally composable")
    J = juxtaposer(r.src.reading)
    V, W, Wp = r.src.V_dim, r.dst.V_dim, rp.dst.V_dim
    t, mu = r.src.source.dim, r.src.source.mult
    rho = J(Wp, W, mu) @ J(Wp, r.rho, t) @ J(Wp, r.src.psi) @ J(rp.rho, V)
    return EMWTwoCell(hcompose_onecells(r.src, rp.src), hcompose_onecells(r.dst, rp.dst),
                      as_map(rho))


def vcompose_twocells(tau: EMWTwoCell, r: EMWTwoCell) -> EMWTwoCell:
    """``tau . r``: first ``r``, then ``tau``."""
    if r.dst != tau.src:
        raise BoundaryMismatch("2-cells are not vertically composable")
    J = juxtaposer(r.src.reading)
    U, t, mu = tau.dst.V_dim, r.src.source.dim, r.src.source.mult
    rho = J(U, mu) @ J(tau.rho, t) @ r.rho
    return EMWTwoCell(r.src, tau.dst, as_map(rho))


# plain 2-cells between the underlying spaces

def _check_omega(omega: LinMap, a: EMWOneCell, b: EMWOneCell):
    if a.source != b.source or a.target != b.target or a.reading != b.reading:
        raise BoundaryMismatch("1-cells with different ends")
    if omega.shape != (b.V_dim, a.V_dim):
        raise ShapeMismatch(f"omega has shape {omega.shape}, expected {(b.V_dim, a.V_dim)}")


def induced_iota(omega: LinMap, a: EMWOneCell, b: EMWOneCell) -> LinMap:
    """``omega t * psi * eta' V``."""
    _check_omega(omega, a, b)
    J = juxtaposer(a.reading)
    return as_map(J(omega, a.source.dim) @ a.psi @ J(a.target.unit, a.V_dim))


def induced_pi(omega: LinMap, a: EMWOneCell, b: EMWOneCell) -> LinMap:
    """``phi * eta' W * omega``."""
    _check_omega(omega, a, b)
    J = juxtaposer(a.reading)
    return as_map(b.psi @ J(a.target.unit, b.V_dim) @ omega)


def _omega_terms(omega: LinMap, a: EMWOneCell, b: EMWOneCell) -> dict:
    J = juxtaposer(a.reading)
    psi, phi = a.psi, b.psi
    V, W, t, tp = a.V_dim, b.V_dim, a.source.dim, a.target.dim
    mu, etap = a.source.mult, a.target.unit
    return {
        "omega_psi": J(omega, t) @ psi,
        "phi_omega": phi @ J(tp, omega),
        # W mu * phi t * t' omega t * t' psi * t' eta' V
        "iota_rhs": J(W, mu) @ J(phi, t) @ J(tp, omega, t) @ J(tp, psi) @ J(tp, etap, V),
        # W mu * phi t * eta' W t * omega t * psi
        "pi_rhs": J(W, mu) @ J(phi, t) @ J(etap, W, t) @ J(omega, t) @ psi,
        "normalizer": lambda x: J(W, mu) @ J(phi, t) @ J(etap, W, t) @ x,
    }


def mnd_membership(omega: LinMap, side: str, a: EMWOneCell, b: EMWOneCell):
    """Whether ``omega`` lies in the iota- or pi-subcategory, with its induced 2-cell."""
    _check_omega(omega, a, b)
    terms = _omega_terms(omega, a, b)
    if side == "iota":
        ok = compare("iota", terms["omega_psi"], terms["iota_rhs"]).passed
        induced = induced_iota(omega, a, b)
    elif side == "pi":
        ok = compare("pi", terms["phi_omega"], terms["pi_rhs"]).passed
        induced = induced_pi(omega, a, b)
    else:
        raise ValueError(f"side must be 'iota' or 'pi', not {side!r}")
    return ok, (EMWTwoCell(a, b, induced) if ok else None)


def membership_characterizations(omega: LinMap, a: EMWOneCell, b: EMWOneCell) -> Report:
    """The three equivalent conditions on each side, and the two-sided ones.

    Tags: ``iota.cell``, ``iota.identity``, ``iota.normalized`` and the same
    for ``pi``; ``both.strict`` and ``both.cells_equal``.
    """
    _check_omega(omega, a, b)
    T = _omega_terms(omega, a, b)
    gi, gp = induced_iota(omega, a, b), induced_pi(omega, a, b)
    rep = Report("membership")
    rep.add(flag("iota.cell", check_twocell(EMWTwoCell(a, b, gi)).ok))
    rep.add(compare("iota.identity", T["omega_psi"], T["iota_rhs"]))
    shared = compare("shared", T["pi_rhs"], T["iota_rhs"]).passed
    rep.add(flag("iota.normalized", compare("x", T["normalizer"](gi), gi).passed and shared))
    rep.add(flag("pi.cell", check_twocell(EMWTwoCell(a, b, gp)).ok))
    rep.add(compare("pi.identity", T["phi_omega"], T["pi_rhs"]))
    rep.add(flag("pi.normalized",
                 compare("x", T["normalizer"](gi), gp).passed and shared))
    rep.add(compare("both.strict", T["phi_omega"], T["omega_psi"]))
    both = (check_twocell(EMWTwoCell(a, b, gi)).ok and check_twocell(EMWTwoCell(a, b, gp)).ok
            and gi == gp)
    rep.add(flag("both.cells_equal", both))
    return rep


def induced_composition_checks(omega: LinMap, omega_p: LinMap, kappa: LinMap,
                               cells: dict) -> Report:
    """Compatibility of the induced 2-cells with both compositions.

    ``cells`` holds ``V, W, U: t -> t'`` and ``Vp, Wp: t' -> t''``, with
    ``omega: V -> W``, ``kappa: W -> U`` and ``omega_p: Vp -> Wp``.  Only
    the identities whose memberships hold are reported.
    """
    V, W, U, Vp, Wp = (cells[k] for k in ("V", "W", "U", "Vp", "Wp"))
    J = juxtaposer(V.reading)
    VV, WW = hcompose_onecells(V, Vp), hcompose_onecells(W, Wp)
    both = J(omega_p, omega)
    rep = Report("induced compositions")
    for side, induce in (("iota", induced_iota), ("pi", induced_pi)):
        m1, c1 = mnd_membership(omega, side, V, W)
        m2, c2 = mnd_membership(omega_p, side, Vp, Wp)
        if m1 and m2:
            h = hcompose_twocells(c1, c2).rho
            rep.add(compare(f"{side}.horizontal", h, induce(as_map(both), VV, WW)))
            rep.add(flag(f"{side}.horizontal_member",
                         mnd_membership(as_map(both), side, VV, WW)[0]))
        m3, c3 = mnd_membership(kappa, side, W, U)
        if m1 and m3:
            v = vcompose_twocells(c3, c1).rho
            rep.add(compare(f"{side}.vertical", v, induce(kappa @ omega, V, U)))
            rep.add(flag(f"{side}.vertical_member",
                         mnd_membership(kappa @ omega, side, V, U)[0]))
    return rep


# the 2-category laws on sampled cells

@dataclass(frozen=True)
class LawConfiguration:
    """Cells for one run of the law suite.

    ``rho, tau, sigma`` are vertically composable over ``t0 -> t1``,
    ``rho1, tau1`` over ``t1 -> t2`` and ``rho2`` over ``t2 -> t3``.
    """

    rho: EMWTwoCell
    tau: EMWTwoCell
    sigma: EMWTwoCell
    rho1: EMWTwoCell
    tau1: EMWTwoCell
    rho2: EMWTwoCell


def _same_cell(tag: str, x: EMWTwoCell, y: EMWTwoCell):
    ends = x.src == y.src and x.dst == y.dst
    v = compare(tag, x.rho, y.rho)
    return v if ends or not v.passed else flag(tag, False, "boundaries differ")


def law_suite(cfg: LawConfiguration) -> Report:
    """Associativity, unit and interchange laws, and validity of every composite."""
    rho, tau, sigma, rho1, tau1, rho2 = (cfg.rho, cfg.tau, cfg.sigma, cfg.rho1,
                                         cfg.tau1, cfg.rho2)
    V, V1, V2 = rho.src, rho1.src, rho2.src
    t0, t1 = V.source, V.target
    rep = Report("EM^w laws")
    rep.add(_same_cell("vertical_assoc", vcompose_twocells(sigma, vcompose_twocells(tau, rho)),
                       vcompose_twocells(vcompose_twocells(sigma, tau), rho)))
    rep.add(_same_cell("vertical_left_unit",
                       vcompose_twocells(identity_twocell(rho.dst), rho), rho))
    rep.add(_same_cell("vertical_right_unit",
                       vcompose_twocells(rho, identity_twocell(V)), rho))
    left = hcompose_twocells(identity_twocell(identity_onecell(t0, V.reading)), rho)
    right = hcompose_twocells(rho, identity_twocell(identity_onecell(t1, V.reading)))
    rep.add(flag("onecell_left_unit", hcompose_onecells(identity_onecell(t0, V.reading), V) == V))
    rep.add(flag("onecell_right_unit", hcompose_onecells(V, identity_onecell(t1, V.reading)) == V))
    rep.add(_same_cell("horizontal_left_unit", left, rho))
    rep.add(_same_cell("horizontal_right_unit", right, rho))
    rep.add(flag("onecell_assoc", hcompose_onecells(hcompose_onecells(V, V1), V2)
                 == hcompose_onecells(V, hcompose_onecells(V1, V2))))
    h_left = hcompose_twocells(hcompose_twocells(rho, rho1), rho2)
    h_right = hcompose_twocells(rho, hcompose_twocells(rho1, rho2))
    rep.add(_same_cell("horizontal_assoc", h_left, h_right))
    inter_l = hcompose_twocells(vcompose_twocells(tau, rho), vcompose_twocells(tau1, rho1))
    inter_r = vcompose_twocells(hcompose_twocells(tau, tau1), hcompose_twocells(rho, rho1))
    rep.add(_same_cell("interchange", inter_l, inter_r))
    rep.add(_same_cell("identity_composite",
                       hcompose_twocells(identity_twocell(V), identity_twocell(V1)),
                       identity_twocell(hcompose_onecells(V, V1))))
    cells = [rho, tau, sigma, rho1, tau1, rho2, h_left, inter_l, inter_r,
             vcompose_twocells(tau, rho), hcompose_twocells(rho, rho1)]
    valid = all(check_twocell(c).ok for c in cells)
    valid = valid and all(check_onecell(c.src).ok for c in cells)
    rep.add(flag("composites_valid", valid))
    return rep


# the other reading

def mirror_onecell(c: EMWOneCell) -> EMWOneCell:
    """The same cell over the opposite algebras, read the other way round."""
    V, t, tp = c.V_dim, c.source.dim, c.target.dim
    if c.reading is Reading.STANDARD:
        psi = mirror_map(c.psi, [tp, V], [V, t])
    else:
        psi = mirror_map(c.psi, [V, tp], [t, V])
    return EMWOneCell(opposite(c.source), opposite(c.target), V, psi, c.reading.other())


def mirror_twocell(r: EMWTwoCell) -> EMWTwoCell:
    W, t = r.dst.V_dim, r.src.source.dim
    dims = [W, t] if r.src.reading is Reading.STANDARD else [t, W]
    rho = mirror_map(r.rho, [r.src.V_dim], dims)
    return EMWTwoCell(mirror_onecell(r.src), mirror_onecell(r.dst), rho)


def mirror_monad(m: MonadInEMW) -> MonadInEMW:
    s, t = m.s_dim, m.base.dim

    def order(*dims):
        return list(dims) if m.reading is Reading.STANDARD else list(dims)[::-1]

    psi = mirror_map(m.psi, order(t, s), order(s, t))
    nu = mirror_map(m.nu, order(s, s), order(s, t))
    theta = mirror_map(m.theta, [1], order(s, t))
    return MonadInEMW(opposite(m.base), s, psi, nu, theta, m.reading.other())


# monads in the weak 2-category

def check_monad_in_emw(m: MonadInEMW) -> Report:
    J = juxtaposer(m.reading)
    s, t = m.s_dim, m.base.dim
    mu, eta = m.base.mult, m.base.unit
    psi, nu, th = m.psi, m.nu, m.theta
    rep = Report("monad in EM^w")
    rep.add(compare("psi_mult", psi @ J(mu, s), J(s, mu) @ J(psi, t) @ J(t, psi)))
    rep.add(compare("nu_psi", J(s, mu) @ J(psi, t) @ J(t, nu),
                    J(s, mu) @ J(nu, t) @ J(s, psi) @ J(psi, s)))
    rep.add(compare("nu_normalized", J(s, mu) @ J(psi, t) @ J(eta, s, t) @ nu, nu))
    rep.add(compare("theta_psi", J(s, mu) @ J(psi, t) @ J(t, th), J(s, mu) @ J(th, t)))
    rep.add(compare("nu_assoc", J(s, mu) @ J(nu, t) @ J(s, nu),
                    J(s, mu) @ J(nu, t) @ J(s, psi) @ J(nu, s)))
    rep.add(compare("left_unit", J(s, mu) @ J(nu, t) @ J(s, psi) @ J(th, s), psi @ J(eta, s)))
    rep.add(compare("right_unit", J(s, mu) @ J(nu, t) @ J(s, th), psi @ J(eta, s)))
    return rep


# solution spaces of the linear conditions

def _solve_linear(field: FieldSpec, rows: int, cols: int, residual) -> list[LinMap]:
    """Basis of ``{x : residual(x) == 0}`` for ``x`` ranging over ``rows x cols`` maps."""
    columns = []
    for k in range(rows * cols):
        unit = field.zeros((rows, cols))
        unit[divmod(k, cols)] = field.one
        parts = residual(LinMap(field, unit))
        columns.append(np.concatenate([as_map(p).entries.reshape(-1) for p in parts]))
    if not columns:
        return []
    basis = nullspace(LinMap(field, np.stack(columns, axis=1)))
    return [LinMap(field, basis.entries[:, j].reshape(rows, cols).copy())
            for j in range(basis.cols)]


def twocell_space(a: EMWOneCell, b: EMWOneCell) -> list[LinMap]:
    """A basis of all 2-cells ``(V, psi) => (W, phi)``; the conditions are linear."""
    if a.source != b.source or a.target != b.target:
        raise BoundaryMismatch("1-cells with different ends")

    def residual(rho):
        compat, normal = _twocell_sides(a, b, rho)
        return [as_map(compat[0]) - as_map(compat[1]), as_map(normal[0]) - as_map(normal[1])]
    return _solve_linear(a.field, b.V_dim * a.source.dim, a.V_dim, residual)


def membership_space(a: EMWOneCell, b: EMWOneCell, side: str) -> list[LinMap]:
    """A basis of the ``omega: V -> W`` satisfying the identity for ``side``.

    ``side`` is ``iota``, ``pi`` or ``strict`` (both at once).
    """
    def residual(omega):
        T = _omega_terms(omega, a, b)
        if side == "iota":
            return [as_map(T["omega_psi"]) - as_map(T["iota_rhs"])]
        if side == "pi":
            return [as_map(T["phi_omega"]) - as_map(T["pi_rhs"])]
        if side == "strict":
            return [as_map(T["phi_omega"]) - as_map(T["omega_psi"])]
        raise ValueError(f"unknown side {side!r}")
    return _solve_linear(a.field, b.V_dim, a.V_dim, residual)
