"""Weak liftings in the module instance.

A monad is ``- (x) A`` on right modules and a 1-cell ``(V, psi)`` is
``- (x) V`` with ``psi: V (x) A' -> A (x) V``, i.e. the module reading of
``whisker``.  Natural transformations between such functors are determined
by their value on the free module ``A``, so every lifted object below is a
finite-dimensional space with explicit actions.

The lifting of ``(V, psi)`` is the retract of ``A (x) V`` cut out by the
idempotent ``V mu * psi t * eta' V t``; it is an ``(A, A')``-bimodule.
"""

from __future__ import annotations

from dataclasses import dataclass

from .emw_core import (EMWOneCell, EMWTwoCell, MonadInEMW, check_twocell,
                       hcompose_onecells, hcompose_twocells, identity_onecell,
                       identity_twocell, vcompose_twocells)
from .exact_linalg import (LinMap, NotIdempotent, Splitting, block_columns, cokernel,
                           identity, kron, rank, split_idempotent)
from .report import Report, compare, flag
from .structures import (Algebra, Coalgebra, PreMonad, ShapeMismatch, check_algebra,
                         check_coalgebra, premonad_retract, trivial_algebra)
from .whisker import Reading, as_map, juxtaposer

__all__ = [
    "EntwiningDatum", "Bimodule", "Coring", "TensorOverA", "LiftedModuleDatum",
    "EntwiningKindMismatch", "WellDefinednessFailed", "NotModule", "AxiomFailed",
    "InvalidStructure", "KINDS",
    "lifting_idempotent", "lifting_splitting", "lift_twocell", "lifted_bimodule",
    "weak_lifting", "check_bimodule", "regular_bimodule", "right_module",
    "tensor_over_A", "comonad_cells", "check_emw_comonad", "build_lifted_coring",
    "check_coring", "composite_comparison", "recover_psi",
    "gamma_to_rholambda", "rholambda_to_gamma", "check_gamma", "check_rholambda",
]

MODULE = Reading.MODULE
KINDS = ("iota", "pi", "lax")


class EntwiningKindMismatch(ValueError):
    pass


class WellDefinednessFailed(ValueError):
    pass


class NotModule(ValueError):
    pass


class InvalidStructure(ValueError):
    pass


class AxiomFailed(ValueError):
    def __init__(self, tag: str, detail: str = ""):
        super().__init__(f"{tag}: {detail}" if detail else tag)
        self.tag = tag


@dataclass(frozen=True)
class EntwiningDatum:
    """An algebra ``A``, a coalgebra ``C`` and ``psi`` for the word ``t c => c t``.

    In the module reading ``psi: C (x) A -> A (x) C``; in the standard reading
    ``psi: A (x) C -> C (x) A``.
    """

    A: Algebra
    C: Coalgebra
    psi: LinMap
    reading: Reading = MODULE

    def __post_init__(self):
        if self.A.field != self.C.field or self.psi.field != self.A.field:
            raise ShapeMismatch("entwining data over different fields")
        n = self.A.dim * self.C.dim
        if self.psi.shape != (n, n):
            raise ShapeMismatch(f"psi has shape {self.psi.shape}, expected {(n, n)}")

    @property
    def field(self):
        return self.A.field

    @property
    def handedness(self) -> str:
        return self.reading.handedness

    @property
    def onecell(self) -> EMWOneCell:
        return EMWOneCell(self.A, self.A, self.C.dim, self.psi, self.reading)

    def validate(self) -> None:
        """Raise ``InvalidStructure`` unless ``A`` and ``C`` satisfy their axioms."""
        for rep in (check_algebra(self.A), check_coalgebra(self.C)):
            if not rep.ok:
                raise InvalidStructure(rep.render())


@dataclass(frozen=True)
class Bimodule:
    """A space with a left ``left``-action and a right ``right``-action."""

    left: Algebra
    right: Algebra
    dim: int
    left_act: LinMap
    right_act: LinMap

    def __post_init__(self):
        if self.left_act.shape != (self.dim, self.left.dim * self.dim):
            raise ShapeMismatch(f"left action has shape {self.left_act.shape}")
        if self.right_act.shape != (self.dim, self.dim * self.right.dim):
            raise ShapeMismatch(f"right action has shape {self.right_act.shape}")

    @property
    def field(self):
        return self.left.field


@dataclass(frozen=True)
class TensorOverA:
    """``X (x)_A Y`` as a quotient of ``X (x) Y``."""

    module: Bimodule
    q: LinMap
    section: LinMap
    relations: LinMap


@dataclass(frozen=True)
class Coring:
    base: Algebra
    carrier: Bimodule
    coproduct: LinMap
    counit: LinMap


@dataclass(frozen=True)
class LiftedModuleDatum:
    """A right ``t``-module ``(W, rho)`` with ``lam: s W => W``, in the word reading."""

    W_dim: int
    rho: LinMap
    lam: LinMap


# idempotents, splittings and lifted 2-cells

def _cell(x) -> EMWOneCell:
    return x.onecell if isinstance(x, EntwiningDatum) else x


def lifting_idempotent(x) -> LinMap:
    """``V mu * psi t * eta' V t`` on the word ``V t``."""
    c = _cell(x)
    J = juxtaposer(c.reading)
    V, t = c.V_dim, c.source.dim
    e = as_map(J(V, c.source.mult) @ J(c.psi, t) @ J(c.target.unit, V, t))
    if e @ e != e:
        raise NotIdempotent("psi is not multiplicative")
    return e


def lifting_splitting(x) -> Splitting:
    return split_idempotent(lifting_idempotent(x))


def lift_twocell(r: EMWTwoCell, s_V: Splitting | None = None,
                 s_W: Splitting | None = None) -> LinMap:
    """``pi_W . W mu . rho t . iota_V`` between the retracts."""
    s_V = s_V or lifting_splitting(r.src)
    s_W = s_W or lifting_splitting(r.dst)
    J = juxtaposer(r.src.reading)
    W, t = r.dst.V_dim, r.src.source.dim
    return as_map(s_W.pi @ J(W, r.src.source.mult) @ J(r.rho, t) @ s_V.iota)


def lifted_bimodule(c: EMWOneCell, s: Splitting | None = None) -> tuple[Bimodule, Splitting]:
    """The retract of ``A (x) V`` with its ``(A, A')`` actions; module reading only."""
    _require_module(c.reading)
    s = s or lifting_splitting(c)
    J = juxtaposer(c.reading)
    V, t, tp = c.V_dim, c.source.dim, c.target.dim
    mu = c.source.mult
    left = as_map(s.pi @ J(V, mu) @ J(s.iota, t))
    right = as_map(s.pi @ J(V, mu) @ J(c.psi, t) @ J(tp, s.iota))
    return Bimodule(c.source, c.target, s.retract_dim, left, right), s


def weak_lifting(omega: LinMap, a: EMWOneCell, b: EMWOneCell, side: str):
    """The weak iota- or pi-lifting of ``omega: V -> W``, or ``None``.

    The candidate is ``pi_W . omega t . iota_V``; it must be a bimodule map
    of the lifted bimodules and intertwine the iota (resp. pi) maps.
    """
    _require_module(a.reading)
    J = juxtaposer(a.reading)
    ma, sa = lifted_bimodule(a)
    mb, sb = lifted_bimodule(b)
    w = as_map(J(omega, a.source.dim))
    cand = sb.pi @ w @ sa.iota
    if side == "iota":
        inter = sb.iota @ cand == w @ sa.iota
    elif side == "pi":
        inter = cand @ sa.pi == sb.pi @ w
    else:
        raise ValueError(f"side must be 'iota' or 'pi', not {side!r}")
    if not inter or not _is_bimodule_map(cand, ma, mb):
        return None
    return cand


def _is_bimodule_map(f: LinMap, X: Bimodule, Y: Bimodule) -> bool:
    il, ir = identity(f.field, X.left.dim), identity(f.field, X.right.dim)
    return (f @ X.left_act == Y.left_act @ kron(il, f)
            and f @ X.right_act == Y.right_act @ kron(f, ir))


def _require_module(reading: Reading):
    if reading is not MODULE:
        raise ValueError("lifted modules are built in the module reading; mirror the data first")


# bimodules and tensor products over an algebra

def check_bimodule(X: Bimodule) -> Report:
    f, n = X.field, X.dim
    L, R = X.left, X.right
    i, il, ir = identity(f, n), identity(f, L.dim), identity(f, R.dim)
    la, ra = X.left_act, X.right_act
    rep = Report("bimodule")
    rep.add(compare("left_assoc", la @ kron(L.mult, i), la @ kron(il, la)))
    rep.add(compare("left_unit", la @ kron(L.unit, i), i))
    rep.add(compare("right_assoc", ra @ kron(i, R.mult), ra @ kron(ra, ir)))
    rep.add(compare("right_unit", ra @ kron(i, R.unit), i))
    rep.add(compare("actions_commute", ra @ kron(la, ir), la @ kron(il, ra)))
    return rep


def regular_bimodule(A: Algebra) -> Bimodule:
    return Bimodule(A, A, A.dim, A.mult, A.mult)


def right_module(A: Algebra, dim: int, act: LinMap) -> Bimodule:
    """A right ``A``-module as a bimodule over the ground field on the left."""
    k = trivial_algebra(A.field)
    return Bimodule(k, A, dim, identity(A.field, dim), act)


def tensor_over_A(X: Bimodule, Y: Bimodule) -> TensorOverA:
    """``X (x)_A Y`` as the cokernel of ``rho_X (x) 1 - 1 (x) lambda_Y``."""
    if X.right != Y.left:
        raise ShapeMismatch("middle algebras differ")
    f = X.field
    ix, iy = identity(f, X.dim), identity(f, Y.dim)
    rel = kron(X.right_act, iy) - kron(ix, Y.left_act)
    quo = cokernel(rel)
    q, s = quo.proj, quo.section
    il, ir = identity(f, X.left.dim), identity(f, Y.right.dim)
    left_lift = kron(X.left_act, iy)
    right_lift = kron(ix, Y.right_act)
    if not (q @ left_lift @ kron(il, rel)).is_zero() or not (q @ right_lift @ kron(rel, ir)).is_zero():
        raise WellDefinednessFailed("outer actions do not descend to the tensor product")
    left = q @ left_lift @ kron(il, s)
    right = q @ right_lift @ kron(s, ir)
    mod = Bimodule(X.left, Y.right, quo.dim, left, right)
    return TensorOverA(mod, q, s, rel)


# comonads in the weak 2-category from an entwining

def comonad_cells(d: EntwiningDatum, kind: str) -> tuple[EMWTwoCell, EMWTwoCell]:
    """Comultiplication and counit 2-cells on ``(C, psi)`` for ``kind``.

    ``iota``: ``delta t * psi * eta c`` and ``eps t * psi * eta c``;
    ``pi``: ``c psi * psi c * eta c c * delta`` and ``eta * eps``;
    ``lax``: the ``pi`` comultiplication with the ``iota`` counit.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    J = juxtaposer(d.reading)
    c, t = d.C.dim, d.A.dim
    psi, eta, delta, eps = d.psi, d.A.unit, d.C.comult, d.C.counit
    cell = d.onecell
    if kind == "iota":
        dl = J(delta, t) @ psi @ J(eta, c)
    else:
        dl = J(c, psi) @ J(psi, c) @ J(eta, c, c) @ delta
    if kind == "pi":
        ep = eta @ eps
    else:
        ep = J(eps, t) @ psi @ J(eta, c)
    comult = EMWTwoCell(cell, hcompose_onecells(cell, cell), as_map(dl))
    counit = EMWTwoCell(cell, identity_onecell(d.A, d.reading), as_map(ep))
    return comult, counit


def check_emw_comonad(comult: EMWTwoCell, counit: EMWTwoCell) -> Report:
    """2-cell conditions, coassociativity and counit laws via the compositions."""
    c = comult.src
    rep = Report("comonad in EM^w")
    rep.extend(check_twocell(comult), "comult.")
    rep.extend(check_twocell(counit), "counit.")
    one = identity_twocell(c)
    lhs = vcompose_twocells(hcompose_twocells(comult, one), comult)
    rhs = vcompose_twocells(hcompose_twocells(one, comult), comult)
    rep.add(compare("coassociativity", lhs.rho, rhs.rho))
    left = vcompose_twocells(hcompose_twocells(one, counit), comult)
    right = vcompose_twocells(hcompose_twocells(counit, one), comult)
    rep.add(compare("left_counit", left.rho, one.rho))
    rep.add(compare("right_counit", right.rho, one.rho))
    return rep


# lifted corings

def _double_representative(A: Algebra, s: Splitting, tq: TensorOverA, c: int) -> LinMap:
    """``a (x) c (x) c' -> q(pi(a (x) c) (x) pi(1 (x) c'))``."""
    f = A.field
    second = s.pi @ kron(A.unit, identity(f, c))
    return tq.q @ kron(s.pi, second)


def composite_comparison(d: EntwiningDatum) -> LinMap:
    """Comparison map from the split composite to ``C (x)_A C``, both lifted.

    It is an isomorphism whenever the data is an entwining 1-cell.
    """
    cell = d.onecell
    carrier, s = lifted_bimodule(cell)
    tq = tensor_over_A(carrier, carrier)
    s2 = lifting_splitting(hcompose_onecells(cell, cell))
    return _double_representative(d.A, s, tq, d.C.dim) @ s2.iota


def build_lifted_coring(d: EntwiningDatum, kind: str) -> tuple[Coring, Report]:
    """The ``A``-coring lifting ``C`` for the given kind of entwining."""
    from .entwine_bialg import kind_conditions

    _require_module(d.reading)
    d.validate()
    pre = kind_conditions(d, kind)
    if not pre.ok:
        raise EntwiningKindMismatch(pre.render())
    f, A, c = d.field, d.A, d.C.dim
    cell = d.onecell
    comult, counit = comonad_cells(d, kind)

    carrier, s = lifted_bimodule(cell)
    tq = tensor_over_A(carrier, carrier)
    Q = _double_representative(A, s, tq, c)
    e2 = lifting_idempotent(hcompose_onecells(cell, cell))
    if Q @ e2 != Q:
        raise WellDefinednessFailed("coproduct representative depends on the chosen lift")
    J = juxtaposer(d.reading)
    coproduct = as_map(Q @ J(c, c, A.mult) @ J(comult.rho, A.dim) @ s.iota)
    counit_bar = lift_twocell(counit, s, split_idempotent(identity(f, A.dim)))
    coring = Coring(A, carrier, coproduct, counit_bar)

    rep = Report(f"lifted coring ({kind})")
    rep.extend(pre, "entwining.")
    rep.extend(check_emw_comonad(comult, counit), "emw.")
    phi = Q @ lifting_splitting(hcompose_onecells(cell, cell)).iota
    rep.add(flag("composite_comparison_iso",
                 phi.rows == phi.cols and rank(phi) == phi.rows))
    rep.extend(check_coring(coring), "coring.")
    return coring, rep


def check_coring(K: Coring) -> Report:
    """Bimodule laws, bimodule maps, coassociativity over ``A`` and counit laws."""
    X, A = K.carrier, K.base
    f, n, a = X.field, X.dim, A.dim
    i, ia = identity(f, n), identity(f, a)
    rep = Report("coring")
    rep.extend(check_bimodule(X), "carrier.")
    tq = tensor_over_A(X, X)
    Q2, s2 = tq.module, tq.section
    D, e = K.coproduct, K.counit
    if D.shape != (Q2.dim, n) or e.shape != (a, n):
        raise ShapeMismatch("coproduct or counit has the wrong shape")
    rep.add(compare("counit_left_linear", e @ X.left_act, A.mult @ kron(ia, e)))
    rep.add(compare("counit_right_linear", e @ X.right_act, A.mult @ kron(e, ia)))
    rep.add(compare("coproduct_left_linear", D @ X.left_act, Q2.left_act @ kron(ia, D)))
    rep.add(compare("coproduct_right_linear", D @ X.right_act, Q2.right_act @ kron(D, ia)))

    lam_e = X.left_act @ kron(e, i)
    rho_e = X.right_act @ kron(i, e)
    if not (lam_e @ tq.relations).is_zero() or not (rho_e @ tq.relations).is_zero():
        raise WellDefinednessFailed("counit maps do not descend to the tensor product")
    rep.add(compare("left_counit", lam_e @ s2 @ D, i))
    rep.add(compare("right_counit", rho_e @ s2 @ D, i))

    rel3 = block_columns([kron(X.right_act, i, i) - kron(i, X.left_act, i),
                          kron(i, X.right_act, i) - kron(i, i, X.left_act)])
    q3 = cokernel(rel3).proj
    dl = q3 @ kron(s2 @ D, i)
    dr = q3 @ kron(i, s2 @ D)
    if not (dl @ tq.relations).is_zero() or not (dr @ tq.relations).is_zero():
        raise WellDefinednessFailed("coproduct does not descend to the triple tensor product")
    rep.add(compare("coassociativity", dl @ s2 @ D, dr @ s2 @ D))
    return rep


def recover_psi(A: Algebra, s: Splitting, right_act: LinMap) -> LinMap:
    """``c (x) a -> iota(pi(1 (x) c) . a)`` from a lifting of ``- (x) C``."""
    f = A.field
    c = s.e.rows // A.dim
    return s.iota @ right_act @ kron(s.pi @ kron(A.unit, identity(f, c)), identity(f, A.dim))


# modules over the retract of a composite pre-monad

def _retract(m: MonadInEMW) -> tuple[PreMonad, Algebra, Splitting]:
    from .premonad_bridge import wreath_to_premonad

    P, _ = wreath_to_premonad(m)
    R, sp = premonad_retract(P)
    return P, R, sp


def check_gamma(m: MonadInEMW, W_dim: int, gamma: LinMap) -> Report:
    """``gamma`` is an associative unital action of the retract monad."""
    _, R, _ = _retract(m)
    J = juxtaposer(m.reading)
    r = R.dim
    if gamma.shape != (W_dim, r * W_dim):
        raise ShapeMismatch(f"gamma has shape {gamma.shape}")
    rep = Report("retract action")
    rep.add(compare("gamma_assoc", gamma @ J(r, gamma), gamma @ J(R.mult, W_dim)))
    rep.add(compare("gamma_unit", gamma @ J(R.unit, W_dim), identity(m.field, W_dim)))
    return rep


def check_rholambda(m: MonadInEMW, x: LiftedModuleDatum) -> Report:
    """Module laws for ``rho`` and the compatibility, associativity and unit of ``lam``."""
    J = juxtaposer(m.reading)
    s, t, W = m.s_dim, m.base.dim, x.W_dim
    mu, eta = m.base.mult, m.base.unit
    rho, lam = x.rho, x.lam
    if rho.shape != (W, t * W) or lam.shape != (W, s * W):
        raise ShapeMismatch("rho or lambda has the wrong shape")
    rep = Report("module with lambda")
    rep.add(compare("module_assoc", rho @ J(t, rho), rho @ J(mu, W)))
    rep.add(compare("module_unit", rho @ J(eta, W), identity(m.field, W)))
    rep.add(compare("psi_compat", rho @ J(t, lam), lam @ J(s, rho) @ J(m.psi, W)))
    rep.add(compare("lambda_assoc", lam @ J(s, lam), lam @ J(s, rho) @ J(m.nu, W)))
    rep.add(compare("lambda_unit", lam @ J(s, rho) @ J(m.theta, W), identity(m.field, W)))
    return rep


def gamma_to_rholambda(m: MonadInEMW, W_dim: int, gamma: LinMap) -> LiftedModuleDatum:
    """``rho = gamma * pi W * s mu W * theta t W`` and ``lam = gamma * pi W * s eta W``."""
    rep = check_gamma(m, W_dim, gamma)
    if not rep.ok:
        raise NotModule(rep.render())
    _, _, sp = _retract(m)
    J = juxtaposer(m.reading)
    s, t, W = m.s_dim, m.base.dim, W_dim
    rho = gamma @ J(sp.pi, W) @ J(s, m.base.mult, W) @ J(m.theta, t, W)
    lam = gamma @ J(sp.pi, W) @ J(s, m.base.unit, W)
    return LiftedModuleDatum(W, as_map(rho), as_map(lam))


def rholambda_to_gamma(m: MonadInEMW, x: LiftedModuleDatum) -> LinMap:
    """``gamma = lam * s rho * iota W``."""
    rep = check_rholambda(m, x)
    for tag in ("module_assoc", "module_unit"):
        if not rep.passed(tag):
            raise NotModule(rep.render())
    for v in rep.failures:
        raise AxiomFailed(v.tag, str(v.witness))
    _, _, sp = _retract(m)
    J = juxtaposer(m.reading)
    return as_map(x.lam @ J(m.s_dim, x.rho) @ J(sp.iota, x.W_dim))

