"""Monads in the weak 2-category on ``t`` versus pre-monads on ``s t``.

A monad ``((s, psi), nu, theta)`` gives the multiplication
``Theta = s mu * nu t * s s mu * s psi t`` on the word ``s t`` with unit
``theta``.  Conversely a pre-monad ``(Theta, theta)`` on ``s t`` that is
linear over ``t`` on the left gives back

    psi = Theta * s mu s t * theta t s t * t s eta,   nu = Theta * s eta s eta.
"""

from __future__ import annotations

from .emw_core import MonadInEMW, check_monad_in_emw
from .exact_linalg import LinMap, identity, kron, split_idempotent, swap
from .report import Report, compare
from .structures import (Algebra, PreMonad, ShapeMismatch, WeakBialgebra,
                         check_premonad, check_weak_bialgebra, premonad_normalize)
from .whisker import Reading, as_map, juxtaposer

__all__ = [
    "NotMonadInEMW", "LeftLinearityFailed", "NotPreMonadOnProduct",
    "wreath_to_premonad", "premonad_to_wreath", "linearity_checks",
    "roundtrip_monad_premonad", "roundtrip_premonad_monad",
    "target_map", "target_subalgebra", "weak_smash",
]


class NotMonadInEMW(ValueError):
    pass


class LeftLinearityFailed(ValueError):
    pass


class NotPreMonadOnProduct(ValueError):
    pass


def _theta_mult(m: MonadInEMW) -> LinMap:
    J = juxtaposer(m.reading)
    s, t, mu = m.s_dim, m.base.dim, m.base.mult
    return as_map(J(s, mu) @ J(m.nu, t) @ J(s, s, mu) @ J(s, m.psi, t))


def linearity_checks(P: PreMonad, s_dim: int, t: Algebra, reading: Reading) -> Report:
    """Left ``t``-linearity of the multiplication: ``Theta * s t s mu = s mu * Theta t``."""
    J = juxtaposer(reading)
    s, tt, mu = s_dim, t.dim, t.mult
    Th = P.mult
    rep = Report("linearity over t")
    rep.add(compare("left_linearity", Th @ J(s, tt, s, mu), J(s, mu) @ J(Th, tt)))
    return rep


def _unit_identities(m: MonadInEMW, P: PreMonad) -> Report:
    J = juxtaposer(m.reading)
    s, t, mu, eta = m.s_dim, m.base.dim, m.base.mult, m.base.unit
    Th, th = P.mult, P.unit
    mid = J(s, mu) @ J(m.psi, t) @ J(eta, s, t)
    rep = Report("unit identities")
    rep.add(compare("theta_left", Th @ J(th, s, t), mid))
    rep.add(compare("theta_right", Th @ J(s, t, th), mid))
    return rep


def wreath_to_premonad(m: MonadInEMW, strict: bool = True) -> tuple[PreMonad, Report]:
    """The pre-monad on ``s t`` with its checks.

    With ``strict`` the input must be a monad in the weak 2-category.
    """
    pre = check_monad_in_emw(m)
    if strict and not pre.ok:
        raise NotMonadInEMW(pre.render())
    P = PreMonad(m.field, m.s_dim * m.base.dim, _theta_mult(m), m.theta)
    rep = Report("wreath to pre-monad")
    rep.extend(pre, "input.")
    rep.extend(check_premonad(P), "premonad.")
    rep.extend(linearity_checks(P, m.s_dim, m.base, m.reading))
    rep.extend(_unit_identities(m, P))
    return P, rep


def premonad_to_wreath(P: PreMonad, s_dim: int, t: Algebra,
                       reading: Reading = Reading.STANDARD, strict: bool = True) -> MonadInEMW:
    """Split a pre-monad on ``s t`` into ``psi`` and ``nu``; ``theta`` is its unit."""
    if P.field != t.field:
        raise ShapeMismatch("pre-monad and t over different fields")
    if s_dim * t.dim != P.dim:
        raise ShapeMismatch(f"declared factors {s_dim} x {t.dim} do not multiply to {P.dim}")
    if strict:
        rep = check_premonad(P)
        if not rep.ok:
            raise NotPreMonadOnProduct(rep.render())
        lin = linearity_checks(P, s_dim, t, reading)
        if not lin.passed("left_linearity"):
            raise LeftLinearityFailed(str(lin["left_linearity"].witness))
    J = juxtaposer(reading)
    s, tt, mu, eta = s_dim, t.dim, t.mult, t.unit
    Th, th = P.mult, P.unit
    psi = Th @ J(s, mu, s, tt) @ J(th, tt, s, tt) @ J(tt, s, eta)
    nu = Th @ J(s, eta, s, eta)
    return MonadInEMW(t, s, as_map(psi), as_map(nu), th, reading)


def roundtrip_monad_premonad(m: MonadInEMW) -> Report:
    """Monad to pre-monad and back; ``psi``, ``nu`` and ``theta`` must return."""
    P, pre = wreath_to_premonad(m, strict=False)
    back = premonad_to_wreath(P, m.s_dim, m.base, m.reading, strict=False)
    rep = Report("round trip from the monad")
    rep.extend(pre)
    rep.add(compare("psi_returns", back.psi, m.psi))
    rep.add(compare("nu_returns", back.nu, m.nu))
    rep.add(compare("theta_returns", back.theta, m.theta))
    return rep


def roundtrip_premonad_monad(P: PreMonad, s_dim: int, t: Algebra,
                             reading: Reading = Reading.STANDARD) -> Report:
    """Pre-monad to monad and back; the multiplication must return."""
    rep = Report("round trip from the pre-monad")
    rep.extend(check_premonad(P), "premonad.")
    rep.extend(linearity_checks(P, s_dim, t, reading))
    m = premonad_to_wreath(P, s_dim, t, reading, strict=False)
    back, _ = wreath_to_premonad(m, strict=False)
    rep.extend(_unit_identities(m, P))
    rep.add(compare("mult_returns", back.mult, P.mult, [P.dim, P.dim]))
    rep.add(compare("unit_returns", back.unit, P.unit))
    return rep


# weak smash products

def target_map(h: WeakBialgebra) -> LinMap:
    """``x -> eps(1_1 x) 1_2``."""
    f, n = h.field, h.dim
    i = identity(f, n)
    return kron(h.counit, i) @ kron(h.mult, i) @ kron(i, swap(f, n, n)) @ kron(h.comult @ h.unit, i)


def target_subalgebra(h: WeakBialgebra):
    """The image of the target map as an algebra, with its splitting."""
    sp = split_idempotent(target_map(h))
    mult = sp.pi @ h.mult @ kron(sp.iota, sp.iota)
    return Algebra(h.field, sp.retract_dim, mult, sp.pi @ h.unit), sp


def weak_smash(h: WeakBialgebra) -> tuple[PreMonad, Algebra]:
    """The smash product of the target subalgebra ``A`` with ``h``.

    ``A`` is a module algebra via ``h . a = target(h a)``.  The carrier is
    ``A (x) H`` with ``(a # h)(b # g) = a (h_1 . b) # h_2 g``; as a word it
    is ``s t`` in the module reading with ``s = H`` and ``t = A``.  The
    element ``1 # 1`` is only a weak unit, so the result is normalized with
    unit ``(1 # 1)(1 # 1)``.  Returns the pre-monad and ``A``.
    """
    rep = check_weak_bialgebra(h)
    if not rep.ok:
        raise ValueError(rep.render())
    f, n = h.field, h.dim
    A, sp = target_subalgebra(h)
    a = A.dim
    iA, iH = identity(f, a), identity(f, n)
    act = sp.pi @ target_map(h) @ h.mult @ kron(iH, sp.iota)
    mult = (kron(A.mult, h.mult) @ kron(iA, act, iH, iH)
            @ kron(iA, iH, swap(f, n, a), iH) @ kron(iA, h.comult, iA, iH))
    unit = kron(A.unit, h.unit)
    return premonad_normalize(f, a * n, mult, unit), A
