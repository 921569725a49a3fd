"""Entwining structures, their lifting conditions and weak bialgebras.

All identities are written once as composites of whiskered cells on the
words in ``t`` (the algebra) and ``c`` (the coalgebra) and evaluated in the
reading carried by the datum: the module reading gives right-right
structures, the standard reading left-left ones.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact_linalg import identity, kron, swap
from .lifting import (EntwiningDatum, InvalidStructure, check_emw_comonad, comonad_cells)
from .report import Report, compare, flag
from .structures import (WeakBialgebra, check_algebra, check_coalgebra,
                         check_weak_bialgebra, coopposite, opposite)
from .whisker import Reading, juxtaposer

__all__ = [
    "SharedAxiomFailed", "Classification", "entwining_axioms", "classify_entwining",
    "KIND_AXIOMS", "kind_conditions", "comonad_lifting_conditions", "monad_lifting_conditions",
    "psi_R", "psi_L", "mirror_entwining", "characterize_weak_bialgebra",
]


class SharedAxiomFailed(ValueError):
    pass


def _cells(d: EntwiningDatum):
    J = juxtaposer(d.reading)
    A, C = d.A, d.C
    return J, A.dim, C.dim, d.psi, A.mult, A.unit, C.comult, C.counit


def entwining_axioms(d: EntwiningDatum) -> Report:
    """Every identity used by the four kinds of entwining, one verdict each."""
    J, t, c, psi, mu, eta, delta, eps = _cells(d)
    rep = Report("entwining axioms")
    rep.add(compare("mult", psi @ J(mu, c), J(c, mu) @ J(psi, t) @ J(t, psi)))
    rep.add(compare("comult", J(delta, t) @ psi, J(c, psi) @ J(psi, c) @ J(t, delta)))
    rep.add(compare("unit_strict", psi @ J(eta, c), J(c, eta)))
    rep.add(compare("counit_strict", J(eps, t) @ psi, J(t, eps)))
    rep.add(compare("unit_weak", psi @ J(eta, c),
                    J(c, eps, t) @ J(c, psi) @ J(c, eta, c) @ delta))
    rep.add(compare("counit_weak", J(eps, t) @ psi,
                    mu @ J(t, eps, t) @ J(t, psi) @ J(t, eta, c)))
    rep.add(compare("comult_partial",
                    J(c, c, mu) @ J(c, psi, t) @ J(c, eta, c, t) @ J(delta, t) @ psi,
                    J(c, psi) @ J(psi, c) @ J(t, delta)))
    rep.add(compare("unit_lax",
                    J(c, mu) @ J(c, t, eps, t) @ J(c, t, psi) @ J(c, t, eta, c)
                    @ J(psi, c) @ J(t, delta) @ J(eta, c),
                    psi @ J(eta, c)))
    return rep


KIND_AXIOMS = {
    "mixed_dl": ("mult", "comult", "unit_strict", "counit_strict"),
    "weak": ("mult", "comult", "unit_weak", "counit_weak"),
    "partial": ("mult", "counit_strict", "comult_partial"),
    "lax": ("mult", "counit_weak", "comult_partial", "unit_lax"),
}


@dataclass
class Classification:
    mixed_dl: bool
    weak: bool
    partial: bool
    lax: bool
    report: Report
    handedness: str = "right"

    def to_dict(self) -> dict:
        return {"mixed_dl": self.mixed_dl, "weak": self.weak, "partial": self.partial,
                "lax": self.lax, "handedness": self.handedness,
                "report": self.report.to_dict()}


def classify_entwining(d: EntwiningDatum) -> Classification:
    """Which kinds of entwining structure ``d`` is.

    ``A`` and ``C`` must satisfy their axioms and ``psi`` must be
    multiplicative, the axiom shared by all kinds.
    """
    d.validate()
    rep = entwining_axioms(d)
    if not rep.passed("mult"):
        raise SharedAxiomFailed(str(rep["mult"].witness))
    kinds = {k: all(rep.passed(tag) for tag in tags) for k, tags in KIND_AXIOMS.items()}
    return Classification(report=rep, handedness=d.handedness, **kinds)


def comonad_lifting_conditions(d: EntwiningDatum) -> Report:
    """When ``(C, psi)`` carries a comonad whose lifting is of iota, pi or both type."""
    J, t, c, psi, mu, eta, delta, eps = _cells(d)
    rep = Report("comonad lifting conditions")
    rep.add(compare("one_cell", psi @ J(mu, c), J(c, mu) @ J(psi, t) @ J(t, psi)))
    cpsi_psic_tdelta = J(c, psi) @ J(psi, c) @ J(t, delta)
    rep.add(compare("iota.comult", J(delta, t) @ psi,
                    J(c, c, mu) @ J(c, psi, t) @ J(psi, c, t) @ J(t, delta, t)
                    @ J(t, psi) @ J(t, eta, c)))
    rep.add(compare("iota.counit", J(eps, t) @ psi,
                    mu @ J(t, eps, t) @ J(t, psi) @ J(t, eta, c)))
    rep.add(compare("pi.comult", cpsi_psic_tdelta,
                    J(c, c, mu) @ J(c, psi, t) @ J(psi, c, t) @ J(eta, c, c, t)
                    @ J(delta, t) @ psi))
    rep.add(compare("pi.counit", J(t, eps), J(eps, t) @ psi))
    rep.add(compare("both.comult", cpsi_psic_tdelta, J(delta, t) @ psi))
    rep.add(compare("both.counit", J(t, eps), J(eps, t) @ psi))
    if rep.passed("one_cell"):
        for kind in ("iota", "pi"):
            if all(rep.passed(f"{kind}.{x}") for x in ("comult", "counit")):
                rep.extend(check_emw_comonad(*comonad_cells(d, kind)), f"{kind}.emw.")
    return rep


def monad_lifting_conditions(d: EntwiningDatum) -> Report:
    """When ``(A, psi)`` carries a monad over the comonad, of pi, iota or both type."""
    J, t, c, psi, mu, eta, delta, eps = _cells(d)
    rep = Report("monad lifting conditions")
    rep.add(compare("one_cell", J(delta, t) @ psi, J(c, psi) @ J(psi, c) @ J(t, delta)))
    rep.add(compare("pi.mult", psi @ J(mu, c),
                    J(c, eps, t) @ J(c, psi) @ J(c, mu, c) @ J(psi, t, c) @ J(t, psi, c)
                    @ J(t, t, delta)))
    rep.add(compare("pi.unit", psi @ J(eta, c),
                    J(c, eps, t) @ J(c, psi) @ J(c, eta, c) @ delta))
    rep.add(compare("iota.mult", J(c, mu) @ J(psi, t) @ J(t, psi),
                    psi @ J(mu, c) @ J(eps, t, t, c) @ J(psi, t, c) @ J(t, psi, c)
                    @ J(t, t, delta)))
    rep.add(compare("iota.unit", J(c, eta), psi @ J(eta, c)))
    rep.add(compare("both.mult", J(c, mu) @ J(psi, t) @ J(t, psi), psi @ J(mu, c)))
    rep.add(compare("both.unit", J(c, eta), psi @ J(eta, c)))
    return rep


def kind_conditions(d: EntwiningDatum, kind: str) -> Report:
    """Preconditions for building the lifted coring of ``kind``."""
    if kind == "lax":
        full, tags = entwining_axioms(d), KIND_AXIOMS["lax"]
    elif kind in ("iota", "pi"):
        full, tags = comonad_lifting_conditions(d), ("one_cell", f"{kind}.comult", f"{kind}.counit")
    else:
        raise ValueError(f"unknown kind {kind!r}")
    rep = Report(f"{kind} conditions")
    for tag in tags:
        rep.add(full[tag])
    return rep


# the two entwinings of an algebra-coalgebra pair on one space

def psi_R(h: WeakBialgebra) -> EntwiningDatum:
    """``h (x) h' -> h'_1 (x) h h'_2``, right-handed."""
    f, n = h.field, h.dim
    i = identity(f, n)
    psi = kron(i, h.mult) @ kron(swap(f, n, n), i) @ kron(i, h.comult)
    return EntwiningDatum(h.algebra, h.coalgebra, psi, Reading.MODULE)


def psi_L(h: WeakBialgebra) -> EntwiningDatum:
    """``h (x) h' -> h_1 h' (x) h_2``, left-handed."""
    f, n = h.field, h.dim
    i = identity(f, n)
    psi = kron(h.mult, i) @ kron(i, swap(f, n, n)) @ kron(h.comult, i)
    return EntwiningDatum(h.algebra, h.coalgebra, psi, Reading.STANDARD)


def mirror_entwining(d: EntwiningDatum) -> EntwiningDatum:
    """The same structure seen from the other side.

    ``(A, C, psi)`` in one reading corresponds to ``(A^op, C^cop, flip psi flip)``
    in the other; all axiom verdicts agree.
    """
    f, a, c = d.field, d.A.dim, d.C.dim
    if d.reading is Reading.MODULE:
        psi = swap(f, a, c) @ d.psi @ swap(f, a, c)
    else:
        psi = swap(f, c, a) @ d.psi @ swap(f, c, a)
    return EntwiningDatum(opposite(d.A), coopposite(d.C), psi, d.reading.other())


def characterize_weak_bialgebra(h: WeakBialgebra) -> Report:
    """Weak bialgebra axioms against weakness of both entwinings."""
    for rep in (check_algebra(h.algebra), check_coalgebra(h.coalgebra)):
        if not rep.ok:
            raise InvalidStructure(rep.render())
    wba = check_weak_bialgebra(h).ok
    right = _weak_or_false(psi_R(h))
    left = _weak_or_false(psi_L(h))
    rep = Report("weak bialgebra characterization")
    rep.add(flag("weak_bialgebra", wba))
    rep.add(flag("psi_R_weak", right))
    rep.add(flag("psi_L_weak", left))
    rep.add(flag("biconditional", wba == (right and left)))
    return rep


def _weak_or_false(d: EntwiningDatum) -> bool:
    try:
        return classify_entwining(d).weak
    except SharedAxiomFailed:
        return False
