"""Seeded random instances built from known constructions.

Nothing here is sampled blindly: every structure comes from a construction
that is valid by design (group and groupoid algebras, representations on
left ideals twisted by idempotents, crossed products, weak smash products),
moved to a random basis afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .emw_core import (EMWOneCell, EMWTwoCell, LawConfiguration, MonadInEMW, membership_space,
                       mirror_monad, mirror_onecell, twocell_space)
from .exact_linalg import (FieldSpec, LinMap, cokernel, identity, inverse, kron, rank,
                           split_idempotent, zeros)
from .lifting import EntwiningDatum
from .premonad_bridge import premonad_to_wreath, weak_smash
from .structures import (Algebra, Coalgebra, PreMonad, WeakBialgebra, basis_vector,
                         check_weak_bialgebra, cyclic_group_table, dual, group_algebra,
                         groupoid_algebra, is_commutative, opposite, pointwise_algebra,
                         pointwise_bialgebra, transport_algebra, transport_coalgebra,
                         trivial_algebra, truncated_polynomial, upper_triangular)
from .whisker import Reading, as_map, juxtaposer

__all__ = [
    "rng_for", "random_invertible", "PooledAlgebra", "algebra_pool", "random_algebra",
    "Block", "random_block", "onecell_from_blocks", "random_onecell", "random_onecells",
    "random_combination", "random_twocell", "random_omega",
    "strict_wreath", "random_strict_wreath", "transport_monad", "random_groupoid_wba",
    "transport_bialgebra", "random_weak_smash", "corner_premonad", "random_premonad",
    "random_module", "transport_entwining", "random_entwining", "sabotaged_wba",
    "random_law_configuration", "random_composition_data",
]


def rng_for(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_invertible(rng: np.random.Generator, field: FieldSpec, n: int) -> LinMap:
    while True:
        m = LinMap(field, field.random(rng, (n, n)))
        if rank(m) == n:
            return m


def _pick(rng: np.random.Generator, items):
    return items[int(rng.integers(len(items)))]


def _nonzero_scalar(rng: np.random.Generator, field: FieldSpec):
    while True:
        x = field.random(rng, (1, 1))[0, 0]
        if x != 0:
            return x


# algebras with known idempotents

@dataclass(frozen=True)
class PooledAlgebra:
    name: str
    algebra: Algebra
    idempotents: tuple[LinMap, ...]

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def transported(self, p: LinMap) -> "PooledAlgebra":
        return PooledAlgebra(self.name, transport_algebra(self.algebra, p),
                             tuple(p @ e for e in self.idempotents))

    def opposite(self) -> "PooledAlgebra":
        return PooledAlgebra(self.name + "^op", opposite(self.algebra), self.idempotents)


def _with_basics(name: str, a: Algebra, extra) -> PooledAlgebra:
    f, n = a.field, a.dim
    zero = zeros(f, n, 1)
    return PooledAlgebra(name, a, (zero, a.unit, *extra))


def algebra_pool(field: FieldSpec, max_dim: int = 3) -> list[PooledAlgebra]:
    """Small algebras with some of their idempotents, zero and one included."""
    f = field
    pool = [_with_basics("k", trivial_algebra(f), ())]
    for n in (2, 3):
        e = [basis_vector(f, n, i) for i in range(n)]
        if n == 3:
            e.append(basis_vector(f, 3, 0) + basis_vector(f, 3, 1))
        pool.append(_with_basics(f"k^{n}", pointwise_algebra(f, n), e))
        pool.append(_with_basics(f"k[x]/x^{n}", truncated_polynomial(f, n), ()))
    if f.p != 2:
        half = f.inv(f.scalar(2))
        h = group_algebra(f, cyclic_group_table(2)).algebra
        plus = LinMap.from_rows(f, [[half], [half]])
        minus = LinMap.from_rows(f, [[half], [f.neg(half)]])
        pool.append(_with_basics("kZ2", h, (plus, minus)))
    if f.p != 3:
        third = f.inv(f.scalar(3))
        h = group_algebra(f, cyclic_group_table(3)).algebra
        pool.append(_with_basics("kZ3", h, (LinMap.from_rows(f, [[third]] * 3),)))
    t2 = upper_triangular(f)
    e11, e22 = basis_vector(f, 3, 0), basis_vector(f, 3, 2)
    pool.append(_with_basics("T2", t2, (e11, e22, e11 + basis_vector(f, 3, 1))))
    return [p for p in pool if p.dim <= max_dim]


def random_algebra(rng: np.random.Generator, field: FieldSpec, max_dim: int = 3,
                   transport: bool = True) -> PooledAlgebra:
    a = _pick(rng, algebra_pool(field, max_dim))
    if transport and a.dim > 1:
        a = a.transported(random_invertible(rng, field, a.dim))
    return a


# 1-cells from representations twisted by an idempotent

@dataclass(frozen=True)
class Block:
    """A non-unital homomorphism ``t' -> M_m(t)``, ``x -> rho(x) e``.

    ``rho`` is the action of ``t'`` on a left ideal ``t' f`` and ``e`` an
    idempotent of ``t``; ``mats[x]`` is ``rho`` of the ``x``-th basis vector.
    """

    m: int
    mats: tuple[LinMap, ...]
    e: LinMap


def left_ideal_rep(a: Algebra, f: LinMap) -> tuple[int, list[LinMap]]:
    """Left multiplication on ``a f``, for an idempotent ``f``."""
    fs, n = a.field, a.dim
    i = identity(fs, n)
    s = split_idempotent(a.mult @ kron(i, f))
    mats = [s.pi @ a.mult @ kron(basis_vector(fs, n, x), i) @ s.iota for x in range(n)]
    return s.retract_dim, mats


def random_block(rng: np.random.Generator, src: PooledAlgebra, tgt: PooledAlgebra,
                 max_m: int = 3) -> Block:
    reps = [left_ideal_rep(tgt.algebra, f) for f in tgt.idempotents]
    reps = [r for r in reps if 0 < r[0] <= max_m]
    if not reps:
        reps = [(1, [zeros(tgt.algebra.field, 1, 1)] * tgt.dim)]
    m, mats = _pick(rng, reps)
    nonzero = [e for e in src.idempotents if not e.is_zero()]
    e = _pick(rng, nonzero) if rng.random() < 0.9 else src.idempotents[0]
    return Block(m, tuple(mats), e)


def onecell_from_blocks(src: Algebra, tgt: Algebra, blocks, basis: LinMap | None = None,
                        reading: Reading = Reading.STANDARD) -> EMWOneCell:
    """The 1-cell ``src -> tgt`` on the direct sum of ``blocks``.

    In the standard reading ``psi(x (x) v_j) = sum_i v_i (x) F(x)_ij``.  The
    module reading is reached by mirroring a standard cell over the
    opposite algebras.
    """
    if reading is Reading.MODULE:
        c = onecell_from_blocks(opposite(src), opposite(tgt), blocks, basis)
        return mirror_onecell(c)
    f, t, tp = src.field, src.dim, tgt.dim
    n = sum(b.m for b in blocks)
    out = f.zeros((n * t, tp * n))
    off = 0
    for b in blocks:
        for x in range(tp):
            blk = kron(b.mats[x], b.e).entries
            for j in range(b.m):
                for i in range(b.m):
                    out[(off + i) * t:(off + i + 1) * t, x * n + off + j] = blk[i * t:(i + 1) * t, j]
        off += b.m
    psi = LinMap(f, out)
    if basis is not None:
        psi = kron(basis, identity(f, t)) @ psi @ kron(identity(f, tp), inverse(basis))
    return EMWOneCell(src, tgt, n, psi, Reading.STANDARD)


def _blocks_within(rng, pool: list[Block], max_V: int) -> list[Block]:
    blocks, size = [], 0
    for _ in range(int(rng.integers(1, 4))):
        fitting = [b for b in pool if size + b.m <= max_V]
        if not fitting:
            break
        b = _pick(rng, fitting)
        blocks.append(b)
        size += b.m
    return blocks


def random_onecells(rng: np.random.Generator, src: PooledAlgebra, tgt: PooledAlgebra,
                    count: int, reading: Reading = Reading.STANDARD,
                    max_V: int = 3) -> list[EMWOneCell]:
    """``count`` 1-cells ``src -> tgt`` drawn from a shared stock of blocks,
    so that 2-cells between them tend to exist."""
    if reading is Reading.MODULE:
        src, tgt = src.opposite(), tgt.opposite()
    pool = [random_block(rng, src, tgt, max_V) for _ in range(3)]
    cells = []
    for _ in range(count):
        blocks = _blocks_within(rng, pool, max_V)
        n = sum(b.m for b in blocks)
        basis = random_invertible(rng, src.algebra.field, n) if rng.random() < 0.7 else None
        c = onecell_from_blocks(src.algebra, tgt.algebra, blocks, basis)
        cells.append(mirror_onecell(c) if reading is Reading.MODULE else c)
    return cells


def random_onecell(rng: np.random.Generator, src: PooledAlgebra, tgt: PooledAlgebra,
                   reading: Reading = Reading.STANDARD, max_V: int = 3) -> EMWOneCell:
    return random_onecells(rng, src, tgt, 1, reading, max_V)[0]


# 2-cells and plain maps between 1-cells

def random_combination(rng: np.random.Generator, basis: list[LinMap], rows: int, cols: int,
                       field: FieldSpec) -> LinMap:
    out = zeros(field, rows, cols)
    for b in basis:
        out = out + b.scale(field.random(rng, (1, 1))[0, 0])
    return out


def random_twocell(rng: np.random.Generator, a: EMWOneCell, b: EMWOneCell) -> EMWTwoCell:
    """A random element of the space of 2-cells ``a => b`` (possibly zero)."""
    basis = twocell_space(a, b)
    rho = random_combination(rng, basis, b.V_dim * a.source.dim, a.V_dim, a.field)
    return EMWTwoCell(a, b, rho)


def random_omega(rng: np.random.Generator, a: EMWOneCell, b: EMWOneCell,
                 side: str | None = None) -> LinMap:
    """A map ``V -> W``: unconstrained, or from the iota, pi or strict solution space."""
    side = side or _pick(rng, ["free", "iota", "pi", "strict"])
    f = a.field
    if side == "free":
        return LinMap(f, f.random(rng, (b.V_dim, a.V_dim)))
    return random_combination(rng, membership_space(a, b, side), b.V_dim, a.V_dim, f)


# monads in the weak 2-category

def _automorphisms(field: FieldSpec):
    """``(algebra, group order, generator automorphism)`` for small actions."""
    f = field
    out = []
    for n in (2, 3):
        p = LinMap(f, np.roll(f.eye(n), 1, axis=0))
        out.append((pointwise_algebra(f, n), n, p))
    for n in (2, 3):
        d = [[(-1) ** i if i == j else 0 for j in range(n)] for i in range(n)]
        out.append((truncated_polynomial(f, n), 2, LinMap.from_rows(f, d)))
    out.append((upper_triangular(f), 2, LinMap.from_rows(f, [[1, 0, 0], [0, -1, 0], [0, 0, 1]])))
    for a in (trivial_algebra(f), pointwise_algebra(f, 2), truncated_polynomial(f, 2)):
        out.append((a, 2, identity(f, a.dim)))
        out.append((a, 3, identity(f, a.dim)))
    out.append((upper_triangular(f), 1, identity(f, 3)))
    return out


def strict_wreath(t: Algebra, order: int, gen: LinMap, cocycle=None) -> MonadInEMW:
    """The crossed product of ``t`` by the cyclic group acting through ``gen``.

    In the standard reading the word ``s t`` is ``kG (x) t`` with
    ``(g (x) a)(h (x) b) = c(g, h) gh (x) (h^-1 . a) b``; ``c`` is a scalar
    coboundary given by ``cocycle[g]``.
    """
    f, n, G = t.field, t.dim, order
    powers = [identity(f, n)]
    for _ in range(G - 1):
        powers.append(gen @ powers[-1])
    fs = [f.one] + list(cocycle or [f.one] * (G - 1))
    psi = f.zeros((G * n, n * G))
    for h in range(G):
        act = powers[(-h) % G].entries
        for a in range(n):
            psi[h * n:(h + 1) * n, a * G + h] = act[:, a]
    nu = f.zeros((G * n, G * G))
    one = t.unit.entries[:, 0]
    for g in range(G):
        for h in range(G):
            c = fs[g] * fs[h] * f.inv(fs[(g + h) % G])
            gh = (g + h) % G
            nu[gh * n:(gh + 1) * n, g * G + h] = one * f.scalar(c)
    theta = kron(basis_vector(f, G, 0), t.unit)
    return MonadInEMW(t, G, LinMap(f, f.reduce(psi)), LinMap(f, f.reduce(nu)), theta)


def transport_monad(m: MonadInEMW, p_t: LinMap, p_s: LinMap) -> MonadInEMW:
    """Change bases of ``t`` and ``s``; standard reading."""
    if m.reading is not Reading.STANDARD:
        return mirror_monad(transport_monad(mirror_monad(m), p_t, p_s))
    qt, qs = inverse(p_t), inverse(p_s)
    out = kron(p_s, p_t)
    return MonadInEMW(transport_algebra(m.base, p_t), m.s_dim,
                      out @ m.psi @ kron(qt, qs), out @ m.nu @ kron(qs, qs),
                      out @ m.theta, Reading.STANDARD)


def random_strict_wreath(rng: np.random.Generator, field: FieldSpec,
                         reading: Reading = Reading.STANDARD) -> MonadInEMW:
    t, G, gen = _pick(rng, _automorphisms(field))
    cocycle = [_nonzero_scalar(rng, field) for _ in range(G - 1)]
    m = strict_wreath(t, G, gen, cocycle)
    m = transport_monad(m, random_invertible(rng, field, t.dim), random_invertible(rng, field, G))
    return mirror_monad(m) if reading is Reading.MODULE else m


# weak bialgebras and weak smash products

def _groupoid(components: list[tuple[int, int]]):
    """Disjoint union of (pair groupoid on ``m`` objects) x (cyclic group of order ``k``)."""
    objects, arrows, labels = [], [], []
    for c, (m, k) in enumerate(components):
        objs = [(c, i) for i in range(m)]
        objects += objs
        for s in objs:
            for t in objs:
                for g in range(k):
                    arrows.append((s, t))
                    labels.append((c, g, k))
    comp = {}
    for a, (s1, t1) in enumerate(arrows):
        for b, (s2, t2) in enumerate(arrows):
            if s1 == t2:
                c, g, k = labels[a]
                h = labels[b][1]
                target = [i for i, arr in enumerate(arrows)
                          if arr == (s2, t1) and labels[i] == (c, (g + h) % k, k)]
                comp[(a, b)] = target[0]
    return objects, arrows, comp


_GROUPOID_SHAPES = [
    [(1, 1)], [(1, 2)], [(1, 3)], [(1, 1), (1, 1)], [(1, 1), (1, 1), (1, 1)],
    [(1, 2), (1, 1)], [(2, 1)], [(1, 2), (1, 2)], [(1, 3), (1, 1)], [(1, 4)],
]


def transport_bialgebra(h: WeakBialgebra, p: LinMap) -> WeakBialgebra:
    return WeakBialgebra.join(transport_algebra(h.algebra, p), transport_coalgebra(h.coalgebra, p))


def random_groupoid_wba(rng: np.random.Generator, field: FieldSpec, max_dim: int = 4,
                        transport: bool = True) -> WeakBialgebra:
    shapes = [s for s in _GROUPOID_SHAPES if sum(m * m * k for m, k in s) <= max_dim]
    h = groupoid_algebra(field, *_groupoid(_pick(rng, shapes)))
    if transport and h.dim > 1:
        h = transport_bialgebra(h, random_invertible(rng, field, h.dim))
    return h


def random_weak_smash(rng: np.random.Generator, field: FieldSpec, max_dim: int = 2
                      ) -> tuple[MonadInEMW, PreMonad]:
    """The monad in the module reading behind the weak smash of a small groupoid algebra."""
    h = random_groupoid_wba(rng, field, max_dim)
    P, A = weak_smash(h)
    return premonad_to_wreath(P, h.dim, A, Reading.MODULE), P


# pre-monads

def corner_premonad(a: Algebra, e: LinMap) -> PreMonad:
    """``x y -> e x y`` with unit ``e``, for a central idempotent ``e``."""
    f, n = a.field, a.dim
    left_e = a.mult @ kron(e, identity(f, n))
    return PreMonad(f, n, left_e @ a.mult, e)


def _transport_premonad(P: PreMonad, p: LinMap) -> PreMonad:
    q = inverse(p)
    return PreMonad(P.field, P.dim, p @ P.mult @ kron(q, q), p @ P.unit)


def random_premonad(rng: np.random.Generator, field: FieldSpec) -> PreMonad:
    """Corners of commutative algebras, weak smash products and crossed products."""
    from .premonad_bridge import wreath_to_premonad

    kind = _pick(rng, ["corner", "smash", "wreath", "monad"])
    if kind == "corner":
        a = _pick(rng, [a for a in algebra_pool(field) if is_commutative(a.algebra)])
        P = corner_premonad(a.algebra, _pick(rng, a.idempotents[1:]))
    elif kind == "smash":
        P = random_weak_smash(rng, field)[1]
    elif kind == "wreath":
        P = wreath_to_premonad(random_strict_wreath(rng, field))[0]
    else:
        a = random_algebra(rng, field).algebra
        P = PreMonad.of(a)
    if P.dim > 1:
        P = _transport_premonad(P, random_invertible(rng, field, P.dim))
    return P


# modules

def random_module(rng: np.random.Generator, R: Algebra, reading: Reading,
                  max_dim: int = 4) -> tuple[int, LinMap]:
    """A module over ``R`` acting through ``J(R, W)``: a quotient of a free module
    by the submodule generated by random vectors, in a random basis."""
    f, r = R.field, R.dim
    J = juxtaposer(reading)
    while True:
        n = int(rng.integers(1, max(2, max_dim // r + 2)))
        W = n * r
        gamma = as_map(J(R.mult, n))
        gens = LinMap(f, f.random(rng, (W, int(rng.integers(0, 3)))))
        sub = as_map(gamma @ J(r, gens)) if gens.cols else zeros(f, W, 0)
        quo = cokernel(sub)
        if 0 < quo.dim <= max_dim:
            break
    g = quo.proj @ gamma @ as_map(J(r, quo.section))
    p = random_invertible(rng, f, quo.dim)
    return quo.dim, as_map(p @ g @ as_map(J(r, inverse(p))))


# entwinings

def transport_entwining(d: EntwiningDatum, p_a: LinMap, p_c: LinMap) -> EntwiningDatum:
    qa, qc = inverse(p_a), inverse(p_c)
    if d.reading is Reading.MODULE:
        psi = kron(p_a, p_c) @ d.psi @ kron(qc, qa)
    else:
        psi = kron(p_c, p_a) @ d.psi @ kron(qa, qc)
    return EntwiningDatum(transport_algebra(d.A, p_a), transport_coalgebra(d.C, p_c),
                          psi, d.reading)


def _small_coalgebras(field: FieldSpec, dim: int) -> list[Coalgebra]:
    out = [dual(a.algebra) for a in algebra_pool(field, dim) if a.dim == dim]
    out.append(pointwise_bialgebra(field, dim).coalgebra)
    return out


def random_entwining(rng: np.random.Generator, field: FieldSpec, max_dim: int = 2,
                     reading: Reading = Reading.MODULE) -> EntwiningDatum:
    """Multiplicative ``psi: A C -> C A`` with ``dim A, dim C <= max_dim``.

    Sources: the right entwining of a small weak bialgebra, and 1-cells
    ``A -> A`` on the space of a coalgebra.  Every output satisfies the
    multiplicativity axiom; the other axioms hold or fail at random.
    """
    from .entwine_bialg import mirror_entwining, psi_R

    if rng.random() < 0.3:
        h = random_groupoid_wba(rng, field, max_dim, transport=False)
        d = psi_R(h)
    else:
        A = random_algebra(rng, field, max_dim, transport=False)
        c = int(rng.integers(1, max_dim + 1))
        while True:
            cell = random_onecell(rng, A, A, Reading.MODULE, max_V=c)
            if cell.V_dim == c:
                break
        d = EntwiningDatum(A.algebra, _pick(rng, _small_coalgebras(field, c)), cell.psi,
                           Reading.MODULE)
    d = transport_entwining(d, random_invertible(rng, field, d.A.dim),
                            random_invertible(rng, field, d.C.dim))
    return mirror_entwining(d) if reading is Reading.STANDARD else d


def sabotaged_wba(rng: np.random.Generator, h: WeakBialgebra,
                  attempts: int = 100) -> WeakBialgebra:
    """``h`` with its coalgebra moved by a random basis change, no longer a weak bialgebra.

    Algebra and coalgebra stay valid, so only the compatibility axioms break.
    """
    for _ in range(attempts):
        c = transport_coalgebra(h.coalgebra, random_invertible(rng, h.field, h.dim))
        out = WeakBialgebra.join(h.algebra, c)
        if not check_weak_bialgebra(out).ok:
            return out
    raise RuntimeError("every basis change kept the weak bialgebra axioms")


# configurations for the law suites

def random_law_configuration(rng: np.random.Generator, field: FieldSpec, max_dim: int = 3,
                             reading: Reading | None = None) -> LawConfiguration:
    """Random composable cells over four random algebras of dimension at most ``max_dim``."""
    reading = reading or _pick(rng, list(Reading))
    ts = [random_algebra(rng, field, max_dim) for _ in range(4)]
    V, W, U, X = random_onecells(rng, ts[0], ts[1], 4, reading, max_dim)
    V1, W1, U1 = random_onecells(rng, ts[1], ts[2], 3, reading, max_dim)
    V2, W2 = random_onecells(rng, ts[2], ts[3], 2, reading, max_dim)
    return LawConfiguration(
        rho=random_twocell(rng, V, W), tau=random_twocell(rng, W, U),
        sigma=random_twocell(rng, U, X), rho1=random_twocell(rng, V1, W1),
        tau1=random_twocell(rng, W1, U1), rho2=random_twocell(rng, V2, W2))


def random_composition_data(rng: np.random.Generator, field: FieldSpec, side: str,
                            max_dim: int = 2, reading: Reading | None = None):
    """``(omega, omega_p, kappa, cells)`` drawn from the ``side`` solution spaces.

    ``cells`` holds ``V, W, U: t -> t'`` and ``Vp, Wp: t' -> t''``.
    """
    reading = reading or _pick(rng, list(Reading))
    ts = [random_algebra(rng, field, max_dim) for _ in range(3)]
    V, W, U = random_onecells(rng, ts[0], ts[1], 3, reading, max_dim)
    Vp, Wp = random_onecells(rng, ts[1], ts[2], 2, reading, max_dim)
    omega = random_omega(rng, V, W, side)
    kappa = random_omega(rng, W, U, side)
    omega_p = random_omega(rng, Vp, Wp, side)
    return omega, omega_p, kappa, {"V": V, "W": W, "U": U, "Vp": Vp, "Wp": Wp}
