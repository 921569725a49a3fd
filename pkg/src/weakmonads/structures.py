"""Algebras, coalgebras, pre-monads and weak bialgebras by structure constants.

All structure maps are dense ``LinMap``s.  A multiplication is a map
``A (x) A -> A`` and a unit is ``k -> A`` (a single column), dually for
comultiplications and counits.

The pre-monad axioms only involve the single 1-cell being studied, and they
coincide in the standard and module readings (both unit laws reduce to
``x * 1 == 1 * x``), so the checks below use plain Kronecker products.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .exact_linalg import (
    DimensionMismatch, FieldSpec, LinMap, Splitting, identity, inverse,
    kron, split_idempotent, swap, zeros,
)
from .report import Report, compare

__all__ = [
    "Algebra", "Coalgebra", "PreMonad", "WeakBialgebra",
    "ShapeMismatch", "InvalidPresentation", "PreconditionFailed", "NotPreMonad",
    "check_algebra", "check_coalgebra", "check_premonad", "premonad_normalize",
    "premonad_retract", "check_weak_bialgebra",
    "algebra_from_table", "pointwise_algebra", "truncated_polynomial",
    "upper_triangular", "matrix_algebra", "group_algebra", "cyclic_group_table",
    "groupoid_algebra", "pair_groupoid", "matrix_coalgebra", "dual",
    "opposite", "coopposite", "transport_algebra", "transport_coalgebra",
    "trivial_algebra", "trivial_coalgebra", "pointwise_bialgebra",
    "zero_algebra_map", "is_commutative", "basis_vector", "as_column",
]


class ShapeMismatch(DimensionMismatch):
    pass


class InvalidPresentation(ValueError):
    pass


class PreconditionFailed(ValueError):
    def __init__(self, tag: str, detail: str = ""):
        super().__init__(f"{tag} fails" + (f": {detail}" if detail else ""))
        self.tag = tag


class NotPreMonad(ValueError):
    pass


def _expect(name: str, m: LinMap, rows: int, cols: int, field: FieldSpec):
    if m.field != field:
        raise ShapeMismatch(f"{name} lives over {m.field}, expected {field}")
    if m.shape != (rows, cols):
        raise ShapeMismatch(f"{name} has shape {m.shape}, expected {(rows, cols)}")


@dataclass(frozen=True)
class Algebra:
    field: FieldSpec
    dim: int
    mult: LinMap
    unit: LinMap

    def __post_init__(self):
        _expect("mult", self.mult, self.dim, self.dim ** 2, self.field)
        _expect("unit", self.unit, self.dim, 1, self.field)

    @property
    def one(self) -> LinMap:
        return self.unit

    def product(self, x: LinMap, y: LinMap) -> LinMap:
        """Product of two elements given as columns."""
        return self.mult @ kron(x, y)


@dataclass(frozen=True)
class Coalgebra:
    field: FieldSpec
    dim: int
    comult: LinMap
    counit: LinMap

    def __post_init__(self):
        _expect("comult", self.comult, self.dim ** 2, self.dim, self.field)
        _expect("counit", self.counit, 1, self.dim, self.field)


@dataclass(frozen=True)
class PreMonad:
    field: FieldSpec
    dim: int
    mult: LinMap
    unit: LinMap

    def __post_init__(self):
        _expect("mult", self.mult, self.dim, self.dim ** 2, self.field)
        _expect("unit", self.unit, self.dim, 1, self.field)

    @classmethod
    def of(cls, a: Algebra) -> "PreMonad":
        return cls(a.field, a.dim, a.mult, a.unit)


@dataclass(frozen=True)
class WeakBialgebra:
    field: FieldSpec
    dim: int
    mult: LinMap
    unit: LinMap
    comult: LinMap
    counit: LinMap

    def __post_init__(self):
        _expect("mult", self.mult, self.dim, self.dim ** 2, self.field)
        _expect("unit", self.unit, self.dim, 1, self.field)
        _expect("comult", self.comult, self.dim ** 2, self.dim, self.field)
        _expect("counit", self.counit, 1, self.dim, self.field)

    @property
    def algebra(self) -> Algebra:
        return Algebra(self.field, self.dim, self.mult, self.unit)

    @property
    def coalgebra(self) -> Coalgebra:
        return Coalgebra(self.field, self.dim, self.comult, self.counit)

    @classmethod
    def join(cls, a: Algebra, c: Coalgebra) -> "WeakBialgebra":
        if a.field != c.field or a.dim != c.dim:
            raise ShapeMismatch("algebra and coalgebra live on different spaces")
        return cls(a.field, a.dim, a.mult, a.unit, c.comult, c.counit)


# checkers

def check_algebra(a: Algebra) -> Report:
    f, n, m, u = a.field, a.dim, a.mult, a.unit
    i = identity(f, n)
    rep = Report("algebra")
    rep.add(compare("associativity", m @ kron(m, i), m @ kron(i, m), [n, n, n]))
    rep.add(compare("left_unit", m @ kron(u, i), i))
    rep.add(compare("right_unit", m @ kron(i, u), i))
    return rep


def check_coalgebra(c: Coalgebra) -> Report:
    f, n, d, e = c.field, c.dim, c.comult, c.counit
    i = identity(f, n)
    rep = Report("coalgebra")
    rep.add(compare("coassociativity", kron(d, i) @ d, kron(i, d) @ d))
    rep.add(compare("left_counit", kron(e, i) @ d, i))
    rep.add(compare("right_counit", kron(i, e) @ d, i))
    return rep


def check_premonad(p: PreMonad) -> Report:
    f, n, m, u = p.field, p.dim, p.mult, p.unit
    i = identity(f, n)
    rep = Report("pre-monad")
    rep.add(compare("associativity", m @ kron(m, i), m @ kron(i, m), [n, n, n]))
    rep.add(compare("unit_balance", m @ kron(u, i), m @ kron(i, u)))
    rep.add(compare("unit_idempotent", m @ kron(u, u), u))
    rep.add(compare("normalization", m @ kron(m, i) @ kron(u, i, i), m, [n, n]))
    return rep


def premonad_normalize(field: FieldSpec, dim: int, mult: LinMap, unit: LinMap) -> PreMonad:
    """Replace ``(mult, unit)`` by ``(mult . (mult x 1) . (u x 1 x 1), mult . (u x u))``.

    Requires associativity and ``1x == x1 == (11)x``.
    """
    cand = PreMonad(field, dim, mult, unit)
    i = identity(field, dim)
    m, u = mult, unit
    checks = [
        compare("associativity", m @ kron(m, i), m @ kron(i, m), [dim] * 3),
        compare("unit_balance", m @ kron(u, i), m @ kron(i, u)),
        compare("unit_square", m @ kron(u, i), m @ kron(m, i) @ kron(u, u, i)),
    ]
    for v in checks:
        if not v.passed:
            raise PreconditionFailed(v.tag, str(v.witness))
    new_mult = m @ kron(m, i) @ kron(u, i, i)
    new_unit = m @ kron(u, u)
    return PreMonad(cand.field, dim, new_mult, new_unit)


def premonad_retract(p: PreMonad) -> tuple[Algebra, Splitting]:
    """The monad on the image of the idempotent ``x -> 1 x``."""
    rep = check_premonad(p)
    if not rep.ok:
        raise NotPreMonad(rep.render())
    i = identity(p.field, p.dim)
    s = split_idempotent(p.mult @ kron(p.unit, i))
    mult = s.pi @ p.mult @ kron(s.iota, s.iota)
    unit = s.pi @ p.unit
    return Algebra(p.field, s.retract_dim, mult, unit), s


def check_weak_bialgebra(h: WeakBialgebra) -> Report:
    f, n = h.field, h.dim
    m, u, d, e = h.mult, h.unit, h.comult, h.counit
    i = identity(f, n)
    rep = Report("weak bialgebra")
    rep.extend(check_algebra(h.algebra), "algebra.")
    rep.extend(check_coalgebra(h.coalgebra), "coalgebra.")
    mid = kron(i, swap(f, n, n), i)
    rep.add(compare("comult_multiplicative", d @ m, kron(m, m) @ mid @ kron(d, d), [n, n]))
    d1 = d @ u
    dd = kron(d1, d1)
    triple = kron(d, i) @ d1
    rep.add(compare("unit_comult_left", kron(i, m, i) @ dd, triple))
    rep.add(compare("unit_comult_right", kron(i, m @ swap(f, n, n), i) @ dd, triple))
    em = e @ m
    rep.add(compare("counit_mult_left", kron(em, em) @ kron(i, d1, i), em, [n, n]))
    rep.add(compare("counit_mult_right",
                    kron(em, em) @ kron(i, swap(f, n, n) @ d1, i), em, [n, n]))
    return rep


# constructions

def trivial_algebra(field: FieldSpec) -> Algebra:
    one = identity(field, 1)
    return Algebra(field, 1, one, one)


def trivial_coalgebra(field: FieldSpec) -> Coalgebra:
    one = identity(field, 1)
    return Coalgebra(field, 1, one, one)


def algebra_from_table(field: FieldSpec, dim: int,
                       product: Callable[[int, int], Mapping[int, object]],
                       unit: Sequence) -> Algebra:
    """Structure constants from ``product(i, j) = {k: coefficient}``."""
    mult = field.zeros((dim, dim * dim))
    for i in range(dim):
        for j in range(dim):
            for k, c in product(i, j).items():
                mult[k, i * dim + j] = field.scalar(c)
    u = LinMap.from_rows(field, [[x] for x in unit], (dim, 1))
    return Algebra(field, dim, LinMap(field, mult), u)


def pointwise_algebra(field: FieldSpec, n: int) -> Algebra:
    return algebra_from_table(field, n, lambda i, j: {i: 1} if i == j else {}, [1] * n)


def truncated_polynomial(field: FieldSpec, n: int) -> Algebra:
    """``k[x] / (x^n)`` in the basis ``1, x, ..., x^{n-1}``."""
    return algebra_from_table(field, n, lambda i, j: {i + j: 1} if i + j < n else {},
                              [1] + [0] * (n - 1))


def matrix_algebra(field: FieldSpec, n: int) -> Algebra:
    """``M_n(k)`` in the basis ``E_ij`` at index ``i * n + j``."""
    def prod_(a, b):
        (i, j), (k, l) = divmod(a, n), divmod(b, n)
        return {i * n + l: 1} if j == k else {}
    return algebra_from_table(field, n * n, prod_, [1 if i == j else 0
                                                    for i in range(n) for j in range(n)])


def upper_triangular(field: FieldSpec) -> Algebra:
    """Upper triangular 2x2 matrices in the basis ``E11, E12, E22``."""
    names = [(0, 0), (0, 1), (1, 1)]

    def prod_(a, b):
        (i, j), (k, l) = names[a], names[b]
        return {names.index((i, l)): 1} if j == k else {}
    return algebra_from_table(field, 3, prod_, [1, 0, 1])


def cyclic_group_table(n: int) -> list[list[int]]:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def _validate_group(table: Sequence[Sequence[int]]) -> int:
    n = len(table)
    if any(len(row) != n for row in table):
        raise InvalidPresentation("group table is not square")
    if any(not 0 <= x < n for row in table for x in row):
        raise InvalidPresentation("group table entry out of range")
    ids = [e for e in range(n) if all(table[e][g] == g and table[g][e] == g for g in range(n))]
    if not ids:
        raise InvalidPresentation("group table has no identity")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise InvalidPresentation(f"group table not associative at {(a, b, c)}")
    for a in range(n):
        if not any(table[a][b] == ids[0] for b in range(n)):
            raise InvalidPresentation(f"element {a} has no inverse")
    return ids[0]


def group_algebra(field: FieldSpec, table: Sequence[Sequence[int]]) -> WeakBialgebra:
    """Group algebra with group-like basis; a bialgebra."""
    e = _validate_group(table)
    n = len(table)
    alg = algebra_from_table(field, n, lambda i, j: {table[i][j]: 1},
                             [1 if g == e else 0 for g in range(n)])
    return WeakBialgebra.join(alg, _grouplike_coalgebra(field, n))


def _grouplike_coalgebra(field: FieldSpec, n: int) -> Coalgebra:
    d = field.zeros((n * n, n))
    for g in range(n):
        d[g * n + g, g] = field.one
    counit = LinMap.from_rows(field, [[1] * n])
    return Coalgebra(field, n, LinMap(field, d), counit)


def groupoid_algebra(field: FieldSpec, objects: Sequence, arrows: Sequence[tuple],
                     composition: Mapping[tuple[int, int], int]) -> WeakBialgebra:
    """Groupoid algebra with group-like arrows; a weak bialgebra.

    ``arrows[i] = (source, target)``; ``composition[(a, b)]`` is the arrow
    ``a o b`` (``b`` first), required exactly when ``source(a) == target(b)``.
    The product of two arrows is their composite or zero.
    """
    objs = list(objects)
    n = len(arrows)
    for s, t in arrows:
        if s not in objs or t not in objs:
            raise InvalidPresentation(f"arrow ({s}, {t}) has an unknown end")
    for a in range(n):
        for b in range(n):
            composable = arrows[a][0] == arrows[b][1]
            if composable != ((a, b) in composition):
                raise InvalidPresentation(f"composition of {a} after {b} wrongly specified")
            if composable:
                c = composition[(a, b)]
                if not 0 <= c < n or arrows[c] != (arrows[b][0], arrows[a][1]):
                    raise InvalidPresentation(f"composite of {a} after {b} has wrong ends")
    ids = {}
    for x in objs:
        cands = [i for i in range(n) if arrows[i] == (x, x)
                 and all(composition.get((i, b), b) == b for b in range(n) if arrows[b][1] == x)
                 and all(composition.get((a, i), a) == a for a in range(n) if arrows[a][0] == x)]
        if not cands:
            raise InvalidPresentation(f"object {x!r} has no identity arrow")
        ids[x] = cands[0]
    for (a, b), ab in composition.items():
        for c in range(n):
            if (b, c) in composition and composition.get((ab, c)) != composition[(a, composition[(b, c)])]:
                raise InvalidPresentation(f"composition not associative at {(a, b, c)}")
    for a in range(n):
        s, t = arrows[a]
        if not any(composition.get((b, a)) == ids[s] for b in range(n)):
            raise InvalidPresentation(f"arrow {a} is not invertible")
    unit = [0] * n
    for i in ids.values():
        unit[i] = 1
    alg = algebra_from_table(
        field, n, lambda a, b: {composition[(a, b)]: 1} if (a, b) in composition else {}, unit)
    return WeakBialgebra.join(alg, _grouplike_coalgebra(field, n))


def pointwise_bialgebra(field: FieldSpec, n: int, counit: Sequence | None = None) -> WeakBialgebra:
    """``k^n`` with orthogonal idempotents ``e_i`` that are group-like.

    This is the algebra of the discrete groupoid on ``n`` objects, a weak
    bialgebra that is not a bialgebra for ``n > 1``.  ``counit`` overrides
    the values ``eps(e_i) = 1``.
    """
    c = _grouplike_coalgebra(field, n)
    if counit is not None:
        c = Coalgebra(field, n, c.comult, LinMap.from_rows(field, [list(counit)], (1, n)))
    return WeakBialgebra.join(pointwise_algebra(field, n), c)


def pair_groupoid(objects: Sequence) -> tuple[list, list[tuple], dict]:
    """One arrow between each ordered pair of objects."""
    objs = list(objects)
    arrows = [(s, t) for s in objs for t in objs]
    comp = {}
    for a, (s1, t1) in enumerate(arrows):
        for b, (s2, t2) in enumerate(arrows):
            if s1 == t2:
                comp[(a, b)] = arrows.index((s2, t1))
    return objs, arrows, comp


def matrix_coalgebra(field: FieldSpec, n: int) -> Coalgebra:
    """Comatrix coalgebra: ``D(e_ij) = sum_k e_ik (x) e_kj``, ``eps(e_ij) = delta_ij``."""
    dim = n * n
    d = field.zeros((dim * dim, dim))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                d[(i * n + k) * dim + (k * n + j), i * n + j] = field.one
    counit = LinMap.from_rows(field, [[1 if i == j else 0 for i in range(n) for j in range(n)]])
    return Coalgebra(field, dim, LinMap(field, d), counit)


def dual(x):
    """Transpose structure constants: algebra <-> coalgebra, bialgebra -> bialgebra."""
    if isinstance(x, Algebra):
        return Coalgebra(x.field, x.dim, x.mult.T, x.unit.T)
    if isinstance(x, Coalgebra):
        return Algebra(x.field, x.dim, x.comult.T, x.counit.T)
    if isinstance(x, WeakBialgebra):
        return WeakBialgebra(x.field, x.dim, x.comult.T, x.counit.T, x.mult.T, x.unit.T)
    raise TypeError(f"cannot dualize {type(x).__name__}")


def opposite(a: Algebra) -> Algebra:
    return Algebra(a.field, a.dim, a.mult @ swap(a.field, a.dim, a.dim), a.unit)


def coopposite(c: Coalgebra) -> Coalgebra:
    return Coalgebra(c.field, c.dim, swap(c.field, c.dim, c.dim) @ c.comult, c.counit)


def transport_algebra(a: Algebra, p: LinMap) -> Algebra:
    """The isomorphic algebra in the basis given by the invertible ``p``."""
    q = inverse(p)
    return Algebra(a.field, a.dim, p @ a.mult @ kron(q, q), p @ a.unit)


def transport_coalgebra(c: Coalgebra, p: LinMap) -> Coalgebra:
    q = inverse(p)
    return Coalgebra(c.field, c.dim, kron(p, p) @ c.comult @ q, c.counit @ q)


def zero_algebra_map(field: FieldSpec, dim: int) -> LinMap:
    return zeros(field, dim, dim * dim)


def is_commutative(a: Algebra) -> bool:
    return a.mult == a.mult @ swap(a.field, a.dim, a.dim)


def basis_vector(field: FieldSpec, n: int, i: int) -> LinMap:
    v = field.zeros((n, 1))
    v[i, 0] = field.one
    return LinMap(field, v)


def as_column(field: FieldSpec, values: Sequence) -> LinMap:
    return LinMap.from_rows(field, [[x] for x in values], (len(values), 1))

