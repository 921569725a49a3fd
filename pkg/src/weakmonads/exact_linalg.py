"""Exact dense linear algebra over the rationals and prime fields.

Matrices act on column vectors: a map with domain dimension ``cols`` and
codomain dimension ``rows``.  Tensor products of basis vectors use the
row-major convention ``(i, j) -> i * dim2 + j`` with the leftmost factor
outermost, which is exactly what ``numpy.kron`` produces.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "FieldSpec", "QQ", "GF", "LinMap", "Splitting", "Quotient",
    "LinalgError", "DimensionMismatch", "FieldMismatch", "NotIdempotent", "NotSquare",
    "compose", "kron", "identity", "zeros", "rref", "rank", "nullspace",
    "split_idempotent", "cokernel", "inverse", "permute_factors", "swap",
]


class LinalgError(ValueError):
    pass


class DimensionMismatch(LinalgError):
    pass


class FieldMismatch(LinalgError):
    pass


class NotIdempotent(LinalgError):
    pass


class NotSquare(LinalgError):
    pass


_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(p: int) -> bool:
    # Miller-Rabin with fixed bases, deterministic below 3.3e24
    if p < 2:
        return False
    for q in _WITNESSES:
        if p % q == 0:
            return p == q
    d, r = p - 1, 0
    while d % 2 == 0:
        d, r = d // 2, r + 1
    for a in _WITNESSES:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(r - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


# float64 holds integers exactly below 2**53
_FLOAT_EXACT = 2 ** 53


@dataclass(frozen=True)
class FieldSpec:
    """The rationals (``p is None``) or the prime field with ``p`` elements."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def name(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"

    def __repr__(self):
        return self.name

    # scalars

    def scalar(self, x):
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def neg(self, x):
        return -x if self.p is None else (-int(x)) % self.p

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / Fraction(x)
        return pow(int(x), -1, self.p)

    @property
    def zero(self):
        return self.scalar(0)

    @property
    def one(self):
        return self.scalar(1)

    # arrays

    @property
    def _wide(self) -> bool:
        return self.p is not None and self.p >= 2 ** 31

    def array(self, data) -> np.ndarray:
        """Coerce nested data into a normalized 2-d array for this field."""
        raw = np.array(data, dtype=object)
        if raw.ndim != 2:
            raise DimensionMismatch(f"expected a 2-d array, got {raw.ndim}-d")
        out = np.empty(raw.shape, dtype=object)
        for idx, x in np.ndenumerate(raw):
            out[idx] = self.scalar(x)
        return self._settle(out)

    def _settle(self, a: np.ndarray) -> np.ndarray:
        if self.p is None or self._wide:
            return a.astype(object)
        return a.astype(np.int64)

    def reduce(self, a: np.ndarray) -> np.ndarray:
        if self.p is None:
            return a
        return a % self.p

    def zeros(self, shape) -> np.ndarray:
        if self.p is None:
            out = np.empty(shape, dtype=object)
            out.fill(Fraction(0))
            return out
        return self._settle(np.zeros(shape, dtype=np.int64))

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.one
        return out

    def dot(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        inner = a.shape[1]
        if inner == 0:
            return self.zeros((a.shape[0], b.shape[1]))
        if self.p is None:
            return np.dot(a, b)
        bound = inner * (self.p - 1) ** 2
        if bound < _FLOAT_EXACT:
            prod_ = np.dot(a.astype(np.float64), b.astype(np.float64))
            return np.rint(prod_).astype(np.int64) % self.p
        if bound < 2 ** 63 and not self._wide:
            return np.dot(a, b) % self.p
        return np.dot(a.astype(object), b.astype(object)) % self.p

    def random(self, rng: np.random.Generator, shape, spread: int = 3) -> np.ndarray:
        """Uniform entries for a prime field; small integers for the rationals."""
        if self.p is None:
            ints = rng.integers(-spread, spread + 1, size=shape)
            return np.vectorize(Fraction, otypes=[object])(ints) if ints.size else self.zeros(shape)
        return self._settle(rng.integers(0, self.p, size=shape))

    # text

    def format(self, x) -> str | int:
        if self.p is None:
            x = Fraction(x)
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return int(x)

    def parse(self, token):
        if self.p is None:
            if isinstance(token, bool) or not isinstance(token, (int, str)):
                raise ValueError(f"bad rational entry {token!r}")
            return Fraction(token)
        if isinstance(token, bool):
            raise ValueError(f"bad residue {token!r}")
        if isinstance(token, str):
            return self.scalar(Fraction(token))
        if not isinstance(token, int):
            raise ValueError(f"bad residue {token!r}")
        return token % self.p


QQ = FieldSpec()


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)


class LinMap:
    """An immutable exact matrix ``rows x cols`` (codomain x domain)."""

    __slots__ = ("field", "entries", "_hash")

    def __init__(self, field: FieldSpec, entries: np.ndarray):
        if entries.ndim != 2:
            raise DimensionMismatch("entries must be 2-d")
        entries = field._settle(entries)
        entries.flags.writeable = False
        self.field = field
        self.entries = entries
        self._hash = None

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence], shape=None) -> "LinMap":
        if shape is not None and len(rows) == 0:
            return zeros(field, *shape)
        arr = field.array(rows)
        if shape is not None and arr.shape != tuple(shape):
            raise DimensionMismatch(f"expected shape {shape}, got {arr.shape}")
        return cls(field, arr)

    @classmethod
    def from_columns(cls, field: FieldSpec, cols: Sequence[Sequence], rows: int) -> "LinMap":
        if len(cols) == 0:
            return zeros(field, rows, 0)
        return cls.from_rows(field, list(zip(*cols))) if rows else zeros(field, 0, len(cols))

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    @property
    def dom(self) -> int:
        return self.cols

    @property
    def cod(self) -> int:
        return self.rows

    @property
    def T(self) -> "LinMap":
        return LinMap(self.field, self.entries.T.copy())

    def __getitem__(self, idx):
        return self.entries[idx]

    def apply(self, x: np.ndarray) -> np.ndarray:
        if x.shape[0] != self.cols:
            raise DimensionMismatch(f"cannot apply {self.shape} map to {x.shape[0]} rows")
        return self.field.dot(self.entries, x)

    def to_map(self) -> "LinMap":
        return self

    def __matmul__(self, other):
        if isinstance(other, LinMap):
            return compose(self, other)
        return NotImplemented

    def __add__(self, other: "LinMap") -> "LinMap":
        _check_same(self, other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return LinMap(self.field, self.field.reduce(self.entries + other.entries))

    def __neg__(self) -> "LinMap":
        return LinMap(self.field, self.field.reduce(-self.entries))

    def __sub__(self, other: "LinMap") -> "LinMap":
        return self + (-other)

    def scale(self, c) -> "LinMap":
        c = self.field.scalar(c)
        return LinMap(self.field, self.field.reduce(self.entries * c))

    def __eq__(self, other):
        if not isinstance(other, LinMap):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and bool(np.array_equal(self.entries, other.entries)))

    def __hash__(self):
        if self._hash is None:
            flat = tuple(self.field.format(x) for x in self.entries.flat)
            self._hash = hash((self.field, self.shape, flat))
        return self._hash

    def is_zero(self) -> bool:
        return not np.any(self.entries != 0)

    def tolist(self) -> list[list]:
        return [[self.field.format(x) for x in row] for row in self.entries]

    def column(self, j: int) -> list:
        return [self.field.format(x) for x in self.entries[:, j]]

    def __repr__(self):
        return f"LinMap({self.field.name}, {self.rows}x{self.cols}, {self.tolist()})"


def _check_same(f: LinMap, g: LinMap):
    if f.field != g.field:
        raise FieldMismatch(f"{f.field} vs {g.field}")


def identity(field: FieldSpec, n: int) -> LinMap:
    return LinMap(field, field.eye(n))


def zeros(field: FieldSpec, rows: int, cols: int) -> LinMap:
    return LinMap(field, field.zeros((rows, cols)))


def compose(g: LinMap, f: LinMap) -> LinMap:
    """``g`` after ``f``."""
    _check_same(g, f)
    if g.cols != f.rows:
        raise DimensionMismatch(f"cannot compose {g.shape} after {f.shape}")
    return LinMap(g.field, g.field.dot(g.entries, f.entries))


def kron(*maps: LinMap) -> LinMap:
    if not maps:
        raise ValueError("kron needs at least one factor")
    field = maps[0].field
    out = maps[0].entries
    for m in maps[1:]:
        if m.field != field:
            raise FieldMismatch(f"{field} vs {m.field}")
        out = np.kron(out, m.entries)
    return LinMap(field, field.reduce(out))


def rref(f: LinMap) -> tuple[LinMap, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    field = f.field
    a = f.entries.copy()
    if field.p is not None and not field._wide:
        a = a.astype(np.int64)
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c] != 0)[0]
        if len(nz) == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = field.reduce(a[r] * field.inv(a[r, c]))
        col = a[:, c].copy()
        col[r] = field.zero
        if np.any(col != 0):
            a = field.reduce(a - np.outer(col, a[r]))
        pivots.append(c)
        r += 1
    return LinMap(field, a), pivots


def rank(f: LinMap) -> int:
    return len(rref(f)[1])


def nullspace(f: LinMap) -> LinMap:
    """Columns form a basis of the kernel, one per free column in echelon order."""
    field = f.field
    r, pivots = rref(f)
    free = [c for c in range(f.cols) if c not in set(pivots)]
    basis = field.zeros((f.cols, len(free)))
    for k, c in enumerate(free):
        basis[c, k] = field.one
        for i, pc in enumerate(pivots):
            basis[pc, k] = field.neg(r.entries[i, c])
    return LinMap(field, basis)


def inverse(f: LinMap) -> LinMap:
    if f.rows != f.cols:
        raise NotSquare(f"{f.shape} is not square")
    n = f.rows
    aug = LinMap(f.field, np.concatenate([f.entries, f.field.eye(n)], axis=1))
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise LinalgError("map is singular")
    return LinMap(f.field, r.entries[:, n:].copy())


@dataclass(frozen=True)
class Splitting:
    """``e = iota @ pi`` with ``pi @ iota`` the identity of the retract."""

    e: LinMap
    retract_dim: int
    iota: LinMap
    pi: LinMap


def split_idempotent(e: LinMap) -> Splitting:
    """Canonical rank factorization of an idempotent through its echelon form."""
    if e.rows != e.cols:
        raise NotSquare(f"{e.shape} is not square")
    if e @ e != e:
        raise NotIdempotent("e @ e != e")
    r, pivots = rref(e)
    k = len(pivots)
    pi = LinMap(e.field, r.entries[:k].copy())
    iota = LinMap(e.field, e.entries[:, pivots].copy())
    return Splitting(e, k, iota, pi)


@dataclass(frozen=True)
class Quotient:
    """Projection onto the cokernel together with a section of it."""

    proj: LinMap
    dim: int
    section: LinMap

    def __iter__(self):
        yield self.proj
        yield self.dim


def cokernel(f: LinMap) -> Quotient:
    """Quotient of the codomain by the column space of ``f``.

    The quotient basis is the set of coordinates that are not pivots of the
    echelon form of the column space, in increasing order.
    """
    field = f.field
    n = f.rows
    r, pivots = rref(f.T)
    pset = set(pivots)
    rest = [j for j in range(n) if j not in pset]
    proj = field.zeros((len(rest), n))
    section = field.zeros((n, len(rest)))
    for k, j in enumerate(rest):
        proj[k, j] = field.one
        section[j, k] = field.one
    for i, pc in enumerate(pivots):
        for k, j in enumerate(rest):
            v = r.entries[i, j]
            if v != 0:
                proj[k, pc] = field.neg(v)
    return Quotient(LinMap(field, proj), len(rest), LinMap(field, section))


def permute_factors(field: FieldSpec, dims: Sequence[int], perm: Sequence[int]) -> LinMap:
    """Map ``X_0 (x) ... (x) X_{n-1} -> X_{perm[0]} (x) ... (x) X_{perm[n-1]}``."""
    dims = list(dims)
    if sorted(perm) != list(range(len(dims))):
        raise ValueError(f"{perm} is not a permutation")
    total = prod(dims)
    src = np.arange(total).reshape(dims) if dims else np.arange(1)
    # output position with multi-index (j_0..j_{n-1}) holds source index with i_{perm[k]} = j_k
    moved = np.transpose(src, perm).reshape(-1) if dims else src
    out = field.zeros((total, total))
    for row, col in enumerate(moved):
        out[row, col] = field.one
    return LinMap(field, out)


def swap(field: FieldSpec, m: int, n: int) -> LinMap:
    """The flip ``X (x) Y -> Y (x) X`` for ``dim X = m``, ``dim Y = n``."""
    return permute_factors(field, [m, n], [1, 0])


def block_columns(maps: Iterable[LinMap]) -> LinMap:
    """Place maps side by side (same codomain)."""
    maps = list(maps)
    field = maps[0].field
    return LinMap(field, np.concatenate([m.entries for m in maps], axis=1))


def block_rows(maps: Iterable[LinMap]) -> LinMap:
    """Stack maps on top of each other (same domain)."""
    maps = list(maps)
    field = maps[0].field
    return LinMap(field, np.concatenate([m.entries for m in maps], axis=0))
