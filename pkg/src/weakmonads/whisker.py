"""Juxtaposition and vertical composition of 2-cells in a one-object 2-category.

A word of 1-cells ``X1 X2 ... Xn`` denotes a tensor product of spaces.  Two
readings are supported:

* ``Reading.STANDARD``: ``X1 X2 ... Xn`` is ``X1 (x) X2 (x) ... (x) Xn``.  This
  is the composition of functors ``X (x) -`` acting on the left.
* ``Reading.MODULE``: ``X1 X2 ... Xn`` is ``Xn (x) ... (x) X1``.  This is the
  composition of functors ``- (x) X`` acting on right modules, so that a monad
  ``- (x) A`` has right modules as algebras.

Formulas are written once in juxtaposition form, e.g. ``J(V, mu) @ J(psi, t)``
for the vertical composite of ``V mu`` after ``psi t``, and evaluated in
either reading.  Whiskered cells are lazy: they act on a block of column
vectors factor by factor and never build the dense Kronecker product.
"""

from __future__ import annotations

from enum import Enum
from functools import partial
from math import prod
from typing import Union

import numpy as np

from .exact_linalg import DimensionMismatch, FieldMismatch, FieldSpec, LinMap, permute_factors

__all__ = ["Reading", "Operator", "Juxt", "Chain", "juxt", "juxtaposer", "as_map", "mirror_map"]


class Reading(Enum):
    STANDARD = "standard"
    MODULE = "module"

    @property
    def handedness(self) -> str:
        return "left" if self is Reading.STANDARD else "right"

    @classmethod
    def from_handedness(cls, side: str) -> "Reading":
        if side == "left":
            return cls.STANDARD
        if side == "right":
            return cls.MODULE
        raise ValueError(f"unknown handedness {side!r}")

    def other(self) -> "Reading":
        return Reading.MODULE if self is Reading.STANDARD else Reading.STANDARD


Factor = Union[LinMap, int]


class Operator:
    """Anything with ``dom``, ``cod``, ``field`` and ``apply`` on column blocks."""

    field: FieldSpec
    dom: int
    cod: int

    def apply(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def to_map(self) -> LinMap:
        raise NotImplementedError

    def __matmul__(self, other):
        if isinstance(other, (Operator, LinMap)):
            return Chain.of(self, other)
        return NotImplemented

    def __rmatmul__(self, other):
        if isinstance(other, LinMap):
            return Chain.of(other, self)
        return NotImplemented


class Juxt(Operator):
    """Horizontal composite of cells; integers stand for identity cells."""

    def __init__(self, field: FieldSpec, factors: list[Factor]):
        self.field = field
        self.factors = factors
        self.dom_dims = [f if isinstance(f, int) else f.cols for f in factors]
        self.cod_dims = [f if isinstance(f, int) else f.rows for f in factors]
        self.dom = prod(self.dom_dims)
        self.cod = prod(self.cod_dims)

    def apply(self, x: np.ndarray) -> np.ndarray:
        if x.shape[0] != self.dom:
            raise DimensionMismatch(f"whiskered cell expects {self.dom} rows, got {x.shape[0]}")
        m = x.shape[1]
        n = len(self.factors)
        shape = list(self.dom_dims)
        t = x.reshape(shape + [m])
        for i, f in enumerate(self.factors):
            if isinstance(f, int):
                continue
            front = np.moveaxis(t, i, 0)
            rest = front.shape[1:]
            flat = front.reshape(f.cols, prod(rest))
            out = self.field.dot(f.entries, flat).reshape([f.rows] + list(rest))
            t = np.moveaxis(out, 0, i)
            shape[i] = f.rows
        assert t.ndim == n + 1
        return np.ascontiguousarray(t).reshape(self.cod, m)

    def to_map(self) -> LinMap:
        return LinMap(self.field, self.apply(self.field.eye(self.dom)))

    def __repr__(self):
        parts = [str(f) if isinstance(f, int) else f"<{f.rows}x{f.cols}>" for f in self.factors]
        return "Juxt(" + ", ".join(parts) + ")"


class Chain(Operator):
    """Vertical composite; ``ops[0]`` is applied last."""

    def __init__(self, ops: list):
        self.ops = ops
        self.field = ops[0].field
        for left, right in zip(ops, ops[1:]):
            if left.field != right.field:
                raise FieldMismatch(f"{left.field} vs {right.field}")
            if left.dom != right.cod:
                raise DimensionMismatch(
                    f"cannot compose {left.cod}x{left.dom} after {right.cod}x{right.dom}")
        self.dom = ops[-1].dom
        self.cod = ops[0].cod

    @classmethod
    def of(cls, *items) -> "Chain":
        ops = []
        for it in items:
            ops.extend(it.ops if isinstance(it, Chain) else [it])
        return cls(ops)

    def apply(self, x: np.ndarray) -> np.ndarray:
        for op in reversed(self.ops):
            x = op.apply(x)
        return x

    def to_map(self) -> LinMap:
        last = self.ops[-1]
        x = last.entries if isinstance(last, LinMap) else last.apply(self.field.eye(last.dom))
        for op in reversed(self.ops[:-1]):
            x = op.apply(x)
        return LinMap(self.field, x)


def as_map(x) -> LinMap:
    return x if isinstance(x, LinMap) else x.to_map()


def juxt(reading: Reading, *factors: Factor):
    """Whisker cells: ``juxt(r, X, alpha, Y)`` is the whiskered cell ``X alpha Y``."""
    maps = [f for f in factors if not isinstance(f, int)]
    if not maps:
        raise ValueError("juxtaposition needs at least one non-identity cell")
    field = maps[0].field
    for m in maps:
        if m.field != field:
            raise FieldMismatch(f"{field} vs {m.field}")
    ordered = list(factors) if reading is Reading.STANDARD else list(reversed(factors))
    ordered = [f for f in ordered if not (isinstance(f, int) and f == 1)]
    if len(ordered) == 1 and isinstance(ordered[0], LinMap):
        return ordered[0]
    return Juxt(field, ordered)


def juxtaposer(reading: Reading):
    """``J = juxtaposer(r)`` then ``J(X, alpha, Y)``."""
    return partial(juxt, reading)


def mirror_map(f: LinMap, dom_dims, cod_dims) -> LinMap:
    """Reverse the tensor factors of domain and codomain.

    ``dom_dims`` and ``cod_dims`` list the factors in the order in which
    ``f`` sees them.  This carries a cell from one reading to the other.
    """
    dom_dims, cod_dims = list(dom_dims), list(cod_dims)
    return _reverse(f.field, cod_dims) @ f @ _reverse(f.field, dom_dims[::-1])


def _reverse(field: FieldSpec, dims: list) -> LinMap:
    return permute_factors(field, dims, list(range(len(dims)))[::-1])
