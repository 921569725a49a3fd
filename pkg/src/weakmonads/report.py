"""Named verdicts for identity checks, with a located witness on failure."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Sequence

import numpy as np

from .exact_linalg import DimensionMismatch
from .whisker import as_map

__all__ = ["Witness", "Verdict", "Report", "compare", "flag"]


@dataclass(frozen=True)
class Witness:
    """First domain basis vector on which two maps differ."""

    basis_index: int
    multi_index: tuple[int, ...] | None
    lhs: tuple
    rhs: tuple

    def to_dict(self) -> dict:
        out = {"basis_index": self.basis_index, "lhs": list(self.lhs), "rhs": list(self.rhs)}
        if self.multi_index is not None:
            out["multi_index"] = list(self.multi_index)
        return out

    def __str__(self):
        where = f"e{self.basis_index}"
        if self.multi_index is not None:
            where += " = e" + "(x)e".join(str(i) for i in self.multi_index)
        return f"{where}: {list(self.lhs)} != {list(self.rhs)}"


@dataclass(frozen=True)
class Verdict:
    tag: str
    passed: bool
    witness: Witness | None = None
    note: str = ""

    def to_dict(self) -> dict:
        out = {"tag": self.tag, "passed": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness.to_dict()
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class Report:
    """Verdicts in order; ``status`` replaces PASS/FAIL in the rendered header."""

    title: str
    verdicts: list[Verdict] = field(default_factory=list)
    status: str | None = None

    @property
    def ok(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def __bool__(self):
        return self.ok

    def __getitem__(self, tag: str) -> Verdict:
        for v in self.verdicts:
            if v.tag == tag:
                return v
        raise KeyError(tag)

    def __contains__(self, tag: str) -> bool:
        return any(v.tag == tag for v in self.verdicts)

    def passed(self, tag: str) -> bool:
        return self[tag].passed

    @property
    def failures(self) -> list[Verdict]:
        return [v for v in self.verdicts if not v.passed]

    def add(self, verdict: Verdict) -> Verdict:
        self.verdicts.append(verdict)
        return verdict

    def extend(self, other: "Report", prefix: str = "") -> None:
        for v in other.verdicts:
            self.verdicts.append(Verdict(prefix + v.tag, v.passed, v.witness, v.note))

    def to_dict(self) -> dict:
        return {"title": self.title, "ok": self.ok,
                "verdicts": [v.to_dict() for v in self.verdicts]}

    def render(self) -> str:
        status = self.status or ("PASS" if self.ok else "FAIL")
        lines = [f"{self.title}: {status}"]
        for v in self.verdicts:
            line = f"  [{'ok' if v.passed else 'FAIL'}] {v.tag}"
            if v.note:
                line += f" ({v.note})"
            if v.witness is not None:
                line += f" at {v.witness}"
            lines.append(line)
        return "\n".join(lines)


def _multi(index: int, dims: Sequence[int] | None):
    if not dims or len(dims) < 2 or prod(dims) == 0:
        return None
    return tuple(int(i) for i in np.unravel_index(index, tuple(dims)))


def compare(tag: str, lhs, rhs, dims: Sequence[int] | None = None) -> Verdict:
    """Exact equality of two (possibly lazy) maps, located on failure.

    ``dims`` optionally gives the tensor factors of the common domain so the
    witness can be reported as a product of basis vectors.
    """
    a, b = as_map(lhs), as_map(rhs)
    if a.shape != b.shape:
        raise DimensionMismatch(f"{tag}: shapes {a.shape} and {b.shape} differ")
    diff = np.nonzero(np.any(a.entries != b.entries, axis=0))[0]
    if len(diff) == 0:
        return Verdict(tag, True)
    j = int(diff[0])
    w = Witness(j, _multi(j, dims), tuple(a.column(j)), tuple(b.column(j)))
    return Verdict(tag, False, w)


def flag(tag: str, passed: bool, note: str = "") -> Verdict:
    return Verdict(tag, bool(passed), None, note)
