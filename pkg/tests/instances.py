"""Small named instances shared by the tests."""

from weakmonads import (EntwiningDatum, LinMap, Reading, cyclic_group_table, group_algebra,
                        pointwise_bialgebra, trivial_algebra)


def g2(field):
    """The groupoid algebra of two objects with identity arrows only."""
    return pointwise_bialgebra(field, 2)


def z2(field):
    return group_algebra(field, cyclic_group_table(2))


def partial_z2(field):
    """``A = k`` and ``C = kZ2`` with ``psi(c (x) 1) = 1 (x) (1 + g)/2 eps(c)``.

    This is the entwining of the partial coaction ``1 -> 1 (x) (1 + g)/2``;
    it is partial but not weak.
    """
    half = field.scalar(1) * field.inv(field.scalar(2))
    psi = LinMap.from_rows(field, [[half, half], [half, half]])
    return EntwiningDatum(trivial_algebra(field), z2(field).coalgebra, psi, Reading.MODULE)
