"""GHZ, W and EPR-pair states with their exact entanglement values.

``EPR_N`` pairs qubits ``(0, 1), (2, 3), ...`` in zero-based indexing, i.e. the
pairs ``(2j-1, 2j)`` in one-based chain labels. The G(2, l) values of EPR_N
depend on that layout.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .qstate import MAX_QUBITS, StateVector

FAMILIES = ("GHZ", "W", "EPR")


@dataclass(frozen=True)
class ParadigmFamily:
    tag: str
    N: int

    def __post_init__(self):
        if self.tag not in FAMILIES:
            raise ValueError(f"unknown family {self.tag!r}; expected one of {FAMILIES}")
        if not 2 <= self.N <= MAX_QUBITS:
            raise ValueError(f"N must be in [2, {MAX_QUBITS}], got {self.N}")
        if self.tag == "EPR" and self.N % 2:
            raise ValueError(f"EPR needs an even number of qubits, got {self.N}")


@dataclass(frozen=True)
class MeasureTriple:
    eg1: float
    g21: float
    eg2: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.eg1, self.g21, self.eg2)


def build_state(family: ParadigmFamily) -> StateVector:
    n = family.N
    amps = np.zeros(2 ** n, dtype=complex)
    if family.tag == "GHZ":
        amps[0] = amps[-1] = 1 / np.sqrt(2)
    elif family.tag == "W":
        for j in range(n):
            amps[1 << (n - 1 - j)] = 1 / np.sqrt(n)
    else:
        bell = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
        amps = np.ones(1, dtype=complex)
        for _ in range(n // 2):
            amps = np.kron(amps, bell)
    return StateVector(n, amps)


def closed_form(family: ParadigmFamily) -> MeasureTriple:
    """Exact (E_G^(1), G(2,1), E_G^(2)) for a paradigm family.

    Requires ``N >= 3``: at ``N = 2`` every pair is the whole register and
    the GHZ value 2/3 no longer holds.
    """
    n = family.N
    if n < 3:
        raise ValueError(f"closed forms hold for N >= 3, got N={n}")
    if family.tag == "GHZ":
        vals = (Fraction(1), Fraction(2, 3), Fraction(2, 3))
    elif family.tag == "EPR":
        vals = (Fraction(1),
                Fraction(n - 2, 2 * (n - 1)),
                Fraction((2 * n - 1) * (n - 2), 2 * (n - 1) ** 2))
    else:
        g = Fraction(16 * (n - 2), 3 * n * n)
        vals = (Fraction(4 * (n - 1), n * n), g, g)
    return MeasureTriple(*(float(v) for v in vals))


_LIMITS = {
    "GHZ": (1.0, 2 / 3, 2 / 3),
    "EPR": (1.0, 0.5, 1.0),
    "W": (0.0, 0.0, 0.0),
}


def thermodynamic_limits(tag: str) -> MeasureTriple:
    """N -> infinity limits of :func:`closed_form`."""
    if tag not in _LIMITS:
        raise ValueError(f"unknown family {tag!r}; expected one of {FAMILIES}")
    return MeasureTriple(*_LIMITS[tag])
