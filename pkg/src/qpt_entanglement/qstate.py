"""Dense state-vector and density-matrix machinery for qubit registers.

Basis convention: qubit 0 is the most significant bit of the computational
basis index, so for three qubits ``|q0 q1 q2>`` has index ``4*q0 + 2*q1 + q2``.
Every module in the package uses this ordering.

Entanglement measures evaluated by brute force on explicit pure states:

* :func:`meyer_wallach` -- global entanglement, the mean single-qubit
  linear entropy.
* :func:`g2_of_state` -- mean linear entropy of qubit pairs at a fixed
  separation with the rest of the register.
* :func:`eg2_of_state` -- mean of :func:`g2_of_state` over all separations.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._errors import UnphysicalStateError

NORM_TOL = 1e-10
HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-8
EIG_FLOOR = 1e-14
IMAG_TOL = 1e-10

MAX_QUBITS = 20
MAX_KEEP = 12

PAULI = {
    "0": np.eye(2, dtype=complex),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}
PAULI_LABELS = ("0", "x", "y", "z")


@dataclass(frozen=True)
class StateVector:
    """Normalized pure state of ``n_qubits`` qubits (qubit 0 = MSB)."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if self.n_qubits < 1 or self.n_qubits > MAX_QUBITS:
            raise ValueError(f"n_qubits must be in [1, {MAX_QUBITS}], got {self.n_qubits}")
        if amps.size != 2 ** self.n_qubits:
            raise ValueError(f"expected {2 ** self.n_qubits} amplitudes, got {amps.size}")
        norm = np.vdot(amps, amps).real
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized: <psi|psi> = {norm!r}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, amplitudes, normalize: bool = False) -> "StateVector":
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        n = int(round(np.log2(amps.size))) if amps.size else 0
        if normalize:
            amps = amps / np.linalg.norm(amps)
        return cls(n, amps)

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape((2,) * self.n_qubits)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite matrix."""

    entries: np.ndarray

    def __post_init__(self):
        m = np.array(self.entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise ValueError(f"density matrix must be square, got shape {m.shape}")
        herm = np.max(np.abs(m - m.conj().T))
        if herm > HERMITIAN_TOL:
            raise ValueError(f"matrix is not Hermitian (max deviation {herm:.3e})")
        tr = np.trace(m).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"trace is {tr!r}, expected 1")
        m = 0.5 * (m + m.conj().T)
        lo = np.linalg.eigvalsh(m)[0]
        if lo < -PSD_TOL:
            raise UnphysicalStateError(f"density matrix has eigenvalue {lo:.3e} < -{PSD_TOL:g}")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.entries)


@dataclass(frozen=True)
class CorrelatorTable:
    """Two-qubit Pauli expansion ``rho = 1/4 sum p[a, b] s^a (x) s^b``.

    Rows and columns are indexed by ``0, x, y, z``.
    """

    p: np.ndarray

    def __post_init__(self):
        p = np.array(self.p, dtype=float)
        if p.shape != (4, 4):
            raise ValueError(f"correlator table must be 4x4, got {p.shape}")
        if abs(p[0, 0] - 1.0) > 1e-12:
            raise ValueError(f"p[0][0] must be 1 (normalization), got {p[0, 0]!r}")
        if np.any(np.abs(p) > 1.0 + 1e-9):
            raise ValueError("correlator table entries must lie in [-1, 1]")
        p.setflags(write=False)
        object.__setattr__(self, "p", p)

    def __getitem__(self, key: str) -> float:
        """``table["xz"]`` returns ``p[x][z]``."""
        a, b = key
        return float(self.p[PAULI_LABELS.index(a), PAULI_LABELS.index(b)])

    @classmethod
    def from_entries(cls, **entries: float) -> "CorrelatorTable":
        """Build a table from keyword entries such as ``xx=0.3, z0=0.6``.

        ``p00`` is always 1; unspecified entries are zero.
        """
        p = np.zeros((4, 4))
        p[0, 0] = 1.0
        for key, val in entries.items():
            a, b = key
            p[PAULI_LABELS.index(a), PAULI_LABELS.index(b)] = val
        return cls(p)


def _as_rho(rho) -> DensityMatrix:
    return rho if isinstance(rho, DensityMatrix) else DensityMatrix(rho)


def _as_state(state) -> StateVector:
    return state if isinstance(state, StateVector) else StateVector.from_amplitudes(state)


def partial_trace(state: StateVector, keep: Sequence[int]) -> DensityMatrix:
    """Reduced density matrix of the qubits in ``keep``.

    The qubit order of the result follows the order of ``keep``; the first
    listed qubit becomes the most significant bit of the reduced basis.
    """
    state = _as_state(state)
    keep = [int(q) for q in keep]
    n = state.n_qubits
    if not keep:
        raise ValueError("keep must name at least one qubit")
    if len(set(keep)) != len(keep):
        raise ValueError(f"keep has repeated qubits: {keep}")
    if any(q < 0 or q >= n for q in keep):
        raise IndexError(f"qubit index out of range for {n} qubits: {keep}")
    if len(keep) > MAX_KEEP:
        raise ValueError(f"cannot keep more than {MAX_KEEP} qubits (output dim cap 4096)")
    rest = [q for q in range(n) if q not in keep]
    psi = np.transpose(state.tensor(), keep + rest).reshape(2 ** len(keep), -1)
    return DensityMatrix(psi @ psi.conj().T)


def purity(rho) -> float:
    m = _as_rho(rho).entries
    # Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    return float(np.sum(np.abs(m) ** 2))


def linear_entropy(rho) -> float:
    """Normalized linear entropy ``d/(d-1) (1 - Tr rho^2)``, in ``[0, 1]``."""
    rho = _as_rho(rho)
    d = rho.dim
    if d == 1:
        return 0.0
    return d / (d - 1) * (1.0 - purity(rho))


def von_neumann_entropy(rho, log_base: int = 2) -> float:
    """``-Tr rho log(rho)`` in base ``log_base``; eigenvalues below 1e-14 are dropped."""
    if log_base < 2:
        raise ValueError(f"log_base must be >= 2, got {log_base}")
    ev = _as_rho(rho).eigenvalues()
    ev = ev[ev > EIG_FLOOR]
    return float(max(0.0, -np.sum(ev * np.log(ev)) / np.log(log_base)))


def _psd_sqrt(m: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(m)
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T


def concurrence(rho) -> float:
    """Wootters concurrence of a two-qubit density matrix."""
    rho = _as_rho(rho)
    if rho.dim != 4:
        raise ValueError(f"concurrence needs a 4x4 density matrix, got dim {rho.dim}")
    m = rho.entries
    yy = np.kron(PAULI["y"], PAULI["y"])
    flipped = yy @ m.conj() @ yy
    # singular values of sqrt(rho) sqrt(rho~) are the square roots of the
    # eigenvalues of rho rho~, obtained without a non-Hermitian eigensolve
    s = np.linalg.svd(_psd_sqrt(m) @ _psd_sqrt(flipped), compute_uv=False)
    s = np.sort(s)[::-1]
    return float(max(0.0, s[0] - s[1] - s[2] - s[3]))


def meyer_wallach(state: StateVector) -> float:
    """Global entanglement ``2 - (2/N) sum_j Tr(rho_j^2)``."""
    state = _as_state(state)
    n = state.n_qubits
    if n < 2:
        raise ValueError("global entanglement needs at least 2 qubits")
    total = sum(purity(partial_trace(state, [j])) for j in range(n))
    return 2.0 - 2.0 * total / n


def pair_purities(state: StateVector, l: int, cyclic: bool = False) -> np.ndarray:
    """``Tr rho_{j, j+l}^2`` for ``j = 0 .. N-l-1`` (or all ``N`` pairs mod ``N``)."""
    state = _as_state(state)
    n = state.n_qubits
    if not 1 <= l <= n - 1:
        raise ValueError(f"separation l must be in [1, {n - 1}], got {l}")
    if cyclic:
        pairs = [(j, (j + l) % n) for j in range(n)]
    else:
        pairs = [(j, j + l) for j in range(n - l)]
    return np.array([purity(partial_trace(state, p)) for p in pairs])


def g2_of_state(state: StateVector, l: int, cyclic: bool = False) -> float:
    """Mean two-qubit linear entropy at separation ``l``.

    By default pairs ``(j, j+l)`` with ``j + l < N`` are averaged (open chain
    indexing). ``cyclic=True`` averages over all ``N`` ring pairs instead.
    """
    return 4.0 / 3.0 * (1.0 - float(np.mean(pair_purities(state, l, cyclic))))


def eg2_of_state(state: StateVector, cyclic: bool = False) -> float:
    state = _as_state(state)
    n = state.n_qubits
    if n < 3:
        raise ValueError("E_G^(2) needs at least 3 qubits")
    return float(np.mean([g2_of_state(state, l, cyclic) for l in range(1, n)]))


def pauli_decompose(rho) -> CorrelatorTable:
    """Expectation values ``p[a][b] = Tr[(s^a (x) s^b) rho]``."""
    rho = _as_rho(rho)
    if rho.dim != 4:
        raise ValueError(f"pauli_decompose needs a 4x4 density matrix, got dim {rho.dim}")
    p = np.empty((4, 4), dtype=complex)
    for i, a in enumerate(PAULI_LABELS):
        for j, b in enumerate(PAULI_LABELS):
            p[i, j] = np.trace(np.kron(PAULI[a], PAULI[b]) @ rho.entries)
    resid = np.max(np.abs(p.imag))
    if resid > IMAG_TOL:
        raise ValueError(f"imaginary residue {resid:.3e} in Pauli expectations (non-Hermitian input?)")
    p = p.real
    p[0, 0] = 1.0
    return CorrelatorTable(np.clip(p, -1.0, 1.0))


def pauli_matrix(table: CorrelatorTable) -> np.ndarray:
    """``1/4 sum p[a][b] s^a (x) s^b`` as a raw Hermitian array, not checked for positivity."""
    m = np.zeros((4, 4), dtype=complex)
    for i, a in enumerate(PAULI_LABELS):
        for j, b in enumerate(PAULI_LABELS):
            if table.p[i, j] != 0.0:
                m += table.p[i, j] * np.kron(PAULI[a], PAULI[b])
    return m / 4.0


def rho_from_pauli(table: CorrelatorTable) -> DensityMatrix:
    """Density matrix with Pauli expectations ``table``; raises if not PSD."""
    return DensityMatrix(pauli_matrix(table))


def purity_from_pauli(table: CorrelatorTable) -> float:
    # Pauli strings are orthogonal under the trace inner product
    return float(np.sum(table.p ** 2) / 4.0)


def random_state(n_qubits: int, rng: np.random.Generator) -> StateVector:
    """Haar-random pure state."""
    z = rng.normal(size=2 ** n_qubits) + 1j * rng.normal(size=2 ** n_qubits)
    return StateVector(n_qubits, z / np.linalg.norm(z))
