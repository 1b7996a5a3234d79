"""Exact diagonalization of the finite periodic transverse-field Ising ring.

``H = lambda sum_i sx_i sx_{i+1} + sum_i sz_i`` with ``sx_{N+1} = sx_1``,
applied matrix-free on the ``2^N`` computational basis (qubit 0 = MSB).

With these signs the field term favours ``sz = -1`` and the bond term is
antiferromagnetic. The unitary ``U = prod_i sx_i * prod_{odd i} sz_i`` maps
``H`` onto ``-lambda sum sx sx - sum sz`` for even ``N``; under it
``<sz>`` flips sign and ``<sa_1 sa_{1+l}>`` picks up ``(-1)^l`` for
``a = x, y``. :func:`to_ferromagnetic_convention` applies that map so ED
correlators can be compared with :mod:`qpt_entanglement.ising` sign by
sign. Entanglement measures are invariant under ``U``.

For ``lambda > 1`` a finite ring has a symmetric (cat-like) ground state,
not the broken-symmetry state of the infinite chain, so ED is a valid
reference only for ``lambda <= 1``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np
import scipy.sparse.linalg as sla

from ._errors import ConvergenceError, NumericalError
from .qstate import (
    PAULI_LABELS,
    StateVector,
    eg2_of_state,
    g2_of_state,
    linear_entropy,
    meyer_wallach,
    partial_trace,
    pauli_decompose,
    von_neumann_entropy,
)
from .records import MeasureReport

log = logging.getLogger(__name__)

MIN_SITES = 2
MAX_SITES = 20
DENSE_CHECK_MAX = 8
DEGENERACY_GAP = 1e-6
SEED = 20060101


@dataclass(frozen=True)
class ChainSpec:
    n_qubits: int
    lam: float
    periodic: bool = True

    def __post_init__(self):
        if not MIN_SITES <= self.n_qubits <= MAX_SITES:
            raise ValueError(f"n_qubits must be in [{MIN_SITES}, {MAX_SITES}], got {self.n_qubits}")
        if self.lam < 0:
            raise ValueError(f"coupling must be >= 0, got {self.lam}")
        if not self.periodic:
            raise ValueError("only periodic chains are supported")


@dataclass(frozen=True)
class GroundStateResult:
    energy: float
    state: StateVector
    residual: float
    iterations: int
    gap: float


class _Operator:
    """Diagonal field energies and bond flip masks for one chain."""

    def __init__(self, n: int, lam: float):
        self.n = n
        self.lam = lam
        idx = np.arange(2 ** n)
        self.idx = idx
        shifts = n - 1 - np.arange(n)
        bits = (idx[:, None] >> shifts) & 1
        self.diag = (n - 2 * bits.sum(axis=1)).astype(float)
        self.masks = [(1 << (n - 1 - i)) | (1 << (n - 1 - (i + 1) % n)) for i in range(n)]

    def __call__(self, v: np.ndarray) -> np.ndarray:
        v = np.ravel(v)
        out = self.diag * v
        if self.lam != 0.0:
            for m in self.masks:
                out = out + self.lam * v[self.idx ^ m]
        return out


def _check_spec(spec: ChainSpec, dim: int):
    if dim != 2 ** spec.n_qubits:
        raise ValueError(f"state has dimension {dim}, chain needs {2 ** spec.n_qubits}")


def apply_hamiltonian(spec: ChainSpec, psi) -> StateVector | np.ndarray:
    """``H psi``. Accepts a StateVector or a raw amplitude array; returns a raw array.

    The image of a normalized state is not normalized, so the result is
    returned as an ndarray.
    """
    amps = psi.amplitudes if isinstance(psi, StateVector) else np.asarray(psi)
    _check_spec(spec, amps.size)
    return _Operator(spec.n_qubits, spec.lam)(amps)


def hamiltonian_matrix(spec: ChainSpec) -> np.ndarray:
    """Dense ``H`` assembled column by column from :func:`apply_hamiltonian`."""
    dim = 2 ** spec.n_qubits
    op = _Operator(spec.n_qubits, spec.lam)
    return np.column_stack([op(col) for col in np.eye(dim)])


def ground_state(spec: ChainSpec, tol: float = 1e-10, maxiter: int = 20000) -> GroundStateResult:
    """Lowest eigenpair via implicitly restarted Lanczos (ARPACK).

    The start vector is drawn from a fixed seed, so results are repeatable.
    The two lowest eigenvalues are computed so the gap can be reported.
    Chains with ``N <= 8`` are cross-checked against dense diagonalization.
    """
    n = spec.n_qubits
    dim = 2 ** n
    op = _Operator(n, spec.lam)
    calls = 0

    def matvec(v):
        nonlocal calls
        calls += 1
        return op(v)

    lin = sla.LinearOperator((dim, dim), matvec=matvec, dtype=float)
    v0 = np.random.default_rng(SEED).normal(size=dim)
    try:
        w, vecs = sla.eigsh(lin, k=2, which="SA", v0=v0, tol=tol * 1e-2,
                            maxiter=maxiter, ncv=min(dim, 24))
    except sla.ArpackNoConvergence as exc:
        raise ConvergenceError(f"Lanczos did not converge for N={n}, lambda={spec.lam}") from exc
    order = np.argsort(w)
    w, vecs = w[order], vecs[:, order]
    psi = vecs[:, 0] / np.linalg.norm(vecs[:, 0])
    # fix the global phase: largest-magnitude amplitude real positive
    k = np.argmax(np.abs(psi))
    psi = psi * np.sign(psi[k])
    energy = float(psi @ op(psi))
    residual = float(np.linalg.norm(op(psi) - energy * psi))
    if residual > tol:
        raise ConvergenceError(f"residual {residual:.3e} > tol {tol:g} for N={n}, lambda={spec.lam}")
    if n <= DENSE_CHECK_MAX:
        exact = np.linalg.eigvalsh(hamiltonian_matrix(spec))[0]
        if abs(exact - energy) > 1e-9 * max(1.0, abs(exact)):
            raise NumericalError(f"Lanczos energy {energy!r} disagrees with dense {exact!r}")
    return GroundStateResult(energy=energy, state=StateVector(n, psi.astype(complex)),
                             residual=residual, iterations=calls, gap=float(w[1] - w[0]))


@dataclass(frozen=True)
class OracleReport(MeasureReport):
    """Measures plus raw correlators of a finite-ring ground state.

    Correlators are in the Hamiltonian's own sign convention; see
    :func:`to_ferromagnetic_convention`. ``eg2`` averages G(2, l) over
    ``l = 1 .. N-1``; ``g2l`` stops at ``l_max``.
    """

    n_qubits: int = 0
    gap: float = float("nan")
    sx_mean: float = 0.0
    sz_mean: float = 0.0
    xx: Mapping[int, float] = field(default_factory=dict)
    yy: Mapping[int, float] = field(default_factory=dict)
    zz: Mapping[int, float] = field(default_factory=dict)

    @property
    def degenerate(self) -> bool:
        return self.gap < DEGENERACY_GAP


def oracle_measures(spec: ChainSpec, l_max: int, gs: GroundStateResult | None = None) -> OracleReport:
    n = spec.n_qubits
    if not 1 <= l_max <= n - 1:
        raise ValueError(f"l_max must be in [1, {n - 1}], got {l_max}")
    gs = gs or ground_state(spec)
    if gs.gap < DEGENERACY_GAP:
        log.warning("N=%d lambda=%g: ground state quasi-degenerate (gap %.2e)", n, spec.lam, gs.gap)
    psi = gs.state
    rho1 = partial_trace(psi, [0])
    xx, yy, zz = {}, {}, {}
    sx = sz = 0.0
    for l in range(1, l_max + 1):
        t = pauli_decompose(partial_trace(psi, [0, l]))
        xx[l], yy[l], zz[l] = t["xx"], t["yy"], t["zz"]
        sx, sz = t["x0"], t["z0"]
    return OracleReport(
        lam=float(spec.lam),
        eg1=meyer_wallach(psi),
        g2l=[g2_of_state(psi, l) for l in range(1, l_max + 1)],
        eg2=eg2_of_state(psi),
        sv_single_site=von_neumann_entropy(rho1, 2),
        n_qubits=n, gap=gs.gap, sx_mean=sx, sz_mean=sz, xx=xx, yy=yy, zz=zz,
    )


def to_ferromagnetic_convention(report: OracleReport) -> dict:
    """Correlators of ``report`` mapped to the ``-lambda sx sx - sz`` convention.

    Returns a dict with keys ``sz``, ``sx`` and ``xx``, ``yy``, ``zz`` (each a
    separation-keyed dict). Requires an even ring.
    """
    if report.n_qubits % 2:
        raise ValueError("the sign map needs an even number of sites")
    return {
        "sz": -report.sz_mean,
        "sx": report.sx_mean,
        "xx": {l: (-1) ** l * v for l, v in report.xx.items()},
        "yy": {l: (-1) ** l * v for l, v in report.yy.items()},
        "zz": dict(report.zz),
    }


@dataclass(frozen=True)
class Extrapolation:
    value: float
    residual: float
    degree: int


def extrapolate(values: Mapping[int, float], degree: int | None = None,
                power: int = 1) -> Extrapolation:
    """Fit a polynomial in ``N^-power`` and evaluate it at ``1/N = 0``.

    ``degree`` defaults to ``len(values) - 1`` (Richardson: the polynomial
    interpolates every point). The returned residual is the RMS misfit of
    the fit, zero for an interpolating polynomial. ``power=2`` suits a
    critical periodic ring, whose leading corrections scale as ``1/N^2``.
    """
    if len(values) < 3:
        raise ValueError(f"extrapolation needs at least 3 sizes, got {len(values)}")
    ns = np.array(sorted(values), dtype=float)
    if len(set(ns)) != len(ns) or np.any(ns <= 0):
        raise ValueError("sizes must be distinct positive integers")
    ys = np.array([values[int(n)] for n in ns], dtype=float)
    deg = len(ns) - 1 if degree is None else int(degree)
    if not 0 <= deg <= len(ns) - 1:
        raise ValueError(f"degree must be in [0, {len(ns) - 1}], got {deg}")
    if power < 1:
        raise ValueError(f"power must be >= 1, got {power}")
    x = ns ** -float(power)
    vander = np.vander(x, deg + 1, increasing=True)
    coef, *_ = np.linalg.lstsq(vander, ys, rcond=None)
    if np.linalg.matrix_rank(vander) < deg + 1:
        raise ValueError("degenerate fit")
    resid = float(np.sqrt(np.mean((vander @ coef - ys) ** 2)))
    return Extrapolation(value=float(coef[0]), residual=resid, degree=deg)


def aitken(values: Mapping[int, float]) -> float:
    """Aitken delta-squared limit of the three largest, equally spaced sizes.

    Exact for geometric convergence, the finite-size behaviour of a gapped
    chain. Falls back to the last value when the second difference vanishes.
    """
    ns = sorted(values)[-3:]
    if len(ns) < 3 or ns[2] - ns[1] != ns[1] - ns[0]:
        raise ValueError("aitken needs three equally spaced sizes")
    a, b, c = (values[n] for n in ns)
    d2 = (c - b) - (b - a)
    if abs(d2) < 1e-300:
        return float(c)
    return float(c - (c - b) ** 2 / d2)
