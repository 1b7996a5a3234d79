"""Thermodynamic-limit transverse-field Ising chain from exact correlators.

The ground state of ``H = lambda sum sx_i sx_{i+1} + sum sz_i`` is described
through the function

    g(l) = 1/pi int_0^pi [cos(k l) + lambda cos(k (l+1))] / D(k) dk,
    D(k) = sqrt(1 + lambda^2 + 2 lambda cos k).

Two-point functions at separation ``l`` are Toeplitz determinants of size
``l`` built from ``g``:

    <sx_1 sx_{1+l}> = det[g(j - k - 1)],   <sy_1 sy_{1+l}> = det[g(j - k + 1)],
    <sz_1 sz_{1+l}> = g(0)^2 - g(l) g(-l),  <sz> = g(0).

Signs follow the ferromagnetic convention ``-lambda sum sx sx - sum sz``,
which is unitarily equivalent to the Hamiltonian above on even rings
(see :func:`qpt_entanglement.ed.to_ferromagnetic_convention`). All
entanglement measures are unaffected by that mapping.

Above the critical coupling the broken-symmetry state has
``<sx> = (1 - lambda^-2)^(1/8)``. The mixed ``<sx sz>`` correlator is set
to zero there. That minimizes the pair purity ``1/4 sum p^2``, so the
two-site measures for ``lambda > 1`` are upper bounds. The table with
``p_xz = 0`` is not itself a positive matrix once ``lambda > 1``;
:func:`two_site_rho` refuses it, and the measures use the table purity
directly. For ``lambda <= 1`` the table is exact and every pair state is
checked for positivity before its purity is used.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._errors import UnphysicalStateError
from .quadrature import QuadratureSpec, integrate
from .qstate import (
    CorrelatorTable,
    DensityMatrix,
    linear_entropy,
    purity_from_pauli,
    rho_from_pauli,
    von_neumann_entropy,
)
from .records import MeasureReport

MAX_G_INDEX = 256
DEFAULT_L_MAX = 15


def _g_integrand(lam: float, ls: np.ndarray):
    shifted = (ls + 0.5)[:, None]

    if lam == 1.0:
        # the cos(k/2) factor cancels against D(k) = 2 cos(k/2)
        return lambda k, pi_minus_k: np.cos(k * shifted)

    def f(k, pi_minus_k):
        # cos(k/2) from the complementary distance keeps D(k) accurate near k = pi
        c = np.sin(0.5 * pi_minus_k)
        s = np.cos(0.5 * pi_minus_k)
        denom = np.sqrt((1.0 - lam) ** 2 + 4.0 * lam * c * c)
        num = ((1.0 + lam) * np.cos(k * shifted) * c
               + (1.0 - lam) * np.sin(k * shifted) * s)
        return num / denom

    return f


def g_values(lam: float, ls, quad: QuadratureSpec | None = None) -> np.ndarray:
    """Evaluate ``g(l)`` for every ``l`` in ``ls`` with one shared quadrature.

    The numerator is rewritten with half angles,
    ``cos(kl) + lam cos(k(l+1)) = (1+lam) cos(k(l+1/2)) cos(k/2)
    + (1-lam) sin(k(l+1/2)) sin(k/2)``, so the integrand stays finite at the
    critical coupling where the two cosine terms would each diverge.
    """
    if lam < 0:
        raise ValueError(f"coupling must be >= 0, got {lam}")
    ls = np.atleast_1d(np.asarray(ls, dtype=int))
    if np.any(np.abs(ls) > MAX_G_INDEX):
        raise ValueError(f"|l| must be <= {MAX_G_INDEX}")
    if lam == 0.0:
        # the integrand reduces to cos(k l): a Kronecker delta
        return (ls == 0).astype(float)
    vals = integrate(_g_integrand(float(lam), ls.astype(float)), 0.0, np.pi, quad)
    return np.asarray(vals) / np.pi


def g_correlator(lam: float, l: int, quad: QuadratureSpec | None = None) -> float:
    return float(g_values(lam, [l], quad)[0])


def magnetization_x(lam: float) -> float:
    """Order parameter of the broken-symmetry ground state."""
    return 0.0 if lam <= 1.0 else (1.0 - lam ** -2) ** 0.125


@dataclass(frozen=True)
class IsingPoint:
    """All analytic ground-state data at one coupling.

    ``g`` covers ``l`` in ``[-l_max-1, l_max+1]``; ``xx``, ``yy``, ``zz`` are
    keyed by separation ``1 .. l_max``.
    """

    lam: float
    g: dict
    sx_mean: float
    sz_mean: float
    xx: dict
    yy: dict
    zz: dict

    @property
    def l_max(self) -> int:
        return max(self.xx) if self.xx else 0


def _toeplitz_det(g: dict, size: int, shift: int) -> float:
    if size == 0:
        return 1.0
    try:
        a = np.array([[g[j - k + shift] for k in range(size)] for j in range(size)])
    except KeyError as exc:
        raise ValueError(f"g({exc.args[0]}) not available for a size-{size} determinant") from None
    return float(np.linalg.det(a))


def xx_correlator(point: IsingPoint, l: int, size: int | None = None) -> float:
    """``<sx_1 sx_{1+l}>`` as the determinant of ``[g(j-k-1)]``.

    ``size`` defaults to the separation ``l``; it is exposed only so the
    matrix-size convention can be tested against exact diagonalization.
    """
    if l < 1:
        raise ValueError(f"separation must be >= 1, got {l}")
    return _toeplitz_det(point.g, l if size is None else size, -1)


def yy_correlator(point: IsingPoint, l: int, size: int | None = None) -> float:
    if l < 1:
        raise ValueError(f"separation must be >= 1, got {l}")
    return _toeplitz_det(point.g, l if size is None else size, 1)


def zz_correlator(point: IsingPoint, l: int) -> float:
    if l < 1:
        raise ValueError(f"separation must be >= 1, got {l}")
    return point.g[0] ** 2 - point.g[l] * point.g[-l]


def ising_point(lam: float, l_max: int = DEFAULT_L_MAX,
                quad: QuadratureSpec | None = None) -> IsingPoint:
    if l_max < 0:
        raise ValueError(f"l_max must be >= 0, got {l_max}")
    ls = np.arange(-l_max - 1, l_max + 2)
    g = dict(zip(ls.tolist(), g_values(lam, ls, quad).tolist()))
    base = IsingPoint(lam=float(lam), g=g, sx_mean=magnetization_x(lam),
                      sz_mean=g[0], xx={}, yy={}, zz={})
    seps = range(1, l_max + 1)
    return IsingPoint(
        lam=base.lam, g=g, sx_mean=base.sx_mean, sz_mean=base.sz_mean,
        xx={l: xx_correlator(base, l) for l in seps},
        yy={l: yy_correlator(base, l) for l in seps},
        zz={l: zz_correlator(base, l) for l in seps},
    )


def single_site_rho(point: IsingPoint) -> DensityMatrix:
    sx, sz = point.sx_mean, point.sz_mean
    return DensityMatrix(0.5 * np.array([[1 + sz, sx], [sx, 1 - sz]], dtype=complex))


def correlator_table(point: IsingPoint, l: int) -> CorrelatorTable:
    if l in point.xx:
        xx, yy, zz = point.xx[l], point.yy[l], point.zz[l]
    else:
        xx, yy, zz = xx_correlator(point, l), yy_correlator(point, l), zz_correlator(point, l)
    sx, sz = point.sx_mean, point.sz_mean
    return CorrelatorTable.from_entries(
        xx=xx, yy=yy, zz=zz, x0=sx, **{"0x": sx}, z0=sz, **{"0z": sz}, xz=0.0, zx=0.0)


def two_site_rho(point: IsingPoint, l: int) -> DensityMatrix:
    try:
        return rho_from_pauli(correlator_table(point, l))
    except UnphysicalStateError as exc:
        raise UnphysicalStateError(f"lambda={point.lam!r}, l={l}: {exc}") from None


def pair_purity(point: IsingPoint, l: int) -> float:
    """``Tr rho_{j,j+l}^2``; the pair state is PSD-validated when it is exact."""
    table = correlator_table(point, l)
    if point.lam <= 1.0:
        two_site_rho(point, l)
    return purity_from_pauli(table)


def eg1_ising(lam: float, quad: QuadratureSpec | None = None) -> float:
    return linear_entropy(single_site_rho(ising_point(lam, 0, quad)))


def g2l_ising(lam: float, l: int, quad: QuadratureSpec | None = None) -> float:
    if l < 1:
        raise ValueError(f"separation must be >= 1, got {l}")
    point = ising_point(lam, l, quad)
    return 4.0 / 3.0 * (1.0 - pair_purity(point, l))


def g2_profile(point: IsingPoint) -> np.ndarray:
    """G(2, l) for ``l = 1 .. point.l_max``."""
    return np.array([4.0 / 3.0 * (1.0 - pair_purity(point, l))
                     for l in range(1, point.l_max + 1)])


def eg2_ising(lam: float, l_max: int = DEFAULT_L_MAX,
              quad: QuadratureSpec | None = None) -> float:
    if l_max < 1:
        raise ValueError(f"l_max must be >= 1, got {l_max}")
    return float(np.mean(g2_profile(ising_point(lam, l_max, quad))))


def ising_report(lam: float, l_max: int = DEFAULT_L_MAX,
                 quad: QuadratureSpec | None = None) -> MeasureReport:
    point = ising_point(lam, l_max, quad)
    rho1 = single_site_rho(point)
    g2l = g2_profile(point)
    return MeasureReport(lam=float(lam), eg1=linear_entropy(rho1), g2l=g2l,
                         eg2=float(np.mean(g2l)), sv_single_site=von_neumann_entropy(rho1, 2))
