"""Global entanglement and pair-block generalizations for qubit chains.

Brute-force measures on explicit states live in :mod:`.qstate`, the GHZ/W/EPR
benchmarks in :mod:`.paradigm`, the infinite transverse-field Ising chain in
:mod:`.ising`, the finite-ring exact-diagonalization reference in :mod:`.ed`,
and CSV producers in :mod:`.runner`.
"""
from ._errors import (
    ConvergenceError,
    NumericalError,
    QuadratureError,
    UnphysicalStateError,
)
from .ed import ChainSpec, apply_hamiltonian, extrapolate, ground_state, oracle_measures
from .ising import (
    IsingPoint,
    eg1_ising,
    eg2_ising,
    g2l_ising,
    g_correlator,
    ising_point,
    ising_report,
    single_site_rho,
    two_site_rho,
    xx_correlator,
    yy_correlator,
    zz_correlator,
)
from .paradigm import MeasureTriple, ParadigmFamily, build_state, closed_form, thermodynamic_limits
from .quadrature import QuadratureSpec
from .qstate import (
    CorrelatorTable,
    DensityMatrix,
    StateVector,
    concurrence,
    eg2_of_state,
    g2_of_state,
    linear_entropy,
    meyer_wallach,
    partial_trace,
    pauli_decompose,
    purity,
    purity_from_pauli,
    rho_from_pauli,
    von_neumann_entropy,
)
from .records import MeasureReport

__version__ = "0.1.0"
