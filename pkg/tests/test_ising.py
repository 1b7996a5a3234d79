import numpy as np
import pytest
from scipy.integrate import quad as scipy_quad

from qpt_entanglement import QuadratureError, UnphysicalStateError, ed
from qpt_entanglement.ising import (
    correlator_table,
    eg1_ising,
    eg2_ising,
    g2_profile,
    g2l_ising,
    g_correlator,
    g_values,
    ising_point,
    single_site_rho,
    two_site_rho,
    xx_correlator,
    yy_correlator,
    zz_correlator,
)
from qpt_entanglement.quadrature import QuadratureSpec, integrate
from qpt_entanglement.qstate import (
    PAULI,
    pauli_matrix,
    purity,
    purity_from_pauli,
    von_neumann_entropy,
)

TWO_OVER_PI = 2 / np.pi


def g_reference(lam, l, rooted=True):
    """scipy QUADPACK on the integrand as written, no half-angle rewrite."""
    def f(k):
        d = 1 + lam ** 2 + 2 * lam * np.cos(k)
        return (np.cos(k * l) + lam * np.cos(k * (l + 1))) / (np.sqrt(d) if rooted else d)
    return scipy_quad(f, 0, np.pi, limit=400, epsabs=1e-13, epsrel=1e-13)[0] / np.pi


class TestG:
    def test_zero_coupling(self):
        assert g_correlator(0.0, 0) == 1.0
        assert np.all(g_values(0.0, range(1, 10)) == 0.0)
        assert np.all(g_values(0.0, range(-10, 0)) == 0.0)

    def test_critical_closed_form(self):
        assert g_correlator(1.0, 0) == pytest.approx(TWO_OVER_PI, abs=1e-12)

    @pytest.mark.parametrize("lam", [0.3, 0.7, 0.95, 1.5, 3.0])
    def test_against_scipy(self, lam):
        ls = np.arange(-6, 7)
        ref = [g_reference(lam, l) for l in ls]
        assert g_values(lam, ls) == pytest.approx(ref, abs=1e-9)

    def test_g_is_not_even(self):
        assert abs(g_correlator(0.5, 1) - g_correlator(0.5, -1)) > 0.1

    @pytest.mark.parametrize("lam", [0.5, 0.999, 1.0, 1.001, 2.0])
    def test_converged_against_doubled_budget(self, lam):
        ls = np.arange(-16, 17)
        base = g_values(lam, ls)
        fine = g_values(lam, ls, QuadratureSpec(max_nodes=16384, rel_tol=1e-13))
        assert np.max(np.abs(base - fine)) < 1e-10

    def test_rules_agree_away_from_criticality(self):
        ls = np.arange(-5, 6)
        a = g_values(0.5, ls, QuadratureSpec(rule="trapezoid"))
        b = g_values(0.5, ls, QuadratureSpec(rule="tanh-sinh"))
        assert np.max(np.abs(a - b)) < 1e-10

    def test_hard_failure(self):
        with pytest.raises(QuadratureError):
            g_values(1.0, [0, 1], QuadratureSpec(rule="trapezoid"))
        with pytest.raises(QuadratureError):
            g_correlator(0.999, 30, QuadratureSpec(max_nodes=32))

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            g_correlator(-0.1, 0)
        with pytest.raises(ValueError):
            g_correlator(0.5, 300)


class TestDenominatorReading:
    """The printed denominator 1 + lam^2 + 2 lam cos k, without the root."""

    def test_printed_reading_diverges_at_criticality(self):
        # L(0) at lam = 1 integrates 1/(2 + 2 cos k) = 1/(4 sin^2((pi - k)/2))
        def l_term(k, pi_minus_k):
            return 1.0 / (4 * np.sin(0.5 * pi_minus_k) ** 2)

        with pytest.raises(QuadratureError):
            integrate(l_term, 0.0, np.pi)

    def test_ed_selects_square_root(self):
        lam = 0.5
        ed_sz = -ed.oracle_measures(ed.ChainSpec(12, lam), 1).sz_mean
        rooted = g_reference(lam, 0, rooted=True)
        printed = g_reference(lam, 0, rooted=False)
        assert abs(rooted - ed_sz) < 1e-3
        assert abs(printed - ed_sz) > 5e-2


class TestPoint:
    @pytest.mark.parametrize("lam", [0.0, 0.4, 1.0, 1.3, 2.0])
    def test_invariants(self, lam):
        p = ising_point(lam, 8)
        assert p.sz_mean == p.g[0]
        if lam <= 1:
            assert p.sx_mean == 0.0
        else:
            assert p.sx_mean == pytest.approx((1 - lam ** -2) ** 0.125, abs=1e-15)
        for d in (p.xx, p.yy, p.zz):
            assert all(abs(v) <= 1 + 1e-9 for v in d.values())
        assert set(p.g) == set(range(-9, 10))

    def test_zero_coupling_correlators(self):
        p = ising_point(0.0, 5)
        for l in range(1, 6):
            assert xx_correlator(p, l) == 0.0
            assert yy_correlator(p, l) == 0.0
            assert zz_correlator(p, l) == 1.0

    def test_zz_plug_in(self):
        p = ising_point(1.0, 3)
        expected = TWO_OVER_PI ** 2 - g_reference(1.0, 1) * g_reference(1.0, -1)
        assert zz_correlator(p, 1) == pytest.approx(expected, abs=1e-9)

    def test_toeplitz_small_cases(self):
        p = ising_point(0.6, 3)
        assert xx_correlator(p, 1) == pytest.approx(p.g[-1], abs=1e-15)
        assert yy_correlator(p, 1) == pytest.approx(p.g[1], abs=1e-15)
        det2 = p.g[-1] ** 2 - p.g[-2] * p.g[0]
        assert xx_correlator(p, 2) == pytest.approx(det2, abs=1e-14)

    def test_missing_g_values(self):
        p = ising_point(0.6, 2)
        with pytest.raises(ValueError):
            xx_correlator(p, 5)

    def test_large_coupling_saturation(self):
        lam = 50.0
        p = ising_point(lam, 2)
        assert xx_correlator(p, 1) == pytest.approx((1 - lam ** -2) ** 0.25, abs=1e-3)
        ring = ed.oracle_measures(ed.ChainSpec(16, lam), 1)
        assert abs(ring.xx[1]) == pytest.approx(xx_correlator(p, 1), abs=1e-3)

    def test_large_coupling_zz_vanishes(self):
        p = ising_point(100.0, 3)
        ring = ed.oracle_measures(ed.ChainSpec(12, 100.0), 3)
        for l in (1, 2, 3):
            assert abs(zz_correlator(p, l)) < 1e-3
            assert abs(ring.zz[l]) == pytest.approx(abs(zz_correlator(p, l)), abs=1e-3)


class TestReducedStates:
    def test_single_site(self):
        assert np.allclose(single_site_rho(ising_point(0.0, 0)).entries, np.diag([1, 0]))
        rho1 = single_site_rho(ising_point(1.0, 0)).entries
        assert np.allclose(rho1, (PAULI["0"] + TWO_OVER_PI * PAULI["z"]) / 2, atol=1e-12)
        p2 = ising_point(2.0, 0)
        expected = (PAULI["0"] + 0.75 ** 0.125 * PAULI["x"] + p2.g[0] * PAULI["z"]) / 2
        assert np.allclose(single_site_rho(p2).entries, expected, atol=1e-15)

    def test_two_site_product_at_zero(self):
        rho = two_site_rho(ising_point(0.0, 1), 1)
        assert np.allclose(rho.entries, np.diag([1.0, 0, 0, 0]))

    def test_two_site_table_at_criticality(self):
        p = ising_point(1.0, 1)
        t = correlator_table(p, 1)
        assert t["0z"] == t["z0"] == pytest.approx(TWO_OVER_PI, abs=1e-12)
        assert t["zz"] == pytest.approx(TWO_OVER_PI ** 2 - p.g[1] * p.g[-1])
        assert t["xx"] == xx_correlator(p, 1) and t["yy"] == yy_correlator(p, 1)
        assert t["xz"] == t["zx"] == t["0x"] == 0.0

    @pytest.mark.parametrize("lam", [0.3, 1.0, 1.2, 2.0])
    def test_purity_paths_agree(self, lam):
        p = ising_point(lam, 4)
        for l in range(1, 5):
            t = correlator_table(p, l)
            assert purity_from_pauli(t) == pytest.approx(np.sum(np.abs(pauli_matrix(t)) ** 2), abs=1e-12)

    def test_all_exact_pair_states_are_physical(self):
        for lam in np.linspace(0.0, 1.0, 101):
            p = ising_point(lam, 15)
            for l in range(1, 16):
                two_site_rho(p, l)

    @pytest.mark.parametrize("lam", [1.001, 1.1, 2.0])
    def test_upper_bound_table_is_not_a_state(self, lam):
        # p_xz = 0 minimizes the pair purity but violates positivity above lambda = 1
        with pytest.raises(UnphysicalStateError, match="lambda="):
            two_site_rho(ising_point(lam, 1), 1)
        assert 0.0 <= g2l_ising(lam, 1) <= 1.0


class TestMeasures:
    def test_eg1_values(self):
        assert eg1_ising(0.0) == 0.0
        assert eg1_ising(1.0) == pytest.approx(1 - TWO_OVER_PI ** 2, abs=1e-12)
        assert 1 - TWO_OVER_PI ** 2 == pytest.approx(0.594715, abs=1e-6)
        assert eg1_ising(100.0) < 0.02

    def test_g2_zero_coupling(self):
        assert all(g2l_ising(0.0, l) == 0.0 for l in (1, 4, 9))
        assert eg2_ising(0.0) == 0.0

    def test_critical_profile_increases(self):
        prof = g2_profile(ising_point(1.0, 50))
        assert np.all(np.diff(prof) >= 0)
        assert prof[14] > prof[0]

    def test_g2l_consistent_with_profile(self):
        prof = g2_profile(ising_point(0.7, 6))
        assert g2l_ising(0.7, 6) == pytest.approx(prof[5], abs=1e-14)
        assert eg2_ising(0.7, 6) == pytest.approx(prof.mean(), abs=1e-14)

    @pytest.mark.xfail(strict=True, reason="E_G^(2) sits 0.028 below G(2,15) at lambda=1")
    def test_eg2_close_to_g2_15_at_criticality(self):
        assert abs(eg2_ising(1.0, 15) - g2l_ising(1.0, 15)) < 0.01

    def test_eg2_peak_on_fine_grid(self):
        grid = np.round(np.arange(0.95, 1.05 + 1e-12, 1e-3), 12)
        vals = [eg2_ising(lam) for lam in grid]
        assert abs(grid[int(np.argmax(vals))] - 1.0) <= 1e-3 + 1e-12

    @pytest.mark.parametrize("lam", np.linspace(0.0, 1.0, 21))
    def test_linear_below_von_neumann(self, lam):
        rho1 = single_site_rho(ising_point(lam, 0))
        assert eg1_ising(lam) <= von_neumann_entropy(rho1, 2) + 1e-10

    def test_limit_of_pair_measure_at_criticality(self):
        # far-apart pairs decouple into products of single-site states
        single = (1 + TWO_OVER_PI ** 2) / 2
        limit = 4 / 3 * (1 - single ** 2)
        assert limit == pytest.approx(0.675, abs=1e-3)
        ls = [50, 100, 200]
        prof = g2_profile(ising_point(1.0, 200, QuadratureSpec(max_nodes=16384)))
        gaps = [limit - prof[l - 1] for l in ls]
        assert all(g > 0 for g in gaps)
        # the deficit is carried by <sx sx>^2 ~ l^(-1/2)
        for a, b in zip(gaps, gaps[1:]):
            assert b / a == pytest.approx(2 ** -0.5, abs=0.02)
