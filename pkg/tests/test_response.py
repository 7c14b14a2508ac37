import math

import numpy as np
import pytest

from dressedlight import (
    EnsembleParams,
    ProbePoint,
    SampleGeometry,
    SingularIndexError,
    chi_prime_derivative,
    damping_rates,
    find_zero_absorption,
    group_index,
    kramers_kronig_real,
    refractive_index,
    solve_ensemble,
    susceptibility,
    susceptibility_terms,
    switching_time,
)

# mpmath (40 digits) substitution through theta -> xi -> direct-summation rz
# at delta/(2*omega) = 0.1, gamma = 1, r = 0.3, N = 1000
GAMMA_S_REFERENCE = 1.646534653465346534653
GAMMA_C_REFERENCE = -98.94975739348525901475
GAMMA_TILDE_REFERENCE = 0.1005962920469506055494


def fig3_pair(n_atoms=1000, delta_a_over_2omega=0.1):
    omega = 5.0 * n_atoms
    delta_a = delta_a_over_2omega * 2.0 * omega
    delta_b = delta_a - 0.1 * 2.0 * omega
    pair = (
        EnsembleParams(label="a", n_atoms=n_atoms, gamma=1.0, r=0.3, delta=delta_a, omega=omega),
        EnsembleParams(label="b", n_atoms=n_atoms, gamma=1.0, r=0.3, delta=delta_b, omega=omega),
    )
    return tuple((p, solve_ensemble(p)) for p in pair)


def literal_chi(probe, solved, collective=True):
    """Component-by-component evaluation of the two-Lorentzian response."""
    chi_p = 0.0
    chi_pp = 0.0
    for params, state in solved:
        gn = params.gamma * params.n_atoms
        rates = damping_rates(state.theta, params.gamma, params.r,
                              state.rz if collective else 0.0, params.n_atoms)
        gt = rates.gamma_tilde
        dpt = probe.delta_p / gn
        xm = dpt - 2.0 * state.omega_bar
        xp = dpt + 2.0 * state.omega_bar
        c4 = math.cos(state.theta) ** 4
        s4 = math.sin(state.theta) ** 4
        w = params.density_prefactor * state.rz / params.n_atoms
        chi_p += w * (c4 * xm / (gt * gt + xm * xm) - s4 * xp / (gt * gt + xp * xp))
        chi_pp += w * (s4 * gt / (gt * gt + xp * xp) - c4 * gt / (gt * gt + xm * xm))
    return chi_p, chi_pp


def regrouped_chi(probe, solved):
    """Equivalent complex-Lorentzian regrouping of the same response."""
    total = 0j
    for params, state in solved:
        gn = params.gamma * params.n_atoms
        rates = damping_rates(state.theta, params.gamma, params.r, state.rz, params.n_atoms)
        gt = rates.gamma_tilde
        dpt = probe.delta_p / gn
        xm = dpt - 2.0 * state.omega_bar
        xp = dpt + 2.0 * state.omega_bar
        c4 = math.cos(state.theta) ** 4
        s4 = math.sin(state.theta) ** 4
        w = params.density_prefactor * state.rz / params.n_atoms
        total += w * (c4 / (xm + 1j * gt) - s4 / (xp + 1j * gt))
    return total


class TestDampingRates:
    def test_balanced_mixing(self):
        rates = damping_rates(math.pi / 4, 1.0, 0.3, rz=-123.0, n_atoms=10)
        assert rates.gamma_s == pytest.approx(1.65, rel=1e-14)
        assert rates.gamma_c == pytest.approx(0.0, abs=1e-13)

    def test_fully_inverted_narrow_mixing_limit(self):
        n = 50
        rates = damping_rates(1e-9, 1.0, 0.0, rz=-float(n), n_atoms=n)
        assert rates.gamma_s == pytest.approx(1.0, rel=1e-12)
        assert rates.gamma_c == pytest.approx(-float(n), rel=1e-12)
        assert rates.gamma_tilde == pytest.approx(1.0 + 1.0 / n, rel=1e-12)

    def test_reference_point_matches_high_precision_chain(self):
        (p, s), _ = fig3_pair()
        rates = damping_rates(s.theta, p.gamma, p.r, s.rz, p.n_atoms)
        assert rates.gamma_s == pytest.approx(GAMMA_S_REFERENCE, rel=1e-13)
        assert rates.gamma_c == pytest.approx(GAMMA_C_REFERENCE, rel=1e-12)
        assert rates.gamma_tilde == pytest.approx(GAMMA_TILDE_REFERENCE, rel=1e-12)

    def test_positive_linewidth_across_regimes(self):
        from dressedlight import dressed_inversion, inversion_exponent
        for theta in np.linspace(0.01, math.pi / 2 - 0.01, 101):
            for n in (1, 10, 1000):
                for r in (0.0, 0.3, 3.0):
                    xi = inversion_exponent(float(theta), 1.0, r)
                    rz = dressed_inversion(xi, n)
                    assert damping_rates(float(theta), 1.0, r, rz, n).gamma_tilde > 0.0


class TestProbePoint:
    def test_constructors_keep_consistency_identity(self):
        # delta_p = (nu - omega_a) + delta_a under either construction
        p1 = ProbePoint.at_laser(nu_minus_omega_a=-3.0, delta_a=1.2)
        assert p1.delta_p == pytest.approx(-1.8, rel=1e-15)
        p2 = ProbePoint.from_delta_p(delta_p=-1.8, delta_a=1.2)
        assert p2.nu_minus_omega_a == pytest.approx(-3.0, rel=1e-15)


class TestSusceptibility:
    def test_matches_component_form_sign_by_sign(self):
        solved = fig3_pair()
        for dpt in np.linspace(-30.0, 30.0, 61):
            probe = ProbePoint.from_delta_p(float(dpt) * 1000.0, solved[0][0].delta)
            for (params, state), term in zip(solved, susceptibility_terms(probe, solved)):
                lit_p, lit_pp = literal_chi(probe, [(params, state)])
                assert term.real == lit_p
                assert term.imag == lit_pp

    def test_complex_lorentzian_regrouping_is_equivalent(self):
        # pole form c4/(x- + i*gt) - s4/(x+ + i*gt): componentwise agreement
        # up to the modulus-relative rounding of complex division
        solved = fig3_pair()
        for dpt in np.linspace(-30.0, 30.0, 61):
            probe = ProbePoint.from_delta_p(float(dpt) * 1000.0, solved[0][0].delta)
            chi = susceptibility(probe, solved)
            alt = regrouped_chi(probe, solved)
            assert abs(alt - chi) <= 1e-13 * abs(chi)

    def test_two_ensemble_additivity(self):
        solved = fig3_pair()
        probe = ProbePoint.at_laser(-10000.0, solved[0][0].delta)
        total = susceptibility(probe, solved)
        alone = susceptibility(probe, solved[:1]) + susceptibility(probe, solved[1:])
        assert total == alone

    def test_terms_sum_to_total(self):
        solved = fig3_pair()
        probe = ProbePoint.at_laser(3500.0, solved[0][0].delta)
        terms = susceptibility_terms(probe, solved)
        assert len(terms) == 2
        assert sum(terms, 0j) == susceptibility(probe, solved)

    def test_lorentzian_tails(self):
        solved = fig3_pair()[:1]
        delta_a = solved[0][0].delta
        gn = 1000.0
        # far enough out that the 1/x^3 correction from the line splitting
        # is a percent-level effect
        far, farther = 5000.0, 10000.0
        chi1 = susceptibility(ProbePoint.from_delta_p(far * gn, delta_a), solved)
        chi2 = susceptibility(ProbePoint.from_delta_p(farther * gn, delta_a), solved)
        assert abs(chi2.real / chi1.real) == pytest.approx(0.5, rel=0.02)
        assert abs(chi2.imag / chi1.imag) == pytest.approx(0.25, rel=0.05)
        peak = abs(susceptibility(ProbePoint.from_delta_p(-10.05 * gn, delta_a), solved))
        assert abs(chi2) < 1e-5 * peak

    def test_collective_override_gives_independent_atoms(self):
        solved = fig3_pair()
        probe = ProbePoint.at_laser(-10000.0, solved[0][0].delta)
        chi = susceptibility(probe, solved, collective=False)
        lit_p, lit_pp = literal_chi(probe, solved, collective=False)
        assert chi.real == pytest.approx(lit_p, rel=1e-14)
        assert chi.imag == pytest.approx(lit_pp, rel=1e-14)
        # removing the collective linewidth narrowing changes the response
        assert chi != susceptibility(probe, solved)

    def test_density_prefactor_weights_species(self):
        solved = fig3_pair()
        (pa, sa), (pb, sb) = solved
        reweighted = ((EnsembleParams(label="a", n_atoms=pa.n_atoms, gamma=pa.gamma, r=pa.r,
                                      delta=pa.delta, omega=pa.omega, density_prefactor=2.0), sa),
                      (pb, sb))
        probe = ProbePoint.at_laser(-10000.0, pa.delta)
        t0 = susceptibility_terms(probe, solved)
        t1 = susceptibility_terms(probe, reweighted)
        assert t1[0] == 2.0 * t0[0]
        assert t1[1] == t0[1]

    def test_mismatched_state_is_usage_error(self):
        (pa, sa), (pb, sb) = fig3_pair()
        with pytest.raises(ValueError, match="solve_ensemble"):
            susceptibility(ProbePoint.at_laser(0.0, pa.delta), [(pa, sb), (pb, sa)])


class TestChiPrimeDerivative:
    def test_matches_central_finite_difference(self):
        solved = fig3_pair()
        delta_a = solved[0][0].delta
        gn = 1000.0
        h = 1e-4 * gn
        for dpt in np.linspace(-25.0, 25.0, 41):
            dp = float(dpt) * gn
            analytic = chi_prime_derivative(ProbePoint.from_delta_p(dp, delta_a), solved)
            up = susceptibility(ProbePoint.from_delta_p(dp + h, delta_a), solved).real
            dn = susceptibility(ProbePoint.from_delta_p(dp - h, delta_a), solved).real
            fd = (up - dn) / (2.0 * h)
            assert analytic == pytest.approx(fd, rel=1e-6, abs=1e-12)

    def test_slope_at_line_center(self):
        solved = fig3_pair()[:1]
        p, s = solved[0]
        gn = p.gamma * p.n_atoms
        rates = damping_rates(s.theta, p.gamma, p.r, s.rz, p.n_atoms)
        gt = rates.gamma_tilde
        # probe at the co-rotating line center: x_minus = 0, x_plus = 4*omega_bar
        dp = 2.0 * s.omega_tilde
        analytic = chi_prime_derivative(ProbePoint.from_delta_p(dp, p.delta), solved)
        c4 = math.cos(s.theta) ** 4
        s4 = math.sin(s.theta) ** 4
        w = s.rz / p.n_atoms
        main = w * c4 / (gt * gt) / gn
        xp = 4.0 * s.omega_bar
        background = -w * s4 * (gt * gt - xp * xp) / (gt * gt + xp * xp) ** 2 / gn
        assert analytic == pytest.approx(main + background, rel=1e-12)
        # the co-rotating term dominates by orders of magnitude
        assert abs(background / main) < 1e-4

    def test_derivative_sign_pattern_at_zero_absorption_crossings(self):
        from dressedlight import evaluate_point, figure_configs
        config = figure_configs("fig3b")[0][1]
        chi2 = lambda x: evaluate_point(config, x).sample.chi_double_prime
        crossings = find_zero_absorption(chi2, config.lo, config.hi, samples=1601)
        assert len(crossings) == 2
        slopes = [evaluate_point(config, x0).sample.dchi_prime for x0 in crossings]
        # positive derivative peak at the first transparent point, negative
        # at the second; both dwarf the off-crossing background
        assert slopes[0] > 0.0 > slopes[1]
        flank = evaluate_point(config, crossings[-1] + 5e-3)
        assert min(abs(s) for s in slopes) > 10.0 * abs(flank.sample.dchi_prime)

    def test_collectivity_steepens_the_dispersive_crossing(self):
        # probe fixed near the bare transition; the chi' step across
        # delta_a = 0 is orders of magnitude steeper for 1000 atoms than
        # for one, at equal 2*omega/(N*gamma) and r/gamma
        from dressedlight import SweepConfig, evaluate_point

        def slope_at_crossing(n_atoms):
            omega = 5.0 * n_atoms
            config = SweepConfig(
                ensembles=(
                    EnsembleParams(label="a", n_atoms=n_atoms, gamma=1.0, r=0.3,
                                   delta=0.0, omega=omega),
                    EnsembleParams(label="b", n_atoms=n_atoms, gamma=1.0, r=0.3,
                                   delta=-0.2 * omega, omega=omega),
                ),
                variable="delta_a_over_2omega",
                lo=-0.5, hi=0.5, points=3,
                probe_offset_over_2omega=0.35,
            )
            h = 1e-4
            up = evaluate_point(config, h).sample.chi_prime
            dn = evaluate_point(config, -h).sample.chi_prime
            return (up - dn) / (2.0 * h)

        assert slope_at_crossing(1000) > 10.0 * slope_at_crossing(1) > 0.0


class TestRefractiveIndex:
    def test_vacuum(self):
        assert refractive_index(0.0, 1.0) == (1.0, True)

    def test_enhanced_index(self):
        n, ok = refractive_index(63.0, 1.0)
        assert ok and n == pytest.approx(8.0, rel=1e-15)
        n10, ok10 = refractive_index(6.3, 10.0)
        assert ok10 and n10 == pytest.approx(8.0, rel=1e-15)

    def test_non_propagating_flagged(self):
        n, ok = refractive_index(-1.5, 1.0)
        assert not ok and math.isnan(n)
        n, ok = refractive_index(-10.1, 0.1)
        assert not ok and math.isnan(n)


class TestGroupIndex:
    def test_dispersionless(self):
        ng, vg = group_index(1.7, 1e8, 0.0, 0.1)
        assert ng == 1.7
        assert vg == pytest.approx(1.0 / 1.7, rel=1e-15)

    def test_negative_branch(self):
        # n = 1 with nu * dn/dnu = -2 gives n_g = -1, v_g = -c
        ng, vg = group_index(1.0, 4.0, -1.0, 1.0)
        assert ng == pytest.approx(-1.0, rel=1e-15)
        assert vg == pytest.approx(-1.0, rel=1e-15)

    def test_singular_at_zero_index(self):
        with pytest.raises(SingularIndexError):
            group_index(0.0, 1e8, 1.0, 0.1)
        with pytest.raises(SingularIndexError):
            group_index(math.nan, 1e8, 1.0, 0.1)


class TestSwitchingTime:
    def test_reference_estimate(self):
        geom = SampleGeometry(length_l=5.0, area_s=2.0, lambda_cm=1e-4, gamma_phys=1e7)
        assert switching_time(geom, 1000) == pytest.approx(1e-9, rel=1e-12)

    def test_linear_in_length_and_inverse_in_atoms(self):
        geom = SampleGeometry(length_l=5.0, area_s=2.0, lambda_cm=1e-4, gamma_phys=1e7)
        double_l = SampleGeometry(length_l=10.0, area_s=2.0, lambda_cm=1e-4, gamma_phys=1e7)
        assert switching_time(double_l, 1000) == pytest.approx(2e-9, rel=1e-12)
        assert switching_time(geom, 2000) == pytest.approx(0.5e-9, rel=1e-12)

    def test_wavelength_independent(self):
        a = SampleGeometry(length_l=5.0, area_s=2.0, lambda_cm=1e-4, gamma_phys=1e7)
        b = SampleGeometry(length_l=5.0, area_s=2.0, lambda_cm=7e-5, gamma_phys=1e7)
        assert switching_time(a, 100) == pytest.approx(switching_time(b, 100), rel=1e-12)


class TestKramersKronig:
    def test_single_lorentzian_pair(self):
        # chi = 1/(x - x0 + i*width): chi' = (x-x0)/D, chi'' = -width/D
        x = np.linspace(-100.0, 100.0, 20001)
        x0, width = 5.0, 2.0
        denom = (x - x0) ** 2 + width ** 2
        chi_p = (x - x0) / denom
        chi_pp = -width / denom
        targets = np.arange(len(x) // 3, 2 * len(x) // 3)
        recon = kramers_kronig_real(x, chi_pp, targets)
        err = np.max(np.abs(recon - chi_p[targets]))
        assert err < 2e-3 * np.max(np.abs(chi_p[targets]))

    def test_two_line_spectrum(self):
        x = np.linspace(-150.0, 150.0, 30001)
        chi = 0.7 / (x - 40.0 + 1.2j) - 0.3 / (x + 40.0 + 0.8j)
        targets = np.arange(len(x) // 3, 2 * len(x) // 3)
        recon = kramers_kronig_real(x, chi.imag, targets)
        err = np.max(np.abs(recon - chi.real[targets]))
        assert err < 2e-3 * np.max(np.abs(chi.real[targets]))

    def test_requires_uniform_grid(self):
        x = np.array([0.0, 1.0, 3.0, 4.0])
        with pytest.raises(ValueError, match="uniform"):
            kramers_kronig_real(x, np.zeros_like(x))

    def test_rejects_edge_targets(self):
        x = np.linspace(-1.0, 1.0, 11)
        with pytest.raises(ValueError, match="interior"):
            kramers_kronig_real(x, np.zeros_like(x), targets=np.array([0]))


class TestFindZeroAbsorption:
    def test_finds_sine_roots(self):
        roots = find_zero_absorption(math.sin, -7.0, 7.0, samples=701)
        expected = [-2 * math.pi, -math.pi, 0.0, math.pi, 2 * math.pi]
        assert len(roots) == len(expected)
        for found, true in zip(roots, expected):
            assert abs(math.sin(found)) < 1e-10
            assert found == pytest.approx(true, abs=1e-9)

    def test_no_crossing(self):
        assert find_zero_absorption(lambda x: 1.0 + x * x, -1.0, 1.0) == []

    def test_invalid_window(self):
        with pytest.raises(ValueError):
            find_zero_absorption(math.sin, 2.0, -2.0)
