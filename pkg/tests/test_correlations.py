import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from jcqsim import correlations, qmath
from jcqsim.correlations import (
    Measurement,
    binary_entropy,
    classical_correlation,
    concurrence,
    conditional_entropy,
    discord_grid_oracle,
    eof,
    eof_from_concurrence,
    ground_state_discord_analytic,
    measurement_projector,
    mutual_information,
    quantum_discord,
    von_neumann_entropy,
)
from jcqsim.device import EffectiveParams, thermal_state
from jcqsim.errors import (
    DimensionError,
    InvalidParameterError,
    NotAStateError,
    UnsupportedRegimeError,
)

from helpers import (
    bell_phi_plus,
    entropy_bits,
    pure_state,
    random_density_matrix,
    random_unitary_2,
    random_x_state,
)


def reference_conditional_entropy(rho, theta, phi, side="first"):
    """Independent projector-sandwich evaluation used as the test oracle."""
    m = np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])
    m_perp = np.array([np.sin(theta / 2), -np.exp(1j * phi) * np.cos(theta / 2)])
    total = 0.0
    for vec in (m, m_perp):
        proj = np.outer(vec, vec.conj())
        k = np.kron(proj, np.eye(2)) if side == "first" else np.kron(np.eye(2), proj)
        post = k @ rho @ k
        p = np.trace(post).real
        if p <= 1e-14:
            continue
        r4 = (post / p).reshape(2, 2, 2, 2)
        reduced = (
            np.einsum("abad->bd", r4) if side == "first" else np.einsum("abcb->ac", r4)
        )
        w = np.linalg.eigvalsh(reduced)
        total += p * entropy_bits(w[w > 1e-15])
    return total


class TestVonNeumannEntropy:
    def test_pure_state(self):
        assert von_neumann_entropy(bell_phi_plus()) == pytest.approx(0.0, abs=1e-12)

    def test_maximally_mixed(self):
        assert von_neumann_entropy(np.eye(4) / 4) == pytest.approx(2.0, abs=1e-12)

    def test_two_uniform_outcomes(self):
        rho = np.diag([0.5, 0.5, 0.0, 0.0]).astype(complex)
        assert von_neumann_entropy(rho) == pytest.approx(1.0, abs=1e-12)

    def test_rejects_negative_eigenvalue(self):
        rho = np.diag([1.1, -0.1, 0.0, 0.0]).astype(complex)
        with pytest.raises(NotAStateError):
            von_neumann_entropy(rho)


class TestMutualInformation:
    def test_product_state(self):
        rng = np.random.default_rng(0)
        rho = np.kron(random_density_matrix(rng, 2), random_density_matrix(rng, 2))
        assert mutual_information(rho) == pytest.approx(0.0, abs=1e-10)

    def test_bell_state(self):
        assert mutual_information(bell_phi_plus()) == pytest.approx(2.0, abs=1e-12)

    def test_thermal_state_against_spectrum_oracle(self):
        # thermal spectrum is known in closed form: weights exp(-E/T)/Z for
        # E in {-lam, -j, j, lam}; reduced states are diagonal in this regime
        eps, j, t = 1.0, 2.0, 0.5
        rho = thermal_state(EffectiveParams.symmetric(eps, j), t)
        lam = math.hypot(2 * eps, j)
        energies = np.array([-lam, -j, j, lam])
        weights = np.exp(-energies / t)
        s_total = entropy_bits(weights / weights.sum())
        pa = np.array([rho[0, 0] + rho[1, 1], rho[2, 2] + rho[3, 3]]).real
        pb = np.array([rho[0, 0] + rho[2, 2], rho[1, 1] + rho[3, 3]]).real
        expected = entropy_bits(pa) + entropy_bits(pb) - s_total
        assert mutual_information(rho) == pytest.approx(expected, abs=1e-10)

    def test_rejects_single_qubit_input(self):
        with pytest.raises(DimensionError):
            mutual_information(np.eye(2) / 2)


class TestConditionalEntropy:
    def test_measurement_validation(self):
        with pytest.raises(InvalidParameterError):
            Measurement(theta=-0.1, phi=0.0)
        with pytest.raises(InvalidParameterError):
            Measurement(theta=0.1, phi=7.0)
        with pytest.raises(InvalidParameterError):
            Measurement(theta=0.1, phi=0.0, side="third")

    def test_projector_is_rank_one(self):
        p = measurement_projector(1.0, 2.0)
        assert_allclose(p @ p, p, atol=1e-14)
        assert np.trace(p).real == pytest.approx(1.0, abs=1e-14)

    def test_product_state_gives_unmeasured_entropy(self):
        rng = np.random.default_rng(1)
        sigma_b = random_density_matrix(rng, 2)
        rho = np.kron(random_density_matrix(rng, 2), sigma_b)
        expected = von_neumann_entropy(sigma_b)
        for theta, phi in [(0.0, 0.0), (np.pi / 2, 0.3), (2.0, 4.0)]:
            got = conditional_entropy(rho, Measurement(theta, phi, "first"))
            assert got == pytest.approx(expected, abs=1e-10)

    def test_bell_state_computational_basis(self):
        got = conditional_entropy(bell_phi_plus(), Measurement(0.0, 0.0, "first"))
        assert got == pytest.approx(0.0, abs=1e-12)

    def test_x_state_against_projector_oracle(self):
        rho = thermal_state(EffectiveParams.symmetric(0.0, 1.0), 0.5)
        theta, phi = np.pi / 2, 0.0
        expected = reference_conditional_entropy(rho, theta, phi)
        got = conditional_entropy(rho, Measurement(theta, phi, "first"))
        assert got == pytest.approx(expected, abs=1e-12)

    def test_second_side_placement(self):
        rng = np.random.default_rng(2)
        rho = random_density_matrix(rng, 4)
        for theta, phi in [(0.7, 1.1), (2.3, 5.0)]:
            expected = reference_conditional_entropy(rho, theta, phi, side="second")
            got = conditional_entropy(rho, Measurement(theta, phi, "second"))
            assert got == pytest.approx(expected, abs=1e-12)

    def test_fast_path_matches_definitional_path(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            rho = random_density_matrix(rng, 4)
            theta = rng.uniform(0, np.pi)
            phi = rng.uniform(0, 2 * np.pi)
            for side in ("first", "second"):
                blocks = correlations._measured_blocks(rho, side)
                fast = float(
                    correlations._cond_entropy_grid(blocks, [theta], [phi])[0]
                )
                scalars, reduced = correlations._scalar_blocks(blocks)
                point = correlations._cond_entropy_point(scalars, reduced, theta, phi)
                slow = conditional_entropy(rho, Measurement(theta, phi, side))
                assert fast == pytest.approx(slow, abs=1e-12)
                assert point == pytest.approx(slow, abs=1e-12)


class TestClassicalCorrelation:
    def test_product_state(self):
        rng = np.random.default_rng(4)
        rho = np.kron(random_density_matrix(rng, 2), random_density_matrix(rng, 2))
        value, _ = classical_correlation(rho)
        assert value == pytest.approx(0.0, abs=1e-9)

    def test_bell_state(self):
        value, m = classical_correlation(bell_phi_plus())
        assert value == pytest.approx(1.0, abs=1e-9)
        assert m.side == "first"

    def test_matches_grid_oracle_on_random_x_states(self):
        rng = np.random.default_rng(5)
        for _ in range(5):
            rho = random_x_state(rng)
            mi = mutual_information(rho)
            value, _ = classical_correlation(rho)
            oracle_discord = discord_grid_oracle(rho, "first", 181, 360)
            assert (mi - value) == pytest.approx(oracle_discord, abs=5e-5)


class TestQuantumDiscord:
    def test_bell_state(self):
        report = quantum_discord(bell_phi_plus())
        assert report.discord == pytest.approx(1.0, abs=1e-9)
        assert report.concurrence == pytest.approx(1.0, abs=1e-12)
        assert report.eof == pytest.approx(1.0, abs=1e-12)

    def test_classical_classical_state(self):
        rho = np.diag([0.4, 0.3, 0.2, 0.1]).astype(complex)
        assert quantum_discord(rho).discord == pytest.approx(0.0, abs=1e-9)

    def test_strong_coupling_ground_state(self):
        rho = thermal_state(EffectiveParams.symmetric(1.0, 50.0), 0.0)
        assert quantum_discord(rho).discord == pytest.approx(0.9988, abs=5e-4)

    def test_report_identity_and_ranges(self):
        rng = np.random.default_rng(6)
        for _ in range(10):
            report = quantum_discord(random_x_state(rng))
            assert report.discord == pytest.approx(
                report.mutual_information - report.classical_correlation, abs=1e-12
            )
            assert report.discord >= 0.0
            assert report.classical_correlation >= 0.0
            assert 0.0 <= report.concurrence <= 1.0
            assert 0.0 <= report.eof <= 1.0
            assert report.optimizer_evaluations > 33 * 64

    def test_sides_agree_for_symmetric_state(self):
        rho = thermal_state(EffectiveParams.symmetric(1.0, 2.0), 0.5)
        d_first = quantum_discord(rho, "first").discord
        d_second = quantum_discord(rho, "second").discord
        assert d_first == pytest.approx(d_second, abs=5e-5)

    def test_coupling_sign_invariance(self):
        for ratio in (0.5, 2.0, 10.0):
            plus = thermal_state(EffectiveParams.symmetric(1.0, ratio), 0.4)
            minus = thermal_state(EffectiveParams.symmetric(1.0, -ratio), 0.4)
            assert quantum_discord(plus).discord == pytest.approx(
                quantum_discord(minus).discord, abs=5e-5
            )
            assert eof(plus) == pytest.approx(eof(minus), abs=1e-10)

    def test_basis_convention_sign_invariance(self):
        # flipping sigma_z|0> = +|0> to -|0> negates eps; both conventions
        # must report the same discord and entanglement
        for eps, j, t in [(1.0, 2.0, 0.4), (0.5, -1.0, 0.1), (2.0, 0.7, 1.0)]:
            plus = thermal_state(EffectiveParams.symmetric(eps, j), t)
            minus = thermal_state(EffectiveParams.symmetric(-eps, j), t)
            assert quantum_discord(plus).discord == pytest.approx(
                quantum_discord(minus).discord, abs=5e-5
            )
            assert eof(plus) == pytest.approx(eof(minus), abs=1e-10)

    def test_pure_states_discord_equals_entanglement_entropy(self):
        rng = np.random.default_rng(7)
        for _ in range(5):
            psi = rng.normal(size=4) + 1j * rng.normal(size=4)
            rho = pure_state(psi)
            expected = von_neumann_entropy(qmath.partial_trace(rho, "first"))
            report = quantum_discord(rho)
            assert report.discord == pytest.approx(expected, abs=5e-5)
            assert report.eof == pytest.approx(expected, abs=5e-5)

    def test_local_unitary_invariance_sample(self):
        rng = np.random.default_rng(8)
        for _ in range(5):
            rho = random_density_matrix(rng, 4)
            u = np.kron(random_unitary_2(rng), random_unitary_2(rng))
            rotated = u @ rho @ u.conj().T
            assert quantum_discord(rotated).discord == pytest.approx(
                quantum_discord(rho).discord, abs=5e-5
            )
            assert concurrence(rotated) == pytest.approx(concurrence(rho), abs=1e-10)
            assert eof(rotated) == pytest.approx(eof(rho), abs=1e-10)


class TestDiscordGridOracle:
    def test_bell_state(self):
        assert discord_grid_oracle(bell_phi_plus(), "first", 181, 360) == pytest.approx(
            1.0, abs=1e-6
        )

    def test_product_state(self):
        rng = np.random.default_rng(9)
        rho = np.kron(random_density_matrix(rng, 2), random_density_matrix(rng, 2))
        assert discord_grid_oracle(rho, "first", 61, 60) == pytest.approx(0.0, abs=1e-9)

    def test_upper_bounds_the_optimizer(self):
        rng = np.random.default_rng(10)
        for _ in range(5):
            rho = random_x_state(rng)
            assert quantum_discord(rho).discord <= discord_grid_oracle(
                rho, "first", 181, 360
            ) + 5e-5

    def test_rejects_degenerate_grid(self):
        with pytest.raises(InvalidParameterError):
            discord_grid_oracle(bell_phi_plus(), "first", 1, 10)


class TestConcurrence:
    def test_bell_state(self):
        assert concurrence(bell_phi_plus()) == pytest.approx(1.0, abs=1e-12)

    def test_maximally_mixed(self):
        assert concurrence(np.eye(4) / 4) == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("p", [0.0, 0.2, 1 / 3, 0.5, 0.8, 1.0])
    def test_werner_states_both_paths(self, p):
        rho = p * bell_phi_plus() + (1 - p) * np.eye(4) / 4
        expected = max(0.0, (3 * p - 1) / 2)
        assert concurrence(rho, method="xstate") == pytest.approx(expected, abs=1e-10)
        assert concurrence(rho, method="general") == pytest.approx(expected, abs=1e-10)

    def test_paths_agree_on_random_x_states(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            rho = random_x_state(rng)
            assert concurrence(rho, method="xstate") == pytest.approx(
                concurrence(rho, method="general"), abs=1e-10
            )

    def test_xstate_method_rejects_generic_state(self):
        rng = np.random.default_rng(12)
        rho = random_density_matrix(rng, 4)
        with pytest.raises(UnsupportedRegimeError):
            concurrence(rho, method="xstate")

    def test_rejects_invalid_state(self):
        with pytest.raises(NotAStateError):
            concurrence(np.diag([1.2, -0.2, 0.0, 0.0]).astype(complex))

    def test_rejects_unknown_method(self):
        with pytest.raises(InvalidParameterError):
            concurrence(bell_phi_plus(), method="fancy")


class TestEof:
    def test_zero_concurrence(self):
        assert eof(np.eye(4) / 4) == 0.0

    def test_bell_state(self):
        assert eof(bell_phi_plus()) == pytest.approx(1.0, abs=1e-12)

    def test_intermediate_concurrence(self):
        # sqrt(0.9)|00> + sqrt(0.1)|11> has C = 0.6, so E = H(0.9)
        rho = pure_state([np.sqrt(0.9), 0, 0, np.sqrt(0.1)])
        expected = -0.9 * np.log2(0.9) - 0.1 * np.log2(0.1)
        assert concurrence(rho) == pytest.approx(0.6, abs=1e-12)
        assert eof(rho) == pytest.approx(expected, abs=1e-12)

    def test_eof_from_concurrence_bounds(self):
        assert eof_from_concurrence(0.0) == 0.0
        assert eof_from_concurrence(1.0) == pytest.approx(1.0, abs=1e-15)
        with pytest.raises(InvalidParameterError):
            eof_from_concurrence(1.5)

    def test_binary_entropy_edges(self):
        assert binary_entropy(0.0) == 0.0
        assert binary_entropy(1.0) == 0.0
        assert binary_entropy(0.5) == pytest.approx(1.0, abs=1e-15)


class TestGroundStateDiscordAnalytic:
    def test_symmetric_superposition(self):
        assert ground_state_discord_analytic(0.0, 1.0) == pytest.approx(1.0, abs=1e-12)

    def test_product_ground_state(self):
        assert ground_state_discord_analytic(1.0, 0.0) == 0.0

    def test_strong_coupling_value(self):
        assert ground_state_discord_analytic(1.0, 50.0) == pytest.approx(0.9988, abs=5e-4)

    def test_rejects_double_zero(self):
        with pytest.raises(InvalidParameterError):
            ground_state_discord_analytic(0.0, 0.0)

    def test_sign_symmetry_in_eps(self):
        for j in (0.5, 2.0, 10.0):
            assert ground_state_discord_analytic(1.0, j) == pytest.approx(
                ground_state_discord_analytic(-1.0, j), abs=1e-12
            )

    @pytest.mark.parametrize("ratio", [0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 25.0, 50.0])
    def test_matches_numerical_ground_state_entropy(self, ratio):
        # oracle: entanglement entropy of the numerically diagonalized
        # nondegenerate ground state
        rho = thermal_state(EffectiveParams.symmetric(1.0, ratio), 0.0)
        expected = von_neumann_entropy(qmath.partial_trace(rho, "first"))
        assert ground_state_discord_analytic(1.0, ratio) == pytest.approx(
            expected, abs=1e-10
        )
