import numpy as np
import pytest

from entrobound import (
    InputError,
    MeasurementPair,
    QuantumState,
    ground_state,
    hadamard_pair,
    identity_pair,
    load_unitary,
    outcome_distribution,
    random_unitary,
    save_unitary,
    tensor_pair,
    unitarity_defect,
)

from oracles import char_poly_min_root


def singlet():
    return QuantumState.pure(np.array([0, 1, -1, 0]) / np.sqrt(2))


class TestMeasurementPair:
    def test_rejects_non_unitary(self):
        with pytest.raises(InputError, match="not unitary"):
            MeasurementPair(np.array([[1.0, 0.1], [0.0, 1.0]]))

    def test_rejects_dimension_one(self):
        with pytest.raises(InputError):
            MeasurementPair(np.array([[1.0]]))

    def test_unitary_is_immutable(self):
        pair = hadamard_pair()
        with pytest.raises(ValueError):
            pair.unitary[0, 0] = 0.0


class TestOutcomeDistribution:
    def test_basis_eigenstate_is_deterministic(self):
        pair = random_unitary(3, seed=1)
        p = outcome_distribution(QuantumState.basis(3, 0), pair, "X")
        assert np.allclose(p, [1, 0, 0])

    def test_hadamard_row_is_unbiased(self):
        p = outcome_distribution(QuantumState.basis(2, 0), hadamard_pair(), "Y")
        assert np.allclose(p, [0.5, 0.5])

    def test_singlet_in_product_x_basis(self):
        # oracle: direct 4x4 projector traces tr(rho X_i)
        pair = tensor_pair(hadamard_pair(), hadamard_pair())
        rho = singlet().density()
        expected = [np.real(rho[i, i]) for i in range(4)]
        assert np.allclose(expected, [0, 0.5, 0.5, 0])
        p = outcome_distribution(singlet(), pair, "X")
        assert np.allclose(p, expected, atol=1e-12)

    def test_mixed_state_path_matches_pure(self):
        pair = random_unitary(4, seed=9)
        psi = QuantumState.pure(np.arange(1, 5) + 1j)
        rho = QuantumState.mixed(psi.density())
        for which in ("X", "Y"):
            assert np.allclose(
                outcome_distribution(psi, pair, which),
                outcome_distribution(rho, pair, which),
                atol=1e-12,
            )

    def test_sums_to_one(self):
        rng = np.random.default_rng(3)
        for d in (2, 3, 5):
            pair = random_unitary(d, seed=d)
            for _ in range(20):
                g = rng.standard_normal(d) + 1j * rng.standard_normal(d)
                state = QuantumState.pure(g)
                for which in ("X", "Y"):
                    p = outcome_distribution(state, pair, which)
                    assert abs(p.sum() - 1.0) <= 1e-10
                    assert np.all(p >= 0)

    def test_unitary_invariance(self):
        rng = np.random.default_rng(4)
        pair = random_unitary(4, seed=11)
        for _ in range(20):
            g = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            phi = QuantumState.pure(g)
            rotated = QuantumState.pure(pair.unitary.conj().T @ phi.vector)
            py = outcome_distribution(phi, pair, "Y")
            px = outcome_distribution(rotated, pair, "X")
            assert np.max(np.abs(py - px)) <= 1e-10

    def test_dimension_mismatch(self):
        with pytest.raises(InputError, match="dimension"):
            outcome_distribution(QuantumState.basis(3, 0), hadamard_pair(), "X")


class TestTensorPair:
    def test_identity_tensor_identity(self):
        ab = tensor_pair(identity_pair(2), identity_pair(2))
        assert np.allclose(ab.unitary, np.eye(4))

    def test_hadamard_tensor_identity_blocks(self):
        h = hadamard_pair().unitary
        ab = tensor_pair(hadamard_pair(), identity_pair(2))
        expected = np.zeros((4, 4), dtype=complex)
        for i in range(2):
            for j in range(2):
                expected[2 * i : 2 * i + 2, 2 * j : 2 * j + 2] = h[i, j] * np.eye(2)
        assert np.allclose(ab.unitary, expected)

    def test_hadamard_tensor_hadamard_entries(self):
        ab = tensor_pair(hadamard_pair(), hadamard_pair())
        assert np.allclose(np.abs(ab.unitary), 0.5)
        # explicit Kronecker expansion oracle
        h = hadamard_pair().unitary
        expected = np.block([[h[0, 0] * h, h[0, 1] * h], [h[1, 0] * h, h[1, 1] * h]])
        assert np.allclose(ab.unitary, expected)

    def test_associativity_up_to_relabeling(self):
        a = random_unitary(2, 1)
        b = random_unitary(2, 2)
        c = random_unitary(3, 3)
        left = tensor_pair(tensor_pair(a, b), c)
        right = tensor_pair(a, tensor_pair(b, c))
        assert np.allclose(left.unitary, right.unitary)


class TestRandomUnitary:
    def test_deterministic_for_fixed_seed(self):
        u1 = random_unitary(2, seed=7).unitary
        u2 = random_unitary(2, seed=7).unitary
        assert np.array_equal(u1, u2)

    def test_unitarity(self):
        for d, seed in [(2, 1), (3, 1), (5, 2), (8, 3)]:
            assert unitarity_defect(random_unitary(d, seed).unitary) <= 1e-10

    def test_distinct_seeds_differ(self):
        u1 = random_unitary(2, seed=1).unitary
        u2 = random_unitary(2, seed=2).unitary
        assert np.max(np.abs(u1 - u2)) > 1e-3

    def test_dimension_guard(self):
        with pytest.raises(InputError):
            random_unitary(1, seed=0)


class TestGroundState:
    def test_diagonal(self):
        energy, state = ground_state(np.diag([0.0, 1.0]))
        assert energy == 0.0
        assert abs(abs(state.vector[0]) - 1.0) < 1e-12

    def test_pauli_x(self):
        sx = np.array([[0, 1], [1, 0]], dtype=complex)
        energy, state = ground_state(sx)
        assert abs(energy + 1.0) < 1e-12
        target = np.array([1, -1]) / np.sqrt(2)
        overlap = abs(np.vdot(target, state.vector))
        assert abs(overlap - 1.0) < 1e-10

    def test_against_char_poly_oracle(self):
        rng = np.random.default_rng(3)
        g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        h = (g + g.conj().T) / 2
        energy, _ = ground_state(h)
        assert abs(energy - char_poly_min_root(h)) < 1e-10

    def test_rejects_non_hermitian(self):
        with pytest.raises(InputError, match="Hermitian"):
            ground_state(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_energy_below_rayleigh_quotients(self):
        rng = np.random.default_rng(8)
        g = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        h = (g + g.conj().T) / 2
        energy, _ = ground_state(h)
        for _ in range(100):
            psi = rng.standard_normal(5) + 1j * rng.standard_normal(5)
            psi /= np.linalg.norm(psi)
            assert energy <= np.real(np.vdot(psi, h @ psi)) + 1e-10


class TestUnitaryFile:
    def test_round_trip(self, tmp_path):
        pair = random_unitary(3, seed=5)
        path = tmp_path / "u.json"
        save_unitary(pair, path)
        loaded = load_unitary(path)
        assert np.allclose(loaded.unitary, pair.unitary, atol=1e-15)

    def test_missing_field_is_named(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"dim": 2, "re": [[1,0],[0,1]]}')
        with pytest.raises(InputError, match='"im"'):
            load_unitary(path)

    def test_non_unitary_reports_defect(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(
            '{"dim": 2, "re": [[1.0, 0.5], [0.0, 1.0]], "im": [[0,0],[0,0]]}'
        )
        with pytest.raises(InputError, match="max|U"):
            load_unitary(path)

    def test_shape_mismatch_is_named(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"dim": 2, "re": [[1,0,0],[0,1,0]], "im": [[0,0],[0,0]]}')
        with pytest.raises(InputError, match='"re"'):
            load_unitary(path)


class TestQuantumState:
    def test_pure_normalization_guard(self):
        with pytest.raises(InputError, match="normalized"):
            QuantumState(kind="pure", vector=np.array([1.0, 1.0]))

    def test_mixed_guards(self):
        with pytest.raises(InputError, match="Hermitian"):
            QuantumState.mixed(np.array([[0.5, 0.5], [0.0, 0.5]]))
        with pytest.raises(InputError, match="trace"):
            QuantumState.mixed(np.eye(2))
        with pytest.raises(InputError, match="eigenvalue"):
            QuantumState.mixed(np.diag([1.5, -0.5]))
