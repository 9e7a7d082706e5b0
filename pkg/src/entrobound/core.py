"""Complex linear-algebra substrate: measurement pairs, states, outcome statistics.

The first measurement of every pair is fixed to the computational basis, so a
single unitary fully encodes the pair: the second measurement has projectors
``U X_i U^dag`` built from the columns of ``U``.  All objects are immutable
after construction and all operations are pure functions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

UNITARITY_TOL = 1e-10
PROB_CLAMP = 1e-10
STATE_NORM_TOL = 1e-12


class InputError(ValueError):
    """A problem instance is malformed (matrix, state, or file contents)."""


class ParameterError(ValueError):
    """A numeric parameter is outside its documented range."""


class ResourceGuardError(RuntimeError):
    """A requested computation exceeds a configured size cap."""


def unitarity_defect(u: np.ndarray) -> float:
    """Max-entry deviation of U^dag U from the identity."""
    u = np.asarray(u, dtype=np.complex128)
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))


def _frozen_complex(a, shape_kind: str) -> np.ndarray:
    arr = np.ascontiguousarray(np.asarray(a, dtype=np.complex128))
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise InputError(f"{shape_kind} entries must be finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class MeasurementPair:
    """Two non-degenerate projective measurements linked by a basis-change unitary."""

    unitary: np.ndarray
    label: str = ""

    def __post_init__(self):
        u = _frozen_complex(self.unitary, "unitary")
        if u.ndim != 2 or u.shape[0] != u.shape[1]:
            raise InputError(f"unitary must be a square matrix, got shape {u.shape}")
        if u.shape[0] < 2:
            raise InputError("measurement pairs need dimension >= 2")
        defect = unitarity_defect(u)
        if defect > UNITARITY_TOL:
            raise InputError(
                f"matrix is not unitary: max|U^dag U - 1| = {defect:.3e} "
                f"exceeds tolerance {UNITARITY_TOL}"
            )
        object.__setattr__(self, "unitary", u)

    @property
    def dim(self) -> int:
        return self.unitary.shape[0]

    def adjoint(self) -> "MeasurementPair":
        """The pair with measurement roles swapped (unitary replaced by U^dag)."""
        label = f"{self.label}^dag" if self.label else ""
        return MeasurementPair(self.unitary.conj().T, label=label)


@dataclass(frozen=True)
class QuantumState:
    """Pure state vector or density operator on a d-dimensional system."""

    kind: str
    vector: np.ndarray | None = None
    matrix: np.ndarray | None = None

    def __post_init__(self):
        if self.kind == "pure":
            if self.vector is None or self.matrix is not None:
                raise InputError("pure state takes a vector and no matrix")
            v = _frozen_complex(self.vector, "state vector")
            if v.ndim != 1 or v.shape[0] < 1:
                raise InputError("state vector must be one-dimensional")
            if abs(np.linalg.norm(v) - 1.0) > STATE_NORM_TOL:
                raise InputError(
                    f"pure state not normalized: |norm - 1| = "
                    f"{abs(np.linalg.norm(v) - 1.0):.3e}"
                )
            object.__setattr__(self, "vector", v)
        elif self.kind == "mixed":
            if self.matrix is None or self.vector is not None:
                raise InputError("mixed state takes a matrix and no vector")
            m = _frozen_complex(self.matrix, "density matrix")
            if m.ndim != 2 or m.shape[0] != m.shape[1]:
                raise InputError("density matrix must be square")
            if np.max(np.abs(m - m.conj().T)) > STATE_NORM_TOL:
                raise InputError("density matrix is not Hermitian within 1e-12")
            if abs(np.trace(m).real - 1.0) > STATE_NORM_TOL:
                raise InputError("density matrix trace differs from 1 beyond 1e-12")
            if np.min(np.linalg.eigvalsh((m + m.conj().T) / 2)) < -1e-10:
                raise InputError("density matrix has an eigenvalue below -1e-10")
            object.__setattr__(self, "matrix", m)
        else:
            raise InputError(f"state kind must be 'pure' or 'mixed', got {self.kind!r}")

    @property
    def dim(self) -> int:
        return self.vector.shape[0] if self.kind == "pure" else self.matrix.shape[0]

    def density(self) -> np.ndarray:
        if self.kind == "mixed":
            return self.matrix
        return np.outer(self.vector, self.vector.conj())

    @classmethod
    def pure(cls, vector) -> "QuantumState":
        """Build a pure state, normalizing the amplitude vector."""
        v = np.asarray(vector, dtype=np.complex128)
        nrm = np.linalg.norm(v)
        if nrm == 0 or not np.isfinite(nrm):
            raise InputError("cannot normalize a zero or non-finite vector")
        return cls(kind="pure", vector=v / nrm)

    @classmethod
    def mixed(cls, matrix) -> "QuantumState":
        return cls(kind="mixed", matrix=matrix)

    @classmethod
    def basis(cls, dim: int, index: int) -> "QuantumState":
        if not 0 <= index < dim:
            raise InputError(f"basis index {index} out of range for dimension {dim}")
        v = np.zeros(dim, dtype=np.complex128)
        v[index] = 1.0
        return cls(kind="pure", vector=v)


def _clamped_simplex(p: np.ndarray) -> np.ndarray:
    """Zero tiny eigensolver negatives in [-1e-10, 0) and renormalize."""
    if np.min(p) < -PROB_CLAMP:
        raise InputError(
            f"outcome probability {np.min(p):.3e} is negative beyond tolerance"
        )
    p = np.where(p < 0, 0.0, p)
    return p / p.sum()


def outcome_distribution(
    state: QuantumState, pair: MeasurementPair, which: str
) -> np.ndarray:
    """Outcome probabilities tr(rho X_i) or tr(rho Y_i) with Y_i = U X_i U^dag."""
    if state.dim != pair.dim:
        raise InputError(
            f"state dimension {state.dim} does not match pair dimension {pair.dim}"
        )
    if which not in ("X", "Y"):
        raise ParameterError(f"measurement selector must be 'X' or 'Y', got {which!r}")
    if state.kind == "pure":
        amp = state.vector if which == "X" else pair.unitary.conj().T @ state.vector
        p = np.abs(amp) ** 2
    else:
        rho = state.matrix
        if which == "Y":
            rho = pair.unitary.conj().T @ rho @ pair.unitary
        p = np.real(np.diag(rho)).copy()
    return _clamped_simplex(p)


def tensor_pair(a: MeasurementPair, b: MeasurementPair) -> MeasurementPair:
    """Kronecker-product pair; outcome index order is (i_A, i_B) lexicographic."""
    label = f"{a.label}(x){b.label}" if (a.label or b.label) else ""
    return MeasurementPair(np.kron(a.unitary, b.unitary), label=label)


def random_unitary(dim: int, seed: int, label: str | None = None) -> MeasurementPair:
    """Haar-distributed pair from a seeded Gaussian matrix via phase-fixed QR."""
    if dim < 2:
        raise InputError(f"random unitary needs dimension >= 2, got {dim}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    diag = np.diag(r)
    phases = diag / np.abs(diag)
    u = q * phases
    if label is None:
        label = f"haar-d{dim}-seed{seed}"
    return MeasurementPair(u, label=label)


def random_pure_states(dim: int, n: int, rng: np.random.Generator) -> np.ndarray:
    """(n, dim) array of Haar-random unit vectors (rows)."""
    g = rng.standard_normal((n, dim)) + 1j * rng.standard_normal((n, dim))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def ground_state(h: np.ndarray) -> tuple[float, QuantumState]:
    """Minimal eigenvalue and a normalized eigenvector of a Hermitian matrix."""
    h = np.asarray(h, dtype=np.complex128)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise InputError("Hamiltonian must be a square matrix")
    if np.max(np.abs(h - h.conj().T)) > 1e-10:
        raise InputError("Hamiltonian is not Hermitian within 1e-10")
    w, v = np.linalg.eigh((h + h.conj().T) / 2)
    return float(w[0]), QuantumState.pure(v[:, 0])


def hadamard_pair() -> MeasurementPair:
    """The qubit pair of mutually unbiased bases."""
    u = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / np.sqrt(2.0)
    return MeasurementPair(u, label="hadamard")


def identity_pair(dim: int = 2) -> MeasurementPair:
    return MeasurementPair(np.eye(dim, dtype=np.complex128), label=f"identity-d{dim}")


def save_unitary(pair: MeasurementPair, path) -> None:
    """Write the unitary file format: {"dim": d, "re": [[...]], "im": [[...]]}."""
    payload = {
        "dim": pair.dim,
        "re": pair.unitary.real.tolist(),
        "im": pair.unitary.imag.tolist(),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh)


def load_unitary(path, label: str | None = None) -> MeasurementPair:
    """Parse the unitary JSON format, rejecting non-unitary input with a diagnostic."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: cannot read file ({exc})") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(payload, dict):
        raise InputError(f"{path}: top-level JSON value must be an object")
    for field in ("dim", "re", "im"):
        if field not in payload:
            raise InputError(f'{path}: missing field "{field}"')
    dim = payload["dim"]
    if not isinstance(dim, int) or dim < 2:
        raise InputError(f'{path}: field "dim" must be an integer >= 2, got {dim!r}')
    try:
        re = np.asarray(payload["re"], dtype=np.float64)
        im = np.asarray(payload["im"], dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise InputError(f'{path}: fields "re"/"im" must be numeric arrays') from exc
    for field, arr in (("re", re), ("im", im)):
        if arr.shape != (dim, dim):
            raise InputError(
                f'{path}: field "{field}" must be a {dim}x{dim} row-major array, '
                f"got shape {arr.shape}"
            )
    u = re + 1j * im
    defect = unitarity_defect(u)
    if defect > UNITARITY_TOL:
        raise InputError(
            f"{path}: matrix is not unitary, max|U^dag U - 1| = {defect:.3e}"
        )
    if label is None:
        label = str(path)
    return MeasurementPair(u, label=label)
