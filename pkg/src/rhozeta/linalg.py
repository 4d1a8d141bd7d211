"""Dense complex linear algebra for density matrices.

Matrices are plain numpy complex128 arrays; the only wrapper type is
DensityMatrix, which is produced by validate_density and carries its
eigenvalues (computed once, during validation, by the cyclic Jacobi
solver below).

Index convention, fixed package-wide: in a bipartite system the first
subsystem (A) is the slow, most-significant index.  kron(A, B) and
partial_trace share this convention, so
partial_trace(kron(rho_a, rho_b), (da, db), keep="B") == rho_b.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateSample,
    DimensionMismatch,
    NoConvergence,
    NotHermitian,
    NotPSD,
    NotUnitTrace,
)

#: Default absolute tolerance for density-matrix validation.
DEFAULT_TOL = 1e-9

#: Eigenvalues with magnitude at or below this are treated as zero.
ZERO_EIGENVALUE_TOL = 1e-12

# Jacobi sweeps stop once the off-diagonal Frobenius mass drops below
# this factor times the Frobenius norm of the input.
_JACOBI_OFF_TARGET = 1e-14

_UNITARITY_TOL = 1e-12


def as_square_matrix(matrix) -> np.ndarray:
    """Coerce input to a square complex128 array with finite entries."""
    a = np.asarray(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise DimensionMismatch(f"expected a nonempty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


class DensityMatrix:
    """A validated density matrix: Hermitian, unit-trace, positive semi-definite.

    Construct through validate_density; the constructor itself performs no
    checks.  Instances are immutable (the underlying array is read-only) and
    safe to share between threads.  ``eigenvalues`` holds the real spectrum
    in ascending order, as computed during validation.
    """

    __slots__ = ("matrix", "tol", "eigenvalues")

    def __init__(self, matrix: np.ndarray, tol: float, eigenvalues: np.ndarray):
        matrix = matrix.copy()
        matrix.flags.writeable = False
        eigenvalues = eigenvalues.copy()
        eigenvalues.flags.writeable = False
        self.matrix = matrix
        self.tol = tol
        self.eigenvalues = eigenvalues

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def rank(self, zero_tol: float = ZERO_EIGENVALUE_TOL) -> int:
        """Number of eigenvalues above the zero threshold."""
        return int(np.sum(self.eigenvalues > zero_tol))

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim}, tol={self.tol:g})"


@dataclass(frozen=True)
class PowerSums:
    """Trace power sums p_m = tr[rho^m]; values[m-1] holds p_m."""

    values: tuple

    def __len__(self):
        return len(self.values)

    def __getitem__(self, idx):
        return self.values[idx]


def validate_density(matrix, tol: float = DEFAULT_TOL) -> DensityMatrix:
    """Validate a matrix as a density matrix, or raise naming the first violation.

    Checks, in order: Hermiticity (max entrywise defect), unit trace, and
    positive semi-definiteness (minimum eigenvalue >= -tol).  Each error
    message reports the offending magnitude.
    """
    a = as_square_matrix(matrix)
    if tol <= 0:
        raise ValueError("tol must be positive")
    herm_defect = float(np.abs(a - a.conj().T).max())
    if herm_defect > tol:
        raise NotHermitian(f"Hermiticity defect {herm_defect:.3e} exceeds tol {tol:.1e}")
    trace_defect = abs(complex(np.trace(a)) - 1.0)
    if trace_defect > tol:
        raise NotUnitTrace(f"|tr - 1| = {trace_defect:.3e} exceeds tol {tol:.1e}")
    eigenvalues = eig_hermitian(a, tol=tol)
    if eigenvalues[0] < -tol:
        raise NotPSD(f"minimum eigenvalue {eigenvalues[0]:.3e} below -{tol:.1e}")
    return DensityMatrix(a, tol, eigenvalues)


def trace_powers(rho: DensityMatrix, m_max: int) -> PowerSums:
    """Compute p_m = tr[rho^m] for m = 1..m_max by repeated multiplication."""
    if m_max < 1:
        raise ValueError("m_max must be at least 1")
    a = rho.matrix
    power = a
    values = []
    for _ in range(m_max):
        values.append(float(np.trace(power).real))
        power = power @ a
    return PowerSums(tuple(values))


def kron(a, b) -> np.ndarray:
    """Kronecker product of two square matrices; the first factor is the slow index."""
    a = as_square_matrix(a)
    b = as_square_matrix(b)
    return np.kron(a, b)


def partial_trace(rho: DensityMatrix, dims, keep: str) -> DensityMatrix:
    """Trace out one subsystem of a bipartite state.

    dims is (d_a, d_b) with subsystem A the slow index; keep selects the
    subsystem retained ("A" or "B").  The reduced matrix is revalidated.
    """
    d_a, d_b = dims
    if d_a < 1 or d_b < 1 or d_a * d_b != rho.dim:
        raise DimensionMismatch(
            f"subsystem dims {d_a}x{d_b} do not factor dimension {rho.dim}"
        )
    r = rho.matrix.reshape(d_a, d_b, d_a, d_b)
    if keep == "B":
        reduced = np.trace(r, axis1=0, axis2=2)
    elif keep == "A":
        reduced = np.trace(r, axis1=1, axis2=3)
    else:
        raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")
    return validate_density(reduced, rho.tol)


def eig_hermitian(matrix, tol: float = DEFAULT_TOL, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, ascending, by cyclic Jacobi rotations.

    Each rotation is a complex plane rotation chosen to annihilate one
    off-diagonal pair; sweeps repeat until the off-diagonal Frobenius mass
    falls below 1e-14 times the Frobenius norm of the input.  Deterministic
    and dependency-free, intended for dimensions up to ~100.
    """
    a = as_square_matrix(matrix)
    herm_defect = float(np.abs(a - a.conj().T).max())
    if herm_defect > tol:
        raise NotHermitian(f"Hermiticity defect {herm_defect:.3e} exceeds tol {tol:.1e}")
    n = a.shape[0]
    if n == 1:
        return np.array([a[0, 0].real])

    a = (a + a.conj().T) / 2.0
    norm = float(np.linalg.norm(a))
    target = _JACOBI_OFF_TARGET * norm
    # Rotating every |a_pq| > target/n caps the residual mass at target.
    skip = target / n

    def off_mass():
        # summed directly over off-diagonal entries; subtracting the diagonal
        # mass from the total would cancel catastrophically near convergence
        m = np.abs(a) ** 2
        np.fill_diagonal(m, 0.0)
        return math.sqrt(float(m.sum()))

    for _ in range(max_sweeps):
        if off_mass() <= target:
            return np.sort(np.diagonal(a).real)
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= skip:
                    continue
                phase = apq / mag
                zeta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                # smaller-magnitude root of t^2 - 2*zeta*t - 1 = 0
                sign = 1.0 if zeta >= 0 else -1.0
                t = -sign / (abs(zeta) + math.sqrt(1.0 + zeta * zeta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                col_p = c * a[:, p] + s * np.conj(phase) * a[:, q]
                col_q = -s * phase * a[:, p] + c * a[:, q]
                a[:, p] = col_p
                a[:, q] = col_q
                row_p = c * a[p, :] + s * phase * a[q, :]
                row_q = -s * np.conj(phase) * a[p, :] + c * a[q, :]
                a[p, :] = row_p
                a[q, :] = row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    if off_mass() <= target:
        return np.sort(np.diagonal(a).real)
    raise NoConvergence(f"Jacobi sweeps exceeded cap of {max_sweeps}")


def elementary_from_power_sums(power_sums) -> list:
    """Elementary symmetric functions e_0..e_d from power sums p_1..p_d.

    Uses the triangular recurrence e_k = (1/k) * sum_{m=1..k} (-1)^(m-1)
    e_{k-m} p_m, so that det(I - u*rho) = sum_k (-1)^k e_k u^k.
    """
    p = list(power_sums.values if isinstance(power_sums, PowerSums) else power_sums)
    e = [1.0]
    for k in range(1, len(p) + 1):
        total = 0.0
        for m in range(1, k + 1):
            term = e[k - m] * p[m - 1]
            total += term if m % 2 == 1 else -term
        e.append(total / k)
    return e


def random_unitary(dim: int, seed: int) -> np.ndarray:
    """Seeded Haar-like random unitary via Gram-Schmidt on a complex Gaussian.

    Deterministic per seed.  Redraws internally (up to 8 times) if the sample
    is numerically degenerate, then raises DegenerateSample.
    """
    if dim < 1:
        raise ValueError("dim must be at least 1")
    rng = np.random.default_rng(seed)
    for _ in range(8):
        z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim)))
        q = _gram_schmidt_columns(z)
        if q is None:
            continue
        defect = float(np.abs(q.conj().T @ q - np.eye(dim)).max())
        if defect <= _UNITARITY_TOL:
            return q
    raise DegenerateSample(f"no well-conditioned unitary of dim {dim} after 8 draws")


def _gram_schmidt_columns(z: np.ndarray):
    """Orthonormalize columns (two passes); None if a pivot nearly vanishes."""
    n = z.shape[0]
    q = z.astype(complex).copy()
    for j in range(n):
        for _ in range(2):
            for i in range(j):
                q[:, j] -= (q[:, i].conj() @ q[:, j]) * q[:, i]
        norm = float(np.linalg.norm(q[:, j]))
        if norm < 1e-8:
            return None
        q[:, j] /= norm
    return q


def random_density(dim: int, seed: int, tol: float = DEFAULT_TOL) -> DensityMatrix:
    """Seeded full-rank random density matrix (normalized Wishart sample)."""
    if dim < 1:
        raise ValueError("dim must be at least 1")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    w = g @ g.conj().T
    return validate_density(w / np.trace(w).real, tol)


# -- shared matrix JSON format -----------------------------------------------
#
# {"dim": n, "entries": [[re, im], ...]} with n*n row-major entries.

def matrix_to_json(matrix) -> dict:
    """Encode a square matrix in the shared JSON wire format."""
    a = as_square_matrix(matrix)
    n = a.shape[0]
    entries = [[float(v.real), float(v.imag)] for v in a.reshape(n * n)]
    return {"dim": n, "entries": entries}


def matrix_from_json(obj) -> np.ndarray:
    """Decode the shared JSON wire format, rejecting malformed payloads."""
    if not isinstance(obj, dict) or "dim" not in obj or "entries" not in obj:
        raise ValueError("matrix JSON must be an object with 'dim' and 'entries'")
    n = obj["dim"]
    if not isinstance(n, int) or n < 1:
        raise ValueError("'dim' must be a positive integer")
    entries = obj["entries"]
    if not isinstance(entries, list) or len(entries) != n * n:
        raise DimensionMismatch(
            f"'entries' must hold {n * n} pairs for dim {n}, got {len(entries) if isinstance(entries, list) else 'non-list'}"
        )
    out = np.empty(n * n, dtype=complex)
    for idx, pair in enumerate(entries):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise ValueError(f"entry {idx} is not a [re, im] pair")
        out[idx] = complex(float(pair[0]), float(pair[1]))
    return as_square_matrix(out.reshape(n, n))


def save_matrix(path, matrix) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(matrix_to_json(matrix), fh)
        fh.write("\n")


def load_matrix(path) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        return matrix_from_json(json.load(fh))
