"""Reference states and the brute-force copy-symmetry test.

acceptance_probability simulates the k-copy symmetric-subspace measurement
literally, as the trace of the projector against the k-fold Kronecker
power of the state.  It is deliberately independent of the series
machinery in zeta.py so the two can cross-check each other.
"""

from dataclasses import dataclass
from itertools import permutations
from math import comb, factorial, sqrt

import numpy as np

from .errors import CapExceeded, InvalidParameter
from .linalg import DEFAULT_TOL, DensityMatrix, kron, trace_powers, validate_density

#: Hard caps keeping the dense d^k x d^k projector tractable.
MAX_COPIES = 5
MAX_PROJECTOR_DIM = 4096

_PROJECTOR_IDEMPOTENT_TOL = 1e-10
_PROJECTOR_HERMITIAN_TOL = 1e-12
_PROJECTOR_TRACE_TOL = 1e-8


class PureState:
    """A unit vector; density() gives the corresponding rank-one state."""

    __slots__ = ("amplitudes", "tol")

    def __init__(self, amplitudes, tol: float = DEFAULT_TOL):
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1).copy()
        if amps.size == 0 or not np.all(np.isfinite(amps)):
            raise InvalidParameter("amplitudes must be a nonempty finite vector")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > tol:
            raise InvalidParameter(f"state norm {norm!r} is not 1 within {tol:.1e}")
        amps.flags.writeable = False
        self.amplitudes = amps
        self.tol = tol

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def density(self) -> DensityMatrix:
        return validate_density(np.outer(self.amplitudes, self.amplitudes.conj()), self.tol)


def plus_state() -> PureState:
    return PureState(np.array([1.0, 1.0]) / sqrt(2.0))


def bell_state() -> PureState:
    return PureState(np.array([1.0, 0.0, 0.0, 1.0]) / sqrt(2.0))


def w_state() -> PureState:
    amps = np.zeros(8)
    amps[[0b001, 0b010, 0b100]] = 1.0 / sqrt(3.0)
    return PureState(amps)


def ghz_state() -> PureState:
    amps = np.zeros(8)
    amps[[0b000, 0b111]] = 1.0 / sqrt(2.0)
    return PureState(amps)


def isotropic_state(p: float) -> DensityMatrix:
    """Two-qubit interpolation: maximally entangled at p=0, maximally mixed at p=1."""
    if not 0.0 <= p <= 1.0:
        raise InvalidParameter(f"isotropic parameter must lie in [0, 1], got {p!r}")
    m = np.zeros((4, 4))
    m[0, 0] = m[3, 3] = (2.0 - p) / 4.0
    m[1, 1] = m[2, 2] = p / 4.0
    m[0, 3] = m[3, 0] = (1.0 - p) / 2.0
    return validate_density(m)


def sigma_state() -> DensityMatrix:
    """The two-qubit mixed diagonal state diag(1/3, 0, 0, 2/3)."""
    return validate_density(np.diag([1.0 / 3.0, 0.0, 0.0, 2.0 / 3.0]))


def make_state(name: str, p: float = None, data=None):
    """Named state constructor; returns a PureState or DensityMatrix.

    Names: plus, bell, w, ghz, isotropic (requires p), sigma, custom
    (requires data: a vector of amplitudes or a density matrix).
    """
    if name == "plus":
        return plus_state()
    if name == "bell":
        return bell_state()
    if name == "w":
        return w_state()
    if name == "ghz":
        return ghz_state()
    if name == "isotropic":
        if p is None:
            raise InvalidParameter("isotropic state requires parameter p")
        return isotropic_state(p)
    if name == "sigma":
        return sigma_state()
    if name == "custom":
        if data is None:
            raise InvalidParameter("custom state requires data")
        arr = np.asarray(data, dtype=complex)
        if arr.ndim == 1:
            return PureState(arr)
        return validate_density(arr)
    raise InvalidParameter(f"unknown state name {name!r}")


def _check_caps(d: int, k: int) -> int:
    if k < 1 or d < 1:
        raise ValueError("need d >= 1 and k >= 1")
    if k > MAX_COPIES:
        raise CapExceeded(f"k={k} exceeds cap {MAX_COPIES}")
    n = d ** k
    if n > MAX_PROJECTOR_DIM:
        raise CapExceeded(f"d^k={n} exceeds cap {MAX_PROJECTOR_DIM}")
    return n


def _digits(d: int, k: int) -> np.ndarray:
    """Base-d digit table of 0..d^k-1, most significant digit first."""
    idx = np.arange(d ** k)
    table = np.empty((d ** k, k), dtype=np.int64)
    for pos in range(k - 1, -1, -1):
        table[:, pos] = idx % d
        idx = idx // d
    return table


def _permuted_indices(digits: np.ndarray, d: int, perm) -> np.ndarray:
    """Image of each basis index under tensor-factor permutation perm."""
    k = digits.shape[1]
    inverse = [0] * k
    for src, dst in enumerate(perm):
        inverse[dst] = src
    weights = d ** np.arange(k - 1, -1, -1, dtype=np.int64)
    return digits[:, inverse] @ weights


def permutation_operator(d: int, k: int, perm) -> np.ndarray:
    """Unitary permuting k tensor factors of dimension d.

    perm is in one-line notation over 0..k-1; the operator sends basis
    vector (i_0, ..., i_{k-1}) to the tuple with factor m taken from
    position perm^{-1}(m), so that composition of permutations matches
    matrix multiplication.
    """
    n = _check_caps(d, k)
    perm = tuple(perm)
    if sorted(perm) != list(range(k)):
        raise ValueError(f"{perm!r} is not a permutation of 0..{k - 1}")
    digits = _digits(d, k)
    target = _permuted_indices(digits, d, perm)
    op = np.zeros((n, n), dtype=complex)
    op[target, np.arange(n)] = 1.0
    return op


@dataclass(frozen=True)
class SymmetricProjector:
    """Projector onto the symmetric subspace of k copies of dimension d."""

    d: int
    k: int
    matrix: np.ndarray


def symmetric_projector(d: int, k: int) -> SymmetricProjector:
    """Average of all k! permutation operators, with invariant checks.

    Verified on every construction: Hermiticity, idempotence, and trace
    equal to the symmetric-subspace dimension binom(d+k-1, k).
    """
    n = _check_caps(d, k)
    digits = _digits(d, k)
    columns = np.arange(n)
    proj = np.zeros((n, n), dtype=complex)
    for perm in permutations(range(k)):
        proj[_permuted_indices(digits, d, perm), columns] += 1.0
    proj /= factorial(k)

    herm = float(np.abs(proj - proj.conj().T).max())
    if herm > _PROJECTOR_HERMITIAN_TOL:
        raise RuntimeError(f"projector Hermiticity defect {herm:.3e}")
    idem = float(np.abs(proj @ proj - proj).max())
    if idem > _PROJECTOR_IDEMPOTENT_TOL:
        raise RuntimeError(f"projector idempotence defect {idem:.3e}")
    trace_defect = abs(float(np.trace(proj).real) - comb(d + k - 1, k))
    if trace_defect > _PROJECTOR_TRACE_TOL:
        raise RuntimeError(f"projector trace defect {trace_defect:.3e}")
    proj.flags.writeable = False
    return SymmetricProjector(d=d, k=k, matrix=proj)


def acceptance_probability(rho: DensityMatrix, k: int) -> float:
    """Acceptance probability of the k-copy symmetry test on rho.

    Computed literally as the trace of the symmetric projector against
    rho tensored with itself k times.
    """
    _check_caps(rho.dim, k)
    proj = symmetric_projector(rho.dim, k).matrix
    power = rho.matrix
    for _ in range(k - 1):
        power = kron(power, rho.matrix)
    value = complex(np.einsum("ij,ji->", proj, power))
    return float(value.real)


def purity(rho: DensityMatrix) -> float:
    """tr[rho^2]; one exactly for pure states, 1/dim for maximally mixed."""
    return trace_powers(rho, 2)[1]
