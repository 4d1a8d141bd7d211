"""The zeta function of a density matrix, by three routes.

The function is 1/det(I - u*rho): a power series whose n-th coefficient is
the symmetric-group cycle index evaluated at the trace power sums of rho
(equivalently, the acceptance probability of the n-copy symmetry test),
a rational function whose poles sit at reciprocals of the nonzero
eigenvalues, and an Euler product over the prime classes of the weighted
graph of rho.  The three routes cross-check each other; agreement is the
core correctness property of the package.
"""

from dataclasses import dataclass, field
from math import factorial

from .errors import (
    AtSingularity,
    IncompletePrimes,
    InsufficientPowerSums,
    NonRealCoefficient,
)
from .graph import PRIME_LENGTH_CAP
from .linalg import (
    ZERO_EIGENVALUE_TOL,
    DensityMatrix,
    PowerSums,
    elementary_from_power_sums,
    trace_powers,
)

#: Relative tolerance for merging reciprocal-eigenvalue singularities.
MULTIPLICITY_RTOL = 1e-8

#: Default tolerance for separability verdicts.
DEFAULT_SEPARABILITY_TOL = 1e-6

_IMAG_TOL = 1e-9
_SINGULARITY_GUARD = 1e-13


@dataclass(frozen=True)
class ZetaSeries:
    """Truncated power-series expansion; coeffs[n] is the u^n coefficient."""

    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs or self.coeffs[0] != 1.0:
            raise ValueError("series must start with constant coefficient 1")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]


@dataclass(frozen=True)
class ZetaRational:
    """Rational form 1/denom(u) with denom = det(I - u*rho).

    denom holds real polynomial coefficients (constant term first);
    singularities is an ascending list of (location, multiplicity) pairs,
    one location per group of reciprocal eigenvalues.
    """

    denom: tuple
    singularities: tuple = field(default=())

    def __post_init__(self):
        if not self.denom or self.denom[0] != 1.0:
            raise ValueError("denominator must have constant term 1")


@dataclass(frozen=True)
class SeparabilityVerdict:
    """Outcome of a pure-bipartite separability test.

    For an entangled verdict by the coefficient route, failing_n and value
    report the first coefficient away from one; by the singularity route,
    value reports the offending singularity location.  caveat is set when
    the caller did not assert pure-bipartite provenance (the criteria do
    not apply to general mixed joint states).
    """

    separable: bool
    method: str
    failing_n: int = None
    value: float = None
    caveat: bool = True

    def __str__(self):
        note = " (caveat: pure-bipartite provenance not asserted)" if self.caveat else ""
        if self.separable:
            return f"separable by {self.method}{note}"
        if self.method == "coefficients":
            return f"entangled by {self.method}: n={self.failing_n}, c_n={self.value!r}{note}"
        return f"entangled by {self.method}: u={self.value!r}{note}"


def _power_sum_values(power_sums):
    if isinstance(power_sums, PowerSums):
        return list(power_sums.values)
    return [float(v) for v in power_sums]


def series_coeffs(power_sums, order: int) -> ZetaSeries:
    """Series coefficients from power sums by the Newton-type recurrence.

    c_0 = 1 and c_n = (1/n) * sum_{m=1..n} p_m c_{n-m}, which is the
    expansion of exp(sum_m p_m u^m / m) and, term for term, the cycle
    index of the symmetric group at x_m = p_m.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    p = _power_sum_values(power_sums)
    if len(p) < order:
        raise InsufficientPowerSums(f"need {order} power sums, got {len(p)}")
    c = [1.0]
    for n in range(1, order + 1):
        c.append(sum(p[m - 1] * c[n - m] for m in range(1, n + 1)) / n)
    return ZetaSeries(tuple(c))


def partition_multiplicities(k: int):
    """Yield partitions of k as multiplicity tuples (a_1, ..., a_k).

    a[j-1] counts the parts equal to j, so sum(j * a_j) == k.  Partitions
    appear in order of decreasing largest part.
    """
    def descending_parts(remaining, max_part):
        if remaining == 0:
            yield ()
            return
        for first in range(min(max_part, remaining), 0, -1):
            for rest in descending_parts(remaining - first, first):
                yield (first,) + rest

    for parts in descending_parts(k, k if k else 1):
        mult = [0] * k
        for part in parts:
            mult[part - 1] += 1
        yield tuple(mult)


def cycle_index(k: int, x) -> float:
    """Cycle index polynomial of the symmetric group on k letters at x_1..x_k.

    Exact partition sum: for each partition with multiplicities a_j the term
    is prod_j x_j^a_j / (j^a_j a_j!).  Terms accumulate in the generator's
    descending-largest-part order.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return 1.0
    x = list(x)
    if len(x) < k:
        raise ValueError(f"need {k} arguments, got {len(x)}")
    total = 0.0
    for mult in partition_multiplicities(k):
        term = 1.0
        for j, a in enumerate(mult, start=1):
            if a:
                term *= x[j - 1] ** a / (j ** a * factorial(a))
        total += term
    return total


def euler_product_coeffs(primes, order: int) -> ZetaSeries:
    """Expand the Euler product over prime classes as a truncated series.

    Each class contributes a factor 1/(1 - norm * u^nu), expanded as a
    geometric series and multiplied out with truncation at the requested
    order.  The prime list must be complete up to that length, so the
    order may not exceed the enumeration cap.  Coefficients must come out
    real (imaginary residue below 1e-9), and the imaginary parts are
    dropped after the check.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    if order > PRIME_LENGTH_CAP:
        raise IncompletePrimes(
            f"order {order} exceeds the prime enumeration cap {PRIME_LENGTH_CAP}"
        )
    coeffs = [0j] * (order + 1)
    coeffs[0] = 1 + 0j
    for prime in primes:
        if prime.nu > order:
            continue
        factor = [0j] * (order + 1)
        factor[0] = 1 + 0j
        power = 1 + 0j
        for j in range(1, order // prime.nu + 1):
            power *= prime.edge_norm
            factor[j * prime.nu] = power
        product = [0j] * (order + 1)
        for a in range(order + 1):
            if coeffs[a] == 0:
                continue
            for b in range(order + 1 - a):
                if factor[b] != 0:
                    product[a + b] += coeffs[a] * factor[b]
        coeffs = product
    worst = max(abs(c.imag) for c in coeffs)
    if worst > _IMAG_TOL:
        raise NonRealCoefficient(f"imaginary residue {worst:.3e} exceeds {_IMAG_TOL:.1e}")
    real = [c.real for c in coeffs]
    real[0] = 1.0
    return ZetaSeries(tuple(real))


def singularities(rho: DensityMatrix) -> ZetaRational:
    """Rational form of the zeta function with its singularity list.

    The denominator det(I - u*rho) comes from the power sums via the
    elementary-symmetric recurrence; the singularities are reciprocals of
    the eigenvalues above the zero threshold, merged into multiplicities
    when they agree within 1e-8 relative, ascending.
    """
    p = trace_powers(rho, rho.dim)
    e = elementary_from_power_sums(p)
    denom = tuple(e[k] if k % 2 == 0 else -e[k] for k in range(len(e)))
    locations = sorted(1.0 / lam for lam in rho.eigenvalues if lam > ZERO_EIGENVALUE_TOL)
    groups = []
    for u in locations:
        if groups:
            mean, count = groups[-1]
            if abs(u - mean) <= MULTIPLICITY_RTOL * abs(mean):
                groups[-1] = ((mean * count + u) / (count + 1), count + 1)
                continue
        groups.append((u, 1))
    return ZetaRational(denom=denom, singularities=tuple(groups))


def zeta_eval(rational: ZetaRational, u) -> complex:
    """Evaluate 1/denom(u) by Horner's rule; error out on the poles."""
    u = complex(u)
    value = 0j
    for coeff in reversed(rational.denom):
        value = value * u + coeff
    if abs(value) <= _SINGULARITY_GUARD:
        raise AtSingularity(f"denominator magnitude {abs(value):.3e} at u={u}")
    return 1.0 / value


def is_separable_by_coeffs(
    rho_b: DensityMatrix,
    order: int,
    tol: float = DEFAULT_SEPARABILITY_TOL,
    pure_bipartite: bool = False,
) -> SeparabilityVerdict:
    """Coefficient criterion: separable iff every series coefficient is one.

    Checks n = 1..order; n = 2 alone is decisive in exact arithmetic (it
    measures purity), larger orders serve as diagnostics.  rho_b must be
    the reduced state of a pure bipartite state for the verdict to mean
    separability; pass pure_bipartite=True to clear the caveat flag.
    """
    if order < 2:
        raise ValueError("order must be at least 2")
    if tol <= 0:
        raise ValueError("tol must be positive")
    series = series_coeffs(trace_powers(rho_b, order), order)
    for n in range(1, order + 1):
        if abs(series[n] - 1.0) > tol:
            return SeparabilityVerdict(
                separable=False,
                method="coefficients",
                failing_n=n,
                value=series[n],
                caveat=not pure_bipartite,
            )
    return SeparabilityVerdict(separable=True, method="coefficients", caveat=not pure_bipartite)


def is_separable_by_singularity(
    rho_b: DensityMatrix,
    tol: float = DEFAULT_SEPARABILITY_TOL,
    pure_bipartite: bool = False,
) -> SeparabilityVerdict:
    """Singularity criterion: separable iff the only pole is u = 1, simple."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    rational = singularities(rho_b)
    sing = rational.singularities
    if len(sing) == 1 and sing[0][1] == 1 and abs(sing[0][0] - 1.0) <= tol:
        return SeparabilityVerdict(separable=True, method="singularity", caveat=not pure_bipartite)
    offending = next(
        (u for u, mult in sing if abs(u - 1.0) > tol or mult > 1),
        sing[0][0] if sing else None,
    )
    return SeparabilityVerdict(
        separable=False,
        method="singularity",
        value=offending,
        caveat=not pure_bipartite,
    )
