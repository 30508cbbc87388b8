"""Bound states of the modified Poschl-Teller well V(x) = -D / cosh^2(alpha x).

Exposes the well parameters, the derived quantum numbers, the discrete
energies, and normalized wavefunctions with their analytic derivatives.
Energies and wavefunctions accept any well with at least one bound state;
the ladder-algebra machinery in :mod:`mptsu2.ladder` additionally requires
an integer well-depth parameter q (odd integer nu = 2q + 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .specfun import gegenbauer, gegenbauer_derivative, log_gamma

__all__ = [
    "PotentialSpec",
    "WellNumbers",
    "StateLabel",
    "well_numbers",
    "depth_for_integer_q",
    "energy",
    "normalization_constant",
    "wavefunction",
    "wavefunction_derivative",
    "bound_state_labels",
]

# q within this distance of an integer is treated as exactly integer when
# counting bound states (the zero-energy state is never normalizable).
INTEGER_Q_TOL = 1e-9


@dataclass(frozen=True)
class PotentialSpec:
    """Physical parameters of one well: depth D, range alpha, mass mu, hbar."""

    D: float
    alpha: float
    mu: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("D", "alpha", "mu", "hbar"):
            if not getattr(self, name) > 0.0:
                raise DomainError(f"PotentialSpec.{name} must be strictly positive")

    @classmethod
    def for_integer_q(cls, q: int, alpha: float = 1.0, mu: float = 1.0,
                      hbar: float = 1.0) -> "PotentialSpec":
        """Dimensionless preset: the depth that makes the well parameter exactly q."""
        return cls(D=depth_for_integer_q(q, alpha, mu, hbar), alpha=alpha, mu=mu, hbar=hbar)


@dataclass(frozen=True)
class WellNumbers:
    """Derived quantum numbers of a well: k, q, nu = 2q + 1 and the top level n_max."""

    k: float
    q: float
    nu: float
    n_max: int

    @property
    def n_states(self) -> int:
        return self.n_max + 1

    @property
    def q_is_integer(self) -> bool:
        return abs(self.q - round(self.q)) <= INTEGER_Q_TOL


@dataclass(frozen=True)
class StateLabel:
    """Quantum numbers of one bound level.

    epsilon = q - n sets the decay rate exp(-epsilon * alpha * |x|); j and m
    are the angular-momentum-style labels of the su(2) classification, with
    2 epsilon = nu - 2n - 1 and m = n - j.
    """

    nu: float
    n: int
    epsilon: float
    j: float
    m: float

    @classmethod
    def from_nu_n(cls, nu: float, n: int) -> "StateLabel":
        j = (nu - 1.0) / 2.0
        return cls(nu=nu, n=n, epsilon=(nu - 2.0 * n - 1.0) / 2.0, j=j, m=n - j)


def well_numbers(spec: PotentialSpec) -> WellNumbers:
    """Solve the depth relation q(q + 1) = 2 mu D / (alpha hbar)^2 for the well numbers.

    For integer q (within INTEGER_Q_TOL) the zero-energy level is excluded and
    n_max = q - 1; otherwise every level with epsilon = q - n > 0 is bound,
    i.e. n_max = ceil(q) - 1.
    """
    ratio = 2.0 * spec.mu * spec.D / (spec.alpha * spec.hbar) ** 2
    k = math.sqrt(0.25 + ratio)
    q = (-1.0 + 2.0 * k) / 2.0
    q_round = round(q)
    if abs(q - q_round) <= INTEGER_Q_TOL and q_round >= 1:
        n_max = q_round - 1
    else:
        n_max = max(math.ceil(q) - 1, 0)
    return WellNumbers(k=k, q=q, nu=2.0 * k, n_max=n_max)


def depth_for_integer_q(q: int, alpha: float = 1.0, mu: float = 1.0,
                        hbar: float = 1.0) -> float:
    """Invert the depth relation: the D giving well parameter exactly q."""
    if q < 1 or q != int(q):
        raise DomainError(f"integer well parameter q must be >= 1, got {q}")
    return q * (q + 1) * (alpha * hbar) ** 2 / (2.0 * mu)


def _check_bound(spec: PotentialSpec, n: int) -> WellNumbers:
    wn = well_numbers(spec)
    if n < 0 or n != int(n) or n > wn.n_max:
        raise DomainError(
            f"n = {n} is not a bound state of this well (n_max = {wn.n_max})")
    return wn


def energy(spec: PotentialSpec, n: int) -> float:
    """Bound-state energy E_n = -(alpha hbar)^2 (q - n)^2 / (2 mu), negative and increasing in n."""
    wn = _check_bound(spec, n)
    eps = wn.q - n
    return -(spec.alpha * spec.hbar) ** 2 / (2.0 * spec.mu) * eps * eps


def normalization_constant(q: float, n: int, alpha: float) -> float:
    """Normalization factor of the n-th bound state of a q-well.

    The factorial ratio is evaluated in log space (x! = Gamma(x + 1)) so deep
    wells (q up to ~60) do not overflow.  Requires q - n > 0; at q = n the
    state sits on the dissociation edge and is not normalizable.
    """
    if n < 0 or n != int(n):
        raise DomainError(f"level index must be a non-negative integer, got {n}")
    if not q - n > 0.0:
        raise DomainError(
            f"state n = {n} lies at or beyond dissociation for q = {q}")
    log_n2 = (
        math.log(alpha)
        + log_gamma(n + 1.0)
        + log_gamma(q - n + 0.5)
        + log_gamma(2.0 * q - 2.0 * n + 1.0)
        - 0.5 * math.log(math.pi)
        - log_gamma(q - n)
        - log_gamma(2.0 * q - n + 1.0)
    )
    return math.exp(0.5 * log_n2)


def _log_sech(y: np.ndarray) -> np.ndarray:
    """log(sech(y)), stable for large |y|."""
    a = np.abs(y)
    return math.log(2.0) - a - np.log1p(np.exp(-2.0 * a))


def wavefunction(spec: PotentialSpec, n: int, x):
    """Normalized bound-state wavefunction at x (scalar or array).

    Built from the sech^epsilon envelope and a Gegenbauer polynomial in
    u = tanh(alpha x); the envelope is evaluated in log space so the tails
    stay accurate far beyond the well.
    """
    wn = _check_bound(spec, n)
    eps = wn.q - n
    norm = normalization_constant(wn.q, n, spec.alpha)
    y = spec.alpha * np.asarray(x, dtype=float)
    u = np.tanh(y)
    envelope = np.exp(eps * _log_sech(y))
    value = norm * envelope * gegenbauer(n, eps + 0.5, u)
    return value if np.ndim(x) else float(value)


def wavefunction_derivative(spec: PotentialSpec, n: int, x):
    """Analytic d(psi_n)/dx at x (scalar or array).

    Chain rule through u = tanh(alpha x) with the Gegenbauer
    degree-lowering identity; no finite differences involved.
    """
    wn = _check_bound(spec, n)
    eps = wn.q - n
    lam = eps + 0.5
    norm = normalization_constant(wn.q, n, spec.alpha)
    y = spec.alpha * np.asarray(x, dtype=float)
    u = np.tanh(y)
    log_sech = _log_sech(y)
    poly_term = norm * np.exp((eps + 2.0) * log_sech) * gegenbauer_derivative(n, lam, u)
    envelope_term = -eps * u * norm * np.exp(eps * log_sech) * gegenbauer(n, lam, u)
    value = spec.alpha * (envelope_term + poly_term)
    return value if np.ndim(x) else float(value)


def bound_state_labels(spec: PotentialSpec) -> tuple[StateLabel, ...]:
    """Labels of every bound state of the well, ascending in n."""
    wn = well_numbers(spec)
    return tuple(StateLabel.from_nu_n(wn.nu, n) for n in range(wn.n_max + 1))
