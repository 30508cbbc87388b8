"""Brute-force quadrature matrix elements between bound states.

This is the independent ground truth against which every closed form and
generator expansion in the package is checked: nothing here knows about
ladder coefficients, only about wavefunctions and composite Gauss-Legendre
integration on a truncated interval.

Momentum convention: all matrices are real.  The derivative matrix R holds
<n'| d/dx |n>; the physical momentum matrix is -i hbar R and is never
stored in complex form.

Everything is a pure function of its inputs; element integrals are
independent and the result cache only ever receives idempotent writes, so
concurrent use from multiple threads is safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError
from .ladder import PHYSICAL_KIND, OperatorMatrix
from .specfun import gauss_legendre, integrate, log_gamma
from .states import (
    PotentialSpec,
    bound_state_labels,
    normalization_constant,
    wavefunction,
    wavefunction_derivative,
    well_numbers,
)

__all__ = [
    "Observable",
    "OracleConfig",
    "IDENTITY",
    "SINH_ALPHA_X",
    "COSH_DDX_OVER_ALPHA",
    "POSITION_X",
    "DDX",
    "POTENTIAL",
    "matrix_element",
    "observable_matrix",
    "derivative_matrix",
    "clear_cache",
]


@dataclass(frozen=True, eq=False)
class Observable:
    """A one-body observable: a weight function applied to psi or to d(psi)/dx.

    ``parity`` is +1/-1 for observables of definite parity (counting the
    derivative's parity flip), 0 if unknown; it drives the exact-zero
    short-circuit in :func:`observable_matrix`.  ``exp_growth`` counts
    exp(alpha |x|) factors in the weight's growth (1 for sinh and cosh,
    0 for anything at most cubic) and eats into the integrand's decay rate
    when the truncation window is sized.  Instances hash by identity, which
    is what the per-run result cache keys on.
    """

    name: str
    weight: Callable[[np.ndarray, PotentialSpec], np.ndarray]
    acts_on_derivative: bool = False
    parity: int = 0
    exp_growth: int = 0

    @classmethod
    def custom(cls, f: Callable[[np.ndarray], np.ndarray], *,
               acts_on_derivative: bool = False, parity: int = 0,
               name: str = "custom") -> "Observable":
        """Wrap a plain weight f(x); growth stronger than cubic is unsupported."""
        return cls(name=name, weight=lambda x, spec: f(x),
                   acts_on_derivative=acts_on_derivative, parity=parity)


IDENTITY = Observable("identity", lambda x, spec: np.ones_like(x), parity=+1)
SINH_ALPHA_X = Observable("sinh_alpha_x",
                          lambda x, spec: np.sinh(spec.alpha * x), parity=-1,
                          exp_growth=1)
COSH_DDX_OVER_ALPHA = Observable("cosh_ddx_over_alpha",
                                 lambda x, spec: np.cosh(spec.alpha * x) / spec.alpha,
                                 acts_on_derivative=True, parity=-1, exp_growth=1)
POSITION_X = Observable("position_x", lambda x, spec: x, parity=-1)
DDX = Observable("ddx", lambda x, spec: np.ones_like(x),
                 acts_on_derivative=True, parity=-1)
POTENTIAL = Observable("potential",
                       lambda x, spec: -spec.D / np.cosh(spec.alpha * x) ** 2,
                       parity=+1)


@dataclass(frozen=True)
class OracleConfig:
    """Quadrature configuration: rule order, panel count, and tail control.

    The truncation half-width L satisfies
    exp(-(eps_n + eps_n') alpha L) (1 + (alpha L)^3) <= tail_tolerance
    (exponential state decay against at-most-cubic observable growth), with
    the target further tightened by the pair's tail amplitude (normalization
    constants and polynomial endpoint values) and by any exponential factor
    the observable itself contributes, so the abstract bound translates into
    an actual bound on the discarded integral.  L is capped at
    max_halfwidth.

    The defaults resolve wells up to q ~ 10 to full precision; much deeper
    wells oscillate faster near the origin and need more panels or a higher
    rule order.
    """

    rule_order: int = 24
    panels: int = 32
    tail_tolerance: float = 1e-14
    max_halfwidth: float = math.inf

    def __post_init__(self):
        if self.rule_order < 1 or self.panels < 1:
            raise DomainError("rule_order and panels must be positive")
        if not 0.0 < self.tail_tolerance < 1.0:
            raise DomainError("tail_tolerance must lie in (0, 1)")
        if not self.max_halfwidth > 0.0:
            raise DomainError("max_halfwidth must be positive")

    def halfwidth(self, spec: PotentialSpec, eps_sum: float, *,
                  exp_growth: int = 0, log_amplitude: float = 0.0) -> float:
        """Truncation half-width for a pair of states with decay-rate sum eps_sum."""
        decay = eps_sum - exp_growth
        if decay <= 0.0:
            raise DomainError(
                "integrand does not decay: observable growth cancels the state decay")
        log_tol = math.log(self.tail_tolerance) - max(log_amplitude, 0.0)

        def excess(t: float) -> float:
            return -decay * t + math.log1p(t ** 3) - log_tol

        hi = 1.0
        while excess(hi) > 0.0:
            hi *= 2.0
            if hi > 1e6:
                break
        lo = 0.0
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if excess(mid) > 0.0:
                lo = mid
            else:
                hi = mid
        return min(hi / spec.alpha, self.max_halfwidth)


_cache: dict = {}


def clear_cache() -> None:
    """Drop all cached oracle matrices (results are unaffected, only timing)."""
    _cache.clear()


def _log_tail_amplitude(spec: PotentialSpec, nu: float, q: float, n: int) -> float:
    """log of the prefactor bounding |psi_n| <= A exp(-eps alpha |x|).

    Uses sech(y) <= 2 exp(-|y|) and the Gegenbauer endpoint maximum
    C_n^lam(1) = Gamma(nu - n) / (Gamma(n + 1) Gamma(nu - 2n)).
    """
    eps = q - n
    log_c1 = log_gamma(nu - n) - log_gamma(n + 1.0) - log_gamma(nu - 2.0 * n)
    return math.log(normalization_constant(q, n, spec.alpha)) + eps * math.log(2.0) + log_c1


def matrix_element(spec: PotentialSpec, n_prime: int, n: int, obs: Observable,
                   cfg: OracleConfig = OracleConfig()) -> float:
    """<n'| obs |n> by composite Gauss-Legendre quadrature on [-L, L].

    Derivative-type observables use the analytic wavefunction derivative;
    no finite differences enter anywhere.
    """
    wn = well_numbers(spec)
    for m in (n_prime, n):
        if m < 0 or m != int(m) or m > wn.n_max:
            raise DomainError(f"n = {m} is not a bound state (n_max = {wn.n_max})")
    eps_sum = (wn.q - n_prime) + (wn.q - n)
    log_amp = (_log_tail_amplitude(spec, wn.nu, wn.q, n_prime)
               + _log_tail_amplitude(spec, wn.nu, wn.q, n))
    if obs.acts_on_derivative:
        # d/dx scales the tail by at most alpha * O(nu^2).
        log_amp += math.log(spec.alpha) + 2.0 * math.log(wn.nu)
    half = cfg.halfwidth(spec, eps_sum, exp_growth=obs.exp_growth,
                         log_amplitude=log_amp)
    rule = gauss_legendre(cfg.rule_order)

    def integrand(x: np.ndarray) -> np.ndarray:
        bra = wavefunction(spec, n_prime, x)
        if obs.acts_on_derivative:
            ket = wavefunction_derivative(spec, n, x)
        else:
            ket = wavefunction(spec, n, x)
        return bra * obs.weight(x, spec) * ket

    return integrate(integrand, -half, half, rule, cfg.panels)


def _matrix_key(spec: PotentialSpec, obs: Observable, cfg: OracleConfig):
    return (spec, id(obs), cfg)


def observable_matrix(spec: PotentialSpec, obs: Observable,
                      cfg: OracleConfig = OracleConfig()) -> OperatorMatrix:
    """All bound-pair matrix elements of an observable, as a physical-kind matrix.

    Pairs whose parity forbids a nonzero element are skipped and written as
    exact zeros, so the characteristic zero patterns are noise-free.
    Results are cached per (spec, obs, cfg) within a run.
    """
    key = _matrix_key(spec, obs, cfg)
    hit = _cache.get(key)
    if hit is not None:
        return hit
    wn = well_numbers(spec)
    if not wn.q_is_integer or round(wn.q) < 2:
        raise DomainError("observable_matrix requires an integer well parameter q >= 2")
    d = wn.n_max + 1
    m = np.zeros((d, d))
    for n_prime in range(d):
        for n in range(d):
            if obs.parity != 0 and obs.parity != (-1) ** (n + n_prime):
                continue
            m[n_prime, n] = matrix_element(spec, n_prime, n, obs, cfg)
    result = OperatorMatrix(m, bound_state_labels(spec), PHYSICAL_KIND)
    _cache[key] = result
    return result


def derivative_matrix(spec: PotentialSpec,
                      cfg: OracleConfig = OracleConfig()) -> OperatorMatrix:
    """The real matrix R with R[n', n] = <n'| d/dx |n> (momentum = -i hbar R).

    Antisymmetric up to quadrature error, since d/dx is anti-self-adjoint
    between normalizable states.
    """
    return observable_matrix(spec, DDX, cfg)
