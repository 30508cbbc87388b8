"""Two coupled oscillators: su(2) model, exact coupling, and approximations.

Four Hamiltonians over the same two-oscillator product basis are compared:

* the su(2) model with its 1/N-corrected exchange coupling,
* the exact bilinear momentum/position coupling evaluated with oracle
  matrices,
* the crude boson approximation (polyad-conserving exchange only),
* the extended approximation whose mixing weights add polyad-breaking
  pair-creation/annihilation blocks.

All four share the single-well bound-state energies on the diagonal, so
differences in their spectra isolate the treatment of the interaction.
Identical oscillators only; the spectrum solver is a cyclic Jacobi
iteration for small dense symmetric matrices, operating on a private copy
of its input (callers may share matrices freely across threads).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .expansion import (
    approx_boson_ops,
    interaction_frequency,
    renormalized_generators,
)
from .ladder import OperatorMatrix, TWO_OSC_KIND
from .oracle import POSITION_X, OracleConfig, derivative_matrix, observable_matrix
from .states import PotentialSpec, energy, well_numbers

__all__ = [
    "SpectroParams",
    "VibronParams",
    "TwoOscBasis",
    "ComparisonReport",
    "spectro_from_potential",
    "vibron_params_from_spectro",
    "spectro_from_vibron",
    "pair_basis",
    "su2_hamiltonian",
    "diagonal_energies",
    "exact_interaction",
    "approx_interaction",
    "harmonic_interaction",
    "harmonic_model",
    "polyad_operator",
    "jacobi_eigh",
    "spectrum",
    "compare_models",
    "INTERACTION_LEVELS",
]

INTERACTION_LEVELS = ("crude", "zA-zB")


@dataclass(frozen=True)
class SpectroParams:
    """Spectroscopic constants: harmonic frequency and anharmonicity product."""

    omega_e: float
    xe_omega_e: float

    def __post_init__(self):
        if not (self.omega_e > 0.0 and self.xe_omega_e > 0.0):
            raise DomainError("spectroscopic constants must be positive")


@dataclass(frozen=True)
class VibronParams:
    """Algebraic model parameters: boson number N, frequency omega0, coupling."""

    N: int
    omega0: float
    lam: float = 0.0
    hbar: float = 1.0

    def __post_init__(self):
        if self.N < 1 or self.N != int(self.N):
            raise DomainError("boson number N must be a positive integer")
        if not self.omega0 > 0.0:
            raise DomainError("omega0 must be positive")

    @property
    def energy_quantum(self) -> float:
        return self.hbar * self.omega0


def spectro_from_potential(spec: PotentialSpec) -> SpectroParams:
    """Map well parameters to (omega_e, xe_omega_e)."""
    return SpectroParams(
        omega_e=spec.hbar * interaction_frequency(spec),
        xe_omega_e=(spec.alpha * spec.hbar) ** 2 / (2.0 * spec.mu),
    )


def vibron_params_from_spectro(sp: SpectroParams, lam: float = 0.0,
                               hbar: float = 1.0) -> VibronParams:
    """Invert the spectroscopic map: N = omega_e / xe_omega_e - 1, hbar omega0 = N xe_omega_e.

    The ratio must land on a positive integer (within 1e-9); anharmonic
    ladders that do not are not su(2)-compatible.
    """
    ratio = sp.omega_e / sp.xe_omega_e - 1.0
    n_boson = round(ratio)
    if n_boson < 1 or abs(ratio - n_boson) > 1e-9:
        raise DomainError(
            f"well is not su(2)-compatible: boson number would be {ratio}")
    return VibronParams(N=n_boson, omega0=n_boson * sp.xe_omega_e / hbar,
                        lam=lam, hbar=hbar)


def spectro_from_vibron(vp: VibronParams) -> SpectroParams:
    """Forward spectroscopic map (exact inverse of vibron_params_from_spectro)."""
    return SpectroParams(
        omega_e=vp.energy_quantum * (vp.N + 1) / vp.N,
        xe_omega_e=vp.energy_quantum / vp.N,
    )


@dataclass(frozen=True)
class TwoOscBasis:
    """Lexicographic product basis |n1, n2> of two identical oscillators."""

    dim_single: int
    pairs: tuple[tuple[int, int], ...]

    @property
    def dim(self) -> int:
        return self.dim_single ** 2

    def polyad(self, index: int) -> int:
        n1, n2 = self.pairs[index]
        return n1 + n2

    @property
    def polyads(self) -> tuple[int, ...]:
        return tuple(n1 + n2 for n1, n2 in self.pairs)


def pair_basis(dim_single: int) -> TwoOscBasis:
    if dim_single < 1:
        raise DomainError("basis needs at least one single-oscillator state")
    pairs = tuple((n1, n2) for n1 in range(dim_single) for n2 in range(dim_single))
    return TwoOscBasis(dim_single=dim_single, pairs=pairs)


def _one_body_term(vp: VibronParams, n: int) -> float:
    # (hbar omega0 / 2) <b+ b + b b+> with sqrt(N)-normalized su(2) bosons,
    # the normalization under which the spectroscopic map is exact.
    return vp.energy_quantum * ((n + 0.5) - n * n / vp.N)


def su2_hamiltonian(vp: VibronParams, basis: TwoOscBasis) -> OperatorMatrix:
    """Two-oscillator su(2) model matrix: one-body diagonal plus exchange coupling.

    The coupling element between (n1, n2) and (n1+1, n2-1) is
    lam hbar omega0 sqrt(n2 (n1+1)) sqrt((1 - (n2-1)/N)(1 - n1/N)); energies
    on the diagonal are referenced to the well bottom.
    """
    if basis.dim_single > vp.N // 2:
        raise DomainError(
            f"basis dimension {basis.dim_single} exceeds the bound count {vp.N // 2}")
    d = basis.dim
    h = np.zeros((d, d))
    index = {pair: i for i, pair in enumerate(basis.pairs)}
    for i, (n1, n2) in enumerate(basis.pairs):
        h[i, i] = _one_body_term(vp, n1) + _one_body_term(vp, n2)
        if n2 >= 1 and (n1 + 1, n2 - 1) in index:
            j = index[(n1 + 1, n2 - 1)]
            elem = (vp.lam * vp.energy_quantum * math.sqrt(n2 * (n1 + 1))
                    * math.sqrt((1.0 - (n2 - 1) / vp.N) * (1.0 - n1 / vp.N)))
            h[j, i] = elem
            h[i, j] = elem
    return OperatorMatrix(h, basis.pairs, TWO_OSC_KIND)


def diagonal_energies(spec: PotentialSpec, basis: TwoOscBasis) -> OperatorMatrix:
    """Non-interacting two-well Hamiltonian: E_{n1} + E_{n2} on the diagonal."""
    singles = [energy(spec, n) for n in range(basis.dim_single)]
    diag = np.diag([singles[n1] + singles[n2] for n1, n2 in basis.pairs])
    return OperatorMatrix(diag, basis.pairs, TWO_OSC_KIND)


def exact_interaction(spec: PotentialSpec, basis: TwoOscBasis, lam: float,
                      cfg: OracleConfig = OracleConfig()) -> OperatorMatrix:
    """Exact bilinear coupling lam (p1 p2 / mu + mu w^2 x1 x2) over bound states.

    Momentum matrices are -i hbar R with real antisymmetric R, so the product
    contributes -lam hbar^2/mu R (x) R; both tensor terms are real symmetric.
    """
    wn = well_numbers(spec)
    if not wn.q_is_integer:
        raise DomainError("the exact coupled model requires an integer well parameter q")
    if basis.dim_single != wn.n_max + 1:
        raise DomainError("basis dimension must equal the bound-state count")
    omega = interaction_frequency(spec)
    x = observable_matrix(spec, POSITION_X, cfg).entries
    r = derivative_matrix(spec, cfg).entries
    h = lam * (-spec.hbar ** 2 / spec.mu * np.kron(r, r)
               + spec.mu * omega ** 2 * np.kron(x, x))
    return OperatorMatrix(h, basis.pairs, TWO_OSC_KIND)


def approx_interaction(nu: int, lam: float, omega_tilde: float,
                       hbar: float = 1.0, level: str = "crude") -> OperatorMatrix:
    """Boson-approximated coupling lam hbar w (c1+ c2 + c1 c2+).

    Level ``crude`` replaces the harmonic-like bosons by the renormalized
    su(2) pair (polyad-conserving exchange only); level ``zA-zB`` keeps the
    mixing weights, adding pair-creation/annihilation blocks that break the
    polyad.
    """
    if level not in INTERACTION_LEVELS:
        raise DomainError(f"interaction level must be one of {INTERACTION_LEVELS}")
    ops = renormalized_generators(nu) if level == "crude" else approx_boson_ops(nu)
    create, destroy = ops.create.entries, ops.annihilate.entries
    h = lam * hbar * omega_tilde * (np.kron(create, destroy) + np.kron(destroy, create))
    basis = pair_basis(create.shape[0])
    return OperatorMatrix(h, basis.pairs, TWO_OSC_KIND)


def harmonic_interaction(basis: TwoOscBasis, lam: float, omega_tilde: float,
                         hbar: float = 1.0) -> OperatorMatrix:
    """Pure harmonic exchange coupling lam hbar w sqrt(n2 (n1+1)), the N -> infinity limit."""
    d = basis.dim
    h = np.zeros((d, d))
    index = {pair: i for i, pair in enumerate(basis.pairs)}
    for i, (n1, n2) in enumerate(basis.pairs):
        if n2 >= 1 and (n1 + 1, n2 - 1) in index:
            j = index[(n1 + 1, n2 - 1)]
            elem = lam * hbar * omega_tilde * math.sqrt(n2 * (n1 + 1))
            h[j, i] = elem
            h[i, j] = elem
    return OperatorMatrix(h, basis.pairs, TWO_OSC_KIND)


def harmonic_model(spec: PotentialSpec, basis: TwoOscBasis, lam: float) -> OperatorMatrix:
    """Fully harmonic description of the coupled pair, as a reference.

    Each well is replaced by its bottom-of-well harmonic ladder
    -D + hbar w (n + 1/2) and the coupling by the harmonic exchange
    elements; this is the traditional description the algebraic models are
    measured against.
    """
    omega = interaction_frequency(spec)
    single = [-spec.D + spec.hbar * omega * (n + 0.5) for n in range(basis.dim_single)]
    diag = np.diag([single[n1] + single[n2] for n1, n2 in basis.pairs])
    coupling = harmonic_interaction(basis, lam, omega, spec.hbar)
    return OperatorMatrix(diag + coupling.entries, basis.pairs, TWO_OSC_KIND)


def polyad_operator(basis: TwoOscBasis) -> OperatorMatrix:
    """Diagonal matrix of the polyad quantum number n1 + n2."""
    return OperatorMatrix(np.diag([float(p) for p in basis.polyads]),
                          basis.pairs, TWO_OSC_KIND)


def _combine(diag: OperatorMatrix, interaction: OperatorMatrix) -> OperatorMatrix:
    return OperatorMatrix(diag.entries + interaction.entries, diag.basis, diag.kind)


def jacobi_eigh(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps run until the off-diagonal Frobenius norm falls below 1e-12 times
    the initial Frobenius norm of the matrix.  Returns (values, vectors) in
    the rotation order (unsorted); columns of ``vectors`` are eigenvectors.
    """
    a = np.array(matrix, dtype=float)
    n = a.shape[0]
    vecs = np.eye(n)
    initial = np.linalg.norm(a)
    if initial == 0.0 or n == 1:
        return np.diag(a).copy(), vecs
    target = 1e-12 * initial
    for _ in range(60):
        # Off-norm summed directly over off-diagonal entries; subtracting
        # diagonal squares from the total norm cancels catastrophically near
        # convergence and would stall the stopping test at ~sqrt(eps)||A||.
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= target:
            break
        # Rotations below this threshold cannot move the off-norm past target.
        skip = target / (n * n)
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= skip:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rp = c * a[p, :] - s * a[q, :]
                rq = s * a[p, :] + c * a[q, :]
                a[p, :], a[q, :] = rp, rq
                cp = c * a[:, p] - s * a[:, q]
                cq = s * a[:, p] + c * a[:, q]
                a[:, p], a[:, q] = cp, cq
                vp = c * vecs[:, p] - s * vecs[:, q]
                vq = s * vecs[:, p] + c * vecs[:, q]
                vecs[:, p], vecs[:, q] = vp, vq
    else:
        raise ArithmeticError("Jacobi iteration failed to converge")
    return np.diag(a).copy(), vecs


def _sorted_eigensystem(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Jacobi eigensystem sorted ascending; ties ordered by dominant basis index."""
    vals, vecs = jacobi_eigh(matrix)
    scale = max(float(np.max(np.abs(matrix))), 1e-300)
    tie = 1e-9 * scale
    dominant = np.argmax(np.abs(vecs), axis=0)
    order = sorted(range(len(vals)), key=lambda i: (vals[i], dominant[i]))
    # Within a degenerate cluster, reorder strictly by dominant component.
    out = []
    cluster = [order[0]]
    for i in order[1:]:
        if vals[i] - vals[cluster[-1]] <= tie:
            cluster.append(i)
        else:
            out.extend(sorted(cluster, key=lambda k: dominant[k]))
            cluster = [i]
    out.extend(sorted(cluster, key=lambda k: dominant[k]))
    idx = np.array(out)
    return vals[idx], vecs[:, idx]


def spectrum(matrix: OperatorMatrix | np.ndarray) -> list[float]:
    """Ascending eigenvalues of a (nearly) symmetric matrix.

    The input must be symmetric within 1e-9 elementwise; it is symmetrized
    exactly before the Jacobi iteration.
    """
    a = matrix.entries if isinstance(matrix, OperatorMatrix) else np.asarray(matrix, float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError("spectrum requires a square matrix")
    if np.max(np.abs(a - a.T)) > 1e-9:
        raise DomainError("matrix is not symmetric within 1e-9")
    sym = 0.5 * (a + a.T)
    vals, _ = _sorted_eigensystem(sym)
    return [float(v) for v in vals]


MODEL_NAMES = ("su2", "exact", "crude", "zA-zB")


@dataclass(frozen=True)
class ComparisonReport:
    """Sorted spectra of the four coupled models and their deviations.

    Eigenvalues are paired by sorted position; ``polyads`` carries the
    dominant-component polyad of the exact model's eigenvectors, which also
    defines the low-polyad (n1 + n2 <= 2) deviation summary.
    """

    q: int
    lam: float
    polyads: tuple[int, ...]
    eigenvalues: dict[str, tuple[float, ...]]
    deviations: dict[str, tuple[float, ...]]
    max_low_polyad_deviation: dict[str, float]

    @property
    def dim(self) -> int:
        return len(self.polyads)


def compare_models(spec: PotentialSpec, lam: float,
                   cfg: OracleConfig = OracleConfig()) -> ComparisonReport:
    """Spectra of the su(2), exact, crude, and zA-zB coupled models.

    All four share the non-interacting bound-state diagonal, so at lam = 0
    they coincide identically and at lam != 0 the comparison isolates the
    interaction treatment.
    """
    wn = well_numbers(spec)
    if not wn.q_is_integer or round(wn.q) < 3:
        raise DomainError("model comparison requires an integer well parameter q >= 3")
    nu = int(round(wn.nu))
    basis = pair_basis(wn.n_max + 1)
    diag = diagonal_energies(spec, basis)
    omega = interaction_frequency(spec)
    vp = vibron_params_from_spectro(spectro_from_potential(spec), lam=lam,
                                    hbar=spec.hbar)
    su2_part = su2_hamiltonian(vp, basis)
    su2_coupling = su2_part.entries - np.diag(np.diag(su2_part.entries))
    models = {
        "su2": diag.entries + su2_coupling,
        "exact": _combine(diag, exact_interaction(spec, basis, lam, cfg)).entries,
        "crude": _combine(diag, approx_interaction(nu, lam, omega, spec.hbar,
                                                   "crude")).entries,
        "zA-zB": _combine(diag, approx_interaction(nu, lam, omega, spec.hbar,
                                                   "zA-zB")).entries,
    }
    exact_vals, exact_vecs = _sorted_eigensystem(0.5 * (models["exact"]
                                                        + models["exact"].T))
    polyads = tuple(basis.polyad(int(np.argmax(np.abs(exact_vecs[:, i]))))
                    for i in range(basis.dim))
    eigenvalues: dict[str, tuple[float, ...]] = {}
    deviations: dict[str, tuple[float, ...]] = {}
    max_low: dict[str, float] = {}
    low = [i for i, p in enumerate(polyads) if p <= 2]
    for name, h in models.items():
        vals = (exact_vals if name == "exact"
                else np.asarray(spectrum(h)))
        eigenvalues[name] = tuple(float(v) for v in vals)
        devs = tuple(float(abs(v - e)) for v, e in zip(vals, exact_vals))
        deviations[name] = devs
        max_low[name] = max((devs[i] for i in low), default=0.0)
    return ComparisonReport(
        q=int(round(wn.q)),
        lam=lam,
        polyads=polyads,
        eigenvalues=eigenvalues,
        deviations=deviations,
        max_low_polyad_deviation=max_low,
    )
