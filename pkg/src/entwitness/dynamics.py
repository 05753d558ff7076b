"""Time-local (TCL2) dissipative dynamics of two qubits in independent reservoirs.

Each two-level atom couples to its own zero-temperature bosonic reservoir with
a Lorentzian coupling spectrum

    J(omega) = (1 / 2 pi) * gamma0 * lam**2 / ((omega0 - omega - delta)**2 + lam**2),

where ``lam`` is the spectral width, ``delta`` the detuning of the spectrum's
center from the atomic transition frequency ``omega0``, and ``gamma0`` the
Markovian decay rate in the flat-spectrum limit.  The reduced state obeys the
second-order time-convolutionless master equation

    d rho / dt = L_A rho + L_B rho,
    L_j rho = f_j(t) [S_j^- rho, S_j^+] + conj(f_j(t)) [S_j^-, rho S_j^+]
              + conj(k_j(t)) [S_j^+ rho, S_j^-] + k_j(t) [S_j^+, rho S_j^-],

with the zero-temperature correlation functions k_j(t) = 0 and

    f_j(t) = gamma0 * lam / (2 (lam - i delta)) * (1 - exp((i delta - lam) t)).

A negative real part of ``f`` signals information backflow from the reservoir
(non-Markovian regime, ``lam < 2 gamma0``).

Conventions fixed package-wide: two-qubit basis ordering |00>, |01>, |10>, |11>
with atom A as the left (slow) tensor factor; all rates and times are expressed
in units of ``gamma0`` (``gamma0 = 1`` by default).

All functions are pure; trajectories for different parameter sets may be
computed fully in parallel.
"""

import enum
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from .errors import IntegrationDiverged, QuadratureUnconverged, ValidationError
from .linalg import rk4_step

GAMMA0_DEFAULT = 1.0

# Single-qubit operators in the basis (|0>, |1>), |1> = excited.
IDENTITY_2 = np.eye(2, dtype=complex)
S_PLUS = np.array([[0, 0], [1, 0]], dtype=complex)   # |1><0|
S_MINUS = np.array([[0, 1], [0, 0]], dtype=complex)  # |0><1|
S_Z = 0.5 * np.array([[-1, 0], [0, 1]], dtype=complex)  # (|1><1| - |0><0|)/2

# Two-qubit embeddings, atom A on the left factor.
S_A_PLUS = np.kron(S_PLUS, IDENTITY_2)
S_A_MINUS = np.kron(S_MINUS, IDENTITY_2)
S_B_PLUS = np.kron(IDENTITY_2, S_PLUS)
S_B_MINUS = np.kron(IDENTITY_2, S_MINUS)
N_A = S_A_PLUS @ S_A_MINUS  # excited-state projector of atom A
N_B = S_B_PLUS @ S_B_MINUS

TRACE_DRIFT_TOL = 1e-6


@dataclass(frozen=True)
class ReservoirParams:
    """Lorentzian reservoir parameters, all in units of ``gamma0``.

    ``lam`` is the spectral width (> 0), ``delta`` the detuning (>= 0),
    ``gamma0`` the Markovian decay rate (> 0, 1 by default).
    """

    lam: float
    delta: float = 0.0
    gamma0: float = GAMMA0_DEFAULT

    def __post_init__(self):
        for name in ("lam", "delta", "gamma0"):
            v = getattr(self, name)
            if not np.isfinite(v):
                raise ValidationError(f"{name}: must be finite, got {v}")
        if self.lam <= 0:
            raise ValidationError(f"lam: must be > 0, got {self.lam}")
        if self.gamma0 <= 0:
            raise ValidationError(f"gamma0: must be > 0, got {self.gamma0}")
        if self.delta < 0:
            raise ValidationError(f"delta: must be >= 0, got {self.delta}")


class Regime(enum.Enum):
    MARKOVIAN = "markovian"
    NON_MARKOVIAN = "non_markovian"
    BOUNDARY = "boundary"


@dataclass
class SystemState:
    """Two-qubit state ``rho`` at dimensionless time ``t``."""

    t: float
    rho: np.ndarray

    def validate(self, trace_tol: float = 1e-8, herm_tol: float = 1e-9,
                 eig_floor: float = -1e-6) -> list[str]:
        """Check the state invariants; returns soft warnings, raises on hard ones."""
        tr = np.trace(self.rho)
        if abs(tr - 1.0) > trace_tol:
            raise ValidationError(f"trace = {tr}, expected 1 within {trace_tol}")
        herm = np.abs(self.rho - self.rho.conj().T).max()
        if herm > herm_tol:
            raise ValidationError(f"hermiticity defect {herm:.3e} above {herm_tol}")
        warnings = []
        lowest = np.linalg.eigvalsh(0.5 * (self.rho + self.rho.conj().T)).min()
        if lowest < eig_floor:
            warnings.append(f"eigenvalue {lowest:.3e} below soft floor {eig_floor}")
        return warnings


@dataclass
class TrajectorySample:
    """Derived observables at one sampled time."""

    t: float
    mu: float
    lhs: float
    concurrence: float
    f_a: complex
    f_b: complex


@dataclass
class Trajectory:
    """Sampled evolution: states on a uniform time grid plus derived records.

    ``samples`` is filled by the scenario runner; ``propagate`` leaves it None.
    The generating reservoir parameters and step are kept so that crossing
    times can optionally be refined by local re-integration.
    """

    times: np.ndarray
    states: list[SystemState]
    r_a: ReservoirParams
    r_b: ReservoirParams
    dt: float
    max_trace_drift: float = 0.0
    samples: list[TrajectorySample] | None = None

    def __len__(self) -> int:
        return len(self.times)


def correlation_f(r: ReservoirParams, t):
    """Zero-temperature reservoir correlation function ``f(t)``.

    ``f(t) = gamma0 lam / (2 (lam - i delta)) * (1 - exp((i delta - lam) t))``;
    the thermal counterpart ``k(t)`` vanishes identically at zero temperature.
    Accepts a scalar or an array of times ``t >= 0``.
    """
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValidationError(f"t: must be >= 0, got {t.min()}")
    scale = r.gamma0 * r.lam / (2.0 * (r.lam - 1j * r.delta))
    out = scale * (1.0 - np.exp((1j * r.delta - r.lam) * t))
    return complex(out) if out.ndim == 0 else out


def correlation_f_quadrature(r: ReservoirParams, t: float,
                             omega_window: float | None = None,
                             n_points: int = 100_001) -> complex:
    """``f(t)`` by direct numerical integration over the Lorentzian spectrum.

    Evaluates ``i * integral J(omega) (1 - exp(i (omega0 - omega) t)) / (omega0 - omega) domega``
    in the detuning variable ``x = omega0 - omega``, over an interval that
    covers both the spectral peak at ``x = delta`` (within ``omega_window``,
    which must span at least 50 widths) and the resonance feature at ``x = 0``.
    The lower frequency limit is extended to minus infinity, matching the
    closed form; this routine serves as an independent cross-check of
    :func:`correlation_f`.

    Raises
    ------
    QuadratureUnconverged
        if doubling ``n_points`` moves the result by more than 1e-5.
    """
    if t < 0:
        raise ValidationError(f"t: must be >= 0, got {t}")
    if n_points < 1000:
        raise ValidationError(f"n_points: must be >= 1000, got {n_points}")
    if omega_window is None:
        omega_window = 120.0 * r.lam + 20.0 * r.gamma0
    if omega_window < 50.0 * r.lam:
        raise ValidationError(
            f"omega_window: must span at least 50 widths ({50.0 * r.lam}), got {omega_window}")

    def integrate(n: int) -> complex:
        if n % 2 == 0:
            n += 1  # Simpson needs an odd node count
        x = np.linspace(min(0.0, r.delta) - omega_window,
                        max(0.0, r.delta) + omega_window, n)
        spectrum = (r.gamma0 * r.lam ** 2 / (2.0 * np.pi)) / ((x - r.delta) ** 2 + r.lam ** 2)
        safe_x = np.where(x == 0.0, 1.0, x)
        kernel = np.where(x == 0.0, -1j * t, (1.0 - np.exp(1j * x * t)) / safe_x)
        integrand = 1j * spectrum * kernel
        return complex(simpson(integrand.real, x=x) + 1j * simpson(integrand.imag, x=x))

    coarse = integrate(n_points)
    fine = integrate(2 * n_points)
    if abs(fine - coarse) > 1e-5:
        raise QuadratureUnconverged(
            f"node doubling moved the result by {abs(fine - coarse):.3e} > 1e-5")
    return fine


def liouvillian_apply(rho: np.ndarray, f_a: complex, f_b: complex,
                      k_a: complex = 0j, k_b: complex = 0j) -> np.ndarray:
    """Apply ``L_A + L_B`` to a 4x4 state for given correlation-function values.

    The ``k`` terms (thermal excitation channel) are structurally present but
    zero at zero temperature.  The result is traceless, and Hermitian whenever
    ``rho`` is.
    """
    out = ((f_a + np.conj(f_a)) * (S_A_MINUS @ rho @ S_A_PLUS)
           - f_a * (N_A @ rho) - np.conj(f_a) * (rho @ N_A))
    out += ((f_b + np.conj(f_b)) * (S_B_MINUS @ rho @ S_B_PLUS)
            - f_b * (N_B @ rho) - np.conj(f_b) * (rho @ N_B))
    if k_a != 0:
        # conj(k)[S+ rho, S-] + k[S+, rho S-] for atom A
        m_a = S_A_MINUS @ S_A_PLUS
        out += ((k_a + np.conj(k_a)) * (S_A_PLUS @ rho @ S_A_MINUS)
                - np.conj(k_a) * (m_a @ rho) - k_a * (rho @ m_a))
    if k_b != 0:
        m_b = S_B_MINUS @ S_B_PLUS
        out += ((k_b + np.conj(k_b)) * (S_B_PLUS @ rho @ S_B_MINUS)
                - np.conj(k_b) * (m_b @ rho) - k_b * (rho @ m_b))
    return out


def propagate(initial: SystemState, r_a: ReservoirParams, r_b: ReservoirParams,
              t_max: float, dt: float = 1e-2, sample_every: int = 1) -> Trajectory:
    """Integrate the master equation with fixed-step RK4.

    The correlation functions are evaluated analytically at the RK4 substage
    times.  Every ``sample_every``-th state (plus the initial one) is stored.
    Trace drift is monitored, never corrected; the running maximum is recorded
    on the trajectory.

    Raises
    ------
    IntegrationDiverged
        if any entry becomes non-finite or the trace drifts by more than 1e-6.
    """
    if dt <= 0:
        raise ValidationError(f"dt: must be > 0, got {dt}")
    if t_max <= 0:
        raise ValidationError(f"t_max: must be > 0, got {t_max}")
    if sample_every < 1:
        raise ValidationError(f"sample_every: must be >= 1, got {sample_every}")
    n_steps = int(round(t_max / dt))
    if n_steps < 1:
        raise ValidationError(f"t_max/dt = {t_max / dt:.3g} gives no steps")

    def deriv(t, rho):
        return liouvillian_apply(rho, correlation_f(r_a, t), correlation_f(r_b, t))

    t0 = initial.t
    rho = np.array(initial.rho, dtype=complex)
    times = [t0]
    states = [SystemState(t0, rho.copy())]
    max_drift = abs(np.trace(rho).real - 1.0)
    for step in range(n_steps):
        t = t0 + step * dt
        rho = rk4_step(deriv, t, rho, dt)
        if not np.all(np.isfinite(rho.view(float))):
            raise IntegrationDiverged(f"non-finite entries at t = {t + dt:.6g}")
        drift = abs(np.trace(rho) - 1.0)
        if drift > TRACE_DRIFT_TOL:
            raise IntegrationDiverged(
                f"trace drift {drift:.3e} above {TRACE_DRIFT_TOL} at t = {t + dt:.6g}")
        max_drift = max(max_drift, drift)
        if (step + 1) % sample_every == 0:
            times.append(t0 + (step + 1) * dt)
            states.append(SystemState(t0 + (step + 1) * dt, rho.copy()))
    return Trajectory(times=np.array(times), states=states, r_a=r_a, r_b=r_b,
                      dt=dt, max_trace_drift=float(max_drift))


def bell_initial() -> SystemState:
    """Maximally entangled initial state |Phi+> = (|00> + |11>)/sqrt(2) at t = 0."""
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = rho[3, 3] = rho[0, 3] = rho[3, 0] = 0.5
    return SystemState(t=0.0, rho=rho)


def classify_regime(r: ReservoirParams) -> Regime:
    """Weak coupling (``lam > 2 gamma0``) is Markovian, strong is non-Markovian."""
    threshold = 2.0 * r.gamma0
    if abs(r.lam - threshold) <= 1e-12:
        return Regime.BOUNDARY
    return Regime.MARKOVIAN if r.lam > threshold else Regime.NON_MARKOVIAN
