"""Concurrence and the entropic entanglement-witness report.

The witness succeeds while ``mu < 1``.  A report records the first crossing
time ``t_ew`` (so the witness works on ``[0, t_ew)``), the concurrence at the
crossing (the witnessed-concurrence interval is ``(threshold, 1]`` for a
maximally entangled start), and the time at which entanglement dies.
"""

from dataclasses import dataclass

import numpy as np
from scipy.interpolate import PchipInterpolator
from scipy.optimize import brentq

from .dynamics import Trajectory, correlation_f, liouvillian_apply
from .errors import EmptyTrajectory, NotXState, ValidationError
from .information import uncertainty_record
from .linalg import rk4_step, _as_matrix

_SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_YY = np.kron(_SIGMA_Y, _SIGMA_Y)

X_STATE_TOL = 1e-10
CONCURRENCE_ZERO_TOL = 3e-3
CROSSING_TIME_TOL = 1e-3


def _psd_sqrt(h: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(0.5 * (h + h.conj().T))
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T


def concurrence(rho) -> float:
    """Wootters concurrence of a two-qubit density matrix.

    From the spectrum ``lambda_1 >= ... >= lambda_4`` of
    ``rho @ (sigma_y (x) sigma_y) conj(rho) (sigma_y (x) sigma_y)``:
    ``max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4))``, in [0, 1].

    The square roots are evaluated as singular values of
    ``sqrt(rho_tilde) @ sqrt(rho)`` (whose Gram matrix is similar to the
    product above), which keeps them accurate near zero where a direct
    eigenvalue solve of the non-Hermitian product loses half the digits.
    """
    a = _as_matrix(rho)
    rho_tilde = _YY @ a.conj() @ _YY
    roots = np.linalg.svd(_psd_sqrt(rho_tilde) @ _psd_sqrt(a), compute_uv=False)
    return float(max(0.0, roots[0] - roots[1] - roots[2] - roots[3]))


def concurrence_x_state(rho) -> float:
    """Closed-form concurrence for X-form states (analytic cross-check).

    ``2 max(0, |rho_14| - sqrt(rho_22 rho_33), |rho_23| - sqrt(rho_11 rho_44))``
    (1-indexed entries).  Raises :class:`NotXState` if any entry outside the
    main diagonal and anti-diagonal exceeds ``X_STATE_TOL``.
    """
    a = _as_matrix(rho)
    mask = np.zeros((4, 4), dtype=bool)
    mask[np.arange(4), np.arange(4)] = True
    mask[np.arange(4), 3 - np.arange(4)] = True
    off = np.abs(a[~mask]).max()
    if off > X_STATE_TOL:
        raise NotXState(f"non-X entry of magnitude {off:.3e}")
    outer = abs(a[0, 3]) - np.sqrt(max(a[1, 1].real, 0.0) * max(a[2, 2].real, 0.0))
    inner = abs(a[1, 2]) - np.sqrt(max(a[0, 0].real, 0.0) * max(a[3, 3].real, 0.0))
    return float(2.0 * max(0.0, outer, inner))


@dataclass
class WitnessReport:
    """Outcome of scanning a trajectory for the ``mu = 1`` witness boundary."""

    crossing_found: bool
    t_ew: float | None
    c_ew_threshold: float | None
    death_time: float | None
    mu_series_max: float
    notes: str = ""


def _require_samples(traj: Trajectory) -> None:
    if len(traj) == 0:
        raise EmptyTrajectory("trajectory has no samples")
    if traj.samples is None or len(traj.samples) == 0:
        raise EmptyTrajectory("trajectory has no derived samples")


def _interpolated_crossing(times, mus, concs, idx):
    """Monotone-cubic refinement of the crossing inside [times[idx-1], times[idx]]."""
    lo = max(0, idx - 3)
    hi = min(len(times), idx + 3)
    window_t = times[lo:hi]
    mu_curve = PchipInterpolator(window_t, mus[lo:hi])
    t_ew = float(brentq(lambda t: mu_curve(t) - 1.0, times[idx - 1], times[idx],
                        xtol=CROSSING_TIME_TOL / 10.0))
    c_curve = PchipInterpolator(window_t, concs[lo:hi])
    return t_ew, float(c_curve(t_ew))


def _reintegrated_crossing(traj: Trajectory, idx):
    """Bisection on a local re-integration with step dt/10."""
    anchor = traj.states[idx - 1]
    fine_dt = traj.dt / 10.0

    def deriv(t, rho):
        return liouvillian_apply(rho, correlation_f(traj.r_a, t),
                                 correlation_f(traj.r_b, t))

    def state_at(t_target: float) -> np.ndarray:
        rho = anchor.rho.copy()
        t = anchor.t
        while t < t_target - 1e-12:
            step = min(fine_dt, t_target - t)
            rho = rk4_step(deriv, t, rho, step)
            t += step
        return rho

    lo, hi = traj.times[idx - 1], traj.times[idx]
    while hi - lo > CROSSING_TIME_TOL:
        mid = 0.5 * (lo + hi)
        if uncertainty_record(state_at(mid), mid).mu >= 1.0:
            hi = mid
        else:
            lo = mid
    t_ew = 0.5 * (lo + hi)
    return t_ew, concurrence(state_at(t_ew))


def witness_report(traj: Trajectory, refine: str = "interpolate") -> WitnessReport:
    """Locate the first time ``mu`` reaches 1 and the concurrence there.

    ``refine`` selects how the crossing is sharpened beyond the sample grid:
    ``"interpolate"`` (default) fits a monotone cubic through the sampled
    ``mu`` series; ``"reintegrate"`` bisects on a fresh integration from the
    bracketing sample with a tenth of the original step.  Both meet an
    absolute time tolerance of 1e-3.  Only the first crossing is reported;
    re-entry below 1 afterwards is flagged in ``notes``.
    """
    _require_samples(traj)
    if refine not in ("interpolate", "reintegrate"):
        raise ValidationError(f"refine: expected 'interpolate' or 'reintegrate', got {refine!r}")
    times = np.asarray(traj.times, dtype=float)
    mus = np.array([s.mu for s in traj.samples])
    concs = np.array([s.concurrence for s in traj.samples])
    death = entanglement_death_time(traj)
    mu_max = float(mus.max())

    above = mus >= 1.0
    if not above.any():
        return WitnessReport(crossing_found=False, t_ew=None, c_ew_threshold=None,
                             death_time=death, mu_series_max=mu_max)
    idx = int(np.argmax(above))
    notes = []
    if idx == 0:
        t_ew, threshold = float(times[0]), float(concs[0])
        notes.append("mu starts at or above 1")
    elif refine == "reintegrate":
        t_ew, threshold = _reintegrated_crossing(traj, idx)
    else:
        t_ew, threshold = _interpolated_crossing(times, mus, concs, idx)
    if (mus[idx:] < 1.0).any():
        notes.append("mu re-enters below 1 after the first crossing")
    return WitnessReport(crossing_found=True, t_ew=t_ew,
                         c_ew_threshold=min(max(threshold, 0.0), 1.0),
                         death_time=death, mu_series_max=mu_max,
                         notes="; ".join(notes))


def entanglement_death_time(traj: Trajectory, zero_tol: float = CONCURRENCE_ZERO_TOL,
                            confirm_samples: int = 10) -> float | None:
    """First sampled time at which concurrence falls to zero and stays there.

    "Zero" means below ``zero_tol`` (the model's concurrence decays to zero
    asymptotically without an exact root, and near machine zero the general
    eigensolver route is noise-limited); the drop must persist for the next
    ``confirm_samples`` samples so that a transient dip during a revival
    oscillation is not flagged.  Returns None if entanglement survives the
    whole trajectory.
    """
    _require_samples(traj)
    concs = np.array([s.concurrence for s in traj.samples])
    below = concs <= zero_tol
    limit = len(concs) - confirm_samples
    for i in range(max(limit, 0)):
        if below[i : i + confirm_samples + 1].all():
            return float(traj.times[i])
    return None
