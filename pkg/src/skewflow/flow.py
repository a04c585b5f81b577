"""Descent of the moment-map energy along its negative gradient on the sphere.

Explicit first-order steps with accept/reject control: a trial point is kept
when the sphere-restricted energy tr(R^2) does not increase (up to a tiny
absolute slack for floating-point rounding); the step size grows by 1.2 on
acceptance and halves on rejection.  Once the descent reaches the rounding
floor of the energy comparison — detected as a run of accepted steps with no
measurable decrease — a Newton polish of the stationarity equation sharpens
the limit, using the exact second derivative assembled from the quadratic
polarization of the moment map.  Convergence is decided by the criticality
residual of the final point, which is what certifies membership in a
critical set; converged limits are labeled by their extracted type.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .algebra import StructureTensor, delta, hermitian_part
from .classify import CriticalType, TypeExtractionError, extract_type
from .moment import CriticalReport, criticality, moment_map

__all__ = [
    "FlowParams",
    "FlowTrace",
    "ConvergenceError",
    "flow",
    "stratum_label",
    "flow_batch",
]

_GROWTH = 1.2
_SHRINK = 0.5
_F_SLACK = 1e-13  # absolute; accepted-step monotonicity still holds at 1e-12
_MIN_STEP = 1e-16
_RESIDUAL_PERIOD = 16  # accepted steps between criticality checks
_PLATEAU_WINDOW = 1024  # accepted steps per energy-progress window
_POLISH_GATE = 1e-2  # only polish when the tangential gradient is this small
_POLISH_ROUNDS = 40
_FIRST_POLISH = 512  # accepted-step count for the first mid-descent polish try


class ConvergenceError(RuntimeError):
    """The flow stopped without certifying a critical point."""


@dataclass(frozen=True)
class FlowParams:
    initial_step: float = 1e-3
    max_steps: int = 200_000
    grad_tol: float = 1e-9
    crit_tol: float = 1e-8

    def __post_init__(self):
        if min(self.initial_step, self.grad_tol, self.crit_tol) <= 0:
            raise ValueError("step size and tolerances must be positive")
        if self.max_steps < 1:
            raise ValueError("max_steps must be at least 1")


@dataclass
class FlowTrace:
    """Record of one trajectory.

    samples holds (step index, F value, tangential gradient norm) at the
    start and at every accepted descent step; limit is the final (or
    best-residual) unit-norm point; stratum is the limit's type when
    converged and extraction succeeds; error carries per-item failures from
    flow_batch.
    """

    samples: list = field(default_factory=list)
    limit: StructureTensor | None = None
    converged: bool = False
    limit_report: CriticalReport | None = None
    stratum: CriticalType | None = None
    error: str | None = None


class _State(NamedTuple):
    mu: np.ndarray  # unit-norm coefficient array
    f: float  # tr(R^2)
    r: np.ndarray  # moment-map matrix
    g_amb: np.ndarray  # ambient gradient of tr(R^2)
    g_tan: np.ndarray  # tangential component at mu
    gnorm: float


def _delta_coeff(c: np.ndarray, a: np.ndarray) -> np.ndarray:
    t1 = np.einsum("pi,pjk->ijk", a, c)
    t2 = np.einsum("pj,ipk->ijk", a, c)
    t3 = np.einsum("kr,ijr->ijk", a, c)
    return t1 + t2 - t3


def _moment_coeff(c: np.ndarray) -> np.ndarray:
    cbar = np.conj(c)
    r = -4.0 * np.einsum("pij,rij->rp", c, cbar) + 2.0 * np.einsum(
        "ijp,ijr->rp", cbar, c
    )
    return hermitian_part(r)


def _polarized_moment(c: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Directional derivative of the moment map at c along v."""
    cbar, vbar = np.conj(c), np.conj(v)
    r = (
        -4.0 * np.einsum("pij,rij->rp", v, cbar)
        - 4.0 * np.einsum("pij,rij->rp", c, vbar)
        + 2.0 * np.einsum("ijp,ijr->rp", vbar, c)
        + 2.0 * np.einsum("ijp,ijr->rp", cbar, v)
    )
    return hermitian_part(r)


def _state(mu: np.ndarray) -> _State:
    r = _moment_coeff(mu)
    f = float(np.trace(r @ r).real)
    g_amb = -8.0 * _delta_coeff(mu, r)
    g_tan = g_amb - np.vdot(mu, g_amb).real * mu
    return _State(mu, f, r, g_amb, g_tan, float(np.linalg.norm(g_tan)))


def _normalized(c: np.ndarray) -> np.ndarray:
    return c / np.linalg.norm(c)


def _hessian_matvec(s: _State, v: np.ndarray) -> np.ndarray:
    """Sphere Hessian of tr(R^2) at unit s.mu applied to v.

    v is first antisymmetrized and projected tangentially, so the operator
    acts on the tangent space of the sphere inside the antisymmetric
    tensors and vanishes on the complement.
    """
    v = 0.5 * (v - v.transpose(1, 0, 2))
    v = v - np.vdot(s.mu, v).real * s.mu
    h = -8.0 * (
        _delta_coeff(v, s.r) + _delta_coeff(s.mu, _polarized_moment(s.mu, v))
    )
    h = h - np.vdot(s.mu, h).real * s.mu
    h = h - np.vdot(s.mu, s.g_amb).real * v
    return h


def _newton_polish(s: _State, f_cap: float, report_fn, report):
    """Sharpen a near-stationary point by Newton steps on the gradient.

    The descent's energy comparisons go blind once tr(R^2) reaches its
    rounding floor, which leaves the point a few orders of magnitude away
    from the critical set; solving the linearized stationarity equation
    closes that gap.  The Hessian is rank-deficient along the unitary-orbit
    directions, and on degenerate approaches the curvature of the slow
    directions itself decays toward zero, so each round tries truncated
    pseudoinverses over a ladder of spectral cutoffs and then damped
    (Levenberg-Marquardt) solves, keeping whichever candidate most shrinks
    the criticality residual — the certificate being chased — without
    raising the energy above f_cap.  Returns the refined state and report.
    """
    n = s.mu.shape[0]
    dim = 2 * n**3
    for _ in range(_POLISH_ROUNDS):
        if report.is_critical or s.gnorm <= 1e-13:
            break
        basis = np.eye(dim)
        cols = np.empty((dim, dim))
        for k in range(dim):
            v = basis[k].view(complex).reshape(s.mu.shape)
            cols[:, k] = _hessian_matvec(s, v).view(float).ravel()
        cols = 0.5 * (cols + cols.T)
        evals, q = np.linalg.eigh(cols)
        rhs = q.T @ (-s.g_tan).view(float).ravel()
        big = float(np.max(np.abs(evals))) or 1.0

        candidates = []
        for rcond in (1e-4, 1e-5, 1e-6, 1e-8):
            inv = np.where(np.abs(evals) > rcond * big, evals, np.inf)
            candidates.append(q @ (rhs / inv))
        for damp in (1e-8, 1e-6, 1e-4, 1e-2):
            candidates.append(q @ (rhs / (np.abs(evals) + damp * big)))

        chosen = None
        for sol in candidates:
            step = sol.view(complex).reshape(s.mu.shape)
            norm = np.linalg.norm(step)
            if not np.isfinite(norm) or norm == 0.0:
                continue
            if norm > 0.1:  # trust region: the polish is a local correction
                step = step * (0.1 / norm)
            t = _state(_normalized(s.mu + step))
            if t.f > f_cap:
                continue
            rep_t = report_fn(t)
            if chosen is None or rep_t.residual < chosen[1].residual:
                chosen = (t, rep_t)
        if chosen is None or chosen[1].residual >= 0.9 * report.residual:
            break
        s, report = chosen
        f_cap = s.f + _F_SLACK
    return s, report


def flow(mu0: StructureTensor, params: FlowParams | None = None) -> FlowTrace:
    """Integrate the negative gradient flow from mu0 (normalized internally).

    Stops when the criticality residual drops below crit_tol (checked
    periodically and at every other stop), when the tangential gradient norm
    drops below grad_tol, when the step size underflows or the energy
    plateaus at its rounding floor, or at max_steps.  converged reflects the
    final residual test only.
    """
    if params is None:
        params = FlowParams()
    if mu0.is_zero():
        raise ValueError("cannot flow the zero tensor")

    s = _state(_normalized(mu0.coeff))
    samples = [(0, s.f, s.gnorm)]

    def _report(state: _State) -> CriticalReport:
        return criticality(StructureTensor(state.mu), tol=params.crit_tol)

    report = _report(s)
    best_s, best_report = s, report

    h = params.initial_step
    accepted = 0
    step = 0
    next_polish = _FIRST_POLISH
    window_f, window_n = s.f, 0
    if not report.is_critical:
        while step < params.max_steps and s.gnorm > params.grad_tol:
            step += 1
            t = _state(_normalized(s.mu - h * s.g_tan))
            if t.f <= s.f + _F_SLACK:
                s = t
                samples.append((step, s.f, s.gnorm))
                h *= _GROWTH
                accepted += 1
                window_n += 1
                if accepted % _RESIDUAL_PERIOD == 0:
                    report = _report(s)
                    if report.residual < best_report.residual:
                        best_s, best_report = s, report
                    if report.is_critical:
                        break
                    # slowly converging trajectories: try an early polish
                    if accepted >= next_polish and s.gnorm < _POLISH_GATE:
                        next_polish *= 4
                        s, report = _newton_polish(
                            s, s.f + _F_SLACK, _report, report
                        )
                        if report.residual < best_report.residual:
                            best_s, best_report = s, report
                        if report.is_critical:
                            break
                        h = params.initial_step
                        window_f, window_n = s.f, 0
                if window_n >= _PLATEAU_WINDOW:
                    if window_f - s.f <= _PLATEAU_WINDOW * _F_SLACK:
                        break  # energy at its rounding floor
                    window_f, window_n = s.f, 0
            else:
                h *= _SHRINK
                if h < _MIN_STEP:
                    break

        report = _report(s)
        if report.residual < best_report.residual:
            best_s, best_report = s, report
        # polish the best point seen, not necessarily where the loop stopped
        if not best_report.is_critical and best_s.gnorm < _POLISH_GATE:
            best_s, best_report = _newton_polish(
                best_s, best_s.f + _F_SLACK, _report, best_report
            )
        s, report = best_s, best_report

    trace = FlowTrace(samples=samples)
    if report.is_critical:
        trace.converged = True
        trace.limit = StructureTensor(s.mu)
        trace.limit_report = report
        try:
            trace.stratum = extract_type(report.D_mu)
        except TypeExtractionError as exc:
            trace.error = f"type extraction failed at the limit: {exc}"
    else:
        trace.converged = False
        trace.limit = StructureTensor(best_s.mu)
        trace.limit_report = best_report
    return trace


def stratum_label(mu0: StructureTensor, params: FlowParams | None = None) -> CriticalType:
    """Type of the flow limit, labeling the stratum containing mu0."""
    trace = flow(mu0, params)
    if not trace.converged:
        raise ConvergenceError(
            "flow did not converge "
            f"(residual {trace.limit_report.residual:.3g} after "
            f"{trace.samples[-1][0]} steps)"
        )
    if trace.stratum is None:
        raise ConvergenceError(trace.error or "limit type unavailable")
    return trace.stratum


def flow_batch(inputs, params: FlowParams | None = None) -> list:
    """Run flow on each input independently; order matches the input order.

    Per-item failures (for example a zero tensor) are recorded in the
    corresponding trace's error field rather than raised.
    """
    out = []
    for mu0 in inputs:
        try:
            out.append(flow(mu0, params))
        except (ValueError, np.linalg.LinAlgError) as exc:
            out.append(FlowTrace(limit=mu0, error=str(exc)))
    return out
