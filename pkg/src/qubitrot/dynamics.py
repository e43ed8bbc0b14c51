"""Rotated-frame equations of motion and their integration.

The wavefunction amplitudes (c_e, c_g, c_f) are transformed to a frame that
absorbs the carrier detuning and chirp phases,

    d_e = c_e e^{i(delta1 t + phi1(t))},
    d_g = c_g,
    d_f = c_f e^{i((delta1 - delta2) t + phi1(t) - phi2(t))},

where phi_i(t) is the accumulated chirp phase of pulse i with phi_i(0) = 0.
In that frame the amplitudes obey

    d_e' =  i (delta1 + phi1') d_e - i (omega1 d_g + omega2 d_f)
    d_g' = -i conj(omega1) d_e
    d_f' =  i (delta1 - delta2 + phi1' - phi2') d_f - i conj(omega2) d_e

with Gaussian envelopes omega1, omega2 (pulse 1 carrying the constant
relative phase e^{-i delta}). The moduli |d_j| equal |c_j|, so populations
can be read off directly; recovering the bare relative phase requires
undoing the frame, see :func:`rotated_to_bare`.

Integration uses an adaptive embedded Runge-Kutta 4(5) pair with dense
output. The state is never renormalized: norm drift is recorded as a
diagnostic so integration bugs stay visible.
"""

from __future__ import annotations

import cmath
import math
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .errors import IntegrationError
from .types import ChirpProfile, PulsePair, SimulationConfig, Trajectory

# 3x3 complex array M(t), ordered (e, g, f), propagating d' = M d.
GeneratorMatrix = np.ndarray

# Below this product of ground-amplitude moduli the relative phase is
# reported as NaN rather than a meaningless ratio.
PHASE_FLOOR = 1e-12

EnvelopePair = Callable[[float], tuple[complex, complex]]


def envelope(t: float, p: PulsePair) -> tuple[complex, complex]:
    """Complex pulse envelopes at time ``t``.

    omega1 = omega01 exp[-((t - c1)/tau)^2] e^{-i delta}, centered at
    c1 = origin + T; omega2 = omega02 exp[-((t - c2)/tau)^2] at c2 = origin.
    """
    x1 = (t - p.center1) / p.tau
    x2 = (t - p.center2) / p.tau
    w1 = p.omega01 * math.exp(-x1 * x1) * cmath.exp(-1j * p.delta)
    w2 = p.omega02 * math.exp(-x2 * x2)
    return w1, w2


def chirp_rate(t, c: ChirpProfile, center: float, tau: float = 1.0):
    """Instantaneous phase rate d(phi)/d(t/tau) of one chirp profile.

    Accepts scalar or array ``t``. The rate is per dimensionless time; divide
    by tau to get the rate per unit t (done at generator assembly).
    """
    t = np.asarray(t, dtype=float)
    if c.kind == "linear":
        out = c.chi * (t - center) / tau
    elif c.kind == "tanh":
        out = c.chi * np.tanh((t - center) / tau)
    else:
        out = np.zeros_like(t)
    return out if out.ndim else float(out)


def _log_cosh(x: np.ndarray) -> np.ndarray:
    # log(cosh(x)) without overflow for |x| beyond ~710
    ax = np.abs(x)
    return ax + np.log1p(np.exp(-2.0 * ax)) - math.log(2.0)


def accumulated_chirp_phase(t, c: ChirpProfile, center: float, tau: float = 1.0):
    """Accumulated chirp phase phi(t) = integral of the rate, with phi(0) = 0.

    Closed forms: linear -> chi [ (t - center)^2 - center^2 ] / (2 tau^2);
    tanh -> chi [ log cosh((t - center)/tau) - log cosh(center/tau) ].
    """
    t = np.asarray(t, dtype=float)
    if c.kind == "linear":
        out = c.chi * ((t - center) ** 2 - center**2) / (2.0 * tau**2)
    elif c.kind == "tanh":
        out = c.chi * (_log_cosh((t - center) / tau) - _log_cosh(np.asarray(-center / tau)))
    else:
        out = np.zeros_like(t)
    return out if out.ndim else float(out)


def assemble_generator(t: float, cfg: SimulationConfig) -> GeneratorMatrix:
    """Generator M(t) of the rotated-frame flow d' = M d, ordered (e, g, f).

    i M is Hermitian: a real diagonal of detuning-plus-chirp terms plus the
    Hermitian envelope coupling block.
    """
    p = cfg.pulses
    w1, w2 = envelope(t, p)
    r1 = chirp_rate(t, p.chirp1, p.center1, p.tau) / p.tau
    r2 = chirp_rate(t, p.chirp2, p.center2, p.tau) / p.tau
    d1 = cfg.detunings.delta1
    d2 = cfg.detunings.delta2
    return np.array(
        [
            [1j * (d1 + r1), -1j * w1, -1j * w2],
            [-1j * w1.conjugate(), 0.0, 0.0],
            [-1j * w2.conjugate(), 0.0, 1j * (d1 - d2 + r1 - r2)],
        ]
    )


def _rate_fn(c: ChirpProfile, center: float, tau: float):
    if not c.is_active:
        return None
    chi, inv_tau = c.chi, 1.0 / tau
    if c.kind == "linear":
        return lambda t: chi * (t - center) * inv_tau
    return lambda t: chi * math.tanh((t - center) * inv_tau)


def _make_rhs(cfg: SimulationConfig, envelopes: EnvelopePair | None):
    """Closure evaluating the amplitude derivatives; scalar math for speed."""
    p = cfg.pulses
    d1 = cfg.detunings.delta1
    dd = cfg.detunings.delta1 - cfg.detunings.delta2
    inv_tau = 1.0 / p.tau
    rate1 = _rate_fn(p.chirp1, p.center1, p.tau)
    rate2 = _rate_fn(p.chirp2, p.center2, p.tau)

    if envelopes is None:
        o1 = p.omega01 * cmath.exp(-1j * p.delta)
        o2 = complex(p.omega02)
        c1, c2 = p.center1, p.center2

        def env(t: float) -> tuple[complex, complex]:
            x1 = (t - c1) * inv_tau
            x2 = (t - c2) * inv_tau
            return o1 * math.exp(-x1 * x1), o2 * math.exp(-x2 * x2)

    else:
        env = envelopes

    def rhs(t, y):
        w1, w2 = env(t)
        r1 = rate1(t) * inv_tau if rate1 else 0.0
        r2 = rate2(t) * inv_tau if rate2 else 0.0
        de, dg, df = y
        return (
            1j * (d1 + r1) * de - 1j * (w1 * dg + w2 * df),
            -1j * w1.conjugate() * de,
            1j * (dd + r1 - r2) * df - 1j * w2.conjugate() * de,
        )

    return rhs


def rotated_to_bare(states: np.ndarray, times, cfg: SimulationConfig) -> np.ndarray:
    """Undo the rotating-frame transformation: (d_e, d_g, d_f) -> (c_e, c_g, c_f).

    ``states`` may be a single (3,) vector with scalar ``times`` or an (n, 3)
    array with an (n,) time grid.
    """
    p = cfg.pulses
    t = np.asarray(times, dtype=float)
    ph1 = accumulated_chirp_phase(t, p.chirp1, p.center1, p.tau)
    ph2 = accumulated_chirp_phase(t, p.chirp2, p.center2, p.tau)
    d1 = cfg.detunings.delta1
    d2 = cfg.detunings.delta2
    d = np.asarray(states)
    out = np.empty_like(d, dtype=complex)
    out[..., 0] = d[..., 0] * np.exp(-1j * (d1 * t + ph1))
    out[..., 1] = d[..., 1]
    out[..., 2] = d[..., 2] * np.exp(-1j * ((d1 - d2) * t + ph1 - ph2))
    return out


def phase_pair(c_g, c_f) -> tuple[np.ndarray, np.ndarray]:
    """cos(phi) and the signed phase arg(c_g^* c_f) of the ground amplitudes.

    Both are NaN wherever |c_g| |c_f| falls below PHASE_FLOOR.
    """
    c_g = np.asarray(c_g)
    c_f = np.asarray(c_f)
    cross = np.conj(c_g) * c_f
    den = np.abs(c_g) * np.abs(c_f)
    with np.errstate(invalid="ignore", divide="ignore"):
        cos_phi = np.where(den < PHASE_FLOOR, np.nan, np.clip(cross.real / den, -1.0, 1.0))
        signed = np.where(den < PHASE_FLOOR, np.nan, np.angle(cross))
    return cos_phi, signed


def integrate(
    cfg: SimulationConfig,
    *,
    envelopes: EnvelopePair | None = None,
    breakpoints: Sequence[float] = (),
) -> Trajectory:
    """Propagate the amplitudes over the configured window.

    Starts from (0, alpha, beta e^{i phi}) at ``t_start`` and samples the
    dense output on a uniform grid of ``cfg.samples`` points. ``envelopes``
    optionally replaces the Gaussian pair (the chirp terms still come from
    the config); ``breakpoints`` forces integrator restarts at envelope
    discontinuities such as a hard pulse chop.

    Raises IntegrationError, carrying the failure time, if step-size control
    underflows before reaching ``t_end``.
    """
    q = cfg.initial
    grid = np.linspace(cfg.t_start, cfg.t_end, cfg.samples)
    y = np.array([0.0, q.alpha, q.beta * cmath.exp(1j * q.phi)], dtype=complex)
    rhs = _make_rhs(cfg, envelopes)

    cuts = [cfg.t_start]
    cuts += [float(b) for b in sorted(breakpoints) if cfg.t_start < float(b) < cfg.t_end]
    cuts.append(cfg.t_end)

    states = np.empty((cfg.samples, 3), dtype=complex)
    filled = 0
    for a, b in zip(cuts[:-1], cuts[1:]):
        mask = (grid > a) & (grid <= b) if filled else (grid >= a) & (grid <= b)
        seg = grid[mask]
        t_eval = seg if seg.size and seg[-1] == b else np.append(seg, b)
        sol = solve_ivp(
            rhs,
            (a, b),
            y,
            method="RK45",
            rtol=cfg.rel_tol,
            atol=cfg.abs_tol,
            t_eval=t_eval,
        )
        if not sol.success:
            t_fail = float(sol.t[-1]) if len(sol.t) else a
            raise IntegrationError(sol.message or "integration failed", t_fail)
        cols = sol.y.T
        states[filled : filled + seg.size] = cols[: seg.size]
        filled += seg.size
        y = cols[-1]

    populations = np.abs(states) ** 2
    norm_err = float(np.max(np.abs(populations.sum(axis=1) - 1.0)))
    bare = rotated_to_bare(states, grid, cfg)
    cos_phi, signed = phase_pair(bare[:, 1], bare[:, 2])
    return Trajectory(
        times=grid,
        states=states,
        populations=populations,
        cos_phi=cos_phi,
        phi_signed=signed,
        config=cfg,
        max_norm_error=norm_err,
    )
