"""Observables derived from trajectories.

Covers the relative phase of the ground amplitudes, the instantaneous
eigenbasis of the drive generator (dark state and the two dressed states),
populations in that basis, a scalar nonadiabaticity measure, and fidelity
against a target qubit state.

The eigenbasis diagnostics are only defined for unchirped drives in
two-photon resonance (equal one-photon detunings); outside that regime they
raise UnsupportedRegimeError rather than guessing a basis.
"""

from __future__ import annotations

import cmath
import math
from typing import NamedTuple

import numpy as np

from .dynamics import phase_pair, rotated_to_bare
from .errors import UnsupportedRegimeError
from .types import AdiabaticFrame, SimulationConfig, StateVector, Trajectory


class PhaseSample(NamedTuple):
    cos_phi: float
    phi: float


def relative_phase(s: StateVector, t: float, cfg: SimulationConfig) -> PhaseSample:
    """Relative phase of the bare ground amplitudes at time ``t``.

    Undoes the rotating-frame factors on d_f before comparing against d_g,
    and returns both cos(phi) and the signed phase arg(c_g^* c_f). Both are
    NaN when either ground amplitude is too small for the phase to mean
    anything.
    """
    c = rotated_to_bare(s.as_array(), t, cfg)
    cos_phi, signed = phase_pair(c[1], c[2])
    return PhaseSample(float(cos_phi), float(signed))


def _require_frame_regime(cfg: SimulationConfig) -> None:
    if not cfg.detunings.two_photon_resonant:
        raise UnsupportedRegimeError(
            "adiabatic frame requires equal one-photon detunings, got "
            f"delta1={cfg.detunings.delta1}, delta2={cfg.detunings.delta2}"
        )
    if not cfg.pulses.unchirped:
        raise UnsupportedRegimeError("adiabatic frame is only defined for unchirped pulses")


def _mixing_theta(t: float, cfg: SimulationConfig) -> float:
    """tan(theta) = |omega1| / |omega2|, stable arbitrarily deep in the wings."""
    p = cfg.pulses
    x1 = (t - p.center1) / p.tau
    x2 = (t - p.center2) / p.tau
    m1 = p.omega01 * math.exp(-x1 * x1)
    m2 = p.omega02 * math.exp(-x2 * x2)
    if m1 > 0.0 or m2 > 0.0:
        return math.atan2(m1, m2)
    if p.omega01 == 0.0 and p.omega02 == 0.0:
        return 0.0  # no drive at all; any constant frame works
    if p.omega01 == 0.0:
        return 0.0
    if p.omega02 == 0.0:
        return math.pi / 2
    # both envelopes underflowed: use the exponent of their ratio instead
    rho = math.log(p.omega01 / p.omega02) + (x2 * x2 - x1 * x1)
    if rho >= 0.0:
        return math.pi / 2 - math.atan(math.exp(-rho))
    return math.atan(math.exp(rho))


def adiabatic_frame(t: float, cfg: SimulationConfig) -> AdiabaticFrame:
    """Instantaneous eigenbasis of the generator at time ``t``.

    The dark vector is (0, omega2, -omega1)/norm, annihilated exactly; the
    dressed vectors are proportional to (lambda, omega1^*, omega2^*) for the
    two nonzero eigenvalues

        lambda_pm = ( -Delta +- sqrt(Delta^2 + 4 W^2) ) / 2,   W^2 = |omega1|^2 + |omega2|^2,

    parameterized by mixing angles tan(theta) = |omega1|/|omega2| and
    tan(phi_mix) = 2 W / (Delta + sqrt(Delta^2 + 4 W^2)) = lambda_plus / W.
    Envelope phases (e.g. a relative pulse phase) are carried onto the
    eigenvector components so the construction stays exact for complex
    couplings.
    """
    _require_frame_regime(cfg)
    p = cfg.pulses
    delta = cfg.detunings.delta1

    theta = _mixing_theta(t, cfg)
    x1 = (t - p.center1) / p.tau
    x2 = (t - p.center2) / p.tau
    m1 = p.omega01 * math.exp(-x1 * x1)
    m2 = p.omega02 * math.exp(-x2 * x2)
    w = math.hypot(m1, m2)

    s = math.hypot(delta, 2.0 * w)
    if w == 0.0 and delta == 0.0:
        phi_mix = math.pi / 4  # continuity limit of tan(phi_mix) = 1
        lam_p = lam_m = 0.0
    elif delta >= 0.0:
        phi_mix = math.atan2(2.0 * w, delta + s)
        lam_p = 2.0 * w * w / (delta + s)
        lam_m = -(delta + s) / 2.0
    else:
        # avoid cancellation in delta + s for negative detuning
        phi_mix = math.atan2(s - delta, 2.0 * w)
        lam_p = (s - delta) / 2.0
        lam_m = -2.0 * w * w / (s - delta) if w > 0.0 else 0.0

    st, ct = math.sin(theta), math.cos(theta)
    sp, cp = math.sin(phi_mix), math.cos(phi_mix)
    u1 = cmath.exp(-1j * p.delta)  # phase of envelope 1; envelope 2 is real

    a0 = np.array([0.0, ct, -st * u1])
    a_plus = np.array([sp, cp * st * u1.conjugate(), cp * ct])
    a_minus = np.array([-cp, sp * st * u1.conjugate(), sp * ct])
    return AdiabaticFrame(
        theta=theta,
        phi_mix=phi_mix,
        a0=a0,
        a_plus=a_plus,
        a_minus=a_minus,
        eigenvalues=np.array([0.0, lam_p, lam_m]),
    )


def adiabatic_populations(traj: Trajectory, cfg: SimulationConfig) -> np.ndarray:
    """Populations |<a_j | d>|^2 along the trajectory, columns (a0, a+, a-).

    The three columns sum to the state norm at every sample.
    """
    _require_frame_regime(cfg)
    out = np.empty((len(traj.times), 3))
    for k, t in enumerate(traj.times):
        frame = adiabatic_frame(float(t), cfg)
        d = traj.states[k]
        out[k, 0] = abs(np.vdot(frame.a0, d)) ** 2
        out[k, 1] = abs(np.vdot(frame.a_plus, d)) ** 2
        out[k, 2] = abs(np.vdot(frame.a_minus, d)) ** 2
    return out


def nonadiabaticity(traj: Trajectory, cfg: SimulationConfig) -> float:
    """Largest excursion of the dark-state population from its initial value.

    Zero means the system follows the dark state perfectly; values of order
    one mean strong transfer between the instantaneous eigenstates.
    """
    pops = adiabatic_populations(traj, cfg)
    return float(np.max(np.abs(pops[:, 0] - pops[0, 0])))


def fidelity(s: StateVector, target, t: float, cfg: SimulationConfig) -> float:
    """Overlap-squared of the bare ground amplitudes with a (g, f) target.

    The target must be a normalized complex pair on (|g>, |f>); any excited
    component of the state simply reduces the fidelity.
    """
    tg = np.asarray(target, dtype=complex)
    if tg.shape != (2,):
        raise ValueError(f"target must be a 2-vector on (g, f), got shape {tg.shape}")
    n = np.linalg.norm(tg)
    if abs(n - 1.0) > 1e-6:
        raise ValueError(f"target must be normalized, got |target| = {n!r}")
    c = rotated_to_bare(s.as_array(), t, cfg)
    return float(abs(np.conj(tg[0]) * c[1] + np.conj(tg[1]) * c[2]) ** 2)
