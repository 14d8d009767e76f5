"""Domain types and kinematics for the V <-> N + theta sector of the Lee model.

The model couples a V particle to an N particle plus a theta boson of mass
mu; a theta of momentum k carries energy omega_k = sqrt(k^2 + mu^2).  Every
interaction vertex is weighted by

    g0 * (2*pi)**(-3/2) * f(omega_k) / sqrt(2*omega_k),

where f is a regulating form factor with cutoff scale Lambda.  The dressed V
state below the N+theta threshold m_N + mu carries an N-theta cloud whose
momentum-space amplitude is the vertex weight divided by (m_V - m_N - omega_k).

All energies are in the same (arbitrary) unit; mu = 1 is the conventional
scale.  All types here are immutable values and all functions are pure, so
everything can be shared freely between threads and across parameter sweeps.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import StabilityViolation

TWO_PI_32 = (2.0 * math.pi) ** 1.5

SHARP = "sharp"
EXPONENTIAL = "exponential"
DIPOLE = "dipole"
FORM_FACTOR_KINDS = (SHARP, EXPONENTIAL, DIPOLE)


def _maybe_scalar(out: np.ndarray, like) -> "float | np.ndarray":
    """Return a plain float when the input was scalar."""
    if np.ndim(like) == 0:
        return float(out)
    return out


@dataclass(frozen=True)
class FormFactor:
    """Vertex regulator f(omega) with cutoff scale ``lam``.

    Three families are supported, all normalized so that 0 <= f <= 1 on the
    physical domain omega >= mu and f(mu) > 0:

    * ``sharp``:        f = 1 for omega <= Lambda, else 0
    * ``exponential``:  f = exp(-omega / Lambda)
    * ``dipole``:       f = Lambda^2 / (Lambda^2 + k^2), with k^2 = omega^2 - mu^2
    """

    kind: str
    lam: float

    def __post_init__(self):
        if self.kind not in FORM_FACTOR_KINDS:
            raise ValueError(f"unknown form factor kind {self.kind!r}")
        if not (math.isfinite(self.lam) and self.lam > 0.0):
            raise ValueError("form factor cutoff Lambda must be positive and finite")

    @classmethod
    def sharp(cls, lam: float) -> "FormFactor":
        return cls(SHARP, lam)

    @classmethod
    def exponential(cls, lam: float) -> "FormFactor":
        return cls(EXPONENTIAL, lam)

    @classmethod
    def dipole(cls, lam: float) -> "FormFactor":
        return cls(DIPOLE, lam)

    def evaluate(self, omega_val, mu: float | None = None):
        """f(omega) for scalar or array ``omega_val``.

        The dipole family is a function of the momentum, so it needs the
        theta mass ``mu`` to convert omega back to k^2 = omega^2 - mu^2.
        """
        om = np.asarray(omega_val, dtype=float)
        if self.kind == SHARP:
            out = np.where(om <= self.lam, 1.0, 0.0)
        elif self.kind == EXPONENTIAL:
            out = np.exp(-om / self.lam)
        else:
            if mu is None:
                raise ValueError("dipole form factor evaluation requires mu")
            lam_sq = self.lam * self.lam
            out = lam_sq / (lam_sq + om * om - mu * mu)
        return _maybe_scalar(out, omega_val)

    def momentum_cutoff(self, mu: float) -> float | None:
        """Momentum above which f vanishes identically, or None if unbounded."""
        if self.kind == SHARP:
            return math.sqrt(max(self.lam * self.lam - mu * mu, 0.0))
        return None


@dataclass(frozen=True)
class ModelParams:
    """Masses and regulator defining one Lee-model instance.

    ``m_n`` and ``mu`` are the N and theta masses; the bare V mass and the
    coupling live in :class:`BareCoupling` / :class:`RenCoupling` because they
    are the quantities the renormalization maps exchange.
    """

    m_n: float
    mu: float
    form_factor: FormFactor

    def __post_init__(self):
        if not (math.isfinite(self.mu) and self.mu > 0.0):
            raise ValueError("theta mass mu must be positive and finite")
        if not math.isfinite(self.m_n):
            raise ValueError("N mass must be finite")
        if not isinstance(self.form_factor, FormFactor):
            raise ValueError("form_factor must be a FormFactor instance")

    @property
    def threshold(self) -> float:
        """Bottom of the N+theta continuum, m_N + mu."""
        return self.m_n + self.mu


@dataclass(frozen=True)
class BareCoupling:
    """Bare V mass and bare coupling (only g0^2 is observable; g0 >= 0)."""

    m_v0: float
    g0: float

    def __post_init__(self):
        if not math.isfinite(self.m_v0):
            raise ValueError("bare V mass must be finite")
        if not (math.isfinite(self.g0) and self.g0 >= 0.0):
            raise ValueError("bare coupling g0 must be nonnegative and finite")


@dataclass(frozen=True)
class RenCoupling:
    """Physical V mass and renormalized coupling g (g >= 0).

    A consistent point also needs m_v - m_N < mu (bound state below the
    continuum); that window is checked wherever energy denominators appear,
    since it involves the model masses.
    """

    m_v: float
    g: float

    def __post_init__(self):
        if not math.isfinite(self.m_v):
            raise ValueError("physical V mass must be finite")
        if not (math.isfinite(self.g) and self.g >= 0.0):
            raise ValueError("renormalized coupling g must be nonnegative and finite")


class Regime(enum.Enum):
    """Coupling regime relative to the ghost threshold x = 1."""

    NORMAL = "Normal"
    CRITICAL = "Critical"
    GHOST = "Ghost"


def ensure_stable(params: ModelParams, m: float, label: str = "m_V") -> None:
    """Require m - m_N < mu so all denominators (m - m_N - omega) stay negative."""
    if not (m - params.m_n < params.mu):
        raise StabilityViolation(
            f"{label} = {m!r} does not lie below the N+theta threshold "
            f"{params.threshold!r}; the bound-state sector ends there"
        )


def omega(k, mu: float):
    """Theta energy sqrt(k^2 + mu^2) for momentum magnitude k (scalar or array)."""
    if not (math.isfinite(mu) and mu > 0.0):
        raise ValueError("mu must be positive and finite")
    k_arr = np.asarray(k, dtype=float)
    if np.any(k_arr < 0.0) or not np.all(np.isfinite(k_arr)):
        raise ValueError("momentum magnitude k must be nonnegative and finite")
    return _maybe_scalar(np.sqrt(k_arr * k_arr + mu * mu), k)


def form_factor_eval(ff: FormFactor, omega_val, mu: float | None = None):
    """Evaluate the form factor at the given energy; see FormFactor.evaluate."""
    return ff.evaluate(omega_val, mu)


def vertex_weight(g0: float, ff: FormFactor, omega_val, mu: float | None = None):
    """Interaction vertex g0 (2 pi)^(-3/2) f(omega) (2 omega)^(-1/2)."""
    om = np.asarray(omega_val, dtype=float)
    out = g0 / TWO_PI_32 * ff.evaluate(om, mu) / np.sqrt(2.0 * om)
    return _maybe_scalar(out, omega_val)


def dressing_amplitude(params: ModelParams, g0: float, m_v: float, k):
    """Momentum-space amplitude of the N-theta cloud in the dressed V state.

    Equals vertex_weight(omega_k) / (m_V - m_N - omega_k); strictly negative
    wherever g0 > 0 and the form factor is nonzero, and square-integrable in
    d^3k for every supported form factor family.
    """
    ensure_stable(params, m_v)
    om = np.asarray(omega(k, params.mu), dtype=float)
    weight = vertex_weight(g0, params.form_factor, om, params.mu)
    out = np.asarray(weight, dtype=float) / (m_v - params.m_n - om)
    return _maybe_scalar(out, k)
