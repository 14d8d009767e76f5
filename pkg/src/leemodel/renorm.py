"""Mass and wavefunction renormalization of the V particle, and the ghost regime.

Writing I1(m) and I2(m) for the two radial integrals (mass_shift_integral and
z_factor_integral in :mod:`leemodel.quadrature`), the one-V sector is governed
by four relations:

    m_V   = m_V0 + (g0^2/(2 pi)^3) I1(m_V)          physical-mass condition
    1/Z_V = 1 + (g0^2/(2 pi)^3) I2(m_V)             bare presentation, Z in (0, 1]
    g^2   = Z_V g0^2                                 coupling renormalization
    Z_V   = 1 - x,  x = (g^2/(2 pi)^3) I2(m_V)      renormalized presentation

The two presentations of Z_V agree identically for any bare input.  Trouble
starts when one *fixes* the renormalized pair (m_V, g): for x > 1 the second
presentation goes negative, which a probability cannot do: the ghost.  The
regularized reading expands 1/(1-x) as the geometric series 1 + x + x^2 + ...;
for x > 1 the series diverges, the inverse weight is infinite, and the bare-V
probability is assigned 0 instead of a negative number.  Both values are
reported side by side: ``z_standard`` (1 - x, possibly negative) and
``z_regularized`` (max(1 - x, 0)).
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import Callable

from .core import BareCoupling, ModelParams, Regime, RenCoupling, ensure_stable
from .errors import DegenerateModel, GhostRegime, NoBoundState, NoConvergence
from .quadrature import QuadSpec, mass_shift_integral, z_factor_integral

TWO_PI_CUBED = (2.0 * math.pi) ** 3

# fraction of mu kept between the root-search bracket and the threshold
THRESHOLD_MARGIN = 1e-9

_LOG_FLOAT_MAX = math.log(sys.float_info.max)


@dataclass(frozen=True)
class RenormReport:
    """Joint result of the renormalization chain at one parameter point.

    ``m_v0``, ``delta_m`` and ``g0_sq`` are None when the point was specified
    by renormalized quantities outside the Normal regime, where no real bare
    theory exists.  ``x`` is the dimensionless dressing strength
    (g^2/(2 pi)^3) I2(m_V) controlling the regime.
    """

    m_v: float
    m_v0: float | None
    delta_m: float | None
    g0_sq: float | None
    g_sq: float
    x: float
    z_standard: float
    z_regularized: float
    regime: Regime


def mass_shift(params: ModelParams, g0: float, m_v: float, spec: QuadSpec) -> float:
    """Self-energy shift delta m_V = (g0^2/(2 pi)^3) I1(m_V); always <= 0."""
    ensure_stable(params, m_v)
    if g0 == 0.0:
        return 0.0
    return g0 * g0 / TWO_PI_CUBED * mass_shift_integral(m_v, params, spec)


def _bracketed_root(f: Callable[[float], float], lo: float, hi: float,
                    f_lo: float, f_hi: float, tol: float,
                    max_iter: int = 200) -> float:
    """Root of f on [lo, hi] with f(lo) < 0 < f(hi).

    Bisection bracket maintenance with secant proposals; a bisection step is
    forced whenever the same endpoint moved twice in a row, so the bracket
    width is guaranteed to shrink.
    """
    a, b, fa, fb = lo, hi, f_lo, f_hi
    side = 0
    stall = 0
    for _ in range(max_iter):
        if b - a <= tol * max(1.0, abs(a), abs(b)):
            break
        if stall >= 2:
            x = 0.5 * (a + b)
            stall = 0
        else:
            x = (a * fb - b * fa) / (fb - fa)
            if not (a < x < b):
                x = 0.5 * (a + b)
        fx = f(x)
        if fx == 0.0:
            return x
        if fx < 0.0:
            a, fa = x, fx
            stall = stall + 1 if side == -1 else 0
            side = -1
        else:
            b, fb = x, fx
            stall = stall + 1 if side == +1 else 0
            side = +1
    else:
        raise NoConvergence("bracketed root refinement exceeded its iteration cap")
    return (a * fb - b * fa) / (fb - fa)


def solve_physical_mass(params: ModelParams, bare: BareCoupling, spec: QuadSpec,
                        root_tol: float = 1e-12) -> float | None:
    """Physical V mass: the root of F(m) = m - m_V0 - mass_shift(m) below threshold.

    F is strictly increasing (its slope is 1 plus a positive integral), so the
    sub-threshold root is unique when it exists.  Returns None when
    F(threshold-) <= 0, i.e. when the V state has dissolved into the
    continuum and no discrete eigenvalue remains.
    """
    hi = params.threshold - THRESHOLD_MARGIN * params.mu

    def residual(m: float) -> float:
        return m - bare.m_v0 - mass_shift(params, bare.g0, m, spec)

    f_hi = residual(hi)
    if f_hi <= 0.0:
        return None

    # expand the lower end geometrically until the residual goes negative
    anchor = min(bare.m_v0, hi)
    step = max(params.mu, 1.0)
    cap = 1e6 * max(params.mu, abs(bare.m_v0), 1.0)
    lo = anchor - step
    f_lo = residual(lo)
    while f_lo > 0.0:
        step *= 2.0
        if step > cap:
            raise NoConvergence("could not bracket the physical mass from below")
        lo = anchor - step
        f_lo = residual(lo)
    if f_lo == 0.0:
        return lo
    return _bracketed_root(residual, lo, hi, f_lo, f_hi, root_tol)


def z_from_bare(params: ModelParams, g0: float, m_v: float, spec: QuadSpec) -> float:
    """Overlap probability of the dressed V with the bare V, from bare data.

    1 / (1 + (g0^2/(2 pi)^3) I2(m_V)); always in (0, 1], equal to 1 only in
    the free theory, and strictly decreasing in g0.
    """
    ensure_stable(params, m_v)
    if g0 == 0.0:
        return 1.0
    return 1.0 / (1.0 + g0 * g0 / TWO_PI_CUBED * z_factor_integral(m_v, params, spec))


def renormalize_coupling(g0: float, z: float) -> float:
    """Renormalized coupling g = sqrt(z) * g0."""
    if z <= 0.0:
        raise ValueError("wavefunction renormalization z must be positive")
    return math.sqrt(z) * g0


def dressing_strength(params: ModelParams, g: float, m_v: float, spec: QuadSpec) -> float:
    """Dimensionless strength x = (g^2/(2 pi)^3) I2(m_V) from renormalized data.

    x < 1 is the normal regime; x > 1 is the ghost regime where the standard
    presentation of Z_V turns negative.
    """
    ensure_stable(params, m_v)
    if g == 0.0:
        return 0.0
    return g * g / TWO_PI_CUBED * z_factor_integral(m_v, params, spec)


def standard_z(x: float) -> float:
    """Standard presentation Z_V = 1 - x; negative for x > 1 (the ghost value)."""
    if x < 0.0:
        raise ValueError("dressing strength x must be nonnegative")
    return 1.0 - x


def regularized_z(x: float) -> float:
    """Divergent-series reading of Z_V: max(1 - x, 0).

    For x > 1 the inverse weight 1/(1-x) is read as the geometric series
    1 + x + x^2 + ..., which diverges; an infinite inverse weight means zero
    probability, so Z_V is 0 rather than negative.  Continuous at x = 1.
    """
    if x < 0.0:
        raise ValueError("dressing strength x must be nonnegative")
    return 1.0 - x if x < 1.0 else 0.0


def geometric_partial_sum(x: float, n: int) -> float:
    """Partial sum 1 + x + ... + x^n; saturates to inf instead of overflowing.

    Uses the closed form (x^(n+1) - 1)/(x - 1) away from x = 1 and direct
    summation inside |x - 1| <= 1e-8 where the closed form loses precision.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if x < 0.0:
        raise ValueError("ratio x must be nonnegative")
    if x == 1.0:
        return float(n + 1)
    if abs(x - 1.0) <= 1e-8:
        return math.fsum(x ** j for j in range(n + 1))
    if x > 1.0 and (n + 1) * math.log(x) > _LOG_FLOAT_MAX:
        return math.inf
    return (x ** (n + 1) - 1.0) / (x - 1.0)


def classify_regime(x: float, regime_tol: float = 1e-12) -> Regime:
    """Normal / Critical / Ghost by position of x relative to 1.

    A tolerance band of width ``regime_tol`` around x = 1 absorbs roundoff:
    Critical iff |x - 1| <= regime_tol, Ghost iff x > 1 + regime_tol.
    """
    if x < 0.0:
        raise ValueError("dressing strength x must be nonnegative")
    if abs(x - 1.0) <= regime_tol:
        return Regime.CRITICAL
    if x > 1.0:
        return Regime.GHOST
    return Regime.NORMAL


def critical_coupling(params: ModelParams, m_v: float, spec: QuadSpec) -> float:
    """Renormalized coupling at which x = 1 and both Z presentations vanish."""
    ensure_stable(params, m_v)
    integral = z_factor_integral(m_v, params, spec)
    if integral <= 0.0:
        raise DegenerateModel(
            "the form factor vanishes on the whole momentum range; "
            "every coupling is trivially sub-critical"
        )
    return math.sqrt(TWO_PI_CUBED / integral)


def bare_from_renormalized(params: ModelParams, ren: RenCoupling,
                           spec: QuadSpec) -> BareCoupling:
    """Invert the renormalization maps: (m_V, g) -> (m_V0, g0).

    Only possible in the normal regime: g0^2 = g^2 / (1 - x) needs x < 1.
    For x >= 1 no real bare coupling exists (the computational face of the
    ghost), and a GhostRegime error carrying the diagnostic report
    (z_standard < 0, z_regularized = 0) is raised.
    """
    ensure_stable(params, ren.m_v)
    x = dressing_strength(params, ren.g, ren.m_v, spec)
    if x >= 1.0:
        report = RenormReport(
            m_v=ren.m_v, m_v0=None, delta_m=None, g0_sq=None,
            g_sq=ren.g * ren.g, x=x, z_standard=standard_z(x),
            z_regularized=regularized_z(x), regime=classify_regime(x),
        )
        raise GhostRegime(
            f"x = {x:.6g} >= 1: no real bare coupling reproduces this "
            f"renormalized point", report,
        )
    z = 1.0 - x
    g0 = ren.g / math.sqrt(z)
    m_v0 = ren.m_v - mass_shift(params, g0, ren.m_v, spec)
    return BareCoupling(m_v0=m_v0, g0=g0)


def full_report(params: ModelParams, coupling: "BareCoupling | RenCoupling",
                spec: QuadSpec, root_tol: float = 1e-12,
                regime_tol: float = 1e-12) -> RenormReport:
    """Evaluate the whole renormalization chain at one parameter point.

    From a bare input the physical mass is solved first, then Z_V, then the
    renormalized coupling g^2 = Z_V g0^2 and the strength x; bare inputs always
    land in the normal regime.  From a renormalized input the strength decides
    the regime; outside the Normal regime the bare-side fields are absent
    (None) rather than an error, so ghost points remain reportable.
    """
    if isinstance(coupling, BareCoupling):
        m_v = solve_physical_mass(params, coupling, spec, root_tol)
        if m_v is None:
            raise NoBoundState(
                f"no V eigenvalue below the threshold {params.threshold!r} for "
                f"m_V0 = {coupling.m_v0!r}, g0 = {coupling.g0!r}"
            )
        z = z_from_bare(params, coupling.g0, m_v, spec)
        g_sq = z * coupling.g0 * coupling.g0
        x = dressing_strength(params, math.sqrt(g_sq), m_v, spec)
        return RenormReport(
            m_v=m_v, m_v0=coupling.m_v0, delta_m=m_v - coupling.m_v0,
            g0_sq=coupling.g0 * coupling.g0, g_sq=g_sq, x=x,
            z_standard=z, z_regularized=max(z, 0.0),
            regime=classify_regime(x, regime_tol),
        )

    if isinstance(coupling, RenCoupling):
        ensure_stable(params, coupling.m_v)
        x = dressing_strength(params, coupling.g, coupling.m_v, spec)
        z_std = standard_z(x)
        regime = classify_regime(x, regime_tol)
        if regime is Regime.NORMAL:
            g0_sq = coupling.g * coupling.g / z_std
            m_v0 = coupling.m_v - mass_shift(params, math.sqrt(g0_sq),
                                             coupling.m_v, spec)
            delta_m = coupling.m_v - m_v0
        else:
            g0_sq = m_v0 = delta_m = None
        return RenormReport(
            m_v=coupling.m_v, m_v0=m_v0, delta_m=delta_m, g0_sq=g0_sq,
            g_sq=coupling.g * coupling.g, x=x, z_standard=z_std,
            z_regularized=regularized_z(x), regime=regime,
        )

    raise TypeError(f"expected BareCoupling or RenCoupling, got {type(coupling).__name__}")
