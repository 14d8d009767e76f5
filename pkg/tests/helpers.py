"""Shared fixtures: reference models, frozen golden values, brute-force oracles.

The golden constants below are for the reference sharp model
(mu = 1, m_N = 1, Lambda = 10) and were frozen from a 50-digit
arbitrary-precision evaluation of the defining integrals, independent of the
package's own quadrature.  I1/I2 denote the radial integrals of
f^2/(2 omega) (m - m_N - omega)^(-1) and its squared-denominator partner.
"""

import math

import numpy as np

from leemodel import BareCoupling, FormFactor, ModelParams, QuadSpec

MU = 1.0
M_N = 1.0
LAMBDA = 10.0
SHARP_K_CUT = math.sqrt(LAMBDA ** 2 - MU ** 2)

# vertex weight at omega = 2 for g0 = 1, below a sharp cutoff: 1/(2 (2 pi)^{3/2})
VERTEX_AT_W2 = 0.031746817967120484893

# cloud amplitude at k = 1 for m_V = 1.5, g0 = 1, sharp Lambda = 10
PHI_AT_K1 = -0.041296195286357495439

# Int d^3k f^2/(2 omega), sharp Lambda = 10  (= pi (K Lambda - asinh K))
RADIAL_F2_OVER_2W = 303.18103537888159869

# I1 and I2 at m = 1.5
I1_AT_15 = -61.00820154574959768
I2_AT_15 = 19.501040232836567381

# (g0^2/(2 pi)^3) I1(1.5) for g0 = 1
MASS_SHIFT_G1 = -0.24595101410753968134

# 1 / (1 + I2(1.5)/(2 pi)^3)  and  I2(1.5)/(2 pi)^3
Z_BARE_G1 = 0.92711288037353865888
X_AT_G1 = 0.078617308819067142093

# critical renormalized coupling at m_V = 1.5
G_CRIT_15 = 3.566489201252739713

# root of m = 1.8 + I1(m)/(2 pi)^3 (bare point m_V0 = 1.8, g0 = 1)
M_V_FROM_MV0_18 = 1.5499962074442519557

# bare image of the renormalized point (m_V = 1.5, g = g_crit/2), i.e. x = 1/4
BFR_G0 = 2.0591135004051626517
BFR_M_V0 = 2.5428196106007676529

# bare pair whose physical point is exactly (m_V = 1.5, Z_V = 0.7)
ACC_G0 = 2.3348152471404674888
ACC_M_V0 = 2.8407680707724155538


def sharp_model(lam: float = LAMBDA) -> ModelParams:
    return ModelParams(m_n=M_N, mu=MU, form_factor=FormFactor.sharp(lam))


def exponential_model(lam: float = LAMBDA) -> ModelParams:
    return ModelParams(m_n=M_N, mu=MU, form_factor=FormFactor.exponential(lam))


def dipole_model(lam: float = LAMBDA) -> ModelParams:
    return ModelParams(m_n=M_N, mu=MU, form_factor=FormFactor.dipole(lam))


ALL_MODELS = (sharp_model, exponential_model, dipole_model)

SPEC = QuadSpec()  # k_max = 400 = 40 * Lambda covers every default model

ACC_BARE = BareCoupling(m_v0=ACC_M_V0, g0=ACC_G0)


def riemann_radial(f, k_hi: float, mu: float = MU, n: int = 10_000_000,
                   chunks: int = 25) -> float:
    """Brute-force midpoint Riemann sum of 4 pi Int_0^k_hi k^2 f(omega(k)) dk.

    Deliberately naive (uniform nodes, plain summation) so that it shares no
    machinery with the package quadrature it cross-checks.
    """
    dk = k_hi / n
    total = 0.0
    bounds = np.linspace(0, n, chunks + 1).astype(int)
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        k = (np.arange(lo, hi) + 0.5) * dk
        om = np.sqrt(k * k + mu * mu)
        vals = np.asarray(f(om), dtype=float)
        if vals.shape != k.shape:
            vals = np.broadcast_to(vals, k.shape)
        total += float(np.sum(k * k * vals))
    return 4.0 * math.pi * total * dk


def random_arrowhead(seed: int, n_max: int = 32):
    """Deterministic random arrowhead with distinct diagonal and nonzero couplings."""
    from leemodel import ArrowheadMatrix

    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, n_max + 1))
    diag = np.sort(rng.uniform(0.0, 10.0, n))
    assert np.all(np.diff(diag) > 1e-9), "degenerate diagonal draw"
    coupling = rng.uniform(0.1, 1.0, n)
    apex = float(rng.uniform(-5.0, 15.0))
    return ArrowheadMatrix(apex=apex, diag=diag, coupling=coupling)
