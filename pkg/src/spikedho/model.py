"""Problem definition for the generalized spiked harmonic oscillator

    H = -d^2/dx^2 + x^2 + A/x^2 + lam / x^alpha   on (0, inf),

with the exactly solvable unperturbed part H0 = -d^2/dx^2 + x^2 + A/x^2.
The unperturbed eigenfunctions psi_n and energies 4n + 2*gamma, with
gamma = 1 + sqrt(1+4A)/2, form the working basis; this module supplies the
basis, the perturbation matrix elements V_nm = (psi_n, x^-alpha psi_m)
(general hypergeometric form and the closed forms for alpha in {2,4,6}),
the first-order wavefunction correction phi1, and the quadrature scheme
used for inner products on the half-line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .specfun import (DomainError, digamma, ln_gamma, ln_pochhammer,
                      trigamma)

CLOSED_FORM_ALPHAS = (2, 4, 6)


@dataclass(frozen=True)
class OscillatorParams:
    """A physical problem instance.  gamma is derived from A; use
    make_params so the two can never disagree."""

    A: float
    alpha: float
    lam: float
    gamma: float


def gamma_from_A(A: float) -> float:
    return 1.0 + 0.5 * math.sqrt(1.0 + 4.0 * A)


def make_params(A: float, alpha: float, lam: float) -> OscillatorParams:
    if A < 0.0:
        raise DomainError("constraint A >= 0 violated: A = %g" % A)
    if alpha <= 0.0:
        raise DomainError("constraint alpha > 0 violated: alpha = %g" % alpha)
    if lam < 0.0:
        raise DomainError("constraint lambda >= 0 violated: lambda = %g" % lam)
    g = gamma_from_A(A)
    if 2.0 * g <= alpha:
        raise DomainError(
            "constraint 2*gamma > alpha violated: 2*%g <= %g" % (g, alpha))
    return OscillatorParams(A=float(A), alpha=float(alpha), lam=float(lam),
                            gamma=g)


def effective_A(A: float, l: int, n_dim: int) -> float:
    """Coupling that maps the N-dimensional radial problem with angular
    momentum l onto the one-dimensional form:
    A + (l + (N-1)/2)(l + (N-3)/2)."""
    if n_dim < 1:
        raise DomainError("n_dim must be >= 1")
    return A + (l + (n_dim - 1) / 2.0) * (l + (n_dim - 3) / 2.0)


def basis_energy(n: int, gamma: float) -> float:
    return 4.0 * n + 2.0 * gamma


def basis_eval(n: int, gamma: float, x):
    """Unperturbed eigenfunction psi_n at x > 0 (vectorized in x).

    psi_n(x) = (-1)^n sqrt(2 (gamma)_n / (n! Gamma(gamma)))
               x^(gamma-1/2) exp(-x^2/2) 1F1(-n; gamma; x^2),
    evaluated through the generalized Laguerre three-term recurrence to
    keep large n stable.
    """
    x = np.asarray(x, dtype=float)
    z = x * x
    a = gamma - 1.0
    lk = np.zeros_like(z)
    lk1 = np.ones_like(z)          # L_0
    if n >= 1:
        lk, lk1 = lk1, 1.0 + a - z  # L_1
    for k in range(1, n):
        lk, lk1 = lk1, ((2.0 * k + 1.0 + a - z) * lk1 - (k + a) * lk) / (k + 1.0)
    # 1F1(-n;gamma;z) = n!/(gamma)_n L_n^(gamma-1)(z); fold the conversion
    # into the normalization: coefficient sqrt(2 n! / ((gamma)_n Gamma(gamma)))
    ln_coef = 0.5 * (math.log(2.0) + ln_gamma(n + 1.0) - ln_gamma(gamma + n))
    sign = -1.0 if n % 2 else 1.0
    out = sign * np.exp(ln_coef + (gamma - 0.5) * np.log(x) - 0.5 * z) * lk1
    return out if out.ndim else float(out)


def matrix_element_general(i: int, j: int, alpha: float, gamma: float) -> float:
    """V_ij = (psi_i, x^-alpha psi_j) in hypergeometric form, valid for any
    alpha with 2*gamma > alpha.

    The printed form carries a terminating 3F2 whose first parameter is the
    negative of the smaller index, so the arguments are swapped first;
    symmetry in (i, j) then holds by construction.
    """
    if 2.0 * gamma <= alpha:
        raise DomainError("matrix elements need 2*gamma > alpha")
    if j > i:
        i, j = j, i
    h = alpha / 2.0
    ln_pref = (ln_pochhammer(h, i) + ln_gamma(gamma - h) - ln_gamma(gamma)
               - ln_pochhammer(gamma, i)
               + 0.5 * (ln_pochhammer(gamma, i) + ln_pochhammer(gamma, j)
                        - ln_gamma(i + 1.0) - ln_gamma(j + 1.0)))
    sign = -1.0 if (i + j) % 2 else 1.0
    # terminating 3F2(-j, gamma-h, 1-h; gamma, 1-i-h; 1)
    t = 1.0
    total = 1.0
    for k in range(j):
        t *= ((-j + k) * (gamma - h + k) * (1.0 - h + k)
              / ((gamma + k) * (1.0 - i - h + k) * (k + 1.0)))
        total += t
    return sign * math.exp(ln_pref) * total


def _closed_gamma_check(alpha: int, gamma: float):
    limits = {2: 1.0, 4: 2.0, 6: 3.0}
    if alpha not in limits:
        raise DomainError("closed matrix elements exist for alpha in (2, 4, 6)")
    if gamma <= limits[alpha]:
        raise DomainError(
            "closed matrix elements for alpha=%d need gamma > %g" % (alpha, limits[alpha]))


def matrix_element_closed(n: int, m: int, alpha: int, gamma: float) -> float:
    """Closed-form V_nm for alpha in {2, 4, 6} (branch-symmetric)."""
    _closed_gamma_check(alpha, gamma)
    if n > m:
        n, m = m, n
    g = gamma
    half = math.exp(0.5 * (ln_gamma(m + 1.0) + ln_gamma(g + n)
                           - ln_gamma(n + 1.0) - ln_gamma(g + m)))
    sign = -1.0 if (n + m) % 2 else 1.0
    if alpha == 2:
        return sign * math.exp(ln_gamma(g - 1.0) - ln_gamma(g)) * half
    if alpha == 4:
        return (sign * math.exp(ln_gamma(g - 2.0) - ln_gamma(g + 1.0)) * half
                * (g * (m - n + 1.0) + 2.0 * n))
    bracket = ((2.0 + m) * (1.0 + m) * g * (g + 1.0)
               - 2.0 * n * (1.0 + m) * (g - 3.0) * (g + 1.0)
               - n * (1.0 - n) * (g - 2.0) * (g - 3.0))
    return (sign * math.exp(ln_gamma(g - 3.0) - ln_gamma(g + 2.0)) * half
            * bracket / 2.0)


@dataclass(frozen=True)
class MatrixElementTable:
    """Symmetric table of V_nm values for one (alpha, gamma)."""

    size: int
    alpha: float
    gamma: float
    values: np.ndarray


def matrix_element_table(alpha: float, gamma: float, size: int) -> MatrixElementTable:
    """Build the symmetric N x N table, vectorized for the closed-form
    alphas, elementwise hypergeometric otherwise."""
    if size < 1:
        raise DomainError("table size must be >= 1")
    g = gamma
    if alpha in CLOSED_FORM_ALPHAS:
        _closed_gamma_check(int(alpha), gamma)
        idx = np.arange(size, dtype=float)
        ii, jj = np.meshgrid(idx, idx, indexing="ij")
        lo, hi = np.minimum(ii, jj), np.maximum(ii, jj)
        half = np.exp(0.5 * (ln_gamma(hi + 1.0) + ln_gamma(g + lo)
                             - ln_gamma(lo + 1.0) - ln_gamma(g + hi)))
        sign = np.where((ii + jj) % 2 == 0, 1.0, -1.0)
        if alpha == 2:
            vals = math.exp(ln_gamma(g - 1.0) - ln_gamma(g)) * sign * half
        elif alpha == 4:
            vals = (math.exp(ln_gamma(g - 2.0) - ln_gamma(g + 1.0)) * sign * half
                    * (g * (hi - lo + 1.0) + 2.0 * lo))
        else:
            bracket = ((2.0 + hi) * (1.0 + hi) * g * (g + 1.0)
                       - 2.0 * lo * (1.0 + hi) * (g - 3.0) * (g + 1.0)
                       - lo * (1.0 - lo) * (g - 2.0) * (g - 3.0))
            vals = (math.exp(ln_gamma(g - 3.0) - ln_gamma(g + 2.0)) * sign * half
                    * bracket / 2.0)
    else:
        vals = np.empty((size, size))
        for i in range(size):
            for j in range(i + 1):
                vals[i, j] = vals[j, i] = matrix_element_general(i, j, alpha, g)
    return MatrixElementTable(size=size, alpha=float(alpha), gamma=g, values=vals)


# ---------------------------------------------------------------------------
# First-order wavefunction correction phi1 for alpha in {2, 4, 6}.
#
# All three closed forms share the structure
#     phi1(x) = C x^(gamma-1/2) exp(-x^2/2) *
#               sum_k (p_k + q_k * log x^2) x^(-2k),
# with C = Gamma(gamma - alpha/2) / (2 sqrt(2) Gamma(gamma) sqrt(Gamma(gamma))).
# ---------------------------------------------------------------------------

_PHI1_GAMMA_MIN = {2: 1.0, 4: 2.0, 6: 3.0}


def phi1_structure(alpha: int, gamma: float):
    """Prefactor C and list of (p_k, q_k) coefficients of x^(-2k) terms."""
    if alpha not in _PHI1_GAMMA_MIN:
        raise DomainError("phi1 closed forms exist for alpha in (2, 4, 6)")
    if gamma <= _PHI1_GAMMA_MIN[alpha]:
        raise DomainError("phi1 for alpha=%d needs gamma > %g"
                          % (alpha, _PHI1_GAMMA_MIN[alpha]))
    g = gamma
    C = math.exp(ln_gamma(g - alpha / 2.0) - ln_gamma(g)
                 - 0.5 * ln_gamma(g)) / (2.0 * math.sqrt(2.0))
    psg = digamma(g)
    if alpha == 2:
        coeffs = [(-psg, 1.0)]
    elif alpha == 4:
        coeffs = [(1.0 - psg, 1.0), (-(g - 1.0), 0.0)]
    else:
        coeffs = [(1.5 - psg, 1.0), (-(g - 1.0), 0.0),
                  (-(g - 1.0) * (g - 2.0) / 2.0, 0.0)]
    return C, coeffs


def phi1_eval(x, alpha: int, gamma: float):
    """First-order wavefunction correction (vectorized in x > 0)."""
    C, coeffs = phi1_structure(alpha, gamma)
    x = np.asarray(x, dtype=float)
    z = x * x
    L = np.log(z)
    acc = np.zeros_like(z)
    for k, (p, q) in enumerate(coeffs):
        acc = acc + (p + q * L) * z ** (-float(k))
    out = C * np.exp((gamma - 0.5) * np.log(x) - 0.5 * z) * acc
    return out if out.ndim else float(out)


# Gamma-type moments with analytic continuation in s:
#   int_0^inf x^(2s-1) e^(-x^2) dx            = Gamma(s)/2
#   int_0^inf x^(2s-1) e^(-x^2) log(x^2) dx   = Gamma(s) psi(s) / 2
#   int_0^inf x^(2s-1) e^(-x^2) log^2(x^2) dx = Gamma(s)(psi(s)^2+psi'(s))/2
# continued to negative non-integer s via the reflection formulas.

_POLE_TOL = 1e-9


def _gamma_any(s: float) -> float:
    if s > 0.0:
        return math.exp(ln_gamma(s))
    if abs(s - round(s)) < _POLE_TOL:
        raise DomainError("gamma pole at s = %g" % s)
    return math.pi / (math.sin(math.pi * s) * math.exp(ln_gamma(1.0 - s)))


def _digamma_any(s: float) -> float:
    if s > 0.0:
        return digamma(s)
    if abs(s - round(s)) < _POLE_TOL:
        raise DomainError("digamma pole at s = %g" % s)
    return digamma(1.0 - s) - math.pi / math.tan(math.pi * s)


def _trigamma_any(s: float) -> float:
    if s > 0.0:
        return trigamma(s)
    if abs(s - round(s)) < _POLE_TOL:
        raise DomainError("trigamma pole at s = %g" % s)
    return -trigamma(1.0 - s) + (math.pi / math.sin(math.pi * s)) ** 2


def _j0(s):
    return 0.5 * _gamma_any(s)


def _j1(s):
    return 0.5 * _gamma_any(s) * _digamma_any(s)


def _j2(s):
    ps = _digamma_any(s)
    return 0.5 * _gamma_any(s) * (ps * ps + _trigamma_any(s))


def phi1_weighted_overlap(alpha: int, gamma: float, beta: float) -> float:
    """(phi1, x^(-beta) phi1), evaluated termwise through the gamma-type
    moments above.

    For beta large enough the defining integral diverges at the origin;
    the termwise gamma-function values provide its analytic continuation
    in gamma, which is the quantity entering the residual bound.  Poles at
    nonpositive-integer gamma arguments raise a domain error.
    """
    C, coeffs = phi1_structure(alpha, gamma)
    s0 = gamma - beta / 2.0
    total = 0.0
    for k, (p, q) in enumerate(coeffs):
        for kp, (pp, qp) in enumerate(coeffs):
            s = s0 - k - kp
            total += (p * pp * _j0(s) + (p * qp + q * pp) * _j1(s)
                      + q * qp * _j2(s))
    return C * C * total


# ---------------------------------------------------------------------------
# Quadrature on (0, inf): composite Gauss-Legendre panels in log x, sized
# so both the x^(2 gamma - 1 - alpha) small-x behavior (with log factors)
# and the Gaussian decay are resolved.
# ---------------------------------------------------------------------------

def _leggauss_cached(order, _cache={}):
    if order not in _cache:
        _cache[order] = np.polynomial.legendre.leggauss(order)
    return _cache[order]


def half_line_nodes(x_min: float = 1e-20, x_max: float = 35.0,
                    panel_width: float = 0.25, order: int = 16):
    """Nodes and weights for int_0^inf f(x) dx (integrand assumed to decay
    inside [x_min, x_max]); log-substitution x = e^t."""
    t_lo, t_hi = math.log(x_min), math.log(x_max)
    npan = int(math.ceil((t_hi - t_lo) / panel_width))
    xg, wg = _leggauss_cached(order)
    edges = np.linspace(t_lo, t_hi, npan + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    hw = 0.5 * (edges[1:] - edges[:-1])
    t = (mid[:, None] + hw[:, None] * xg[None, :]).ravel()
    w = (hw[:, None] * wg[None, :]).ravel()
    x = np.exp(t)
    return x, w * x  # dx = x dt


def integrate_half_line(f, x_min: float = 1e-20, x_max: float = 35.0,
                        panel_width: float = 0.25, order: int = 16) -> float:
    """Integrate a vectorized integrand over (0, inf)."""
    x, w = half_line_nodes(x_min, x_max, panel_width, order)
    return float(np.dot(w, f(x)))


def integrate_checked(f, rel_tol: float = 1e-10, **kw) -> float:
    """Integrate and verify by node doubling; raises ConvergenceError when
    the two refinements disagree beyond rel_tol."""
    from .specfun import ConvergenceError
    order = kw.pop("order", 16)
    v1 = integrate_half_line(f, order=order, **kw)
    v2 = integrate_half_line(f, order=2 * order, **kw)
    scale = max(abs(v2), 1e-300)
    if abs(v1 - v2) > rel_tol * scale:
        raise ConvergenceError(
            "quadrature did not converge: %.3e vs %.3e" % (v1, v2))
    return v2
