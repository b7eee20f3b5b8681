"""Hot numeric kernels, pure-Python/NumPy edition.

This module is the fallback twin of the compiled extension
``sphfun._kernels``.  Both expose the same names with the same semantics;
``sphfun._backend`` picks whichever is importable.  Everything here is a
pure function of its arguments.

The gamma kernels use a 15-term Lanczos rational approximation
(g = 607/128) with reflection into the left half plane, good to roughly
1e-14 relative accuracy away from the poles.
"""

import cmath
import math

import numpy as np

BACKEND_NAME = "python"

_LANCZOS_G = 4.7421875  # 607/128
_LANCZOS = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
_LOG_SQRT_2PI = 0.9189385332046727417803297364
_LOG_PI = 1.1447298858494001741434273513


def _lanczos_sum(z: complex) -> complex:
    # series for Gamma(z), valid for Re z >= 0.5
    s = _LANCZOS[0] + 0j
    for k in range(1, 15):
        s += _LANCZOS[k] / (z - 1.0 + k)
    return s


def _log_sin(w: complex) -> complex:
    # log sin w, stable for large |Im w| where sin overflows
    if abs(w.imag) < 34.0:
        return cmath.log(cmath.sin(w))
    if w.imag > 0.0:
        # sin w = -e^{-iw}/(2i) (1 - e^{2iw})
        return (-1j * w + complex(-math.log(2.0), 0.5 * math.pi)
                + cmath.log(1.0 - cmath.exp(2j * w)))
    return (1j * w + complex(-math.log(2.0), -0.5 * math.pi)
            + cmath.log(1.0 - cmath.exp(-2j * w)))


def cgamma(z: complex) -> complex:
    """Gamma(z) for complex z (poles not screened here)."""
    z = complex(z)
    if z.real < 0.5:
        return math.pi / (cmath.sin(math.pi * z) * cgamma(1.0 - z))
    t = z + (_LANCZOS_G - 0.5)
    return (math.sqrt(2.0 * math.pi) * t ** (z - 0.5) * cmath.exp(-t)
            * _lanczos_sum(z))


def clgamma(z: complex) -> complex:
    """A branch of log Gamma(z); exp(clgamma(z)) == cgamma(z)."""
    z = complex(z)
    if z.real < 0.5:
        return _LOG_PI - _log_sin(math.pi * z) - clgamma(1.0 - z)
    t = z + (_LANCZOS_G - 0.5)
    return (_LOG_SQRT_2PI + (z - 0.5) * cmath.log(t) - t
            + cmath.log(_lanczos_sum(z)))


def hyp2f1_series(a: complex, b: complex, c: complex, z: complex,
                  tol: float, max_terms: int) -> tuple[complex, int]:
    """Raw Gauss series sum_{n} (a)_n (b)_n / ((c)_n n!) z^n.

    Returns (value, terms_used); terms_used == -1 signals that the
    tolerance was not met within max_terms.
    """
    a = complex(a)
    b = complex(b)
    c = complex(c)
    z = complex(z)
    term = 1.0 + 0j
    total = 1.0 + 0j
    small_streak = 0
    for n in range(max_terms):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z
        total += term
        if abs(term) <= tol * max(abs(total), 1e-300):
            small_streak += 1
            if small_streak >= 2:
                return total, n + 1
        else:
            small_streak = 0
    return total, -1


def hc_gamma_coeffs(m_alpha: int, m_2alpha: int, lam: complex,
                    n_max: int) -> np.ndarray:
    """Coefficients of the radial eigenfunction expansion in e^{-n t}.

    Recursion obtained by substituting e^{(i lam - rho) t} sum g_n e^{-n t}
    into u'' + (m coth t + 2 m2 coth 2t) u' = -(lam^2 + rho^2) u and
    matching coefficients; g_0 = 1 and odd coefficients vanish.
    Resonant denominators (n == 2 i lam) must be excluded by the caller.
    """
    lam = complex(lam)
    rho = 0.5 * m_alpha + m_2alpha
    ilam = 1j * lam
    g = np.zeros(n_max + 1, dtype=np.complex128)
    g[0] = 1.0
    for n in range(2, n_max + 1, 2):
        acc = 0.0 + 0j
        k = 2
        while k <= n:
            acc += 2.0 * m_alpha * g[n - k] * (ilam - rho - (n - k))
            k += 2
        k = 4
        while k <= n:
            acc += 4.0 * m_2alpha * g[n - k] * (ilam - rho - (n - k))
            k += 4
        g[n] = -acc / (n * (n - 2.0 * ilam))
    return g


def poisson_circle_sum(u: float, mu: complex, harmonic: int,
                       nphi: int) -> complex:
    """Mean over the uniform nphi-point grid on [0, 2pi) of
    P(u, psi)^mu e^{i harmonic psi} with P = (1-u^2)/(1-2u cos psi+u^2)."""
    mu = complex(mu)
    psi = np.arange(nphi) * (2.0 * math.pi / nphi)
    pk = (1.0 - u * u) / (1.0 - 2.0 * u * np.cos(psi) + u * u)
    vals = np.exp(mu * np.log(pk))
    if harmonic:
        vals = vals * np.exp(1j * harmonic * psi)
    return complex(vals.mean())


def poisson_polar_sum(theta: np.ndarray, weights: np.ndarray, u: float,
                      mu: complex, sin_power: int) -> complex:
    """sum_j w_j sin^p(theta_j) P(u, theta_j)^mu for the polar slice of the
    sphere integral."""
    mu = complex(mu)
    pk = (1.0 - u * u) / (1.0 - 2.0 * u * np.cos(theta) + u * u)
    vals = np.exp(mu * np.log(pk))
    if sin_power:
        vals = vals * np.sin(theta) ** sin_power
    return complex(np.sum(weights * vals))
