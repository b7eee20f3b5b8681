# cython: language_level=3
"""Hot numeric kernels, compiled edition.

Twin of ``sphfun._kernels_py`` — same names, same semantics, typed loops.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport atan2, cos, exp, fabs, hypot, log, M_PI, sin, sqrt

cnp.import_array()

BACKEND_NAME = "cython"

cdef double _LANCZOS_G = 4.7421875  # 607/128
cdef double[15] _LANCZOS
_LANCZOS[0] = 0.99999999999999709182
_LANCZOS[1] = 57.156235665862923517
_LANCZOS[2] = -59.597960355475491248
_LANCZOS[3] = 14.136097974741747174
_LANCZOS[4] = -0.49191381609762019978
_LANCZOS[5] = 0.33994649984811888699e-4
_LANCZOS[6] = 0.46523628927048575665e-4
_LANCZOS[7] = -0.98374475304879564677e-4
_LANCZOS[8] = 0.15808870322491248884e-3
_LANCZOS[9] = -0.21026444172410488319e-3
_LANCZOS[10] = 0.21743961811521264320e-3
_LANCZOS[11] = -0.16431810653676389022e-3
_LANCZOS[12] = 0.84418223983852743293e-4
_LANCZOS[13] = -0.26190838401581408670e-4
_LANCZOS[14] = 0.36899182659531622704e-5

cdef double _LOG_SQRT_2PI = 0.9189385332046727417803297364
cdef double _LOG_PI = 1.1447298858494001741434273513


cdef inline double complex _cexp(double complex z) noexcept:
    cdef double m = exp(z.real)
    return m * cos(z.imag) + 1j * (m * sin(z.imag))


cdef inline double complex _clog(double complex z) noexcept:
    return log(hypot(z.real, z.imag)) + 1j * atan2(z.imag, z.real)


cdef inline double complex _csin(double complex z) noexcept:
    cdef double ep = exp(z.imag), em = exp(-z.imag)
    return sin(z.real) * 0.5 * (ep + em) + 1j * (cos(z.real) * 0.5 * (ep - em))


cdef inline double complex _cpow(double complex base, double complex p) noexcept:
    return _cexp(p * _clog(base))


cdef double complex _lanczos_sum(double complex z) noexcept:
    cdef double complex s = _LANCZOS[0]
    cdef int k
    for k in range(1, 15):
        s = s + _LANCZOS[k] / (z - 1.0 + k)
    return s


cdef double complex _cgamma(double complex z) noexcept:
    cdef double complex t
    if z.real < 0.5:
        return M_PI / (_csin(M_PI * z) * _cgamma(1.0 - z))
    t = z + (_LANCZOS_G - 0.5)
    return sqrt(2.0 * M_PI) * _cpow(t, z - 0.5) * _cexp(-t) * _lanczos_sum(z)


cdef double complex _log_sin(double complex w) noexcept:
    if fabs(w.imag) < 34.0:
        return _clog(_csin(w))
    if w.imag > 0.0:
        return (-1j * w + (-log(2.0) + 1j * (0.5 * M_PI))
                + _clog(1.0 - _cexp(2j * w)))
    return (1j * w + (-log(2.0) - 1j * (0.5 * M_PI))
            + _clog(1.0 - _cexp(-2j * w)))


cdef double complex _clgamma(double complex z) noexcept:
    cdef double complex t
    if z.real < 0.5:
        return _LOG_PI - _log_sin(M_PI * z) - _clgamma(1.0 - z)
    t = z + (_LANCZOS_G - 0.5)
    return (_LOG_SQRT_2PI + (z - 0.5) * _clog(t) - t
            + _clog(_lanczos_sum(z)))


def cgamma(z):
    """Gamma(z) for complex z (poles not screened here)."""
    return _cgamma(complex(z))


def clgamma(z):
    """A branch of log Gamma(z); exp(clgamma(z)) == cgamma(z)."""
    return _clgamma(complex(z))


def hyp2f1_series(a, b, c, z, double tol, int max_terms):
    """Raw Gauss series; returns (value, terms_used), -1 on non-convergence."""
    cdef double complex ca = complex(a), cb = complex(b)
    cdef double complex cc = complex(c), cz = complex(z)
    cdef double complex term = 1.0, total = 1.0
    cdef int n, streak = 0
    cdef double mag
    for n in range(max_terms):
        term = term * (ca + n) * (cb + n) / ((cc + n) * (n + 1.0)) * cz
        total = total + term
        mag = hypot(total.real, total.imag)
        if mag < 1e-300:
            mag = 1e-300
        if hypot(term.real, term.imag) <= tol * mag:
            streak += 1
            if streak >= 2:
                return total, n + 1
        else:
            streak = 0
    return total, -1


def hc_gamma_coeffs(int m_alpha, int m_2alpha, lam, int n_max):
    """Radial-expansion coefficients; see the pure-Python twin."""
    cdef double complex clam = complex(lam)
    cdef double rho = 0.5 * m_alpha + m_2alpha
    cdef double complex ilam = 1j * clam
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] g = np.zeros(
        n_max + 1, dtype=np.complex128)
    cdef int n, k
    cdef double complex acc
    g[0] = 1.0
    for n in range(2, n_max + 1, 2):
        acc = 0.0
        k = 2
        while k <= n:
            acc = acc + 2.0 * m_alpha * g[n - k] * (ilam - rho - (n - k))
            k += 2
        k = 4
        while k <= n:
            acc = acc + 4.0 * m_2alpha * g[n - k] * (ilam - rho - (n - k))
            k += 4
        g[n] = -acc / (n * (n - 2.0 * ilam))
    return g


def poisson_circle_sum(double u, mu, int harmonic, int nphi):
    """Mean of P(u,psi)^mu e^{i harmonic psi} over the uniform grid."""
    cdef double complex cmu = complex(mu)
    cdef double mre = cmu.real, mim = cmu.imag
    cdef double acc_re = 0.0, acc_im = 0.0
    cdef double psi, logpk, mag, phase, h = 2.0 * M_PI / nphi
    cdef int j
    for j in range(nphi):
        psi = j * h
        logpk = log((1.0 - u * u)
                    / (1.0 - 2.0 * u * cos(psi) + u * u))
        mag = exp(mre * logpk)
        phase = mim * logpk + harmonic * psi
        acc_re += mag * cos(phase)
        acc_im += mag * sin(phase)
    return complex(acc_re / nphi, acc_im / nphi)


def poisson_polar_sum(cnp.ndarray[cnp.float64_t, ndim=1] theta,
                      cnp.ndarray[cnp.float64_t, ndim=1] weights,
                      double u, mu, int sin_power):
    """sum_j w_j sin^p(theta_j) P(u, theta_j)^mu."""
    cdef double complex cmu = complex(mu)
    cdef double mre = cmu.real, mim = cmu.imag
    cdef double acc_re = 0.0, acc_im = 0.0
    cdef double logpk, mag, phase, sp, st
    cdef Py_ssize_t j, n = theta.shape[0]
    cdef int p
    for j in range(n):
        logpk = log((1.0 - u * u)
                    / (1.0 - 2.0 * u * cos(theta[j]) + u * u))
        mag = exp(mre * logpk) * weights[j]
        if sin_power:
            st = sin(theta[j])
            sp = 1.0
            for p in range(sin_power):
                sp *= st
            mag *= sp
        phase = mim * logpk
        acc_re += mag * cos(phase)
        acc_im += mag * sin(phase)
    return complex(acc_re, acc_im)
