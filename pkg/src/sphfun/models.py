"""Concrete realizations and quadrature oracles.

Two models are implemented in full:

* the unimodular 2x2 matrix group acting on the hyperbolic plane, with
  the explicit K A N factorization (K rotations, A positive diagonal with
  a_t = diag(e^{t/2}, e^{-t/2}) so that alpha(H) = 1 and rho(H) = 1/2,
  N upper unipotent);
* the ball model of n-dimensional hyperbolic space, whose horocycle
  bracket is the logarithm of the Poisson kernel
  A(x, b)(H) = log[(1 - |x|^2) / |x - b|^2].

Every defining integral of the theory is realized as a deterministic
quadrature: the boundary integral for the zonal spherical function, the
integral of e^{-(i lam + rho) H} over the opposite unipotent group for
the c-function (self-normalized so the value at lam = -i rho is exactly
1), the Eisenstein integral for circle characters, the second-coefficient
integral with the Weyl representative m* = k_{pi/2} (any representative
of the nontrivial coset gives the same value on even characters), and the
functional-equation double integrals.

Conventions pinned by cross-checks: the geodesic point at distance t in
the ball sits at Euclidean radius tanh(t/2); the boundary image of the
rotation k_theta is e^{2 i theta}; the opposite-unipotent coordinate is
normalized so that e^{alpha(H(nbar(v)))} = 1 + |v|^2/4, which matches the
matrix-model Iwasawa projection at n = 2 under v = 2x.
"""

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._backend import kernels
from .quadrature import (DEFAULT_SPEC, QuadratureSpec,
                         gauss_legendre_adaptive, halfline_integral,
                         trapezoid_doubling)

__all__ = [
    "Matrix2", "BallPoint", "BoundaryPoint", "QuadratureSpec",
    "OracleReport", "DEFAULT_SPEC", "iwasawa_H", "iwasawa_decompose",
    "horocycle_bracket", "quad_phi_K", "quad_c_Nbar",
    "quad_eisenstein_sl2", "quad_Csigma_sl2", "functional_equation_check",
    "functional_equation_entry_sl2", "a_t_matrix", "k_theta_matrix",
    "nbar_matrix", "n_matrix", "sl2_to_ball", "boundary_circle_point",
    "entry_function_sl2", "nbar_normalization",
]

_DET_TOL = 1e-12
CONVERGENCE_MARGIN = 0.05


class DivergentIntegralError(ValueError):
    """Spectral parameter outside the absolute-convergence region."""


@dataclass(frozen=True)
class Matrix2:
    """Element of the unimodular 2x2 group."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        if abs(self.det - 1.0) > _DET_TOL:
            raise ValueError(f"matrix must have determinant 1, got {self.det}")

    @property
    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: "Matrix2") -> "Matrix2":
        return Matrix2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inv(self) -> "Matrix2":
        return Matrix2(self.d, -self.b, -self.c, self.a)


@dataclass(frozen=True)
class BallPoint:
    """Interior point of the unit ball model."""

    coords: tuple[float, ...]

    def __post_init__(self):
        if _norm(self.coords) >= 1.0:
            raise ValueError("ball point must have norm < 1")

    def array(self) -> np.ndarray:
        return np.asarray(self.coords, dtype=float)


@dataclass(frozen=True)
class BoundaryPoint:
    """Point of the boundary sphere."""

    coords: tuple[float, ...]

    def __post_init__(self):
        if abs(_norm(self.coords) - 1.0) > 1e-12:
            raise ValueError("boundary point must have norm 1")

    def array(self) -> np.ndarray:
        return np.asarray(self.coords, dtype=float)


@dataclass(frozen=True)
class OracleReport:
    """A closed-form vs quadrature comparison record."""

    closed_form: complex
    quadrature: complex
    abs_err: float
    rel_err: float
    nodes_used: int

    @staticmethod
    def build(closed_form: complex, quadrature: complex,
              nodes_used: int) -> "OracleReport":
        closed_form = complex(closed_form)
        quadrature = complex(quadrature)
        abs_err = abs(closed_form - quadrature)
        scale = max(abs(closed_form), abs(quadrature))
        rel_err = abs_err / scale if scale > 0 else abs_err
        return OracleReport(closed_form, quadrature,
                            abs_err, rel_err, int(nodes_used))


def _norm(coords) -> float:
    return math.sqrt(sum(float(x) * float(x) for x in coords))


# ---------------------------------------------------------------------------
# matrix model

def a_t_matrix(t: float) -> Matrix2:
    return Matrix2(math.exp(0.5 * t), 0.0, 0.0, math.exp(-0.5 * t))


def k_theta_matrix(theta: float) -> Matrix2:
    return Matrix2(math.cos(theta), math.sin(theta),
                   -math.sin(theta), math.cos(theta))


def nbar_matrix(x: float) -> Matrix2:
    """Lower unipotent element of the opposite group."""
    return Matrix2(1.0, 0.0, x, 1.0)


def n_matrix(x: float) -> Matrix2:
    return Matrix2(1.0, x, 0.0, 1.0)


WEYL_REP = k_theta_matrix(0.5 * math.pi)  # m*: rotation by pi/2, -I on A


def iwasawa_H(g: Matrix2) -> float:
    """H-coordinate h of the K A N factorization g = k exp(h H) n, i.e.
    e^h = (first column norm)^2."""
    return math.log(g.a * g.a + g.c * g.c)


def iwasawa_decompose(g: Matrix2) -> tuple[float, float, float]:
    """(theta, h, x) with g = k_theta a_h n(x)."""
    h = iwasawa_H(g)
    theta = math.atan2(-g.c, g.a)
    ka = k_theta_matrix(theta) @ a_t_matrix(h)
    n = ka.inv() @ g
    return theta, h, n.b


def mobius_upper(g: Matrix2, z: complex) -> complex:
    return (g.a * z + g.b) / (g.c * z + g.d)


def sl2_to_ball(g: Matrix2) -> complex:
    """Image in the disk of the coset g K (base point i of the upper half
    plane, Cayley transform z -> (z - i)/(z + i))."""
    z = mobius_upper(g, 1j)
    return (z - 1j) / (z + 1j)


def boundary_circle_point(theta: float) -> complex:
    """Disk boundary image of the coset k_theta M: e^{2 i theta}."""
    return cmath.exp(2j * theta)


# ---------------------------------------------------------------------------
# ball model

def horocycle_bracket(x, b) -> float:
    """Horocycle bracket A(x, b)(H) = log[(1-|x|^2)/|x-b|^2] in the ball
    model with alpha(H) = 1, rho(H) = (n-1)/2."""
    xv = x.array() if isinstance(x, BallPoint) else np.asarray(x, float)
    bv = b.array() if isinstance(b, BoundaryPoint) else np.asarray(b, float)
    diff = xv - bv
    d2 = float(diff @ diff)
    if d2 < 1e-28:
        raise ValueError("x degenerately close to the boundary point b")
    return math.log((1.0 - float(xv @ xv)) / d2)


def geodesic_radius(t: float) -> float:
    """Euclidean radius of the point at hyperbolic distance t from the
    origin: tanh(t/2)."""
    return math.tanh(0.5 * t)


@lru_cache(maxsize=64)
def _sphere_band_norm(n: int, spec: QuadratureSpec) -> tuple[complex, int]:
    # \int_0^pi sin^{n-2} theta dtheta by the same adaptive rule used for
    # the numerator (self-normalizing the polar slice of the sphere)
    p = n - 2

    def f(theta: np.ndarray) -> np.ndarray:
        return np.sin(theta) ** p + 0j

    return gauss_legendre_adaptive(f, 0.0, math.pi, spec)


def quad_phi_K(n: int, Lam: complex, t: float,
               spec: QuadratureSpec = DEFAULT_SPEC) -> complex:
    """Zonal spherical function on n-dimensional hyperbolic space at
    distance t, as the normalized boundary integral of the Poisson kernel
    power P(x, b)^{i Lam + rho}."""
    if n < 2:
        raise ValueError("need n >= 2")
    if t < 0:
        raise ValueError("t must be >= 0")
    mu = 1j * complex(Lam) + 0.5 * (n - 1)
    u = geodesic_radius(t)
    if u == 0.0:
        return 1.0 + 0j
    if n == 2:
        value, _ = trapezoid_doubling(
            lambda m: kernels.poisson_circle_sum(u, mu, 0, m), spec)
        return value
    value, _ = _phi_polar(n, mu, u, spec)
    return value


def _phi_polar(n: int, mu: complex, u: float,
               spec: QuadratureSpec) -> tuple[complex, int]:
    p = n - 2

    def f(theta: np.ndarray) -> np.ndarray:
        pk = (1.0 - u * u) / (1.0 - 2.0 * u * np.cos(theta) + u * u)
        return np.exp(mu * np.log(pk)) * np.sin(theta) ** p

    num, nodes1 = gauss_legendre_adaptive(f, 0.0, math.pi, spec)
    den, nodes2 = _sphere_band_norm(n, spec)
    return num / den, nodes1 + nodes2


# ---------------------------------------------------------------------------
# opposite-unipotent integrals

def _log_nbar_radial(n: int, s: complex, extra_char: int):
    """log of the integrand of \int_0^infty (1+r^2/4)^{-s} r^{n-2}
    [cos(extra_char * atan(r/2))] dr after the substitution r = sinh u,
    as a vectorized function of u."""
    s = complex(s)
    p = n - 2

    def log_f(u: np.ndarray) -> np.ndarray:
        small = u < 20.0
        u_small = np.where(small, u, 1.0)
        u_big = np.where(small, 25.0, np.minimum(u, 700.0))
        logr = np.where(
            small,
            np.log(np.sinh(u_small)),
            u - math.log(2.0) + np.log1p(-np.exp(-2.0 * u_big)))
        logcosh = np.where(
            small,
            np.log(np.cosh(u_small)),
            u - math.log(2.0) + np.log1p(np.exp(-2.0 * u_big)))
        # log(1 + r^2/4) = 2 log r - log 4 + log1p(4/r^2), stable for huge r
        r2 = np.exp(np.minimum(2.0 * logr, 700.0))
        log1pr = np.where(
            logr < 100.0,
            np.log1p(0.25 * r2),
            2.0 * logr - math.log(4.0))
        out = (-s * log1pr + p * logr + logcosh).astype(complex)
        if extra_char:
            r = np.exp(np.minimum(logr, 350.0))
            # the cosine changes sign along the ray; complex log carries it
            with np.errstate(divide="ignore"):
                out = out + np.log(
                    np.cos(extra_char * np.arctan(0.5 * r))
                    .astype(complex))
        return out

    return log_f


def _nbar_radial(n: int, s: complex, spec: QuadratureSpec,
                 extra_char: int = 0) -> tuple[complex, int]:
    decay = 2.0 * (complex(s).real - 0.5 * (n - 1))
    return halfline_integral(_log_nbar_radial(n, s, extra_char), spec, decay)


@lru_cache(maxsize=64)
def nbar_normalization(n: int, spec: QuadratureSpec) -> complex:
    """The measure constant \int (1+|v|^2/4)^{-2 rho} dv over the
    (n-1)-dimensional opposite-unipotent coordinate (radial part only;
    the angular factor cancels in every normalized ratio).  Shared by the
    c-function and second-coefficient oracles."""
    value, _ = _nbar_radial(n, complex(n - 1.0), spec)
    return value


def quad_c_Nbar(n: int, Lam: complex,
                spec: QuadratureSpec = DEFAULT_SPEC) -> complex:
    """c-function of n-dimensional hyperbolic space as the normalized
    integral over the opposite unipotent group,

        \int (1 + |v|^2/4)^{-(i Lam + rho)} dv / (same at Lam = -i rho),

    absolutely convergent for Re(i Lam) > 0 (margin 0.05 enforced)."""
    if n < 2:
        raise ValueError("need n >= 2")
    s = 1j * complex(Lam) + 0.5 * (n - 1)
    if (1j * complex(Lam)).real <= CONVERGENCE_MARGIN:
        raise DivergentIntegralError(
            f"need Re(i Lam) > {CONVERGENCE_MARGIN}, got "
            f"{(1j * complex(Lam)).real}")
    num, _ = _nbar_radial(n, s, spec)
    return num / nbar_normalization(n, spec)


def quad_Csigma_sl2(char_n: int, Lam: complex,
                    spec: QuadratureSpec = DEFAULT_SPEC) -> complex:
    """Second-coefficient integral on the hyperbolic plane for the even
    circle character of weight char_n:

        \int e^{-(i Lam + rho)(H(nbar))} char(k(nbar)^{-1} m*) dnbar

    over the opposite unipotent group, normalized by the same measure
    constant as the c-function oracle.  With nbar = nbar(x), the rotation
    part is k_{-atan x}, and m* = k_{pi/2}; in the shared coordinate
    v = 2x the phase is char_n * (atan(v/2) + pi/2)."""
    if char_n % 2:
        raise ValueError("character weight must be even (fixed-vector "
                         "condition for the centralizer)")
    if (1j * complex(Lam)).real <= CONVERGENCE_MARGIN:
        raise DivergentIntegralError(
            f"need Re(i Lam) > {CONVERGENCE_MARGIN}, got "
            f"{(1j * complex(Lam)).real}")
    s = 1j * complex(Lam) + 0.5
    num, _ = _nbar_radial(2, s, spec, extra_char=char_n)
    phase = cmath.exp(0.5j * math.pi * char_n)
    return phase * num / nbar_normalization(2, spec)


# ---------------------------------------------------------------------------
# Eisenstein entries on the disk

def entry_function_sl2(char_n: int, Lam: complex, z: complex,
                       spec: QuadratureSpec = DEFAULT_SPEC) -> complex:
    """Fixed-vector matrix entry of the Eisenstein integral for the even
    circle character of weight char_n, at the disk point z:

        (1/2pi) \int_0^{2pi} P(z, e^{2 i theta})^{i Lam + rho}
                             e^{i char_n theta} dtheta.
    """
    if char_n % 2:
        raise ValueError("character weight must be even")
    mu = 1j * complex(Lam) + 0.5
    z = complex(z)
    if abs(z) >= 1.0:
        raise ValueError("z must lie inside the unit disk")
    # in psi = 2 theta the entry is the (char_n/2)-nd Fourier coefficient
    if z.imag == 0.0 and z.real >= 0.0:
        value, _ = trapezoid_doubling(
            lambda m: kernels.poisson_circle_sum(
                z.real, mu, char_n // 2, m), spec)
        return value

    def mean_of(m: int) -> complex:
        theta = np.arange(m) * (2.0 * math.pi / m)
        b = np.exp(2j * theta)
        pk = (1.0 - abs(z) ** 2) / np.abs(z - b) ** 2
        vals = np.exp(mu * np.log(pk))
        if char_n:
            vals = vals * np.exp(1j * char_n * theta)
        return complex(vals.mean())

    value, _ = trapezoid_doubling(mean_of, spec)
    return value


def quad_eisenstein_sl2(char_n: int, Lam: complex, t: float,
                        spec: QuadratureSpec = DEFAULT_SPEC) -> complex:
    """Eisenstein entry along the geodesic: at the point of distance t."""
    if t < 0:
        raise ValueError("t must be >= 0")
    return entry_function_sl2(char_n, Lam, geodesic_radius(t), spec)


# ---------------------------------------------------------------------------
# functional equations

def _phi_ball(n: int, Lam: complex, t: float, spec: QuadratureSpec,
              cache: dict) -> complex:
    key = round(t, 14)
    if key not in cache:
        cache[key] = quad_phi_K(n, Lam, t, spec)
    return cache[key]


def functional_equation_check(n: int, Lam: complex, t1: float, t2: float,
                              spec: QuadratureSpec = DEFAULT_SPEC
                              ) -> OracleReport:
    """Zonal functional equation: the rotation average of
    phi at the composed point against phi(t1) phi(t2).

    The group average over K reduces to the polar angle gamma between the
    two geodesic legments, with
    cosh d(gamma) = cosh t1 cosh t2 + sinh t1 sinh t2 cos gamma.
    """
    cache: dict = {}
    inner_spec = spec

    def dist(gamma: np.ndarray) -> np.ndarray:
        arg = (math.cosh(t1) * math.cosh(t2)
               + math.sinh(t1) * math.sinh(t2) * np.cos(gamma))
        return np.arccosh(np.maximum(arg, 1.0))

    p = n - 2

    def f(gamma: np.ndarray) -> np.ndarray:
        ds = dist(gamma)
        vals = np.array([_phi_ball(n, Lam, float(d), inner_spec, cache)
                         for d in ds], dtype=complex)
        return vals * np.sin(gamma) ** p if p else vals

    outer_spec = QuadratureSpec(
        abs_tol=max(spec.abs_tol, 1e-10), rel_tol=max(spec.rel_tol, 1e-9),
        max_subdivisions=spec.max_subdivisions, scheme=spec.scheme)
    num, nodes1 = gauss_legendre_adaptive(f, 0.0, math.pi, outer_spec)
    den, nodes2 = _sphere_band_norm(n, outer_spec) if p else (
        math.pi + 0j, 0)
    lhs = num / den
    rhs = (quad_phi_K(n, Lam, t1, spec) * quad_phi_K(n, Lam, t2, spec))
    return OracleReport.build(rhs, lhs, nodes1 + nodes2)


def functional_equation_entry_sl2(char_n: int, Lam: complex, t1: float,
                                  t2: float,
                                  spec: QuadratureSpec = DEFAULT_SPEC
                                  ) -> OracleReport:
    """Joint-eigenfunction functional equation for the character entry E:
    the rotation average of E(x k y) against E(x) phi(y), with x, y the
    geodesic points at distances t1, t2."""
    g1 = a_t_matrix(t1)
    g2 = a_t_matrix(t2)

    def mean_of(m: int) -> complex:
        vals = []
        for j in range(m):
            theta = 2.0 * math.pi * j / m
            g = g1 @ k_theta_matrix(theta) @ g2
            vals.append(entry_function_sl2(char_n, Lam, sl2_to_ball(g),
                                           spec))
        return complex(np.mean(vals))

    lhs, nodes = trapezoid_doubling(mean_of, spec, n0=16)
    rhs = (entry_function_sl2(char_n, Lam, sl2_to_ball(g1), spec)
           * quad_phi_K(2, Lam, t2, spec))
    return OracleReport.build(rhs, lhs, nodes)
