"""The c-function: product formula, partial products, denominator Gamma
factor and the simplicity predicate.

The single-root factor is, with w the scalar <i lam, alpha_0>,

    2^{-(w - rho0)} G((m + m2 + 1)/2) G(w)
    / [ G((m/2 + 1 + w)/2) G((m/2 + m2 + w)/2) ],       rho0 = m/2 + m2,

evaluated through log-Gamma differences, then multiplied by a calibration
constant kappa(m, m2) fixed once by requiring the value 1 at w = rho0.
That normalization matches the measure convention of the defining
integral over the opposite unipotent group used by the quadrature oracle
(total mass 1 at the calibration point); kappa comes out to 1 in double
precision, and ``calibration_report`` exposes the verbatim-product value
so the convention can be audited rather than silently absorbed.

Numerator poles (w a non-positive integer) are genuine poles of c and are
reported distinctly from denominator poles, which are zeros of c and mark
the non-simple spectral parameters of the underlying space.
"""

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

from . import complexmath as cm
from .rootdata import RootDatum, SpectralParam, WeylElement, \
    negative_set_indices, restrict

SIMPLE_TOL = 1e-9

_LOG2 = math.log(2.0)


@dataclass(frozen=True)
class CFunctionValue:
    """Result record for a c-function evaluation."""

    value: complex
    pole_flag: bool = False

    def __complex__(self) -> complex:
        return self.value


class CPoleError(ValueError):
    """A Gamma factor of the product hit a pole within tolerance.

    kind is 'numerator' (a genuine pole of c) or 'denominator' (a zero of
    c, equivalently a non-simple parameter).  root_index identifies the
    offending positive root in higher rank.
    """

    def __init__(self, kind: str, argument: complex,
                 root_index: int | None = None):
        self.kind = kind
        self.argument = argument
        self.root_index = root_index
        where = "" if root_index is None else f" (root #{root_index})"
        super().__init__(
            f"{kind} gamma pole at argument {argument}{where}")


def _factor_arguments(w: complex, m: int, m2: int):
    """(numerator arg, denominator args) of the single-root factor."""
    return w, (0.5 * (0.5 * m + 1.0 + w), 0.5 * (0.5 * m + m2 + w))


def _log_verbatim_factor(w: complex, m: int, m2: int,
                         root_index: int | None = None) -> complex:
    rho0 = 0.5 * m + m2
    num, dens = _factor_arguments(w, m, m2)
    if cm.distance_to_nonpos_int(num) <= cm.POLE_TOL:
        raise CPoleError("numerator", num, root_index)
    for d in dens:
        if cm.distance_to_nonpos_int(d) <= cm.POLE_TOL:
            raise CPoleError("denominator", d, root_index)
    return ((rho0 - w) * _LOG2
            + cm.log_gamma(0.5 * (m + m2 + 1.0))
            + cm.log_gamma(num)
            - cm.log_gamma(dens[0])
            - cm.log_gamma(dens[1]))


@lru_cache(maxsize=None)
def _log_kappa(m: int, m2: int) -> complex:
    # fixed by factor(w = rho0) == 1
    return -_log_verbatim_factor(0.5 * m + m2, m, m2)


def calibration_report(m_alpha: int, m_2alpha: int) -> dict:
    """Audit of the printed-formula convention: the verbatim product value
    at the calibration point and the kappa that rescales it to 1."""
    verbatim = cmath.exp(_log_verbatim_factor(
        0.5 * m_alpha + m_2alpha, m_alpha, m_2alpha))
    return {
        "m_alpha": m_alpha,
        "m_2alpha": m_2alpha,
        "verbatim_at_calibration": verbatim,
        "kappa": cmath.exp(_log_kappa(m_alpha, m_2alpha)),
    }


def c_alpha(Lam: complex, m_alpha: int, m_2alpha: int,
            root_index: int | None = None) -> CFunctionValue:
    """Single-root (rank-one) c-function at scalar parameter Lam, i.e. at
    <i lam, alpha_0> = i*Lam, calibrated so c_alpha(-i rho0) = 1."""
    w = 1j * complex(Lam)
    logv = _log_verbatim_factor(w, m_alpha, m_2alpha, root_index) \
        + _log_kappa(m_alpha, m_2alpha)
    return CFunctionValue(cmath.exp(logv))


def c_full(datum: RootDatum, lam: SpectralParam) -> CFunctionValue:
    """Product of the single-root factors over all positive indivisible
    roots (the full c-function)."""
    acc = 1.0 + 0j
    for i in range(datum.n_positive):
        m, m2 = datum.mult_of(i)
        acc *= c_alpha(restrict(datum, lam, i), m, m2, root_index=i).value
    return CFunctionValue(acc)


def c_sigma(datum: RootDatum, w: WeylElement,
            lam: SpectralParam) -> CFunctionValue:
    """Partial c-function: the factor product restricted to the positive
    roots sent negative by w."""
    acc = 1.0 + 0j
    for i in negative_set_indices(datum, w):
        m, m2 = datum.mult_of(i)
        acc *= c_alpha(restrict(datum, lam, i), m, m2, root_index=i).value
    return CFunctionValue(acc)


def gamma_plus_X(datum: RootDatum, lam: SpectralParam) -> complex:
    """The denominator Gamma product of the c-function (`the Gamma
    function of the space`)."""
    acc = 0j
    for i in range(datum.n_positive):
        m, m2 = datum.mult_of(i)
        w = 1j * restrict(datum, lam, i)
        _, dens = _factor_arguments(w, m, m2)
        for d in dens:
            if cm.distance_to_nonpos_int(d) <= cm.POLE_TOL:
                raise CPoleError("denominator", d, i)
            acc += cm.log_gamma(d)
    return cmath.exp(acc)


def is_simple(datum: RootDatum, lam: SpectralParam,
              tol: float = SIMPLE_TOL) -> bool:
    """False exactly when some denominator Gamma argument lies within tol
    of a non-positive integer (the reciprocal of the denominator product
    vanishes there, which characterizes the non-simple parameters)."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    for i in range(datum.n_positive):
        m, m2 = datum.mult_of(i)
        w = 1j * restrict(datum, lam, i)
        _, dens = _factor_arguments(w, m, m2)
        for d in dens:
            if cm.distance_to_nonpos_int(d) < tol:
                return False
    return True
