"""Complex Gamma, Hurwitz/Riemann zeta, Kronecker L-functions and Gamma factors.

Everything is double precision.  Poles raise :class:`PoleError` instead of
returning huge numbers, so identity checks fail loudly near singularities.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np

from . import _quad
from .char_sums import kronecker
from .config import DEFAULT_PRECISION, PrecisionConfig
from .errors import DomainError, PoleError

PI = math.pi
LOG_2PI = math.log(2 * PI)


# ---------------------------------------------------------------------------
# branch conventions

def principal_power(z: complex, t: complex) -> complex:
    """``z**t`` on the principal branch, ``arg z`` in (-pi, pi]."""
    z = complex(z)
    t = complex(t)
    if z == 0:
        if t.real > 0:
            return 0j
        raise DomainError("0 raised to a power with Re(t) <= 0")
    arg = math.atan2(z.imag, z.real)
    if z.imag == 0 and z.real < 0:
        arg = PI  # also catches a signed -0.0 imaginary part
    return cmath.exp(t * complex(math.log(abs(z)), arg))


def sgn_half_power(y: float, eps: int) -> complex:
    """``sgn(y)**(eps/2)`` with ``(-1)**(1/2) = i``."""
    if y == 0:
        raise DomainError("sgn_half_power is undefined at 0")
    if eps not in (1, -1):
        raise DomainError("eps must be +1 or -1")
    if y > 0:
        return 1 + 0j
    return 1j if eps == 1 else -1j


def _check_nonpositive_int(z: complex, guard: float, what: str) -> None:
    if z.real < 0.5:
        n = round(z.real)
        if n <= 0 and abs(z - n) < guard:
            raise PoleError(f"{what} has a pole at {n}", location=complex(n))


# ---------------------------------------------------------------------------
# Gamma

# Rational approximation with g = 671/128 and 15 coefficients
_LANCZOS_G = 5.2421875
_LANCZOS = (
    0.999999999999997092,
    57.1562356658629235,
    -59.5979603554754912,
    14.1360979747417471,
    -0.491913816097620199,
    0.339946499848118887e-4,
    0.465236289270485756e-4,
    -0.983744753048795646e-4,
    0.158088703224912494e-3,
    -0.210264441724104883e-3,
    0.217439618115212643e-3,
    -0.164318106536763890e-3,
    0.844182239838527433e-4,
    -0.261908384015814087e-4,
    0.368991826595316234e-5,
)
_SQRT_2PI = 2.5066282746310005


def _loggamma_right(z: complex) -> complex:
    # valid for Re z >= 1/2
    ser = _LANCZOS[0]
    for j, c in enumerate(_LANCZOS[1:], start=1):
        ser += c / (z + j)
    tmp = z + _LANCZOS_G
    return (z + 0.5) * cmath.log(tmp) - tmp + cmath.log(_SQRT_2PI * ser / z)


def loggamma(z: complex, cfg: PrecisionConfig = DEFAULT_PRECISION) -> complex:
    """A logarithm of Gamma (not necessarily the principal branch)."""
    z = complex(z)
    _check_nonpositive_int(z, cfg.pole_guard, "Gamma")
    if z.real >= 0.5:
        return _loggamma_right(z)
    return cmath.log(PI / cmath.sin(PI * z)) - _loggamma_right(1 - z)


def gamma(z: complex, cfg: PrecisionConfig = DEFAULT_PRECISION) -> complex:
    z = complex(z)
    _check_nonpositive_int(z, cfg.pole_guard, "Gamma")
    if z.real >= 0.5:
        return cmath.exp(_loggamma_right(z))
    return PI / (cmath.sin(PI * z) * cmath.exp(_loggamma_right(1 - z)))


def rgamma(z: complex) -> complex:
    """``1/Gamma(z)``, entire; exact zero at the nonpositive integers."""
    z = complex(z)
    if z.real < 0.5 and z.imag == 0 and z.real == round(z.real):
        return 0j
    if z.real >= 0.5:
        return cmath.exp(-_loggamma_right(z))
    return cmath.sin(PI * z) * cmath.exp(_loggamma_right(1 - z)) / PI


# ---------------------------------------------------------------------------
# zeta functions

@lru_cache(maxsize=None)
def _bernoulli_even(m: int) -> tuple:
    """B_2, B_4, ..., B_{2m} as floats (Akiyama-Tanigawa)."""
    n_max = 2 * m
    a = [Fraction(0)] * (n_max + 1)
    out = []
    for n in range(n_max + 1):
        a[n] = Fraction(1, n + 1)
        for j in range(n, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        if n >= 2 and n % 2 == 0:
            out.append(a[0])
    return tuple(float(b) for b in out)


def _em_tail(s: complex, x: np.ndarray, order: int) -> np.ndarray:
    # sum_{j=1}^{order} B_{2j}/(2j)! * s(s+1)...(s+2j-2) * x^{-s-2j+1}
    bern = _bernoulli_even(order)
    xs = x ** (-s - 1)
    out = np.zeros_like(xs)
    poch = s  # rising factorial s (s+1) ... (s+2j-2)
    fact = 2.0
    inv_x2 = 1.0 / (x * x)
    term_pow = xs
    for j in range(1, order + 1):
        out = out + bern[j - 1] / fact * poch * term_pow
        poch = poch * (s + 2 * j - 1) * (s + 2 * j)
        fact *= (2 * j + 1) * (2 * j + 2)
        term_pow = term_pow * inv_x2
    return out


def hurwitz_zeta_many(s: complex, a, cfg: PrecisionConfig = DEFAULT_PRECISION) -> np.ndarray:
    """Hurwitz zeta ``zeta(s, a)`` for an array of ``a`` in (0, 1]."""
    s = complex(s)
    if abs(s - 1) < cfg.pole_guard:
        raise PoleError("Hurwitz zeta has a pole at s = 1", location=1 + 0j)
    a = np.atleast_1d(np.asarray(a, dtype=float))
    if np.any(a <= 0) or np.any(a > 1):
        raise DomainError("Hurwitz parameter must lie in (0, 1]")
    N = cfg.terms_for(s)
    n = np.arange(N, dtype=float)
    grid = a[:, None] + n[None, :]
    head = np.sum(np.exp(-s * np.log(grid)), axis=1)
    x = a + N
    tail = x ** (1 - s) / (s - 1) + 0.5 * x ** (-s) + _em_tail(s, x, cfg.em_order)
    return head + tail


def hurwitz_zeta(s: complex, a: float, cfg: PrecisionConfig = DEFAULT_PRECISION) -> complex:
    return complex(hurwitz_zeta_many(s, [a], cfg)[0])


def riemann_zeta(s: complex, cfg: PrecisionConfig = DEFAULT_PRECISION) -> complex:
    s = complex(s)
    if s == 0:
        return -0.5 + 0j
    if s.real < -1:
        # the head sum grows like N^(1-Re s) while zeta(s) itself can be tiny
        # near the trivial zeros; reflection keeps full relative accuracy
        return (
            2 ** s * PI ** (s - 1) * cmath.sin(PI * s / 2) * gamma(1 - s, cfg) * riemann_zeta(1 - s, cfg)
        )
    return hurwitz_zeta(s, 1.0, cfg)


def zeta2(s: complex, cfg: PrecisionConfig = DEFAULT_PRECISION) -> complex:
    """``(1 - 2**-s) zeta(s)``; exact 0 at ``s = 0``."""
    s = complex(s)
    if s == 0:
        return 0j
    return (1 - 2.0 ** (-s)) * riemann_zeta(s, cfg)


@lru_cache(maxsize=2048)
def _odd_kron_row(t: int, q: int) -> tuple:
    return tuple(kronecker(t, a) if a % 2 else 0 for a in range(1, q + 1))


def kronecker_L_odd(
    s: complex, t: int, cfg: PrecisionConfig = DEFAULT_PRECISION, period: Optional[int] = None
) -> complex:
    """``sum_{d>0 odd} (t/d) d^{-s}`` continued to all ``s``.

    On odd ``d`` the symbol ``(t/d)`` is periodic with period ``4|t|``, so
    ``q^{-s} sum_{a=1}^{q} (t/a) zeta(s, a/q)`` (odd ``a`` only) is exact
    for any multiple ``q`` of ``4|t|``.
    """
    t = int(t)
    if t == 0:
        raise DomainError("kronecker_L needs t != 0")
    q = 4 * abs(t) if period is None else int(period)
    if q <= 0 or q % (4 * abs(t)):
        raise DomainError("period must be a positive multiple of 4|t|")
    row = np.array(_odd_kron_row(t, q), dtype=float)
    s = complex(s)
    if abs(s - 1) < cfg.pole_guard and abs(row.sum()) > 0.5:
        raise PoleError("L-function of a principal-type character has a pole at s = 1", location=1 + 0j)
    mask = row != 0
    a = np.arange(1, q + 1, dtype=float)[mask] / q
    if abs(s - 1) < cfg.pole_guard:
        # removable: the residues cancel because the row sums to zero
        h = 10 * cfg.pole_guard
        return 0.5 * (
            kronecker_L_odd(s + h, t, cfg, q) + kronecker_L_odd(s - h, t, cfg, q)
        )
    vals = hurwitz_zeta_many(s, a, cfg)
    return complex(cmath.exp(-s * math.log(q)) * np.dot(row[mask], vals))


def kronecker_L(
    s: complex, t: int, cfg: PrecisionConfig = DEFAULT_PRECISION, period: Optional[int] = None
) -> complex:
    """``L(s, (t/.)) = sum_{d>0} (t/d) d^{-s}`` continued to all ``s``.

    The full symbol is not periodic when ``t = 2, 3 (mod 4)``, so the odd part
    is summed through Hurwitz zeta and the Euler factor at 2 is restored:
    ``L = L_odd / (1 - (t/2) 2^{-s})``.
    """
    s = complex(s)
    chi2 = kronecker(t, 2)
    odd = kronecker_L_odd(s, t, cfg, period)
    if chi2 == 0:
        return odd
    denom = 1 - chi2 * cmath.exp(-s * math.log(2))
    if abs(denom) < cfg.pole_guard:
        raise PoleError("Euler factor at 2 has a pole here", location=s)
    return odd / denom


# ---------------------------------------------------------------------------
# Gamma factors

def _gamma_cos(nu: complex, cfg: PrecisionConfig) -> complex:
    # Gamma(nu) cos(pi nu/2); poles at 0, -2, -4, ...
    if nu.real >= 0.5:
        return gamma(nu, cfg) * cmath.cos(PI * nu / 2)
    half = nu / 2
    n = round(half.real)
    if n <= 0 and abs(half - n) < cfg.pole_guard / 2:
        raise PoleError("G0 has a pole", location=complex(2 * n))
    return PI / (2 * cmath.sin(PI * nu / 2)) * rgamma(1 - nu)


def _gamma_sin(nu: complex, cfg: PrecisionConfig) -> complex:
    # Gamma(nu) sin(pi nu/2); poles at -1, -3, ...
    if nu.real >= 0.5:
        return gamma(nu, cfg) * cmath.sin(PI * nu / 2)
    h = (nu + 1) / 2
    n = round(h.real)
    if n <= 0 and abs(h - n) < cfg.pole_guard / 2:
        raise PoleError("G1 has a pole", location=complex(2 * n - 1))
    return PI / (2 * cmath.cos(PI * nu / 2)) * rgamma(1 - nu)


def _two_pi_pow(nu: complex) -> complex:
    return cmath.exp(-nu * LOG_2PI)


def G0(nu: complex, cfg: PrecisionConfig = DEFAULT_PRECISION) -> complex:
    nu = complex(nu)
    return 2 * _two_pi_pow(nu) * _gamma_cos(nu, cfg)


def G1(nu: complex, cfg: PrecisionConfig = DEFAULT_PRECISION) -> complex:
    nu = complex(nu)
    return 2j * _two_pi_pow(nu) * _gamma_sin(nu, cfg)


def G_pair(eps1: int, eps2: int, nu: complex, cfg: PrecisionConfig = DEFAULT_PRECISION) -> complex:
    """``(1 - eps1 i) Gamma(nu) (2pi)^{-nu} (cos(pi nu/2) + eps1 eps2 sin(pi nu/2))``."""
    if eps1 not in (1, -1) or eps2 not in (1, -1):
        raise DomainError("signs must be +1 or -1")
    nu = complex(nu)
    val = _gamma_cos(nu, cfg) + eps1 * eps2 * _gamma_sin(nu, cfg)
    return (1 - eps1 * 1j) * _two_pi_pow(nu) * val


def gamma_factor(kind, nu: complex, cfg: PrecisionConfig = DEFAULT_PRECISION) -> complex:
    """``kind`` is ``"G0"``, ``"G1"`` or a pair ``(eps1, eps2)``."""
    if kind == "G0":
        return G0(nu, cfg)
    if kind == "G1":
        return G1(nu, cfg)
    if isinstance(kind, (tuple, list)) and len(kind) == 2 and all(e in (1, -1) for e in kind):
        return G_pair(int(kind[0]), int(kind[1]), nu, cfg)
    raise DomainError(f"unknown Gamma factor kind {kind!r}")


# ---------------------------------------------------------------------------
# the conditionally convergent power integral

def _half_line_power_exp(nu: complex, sign: int, tol: float) -> complex:
    """``int_0^inf u^{nu-1} e(sign*u) du`` for 0 < Re nu < 1.

    On [0, 1] the algebraic singularity is handled by an ``x^alpha`` weight.
    On [1, inf) one integration by parts gives
    ``-1/(2 pi i sign) - (nu-1)/(2 pi i sign) int_1^inf u^{nu-2} e(sign*u) du``
    whose integrand is absolutely integrable.
    """
    w = 2 * PI * sign
    alpha = nu.real - 1
    im = nu.imag

    def smooth(u):  # u^{i Im nu} e(sign u)
        return np.exp(1j * (im * np.log(u) + w * u)) if u > 0 else (1.0 + 0j)

    head = _quad.quad_complex(smooth, 0.0, 1.0, tol=tol, weight="alg", wvar=(alpha, 0.0))
    k = 1j * w
    # int_1^inf u^{nu-2} e^{i w u} du = int_0^inf (1+v)^{nu-2} e^{i w (1+v)} dv
    tail_int = cmath.exp(1j * w) * _quad.fourier_tail(lambda v: (1 + v) ** (nu - 2), abs(w), sign, tol=tol)
    tail = -cmath.exp(1j * w) / k - (nu - 1) / k * tail_int
    return head + tail


def conditional_fourier_power_integral(
    eps1: int, eps2: int, nu: complex, cfg: PrecisionConfig = DEFAULT_PRECISION
) -> complex:
    """``lim int sgn(-eps2 t)^{-eps1/2} |t|^{nu-1} e(t) dt`` for 0 < Re nu < 1."""
    nu = complex(nu)
    if not 0 < nu.real < 1:
        raise DomainError("the conditional integral needs 0 < Re(nu) < 1")
    tol = cfg.quad_tol
    w_pos = sgn_half_power(-eps2, -eps1)  # t > 0
    w_neg = sgn_half_power(eps2, -eps1)  # t < 0, substitute t = -u
    return w_pos * _half_line_power_exp(nu, 1, tol) + w_neg * _half_line_power_exp(nu, -1, tol)
