"""Whittaker integrals and the classical metaplectic Eisenstein series.

The series at the cusps infinity and 0 are computed two ways: as direct
sums over coset representatives and as Fourier expansions assembled from
the coefficient module.  Cusp-series code is written in terms of ``s``,
coefficient code in terms of ``nu``; the two meet only in :func:`nu_of_s`.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, Optional, Sequence, Tuple, Union

import numpy as np

from . import _quad
from .char_sums import jacobi_row, kronecker
from .coefficients import (
    coeff_a,
    coeff_b_bruteforce,
    coeff_b_derived_FE,
    coeff_b_zero,
)
from .config import DEFAULT_EVAL, DEFAULT_PRECISION, EvalConfig, PrecisionConfig
from .errors import AccuracyError, DomainError, PoleError
from .mpl_group import (
    MetaElement,
    inverse,
    iwasawa_kan,
    k_elem,
    multiply,
    n_elem,
    product,
    s_elem,
)
from .special_funcs import gamma, principal_power, rgamma, sgn_half_power, zeta2

PI = math.pi
SQRT2 = math.sqrt(2.0)

# direct sums: explicit window half-width in units of max(|Y|, period)
WINDOW_FACTOR = 4.0
_SERIES_TERMS = 30


# ---------------------------------------------------------------------------
# parameter types

@dataclass(frozen=True)
class UpperHalfPoint:
    x: float
    y: float

    def __post_init__(self):
        if not (self.y > 0) or not math.isfinite(self.y) or not math.isfinite(self.x):
            raise DomainError("a point of the upper half plane needs finite x and y > 0")

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)

    @classmethod
    def from_complex(cls, z: complex) -> "UpperHalfPoint":
        z = complex(z)
        return cls(z.real, z.imag)

    def shifted(self, dx: float) -> "UpperHalfPoint":
        return UpperHalfPoint(self.x + dx, self.y)


@dataclass(frozen=True)
class WeightParam:
    ell: int

    def __post_init__(self):
        if int(self.ell) != self.ell or self.ell % 2:
            raise DomainError("the weight parameter ell must be an even integer")


def _point(z) -> UpperHalfPoint:
    if isinstance(z, UpperHalfPoint):
        return z
    if isinstance(z, (tuple, list)):
        return UpperHalfPoint(float(z[0]), float(z[1]))
    return UpperHalfPoint.from_complex(z)


def _ell(ell) -> int:
    if isinstance(ell, WeightParam):
        return ell.ell
    return WeightParam(int(ell) if float(ell).is_integer() else ell).ell


def nu_of_s(s: complex) -> complex:
    return 2 * complex(s) - 1


def s_of_nu(nu: complex) -> complex:
    return (complex(nu) + 1) / 2


@dataclass(frozen=True)
class Estimate:
    """A value together with an error budget and bookkeeping."""
    value: complex
    error: float
    detail: Dict[str, object] = field(default_factory=dict, compare=False)

    def __complex__(self):
        return complex(self.value)


def _pos_pow(base: float, expo: complex) -> complex:
    return cmath.exp(complex(expo) * math.log(base))


# ---------------------------------------------------------------------------
# oscillatory integrals of products of two complex linear powers

@dataclass(frozen=True)
class _PowerPair:
    """Integrand ``sum c_ij (p1 + q1 t)^(a - i) (p2 + q2 t)^(b - j)``."""
    p1: complex
    q1: complex
    a: complex
    p2: complex
    q2: complex
    b: complex


def _differentiate(terms: Dict[Tuple[int, int], complex], pp: _PowerPair):
    out: Dict[Tuple[int, int], complex] = {}
    for (i, j), c in terms.items():
        ea, eb = pp.a - i, pp.b - j
        if ea != 0:
            out[(i + 1, j)] = out.get((i + 1, j), 0) + c * ea * pp.q1
        if eb != 0:
            out[(i, j + 1)] = out.get((i, j + 1), 0) + c * eb * pp.q2
    return out


def _evaluator(terms, pp: _PowerPair) -> Callable[[float], complex]:
    items = [(c, pp.a - i, pp.b - j) for (i, j), c in terms.items() if c != 0]

    def f(t: float) -> complex:
        l1 = cmath.log(pp.p1 + pp.q1 * t)
        l2 = cmath.log(pp.p2 + pp.q2 * t)
        return sum(c * cmath.exp(ea * l1 + eb * l2) for c, ea, eb in items)

    return f


def auto_ibp_depth(nu: complex) -> int:
    """``max(0, ceil(1.5 - Re nu))``: after that many steps the integrand
    decays like ``|t|^{-(Re nu + 1 + m)}`` with exponent at least 2.5."""
    return max(0, math.ceil(1.5 - complex(nu).real))


def _osc_integral(pp: _PowerPair, omega: float, depth: int, tol: float) -> Tuple[complex, float]:
    """``int_R e(omega t) f(t) dt`` after ``depth`` integrations by parts."""
    if omega == 0:
        raise DomainError("the Whittaker integral needs a nonzero frequency")
    terms: Dict[Tuple[int, int], complex] = {(0, 0): 1.0 + 0j}
    for _ in range(depth):
        terms = _differentiate(terms, pp)
    f = _evaluator(terms, pp)
    big = 2 * PI * abs(omega)
    sg = 1 if omega > 0 else -1
    right, e1 = _quad.fourier_tail_err(f, big, sg, tol)
    left, e2 = _quad.fourier_tail_err(lambda v: f(-v), big, -sg, tol)
    scale = (-1 / (2j * PI * omega)) ** depth
    return scale * (right + left), abs(scale) * (e1 + e2)


def _depth(nu: complex, cfg: EvalConfig, ibp_depth: Optional[int]) -> int:
    if ibp_depth is not None:
        if ibp_depth < 0:
            raise DomainError("ibp_depth must be >= 0")
        return int(ibp_depth)
    if cfg.ibp_depth:
        return cfg.ibp_depth
    return auto_ibp_depth(nu)


def _check_depth(nu: complex, m: int) -> None:
    if complex(nu).real + m <= 0:
        raise DomainError(f"Re(nu) + ibp_depth must be positive (got depth {m})")


def whittaker_W_est(
    nu: complex, ell: int, y: float, cfg: EvalConfig = DEFAULT_EVAL, ibp_depth: Optional[int] = None
) -> Estimate:
    """``W_nu(y) = int e(ty) (1-it)^{(1/2)(1/2-l) - (nu+1)/2} (1+it)^{-(1/2)(1/2-l) - (nu+1)/2} dt``.

    For small ``Re nu`` the integral is continued by integrating by parts
    (see :func:`auto_ibp_depth`); each step replaces ``f`` by ``-f'/(2 pi i y)``.
    """
    ell = _ell(ell)
    nu = complex(nu)
    y = float(y)
    if y == 0:
        raise DomainError("W_nu(y) needs y != 0")
    m = _depth(nu, cfg, ibp_depth)
    _check_depth(nu, m)
    h = 0.5 * (0.5 - ell)
    pp = _PowerPair(1, -1j, h - (nu + 1) / 2, 1, 1j, -h - (nu + 1) / 2)
    val, err = _osc_integral(pp, y, m, cfg.quad_tol)
    if not math.isfinite(err) or err > 100 * cfg.quad_tol * max(1.0, abs(val)):
        raise AccuracyError(f"Whittaker quadrature error {err:.3g}", achieved=err)
    return Estimate(val, err, {"ibp_depth": m, "provenance": "quadrature"})


def whittaker_W(
    nu: complex, ell: int, y: float, cfg: EvalConfig = DEFAULT_EVAL, ibp_depth: Optional[int] = None
) -> complex:
    return whittaker_W_est(nu, ell, y, cfg, ibp_depth).value


def whittaker_W_alt_est(
    nu: complex, ell: int, n: int, y: float, cfg: EvalConfig = DEFAULT_EVAL, ibp_depth: Optional[int] = None
) -> Estimate:
    """``W_nu(ny)`` from ``i^{-l} (1+i)/sqrt2 y^nu int e(-nt) (y^2+t^2)^{-g} (t+iy)^{-(1/2-l)} dt``
    with ``g = -(1/2)(1/2-l) + (nu+1)/2``."""
    ell = _ell(ell)
    nu = complex(nu)
    n = int(n)
    y = float(y)
    if n == 0:
        raise DomainError("n must be nonzero")
    if not y > 0:
        raise DomainError("y must be positive")
    m = _depth(nu, cfg, ibp_depth)
    _check_depth(nu, m)
    g = -0.5 * (0.5 - ell) + (nu + 1) / 2
    # (y^2 + t^2)^{-g} = (t - iy)^{-g} (t + iy)^{-g} on principal branches
    pp = _PowerPair(-1j * y, 1, -g, 1j * y, 1, -g - (0.5 - ell))
    val, err = _osc_integral(pp, -n, m, cfg.quad_tol)
    pref = (1j) ** (-ell % 4) * (1 + 1j) / SQRT2 * _pos_pow(y, nu)
    if not math.isfinite(err) or err > 100 * cfg.quad_tol * max(1.0, abs(val)):
        raise AccuracyError(f"Whittaker quadrature error {err:.3g}", achieved=err)
    return Estimate(pref * val, abs(pref) * err, {"ibp_depth": m, "provenance": "quadrature"})


def whittaker_W_alt(
    nu: complex, ell: int, n: int, y: float, cfg: EvalConfig = DEFAULT_EVAL, ibp_depth: Optional[int] = None
) -> complex:
    return whittaker_W_alt_est(nu, ell, n, y, cfg, ibp_depth).value


# ---------------------------------------------------------------------------
# Gamma factors of the constant terms

def kfinite_gamma_factor(eps: int, nu: complex, ell: int, cfg: PrecisionConfig = DEFAULT_PRECISION) -> complex:
    """``pi 2^{1-nu} Gamma(nu) / (Gamma(-(e/2)(l+1/2) + (nu+1)/2) Gamma((e/2)(l+1/2) + (nu+1)/2))``."""
    nu = complex(nu)
    h = eps * 0.5 * (ell + 0.5)
    return PI * _pos_pow(2, 1 - nu) * gamma(nu, cfg) * rgamma(-h + (nu + 1) / 2) * rgamma(h + (nu + 1) / 2)


def constant_term_gamma(nu: complex, ell: int, cfg: PrecisionConfig = DEFAULT_PRECISION) -> complex:
    """The Gamma factor multiplying the ``n = 0`` coefficient in both expansions."""
    nu = complex(nu)
    h = 0.5 * (0.5 - ell)
    return PI * _pos_pow(2, 1 - nu) * gamma(nu, cfg) * rgamma(h + (nu + 1) / 2) * rgamma(-h + (nu + 1) / 2)


def _near_nonpositive_int(nu: complex, radius: float) -> Optional[int]:
    k = round(nu.real)
    if k <= 0 and abs(nu - k) < radius:
        return k
    return None


def _removable(fn: Callable[[complex], complex], nu: complex, what: str) -> complex:
    """Evaluate ``fn`` at ``nu``; next to a non-positive integer where a Gamma
    pole meets a zero of the other factor, use the circle mean instead."""
    k = _near_nonpositive_int(nu, 1e-4)
    if k is None:
        return fn(nu)
    r, pts = 1e-2, 16
    nodes = [nu + r * cmath.exp(2j * PI * (j + 0.5) / pts) for j in range(pts)]
    vals = [fn(v) for v in nodes]
    residue = sum(v * (w - k) for v, w in zip(vals, nodes)) / pts
    mean = sum(vals) / pts
    if abs(residue) > 1e-8 * max(1.0, abs(mean)):
        raise PoleError(f"{what} has a pole at nu = {k}", location=complex(k))
    return mean


# ---------------------------------------------------------------------------
# Fourier expansions

def _fourier_core(
    z: UpperHalfPoint,
    nu: complex,
    ell: int,
    coeff: Callable[[int], Tuple[complex, float]],
    const_fn: Callable[[complex], complex],
    inf_coeff: complex,
    cfg: EvalConfig,
    tail_rtol: float,
) -> Estimate:
    x, y = z.x, z.y
    pref = (1j) ** (ell % 4) * (1 - 1j) / SQRT2
    yfac = _pos_pow(y, (1 - nu) / 2)
    const = pref * _removable(const_fn, nu, "constant term") * yfac
    const += inf_coeff * _pos_pow(y, (nu + 1) / 2)
    N = cfg.fourier_n_max
    partial = {}
    acc = 0j
    coeff_err = 0.0
    quad_err = 0.0
    for n in sorted(range(1, 2 * N + 1)):
        for sg in (1, -1):
            m = sg * n
            c, cerr = coeff(m)
            w = whittaker_W_est(nu, ell, m * y, cfg)
            phase = cmath.exp(2j * PI * m * x)
            acc += phase * c * w.value
            coeff_err += cerr * abs(w.value)
            quad_err += abs(c) * w.error
        if n == N:
            partial["N"] = acc
    series = pref * yfac * acc
    trunc = abs(pref * yfac * (acc - partial["N"]))
    value = const + series
    error = trunc + abs(pref * yfac) * (coeff_err + quad_err)
    if trunc > tail_rtol * max(abs(value), 1e-300):
        raise AccuracyError(
            f"Fourier truncation check failed: doubling n_max moved the value by {trunc:.3g}",
            achieved=trunc,
        )
    return Estimate(
        value,
        error,
        {"truncation": trunc, "coeff_error": coeff_err, "quad_error": quad_err, "n_max": 2 * N},
    )


def eisenstein_inf_fourier_est(
    z,
    s: complex,
    ell: int,
    cfg: EvalConfig = DEFAULT_EVAL,
    prec: PrecisionConfig = DEFAULT_PRECISION,
    tail_rtol: float = 1e-2,
) -> Estimate:
    """Fourier expansion of ``E_{inf,l}(z, s)`` with continued ``a``-coefficients.

    The series is summed to ``2 * fourier_n_max``; the change from
    ``fourier_n_max`` is reported as the truncation estimate.
    """
    z = _point(z)
    ell = _ell(ell)
    nu = nu_of_s(s)

    def const_fn(v):
        return constant_term_gamma(v, ell, prec) * coeff_a(1, 0, v, prec)

    def coeff(m):
        return coeff_a(1, m, nu, prec), 0.0

    a_inf = zeta2(2 * nu + 1, prec)
    est = _fourier_core(z, nu, ell, coeff, const_fn, a_inf, cfg, tail_rtol)
    est.detail["provenance"] = "closed-form"
    return est


def eisenstein_inf_fourier(z, s, ell, cfg: EvalConfig = DEFAULT_EVAL, prec: PrecisionConfig = DEFAULT_PRECISION) -> complex:
    return eisenstein_inf_fourier_est(z, s, ell, cfg, prec).value


def eisenstein_zero_fourier_est(
    z,
    s: complex,
    ell: int,
    b_source: str = "bruteforce",
    cfg: EvalConfig = DEFAULT_EVAL,
    prec: PrecisionConfig = DEFAULT_PRECISION,
    tail_rtol: float = 1e-2,
) -> Estimate:
    """Fourier expansion of ``E_{0,l}(z, s)``; there is no ``y^{(nu+1)/2}`` term."""
    z = _point(z)
    ell = _ell(ell)
    nu = nu_of_s(s)
    if b_source not in ("bruteforce", "derived"):
        raise DomainError("b_source must be 'bruteforce' or 'derived'")

    def const_fn(v):
        return constant_term_gamma(v, ell, prec) * coeff_b_zero(1, v, prec)

    if b_source == "bruteforce":
        def coeff(m):
            r = coeff_b_bruteforce(1, m, nu, cfg.b_truncation, prec)
            return r.value, r.tail
    else:
        def coeff(m):
            return coeff_b_derived_FE(1, m, nu, prec), 0.0

    est = _fourier_core(z, nu, ell, coeff, const_fn, 0j, cfg, tail_rtol)
    est.detail["provenance"] = "brute-force" if b_source == "bruteforce" else "derived-FE"
    return est


def eisenstein_zero_fourier(
    z, s, ell, b_source: str = "bruteforce", cfg: EvalConfig = DEFAULT_EVAL, prec: PrecisionConfig = DEFAULT_PRECISION
) -> complex:
    return eisenstein_zero_fourier_est(z, s, ell, b_source, cfg, prec).value


# ---------------------------------------------------------------------------
# direct sums
#
# Both series are sums over rows r (c at infinity, a at 0) of
#     sum_{n in Z} P_r(n) h(n + shift_r),   h(t) = y^s (t+iY)^A (t-iY)^B,
# with P_r periodic and A = alpha/2 - s, B = -alpha/2 - s, alpha = l - 1/2.
# Note exp(i alpha arg w) |w|^{-2s} = w^{alpha/2-s} conj(w)^{-alpha/2-s}.
# Each row is summed exactly on a window and by Euler-Maclaurin per residue
# class outside it.  Rows beyond the radius contribute their mean value
# (the only part that does not cancel) in closed form.

def _binom_series(p: complex, x: complex, K: int) -> np.ndarray:
    """Coefficients of ``(1 + x v)^p`` in powers of ``v``."""
    out = np.empty(K, dtype=complex)
    out[0] = 1
    for k in range(1, K):
        out[k] = out[k - 1] * (p - k + 1) / k * x
    return out


def _tail_integral(s: complex, alpha: float, Y: float, y: float, t0: np.ndarray, upper: bool) -> np.ndarray:
    """``int_{t0}^inf h(t) dt`` (``upper``) or ``int_{-inf}^{-t0} h(t) dt``, ``t0 > |Y|``."""
    sig = 1.0 if Y > 0 else -1.0
    if not upper:
        sig = -sig
    K = _SERIES_TERMS
    g = np.convolve(_binom_series(alpha / 2 - s, 1j * sig, K), _binom_series(-alpha / 2 - s, -1j * sig, K))[:K]
    v0 = abs(Y) / np.asarray(t0, dtype=float)
    k = np.arange(K)
    expo = 2 * s - 1 + k
    lv = np.log(v0)
    terms = g[None, :] * np.exp(np.outer(lv, np.ones(K)) * expo[None, :]) / expo[None, :]
    out = _pos_pow(y, s) * _pos_pow(abs(Y), 1 - 2 * s) * terms.sum(axis=1)
    if not upper:
        out = out * cmath.exp(1j * alpha * (1 if Y > 0 else -1) * PI)
    return out


def _h_and_derivs(t: np.ndarray, Y: float, A: complex, B: complex, y: float):
    """``h``, ``h'``, ``h'''`` and a bound-type estimate of ``|h^(5)|``."""
    wp = t + 1j * Y
    wm = t - 1j * Y
    s = -(A + B) / 2
    h = _pos_pow(y, s) * np.exp(A * np.log(wp) + B * np.log(wm))
    L1 = A / wp + B / wm
    L2 = -(A / wp**2 + B / wm**2)
    L3 = 2 * (A / wp**3 + B / wm**3)
    d1 = h * L1
    d3 = h * (L1**3 + 3 * L1 * L2 + L3)
    c5 = (abs(A) + abs(B) + 5.0) ** 5
    d5 = np.abs(h) * c5 / np.abs(wp) ** 5
    return h, d1, d3, d5


def _row_sum(P: np.ndarray, shift: float, Y: float, s: complex, alpha: float, y: float):
    """``sum_n P[n mod q] h(n + shift)`` over all integers ``n``.

    Returns ``(value, error, mean_part)``, ``mean_part`` being the Poisson
    zero-mode ``mean(P) * int h``.
    """
    q = len(P)
    A = alpha / 2 - s
    B = -alpha / 2 - s
    W = WINDOW_FACTOR * max(abs(Y), q)
    n_lo = math.ceil(-shift - W)
    n_hi = math.floor(-shift + W)
    n = np.arange(n_lo, n_hi + 1)
    Pn = P[n % q]
    keep = Pn != 0
    t = n[keep] + shift
    h, _, _, _ = _h_and_derivs(t, Y, A, B, y)
    window = complex(np.sum(Pn[keep] * h))

    j = np.arange(q)
    # upper tail: n = n_hi + 1 + j + k q, k >= 0
    nu_ = n_hi + 1 + j
    Pu = P[nu_ % q]
    ku = Pu != 0
    tu = nu_[ku] + shift
    hu, d1u, d3u, d5u = _h_and_derivs(tu, Y, A, B, y)
    Iu = _tail_integral(s, alpha, Y, y, tu, upper=True)
    up = Iu / q + hu / 2 - q / 12 * d1u + q**3 / 720 * d3u
    # lower tail: n = n_lo - 1 - j - k q; g(tau) = h(-tau), odd derivatives flip sign
    nl = n_lo - 1 - j
    Pl = P[nl % q]
    kl = Pl != 0
    tl = nl[kl] + shift
    hl, d1l, d3l, d5l = _h_and_derivs(tl, Y, A, B, y)
    Il = _tail_integral(s, alpha, Y, y, -tl, upper=False)
    lo = Il / q + hl / 2 + q / 12 * d1l - q**3 / 720 * d3l

    value = window + complex(np.sum(Pu[ku] * up)) + complex(np.sum(Pl[kl] * lo))
    err = q**5 / 30240 * (float(np.sum(np.abs(Pu[ku]) * d5u)) + float(np.sum(np.abs(Pl[kl]) * d5l)))
    mean_part = float(np.mean(P)) * _pos_pow(y, s) * _pos_pow(abs(Y), 1 - 2 * s) * _mean_integral(s, alpha, Y)
    return value, err, mean_part


def _mean_integral(s: complex, alpha: float, Y: float) -> complex:
    """``int_R exp(i alpha arg(u + i sgn Y)) (1+u^2)^{-s} du`` in closed form."""
    a = alpha if Y > 0 else -alpha
    return (
        PI * cmath.exp(1j * a * PI / 2) * gamma(2 * s - 1) * _pos_pow(2, 2 - 2 * s)
        * rgamma(s + a / 2) * rgamma(s - a / 2)
    )


@lru_cache(maxsize=4096)
def _inf_row_pattern(c: int) -> np.ndarray:
    # (c/d) restricted to d = 1 mod 4; a character mod |c| in d because 4 | c
    q = abs(c)
    P = np.zeros(q, dtype=float)
    for r in range(1, q, 4):
        P[r] = kronecker(c, r)
    P.setflags(write=False)
    return P


@lru_cache(maxsize=4096)
def _zero_row_pattern(a: int) -> np.ndarray:
    # theta(gamma) = (-b/|a|) for any completion with c > 0; indexed by n = -b
    P = jacobi_row(abs(a)).astype(float)
    P.setflags(write=False)
    return P


@lru_cache(maxsize=8)
def _odd_totient_ratio(M: int) -> np.ndarray:
    """``rho(m) = phi(m')/m'`` with ``m'`` the odd part of ``m``, for ``m < M``."""
    phi = np.arange(M, dtype=np.int64)
    for p in range(2, M):
        if phi[p] == p:
            phi[p::p] -= phi[p::p] // p
    m = np.arange(M, dtype=float)
    m[0] = 1
    rho = phi / m
    rho[0::2] *= 2  # undo the factor (1 - 1/2) for even m
    rho[0] = 0
    return rho


def _dirichlet_tail(m0: int, s: complex, odd_only: bool) -> Tuple[complex, float]:
    """``sum_{m > m0} rho(m) m^{2-4s}`` (odd ``m`` only if asked)."""
    M1 = max(20000, 8 * (m0 + 1))
    rho = _odd_totient_ratio(M1)
    m = np.arange(m0 + 1, M1)
    if odd_only:
        m = m[m % 2 == 1]
    head = complex(np.sum(rho[m] * np.exp((2 - 4 * s) * np.log(m.astype(float)))))
    # remainder from the mean value of rho over the last stretch
    last = np.arange(M1 // 2, M1)
    if odd_only:
        last = last[last % 2 == 1]
        density = 0.5
    else:
        density = 1.0
    mean_rho = float(np.mean(rho[last]))
    rem = density * mean_rho * _pos_pow(M1, 3 - 4 * s) / (4 * s - 3)
    return head + rem, 0.1 * abs(rem)


def _direct_sum(z: UpperHalfPoint, s: complex, ell: int, cusp: str, radius: int) -> Estimate:
    x, y = z.x, z.y
    alpha = ell - 0.5
    sigma = s.real
    total = 0j
    err = 0.0
    fluct_block = 0.0
    rows = 0
    if cusp == "inf":
        total += _pos_pow(y, s)
        row_ids = [c for m in range(1, radius // 4 + 1) for c in (4 * m, -4 * m)]
        kappa = 1.0 + 0j
    else:
        row_ids = [a for a in range(-radius, radius + 1) if a % 4 == 1]
        row_ids.sort(key=lambda a: (abs(a), a))
        kappa = _pos_pow(4, -s)
    for r in row_ids:
        if cusp == "inf":
            P = _inf_row_pattern(r)
            shift, Y = r * x, r * y
        else:
            P = _zero_row_pattern(r)
            shift, Y = -r * x, -r * y
        val, e, mean_part = _row_sum(P, shift, Y, s, alpha, y)
        total += kappa * val
        err += abs(kappa) * e
        if 2 * abs(r) > radius:
            fluct_block += abs(kappa * (val - mean_part))
        rows += 1
    # rows beyond the radius: mean part in closed form, fluctuating part extrapolated
    if cusp == "inf":
        m0 = math.isqrt(radius // 4)
        D, De = _dirichlet_tail(m0, s, odd_only=False)
        J = _mean_integral(s, alpha, 1.0) + _mean_integral(s, alpha, -1.0)
        mean_tail = 0.25 * _pos_pow(y, s) * _pos_pow(4 * y, 1 - 2 * s) * J * D
        mean_err = abs(0.25 * _pos_pow(y, s) * _pos_pow(4 * y, 1 - 2 * s) * J) * De
    else:
        m0 = math.isqrt(radius)
        D, De = _dirichlet_tail(m0, s, odd_only=True)
        J = _mean_integral(s, alpha, -1.0)
        mean_tail = kappa * _pos_pow(y, s) * _pos_pow(y, 1 - 2 * s) * J * D
        mean_err = abs(kappa * _pos_pow(y, s) * _pos_pow(y, 1 - 2 * s) * J) * De
    total += mean_tail
    expo = 2 * sigma - 1.5
    fluct_tail = fluct_block / (2**expo - 1) if expo > 0 else math.inf
    z2 = zeta2(4 * s - 1)
    value = z2 * total
    error = abs(z2) * (err + mean_err + fluct_tail)
    return Estimate(
        value,
        error,
        {
            "rows": rows,
            "radius": radius,
            "em_error": abs(z2) * err,
            "row_tail": abs(z2) * (mean_err + fluct_tail),
            "provenance": "direct-sum",
        },
    )


def _check_direct(s: complex) -> complex:
    s = complex(s)
    if s.real <= 1:
        raise DomainError("the direct cusp sums converge only for Re(s) > 1")
    return s


def eisenstein_inf_direct_est(z, s: complex, ell: int, cfg: EvalConfig = DEFAULT_EVAL) -> Estimate:
    """``zeta2(4s-1) [y^s + sum (c/d) ((cz+d)/|cz+d|)^{l-1/2} (y/|cz+d|^2)^s]`` over
    ``c = 0 mod 4``, ``c != 0``, ``d = 1 mod 4``, ``gcd(c, d) = 1``."""
    return _direct_sum(_point(z), _check_direct(s), _ell(ell), "inf", cfg.cusp_sum_radius)


def eisenstein_inf_direct(z, s, ell, cfg: EvalConfig = DEFAULT_EVAL) -> complex:
    return eisenstein_inf_direct_est(z, s, ell, cfg).value


def eisenstein_zero_direct_est(z, s: complex, ell: int, cfg: EvalConfig = DEFAULT_EVAL) -> Estimate:
    """``zeta2(4s-1) sum theta(gamma) (j/|j|)^{l-1/2} (y/|2az+2b|^2)^s`` with
    ``j = -2az - 2b`` over top rows ``(a, b)``, ``a = 1 mod 4``."""
    return _direct_sum(_point(z), _check_direct(s), _ell(ell), "zero", cfg.cusp_sum_radius)


def eisenstein_zero_direct(z, s, ell, cfg: EvalConfig = DEFAULT_EVAL) -> complex:
    return eisenstein_zero_direct_est(z, s, ell, cfg).value


def direct_summand_inf(z, s: complex, ell: int, c: int, d: int) -> complex:
    """One term of the cusp-infinity sum, straight from the definition."""
    z = _point(z).z
    w = c * z + d
    alpha = _ell(ell) - 0.5
    return kronecker(c, d) * principal_power(w / abs(w), alpha) * principal_power(z.imag / abs(w) ** 2, s)


def direct_summand_zero(z, s: complex, ell: int, gamma_elem: MetaElement) -> complex:
    """One term of the cusp-0 sum for a completed element ``((a,b),(c,d))`` with ``c > 0``."""
    z = _point(z).z
    a, b, c, d = (round(v) for v in gamma_elem.matrix_tuple)
    if c <= 0:
        raise DomainError("the cusp-0 sum uses completions with c > 0")
    j = -2 * a * z - 2 * b
    alpha = _ell(ell) - 0.5
    return kronecker(c, d) * principal_power(j / abs(j), alpha) * principal_power(z.imag / abs(j) ** 2, s)


# ---------------------------------------------------------------------------
# the classical functional equation

def classical_fe_factor(s: complex, ell: int, prec: PrecisionConfig = DEFAULT_PRECISION) -> complex:
    """``-i^{-l} 2^{6s-9/2} pi^{1/2-4s} / (1 - 2^{1-4s}) cos(2 pi s) Gamma(2s-1/2) Gamma(s-1/4+l/2) Gamma(s+1/4-l/2)``."""
    s = complex(s)
    ell = _ell(ell)
    den = 1 - _pos_pow(2, 1 - 4 * s)
    if abs(den) < prec.pole_guard:
        raise PoleError("the classical FE factor has a pole", location=s)
    return (
        -((1j) ** (-ell % 4))
        * _pos_pow(2, 6 * s - 4.5)
        * _pos_pow(PI, 0.5 - 4 * s)
        / den
        * cmath.cos(2 * PI * s)
        * gamma(2 * s - 0.5, prec)
        * gamma(s - 0.25 + ell / 2, prec)
        * gamma(s + 0.25 - ell / 2, prec)
    )


def classical_fe_zero_weight(s: complex) -> complex:
    """``(1-i) 2^{-2s-1} (4 - 16^s)``."""
    s = complex(s)
    return (1 - 1j) * _pos_pow(2, -2 * s - 1) * (4 - _pos_pow(16, s))


@dataclass(frozen=True)
class FEResidual:
    residual: complex
    lhs: Estimate
    rhs: complex
    budget: float
    factor: complex

    @property
    def relative(self) -> float:
        return abs(self.residual) / max(abs(self.rhs), 1e-300)


def classical_fe_check(
    z, s: complex, ell: int, cfg: EvalConfig = DEFAULT_EVAL, prec: PrecisionConfig = DEFAULT_PRECISION
) -> FEResidual:
    """``E_inf(z, 1-s) - factor * (E_inf(z, s) + w(s) E_0(z, s))``.

    The left side uses continued ``a``-coefficients at ``nu = 1 - 2s`` with
    integrated-by-parts Whittaker integrals; the right side uses the closed
    ``a`` and truncated-series ``b`` coefficients at ``nu = 2s - 1``.
    """
    z = _point(z)
    ell = _ell(ell)
    s = _check_direct(s)
    lhs = eisenstein_inf_fourier_est(z, 1 - s, ell, cfg, prec)
    e_inf = eisenstein_inf_fourier_est(z, s, ell, cfg, prec)
    e_zero = eisenstein_zero_fourier_est(z, s, ell, "bruteforce", cfg, prec)
    F = classical_fe_factor(s, ell, prec)
    w = classical_fe_zero_weight(s)
    rhs = F * (e_inf.value + w * e_zero.value)
    budget = lhs.error + abs(F) * (e_inf.error + abs(w) * e_zero.error)
    return FEResidual(lhs.value - rhs, lhs, rhs, budget, F)


def classical_fe_residual(
    z, s: complex, ell: int, cfg: EvalConfig = DEFAULT_EVAL, prec: PrecisionConfig = DEFAULT_PRECISION
) -> complex:
    return classical_fe_check(z, s, ell, cfg, prec).residual


# ---------------------------------------------------------------------------
# K-finite vectors

def phi_kfinite(eps: int, nu: complex, ell: int, g: MetaElement) -> complex:
    """``phi(k_theta a_u n_-) = u^{1-nu} exp(-eps (1/2 + l) i theta)``."""
    if eps not in (1, -1):
        raise DomainError("eps must be +1 or -1")
    ell = _ell(ell)
    kan = iwasawa_kan(g)
    return cmath.exp((1 - complex(nu)) * math.log(kan.u) - eps * (0.5 + ell) * 1j * kan.theta)


def intertwine_kfinite_check(
    eps: int,
    nu: complex,
    ell: int,
    cfg: EvalConfig = DEFAULT_EVAL,
    theta: float = 0.37,
    prec: PrecisionConfig = DEFAULT_PRECISION,
) -> complex:
    """``int phi_{eps,-nu,l}(k_theta s n_x) dx`` minus
    ``i^{-eps l} (1 - eps i)/sqrt2 * gamma-factor * phi_{eps,nu,l}(k_theta)``.

    The integrand is built by group multiplication, so the check also
    exercises the cocycle and the KAN decomposition.
    """
    nu = complex(nu)
    ell = _ell(ell)
    if nu.real <= 0:
        raise DomainError("the intertwining integral converges only for Re(nu) > 0")
    kt = k_elem(theta)
    ks = multiply(kt, s_elem())

    def f(x):
        return phi_kfinite(eps, -nu, ell, multiply(ks, n_elem(x)))

    tol = min(cfg.quad_tol, 1e-10)
    num, err = _quad.quad_complex_err(f, -np.inf, np.inf, tol)
    expected = (
        (1j) ** (-eps * ell % 4) * (1 - eps * 1j) / SQRT2
        * kfinite_gamma_factor(eps, nu, ell, prec) * phi_kfinite(eps, nu, ell, kt)
    )
    return num - expected


def intertwine_scalar_residual(eps: int, nu: complex, prec: PrecisionConfig = DEFAULT_PRECISION) -> complex:
    """Composition of the two scalars at weight 0 minus ``2 pi eps i cot(pi nu)/nu``."""
    nu = complex(nu)

    def scalar(v):
        return (1 - eps * 1j) / SQRT2 * kfinite_gamma_factor(eps, v, 0, prec)

    return scalar(nu) * scalar(-nu) - 2 * PI * eps * 1j / cmath.tan(PI * nu) / nu


def smooth_transform_check(eps: int, nu: complex, ell: int, xs: Sequence[float]) -> float:
    """Max over ``xs`` of ``|f_inf(x) - sgn(-x)^{eps/2} |x|^{nu-1} f_0(-1/x)|`` for
    ``f = phi_{eps,nu,l}``, ``f_0(x) = f(n_x)``, ``f_inf(x) = f(s^{-1} n_x)``."""
    nu = complex(nu)
    s_inv = inverse(s_elem())
    worst = 0.0
    for x in xs:
        x = float(x)
        if x == 0:
            raise DomainError("the grid must exclude 0")
        f_inf = phi_kfinite(eps, nu, ell, multiply(s_inv, n_elem(x)))
        f_0 = phi_kfinite(eps, nu, ell, n_elem(-1.0 / x))
        rhs = sgn_half_power(-x, eps) * _pos_pow(abs(x), nu - 1) * f_0
        worst = max(worst, abs(f_inf - rhs))
    return worst


__all__ = [
    "UpperHalfPoint",
    "WeightParam",
    "Estimate",
    "FEResidual",
    "nu_of_s",
    "s_of_nu",
    "auto_ibp_depth",
    "whittaker_W",
    "whittaker_W_est",
    "whittaker_W_alt",
    "whittaker_W_alt_est",
    "kfinite_gamma_factor",
    "constant_term_gamma",
    "eisenstein_inf_direct",
    "eisenstein_inf_direct_est",
    "eisenstein_zero_direct",
    "eisenstein_zero_direct_est",
    "eisenstein_inf_fourier",
    "eisenstein_inf_fourier_est",
    "eisenstein_zero_fourier",
    "eisenstein_zero_fourier_est",
    "direct_summand_inf",
    "direct_summand_zero",
    "classical_fe_factor",
    "classical_fe_zero_weight",
    "classical_fe_check",
    "classical_fe_residual",
    "phi_kfinite",
    "intertwine_kfinite_check",
    "intertwine_scalar_residual",
    "smooth_transform_check",
]
