"""Fourier coefficients of the metaplectic Eisenstein distributions.

Four families appear: ``a`` (cusp at infinity), ``b`` (cusp at 0) and their
images ``c``, ``d`` under the intertwining operator.  For each family the
module offers the closed or continued formula and, where one exists, a
truncated-series oracle valid for ``Re nu > 1``.

The sign ``eps`` enters only through four helpers: :func:`conj_minus_eps`,
:func:`one_plus_eps_i`, :func:`sgn_minus_a_half` and the residue test
``eps*n mod 4``.  Keeping them separate makes sign slips easy to localise.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, Optional, Union

import numpy as np

from .char_sums import (
    chi4,
    chi8,
    factorize,
    gauss_sum_closed,
    inv_2power_mod_odd,
    jacobi_row,
    kronecker,
    kloosterman_2power_closed,
    two_adic_split,
    valuation,
)
from .config import DEFAULT_PRECISION, PrecisionConfig
from .errors import DomainError, PoleError, UnavailableError, ZeroDivisorError
from .special_funcs import (
    G0,
    G_pair,
    kronecker_L,
    kronecker_L_odd,
    riemann_zeta,
    sgn_half_power,
    zeta2,
)


class _Infinity:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def _is_inf(n) -> bool:
    return n is INF or (isinstance(n, float) and math.isinf(n)) or (isinstance(n, str) and n.lower() == "inf")


def _pow(base: float, expo: complex) -> complex:
    """``base**expo`` for a positive real base."""
    return cmath.exp(expo * math.log(base))


# ---------------------------------------------------------------------------
# the eps touchpoints

def conj_minus_eps(z: complex, eps: int) -> complex:
    """``C_{-eps}(z)``: conjugate when ``eps = 1``, identity when ``eps = -1``."""
    _check_eps(eps)
    return z.conjugate() if eps == 1 else z


def one_plus_eps_i(eps: int) -> complex:
    _check_eps(eps)
    return 1 + eps * 1j


def sgn_minus_a_half(a: int, eps: int) -> complex:
    """``sgn(-a)^{eps/2}``."""
    return sgn_half_power(-a, eps)


def _check_eps(eps):
    if eps not in (1, -1):
        raise DomainError("eps must be +1 or -1")


@dataclass(frozen=True)
class SpectralPoint:
    eps: int
    nu: complex

    def __post_init__(self):
        _check_eps(self.eps)
        object.__setattr__(self, "nu", complex(self.nu))

    @property
    def s(self) -> complex:
        return (self.nu + 1) / 2


@dataclass(frozen=True)
class SeriesResult:
    """A truncated series value with its tail bound."""
    value: complex
    tail: float
    terms: int


@dataclass(frozen=True)
class Sourced:
    value: complex
    provenance: str
    error: float = 0.0


# ---------------------------------------------------------------------------
# the s * t split and the L-factor

@dataclass(frozen=True)
class SplitST:
    s_part: int
    t_part: int


def split_st(eps: int, n: int) -> SplitST:
    _check_eps(eps)
    if n == 0:
        raise DomainError("split_st needs n != 0")
    s_part, t_abs = 1, 1
    for p, e in factorize(n).items():
        if e % 2 == 0:
            s_part *= p ** e
        else:
            t_abs *= p ** e
    sign = eps * (1 if n > 0 else -1)
    return SplitST(s_part, sign * t_abs)


def _odd_prime_products(sp: SplitST, nu: complex) -> complex:
    t = sp.t_part
    out = 1 + 0j
    for p, e in factorize(t).items() if abs(t) > 1 else ():
        if p == 2:
            continue
        out *= sum(_pow(p, -j * nu) for j in range(0, e, 2))
    if sp.s_part > 1:
        for p, e in factorize(sp.s_part).items():
            if p == 2:
                continue
            geo = sum(_pow(p, -j * nu) for j in range(0, e - 1, 2))
            out *= (1 - kronecker(t, p) * _pow(p, -nu - 0.5)) * geo + _pow(p, -e * nu)
    return out


def script_L(eps: int, n: int, nu: complex, cfg: PrecisionConfig = DEFAULT_PRECISION) -> complex:
    """The L-function factor of the nonzero-index coefficients.

    ``p2 * (1 - (eps n/2) 2^{-nu-1/2}) * L(nu+1/2, (t/.))`` times finite
    products over the odd primes of ``s`` and ``t``.  The three leading
    factors are evaluated together: the 2-adic Euler factors cancel and
    leave the odd-``d`` part of ``L``, which is entire unless ``t = 1``.
    """
    nu = complex(nu)
    sp = split_st(eps, n)
    head = kronecker_L_odd(nu + 0.5, sp.t_part, cfg)
    return head * _odd_prime_products(sp, nu)


def script_L_literal(eps: int, n: int, nu: complex, cfg: PrecisionConfig = DEFAULT_PRECISION) -> complex:
    """Same as :func:`script_L` but multiplying the displayed factors one by one."""
    nu = complex(nu)
    sp = split_st(eps, n)
    t = sp.t_part
    p2 = (1 - kronecker(t, 2) * _pow(2, -nu - 0.5)) if sp.s_part % 2 == 0 else 1.0
    two = 1 - kronecker(eps * n, 2) * _pow(2, -nu - 0.5)
    return p2 * two * kronecker_L(nu + 0.5, t, cfg) * _odd_prime_products(sp, nu)


# ---------------------------------------------------------------------------
# a-coefficients

def prefactor_c(eps: int, n: int, nu: complex, printed: bool = False) -> complex:
    """Dirichlet-polynomial prefactor with ``a(n) = prefactor_c * script_L``.

    ``printed=True`` reproduces the formula exactly as usually stated; the
    default carries the two corrections that the Kloosterman series
    demands: a factor ``chi8(eps n)`` in the
    ``eps n = 1 (mod 4)`` case, and the ``= 1 (mod 4)`` gate applied to the
    odd part of ``eps n`` rather than of ``n``.
    """
    _check_eps(eps)
    if n == 0:
        raise DomainError("prefactor_c needs n != 0")
    nu = complex(nu)
    pre = one_plus_eps_i(eps)
    en = eps * n
    ell = valuation(n, 2)
    n1 = n // (1 << ell)  # signed odd part
    if ell == 0:
        if en % 4 == 3:
            return -pre * _pow(4, -nu - 1)
        weight = 1 if printed else chi8(en)
        return pre * (_pow(4, -nu - 1) + weight * _pow(8, -nu - 0.5))
    if ell == 1:
        return -pre * _pow(4, -nu - 1)
    acc = sum(2 ** k * _pow(2 ** (k + 2), -nu - 1) for k in range(0, ell - 1, 2))
    if ell % 2 == 1:
        acc -= 2 ** (ell - 1) * _pow(2 ** (ell + 1), -nu - 1)
    else:
        acc += chi4(eps * n1) * 2 ** ell * _pow(2 ** (ell + 2), -nu - 1)
        gate = n1 if printed else eps * n1
        if gate % 4 == 1:
            acc += chi8(eps * n1) * 2 ** (ell + 1.5) * _pow(2 ** (ell + 3), -nu - 1)
    return pre * acc


def coeff_a(eps: int, n, nu: complex, cfg: PrecisionConfig = DEFAULT_PRECISION) -> complex:
    """``a_{eps,nu}(n)`` in closed (continued) form; ``n`` may be :data:`INF`."""
    _check_eps(eps)
    nu = complex(nu)
    if _is_inf(n):
        return zeta2(2 * nu + 1, cfg)
    n = int(n)
    if n == 0:
        return one_plus_eps_i(eps) * _pow(2, -2 * nu - 2) * riemann_zeta(2 * nu, cfg)
    return prefactor_c(eps, n, nu) * script_L(eps, n, nu, cfg)


@lru_cache(maxsize=8)
def _c_split_data(C: int):
    out = []
    for c in range(1, C + 1):
        sp = two_adic_split(c)
        out.append((sp.c_odd, sp.k, inv_2power_mod_odd(sp.k, sp.c_odd)))
    return tuple(out)


@lru_cache(maxsize=256)
def _kloosterman_row(m: int, C: int) -> np.ndarray:
    """``K_{-1}(m; 4c)`` for ``c = 1..C`` via the 2-power / odd-part split."""
    data = _c_split_data(C)
    row = np.empty(C, dtype=complex)
    for i, (c_odd, k, tbar) in enumerate(data):
        row[i] = kloosterman_2power_closed(c_odd, m, k) * gauss_sum_closed(m * tbar, c_odd)
    row.setflags(write=False)
    return row


def coeff_a_bruteforce(
    eps: int, n: int, nu: complex, C: int = 20000, cfg: PrecisionConfig = DEFAULT_PRECISION
) -> SeriesResult:
    """``eps i 4^{-nu-1} zeta2(2nu+1) sum_{c<=C} c^{-nu-1} C_{-eps}(K_{-1}(eps n;4c))``."""
    _check_eps(eps)
    nu = complex(nu)
    if nu.real <= 1:
        raise DomainError("the a-series converges only for Re(nu) > 1")
    if C < 100:
        raise DomainError("truncation C must be >= 100")
    K = _kloosterman_row(eps * int(n), int(C))
    if eps == 1:
        K = np.conj(K)
    c = np.arange(1, C + 1, dtype=float)
    w = np.exp((-nu - 1) * np.log(c))
    scale = eps * 1j * _pow(4, -nu - 1) * zeta2(2 * nu + 1, cfg)
    value = scale * complex(np.dot(w, K))
    sig = nu.real
    tail = abs(scale) * 4 * C ** (1 - sig) / (sig - 1)
    return SeriesResult(value, tail, int(C))


# ---------------------------------------------------------------------------
# b-coefficients

def coeff_b_zero(eps: int, nu: complex, cfg: PrecisionConfig = DEFAULT_PRECISION) -> complex:
    _check_eps(eps)
    nu = complex(nu)
    return eps * 1j * _pow(2, -nu - 1) * (1 - _pow(2, -2 * nu)) * riemann_zeta(2 * nu, cfg)


def coeff_b_inf() -> complex:
    return 0j


def _lambda_row(a: int) -> np.ndarray:
    """``lambda(a, b)`` for ``b = 0..|a|-1`` straight from its definition."""
    m = abs(a)
    jac = jacobi_row(m).astype(float)  # (b/|a|)
    b = np.arange(m)
    if a < 0:
        # (b/a) = (b/-1)(b/|a|) and (b/-1) = 1 for b >= 0
        hil = np.where(b > 0, -1.0, 1.0)  # (a,-b)_H with a < 0: -1 iff -b < 0
    else:
        hil = np.ones(m)
    lam = jac * hil
    if m == 1:
        lam[:] = 1.0  # lambda(1, 0) = (0/1) = 1
    return lam


@lru_cache(maxsize=2)
def _b_row_transforms(A: int):
    """Discrete Fourier transforms of the ``lambda`` rows, one per ``a``.

    ``sum_b lambda(a, b) e(n b / a)`` depends on ``n mod |a|`` only, so a
    single length-``|a|`` transform per row answers every ``n``.
    """
    plus, minus = [], []
    for a in range(1, A + 1, 4):
        # -b/a in [0,1): b = 0, -1, ..., -(a-1); with u = -b mod a the phase is e(n u / a)
        plus.append(np.fft.ifft(_lambda_row(a)) * a)
    for m in range(3, A + 1, 4):
        # a = -m: -b/a = b/m in [0,1), phase e(-n b / m)
        minus.append(np.fft.fft(_lambda_row(-m)))
    return plus, minus


@lru_cache(maxsize=256)
def _b_half_sums(n: int, A: int):
    """Per-``a`` exponential sums of the two halves of the cusp-0 series.

    ``plus[j]`` belongs to ``a = 4j+1 > 0`` and sums over ``-b/a`` in [0,1),
    ``minus[j]`` to ``a = -(4j+3)``.
    """
    tp, tm = _b_row_transforms(A)
    apos = np.arange(1, A + 1, 4)
    aneg = np.arange(3, A + 1, 4)
    plus = np.array([row[n % a] for row, a in zip(tp, apos)], dtype=complex)
    minus = np.array([row[n % m] for row, m in zip(tm, aneg)], dtype=complex)
    return apos.astype(float), plus, aneg.astype(float), minus


@lru_cache(maxsize=4)
def _b_half_sums_direct(n: int, A: int):
    # the same sums evaluated term by term; kept to pin the transform version
    plus, minus = [], []
    for a in range(1, A + 1, 4):
        lam = _lambda_row(a)
        bs = -np.arange(a)
        plus.append(np.dot(lam[bs % a], np.exp(2j * np.pi * ((n * bs) % a) / a)))
    for m in range(3, A + 1, 4):
        lam = _lambda_row(-m)
        bs = np.arange(m)
        minus.append(np.dot(lam, np.exp(-2j * np.pi * ((n * bs) % m) / m)))
    return np.array(plus, dtype=complex), np.array(minus, dtype=complex)


def coeff_b_bruteforce(
    eps: int, n: int, nu: complex, A: int = 4000, cfg: PrecisionConfig = DEFAULT_PRECISION
) -> SeriesResult:
    """``b_{eps,nu}(n)`` from the point-mass expansion of the cusp-0 series.

    ``zeta2(2nu+1) sum_{0<|a|<=A} sum_b lambda(a,b) |2a|^{-nu-1}
    sgn(-a)^{eps/2} e(n b/a)`` with ``-b/a`` running over [0, 1).
    """
    _check_eps(eps)
    nu = complex(nu)
    if nu.real <= 1:
        raise DomainError("the b-series converges only for Re(nu) > 1")
    apos, plus, aneg, minus = _b_half_sums(int(n), int(A))
    wpos = np.exp((-nu - 1) * np.log(2 * apos))
    wneg = np.exp((-nu - 1) * np.log(2 * aneg))
    inner = sgn_minus_a_half(1, eps) * np.dot(wpos, plus) + sgn_minus_a_half(-1, eps) * np.dot(wneg, minus)
    z2 = zeta2(2 * nu + 1, cfg)
    sig = nu.real
    tail = abs(z2) * 2 ** (-sig - 1) * (0.5 * A ** (1 - sig) / (sig - 1) + A ** (-sig))
    return SeriesResult(z2 * complex(inner), tail, int(A))


# ---------------------------------------------------------------------------
# the functional-equation factors

def fe_factor(eps: int, nu: complex, cfg: PrecisionConfig = DEFAULT_PRECISION) -> complex:
    """``F = (1-eps i) 2^{2nu-1} (1-2^{-2nu-1})^{-1} G0(2nu)``."""
    nu = complex(nu)
    den = 1 - _pow(2, -2 * nu - 1)
    if abs(den) < cfg.pole_guard:
        raise PoleError("FE factor has a pole", location=nu)
    return (1 - eps * 1j) * _pow(2, 2 * nu - 1) / den * G0(2 * nu, cfg)


def fe_factor2(eps: int, nu: complex) -> complex:
    """``F2 = (1-eps i) 2^{-nu} (1-2^{2nu})``."""
    nu = complex(nu)
    return (1 - eps * 1j) * _pow(2, -nu) * (1 - _pow(2, 2 * nu))


# ---------------------------------------------------------------------------
# c- and d-coefficients

def coeff_c(eps: int, n, nu: complex, cfg: PrecisionConfig = DEFAULT_PRECISION) -> complex:
    _check_eps(eps)
    nu = complex(nu)
    if _is_inf(n):
        return (1 - eps * 1j) * _pow(2, 2 * nu - 1) * G0(2 * nu, cfg) * riemann_zeta(2 * nu + 1, cfg)
    n = int(n)
    if n == 0:
        return (1 - _pow(2, 2 * nu - 1)) * G0(2 * nu, cfg) * riemann_zeta(2 * nu, cfg)
    sg = 1 if n > 0 else -1
    return G_pair(eps, sg, nu, cfg) * _pow(abs(n), -nu) * coeff_a(eps, n, -nu, cfg)


def _circle_mean(fn, center: complex, radius: float, points: int = 16) -> complex:
    # mean value property: exact for analytic fn up to O(radius^points)
    vals = [fn(center + radius * cmath.exp(2j * math.pi * (k + 0.5) / points)) for k in range(points)]
    return sum(vals) / points


def coeff_b_derived_FE(
    eps: int, n: int, nu: complex, cfg: PrecisionConfig = DEFAULT_PRECISION
) -> complex:
    """``b(n) = (c(n)/F - a(n)) / F2`` from the distributional functional equation.

    ``F`` vanishes with ``G0(2 nu)`` at half-odd ``nu``; there the quotient
    is a removable singularity and is evaluated by averaging over a small
    circle around ``nu``.
    """
    _check_eps(eps)
    nu = complex(nu)
    if n == 0:
        raise DomainError("use coeff_b_zero for n = 0")
    f2 = fe_factor2(eps, nu)
    if abs(f2) < cfg.pole_guard:
        raise ZeroDivisorError("F2 vanishes at this nu")

    def raw(v):
        F = fe_factor(eps, v, cfg)
        return (coeff_c(eps, n, v, cfg) / F - coeff_a(eps, n, v, cfg)) / fe_factor2(eps, v)

    if abs(cmath.cos(math.pi * nu)) < 1e-4:
        return _circle_mean(raw, nu, 1e-2)
    F = fe_factor(eps, nu, cfg)
    if F == 0:
        raise ZeroDivisorError("F vanishes at this nu")
    return raw(nu)


def coeff_d(
    eps: int, n, nu: complex, cfg: PrecisionConfig = DEFAULT_PRECISION, A: int = 4000
) -> Sourced:
    """``d_{eps,nu}(n)``; for ``n != 0`` the ``b`` value at ``-nu`` comes from
    the series when ``Re(-nu) > 1.2`` and from the functional equation
    otherwise.  The choice is recorded in ``provenance``."""
    _check_eps(eps)
    nu = complex(nu)
    if _is_inf(n):
        val = _pow(2, nu) * (1 - _pow(2, 2 * nu)) * G0(2 * nu, cfg) * riemann_zeta(2 * nu + 1, cfg)
        return Sourced(val, "closed-form")
    n = int(n)
    if n == 0:
        return Sourced(0j, "closed-form")
    sg = 1 if n > 0 else -1
    pref = G_pair(eps, sg, nu, cfg) * _pow(abs(n), -nu)
    if (-nu).real > 1.2:
        r = coeff_b_bruteforce(eps, n, -nu, A, cfg)
        return Sourced(pref * r.value, "brute-force", abs(pref) * r.tail)
    try:
        b = coeff_b_derived_FE(eps, n, -nu, cfg)
    except (ZeroDivisorError, PoleError) as exc:
        raise UnavailableError(f"no admissible source for b at nu={-nu}: {exc}") from exc
    return Sourced(pref * b, "derived-FE")


# ---------------------------------------------------------------------------
# residuals of the functional equation

@dataclass(frozen=True)
class CuspResiduals:
    p_inf: complex
    sigma_inf: complex
    p_zero: complex
    sigma_zero: complex
    scale: float

    def as_tuple(self):
        return (self.p_inf, self.sigma_inf, self.p_zero, self.sigma_zero)

    def max_relative(self) -> float:
        return max(abs(r) for r in self.as_tuple()) / self.scale


def cuspidality_residuals(eps: int, nu: complex, cfg: PrecisionConfig = DEFAULT_PRECISION) -> CuspResiduals:
    """The four constant-term identities of the functional equation.

    Each residual is ``lhs - F * (...)``; ``scale`` is the largest modulus
    among the terms entering any of them.
    """
    _check_eps(eps)
    nu = complex(nu)
    F = fe_factor(eps, nu, cfg)
    F2 = fe_factor2(eps, nu)
    a0, ainf = coeff_a(eps, 0, nu, cfg), coeff_a(eps, INF, nu, cfg)
    b0, binf = coeff_b_zero(eps, nu, cfg), coeff_b_inf()
    c0, cinf = coeff_c(eps, 0, nu, cfg), coeff_c(eps, INF, nu, cfg)
    d0, dinf = coeff_d(eps, 0, nu, cfg).value, coeff_d(eps, INF, nu, cfg).value
    mi = -eps * 1j
    terms = {
        "p_inf": (c0, F * a0, F * F2 * b0),
        "sigma_inf": (cinf, F * ainf, F * F2 * binf),
        "p_zero": (mi * d0, F * mi * b0, F * F2 * a0),
        "sigma_zero": (mi * dinf, F * mi * binf, F * F2 * ainf),
    }
    res = {k: v[0] - v[1] - v[2] for k, v in terms.items()}
    scale = max(abs(x) for v in terms.values() for x in v)
    return CuspResiduals(res["p_inf"], res["sigma_inf"], res["p_zero"], res["sigma_zero"], scale)


# ---------------------------------------------------------------------------
# tables

@dataclass
class CoefficientTable:
    family: str
    eps: int
    nu: complex
    entries: Dict[int, complex] = field(default_factory=dict)
    provenance: Dict[int, str] = field(default_factory=dict)
    errors: Dict[int, float] = field(default_factory=dict)
    inf_coeff: complex = 0j
    bound: int = 0

    def __getitem__(self, n):
        if _is_inf(n):
            return self.inf_coeff
        return self.entries[n]


def build_coefficient_table(
    eps: int,
    nu: complex,
    n_range: Union[int, Iterable[int]],
    family: str = "a",
    source: str = "closed",
    cfg: PrecisionConfig = DEFAULT_PRECISION,
    C: int = 20000,
    A: int = 4000,
) -> CoefficientTable:
    """Assemble coefficients ``n`` in ``n_range`` (an int ``N`` means ``|n| <= N``).

    ``source`` is ``closed``, ``bruteforce`` or ``derived``.  For the ``b``
    family a ``closed`` request fills nonzero ``n`` from the functional
    equation, since no closed form exists there.
    """
    _check_eps(eps)
    nu = complex(nu)
    if isinstance(n_range, int):
        ns = list(range(-n_range, n_range + 1))
    else:
        ns = sorted(set(int(v) for v in n_range))
    table = CoefficientTable(family, eps, nu, bound=max((abs(v) for v in ns), default=0))
    if source not in ("closed", "bruteforce", "derived"):
        raise DomainError(f"unknown source {source!r}")

    def put(n, value, prov, err=0.0):
        table.entries[n] = complex(value)
        table.provenance[n] = prov
        table.errors[n] = float(err)

    if family == "a":
        table.inf_coeff = coeff_a(eps, INF, nu, cfg)
        for n in ns:
            if source == "bruteforce":
                r = coeff_a_bruteforce(eps, n, nu, C, cfg)
                put(n, r.value, "brute-force", r.tail)
            else:
                put(n, coeff_a(eps, n, nu, cfg), "closed-form")
    elif family == "b":
        table.inf_coeff = coeff_b_inf()
        for n in ns:
            if source == "bruteforce":
                r = coeff_b_bruteforce(eps, n, nu, A, cfg)
                put(n, r.value, "brute-force", r.tail)
            elif n == 0:
                put(n, coeff_b_zero(eps, nu, cfg), "closed-form")
            else:
                put(n, coeff_b_derived_FE(eps, n, nu, cfg), "derived-FE")
    elif family == "c":
        table.inf_coeff = coeff_c(eps, INF, nu, cfg)
        for n in ns:
            put(n, coeff_c(eps, n, nu, cfg), "closed-form")
    elif family == "d":
        table.inf_coeff = coeff_d(eps, INF, nu, cfg).value
        for n in ns:
            r = coeff_d(eps, n, nu, cfg, A)
            put(n, r.value, r.provenance, r.error)
    else:
        raise DomainError(f"unknown family {family!r}")
    return table
