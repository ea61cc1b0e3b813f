"""Verification suites: each compares two independent routes and reports
one :class:`Check` per comparison.  The CLI ``verify`` command runs these;
they are sized to finish in seconds, not to replace the test suite."""
from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from typing import Callable, Dict, List

import numpy as np

from . import char_sums as cs
from . import coefficients as co
from . import eisenstein as ei
from . import mpl_group as mg
from . import special_funcs as sf
from .config import DEFAULT_EVAL, DEFAULT_PRECISION, EvalConfig, PrecisionConfig


@dataclass(frozen=True)
class Check:
    label: str
    value: complex
    error: float  # the measured discrepancy
    budget: float
    provenance: str

    @property
    def passed(self) -> bool:
        return self.error <= self.budget


def _check(label, value, error, budget, provenance) -> Check:
    return Check(label, complex(value), float(error), float(budget), provenance)


def suite_group(trials: int = 200, seed: int = 7, **_) -> List[Check]:
    rng = random.Random(seed)

    def rand_elem():
        while True:
            a, b, c = (rng.uniform(-3, 3) for _ in range(3))
            if abs(a) > 0.2:
                d = (1 + b * c) / a
                return mg.MetaElement(a, b, c, d, rng.choice((1, -1)))

    worst_sign = worst_mat = 0.0
    for _ in range(trials):
        g1, g2, g3 = rand_elem(), rand_elem(), rand_elem()
        left = mg.multiply(mg.multiply(g1, g2), g3)
        right = mg.multiply(g1, mg.multiply(g2, g3))
        worst_sign = max(worst_sign, float(left.sign != right.sign))
        worst_mat = max(worst_mat, max(abs(p - q) for p, q in zip(left.matrix_tuple, right.matrix_tuple)))
    out = [
        _check("associativity: sign mismatches", worst_sign, worst_sign, 0.0, "closed-form"),
        _check("associativity: matrix deviation", worst_mat, worst_mat, 1e-10, "closed-form"),
    ]
    worst = 0.0
    for _ in range(trials):
        g = rand_elem()
        kan = mg.iwasawa_kan(g)
        back = kan.reconstruct()
        dev = max(abs(p - q) for p, q in zip(back.matrix_tuple, g.matrix_tuple))
        worst = max(worst, dev if back.sign == g.sign else math.inf)
    out.append(_check("KAN reconstruction", worst, worst, 1e-10, "closed-form"))
    bad = 0
    for _ in range(trials):
        els = []
        for _ in range(2):
            while True:
                c = 4 * rng.randint(-6, 6)
                d = 4 * rng.randint(-6, 6) + 1
                if math.gcd(c, d) == 1:
                    break
            _, a, b = cs.egcd(d, -c)  # a d - b c = 1, so a = 1 mod 4
            els.append(mg.gamma14_element(a, b, c, d))
        prod = mg.multiply(els[0], els[1])
        bad += not mg.gamma14_member(prod)
    out.append(_check("Gamma_1(4) closure failures", bad, bad, 0, "closed-form"))
    return out


def suite_sums(c_max: int = 199, n_max: int = 12, k_max: int = 5, **_) -> List[Check]:
    worst = 0.0
    for c in range(1, c_max + 1, 2):
        ns = list(range(-n_max, n_max + 1))
        brute = cs.gauss_sums_bruteforce_many(ns, c)
        closed = np.array([cs.gauss_sum_closed(n, c) for n in ns])
        worst = max(worst, float(np.max(np.abs(brute - closed))))
    out = [_check(f"Gauss sums, odd c <= {c_max}", worst, worst, 1e-8, "brute-force")]
    worst = 0.0
    for k in range(0, k_max + 1):
        mod = 2 ** (k + 2)
        for c in range(1, mod, 2):
            cbar = pow(c, -1, mod)
            for n in range(0, 8 * 2 ** (k + 3), 1):
                nn = n - 4 * 2 ** (k + 3)
                brute = cs.kloosterman_bruteforce(-c, nn * cbar, mod)
                worst = max(worst, abs(brute - cs.kloosterman_2power_closed(c, nn, k)))
    out.append(_check(f"2-power Kloosterman sums, k <= {k_max}", worst, worst, 1e-6, "brute-force"))
    worst = 0.0
    for c in range(1, 61):
        for n in range(-8, 9):
            worst = max(worst, abs(cs.kloosterman_factored(n, c) - cs.kloosterman_bruteforce(-1, n, 4 * c)))
    out.append(_check("Kloosterman factorization, c <= 60", worst, worst, 1e-6, "brute-force"))
    return out


# strip where neither zeta(nu) nor zeta(1 - nu) goes through reflection,
# so the first identity compares two independent evaluations
IDENTITY_GRID = [complex(-0.9 + 0.14 * j + 0.01, 0.9 * math.sin(1.7 * j)) for j in range(20)]


def suite_gamma(prec: PrecisionConfig = DEFAULT_PRECISION, **_) -> List[Check]:
    grid = IDENTITY_GRID
    w1 = w2 = w3 = 0.0
    for nu in grid:
        lhs = sf.riemann_zeta(1 - nu, prec)
        rhs = sf.G0(nu, prec) * sf.riemann_zeta(nu, prec)
        w1 = max(w1, abs(lhs - rhs) / abs(lhs))
        lhs = cmath.pi / cmath.tan(cmath.pi * nu) / nu * sf.G0(2 * nu + 1, prec)
        rhs = -sf.G0(2 * nu, prec)
        w2 = max(w2, abs(lhs - rhs) / abs(rhs))
        lhs = sf.G0(2 * nu, prec) / sf.gamma(nu, prec)
        rhs = cmath.exp((-0.5 - 2 * nu) * math.log(math.pi)) * cmath.cos(math.pi * nu) * sf.gamma(0.5 + nu, prec)
        w3 = max(w3, abs(lhs - rhs) / abs(rhs))
    out = [
        _check("zeta(1-nu) = G0(nu) zeta(nu)", w1, w1, 1e-9, "closed-form"),
        _check("pi cot(pi nu)/nu G0(2nu+1) = -G0(2nu)", w2, w2, 1e-9, "closed-form"),
        _check("G0(2nu)/Gamma(nu) duplication", w3, w3, 1e-9, "closed-form"),
    ]
    for e1, e2 in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
        for nu in (0.3, 0.7):
            num = sf.conditional_fourier_power_integral(e1, e2, nu, prec)
            ref = sf.G_pair(e1, e2, nu, prec)
            out.append(_check(f"conditional integral ({e1:+d},{e2:+d}) nu={nu}", num, abs(num - ref), 1e-5, "quadrature"))
    return out


def suite_coeffs(prec: PrecisionConfig = DEFAULT_PRECISION, **_) -> List[Check]:
    out = []
    nu = 2.0 + 0.7j
    for eps in (1, -1):
        for n in (-7, -4, 1, 5, 12):
            r = co.coeff_a_bruteforce(eps, n, nu, 20000, prec)
            closed = co.coeff_a(eps, n, nu, prec)
            out.append(_check(f"a({n}) eps={eps:+d}", closed, abs(closed - r.value), max(1e-4, r.tail), "closed-form"))
    for nu in (1.5, 2.0):
        r = co.coeff_a_bruteforce(1, 0, nu, 20000, prec)
        closed = co.coeff_a(1, 0, nu, prec)
        out.append(_check(f"a(0) nu={nu}", closed, abs(closed - r.value), 1e-4 * abs(closed) + r.tail, "closed-form"))
        r = co.coeff_b_bruteforce(1, 0, nu, 4000, prec)
        closed = co.coeff_b_zero(1, nu, prec)
        out.append(_check(f"b(0) nu={nu}", closed, abs(closed - r.value), 1e-4 * abs(closed) + r.tail, "closed-form"))
    return out


def suite_fe_dist(prec: PrecisionConfig = DEFAULT_PRECISION, **_) -> List[Check]:
    out = []
    grid = [0.8 + 0.3j, 2.0, 0.25 - 1.1j, -0.7 + 0.2j, 1.3 - 2j, 0.1 + 0.5j]
    for eps in (1, -1):
        for nu in grid:
            r = co.cuspidality_residuals(eps, nu, prec)
            m = r.max_relative()
            out.append(_check(f"cuspidality residuals eps={eps:+d} nu={nu}", m, m, 1e-9, "closed-form"))
    nu = 1.5 + 0.5j
    for n in (-3, 1, 4):
        b_fe = co.coeff_b_derived_FE(1, n, nu, prec)
        b_br = co.coeff_b_bruteforce(1, n, nu, 4000, prec)
        out.append(_check(f"b({n}) functional equation vs series", b_fe, abs(b_fe - b_br.value), 1e-3, "derived-FE"))
    return out


def suite_fe_classical(
    cfg: EvalConfig = DEFAULT_EVAL, prec: PrecisionConfig = DEFAULT_PRECISION, **_
) -> List[Check]:
    out = []
    for z, s, ell in ((1j, 1.3, 0), (0.3 + 0.8j, 1.3 + 0.2j, 0), (1j, 1.5, 2)):
        r = ei.classical_fe_check(z, s, ell, cfg, prec)
        out.append(
            _check(f"classical FE z={z} s={s} l={ell}", r.residual, abs(r.residual), 5e-3 * abs(r.rhs), "quadrature")
        )
    return out


SUITES: Dict[str, Callable[..., List[Check]]] = {
    "group": suite_group,
    "sums": suite_sums,
    "gamma": suite_gamma,
    "coeffs": suite_coeffs,
    "fe-dist": suite_fe_dist,
    "fe-classical": suite_fe_classical,
}


def run_suite(name: str, cfg: EvalConfig = DEFAULT_EVAL, prec: PrecisionConfig = DEFAULT_PRECISION) -> List[Check]:
    if name == "all":
        out: List[Check] = []
        for key in SUITES:
            out.extend(run_suite(key, cfg, prec))
        return out
    return SUITES[name](cfg=cfg, prec=prec)
