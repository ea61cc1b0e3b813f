"""Acceptance criteria at full scale, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL`` line with the measured
figure of merit.  Run ``python3 tests/test_acceptance.py`` to get the
lines without pytest.
"""
import math
import random
import sys
import time

import numpy as np
import pytest

from metakit import char_sums as cs
from metakit import coefficients as co
from metakit import eisenstein as es
from metakit import mpl_group as mg
from metakit import special_funcs as sf


@pytest.fixture
def verdict(capsys):
    def report(num, ok, detail, t0):
        line = f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}  [{time.perf_counter() - t0:.1f} s]"
        with capsys.disabled():
            print("\n" + line, flush=True)
        assert ok, line
    return report


def test_criterion_01_gauss_sweep(verdict):
    t0 = time.perf_counter()
    ns = list(range(-30, 31))
    worst = 0.0
    for c in range(1, 1000, 2):
        brute = cs.gauss_sums_bruteforce_many(ns, c)
        closed = np.array([cs.gauss_sum_closed(n, c) for n in ns])
        worst = max(worst, float(np.max(np.abs(brute - closed))))
    verdict(1, worst <= 1e-8, f"max |closed - brute| = {worst:.2e} (budget 1e-8)", t0)


def test_criterion_02_kloosterman_2power(verdict):
    t0 = time.perf_counter()
    worst = 0.0
    for k in range(0, 9):
        mod = 2 ** (k + 2)
        for c in range(1, mod, 2):
            cbar = pow(c, -1, mod)
            ns = [0] + [nodd * 2 ** l for l in range(k + 4) for nodd in (1, 3, 5, 7)]
            brute = cs.kloosterman_bruteforce_many(-c, [n * cbar for n in ns], mod)
            closed = np.array([cs.kloosterman_2power_closed(c, n, k) for n in ns])
            worst = max(worst, float(np.max(np.abs(brute - closed))))
    verdict(2, worst <= 1e-6, f"k <= 8, max discrepancy {worst:.2e} (budget 1e-6)", t0)


def test_criterion_03_factored_kloosterman(verdict):
    t0 = time.perf_counter()
    ns = list(range(-20, 21))
    worst = 0.0
    for c in range(1, 301):
        brute = cs.kloosterman_bruteforce_many(-1, ns, 4 * c)
        fact = np.array([cs.kloosterman_factored(n, c) for n in ns])
        worst = max(worst, float(np.max(np.abs(brute - fact))))
    verdict(3, worst <= 1e-6, f"c <= 300, max discrepancy {worst:.2e} (budget 1e-6)", t0)


def test_criterion_04_a_coefficients(verdict):
    t0 = time.perf_counter()
    worst_ratio = 0.0
    worst = None
    for nu in (2, 2 + 0.7j, 2.5 - 0.4j):
        for eps in (1, -1):
            for n in range(-12, 13):
                if n == 0:
                    continue
                r = co.coeff_a_bruteforce(eps, n, nu, 20000)
                gap = abs(co.coeff_a(eps, n, nu) - r.value)
                ratio = gap / max(1e-4, r.tail)
                if ratio >= worst_ratio:
                    worst_ratio, worst = ratio, (eps, n, nu, gap)
    verdict(4, worst_ratio <= 1, f"worst gap/budget {worst_ratio:.2e} at eps,n,nu={worst[:3]} gap {worst[3]:.2e}", t0)


def test_criterion_05_constant_coefficients(verdict):
    t0 = time.perf_counter()
    worst = 0.0
    for nu in (1.5, 2, 2.5):
        for closed, r in (
            (co.coeff_a(1, 0, nu), co.coeff_a_bruteforce(1, 0, nu, 20000)),
            (co.coeff_b_zero(1, nu), co.coeff_b_bruteforce(1, 0, nu, 4000)),
        ):
            budget = 1e-4 * abs(closed) + r.tail
            worst = max(worst, abs(closed - r.value) / budget)
    verdict(5, worst <= 1, f"worst gap/(1e-4 rel + tail) {worst:.3f}", t0)


def test_criterion_06_gamma_zeta_identities(verdict):
    t0 = time.perf_counter()
    grid = [complex(-0.9 + 0.14 * j + 0.01, 0.9 * math.sin(1.7 * j)) for j in range(20)]
    worst = 0.0
    for nu in grid:
        pairs = (
            (sf.G0(nu) * sf.riemann_zeta(nu), sf.riemann_zeta(1 - nu)),
            (math.pi / np.tan(math.pi * nu) / nu * sf.G0(2 * nu + 1), -sf.G0(2 * nu)),
            (sf.G0(2 * nu) / sf.gamma(nu), math.pi ** (-0.5 - 2 * nu) * np.cos(math.pi * nu) * sf.gamma(0.5 + nu)),
        )
        for lhs, rhs in pairs:
            worst = max(worst, abs(lhs - rhs) / abs(rhs))
    verdict(6, worst <= 1e-9, f"20-point grid, max relative residual {worst:.2e} (budget 1e-9)", t0)


def test_criterion_07_conditional_integral(verdict):
    t0 = time.perf_counter()
    worst = 0.0
    for nu in (0.3, 0.5, 0.7):
        for e1 in (1, -1):
            for e2 in (1, -1):
                val = sf.conditional_fourier_power_integral(e1, e2, nu)
                worst = max(worst, abs(val - sf.G_pair(e1, e2, nu)))
    verdict(7, worst <= 1e-5, f"max |integral - G| = {worst:.2e} (budget 1e-5)", t0)


def test_criterion_08_distributional_fe(verdict):
    t0 = time.perf_counter()
    grid = [0.8 + 0.3j, 2.0, 0.25 - 1.1j, -0.7 + 0.2j, 1.3 - 2j, 0.1 + 0.5j,
            -1.6 + 0.1j, 3.1 + 0.4j, 0.6 - 0.6j, -2.3 - 1j, 1.05 + 2.5j, 0.4]
    cusp = max(co.cuspidality_residuals(eps, nu).max_relative() for eps in (1, -1) for nu in grid)
    gap = 0.0
    for nu in (1.5, 1.5 + 0.5j):
        for eps in (1, -1):
            for n in range(-8, 9):
                if n == 0:
                    continue
                fe = co.coeff_b_derived_FE(eps, n, nu)
                gap = max(gap, abs(fe - co.coeff_b_bruteforce(eps, n, nu, 4000).value))
    ok = cusp <= 1e-9 and gap <= 1e-3
    verdict(8, ok, f"cuspidality {cusp:.2e} (budget 1e-9), b FE vs series {gap:.2e} (budget 1e-3)", t0)


POINTS_9 = [
    (1j, 1.4, 0),
    (0.3 + 0.8j, 1.6, 2),
    (0.2 + 0.5j, 1.6, 2),
    (-0.4 + 1.3j, 1.25 + 0.3j, 0),
    (0.1 + 0.9j, 2.0, 0),
    (0.45 + 0.7j, 1.8 - 0.5j, 2),
]


def test_criterion_09_two_routes(verdict):
    t0 = time.perf_counter()
    worst_budget = worst_rel = 0.0
    for z, s, ell in POINTS_9:
        for direct, fourier in (
            (es.eisenstein_inf_direct_est, es.eisenstein_inf_fourier_est),
            (es.eisenstein_zero_direct_est, es.eisenstein_zero_fourier_est),
        ):
            d = direct(z, s, ell)
            f = fourier(z, s, ell)
            gap = abs(d.value - f.value)
            worst_budget = max(worst_budget, gap / (d.error + f.error + 10 * 1e-9))
            worst_rel = max(worst_rel, gap / abs(f.value))
    ok = worst_budget <= 1 and worst_rel <= 5e-3
    verdict(9, ok, f"12 comparisons, worst gap/budget {worst_budget:.3f}, worst relative {worst_rel:.2e}", t0)


POINTS_10 = [(1j, 1.3, 0), (0.3 + 0.8j, 1.3 + 0.2j, 0), (1j, 1.5, 2), (0.15 + 1.1j, 1.55 - 0.3j, 2)]


def test_criterion_10_classical_fe(verdict):
    t0 = time.perf_counter()
    worst = 0.0
    for z, s, ell in POINTS_10:
        chk = es.classical_fe_check(z, s, ell)
        worst = max(worst, abs(chk.residual) / abs(chk.rhs))
    verdict(10, worst <= 5e-3, f"{len(POINTS_10)} points, worst relative residual {worst:.2e} (budget 5e-3)", t0)


def _rand_elem(rng):
    while True:
        a, b, c = (rng.uniform(-3, 3) for _ in range(3))
        if abs(a) > 0.1:
            return mg.MetaElement(a, b, c, (1 + b * c) / a, rng.choice((1, -1)))


def _gamma14(rng):
    while True:
        c = 4 * rng.randint(-10, 10)
        d = 4 * rng.randint(-10, 10) + 1
        if math.gcd(c, d) == 1:
            _, a, b = cs.egcd(d, -c)
            return mg.gamma14_element(a, b, c, d)


def _dev(g, h):
    if g.sign != h.sign:
        return math.inf
    return max(abs(p - q) for p, q in zip(g.matrix_tuple, h.matrix_tuple))


def test_criterion_11_group_suite(verdict):
    t0 = time.perf_counter()
    rng = random.Random(2024)
    trials = 1000
    cocycle_bad = 0
    for _ in range(trials):
        g1, g2, g3 = (_rand_elem(rng).matrix_tuple for _ in range(3))
        lhs = mg.cocycle_alpha(g1, g2) * mg.cocycle_alpha(mg._matmul(g1, g2), g3)
        rhs = mg.cocycle_alpha(g1, mg._matmul(g2, g3)) * mg.cocycle_alpha(g2, g3)
        cocycle_bad += lhs != rhs
    assoc = 0.0
    for _ in range(trials):
        g1, g2, g3 = (_rand_elem(rng) for _ in range(3))
        assoc = max(assoc, _dev((g1 @ g2) @ g3, g1 @ (g2 @ g3)))
    closure_bad = 0
    for _ in range(trials):
        g, h = _gamma14(rng), _gamma14(rng)
        closure_bad += not (mg.gamma14_member(g @ h) and mg.gamma14_member(mg.inverse(g)))
    s_act = 0.0
    for _ in range(trials):
        x = rng.choice((-1, 1)) * math.exp(rng.uniform(-3, 3))
        sg = 1 if x < 0 else -1
        lhs = mg.inverse(mg.s_elem()) @ mg.n_elem(x)
        rhs = mg.n_elem(-1 / x) @ mg.inverse(mg.product(mg.a_elem(abs(x)), mg.m_elem(sg, sg), mg.n_minus(-x)))
        s_act = max(s_act, _dev(lhs, rhs))
    k_to_n = 0.0
    for _ in range(trials):
        th = rng.uniform(-math.pi / 2 + 1e-3, math.pi / 2 - 1e-3)
        c = math.cos(th)
        rhs = mg.n_elem(-math.tan(th)) @ mg.inverse(
            mg.product(mg.a_elem(abs(c)), mg.m_elem(1 if c > 0 else -1, 1), mg.n_minus(-math.sin(th) * c))
        )
        k_to_n = max(k_to_n, _dev(mg.k_elem(th), rhs))
    ok = cocycle_bad == 0 and closure_bad == 0 and max(assoc, s_act, k_to_n) <= 1e-10
    detail = (
        f"{trials} trials each: cocycle sign failures {cocycle_bad}, closure failures {closure_bad}, "
        f"associativity {assoc:.1e}, s-action {s_act:.1e}, k-to-n {k_to_n:.1e}"
    )
    verdict(11, ok, detail, t0)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
