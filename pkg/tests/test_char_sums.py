import cmath
import math
import random

import numpy as np
import pytest

from metakit import char_sums as cs


def test_kronecker_examples():
    assert cs.kronecker(7, 2) == 1
    assert cs.kronecker(-5, -1) == -1
    assert cs.kronecker(3, 5) == -1
    assert cs.kronecker(5, 0) == 0
    assert cs.kronecker(1, 0) == 1
    assert cs.kronecker(-1, 0) == 1
    assert cs.kronecker(6, 4) == 0


def test_kronecker_matches_factored_definition():
    rng = random.Random(0)
    for _ in range(10000):
        a = rng.randint(-500, 500)
        n = rng.randint(-500, 500)
        assert cs.kronecker(a, n) == cs.kronecker_factored(a, n), (a, n)


def test_kronecker_is_legendre_for_primes():
    for p in (3, 5, 7, 11, 13, 101):
        squares = {x * x % p for x in range(1, p)}
        for a in range(1, p):
            assert cs.kronecker(a, p) == (1 if a in squares else -1)


def test_quadratic_reciprocity():
    for m in range(1, 500, 2):
        for n in range(1, 500, 14):
            if n % 2 == 1 and math.gcd(m, n) == 1:
                lhs = cs.kronecker(m, n) * cs.kronecker(n, m)
                assert lhs == (-1) ** ((m - 1) * (n - 1) // 4)


def test_jacobi_row():
    for c in (1, 3, 15, 45, 77):
        row = cs.jacobi_row(c)
        assert len(row) == abs(c)
        assert all(row[r] == cs.kronecker(r, c) for r in range(abs(c)))


def test_small_characters():
    assert cs.delta_d(5) == 1
    assert cs.delta_d(3) == 1j
    assert cs.delta_d(6) == 0
    assert cs.chi4(5) == 1 and cs.chi4(3) == -1 and cs.chi4(2) == 0
    assert cs.chi8(3) == 1 and cs.chi8(4) == 0
    assert [cs.chi8(c) for c in (1, 3, 5, 7)] == [1, 1, -1, -1]


def test_two_adic_split():
    for c in (1, 12, 96, 7 * 64):
        sp = cs.two_adic_split(c)
        assert 2 ** sp.k * sp.c_odd == c and sp.c_odd % 2 == 1


def test_modular_inverses():
    for k in range(0, 6):
        for c in range(1, 60, 2):
            assert c * cs.inv_odd_mod_2power(c, k) % 2 ** (k + 2) == 1
            assert 2 ** (k + 2) * cs.inv_2power_mod_odd(k, c) % c == 1 % c


def test_gauss_examples():
    assert cs.gauss_sum_bruteforce(1, 1) == pytest.approx(1)
    assert cs.gauss_sum_bruteforce(1, 3) == pytest.approx(1j * math.sqrt(3), abs=1e-12)
    assert abs(cs.gauss_sum_bruteforce(1, 9)) < 1e-12
    assert cs.gauss_sum_closed(1, 3) == pytest.approx(1j * math.sqrt(3), abs=1e-12)
    assert cs.gauss_sum_closed(3, 9) == pytest.approx(-3)
    assert cs.gauss_sum_closed(9, 9) == pytest.approx(6)
    with pytest.raises(cs.DomainError):
        cs.gauss_sum_closed(1, 4)


def test_gauss_closed_vs_brute():
    ns = list(range(-30, 31))
    for c in range(1, 400, 2):
        brute = cs.gauss_sums_bruteforce_many(ns, c)
        closed = np.array([cs.gauss_sum_closed(n, c) for n in ns])
        assert np.max(np.abs(brute - closed)) <= 1e-8, c


def test_gauss_many_matches_single():
    ns = [-4, 0, 3, 17]
    many = cs.gauss_sums_bruteforce_many(ns, 35)
    for n, v in zip(ns, many):
        assert abs(v - cs.gauss_sum_bruteforce(n, 35)) < 1e-12


def test_gauss_delta_multiplicative():
    primes = [3, 5, 7, 11, 13, 17, 19, 23]
    for p in primes:
        for q in primes:
            if p >= q:
                continue
            for n in (1, 2, 5, -7, 15):
                lhs = cs.delta_d(p * q) * cs.gauss_sum_bruteforce(n, p * q)
                rhs = cs.delta_d(p) * cs.gauss_sum_bruteforce(n, p) * cs.delta_d(q) * cs.gauss_sum_bruteforce(n, q)
                assert abs(lhs - rhs) < 1e-9


def test_kloosterman_examples():
    assert cs.kloosterman_bruteforce(-1, 1, 4) == pytest.approx(1 + 1j)
    assert cs.kloosterman_bruteforce(-1, 0, 4) == pytest.approx(1 + 1j)
    lhs = cs.kloosterman_bruteforce(-1, -1, 4).conjugate()
    assert lhs == pytest.approx(cs.kloosterman_bruteforce(1, 1, 4))


def test_kloosterman_conjugation():
    rng = random.Random(4)
    for _ in range(200):
        kappa = rng.choice((1, -1, 3, -5))
        n = rng.randint(-40, 40)
        fourc = 4 * rng.randint(1, 30)
        lhs = cs.kloosterman_bruteforce(kappa, n, fourc).conjugate()
        assert abs(lhs - cs.kloosterman_bruteforce(-kappa, -n, fourc)) < 1e-9


def test_kloosterman_many_matches_single():
    ns = [-9, 0, 1, 22]
    many = cs.kloosterman_bruteforce_many(-1, ns, 60)
    for n, v in zip(ns, many):
        assert abs(v - cs.kloosterman_bruteforce(-1, n, 60)) < 1e-12


def test_kloosterman_2power_examples():
    assert cs.kloosterman_2power_closed(1, 1, 0) == pytest.approx(1 + 1j)
    assert cs.kloosterman_2power_closed(1, 3, 0) == pytest.approx(-(1 + 1j))
    assert cs.kloosterman_2power_closed(1, 4, 2) == pytest.approx(4 + 4j)


def test_kloosterman_2power_vs_brute():
    # every case of the closed form: l = v_2(n) from 0 to k+3, all odd n' mod 8
    for k in range(0, 6):
        mod = 2 ** (k + 2)
        for c in range(1, mod, 2):
            cbar = pow(c, -1, mod)
            for l in range(0, k + 4):
                for nodd in (1, 3, 5, 7, -1, 9, 11):
                    n = nodd * 2 ** l
                    brute = cs.kloosterman_bruteforce(-c, n * cbar, mod)
                    assert abs(cs.kloosterman_2power_closed(c, n, k) - brute) < 1e-9, (c, n, k)
            assert abs(cs.kloosterman_2power_closed(c, 0, k) - cs.kloosterman_bruteforce(-c, 0, mod)) < 1e-9


def test_kloosterman_k1_uses_n_times_c():
    # at k = 1 the sum over d mod 8 carries chi8(n c); chi8(c) alone is wrong
    for c in (1, 3, 5, 7):
        for n in (1, 5, 9, 13):
            brute = cs.kloosterman_bruteforce(-c, n * pow(c, -1, 8), 8)
            assert brute / (cs.delta_d(c) * 2 * math.sqrt(2) * (1 + 1j)) == pytest.approx(cs.chi8(n * c))
            assert abs(cs.kloosterman_2power_closed(c, n, 1) - brute) < 1e-9


def test_kloosterman_factored_examples():
    assert cs.kloosterman_factored(1, 1) == pytest.approx(1 + 1j)
    assert cs.kloosterman_factored(1, 6) == pytest.approx(cs.kloosterman_bruteforce(-1, 1, 24), abs=1e-9)
    for c in range(1, 50):
        expected = (1 + 1j) / 2 * cs.euler_phi(4 * c) if cs.is_square(c) else 0
        assert cs.kloosterman_factored(0, c) == pytest.approx(expected, abs=1e-9)


def test_kloosterman_factored_vs_brute():
    for c in range(1, 120):
        for n in range(-20, 21):
            brute = cs.kloosterman_bruteforce(-1, n, 4 * c)
            assert abs(cs.kloosterman_factored(n, c) - brute) < 1e-6, (n, c)


def test_e_frac():
    assert cs.e_frac(1, 4) == pytest.approx(1j)
    assert cs.e_frac(7, 3) == pytest.approx(cmath.exp(2j * math.pi / 3))


def test_factorize():
    for n in (1, 2, 360, 9973, 2 ** 5 * 3 ** 4 * 101):
        f = cs.factorize(n)
        assert math.prod(p ** e for p, e in f.items()) == n
    assert cs.euler_phi(36) == 12
