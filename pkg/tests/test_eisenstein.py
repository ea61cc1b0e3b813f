import cmath
import math

import mpmath as mp
import numpy as np
import pytest

from metakit import eisenstein as es
from metakit import mpl_group as mg
from metakit.coefficients import coeff_a, coeff_b_zero
from metakit.config import EvalConfig
from metakit.char_sums import kronecker
from metakit.errors import DomainError
from metakit.special_funcs import gamma


def W_mp(nu, ell, y):
    """Closed form of the Whittaker integral through mpmath's W_{k,m}."""
    al = 0.5 * (0.5 - ell) - (nu + 1) / 2
    be = -0.5 * (0.5 - ell) - (nu + 1) / 2
    p = 2 * mp.pi * abs(y)
    A, B = (be, al) if y < 0 else (al, be)
    mu, nG = -A / 2, -B / 2
    return complex(2 * mp.pi * 2 ** (-mu - nG) * p ** (mu + nG - 1) * mp.rgamma(2 * nG) * mp.whitw(nG - mu, 0.5 - mu - nG, 2 * p))


@pytest.mark.parametrize("nu,ell,y", [
    (1.2, 0, 0.7), (1.2, 0, -0.7), (0.5, 2, 1.3), (0.3, -2, -0.5),
    (-1.6, 0, 1.0), (-2.0, 2, -2.0), (0.7 + 0.4j, 0, 1.5),
])
def test_whittaker_vs_mpmath(nu, ell, y):
    est = es.whittaker_W_est(nu, ell, y)
    assert abs(est.value - W_mp(nu, ell, y)) < 1e-8
    assert est.detail["ibp_depth"] == es.auto_ibp_depth(complex(nu))


def test_whittaker_ibp_consistency():
    a = es.whittaker_W(0.5, 0, 0.9, ibp_depth=0)
    b = es.whittaker_W(0.5, 0, 0.9, ibp_depth=2)
    assert abs(a - b) < 1e-7
    assert es.auto_ibp_depth(0.5) == 1 and es.auto_ibp_depth(2.0) == 0 and es.auto_ibp_depth(-1.6) == 4
    with pytest.raises(DomainError):
        es.whittaker_W(1.0, 0, 0.0)


def test_whittaker_alt_representation():
    assert abs(es.whittaker_W_alt(1.2, 0, 1, 0.7) - es.whittaker_W(1.2, 0, 0.7)) < 1e-6
    assert abs(es.whittaker_W_alt(1.2, 2, -1, 0.5) - es.whittaker_W(1.2, 2, -0.5)) < 1e-6
    assert abs(es.whittaker_W_alt(0.3, 0, 2, 1.0) - es.whittaker_W(0.3, 0, 2.0)) < 1e-6


def test_whittaker_alt_grid():
    for nu in (0.3, 1.2, 2.0):
        for ell in (0, 2, -2):
            for n, y in ((1, 0.5), (-1, 0.5), (1, 1.3), (-1, 1.3)):
                alt = es.whittaker_W_alt(nu, ell, n, y)
                assert abs(alt - es.whittaker_W(nu, ell, n * y)) < 1e-8, (nu, ell, n, y)


def test_parameter_types():
    with pytest.raises(DomainError):
        es.UpperHalfPoint(0.0, 0.0)
    with pytest.raises(DomainError):
        es.WeightParam(1)
    with pytest.raises(DomainError):
        EvalConfig(fourier_n_max=2)
    assert es.nu_of_s(1.4) == pytest.approx(1.8)
    assert es.s_of_nu(es.nu_of_s(0.3 + 2j)) == pytest.approx(0.3 + 2j)


def test_direct_domain():
    with pytest.raises(DomainError):
        es.eisenstein_inf_direct(1j, 1.0, 0)
    with pytest.raises(DomainError):
        es.eisenstein_zero_direct(1j, 0.8 + 3j, 0)


def test_direct_summand_definition():
    z = 0.3 + 0.8j
    s = 1.6
    for c, d in ((4, 1), (-4, 1), (8, -3), (12, 5)):
        w = c * z + d
        ang = cmath.exp(-0.5j * cmath.phase(w))
        term = es.direct_summand_inf(z, s, 0, c, d)
        assert term == pytest.approx(kronecker(c, d) * ang * (z.imag / abs(w) ** 2) ** s)


def test_zero_representative_independence():
    z = 0.2 + 0.6j
    s = 1.5 + 0.3j
    for a in (1, -3, 5, 9, -7):
        for b in (-4, -1, 2, 3):
            if math.gcd(a, b) != 1:
                continue
            g = mg.complete_coset_zero((a, b))
            base = es.direct_summand_zero(z, s, 2, g)
            for t in (4, 8, 12):
                c2, d2 = int(g.c) + t * a, int(g.d) + t * b
                if c2 <= 0:
                    continue
                alt = mg.gamma14_element(a, b, c2, d2)
                assert abs(es.direct_summand_zero(z, s, 2, alt) - base) < 1e-12


def test_inf_periodicity():
    z = es.UpperHalfPoint(0.3, 0.8)
    for route in (es.eisenstein_inf_direct, es.eisenstein_inf_fourier):
        assert abs(route(z.shifted(1.0), 1.4, 0) - route(z, 1.4, 0)) < 1e-10


def test_inf_two_routes():
    d = es.eisenstein_inf_direct_est(1j, 1.4, 0)
    f = es.eisenstein_inf_fourier_est(1j, 1.4, 0)
    assert abs(d.value - f.value) <= d.error + f.error + 1e-8
    assert abs(d.value - f.value) <= 1e-3 * abs(f.value)


def test_inf_direct_weight_two():
    est = es.eisenstein_inf_direct_est(0.3 + 0.8j, 2.0, 2, EvalConfig(cusp_sum_radius=4000))
    assert math.isfinite(abs(est.value)) and est.error < 1e-4


def test_zero_two_routes():
    for z, s, ell in ((1j, 1.4, 0), (0.2 + 0.5j, 1.6, 2)):
        d = es.eisenstein_zero_direct_est(z, s, ell)
        f = es.eisenstein_zero_fourier_est(z, s, ell, "bruteforce")
        assert abs(d.value - f.value) <= d.error + f.error + 1e-8, (z, s, ell)
        assert f.detail["provenance"] == "brute-force"


def test_zero_constant_term_projection():
    # averaging over one period in x keeps only the b(0) term
    y, s, ell = 0.9, 1.5, 0
    nu = es.nu_of_s(s)
    xs = (np.arange(12) + 0.5) / 12
    avg = np.mean([es.eisenstein_zero_direct((x, y), s, ell) for x in xs])
    pref = (1 - 1j) / math.sqrt(2)
    expected = pref * es.constant_term_gamma(nu, ell) * coeff_b_zero(1, nu) * y ** ((1 - nu) / 2)
    assert abs(avg - expected) < 1e-4 * abs(expected)


def test_inf_large_y_two_terms():
    s, ell, y = 1.4, 0, 20.0
    nu = es.nu_of_s(s)
    full = es.eisenstein_inf_fourier((0.1, y), s, ell)
    pref = (1 - 1j) / math.sqrt(2)
    const = pref * es.constant_term_gamma(nu, ell) * coeff_a(1, 0, nu) * y ** ((1 - nu) / 2)
    two = coeff_a(1, "inf", nu) * y ** ((nu + 1) / 2) + const
    assert abs(full - two) < 1e-6 * abs(full)


def test_zero_no_growth():
    s = 1.4
    nu = es.nu_of_s(s)
    ratios = [abs(es.eisenstein_zero_fourier((0.0, y), s, 0)) / y ** ((nu.real + 1) / 2) for y in (2.0, 8.0, 32.0)]
    assert ratios[0] > ratios[1] > ratios[2]
    assert ratios[2] < 0.05 * ratios[0]


def test_constant_term_ell_ratio():
    nu = 1.3 + 0.2j
    r = es.constant_term_gamma(nu, 2) / es.constant_term_gamma(nu, 0)
    h0, h2 = 0.25, -0.75
    expected = (gamma(h0 + (nu + 1) / 2) * gamma(-h0 + (nu + 1) / 2)) / (gamma(h2 + (nu + 1) / 2) * gamma(-h2 + (nu + 1) / 2))
    assert r == pytest.approx(expected, rel=1e-12)


def test_fourier_continuation_below_one():
    # the Fourier route is defined where the direct sum is not
    val = es.eisenstein_inf_fourier(0.2 + 1.1j, 0.4 + 0.5j, 0)
    assert math.isfinite(abs(val))
    zv = es.eisenstein_zero_fourier(0.2 + 1.1j, 0.4 + 0.5j, 0, "derived")
    assert math.isfinite(abs(zv))
    with pytest.raises(DomainError):
        es.eisenstein_zero_fourier(1j, 1.4, 0, "magic")


@pytest.mark.parametrize("z,s,ell", [(1j, 1.3, 0), (0.3 + 0.8j, 1.3 + 0.2j, 0), (1j, 1.5, 2)])
def test_classical_functional_equation(z, s, ell):
    chk = es.classical_fe_check(z, s, ell)
    assert abs(chk.residual) <= 5e-3 * abs(chk.rhs)
    assert abs(chk.residual) <= max(chk.budget, 1e-5 * abs(chk.rhs))


def test_fe_factor_pieces():
    assert es.classical_fe_zero_weight(0.5) == pytest.approx((1 - 1j) * 0.25 * 0)
    s = 1.3
    f = es.classical_fe_factor(s, 0)
    assert f == pytest.approx(f.real, abs=1e-14 * abs(f))


def test_phi_examples():
    nu = 0.7 + 0.2j
    for ell in (0, 2, -2, 4):
        val = es.phi_kfinite(-1, -nu, -ell, mg.s_elem())
        assert val == pytest.approx((1j) ** (-ell % 4) * (1 + 1j) / math.sqrt(2), abs=1e-13)
    assert es.phi_kfinite(1, nu, 0, mg.a_elem(2.5)) == pytest.approx(2.5 ** (1 - nu))
    for eps in (1, -1):
        for kappa in (1, -1):
            assert es.phi_kfinite(eps, nu, 2, mg.m_elem(-1, kappa)) == pytest.approx(eps * kappa * 1j, abs=1e-13)


@pytest.mark.parametrize("eps,nu,ell", [(1, 1.2, 0), (-1, 0.8, 2), (1, 0.6 + 0.3j, -2)])
def test_intertwine(eps, nu, ell):
    assert abs(es.intertwine_kfinite_check(eps, nu, ell)) <= 1e-6


def test_intertwine_scalar():
    for eps in (1, -1):
        assert abs(es.intertwine_scalar_residual(eps, 0.4)) < 1e-9
    with pytest.raises(DomainError):
        es.intertwine_kfinite_check(1, -0.2, 0)


def test_smooth_transform():
    pos = np.logspace(-1, 1, 25)
    xs = np.concatenate([-pos, pos])
    assert es.smooth_transform_check(1, 1.3, 0, xs) <= 1e-10
    assert es.smooth_transform_check(-1, 0.7 + 0.4j, 2, xs) <= 1e-10
    with pytest.raises(DomainError):
        es.smooth_transform_check(1, 1.3, 0, [0.0])
