"""Thin complex-valued wrappers over QUADPACK (scipy.integrate.quad)."""
from __future__ import annotations

import warnings

import numpy as np
from scipy import integrate

from .errors import AccuracyError


def _real_quad(f, a, b, tol, **kw):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err = integrate.quad(f, a, b, epsabs=tol, epsrel=tol, limit=400, **kw)[:2]
    return val, err


def quad_complex_err(f, a, b, tol=1e-9, **kw):
    """Return ``(value, error_estimate)`` for a complex integrand."""
    re, e1 = _real_quad(lambda x: complex(f(x)).real, a, b, tol, **kw)
    im, e2 = _real_quad(lambda x: complex(f(x)).imag, a, b, tol, **kw)
    return complex(re, im), e1 + e2


def quad_complex(f, a, b, tol=1e-9, **kw):
    return quad_complex_err(f, a, b, tol, **kw)[0]


def fourier_tail_err(g, omega, sign, tol=1e-9):
    """``int_0^inf g(v) exp(i*sign*omega*v) dv`` for decaying complex ``g``.

    Uses the QAWF routine (cosine/sine weights on a half line).
    """
    if omega <= 0:
        raise ValueError("omega must be positive")

    def gr(v):
        return complex(g(v)).real

    def gi(v):
        return complex(g(v)).imag

    def run(h, w):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            out = integrate.quad(h, 0.0, np.inf, weight=w, wvar=omega, epsabs=tol, limlst=200, limit=400)
        return out[0], out[1]

    rc, e1 = run(gr, "cos")
    rs, e2 = run(gr, "sin")
    ic, e3 = run(gi, "cos")
    is_, e4 = run(gi, "sin")
    val = complex(rc - sign * is_, ic + sign * rs)
    return val, e1 + e2 + e3 + e4


def fourier_tail(g, omega, sign, tol=1e-9):
    return fourier_tail_err(g, omega, sign, tol)[0]


def require(err: float, budget: float, what: str) -> None:
    if not err <= budget:
        raise AccuracyError(f"{what}: quadrature error {err:.3g} exceeds {budget:.3g}", achieved=err)
