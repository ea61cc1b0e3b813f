"""Kronecker symbols, small characters, Gauss sums and Kloosterman sums.

Each sum comes twice: a direct O(modulus) evaluator and a closed form.  The
direct evaluators are the oracles for the closed forms, so they share no
code with them beyond the Kronecker symbol itself.

Conventions
-----------
``e(x) = exp(2 pi i x)``.  Moduli ``4c`` of Kloosterman sums are passed as
the full modulus (``fourc``), never as ``c``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Sequence

import numpy as np

from .errors import DomainError

SQRT2 = math.sqrt(2.0)

# (2/n) for odd n, indexed by n mod 8; even residues give 0
_TAB2 = (0, 1, 0, -1, 0, -1, 0, 1)


# ---------------------------------------------------------------------------
# integer helpers

def factorize(n: int) -> Dict[int, int]:
    """Prime factorization of ``|n|`` by trial division.  ``factorize(1) == {}``."""
    n = abs(int(n))
    if n == 0:
        raise DomainError("cannot factor 0")
    out: Dict[int, int] = {}
    while n % 2 == 0:
        out[2] = out.get(2, 0) + 1
        n //= 2
    p = 3
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@lru_cache(maxsize=65536)
def factor_items(n: int) -> tuple:
    """Cached ``tuple(sorted(factorize(n).items()))``."""
    return tuple(sorted(factorize(n).items()))


def egcd(a: int, b: int):
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def modinv(a: int, m: int) -> int:
    """Inverse of ``a`` modulo ``m`` in ``[0, m)``; ``m == 1`` gives 0."""
    if m == 1:
        return 0
    g, x, _ = egcd(a % m, m)
    if g != 1:
        raise DomainError(f"{a} is not invertible modulo {m}")
    return x % m


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise DomainError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class TwoAdicSplit:
    """``c = 2**k * c_odd`` with ``c_odd`` odd and positive."""
    k: int
    c_odd: int

    def __post_init__(self):
        if self.k < 0 or self.c_odd <= 0 or self.c_odd % 2 == 0:
            raise DomainError("TwoAdicSplit needs k >= 0 and a positive odd part")

    @property
    def value(self) -> int:
        return (1 << self.k) * self.c_odd


def two_adic_split(c: int) -> TwoAdicSplit:
    if c <= 0:
        raise DomainError("two_adic_split expects a positive integer")
    k = (c & -c).bit_length() - 1
    return TwoAdicSplit(k, c >> k)


# The two inverses appearing in the 2-power / odd factorization of K.  They are
# deliberately separate functions: swapping them silently is an easy mistake.

def inv_odd_mod_2power(c_odd: int, k: int) -> int:
    """``cbar`` with ``c_odd * cbar == 1 (mod 2**(k+2))``."""
    return modinv(c_odd, 1 << (k + 2))


def inv_2power_mod_odd(k: int, c_odd: int) -> int:
    """``tbar`` with ``2**(k+2) * tbar == 1 (mod c_odd)``."""
    return modinv(1 << (k + 2), c_odd)


# ---------------------------------------------------------------------------
# Kronecker symbol and small characters

def kronecker(a: int, n: int) -> int:
    """Kronecker symbol ``(a/n)`` for arbitrary integers.

    Reduce-and-flip evaluation: strip the 2-part and sign of ``n``, then run
    the Jacobi recursion with quadratic reciprocity.

    >>> kronecker(7, 2), kronecker(-5, -1), kronecker(3, 5)
    (1, -1, -1)
    """
    a, n = int(a), int(n)
    if n == 0:
        return 1 if abs(a) == 1 else 0
    if a % 2 == 0 and n % 2 == 0:
        return 0
    k = 1
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v & 1:
        k = _TAB2[a & 7]
    if n < 0:
        n = -n
        if a < 0:
            k = -k
    # n is now odd and positive; (a/n) is periodic in a with period n
    a %= n
    while a:
        v = 0
        while a % 2 == 0:
            a //= 2
            v += 1
        if v & 1:
            k *= _TAB2[n & 7]
        if a & n & 2:
            k = -k
        a, n = n % a, a
    return k if n == 1 else 0


def _legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def kronecker_factored(a: int, n: int) -> int:
    """``(a/n)`` straight from the multiplicative definition.

    Slow; it exists to check :func:`kronecker`.
    """
    a, n = int(a), int(n)
    if n == 0:
        return 1 if abs(a) == 1 else 0
    out = 1
    if n < 0:
        out = -1 if a < 0 else 1
        n = -n
    for p, e in factorize(n).items():
        if p == 2:
            base = 0 if a % 2 == 0 else (1 if a % 8 in (1, 7) else -1)
        else:
            base = _legendre(a, p)
        out *= base ** e
    return out


@lru_cache(maxsize=4096)
def _jacobi_row(c: int) -> tuple:
    # (x/c) for x in range(c), c odd positive, built from quadratic-residue
    # tables of the prime factors (no reciprocity involved)
    row = np.ones(c, dtype=np.int64)
    for p, e in factorize(c).items() if c > 1 else ():
        table = -np.ones(p, dtype=np.int64)
        table[0] = 0
        table[(np.arange(1, p, dtype=np.int64) ** 2) % p] = 1
        vals = table[np.arange(c) % p]
        row *= vals ** e
    if c == 1:
        row[:] = 1
    return tuple(row.tolist())


def jacobi_row(c: int) -> np.ndarray:
    """Vector of ``(x/c)`` for ``x = 0..c-1`` with ``c`` odd and positive."""
    if c <= 0 or c % 2 == 0:
        raise DomainError("jacobi_row expects an odd positive modulus")
    return np.array(_jacobi_row(c), dtype=np.int64)


def delta_d(d: int) -> complex:
    """1 if d = 1 (mod 4), i if d = 3 (mod 4), else 0."""
    r = d % 4
    if r == 1:
        return 1 + 0j
    if r == 3:
        return 1j
    return 0j


def chi4(c: int) -> int:
    r = c % 4
    return 1 if r == 1 else (-1 if r == 3 else 0)


def chi8(c: int) -> int:
    r = c % 8
    if r in (1, 3):
        return 1
    if r in (5, 7):
        return -1
    return 0


def _ipow(k: int) -> complex:
    return (1, 1j, -1, -1j)[k % 4]


def e_frac(num: int, den: int) -> complex:
    """``e(num/den)`` with the fraction reduced first (keeps the phase exact)."""
    r = num % den
    return cmath.exp(2j * math.pi * r / den)


def _fsum_complex(values: Iterable[complex]) -> complex:
    re, im = [], []
    for z in values:
        re.append(z.real)
        im.append(z.imag)
    return complex(math.fsum(re), math.fsum(im))


# ---------------------------------------------------------------------------
# Gauss sums

def gauss_sum_bruteforce(n: int, c: int) -> complex:
    """``G(n;c) = sum_{x mod c} (x/c) e(nx/c)`` by direct summation."""
    if c < 1:
        raise DomainError("Gauss sum modulus must be >= 1")
    return _fsum_complex(kronecker(x, c) * e_frac(n * x, c) for x in range(c))


def gauss_sums_bruteforce_many(ns: Sequence[int], c: int) -> np.ndarray:
    """Direct sums ``G(n;c)`` for several ``n`` at one odd modulus ``c``."""
    ns = np.asarray(ns, dtype=np.int64)
    x = np.arange(c, dtype=np.int64)
    chi = jacobi_row(c).astype(float)
    phase = np.exp(2j * np.pi * (np.outer(ns, x) % c) / c)
    return phase @ chi


def _gauss_prime_power(n: int, p: int, k: int) -> complex:
    # G(n; p^k) for odd prime p, k >= 1
    if n == 0:
        ell = k  # any l >= k behaves the same
        n_rest = 1
    else:
        ell = valuation(n, p)
        n_rest = n // p ** ell
    if ell < k - 1:
        return 0j
    if ell == k - 1:
        if k % 2 == 0:
            return complex(-p ** (k - 1))
        return kronecker(n_rest, p) * delta_d(p) * p ** (k - 0.5)
    if k % 2 == 0:
        return complex(p ** k - p ** (k - 1))
    return 0j


def gauss_sum_closed(n: int, c: int) -> complex:
    """Closed form of ``G(n;c)`` for odd ``c``.

    Prime-power values glued together through the multiplicativity of
    ``Delta_c * G(n;c)``.
    """
    if c < 1 or c % 2 == 0:
        raise DomainError("gauss_sum_closed needs an odd positive modulus")
    if c == 1:
        return 1 + 0j
    acc = 1 + 0j
    for p, k in factor_items(c):
        acc *= delta_d(p ** k) * _gauss_prime_power(n, p, k)
    return acc / delta_d(c)


# ---------------------------------------------------------------------------
# Kloosterman sums

@lru_cache(maxsize=256)
def _kron_top_row(top: int, modulus: int) -> tuple:
    return tuple(kronecker(top, d) for d in range(modulus))


def kloosterman_bruteforce(kappa: int, n: int, fourc: int) -> complex:
    """``K_kappa(n;4c) = sum_{d mod 4c} Delta_d^{-kappa} (4c/d) e(nd/4c)``."""
    if fourc <= 0 or fourc % 4:
        raise DomainError("Kloosterman modulus must be a positive multiple of 4")
    if kappa % 2 == 0:
        raise DomainError("kappa must be odd")
    row = _kron_top_row(fourc, fourc)
    terms = []
    for d in range(1, fourc, 2):
        chi = row[d]
        if chi == 0:
            continue
        w = 1 if d % 4 == 1 else _ipow(-kappa)
        terms.append(w * chi * e_frac(n * d, fourc))
    return _fsum_complex(terms)


def kloosterman_bruteforce_many(kappa: int, ns: Sequence[int], fourc: int) -> np.ndarray:
    """Vectorised direct sums for many ``n`` at one modulus."""
    if fourc <= 0 or fourc % 4:
        raise DomainError("Kloosterman modulus must be a positive multiple of 4")
    d = np.arange(fourc, dtype=np.int64)
    chi = np.array(_kron_top_row(fourc, fourc), dtype=float)
    w = np.where(d % 4 == 1, 1 + 0j, np.where(d % 4 == 3, _ipow(-kappa), 0j))
    ns = np.asarray(ns, dtype=np.int64)
    phase = np.exp(2j * np.pi * (np.outer(ns, d) % fourc) / fourc)
    return phase @ (w * chi)


def kloosterman_2power_table(n: int, c: int, k: int) -> complex:
    """``Delta_c^{-1} K_{-c}(n cbar; 2^{k+2})`` for odd ``c`` (the case ladder).

    With ``n = 2^l n'`` (``l`` infinite for ``n = 0``):

    * ``l >= k+2``:  ``(1+i) 2^k chi4(c)`` for even k, else 0
    * ``l == k+1``: ``-(1+i) 2^k chi4(c)`` for even k, else 0
    * ``l == k``:    ``(1+i) 2^k chi4(n'c)`` for even k, else 0
    * ``l == k-1``:  ``(1+i)/sqrt2 2^{k+1} chi8(n'c)`` for odd k with n' = 1 (4)
    * otherwise 0.

    The ``k = 0, 1`` rows coincide with the separately listed small-modulus
    values except at ``k = 1``, where the factor is ``chi8(nc)`` and not
    ``chi8(c)`` (the direct sum settles this; the two differ for n = 5 mod 8).
    """
    if c <= 0 or c % 2 == 0:
        raise DomainError("c must be odd and positive")
    if k < 0:
        raise DomainError("k must be non-negative")
    if n == 0:
        ell, n1 = None, 1
    else:
        ell = valuation(n, 2)
        n1 = n >> ell if n > 0 else -((-n) >> ell)
    even = k % 2 == 0
    base = (1 + 1j) * 2 ** k
    if ell is None or ell >= k + 2:
        return base * chi4(c) if even else 0j
    if ell == k + 1:
        return -base * chi4(c) if even else 0j
    if ell == k:
        return base * chi4(n1 * c) if even else 0j
    if ell == k - 1:
        if not even and n1 % 4 == 1:
            return (1 + 1j) / SQRT2 * 2 ** (k + 1) * chi8(n1 * c)
        return 0j
    return 0j


def kloosterman_2power_closed(c: int, n: int, k: int) -> complex:
    """Closed form of ``K_{-c}(n cbar; 2^{k+2})`` with ``c cbar = 1 (mod 2^{k+2})``."""
    return delta_d(c) * kloosterman_2power_table(n, c, k)


def kloosterman_factored(n: int, c: int) -> complex:
    """``K_{-1}(n;4c)`` through the 2-power / odd-part factorization.

    ``K_{-1}(n;2^{k+2}c') = K_{-c'}(n cbar'; 2^{k+2}) G(n tbar; c')``, both
    factors from their closed forms.
    """
    if c < 1:
        raise DomainError("c must be positive")
    sp = two_adic_split(c)
    tbar = inv_2power_mod_odd(sp.k, sp.c_odd)
    return kloosterman_2power_closed(sp.c_odd, n, sp.k) * gauss_sum_closed(n * tbar, sp.c_odd)


def euler_phi(n: int) -> int:
    out = n
    for p in factorize(n):
        out = out // p * (p - 1)
    return out


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n
