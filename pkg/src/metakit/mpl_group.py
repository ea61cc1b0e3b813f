"""The metaplectic double cover of SL2(R) under the Kubota cocycle.

Elements are pairs ``(g, sign)``.  Matrix entries are floats; the sign is an
exact integer and every sign decision goes through :func:`hilbert_symbol`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .char_sums import egcd, kronecker
from .config import DET_TOL
from .errors import DomainError

Matrix = Tuple[float, float, float, float]


def hilbert_symbol(x: float, y: float) -> int:
    if x == 0 or y == 0:
        raise DomainError("Hilbert symbol needs nonzero arguments")
    return -1 if (x < 0 and y < 0) else 1


def _X(m: Matrix, tol: float = DET_TOL) -> float:
    c, d = m[2], m[3]
    return c if abs(c) > tol else d


def _matmul(g: Matrix, h: Matrix) -> Matrix:
    a, b, c, d = g
    e, f, k, l = h
    return (a * e + b * k, a * f + b * l, c * e + d * k, c * f + d * l)


def cocycle_alpha(g1, g2, tol: float = DET_TOL) -> int:
    """Kubota cocycle ``alpha(g1, g2)`` for matrices given as 4-tuples,
    2x2 arrays or :class:`MetaElement` instances (the sign is ignored)."""
    m1, m2 = _as_tuple(g1), _as_tuple(g2)
    x12 = _X(_matmul(m1, m2), tol)
    return hilbert_symbol(x12 / _X(m1, tol), x12 / _X(m2, tol))


def _as_tuple(g) -> Matrix:
    if isinstance(g, MetaElement):
        return g.matrix_tuple
    arr = np.asarray(g, dtype=float).reshape(-1)
    if arr.size != 4:
        raise DomainError("expected a 2x2 matrix")
    return tuple(float(v) for v in arr)


@dataclass(frozen=True)
class MetaElement:
    a: float
    b: float
    c: float
    d: float
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DomainError("sign must be +1 or -1")
        if abs(self.a * self.d - self.b * self.c - 1.0) > DET_TOL * max(
            1.0, abs(self.a * self.d), abs(self.b * self.c)
        ):
            raise DomainError("matrix is not unimodular")

    @classmethod
    def from_matrix(cls, m, sign: int = 1) -> "MetaElement":
        a, b, c, d = _as_tuple(m)
        return cls(a, b, c, d, int(sign))

    @property
    def matrix_tuple(self) -> Matrix:
        return (self.a, self.b, self.c, self.d)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=float)

    def __matmul__(self, other: "MetaElement") -> "MetaElement":
        return multiply(self, other)

    def act(self, z: complex) -> complex:
        """Mobius action on the upper half plane."""
        return (self.a * z + self.b) / (self.c * z + self.d)

    def close_to(self, other: "MetaElement", tol: float = 1e-10) -> bool:
        diff = max(abs(p - q) for p, q in zip(self.matrix_tuple, other.matrix_tuple))
        return diff <= tol and self.sign == other.sign


def multiply(g1: MetaElement, g2: MetaElement) -> MetaElement:
    m = _matmul(g1.matrix_tuple, g2.matrix_tuple)
    sign = cocycle_alpha(g1.matrix_tuple, g2.matrix_tuple) * g1.sign * g2.sign
    return _unchecked(m, sign)


def _unchecked(m: Matrix, sign: int) -> MetaElement:
    # products of unimodular matrices drift by rounding only; skip revalidation
    obj = object.__new__(MetaElement)
    for name, v in zip("abcd", m):
        object.__setattr__(obj, name, float(v))
    object.__setattr__(obj, "sign", int(sign))
    return obj


def inverse(g: MetaElement) -> MetaElement:
    a, b, c, d = g.matrix_tuple
    m = (d, -b, -c, a)
    return _unchecked(m, cocycle_alpha(g.matrix_tuple, m) * g.sign)


def product(*elems: MetaElement) -> MetaElement:
    out = identity()
    for e in elems:
        out = multiply(out, e)
    return out


# ---------------------------------------------------------------------------
# generators

def identity() -> MetaElement:
    return MetaElement(1.0, 0.0, 0.0, 1.0, 1)


def m_elem(eps1: int, eps2: int) -> MetaElement:
    if eps1 not in (1, -1) or eps2 not in (1, -1):
        raise DomainError("m needs signs in {+1,-1}")
    return _unchecked((float(eps1), 0.0, 0.0, float(eps1)), eps2)


def a_elem(u: float) -> MetaElement:
    if not u > 0:
        raise DomainError("a(u) needs u > 0")
    return _unchecked((float(u), 0.0, 0.0, 1.0 / u), 1)


def n_elem(x: float) -> MetaElement:
    return _unchecked((1.0, float(x), 0.0, 1.0), 1)


def n_minus(x: float) -> MetaElement:
    return _unchecked((1.0, 0.0, float(x), 1.0), 1)


def reduce_angle(theta: float) -> float:
    """Reduce modulo 4*pi into [-2*pi, 2*pi)."""
    r = math.fmod(theta + 2 * math.pi, 4 * math.pi)
    if r < 0:
        r += 4 * math.pi
    r -= 2 * math.pi
    if r >= 2 * math.pi:
        r -= 4 * math.pi
    return r


def theta_sign(theta: float) -> int:
    t = reduce_angle(theta)
    return 1 if -math.pi <= t < math.pi else -1


def k_elem(theta: float) -> MetaElement:
    t = reduce_angle(theta)
    c, s = math.cos(t), math.sin(t)
    # exact values at the quarter turns keep X(g) decisions clean
    if abs(c) < 1e-15:
        c = 0.0
    if abs(s) < 1e-15:
        s = 0.0
    return _unchecked((c, -s, s, c), theta_sign(t))


def s_elem() -> MetaElement:
    return _unchecked((0.0, -1.0, 1.0, 0.0), 1)


def xi0() -> MetaElement:
    return _unchecked((0.0, -0.5, 2.0, 0.0), 1)


def generator(kind: str, *args) -> MetaElement:
    """Dispatch by name: ``m``, ``a``, ``n``, ``n_minus``, ``k``, ``s``, ``xi0``."""
    table = {
        "m": m_elem,
        "a": a_elem,
        "n": n_elem,
        "n_minus": n_minus,
        "k": k_elem,
        "s": s_elem,
        "xi0": xi0,
    }
    try:
        fn = table[kind]
    except KeyError:
        raise DomainError(f"unknown generator {kind!r}") from None
    return fn(*args)


# ---------------------------------------------------------------------------
# K A N_- decomposition

@dataclass(frozen=True)
class IwasawaKAN:
    theta: float
    u: float
    x: float

    def reconstruct(self) -> MetaElement:
        return reconstruct(self.theta, self.u, self.x)


def reconstruct(theta: float, u: float, x: float) -> MetaElement:
    return product(k_elem(theta), a_elem(u), n_minus(x))


def iwasawa_kan(g: MetaElement) -> IwasawaKAN:
    a, b, c, d = g.matrix_tuple
    u = 1.0 / math.hypot(b, d)
    th0 = math.atan2(-b * u, d * u)
    x = u * (c * math.cos(th0) - a * math.sin(th0))
    for th in (th0, th0 - 2 * math.pi):
        th = reduce_angle(th)
        if reconstruct(th, u, x).sign == g.sign:
            return IwasawaKAN(th, u, x)
    raise AssertionError("sign lift not found")  # unreachable: candidates differ by m(1,-1)


# ---------------------------------------------------------------------------
# the congruence subgroup and its cosets

def _near_int(v: float, tol: float = DET_TOL) -> int | None:
    r = round(v)
    return int(r) if abs(v - r) <= tol * max(1.0, abs(v)) else None


def gamma14_member(g: MetaElement) -> bool:
    ints = [_near_int(v) for v in g.matrix_tuple]
    if any(v is None for v in ints):
        return False
    a, b, c, d = ints
    if a % 4 != 1 or d % 4 != 1 or c % 4 != 0:
        return False
    return g.sign == kronecker(c, d)


def gamma14_element(a: int, b: int, c: int, d: int) -> MetaElement:
    """Embed an integer matrix of Gamma_1(4) with its theta-multiplier sign."""
    if a * d - b * c != 1 or a % 4 != 1 or d % 4 != 1 or c % 4 != 0:
        raise DomainError("matrix is not in Gamma_1(4)")
    return MetaElement(float(a), float(b), float(c), float(d), kronecker(c, d))


@dataclass(frozen=True)
class CosetRepInf:
    c: int
    d: int

    def __post_init__(self):
        if self.c % 4 or self.d % 4 != 1 or math.gcd(self.c, self.d) != 1:
            raise DomainError("invalid coset representative for the cusp at infinity")


@dataclass(frozen=True)
class CosetRepZero:
    a: int
    b: int

    def __post_init__(self):
        if self.a % 4 != 1 or math.gcd(self.a, self.b) != 1:
            raise DomainError("invalid coset representative for the cusp at zero")


def enumerate_cosets_inf(height: int) -> List[CosetRepInf]:
    """Bottom rows ``(c, d)`` with ``0 < |c| <= height``, ``|d| <= height``,
    followed by the identity coset ``(0, 1)``.

    ``d`` has to be bounded somehow for a finite list; the box is the
    simplest choice.  Callers that need a true partial sum over ``|c|``
    should sum ``d`` analytically instead (see the eisenstein module).
    """
    if height < 1:
        raise DomainError("height must be >= 1")
    out = []
    for c in range(4, height + 1, 4):
        for cc in (c, -c):
            for d in range(-height, height + 1):
                if d % 4 == 1 and math.gcd(cc, d) == 1:
                    out.append(CosetRepInf(cc, d))
    out.append(CosetRepInf(0, 1))
    return out


def complete_coset_zero(rep: CosetRepZero | Sequence[int]) -> MetaElement:
    """Complete the top row ``(a, b)`` to an element of Gamma_1(4) with ``c > 0``.

    Among the solutions ``(c + 4ak, d + 4bk)`` pick the smallest ``|d|``,
    then the smallest ``c``.
    """
    if not isinstance(rep, CosetRepZero):
        rep = CosetRepZero(*rep)
    a, b = rep.a, rep.b
    # a d - 4 b c' = 1
    g, x, y = egcd(a, -4 * b)
    if g != 1:
        raise DomainError("(a, 4b) must be coprime")
    d0, c0 = x, 4 * y
    if b == 0:
        # a = 1, d = 1; c runs over 4k, smallest positive is 4
        return gamma14_element(a, 0, 4, 1)
    step_c, step_d = 4 * a, 4 * b

    def admissible(k):
        return c0 + step_c * k > 0

    # the admissible k form a half line; the |d| minimiser is near -d0/step_d
    kstar = -d0 / step_d
    if step_c > 0:
        kmin = math.floor(-c0 / step_c) + 1
        cands = {kmin, max(kmin, math.floor(kstar)), max(kmin, math.ceil(kstar))}
    else:
        kmax = math.ceil(-c0 / step_c) - 1
        cands = {kmax, min(kmax, math.floor(kstar)), min(kmax, math.ceil(kstar))}
    best = min(
        (k for k in cands if admissible(k)),
        key=lambda k: (abs(d0 + step_d * k), c0 + step_c * k),
    )
    c, d = c0 + step_c * best, d0 + step_d * best
    return gamma14_element(a, b, c, d)
