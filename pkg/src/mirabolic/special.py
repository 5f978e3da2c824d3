"""Complex special functions: Gamma, Gamma_R, Gamma_C, the oscillatory factor
G_delta, Hurwitz zeta and Dirichlet L-functions with analytic continuation.

Everything Gamma-like is computed in log space (scipy's complex loggamma,
which tracks the branch continuously) and exponentiated at the boundary, so
ratios like G_delta stay finite where the naive quotient would overflow.

Hurwitz zeta uses Euler-Maclaurin with a configurable truncation point and
Bernoulli depth; Dirichlet L-functions are assembled from it as
L(s, psi) = N^{-s} sum_a psi(a) zeta(s, a/N), which continues L to the whole
plane (minus s=1 for principal psi).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, pi

import scipy.special as sp

from .characters import DirichletCharacter
from .errors import NotPrincipalError, PoleError

_POLE_TOL = 1e-12


@dataclass(frozen=True)
class PrecisionConfig:
    """Knobs for the Euler-Maclaurin continuation of Hurwitz zeta.

    em_truncation: minimum number of directly summed terms (the truncation
        point also grows with |Im s| automatically).
    bernoulli_depth: number of Bernoulli correction terms (B_2 .. B_{2J}).
    """

    em_truncation: int = 30
    bernoulli_depth: int = 25


DEFAULT_PRECISION = PrecisionConfig()


def _is_nonpositive_even_integer(z: complex) -> bool:
    return (
        abs(z.imag) < _POLE_TOL
        and z.real < _POLE_TOL
        and abs(z.real / 2 - round(z.real / 2)) < _POLE_TOL
    )


def _is_nonpositive_integer(z: complex) -> bool:
    return (
        abs(z.imag) < _POLE_TOL
        and z.real < _POLE_TOL
        and abs(z.real - round(z.real)) < _POLE_TOL
    )


def _check_finite(value: complex, what: str) -> complex:
    if not (cmath.isfinite(value)):
        raise PoleError(f"{what} evaluated to a non-finite value")
    return value


def gamma_complex(s: complex) -> complex:
    """Gamma(s); raises PoleError at nonpositive integers."""
    s = complex(s)
    if _is_nonpositive_integer(s):
        raise PoleError(f"Gamma pole at s={s}")
    return _check_finite(complex(sp.gamma(s)), "Gamma")


def log_gamma(s: complex) -> complex:
    s = complex(s)
    if _is_nonpositive_integer(s):
        raise PoleError(f"Gamma pole at s={s}")
    return complex(sp.loggamma(s))


def log_gamma_R(s: complex) -> complex:
    """log of Gamma_R(s) = pi^{-s/2} Gamma(s/2)."""
    s = complex(s)
    return -s / 2 * cmath.log(pi) + log_gamma(s / 2)


def gamma_R(s: complex) -> complex:
    """Gamma_R(s) = pi^{-s/2} Gamma(s/2); poles at even nonpositive integers."""
    return _check_finite(cmath.exp(log_gamma_R(s)), "Gamma_R")


def log_gamma_C(s: complex) -> complex:
    """log of Gamma_C(s) = 2 (2 pi)^{-s} Gamma(s)."""
    s = complex(s)
    return cmath.log(2) - s * cmath.log(2 * pi) + log_gamma(s)


def gamma_C(s: complex) -> complex:
    """Gamma_C(s) = 2 (2 pi)^{-s} Gamma(s); poles at nonpositive integers."""
    return _check_finite(cmath.exp(log_gamma_C(s)), "Gamma_C")


def G_delta_is_pole(s: complex, delta: int) -> bool:
    """True at s in {-delta, -delta-2, -delta-4, ...}."""
    return _is_nonpositive_even_integer(complex(s) + delta)


def G_delta_is_zero(s: complex, delta: int) -> bool:
    """True at s in {1+delta, 3+delta, ...} (zeros of the Gamma_R ratio)."""
    return _is_nonpositive_even_integer(1 - complex(s) + delta)


def G_delta(s: complex, delta: int) -> complex:
    """G_delta(s) = i^delta Gamma_R(s+delta) / Gamma_R(1-s+delta).

    Satisfies G_delta(s) G_delta(1-s) = (-1)^delta.  Computed as a single
    exponential of a log difference.
    """
    s = complex(s)
    delta = int(delta) % 2
    if G_delta_is_pole(s, delta):
        raise PoleError(f"G_{delta} pole at s={s}")
    if G_delta_is_zero(s, delta):
        return 0j
    val = 1j**delta * cmath.exp(log_gamma_R(s + delta) - log_gamma_R(1 - s + delta))
    return _check_finite(val, "G_delta")


@lru_cache(maxsize=None)
def _bernoulli(n: int) -> Fraction:
    """B_n (B_1 = -1/2 convention) by the standard recurrence, exact."""
    if n == 0:
        return Fraction(1)
    # sum_{k=0}^{n} C(n+1,k) B_k = 0  for n >= 1
    total = Fraction(0)
    binom = 1  # C(n+1, 0)
    for k in range(n):
        total += binom * _bernoulli(k)
        binom = binom * (n + 1 - k) // (k + 1)
    return -total / (n + 1)


def hurwitz_zeta(
    s: complex, a: float, config: PrecisionConfig = DEFAULT_PRECISION
) -> complex:
    """zeta(s, a) = sum_{k>=0} (k+a)^{-s}, continued by Euler-Maclaurin.

    a must lie in (0, 1]; s != 1.
    """
    s = complex(s)
    if not 0 < a <= 1:
        raise ValueError("a must lie in (0, 1]")
    if abs(s - 1) < _POLE_TOL:
        raise PoleError("Hurwitz zeta pole at s=1")

    M = max(config.em_truncation, int(1.2 * abs(s.imag)) + 10)
    J = config.bernoulli_depth

    total = 0j
    for k in range(M):
        total += cmath.exp(-s * cmath.log(a + k))
    x = a + M
    logx = cmath.log(x)
    total += cmath.exp((1 - s) * logx) / (s - 1)
    total += cmath.exp(-s * logx) / 2

    # Bernoulli tail: sum_j B_{2j}/(2j)! * (s)_{2j-1} * x^{-s-2j+1}
    poch = s  # (s)_1
    xpow = cmath.exp((-s - 1) * logx)
    for j in range(1, J + 1):
        b = _bernoulli(2 * j)
        fact = 1
        for i in range(2, 2 * j + 1):
            fact *= i
        total += float(b) / fact * poch * xpow
        poch *= (s + 2 * j - 1) * (s + 2 * j)
        xpow /= x * x
    return total


def riemann_zeta(s: complex, config: PrecisionConfig = DEFAULT_PRECISION) -> complex:
    return hurwitz_zeta(s, 1.0, config)


def dirichlet_L(
    s: complex,
    psi: DirichletCharacter,
    config: PrecisionConfig = DEFAULT_PRECISION,
) -> complex:
    """L(s, psi) = N^{-s} sum_{a=1}^{N} psi(a) zeta(s, a/N).

    Agrees with the Dirichlet series for Re s > 1; the only pole is at s=1
    for principal psi.
    """
    s = complex(s)
    N = psi.modulus
    if abs(s - 1) < _POLE_TOL:
        if psi.is_principal:
            raise PoleError("L(s, principal) pole at s=1")
        # nontrivial psi: the zeta poles cancel; evaluate just off-axis is
        # unnecessary because the combination below is formed termwise.
        return _dirichlet_L_at_1(psi, config)
    total = 0j
    for a in sorted(psi.exponents):
        aa = a if a != 0 else N  # modulus 1 stores residue 0
        total += psi(a) * hurwitz_zeta(s, aa / N, config)
    return cmath.exp(-s * cmath.log(N)) * total


def _dirichlet_L_at_1(psi: DirichletCharacter, config: PrecisionConfig) -> complex:
    # The simple poles of zeta(s, a/N) cancel for nonprincipal psi; take the
    # finite parts: zeta(s,a) = 1/(s-1) - psi0(a) + O(s-1) with digamma.
    # Use the digamma formula L(1,psi) = -(1/N) sum psi(a) digamma(a/N).
    N = psi.modulus
    total = 0j
    for a in sorted(psi.exponents):
        total += psi(a) * complex(sp.digamma(a / N))
    return -total / N


def residue_L_at_1(psi: DirichletCharacter) -> float:
    """Residue of L(s, psi) at s=1 for principal psi: phi(N)/N."""
    if not psi.is_principal:
        raise NotPrincipalError("residue defined only for principal characters")
    N = psi.modulus
    num = sum(1 for a in range(1, N + 1) if gcd(a, N) == 1)
    return num / N if N > 1 else 1.0
