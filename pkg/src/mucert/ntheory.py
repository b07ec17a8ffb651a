"""Exact integer primitives: primality, symbols, square roots mod l, sieving."""
from math import gcd, isqrt

import numpy as np

from . import kernels

# Jaeschke / Sorenson-Webster: the first 12 primes as bases decide every n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_LIMIT = 1 << 64


def is_prime(n):
    """Deterministic Miller-Rabin, correct for all 0 <= n < 2**64."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n >= _LIMIT:
        raise ValueError("n exceeds the 64-bit range")
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def kronecker(a, n):
    """Kronecker symbol (a/n) in {-1, 0, 1}."""
    if a == 0 and n == 0:
        raise ValueError("kronecker(0, 0) is undefined")
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    # factor of 2 in n
    v = (n & -n).bit_length() - 1
    n >>= v
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # n odd and positive: Jacobi symbol
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def sqrt_mod(a, ell):
    """Square root of ``a`` modulo an odd prime, or None for a nonresidue.

    Returns the canonical root min(r, l - r).
    """
    a %= ell
    if a == 0:
        return 0
    if ell == 2:
        return a
    if pow(a, (ell - 1) // 2, ell) != 1:
        return None
    if ell % 4 == 3:
        r = pow(a, (ell + 1) // 4, ell)
    else:
        # Tonelli-Shanks
        q, s = ell - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (ell - 1) // 2, ell) != ell - 1:
            z += 1
        m, c, t, r = s, pow(z, q, ell), pow(a, q, ell), pow(a, (q + 1) // 2, ell)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % ell
                i += 1
            b = pow(c, 1 << (m - i - 1), ell)
            m, c = i, b * b % ell
            t, r = t * c % ell, r * b % ell
    return min(r, ell - r)


def factorize(n):
    """Prime factorisation {q: e} by trial division (n fits desk-scale budgets)."""
    if n < 1:
        raise ValueError("n must be positive")
    out = {}
    for q in (2, 3):
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    q, step = 5, 2
    while q * q <= n:
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
        q += step
        step = 6 - step
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_divisors(n):
    return sorted(factorize(abs(n))) if n else []


def euler_phi(n):
    if n < 1:
        raise ValueError("n must be positive")
    result = n
    for q in factorize(n):
        result = result // q * (q - 1)
    return result


def is_squarefree(n):
    return all(e == 1 for e in factorize(abs(n)).values())


def multiplicative_order(a, n):
    """Order of a in (Z/n)^x."""
    a %= n
    if gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit mod {n}")
    phi = euler_phi(n)
    order = phi
    for q, e in factorize(phi).items():
        for _ in range(e):
            if pow(a, order // q, n) == 1:
                order //= q
            else:
                break
    return order


class PrimeSieve:
    """Immutable primality table for 0..bound."""

    def __init__(self, bound):
        self.bound = int(bound)
        self.flags = kernels.sieve_flags(self.bound)
        self.flags.setflags(write=False)

    def __contains__(self, n):
        return 0 <= n <= self.bound and bool(self.flags[n])

    def primes(self, lo=2, hi=None):
        hi = self.bound if hi is None else min(hi, self.bound)
        idx = np.flatnonzero(self.flags[max(lo, 0):hi + 1]) + max(lo, 0)
        return idx.astype(np.int64)


def primes_up_to(bound):
    return PrimeSieve(bound).primes()


def integer_sqrt_exact(n):
    """Return r with r*r == n, or None."""
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None
