"""Hot inner loops: prime sieve, cubic character sums, batched Legendre symbols.

Each kernel exists twice, a numba version and a vectorised numpy version
with identical results. The public names dispatch on ``USE_NUMBA``.
"""
import numpy as np

from ._accel import USE_NUMBA, njit


# --- prime sieve -------------------------------------------------------------

@njit(cache=True, nogil=True)
def _sieve_numba(bound):
    flags = np.ones(bound + 1, dtype=np.bool_)
    flags[0] = False
    if bound >= 1:
        flags[1] = False
    i = 2
    while i * i <= bound:
        if flags[i]:
            for j in range(i * i, bound + 1, i):
                flags[j] = False
        i += 1
    return flags


def _sieve_numpy(bound):
    flags = np.ones(bound + 1, dtype=np.bool_)
    flags[:2] = False
    for i in range(2, int(bound ** 0.5) + 1):
        if flags[i]:
            flags[i * i::i] = False
    return flags


# --- character sum over a cubic ------------------------------------------------
# sum over x in F_l of chi(4x^3 + b2 x^2 + 2 b4 x + b6); coefficients already
# reduced into [0, l). Intermediates stay below l^2, safe in int64 for l < 3e9.

@njit(cache=True, nogil=True)
def _charsum_numba(b2, b4, b6, ell):
    square = np.zeros(ell, dtype=np.bool_)
    for x in range(ell):
        square[(x * x) % ell] = True
    c2 = (2 * b4) % ell
    total = 0
    for x in range(ell):
        v = (4 * x + b2) % ell
        v = (v * x + c2) % ell
        v = (v * x + b6) % ell
        if v != 0:
            if square[v]:
                total += 1
            else:
                total -= 1
    return total


def _charsum_numpy(b2, b4, b6, ell):
    x = np.arange(ell, dtype=np.int64)
    square = np.zeros(ell, dtype=np.bool_)
    square[(x * x) % ell] = True
    v = (4 * x + b2) % ell
    v = (v * x + (2 * b4) % ell) % ell
    v = (v * x + b6) % ell
    nonzero = v != 0
    hits = square[v] & nonzero
    return int(2 * np.count_nonzero(hits) - np.count_nonzero(nonzero))


# --- Legendre symbols of one integer against many odd primes ----------------------

@njit(cache=True, nogil=True)
def _legendre_many_numba(a, primes):
    out = np.empty(primes.shape[0], dtype=np.int8)
    for i in range(primes.shape[0]):
        ell = primes[i]
        base = a % ell
        if base == 0:
            out[i] = 0
            continue
        e = (ell - 1) // 2
        r = 1
        while e > 0:
            if e & 1:
                r = (r * base) % ell
            base = (base * base) % ell
            e >>= 1
        out[i] = 1 if r == 1 else -1
    return out


def _legendre_many_numpy(a, primes):
    primes = np.asarray(primes, dtype=np.int64)
    base = np.mod(a, primes)
    zero = base == 0
    e = (primes - 1) // 2
    r = np.ones_like(primes)
    while np.any(e > 0):
        odd = (e & 1) == 1
        r = np.where(odd, (r * base) % primes, r)
        base = (base * base) % primes
        e >>= 1
    out = np.where(r == 1, 1, -1).astype(np.int8)
    out[zero] = 0
    return out


def sieve_flags(bound):
    """Boolean primality flags for 0..bound."""
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    if USE_NUMBA:
        return _sieve_numba(int(bound))
    return _sieve_numpy(int(bound))


def cubic_charsum(b2, b4, b6, ell):
    ell = int(ell)
    args = (int(b2) % ell, int(b4) % ell, int(b6) % ell, ell)
    if USE_NUMBA:
        return int(_charsum_numba(*args))
    return _charsum_numpy(*args)


def legendre_many(a, primes):
    """Legendre symbols (a / l) for an int64 array of odd primes l."""
    primes = np.ascontiguousarray(primes, dtype=np.int64)
    if USE_NUMBA:
        return _legendre_many_numba(int(a), primes)
    return _legendre_many_numpy(int(a), primes)
