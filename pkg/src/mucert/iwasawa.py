"""Power series over Z_p at finite precision, Weierstrass preparation, and the
mu/lambda invariants of torsion modules over Z_p[[T]] given by presentations.

Series are tracked modulo (p^N, T^M). Preparation divides out p^mu and
therefore returns its factors at the residual precision N - mu.
"""
import re
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .errors import InputError, PrecisionError
from .ntheory import is_prime

_INT64_SAFE = 1 << 62


@dataclass(frozen=True)
class PrecisionProfile:
    p: int
    p_prec: int = 12
    t_prec: int = 24

    def __post_init__(self):
        if self.p < 3 or not is_prime(self.p):
            raise InputError(f"p must be an odd prime, got {self.p}")
        if self.p_prec < 1 or self.t_prec < 1:
            raise InputError("precisions must be positive")

    @property
    def modulus(self):
        return self.p ** self.p_prec

    def with_p_prec(self, p_prec):
        return PrecisionProfile(self.p, p_prec, self.t_prec)


def _valuation(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _mul_trunc(a, b, length, mod):
    """Cauchy product of coefficient lists, truncated to ``length`` terms, reduced mod ``mod``."""
    a = a[:length]
    b = b[:length]
    if not a or not b:
        return [0] * length
    terms = min(len(a), len(b))
    if (mod - 1) * (mod - 1) * terms < _INT64_SAFE:
        prod = np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))[:length]
        out = [int(c) % mod for c in prod]
    else:
        out = [0] * min(length, len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j in range(min(len(b), length - i)):
                out[i + j] += x * b[j]
        out = [c % mod for c in out]
    return out + [0] * (length - len(out))


def _inverse_trunc(u, length, mod):
    """Inverse of a power series with unit constant term, mod T^length."""
    inv0 = pow(u[0], -1, mod)
    inv = [inv0]
    for k in range(1, length):
        acc = 0
        for i in range(1, min(k, len(u) - 1) + 1):
            acc += u[i] * inv[k - i]
        inv.append(-inv0 * acc % mod)
    return inv


class TruncatedPowerSeries:
    """An element of Z_p[[T]] modulo (p^N, T^M). Immutable."""

    __slots__ = ("profile", "coeffs")

    def __init__(self, profile, coeffs):
        mod, m = profile.modulus, profile.t_prec
        cs = [int(c) % mod for c in list(coeffs)[:m]]
        cs += [0] * (m - len(cs))
        object.__setattr__(self, "profile", profile)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedPowerSeries is immutable")

    @classmethod
    def one(cls, profile):
        return cls(profile, [1])

    @classmethod
    def zero(cls, profile):
        return cls(profile, [])

    @classmethod
    def monomial(cls, profile, degree, coeff=1):
        return cls(profile, [0] * degree + [coeff])

    def _check(self, other):
        if isinstance(other, int):
            return TruncatedPowerSeries(self.profile, [other])
        if not isinstance(other, TruncatedPowerSeries):
            return NotImplemented
        if other.profile != self.profile:
            raise InputError(f"precision profile mismatch: {self.profile} vs {other.profile}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return TruncatedPowerSeries(self.profile, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return TruncatedPowerSeries(self.profile, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return TruncatedPowerSeries(self.profile, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        return series_mul(self, other)

    def __rmul__(self, other):
        return series_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, TruncatedPowerSeries):
            return NotImplemented
        return self.profile == other.profile and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.profile, self.coeffs))

    def is_zero(self):
        return not any(self.coeffs)

    def valuation(self):
        """Minimum p-adic valuation over the tracked coefficients (None for zero)."""
        vals = [_valuation(c, self.profile.p) for c in self.coeffs if c]
        return min(vals) if vals else None

    def degree(self):
        for j in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[j]:
                return j
        return -1

    def is_distinguished(self):
        d = self.degree()
        if d < 0 or self.coeffs[d] != 1:
            return False
        return all(c % self.profile.p == 0 for c in self.coeffs[:d])

    def __repr__(self):
        return f"TruncatedPowerSeries({format_series(self)!r}, p={self.profile.p}, N={self.profile.p_prec}, M={self.profile.t_prec})"

    def __str__(self):
        return format_series(self)


def series_mul(a, b):
    if isinstance(a, int):
        a = TruncatedPowerSeries(b.profile, [a])
    if isinstance(b, int):
        b = TruncatedPowerSeries(a.profile, [b])
    if a.profile != b.profile:
        raise InputError(f"precision profile mismatch: {a.profile} vs {b.profile}")
    prof = a.profile
    return TruncatedPowerSeries(prof, _mul_trunc(list(a.coeffs), list(b.coeffs), prof.t_prec, prof.modulus))


# --- text format ---------------------------------------------------------------

_TERM = re.compile(r"^(?:(\d+)(?:\*(?=T))?)?(?:T(?:(?:\^|\*\*)(\d+))?)?$")


def parse_series(text, profile):
    """Parse ``"c0 + c1*T + c2*T^2 + ..."`` into a series at ``profile``."""
    if not isinstance(text, str):
        if isinstance(text, int):
            return TruncatedPowerSeries(profile, [text])
        raise InputError(f"series literal must be a string, got {type(text).__name__}")
    s = text.replace(" ", "")
    if not s:
        raise InputError("empty series literal")
    coeffs = {}
    for sign, body in re.findall(r"([+-]?)([^+-]+)", s):
        m = _TERM.match(body)
        if not m or body in ("*",):
            raise InputError(f"cannot parse term {body!r} in {text!r}")
        digits, power = m.group(1), m.group(2)
        has_t = "T" in body
        if not digits and not has_t:
            raise InputError(f"cannot parse term {body!r} in {text!r}")
        c = int(digits) if digits else 1
        deg = (int(power) if power else 1) if has_t else 0
        coeffs[deg] = coeffs.get(deg, 0) + (-c if sign == "-" else c)
    rebuilt = "".join(sign + body for sign, body in re.findall(r"([+-]?)([^+-]+)", s))
    if rebuilt != s:
        raise InputError(f"cannot parse series literal {text!r}")
    top = max(coeffs)
    return TruncatedPowerSeries(profile, [coeffs.get(j, 0) for j in range(top + 1)])


def format_series(f):
    terms = []
    for j, c in enumerate(f.coeffs):
        if not c:
            continue
        if j == 0:
            terms.append(str(c))
        elif j == 1:
            terms.append("T" if c == 1 else f"{c}*T")
        else:
            terms.append(f"T^{j}" if c == 1 else f"{c}*T^{j}")
    return " + ".join(terms) if terms else "0"


# --- Weierstrass preparation ---------------------------------------------------

@dataclass(frozen=True)
class WeierstrassFactorization:
    mu_power: int
    distinguished: TruncatedPowerSeries
    unit: TruncatedPowerSeries
    residual_p_prec: int

    @property
    def lam(self):
        return self.distinguished.degree()

    def reconstruct(self, profile):
        """p^mu * unit * distinguished, lifted back to ``profile``."""
        prod = _mul_trunc(list(self.unit.coeffs), list(self.distinguished.coeffs),
                          profile.t_prec, profile.modulus)
        scale = profile.p ** self.mu_power
        return TruncatedPowerSeries(profile, [scale * c for c in prod])


def _poly_divmod_monic(num, den, mod):
    """Long division of polynomials with monic ``den``; coefficients mod ``mod``."""
    num = list(num)
    d = len(den) - 1
    if len(num) <= d:
        return [0], num
    quot = [0] * (len(num) - d)
    for i in range(len(num) - 1, d - 1, -1):
        c = num[i] % mod
        if c:
            quot[i - d] = c
            for j in range(d + 1):
                num[i - d + j] = (num[i - d + j] - c * den[j]) % mod
    return quot, [c % mod for c in num[:d]]


def weierstrass_prepare(f):
    """Factor f = p^mu * u * P with P distinguished of degree lambda and u a unit.

    The input is read as its polynomial lift of degree < M, so the unit is an
    exact polynomial and the reconstruction holds modulo (p^N, T^M).
    """
    prof = f.profile
    p, n_prec, m_prec = prof.p, prof.p_prec, prof.t_prec
    mu = f.valuation()
    if mu is None:
        raise PrecisionError("series vanishes: indeterminate at this precision")
    n_res = n_prec - mu
    mod = p ** n_res
    scale = p ** mu
    g = [(c // scale) % mod for c in f.coeffs]
    lam = next((j for j, c in enumerate(g) if c % p), None)
    if lam is None:
        raise PrecisionError("no unit coefficient below T^M: t_prec too small")
    res_prof = prof.with_p_prec(n_res)

    if lam == 0:
        return WeierstrassFactorization(mu, TruncatedPowerSeries.one(res_prof),
                                        TruncatedPowerSeries(res_prof, g), n_res)

    # T^lam = q*g + r; P = q*g. With g = B + T^lam*U and C = B/U, Q = q*U solves
    # Q + tau(Q*C) = 1, tau = drop lam low terms and shift. C = 0 mod p, so the
    # Neumann series stops after n_res terms; each tau costs lam terms of T-precision.
    work = lam * (n_res + 1)
    low, high = g[:lam], g[lam:]
    u_inv = _inverse_trunc(high, work, mod)
    c_ser = _mul_trunc(low, u_inv, work, mod)
    h = [1] + [0] * (work - 1)
    q_big = list(h)
    for _ in range(n_res):
        prod = _mul_trunc(h, c_ser, work, mod)
        h = [-c % mod for c in prod[lam:]] + [0] * lam
        if not any(h):
            break
        q_big = [(a + b) % mod for a, b in zip(q_big, h)]
    q = _mul_trunc(q_big, u_inv, lam, mod)
    p_low = _mul_trunc(q, g, lam, mod)
    distinguished = p_low + [1]

    last = max(j for j, c in enumerate(g) if c)
    unit, rem = _poly_divmod_monic(g[:last + 1], distinguished, mod)
    if any(rem):
        raise PrecisionError("Weierstrass division did not close at this precision")
    return WeierstrassFactorization(mu, TruncatedPowerSeries(res_prof, distinguished),
                                    TruncatedPowerSeries(res_prof, unit), n_res)


# --- torsion modules given by presentations -------------------------------------

@dataclass(frozen=True)
class StructureInvariants:
    mu: int
    lam: int

    def to_dict(self):
        return {"mu": self.mu, "lambda": self.lam}

    def __add__(self, other):
        return StructureInvariants(self.mu + other.mu, self.lam + other.lam)


@dataclass(frozen=True)
class LambdaPresentation:
    profile: PrecisionProfile
    matrix: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.matrix)
        if not rows or any(len(r) != len(rows) for r in rows):
            raise InputError("presentation matrix must be square and nonempty")
        for r in rows:
            for e in r:
                if e.profile != self.profile:
                    raise InputError("matrix entry has a different precision profile")
        object.__setattr__(self, "matrix", rows)

    @classmethod
    def from_literals(cls, profile, rows):
        return cls(profile, tuple(tuple(parse_series(e, profile) for e in r) for r in rows))

    @property
    def size(self):
        return len(self.matrix)


def _perm_sign(perm):
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def determinant(matrix, profile):
    """Division-free determinant by Laplace (cofactor) expansion along the first row."""
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    if n == 2:
        return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    total = TruncatedPowerSeries.zero(profile)
    for j in range(n):
        entry = matrix[0][j]
        if entry.is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = entry * determinant(minor, profile)
        total = total + term if j % 2 == 0 else total - term
    return total


def determinant_leibniz(matrix, profile):
    """Determinant as a signed sum over permutations; an independent check on ``determinant``."""
    n = len(matrix)
    total = TruncatedPowerSeries.zero(profile)
    for perm in permutations(range(n)):
        term = TruncatedPowerSeries.one(profile)
        for i, j in enumerate(perm):
            term = term * matrix[i][j]
        total = total + term if _perm_sign(perm) > 0 else total - term
    return total


def module_invariants(pres):
    """(mu, lambda) of the cokernel of a square presentation matrix."""
    det = determinant(pres.matrix, pres.profile)
    if det.is_zero():
        raise PrecisionError("determinant vanishes: not provably torsion at this precision")
    fac = weierstrass_prepare(det)
    return StructureInvariants(fac.mu_power, fac.lam)
