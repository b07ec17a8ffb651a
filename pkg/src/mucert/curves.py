"""Elliptic curves over Q: reduction mod l, point counts, supersingular scans,
and certificate-style irreducibility checks for the mod-p representation."""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import isqrt

from . import kernels
from ._accel import thread_cap
from .errors import BudgetError, InputError
from .ntheory import PrimeSieve, is_prime, kronecker, prime_divisors, sqrt_mod

ENUMERATION_BUDGET = 2_000_000

GOOD = "good"
SPLIT = "split-multiplicative"
NONSPLIT = "nonsplit-multiplicative"
ADDITIVE = "additive"


@dataclass(frozen=True)
class CurveRecord:
    label: str
    ainvs: tuple
    conductor: int
    rank: int = 0
    sha_order: int = 1
    tamagawa_product: int = 1
    isogeny_degrees: frozenset = field(default_factory=frozenset)
    minimal: bool = True

    def __post_init__(self):
        ainvs = tuple(int(a) for a in self.ainvs)
        if len(ainvs) != 5:
            raise InputError("ainvs must have five entries [a1, a2, a3, a4, a6]")
        object.__setattr__(self, "ainvs", ainvs)
        object.__setattr__(self, "isogeny_degrees", frozenset(int(d) for d in self.isogeny_degrees))
        if self.conductor < 1 or self.rank < 0 or self.sha_order < 1 or self.tamagawa_product < 1:
            raise InputError(f"{self.label}: conductor, sha_order, tamagawa_product must be positive, rank nonnegative")
        disc = self.discriminant
        if disc == 0:
            raise InputError(f"{self.label}: singular Weierstrass equation (discriminant 0)")
        for q in self.bad_primes:
            if disc % q:
                raise InputError(f"{self.label}: bad prime {q} does not divide the discriminant {disc}")

    @property
    def b_invariants(self):
        a1, a2, a3, a4, a6 = self.ainvs
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    @property
    def discriminant(self):
        b2, b4, b6, b8 = self.b_invariants
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    @property
    def c4(self):
        b2, b4, _, _ = self.b_invariants
        return b2 * b2 - 24 * b4

    @property
    def c6(self):
        b2, b4, b6, _ = self.b_invariants
        return -b2 ** 3 + 36 * b2 * b4 - 216 * b6

    @property
    def bad_primes(self):
        return tuple(prime_divisors(self.conductor))

    def has_good_reduction(self, ell):
        return self.conductor % ell != 0


@dataclass(frozen=True)
class ReducedCurve:
    ell: int
    reduction_type: str
    group_order: int
    singular_x: int | None = None

    @property
    def trace(self):
        return self.ell + 1 - self.group_order


@dataclass(frozen=True)
class IrreducibilityCertificate:
    status: str
    witness_prime: int | None = None
    witness_poly: tuple | None = None
    reason: str = ""

    @property
    def certified(self):
        return self.status == "certified"


def _check_prime(ell):
    if ell == 2:
        raise InputError("l = 2 is unsupported (completing the square needs odd l)")
    if ell < 2 or not is_prime(ell):
        raise InputError(f"{ell} is not a prime")
    if ell > ENUMERATION_BUDGET:
        raise BudgetError(f"l = {ell} exceeds the enumeration budget {ENUMERATION_BUDGET}")


# cubic F(x) = 4x^3 + b2 x^2 + 2 b4 x + b6, so that (2y + a1 x + a3)^2 = F(x)

def _cubic(curve, ell):
    b2, b4, b6, _ = curve.b_invariants
    return [b6 % ell, (2 * b4) % ell, b2 % ell, 4 % ell]


def _poly_trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _poly_mod(f, g, ell):
    f = list(f)
    inv = pow(g[-1], -1, ell)
    while len(f) >= len(g):
        c = f[-1] * inv % ell
        shift = len(f) - len(g)
        for i, gc in enumerate(g):
            f[shift + i] = (f[shift + i] - c * gc) % ell
        _poly_trim(f)
    return f


def _poly_gcd(f, g, ell):
    f, g = _poly_trim(list(f)), _poly_trim(list(g))
    while g:
        f, g = g, _poly_mod(f, g, ell)
    return f


def _singular_x(curve, ell):
    f = _cubic(curve, ell)
    df = [f[1], 2 * f[2] % ell, 3 * f[3] % ell]
    g = _poly_gcd(f, df, ell)
    if len(g) == 2:
        return -g[0] * pow(g[1], -1, ell) % ell
    if len(g) == 3:
        # (x - x0)^2 up to scaling
        return -g[1] * pow(2 * g[2], -1, ell) % ell
    if len(g) == 4 and ell == 3:
        # F' vanishes identically: F = c(x^3 - x0^3) and cubing is the identity on F_3
        return -g[0] * pow(g[3], -1, ell) % ell
    raise InputError(f"reduction mod {ell} has no singular point; model not minimal?")


def reduce_curve(curve, ell):
    """Reduction type and group order of the (smooth part of the) reduction mod l."""
    _check_prime(ell)
    if curve.discriminant % ell:
        if not curve.has_good_reduction(ell):
            raise InputError(f"{curve.label}: l = {ell} divides the conductor but not the discriminant")
        b2, b4, b6, _ = curve.b_invariants
        order = ell + 1 + kernels.cubic_charsum(b2, b4, b6, ell)
        return ReducedCurve(ell, GOOD, order)
    if curve.has_good_reduction(ell) or not curve.minimal:
        raise InputError(f"{curve.label}: model is not minimal at {ell}")
    x0 = _singular_x(curve, ell)
    b2 = curve.b_invariants[0]
    # Y^2 ~ slope^2 (x - x0)^2 near the singular point, slope^2 = F''(x0)/2
    slope_sq = (12 * x0 + b2) % ell
    if slope_sq == 0:
        return ReducedCurve(ell, ADDITIVE, ell, x0)
    if kronecker(slope_sq, ell) == 1:
        return ReducedCurve(ell, SPLIT, ell - 1, x0)
    return ReducedCurve(ell, NONSPLIT, ell + 1, x0)


def reduce_at_two(curve):
    """Reduction at l = 2 by enumerating F_2-points.

    The smooth-part order alone fixes the bad type: 1 split, 3 nonsplit, 2 additive.
    """
    a1, a2, a3, a4, a6 = curve.ainvs
    smooth = 1
    for x in (0, 1):
        for y in (0, 1):
            if (y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6) % 2:
                continue
            fy = (2 * y + a1 * x + a3) % 2
            fx = (a1 * y - 3 * x * x - 2 * a2 * x - a4) % 2
            if fx or fy:
                smooth += 1
    if curve.has_good_reduction(2):
        if curve.discriminant % 2 == 0:
            raise InputError(f"{curve.label}: model is not minimal at 2")
        return ReducedCurve(2, GOOD, smooth)
    if curve.discriminant % 2 or not curve.minimal:
        raise InputError(f"{curve.label}: model is not minimal at 2")
    kind = {1: SPLIT, 3: NONSPLIT, 2: ADDITIVE}[smooth]
    return ReducedCurve(2, kind, smooth)


def trace_of_frobenius(curve, ell):
    red = reduce_curve(curve, ell)
    if red.reduction_type != GOOD:
        raise InputError(f"{curve.label} has bad reduction at {ell}")
    return red.trace


def supersingular_scan(curve, bound, threads=None):
    """Good primes 5 <= l <= bound with a_l = 0, ascending."""
    if bound > ENUMERATION_BUDGET:
        raise BudgetError(f"bound {bound} exceeds the enumeration budget {ENUMERATION_BUDGET}")
    if bound < 5:
        return []
    primes = [int(q) for q in PrimeSieve(bound).primes(5) if curve.discriminant % int(q)]
    threads = threads or thread_cap()

    def is_supersingular(ell):
        return trace_of_frobenius(curve, ell) == 0

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            flags = list(pool.map(is_supersingular, primes))
    else:
        flags = [is_supersingular(q) for q in primes]
    return [q for q, hit in zip(primes, flags) if hit]


def certify_irreducible(curve, p, search_bound=200):
    """Look for an odd good l whose Frobenius polynomial x^2 - a_l x + l is irreducible mod p.

    Success proves the mod-p representation irreducible; failure proves nothing.
    """
    if p in curve.isogeny_degrees:
        return IrreducibilityCertificate("inconclusive", reason="rational p-isogeny recorded")
    if search_bound < 3:
        return IrreducibilityCertificate("inconclusive", reason="empty search range")
    for ell in PrimeSieve(search_bound).primes(3):
        ell = int(ell)
        if ell == p or curve.discriminant % ell == 0:
            continue
        a = trace_of_frobenius(curve, ell)
        disc = (a * a - 4 * ell) % p
        if kronecker(disc, p) == -1:
            return IrreducibilityCertificate(
                "certified", ell, (a % p, ell % p),
                f"x^2 - {a % p}x + {ell % p} irreducible mod {p} (discriminant {disc} is a nonresidue)")
    return IrreducibilityCertificate("inconclusive", reason=f"no witness for l <= {search_bound}")


# --- group law on the reduction (general Weierstrass form) ---------------------------
# points are (x, y) tuples; None is the point at infinity

def point_negate(pt, ainvs, ell):
    if pt is None:
        return None
    a1, _, a3, _, _ = ainvs
    x, y = pt
    return x, (-y - a1 * x - a3) % ell


def point_add(pt, qt, ainvs, ell):
    if pt is None:
        return qt
    if qt is None:
        return pt
    a1, a2, a3, a4, a6 = ainvs
    x1, y1 = pt
    x2, y2 = qt
    if x1 == x2:
        if (y1 + y2 + a1 * x2 + a3) % ell == 0:
            return None
        num = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) % ell
        den = (2 * y1 + a1 * x1 + a3) % ell
    else:
        num = (y2 - y1) % ell
        den = (x2 - x1) % ell
    lam = num * pow(den, -1, ell) % ell
    nu = (y1 - lam * x1) % ell
    x3 = (lam * lam + a1 * lam - a2 - x1 - x2) % ell
    y3 = (-(lam + a1) * x3 - nu - a3) % ell
    return x3, y3


def scalar_mul(k, pt, ainvs, ell):
    result = None
    addend = pt
    while k > 0:
        if k & 1:
            result = point_add(result, addend, ainvs, ell)
        addend = point_add(addend, addend, ainvs, ell)
        k >>= 1
    return result


def random_point(curve, ell, rng):
    """Uniform-ish random affine point of the reduction mod an odd good prime."""
    a1, a2, a3, a4, a6 = (a % ell for a in curve.ainvs)
    b2, b4, b6, _ = curve.b_invariants
    inv2 = pow(2, -1, ell)
    while True:
        x = rng.randrange(ell)
        rhs = (4 * x ** 3 + b2 * x * x + 2 * b4 * x + b6) % ell
        root = sqrt_mod(rhs, ell)
        if root is None:
            continue
        if rng.random() < 0.5:
            root = -root % ell
        y = (root - a1 * x - a3) * inv2 % ell
        return x, y


def on_curve(pt, ainvs, ell):
    if pt is None:
        return True
    a1, a2, a3, a4, a6 = ainvs
    x, y = pt
    return (y * y + a1 * x * y + a3 * y - (x ** 3 + a2 * x * x + a4 * x + a6)) % ell == 0


def hasse_ok(ell, order):
    a = ell + 1 - order
    return a * a <= 4 * ell and abs(a) <= 2 * isqrt(ell) + 2
