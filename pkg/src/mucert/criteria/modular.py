"""Newforms: explicit obstruction-prime bounds, congruence-prime candidates,
and the H^1 dimension count for unobstructed adjoint representations."""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd

from ..errors import InputError, UnsupportedError
from ..ntheory import euler_phi, factorize, is_prime, is_squarefree, prime_divisors

# weights with a unique normalized level-1 cusp form
LEVEL_ONE_WEIGHTS = (12, 16, 18, 20, 22, 26)

EULER_PRESETS = {
    "odd-adjoint": (1, 0, 2),
    "even-adjoint": (1, 0, 0),
}


@dataclass(frozen=True)
class NewformRecord:
    label: str
    level: int
    weight: int
    eigenvalues: dict
    neben_conductor: int = 1
    hecke_field_degree: int = 1
    hecke_poly: tuple | None = None
    nonirreducible_primes: frozenset | None = None
    sturm_bound: int | None = None

    def __post_init__(self):
        if self.level < 1 or self.weight < 2:
            raise InputError(f"{self.label}: need level >= 1 and weight >= 2")
        if self.neben_conductor < 1 or self.level % self.neben_conductor:
            raise InputError(f"{self.label}: nebentypus conductor must divide the level")
        eig = {}
        for k, v in dict(self.eigenvalues).items():
            ell = int(k)
            if not is_prime(ell):
                raise InputError(f"{self.label}: eigenvalue key {k} is not prime")
            eig[ell] = int(v) if isinstance(v, int) else tuple(int(x) for x in v)
        object.__setattr__(self, "eigenvalues", eig)
        if self.nonirreducible_primes is not None:
            object.__setattr__(self, "nonirreducible_primes", frozenset(self.nonirreducible_primes))
        if self.hecke_poly is not None:
            poly = tuple(int(c) for c in self.hecke_poly)
            if len(poly) - 1 != self.hecke_field_degree or poly[-1] != 1:
                raise InputError(f"{self.label}: hecke_poly must be monic of the declared degree")
            object.__setattr__(self, "hecke_poly", poly)
        for ell, a in eig.items():
            if isinstance(a, tuple):
                if len(a) != self.hecke_field_degree:
                    raise InputError(f"{self.label}: a_{ell} has {len(a)} coordinates, "
                                     f"expected {self.hecke_field_degree}")
            elif self.level % ell and a * a > 4 * ell ** (self.weight - 1):
                raise InputError(f"{self.label}: |a_{ell}| = {abs(a)} violates the Ramanujan bound")
        if self.sturm_bound is not None:
            missing = [ell for ell in _primes_upto(self.sturm_bound) if ell not in eig]
            if missing:
                raise InputError(f"{self.label}: eigenvalues missing below the declared Sturm bound: {missing}")

    @property
    def rational(self):
        return self.hecke_field_degree == 1


def _primes_upto(bound):
    return [q for q in range(2, bound + 1) if is_prime(q)]


def sturm_bound(level, weight):
    """floor(k/12 * [SL2(Z) : Gamma0(N)])."""
    index = Fraction(level)
    for q in factorize(level):
        index *= Fraction(q + 1, q)
    return int(Fraction(weight, 12) * index)


@dataclass(frozen=True)
class ObstructionReport:
    form: NewformRecord
    small_weight: frozenset
    divisor: frozenset
    congruence: frozenset
    annotations: tuple = field(default_factory=tuple)

    @property
    def bound_set(self):
        return sorted(self.small_weight | self.divisor | self.congruence)

    def to_dict(self):
        return {
            "form": self.form.label,
            "level": self.form.level,
            "weight": self.form.weight,
            "neben_conductor": self.form.neben_conductor,
            "bound_set": self.bound_set,
            "components": {
                "small_weight": sorted(self.small_weight),
                "divisor": sorted(self.divisor),
                "congruence": sorted(self.congruence),
            },
            "annotations": list(self.annotations),
        }


@dataclass(frozen=True)
class CongruenceCandidates:
    """Upper-candidate set for congruence primes between two newforms."""

    f: str
    g: str
    primes: frozenset
    sturm_bound: int
    compared: tuple
    differences: dict

    convention = ("upper-candidate set: primes dividing the gcd of N(a_l(f) - a_l(g)) over good "
                  "l <= Sturm bound (plus l0 dividing the gcd taken over l != l0); a genuine "
                  "congruence requires agreement up to the Sturm bound")

    def __contains__(self, q):
        return q in self.primes

    def __iter__(self):
        return iter(sorted(self.primes))

    def to_dict(self):
        return {
            "f": self.f,
            "g": self.g,
            "candidates": sorted(self.primes),
            "sturm_bound": self.sturm_bound,
            "compared_primes": list(self.compared),
            "norm_differences": {str(k): v for k, v in sorted(self.differences.items())},
            "convention": self.convention,
        }


def _int_det(rows):
    """Exact determinant of an integer matrix (Bareiss fraction-free elimination)."""
    m = [list(r) for r in rows]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def field_norm(coords, poly):
    """Norm from Q(theta) to Q of sum coords[i] theta^i, theta a root of monic ``poly``."""
    d = len(poly) - 1
    cols = []
    for j in range(d):
        # coords * theta^j, reduced modulo poly
        v = [0] * j + list(coords) + [0] * (d - j)
        for top in range(len(v) - 1, d - 1, -1):
            c = v[top]
            if c:
                for i in range(d + 1):
                    v[top - d + i] -= c * poly[i]
        cols.append(v[:d])
    return _int_det([[cols[j][i] for j in range(d)] for i in range(d)])


def _difference_norm(f, g, ell):
    a, b = f.eigenvalues[ell], g.eigenvalues[ell]
    if isinstance(a, int) and isinstance(b, int):
        return abs(a - b)
    poly = f.hecke_poly or g.hecke_poly
    if poly is None:
        raise UnsupportedError(f"{f.label}/{g.label}: vector eigenvalues need a declared hecke_poly")
    if (f.hecke_poly and g.hecke_poly and f.hecke_poly != g.hecke_poly):
        raise UnsupportedError("forms with different Hecke fields are not supported")
    d = len(poly) - 1
    va = [a] + [0] * (d - 1) if isinstance(a, int) else list(a)
    vb = [b] + [0] * (d - 1) if isinstance(b, int) else list(b)
    return abs(field_norm([x - y for x, y in zip(va, vb)], poly))


def congruence_primes(f, g, sturm=None):
    if f.label == g.label:
        raise InputError(f"{f.label} compared with itself: Galois-conjugate forms are excluded")
    if f.weight != g.weight:
        raise InputError("congruence primes need equal weights")
    if f.level % g.level:
        raise InputError(f"level of {g.label} ({g.level}) must divide level of {f.label} ({f.level})")
    sturm = sturm if sturm is not None else sturm_bound(f.level, f.weight)
    diffs = {}
    for ell in _primes_upto(sturm):
        if f.level % ell == 0 or g.level % ell == 0:
            continue
        for form in (f, g):
            if ell not in form.eigenvalues:
                raise InputError(f"{form.label}: missing eigenvalue a_{ell} (needed up to Sturm bound {sturm})")
        diffs[ell] = _difference_norm(f, g, ell)
    if not diffs:
        raise InputError(f"no good primes l <= {sturm} to compare")
    total = reduce(gcd, diffs.values(), 0)
    if total == 0:
        raise InputError(f"{f.label} and {g.label} agree up to the Sturm bound: "
                         "identical or Galois conjugate, excluded")
    candidates = set(prime_divisors(total))
    for ell0 in diffs if len(diffs) > 1 else ():
        rest = reduce(gcd, (v for k, v in diffs.items() if k != ell0), 0)
        if rest % ell0 == 0:
            candidates.add(ell0)
    return CongruenceCandidates(f.label, g.label, frozenset(candidates), sturm,
                                tuple(sorted(diffs)), diffs)


def weston_bound(form, siblings=(), sturm=None):
    """Primes outside which Ad rho_{f,p} is unobstructed (k > 2, N squarefree)."""
    k, N, M = form.weight, form.level, form.neben_conductor
    if k == 2:
        raise UnsupportedError("weight 2: no explicit bound; the obstructed primes have "
                               "Dirichlet density zero")
    if not is_squarefree(N):
        raise UnsupportedError(f"level {N} is not squarefree: the explicit bound does not apply")
    small = frozenset(q for q in range(2, k + 2) if is_prime(q))
    product = N * euler_phi(N)
    for q in prime_divisors(N // M):
        product *= q + 1
    divisor = frozenset(q for q in prime_divisors(product))
    cong = set()
    for g in siblings:
        if g.weight != k or N % g.level:
            raise InputError(f"sibling {g.label} must have weight {k} and level dividing {N}")
        cong |= congruence_primes(form, g, sturm).primes
    notes = [
        "for every prime p outside bound_set, Ad rho_{f,p} is unobstructed, so the fine Selmer "
        "mu-invariant of Ad rho_{f,p}(1) and of Sym^2 rho_{f,p} (x) det^-1 chi_p vanishes "
        "(valid for all but finitely many p; explicit here because N is squarefree)",
        "congruence component is an upper-candidate set from Hecke eigenvalue gcds",
    ]
    if N == 1 and k in LEVEL_ONE_WEIGHTS:
        first = next(q for q in range(k + 2, 10 * k) if is_prime(q))
        if form.nonirreducible_primes is None:
            notes.append(f"level-1 criterion: applies for primes p >= {first} with absolutely "
                         "irreducible residual representation; irreducibility data not ingested")
        else:
            excl = sorted(q for q in form.nonirreducible_primes if q >= first)
            notes.append(f"level-1 criterion: applies for primes p >= {first} and p not in "
                         f"{excl} (exceptions from ingested irreducibility data)")
    return ObstructionReport(form, small, divisor, frozenset(cong), tuple(notes))


def euler_h1_dimension(h0, h2, dim_minus):
    """dim H^1 from the global Euler characteristic over Q: h1 = h0 + h2 + dim V^(c=-1)."""
    if min(h0, h2, dim_minus) < 0:
        raise InputError("dimensions must be nonnegative")
    return h0 + h2 + dim_minus


def euler_preset(name):
    try:
        return euler_h1_dimension(*EULER_PRESETS[name])
    except KeyError:
        raise InputError(f"unknown preset {name!r}; choose from {sorted(EULER_PRESETS)}") from None
