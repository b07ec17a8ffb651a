"""Imaginary quadratic fields through positive definite binary quadratic forms:
reduced forms, class group, Gauss composition, classes of split primes, and
splitting in unramified cyclic subextensions of the Hilbert class field."""
from dataclasses import dataclass
from math import gcd, isqrt

from .errors import BudgetError, InputError, UnsupportedError
from .ntheory import factorize, is_prime, is_squarefree, kronecker, sqrt_mod

DISC_BUDGET = 10 ** 8

INERT = "inert"
RAMIFIED = "ramified"


def is_fundamental(disc):
    if disc % 4 == 1:
        return is_squarefree(disc)
    if disc % 4 == 0:
        m = disc // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


@dataclass(frozen=True)
class QuadField:
    """K = Q(sqrt(-D)) for squarefree D > 0."""

    D: int

    def __post_init__(self):
        if self.D < 1:
            raise InputError("D must be a positive integer")
        if not is_squarefree(self.D):
            raise InputError(f"D = {self.D} is not squarefree: -D gives a non-maximal order")

    @property
    def disc(self):
        return -self.D if self.D % 4 == 3 else -4 * self.D

    @classmethod
    def from_disc(cls, disc):
        if disc >= 0 or disc % 4 not in (0, 1):
            raise InputError(f"{disc} is not a negative discriminant")
        if not is_fundamental(disc):
            raise InputError(f"{disc} is not a fundamental discriminant")
        return cls(-disc if disc % 4 == 1 else -disc // 4)


def _xgcd(a, b):
    """(g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


@dataclass(frozen=True, order=True)
class QuadForm:
    a: int
    b: int
    c: int

    @property
    def disc(self):
        return self.b * self.b - 4 * self.a * self.c

    def __call__(self, x, y):
        return self.a * x * x + self.b * x * y + self.c * y * y

    def is_reduced(self):
        a, b, c = self.a, self.b, self.c
        if not (a > 0 and abs(b) <= a <= c):
            return False
        return b >= 0 if (abs(b) == a or a == c) else True

    def reduce(self):
        a, b, c = self.a, self.b, self.c
        if a <= 0 or self.disc >= 0:
            raise InputError(f"{self} is not positive definite")
        while True:
            if not -a < b <= a:
                r = (a - b) // (2 * a)
                b, c = b + 2 * r * a, a * r * r + b * r + c
            if a > c:
                a, b, c = c, -b, a
                continue
            if a == c and b < 0:
                b = -b
            return QuadForm(a, b, c)

    def inverse(self):
        return QuadForm(self.a, -self.b, self.c).reduce()

    def compose(self, other):
        """Gauss composition followed by reduction."""
        if self.disc != other.disc:
            raise InputError(f"discriminant mismatch: {self.disc} vs {other.disc}")
        a1, b1, c1 = self.a, self.b, self.c
        a2, b2, c2 = other.a, other.b, other.c
        if a1 > a2:
            a1, b1, c1, a2, b2, c2 = a2, b2, c2, a1, b1, c1
        s = (b1 + b2) // 2
        n = b2 - s
        if a2 % a1 == 0:
            y1, d = 0, a1
        else:
            d, y1, _ = _xgcd(a2, a1)
        if s % d == 0:
            y2, x2, d1 = -1, 0, d
        else:
            d1, x2, y2 = _xgcd(s, d)
            y2 = -y2
        v1, v2 = a1 // d1, a2 // d1
        r = (y1 * y2 * n - x2 * c2) % v1
        b3 = b2 + 2 * v2 * r
        a3 = v1 * v2
        c3 = (c2 * d1 + r * (b2 + v2 * r)) // v1
        return QuadForm(a3, b3, c3).reduce()

    def __mul__(self, other):
        return self.compose(other)

    def __pow__(self, k):
        result = principal_form(self.disc)
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        while k:
            if k & 1:
                result = result.compose(base)
            base = base.compose(base)
            k >>= 1
        return result

    def __str__(self):
        return f"({self.a}, {self.b}, {self.c})"


def principal_form(disc):
    k = disc % 2
    return QuadForm(1, k, (k - disc) // 4)


class ClassGroupTable:
    """All reduced primitive forms of one discriminant, with the group law."""

    def __init__(self, field, classes):
        self.field = field
        self.classes = tuple(classes)
        self.h = len(self.classes)
        self._index = {f: i for i, f in enumerate(self.classes)}
        self._orders = {}
        self.cyclic_generator = next((f for f in self.classes if self.order(f) == self.h), None)

    @property
    def disc(self):
        return self.field.disc

    @property
    def principal(self):
        return self.classes[0]

    def __contains__(self, form):
        return form in self._index

    def __len__(self):
        return self.h

    def index(self, form):
        return self._index[form]

    def is_cyclic(self):
        return self.cyclic_generator is not None

    def order(self, form):
        form = form.reduce()
        if form not in self._orders:
            k, g = 1, form
            while g != self.principal:
                g = g.compose(form)
                k += 1
            self._orders[form] = k
        return self._orders[form]

    def structure(self):
        """Invariant factors [n1, n2, ...] with n1 | n2 | ..., product h."""
        if self.h == 1:
            return [1]
        primary = []
        for q, e in factorize(self.h).items():
            # c[k] = #{x : x^(q^k) = 1}; c[k]/c[k-1] = q^(number of cyclic factors of order >= q^k)
            c = [1] + [sum(1 for f in self.classes if q ** k % self.order(f) == 0)
                       for k in range(1, e + 1)]
            parts_at_least = []
            for k in range(1, e + 1):
                ratio, t = c[k] // c[k - 1], 0
                while ratio > 1:
                    ratio //= q
                    t += 1
                parts_at_least.append(t)
            exps = []
            for k in range(1, e + 1):
                nxt = parts_at_least[k] if k < e else 0
                exps += [k] * (parts_at_least[k - 1] - nxt)
            primary.append(sorted((q ** x for x in exps), reverse=True))
        width = max(len(ps) for ps in primary)
        factors = [1] * width
        for ps in primary:
            for i, v in enumerate(ps):
                factors[i] *= v
        return sorted(factors)


def enumerate_reduced_forms(field):
    """Every reduced primitive form of discriminant field.disc, principal form first."""
    disc = field.disc
    if -disc > DISC_BUDGET:
        raise BudgetError(f"|disc| = {-disc} exceeds the budget {DISC_BUDGET}")
    forms = []
    for a in range(1, isqrt(-disc // 3) + 1):
        for b in range(-a + 1, a + 1):
            if (b - disc) % 2:
                continue
            num = b * b - disc
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if gcd(gcd(a, b), c) != 1:
                continue
            forms.append(QuadForm(a, b, c))
    return ClassGroupTable(field, forms)


def prime_form(disc, ell):
    """A form (l, b, c) of discriminant disc, for l split (kronecker = +1)."""
    if ell == 2:
        b = next(b for b in (1, 3) if (b * b - disc) % 8 == 0)
    else:
        r = sqrt_mod(disc % ell, ell)
        b = r if (r - disc) % 2 == 0 else ell - r
    return QuadForm(ell, b, (b * b - disc) // (4 * ell))


def prime_class(field, ell):
    """Reduced class of a prime above a split l, else the tag "inert" / "ramified"."""
    if not is_prime(ell):
        raise InputError(f"{ell} is not prime")
    disc = field.disc
    if ell == 2 and disc % 2 == 0:
        return RAMIFIED
    k = kronecker(disc, ell)
    if k == 0:
        return RAMIFIED
    if k == -1:
        return INERT
    return prime_form(disc, ell).reduce()


def subfield_image_order(table, form, n):
    """Order of the image of ``form`` in the order-n quotient of a cyclic class group."""
    if not table.is_cyclic():
        raise UnsupportedError(f"class group of disc {table.disc} is not cyclic: {table.structure()}")
    if n < 1 or table.h % n:
        raise InputError(f"n = {n} does not divide h = {table.h}")
    return table.order(form ** (table.h // n))


def split_completely_in_subfield(field, table, n, ell):
    """Whether a split prime l splits completely in the degree-n unramified cyclic
    extension of K inside the Hilbert class field."""
    cls = prime_class(field, ell)
    if not isinstance(cls, QuadForm):
        raise InputError(f"{ell} is {cls} in K, not split")
    return subfield_image_order(table, cls, n) == 1
