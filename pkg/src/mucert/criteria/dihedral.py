"""Induced representations Ind_K^Q(psi * eta) with K imaginary quadratic, psi a
character of a degree-n unramified cyclic extension L'/K, and eta the mod-p
cyclotomic character.

Local conditions at l in S reduce to orders: |psi(G_w)| is the order of the
Frobenius class in the order-n quotient of Cl(K), and |eta(G_l)| is the order
of l in (Z/p)^x (p - 1 at l = p, where eta is totally ramified).
"""
from dataclasses import dataclass, field

import numpy as np

from .. import kernels
from ..errors import BudgetError, InputError
from ..forms import INERT, RAMIFIED, QuadForm, enumerate_reduced_forms, prime_class, subfield_image_order
from ..ntheory import PrimeSieve, is_prime, kronecker, multiplicative_order, prime_divisors
from .certificate import FAIL, INCONCLUSIVE, ORACLE, PASS, Certificate, Condition

THEOREM = "induced-dihedral-fine-selmer-criterion"
SCAN_BUDGET = 2_000_000

SPLIT = "split"

# condition (3) may be supplied directly or through the stronger unramified statement
FLAG_DIRECT = "L1S = L.K1S"
FLAG_SUFFICIENT = "L1 = L.K1"


@dataclass(frozen=True)
class DihedralScenario:
    field: object
    n: int
    p: int = 3
    S_extra: frozenset = frozenset()
    oracle_flags: dict = field(default_factory=dict, hash=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "S_extra", frozenset(int(q) for q in self.S_extra))
        if self.p < 3 or not is_prime(self.p):
            raise InputError(f"p must be an odd prime, got {self.p}")
        if self.n <= 1 or self.n % 2 == 0:
            raise InputError(f"n must be odd and > 1, got {self.n}")
        if self.n % self.p == 0:
            raise InputError(f"p = {self.p} divides n = {self.n}")
        table = enumerate_reduced_forms(self.field)
        object.__setattr__(self, "table", table)
        if table.h % self.n:
            raise InputError(f"n = {self.n} does not divide the class number {table.h}")
        # raises UnsupportedError for non-cyclic class groups
        subfield_image_order(table, table.principal, self.n)

    @property
    def disc(self):
        return self.field.disc

    @property
    def base_primes(self):
        """Finite primes forced into S: p and the primes ramified in L = L'(mu_p)."""
        return sorted(set(prime_divisors(self.disc)) | {self.p})


@dataclass(frozen=True)
class PrimeMembership:
    ell: int
    residue: int
    splitting: str
    frobenius_order: int | None
    totally_split: bool | None
    in_S1: bool
    in_S2: bool

    @property
    def in_S(self):
        return self.in_S1 or self.in_S2


def _splitting(scenario, ell):
    cls = prime_class(scenario.field, ell)
    if isinstance(cls, QuadForm):
        return SPLIT, cls
    return cls, None


def dihedral_prime_class(scenario, ell):
    if not is_prime(ell):
        raise InputError(f"{ell} is not prime")
    p = scenario.p
    splitting, cls = _splitting(scenario, ell)
    order = total = None
    if cls is not None:
        order = subfield_image_order(scenario.table, cls, scenario.n)
        total = order == 1
    r = ell % p
    in_s1 = r == 1 and splitting == SPLIT and not total
    in_s2 = r == p - 1 and splitting != INERT
    return PrimeMembership(ell, r, splitting, order, total, in_s1, in_s2)


@dataclass(frozen=True)
class DensityReport:
    D: int
    p: int
    n: int
    bound: int
    sample_size: int
    counts: dict
    expected: dict
    excluded: tuple
    rows: tuple = ()

    @property
    def density(self):
        if not self.sample_size:
            return None
        return self.counts["S"] / self.sample_size

    def component_density(self, name):
        return self.counts[name] / self.sample_size if self.sample_size else None

    def to_dict(self):
        return {
            "D": self.D,
            "p": self.p,
            "n": self.n,
            "bound": self.bound,
            "sample_size": self.sample_size,
            "excluded_primes": list(self.excluded),
            "counts": dict(self.counts),
            "density": self.density,
            "component_density": {k: self.component_density(k) for k in ("S1", "S2")},
            "expected_density": dict(self.expected),
        }


def expected_densities(p, n):
    """Chebotarev densities of S1, S2 and S (residue class, splitting and L' conditions independent)."""
    s1 = (1 / (p - 1)) * 0.5 * (1 - 1 / n)
    s2 = (1 / (p - 1)) * 0.5
    return {"S1": s1, "S2": s2, "S": s1 + s2}


def dihedral_density_experiment(scenario, bound, keep_rows=False):
    """Empirical density of S = S1 u S2 among primes l <= bound, l not dividing disc*p*n."""
    if bound > SCAN_BUDGET:
        raise BudgetError(f"bound {bound} exceeds the scan budget {SCAN_BUDGET}")
    p, n, disc = scenario.p, scenario.n, scenario.disc
    excluded = tuple(sorted(set(prime_divisors(disc * p * n))))
    sample = [int(q) for q in PrimeSieve(max(bound, 1)).primes() if int(q) not in excluded]
    odd = np.array([q for q in sample if q != 2], dtype=np.int64)
    symbols = dict(zip(odd.tolist(), kernels.legendre_many(disc, odd).tolist())) if len(odd) else {}
    if 2 in sample:
        symbols[2] = kronecker(disc, 2)

    table, h = scenario.table, scenario.table.h
    kernel_cache = {}
    counts = {"S1": 0, "S2": 0, "S": 0}
    rows = []
    for ell in sample:
        sym = symbols[ell]
        r = ell % p
        if sym == 1:
            splitting = SPLIT
            cls = prime_class(scenario.field, ell)
            if cls not in kernel_cache:
                kernel_cache[cls] = (cls ** (h // n)) == table.principal
            total = kernel_cache[cls]
        else:
            splitting = INERT if sym == -1 else RAMIFIED
            total = None
        in_s1 = r == 1 and splitting == SPLIT and not total
        in_s2 = r == p - 1 and splitting != INERT
        counts["S1"] += in_s1
        counts["S2"] += in_s2
        counts["S"] += in_s1 or in_s2
        if keep_rows:
            rows.append((ell, r, splitting, in_s1, in_s2))
    return DensityReport(scenario.field.D, p, n, bound, len(sample), counts,
                         expected_densities(p, n), excluded, tuple(rows))


def _eta_order(p, ell):
    return p - 1 if ell == p else multiplicative_order(ell, p)


def _is_square_in_q3(x):
    """Whether a nonzero integer is a square in Q_3."""
    v = 0
    while x % 3 == 0:
        x //= 3
        v += 1
    return v % 2 == 0 and x % 3 == 1


def _local_condition(scenario, ell, notes):
    p, n = scenario.p, scenario.n
    splitting, cls = _splitting(scenario, ell)
    eta = _eta_order(p, ell)
    if splitting == SPLIT:
        psi = subfield_image_order(scenario.table, cls, n)
        ok = psi != eta
        rel = "≠" if ok else "="
        return Condition(f"split-orders/l={ell}", PASS if ok else FAIL,
                         f"l split, Frobenius class {cls}: |psi(G_w)|={psi} {rel} |eta(G_l)|={eta}")
    name = f"{splitting}-character/l={ell}"
    if eta == 1:
        return Condition(name, FAIL, f"l {splitting}, l ≡ 1 mod {p}: eta restricted to G_l is trivial")
    if ell == p:
        # eta|G_p is the totally ramified character of Q_p(mu_p)/Q_p
        if splitting == RAMIFIED and p == 3 and _is_square_in_q3(-3 * scenario.disc):
            return Condition(name, FAIL, "K_w = Q_3(sqrt(-3)): eta|G_3 is the quadratic character of K_w")
        return Condition(name, PASS, f"eta|G_{p} nontrivial of order {p - 1}, not the quadratic "
                                     f"character of K_w")
    if splitting == INERT:
        if eta == 2:
            return Condition(name, FAIL, f"l inert, l ≡ -1 mod {p}: eta|G_l is the unramified quadratic "
                                         "character, which is the character of K_w")
        return Condition(name, PASS, f"l inert, eta|G_l unramified of order {eta} > 2")
    notes.append(f"l={ell} ramified in K: eta is unramified at l, hence distinct from the ramified "
                 "quadratic character of K_w (literal reading)")
    return Condition(name, PASS, f"l ramified, eta|G_l unramified of order {eta}")


def certify_dihedral(scenario, S_extra=None):
    S_extra = scenario.S_extra if S_extra is None else frozenset(int(q) for q in S_extra)
    base = scenario.base_primes
    for ell in S_extra:
        if not is_prime(ell):
            raise InputError(f"{ell} in S_extra is not prime")
        if ell in base:
            raise InputError(f"{ell} in S_extra must avoid p and the primes dividing the discriminant")
    S = sorted(set(base) | S_extra)
    table = scenario.table
    notes = [
        f"eta = mod-{scenario.p} cyclotomic character; L = L'(mu_{scenario.p})",
        "archimedean place in S imposes no local condition",
        "verdict applies to every lift rho of the induced representation",
    ]
    conds = [Condition("setup", PASS,
                       f"h(K) = {table.h}, Cl(K) cyclic, n = {scenario.n} odd, n | h, "
                       f"p = {scenario.p} ∤ n")]
    for ell in S:
        conds.append(_local_condition(scenario, ell, notes))

    flags = scenario.oracle_flags or {}
    if FLAG_DIRECT in flags:
        val = flags[FLAG_DIRECT]
        conds.append(Condition("class-field-compositum", ORACLE if val else FAIL,
                               f"ingested flag {FLAG_DIRECT!r} = {bool(val)}"))
    elif FLAG_SUFFICIENT in flags:
        val = flags[FLAG_SUFFICIENT]
        conds.append(Condition("class-field-compositum", ORACLE if val else INCONCLUSIVE,
                               f"ingested flag {FLAG_SUFFICIENT!r} = {bool(val)}"
                               + (" (implies L1S = L.K1S for every finite S)" if val else
                                  " (does not decide L1S = L.K1S)")))
    else:
        conds.append(Condition("class-field-compositum", INCONCLUSIVE,
                               "no oracle flag supplied for L1S = L.K1S"))
    subject = (f"Ind(psi*eta) for K = Q(sqrt(-{scenario.field.D})), n={scenario.n}, p={scenario.p}, "
               f"S={S + ['inf']}")
    return Certificate.assemble(subject, THEOREM, conds, notes)
