"""Prime families carrying unobstructed S3 representations unramified outside p.

odd:  p = 27 + 4a^3, splitting field of x^3 + a x + 1 (discriminant -p)
even: p = 4a^6 - 27 (a >= 2), splitting field of x^3 - a^2 x - 1 (discriminant p)
"""
from ..errors import BudgetError, InputError
from ..ntheory import is_prime
from .certificate import ORACLE, PASS, Certificate, Condition
from .modular import euler_preset

THEOREM = "neat-s3-unobstructed-criterion"

_LIMIT = 1 << 64
# range over which neatness of the even family was verified in the literature
EVEN_VERIFIED_RANGE = (2, 1000)


def family_value(kind, a):
    if kind == "odd":
        return 27 + 4 * a ** 3
    if kind == "even":
        return 4 * a ** 6 - 27
    raise InputError(f"kind must be 'odd' or 'even', got {kind!r}")


def s3_family_scan(kind, a_min, a_max):
    """All (a, p) with a_min <= a <= a_max and p = family_value(kind, a) prime, ascending in a."""
    if kind == "even" and a_min < 2:
        raise InputError("the even family requires a >= 2")
    family_value(kind, a_min)
    out = []
    for a in range(a_min, a_max + 1):
        value = family_value(kind, a)
        if value >= _LIMIT or value <= -_LIMIT:
            raise BudgetError(f"{kind} family value at a={a} exceeds 64 bits")
        if value > 1 and is_prime(value):
            out.append((a, value))
    return out


def neat_family_certificate(kind, a):
    p = family_value(kind, a)
    if p < 2 or not is_prime(p):
        raise InputError(f"{kind} family value {p} at a={a} is not prime")
    poly = f"x^3 + {a}x + 1" if kind == "odd" else f"x^3 - {a * a}x - 1"
    d = euler_preset("odd-adjoint" if kind == "odd" else "even-adjoint")
    conds = [Condition("family-prime", PASS, f"p = {p} is prime; S3 field = splitting field of {poly}, "
                                             f"ramified only at p")]
    if kind == "odd":
        conds.append(Condition("neatness", ORACLE, "odd special S3 representations are neat (literature)"))
    elif EVEN_VERIFIED_RANGE[0] <= a <= EVEN_VERIFIED_RANGE[1]:
        conds.append(Condition("neatness", ORACLE,
                               f"neatness hypotheses verified in the literature for 2 <= a <= 1000 (a = {a})"))
    else:
        conds.append(Condition("neatness", "inconclusive",
                               f"a = {a} is outside the range with verified neatness hypotheses"))
    conds.append(Condition("deformation-dimension", PASS,
                           f"dim H^1(G_Q,S, Ad) = {d}: universal deformation ring O[[X_1..X_{d}]]"))
    notes = ["rho-bar is a direct summand of Ad rho-bar, so unobstructedness gives "
             "H^2(G_Q,{p,inf}, rho-bar) = 0; the verdict covers rho(1) for every lift rho"]
    return Certificate.assemble(f"{kind} S3 family a={a}, p={p}", THEOREM, conds, notes)
