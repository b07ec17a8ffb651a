import random

import pytest

from mucert.curves import (ADDITIVE, ENUMERATION_BUDGET, GOOD, NONSPLIT, SPLIT, CurveRecord, certify_irreducible,
                           hasse_ok, on_curve, point_add, point_negate, random_point, reduce_curve, scalar_mul,
                           supersingular_scan, trace_of_frobenius)
from mucert.errors import BudgetError, InputError
from mucert.ntheory import primes_up_to

ODD_PRIMES = [int(q) for q in primes_up_to(10 ** 4)[1:]]

# curves used only through their reductions (conductor given, other metadata defaulted)
INLINE = {
    "36a1": CurveRecord("36a1", (0, 0, 0, 0, 1), 36),
    "27a3": CurveRecord("27a3", (0, 0, 1, 0, 0), 27),
}


def smooth_points(ainvs, ell):
    """Exhaustive count of nonsingular points (including infinity) of the reduction."""
    a1, a2, a3, a4, a6 = ainvs
    n = 1
    for x in range(ell):
        for y in range(ell):
            if (y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6) % ell:
                continue
            fy = (2 * y + a1 * x + a3) % ell
            fx = (a1 * y - 3 * x * x - 2 * a2 * x - a4) % ell
            if fx or fy:
                n += 1
    return n


def test_record_validation():
    with pytest.raises(InputError):
        CurveRecord("sing", (0, 0, 0, 0, 0), 1)
    with pytest.raises(InputError):
        CurveRecord("short", (0, 1), 1)
    with pytest.raises(InputError):
        CurveRecord("11a2", (0, -1, 1, -7820, -263580), 13)
    with pytest.raises(InputError):
        CurveRecord("neg", (0, -1, 1, 0, 0), 11, rank=-1)


def test_invariants_of_11a2(curves):
    e = curves["11a2"]
    assert e.discriminant == -11
    assert e.bad_primes == (11,)
    assert e.c4 ** 3 - e.c6 ** 2 == 1728 * e.discriminant


def test_reduce_11a2_at_7(curves):
    red = reduce_curve(curves["11a2"], 7)
    assert (red.reduction_type, red.group_order, red.trace) == (GOOD, 10, -2)


def test_reduce_11a2_at_11(curves):
    red = reduce_curve(curves["11a2"], 11)
    assert (red.reduction_type, red.group_order) == (SPLIT, 10)


def test_reduce_y2_x3_plus_1_at_5():
    red = reduce_curve(INLINE["36a1"], 5)
    assert (red.reduction_type, red.group_order) == (GOOD, 6)
    assert smooth_points((0, 0, 0, 0, 1), 5) == 6


def test_traces_of_11a2(curves):
    e = curves["11a2"]
    assert trace_of_frobenius(e, 7) == -2
    assert trace_of_frobenius(e, 3) == -1
    assert trace_of_frobenius(e, 5) == 1
    with pytest.raises(InputError):
        trace_of_frobenius(e, 11)


def test_prime_checks(curves):
    e = curves["11a2"]
    with pytest.raises(InputError):
        reduce_curve(e, 2)
    with pytest.raises(InputError):
        reduce_curve(e, 9)
    with pytest.raises(BudgetError):
        reduce_curve(e, 2_000_003)
    with pytest.raises(BudgetError):
        supersingular_scan(e, ENUMERATION_BUDGET + 1)


def test_point_counts_match_enumeration(curves):
    for e in list(curves.values()) + list(INLINE.values()):
        for ell in ODD_PRIMES[:25]:
            if e.discriminant % ell:
                assert reduce_curve(e, ell).group_order == smooth_points(e.ainvs, ell), (e.label, ell)


def test_bad_reduction_closed_forms(curves):
    seen = set()
    for e in list(curves.values()) + list(INLINE.values()):
        for ell in e.bad_primes:
            if ell == 2 or ell > 500:
                continue
            red = reduce_curve(e, ell)
            expected = {SPLIT: ell - 1, NONSPLIT: ell + 1, ADDITIVE: ell}[red.reduction_type]
            assert red.group_order == expected == smooth_points(e.ainvs, ell), (e.label, ell)
            seen.add(red.reduction_type)
    assert seen == {SPLIT, NONSPLIT, ADDITIVE}


def test_reduction_types_of_corpus(curves):
    assert reduce_curve(curves["26b1"], 13).reduction_type == NONSPLIT
    assert reduce_curve(curves["37a1"], 37).reduction_type == NONSPLIT
    assert reduce_curve(INLINE["36a1"], 3).reduction_type == ADDITIVE
    assert reduce_curve(INLINE["27a3"], 3).group_order == 3


def test_non_minimal_model_rejected():
    # y^2 = x^3 + 3^6 is 36a1 scaled by u = 3; the model is not minimal at 3
    e = CurveRecord("scaled", (0, 0, 0, 0, 729), 36, minimal=False)
    with pytest.raises(InputError):
        reduce_curve(e, 3)


def test_supersingular_scan_11a2(curves):
    e = curves["11a2"]
    assert supersingular_scan(e, 200) == [19, 29, 199]
    assert supersingular_scan(e, 4) == []
    assert supersingular_scan(e, 10) == []
    assert supersingular_scan(e, 200, threads=4) == [19, 29, 199]


def test_supersingular_scan_matches_direct(curves):
    e = curves["37a1"]
    direct = [q for q in ODD_PRIMES if 5 <= q <= 400 and q != 37 and trace_of_frobenius(e, q) == 0]
    assert supersingular_scan(e, 400) == direct


def test_irreducibility_witness_11a2(curves):
    cert = certify_irreducible(curves["11a2"], 7, 50)
    assert cert.certified
    assert cert.witness_prime == 3
    a, ell = cert.witness_poly
    # x^2 - a x + l == x^2 + x + 3 mod 7, discriminant 1 - 12 = 3 is a nonresidue
    assert (-a % 7, ell) == (1, 3)
    assert {x * x % 7 for x in range(7)}.isdisjoint({(a * a - 4 * ell) % 7})


def test_irreducibility_inconclusive_cases(curves):
    cert = certify_irreducible(curves["11a1"], 5)
    assert not cert.certified and cert.reason == "rational p-isogeny recorded"
    assert not certify_irreducible(curves["11a2"], 7, 2).certified


def test_irreducibility_is_one_sided(curves):
    for e in curves.values():
        for p in e.isogeny_degrees:
            if p > 2:
                assert not certify_irreducible(e, p).certified


def _random_curve(rng):
    while True:
        ainvs = tuple(rng.randint(-50, 50) for _ in range(5))
        try:
            # conductor 1 as a placeholder: only primes not dividing the discriminant are used
            return CurveRecord("rand", ainvs, 1)
        except InputError:
            continue


def test_hasse_bound_random_pairs(rng):
    violations = []
    for _ in range(10 ** 4):
        e = _random_curve(rng)
        ell = rng.choice(ODD_PRIMES)
        if e.discriminant % ell == 0:
            continue
        order = reduce_curve(e, ell).group_order
        if not hasse_ok(ell, order):
            violations.append((e.ainvs, ell, order))
    assert violations == []


def test_group_order_annihilates_random_points(rng):
    failures = []
    for _ in range(10 ** 3):
        e = _random_curve(rng)
        ell = rng.choice(ODD_PRIMES[:300])
        if e.discriminant % ell == 0:
            continue
        order = reduce_curve(e, ell).group_order
        pt = random_point(e, ell, rng)
        if not on_curve(pt, e.ainvs, ell) or scalar_mul(order, pt, e.ainvs, ell) is not None:
            failures.append((e.ainvs, ell))
    assert failures == []


def test_group_law_axioms(curves):
    e, ell = curves["11a2"], 101
    r = random.Random(7)
    pts = [random_point(e, ell, r) for _ in range(12)] + [None]
    for p in pts:
        assert point_add(p, None, e.ainvs, ell) == p
        assert point_add(p, point_negate(p, e.ainvs, ell), e.ainvs, ell) is None
        for q in pts:
            assert point_add(p, q, e.ainvs, ell) == point_add(q, p, e.ainvs, ell)
            for s in pts[:4]:
                lhs = point_add(point_add(p, q, e.ainvs, ell), s, e.ainvs, ell)
                rhs = point_add(p, point_add(q, s, e.ainvs, ell), e.ainvs, ell)
                assert lhs == rhs
