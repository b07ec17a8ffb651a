"""End-to-end acceptance checks; each test prints one PASS/FAIL line."""
import json
import random
import time
from itertools import product

import pytest

import conftest
from conftest import DATA
from mucert.cli import main
from mucert.criteria import (CERTIFIED, INCONCLUSIVE, DihedralScenario, certify_dihedral,
                             certify_elliptic_curve, dihedral_density_experiment, euler_preset,
                             neat_family_certificate, s3_family_scan, weston_bound)
from mucert.curves import (CurveRecord, hasse_ok, on_curve, random_point, reduce_curve, scalar_mul,
                           supersingular_scan)
from mucert.errors import InputError
from mucert.forms import QuadField, enumerate_reduced_forms
from mucert.iwasawa import PrecisionProfile, TruncatedPowerSeries, weierstrass_prepare
from mucert.ntheory import primes_up_to

DISCS = (239, 971, 1259, 2243, 2699, 2843)
ODD_PRIMES = [int(q) for q in primes_up_to(10 ** 4)[1:]]


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
        assert ok, detail
    return emit


def _random_curve(rng):
    while True:
        try:
            return CurveRecord("rand", tuple(rng.randint(-50, 50) for _ in range(5)), 1)
        except InputError:
            continue


def _good_pairs(rng, count, primes):
    pairs = []
    while len(pairs) < count:
        e, ell = _random_curve(rng), rng.choice(primes)
        if e.discriminant % ell:
            pairs.append((e, ell))
    return pairs


def test_criterion_1_example_curve(report, capsys, tmp_path):
    out = tmp_path / "cert.json"
    start = time.perf_counter()
    status = main(["certify-ec", "--curve", str(DATA / "curves" / "11a2.json"), "--p", "7",
                   "--no-timestamp", "--out", str(out)])
    elapsed = time.perf_counter() - start
    capsys.readouterr()
    cert = json.loads(out.read_text())
    evidence = {c["name"]: c["evidence"] for c in cert["conditions"]}
    checks = [
        status == 0,
        cert["verdict"] == CERTIFIED,
        "#E(F_7)=10" in evidence["local-torsion/v=7"],
        "a_7=-2" in evidence["local-torsion/v=7"],
        "7 ∤ 10" in evidence["local-torsion/v=7"],
        "#E(F_11)=10 (split-multiplicative), 7 ∤ 10" == evidence["local-torsion/v=11"],
        "witness l=" in evidence["irreducible-residual"],
        elapsed < 1.0,
    ]
    report(1, all(checks), f"11a2 at p=7 -> {cert['verdict']} in {elapsed:.3f}s, checks {checks}")


def test_criterion_2_even_family_count(report):
    start = time.perf_counter()
    pairs = s3_family_scan("even", 2, 1000)
    elapsed = time.perf_counter() - start
    report(2, len(pairs) == 108 and elapsed < 10, f"{len(pairs)} pairs in {elapsed:.3f}s")


def test_criterion_3_class_numbers(report):
    start = time.perf_counter()
    hs = {D: enumerate_reduced_forms(QuadField(D)).h for D in DISCS}
    elapsed = time.perf_counter() - start
    report(3, set(hs.values()) == {15} and elapsed < 1, f"h = {hs} in {elapsed:.3f}s")


def test_criterion_4_dihedral_density(report, monkeypatch):
    monkeypatch.setenv("MU_CERT_THREADS", "1")
    start = time.perf_counter()
    scan = dihedral_density_experiment(DihedralScenario(QuadField(239), 5, 3), 2_000_000)
    elapsed = time.perf_counter() - start
    err = abs(scan.density - 0.45)
    report(4, err < 0.01 and elapsed < 60,
           f"density {scan.density:.6f} (|err| {err:.6f}) over {scan.sample_size} primes in {elapsed:.2f}s")


def test_criterion_5_euler_presets(report):
    got = (euler_preset("odd-adjoint"), euler_preset("even-adjoint"))
    report(5, got == (3, 1), f"odd-adjoint {got[0]}, even-adjoint {got[1]}")


def test_criterion_6_delta_bound(report, delta):
    rep = weston_bound(delta)
    note = " ".join(a for a in rep.annotations if a.startswith("level-1"))
    ok = (set(rep.bound_set) == {2, 3, 5, 7, 11, 13} and not rep.divisor and not rep.congruence
          and "p >= 17" in note and "691" in note)
    report(6, ok, f"bound_set {rep.bound_set}, divisor {sorted(rep.divisor)}, "
                  f"congruence {sorted(rep.congruence)}; {note}")


def test_criterion_7a_hasse(report):
    rng = random.Random(71)
    bad = [(e.ainvs, ell) for e, ell in _good_pairs(rng, 10 ** 4, ODD_PRIMES)
           if not hasse_ok(ell, reduce_curve(e, ell).group_order)]
    report("7a", not bad, f"10000 pairs, {len(bad)} Hasse violations")


def test_criterion_7b_reconstruction(report):
    prof = PrecisionProfile(3, 12, 24)
    rng = random.Random(72)
    bad = 0
    for _ in range(10 ** 3):
        mu, lam = rng.randint(0, 4), rng.randint(0, 23)
        coeffs = [rng.randrange(3 ** 12) for _ in range(24)]
        coeffs = ([3 * c for c in coeffs[:lam]] + [3 * coeffs[lam] + rng.randint(1, 2)] + coeffs[lam + 1:])
        f = TruncatedPowerSeries(prof, [3 ** mu * c for c in coeffs])
        fac = weierstrass_prepare(f)
        ok = ((fac.mu_power, fac.lam) == (mu, lam) and fac.distinguished.is_distinguished()
              and fac.unit.coeffs[0] % 3 != 0 and fac.reconstruct(prof) == f)
        bad += not ok
    report("7b", bad == 0, f"1000 series at (p=3, N=12, M=24), {bad} reconstruction failures")


def test_criterion_7c_class_group_axioms(report):
    bad = []
    rng = random.Random(73)
    for D in DISCS:
        table = enumerate_reduced_forms(QuadField(D))
        e, forms = table.principal, table.classes
        for f in forms:
            if f * e != f or f * f.inverse() != e:
                bad.append((D, "identity/inverse", f))
            for g in forms:
                if f * g != g * f or f * g not in table:
                    bad.append((D, "closure/commutativity", f, g))
        for a, b, c in (tuple(rng.choice(forms) for _ in range(3)) for _ in range(500)):
            if (a * b) * c != a * (b * c):
                bad.append((D, "associativity", a, b, c))
    report("7c", not bad, f"six discriminants, {len(bad)} axiom violations")


def test_criterion_7d_annihilation(report):
    rng = random.Random(74)
    bad = []
    for e, ell in _good_pairs(rng, 10 ** 3, ODD_PRIMES[:300]):
        order = reduce_curve(e, ell).group_order
        pt = random_point(e, ell, rng)
        if not on_curve(pt, e.ainvs, ell) or scalar_mul(order, pt, e.ainvs, ell) is not None:
            bad.append((e.ainvs, ell))
    report("7d", not bad, f"1000 reductions, {len(bad)} points not killed by #E")


def _generated_corpus(curves):
    rng = random.Random(75)
    for e in curves.values():
        for p in primes_up_to(40)[1:]:
            if e.has_good_reduction(int(p)):
                certify_elliptic_curve(e, int(p))
    for e in curves.values():
        for _ in range(20):
            variant = CurveRecord(e.label + "-v", e.ainvs, e.conductor, rank=rng.choice([0, 0, 1]),
                                  sha_order=rng.choice([1, 1, 4, 9, 25]),
                                  tamagawa_product=rng.randint(1, 12),
                                  isogeny_degrees=rng.sample([2, 3, 5, 7], rng.randint(0, 2)))
            p = rng.choice([q for q in (3, 5, 7, 11, 13) if e.has_good_reduction(q)])
            certify_elliptic_curve(variant, p)
    flag_choices = [{}, {"L1 = L.K1": True}, {"L1 = L.K1": False}, {"L1S = L.K1S": True},
                    {"L1S = L.K1S": False}]
    small = [int(q) for q in primes_up_to(200) if q > 3]
    for D, flags in product(DISCS, flag_choices):
        scen = DihedralScenario(QuadField(D), 5, 3, oracle_flags=flags)
        for _ in range(4):
            certify_dihedral(scen, rng.sample([q for q in small if q != D], rng.randint(0, 5)))
    for kind, a in (("odd", 1), ("odd", 2), ("even", 2), ("even", 5), ("even", 1021)):
        try:
            neat_family_certificate(kind, a)
        except InputError:
            pass


def test_criterion_7e_certificate_soundness(report, curves):
    before = len(conftest.EMITTED)
    _generated_corpus(curves)
    certs = list(conftest.EMITTED)
    unsound = [c.subject for c in certs if not c.is_sound()]
    verdicts = {v: sum(c.verdict == v for c in certs) for v in (CERTIFIED, INCONCLUSIVE)}
    report("7e", not unsound and len(certs) > before,
           f"{len(certs)} certificates checked ({verdicts}), {len(unsound)} unsound")


def test_criterion_8_supersingular(report, curves):
    got = supersingular_scan(curves["11a2"], 200)
    report(8, got == [19, 29, 199], f"supersingular primes <= 200: {got}")


def test_criterion_9_negative_control(report, curves):
    cert = certify_elliptic_curve(curves["11a2"], 5)
    v11 = cert.condition("local-torsion/v=11")
    ok = cert.verdict == INCONCLUSIVE and v11.status == "fail" and "5 | 10" in v11.evidence
    report(9, ok, f"11a2 at p=5 -> {cert.verdict}; v=11 {v11.status}: {v11.evidence}")
