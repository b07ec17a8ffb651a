"""Fine Selmer mu = 0 criterion for E[p^infinity] over Q.

Three conditions: irreducible residual representation; vanishing of the
Hom-group attached to the class group of Q(E[p]) (checked only through the
rank-0 sufficient route); and E(F_v)[p] = 0 at every finite v in S.
"""
from ..curves import ADDITIVE, GOOD, certify_irreducible, reduce_at_two, reduce_curve
from ..errors import InputError
from ..ntheory import is_prime
from .certificate import FAIL, INCONCLUSIVE, ORACLE, PASS, Certificate, Condition

THEOREM = "elliptic-curve-fine-selmer-criterion"

ARCHIMEDEAN_NOTE = ("archimedean places of S impose no torsion condition: "
                    "E(F_v)[p] = 0 is read as vacuous at v = infinity")
ROUTE_NOTE = ("Hom-vanishing checked via the sufficient route: rank 0, p prime to Sha, "
              "to the Tamagawa product and to every bad-fibre group order (exceptional set empty); "
              "rank, Sha and Tamagawa data are ingested and stamped oracle-assumed")
SMOOTH_PART_NOTE = "at bad v the group E(F_v) is the group of nonsingular points of the reduction"


def _local_group_evidence(red, p):
    divides = red.group_order % p == 0
    rel = "|" if divides else "∤"
    ell = red.ell
    if red.reduction_type == GOOD:
        text = f"#E(F_{ell})={red.group_order}, a_{ell}={red.trace}, {p} {rel} {red.group_order}"
    else:
        text = f"#E(F_{ell})={red.group_order} ({red.reduction_type}), {p} {rel} {red.group_order}"
    return divides, text


def certify_elliptic_curve(curve, p, search_bound=200):
    if p < 3 or not is_prime(p):
        raise InputError(f"p must be an odd prime, got {p}")
    if not curve.has_good_reduction(p):
        raise InputError(f"{curve.label} has bad reduction at p = {p}")
    S = sorted(set(curve.bad_primes) | {p})
    notes = [ARCHIMEDEAN_NOTE, ROUTE_NOTE, SMOOTH_PART_NOTE]
    conds = []

    irr = certify_irreducible(curve, p, search_bound)
    if irr.certified:
        conds.append(Condition("irreducible-residual", PASS,
                               f"witness l={irr.witness_prime}: {irr.reason}"))
    else:
        conds.append(Condition("irreducible-residual", INCONCLUSIVE, irr.reason))

    reductions = {v: reduce_at_two(curve) if v == 2 else reduce_curve(curve, v) for v in S}

    if curve.rank == 0:
        conds.append(Condition("hom-vanishing/rank-zero", ORACLE, "ingested rank E(Q) = 0"))
    else:
        conds.append(Condition("hom-vanishing/rank-zero", FAIL,
                               f"ingested rank E(Q) = {curve.rank}; sufficient route unavailable"))
    if curve.sha_order % p:
        conds.append(Condition("hom-vanishing/sha-prime-to-p", ORACLE,
                               f"ingested #Sha = {curve.sha_order}, {p} ∤ {curve.sha_order}"))
    else:
        conds.append(Condition("hom-vanishing/sha-prime-to-p", FAIL,
                               f"ingested #Sha = {curve.sha_order}, {p} | {curve.sha_order}"))
    if curve.tamagawa_product % p:
        conds.append(Condition("hom-vanishing/tamagawa-prime-to-p", ORACLE,
                               f"ingested Tamagawa product {curve.tamagawa_product}, {p} ∤ {curve.tamagawa_product}"))
    else:
        conds.append(Condition("hom-vanishing/tamagawa-prime-to-p", FAIL,
                               f"ingested Tamagawa product {curve.tamagawa_product}, {p} | {curve.tamagawa_product}"))
    bad_hits, bad_text = [], []
    for v in curve.bad_primes:
        divides, text = _local_group_evidence(reductions[v], p)
        bad_text.append(text)
        if divides:
            bad_hits.append(v)
    conds.append(Condition("hom-vanishing/bad-fibres-prime-to-p", FAIL if bad_hits else PASS,
                           "; ".join(bad_text) if bad_text else "no bad primes"))

    for v in S:
        red = reductions[v]
        divides, text = _local_group_evidence(red, p)
        conds.append(Condition(f"local-torsion/v={v}", FAIL if divides else PASS, text))
        if red.reduction_type == ADDITIVE:
            notes.append(f"warning: additive reduction at {v}; the smooth-part order {v} "
                         f"does not see p-torsion in the component group")

    subject = f"elliptic curve {curve.label} {list(curve.ainvs)}, p={p}, S={S + ['inf']}"
    return Certificate.assemble(subject, THEOREM, conds, notes)
