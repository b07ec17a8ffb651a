from .certificate import (CERTIFIED, CONDITIONAL_TAG, FAIL, INCONCLUSIVE, ORACLE, PASS, Certificate,
                          Condition)
from .dihedral import (DihedralScenario, certify_dihedral, dihedral_density_experiment,
                       dihedral_prime_class)
from .elliptic import certify_elliptic_curve
from .modular import (CongruenceCandidates, NewformRecord, ObstructionReport, congruence_primes,
                      euler_h1_dimension, euler_preset, sturm_bound, weston_bound)
from .neat import neat_family_certificate, s3_family_scan

__all__ = [
    "CERTIFIED", "CONDITIONAL_TAG", "FAIL", "INCONCLUSIVE", "ORACLE", "PASS", "Certificate", "Condition",
    "DihedralScenario", "certify_dihedral", "dihedral_density_experiment", "dihedral_prime_class",
    "certify_elliptic_curve",
    "CongruenceCandidates", "NewformRecord", "ObstructionReport", "congruence_primes",
    "euler_h1_dimension", "euler_preset", "sturm_bound", "weston_bound",
    "neat_family_certificate", "s3_family_scan",
]
