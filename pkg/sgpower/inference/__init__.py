from .reference import (ReferenceSet, exact_reference, monte_carlo_reference,
                        check_reference, EXACT_SUBGROUP, MONTE_CARLO)
from .maxt import (TestOutcome, single_test_pvalue, maxt, consistency_probe,
                   MaxT)

__all__ = [
    "ReferenceSet",
    "exact_reference",
    "monte_carlo_reference",
    "check_reference",
    "EXACT_SUBGROUP",
    "MONTE_CARLO",
    "TestOutcome",
    "single_test_pvalue",
    "maxt",
    "consistency_probe",
    "MaxT",
    ]
