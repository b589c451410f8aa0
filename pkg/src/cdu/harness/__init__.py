from cdu.harness.core import ClaimResult, DeltaClass, SuiteConfig, UnsupportedParameters, classify_delta
from cdu.harness.report import SCHEMA, build_report, dumps
from cdu.harness.suites import SUITE_IDS, run_suite

__all__ = [
    "SCHEMA",
    "SUITE_IDS",
    "ClaimResult",
    "DeltaClass",
    "SuiteConfig",
    "UnsupportedParameters",
    "build_report",
    "classify_delta",
    "dumps",
    "run_suite",
]
