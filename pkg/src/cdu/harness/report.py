"""Deterministic JSON reports."""

from __future__ import annotations

import json

from cdu import __version__
from cdu.harness.core import ClaimResult, SuiteConfig

SCHEMA = "cdu-report/1"


def summarize(results: list[ClaimResult]) -> dict:
    out = {"cells": len(results), "pass": 0, "fail": 0, "discrepancy": 0, "exploratory": 0}
    for r in results:
        out[r.status] += 1
    return out


def build_report(suite: str, cfg: SuiteConfig, results: list[ClaimResult]) -> dict:
    return {
        "schema": SCHEMA,
        "version": __version__,
        "suite": suite,
        "config": cfg.report_view(),
        "summary": summarize(results),
        "results": [r.to_dict() for r in sorted(results, key=ClaimResult.key)],
    }


def dumps(report: dict) -> str:
    """Byte-stable serialization: sorted keys, fixed separators, trailing newline."""
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def failures(results: list[ClaimResult]) -> list[ClaimResult]:
    return [r for r in results if r.counts_as_failure]
