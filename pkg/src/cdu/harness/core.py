"""Shared types for the verification suites."""

from __future__ import annotations

import enum
import json
import zlib
from dataclasses import asdict, dataclass, field

import numpy as np

from cdu.families import FamilyId
from cdu.gf import FieldCtx


class UnsupportedParameters(ValueError):
    pass


class DeltaClass(enum.Enum):
    GAMMA1 = "Gamma1"
    GAMMA0 = "Gamma0"
    COMPLEMENT = "Complement"


def classify_delta(ctx: FieldCtx, m: int, delta: int, family=None) -> DeltaClass:
    """Gamma0 when Tr_m^n(delta) = 0, Gamma1 when it is 1 (binary families), else Complement."""
    t = ctx.rel_trace(delta, m)
    if t == 0:
        return DeltaClass.GAMMA0
    fid = None if family is None else FamilyId.parse(family)
    if t == 1 and (fid is None or fid.binary):
        return DeltaClass.GAMMA1
    return DeltaClass.COMPLEMENT


@dataclass
class SuiteConfig:
    p: int | None = None  # None: the suite's default grid
    m: int | None = None
    exhaustive_max_q: int = 128  # above this, theorem suites sample
    sample_delta: int = 20
    sample_c: int = 40
    random_cases: int | None = None  # per-field instance count for the random lemma suites
    seed: int = 0
    workers: int | None = None
    strict: bool = True
    output: str | None = None

    def report_view(self) -> dict:
        """The fields that determine results; workers and output are excluded on purpose."""
        d = asdict(self)
        d.pop("workers")
        d.pop("output")
        return d


def rng_for(cfg: SuiteConfig, *key) -> np.random.Generator:
    """A generator that depends only on the seed and a stable key."""
    tag = zlib.crc32(json.dumps([str(k) for k in key]).encode())
    return np.random.default_rng([cfg.seed, tag])


def sample(rng: np.random.Generator, pool, k: int) -> list[int]:
    pool = sorted(int(x) for x in pool)
    if len(pool) <= k:
        return pool
    return sorted(rng.choice(pool, size=k, replace=False).tolist())


@dataclass
class ClaimResult:
    suite: str
    claim: str
    expected: str
    observed: dict
    passed: bool
    params: dict = field(default_factory=dict)
    status: str = ""  # pass | fail | discrepancy | exploratory
    witnesses: list = field(default_factory=list)
    sampled: bool = False

    def __post_init__(self):
        if not self.status:
            self.status = "pass" if self.passed else "fail"

    @property
    def counts_as_failure(self) -> bool:
        return self.status == "fail"

    def key(self) -> str:
        return json.dumps([self.suite, self.claim, self.params], sort_keys=True)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "claim": self.claim,
            "params": self.params,
            "expected": self.expected,
            "observed": self.observed,
            "pass": self.passed,
            "status": self.status,
            "sampled": self.sampled,
            "witnesses": self.witnesses,
        }
