"""c-DDT entries, c-differential uniformity, Walsh coefficients and the character-sum count."""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from cdu.cyclotomic import CycInt
from cdu.gf import DENSE_MAX_Q, FieldCtx

WITNESS_CAP = 16
_BLOCK = 1 << 20  # max derivative entries materialised at once


class NonIntegralCount(ArithmeticError):
    pass


@dataclass(frozen=True, eq=False)
class FunctionTable:
    """A function F_q -> F_q as a dense value table (entry i is F(i))."""

    ctx: FieldCtx
    values: np.ndarray
    label: str = ""

    def __post_init__(self):
        v = np.array(self.values, dtype=np.int64)
        if v.shape != (self.ctx.q,):
            raise ValueError(f"table has shape {v.shape}, expected ({self.ctx.q},)")
        if v.size and (v.min() < 0 or v.max() >= self.ctx.q):
            raise ValueError("table entries must be element indices")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @classmethod
    def from_callable(cls, ctx: FieldCtx, f, label: str = "") -> FunctionTable:
        return cls(ctx, [f(x) for x in range(ctx.q)], label)

    @classmethod
    def identity(cls, ctx: FieldCtx) -> FunctionTable:
        return cls(ctx, ctx.elements(), "identity")

    def __call__(self, x: int) -> int:
        return int(self.values[x])

    def __len__(self) -> int:
        return self.ctx.q


def is_permutation(table: FunctionTable) -> bool:
    return np.unique(table.values).size == table.ctx.q


def c_derivative(table: FunctionTable, c: int, a) -> np.ndarray:
    """F(x + a) - c F(x) for every x; ``a`` may be a scalar or an array of shifts (one row each)."""
    ctx, F = table.ctx, table.values
    e = ctx.elements()
    a = np.asarray(a, dtype=np.int64)
    shifted = F[ctx.vadd(a[..., None], e)] if a.ndim else F[ctx.vadd(a, e)]
    return ctx.vsub(shifted, ctx.vmul(c, F))


def c_ddt_entry(table: FunctionTable, c: int, a: int, b: int) -> int:
    """#{x : F(x+a) - c F(x) = b}"""
    return int(np.count_nonzero(c_derivative(table, c, a) == b))


def c_ddt_rows(table: FunctionTable, c: int, rows) -> np.ndarray:
    """c-DDT restricted to the given a values; shape (len(rows), q)."""
    q = table.ctx.q
    rows = np.asarray(rows, dtype=np.int64)
    out = np.empty((rows.size, q), dtype=np.int64)
    step = max(1, _BLOCK // q)
    for start in range(0, rows.size, step):
        block = rows[start:start + step]
        d = c_derivative(table, c, block)
        keys = d + (np.arange(block.size, dtype=np.int64) * q)[:, None]
        out[start:start + block.size] = np.bincount(keys.ravel(), minlength=block.size * q).reshape(block.size, q)
    return out


def c_ddt(table: FunctionTable, c: int) -> np.ndarray:
    return c_ddt_rows(table, c, table.ctx.elements())


def classify(max_entry: int) -> str:
    if max_entry == 1:
        return "PcN"
    if max_entry == 2:
        return "APcN"
    return f"Uniformity({max_entry})"


@dataclass
class CDdtReport:
    c: int
    max_entry: int
    spectrum: dict[int, int]
    witnesses: list[tuple[int, int]]
    excluded: dict[int, int] | None = None  # the a = 0 row when c = 1
    field: dict = field(default_factory=dict)

    @property
    def classification(self) -> str:
        return classify(self.max_entry)

    def to_dict(self) -> dict:
        d = {
            "c": self.c,
            "max": self.max_entry,
            "classification": self.classification,
            "spectrum": {str(k): v for k, v in sorted(self.spectrum.items())},
            "witnesses": [list(w) for w in self.witnesses],
        }
        if self.excluded is not None:
            d["excluded"] = {str(k): v for k, v in sorted(self.excluded.items())}
        return d


def c_uniformity(table: FunctionTable, c: int, witness_cap: int = WITNESS_CAP) -> CDdtReport:
    """c-differential uniformity with spectrum and up to ``witness_cap`` maximising (a, b).

    Row a = 0 is left out of the maximum exactly when c = 1, and its histogram
    is kept under ``excluded``.
    """
    ctx = table.ctx
    q = ctx.q
    counts = c_ddt(table, c)
    sums = counts.sum(axis=1)
    if not np.all(sums == q):
        raise AssertionError("c-DDT rows do not sum to q")
    excluded = None
    admissible = counts
    if c == 1:
        excluded = _histogram(counts[:1])
        admissible = counts[1:]
    max_entry = int(admissible.max())
    witnesses = []
    a_off = 1 if c == 1 else 0
    aa, bb = np.nonzero(admissible == max_entry)
    for a, b in zip(aa[:witness_cap], bb[:witness_cap]):
        witnesses.append((int(a) + a_off, int(b)))
    return CDdtReport(int(c), max_entry, _histogram(admissible), witnesses, excluded, ctx.spec.to_dict())


def c_uniformity_max(table: FunctionTable, c: int) -> int:
    """Just the maximum, without building a report."""
    ctx = table.ctx
    rows = ctx.elements()[1:] if c == 1 else ctx.elements()
    return int(c_ddt_rows(table, c, rows).max())


def _histogram(counts: np.ndarray) -> dict[int, int]:
    vals, mult = np.unique(counts, return_counts=True)
    return {int(v): int(m) for v, m in zip(vals, mult)}


def _sweep_one(args):
    table, c = args
    return c_uniformity(table, c)


def resolve_workers(workers: int | None) -> int:
    if workers is None:
        workers = int(os.environ.get("CDU_WORKERS", "1"))
    return max(1, workers)


def full_c_sweep(table: FunctionTable, c_set=None, workers: int | None = None) -> list[CDdtReport]:
    """One report per c, sorted by c; identical for any worker count."""
    cs = sorted({int(c) for c in (table.ctx.elements() if c_set is None else c_set)})
    workers = resolve_workers(workers)
    if workers == 1 or len(cs) < 2:
        reports = [c_uniformity(table, c) for c in cs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            reports = list(ex.map(_sweep_one, [(table, c) for c in cs], chunksize=max(1, len(cs) // (4 * workers))))
    return sorted(reports, key=lambda r: r.c)


def derivative_is_bijective(table: FunctionTable, c: int, a: int) -> bool:
    return np.unique(c_derivative(table, c, a)).size == table.ctx.q


# -- Walsh transform ------------------------------------------------------------

def _check_ptable(ptable: FunctionTable) -> np.ndarray:
    v = ptable.values
    if v.max() >= ptable.ctx.p:
        raise ValueError("Walsh transform needs a table with values in F_p")
    return v


def _trace_row(ctx: FieldCtx, v: int) -> np.ndarray:
    if ctx.q <= DENSE_MAX_Q:
        return ctx.trace_product_table[v].astype(np.int64)
    return ctx.vtrace(ctx.vmul(v, ctx.elements()))


def walsh_coefficient(ptable: FunctionTable, v: int) -> CycInt:
    """sum over x of w^(f(x) - Tr(v x)), exactly."""
    f = _check_ptable(ptable)
    return CycInt.from_exponents(ptable.ctx.p, f - _trace_row(ptable.ctx, v))


def walsh_spectrum(ptable: FunctionTable) -> list[CycInt]:
    return [walsh_coefficient(ptable, v) for v in range(ptable.ctx.q)]


def trace_table(ctx: FieldCtx, f) -> FunctionTable:
    """The p-ary function x -> Tr(f(x)) for a callable or value array f."""
    vals = np.asarray(f(ctx.elements()) if callable(f) else f, dtype=np.int64)
    return FunctionTable(ctx, ctx.vtrace(vals))


# -- character-sum count ------------------------------------------------------------

def charsum_count(table: FunctionTable, c: int, a: int, b: int) -> int:
    """#{x : F(x+a) - cF(x) = b} as (1/q) sum_x sum_beta w^Tr(beta (F(x+a) - cF(x) - b)).

    The double sum is accumulated in Z[w]; the division by q must be exact.
    """
    ctx = table.ctx
    y = ctx.vsub(c_derivative(table, c, a), b)
    if ctx.q <= DENSE_MAX_Q:
        exps = ctx.trace_product_table[:, y]
    else:
        e = ctx.elements()
        exps = ctx.vtrace(ctx.vmul(e[:, None], y[None, :]))
    total = CycInt.from_exponent_counts(ctx.p, np.bincount(exps.ravel(), minlength=ctx.p))
    quotient = total.exact_div(ctx.q)
    if quotient is None or not quotient.is_rational_integer():
        raise NonIntegralCount(f"character sum {total} is not q times an integer")
    return quotient.to_int()


def ddt_csv(table: FunctionTable, c: int) -> str:
    """CSV dump of the full c-DDT with header ``a,b,count``."""
    counts = c_ddt(table, c)
    lines = ["a,b,count"]
    q = table.ctx.q
    for a in range(q):
        row = counts[a]
        lines.extend(f"{a},{b},{int(row[b])}" for b in range(q))
    return "\n".join(lines) + "\n"
