"""The five permutation families F(x) = (x^{p^m} +- x + delta)^s + x.

    b1  p = 2, n = 3m, s = 2^{2m} + 1
    b2  p = 2, n = 3m, s = 2^{2m-1} + 2^{m-1}      (m != 1 mod 3)
    b3  p = 2, n = 3m, s = 2^{3m-1} + 2^{m-1}      (2m != 1 mod 3)
    t4  p = 3, n = 2m, s = 3^{2m-1} + 2*3^{m-1}    (permutation for m even)
    p5  p odd, n = 2m, s = p^{m+1} + 1

The inner sign is + in characteristic 2 and - otherwise.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from cdu.analysis import FunctionTable
from cdu.gf import FieldCtx


class ShapeMismatch(ValueError):
    pass


class HypothesisViolation(ValueError):
    pass


class UnsupportedFamily(ValueError):
    pass


class FamilyId(enum.Enum):
    B1 = "b1"
    B2 = "b2"
    B3 = "b3"
    T4 = "t4"
    P5 = "p5"

    @classmethod
    def parse(cls, text) -> FamilyId:
        if isinstance(text, cls):
            return text
        return cls(str(text).lower())

    @property
    def binary(self) -> bool:
        return self in (FamilyId.B1, FamilyId.B2, FamilyId.B3)

    def degree(self, m: int) -> int:
        return 3 * m if self.binary else 2 * m


def exponent(fid: FamilyId, p: int, m: int) -> int:
    if fid is FamilyId.B1:
        return 2 ** (2 * m) + 1
    if fid is FamilyId.B2:
        return 2 ** (2 * m - 1) + 2 ** (m - 1)
    if fid is FamilyId.B3:
        return 2 ** (3 * m - 1) + 2 ** (m - 1)
    if fid is FamilyId.T4:
        return 3 ** (2 * m - 1) + 2 * 3 ** (m - 1)
    return p ** (m + 1) + 1


def p5_branches(ctx: FieldCtx, m: int, delta: int) -> dict[str, bool]:
    """Which of the admissibility predicates for p5 hold at delta.

    ``plus``:  (t + 1)/t is a (p-1)-th power in F_{p^m}, t = Tr_m^{2m}(delta) != 0
    ``minus``: (t - 1)/t is a (p-1)-th power in F_{p^m}
    """
    t = ctx.rel_trace(delta, m)
    out = {"trace_zero": t == 0, "plus": False, "minus": False}
    if t:
        sub = ctx.subfield(m)
        for key, num in (("plus", ctx.add(t, 1)), ("minus", ctx.sub(t, 1))):
            out[key] = _is_power_in_subfield(ctx, sub, ctx.div(num, t), ctx.p - 1)
    return out


def _is_power_in_subfield(ctx: FieldCtx, sub: np.ndarray, x: int, d: int) -> bool:
    return bool(np.any(ctx.vpow(sub, d) == x))


def hypothesis_violations(fid: FamilyId, ctx: FieldCtx, m: int, delta: int) -> list[str]:
    out = []
    if fid is FamilyId.B2 and m % 3 == 1:
        out.append("m = 1 mod 3")
    if fid is FamilyId.B3 and (2 * m) % 3 == 1:
        out.append("2m = 1 mod 3")
    if fid is FamilyId.T4 and m % 2:
        out.append("m odd")
    if fid is FamilyId.P5:
        br = p5_branches(ctx, m, delta)
        if not (br["trace_zero"] or br["minus"]):
            out.append("delta outside Tr = 0 and the (Tr - 1)/Tr branch")
    return out


@dataclass(frozen=True, eq=False)
class FamilyInstance:
    id: FamilyId
    ctx: FieldCtx
    m: int
    delta: int
    s: int
    violations: tuple[str, ...] = ()

    @property
    def exploratory(self) -> bool:
        """True when built outside the stated hypotheses (non-strict mode)."""
        return bool(self.violations)

    @property
    def label(self) -> str:
        return f"{self.id.value}(m={self.m}, delta={self.delta})"


def instantiate(fid, ctx: FieldCtx, m: int, delta: int = 0, strict: bool = True) -> FamilyInstance:
    fid = FamilyId.parse(fid)
    if m < 1 or ctx.n != fid.degree(m):
        raise ShapeMismatch(f"{fid.value} with m = {m} needs n = {fid.degree(m)}, got {ctx.n}")
    if fid.binary and ctx.p != 2:
        raise ShapeMismatch(f"{fid.value} needs p = 2")
    if fid is FamilyId.T4 and ctx.p != 3:
        raise ShapeMismatch("t4 needs p = 3")
    if fid is FamilyId.P5 and ctx.p == 2:
        raise ShapeMismatch("p5 needs odd p")
    if not 0 <= delta < ctx.q:
        raise ValueError(f"delta = {delta} is not an element of F_{ctx.q}")
    violations = tuple(hypothesis_violations(fid, ctx, m, delta))
    if strict and violations:
        raise HypothesisViolation(f"{fid.value}, m = {m}, delta = {delta}: " + "; ".join(violations))
    return FamilyInstance(fid, ctx, m, delta, exponent(fid, ctx.p, m), violations)


def evaluate(inst: FamilyInstance, x: int) -> int:
    ctx = inst.ctx
    xm = ctx.frobenius(x, inst.m)
    inner = ctx.add(xm, x) if ctx.p == 2 else ctx.sub(xm, x)
    return ctx.add(ctx.pow(ctx.add(inner, inst.delta), inst.s), x)


def evaluate_all(inst: FamilyInstance) -> np.ndarray:
    ctx = inst.ctx
    e = ctx.elements()
    xm = ctx.vfrob(e, inst.m)
    inner = ctx.vadd(xm, e) if ctx.p == 2 else ctx.vsub(xm, e)
    return ctx.vadd(ctx.vpow(ctx.vadd(inner, inst.delta), inst.s), e)


def as_lut(inst: FamilyInstance) -> FunctionTable:
    return FunctionTable(inst.ctx, evaluate_all(inst), inst.label)


def evaluate_expanded(inst: FamilyInstance, x: int) -> int:
    """Evaluate the multinomial expansion term by term (b1, t4, p5 only)."""
    ctx, m, d = inst.ctx, inst.m, inst.delta
    p = ctx.p
    P, add, sub, mul = ctx.pow, ctx.add, ctx.sub, ctx.mul

    def terms(pairs):
        acc = 0
        for coef, val in pairs:
            acc = add(acc, mul(coef, val))
        return acc

    if inst.id is FamilyId.B1:
        a, b = 2**m, 2 ** (2 * m)
        return terms([
            (1, P(x, b + a)), (1, P(x, b + 1)), (1, P(x, a + 1)),
            (P(d, b), P(x, a)), (d, P(x, b)), (1, P(x, 2)),
            (add(add(P(d, b), d), 1), x), (1, P(d, b + 1)),
        ])
    if inst.id is FamilyId.T4:
        u, w = 3 ** (m - 1), 3 ** (2 * m - 1)
        c1 = add(P(d, 2 * u), P(d, u + w))
        c2 = add(P(d, u), P(d, w))
        return terms([
            (1, P(x, 3**m)),
            (c1, sub(P(x, u), P(x, w))),
            (c2, add(add(P(x, 2 * u), P(x, 2 * w)), P(x, u + w))),
            (1, P(d, w + 2 * u)),
        ])
    if inst.id is FamilyId.P5:
        pm, pm1 = p**m, p ** (m + 1)
        dp = P(d, pm1)
        return terms([
            (1, P(x, pm + p)), (1, P(x, pm1 + 1)),
            (ctx.neg(1), P(x, p + 1)), (ctx.neg(1), P(x, pm + pm1)),
            (d, P(x, p)), (ctx.neg(d), P(x, pm1)), (dp, P(x, pm)),
            (sub(1, dp), x), (1, P(d, pm1 + 1)),
        ])
    raise UnsupportedFamily(f"{inst.id.value} has no expanded form; b2/b3 go through the trace rewrite")


def t4_gamma0_reduction(inst: FamilyInstance, x: int) -> int:
    """x^{3^m} - delta^{3^m}: the closed form of t4 claimed when Tr_m^{2m}(delta) = 0."""
    ctx = inst.ctx
    return ctx.sub(ctx.frobenius(x, inst.m), ctx.frobenius(inst.delta, inst.m))
