import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cdu.analysis import is_permutation
from cdu.families import (
    FamilyId,
    HypothesisViolation,
    ShapeMismatch,
    UnsupportedFamily,
    as_lut,
    evaluate,
    evaluate_all,
    evaluate_expanded,
    exponent,
    instantiate,
    p5_branches,
    t4_gamma0_reduction,
)
from cdu.gf import build_field


def test_exponents():
    assert exponent(FamilyId.B1, 2, 1) == 5
    assert exponent(FamilyId.T4, 3, 2) == 33
    assert exponent(FamilyId.B2, 2, 2) == 10
    assert exponent(FamilyId.B3, 2, 1) == 5
    assert exponent(FamilyId.P5, 5, 1) == 26
    ctx = build_field(2, 6)
    assert instantiate("b1", ctx, 2).s == 17


def test_shape_and_hypothesis_errors():
    with pytest.raises(HypothesisViolation):
        instantiate("b2", build_field(2, 12), 4)
    with pytest.raises(HypothesisViolation):
        instantiate("b3", build_field(2, 6), 2)
    with pytest.raises(HypothesisViolation):
        instantiate("t4", build_field(3, 2), 1)
    with pytest.raises(ShapeMismatch):
        instantiate("b1", build_field(2, 6), 1)
    with pytest.raises(ShapeMismatch):
        instantiate("t4", build_field(5, 4), 2)
    with pytest.raises(ShapeMismatch):
        instantiate("p5", build_field(2, 2), 1)
    with pytest.raises(ValueError):
        FamilyId.parse("b9")


def test_exploratory_instances_are_labelled():
    inst = instantiate("t4", build_field(3, 2), 1, 0, strict=False)
    assert inst.exploratory
    assert inst.violations == ("m odd",)
    assert not instantiate("t4", build_field(3, 4), 2, 0).exploratory


@pytest.mark.parametrize("fid,p,m", [("b1", 2, 1), ("b2", 2, 2), ("b3", 2, 1), ("t4", 3, 2), ("p5", 3, 1), ("p5", 5, 1)])
def test_zero_maps_to_zero_when_delta_is_zero(fid, p, m):
    n = 3 * m if fid.startswith("b") else 2 * m
    inst = instantiate(fid, build_field(p, n), m, 0)
    assert evaluate(inst, 0) == 0


def test_b1_small_value():
    inst = instantiate("b1", build_field(2, 3), 1, 0)
    assert evaluate(inst, 1) == 1


@pytest.mark.parametrize("fid,m", [("b1", 1), ("b1", 2), ("b1", 3), ("b2", 2), ("b2", 3), ("b3", 1), ("b3", 3)])
def test_binary_families_permute(fid, m):
    ctx = build_field(2, 3 * m)
    for delta in range(ctx.q):
        assert is_permutation(as_lut(instantiate(fid, ctx, m, delta)))


def test_t4_permutes_f81():
    ctx = build_field(3, 4)
    for delta in range(ctx.q):
        assert is_permutation(as_lut(instantiate("t4", ctx, 2, delta)))


def test_t4_odd_m_is_not_always_a_permutation():
    ctx = build_field(3, 2)
    perms = [is_permutation(as_lut(instantiate("t4", ctx, 1, d, strict=False))) for d in range(ctx.q)]
    assert perms == [ctx.rel_trace(d, 1) == 0 for d in range(ctx.q)]


@pytest.mark.parametrize("p,m", [(3, 1), (5, 1), (3, 2), (7, 1)])
def test_p5_permutes_on_trace_zero_and_minus_branch(p, m):
    ctx = build_field(p, 2 * m)
    for delta in range(ctx.q):
        br = p5_branches(ctx, m, delta)
        if br["trace_zero"] or br["minus"]:
            assert is_permutation(as_lut(instantiate("p5", ctx, m, delta)))


def test_p5_plus_branch_is_not_sufficient():
    ctx = build_field(3, 2)
    plus = [d for d in range(ctx.q) if p5_branches(ctx, 1, d)["plus"]]
    assert plus
    for d in plus:
        inst = instantiate("p5", ctx, 1, d, strict=False)
        assert inst.exploratory
        assert not is_permutation(as_lut(inst))


def _deltas(ctx, k=4):
    if ctx.q <= 81:
        return range(ctx.q)
    rng = np.random.default_rng(ctx.q)
    return [0] + rng.choice(np.arange(1, ctx.q), size=k, replace=False).tolist()


@pytest.mark.parametrize("fid,p,m", [
    ("b1", 2, 1), ("b1", 2, 2), ("b1", 2, 3),
    ("t4", 3, 1), ("t4", 3, 2), ("t4", 3, 3),
    ("p5", 3, 1), ("p5", 5, 1), ("p5", 7, 1), ("p5", 3, 2), ("p5", 5, 2), ("p5", 3, 3),
])
def test_expanded_form_matches(fid, p, m):
    ctx = build_field(p, 3 * m if fid == "b1" else 2 * m)
    for delta in _deltas(ctx):
        inst = instantiate(fid, ctx, m, delta, strict=False)
        direct = evaluate_all(inst)
        xs = range(ctx.q) if ctx.q <= 81 else range(0, ctx.q, 3)
        for x in xs:
            assert evaluate_expanded(inst, x) == direct[x]


@pytest.mark.parametrize("fid", ["b2", "b3"])
def test_expanded_form_unsupported(fid):
    m = 2 if fid == "b2" else 1
    inst = instantiate(fid, build_field(2, 3 * m), m, 0)
    with pytest.raises(UnsupportedFamily):
        evaluate_expanded(inst, 1)


@pytest.mark.parametrize("m", [1, 2])
def test_t4_reduction_on_trace_zero(m):
    ctx = build_field(3, 2 * m)
    for delta in range(ctx.q):
        if ctx.rel_trace(delta, m):
            continue
        inst = instantiate("t4", ctx, m, delta, strict=False)
        assert all(t4_gamma0_reduction(inst, x) == evaluate(inst, x) for x in range(ctx.q))


def test_lut_matches_pointwise():
    ctx = build_field(3, 4)
    inst = instantiate("t4", ctx, 2, 17)
    lut = as_lut(inst)
    rng = np.random.default_rng(0)
    for x in rng.integers(0, ctx.q, size=100).tolist():
        assert lut(x) == evaluate(inst, x)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([("b1", 2, 2), ("b2", 2, 2), ("t4", 3, 2), ("p5", 5, 1)]), st.integers(0, 10**6), st.integers(0, 10**6))
def test_vectorised_equals_scalar(case, delta, x):
    fid, p, m = case
    ctx = build_field(p, 3 * m if p == 2 else 2 * m)
    inst = instantiate(fid, ctx, m, delta % ctx.q, strict=False)
    assert evaluate_all(inst)[x % ctx.q] == evaluate(inst, x % ctx.q)
