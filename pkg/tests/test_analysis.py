import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cdu.analysis import (
    WITNESS_CAP,
    FunctionTable,
    c_ddt,
    c_ddt_entry,
    c_uniformity,
    c_uniformity_max,
    charsum_count,
    classify,
    ddt_csv,
    derivative_is_bijective,
    full_c_sweep,
    is_permutation,
    trace_table,
    walsh_coefficient,
    walsh_spectrum,
)
from cdu.cyclotomic import CycInt
from cdu.families import as_lut, instantiate
from cdu.gf import build_field, embedding, is_irreducible


def _power_table(ctx, d):
    return FunctionTable(ctx, ctx.vpow(ctx.elements(), d))


def _random_table(ctx, rng):
    return FunctionTable(ctx, rng.integers(0, ctx.q, size=ctx.q))


def _naive_entry(table, c, a, b):
    ctx = table.ctx
    return sum(ctx.sub(table(ctx.add(x, a)), ctx.mul(c, table(x))) == b for x in range(ctx.q))


def test_function_table_validation():
    ctx = build_field(2, 3)
    with pytest.raises(ValueError):
        FunctionTable(ctx, [0] * 7)
    with pytest.raises(ValueError):
        FunctionTable(ctx, [8] * 8)
    t = FunctionTable.identity(ctx)
    with pytest.raises(ValueError):
        t.values[0] = 3


def test_is_permutation():
    ctx = build_field(3, 2)
    assert is_permutation(FunctionTable.identity(ctx))
    assert not is_permutation(FunctionTable(ctx, [4] * ctx.q))


@pytest.mark.parametrize("p,n", [(2, 3), (3, 2), (5, 1), (2, 4)])
def test_ddt_matches_naive_count(p, n):
    ctx = build_field(p, n)
    rng = np.random.default_rng(p * 10 + n)
    for _ in range(3):
        t = _random_table(ctx, rng)
        for c in range(ctx.q):
            D = c_ddt(t, c)
            assert (D.sum(axis=1) == ctx.q).all()
            for a, b in itertools.product(range(ctx.q), repeat=2):
                if rng.random() < 0.2:
                    assert D[a, b] == _naive_entry(t, c, a, b) == c_ddt_entry(t, c, a, b)


def test_zero_c_on_permutation():
    ctx = build_field(2, 4)
    t = _power_table(ctx, 7)  # gcd(7, 15) = 1
    D = c_ddt(t, 0)
    assert (D == 1).all()  # x -> F(x + a) is onto


def test_cube_map_is_two_to_one_derivative():
    ctx = build_field(2, 4)
    D = c_ddt(_power_table(ctx, 3), 1)
    assert set(np.unique(D[1:]).tolist()) == {0, 2}


def test_identity_uniformity():
    ctx = build_field(3, 2)
    ident = FunctionTable.identity(ctx)
    reports = full_c_sweep(ident)
    for r in reports:
        assert r.max_entry == (ctx.q if r.c == 1 else 1)
    r1 = reports[1]
    assert r1.excluded == {0: ctx.q - 1, ctx.q: 1}


def test_c1_excludes_zero_row():
    ctx = build_field(2, 3)
    t = _power_table(ctx, 3)
    r = c_uniformity(t, 1)
    assert r.max_entry == 2  # x^3 is APN on F_8
    assert all(a != 0 for a, _ in r.witnesses)
    assert r.excluded == {0: 7, 8: 1}
    assert sum(r.spectrum.values()) == (ctx.q - 1) * ctx.q


def test_report_spectrum_and_witnesses():
    ctx = build_field(2, 4)
    rng = np.random.default_rng(5)
    t = _random_table(ctx, rng)
    for c in (0, 3, 7):
        r = c_uniformity(t, c)
        assert sum(k * v for k, v in r.spectrum.items()) == ctx.q * ctx.q
        assert r.witnesses == sorted(r.witnesses)
        assert 1 <= len(r.witnesses) <= WITNESS_CAP
        for a, b in r.witnesses:
            assert c_ddt_entry(t, c, a, b) == r.max_entry
        assert c_uniformity_max(t, c) == r.max_entry
        d = r.to_dict()
        assert d["max"] == r.max_entry and d["classification"] == classify(r.max_entry)


def test_classify():
    assert classify(1) == "PcN"
    assert classify(2) == "APcN"
    assert classify(5) == "Uniformity(5)"


def test_b1_m1_gamma1_is_apcn():
    ctx = build_field(2, 3)
    for delta in range(ctx.q):
        if ctx.rel_trace(delta, 1) != 1:
            continue
        t = as_lut(instantiate("b1", ctx, 1, delta))
        for c in range(2, ctx.q):
            assert c_uniformity(t, c).classification == "APcN"


def test_p5_uniformity_p():
    ctx = build_field(3, 2)
    t = as_lut(instantiate("p5", ctx, 1, 0))
    for c in range(ctx.q):
        if not ctx.in_subfield(c, 1):
            assert c_uniformity(t, c).max_entry == 3


def test_sweep_independent_of_workers():
    ctx = build_field(2, 6)
    t = as_lut(instantiate("b1", ctx, 2, 5))
    one = [r.to_dict() for r in full_c_sweep(t, workers=1)]
    two = [r.to_dict() for r in full_c_sweep(t, workers=2)]
    assert one == two
    assert [r["c"] for r in one] == list(range(ctx.q))


def test_b1_m2_sweep_partition():
    ctx = build_field(2, 6)
    sub = set(ctx.subfield(2).tolist())
    for delta in (0, 1, 7, 33):
        gamma1 = ctx.rel_trace(delta, 2) == 1
        for r in full_c_sweep(as_lut(instantiate("b1", ctx, 2, delta))):
            if r.c in sub and r.c != 1:
                assert r.classification == "PcN"
            elif r.c not in sub:
                assert r.max_entry == 2 if gamma1 else r.max_entry <= 4


@pytest.mark.parametrize("fid,p,m", [("b1", 2, 1), ("b1", 2, 2), ("t4", 3, 1), ("p5", 3, 1), ("p5", 5, 1), ("b3", 2, 1)])
def test_pcn_iff_every_derivative_is_bijective(fid, p, m):
    n = 3 * m if fid.startswith("b") else 2 * m
    ctx = build_field(p, n)
    rng = np.random.default_rng(7)
    for delta in rng.choice(ctx.q, size=min(ctx.q, 6), replace=False).tolist():
        t = as_lut(instantiate(fid, ctx, m, delta, strict=False))
        for c in range(ctx.q):
            if c == 1:
                continue
            pcn = c_uniformity_max(t, c) == 1
            assert pcn == all(derivative_is_bijective(t, c, a) for a in range(ctx.q))


def _alt_field(p, n):
    ctx = build_field(p, n)
    for low in itertools.product(range(p), repeat=n):
        f = tuple(low) + (1,)
        if f != ctx.spec.modulus and is_irreducible(f, p):
            return ctx, build_field(p, n, f)


@pytest.mark.parametrize("fid,p,m", [("b1", 2, 2), ("t4", 3, 2)])
def test_uniformity_multiset_is_modulus_independent(fid, p, m):
    n = 3 * m if p == 2 else 2 * m
    a, b = _alt_field(p, n)
    phi = embedding(a, b)

    def multiset(ctx):
        out = []
        for delta in range(ctx.q):
            t = as_lut(instantiate(fid, ctx, m, delta))
            out.extend(c_uniformity_max(t, c) for c in range(ctx.q))
        return sorted(out)

    assert multiset(a) == multiset(b)
    # and cell by cell through the isomorphism
    ta = as_lut(instantiate(fid, a, m, 3))
    tb = as_lut(instantiate(fid, b, m, int(phi[3])))
    for c in range(0, a.q, 7):
        assert c_uniformity_max(ta, c) == c_uniformity_max(tb, int(phi[c]))


def test_walsh_of_zero_function():
    ctx = build_field(3, 2)
    f = FunctionTable(ctx, np.zeros(ctx.q, dtype=np.int64))
    spec = walsh_spectrum(f)
    assert spec[0] == CycInt.integer(3, 9)
    assert all(w.is_zero() for w in spec[1:])


def test_walsh_needs_p_ary_values():
    ctx = build_field(3, 2)
    with pytest.raises(ValueError):
        walsh_coefficient(FunctionTable(ctx, [5] * 9), 0)


@pytest.mark.parametrize("p,n", [(2, 3), (3, 2), (5, 2), (2, 6), (3, 4), (7, 2)])
def test_parseval_exhaustive(p, n):
    ctx = build_field(p, n)
    rng = np.random.default_rng(11)
    for _ in range(3):
        f = FunctionTable(ctx, rng.integers(0, p, size=ctx.q))
        total = CycInt.integer(p, 0)
        for w in walsh_spectrum(f):
            total = total + w.norm_squared()
        assert total.to_int() == ctx.q**2


@pytest.mark.parametrize("p,n", [(3, 5), (2, 9), (7, 3)])
def test_parseval_random_large(p, n):
    ctx = build_field(p, n)
    rng = np.random.default_rng(12)
    f = FunctionTable(ctx, rng.integers(0, p, size=ctx.q))
    total = CycInt.integer(p, 0)
    for w in walsh_spectrum(f):
        total = total + w.norm_squared()  # single terms need not be rational for p > 3
    assert total.to_int() == ctx.q**2


def test_trace_table_of_identity_is_the_trace():
    ctx = build_field(3, 3)
    t = trace_table(ctx, lambda e: e)
    assert t.values.tolist() == [ctx.trace(x) for x in range(ctx.q)]


@pytest.mark.parametrize("p,n", [(2, 3), (3, 2), (5, 2), (3, 3), (2, 6), (3, 4)])
def test_charsum_matches_direct_count(p, n):
    ctx = build_field(p, n)
    rng = np.random.default_rng(13)
    for _ in range(300):
        t = _random_table(ctx, rng)
        c, a, b = (int(x) for x in rng.integers(0, ctx.q, size=3))
        assert charsum_count(t, c, a, b) == c_ddt_entry(t, c, a, b)


def test_charsum_row_total_and_unreachable():
    ctx = build_field(2, 3)
    t = FunctionTable(ctx, [0] * 8)  # derivative is the zero map
    assert charsum_count(t, 3, 1, 5) == 0
    assert sum(charsum_count(t, 3, 1, b) for b in range(8)) == 8


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(2, 3), (3, 2), (2, 4)]), st.integers(0, 2**32 - 1))
def test_charsum_property(pn, seed):
    ctx = build_field(*pn)
    rng = np.random.default_rng(seed)
    t = _random_table(ctx, rng)
    c, a = (int(x) for x in rng.integers(0, ctx.q, size=2))
    counts = [charsum_count(t, c, a, b) for b in range(ctx.q)]
    assert sum(counts) == ctx.q
    assert counts == c_ddt(t, c)[a].tolist()


def test_ddt_csv():
    ctx = build_field(2, 3)
    t = as_lut(instantiate("b1", ctx, 1, 0))
    lines = ddt_csv(t, 1).splitlines()
    assert lines[0] == "a,b,count"
    assert len(lines) == 1 + 64
    rows = {}
    for line in lines[1:]:
        a, b, k = map(int, line.split(","))
        rows[a] = rows.get(a, 0) + k
    assert all(v == 8 for v in rows.values())
