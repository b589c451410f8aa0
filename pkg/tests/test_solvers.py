import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cdu import solvers
from cdu.gf import build_field
from cdu.solvers import LinearizedPoly, TrinomialInstance


def _kernel_by_scan(L):
    return np.nonzero(L.evaluate_all() == 0)[0].tolist()


def test_frobenius_difference_kernel_is_subfield():
    for p, m in [(2, 3), (3, 2), (5, 1)]:
        ctx = build_field(p, 2 * m)
        L = LinearizedPoly(ctx, {m: 1, 0: ctx.neg(1)})
        basis, dim = solvers.linearized_kernel(L)
        assert dim == m
        assert solvers._span(ctx, basis) == ctx.subfield(m).tolist()


def test_identity_has_trivial_kernel():
    ctx = build_field(3, 3)
    assert solvers.linearized_kernel(LinearizedPoly(ctx, {0: 1})) == ([], 0)


def test_named_kernel_f81():
    ctx = build_field(3, 4)
    L = LinearizedPoly(ctx, {1: 1, 3: 1})  # X^3 + X^27
    _, dim = solvers.linearized_kernel(L)
    assert 3**dim == len(_kernel_by_scan(L))


@pytest.mark.parametrize("p,n", [(2, 4), (2, 6), (2, 8), (3, 3), (3, 4), (3, 5), (5, 2), (5, 3)])
def test_random_kernels(p, n):
    ctx = build_field(p, n)
    rng = np.random.default_rng(p * 100 + n)
    trials = 1000 if ctx.q <= 256 else 100
    for _ in range(trials):
        coeffs = {i: int(rng.integers(0, ctx.q)) for i in range(n) if rng.random() < 0.6}
        L = LinearizedPoly(ctx, coeffs)
        basis, dim = solvers.linearized_kernel(L)
        kernel = _kernel_by_scan(L)
        assert p**dim == len(kernel)
        assert solvers._span(ctx, basis) == kernel
        assert n - np.linalg.matrix_rank(L.matrix()) <= dim  # rank over Q bounds rank over F_p


def test_linearity():
    ctx = build_field(3, 4)
    rng = np.random.default_rng(9)
    L = LinearizedPoly(ctx, {0: 5, 1: 17, 3: 40})
    for x, y in rng.integers(0, ctx.q, size=(200, 2)).tolist():
        assert L(ctx.add(x, y)) == ctx.add(L(x), L(y))
        assert L(ctx.mul(2, x)) == ctx.mul(2, L(x))


def test_solve_affine():
    ctx = build_field(2, 6)
    rng = np.random.default_rng(4)
    for _ in range(300):
        coeffs = {i: int(rng.integers(0, ctx.q)) for i in range(6) if rng.random() < 0.5}
        L = LinearizedPoly(ctx, coeffs)
        rhs = int(rng.integers(0, ctx.q))
        vals = L.evaluate_all()
        assert solvers.solve_affine(L, rhs) == np.nonzero(vals == rhs)[0].tolist()
        assert solvers.solve_affine(L, 0) == solvers._span(ctx, solvers.linearized_kernel(L)[0])
    bij = LinearizedPoly(ctx, {0: 1})
    assert solvers.solve_affine(bij, 9) == [9]


def test_closed_form_exponent():
    for p in (2, 3, 5, 7):
        for k in range(1, 5):
            for r in range(7):
                for i in range(r + 1):
                    assert solvers.cm04_s(p, k, r, i) == solvers.cm04_s_sum(p, k, r, i)


def test_alpha_beta_recurrence():
    # alpha_r and beta_r against their defining sums
    ctx = build_field(3, 4)
    rng = np.random.default_rng(5)
    for _ in range(50):
        a, b = (int(x) for x in rng.integers(0, ctx.q, size=2))
        t = TrinomialInstance(ctx, 1, a, b)
        for r in range(4):
            alpha, beta = solvers.cm04_alpha_beta(t, r)
            expo = sum(3**j for j in range(r + 1))
            assert alpha == ctx.pow(a, expo)
            terms = [ctx.mul(ctx.pow(a, solvers.cm04_s_sum(3, 1, r, i)), ctx.frobenius(b, i)) for i in range(r + 1)]
            acc = 0
            for x in terms:
                acc = ctx.add(acc, x)
            assert beta == acc


def test_unique_root_case_f81():
    ctx = build_field(3, 4)
    rng = np.random.default_rng(6)
    seen = 0
    for _ in range(200):
        a, b = (int(x) for x in rng.integers(0, ctx.q, size=2))
        t = TrinomialInstance(ctx, 2, a, b)
        alpha, _ = solvers.cm04_alpha_beta(t)
        if alpha != 1:
            seen += 1
            roots = solvers.trinomial_roots(t)
            assert len(roots) == 1 and t(roots[0]) == 0
            assert roots == solvers.brute_force_roots(t)
    assert seen > 100


def test_no_roots_when_alpha_one_beta_nonzero():
    ctx = build_field(3, 4)
    for b in range(1, ctx.q):
        t = TrinomialInstance(ctx, 2, 1, b)
        alpha, beta = solvers.cm04_alpha_beta(t)
        assert alpha == 1
        assert (solvers.trinomial_roots(t) == []) == (beta != 0)


def test_degenerate_root_count_is_p_to_the_g():
    for p in (2, 3, 5):
        ctx = build_field(p, 4)
        t = TrinomialInstance(ctx, 2, 1, 0)
        assert solvers.trinomial_roots(t) == ctx.subfield(2).tolist()
        t1 = TrinomialInstance(ctx, 1, 1, 0)
        assert len(solvers.trinomial_roots(t1)) == p  # p^gcd(4, 1), not p^ell = p^4


@pytest.mark.parametrize("p,n", [(2, 3), (2, 6), (3, 2), (3, 4), (5, 2), (5, 3), (7, 2)])
def test_trinomial_matches_brute_force(p, n):
    ctx = build_field(p, n)
    rng = np.random.default_rng(p + 10 * n)
    for _ in range(300):
        k = int(rng.integers(1, n + 1))
        a = ctx.pow(int(rng.integers(1, ctx.q)), p**k - 1) if rng.random() < 0.3 else int(rng.integers(0, ctx.q))
        b = int(rng.integers(0, ctx.q)) if rng.random() < 0.8 else 0
        t = TrinomialInstance(ctx, k, a, b)
        roots = solvers.trinomial_roots(t)
        assert roots == solvers.brute_force_roots(t)
        assert len(roots) in (0, 1, p**t.g)
        assert t.g * t.ell == n


def test_cubic_examples():
    f2 = build_field(2, 1)
    assert solvers.cubic_roots_char2(f2, 1, 1).roots == []
    for m in (1, 2, 3, 4):
        ctx = build_field(2, m)
        assert solvers.cubic_roots_char2(ctx, 1, 0).roots == [0, 1]


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_cubic_criterion_exhaustive(m):
    ctx = build_field(2, m)
    for b1 in range(ctx.q):
        for b0 in range(1, ctx.q):
            r = solvers.cubic_roots_char2(ctx, b1, b0)
            assert len(r.roots) in (0, 1, 3)
            assert r.agrees


def test_cubic_needs_characteristic_two():
    with pytest.raises(solvers.PreconditionViolation):
        solvers.cubic_roots_char2(build_field(3, 2), 1, 1)


@pytest.mark.parametrize("m", [1, 2])
def test_restricted_count_at_most_four(m):
    ctx = build_field(2, 3 * m)
    sub = set(ctx.subfield(m).tolist())
    for delta in range(ctx.q):
        if ctx.rel_trace(delta, m) == 1:
            continue
        for c in range(ctx.q):
            if c in sub:
                continue
            counts = solvers.lemma2s1_counts(ctx, c, delta)
            assert counts.max() <= 4
            assert (counts >= 1).all()  # X = 0 always solves
            free = solvers.lemma2s1_counts(ctx, c, delta, restricted=False)
            assert (free[sorted(sub)] == 2).all()  # a in F_{2^m} gives a^{2^{2m}} + a^{2^m} = 0
            assert (counts[sorted(sub)] == 1).all()


def test_single_a_count_matches_vector():
    ctx = build_field(2, 6)
    counts = solvers.lemma2s1_counts(ctx, 7, 3)
    for a in range(0, ctx.q, 5):
        assert solvers.lemma2s1_count(ctx, 7, 3, a) == counts[a]


def test_restricted_count_preconditions():
    ctx = build_field(2, 6)
    gamma1 = next(d for d in range(ctx.q) if ctx.rel_trace(d, 2) == 1)
    with pytest.raises(solvers.PreconditionViolation):
        solvers.lemma2s1_count(ctx, 7, gamma1, 0)
    with pytest.raises(solvers.PreconditionViolation):
        solvers.lemma2s1_count(ctx, 1, 0, 0)
    with pytest.raises(solvers.PreconditionViolation):
        solvers.lemma2s1_count(build_field(2, 4), 7, 0, 0)


@pytest.mark.parametrize("p,m", [(3, 1), (3, 2), (5, 1), (7, 1)])
def test_witness_for_every_c(p, m):
    ctx = build_field(p, 2 * m)
    for c in range(ctx.q):
        if ctx.in_subfield(c, m):
            continue
        a, d = solvers.lemab_witness(ctx, c, m)
        A, B = solvers.lemab_terms(ctx, m, c, a)
        assert d != 0 and ctx.add(A, ctx.mul(B, ctx.pow(d, p - 1))) == 0


def test_subfield_a_never_gives_a_witness():
    ctx = build_field(3, 2)
    for c in range(ctx.q):
        if ctx.in_subfield(c, 1):
            continue
        for a in ctx.subfield(1).tolist():
            A, B = solvers.lemab_terms(ctx, 1, c, a)
            assert B == 0 and A == ctx.pow(ctx.sub(1, c), 3) != 0


def test_witness_preconditions():
    with pytest.raises(solvers.PreconditionViolation):
        solvers.lemab_witness(build_field(3, 2), 1)
    with pytest.raises(solvers.PreconditionViolation):
        solvers.lemab_witness(build_field(2, 2), 2)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([(2, 5), (3, 3), (5, 2)]), st.integers(1, 6), st.integers(0, 10**5), st.integers(0, 10**5))
def test_trinomial_roots_substitute(pn, k, a, b):
    ctx = build_field(*pn)
    t = TrinomialInstance(ctx, k, a % ctx.q, b % ctx.q)
    for z in solvers.trinomial_roots(t):
        assert t(z) == 0
