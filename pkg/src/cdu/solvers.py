"""Root finding behind the lemmas: linearized kernels, affine equations, the
trinomial z^{p^k} - a z - b, characteristic-2 cubics, and two bespoke counters.

Every root returned here has been checked by substitution.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from cdu.gf import FieldCtx, build_field, embedding


class PreconditionViolation(ValueError):
    pass


class WitnessNotFound(RuntimeError):
    pass


class SubstitutionFailure(AssertionError):
    pass


# -- linear algebra over F_p --------------------------------------------------

def _row_reduce(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p and its pivot columns."""
    A = np.array(M, dtype=np.int64) % p
    rows, cols = A.shape
    pivots = []
    r = 0
    for col in range(cols):
        nz = np.nonzero(A[r:, col])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] * pow(int(A[r, col]), -1, p) % p
        for i in range(rows):
            if i != r and A[i, col]:
                A[i] = (A[i] - A[i, col] * A[r]) % p
        pivots.append(col)
        r += 1
        if r == rows:
            break
    return A, pivots


def nullspace_mod_p(M: np.ndarray, p: int) -> list[np.ndarray]:
    R, pivots = _row_reduce(M, p)
    ncols = M.shape[1]
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = np.zeros(ncols, dtype=np.int64)
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-R[i, f]) % p
        basis.append(v)
    return basis


def solve_mod_p(M: np.ndarray, rhs: np.ndarray, p: int) -> np.ndarray | None:
    """One solution of M v = rhs over F_p, or None."""
    aug = np.concatenate([np.asarray(M, dtype=np.int64), np.asarray(rhs, dtype=np.int64)[:, None]], axis=1)
    R, pivots = _row_reduce(aug, p)
    ncols = M.shape[1]
    if ncols in pivots:
        return None
    v = np.zeros(ncols, dtype=np.int64)
    for i, pc in enumerate(pivots):
        v[pc] = R[i, -1]
    return v


# -- linearized polynomials -------------------------------------------------------

@dataclass(frozen=True, eq=False)
class LinearizedPoly:
    """L(X) = sum_i coeffs[i] X^{p^i}; exponents i are taken mod n."""

    ctx: FieldCtx
    coeffs: dict[int, int] = field(default_factory=dict)

    def __call__(self, x: int) -> int:
        ctx = self.ctx
        acc = 0
        for i, c in self.coeffs.items():
            acc = ctx.add(acc, ctx.mul(c, ctx.frobenius(x, i)))
        return acc

    def evaluate_all(self, xs=None) -> np.ndarray:
        ctx = self.ctx
        xs = ctx.elements() if xs is None else np.asarray(xs, dtype=np.int64)
        acc = np.zeros(xs.shape, dtype=np.int64)
        for i, c in self.coeffs.items():
            acc = ctx.vadd(acc, ctx.vmul(c, ctx.vfrob(xs, i)))
        return acc

    def matrix(self) -> np.ndarray:
        """Columns are the digit vectors of L(X^j), j < n, in the monomial basis."""
        ctx = self.ctx
        cols = [ctx.digits(self(ctx.p**j)) for j in range(ctx.n)]
        return np.array(cols, dtype=np.int64).T


def _span(ctx: FieldCtx, basis: list[int]) -> list[int]:
    out = []
    for coefs in itertools.product(range(ctx.p), repeat=len(basis)):
        acc = 0
        for k, b in zip(coefs, basis):
            if k:
                acc = ctx.add(acc, ctx.mul(k, b))
        out.append(acc)
    return sorted(out)


def linearized_kernel(L: LinearizedPoly) -> tuple[list[int], int]:
    """An F_p-basis of ker L and its dimension n - rank."""
    ctx = L.ctx
    basis = [ctx.from_digits(v) for v in nullspace_mod_p(L.matrix(), ctx.p)]
    for b in basis:
        if L(b) != 0:
            raise SubstitutionFailure(f"kernel vector {b} gives L = {L(b)}")
    return basis, len(basis)


def solve_affine(L: LinearizedPoly, rhs: int) -> list[int]:
    """All x with L(x) = rhs (empty, or a coset of the kernel), sorted."""
    ctx = L.ctx
    v = solve_mod_p(L.matrix(), np.array(ctx.digits(rhs)), ctx.p)
    if v is None:
        return []
    x0 = ctx.from_digits(v)
    basis, _ = linearized_kernel(L)
    sols = sorted(ctx.add(x0, k) for k in _span(ctx, basis))
    for x in sols:
        if L(x) != rhs:
            raise SubstitutionFailure(f"L({x}) != {rhs}")
    return sols


# -- the trinomial z^{p^k} - a z - b -----------------------------------------------

@dataclass(frozen=True, eq=False)
class TrinomialInstance:
    ctx: FieldCtx
    k: int
    a_t: int
    b_t: int

    @property
    def g(self) -> int:
        return math.gcd(self.ctx.n, self.k)

    @property
    def ell(self) -> int:
        return self.ctx.n // self.g

    def __call__(self, z: int) -> int:
        ctx = self.ctx
        return ctx.sub(ctx.sub(ctx.frobenius(z, self.k), ctx.mul(self.a_t, z)), self.b_t)

    def evaluate_all(self) -> np.ndarray:
        ctx = self.ctx
        e = ctx.elements()
        return ctx.vsub(ctx.vsub(ctx.vfrob(e, self.k), ctx.vmul(self.a_t, e)), self.b_t)


def cm04_s(p: int, k: int, r: int, i: int) -> int:
    """Exponent s_i of a in beta_r, closed form (p^{k(r+1)} - p^{k(i+1)})/(p^k - 1); s_r = 0."""
    if i == r:
        return 0
    return (p ** (k * (r + 1)) - p ** (k * (i + 1))) // (p**k - 1)


def cm04_s_sum(p: int, k: int, r: int, i: int) -> int:
    """The same exponent as the sum of p^{k(j+1)} for i <= j <= r - 1."""
    return sum(p ** (k * (j + 1)) for j in range(i, r))


def cm04_alpha_beta(t: TrinomialInstance, r: int | None = None) -> tuple[int, int]:
    """(alpha_r, beta_r), by default at r = ell - 1."""
    ctx, p, k = t.ctx, t.ctx.p, t.k
    r = t.ell - 1 if r is None else r
    alpha = ctx.pow(t.a_t, (p ** (k * (r + 1)) - 1) // (p**k - 1))
    beta = 0
    for i in range(r + 1):
        term = ctx.mul(ctx.pow(t.a_t, cm04_s(p, k, r, i)), ctx.frobenius(t.b_t, k * i))
        beta = ctx.add(beta, term)
    return alpha, beta


def trinomial_roots(t: TrinomialInstance) -> list[int]:
    """Roots of z^{p^k} - a z - b in F_{p^n}.

    The recurrence gives the root directly when alpha_{ell-1} != 1; otherwise
    the root set (empty or a kernel coset) comes from linear algebra.
    """
    ctx = t.ctx
    if t.ell > 1:
        alpha, beta = cm04_alpha_beta(t)
        if alpha != 1:
            z = ctx.div(beta, ctx.sub(1, alpha))
            if t(z) != 0:
                raise SubstitutionFailure(f"recurrence root {z} does not satisfy the trinomial")
            return [z]
        if beta != 0:
            return []
    coeffs: dict[int, int] = {}
    kk = t.k % ctx.n
    coeffs[kk] = ctx.add(coeffs.get(kk, 0), 1)
    coeffs[0] = ctx.sub(coeffs.get(0, 0), t.a_t)
    return solve_affine(LinearizedPoly(ctx, coeffs), t.b_t)


def brute_force_roots(t: TrinomialInstance) -> list[int]:
    return np.nonzero(t.evaluate_all() == 0)[0].tolist()


# -- u^3 + b1 u + b0 over F_{2^m} ----------------------------------------------------

@dataclass
class CubicReport:
    roots: list[int]
    trace_condition: bool | None  # Tr(b1^3/b0^2) = Tr(1); None when b0 = 0
    cube_condition: bool | None  # t1, t2 cubes in the appropriate field
    predicts_three: bool | None

    @property
    def agrees(self) -> bool | None:
        if self.predicts_three is None:
            return None
        return self.predicts_three == (len(self.roots) == 3)


def cubic_roots_char2(ctx_m: FieldCtx, b1: int, b0: int) -> CubicReport:
    """Roots of u^3 + b1 u + b0 by enumeration, with the trace/cube criterion for three roots."""
    if ctx_m.p != 2:
        raise PreconditionViolation("characteristic 2 only")
    e = ctx_m.elements()
    vals = ctx_m.vadd(ctx_m.vadd(ctx_m.vpow(e, 3), ctx_m.vmul(b1, e)), b0)
    roots = np.nonzero(vals == 0)[0].tolist()
    if b0 == 0:
        return CubicReport(roots, None, None, None)
    m = ctx_m.n
    ratio = ctx_m.div(ctx_m.pow(b1, 3), ctx_m.mul(b0, b0))
    trace_ok = ctx_m.trace(ratio) == m % 2
    cube_ok = None
    if trace_ok:
        if m % 2 == 0:
            big, B0, B1 = ctx_m, b0, b1
        else:
            big = build_field(2, 2 * m)
            emb = embedding(ctx_m, big)
            B0, B1 = int(emb[b0]), int(emb[b1])
        eb = big.elements()
        quad = big.vadd(big.vadd(big.vmul(eb, eb), big.vmul(B0, eb)), big.pow(B1, 3))
        ts = np.nonzero(quad == 0)[0].tolist()
        cube_ok = bool(ts) and all(big.is_dth_power(t, 3) for t in ts)
    predicts = bool(trace_ok and cube_ok)
    return CubicReport(roots, trace_ok, cube_ok, predicts)


# -- the restricted equation behind the at-most-four bound ------------------------------

def _lemma2s1_lhs(ctx: FieldCtx, c: int, delta: int, a, X) -> tuple[np.ndarray, np.ndarray]:
    m = ctx.n // 3
    onec = ctx.add(1, c)
    cx = ctx.vmul(onec, X)
    sqrt_cx = ctx.vfrob(cx, ctx.n - 1)
    dprime = ctx.add(1, ctx.rel_trace(delta, m))
    A = ctx.vadd(ctx.vfrob(a, 2 * m), ctx.vfrob(a, m))
    lhs = ctx.vadd(ctx.vadd(sqrt_cx, ctx.vmul(ctx.mul(onec, dprime), X)), ctx.vmul(A, ctx.vrel_trace(X, m)))
    restriction = ctx.vrel_trace(cx, m) == 0
    return lhs, restriction


def _lemma2s1_check(ctx: FieldCtx, c: int, delta: int) -> None:
    if ctx.p != 2 or ctx.n % 3:
        raise PreconditionViolation("needs F_{2^{3m}}")
    m = ctx.n // 3
    if ctx.rel_trace(delta, m) == 1:
        raise PreconditionViolation("Tr_m^{3m}(delta) = 1")
    if ctx.in_subfield(c, m):
        raise PreconditionViolation("c lies in F_{2^m}")


def lemma2s1_count(ctx: FieldCtx, c: int, delta: int, a: int, restricted: bool = True) -> int:
    """Number of X with sqrt((1+c)X) + (1+c)(1+Tr(delta))X + (a^{2^{2m}} + a^{2^m}) Tr(X) = 0.

    Traces are relative to F_{2^m}.  With ``restricted`` only X satisfying
    Tr((1+c)X) = 0 are counted.
    """
    _lemma2s1_check(ctx, c, delta)
    lhs, ok = _lemma2s1_lhs(ctx, c, delta, a, ctx.elements())
    hit = lhs == 0
    if restricted:
        hit &= ok
    return int(np.count_nonzero(hit))


def lemma2s1_counts(ctx: FieldCtx, c: int, delta: int, restricted: bool = True) -> np.ndarray:
    """lemma2s1_count for every a at once."""
    _lemma2s1_check(ctx, c, delta)
    e = ctx.elements()
    lhs, ok = _lemma2s1_lhs(ctx, c, delta, e[:, None], e[None, :])
    hit = lhs == 0
    if restricted:
        hit &= ok
    return hit.sum(axis=1)


# -- witness for A + B d^{p-1} = 0 -------------------------------------------------------

def lemab_terms(ctx: FieldCtx, m: int, c: int, a: int) -> tuple[int, int]:
    """(A, B) for a given a."""
    p = ctx.p
    g = ctx.sub(1, c)
    k = ctx.sub(1, ctx.div(g, ctx.frobenius(g, m)))
    am = ctx.sub(ctx.frobenius(a, m), a)
    A = ctx.pow(ctx.add(g, ctx.mul(ctx.pow(am, p), k)), p)
    B = ctx.mul(am, k)
    return A, B


def lemab_witness(ctx: FieldCtx, c: int, m: int | None = None) -> tuple[int, int]:
    """Some (a, d) with d != 0 and A + B d^{p-1} = 0.

    Candidates a = x(1 - c) with x in F_{p^m}^* are tried first, then every a.
    """
    m = ctx.n // 2 if m is None else m
    if ctx.p == 2 or ctx.n != 2 * m:
        raise PreconditionViolation("needs odd p and n = 2m")
    if ctx.in_subfield(c, m):
        raise PreconditionViolation("c lies in F_{p^m}")
    p = ctx.p
    e = ctx.elements()[1:]
    powers = ctx.vpow(e, p - 1)
    root_of: dict[int, int] = {}
    for d, y in zip(e.tolist(), powers.tolist()):
        root_of.setdefault(y, d)
    g = ctx.sub(1, c)
    sub_star = [x for x in ctx.subfield(m).tolist() if x]
    guided = [ctx.mul(x, g) for x in sub_star]
    seen = set()
    for a in itertools.chain(guided, range(ctx.q)):
        if a in seen:
            continue
        seen.add(a)
        A, B = lemab_terms(ctx, m, c, a)
        if B == 0:
            if A == 0:
                return _verified(ctx, m, c, a, 1)
            continue
        d = root_of.get(ctx.neg(ctx.div(A, B)))
        if d is not None:
            return _verified(ctx, m, c, a, d)
    raise WitnessNotFound(f"no (a, d) for c = {c} in {ctx!r}")


def _verified(ctx: FieldCtx, m: int, c: int, a: int, d: int) -> tuple[int, int]:
    A, B = lemab_terms(ctx, m, c, a)
    if d == 0 or ctx.add(A, ctx.mul(B, ctx.pow(d, ctx.p - 1))) != 0:
        raise SubstitutionFailure(f"witness (a={a}, d={d}) fails")
    return a, d
