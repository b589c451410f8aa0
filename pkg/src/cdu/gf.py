"""Exact arithmetic in GF(p^n).

Elements are plain integers in ``[0, p^n)``: the base-p digits of the index are
the coefficients of the residue polynomial, least significant digit first.  For
p = 2 this is the usual bit-vector encoding, so addition is XOR.

Scalar methods take and return ``int``; the ``v*`` methods operate elementwise
on integer numpy arrays.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

TABLE_MAX_Q = 1 << 20  # exp/log tables
DENSE_MAX_Q = 1 << 10  # full q x q addition/subtraction tables


class FieldError(ValueError):
    pass


class NonPrimeCharacteristic(FieldError):
    pass


class ReducibleModulus(FieldError):
    pass


class DegreeMismatch(FieldError):
    pass


class NonDivisorSubfieldDegree(FieldError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    r = math.isqrt(p)
    return all(p % d for d in range(3, r + 1, 2))


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomials over F_p, coefficient lists with the constant term first ---

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    m = _trim([x % p for x in m])
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        f = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - f * c) % p
        _trim(a)
    return a


def poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    while b:
        a, b = b, poly_mod(a, b, p)
    return a


def _poly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] = x
    for i, y in enumerate(b):
        out[i] = (out[i] - y) % p
    return _trim(out)


def _poly_powmod(base: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = poly_mod(base, m, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), m, p)
        base = poly_mod(poly_mul(base, base, p), m, p)
        e >>= 1
    return result


def is_irreducible(modulus: list[int] | tuple[int, ...], p: int) -> bool:
    """Ben-Or test: f of degree n is irreducible iff gcd(X^{p^i} - X, f) = 1 for i <= n/2."""
    f = _trim([c % p for c in modulus])
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    xp = [0, 1]
    for _ in range(n // 2):
        xp = _poly_powmod(xp, p, f, p)
        g = poly_gcd(f, _poly_sub(xp, [0, 1], p), p)
        if len(g) > 1:
            return False
    return True


def default_modulus(p: int, n: int) -> tuple[int, ...]:
    """Least monic irreducible of degree n, ordering by the packed index of the low coefficients."""
    for low in range(p**n):
        coeffs = [(low // p**i) % p for i in range(n)] + [1]
        if coeffs[0] == 0 and n > 1:
            continue
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise FieldError(f"no irreducible polynomial of degree {n} over F_{p}")  # unreachable


@dataclass(frozen=True)
class FieldSpec:
    p: int
    n: int
    modulus: tuple[int, ...]  # monic, constant term first, length n + 1

    def __str__(self) -> str:
        return format_spec(self)

    def to_dict(self) -> dict:
        return {"p": self.p, "n": self.n, "modulus": format_modulus(self.modulus, self.p)}


def format_modulus(modulus, p: int) -> str:
    digits = [str(c) for c in reversed(modulus)]
    return "".join(digits) if p == 2 else ",".join(digits)


def parse_modulus(text: str, p: int) -> tuple[int, ...]:
    text = text.strip()
    digits = list(text) if p == 2 and "," not in text else text.split(",")
    return tuple(int(d) for d in reversed(digits))


def format_spec(spec: FieldSpec) -> str:
    return f"p={spec.p},n={spec.n},mod={format_modulus(spec.modulus, spec.p)}"


def parse_spec(text: str) -> FieldSpec:
    """Parse ``"p=2,n=6,mod=1011011"``; ``mod`` is optional and lists coefficients highest degree first."""
    head, _, mod = text.partition("mod=")
    kv = dict(part.split("=", 1) for part in head.strip(", ").split(",") if part)
    p, n = int(kv["p"]), int(kv["n"])
    modulus = parse_modulus(mod, p) if mod else None
    return build_field(p, n, modulus).spec


def _check_spec(p: int, n: int, modulus) -> FieldSpec:
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"p = {p} is not prime")
    if n < 1:
        raise DegreeMismatch(f"extension degree must be >= 1, got {n}")
    if modulus is None:
        return FieldSpec(p, n, default_modulus(p, n))
    coeffs = [c % p for c in modulus]
    _trim(coeffs)
    if len(coeffs) - 1 != n:
        raise DegreeMismatch(f"modulus has degree {len(coeffs) - 1}, expected {n}")
    if coeffs[-1] != 1:
        raise DegreeMismatch("modulus must be monic")
    if not is_irreducible(coeffs, p):
        raise ReducibleModulus(f"{format_modulus(coeffs, p)} is reducible over F_{p}")
    return FieldSpec(p, n, tuple(coeffs))


class FieldCtx:
    """An immutable GF(p^n) context.

    Derived tables (exp/log, Frobenius maps, dense addition tables) are built
    lazily and never change once built, so a context can be shared freely.
    """

    def __init__(self, spec: FieldSpec, use_tables: bool | None = None):
        self.spec = spec
        self.p = spec.p
        self.n = spec.n
        self.q = spec.p**spec.n
        self.modulus = spec.modulus
        self._place = [self.p**i for i in range(self.n)]
        self._red = sum(c << i for i, c in enumerate(self.modulus)) if self.p == 2 else None
        if use_tables is None:
            use_tables = self.q <= TABLE_MAX_Q
        self.has_tables = use_tables
        self.generator = self._find_generator()
        self._exp = self._log = None
        if use_tables:
            self._build_tables()
        self._frob_cache: dict[int, np.ndarray] = {}

    def __repr__(self) -> str:
        return f"FieldCtx({format_spec(self.spec)})"

    def __reduce__(self):
        return (_rebuild_ctx, (self.spec, self.has_tables))

    # -- encoding -------------------------------------------------------
    def digits(self, x: int) -> list[int]:
        p = self.p
        return [(x // self._place[i]) % p for i in range(self.n)]

    def from_digits(self, d) -> int:
        return sum((int(c) % self.p) * self._place[i] for i, c in enumerate(d))

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    # -- table-free arithmetic --------------------------------------------
    def mul_poly(self, x: int, y: int) -> int:
        """Product by polynomial multiplication and reduction, without tables."""
        if self.p == 2:
            return self._mul_bits(x, y)
        prod = poly_mul(self.digits(x), self.digits(y), self.p)
        return self.from_digits(poly_mod(prod, list(self.modulus), self.p))

    def _mul_bits(self, x: int, y: int) -> int:
        n = self.n
        red = self._red
        r = 0
        while y:
            if y & 1:
                r ^= x
            y >>= 1
            x <<= 1
            if x >> n & 1:
                x ^= red
        return r

    def pow_poly(self, x: int, e: int) -> int:
        if e < 0:
            x, e = self.inv_poly(x), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul_poly(r, x)
            x = self.mul_poly(x, x)
            e >>= 1
        return r

    def inv_poly(self, x: int) -> int:
        if x == 0:
            raise DivisionByZero("inverse of 0")
        return self.pow_poly(x, self.q - 2)

    def _find_generator(self) -> int:
        if self.q == 2:
            return 1
        order = self.q - 1
        factors = prime_factors(order)
        for g in range(2, self.q):
            if all(self.pow_poly(g, order // r) != 1 for r in factors):
                return g
        raise FieldError("no generator found")  # unreachable for a field

    def _build_tables(self) -> None:
        q = self.q
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        x = 1
        g = self.generator
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self.mul_poly(x, g)
        exp[q - 1:] = exp[: q - 1]
        self._exp, self._log = exp, log
        self._exp_list = exp[: q - 1].tolist()
        self._log_list = log.tolist()

    def exp(self, k: int) -> int:
        """generator ** k"""
        if self.has_tables:
            return self._exp_list[k % (self.q - 1)]
        return self.pow_poly(self.generator, k)

    def log(self, x: int) -> int:
        if x == 0:
            raise DivisionByZero("log of 0")
        if self.has_tables:
            return self._log_list[x]
        raise FieldError("discrete log needs tables")

    # -- scalar arithmetic ----------------------------------------------------
    def add(self, x: int, y: int) -> int:
        if self.p == 2:
            return x ^ y
        p, r, i = self.p, 0, 0
        while x or y:
            r += ((x % p + y % p) % p) * self._place[i]
            x //= p
            y //= p
            i += 1
        return r

    def neg(self, x: int) -> int:
        if self.p == 2:
            return x
        p, r, i = self.p, 0, 0
        while x:
            r += (-(x % p) % p) * self._place[i]
            x //= p
            i += 1
        return r

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def scalar(self, k: int) -> int:
        """The image of the integer k in the prime field."""
        return k % self.p

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        if self.has_tables:
            return self._exp_list[(self._log_list[x] + self._log_list[y]) % (self.q - 1)]
        return self.mul_poly(x, y)

    def inv(self, x: int) -> int:
        if x == 0:
            raise DivisionByZero("inverse of 0")
        if self.has_tables:
            return self._exp_list[-self._log_list[x] % (self.q - 1)]
        return self.inv_poly(x)

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, e: int) -> int:
        """x**e with 0**0 = 1; exponents are reduced mod q-1 only for nonzero x."""
        if e == 0:
            return 1
        if x == 0:
            if e < 0:
                raise DivisionByZero("negative power of 0")
            return 0
        if self.has_tables:
            return self._exp_list[self._log_list[x] * e % (self.q - 1)]
        return self.pow_poly(x, e % (self.q - 1))

    def frobenius(self, x: int, k: int) -> int:
        return self.pow(x, self.p ** (k % self.n))

    def rel_trace(self, x: int, m: int) -> int:
        self._check_divisor(m)
        t = 0
        for i in range(self.n // m):
            t = self.add(t, self.frobenius(x, m * i))
        return t

    def trace(self, x: int) -> int:
        """Absolute trace, returned as an integer in [0, p)."""
        return self.rel_trace(x, 1)

    def in_subfield(self, x: int, m: int) -> bool:
        self._check_divisor(m)
        return self.frobenius(x, m) == x

    def is_dth_power(self, x: int, d: int) -> bool:
        if d < 1:
            raise ValueError("d must be >= 1")
        if x == 0:
            return True
        return self.pow(x, (self.q - 1) // math.gcd(d, self.q - 1)) == 1

    def _check_divisor(self, m: int) -> None:
        if m < 1 or self.n % m:
            raise NonDivisorSubfieldDegree(f"{m} does not divide {self.n}")

    # -- vectorised arithmetic -----------------------------------------------
    @functools.cached_property
    def _digit_matrix(self) -> np.ndarray:
        e = np.arange(self.q, dtype=np.int64)
        return np.stack([(e // self._place[i]) % self.p for i in range(self.n)], axis=1)

    @functools.cached_property
    def _place_vec(self) -> np.ndarray:
        return np.array(self._place, dtype=np.int64)

    @functools.cached_property
    def add_table(self) -> np.ndarray:
        e = self.elements()
        if self.p == 2:
            return e[:, None] ^ e[None, :]
        d = self._digit_matrix
        return ((d[:, None, :] + d[None, :, :]) % self.p) @ self._place_vec

    @functools.cached_property
    def neg_table(self) -> np.ndarray:
        if self.p == 2:
            return self.elements()
        return ((-self._digit_matrix) % self.p) @ self._place_vec

    def vadd(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if self.p == 2:
            return x ^ y
        if self.q <= DENSE_MAX_Q:
            return self.add_table[x, y]
        d = self._digit_matrix
        return ((d[x] + d[y]) % self.p) @ self._place_vec

    def vneg(self, x) -> np.ndarray:
        return self.neg_table[np.asarray(x, dtype=np.int64)]

    def vsub(self, x, y) -> np.ndarray:
        return self.vadd(x, self.vneg(y))

    def vmul(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if not self.has_tables:
            f = np.vectorize(self.mul_poly, otypes=[np.int64])
            return f(x, y)
        lx, ly = self._log[x], self._log[y]
        out = self._exp[(lx % (self.q - 1)) + (ly % (self.q - 1))]
        return np.where((lx < 0) | (ly < 0), 0, out)

    def vpow(self, x, e: int) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        if e == 0:
            return np.ones_like(x)
        if not self.has_tables:
            return np.vectorize(lambda t: self.pow(int(t), e), otypes=[np.int64])(x)
        lx = self._log[x]
        out = self._exp[(lx * (e % (self.q - 1))) % (self.q - 1)]
        if e < 0 and np.any(lx < 0):
            raise DivisionByZero("negative power of 0")
        return np.where(lx < 0, 0, out)

    def vinv(self, x) -> np.ndarray:
        return self.vpow(x, -1)

    def frobenius_map(self, k: int) -> np.ndarray:
        """Array f with f[x] = x^(p^k)."""
        k %= self.n
        if k not in self._frob_cache:
            self._frob_cache[k] = self.vpow(self.elements(), self.p**k)
        return self._frob_cache[k]

    def vfrob(self, x, k: int) -> np.ndarray:
        return self.frobenius_map(k)[np.asarray(x, dtype=np.int64)]

    def rel_trace_map(self, m: int) -> np.ndarray:
        self._check_divisor(m)
        key = -m  # negative keys share the Frobenius cache
        if key not in self._frob_cache:
            t = np.zeros(self.q, dtype=np.int64)
            for i in range(self.n // m):
                t = self.vadd(t, self.frobenius_map(m * i))
            self._frob_cache[key] = t
        return self._frob_cache[key]

    def vrel_trace(self, x, m: int) -> np.ndarray:
        return self.rel_trace_map(m)[np.asarray(x, dtype=np.int64)]

    def vtrace(self, x) -> np.ndarray:
        return self.vrel_trace(x, 1)

    def subfield(self, m: int) -> np.ndarray:
        """Sorted indices of the elements of F_{p^m}."""
        self._check_divisor(m)
        e = self.elements()
        return e[self.frobenius_map(m) == e]

    @functools.cached_property
    def trace_product_table(self) -> np.ndarray:
        """T[u, x] = Tr(u*x) in [0, p) as uint8; q x q, so only for small q."""
        e = self.elements()
        tr = self.rel_trace_map(1)
        return tr[self.vmul(e[:, None], e[None, :])].astype(np.uint8)

    # -- polynomial evaluation -----------------------------------------------
    def eval_poly(self, coeffs, x: int) -> int:
        """Evaluate sum coeffs[i] x^i with field-element coefficients (Horner)."""
        r = 0
        for c in reversed(list(coeffs)):
            r = self.add(self.mul(r, x), int(c))
        return r


@functools.lru_cache(maxsize=64)
def _cached_field(p: int, n: int, modulus) -> FieldCtx:
    return FieldCtx(_check_spec(p, n, modulus))


def _rebuild_ctx(spec: FieldSpec, has_tables: bool) -> FieldCtx:
    if has_tables == (spec.p**spec.n <= TABLE_MAX_Q):
        return _cached_field(spec.p, spec.n, spec.modulus)
    return FieldCtx(spec, use_tables=has_tables)


def build_field(p: int | FieldSpec, n: int | None = None, modulus=None, use_tables: bool | None = None) -> FieldCtx:
    """Build (or fetch the cached) context for GF(p^n).

    ``p`` may also be a FieldSpec.  ``modulus`` is a coefficient sequence,
    constant term first; when omitted the least monic irreducible is used.
    """
    if isinstance(p, FieldSpec):
        p, n, modulus = p.p, p.n, p.modulus
    if n is None:
        raise DegreeMismatch("extension degree missing")
    spec = _check_spec(p, n, None if modulus is None else tuple(modulus))
    if use_tables is not None and use_tables != (spec.p**spec.n <= TABLE_MAX_Q):
        return FieldCtx(spec, use_tables=use_tables)
    return _cached_field(spec.p, spec.n, spec.modulus)


def embedding(src: FieldCtx, dst: FieldCtx) -> np.ndarray:
    """Field embedding src -> dst found by matching a root of src's modulus.

    Returns an index map of length src.q.  With equal degrees this is an
    isomorphism between two presentations of the same field.
    """
    if src.p != dst.p or dst.n % src.n:
        raise NonDivisorSubfieldDegree(f"F_{src.q} does not embed in F_{dst.q}")
    theta = None
    for t in range(dst.q):
        if dst.eval_poly(src.modulus, t) == 0:
            theta = t
            break
    powers = [dst.pow(theta, i) for i in range(src.n)]
    out = np.zeros(src.q, dtype=np.int64)
    for x in range(src.q):
        acc = 0
        for i, d in enumerate(src.digits(x)):
            if d:
                acc = dst.add(acc, dst.mul(dst.scalar(d), powers[i]))
        out[x] = acc
    return out
