"""Finite extension fields F_{p^n} with exhaustive perfectness checks.

This is the everything-enumerable end of the library: fields small
enough that "Frobenius is a bijection" can be verified element by
element rather than proved. Construction is deterministic — the modulus
is the first monic irreducible of degree n in coefficient enumeration
order (constant term fastest-varying), confirmed by Rabin's criterion —
so a given (p, n) always denotes the same concrete field.

Scalar element arithmetic here is deliberately independent of the batch
kernels in _accel: the sweeps are checked against it in tests, so each
implementation audits the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _accel
from .errors import BoundExceeded, DivisionByZero, NoEmbedding
from .primefield import is_prime

MAX_DEGREE = 16
MAX_ORDER = 2**20
MAX_EXHAUSTIVE = 2**16

# chunk size for sweeps over all field elements
_BLOCK = 1 << 15


# -- dense Z_p[t] helpers (coefficient lists, index = degree) -----------------


def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return _ptrim(out)


def _pmod(a: list[int], f: list[int], p: int) -> list[int]:
    r = _ptrim(list(a))
    df = len(f) - 1
    inv_lc = pow(f[-1], p - 2, p)
    while len(r) - 1 >= df and r:
        q = (r[-1] * inv_lc) % p
        shift = len(r) - 1 - df
        for i, c in enumerate(f):
            r[shift + i] = (r[shift + i] - q * c) % p
        _ptrim(r)
    return r


def _ppowmod(base: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    b = _pmod(base, f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, b, p), f, p)
        e >>= 1
        if e:
            b = _pmod(_pmul(b, b, p), f, p)
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _prime_factors(n: int) -> list[int]:
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


def _is_irreducible(f: list[int], p: int) -> bool:
    """Rabin's criterion for a monic f of degree n over Z_p."""
    n = len(f) - 1
    if n == 1:
        return True
    t = [0, 1]
    # t^(p^n) must be t itself mod f
    if _ppowmod(t, p**n, f, p) != t:
        return False
    for q in _prime_factors(n):
        h = _ptrim(
            [(_c - _d) % p for _c, _d in _zip_pad(_ppowmod(t, p ** (n // q), f, p), t)]
        )
        g = _pgcd(f, h, p)
        if len(g) - 1 != 0:
            return False
    return True


def _zip_pad(a: list[int], b: list[int]):
    m = max(len(a), len(b))
    for i in range(m):
        yield (a[i] if i < len(a) else 0), (b[i] if i < len(b) else 0)


# -- field and elements ---------------------------------------------------------


class FqField:
    """The finite field with p^n elements, as Z_p[t] mod a fixed modulus."""

    __slots__ = ("p", "n", "modulus", "order", "_red")

    def __init__(self, p: int, n: int, modulus: tuple[int, ...]):
        self.p = p
        self.n = n
        self.modulus = modulus
        self.order = p**n
        self._red = _accel.reduction_table(modulus, p)

    def elem(self, coeffs) -> FqElem:
        p = self.p
        cs = [c % p for c in coeffs]
        if len(cs) > self.n:
            cs = _pmod(cs, list(self.modulus), p)
        cs += [0] * (self.n - len(cs))
        return FqElem(self, tuple(cs[: self.n]))

    def zero(self) -> FqElem:
        return FqElem(self, (0,) * self.n)

    def one(self) -> FqElem:
        return self.elem([1])

    def const(self, c: int) -> FqElem:
        return self.elem([c])

    def gen(self) -> FqElem:
        """The residue of t (equals the constant -c_0 when n = 1)."""
        if self.n == 1:
            return self.const(-self.modulus[0])
        return self.elem([0, 1])

    def from_encoding(self, k: int) -> FqElem:
        if not 0 <= k < self.order:
            raise ValueError(f"encoding {k} out of range for a field of order {self.order}")
        cs = []
        for _ in range(self.n):
            cs.append(k % self.p)
            k //= self.p
        return FqElem(self, tuple(cs))

    def elements(self):
        """All field elements in encoding order."""
        for k in range(self.order):
            yield self.from_encoding(k)

    def __eq__(self, other):
        if not isinstance(other, FqField):
            return NotImplemented
        return self.p == other.p and self.n == other.n

    def __hash__(self):
        return hash((self.p, self.n))

    def __repr__(self):
        return f"FqField(p={self.p}, n={self.n}, modulus={self.modulus_str()})"

    def modulus_str(self) -> str:
        return _poly_str(self.modulus)

    # batch table of every element, one row per encoding
    def _all_rows(self) -> np.ndarray:
        return _accel.decode_range(0, self.order, self.n, self.p)


def _poly_str(coeffs) -> str:
    chunks = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if not c:
            continue
        if e == 0:
            chunks.append(str(c))
        else:
            var = "t" if e == 1 else f"t^{e}"
            chunks.append(var if c == 1 else f"{c}*{var}")
    return " + ".join(chunks) if chunks else "0"


class FqElem:
    """An element of F_{p^n}: a residue of degree < n, stored densely."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FqField, coeffs: tuple[int, ...]):
        self.field = field
        self.coeffs = coeffs

    def _check(self, other) -> FqElem:
        if isinstance(other, int):
            return self.field.const(other)
        if not isinstance(other, FqElem) or other.field != self.field:
            raise TypeError("operands belong to different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        p = self.field.p
        return FqElem(
            self.field,
            tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)),
        )

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FqElem(self.field, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + self._check(other)

    def __mul__(self, other):
        other = self._check(other)
        p = self.field.p
        prod = _pmul(list(self.coeffs), list(other.coeffs), p)
        prod = _pmod(prod, list(self.field.modulus), p)
        prod += [0] * (self.field.n - len(prod))
        return FqElem(self.field, tuple(prod))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        out = _ppowmod(list(self.coeffs), e, list(self.field.modulus), self.field.p)
        out += [0] * (self.field.n - len(out))
        return FqElem(self.field, tuple(out))

    def inv(self) -> FqElem:
        """Multiplicative inverse by the extended Euclidean algorithm."""
        if not any(self.coeffs):
            raise DivisionByZero("inverse of zero in a finite field")
        p = self.field.p
        a = _ptrim(list(self.coeffs))
        f = list(self.field.modulus)
        # invariants: r0 = s0*f + t0*a, r1 = s1*f + t1*a (s never needed)
        r0, r1 = f, a
        t0, t1 = [], [1]
        while r1:
            # one Euclid step: r0 = q*r1 + r2
            q, r2 = _pdivmod(r0, r1, p)
            r0, r1 = r1, r2
            t0, t1 = t1, _ptrim(
                [
                    (x - y) % p
                    for x, y in _zip_pad(t0, _pmul(q, t1, p))
                ]
            )
        # r0 is a nonzero constant gcd
        scale = pow(r0[0], p - 2, p)
        out = [(c * scale) % p for c in t0]
        out = _pmod(out, f, p)
        out += [0] * (self.field.n - len(out))
        return FqElem(self.field, tuple(out))

    def __truediv__(self, other):
        return self * self._check(other).inv()

    def __rtruediv__(self, other):
        return self._check(other) * self.inv()

    def frobenius(self) -> FqElem:
        return self**self.field.p

    def inv_frobenius(self) -> FqElem:
        """The unique p-th root: a^(p^(n-1)), since a^(p^n) = a."""
        return self ** (self.field.p ** (self.field.n - 1))

    def encode(self) -> int:
        k = 0
        for c in reversed(self.coeffs):
            k = k * self.field.p + c
        return k

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.field.const(other)
        if not isinstance(other, FqElem):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.p, self.field.n, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __str__(self):
        return _poly_str(self.coeffs)

    def __repr__(self):
        return f"FqElem(F_{self.field.p}^{self.field.n}, {self})"


def _pdivmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    r = list(a)
    db = len(b) - 1
    inv_lc = pow(b[-1], p - 2, p)
    q = [0] * max(len(a) - db, 1)
    while len(r) - 1 >= db and r:
        c = (r[-1] * inv_lc) % p
        shift = len(r) - 1 - db
        q[shift] = c
        for i, cb in enumerate(b):
            r[shift + i] = (r[shift + i] - c * cb) % p
        _ptrim(r)
    return _ptrim(q), r


# -- construction -----------------------------------------------------------------


@lru_cache(maxsize=None)
def make_field(p: int, n: int) -> FqField:
    """F_{p^n} with the canonical modulus; bounds n <= 16 and p^n <= 2^20."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"extension degree must be a positive integer, got {n!r}")
    if n > MAX_DEGREE or p**n > MAX_ORDER:
        raise BoundExceeded(
            f"field F_{p}^{n} exceeds the supported bounds (n <= {MAX_DEGREE}, "
            f"p^n <= {MAX_ORDER})"
        )
    for k in range(p**n):
        coeffs = []
        kk = k
        for _ in range(n):
            coeffs.append(kk % p)
            kk //= p
        coeffs.append(1)
        if _is_irreducible(coeffs, p):
            return FqField(p, n, tuple(coeffs))
    raise RuntimeError(f"no irreducible polynomial of degree {n} over Z_{p}")


# -- exhaustive perfectness check ---------------------------------------------------


@dataclass(frozen=True)
class PerfectReport:
    """Outcome of the exhaustive Frobenius bijectivity check."""

    p: int
    n: int
    size: int
    passed: bool
    order: int | None
    counterexample: tuple[int, int] | None

    def summary(self) -> str:
        if self.passed:
            return (
                f"pass: Frobenius bijective on {self.size} elements, "
                f"order {self.order}"
            )
        a, b = self.counterexample
        return (
            f"fail: Frobenius not injective on {self.size} elements "
            f"(encodings {a} and {b} collide)"
        )

    def __str__(self):
        return self.summary()


def check_perfect(field: FqField) -> PerfectReport:
    """Verify by enumeration that x -> x^p permutes the whole field, and
    return the order of that permutation (the degree n, when all is well)."""
    if field.order > MAX_EXHAUSTIVE:
        raise BoundExceeded(
            f"exhaustive check limited to order <= {MAX_EXHAUSTIVE}, "
            f"field has {field.order}"
        )
    p = field.p
    table = field._all_rows()
    frob = _accel.batch_pow(table, p, field._red, p)
    enc = _accel.encode_rows(frob, p)
    uniq, first = np.unique(enc, return_index=True)
    if uniq.size != field.order:
        # locate one collision pair for the report
        seen: dict[int, int] = {}
        pair = (0, 0)
        for i, v in enumerate(enc.tolist()):
            if v in seen:
                pair = (seen[v], i)
                break
            seen[v] = i
        return PerfectReport(p, field.n, field.order, False, None, pair)
    # order of the permutation: iterate until every element returns home
    k = 1
    cur = frob
    while not np.array_equal(cur, table):
        cur = _accel.batch_pow(cur, p, field._red, p)
        k += 1
        if k > field.n:
            raise RuntimeError("Frobenius order exceeded the extension degree")
    return PerfectReport(p, field.n, field.order, True, k, None)


# -- embeddings ---------------------------------------------------------------------


def find_embedding_root(source: FqField, target: FqField) -> FqElem:
    """First root of the source modulus in the target, in encoding order."""
    p = target.p
    mod = list(source.modulus)
    for start in range(0, target.order, _BLOCK):
        stop = min(start + _BLOCK, target.order)
        X = _accel.decode_range(start, stop, target.n, p)
        val = np.zeros_like(X)
        val[:, 0] = mod[-1] % p
        for c in reversed(mod[:-1]):
            val = _accel.batch_mulmod(val, X, target._red, p)
            val[:, 0] = (val[:, 0] + c) % p
        hits = np.flatnonzero(~val.any(axis=1))
        if hits.size:
            return target.from_encoding(start + int(hits[0]))
    raise RuntimeError("no root of the source modulus in the target field")


@lru_cache(maxsize=None)
def _embedding_root_cached(p: int, m: int, n: int) -> int:
    root = find_embedding_root(make_field(p, m), make_field(p, n))
    return root.encode()


def embed(a: FqElem, target: FqField) -> FqElem:
    """Canonical embedding F_{p^m} -> F_{p^n} for m dividing n: send the
    source generator to the first root of the source modulus."""
    source = a.field
    if source.p != target.p:
        raise NoEmbedding(
            f"no embedding between characteristics {source.p} and {target.p}"
        )
    if target.n % source.n != 0:
        raise NoEmbedding(
            f"degree {source.n} does not divide {target.n}; no embedding exists"
        )
    if source.n == target.n:
        return target.elem(list(a.coeffs))
    if source.n == 1:
        return target.const(a.coeffs[0])
    root_enc = _embedding_root_cached(source.p, source.n, target.n)
    r = target.from_encoding(root_enc)
    # Horner in the image of the generator
    acc = target.zero()
    for c in reversed(a.coeffs):
        acc = acc * r + c
    return acc
