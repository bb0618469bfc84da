"""Sparse multivariate polynomial arithmetic over Z_p.

Polynomials are finite maps from exponent vectors to nonzero residues.
The monomial order is graded lexicographic everywhere: total degree
first, then lexicographic with the lowest variable index most
significant. "Monic" and canonical printing both refer to this order.

The two operations the perfect-closure construction leans on are
`frobenius_substitute` (multiply every exponent by p, which equals
raising the polynomial to the p-th power over Z_p) and its exact inverse
`pth_root` (divide every exponent by p; coefficients are untouched
because c^p = c in Z_p).

GCD uses content/primitive-part splitting with a primitive pseudo-
remainder sequence in the highest shared variable; exact division
double-checks every gcd before it is returned. No modular or heuristic
gcd machinery: exact and simple is adequate at desk scale.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .errors import ContextMismatch, DivisionByZero, NotAPthPower, NotDivisible
from .primefield import PrimeField

Mono = tuple[int, ...]


def grlex_key(mono: Mono):
    """Sort key realizing graded lexicographic order (ascending)."""
    return (sum(mono), mono)


class MultiPoly:
    """A sparse multivariate polynomial over a fixed prime field.

    Invariants: every stored coefficient is a nonzero residue in [1, p),
    every exponent vector has length `nvars` with non-negative entries.
    The zero polynomial is the empty term map. Values are immutable;
    all operations allocate fresh results.
    """

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: PrimeField, nvars: int, terms: Mapping[Mono, int]):
        p = field.p
        clean: dict[Mono, int] = {}
        for mono, coeff in terms.items():
            mono = tuple(mono)
            if len(mono) != nvars:
                raise ValueError(f"exponent vector {mono} has length != {nvars}")
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in {mono}")
            c = coeff % p
            if c:
                clean[mono] = c
        self.field = field
        self.nvars = nvars
        self.terms = clean

    @classmethod
    def _raw(cls, field: PrimeField, nvars: int, terms: dict[Mono, int]) -> MultiPoly:
        # trusted constructor: terms already normalized
        self = object.__new__(cls)
        self.field = field
        self.nvars = nvars
        self.terms = terms
        return self

    @classmethod
    def zero(cls, field: PrimeField, nvars: int) -> MultiPoly:
        return cls._raw(field, nvars, {})

    @classmethod
    def const(cls, field: PrimeField, nvars: int, c: int) -> MultiPoly:
        c %= field.p
        if not c:
            return cls.zero(field, nvars)
        return cls._raw(field, nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, field: PrimeField, nvars: int, i: int, power: int = 1) -> MultiPoly:
        if not 0 <= i < nvars:
            raise ValueError(f"variable index {i} out of range for {nvars} variables")
        mono = tuple(power if j == i else 0 for j in range(nvars))
        return cls._raw(field, nvars, {mono: 1})

    # -- queries -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_value(self) -> int:
        """The value of a constant polynomial (0 for the zero polynomial)."""
        if not self.is_constant:
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()), 0)

    def total_degree(self) -> int | None:
        """Total degree, or None for the zero polynomial (the -inf sentinel)."""
        if not self.terms:
            return None
        return max(sum(m) for m in self.terms)

    def degree_in(self, i: int) -> int:
        """Degree in variable i; 0 for the zero polynomial."""
        if not self.terms:
            return 0
        return max(m[i] for m in self.terms)

    def leading_monomial(self) -> Mono:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=grlex_key)

    def leading_coeff(self) -> int:
        return self.terms[self.leading_monomial()]

    def support_vars(self) -> frozenset[int]:
        """Indices of variables that actually occur."""
        out = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    out.add(i)
        return frozenset(out)

    # -- arithmetic ----------------------------------------------------

    def _pad(self, nvars: int) -> MultiPoly:
        if nvars == self.nvars:
            return self
        if nvars < self.nvars:
            raise ValueError("cannot shrink variable count")
        pad = (0,) * (nvars - self.nvars)
        return MultiPoly._raw(
            self.field, nvars, {m + pad: c for m, c in self.terms.items()}
        )

    def _reconcile(self, other) -> tuple[MultiPoly, MultiPoly]:
        if isinstance(other, int):
            other = MultiPoly.const(self.field, self.nvars, other)
        elif not isinstance(other, MultiPoly):
            raise TypeError(f"cannot combine MultiPoly with {type(other).__name__}")
        if self.field != other.field:
            raise ContextMismatch(
                f"prime contexts differ: p={self.field.p} vs p={other.field.p}"
            )
        n = max(self.nvars, other.nvars)
        return self._pad(n), other._pad(n)

    def __add__(self, other):
        a, b = self._reconcile(other)
        p = a.field.p
        terms = dict(a.terms)
        for m, c in b.terms.items():
            s = (terms.get(m, 0) + c) % p
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return MultiPoly._raw(a.field, a.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return MultiPoly._raw(
            self.field, self.nvars, {m: p - c for m, c in self.terms.items()}
        )

    def __sub__(self, other):
        a, b = self._reconcile(other)
        return a + (-b)

    def __rsub__(self, other):
        a, b = self._reconcile(other)
        return b + (-a)

    def __mul__(self, other):
        a, b = self._reconcile(other)
        p = a.field.p
        terms: dict[Mono, int] = {}
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                m = tuple(e1 + e2 for e1, e2 in zip(m1, m2))
                s = (terms.get(m, 0) + c1 * c2) % p
                if s:
                    terms[m] = s
                else:
                    terms.pop(m, None)
        return MultiPoly._raw(a.field, a.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.const(self.field, self.nvars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def mul_scalar(self, c: int) -> MultiPoly:
        p = self.field.p
        c %= p
        if not c:
            return MultiPoly.zero(self.field, self.nvars)
        if c == 1:
            return self
        return MultiPoly._raw(
            self.field, self.nvars, {m: (c * v) % p for m, v in self.terms.items()}
        )

    def monic(self) -> MultiPoly:
        """Scale so the graded-lex leading coefficient is 1."""
        if self.is_zero:
            raise ValueError("zero polynomial cannot be made monic")
        lc = self.leading_coeff()
        if lc == 1:
            return self
        return self.mul_scalar(self.field.inv(lc))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.is_constant and self.constant_value() == other % self.field.p
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if self.field != other.field:
            return False
        n = max(self.nvars, other.nvars)
        return self._pad(n).terms == other._pad(n).terms

    def __hash__(self):
        items = frozenset(
            (_strip_trailing_zeros(m), c) for m, c in self.terms.items()
        )
        return hash((self.field.p, items))

    def __bool__(self):
        return bool(self.terms)

    # -- characteristic-p structure -------------------------------------

    def frobenius_substitute(self) -> MultiPoly:
        """g(y1,...,yd) -> g(y1^p,...,yd^p), i.e. multiply every exponent by p.

        Over Z_p this equals g**p.
        """
        p = self.field.p
        return MultiPoly._raw(
            self.field,
            self.nvars,
            {tuple(e * p for e in m): c for m, c in self.terms.items()},
        )

    def pth_root(self) -> MultiPoly:
        """The unique u with u**p == self; requires every exponent divisible by p."""
        p = self.field.p
        terms = {}
        for m, c in self.terms.items():
            if any(e % p for e in m):
                raise NotAPthPower(
                    f"exponent vector {m} is not divisible by p={p}"
                )
            terms[tuple(e // p for e in m)] = c
        return MultiPoly._raw(self.field, self.nvars, terms)

    def all_exponents_divisible(self) -> bool:
        p = self.field.p
        return all(e % p == 0 for m in self.terms for e in m)

    def derivative(self, i: int) -> MultiPoly:
        """Formal partial derivative; exponents divisible by p kill their terms."""
        if not 0 <= i < self.nvars:
            raise ValueError(f"variable index {i} out of range")
        p = self.field.p
        terms = {}
        for m, c in self.terms.items():
            e = m[i]
            nc = (c * e) % p
            if e and nc:
                nm = m[:i] + (e - 1,) + m[i + 1 :]
                terms[nm] = nc
        return MultiPoly._raw(self.field, self.nvars, terms)

    # -- evaluation ------------------------------------------------------

    def eval(self, point: Sequence, field=None):
        """Evaluate at a point with coordinates in one finite field F_{p^m}.

        The coordinates must support ring arithmetic and integer scaling
        (fqtower.FqElem does). `field` is only needed to type the result
        when the polynomial uses no variables.
        """
        if field is None:
            if not point:
                raise ValueError("field required to evaluate with an empty point")
            field = point[0].field
        if len(point) < self.nvars:
            raise ValueError(
                f"need {self.nvars} coordinates, got {len(point)}"
            )
        acc = field.zero()
        for mono, c in self.terms.items():
            term = field.one()
            for i, e in enumerate(mono):
                if e:
                    term = term * point[i] ** e
            acc = acc + c * term
        return acc

    # -- division --------------------------------------------------------

    def divexact(self, other: MultiPoly) -> MultiPoly:
        """Exact quotient self/other; raises NotDivisible when it isn't."""
        a, b = self._reconcile(other)
        if b.is_zero:
            raise DivisionByZero("division by the zero polynomial")
        if a.is_zero:
            return MultiPoly.zero(a.field, a.nvars)
        if b.is_constant:
            return a.mul_scalar(a.field.inv(b.constant_value()))
        p = a.field.p
        lm_b = b.leading_monomial()
        inv_lcb = a.field.inv(b.terms[lm_b])
        rem = dict(a.terms)
        quot: dict[Mono, int] = {}
        while rem:
            lm_r = max(rem, key=grlex_key)
            qm = tuple(er - eb for er, eb in zip(lm_r, lm_b))
            if any(e < 0 for e in qm):
                raise NotDivisible("leading monomial not divisible")
            qc = (rem[lm_r] * inv_lcb) % p
            quot[qm] = qc
            for m, c in b.terms.items():
                mm = tuple(e1 + e2 for e1, e2 in zip(qm, m))
                s = (rem.get(mm, 0) - qc * c) % p
                if s:
                    rem[mm] = s
                else:
                    rem.pop(mm, None)
        return MultiPoly._raw(a.field, a.nvars, quot)

    def divides(self, other: MultiPoly) -> bool:
        try:
            other.divexact(self)
            return True
        except (NotDivisible, DivisionByZero):
            return False

    # -- printing ----------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Mono, int]]:
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def format(self, names: Sequence[str] | None = None) -> str:
        if self.is_zero:
            return "0"
        if names is None:
            names = [f"x{i + 1}" for i in range(self.nvars)]
        chunks = []
        for mono, coeff in self.sorted_terms():
            factors = []
            if coeff != 1 or not any(mono):
                factors.append(str(coeff))
            for i, e in enumerate(mono):
                if e == 1:
                    factors.append(names[i])
                elif e > 1:
                    factors.append(f"{names[i]}^{e}")
            chunks.append("*".join(factors))
        return " + ".join(chunks)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"MultiPoly(p={self.field.p}, {self})"


def _strip_trailing_zeros(mono: Mono) -> Mono:
    n = len(mono)
    while n and mono[n - 1] == 0:
        n -= 1
    return mono[:n]


# -- gcd ------------------------------------------------------------------


def poly_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Monic greatest common divisor under graded-lex.

    Recursive content/primitive-part splitting in the highest variable
    common to both supports, with a primitive PRS for the univariate
    step. The result is verified by exact division before returning.
    """
    a, b = a._reconcile(b)
    if a.is_zero and b.is_zero:
        raise ValueError("gcd(0, 0) is undefined")
    if a.is_zero:
        return b.monic()
    if b.is_zero:
        return a.monic()
    g = _gcd_nonzero(a, b)
    # exact-division post-check; failure here is an internal error
    a.divexact(g)
    b.divexact(g)
    return g


def _gcd_nonzero(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    field, nvars = a.field, a.nvars
    if a.is_constant or b.is_constant:
        return MultiPoly.const(field, nvars, 1)
    sup_a, sup_b = a.support_vars(), b.support_vars()
    common = sup_a & sup_b
    if not common:
        return MultiPoly.const(field, nvars, 1)
    union = sup_a | sup_b
    if len(union) == 1:
        (k,) = union
        return _univar_gcd(a, b, k)
    k = max(common)
    ca, pa = _content_pp(a, k)
    cb, pb = _content_pp(b, k)
    c = poly_gcd(ca, cb)
    g = _prs_gcd(pa, pb, k)
    return (c * g).monic()


def _univar_gcd(a: MultiPoly, b: MultiPoly, k: int) -> MultiPoly:
    """Euclid on dense coefficient lists; both inputs univariate in x_k."""
    field, nvars = a.field, a.nvars
    p = field.p
    fa = _dense_coeffs(a, k)
    fb = _dense_coeffs(b, k)
    while fb:
        fa, fb = fb, _dense_mod(fa, fb, p)
    inv = field.inv(fa[-1])
    terms = {}
    for e, c in enumerate(fa):
        if c:
            mono = tuple(e if j == k else 0 for j in range(nvars))
            terms[mono] = (c * inv) % p
    return MultiPoly._raw(field, nvars, terms)


def _dense_coeffs(f: MultiPoly, k: int) -> list[int]:
    out = [0] * (f.degree_in(k) + 1)
    for m, c in f.terms.items():
        out[m[k]] = c
    return out


def _dense_mod(fa: list[int], fb: list[int], p: int) -> list[int]:
    r = list(fa)
    db = len(fb) - 1
    inv_lcb = pow(fb[-1], p - 2, p)
    while len(r) - 1 >= db and r:
        q = (r[-1] * inv_lcb) % p
        shift = len(r) - 1 - db
        for i, c in enumerate(fb):
            r[shift + i] = (r[shift + i] - q * c) % p
        while r and r[-1] == 0:
            r.pop()
    return r


def _to_univar(f: MultiPoly, k: int) -> dict[int, MultiPoly]:
    """View f as univariate in x_k with coefficients free of x_k."""
    coeffs: dict[int, dict[Mono, int]] = {}
    for m, c in f.terms.items():
        e = m[k]
        cleared = m[:k] + (0,) + m[k + 1 :]
        coeffs.setdefault(e, {})[cleared] = c
    return {
        e: MultiPoly._raw(f.field, f.nvars, terms) for e, terms in coeffs.items()
    }


def _from_univar(coeffs: dict[int, MultiPoly], k: int, field, nvars) -> MultiPoly:
    terms: dict[Mono, int] = {}
    for e, poly in coeffs.items():
        for m, c in poly.terms.items():
            terms[m[:k] + (e,) + m[k + 1 :]] = c
    return MultiPoly._raw(field, nvars, terms)


def _content_pp(f: MultiPoly, k: int) -> tuple[MultiPoly, MultiPoly]:
    """Content (gcd of x_k-coefficients, monic) and primitive part."""
    coeffs = list(_to_univar(f, k).values())
    content = coeffs[0]
    for c in coeffs[1:]:
        if content.is_constant:
            break
        content = poly_gcd(content, c)
    if content.is_constant:
        one = MultiPoly.const(f.field, f.nvars, 1)
        # primitive up to the unit we fold into the part itself
        return one, f
    content = content.monic()
    return content, f.divexact(content)


def _prs_gcd(pa: MultiPoly, pb: MultiPoly, k: int) -> MultiPoly:
    """Primitive PRS gcd of two x_k-primitive polynomials, both of
    positive degree in x_k."""
    F = _to_univar(pa, k)
    G = _to_univar(pb, k)
    if max(F) < max(G):
        F, G = G, F
    field, nvars = pa.field, pa.nvars
    while True:
        R = _prem(F, G)
        if not R:
            return _from_univar(G, k, field, nvars)
        if max(R) == 0:
            return MultiPoly.const(field, nvars, 1)
        r_poly = _from_univar(R, k, field, nvars)
        _, r_pp = _content_pp(r_poly, k)
        F, G = G, _to_univar(r_pp, k)


def _prem(F: dict[int, MultiPoly], G: dict[int, MultiPoly]) -> dict[int, MultiPoly]:
    """Pseudo-remainder of F by G (as univariate views), up to a factor
    of lc(G)^j, which the primitive PRS strips anyway."""
    dg = max(G)
    lcg = G[dg]
    R = dict(F)
    while R:
        dr = max(R)
        if dr < dg:
            break
        lcr = R.pop(dr)
        shift = dr - dg
        newR: dict[int, MultiPoly] = {e: c * lcg for e, c in R.items()}
        for e, c in G.items():
            if e == dg:
                continue
            ee = e + shift
            t = c * lcr
            prev = newR.get(ee)
            newR[ee] = (prev - t) if prev is not None else -t
        R = {e: c for e, c in newR.items() if not c.is_zero}
    return R
