"""Finite fields GF(p^m), towers F_q ⊂ F_{q^n}, and closed points of the projective line.

Elements of GF(p^m) are encoded as integers ("codes"): the code of
c_0 + c_1 X + ... + c_{m-1} X^{m-1} is sum(c_i p^i), where X is a root of
the field modulus.  The modulus of GF(p^m) is the least monic irreducible
polynomial of degree m, ordered by the same code (c_{m-1} most significant).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

# Fields up to this size get full exp/log tables.
TABLE_LIMIT = 1 << 23
# Closed-point enumeration is exhaustive; refuse anything bigger than this.
SIEVE_LIMIT = 10**6


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


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


def mobius(n: int) -> int:
    k = 0
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            k += 1
        d += 1
    if n > 1:
        k += 1
    return -1 if k % 2 else 1


def count_irreducibles(q: int, d: int) -> int:
    """Number of monic irreducibles of degree d over F_q (necklace formula)."""
    total = sum(mobius(d // e) * q**e for e in range(1, d + 1) if d % e == 0)
    return total // d


# ---------------------------------------------------------------------------
# dense polynomials over F_p, coefficient lists low -> high


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: Sequence[int], p: int) -> list[int]:
    """a mod m over F_p, m monic."""
    a = [x % p for x in a]
    dm = len(m) - 1
    for k in range(len(a) - 1, dm - 1, -1):
        c = a[k]
        if c:
            off = k - dm
            for i in range(dm + 1):
                a[off + i] = (a[off + i] - c * m[i]) % p
    return _trim(a[:dm] if len(a) > dm else a)


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([x % p for x in out])


def _psub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        inv = pow(b[-1], -1, p)
        bm = [x * inv % p for x in b]
        a, b = b, _pmod(a, bm, p)
    return a


def _ppowmod(base: list[int], e: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        e >>= 1
        if e:
            base = _pmod(_pmul(base, base, p), m, p)
    return result


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p (coefficients low -> high)."""
    poly = [c % p for c in poly]
    n = len(poly) - 1
    if n < 1 or poly[-1] != 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    if _psub(_ppowmod(x, p**n, poly, p), x, p):
        return False
    for r in prime_factors(n):
        h = _psub(_ppowmod(x, p ** (n // r), poly, p), x, p)
        g = _pgcd(list(poly), h, p)
        if len(g) > 1:
            return False
    return True


@lru_cache(maxsize=None)
def least_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Least monic irreducible of degree m over F_p, as coefficients low -> high."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m < 1:
        raise ValueError("degree must be >= 1")
    for code in range(p**m):
        poly = [(code // p**i) % p for i in range(m)] + [1]
        if is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# ---------------------------------------------------------------------------
# the field


class FiniteField:
    """GF(p^m) with elements encoded as integer codes."""

    def __init__(self, p: int, degree: int, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if degree < 1:
            raise ValueError("degree must be >= 1")
        if modulus is None:
            modulus = least_irreducible(p, degree)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != degree + 1 or not is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is not a monic irreducible of degree {degree}")
        self.p = p
        self.degree = degree
        self.modulus = modulus
        self.size = p**degree
        self.order = self.size - 1
        self._pw = [p**i for i in range(degree)]

    def __repr__(self) -> str:
        return f"FiniteField({self.p}^{self.degree})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteField) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.modulus))

    # -- codes and digit vectors
    def digits(self, x: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.degree):
            x, r = divmod(x, p)
            out.append(r)
        return out

    def from_digits(self, ds: Iterable[int]) -> int:
        return sum((int(d) % self.p) * w for d, w in zip(ds, self._pw))

    def _check(self, x: int) -> int:
        if not 0 <= x < self.size:
            raise ValueError(f"{x} is not an element code of {self}")
        return x

    # -- scalar arithmetic
    def add(self, x: int, y: int) -> int:
        if self.degree == 1:
            return (x + y) % self.p
        return self.from_digits(a + b for a, b in zip(self.digits(x), self.digits(y)))

    def sub(self, x: int, y: int) -> int:
        if self.degree == 1:
            return (x - y) % self.p
        return self.from_digits(a - b for a, b in zip(self.digits(x), self.digits(y)))

    def neg(self, x: int) -> int:
        return self.sub(0, x)

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        if self.degree == 1:
            return x * y % self.p
        if self.size <= 1 << 16:
            lg, ex = self._small_tables
            return ex[(lg[x] + lg[y]) % self.order]
        prod = _pmul(self.digits(x), self.digits(y), self.p)
        return self.from_digits(_pmod(prod, self.modulus, self.p))

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            x, e = self.inv(x), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, x)
            e >>= 1
            if e:
                x = self.mul(x, x)
        return result

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of 0 in a finite field")
        return self.pow(x, self.order - 1)

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def frobenius(self, x: int, k: int = 1) -> int:
        """x^(p^k)."""
        return self.pow(x, self.p ** (k % self.degree))

    def trace(self, x: int) -> int:
        """Absolute trace to F_p, as an integer in [0, p)."""
        return int(np.dot(self.digits(x), self.trace_vector)) % self.p

    def multiplicative_order(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("0 has no multiplicative order")
        n = self.order
        for r in prime_factors(self.order):
            while n % r == 0 and self.pow(x, n // r) == 1:
                n //= r
        return n

    @cached_property
    def primitive_element(self) -> int:
        for g in range(1, self.size):
            if self.multiplicative_order(g) == self.order:
                return g
        raise AssertionError("no primitive element")  # pragma: no cover

    @cached_property
    def _small_tables(self) -> tuple[list[int], list[int]]:
        # pure-python tables for the scalar path; built by polynomial arithmetic
        ex = [0] * self.order
        lg = [0] * self.size
        # find a generator by brute force on polynomial multiplication
        g = None
        for cand in range(1, self.size):
            y, k = cand, 1
            while y != 1:
                y = self.from_digits(_pmod(_pmul(self.digits(y), self.digits(cand), self.p), self.modulus, self.p))
                k += 1
            if k == self.order:
                g = cand
                break
        y = 1
        for k in range(self.order):
            ex[k] = y
            lg[y] = k
            y = self.from_digits(_pmod(_pmul(self.digits(y), self.digits(g), self.p), self.modulus, self.p))
        return lg, ex

    # -- linear algebra over F_p
    def mul_matrix(self, x: int) -> np.ndarray:
        """Matrix of multiplication by x acting on column digit vectors."""
        m = self.degree
        cols = []
        for j in range(m):
            basis = [0] * m
            basis[j] = 1
            prod = _pmod(_pmul(self.digits(x), basis, self.p), self.modulus, self.p)
            cols.append(prod + [0] * (m - len(prod)))
        return np.array(cols, dtype=np.int64).T

    @cached_property
    def trace_vector(self) -> np.ndarray:
        """Tr(X^j) for j < m; the absolute trace is digits . trace_vector mod p."""
        out = []
        for j in range(self.degree):
            xj = self.from_digits([1 if i == j else 0 for i in range(self.degree)])
            t, y = 0, xj
            for _ in range(self.degree):
                t = self.add(t, y)
                y = self.pow(y, self.p)
            out.append(t)  # lies in F_p, so the code is the value
        return np.array(out, dtype=np.int64)

    # -- tables for vectorised work
    @cached_property
    def exp_table(self) -> np.ndarray:
        """exp_table[k] = code of g^k for the primitive element g, k < q-1."""
        if self.size > TABLE_LIMIT:
            raise MemoryError(f"{self} is too large for a full table")
        return self.power_codes(self.primitive_element, 0, self.order)

    @cached_property
    def log_table(self) -> np.ndarray:
        lg = np.full(self.size, -1, dtype=np.int64)
        lg[self.exp_table] = np.arange(self.order, dtype=np.int64)
        return lg

    def power_blocks(self, g: int, block: int | None = None) -> Iterator[tuple[int, np.ndarray]]:
        """Yield (start, digit rows of g^start .. g^(start+len-1)) covering k < q-1.

        The first block is built sequentially; later blocks are the previous
        one multiplied by g^block, a single small matrix product mod p.
        """
        n, m, p = self.order, self.degree, self.p
        if block is None:
            block = max(1, math.isqrt(n))
        step = self.mul_matrix(g).T
        cur = np.zeros((block, m), dtype=np.int64)
        v = np.array(self.digits(1), dtype=np.int64)
        for k in range(block):
            cur[k] = v
            v = v @ step % p
        jump = self.mul_matrix(self.pow(g, block)).T
        for start in range(0, n, block):
            cnt = min(block, n - start)
            yield start, cur[:cnt]
            cur = cur @ jump % p

    def power_codes(self, g: int, start: int, stop: int) -> np.ndarray:
        weights = np.array(self._pw, dtype=np.int64)
        out = np.empty(stop - start, dtype=np.int64)
        for s, rows in self.power_blocks(g):
            lo, hi = max(s, start), min(s + len(rows), stop)
            if lo < hi:
                out[lo - start:hi - start] = rows[lo - s:hi - s] @ weights
        return out

    def digits_array(self, codes: np.ndarray) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        return (codes[:, None] // np.array(self._pw, dtype=np.int64)[None, :]) % self.p

    def codes_array(self, digs: np.ndarray) -> np.ndarray:
        return (np.asarray(digs, dtype=np.int64) % self.p) @ np.array(self._pw, dtype=np.int64)

    def vadd(self, x: np.ndarray, y: np.ndarray | int) -> np.ndarray:
        y = np.broadcast_to(np.asarray(y, dtype=np.int64), np.shape(x))
        return self.codes_array(self.digits_array(x) + self.digits_array(y))

    def vsub(self, x: np.ndarray, y: np.ndarray | int) -> np.ndarray:
        y = np.broadcast_to(np.asarray(y, dtype=np.int64), np.shape(x))
        return self.codes_array(self.digits_array(x) - self.digits_array(y))

    def vmul(self, x: np.ndarray, y: np.ndarray | int) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        y = np.broadcast_to(np.asarray(y, dtype=np.int64), x.shape)
        lg, ex = self.log_table, self.exp_table
        zero = (x == 0) | (y == 0)
        out = ex[(lg[x] + lg[y]) % self.order]
        return np.where(zero, 0, out)

    def vtrace(self, x: np.ndarray) -> np.ndarray:
        return self.digits_array(x) @ self.trace_vector % self.p

    # -- element objects
    def element(self, code: int) -> "FqElem":
        return FqElem(self, self._check(int(code)))

    def elements(self) -> Iterator["FqElem"]:
        for c in range(self.size):
            yield FqElem(self, c)

    def __call__(self, code: int) -> "FqElem":
        return self.element(code)


@lru_cache(maxsize=None)
def finite_field(p: int, degree: int) -> FiniteField:
    """The canonical GF(p^degree) (least irreducible modulus), cached."""
    return FiniteField(p, degree)


@dataclass(frozen=True)
class FqElem:
    """An element of a finite field with operator overloads."""

    field: FiniteField
    code: int

    def _other(self, y: "FqElem | int") -> int:
        if isinstance(y, FqElem):
            if y.field != self.field:
                raise ValueError("elements of different fields")
            return y.code
        return int(y) % self.field.p  # integers map through the prime field

    def __add__(self, y):
        return FqElem(self.field, self.field.add(self.code, self._other(y)))

    __radd__ = __add__

    def __sub__(self, y):
        return FqElem(self.field, self.field.sub(self.code, self._other(y)))

    def __rsub__(self, y):
        return FqElem(self.field, self.field.sub(self._other(y), self.code))

    def __mul__(self, y):
        return FqElem(self.field, self.field.mul(self.code, self._other(y)))

    __rmul__ = __mul__

    def __truediv__(self, y):
        return FqElem(self.field, self.field.div(self.code, self._other(y)))

    def __neg__(self):
        return FqElem(self.field, self.field.neg(self.code))

    def __pow__(self, e: int):
        return FqElem(self.field, self.field.pow(self.code, e))

    def __bool__(self) -> bool:
        return self.code != 0

    def frobenius(self, k: int = 1) -> "FqElem":
        return FqElem(self.field, self.field.frobenius(self.code, k))

    def __repr__(self) -> str:
        return f"FqElem({self.code} in GF({self.field.p}^{self.field.degree}))"


# ---------------------------------------------------------------------------
# towers F_q ⊂ F_{q^n}


class Tower:
    """F_q = GF(p^f) embedded in F_{q^n} = GF(p^(fn)) by a fixed root of the F_q modulus."""

    def __init__(self, p: int, f: int, n: int):
        if n < 1:
            raise ValueError("extension degree must be >= 1")
        self.p, self.f, self.n = p, f, n
        self.base = finite_field(p, f)
        self.top = finite_field(p, f * n)
        self.q = p**f
        if n == 1 or f == 1:
            self.root = p if (n == 1 and f > 1) else 0
        else:
            self.root = self._find_root()

    def _find_root(self) -> int:
        """Smallest-code root of the F_q modulus; all roots lie in the order-(q-1) subgroup."""
        top, mod = self.top, self.base.modulus
        gamma = top.pow(top.primitive_element, top.order // (self.q - 1))
        roots, y = [], 1
        for _ in range(self.q - 1):
            acc = 0
            for c in reversed(mod):
                acc = top.add(top.mul(acc, y), c)
            if acc == 0:
                roots.append(y)
            y = top.mul(y, gamma)
        if not roots:
            raise AssertionError("modulus has no root in the extension")  # pragma: no cover
        return min(roots)

    def embed(self, b: int) -> int:
        if self.n == 1:
            return b
        if self.f == 1:
            return b
        top, acc, r = self.top, 0, 1
        for d in self.base.digits(b):
            if d:
                acc = top.add(acc, top.mul(d, r))
            r = top.mul(r, self.root)
        return acc

    @cached_property
    def _restrict_map(self) -> dict[int, int]:
        return {self.embed(b): b for b in range(self.base.size)}

    def restrict(self, y: int) -> int:
        try:
            return self._restrict_map[y]
        except KeyError:
            raise ValueError(f"{y} does not lie in the base field") from None

    def trace(self, y: int) -> int:
        top, acc = self.top, 0
        for _ in range(self.n):
            acc = top.add(acc, y)
            y = top.pow(y, self.q)
        return self.restrict(acc)

    def norm(self, y: int) -> int:
        if y == 0:
            return 0
        return self.restrict(self.top.pow(y, (self.q**self.n - 1) // (self.q - 1)))

    @cached_property
    def norm_generator(self) -> int:
        """Nm(g) for the primitive element g of the top field; a generator of F_q^*."""
        return self.norm(self.top.primitive_element)


@lru_cache(maxsize=None)
def tower(p: int, f: int, n: int) -> Tower:
    return Tower(p, f, n)


def trace_norm(x: FqElem, target: FiniteField, kind: str = "trace") -> FqElem:
    """Trace or norm from the field of x down to the subfield `target`."""
    src = x.field
    if target.p != src.p or src.degree % target.degree:
        raise ValueError(f"{target} is not a subfield of {src}")
    if src != finite_field(src.p, src.degree) or target != finite_field(target.p, target.degree):
        raise ValueError("trace_norm works on canonical fields only")
    tw = tower(src.p, target.degree, src.degree // target.degree)
    if kind == "trace":
        return FqElem(target, tw.trace(x.code))
    if kind == "norm":
        return FqElem(target, tw.norm(x.code))
    raise ValueError(f"unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# polynomials over F_q (coefficients are F_q codes, low -> high)


def fq_poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def fq_poly_mul(F: FiniteField, a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return fq_poly_trim(out)


def fq_poly_divmod(F: FiniteField, a: Sequence[int], b: Sequence[int]) -> tuple[list[int], list[int]]:
    a = fq_poly_trim(list(a))
    b = fq_poly_trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = F.inv(b[-1])
    db = len(b) - 1
    quo = [0] * max(len(a) - db, 0)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            t = F.mul(c, inv)
            quo[k - db] = t
            for i in range(db + 1):
                a[k - db + i] = F.sub(a[k - db + i], F.mul(t, b[i]))
    return fq_poly_trim(quo), fq_poly_trim(a[:db])


def fq_poly_eval(F: FiniteField, a: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


# ---------------------------------------------------------------------------
# closed points


@dataclass(frozen=True)
class ClosedPoint:
    """A closed point of P^1 over F_q: a monic irreducible, or infinity (poly=None)."""

    field: FiniteField
    poly: tuple[int, ...] | None

    @property
    def is_infinity(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else len(self.poly) - 1

    @property
    def rational_value(self) -> int:
        """s for the point x - s."""
        if self.poly is None or len(self.poly) != 2:
            raise ValueError("not a finite rational point")
        return self.field.neg(self.poly[0])

    @classmethod
    def rational(cls, field: FiniteField, s: int) -> "ClosedPoint":
        return cls(field, (field.neg(s), 1))

    @classmethod
    def infinity(cls, field: FiniteField) -> "ClosedPoint":
        return cls(field, None)

    def to_string(self) -> str:
        return "inf" if self.poly is None else ",".join(str(c) for c in self.poly)

    @classmethod
    def parse(cls, field: FiniteField, text: str) -> "ClosedPoint":
        text = text.strip()
        if text == "inf":
            return cls(field, None)
        poly = tuple(int(t) for t in text.split(","))
        if poly[-1] != 1 or any(not 0 <= c < field.size for c in poly):
            raise ValueError(f"not a monic polynomial over F_{field.size}: {text}")
        if not _fq_irreducible(field, poly):
            raise ValueError(f"polynomial {text} is reducible")
        return cls(field, poly)

    def __str__(self) -> str:
        return self.to_string()


def _monic_polys(F: FiniteField, d: int) -> Iterator[tuple[int, ...]]:
    q = F.size
    for code in range(q**d):
        yield tuple((code // q**i) % q for i in range(d)) + (1,)


def _fq_irreducible(F: FiniteField, poly: Sequence[int]) -> bool:
    d = len(poly) - 1
    for k in range(1, d // 2 + 1):
        for g in _irreducibles_of_degree(F, k):
            if not fq_poly_divmod(F, poly, g)[1]:
                return False
    return True


@lru_cache(maxsize=None)
def _irreducibles_of_degree(F: FiniteField, d: int) -> tuple[tuple[int, ...], ...]:
    if F.size**d > SIEVE_LIMIT:
        raise ValueError(f"q^D = {F.size}^{d} exceeds the enumeration limit")
    small = [g for k in range(1, d // 2 + 1) for g in _irreducibles_of_degree(F, k)]
    out = []
    for poly in _monic_polys(F, d):
        if all(fq_poly_divmod(F, poly, g)[1] for g in small):
            out.append(poly)
    return tuple(out)


def _as_field(ctx) -> FiniteField:
    if isinstance(ctx, FiniteField):
        return ctx
    return ctx.residue_field


def closed_points(ctx, D: int) -> list[ClosedPoint]:
    """Monic irreducibles over F_q of degree <= D, then infinity."""
    if D < 1:
        raise ValueError("D must be >= 1")
    F = _as_field(ctx)
    pts = [ClosedPoint(F, g) for d in range(1, D + 1) for g in _irreducibles_of_degree(F, d)]
    pts.append(ClosedPoint.infinity(F))
    return pts


def residues_of_point(x: ClosedPoint, n: int) -> list[FqElem]:
    """The deg(x) roots of x in F_{q^n}, sorted by code."""
    if x.is_infinity:
        raise ValueError("infinity has no affine residues")
    if n % x.degree:
        raise ValueError(f"degree {x.degree} does not divide {n}")
    F = x.field
    tw = tower(F.p, F.degree, n)
    top = tw.top
    coeffs = [tw.embed(c) for c in x.poly]
    if top.size <= TABLE_LIMIT:
        ys = np.arange(top.size, dtype=np.int64)
        acc = np.zeros_like(ys)
        for c in reversed(coeffs):
            acc = top.vadd(top.vmul(acc, ys), c)
        roots = [int(r) for r in np.nonzero(acc == 0)[0]]
    else:  # pragma: no cover - desk-scale inputs never get here
        roots = [y for y in range(top.size) if fq_poly_eval(top, coeffs, y) == 0]
    return [FqElem(top, r) for r in roots]
