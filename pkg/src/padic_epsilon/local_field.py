"""Capped-precision arithmetic in K = Q_q(pi) with pi^(p-1) = -p.

A nonzero element is stored as pi^ord * u with u a unit of the ring of
integers O_K = Z_q[pi].  The unit is kept as an e x f table of integers
C[j][i], the coefficient of pi^j X^i, where X is the Teichmuller-free
generator of Z_q = Z_p[X]/(m(X)) and m lifts the residue-field modulus.
A unit known to relative precision r (in pi-digits) stores C[j][i] modulo
p^ceil((r - j)/e); entries are canonical representatives, so two numbers
with the same data print identically.

Contexts that differ only in N may be mixed; N caps the relative precision
of exact constants (and of results built from them).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence, Union

from .finite_geometry import FiniteField, FqElem, finite_field, is_irreducible, is_prime, least_irreducible

INF = math.inf

Raw = list  # list of e lists of f ints


@dataclass(frozen=True)
class FieldCtx:
    """Parameters of K = Q_q(pi): prime p, residue degree f, pi on/off, precision N."""

    p: int
    f: int
    use_pi: bool
    N: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.f < 1:
            raise ValueError("unramified degree f must be >= 1")
        if self.N < 1:
            raise ValueError("precision N must be >= 1")
        if len(self.modulus) != self.f + 1 or not is_irreducible(self.modulus, self.p):
            raise ValueError(f"modulus {self.modulus} is not irreducible of degree {self.f}")

    @property
    def e(self) -> int:
        return self.p - 1 if self.use_pi else 1

    @property
    def q(self) -> int:
        return self.p**self.f

    @property
    def sigma(self) -> int:
        """Sign with uniformizer^e = sigma * p (pi^(p-1) = -p; p itself otherwise)."""
        return -1 if self.use_pi else 1

    @cached_property
    def residue_field(self) -> FiniteField:
        if self.modulus == least_irreducible(self.p, self.f):
            return finite_field(self.p, self.f)
        return FiniteField(self.p, self.f, self.modulus)

    def with_precision(self, N: int) -> "FieldCtx":
        return FieldCtx(self.p, self.f, self.use_pi, N, self.modulus)

    def compatible(self, other: "FieldCtx") -> bool:
        return (self.p, self.f, self.use_pi, self.modulus) == (other.p, other.f, other.use_pi, other.modulus)

    def levels(self, r: int) -> int:
        """p-adic levels needed to hold r pi-digits."""
        return max(0, -(-r // self.e))

    # convenient constructors
    def __call__(self, x) -> "PadicNumber":
        return PadicNumber.coerce(self, x)

    def zero(self) -> "PadicNumber":
        return PadicNumber(self, None, None, INF)

    def one(self) -> "PadicNumber":
        return PadicNumber.from_int(self, 1)

    def pi(self) -> "PadicNumber":
        if not self.use_pi:
            raise ValueError("context has no pi")
        return PadicNumber._make(self, 1, _unit_one(self), self.N)


def make_context(p: int, f: int = 1, use_pi: bool = True, N: int = 20) -> FieldCtx:
    """Build a context with the least irreducible residue modulus."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if f < 1:
        raise ValueError("unramified degree f must be >= 1")
    return FieldCtx(p, f, use_pi, N, least_irreducible(p, f))


# ---------------------------------------------------------------------------
# raw arithmetic on e x f integer tables


def _zeros(ctx: FieldCtx) -> Raw:
    return [[0] * ctx.f for _ in range(ctx.e)]


def _unit_one(ctx: FieldCtx) -> tuple:
    raw = _zeros(ctx)
    raw[0][0] = 1
    return _freeze(raw)


def _freeze(raw: Raw) -> tuple:
    return tuple(tuple(row) for row in raw)


def _thaw(u: tuple) -> Raw:
    return [list(row) for row in u]


def _reduce(ctx: FieldCtx, raw: Raw, r: int) -> Raw:
    """Canonical representatives for r relative pi-digits."""
    e, p = ctx.e, ctx.p
    out = []
    for j, row in enumerate(raw):
        lv = max(0, -(-(r - j) // e))
        m = p**lv
        out.append([c % m for c in row])
    return out


def _zq_mul(ctx: FieldCtx, a: Sequence[int], b: Sequence[int], pm: int) -> list[int]:
    f = ctx.f
    if f == 1:
        return [a[0] * b[0] % pm]
    t = [0] * (2 * f - 1)
    for i, x in enumerate(a):
        if x:
            for k, y in enumerate(b):
                t[i + k] += x * y
    mod = ctx.modulus
    for k in range(2 * f - 2, f - 1, -1):
        c = t[k]
        if c:
            for i in range(f):
                t[k - f + i] -= c * mod[i]
    return [x % pm for x in t[:f]]


def _mul_raw(ctx: FieldCtx, A: Raw, B: Raw, pm: int) -> Raw:
    e, f, p = ctx.e, ctx.f, ctx.p
    out = [[0] * f for _ in range(e)]
    for j1, a in enumerate(A):
        if not any(a):
            continue
        for j2, b in enumerate(B):
            if not any(b):
                continue
            prod = _zq_mul(ctx, a, b, pm)
            j = j1 + j2
            if j >= e:  # uniformizer^e = sigma p
                j -= e
                prod = [ctx.sigma * p * x for x in prod]
            row = out[j]
            for i in range(f):
                row[i] += prod[i]
    return [[x % pm for x in row] for row in out]


def _shift_up(ctx: FieldCtx, raw: Raw, k: int) -> Raw:
    """Multiply by pi^k, k >= 0."""
    e, p = ctx.e, ctx.p
    a, b = divmod(k, e)
    sp = ctx.sigma * p
    if a:
        s = sp**a
        raw = [[s * c for c in row] for row in raw]
    for _ in range(b):
        raw = [[sp * c for c in raw[-1]]] + raw[:-1]
    return raw


def _shift_down(ctx: FieldCtx, raw: Raw, k: int) -> Raw:
    """Divide by pi^k; the caller guarantees divisibility."""
    e, p = ctx.e, ctx.p
    a, b = divmod(k, e)
    sg = ctx.sigma
    if a:
        pa = p**a
        sgn = sg**a
        raw = [[sgn * (c // pa) for c in row] for row in raw]
    for _ in range(b):
        raw = raw[1:] + [[sg * (c // p) for c in raw[0]]]
    return raw


def _int_val(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _pi_valuation(ctx: FieldCtx, raw: Raw, R: int) -> int:
    """pi-adic valuation of sum pi^j C_j, capped at R (data valid to R digits)."""
    e, p = ctx.e, ctx.p
    best = R
    for j, row in enumerate(raw):
        if j >= best:
            break
        lv = max(0, -(-(R - j) // e))
        m = p**lv
        vals = [_int_val(c % m, p) for c in row if c % m]
        if vals:
            best = min(best, e * min(vals) + j)
    return best


# ---------------------------------------------------------------------------
# numbers


Number = Union["PadicNumber", int, Fraction]


class PadicNumber:
    """An element of Q_q(pi) with tracked absolute precision."""

    __slots__ = ("ctx", "ord", "unit", "prec")

    def __init__(self, ctx: FieldCtx, ord_: int | None, unit: tuple | None, prec: float):
        self.ctx = ctx
        self.ord = ord_
        self.unit = unit
        self.prec = prec  # absolute precision in pi-digits; INF for exact zero

    @classmethod
    def _make(cls, ctx: FieldCtx, ord_: int, raw, rel: int) -> "PadicNumber":
        rel = min(rel, ctx.N)
        if rel <= 0:
            return cls(ctx, None, None, ord_ + rel)
        return cls(ctx, ord_, _freeze(_reduce(ctx, raw, rel)), ord_ + rel)

    @classmethod
    def _normalize(cls, ctx: FieldCtx, raw: Raw, base: int, R: float) -> "PadicNumber":
        """Value pi^base * (sum pi^j C_j), the bracket known to R digits."""
        if R == INF:
            R = ctx.N + 2 * ctx.e  # only used for exact inputs; capped in _make
        R = int(R)
        if R <= 0:
            return cls(ctx, None, None, base + R)
        raw = _reduce(ctx, raw, R)
        w = _pi_valuation(ctx, raw, R)
        if w >= R:
            return cls(ctx, None, None, base + R)
        if w:
            raw = _shift_down(ctx, raw, w)
        return cls._make(ctx, base + w, raw, R - w)

    # -- constructors
    @classmethod
    def from_int(cls, ctx: FieldCtx, n: int) -> "PadicNumber":
        return cls.from_fraction(ctx, Fraction(n))

    @classmethod
    def from_fraction(cls, ctx: FieldCtx, x: Fraction) -> "PadicNumber":
        x = Fraction(x)
        if x == 0:
            return ctx.zero()
        p, e = ctx.p, ctx.e
        num, den = x.numerator, x.denominator
        vn, vd = _int_val(num, p), _int_val(den, p)
        num //= p**vn
        den //= p**vd
        v = vn - vd
        lv = ctx.levels(ctx.N) + 1
        pm = p**lv
        u = num * pow(den, -1, pm) % pm
        if ctx.sigma == -1 and v % 2:
            u = -u  # p^v = (-1)^v pi^(e v)
        raw = _zeros(ctx)
        raw[0][0] = u % pm
        return cls._make(ctx, e * v, raw, ctx.N)

    @classmethod
    def from_zq(cls, ctx: FieldCtx, coeffs: Sequence[int], levels: int) -> "PadicNumber":
        """The element sum coeffs[i] X^i of Z_q, known modulo p^levels."""
        if len(coeffs) > ctx.f:
            raise ValueError(f"at most f = {ctx.f} coefficients")
        raw = _zeros(ctx)
        raw[0] = [int(c) for c in coeffs] + [0] * (ctx.f - len(coeffs))
        return cls._normalize(ctx, raw, 0, ctx.e * levels)

    @classmethod
    def coerce(cls, ctx: FieldCtx, x: Number) -> "PadicNumber":
        if isinstance(x, PadicNumber):
            if not ctx.compatible(x.ctx):
                raise ValueError("context mismatch")
            return x
        if isinstance(x, (int, Fraction)):
            return cls.from_fraction(ctx, Fraction(x))
        raise TypeError(f"cannot coerce {type(x).__name__} to PadicNumber")

    # -- basic properties
    def is_zero(self) -> bool:
        return self.ord is None

    @property
    def valuation(self):
        """p-adic valuation as a Fraction (value group (1/e)Z); inf for zero."""
        return INF if self.ord is None else Fraction(self.ord, self.ctx.e)

    @property
    def known_precision(self):
        return self.prec

    @property
    def rel_precision(self):
        return 0 if self.ord is None else self.prec - self.ord

    def residue(self) -> FqElem:
        """Reduction mod pi of an integral element."""
        F = self.ctx.residue_field
        if self.ord is None or self.ord > 0:
            return F.element(0)
        if self.ord < 0:
            raise ValueError("element is not integral")
        return F.element(F.from_digits(c % self.ctx.p for c in self.unit[0]))

    @property
    def digits(self) -> list[list[tuple[int, int, int]]]:
        """Per p-power level, the nonzero (unramified index, pi power, residue) triples of the unit."""
        if self.ord is None:
            return []
        p, e = self.ctx.p, self.ctx.e
        nlev = self.ctx.levels(self.rel_precision)
        out = []
        for k in range(nlev):
            level = []
            for j in range(e):
                for i in range(self.ctx.f):
                    d = (self.unit[j][i] // p**k) % p
                    if d:
                        level.append((i, j, d))
            out.append(level)
        return out

    # -- arithmetic
    def _coerce_other(self, y: Number) -> "PadicNumber":
        if isinstance(y, PadicNumber):
            if not self.ctx.compatible(y.ctx):
                raise ValueError("context mismatch")
            return y
        return PadicNumber.coerce(self.ctx, y)

    def _rctx(self, y: "PadicNumber") -> FieldCtx:
        return self.ctx if self.ctx.N >= y.ctx.N else y.ctx

    def __add__(self, y: Number) -> "PadicNumber":
        y = self._coerce_other(y)
        ctx = self._rctx(y)
        A = min(self.prec, y.prec)
        if self.ord is None and y.ord is None:
            return PadicNumber(ctx, None, None, A)
        if self.ord is None:
            return y._truncate(A, ctx)
        if y.ord is None:
            return self._truncate(A, ctx)
        v = min(self.ord, y.ord)
        R = A - v
        if R <= 0:
            return PadicNumber(ctx, None, None, A)
        X = _shift_up(ctx, _thaw(self.unit), self.ord - v)
        Y = _shift_up(ctx, _thaw(y.unit), y.ord - v)
        S = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(X, Y)]
        return PadicNumber._normalize(ctx, S, v, R)

    __radd__ = __add__

    def __neg__(self) -> "PadicNumber":
        if self.ord is None:
            return self
        return PadicNumber._make(self.ctx, self.ord, [[-c for c in row] for row in self.unit], self.rel_precision)

    def __sub__(self, y: Number) -> "PadicNumber":
        return self + (-self._coerce_other(y))

    def __rsub__(self, y: Number) -> "PadicNumber":
        return self._coerce_other(y) + (-self)

    def __mul__(self, y: Number) -> "PadicNumber":
        y = self._coerce_other(y)
        ctx = self._rctx(y)
        if self.ord is None or y.ord is None:
            if self.ord is None and y.ord is None:
                return PadicNumber(ctx, None, None, self.prec + y.prec)
            z, o = (self, y) if self.ord is None else (y, self)
            return PadicNumber(ctx, None, None, z.prec + o.ord)
        rel = min(self.rel_precision, y.rel_precision)
        pm = ctx.p ** ctx.levels(rel)
        raw = _mul_raw(ctx, _thaw(self.unit), _thaw(y.unit), pm)
        return PadicNumber._make(ctx, self.ord + y.ord, raw, rel)

    __rmul__ = __mul__

    def _unit_inverse(self) -> tuple:
        ctx = self.ctx
        rel = self.rel_precision
        p, f = ctx.p, ctx.f
        F = ctx.residue_field
        r0 = F.inv(F.from_digits(c % p for c in self.unit[0]))
        y = _zeros(ctx)
        y[0] = F.digits(r0)
        x = _thaw(self.unit)
        pm = p ** ctx.levels(rel)
        good = 1
        while good < rel:
            good *= 2
            xy = _mul_raw(ctx, x, y, pm)
            two_minus = [[-c for c in row] for row in xy]
            two_minus[0][0] += 2
            y = _mul_raw(ctx, y, two_minus, pm)
        return y

    def inverse(self) -> "PadicNumber":
        if self.ord is None:
            raise ZeroDivisionError("division by an element that is zero to its precision")
        return PadicNumber._make(self.ctx, -self.ord, self._unit_inverse(), self.rel_precision)

    def __truediv__(self, y: Number) -> "PadicNumber":
        return self * self._coerce_other(y).inverse()

    def __rtruediv__(self, y: Number) -> "PadicNumber":
        return self._coerce_other(y) * self.inverse()

    def __pow__(self, n: int) -> "PadicNumber":
        if not isinstance(n, int):
            raise TypeError("only integer powers")
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return PadicNumber.from_int(self.ctx, 1)
        result, base = None, self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def _truncate(self, A: float, ctx: FieldCtx | None = None) -> "PadicNumber":
        ctx = ctx or self.ctx
        if self.ord is None:
            return PadicNumber(ctx, None, None, min(self.prec, A))
        if A >= self.prec:
            return PadicNumber(ctx, self.ord, self.unit, self.prec) if ctx is not self.ctx else self
        return PadicNumber._make(ctx, self.ord, _thaw(self.unit), int(A) - self.ord)

    def cast(self, ctx: FieldCtx) -> "PadicNumber":
        """Move to a compatible context, capping relative precision at its N."""
        if not ctx.compatible(self.ctx):
            raise ValueError("context mismatch")
        if self.ord is None:
            return PadicNumber(ctx, None, None, self.prec)
        return PadicNumber._make(ctx, self.ord, _thaw(self.unit), self.rel_precision)

    def add_precision_loss(self, digits: int) -> "PadicNumber":
        """Drop `digits` of absolute precision (used for explicit error budgets)."""
        return self._truncate(self.prec - digits)

    # -- comparison
    def __eq__(self, y: object) -> bool:
        if not isinstance(y, (PadicNumber, int, Fraction)):
            return NotImplemented
        return (self - self._coerce_other(y)).is_zero()

    __hash__ = None  # equality is precision-relative

    def agree_digits(self, y: Number) -> float:
        """Relative pi-digits to which self and y agree."""
        y = self._coerce_other(y)
        d = self - y
        top = d.prec if d.ord is None else d.ord
        ords = [o for o in (self.ord, y.ord) if o is not None]
        if not ords:
            return INF if top == INF else 0
        return top - min(ords)

    # -- text
    def to_string(self) -> str:
        if self.ord is None:
            prec = "inf" if self.prec == INF else str(int(self.prec))
            return f"v=inf;digits=;prec={prec}"
        v = Fraction(self.ord, self.ctx.e)
        levels = ";".join(",".join(f"{i}:{j}:{d}" for i, j, d in lv) for lv in self.digits)
        return f"v={v.numerator}/{v.denominator};digits={levels};prec={int(self.prec)}"

    __str__ = to_string

    @classmethod
    def from_string(cls, ctx: FieldCtx, text: str) -> "PadicNumber":
        rest = text.strip()
        # digits may contain ';', so split off v= and prec= explicitly
        if not rest.startswith("v=") or ";digits=" not in rest or ";prec=" not in rest:
            raise ValueError(f"malformed p-adic number: {text!r}")
        vpart, rest = rest[2:].split(";digits=", 1)
        dpart, ppart = rest.rsplit(";prec=", 1)
        if vpart == "inf":
            if dpart:
                raise ValueError("zero carries no digits")
            return cls(ctx, None, None, INF if ppart == "inf" else int(ppart))
        v = Fraction(vpart)
        ordv = v * ctx.e
        if ordv.denominator != 1:
            raise ValueError(f"valuation {v} not in (1/{ctx.e})Z")
        ordv = int(ordv)
        prec = int(ppart)
        rel = prec - ordv
        raw = _zeros(ctx)
        for k, lv in enumerate(dpart.split(";") if dpart else []):
            for trip in filter(None, lv.split(",")):
                i, j, d = (int(t) for t in trip.split(":"))
                if not (0 <= i < ctx.f and 0 <= j < ctx.e and 0 < d < ctx.p):
                    raise ValueError(f"bad digit triple {trip}")
                raw[j][i] += d * ctx.p**k
        if rel <= 0 or rel > ctx.N:
            raise ValueError("relative precision outside (0, N]")
        if all(c % ctx.p == 0 for c in raw[0]):
            raise ValueError("leading digit block is zero")
        return cls._make(ctx, ordv, raw, rel)

    def __repr__(self) -> str:
        return f"PadicNumber({self.to_string()})"


def arith(a: PadicNumber, b: Number, op: str) -> PadicNumber:
    """Binary operation by name: add, sub, mul or div."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# Teichmuller lifts


def _zq_pow(ctx: FieldCtx, a: list[int], n: int, pm: int) -> list[int]:
    result = [1] + [0] * (ctx.f - 1)
    while n:
        if n & 1:
            result = _zq_mul(ctx, result, a, pm)
        n >>= 1
        if n:
            a = _zq_mul(ctx, a, a, pm)
    return result


def _zq_inv(ctx: FieldCtx, a: list[int], lv: int) -> list[int]:
    F = ctx.residue_field
    p = ctx.p
    y = F.digits(F.inv(F.from_digits(c % p for c in a)))
    good, pm = 1, p**lv
    while good < lv:
        good *= 2
        t = _zq_mul(ctx, a, y, pm)
        t = [-c for c in t]
        t[0] += 2
        y = _zq_mul(ctx, y, t, pm)
    return y


@lru_cache(maxsize=None)
def _teich_zq(ctx_key: tuple, code: int, lv: int) -> tuple[int, ...]:
    p, f, modulus = ctx_key
    ctx = FieldCtx(p, f, False, 1, modulus)
    F = ctx.residue_field
    q = p**f
    y = F.digits(code)
    pm = p**lv
    # Newton on y^(q-1) = 1
    good = 1
    while good < lv:
        good *= 2
        yq1 = _zq_pow(ctx, y, q - 2, pm)  # y^(q-2)
        g = _zq_mul(ctx, yq1, y, pm)
        g[0] -= 1
        dg = [(q - 1) * c for c in yq1]
        corr = _zq_mul(ctx, g, _zq_inv(ctx, dg, lv), pm)
        y = [(a - b) % pm for a, b in zip(y, corr)]
    return tuple(y)


def teichmuller(ctx: FieldCtx, x: FqElem | int) -> PadicNumber:
    """The Teichmuller lift of a residue-field element."""
    F = ctx.residue_field
    if isinstance(x, FqElem):
        if x.field != F:
            raise ValueError("element is not in the residue field of the context")
        code = x.code
    else:
        code = F._check(int(x))
    if code == 0:
        return ctx.zero()
    lv = ctx.levels(ctx.N) + 1
    coeffs = _teich_zq((ctx.p, ctx.f, ctx.modulus), code, lv)
    raw = _zeros(ctx)
    raw[0] = list(coeffs)
    return PadicNumber._make(ctx, 0, raw, ctx.N)


@lru_cache(maxsize=None)
def teichmuller_table(ctx: FieldCtx) -> tuple[PadicNumber, ...]:
    """Lifts of every residue-field element, indexed by code."""
    return tuple(teichmuller(ctx, c) for c in range(ctx.q))


# ---------------------------------------------------------------------------
# the Dwork splitting series


# v_p(a_n) >= n (p - 1) / p^2 for the coefficients of exp(pi (x - x^p)).
DWORK_BOUND_NUM = lambda p: p - 1  # noqa: E731
DWORK_BOUND_DEN = lambda p: p * p  # noqa: E731


def dwork_truncation(p: int, target: int) -> int:
    """Least n0 with v_pi(a_n) >= target for all n >= n0 (pi-adic digits)."""
    # v_pi(a_n) = (p - 1) v_p(a_n) >= n (p-1)^2 / p^2
    return -(-target * p * p // ((p - 1) ** 2))


@lru_cache(maxsize=None)
def dwork_rational_part(p: int, n: int) -> Fraction:
    """r_n with a_n = pi^n r_n: r_n = sum_j 1 / (p^j (n - p j)! j!)."""
    return sum(
        (Fraction(1, p**j * math.factorial(n - p * j) * math.factorial(j)) for j in range(n // p + 1)),
        Fraction(0),
    )


@lru_cache(maxsize=None)
def dwork_coefficients(ctx: FieldCtx) -> tuple[PadicNumber, ...]:
    if not ctx.use_pi:
        raise ValueError("the Dwork series needs pi")
    n0 = dwork_truncation(ctx.p, ctx.N)
    pi = ctx.pi()
    out = []
    pin = ctx.one()
    for n in range(n0):
        out.append(pin * PadicNumber.from_fraction(ctx, dwork_rational_part(ctx.p, n)))
        pin = pin * pi
    return tuple(out)


def _is_teichmuller(x: PadicNumber) -> bool:
    if x.is_zero():
        return True
    if x.ord != 0:
        return False
    return x ** x.ctx.q == x


def dwork_theta(x: PadicNumber) -> PadicNumber:
    """theta_pi(x) = exp(pi (x - x^p)) for x zero or a Teichmuller lift."""
    ctx = x.ctx
    if not _is_teichmuller(x):
        raise ValueError("dwork_theta needs 0 or a Teichmuller lift")
    coeffs = dwork_coefficients(ctx)
    if x.is_zero():
        return ctx.one()
    acc = coeffs[-1]
    for a in reversed(coeffs[:-1]):
        acc = acc * x + a
    return acc


def zeta_p(ctx: FieldCtx) -> PadicNumber:
    """The p-th root of unity theta_pi(1)."""
    return dwork_theta(ctx.one())


# ---------------------------------------------------------------------------
# Morita's p-adic Gamma


def _taylor_shift(c: list[int], a: int, mod: int) -> list[int]:
    """Coefficients of F(X + a) from those of F(X)."""
    out = list(c)
    n = len(out)
    for i in range(n):  # repeated synthetic division
        for k in range(n - 2, i - 1, -1):
            out[k] = (out[k] + a * out[k + 1]) % mod
    return out


def _poly_mul_trunc(a: list[int], b: list[int], D: int, mod: int) -> list[int]:
    out = [0] * D
    for i, x in enumerate(a):
        if x:
            for j in range(min(len(b), D - i)):
                out[i + j] += x * b[j]
    return [v % mod for v in out]


@lru_cache(maxsize=None)
def _gamma_polys(p: int, M: int) -> tuple[tuple[int, ...], ...]:
    """G_j(y) = prod_{0<t<p^j, p∤t} (p^j y + t) mod (y^M, p^M), for j = 1..M+2.

    G_1(y) = prod_{0<b<p} (p y + b) and G_{j+1}(y) = prod_{b<p} G_j(p y + b).
    The y^i coefficient of G_j is divisible by p^(i j), so the truncation at
    y^M is exact modulo p^M and stays exact under these substitutions.
    Index 0 is a placeholder.
    """
    mod, D = p**M, max(M, 1)
    one = [1] + [0] * (D - 1)
    g1 = list(one)
    for b in range(1, p):
        g1 = _poly_mul_trunc(g1, [b, p], D, mod)
    G = [tuple(one), tuple(g1)]
    for j in range(1, M + 2):
        nxt = list(one)
        for b in range(p):
            shifted = _taylor_shift(list(G[j]), b, mod)  # G_j(y + b), then y -> p y
            nxt = _poly_mul_trunc(nxt, [c * p**i % mod for i, c in enumerate(shifted)], D, mod)
        G.append(tuple(nxt))
    return tuple(G)


def unit_factorial(n: int, p: int, M: int) -> int:
    """prod_{0<j<n, p∤j} j mod p^M, walking the base-p digits of n."""
    mod = p**M
    digs = []
    m = n
    while m:
        m, r = divmod(m, p)
        digs.append(r)
    if len(digs) > M + 2:
        raise ValueError("argument too large for the cached block polynomials")
    polys = _gamma_polys(p, M)
    prod, base = 1, 0
    for j in range(len(digs) - 1, 0, -1):
        pj = p**j
        for _ in range(digs[j]):
            y, val = base // pj, 0
            for c in reversed(polys[j]):
                val = (val * y + c) % mod
            prod = prod * val % mod
            base += pj
    for t in range(digs[0] if digs else 0):
        x = base + t
        if x % p:
            prod = prod * x % mod
    return prod


def gamma_integer(n: int, p: int, M: int) -> int:
    """Gamma_p(n) mod p^M for an integer n >= 0."""
    if n == 0:
        return 1 % p**M
    sign = -1 if n % 2 else 1
    return sign * unit_factorial(n, p, M) % p**M


def padic_gamma(ctx: FieldCtx, x: int | Fraction) -> PadicNumber:
    """Morita's Gamma_p at a rational p-adic integer."""
    x = Fraction(x)
    p = ctx.p
    if x.denominator % p == 0:
        raise ValueError(f"{x} is not a p-adic integer")
    M = ctx.levels(ctx.N) + 2
    K = M + 1  # extra level for the p = 2 continuity constant
    mod = p**K
    n = x.numerator * pow(x.denominator, -1, mod) % mod
    if n == 0:
        return ctx.one()
    g = gamma_integer(n, p, M)
    raw = _zeros(ctx)
    raw[0][0] = g
    return PadicNumber._normalize(ctx, raw, 0, ctx.e * M)
