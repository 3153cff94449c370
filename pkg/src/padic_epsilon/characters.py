"""Teichmuller characters, the Dwork additive character, Gauss and Jacobi sums.

Conventions: chi_a(x) = teich(x)^a, psi(x) = zeta^Tr(x) with zeta = theta_pi(1),
and gauss_sum(a) = -sum_{x != 0} chi_a(x) psi(x) (a Frobenius trace, hence
the leading minus).  Sums are evaluated in a context with extra digits and
cast back, so cancellation does not eat into the caller's precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .finite_geometry import FqElem, tower
from .local_field import FieldCtx, PadicNumber, dwork_theta, padic_gamma, teichmuller, teichmuller_table, zeta_p
from .reports import Comparison, compare


def sum_guard(ctx: FieldCtx, extra_levels: int = 0) -> int:
    """Extra pi-digits for character sums: covers v(G) <= f(p-1) and a few divisions."""
    return ctx.e * (ctx.f + 2 + extra_levels) + 4


def guarded(ctx: FieldCtx, extra_levels: int = 0) -> FieldCtx:
    return ctx.with_precision(ctx.N + sum_guard(ctx, extra_levels))


@lru_cache(maxsize=None)
def zeta_powers(ctx: FieldCtx) -> tuple[PadicNumber, ...]:
    z = zeta_p(ctx)
    out = [ctx.one()]
    for _ in range(ctx.p - 1):
        out.append(out[-1] * z)
    return tuple(out)


def _residue_code(ctx: FieldCtx, x: FqElem | int) -> tuple[int, int]:
    """(code in F_q, degree n) for x in F_q or an extension F_{q^n}."""
    F = ctx.residue_field
    if isinstance(x, FqElem):
        m = x.field.degree
        if m % ctx.f or x.field.p != ctx.p:
            raise ValueError(f"{x} does not lie in an extension of F_{ctx.q}")
        return x.code, m // ctx.f
    return F._check(int(x)), 1


@dataclass(frozen=True)
class MultChar:
    """chi_a = teich^a on F_q^* (and on F_{q^n}^* through the norm)."""

    ctx: FieldCtx
    a: int

    def __post_init__(self):
        object.__setattr__(self, "a", self.a % (self.ctx.q - 1))

    def __call__(self, x: FqElem | int) -> PadicNumber:
        return mult_char_eval(self, x)

    def __mul__(self, other: "MultChar") -> "MultChar":
        return MultChar(self.ctx, self.a + other.a)

    def inverse(self) -> "MultChar":
        return MultChar(self.ctx, -self.a)


@dataclass(frozen=True)
class AddChar:
    """psi_s(x) = psi(s x) for s in F_q."""

    ctx: FieldCtx
    s: int = 1

    def __call__(self, x: FqElem | int) -> PadicNumber:
        return add_char_eval(self, x)


def mult_char_eval(chi: MultChar, x: FqElem | int) -> PadicNumber:
    ctx = chi.ctx
    code, n = _residue_code(ctx, x)
    if code == 0:
        raise ValueError("multiplicative characters are not defined at 0")
    F = ctx.residue_field
    if n > 1:
        code = tower(ctx.p, ctx.f, n).norm(code)
    # teich is multiplicative, so teich(y)^a = teich(y^a)
    return teichmuller_table(ctx)[F.pow(code, chi.a)]


def absolute_trace(ctx: FieldCtx, s: int, x: FqElem | int) -> int:
    """Tr_{F_{q^n}/F_p}(s x) with s in F_q."""
    code, n = _residue_code(ctx, x)
    tw = tower(ctx.p, ctx.f, n)
    top = tw.top
    return top.trace(top.mul(tw.embed(s), code))


def add_char_eval(psi: AddChar, x: FqElem | int) -> PadicNumber:
    return zeta_powers(psi.ctx)[absolute_trace(psi.ctx, psi.s, x)]


def chi_minus_one(ctx: FieldCtx, a: int) -> int:
    """chi_a(-1) = teich(-1)^a = (-1)^a for odd q, and 1 for even q."""
    if ctx.p == 2:
        return 1
    return -1 if a % 2 else 1


@lru_cache(maxsize=None)
def _gauss_sum_cached(ctx: FieldCtx, a: int) -> PadicNumber:
    g = guarded(ctx)
    F = g.residue_field
    teich = teichmuller_table(g)
    zp = zeta_powers(g)
    tr = [F.trace(x) for x in range(F.size)]
    total = g.zero()
    for x in range(1, F.size):
        total = total + teich[F.pow(x, a)] * zp[tr[x]]
    return (-total).cast(ctx)


def gauss_sum(ctx: FieldCtx, a: int) -> PadicNumber:
    """-sum_{x in F_q^*} chi_a(x) psi(x)."""
    return _gauss_sum_cached(ctx, a % (ctx.q - 1))


@lru_cache(maxsize=None)
def _extension_histogram(p: int, f: int, n: int) -> np.ndarray:
    """counts[r, t] = #{y in F_{q^n}^*: log_gamma Nm(y) = r, Tr(y) = t}."""
    tw = tower(p, f, n)
    top = tw.top
    q1 = p**f - 1
    counts = np.zeros(q1 * p, dtype=np.int64)
    trv = top.trace_vector
    for start, rows in top.power_blocks(top.primitive_element):
        tr = rows @ trv % p
        k = (start + np.arange(len(rows), dtype=np.int64)) % q1
        counts += np.bincount(k * p + tr, minlength=q1 * p)
    return counts.reshape(q1, p)


@lru_cache(maxsize=None)
def _extension_inner_sums(g: FieldCtx, n: int) -> tuple[PadicNumber, ...]:
    """inner[r] = sum_t counts[r, t] zeta^t, shared by every exponent a."""
    counts = _extension_histogram(g.p, g.f, n)
    zp = zeta_powers(g)
    out = []
    for r in range(g.q - 1):
        inner = g.zero()
        for t in range(g.p):
            c = int(counts[r, t])
            if c:
                inner = inner + zp[t] * c
        out.append(inner)
    return tuple(out)


def gauss_sum_extension(ctx: FieldCtx, a: int, n: int) -> PadicNumber:
    """The degree-n Gauss sum -sum_{y in F_{q^n}^*} chi_a(Nm y) psi(Tr y), by direct count."""
    g = guarded(ctx, extra_levels=ctx.f * n)
    F = g.residue_field
    gamma = tower(ctx.p, ctx.f, n).norm_generator
    teich = teichmuller_table(g)
    total = g.zero()
    for r, inner in enumerate(_extension_inner_sums(g, n)):
        if not inner.is_zero():
            total = total + teich[F.pow(gamma, a * r)] * inner
    return (-total).cast(ctx)


@lru_cache(maxsize=None)
def _jacobi_cached(ctx: FieldCtx, a: int, b: int) -> PadicNumber:
    g = guarded(ctx)
    F = g.residue_field
    teich = teichmuller_table(g)
    total = g.zero()
    for x in range(2, F.size):  # codes 0 and 1 are the elements 0 and 1
        total = total + teich[F.pow(x, a)] * teich[F.pow(F.sub(1, x), b)]
    return total.cast(ctx)


def jacobi_sum(ctx: FieldCtx, a: int, b: int) -> PadicNumber:
    """sum_{x != 0, 1} chi_a(x) chi_b(1 - x)."""
    q1 = ctx.q - 1
    return _jacobi_cached(ctx, a % q1, b % q1)


def digit_sum(n: int, p: int) -> int:
    s = 0
    while n:
        n, r = divmod(n, p)
        s += r
    return s


def stickelberger_valuation(ctx: FieldCtx, a: int) -> Fraction:
    """Predicted p-adic valuation of gauss_sum(a): s_p((-a) mod (q-1)) / (p-1)."""
    ap = (-a) % (ctx.q - 1)
    return Fraction(digit_sum(ap, ctx.p), ctx.p - 1)


def gross_koblitz(ctx: FieldCtx, a: int) -> PadicNumber:
    """pi^{s(a')} prod_i Gamma_p(<p^i a'/(q-1)>) with a' = (-a) mod (q-1)."""
    q1 = ctx.q - 1
    ap = (-a) % q1
    g = guarded(ctx)
    out = g.pi() ** digit_sum(ap, ctx.p)
    for i in range(ctx.f):
        out = out * padic_gamma(g, Fraction((ctx.p**i * ap) % q1, q1))
    return out.cast(ctx)


def gross_koblitz_check(ctx: FieldCtx, a: int, required: int | None = None) -> Comparison:
    if not 0 <= a < ctx.q - 1:
        raise ValueError(f"a must lie in [0, {ctx.q - 1})")
    return compare(f"gross-koblitz a={a}", gauss_sum(ctx, a), gross_koblitz(ctx, a), required)


def splitting_product(ctx: FieldCtx, x: int) -> PadicNumber:
    """prod_{i<f} theta_pi(teich(x)^(p^i)), which should equal psi(x) on F_q."""
    t = teichmuller(ctx, x)
    out = ctx.one()
    for _ in range(ctx.f):
        out = out * dwork_theta(t)
        t = t**ctx.p
    return out


def additive_character_sum(ctx: FieldCtx, s: int) -> PadicNumber:
    psi = AddChar(ctx, s)
    total = ctx.zero()
    for x in range(ctx.q):
        total = total + psi(x)
    return total
