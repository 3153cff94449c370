from fractions import Fraction
import math

import pytest
from hypothesis import given, strategies as st

from oracles import PiRing, dwork_recursion, fraction_vp, to_padic
from padic_epsilon.local_field import (
    PadicNumber,
    arith,
    dwork_coefficients,
    dwork_rational_part,
    dwork_theta,
    dwork_truncation,
    gamma_integer,
    make_context,
    padic_gamma,
    teichmuller,
    teichmuller_table,
    zeta_p,
)

PRIMES = [2, 3, 5, 7]


# -- contexts


def test_context_ramified():
    ctx = make_context(5, 1, True, 30)
    assert ctx.e == 4 and ctx.q == 5 and ctx.residue_field.size == 5


def test_context_unramified():
    ctx = make_context(2, 3, False, 12)
    assert ctx.e == 1 and ctx.q == 8


@pytest.mark.parametrize("p,f", [(4, 1), (1, 1), (5, 0)])
def test_context_rejects(p, f):
    with pytest.raises(ValueError):
        make_context(p, f, True, 10)


# -- arithmetic


def test_two_plus_three():
    ctx = make_context(5, N=20)
    s = arith(ctx(2), ctx(3), "add")
    assert s.valuation == 1
    assert s == 5


def test_geometric_series():
    ctx = make_context(5, N=24)
    x = arith(ctx(1), ctx(1) - 5, "div")
    expect = sum(5**k for k in range(7))
    assert x.agree_digits(ctx(expect)) >= 24


@pytest.mark.parametrize("p", PRIMES)
def test_pi_relation(p):
    ctx = make_context(p, N=25)
    pi = ctx.pi()
    assert pi * pi ** (p - 2) == -p
    assert (pi ** (p - 1) + p).is_zero()
    assert pi.valuation == Fraction(1, p - 1)


def test_division_by_zero():
    ctx = make_context(3)
    with pytest.raises(ZeroDivisionError):
        ctx(1) / ctx(0)


def test_context_mismatch():
    with pytest.raises(ValueError):
        make_context(3)(1) + make_context(5)(1)


def test_precision_is_tracked_on_cancellation():
    ctx = make_context(5, N=20)
    a = ctx(1) + ctx.pi() ** 10
    d = a - ctx(1)
    assert d.ord == 10
    assert d.rel_precision <= 20


small = st.integers(min_value=-10**6, max_value=10**6)


def _elem(ctx, a, b, k):
    x = ctx(Fraction(a, b)) if a else ctx(1)
    return x * ctx.pi() ** k


@given(st.sampled_from(PRIMES), small, small, small, st.integers(1, 50), st.integers(0, 6))
def test_ring_axioms(p, a, b, c, d, k):
    ctx = make_context(p, N=16)
    x, y, z = _elem(ctx, a, d, k), _elem(ctx, b, 1, 0), _elem(ctx, c, d, 1)
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x + y == y + x


@given(st.sampled_from([(3, 2), (5, 1), (2, 2), (7, 1)]), st.lists(st.integers(0, 10**6), min_size=1, max_size=3),
       st.integers(-5, 5))
def test_inverse(pf, coeffs, k):
    p, f = pf
    ctx = make_context(p, f, N=18)
    x = PadicNumber.from_zq(ctx, coeffs[:f], 10) * ctx.pi() ** k
    if x.is_zero() or x.rel_precision < 8:
        return
    assert (x * x.inverse()).agree_digits(1) >= x.rel_precision - 1


@given(st.sampled_from(PRIMES), small, st.integers(1, 10**4), small, st.integers(0, 5))
def test_precision_soundness(p, a, b, c, k):
    lo, hi = make_context(p, N=12), make_context(p, N=30)
    vals = []
    for ctx in (lo, hi):
        x = ctx(Fraction(a, b)) + ctx.pi() ** k * c
        y = ctx(c + 1) * ctx.pi() + 1
        vals.append(x * y - x / y)
    assert vals[1].cast(lo) == vals[0]


@given(st.sampled_from([(5, 1), (3, 2), (2, 3), (7, 1)]), st.lists(st.integers(0, 10**8), min_size=1, max_size=3),
       st.integers(-4, 9))
def test_serialization_roundtrip(pf, coeffs, k):
    p, f = pf
    ctx = make_context(p, f, N=20)
    x = PadicNumber.from_zq(ctx, coeffs[:f], 6) * ctx.pi() ** k
    if x.is_zero():
        return
    y = PadicNumber.from_string(ctx, x.to_string())
    assert y.to_string() == x.to_string()
    assert y.known_precision == x.known_precision


def test_serialization_zero():
    ctx = make_context(5)
    z = ctx.zero()
    assert z.to_string() == "v=inf;digits=;prec=inf"
    assert PadicNumber.from_string(ctx, z.to_string()).is_zero()


@pytest.mark.parametrize("bad", ["v=1/3;digits=0:0:1;prec=10", "digits=;prec=3", "v=0/1;digits=0:0:7;prec=4"])
def test_serialization_rejects(bad):
    with pytest.raises(ValueError):
        PadicNumber.from_string(make_context(5, N=10), bad)


# -- Teichmuller


def test_teichmuller_trivial_values():
    ctx = make_context(5, N=20)
    assert teichmuller(ctx, 0).is_zero()
    assert teichmuller(ctx, 1) == 1


def test_teichmuller_two_mod_5():
    # Hensel iteration x -> x^5 in Z / 5^10, frozen
    ctx = make_context(5, 1, use_pi=False, N=10)
    assert teichmuller(ctx, 2) == 6139557
    assert teichmuller(ctx, 3) == 3626068
    assert PiRing(5, 10).teich(2) == 6139557


@pytest.mark.parametrize("p,f", [(2, 1), (2, 3), (3, 2), (5, 1), (5, 2), (7, 1)])
def test_teichmuller_properties(p, f):
    ctx = make_context(p, f, N=16)
    F = ctx.residue_field
    T = teichmuller_table(ctx)
    for x in range(ctx.q):
        assert T[x] ** ctx.q == T[x]
        if x:
            assert T[x].residue().code == x
    for x in range(1, ctx.q):
        for y in range(1, ctx.q, max(1, ctx.q // 5)):
            assert T[x] * T[y] == T[F.mul(x, y)]


# -- Dwork series


@pytest.mark.parametrize("p", PRIMES)
def test_dwork_coefficients_match_recursion(p):
    r = dwork_recursion(p, 500)
    for n in range(0, 501, 7):
        assert dwork_rational_part(p, n) == r[n]


@pytest.mark.parametrize("p", PRIMES)
def test_dwork_valuation_bound(p):
    # v_p(a_n) = n/(p-1) + v_p(r_n) >= n (p-1) / p^2, n <= 500
    r = dwork_recursion(p, 500)
    for n in range(1, 501):
        v = Fraction(n, p - 1) + fraction_vp(r[n], p)
        assert v >= Fraction(n * (p - 1), p * p)


@pytest.mark.parametrize("p", PRIMES)
def test_dwork_truncation_covers_target(p):
    r = dwork_recursion(p, 600)
    target = 30
    n0 = dwork_truncation(p, target)
    for n in range(n0, min(n0 + 150, 600)):
        v_pi = n + (p - 1) * fraction_vp(r[n], p)
        assert v_pi >= target


@pytest.mark.parametrize("p,f", [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (7, 2)])
def test_zeta(p, f):
    ctx = make_context(p, f, N=30)
    z = zeta_p(ctx)
    assert z ** p == 1
    assert z != 1
    d = z - 1 - ctx.pi()
    assert d.is_zero() or d.ord >= 2
    assert dwork_theta(ctx.zero()) == 1


@pytest.mark.parametrize("p,L", [(3, 16), (5, 8), (7, 6)])
def test_zeta_against_oracle(p, L):
    ctx = make_context(p, N=(p - 1) * L - 2)
    assert to_padic(ctx, PiRing(p, L).zeta()) == zeta_p(ctx)


def test_dwork_theta_rejects_non_teichmuller():
    ctx = make_context(5)
    with pytest.raises(ValueError):
        dwork_theta(ctx(2))


def test_dwork_coefficients_length():
    ctx = make_context(5, N=20)
    assert len(dwork_coefficients(ctx)) == dwork_truncation(5, 20)


# -- Gamma_p


def _naive_gamma(n: int, p: int) -> int:
    # (-1)^n prod_{j < n, p | j excluded} j
    out = 1
    for j in range(1, n):
        if j % p:
            out *= j
    return (-1) ** n * out


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_gamma_integers(p):
    for M in (1, 2, 4):
        for n in range(0, min(60, p ** (M + 2))):
            expect = _naive_gamma(n, p) % p**M if n else 1 % p**M
            assert gamma_integer(n, p, M) % p**M == expect


def test_gamma_small_values():
    ctx = make_context(5, N=20)
    assert padic_gamma(ctx, 0) == 1
    assert padic_gamma(ctx, 1) == -1
    assert padic_gamma(ctx, 2) == 1
    assert padic_gamma(ctx, 3) == -2


@pytest.mark.parametrize("p", [3, 5, 7])
def test_gamma_functional_equation(p):
    ctx = make_context(p, N=20)
    for num in range(-6, 13):
        for den in (1, 2, p - 1, p + 1):
            if den % p == 0:
                continue
            x = Fraction(num, den)
            lhs = padic_gamma(ctx, x + 1)
            g = padic_gamma(ctx, x)
            unit = (x.numerator * pow(x.denominator, -1, p)) % p != 0
            rhs = -ctx(x) * g if unit else -g
            assert lhs == rhs


@pytest.mark.parametrize("a", range(0, 4))
def test_gamma_reflection(a):
    p = 5
    ctx = make_context(p, N=20)
    x = Fraction(a, p - 1)
    x0 = (x.numerator * pow(x.denominator, -1, p)) % p or p  # representative in 1..p
    assert padic_gamma(ctx, x) * padic_gamma(ctx, 1 - x) == (-1) ** x0


def test_gamma_rejects_p_denominator():
    with pytest.raises(ValueError):
        padic_gamma(make_context(5), Fraction(1, 5))


def test_factorial_consistency():
    # Gamma_p(n+1) for n < p is (-1)^(n+1) n!
    p = 7
    ctx = make_context(p, N=20)
    for n in range(p):
        assert padic_gamma(ctx, n + 1) == (-1) ** (n + 1) * math.factorial(n)


def test_from_zq_rejects_long_input():
    with pytest.raises(ValueError):
        PadicNumber.from_zq(make_context(5), [0, 1], 4)
