import pytest
from hypothesis import given, strategies as st

from padic_epsilon.finite_geometry import (
    ClosedPoint,
    FiniteField,
    closed_points,
    count_irreducibles,
    finite_field,
    fq_poly_eval,
    is_irreducible,
    least_irreducible,
    mobius,
    residues_of_point,
    tower,
    trace_norm,
)

FIELDS = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2), (7, 1)]


def test_least_irreducible_is_lexicographic():
    assert least_irreducible(2, 2) == (1, 1, 1)
    assert least_irreducible(3, 2) == (1, 0, 1)
    # nothing smaller in code order is irreducible
    p, m = 3, 2
    best = least_irreducible(p, m)
    for code in range(p**m):
        poly = tuple((code // p**i) % p for i in range(m)) + (1,)
        if poly == best:
            break
        assert not is_irreducible(poly, p)


@pytest.mark.parametrize("p,m", FIELDS)
def test_field_axioms_exhaustive_small(p, m):
    F = finite_field(p, m)
    for x in range(F.size):
        assert F.add(x, F.neg(x)) == 0
        if x:
            assert F.mul(x, F.inv(x)) == 1
            assert F.pow(x, F.order) == 1
        assert F.frobenius(x, m) == x


@given(st.sampled_from(FIELDS), st.data())
def test_field_distributive(pm, data):
    F = finite_field(*pm)
    x, y, z = (data.draw(st.integers(0, F.size - 1)) for _ in range(3))
    assert F.mul(F.add(x, y), z) == F.add(F.mul(x, z), F.mul(y, z))


def test_trace_f4_over_f2():
    F = finite_field(2, 2)
    g = F.primitive_element
    assert F.add(g, F.pow(g, 2)) == 1
    assert F.trace(g) == 1


def test_trace_norm_identity_tower():
    F = finite_field(5, 1)
    for x in F.elements():
        assert trace_norm(x, F, "trace") == x
        assert trace_norm(x, F, "norm") == x


def test_trace_norm_zero():
    F = finite_field(3, 4)
    base = finite_field(3, 2)
    assert trace_norm(F(0), base, "trace").code == 0
    assert trace_norm(F(0), base, "norm").code == 0


def test_trace_norm_rejects_non_subfield():
    with pytest.raises(ValueError):
        trace_norm(finite_field(2, 3)(1), finite_field(2, 2))


@pytest.mark.parametrize("p,f,n", [(2, 1, 3), (2, 2, 2), (3, 1, 4), (3, 2, 2), (5, 1, 2), (5, 2, 2)])
def test_trace_transitivity(p, f, n):
    tw = tower(p, f, n)
    base, top = tw.base, tw.top
    for y in range(0, top.size, max(1, top.size // 200)):
        assert top.trace(y) == base.trace(tw.trace(y))


@pytest.mark.parametrize("p,f,n", [(2, 2, 2), (3, 2, 2), (5, 1, 3), (2, 1, 4)])
def test_frobenius_fixes_exactly_the_base(p, f, n):
    tw = tower(p, f, n)
    top, q = tw.top, p**f
    fixed = {y for y in range(top.size) if top.pow(y, q) == y}
    assert fixed == {tw.embed(b) for b in range(q)}


@pytest.mark.parametrize("p,f,n", [(3, 2, 2), (2, 2, 3), (5, 2, 2)])
def test_embedding_is_a_homomorphism(p, f, n):
    tw = tower(p, f, n)
    B, T = tw.base, tw.top
    for x in range(B.size):
        for y in range(B.size):
            assert tw.embed(B.mul(x, y)) == T.mul(tw.embed(x), tw.embed(y))
            assert tw.embed(B.add(x, y)) == T.add(tw.embed(x), tw.embed(y))


def test_norm_generator_generates():
    for p, f, n in [(5, 1, 3), (3, 2, 2), (7, 1, 2)]:
        tw = tower(p, f, n)
        assert tw.base.multiplicative_order(tw.norm_generator) == p**f - 1


# -- closed points


def test_closed_points_q3_degree1():
    pts = closed_points(finite_field(3, 1), 1)
    # x, x + 1, x + 2 (i.e. x - 2, x - 1), then infinity
    assert [x.to_string() for x in pts] == ["0,1", "1,1", "2,1", "inf"]


def test_closed_points_q2_degree2():
    pts = closed_points(finite_field(2, 1), 2)
    assert {x.to_string() for x in pts} == {"0,1", "1,1", "1,1,1", "inf"}


def test_closed_points_q2_degree3():
    pts = closed_points(finite_field(2, 1), 3)
    assert sum(1 for x in pts if x.degree == 3) == 2


@pytest.mark.parametrize("q,D", [(2, 6), (3, 4), (4, 3), (5, 3), (9, 2)])
def test_necklace_counts(q, D):
    p = {2: 2, 4: 2, 3: 3, 9: 3, 5: 5}[q]
    f = {2: 1, 4: 2, 3: 1, 9: 2, 5: 1}[q]
    F = finite_field(p, f)
    pts = closed_points(F, D)
    for d in range(1, D + 1):
        n_d = sum(1 for x in pts if not x.is_infinity and x.degree == d)
        assert n_d == count_irreducibles(q, d)
        assert d * n_d == sum(mobius(d // e) * q**e for e in range(1, d + 1) if d % e == 0)
        assert sum(e * count_irreducibles(q, e) for e in range(1, d + 1) if d % e == 0) == q**d


@pytest.mark.parametrize("p,f,n", [(2, 1, 4), (3, 1, 3), (2, 2, 2), (5, 1, 2)])
def test_frobenius_orbit_partition(p, f, n):
    F = finite_field(p, f)
    seen = []
    for x in closed_points(F, n):
        if x.is_infinity or n % x.degree:
            continue
        roots = residues_of_point(x, n)
        assert len(roots) == x.degree
        seen.extend(r.code for r in roots)
    assert sorted(seen) == list(range(p ** (f * n)))


def test_residues_linear_and_x():
    F = finite_field(5, 1)
    assert [r.code for r in residues_of_point(ClosedPoint.rational(F, 3), 1)] == [3]
    assert [r.code for r in residues_of_point(ClosedPoint.rational(F, 0), 3)] == [0]


def test_residues_quadratic_over_f2_conjugate():
    F = finite_field(2, 1)
    x = ClosedPoint(F, (1, 1, 1))
    r = residues_of_point(x, 2)
    top = r[0].field
    assert len(r) == 2
    assert top.pow(r[0].code, 2) == r[1].code
    for y in r:
        assert fq_poly_eval(top, x.poly, y.code) == 0


def test_residues_reject_infinity():
    with pytest.raises(ValueError):
        residues_of_point(ClosedPoint.infinity(finite_field(3, 1)), 1)


def test_point_text_roundtrip():
    F = finite_field(3, 2)
    for x in closed_points(F, 2):
        assert ClosedPoint.parse(F, x.to_string()) == x


@pytest.mark.parametrize("text", ["0,0,1", "1,2", "abc"])
def test_point_parse_rejects(text):
    with pytest.raises(ValueError):
        ClosedPoint.parse(finite_field(3, 1), text)


def test_explicit_modulus_field():
    F = FiniteField(3, 2, (2, 1, 1))  # x^2 + x + 2 is irreducible over F_3
    assert F.multiplicative_order(F.primitive_element) == 8
    with pytest.raises(ValueError):
        FiniteField(3, 2, (1, 0, 1, 0))
