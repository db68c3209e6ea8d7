import itertools

import pytest
from hypothesis import given, strategies as st

from onepoint.additive import (
    additive_multiple,
    find_roots,
    fp_lin_indep,
    generic_additive,
    is_additive,
    mobius_search,
    moore_det,
    product_display,
    span_product_oracle,
)
from onepoint.errors import DegreeTooLarge, Exhausted, NonConstantLeadingCoeff, ZeroPolynomial
from onepoint.field import FieldElement, fq_make
from onepoint.poly import MPoly, divides, parse_poly


def upoly(text, p):
    return parse_poly(text, fq_make(p), names=("t",))


def brute_independent(vals):
    """No nontrivial F_p-combination vanishes, by enumeration."""
    F = vals[0].field
    for coeffs in itertools.product(range(F.p), repeat=len(vals)):
        if any(coeffs):
            acc = F.zero
            for c, v in zip(coeffs, vals):
                acc = acc + v * c
            if not acc:
                return False
    return True


@pytest.mark.parametrize(
    "p, text, expected, r0",
    [
        (2, "t^2+t+1", "t^4 + t", "1"),
        (3, "t+1", "t^3 + 2*t", "2"),
        (2, "t", "t^2", "0"),
    ],
)
def test_examples(p, text, expected, r0):
    Q = additive_multiple(upoly(text, p))
    assert Q.format(["t"]) == expected
    assert str(Q.r0) == r0


@st.composite
def monic_univariate(draw):
    p = draw(st.sampled_from([2, 3, 5]))
    max_deg = {2: 3, 3: 3, 5: 2}[p]
    m = draw(st.integers(1, max_deg))
    coeffs = draw(st.lists(st.integers(0, p - 1), min_size=m, max_size=m))
    F = fq_make(p)
    P = MPoly.var(F, 1, 0, m)
    for i, c in enumerate(coeffs):
        if c:
            P = P + MPoly.var(F, 1, 0, i).scale(FieldElement(F, c))
    return P


@given(monic_univariate())
def test_canonical_multiple_properties(P):
    Q = additive_multiple(P)
    Qm = Q.to_mpoly()
    p, m = P.field.p, P.degree_in(0)
    assert Q.degree == p**m
    assert divides(P, Qm)
    assert is_additive(Qm)
    assert Qm.monic() == span_product_oracle(P).monic()


@given(st.sampled_from([2, 3]), st.lists(st.integers(0, 8), min_size=2, max_size=2))
def test_homogeneous_input_gives_homogeneous_multiple(p, cs):
    F = fq_make(p, 2)
    a0, a1 = (FieldElement(F, c % F.q) for c in cs)
    z0, z1 = MPoly.var(F, 2, 0), MPoly.var(F, 2, 1)
    P = z0 * z0 + (z0 * z1).scale(a0) + (z1 * z1).scale(a1)
    Q = additive_multiple(P, 0).to_mpoly()
    assert Q.is_homogeneous() and Q.homogeneous_degree() == p**2
    assert divides(P, Q)


def test_multivariate_coefficients_are_polynomials():
    F = fq_make(2)
    P = parse_poly("z0^2 + z1*z0 + z2^2", F)
    Q = additive_multiple(P, 0)
    Qm = Q.to_mpoly()
    assert divides(P, Qm)
    assert is_additive(Qm, 0)
    assert Q.degree == 4 and Qm.degree_in(0) == 4
    assert not any(j == 0 for c in Q.coeffs for j in c.variables())


def test_error_cases():
    F = fq_make(2)
    with pytest.raises(ZeroPolynomial):
        additive_multiple(MPoly.zero(F, 1))
    with pytest.raises(NonConstantLeadingCoeff):
        additive_multiple(parse_poly("z1*z0^2 + 1", F), 0)
    with pytest.raises(DegreeTooLarge):
        additive_multiple(upoly("t^9 + 1", 2))


@pytest.mark.parametrize("p, m", [(2, 1), (2, 2), (3, 1), (2, 3), (3, 2)])
def test_symmetric_rewriting_matches_literal_product(p, m):
    """Substituting elementary symmetric functions back gives the product."""
    from onepoint.poly import elementary_symmetric

    display = product_display(p, m)
    F = display.field
    x = m  # the product uses t_1..t_m then x
    reduced = generic_additive(p, m)
    s = [elementary_symmetric(F, m + 1, j, list(range(m))) for j in range(1, m + 1)]
    rebuilt = MPoly.zero(F, m + 1)
    for i, r in enumerate(reduced):
        rebuilt = rebuilt + r.subst(s, cap=None) * MPoly.var(F, m + 1, x, p**i)
    rebuilt = rebuilt + MPoly.var(F, m + 1, x, p**m)
    assert rebuilt == display


def test_find_roots_splits():
    E, roots = find_roots(upoly("t^3+t+1", 2))
    assert E.q == 8 and len(set(roots)) == 3


@st.composite
def value_lists(draw):
    F = draw(st.sampled_from([fq_make(2, 3), fq_make(2, 4), fq_make(3, 2)]))
    r = draw(st.integers(1, 3))
    vals = draw(st.lists(st.integers(0, F.q - 1), min_size=r, max_size=r))
    return [FieldElement(F, v) for v in vals]


@given(value_lists())
def test_moore_determinant_detects_independence(vals):
    assert bool(moore_det(vals)) == brute_independent(vals)
    assert fp_lin_indep(vals) == brute_independent(vals)


def test_moore_determinant_small_case():
    F = fq_make(2, 2)
    a = FieldElement(F, 2)
    # det [[1, 1], [a, a^2]] = a^2 - a = 1 in F_4
    assert moore_det([F.one, a]) == F.one


def test_mobius_search_finds_independent_images():
    F8 = fq_make(2, 3)
    roots = [FieldElement(F8, v) for v in find_roots(upoly("t^3+t+1", 2))[1]]
    a, b, c, d = mobius_search(roots, seed=0, max_trials=1000)
    images = [(a + b * x) / (c + d * x) for x in roots]
    assert brute_independent(images)


def test_mobius_search_exhausts_impossible_case():
    F4 = fq_make(2, 2)
    vals = [FieldElement(F4, v) for v in (1, 2, 3)]
    with pytest.raises(Exhausted) as info:
        mobius_search(vals, field_of_coeffs=fq_make(2), seed=0)
    assert info.value.trials == 16
