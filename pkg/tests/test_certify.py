import itertools
import json

import pytest
from hypothesis import given, strategies as st

from onepoint import upoly
from onepoint.certify import (
    EXACT,
    SAMPLING,
    abhyankar_checks,
    chart_jacobian,
    check_divisor_into_H,
    check_divisor_link,
    check_etale_off_H,
    check_point_off_H,
    fiber_sample,
    zero_locus_contained,
)
from onepoint.errors import DegenerateJacobian, DivisorZero
from onepoint.field import fq_make
from onepoint.maps import abhyankar_map, parse_projmap
from onepoint.poly import MPoly, parse_poly

F2, F3, F4 = fq_make(2), fq_make(3), fq_make(2, 2)


def P(text, F, nvars=2):
    return parse_poly(text, F, nvars=nvars)


@pytest.mark.parametrize(
    "J, h, expected",
    [
        ("z0^2*z1", "z0*z1", True),
        ("z0^3", "z0", True),
        ("z0 + z1", "z0", False),
        ("z0*(z0 + 1)", "z0^2 + z0", True),
        ("z0^2 + z1^2 + 1", "z0 + z1 + 1", True),  # a square in characteristic 2
        ("1", "z0", True),
    ],
)
def test_containment_examples(J, h, expected):
    ok, method, details = zero_locus_contained(P(J, F2), P(h, F2))
    assert ok is expected and method == EXACT


def test_containment_of_zero_polynomial_is_an_error():
    with pytest.raises(DivisorZero):
        zero_locus_contained(MPoly.zero(F2, 2), P("z0", F2))


@st.composite
def poly_pair(draw):
    F = F3

    def one():
        items = draw(st.lists(st.tuples(st.tuples(st.integers(0, 2), st.integers(0, 2)),
                                        st.integers(1, 2)), min_size=1, max_size=4))
        return MPoly.from_terms(F, 2, items)

    return one(), one()


@given(poly_pair())
def test_containment_agrees_with_rational_points(pair):
    """A rational witness outside V(h) refutes containment; the exact
    method must never claim otherwise."""
    J, h = pair
    if not J.terms:
        return
    ok, method, _ = zero_locus_contained(J, h)
    E = fq_make(3, 2)
    JE, hE = J.embed(E), h.embed(E)
    witness = any(not JE.eval_ints(x) and hE.eval_ints(x)
                  for x in itertools.product(range(E.q), repeat=2))
    if witness:
        assert not ok
    if method == EXACT and ok:
        assert not witness


def test_sampling_fallback_is_labelled():
    J = P("z0^5 + z1^3 + z0*z1 + 1", F3)
    h = P("z0 + z1^7", F3)
    ok, method, details = zero_locus_contained(J, h, cap=4)
    assert method == SAMPLING and details["probabilistic"]
    assert ok is False


def test_abhyankar_is_etale_off_H():
    for n, p in [(1, 2), (1, 3), (2, 2)]:
        rec = check_etale_off_H(abhyankar_map(n, p))
        assert rec.passed and rec.method == EXACT


def test_frobenius_has_degenerate_jacobian():
    frob = parse_projmap(["z0^2", "z1^2"], F2)
    with pytest.raises(DegenerateJacobian):
        check_etale_off_H(frob)


def test_ramified_map_fails():
    # t -> t^2 + t in characteristic 3 ramifies at t = 1, which is not above infinity
    f = parse_projmap(["z0^2 + z0*z1", "z1^2"], F3)
    assert not check_etale_off_H(f).passed


def test_chart_jacobian_of_abhyankar_n1():
    J, h = chart_jacobian(abhyankar_map(1, 2), 1)
    # w = (t^3 + 1) / t on z1 = 1; numerator of the derivative is t^3 + ... in char 2
    assert J.terms and h == P("z0", F2)


def test_divisor_and_point_conclusions():
    f = abhyankar_map(1, 2)
    assert check_divisor_into_H(P("z0", F2), f).passed
    assert not check_divisor_into_H(P("z0 + z1", F2), f).passed
    assert check_point_off_H(f, (1, 1)).passed
    assert not check_point_off_H(f, (0, 1)).passed


def test_divisor_link():
    f = abhyankar_map(1, 2)
    zn = P("z1", F2)
    assert check_divisor_link(f, P("z0*z1", F2), zn).passed
    assert not check_divisor_link(f, P("z0 + z1", F2), zn).passed


@pytest.mark.parametrize("n, p", [(1, 2), (2, 2), (1, 3), (2, 3)])
def test_abhyankar_checks_pass(n, p):
    recs = abhyankar_checks(n, p)
    assert [r.name for r in recs] == ["homogeneity", "term_counts", "base_points", "jacobian_monomial"]
    assert all(r.passed for r in recs)


def test_fibers_of_abhyankar_have_p_plus_one_points():
    stats = fiber_sample(abhyankar_map(1, 2), 4, targets=16, seed=1)
    assert stats["field"] == "2^4"
    assert stats["geometric_sizes"] == [3] * 16
    assert all(0 <= s <= 3 for s in stats["rational_sizes"])


def test_fiber_field_contains_the_map_field():
    f = abhyankar_map(1, 2, F4)
    assert fiber_sample(f, 3, targets=4)["field"] == "2^6"


def brute_distinct_roots(F, h, ext):
    E = fq_make(F.p, F.k * ext)
    from onepoint.field import embed_int

    g = [embed_int(c, F, E) for c in h]
    return sum(1 for v in range(E.q) if upoly.evaluate(E, g, v) == 0)


@given(st.lists(st.integers(0, 1), min_size=2, max_size=5))
def test_geometric_root_count_matches_splitting_field(coeffs):
    h = upoly.trim(coeffs + [1])
    d = upoly.deg(h)
    if d < 1:
        return
    # every root of a degree <= 5 polynomial over F_2 lies in F_(2^lcm(1..d)) when lcm <= 12
    ext = {1: 1, 2: 2, 3: 6, 4: 12}.get(d)
    if ext is None:
        return
    assert upoly.geometric_root_count(F2, h) == brute_distinct_roots(F2, h, ext)


def test_certificate_json_is_stable():
    from onepoint.certify import Certificate, CheckRecord

    cert = Certificate([], [CheckRecord("x", True, EXACT, {"a": 1})], None, True, None)
    data = json.loads(cert.to_json())
    assert data["verdict"] == "pass" and data["composite"][0]["name"] == "x"
    assert cert.to_json() == cert.to_json()
