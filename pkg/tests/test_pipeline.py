import random

import pytest

from onepoint import formats
from onepoint.certify import EXACT
from onepoint.errors import NotHomogeneous, PointOnDivisor, SearchFailed
from onepoint.field import FieldElement, fq_make
from onepoint.maps import abhyankar_degree, abhyankar_map, projective_points
from onepoint.pipeline import (
    SearchPolicy,
    coordinate_search,
    make_triple,
    rebuild,
    run,
    verify_chain,
)
from onepoint.poly import parse_poly

F2, F4, F16 = fq_make(2), fq_make(2, 2), fq_make(2, 4)
CONE = "z0^2 + z0*z1 + z1^2"


def triple(F, cone=CONE, point=(0, 1), n=1):
    return make_triple(n, F, parse_poly(cone, F, nvars=n + 1), point)


@pytest.fixture(scope="module")
def worked():
    return run(triple(F16), seed=0)


def test_make_triple_examples():
    T = triple(F2)
    assert T.cone.eval(T.point) == F2.one
    omega = FieldElement(F4, 2)
    with pytest.raises(PointOnDivisor):
        triple(F4, point=(F4.one, omega))
    with pytest.raises(NotHomogeneous):
        triple(F2, cone="z0^2 + z1")


def test_make_triple_moves_point_off_last_hyperplane():
    T = triple(F2, cone="z0 + z1", point=(1, 0))
    assert T.point[-1] and T.origin is not None
    assert not T.violations()


def test_worked_example(worked):
    chain, cert = worked
    assert chain.degrees == [4]
    assert chain.composite.degree == 12
    assert cert.verdict
    assert all(r.method in (EXACT, "evaluation", "exact polynomial identity") for r in cert.composite)
    assert chain.final_point()[-1]


def test_degree_bookkeeping(worked):
    chain, _ = worked
    prod = 1
    for d in chain.degrees:
        prod *= d
    assert chain.composite.degree == prod * abhyankar_degree(chain.n, chain.field.p)


def test_recomposition_at_random_points(worked):
    chain, _ = worked
    rng = random.Random(7)
    pts = list(projective_points(chain.field, chain.n))
    for x in rng.sample(pts, 12):
        y = x
        for s in chain.steps:
            y = s.effective_map().apply_ints(y)
        y = chain.abhyankar.apply_ints(y)
        z = chain.composite.apply_ints(x)
        # proportional as projective points
        F = chain.field
        assert F.mul(y[0], z[1]) == F.mul(y[1], z[0])


def test_composite_sends_divisor_into_H(worked):
    chain, _ = worked
    F = chain.field
    cone = chain.input.cone
    for x in projective_points(F, 1):
        if not cone.eval_ints(x):
            assert not chain.composite.coords[-1].eval_ints(x)


@pytest.mark.parametrize("F, tally", [(F2, {"b": 2, "d": 4}), (F4, {"a": 72, "b": 36, "c": 36, "d": 36})])
def test_small_fields_fail(F, tally):
    with pytest.raises(SearchFailed) as info:
        coordinate_search(triple(F), 0, SearchPolicy(max_extensions=0))
    assert info.value.tally == tally


def test_escalation_doubles_degree():
    chain, cert = run(triple(F2), seed=0)
    assert [F.k for F in chain.field_history] == [1, 2, 4]
    assert cert.verdict and chain.composite.degree == 12


def test_determinism(worked):
    chain, _ = worked
    again, _ = run(triple(F16), seed=0)
    assert formats.dumps_chain(chain) == formats.dumps_chain(again)


def test_hyperplane_at_infinity_skips_to_abhyankar():
    chain, cert = run(triple(F2, cone="z1", point=(1, 1)), seed=0)
    assert cert.verdict
    assert all(s.skipped for s in chain.steps)
    assert chain.composite == abhyankar_map(1, 2, chain.field)


def test_plane_hyperplane_example():
    F = F4
    a = FieldElement(F, 2)
    T = make_triple(2, F, parse_poly("z0 + z1 + z2", F, nvars=3), (F.one, F.one, a))
    chain, cert = run(T, seed=0)
    assert cert.verdict
    assert chain.composite.degree == chain.degrees[0] * chain.degrees[1] * 7
    assert chain.final_point()[-1]


def test_verify_and_tamper(worked):
    chain, _ = worked
    assert verify_chain(chain).verdict
    text = formats.dumps_chain(chain)
    bad = formats.loads_chain(text.replace("(a+1)*z0^12", "a*z0^12", 1))
    cert = verify_chain(bad)
    assert not cert.verdict and "composite" in cert.mismatches


def test_rebuild_matches(worked):
    chain, _ = worked
    again = rebuild(chain)
    assert again.composite == chain.composite
    assert [s.map for s in again.steps] == [s.map for s in chain.steps]


def test_user_coordinates_after_initial_permutation():
    F = F4
    cone = parse_poly("z0 + z1", F, nvars=2)
    T = make_triple(1, F, cone, (1, 0))
    chain, cert = run(T, seed=0)
    assert cert.verdict and chain.degrees == [2]
    f = chain.user_composite()
    assert f.apply((F.one, F.zero))[-1]
    for x in projective_points(F, 1):
        if not cone.eval_ints(x):
            assert not f.coords[-1].eval_ints(x)
