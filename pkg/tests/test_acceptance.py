"""Acceptance criteria 1-7, each timed against its budget.

Every test reports one ``criterion N ...: PASS`` or ``FAIL`` line.
"""

import json
import random
import time
from contextlib import contextmanager

import pytest

from onepoint import cli, formats, upoly
from onepoint.additive import (
    additive_multiple,
    fp_rank,
    is_additive,
    mobius_search,
    span_product_oracle,
)
from onepoint.certify import EXACT, SAMPLING, abhyankar_checks, check_etale_off_H, fiber_sample
from onepoint.errors import DegenerateJacobian, Exhausted, SearchFailed
from onepoint.field import FieldElement, fq_make
from onepoint.maps import abhyankar_degree, abhyankar_map, parse_projmap
from onepoint.pipeline import SearchPolicy, coordinate_search, run
from onepoint.poly import MPoly, divides, format_poly, parse_poly

WORKED = "onepoint-format: 1\nfield: 2^4\nn: 1\ncone: z0^2 + z0*z1 + z1^2\npoint: 0, 1\n"


@contextmanager
def criterion(request, number, title, limit):
    reporter = request.config.pluginmanager.get_plugin("terminalreporter")
    start = time.perf_counter()
    passed = False
    try:
        yield
        elapsed = time.perf_counter() - start
        assert elapsed < limit, f"took {elapsed:.2f} s, budget {limit} s"
        passed = True
    finally:
        elapsed = time.perf_counter() - start
        line = (f"criterion {number} ({title}): {'PASS' if passed else 'FAIL'} "
                f"in {elapsed:.2f} s (budget {limit} s)")
        print(line)
        if reporter is not None:
            reporter.write_line(line)


def hand_display(p):
    a, b, c = p * p + p + 1, p + 1, p * p
    return [
        f"g0 = z0^{a} + z1^{a} + z2^{a}",
        f"g1 = z0^{b}*z1^{c} + z0^{b}*z2^{c} + z1^{b}*z2^{c}",
        f"g2 = z0*z1^{p}*z2^{c}",
    ]


def test_criterion_1_display_reproduction(request, capsys):
    with criterion(request, 1, "n = 2 display reproduction", 1.0):
        for p in (2, 3):
            code = cli.main(["abhyankar", "-n", "2", "-p", str(p)])
            out = capsys.readouterr().out.splitlines()
            assert code == 0
            assert out == [formats.HEADER] + hand_display(p)


def random_monic(rng):
    p = rng.choice([2, 3, 5])
    m = rng.choice([k for k in (1, 2, 3) if p**k <= 125])
    F = fq_make(p)
    P = MPoly.var(F, 1, 0, m)
    for i in range(m):
        c = rng.randrange(p)
        if c:
            P = P + MPoly.var(F, 1, 0, i).scale(FieldElement(F, c))
    return P


def random_homogeneous(rng):
    p = rng.choice([2, 3, 5])
    m = rng.choice([k for k in (1, 2, 3) if p**k <= 125])
    F = fq_make(p)
    z0, z1 = MPoly.var(F, 2, 0), MPoly.var(F, 2, 1)
    P = z0.pow(m)
    for i in range(1, m + 1):
        c = rng.randrange(p)
        if c:
            P = P + (z0.pow(m - i) * z1.pow(i)).scale(FieldElement(F, c))
    return P


def test_criterion_2_canonical_multiple_suite(request):
    rng = random.Random(20261017)
    with criterion(request, 2, "canonical additive multiple suite", 30.0):
        for _ in range(100):
            P = random_monic(rng)
            p, m = P.field.p, P.degree_in(0)
            Q = additive_multiple(P).to_mpoly()
            assert divides(P, Q)
            assert is_additive(Q)
            assert Q.degree_in(0) == p**m
            assert Q.monic() == span_product_oracle(P).monic()
        for _ in range(25):
            P = random_homogeneous(rng)
            p, m = P.field.p, P.degree_in(0)
            Q = additive_multiple(P, 0).to_mpoly()
            assert Q.is_homogeneous() and Q.homogeneous_degree() == p**m
            assert divides(P, Q)


def test_criterion_3_abhyankar_invariants(request):
    with criterion(request, 3, "Abhyankar invariants", 60.0):
        for n in (1, 2, 3):
            for p in (2, 3):
                records = {r.name: r for r in abhyankar_checks(n, p)}
                assert all(r.passed for r in records.values()), (n, p)
                assert set(records["homogeneity"].details["degrees"]) == {abhyankar_degree(n, p)}
                assert records["base_points"].details["field"] == f"{p}^2"


def test_criterion_4_end_to_end(request):
    with criterion(request, 4, "end-to-end instance over F_16", 60.0):
        spec = formats.loads_triple(WORKED)
        chain, cert = run(spec.to_triple(), seed=0)
        assert chain.composite.degree == 12 == chain.degrees[0] * 3
        assert cert.verdict
        by_name = {r.name: r for r in cert.composite}
        for name in ("divisor_into_H", "point_off_H", "etale_off_H"):
            assert by_name[name].passed
        assert by_name["divisor_into_H"].method == EXACT
        assert by_name["etale_off_H"].method == EXACT
        methods = [r.method for r in cert.composite]
        methods += [c["method"] for s in cert.per_step for c in s["checks"]]
        assert SAMPLING not in methods
        for field in ("2", "2^2"):
            small = formats.loads_triple(WORKED.replace("2^4", field)).to_triple()
            with pytest.raises(SearchFailed):
                coordinate_search(small, 0, SearchPolicy(max_extensions=0))


def test_criterion_5_fiber_sizes(request):
    with criterion(request, 5, "geometric fibers of the n = 1 map", 30.0):
        stats = fiber_sample(abhyankar_map(1, 2), 6, targets=32, seed=0)
        assert stats["field"] == "2^6" and stats["targets"] == 32
        assert stats["geometric_sizes"] == [3] * 32
        frobenius = parse_projmap(["z0^2", "z1^2"], fq_make(2))
        with pytest.raises(DegenerateJacobian):
            check_etale_off_H(frobenius)


def test_criterion_6_mobius_search(request):
    with criterion(request, 6, "Moebius search", 10.0):
        F2, F8 = fq_make(2), fq_make(2, 3)
        rng = random.Random(6)
        cubics = [c for c in ([1, 1, 0, 1], [1, 0, 1, 1]) if upoly.is_irreducible(F2, c)]
        cubic = rng.choice(cubics)
        roots = [FieldElement(F8, v) for v in range(F8.q)
                 if upoly.evaluate(F8, cubic, v) == 0]
        assert len(roots) == 3
        a, b, c, d = mobius_search(roots, seed=0, max_trials=1000)
        images = [(a + b * x) / (c + d * x) for x in roots]
        assert fp_rank(images) == 3
        F4 = fq_make(2, 2)
        with pytest.raises(Exhausted) as info:
            mobius_search([FieldElement(F4, v) for v in (1, 2, 3)], field_of_coeffs=F2, seed=0)
        assert info.value.trials == 2**4


def _tamper(poly_text, F, nvars, index):
    f = parse_poly(poly_text, F, nvars=nvars)
    exps = sorted(f.terms)[index]
    terms = dict(f.terms)
    terms[exps] = F.add(terms[exps], 1)
    if not terms[exps]:
        del terms[exps]
    return format_poly(MPoly(F, nvars, terms))


def _polynomial_slots(data):
    """(path, text) for every polynomial stored in a chain document."""
    yield ("input", "cone"), data["input"]["cone"]
    for j, text in enumerate(data["composite"]):
        yield ("composite", j), text
    for j, text in enumerate(data["abhyankar"]):
        yield ("abhyankar", j), text
    for k, step in enumerate(data["steps"]):
        for j, text in enumerate(step["map"]):
            yield ("steps", k, "map", j), text
        for j, text in enumerate(step["additive"] or []):
            yield ("steps", k, "additive", j), text
        if step["r0"] is not None:
            yield ("steps", k, "r0"), step["r0"]
        yield ("steps", k, "next", "cone"), step["next"]["cone"]


def _set(data, path, value):
    target = data
    for key in path[:-1]:
        target = target[key]
    target[path[-1]] = value


def test_criterion_7_round_trip(request, tmp_path, capsys):
    with criterion(request, 7, "cover and verify round trip", 10.0):
        triple_file = tmp_path / "worked.txt"
        triple_file.write_text(WORKED)
        chain_file = tmp_path / "chain.json"
        assert cli.main(["cover", "--input", str(triple_file), "--out", str(chain_file)]) == 0
        capsys.readouterr()
        text = chain_file.read_text()
        assert formats.dumps_chain(formats.loads_chain(text)) == text
        assert cli.main(["verify", "--chain", str(chain_file), "--json"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["verdict"] == "pass" and report["reserialization_identical"]

        header, body = text.split("\n", 1)
        data = json.loads(body)
        F = fq_make(2, 4)
        nvars = data["n"] + 1
        tampered = 0
        for path, poly_text in _polynomial_slots(data):
            if poly_text == "0":
                continue
            for index in range(len(parse_poly(poly_text, F, nvars=nvars).terms)):
                copy = json.loads(body)
                _set(copy, path, _tamper(poly_text, F, nvars, index))
                bad = tmp_path / "bad.json"
                bad.write_text(header + "\n" + json.dumps(copy, sort_keys=True, indent=2) + "\n")
                code = cli.main(["verify", "--chain", str(bad)])
                out = capsys.readouterr().out
                assert code == cli.EXIT_CERT, (path, index, out)
                assert "verdict: fail" in out
                tampered += 1
        assert tampered >= 30
