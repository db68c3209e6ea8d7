"""Independent checks that a map, or a whole chain, is a good cover.

Three properties are certified for f : P^n -> P^n with H = {w_n = 0}:
the marked divisor lands in H, the marked point does not, and f is étale
off f^{-1}(H).  Containment of zero loci is decided exactly by testing
whether J divides a power of h; sampling is only a fallback when the
powers outgrow the degree cap, and records say so.
"""

from __future__ import annotations

import itertools
import json
import random
from math import comb, lcm
from dataclasses import asdict, dataclass, field as dc_field

from . import upoly
from .errors import (
    DegenerateJacobian,
    DivisorZero,
    EnumerationCapExceeded,
)
from .field import extension, format_field_spec, fq_make
from .maps import ProjMap, abhyankar_degree, abhyankar_map, build_composite, projective_points
from .poly import DEGREE_CAP, MPoly, det, divides, jacobian_det, remainder

EXACT = "exact divisibility"
SAMPLING = "point sampling"
EVALUATION = "evaluation"
SAMPLE_FIELD_CAP = 4096


@dataclass
class CheckRecord:
    name: str
    passed: bool
    method: str
    details: dict = dc_field(default_factory=dict)

    def to_dict(self):
        return asdict(self)


# -- zero-locus containment -------------------------------------------------

def _slice_points(F_poly: MPoly, count: int, rng, max_ext=4):
    """Points on V(F_poly) over a small extension: fix all variables but one
    at random and solve the univariate slice by exhaustive search."""
    base = F_poly.field
    e = 1
    while e < max_ext and base.q ** (e + 1) <= SAMPLE_FIELD_CAP:
        e += 1
    E = extension(base, e) if e > 1 else base
    G = F_poly.embed(E)
    elems = list(range(E.q))
    var = max(G.variables(), key=G.degree_in)
    out = []
    attempts = 0
    while len(out) < count and attempts < 50 * count:
        attempts += 1
        pt = [rng.choice(elems) for _ in range(G.nvars)]
        for t in elems:
            pt[var] = t
            if not G.eval_ints(pt) and any(pt):
                out.append(tuple(pt))
                if len(out) >= count:
                    break
    return E, out


def zero_locus_contained(J: MPoly, h: MPoly, cap=DEGREE_CAP, samples=64, seed=0):
    """Decide V(J) subset of V(h).  Returns (passed, method, details).

    Exactly: J | h^e for some e <= deg J.  h^e is only formed modulo J, by
    repeated squaring of normal forms, and e runs over powers of two.
    """
    if not J.terms:
        raise DivisorZero("the zero polynomial cuts out everything")
    dj = J.total_degree
    if dj == 0:
        return True, EXACT, {"exponent": 0, "degree": 0}
    r, e = remainder(h, J), 1
    while True:
        if not r.terms:
            return True, EXACT, {"exponent": e, "degree": dj}
        if e >= dj:
            return False, EXACT, {"exponent": e, "degree": dj}
        if 2 * r.total_degree > cap:
            break
        r = remainder(r.mul(r, cap=None), J)
        e *= 2
    rng = random.Random(seed)
    E, pts = _slice_points(J, samples, rng)
    hE = h.embed(E)
    bad = [p for p in pts if hE.eval_ints(p)]
    return not bad, SAMPLING, {
        "degree": dj,
        "samples": len(pts),
        "field": format_field_spec(E),
        "probabilistic": True,
        "note": f"power test exceeded degree cap {cap}",
    }


# -- the three conclusions ----------------------------------------------------

def check_divisor_into_H(F_poly: MPoly, f: ProjMap, cap=DEGREE_CAP, seed=0) -> CheckRecord:
    if not F_poly.terms:
        raise DivisorZero("divisor polynomial is zero")
    g = f.coords[-1]
    if F_poly.field != f.field:
        F_poly = F_poly.embed(f.field)
    ok, method, details = zero_locus_contained(F_poly, g, cap=cap, seed=seed)
    return CheckRecord("divisor_into_H", ok, method, details)


def check_point_off_H(f: ProjMap, x) -> CheckRecord:
    img = f.apply(x)
    ok = bool(img[-1])
    return CheckRecord("point_off_H", ok, EVALUATION, {"image": [str(v) for v in img]})


def chart_jacobian(f: ProjMap, chart: int):
    """(J, h) on the chart z_chart = 1 for the affine target w_j / w_n.

    J is the numerator det(h * d(w_j) - w_j * dh) over the chart variables,
    h the restriction of w_n; the Jacobian of the affine map is J / h^(2n).
    """
    n = f.n
    rest = [w.set_var(chart, 1) for w in f.coords]
    h = rest[n]
    chart_vars = [k for k in range(n + 1) if k != chart]
    dh = [h.derivative(k) for k in chart_vars]
    rows = []
    for j in range(n):
        a = rest[j]
        rows.append([h.mul(a.derivative(k), None) - a.mul(dh[c], None) for c, k in enumerate(chart_vars)])
    return det(rows, cap=None), h


def check_etale_off(f: ProjMap, target_div: MPoly, cap=DEGREE_CAP, seed=0,
                    name="etale_off_divisor") -> CheckRecord:
    """f is étale away from f^{-1}(V(target_div)); target_div must contain w_n.

    With {w_n = 0} inside the target divisor, the affine target chart loses
    nothing.  The source chart z_n = 1 always is checked; if {z_n = 0} is not
    swallowed by the preimage, every other chart is checked as well.
    """
    n = f.n
    zn = MPoly.var(f.field, n + 1, n)
    if not divides(zn, target_div):
        raise ValueError("target divisor must contain the hyperplane at infinity")
    pulled = target_div.subst(list(f.coords), cap=None)
    charts = [n] if divides(zn, pulled) else list(range(n + 1))
    details = {"charts": charts, "jacobian_degrees": [], "methods": []}
    passed = True
    for c in charts:
        J, _ = chart_jacobian(f, c)
        if not J.terms:
            raise DegenerateJacobian(f"Jacobian vanishes identically on chart z{c} = 1")
        ok, method, sub = zero_locus_contained(J, pulled.set_var(c, 1), cap=cap, seed=seed)
        details["jacobian_degrees"].append(J.total_degree)
        details["methods"].append(method)
        if method == SAMPLING:
            details.setdefault("sampling", []).append(sub)
        passed = passed and ok
    method = SAMPLING if SAMPLING in details["methods"] else EXACT
    return CheckRecord(name, passed, method, details)


def check_etale_off_H(f: ProjMap, cap=DEGREE_CAP, seed=0) -> CheckRecord:
    """Étale on the complement of f^{-1}(H), H = {w_n = 0}."""
    zn = MPoly.var(f.field, f.n + 1, f.n)
    return check_etale_off(f, zn, cap=cap, seed=seed, name="etale_off_H")


def check_divisor_link(f: ProjMap, source_div: MPoly, target_div: MPoly,
                       cap=DEGREE_CAP, seed=0) -> CheckRecord:
    """f maps V(source_div) into V(target_div)."""
    pulled = target_div.subst(list(f.coords), cap=None)
    ok, method, details = zero_locus_contained(source_div, pulled, cap=cap, seed=seed)
    return CheckRecord("divisor_link", ok, method, details)


def check_step_nonetale_locus(f_i: ProjMap, r0: MPoly, cap=DEGREE_CAP, seed=0) -> CheckRecord:
    """The non-étale locus of a step map lies in V(z_n * r0)."""
    n = f_i.n
    J, h = chart_jacobian(f_i, n)
    if not J.terms:
        raise DegenerateJacobian("step map Jacobian vanishes identically")
    zn = MPoly.var(f_i.field, n + 1, n)
    target = zn.mul(r0, None).set_var(n, 1).mul(h, None)
    ok, method, details = zero_locus_contained(J, target, cap=cap, seed=seed)
    details["jacobian_degree"] = J.total_degree
    return CheckRecord("step_nonetale_locus", ok, method, details)


# -- the Abhyankar map --------------------------------------------------------------

def abhyankar_checks(n: int, p: int, base_point_field=None) -> list:
    """Homogeneity, term counts, base points and the Jacobian shape.

    Base points are searched exhaustively over P^n(F_{p^2}) unless another
    field is given; the Jacobian of (g_0, ..., g_n) must be one term.
    """
    g = abhyankar_map(n, p)
    deg = abhyankar_degree(n, p)
    degs = [w.homogeneous_degree() for w in g.coords]
    out = [CheckRecord("homogeneity", all(d == deg for d in degs), EVALUATION,
                       {"expected": deg, "degrees": degs})]
    counts = [len(w.terms) for w in g.coords]
    expected = [comb(n + 1, i + 1) for i in range(n + 1)]
    out.append(CheckRecord("term_counts", counts == expected, EVALUATION,
                           {"expected": expected, "counts": counts}))
    E = base_point_field or fq_make(p, 2)
    h = g.embed(E)
    # the monomial g_n is nonzero off the coordinate hyperplanes; test it first
    coords = list(reversed(h.coords))
    hits = [x for x in projective_points(E, n) if not any(w.eval_ints(x) for w in coords)]
    out.append(CheckRecord("base_points", not hits, "exhaustive enumeration",
                           {"field": format_field_spec(E), "hits": [list(x) for x in hits[:5]]}))
    J = jacobian_det(list(g.coords), list(range(n + 1)), cap=None)
    out.append(CheckRecord("jacobian_monomial", len(J.terms) == 1, "exact polynomial identity",
                           {"jacobian": str(J)}))
    return out


# -- fibers --------------------------------------------------------------------

def fiber_sample(f: ProjMap, degree: int = 1, targets: int = 32, seed: int = 0,
                 cap: int = 2**20, geometric=True) -> dict:
    """Fiber sizes over sampled targets off H, with coordinates in E.

    E is the smallest field containing both F_(p^degree) and the field of f.

    Rational fibers come from enumerating the source; for n = 1 the
    geometric fiber size is also computed as the number of distinct roots
    of the fiber polynomial over the algebraic closure.
    """
    F = f.field
    factor = lcm(F.k, degree) // F.k
    E = extension(F, factor) if factor > 1 else F
    n = f.n
    npts = sum(E.q**k for k in range(n + 1))
    if npts * min(targets, E.q**n) > cap and not (n == 1 and geometric):
        raise EnumerationCapExceeded(f"{npts} source points per target over {E}")
    g = f.embed(E) if E != F else f
    rng = random.Random(seed)
    affine = list(itertools.product(range(E.q), repeat=n))
    rng.shuffle(affine)
    chosen = [tuple(a) + (1,) for a in affine[:targets]]
    rational = None
    if npts * len(chosen) <= cap:
        want = {}
        for y in chosen:
            want[y] = 0
        for x in projective_points(E, n):
            img = g.coords[n].eval_ints(x)
            if not img:
                continue
            inv = E.inv(img)
            y = tuple(E.mul(inv, w.eval_ints(x)) for w in g.coords)
            if y in want:
                want[y] += 1
        rational = [want[y] for y in chosen]
    stats = {
        "field": format_field_spec(E),
        "targets": len(chosen),
        "rational_sizes": rational,
    }
    if n == 1 and geometric:
        sizes = [_geometric_fiber_n1(g, y) for y in chosen]
        stats["geometric_sizes"] = sizes
        stats["geometric_histogram"] = {str(k): sizes.count(k) for k in sorted(set(sizes))}
    return stats


def _geometric_fiber_n1(g: ProjMap, y):
    """Distinct geometric preimages of (y0 : 1) under g off g^{-1}(H)."""
    E = g.field
    w0, w1 = g.coords
    # w0(t, 1) - y0 * w1(t, 1), then discard roots where w1 also vanishes
    h_poly = [0] * (g.degree + 1)
    for e, c in w0.terms.items():
        h_poly[e[0]] = E.add(h_poly[e[0]], c)
    for e, c in w1.terms.items():
        h_poly[e[0]] = E.sub(h_poly[e[0]], E.mul(y[0], c))
    h_poly = upoly.trim(h_poly)
    d1 = [0] * (g.degree + 1)
    for e, c in w1.terms.items():
        d1[e[0]] = E.add(d1[e[0]], c)
    d1 = upoly.trim(d1)
    common = upoly.gcd(E, h_poly, d1) if d1 else h_poly
    count = upoly.geometric_root_count(E, h_poly) - upoly.geometric_root_count(E, common)
    # the point (1 : 0) at infinity
    top0 = w0.terms.get((g.degree, 0), 0)
    top1 = w1.terms.get((g.degree, 0), 0)
    if top1 and not E.sub(top0, E.mul(y[0], top1)):
        count += 1
    return count


# -- chains ----------------------------------------------------------------------

@dataclass
class Certificate:
    per_step: list
    composite: list
    fiber_stats: dict = None
    verdict: bool = False
    first_failure: str = None
    mismatches: list = dc_field(default_factory=list)

    def to_dict(self):
        return {
            "verdict": "pass" if self.verdict else "fail",
            "first_failure": self.first_failure,
            "per_step": self.per_step,
            "composite": [r.to_dict() for r in self.composite],
            "fiber_stats": self.fiber_stats,
            "mismatches": self.mismatches,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def to_text(self):
        lines = [f"verdict: {'pass' if self.verdict else 'fail'}"]
        if self.first_failure:
            lines.append(f"first failure: {self.first_failure}")
        for s in self.per_step:
            head = f"step {s['index']}"
            if s.get("skipped"):
                lines.append(f"{head}: skipped (cone is a power of the last coordinate)")
            else:
                conds = " ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in sorted(s["conditions"].items()))
                lines.append(f"{head}: degree {s['degree']} {conds}".rstrip())
            for rec in s.get("checks", []):
                lines.append(f"  {rec['name']}: {'pass' if rec['passed'] else 'FAIL'} ({rec['method']})")
        for item in self.mismatches:
            lines.append(f"mismatch: stored {item} differs from recomputation")
        for r in self.composite:
            lines.append(f"{r.name}: {'pass' if r.passed else 'FAIL'} ({r.method})")
        if self.fiber_stats:
            fs = self.fiber_stats
            lines.append(f"fibers over {fs['field']}: {fs['targets']} targets")
            if fs.get("geometric_histogram"):
                hist = ", ".join(f"size {k}: {v}" for k, v in fs["geometric_histogram"].items())
                lines.append(f"  geometric sizes: {hist}")
            if fs.get("rational_sizes") is not None:
                lines.append(f"  rational sizes: {sorted(set(fs['rational_sizes']))}")
        return "\n".join(lines)


DIRECT_DEGREE_LIMIT = 16


def _guarded(fn, label, *args, **kw):
    try:
        return fn(*args, **kw)
    except DegenerateJacobian as exc:
        return CheckRecord(label, False, EXACT, {"error": str(exc)})


def certify_chain(chain, fibers: int = None, seed: int = 0, cap=DEGREE_CAP,
                  direct: bool = None) -> Certificate:
    """Re-check every link of a CoverChain and the three conclusions.

    Each link f_k must send D_k into D_(k+1) and be étale off
    f_k^{-1}(D_(k+1)); the Abhyankar link must do the same with H.  If the
    stored composite equals the recomposition of the links, étaleness of the
    composite off its preimage of H follows.  The direct Jacobian test on
    the composite runs as well whenever it is affordable (always for n = 1).
    """
    per_step, failure = [], None

    def note(name):
        nonlocal failure
        if failure is None:
            failure = name

    n = chain.n
    F = chain.field
    zn = MPoly.var(F, n + 1, n)
    links_ok = True
    incoming = chain.input
    for idx, step in enumerate(chain.steps):
        entry = {"index": idx, "skipped": step.skipped, "degree": step.d,
                 "conditions": {k: v for k, v in step.records.items() if k != "skipped"}}
        bad = step.next.violations()
        entry["next_triple_valid"] = not bad
        if bad:
            note(f"step {idx}: next triple invalid ({bad[0]})")
        if not all(entry["conditions"].values()):
            note(f"step {idx}: conditions")
        source = step.coords.apply_poly(incoming.divisor_poly())
        target = step.next.divisor_poly()
        recs = [
            check_divisor_link(step.map, source, target, cap=cap, seed=seed),
            _guarded(check_etale_off, "etale_link", step.map, target, cap=cap, seed=seed,
                     name="etale_link"),
        ]
        if not step.skipped:
            recs.append(_guarded(check_step_nonetale_locus, "step_nonetale_locus",
                                 step.map, step.r0, cap=cap, seed=seed))
        entry["checks"] = [r.to_dict() for r in recs]
        for r in recs:
            if not r.passed:
                links_ok = False
                note(f"step {idx}: {r.name}")
        per_step.append(entry)
        incoming = step.next

    abh = chain.abhyankar.precompose_linear(chain.final_normalization.inverse().forms())
    final = [
        check_divisor_link(abh, incoming.divisor_poly(), zn, cap=cap, seed=seed),
        _guarded(check_etale_off, "etale_link", abh, zn, cap=cap, seed=seed, name="etale_link"),
    ]
    per_step.append({"index": "abhyankar", "skipped": False, "degree": abh.degree,
                     "conditions": {}, "checks": [r.to_dict() for r in final]})
    for r in final:
        if not r.passed:
            links_ok = False
            note(f"abhyankar: {r.name}")

    triple = chain.input
    composite = []
    bad = triple.violations()
    if bad:
        note(f"input triple invalid ({bad[0]})")
    recomposed = build_composite(chain.steps, chain.final_normalization, chain.abhyankar, check=False)
    same = recomposed == chain.composite
    composite.append(CheckRecord("recomposition", same, "exact polynomial identity",
                                 {"degree": recomposed.degree}))
    composite.append(check_divisor_into_H(triple.cone, chain.composite, cap=cap, seed=seed))
    composite.append(check_point_off_H(chain.composite, triple.point))
    if direct is None:
        direct = n == 1 or chain.composite.degree <= DIRECT_DEGREE_LIMIT
    if direct:
        composite.append(_guarded(check_etale_off_H, "etale_off_H", chain.composite, cap=cap, seed=seed))
    else:
        composite.append(CheckRecord("etale_off_H", links_ok and same, EXACT,
                                     {"route": "chain rule over certified links",
                                      "links": len(chain.steps) + 1}))
    for r in composite:
        if not r.passed:
            note(r.name)
    stats = fiber_sample(chain.composite, fibers, seed=seed) if fibers else None
    return Certificate(per_step, composite, stats, failure is None, failure)
