"""End-to-end driver: input triple -> step maps -> Abhyankar map -> composite."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass

from .certify import Certificate, CheckRecord, certify_chain
from .errors import (
    CertificationFailed,
    ConditionFailed,
    FieldTooLarge,
    NotHomogeneous,
    OnepointError,
    PointOnDivisor,
    SearchFailed,
    ZeroPolynomial,
)
from .field import FieldConfig, extension, format_field_spec
from .maps import (
    CoordChange,
    GoodTriple,
    ProjMap,
    abhyankar_map,
    all_block_changes,
    as_point,
    block_change_count,
    build_composite,
    normalize_hyperplanes,
    random_block_change,
    skip_step,
    step2_map,
)
from .poly import MPoly


@dataclass(frozen=True)
class SearchPolicy:
    max_trials: int = 2000
    max_extensions: int = 3


@dataclass
class CoverChain:
    input: GoodTriple
    steps: list
    final_normalization: CoordChange
    abhyankar: ProjMap
    composite: ProjMap
    field_history: list
    seed: int

    @property
    def field(self) -> FieldConfig:
        return self.field_history[-1]

    @property
    def n(self):
        return self.input.n

    @property
    def degrees(self):
        return [s.d for s in self.steps]

    def final_point(self):
        return self.composite.apply(self.input.point)

    def user_composite(self) -> ProjMap:
        """The composite in the coordinates the caller supplied."""
        origin = self.input.origin
        if origin is None or origin.is_identity():
            return self.composite
        return self.composite.precompose_linear(origin.inverse().forms())


def make_triple(n: int, F: FieldConfig, cone: MPoly, point) -> GoodTriple:
    """Validate (P^n, V(cone), point); permute coordinates if z_n(point) = 0."""
    if not cone.terms:
        raise ZeroPolynomial("the divisor polynomial is zero")
    if cone.nvars != n + 1:
        raise ValueError(f"cone has {cone.nvars} variables, expected {n + 1}")
    if not cone.is_homogeneous():
        raise NotHomogeneous(f"{cone} is not homogeneous")
    if len(point) != n + 1:
        raise ValueError(f"point needs {n + 1} coordinates")
    pt = as_point(F, point)
    if not any(pt):
        raise ValueError("the zero vector is not a projective point")
    if not cone.embed(F).eval(pt):
        raise PointOnDivisor("the marked point lies on the divisor")
    origin = None
    if not pt[n]:
        j = max(k for k in range(n + 1) if pt[k])
        perm = list(range(n + 1))
        perm[j], perm[n] = n, j
        origin = CoordChange.permutation(perm, F)
        cone = origin.apply_poly(cone.embed(F))
        pt = origin.apply_point(pt)
    return GoodTriple(n, F, 0, cone, pt, origin).validate()


def _candidates(F, n, i, policy, rng):
    total = block_change_count(F, n, i)
    if total <= policy.max_trials:
        pool = list(all_block_changes(F, n, i))
        rng.shuffle(pool)
        return pool
    return (random_block_change(F, n, i, rng) for _ in range(policy.max_trials))


def coordinate_search(triple: GoodTriple, seed: int = 0, policy: SearchPolicy = None):
    """First coordinate change for which the step map exists.

    Small parameter spaces are enumerated completely in a seeded order;
    larger ones are sampled.  Each exhausted field is replaced by its
    quadratic extension, up to ``policy.max_extensions`` times.
    Returns (step result, triple in the final field).
    """
    policy = policy or SearchPolicy()
    tally = Counter()
    fields = []
    for level in range(policy.max_extensions + 1):
        F = triple.field
        fields.append(F)
        rng = random.Random(f"{seed}:{triple.i}:{format_field_spec(F)}")
        trials = 0
        for A in _candidates(F, triple.n, triple.i, policy, rng):
            trials += 1
            try:
                res = step2_map(triple, A)
            except ConditionFailed as exc:
                tally[exc.condition] += 1
                continue
            res.trials = trials
            return res, triple
        if level < policy.max_extensions:
            try:
                bigger = extension(F, 2)
            except FieldTooLarge:
                break
            triple = triple.embed(bigger)
    raise SearchFailed(dict(tally), [format_field_spec(F) for F in fields])


def _final_normalization(n, F):
    # the residual divisor is z_0 ... z_n, already in coordinate form
    return normalize_hyperplanes([MPoly.var(F, n + 1, j) for j in range(n + 1)])


def run(triple: GoodTriple, seed: int = 0, policy: SearchPolicy = None,
        fibers: int = None, certify: bool = True):
    """Build and certify the chain; returns (CoverChain, Certificate or None)."""
    policy = policy or SearchPolicy()
    if triple.i != 0:
        raise ValueError("run starts from a triple at index 0")
    history = [triple.field]
    original = triple
    steps = []
    current = triple
    for _ in range(triple.n):
        if current.cone_is_zn_power():
            step = skip_step(current)
        else:
            step, current = coordinate_search(current, seed, policy)
            if current.field != history[-1]:
                F = current.field
                while history[-1] != F:
                    history.append(extension(history[-1], 2))
                steps = [s.embed(F) for s in steps]
        steps.append(step)
        current = step.next
    F = history[-1]
    original = original.embed(F)
    if not current.cone_is_zn_power():
        raise AssertionError(f"residual cone {current.cone} is not a power of the last coordinate")
    n = triple.n
    normal = _final_normalization(n, F)
    abh = abhyankar_map(n, F.p, F)
    composite = build_composite(steps, normal, abh)
    chain = CoverChain(original, steps, normal, abh, composite, history, seed)
    if not chain.final_point()[-1]:
        raise AssertionError("final marked point lies on the hyperplane at infinity")
    cert = None
    if certify:
        cert = certify_chain(chain, fibers=fibers, seed=seed)
        if not cert.verdict:
            raise CertificationFailed({"check": cert.first_failure, "certificate": cert})
    return chain, cert


def rebuild(chain: CoverChain) -> CoverChain:
    """Recompute every map from the stored input and coordinate changes."""
    F = chain.field
    current = chain.input.embed(F)
    steps = []
    for stored in chain.steps:
        if stored.skipped:
            step = skip_step(current)
        else:
            step = step2_map(current, stored.coords.embed(F))
        steps.append(step)
        current = step.next
    normal = _final_normalization(chain.n, F)
    abh = abhyankar_map(chain.n, F.p, F)
    composite = build_composite(steps, normal, abh)
    return CoverChain(chain.input, steps, normal, abh,
                      composite, list(chain.field_history), chain.seed)


def chain_mismatches(stored: CoverChain, rebuilt: CoverChain):
    """Names of stored items that differ from their recomputation."""
    out = []
    for k, (a, b) in enumerate(zip(stored.steps, rebuilt.steps)):
        if a.map != b.map:
            out.append(f"step {k} map")
        if (a.d, a.r0, a.skipped, a.records) != (b.d, b.r0, b.skipped, b.records):
            out.append(f"step {k} data")
        if (a.Q and a.Q.coeffs) != (b.Q and b.Q.coeffs):
            out.append(f"step {k} additive polynomial")
        if a.next.cone != b.next.cone or a.next.point != b.next.point:
            out.append(f"step {k} next triple")
    if len(stored.steps) != len(rebuilt.steps):
        out.append("step count")
    if stored.final_normalization != rebuilt.final_normalization:
        out.append("final normalization")
    if stored.abhyankar != rebuilt.abhyankar:
        out.append("abhyankar map")
    if stored.composite != rebuilt.composite:
        out.append("composite")
    return out


def verify_chain(chain: CoverChain, fibers: int = None, seed: int = 0) -> Certificate:
    """Certificate of a rebuilt chain; any stored/recomputed mismatch fails it."""
    try:
        rebuilt = rebuild(chain)
    except (OnepointError, ValueError) as exc:
        record = CheckRecord("rebuild", False, "recomputation",
                             {"error": f"{type(exc).__name__}: {exc}"})
        return Certificate([], [record], None, False, f"rebuild: {type(exc).__name__}")
    cert = certify_chain(rebuilt, fibers=fibers, seed=seed)
    diffs = chain_mismatches(chain, rebuilt)
    cert.mismatches = diffs
    if diffs:
        cert.verdict = False
        cert.first_failure = f"stored {diffs[0]} differs from recomputation"
    return cert
