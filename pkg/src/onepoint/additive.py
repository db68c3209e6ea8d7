"""Additive polynomials: Moore determinants, canonical additive multiples,
F_p-independence and the Moebius-transformation search.

The canonical additive multiple of a monic P(t) = t^m + P_1 t^(m-1) + ... + P_m
is obtained from the universal span polynomial

    S(x) = prod_{h in F_p^m} (x + h_1 t_1 + ... + h_m t_m)

by writing each coefficient of S in the elementary symmetric functions s_i of
t_1..t_m and substituting s_i -> P_i.  The symmetric rewriting is computed once
per (p, m) and cached.
"""

from __future__ import annotations

import functools
import itertools
import math
import random
from dataclasses import dataclass

from . import upoly
from .errors import (
    DegreeTooLarge,
    Exhausted,
    IncompatibleTower,
    NonConstantLeadingCoeff,
    SplittingNotFound,
    ZeroPolynomial,
)
from .field import (
    FieldConfig,
    FieldElement,
    Q_LIMIT,
    embed_int,
    fq_make,
    restrict_int,
)
from .poly import MPoly, det, format_poly, up_view

SPAN_CAP = 256


@dataclass(frozen=True)
class AdditivePoly:
    """sum_i r_i * t^(p^i); the r_i live in the ambient ring without t."""

    coeffs: tuple
    p: int
    main_var: int

    @property
    def m(self):
        return len(self.coeffs) - 1

    @property
    def degree(self):
        return self.p**self.m

    @property
    def r0(self) -> MPoly:
        return self.coeffs[0]

    @property
    def ring(self):
        c = self.coeffs[-1]
        return c.field, c.nvars

    def to_mpoly(self) -> MPoly:
        F, nv = self.ring
        acc = MPoly.zero(F, nv)
        for i, r in enumerate(self.coeffs):
            if r:
                acc = acc + r * MPoly.var(F, nv, self.main_var, self.p**i)
        return acc

    def format(self, names=None):
        F, nv = self.ring
        names = list(names) if names else [f"z{i}" for i in range(nv)]
        t = names[self.main_var]
        parts = []
        for i, r in reversed(list(enumerate(self.coeffs))):
            if not r:
                continue
            mono = t if i == 0 else f"{t}^{self.p ** i}"
            cs = format_poly(r, names)
            if cs == "1":
                parts.append(mono)
            elif r.is_constant() and "+" not in cs:
                parts.append(f"{cs}*{mono}")
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts) or "0"

    def __str__(self):
        return self.format()


# -- Moore determinant ---------------------------------------------------------

def moore_matrix(vals):
    """Rows vals_i^(p^j), j = 0..r-1, as MPoly entries."""
    polys = [_as_poly(v) for v in vals]
    r = len(polys)
    return [[f.frobenius(j) if j else f for j in range(r)] for f in polys]


def moore_det(vals):
    if not vals:
        raise ValueError("Moore determinant of an empty sequence")
    value = det(moore_matrix(vals), cap=None)
    if all(isinstance(v, FieldElement) for v in vals):
        return value.constant_coeff()
    return value


def _as_poly(v):
    if isinstance(v, MPoly):
        return v
    if isinstance(v, FieldElement):
        return MPoly.const(v.field, 0, v)
    raise TypeError(f"cannot use {type(v).__name__} in a Moore matrix")


# -- the universal span polynomial -------------------------------------------

def product_display(p: int, m: int) -> MPoly:
    """The literal product over h in F_p^m; variables t_1..t_m then x."""
    if p**m > SPAN_CAP:
        raise DegreeTooLarge(f"{p}^{m} linear factors exceed the cap {SPAN_CAP}")
    F = fq_make(p)
    nv = m + 1
    acc = MPoly.one(F, nv)
    for h in itertools.product(range(p), repeat=m):
        items = [([1 if j == i else 0 for j in range(nv)], c) for i, c in enumerate(h)]
        items.append(([0] * m + [1], 1))
        form = MPoly.from_terms(F, nv, items)
        acc = acc.mul(form, None)
    return acc


@functools.lru_cache(maxsize=None)
def span_polynomial(p: int, m: int) -> MPoly:
    """Same polynomial as :func:`product_display`, grouped factor by factor.

    Grouping the product over the last coordinate h_j and using additivity of
    the partial product Y gives prod_c (Y + c B) = Y^p - B^(p-1) Y.
    """
    if p**m > SPAN_CAP:
        raise DegreeTooLarge(f"{p}^{m} linear factors exceed the cap {SPAN_CAP}")
    F = fq_make(p)
    nv = m + 1
    gens = [MPoly.var(F, nv, i) for i in range(nv)]
    S = gens[m]
    for j in range(m):
        B = S.subst(gens[:m] + [gens[j]], cap=None)
        S = S.frobenius() - B.pow(p - 1, cap=None).mul(S, None)
    return S


# -- symmetric reduction ------------------------------------------------------

def _mul_elementary(F, f, j, m, subsets):
    # f: symmetric polynomial stored by sorted (descending) exponent vectors
    cands = set()
    for lam in f:
        for S in subsets:
            mu = list(lam)
            for s in S:
                mu[s] += 1
            mu.sort(reverse=True)
            cands.add(tuple(mu))
    out = {}
    for mu in cands:
        acc = 0
        for S in subsets:
            nu = list(mu)
            ok = True
            for s in S:
                if nu[s] == 0:
                    ok = False
                    break
                nu[s] -= 1
            if not ok:
                continue
            nu.sort(reverse=True)
            c = f.get(tuple(nu))
            if c:
                acc = F.add(acc, c)
        if acc:
            out[mu] = acc
    return out


def _multiplicities(key):
    out = {}
    for x in key:
        out[x] = out.get(x, 0) + 1
    return out.values()


class _ElementaryProducts:
    """Memoised e_1^a1 ... e_(m-1)^a(m-1) in sorted-exponent form.

    Powers of e_m never need expanding: e_m^g shifts every part by g.
    """

    def __init__(self, F, m):
        self.F, self.m = F, m
        self.subsets = [list(itertools.combinations(range(m), j)) for j in range(m + 1)]
        self.memo = {(0,) * (m - 1): {(0,) * m: 1}}

    def __call__(self, expo):
        hit = self.memo.get(expo)
        if hit is not None:
            return hit
        stack = [expo]
        while stack:
            cur = stack[-1]
            if cur in self.memo:
                stack.pop()
                continue
            j = next(i for i, x in enumerate(cur) if x)
            prev = cur[:j] + (cur[j] - 1,) + cur[j + 1 :]
            if prev in self.memo:
                self.memo[cur] = _mul_elementary(
                    self.F, self.memo[prev], j + 1, self.m, self.subsets[j + 1]
                )
                stack.pop()
            else:
                stack.append(prev)
        return self.memo[expo]


@functools.lru_cache(maxsize=None)
def _products(p, m):
    return _ElementaryProducts(fq_make(p), m)


def symmetric_reduce(f: MPoly, m: int) -> MPoly:
    """Write a symmetric f(t_1..t_m) as a polynomial in s_1..s_m.

    Classical leading-term algorithm: repeatedly cancel the leading term
    t^lam with the matching product s_1^(lam1-lam2) ... s_m^lam_m.
    """
    F = f.field
    if f.nvars != m:
        raise ValueError("symmetric_reduce expects exactly m variables")
    work, seen = {}, {}
    for e, c in f.terms.items():
        key = tuple(sorted(e, reverse=True))
        if f.terms.get(key) != c:
            raise ValueError("polynomial is not symmetric")
        seen[key] = seen.get(key, 0) + 1
        if e == key:
            work[key] = c
    for key, count in seen.items():
        orbit = math.factorial(m)
        for mult in _multiplicities(key):
            orbit //= math.factorial(mult)
        if count != orbit:
            raise ValueError("polynomial is not symmetric")
    if m == 1:
        return MPoly(F, 1, dict(f.terms))
    prods = _products(F.p, m) if F.k == 1 else _ElementaryProducts(F, m)
    result = {}
    while work:
        lam = max(work)
        c = work[lam]
        expo = tuple(lam[i] - lam[i + 1] for i in range(m - 1)) + (lam[m - 1],)
        shift = expo[-1]
        for mu, v in prods(expo[:-1]).items():
            key = tuple(x + shift for x in mu)
            nv = F.sub(work.get(key, 0), F.mul(c, v))
            if nv:
                work[key] = nv
            else:
                work.pop(key, None)
        result[expo] = c
    return MPoly(F, m, result)


@functools.lru_cache(maxsize=None)
def generic_additive(p: int, m: int):
    """Coefficients c_0..c_(m-1) in F_p[s_1..s_m] of the universal additive multiple.

    Q_generic(x) = x^(p^m) + sum_i c_i(s) x^(p^i).
    """
    S = span_polynomial(p, m)
    F = S.field
    buckets = {}
    for e, c in S.terms.items():
        buckets.setdefault(e[m], {})[e[:m]] = c
    powers = {p**i: i for i in range(m + 1)}
    if any(d not in powers for d in buckets):
        raise AssertionError("span polynomial is not additive")  # pragma: no cover
    top = buckets.get(p**m)
    if top != {(0,) * m: 1}:
        raise AssertionError("span polynomial is not monic")  # pragma: no cover
    return tuple(
        symmetric_reduce(MPoly(F, m, buckets.get(p**i, {})), m) for i in range(m)
    )


# -- additive multiples -------------------------------------------------------

def _monic_view(P: MPoly, main_var: int):
    if not P.terms:
        raise ZeroPolynomial("additive multiple of the zero polynomial")
    view = up_view(P, main_var)
    m = view.degree
    if m < 1:
        raise ValueError("need positive degree in the main variable")
    lead = view.coeffs[m]
    if not lead.is_constant():
        raise NonConstantLeadingCoeff(
            f"leading coefficient {lead} is not a constant of the base field"
        )
    inv = FieldElement(P.field, P.field.inv(lead.constant_coeff().value))
    return [c.scale(inv) for c in view.coeffs], m


def additive_multiple(P: MPoly, main_var: int = 0) -> AdditivePoly:
    """Canonical additive multiple Q of P, viewed as a polynomial in main_var."""
    coeffs, m = _monic_view(P, main_var)
    p = P.field.p
    if p**m > SPAN_CAP:
        raise DegreeTooLarge(f"p^m = {p}^{m} exceeds the cap {SPAN_CAP}")
    images = [coeffs[m - i] for i in range(1, m + 1)]
    rs = [c.subst(images) for c in generic_additive(p, m)]
    rs.append(MPoly.one(P.field, P.nvars))
    return AdditivePoly(tuple(rs), p, main_var)


def _frob_reduce(coeffs, monic, m):
    """(sum a_j t^j)^p reduced modulo the monic polynomial with given coefficients."""
    p = monic[0].field.p
    F, nv = monic[0].field, monic[0].nvars
    big = [MPoly.zero(F, nv) for _ in range(max((m - 1) * p + 1, m))]
    for j, a in enumerate(coeffs):
        if a:
            big[j * p] = a.frobenius()
    return _reduce(big, monic, m)


def _reduce(big, monic, m):
    big = list(big)
    for D in range(len(big) - 1, m - 1, -1):
        c = big[D]
        if not c:
            continue
        big[D] = MPoly.zero(c.field, c.nvars)
        for l in range(m):
            if monic[l]:
                big[D - m + l] = big[D - m + l] - c * monic[l]
    return big[:m]


def additive_multiple_linear(P: MPoly, main_var: int = 0):
    """Second strategy: an R-linear dependence among t^(p^i) mod P, denominators cleared.

    Returns det(M)*Q as an MPoly, or None when t, t^p, ..., t^(p^(m-1)) are
    dependent modulo P (the dependence is then not unique up to scalar).
    """
    coeffs, m = _monic_view(P, main_var)
    F, nv = P.field, P.nvars
    p = F.p
    if p**m > SPAN_CAP:
        raise DegreeTooLarge(f"p^m = {p}^{m} exceeds the cap {SPAN_CAP}")
    x = [MPoly.zero(F, nv) for _ in range(max(m, 2))]
    x[1] = MPoly.one(F, nv)
    cur = _reduce(x, coeffs, m)
    cols = [cur]
    for _ in range(m):
        cur = _frob_reduce(cur, coeffs, m)
        cols.append(cur)
    M = [[cols[i][r] for i in range(m)] for r in range(m)]
    D = det(M, cap=None)
    if not D:
        return None
    T = MPoly.var(F, nv, main_var)
    out = D * T.pow(p**m)
    for i in range(m):
        Mi = [[(-cols[m][r] if j == i else cols[j][r]) for j in range(m)] for r in range(m)]
        out = out + det(Mi, cap=None) * T.pow(p**i)
    return out


def is_additive(Q: MPoly, var: int = 0, symbolic_limit: int = 64) -> bool:
    """Every exponent of var is a power of p and no term is free of var.

    For small inputs the identity Q(t+u) = Q(t) + Q(u) is also checked.
    """
    p = Q.field.p
    for e in Q.terms:
        k = e[var]
        if k == 0:
            return False
        while k % p == 0:
            k //= p
        if k != 1:
            return False
    if 0 < len(Q.terms) <= symbolic_limit and Q.total_degree <= 1024:
        nv = Q.nvars + 1
        t = Q.extend_vars(nv)
        imgs = [MPoly.var(Q.field, nv, i) for i in range(nv)]
        u = imgs[-1]
        shifted = list(imgs)
        shifted[var] = imgs[var] + u
        u_only = list(imgs)
        u_only[var] = u
        if t.subst(shifted, cap=None) != t + t.subst(u_only, cap=None):
            return False
    return True


# -- brute-force oracle --------------------------------------------------------

def find_roots(P: MPoly, main_var: int = 0):
    """Roots with multiplicity of a univariate P over the smallest splitting
    extension, as (extension field, list of encoded roots)."""
    coeffs, m = _monic_view(P, main_var)
    if any(not c.is_constant() for c in coeffs):
        raise ValueError("roots are only searched for univariate polynomials")
    base = P.field
    dense = [c.constant_coeff().value for c in coeffs]
    for d in sorted(x for x in range(1, math.factorial(m) + 1) if math.factorial(m) % x == 0):
        k = base.k * d
        if base.p**k > Q_LIMIT:
            break
        E = fq_make(base.p, k)
        f = [embed_int(c, base, E) for c in dense]
        roots = []
        for v in range(E.q):
            while len(f) > 1 and upoly.evaluate(E, f, v) == 0:
                f, _ = upoly.divmod_(E, f, [E.neg(v), 1])
                roots.append(v)
        if len(roots) == m:
            return E, roots
    raise SplittingNotFound(f"no splitting field for P of degree {m} within q <= {Q_LIMIT}")


def span_product_oracle(P: MPoly, main_var: int = 0) -> MPoly:
    """prod over h in F_p^m of (t + sum h_j root_j), with the roots found by search."""
    coeffs, m = _monic_view(P, main_var)
    base = P.field
    p = base.p
    if p**m > SPAN_CAP:
        raise DegreeTooLarge(f"p^m = {p}^{m} exceeds the cap {SPAN_CAP}")
    E, roots = find_roots(P, main_var)
    prod = [1]
    for h in itertools.product(range(p), repeat=m):
        v = 0
        for hj, r in zip(h, roots):
            if hj:
                v = E.add(v, E.mul(E.from_int(hj), r))
        prod = upoly.mul(E, prod, [v, 1])
    out = MPoly.zero(base, P.nvars)
    for i, c in enumerate(prod):
        if c:
            out = out + MPoly.var(base, P.nvars, main_var, i).scale(
                FieldElement(base, restrict_int(c, E, base))
            )
    return out


# -- F_p-linear independence and Moebius search --------------------------------

def fp_rank(vals) -> int:
    if not vals:
        return 0
    F = vals[0].field
    p = F.p
    rows = [list(F.digits(v.value)) for v in vals]
    rank = 0
    for col in range(F.k):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(x - f * y) % p for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def fp_lin_indep(vals) -> bool:
    """True iff the values are linearly independent over the prime field."""
    if vals and len({v.field for v in vals}) != 1:
        raise IncompatibleTower("values must share one field")
    return fp_rank(list(vals)) == len(vals)


def mobius_search(vals, extra=None, field_of_coeffs: FieldConfig = None, seed=0, max_trials=10000):
    """Find (a, b, c, d) with tau(x) = (a + b x)/(c + d x) making the images independent.

    When the whole coefficient space fits in max_trials it is enumerated (in a
    seeded order); otherwise tuples are sampled uniformly with replacement.
    """
    vals = list(vals)
    if not vals:
        raise ValueError("mobius_search needs at least one value")
    E = vals[0].field
    K = field_of_coeffs or E
    if K.p != E.p or E.k % K.k:
        raise IncompatibleTower(f"coefficients from {K} do not act on {E}")
    points = [v.value for v in vals]
    if extra is not None:
        points.append(embed_int(extra.value, extra.field, E))
    rng = random.Random(seed)
    q = K.q
    if q**4 <= max_trials:
        order = list(range(q**4))
        rng.shuffle(order)
        candidates = (
            ((n // q**3) % q, (n // q**2) % q, (n // q) % q, n % q) for n in order
        )
        budget = len(order)
    else:
        candidates = (tuple(rng.randrange(q) for _ in range(4)) for _ in range(max_trials))
        budget = max_trials
    for coeffs in candidates:
        a, b, c, d = (embed_int(x, K, E) for x in coeffs)
        if E.sub(E.mul(a, d), E.mul(b, c)) == 0:
            continue
        images = []
        for x in points:
            den = E.add(c, E.mul(d, x))
            if den == 0:
                break
            images.append(FieldElement(E, E.div(E.add(a, E.mul(b, x)), den)))
        else:
            if fp_rank(images) == len(images):
                return tuple(FieldElement(K, x) for x in coeffs)
    raise Exhausted(budget)
