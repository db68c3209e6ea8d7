"""Projective self-maps of P^n: the additive-polynomial step maps, the
Abhyankar map, coordinate changes and composition.

Coordinate-change convention: a :class:`CoordChange` with matrix A rewrites a
polynomial as ``f(A z)`` and a point as ``A^{-1} x``, so values are preserved.
A map ``f`` built in the new coordinates is the morphism ``f o A^{-1}`` in the
old ones.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field

from .additive import AdditivePoly, additive_multiple
from .errors import (
    BasePointHit,
    ConditionFailed,
    MixedRings,
    NonConstantLeadingCoeff,
    NotHomogeneous,
    NotInGeneralPosition,
    PointOnDivisor,
)
from .field import FieldConfig, FieldElement, embed_int, fq_make
from .poly import MPoly, divides, format_poly, nth_root, parse_poly, pth_power_part

ENUM_CAP = 2**16


# -- small dense linear algebra over a field (encoded ints) ------------------

def mat_inv(F, M):
    n = len(M)
    A = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col]), None)
        if piv is None:
            return None
        A[col], A[piv] = A[piv], A[col]
        inv = F.inv(A[col][col])
        A[col] = [F.mul(inv, x) for x in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[r], A[col])]
    return [row[n:] for row in A]


def mat_det(F, M):
    n = len(M)
    A = [list(r) for r in M]
    d = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            d = F.neg(d)
        d = F.mul(d, A[col][col])
        inv = F.inv(A[col][col])
        for r in range(col + 1, n):
            if A[r][col]:
                f = F.mul(A[r][col], inv)
                A[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[r], A[col])]
    return d


def mat_vec(F, M, x):
    out = []
    for row in M:
        acc = 0
        for a, b in zip(row, x):
            if a and b:
                acc = F.add(acc, F.mul(a, b))
        out.append(acc)
    return out


def mat_mul(F, A, B):
    cols = list(zip(*B))
    return [mat_vec(F, [list(c) for c in cols], row) for row in A]


# -- points -----------------------------------------------------------------

def projective_points(F: FieldConfig, n: int):
    """All points of P^n(F) as encoded tuples, first nonzero coordinate 1."""
    for lead in range(n + 1):
        for rest in itertools.product(range(F.q), repeat=n - lead):
            yield (0,) * lead + (1,) + rest


def normalize_point(F, x):
    x = list(x)
    lead = next((v for v in x if v), None)
    if lead is None:
        raise ValueError("the zero vector is not a projective point")
    inv = F.inv(lead)
    return tuple(F.mul(inv, v) for v in x)


def _enc(F, x):
    """Encoding of x in F; bare ints are taken as encodings already."""
    if isinstance(x, FieldElement):
        return x.value if x.field == F else embed_int(x.value, x.field, F)
    if not 0 <= x < F.q:
        raise ValueError(f"{x} is not an element encoding of {F}")
    return x


def _as_ints(F, point):
    return [_enc(F, x) for x in point]


def as_point(F, values):
    return tuple(FieldElement(F, v) for v in _as_ints(F, values))


# -- ProjMap ----------------------------------------------------------------

@dataclass(frozen=True)
class ProjMap:
    """(w_0 : ... : w_n), all homogeneous of one degree in z_0..z_n."""

    coords: tuple

    def __post_init__(self):
        coords = tuple(self.coords)
        object.__setattr__(self, "coords", coords)
        if not coords:
            raise ValueError("a map needs coordinates")
        F, nv = coords[0].field, coords[0].nvars
        if nv != len(coords):
            raise MixedRings("a self-map of P^n needs n+1 polynomials in n+1 variables")
        degs = set()
        for w in coords:
            if w.field != F or w.nvars != nv:
                raise MixedRings("map coordinates must share a ring")
            if w.terms:
                degs.add(w.homogeneous_degree())
        if len(degs) != 1:
            raise NotHomogeneous(f"coordinate degrees {sorted(degs)} differ or all vanish")

    @property
    def n(self):
        return len(self.coords) - 1

    @property
    def field(self):
        return self.coords[0].field

    @property
    def degree(self):
        return next(w.homogeneous_degree() for w in self.coords if w.terms)

    @classmethod
    def identity(cls, n, F):
        return cls(tuple(MPoly.var(F, n + 1, i) for i in range(n + 1)))

    def apply_ints(self, x):
        vals = tuple(w.eval_ints(x) for w in self.coords)
        if not any(vals):
            raise BasePointHit(f"all coordinates vanish at {x}")
        return vals

    def apply(self, point):
        F = self.field
        for x in point:
            if isinstance(x, FieldElement) and x.field.k > F.k:
                return self.embed(x.field).apply(point)
        vals = self.apply_ints(_as_ints(F, point))
        return tuple(FieldElement(F, v) for v in vals)

    def embed(self, F):
        return ProjMap(tuple(w.embed(F) for w in self.coords))

    def precompose_linear(self, forms):
        return ProjMap(tuple(w.subst(forms) for w in self.coords))

    def format(self):
        return [format_poly(w) for w in self.coords]

    def __str__(self):
        return "(" + " : ".join(self.format()) + ")"


def parse_projmap(texts, F):
    n1 = len(texts)
    return ProjMap(tuple(parse_poly(t, F, nvars=n1) for t in texts))


def compose(outer: ProjMap, inner: ProjMap, check=True) -> ProjMap:
    """outer o inner by substitution; base-point freedom re-checked when small."""
    if outer.n != inner.n:
        raise MixedRings("maps act on different projective spaces")
    if outer.field != inner.field:
        raise MixedRings(f"maps over {outer.field} and {inner.field}")
    out = ProjMap(tuple(w.subst(list(inner.coords)) for w in outer.coords))
    if check and outer.field.q ** (outer.n + 1) <= ENUM_CAP:
        hits = base_points(out, outer.field, limit=1)
        if hits:
            raise BasePointHit(f"composite has a base point at {hits[0]}")
    return out


def build_composite(steps, final_normalization: "CoordChange", abh: ProjMap, check=True) -> ProjMap:
    """abh o N o f_(n-1) o ... o f_0, each step read in its incoming coordinates."""
    acc = ProjMap.identity(abh.n, abh.field)
    for s in steps:
        acc = compose(s.effective_map(), acc, check=False)
    last = abh.precompose_linear(final_normalization.inverse().forms())
    return compose(last, acc, check=check)


def base_points(f: ProjMap, F: FieldConfig = None, limit=None):
    """Common zeros of the coordinates in P^n(F), by exhaustive enumeration."""
    F = F or f.field
    g = f if F == f.field else f.embed(F)
    hits = []
    for x in projective_points(F, f.n):
        if not any(w.eval_ints(x) for w in g.coords):
            hits.append(x)
            if limit and len(hits) >= limit:
                break
    return hits


# -- coordinate changes -----------------------------------------------------------

@dataclass(frozen=True)
class CoordChange:
    field: FieldConfig
    matrix: tuple

    def __post_init__(self):
        M = tuple(tuple(_enc(self.field, x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", M)
        if any(len(r) != len(M) for r in M):
            raise ValueError("coordinate change must be square")
        if mat_det(self.field, M) == 0:
            raise NotInGeneralPosition("coordinate change is singular")

    @property
    def n(self):
        return len(self.matrix) - 1

    @classmethod
    def identity(cls, n, F):
        return cls(F, tuple(tuple(1 if i == j else 0 for j in range(n + 1)) for i in range(n + 1)))

    @classmethod
    def permutation(cls, perm, F):
        """z_j -> z_perm[j]."""
        n1 = len(perm)
        return cls(F, tuple(tuple(1 if perm[i] == j else 0 for j in range(n1)) for i in range(n1)))

    def is_identity(self):
        return self == CoordChange.identity(self.n, self.field)

    def forms(self):
        F, n1 = self.field, len(self.matrix)
        return [
            MPoly(F, n1, {tuple(1 if t == k else 0 for t in range(n1)): c for k, c in enumerate(row) if c})
            for row in self.matrix
        ]

    def apply_poly(self, f: MPoly) -> MPoly:
        return f.subst(self.forms())

    def inverse(self):
        return CoordChange(self.field, tuple(map(tuple, mat_inv(self.field, self.matrix))))

    def apply_point(self, point):
        F = self.field
        x = _as_ints(F, point)
        inv = mat_inv(F, self.matrix)
        return tuple(FieldElement(F, v) for v in mat_vec(F, inv, x))

    def then(self, other: "CoordChange") -> "CoordChange":
        """Apply self, then other: polynomials become f(A B z)."""
        return CoordChange(self.field, tuple(map(tuple, mat_mul(self.field, self.matrix, other.matrix))))

    def embed(self, F):
        return CoordChange(F, tuple(tuple(embed_int(x, self.field, F) for x in row) for row in self.matrix))

    def format(self):
        return [[self.field.format(x) for x in row] for row in self.matrix]


def parse_coordchange(rows, F):
    from .field import parse_element

    return CoordChange(F, tuple(tuple(parse_element(x, F).value for x in row) for row in rows))


def normalize_hyperplanes(forms) -> CoordChange:
    """Coordinates in which forms[j] becomes z_j."""
    F, n1 = forms[0].field, forms[0].nvars
    if len(forms) != n1:
        raise NotInGeneralPosition("need n+1 forms")
    L = []
    for f in forms:
        if not f.terms or f.is_homogeneous() is False or f.total_degree != 1:
            raise NotInGeneralPosition(f"{f} is not a linear form")
        L.append([f.terms.get(tuple(1 if t == k else 0 for t in range(n1)), 0) for k in range(n1)])
    inv = mat_inv(F, L)
    if inv is None:
        raise NotInGeneralPosition("forms are linearly dependent")
    return CoordChange(F, tuple(map(tuple, inv)))


def mobius_to_coordchange(tau, F: FieldConfig) -> CoordChange:
    """P^1 coordinates in which t' = (a + b t)/(c + d t), with t = z0/z1."""
    a, b, c, d = (_enc(F, x) for x in tau)
    B = [[b, a], [d, c]]
    inv = mat_inv(F, B)
    if inv is None:
        raise NotInGeneralPosition("degenerate Moebius transformation")
    return CoordChange(F, tuple(map(tuple, inv)))


# -- Abhyankar map ------------------------------------------------------------

def abhyankar_map(n: int, p: int, F: FieldConfig = None) -> ProjMap:
    """(g_0 : ... : g_n) with g_i the sum of m_I over (i+1)-subsets I."""
    if n < 1:
        raise ValueError("n must be at least 1")
    F = F or fq_make(p)
    if F.p != p:
        raise ValueError(f"field {F} does not have characteristic {p}")
    n1 = n + 1
    coords = []
    for i in range(n1):
        head = sum(p**k for k in range(n - i + 1))
        tail = [p ** (n - i + s) for s in range(1, i + 1)]
        terms = []
        for I in itertools.combinations(range(n1), i + 1):
            e = [0] * n1
            e[I[0]] = head
            for j, x in zip(I[1:], tail):
                e[j] = x
            terms.append((e, 1))
        coords.append(MPoly.from_terms(F, n1, terms))
    return ProjMap(tuple(coords))


def abhyankar_degree(n, p):
    return sum(p**k for k in range(n + 1))


# -- good triples --------------------------------------------------------------

@dataclass(frozen=True)
class GoodTriple:
    """(P^n, D_i, x_i): D_i = {z_0 ... z_(i-1) = 0} union V(cone)."""

    n: int
    field: FieldConfig
    i: int
    cone: MPoly
    point: tuple
    origin: "CoordChange" = None  # permutation applied to the caller's coordinates

    def __post_init__(self):
        object.__setattr__(self, "point", as_point(self.field, self.point))
        if self.cone.field != self.field:
            object.__setattr__(self, "cone", self.cone.embed(self.field))

    def violations(self):
        out = []
        if not self.cone.terms:
            return ["cone is zero"]
        if not self.cone.is_homogeneous():
            out.append("cone not homogeneous")
        if any(j < self.i for j in self.cone.variables()):
            out.append("cone mentions a hyperplane variable")
        if not any(self.point):
            out.append("point is zero")
            return out
        if not self.cone.eval(self.point):
            out.append("point lies on the cone")
        if any(not self.point[j] for j in range(self.i)):
            out.append("point lies on a hyperplane")
        if not self.point[self.n]:
            out.append("point has z_n = 0")
        return out

    def validate(self):
        bad = self.violations()
        if not bad:
            return self
        if "cone not homogeneous" in bad:
            raise NotHomogeneous(bad[0])
        if "point lies on the cone" in bad or "point lies on a hyperplane" in bad:
            raise PointOnDivisor("; ".join(bad))
        raise ValueError("; ".join(bad))

    def embed(self, F):
        origin = self.origin.embed(F) if self.origin else None
        return GoodTriple(self.n, F, self.i, self.cone.embed(F), self.point, origin)

    def divisor_poly(self) -> MPoly:
        """z_0 ... z_(i-1) * cone: D_i as a single hypersurface."""
        out = self.cone
        for j in range(self.i):
            out = out * MPoly.var(self.field, self.n + 1, j)
        return out

    def cone_is_zn_power(self):
        """True for c * z_n^e, including nonzero constants."""
        return len(self.cone.terms) == 1 and set(self.cone.variables()) <= {self.n}


# -- step 2 ---------------------------------------------------------------------

@dataclass
class Step2Result:
    coords: CoordChange
    map: ProjMap
    Q: AdditivePoly = None
    d: int = 1
    r0: MPoly = None
    next: GoodTriple = None
    records: dict = dc_field(default_factory=dict)
    skipped: bool = False
    trials: int = 1

    def embed(self, F):
        Q = None
        if self.Q is not None:
            Q = AdditivePoly(tuple(c.embed(F) for c in self.Q.coeffs), self.Q.p, self.Q.main_var)
        return Step2Result(
            self.coords.embed(F), self.map.embed(F), Q, self.d,
            self.r0.embed(F) if self.r0 is not None else None,
            self.next.embed(F), dict(self.records), self.skipped, self.trials,
        )

    def effective_map(self):
        """The step as a morphism in the incoming coordinates."""
        return self.map.precompose_linear(self.coords.inverse().forms())


def _image_tail_cone(r0: MPoly, d: int, i: int, n: int) -> MPoly:
    """Defining polynomial of the image of V(z_n * r0) under the step map.

    On z_n = 1 the tail coordinates y_j (i < j < n) map by y -> y^d - y, the
    quotient by translations by F_d^k; the image of V(rho) is cut out by the
    norm N(u) = prod_c rho(y + c), an invariant and hence a polynomial in u.
    """
    F, n1 = r0.field, r0.nvars
    zn = MPoly.var(F, n1, n)
    tail = list(range(i + 1, n))
    if not tail:
        return zn
    p = F.p
    # r0 is, up to sign, a (p-1)-th power: the product over nonzero span
    # elements pairs each v with its F_p-multiples.  A reduced cone keeps
    # the next additive multiple from collapsing.
    if p > 2:
        root = nth_root(r0, p - 1)
        if root is not None:
            r0 = root
    rho = r0.set_var(n, 1)
    if rho.is_constant():
        return zn
    m = round(math.log(d, p))
    L = F.k * m // math.gcd(F.k, m)
    E = F if L == F.k else fq_make(p, L)
    rho_E = rho.embed(E)
    Fd = [v for v in range(E.q) if E.pow(v, d) == v]
    gens = [MPoly.var(E, n1, j) for j in range(n1)]
    N = MPoly.one(E, n1)
    for shift in itertools.product(Fd, repeat=len(tail)):
        imgs = list(gens)
        for j, c in zip(tail, shift):
            imgs[j] = gens[j] + MPoly.const(E, n1, FieldElement(E, c))
        N = N.mul(rho_E.subst(imgs, cap=None), None)
    # rewrite the invariant N(y) as a polynomial in u_j = y_j^d - y_j
    u = {j: gens[j].pow(d) - gens[j] for j in tail}
    upow = {}
    out = {}
    work = N
    while work.terms:
        e, c = work.leading_term()
        if any(e[j] % d for j in tail):
            raise AssertionError("norm is not translation invariant")  # pragma: no cover
        ue = tuple(e[j] // d if j in tail else 0 for j in range(n1))
        sub = MPoly.const(E, n1, FieldElement(E, c))
        for j in tail:
            k = ue[j]
            if k:
                key = (j, k)
                if key not in upow:
                    upow[key] = u[j].pow(k, cap=None)
                sub = sub.mul(upow[key], None)
        work = work - sub
        out[ue] = c
    image = MPoly(E, n1, out).restrict(F)
    while not image.is_constant():
        ok, root = pth_power_part(image)
        if not ok:
            break
        image = root
    return (zn * image.homogenize(n)).monic()


def step2_map(triple: GoodTriple, coords: CoordChange) -> Step2Result:
    """Build f_i from P_i in the coordinates given by ``coords``.

    Conditions (a)-(d) are checked in order; (e) additionally requires the
    image point to avoid the image cone.  The first failure raises
    ConditionFailed carrying the records gathered so far.
    """
    n, i, F = triple.n, triple.i, triple.field
    if i >= n:
        raise ValueError("step maps exist only for i < n")
    if coords.field != F:
        raise MixedRings(f"coordinate change over {coords.field}, triple over {F}")
    P = coords.apply_poly(triple.cone)
    x = coords.apply_point(triple.point)
    xi = [v.value for v in x]
    records = {}

    def fail(cond):
        records[cond] = False
        raise ConditionFailed(cond, records)

    if any(j < i for j in P.variables()):
        raise ValueError("coordinate change left the hyperplane block")
    if P.degree_in(i) != P.total_degree:
        fail("a")
    records["a"] = True
    try:
        Q = additive_multiple(P, i)
    except NonConstantLeadingCoeff:  # pragma: no cover - excluded by (a)
        fail("a")
    d = Q.degree
    if not xi[n] or any(
        not F.sub(F.pow(xi[j], d), F.mul(xi[j], F.pow(xi[n], d - 1)))
        for j in range(n)
        if j != i
    ):
        fail("b")
    records["b"] = True
    r0 = Q.r0
    if not r0:
        fail("c")
    records["c"] = True
    Qm = Q.to_mpoly()
    if not Qm.eval_ints(xi):
        fail("d")
    records["d"] = True

    n1 = n + 1
    zn_d1 = MPoly.var(F, n1, n, d - 1)
    w = []
    for j in range(n1):
        zj = MPoly.var(F, n1, j)
        if j == i:
            w.append(Qm)
        elif j == n:
            w.append(MPoly.var(F, n1, n, d))
        else:
            w.append(zj.pow(d) - zj * zn_d1)
    fmap = ProjMap(tuple(w))
    next_cone = _image_tail_cone(r0, d, i, n)
    next_point = fmap.apply(x)
    nxt = GoodTriple(n, F, i + 1, next_cone, next_point)
    if nxt.violations():
        fail("e")
    records["e"] = True
    records["P_divides_w_i"] = divides(P, Qm)
    records["z_j_divides_w_j"] = all(
        divides(MPoly.var(F, n1, j), w[j]) for j in range(n) if j != i
    )
    return Step2Result(coords, fmap, Q, d, r0, nxt, records)


def skip_step(triple: GoodTriple) -> Step2Result:
    """Identity step for a cone that is already a power of z_n.

    A shear z_i -> z_i - z_n moves the point off {z_i = 0} when needed; it
    fixes V(z_n) and every earlier hyperplane.
    """
    n, i, F = triple.n, triple.i, triple.field
    M = [[1 if r == c else 0 for c in range(n + 1)] for r in range(n + 1)]
    if not triple.point[i]:
        M[i][n] = F.neg(1)
    A = CoordChange(F, tuple(map(tuple, M)))
    x = A.apply_point(triple.point)
    cone = A.apply_poly(triple.cone)
    nxt = GoodTriple(n, F, i + 1, cone, x)
    nxt.validate()
    return Step2Result(A, ProjMap.identity(n, F), None, 1, None, nxt,
                       {"skipped": True}, skipped=True)


def block_change_count(F, n, i):
    r = n - i + 1
    gl = 1
    for k in range(r):
        gl *= F.q**r - F.q**k
    return gl * (F.q - 1) ** i


def random_block_change(F, n, i, rng) -> CoordChange:
    """Uniform element of the stabilizer: rescalings on z_0..z_(i-1), GL on z_i..z_n."""
    n1 = n + 1
    while True:
        M = [[0] * n1 for _ in range(n1)]
        for j in range(i):
            M[j][j] = rng.randrange(1, F.q)
        for r in range(i, n1):
            for c in range(i, n1):
                M[r][c] = rng.randrange(F.q)
        if mat_det(F, M):
            return CoordChange(F, tuple(map(tuple, M)))


def all_block_changes(F, n, i):
    n1 = n + 1
    r = n1 - i
    for scal in itertools.product(range(1, F.q), repeat=i):
        for entries in itertools.product(range(F.q), repeat=r * r):
            M = [[0] * n1 for _ in range(n1)]
            for j, s in enumerate(scal):
                M[j][j] = s
            for idx, v in enumerate(entries):
                M[i + idx // r][i + idx % r] = v
            if mat_det(F, M):
                yield CoordChange(F, tuple(map(tuple, M)))
