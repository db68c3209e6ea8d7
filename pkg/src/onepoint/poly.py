"""Sparse multivariate polynomials over a finite field.

An :class:`MPoly` maps exponent tuples to nonzero encoded coefficients of its
:class:`~onepoint.field.FieldConfig`.  Values are treated as immutable.

Division uses graded-lex order throughout, so ``NotDivisible`` outcomes are
deterministic.  Every operation that expands a product checks the resulting
total degree against a cap first (default :data:`DEGREE_CAP`).
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass
from itertools import combinations

from .errors import (
    DegreeTooLarge,
    DivisorZero,
    MixedRings,
    NotDivisible,
    NotHomogeneous,
    ParseError,
    ZeroPolynomial,
)
from .field import _TABLE_LIMIT, FieldConfig, FieldElement, common_field, embed_int

DEGREE_CAP = 4096
ZERO_DEGREE = float("-inf")


def _check_cap(d, cap):
    if cap is not None and d > cap:
        raise DegreeTooLarge(f"total degree {d} exceeds cap {cap}")


def _grlex(e):
    return (sum(e), e)


class MPoly:
    __slots__ = ("field", "nvars", "terms", "_hash")

    def __init__(self, field: FieldConfig, nvars: int, terms=None):
        # terms must already be normalized: tuple keys of length nvars, nonzero int values
        self.field = field
        self.nvars = nvars
        self.terms = terms if terms is not None else {}
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_terms(cls, field, nvars, items):
        """Build from (exponent tuple, coefficient) pairs, summing duplicates."""
        acc = {}
        for e, c in items:
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError("exponent length mismatch")
            if isinstance(c, FieldElement):
                c = c.value
            else:
                c = field.from_int(c)
            if c:
                acc[e] = field.add(acc.get(e, 0), c)
        return cls(field, nvars, {e: c for e, c in acc.items() if c})

    @classmethod
    def zero(cls, field, nvars):
        return cls(field, nvars, {})

    @classmethod
    def const(cls, field, nvars, c):
        if isinstance(c, FieldElement):
            c = c.value
        else:
            c = field.from_int(c)
        return cls(field, nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def one(cls, field, nvars):
        return cls.const(field, nvars, 1)

    @classmethod
    def var(cls, field, nvars, i, power=1):
        e = [0] * nvars
        e[i] = power
        return cls(field, nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, field, nvars, exps, c=1):
        return cls.from_terms(field, nvars, [(exps, c)])

    def gens(self):
        return [MPoly.var(self.field, self.nvars, i) for i in range(self.nvars)]

    # -- basic properties -------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    @property
    def total_degree(self):
        if not self.terms:
            return ZERO_DEGREE
        return max(sum(e) for e in self.terms)

    def degree_in(self, var):
        if not self.terms:
            return ZERO_DEGREE
        return max(e[var] for e in self.terms)

    def variables(self):
        """Indices of variables that actually occur."""
        used = set()
        for e in self.terms:
            used.update(i for i, x in enumerate(e) if x)
        return sorted(used)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_coeff(self) -> FieldElement:
        return FieldElement(self.field, self.terms.get((0,) * self.nvars, 0))

    def coeff(self, exps) -> FieldElement:
        return FieldElement(self.field, self.terms.get(tuple(exps), 0))

    def leading_term(self):
        """(exponents, coefficient) of the graded-lex leading term."""
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        e = max(self.terms, key=_grlex)
        return e, self.terms[e]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex(t[0]), reverse=True)

    # -- equality / hashing -----------------------------------------------
    def __eq__(self, other):
        if isinstance(other, MPoly):
            return (
                self.field == other.field
                and self.nvars == other.nvars
                and self.terms == other.terms
            )
        if isinstance(other, (int, FieldElement)):
            return self == MPoly.const(self.field, self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.nvars, frozenset(self.terms.items())))
        return self._hash

    # -- arithmetic -------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, MPoly):
            if other.field != self.field or other.nvars != self.nvars:
                raise MixedRings(
                    f"ring mismatch: {self.field}[{self.nvars}] vs {other.field}[{other.nvars}]"
                )
            return other
        if isinstance(other, (int, FieldElement)):
            if isinstance(other, FieldElement) and other.field != self.field:
                raise MixedRings(f"{other.field} scalar in {self.field} ring")
            return MPoly.const(self.field, self.nvars, other)
        return None

    def __add__(self, other):
        g = self._lift(other)
        if g is None:
            return NotImplemented
        F = self.field
        out = dict(self.terms)
        for e, c in g.terms.items():
            v = F.add(out.get(e, 0), c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MPoly(F, self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return MPoly(F, self.nvars, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        g = self._lift(other)
        if g is None:
            return NotImplemented
        return self + (-g)

    def __rsub__(self, other):
        g = self._lift(other)
        if g is None:
            return NotImplemented
        return g + (-self)

    def scale(self, c):
        F = self.field
        if isinstance(c, FieldElement):
            c = c.value
        else:
            c = F.from_int(c)
        if c == 0:
            return MPoly.zero(F, self.nvars)
        return MPoly(F, self.nvars, {e: F.mul(c, x) for e, x in self.terms.items()})

    def mul(self, other, cap=DEGREE_CAP):
        g = self._lift(other)
        if not self.terms or not g.terms:
            return MPoly.zero(self.field, self.nvars)
        _check_cap(self.total_degree + g.total_degree, cap)
        F = self.field
        add, mul = F.add, F.mul
        out = {}
        a_items = list(self.terms.items())
        b_items = list(g.terms.items())
        if len(a_items) < len(b_items):
            a_items, b_items = b_items, a_items
        for eb, cb in b_items:
            for ea, ca in a_items:
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = add(out.get(e, 0), mul(ca, cb))
        return MPoly(F, self.nvars, {e: c for e, c in out.items() if c})

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            if isinstance(other, FieldElement) and other.field != self.field:
                raise MixedRings(f"{other.field} scalar in {self.field} ring")
            return self.scale(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.mul(other)

    __rmul__ = __mul__

    def frobenius(self, iterations=1):
        """f**(p**iterations), computed termwise (exact in characteristic p)."""
        F = self.field
        pe = F.p**iterations
        return MPoly(
            F,
            self.nvars,
            {tuple(x * pe for x in e): F.pow(c, pe) for e, c in self.terms.items()},
        )

    def pow(self, n, cap=DEGREE_CAP):
        if n < 0:
            raise ValueError("negative exponent")
        if n == 0:
            return MPoly.one(self.field, self.nvars)
        if not self.terms:
            return MPoly.zero(self.field, self.nvars)
        _check_cap(self.total_degree * n, cap)
        p = self.field.p
        if n % p == 0:
            return self.pow(n // p, cap).frobenius()
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            return MPoly(
                self.field, self.nvars, {tuple(x * n for x in e): self.field.pow(c, n)}
            )
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result.mul(base, cap)
            n >>= 1
            if n:
                base = base.mul(base, cap)
        return result

    def __pow__(self, n):
        return self.pow(n)

    # -- calculus ---------------------------------------------------------
    def derivative(self, var):
        if not 0 <= var < self.nvars:
            raise IndexError(var)
        F = self.field
        out = {}
        for e, c in self.terms.items():
            k = e[var] % F.p
            if k == 0:
                continue
            v = F.mul(c, k)
            ne = list(e)
            ne[var] -= 1
            out[tuple(ne)] = v
        return MPoly(F, self.nvars, out)

    # -- substitution / evaluation ----------------------------------------
    def subst(self, images, cap=DEGREE_CAP):
        """Replace variable i by images[i] and expand."""
        if len(images) != self.nvars:
            raise MixedRings("need one image per variable")
        if not images:
            return self
        ring = images[0]
        for g in images:
            if g.field != ring.field or g.nvars != ring.nvars:
                raise MixedRings("substitution images must share a ring")
        F = ring.field
        if F != self.field:
            if self.field.p != F.p:
                raise MixedRings("characteristic mismatch in substitution")
            src = self.embed(F)
        else:
            src = self
        if src.terms:
            bound = max(
                sum(x * max(images[i].total_degree, 0) for i, x in enumerate(e))
                for e in src.terms
            )
            _check_cap(bound, cap)
        powers = [dict() for _ in images]

        def power(i, k):
            hit = powers[i].get(k)
            if hit is None:
                hit = images[i].pow(k, cap)
                powers[i][k] = hit
            return hit

        acc = {}
        one = MPoly.one(F, ring.nvars)
        for e, c in src.sorted_terms():
            term = one
            for i, k in enumerate(e):
                if k:
                    term = term.mul(power(i, k), cap)
                    if not term.terms:
                        break
            for te, tc in term.terms.items():
                acc[te] = F.add(acc.get(te, 0), F.mul(c, tc))
        return MPoly(F, ring.nvars, {e: c for e, c in acc.items() if c})

    def eval_ints(self, point):
        """Evaluate at a tuple of encoded elements of this polynomial's field."""
        F = self.field
        add, mul, pw = F.add, F.mul, F.pow
        acc = 0
        if F.k > 1 and F.q <= _TABLE_LIMIT:
            exp, log = F._tables()
            order = F.q - 1
            logs = [log[x] if x else None for x in point]
            for e, c in self.terms.items():
                s = log[c]
                for lx, k in zip(logs, e):
                    if k:
                        if lx is None:
                            break
                        s += lx * k
                else:
                    acc = add(acc, exp[s % order])
            return acc
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = mul(v, pw(x, k))
                    if v == 0:
                        break
            acc = add(acc, v)
        return acc

    def __call__(self, *point):
        return self.eval(point)

    def eval(self, point) -> FieldElement:
        """Evaluate at FieldElements, working in the largest field involved."""
        if len(point) != self.nvars:
            raise MixedRings(f"expected {self.nvars} coordinates, got {len(point)}")
        fields = [self.field] + [x.field for x in point if isinstance(x, FieldElement)]
        F = common_field(*fields)
        vals = []
        for x in point:
            if isinstance(x, FieldElement):
                vals.append(embed_int(x.value, x.field, F))
            else:
                vals.append(F.from_int(x))
        f = self if F == self.field else self.embed(F)
        return FieldElement(F, f.eval_ints(vals))

    def embed(self, target: FieldConfig):
        if target == self.field:
            return self
        src = self.field
        return MPoly(
            target,
            self.nvars,
            {e: embed_int(c, src, target) for e, c in self.terms.items()},
        )

    def restrict(self, target: FieldConfig):
        """Pull coefficients back into a subfield (NotInSubfield if impossible)."""
        from .field import restrict_int

        if target == self.field:
            return self
        return MPoly(
            target,
            self.nvars,
            {e: restrict_int(c, self.field, target) for e, c in self.terms.items()},
        )

    def extend_vars(self, nvars, positions=None):
        """Re-home into a ring with more variables; variable i goes to positions[i]."""
        positions = positions if positions is not None else list(range(self.nvars))
        out = {}
        for e, c in self.terms.items():
            ne = [0] * nvars
            for i, x in zip(positions, e):
                ne[i] += x
            out[tuple(ne)] = c
        return MPoly(self.field, nvars, out)

    def set_var(self, var, value):
        """Substitute a field constant for one variable (other variables kept)."""
        F = self.field
        if isinstance(value, FieldElement):
            value = value.value
        out = {}
        for e, c in self.terms.items():
            k = e[var]
            v = F.mul(c, F.pow(value, k)) if k else c
            if v:
                ne = list(e)
                ne[var] = 0
                ne = tuple(ne)
                out[ne] = F.add(out.get(ne, 0), v)
        return MPoly(F, self.nvars, {e: c for e, c in out.items() if c})

    def homogenize(self, var, degree=None):
        """Multiply each term by a power of var to reach a common degree."""
        if not self.terms:
            return self
        d = self.total_degree if degree is None else degree
        out = {}
        for e, c in self.terms.items():
            ne = list(e)
            ne[var] += d - sum(e)
            if ne[var] < 0:
                raise ValueError("target degree below polynomial degree")
            out[tuple(ne)] = c
        return MPoly(self.field, self.nvars, out)

    # -- structure --------------------------------------------------------
    def homogeneous_degree(self):
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no homogeneous degree")
        degs = {sum(e) for e in self.terms}
        if len(degs) != 1:
            raise NotHomogeneous(f"term degrees {sorted(degs)} differ")
        return degs.pop()

    def is_homogeneous(self):
        try:
            self.homogeneous_degree()
        except (NotHomogeneous, ZeroPolynomial):
            return False
        return True

    def monic(self):
        _, c = self.leading_term()
        return self.scale(FieldElement(self.field, self.field.inv(c)))

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MPoly({self.field}, {self})"


# -- division ---------------------------------------------------------------

def exact_div(f: MPoly, g: MPoly) -> MPoly:
    """h with f = g*h, by graded-lex leading-term elimination; NotDivisible otherwise."""
    if g.field != f.field or g.nvars != f.nvars:
        raise MixedRings("division across rings")
    if not g.terms:
        raise DivisorZero("division by the zero polynomial")
    F = f.field
    ge, gc = g.leading_term()
    ginv = F.inv(gc)
    g_items = list(g.terms.items())
    r = dict(f.terms)
    heap = [(-sum(e), tuple(-x for x in e)) for e in r]
    heapq.heapify(heap)
    quot = {}
    while r:
        while True:
            negd, nege = heapq.heappop(heap)
            e = tuple(-x for x in nege)
            if e in r:
                break
        shift = tuple(x - y for x, y in zip(e, ge))
        if any(x < 0 for x in shift):
            raise NotDivisible("leading term not divisible")
        c = F.mul(r[e], ginv)
        quot[shift] = c
        for te, tc in g_items:
            ne = tuple(x + y for x, y in zip(te, shift))
            old = r.get(ne)
            v = F.sub(old or 0, F.mul(c, tc))
            if v:
                if old is None:
                    heapq.heappush(heap, (-sum(ne), tuple(-x for x in ne)))
                r[ne] = v
            elif old is not None:
                del r[ne]
    return MPoly(F, f.nvars, quot)


def remainder(f: MPoly, g: MPoly) -> MPoly:
    """Normal form of f modulo the principal ideal (g), graded-lex.

    A single polynomial is a Groebner basis of its ideal, so the result is
    canonical and vanishes exactly when g divides f.
    """
    if g.field != f.field or g.nvars != f.nvars:
        raise MixedRings("division across rings")
    if not g.terms:
        raise DivisorZero("division by the zero polynomial")
    F = f.field
    ge, gc = g.leading_term()
    ginv = F.inv(gc)
    g_items = [(e, c) for e, c in g.terms.items() if e != ge]
    r = dict(f.terms)
    heap = [(-sum(e), tuple(-x for x in e)) for e in r]
    heapq.heapify(heap)
    rem = {}
    while heap:
        _, nege = heapq.heappop(heap)
        e = tuple(-x for x in nege)
        c0 = r.pop(e, None)
        if c0 is None:
            continue
        shift = tuple(x - y for x, y in zip(e, ge))
        if any(x < 0 for x in shift):
            rem[e] = c0
            continue
        c = F.mul(c0, ginv)
        for te, tc in g_items:
            ne = tuple(x + y for x, y in zip(te, shift))
            old = r.get(ne)
            v = F.sub(old or 0, F.mul(c, tc))
            if v:
                if old is None:
                    heapq.heappush(heap, (-sum(ne), tuple(-x for x in ne)))
                r[ne] = v
            elif old is not None:
                del r[ne]
    return MPoly(F, f.nvars, rem)


def divides(g: MPoly, f: MPoly) -> bool:
    try:
        exact_div(f, g)
    except NotDivisible:
        return False
    return True


# -- univariate view -------------------------------------------------------

@dataclass(frozen=True)
class UPolyView:
    """f regarded as a polynomial in one variable over the remaining ones.

    ``coeffs[j]`` is the coefficient of main_var**j, kept in the full ring
    with main_var absent.
    """

    main_var: int
    coeffs: tuple

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    def reassemble(self):
        if not self.coeffs:
            raise ValueError("empty view carries no ring")
        first = self.coeffs[0]
        acc = MPoly.zero(first.field, first.nvars)
        for j, c in enumerate(self.coeffs):
            if c:
                acc = acc + c * MPoly.var(c.field, c.nvars, self.main_var, j)
        return acc


def up_view(f: MPoly, main_var: int) -> UPolyView:
    if not 0 <= main_var < f.nvars:
        raise IndexError(main_var)
    if not f.terms:
        return UPolyView(main_var, ())
    d = f.degree_in(main_var)
    buckets = [dict() for _ in range(d + 1)]
    for e, c in f.terms.items():
        ne = list(e)
        k = ne[main_var]
        ne[main_var] = 0
        buckets[k][tuple(ne)] = c
    return UPolyView(main_var, tuple(MPoly(f.field, f.nvars, b) for b in buckets))


# -- determinants -----------------------------------------------------------

def det(matrix, cap=DEGREE_CAP):
    """Determinant of a square matrix of MPoly by memoised Laplace expansion."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    ring = matrix[0][0]
    memo = {}

    def minor(row, cols):
        # expand along `row` using columns `cols` (a sorted tuple)
        if row == n:
            return MPoly.one(ring.field, ring.nvars)
        hit = memo.get(cols)
        if hit is not None:
            return hit
        acc = MPoly.zero(ring.field, ring.nvars)
        for idx, col in enumerate(cols):
            entry = matrix[row][col]
            if not entry.terms:
                continue
            sub = minor(row + 1, cols[:idx] + cols[idx + 1 :])
            if not sub.terms:
                continue
            term = entry.mul(sub, cap)
            acc = acc - term if idx % 2 else acc + term
        memo[cols] = acc
        return acc

    return minor(0, tuple(range(n)))


def jacobian_matrix(fs, vars_):
    return [[f.derivative(v) for v in vars_] for f in fs]


def jacobian_det(fs, vars_, cap=DEGREE_CAP):
    if len(fs) != len(vars_):
        raise ValueError("need as many polynomials as variables")
    return det(jacobian_matrix(fs, vars_), cap)


def pth_power_part(f: MPoly):
    """(True, g) with g**p == f when f is a p-th power, else (False, None)."""
    F = f.field
    p = F.p
    if any(x % p for e in f.terms for x in e):
        return False, None
    root_exp = F.q // p
    g = MPoly(
        F,
        f.nvars,
        {tuple(x // p for x in e): F.pow(c, root_exp) for e, c in f.terms.items()},
    )
    return True, g


def nth_root(f: MPoly, e: int):
    """Monic g with g**e equal to f made monic, for e prime to p; None if none.

    Terms of g are found in decreasing graded-lex order: the leading term of
    f - g**e must equal e * lt(g)**(e-1) * t for the next term t.
    """
    F = f.field
    if e % F.p == 0:
        raise ValueError("root index must be prime to the characteristic")
    if not f.terms:
        return None
    f = f.monic()
    if e == 1:
        return f
    lead, _ = f.leading_term()
    if any(x % e for x in lead):
        return None
    top = tuple(x // e for x in lead)
    coef = F.inv(F.from_int(e))
    s = {top: 1}
    while True:
        g = MPoly(F, f.nvars, s)
        R = f - g.pow(e, cap=None)
        if not R.terms:
            return g
        re, rc = R.leading_term()
        te = tuple(x - (e - 1) * y for x, y in zip(re, top))
        if any(x < 0 for x in te) or te in s or _grlex(te) >= _grlex(top):
            return None
        s[te] = F.mul(rc, coef)


# -- text format -------------------------------------------------------------

def default_names(nvars):
    return tuple(f"z{i}" for i in range(nvars))


def _format_monomial(e, names):
    parts = []
    for x, name in zip(e, names):
        if x == 1:
            parts.append(name)
        elif x > 1:
            parts.append(f"{name}^{x}")
    return "*".join(parts)


def format_poly(f: MPoly, names=None) -> str:
    names = names or default_names(f.nvars)
    if not f.terms:
        return "0"
    out = []
    for e, c in f.sorted_terms():
        mono = _format_monomial(e, names)
        cs = f.field.format(c)
        if not mono:
            out.append(f"({cs})" if "+" in cs else cs)
        elif c == 1:
            out.append(mono)
        elif "+" in cs:
            out.append(f"({cs})*{mono}")
        else:
            out.append(f"{cs}*{mono}")
    return " + ".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text):
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        pos = m.end()
        num, ident, sym = m.groups()
        if num is not None:
            toks.append(("num", int(num)))
        elif ident is not None:
            toks.append(("id", ident))
        elif sym is not None and not sym.isspace():
            if sym not in "+-*^()":
                raise ParseError(f"unexpected character {sym!r}")
            toks.append(("sym", sym))
    return toks


class _Parser:
    def __init__(self, text, field, names):
        self.toks = _tokenize(text)
        self.i = 0
        self.F = field
        self.names = list(names)
        self.nv = len(self.names)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self):
        if not self.toks:
            raise ParseError("empty polynomial")
        f = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input at token {self.peek()[1]!r}")
        return f

    def expr(self):
        f = self.term()
        while self.peek() in (("sym", "+"), ("sym", "-")):
            op = self.take()[1]
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self):
        f = self.unary()
        while self.peek() == ("sym", "*"):
            self.take()
            f = f * self.unary()
        return f

    def unary(self):
        if self.peek() == ("sym", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("sym", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("sym", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer")
            return base.pow(val)
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return MPoly.const(self.F, self.nv, val)
        if kind == "id":
            if val in self.names:
                return MPoly.var(self.F, self.nv, self.names.index(val))
            if val == "a":
                return MPoly.const(self.F, self.nv, self.F.gen)
            raise ParseError(f"unknown symbol {val!r}")
        if (kind, val) == ("sym", "("):
            f = self.expr()
            if self.take() != ("sym", ")"):
                raise ParseError("missing ')'")
            return f
        raise ParseError(f"unexpected token {val!r}")


def parse_poly(text: str, field: FieldConfig, nvars=None, names=None) -> MPoly:
    """Parse the ``z0^3 + (a+1)*z0*z1^2`` text format.

    Either give explicit variable ``names`` or ``nvars`` (names z0..z{nvars-1});
    with neither, nvars is inferred from the largest ``z<i>`` mentioned.
    """
    if names is None:
        if nvars is None:
            idx = [int(m) for m in re.findall(r"\bz(\d+)\b", text)]
            nvars = max(idx) + 1 if idx else 1
        names = default_names(nvars)
    return _Parser(text, field, names).parse()


def symmetric_names(prefix, n, start=1):
    return tuple(f"{prefix}{i}" for i in range(start, start + n))


def elementary_symmetric(field, nvars, j, vars_=None):
    vars_ = list(range(nvars)) if vars_ is None else list(vars_)
    terms = []
    for combo in combinations(vars_, j):
        e = [0] * nvars
        for v in combo:
            e[v] = 1
        terms.append((e, 1))
    return MPoly.from_terms(field, nvars, terms)
