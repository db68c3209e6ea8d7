"""Exact arithmetic in F_p and F_{p^k}.

Elements are encoded as integers ``v = c_0 + c_1 p + ... + c_{k-1} p^{k-1}``
where ``c_i`` are the coordinates in the power basis of the generator ``a``
(the class of ``t`` modulo the defining polynomial).  The encoding doubles as
the enumeration order, so ``0`` and ``1`` come first.

Low-level arithmetic works on the integer encodings via methods of
:class:`FieldConfig`; :class:`FieldElement` is the user-facing wrapper.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass, field

from . import upoly
from .errors import (
    FieldTooLarge,
    IncompatibleTower,
    MixedFields,
    NonPrime,
    NotInSubfield,
    ParseError,
    ReducibleModulus,
)

P_LIMIT = 17
Q_LIMIT = 2**20
_TABLE_LIMIT = 2**16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class FieldConfig:
    """The field F_{p^k} = F_p[t]/(modulus).

    ``modulus`` holds the coefficients of the monic defining polynomial, lowest
    degree first (length k+1).  Use :func:`fq_make` to construct validated
    instances; the constructor itself does no checking.
    """

    p: int
    k: int
    modulus: tuple
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def q(self) -> int:
        return self.p**self.k

    def __str__(self):
        return format_field_spec(self)

    # -- encoding ---------------------------------------------------------
    def digits(self, v: int) -> list:
        p, out = self.p, []
        for _ in range(self.k):
            v, r = divmod(v, p)
            out.append(r)
        return out

    def from_digits(self, ds) -> int:
        v = 0
        for c in reversed(ds):
            v = v * self.p + (c % self.p)
        return v

    def from_int(self, n: int) -> int:
        return n % self.p

    # -- arithmetic on encodings -----------------------------------------
    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.k == 1:
            return (a + b) % p
        if p == 2:
            return a ^ b
        out, scale = 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += ((x + y) % p) * scale
            scale *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if self.k == 1:
            return (-a) % p
        if p == 2:
            return a
        out, scale = 0, 1
        while a:
            a, x = divmod(a, p)
            out += ((-x) % p) * scale
            scale *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _mul_slow(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        x, y = self.digits(a), self.digits(b)
        prod = [0] * (2 * k - 1)
        for i, c in enumerate(x):
            if c:
                for j, d in enumerate(y):
                    if d:
                        prod[i + j] = (prod[i + j] + c * d) % p
        mod = self.modulus
        for top in range(2 * k - 2, k - 1, -1):
            c = prod[top]
            if c:
                for j in range(k):
                    prod[top - k + j] = (prod[top - k + j] - c * mod[j]) % p
                prod[top] = 0
        return self.from_digits(prod[:k])

    def _tables(self):
        tabs = self._cache.get("log")
        if tabs is None:
            q = self.q
            order = q - 1
            factors = _prime_factors(order)
            g = 2
            while True:
                if all(self._pow_slow(g, order // r) != 1 for r in factors):
                    break
                g += 1
            exp = [0] * (2 * order)
            log = [0] * q
            x = 1
            for i in range(order):
                exp[i] = x
                exp[i + order] = x
                log[x] = i
                x = self._mul_slow(x, g)
            tabs = self._cache.setdefault("log", (exp, log))
        return tabs

    def _pow_slow(self, a, e):
        r = 1
        while e:
            if e & 1:
                r = self._mul_slow(r, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return r

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        if self.q <= _TABLE_LIMIT:
            exp, log = self._tables()
            return exp[log[a] + log[b]]
        return self._mul_slow(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + str(self))
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        if self.q <= _TABLE_LIMIT:
            exp, log = self._tables()
            return exp[(self.q - 1 - log[a]) % (self.q - 1)]
        return self._pow_slow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self.k == 1:
            return pow(a, e, self.p)
        order = self.q - 1
        if self.q <= _TABLE_LIMIT:
            exp, log = self._tables()
            return exp[log[a] * (e % order) % order]
        return self._pow_slow(a, e % order or order)

    def frob(self, a: int, iterations: int = 1) -> int:
        return self.pow(a, self.p ** (iterations % self.k))

    # -- element helpers --------------------------------------------------
    def __call__(self, value) -> "FieldElement":
        """Coerce an int (reduced mod p), encoding-free string or element."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise MixedFields(f"{value.field} element used in {self}")
            return value
        if isinstance(value, str):
            return parse_element(value, self)
        return FieldElement(self, self.from_int(int(value)))

    def elem(self, v: int) -> "FieldElement":
        return FieldElement(self, v)

    @property
    def zero(self):
        return FieldElement(self, 0)

    @property
    def one(self):
        return FieldElement(self, 1)

    @property
    def gen(self):
        if self.k == 1:
            raise ParseError("prime fields have no generator symbol 'a'")
        return FieldElement(self, self.p)

    def format(self, v: int) -> str:
        if v == 0:
            return "0"
        parts = []
        for i, c in reversed(list(enumerate(self.digits(v)))):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mono = "a" if i == 1 else f"a^{i}"
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(parts)


@dataclass(frozen=True)
class FieldElement:
    field: FieldConfig
    value: int

    @property
    def coeffs(self) -> tuple:
        return tuple(self.field.digits(self.value))

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise MixedFields(f"cannot combine {self.field} and {other.field} elements")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(b, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(b, self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inv(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.value))

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"FieldElement({self.field}, {self})"


# -- construction ----------------------------------------------------------

@functools.lru_cache(maxsize=None)
def _make(p, k, modulus):
    return FieldConfig(p, k, modulus)


def _check_sizes(p, k):
    if not is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    if p > P_LIMIT:
        raise FieldTooLarge(f"characteristic {p} exceeds the limit {P_LIMIT}")
    if p**k > Q_LIMIT:
        raise FieldTooLarge(f"field order {p}^{k} exceeds {Q_LIMIT}")


def default_modulus(p: int, k: int) -> tuple:
    """Lexicographically smallest monic irreducible of degree k over F_p."""
    if k == 1:
        return (0, 1)
    Fp = _make(p, 1, (0, 1))
    for n in range(p**k):
        cand = _int_digits(n, p, k) + [1]
        if cand[0] == 0:
            continue
        if upoly.is_irreducible(Fp, cand):
            return tuple(cand)
    raise ReducibleModulus(f"no irreducible polynomial of degree {k} over F_{p}")  # pragma: no cover


def _int_digits(n, p, k):
    out = []
    for _ in range(k):
        n, r = divmod(n, p)
        out.append(r)
    return out


def fq_make(p: int, k: int = 1, modulus=None) -> FieldConfig:
    """Validated field F_{p^k}; the modulus defaults to the smallest irreducible."""
    _check_sizes(p, k)
    if modulus is None:
        return _make(p, k, default_modulus(p, k))
    mod = tuple(c % p for c in modulus)
    while len(mod) > 1 and mod[-1] == 0:
        mod = mod[:-1]
    if len(mod) != k + 1 or mod[-1] != 1:
        raise ReducibleModulus(f"modulus must be monic of degree {k}")
    if k == 1:
        # any monic linear modulus presents the same prime field
        return _make(p, 1, (0, 1))
    if not upoly.is_irreducible(_make(p, 1, (0, 1)), list(mod)):
        raise ReducibleModulus(f"modulus {format_upoly(mod, 't')} is reducible over F_{p}")
    return _make(p, k, mod)


def prime_field(p: int) -> FieldConfig:
    return fq_make(p, 1)


def enumerate_field(F: FieldConfig):
    """All q elements; 0 and 1 first."""
    return [FieldElement(F, v) for v in range(F.q)]


def frobenius(a: FieldElement, iterations: int = 1) -> FieldElement:
    return FieldElement(a.field, a.field.frob(a.value, iterations))


# -- embeddings ------------------------------------------------------------

def _embedding(src: FieldConfig, dst: FieldConfig):
    key = ("embed", src)
    hit = dst._cache.get(key)
    if hit is not None:
        return hit
    if src.p != dst.p or dst.k % src.k != 0:
        raise IncompatibleTower(f"{src} does not embed in {dst}")
    r = dst.k // src.k
    step = min(_prime_factors(r)) if r > 1 else 1
    if src.k == 1:
        powers = [1]
    elif step < r:
        # route through the first intermediate field, so that embeddings
        # along a tower compose to the direct one
        mid = fq_make(src.p, src.k * step)
        powers = tuple(embed_int(v, mid, dst) for v in _embedding(src, mid))
    else:
        mod = src.modulus
        root = None
        for v in range(dst.q):
            acc = 0
            for c in reversed(mod):
                acc = dst.add(dst.mul(acc, v), dst.from_int(c))
            if acc == 0:
                root = v
                break
        if root is None:  # pragma: no cover - impossible for a valid tower
            raise IncompatibleTower(f"no root of the {src} modulus in {dst}")
        powers = [1]
        for _ in range(src.k - 1):
            powers.append(dst.mul(powers[-1], root))
    return dst._cache.setdefault(key, tuple(powers))


def embed_int(v: int, src: FieldConfig, dst: FieldConfig) -> int:
    if src == dst:
        return v
    powers = _embedding(src, dst)
    if src.k == 1:
        return v
    acc = 0
    for c, pw in zip(src.digits(v), powers):
        if c:
            acc = dst.add(acc, dst.mul(dst.from_int(c), pw))
    return acc


def embed(a: FieldElement, target: FieldConfig) -> FieldElement:
    """Image of a under the fixed embedding source -> target (cached per pair)."""
    return FieldElement(target, embed_int(a.value, a.field, target))


def restrict_int(v: int, src: FieldConfig, dst: FieldConfig) -> int:
    """Preimage of v in dst under the embedding dst -> src."""
    if src == dst:
        return v
    key = ("restrict", dst)
    table = src._cache.get(key)
    if table is None:
        table = src._cache.setdefault(
            key, {embed_int(w, dst, src): w for w in range(dst.q)}
        )
    try:
        return table[v]
    except KeyError:
        raise NotInSubfield(f"{src.format(v)} does not lie in {dst}") from None


def common_field(*fields: FieldConfig) -> FieldConfig:
    """The largest of the given fields, provided every other one embeds in it."""
    big = max(fields, key=lambda F: F.k)
    for F in fields:
        if F.p != big.p or big.k % F.k:
            raise IncompatibleTower(f"{F} and {big} have no common field here")
    return big


def extension(F: FieldConfig, factor: int = 2) -> FieldConfig:
    return fq_make(F.p, F.k * factor)


# -- text formats ----------------------------------------------------------

def format_upoly(coeffs, var="t") -> str:
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            mono = var if i == 1 else f"{var}^{i}"
            parts.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(parts) or "0"


def format_field_spec(F: FieldConfig) -> str:
    s = f"{F.p}^{F.k}"
    if F.k > 1 and F.modulus != default_modulus(F.p, F.k):
        s += ";mod=" + format_upoly(F.modulus, "t")
    return s


_SPEC_RE = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*(?:;\s*mod\s*=\s*(.+))?$")


def parse_field_spec(text: str) -> FieldConfig:
    """Parse ``p``, ``p^k`` or ``p^k;mod=<poly in t>``."""
    m = _SPEC_RE.match(text)
    if not m:
        raise ParseError(f"bad field spec {text!r}")
    p = int(m.group(1))
    k = int(m.group(2) or 1)
    modulus = None
    if m.group(3):
        from .poly import parse_poly

        Fp = fq_make(p, 1)
        f = parse_poly(m.group(3), Fp, names=("t",))
        modulus = [0] * (f.degree_in(0) + 1)
        for (e,), c in f.terms.items():
            modulus[e] = c
    return fq_make(p, k, modulus)


def parse_element(text: str, F: FieldConfig) -> FieldElement:
    from .poly import parse_poly

    f = parse_poly(text, F, names=())
    return f.constant_coeff()
