"""Dense univariate polynomials over a FieldConfig.

Polynomials are lists of encoded field elements, lowest degree first, with no
trailing zeros (the zero polynomial is ``[]``).  Used for irreducibility tests,
root finding and distinct-root counting where the sparse MPoly is overkill.
"""


def trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def deg(f):
    return len(f) - 1


def add(F, f, g):
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = F.add(out[i], c)
    return trim(out)


def sub(F, f, g):
    return add(F, f, [F.neg(c) for c in g])


def scale(F, f, c):
    if c == 0:
        return []
    return trim([F.mul(c, x) for x in f])


def mul(F, f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            if b:
                out[i + j] = F.add(out[i + j], F.mul(a, b))
    return trim(out)


def divmod_(F, f, g):
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(f)
    dg = len(g) - 1
    inv_lead = F.inv(g[-1])
    q = [0] * max(len(f) - dg, 0)
    while len(r) - 1 >= dg and r:
        shift = len(r) - 1 - dg
        c = F.mul(r[-1], inv_lead)
        q[shift] = c
        for j, b in enumerate(g):
            if b:
                r[shift + j] = F.sub(r[shift + j], F.mul(c, b))
        trim(r)
    return trim(q), r


def mod(F, f, g):
    return divmod_(F, f, g)[1]


def monic(F, f):
    if not f:
        return f
    return scale(F, f, F.inv(f[-1]))


def gcd(F, f, g):
    f, g = list(f), list(g)
    while g:
        f, g = g, mod(F, f, g)
    return monic(F, f)


def derivative(F, f):
    return trim([F.mul(F.from_int(i), c) for i, c in enumerate(f)][1:])


def powmod(F, f, e, m):
    """f**e mod m by square-and-multiply; e may be astronomically large."""
    result = [1]
    base = mod(F, f, m)
    while e:
        if e & 1:
            result = mod(F, mul(F, result, base), m)
        e >>= 1
        if e:
            base = mod(F, mul(F, base, base), m)
    return result


def evaluate(F, f, x):
    acc = 0
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def x_power_frobenius(F, h, Q, m):
    """X**(Q**m) mod h, computed as m successive Q-th powers."""
    r = [0, 1]
    for _ in range(m):
        r = powmod(F, r, Q, h)
    return r


def distinct_root_count(F, h, m):
    """Number of distinct roots of h lying in the degree-m extension of F.

    Equals deg gcd(h, X^(q^m) - X); X^(q^m) is only ever formed modulo h.
    """
    if deg(h) < 1:
        return 0
    xm = x_power_frobenius(F, h, F.q, m)
    return deg(gcd(F, h, sub(F, xm, [0, 1])))


def is_irreducible(F, f):
    """Ben-Or test: f of degree k is irreducible iff gcd(f, X^(q^i) - X) = 1 for i <= k/2."""
    k = deg(f)
    if k < 1:
        return False
    if k == 1:
        return True
    f = monic(F, f)
    r = [0, 1]
    for _ in range(k // 2):
        r = powmod(F, r, F.q, f)
        if deg(gcd(F, f, sub(F, r, [0, 1]))) > 0:
            return False
    return True


def geometric_root_count(F, h):
    """Distinct roots of h over the algebraic closure of F.

    gcd(h, X^(q^j) - X) collects the roots lying in the degree-j extension;
    every root lives in some extension of degree at most deg h, so counting
    roots of exact degree j for j <= deg h and summing is complete.
    """
    n = deg(h)
    if n < 1:
        return 0
    h = monic(F, h)
    r = [0, 1]
    exact = {}
    for j in range(1, n + 1):
        r = powmod(F, r, F.q, h)
        in_ext = deg(gcd(F, h, sub(F, r, [0, 1])))
        exact[j] = in_ext - sum(c for i, c in exact.items() if j % i == 0 and i < j)
    return sum(exact.values())
