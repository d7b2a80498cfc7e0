"""Independent reference implementations used only to pin expected values.

Everything here is deliberately naive: plain polynomial substitution instead
of Horner, rational binomial series reduced p-adically, unions over all
group elements instead of orbit walks.  Tests compare the package's fast
paths against these.
"""

from fractions import Fraction


def poly_mul(u, v, M, p):
    out = [0] * (M + 1)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                if i + j > M:
                    break
                out[i + j] = (out[i + j] + a * b) % p
    return out


def naive_substitute(outer, inner, M, p):
    """outer(inner(t)) with coefficient lists indexed by degree, a[0] = 0."""
    out = [0] * (M + 1)
    power = [1] + [0] * M
    for i in range(1, M + 1):
        power = poly_mul(power, inner, M, p)
        c = outer[i]
        if c:
            for d in range(M + 1):
                out[d] = (out[d] + c * power[d]) % p
    return out


def mod_p_fraction(q, p):
    """Reduce a rational with nonnegative p-adic valuation mod p."""
    num, den = q.numerator, q.denominator
    v = 0
    while num and num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    if v < 0:
        raise ValueError("negative valuation")
    if v > 0 or num == 0:
        return 0
    return num * pow(den, -1, p) % p


def binomial_series(exponent, scale, shift, M, p):
    """(1 + scale*t^shift)^exponent over Q, reduced mod p, degrees 0..M."""
    out = [0] * (M + 1)
    coef = Fraction(1)
    n = 0
    while n * shift <= M:
        out[n * shift] = mod_p_fraction(coef * Fraction(scale) ** n, p)
        coef = coef * (Fraction(exponent) - n) / (n + 1)
        n += 1
    return out


def series_from_unit(unit, M):
    """t * u(t) as a degree-indexed list."""
    out = [0] * (M + 1)
    for i in range(M):
        out[i + 1] = unit[i]
    return out


def brute_sigma(G, x, y):
    """Sigma(x, y) via conjugation by every group element."""
    out = set()
    for z in (x, y, G.mul(x, y)):
        cyc = [G.identity]
        cur = z
        while cur != G.identity:
            cyc.append(cur)
            cur = G.mul(cur, z)
        for g in G.elements:
            gi = G.inv(g)
            out.update(G.mul(G.mul(gi, c), g) for c in cyc)
    return frozenset(out)


def brute_closure(G, seeds):
    """Subgroup closure by repeated two-sided multiplication to a fixpoint."""
    cur = {G.identity, *seeds}
    while True:
        new = set()
        for a in cur:
            for b in cur:
                c = G.mul(a, b)
                if c not in cur:
                    new.add(c)
            ai = G.inv(a)
            if ai not in cur:
                new.add(ai)
        if not new:
            return frozenset(cur)
        cur |= new
