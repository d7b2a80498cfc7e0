"""Truncated power-series automorphisms over F_p.

A normalized automorphism of F_p[[t]] is a series f(t) = t + a_2 t^2 + ...
Working modulo t^(M+1) gives an exact model of the finite quotient N/N_M of
the group N of all such automorphisms: two automorphisms agree modulo N_M
exactly when their coefficients a_2..a_M agree, and composition truncated at
degree M is well defined on those classes.

The group operation is composition read left to right: (f*g)(t) = g(f(t)),
i.e. f is applied first.  Everything here is exact small-integer arithmetic
mod p; all values are immutable.
"""

from math import inf

INFINITE = inf


class CharacteristicError(ValueError):
    """Raised for characteristic-2 requests; only odd p is supported."""


def _check_p(p):
    if p < 3 or p % 2 == 0:
        raise CharacteristicError("modulus must be an odd prime, got %r" % (p,))
    if any(p % q == 0 for q in range(3, int(p ** 0.5) + 1, 2)):
        raise ValueError("modulus %d is not prime" % p)


def unit_mul(u, v, p):
    """Product of two unit series given as coefficient tuples c_0..c_M."""
    M = len(u) - 1
    out = [0] * (M + 1)
    for i, a in enumerate(u):
        if a:
            for j in range(M + 1 - i):
                b = v[j]
                if b:
                    out[i + j] = (out[i + j] + a * b) % p
    return tuple(out)


def inv_sqrt(u, p):
    """Inverse square root of a unit series with constant term 1.

    Newton iteration g <- g*(3 - u*g^2)/2 with doubling precision; division
    by 2 is multiplication by the inverse of 2 mod p, so p must be odd.
    Binomial expansion is avoided on purpose: its denominators hit factors
    of p at depth p and beyond.
    """
    _check_p(p)
    if u[0] % p != 1:
        raise ValueError("constant term must be 1")
    M = len(u) - 1
    half = pow(2, -1, p)
    g = [1] + [0] * M
    prec = 1
    while prec <= M:
        prec = min(2 * prec, M + 1)
        cut = u[:prec] + (0,) * (M + 1 - prec)
        gg = unit_mul(tuple(g), tuple(g), p)
        sgg = unit_mul(cut, gg, p)
        corr = tuple((3 - c if i == 0 else -c) % p for i, c in enumerate(sgg))
        g = [c * half % p for c in unit_mul(tuple(g), corr, p)]
    res = tuple(g)
    check = unit_mul(unit_mul(res, res, p), u, p)
    assert check[0] == 1 and not any(check[1:]), "Newton iteration failed"
    return res


class TruncSeries:
    """A normalized automorphism t + a_2 t^2 + ... + a_M t^M over F_p.

    coeffs stores a_1..a_M with a_1 = 1.  Instances are immutable and
    hashable; as group elements they represent classes of N/N_M.
    """

    __slots__ = ("p", "M", "coeffs", "_hash")

    def __init__(self, p, coeffs):
        _check_p(p)
        coeffs = tuple(c % p for c in coeffs)
        if not coeffs or coeffs[0] != 1:
            raise ValueError("series must be normalized: a_1 = 1")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "M", len(coeffs))
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "_hash", hash((p, coeffs)))

    def __setattr__(self, *a):
        raise AttributeError("TruncSeries is immutable")

    @classmethod
    def identity(cls, p, M):
        return cls(p, (1,) + (0,) * (M - 1))

    @classmethod
    def from_unit(cls, p, unit):
        """t * u(t) for a unit series u with u(0) = 1."""
        return cls(p, unit[:-1] if len(unit) > 1 else unit)

    def coeff(self, i):
        """Coefficient a_i, 1 <= i <= M."""
        return self.coeffs[i - 1]

    def is_identity(self):
        return not any(self.coeffs[1:])

    def depth(self):
        """The k with self in N_k minus N_{k+1}; INFINITE when all of a_2..a_M
        vanish.  Only meaningful when the true depth is below M."""
        for i in range(1, self.M):
            if self.coeffs[i]:
                return i
        return INFINITE

    def __eq__(self, other):
        return (isinstance(other, TruncSeries) and self.p == other.p
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return self._hash

    def __mul__(self, other):
        return compose(self, other)

    def inverse(self):
        return inverse(self)

    def __repr__(self):
        terms = ["t"]
        for i in range(1, self.M):
            c = self.coeffs[i]
            if c:
                terms.append("%st^%d" % ("" if c == 1 else c, i + 1))
        return "TruncSeries(p=%d, %s)" % (self.p, " + ".join(terms))


def _substitute(outer, inner):
    """outer(inner(t)) truncated at degree M, by Horner's rule."""
    p, M = outer.p, outer.M
    b, u = outer.coeffs, inner.coeffs
    acc = [b[M - 1] % p] + [0] * (M - 1)  # polynomial in t, degree offset 1
    for i in range(M - 2, -1, -1):
        # acc <- acc * u + b_i   (truncated, degrees shifted by one t factor)
        nxt = [0] * M
        for d, a in enumerate(acc):
            if a:
                for j in range(M - 1 - d):
                    c = u[j]
                    if c:
                        nxt[d + j + 1] = (nxt[d + j + 1] + a * c) % p
        nxt[0] = (nxt[0] + b[i]) % p
        acc = nxt
    # multiply the final accumulator by one more factor of inner
    out = [0] * M
    for d, a in enumerate(acc):
        if a:
            for j in range(M - d):
                c = u[j]
                if c:
                    out[d + j] = (out[d + j] + a * c) % p
    return TruncSeries(p, out)


def compose(f, g):
    """The group product f*g, i.e. the automorphism t -> g(f(t))."""
    if f.p != g.p or f.M != g.M:
        raise ValueError("mismatched modulus or truncation: (%d,%d) vs (%d,%d)"
                         % (f.p, f.M, g.p, g.M))
    return _substitute(g, f)


def inverse(f):
    """Compositional inverse, by degree-by-degree back-substitution."""
    p, M = f.p, f.M
    g = [1] + [0] * (M - 1)
    for n in range(2, M + 1):
        h = _substitute(f, TruncSeries(p, g))  # f(g(t))
        e = h.coeffs[n - 1]
        if e:
            g[n - 1] = -e % p
    res = TruncSeries(p, g)
    assert compose(res, f).is_identity()
    return res


def power(f, n):
    """f multiplied with itself n times (n >= 0), by repeated squaring."""
    if n < 0:
        raise ValueError("negative exponent; invert explicitly")
    acc = TruncSeries.identity(f.p, f.M)
    base = f
    while n:
        if n & 1:
            acc = compose(acc, base)
        base = compose(base, base)
        n >>= 1
    return acc


def commutator(f, g):
    """[f, g] = f^-1 g^-1 f g under the left-to-right composition convention."""
    return compose(compose(compose(inverse(f), inverse(g)), f), g)


def nottingham_generators(p, M):
    """The standard topological generators of N truncated at degree M.

    a(t) = t/(1-t) has depth 1; b(t) = t*(1-2t^2)^(-1/2) has depth 2.  Both
    have order p: a^n(t) = t/(1-nt) and b^n(t) = t*(1-2nt^2)^(-1/2), so the
    p-th power collapses in characteristic p.
    """
    _check_p(p)
    if M < 3:
        raise ValueError("need truncation degree at least 3")
    a = TruncSeries(p, (1,) * M)
    unit = [0] * M
    unit[0] = 1
    unit[2] = -2 % p
    b = TruncSeries.from_unit(p, inv_sqrt(tuple(unit), p) + (0,))
    return a, b


def lcs_index(i, p):
    """r(i) = i + 1 + floor((i-2)/(p-1)): the filtration index of the i-th
    lower central subgroup of N.  Consecutive gap 2 ('diamond') exactly when
    i = k(p-1)+1."""
    if i < 2:
        raise ValueError("lower central index must be at least 2, got %r" % (i,))
    _check_p(p)
    return i + 1 + (i - 2) // (p - 1)
