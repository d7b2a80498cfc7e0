"""Finite maximal-class quotients of the pro-p group <s> x| Z_p^(p-1).

The translation part is the cyclotomic local ring Z[pi]/(Phi_p(1+pi), pi^i)
with pi = zeta - 1: a uniserial ring whose additive group has order p^i, on
which s acts as multiplication by 1 + pi (the companion-matrix action in
disguise).  Elements are polynomials c_0 + c_1 pi + ... of degree < p-1 with
mixed coefficient moduli p^ceil((i-m)/(p-1)); the reduction rule is

    pi^(p-1) = -sum_{m=0}^{p-2} C(p, m+1) pi^m,

every binomial on the right being divisible by p.  The group P of order
p^(i+1) is the semidirect product with multiplication

    (e1, a1) (e2, a2) = (e1 + e2, a1 * theta^e2 + a2),

read left to right like every other product in this package.
"""

from math import ceil, comb

from .groups import (FiniteGroup, cayley_elements, element_order,
                     hom_from_images, lower_central_series, subgroup_exponent)


class CyclotomicRing:
    """Z[pi]/(Phi_p(1+pi), pi^i) with canonical mixed-modulus coefficients."""

    def __init__(self, p, i):
        if p < 3 or p % 2 == 0:
            raise ValueError("p must be an odd prime")
        if i < 2:
            raise ValueError("need i >= 2")
        self.p = p
        self.i = i
        self.degree = p - 1
        self.moduli = tuple(p ** max(0, ceil((i - m) / (p - 1)))
                            for m in range(self.degree))
        self._reduction = tuple(-comb(p, m + 1) for m in range(self.degree))
        self.one_plus_pi = self.reduce([1, 1])
        self.theta_powers = [self.one()]
        for _ in range(p - 1):
            self.theta_powers.append(self.mul(self.theta_powers[-1],
                                              self.one_plus_pi))

    @property
    def order(self):
        return self.p ** self.i

    def zero(self):
        return (0,) * self.degree

    def one(self):
        return (1,) + (0,) * (self.degree - 1)

    def reduce(self, coeffs):
        """Canonical form of an integer polynomial in pi of any degree."""
        c = list(coeffs)
        d = self.degree
        while len(c) > d:
            top = c.pop()
            if top:
                k = len(c) - d
                for m, r in enumerate(self._reduction):
                    c[k + m] += top * r
        c += [0] * (d - len(c))
        return tuple(x % m for x, m in zip(c, self.moduli))

    def add(self, a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

    def neg(self, a):
        return tuple((-x) % m for x, m in zip(a, self.moduli))

    def mul(self, a, b):
        d = self.degree
        raw = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        raw[i + j] += x * y
        return self.reduce(raw)

    def valuation(self, a):
        """pi-adic valuation of a canonical element; i for zero."""
        best = self.i
        for m, x in enumerate(a):
            if x:
                v = 0
                while x % self.p == 0:
                    x //= self.p
                    v += 1
                best = min(best, m + (self.p - 1) * v)
        return best

    def elements(self):
        """All canonical coefficient tuples, lexicographic order."""
        stack = [()]
        for m in self.moduli:
            stack = [t + (c,) for t in stack for c in range(m)]
        return stack


class MaxClassElement:
    """A pair (eps, a): eps the exponent of s mod p, a in the cyclotomic ring."""

    __slots__ = ("ring", "eps", "coeffs")

    def __init__(self, ring, eps, coeffs):
        self.ring = ring
        self.eps = eps % ring.p
        self.coeffs = tuple(coeffs)

    def __mul__(self, other):
        r = self.ring
        theta = r.theta_powers[other.eps]
        return MaxClassElement(r, self.eps + other.eps,
                               r.add(r.mul(self.coeffs, theta), other.coeffs))

    def inverse(self):
        r = self.ring
        theta = r.theta_powers[(-self.eps) % r.p]
        return MaxClassElement(r, -self.eps, r.neg(r.mul(self.coeffs, theta)))

    def __eq__(self, other):
        return (isinstance(other, MaxClassElement) and self.eps == other.eps
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.eps, self.coeffs))

    def __repr__(self):
        return "MaxClassElement(eps=%d, %r)" % (self.eps, list(self.coeffs))


def construct_P(p, i, limit=2_000_000):
    """The maximal-class group of order p^(i+1), as a FiniteGroup generated
    by s = (1, 0) and s1 = (0, 1).  The ring handle and the two marked
    elements are exposed as attributes."""
    ring = CyclotomicRing(p, i)
    s = MaxClassElement(ring, 1, ring.zero())
    s1 = MaxClassElement(ring, 0, ring.one())
    ident = MaxClassElement(ring, 0, ring.zero())
    P = cayley_elements(("s", "s1"), (s, s1), ident, limit=limit)
    P.ring = ring
    P.s = s
    P.s1 = s1
    return P


def layer(P: FiniteGroup, j):
    """P_1 is the abelian maximal subgroup (eps = 0); P_j for j >= 2 is the
    pi^(j-1) layer, which coincides with the j-th lower central subgroup."""
    if j < 1:
        raise ValueError("need j >= 1")
    ring = P.ring
    return frozenset(g for g in P.elements
                     if g.eps == 0 and ring.valuation(g.coeffs) >= j - 1)


def verify_layer_orders(P: FiniteGroup):
    """Full-scan check of the maximal-class order pattern.

    Every element outside P_1 must have order p; every element of
    P_j minus P_{j+1} must have order p^ceil((i+1-j)/(p-1)), which is then
    also the exponent of P_j.  Returns (ok, failures)."""
    ring = P.ring
    p, i = ring.p, ring.i
    failures = []
    for g in P.elements:
        o = element_order(P, g)
        if g.eps != 0:
            if o != p:
                failures.append("order %d outside P_1 at %r" % (o, g))
        else:
            w = ring.valuation(g.coeffs)
            if w >= i:
                if o != 1:
                    failures.append("nontrivial identity %r" % (g,))
                continue
            j = w + 1  # g lies in P_j minus P_{j+1}
            expected = p ** ceil((i + 1 - j) / (p - 1))
            if o != expected:
                failures.append("order %d != %d in layer %d at %r"
                                % (o, expected, j, g))
    return (not failures), failures


def uniserial_indices(P: FiniteGroup):
    """Sizes of the chain P > P_1 > P_2 > ...; all consecutive indices are p
    for a maximal-class group."""
    sizes = [len(P)]
    j = 1
    while True:
        lj = layer(P, j)
        sizes.append(len(lj))
        if len(lj) == 1:
            return sizes
        j += 1


def psi_to_P(H: FiniteGroup, P: FiniteGroup):
    """The epimorphism u -> s^-1, v -> s*s1 from the free-product quotient.

    Verifies the relator images, surjectivity, and that the (i+1)-st lower
    central subgroup of P is trivial (computed, not assumed).  Returns the
    hom together with the order data that pins down o(uv): the image of uv
    is s1 itself, of order p^ceil(i/(p-1)) = exp P_1.
    """
    ring = P.ring
    if H.presentation is None:
        raise ValueError("source group carries no presentation")
    images = [P.inv(P.s), P.mul(P.s, P.s1)]
    hom = hom_from_images(H.presentation, P, images, source_group=H)
    chain = lower_central_series(P)
    class_ok = len(chain) - 1 <= ring.i and chain[-1] == frozenset([P.identity])
    o_s1 = element_order(P, P.s1)
    exp_p1 = subgroup_exponent(P, layer(P, 1))
    image_uv = P.mul(images[0], images[1])
    return {
        "hom": hom,
        "surjective": hom.surjective,
        "class_at_most_i": class_ok,
        "order_s1": o_s1,
        "exp_P1": exp_p1,
        "image_uv": image_uv,
        "image_uv_is_s1": image_uv == P.s1,
        "order_formula": ring.p ** ceil(ring.i / (ring.p - 1)),
    }
