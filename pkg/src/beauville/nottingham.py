"""Finite Nottingham quotients N/N_M and their filtration analytics.

The quotient group is realized as all TruncSeries at truncation M (order
p^(M-1), index formula).  Because every filtration layer N_d/N_{d+1} is one
dimensional over F_p, with the layer isomorphism reading off the coefficient
a_{d+1}, a subgroup's order is p^(number of depths it attains).  That gives
an exact echelon test for statements like "the j-th lower central subgroup
equals the depth >= r(j) filter" without materializing millions of elements:
reduce a candidate generating set to one pivot per depth and compare the
pivot set against the expected depth range.
"""

import random
from math import inf

from . import fpseries
from .fpseries import (TruncSeries, commutator, compose, inverse, lcs_index,
                       nottingham_generators, power)
from .groups import FiniteGroup, cayley_elements


def quotient_order(p, M):
    """|N/N_M| = p^(M-1)."""
    return p ** (M - 1)


def series_quotient_group(p, M, limit=2_000_000):
    """N/N_M as an explicit FiniteGroup generated by the images of a and b."""
    a, b = nottingham_generators(p, M)
    return cayley_elements(("a", "b"), (a, b), TruncSeries.identity(p, M),
                           limit=limit)


def depth_filter(G: FiniteGroup, d):
    """Elements of a series group with depth >= d (full scan)."""
    return frozenset(f for f in G.elements if f.depth() >= d)


def random_series(rng, p, M, min_depth=1):
    """A random non-identity series, depth-stratified so deep elements occur."""
    d = rng.randint(min_depth, M - 1)
    coeffs = [1] + [0] * (d - 1)
    coeffs.append(rng.randint(1, p - 1))
    coeffs.extend(rng.randrange(p) for _ in range(M - d - 1))
    return TruncSeries(p, coeffs)


def _leading(f):
    d = f.depth()
    if d == inf:
        return None
    return d, f.coeff(d + 1)


def echelon_pivots(p, M, candidates):
    """Reduce candidates to one basis element per depth.

    Returns {depth: element}.  The subgroup generated by the candidates has
    order p^(number of pivots) and attains exactly the pivot depths: each
    reduction multiplies by a basis power to cancel the leading coefficient
    (layers are additive in the leading coefficient), and p-th powers of new
    basis elements are fed back in so depths reachable only through powers
    are not missed.
    """
    basis = {}
    queue = list(candidates)
    while queue:
        f = queue.pop()
        while True:
            lead = _leading(f)
            if lead is None:
                break
            d, c = lead
            b = basis.get(d)
            if b is None:
                basis[d] = f
                queue.append(power(f, p))
                break
            e = c * pow(_leading(b)[1], -1, p) % p
            f = compose(f, power(inverse(b), e))
    return basis


def commutator_seed_chain(p, M, max_weight=None):
    """Iterated left-normed commutator values of the generators: chain[w] is
    the weight-(w+1) seed list, deduplicated, identities dropped.  Every
    entry of chain[w] lies in the (w+1)-st lower central subgroup of N/N_M."""
    a, b = nottingham_generators(p, M)
    if max_weight is None:
        max_weight = 2 * M  # seeds die out long before this
    chain = [[a, b]]
    while len(chain) < max_weight:
        nxt = []
        seen = set()
        for s in chain[-1]:
            for t in (a, b):
                c = commutator(s, t)
                if not c.is_identity() and c not in seen:
                    seen.add(c)
                    nxt.append(c)
        if not nxt:
            break
        chain.append(nxt)
    return chain


def verify_generation(p, M):
    """True iff a and b generate all of N/N_M, certified by pivots covering
    every depth 1..M-1."""
    chain = commutator_seed_chain(p, M)
    cands = [f for seeds in chain for f in seeds]
    pivots = echelon_pivots(p, M, cands)
    return set(pivots) == set(range(1, M))


def verify_lcs_filter(p, M):
    """Check gamma_j(N/N_M) == {depth >= r(j)} for every j with r(j+1) <= M.

    Returns rows (j, r(j), seed_depths_ok, pivots_ok).  seed_depths_ok
    certifies gamma_j inside the filter (all normal generators are deep
    enough and depth is conjugation invariant); pivots_ok certifies the
    filter inside gamma_j (the candidates attain every depth in
    [r(j), M-1], so they already generate the full filter subgroup).
    """
    chain = commutator_seed_chain(p, M)
    rows = []
    j = 2
    while lcs_index(j + 1, p) <= M:
        r = lcs_index(j, p)
        cands = [f for seeds in chain[j - 1:] for f in seeds]
        seed_ok = all(f.depth() >= r for f in cands)
        pivots = echelon_pivots(p, M, cands)
        pivot_ok = set(pivots) == set(range(r, M))
        rows.append((j, r, seed_ok, pivot_ok))
        j += 1
    return rows


def commutator_depth_suite(p, M, n_pairs=500, seed=0):
    """Sample random pairs and check the commutator depth inequalities:
    depth[f,g] >= depth f + depth g, strictly bigger when the depths agree
    mod p.  Returns the list of violating pairs (expected empty)."""
    rng = random.Random(seed)
    bad = []
    for _ in range(n_pairs):
        f = random_series(rng, p, M)
        g = random_series(rng, p, M)
        df, dg = f.depth(), g.depth()
        dc = commutator(f, g).depth()
        need = df + dg + (1 if df % p == dg % p else 0)
        if dc < need:
            bad.append((f, g, dc, need))
    return bad


def generator_order_check(p, M_max=40):
    """a^p = b^p = id at every truncation 3..M_max; returns failing M values."""
    bad = []
    for M in range(3, M_max + 1):
        a, b = nottingham_generators(p, M)
        if not power(a, p).is_identity() or not power(b, p).is_identity():
            bad.append(M)
    return bad


def centralizer_report(p, ell, limit=2_000_000):
    """Diagnostic only: the centralizer size of the image of a in N/N_ell.
    No value from the literature is asserted; callers may check the weak
    facts that it contains <a> and the deepest filtration layer."""
    from .groups import centralizer, subgroup_closure
    G = series_quotient_group(p, ell, limit=limit)
    alpha = G.generators[0]
    cent = centralizer(G, alpha)
    cyc = subgroup_closure(G, [alpha])
    deepest = depth_filter(G, ell - 1)
    return {
        "p": p,
        "ell": ell,
        "group_order": len(G),
        "centralizer_size": len(cent),
        "contains_alpha_cyclic": cyc <= cent,
        "contains_deepest_layer": deepest <= cent,
    }
