"""Todd-Coxeter coset enumeration over the trivial subgroup.

HLT strategy: every relator is scanned from every live coset, gaps of length
one become deductions, longer gaps trigger a new coset definition at the
first gap.  Coincidences are processed to exhaustion through a union-find
before any further definition.  The completed table is the regular
permutation representation, so the number of live cosets is the group order.

Cosets are numbered from 0 internally (coset 0 is the subgroup); the dump
format is 1-based.  Column 2g is generator g, column 2g+1 its inverse.
Enumeration is deterministic: cosets are defined in scan order.
"""

from collections import deque
from dataclasses import dataclass

from .words import Presentation


@dataclass(frozen=True)
class EnumerationLimits:
    """Resource ceilings: max_cosets bounds live-plus-dead rows,
    max_deductions bounds the coincidence queue."""

    max_cosets: int = 2_000_000
    max_deductions: int = 10_000_000

    def __post_init__(self):
        if self.max_cosets < 1:
            raise ValueError("max_cosets must be at least 1")


class LimitExceeded(RuntimeError):
    """Enumeration hit a resource ceiling; carries the high-water coset count.
    Signals either an infinite group or insufficient limits."""

    def __init__(self, message, high_water):
        super().__init__(message)
        self.high_water = high_water


class CosetTable:
    """A completed coset table: a faithful permutation action on 0..n-1."""

    def __init__(self, n_cosets, table, generator_names):
        self.n_cosets = n_cosets
        self.table = table
        self.generator_names = tuple(generator_names)

    @property
    def n_generators(self):
        return len(self.generator_names)

    def step(self, coset, letter):
        """Image of a coset under one signed letter (+g/-g, 1-based)."""
        col = 2 * (letter - 1) if letter > 0 else 2 * (-letter - 1) + 1
        return self.table[coset][col]

    def apply_word(self, coset, word):
        t = self.table
        for letter in word:
            col = 2 * (letter - 1) if letter > 0 else 2 * (-letter - 1) + 1
            coset = t[coset][col]
        return coset

    def permutation_rep(self):
        """One permutation per generator: g maps coset c to table[c][g]."""
        from .groups import Perm
        if any(-1 in row for row in self.table):
            raise ValueError("incomplete table has no permutation representation")
        return [Perm(tuple(row[2 * g] for row in self.table))
                for g in range(self.n_generators)]

    def dump(self):
        """One line per coset: space-separated 1-based images in generator
        order (golden-test format)."""
        lines = []
        for row in self.table:
            lines.append(" ".join(str(row[2 * g] + 1)
                                  for g in range(self.n_generators)))
        return "\n".join(lines) + "\n"


def _columns(word):
    cols = []
    for letter in word:
        cols.append(2 * (letter - 1) if letter > 0 else 2 * (-letter - 1) + 1)
    return cols


def enumerate_cosets(pres: Presentation, limits: EnumerationLimits = None):
    """Run HLT Todd-Coxeter for the trivial subgroup of the presented group.

    Returns a complete CosetTable with n_cosets equal to the group order.
    Raises LimitExceeded when max_cosets is hit, which means the group is
    infinite or the ceiling is too small.  The caller is responsible for the
    group actually being finite.
    """
    if limits is None:
        limits = EnumerationLimits()
    ngens = pres.rank
    ncols = 2 * ngens
    relcols = [_columns(r) for r in pres.relators]
    inv = [c + 1 if c % 2 == 0 else c - 1 for c in range(ncols)]
    max_cosets = limits.max_cosets

    # flat row-major table: entry (c, col) lives at c*ncols + col
    table = [-1] * ncols
    parent = [0]  # union-find; parent[c] == c iff live
    n_total = 1
    n_live = 1

    def rep(c):
        r = c
        while parent[r] != r:
            r = parent[r]
        while parent[c] != r:
            parent[c], c = r, parent[c]
        return r

    def define(a, col):
        nonlocal n_live, n_total
        if n_total >= max_cosets:
            raise LimitExceeded(
                "coset limit %d exceeded" % max_cosets, n_total)
        b = n_total
        n_total += 1
        table.extend([-1] * ncols)
        parent.append(b)
        n_live += 1
        table[a * ncols + col] = b
        table[b * ncols + inv[col]] = a
        return b

    queue = deque()

    def merge(a, b):
        nonlocal n_live
        a, b = rep(a), rep(b)
        if a != b:
            if a > b:
                a, b = b, a
            parent[b] = a
            n_live -= 1
            queue.append(b)
            if len(queue) > limits.max_deductions:
                raise LimitExceeded("coincidence queue overflow", n_total)

    def coincidence(a, b):
        merge(a, b)
        while queue:
            dead = queue.popleft()
            base = dead * ncols
            for col in range(ncols):
                delta = table[base + col]
                if delta == -1:
                    continue
                # drop the back-reference, then transfer the entry
                table[delta * ncols + inv[col]] = -1
                mu, nu = rep(dead), rep(delta)
                tmu = table[mu * ncols + col]
                if tmu != -1:
                    merge(nu, tmu)
                else:
                    tnu = table[nu * ncols + inv[col]]
                    if tnu != -1:
                        merge(mu, tnu)
                    else:
                        table[mu * ncols + col] = nu
                        table[nu * ncols + inv[col]] = mu

    def scan_and_fill(a, cols):
        t = table
        f, i = a, 0
        b, j = a, len(cols) - 1
        while True:
            while i <= j:
                nxt = t[f * ncols + cols[i]]
                if nxt == -1:
                    break
                f = nxt
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i:
                prev = t[b * ncols + inv[cols[j]]]
                if prev == -1:
                    break
                b = prev
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if j == i:
                t[f * ncols + cols[i]] = b
                t[b * ncols + inv[cols[i]]] = f
                return
            define(f, cols[i])
            t = table

    alpha = 0
    while alpha < n_total:
        if rep(alpha) != alpha:
            alpha += 1
            continue
        for cols in relcols:
            scan_and_fill(alpha, cols)
            if rep(alpha) != alpha:
                break
        if rep(alpha) == alpha:
            base = alpha * ncols
            for col in range(ncols):
                if table[base + col] == -1:
                    define(alpha, col)
        alpha += 1

    # compact live cosets, preserving definition order
    live = [c for c in range(n_total) if rep(c) == c]
    assert len(live) == n_live
    newidx = {c: i for i, c in enumerate(live)}
    packed = [[newidx[rep(table[c * ncols + col])] for col in range(ncols)]
              for c in live]
    result = CosetTable(len(live), packed, pres.generators)
    result.n_defined = n_total
    return result


def validate_table(tbl: CosetTable, pres: Presentation):
    """Full consistency scan: mutually inverse rows/columns and every relator
    closing from every coset.  Returns a list of problem strings."""
    problems = []
    ncols = 2 * pres.rank
    for c, row in enumerate(tbl.table):
        for col in range(ncols):
            d = row[col]
            back = col + 1 if col % 2 == 0 else col - 1
            if d == -1:
                problems.append("blank entry at coset %d column %d" % (c, col))
            elif tbl.table[d][back] != c:
                problems.append("row/column mismatch at coset %d column %d" % (c, col))
    for r in pres.relators:
        for c in range(tbl.n_cosets):
            if tbl.apply_word(c, r) != c:
                problems.append("relator %r does not close from coset %d" % (r, c))
                break
    return problems
