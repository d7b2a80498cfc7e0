"""Finite-group computations on explicit element tables.

A FiniteGroup enumerates all elements by breadth-first search from its
generators, so every element carries a shortest defining word (signed letters,
generator-order tie-break).  Subgroups are explicit frozensets of elements.
Three element backends share the code: permutations, any immutable object
with __mul__/inverse (truncated series, cyclotomic pairs), and coset indices
of a completed Todd-Coxeter table, where multiplication walks the right
factor's defining word through the table.

Products are read left to right everywhere: (a*b) means apply a first.
"""

from math import gcd, lcm

from .words import free_reduce, winv


class GroupTooLarge(RuntimeError):
    """Cayley enumeration exceeded its element ceiling."""


class HomomorphismError(ValueError):
    """A candidate homomorphism failed; carries the first failing relator."""

    def __init__(self, message, relator=None):
        super().__init__(message)
        self.relator = relator


class Perm:
    """A permutation of 0..n-1 as a tuple of images."""

    __slots__ = ("images",)

    def __init__(self, images):
        self.images = tuple(images)
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError("not a permutation of 0..n-1: %r" % (images,))

    @classmethod
    def identity(cls, n):
        return cls(range(n))

    @property
    def degree(self):
        return len(self.images)

    def __mul__(self, other):
        # self first, then other
        o = other.images
        return Perm(tuple(o[i] for i in self.images))

    def inverse(self):
        out = [0] * len(self.images)
        for i, j in enumerate(self.images):
            out[j] = i
        return Perm(out)

    def __call__(self, point):
        return self.images[point]

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return "Perm(%r)" % (list(self.images),)


class FiniteGroup:
    """Generators plus the full element table with BFS defining words."""

    def __init__(self, names, gens, identity, limit=2_000_000, presentation=None):
        if len(names) != len(gens):
            raise ValueError("one name per generator")
        self.generator_names = tuple(names)
        self.generators = list(gens)
        self.identity = identity
        self.presentation = presentation
        self._build(limit)

    # element backends override these three
    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return a.inverse()

    def _gen_inv(self, i):
        invs = getattr(self, "_gen_invs", None)
        if invs is None:
            invs = self._gen_invs = {}
        if i not in invs:
            invs[i] = self.generators[i - 1].inverse()
        return invs[i]

    def _step(self, elt, letter):
        if letter > 0:
            return self.mul(elt, self.generators[letter - 1])
        return self.mul(elt, self._gen_inv(-letter))

    def _build(self, limit):
        # positive letters only: defining words are over the generators
        # themselves, shortest first with generator-order tie-break
        alphabet = range(1, len(self.generators) + 1)
        self.elements = [self.identity]
        self._index = {self.identity: 0}
        self._parent = [None]
        pos = 0
        while pos < len(self.elements):
            e = self.elements[pos]
            for letter in alphabet:
                ne = self._step(e, letter)
                if ne not in self._index:
                    if len(self.elements) >= limit:
                        raise GroupTooLarge("element ceiling %d exceeded" % limit)
                    self._index[ne] = len(self.elements)
                    self.elements.append(ne)
                    self._parent.append((pos, letter))
            pos += 1

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, elt):
        return elt in self._index

    def position(self, elt):
        """BFS-word rank of an element (0 = identity)."""
        return self._index[elt]

    def word_of(self, elt):
        """Shortest defining word of an element, as signed letters."""
        letters = []
        pos = self._index[elt]
        while self._parent[pos] is not None:
            pos, letter = self._parent[pos]
            letters.append(letter)
        return free_reduce(reversed(letters))

    def evaluate_word(self, word, images=None, target=None):
        """Evaluate a signed word at images (default: own generators)."""
        tgt = target if target is not None else self
        if images is None:
            images = self.generators
        acc = tgt.identity
        for letter in word:
            img = images[abs(letter) - 1]
            acc = tgt.mul(acc, img if letter > 0 else tgt.inv(img))
        return acc

    def sorted_elements(self, elts):
        """Sort a collection of elements into BFS-word order."""
        return sorted(elts, key=self._index.__getitem__)


class CosetGroup(FiniteGroup):
    """The group defined by a completed coset table, with elements represented
    by coset indices.  Multiplication walks the right factor's defining word;
    with the trivial-subgroup table this is the regular representation."""

    def __init__(self, table, presentation=None, limit=2_000_000):
        self.table = table
        self._rows = table.table
        gens = [self._rows[0][2 * g] for g in range(table.n_generators)]
        self._letter_cache = {}
        super().__init__(table.generator_names, gens, identity=0,
                         limit=limit, presentation=presentation)

    def _step(self, c, letter):
        col = 2 * (letter - 1) if letter > 0 else 2 * (-letter - 1) + 1
        return self._rows[c][col]

    def _letters(self, elt):
        cached = self._letter_cache.get(elt)
        if cached is None:
            cached = self._letter_cache[elt] = self.word_of(elt)
        return cached

    def _walk(self, c, letters):
        rows = self._rows
        for letter in letters:
            col = 2 * (letter - 1) if letter > 0 else 2 * (-letter - 1) + 1
            c = rows[c][col]
        return c

    def mul(self, a, b):
        return self._walk(a, self._letters(b))

    def inv(self, a):
        return self._walk(0, winv(self._letters(a)))


def cayley_elements(names, gens, identity, limit=2_000_000, presentation=None):
    """Element table with shortest-word-first defining words (Cayley BFS)."""
    return FiniteGroup(names, gens, identity, limit=limit, presentation=presentation)


def pow_elt(G, g, n):
    """g^n in G (n may be negative)."""
    if n < 0:
        g, n = G.inv(g), -n
    acc = G.identity
    while n:
        if n & 1:
            acc = G.mul(acc, g)
        g = G.mul(g, g)
        n >>= 1
    return acc


def conjugate(G, a, g):
    """a^g = g^-1 a g."""
    return G.mul(G.mul(G.inv(g), a), g)


def commutator_elt(G, a, b):
    """[a, b] = a^-1 b^-1 a b."""
    return G.mul(G.mul(G.mul(G.inv(a), G.inv(b)), a), b)


def element_order(G, g):
    if g not in G:
        raise ValueError("element not in group")
    n = 1
    x = g
    while x != G.identity:
        x = G.mul(x, g)
        n += 1
        if n > len(G):
            raise RuntimeError("order exceeds group order; broken element backend")
    return n


def exponent(G):
    """Least common multiple of all element orders (full scan).  For p-groups
    the scan counts p-th-power iterations instead of stepping one multiply at
    a time, which matters for six-digit group orders."""
    pe = _prime_power(len(G))
    if pe is not None and len(G) > 1:
        p = pe[0]
        best = 0
        for g in G.elements:
            e = 0
            while g != G.identity:
                g = pow_elt(G, g, p)
                e += 1
            best = max(best, e)
        return p ** best
    e = 1
    for g in G.elements:
        e = lcm(e, element_order(G, g))
    return e


def centralizer(G, g):
    if g not in G:
        raise ValueError("element not in group")
    return frozenset(h for h in G.elements if G.mul(h, g) == G.mul(g, h))


def subgroup_closure(G, seeds):
    """Smallest subgroup containing the seeds.

    Seeds are absorbed one at a time: a seed already inside the current
    closure costs one membership test, so huge seed collections (all order-p
    elements, say) stay cheap; each genuinely new seed extends the closure
    by BFS.  Deterministic given the seed order."""
    closed = {G.identity}
    gens = []
    for s in seeds:
        if s not in G:
            raise ValueError("seed not in group")
        if s in closed:
            continue
        gens.append(s)
        # every old element times the new generator, then BFS over all gens
        frontier = []
        for x in list(closed):
            y = G.mul(x, s)
            if y not in closed:
                closed.add(y)
                frontier.append(y)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = G.mul(x, g)
                    if y not in closed:
                        closed.add(y)
                        nxt.append(y)
            frontier = nxt
    return frozenset(closed)


def normal_closure(G, seeds):
    """Smallest normal subgroup containing the seeds.  Conjugation by the
    group generators only, which suffices since they generate."""
    gens = []
    seen = set()
    for s in seeds:
        if s != G.identity and s not in seen:
            seen.add(s)
            gens.append(s)
    closed = subgroup_closure(G, gens)
    work = list(gens)
    while work:
        x = work.pop()
        for g in G.generators:
            c = conjugate(G, x, g)
            if c not in closed:
                gens.append(c)
                work.append(c)
                closed = subgroup_closure(G, gens)
    return closed


def derived_subgroup(G):
    seeds = [commutator_elt(G, a, b)
             for a in G.generators for b in G.generators if a != b]
    return normal_closure(G, seeds)


def lower_central_series(G):
    """Descending chain gamma_1 = G, gamma_{j+1} = [gamma_j, G], computed as
    normal closures of commutators of normal generating sets against the
    group generators.  Ends with the trivial subgroup for nilpotent groups,
    otherwise stops when the chain stabilizes."""
    chain = [frozenset(G.elements)]
    norm_gens = list(G.generators)
    trivial = frozenset([G.identity])
    while chain[-1] != trivial:
        seeds = []
        seen = set()
        for a in norm_gens:
            for g in G.generators:
                c = commutator_elt(G, a, g)
                if c != G.identity and c not in seen:
                    seen.add(c)
                    seeds.append(c)
        sub = normal_closure(G, seeds)
        if sub == chain[-1]:
            break
        chain.append(sub)
        norm_gens = seeds
    return chain


def _prime_power(n):
    if n == 1:
        return None
    p = None
    for q in range(2, n + 1):
        if q * q > n:
            q = n
        if n % q == 0:
            p = q
            break
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return (p, e) if n == 1 else None


def group_prime(G):
    """The prime p for a p-group; domain error otherwise."""
    pe = _prime_power(len(G))
    if pe is None:
        raise ValueError("group of order %d is not a p-group" % len(G))
    return pe[0]


def frattini_subgroup(G):
    """For a finite p-group: G^p [G,G], generated by generator p-th powers
    and generator-pair commutators (normal closure)."""
    p = group_prime(G)
    seeds = [pow_elt(G, g, p) for g in G.generators]
    seeds += [commutator_elt(G, a, b)
              for a in G.generators for b in G.generators if a != b]
    return normal_closure(G, seeds)


def omega_subgroup(G, j=1):
    """Subgroup generated by all elements of order dividing p^j."""
    p = group_prime(G)
    if j < 1:
        raise ValueError("need j >= 1")
    bound = p ** j
    seeds = [g for g in G.elements if pow_elt(G, g, bound) == G.identity]
    return subgroup_closure(G, seeds)


def agemo_subgroup(G, j=1):
    """Subgroup generated by all p^j-th powers."""
    p = group_prime(G)
    if j < 1:
        raise ValueError("need j >= 1")
    e = p ** j
    seeds = [pow_elt(G, g, e) for g in G.elements]
    return subgroup_closure(G, seeds)


def characteristic_subgroup(G, kind, j=1):
    if kind == "frattini":
        return frattini_subgroup(G)
    if kind == "omega":
        return omega_subgroup(G, j)
    if kind == "agemo":
        return agemo_subgroup(G, j)
    raise ValueError("unknown kind %r" % (kind,))


def subgroup_exponent(G, elts):
    e = 1
    for g in elts:
        e = lcm(e, element_order(G, g))
    return e


class Hom:
    """A verified homomorphism given by generator images."""

    def __init__(self, presentation, target, images, surjective, source_group=None):
        self.presentation = presentation
        self.target = target
        self.images = list(images)
        self.surjective = surjective
        self.source_group = source_group
        self._mapping = None

    def evaluate(self, word):
        acc = self.target.identity
        for letter in word:
            img = self.images[abs(letter) - 1]
            acc = self.target.mul(acc, img if letter > 0 else self.target.inv(img))
        return acc

    def apply(self, elt):
        """Image of a source-group element, via its defining word."""
        if self._mapping is not None:
            return self._mapping[elt]
        return self.evaluate(self.source_group.word_of(elt))

    def materialize(self):
        """Precompute the full element-to-image map."""
        if self._mapping is None:
            self._mapping = {e: self.evaluate(self.source_group.word_of(e))
                             for e in self.source_group.elements}
        return self._mapping


def hom_from_images(presentation, target, images, source_group=None):
    """Build the homomorphism sending the presentation's generators to the
    given target elements.  Accepts iff every relator maps to the identity;
    raises HomomorphismError carrying the first failing relator otherwise.
    Surjectivity is decided by closure count."""
    if len(images) != presentation.rank:
        raise ValueError("need one image per generator")
    hom = Hom(presentation, target, images, surjective=False,
              source_group=source_group)
    for rel in presentation.relators:
        if hom.evaluate(rel) != target.identity:
            raise HomomorphismError("relator %r not satisfied by images" % (rel,),
                                    relator=rel)
    hom.surjective = len(subgroup_closure(target, images)) == len(target)
    return hom


def automorphism_from_images(G, images):
    """The automorphism of G sending its generators to the given images.
    Requires G to carry its presentation; rejects on relator failure or when
    the images do not generate.  The full element map is materialized."""
    if G.presentation is None:
        raise ValueError("group carries no presentation")
    hom = hom_from_images(G.presentation, G, images, source_group=G)
    if not hom.surjective:
        raise HomomorphismError("images do not generate; not bijective")
    hom.materialize()
    return hom
