"""Words over a generating alphabet, and finite presentations.

A word is a tuple of nonzero signed integers: +g means generator number g
(1-based), -g its inverse.  Words are kept freely reduced.  Presentations
pair generator names with relator words and can be parsed from / printed to
a small text grammar:

    presentation := "<" genlist "|" relatorlist ">"
    genlist      := name ("," name)*
    relatorlist  := empty | relator ("," relator)*
    relator      := term+
    term         := name | name "^" int | "(" relator ")" "^" int
                  | "[" relator ("," relator)+ "]"

Whitespace is insignificant; commutator brackets are left-normed;
exponents may be negative.
"""

import re
from dataclasses import dataclass, field


def free_reduce(letters):
    """Freely reduce a letter sequence (cancel adjacent g g^-1 pairs)."""
    out = []
    for x in letters:
        if x == 0:
            raise ValueError("0 is not a letter")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def wmul(*words):
    """Freely reduced concatenation."""
    glued = []
    for w in words:
        glued.extend(w)
    return free_reduce(glued)


def winv(word):
    """Inverse word: reverse and negate."""
    return tuple(-x for x in reversed(word))


def wpow(word, n):
    if n < 0:
        return wpow(winv(word), -n)
    return wmul(*([word] * n)) if n else ()


def expand_commutator(words):
    """Left-normed commutator [w1, ..., wn] = [[w1, ..., w_{n-1}], wn],
    with [u, v] = u^-1 v^-1 u v.  Needs at least two arguments."""
    words = list(words)
    if len(words) < 2:
        raise ValueError("commutator needs at least 2 arguments")
    acc = words[0]
    for w in words[1:]:
        acc = wmul(winv(acc), winv(w), acc, w)
    return acc


def inversion_images(word):
    """Image of a word under the endomorphism sending every generator to its
    inverse: each letter is negated in place.  An involution; preserves free
    reduction."""
    return tuple(-x for x in word)


@dataclass(frozen=True)
class Presentation:
    """Generator names plus freely reduced relator words."""

    generators: tuple
    relators: tuple

    def __post_init__(self):
        n = len(self.generators)
        for rel in self.relators:
            if not rel:
                raise ValueError("empty relator")
            if rel != free_reduce(rel):
                raise ValueError("relator not freely reduced: %r" % (rel,))
            if any(abs(x) < 1 or abs(x) > n for x in rel):
                raise ValueError("letter out of range in %r" % (rel,))

    @property
    def rank(self):
        return len(self.generators)

    def gen_index(self, name):
        return self.generators.index(name) + 1

    def __str__(self):
        return print_presentation(self)


class ParseError(ValueError):
    def __init__(self, message, line, col):
        super().__init__("%s at line %d, column %d" % (message, line, col))
        self.line = line
        self.col = col


_TOKEN = re.compile(r"[A-Za-z_][A-Za-z_0-9]*|-?\d+|[<>|,^()\[\]]|\S")


class _Tokens:
    def __init__(self, text):
        self.items = []
        for lineno, line in enumerate(text.split("\n"), start=1):
            for m in _TOKEN.finditer(line):
                self.items.append((m.group(), lineno, m.start() + 1))
        self.pos = 0

    def peek(self):
        return self.items[self.pos][0] if self.pos < len(self.items) else None

    def where(self):
        if self.pos < len(self.items):
            return self.items[self.pos][1], self.items[self.pos][2]
        if self.items:
            _, l, c = self.items[-1]
            return l, c + 1
        return 1, 1

    def take(self, expect=None):
        tok = self.peek()
        if tok is None or (expect is not None and tok != expect):
            line, col = self.where()
            want = repr(expect) if expect else "a token"
            raise ParseError("expected %s, found %r" % (want, tok), line, col)
        self.pos += 1
        return tok


_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*$")
_INT = re.compile(r"-?\d+$")


def _parse_relator(toks, gens, stop):
    word = ()
    while True:
        tok = toks.peek()
        if tok is None or tok in stop:
            break
        line, col = toks.where()
        if tok == "(":
            toks.take()
            inner = _parse_relator(toks, gens, (")",))
            toks.take(")")
            toks.take("^")
            e = toks.take()
            if not _INT.match(e):
                raise ParseError("expected integer exponent, found %r" % e, line, col)
            word = wmul(word, wpow(inner, int(e)))
        elif tok == "[":
            toks.take()
            args = [_parse_relator(toks, gens, (",", "]"))]
            while toks.peek() == ",":
                toks.take(",")
                args.append(_parse_relator(toks, gens, (",", "]")))
            toks.take("]")
            if len(args) < 2:
                raise ParseError("commutator needs at least 2 arguments", line, col)
            word = wmul(word, expand_commutator(args))
        elif _NAME.match(tok):
            toks.take()
            if tok not in gens:
                raise ParseError("unknown generator %r" % tok, line, col)
            g = gens[tok]
            if toks.peek() == "^":
                toks.take("^")
                e = toks.take()
                if not _INT.match(e):
                    raise ParseError("expected integer exponent, found %r" % e,
                                     *toks.where())
                word = wmul(word, wpow((g,), int(e)))
            else:
                word = wmul(word, (g,))
        else:
            raise ParseError("unexpected token %r" % tok, line, col)
    return word


def parse_presentation(text):
    """Parse the grammar documented in the module docstring."""
    toks = _Tokens(text)
    toks.take("<")
    names = [toks.take()]
    if not _NAME.match(names[0]):
        raise ParseError("expected generator name, found %r" % names[0],
                         *toks.where())
    while toks.peek() == ",":
        toks.take(",")
        nm = toks.take()
        if not _NAME.match(nm):
            raise ParseError("expected generator name, found %r" % nm, *toks.where())
        names.append(nm)
    if len(set(names)) != len(names):
        raise ParseError("duplicate generator name", *toks.where())
    toks.take("|")
    gens = {nm: i + 1 for i, nm in enumerate(names)}
    relators = []
    while toks.peek() != ">":
        rel = _parse_relator(toks, gens, (",", ">"))
        if rel:
            relators.append(rel)
        else:
            line, col = toks.where()
            raise ParseError("empty relator", line, col)
        if toks.peek() == ",":
            toks.take(",")
    toks.take(">")
    if toks.peek() is not None:
        raise ParseError("trailing input %r" % toks.peek(), *toks.where())
    return Presentation(tuple(names), tuple(relators))


def word_to_str(word, names):
    """Render a word in the grammar's term syntax, collapsing runs into powers."""
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        g = abs(word[i])
        e = (j - i) * (1 if word[i] > 0 else -1)
        parts.append(names[g - 1] if e == 1 else "%s^%d" % (names[g - 1], e))
        i = j
    return " ".join(parts)


def str_to_word(text, names):
    """Parse a bare relator string (no <...> wrapper) over the given names."""
    if text.strip() == "1":
        return ()
    gens = {nm: i + 1 for i, nm in enumerate(names)}
    toks = _Tokens(text)
    word = _parse_relator(toks, gens, ())
    if toks.peek() is not None:
        raise ParseError("trailing input %r" % toks.peek(), *toks.where())
    return word


def print_presentation(pres):
    rels = ", ".join(word_to_str(r, pres.generators) for r in pres.relators)
    return "< %s | %s >" % (", ".join(pres.generators), rels)


def _leftnormed_words(weight):
    """All left-normed weight-w commutator words over x, y with the first two
    entries distinct, in binary-counter order."""
    out = []
    for bits in range(2 ** weight):
        seq = [(bits >> k) & 1 for k in range(weight)]
        if seq[0] == seq[1]:
            continue
        out.append(expand_commutator([(g + 1,) for g in seq]))
    return out


def gamma_quotient_presentation(p, c):
    """Presentation of the c-th lower-central quotient of the free product of
    two cyclic groups of order p: generators x, y with relators x^p, y^p and
    all left-normed commutators of weight c+1 in x, y whose first two entries
    differ.  Exact textual duplicates and freely trivial words are dropped;
    no semantic deduplication is attempted."""
    if c < 1:
        raise ValueError("need c >= 1")
    relators = [wpow((1,), p), wpow((2,), p)]
    seen = set(relators)
    for rel in _leftnormed_words(c + 1):
        if rel and rel not in seen:
            seen.add(rel)
            relators.append(rel)
    return Presentation(("x", "y"), tuple(relators))


def augmented_gamma_presentation(p, c):
    """The gamma-quotient presentation plus short redundant consequences.

    Any commutator whose arguments carry total weight c+1 lies in the
    (c+1)-st lower central subgroup whatever the bracketing, so relators
    [A, B] with A, B left-normed of weights a + b = c + 1 present the same
    group.  They are much shorter than the left-normed expansion (which
    doubles per weight) and make the HLT enumeration collapse early instead
    of exploring millions of transient cosets.  Relators are sorted short
    to long after the two power relators."""
    base = gamma_quotient_presentation(p, c)
    if c + 1 < 4:
        return base
    w = c + 1
    helpers = []
    seen = set(base.relators)
    for a in range(2, w // 2 + 1):
        b = w - a
        for left in _leftnormed_words(a):
            for right in _leftnormed_words(b):
                rel = wmul(winv(left), winv(right), left, right)
                if rel and rel not in seen:
                    seen.add(rel)
                    helpers.append(rel)
    relators = list(base.relators[:2])
    relators += sorted(helpers + list(base.relators[2:]), key=len)
    return Presentation(base.generators, tuple(relators))
