"""Degree-truncated noncommutative Groebner engine over free and path algebras.

Completion follows Bergman's diamond lemma: all overlap ambiguities whose
overlap word fits under the length cap are resolved, which certifies unique
normal forms for every word of length <= cap.  Monomials are words with an
optional vertex anchor; the order is length-first, then lexicographic by a
fixed generator precedence, then anchor.
"""

from __future__ import annotations

import hashlib
import heapq
from dataclasses import dataclass

from .qfield import QScalar
from .presentation import (
    NCPoly,
    Presentation,
    WindowedQuiver,
    word_degree,
    word_target,
)

__all__ = [
    "MonomialOrder",
    "GBResult",
    "GBError",
    "UncertifiedRegionError",
    "default_order",
    "groebner",
    "normal_form",
    "hilbert",
    "dense_rank_dims",
]


class GBError(RuntimeError):
    pass


class UncertifiedRegionError(GBError):
    """A normal form or dimension was requested beyond the certified cap."""


@dataclass(frozen=True)
class MonomialOrder:
    """Length, then lexicographic by generator precedence (highest first)."""

    precedence: tuple

    def index(self):
        return {letter: k for k, letter in enumerate(self.precedence)}

    def describe(self):
        return ">".join("%s%d" % (k, i + 1) for k, i in self.precedence)


def default_order(rank):
    prec = tuple(("x", i) for i in range(rank)) + tuple(("y", i) for i in range(rank))
    return MonomialOrder(prec)


# ---------------------------------------------------------------------------
# engine internals: polys as dict {word: QScalar} plus a common anchor
# ---------------------------------------------------------------------------


def _word_key(word, idx):
    return (len(word), tuple(-idx[l] for l in word))


def _lead(terms, idx):
    return max(terms, key=lambda w: _word_key(w, idx))


class _Elem:
    __slots__ = ("terms", "source", "lead")

    def __init__(self, terms, source, idx):
        lead = _lead(terms, idx)
        inv = terms[lead].inverse()
        if not inv.is_one():
            terms = {w: v * inv for w, v in terms.items()}
        self.terms = terms
        self.source = source
        self.lead = lead


def _subword_source(word, pos, sublen, source):
    """Anchor of word[pos:pos+sublen] inside an anchored word."""
    return word_target(word[pos + sublen:], source)


def _find_divisor(word, source, basis_index, anchored):
    for pos in range(len(word)):
        for g in basis_index.get(word[pos], ()):
            u = g.lead
            end = pos + len(u)
            if end <= len(word) and word[pos:end] == u:
                if anchored and _subword_source(word, pos, len(u), source) != g.source:
                    continue
                return pos, g
    return None


def _reduce_full(terms, source, basis_index, idx, anchored):
    """Totally reduce a {word: coeff} dict; returns a new dict."""
    done = {}
    work = dict(terms)
    while work:
        w = max(work, key=lambda t: _word_key(t, idx))
        c = work.pop(w)
        if not c:
            continue
        hit = _find_divisor(w, source, basis_index, anchored)
        if hit is None:
            done[w] = done.get(w, QScalar.zero()) + c
            continue
        pos, g = hit
        u = g.lead
        left, right = w[:pos], w[pos + len(u):]
        for uw, uc in g.terms.items():
            if uw == u:
                continue
            nw = left + uw + right
            add = -(c * uc)
            if nw in done:
                done[nw] = done[nw] + add
                if not done[nw]:
                    del done[nw]
            else:
                work[nw] = work.get(nw, QScalar.zero()) + add
    return {w: v for w, v in done.items() if v}


def _ambiguities(g1, g2, anchored):
    """Overlap and inclusion ambiguities between two leading words.

    Yields (word, source, pos1, pos2): the ambiguity word with lead(g1) at
    offset pos1 and lead(g2) at offset pos2.
    """
    u1, u2 = g1.lead, g2.lead
    l1, l2 = len(u1), len(u2)
    # suffix of u1 = prefix of u2 (t = l2 <= l1 is u2 sitting at the right end)
    for t in range(1, min(l1, l2) + 1):
        if g1 is g2 and t == l1:
            continue
        if u1[l1 - t:] == u2[:t]:
            word = u1 + u2[t:]
            if anchored:
                source = g2.source if t < l2 else g1.source
                if _subword_source(word, 0, l1, source) != g1.source:
                    continue
                if _subword_source(word, l1 - t, l2, source) != g2.source:
                    continue
            else:
                source = None
            yield word, source, 0, l1 - t
    # u2 strictly inside u1 away from the right end
    for p in range(0, l1 - l2):
        if u1[p:p + l2] == u2:
            if anchored:
                source = g1.source
                if _subword_source(u1, p, l2, source) != g2.source:
                    continue
            else:
                source = None
            yield u1, source, 0, p


@dataclass(frozen=True)
class GBResult:
    rank: int
    anchored: bool
    order: MonomialOrder
    letters: tuple  # generator alphabet of the presented algebra
    elements: tuple  # NCPoly, monic, inter-reduced
    cap: int  # requested length cap
    certified_len: int  # lengths for which normal forms are certified
    complete: bool  # True when no ambiguity was skipped for the cap
    input_label: str = ""
    input_hash: str = ""

    def leads(self):
        idx = self.order.index()
        out = []
        for p in self.elements:
            terms = dict(p.terms)
            out.append((_lead(terms, idx), p.source))
        return tuple(out)

    # -- serialization --------------------------------------------------

    def serialize(self):
        lines = [
            "gbresult v1",
            "input %s" % self.input_label,
            "input_hash %s" % self.input_hash,
            "order %s" % self.order.describe(),
            "anchored %d" % int(self.anchored),
            "cap %d certified %d complete %d"
            % (self.cap, self.certified_len, int(self.complete)),
        ]
        for p in self.elements:
            lines.append("elem %s" % p.render())
        return "\n".join(lines) + "\n"

    def content_hash(self):
        return hashlib.sha256(self.serialize().encode()).hexdigest()

    def to_dict(self):
        def poly_out(p):
            return {
                "terms": [
                    [[list(l) for l in w], v.render()] for w, v in p.terms
                ],
                "source": list(p.source) if p.source is not None else None,
            }

        return {
            "rank": self.rank,
            "anchored": self.anchored,
            "precedence": [list(l) for l in self.order.precedence],
            "letters": [list(l) for l in self.letters],
            "elements": [poly_out(p) for p in self.elements],
            "cap": self.cap,
            "certified_len": self.certified_len,
            "complete": self.complete,
            "input_label": self.input_label,
            "input_hash": self.input_hash,
        }

    @staticmethod
    def from_dict(data):
        from .qfield import parse_qscalar

        def poly_in(d):
            terms = {
                tuple((k, int(i)) for k, i in w): parse_qscalar(text)
                for w, text in d["terms"]
            }
            source = tuple(d["source"]) if d["source"] is not None else None
            return NCPoly.make(terms, source, data["rank"])

        return GBResult(
            rank=data["rank"],
            anchored=data["anchored"],
            order=MonomialOrder(tuple((k, int(i)) for k, i in data["precedence"])),
            letters=tuple((k, int(i)) for k, i in data["letters"]),
            elements=tuple(poly_in(d) for d in data["elements"]),
            cap=data["cap"],
            certified_len=data["certified_len"],
            complete=data["complete"],
            input_label=data["input_label"],
            input_hash=data["input_hash"],
        )


def _input_hash(label, relations):
    blob = label + "\n" + "\n".join(p.render() for p in relations)
    return hashlib.sha256(blob.encode()).hexdigest()


def groebner(pres, cap, order=None):
    """Truncated completion of a Presentation or WindowedQuiver up to word length cap."""
    if isinstance(pres, WindowedQuiver):
        anchored = True
        rank = pres.rank
        relations = [p for (_name, _v, p) in pres.relations]
        label = pres.describe()
        letters = tuple(("x", i) for i in range(rank)) + tuple(
            ("y", i) for i in range(rank)
        )
    elif isinstance(pres, Presentation):
        anchored = False
        rank = pres.rank
        relations = list(pres.relations)
        label = pres.label
        letters = tuple(pres.generators)
    else:
        raise GBError("unsupported presentation type %r" % type(pres).__name__)
    if order is None:
        order = default_order(rank)
    idx = order.index()

    basis = []
    basis_index = {}

    def add_elem(terms, source):
        e = _Elem(terms, source, idx)
        basis.append(e)
        basis_index.setdefault(e.lead[0], []).append(e)
        return e

    # seed with fully reduced input relations (iterate to inter-reduce)
    pending = [(dict(p.terms), p.source) for p in relations if p.terms]
    pending.sort(key=lambda t: _word_key(_lead(t[0], idx), idx))
    for terms, source in pending:
        red = _reduce_full(terms, source, basis_index, idx, anchored)
        if red:
            add_elem(red, source)

    # ambiguity queue ordered by the ambiguity word
    counter = 0
    heap = []

    def push_pairs(e, against):
        nonlocal counter
        for other in against:
            pairs = ((e, other),) if other is e else ((e, other), (other, e))
            for a, b in pairs:
                for word, source, p1, p2 in _ambiguities(a, b, anchored):
                    if len(word) > cap:
                        continue
                    counter += 1
                    heapq.heappush(
                        heap,
                        (_word_key(word, idx), counter, word, source, a, b, p1, p2),
                    )

    for k, e in enumerate(basis):
        push_pairs(e, basis[: k + 1])

    while heap:
        _key, _n, word, source, g1, g2, p1, p2 = heapq.heappop(heap)
        terms = {}
        left1, right1 = word[:p1], word[p1 + len(g1.lead):]
        left2, right2 = word[:p2], word[p2 + len(g2.lead):]
        for uw, uc in g1.terms.items():
            nw = left1 + uw + right1
            terms[nw] = terms.get(nw, QScalar.zero()) + uc
        for uw, uc in g2.terms.items():
            nw = left2 + uw + right2
            terms[nw] = terms.get(nw, QScalar.zero()) - uc
        terms = {w: v for w, v in terms.items() if v}
        red = _reduce_full(terms, source, basis_index, idx, anchored)
        if red:
            e = add_elem(red, source)
            if len(e.lead) > cap:
                # cannot happen under a length-compatible order, guard anyway
                raise GBError("reduction produced an over-cap leading word")
            push_pairs(e, basis)

    polys = tuple(
        NCPoly.make(e.terms, e.source, rank)
        for e in sorted(basis, key=lambda e: (_word_key(e.lead, idx), e.source or ()))
    )
    return GBResult(
        rank=rank,
        anchored=anchored,
        order=order,
        letters=letters,
        elements=polys,
        cap=cap,
        certified_len=cap,
        complete=True,
        input_label=label,
        input_hash=_input_hash(label, relations),
    )


# ---------------------------------------------------------------------------
# normal forms and normal-word enumeration
# ---------------------------------------------------------------------------


def _basis_index(g):
    idx = g.order.index()
    out = {}
    for p in g.elements:
        e = _Elem(dict(p.terms), p.source, idx)
        out.setdefault(e.lead[0], []).append(e)
    return out


def normal_form(x, g, _index_cache=None):
    """Unique reduced representative of an NCPoly modulo the certified basis."""
    maxlen = max((len(w) for w, _v in x.terms), default=0)
    if maxlen > g.certified_len:
        raise UncertifiedRegionError(
            "word length %d beyond certified %d" % (maxlen, g.certified_len)
        )
    index = _index_cache if _index_cache is not None else _basis_index(g)
    red = _reduce_full(dict(x.terms), x.source, index, g.order.index(), g.anchored)
    return NCPoly.make(red, x.source, g.rank)


class NormalWords:
    """Incremental enumerator of normal words, optionally anchored in a box."""

    def __init__(self, g, box_radius=None):
        self.g = g
        self.leads = [(p_lead, src) for (p_lead, src) in g.leads()]
        self.box_radius = box_radius

    def _is_normal_prefix(self, word, source):
        # word was obtained by prepending one letter; only position-0 subwords are new
        for lead, lsrc in self.leads:
            if len(lead) <= len(word) and word[: len(lead)] == lead:
                if not self.g.anchored:
                    return False
                if _subword_source(word, 0, len(lead), source) == lsrc:
                    return False
        return True

    def _in_box(self, v):
        n = self.box_radius
        return n is None or all(-n <= x <= n for x in v)

    def letters(self):
        return self.g.letters

    def by_length(self, source, maxlen):
        """Lists of normal words from a given anchor (or None), per length 0..maxlen."""
        if maxlen > self.g.certified_len:
            raise UncertifiedRegionError(
                "length %d beyond certified %d" % (maxlen, self.g.certified_len)
            )
        current = [((), tuple(source) if source is not None else None)]
        out = [[()]]
        for _l in range(maxlen):
            nxt = []
            for word, _src in current:
                tgt = word_target(word, source) if source is not None else None
                for letter in self.letters():
                    if source is not None:
                        t2 = word_target((letter,), tgt)
                        if not self._in_box(t2):
                            continue
                    nw = (letter,) + word
                    if self._is_normal_prefix(nw, source):
                        nxt.append((nw, source))
            current = nxt
            out.append([w for w, _s in current])
        return out


def hilbert(g, cap):
    """Multigraded dimensions of the quotient algebra, multidegree -> dimension.

    Only meaningful for free presentations on x-generators (heights = lengths);
    the cap is a total-height bound and must sit inside the certified region.
    """
    if g.anchored:
        raise GBError("hilbert expects a free presentation")
    if cap > g.certified_len:
        raise UncertifiedRegionError(
            "cap %d beyond certified length %d" % (cap, g.certified_len)
        )
    words = NormalWords(g).by_length(None, cap)
    dims = {}
    for level in words:
        for w in level:
            beta = word_degree(w, g.rank)
            dims[beta] = dims.get(beta, 0) + 1
    return dims


# ---------------------------------------------------------------------------
# independent dense-rank oracle
# ---------------------------------------------------------------------------


def _all_words(letters, length):
    if length == 0:
        return [()]
    shorter = _all_words(letters, length - 1)
    return [(l,) + w for l in letters for w in shorter]


def dense_rank_dims(pres, beta, order=None):
    """Dimension of the quotient at multidegree beta by dense linear algebra.

    Spans all monomial shifts a*g*b of the relations inside the free component
    and rank-reduces; fully bypasses the completion engine.
    """
    if order is None:
        order = default_order(pres.rank)
    letters = [g for g in pres.generators]
    beta = tuple(beta)
    height = sum(abs(b) for b in beta)
    words = [
        w for w in _all_words(tuple(letters), height) if word_degree(w, pres.rank) == beta
    ]
    index = {w: i for i, w in enumerate(words)}
    rows = []
    for rel in pres.relations:
        gdeg = rel.multidegree()
        glen = sum(abs(x) for x in gdeg)
        rest = height - glen
        if rest < 0:
            continue
        for alen in range(rest + 1):
            for a in _all_words(tuple(letters), alen):
                for b in _all_words(tuple(letters), rest - alen):
                    vec = {}
                    ok = True
                    for w, cval in rel.terms:
                        full = a + w + b
                        if word_degree(full, pres.rank) != beta:
                            ok = False
                            break
                        i = index[full]
                        vec[i] = vec.get(i, QScalar.zero()) + cval
                    if ok and vec:
                        rows.append(vec)
    rank = _sparse_rank(rows, len(words))
    return len(words) - rank


def _sparse_rank(rows, ncols):
    pivots = {}  # col -> row dict
    rank = 0
    for row in rows:
        row = {j: v for j, v in row.items() if v}
        while row:
            j = min(row)
            if j in pivots:
                f = row[j]
                prow = pivots[j]
                for k, v in prow.items():
                    row[k] = row.get(k, QScalar.zero()) - f * v
                row = {k: v for k, v in row.items() if v}
            else:
                inv = row[j].inverse()
                pivots[j] = {k: v * inv for k, v in row.items()}
                rank += 1
                break
    return rank
