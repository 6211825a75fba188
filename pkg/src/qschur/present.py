"""Presented algebra over the free algebra and its dimension by rewriting.

The presentation is instantiated on generators i_mu (mu in W pi), E_i, F_i;
the unit of the free algebra is the empty word.  Completion is the
noncommutative Buchberger procedure restricted to overlap words of bounded
length, with degree-lexicographic order over the alphabet order
i_mu < E_1 < ... < E_n < F_1 < ... < F_n.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BoundTooSmall, EmptyPi, NotDominant, ResourceBudgetExceeded, Unstabilized
from .qarith import ExactField, RationalFunction, SpecializedField, qbinom_d, qint_d
from .weyl import add, format_weight, is_dominant, largest_saturated_subset, orbit, sub, weight_set


# ---------------------------------------------------------------------------
# presentations


@dataclass
class NCPresentation:
    cartan: object
    pi: tuple
    wpi: tuple
    alphabet: list  # display names; symbol k is alphabet[k]
    relations: list  # (name, params, poly) with poly a dict word -> coefficient, read as "= 0"
    field: object
    classical: bool = False

    @property
    def max_degree(self):
        return max((len(w) for _, _, p in self.relations for w in p), default=0)

    def idem_symbol(self, mu):
        return self.wpi.index(tuple(mu))

    def E(self, i):
        return len(self.wpi) + i

    def F(self, i):
        return len(self.wpi) + self.cartan.n + i

    def word_text(self, w):
        return " ".join(self.alphabet[s] for s in w) if w else "1"

    def relation_text(self, poly):
        terms = []
        for w in sorted(poly, key=_key, reverse=True):
            terms.append(f"(* {_coef_text(poly[w])} {self.word_text(w)})")
        return "(+ " + " ".join(terms) + ")" if terms else "0"

    def dump_lines(self):
        out = [f"field {self.field.name}", "alphabet " + " ".join(self.alphabet)]
        for name, params, poly in self.relations:
            ps = " ".join(f"{k}={_param_text(v)}" for k, v in params.items())
            out.append(f"{name}{' ' + ps if ps else ''}: {self.relation_text(poly)}")
        return out


def _param_text(v):
    return f"({format_weight(v)})" if isinstance(v, tuple) else str(v)


def _coef_text(x):
    s = str(x)
    return s if " " not in s else f"[{s}]"


def _key(w):
    return (len(w), w)


def _add_term(poly, w, x):
    if not x:
        return
    y = poly.get(w)
    if y is None:
        poly[w] = x
    else:
        z = y + x
        if z:
            poly[w] = z
        else:
            del poly[w]


def instantiate_presentation(c, pi, classical=False, v_eval=None):
    """All defining relations over W pi, with i_mu = 0 for mu outside W pi."""
    pi = weight_set(pi)
    if not pi:
        raise EmptyPi("pi must be nonempty")
    for lam in pi:
        if len(lam) != c.n or not is_dominant(lam):
            raise NotDominant(f"{lam} is not a dominant weight of rank {c.n}")
    if classical and v_eval is not None and Fraction(v_eval) != 1:
        raise ValueError("classical presentation fixes v = 1")
    if classical:
        fld = SpecializedField(1)
    elif v_eval is not None:
        fld = SpecializedField(v_eval)
    else:
        fld = ExactField()
    wpi = orbit(c, pi)
    n = c.n
    m = len(wpi)
    alphabet = [f"i[{format_weight(mu)}]" for mu in wpi]
    alphabet += [f"E{i + 1}" for i in range(n)] + [f"F{i + 1}" for i in range(n)]
    pres = NCPresentation(c, pi, wpi, alphabet, [], fld, classical)
    index = {mu: k for k, mu in enumerate(wpi)}
    one = fld.convert(1)
    rels = pres.relations

    def idem(mu):
        return index.get(mu)

    def shift_rel(name, i, lam, left, right_idem, gen):
        # left-word minus the conjugated word; words with idempotents outside W pi vanish
        poly = {}
        _add_term(poly, left, one)
        k = idem(right_idem[1])
        if k is not None:
            w = (k, gen) if right_idem[0] == "left" else (gen, k)
            _add_term(poly, w, -one)
        rels.append((name, {"i": i + 1, "lam": lam}, poly))

    for lam in wpi:
        for mu in wpi:
            poly = {}
            _add_term(poly, (index[lam], index[mu]), one)
            if lam == mu:
                _add_term(poly, (index[lam],), -one)
            rels.append(("idem-product", {"lam": lam, "mu": mu}, poly))
    poly = {(index[mu],): one for mu in wpi}
    _add_term(poly, (), -one)
    rels.append(("idem-sum", {}, poly))
    for i in range(n):
        for j in range(n):
            poly = {}
            _add_term(poly, (pres.E(i), pres.F(j)), one)
            _add_term(poly, (pres.F(j), pres.E(i)), -one)
            if i == j:
                for lam in wpi:
                    _add_term(poly, (index[lam],), -fld.laurent(qint_d(lam[i], c.d[i])))
            rels.append(("EF-commutator", {"i": i + 1, "j": j + 1}, poly))
    for i in range(n):
        alpha = tuple(c.a[r][i] for r in range(n))
        e, f = pres.E(i), pres.F(i)
        for lam in wpi:
            k = index[lam]
            shift_rel("E-idem", i, lam, (e, k), ("left", add(lam, alpha)), e)
            shift_rel("F-idem", i, lam, (f, k), ("left", sub(lam, alpha)), f)
            shift_rel("idem-E", i, lam, (k, e), ("right", sub(lam, alpha)), e)
            shift_rel("idem-F", i, lam, (k, f), ("right", add(lam, alpha)), f)
    for gen, name in ((pres.E, "serre-E"), (pres.F, "serre-F")):
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                top = 1 - c.a[i][j]
                poly = {}
                for s in range(top + 1):
                    coef = fld.laurent(qbinom_d(top, s, c.d[i])) * (-1) ** s
                    _add_term(poly, (gen(i),) * (top - s) + (gen(j),) + (gen(i),) * s, coef)
                rels.append((name, {"i": i + 1, "j": j + 1}, poly))
    return pres


# ---------------------------------------------------------------------------
# rewriting


@dataclass
class RewriteSystem:
    presentation: NCPresentation
    rules: dict  # lead word -> tail polynomial (lead -> tail)
    degree_bound: int
    stabilized: bool = False
    trivial: bool = False  # the ideal contains 1
    normal_words: list = None
    frontier_length: int = None
    log: list = field(default_factory=list)

    def __post_init__(self):
        self._lengths = sorted({len(w) for w in self.rules})

    @property
    def dimension(self):
        return None if self.normal_words is None else len(self.normal_words)

    def _refresh(self):
        self._lengths = sorted({len(w) for w in self.rules})

    def find(self, word, strategy="leftmost"):
        """(position, lead) of a rule occurrence in word, or None."""
        rules = self.rules
        n = len(word)
        positions = range(n + 1) if strategy == "leftmost" else range(n, -1, -1)
        for p in positions:
            for ln in self._lengths:
                if p + ln > n:
                    break
                sub_ = word[p:p + ln]
                if sub_ in rules:
                    return p, sub_
        return None

    def is_normal(self, word):
        return self.find(word) is None

    def reduce(self, poly, strategy="leftmost"):
        """Normal form of a polynomial (dict word -> coefficient)."""
        if self.trivial:
            return {}
        work = {w: x for w, x in poly.items() if x}
        heap = [_heap_key(w) for w in work]
        heapq.heapify(heap)
        out = {}
        rules = self.rules
        while heap:
            hk = heapq.heappop(heap)
            w = _unheap(hk)
            x = work.pop(w, None)
            if not x:
                continue
            hit = self.find(w, strategy)
            if hit is None:
                out[w] = x
                continue
            p, lead = hit
            a, b = w[:p], w[p + len(lead):]
            for tw, ty in rules[lead].items():
                nw = a + tw + b
                y = work.get(nw)
                z = x * ty
                if y is None:
                    work[nw] = z
                    heapq.heappush(heap, _heap_key(nw))
                else:
                    z = y + z
                    if z:
                        work[nw] = z
                    else:
                        del work[nw]
        return out

    def reduce_word(self, word, strategy="leftmost"):
        one = self.presentation.field.convert(1)
        return self.reduce({tuple(word): one}, strategy)

    def overlaps(self):
        """All overlap and inclusion S-polynomials of the current rules."""
        leads = list(self.rules)
        for l1 in leads:
            for l2 in leads:
                for s in _overlap_words(l1, l2):
                    yield s

    def spoly(self, pair):
        return _spoly(self.rules, pair, self.presentation.field.convert(1))


def _heap_key(w):
    # max-heap on (len, lex) through negation
    return (-len(w), tuple(-s for s in w))


def _unheap(k):
    return tuple(-s for s in k[1])


def _overlap_words(l1, l2):
    """Ways in which a proper suffix of l1 equals a proper prefix of l2."""
    out = []
    for k in range(1, min(len(l1), len(l2))):
        if l1[-k:] == l2[:k]:
            out.append(("overlap", l1, l2, k))
    return out


def _spoly(rules, pair, one):
    kind, l1, l2, k = pair
    if kind == "overlap":
        # word = l1 + l2[k:] = l1[:-k] + l2
        a, b = l1[: len(l1) - k], l2[k:]
        poly = {}
        for w, x in rules[l1].items():
            _add_term(poly, w + b, x)
        for w, x in rules[l2].items():
            _add_term(poly, a + w, -x)
        return poly
    raise ValueError(kind)


def _monic(poly):
    lead = max(poly, key=_key)
    inv = 1 / poly[lead]
    tail = {w: -x * inv for w, x in poly.items() if w != lead}
    return lead, tail


def _contains(word, sub_):
    n, k = len(word), len(sub_)
    return any(word[p:p + k] == sub_ for p in range(n - k + 1))


def complete(pres, degree_bound, budget=None, log=None):
    """Bounded overlap completion with a finiteness certificate.

    Raises Unstabilized when the normal words do not die out below the bound
    or when some overlap of the final rules fails to reduce to zero.
    """
    if degree_bound < pres.max_degree:
        raise BoundTooSmall(f"degree bound {degree_bound} is below the relation degree {pres.max_degree}")
    rs = RewriteSystem(pres, {}, degree_bound)
    rules = rs.rules
    one = pres.field.convert(1)
    # queue entries: (degree, seq, kind, payload)
    queue = []
    seq = 0
    for _, _, poly in pres.relations:
        if poly:
            heapq.heappush(queue, (max(len(w) for w in poly), seq, "poly", poly))
            seq += 1
    processed = 0
    round_counts = {}
    while queue:
        deg, _, kind, payload = heapq.heappop(queue)
        if kind == "pair":
            _, l1, l2, _ = payload
            if l1 not in rules or l2 not in rules:
                continue
            poly = _spoly(rules, payload, one)
        else:
            poly = payload
        red = rs.reduce(poly)
        processed += 1
        if not red:
            continue
        lead, tail = _monic(red)
        if not lead:
            rs.trivial = True
            rules.clear()
            rules[()] = {}
            rs._refresh()
            rs.log.append("constant in the ideal: presented algebra is zero")
            break
        # drop rules whose lead contains the new lead; their relations are requeued
        for old in [w for w in rules if _contains(w, lead)]:
            otail = rules.pop(old)
            p = dict(otail)
            p = {w: -x for w, x in p.items()}
            _add_term(p, old, one)
            heapq.heappush(queue, (len(old), seq, "poly", p))
            seq += 1
        rules[lead] = tail
        rs._refresh()
        if budget is not None and len(rules) > budget:
            raise ResourceBudgetExceeded(f"rule count exceeds budget {budget}")
        round_counts[len(lead)] = round_counts.get(len(lead), 0) + 1
        for other in list(rules):
            for pair in _overlap_words(lead, other) + (_overlap_words(other, lead) if other != lead else []):
                _, l1, l2, k = pair
                size = len(l1) + len(l2) - k
                if size <= degree_bound:
                    heapq.heappush(queue, (size, seq, "pair", pair))
                    seq += 1
        if log is not None and processed % 500 == 0:
            log(f"processed {processed}, rules {len(rules)}")
    for ln in sorted(round_counts):
        rs.log.append(f"degree {ln}: {round_counts[ln]} rules added")
    if rs.trivial:
        rs.stabilized = True
        rs.normal_words = []
        rs.frontier_length = 0
        return rs
    _interreduce(rs)
    rs.log.append(f"interreduced rules: {len(rules)}")
    words, empty_at = _normal_words(rs, degree_bound)
    if empty_at is None:
        rs.log.append(f"normal words persist at length {degree_bound}")
        raise Unstabilized(f"normal words exist at every length up to {degree_bound}", system=rs)
    rs.frontier_length = empty_at
    bad = 0
    for pair in rs.overlaps():
        if rs.reduce(rs.spoly(pair)):
            bad += 1
    if bad:
        rs.log.append(f"{bad} overlaps of the final rules do not reduce to zero")
        raise Unstabilized(f"{bad} overlaps beyond the bound are unresolved", system=rs)
    rs.stabilized = True
    rs.normal_words = words
    rs.log.append(f"normal words: {len(words)}, none of length {empty_at}")
    return rs


def _interreduce(rs):
    """Fully reduce every tail.  Leads are already mutually irreducible:
    a new lead is normal for the current rules, and rules whose lead contains
    it are requeued when it is added."""
    rules = rs.rules
    for lead in sorted(rules, key=_key):
        rules[lead] = rs.reduce(rules[lead])


def _normal_words(rs, bound):
    """Normal words by length; returns (words, first length with none) or (words, None)."""
    letters = range(len(rs.presentation.alphabet))
    level = [()]
    words = [()] if rs.is_normal(()) else []
    if not words:
        return [], 0
    lengths = rs._lengths
    rules = rs.rules
    for length in range(1, bound + 1):
        nxt = []
        for w in level:
            for s in letters:
                cand = w + (s,)
                # the prefix is normal, so only suffixes can contain a lead
                if any(cand[length - ln:] in rules for ln in lengths if ln <= length):
                    continue
                nxt.append(cand)
        if not nxt:
            return words, length
        words.extend(nxt)
        level = nxt
    return words, None


def presented_dimension(c, pi, classical=False, degree_bound=10, v_eval=None, budget=None):
    """Number of normal words of the completed presentation."""
    pres = instantiate_presentation(c, pi, classical=classical, v_eval=v_eval)
    return complete(pres, degree_bound, budget=budget).dimension


def predicted_dimension(c, pi):
    """Sum of squared simple dimensions over the largest saturated subset of pi."""
    from .hwmodule import freudenthal

    return sum(freudenthal(c, lam).total ** 2 for lam in largest_saturated_subset(c, pi))


def confluence_check(rs, samples=200, seed=0):
    """Random words reduce identically under leftmost and rightmost rewriting."""
    rng = random.Random(seed)
    m = len(rs.presentation.alphabet)
    bad = []
    for _ in range(samples):
        length = rng.randint(0, rs.degree_bound)
        w = tuple(rng.randrange(m) for _ in range(length))
        a, b = rs.reduce_word(w, "leftmost"), rs.reduce_word(w, "rightmost")
        if a != b:
            bad.append(w)
    return bad


def random_point(seed=0):
    """Rational v0 with numerator and denominator at most 50, avoiding 0 and +-1."""
    rng = random.Random(seed)
    while True:
        v0 = Fraction(rng.randint(-50, 50), rng.randint(1, 50))
        if v0 not in (0, 1, -1):
            return v0


def presentation_dump(pres, rs=None):
    lines = [f"cartan {pres.cartan}", "pi " + ";".join(format_weight(w) for w in pres.pi),
             "Wpi " + ";".join(format_weight(w) for w in pres.wpi)]
    lines += pres.dump_lines()
    if rs is not None:
        lines.append(f"degree-bound {rs.degree_bound}")
        lines += [f"log {x}" for x in rs.log]
        if rs.normal_words is not None:
            lines.append(f"normal-words {len(rs.normal_words)}")
            lines += [f"  {pres.word_text(w)}" for w in rs.normal_words]
    return lines


__all__ = [
    "NCPresentation",
    "RewriteSystem",
    "complete",
    "confluence_check",
    "instantiate_presentation",
    "predicted_dimension",
    "presentation_dump",
    "presented_dimension",
    "random_point",
]
