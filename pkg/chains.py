"""
The chain poset Ch(Q)

Depth functions record, for every non-top element q of Q, the multiplicity
of the divisor x_q at one point. Saturated (meet-preserving) depth functions
are the chains of Q; a chain is written as a word of letters f(1), f(2), ...
with f(n) = inf{q : g(q) >= n}. Chains are ordered pointwise on depths, so the
trivial chain is the least element.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from exceptions import InputDomainError
from lattice import FinitePoset, MeetSemilattice
from utils.word_codec import format_word, parse_word

logger = logging.getLogger(__name__)

Word = List[Tuple[int, int]]


class DepthFunction:
    """
    Order-compatible map from the non-top elements of a meet-semilattice to N.

    `depths` is aligned with `poset.proper_elements`.
    """

    __slots__ = ('poset', 'depths', '_hash')

    def __init__(self, poset: MeetSemilattice, depths: Iterable[int]):
        depths = tuple(int(d) for d in depths)
        if len(depths) != len(poset.proper_elements):
            raise InputDomainError(
                f"expected {len(poset.proper_elements)} depths, got {len(depths)}"
            )
        if any(d < 0 for d in depths):
            raise InputDomainError("depths must be non-negative")
        self.poset = poset
        self.depths = depths
        self._hash = hash((id(poset), depths))
        for p, q in _plan(poset).order_pairs:
            if depths[p] > depths[q]:
                raise InputDomainError(
                    f"depth function is not order-compatible: "
                    f"{poset.label(poset.proper_elements[p])} <= {poset.label(poset.proper_elements[q])}"
                )

    @classmethod
    def from_mapping(cls, poset: MeetSemilattice, mapping: Mapping[Union[str, int], int]):
        """Build from {label or index: depth}; omitted elements get depth 0"""
        depths = [0] * len(poset.proper_elements)
        for key, value in mapping.items():
            q = poset.index(key) if isinstance(key, str) else int(key)
            if q == poset.top:
                raise InputDomainError("the top element has no depth")
            depths[poset.position[q]] = value
        return cls(poset, depths)

    @classmethod
    def trivial(cls, poset: MeetSemilattice):
        return cls(poset, [0] * len(poset.proper_elements))

    def depth(self, q: int) -> int:
        if q == self.poset.top:
            raise InputDomainError("the top element has infinite depth")
        return self.depths[self.poset.position[q]]

    @property
    def total_depth(self) -> int:
        """Largest depth; for a chain this is the word length"""
        return max(self.depths, default=0)

    @property
    def is_trivial(self) -> bool:
        return not any(self.depths)

    @property
    def is_saturated(self) -> bool:
        return _saturate_depths(self.poset, self.depths) == self.depths

    def sort_key(self):
        return (self.total_depth, self.depths)

    def to_mapping(self) -> Dict[str, int]:
        return {self.poset.label(q): d for q, d in zip(self.poset.proper_elements, self.depths)}

    def __le__(self, other: "DepthFunction") -> bool:
        _same_poset(self, other)
        return all(a <= b for a, b in zip(self.depths, other.depths))

    def __lt__(self, other: "DepthFunction") -> bool:
        return self <= other and self.depths != other.depths

    def __add__(self, other: "DepthFunction") -> "DepthFunction":
        _same_poset(self, other)
        return DepthFunction(self.poset, (a + b for a, b in zip(self.depths, other.depths)))

    def pointwise_max(self, other: "DepthFunction") -> "DepthFunction":
        _same_poset(self, other)
        return DepthFunction(self.poset, (max(a, b) for a, b in zip(self.depths, other.depths)))

    def __eq__(self, other):
        if not isinstance(other, DepthFunction):
            return NotImplemented
        return self.poset is other.poset and self.depths == other.depths

    def __hash__(self):
        return self._hash

    def __repr__(self):
        body = ", ".join(f"{k}:{v}" for k, v in self.to_mapping().items() if v)
        return f"DepthFunction({{{body}}})"


class Chain(DepthFunction):
    """A saturated depth function together with its word"""

    __slots__ = ('_word',)

    def __init__(self, poset: MeetSemilattice, depths: Iterable[int]):
        super().__init__(poset, depths)
        if _saturate_depths(poset, self.depths) != self.depths:
            raise InputDomainError(f"{self.to_mapping()} is not meet-preserving")
        self._word: Optional[Word] = None

    @property
    def word(self) -> Word:
        if self._word is None:
            self._word = _word_of(self.poset, self.depths)
        return self._word

    def __str__(self):
        return format_word(self.poset, self.word)

    def __repr__(self):
        return f"Chain({self})"


def _same_poset(a: DepthFunction, b: DepthFunction):
    if a.poset is not b.poset:
        raise InputDomainError("depth functions live on different posets")


class _SaturationPlan:
    """Index pairs used by the saturation fixed point"""

    def __init__(self, poset: MeetSemilattice):
        proper = poset.proper_elements
        pos = poset.position
        self.meet_triples = []
        self.order_pairs = []
        for a, b in combinations(range(len(proper)), 2):
            p, q = proper[a], proper[b]
            m = poset.meet(p, q)
            if m != p and m != q:
                self.meet_triples.append((a, b, pos[m]))
            if poset.lt(p, q):
                self.order_pairs.append((a, b))
            elif poset.lt(q, p):
                self.order_pairs.append((b, a))


@lru_cache(maxsize=None)
def _plan(poset: MeetSemilattice) -> _SaturationPlan:
    return _SaturationPlan(poset)


@lru_cache(maxsize=200_000)
def _saturate_depths(poset: MeetSemilattice, depths: Tuple[int, ...]) -> Tuple[int, ...]:
    plan = _plan(poset)
    g = list(depths)
    changed = True
    while changed:
        changed = False
        for a, b, m in plan.meet_triples:
            value = min(g[a], g[b])
            if g[m] < value:
                g[m] = value
                changed = True
        for p, q in plan.order_pairs:
            if g[q] < g[p]:
                g[q] = g[p]
                changed = True
    return tuple(g)


def _word_of(poset: MeetSemilattice, depths: Tuple[int, ...]) -> Word:
    word: Word = []
    for n in range(1, max(depths, default=0) + 1):
        letter = poset.top
        for q, d in zip(poset.proper_elements, depths):
            if d >= n:
                letter = poset.meet(letter, q)
        if word and word[-1][0] == letter:
            word[-1] = (letter, word[-1][1] + 1)
        else:
            word.append((letter, 1))
    return word


def saturate(g: DepthFunction) -> Chain:
    """Least meet-preserving depth function above g"""
    return Chain(g.poset, _saturate_depths(g.poset, g.depths))


def chain_to_word(c: DepthFunction) -> Word:
    """Word of a saturated depth function, letters in increasing order"""
    if not c.is_saturated:
        raise InputDomainError(f"{c!r} is not saturated")
    return _word_of(c.poset, c.depths)


def word_to_chain(poset: MeetSemilattice, word: Union[str, Word]) -> Chain:
    """Rebuild depths from a word via g(q) = #{n : f(n) <= q}"""
    if isinstance(word, str):
        word = parse_word(poset, word)
    letters = [q for q, _ in word]
    for p, q in combinations(letters, 2):
        if not (poset.leq(p, q) or poset.leq(q, p)):
            raise InputDomainError(
                f"letters {poset.label(p)} and {poset.label(q)} are incomparable"
            )
    depths = [
        sum(m for p, m in word if poset.leq(p, q)) for q in poset.proper_elements
    ]
    return Chain(poset, depths)


def chain_leq(a: DepthFunction, b: DepthFunction) -> bool:
    return a <= b


def chain_join(a: DepthFunction, b: DepthFunction) -> Chain:
    return saturate(a.pointwise_max(b))


@lru_cache(maxsize=None)
def enumerate_chains(poset: MeetSemilattice, max_total_depth: int) -> Tuple[Chain, ...]:
    """Every chain whose word length is at most max_total_depth, in canonical order"""
    proper = poset.proper_elements
    found = []

    def extend(word: Word, used: int):
        found.append(word_to_chain(poset, list(word)))
        last = word[-1][0] if word else None
        for q in proper:
            if last is not None and not poset.lt(last, q):
                continue
            for m in range(1, max_total_depth - used + 1):
                word.append((q, m))
                extend(word, used + m)
                word.pop()

    extend([], 0)
    return tuple(sorted(found, key=Chain.sort_key))


@lru_cache(maxsize=50_000)
def _covers(c: Chain) -> Tuple[Chain, ...]:
    # a cover raises the word length by at most one
    above = [s for s in enumerate_chains(c.poset, c.total_depth + 1) if c < s]
    return tuple(s for s in above if not any(c < t and t < s for t in above))


def covers_above(c: Chain, depth_budget: int) -> List[Chain]:
    """Covers of c in Ch(Q) whose word length stays within the budget"""
    if depth_budget < c.total_depth:
        raise InputDomainError(
            f"depth budget {depth_budget} is below the total depth {c.total_depth} of {c}"
        )
    return [s for s in _covers(c) if s.total_depth <= depth_budget]


@dataclass(frozen=True)
class EssentialJoin:
    """A join of covers of some chain together with a smallest witnessing subset"""
    chain: Chain
    witness: Tuple[Chain, ...]


def essential_above(c: Chain, depth_budget: int) -> List[EssentialJoin]:
    """Joins of nonempty subsets of covers_above(c, depth_budget)"""
    covers = covers_above(c, depth_budget)
    joins: Dict[Chain, EssentialJoin] = {}
    for size in range(1, len(covers) + 1):
        for subset in combinations(covers, size):
            joined = subset[0]
            for s in subset[1:]:
                joined = chain_join(joined, s)
            if joined not in joins:
                joins[joined] = EssentialJoin(joined, subset)
    return sorted(joins.values(), key=lambda e: e.chain.sort_key())


def is_essential_pair(w: Chain, x: Chain) -> bool:
    if not w <= x:
        raise InputDomainError(f"{w} is not below {x}")
    if w == x:
        return True
    return any(e.chain == x for e in essential_above(w, x.total_depth))


def crosscut_maximum(w: Chain, x: Chain) -> Chain:
    """Join of all covers s of w with s <= x (w itself when there are none)"""
    result = w
    for s in covers_above(w, x.total_depth):
        if s <= x:
            result = chain_join(result, s)
    return result


def interval_poset(w: Chain, x: Chain) -> Tuple[FinitePoset, List[Chain]]:
    """The interval [w, x] of Ch(Q) as a finite poset plus its chains by index"""
    if not w <= x:
        raise InputDomainError(f"{w} is not below {x}")
    members = [c for c in enumerate_chains(w.poset, x.total_depth) if w <= c <= x]
    poset = FinitePoset.from_relation(
        [str(c) for c in members], lambda i, j: members[i] <= members[j]
    )
    return poset, members
