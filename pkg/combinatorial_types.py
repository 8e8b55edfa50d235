"""
Combinatorial types

A type forgets where the points of a configuration sit and keeps the multiset
of their depth functions (absolute), or of their (lower, upper) pairs
(relative). Pointed types keep the basepoint in a slot of its own.

Enumerated relative types list the active points only (lower < upper, or a
new point with trivial lower); points of w that do not move are implicit.
"""

import logging
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from chains import (Chain, DepthFunction, covers_above, enumerate_chains, is_essential_pair,
                    saturate, word_to_chain)
from divisors import (LabeledConfiguration, RelativePair, chain_rank, chain_value, gamma_of,
                      gamma_weights_for, rank_of, supp_of)
from exceptions import InputDomainError
from lattice import BlowupPoset, MeetSemilattice

logger = logging.getLogger(__name__)

ABSOLUTE = 'absolute'
RELATIVE = 'relative'
POINTED = 'pointed'
FLAVORS = (ABSOLUTE, RELATIVE, POINTED)

Pair = Tuple[DepthFunction, DepthFunction]
Entry = Union[DepthFunction, Pair]


def _entry_key(entry: Entry):
    if isinstance(entry, tuple):
        lower, upper = entry
        return (upper.sort_key(), lower.sort_key())
    return entry.sort_key()


def _entry_vector(entry: Entry) -> Tuple[int, ...]:
    if isinstance(entry, tuple):
        return entry[0].depths + entry[1].depths
    return entry.depths


def _entry_str(entry: Entry) -> str:
    if isinstance(entry, tuple):
        return f"{_df_str(entry[0])}<{_df_str(entry[1])}"
    return _df_str(entry)


def _df_str(g: DepthFunction) -> str:
    if isinstance(g, Chain):
        return str(g)
    if g.is_saturated:
        return str(saturate(g))
    return "{" + ",".join(f"{k}:{v}" for k, v in g.to_mapping().items() if v) + "}"


@dataclass(frozen=True)
class CombinatorialType:
    """Multiset of per-point depth functions or pairs, in canonical order"""
    poset: MeetSemilattice
    entries: Tuple[Entry, ...]
    basepoint_entry: Optional[Entry] = None
    relative: bool = False
    _key: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        kept = []
        for entry in self.entries:
            self._check_entry(entry)
            if isinstance(entry, tuple):
                if entry[1].is_trivial:
                    continue
            elif entry.is_trivial:
                continue
            kept.append(entry)
        if self.basepoint_entry is not None:
            self._check_entry(self.basepoint_entry)
        ordered = tuple(sorted(kept, key=_entry_key))
        object.__setattr__(self, 'entries', ordered)
        base_key = _entry_key(self.basepoint_entry) if self.basepoint_entry is not None else None
        object.__setattr__(self, '_key', (len(ordered), tuple(_entry_key(e) for e in ordered), base_key))

    def _check_entry(self, entry: Entry):
        if self.relative != isinstance(entry, tuple):
            raise InputDomainError("entries must all be pairs (relative) or all single (absolute)")
        parts = entry if isinstance(entry, tuple) else (entry,)
        for g in parts:
            if g.poset is not self.poset:
                raise InputDomainError("type entries live on another poset")
        if isinstance(entry, tuple) and not entry[0] <= entry[1]:
            raise InputDomainError(f"pair {_entry_str(entry)} is not ordered")

    @property
    def pointed(self) -> bool:
        return self.basepoint_entry is not None

    @property
    def flavor(self) -> str:
        if self.pointed:
            return POINTED
        return RELATIVE if self.relative else ABSOLUTE

    @property
    def size(self) -> int:
        return len(self.entries)

    def all_entries(self) -> List[Entry]:
        return ([self.basepoint_entry] if self.pointed else []) + list(self.entries)

    @property
    def saturated(self) -> bool:
        def sat(entry):
            return (entry[1] if isinstance(entry, tuple) else entry).is_saturated
        return all(sat(e) for e in self.all_entries())

    def sort_key(self):
        return self._key

    def __str__(self):
        body = ", ".join(_entry_str(e) for e in self.entries)
        if self.pointed:
            return f"[*{_entry_str(self.basepoint_entry)}] {{{body}}}"
        return f"{{{body}}}"

    def __hash__(self):
        return hash((id(self.poset), self._key))

    def __eq__(self, other):
        if not isinstance(other, CombinatorialType):
            return NotImplemented
        return self.poset is other.poset and self.relative == other.relative and self._key == other._key


@dataclass(frozen=True)
class TypeBounds:
    """Enumeration bounds: points per type and word length per entry"""
    max_points: int
    max_depth: int

    def __post_init__(self):
        if self.max_points < 0 or self.max_depth < 0:
            raise InputDomainError("type bounds must be non-negative")

    def to_json(self):
        return {'max_points': self.max_points, 'max_depth': self.max_depth}


def type_of(x: Union[LabeledConfiguration, RelativePair]) -> CombinatorialType:
    """Forget the point labels"""
    if isinstance(x, RelativePair):
        entries = [(x.lower.get(label), x.upper.get(label)) for label in x.labels]
        base = (x.lower.basepoint_depth, x.upper.basepoint_depth) if x.upper.pointed else None
        return CombinatorialType(x.poset, tuple(entries), base, relative=True)
    entries = tuple(g for _, g in x.points)
    return CombinatorialType(x.poset, entries, x.basepoint_depth if x.pointed else None)


def type_from_words(poset: MeetSemilattice, entries: Sequence[Union[str, Tuple[str, str]]],
                    basepoint: Optional[Union[str, Tuple[str, str]]] = None) -> CombinatorialType:
    """Build a saturated type from word strings; pairs give relative types"""
    def convert(item):
        if isinstance(item, tuple):
            return (word_to_chain(poset, item[0]), word_to_chain(poset, item[1]))
        return word_to_chain(poset, item)

    relative = any(isinstance(item, tuple) for item in entries) or isinstance(basepoint, tuple)
    return CombinatorialType(
        poset, tuple(convert(item) for item in entries),
        convert(basepoint) if basepoint is not None else None, relative=relative,
    )


def saturate_type(T: CombinatorialType) -> CombinatorialType:
    """Pointwise saturation; the lower side of a pair is kept"""
    def sat(entry):
        if isinstance(entry, tuple):
            return (entry[0], saturate(entry[1]))
        return saturate(entry)
    base = sat(T.basepoint_entry) if T.pointed else None
    return CombinatorialType(T.poset, tuple(sat(e) for e in T.entries), base, T.relative)


def as_relative(T: CombinatorialType) -> CombinatorialType:
    """An absolute type read as a type over the empty configuration"""
    if T.relative:
        return T
    trivial = saturate(DepthFunction.trivial(T.poset))
    base = (trivial, T.basepoint_entry) if T.pointed else None
    return CombinatorialType(T.poset, tuple((trivial, g) for g in T.entries), base, relative=True)


# ---------------------------------------------------------------------------
# The order <=+
# ---------------------------------------------------------------------------

def _check_comparable(S: CombinatorialType, T: CombinatorialType):
    if S.poset is not T.poset:
        raise InputDomainError("types live on different posets")
    if S.relative != T.relative or S.pointed != T.pointed:
        raise InputDomainError(f"cannot compare a {S.flavor} type with a {T.flavor} type")


def _assignment_exists(targets: Sequence[Tuple[int, ...]], sources: Sequence[Tuple[int, ...]],
                       base_target: Optional[Tuple[int, ...]] = None,
                       base_source: Optional[Tuple[int, ...]] = None) -> bool:
    """
    Is there a map F from sources to bins with every target dominated by the
    sum of the sources sent to it? The pointed bin (last) starts with the
    basepoint source already assigned.
    """
    bins = list(targets)
    width = len(bins[0]) if bins else (len(sources[0]) if sources else 0)
    loads = [[0] * width for _ in bins]
    if base_target is not None:
        bins.append(base_target)
        loads.append(list(base_source))
    if not bins:
        return not sources

    order = sorted(range(len(sources)), key=lambda i: -sum(sources[i]))
    ordered = [sources[i] for i in order]
    suffix = [[0] * width for _ in range(len(ordered) + 1)]
    for k in range(len(ordered) - 1, -1, -1):
        suffix[k] = [a + b for a, b in zip(suffix[k + 1], ordered[k])]

    def feasible(k):
        rest = suffix[k]
        return all(
            all(t <= load + r for t, load, r in zip(target, load_vec, rest))
            for target, load_vec in zip(bins, loads)
        )

    def search(k):
        if not feasible(k):
            return False
        if k == len(ordered):
            return True
        tried = set()
        for j in range(len(bins)):
            signature = (bins[j], tuple(loads[j]), j == len(targets))
            if signature in tried:
                continue
            tried.add(signature)
            loads[j] = [a + b for a, b in zip(loads[j], ordered[k])]
            found = search(k + 1)
            loads[j] = [a - b for a, b in zip(loads[j], ordered[k])]
            if found:
                return True
        return False

    return search(0)


def leq_plus(S: CombinatorialType, T: CombinatorialType) -> bool:
    """Decide T >=+ S by exhaustive search over assignments F"""
    _check_comparable(S, T)
    if S.size > T.size and not S.pointed:
        return False
    targets = [_entry_vector(e) for e in S.entries]
    sources = [_entry_vector(e) for e in T.entries]
    if S.pointed:
        return _assignment_exists(targets, sources, _entry_vector(S.basepoint_entry),
                                  _entry_vector(T.basepoint_entry))
    return _assignment_exists(targets, sources)


# ---------------------------------------------------------------------------
# The order <=+,sat
# ---------------------------------------------------------------------------

_PREIMAGE_CACHE: Dict[Tuple, Tuple] = {}


def sat_preimages(entry: Entry) -> Tuple[Entry, ...]:
    """Minimal order-compatible entries whose saturation is the given one"""
    key = (id(entry[1].poset if isinstance(entry, tuple) else entry.poset), _entry_vector(entry),
           isinstance(entry, tuple))
    cached = _PREIMAGE_CACHE.get(key)
    if cached is not None:
        return cached
    lower, upper = entry if isinstance(entry, tuple) else (None, entry)
    poset = upper.poset
    floor = lower.depths if lower is not None else (0,) * len(upper.depths)
    found = []
    for depths in product(*(range(lo, hi + 1) for lo, hi in zip(floor, upper.depths))):
        try:
            g = DepthFunction(poset, depths)
        except InputDomainError:
            continue
        if saturate(g).depths == upper.depths:
            found.append(g)
    minimal = [g for g in found if not any(h < g for h in found)]
    minimal.sort(key=DepthFunction.sort_key)
    result = tuple((lower, g) for g in minimal) if lower is not None else tuple(minimal)
    _PREIMAGE_CACHE[key] = result
    return result


def sat_step(S: CombinatorialType, T: CombinatorialType) -> bool:
    """One step of <=+,sat: some preimage of S lies <=+ below T"""
    _check_comparable(S, T)
    if S.size > T.size:
        return False
    choices = [sat_preimages(e) for e in S.entries]
    base_choices = [sat_preimages(S.basepoint_entry)] if S.pointed else [(None,)]
    for base in base_choices[0]:
        for picked in product(*choices):
            candidate = CombinatorialType(S.poset, tuple(picked), base, S.relative)
            if candidate.size == S.size and leq_plus(candidate, T):
                return True
    return False


@dataclass
class SatOrderResult:
    related: bool
    witness: List[CombinatorialType]

    def to_json(self):
        return {'related': self.related, 'witness': [str(T) for T in self.witness]}


class SatOrder:
    """<=+,sat restricted to an enumerated universe of saturated types"""

    def __init__(self, universe: Sequence[CombinatorialType]):
        self.universe = list(universe)
        self.index = {T: i for i, T in enumerate(self.universe)}
        self._edges: Optional[List[List[int]]] = None

    def _require(self, T: CombinatorialType) -> int:
        try:
            return self.index[T]
        except KeyError:
            raise InputDomainError(f"type {T} is outside the enumerated universe") from None

    @property
    def edges(self) -> List[List[int]]:
        if self._edges is None:
            self._edges = [
                [j for j, T in enumerate(self.universe) if i != j and sat_step(S, T)]
                for i, S in enumerate(self.universe)
            ]
        return self._edges

    def path(self, S: CombinatorialType, T: CombinatorialType) -> Optional[List[CombinatorialType]]:
        start, goal = self._require(S), self._require(T)
        parent = {start: None}
        queue = deque([start])
        while queue:
            i = queue.popleft()
            if i == goal:
                chain = []
                while i is not None:
                    chain.append(self.universe[i])
                    i = parent[i]
                return list(reversed(chain))
            for j in self.edges[i]:
                if j not in parent:
                    parent[j] = i
                    queue.append(j)
        return None

    def reachable(self, i: int) -> set:
        seen = {i}
        queue = deque([i])
        while queue:
            for j in self.edges[queue.popleft()]:
                if j not in seen:
                    seen.add(j)
                    queue.append(j)
        return seen

    def antisymmetry_violations(self) -> List[Tuple[CombinatorialType, CombinatorialType]]:
        above = [self.reachable(i) for i in range(len(self.universe))]
        return [
            (self.universe[i], self.universe[j])
            for i in range(len(self.universe)) for j in above[i]
            if j > i and i in above[j]
        ]


def leq_plus_sat(S: CombinatorialType, T: CombinatorialType,
                 universe: Union[SatOrder, Sequence[CombinatorialType]]) -> SatOrderResult:
    """Transitive closure of sat_step inside the universe, with a witness chain"""
    order = universe if isinstance(universe, SatOrder) else SatOrder(universe)
    witness = order.path(S, T)
    return SatOrderResult(witness is not None, witness or [])


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def default_lower_chains(poset: MeetSemilattice, max_depth: int) -> List[Chain]:
    """Lower chains allowed at points of w: d*l_i on a blowup poset, anything otherwise"""
    chains = [c for c in enumerate_chains(poset, max_depth) if not c.is_trivial]
    if isinstance(poset, BlowupPoset):
        return [c for c in chains if len(c.word) == 1 and c.word[0][0] != poset.zero]
    return chains


def _active_pairs(poset, lowers: Iterable[Chain], max_depth: int, essential_only: bool,
                  entry_filter: Optional[Callable[[Pair], bool]]) -> List[Pair]:
    pairs = []
    for a in lowers:
        for b in enumerate_chains(poset, max(max_depth, a.total_depth)):
            if b.total_depth > max_depth or not a < b:
                continue
            if essential_only and not is_essential_pair(a, b):
                continue
            if entry_filter is not None and not entry_filter((a, b)):
                continue
            pairs.append((a, b))
    return pairs


def enumerate_saturated_types(poset: MeetSemilattice, bounds: TypeBounds, flavor: str = ABSOLUTE,
                              essential_only: bool = False,
                              lower_chains: Optional[Sequence[Chain]] = None,
                              lower_type: Optional[Sequence[Chain]] = None,
                              basepoint_lower: Optional[Chain] = None,
                              entry_filter: Optional[Callable[[Pair], bool]] = None,
                              basepoint_filter: Optional[Callable[[Pair], bool]] = None
                              ) -> List[CombinatorialType]:
    """
    Every saturated type within the bounds, duplicate-free, in canonical order.

    Relative and pointed types draw lower chains from `lower_type` (each
    chain at most as often as it occurs there) or from `lower_chains`
    (unlimited); new points have a trivial lower chain.
    """
    if flavor not in FLAVORS:
        raise InputDomainError(f"unknown flavor {flavor!r}")
    trivial = saturate(DepthFunction.trivial(poset))

    if flavor == ABSOLUTE:
        singles = [c for c in enumerate_chains(poset, bounds.max_depth) if not c.is_trivial]
        if essential_only:
            singles = [c for c in singles if is_essential_pair(trivial, c)]
        found = [
            CombinatorialType(poset, combo)
            for size in range(bounds.max_points + 1)
            for combo in combinations_with_replacement(singles, size)
        ]
        return sorted(found, key=CombinatorialType.sort_key)

    budget: Optional[Counter] = None
    if lower_type is not None:
        budget = Counter(lower_type)
        lowers = sorted(budget, key=Chain.sort_key)
    else:
        lowers = list(lower_chains) if lower_chains is not None else default_lower_chains(poset, bounds.max_depth)
    pairs = _active_pairs(poset, [trivial] + [a for a in lowers if not a.is_trivial],
                          bounds.max_depth, essential_only, entry_filter)

    def within_budget(combo):
        if budget is None:
            return True
        used = Counter(a for a, _ in combo if not a.is_trivial)
        return all(used[a] <= budget[a] for a in used)

    bases: List[Optional[Pair]] = [None]
    if flavor == POINTED:
        base_lower = basepoint_lower or trivial
        bases = [
            (base_lower, b) for b in enumerate_chains(poset, max(bounds.max_depth, base_lower.total_depth))
            if base_lower <= b and (b == base_lower or b.total_depth <= bounds.max_depth)
            and (not essential_only or is_essential_pair(base_lower, b))
            and (basepoint_filter is None or basepoint_filter((base_lower, b)))
        ]

    found = set()
    for base in bases:
        for size in range(bounds.max_points + 1):
            for combo in combinations_with_replacement(pairs, size):
                if within_budget(combo):
                    found.add(CombinatorialType(poset, combo, base, relative=True))
    return sorted(found, key=CombinatorialType.sort_key)


# ---------------------------------------------------------------------------
# kappa and friends
# ---------------------------------------------------------------------------

def _require_relative(T: CombinatorialType):
    if not T.relative:
        raise InputDomainError("operation needs a relative type (pairs lower <= upper)")


def type_gamma(T: CombinatorialType, v: Optional[int] = None) -> int:
    _require_relative(T)
    weights = gamma_weights_for(T.poset, v)
    return sum(chain_value(weights, b) - chain_value(weights, a) for a, b in T.all_entries())


def type_rank(T: CombinatorialType) -> int:
    _require_relative(T)
    return sum(chain_rank(b) - chain_rank(a) for a, b in T.all_entries())


def type_supp(T: CombinatorialType) -> int:
    """Non-basepoint entries whose upper strictly exceeds the lower"""
    _require_relative(T)
    return sum(1 for a, b in T.entries if a != b)


def kappa_of(T: CombinatorialType, v: Optional[int] = None) -> int:
    """kappa = gamma - rank - supp"""
    _require_relative(T)
    if v is not None and v < 3:
        raise InputDomainError(f"ambient dimension v must be at least 3, got {v}")
    return type_gamma(T, v) - type_rank(T) - type_supp(T)


def representative(T: CombinatorialType) -> RelativePair:
    """A labelled relative pair of type T: points p0, p1, ... and basepoint '*'"""
    R = as_relative(T)
    base = "*" if R.pointed else None
    lower = tuple((f"p{k}", a) for k, (a, _) in enumerate(R.entries))
    upper = tuple((f"p{k}", b) for k, (_, b) in enumerate(R.entries))
    return RelativePair(
        LabeledConfiguration(R.poset, lower, base, R.basepoint_entry[0] if base else None),
        LabeledConfiguration(R.poset, upper, base, R.basepoint_entry[1] if base else None),
    )


def kappa_of_representative(T: CombinatorialType, v: Optional[int] = None) -> int:
    """kappa computed through the divisor functions of a representative"""
    pair = representative(T)
    return gamma_of(pair, v) - rank_of(pair) - supp_of(pair)


def type_is_essential(T: CombinatorialType) -> bool:
    _require_relative(T)
    return all(is_essential_pair(saturate(a), saturate(b)) for a, b in T.all_entries())


def letter_counts(T: CombinatorialType) -> Tuple[int, Tuple[int, ...]]:
    """Relative (m_0, (m_l1, ..., m_lr)) of a type over a blowup poset"""
    _require_relative(T)
    poset = T.poset
    if not isinstance(poset, BlowupPoset):
        raise InputDomainError("letter counts need a blowup poset Q_r")
    m0 = 0
    lines = [0] * poset.r
    for a, b in T.all_entries():
        for chain, sign in ((saturate(b), 1), (saturate(a), -1)):
            for q, m in chain.word:
                if q == poset.zero:
                    m0 += sign * m
                else:
                    lines[q - 1] += sign * m
    return m0, tuple(lines)


def successor_types(T: CombinatorialType, lower_type: Optional[Sequence[Chain]] = None
                    ) -> List[CombinatorialType]:
    """Types reached from T by one cover step at a single point, w unchanged"""
    _require_relative(T)
    poset = T.poset
    trivial = saturate(DepthFunction.trivial(poset))
    entries = list(T.entries)
    result = set()

    def cover_list(c):
        c = saturate(c)
        return covers_above(c, c.total_depth + 1)

    for k, (a, b) in enumerate(entries):
        for s in cover_list(b):
            changed = entries[:k] + [(a, s)] + entries[k + 1:]
            result.add(CombinatorialType(poset, tuple(changed), T.basepoint_entry, True))
    for s in cover_list(trivial):
        result.add(CombinatorialType(poset, tuple(entries + [(trivial, s)]), T.basepoint_entry, True))
    if lower_type is not None:
        remaining = Counter(lower_type) - Counter(a for a, _ in entries if not a.is_trivial)
        for a in sorted(remaining, key=Chain.sort_key):
            for s in cover_list(a):
                result.add(CombinatorialType(poset, tuple(entries + [(a, s)]), T.basepoint_entry, True))
    if T.pointed:
        a, b = T.basepoint_entry
        for s in cover_list(b):
            result.add(CombinatorialType(poset, tuple(entries), (a, s), True))
    return sorted(result, key=CombinatorialType.sort_key)


def minimal_types(candidates: Sequence[CombinatorialType]) -> List[CombinatorialType]:
    """Candidates with no other candidate sat-below them"""
    return [
        T for T in candidates
        if not any(S != T and sat_step(S, T) for S in candidates)
    ]


# ---------------------------------------------------------------------------
# Census records
# ---------------------------------------------------------------------------

@dataclass
class StratumRecord:
    type: CombinatorialType
    gamma: int
    rank: int
    supp: int
    kappa: int
    config_dim_real: int
    essential: bool
    mobius: int
    mu_betti: Optional[List[int]] = None

    def __post_init__(self):
        if self.kappa != self.gamma - self.rank - self.supp:
            raise InputDomainError("kappa must equal gamma - rank - supp")

    def to_row(self) -> Dict:
        row = {
            'type': str(self.type),
            'points': self.type.size,
            'gamma': self.gamma,
            'rank': self.rank,
            'supp': self.supp,
            'kappa': self.kappa,
            'config_dim_real': self.config_dim_real,
            'essential': self.essential,
            'mobius': self.mobius,
        }
        if self.mu_betti is not None:
            row['mu_betti'] = list(self.mu_betti)
        return row


def stratum_record(T: CombinatorialType, v: Optional[int] = None, with_mu: bool = False) -> StratumRecord:
    """Census row of a saturated type; absolute types are read over the empty configuration"""
    import homalg

    if not T.saturated:
        raise InputDomainError(f"type {T} is not saturated")
    R = as_relative(T)
    gamma = type_gamma(R, v)
    rank = type_rank(R)
    supp = type_supp(R)
    pairs = [(saturate(a), saturate(b)) for a, b in R.all_entries()]
    mobius_value = 1
    for a, b in pairs:
        mobius_value *= homalg.interval_mobius(a, b)
    mu_betti = None
    if with_mu:
        mu_betti = homalg.kunneth_betti([homalg.mu_stalk(a, b) for a, b in pairs])
    return StratumRecord(
        type=T, gamma=gamma, rank=rank, supp=supp, kappa=gamma - rank - supp,
        config_dim_real=2 * supp, essential=type_is_essential(R), mobius=mobius_value,
        mu_betti=mu_betti,
    )


def e_weights() -> Tuple[Fraction, ...]:
    """J values exercised by the subadditivity check"""
    return (Fraction(3, 5), Fraction(4, 5), Fraction(1))
