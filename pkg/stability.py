"""
Stability ranges and unobstructedness

Riemann-Roch style tests on section spaces, the constants M, I and the
connectivity range for a class alpha = (d, n_1, ..., n_r), and the subposet P
of relative types together with an exhaustive certificate of the hypotheses
the stability comparison needs.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from chains import Chain, DepthFunction, covers_above, enumerate_chains, saturate, word_to_chain
from combinatorial_types import (POINTED, RELATIVE, CombinatorialType, SatOrder, TypeBounds,
                                 enumerate_saturated_types, kappa_of, kappa_of_representative,
                                 minimal_types, successor_types)
from config import get_config
from exceptions import CertificateError, InputDomainError
from lattice import BlowupPoset, build_blowup_poset

logger = logging.getLogger(__name__)

PLAIN = 'plain'
GENERAL_POSITION = 'general-position'
P_FLAVORS = (PLAIN, GENERAL_POSITION, POINTED)

# The pointed comparison loses one degree of connectivity
POINTED_CONNECTIVITY_OFFSET = 1

# Exact <=+,sat edges are only computed on universes up to this size
EXACT_ORDER_MAX_TYPES = 400


@dataclass(frozen=True)
class CurveContext:
    """Genus, degree and multiplicities of a class alpha = (d, n_1, ..., n_r)"""
    genus: int
    degree: int
    multiplicities: Tuple[int, ...]
    ambient_dim: int = 3
    pointed: bool = False
    general_position: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'multiplicities', tuple(int(n) for n in self.multiplicities))
        if not self.multiplicities:
            raise InputDomainError("at least one multiplicity (r >= 1) is required")
        if any(n < 0 for n in self.multiplicities):
            raise InputDomainError("multiplicities must be non-negative")
        if self.genus < 0:
            raise InputDomainError("genus must be non-negative")
        if self.ambient_dim < 3:
            raise InputDomainError(f"ambient dimension v must be at least 3, got {self.ambient_dim}")

    @property
    def r(self) -> int:
        return len(self.multiplicities)

    @property
    def total_n(self) -> int:
        return sum(self.multiplicities)

    def n_j(self, j: int) -> int:
        """n_j with n_j = 0 for r < j"""
        return self.multiplicities[j - 1] if j <= self.r else 0

    def scaled(self, k: int) -> "CurveContext":
        return CurveContext(self.genus, k * self.degree, tuple(k * n for n in self.multiplicities),
                            self.ambient_dim, self.pointed, self.general_position)

    def to_json(self):
        return {
            'genus': self.genus,
            'degree': self.degree,
            'multiplicities': list(self.multiplicities),
            'ambient_dim': self.ambient_dim,
            'pointed': self.pointed,
            'general_position': self.general_position,
        }


def rr_unobstructed(ctx: CurveContext, m0: int, ml: int) -> bool:
    """d - m_0 - m_l >= 2g - 1"""
    return ctx.degree - m0 - ml >= 2 * ctx.genus - 1


@dataclass(frozen=True)
class GPResult:
    ok: bool
    h1_bound: int
    failing: Tuple[int, ...] = ()

    def to_json(self):
        return {
            'ok': self.ok,
            'h1_bound': self.h1_bound,
            'h1_bound_rule': 'sum over j of max(0, sum_{i != j} m_i - (d - m_0 + 2 - 2g))',
            'failing_lines': list(self.failing),
        }


def gp_unobstructed(ctx: CurveContext, m0: int, mvec: Sequence[int]) -> GPResult:
    """For every j <= min(v, r): sum_{i != j} m_i <= d - m_0 + 2 - 2g"""
    if not ctx.general_position:
        raise InputDomainError("the general position test needs points in general position")
    mvec = tuple(mvec)
    if len(mvec) != ctx.r:
        raise InputDomainError(f"expected {ctx.r} line multiplicities, got {len(mvec)}")
    budget = ctx.degree - m0 + 2 - 2 * ctx.genus
    total = sum(mvec)
    deficits = [total - mvec[j - 1] - budget for j in range(1, min(ctx.ambient_dim, ctx.r) + 1)]
    failing = tuple(j for j, deficit in enumerate(deficits, 1) if deficit > 0)
    return GPResult(not failing, sum(max(0, deficit) for deficit in deficits), failing)


def expected_section_dim(ctx: CurveContext, m0: int, ml: int) -> int:
    """v(d + 1 - g) - v*m_0 - (v - 1)*m_l; may be negative"""
    v = ctx.ambient_dim
    return v * (ctx.degree + 1 - ctx.genus) - v * m0 - (v - 1) * ml


@dataclass(frozen=True)
class StabilityRange:
    """M, I and the connectivity range i < M*k - 2g - 2 (one less when pointed)"""
    ctx: CurveContext
    clause: str
    M: int
    I: int
    M_certified: int
    feasible: bool
    reasons: Tuple[str, ...] = ()
    hypothesis_failures: Tuple[str, ...] = ()

    @property
    def hypotheses_hold(self) -> bool:
        """Whether the pointed genus 0 comparison reaches all continuous maps, not only positive ones"""
        return not self.hypothesis_failures

    @property
    def offset(self) -> int:
        return POINTED_CONNECTIVITY_OFFSET if self.ctx.pointed else 0

    @property
    def pointed_I(self) -> int:
        return self.I - POINTED_CONNECTIVITY_OFFSET

    def connectivity(self, k: int) -> int:
        return self.M * k - 2 * self.ctx.genus - 2 - self.offset

    def to_json(self):
        return {
            'context': self.ctx.to_json(),
            'clause': self.clause,
            'feasible': self.feasible,
            'M': self.M,
            'M_certified': self.M_certified,
            'I': self.I,
            'pointed_I': self.pointed_I,
            'pointed_offset': POINTED_CONNECTIVITY_OFFSET,
            'connectivity': {'slope': self.M, 'intercept': -2 * self.ctx.genus - 2 - self.offset},
            'reasons': list(self.reasons),
            'hypotheses_hold': self.hypotheses_hold,
            'hypothesis_failures': list(self.hypothesis_failures),
        }


def all_maps_hypotheses(ctx: CurveContext) -> Tuple[str, ...]:
    """
    Failed conditions among: genus 0, every n_i > 0, the first v points in
    general position, and d > sum(n) - n_j for every j <= v.
    """
    failures = []
    if ctx.genus != 0:
        failures.append(f"genus {ctx.genus} is not 0")
    if not ctx.general_position:
        failures.append("points are not in general position")
    for i, n in enumerate(ctx.multiplicities, 1):
        if n <= 0:
            failures.append(f"n_{i} = {n} is not positive")
    for j in range(1, ctx.ambient_dim + 1):
        if not ctx.degree > ctx.total_n - ctx.n_j(j):
            failures.append(f"d > sum(n) - n_{j} fails ({ctx.degree} <= {ctx.total_n - ctx.n_j(j)})")
    return tuple(failures)


def stability_range(ctx: CurveContext) -> StabilityRange:
    """
    Basic clause: M = d - sum n, I = M - 2g.
    General position: M = d - sum n + max_j n_j and I = d - sum n - 2g + min_j n_j
    over j <= v, provided d > sum n - n_j for every such j. M_certified is the
    min_j version the unobstructedness argument actually delivers.
    Infeasible ranges come back flagged, never raised, and so do classes
    outside all_maps_hypotheses.
    """
    base = ctx.degree - ctx.total_n
    reasons = []
    if ctx.general_position:
        ns = [ctx.n_j(j) for j in range(1, ctx.ambient_dim + 1)]
        for j, n_j in enumerate(ns, 1):
            if not ctx.degree > ctx.total_n - n_j:
                reasons.append(f"d > sum(n) - n_{j} fails ({ctx.degree} <= {ctx.total_n - n_j})")
        M = base + max(ns)
        certified = base + min(ns)
        I = base - 2 * ctx.genus + min(ns)
        clause = GENERAL_POSITION
    else:
        M = certified = base
        I = base - 2 * ctx.genus
        clause = PLAIN
    if M <= 0:
        reasons.append(f"M = {M} is not positive")
    result = StabilityRange(ctx, clause, M, I, certified, not reasons, tuple(reasons),
                            all_maps_hypotheses(ctx))
    logger.debug(f"Stability range for {ctx.to_json()}: M={M}, I={I}, feasible={result.feasible}")
    return result


# ---------------------------------------------------------------------------
# The subposet P and its certificate
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _chain_counts(c: Chain) -> Tuple[int, Tuple[int, ...]]:
    poset = c.poset
    lines = [0] * poset.r
    m0 = 0
    for q, m in c.word:
        if q == poset.zero:
            m0 += m
        else:
            lines[q - 1] += m
    return m0, tuple(lines)


def _pair_counts(lower: Chain, upper: Chain) -> Tuple[int, Tuple[int, ...]]:
    m0_hi, hi = _chain_counts(upper)
    m0_lo, lo = _chain_counts(lower)
    return m0_hi - m0_lo, tuple(a - b for a, b in zip(hi, lo))


def _add_counts(a, b):
    return a[0] + b[0], tuple(x + y for x, y in zip(a[1], b[1]))


@dataclass
class ClauseResult:
    clause: str
    passed: bool
    checked: int
    offending: Optional[str] = None
    detail: str = ""
    skipped: Optional[str] = None

    def to_json(self):
        return {
            'clause': self.clause,
            'passed': self.passed,
            'checked': self.checked,
            'offending': self.offending,
            'detail': self.detail,
            'skipped': self.skipped,
        }


@dataclass
class Certificate:
    flavor: str
    I: int
    threshold: int
    bounds: TypeBounds
    universe_size: int
    members: int
    clauses: Dict[str, ClauseResult] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.clauses.values())

    @property
    def skipped(self) -> Dict[str, str]:
        return {k: c.skipped for k, c in sorted(self.clauses.items()) if c.skipped}

    def raise_for_failure(self):
        for result in self.clauses.values():
            if not result.passed:
                raise CertificateError(result.clause, result.offending, result.detail)

    def to_json(self):
        return {
            'flavor': self.flavor,
            'I': self.I,
            'threshold': self.threshold,
            'bounds': self.bounds.to_json(),
            'universe_size': self.universe_size,
            'members': self.members,
            'passed': self.passed,
            'skipped': self.skipped,
            'clauses': [self.clauses[k].to_json() for k in sorted(self.clauses)],
        }


def _set_partitions(items: List[int]) -> Iterator[List[List[int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in _set_partitions(rest):
        yield [[first]] + partition
        for k in range(len(partition)):
            yield partition[:k] + [[first] + partition[k]] + partition[k + 1:]


class PosetP:
    """
    Membership: m_0(w<x) + m_l(w<x) <= I (plain), or
    m_0(w<x) + sum_{i != j} m_{l_i}(w<x) <= I for every j <= v (general position),
    or T is a minimal relative type. The pointed flavor works on Q_{r+1} with
    the basepoint on l_{r+1} and threshold I - 1.
    """

    def __init__(self, ctx: CurveContext, I: int, flavor: str, bounds: TypeBounds):
        if flavor not in P_FLAVORS:
            raise InputDomainError(f"unknown P flavor {flavor!r}")
        self.ctx = ctx
        self.I = I
        self.flavor = flavor
        self.bounds = bounds
        self.general_position = _uses_general_position(ctx, flavor)
        multiplicities = ctx.multiplicities + ((1,) if flavor == POINTED else ())
        self.count_ctx = CurveContext(ctx.genus, ctx.degree, multiplicities, ctx.ambient_dim,
                                      ctx.pointed, self.general_position)
        self.threshold = I - POINTED_CONNECTIVITY_OFFSET if flavor == POINTED else I
        self.poset: BlowupPoset = build_blowup_poset(self.count_ctx.r, ctx.ambient_dim)
        self.lower_type: List[Chain] = [
            word_to_chain(self.poset, f"1*l{i}")
            for i, n in enumerate(ctx.multiplicities, 1) for _ in range(n)
        ]
        self.trivial = saturate(DepthFunction.trivial(self.poset))
        self.basepoint_lower: Optional[Chain] = (
            word_to_chain(self.poset, f"1*l{self.poset.r}") if flavor == POINTED else None
        )
        self._universe: Optional[List[CombinatorialType]] = None
        self._minimal: Optional[set] = None

    # -- restriction R for the pointed flavor --------------------------------

    def _basepoint_line_count(self, c: Chain) -> int:
        return _chain_counts(c)[1][self.poset.r - 1]

    def entry_allowed(self, pair) -> bool:
        if self.flavor != POINTED:
            return True
        return self._basepoint_line_count(pair[1]) == 0

    def basepoint_allowed(self, pair) -> bool:
        return self._basepoint_line_count(pair[1]) <= 1

    # -- membership -----------------------------------------------------------

    def type_counts(self, T: CombinatorialType) -> Tuple[int, Tuple[int, ...]]:
        total = (0, (0,) * self.poset.r)
        for a, b in T.all_entries():
            total = _add_counts(total, _pair_counts(saturate(a), saturate(b)))
        return total

    def functional(self, counts) -> int:
        m0, lines = counts
        if not self.general_position:
            return m0 + sum(lines)
        v = self.ctx.ambient_dim
        return max(
            m0 + sum(lines) - (lines[j - 1] if j <= len(lines) else 0)
            for j in range(1, v + 1)
        )

    def empty_type(self) -> CombinatorialType:
        base = (self.basepoint_lower, self.basepoint_lower) if self.flavor == POINTED else None
        return CombinatorialType(self.poset, (), base, relative=True)

    @property
    def minimal(self) -> set:
        if self._minimal is None:
            candidates = [
                T for T in successor_types(self.empty_type(), self.lower_type)
                if all(self.entry_allowed(e) for e in T.entries)
                and (not T.pointed or self.basepoint_allowed(T.basepoint_entry))
            ]
            self._minimal = set(minimal_types(candidates))
        return self._minimal

    def __contains__(self, T: CombinatorialType) -> bool:
        return self.functional(self.type_counts(T)) <= self.threshold or T in self.minimal

    # -- universe ---------------------------------------------------------------

    @property
    def universe(self) -> List[CombinatorialType]:
        if self._universe is None:
            found = enumerate_saturated_types(
                self.poset, self.bounds, POINTED if self.flavor == POINTED else RELATIVE,
                lower_type=self.lower_type, basepoint_lower=self.basepoint_lower,
                entry_filter=self.entry_allowed, basepoint_filter=self.basepoint_allowed,
            )
            empty = self.empty_type()
            self._universe = [T for T in found if T != empty]
            logger.info(f"P universe for {self.flavor} d={self.ctx.degree}: {len(self._universe)} types")
        return self._universe

    # -- certificate --------------------------------------------------------------

    def certificate(self) -> Certificate:
        universe = self.universe
        members = [T for T in universe if T in self]
        cert = Certificate(self.flavor, self.I, self.threshold, self.bounds, len(universe), len(members))
        cert.clauses['a'] = self._check_downward_closed(universe, members)
        cert.clauses['b'] = self._check_contains_low_kappa(universe)
        cert.clauses['c'] = self._check_successors_unobstructed(members)
        logger.info(
            f"Certificate {self.flavor} d={self.ctx.degree} I={self.I}: "
            f"{'passed' if cert.passed else 'FAILED'} ({len(members)}/{len(universe)} members)"
        )
        return cert

    def _merge(self, T: CombinatorialType, groups: List[List[int]],
               into_base: Sequence[bool]) -> Optional[CombinatorialType]:
        """Saturated type obtained by colliding each group of points (None when w would collide)"""
        entries = list(T.entries)
        merged = []
        base = T.basepoint_entry
        for group, to_base in zip(groups, into_base):
            lowers = [entries[k][0] for k in group if not entries[k][0].is_trivial]
            if to_base:
                if lowers:
                    return None
                upper = base[1]
                for k in group:
                    upper = upper + entries[k][1]
                base = (base[0], saturate(upper))
                continue
            if len({q for a in lowers for q, _ in a.word}) > 1:
                # points of w on distinct lines stay apart
                return None
            lower = upper = self.trivial
            for k in group:
                lower = lower + entries[k][0]
                upper = upper + entries[k][1]
            merged.append((saturate(lower), saturate(upper)))
        return CombinatorialType(self.poset, tuple(merged), base, relative=True)

    def _check_downward_closed(self, universe, members) -> ClauseResult:
        checked = 0
        for c in enumerate_chains(self.poset, self.bounds.max_depth):
            for s in covers_above(c, self.bounds.max_depth + 1):
                checked += 1
                if self.functional(_chain_counts(c)) > self.functional(_chain_counts(s)):
                    return ClauseResult('a', False, checked, f"{c} < {s}",
                                        "membership functional decreases along a cover")
        for T in members:
            for partition in _set_partitions(list(range(T.size))):
                flag_sets = _base_choices(len(partition)) if T.pointed else [(False,) * len(partition)]
                for into_base in flag_sets:
                    if len(partition) == T.size and not any(into_base):
                        continue
                    checked += 1
                    merged = self._merge(T, partition, into_base)
                    if merged is not None and merged not in self:
                        return ClauseResult('a', False, checked, str(T),
                                            f"colliding {partition} gives {merged} outside P")
        if len(universe) > EXACT_ORDER_MAX_TYPES:
            skipped = (f"exact <=+,sat edges not computed: {len(universe)} types "
                       f"exceed {EXACT_ORDER_MAX_TYPES}")
            logger.warning(f"Clause a for {self.flavor} d={self.ctx.degree}: {skipped}")
            return ClauseResult('a', True, checked, skipped=skipped)
        order = SatOrder(universe)
        for i, S in enumerate(universe):
            for j in order.edges[i]:
                checked += 1
                if universe[j] in self and S not in self:
                    return ClauseResult('a', False, checked, str(S),
                                        f"below {universe[j]} but outside P")
        return ClauseResult('a', True, checked)

    def _check_contains_low_kappa(self, universe) -> ClauseResult:
        v = self.ctx.ambient_dim
        checked = 0
        for T in universe:
            checked += 1
            kappa = kappa_of(T, v)
            if kappa != kappa_of_representative(T, v):
                return ClauseResult('b', False, checked, str(T),
                                    "kappa of the type disagrees with kappa of a representative")
            if kappa <= self.threshold and T not in self:
                return ClauseResult('b', False, checked, str(T), f"kappa = {kappa} <= {self.threshold}")
        for T in self.minimal:
            checked += 1
            if T not in self:
                return ClauseResult('b', False, checked, str(T), "minimal type outside P")
        return ClauseResult('b', True, checked)

    def _successor_deltas(self, T: CombinatorialType) -> Iterator[Tuple[int, Tuple[int, ...]]]:
        for a, b in T.entries:
            for s in covers_above(b, b.total_depth + 1):
                if self.entry_allowed((a, s)):
                    yield _pair_counts(b, s)
        for s in covers_above(self.trivial, 1):
            if self.entry_allowed((self.trivial, s)):
                yield _pair_counts(self.trivial, s)
        remaining = Counter(self.lower_type) - Counter(a for a, _ in T.entries if not a.is_trivial)
        for a in remaining:
            for s in covers_above(a, a.total_depth + 1):
                if self.entry_allowed((a, s)):
                    yield _pair_counts(a, s)
        if T.pointed:
            b = saturate(T.basepoint_entry[1])
            for s in covers_above(b, b.total_depth + 1):
                if self.basepoint_allowed((T.basepoint_entry[0], s)):
                    yield _pair_counts(b, s)

    def _check_successors_unobstructed(self, members) -> ClauseResult:
        ctx = self.count_ctx
        checked = 0
        for T in members:
            m0_rel, lines_rel = self.type_counts(T)
            for delta in self._successor_deltas(T):
                checked += 1
                m0 = m0_rel + delta[0]
                lines = tuple(ctx.multiplicities[i] + lines_rel[i] + delta[1][i] for i in range(ctx.r))
                if self.general_position:
                    ok = gp_unobstructed(ctx, m0, lines).ok
                else:
                    ok = rr_unobstructed(ctx, m0, sum(lines))
                if not ok:
                    return ClauseResult('c', False, checked, str(T),
                                        f"successor with m_0={m0}, m_l={list(lines)} is obstructed")
        return ClauseResult('c', True, checked)


def _base_choices(blocks: int) -> List[Tuple[bool, ...]]:
    choices = [()]
    for _ in range(blocks):
        choices = [c + (flag,) for c in choices for flag in (False, True)]
    return choices


def _uses_general_position(ctx: CurveContext, flavor: str) -> bool:
    return flavor == GENERAL_POSITION or (flavor == POINTED and ctx.general_position)


def default_I(ctx: CurveContext, flavor: str) -> int:
    """I(d, n) from the clause matching the flavor"""
    general_position = _uses_general_position(ctx, flavor)
    ctx = CurveContext(ctx.genus, ctx.degree, ctx.multiplicities, ctx.ambient_dim, ctx.pointed,
                       general_position)
    return stability_range(ctx).I


def build_P(ctx: CurveContext, I: Optional[int] = None, flavor: Optional[str] = None,
            bounds: Optional[TypeBounds] = None) -> PosetP:
    """The subposet P with its membership test; call .certificate() to verify it"""
    if flavor is None:
        flavor = POINTED if ctx.pointed else (GENERAL_POSITION if ctx.general_position else PLAIN)
    if I is None:
        I = default_I(ctx, flavor)
    if bounds is None:
        bounds = TypeBounds(**get_config().universe_bounds())
    return PosetP(ctx, I, flavor, bounds)
