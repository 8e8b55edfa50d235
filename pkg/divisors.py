"""
Labeled configurations on an abstract curve

Points are opaque labels; each carries a depth function. Relative pairs
w <= x compare two configurations pointwise. The extended functions
(multiplicity, rank, gamma, supp) are sums over points of per-chain values.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, Mapping, Optional, Sequence, Tuple, Union

from chains import Chain, DepthFunction, interval_poset, saturate, word_to_chain
from exceptions import InputDomainError
from lattice import BlowupPoset, MeetSemilattice, maximal_chain_lengths

logger = logging.getLogger(__name__)

Weights = Union[Sequence[int], Mapping[str, int]]


@dataclass(frozen=True)
class LabeledConfiguration:
    """Finitely supported map from point labels to depth functions"""
    poset: MeetSemilattice
    points: Tuple[Tuple[str, DepthFunction], ...]
    basepoint: Optional[str] = None
    basepoint_depth: Optional[DepthFunction] = None

    def __post_init__(self):
        kept = []
        seen = set()
        for label, g in sorted(self.points, key=lambda item: item[0]):
            if label in seen:
                raise InputDomainError(f"duplicate point label {label!r}")
            seen.add(label)
            if g.poset is not self.poset:
                raise InputDomainError(f"point {label!r} lives on another poset")
            if label == self.basepoint:
                raise InputDomainError("the basepoint is stored in its own slot")
            if not g.is_trivial:
                kept.append((label, g))
        object.__setattr__(self, 'points', tuple(kept))
        if self.basepoint is not None and self.basepoint_depth is None:
            object.__setattr__(self, 'basepoint_depth', DepthFunction.trivial(self.poset))
        if self.basepoint is None and self.basepoint_depth is not None:
            raise InputDomainError("a basepoint depth needs a basepoint label")

    @classmethod
    def from_words(cls, poset: MeetSemilattice, words: Mapping[str, str],
                   basepoint: Optional[str] = None, basepoint_word: Optional[str] = None):
        points = tuple((label, word_to_chain(poset, word)) for label, word in words.items())
        base = word_to_chain(poset, basepoint_word) if basepoint is not None and basepoint_word else None
        return cls(poset, points, basepoint, base)

    @property
    def pointed(self) -> bool:
        return self.basepoint is not None

    @property
    def support(self) -> int:
        return len(self.points)

    def labels(self):
        return [label for label, _ in self.points]

    def get(self, label: str) -> DepthFunction:
        if label == self.basepoint:
            return self.basepoint_depth
        for key, g in self.points:
            if key == label:
                return g
        return DepthFunction.trivial(self.poset)

    def entries(self) -> Iterator[Tuple[str, DepthFunction]]:
        """All stored depth functions, basepoint first when present"""
        if self.pointed:
            yield self.basepoint, self.basepoint_depth
        yield from self.points

    def to_json(self) -> Dict[str, str]:
        return {label: str(saturate(g)) for label, g in self.entries()}


@dataclass(frozen=True)
class RelativePair:
    """w <= x pointwise, over the same basepoint"""
    lower: LabeledConfiguration
    upper: LabeledConfiguration
    labels: Tuple[str, ...] = field(init=False)

    def __post_init__(self):
        if self.lower.poset is not self.upper.poset:
            raise InputDomainError("relative pair mixes posets")
        if self.lower.basepoint != self.upper.basepoint:
            raise InputDomainError("relative pair must share its basepoint")
        lower_labels = set(self.lower.labels())
        upper_labels = set(self.upper.labels())
        if not lower_labels <= upper_labels:
            missing = sorted(lower_labels - upper_labels)
            raise InputDomainError(f"points {missing} of the lower configuration are missing above")
        for label in sorted(upper_labels) + ([self.upper.basepoint] if self.upper.pointed else []):
            if not self.lower.get(label) <= self.upper.get(label):
                raise InputDomainError(f"lower is not below upper at point {label!r}")
        object.__setattr__(self, 'labels', tuple(sorted(upper_labels)))

    @classmethod
    def from_words(cls, poset: MeetSemilattice, lower: Mapping[str, str], upper: Mapping[str, str],
                   basepoint: Optional[str] = None, lower_basepoint: Optional[str] = None,
                   upper_basepoint: Optional[str] = None):
        return cls(
            LabeledConfiguration.from_words(poset, lower, basepoint, lower_basepoint),
            LabeledConfiguration.from_words(poset, upper, basepoint, upper_basepoint),
        )

    @property
    def poset(self) -> MeetSemilattice:
        return self.upper.poset


Configuration = Union[LabeledConfiguration, RelativePair]


def saturate_config(x: LabeledConfiguration) -> LabeledConfiguration:
    """Pointwise saturation, basepoint included"""
    base = saturate(x.basepoint_depth) if x.pointed else None
    return LabeledConfiguration(
        x.poset, tuple((label, saturate(g)) for label, g in x.points), x.basepoint, base
    )


def _weights_vector(poset: MeetSemilattice, h: Weights) -> Tuple[int, ...]:
    if isinstance(h, Mapping):
        vector = [0] * poset.size
        for key, value in h.items():
            vector[poset.index(key) if isinstance(key, str) else int(key)] = value
    else:
        vector = list(h)
    if len(vector) != poset.size:
        raise InputDomainError("weights must cover every element")
    if vector[poset.top] != 0:
        raise InputDomainError("weights must vanish on the top element")
    return tuple(vector)


def chain_value(h: Sequence, g: DepthFunction):
    """Sum of h over the letters of saturate(g), counted with multiplicity"""
    return sum(m * h[q] for q, m in saturate(g).word)


def _absolute(h: Sequence, x: LabeledConfiguration):
    return sum(chain_value(h, g) for _, g in x.entries())


def _relative(h: Sequence, pair: RelativePair):
    return _absolute(h, pair.upper) - _absolute(h, pair.lower)


def extend_function(h: Weights, x: Configuration):
    """Extension of h to configurations (upper minus lower on relative pairs)"""
    vector = _weights_vector(x.poset, h)
    if isinstance(x, RelativePair):
        return _relative(vector, x)
    return _absolute(vector, x)


def multiplicity(x: Configuration, q: Union[int, str]):
    """Total multiplicity of the letter q (m_q)"""
    poset = x.poset
    q = poset.index(q) if isinstance(q, str) else q
    if q == poset.top:
        raise InputDomainError("multiplicity of the top element is undefined")
    indicator = [0] * poset.size
    indicator[q] = 1
    return extend_function(indicator, x)


def line_multiplicity(x: Configuration) -> int:
    """m_l = sum of m_{l_i} over all lines of a blowup poset"""
    poset = _require_blowup(x.poset)
    return sum(multiplicity(x, i) for i in poset.lines)


def _require_blowup(poset: MeetSemilattice) -> BlowupPoset:
    if not isinstance(poset, BlowupPoset):
        raise InputDomainError("operation requires a blowup poset Q_r")
    return poset


def gamma_weights_for(poset: MeetSemilattice, v: Optional[int] = None) -> Tuple[int, ...]:
    if isinstance(poset, BlowupPoset) and v is not None:
        if v < 3:
            raise InputDomainError(f"ambient dimension v must be at least 3, got {v}")
        return tuple([2 * v] + [2 * (v - 1)] * poset.r + [0])
    if poset.gamma_weights is None:
        raise InputDomainError(f"{poset!r} carries no gamma weights")
    return poset.gamma_weights


def longest_chain_rank(g: DepthFunction) -> int:
    """Longest chain from the trivial chain up to saturate(g) inside Ch(Q)"""
    c = saturate(g)
    bottom = saturate(DepthFunction.trivial(g.poset))
    interval, members = interval_poset(bottom, c)
    return maximal_chain_lengths(interval, members.index(bottom), members.index(c))


def chain_rank(g: DepthFunction) -> int:
    """Rank in Ch(Q); extension of the rank of Q when Q is graded"""
    if g.poset.is_graded:
        return chain_value(g.poset.rank_weights, g)
    return longest_chain_rank(g)


def _rank_absolute(x: LabeledConfiguration) -> int:
    return sum(chain_rank(g) for _, g in x.entries())


def rank_of(x: Configuration) -> int:
    if isinstance(x, RelativePair):
        return _rank_absolute(x.upper) - _rank_absolute(x.lower)
    return _rank_absolute(x)


def gamma_of(x: Configuration, v: Optional[int] = None) -> int:
    return extend_function(gamma_weights_for(x.poset, v), x)


def supp_of(x: Configuration) -> int:
    """Non-basepoint points that carry (absolute) or gain (relative) depth"""
    if isinstance(x, RelativePair):
        return sum(1 for label in x.labels if x.lower.get(label) != x.upper.get(label))
    return x.support


def config_dim_real(x: Configuration) -> int:
    return 2 * supp_of(x)


def e_functional(g: DepthFunction, weight: Fraction) -> Fraction:
    """E = m_0 + J * m_l of one point of a blowup poset"""
    poset = _require_blowup(g.poset)
    c = saturate(g)
    m0 = sum(m for q, m in c.word if q == poset.zero)
    ml = sum(m for q, m in c.word if q != poset.zero)
    return m0 + Fraction(weight) * ml


def subadditivity_holds(g1: Chain, g2: Chain, weight: Fraction) -> bool:
    """E(sat(g1 + g2)) <= E(g1) + E(g2)"""
    return e_functional(g1 + g2, weight) <= e_functional(g1, weight) + e_functional(g2, weight)
