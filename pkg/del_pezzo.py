"""
The degree 5 del Pezzo surface as the blowup of P^2 in four points

Classes are written alpha = d*H - sum n_i*E_i and stored as (d; n_1..n_4).
The Weyl group (S_5) is generated by the three adjacent point swaps and the
Cremona transformation based at points 1, 2, 3.
"""

import logging
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from exceptions import CensusError, InputDomainError
from stability import CurveContext, stability_range

logger = logging.getLogger(__name__)

GENERATORS = ('s1', 's2', 's3', 'c123')


@dataclass(frozen=True, order=True)
class DPClass:
    d: int
    n: Tuple[int, int, int, int]

    def __post_init__(self):
        object.__setattr__(self, 'n', tuple(int(x) for x in self.n))
        if len(self.n) != 4:
            raise InputDomainError(f"a degree 5 del Pezzo class has 4 multiplicities, got {len(self.n)}")

    @classmethod
    def parse(cls, values: Sequence[int]) -> "DPClass":
        values = [int(x) for x in values]
        if len(values) != 5:
            raise InputDomainError(f"expected (d, n1, n2, n3, n4), got {len(values)} numbers")
        return cls(values[0], tuple(values[1:]))

    def vector(self) -> np.ndarray:
        return np.array((self.d,) + self.n, dtype=np.int64)

    @classmethod
    def from_vector(cls, vector) -> "DPClass":
        values = [int(x) for x in vector]
        return cls(values[0], tuple(values[1:]))

    def to_tuple(self) -> Tuple[int, ...]:
        return (self.d,) + self.n

    def __str__(self):
        return "(" + ",".join(str(x) for x in self.to_tuple()) + ")"


ANTICANONICAL = DPClass(3, (1, 1, 1, 1))


def dp_pairing(a: DPClass, b: DPClass) -> int:
    """Intersection form d*d' - sum n_i*n_i'"""
    return a.d * b.d - sum(x * y for x, y in zip(a.n, b.n))


def _unit(i: int, value: int) -> Tuple[int, int, int, int]:
    n = [0, 0, 0, 0]
    n[i - 1] = value
    return tuple(n)


@lru_cache(maxsize=None)
def dp_minus_one_curves() -> Tuple[DPClass, ...]:
    """E_1..E_4 followed by the six lines H - E_i - E_j"""
    exceptional = [DPClass(0, _unit(i, -1)) for i in range(1, 5)]
    lines = [
        DPClass(1, tuple(1 if k in (i, j) else 0 for k in range(1, 5)))
        for i, j in combinations(range(1, 5), 2)
    ]
    return tuple(exceptional + lines)


def dp_is_ample(a: DPClass) -> bool:
    """Positive against all ten (-1)-curves"""
    return all(dp_pairing(a, e) > 0 for e in dp_minus_one_curves())


def disjoint_curve_pairs() -> List[Tuple[DPClass, DPClass]]:
    curves = dp_minus_one_curves()
    return [(e, f) for e, f in combinations(curves, 2) if dp_pairing(e, f) == 0]


def cremona(a: DPClass, triple: Sequence[int] = (1, 2, 3)) -> DPClass:
    """Quadratic transformation based at the three given points"""
    triple = tuple(triple)
    if len(triple) != 3 or len(set(triple)) != 3 or not all(1 <= i <= 4 for i in triple):
        raise InputDomainError(f"cremona needs three distinct points out of 1..4, got {triple}")
    i, j, k = triple
    n = list(a.n)
    d = 2 * a.d - n[i - 1] - n[j - 1] - n[k - 1]
    out = list(n)
    out[i - 1] = a.d - n[j - 1] - n[k - 1]
    out[j - 1] = a.d - n[i - 1] - n[k - 1]
    out[k - 1] = a.d - n[i - 1] - n[j - 1]
    return DPClass(d, tuple(out))


def swap(a: DPClass, i: int) -> DPClass:
    """Exchange points i and i+1"""
    n = list(a.n)
    n[i - 1], n[i] = n[i], n[i - 1]
    return DPClass(a.d, tuple(n))


def apply_generator(a: DPClass, name: str) -> DPClass:
    if name == 'c123':
        return cremona(a, (1, 2, 3))
    if name in ('s1', 's2', 's3'):
        return swap(a, int(name[1]))
    raise InputDomainError(f"unknown Weyl generator {name!r}")


def apply_word(a: DPClass, word: Sequence[str]) -> DPClass:
    """Apply generators left to right"""
    for name in word:
        a = apply_generator(a, name)
    return a


def _generator_matrix(name: str) -> np.ndarray:
    columns = [apply_generator(DPClass.from_vector(e), name).vector() for e in np.eye(5, dtype=np.int64)]
    return np.stack(columns, axis=1)


@dataclass(frozen=True, eq=False)
class WeylElement:
    word: Tuple[str, ...]
    matrix: np.ndarray

    def act(self, a: DPClass) -> DPClass:
        return DPClass.from_vector(self.matrix @ a.vector())

    def key(self):
        return (len(self.word), self.word)


@lru_cache(maxsize=None)
def weyl_group() -> Tuple[WeylElement, ...]:
    """Every group element once, each with a shortest word (shortlex first)"""
    generators = {name: _generator_matrix(name) for name in GENERATORS}
    identity = np.eye(5, dtype=np.int64)
    found: Dict[bytes, WeylElement] = {identity.tobytes(): WeylElement((), identity)}
    queue = deque([found[identity.tobytes()]])
    while queue:
        element = queue.popleft()
        for name in GENERATORS:
            # word applied left to right: the new generator acts last
            matrix = generators[name] @ element.matrix
            key = matrix.tobytes()
            if key not in found:
                found[key] = WeylElement(element.word + (name,), matrix)
                queue.append(found[key])
    elements = sorted(found.values(), key=WeylElement.key)
    logger.debug(f"Weyl group generated with {len(elements)} elements")
    return tuple(elements)


def weyl_orbit(a: DPClass) -> List[Tuple[DPClass, Tuple[str, ...]]]:
    """Distinct images of a, each with the first word reaching it"""
    seen: Dict[DPClass, Tuple[str, ...]] = {}
    for element in weyl_group():
        image = element.act(a)
        if image not in seen:
            seen[image] = element.word
    return list(seen.items())


@dataclass(frozen=True)
class NormalizedClass:
    dp_class: DPClass
    witness: Tuple[str, ...]
    strict: bool

    def to_json(self):
        return {'class': str(self.dp_class), 'witness': list(self.witness), 'strict': self.strict}


def _sorting_word(a: DPClass) -> Tuple[DPClass, Tuple[str, ...]]:
    word = []
    n = list(a.n)
    for _ in range(len(n)):
        for i in range(len(n) - 1):
            if n[i] < n[i + 1]:
                n[i], n[i + 1] = n[i + 1], n[i]
                word.append(f"s{i + 1}")
    return DPClass(a.d, tuple(n)), tuple(word)


def _no_equal_disjoint_degrees(a: DPClass) -> bool:
    return all(dp_pairing(a, e) != dp_pairing(a, f) for e, f in disjoint_curve_pairs())


def dp_normalize(a: DPClass) -> NormalizedClass:
    """
    Sort multiplicities descending, then apply the Cremona transformation on
    the top three points. The result satisfies n_i + n_j + n_4 <= d for distinct
    i, j in {1, 2, 3}, strictly when no two disjoint (-1)-curves meet a equally.
    """
    if not dp_is_ample(a):
        raise InputDomainError(f"{a} is not ample")
    ordered, word = _sorting_word(a)
    result = cremona(ordered, (1, 2, 3))
    witness = word + ('c123',)
    n = result.n
    sums = [n[i] + n[j] + n[3] for i, j in ((0, 1), (0, 2), (1, 2))]
    if any(s > result.d for s in sums):
        raise CensusError(f"normalization of {a} gave {result} violating n_i + n_j + n_4 <= d")
    strict = all(s < result.d for s in sums)
    if _no_equal_disjoint_degrees(a) and not strict:
        raise CensusError(f"normalization of {a} gave {result} without the strict inequalities")
    return NormalizedClass(result, witness, strict)


@dataclass(frozen=True)
class NAlphaResult:
    value: Optional[int]
    argmax_class: Optional[DPClass]
    argmax_word: Optional[Tuple[str, ...]]
    orbit_size: int
    hypothesis: Optional[str] = None

    @property
    def feasible(self) -> bool:
        return self.value is not None

    @property
    def hypotheses_hold(self) -> bool:
        return self.hypothesis is not None

    def to_json(self):
        return {
            'feasible': self.feasible,
            'N': self.value,
            'argmax_class': str(self.argmax_class) if self.argmax_class else None,
            'argmax_word': list(self.argmax_word) if self.argmax_word is not None else None,
            'orbit_size': self.orbit_size,
            'hypotheses_hold': self.hypotheses_hold,
            'hypothesis': self.hypothesis,
        }


DISTINCT = 'pairwise-distinct'
MIN_DISTINCT = 'min-distinct'


def multiplicity_hypothesis(a: DPClass) -> Optional[str]:
    """Pairwise distinct n_i, else a unique minimum n_i, else None (N_alpha gives no range)"""
    if len(set(a.n)) == len(a.n):
        return DISTINCT
    if a.n.count(min(a.n)) == 1:
        return MIN_DISTINCT
    return None


def general_position_M(a: DPClass) -> Optional[int]:
    """M of the general position clause for a as a class on Bl_4 P^2, None if infeasible"""
    result = stability_range(CurveContext(0, a.d, a.n, ambient_dim=3, general_position=True))
    return result.M if result.feasible else None


def n_alpha(a: DPClass) -> NAlphaResult:
    """Largest feasible general-position M over the Weyl orbit; ties go to the shortlex-first word"""
    if not dp_is_ample(a):
        raise InputDomainError(f"{a} is not ample")
    orbit = weyl_orbit(a)
    best: Optional[Tuple[int, DPClass, Tuple[str, ...]]] = None
    for image, word in orbit:
        M = general_position_M(image)
        if M is not None and (best is None or M > best[0]):
            best = (M, image, word)
    hypothesis = multiplicity_hypothesis(a)
    if best is None:
        return NAlphaResult(None, None, None, len(orbit), hypothesis)
    return NAlphaResult(best[0], best[1], best[2], len(orbit), hypothesis)


def sample_ample_classes(count: int, seed: int, max_degree: int = 30) -> List[DPClass]:
    """Seeded rejection sample of ample classes with 1 <= d <= max_degree"""
    if count < 0 or max_degree < 3:
        raise InputDomainError("need a non-negative count and max_degree >= 3")
    rng = np.random.default_rng(seed)
    found: List[DPClass] = []
    while len(found) < count:
        d = int(rng.integers(3, max_degree + 1))
        n = tuple(int(x) for x in rng.integers(1, d, size=4))
        candidate = DPClass(d, n)
        if dp_is_ample(candidate):
            found.append(candidate)
    return found


def sample_classes(count: int, seed: int, bound: int = 20) -> List[DPClass]:
    """Seeded arbitrary (not necessarily ample) classes for involution and pairing checks"""
    rng = np.random.default_rng(seed)
    return [DPClass.from_vector(rng.integers(-bound, bound + 1, size=5)) for _ in range(count)]
