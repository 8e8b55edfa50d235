"""
Finite posets and bounded meet-semilattices
The blowup posets Q_r are the built-in instances; intervals, Möbius values and
longest chains are shared by every other module.
"""

import logging
from functools import lru_cache
from itertools import product
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from exceptions import InputDomainError

logger = logging.getLogger(__name__)

TOP_LABEL = "V"
ZERO_LABEL = "0"


class FinitePoset:
    """A finite poset on element indices 0..n-1 given by its down-sets"""

    def __init__(self, labels: Sequence[str], below: Sequence[frozenset]):
        if len(labels) != len(below):
            raise InputDomainError("labels and order relation have different sizes")
        self.labels: Tuple[str, ...] = tuple(labels)
        self._below: Tuple[frozenset, ...] = tuple(frozenset(b) for b in below)
        self._index: Dict[str, int] = {label: i for i, label in enumerate(self.labels)}
        if len(self._index) != len(self.labels):
            raise InputDomainError("element labels must be unique")
        self._check_partial_order()
        # Linear extension: smaller down-sets first, ties by index
        self.linear_extension: Tuple[int, ...] = tuple(
            sorted(range(len(self.labels)), key=lambda i: (len(self._below[i]), i))
        )

    @classmethod
    def from_relation(cls, labels: Sequence[str], leq: Callable[[int, int], bool]) -> "FinitePoset":
        """Build a poset from an explicit order relation on indices"""
        n = len(labels)
        below = [frozenset(i for i in range(n) if i == j or leq(i, j)) for j in range(n)]
        return cls(labels, below)

    def _check_partial_order(self):
        n = len(self.labels)
        for j in range(n):
            if j not in self._below[j]:
                raise InputDomainError(f"relation is not reflexive at {self.labels[j]}")
            for i in self._below[j]:
                if not 0 <= i < n:
                    raise InputDomainError(f"relation mentions unknown element {i}")
                if i != j and j in self._below[i]:
                    raise InputDomainError(
                        f"relation fails antisymmetry: {self.labels[i]} and {self.labels[j]}"
                    )
                if not self._below[i] <= self._below[j]:
                    raise InputDomainError(
                        f"relation fails transitivity below {self.labels[j]}"
                    )

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def elements(self) -> range:
        return range(len(self.labels))

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise InputDomainError(f"unknown element label {label!r}") from None

    def label(self, i: int) -> str:
        return self.labels[i]

    def leq(self, i: int, j: int) -> bool:
        return i in self._below[j]

    def lt(self, i: int, j: int) -> bool:
        return i != j and i in self._below[j]

    def down_set(self, j: int) -> frozenset:
        return self._below[j]

    def __repr__(self):
        return f"{type(self).__name__}({', '.join(self.labels)})"


class MeetSemilattice(FinitePoset):
    """
    A finite meet-semilattice with a top element.
    The order is read off the meet table (x <= y iff meet(x, y) = x) and the
    table is validated in full at construction.
    """

    def __init__(self, labels: Sequence[str], meet_table: Sequence[Sequence[int]], top: int,
                 bottom: Optional[int] = None, gamma_weights: Optional[Sequence[int]] = None,
                 name: Optional[str] = None):
        n = len(labels)
        table = tuple(tuple(int(v) for v in row) for row in meet_table)
        if len(table) != n or any(len(row) != n for row in table):
            raise InputDomainError("meet table must be square over the elements")
        if not 0 <= top < n:
            raise InputDomainError("top index out of range")
        self.meet_table: Tuple[Tuple[int, ...], ...] = table
        self.top = top
        self.name = name or "L"
        _validate_meet_table(table, top)
        below = [frozenset(i for i in range(n) if table[i][j] == i) for j in range(n)]
        super().__init__(labels, below)

        computed_bottom = self._find_bottom()
        if bottom is not None and bottom != computed_bottom:
            raise InputDomainError(f"declared bottom {bottom} is not the least element")
        self.bottom = computed_bottom

        self.proper_elements: Tuple[int, ...] = tuple(i for i in range(n) if i != top)
        self.position: Dict[int, int] = {q: k for k, q in enumerate(self.proper_elements)}
        self.rank_weights: Tuple[int, ...] = tuple(
            maximal_chain_lengths(self, q, top) for q in range(n)
        )
        self.is_graded = all(
            self._all_maximal_chains_have_length(q, self.rank_weights[q]) for q in range(n)
        )
        if gamma_weights is not None:
            gamma_weights = tuple(int(w) for w in gamma_weights)
            if len(gamma_weights) != n or gamma_weights[top] != 0:
                raise InputDomainError("gamma weights must cover every element with gamma(top) = 0")
        self.gamma_weights: Optional[Tuple[int, ...]] = gamma_weights

    def meet(self, i: int, j: int) -> int:
        return self.meet_table[i][j]

    def _find_bottom(self) -> int:
        bottom = self.top
        for i in self.elements:
            bottom = self.meet_table[bottom][i]
        return bottom

    def _all_maximal_chains_have_length(self, lo: int, length: int) -> bool:
        # every saturated chain from lo up to top has the same number of steps
        lengths = {lo: {0}}
        for z in self.linear_extension:
            if z == lo or not self.leq(lo, z):
                continue
            steps = set()
            for y in self.down_set(z):
                if y != z and y in lengths and self._covers(y, z):
                    steps.update(s + 1 for s in lengths[y])
            lengths[z] = steps
        return lengths.get(self.top, {0}) == {length}

    def _covers(self, y: int, z: int) -> bool:
        return self.lt(y, z) and not any(
            self.lt(y, m) and self.lt(m, z) for m in self.elements
        )


class BlowupPoset(MeetSemilattice):
    """Q_r = {0, l1, ..., lr, V} with gamma weights for ambient dimension v"""

    def __init__(self, r: int, v: int):
        self.r = r
        self.v = v
        n = r + 2
        top = r + 1
        labels = [ZERO_LABEL] + [f"l{i}" for i in range(1, r + 1)] + [TOP_LABEL]
        table = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if i == j or j == top:
                    table[i][j] = i
                elif i == top:
                    table[i][j] = j
                else:
                    table[i][j] = 0
        gamma = [2 * v] + [2 * (v - 1)] * r + [0]
        super().__init__(labels, table, top, bottom=0, gamma_weights=gamma, name=f"Q_{r}")

    def line(self, i: int) -> int:
        """Element index of the line l_i (1-based)"""
        if not 1 <= i <= self.r:
            raise InputDomainError(f"line index {i} outside 1..{self.r}")
        return i

    @property
    def zero(self) -> int:
        return 0

    @property
    def lines(self) -> range:
        return range(1, self.r + 1)

    def __repr__(self):
        return f"BlowupPoset(r={self.r}, v={self.v})"


def _validate_meet_table(table, top):
    n = len(table)
    for x in range(n):
        if table[x][x] != x:
            raise InputDomainError(f"meet is not idempotent at element {x}")
        if table[x][top] != x or table[top][x] != x:
            raise InputDomainError(f"top is not a unit for meet at element {x}")
        for y in range(n):
            m = table[x][y]
            if not 0 <= m < n:
                raise InputDomainError(f"meet({x}, {y}) is out of range")
            if m != table[y][x]:
                raise InputDomainError(f"meet is not commutative at ({x}, {y})")
            for z in range(n):
                if table[m][z] != table[x][table[y][z]]:
                    raise InputDomainError(f"meet is not associative at ({x}, {y}, {z})")


@lru_cache(maxsize=None)
def build_blowup_poset(r: int, v: int) -> BlowupPoset:
    """Q_r for ambient dimension v; one shared instance per (r, v)"""
    if r < 1:
        raise InputDomainError(f"r must be at least 1, got {r}")
    if v < 3:
        raise InputDomainError(f"ambient dimension v must be at least 3, got {v}")
    poset = BlowupPoset(r, v)
    logger.debug(f"Built {poset!r}")
    return poset


@lru_cache(maxsize=None)
def build_boolean_lattice(n: int) -> MeetSemilattice:
    """Subsets of {1..n} under intersection"""
    if n < 0:
        raise InputDomainError("number of atoms must be non-negative")
    size = 1 << n

    def label(mask):
        return "{" + ",".join(str(i + 1) for i in range(n) if mask >> i & 1) + "}"

    table = [[a & b for b in range(size)] for a in range(size)]
    return MeetSemilattice([label(m) for m in range(size)], table, top=size - 1, bottom=0,
                           name=f"B_{n}")


def product_poset(left: FinitePoset, right: FinitePoset) -> FinitePoset:
    """Cartesian product with the componentwise order; index = i * |right| + j"""
    pairs = list(product(left.elements, right.elements))
    labels = [f"({left.label(i)},{right.label(j)})" for i, j in pairs]
    width = right.size
    below = [
        frozenset(a * width + b for a in left.down_set(i) for b in right.down_set(j))
        for i, j in pairs
    ]
    return FinitePoset(labels, below)


def _require_leq(poset: FinitePoset, lo: int, hi: int):
    if not poset.leq(lo, hi):
        raise InputDomainError(f"{poset.label(lo)} is not below {poset.label(hi)}")


def interval_elements(poset: FinitePoset, lo: int, hi: int,
                      open_lo: bool = False, open_hi: bool = False) -> List[int]:
    """Elements z with lo <= z <= hi, sorted by index"""
    _require_leq(poset, lo, hi)
    result = []
    for z in sorted(poset.down_set(hi)):
        if not poset.leq(lo, z):
            continue
        if open_lo and z == lo:
            continue
        if open_hi and z == hi:
            continue
        result.append(z)
    return result


def mobius(poset: FinitePoset, lo: int, hi: int) -> int:
    """Möbius function from the recursion sum_{lo <= z <= hi} mu(lo, z) = [lo = hi]"""
    _require_leq(poset, lo, hi)
    members = set(interval_elements(poset, lo, hi))
    mu: Dict[int, int] = {}
    for z in poset.linear_extension:
        if z not in members:
            continue
        if z == lo:
            mu[z] = 1
        else:
            mu[z] = -sum(mu[y] for y in poset.down_set(z) if y != z and y in mu)
    return mu[hi]


def maximal_chain_lengths(poset: FinitePoset, lo: int, hi: int) -> int:
    """Number of strict steps in the longest chain from lo up to hi"""
    _require_leq(poset, lo, hi)
    members = set(interval_elements(poset, lo, hi))
    longest: Dict[int, int] = {}
    for z in poset.linear_extension:
        if z not in members:
            continue
        steps = [longest[y] + 1 for y in poset.down_set(z) if y != z and y in longest]
        longest[z] = max(steps, default=0)
    return longest[hi]
