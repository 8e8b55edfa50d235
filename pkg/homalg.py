"""
Integral homology of order complexes

Simplicial chain complexes are kept sparse (one dict per boundary column).
Ranks and invariant factors come from a Smith normal form that first strips
unit pivots and then finishes densely on a numpy object array, so every entry
stays an exact Python int. Cohomology is read off homology by universal
coefficients.

The stalk of mu at an interval w < x of Ch(Q) is the cohomology of the pair
(N((w, x]), N((w, x))). Stalks are graded by mu-degree = pair degree + 1,
the unit interval (c, c) being Z in mu-degree 0; with that grading the Euler
characteristic of a stalk is the Möbius value mu(w, x).
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from chains import Chain, interval_poset, is_essential_pair
from config import get_config
from exceptions import ArithmeticOverflowError, CensusError, InputDomainError, TorsionDetectedError
from lattice import FinitePoset, mobius, product_poset

logger = logging.getLogger(__name__)

MU_SHIFT = 1
MU_CONVENTION = "mu-degree = pair cohomology degree + 1; the unit interval is Z in degree 0"

Simplex = Tuple[int, ...]


class SimplicialComplex:
    """Abstract simplicial complex on labelled vertices, closed under faces"""

    def __init__(self, vertices: Sequence[str], simplices: Iterable[Simplex]):
        self.vertices: Tuple[str, ...] = tuple(vertices)
        self._vertex_index = {label: i for i, label in enumerate(self.vertices)}
        if len(self._vertex_index) != len(self.vertices):
            raise InputDomainError("vertex labels must be unique")
        seen = set()
        by_dim: Dict[int, List[Simplex]] = defaultdict(list)
        for s in simplices:
            s = tuple(sorted(s))
            if not s:
                continue
            if len(set(s)) != len(s) or not all(0 <= v < len(self.vertices) for v in s):
                raise InputDomainError(f"malformed simplex {s}")
            if s in seen:
                raise InputDomainError(f"duplicate simplex {s}")
            seen.add(s)
            by_dim[len(s) - 1].append(s)
        for s in seen:
            if len(s) > 1:
                for k in range(len(s)):
                    face = s[:k] + s[k + 1:]
                    if face not in seen:
                        raise InputDomainError(f"complex is not closed under faces: {face} of {s}")
        self.dim = max(by_dim, default=-1)
        self._cells: List[List[Simplex]] = [sorted(by_dim[n]) for n in range(self.dim + 1)]
        self._index: List[Dict[Simplex, int]] = [
            {s: i for i, s in enumerate(cells)} for cells in self._cells
        ]

    @classmethod
    def from_facets(cls, vertices: Sequence[str], facets: Iterable[Simplex]) -> "SimplicialComplex":
        faces = set()
        for facet in facets:
            facet = tuple(sorted(facet))
            for size in range(1, len(facet) + 1):
                faces.update(combinations(facet, size))
        return cls(vertices, faces)

    def simplices(self, n: int) -> List[Simplex]:
        if 0 <= n <= self.dim:
            return self._cells[n]
        return []

    def index_of(self, s: Simplex) -> int:
        return self._index[len(s) - 1][s]

    def __contains__(self, s: Simplex) -> bool:
        return 0 < len(s) <= self.dim + 1 and s in self._index[len(s) - 1]

    @property
    def f_vector(self) -> List[int]:
        return [len(cells) for cells in self._cells]

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * count for n, count in enumerate(self.f_vector))

    def translate(self, other: "SimplicialComplex", s: Simplex) -> Simplex:
        """The simplex s of `other`, re-indexed on this complex's vertices"""
        try:
            return tuple(sorted(self._vertex_index[other.vertices[v]] for v in s))
        except KeyError:
            raise InputDomainError(f"vertex {other.vertices[s[0]]!r} is not in the complex") from None

    def full_subcomplex(self, keep: Callable[[str], bool]) -> "SimplicialComplex":
        """Simplices whose vertices all pass `keep`, on the same vertex set"""
        return SimplicialComplex(self.vertices, [
            s for cells in self._cells for s in cells
            if all(keep(self.vertices[v]) for v in s)
        ])

    def __repr__(self):
        return f"SimplicialComplex(vertices={len(self.vertices)}, f={self.f_vector})"


def order_complex(poset: Union[FinitePoset, Tuple[Sequence[str], Callable[[int, int], bool]]],
                  elements: Optional[Sequence[int]] = None) -> SimplicialComplex:
    """
    Nerve of a finite poset (or of the sub-poset on `elements`): one simplex
    per nonempty chain. A (labels, leq) pair is validated as a partial order.
    """
    if not isinstance(poset, FinitePoset):
        labels, leq = poset
        poset = FinitePoset.from_relation(labels, leq)
    chosen = list(poset.elements) if elements is None else list(elements)
    order = {q: k for k, q in enumerate(poset.linear_extension)}
    chosen.sort(key=order.__getitem__)
    vertex_of = {q: k for k, q in enumerate(chosen)}
    simplices = []

    def extend(chain: List[int], start: int):
        simplices.append(tuple(vertex_of[q] for q in chain))
        for k in range(start, len(chosen)):
            if poset.lt(chain[-1], chosen[k]):
                chain.append(chosen[k])
                extend(chain, k + 1)
                chain.pop()

    for k, q in enumerate(chosen):
        extend([q], k + 1)
    return SimplicialComplex([poset.label(q) for q in chosen], simplices)


# ---------------------------------------------------------------------------
# Chain complexes and Smith normal form
# ---------------------------------------------------------------------------

def relative_cells(K: SimplicialComplex, L: Optional[SimplicialComplex]) -> List[List[Simplex]]:
    if L is None:
        return [K.simplices(n) for n in range(K.dim + 1)]
    inside = {K.translate(L, s) for n in range(L.dim + 1) for s in L.simplices(n)}
    missing = [s for s in inside if s not in K]
    if missing:
        raise InputDomainError(f"{missing[0]} is not a simplex of the ambient complex")
    return [[s for s in K.simplices(n) if s not in inside] for n in range(K.dim + 1)]


def _boundary_columns(cells: List[List[Simplex]], n: int) -> List[Dict[int, int]]:
    """Sparse columns of the boundary C_n -> C_{n-1}; faces outside the cells are dropped"""
    if n <= 0 or n >= len(cells):
        return [{} for _ in (cells[n] if 0 <= n < len(cells) else [])]
    rows = {s: i for i, s in enumerate(cells[n - 1])}
    columns = []
    for s in cells[n]:
        column = {}
        for k in range(len(s)):
            i = rows.get(s[:k] + s[k + 1:])
            if i is not None:
                column[i] = (-1) ** k
        columns.append(column)
    return columns


def boundary_matrix(K: SimplicialComplex, n: int, L: Optional[SimplicialComplex] = None) -> np.ndarray:
    """Dense integer boundary matrix C_n -> C_{n-1} (rows index (n-1)-cells)"""
    cells = relative_cells(K, L)
    height = len(cells[n - 1]) if 0 < n <= len(cells) else 0
    width = len(cells[n]) if 0 <= n < len(cells) else 0
    matrix = np.zeros((height, width), dtype=object)
    if height:
        for j, column in enumerate(_boundary_columns(cells, n)):
            for i, value in column.items():
                matrix[i, j] = value
    return matrix


def boundary_squared_zero(cells: List[List[Simplex]]) -> Optional[int]:
    """First degree n with d_{n-1} d_n != 0, or None"""
    for n in range(2, len(cells)):
        upper = _boundary_columns(cells, n)
        lower = _boundary_columns(cells, n - 1)
        for column in upper:
            total: Dict[int, int] = defaultdict(int)
            for i, a in column.items():
                for k, b in lower[i].items():
                    total[k] += a * b
            if any(total.values()):
                return n
    return None


def _entry_limit(limit: Optional[int]) -> int:
    """Explicit limit, else CENSUS_SNF_ENTRY_LIMIT from the active config"""
    return get_config().SNF_ENTRY_LIMIT if limit is None else limit


def _guard(value: int, limit: int):
    if abs(value) > limit:
        raise ArithmeticOverflowError(f"Smith normal form entry {value} exceeds {limit}")


def smith_invariants(columns: Sequence[Dict[int, int]], limit: Optional[int] = None) -> List[int]:
    """Positive invariant factors of a sparse integer matrix (one per unit of rank)"""
    limit = _entry_limit(limit)
    rows: Dict[int, Dict[int, int]] = defaultdict(dict)
    for j, column in enumerate(columns):
        for i, value in column.items():
            if value:
                rows[i][j] = value
    col_rows: Dict[int, set] = defaultdict(set)
    for i, row in rows.items():
        for j in row:
            col_rows[j].add(i)

    factors: List[int] = []
    progress = True
    while progress:
        progress = False
        for i in sorted(rows):
            row = rows.get(i)
            if not row:
                continue
            pivot = next((j for j in sorted(row) if abs(row[j]) == 1), None)
            if pivot is None:
                continue
            unit = row[pivot]
            for k in sorted(col_rows[pivot] - {i}):
                scale = -rows[k][pivot] * unit
                target = rows[k]
                for j, value in row.items():
                    updated = target.get(j, 0) + scale * value
                    _guard(updated, limit)
                    if updated:
                        target[j] = updated
                        col_rows[j].add(k)
                    elif j in target:
                        del target[j]
                        col_rows[j].discard(k)
            for j in row:
                col_rows[j].discard(i)
            del rows[i]
            factors.append(1)
            progress = True

    remaining_rows = sorted(i for i, row in rows.items() if row)
    remaining_cols = sorted({j for i in remaining_rows for j in rows[i]})
    if remaining_rows:
        dense = np.zeros((len(remaining_rows), len(remaining_cols)), dtype=object)
        col_pos = {j: k for k, j in enumerate(remaining_cols)}
        for a, i in enumerate(remaining_rows):
            for j, value in rows[i].items():
                dense[a, col_pos[j]] = value
        factors.extend(_dense_smith(dense, limit))
    return sorted(factors)


def _dense_smith(A: np.ndarray, limit: int) -> List[int]:
    m, n = A.shape
    factors = []
    t = 0
    while t < min(m, n):
        nonzero = np.argwhere(A[t:, t:] != 0)
        if len(nonzero) == 0:
            break
        i, j = min(nonzero.tolist(), key=lambda ij: (abs(A[t + ij[0], t + ij[1]]), ij[0], ij[1]))
        A[[t, t + i]] = A[[t + i, t]]
        A[:, [t, t + j]] = A[:, [t + j, t]]
        while True:
            p = A[t, t]
            clean = True
            for i in range(t + 1, m):
                if A[i, t]:
                    A[i, :] -= (A[i, t] // p) * A[t, :]
                    clean = clean and A[i, t] == 0
            for j in range(t + 1, n):
                if A[t, j]:
                    A[:, j] -= (A[t, j] // p) * A[:, t]
                    clean = clean and A[t, j] == 0
            for value in A[t:, t:].flat:
                _guard(value, limit)
            if not clean:
                candidates = [(abs(A[i, t]), 0, i) for i in range(t + 1, m) if A[i, t]]
                candidates += [(abs(A[t, j]), 1, j) for j in range(t + 1, n) if A[t, j]]
                _, axis, k = min(candidates)
                if axis == 0:
                    A[[t, k]] = A[[k, t]]
                else:
                    A[:, [t, k]] = A[:, [k, t]]
                continue
            rest = A[t + 1:, t + 1:]
            bad = np.argwhere(rest % p != 0) if rest.size else []
            if len(bad):
                A[t, :] += A[t + 1 + bad[0][0], :]
                continue
            break
        factors.append(abs(A[t, t]))
        t += 1
    return factors


# ---------------------------------------------------------------------------
# Homology summaries
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HomologyGroup:
    degree: int
    betti: int
    torsion: Tuple[int, ...] = ()

    @property
    def is_zero(self) -> bool:
        return self.betti == 0 and not self.torsion

    def to_json(self):
        return {'degree': self.degree, 'betti': self.betti, 'torsion': list(self.torsion)}


@dataclass(frozen=True)
class HomologySummary:
    """Per-degree free rank and invariant factors"""
    groups: Tuple[HomologyGroup, ...]
    kind: str = 'homology'
    shift: int = 0
    convention: str = 'unreduced'
    _by_degree: Dict[int, HomologyGroup] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, '_by_degree', {g.degree: g for g in self.groups})

    def group(self, degree: int) -> HomologyGroup:
        return self._by_degree.get(degree, HomologyGroup(degree, 0))

    def betti(self, degree: int) -> int:
        return self.group(degree).betti

    @property
    def is_zero(self) -> bool:
        return all(g.is_zero for g in self.groups)

    @property
    def is_free(self) -> bool:
        return not any(g.torsion for g in self.groups)

    def nonzero_degrees(self) -> List[int]:
        return [g.degree for g in self.groups if not g.is_zero]

    def betti_vector(self) -> List[int]:
        top = max((g.degree for g in self.groups), default=-1)
        return [self.betti(n) for n in range(top + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** g.degree * g.betti for g in self.groups)

    def to_json(self):
        return {
            'kind': self.kind,
            'shift': self.shift,
            'convention': self.convention,
            'groups': [g.to_json() for g in self.groups if not g.is_zero],
        }


def _homology_of_cells(cells: List[List[Simplex]], limit: int, convention: str) -> HomologySummary:
    bad = boundary_squared_zero(cells)
    if bad is not None:
        raise CensusError(f"boundary of boundary is nonzero in degree {bad}")
    top = len(cells) - 1
    factors = [[] for _ in range(top + 2)]
    for n in range(1, top + 1):
        factors[n] = smith_invariants(_boundary_columns(cells, n), limit)
    groups = []
    for n in range(top + 1):
        rank_out = len(factors[n])
        rank_in = len(factors[n + 1])
        groups.append(HomologyGroup(
            degree=n,
            betti=len(cells[n]) - rank_out - rank_in,
            torsion=tuple(f for f in factors[n + 1] if f > 1),
        ))
    return HomologySummary(tuple(groups), convention=convention)


def homology(K: SimplicialComplex, limit: Optional[int] = None) -> HomologySummary:
    return _homology_of_cells(relative_cells(K, None), _entry_limit(limit), 'unreduced')


def relative_homology(K: SimplicialComplex, L: SimplicialComplex,
                      limit: Optional[int] = None) -> HomologySummary:
    """H_*(K, L) for a subcomplex L, matched by vertex labels"""
    return _homology_of_cells(relative_cells(K, L), _entry_limit(limit), 'relative')


def cohomology(summary: HomologySummary) -> HomologySummary:
    """Universal coefficients: H^n = Z^{b_n} + torsion of H_{n-1}"""
    groups = tuple(
        HomologyGroup(g.degree, g.betti, summary.group(g.degree - 1).torsion)
        for g in summary.groups
    )
    return HomologySummary(groups, kind='cohomology', shift=summary.shift, convention=summary.convention)


def pair_euler_consistent(K: SimplicialComplex, L: SimplicialComplex) -> bool:
    """chi(K) - chi(L) = chi(K, L), each side from its own homology"""
    return (homology(K).euler_characteristic() - homology(L).euler_characteristic()
            == relative_homology(K, L).euler_characteristic())


# ---------------------------------------------------------------------------
# Interval stalks
# ---------------------------------------------------------------------------

Endpoint = Union[Chain, Sequence[Chain]]


def _as_support(w: Endpoint, x: Endpoint) -> Tuple[Tuple[Chain, ...], Tuple[Chain, ...]]:
    ws = (w,) if isinstance(w, Chain) else tuple(w)
    xs = (x,) if isinstance(x, Chain) else tuple(x)
    if len(ws) != len(xs) or not ws:
        raise InputDomainError("interval endpoints must have the same nonempty support")
    for a, b in zip(ws, xs):
        if not a <= b:
            raise InputDomainError(f"{a} is not below {b}")
    return ws, xs


def support_interval(w: Endpoint, x: Endpoint) -> Tuple[FinitePoset, int, int]:
    """The interval [w, x] of the product of chain posets over the support"""
    ws, xs = _as_support(w, x)
    poset, members = interval_poset(ws[0], xs[0])
    lo, hi = members.index(ws[0]), members.index(xs[0])
    for a, b in zip(ws[1:], xs[1:]):
        factor, factor_members = interval_poset(a, b)
        width = factor.size
        lo = lo * width + factor_members.index(a)
        hi = hi * width + factor_members.index(b)
        poset = product_poset(poset, factor)
    return poset, lo, hi


def interval_pair(w: Endpoint, x: Endpoint) -> Tuple[SimplicialComplex, SimplicialComplex]:
    """(N((w, x]), N((w, x))) over the support"""
    poset, lo, hi = support_interval(w, x)
    half_open = [z for z in poset.elements if z != lo]
    K = order_complex(poset, half_open)
    top_label = poset.label(hi)
    L = K.full_subcomplex(lambda label: label != top_label)
    return K, L


def interval_mobius(w: Endpoint, x: Endpoint) -> int:
    poset, lo, hi = support_interval(w, x)
    return mobius(poset, lo, hi)


@lru_cache(maxsize=20_000)
def _mu_stalk(ws: Tuple[Chain, ...], xs: Tuple[Chain, ...], limit: int) -> HomologySummary:
    if ws == xs:
        return HomologySummary((HomologyGroup(0, 1),), kind='cohomology', shift=MU_SHIFT,
                               convention=MU_CONVENTION)
    K, L = interval_pair(ws, xs)
    pair = cohomology(relative_homology(K, L, limit))
    groups = tuple(HomologyGroup(g.degree + MU_SHIFT, g.betti, g.torsion) for g in pair.groups)
    return HomologySummary(groups, kind='cohomology', shift=MU_SHIFT, convention=MU_CONVENTION)


def mu_stalk(w: Endpoint, x: Endpoint, limit: Optional[int] = None) -> HomologySummary:
    """Stalk of mu at w < x; sequences of chains give the product over the support"""
    ws, xs = _as_support(w, x)
    return _mu_stalk(ws, xs, _entry_limit(limit))


def kunneth(stalks: Sequence[HomologySummary]) -> HomologySummary:
    """Tensor product of free stalks; mu-degrees add"""
    betti = kunneth_betti(stalks)
    groups = tuple(HomologyGroup(n, b) for n, b in enumerate(betti))
    return HomologySummary(groups, kind='cohomology', shift=MU_SHIFT, convention=MU_CONVENTION)


def kunneth_betti(stalks: Sequence[HomologySummary]) -> List[int]:
    total = [1]
    for stalk in stalks:
        if not stalk.is_free:
            raise TorsionDetectedError(f"stalk {stalk.to_json()} carries torsion")
        vector = stalk.betti_vector()
        combined = [0] * (len(total) + max(len(vector), 1) - 1)
        for a, x in enumerate(total):
            for b, y in enumerate(vector):
                combined[a + b] += x * y
        total = combined
    while len(total) > 1 and total[-1] == 0:
        total.pop()
    return total


@dataclass(frozen=True)
class EulerCheck:
    euler: int
    mobius: int

    @property
    def equal(self) -> bool:
        return self.euler == self.mobius

    def to_json(self):
        return {'euler': self.euler, 'mobius': self.mobius, 'equal': self.equal}


def euler_vs_mobius(w: Endpoint, x: Endpoint) -> EulerCheck:
    """Euler characteristic of the stalk against the Möbius value of the interval"""
    return EulerCheck(mu_stalk(w, x).euler_characteristic(), interval_mobius(w, x))


def support_is_essential(w: Endpoint, x: Endpoint) -> bool:
    ws, xs = _as_support(w, x)
    return all(is_essential_pair(a, b) for a, b in zip(ws, xs))
