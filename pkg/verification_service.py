"""
Verification Service
Runs the named property suites over bounded universes and collects one
CheckResult per suite. Suites run on a thread pool; results come back in
registry order whatever the parallelism.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, permutations, product
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import psutil

from chains import (DepthFunction, chain_join, chain_to_word, crosscut_maximum, enumerate_chains,
                    essential_above, is_essential_pair, saturate, word_to_chain)
from combinatorial_types import (ABSOLUTE, POINTED, RELATIVE, CombinatorialType, SatOrder, TypeBounds,
                                 as_relative, e_weights, enumerate_saturated_types, kappa_of,
                                 kappa_of_representative, leq_plus, successor_types, type_rank)
from del_pezzo import (ANTICANONICAL, GENERATORS, DPClass, apply_generator, cremona, dp_is_ample,
                       dp_minus_one_curves, dp_normalize, dp_pairing, n_alpha, sample_ample_classes,
                       sample_classes, weyl_group)
from divisors import (LabeledConfiguration, RelativePair, chain_rank, extend_function, gamma_of,
                      gamma_weights_for, line_multiplicity, longest_chain_rank, multiplicity,
                      subadditivity_holds)
from exceptions import CensusError, InputDomainError
from homalg import (boundary_squared_zero, euler_vs_mobius, homology, interval_pair, kunneth_betti,
                    mu_stalk, pair_euler_consistent, relative_cells, support_is_essential)
from lattice import BlowupPoset, build_blowup_poset, build_boolean_lattice, interval_elements, mobius
from report_service import CheckResult
from stability import GENERAL_POSITION, PLAIN, CurveContext, build_P, stability_range

logger = logging.getLogger(__name__)

AMBIENT_DIM = 3
NALPHA_SAMPLES = 40

Suite = Callable[[type, int], CheckResult]


def _passed(name: str, checked: int) -> CheckResult:
    return CheckResult(name, True, checked)


def _failed(name: str, checked: int, **counterexample) -> CheckResult:
    return CheckResult(name, False, checked, counterexample)


def _posets(cfg):
    return [build_blowup_poset(r, AMBIENT_DIM) for r in range(1, cfg.MAX_R + 1)]


def _depth_functions(poset, max_value: int) -> List[DepthFunction]:
    """Every order-compatible depth function with values <= max_value"""
    found = []
    for depths in product(range(max_value + 1), repeat=len(poset.proper_elements)):
        try:
            found.append(DepthFunction(poset, depths))
        except InputDomainError:
            continue
    return found


# ---------------------------------------------------------------------------
# lattice
# ---------------------------------------------------------------------------

def check_lattice_axioms(cfg, seed) -> CheckResult:
    name = 'lattice-axioms'
    checked = 0
    posets = _posets(cfg) + [build_boolean_lattice(n) for n in range(4)]
    for poset in posets:
        checked += 1
        if not poset.is_graded:
            return _failed(name, checked, poset=poset.name, reason="not graded")
        if isinstance(poset, BlowupPoset):
            expected = [2] + [1] * poset.r + [0]
            if list(poset.rank_weights) != expected:
                return _failed(name, checked, poset=poset.name, rank_weights=list(poset.rank_weights),
                               expected=expected)
        for x, y in product(poset.elements, repeat=2):
            checked += 1
            m = poset.meet(x, y)
            lower_bounds = [z for z in poset.elements if poset.leq(z, x) and poset.leq(z, y)]
            if m not in lower_bounds or not all(poset.leq(z, m) for z in lower_bounds):
                return _failed(name, checked, poset=poset.name, x=poset.label(x), y=poset.label(y),
                               meet=poset.label(m))
    return _passed(name, checked)


def check_mobius_sums(cfg, seed) -> CheckResult:
    name = 'mobius-sums'
    checked = 0
    posets = _posets(cfg) + [build_boolean_lattice(n) for n in range(4)]
    for poset in posets:
        for lo, hi in product(poset.elements, repeat=2):
            if not poset.leq(lo, hi):
                continue
            checked += 1
            total = sum(mobius(poset, lo, z) for z in interval_elements(poset, lo, hi))
            if total != (1 if lo == hi else 0):
                return _failed(name, checked, poset=poset.name, lo=poset.label(lo),
                               hi=poset.label(hi), sum=total)
    for n in range(4):
        checked += 1
        B = build_boolean_lattice(n)
        if mobius(B, B.bottom, B.top) != (-1) ** n:
            return _failed(name, checked, poset=B.name, mobius=mobius(B, B.bottom, B.top))
    for Q in _posets(cfg):
        checked += 1
        if mobius(Q, Q.zero, Q.top) != Q.r - 1:
            return _failed(name, checked, poset=Q.name, mobius=mobius(Q, Q.zero, Q.top),
                           expected=Q.r - 1)
    return _passed(name, checked)


# ---------------------------------------------------------------------------
# chains
# ---------------------------------------------------------------------------

def check_closure_adjunction(cfg, seed) -> CheckResult:
    name = 'closure-adjunction'
    checked = 0
    depth = cfg.CLOSURE_MAX_DEPTH
    for poset in _posets(cfg):
        functions = _depth_functions(poset, depth)
        chains = enumerate_chains(poset, depth)
        for g in functions:
            checked += 1
            s = saturate(g)
            if not g <= s:
                return _failed(name, checked, property="extensive", g=repr(g), saturation=str(s))
            if saturate(s) != s:
                return _failed(name, checked, property="idempotent", g=repr(g))
            for c in chains:
                if (s <= c) != (g <= c):
                    return _failed(name, checked, property="adjoint", g=repr(g), chain=str(c))
        for g, h in product(functions, repeat=2):
            if g <= h:
                checked += 1
                if not saturate(g) <= saturate(h):
                    return _failed(name, checked, property="monotone", g=repr(g), h=repr(h))
    return _passed(name, checked)


def check_join_lub(cfg, seed) -> CheckResult:
    name = 'join-lub'
    checked = 0
    for poset in _posets(cfg):
        chains = enumerate_chains(poset, cfg.CLOSURE_MAX_DEPTH)
        for a, b in combinations_with_replacement(chains, 2):
            checked += 1
            j = chain_join(a, b)
            if not (a <= j and b <= j):
                return _failed(name, checked, a=str(a), b=str(b), join=str(j), reason="not an upper bound")
            for c in chains:
                if a <= c and b <= c and not j <= c:
                    return _failed(name, checked, a=str(a), b=str(b), join=str(j), bound=str(c))
    return _passed(name, checked)


def check_word_roundtrip(cfg, seed) -> CheckResult:
    name = 'word-roundtrip'
    checked = 0
    for poset in _posets(cfg):
        for c in enumerate_chains(poset, cfg.CLOSURE_MAX_DEPTH):
            checked += 1
            if word_to_chain(poset, str(c)) != c or word_to_chain(poset, chain_to_word(c)) != c:
                return _failed(name, checked, chain=str(c), depths=list(c.depths))
            if sum(m for _, m in c.word) != c.total_depth:
                return _failed(name, checked, chain=str(c), reason="word length differs from total depth")
    return _passed(name, checked)


def check_crosscut(cfg, seed) -> CheckResult:
    name = 'crosscut'
    checked = 0
    for poset in _posets(cfg):
        chains = enumerate_chains(poset, cfg.CROSSCUT_MAX_DEPTH)
        for w, x in product(chains, repeat=2):
            if not w <= x:
                continue
            checked += 1
            if is_essential_pair(w, x) != (crosscut_maximum(w, x) == x):
                return _failed(name, checked, w=str(w), x=str(x),
                               crosscut_maximum=str(crosscut_maximum(w, x)))
    return _passed(name, checked)


def expected_catalogue(poset, w) -> set:
    """Joins of covers of w = d*l_i (or of the trivial chain), as word strings"""
    if w.is_trivial:
        found = {f"1*l{i}" for i in poset.lines}
        if poset.r >= 2:
            found.add("1*0")
        return found
    (q, d), = w.word
    lower = f"{d - 1}*l{q}+1*0" if d > 1 else "1*0"
    return {f"{d + 1}*l{q}", lower, f"{d}*l{q}+1*0"}


def check_essential_catalogue(cfg, seed) -> CheckResult:
    name = 'essential-catalogue'
    checked = 0
    for poset in _posets(cfg):
        starts = [saturate(DepthFunction.trivial(poset))]
        starts += [word_to_chain(poset, f"{d}*l{i}")
                   for i in poset.lines for d in range(1, cfg.CATALOGUE_MAX_D + 1)]
        for w in starts:
            checked += 1
            found = {str(e.chain) for e in essential_above(w, w.total_depth + 1)}
            expected = expected_catalogue(poset, w)
            if found != expected:
                return _failed(name, checked, poset=poset.name, w=str(w),
                               found=sorted(found), expected=sorted(expected))
    return _passed(name, checked)


# ---------------------------------------------------------------------------
# divisors
# ---------------------------------------------------------------------------

def _letters(poset, c) -> Tuple[int, int]:
    m0 = sum(m for q, m in c.word if q == poset.zero)
    return m0, c.total_depth - m0


def check_extend_additivity(cfg, seed) -> CheckResult:
    name = 'extend-additivity'
    checked = 0
    v = AMBIENT_DIM
    for poset in _posets(cfg):
        weights = gamma_weights_for(poset, v)
        chains = enumerate_chains(poset, cfg.CLOSURE_MAX_DEPTH)
        for c in chains:
            checked += 1
            m0, ml = _letters(poset, c)
            single = LabeledConfiguration(poset, (("p", c),))
            if gamma_of(single, v) != 2 * v * m0 + 2 * (v - 1) * ml:
                return _failed(name, checked, chain=str(c), gamma=gamma_of(single, v))
            if multiplicity(single, poset.zero) != m0 or line_multiplicity(single) != ml:
                return _failed(name, checked, chain=str(c), reason="letter multiplicities")
        for a, b in combinations_with_replacement(chains, 2):
            checked += 1
            both = LabeledConfiguration(poset, (("p", a), ("q", b)))
            alone = [LabeledConfiguration(poset, ((label, c),)) for label, c in (("p", a), ("q", b))]
            if extend_function(weights, both) != sum(extend_function(weights, x) for x in alone):
                return _failed(name, checked, a=str(a), b=str(b), reason="not additive over points")
            if a <= b:
                pair = RelativePair(alone[0], LabeledConfiguration(poset, (("p", b),)))
                if gamma_of(pair, v) != gamma_of(LabeledConfiguration(poset, (("p", b),)), v) - gamma_of(alone[0], v):
                    return _failed(name, checked, lower=str(a), upper=str(b),
                                   reason="relative value is not upper minus lower")
    return _passed(name, checked)


def check_rank_longest_chain(cfg, seed) -> CheckResult:
    name = 'rank-longest-chain'
    checked = 0
    for poset in _posets(cfg) + [build_boolean_lattice(2)]:
        for c in enumerate_chains(poset, cfg.RANK_MAX_DEPTH):
            checked += 1
            if chain_rank(c) != longest_chain_rank(c):
                return _failed(name, checked, poset=poset.name, chain=str(c),
                               rank=chain_rank(c), longest=longest_chain_rank(c))
    return _passed(name, checked)


def check_superadditivity(cfg, seed) -> CheckResult:
    """E(sat(g1 + g2)) <= E(g1) + E(g2) for E = m_0 + J*m_l"""
    name = 'superadditivity'
    checked = 0
    for poset in _posets(cfg):
        chains = enumerate_chains(poset, cfg.SUPERADDITIVITY_MAX_DEPTH)
        for g1, g2 in combinations_with_replacement(chains, 2):
            for J in e_weights():
                checked += 1
                if not subadditivity_holds(g1, g2, J):
                    return _failed(name, checked, g1=str(g1), g2=str(g2), J=str(Fraction(J)))
    return _passed(name, checked)


# ---------------------------------------------------------------------------
# types
# ---------------------------------------------------------------------------

def check_rank_kappa(cfg, seed) -> CheckResult:
    name = 'rank-kappa'
    checked = 0
    bounds = TypeBounds(cfg.RANK_MAX_POINTS, cfg.RANK_MAX_DEPTH)
    for poset in _posets(cfg):
        for T in enumerate_saturated_types(poset, bounds, ABSOLUTE):
            R = as_relative(T)
            checked += 1
            kappa = kappa_of(R, AMBIENT_DIM)
            if type_rank(R) > kappa:
                return _failed(name, checked, type=str(T), rank=type_rank(R), kappa=kappa)
            for S in successor_types(R):
                checked += 1
                if kappa_of(S, AMBIENT_DIM) < kappa + 1:
                    return _failed(name, checked, type=str(T), successor=str(S),
                                   kappa=kappa, successor_kappa=kappa_of(S, AMBIENT_DIM))
    return _passed(name, checked)


def check_leq_plus_order(cfg, seed) -> CheckResult:
    name = 'leq-plus-order'
    poset = build_blowup_poset(2, AMBIENT_DIM)
    universe = enumerate_saturated_types(poset, TypeBounds(2, 2), ABSOLUTE)
    related = [[leq_plus(S, T) for T in universe] for S in universe]
    checked = 0
    for i, S in enumerate(universe):
        checked += 1
        if not related[i][i]:
            return _failed(name, checked, property="reflexive", type=str(S))
        for j, T in enumerate(universe):
            if not related[i][j]:
                continue
            checked += 1
            if S.size > T.size:
                return _failed(name, checked, property="size", lower=str(S), upper=str(T))
            for k, U in enumerate(universe):
                if related[j][k] and not related[i][k]:
                    return _failed(name, checked, property="transitive",
                                   types=[str(S), str(T), str(U)])
    return _passed(name, checked)


def check_leq_plus_sat_antisymmetry(cfg, seed) -> CheckResult:
    name = 'leq-plus-sat-antisymmetry'
    checked = 0
    bounds = TypeBounds(cfg.ANTISYMMETRY_MAX_POINTS, cfg.ANTISYMMETRY_MAX_DEPTH)
    for poset in _posets(cfg):
        universe = enumerate_saturated_types(poset, bounds, ABSOLUTE)
        checked += len(universe)
        violations = SatOrder(universe).antisymmetry_violations()
        if violations:
            S, T = violations[0]
            return _failed(name, checked, poset=poset.name, types=[str(S), str(T)])
    return _passed(name, checked)


def check_kappa_additivity(cfg, seed) -> CheckResult:
    name = 'kappa-additivity'
    checked = 0
    bounds = TypeBounds(cfg.RANK_MAX_POINTS, cfg.RANK_MAX_DEPTH)
    for poset in _posets(cfg):
        for T in enumerate_saturated_types(poset, bounds, RELATIVE):
            checked += 1
            kappa = kappa_of(T, AMBIENT_DIM)
            parts = sum(
                kappa_of(CombinatorialType(poset, (entry,), relative=True), AMBIENT_DIM)
                for entry in T.entries
            )
            if kappa != parts:
                return _failed(name, checked, type=str(T), kappa=kappa, sum_of_points=parts)
            if kappa != kappa_of_representative(T, AMBIENT_DIM):
                return _failed(name, checked, type=str(T), kappa=kappa,
                               representative=kappa_of_representative(T, AMBIENT_DIM))
    return _passed(name, checked)


# ---------------------------------------------------------------------------
# homalg
# ---------------------------------------------------------------------------

Case = Tuple[tuple, tuple]


def _supports(strict: Sequence[Tuple], size: int, budget: int, start: int = 0):
    """Multisets of `size` strict intervals whose upper word lengths sum to at most budget"""
    if size == 0:
        yield ()
        return
    for k in range(start, len(strict)):
        w, x = strict[k]
        if x.total_depth > budget - (size - 1):
            continue
        for rest in _supports(strict, size - 1, budget - x.total_depth, k):
            yield ((w, x),) + rest


@lru_cache(maxsize=None)
def homology_cases(max_r: int, max_depth: int, max_points: int = 2) -> Tuple[Case, ...]:
    """
    On every Q_r with r <= max_r: each single-point interval w <= x with x of
    word length <= max_depth, then each support of 2..max_points strict
    intervals whose upper word lengths sum to at most max_depth.
    """
    cases: List[Case] = []
    for r in range(1, max_r + 1):
        poset = build_blowup_poset(r, AMBIENT_DIM)
        chains = enumerate_chains(poset, max_depth)
        cases.extend(((w,), (x,)) for w, x in product(chains, repeat=2) if w <= x)
        strict = [(w, x) for w, x in product(chains, repeat=2) if w < x]
        for size in range(2, max_points + 1):
            for support in _supports(strict, size, max_depth):
                cases.append((tuple(w for w, _ in support), tuple(x for _, x in support)))
    logger.info(f"Homology cases: {len(cases)} (max_r={max_r}, depth={max_depth}, points={max_points})")
    return tuple(cases)


def _cases(cfg) -> Tuple[Case, ...]:
    return homology_cases(cfg.MAX_R, cfg.HOMOLOGY_MAX_DEPTH, cfg.HOMOLOGY_MAX_POINTS)


def _case_json(case: Case) -> Dict:
    ws, xs = case
    return {'w': [str(c) for c in ws], 'x': [str(c) for c in xs]}


def check_boundary_squared(cfg, seed) -> CheckResult:
    name = 'boundary-squared'
    checked = 0
    for case in _cases(cfg):
        if case[0] == case[1]:
            continue
        K, L = interval_pair(*case)
        for cells in (relative_cells(K, None), relative_cells(K, L)):
            checked += 1
            bad = boundary_squared_zero(cells)
            if bad is not None:
                return _failed(name, checked, degree=bad, **_case_json(case))
    return _passed(name, checked)


def check_euler_exact_sequence(cfg, seed) -> CheckResult:
    name = 'euler-exact-sequence'
    checked = 0
    for case in _cases(cfg):
        if case[0] == case[1]:
            continue
        K, L = interval_pair(*case)
        checked += 1
        if homology(K).euler_characteristic() != K.euler_characteristic():
            return _failed(name, checked, reason="homology and f-vector disagree", **_case_json(case))
        if not pair_euler_consistent(K, L):
            return _failed(name, checked, reason="chi(K) - chi(L) != chi(K, L)", **_case_json(case))
    return _passed(name, checked)


def check_vanishing(cfg, seed) -> CheckResult:
    """Stalks vanish off essential supports and sit in one degree on them"""
    name = 'essential-vanishing'
    checked = 0
    for case in _cases(cfg):
        checked += 1
        stalk = mu_stalk(*case)
        essential = support_is_essential(*case)
        if essential and len(stalk.nonzero_degrees()) != 1:
            return _failed(name, checked, essential=True, stalk=stalk.to_json(), **_case_json(case))
        if not essential and not stalk.is_zero:
            return _failed(name, checked, essential=False, stalk=stalk.to_json(), **_case_json(case))
    return _passed(name, checked)


def check_mobius_euler(cfg, seed) -> CheckResult:
    name = 'mobius-euler'
    checked = 0
    for case in _cases(cfg):
        checked += 1
        result = euler_vs_mobius(*case)
        if not result.equal:
            return _failed(name, checked, **result.to_json(), **_case_json(case))
    return _passed(name, checked)


def _trimmed(vector: Sequence[int]) -> List[int]:
    vector = list(vector) or [0]
    while len(vector) > 1 and vector[-1] == 0:
        vector.pop()
    return vector


def check_stalk_freeness(cfg, seed) -> CheckResult:
    name = 'stalk-freeness'
    checked = 0
    for case in _cases(cfg):
        checked += 1
        stalk = mu_stalk(*case)
        if not stalk.is_free:
            return _failed(name, checked, stalk=stalk.to_json(), **_case_json(case))
        ws, xs = case
        if len(ws) > 1:
            combined = kunneth_betti([mu_stalk(w, x) for w, x in zip(ws, xs)])
            direct = _trimmed(stalk.betti_vector())
            if _trimmed(combined) != direct:
                return _failed(name, checked, kunneth=combined, direct=direct, **_case_json(case))
    return _passed(name, checked)


# ---------------------------------------------------------------------------
# del Pezzo and stability
# ---------------------------------------------------------------------------

def check_delpezzo(cfg, seed) -> CheckResult:
    name = 'delpezzo'
    checked = 0
    for a in sample_ample_classes(cfg.DELPEZZO_SAMPLES, seed, cfg.DELPEZZO_MAX_DEGREE):
        checked += 1
        try:
            normalized = dp_normalize(a)
        except CensusError as e:
            return _failed(name, checked, alpha=str(a), error=str(e))
        d, n = normalized.dp_class.d, normalized.dp_class.n
        sums = [n[i] + n[j] + n[3] for i, j in ((0, 1), (0, 2), (1, 2))]
        if any(s > d for s in sums):
            return _failed(name, checked, alpha=str(a), normalized=str(normalized.dp_class))
        if len(set(a.n)) == 4 and not normalized.strict:
            return _failed(name, checked, alpha=str(a), normalized=str(normalized.dp_class),
                           reason="distinct multiplicities but not strict")
    samples = sample_classes(cfg.DELPEZZO_SAMPLES, seed)
    for a, b in zip(samples, samples[1:] + samples[:1]):
        checked += 1
        if cremona(cremona(a)) != a:
            return _failed(name, checked, alpha=str(a), reason="cremona is not an involution")
        if dp_pairing(cremona(a), cremona(b)) != dp_pairing(a, b):
            return _failed(name, checked, alpha=str(a), beta=str(b), reason="pairing not preserved")
    checked += 1
    if cremona(ANTICANONICAL) != ANTICANONICAL or not dp_is_ample(ANTICANONICAL):
        return _failed(name, checked, alpha=str(ANTICANONICAL), reason="anticanonical class")
    return _passed(name, checked)


def check_weyl_group(cfg, seed) -> CheckResult:
    name = 'weyl-group'
    group = weyl_group()
    checked = 1
    if len(group) != 120:
        return _failed(name, checked, size=len(group))
    form = np.diag(np.array([1, -1, -1, -1, -1], dtype=np.int64))
    curves = set(dp_minus_one_curves())
    for element in group:
        checked += 1
        if not np.array_equal(element.matrix.T @ form @ element.matrix, form):
            return _failed(name, checked, word=list(element.word), reason="pairing not preserved")
        if element.act(ANTICANONICAL) != ANTICANONICAL:
            return _failed(name, checked, word=list(element.word), reason="moves the anticanonical class")
        if {element.act(e) for e in curves} != curves:
            return _failed(name, checked, word=list(element.word), reason="does not permute (-1)-curves")
    return _passed(name, checked)


def check_stability_constants(cfg, seed) -> CheckResult:
    name = 'stability-constants'
    checked = 0
    gp = stability_range(CurveContext(0, 5, (2, 2, 2), AMBIENT_DIM, general_position=True))
    basic = stability_range(CurveContext(0, 5, (2, 2, 2), AMBIENT_DIM))
    pointed = stability_range(CurveContext(0, 5, (2, 2, 2), AMBIENT_DIM, pointed=True, general_position=True))
    checked += 1
    if not (gp.feasible and gp.M == 1):
        return _failed(name, checked, range=gp.to_json(), expected_M=1)
    checked += 1
    if basic.feasible or basic.M != -1:
        return _failed(name, checked, range=basic.to_json(), expected_M=-1)
    for k in range(1, 6):
        checked += 1
        if gp.connectivity(k) != gp.M * k - 2 or pointed.connectivity(k) != gp.M * k - 3:
            return _failed(name, checked, k=k, connectivity=gp.connectivity(k),
                           pointed_connectivity=pointed.connectivity(k))
        checked += 1
        scaled = stability_range(gp.ctx.scaled(k))
        if scaled.M != k * gp.M:
            return _failed(name, checked, k=k, M=scaled.M, expected=k * gp.M)
    return _passed(name, checked)


def certificate_contexts(cfg) -> List[Tuple[str, CurveContext]]:
    """One class per flavor and degree; the pointed class has its points in general position"""
    contexts = []
    for d in cfg.CERTIFICATE_DEGREES:
        n = tuple(cfg.CERTIFICATE_MULTIPLICITIES)
        contexts.append((PLAIN, CurveContext(0, d, n, AMBIENT_DIM)))
        contexts.append((GENERAL_POSITION, CurveContext(0, d, n, AMBIENT_DIM, general_position=True)))
        contexts.append((POINTED, CurveContext(0, d, n, AMBIENT_DIM, pointed=True, general_position=True)))
    return contexts


def check_build_p_certificates(cfg, seed) -> CheckResult:
    name = 'build-p-certificates'
    checked = 0
    bounds = TypeBounds(cfg.CERTIFICATE_MAX_POINTS, cfg.CERTIFICATE_MAX_DEPTH)
    for flavor, ctx in certificate_contexts(cfg):
        P = build_P(ctx, flavor=flavor, bounds=bounds)
        certificate = P.certificate()
        checked += sum(c.checked for c in certificate.clauses.values())
        if not certificate.passed:
            return _failed(name, checked, flavor=flavor, degree=ctx.degree,
                           certificate=certificate.to_json())
        if certificate.skipped:
            logger.warning(f"{name}: {flavor} d={ctx.degree} skipped {certificate.skipped}")
        for T in P.universe:
            if kappa_of_representative(T, AMBIENT_DIM) <= P.threshold:
                checked += 1
                if T not in P:
                    return _failed(name, checked, flavor=flavor, degree=ctx.degree, type=str(T),
                                   reason="kappa-filtered type outside P")
    return _passed(name, checked)


def check_nalpha_invariance(cfg, seed) -> CheckResult:
    name = 'nalpha-invariance'
    checked = 1
    if n_alpha(ANTICANONICAL).feasible:
        return _failed(name, checked, alpha=str(ANTICANONICAL), reason="expected infeasible")
    for a in sample_ample_classes(min(NALPHA_SAMPLES, cfg.DELPEZZO_SAMPLES), seed, cfg.DELPEZZO_MAX_DEGREE):
        value = n_alpha(a).value
        images = [apply_generator(a, g) for g in GENERATORS]
        images += [DPClass(a.d, p) for p in sorted(set(permutations(a.n)))]
        for image in images:
            checked += 1
            if n_alpha(image).value != value:
                return _failed(name, checked, alpha=str(a), image=str(image),
                               N=value, image_N=n_alpha(image).value)
    return _passed(name, checked)


# ---------------------------------------------------------------------------
# Registry and runner
# ---------------------------------------------------------------------------

SUITES: Dict[str, Suite] = {
    'lattice-axioms': check_lattice_axioms,
    'mobius-sums': check_mobius_sums,
    'closure-adjunction': check_closure_adjunction,
    'join-lub': check_join_lub,
    'word-roundtrip': check_word_roundtrip,
    'crosscut': check_crosscut,
    'essential-catalogue': check_essential_catalogue,
    'extend-additivity': check_extend_additivity,
    'rank-longest-chain': check_rank_longest_chain,
    'rank-kappa': check_rank_kappa,
    'superadditivity': check_superadditivity,
    'leq-plus-order': check_leq_plus_order,
    'leq-plus-sat-antisymmetry': check_leq_plus_sat_antisymmetry,
    'kappa-additivity': check_kappa_additivity,
    'boundary-squared': check_boundary_squared,
    'euler-exact-sequence': check_euler_exact_sequence,
    'essential-vanishing': check_vanishing,
    'mobius-euler': check_mobius_euler,
    'stalk-freeness': check_stalk_freeness,
    'delpezzo': check_delpezzo,
    'weyl-group': check_weyl_group,
    'stability-constants': check_stability_constants,
    'build-p-certificates': check_build_p_certificates,
    'nalpha-invariance': check_nalpha_invariance,
}


def resolve_suites(selection: str) -> List[str]:
    """'all' or a comma-separated list of suite names, in registry order"""
    if selection == 'all':
        return list(SUITES)
    wanted = [s.strip() for s in selection.split(',') if s.strip()]
    unknown = [s for s in wanted if s not in SUITES]
    if unknown or not wanted:
        raise InputDomainError(f"unknown suite(s) {unknown or selection!r}; choose from {', '.join(SUITES)} or all")
    return [s for s in SUITES if s in wanted]


def _memory_mb() -> float:
    return psutil.Process().memory_info().rss / (1024 ** 2)


def _run_one(name: str, cfg, seed: int) -> CheckResult:
    started = time.perf_counter()
    try:
        result = SUITES[name](cfg, seed)
    except CensusError as e:
        logger.error(f"Suite {name} raised {type(e).__name__}: {e}")
        result = CheckResult(name, False, 0, {'error': f"{type(e).__name__}: {e}"})
    elapsed = time.perf_counter() - started
    status = "passed" if result.passed else "FAILED"
    logger.info(f"Suite {name} {status}: {result.checked} checks in {elapsed:.2f}s "
                f"(rss {_memory_mb():.0f} MB)")
    return result


def run_suites(names: Sequence[str], cfg, seed: int, parallelism: Optional[int] = None) -> List[CheckResult]:
    """Run suites and return their results in the order given"""
    workers = max(1, min(parallelism or cfg.PARALLELISM, psutil.cpu_count() or 1, len(names) or 1))
    logger.info(f"Running {len(names)} suite(s) on {workers} worker(s)")
    if workers == 1:
        return [_run_one(name, cfg, seed) for name in names]
    with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="VerifyWorker") as executor:
        futures = [executor.submit(_run_one, name, cfg, seed) for name in names]
        return [future.result() for future in futures]
