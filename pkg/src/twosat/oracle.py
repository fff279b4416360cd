"""Brute-force ground truth for small formulae and digraphs.

Literals are non-zero integers in DIMACS style: ``v`` is variable ``v``
(1-based) and ``-v`` its negation. Vertex ``2(v-1)`` of an implication
digraph is ``v`` and vertex ``2(v-1)+1`` is ``-v``, so negation is ``i ^ 1``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import _kernels
from .errors import TooLarge

__all__ = [
    "ClauseFormula",
    "ImplicationDigraph",
    "StructureReport",
    "canonical_clauses",
    "strongly_connected_components",
    "is_satisfiable",
    "brute_sat_counts",
    "brute_cscc_counts",
    "brute_scc_digraph_counts",
    "brute_scc_digraph_counts_by_arcs",
    "check_structure",
    "iter_formulas",
]

log = logging.getLogger(__name__)

SAT_MAX_N = 4
CSCC_MAX_N = 3
SCC_MAX_K = 4
_BLOCK = 1 << 20


def vertex(lit):
    return 2 * (abs(lit) - 1) + (lit < 0)


def literal(v):
    return -(v // 2 + 1) if v & 1 else v // 2 + 1


def canonical_clauses(n):
    """All ``2n(n-1)`` clauses, ordered by (lower var, upper var, polarities).

    A polarity of 0 is the positive literal. Bit ``i`` of a formula mask
    selects clause ``i`` of this list.
    """
    out = []
    for i, j in combinations(range(1, n + 1), 2):
        for si in (0, 1):
            for sj in (0, 1):
                out.append((-i if si else i, -j if sj else j))
    return out


@dataclass(frozen=True)
class ClauseFormula:
    """A 2-CNF: a set of two-literal clauses on distinct variables."""

    n_vars: int
    clauses: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        normalized = set()
        for clause in self.clauses:
            a, b = clause
            if not a or not b or abs(a) == abs(b):
                raise ValueError(f"clause {clause!r} must use two distinct variables")
            if max(abs(a), abs(b)) > self.n_vars:
                raise ValueError(f"clause {clause!r} exceeds n_vars={self.n_vars}")
            normalized.add(tuple(sorted((a, b), key=lambda x: (abs(x), x < 0))))
        object.__setattr__(self, "clauses", frozenset(normalized))

    @classmethod
    def from_mask(cls, n, mask, clauses=None):
        clauses = canonical_clauses(n) if clauses is None else clauses
        return cls(n, frozenset(c for i, c in enumerate(clauses) if mask >> i & 1))

    def __len__(self):
        return len(self.clauses)

    def digraph(self):
        arcs = set()
        for a, b in self.clauses:
            arcs.add((vertex(-a), vertex(b)))
            arcs.add((vertex(-b), vertex(a)))
        return ImplicationDigraph(self.n_vars, frozenset(arcs))


@dataclass(frozen=True)
class ImplicationDigraph:
    """Digraph on the ``2 * n_vars`` literals, closed under ``k->l  <=>  ~l->~k``."""

    n_vars: int
    arcs: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        n_vertices = 2 * self.n_vars
        for u, v in self.arcs:
            if not (0 <= u < n_vertices and 0 <= v < n_vertices):
                raise ValueError(f"arc {(u, v)} outside the vertex set")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if u ^ 1 == v:
                raise ValueError(f"arc from a literal to its negation: {(u, v)}")
            if (v ^ 1, u ^ 1) not in self.arcs:
                raise ValueError(f"arc {(u, v)} lacks its symmetric counterpart")

    @property
    def n_vertices(self):
        return 2 * self.n_vars

    def successors(self):
        out = [[] for _ in range(self.n_vertices)]
        for u, v in sorted(self.arcs):
            out[u].append(v)
        return out


def strongly_connected_components(n_vertices, successors):
    """Tarjan's algorithm (iterative); returns a list of frozensets of vertices."""
    index = [-1] * n_vertices
    low = [0] * n_vertices
    on_stack = [False] * n_vertices
    stack, comps = [], []
    counter = 0
    for root in range(n_vertices):
        if index[root] >= 0:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            succ = successors[v]
            while i < len(succ):
                w = succ[i]
                i += 1
                if index[w] < 0:
                    work.append((v, i))
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(frozenset(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return comps


def _contradictory(components):
    bad = set()
    for comp in components:
        for v in comp:
            if v ^ 1 in comp:
                bad.add(v // 2 + 1)
    return frozenset(bad)


def is_satisfiable(formula):
    """``(satisfiable, contradictory_variables)`` from the SCCs of the implication digraph."""
    d = formula.digraph() if isinstance(formula, ClauseFormula) else formula
    comps = strongly_connected_components(d.n_vertices, d.successors())
    bad = _contradictory(comps)
    return not bad, bad


# ---------------------------------------------------------------------------
# structural propositions

@dataclass
class StructureReport:
    checks: dict

    @property
    def passed(self):
        return all(self.checks.values())

    def failures(self):
        return [name for name, ok in self.checks.items() if not ok]


def check_structure(d):
    """Check the structural facts about contradictory and ordinary SCCs on ``d``.

    * ``all_contradictory``: an SCC holding one contradictory variable holds
      only contradictory variables;
    * ``contradictory_source_isolated``: a source-like or sink-like
      contradictory SCC is isolated;
    * ``contradictory_unlinked``: no path joins two distinct contradictory SCCs;
    * ``ordinary_mirror``: the negation of a source-like (sink-like, isolated)
      ordinary SCC is a disjoint sink-like (source-like, isolated) SCC.
    """
    n_vertices = d.n_vertices
    succ = d.successors()
    comps = strongly_connected_components(n_vertices, succ)
    comp_of = [0] * n_vertices
    for idx, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = idx
    has_in = [False] * len(comps)
    has_out = [False] * len(comps)
    cond = [set() for _ in comps]
    for u, v in d.arcs:
        cu, cv = comp_of[u], comp_of[v]
        if cu != cv:
            has_out[cu] = True
            has_in[cv] = True
            cond[cu].add(cv)
    contradictory = [any(v ^ 1 in comp for v in comp) for comp in comps]

    all_contra = all(all(v ^ 1 in comp for v in comp)
                     for comp, c in zip(comps, contradictory) if c)

    source_isolated = all(
        (has_in[i] or not has_out[i]) and (has_out[i] or not has_in[i])
        for i, c in enumerate(contradictory) if c)

    # reachability on the condensation
    reach = []
    for i in range(len(comps)):
        seen, todo = set(), list(cond[i])
        while todo:
            j = todo.pop()
            if j not in seen:
                seen.add(j)
                todo.extend(cond[j])
        reach.append(seen)
    unlinked = all(not (contradictory[j] and j != i)
                   for i, c in enumerate(contradictory) if c for j in reach[i])

    mirror = True
    for i, comp in enumerate(comps):
        if contradictory[i]:
            continue
        neg = frozenset(v ^ 1 for v in comp)
        j = comp_of[next(iter(neg))]
        if comps[j] != neg or neg & comp:
            mirror = False
            break
        if not has_in[i] and has_out[j]:
            mirror = False
        if not has_out[i] and has_in[j]:
            mirror = False
    return StructureReport({
        "all_contradictory": all_contra,
        "contradictory_source_isolated": source_isolated,
        "contradictory_unlinked": unlinked,
        "ordinary_mirror": mirror,
    })


def iter_formulas(n):
    """Every 2-CNF on ``n`` variables, in canonical mask order."""
    clauses = canonical_clauses(n)
    for mask in range(1 << len(clauses)):
        yield ClauseFormula.from_mask(n, mask, clauses)


# ---------------------------------------------------------------------------
# exhaustive sweeps

def _clause_arcs(n):
    clauses = canonical_clauses(n)
    src = np.empty((len(clauses), 2), dtype=np.int64)
    dst = np.empty((len(clauses), 2), dtype=np.int64)
    for i, (a, b) in enumerate(clauses):
        src[i] = (vertex(-a), vertex(-b))
        dst[i] = (vertex(b), vertex(a))
    return src, dst


def _digraph_arcs(k):
    pairs = [(i, j) for i in range(k) for j in range(k) if i != j]
    src = np.array([[i] for i, _ in pairs], dtype=np.int64).reshape(len(pairs), 1)
    dst = np.array([[j] for _, j in pairs], dtype=np.int64).reshape(len(pairs), 1)
    return src, dst


def _sweep(src, dst, n_vertices, n_vars, mode, progress=None):
    total = 1 << src.shape[0]
    counts = np.zeros(src.shape[0] + 1, dtype=np.int64)
    for lo in range(0, total, _BLOCK):
        hi = min(total, lo + _BLOCK)
        counts += _kernels.tally(src, dst, n_vertices, n_vars, mode, lo, hi)
        if progress is not None:
            progress(hi, total)
    return counts


def _as_map(counts):
    return {m: int(c) for m, c in enumerate(counts)}


def brute_sat_counts(n, progress=None):
    """``{m: number of satisfiable formulae with m clauses}`` over all clause subsets."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > SAT_MAX_N:
        raise TooLarge(f"brute-force SAT sweep supports n <= {SAT_MAX_N}")
    if n <= 1:
        return {0: 1}
    src, dst = _clause_arcs(n)
    return _as_map(_sweep(src, dst, 2 * n, n, _kernels.MODE_SAT, progress))


def brute_cscc_counts(n, progress=None):
    """``{m: count}`` of formulae whose digraph is one contradictory SCC on all ``2n`` literals."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > CSCC_MAX_N:
        raise TooLarge(f"brute-force CSCC sweep supports n <= {CSCC_MAX_N}")
    if n <= 1:
        return {}
    src, dst = _clause_arcs(n)
    counts = _sweep(src, dst, 2 * n, n, _kernels.MODE_CSCC, progress)
    return {m: int(c) for m, c in enumerate(counts) if c}


def brute_scc_digraph_counts_by_arcs(k):
    """``{m: number of strongly connected labelled digraphs on k vertices with m arcs}``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k > SCC_MAX_K:
        raise TooLarge(f"brute-force SCC sweep supports k <= {SCC_MAX_K}")
    if k == 0:
        return {}
    if k == 1:
        return {0: 1}
    src, dst = _digraph_arcs(k)
    counts = _sweep(src, dst, k, 0, _kernels.MODE_STRONG)
    return {m: int(c) for m, c in enumerate(counts) if c}


def brute_scc_digraph_counts(k):
    return sum(brute_scc_digraph_counts_by_arcs(k).values())
