"""Implication graphs, 2SAT and read-once derivation of unit clauses."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .core import Formula, Literal, lit_key
from .errors import EmptyClausePresent, NotDerivable, NotReachable
from .resolution import READ_ONCE, Derivation, ProofBuilder, chain_to_derivation, check

Edge = tuple[Literal, Literal, int]


class ImplicationGraph:
    """Literal digraph; every edge carries the occurrence id that induced it.

    A clause ``(a v b)`` yields ``-a -> b`` and ``-b -> a``; a unit ``(a)``
    yields the single edge ``-a -> a``.
    """

    def __init__(self, f: Formula):
        self.variables = sorted(f.variables)
        self.succ: dict[Literal, list[tuple[Literal, int]]] = {}
        for v in self.variables:
            self.succ[v] = []
            self.succ[-v] = []
        self.edges: list[Edge] = []
        for occ, c in f:
            if not c:
                raise EmptyClausePresent(f"occurrence {occ} is the empty clause")
            if len(c) == 1:
                self._add(-c[0], c[0], occ)
            else:
                a, b = c
                self._add(-a, b, occ)
                self._add(-b, a, occ)
        for lst in self.succ.values():
            lst.sort(key=lambda e: (lit_key(e[0]), e[1]))

    def _add(self, u, v, occ):
        self.succ[u].append((v, occ))
        self.edges.append((u, v, occ))

    @property
    def vertices(self) -> list[Literal]:
        return sorted(self.succ, key=lit_key)

    def has_edge(self, u, v, occ=None) -> bool:
        return any(w == v and (occ is None or o == occ) for w, o in self.succ.get(u, ()))


def build_graph(f: Formula) -> ImplicationGraph:
    return ImplicationGraph(f)


@dataclass(frozen=True)
class LiteralPath:
    start: Literal
    end: Literal
    edges: tuple[Edge, ...]

    @property
    def vertices(self) -> list[Literal]:
        return [self.start] + [e[1] for e in self.edges]

    @property
    def occurrences(self) -> list[int]:
        return [e[2] for e in self.edges]


def find_path(g: ImplicationGraph, src: Literal, dst: Literal) -> LiteralPath:
    """Breadth-first path from ``src`` to ``dst``.

    Successors are visited by (variable, polarity) and then by occurrence id,
    so the result depends only on the graph.
    """
    if src not in g.succ or dst not in g.succ:
        raise NotReachable(f"{src} -> {dst}")
    if src == dst:
        return LiteralPath(src, dst, ())
    parent: dict[Literal, Edge] = {}
    seen = {src}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for v, occ in g.succ[u]:
            if v in seen:
                continue
            seen.add(v)
            parent[v] = (u, v, occ)
            if v == dst:
                edges = []
                w = dst
                while w != src:
                    edges.append(parent[w])
                    w = parent[w][0]
                return LiteralPath(src, dst, tuple(reversed(edges)))
            queue.append(v)
    raise NotReachable(f"{src} -> {dst}")


def strongly_connected(g: ImplicationGraph) -> dict[Literal, int]:
    """Tarjan's algorithm, iterative; component ids follow emission order
    (reverse topological order of the condensation)."""
    index: dict[Literal, int] = {}
    low: dict[Literal, int] = {}
    comp: dict[Literal, int] = {}
    stack: list[Literal] = []
    on_stack: set[Literal] = set()
    counter = 0
    ncomp = 0
    for root in g.vertices:
        if root in index:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            u, i = work[-1]
            succ = g.succ[u]
            if i < len(succ):
                work[-1] = (u, i + 1)
                v = succ[i][0]
                if v not in index:
                    index[v] = low[v] = counter
                    counter += 1
                    stack.append(v)
                    on_stack.add(v)
                    work.append((v, 0))
                elif v in on_stack:
                    low[u] = min(low[u], index[v])
                continue
            work.pop()
            if work:
                p = work[-1][0]
                low[p] = min(low[p], low[u])
            if low[u] == index[u]:
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp[w] = ncomp
                    if w == u:
                        break
                ncomp += 1
    return comp


@dataclass(frozen=True)
class SatResult:
    sat: bool
    model: Optional[dict[int, bool]] = None
    witness: Optional[int] = None

    def __bool__(self) -> bool:
        return self.sat


def decide_sat(f: Formula) -> SatResult:
    """2SAT via strongly connected components.

    Unsatisfiable results name the smallest variable ``x`` whose literals lie
    in one component, i.e. both ``-x ~> x`` and ``x ~> -x`` exist.
    """
    g = build_graph(f)
    comp = strongly_connected(g)
    for v in g.variables:
        if comp[v] == comp[-v]:
            return SatResult(False, witness=v)
    return SatResult(True, model={v: comp[v] < comp[-v] for v in g.variables})


def is_sat(f: Formula) -> bool:
    """Like ``decide_sat`` but treats an empty clause as plain unsatisfiability."""
    if f.has_empty_clause():
        return False
    return decide_sat(f).sat


def derive_unit_read_once(f: Formula, target: Literal) -> Derivation:
    """Derive the unit ``(target)`` using every occurrence at most once.

    Takes the breadth-first path ``-target ~> target``.  If some clause labels
    two of its edges, the first edge ``u -> v`` whose partner ``-v -> -u`` came
    earlier splits the path: the prefix through the partner yields
    ``(target v -u)``, the stretch between the two edges yields ``(u)``, and
    one more resolution gives ``(target)``.
    """
    g = build_graph(f)
    try:
        p = find_path(g, -target, target)
    except NotReachable:
        raise NotDerivable(f"no path {-target} ~> {target}") from None
    first: dict[int, int] = {}
    cut = None
    for j, (_, _, occ) in enumerate(p.edges):
        if occ in first:
            cut = (first[occ], j)
            break
        first[occ] = j
    b = ProofBuilder(f)
    if cut is None:
        d = chain_to_derivation(p, f, b)
    else:
        i, j = cut
        u = p.edges[j][0]
        head = LiteralPath(-target, -u, p.edges[: i + 1])
        loop = LiteralPath(-u, u, p.edges[i + 1 : j])
        ra = chain_to_derivation(head, f, b).root
        if b.clause(ra) == (target,):
            d = b.derivation(ra)
        else:
            rb = chain_to_derivation(loop, f, b).root
            d = b.derivation(b.resolve(ra, rb, abs(u)))
    report = check(f, d, READ_ONCE, goal=(target,))
    assert report.valid, report.violations
    return d
