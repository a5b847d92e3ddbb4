"""Disjoint-cycle problems on digraphs and their encoding as 2CNF formulas.

A vertex-disjoint (or edge-disjoint) cycle through s and t is a path s ~> t
and a path t ~> s whose inner vertices (or edges) are disjoint.  The encoding
has one variable per vertex other than s and t plus a variable x0 for the
pair; var-once refutations of the formula correspond to vertex-disjoint
cycles and read-once refutations to edge-disjoint ones.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence, Union

from .core import Formula, make_clause
from .errors import (
    FormatSyntaxError,
    NotFromReduction,
    SelfLoop,
    TooLarge,
    VerticesNotDistinct,
)
from .resolution import Derivation

Edge = tuple[int, int]
VERTEX, EDGE = "vertex", "edge"


@dataclass(frozen=True)
class Digraph:
    """Vertices ``1..n``; edges in enumeration order, no parallel duplicates.

    ``sources`` and ``targets`` hold designated vertices: one of each for a
    cycle instance, two of each for a two-pair disjoint-paths instance.
    """

    n: int
    edges: tuple[Edge, ...] = ()
    sources: tuple[int, ...] = ()
    targets: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        seen = set()
        for u, v in self.edges:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"edge ({u},{v}) outside 1..{self.n}")
            if (u, v) in seen:
                raise ValueError(f"parallel edge ({u},{v})")
            seen.add((u, v))
        for w in self.sources + self.targets:
            if not 1 <= w <= self.n:
                raise ValueError(f"designated vertex {w} outside 1..{self.n}")

    @property
    def s(self) -> int:
        return self.sources[0]

    @property
    def t(self) -> int:
        return self.targets[0]

    def successors(self, u: int) -> list[int]:
        return [v for a, v in self.edges if a == u]


@dataclass(frozen=True)
class CyclePair:
    path_st: tuple[int, ...]
    path_ts: tuple[int, ...]
    disjointness: str = VERTEX

    def edges(self) -> list[Edge]:
        return _path_edges(self.path_st) + _path_edges(self.path_ts)


def _path_edges(p: Sequence[int]) -> list[Edge]:
    return list(zip(p, p[1:]))


def is_valid_cycle_pair(g: Digraph, s: int, t: int, pair: CyclePair) -> bool:
    """Both paths are walks in ``g`` with the right endpoints, simple, and
    disjoint in the pair's mode."""
    edges = set(g.edges)
    for p, a, b in ((pair.path_st, s, t), (pair.path_ts, t, s)):
        if len(p) < 2 or p[0] != a or p[-1] != b or len(set(p)) != len(p):
            return False
        if any(e not in edges for e in _path_edges(p)):
            return False
    if pair.disjointness == VERTEX:
        return not set(pair.path_st[1:-1]) & set(pair.path_ts[1:-1])
    if pair.disjointness == EDGE:
        return not set(_path_edges(pair.path_st)) & set(_path_edges(pair.path_ts))
    raise ValueError(f"unknown disjointness {pair.disjointness!r}")


def dpp_to_cdpp(g: Digraph, s1: int, t1: int, s2: int, t2: int) -> tuple[Digraph, int, int]:
    """Two-pair disjoint paths instance to a vertex-disjoint cycle instance.

    Adds s = n+1 and t = n+2 with edges s->s1, t2->s, t1->t, t->s2.
    """
    if len({s1, t1, s2, t2}) != 4:
        raise VerticesNotDistinct(f"{(s1, t1, s2, t2)}")
    for w in (s1, t1, s2, t2):
        if not 1 <= w <= g.n:
            raise ValueError(f"vertex {w} outside 1..{g.n}")
    s, t = g.n + 1, g.n + 2
    edges = g.edges + ((s, s1), (t2, s), (t1, t), (t, s2))
    return Digraph(g.n + 2, edges, (s,), (t,)), s, t


@dataclass(frozen=True)
class Provenance:
    """Bookkeeping of ``cycle_to_2cnf``: which edge produced which occurrence."""

    s: int
    t: int
    var_of: dict = field(default_factory=dict)
    occ_of: dict = field(default_factory=dict)

    @property
    def edge_of(self) -> dict:
        return {i: e for e, i in self.occ_of.items()}


def cycle_to_2cnf(g: Digraph, s: int, t: int) -> tuple[Formula, Provenance]:
    """Encode the cycle instance ``(g, s, t)``.

    Variable 1 is x0; the other vertices get variables 2, 3, ... in vertex
    order.  Edges map to clauses, in edge order:
    s->v: x0 -> xv,  v->t: xv -> -x0,  t->v: -x0 -> xv,  v->s: xv -> x0,
    v->w: xv -> xw,  s->t: x0 -> -x0,  t->s: -x0 -> x0.
    """
    if s == t:
        raise VerticesNotDistinct("s and t coincide")
    var_of = {}
    nxt = 2
    for v in range(1, g.n + 1):
        if v not in (s, t):
            var_of[v] = nxt
            nxt += 1
    x0 = 1

    def lit(v):
        # literal made true when the implication reaches v; s is x0, t is -x0
        if v == s:
            return x0
        if v == t:
            return -x0
        return var_of[v]

    clauses, occ_of = [], {}
    for u, v in g.edges:
        if u == v:
            raise SelfLoop(f"self-loop at {u}")
        clauses.append(make_clause([-lit(u), lit(v)]))
        occ_of[(u, v)] = len(clauses)
    return Formula(tuple(clauses)), Provenance(s, t, var_of, occ_of)


def _simple_paths(adj: dict, src: int, dst: int, banned: frozenset = frozenset()) -> Iterator[tuple[int, ...]]:
    stack = [(src, (src,))]
    while stack:
        u, p = stack.pop()
        if u == dst:
            yield p
            continue
        for v in reversed(adj.get(u, ())):
            if v not in p and v not in banned:
                stack.append((v, p + (v,)))


def _adjacency(edges) -> dict:
    adj: dict[int, list[int]] = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
    for lst in adj.values():
        lst.sort()
    return adj


def _search_cycle(edges, s: int, t: int, mode: str) -> Optional[CyclePair]:
    adj = _adjacency(edges)
    for p in _simple_paths(adj, s, t):
        if mode == VERTEX:
            banned = frozenset(p[1:-1])
            for q in _simple_paths(adj, t, s, banned):
                return CyclePair(p, q, VERTEX)
        else:
            used = set(_path_edges(p))
            rest = _adjacency(e for e in edges if e not in used)
            for q in _simple_paths(rest, t, s):
                return CyclePair(p, q, EDGE)
    return None


def brute_force_cycle(g: Digraph, s: int, t: int, mode: str = VERTEX, bound: int = 10) -> Optional[CyclePair]:
    """Exhaustive search over simple paths; None when no disjoint pair exists."""
    if g.n > bound:
        raise TooLarge(f"{g.n} vertices exceed the bound {bound}")
    if mode not in (VERTEX, EDGE):
        raise ValueError(f"unknown mode {mode!r}")
    return _search_cycle(g.edges, s, t, mode)


def brute_force_dpp(g: Digraph, s1: int, t1: int, s2: int, t2: int) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Vertex-disjoint paths s1 ~> t1 and s2 ~> t2, or None."""
    adj = _adjacency(g.edges)
    for p in _simple_paths(adj, s1, t1, frozenset([s2, t2])):
        for q in _simple_paths(adj, s2, t2, frozenset(p)):
            return p, q
    return None


def refutation_to_cycle(r: Derivation, prov: Provenance, mode: str = VERTEX) -> CyclePair:
    """Recover a disjoint cycle from a refutation of an encoded instance.

    The inputs the refutation uses are mapped back to edges; by the encoding
    argument they contain the required cycle, which is then found by
    exhaustive search restricted to those edges.
    """
    edge_of = prov.edge_of
    used = r.premises()
    unknown = sorted(i for i in used if i not in edge_of)
    if unknown:
        raise NotFromReduction(f"occurrence {unknown[0]} has no edge")
    edges = [edge_of[i] for i in sorted(used)]
    pair = _search_cycle(edges, prov.s, prov.t, mode)
    if pair is None:
        raise NotFromReduction("the refutation's inputs contain no disjoint cycle")
    return pair


def gen_random_digraph(n: int, p: float, seed: int) -> Digraph:
    """Each ordered pair u != v becomes an edge independently with probability p;
    vertex 1 is s and vertex 2 is t."""
    if n < 2:
        raise ValueError("need at least two vertices")
    if not 0 <= p <= 1:
        raise ValueError("edge probability outside [0, 1]")
    rng = random.Random(seed)
    edges = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v and rng.random() < p]
    return Digraph(n, tuple(edges), (1,), (2,))


def gen_random_2cnf(n: int, m: int, seed: int, unit_fraction: float = 0.0) -> Formula:
    """``m`` clauses over variables ``1..n``; binary clauses on two distinct
    variables, or units with probability ``unit_fraction``."""
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    rng = random.Random(seed)
    clauses = []
    for _ in range(m):
        if n == 1 or rng.random() < unit_fraction:
            clauses.append((rng.randint(1, n) * rng.choice((1, -1)),))
        else:
            a, b = rng.sample(range(1, n + 1), 2)
            clauses.append(make_clause([a * rng.choice((1, -1)), b * rng.choice((1, -1))]))
    return Formula(tuple(clauses))


def parse_digraph(data: Union[str, bytes]) -> Digraph:
    """Lines ``d <n>``, ``e <u> <v>``, ``s <u>``, ``t <v>``; ``c`` starts a comment."""
    if isinstance(data, bytes):
        data = data.decode("ascii", errors="replace")
    n = None
    edges, sources, targets = [], [], []
    for lineno, line in enumerate(data.splitlines(), 1):
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        try:
            nums = [int(x) for x in parts[1:]]
        except ValueError:
            raise FormatSyntaxError(f"line {lineno}: bad number in {line!r}") from None
        kind = parts[0]
        if kind == "d" and len(nums) == 1 and n is None:
            n = nums[0]
        elif n is None:
            raise FormatSyntaxError(f"line {lineno}: expected 'd <n>' first")
        elif kind == "e" and len(nums) == 2:
            edges.append(tuple(nums))
        elif kind == "s" and len(nums) == 1:
            sources.append(nums[0])
        elif kind == "t" and len(nums) == 1:
            targets.append(nums[0])
        else:
            raise FormatSyntaxError(f"line {lineno}: cannot parse {line!r}")
    if n is None:
        raise FormatSyntaxError("missing 'd <n>' line")
    try:
        return Digraph(n, tuple(edges), tuple(sources), tuple(targets))
    except ValueError as e:
        raise FormatSyntaxError(str(e)) from None


def write_digraph(g: Digraph) -> bytes:
    lines = [f"d {g.n}"]
    lines += [f"e {u} {v}" for u, v in g.edges]
    lines += [f"s {w}" for w in g.sources]
    lines += [f"t {w}" for w in g.targets]
    return ("\n".join(lines) + "\n").encode("ascii")


def write_cycle_pair(pair: CyclePair) -> str:
    return (
        f"mode {pair.disjointness}\n"
        f"st {' '.join(map(str, pair.path_st))}\n"
        f"ts {' '.join(map(str, pair.path_ts))}\n"
    )
