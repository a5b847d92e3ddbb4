"""Resolution steps, derivations and the proof checker."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .core import EMPTY, Clause, Formula, make_clause
from .errors import (
    BrokenChain,
    PivotMissing,
    ResolventTautological,
    TautologyError,
    UnknownId,
)


def resolve(c1: Clause, c2: Clause, pivot: int) -> Clause:
    """Resolvent of ``c1`` and ``c2`` on variable ``pivot``.

    The premises may come in either orientation.  Raises PivotMissing when the
    pivot does not occur with opposite signs and ResolventTautological when
    the remaining literals clash.
    """
    if pivot in c1 and -pivot in c2:
        pos, negc = c1, c2
    elif -pivot in c1 and pivot in c2:
        pos, negc = c2, c1
    else:
        raise PivotMissing(f"variable {pivot} does not clash between {c1} and {c2}")
    rest = [l for l in pos if l != pivot] + [l for l in negc if l != -pivot]
    try:
        return make_clause(rest)
    except TautologyError:
        raise ResolventTautological(f"resolving {c1} and {c2} on {pivot}") from None


def clashing_vars(c1: Clause, c2: Clause) -> list[int]:
    return [abs(l) for l in c1 if -l in c2]


@dataclass(frozen=True)
class Step:
    id: int
    left: int
    right: int
    pivot: int
    resolvent: Clause


@dataclass(frozen=True)
class Derivation:
    """A sequence of resolution steps whose conclusion is the clause at ``root``.

    ``root`` is the id of the last step, or an input occurrence id when the
    derivation is empty.  A refutation is a derivation concluding ``()``.
    """

    steps: tuple[Step, ...]
    root: int
    conclusion: Clause

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def is_refutation(self) -> bool:
        return self.conclusion == EMPTY

    def premises(self) -> set[int]:
        """Input occurrence ids reachable from the root."""
        by_id = {s.id: s for s in self.steps}
        seen, out, todo = set(), set(), [self.root]
        while todo:
            r = todo.pop()
            if r in seen:
                continue
            seen.add(r)
            if r in by_id:
                todo.extend((by_id[r].left, by_id[r].right))
            else:
                out.add(r)
        return out


Refutation = Derivation


class ProofBuilder:
    """Accumulates resolution steps over the occurrences of ``f``.

    Derived ids start after ``f.id_bound`` so they never shadow an input.
    """

    def __init__(self, f: Formula):
        self.formula = f
        self.clauses: dict[int, Clause] = dict(f)
        self.steps: list[Step] = []
        self._next = f.id_bound + 1

    def clause(self, ref: int) -> Clause:
        try:
            return self.clauses[ref]
        except KeyError:
            raise UnknownId(ref) from None

    def resolve(self, a: int, b: int, pivot: Optional[int] = None) -> int:
        c1, c2 = self.clause(a), self.clause(b)
        if pivot is None:
            clash = clashing_vars(c1, c2)
            if not clash:
                raise PivotMissing(f"{c1} and {c2} do not clash")
            if len(clash) > 1:
                raise ResolventTautological(f"{c1} and {c2} clash twice")
            pivot = clash[0]
        res = resolve(c1, c2, pivot)
        if -pivot in c1:
            a, b = b, a
        sid = self._next
        self._next += 1
        self.steps.append(Step(sid, a, b, pivot, res))
        self.clauses[sid] = res
        return sid

    def include(self, d: Derivation) -> int:
        """Replay ``d`` with fresh step ids; returns the new root reference."""
        remap: dict[int, int] = {}
        for s in d.steps:
            remap[s.id] = self.resolve(remap.get(s.left, s.left), remap.get(s.right, s.right), s.pivot)
        return remap.get(d.root, d.root)

    def derivation(self, root: int) -> Derivation:
        return Derivation(tuple(self.steps), root, self.clause(root))


def fold(builder: ProofBuilder, refs: Sequence[int]) -> int:
    """Resolve ``refs`` left to right, each against the running resolvent."""
    acc = refs[0]
    for r in refs[1:]:
        acc = builder.resolve(acc, r)
    return acc


@dataclass(frozen=True)
class CheckMode:
    kind: str = "unrestricted"
    k: int = 0

    KINDS = ("unrestricted", "read-once", "var-once", "copy")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown check mode {self.kind!r}")
        if self.kind == "copy" and self.k < 1:
            raise ValueError("copy bound must be positive")

    @classmethod
    def copy_bound(cls, k: int) -> "CheckMode":
        return cls("copy", k)

    @classmethod
    def parse(cls, text: str) -> "CheckMode":
        if text in ("none", "unrestricted"):
            return UNRESTRICTED
        if text == "read-once":
            return READ_ONCE
        if text == "var-once":
            return VAR_ONCE
        if text.startswith("copy:"):
            try:
                return cls.copy_bound(int(text[5:]))
            except ValueError:
                pass
        raise ValueError(f"bad check mode {text!r}")

    def __str__(self) -> str:
        return f"copy:{self.k}" if self.kind == "copy" else self.kind


UNRESTRICTED = CheckMode("unrestricted")
READ_ONCE = CheckMode("read-once")
VAR_ONCE = CheckMode("var-once")


@dataclass
class CheckReport:
    valid: bool
    usage: dict[int, int] = field(default_factory=dict)
    pivot_counts: dict[int, int] = field(default_factory=dict)
    copies: dict[int, int] = field(default_factory=dict)
    violations: list[tuple[int, str]] = field(default_factory=list)


def _unfolded_copies(f: Formula, r: Derivation) -> dict[int, int]:
    """Input uses in the tree unfolding of ``r`` rooted at ``r.root``."""
    by_id = {s.id: s for s in r.steps}
    mult = Counter({r.root: 1})
    for s in reversed(r.steps):
        m = mult.get(s.id, 0)
        if m:
            mult[s.left] += m
            mult[s.right] += m
    return {i: mult[i] for i in f.ids if mult.get(i) and i not in by_id}


def check(f: Formula, r: Derivation, mode: CheckMode = UNRESTRICTED, goal: Clause = EMPTY) -> CheckReport:
    """Validate ``r`` against ``f`` under ``mode``; failures are reported, not raised."""
    known: dict[int, Clause] = dict(f)
    usage: Counter = Counter()
    pivots: Counter = Counter()
    violations: list[tuple[int, str]] = []
    last = f.id_bound
    for s in r.steps:
        if s.id in known or s.id <= last:
            violations.append((s.id, "nonmonotone step id"))
        last = max(last, s.id)
        missing = [ref for ref in (s.left, s.right) if ref not in known]
        if missing:
            violations.append((s.id, f"dangling reference {missing[0]}"))
            known[s.id] = s.resolvent
            continue
        try:
            expected = resolve(known[s.left], known[s.right], s.pivot)
        except (PivotMissing, ResolventTautological) as e:
            violations.append((s.id, f"illegal step: {e}"))
        else:
            if expected != s.resolvent:
                violations.append((s.id, "resolvent mismatch"))
        known[s.id] = s.resolvent
        for ref in (s.left, s.right):
            usage[ref] += 1
            if mode.kind == "read-once" and usage[ref] == 2:
                violations.append((s.id, f"premise {ref} used twice"))
        pivots[s.pivot] += 1
        if mode.kind == "var-once" and pivots[s.pivot] == 2:
            violations.append((s.id, f"variable {s.pivot} used twice as pivot"))

    final_id = r.steps[-1].id if r.steps else r.root
    if r.root not in known:
        violations.append((final_id, f"dangling root {r.root}"))
    elif known[r.root] != goal:
        violations.append((final_id, "conclusion is not the goal clause"))

    copies = _unfolded_copies(f, r) if r.root in known else {}
    if mode.kind == "copy":
        for i, n in sorted(copies.items()):
            if n > mode.k:
                violations.append((final_id, f"input {i} used {n} times"))

    return CheckReport(not violations, dict(usage), dict(pivots), copies, violations)


def chain_to_derivation(path, f: Formula, builder: Optional[ProofBuilder] = None) -> Derivation:
    """Fold an implication path into resolution steps.

    ``path.edges`` is a sequence of ``(u, v, occ)``.  The conclusion is
    ``(~start v end)``, or ``(end)`` when ``start == -end``; the fold stops early
    when the running clause already subsumes that target.
    """
    edges = list(path.edges)
    if not edges:
        raise BrokenChain("empty path")
    b = builder or ProofBuilder(f)
    for k, (u, v, occ) in enumerate(edges):
        if k and edges[k - 1][1] != u:
            raise BrokenChain(f"edge {k} does not continue the path")
        try:
            c = f.clause(occ)
        except UnknownId:
            raise BrokenChain(f"occurrence {occ} not in formula") from None
        try:
            expected = make_clause([-u, v])
        except TautologyError:
            raise BrokenChain(f"edge {u}->{v} is not an implication") from None
        if c != expected:
            raise BrokenChain(f"occurrence {occ} does not induce {u}->{v}")
    start = edges[0][0]
    acc = edges[0][2]
    for u, v, occ in edges[1:]:
        cur = b.clause(acc)
        if u not in cur:
            break
        if v == start:
            raise BrokenChain("path returns to its start literal")
        acc = b.resolve(acc, occ, abs(u))
        if not b.clause(acc):
            break
    return b.derivation(acc)


def unfold_tree(f: Formula, r: Derivation) -> tuple[Formula, Derivation]:
    """Tree-like unfolding of ``r``: one fresh input copy per use.

    Returns a multiset formula of the copies (each remembering its source
    clause) and a read-once derivation over it with the same conclusion.
    """
    by_id = {s.id: s for s in r.steps}
    copies: list[Clause] = []

    def walk(ref):
        # iterative post-order to stay clear of the recursion limit
        stack = [(ref, False)]
        order = []
        while stack:
            node, done = stack.pop()
            if node in by_id and not done:
                s = by_id[node]
                stack.append((node, True))
                stack.append((s.right, False))
                stack.append((s.left, False))
            else:
                order.append(node)
        return order

    # plan: leaves become fresh copies, internal nodes are re-resolved
    nodes = walk(r.root)
    tmp_steps = []
    val: list[object] = []
    for node in nodes:
        if node in by_id:
            s = by_id[node]
            right = val.pop()
            left = val.pop()
            tmp_steps.append((left, right, s.pivot))
            val.append(("s", len(tmp_steps) - 1))
        else:
            copies.append(f.clause(node))
            val.append(("c", len(copies)))
    g = Formula(tuple(copies))
    b = ProofBuilder(g)
    resolved: list[int] = []
    for left, right, pivot in tmp_steps:
        refs = [x[1] if x[0] == "c" else resolved[x[1]] for x in (left, right)]
        resolved.append(b.resolve(refs[0], refs[1], pivot))
    root = val[-1]
    root_ref = root[1] if root[0] == "c" else resolved[root[1]]
    return g, b.derivation(root_ref)
