"""Decision procedures for read-once and var-once refutability, with
certificates, plus brute-force oracles for cross-validation."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .analysis import is_minimal_unsat, mu_unit_ror, split_over
from .core import EMPTY, Clause, Formula, Literal, make_clause
from .errors import NoSplit, PreconditionViolated, TautologyError
from .igraph import decide_sat, derive_unit_read_once
from .resolution import (
    READ_ONCE,
    VAR_ONCE,
    CheckMode,
    Derivation,
    ProofBuilder,
    check,
    fold,
)

YES, NO, INCONCLUSIVE = "yes", "no", "inconclusive"


@dataclass(frozen=True)
class SearchBudget:
    max_states: int = 10**6
    deterministic: bool = True

    def __post_init__(self):
        if self.max_states < 1:
            raise ValueError("max_states must be positive")


@dataclass(frozen=True)
class Verdict:
    status: str
    certificate: Optional[Derivation] = None
    states: int = 0

    def __bool__(self) -> bool:
        return self.status == YES

    @property
    def is_yes(self) -> bool:
        return self.status == YES

    @property
    def is_no(self) -> bool:
        return self.status == NO


class _OutOfStates(Exception):
    pass


class _Counter:
    def __init__(self, budget: SearchBudget):
        self.limit = budget.max_states
        self.n = 0

    def tick(self, k: int = 1):
        self.n += k
        if self.n > self.limit:
            raise _OutOfStates


def _certified(f: Formula, d: Derivation, mode: CheckMode, states: int) -> Verdict:
    report = check(f, d, mode)
    assert report.valid, report.violations
    return Verdict(YES, d, states)


def _empty_clause_verdict(f: Formula, mode: CheckMode) -> Optional[Verdict]:
    for i, c in f:
        if not c:
            return _certified(f, Derivation((), i, EMPTY), mode, 0)
    return None


# -- var-once --------------------------------------------------------------


def decide_var_ror(f: Formula, budget: SearchBudget = SearchBudget()) -> Verdict:
    """Does ``f`` have a refutation in which every variable is a pivot at most once?

    Exact dynamic program over pairs (C, W): can some clause contained in C be
    derived with pivots drawn from W, each used once?  A pivot y splits W minus y
    between the two premises, which derive clauses inside ``{y} + A`` and
    ``{-y} + B`` with A, B taken from C.  Literals of C never serve as pivots
    below it, since a pivot cannot be reintroduced once eliminated.
    """
    done = _empty_clause_verdict(f, VAR_ONCE)
    if done:
        return done
    counter = _Counter(budget)
    inputs = [(i, frozenset(c)) for i, c in f]
    memo: dict = {}

    def base(c_set):
        for i, c in inputs:
            if c <= c_set:
                return ("leaf", i)
        return None

    def solve(c_set: frozenset, w: frozenset):
        key = (c_set, w)
        if key in memo:
            return memo[key]
        counter.tick()
        memo[key] = None
        found = base(c_set)
        if found is None:
            picks = [frozenset()] if not c_set else [frozenset([l]) for l in sorted(c_set)]
            ws = sorted(w)
            for y in ws:
                rest = [v for v in ws if v != y]
                for bits in range(1 << len(rest)):
                    w1 = frozenset(v for k, v in enumerate(rest) if bits >> k & 1)
                    w2 = frozenset(rest) - w1
                    for a in picks:
                        sub1 = solve(a | {y}, w1)
                        if sub1 is None:
                            continue
                        for b in picks:
                            sub2 = solve(b | {-y}, w2)
                            if sub2 is not None:
                                found = ("step", y, sub1, sub2)
                                break
                        if found:
                            break
                    if found:
                        break
                if found:
                    break
        memo[key] = found
        return found

    try:
        plan = solve(frozenset(), frozenset(f.variables))
    except _OutOfStates:
        return Verdict(INCONCLUSIVE, states=counter.n)
    if plan is None:
        return Verdict(NO, states=counter.n)
    b = ProofBuilder(f)
    root = _emit_var_plan(b, plan)
    return _certified(f, b.derivation(root), VAR_ONCE, counter.n)


def _emit_var_plan(b: ProofBuilder, plan) -> int:
    if plan[0] == "leaf":
        return plan[1]
    _, y, p1, p2 = plan
    r1 = _emit_var_plan(b, p1)
    if y not in b.clause(r1):
        return r1
    r2 = _emit_var_plan(b, p2)
    if -y not in b.clause(r2):
        return r2
    return b.resolve(r1, r2, y)


# -- read-once -------------------------------------------------------------


@dataclass(frozen=True)
class _Gadget:
    """Clauses deriving the unit ``(lit)`` read-once, or refuting outright.

    ``kind`` is ``unit`` (the input unit ``(lit)``), ``chain`` (a source clause,
    an implication path and a sink clause) or ``y`` (a source, a stem to K and
    a loop from K to -K).
    """

    lit: Literal
    kind: str
    ids: frozenset
    plan: tuple
    self_refuting: bool = False


def _gadgets(f: Formula, lit: Literal, counter: _Counter) -> Iterator[_Gadget]:
    x = abs(lit)
    succ: dict[Literal, list[tuple[Literal, int]]] = {}
    sources: list[tuple[int, Literal, bool]] = []
    sink_unit: dict[Literal, list[int]] = {}
    sink_lit: dict[Literal, list[int]] = {}
    for i, c in f:
        if -lit in c:
            continue
        if c == (lit,):
            yield _Gadget(lit, "unit", frozenset([i]), (i,))
            continue
        if lit in c:
            (a,) = [l for l in c if l != lit]
            sources.append((i, a, False))
            sink_lit.setdefault(-a, []).append(i)
        elif len(c) == 1:
            sources.append((i, c[0], True))
            sink_unit.setdefault(-c[0], []).append(i)
        else:
            p, q = c
            succ.setdefault(-p, []).append((q, i))
            succ.setdefault(-q, []).append((p, i))

    def paths(start, banned_vars, used):
        # simple paths from ``start`` through fresh variables, as (end, edges)
        stack = [(start, ())]
        while stack:
            v, edges = stack.pop()
            counter.tick()
            yield v, edges
            seen = banned_vars | {abs(e[0]) for e in edges}
            for w, i in reversed(succ.get(v, ())):
                if abs(w) in seen or abs(w) == abs(start) or i in used:
                    continue
                if any(i == e[1] for e in edges):
                    continue
                stack.append((w, edges + ((w, i),)))

    for src, a, src_is_unit in sources:
        for end, edges in paths(a, frozenset([x]), {src}):
            path_ids = [i for _, i in edges]
            for sink_is_unit, table in ((False, sink_lit), (True, sink_unit)):
                for snk in table.get(end, ()):
                    if snk == src or snk in path_ids:
                        continue
                    ids = frozenset([src, *path_ids, snk])
                    yield _Gadget(lit, "chain", ids, (src, *path_ids, snk), src_is_unit and sink_is_unit)
            # ``end`` as K: a loop K ~> -K through fresh variables
            stem_vars = frozenset([x, abs(a)]) | {abs(w) for w, _ in edges}
            stem_ids = {src, *path_ids}
            k = end
            for first, i0 in succ.get(k, ()):
                if abs(first) in stem_vars or i0 in stem_ids:
                    continue
                for last, loop_edges in paths(first, stem_vars, stem_ids | {i0}):
                    loop_ids = [i0] + [i for _, i in loop_edges]
                    for w, i in succ.get(last, ()):
                        if w != -k or i in stem_ids or i in loop_ids:
                            continue
                        ids = frozenset([*stem_ids, *loop_ids, i])
                        yield _Gadget(lit, "y", ids, ((src, *path_ids), (*loop_ids, i)), src_is_unit)


def _emit_gadget(b: ProofBuilder, g: _Gadget) -> int:
    if g.kind == "unit":
        return g.plan[0]
    if g.kind == "chain":
        return fold(b, g.plan)
    stem, loop = g.plan
    not_k = fold(b, loop)
    return fold(b, [not_k, *reversed(stem)])


def _minimal_families(gadgets: list[_Gadget]) -> list[_Gadget]:
    seen: dict[frozenset, _Gadget] = {}
    for g in gadgets:
        seen.setdefault(g.ids, g)
    sets = sorted(seen.values(), key=lambda g: len(g.ids))
    out: list[_Gadget] = []
    for g in sets:
        if not any(h.ids <= g.ids for h in out):
            out.append(g)
    return out


def decide_ror(f: Formula, budget: SearchBudget = SearchBudget()) -> Verdict:
    """Does ``f`` have a refutation using every clause, input or derived, at most once?

    Searches for a variable x and two clause-disjoint groups of clauses: one
    deriving ``(x)`` and one deriving ``(-x)``, each shaped like a minimal
    unsatisfiable 2CNF with unit clauses once x is removed (a chain between
    two units, or a single unit feeding a Y).  Such a pair exists exactly when
    a read-once refutation does.
    """
    done = _empty_clause_verdict(f, READ_ONCE)
    if done:
        return done
    counter = _Counter(budget)
    try:
        for x in sorted(f.variables):
            families = []
            for lit in (x, -x):
                found = []
                for g in _gadgets(f, lit, counter):
                    if g.self_refuting:
                        b = ProofBuilder(f)
                        return _certified(f, b.derivation(_emit_gadget(b, g)), READ_ONCE, counter.n)
                    found.append(g)
                families.append(_minimal_families(found))
            pos, negs = families
            for gp in pos:
                for gn in negs:
                    counter.tick()
                    if gp.ids.isdisjoint(gn.ids):
                        b = ProofBuilder(f)
                        rp = _emit_gadget(b, gp)
                        rn = _emit_gadget(b, gn)
                        return _certified(f, b.derivation(b.resolve(rp, rn, x)), READ_ONCE, counter.n)
    except _OutOfStates:
        return Verdict(INCONCLUSIVE, states=counter.n)
    return Verdict(NO, states=counter.n)


def decide_ror_mu(f: Formula) -> Verdict:
    """Read-once refutability of a minimal unsatisfiable formula in polynomial time.

    Such a formula has a read-once refutation exactly when it splits
    disjunctively over some variable; the splitting is then unique, so one
    greedy split per variable settles the question.
    """
    if not is_minimal_unsat(f):
        raise PreconditionViolated("formula is not minimal unsatisfiable")
    done = _empty_clause_verdict(f, READ_ONCE)
    if done:
        return done
    b = ProofBuilder(f)
    if f.nvars == 1:
        (a, _), (c, _) = list(f)
        return _certified(f, b.derivation(b.resolve(a, c)), READ_ONCE, 1)
    states = 0
    for x in sorted(f.variables):
        states += 1
        try:
            pair = split_over(f, x, check_mu=False)
        except NoSplit:
            continue
        if not pair.disjunctive:
            continue
        rp = b.include(mu_unit_ror(pair.f_x))
        rn = b.include(mu_unit_ror(pair.f_negx))
        return _certified(f, b.derivation(b.resolve(rp, rn, x)), READ_ONCE, states)
    return Verdict(NO, states=states)


# -- copy-bounded ----------------------------------------------------------


def copy2_refutation(f: Formula) -> Derivation:
    """Refutation of an unsatisfiable formula using every input at most twice.

    The smallest variable x with paths ``-x ~> x`` and ``x ~> -x`` yields
    read-once derivations of ``(x)`` and of ``(-x)``; each input occurs at most
    once in either.
    """
    if f.has_empty_clause():
        i = next(i for i, c in f if not c)
        return Derivation((), i, EMPTY)
    res = decide_sat(f)
    if res.sat:
        raise PreconditionViolated("formula is satisfiable")
    x = res.witness
    b = ProofBuilder(f)
    rp = b.include(derive_unit_read_once(f, x))
    rn = b.include(derive_unit_read_once(f, -x))
    d = b.derivation(b.resolve(rp, rn, x))
    report = check(f, d, CheckMode.copy_bound(2))
    assert report.valid, report.violations
    return d


# -- brute-force oracles ---------------------------------------------------


def _resolvents(a: Clause, b: Clause):
    for l in a:
        if -l in b:
            try:
                yield abs(l), make_clause([m for m in a if m != l] + [m for m in b if m != -l])
            except TautologyError:
                continue


def _replay(f: Formula, moves, mode: CheckMode, multiset: bool) -> Derivation:
    b = ProofBuilder(f)
    avail: dict[Clause, list[int]] = {}
    for i, c in f:
        avail.setdefault(c, []).append(i)
    for c1, c2, pivot in moves:
        if multiset:
            r1, r2 = avail[c1].pop(0), avail[c2].pop(0)
        else:
            r1, r2 = avail[c1][0], avail[c2][0]
        r = b.resolve(r1, r2, pivot)
        avail.setdefault(b.clause(r), []).append(r)
    root = b.steps[-1].id if b.steps else next(i for i, c in f if not c)
    d = b.derivation(root)
    report = check(f, d, mode)
    assert report.valid, report.violations
    return d


def brute_force_ror(f: Formula, budget: SearchBudget = SearchBudget()) -> Verdict:
    """Exhaustive read-once search over multisets of available clauses."""
    counter = _Counter(budget)
    failed: set = set()

    def search(state: tuple) -> Optional[list]:
        if EMPTY in state:
            return []
        if state in failed:
            return None
        counter.tick()
        n = len(state)
        for i in range(n):
            if i and state[i] == state[i - 1]:
                continue
            for j in range(i + 1, n):
                if j > i + 1 and state[j] == state[j - 1]:
                    continue
                for pivot, r in _resolvents(state[i], state[j]):
                    rest = state[:i] + state[i + 1 : j] + state[j + 1 :] + (r,)
                    sub = search(tuple(sorted(rest, key=_clause_key)))
                    if sub is not None:
                        return [(state[i], state[j], pivot)] + sub
        failed.add(state)
        return None

    try:
        moves = search(tuple(sorted(f.clauses, key=_clause_key)))
    except _OutOfStates:
        return Verdict(INCONCLUSIVE, states=counter.n)
    if moves is None:
        return Verdict(NO, states=counter.n)
    return Verdict(YES, _replay(f, moves, READ_ONCE, True), counter.n)


def brute_force_var_ror(f: Formula, budget: SearchBudget = SearchBudget()) -> Verdict:
    """Exhaustive var-once search.

    A state is the set of clauses still usable.  After resolving on x every
    clause mentioning x is dropped: x can no longer be eliminated, so such a
    clause never reaches the empty clause.
    """
    counter = _Counter(budget)
    failed: set = set()

    def search(state: frozenset) -> Optional[list]:
        if EMPTY in state:
            return []
        if state in failed:
            return None
        counter.tick()
        for x in sorted({abs(l) for c in state for l in c}):
            pos = sorted((c for c in state if x in c), key=_clause_key)
            negs = sorted((c for c in state if -x in c), key=_clause_key)
            rest = frozenset(c for c in state if x not in c and -x not in c)
            for a in pos:
                for c in negs:
                    try:
                        r = make_clause([m for m in a if m != x] + [m for m in c if m != -x])
                    except TautologyError:
                        continue
                    sub = search(rest | {r})
                    if sub is not None:
                        return [(a, c, x)] + sub
        failed.add(state)
        return None

    try:
        moves = search(frozenset(f.clauses))
    except _OutOfStates:
        return Verdict(INCONCLUSIVE, states=counter.n)
    if moves is None:
        return Verdict(NO, states=counter.n)
    return Verdict(YES, _replay(f, moves, VAR_ONCE, False), counter.n)


def _clause_key(c: Clause):
    return len(c), [(abs(l), l < 0) for l in c]
