"""Minimal unsatisfiability, splittings and refutations of MU(1) formulas."""
from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .core import EMPTY, Clause, Formula, Literal, deficiency, make_clause, subformula
from .errors import NoSplit, PreconditionViolated, ProvenanceLost, RorError
from .igraph import is_sat
from .resolution import Derivation, ProofBuilder, fold


def is_minimal_unsat(f: Formula) -> bool:
    """Unsatisfiable, and dropping any single occurrence makes it satisfiable."""
    if is_sat(f):
        return False
    ids = list(f.ids)
    for i in ids:
        if not is_sat(subformula(f, [j for j in ids if j != i])):
            return False
    return True


def mu_class(f: Formula) -> Optional[int]:
    """Deficiency ``k`` when ``f`` is in MU(k), otherwise None."""
    return deficiency(f) if is_minimal_unsat(f) else None


def _require_mu(f: Formula):
    if not is_minimal_unsat(f):
        raise PreconditionViolated("formula is not minimal unsatisfiable")


# -- unit-clause structure -------------------------------------------------


@dataclass(frozen=True)
class UnitShape:
    """Decomposition of an MU 2CNF formula around its unit clauses.

    ``two-unit-chain``: ``chain`` runs from one unit through the implication
    chain to the other unit.  ``one-unit-y``: ``stem`` runs from the unit to
    the clause ending in K; ``branch1`` and ``branch2`` both start with a
    clause containing -K and end in R and -R respectively.
    """

    kind: str
    chain: tuple[int, ...] = ()
    stem: tuple[int, ...] = ()
    branch1: tuple[int, ...] = ()
    branch2: tuple[int, ...] = ()


def _other(c: Clause, lit: Literal) -> Literal:
    return c[1] if c[0] == lit else c[0]


def unit_shape(f: Formula) -> UnitShape:
    _require_mu(f)
    units = [i for i, c in f if len(c) == 1]
    if not units:
        return UnitShape("no-unit")
    if len(units) > 2:
        raise PreconditionViolated("more than two unit clauses")
    unused = {i for i, c in f if len(c) == 2}

    def step(cur):
        return sorted(i for i in unused if -cur in f.clause(i))

    seen: set[Literal] = set()

    def visit(lit):
        if lit in seen:
            raise PreconditionViolated(f"literal {lit} repeats; not in normal form")
        seen.add(lit)

    if len(units) == 2:
        u1, u2 = units
        cur, k = f.clause(u1)[0], f.clause(u2)[0]
        chain = [u1]
        visit(cur)
        while -cur != k:
            nxt = step(cur)
            if len(nxt) != 1:
                raise PreconditionViolated("chain does not continue uniquely")
            unused.discard(nxt[0])
            chain.append(nxt[0])
            cur = _other(f.clause(nxt[0]), -cur)
            visit(cur)
        chain.append(u2)
        if unused:
            raise PreconditionViolated("clauses left outside the chain")
        return UnitShape("two-unit-chain", chain=tuple(chain))

    u = units[0]
    cur = f.clause(u)[0]
    stem = [u]
    visit(cur)
    while True:
        nxt = step(cur)
        if len(nxt) == 2:
            break
        if len(nxt) != 1:
            raise PreconditionViolated("stem does not continue uniquely")
        unused.discard(nxt[0])
        stem.append(nxt[0])
        cur = _other(f.clause(nxt[0]), -cur)
        visit(cur)
    k = cur
    # walk the loop K ~> -K through both branch clauses
    first, last = step(k)
    unused.discard(first)
    loop = [first]
    cur = _other(f.clause(first), -k)
    visit(cur)
    while cur != -k:
        nxt = step(cur)
        if len(nxt) != 1:
            raise PreconditionViolated("branch does not continue uniquely")
        unused.discard(nxt[0])
        loop.append(nxt[0])
        cur = _other(f.clause(nxt[0]), -cur)
        if cur != -k:
            visit(cur)
    if unused or loop[-1] != last:
        raise PreconditionViolated("clauses left outside the Y shape")
    h = len(loop) - len(loop) // 2
    return UnitShape(
        "one-unit-y",
        stem=tuple(stem),
        branch1=tuple(loop[:h]),
        branch2=tuple(reversed(loop[h:])),
    )


def mu_unit_ror(f: Formula) -> Derivation:
    """Read-once refutation of an MU 2CNF formula that has a unit clause."""
    shape = unit_shape(f)
    b = ProofBuilder(f)
    if f.clauses == (EMPTY,):
        return b.derivation(f.ids[0])
    if shape.kind == "two-unit-chain":
        return b.derivation(fold(b, shape.chain))
    if shape.kind != "one-unit-y":
        raise PreconditionViolated("formula has no unit clause")
    to_r = fold(b, shape.branch1)
    to_not_r = fold(b, shape.branch2)
    not_k = b.resolve(to_r, to_not_r)
    return b.derivation(fold(b, [not_k, *reversed(shape.stem)]))


# -- splittings ------------------------------------------------------------


@dataclass(frozen=True)
class SplitPair:
    var: int
    f_x: Formula
    f_negx: Formula
    shared: frozenset[int]

    @property
    def disjunctive(self) -> bool:
        return not self.shared

    @property
    def variable_disjunctive(self) -> bool:
        return self.disjunctive and not (self.f_x.variables & self.f_negx.variables)


def _reduce_to_mu(f: Formula, order: Sequence[int]) -> Formula:
    keep = list(f.ids)
    for i in order:
        trial = [j for j in keep if j != i]
        if not is_sat(subformula(f, trial)):
            keep = trial
    return subformula(f, keep)


def _side(f: Formula, lit: Literal) -> Formula:
    pairs, stripped = [], {}
    for i, c in f:
        if -lit in c:
            continue
        if lit in c:
            pairs.append((i, tuple(l for l in c if l != lit)))
            stripped[i] = lit
        else:
            pairs.append((i, c))
    return Formula(
        tuple(c for _, c in pairs),
        tuple(i for i, _ in pairs),
        id_bound=f.id_bound,
        stripped=stripped,
    )


def split_over(f: Formula, x: int, order: Optional[Iterable[int]] = None, check_mu: bool = True) -> SplitPair:
    """Splitting of the MU formula ``f`` over variable ``x``.

    Each side strips ``x`` (resp. ``-x``) and is reduced to a minimal
    unsatisfiable subset by greedy deletion, ascending occurrence id unless
    ``order`` is given.
    """
    x = abs(x)
    if check_mu:
        _require_mu(f)
    if f.nvars <= 1:
        raise PreconditionViolated("a formula over one variable is a leaf")
    occurring = {l for c in f.clauses for l in c}
    if x not in occurring or -x not in occurring:
        raise PreconditionViolated(f"variable {x} does not occur in both polarities")
    order = list(order) if order is not None else sorted(f.ids)
    sides = []
    for lit in (x, -x):
        cand = _side(f, lit)
        if is_sat(cand):
            raise NoSplit(f"side {lit} is satisfiable")
        sides.append(_reduce_to_mu(cand, [i for i in order if i in cand]))
    fx, fnx = sides
    sigma_x = set(fx.ids) - set(fx.stripped)
    sigma_nx = set(fnx.ids) - set(fnx.stripped)
    pair = SplitPair(x, fx, fnx, frozenset(sigma_x & sigma_nx))
    # both sides carry a unit clause, hence lie in MU(1)
    assert deficiency(fx) == 1 and deficiency(fnx) == 1, pair
    return pair


def reconstruct(side: Formula, lit: Literal) -> Formula:
    """Put ``lit`` back into the clauses it was stripped from."""
    if not side.stripped:
        return side
    if any(l != lit for l in side.stripped.values()):
        raise ProvenanceLost(f"side was not stripped of {lit}")
    clauses = tuple(make_clause(c + (lit,)) if i in side.stripped else c for i, c in side)
    return Formula(clauses, side.ids, id_bound=side.id_bound)


@dataclass
class SplitTree:
    formula: Formula
    var: Optional[int] = None
    pos: Optional["SplitTree"] = None
    neg: Optional["SplitTree"] = None

    @property
    def is_leaf(self) -> bool:
        return self.var is None

    def leaves(self) -> list[Formula]:
        if self.is_leaf:
            return [self.formula]
        return self.pos.leaves() + self.neg.leaves()

    def depth(self) -> int:
        return 0 if self.is_leaf else 1 + max(self.pos.depth(), self.neg.depth())


def split_tree(f: Formula, check_mu: bool = True) -> Optional[SplitTree]:
    """Complete disjunctive splitting tree, or None when no variable splits
    disjunctively."""
    if check_mu:
        _require_mu(f)
    if f.nvars <= 1:
        return SplitTree(f)
    for x in sorted(f.variables):
        try:
            pair = split_over(f, x, check_mu=False)
        except NoSplit:
            continue
        if not pair.disjunctive:
            continue
        pos = split_tree(pair.f_x, check_mu=False)
        neg = split_tree(pair.f_negx, check_mu=False)
        if pos is not None and neg is not None:
            return SplitTree(f, x, pos, neg)
    return None


# -- MU(1) -----------------------------------------------------------------


def mu1_var_ror(f: Formula, verify: bool = False) -> Derivation:
    """Var-once refutation of an MU(1) formula.

    Builds the variable-disjunctive splitting tree bottom-up: a variable that
    occurs exactly once in each polarity is the root of a smallest subtree,
    so resolving its two clauses contracts that subtree.  The last step
    resolves the two units of the root split.  Near-linear in the size of
    ``f``; ``verify`` adds the quadratic minimal-unsatisfiability test.
    """
    if verify and mu_class(f) != 1:
        raise PreconditionViolated("formula is not in MU(1)")
    if deficiency(f) != 1:
        raise PreconditionViolated("deficiency is not 1")
    b = ProofBuilder(f)
    if f.has_empty_clause():
        if len(f) != 1:
            raise PreconditionViolated("empty clause beside other clauses")
        return b.derivation(f.ids[0])
    pool: dict[int, Clause] = dict(f)
    occ: dict[Literal, set[int]] = {}
    for i, c in pool.items():
        for l in c:
            occ.setdefault(l, set()).add(i)
            occ.setdefault(-l, set())
    heap = sorted(f.variables)
    while heap:
        v = heapq.heappop(heap)
        if len(occ[v]) != 1 or len(occ[-v]) != 1:
            continue
        (a,), (c,) = occ[v], occ[-v]
        try:
            r = b.resolve(a, c, v)
        except RorError as e:
            raise PreconditionViolated(str(e)) from None
        for ref in (a, c):
            for l in pool.pop(ref):
                occ[l].discard(ref)
        res = b.clause(r)
        if not res:
            if pool:
                raise PreconditionViolated("refuted before using every clause")
            return b.derivation(r)
        pool[r] = res
        for l in res:
            occ[l].add(r)
            heapq.heappush(heap, abs(l))
    raise PreconditionViolated("no variable occurs once in each polarity")


def gen_mu1(n: int, seed: int) -> Formula:
    """Random MU(1) 2CNF formula over ``n`` variables.

    Grown by inverting variable-disjunctive splittings: two MU(1) formulas on
    disjoint variables are joined by a fresh variable added positively to some
    units (or the empty clause) of one and negatively to some of the other.
    """
    rng = random.Random(seed)
    counter = [0]

    def grow(k: int, need: int) -> list[list[int]]:
        # result holds at least ``need`` clauses of length <= 1
        if k == 0:
            return [[]]
        k1 = rng.randint(0, k - 1)
        k2 = k - 1 - k1
        if k1 == 0 or k2 == 0:
            needs = (1, 1) if need <= 1 or (k1 == 0 and k2 == 0) else (2, 2)
        elif need == 2:
            needs = (2, 2)
        elif need == 1:
            needs = rng.choice(((1, 2), (2, 1)))
        else:
            needs = (1, 1)
        left, right = grow(k1, needs[0]), grow(k2, needs[1])
        counter[0] += 1
        x = counter[0]
        cl = [i for i, c in enumerate(left) if len(c) <= 1]
        cr = [i for i, c in enumerate(right) if len(c) <= 1]

        def short(side, cand, picked):
            # short clauses remaining after the fresh literal is added
            return sum(1 for i in cand if (i in picked) == (not side[i]))

        for attempt in range(21):
            if attempt < 20:
                ls, rs = set(_pick(rng, cl)), set(_pick(rng, cr))
            else:
                ls, rs = set(cl[:1]), set(cr[:1])
            if short(left, cl, ls) + short(right, cr, rs) >= need:
                break
        out = [c + [x] if i in ls else c for i, c in enumerate(left)]
        out += [c + [-x] if i in rs else c for i, c in enumerate(right)]
        return out

    clauses = grow(n, 0)
    used = sorted({abs(l) for c in clauses for l in c})
    names = list(range(1, n + 1))
    rng.shuffle(names)
    rename = {v: names[k] * rng.choice((1, -1)) for k, v in enumerate(used)}
    rng.shuffle(clauses)
    return Formula.from_lists([[rename[abs(l)] if l > 0 else -rename[abs(l)] for l in c] for c in clauses])


def _pick(rng, items):
    k = rng.randint(1, len(items))
    return rng.sample(items, k)
