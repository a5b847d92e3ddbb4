"""Literals, clauses and formulas.

Literals are non-zero ints in DIMACS style: ``v`` is the positive literal of
variable ``v`` and ``-v`` its complement.  A clause is a tuple of at most two
literals kept in canonical order; the empty tuple is the contradiction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .errors import ArityError, IncompleteAssignment, TautologyError, UnknownId

Literal = int
Clause = tuple[int, ...]

EMPTY: Clause = ()


def var(lit: Literal) -> int:
    return abs(lit)


def neg(lit: Literal) -> Literal:
    return -lit


def lit_key(lit: Literal) -> tuple[int, bool]:
    # (variable, polarity) with the positive literal first
    return abs(lit), lit < 0


def make_clause(lits: Iterable[Literal]) -> Clause:
    """Canonical clause from ``lits``: duplicates merged, sorted by variable.

    Raises TautologyError for complementary literals and ArityError when more
    than two distinct literals remain.
    """
    s = set()
    for lit in lits:
        if not isinstance(lit, int) or lit == 0:
            raise ValueError(f"invalid literal {lit!r}")
        if -lit in s:
            raise TautologyError(f"clause contains {abs(lit)} and {-abs(lit)}")
        s.add(lit)
    if len(s) > 2:
        raise ArityError(f"clause has {len(s)} distinct literals")
    return tuple(sorted(s, key=lit_key))


def clause_str(c: Clause) -> str:
    if not c:
        return "()"
    return "(" + " v ".join(f"x{l}" if l > 0 else f"~x{-l}" for l in c) + ")"


@dataclass(frozen=True)
class Formula:
    """Ordered multiset of clauses with stable occurrence ids.

    ``id_bound`` is the largest id of the formula this one was selected from,
    so derived clause ids never collide with the parent's inputs.
    ``stripped`` records, for clauses produced by a splitting, the literal that
    was removed from the parent occurrence with the same id.
    """

    clauses: tuple[Clause, ...]
    ids: tuple[int, ...] = ()
    id_bound: int = 0
    stripped: Mapping[int, Literal] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not self.ids:
            object.__setattr__(self, "ids", tuple(range(1, len(self.clauses) + 1)))
        if len(self.ids) != len(self.clauses):
            raise ValueError("ids and clauses differ in length")
        if len(set(self.ids)) != len(self.ids):
            raise ValueError("duplicate occurrence id")
        bound = max(self.ids, default=0)
        if self.id_bound < bound:
            object.__setattr__(self, "id_bound", bound)
        object.__setattr__(self, "_index", dict(zip(self.ids, self.clauses)))

    @classmethod
    def from_lists(cls, clauses: Iterable[Iterable[Literal]]) -> "Formula":
        return cls(tuple(make_clause(c) for c in clauses))

    def __len__(self) -> int:
        return len(self.clauses)

    def __iter__(self) -> Iterator[tuple[int, Clause]]:
        return iter(zip(self.ids, self.clauses))

    def __contains__(self, occ: int) -> bool:
        return occ in self._index

    def clause(self, occ: int) -> Clause:
        try:
            return self._index[occ]
        except KeyError:
            raise UnknownId(occ) from None

    @property
    def variables(self) -> frozenset[int]:
        return frozenset(abs(l) for c in self.clauses for l in c)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def max_var(self) -> int:
        return max((abs(l) for c in self.clauses for l in c), default=0)

    def deficiency(self) -> int:
        return deficiency(self)

    def subformula(self, ids: Iterable[int]) -> "Formula":
        return subformula(self, ids)

    def has_empty_clause(self) -> bool:
        return any(not c for c in self.clauses)


def deficiency(f: Formula) -> int:
    """Number of clauses minus number of occurring variables."""
    return len(f.clauses) - f.nvars


def subformula(f: Formula, ids: Iterable[int]) -> Formula:
    """Select occurrences by id, keeping the parent's order and ids."""
    wanted = set(ids)
    unknown = wanted.difference(f.ids)
    if unknown:
        raise UnknownId(sorted(unknown)[0])
    pairs = [(i, c) for i, c in f if i in wanted]
    stripped = {i: l for i, l in f.stripped.items() if i in wanted}
    return Formula(
        tuple(c for _, c in pairs),
        tuple(i for i, _ in pairs),
        id_bound=f.id_bound,
        stripped=stripped,
    )


def evaluate(f: Formula, assignment: Mapping[int, bool]) -> bool:
    """True iff every clause of ``f`` has a literal made true by ``assignment``."""
    missing = f.variables.difference(assignment)
    if missing:
        raise IncompleteAssignment(f"unassigned variables {sorted(missing)}")
    return all(any(assignment[abs(l)] == (l > 0) for l in c) for c in f.clauses)
