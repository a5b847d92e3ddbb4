"""DIMACS CNF and the ``p refutation`` proof format.

Proof lines read ``s <id> <pivot> <ref1> <ref2> <lit>* 0``; refs ``1..m`` are
input occurrences and derived steps are numbered from ``m+1``.
"""
from __future__ import annotations

from typing import Union

from .core import Formula, make_clause
from .errors import (
    ArityError,
    DanglingReference,
    FormatSyntaxError,
    HeaderMismatch,
    NonmonotoneIds,
    TautologyError,
)
from .resolution import Derivation, Step

Text = Union[str, bytes]


def _text(data: Text) -> str:
    if isinstance(data, bytes):
        try:
            return data.decode("ascii")
        except UnicodeDecodeError as e:
            raise FormatSyntaxError(f"non-ASCII input: {e}") from None
    return data


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatSyntaxError(f"line {lineno}: bad token {tok!r}") from None


def parse_dimacs(data: Text) -> Formula:
    header = None
    clauses = []
    current: list[int] = []
    for lineno, line in enumerate(_text(data).splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if header is not None or len(parts) != 4 or parts[1] != "cnf":
                raise FormatSyntaxError(f"line {lineno}: bad header {line!r}")
            header = (_int(parts[2], lineno), _int(parts[3], lineno))
            if min(header) < 0:
                raise FormatSyntaxError(f"line {lineno}: negative header count")
            continue
        if header is None:
            raise FormatSyntaxError(f"line {lineno}: clause before header")
        for tok in line.split():
            lit = _int(tok, lineno)
            if lit == 0:
                clauses.append(current)
                current = []
                continue
            if abs(lit) > header[0]:
                raise HeaderMismatch(f"line {lineno}: variable {abs(lit)} exceeds header {header[0]}")
            current.append(lit)
    if header is None:
        raise FormatSyntaxError("missing 'p cnf' header")
    if current:
        raise FormatSyntaxError("last clause not terminated by 0")
    if len(clauses) != header[1]:
        raise HeaderMismatch(f"header announces {header[1]} clauses, found {len(clauses)}")
    out = []
    for k, c in enumerate(clauses, 1):
        try:
            out.append(make_clause(c))
        except ArityError as e:
            raise ArityError(f"clause {k}: {e}") from None
        except TautologyError as e:
            raise TautologyError(f"clause {k}: {e}") from None
    return Formula(tuple(out))


def _lits(c) -> str:
    return " ".join(map(str, c) if c else ())


def write_dimacs(f: Formula) -> bytes:
    lines = [f"p cnf {f.max_var} {len(f)}"]
    for c in f.clauses:
        lines.append((_lits(c) + " 0").lstrip())
    return ("\n".join(lines) + "\n").encode("ascii")


def write_proof(r: Derivation, f: Formula) -> bytes:
    lines = [f"p refutation {f.max_var} {len(f)}"]
    for s in r.steps:
        body = f"s {s.id} {s.pivot} {s.left} {s.right}"
        lits = _lits(s.resolvent)
        lines.append(f"{body} {lits} 0" if lits else f"{body} 0")
    return ("\n".join(lines) + "\n").encode("ascii")


def parse_proof(data: Text, f: Formula) -> Derivation:
    m = len(f)
    header = None
    steps: list[Step] = []
    known = set(range(1, m + 1))
    last = m
    for lineno, line in enumerate(_text(data).splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if header is not None or len(parts) != 4 or parts[1] != "refutation":
                raise FormatSyntaxError(f"line {lineno}: bad header {line!r}")
            header = (_int(parts[2], lineno), _int(parts[3], lineno))
            if header != (f.max_var, m):
                raise HeaderMismatch(f"proof header {header} does not match formula ({f.max_var}, {m})")
            continue
        if parts[0] != "s":
            raise FormatSyntaxError(f"line {lineno}: unknown line type {parts[0]!r}")
        if header is None:
            raise FormatSyntaxError(f"line {lineno}: step before header")
        if len(parts) < 6 or parts[-1] != "0":
            raise FormatSyntaxError(f"line {lineno}: step must have id, pivot, two refs and end in 0")
        sid, pivot, left, right = (_int(t, lineno) for t in parts[1:5])
        lits = [_int(t, lineno) for t in parts[5:-1]]
        if 0 in lits or pivot <= 0:
            raise FormatSyntaxError(f"line {lineno}: bad pivot or literal")
        if sid <= last:
            raise NonmonotoneIds(f"line {lineno}: step id {sid} after {last}")
        for ref in (left, right):
            if ref not in known:
                raise DanglingReference(f"line {lineno}: reference {ref}")
        try:
            resolvent = make_clause(lits)
        except (ArityError, TautologyError) as e:
            raise FormatSyntaxError(f"line {lineno}: {e}") from None
        steps.append(Step(sid, left, right, pivot, resolvent))
        known.add(sid)
        last = sid
    if header is None:
        raise FormatSyntaxError("missing 'p refutation' header")
    if steps:
        return Derivation(tuple(steps), steps[-1].id, steps[-1].resolvent)
    empties = [i for i, c in f if not c]
    if not empties:
        raise FormatSyntaxError("proof has no steps and the formula has no empty clause")
    return Derivation((), empties[0], ())
