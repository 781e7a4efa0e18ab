"""Polynomial reduction from 3-SAT to the 1-identifying code problem.

Variable ``j`` (0-based) owns vertices ``6j + 0..5`` named ``x``, ``xbar``,
``a``, ``b``, ``c``, ``d`` with edges ab, bx, bxbar, cd, cx, cxbar.  Clause
``i`` owns ``6|U| + 2i`` (alpha) and ``6|U| + 2i + 1`` (beta), joined to each
other, with alpha joined to the vertex of each of its literals.  The formula
is satisfiable iff the graph has a 1-identifying code of size at most
``k = 3|U| + m``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from typing import Optional, Sequence

from .bits import mask_of
from .graph import Graph
from . import verify

GADGET = ("x", "xbar", "a", "b", "c", "d")
MAX_BRUTE_VARS = 20


class SatError(ValueError):
    pass


@dataclass(frozen=True)
class CnfFormula:
    """Clauses are triples of nonzero DIMACS literals (``-j`` negates variable ``j``)."""

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.num_vars < 0:
            raise SatError("negative variable count")
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        for c in self.clauses:
            if len(c) != 3:
                raise SatError(f"clause {c} does not have exactly 3 literals")
            if any(lit == 0 or abs(lit) > self.num_vars for lit in c):
                raise SatError(f"clause {c} references an undeclared variable")
            if len({abs(lit) for lit in c}) != 3:
                raise SatError(f"clause {c} repeats a variable")

    @property
    def m(self) -> int:
        return len(self.clauses)

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        if len(assignment) != self.num_vars:
            raise SatError("assignment length differs from the variable count")
        return all(any(assignment[abs(l) - 1] == (l > 0) for l in c) for c in self.clauses)


def parse_dimacs(text: str) -> CnfFormula:
    header = None
    lits: list[int] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] != "cnf":
                raise SatError(f"line {lineno}: bad problem line {line.strip()!r}")
            header = (int(parts[2]), int(parts[3]))
            continue
        if header is None:
            raise SatError(f"line {lineno}: clause before the 'p cnf' line")
        try:
            lits.extend(int(t) for t in parts)
        except ValueError:
            raise SatError(f"line {lineno}: non-integer literal") from None
    if header is None:
        raise SatError("missing 'p cnf' line")
    clauses, cur = [], []
    for lit in lits:
        if lit == 0:
            clauses.append(tuple(cur))
            cur = []
        else:
            cur.append(lit)
    if cur:
        raise SatError("last clause is not terminated by 0")
    if len(clauses) != header[1]:
        raise SatError(f"header declares {header[1]} clauses, found {len(clauses)}")
    return CnfFormula(header[0], tuple(clauses))


def format_dimacs(f: CnfFormula) -> str:
    lines = [f"p cnf {f.num_vars} {f.m}"]
    lines += [" ".join(map(str, c)) + " 0" for c in f.clauses]
    return "\n".join(lines) + "\n"


def literal_vertex(f: CnfFormula, lit: int) -> int:
    return 6 * (abs(lit) - 1) + (0 if lit > 0 else 1)


def layout(f: CnfFormula) -> dict[str, int]:
    """Vertex names (1-based indices in names) to 0-based ids."""
    names = {}
    for j in range(f.num_vars):
        for off, name in enumerate(GADGET):
            names[f"{name}{j + 1}"] = 6 * j + off
    base = 6 * f.num_vars
    for i in range(f.m):
        names[f"alpha{i + 1}"] = base + 2 * i
        names[f"beta{i + 1}"] = base + 2 * i + 1
    return names


def format_layout(names: dict[str, int]) -> str:
    return "".join(f"{name} {v + 1}\n" for name, v in sorted(names.items(), key=lambda kv: kv[1]))


def reduce_3sat(f: CnfFormula) -> tuple[Graph, int, dict[str, int]]:
    edges = []
    for j in range(f.num_vars):
        x, xb, a, b, c, d = range(6 * j, 6 * j + 6)
        edges += [(a, b), (b, x), (b, xb), (c, d), (c, x), (c, xb)]
    base = 6 * f.num_vars
    for i, clause in enumerate(f.clauses):
        alpha = base + 2 * i
        edges.append((alpha, alpha + 1))
        edges += [(alpha, literal_vertex(f, lit)) for lit in clause]
    return Graph(base + 2 * f.m, edges), 3 * f.num_vars + f.m, layout(f)


def code_from_assignment(f: CnfFormula, assignment: Sequence[bool]) -> int:
    """All alpha_i, all b_j and c_j, and the true literal vertex of each variable."""
    if not f.satisfied_by(assignment):
        raise SatError("assignment does not satisfy the formula")
    chosen = [6 * f.num_vars + 2 * i for i in range(f.m)]
    for j, value in enumerate(assignment):
        chosen += [6 * j + 3, 6 * j + 4, 6 * j + (0 if value else 1)]
    return mask_of(chosen)


def assignment_from_code(f: CnfFormula, code: int) -> list[bool]:
    """Read a satisfying assignment off a 1-identifying code of size <= k.

    A variable is true iff ``x_j`` is in the code.  If that fails, variables
    whose gadget holds both or neither literal vertex are tried both ways.
    """
    g, k, _ = reduce_3sat(f)
    if code.bit_count() > k:
        raise SatError(f"code has {code.bit_count()} vertices, more than k = {k}")
    if not verify.is_identifying(g, code, 1):
        raise SatError("code is not 1-identifying in the reduced graph")
    base = [bool(code >> (6 * j) & 1) for j in range(f.num_vars)]
    if f.satisfied_by(base):
        return base
    ambiguous = [j for j in range(f.num_vars) if (code >> (6 * j) & 1) == (code >> (6 * j + 1) & 1)]
    if len(ambiguous) > MAX_BRUTE_VARS:
        raise SatError("too many ambiguous variables to repair")
    for values in product((False, True), repeat=len(ambiguous)):
        trial = list(base)
        for j, val in zip(ambiguous, values):
            trial[j] = val
        if f.satisfied_by(trial):
            return trial
    raise SatError("no satisfying assignment recoverable from the code")


def brute_sat(f: CnfFormula) -> Optional[list[bool]]:
    """First satisfying assignment in lexicographic order (False < True), or None."""
    if f.num_vars > MAX_BRUTE_VARS:
        raise SatError(f"brute force limited to {MAX_BRUTE_VARS} variables")
    for values in product((False, True), repeat=f.num_vars):
        if f.satisfied_by(values):
            return list(values)
    return None


def all_formulas(num_vars: int, max_clauses: int) -> list[CnfFormula]:
    """Every 3-CNF over ``num_vars`` variables with at most ``max_clauses``
    clauses, clauses taken as a multiset (order does not change the graph up
    to relabelling)."""
    shapes = []
    for vars_ in combinations_with_replacement(range(1, num_vars + 1), 3):
        if len(set(vars_)) == 3:
            for signs in product((1, -1), repeat=3):
                shapes.append(tuple(s * v for s, v in zip(signs, vars_)))
    out = []
    for m in range(max_clauses + 1):
        for clauses in combinations_with_replacement(shapes, m):
            out.append(CnfFormula(num_vars, clauses))
    return out


def unsat_example() -> CnfFormula:
    """All eight sign patterns on three variables: the smallest unsatisfiable 3-CNF."""
    return CnfFormula(3, tuple(tuple(s * v for s, v in zip(signs, (1, 2, 3)))
                               for signs in product((1, -1), repeat=3)))
