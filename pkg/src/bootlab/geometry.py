"""Exact geometry of stable sets on spheres.

A stable set is stored as a CNF of closed hemispheres: a point v of the
context sphere belongs to the set iff every clause contains a center x with
<x,v> >= 0.  Directions are rational points of the sphere (integer vectors
up to positive scaling), so every predicate below is decided exactly.

Descending to the small sphere around a member direction u is purely
combinatorial: centers with positive inner product satisfy their clause
near u (clause dropped), negative ones never do (center dropped), and the
perpendicular ones survive onto the equatorial model of the small sphere.
The induced resistance recursion runs over the cells of the central
hyperplane arrangement spanned by the clause centers; the induced
resistance is constant on each cell because the descent output depends
only on the cell's sign vector.
"""

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactlp import LinearProgram
from .linalg import orthogonal_complement_basis, rank
from .rationals import dot, rational_to_integer_vector, reduce_direction, sign


class NotInSet(ValueError):
    """Descent was requested at a direction outside the represented set."""


class ArrangementTooLarge(RuntimeError):
    pass


DEFAULT_CELL_CAP = 50_000


def cell_cap_from_env():
    return int(os.environ.get("BOOTLAB_CELL_CAP", DEFAULT_CELL_CAP))


@dataclass(frozen=True)
class SphereContext:
    """Which sphere we are on: the unit sphere of the orthogonal complement
    of the (linearly independent) ancestor directions."""
    dimension: int
    ancestors: tuple = ()

    def __post_init__(self):
        if self.ancestors and rank(self.ancestors) != len(self.ancestors):
            raise ValueError("ancestor directions must be linearly independent")

    @property
    def effective_dim(self):
        return self.dimension - 1 - len(self.ancestors)

    def descend(self, u):
        return SphereContext(self.dimension, self.ancestors + (tuple(u),))


@dataclass(frozen=True)
class StableSetRep:
    """CNF-of-hemispheres representation of a stable set."""
    clauses: tuple        # tuple of clauses; clause = tuple of centers (int tuples)
    context: SphereContext
    is_empty: bool = False

    def contains(self, v):
        if self.is_empty:
            return False
        for clause in self.clauses:
            if not any(dot(x, v) >= 0 for x in clause):
                return False
        return True

    def centers(self):
        return tuple(sorted({x for clause in self.clauses for x in clause}))

    def to_json(self):
        return {"dimension": self.context.dimension,
                "ancestors": [list(a) for a in self.context.ancestors],
                "empty": self.is_empty,
                "clauses": [[list(x) for x in clause] for clause in self.clauses]}


def _prune_clauses(clauses):
    """Deduplicate; drop clauses that are supersets of other clauses."""
    uniq = sorted({tuple(sorted(set(c))) for c in clauses}, key=lambda c: (len(c), c))
    kept = []
    for c in uniq:
        cs = set(c)
        if not any(set(k) <= cs for k in kept):
            kept.append(c)
    return tuple(sorted(kept))


def is_stable(U, u):
    """True iff no rule lies entirely in the open half-space <x,u> < 0."""
    if all(x == 0 for x in u):
        raise ValueError("direction must be non-zero")
    for rule in U.rules:
        if all(dot(x, u) < 0 for x in rule):
            return False
    return True


def stable_set_rep(U):
    """One clause per rule, centers the rule vectors (hemisphere CNF)."""
    return StableSetRep(_prune_clauses(U.rules), SphereContext(U.dimension))


def descend(rep, u):
    """Representation of the induced set on the small sphere around u,
    realized on the equator of u within the current context."""
    if rep.is_empty or not rep.contains(u):
        raise NotInSet(f"direction {tuple(u)} is not in the represented set")
    new_clauses = []
    empty = False
    for clause in rep.clauses:
        signs = [(x, sign(dot(x, u))) for x in clause]
        if any(s > 0 for _, s in signs):
            continue                      # hemisphere contains the small sphere
        kept = tuple(x for x, s in signs if s == 0)
        if not kept:
            empty = True                  # defensive; unreachable when u is a member
            break
        new_clauses.append(kept)
    ctx = rep.context.descend(rational_to_integer_vector(u))
    if empty:
        return StableSetRep((), ctx, is_empty=True)
    return StableSetRep(_prune_clauses(new_clauses), ctx)


def _line_table(functionals):
    """Group functionals into projective lines.

    Returns (line reps, per-functional (line index, relative sign))."""
    lines = []
    where = {}
    assign = []
    for f in functionals:
        key = rational_to_integer_vector(f)
        neg = tuple(-x for x in key)
        if key in where:
            assign.append((where[key], 1))
        elif neg in where:
            assign.append((where[neg], -1))
        else:
            where[key] = len(lines)
            lines.append(key)
            assign.append((where[key], 1))
    return lines, assign


def _cell_representative(lines, signs, dim):
    """A rational point with the given sign against each line, or None.

    Strict signs are normalized to >= 1 (valid by cone scaling), zeros to
    equalities.  An all-zero pattern is handled through the nullspace."""
    if not any(signs):
        zero_rows = [lines[i] for i, s in enumerate(signs) if s == 0]
        basis = orthogonal_complement_basis(zero_rows, dim) if zero_rows else \
            orthogonal_complement_basis([], dim)
        if not basis:
            return None
        return basis[0]
    lp = LinearProgram()
    for j in range(dim):
        lp.var(f"a{j}")
    for i, s in enumerate(signs):
        coeffs = {f"a{j}": lines[i][j] for j in range(dim)}
        if s == 0:
            lp.add(coeffs, "==", 0)
        elif s > 0:
            lp.add(coeffs, ">=", 1)
        else:
            lp.add(coeffs, "<=", -1)
    assign = lp.feasible()
    if assign is None:
        return None
    return tuple(assign[f"a{j}"] for j in range(dim))


def _enumerate_cells(lines, dim, cap):
    """All realizable sign vectors of the central arrangement, with one
    exact representative point each."""
    cells = []

    def rec(prefix):
        if len(cells) > cap:
            raise ArrangementTooLarge(f"arrangement exceeds {cap} cells")
        if len(prefix) == len(lines):
            rep = _cell_representative(lines, prefix, dim)
            if rep is not None:
                cells.append((tuple(prefix), rep))
            return
        for s in (1, -1, 0):
            cand = prefix + [s]
            if _cell_representative(lines[:len(cand)], cand, dim) is not None:
                rec(cand)

    rec([])
    return cells


def _hemisphere_avoiding(bad_cells, lines, dim):
    """Is there a hemisphere center c != 0 with <c,u> <= 0 on every bad cell?

    The polar of a cell's closure {u : s_i(f_i.u) >= 0, f_j.u = 0} is the
    set of c with -c in the cone of the s_i f_i plus the span of the f_j
    (Farkas), so the intersection over bad cells is one joint feasibility
    problem; c != 0 is enforced by normalizing one coordinate at a time.
    """
    if not bad_cells:
        return True
    for j in range(dim):
        for s0 in (1, -1):
            lp = LinearProgram()
            for k in range(dim):
                lp.var(f"c{k}")
            for t, (signs, _) in enumerate(bad_cells):
                for i, si in enumerate(signs):
                    lp.var(f"m{t}_{i}", nonneg=(si != 0))
                for k in range(dim):
                    coeffs = {f"c{k}": 1}
                    for i, si in enumerate(signs):
                        f = lines[i][k] * (si if si != 0 else 1)
                        if f:
                            coeffs[f"m{t}_{i}"] = f
                    lp.add(coeffs, "==", 0)
            lp.add({f"c{j}": 1}, "==", s0)
            if lp.feasible() is not None:
                return True
    return False


def resistance_of_rep(rep, cell_cap=None):
    """Resistance of the represented set on its context sphere.

    Enumerates the sign-vector cells of the central arrangement of the
    clause centers, computes the induced resistance once per cell (it is
    cell-constant), then minimizes the in-hemisphere maximum over open
    hemispheres through exact polar-cone feasibility tests.
    """
    if cell_cap is None:
        cell_cap = cell_cap_from_env()
    if rep.is_empty:
        return 1
    m = rep.context.effective_dim
    if m < 0:
        return 1
    if not rep.clauses:
        return m + 2
    d = rep.context.dimension
    basis = orthogonal_complement_basis(rep.context.ancestors, d)
    assert len(basis) == m + 1
    centers = rep.centers()
    functionals = [tuple(Fraction(dot(x, b)) for b in basis) for x in centers]
    assert all(any(v != 0 for v in f) for f in functionals), \
        "clause centers must be independent of the ancestor span"
    lines, assign = _line_table(functionals)
    cells = _enumerate_cells(lines, m + 1, cell_cap)

    clause_idx = []
    pos = {x: i for i, x in enumerate(centers)}
    for clause in rep.clauses:
        clause_idx.append(tuple(pos[x] for x in clause))

    memo = {}

    def cell_rho(signs, alpha):
        center_signs = tuple(assign[i][1] * signs[assign[i][0]] for i in range(len(centers)))
        if center_signs in memo:
            return memo[center_signs]
        member = all(any(center_signs[i] >= 0 for i in cl) for cl in clause_idx)
        if not member:
            rho = 0
        else:
            u = tuple(sum(a * b[k] for a, b in zip(alpha, basis)) for k in range(d))
            rho = resistance_of_rep(descend(rep, u), cell_cap)
        memo[center_signs] = rho
        return rho

    rho_cells = [(signs, alpha, cell_rho(signs, alpha)) for signs, alpha in cells]
    for v in sorted({r for _, _, r in rho_cells}):
        bad = [(signs, alpha) for signs, alpha, r in rho_cells if r > v]
        if _hemisphere_avoiding(bad, lines, m + 1):
            return v + 1
    raise AssertionError("unreachable: the largest value always admits a hemisphere")


def induced_resistance(rep, u, cell_cap=None):
    """Induced resistance of u with respect to the represented set
    (0 when u is outside the set)."""
    if rep.is_empty or not rep.contains(u):
        return 0
    return resistance_of_rep(descend(rep, u), cell_cap)


def resistance(U, cell_cap=None):
    return resistance_of_rep(stable_set_rep(U), cell_cap)


@dataclass(frozen=True)
class Classification:
    kind: str         # "supercritical" | "critical" | "subcritical"
    resistance: int


def classify(U, cell_cap=None):
    r = resistance(U, cell_cap)
    d = U.dimension
    if r == 1:
        return Classification("supercritical", r)
    if r <= d:
        return Classification("critical", r)
    return Classification("subcritical", r)


def descend_along(U, path, cell_cap=None):
    """Iterated descent of the family's stable set along a direction path."""
    rep = stable_set_rep(U)
    for u in path:
        rep = descend(rep, u)
    return rep
