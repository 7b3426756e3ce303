"""Small exact linear programs over the rationals.

Two-phase simplex with Bland's rule (deterministic, cycle-free), dense
Fraction tableaus.  Every LP in this package is small (tens of variables),
so clarity and exactness win over speed.
"""

from fractions import Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


class LPError(RuntimeError):
    pass


def _pivot(T, basis, row, col):
    piv = T[row][col]
    inv = Fraction(1) / piv
    T[row] = [x * inv for x in T[row]]
    for i, r in enumerate(T):
        if i != row and r[col] != 0:
            f = r[col]
            T[i] = [a - f * b for a, b in zip(r, T[row])]
    basis[row] = col


def _simplex(T, basis, ncols):
    """Minimize the objective stored in the last row of tableau T.

    Rows 0..m-1 are constraints [A | b], last row is [c | -obj].
    Bland's rule: smallest-index entering and leaving variables.
    """
    m = len(T) - 1
    while True:
        obj = T[m]
        col = -1
        for j in range(ncols):
            if obj[j] < 0:
                col = j
                break
        if col < 0:
            return OPTIMAL
        row = -1
        best = None
        for i in range(m):
            a = T[i][col]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[row]):
                    best = ratio
                    row = i
        if row < 0:
            return UNBOUNDED
        _pivot(T, basis, row, col)


def solve_standard(A, b, c):
    """Minimize c.x subject to A x = b, x >= 0.  All entries Fractions.

    Returns (status, x, objective).
    """
    m = len(A)
    n = len(c)
    A = [[Fraction(x) for x in row] for row in A]
    b = [Fraction(x) for x in b]
    c = [Fraction(x) for x in c]
    for i in range(m):
        if b[i] < 0:
            A[i] = [-x for x in A[i]]
            b[i] = -b[i]

    # Phase 1: artificial variables.
    T = []
    for i in range(m):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        T.append(A[i] + art + [b[i]])
    phase1 = [Fraction(0)] * n + [Fraction(1)] * m + [Fraction(0)]
    T.append(phase1)
    basis = [n + i for i in range(m)]
    for i in range(m):
        T[m] = [a - x for a, x in zip(T[m], T[i])]
    status = _simplex(T, basis, n + m)
    if status != OPTIMAL or T[m][-1] != 0:
        return INFEASIBLE, None, None

    # Drive remaining artificials out of the basis where possible.
    for i in range(m):
        if basis[i] >= n:
            for j in range(n):
                if T[i][j] != 0:
                    _pivot(T, basis, i, j)
                    break

    # Phase 2.
    rows = []
    keep = []
    for i in range(m):
        if basis[i] >= n:
            # Redundant row (all-zero in original variables).
            continue
        keep.append(basis[i])
        rows.append(T[i][:n] + [T[i][-1]])
    obj = c[:] + [Fraction(0)]
    T2 = rows + [obj]
    basis2 = keep
    for i, bi in enumerate(basis2):
        if T2[-1][bi] != 0:
            f = T2[-1][bi]
            T2[-1] = [a - f * x for a, x in zip(T2[-1], T2[i])]
    status = _simplex(T2, basis2, n)
    if status == UNBOUNDED:
        return UNBOUNDED, None, None
    x = [Fraction(0)] * n
    for i, bi in enumerate(basis2):
        x[bi] = T2[i][-1]
    return OPTIMAL, x, sum(ci * xi for ci, xi in zip(c, x))


class LinearProgram:
    """Tiny modeling layer: named variables (free or nonnegative),
    eq/le/ge constraints, exact optimum via two-phase simplex."""

    def __init__(self):
        self._vars = []          # (name, lower_is_zero)
        self._index = {}
        self._cons = []          # (coeffs dict, rel, rhs)

    def var(self, name, nonneg=False):
        if name in self._index:
            raise LPError(f"duplicate variable {name}")
        self._index[name] = len(self._vars)
        self._vars.append((name, nonneg))
        return name

    def add(self, coeffs, rel, rhs):
        if rel not in ("==", "<=", ">="):
            raise LPError(f"bad relation {rel}")
        self._cons.append((dict(coeffs), rel, Fraction(rhs)))

    def _standard_form(self, objective, maximize):
        # Map each free variable to x+ - x-; nonneg to a single column.
        cols = []                # list of (var_index, +1/-1)
        col_of = {}
        for i, (_, nonneg) in enumerate(self._vars):
            col_of[i] = len(cols)
            cols.append((i, 1))
            if not nonneg:
                cols.append((i, -1))
        n = len(cols)
        A, b = [], []
        for coeffs, rel, rhs in self._cons:
            row = [Fraction(0)] * n
            for name, cf in coeffs.items():
                vi = self._index[name]
                j = col_of[vi]
                row[j] += Fraction(cf)
                if not self._vars[vi][1]:
                    row[j + 1] -= Fraction(cf)
            if rel == "<=":
                row.append(Fraction(1))
            elif rel == ">=":
                row.append(Fraction(-1))
            if rel != "==":
                for other in A:
                    other.append(Fraction(0))
                n += 1
            A.append(row)
            b.append(rhs)
        width = max(len(r) for r in A) if A else n
        for r in A:
            r.extend([Fraction(0)] * (width - len(r)))
        c = [Fraction(0)] * width
        for name, cf in objective.items():
            vi = self._index[name]
            j = col_of[vi]
            f = Fraction(cf) * (-1 if maximize else 1)
            c[j] += f
            if not self._vars[vi][1]:
                c[j + 1] -= f
        return A, b, c, cols, col_of

    def optimize(self, objective, maximize=False):
        """Returns (status, value, {name: Fraction}) with value for the
        original (max or min) problem."""
        A, b, c, cols, col_of = self._standard_form(objective, maximize)
        if not A:
            raise LPError("no constraints")
        status, x, obj = solve_standard(A, b, c)
        if status != OPTIMAL:
            return status, None, None
        assign = {}
        for i, (name, nonneg) in enumerate(self._vars):
            j = col_of[i]
            v = x[j] if nonneg else x[j] - x[j + 1]
            assign[name] = v
        value = sum(Fraction(cf) * assign[name] for name, cf in objective.items())
        return OPTIMAL, value, assign

    def feasible(self):
        """Pure feasibility check; returns assignment or None."""
        status, _, assign = self.optimize({}, maximize=False)
        return assign if status == OPTIMAL else None
