"""Exact rational linear algebra on small matrices (rank, nullspace,
orthogonal complements, linear solves).  Matrices are lists of tuples."""

from fractions import Fraction

from .rationals import dot


def _echelon(rows):
    """Row-reduce a copy of `rows`; returns (reduced rows, pivot column list)."""
    M = [list(map(Fraction, r)) for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(M)):
            if M[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = Fraction(1) / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows):
    return len(_echelon(rows)[0])


def nullspace_basis(rows, ncols=None):
    """Basis of {x : M x = 0} as tuples of Fractions."""
    if not rows:
        if ncols is None:
            raise ValueError("need ncols for empty matrix")
        return [tuple(Fraction(1) if j == i else Fraction(0) for j in range(ncols))
                for i in range(ncols)]
    ncols = len(rows[0])
    red, pivots = _echelon(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -red[i][fc]
        basis.append(tuple(v))
    return basis


def orthogonal_complement_basis(vectors, dim):
    """Rational basis of the orthogonal complement of span(vectors) in Q^dim."""
    return nullspace_basis([tuple(v) for v in vectors], ncols=dim)


def gram_schmidt(vectors):
    """Orthogonalize (no normalization); drops dependent vectors."""
    out = []
    for v in vectors:
        w = list(map(Fraction, v))
        for u in out:
            nu = dot(u, u)
            f = dot(w, u) / nu
            w = [a - f * b for a, b in zip(w, u)]
        if any(x != 0 for x in w):
            out.append(tuple(w))
    return out


def solve_linear(A, b):
    """One solution of A x = b (least structured: free vars set to 0), or
    None if inconsistent."""
    if not A:
        return ()
    ncols = len(A[0])
    aug = [list(map(Fraction, row)) + [Fraction(bv)] for row, bv in zip(A, b)]
    red, pivots = _echelon(aug)
    for row in red:
        if all(x == 0 for x in row[:-1]) and row[-1] != 0:
            return None
    x = [Fraction(0)] * ncols
    for i, pc in enumerate(pivots):
        if pc == ncols:
            return None
        x[pc] = red[i][-1] - sum(red[i][j] * x[j] for j in range(pc + 1, ncols))
    # Re-substitute properly (free vars are zero, reduced form is canonical).
    for i in reversed(range(len(pivots))):
        pc = pivots[i]
        x[pc] = red[i][-1] - sum(red[i][j] * x[j] for j in range(ncols) if j != pc)
    return tuple(x)


def min_norm_solution(A, b):
    """Minimum-Euclidean-norm solution of A x = b: x = A^T y with (A A^T) y = b.

    Requires the rows of A to be linearly independent."""
    m = len(A)
    G = [[Fraction(dot(A[i], A[j])) for j in range(m)] for i in range(m)]
    y = solve_linear(G, b)
    if y is None:
        raise ValueError("inconsistent or dependent system")
    n = len(A[0])
    return tuple(sum(Fraction(A[i][j]) * y[i] for i in range(m)) for j in range(n))
