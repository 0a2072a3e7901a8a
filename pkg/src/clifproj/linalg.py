"""Exact dense linear algebra over the supported fields.

Vectors are tuples of scalars, matrices are tuples of row tuples; both are
hashable, so they can live in sets and serve as canonical group-element keys.
The column-vector convention is used throughout: matrices act from the left,
so composing maps reads mat_mul(outer, inner).
"""

from __future__ import annotations

from itertools import product

from .config import enumeration_budget


class Singular(ArithmeticError):
    """Matrix inversion was requested for a rank-deficient matrix."""


class BudgetExceeded(RuntimeError):
    """An enumeration would visit more candidates than the configured budget."""

    def __init__(self, message, count):
        super().__init__("%s (%d candidates)" % (message, count))
        self.count = count


def vector(field, entries):
    return tuple(field.coerce(e) for e in entries)


def matrix(field, rows):
    return tuple(tuple(field.coerce(e) for e in row) for row in rows)


def zero_vector(field, n):
    return (field.zero,) * n


def unit_vector(field, n, j):
    return tuple(field.one if i == j else field.zero for i in range(n))


def identity(field, n):
    return tuple(unit_vector(field, n, j) for j in range(n))


def standard_basis(field, n):
    return [unit_vector(field, n, j) for j in range(n)]


def vec_add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def vec_sub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def vec_scale(c, x):
    return tuple(c * a for a in x)


def vec_neg(x):
    return tuple(-a for a in x)


def is_zero_vector(x):
    return all(a.is_zero() for a in x)


def mat_vec(m, v):
    return tuple(_dot(row, v) for row in m)


def _dot(row, v):
    it = iter(zip(row, v))
    try:
        a, b = next(it)
    except StopIteration:
        raise ValueError("dot product of empty vectors needs a field context")
    acc = a * b
    for a, b in it:
        acc = acc + a * b
    return acc


def mat_mul(a, b):
    if not a or not b:
        return ()
    cols = list(zip(*b))
    return tuple(tuple(_dot(row, col) for col in cols) for row in a)


def mat_neg(m):
    return tuple(tuple(-e for e in row) for row in m)


def transpose(m):
    return tuple(zip(*m)) if m else ()


def from_columns(cols):
    """Matrix whose j-th column is cols[j]."""
    return tuple(zip(*cols)) if cols else ()


def columns(m):
    return [tuple(row[j] for row in m) for j in range(len(m[0]))] if m else []


def vec_key(v):
    return tuple(e.sort_key() for e in v)


def mat_key(m):
    return tuple(vec_key(row) for row in m)


def _eliminate(rows, ncols):
    """In-place forward+backward elimination; returns the pivot columns."""
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if not rows[i][c].is_zero():
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [e * inv for e in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [e - f * p for e, p in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return pivots


def rank(m):
    if not m or not m[0]:
        return 0
    rows = [list(row) for row in m]
    return len(_eliminate(rows, len(m[0])))


def kernel(m):
    """Echelonised basis of the right null space; empty iff m is injective."""
    if not m:
        return []
    ncols = len(m[0])
    if ncols == 0:
        return []
    field = m[0][0].field
    rows = [list(row) for row in m]
    pivots = _eliminate(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        vec = [field.zero] * ncols
        vec[f] = field.one
        for r, pc in enumerate(pivots):
            vec[pc] = -rows[r][f]
        basis.append(tuple(vec))
    return basis


def is_invertible(m):
    n = len(m)
    if n == 0:
        return True
    if len(m[0]) != n:
        return False
    rows = [list(row) for row in m]
    for c in range(n):
        pr = None
        for i in range(c, n):
            if not rows[i][c].is_zero():
                pr = i
                break
        if pr is None:
            return False
        rows[c], rows[pr] = rows[pr], rows[c]
        inv = rows[c][c].inverse()
        for i in range(c + 1, n):
            if not rows[i][c].is_zero():
                f = rows[i][c] * inv
                rows[i] = [e - f * p for e, p in zip(rows[i], rows[c])]
    return True


def invert(m):
    """Two-sided inverse of a square matrix; raises Singular if rank-deficient."""
    n = len(m)
    if n == 0:
        return ()
    if len(m[0]) != n:
        raise Singular("matrix is not square")
    field = m[0][0].field
    rows = [list(row) + list(idrow) for row, idrow in zip(m, identity(field, n))]
    pivots = _eliminate(rows, n)
    if len(pivots) != n:
        raise Singular("matrix is singular")
    return tuple(tuple(row[n:]) for row in rows)


def solve(m, rhs):
    """One solution x of m x = rhs (free variables set to 0), or None."""
    nrows = len(m)
    if nrows == 0:
        return ()
    ncols = len(m[0])
    field = m[0][0].field if ncols else rhs[0].field
    rows = [list(row) + [b] for row, b in zip(m, rhs)]
    pivots = _eliminate(rows, ncols)
    for r in range(len(pivots), nrows):
        if not rows[r][ncols].is_zero():
            return None
    x = [field.zero] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = rows[r][ncols]
    return tuple(x)


def independent_subset(vectors):
    """Maximal linearly independent greedy subset, in the given order."""
    picked = []
    echelon = []  # (pivot column, normalised row)
    for v in vectors:
        row = list(v)
        for pc, er in echelon:
            if not row[pc].is_zero():
                f = row[pc]
                row = [e - f * p for e, p in zip(row, er)]
        pc = next((i for i, e in enumerate(row) if not e.is_zero()), None)
        if pc is None:
            continue
        inv = row[pc].inverse()
        echelon.append((pc, [e * inv for e in row]))
        picked.append(v)
    return picked


def enumerate_vectors(field, dim, nonzero_only=False, budget=None):
    """All vectors of the given dimension, in deterministic order."""
    if not field.is_finite:
        if dim == 0:
            return [] if nonzero_only else [()]
        from .fields import InfiniteField

        raise InfiniteField("cannot enumerate vectors over %s" % field)
    limit = enumeration_budget(budget)
    count = field.order**dim
    if count > limit:
        raise BudgetExceeded("vector enumeration over budget", count)
    out = []
    for coords in product(field.elements(), repeat=dim):
        if nonzero_only and all(c.is_zero() for c in coords):
            continue
        out.append(coords)
    return out


def enumerate_invertible_maps(field, dim, budget=None):
    """Exactly the invertible dim x dim matrices, each once."""
    limit = enumeration_budget(budget)
    count = field.order ** (dim * dim)
    if count > limit:
        raise BudgetExceeded("matrix enumeration over budget", count)
    if dim == 0:
        return [()]
    out = []
    for entries in product(field.elements(), repeat=dim * dim):
        m = tuple(entries[i * dim : (i + 1) * dim] for i in range(dim))
        if is_invertible(m):
            out.append(m)
    return out


def projective_representatives(field, dim, budget=None):
    """One vector per ray of F^dim: first nonzero coordinate normalised to 1."""
    if not field.is_finite:
        # a line has a single ray, no enumeration required
        if dim == 0:
            return []
        if dim == 1:
            return [(field.one,)]
        from .fields import InfiniteField

        raise InfiniteField("cannot enumerate rays over %s" % field)
    limit = enumeration_budget(budget)
    if field.order**dim > limit:
        raise BudgetExceeded("ray enumeration over budget", field.order**dim)
    out = []
    for lead in range(dim):
        head = (field.zero,) * lead + (field.one,)
        for tail in product(field.elements(), repeat=dim - lead - 1):
            out.append(head + tail)
    return out
