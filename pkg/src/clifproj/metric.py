"""Metric vector spaces: a quadratic form Q together with its polar form B.

The metric data of a space of dimension d is stored as the tuple of values
Q(e_j) plus the strictly upper triangular values B(e_i, e_j), i < j.  In
characteristic 2 the form Q cannot be recovered from B, so the Q values are
primary data; the diagonal of the Gram matrix of B is 2*Q(e_j).

Similarities carry their ratio c (with c*Q = Q' o psi); by convention the
ratio is 1 whenever Q vanishes identically.
"""

from __future__ import annotations

from enum import Enum

from . import linalg
from .fields import Scalar
from .linalg import (
    BudgetExceeded,
    identity,
    independent_subset,
    is_invertible,
    mat_vec,
    standard_basis,
    unit_vector,
    vec_add,
    vec_scale,
    vec_sub,
)


class DimensionMismatch(ValueError):
    pass


class NotRegular(ValueError):
    pass


class NotInvertible(ValueError):
    pass


class DependentBasis(ValueError):
    pass


class CharTwo(ValueError):
    pass


class NotSimilar(ValueError):
    pass


class VectorClass(Enum):
    ZERO = "zero"
    SINGULAR = "singular"
    REGULAR = "regular"


class QuadraticSpace:
    """A finite-dimensional vector space with a quadratic form, over one field."""

    __slots__ = ("field", "dim", "q_diag", "b_upper", "_gram", "_radical", "_hash", "_cache")

    def __init__(self, field, q_diag, b_upper=None):
        self.field = field
        self.q_diag = tuple(field.coerce(q) for q in q_diag)
        self.dim = len(self.q_diag)
        cleaned = {}
        for (i, j), v in (b_upper or {}).items():
            if not (0 <= i < j < self.dim):
                raise ValueError("bad polar-form index pair (%d, %d)" % (i, j))
            v = field.coerce(v)
            if not v.is_zero():
                cleaned[(i, j)] = v
        self.b_upper = cleaned
        self._gram = None
        self._radical = None
        self._cache = {}
        self._hash = hash(
            (field.tag, self.q_diag, tuple(sorted((k, v.sort_key()) for k, v in cleaned.items())))
        )

    def __eq__(self, other):
        if not isinstance(other, QuadraticSpace):
            return NotImplemented
        return (
            self.field is other.field
            and self.q_diag == other.q_diag
            and self.b_upper == other.b_upper
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        b = ", ".join("b%d%d=%s" % (i, j, v) for (i, j), v in sorted(self.b_upper.items()))
        qs = ",".join(str(q) for q in self.q_diag)
        return "QuadraticSpace(%s; q=(%s)%s)" % (self.field, qs, "; " + b if b else "")

    # -- evaluation ---------------------------------------------------------
    def B_basis(self, i, j):
        """B(e_i, e_j); the diagonal entry is 2 Q(e_j)."""
        if i == j:
            return self.q_diag[i] + self.q_diag[i]
        if i > j:
            i, j = j, i
        return self.b_upper.get((i, j), self.field.zero)

    def eval_Q(self, x):
        if len(x) != self.dim:
            raise DimensionMismatch("vector has length %d, space has dimension %d" % (len(x), self.dim))
        acc = self.field.zero
        for j, xj in enumerate(x):
            if xj.is_zero():
                continue
            acc = acc + xj * xj * self.q_diag[j]
        for (i, j), b in self.b_upper.items():
            if not x[i].is_zero() and not x[j].is_zero():
                acc = acc + x[i] * x[j] * b
        return acc

    def eval_B(self, x, y):
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatch("polar form needs two vectors of dimension %d" % self.dim)
        acc = self.field.zero
        for i, xi in enumerate(x):
            if xi.is_zero():
                continue
            for j, yj in enumerate(y):
                if yj.is_zero():
                    continue
                b = self.B_basis(i, j)
                if not b.is_zero():
                    acc = acc + xi * yj * b
        return acc

    # -- structure ----------------------------------------------------------
    @property
    def char(self):
        return self.field.characteristic

    def gram(self):
        if self._gram is None:
            self._gram = tuple(
                tuple(self.B_basis(i, j) for j in range(self.dim)) for i in range(self.dim)
            )
        return self._gram

    def radical(self):
        """Echelonised basis of the radical of B (the kernel of the Gram matrix)."""
        if self._radical is None:
            if self.dim == 0:
                self._radical = []
            else:
                self._radical = linalg.kernel(self.gram())
        return list(self._radical)

    def radical_dim(self):
        return len(self.radical())

    def q_nonzero_on_radical(self):
        """Whether Q(V^perp) != {0}; a basis scan suffices (Q is additive there)."""
        return any(not self.eval_Q(r).is_zero() for r in self.radical())

    def is_zero_form(self):
        return all(q.is_zero() for q in self.q_diag) and not self.b_upper

    def classify_vector(self, x):
        if linalg.is_zero_vector(x):
            return VectorClass.ZERO
        return VectorClass.SINGULAR if self.eval_Q(x).is_zero() else VectorClass.REGULAR

    def reflection(self, r):
        """Matrix of x -> x - B(r,x) Q(r)^-1 r for a regular direction r."""
        if self.classify_vector(r) is not VectorClass.REGULAR:
            raise NotRegular("reflection direction must be a regular vector")
        qinv = self.eval_Q(r).inverse()
        cols = []
        for j in range(self.dim):
            e = unit_vector(self.field, self.dim, j)
            cols.append(vec_sub(e, vec_scale(self.eval_B(r, e) * qinv, r)))
        return linalg.from_columns(cols)

    def restrict(self, basis):
        """Metric data of the subspace spanned by the given independent vectors."""
        basis = list(basis)
        if len(independent_subset(basis)) != len(basis):
            raise DependentBasis("restriction basis is linearly dependent")
        q = [self.eval_Q(b) for b in basis]
        b_upper = {}
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                v = self.eval_B(basis[i], basis[j])
                if not v.is_zero():
                    b_upper[(i, j)] = v
        return QuadraticSpace(self.field, q, b_upper)

    def rescale(self, c):
        """The space (V, cQ) on the same basis."""
        c = self.field.coerce(c)
        if c.is_zero():
            raise ValueError("rescaling constant must be nonzero")
        return QuadraticSpace(
            self.field,
            [c * q for q in self.q_diag],
            {k: c * v for k, v in self.b_upper.items()},
        )


# -- standard constructors ---------------------------------------------------
def diagonal_space(field, values):
    return QuadraticSpace(field, [field.coerce(v) for v in values])


def zero_space(field, dim):
    return QuadraticSpace(field, [field.zero] * dim)


def hyperbolic_plane(field):
    """Dimension 2, Q(x) = x0 x1."""
    return QuadraticSpace(field, [field.zero, field.zero], {(0, 1): field.one})


def hyperbolic_pair(field):
    """Dimension 4, Q(x) = x0 x1 + x2 x3."""
    zero = field.zero
    return QuadraticSpace(field, [zero] * 4, {(0, 1): field.one, (2, 3): field.one})


def orthogonal_basis(space, order=None):
    """An orthogonal basis of the space; refuses characteristic 2.

    The classical split-off-a-regular-vector elimination.  `order` permutes
    the starting basis and thereby steers the pivot choice, which is handy
    for producing a second, genuinely different orthogonal basis.
    """
    if space.char == 2:
        raise CharTwo("no orthogonal basis computation in characteristic 2")
    work = standard_basis(space.field, space.dim)
    if order is not None:
        work = [work[i] for i in order]
    out = []
    while work:
        v = next((w for w in work if not space.eval_Q(w).is_zero()), None)
        if v is None:
            for i in range(len(work)):
                for j in range(i + 1, len(work)):
                    cand = vec_add(work[i], work[j])
                    if not space.eval_Q(cand).is_zero():
                        v = cand
                        break
                if v is not None:
                    break
        if v is None:
            # Q vanishes on the remaining span; away from char 2 so does B
            out.extend(work)
            break
        bvv = space.eval_B(v, v)  # = 2 Q(v) != 0
        reduced = [vec_sub(w, vec_scale(space.eval_B(v, w) / bvv, v)) for w in work]
        out.append(v)
        work = independent_subset(reduced)
    return out


class SimilarityWithRatio:
    """An invertible linear map psi between spaces together with its ratio c."""

    __slots__ = ("source", "target", "matrix", "ratio", "_matrix_inv")

    def __init__(self, source, target, matrix, ratio):
        self.source = source
        self.target = target
        self.matrix = matrix
        self.ratio = ratio
        self._matrix_inv = None

    def apply(self, x):
        return mat_vec(self.matrix, x)

    def matrix_inverse(self):
        if self._matrix_inv is None:
            self._matrix_inv = linalg.invert(self.matrix)
        return self._matrix_inv

    def inverse(self):
        ratio = self.source.field.one if self.source.is_zero_form() else self.ratio.inverse()
        inv = SimilarityWithRatio(self.target, self.source, self.matrix_inverse(), ratio)
        inv._matrix_inv = self.matrix
        return inv

    def __repr__(self):
        return "SimilarityWithRatio(ratio=%s, %r -> %r)" % (self.ratio, self.source, self.target)


def similarity_ratio(src, dst, m, budget=None):
    """The unique c with c Q = Q' o psi, or None if psi is not a similarity.

    Finite fields are checked exhaustively; over the rationals the basis
    values Q(e_j) and B(e_i, e_j) are checked, which suffices because the
    quadratic expansion of Q o psi is determined by them.
    """
    if src.dim != dst.dim:
        raise DimensionMismatch("similarity needs equal dimensions")
    if not is_invertible(m):
        raise NotInvertible("candidate similarity matrix is singular")
    field = src.field
    if src.is_zero_form():
        return field.one if dst.is_zero_form() else None

    c = None
    for j in range(src.dim):
        if not src.q_diag[j].is_zero():
            c = dst.eval_Q(mat_vec(m, unit_vector(field, src.dim, j))) / src.q_diag[j]
            break
    if c is None:
        for (i, j), b in src.b_upper.items():
            ei = unit_vector(field, src.dim, i)
            ej = unit_vector(field, src.dim, j)
            c = dst.eval_B(mat_vec(m, ei), mat_vec(m, ej)) / b
            break
    if c is None or c.is_zero():
        return None

    cols = [mat_vec(m, e) for e in standard_basis(field, src.dim)]
    for j in range(src.dim):
        if dst.eval_Q(cols[j]) != c * src.q_diag[j]:
            return None
        for i in range(j):
            if dst.eval_B(cols[i], cols[j]) != c * src.B_basis(i, j):
                return None
    if field.is_finite:
        for x in linalg.enumerate_vectors(field, src.dim, budget=budget):
            if dst.eval_Q(mat_vec(m, x)) != c * src.eval_Q(x):
                return None
    return c


def as_similarity(src, dst, m, budget=None):
    c = similarity_ratio(src, dst, m, budget=budget)
    if c is None:
        raise NotSimilar("matrix does not carry Q to a multiple of the target form")
    return SimilarityWithRatio(src, dst, m, c)


def rescaling_similarity(space, c):
    """The identity map viewed as a similarity of ratio c onto (V, cQ)."""
    c = space.field.coerce(c)
    if c.is_zero():
        raise ValueError("rescaling constant must be nonzero")
    target = space.rescale(c)
    ratio = space.field.one if space.is_zero_form() else c
    return SimilarityWithRatio(space, target, identity(space.field, space.dim), ratio)
