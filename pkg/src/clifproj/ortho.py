"""Brute-force weak orthogonal groups and their projective quotients.

The weak orthogonal group consists of the isometries fixing the radical
elementwise.  It is enumerated by exhaustive search over candidate matrices,
so it serves as the independent oracle against which generator-based
constructions (reflection subgroups, twisted adjoint images) are tested.
The search walks column tuples and prunes on the basis values of Q and B,
which is equivalent to filtering all invertible matrices: a linear map is an
isometry exactly when it preserves Q(e_j) and B(e_i, e_j) for all basis
indices, by the quadratic expansion of Q.
"""

from __future__ import annotations

from . import linalg
from .config import enumeration_budget
from .linalg import BudgetExceeded, identity, is_invertible, mat_key, mat_mul, mat_neg, mat_vec


class FiniteGroupTable:
    """A finite group on canonical hashable elements with a lazy product memo."""

    __slots__ = ("elements", "identity", "generators", "_mul", "_inv", "_index", "_memo")

    def __init__(self, elements, mul, identity, inverse=None, generators=None, key=None):
        self.elements = tuple(sorted(elements, key=key) if key else elements)
        self._mul = mul
        self._inv = inverse
        self.identity = identity
        self.generators = tuple(generators) if generators is not None else None
        self._index = {e: i for i, e in enumerate(self.elements)}
        self._memo = {}
        if identity not in self._index:
            raise ValueError("identity is not among the group elements")

    def __len__(self):
        return len(self.elements)

    def __contains__(self, e):
        return e in self._index

    def __iter__(self):
        return iter(self.elements)

    @property
    def order(self):
        return len(self.elements)

    def compose(self, a, b):
        key = (a, b)
        r = self._memo.get(key)
        if r is None:
            r = self._mul(a, b)
            if r not in self._index:
                raise ValueError("composition left the element set; table is not closed")
            self._memo[key] = r
        return r

    def inverse(self, a):
        if self._inv is not None:
            return self._inv(a)
        for b in self.elements:
            if self.compose(a, b) == self.identity and self.compose(b, a) == self.identity:
                return b
        raise ValueError("no inverse found; table is not a group")

    def element_set(self):
        return frozenset(self.elements)

    def verify_group_axioms(self):
        """Closure, identity and inverses, checked exhaustively."""
        for a in self.elements:
            if self.compose(a, self.identity) != a or self.compose(self.identity, a) != a:
                return False
            self.inverse(a)
        for a in self.elements:
            for b in self.elements:
                self.compose(a, b)
        return True


def mul_close(generators, mul, identity):
    """Closure of a generator set under multiplication (plus the identity)."""
    seen = {identity}
    frontier = [identity]
    gens = list(generators)
    for g in gens:
        if g not in seen:
            seen.add(g)
            frontier.append(g)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                p = mul(a, g)
                if p not in seen:
                    seen.add(p)
                    nxt.append(p)
        frontier = nxt
    return seen


def enumerate_O_weak(space, budget=None):
    """All isometries of the space fixing its radical elementwise."""
    field = space.field
    d = space.dim
    if d == 0:
        return FiniteGroupTable([()], mat_mul, (), inverse=lambda a: a)
    if not field.is_finite:
        if d == 1:
            # scalings l with l^2 Q = Q; only +-1 when Q != 0, only id otherwise
            ident = identity(field, 1)
            elems = [ident] if space.is_zero_form() else [ident, mat_neg(ident)]
            return FiniteGroupTable(elems, mat_mul, ident, inverse=linalg.invert, key=mat_key)
        from .fields import InfiniteField

        raise InfiniteField("cannot enumerate isometries over %s above dimension 1" % field)
    limit = enumeration_budget(budget)
    count = field.order ** (d * d)
    if count > limit:
        raise BudgetExceeded("orthogonal-group search over budget", count)

    vectors = linalg.enumerate_vectors(field, d, budget=budget)
    qtab = {v: space.eval_Q(v) for v in vectors}
    btab = {}

    def bval(u, v):
        key = (u, v)
        r = btab.get(key)
        if r is None:
            r = space.eval_B(u, v)
            btab[key] = r
        return r

    # columns pinned by radical basis vectors that are standard basis vectors
    pinned = {}
    basis = linalg.standard_basis(field, d)
    radical = space.radical()
    rad_std = []
    for r in radical:
        nz = [j for j, e in enumerate(r) if not e.is_zero()]
        if len(nz) == 1 and r[nz[0]].is_one():
            pinned[nz[0]] = basis[nz[0]]
        else:
            rad_std.append(r)

    candidates = []
    for j in range(d):
        if j in pinned:
            candidates.append([pinned[j]])
        else:
            qj = space.q_diag[j]
            candidates.append([v for v in vectors if qtab[v] == qj])

    found = []
    cols = [None] * d

    def extend(j):
        if j == d:
            m = linalg.from_columns(cols)
            if not is_invertible(m):
                return
            for r in rad_std:
                if mat_vec(m, r) != r:
                    return
            found.append(m)
            return
        for v in candidates[j]:
            ok = True
            for i in range(j):
                if bval(cols[i], v) != space.B_basis(i, j):
                    ok = False
                    break
            if ok:
                cols[j] = v
                extend(j + 1)
        cols[j] = None

    extend(0)
    return FiniteGroupTable(found, mat_mul, identity(field, d), inverse=linalg.invert, key=mat_key)


def reflection_subgroup(space, budget=None):
    """Closure of all reflections in regular directions, inside O'."""
    field = space.field
    d = space.dim
    ident = identity(field, d)
    if d == 0:
        return FiniteGroupTable([()], mat_mul, ())
    gens = []
    seen = set()
    for v in linalg.projective_representatives(field, d, budget=budget):
        if space.eval_Q(v).is_zero():
            continue
        m = space.reflection(v)
        if m not in seen:
            seen.add(m)
            gens.append(m)
    elements = mul_close(gens, mat_mul, ident)
    return FiniteGroupTable(
        elements, mat_mul, ident, inverse=linalg.invert, generators=gens, key=mat_key
    )


def i_weak(space):
    """The intersection of O' with {id, -id}; order 1 or 2.

    Computable without enumeration: -id is always an isometry, it fixes the
    radical exactly when the radical is trivial or the characteristic is 2,
    and it differs from id exactly when the characteristic is not 2 and the
    dimension is positive.  The result is cross-checked against the
    equivalent disjunction dim V = 0, or radical nonzero, or char 2.
    """
    d = space.dim
    ident = identity(space.field, d)
    char2 = space.char == 2
    neg = mat_neg(ident)
    nontrivial = (not char2) and d > 0 and space.radical_dim() == 0
    order_one_criterion = d == 0 or space.radical_dim() > 0 or char2
    if nontrivial == order_one_criterion:
        raise AssertionError("inconsistent characterisations of the projective kernel")
    elements = [ident, neg] if nontrivial else [ident]
    return FiniteGroupTable(elements, mat_mul, ident, inverse=lambda a: a, key=mat_key)


def canonical_mod_sign(m):
    """The representative min(m, -m) used for cosets modulo {id, -id}."""
    n = mat_neg(m)
    return m if mat_key(m) <= mat_key(n) else n


def project_to_PO_weak(space, g):
    """The quotient of O' by its +-id kernel, on canonical representatives."""
    iw = i_weak(space)
    if len(iw) == 1:
        reps = list(g.elements)
        mul = g._mul
        canon = lambda m: m
    else:
        reps = sorted({canonical_mod_sign(m) for m in g.elements}, key=mat_key)
        mul = lambda a, b: canonical_mod_sign(mat_mul(a, b))
        canon = canonical_mod_sign
    table = FiniteGroupTable(
        reps, mul, canon(identity(space.field, space.dim)), inverse=lambda a: canon(linalg.invert(a)), key=mat_key
    )
    return table
