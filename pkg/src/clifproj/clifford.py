"""The Clifford algebra of a metric vector space, as sparse blade multivectors.

A multivector is a finitely supported map from blade masks (subsets of the
basis index set {0..d-1}, encoded as bit patterns) to nonzero scalars.  The
ordered products e_{j1} ... e_{jk} with j1 < ... < jk form a basis, so a mask
*is* a basis element.

Products are canonicalised by iterative adjacent transposition using
e_j e_j = Q(e_j) and, for i > j, e_i e_j = B(e_i, e_j) - e_j e_i.  This is
correct in every characteristic and for bases that are not orthogonal, where
the usual sign-count shortcut fails.  Blade-pair products are memoised per
space, which makes closure enumerations cheap.
"""

from __future__ import annotations

from enum import Enum

from . import linalg
from .fields import Scalar


class SpaceMismatch(ValueError):
    pass


class ZeroElement(ValueError):
    pass


class NotHomogeneous(ValueError):
    pass


class Parity(Enum):
    EVEN = "even"
    ODD = "odd"
    MIXED = "mixed"


def _bits(mask):
    j = 0
    while mask:
        if mask & 1:
            yield j
        mask >>= 1
        j += 1


def _popcount(mask):
    return bin(mask).count("1")


def _blade_times_vec(space, mask, j):
    """e_mask * e_j as a tuple of (mask, coefficient) pairs; memoised."""
    tab = space._cache.setdefault("btv", {})
    key = (mask, j)
    hit = tab.get(key)
    if hit is not None:
        return hit
    field = space.field
    bit = 1 << j
    if mask == 0:
        res = ((bit, field.one),)
    else:
        k = mask.bit_length() - 1  # largest index in the blade
        if k < j:
            res = ((mask | bit, field.one),)
        elif k == j:
            q = space.q_diag[j]
            res = ((mask ^ bit, q),) if not q.is_zero() else ()
        else:
            rest = mask ^ (1 << k)
            acc = {}
            b = space.B_basis(k, j)
            if not b.is_zero():
                acc[rest] = b
            for m2, c2 in _blade_times_vec(space, rest, j):
                acc[m2 | (1 << k)] = -c2  # masks below never contain k
            res = tuple(sorted(acc.items()))
    tab[key] = res
    return res


def _blade_product(space, am, bm):
    """e_am * e_bm as a tuple of (mask, coefficient) pairs; memoised."""
    tab = space._cache.setdefault("pair", {})
    key = (am, bm)
    hit = tab.get(key)
    if hit is not None:
        return hit
    acc = {am: space.field.one}
    for j in _bits(bm):
        nxt = {}
        for m, c in acc.items():
            for m2, c2 in _blade_times_vec(space, m, j):
                prev = nxt.get(m2)
                v = c * c2 if prev is None else prev + c * c2
                if v.is_zero():
                    nxt.pop(m2, None)
                else:
                    nxt[m2] = v
        acc = nxt
    res = tuple(sorted(acc.items()))
    tab[key] = res
    return res


def _blade_reversal(space, mask):
    """The reversed product e_{jk} ... e_{j1}, recanonicalised; memoised."""
    tab = space._cache.setdefault("rev", {})
    hit = tab.get(mask)
    if hit is not None:
        return hit
    acc = {0: space.field.one}
    for j in reversed(list(_bits(mask))):
        nxt = {}
        for m, c in acc.items():
            for m2, c2 in _blade_times_vec(space, m, j):
                prev = nxt.get(m2)
                v = c * c2 if prev is None else prev + c * c2
                if v.is_zero():
                    nxt.pop(m2, None)
                else:
                    nxt[m2] = v
        acc = nxt
    res = tuple(sorted(acc.items()))
    tab[mask] = res
    return res


class Multivector:
    """Element of the Clifford algebra of one space.  Immutable."""

    __slots__ = ("space", "terms", "_hash")

    def __init__(self, space, terms):
        self.space = space
        limit = 1 << space.dim
        cleaned = {}
        for mask, c in terms.items():
            if not (0 <= mask < limit):
                raise ValueError("blade mask %d out of range for dimension %d" % (mask, space.dim))
            if not c.is_zero():
                cleaned[mask] = c
        self.terms = cleaned
        self._hash = hash((space._hash, frozenset((m, c.sort_key()) for m, c in cleaned.items())))

    # -- constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, space):
        return cls(space, {})

    @classmethod
    def scalar(cls, space, c):
        return cls(space, {0: space.field.coerce(c)})

    @classmethod
    def one(cls, space):
        return cls(space, {0: space.field.one})

    @classmethod
    def vector(cls, space, coords):
        if len(coords) != space.dim:
            raise ValueError("vector length does not match the space dimension")
        return cls(space, {1 << j: c for j, c in enumerate(coords)})

    @classmethod
    def basis_vector(cls, space, j):
        return cls(space, {1 << j: space.field.one})

    @classmethod
    def blade(cls, space, mask, coeff=None):
        c = space.field.one if coeff is None else space.field.coerce(coeff)
        return cls(space, {mask: c})

    # -- ring structure ---------------------------------------------------------
    def _check_space(self, other):
        if self.space != other.space:
            raise SpaceMismatch("operands live in different Clifford algebras")

    def __add__(self, other):
        self._check_space(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            prev = terms.get(m)
            v = c if prev is None else prev + c
            if v.is_zero():
                terms.pop(m, None)
            else:
                terms[m] = v
        return Multivector(self.space, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Multivector(self.space, {m: -c for m, c in self.terms.items()})

    def scale(self, c):
        c = self.space.field.coerce(c)
        if c.is_zero():
            return Multivector.zero(self.space)
        return Multivector(self.space, {m: c * x for m, x in self.terms.items()})

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        self._check_space(other)
        space = self.space
        acc = {}
        for am, ac in self.terms.items():
            for bm, bc in other.terms.items():
                c = ac * bc
                for rm, rc in _blade_product(space, am, bm):
                    prev = acc.get(rm)
                    v = c * rc if prev is None else prev + c * rc
                    if v.is_zero():
                        acc.pop(rm, None)
                    else:
                        acc[rm] = v
        return Multivector(space, acc)

    # -- structure maps ---------------------------------------------------------
    def main_involution(self):
        """Negate the odd part; the algebra automorphism with x -> -x on vectors."""
        return Multivector(
            self.space,
            {m: (-c if _popcount(m) & 1 else c) for m, c in self.terms.items()},
        )

    def reversal(self):
        """The antiautomorphism fixing vectors: blades re-multiplied backwards."""
        space = self.space
        acc = {}
        for m, c in self.terms.items():
            for rm, rc in _blade_reversal(space, m):
                prev = acc.get(rm)
                v = c * rc if prev is None else prev + c * rc
                if v.is_zero():
                    acc.pop(rm, None)
                else:
                    acc[rm] = v
        return Multivector(space, acc)

    # -- inspection ---------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def parity(self):
        pars = {_popcount(m) & 1 for m in self.terms}
        if pars == {0} or not pars:
            return Parity.EVEN
        if pars == {1}:
            return Parity.ODD
        return Parity.MIXED

    def is_homogeneous(self):
        return self.parity() is not Parity.MIXED

    def degree(self):
        """0 or 1 for homogeneous elements; raises NotHomogeneous otherwise."""
        p = self.parity()
        if p is Parity.MIXED:
            raise NotHomogeneous("element has both even and odd terms")
        return 0 if p is Parity.EVEN else 1

    def even_part(self):
        return Multivector(self.space, {m: c for m, c in self.terms.items() if not _popcount(m) & 1})

    def odd_part(self):
        return Multivector(self.space, {m: c for m, c in self.terms.items() if _popcount(m) & 1})

    def filtration_degree(self):
        """Least k with the element in the span of products of <= k vectors."""
        if not self.terms:
            raise ZeroElement("the zero multivector has no filtration degree")
        return max(_popcount(m) for m in self.terms)

    def scalar_part(self):
        return self.terms.get(0, self.space.field.zero)

    def is_scalar(self):
        return not self.terms or set(self.terms) == {0}

    def vector_coords(self):
        """Coordinates if the element is a pure vector, else None."""
        field = self.space.field
        coords = [field.zero] * self.space.dim
        for m, c in self.terms.items():
            if _popcount(m) != 1:
                return None
            coords[m.bit_length() - 1] = c
        return tuple(coords)

    def coordinates(self):
        """Dense coordinate tuple over all 2^dim blade masks."""
        field = self.space.field
        return tuple(self.terms.get(m, field.zero) for m in range(1 << self.space.dim))

    def try_inverse(self, mul=None):
        """Two-sided inverse if the element is a unit, else None.

        Solves the left-multiplication system, then verifies the other side.
        """
        if not self.terms:
            return None
        space = self.space
        product = mul if mul is not None else Multivector.__mul__
        dim = 1 << space.dim
        cols = []
        for b in range(dim):
            cols.append(product(self, Multivector.blade(space, b)).coordinates())
        m = linalg.from_columns(cols)
        rhs = Multivector.one(space).coordinates()
        x = linalg.solve(m, rhs)
        if x is None:
            return None
        cand = Multivector(space, {mask: c for mask, c in enumerate(x)})
        if product(self, cand).terms != {0: space.field.one}:
            return None
        if product(cand, self).terms != {0: space.field.one}:
            return None
        return cand

    # -- identity -----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.space == other.space and self.terms == other.terms

    def __hash__(self):
        return self._hash

    def sort_key(self):
        return tuple(sorted((m, c.sort_key()) for m, c in self.terms.items()))

    # -- text form ------------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mask in sorted(self.terms):
            c = self.terms[mask]
            blade = "^".join("e%d" % j for j in _bits(mask))
            if mask == 0:
                parts.append(_coeff_str(c))
            elif c.is_one():
                parts.append(blade)
            else:
                parts.append("%s*%s" % (_coeff_str(c), blade))
        return " + ".join(parts)

    def __repr__(self):
        return "<%s | %s>" % (self, self.space.field)


def _coeff_str(c):
    s = str(c)
    return "(%s)" % s if "+" in s else s


def geometric_product(m, n):
    return m * n


def main_involution(m):
    return m.main_involution()


def reversal(m):
    return m.reversal()


def parity(m):
    return m.parity()


def filtration_degree(m):
    return m.filtration_degree()


def try_inverse(m, mul=None):
    return m.try_inverse(mul=mul)


def masks_of_parity(dim, par):
    """All blade masks of the given parity (0 or 1), ascending."""
    return [m for m in range(1 << dim) if (_popcount(m) & 1) == par]


def all_multivectors(space, masks=None):
    """Every multivector supported on the given masks (default: all)."""
    from itertools import product as iproduct

    if masks is None:
        masks = range(1 << space.dim)
    masks = list(masks)
    out = []
    for coeffs in iproduct(space.field.elements(), repeat=len(masks)):
        out.append(Multivector(space, dict(zip(masks, coeffs))))
    return out


def parse_multivector(space, text):
    """Parse the textual syntax, e.g. ``3*e0^e2 + 1`` or ``(w+1)*e1``.

    Blade factors must appear with strictly increasing indices; repeated or
    decreasing indices are rejected.
    """
    field = space.field
    text = text.strip()
    if text == "0":
        return Multivector.zero(space)
    terms = {}
    for chunk in _split_top_level(text):
        part = chunk.strip()
        if not part:
            raise ValueError("empty term in %r" % text)
        coeff_text, blade_text = _split_term(part)
        coeff = field.one if coeff_text is None else field.parse_scalar(coeff_text)
        mask = _parse_blade(space, blade_text) if blade_text else 0
        prev = terms.get(mask, field.zero)
        v = prev + coeff
        if v.is_zero():
            terms.pop(mask, None)
        else:
            terms[mask] = v
    return Multivector(space, terms)


def _split_top_level(text):
    """Split a sum on '+' signs that sit outside parentheses."""
    parts = []
    depth = 0
    cur = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError("unbalanced parentheses in %r" % text)
        if ch == "+" and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise ValueError("unbalanced parentheses in %r" % text)
    parts.append("".join(cur))
    return parts


def _split_term(part):
    if part.startswith("("):
        close = part.index(")")
        coeff = part[1:close]
        rest = part[close + 1 :].strip()
        if rest.startswith("*"):
            rest = rest[1:].strip()
        return coeff, rest or None
    if "*" in part:
        coeff, blade = part.split("*", 1)
        return coeff.strip(), blade.strip()
    if part.startswith("e") and len(part) > 1 and part[1].isdigit():
        return None, part
    return part, None


def _parse_blade(space, text):
    mask = 0
    last = -1
    for factor in text.split("^"):
        factor = factor.strip()
        if not factor.startswith("e"):
            raise ValueError("bad blade factor %r" % factor)
        j = int(factor[1:])
        if j <= last:
            raise ValueError("blade indices must increase strictly: %r" % text)
        if j >= space.dim:
            raise ValueError("blade index %d out of range" % j)
        mask |= 1 << j
        last = j
    return mask
