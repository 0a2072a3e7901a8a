"""Extending a similarity to the Clifford algebras and the rescaled product.

A similarity psi of ratio c extends to a linear bijection between the two
Clifford algebras which restricts to psi on vectors, is an algebra
homomorphism on the even parts, and in general twists products by powers of
the ratio: on a blade of length k the extension acts as

    e_{j1} ... e_{jk}  ->  c^(-floor(k/2)) psi(e_{j1}) ... psi(e_{jk}).

Pulling the multiplication of the algebra of (V, cQ) back along the identity
similarity yields a second product on the same vector space; that product
agrees with the original one on even*any and any*even, and rescales
vector*vector by c.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .clifford import Multivector, NotHomogeneous, SpaceMismatch, _bits, _popcount
from .fields import square_root
from .metric import SimilarityWithRatio, rescaling_similarity


class ZeroRatio(ValueError):
    pass


class CliffordExtension:
    """The degreewise extension of a similarity to the full Clifford algebras."""

    __slots__ = ("similarity", "_images", "_inverse")

    def __init__(self, similarity):
        self.similarity = similarity
        self._images = {}
        self._inverse = None

    @property
    def source(self):
        return self.similarity.source

    @property
    def target(self):
        return self.similarity.target

    @property
    def ratio(self):
        return self.similarity.ratio

    def inverse(self):
        if self._inverse is None:
            self._inverse = CliffordExtension(self.similarity.inverse())
            self._inverse._inverse = self
        return self._inverse

    def _blade_image(self, mask):
        img = self._images.get(mask)
        if img is None:
            tgt = self.target
            img = Multivector.one(tgt)
            for j in _bits(mask):
                img = img * Multivector.vector(
                    tgt, self.similarity.apply(linalg.unit_vector(self.source.field, self.source.dim, j))
                )
            k = _popcount(mask)
            if k >= 2:
                img = img.scale(self.ratio ** (-(k // 2)))
            self._images[mask] = img
        return img

    def apply(self, m):
        if m.space != self.source:
            raise SpaceMismatch("multivector does not live in the source algebra")
        out = Multivector.zero(self.target)
        for mask, c in m.terms.items():
            out = out + self._blade_image(mask).scale(c)
        return out

    def __repr__(self):
        return "CliffordExtension(%r)" % (self.similarity,)


@dataclass(frozen=True)
class TwistIdentityReport:
    product_twist_ok: bool
    reversal_compat_ok: bool
    inverse_power_ok: bool  # vacuously true for non-units

    @property
    def ok(self):
        return self.product_twist_ok and self.reversal_compat_ok and self.inverse_power_ok


def verify_twist_identity(ext, m, n):
    """Check the ratio-twisted product rule and its companions on one pair.

    For homogeneous m, n:  ext(m n) = c^(-deg m * deg n) ext(m) ext(n);
    ext commutes with reversal; and for units, ext(m) ext(m^-1) = c^(deg m).
    """
    if not (m.is_homogeneous() and n.is_homogeneous()):
        raise NotHomogeneous("the twist identity applies to homogeneous elements")
    c = ext.ratio
    lhs = ext.apply(m * n)
    rhs = (ext.apply(m) * ext.apply(n)).scale(c ** (-(m.degree() * n.degree())))
    product_ok = lhs == rhs

    reversal_ok = ext.apply(m.reversal()) == ext.apply(m).reversal()

    inverse_ok = True
    minv = m.try_inverse()
    if minv is not None:
        expect = Multivector.scalar(ext.target, c ** m.degree())
        inverse_ok = ext.apply(m) * ext.apply(minv) == expect
    return TwistIdentityReport(product_ok, reversal_ok, inverse_ok)


def rescaled_extension(space, c):
    """The extension of the identity similarity onto (V, cQ)."""
    c = space.field.coerce(c)
    if c.is_zero():
        raise ZeroRatio("rescaling constant must be nonzero")
    return CliffordExtension(rescaling_similarity(space, c))


def odot_product(space, c, p, q):
    """The product of Cl(V, cQ) pulled back to the algebra of (V, Q)."""
    return odot_mul(space, c)(p, q)


def odot_mul(space, c):
    """A multiplication callable computing the pulled-back product."""
    ext = rescaled_extension(space, c)
    inv = ext.inverse()

    def mul(p, q):
        return inv.apply(ext.apply(p) * ext.apply(q))

    return mul


@dataclass(frozen=True)
class IsometryExtension:
    """Witness that a square-ratio similarity rescales to an algebra isomorphism."""

    extension: CliffordExtension
    root_inverse_ratio: object  # the chosen square root of 1/c
    decomposition_ok: bool  # agrees with ext on even blades, root * ext on odd
    multiplicative_ok: bool

    @property
    def ok(self):
        return self.decomposition_ok and self.multiplicative_ok


def isometry_extension(ext, sample_pairs=None):
    """The algebra isomorphism induced by sqrt(1/c) * psi, if c is a square.

    Returns None when the ratio is not a square.  The returned witness
    records that the isometry extension equals the original extension on the
    even part and sqrt(1/c) times it on the odd part, and that it is
    multiplicative on the supplied (or default) sample pairs.
    """
    sim = ext.similarity
    root = square_root(sim.ratio.inverse())
    if root is None:
        return None
    scaled = tuple(tuple(root * e for e in row) for row in sim.matrix)
    omega = SimilarityWithRatio(sim.source, sim.target, scaled, sim.source.field.one)
    iso = CliffordExtension(omega)

    src = sim.source
    decomposition_ok = True
    for mask in range(1 << src.dim):
        blade = Multivector.blade(src, mask)
        want = ext.apply(blade)
        if _popcount(mask) & 1:
            want = want.scale(root)
        if iso.apply(blade) != want:
            decomposition_ok = False
            break

    if sample_pairs is None:
        sample_pairs = _default_pairs(src)
    multiplicative_ok = all(iso.apply(a * b) == iso.apply(a) * iso.apply(b) for a, b in sample_pairs)
    return IsometryExtension(iso, root, decomposition_ok, multiplicative_ok)


def _default_pairs(space):
    blades = [Multivector.blade(space, m) for m in range(1 << space.dim)]
    if space.field.is_finite and space.field.order ** (1 << space.dim) <= 4096:
        from .clifford import all_multivectors

        elems = all_multivectors(space)
        return [(a, b) for a in elems for b in elems]
    pairs = [(a, b) for a in blades for b in blades]
    pairs.append((sum(blades[1:], blades[0]), sum(blades[1:], blades[0])))
    return pairs
