"""Clifford extensions of similarities, the pulled-back product, isometry lifts."""

import pytest

from clifproj.clifford import Multivector, NotHomogeneous, all_multivectors, parse_multivector
from clifproj.extension import (
    CliffordExtension,
    ZeroRatio,
    isometry_extension,
    odot_mul,
    odot_product,
    rescaled_extension,
    verify_twist_identity,
)
from clifproj.fields import gf, rationals
from clifproj.linalg import identity, matrix, vector
from clifproj.lipschitz import Ray
from clifproj.metric import as_similarity, diagonal_space, hyperbolic_plane, zero_space


def homogeneous_elements(space):
    return [m for m in all_multivectors(space) if not m.is_zero() and m.is_homogeneous()]


def rescale_ext(space, c):
    return rescaled_extension(space, c)


def test_extension_restricts_to_psi_on_vectors():
    f = gf(3)
    s = diagonal_space(f, [1, 1])
    ext = rescale_ext(s, f.from_int(2))
    for v in [(1, 0), (0, 1), (1, 2)]:
        vm = Multivector.vector(s, vector(f, v))
        img = ext.apply(vm)
        assert img.vector_coords() == vector(f, v)


def test_extension_bijective_with_inverse():
    f = gf(3)
    s = diagonal_space(f, [1, 2])
    ext = rescale_ext(s, f.from_int(2))
    inv = ext.inverse()
    for m in all_multivectors(s):
        assert inv.apply(ext.apply(m)) == m


def test_extension_isometry_is_isomorphism():
    # ratio 1 kills every ratio power, so the extension is multiplicative
    f = gf(2)
    s = hyperbolic_plane(f)
    swap = matrix(f, [[0, 1], [1, 0]])
    ext = CliffordExtension(as_similarity(s, s, swap))
    assert ext.ratio == f.one
    for a in all_multivectors(s):
        for b in all_multivectors(s):
            assert ext.apply(a * b) == ext.apply(a) * ext.apply(b)


def test_extension_even_blade_scaling():
    f = gf(3)
    s = diagonal_space(f, [1, 1])
    c = f.from_int(2)
    ext = rescale_ext(s, c)
    e01 = Multivector.blade(s, 0b11)
    img = ext.apply(e01)
    # on a length-2 blade the image is c^-1 psi(e0) psi(e1)
    tgt = ext.target
    want = (Multivector.basis_vector(tgt, 0) * Multivector.basis_vector(tgt, 1)).scale(c.inverse())
    assert img == want


def test_twist_identity_exhaustive_gf3():
    f = gf(3)
    s = diagonal_space(f, [1, 1])
    ext = rescale_ext(s, f.from_int(2))
    for a in homogeneous_elements(s):
        for b in homogeneous_elements(s):
            assert verify_twist_identity(ext, a, b).ok


def test_twist_identity_requires_homogeneous():
    f = gf(3)
    s = diagonal_space(f, [1, 1])
    ext = rescale_ext(s, f.from_int(2))
    mixed = Multivector.one(s) + Multivector.basis_vector(s, 0)
    with pytest.raises(NotHomogeneous):
        verify_twist_identity(ext, mixed, mixed)


def test_extension_commutes_with_involution():
    f = gf(5)
    s = diagonal_space(f, [1, 2])
    ext = rescale_ext(s, f.from_int(3))
    for m in all_multivectors(s):
        assert ext.apply(m.main_involution()) == ext.apply(m).main_involution()


def test_odot_trivial_ratio():
    f = gf(3)
    s = diagonal_space(f, [1, 1])
    for a in all_multivectors(s):
        for b in all_multivectors(s):
            assert odot_product(s, f.one, a, b) == a * b


def test_odot_vectors_scale_by_c():
    f = gf(5)
    s = diagonal_space(f, [1, 2])
    c = f.from_int(2)
    mul = odot_mul(s, c)
    for xv in [(1, 0), (0, 1), (2, 3), (4, 4)]:
        for yv in [(1, 1), (3, 0)]:
            x = Multivector.vector(s, vector(f, xv))
            y = Multivector.vector(s, vector(f, yv))
            assert mul(x, y) == (x * y).scale(c)


def test_odot_even_agreement():
    # even * anything and anything * even coincide with the plain product
    f = gf(3)
    s = diagonal_space(f, [1, 1])
    c = f.from_int(2)
    mul = odot_mul(s, c)
    evens = [m for m in all_multivectors(s) if m.parity().value == "even"]
    for p in evens:
        for m in all_multivectors(s):
            assert mul(p, m) == p * m
            assert mul(m, p) == m * p


def test_odot_rays_agree_for_homogeneous():
    f = gf(3)
    s = diagonal_space(f, [1, 1])
    mul = odot_mul(s, f.from_int(2))
    for p in homogeneous_elements(s):
        for q in homogeneous_elements(s):
            pq = p * q
            opq = mul(p, q)
            assert pq.is_zero() == opq.is_zero()
            if not pq.is_zero():
                assert Ray(pq) == Ray(opq)


def test_odot_zero_ratio_rejected():
    s = diagonal_space(gf(3), [1])
    with pytest.raises(ZeroRatio):
        odot_mul(s, gf(3).zero)


def test_odot_zero_form_is_plain_product():
    f = gf(3)
    s = zero_space(f, 2)
    mul = odot_mul(s, f.from_int(2))
    for a in all_multivectors(s):
        for b in all_multivectors(s):
            assert mul(a, b) == a * b


def test_isometry_extension_square_ratio():
    f = gf(7)
    s = diagonal_space(f, [1])
    ext = rescale_ext(s, f.from_int(2))  # 2 = 3^2 is a square mod 7
    witness = isometry_extension(ext)
    assert witness is not None
    assert witness.ok
    assert witness.root_inverse_ratio * witness.root_inverse_ratio == f.from_int(2).inverse()


def test_isometry_extension_nonsquare_none():
    f = gf(3)
    s = diagonal_space(f, [1])
    ext = rescale_ext(s, f.from_int(2))  # 2 is not a square mod 3
    assert isometry_extension(ext) is None


def test_isometry_extension_trivial_ratio():
    f = gf(3)
    s = diagonal_space(f, [1, 1])
    ext = rescale_ext(s, f.one)
    witness = isometry_extension(ext)
    assert witness is not None and witness.ok
    for m in all_multivectors(s):
        assert witness.extension.apply(m) == ext.apply(m)


def test_signature_flip_square_twist():
    # the square of the image differs from the image of the square by c^-1
    f = rationals()
    s = diagonal_space(f, [-1])
    t = diagonal_space(f, [1])
    ext = CliffordExtension(as_similarity(s, t, identity(f, 1)))
    i = Multivector.basis_vector(s, 0)
    assert ext.apply(i * i) == Multivector.scalar(t, f.from_int(-1))
    assert ext.apply(i) * ext.apply(i) == Multivector.one(t)
