from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from tricat.core import Triangle, TriangleMorphism
from tricat.errors import PreconditionViolated
from tricat.linalg import Field, Matrix
from tricat.toolkit import (biproduct_equations, braid, check_braid, check_puppe, check_vanishing,
                            conjugate_triangle, filling_morphism, hom_exactness, identity_triangle,
                            insert_two_signs, is_triangle_morphism, iso_via_cone, puppe, rotate,
                            split_biproduct, sum_triangles, three_by_three, triple_composition, unrotate,
                            validate_grid, validate_octahedron, verify_axioms, weak_cokernel_extend,
                            weak_kernel_lift)
from tricat.vect import Vect

F7 = Field.parse("Fp:7")
QQ = Field.parse("Q")


@pytest.fixture
def v():
    return Vect(QQ)


def _rand_cone(v, rng, hi=4):
    x, y = v.space(rng.randint(0, hi)), v.space(rng.randint(0, hi))
    return v.cone(v.sample_mor(rng, x, y))


def _same(v, t, u):
    return all(v.mor_equal(a, b) for a, b in zip(t.maps(), u.maps()))


def test_rotate_identity_triangle(v):
    x = v.space(2)
    t = identity_triangle(v, x)
    r = rotate(v, t)
    assert r.f == t.g and r.g == t.h
    assert r.h.data == -Matrix.identity(QQ, 2)


def test_rotation_round_trip_and_cube(v):
    rng = random.Random(1)
    for _ in range(20):
        t = _rand_cone(v, rng)
        assert _same(v, unrotate(v, rotate(v, t)), t)
        assert _same(v, rotate(v, unrotate(v, t)), t)
        r3 = rotate(v, rotate(v, rotate(v, t)))
        assert _same(v, r3, Triangle(*(v.negate(v.suspend_mor(m)) for m in t.maps())))


def test_insert_two_signs(v):
    rng = random.Random(2)
    t = _rand_cone(v, rng)
    s = insert_two_signs(v, t, (1, 2))
    assert s.f == t.f and s.g == v.negate(t.g) and s.h == v.negate(t.h)
    assert _same(v, insert_two_signs(v, s, (1, 2)), t)
    assert v.is_triangle(insert_two_signs(v, t, (0, 2)))
    with pytest.raises(ValueError):
        insert_two_signs(v, t, (1, 1))


def test_single_sign_change_exploratory(v):
    # in vect exactness ignores signs, so one sign change still gives a triangle
    t = v.cone(v.matrix([[1, 0]]))
    assert v.is_triangle(Triangle(v.negate(t.f), t.g, t.h))


def test_negated_triangulation_coincides_in_vect(v):
    rng = random.Random(5)
    for _ in range(20):
        x, y, z = (v.space(rng.randint(0, 3)) for _ in range(3))
        t = Triangle(v.sample_mor(rng, x, y), v.sample_mor(rng, y, z), v.sample_mor(rng, z, x))
        neg = Triangle(*(v.negate(m) for m in t.maps()))
        assert v.is_triangle(t) == v.is_triangle(neg)


def test_check_vanishing(v):
    k = v.space(1)
    assert check_vanishing(v, identity_triangle(v, k)).ok
    one = v.identity(k)
    rep = check_vanishing(v, Triangle(one, one, one))
    assert not rep.ok
    assert "vanishing gf=0" in [c.anchor for c in rep.failures()]


def test_filling_identity(v):
    rng = random.Random(3)
    t = _rand_cone(v, rng)
    m = filling_morphism(v, t, t, v.identity(t.x), v.identity(t.y))
    assert is_triangle_morphism(v, TriangleMorphism(t, t, v.identity(t.x), v.identity(t.y), m))


def test_filling_precondition(v):
    t = v.cone(v.matrix([[1, 0]]))
    with pytest.raises(PreconditionViolated):
        filling_morphism(v, t, t, v.identity(t.x), v.zero(t.y, t.y))


def test_non_unique_filling_family(v):
    rng = random.Random(4)
    x, y = v.space(2), v.space(3)
    b = v.biproduct(x, y)
    t = Triangle(v.zero(x, y), b.i2, b.p1)
    assert v.is_triangle(t)
    for _ in range(10):
        f = v.sample_mor(rng, x, y)
        m = v.add(v.identity(b.obj), v.chain(b.i2, f, b.p1))
        assert is_triangle_morphism(v, TriangleMorphism(t, t, v.identity(x), v.identity(y), m))
        assert v.is_iso(m)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_filling_random_commuting_squares(seed):
    v = Vect(F7)
    rng = random.Random(seed)
    t1, t2 = _rand_cone(v, rng), _rand_cone(v, rng)
    # choose j at random and solve for k with k f1 = f2 j when possible
    j = v.sample_mor(rng, t1.x, t2.x)
    k = v.solve_linear(t1.y, t2.y, [(lambda m: v.compose(m, t1.f), v.compose(t2.f, j))])
    if k is None:
        j = v.zero(t1.x, t2.x)
        k = v.zero(t1.y, t2.y)
    m = filling_morphism(v, t1, t2, j, k)
    assert is_triangle_morphism(v, TriangleMorphism(t1, t2, j, k, m))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_filling_between_isomorphic_triangles_is_iso(seed):
    v = Vect(F7)
    rng = random.Random(seed)
    t = _rand_cone(v, rng)
    a, b, c = (v.sample_iso(rng, o) for o in (t.x, t.y, t.z))
    t2 = conjugate_triangle(v, t, a, b, c)
    m = filling_morphism(v, t, t2, a, b)
    assert is_triangle_morphism(v, TriangleMorphism(t, t2, a, b, m))
    assert v.is_iso(m)


def test_puppe_of_identity_triangle(v):
    p = puppe(v, identity_triangle(v, v.space(2)), 1, 1)
    assert len(p.morphisms) == 5
    assert p.morphisms[0].source.key == 0 and p.morphisms[-1].target.key == 2
    assert check_puppe(v, p).ok


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_puppe_random(seed):
    v = Vect(F7)
    rng = random.Random(seed)
    t = _rand_cone(v, rng)
    p = puppe(v, t, 4, 5)
    assert p.morphisms[4] == t.f
    assert check_puppe(v, p).ok


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_braid_random(seed):
    v = Vect(F7)
    rng = random.Random(seed)
    x, y, z = (v.space(rng.randint(0, 4)) for _ in range(3))
    b = braid(v, v.sample_mor(rng, x, y), v.sample_mor(rng, y, z))
    assert check_braid(v, b).ok


def test_hom_exactness_examples(v):
    t = v.cone(v.matrix([[1, 0]]))
    assert hom_exactness(v, v.zero_object(), t).ok
    assert hom_exactness(v, v.space(1), t).ok
    # middle kernel of Hom(K, K) → Hom(K, C_f) is Hom(K, K) itself since C_f = K and g = 0
    assert t.g.data.is_zero()


def test_iso_via_cone(v):
    assert iso_via_cone(v, v.identity(v.space(3)))
    assert not iso_via_cone(v, v.matrix([[1, 0]]))
    assert iso_via_cone(v, v.matrix([[1, 2], [3, 4]]))


def test_weak_cokernel_extend(v):
    f = v.matrix([[1], [0]])
    t = v.cone(f)
    h = v.matrix([[0, 1]])
    e = weak_cokernel_extend(v, t, h)
    assert v.compose(e, t.g) == h
    z = weak_cokernel_extend(v, t, v.zero(t.y, v.space(2)))
    assert v.compose(z, t.g).data.is_zero()
    with pytest.raises(PreconditionViolated):
        weak_cokernel_extend(v, t, v.matrix([[1, 0]]))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_weak_kernel_and_cokernel_random(seed):
    v = Vect(F7)
    rng = random.Random(seed)
    t = _rand_cone(v, rng)
    w = v.space(rng.randint(0, 3))
    # maps killed by f: factor through the kernel part of the cone
    g = v.compose(v.desuspend_mor(t.h), v.sample_mor(rng, w, v.desuspend_obj(t.z)))
    lift = weak_kernel_lift(v, t, g)
    assert v.mor_equal(v.compose(v.desuspend_mor(t.h), lift), g)
    h = v.compose(v.sample_mor(rng, t.z, w), t.g)
    e = weak_cokernel_extend(v, t, h)
    assert v.mor_equal(v.compose(e, t.g), h)


def test_split_biproduct_examples(v):
    k = v.space(1)
    b = split_biproduct(v, v.identity(k), v.identity(k))
    assert b.i2.source.key == 0 and all(biproduct_equations(v, b).values())
    b = split_biproduct(v, v.matrix([[1], [0]]), v.matrix([[1, 0]]))
    assert b.obj.key == 2 and b.i2.source == v.cone(v.matrix([[1], [0]])).z
    assert all(biproduct_equations(v, b).values())
    with pytest.raises(PreconditionViolated):
        split_biproduct(v, v.matrix([[1], [0]]), v.matrix([[0, 1]]))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_split_biproduct_random(seed):
    v = Vect(F7)
    rng = random.Random(seed)
    a, n = rng.randint(0, 3), rng.randint(0, 3)
    x, y = v.space(a), v.space(a + n)
    # the first columns of an automorphism give a split monomorphism
    f = v.mor(v.sample_iso(rng, y).data.columns(range(a)), x, y)
    g = v.solve_linear(y, x, [(lambda m: v.compose(m, f), v.identity(x))])
    b = split_biproduct(v, f, g)
    assert all(biproduct_equations(v, b).values())


def test_sum_triangles_examples(v):
    x = v.space(2)
    s = sum_triangles(v, identity_triangle(v, x), identity_triangle(v, x))
    assert s.f.data == Matrix.identity(QQ, 4) and s.z.key == 0
    y = v.space(3)
    z = v.zero_object()
    left = Triangle(v.zero(x, z), v.zero(z, x), v.identity(x))
    right = Triangle(v.zero(z, y), v.identity(y), v.zero(y, z))
    s = sum_triangles(v, left, right)
    assert v.is_triangle(s) and s.f.data.is_zero()


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_sum_triangles_random(seed):
    v = Vect(F7)
    rng = random.Random(seed)
    assert v.is_triangle(sum_triangles(v, _rand_cone(v, rng), _rand_cone(v, rng)))


def _random_square(v, rng):
    x, y, x2 = (v.space(rng.randint(0, 3)) for _ in range(3))
    f, g = v.sample_mor(rng, x, y), v.sample_mor(rng, x, x2)
    y2 = v.space(rng.randint(0, 3))
    k = v.sample_mor(rng, y, y2)
    h = v.solve_linear(x2, y2, [(lambda m: v.compose(m, g), v.compose(k, f))])
    if h is None:
        k = v.zero(y, y2)
        h = v.zero(x2, y2)
    return f, g, h, k


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_three_by_three_random(seed):
    v = Vect(F7)
    rng = random.Random(seed)
    grid = three_by_three(v, *_random_square(v, rng))
    assert validate_grid(v, grid).ok


def test_three_by_three_identities(v):
    x = v.space(2)
    one = v.identity(x)
    grid = three_by_three(v, one, one, one, one)
    assert validate_grid(v, grid).ok
    assert grid.col_m.z.key == 0 and grid.row_j.y.key == 0


def test_three_by_three_biproduct_corner(v):
    x, y = v.space(2), v.space(1)
    z = v.zero_object()
    dx, dy = v.desuspend_obj(x), v.desuspend_obj(y)
    f, g = v.zero(z, dx), v.zero(z, dy)
    k, h = v.zero(dx, z), v.zero(dy, z)
    row_f = Triangle(f, v.identity(dx), v.zero(dx, z))
    col_g = Triangle(g, v.identity(dy), v.zero(dy, z))
    row_h = Triangle(h, v.zero(z, y), v.identity(y))
    col_k = Triangle(k, v.zero(z, x), v.identity(x))
    grid = three_by_three(v, f, g, h, k, row_f=row_f, row_h=row_h, col_g=col_g, col_k=col_k)
    assert validate_grid(v, grid).ok
    m = grid.col_m
    assert v.is_zero_mor(m.f)
    assert v.obj_iso(m.z, v.biproduct(x, y).obj) is not None


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_triple_composition_random(seed):
    v = Vect(F7)
    rng = random.Random(seed)
    objs = [v.space(rng.randint(0, 3)) for _ in range(4)]
    f, g, h = (v.sample_mor(rng, objs[i], objs[i + 1]) for i in range(3))
    tc = triple_composition(v, f, g, h)
    assert v.is_triangle(tc.triangle)
    assert v.mor_equal(tc.triangle.f, v.compose(tc.beta, tc.alpha))
    assert tc.triangle.y == v.cone(v.chain(h, g, f)).z
    assert tc.triangle.z == v.cone(v.compose(h, g)).z


def test_triple_composition_identities(v):
    one = v.identity(v.space(2))
    tc = triple_composition(v, one, one, one)
    assert all(o.key == 0 for o in (tc.triangle.x, tc.triangle.y, tc.triangle.z))


def test_triple_with_identity_middle(v):
    rng = random.Random(8)
    x, y, z = v.space(2), v.space(3), v.space(2)
    f, h = v.sample_mor(rng, x, y), v.sample_mor(rng, y, z)
    tc = triple_composition(v, f, v.identity(y), h)
    w = v.octahedron(f, h)
    assert v.is_triangle(tc.triangle)
    assert (tc.triangle.x, tc.triangle.y, tc.triangle.z) == (w.triangle.x, w.triangle.y, w.triangle.z)


def test_octahedron_identity_second_map(v):
    f = v.matrix([[1, 2], [0, 0], [3, 1]])
    w = v.octahedron(f, v.identity(f.target))
    assert validate_octahedron(v, w).ok
    assert v.is_iso(w.k)


def test_verify_axioms_vect_small():
    r = verify_axioms(Vect(F7), seed=3, samples=20, max_dim=4)
    assert r.ok, r.failures()[:3]


def test_verify_axioms_zero_category():
    class ZeroVect(Vect):
        def sample_object(self, rng, max_dim):
            return self.space(0)

    assert verify_axioms(ZeroVect(F7), seed=0, samples=5).ok


def test_mutated_cone_sign_is_detected():
    class Flipped(Vect):
        def _cone(self, f):
            t = super()._cone(f)
            return Triangle(t.f, t.g, self.negate(t.h))

    r = verify_axioms(Flipped(F7), seed=1, samples=30, max_dim=4)
    assert not r.ok
    assert any(c.anchor.startswith("T5") for c in r.failures())
