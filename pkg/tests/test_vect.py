from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from tricat.core import Triangle
from tricat.errors import NotATriangle, ShapeMismatch
from tricat.linalg import Field, Matrix, rank
from tricat.vect import Vect, decompose_triangle, standard_triangle

F7 = Field.parse("Fp:7")
QQ = Field.parse("Q")


@pytest.fixture
def v():
    return Vect(QQ)


def test_compose_example(v):
    f = v.matrix([[1, 0]])
    g = v.matrix([[1], [1]])
    assert v.compose(f, g).data == Matrix.from_rows(QQ, [[1]])


def test_compose_shape_mismatch(v):
    with pytest.raises(ShapeMismatch):
        v.compose(v.matrix([[1, 0]]), v.matrix([[1, 0]]))


def test_suspension_is_identity(v):
    x = v.space(3)
    assert v.suspend_obj(x) == x
    f = v.matrix([[1, 2, 3]])
    assert v.suspend_mor(f) == f and v.desuspend_mor(f) == f


def test_cone_of_identity_is_zero(v):
    t = v.cone(v.identity(v.space(3)))
    assert t.z.key == 0
    assert v.is_triangle(t)


def test_cone_of_zero_map(v):
    x, y = v.space(2), v.space(3)
    t = v.cone(v.zero(x, y))
    assert t.z.key == 5
    # g includes Y as the second summand, h projects onto the first
    assert t.g.data == Matrix.vstack([Matrix.zeros(QQ, 2, 3), Matrix.identity(QQ, 3)])
    assert t.h.data == Matrix.hstack([Matrix.identity(QQ, 2), Matrix.zeros(QQ, 2, 3)])


def test_cone_of_projection(v):
    t = v.cone(v.matrix([[1, 0]]))
    assert t.z.key == 1
    assert t.h.data == Matrix.from_rows(QQ, [[0], [1]])
    assert v.is_triangle(t)


def test_is_triangle_examples(v):
    k = v.space(1)
    one = v.identity(k)
    assert not v.is_triangle(Triangle(one, one, one))
    t = Triangle(v.zero(k, k), v.matrix([[1], [0]]), v.matrix([[0, 1]]))
    assert v.is_triangle(t)


def test_generic_is_triangle_agrees_with_exactness(v):
    rng = random.Random(3)
    from tricat.core import Instance
    for _ in range(60):
        x, y, z = (v.space(rng.randint(0, 3)) for _ in range(3))
        t = Triangle(v.sample_mor(rng, x, y), v.sample_mor(rng, y, z), v.sample_mor(rng, z, x))
        assert Instance.is_triangle(v, t) == v.is_triangle(t)
        c = v.cone(v.sample_mor(rng, x, y))
        assert Instance.is_triangle(v, c) and v.is_triangle(c)


def test_decompose_examples(v):
    k = v.space(1)
    assert decompose_triangle(v, Triangle(v.identity(k), v.zero(k, v.space(0)), v.zero(v.space(0), k)))[:3] == (1, 0, 0)
    bip = Triangle(v.zero(k, k), v.matrix([[0], [1]]), v.matrix([[1, 0]]))
    assert decompose_triangle(v, bip)[:3] == (0, 1, 1)
    assert decompose_triangle(v, v.cone(v.matrix([[1, 0]])))[:3] == (1, 0, 1)
    with pytest.raises(NotATriangle):
        decompose_triangle(v, Triangle(v.identity(k), v.identity(k), v.identity(k)))


def test_hom_group_dimension(v):
    assert v.hom_space(v.space(2), v.space(3)).dim == 6
    assert v.obj_iso(v.space(2), v.space(2)) == v.identity(v.space(2))
    assert v.obj_iso(v.space(2), v.space(3)) is None


def test_octahedron_projection_then_zero(v):
    f = v.matrix([[1, 0]])
    g = v.zero(v.space(1), v.space(1))
    w = v.octahedron(f, g)
    assert v.cone(v.compose(g, f)).z.key == 3
    assert v.is_triangle(w.triangle)


def _assert_octahedron(v, f, g):
    w = v.octahedron(f, g)
    tf, tg, th = w.tf, w.tg, w.th
    eq = v.mor_equal
    assert eq(v.compose(w.k, tf.g), v.compose(th.g, g))
    assert eq(v.compose(th.h, w.k), tf.h)
    assert eq(v.compose(w.k1, th.g), tg.g)
    assert eq(v.compose(tg.h, w.k1), v.compose(v.suspend_mor(f), th.h))
    assert eq(w.k2, v.compose(v.suspend_mor(tf.g), tg.h))
    assert v.is_triangle(w.triangle)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 5), st.integers(0, 5), st.integers(0, 5))
def test_octahedron_random(seed, a, b, c):
    v = Vect(F7)
    rng = random.Random(seed)
    x, y, z = v.space(a), v.space(b), v.space(c)
    _assert_octahedron(v, v.sample_mor(rng, x, y), v.sample_mor(rng, y, z))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))
def test_octahedron_on_non_oracle_triangles(seed, a, b, c):
    v = Vect(F7)
    rng = random.Random(seed)
    x, y, z = v.space(a), v.space(b), v.space(c)
    f, g = v.sample_mor(rng, x, y), v.sample_mor(rng, y, z)
    h = v.compose(g, f)

    def conj(t):
        u = v.sample_iso(rng, t.z)
        ui = v.inverse(u)
        return Triangle(t.f, v.compose(u, t.g), v.compose(t.h, ui))

    tf, tg, th = conj(v.cone(f)), conj(v.cone(g)), conj(v.cone(h))
    w = v.octahedron(f, g, tf, tg, th)
    eq = v.mor_equal
    assert eq(v.compose(w.k, tf.g), v.compose(th.g, g))
    assert eq(v.compose(th.h, w.k), tf.h)
    assert eq(v.compose(w.k1, th.g), tg.g)
    assert eq(v.compose(tg.h, w.k1), v.compose(v.suspend_mor(f), th.h))
    assert v.is_triangle(w.triangle)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 6), st.integers(0, 6))
def test_cone_dimension_formula(seed, a, b):
    v = Vect(F7)
    rng = random.Random(seed)
    f = v.sample_mor(rng, v.space(a), v.space(b))
    assert v.cone(f).z.key == a - 2 * rank(f.data) + b


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 4), st.integers(0, 4))
def test_decomposition_is_triangle_iso(seed, a, b):
    v = Vect(F7)
    rng = random.Random(seed)
    f = v.sample_mor(rng, v.space(a), v.space(b))
    t = v.cone(f)
    u = v.sample_iso(rng, t.z)
    t = Triangle(t.f, v.compose(u, t.g), v.compose(t.h, v.inverse(u)))
    n1, n2, n3, iso = decompose_triangle(v, t)
    assert (n1 + n3, n1 + n2, n2 + n3) == (t.x.key, t.y.key, t.z.key)
    assert (n1, n2, n3) == (rank(t.f.data), rank(t.g.data), rank(t.h.data))
    s = iso.source
    assert s == standard_triangle(v, n1, n2, n3)
    assert v.compose(iso.b, s.f) == v.compose(t.f, iso.a)
    assert v.compose(iso.c, s.g) == v.compose(t.g, iso.b)
    assert v.compose(iso.a, s.h) == v.compose(t.h, iso.c)
    assert all(v.is_iso(m) for m in (iso.a, iso.b, iso.c))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6))
def test_bilinearity(seed):
    v = Vect(F7)
    rng = random.Random(seed)
    x, y, z = (v.space(rng.randint(0, 4)) for _ in range(3))
    f, g = v.sample_mor(rng, x, y), v.sample_mor(rng, x, y)
    h = v.sample_mor(rng, y, z)
    assert v.compose(h, v.add(f, g)) == v.add(v.compose(h, f), v.compose(h, g))
    assert v.is_zero_mor(v.add(f, v.negate(f)))
    assert v.compose(v.identity(y), f) == f
