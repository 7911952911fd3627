"""Finite-dimensional vector spaces over an exact field, with Σ = id.

A candidate triangle is a triangle iff it is exact at all three objects
(exactness at X read as im h = ker f). The cone of f is ker f ⊕ coker f.
"""

from __future__ import annotations

import random

from .core import BiproductWitness, HomSpace, Instance, Mor, Obj, Triangle, TriangleMorphism
from .errors import NotATriangle, ShapeMismatch
from .linalg import (Field, Matrix, QuotientSpace, cokernel_projection, complement_basis, image_basis,
                     kernel_basis, rank, solve, solve_left)


class Vect(Instance):
    name = "vect"

    def __init__(self, field: Field):
        super().__init__()
        self.field = field

    # objects and morphisms ---------------------------------------------

    def space(self, n: int) -> Obj:
        if n < 0:
            raise ValueError("dimension must be non-negative")
        return Obj(n, f"K^{n}")

    def mor(self, m: Matrix, source: Obj | None = None, target: Obj | None = None) -> Mor:
        if m.field != self.field:
            m = Matrix.from_rows(self.field, m.tolist(), rows=m.rows, cols=m.cols)
        src = source or self.space(m.cols)
        tgt = target or self.space(m.rows)
        if (tgt.key, src.key) != m.shape:
            raise ShapeMismatch(f"matrix shape {m.shape} does not match {src} -> {tgt}")
        return Mor(src, tgt, m)

    def matrix(self, rows, r: int | None = None, c: int | None = None) -> Mor:
        return self.mor(Matrix.from_rows(self.field, rows, rows=r, cols=c))

    def dim(self, x: Obj) -> int:
        return x.key

    def zero_object(self) -> Obj:
        return self.space(0)

    def identity(self, x: Obj) -> Mor:
        return Mor(x, x, Matrix.identity(self.field, x.key))

    def zero(self, x: Obj, y: Obj) -> Mor:
        return Mor(x, y, Matrix.zeros(self.field, y.key, x.key))

    def compose(self, g: Mor, f: Mor) -> Mor:
        self._check_composable(g, f)
        return Mor(f.source, g.target, g.data @ f.data)

    def add(self, f: Mor, g: Mor) -> Mor:
        self._check_parallel(f, g)
        return Mor(f.source, f.target, f.data + g.data)

    def scale(self, c, f: Mor) -> Mor:
        return Mor(f.source, f.target, f.data.scale(c))

    def negate(self, f: Mor) -> Mor:
        return Mor(f.source, f.target, -f.data)

    # Σ = id ---------------------------------------------------------------

    def suspend_obj(self, x: Obj) -> Obj:
        return x

    def desuspend_obj(self, x: Obj) -> Obj:
        return x

    def suspend_mor(self, f: Mor) -> Mor:
        return f

    def desuspend_mor(self, f: Mor) -> Mor:
        return f

    # triangles ------------------------------------------------------------

    def _cone(self, f: Mor) -> Triangle:
        m = f.data
        ker = kernel_basis(m)
        cok = cokernel_projection(m)
        n1, n2 = ker.cols, cok.rows
        c = self.space(n1 + n2)
        g = Matrix.vstack([Matrix.zeros(self.field, n1, m.rows), cok], cols=m.rows, field=self.field)
        h = Matrix.hstack([ker, Matrix.zeros(self.field, m.cols, n2)], rows=m.cols, field=self.field)
        return Triangle(f, Mor(f.target, c, g), Mor(c, f.source, h))

    def octahedron_on_cones(self, f: Mor, g: Mor) -> tuple[Mor, Mor, Mor]:
        self._check_composable(g, f)
        F, G = f.data, g.data
        H = G @ F
        ker_f, ker_g, ker_h = kernel_basis(F), kernel_basis(G), kernel_basis(H)
        cok_f, cok_g, cok_h = cokernel_projection(F), cokernel_projection(G), cokernel_projection(H)
        # lifts through kernels and descents through cokernels
        j1 = solve(ker_h, ker_f)
        j2 = solve(ker_g, F @ ker_h)
        q1 = solve_left(cok_f, cok_h @ G)
        q2 = solve_left(cok_h, cok_g)
        cf, cg, ch = self.cone(f).z, self.cone(g).z, self.cone(self.compose(g, f)).z
        k = Mor(cf, ch, Matrix.block_diag([j1, q1], field=self.field))
        k1 = Mor(ch, cg, Matrix.block_diag([j2, q2], field=self.field))
        corner = cok_f @ ker_g
        k2 = Matrix.blocks([
            [Matrix.zeros(self.field, ker_f.cols, ker_g.cols), Matrix.zeros(self.field, ker_f.cols, cok_g.rows)],
            [corner, Matrix.zeros(self.field, cok_f.rows, cok_g.rows)],
        ])
        return k, k1, Mor(cg, cf, k2)

    def is_triangle(self, t: Triangle) -> bool:
        if not self.is_candidate(t):
            return False
        f, g, h = t.f.data, t.g.data, t.h.data
        if not ((g @ f).is_zero() and (h @ g).is_zero() and (f @ h).is_zero()):
            return False
        rf, rg, rh = rank(f), rank(g), rank(h)
        return rf + rg == t.y.key and rg + rh == t.z.key and rh + rf == t.x.key

    def biproduct(self, x: Obj, y: Obj) -> BiproductWitness:
        m, n = x.key, y.key
        s = self.space(m + n)
        eye = Matrix.identity(self.field, m + n)
        i1 = Mor(x, s, eye.columns(range(m)))
        i2 = Mor(y, s, eye.columns(range(m, m + n)))
        p1 = Mor(s, x, eye.rows_at(range(m)))
        p2 = Mor(s, y, eye.rows_at(range(m, m + n)))
        return BiproductWitness(s, i1, i2, p1, p2)

    # hom-spaces -----------------------------------------------------------

    def _hom_space(self, x: Obj, y: Obj) -> HomSpace:
        n = x.key * y.key
        q = QuotientSpace(Matrix.identity(self.field, n), Matrix.zeros(self.field, n, 0))
        return HomSpace(x, y, q, lambda f: f.data.vec(), lambda v: Matrix.unvec(v, y.key, x.key))

    def mor_equal(self, f: Mor, g: Mor) -> bool:
        self._check_parallel(f, g)
        return f.data == g.data

    def is_zero_mor(self, f: Mor) -> bool:
        return f.data.is_zero()

    def is_zero_obj(self, x: Obj) -> bool:
        return x.key == 0

    def inverse(self, f: Mor) -> Mor | None:
        m = f.data
        if m.rows != m.cols or rank(m) != m.rows:
            return None
        return Mor(f.target, f.source, solve(m, Matrix.identity(self.field, m.rows)))

    def obj_iso(self, x: Obj, y: Obj) -> Mor | None:
        return self.identity(x) if x.key == y.key else None

    # sampling ---------------------------------------------------------------

    def sample_object(self, rng: random.Random, max_dim: int) -> Obj:
        return self.space(rng.randint(0, max_dim))

    def sample_mor(self, rng: random.Random, x: Obj, y: Obj, rank_bias: bool = True) -> Mor:
        r, c = y.key, x.key
        if rank_bias and r and c and rng.random() < 0.5:
            # low-rank maps exercise kernels and cokernels
            k = rng.randint(0, min(r, c))
            a = Matrix.from_rows(self.field, [[self.field.random(rng) for _ in range(k)] for _ in range(r)], rows=r, cols=k)
            b = Matrix.from_rows(self.field, [[self.field.random(rng) for _ in range(c)] for _ in range(k)], rows=k, cols=c)
            return Mor(x, y, a @ b)
        return Mor(x, y, Matrix.from_rows(self.field, [[self.field.random(rng) for _ in range(c)] for _ in range(r)], rows=r, cols=c))

    def sample_iso(self, rng: random.Random, x: Obj, tries: int = 50) -> Mor:
        for _ in range(tries):
            u = self.sample_mor(rng, x, x, rank_bias=False)
            if rank(u.data) == x.key:
                return u
        return self.identity(x)


def decompose_triangle(vect: Vect, t: Triangle) -> tuple[int, int, int, TriangleMorphism]:
    """Split an exact triangle into elementary summands.

    Returns (n1, n2, n3) with n1 = rank f, n2 = rank g, n3 = rank h, and an
    isomorphism of candidate triangles from the standard sum of n1 copies of
    (K = K → 0 → K), n2 of (0 → K = K → 0) and n3 of (K → 0 → K = K) onto t.
    """
    if not vect.is_triangle(t):
        raise NotATriangle("decompose_triangle needs an exact triangle")
    fld = vect.field
    f, g, h = t.f.data, t.g.data, t.h.data
    nx, ny, nz = t.x.key, t.y.key, t.z.key
    a_part = complement_basis(kernel_basis(f), nx, fld)           # X ⊇ complement of ker f
    y_a = f @ a_part                                              # basis of im f = ker g
    y_b = complement_basis(image_basis(y_a) if y_a.cols else Matrix.zeros(fld, ny, 0), ny, fld)
    z_b = g @ y_b                                                 # basis of im g = ker h
    z_c = complement_basis(z_b, nz, fld)
    x_c = h @ z_c                                                 # basis of im h = ker f
    n1, n2, n3 = a_part.cols, y_b.cols, z_c.cols
    u = Matrix.hstack([a_part, x_c], rows=nx, field=fld)
    v = Matrix.hstack([y_a, y_b], rows=ny, field=fld)
    w = Matrix.hstack([z_b, z_c], rows=nz, field=fld)
    std = standard_triangle(vect, n1, n2, n3)
    iso = TriangleMorphism(std, t, Mor(std.x, t.x, u), Mor(std.y, t.y, v), Mor(std.z, t.z, w))
    return n1, n2, n3, iso


def standard_triangle(vect: Vect, n1: int, n2: int, n3: int) -> Triangle:
    fld = vect.field
    z = Matrix.zeros
    eye = Matrix.identity
    f = Matrix.blocks([[eye(fld, n1), z(fld, n1, n3)], [z(fld, n2, n1), z(fld, n2, n3)]])
    g = Matrix.blocks([[z(fld, n2, n1), eye(fld, n2)], [z(fld, n3, n1), z(fld, n3, n2)]])
    h = Matrix.blocks([[z(fld, n1, n2), z(fld, n1, n3)], [z(fld, n3, n2), eye(fld, n3)]])
    x, y, zz = vect.space(n1 + n3), vect.space(n1 + n2), vect.space(n2 + n3)
    return Triangle(Mor(x, y, f), Mor(y, zz, g), Mor(zz, x, h))
