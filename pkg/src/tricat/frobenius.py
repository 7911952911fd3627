"""Stable category of modules over the dual numbers K[x]/(x²).

A module is a vector space with a square-zero operator x. Every module is
free^a ⊕ trivial^b, and the instance's objects are the normal forms N(a, b)
with basis (e_1..e_a, x e_1..x e_a, t_1..t_b). Morphisms are module maps,
identified when their difference factors through the injective hull of the
source (free modules are injective and projective here).

The instance suspension is the identity on normal forms. The literal
suspension I(A)/A is available as :func:`suspend`; it is N(0, b) for
A = N(a, b), and the instance differs from it by free padding, which is
zero in the stable category.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .core import BiproductWitness, HomSpace, Instance, Mor, Obj, Triangle
from .errors import NotExact, ShapeMismatch
from .linalg import (Field, Matrix, QuotientSpace, cokernel_projection, complement_basis, image_basis, inverse,
                     kernel_basis, kron, rank, solve)


@dataclass(frozen=True)
class Module:
    dim: int
    x: Matrix

    def __post_init__(self):
        if self.x.shape != (self.dim, self.dim):
            raise ShapeMismatch(f"action has shape {self.x.shape}, expected {(self.dim, self.dim)}")
        if not (self.x @ self.x).is_zero():
            raise ValueError("x² must vanish")

    @property
    def field(self) -> Field:
        return self.x.field

    def to_json(self) -> dict:
        return {"dim": self.dim, "x": self.x.to_json()}

    @classmethod
    def from_json(cls, doc: dict, field: Field | None = None) -> "Module":
        try:
            return cls(int(doc["dim"]), Matrix.from_json(doc["x"], field))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed module: {exc}") from exc


def normal_module(field: Field, a: int, b: int) -> Module:
    n = 2 * a + b
    x = Matrix.zeros(field, n, n).a.copy()
    for i in range(a):
        x[a + i, i] = field.one
    return Module(n, Matrix(field, x))


def free_module(field: Field, rank_: int) -> Module:
    return normal_module(field, rank_, 0)


def trivial_module(field: Field, dim: int) -> Module:
    return normal_module(field, 0, dim)


def decompose(m: Module) -> tuple[int, int, Matrix]:
    """(a, b, P) with m ≅ N(a, b); the columns of P are the adapted basis, so P⁻¹ x P is normal."""
    fld = m.field
    n = m.dim
    a = rank(m.x)
    ker = kernel_basis(m.x)
    gens = complement_basis(ker, n, fld)
    imgs = m.x @ gens
    # the trivial part must come from ker x; pick a complement of im x inside it
    aug = Matrix.hstack([imgs, ker], rows=n, field=fld)
    piv = image_basis(aug)
    triv = piv.columns(range(imgs.cols, piv.cols))
    p = Matrix.hstack([gens, imgs, triv], rows=n, field=fld)
    return a, n - 2 * a, p


def module_maps(src: Module, dst: Module) -> Matrix:
    """Columns: row-major vectorized basis of the module maps src → dst."""
    fld = src.field
    cons = kron(dst.x, Matrix.identity(fld, src.dim)) - kron(Matrix.identity(fld, dst.dim), src.x.T)
    if cons.cols == 0:
        return Matrix.zeros(fld, 0, 0)
    return kernel_basis(cons)


def is_module_map(f: Matrix, src: Module, dst: Module) -> bool:
    return f.shape == (dst.dim, src.dim) and dst.x @ f == f @ src.x


def injective_hull(m: Module) -> tuple[Module, Matrix]:
    """(I(m), ι): the free module of rank a + b and an injective module map m → I(m)."""
    a, b, p = decompose(m)
    fld = m.field
    hull = free_module(fld, a + b)
    return hull, _standard_embedding(fld, a, b) @ inverse(p)


def _standard_embedding(fld: Field, a: int, b: int) -> Matrix:
    # N(a, b) → N(a+b, 0): e_i ↦ e_i, x e_i ↦ x e_i, t_j ↦ x e_{a+j}
    r = a + b
    out = Matrix.zeros(fld, 2 * r, 2 * a + b).a.copy()
    for i in range(a):
        out[i, i] = fld.one
        out[r + i, a + i] = fld.one
    for j in range(b):
        out[r + a + j, 2 * a + j] = fld.one
    return Matrix(fld, out)


def _standard_quotient(fld: Field, a: int, b: int) -> Matrix:
    # N(a+b, 0) → I(A)/A ≅ K^b: read off the coordinates of e_{a+1}..e_{a+b}
    out = Matrix.zeros(fld, b, 2 * (a + b)).a.copy()
    for j in range(b):
        out[j, a + j] = fld.one
    return Matrix(fld, out)


def quotient_module(m: Module, sub: Matrix) -> tuple[Module, Matrix, Matrix]:
    """(m/sub, projection Q, section S with Q S = 1) for an x-stable subspace spanned by ``sub``."""
    fld = m.field
    q = cokernel_projection(sub) if sub.cols else Matrix.identity(fld, m.dim)
    s = _right_inverse(q)
    return Module(q.rows, q @ m.x @ s), q, s


def _right_inverse(q: Matrix) -> Matrix:
    fld = q.field
    if q.rows == 0:
        return Matrix.zeros(fld, q.cols, 0)
    return solve(q, Matrix.identity(fld, q.rows))


def suspend(m: Module) -> tuple[Module, Matrix]:
    """The literal suspension I(m)/m and the quotient map I(m) → I(m)/m."""
    hull, iota = injective_hull(m)
    sm, q, _ = quotient_module(hull, iota)
    return sm, q


def syzygy(m: Module) -> tuple[Module, Matrix]:
    """Σ⁻¹m as the kernel of the projective cover P(m) ↠ m, with its inclusion into P(m)."""
    a, b, p = decompose(m)
    fld = m.field
    cover = free_module(fld, a + b)
    r = a + b
    # e_i ↦ e_i for i ≤ a and e_{a+j} ↦ t_j, in normal coordinates
    pi = Matrix.zeros(fld, 2 * a + b, 2 * r).a.copy()
    for i in range(a):
        pi[i, i] = fld.one
        pi[a + i, r + i] = fld.one
    for j in range(b):
        pi[2 * a + j, a + j] = fld.one
    proj = p @ Matrix(fld, pi)
    k = kernel_basis(proj)
    sub = Module(k.cols, solve(k, cover.x @ k) if k.cols else Matrix.zeros(fld, 0, 0))
    return sub, k


class StableModules(Instance):
    """Normal-form modules over K[x]/(x²) modulo maps factoring through free modules."""

    name = "frobenius"

    def __init__(self, field: Field, max_dim: int = 6):
        super().__init__()
        self.field = field
        self.max_dim = max_dim

    def obj(self, a: int, b: int) -> Obj:
        if a < 0 or b < 0:
            raise ValueError("ranks must be non-negative")
        return Obj((a, b), f"N({a},{b})")

    def module(self, x: Obj) -> Module:
        return normal_module(self.field, *x.key)

    def mor(self, m: Matrix, source: Obj, target: Obj) -> Mor:
        if not is_module_map(m, self.module(source), self.module(target)):
            raise ValueError("matrix is not a module map")
        return Mor(source, target, m)

    def normalize(self, m: Module) -> tuple[Obj, Matrix]:
        """The normal-form object isomorphic to m and the module iso m → normal form."""
        a, b, p = decompose(m)
        return self.obj(a, b), inverse(p)

    def _dim(self, x: Obj) -> int:
        a, b = x.key
        return 2 * a + b

    # additive structure -------------------------------------------------------

    def zero_object(self) -> Obj:
        return self.obj(0, 0)

    def identity(self, x: Obj) -> Mor:
        return Mor(x, x, Matrix.identity(self.field, self._dim(x)))

    def zero(self, x: Obj, y: Obj) -> Mor:
        return Mor(x, y, Matrix.zeros(self.field, self._dim(y), self._dim(x)))

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

    def _sum_coords(self, x: Obj, y: Obj) -> tuple[list[int], list[int]]:
        """Positions of x's and y's basis vectors inside the normal form of x ⊕ y."""
        (a1, b1), (a2, b2) = x.key, y.key
        a = a1 + a2
        px = list(range(a1)) + [a + i for i in range(a1)] + [2 * a + j for j in range(b1)]
        py = ([a1 + i for i in range(a2)] + [a + a1 + i for i in range(a2)]
              + [2 * a + b1 + j for j in range(b2)])
        return px, py

    def biproduct(self, x: Obj, y: Obj) -> BiproductWitness:
        (a1, b1), (a2, b2) = x.key, y.key
        s = self.obj(a1 + a2, b1 + b2)
        n = self._dim(s)
        px, py = self._sum_coords(x, y)
        eye = Matrix.identity(self.field, n)
        i1 = Mor(x, s, eye.columns(px))
        i2 = Mor(y, s, eye.columns(py))
        return BiproductWitness(s, i1, i2, Mor(s, x, i1.data.T), Mor(s, y, i2.data.T))

    # stable hom-spaces --------------------------------------------------------------

    def _hom_space(self, x: Obj, y: Obj) -> HomSpace:
        mx, my = self.module(x), self.module(y)
        fld = self.field
        z = module_maps(mx, my)
        n = mx.dim * my.dim
        if z.rows != n:
            z = Matrix.zeros(fld, n, 0)
        # maps that factor through the hull: G∘ι for module maps G: I(x) → y
        hull, iota = injective_hull(mx)
        g = module_maps(hull, my)
        cols = [(Matrix.unvec(g.column(j), my.dim, hull.dim) @ iota).vec() for j in range(g.cols)]
        b = Matrix.hstack(cols, rows=n, field=fld) if cols else Matrix.zeros(fld, n, 0)
        return HomSpace(x, y, QuotientSpace(z, b), lambda f: f.data.vec(),
                        lambda v: Matrix.unvec(v, my.dim, mx.dim))

    def stable_equal(self, f: Mor, g: Mor) -> bool:
        return self.mor_equal(f, g)

    def stable_hom_dim(self, x: Obj, y: Obj) -> int:
        return self.hom_space(x, y).dim

    def is_zero_obj(self, x: Obj) -> bool:
        return x.key[1] == 0

    def obj_iso(self, x: Obj, y: Obj) -> Mor | None:
        (a1, b1), (a2, b2) = x.key, y.key
        if b1 != b2:
            return None
        return Mor(x, y, self._trivial_block(a1, a2, b1))

    def _trivial_block(self, a1: int, a2: int, b: int) -> Matrix:
        # identity between the trivial summands, zero on the free parts
        out = Matrix.zeros(self.field, 2 * a2 + b, 2 * a1 + b).a.copy()
        for j in range(b):
            out[2 * a2 + j, 2 * a1 + j] = self.field.one
        return Matrix(self.field, out)

    # suspension ----------------------------------------------------------------------

    def suspend_obj(self, x: Obj) -> Obj:
        return x

    def desuspend_obj(self, x: Obj) -> Obj:
        return x

    def suspend_mor(self, f: Mor) -> Mor:
        return f

    def desuspend_mor(self, f: Mor) -> Mor:
        return f

    def literal_to_padded(self, x: Obj) -> Matrix:
        """The module map I(A)/A ≅ K^b → N(a, b) onto the trivial summand."""
        a, b = x.key
        return self._trivial_block(0, a, b)

    def literal_suspend_mor(self, f: Mor) -> Matrix:
        """Σf on literal suspensions: extend f over the hulls and pass to quotients."""
        (a1, b1), (a2, b2) = f.source.key, f.target.key
        fld = self.field
        i1 = _standard_embedding(fld, a1, b1)
        i2 = _standard_embedding(fld, a2, b2)
        h1, h2 = free_module(fld, a1 + b1), free_module(fld, a2 + b2)
        ext = self._extend(i1, i2 @ f.data, h1, h2)
        q1 = _standard_quotient(fld, a1, b1)
        q2 = _standard_quotient(fld, a2, b2)
        return q2 @ ext @ _right_inverse(q1)

    def _extend(self, mono: Matrix, target_map: Matrix, src: Module, dst: Module) -> Matrix:
        """A module map e: src → dst with e∘mono = target_map (dst injective)."""
        fld = self.field
        basis = module_maps(src, dst)
        if basis.cols == 0:
            if not target_map.is_zero():
                raise ValueError("no extension exists")
            return Matrix.zeros(fld, dst.dim, src.dim)
        cols = [(Matrix.unvec(basis.column(j), dst.dim, src.dim) @ mono).vec() for j in range(basis.cols)]
        a = Matrix.hstack(cols)
        c = solve(a, target_map.vec())
        return Matrix.unvec(basis @ c, dst.dim, src.dim)

    # cones -------------------------------------------------------------------------

    def _pushout(self, f: Mor) -> tuple[Module, Matrix, Matrix, Matrix]:
        """(E, Q, S, u) for E = (I(A) ⊕ B)/A, with u = (ι; f) and Q the projection."""
        fld = self.field
        a1, b1 = f.source.key
        ma, mb = self.module(f.source), self.module(f.target)
        hull = free_module(fld, a1 + b1)
        iota = _standard_embedding(fld, a1, b1)
        mid = Module(hull.dim + mb.dim, Matrix.block_diag([hull.x, mb.x], field=fld))
        u = Matrix.vstack([iota, f.data], cols=ma.dim, field=fld)
        e, q, s = quotient_module(mid, u)
        return e, q, s, u

    def _cone_parts(self, f: Mor):
        e, q, s, _ = self._pushout(f)
        c, to_normal = self.normalize(e)
        return c, to_normal, q, s

    def _cone(self, f: Mor) -> Triangle:
        fld = self.field
        a1, b1 = f.source.key
        mb = self.module(f.target)
        r = a1 + b1
        c, to_normal, q, s = self._cone_parts(f)
        from_normal = inverse(to_normal)
        incl_b = Matrix.vstack([Matrix.zeros(fld, 2 * r, mb.dim), Matrix.identity(fld, mb.dim)], cols=mb.dim, field=fld)
        proj_i = Matrix.hstack([Matrix.identity(fld, 2 * r), Matrix.zeros(fld, 2 * r, mb.dim)], rows=2 * r, field=fld)
        g = to_normal @ q @ incl_b
        h = self.literal_to_padded(f.source) @ _standard_quotient(fld, a1, b1) @ proj_i @ s @ from_normal
        return Triangle(f, Mor(f.target, c, g), Mor(c, f.source, h))

    def octahedron_on_cones(self, f: Mor, g: Mor) -> tuple[Mor, Mor, Mor]:
        self._check_composable(g, f)
        fld = self.field
        gf = self.compose(g, f)
        cf, cg, ch = self.cone(f), self.cone(g), self.cone(gf)
        nf, tf, qf, sf = self._cone_parts(f)
        ng, tg, qg, sg = self._cone_parts(g)
        nh, th, qh, sh = self._cone_parts(gf)
        (ax, bx), (ay, by) = f.source.key, f.target.key
        rx, ry = ax + bx, ay + by
        # k is induced by 1 ⊕ g on I(X) ⊕ Y → I(X) ⊕ Z
        lift_k = Matrix.block_diag([Matrix.identity(fld, 2 * rx), g.data], field=fld)
        k = th @ qh @ lift_k @ sf @ inverse(tf)
        # k' is induced by I(f) ⊕ 1 on I(X) ⊕ Z → I(Y) ⊕ Z
        hx, hy = free_module(fld, rx), free_module(fld, ry)
        ext = self._extend(_standard_embedding(fld, ax, bx), _standard_embedding(fld, ay, by) @ f.data, hx, hy)
        lift_k1 = Matrix.block_diag([ext, Matrix.identity(fld, self._dim(g.target))], field=fld)
        k1 = tg @ qg @ lift_k1 @ sh @ inverse(th)
        k2 = self.compose(self.suspend_mor(cf.g), cg.h)
        return Mor(cf.z, ch.z, k), Mor(ch.z, cg.z, k1), k2

    # short exact sequences -----------------------------------------------------------

    def ses_to_triangle(self, a: Mor, b: Mor) -> Triangle:
        """The triangle A → B → C → ΣA of a short exact sequence of modules."""
        self._check_composable(b, a)
        na, nb, nc = self._dim(a.source), self._dim(a.target), self._dim(b.target)
        if not (b.data @ a.data).is_zero() or rank(a.data) != na or rank(b.data) != nc or na + nc != nb:
            raise NotExact("sequence of modules is not short exact")
        fld = self.field
        ax, bx = a.source.key
        hull = free_module(fld, ax + bx)
        iota = _standard_embedding(fld, ax, bx)
        e = self._extend(a.data, iota, self.module(a.target), hull)
        # connecting map: c ↦ class of e(any preimage of c) in I(A)/A
        delta = _standard_quotient(fld, ax, bx) @ e @ _right_inverse(b.data)
        h = self.literal_to_padded(a.source) @ delta
        return Triangle(a, b, Mor(b.target, a.source, h))

    # sampling ----------------------------------------------------------------------------

    def sample_object(self, rng: random.Random, max_dim: int) -> Obj:
        top = min(max_dim, self.max_dim)
        a = rng.randint(0, top // 2)
        b = rng.randint(0, top - 2 * a)
        return self.obj(a, b)

    def sample_mor(self, rng: random.Random, x: Obj, y: Obj) -> Mor:
        z = module_maps(self.module(x), self.module(y))
        if z.cols == 0:
            return self.zero(x, y)
        c = Matrix.from_rows(self.field, [[self.field.random(rng)] for _ in range(z.cols)], rows=z.cols, cols=1)
        return Mor(x, y, Matrix.unvec(z @ c, self._dim(y), self._dim(x)))

    def describe(self, x: Obj) -> str:
        return x.name
