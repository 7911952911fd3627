"""The contract a concrete triangulated category implements, and shared diagram types.

Objects are compared structurally (``Obj.key``), never up to isomorphism.
Morphism equality is whatever the instance says it is (matrix equality,
chain homotopy, stable equality), exposed through ``Instance.mor_equal``.

Every instance presents its hom-sets as finite-dimensional vector spaces
(``hom_space``). The generic linear solvers below (inverses, lifts,
comparison maps between triangles) only use that presentation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Sequence

from .errors import NoSolution, NotATriangle, ShapeMismatch
from .linalg import Field, Matrix, QuotientSpace, solve


@dataclass(frozen=True)
class Obj:
    key: Hashable
    name: str = field(default="", compare=False)

    def __str__(self) -> str:
        return self.name or str(self.key)


@dataclass(frozen=True)
class Mor:
    source: Obj
    target: Obj
    data: Any = field(hash=False)

    def __str__(self) -> str:
        return f"{self.source} -> {self.target}"


@dataclass(frozen=True)
class Triangle:
    """A candidate triangle X -f-> Y -g-> Z -h-> ΣX."""

    f: Mor
    g: Mor
    h: Mor

    @property
    def x(self) -> Obj:
        return self.f.source

    @property
    def y(self) -> Obj:
        return self.f.target

    @property
    def z(self) -> Obj:
        return self.g.target

    def maps(self) -> tuple[Mor, Mor, Mor]:
        return (self.f, self.g, self.h)


@dataclass(frozen=True)
class TriangleMorphism:
    source: Triangle
    target: Triangle
    a: Mor
    b: Mor
    c: Mor


@dataclass(frozen=True)
class OctahedronWitness:
    """Output of T5 for h = g∘f over the triangles tf, tg, th.

    ``k``: C_f → C_h, ``k1``: C_h → C_g, ``k2``: C_g → ΣC_f.
    """

    tf: Triangle
    tg: Triangle
    th: Triangle
    k: Mor
    k1: Mor
    k2: Mor

    @property
    def triangle(self) -> Triangle:
        return Triangle(self.k, self.k1, self.k2)


@dataclass(frozen=True)
class BiproductWitness:
    obj: Obj
    i1: Mor
    i2: Mor
    p1: Mor
    p2: Mor


class HomSpace:
    """A hom-set presented as a vector space with a chosen basis.

    ``vectorize`` sends a morphism to a column vector in some ambient K^N;
    ``quotient`` identifies the subspace of genuine morphisms and the
    subspace of morphisms equal to zero.
    """

    def __init__(self, source: Obj, target: Obj, quotient: QuotientSpace,
                 vectorize: Callable[[Mor], Matrix], devectorize: Callable[[Matrix], Any]):
        self.source = source
        self.target = target
        self.quotient = quotient
        self._vec = vectorize
        self._unvec = devectorize
        self.dim = quotient.dim
        self.basis = [Mor(source, target, devectorize(quotient.basis.column(i))) for i in range(self.dim)]

    def coords(self, f: Mor) -> list:
        return self.quotient.coords(self._vec(f))

    def coords_many(self, fs: Sequence[Mor]) -> Matrix:
        q = self.quotient
        if not fs:
            return Matrix.zeros(q.field, self.dim, 0)
        return q.coords_matrix(Matrix.hstack([self._vec(f) for f in fs]))

    def element(self, coeffs: Sequence) -> Mor:
        return Mor(self.source, self.target, self._unvec(self.quotient.lift(list(coeffs))))

    def is_zero(self, f: Mor) -> bool:
        return self.quotient.in_boundary(self._vec(f))


class Instance:
    """Base class for triangulated instances.

    Subclasses implement the abstract members; the generic solvers and
    default implementations here only rely on those.
    """

    name = "abstract"
    field: Field

    def __init__(self) -> None:
        self._hom_cache: dict = {}
        self._cone_cache: dict = {}

    # -- additive structure -------------------------------------------------

    def zero_object(self) -> Obj:
        raise NotImplementedError

    def identity(self, x: Obj) -> Mor:
        raise NotImplementedError

    def zero(self, x: Obj, y: Obj) -> Mor:
        raise NotImplementedError

    def compose(self, g: Mor, f: Mor) -> Mor:
        raise NotImplementedError

    def add(self, f: Mor, g: Mor) -> Mor:
        raise NotImplementedError

    def scale(self, c, f: Mor) -> Mor:
        raise NotImplementedError

    def negate(self, f: Mor) -> Mor:
        return self.scale(-1, f)

    def sub(self, f: Mor, g: Mor) -> Mor:
        return self.add(f, self.negate(g))

    def chain(self, *maps: Mor) -> Mor:
        """Compose right to left: chain(h, g, f) = h∘g∘f."""
        out = maps[-1]
        for m in reversed(maps[:-1]):
            out = self.compose(m, out)
        return out

    def _check_composable(self, g: Mor, f: Mor) -> None:
        if g.source != f.target:
            raise ShapeMismatch(f"cannot compose {g} after {f}")

    def _check_parallel(self, f: Mor, g: Mor) -> None:
        if f.source != g.source or f.target != g.target:
            raise ShapeMismatch(f"{f} and {g} are not parallel")

    # -- suspension -----------------------------------------------------------

    def suspend_obj(self, x: Obj) -> Obj:
        raise NotImplementedError

    def desuspend_obj(self, x: Obj) -> Obj:
        raise NotImplementedError

    def suspend_mor(self, f: Mor) -> Mor:
        raise NotImplementedError

    def desuspend_mor(self, f: Mor) -> Mor:
        raise NotImplementedError

    def suspend_n(self, f: Mor, n: int) -> Mor:
        for _ in range(abs(n)):
            f = self.suspend_mor(f) if n > 0 else self.desuspend_mor(f)
        return f

    def suspend_obj_n(self, x: Obj, n: int) -> Obj:
        for _ in range(abs(n)):
            x = self.suspend_obj(x) if n > 0 else self.desuspend_obj(x)
        return x

    # -- triangulated structure ---------------------------------------------

    def cone(self, f: Mor) -> Triangle:
        """Deterministic cone triangle (the T2 oracle)."""
        hit = self._cone_cache.get(f)
        if hit is None:
            hit = self._cone(f)
            self._cone_cache[f] = hit
        return hit

    def _cone(self, f: Mor) -> Triangle:
        raise NotImplementedError

    def octahedron_on_cones(self, f: Mor, g: Mor) -> tuple[Mor, Mor, Mor]:
        """(k, k', k'') for the cone triangles of f, g and g∘f."""
        raise NotImplementedError

    def octahedron(self, f: Mor, g: Mor, tf: Triangle | None = None, tg: Triangle | None = None,
                   th: Triangle | None = None) -> OctahedronWitness:
        """T5 for g∘f. Triangles default to the cone oracle's.

        Triangles other than the oracle ones are handled by transporting the
        oracle witness (all three maps) along the comparison isomorphisms to
        the cone triangles, so an inconsistent oracle stays detectable.
        """
        self._check_composable(g, f)
        h = self.compose(g, f)
        cf, cg, ch = self.cone(f), self.cone(g), self.cone(h)
        k0, k10, k20 = self.octahedron_on_cones(f, g)
        tf = tf or cf
        tg = tg or cg
        th = th or ch
        for given, oracle, base in ((tf, cf, f), (tg, cg, g), (th, ch, h)):
            if not self.mor_equal(given.f, base):
                raise ShapeMismatch("octahedron triangles must start with f, g and g∘f")
        uf = self._to_cone(tf, cf)
        ug = self._to_cone(tg, cg)
        uh = self._to_cone(th, ch)
        k = self.chain(uh[1], k0, uf[0])
        k1 = self.chain(ug[1], k10, uh[0])
        k2 = self.chain(self.suspend_mor(uf[1]), k20, ug[0])
        return OctahedronWitness(tf, tg, th, k, k1, k2)

    def _to_cone(self, t: Triangle, oracle: Triangle) -> tuple[Mor, Mor]:
        if t is oracle or t == oracle:
            return self.identity(t.z), self.identity(t.z)
        u = self.comparison_map(t, oracle)
        if u is None:
            raise NotATriangle("triangle is not comparable with the cone triangle of its first map")
        inv = self.inverse(u)
        if inv is None:
            raise NotATriangle("comparison map to the cone triangle is not invertible")
        return u, inv

    def is_triangle(self, t: Triangle) -> bool:
        """Decide membership in the triangulation.

        A candidate (f, g, h) is a triangle iff some m: Z → C_f completes
        (id, id, m) to a morphism into the cone triangle and m is invertible.
        By the five-lemma argument any such m is invertible when the
        candidate is a triangle, so testing one solution suffices.
        """
        if not self.is_candidate(t):
            return False
        oracle = self.cone(t.f)
        m = self.comparison_map(t, oracle)
        return m is not None and self.inverse(m) is not None

    def is_candidate(self, t: Triangle) -> bool:
        return (t.f.target == t.g.source and t.g.target == t.h.source
                and t.h.target == self.suspend_obj(t.f.source))

    def comparison_map(self, t: Triangle, other: Triangle) -> Mor | None:
        """Some m: t.z → other.z with m∘g = g' and h'∘m = h, if the first maps agree."""
        return self.solve_linear(
            t.z, other.z,
            [(lambda m: self.compose(m, t.g), other.g),
             (lambda m: self.compose(other.h, m), t.h)],
        )

    def biproduct(self, x: Obj, y: Obj) -> BiproductWitness:
        raise NotImplementedError

    # -- equality and hom-spaces -------------------------------------------

    def hom_space(self, x: Obj, y: Obj) -> HomSpace:
        key = (x, y)
        hit = self._hom_cache.get(key)
        if hit is None:
            hit = self._hom_space(x, y)
            self._hom_cache[key] = hit
        return hit

    def _hom_space(self, x: Obj, y: Obj) -> HomSpace:
        raise NotImplementedError

    def hom_group(self, x: Obj, y: Obj) -> list[Mor]:
        return self.hom_space(x, y).basis

    def mor_equal(self, f: Mor, g: Mor) -> bool:
        self._check_parallel(f, g)
        return self.hom_space(f.source, f.target).is_zero(self.sub(f, g))

    def is_zero_mor(self, f: Mor) -> bool:
        return self.hom_space(f.source, f.target).is_zero(f)

    def is_zero_obj(self, x: Obj) -> bool:
        return self.hom_space(x, x).dim == 0

    def obj_iso(self, x: Obj, y: Obj) -> Mor | None:
        raise NotImplementedError

    def solve_linear(self, x: Obj, y: Obj, equations: Iterable[tuple[Callable[[Mor], Mor], Mor]]) -> Mor | None:
        """Find m: x → y with L(m) = rhs (up to mor_equal) for each linear L."""
        space = self.hom_space(x, y)
        blocks, rhs = [], []
        for op, target in equations:
            tspace = self.hom_space(target.source, target.target)
            blocks.append(tspace.coords_many([op(b) for b in space.basis]) if space.dim
                          else Matrix.zeros(self.field, tspace.dim, 0))
            rhs.append(tspace.coords_many([target]))
        if not blocks:
            return space.element([self.field.zero] * space.dim)
        a = Matrix.vstack(blocks)
        b = Matrix.vstack(rhs)
        if a.cols == 0:
            return space.element([]) if b.is_zero() else None
        try:
            c = solve(a, b)
        except NoSolution:
            return None
        return space.element([row[0] for row in c.tolist()])

    def inverse(self, f: Mor) -> Mor | None:
        """Two-sided inverse up to mor_equal, or None."""
        return self.solve_linear(
            f.target, f.source,
            [(lambda g: self.compose(g, f), self.identity(f.source)),
             (lambda g: self.compose(f, g), self.identity(f.target))],
        )

    def is_iso(self, f: Mor) -> bool:
        return self.inverse(f) is not None

    # -- sampling -----------------------------------------------------------

    def sample_object(self, rng: random.Random, max_dim: int) -> Obj:
        raise NotImplementedError

    def sample_mor(self, rng: random.Random, x: Obj, y: Obj) -> Mor:
        space = self.hom_space(x, y)
        return space.element([self.field.random(rng) for _ in range(space.dim)])

    def sample_iso(self, rng: random.Random, x: Obj, tries: int = 8) -> Mor:
        """A random automorphism of x (falls back to a nonzero scalar)."""
        for _ in range(tries):
            u = self.sample_mor(rng, x, x)
            if self.is_iso(u):
                return u
        c = self.field.random(rng)
        while c == 0:
            c = self.field.random(rng)
        return self.scale(c, self.identity(x))

    def describe(self, x: Obj) -> str:
        return str(x)
