"""The opposite of a triangulated instance.

Objects are shared with the underlying instance. An opposite morphism
X → Y wraps an underlying morphism Y → X, the suspension is the underlying
desuspension, and (f°, g°, h°) is a triangle exactly when (h, g, f) is an
underlying triangle.
"""

from __future__ import annotations

import random

from .core import BiproductWitness, HomSpace, Instance, Mor, Obj, Triangle


class Opposite(Instance):
    def __init__(self, base: Instance):
        super().__init__()
        self.base = base
        self.field = base.field
        self.name = f"op-of:{base.name}"

    def op(self, f: Mor) -> Mor:
        """The opposite of an underlying morphism."""
        return Mor(f.target, f.source, f)

    def un(self, f: Mor) -> Mor:
        """The underlying morphism of an opposite one."""
        return f.data

    def zero_object(self) -> Obj:
        return self.base.zero_object()

    def identity(self, x: Obj) -> Mor:
        return self.op(self.base.identity(x))

    def zero(self, x: Obj, y: Obj) -> Mor:
        return self.op(self.base.zero(y, x))

    def compose(self, g: Mor, f: Mor) -> Mor:
        self._check_composable(g, f)
        return self.op(self.base.compose(self.un(f), self.un(g)))

    def add(self, f: Mor, g: Mor) -> Mor:
        return self.op(self.base.add(self.un(f), self.un(g)))

    def scale(self, c, f: Mor) -> Mor:
        return self.op(self.base.scale(c, self.un(f)))

    def negate(self, f: Mor) -> Mor:
        return self.op(self.base.negate(self.un(f)))

    def suspend_obj(self, x: Obj) -> Obj:
        return self.base.desuspend_obj(x)

    def desuspend_obj(self, x: Obj) -> Obj:
        return self.base.suspend_obj(x)

    def suspend_mor(self, f: Mor) -> Mor:
        return self.op(self.base.desuspend_mor(self.un(f)))

    def desuspend_mor(self, f: Mor) -> Mor:
        return self.op(self.base.suspend_mor(self.un(f)))

    def biproduct(self, x: Obj, y: Obj) -> BiproductWitness:
        w = self.base.biproduct(x, y)
        return BiproductWitness(w.obj, self.op(w.p1), self.op(w.p2), self.op(w.i1), self.op(w.i2))

    def _hom_space(self, x: Obj, y: Obj) -> HomSpace:
        space = self.base.hom_space(y, x)
        return HomSpace(x, y, space.quotient, lambda f: space._vec(self.un(f)),
                        lambda v: Mor(y, x, space._unvec(v)))

    def is_zero_obj(self, x: Obj) -> bool:
        return self.base.is_zero_obj(x)

    def obj_iso(self, x: Obj, y: Obj) -> Mor | None:
        u = self.base.obj_iso(y, x)
        return None if u is None else self.op(u)

    def _cone(self, f: Mor) -> Triangle:
        # the underlying cone Y → X → C → ΣY of f: Y → X, unrotated twice, ends with f
        b = self.base
        t = b.cone(self.un(f))
        g = b.negate(b.desuspend_mor(t.h))
        h = b.negate(b.desuspend_mor(t.g))
        return Triangle(f, self.op(g), self.op(h))

    def octahedron_on_cones(self, f: Mor, g: Mor) -> tuple[Mor, Mor, Mor]:
        # the underlying octahedron of un(f)∘un(g), desuspended and read backwards
        b = self.base
        k, k1, k2 = b.octahedron_on_cones(self.un(g), self.un(f))
        return (self.op(b.desuspend_mor(k1)),
                self.op(b.desuspend_mor(k)),
                self.op(b.desuspend_mor(b.desuspend_mor(k2))))

    def sample_object(self, rng: random.Random, max_dim: int) -> Obj:
        return self.base.sample_object(rng, max_dim)

    def sample_mor(self, rng: random.Random, x: Obj, y: Obj) -> Mor:
        return self.op(self.base.sample_mor(rng, y, x))

    def describe(self, x: Obj) -> str:
        return self.base.describe(x)
