"""Thick subcategories, the morphisms inverted by them, and fractions.

A subcategory is given by an iso-invariant membership predicate together
with a few known members. Morphisms of the localization are left fractions
w⁻¹∘f with w in Iso(d), i.e. with cone in d. Equality of fractions reduces
to asking whether a morphism of C is killed by some w in Iso(d), which is
the case exactly when it factors through an object of the thick closure.
That space is computed as the span of composites through known members and
their shifts.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .core import Instance, Mor, Obj, Triangle
from .errors import PreconditionViolated, SaturationBudgetExceeded, ShapeMismatch, Undecided
from .linalg import Matrix, rank, solve
from .toolkit import Report, check_vanishing, rotate, validate_octahedron
from .vect import Vect


@dataclass
class SubcategoryPredicate:
    name: str
    member: Callable[[Obj], bool]
    known: list[Obj] = field(default_factory=list)

    def __call__(self, x: Obj) -> bool:
        return self.member(x)


def zero_only(inst: Instance) -> SubcategoryPredicate:
    return SubcategoryPredicate("zero_only", inst.is_zero_obj, [inst.zero_object()])


def all_objects(inst: Instance, examples: Sequence[Obj] = ()) -> SubcategoryPredicate:
    return SubcategoryPredicate("all", lambda x: True, [inst.zero_object(), *examples])


def even_dim(inst: Vect) -> SubcategoryPredicate:
    if not isinstance(inst, Vect):
        raise ValueError("even_dim is defined for vector spaces only")
    return SubcategoryPredicate("even_dim", lambda x: inst.dim(x) % 2 == 0, [inst.space(0), inst.space(2)])


def acyclic(inst) -> SubcategoryPredicate:
    """Complexes with vanishing homology (chain instance)."""
    return SubcategoryPredicate("acyclic", lambda x: not inst.homology_dims(x), [inst.zero_object()])


def homology_vanishes(inst, n: int) -> SubcategoryPredicate:
    """Complexes with H_n = 0 (chain instance)."""
    return SubcategoryPredicate(f"H_{n}-acyclic", lambda x: inst.homology(x, n)[0] == 0, [inst.zero_object()])


def h_acyclic(inst, n: int) -> SubcategoryPredicate:
    """Complexes x with H_n(Σ^k x) = 0 for every k (chain instance)."""
    def member(x: Obj) -> bool:
        degs = inst.cx(x).degrees
        if not degs:
            return True
        shifts = range(n - max(degs), n - min(degs) + 1)
        return all(inst.homology(inst.suspend_obj_n(x, k), n)[0] == 0 for k in shifts)

    return SubcategoryPredicate(f"H_{n}-acyclic", member, [inst.zero_object()])


def from_spec(inst: Instance, spec: dict | str) -> SubcategoryPredicate:
    """Build a predicate from {"kind": ..., "generators": [...]} (generators are morphisms)."""
    kind = spec if isinstance(spec, str) else spec.get("kind")
    if kind == "even_dim":
        return even_dim(inst)
    if kind == "zero_only":
        return zero_only(inst)
    if kind == "all":
        return all_objects(inst)
    if kind == "acyclic":
        if not hasattr(inst, "homology_dims"):
            raise ValueError("acyclic needs an instance with homology")
        return acyclic(inst)
    if kind == "generated_by_cones":
        gens = [] if isinstance(spec, str) else spec.get("generators", [])
        return d_from_morphism_class(inst, gens)
    raise ValueError(f"unknown subcategory kind {kind!r}")


# -- membership ---------------------------------------------------------------------


def in_iso_d(inst: Instance, f: Mor, d: SubcategoryPredicate) -> bool:
    """Whether the cone of f lies in d."""
    return d(inst.cone(f).z)


def thick_closure_member(inst: Instance, x: Obj, d: SubcategoryPredicate,
                         members: Sequence[Obj] = ()) -> bool:
    """Whether x lies in the thick closure of d, i.e. x ⊕ Σx is isomorphic to a member."""
    s = inst.biproduct(x, inst.suspend_obj(x)).obj
    if d(s):
        return True
    return any(d(m) and inst.obj_iso(s, m) is not None for m in members)


def kernel_of_loc(inst: Instance, x: Obj, d: SubcategoryPredicate, candidates: Sequence[Obj] = ()) -> bool:
    """Whether x becomes zero after localizing: some zero map x → W lies in Iso(d)."""
    pool = [inst.suspend_obj_n(x, k) for k in (-1, 0, 1, 2)] + list(d.known) + list(candidates)
    return any(in_iso_d(inst, inst.zero(x, w), d) for w in pool)


def loc_is_iso(inst: Instance, f: Mor, d: SubcategoryPredicate) -> bool:
    return thick_closure_member(inst, inst.cone(f).z, d, d.known)


def d_from_morphism_class(inst: Instance, ws: Sequence[Mor], shift_budget: int = 6) -> SubcategoryPredicate:
    """The thick triangulated subcategory generated by the cones of ws.

    For vector spaces the thick subcategories are {0} and everything, so
    membership is exact. Elsewhere membership is certified by exhibiting x
    as a retract of a sum of shifts of the generators; when no certificate
    is found within the shift budget the question is left open.
    """
    gens = [inst.cone(w).z for w in ws]
    live = [g for g in gens if not inst.is_zero_obj(g)]
    if not live:
        p = zero_only(inst)
        return SubcategoryPredicate("generated_by_cones", p.member, p.known + gens)
    if isinstance(inst, Vect):
        return SubcategoryPredicate("generated_by_cones", lambda x: True, [inst.zero_object(), *gens])

    shifted = [inst.suspend_obj_n(g, k) for g in live for k in range(-shift_budget, shift_budget + 1)]

    def member(x: Obj) -> bool:
        if inst.is_zero_obj(x):
            return True
        ident = inst.identity(x)
        space = inst.hom_space(x, x)
        span = factoring_span(inst, x, x, shifted)
        if span.cols and rank(Matrix.hstack([span, _coords(space, ident)])) == rank(span):
            return True
        raise SaturationBudgetExceeded(f"no retract certificate for {inst.describe(x)} within the shift budget")

    return SubcategoryPredicate("generated_by_cones", member, [inst.zero_object(), *live])


def _coords(space, f: Mor) -> Matrix:
    return space.coords_many([f])


# -- maps killed by the localization ----------------------------------------------------


def factoring_span(inst: Instance, x: Obj, y: Obj, through: Sequence[Obj]) -> Matrix:
    """Columns spanning (in hom-space coordinates) the maps x → y that factor through sums of ``through``."""
    space = inst.hom_space(x, y)
    cols = []
    for m in through:
        ins, outs = inst.hom_group(x, m), inst.hom_group(m, y)
        if ins and outs:
            cols.append(space.coords_many([inst.compose(b, a) for b in outs for a in ins]))
    if not cols:
        return Matrix.zeros(inst.field, space.dim, 0)
    return Matrix.hstack(cols)


def _pool(inst: Instance, d: SubcategoryPredicate, extra: Sequence[Obj] = ()) -> list[Obj]:
    base = [m for m in [*d.known, *extra] if d(m)]
    out: list[Obj] = []
    for m in base:
        for k in (-1, 0, 1):
            s = inst.suspend_obj_n(m, k)
            if s not in out:
                out.append(s)
    return out


def killed_span(inst: Instance, x: Obj, y: Obj, d: SubcategoryPredicate, pool: Sequence[Obj] = ()) -> Matrix:
    return factoring_span(inst, x, y, _pool(inst, d, pool))


def is_killed(inst: Instance, g: Mor, d: SubcategoryPredicate, pool: Sequence[Obj] = ()) -> bool:
    """Whether w∘g = 0 for some w in Iso(d), decided through the member pool."""
    span = killed_span(inst, g.source, g.target, d, pool)
    c = inst.hom_space(g.source, g.target).coords_many([g])
    if c.is_zero():
        return True
    if span.cols == 0:
        return False
    return rank(Matrix.hstack([span, c])) == rank(span)


def find_equalizer(inst: Instance, g: Mor, d: SubcategoryPredicate, pool: Sequence[Obj] = ()) -> Mor:
    """An explicit w in Iso(d) with w∘g = 0, built as the cone map of a factorization through a member."""
    if inst.is_zero_mor(g):
        return inst.identity(g.target)
    x, y = g.source, g.target
    space = inst.hom_space(x, y)
    target = space.coords_many([g])
    for m in _pool(inst, d, pool):
        outs, ins = inst.hom_group(m, y), inst.hom_group(x, m)
        if not outs or not ins:
            continue
        prods = space.coords_many([inst.compose(b, a) for b in outs for a in ins])
        if rank(Matrix.hstack([prods, target])) != rank(prods):
            continue
        c = solve(prods, target)
        coeff = [row[0] for row in c.tolist()]
        # g = Σ_i b_i ∘ a'_i with a'_i = Σ_j c_ij a_j; so g = B∘A through m^len(outs)
        total, incl, proj = _power(inst, m, len(outs))
        big_b = inst.zero(total, y)
        big_a = inst.zero(x, total)
        for i, b in enumerate(outs):
            big_b = inst.add(big_b, inst.compose(b, proj[i]))
            ai = inst.zero(x, m)
            for j, a in enumerate(ins):
                ai = inst.add(ai, inst.scale(coeff[i * len(ins) + j], a))
            big_a = inst.add(big_a, inst.compose(incl[i], ai))
        w = inst.cone(big_b).g
        if inst.is_zero_mor(inst.compose(w, g)) and in_iso_d(inst, w, d):
            return w
    raise Undecided("no member of the pool equalizes the morphism")


def _power(inst: Instance, m: Obj, n: int) -> tuple[Obj, list[Mor], list[Mor]]:
    """m^n with its injections and projections."""
    obj, incl, proj = m, [inst.identity(m)], [inst.identity(m)]
    for _ in range(n - 1):
        w = inst.biproduct(obj, m)
        incl = [inst.compose(w.i1, i) for i in incl] + [w.i2]
        proj = [inst.compose(p, w.p1) for p in proj] + [w.p2]
        obj = w.obj
    return obj, incl, proj


def localized_hom_dim(inst: Instance, x: Obj, y: Obj, d: SubcategoryPredicate, pool: Sequence[Obj] = ()) -> int:
    """Dimension of the image of Hom(x, y) in the localization."""
    span = killed_span(inst, x, y, d, pool)
    return inst.hom_space(x, y).dim - rank(span)


# -- thickness and 2-out-of-3 ---------------------------------------------------------------


def is_thick(inst: Instance, d: SubcategoryPredicate, objects: Sequence[Obj], rng: random.Random | None = None,
             maps_per_pair: int = 2) -> Report:
    """Sampled closure checks plus the summand condition over all pairs of ``objects``."""
    rng = rng or random.Random(0)
    r = Report(f"thick: {d.name}")
    members = [x for x in objects if d(x)]
    for x in members:
        r.add("closed under Σ", d(inst.suspend_obj(x)), inst.describe(x))
        r.add("closed under Σ⁻¹", d(inst.desuspend_obj(x)), inst.describe(x))
    for x in members:
        for y in members:
            for _ in range(maps_per_pair):
                f = inst.sample_mor(rng, x, y)
                r.add("cone of members is a member", d(inst.cone(f).z), f"{inst.describe(x)} → {inst.describe(y)}")
    for i, x in enumerate(objects):
        for xc in objects[i:]:
            w = inst.biproduct(x, xc)
            if d(w.obj):
                r.add("summands of members", d(x) and d(xc),
                      f"{inst.describe(x)} ↪ {inst.describe(w.obj)}" if not d(x)
                      else f"{inst.describe(xc)} ↪ {inst.describe(w.obj)}")
    return r


def two_of_three(inst: Instance, v: Mor, w: Mor, d: SubcategoryPredicate) -> Report:
    inst._check_composable(w, v)
    a, b, c = in_iso_d(inst, v, d), in_iso_d(inst, w, d), in_iso_d(inst, inst.compose(w, v), d)
    r = Report("2-out-of-3")
    r.add("2-out-of-3: v, w ⇒ wv", not (a and b) or c)
    r.add("2-out-of-3: v, wv ⇒ w", not (a and c) or b)
    r.add("2-out-of-3: w, wv ⇒ v", not (b and c) or a)
    return r


def homotopy_pushout(inst: Instance, w: Mor, f: Mor) -> tuple[Mor, Mor]:
    """(f', w') with f'∘w = w'∘f, from the cone of (w; f): X → X' ⊕ Y with second map (-f', w')."""
    if w.source != f.source:
        raise ShapeMismatch("homotopy pushout needs a common source")
    s = inst.biproduct(w.target, f.target)
    u = inst.add(inst.compose(s.i1, w), inst.compose(s.i2, f))
    c = inst.cone(u).g
    return inst.negate(inst.compose(c, s.i1)), inst.compose(c, s.i2)


# -- fractions ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Fraction:
    """Left fraction w⁻¹∘f (source → apex ← target) or right fraction f∘w⁻¹ (source ← apex → target)."""

    apex: Obj
    w: Mor
    f: Mor
    orientation: str = "left"

    @property
    def source(self) -> Obj:
        return self.f.source if self.orientation == "left" else self.w.target

    @property
    def target(self) -> Obj:
        return self.w.source if self.orientation == "left" else self.f.target


def fraction(inst: Instance, w: Mor, f: Mor, d: SubcategoryPredicate, orientation: str = "left") -> Fraction:
    if orientation not in ("left", "right"):
        raise ValueError("orientation is left or right")
    if orientation == "left" and w.target != f.target or orientation == "right" and w.source != f.source:
        raise ShapeMismatch("fraction legs must meet at the apex")
    if not in_iso_d(inst, w, d):
        raise PreconditionViolated("denominator is not in Iso(d)")
    apex = f.target if orientation == "left" else f.source
    return Fraction(apex, w, f, orientation)


def loc(inst: Instance, f: Mor) -> Fraction:
    return Fraction(f.target, inst.identity(f.target), f)


def loc_inverse(inst: Instance, w: Mor, d: SubcategoryPredicate) -> Fraction:
    """The inverse of Loc(w) for w in Iso(d)."""
    return fraction(inst, w, inst.identity(w.target), d)


def as_left(inst: Instance, a: Fraction) -> Fraction:
    if a.orientation == "left":
        return a
    # f∘w⁻¹ = w'⁻¹∘f' with the homotopy pushout of (w, f)
    f1, w1 = homotopy_pushout(inst, a.w, a.f)
    return Fraction(w1.target, w1, f1)


def compose_fractions(inst: Instance, b: Fraction, a: Fraction) -> Fraction:
    """b∘a as a left fraction."""
    a, b = as_left(inst, a), as_left(inst, b)
    if a.target != b.source:
        raise ShapeMismatch("fractions are not composable")
    # f_b∘w_a⁻¹ = w'⁻¹∘f' through the pushout of (w_a, f_b)
    f1, w1 = homotopy_pushout(inst, a.w, b.f)
    return Fraction(w1.target, inst.compose(w1, b.w), inst.compose(f1, a.f))


def add_fractions(inst: Instance, a: Fraction, b: Fraction) -> Fraction:
    a, b = as_left(inst, a), as_left(inst, b)
    fa, fb, u = _common_denominator(inst, a, b)
    return Fraction(u.target, u, inst.add(fa, fb))


def _common_denominator(inst: Instance, a: Fraction, b: Fraction) -> tuple[Mor, Mor, Mor]:
    """(f_a', f_b', u) with a = u⁻¹ f_a' and b = u⁻¹ f_b'."""
    if a.source != b.source or a.target != b.target:
        raise ShapeMismatch("fractions must be parallel")
    p, q = homotopy_pushout(inst, a.w, b.w)
    u = inst.compose(p, a.w)
    return inst.compose(p, a.f), inst.compose(q, b.f), u


def fractions_equal(inst: Instance, a: Fraction, b: Fraction, d: SubcategoryPredicate,
                    pool: Sequence[Obj] = ()) -> bool:
    a, b = as_left(inst, a), as_left(inst, b)
    fa, fb, _ = _common_denominator(inst, a, b)
    return is_killed(inst, inst.sub(fa, fb), d, pool)


def fraction_is_zero(inst: Instance, a: Fraction, d: SubcategoryPredicate, pool: Sequence[Obj] = ()) -> bool:
    a = as_left(inst, a)
    return is_killed(inst, a.f, d, pool)


# -- the localized triangulation ----------------------------------------------------------------


def verify_localized_triangulation(inst: Instance, d: SubcategoryPredicate, seed: int = 0, samples: int = 20,
                                   max_dim: int = 3, pool: Sequence[Obj] = (),
                                   functors: Sequence[Callable[[Mor], Matrix]] = ()) -> Report:
    """Fraction-level checks of the triangulation induced on the localization.

    ``functors`` are homological functors (on morphisms) that vanish on d;
    each must send equal fractions to equal maps.
    """
    rng = random.Random(seed)
    r = Report(f"localization by {d.name}")
    eq = lambda a, b: fractions_equal(inst, a, b, d, pool)  # noqa: E731
    zero = lambda a: fraction_is_zero(inst, a, d, pool)  # noqa: E731
    for _ in range(samples):
        x, y, z = (inst.sample_object(rng, max_dim) for _ in range(3))
        f = inst.sample_mor(rng, x, y)
        g = inst.sample_mor(rng, y, z)
        t = inst.cone(f)
        lf, lg, lh = loc(inst, t.f), loc(inst, t.g), loc(inst, t.h)
        r.add("loc T1 identity", eq(compose_fractions(inst, loc(inst, inst.identity(y)), lf), lf))
        r.add("loc vanishing gf=0", zero(compose_fractions(inst, lg, lf)))
        r.add("loc vanishing hg=0", zero(compose_fractions(inst, lh, lg)))
        rt = rotate(inst, t)
        r.add("loc rotation", zero(compose_fractions(inst, loc(inst, rt.h), loc(inst, rt.g))))
        r.add("loc composition is functorial",
              eq(compose_fractions(inst, loc(inst, g), lf), loc(inst, inst.compose(g, f))))
        # Iso(d) becomes invertible
        w = _sample_iso_d(inst, rng, d, y, pool)
        if w is not None:
            inv = loc_inverse(inst, w, d)
            r.add("loc inverts Iso(d)", eq(compose_fractions(inst, inv, loc(inst, w)), loc(inst, inst.identity(y))))
            r.add("loc inverts Iso(d) (other side)",
                  eq(compose_fractions(inst, loc(inst, w), inv), loc(inst, inst.identity(w.target))))
        # T5 through a lifted composable pair: b = w_z⁻¹∘g' lifts to the pair (f, g') in C
        wz = _sample_iso_d(inst, rng, d, z, pool)
        if wz is not None:
            g1 = inst.sample_mor(rng, y, wz.target)
            b = fraction(inst, wz, g1, d)
            r.add("loc T5 on lifted pair", validate_octahedron(inst, inst.octahedron(f, g1)).ok)
            r.add("loc lifted composite", eq(compose_fractions(inst, b, lf),
                                             fraction(inst, wz, inst.compose(g1, f), d)))
        if w is not None:
            for fun in functors:
                # a homological functor vanishing on d sees w as invertible
                m = fun(w)
                r.add("functor inverts Iso(d)", m.rows == m.cols and rank(m) == m.rows)
        for fun in functors:
            r.add("functor kills loc-zero maps", not zero(loc(inst, f)) or fun(f).is_zero())
        r.extend(_vanishing_in_c(inst, t))
    return r


def _vanishing_in_c(inst: Instance, t: Triangle) -> Report:
    out = Report()
    for c in check_vanishing(inst, t).checks:
        out.add("loc source triangle " + c.anchor, c.passed, c.detail)
    return out


def _sample_iso_d(inst: Instance, rng: random.Random, d: SubcategoryPredicate, y: Obj,
                  pool: Sequence[Obj]) -> Mor | None:
    """Some w: y → ? in Iso(d): the cone map of a morphism from a member into y."""
    members = _pool(inst, d, pool)
    if not members:
        return None
    m = members[rng.randrange(len(members))]
    h = inst.sample_mor(rng, m, y)
    w = inst.cone(h).g
    return w if in_iso_d(inst, w, d) else None
