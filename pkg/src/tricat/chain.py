"""Bounded chain complexes over a field and their homotopy category.

Conventions: differentials lower degree, (ΣX)_n = X_{n-1} with d_ΣX = -d_X,
and the cone of f: X → Y has C_n = X_{n-1} ⊕ Y_n with differential
[[-d_X, 0], [-f, d_Y]]. Morphisms are chain maps; two are equal when they
are chain homotopic.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import numpy as np

from .core import BiproductWitness, HomSpace, Instance, Mor, Obj, Triangle
from .errors import NotExact, ShapeMismatch
from .linalg import (Field, Matrix, NoSolution, QuotientSpace, complement_basis, image_basis, kernel_basis, kron,
                     rank, solve)


@dataclass(frozen=True)
class Complex:
    """Degrees lo .. lo+len(dims)-1; ``diffs[i]`` is d_{lo+i+1}: degree lo+i+1 → lo+i."""

    field: Field
    lo: int
    dims: tuple[int, ...]
    diffs: tuple[Matrix, ...]

    @property
    def hi(self) -> int:
        return self.lo + len(self.dims) - 1

    @property
    def degrees(self) -> range:
        return range(self.lo, self.lo + len(self.dims))

    def dim(self, n: int) -> int:
        i = n - self.lo
        return self.dims[i] if 0 <= i < len(self.dims) else 0

    def d(self, n: int) -> Matrix:
        """d_n: degree n → n-1 (a zero matrix outside the support)."""
        i = n - self.lo - 1
        if 0 <= i < len(self.diffs):
            return self.diffs[i]
        return Matrix.zeros(self.field, self.dim(n - 1), self.dim(n))

    def is_zero(self) -> bool:
        return not self.dims

    def __str__(self) -> str:
        if not self.dims:
            return "0"
        return "[" + " ".join(f"{n}:{self.dim(n)}" for n in self.degrees) + "]"


def make_complex(field: Field, lo: int, dims, diff_fn) -> Complex:
    """Build a complex from d_n = diff_fn(n), trimming zero end degrees."""
    dims = list(dims)
    while dims and dims[0] == 0:
        dims.pop(0)
        lo += 1
    while dims and dims[-1] == 0:
        dims.pop()
    if not dims:
        return Complex(field, 0, (), ())
    diffs = []
    for i in range(len(dims) - 1):
        n = lo + i + 1
        m = diff_fn(n)
        if m.shape != (dims[i], dims[i + 1]):
            raise ShapeMismatch(f"d_{n} has shape {m.shape}, expected {(dims[i], dims[i + 1])}")
        diffs.append(m)
    c = Complex(field, lo, tuple(dims), tuple(diffs))
    for n in range(c.lo + 2, c.hi + 1):
        if not (c.d(n - 1) @ c.d(n)).is_zero():
            raise ValueError(f"d_{n - 1} d_{n} is not zero")
    return c


def complex_from_spaces(field: Field, lo: int, diffs: list[Matrix], dims: list[int] | None = None) -> Complex:
    if dims is None:
        dims = [diffs[0].rows] + [m.cols for m in diffs] if diffs else []
    return make_complex(field, lo, dims, lambda n: diffs[n - lo - 1])


def concentrated(field: Field, n: int, dim: int) -> Complex:
    return make_complex(field, n, [dim], lambda k: None)


def complex_to_json(c: Complex) -> dict:
    return {"lo": c.lo, "hi": c.hi, "dims": list(c.dims), "differentials": [m.to_json() for m in c.diffs]}


def complex_from_json(doc: dict, field: Field) -> Complex:
    try:
        lo, hi, dims = int(doc["lo"]), int(doc["hi"]), [int(d) for d in doc["dims"]]
        diffs = [Matrix.from_json(m, field) for m in doc["differentials"]]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed complex: {exc}") from exc
    if hi - lo + 1 != len(dims) or len(diffs) != max(len(dims) - 1, 0):
        raise ValueError("complex degrees, dims and differentials disagree")
    return make_complex(field, lo, dims, lambda n: diffs[n - lo - 1])


@dataclass(frozen=True)
class ChainData:
    """Components f_n for n in the source's degrees."""

    lo: int
    comps: tuple[Matrix, ...]

    def at(self, n: int, rows: int, cols: int, field: Field) -> Matrix:
        i = n - self.lo
        if 0 <= i < len(self.comps):
            return self.comps[i]
        return Matrix.zeros(field, rows, cols)


def _cobj(c: Complex) -> Obj:
    return Obj(c, str(c))


class ChainHomotopy(Instance):
    """The homotopy category of bounded complexes of finite-dimensional spaces."""

    name = "chain"

    def __init__(self, field: Field, max_len: int = 4):
        super().__init__()
        self.field = field
        self.max_len = max_len

    # objects and maps -----------------------------------------------------------

    def obj(self, c: Complex) -> Obj:
        return _cobj(c)

    def cx(self, x: Obj) -> Complex:
        return x.key

    def comp(self, f: Mor, n: int) -> Matrix:
        x, y = self.cx(f.source), self.cx(f.target)
        return f.data.at(n, y.dim(n), x.dim(n), self.field)

    def chain_map(self, x: Obj, y: Obj, fn, check: bool = True) -> Mor:
        cx, cy = self.cx(x), self.cx(y)
        comps = []
        for n in cx.degrees:
            m = fn(n)
            if m.shape != (cy.dim(n), cx.dim(n)):
                raise ShapeMismatch(f"component {n} has shape {m.shape}")
            comps.append(m)
        f = Mor(x, y, ChainData(cx.lo, tuple(comps)))
        if check and not self.is_chain_map(f):
            raise ValueError("components do not commute with the differentials")
        return f

    def is_chain_map(self, f: Mor) -> bool:
        x, y = self.cx(f.source), self.cx(f.target)
        for n in range(x.lo, x.hi + 2):
            if not (y.d(n) @ self.comp(f, n) == self.comp(f, n - 1) @ x.d(n)):
                return False
        return True

    def zero_object(self) -> Obj:
        return _cobj(Complex(self.field, 0, (), ()))

    def identity(self, x: Obj) -> Mor:
        c = self.cx(x)
        return self.chain_map(x, x, lambda n: Matrix.identity(self.field, c.dim(n)), check=False)

    def zero(self, x: Obj, y: Obj) -> Mor:
        cx, cy = self.cx(x), self.cx(y)
        return self.chain_map(x, y, lambda n: Matrix.zeros(self.field, cy.dim(n), cx.dim(n)), check=False)

    def compose(self, g: Mor, f: Mor) -> Mor:
        self._check_composable(g, f)
        return self.chain_map(f.source, g.target, lambda n: self.comp(g, n) @ self.comp(f, n), check=False)

    def add(self, f: Mor, g: Mor) -> Mor:
        self._check_parallel(f, g)
        return self.chain_map(f.source, f.target, lambda n: self.comp(f, n) + self.comp(g, n), check=False)

    def scale(self, c, f: Mor) -> Mor:
        return self.chain_map(f.source, f.target, lambda n: self.comp(f, n).scale(c), check=False)

    def negate(self, f: Mor) -> Mor:
        return self.chain_map(f.source, f.target, lambda n: -self.comp(f, n), check=False)

    # shift ---------------------------------------------------------------------

    def shift(self, c: Complex, k: int = 1) -> Complex:
        if c.is_zero():
            return c
        sign = -1 if k % 2 else 1
        return Complex(c.field, c.lo + k, c.dims, tuple(m.scale(sign) for m in c.diffs))

    def suspend_obj(self, x: Obj) -> Obj:
        return _cobj(self.shift(self.cx(x), 1))

    def desuspend_obj(self, x: Obj) -> Obj:
        return _cobj(self.shift(self.cx(x), -1))

    def suspend_mor(self, f: Mor) -> Mor:
        return self._shift_mor(f, 1)

    def desuspend_mor(self, f: Mor) -> Mor:
        return self._shift_mor(f, -1)

    def _shift_mor(self, f: Mor, k: int) -> Mor:
        x = _cobj(self.shift(self.cx(f.source), k))
        y = _cobj(self.shift(self.cx(f.target), k))
        return Mor(x, y, ChainData(self.cx(x).lo, f.data.comps))

    # cones -----------------------------------------------------------------------

    def cone_complex(self, f: Mor, with_f: bool = True) -> Complex:
        x, y = self.cx(f.source), self.cx(f.target)
        fld = self.field
        degs = sorted({n + 1 for n in x.degrees} | set(y.degrees))
        if not degs:
            return Complex(fld, 0, (), ())
        lo, hi = degs[0], degs[-1]

        def d(n):
            a, b = x.dim(n - 1), y.dim(n)
            a2, b2 = x.dim(n - 2), y.dim(n - 1)
            fb = self.comp(f, n - 1) if with_f else Matrix.zeros(fld, b2, a)
            return Matrix.blocks([
                [-x.d(n - 1), Matrix.zeros(fld, a2, b)],
                [-fb, y.d(n)],
            ]) if (a + b) and (a2 + b2) else Matrix.zeros(fld, a2 + b2, a + b)

        dims = [x.dim(n - 1) + y.dim(n) for n in range(lo, hi + 1)]
        return make_complex(fld, lo, dims, d)

    def _cone(self, f: Mor) -> Triangle:
        return self._cone_triangle(f, True)

    def _cone_triangle(self, f: Mor, with_f: bool) -> Triangle:
        x, y = self.cx(f.source), self.cx(f.target)
        fld = self.field
        c = _cobj(self.cone_complex(f, with_f))
        sx = self.suspend_obj(f.source)

        def incl(n):
            a, b = x.dim(n - 1), y.dim(n)
            return Matrix.vstack([Matrix.zeros(fld, a, b), Matrix.identity(fld, b)], cols=b, field=fld)

        def proj(n):
            a, b = x.dim(n - 1), y.dim(n)
            return Matrix.hstack([Matrix.identity(fld, a), Matrix.zeros(fld, a, b)], rows=a, field=fld)

        g = self.chain_map(f.target, c, incl, check=False)
        h = self.chain_map(c, sx, proj, check=False)
        return Triangle(f, g, h)

    def octahedron_on_cones(self, f: Mor, g: Mor) -> tuple[Mor, Mor, Mor]:
        """Cone-of-cones maps: k(x, y) = (x, g y), k'(x, z) = (f x, z), k''(y, z) = (0, y)."""
        self._check_composable(g, f)
        fld = self.field
        x, y, z = self.cx(f.source), self.cx(f.target), self.cx(g.target)
        gf = self.compose(g, f)
        cf, cg, ch = self.cone(f).z, self.cone(g).z, self.cone(gf).z
        eye, zero = Matrix.identity, Matrix.zeros

        def k(n):
            a, b, c = x.dim(n - 1), y.dim(n), z.dim(n)
            return Matrix.blocks([[eye(fld, a), zero(fld, a, b)], [zero(fld, c, a), self.comp(g, n)]])

        def k1(n):
            a, b, c = x.dim(n - 1), y.dim(n - 1), z.dim(n)
            return Matrix.blocks([[self.comp(f, n - 1), zero(fld, b, c)], [zero(fld, c, a), eye(fld, c)]])

        def k2(n):
            # C_g,n = Y_{n-1} ⊕ Z_n  →  (ΣC_f)_n = X_{n-2} ⊕ Y_{n-1}
            a, b, c = x.dim(n - 2), y.dim(n - 1), z.dim(n)
            return Matrix.blocks([[zero(fld, a, b), zero(fld, a, c)], [eye(fld, b), zero(fld, b, c)]])

        return (self.chain_map(cf, ch, k, check=False), self.chain_map(ch, cg, k1, check=False),
                self.chain_map(cg, self.suspend_obj(cf), k2, check=False))

    def biproduct(self, x: Obj, y: Obj) -> BiproductWitness:
        cx, cy = self.cx(x), self.cx(y)
        fld = self.field
        degs = [n for n in range(min(cx.lo, cy.lo) if not cx.is_zero() and not cy.is_zero()
                                 else (cx.lo if not cx.is_zero() else cy.lo),
                                 max(cx.hi, cy.hi) + 1)]
        if not degs:
            z = self.zero_object()
            return BiproductWitness(z, self.zero(x, z), self.zero(y, z), self.zero(z, x), self.zero(z, y))
        lo = degs[0]
        s = _cobj(make_complex(fld, lo, [cx.dim(n) + cy.dim(n) for n in degs],
                               lambda n: Matrix.block_diag([cx.d(n), cy.d(n)], field=fld)))
        eye, zero = Matrix.identity, Matrix.zeros
        i1 = self.chain_map(x, s, lambda n: Matrix.vstack([eye(fld, cx.dim(n)), zero(fld, cy.dim(n), cx.dim(n))]), False)
        i2 = self.chain_map(y, s, lambda n: Matrix.vstack([zero(fld, cx.dim(n), cy.dim(n)), eye(fld, cy.dim(n))]), False)
        p1 = self.chain_map(s, x, lambda n: Matrix.hstack([eye(fld, cx.dim(n)), zero(fld, cx.dim(n), cy.dim(n))],
                                                          rows=cx.dim(n), field=fld), False)
        p2 = self.chain_map(s, y, lambda n: Matrix.hstack([zero(fld, cy.dim(n), cx.dim(n)), eye(fld, cy.dim(n))],
                                                          rows=cy.dim(n), field=fld), False)
        return BiproductWitness(s, i1, i2, p1, p2)

    # hom-spaces and homotopies ---------------------------------------------------

    def _layout(self, x: Complex, y: Complex, shift: int = 0) -> tuple[dict[int, tuple[int, int, int]], int]:
        """Variable blocks (offset, rows, cols) for maps X_n → Y_{n+shift}, and the total size."""
        off, table = 0, {}
        for n in x.degrees:
            r, c = y.dim(n + shift), x.dim(n)
            table[n] = (off, r, c)
            off += r * c
        return table, off

    def _hom_space(self, xo: Obj, yo: Obj) -> HomSpace:
        x, y = self.cx(xo), self.cx(yo)
        fld = self.field
        var, nvar = self._layout(x, y)
        # chain map constraints d_Y f_n - f_{n-1} d_X = 0, one block per degree
        rows = []
        for n in range(x.lo, x.hi + 2):
            r, c = y.dim(n - 1), x.dim(n)
            if r * c == 0:
                continue
            block = Matrix.zeros(fld, r * c, nvar).a.copy()
            if n in var and var[n][1] * var[n][2]:
                o, vr, vc = var[n]
                block[:, o:o + vr * vc] += kron(y.d(n), Matrix.identity(fld, vc)).a
            if n - 1 in var and var[n - 1][1] * var[n - 1][2]:
                o, vr, vc = var[n - 1]
                block[:, o:o + vr * vc] -= kron(Matrix.identity(fld, vr), x.d(n).T).a
            rows.append(Matrix(fld, fld.reduce_array(block)))
        cons = Matrix.vstack(rows, cols=nvar, field=fld)
        z = kernel_basis(cons) if rows else Matrix.identity(fld, nvar)
        b = self._homotopy_operator(x, y)
        q = QuotientSpace(z, b)

        def vec(f: Mor) -> Matrix:
            parts = [self.comp(f, n).vec() for n in x.degrees]
            return Matrix.vstack(parts, cols=1, field=fld) if parts else Matrix.zeros(fld, 0, 1)

        def unvec(v: Matrix) -> ChainData:
            comps = []
            for n in x.degrees:
                o, r, c = var[n]
                comps.append(Matrix.unvec(v[o:o + r * c, :], r, c))
            return ChainData(x.lo, tuple(comps))

        return HomSpace(xo, yo, q, vec, unvec)

    def _homotopy_operator(self, x: Complex, y: Complex) -> Matrix:
        """Matrix of s ↦ d s + s d from homotopies s_n: X_n → Y_{n+1} to maps X → Y."""
        fld = self.field
        var, nvar = self._layout(x, y)
        hvar, nh = self._layout(x, y, 1)
        out = Matrix.zeros(fld, nvar, nh).a.copy()
        for n in x.degrees:
            o, r, c = var[n]
            if r * c == 0:
                continue
            # (ds + sd)_n = d^Y_{n+1} s_n + s_{n-1} d^X_n
            if n in hvar and hvar[n][1] * hvar[n][2]:
                ho, hr, hc = hvar[n]
                out[o:o + r * c, ho:ho + hr * hc] += kron(y.d(n + 1), Matrix.identity(fld, hc)).a
            if n - 1 in hvar and hvar[n - 1][1] * hvar[n - 1][2]:
                ho, hr, hc = hvar[n - 1]
                out[o:o + r * c, ho:ho + hr * hc] += kron(Matrix.identity(fld, hr), x.d(n).T).a
        return Matrix(fld, fld.reduce_array(out))

    def homotopic(self, f: Mor, g: Mor) -> tuple[Matrix, ...] | None:
        """A homotopy s with f - g = d s + s d, or None."""
        self._check_parallel(f, g)
        x, y = self.cx(f.source), self.cx(f.target)
        space = self.hom_space(f.source, f.target)
        diff = space._vec(self.sub(f, g))
        op = self._homotopy_operator(x, y)
        if op.cols == 0:
            return () if diff.is_zero() else None
        try:
            s = solve(op, diff)
        except NoSolution:
            return None
        hvar, _ = self._layout(x, y, 1)
        return tuple(Matrix.unvec(s[hvar[n][0]:hvar[n][0] + hvar[n][1] * hvar[n][2], :], hvar[n][1], hvar[n][2])
                     for n in x.degrees)

    # homology ------------------------------------------------------------------------

    def homology_split(self, c: Complex, n: int) -> tuple[Matrix, Matrix]:
        """(inclusion H_n → C_n of cycle representatives, retraction C_n → H_n)."""
        fld = self.field
        dim = c.dim(n)
        bnd = image_basis(c.d(n + 1)) if c.d(n + 1).cols else Matrix.zeros(fld, dim, 0)
        cyc = kernel_basis(c.d(n))
        # extend a boundary basis to a cycle basis, then to everything
        aug = Matrix.hstack([bnd, cyc], rows=dim, field=fld)
        hpart = image_basis(aug).columns(range(bnd.cols, rank(aug))) if aug.cols else Matrix.zeros(fld, dim, 0)
        base = Matrix.hstack([bnd, hpart], rows=dim, field=fld)
        rest = complement_basis(base, dim, fld)
        frame = Matrix.hstack([base, rest], rows=dim, field=fld)
        coords = solve(frame, Matrix.identity(fld, dim)) if dim else Matrix.zeros(fld, 0, 0)
        retr = coords.rows_at(range(bnd.cols, bnd.cols + hpart.cols))
        return hpart, retr

    def homology(self, x: Obj | Complex, n: int) -> tuple[int, Matrix]:
        c = x if isinstance(x, Complex) else self.cx(x)
        incl, _ = self.homology_split(c, n)
        return incl.cols, incl

    def homology_dims(self, x: Obj | Complex) -> dict[int, int]:
        c = x if isinstance(x, Complex) else self.cx(x)
        return {n: self.homology(c, n)[0] for n in c.degrees if self.homology(c, n)[0]}

    def normal_form(self, x: Obj) -> tuple[Obj, Mor, Mor]:
        """(H, i, r): H the homology with zero differential, i: H → X and r: X → H inverse homotopy equivalences."""
        c = self.cx(x)
        fld = self.field
        splits = {n: self.homology_split(c, n) for n in c.degrees}
        hc = make_complex(fld, c.lo, [splits[n][0].cols for n in c.degrees] if c.dims else [],
                          lambda n: Matrix.zeros(fld, splits[n - 1][0].cols, splits[n][0].cols))
        h = _cobj(hc)
        i = self.chain_map(h, x, lambda n: splits[n][0], check=False)
        r = self.chain_map(x, h, lambda n: splits[n][1] if n in splits else Matrix.zeros(fld, 0, c.dim(n)), check=False)
        return h, i, r

    def homology_map(self, f: Mor, n: int) -> Matrix:
        x, y = self.cx(f.source), self.cx(f.target)
        ix, _ = self.homology_split(x, n)
        _, ry = self.homology_split(y, n)
        return ry @ self.comp(f, n) @ ix

    def is_quasi_iso(self, f: Mor) -> bool:
        x, y = self.cx(f.source), self.cx(f.target)
        degs = set(x.degrees) | set(y.degrees)
        for n in degs:
            m = self.homology_map(f, n)
            if m.rows != m.cols or rank(m) != m.rows:
                return False
        return True

    def obj_iso(self, x: Obj, y: Obj) -> Mor | None:
        if x == y:
            return self.identity(x)
        hx, _, rx = self.normal_form(x)
        hy, iy, _ = self.normal_form(y)
        if hx != hy:
            return None
        return self.compose(iy, rx)

    # short exact sequences and derived homs -----------------------------------------

    def ses_to_triangle(self, a: Mor, b: Mor) -> tuple[Triangle, Mor]:
        """For 0 → A → B → C → 0 exact in each degree: the cone triangle of a and cone(a) → C."""
        self._check_composable(b, a)
        ca, cb, cc = self.cx(a.source), self.cx(a.target), self.cx(b.target)
        for n in set(ca.degrees) | set(cb.degrees) | set(cc.degrees):
            an, bn = self.comp(a, n), self.comp(b, n)
            if not (bn @ an).is_zero() or rank(an) != ca.dim(n) or rank(bn) != cc.dim(n) \
                    or rank(an) + rank(bn) != cb.dim(n):
                raise NotExact(f"sequence is not exact in degree {n}")
        t = self.cone(a)
        fld = self.field

        def comp(n):
            return Matrix.hstack([Matrix.zeros(fld, cc.dim(n), ca.dim(n - 1)), self.comp(b, n)], rows=cc.dim(n), field=fld)

        q = self.chain_map(t.z, b.target, comp)
        if not self.is_quasi_iso(q):
            raise NotExact("comparison map is not a quasi-isomorphism")
        return t, q

    def derived_hom(self, x: Obj, y: Obj) -> dict[int, int]:
        """Degree k ↦ Σ_n dim H_n(x) · dim H_{n+k}(y), omitting zeros."""
        hx, hy = self.homology_dims(x), self.homology_dims(y)
        out: dict[int, int] = {}
        for n, a in hx.items():
            for m, b in hy.items():
                out[m - n] = out.get(m - n, 0) + a * b
        return {k: v for k, v in sorted(out.items()) if v}

    def long_exact_sequence(self, t: Triangle) -> list[tuple[int, str, bool]]:
        """Exactness of H_n along f, g, h, Σf in every degree, as (degree, place, holds) by rank count."""
        f, g, h = t.maps()
        pairs = [("at Y", f, g), ("at Z", g, h), ("at ΣX", h, self.suspend_mor(f))]
        degs = sorted(set().union(*(self.cx(o).degrees for o in (t.x, t.y, t.z, self.suspend_obj(t.x)))))
        out = []
        for n in degs:
            for place, a, b in pairs:
                ha, hb = self.homology_map(a, n), self.homology_map(b, n)
                mid = self.homology(a.target, n)[0]
                out.append((n, place, (hb @ ha).is_zero() and rank(ha) + rank(hb) == mid))
        return out

    def derived_map(self, f: Mor) -> dict[int, Matrix]:
        """The image of f in the derived category, as its action on homology."""
        x, y = self.cx(f.source), self.cx(f.target)
        return {n: self.homology_map(f, n) for n in sorted(set(x.degrees) | set(y.degrees))}

    # sampling ---------------------------------------------------------------------------

    def random_complex(self, rng: random.Random, length: int, max_dim: int, lo: int = 0) -> Complex:
        fld = self.field
        dims = [rng.randint(0, max_dim) for _ in range(length)]
        diffs: dict[int, Matrix] = {}
        for i in range(1, length):
            n = lo + i
            prev = diffs.get(n - 1)
            ker = kernel_basis(prev) if prev is not None else Matrix.identity(fld, dims[i - 1])
            k = rng.randint(0, min(ker.cols, dims[i]))
            left = ker.columns(range(ker.cols)) @ Matrix.from_rows(
                fld, [[fld.random(rng) for _ in range(k)] for _ in range(ker.cols)], rows=ker.cols, cols=k)
            right = Matrix.from_rows(fld, [[fld.random(rng) for _ in range(dims[i])] for _ in range(k)],
                                     rows=k, cols=dims[i])
            diffs[n] = left @ right
        return make_complex(fld, lo, dims, lambda n: diffs[n])

    def sample_object(self, rng: random.Random, max_dim: int) -> Obj:
        length = rng.randint(1, self.max_len)
        lo = rng.randint(-1, 1)
        return _cobj(self.random_complex(rng, length, min(max_dim, 3), lo))

    def sample_mor(self, rng: random.Random, x: Obj, y: Obj) -> Mor:
        # random chain map including a random nullhomotopic part
        space = self.hom_space(x, y)
        q = space.quotient
        cols = Matrix.hstack([q.basis, q.boundary], rows=q.ambient, field=self.field)
        if cols.cols == 0:
            return self.zero(x, y)
        c = Matrix.from_rows(self.field, [[self.field.random(rng)] for _ in range(cols.cols)], rows=cols.cols, cols=1)
        return Mor(x, y, space._unvec(cols @ c))

    def describe(self, x: Obj) -> str:
        return str(self.cx(x))

    def chain_map_to_json(self, f: Mor) -> dict:
        return {"source": complex_to_json(self.cx(f.source)), "target": complex_to_json(self.cx(f.target)),
                "lo": f.data.lo, "components": [m.to_json() for m in f.data.comps]}

    def chain_map_from_json(self, doc: dict) -> Mor:
        x = _cobj(complex_from_json(doc["source"], self.field))
        y = _cobj(complex_from_json(doc["target"], self.field))
        lo = int(doc["lo"])
        comps = [Matrix.from_json(m, self.field) for m in doc["components"]]
        cx = self.cx(x)
        if cx.dims and (lo != cx.lo or len(comps) != len(cx.dims)):
            raise ValueError("chain map components do not match the source degrees")
        return self.chain_map(x, y, lambda n: comps[n - lo])


def roof_hom_dimension(inst: ChainHomotopy, x: Obj, y: Obj, k: int, limit: int = 3 ** 13) -> int:
    """Brute-force dimension of the localized hom-set from x to y in degree k.

    Enumerates every chain map x → Σ^{-k} y over a finite field and counts
    those that become zero after localizing at quasi-isomorphisms, using the
    criterion that f vanishes iff w∘f is nullhomotopic for some quasi-iso w
    out of y. Returns log_p of the number of classes.
    """
    fld = inst.field
    if fld.p is None:
        raise ValueError("brute-force enumeration needs a finite field")
    p = fld.p
    yk = _cobj(inst.shift(inst.cx(y), -k))
    space = inst.hom_space(x, yk)
    z = Matrix.hstack([space.quotient.basis, space.quotient.boundary], rows=space.quotient.ambient, field=fld)
    dz = z.cols
    if dz == 0:
        return 0
    if p ** dz > limit:
        raise ValueError(f"{p}^{dz} chain maps exceed the enumeration limit {limit}")
    # every chain map as an integer coefficient vector on a basis of Z
    coeffs = np.array(list(itertools.product(range(p), repeat=dz)), dtype=np.int64)
    pool = [inst.identity(yk), inst.normal_form(yk)[2]]
    killed = np.zeros(len(coeffs), dtype=bool)
    for w in pool:
        target = inst.hom_space(x, w.target)
        images = [inst.compose(w, Mor(x, yk, space._unvec(z.column(j)))) for j in range(dz)]
        m = target.coords_many(images) if images else Matrix.zeros(fld, target.dim, 0)
        vals = (coeffs @ np.array(m.a, dtype=np.int64).T) % p if m.rows else np.zeros((len(coeffs), 0), dtype=np.int64)
        killed |= ~vals.any(axis=1)
    classes = len(coeffs) // int(killed.sum())
    d = 0
    while p ** d < classes:
        d += 1
    if p ** d != classes or len(coeffs) % int(killed.sum()):
        raise ArithmeticError("class count is not a power of the field order")
    return d
