"""Command line front end: run constructions and check suites, emit JSON reports and DOT.

Exit status is 0 when every check passes, 1 when some check fails and 2 on
bad input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import Callable

from . import localization as L
from .chain import ChainHomotopy
from .core import Instance, Mor, Obj, TriangleMorphism
from .diagrams import braid_dot, grid_dot
from .errors import TricatError
from .frobenius import Module, StableModules, decompose, normal_module, suspend
from .linalg import Field, Matrix, inverse, rank
from .opposite import Opposite
from .toolkit import (Report, braid, check_braid, check_puppe, check_vanishing, filling_morphism,
                      is_triangle_morphism, puppe, three_by_three, triple_composition, validate_grid,
                      validate_octahedron, verify_axioms)
from .vect import Vect

SCHEMA = "tricat-report/1"


class InputError(Exception):
    """Bad command line input or an unreadable file."""


# -- instances and file formats ----------------------------------------------------------


def make_instance(spec: str, field: Field) -> Instance:
    if spec.startswith("op-of:"):
        return Opposite(make_instance(spec[len("op-of:"):], field))
    if spec == "vect":
        return Vect(field)
    if spec == "chain":
        return ChainHomotopy(field)
    if spec == "frobenius":
        return StableModules(field)
    raise InputError(f"unknown instance {spec!r}")


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read {path}: {e}") from e


def _matrix(doc, field: Field) -> Matrix:
    if isinstance(doc, dict) and "field" in doc and Field.parse(doc["field"]) != field:
        raise InputError(f"matrix over {doc['field']} given for an instance over {field}")
    return Matrix.from_json(doc, field)


def load_mor(inst: Instance, doc) -> Mor:
    """A morphism from its file format: a matrix (vect), a chain map (chain), or a module map (frobenius).

    For an opposite instance the file holds the underlying morphism.
    """
    if isinstance(inst, Opposite):
        return inst.op(load_mor(inst.base, doc))
    if isinstance(inst, Vect):
        return inst.mor(_matrix(doc, inst.field))
    if isinstance(inst, ChainHomotopy):
        return inst.chain_map_from_json(doc)
    if isinstance(inst, StableModules):
        m, n = load_module(doc["source"], inst.field), load_module(doc["target"], inst.field)
        x, p = inst.normalize(m)
        y, q = inst.normalize(n)
        return inst.mor(q @ _matrix(doc["map"], inst.field) @ inverse(p), x, y)
    raise InputError(f"no file format for {inst.name}")


def load_module(doc, field: Field) -> Module:
    return Module(int(doc["dim"]), _matrix(doc["x"], field))


def size(inst: Instance, x: Obj) -> int:
    """Total dimension of the underlying vector space(s)."""
    if isinstance(inst, Opposite):
        return size(inst.base, x)
    if isinstance(inst, Vect):
        return inst.dim(x)
    if isinstance(inst, ChainHomotopy):
        return sum(inst.cx(x).dims)
    if isinstance(inst, StableModules):
        a, b = x.key
        return 2 * a + b
    raise InputError(f"no size for {inst.name}")


# -- subcommands ---------------------------------------------------------------------------
# each returns (report, data, dot text or None)


class Ctx:
    def __init__(self, args):
        self.args = args
        self.field = Field.parse(args.field)
        self.inst = make_instance(args.instance, self.field)
        self.rng = random.Random(args.seed)

    def obj(self) -> Obj:
        return self.inst.sample_object(self.rng, self.args.max_dim)

    def mor(self, name: str, x: Obj | None = None, y: Obj | None = None) -> Mor:
        path = getattr(self.args, name, None)
        if path:
            f = load_mor(self.inst, _read_json(path))
            if x is not None and f.source != x or y is not None and f.target != y:
                raise InputError(f"--{name} does not fit the other maps")
            return f
        x = self.obj() if x is None else x
        y = self.obj() if y is None else y
        return self.inst.sample_mor(self.rng, x, y)


def cmd_cone(c: Ctx):
    inst, f = c.inst, c.mor("f")
    t = inst.cone(f)
    r = Report("cone")
    r.add("T2 cone oracle", inst.is_triangle(t))
    r.extend(check_vanishing(inst, t))
    return r, {"source": inst.describe(f.source), "target": inst.describe(f.target),
               "cone": inst.describe(t.z), "cone_dim": size(inst, t.z)}, None


def cmd_octahedron(c: Ctx):
    inst = c.inst
    f = c.mor("f")
    g = c.mor("g", x=f.target)
    w = inst.octahedron(f, g)
    return validate_octahedron(inst, w), {"cone_f": inst.describe(w.tf.z), "cone_g": inst.describe(w.tg.z),
                                          "cone_gf": inst.describe(w.th.z)}, None


def cmd_fill(c: Ctx):
    # fill the square from the cone of f to the cone of k∘f with identity on the source
    inst = c.inst
    f = c.mor("f")
    k = c.mor("k", x=f.target)
    t1, t2 = inst.cone(f), inst.cone(inst.compose(k, f))
    j = inst.identity(f.source)
    m = filling_morphism(inst, t1, t2, j, k)
    r = Report("filling morphism")
    r.add("filling morphism", is_triangle_morphism(inst, TriangleMorphism(t1, t2, j, k, m)))
    return r, {"filled": f"{inst.describe(t1.z)} → {inst.describe(t2.z)}"}, None


def cmd_puppe(c: Ctx):
    inst = c.inst
    p = puppe(inst, inst.cone(c.mor("f")), 3, 3)
    return check_puppe(inst, p), {"length": len(p.morphisms)}, None


def cmd_braid(c: Ctx):
    inst = c.inst
    f = c.mor("f")
    g = c.mor("g", x=f.target)
    b = braid(inst, f, g)
    return check_braid(inst, b), {"relations": len(b.relations)}, braid_dot(inst, b)


def cmd_three_by_three(c: Ctx):
    # complete the homotopy pushout square of (g, f) to the full grid
    inst = c.inst
    f = c.mor("f")
    g = c.mor("g", x=f.source)
    h, k = L.homotopy_pushout(inst, g, f)
    grid = three_by_three(inst, f, g, h, k)
    return validate_grid(inst, grid), {"corner": inst.describe(grid.col_m.z)}, grid_dot(inst, grid)


def cmd_triple(c: Ctx):
    inst = c.inst
    f = c.mor("f")
    g = c.mor("g", x=f.target)
    h = c.mor("h", x=g.target)
    tc = triple_composition(inst, f, g, h)
    r = Report("triple composition")
    r.add("triple composition triangle", inst.is_triangle(tc.triangle))
    r.add("triple composition first map", inst.mor_equal(tc.triangle.f, inst.compose(tc.beta, tc.alpha)))
    return r, {"triangle": [inst.describe(o) for o in (tc.triangle.x, tc.triangle.y, tc.triangle.z)]}, None


def cmd_verify_axioms(c: Ctx):
    a = c.args
    r = verify_axioms(c.inst, seed=a.seed, samples=a.samples, max_dim=a.max_dim)
    return r, {"samples": a.samples}, None


def _subcat(c: Ctx) -> L.SubcategoryPredicate:
    spec = c.args.subcat
    if spec.endswith(".json"):
        doc = _read_json(spec)
        gens = [load_mor(c.inst, g) for g in doc.get("generators", [])]
        spec = {**doc, "generators": gens}
    try:
        return L.from_spec(c.inst, spec)
    except ValueError as e:
        raise InputError(str(e)) from e


def cmd_localize(c: Ctx):
    inst, a = c.inst, c.args
    d = _subcat(c)
    objs = [c.obj() for _ in range(a.samples)]
    if a.check == "trivial":
        r = Report(f"localization by {d.name} is trivial")
        for x in objs:
            r.add("kernel of Loc", L.kernel_of_loc(inst, x, d), inst.describe(x))
        msg = "all sampled objects zero" if r.ok else "some sampled object survives"
        return r, {"subcategory": d.name, "message": msg}, None
    if a.check == "thick":
        return L.is_thick(inst, d, objs, c.rng), {"subcategory": d.name}, None
    if a.check == "closure":
        r = Report(f"kernel of Loc for {d.name}")
        for x in objs:
            r.add("kernel of Loc is the thick closure",
                  L.kernel_of_loc(inst, x, d) == L.thick_closure_member(inst, x, d, d.known), inst.describe(x))
        return r, {"subcategory": d.name}, None
    functors = []
    if isinstance(inst, ChainHomotopy) and d.name == "acyclic":
        functors = [lambda f, n=n: inst.homology_map(f, n) for n in range(-2, 6)]
    r = L.verify_localized_triangulation(inst, d, seed=a.seed, samples=a.samples, max_dim=a.max_dim,
                                         functors=functors)
    return r, {"subcategory": d.name}, None


def cmd_stable(c: Ctx):
    inst = c.inst
    if not isinstance(inst, StableModules):
        raise InputError("stable needs --instance frobenius")
    objs = [(a, b) for a in range(c.args.max_dim + 1) for b in range(c.args.max_dim + 1)
            if 2 * a + b <= c.args.max_dim]
    r = Report("stable module category")
    for a1, b1 in objs:
        x = inst.obj(a1, b1)
        for a2, b2 in objs:
            r.add("stable hom dimension", inst.stable_hom_dim(x, inst.obj(a2, b2)) == b1 * b2,
                  f"N({a1},{b1}) → N({a2},{b2})")
        lit = decompose(suspend(normal_module(inst.field, a1, b1))[0])
        r.add("Σ kills free summands", lit[:2] == (0, b1), f"N({a1},{b1})")
    return r, {"objects": len(objs)}, None


def cmd_decompose(c: Ctx):
    fld = c.field
    if c.args.module:
        m = load_module(_read_json(c.args.module), fld)
    else:
        inst = StableModules(fld)
        a, b = inst.sample_object(c.rng, c.args.max_dim).key
        n = 2 * a + b
        while True:
            p = Matrix.from_rows(fld, [[fld.random(c.rng) for _ in range(n)] for _ in range(n)], rows=n, cols=n)
            if rank(p) == n:
                break
        m = Module(n, p @ normal_module(fld, a, b).x @ inverse(p))
    a, b, p = decompose(m)
    r = Report("decomposition")
    r.add("normal form", inverse(p) @ m.x @ p == normal_module(fld, a, b).x)
    return r, {"free_rank": a, "trivial_rank": b, "dim": m.dim}, None


def cmd_report(c: Ctx):
    merged = Report("merged reports")
    titles = []
    for path in c.args.inputs:
        doc = _read_json(path)
        if doc.get("schema") != SCHEMA:
            raise InputError(f"{path} is not a {SCHEMA} document")
        titles.append(doc["report"]["title"])
        for ch in doc["report"]["checks"]:
            merged.add(ch["anchor"], ch["failed"] == 0, f"{path}: {ch['failed']} failed")
    return merged, {"inputs": titles}, None


COMMANDS: dict[str, Callable] = {
    "cone": cmd_cone, "octahedron": cmd_octahedron, "fill": cmd_fill, "puppe": cmd_puppe,
    "braid": cmd_braid, "three-by-three": cmd_three_by_three, "triple": cmd_triple,
    "verify-axioms": cmd_verify_axioms, "localize": cmd_localize, "stable": cmd_stable,
    "decompose": cmd_decompose, "report": cmd_report,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--instance", default="vect", help="vect, chain, frobenius or op-of:<instance>")
    common.add_argument("--field", default="Fp:7", help="Q or Fp:<p>")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=20)
    common.add_argument("--max-dim", type=int, default=4)
    common.add_argument("--out", help="write the JSON report here instead of stdout")
    common.add_argument("--dot", help="write a DOT diagram here (braid, three-by-three)")
    maps = argparse.ArgumentParser(add_help=False)
    for name in ("f", "g", "h", "k"):
        maps.add_argument(f"--{name}", help=f"morphism file for {name}")

    p = argparse.ArgumentParser(prog="tricat", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common, maps])
        if name == "localize":
            sp.add_argument("--subcat", default="zero_only", help="subcategory kind or a JSON spec file")
            sp.add_argument("--check", choices=["triangulation", "trivial", "thick", "closure"],
                            default="triangulation")
        if name == "decompose":
            sp.add_argument("--module", help="module file {\"dim\": n, \"x\": matrix}")
        if name == "report":
            sp.add_argument("inputs", nargs="+", help="report files to merge")
    return p


def render(args, report: Report, data: dict) -> str:
    config = {k: v for k, v in sorted(vars(args).items()) if k not in ("out", "dot")}
    doc = {"schema": SCHEMA, "command": args.command, "config": config, "data": data,
           "report": report.to_json()}
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        ctx = Ctx(args)
        report, data, dot = COMMANDS[args.command](ctx)
    except (InputError, ValueError, KeyError, TypeError, TricatError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    text = render(args, report, data)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.dot and dot is not None:
        Path(args.dot).write_text(dot)
    return 0 if report.ok else 1


def main() -> None:
    sys.exit(run())
