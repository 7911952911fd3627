"""DOT export for braid diagrams and 3×3 grids.

Nodes are keyed by their role in the diagram (so equal objects in different
positions stay distinct) and labelled with the instance's description of the
object. Anticommuting squares get an extra "⊖" node placed inside them.
"""

from __future__ import annotations

from .core import Instance, Mor
from .toolkit import BraidDiagram, GridCompletion

# object roles along each strand of the braid of a composable pair (f, g), h = g∘f
_STRANDS = {
    "f": ("X", "Y", "C_f"),
    "g": ("Y", "Z", "C_g"),
    "h": ("X", "Z", "C_h"),
    "k": ("C_f", "C_h", "C_g"),
}
_EDGE_NAMES = ("{s}", "{s}'", "{s}''")


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _shifted(role: str, n: int) -> str:
    return role if n == 0 else ("Σ" if n == 1 else f"Σ^{n}") + role


def _render(name: str, nodes: dict[str, str], edges: list[tuple[str, str, str]],
            extra: list[str] = ()) -> str:
    lines = [f"digraph {_quote(name)} {{", "  rankdir=LR;", "  node [shape=box];"]
    for key, label in nodes.items():
        lines.append(f"  {_quote(key)} [label={_quote(label)}];")
    for a, b, label in edges:
        lines.append(f"  {_quote(a)} -> {_quote(b)} [label={_quote(label)}];")
    lines.extend(f"  {e}" for e in extra)
    lines.append("}")
    return "\n".join(lines) + "\n"


def braid_dot(inst: Instance, b: BraidDiagram) -> str:
    nodes: dict[str, str] = {}
    edges: list[tuple[str, str, str]] = []
    for strand, ms in b.strands.items():
        roles = _STRANDS[strand]
        for i, m in enumerate(ms):
            src = _shifted(roles[i % 3], i // 3)
            dst = _shifted(roles[(i + 1) % 3], (i + 1) // 3)
            for key, obj in ((src, m.source), (dst, m.target)):
                nodes.setdefault(key, f"{key} = {inst.describe(obj)}")
            edges.append((src, dst, _shifted(_EDGE_NAMES[i % 3].format(s=strand), i // 3)))
    return _render("braid", nodes, edges)


def grid_dot(inst: Instance, grid: GridCompletion) -> str:
    """The 4×4 lattice: three triangle rows and columns plus the suspended first row and column."""
    s = inst.suspend_mor
    rows = [("f", grid.row_f), ("h", grid.row_h), ("j", grid.row_j)]
    cols = [("g", grid.col_g), ("k", grid.col_k), ("m", grid.col_m)]
    nodes: dict[str, str] = {}
    edges: list[tuple[str, str, str]] = []

    def node(r: int, c: int, m: Mor, end: str) -> str:
        key = f"p{r}{c}"
        obj = m.source if end == "source" else m.target
        nodes.setdefault(key, inst.describe(obj))
        return key

    def add_line(maps: tuple[Mor, Mor, Mor], names: list[str], at) -> None:
        for i, (m, name) in enumerate(zip(maps, names)):
            a, b = at(i), at(i + 1)
            edges.append((node(*a, m, "source"), node(*b, m, "target"), name))

    for r, (n, t) in enumerate(rows):
        add_line(t.maps(), [n, n + "'", n + "''"], lambda i, r=r: (r, i))
    for c, (n, t) in enumerate(cols):
        add_line(t.maps(), [n, n + "'", n + "''"], lambda i, c=c: (i, c))
    f = grid.row_f
    add_line((s(f.f), s(f.g), s(f.h)), ["Σf", "Σf'", "Σf''"], lambda i: (3, i))
    g = grid.col_g
    add_line((s(g.f), s(g.g), s(g.h)), ["Σg", "Σg'", "Σg''"], lambda i: (i, 3))
    extra = ['"sq22" [label="⊖", shape=plaintext];', '"p22" -> "sq22" [style=invis];']
    return _render("three-by-three", nodes, edges, extra)
