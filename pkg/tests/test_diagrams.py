from __future__ import annotations

import random
import re

from tricat.chain import ChainHomotopy
from tricat.diagrams import braid_dot, grid_dot
from tricat.linalg import Field
from tricat.toolkit import braid, three_by_three
from tricat.vect import Vect

F7 = Field.parse("Fp:7")


def edges(dot: str) -> list[tuple[str, str, str]]:
    return re.findall(r'"([^"]+)" -> "([^"]+)" \[label="([^"]*)"\]', dot)


def nodes(dot: str) -> set[str]:
    return set(re.findall(r'^  "([^"]+)" \[label=', dot, re.M))


def test_braid_dot_has_one_node_per_role():
    v = Vect(F7)
    rng = random.Random(0)
    f = v.sample_mor(rng, v.space(2), v.space(3))
    g = v.sample_mor(rng, v.space(3), v.space(2))
    dot = braid_dot(v, braid(v, f, g, periods=1))
    assert nodes(dot) == {"X", "Y", "Z", "C_f", "C_g", "C_h", "ΣX", "ΣY", "ΣC_f"}
    assert len(edges(dot)) == 12
    assert ("C_f", "C_h", "k") in edges(dot)


def test_braid_dot_two_periods_and_determinism():
    c = ChainHomotopy(Field.parse("Fp:3"), max_len=3)
    rng = random.Random(1)
    x, y, z = (c.sample_object(rng, 2) for _ in range(3))
    f, g = c.sample_mor(rng, x, y), c.sample_mor(rng, y, z)
    b = braid(c, f, g, periods=2)
    dot = braid_dot(c, b)
    assert dot == braid_dot(c, b)
    assert len(edges(dot)) == sum(len(ms) for ms in b.strands.values())
    assert "Σ^2X" in nodes(dot)


def test_grid_dot_marks_the_anticommuting_corner():
    v = Vect(F7)
    x, y = v.space(2), v.space(3)
    rng = random.Random(2)
    f = v.sample_mor(rng, x, y)
    g = v.identity(x)
    k = v.sample_mor(rng, y, v.space(2))
    h = v.compose(k, f)
    grid = three_by_three(v, f, g, h, k)
    dot = grid_dot(v, grid)
    assert nodes(dot) - {"sq22"} == {f"p{r}{c}" for r in range(4) for c in range(4)}
    assert len(edges(dot)) == 24
    assert dot.count("⊖") == 1
    assert ("p22", "p23", "j''") in edges(dot) and ("p23", "p33", "Σg''") in edges(dot)
