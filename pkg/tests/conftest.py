from __future__ import annotations

import random

import pytest

from tricat.linalg import Field, Matrix

QQ = Field.parse("Q")
F7 = Field.parse("Fp:7")


def rand_matrix(rng: random.Random, field: Field, rows: int, cols: int, density: float = 0.7) -> Matrix:
    return Matrix.from_rows(
        field,
        [[field.random(rng) if rng.random() < density else 0 for _ in range(cols)] for _ in range(rows)],
        rows=rows,
        cols=cols,
    )


@pytest.fixture
def rng():
    return random.Random(20240601)
