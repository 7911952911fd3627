from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from tricat.chain import (ChainHomotopy, complex_from_json, complex_to_json, concentrated, make_complex,
                          roof_hom_dimension)
from tricat.core import Mor
from tricat.errors import NotExact
from tricat.linalg import Field, Matrix
from tricat.toolkit import check_vanishing, verify_axioms

F3 = Field.parse("Fp:3")
F5 = Field.parse("Fp:5")
QQ = Field.parse("Q")


def mat(field, rows, r=None, c=None):
    return Matrix.from_rows(field, rows, rows=r, cols=c)


@pytest.fixture
def ch():
    return ChainHomotopy(QQ)


def point(ch, n=0, dim=1):
    return ch.obj(concentrated(ch.field, n, dim))


def contractible(ch, lo=0):
    # 0 → K = K → 0 in degrees lo+1, lo
    return ch.obj(make_complex(ch.field, lo, [1, 1], lambda n: Matrix.identity(ch.field, 1)))


def inclusion_map(ch, a_dim, b_dim, rows):
    a, b = point(ch, 0, a_dim), point(ch, 0, b_dim)
    return ch.chain_map(a, b, lambda n: mat(ch.field, rows, b_dim, a_dim))


def test_make_complex_rejects_nonzero_square():
    one = Matrix.identity(QQ, 1)
    with pytest.raises(ValueError):
        make_complex(QQ, 0, [1, 1, 1], lambda n: one)


def test_zero_dims_are_trimmed():
    c = make_complex(QQ, -2, [0, 0, 2, 0], lambda n: None)
    assert (c.lo, c.dims) == (0, (2,))
    assert make_complex(QQ, 5, [0, 0], lambda n: None).is_zero()


def test_homotopic_equal_maps(ch):
    x = contractible(ch)
    s = ch.homotopic(ch.identity(x), ch.identity(x))
    assert s is not None and all(m.is_zero() for m in s)


def test_identity_of_contractible_is_nullhomotopic(ch):
    x = contractible(ch)
    s = ch.homotopic(ch.identity(x), ch.zero(x, x))
    assert s is not None
    # d s + s d recovers the identity
    c = ch.cx(x)
    for n in c.degrees:
        i = n - c.lo
        sn = s[i]
        prev = s[i - 1] if i >= 1 else Matrix.zeros(QQ, c.dim(n), c.dim(n - 1))
        assert c.d(n + 1) @ sn + prev @ c.d(n) == Matrix.identity(QQ, c.dim(n))
    assert ch.is_zero_obj(x)


def test_identity_on_point_is_not_nullhomotopic(ch):
    x = point(ch)
    assert ch.homotopic(ch.identity(x), ch.zero(x, x)) is None
    assert ch.hom_space(x, x).dim == 1


def test_shift_moves_degrees_and_negates():
    c = make_complex(QQ, 0, [1, 2], lambda n: mat(QQ, [[1, 2]]))
    s = ChainHomotopy(QQ).shift(c)
    assert (s.lo, s.dims) == (1, (1, 2))
    assert s.d(2) == mat(QQ, [[-1, -2]])
    assert ChainHomotopy(QQ).shift(s, -1) == c


def test_cone_of_identity_is_contractible(ch):
    x = ch.obj(make_complex(QQ, 0, [1, 2], lambda n: mat(QQ, [[1, 2]])))
    t = ch.cone(ch.identity(x))
    z = t.z
    assert ch.homotopic(ch.identity(z), ch.zero(z, z)) is not None


def test_cone_of_inclusion_of_points(ch):
    f = inclusion_map(ch, 1, 2, [[1], [0]])
    c = ch.cx(ch.cone(f).z)
    # 0 → A → B → 0 in degrees 1, 0 with differential -f
    assert (c.lo, c.dims) == (0, (2, 1))
    assert c.d(1) == mat(QQ, [[-1], [0]])


def test_cone_differential_squares_to_zero_on_random_maps():
    ch = ChainHomotopy(F5, max_len=3)
    rng = random.Random(3)
    for _ in range(20):
        x = ch.obj(ch.random_complex(rng, 3, 3))
        y = ch.obj(ch.random_complex(rng, 3, 3))
        f = ch.sample_mor(rng, x, y)
        assert ch.is_chain_map(f)
        c = ch.cx(ch.cone(f).z)
        for n in range(c.lo + 2, c.hi + 1):
            assert (c.d(n - 1) @ c.d(n)).is_zero()


def test_homology_examples(ch):
    assert ch.homology(contractible(ch), 0)[0] == 0
    assert ch.homology(contractible(ch), 1)[0] == 0
    dim, basis = ch.homology(point(ch), 0)
    assert dim == 1 and basis == Matrix.identity(QQ, 1)


def test_homology_of_two_term_complex(ch):
    # K² → K with differential [1 1]: H_1 = K, H_0 = 0
    x = ch.obj(make_complex(QQ, 0, [1, 2], lambda n: mat(QQ, [[1, 1]])))
    assert ch.homology_dims(x) == {1: 1}
    _, basis = ch.homology(x, 1)
    assert (ch.cx(x).d(1) @ basis).is_zero()


def test_ses_comparison_is_quasi_iso(ch):
    a = inclusion_map(ch, 1, 2, [[1], [0]])
    b = ch.chain_map(a.target, point(ch), lambda n: mat(QQ, [[0, 1]]))
    t, q = ch.ses_to_triangle(a, b)
    c = ch.cx(t.z)
    assert (c.lo, c.dims) == (0, (2, 1))
    assert ch.is_quasi_iso(q)
    # over a field the comparison is even a homotopy equivalence
    assert ch.is_iso(q)


def test_split_ses_comparison_is_homotopy_equivalence(ch):
    rng = random.Random(7)
    inst = ChainHomotopy(F5)
    a = inst.obj(inst.random_complex(rng, 3, 2))
    c = inst.obj(inst.random_complex(rng, 3, 2))
    w = inst.biproduct(a, c)
    _, q = inst.ses_to_triangle(w.i1, w.p2)
    assert inst.is_quasi_iso(q)
    assert inst.is_iso(q)


def test_ses_with_zero_left_term(ch):
    c = ch.obj(make_complex(QQ, 0, [1, 2], lambda n: mat(QQ, [[1, 1]])))
    a = ch.zero(ch.zero_object(), c)
    _, q = ch.ses_to_triangle(a, ch.identity(c))
    assert ch.cone(a).z == c
    assert ch.mor_equal(q, ch.identity(c))


def test_ses_not_exact(ch):
    a = inclusion_map(ch, 1, 2, [[1], [0]])
    b = ch.chain_map(a.target, point(ch), lambda n: mat(QQ, [[1, 0]]))
    with pytest.raises(NotExact):
        ch.ses_to_triangle(a, b)


def test_derived_hom_examples(ch):
    x = point(ch)
    assert ch.derived_hom(x, x) == {0: 1}
    assert ch.derived_hom(contractible(ch), x) == {}
    assert ch.derived_hom(x, point(ch, 2, 3)) == {2: 3}


def test_derived_map_is_action_on_homology(ch):
    f = inclusion_map(ch, 1, 2, [[1], [0]])
    assert ch.derived_map(f) == {0: mat(QQ, [[1], [0]])}


def test_roof_oracle_small_cases():
    inst = ChainHomotopy(F3)
    k = point(inst)
    assert roof_hom_dimension(inst, k, k, 0) == 1
    assert roof_hom_dimension(inst, k, k, 1) == 0
    assert roof_hom_dimension(inst, contractible(inst), k, 0) == 0
    x = inst.obj(make_complex(F3, 0, [1, 2], lambda n: mat(F3, [[1, 1]])))
    for k_deg in (-1, 0, 1):
        assert roof_hom_dimension(inst, x, x, k_deg) == inst.derived_hom(x, x).get(k_deg, 0)


def test_roof_oracle_rejects_rationals(ch):
    with pytest.raises(ValueError):
        roof_hom_dimension(ch, point(ch), point(ch), 0)


def test_obj_iso_via_homology(ch):
    x = ch.obj(make_complex(QQ, 0, [1, 2], lambda n: mat(QQ, [[1, 1]])))
    u = ch.obj_iso(x, point(ch, 1))
    assert u is not None and ch.is_iso(u)
    assert ch.obj_iso(x, point(ch, 0)) is None


def test_complex_json_roundtrip():
    c = make_complex(QQ, -1, [1, 2], lambda n: mat(QQ, [[1, -1]]))
    doc = json.loads(json.dumps(complex_to_json(c)))
    assert doc["lo"] == -1 and doc["hi"] == 0 and doc["dims"] == [1, 2]
    assert complex_from_json(doc, QQ) == c
    with pytest.raises(ValueError):
        complex_from_json({"lo": 0, "hi": 3, "dims": [1], "differentials": []}, QQ)


def test_chain_map_json_roundtrip(ch):
    f = inclusion_map(ch, 1, 2, [[1], [3]])
    g = ch.chain_map_from_json(json.loads(json.dumps(ch.chain_map_to_json(f))))
    assert g == f


def test_non_chain_map_rejected(ch):
    x = contractible(ch)
    y = point(ch)
    with pytest.raises(ValueError):
        ch.chain_map(x, y, lambda n: Matrix.identity(QQ, 1) if n == 0 else Matrix.zeros(QQ, 0, 1))


# -- properties ------------------------------------------------------------------

seeds = st.integers(min_value=0, max_value=10**6)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_homotopy_is_transitive_and_compatible(seed):
    inst = ChainHomotopy(F5, max_len=3)
    rng = random.Random(seed)
    x, y, z = (inst.sample_object(rng, 2) for _ in range(3))
    space = inst.hom_space(x, y)
    b = space.quotient.boundary

    def nullhomotopic():
        if b.cols == 0:
            return inst.zero(x, y)
        c = Matrix.from_rows(F5, [[F5.random(rng)] for _ in range(b.cols)], rows=b.cols, cols=1)
        return Mor(x, y, space._unvec(b @ c))

    f = inst.sample_mor(rng, x, y)
    f2 = inst.add(f, nullhomotopic())
    f3 = inst.add(f2, nullhomotopic())
    assert inst.homotopic(f, f2) is not None
    assert inst.homotopic(f2, f) is not None
    assert inst.homotopic(f, f3) is not None
    g = inst.sample_mor(rng, y, z)
    assert inst.homotopic(inst.compose(g, f), inst.compose(g, f3)) is not None
    w = inst.sample_mor(rng, inst.sample_object(rng, 2), x)
    assert inst.homotopic(inst.compose(f, w), inst.compose(f3, w)) is not None


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_cone_of_shift_is_shift_of_cone(seed):
    inst = ChainHomotopy(F5, max_len=3)
    rng = random.Random(seed)
    x, y = inst.sample_object(rng, 3), inst.sample_object(rng, 3)
    f = inst.sample_mor(rng, x, y)
    a = inst.cone(inst.suspend_mor(f)).z
    b = inst.suspend_obj(inst.cone(f).z)
    u = inst.obj_iso(a, b)
    assert u is not None and inst.is_iso(u)


def test_long_exact_sequence_on_cones():
    inst = ChainHomotopy(F5)
    rng = random.Random(11)
    for _ in range(50):
        x, y = inst.sample_object(rng, 3), inst.sample_object(rng, 3)
        assert all(ok for _, _, ok in inst.long_exact_sequence(inst.cone(inst.sample_mor(rng, x, y))))


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_quasi_isos_satisfy_two_out_of_three(seed):
    inst = ChainHomotopy(F5, max_len=3)
    rng = random.Random(seed)
    x = inst.sample_object(rng, 3)
    h, i, r = inst.normal_form(x)
    # mix homotopy equivalences with random maps so every pattern can occur
    f = inst.compose(r, inst.sample_iso(rng, x)) if rng.random() < 0.7 else inst.sample_mor(rng, x, h)
    g = inst.compose(inst.sample_iso(rng, x), i) if rng.random() < 0.7 else inst.sample_mor(rng, h, x)
    q = [inst.is_quasi_iso(m) for m in (f, g, inst.compose(g, f))]
    assert sum(q) != 2


def test_quasi_iso_equals_homotopy_iso():
    # over a field every quasi-isomorphism is a homotopy equivalence
    inst = ChainHomotopy(F5, max_len=3)
    rng = random.Random(5)
    for _ in range(30):
        x, y = inst.sample_object(rng, 2), inst.sample_object(rng, 2)
        f = inst.sample_mor(rng, x, y)
        assert inst.is_quasi_iso(f) == inst.is_iso(f)


def test_verify_axioms_on_chain_instance():
    inst = ChainHomotopy(F5)
    report = verify_axioms(inst, seed=2, samples=12, max_dim=3)
    assert report.ok, report.failures()


def test_dropping_cone_term_is_detected():
    class Broken(ChainHomotopy):
        def _cone(self, f):
            return self._cone_triangle(f, with_f=False)

    report = verify_axioms(Broken(F5), seed=0, samples=12, max_dim=3)
    assert not report.ok
    assert any(c.anchor == "vanishing gf=0" and not c.passed for c in report.checks)


def test_every_cone_passes_vanishing():
    inst = ChainHomotopy(F5)
    rng = random.Random(9)
    for _ in range(10):
        x, y = inst.sample_object(rng, 3), inst.sample_object(rng, 3)
        assert check_vanishing(inst, inst.cone(inst.sample_mor(rng, x, y))).ok
