from __future__ import annotations

from fractions import Fraction
from itertools import product

from heartlab.cartan import build_cartan
from heartlab.lattices import (
    canonical_pairing,
    cartan_pairing,
    class_of_dim_vector,
    classify_root,
    coweight_from_json,
    coweight_to_json,
    delta,
    embed_finite_coweight,
    finite_fundamental_coweight,
    fundamental_coweight,
    is_piJ_ample,
    rho_check,
    root_from_json,
    root_to_json,
    simple_class,
    skyscraper_class,
)


def quadratic_form(cd, v):
    """Independent classification oracle: v^T A v under the symmetric Cartan form."""
    return sum(v[i] * cd.cartan[i][j] * v[j] for i in cd.vertices for j in cd.vertices)


def test_cartan_pairing_examples():
    a2 = build_cartan("A2")
    alpha1 = (0, 1, 0)
    assert cartan_pairing(a2, 1, alpha1) == 2
    assert cartan_pairing(a2, 0, alpha1) == -1
    for name in ("A1", "A2", "D4"):
        cd = build_cartan(name)
        for i in cd.vertices:
            assert cartan_pairing(cd, i, delta(cd)) == 0


def test_canonical_pairing_examples():
    for name in ("A2", "A3", "D4"):
        cd = build_cartan(name)
        for i in cd.vertices:
            for j in cd.vertices:
                alpha_j = tuple(1 if k == j else 0 for k in cd.vertices)
                expected = Fraction(1 if i == j else 0)
                assert canonical_pairing(fundamental_coweight(cd, i), alpha_j) == expected
        assert canonical_pairing(rho_check(cd), delta(cd)) == cd.coxeter_number
        for i in cd.finite_vertices:
            lam = finite_fundamental_coweight(cd, i)
            assert canonical_pairing(embed_finite_coweight(cd, lam), delta(cd)) == 0


def test_classify_root_examples():
    a2 = build_cartan("A2")
    d = delta(a2)
    alpha1 = (0, 1, 0)
    real = classify_root(a2, tuple(a + b for a, b in zip(alpha1, d)))
    assert real.is_real and real.finite_part == alpha1 and real.level == 1
    imag = classify_root(a2, tuple(2 * c for c in d))
    assert imag.is_imaginary and imag.level == 2
    assert classify_root(a2, (0, 2, 0)).kind == "not_root"
    assert classify_root(a2, (0, 0, 0)).kind == "not_root"


def test_classify_root_window_against_quadratic_form():
    for name in ("A1", "A2"):
        cd = build_cartan(name)
        bound = 3 if name == "A2" else 6
        for v in product(range(-bound, bound + 1), repeat=cd.n):
            got = classify_root(cd, v)
            q = quadratic_form(cd, v)
            if all(c == 0 for c in v):
                assert got.kind == "not_root"
            elif q == 2:
                assert got.is_real
            elif q == 0:
                level = v[0]
                if v == tuple(level * m for m in cd.marks):
                    assert got.is_imaginary
                else:
                    assert got.kind == "not_root"
            else:
                assert got.kind == "not_root"


def test_simple_class_examples():
    a2 = build_cartan("A2")
    assert simple_class(a2, 0) == (1, 2, 2)  # 2*delta - alpha_0
    assert simple_class(a2, 1) == (0, 0, -1)  # kappa swaps 1 and 2
    assert simple_class(a2, 2) == (0, -1, 0)
    assert skyscraper_class(a2) == delta(a2)


def test_simple_class_composition_series_of_point():
    for name in ("A1", "A2", "A3", "D4"):
        cd = build_cartan(name)
        multiplicities = [0] * cd.n
        multiplicities[0] = 1
        for i in cd.finite_vertices:
            multiplicities[i] = cd.marks[cd.kappa[i]]
        assert class_of_dim_vector(cd, multiplicities) == delta(cd)


def test_embed_lands_in_level_zero():
    for name in ("A2", "D4"):
        cd = build_cartan(name)
        for i in cd.finite_vertices:
            emb = embed_finite_coweight(cd, finite_fundamental_coweight(cd, i))
            assert canonical_pairing(emb, delta(cd)) == 0
            assert emb[0] == -cd.marks[i]


def test_is_piJ_ample():
    a2 = build_cartan("A2")
    lam1 = finite_fundamental_coweight(a2, 1)
    assert is_piJ_ample(a2, lam1, {1})
    assert not is_piJ_ample(a2, lam1, {1, 2})
    assert not is_piJ_ample(a2, lam1, {2})
    total = tuple(Fraction(1) for _ in a2.finite_vertices)
    assert is_piJ_ample(a2, total, set(a2.finite_vertices))
    zero = tuple(Fraction(0) for _ in a2.finite_vertices)
    assert is_piJ_ample(a2, zero, set())


def test_ample_face_is_unique():
    a3 = build_cartan("A3")
    subsets = [
        tuple(s)
        for s in [
            (),
            (1,),
            (2,),
            (3,),
            (1, 2),
            (1, 3),
            (2, 3),
            (1, 2, 3),
        ]
    ]
    for coords in product(range(0, 3), repeat=3):
        if all(c == 0 for c in coords):
            continue
        lam = tuple(Fraction(c) for c in coords)
        hits = [J for J in subsets if is_piJ_ample(a3, lam, J)]
        assert len(hits) == 1


def test_json_round_trips():
    a2 = build_cartan("A2")
    v = (1, -2, 0)
    assert root_from_json(root_to_json(a2, v)) == v
    theta = (Fraction(1, 2), Fraction(-3), Fraction(0))
    obj = coweight_to_json(theta)
    assert obj["basis"] == "omega"
    assert coweight_from_json(obj) == theta
