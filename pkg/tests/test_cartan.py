from __future__ import annotations

import pytest

from heartlab.cartan import (
    ConfigurationError,
    DynkinType,
    alpha_J,
    build_cartan,
    connected_components,
    finite_roots,
    highest_root,
    sub_highest_coeffs,
)

ALL_TYPES = ["A1", "A2", "A3", "A4", "A5", "D4", "D5", "E6", "E7", "E8"]


def positive_roots_by_addition(cd):
    """Independent oracle: positive roots of the finite part by upward addition.

    In a simply-laced finite system, beta + alpha_i is a root iff the coroot
    pairing <alpha_i^, beta> is negative (root strings have length <= 2).
    """
    simples = {
        tuple(1 if j == i else 0 for j in cd.vertices): i for i in cd.finite_vertices
    }
    roots = set(simples)
    frontier = list(roots)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in cd.finite_vertices:
                if beta == tuple(1 if j == i else 0 for j in cd.vertices):
                    continue
                if cd.coroot_pairing(i, beta) < 0:
                    cand = tuple(b + (1 if j == i else 0) for j, b in enumerate(beta))
                    if cand not in roots:
                        roots.add(cand)
                        nxt.append(cand)
        frontier = nxt
    return roots


def test_parse_and_validation():
    assert DynkinType.parse("a2") == DynkinType("A", 2)
    assert str(DynkinType.parse("D4")) == "D4"
    with pytest.raises(ConfigurationError):
        DynkinType("D", 3)
    with pytest.raises(ConfigurationError):
        DynkinType("E", 5)
    with pytest.raises(ConfigurationError):
        DynkinType("B", 2)
    with pytest.raises(ConfigurationError):
        DynkinType.parse("X9")


def test_a2_cartan_is_cycle():
    cd = build_cartan("A2")
    assert cd.cartan == ((2, -1, -1), (-1, 2, -1), (-1, -1, 2))


def test_a1_doubled_edge():
    cd = build_cartan("A1")
    assert cd.cartan == ((2, -2), (-2, 2))
    assert cd.marks == (1, 1)
    assert cd.coxeter_number == 2


def test_marks_and_coxeter_numbers():
    assert build_cartan("A2").marks == (1, 1, 1)
    assert build_cartan("A2").coxeter_number == 3
    d4 = build_cartan("D4")
    assert d4.marks == (1, 1, 2, 1, 1)
    assert d4.coxeter_number == 6
    assert build_cartan("E8").coxeter_number == 30


def test_highest_root_against_addition_oracle():
    for name in ALL_TYPES:
        cd = build_cartan(name)
        oracle = positive_roots_by_addition(cd)
        top = max(oracle, key=lambda v: (sum(v), v))
        assert highest_root(cd.dynkin) == top
        # also check that the pre-enumerated root set matches up to sign
        assert finite_roots(cd) == oracle | {tuple(-c for c in v) for v in oracle}


def test_highest_root_examples():
    assert highest_root("A1") == (0, 1)
    assert highest_root("A2") == (0, 1, 1)
    assert highest_root("D4") == (0, 1, 2, 1, 1)


def test_cartan_kernel_all_types():
    for name in ALL_TYPES:
        cd = build_cartan(name)
        for i in cd.vertices:
            assert sum(cd.cartan[i][j] * cd.marks[j] for j in cd.vertices) == 0
        assert cd.coxeter_number == sum(cd.marks)


def test_connected_components():
    a3 = build_cartan("A3")
    assert connected_components(a3, {1, 3}) == ((1,), (3,))
    assert connected_components(a3, {1, 2}) == ((1, 2),)
    assert connected_components(a3, set()) == ()
    d4 = build_cartan("D4")
    assert connected_components(d4, {1, 3, 4}) == ((1,), (3,), (4,))


def test_alpha_J():
    a2 = build_cartan("A2")
    assert alpha_J(a2, {1}) == (1, 0, 1)  # delta - alpha_1 = alpha_0 + alpha_2
    a3 = build_cartan("A3")
    assert alpha_J(a3, {1, 2}) == (1, 0, 0, 1)  # delta - alpha_1 - alpha_2
    for name in ALL_TYPES:
        cd = build_cartan(name)
        expected_alpha0 = tuple(1 if i == 0 else 0 for i in cd.vertices)
        assert alpha_J(cd, set(cd.finite_vertices)) == expected_alpha0
    with pytest.raises(ValueError):
        alpha_J(a3, {1, 3})
    with pytest.raises(ValueError):
        alpha_J(a3, set())


def test_sub_highest_coeffs():
    a3 = build_cartan("A3")
    assert sub_highest_coeffs(a3, {1, 2}) == {1: 1, 2: 1}
    d4 = build_cartan("D4")
    assert sub_highest_coeffs(d4, {1, 2, 3}) == {1: 1, 2: 1, 3: 1}


def test_kappa_is_diagram_automorphism():
    for name in ALL_TYPES:
        cd = build_cartan(name)
        k = cd.kappa
        assert k[0] == 0
        for i in cd.finite_vertices:
            assert k[k[i]] == i
            for j in cd.finite_vertices:
                assert cd.cartan[k[i]][k[j]] == cd.cartan[i][j]


def test_kappa_known_forms():
    for n in (1, 2, 3, 4, 5):
        cd = build_cartan(f"A{n}")
        assert all(cd.kappa[i] == n + 1 - i for i in cd.finite_vertices)
    for name in ("D4", "E7", "E8"):
        cd = build_cartan(name)
        assert all(cd.kappa[i] == i for i in cd.finite_vertices)
    d5 = build_cartan("D5")
    assert d5.kappa[4] == 5 and d5.kappa[5] == 4 and d5.kappa[1] == 1
    e6 = build_cartan("E6")
    assert e6.kappa[1] == 6 and e6.kappa[3] == 5 and e6.kappa[2] == 2 and e6.kappa[4] == 4


def test_diagram_automorphisms():
    assert len(build_cartan("A1").diagram_automorphisms) == 2
    assert len(build_cartan("A2").diagram_automorphisms) == 6  # symmetries of a triangle
    assert len(build_cartan("D4").diagram_automorphisms) == 24  # permute the four leaves
    for perm in build_cartan("A3").diagram_automorphisms:
        cd = build_cartan("A3")
        for i, j in cd.edges:
            assert cd.adjacent(perm[i], perm[j])
