from __future__ import annotations

from fractions import Fraction

import pytest

from heartlab.cartan import build_cartan
from heartlab.borel import (
    AffineRealRoot,
    character_n_ell_J,
    check_chain_and_union,
    in_Delta_J,
    in_Delta_J_k,
    pbw_character,
    positivity_axioms,
    union_witness,
    window_roots,
)
from heartlab.lattices import (
    embed_finite_coweight,
    finite_coweight,
    vadd,
    vscale,
)
from heartlab.weyl import shear_dual

A2 = build_cartan("A2")


def lam_for(cd, J):
    return finite_coweight([1 if i in J else 0 for i in cd.finite_vertices])


def alpha_vec(cd, i):
    return tuple(1 if j == i else 0 for j in cd.vertices)


def all_nonempty_subsets(items):
    items = list(items)
    out = [()]
    for x in items:
        out += [s + (x,) for s in out]
    return [s for s in out if s]


def test_membership_examples():
    J = {1}
    lam = lam_for(A2, J)
    minus_alpha2 = AffineRealRoot(tuple(-c for c in alpha_vec(A2, 2)), 0)
    for k in range(4):
        assert in_Delta_J_k(A2, minus_alpha2, J, k, lam)
    alpha1 = AffineRealRoot(alpha_vec(A2, 1), 0)
    assert not in_Delta_J_k(A2, alpha1, J, 0, lam)
    assert in_Delta_J_k(A2, alpha1, J, 1, lam)  # 0 < 2 * (lam, alpha_1) = 2
    minus_delta = AffineRealRoot(tuple(0 for _ in A2.vertices), -1)
    for k in range(3):
        assert in_Delta_J_k(A2, minus_delta, J, k, lam)


def test_union_membership_examples():
    J = {1}
    lam = lam_for(A2, J)
    assert in_Delta_J(A2, AffineRealRoot(alpha_vec(A2, 1), 5), J, lam)
    assert not in_Delta_J(A2, AffineRealRoot(alpha_vec(A2, 2), 5), J, lam)
    assert in_Delta_J(A2, AffineRealRoot(tuple(0 for _ in A2.vertices), -3), J, lam)


def test_full_J_specialization():
    # empty complement: positive roots at every level plus the negative
    # imaginary line, and nothing else
    J = set(A2.finite_vertices)
    lam = lam_for(A2, J)
    for beta in window_roots(A2, 3):
        if not any(beta.alpha):
            expected = beta.n < 0
        else:
            expected = any(c > 0 for c in beta.alpha)
        assert in_Delta_J(A2, beta, J, lam) == expected


def test_requires_ample():
    with pytest.raises(ValueError):
        in_Delta_J(A2, AffineRealRoot(alpha_vec(A2, 1), 0), {2}, lam_for(A2, {1}))


def test_shear_translate_identity():
    """beta is in the k-th set iff its shear translate is in the base one."""
    for J in all_nonempty_subsets(A2.finite_vertices):
        lam = lam_for(A2, J)
        emb = embed_finite_coweight(A2, lam)
        for beta in window_roots(A2, 4):
            pairing = sum(e * a for e, a in zip(emb, beta.alpha))
            for k in (1, 2):
                shiftd = int(2 * k * pairing)
                moved = AffineRealRoot(beta.alpha, beta.n - shiftd)
                if moved.alpha == tuple(0 for _ in A2.vertices) and moved.n == 0:
                    continue
                assert in_Delta_J_k(A2, beta, J, k, lam) == in_Delta_J_k(
                    A2, moved, J, 0, lam
                )


def test_chain_and_union():
    for name in ("A1", "A2", "A3"):
        cd = build_cartan(name)
        for J in all_nonempty_subsets(cd.finite_vertices):
            lam = lam_for(cd, J)
            report = check_chain_and_union(cd, J, lam, k_max=4, window=6)
            assert report.ok, report.failures
            for beta, k in report.witnesses.items():
                assert in_Delta_J_k(cd, beta, J, k, lam)


def test_chain_k_zero_vacuous():
    report = check_chain_and_union(A2, {1}, lam_for(A2, {1}), k_max=0, window=4)
    assert report.ok


def test_positivity_axioms():
    for name in ("A1", "A2", "A3"):
        cd = build_cartan(name)
        for J in all_nonempty_subsets(cd.finite_vertices):
            report = positivity_axioms(cd, J, lam_for(cd, J), window=6)
            assert report.ok, report.failures[:5]


def test_character_tables_agree():
    for name in ("A1", "A2", "A3"):
        cd = build_cartan(name)
        for J in all_nonempty_subsets(cd.finite_vertices):
            a, b = character_n_ell_J(cd, J, lam_for(cd, J), window=4, t_max=2)
            assert a == b


def test_character_values():
    J = {1}
    lam = lam_for(A2, J)
    a, b = character_n_ell_J(A2, J, lam, window=4, t_max=2)
    w = vadd(alpha_vec(A2, 1), vscale(2, A2.marks))
    for t in range(3):
        assert a.dim(w, t) == 1
    minus_two_delta = vscale(-2, A2.marks)
    assert a.dim(minus_two_delta, 0) == 2       # Cartan line only
    assert a.dim(minus_two_delta, 1) == 3       # plus one central coordinate
    w_bad = vadd(alpha_vec(A2, 2), vscale(1, A2.marks))
    assert a.dim(w_bad, 0) == 0


def test_character_csv_and_json():
    a, _ = character_n_ell_J(A2, {1}, lam_for(A2, {1}), window=1, t_max=0)
    rows = a.rows()
    assert rows and all(len(r) == 3 for r in rows)
    assert a.to_csv().splitlines()[0] == "weight,t,dim"
    assert all(set(item) == {"weight", "t", "dim"} for item in a.to_json())


def test_pbw_degree_one_is_lie_character():
    for name in ("A1", "A2"):
        cd = build_cartan(name)
        for J in all_nonempty_subsets(cd.finite_vertices):
            lam = lam_for(cd, J)
            pbw = pbw_character(cd, J, lam, window=2, t_max=1, max_degree=2)
            lie, _ = character_n_ell_J(cd, J, lam, window=2, t_max=1)
            assert pbw.table(1) == lie


def test_pbw_unit_and_degree_counts():
    J = {1}
    lam = lam_for(A2, J)
    pbw = pbw_character(A2, J, lam, window=2, t_max=1, max_degree=3)
    zero = tuple(0 for _ in A2.vertices)
    assert pbw.table(1).dim(zero, 0) == 0  # no weight-zero basis vectors
    minus_delta = vscale(-1, A2.marks)
    # degree-1: the Cartan line gives rank many; degree-2: cancelling pairs
    assert pbw.table(1).dim(minus_delta, 0) == 2
    by_hand_pairs = 0
    slots = [
        (beta.vector(A2), 1 if any(beta.alpha) else A2.e)
        for beta in window_roots(A2, 2)
        if in_Delta_J(A2, beta, J, lam)
    ]
    for i, (w1, d1) in enumerate(slots):
        for j, (w2, d2) in enumerate(slots):
            if j < i:
                continue
            if vadd(w1, w2) == minus_delta:
                by_hand_pairs += d1 * d2 if i != j else d1 * (d1 + 1) // 2
    assert pbw.table(2).dim(minus_delta, 0) == by_hand_pairs


def test_pbw_monotone_along_chain():
    J = {1}
    lam = lam_for(A2, J)
    small = pbw_character(A2, J, lam, window=2, t_max=1, k=0, max_degree=2)
    large = pbw_character(A2, J, lam, window=2, t_max=1, k=1, max_degree=2)
    for degree in (1, 2):
        s, l = small.table(degree), large.table(degree)
        for key, value in s.entries.items():
            assert l.entries.get(key, 0) >= value


def test_pbw_work_guard():
    with pytest.raises(RuntimeError):
        pbw_character(A2, {1}, lam_for(A2, {1}), window=6, t_max=4, max_degree=6, work_cap=10)
