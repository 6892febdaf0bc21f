from __future__ import annotations

import random
from fractions import Fraction

import pytest

from heartlab.cartan import build_cartan
from heartlab.chambers import in_chamber, normalize_to_DJ
from heartlab.lattices import (
    canonical_pairing,
    delta,
    embed_finite_coweight,
    finite_fundamental_coweight,
    rho_check,
    simple_class,
    vadd,
    vneg,
    vscale,
)
from heartlab.stability import (
    DOWN,
    UP,
    ArcIndex,
    CentralCharge,
    arc_collinearity_error,
    arc_direction,
    dim_of_class,
    in_half_plane,
    in_hreg,
    is_stability_function,
    normalize_stability,
    slope,
    stability_generator_test,
    t_index,
    theta_zero,
    verify_slicing,
)
from heartlab.weyl import dual_action, from_word


def rand_coweight(rng, cd, span=5):
    return tuple(Fraction(rng.randint(-span, span)) for _ in cd.vertices)


def alpha(cd, i):
    return tuple(1 if j == i else 0 for j in cd.vertices)


def test_in_hreg_examples():
    a2 = build_cartan("A2")
    lam1 = finite_fundamental_coweight(a2, 1)
    Z = CentralCharge(vneg(embed_finite_coweight(a2, lam1)), theta_zero(a2))
    assert in_hreg(a2, Z)
    Z_degenerate = CentralCharge(embed_finite_coweight(a2, lam1), tuple(Fraction(0) for _ in a2.vertices))
    assert not in_hreg(a2, Z_degenerate)  # kills the class alpha_2
    zero = CentralCharge(tuple(Fraction(0) for _ in a2.vertices), tuple(Fraction(0) for _ in a2.vertices))
    assert not in_hreg(a2, zero)


def test_in_hreg_catches_shifted_roots():
    a2 = build_cartan("A2")
    # theta pairs to -1 on alpha_1 and 1 on delta, omega zero: kills alpha_1 + delta
    theta = (Fraction(1), Fraction(-1), Fraction(1))
    assert canonical_pairing(theta, delta(a2)) == 1
    Z = CentralCharge(theta, tuple(Fraction(0) for _ in a2.vertices))
    assert not in_hreg(a2, Z)


def test_is_stability_function_perverse():
    a2 = build_cartan("A2")
    J = {1}
    omega = embed_finite_coweight(a2, finite_fundamental_coweight(a2, 1))
    _, theta = normalize_to_DJ(a2, rho_check(a2), J)
    Z = CentralCharge(theta, omega)
    assert is_stability_function(a2, Z, J, "perverse")
    assert is_stability_function(a2, Z, J, "reversed")
    assert stability_generator_test(a2, Z, J)
    # pi-ample omega but theta with non-positive level fails
    bad = CentralCharge(vneg(theta), omega)
    assert not is_stability_function(a2, bad, J, "perverse")
    assert not stability_generator_test(a2, bad, J)


def test_is_stability_function_nilp():
    a2 = build_cartan("A2")
    Z = CentralCharge(vneg(theta_zero(a2)), theta_zero(a2))
    assert is_stability_function(a2, Z, (), "nilp")
    for i in a2.vertices:
        re, im = Z.value(simple_class(a2, i))
        assert im > 0
    with pytest.raises(ValueError):
        is_stability_function(a2, Z, {1}, "nilp")
    with pytest.raises(ValueError):
        is_stability_function(a2, Z, (), "perverse")


def test_classifier_agrees_with_generator_oracle():
    rng = random.Random(17)
    for name in ("A2", "A3"):
        cd = build_cartan(name)
        subsets = [()]
        for i in cd.finite_vertices:
            subsets += [s + (i,) for s in subsets]
        count = 0
        for J in subsets:
            if not J:
                continue
            for _ in range(400):
                style = rng.randint(0, 2)
                if style == 0:
                    omega = rand_coweight(rng, cd)
                    theta = rand_coweight(rng, cd)
                elif style == 1:
                    # omega exactly on the J-face, theta anywhere
                    lam = tuple(
                        Fraction(rng.randint(0, 2)) if i in J else Fraction(0)
                        for i in cd.finite_vertices
                    )
                    omega = embed_finite_coweight(cd, lam)
                    theta = rand_coweight(rng, cd)
                else:
                    # crafted boundary pair
                    lam = tuple(
                        Fraction(rng.randint(1, 2)) if i in J else Fraction(0)
                        for i in cd.finite_vertices
                    )
                    omega = embed_finite_coweight(cd, lam)
                    seed = rand_coweight(rng, cd)
                    if canonical_pairing(seed, delta(cd)) <= 0:
                        seed = rho_check(cd)
                    _, theta = normalize_to_DJ(cd, seed, J)
                Z = CentralCharge(theta, omega)
                assert is_stability_function(cd, Z, J, "perverse") == stability_generator_test(cd, Z, J)
                count += 1
        assert count >= 1000


def test_normalize_stability_trivial_case():
    a2 = build_cartan("A2")
    J = (1,)
    omega = embed_finite_coweight(a2, finite_fundamental_coweight(a2, 1))
    _, theta = normalize_to_DJ(a2, rho_check(a2), J)
    Z = CentralCharge(theta, omega)
    assert in_hreg(a2, Z)
    result = normalize_stability(a2, Z, UP)
    assert result.word == () and result.J == J and result.shift == 0
    assert result.flavor == "perverse"
    assert result.revalidate(a2, Z)
    down = normalize_stability(a2, Z, DOWN)
    assert down.flavor == "reversed" and down.J == J
    assert down.revalidate(a2, Z)


def test_normalize_stability_generic_and_orbit_invariance():
    rng = random.Random(23)
    for name in ("A2", "A3"):
        cd = build_cartan(name)
        done = 0
        while done < 60:
            Z = CentralCharge(rand_coweight(rng, cd), rand_coweight(rng, cd))
            if not in_hreg(cd, Z):
                continue
            done += 1
            for interval in (UP, DOWN):
                result = normalize_stability(cd, Z, interval)
                assert result.revalidate(cd, Z)
                word = [rng.choice(cd.vertices) for _ in range(rng.randint(0, 5))]
                w = from_word(cd, word)
                moved = Z.transform(w)
                again = normalize_stability(cd, moved, interval)
                assert (again.J, again.flavor) == (result.J, result.flavor)


def test_normalize_stability_level_zero_charges():
    rng = random.Random(29)
    cd = build_cartan("A2")
    done = 0
    while done < 40:
        lam = tuple(Fraction(rng.randint(-2, 2)) for _ in cd.finite_vertices)
        omega = embed_finite_coweight(cd, lam)
        Z = CentralCharge(rand_coweight(rng, cd), omega)
        if not in_hreg(cd, Z):
            continue
        done += 1
        for interval in (UP, DOWN):
            result = normalize_stability(cd, Z, interval)
            assert result.revalidate(cd, Z)
            if any(c != 0 for c in omega):
                assert result.J
                assert result.flavor == ("perverse" if interval == UP else "reversed")
            else:
                assert result.flavor == "nilp"


def test_normalize_requires_regularity():
    a2 = build_cartan("A2")
    zero = tuple(Fraction(0) for _ in a2.vertices)
    with pytest.raises(ValueError):
        normalize_stability(a2, CentralCharge(zero, zero), UP)


def test_slope_examples():
    a2 = build_cartan("A2")
    lam = finite_fundamental_coweight(a2, 1)
    emb = embed_finite_coweight(a2, lam)
    # simple at vertex i has class minus alpha at the involution image
    for i in a2.finite_vertices:
        expected = canonical_pairing(emb, alpha(a2, a2.kappa[i]))
        assert slope(a2, emb, simple_class(a2, i)) == expected
    assert slope(a2, emb, delta(a2)) == 0
    assert dim_of_class(a2, delta(a2)) == a2.coxeter_number
    with pytest.raises(ValueError):
        slope(a2, emb, vneg(delta(a2)))


def test_slope_phase_identity():
    rng = random.Random(31)
    for name in ("A2", "A3", "D4"):
        cd = build_cartan(name)
        lam = tuple(Fraction(rng.randint(0, 2)) for _ in cd.finite_vertices)
        emb = embed_finite_coweight(cd, lam)
        t0 = theta_zero(cd)
        checked = 0
        while checked < 100:
            d = tuple(rng.randint(-3, 3) for _ in cd.vertices)
            if dim_of_class(cd, d) <= 0:
                continue
            checked += 1
            assert slope(cd, emb, d) == -canonical_pairing(emb, d) / canonical_pairing(t0, d)


def test_t_index():
    a2 = build_cartan("A2")
    assert t_index(a2, 0).tan == 0
    assert t_index(a2, 1).tan == 3
    assert abs(t_index(a2, 1).t - 0.39758) < 1e-4
    assert ArcIndex.limit(+1) == Fraction(1, 2)
    assert ArcIndex.limit(-1) == Fraction(-1, 2)


def test_arc_direction():
    a2 = build_cartan("A2")
    lam = finite_fundamental_coweight(a2, 1)
    assert arc_direction(a2, lam, 0) == theta_zero(a2)
    emb = embed_finite_coweight(a2, lam)
    assert arc_direction(a2, lam, 1) == vadd(theta_zero(a2), vscale(3, emb))
    assert arc_direction(a2, lam, -1) == vneg(vadd(theta_zero(a2), vscale(-3, emb)))
    for n in (-3, -1, 0, 1, 2, 5):
        assert arc_collinearity_error(a2, lam, n) < 1e-12


def test_verify_slicing():
    a2 = build_cartan("A2")
    lam = finite_fundamental_coweight(a2, 1)
    report = verify_slicing(a2, lam, {1}, range(-3, 4))
    assert all(item["ok"] for item in report)
    with pytest.raises(ValueError):
        verify_slicing(a2, lam, {2}, range(0, 1))


def test_theta_zero_is_interior():
    for name in ("A2", "A3", "D4"):
        cd = build_cartan(name)
        assert in_chamber(cd, theta_zero(cd), "C+", strict=True)
        assert canonical_pairing(theta_zero(cd), delta(cd)) == cd.coxeter_number


def test_half_plane():
    assert in_half_plane((Fraction(-1), Fraction(0)))
    assert not in_half_plane((Fraction(1), Fraction(0)))
    assert not in_half_plane((Fraction(0), Fraction(0)))
    assert in_half_plane((Fraction(5), Fraction(1)))
    assert in_half_plane((Fraction(1), Fraction(0)), mirrored=True)
    assert not in_half_plane((Fraction(-1), Fraction(0)), mirrored=True)
