"""Central charges: regularity, classification, normal forms, slopes, arcs.

A charge is stored as the pair (theta, omega) of exact coweights, evaluating
on a lattice class v as (-(theta, v), (omega, v)).  The admissible half-plane
is the strict upper half-plane together with the strictly negative reals; the
mirrored variant (upper half-plane plus strictly positive reals) shows up when
normalizing against half-open-below phase intervals.

The classifier predicates are boundary-correct: the level-zero classification
over a nonempty subset J requires omega in the relative interior of the J-face
and theta inside the fundamental domain with the complementary-wall
inequalities strict, which is exactly what the object-by-object half-plane
test forces.  For charges off every root hyperplane the normalizer always
lands strictly, so its output re-validates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .cartan import CartanData, alpha_J, connected_components, positive_finite_roots
from .chambers import (
    _descend,
    _integerize,
    _twisted_simples,
    in_chamber,
    locate_heart_cone,
    normalize_to_DJ,
    normalize_to_dominant,
)
from .lattices import (
    Coweight,
    FiniteCoweight,
    Root,
    canonical_pairing,
    coweight,
    embed_finite_coweight,
    finite_coweight,
    is_piJ_ample,
    rho_check,
    simple_class,
    vadd,
    vneg,
    vscale,
)
from .weyl import (
    WeylElement,
    extended_w0,
    from_word,
    identity,
    longest_element,
    reduced_word,
    simple_reflection,
)

UP = "half_open_up"
DOWN = "half_open_down"


@dataclass(frozen=True)
class CentralCharge:
    theta: Coweight
    omega: Coweight

    def value(self, v: Root) -> tuple[Fraction, Fraction]:
        return (-canonical_pairing(self.theta, v), canonical_pairing(self.omega, v))

    def negate(self) -> CentralCharge:
        return CentralCharge(vneg(self.theta), vneg(self.omega))

    def transform(self, w: WeylElement) -> CentralCharge:
        return CentralCharge(w.dual(self.theta), w.dual(self.omega))

    @classmethod
    def make(cls, theta, omega) -> CentralCharge:
        return cls(coweight(theta), coweight(omega))


def in_half_plane(z: tuple[Fraction, Fraction], mirrored: bool = False) -> bool:
    """Strict upper half-plane, closed along the negative reals (positive if mirrored)."""
    re, im = z
    if im > 0:
        return True
    if im == 0:
        return re > 0 if mirrored else re < 0
    return False


def in_hreg(cd: CartanData, Z: CentralCharge) -> bool:
    """No root class is killed: nonzero on delta and on every real root line."""
    t_delta = canonical_pairing(Z.theta, cd.marks)
    o_delta = canonical_pairing(Z.omega, cd.marks)
    if t_delta == 0 and o_delta == 0:
        return False
    for alpha in positive_finite_roots(cd):
        t_a = canonical_pairing(Z.theta, alpha)
        o_a = canonical_pairing(Z.omega, alpha)
        # integer n with Z(alpha) + n Z(delta) = 0?
        if t_delta == 0:
            if t_a != 0:
                continue
            n = Fraction(-o_a, o_delta)
        else:
            n = Fraction(-t_a, t_delta)
            if o_a + n * o_delta != 0:
                continue
        if n.denominator == 1:
            return False
    return True


def _relint_face(cd: CartanData, omega: Coweight, J: set[int]) -> bool:
    if canonical_pairing(omega, cd.marks) != 0:
        return False
    for i in cd.finite_vertices:
        value = canonical_pairing(omega, tuple(1 if k == i else 0 for k in cd.vertices))
        if i in J:
            if value <= 0:
                return False
        elif value != 0:
            return False
    return True


def _strict_DJ(cd: CartanData, theta: Coweight, J: set[int]) -> bool:
    if canonical_pairing(theta, cd.marks) <= 0:
        return False
    complement = [i for i in cd.finite_vertices if i not in J]
    for i in complement:
        if canonical_pairing(theta, tuple(1 if k == i else 0 for k in cd.vertices)) >= 0:
            return False
    for comp in connected_components(cd, complement):
        wall = vadd(vscale(2, cd.marks), vneg(alpha_J(cd, comp)))
        if canonical_pairing(theta, wall) <= 0:
            return False
    return True


def is_stability_function(cd: CartanData, Z: CentralCharge, J, flavor: str) -> bool:
    """Whether Z is admissible for the heart named by (J, flavor).

    The empty subset carries the nilpotent heart and tests the simple classes
    against the half-plane; a nonempty J tests the face/domain conditions with
    the strictness the half-plane criterion forces.  The perverse and reversed
    flavors share one predicate: they are the two tilts of one normal form.
    """
    J = tuple(sorted(set(J)))
    if flavor == "nilp":
        if J:
            raise ValueError("the nilpotent flavor carries the empty subset")
        return all(in_half_plane(Z.value(simple_class(cd, i))) for i in cd.vertices)
    if flavor not in ("perverse", "reversed"):
        raise ValueError(f"unknown flavor {flavor!r}")
    if not J:
        raise ValueError("perverse flavors require a nonempty subset")
    return _relint_face(cd, Z.omega, set(J)) and _strict_DJ(cd, Z.theta, set(J))


def stability_generator_test(cd: CartanData, Z: CentralCharge, J) -> bool:
    """Object-by-object half-plane oracle for the heart over J.

    Checks the point class, every line-bundle class family over the J-curves
    (the twist parameter eliminated exactly), and the simple classes of each
    complementary component.  For empty J this is the simple-class test.
    """
    J = tuple(sorted(set(J)))
    if not J:
        return all(in_half_plane(Z.value(simple_class(cd, i))) for i in cd.vertices)
    if not in_half_plane(Z.value(cd.marks)):
        return False
    o_delta = canonical_pairing(Z.omega, cd.marks)
    t_delta = canonical_pairing(Z.theta, cd.marks)
    for i in J:
        alpha_i = tuple(1 if k == i else 0 for k in cd.vertices)
        o_a = canonical_pairing(Z.omega, alpha_i)
        t_a = canonical_pairing(Z.theta, alpha_i)
        # class alpha_i + m*delta for every integer m: Im = o_a + m*o_delta
        if o_delta != 0:
            return False
        if o_a < 0:
            return False
        if o_a == 0 and not (t_delta == 0 and -t_a < 0):
            return False
    complement = [i for i in cd.finite_vertices if i not in J]
    for comp in connected_components(cd, complement):
        for i in comp:
            alpha_i = tuple(1 if k == i else 0 for k in cd.vertices)
            if not in_half_plane(Z.value(vneg(alpha_i))):
                return False
        wall = vadd(vscale(2, cd.marks), vneg(alpha_J(cd, comp)))
        if not in_half_plane(Z.value(wall)):
            return False
    return True


@dataclass(frozen=True)
class NormalizationResult:
    word: tuple[int, ...]
    J: tuple[int, ...]
    shift: int
    flavor: str
    interval: str

    def apply(self, cd: CartanData, Z: CentralCharge) -> CentralCharge:
        moved = Z.negate() if self.shift % 2 else Z
        return moved.transform(from_word(cd, self.word))

    def revalidate(self, cd: CartanData, Z: CentralCharge) -> bool:
        moved = self.apply(cd, Z)
        if self.flavor == "nilp":
            mirrored = self.interval == DOWN
            return all(
                in_half_plane(moved.value(simple_class(cd, i)), mirrored=mirrored)
                for i in cd.vertices
            )
        return is_stability_function(cd, moved, self.J, self.flavor)


def normalize_stability(cd: CartanData, Z: CentralCharge, interval: str = UP) -> NormalizationResult:
    """Normal form of a regular charge: braid word, subset, shift, flavor.

    Generic imaginary part (nonzero level): the imaginary part is moved to the
    twisted dominant chamber and the real part through the finite stabilizer
    of its walls; the heart is the nilpotent one.  Level-zero imaginary part:
    the imaginary part is moved into the level-zero chamber, J reads off its
    strictly positive walls, and the real part descends into the fundamental
    domain for the face stabilizer.
    """
    if interval not in (UP, DOWN):
        raise ValueError(f"unknown interval {interval!r}")
    if not in_hreg(cd, Z):
        raise ValueError("charge must avoid all root hyperplanes")

    o_level = canonical_pairing(Z.omega, cd.marks)
    if o_level != 0:
        shift = 0 if o_level > 0 else 1
        current = Z.negate() if shift else Z
        word_u, omega_dom = normalize_to_dominant(cd, current.omega)
        u = from_word(cd, word_u)
        current = current.transform(u)
        twisted = _twisted_simples(cd)
        active = [
            twisted[i]
            for i in cd.vertices
            if canonical_pairing(omega_dom, twisted[i]) == 0
        ]
        walls = active if interval == UP else [vneg(w) for w in active]
        v, _ = _descend(cd, current.theta, walls)
        word = reduced_word(cd, v * u)
        return NormalizationResult(word, (), shift, "nilp", interval)

    t_level = canonical_pairing(Z.theta, cd.marks)
    # regularity guarantees a nonzero real level here
    if all(
        canonical_pairing(Z.omega, tuple(1 if k == i else 0 for k in cd.vertices)) == 0
        for i in cd.vertices
    ):
        # vanishing imaginary part: the nilpotent heart, real chamber by interval
        want_positive_level = interval == UP
        shift = 0 if (t_level > 0) == want_positive_level else 1
        current = Z.negate() if shift else Z
        word_v, _ = normalize_to_dominant(cd, current.theta)
        return NormalizationResult(tuple(word_v), (), shift, "nilp", interval)

    shift = 0 if t_level > 0 else 1
    current = Z.negate() if shift else Z
    g = identity(cd)
    omega_now = _integerize(current.omega)
    for _ in range(10**6):
        bad = [i for i in cd.finite_vertices if omega_now[i] < 0]
        if not bad:
            break
        s = simple_reflection(cd, bad[0])
        omega_now = s.dual(omega_now)
        g = s * g
    current = current.transform(g)
    J = tuple(i for i in cd.finite_vertices if current.omega[i] > 0)
    word_v, _ = normalize_to_DJ(cd, current.theta, J)
    word = reduced_word(cd, from_word(cd, word_v) * g)
    flavor = "perverse" if interval == UP else "reversed"
    return NormalizationResult(word, J, shift, flavor, interval)


# ---------------------------------------------------------------------------
# slopes and stability arcs


def theta_zero(cd: CartanData) -> Coweight:
    """Interior point of the twisted dominant chamber with level the Coxeter number."""
    return longest_element(cd).dual(rho_check(cd))


def dim_of_class(cd: CartanData, d: Root) -> Fraction:
    return canonical_pairing(theta_zero(cd), d)


def slope(cd: CartanData, theta: Coweight, d: Root) -> Fraction:
    """Exact slope of a module class: twisted pairing over total dimension."""
    dim = dim_of_class(cd, d)
    if dim <= 0:
        raise ValueError("class has non-positive dimension")
    return canonical_pairing(extended_w0(cd).dual(coweight(theta)), d) / dim


@dataclass(frozen=True)
class ArcIndex:
    """Exact datum of the n-th arc parameter: tan(pi t_n) equals n times h."""

    n: int
    tan: Fraction

    @property
    def t(self) -> float:
        return math.atan(float(self.tan)) / math.pi

    @classmethod
    def limit(cls, sign: int) -> Fraction:
        return Fraction(1, 2) if sign > 0 else Fraction(-1, 2)


def t_index(cd: CartanData, n: int) -> ArcIndex:
    return ArcIndex(n=n, tan=Fraction(n * cd.coxeter_number))


def arc_direction(cd: CartanData, lam: FiniteCoweight, n: int) -> Coweight:
    """Rational ray representative of the arc at index n (negated past the quarter turn)."""
    emb = embed_finite_coweight(cd, finite_coweight(lam))
    rep = vadd(theta_zero(cd), vscale(n * cd.coxeter_number, emb))
    return rep if n >= 0 else vneg(rep)


def _shear_power_dual(cd: CartanData, lam, theta: Coweight, n: int) -> Coweight:
    level = canonical_pairing(theta, cd.marks)
    emb = embed_finite_coweight(cd, finite_coweight(lam))
    return vadd(theta, vscale(n * level, emb))


def verify_slicing(cd: CartanData, lam: FiniteCoweight, J, n_range) -> list[dict]:
    """Exact membership report for the arc against shear-translated chambers.

    For each index the direction must sit inside the translated plus chamber
    (minus chamber for negative indices), strictly; the midpoint must classify
    as the perverse/reversed pair over J.  The float collinearity of the
    rational representative with the transcendental arc point is reported as a
    cross-check only.
    """
    lam = finite_coweight(lam)
    if not is_piJ_ample(cd, lam, J):
        raise ValueError("coweight is not ample for J")
    report: list[dict] = []
    for n in n_range:
        direction = arc_direction(cd, lam, n)
        pulled = _shear_power_dual(cd, lam, direction, -n)
        target = "C+" if n >= 0 else "C-"
        ok = in_chamber(cd, pulled, target, strict=True)
        upper, _ = locate_heart_cone(cd, direction)
        report.append(
            {
                "n": n,
                "direction": [str(c) for c in direction],
                "chamber": {
                    "type": "Cplus" if target == "C+" else "Cminus",
                    "word": list(upper.word),
                },
                "ok": bool(ok),
            }
        )
    upper, lower = locate_heart_cone(cd, embed_finite_coweight(cd, lam))
    midpoint_ok = (
        upper.case == 3
        and upper.word == ()
        and upper.J == tuple(sorted(set(J)))
        and upper.flavor == "perverse"
        and lower.flavor == "reversed"
    )
    report.append({"n": "midpoint", "ok": bool(midpoint_ok)})
    return report


def arc_collinearity_error(cd: CartanData, lam: FiniteCoweight, n: int) -> float:
    """Relative float distance between the rational representative and the arc point."""
    emb = embed_finite_coweight(cd, finite_coweight(lam))
    t = t_index(cd, n).t if n >= 0 else t_index(cd, n).t + 1.0
    arc = [
        math.cos(math.pi * t) * float(a) + math.sin(math.pi * t) * float(b)
        for a, b in zip(theta_zero(cd), emb)
    ]
    rep = [float(c) for c in arc_direction(cd, lam, n)]
    scale = math.sqrt(sum(c * c for c in rep)) / math.sqrt(sum(c * c for c in arc))
    return max(abs(r - scale * a) for r, a in zip(rep, arc)) / max(
        abs(r) for r in rep
    )
