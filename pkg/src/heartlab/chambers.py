"""Tits-cone chambers, fundamental domains, and the heart-cone classifier.

The reference chambers live in coweight space.  The plus chamber is twisted by
the longest finite element: it is cut out by the images of the simple roots
under w0, so it contains w0(rho) rather than rho.  The level-zero chamber and
its faces are indexed by subsets of the finite vertices, and each positive
subset J has a fundamental domain for the pointwise stabilizer of its face,
cut out by the complementary walls together with one affine wall per connected
component of the complement.

Classification of a nonzero coweight returns symbolic heart descriptors: a
case tag, a reduced word, a shift, and (level zero only) the subset J with a
perverse/reversed flavor pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cartan import CartanData, alpha_J, connected_components
from .lattices import (
    Coweight,
    Root,
    canonical_pairing,
    coweight,
    is_zero,
    vadd,
    vneg,
    vscale,
)
from .weyl import (
    ITERATION_CAP,
    WeylElement,
    from_word,
    identity,
    longest_element,
    reduced_word,
    reflection_in_root,
    simple_reflection,
)


@lru_cache(maxsize=None)
def _twisted_simples(cd: CartanData) -> tuple[Root, ...]:
    """Images of all simple roots under the longest finite element."""
    w0 = longest_element(cd)
    return tuple(
        w0.apply(tuple(1 if j == i else 0 for j in cd.vertices)) for i in cd.vertices
    )


def _alpha(cd: CartanData, i: int) -> Root:
    return tuple(1 if j == i else 0 for j in cd.vertices)


def _level(cd: CartanData, theta: Coweight) -> Fraction:
    return canonical_pairing(theta, cd.marks)


def in_chamber(cd: CartanData, theta: Coweight, which: str, J=None, strict: bool = False) -> bool:
    """Exact membership test for C+, C-, C0, C0_J, or D_J.

    With strict=True the inequalities that cut the chamber out of its span are
    made strict (for C0_J that means the relative interior of the face).
    """
    theta = coweight(theta)

    def ok(value: Fraction, sense: int) -> bool:
        if strict:
            return value > 0 if sense > 0 else value < 0
        return value >= 0 if sense > 0 else value <= 0

    if which == "C+":
        return all(ok(canonical_pairing(theta, t), +1) for t in _twisted_simples(cd))
    if which == "C-":
        return all(ok(canonical_pairing(theta, t), -1) for t in _twisted_simples(cd))
    if which == "C0":
        if _level(cd, theta) != 0:
            return False
        return all(ok(canonical_pairing(theta, _alpha(cd, i)), +1) for i in cd.finite_vertices)
    if which == "C0_J":
        if J is None:
            raise ValueError("C0_J requires J")
        J = set(J)
        if _level(cd, theta) != 0:
            return False
        for i in cd.finite_vertices:
            value = canonical_pairing(theta, _alpha(cd, i))
            if i in J:
                if not ok(value, +1):
                    return False
            elif value != 0:
                return False
        return True
    if which == "D_J":
        if J is None:
            raise ValueError("D_J requires J")
        J = set(J)
        if _level(cd, theta) <= 0:
            return False
        complement = [i for i in cd.finite_vertices if i not in J]
        for i in complement:
            if not ok(canonical_pairing(theta, _alpha(cd, i)), -1):
                return False
        for comp in connected_components(cd, complement):
            wall = vadd(vscale(2, cd.marks), vneg(alpha_J(cd, comp)))
            if not ok(canonical_pairing(theta, wall), +1):
                return False
        return True
    raise ValueError(f"unknown chamber {which!r}")


def _integerize(theta: Coweight) -> tuple[int, ...]:
    """Positive rescale to integer coordinates (all sign tests are scale-invariant)."""
    scale = 1
    for c in theta:
        den = Fraction(c).denominator
        scale = scale * den // math.gcd(scale, den)
    return tuple(int(c * scale) for c in theta)


def _descend(cd: CartanData, theta: Coweight, walls: list[Root]) -> tuple[WeylElement, Coweight]:
    """Reflect theta across violated walls until (theta, wall) >= 0 for every wall.

    The descent runs on a cleared-denominator copy for speed; the composite
    element is applied to the original input once at the end.
    """
    g = identity(cd)
    reflections = [reflection_in_root(cd, wall) for wall in walls]
    current = _integerize(coweight(theta))
    for _ in range(ITERATION_CAP):
        violated = None
        for wall, r in zip(walls, reflections):
            if canonical_pairing(current, wall) < 0:
                violated = r
                break
        if violated is None:
            return g, g.dual(coweight(theta))
        current = violated.dual(current)
        g = violated * g
    raise RuntimeError("chamber descent exceeded the iteration cap")


def normalize_to_dominant(cd: CartanData, theta: Coweight) -> tuple[tuple[int, ...], Coweight]:
    """Word w with w.theta in C+ (level positive) or C- (level negative)."""
    theta = coweight(theta)
    level = _level(cd, theta)
    if level == 0:
        raise ValueError("requires nonzero pairing with delta")
    walls = list(_twisted_simples(cd))
    if level < 0:
        walls = [vneg(w) for w in walls]
    g, moved = _descend(cd, theta, walls)
    return reduced_word(cd, g), moved


def normalize_to_DJ(cd: CartanData, theta: Coweight, J) -> tuple[tuple[int, ...], Coweight]:
    """Move theta into D_J by the stabilizer of the J-face, component by component."""
    theta = coweight(theta)
    if _level(cd, theta) <= 0:
        raise ValueError("requires positive pairing with delta")
    J = set(J)
    complement = [i for i in cd.finite_vertices if i not in J]
    g = identity(cd)
    for comp in connected_components(cd, complement):
        walls = [vneg(_alpha(cd, i)) for i in comp]
        walls.append(vadd(vscale(2, cd.marks), vneg(alpha_J(cd, comp))))
        step, theta = _descend(cd, theta, walls)
        g = step * g
    return reduced_word(cd, g), theta


@dataclass(frozen=True)
class HeartDescriptor:
    """Symbolic name of an intermediate heart: case tag, word, shift, and face data."""

    case: int
    word: tuple[int, ...]
    shift: int = 0
    J: tuple[int, ...] | None = None
    flavor: str | None = None

    def to_json(self) -> dict:
        out: dict = {"case": self.case, "word": list(self.word), "shift": self.shift}
        if self.J is not None:
            out["J"] = list(self.J)
        if self.flavor is not None:
            out["flavor"] = self.flavor
        return out

    @classmethod
    def from_json(cls, obj: dict) -> HeartDescriptor:
        return cls(
            case=int(obj["case"]),
            word=tuple(int(x) for x in obj["word"]),
            shift=int(obj.get("shift", 0)),
            J=tuple(int(x) for x in obj["J"]) if "J" in obj else None,
            flavor=obj.get("flavor"),
        )


@lru_cache(maxsize=None)
def _parabolic_elements(cd: CartanData, gens: tuple[int, ...]) -> tuple[WeylElement, ...]:
    """All elements of the finite parabolic generated by the listed vertices."""
    generators = [simple_reflection(cd, i) for i in gens]
    seen = {identity(cd).m: identity(cd)}
    frontier = [identity(cd)]
    while frontier:
        nxt = []
        for w in frontier:
            for g in generators:
                u = g * w
                if u.m not in seen:
                    if len(seen) > 10**4:
                        raise RuntimeError("stabilizer too large to enumerate")
                    seen[u.m] = u
                    nxt.append(u)
        frontier = nxt
    return tuple(seen.values())


def _extreme_coset_words(
    cd: CartanData, base: WeylElement, stabilizer: list[WeylElement], side: str
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Shortest and longest words over a coset base*Stab (side="right") or Stab*base."""
    best: dict[str, tuple[int, tuple[int, ...]]] = {}
    for g in stabilizer:
        x = base * g if side == "right" else g * base
        word = reduced_word(cd, x)
        key = (len(word), word)
        if "min" not in best or key < best["min"]:
            best["min"] = key
        if "max" not in best or key > best["max"]:
            best["max"] = key
    return best["min"][1], best["max"][1]


def locate_heart_cone(cd: CartanData, theta: Coweight) -> tuple[HeartDescriptor, HeartDescriptor]:
    """Maximal and minimal heart descriptors whose heart cone contains theta.

    Level > 0: translates of the plus chamber (case 1, shift 0); level < 0:
    inverse translates of the minus chamber (case 2, shift -1); level zero:
    faces of the finite-orbit chamber (case 3) carrying a perverse/reversed
    pair over the same subset J and minimal-length word.
    """
    theta = coweight(theta)
    if is_zero(theta):
        raise ValueError("theta must be nonzero")
    level = _level(cd, theta)

    if level != 0:
        word, eta = normalize_to_dominant(cd, theta)
        u = from_word(cd, word)
        twisted = _twisted_simples(cd)
        active = tuple(
            i for i in cd.vertices if canonical_pairing(eta, twisted[i]) == 0
        )
        stab = [
            longest_element(cd) * g * longest_element(cd)
            for g in _parabolic_elements(cd, active)
        ]
        if level > 0:
            short, long = _extreme_coset_words(cd, u.inverse(), stab, "right")
            upper = HeartDescriptor(case=1, word=short)
            lower = HeartDescriptor(case=1, word=long)
            return upper, lower
        short, long = _extreme_coset_words(cd, u, stab, "left")
        upper = HeartDescriptor(case=2, word=long, shift=-1)
        lower = HeartDescriptor(case=2, word=short, shift=-1)
        return upper, lower

    # level zero: finite descent into the level-zero chamber
    g = identity(cd)
    current = _integerize(theta)
    for _ in range(ITERATION_CAP):
        bad = [i for i in cd.finite_vertices if current[i] < 0]
        if not bad:
            break
        s = simple_reflection(cd, bad[0])
        current = s.dual(current)
        g = s * g
    J = tuple(i for i in cd.finite_vertices if current[i] > 0)
    stab = list(
        _parabolic_elements(cd, tuple(i for i in cd.finite_vertices if i not in J))
    )
    short, _ = _extreme_coset_words(cd, g.inverse(), stab, "right")
    upper = HeartDescriptor(case=3, word=short, J=J, flavor="perverse")
    lower = HeartDescriptor(case=3, word=short, J=J, flavor="reversed")
    return upper, lower


def base_cone_of(descriptor: HeartDescriptor) -> str:
    return {1: "C+", 2: "C-", 3: "C0_J"}[descriptor.case]


def check_roundtrip(cd: CartanData, theta: Coweight, descriptor: HeartDescriptor) -> bool:
    """Apply the inverse of the descriptor word to theta and test base-cone membership."""
    w = from_word(cd, descriptor.word)
    if descriptor.case in (1, 3):
        moved = w.inverse().dual(coweight(theta))
    else:
        moved = w.dual(coweight(theta))
    if descriptor.case == 3:
        return in_chamber(cd, moved, "C0_J", J=descriptor.J)
    return in_chamber(cd, moved, base_cone_of(descriptor))
