"""Affine Weyl group machinery: reflections, shears, reduced words, dual actions.

Elements are identified with their integer matrices acting on the root lattice
(columns indexed by simple roots, delta always fixed).  The same class carries
extended elements such as shears by non-coroot coweights; `reduced_word` is
exactly the membership test for the non-extended group.

The shear here sends alpha to alpha + (lam, alpha) * delta; it differs by a
sign from some conventions in the literature, and that choice is load-bearing
for the dual-action formula theta -> theta + n * (theta, delta) * lam used by
the stability-arc code.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cartan import CartanData
from .lattices import (
    Coweight,
    FiniteCoweight,
    Root,
    canonical_pairing,
    embed_finite_coweight,
    finite_coroot,
    finite_coweight,
    is_zero,
    vadd,
    vscale,
)

ITERATION_CAP = 10**6


class NotInWeylGroup(ValueError):
    """Element admits no descent stripping down to the identity."""


def _mat_mul(a, b):
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def _mat_vec(m, v):
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in m)


def _identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class WeylElement:
    """Invertible integer lattice map fixing delta; group elements and shears alike."""

    m: tuple[tuple[int, ...], ...]
    mi: tuple[tuple[int, ...], ...]

    def __mul__(self, other: WeylElement) -> WeylElement:
        return WeylElement(_mat_mul(self.m, other.m), _mat_mul(other.mi, self.mi))

    def inverse(self) -> WeylElement:
        return WeylElement(self.mi, self.m)

    def apply(self, v: Root) -> Root:
        return _mat_vec(self.m, v)

    def dual(self, theta: Coweight) -> Coweight:
        """Inverse-transpose action: (w.theta, v) = (theta, w^{-1} v)."""
        n = len(theta)
        return tuple(
            sum(self.mi[j][i] * theta[j] for j in range(n)) for i in range(n)
        )

    def is_identity(self) -> bool:
        return self.m == _identity(len(self.m))


def identity(cd: CartanData) -> WeylElement:
    eye = _identity(cd.n)
    return WeylElement(eye, eye)


@lru_cache(maxsize=None)
def simple_reflection(cd: CartanData, i: int) -> WeylElement:
    if i not in cd.vertices:
        raise ValueError(f"vertex {i} out of range")
    n = cd.n
    m = tuple(
        tuple((1 if k == j else 0) - (cd.cartan[i][j] if k == i else 0) for j in range(n))
        for k in range(n)
    )
    return WeylElement(m, m)


def from_word(cd: CartanData, word) -> WeylElement:
    w = identity(cd)
    for i in word:
        w = w * simple_reflection(cd, i)
    return w


def reflection_in_root(cd: CartanData, beta: Root) -> WeylElement:
    """Reflection in a real root beta (any integer vector with <beta-coroot, beta> = 2)."""
    n = cd.n
    corow = tuple(sum(beta[i] * cd.cartan[i][j] for i in range(n)) for j in range(n))
    norm = sum(corow[j] * beta[j] for j in range(n))
    if norm != 2:
        raise ValueError("not a real root")
    m = tuple(
        tuple((1 if k == j else 0) - beta[k] * corow[j] for j in range(n))
        for k in range(n)
    )
    return WeylElement(m, m)


def shear(cd: CartanData, lam: FiniteCoweight) -> WeylElement:
    """Lattice shear alpha -> alpha + (lam, alpha) * delta for an integral finite coweight."""
    lam = finite_coweight(lam)
    if any(c.denominator != 1 for c in lam):
        raise ValueError("shear requires integral coweight coordinates")
    emb = embed_finite_coweight(cd, lam)
    n = cd.n
    m = tuple(
        tuple((1 if k == j else 0) + cd.marks[k] * int(emb[j]) for j in range(n))
        for k in range(n)
    )
    mi = tuple(
        tuple((1 if k == j else 0) - cd.marks[k] * int(emb[j]) for j in range(n))
        for k in range(n)
    )
    return WeylElement(m, mi)


def shear_dual(cd: CartanData, lam: FiniteCoweight, theta: Coweight, n: int = 1) -> Coweight:
    """Dual action of the n-th inverse shear power: theta + n * (theta, delta) * lam."""
    level = canonical_pairing(theta, cd.marks)
    emb = embed_finite_coweight(cd, finite_coweight(lam))
    return vadd(theta, vscale(n * level, emb))


def dual_action(w: WeylElement, theta: Coweight) -> Coweight:
    return w.dual(theta)


def is_negative_root_vector(v: Root) -> bool:
    """Descent test: negative in the affine root order (all coordinates <= 0, not zero)."""
    return all(c <= 0 for c in v) and not is_zero(v)


def is_positive_root_vector(v: Root) -> bool:
    return all(c >= 0 for c in v) and not is_zero(v)


def reduced_word(cd: CartanData, w: WeylElement) -> tuple[int, ...]:
    """Reduced word by descent stripping; raises NotInWeylGroup off the group.

    Stripping a simple reflection on the right is the column operation
    inv[k][j] -= inv[k][i] * a[i][j], so each step costs one matrix scan.
    """
    if w.apply(cd.marks) != cd.marks:
        raise NotInWeylGroup("element does not fix delta")
    n = cd.n
    inv = [list(row) for row in w.mi]
    word: list[int] = []
    for _ in range(ITERATION_CAP):
        if all(inv[k][j] == (1 if k == j else 0) for k in range(n) for j in range(n)):
            return tuple(word)
        descent = None
        for i in cd.vertices:
            if any(inv[k][i] > 0 for k in range(n)):
                continue
            if any(inv[k][i] for k in range(n)):
                descent = i
                break
        if descent is None:
            raise NotInWeylGroup("no descent found; element is not in the Weyl group")
        word.append(descent)
        row_i = cd.cartan[descent]
        for k in range(n):
            coeff = inv[k][descent]
            if coeff:
                row = inv[k]
                for j in range(n):
                    row[j] -= coeff * row_i[j]
    raise RuntimeError("descent stripping exceeded the iteration cap")


def length(cd: CartanData, w: WeylElement) -> int:
    return len(reduced_word(cd, w))


@lru_cache(maxsize=None)
def longest_element(cd: CartanData) -> WeylElement:
    """Longest element of the finite Weyl group, by anti-dominance descent."""
    theta = [Fraction(1) if i in cd.finite_vertices else Fraction(0) for i in cd.vertices]
    w = identity(cd)
    guard = 0
    while True:
        guard += 1
        if guard > ITERATION_CAP:
            raise RuntimeError("descent exceeded the iteration cap")
        pos = [i for i in cd.finite_vertices if theta[i] > 0]
        if not pos:
            return w
        i = pos[0]
        s = simple_reflection(cd, i)
        theta = list(s.dual(tuple(theta)))
        w = s * w


def weyl_group_order(cd: CartanData) -> int:
    """Order of the finite Weyl group by breadth-first search over matrices."""
    gens = [simple_reflection(cd, i) for i in cd.finite_vertices]
    seen = {identity(cd).m}
    frontier = [identity(cd)]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                u = g * w
                if u.m not in seen:
                    seen.add(u.m)
                    nxt.append(u)
        frontier = nxt
    return len(seen)


def dominant_decomposition(cd: CartanData, lam: FiniteCoweight) -> tuple[FiniteCoweight, FiniteCoweight]:
    """Write an integral finite coweight as a difference of dominant ones, minimally."""
    lam = finite_coweight(lam)
    if any(c.denominator != 1 for c in lam):
        raise ValueError("requires integral coweight coordinates")
    shift = max([Fraction(0)] + [-c for c in lam])
    lam2 = tuple(shift for _ in lam)
    lam1 = tuple(c + shift for c in lam)
    return lam1, lam2


def wJ_generators(cd: CartanData, J) -> list[WeylElement]:
    """Generators of the pointwise stabilizer of the J-face: the complementary
    parabolic reflections together with all coroot shears."""
    J = set(J)
    gens = [simple_reflection(cd, i) for i in cd.finite_vertices if i not in J]
    gens += [shear(cd, finite_coroot(cd, i)) for i in cd.finite_vertices]
    return gens


def inversion_count(cd: CartanData, w: WeylElement, max_level: int) -> int:
    """Positive real roots with level <= max_level sent negative by w."""
    from .cartan import finite_roots

    count = 0
    for alpha in finite_roots(cd):
        for n in range(0, max_level + 1):
            if n == 0 and not is_positive_root_vector(alpha):
                continue
            v = vadd(alpha, vscale(n, cd.marks))
            if is_negative_root_vector(w.apply(v)):
                count += 1
    return count


@dataclass(frozen=True)
class ExtendedWeylElement:
    """Diagram automorphism composed after a Weyl element (gamma applied last)."""

    gamma: tuple[int, ...]
    w: WeylElement

    def gamma_matrix(self) -> tuple[tuple[int, ...], ...]:
        n = len(self.gamma)
        return tuple(
            tuple(1 if self.gamma[j] == k else 0 for j in range(n)) for k in range(n)
        )

    def as_lattice_map(self) -> WeylElement:
        p = self.gamma_matrix()
        pinv = tuple(tuple(p[j][k] for j in range(len(p))) for k in range(len(p)))
        return WeylElement(_mat_mul(p, self.w.m), _mat_mul(self.w.mi, pinv))

    def apply(self, v: Root) -> Root:
        return self.as_lattice_map().apply(v)

    def dual(self, theta: Coweight) -> Coweight:
        return self.as_lattice_map().dual(theta)


def extended_w0(cd: CartanData) -> ExtendedWeylElement:
    """kappa combined with the longest element; acts as -1 on the level-zero hyperplane."""
    return ExtendedWeylElement(cd.kappa, longest_element(cd))
