"""Affine ADE diagram data: Cartan matrices, marks, Coxeter numbers, subdiagrams.

Node numbering is fixed per family and frozen here:

* A_n: path 1 - 2 - ... - n, affine node 0 joined to 1 and n.  For A_1 the
  affine diagram is the doubled edge 0 = 1 (a_{01} = -2).
* D_n (n >= 4): spine 1 - 2 - ... - (n-2) with leaves n-1 and n attached to
  n-2, affine node 0 attached to node 2.
* E_6/E_7/E_8: spine 1 - 3 - 4 - 5 - 6 (- 7 - 8), node 2 attached to 4;
  affine node 0 attached to 2 (E6), 1 (E7), 8 (E8).

Marks and Coxeter numbers are always computed from the highest root of the
finite part, never table-looked-up.  Edge orientation is lower index -> higher
index on each edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

Vector = tuple[int, ...]


class ConfigurationError(ValueError):
    """Invalid Dynkin family or rank."""


@dataclass(frozen=True, order=True)
class DynkinType:
    family: str
    rank: int

    def __post_init__(self) -> None:
        if self.family not in ("A", "D", "E"):
            raise ConfigurationError(f"unsupported family {self.family!r}")
        if self.rank < 1:
            raise ConfigurationError("rank must be positive")
        if self.family == "D" and self.rank < 4:
            raise ConfigurationError("D requires rank >= 4")
        if self.family == "E" and self.rank not in (6, 7, 8):
            raise ConfigurationError("E requires rank in {6, 7, 8}")

    @classmethod
    def parse(cls, text: str) -> DynkinType:
        t = text.strip().upper()
        if len(t) < 2 or t[0] not in "ADE" or not t[1:].isdigit():
            raise ConfigurationError(f"cannot parse Dynkin type {text!r}")
        return cls(t[0], int(t[1:]))

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def _finite_edges(t: DynkinType) -> list[tuple[int, int]]:
    n = t.rank
    if t.family == "A":
        return [(i, i + 1) for i in range(1, n)]
    if t.family == "D":
        return [(i, i + 1) for i in range(1, n - 2)] + [(n - 2, n - 1), (n - 2, n)]
    spine = [(1, 3), (3, 4), (4, 5), (5, 6)] + [(i, i + 1) for i in range(6, n)]
    return spine + [(2, 4)]


def _affine_edges(t: DynkinType) -> list[tuple[int, int]]:
    n = t.rank
    fin = _finite_edges(t)
    if t.family == "A":
        if n == 1:
            return fin + [(0, 1), (0, 1)]
        return fin + [(0, 1), (0, n)]
    if t.family == "D":
        return fin + [(0, 2)]
    attach = {6: 2, 7: 1, 8: 8}[n]
    return fin + [(0, attach)]


@dataclass(frozen=True)
class CartanData:
    """Immutable affine diagram package for one ADE type."""

    dynkin: DynkinType
    vertices: tuple[int, ...]
    finite_vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]        # undirected, repeated per multiplicity
    orientation: tuple[tuple[int, int], ...]  # one (src, dst) per edge, src < dst
    cartan: tuple[Vector, ...]
    marks: Vector
    coxeter_number: int
    kappa: tuple[int, ...]                    # involution on I, kappa[0] == 0
    diagram_automorphisms: tuple[tuple[int, ...], ...]

    @property
    def e(self) -> int:
        return self.dynkin.rank

    @property
    def n(self) -> int:
        return self.e + 1

    def a(self, i: int, j: int) -> int:
        return self.cartan[i][j]

    def adjacent(self, i: int, j: int) -> bool:
        return i != j and self.cartan[i][j] != 0

    def delta(self) -> Vector:
        return self.marks

    def coroot_pairing(self, i: int, v) -> object:
        """<coroot_i, v> = sum_j a_ij v_j (exact; v may carry Fractions)."""
        return sum(self.cartan[i][j] * v[j] for j in self.vertices)


def _reflect(cartan: tuple[Vector, ...], i: int, v: Vector) -> Vector:
    pairing = sum(cartan[i][j] * v[j] for j in range(len(v)))
    out = list(v)
    out[i] -= pairing
    return tuple(out)


def _roots_from_cartan(cartan: tuple[Vector, ...]) -> frozenset[Vector]:
    """All roots of a finite Cartan matrix: orbit of the simples under reflections."""
    n = len(cartan)
    simples = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    roots = set(simples) | {tuple(-c for c in s) for s in simples}
    frontier = list(roots)
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(n):
                w = _reflect(cartan, i, v)
                if w not in roots:
                    roots.add(w)
                    nxt.append(w)
        frontier = nxt
    return frozenset(roots)


def _sub_cartan(cartan: tuple[Vector, ...], J: tuple[int, ...]) -> tuple[Vector, ...]:
    return tuple(tuple(cartan[i][j] for j in J) for i in J)


def _finite_w0_images(cartan_f: tuple[Vector, ...]) -> list[Vector]:
    """Images of the simple roots under the longest element, by dominance descent."""
    e = len(cartan_f)
    theta = [1] * e  # strictly dominant coweight, coordinates over fundamental coweights
    word: list[int] = []
    while True:
        neg = [i for i in range(e) if theta[i] > 0]
        if not neg:
            break
        i = neg[0]
        word.append(i)
        ti = theta[i]
        for j in range(e):
            theta[j] -= cartan_f[i][j] * ti
    # word applied right-to-left is w0; act on each simple root, innermost first
    images = []
    for i in range(e):
        v: Vector = tuple(1 if j == i else 0 for j in range(e))
        for letter in word:
            v = _reflect(cartan_f, letter, v)
        images.append(v)
    return images


def _graph_automorphisms(cd_edges: tuple[tuple[int, int], ...], n: int) -> tuple[tuple[int, ...], ...]:
    """All multiplicity-preserving vertex permutations, by backtracking."""
    counts: dict[tuple[int, int], int] = {}
    for i, j in cd_edges:
        counts[(i, j)] = counts.get((i, j), 0) + 1

    def edge_count(i: int, j: int) -> int:
        return counts.get((min(i, j), max(i, j)), 0)

    degree = [sum(edge_count(i, j) for j in range(n)) for i in range(n)]
    autos: list[tuple[int, ...]] = []

    def extend(partial: list[int], used: set[int]) -> None:
        v = len(partial)
        if v == n:
            autos.append(tuple(partial))
            return
        for target in range(n):
            if target in used or degree[target] != degree[v]:
                continue
            if all(edge_count(v, w) == edge_count(target, partial[w]) for w in range(v)):
                partial.append(target)
                used.add(target)
                extend(partial, used)
                partial.pop()
                used.remove(target)

    extend([], set())
    return tuple(autos)


@lru_cache(maxsize=None)
def build_cartan(dynkin: DynkinType | str) -> CartanData:
    """Build the affine diagram package for an ADE type (parsed from strings like "A2")."""
    t = DynkinType.parse(dynkin) if isinstance(dynkin, str) else dynkin
    n = t.rank + 1
    vertices = tuple(range(n))
    edges = tuple(sorted(tuple(sorted(e)) for e in _affine_edges(t)))
    mult: dict[tuple[int, int], int] = {}
    for e in edges:
        mult[e] = mult.get(e, 0) + 1
    cartan = tuple(
        tuple(2 if i == j else -mult.get((min(i, j), max(i, j)), 0) for j in vertices)
        for i in vertices
    )

    phi = highest_root(t)
    marks = tuple([1] + [phi[i] for i in range(1, n)])
    h = sum(marks)

    cartan_f = _sub_cartan(cartan, tuple(range(1, n)))
    kappa_f = {}
    for i, image in enumerate(_finite_w0_images(cartan_f)):
        negated = tuple(-c for c in image)
        target = [j for j in range(t.rank) if negated == tuple(1 if k == j else 0 for k in range(t.rank))]
        if len(target) != 1:
            raise AssertionError("longest element does not negate a simple root")
        kappa_f[i + 1] = target[0] + 1
    kappa = tuple([0] + [kappa_f[i] for i in range(1, n)])

    return CartanData(
        dynkin=t,
        vertices=vertices,
        finite_vertices=tuple(range(1, n)),
        edges=edges,
        orientation=edges,
        cartan=cartan,
        marks=marks,
        coxeter_number=h,
        kappa=kappa,
        diagram_automorphisms=_graph_automorphisms(edges, n),
    )


@lru_cache(maxsize=None)
def _finite_root_set(t: DynkinType) -> frozenset[Vector]:
    """Roots of the finite part, as full-length vectors with 0th coordinate zero."""
    n = t.rank + 1
    edges = tuple(sorted(tuple(sorted(e)) for e in _affine_edges(t)))
    mult: dict[tuple[int, int], int] = {}
    for e in edges:
        mult[e] = mult.get(e, 0) + 1
    cartan = tuple(
        tuple(2 if i == j else -mult.get((min(i, j), max(i, j)), 0) for j in range(n))
        for i in range(n)
    )
    cartan_f = _sub_cartan(cartan, tuple(range(1, n)))
    return frozenset((0,) + v for v in _roots_from_cartan(cartan_f))


def finite_roots(cd: CartanData) -> frozenset[Vector]:
    return _finite_root_set(cd.dynkin)


def positive_finite_roots(cd: CartanData) -> list[Vector]:
    return sorted(v for v in finite_roots(cd) if any(c > 0 for c in v))


@lru_cache(maxsize=None)
def highest_root(dynkin: DynkinType | str) -> Vector:
    """Highest root of the finite part, maximal in the dominance order."""
    t = DynkinType.parse(dynkin) if isinstance(dynkin, str) else dynkin
    roots = _finite_root_set(t)
    return max(roots, key=lambda v: (sum(v), v))


def connected_components(cd: CartanData, J) -> tuple[tuple[int, ...], ...]:
    """Partition of J (a subset of the finite vertices) into connected pieces."""
    J = set(J)
    if not J <= set(cd.finite_vertices):
        raise ValueError("J must be a subset of the finite vertices")
    seen: set[int] = set()
    comps = []
    for start in sorted(J):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in J:
                if w not in comp and cd.adjacent(v, w):
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        comps.append(tuple(sorted(comp)))
    return tuple(comps)


def sub_highest_coeffs(cd: CartanData, J) -> dict[int, int]:
    """Coefficients r(J)_i of the highest root of the subsystem spanned by connected J."""
    J = tuple(sorted(set(J)))
    if not J:
        raise ValueError("J must be nonempty")
    if connected_components(cd, J) != (J,):
        raise ValueError("J must be connected")
    sub = _sub_cartan(cd.cartan, J)
    roots = _roots_from_cartan(sub)
    top = max(roots, key=lambda v: (sum(v), v))
    return {J[k]: top[k] for k in range(len(J))}


def alpha_J(cd: CartanData, J) -> Vector:
    """delta minus the highest root of the J-subsystem (J nonempty connected)."""
    coeffs = sub_highest_coeffs(cd, J)
    return tuple(cd.marks[i] - coeffs.get(i, 0) for i in cd.vertices)
