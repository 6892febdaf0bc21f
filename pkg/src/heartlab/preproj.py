"""Nilpotent representations of the doubled affine quiver over small prime fields.

A representation assigns a vector space over F_p to each vertex and one matrix
per arrow of the double (each oriented edge together with its reversed star).
Validity means the signed sum of round trips vanishes at each vertex and the
arrow ideal acts nilpotently.  Everything downstream (stability, filtrations)
is driven by exhaustive submodule enumeration, which is why the total
dimension is capped: a submodule is an arrow-invariant choice of subspace at
every vertex, and all of them are joins of closures of single homogeneous
vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .cartan import CartanData
from .lattices import class_of_dim_vector
from .stability import slope

DEFAULT_DIM_CAP = 6
SUPPORTED_PRIMES = (2, 3, 5)


class RepError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    src: int
    dst: int
    star: bool


def arrows_of(cd: CartanData) -> tuple[Arrow, ...]:
    """Arrows of the double: base arrows along the orientation plus their stars.

    Parallel edges get a "#k" suffix (k >= 2) on the shared name stem.
    """
    seen: dict[tuple[int, int], int] = {}
    out: list[Arrow] = []
    for s, t in cd.orientation:
        seen[(s, t)] = seen.get((s, t), 0) + 1
        stem = f"e{s}{t}" if seen[(s, t)] == 1 else f"e{s}{t}#{seen[(s, t)]}"
        out.append(Arrow(stem, s, t, False))
        out.append(Arrow(stem + "*", t, s, True))
    return tuple(out)


# ---------------------------------------------------------------------------
# F_p linear algebra on tuple matrices (rows of ints in [0, p))


def _matmul(a, b, p, nrows: int, ncols: int):
    inner = len(b)
    return tuple(
        tuple(sum(a[r][k] * b[k][c] for k in range(inner)) % p for c in range(ncols))
        for r in range(nrows)
    )


def _matvec(m, v, p):
    return tuple(sum(row[j] * v[j] for j in range(len(v))) % p for row in m)


def _rref(rows, width, p):
    """Reduced row echelon basis of the span; returns a canonical tuple of rows."""
    work = [list(r) for r in rows if any(r)]
    basis: list[list[int]] = []
    pivots: list[int] = []
    for row in work:
        for piv, brow in zip(pivots, basis):
            if row[piv]:
                c = row[piv]
                row[:] = [(x - c * y) % p for x, y in zip(row, brow)]
        lead = next((j for j in range(width) if row[j]), None)
        if lead is None:
            continue
        inv = pow(row[lead], p - 2, p)
        row[:] = [(x * inv) % p for x in row]
        # back-substitute into earlier rows
        for brow in basis:
            if brow[lead]:
                c = brow[lead]
                brow[:] = [(x - c * y) % p for x, y in zip(brow, row)]
        insert_at = next((k for k, q in enumerate(pivots) if q > lead), len(pivots))
        pivots.insert(insert_at, lead)
        basis.insert(insert_at, row)
    return tuple(tuple(r) for r in basis)


def _reduce_vector(v, basis, width, p):
    """Residue of v modulo the row space (pivot coordinates eliminated)."""
    out = list(v)
    for brow in basis:
        lead = next(j for j in range(width) if brow[j])
        if out[lead]:
            c = out[lead]
            out = [(x - c * y) % p for x, y in zip(out, brow)]
    return tuple(out)


Subspace = tuple[tuple[int, ...], ...]
GradedSubspace = tuple[Subspace, ...]


@dataclass(frozen=True)
class Rep:
    cd: CartanData
    p: int
    dim: tuple[int, ...]
    mats: dict

    def __post_init__(self) -> None:
        if self.p not in SUPPORTED_PRIMES:
            raise RepError(f"prime {self.p} unsupported")
        if len(self.dim) != self.cd.n or any(d < 0 for d in self.dim):
            raise RepError("bad dimension vector")
        for a in arrows_of(self.cd):
            m = self.mats.get(a.name)
            if m is None:
                raise RepError(f"missing matrix for arrow {a.name}")
            if len(m) != self.dim[a.dst] or any(len(r) != self.dim[a.src] for r in m):
                raise RepError(f"shape mismatch for arrow {a.name}")

    def total_dim(self) -> int:
        return sum(self.dim)

    def to_json(self) -> dict:
        return {
            "type": str(self.cd.dynkin),
            "p": self.p,
            "dim": list(self.dim),
            "arrows": {k: [list(r) for r in m] for k, m in self.mats.items()},
        }

    @classmethod
    def from_json(cls, cd: CartanData, obj: dict) -> Rep:
        mats = {k: tuple(tuple(int(x) % obj["p"] for x in r) for r in m) for k, m in obj["arrows"].items()}
        return cls(cd, int(obj["p"]), tuple(int(d) for d in obj["dim"]), mats)


def zero_matrix(rows: int, cols: int) -> tuple:
    return tuple(tuple(0 for _ in range(cols)) for _ in range(rows))


def simple_rep(cd: CartanData, p: int, i: int) -> Rep:
    dim = tuple(1 if j == i else 0 for j in cd.vertices)
    mats = {a.name: zero_matrix(dim[a.dst], dim[a.src]) for a in arrows_of(cd)}
    return Rep(cd, p, dim, mats)


def preprojective_relation_holds(rep: Rep) -> bool:
    """Signed sum of round trips vanishes at every vertex."""
    arrows = arrows_of(rep.cd)
    base = [a for a in arrows if not a.star]
    stars = {a.name: a for a in arrows if a.star}
    for i in rep.cd.vertices:
        d = rep.dim[i]
        acc = [[0] * d for _ in range(d)]
        for a in base:
            star = stars[a.name + "*"]
            if a.src == i:
                m = _matmul(rep.mats[star.name], rep.mats[a.name], rep.p, d, d)
                for r in range(d):
                    for c in range(d):
                        acc[r][c] = (acc[r][c] + m[r][c]) % rep.p
            if a.dst == i:
                m = _matmul(rep.mats[a.name], rep.mats[star.name], rep.p, d, d)
                for r in range(d):
                    for c in range(d):
                        acc[r][c] = (acc[r][c] - m[r][c]) % rep.p
        if any(any(x for x in row) for row in acc):
            return False
    return True


def is_nilpotent(rep: Rep) -> bool:
    """The arrow-ideal filtration reaches zero within total-dimension steps."""
    layer: GradedSubspace = tuple(
        tuple(tuple(1 if j == k else 0 for j in range(d)) for k in range(d))
        for d in rep.dim
    )
    for _ in range(rep.total_dim() + 1):
        if all(not rows for rows in layer):
            return True
        nxt: list[list[tuple[int, ...]]] = [[] for _ in rep.cd.vertices]
        for a in arrows_of(rep.cd):
            for v in layer[a.src]:
                nxt[a.dst].append(_matvec(rep.mats[a.name], v, rep.p))
        layer = tuple(
            _rref(nxt[i], rep.dim[i], rep.p) for i in rep.cd.vertices
        )
    return False


def validate(rep: Rep) -> bool:
    """Relation plus nilpotency (shape checks happen at construction)."""
    return preprojective_relation_holds(rep) and is_nilpotent(rep)


# ---------------------------------------------------------------------------
# submodules


def _close_under_arrows(rep: Rep, seed: list[list[tuple[int, ...]]]) -> GradedSubspace:
    spaces = [_rref(seed[i], rep.dim[i], rep.p) for i in rep.cd.vertices]
    changed = True
    while changed:
        changed = False
        for a in arrows_of(rep.cd):
            images = [_matvec(rep.mats[a.name], v, rep.p) for v in spaces[a.src]]
            if not images:
                continue
            joined = _rref(list(spaces[a.dst]) + images, rep.dim[a.dst], rep.p)
            if joined != spaces[a.dst]:
                spaces[a.dst] = joined
                changed = True
    return tuple(spaces)


def _join(rep: Rep, a: GradedSubspace, b: GradedSubspace) -> GradedSubspace:
    return tuple(
        _rref(list(x) + list(y), rep.dim[i], rep.p)
        for i, (x, y) in enumerate(zip(a, b))
    )


def submodules(rep: Rep, dim_cap: int = DEFAULT_DIM_CAP) -> list[GradedSubspace]:
    """Every arrow-invariant graded subspace, as canonical echelon bases.

    Joins of cyclic closures of homogeneous vectors exhaust the lattice; the
    total dimension is capped to keep the enumeration honest.
    """
    if rep.total_dim() > dim_cap:
        raise RepError(
            f"total dimension {rep.total_dim()} exceeds the enumeration cap {dim_cap}"
        )
    zero: GradedSubspace = tuple(() for _ in rep.cd.vertices)
    cyclic: dict[GradedSubspace, None] = {}
    for i in rep.cd.vertices:
        d = rep.dim[i]
        for coords in product(range(rep.p), repeat=d):
            if not any(coords):
                continue
            if next(c for c in coords if c) != 1:
                continue  # one representative per line
            seed: list[list[tuple[int, ...]]] = [[] for _ in rep.cd.vertices]
            seed[i].append(coords)
            cyclic[_close_under_arrows(rep, seed)] = None
    found: dict[GradedSubspace, None] = {zero: None}
    frontier = [zero]
    while frontier:
        nxt = []
        for current in frontier:
            for gen in cyclic:
                candidate = _join(rep, current, gen)
                if candidate not in found:
                    found[candidate] = None
                    nxt.append(candidate)
        frontier = nxt
    return list(found)


def subspace_dim(space: GradedSubspace) -> tuple[int, ...]:
    return tuple(len(rows) for rows in space)


def submodule_dim_vectors(rep: Rep, dim_cap: int = DEFAULT_DIM_CAP) -> set[tuple[int, ...]]:
    return {subspace_dim(s) for s in submodules(rep, dim_cap)}


def quotient_rep(rep: Rep, sub: GradedSubspace) -> Rep:
    """Quotient representation in the non-pivot coordinates of each vertex."""
    p = rep.p
    keep: list[list[int]] = []
    for i in rep.cd.vertices:
        pivots = {next(j for j in range(rep.dim[i]) if row[j]) for row in sub[i]}
        keep.append([j for j in range(rep.dim[i]) if j not in pivots])
    new_dim = tuple(len(k) for k in keep)
    mats = {}
    for a in arrows_of(rep.cd):
        cols = []
        for j in keep[a.src]:
            unit = tuple(1 if t == j else 0 for t in range(rep.dim[a.src]))
            image = _matvec(rep.mats[a.name], unit, p)
            residue = _reduce_vector(image, sub[a.dst], rep.dim[a.dst], p)
            cols.append([residue[t] for t in keep[a.dst]])
        mats[a.name] = tuple(
            tuple(col[r] for col in cols) for r in range(new_dim[a.dst])
        )
    return Rep(rep.cd, p, new_dim, mats)


def sub_rep(rep: Rep, sub: GradedSubspace) -> Rep:
    """Restriction of the arrows to an invariant graded subspace, in its basis."""
    p = rep.p
    mats = {}
    new_dim = subspace_dim(sub)
    for a in arrows_of(rep.cd):
        cols = []
        for v in sub[a.src]:
            image = _matvec(rep.mats[a.name], v, p)
            coeffs = _solve_in_basis(image, sub[a.dst], rep.dim[a.dst], p)
            cols.append(coeffs)
        mats[a.name] = tuple(
            tuple(col[r] for col in cols) for r in range(new_dim[a.dst])
        )
    return Rep(rep.cd, p, new_dim, mats)


def _solve_in_basis(v, basis, width, p):
    coeffs = []
    out = list(v)
    for brow in basis:
        lead = next(j for j in range(width) if brow[j])
        c = out[lead]
        coeffs.append(c)
        if c:
            out = [(x - c * y) % p for x, y in zip(out, brow)]
    if any(out):
        raise RepError("vector not in subspace")
    return coeffs


# ---------------------------------------------------------------------------
# stability and filtrations


def slope_of_dim(cd: CartanData, theta, d) -> Fraction:
    return slope(cd, theta, class_of_dim_vector(cd, d))


def is_semistable(rep: Rep, theta, dim_cap: int = DEFAULT_DIM_CAP) -> bool:
    if not validate(rep):
        raise RepError("representation fails the relation or nilpotency")
    if rep.total_dim() == 0:
        raise RepError("zero representation has no slope")
    mu = slope_of_dim(rep.cd, theta, rep.dim)
    for d in submodule_dim_vectors(rep, dim_cap):
        if sum(d) in (0, rep.total_dim()):
            continue
        if slope_of_dim(rep.cd, theta, d) > mu:
            return False
    return True


@dataclass(frozen=True)
class HNFiltration:
    """Chain of submodule dimension vectors with strictly decreasing factor slopes."""

    dims: tuple[tuple[int, ...], ...]  # 0 = first entry, whole module = last
    factor_dims: tuple[tuple[int, ...], ...]
    slopes: tuple[Fraction, ...]

    def __len__(self) -> int:
        return len(self.factor_dims)


def hn_filtration(rep: Rep, theta, dim_cap: int = DEFAULT_DIM_CAP) -> HNFiltration:
    """Greedy filtration: repeatedly split off the maximal destabilizing submodule.

    Ties resolve by maximal slope, then maximal total dimension, then smallest
    dimension vector; the chain is rebuilt bottom-up from the quotient tower.
    """
    if not validate(rep):
        raise RepError("representation fails the relation or nilpotency")
    if rep.total_dim() == 0:
        raise RepError("zero representation has no filtration")
    factor_dims: list[tuple[int, ...]] = []
    slopes: list[Fraction] = []
    current = rep
    while current.total_dim() > 0:
        best = None
        for s in submodules(current, dim_cap):
            d = subspace_dim(s)
            total = sum(d)
            if total == 0:
                continue
            mu = slope_of_dim(current.cd, theta, d)
            key = (mu, total, tuple(-x for x in d))
            if best is None or key > best[0]:
                best = (key, s, d, mu)
        _, space, d, mu = best
        factor_dims.append(d)
        slopes.append(mu)
        current = quotient_rep(current, space)
    # the first factor split off is the deepest; the chain climbs from zero
    dims = [tuple(0 for _ in rep.cd.vertices)]
    for d in factor_dims:
        dims.append(tuple(a + b for a, b in zip(dims[-1], d)))
    return HNFiltration(tuple(dims), tuple(factor_dims), tuple(slopes))


@dataclass(frozen=True)
class Interval:
    """Rational interval with open/closed flags; None endpoints mean infinite."""

    lo: Fraction | None = None
    hi: Fraction | None = None
    lo_open: bool = False
    hi_open: bool = False

    def contains(self, x: Fraction) -> bool:
        if self.lo is not None and (x < self.lo or (self.lo_open and x == self.lo)):
            return False
        if self.hi is not None and (x > self.hi or (self.hi_open and x == self.hi)):
            return False
        return True


def stratum_membership(rep: Rep, theta, interval: Interval, dim_cap: int = DEFAULT_DIM_CAP) -> bool:
    """All filtration factor slopes lie in the interval."""
    hn = hn_filtration(rep, theta, dim_cap)
    return all(interval.contains(mu) for mu in hn.slopes)
