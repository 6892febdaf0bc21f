"""Root and coweight lattices with exact pairings and root classification.

Roots live in the lattice spanned by the simple roots, as integer tuples
indexed by the affine vertex set (index 0 is the affine node).  Coweights are
Fraction tuples over the fundamental-coweight basis; a coweight doubles as a
linear functional on roots via the diagonal pairing.  Finite coweights are
Fraction tuples over the finite fundamental-coweight basis and embed into the
level-zero hyperplane.  No floating point enters any predicate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cartan import CartanData, finite_roots

Root = tuple[int, ...]
Coweight = tuple[Fraction, ...]
FiniteCoweight = tuple[Fraction, ...]


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vneg(a):
    return tuple(-x for x in a)


def vscale(c, a):
    return tuple(c * x for x in a)


def is_zero(a) -> bool:
    return all(x == 0 for x in a)


def coweight(coords) -> Coweight:
    return tuple(Fraction(c) for c in coords)


def finite_coweight(coords) -> FiniteCoweight:
    return tuple(Fraction(c) for c in coords)


def root(coords) -> Root:
    return tuple(int(c) for c in coords)


def cartan_pairing(cd: CartanData, i: int, v) -> int:
    """<coroot_i, v>, computed from the generalised Cartan matrix."""
    return sum(cd.cartan[i][j] * v[j] for j in cd.vertices)


def canonical_pairing(theta: Coweight, v) -> Fraction:
    """(theta, v) in the diagonal bases: fundamental coweights against simple roots."""
    return sum(t * c for t, c in zip(theta, v))


def delta(cd: CartanData) -> Root:
    return cd.marks


def fundamental_coweight(cd: CartanData, i: int) -> Coweight:
    return tuple(Fraction(1) if j == i else Fraction(0) for j in cd.vertices)


def rho_check(cd: CartanData) -> Coweight:
    """Sum of all fundamental coweights; pairs with delta to the Coxeter number."""
    return tuple(Fraction(1) for _ in cd.vertices)


def coroot_coweight(cd: CartanData, i: int) -> Coweight:
    """The simple coroot as a functional on the root lattice (row i of the Cartan matrix)."""
    return tuple(Fraction(cd.cartan[i][j]) for j in cd.vertices)


def finite_fundamental_coweight(cd: CartanData, i: int) -> FiniteCoweight:
    if i not in cd.finite_vertices:
        raise ValueError("finite coweights are indexed by finite vertices")
    return tuple(Fraction(1) if j == i else Fraction(0) for j in cd.finite_vertices)


def finite_coroot(cd: CartanData, i: int) -> FiniteCoweight:
    """Simple coroot over the finite fundamental-coweight basis (finite Cartan row)."""
    return tuple(Fraction(cd.cartan[i][j]) for j in cd.finite_vertices)


def embed_finite_coweight(cd: CartanData, lam: FiniteCoweight) -> Coweight:
    """Embed a finite coweight into the hyperplane pairing to zero with delta."""
    lam = finite_coweight(lam)
    zeroth = -sum((c * cd.marks[i] for c, i in zip(lam, cd.finite_vertices)), Fraction(0))
    return (zeroth,) + lam


@dataclass(frozen=True)
class RootClass:
    kind: str                       # "real" | "imaginary" | "not_root"
    finite_part: Root | None = None
    level: int = 0

    @property
    def is_real(self) -> bool:
        return self.kind == "real"

    @property
    def is_imaginary(self) -> bool:
        return self.kind == "imaginary"


def classify_root(cd: CartanData, v: Root) -> RootClass:
    """Split v = alpha + n*delta and classify against the finite root set."""
    n = v[0]
    alpha = vsub(v, vscale(n, cd.marks))
    if is_zero(alpha):
        if n == 0:
            return RootClass("not_root")
        return RootClass("imaginary", None, n)
    if alpha in finite_roots(cd):
        return RootClass("real", alpha, n)
    return RootClass("not_root")


def is_root(cd: CartanData, v: Root) -> bool:
    return classify_root(cd, v).kind != "not_root"


def simple_class(cd: CartanData, i: int) -> Root:
    """Lattice class of the i-th vertex simple: 2*delta - alpha_0 at the affine node,
    minus alpha_{kappa(i)} at finite nodes."""
    if i == 0:
        return tuple(2 * cd.marks[j] - (1 if j == 0 else 0) for j in cd.vertices)
    k = cd.kappa[i]
    return tuple(-1 if j == k else 0 for j in cd.vertices)


def class_of_dim_vector(cd: CartanData, d) -> Root:
    """Lattice class of a composition series with multiplicities d over the vertices."""
    out = tuple(0 for _ in cd.vertices)
    for i in cd.vertices:
        if d[i]:
            out = vadd(out, vscale(d[i], simple_class(cd, i)))
    return out


def skyscraper_class(cd: CartanData) -> Root:
    return cd.marks


def is_piJ_ample(cd: CartanData, lam: FiniteCoweight, J) -> bool:
    """Pairs strictly positively with the walls indexed by J and zero elsewhere."""
    J = set(J)
    lam = finite_coweight(lam)
    for idx, i in enumerate(cd.finite_vertices):
        value = lam[idx]
        if i in J:
            if value <= 0:
                return False
        elif value != 0:
            return False
    return True


# ---------------------------------------------------------------------------
# JSON forms


def root_to_json(cd: CartanData, v: Root) -> dict:
    return {"type": str(cd.dynkin), "basis": "alpha", "coords": list(v)}


def root_from_json(obj: dict) -> Root:
    return tuple(int(c) for c in obj["coords"])


def coweight_to_json(theta, basis: str = "omega") -> dict:
    coords = [[str(Fraction(c).numerator), str(Fraction(c).denominator)] for c in theta]
    return {"basis": basis, "coords": coords}


def coweight_from_json(obj: dict):
    return tuple(Fraction(int(num), int(den)) for num, den in obj["coords"])
