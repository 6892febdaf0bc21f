"""Nonstandard positive-half root sets and truncated graded characters.

For a subset J of the finite vertices (with an ample coweight for J) there is
a filtered family of root sets, the k-th being the shear-translate of the
base one by 2k copies of the coweight:

    base (k=0):  (lam, alpha) >= 0  and  (alpha negative finite, n = 0)
                                     or  (alpha in the finite set or zero, n < 0)

Unfolding the translate gives three branches: negative roots of the
complementary subsystem at level zero; the full complementary subsystem and
the imaginary line at negative levels; and positive roots with support
touching J at levels below 2k times their pairing with the coweight.  The
union over k replaces the last bound by all levels.

Characters are tabulated over explicit level windows.  A weight space is
one-dimensional for real roots and has dimension the finite rank on the
imaginary line; the central coordinates c_{k,l} (k < 0, l >= 1) add one more
dimension there at positive t-degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, floor

from .cartan import CartanData, connected_components, finite_roots
from .lattices import (
    FiniteCoweight,
    Root,
    canonical_pairing,
    embed_finite_coweight,
    finite_coweight,
    is_piJ_ample,
    is_zero,
    vadd,
    vscale,
)


@dataclass(frozen=True)
class AffineRealRoot:
    """Finite part (possibly zero) plus an integer level; not both trivial."""

    alpha: Root
    n: int

    def __post_init__(self) -> None:
        if is_zero(self.alpha) and self.n == 0:
            raise ValueError("the zero vector is not a root")

    def vector(self, cd: CartanData) -> Root:
        return vadd(self.alpha, vscale(self.n, cd.marks))


def _alpha_support_sets(cd: CartanData, J) -> tuple[frozenset[Root], frozenset[Root]]:
    """(roots supported on the complement of J, the positive ones among them)."""
    J = set(J)
    comp = {i for i in cd.finite_vertices if i not in J}
    supported = frozenset(
        alpha
        for alpha in finite_roots(cd)
        if all(alpha[i] == 0 or i in comp for i in cd.vertices)
    )
    positive = frozenset(a for a in supported if any(c > 0 for c in a))
    return supported, positive


def _pairing(cd: CartanData, lam: FiniteCoweight, alpha: Root) -> Fraction:
    return canonical_pairing(embed_finite_coweight(cd, finite_coweight(lam)), alpha)


def _check_ample(cd: CartanData, lam: FiniteCoweight, J) -> None:
    if not is_piJ_ample(cd, finite_coweight(lam), J):
        raise ValueError("coweight is not ample for J")


def in_Delta_J_k(cd: CartanData, beta: AffineRealRoot, J, k: int, lam: FiniteCoweight) -> bool:
    """Membership in the k-th root set (the shear-translate of the base one)."""
    _check_ample(cd, lam, J)
    alpha, n = beta.alpha, beta.n
    if is_zero(alpha):
        return n < 0
    if alpha not in finite_roots(cd):
        raise ValueError("finite part is not a root")
    comp_roots, comp_pos = _alpha_support_sets(cd, J)
    if alpha in comp_roots:
        if alpha in comp_pos:
            return n < 0
        return n <= 0
    if any(c > 0 for c in alpha):
        return Fraction(n) < 2 * k * _pairing(cd, lam, alpha)
    return False


def in_Delta_J(cd: CartanData, beta: AffineRealRoot, J, lam: FiniteCoweight) -> bool:
    """Membership in the union over all k: the level bound on J-supported
    positive roots disappears."""
    _check_ample(cd, lam, J)
    alpha, n = beta.alpha, beta.n
    if is_zero(alpha):
        return n < 0
    if alpha not in finite_roots(cd):
        raise ValueError("finite part is not a root")
    comp_roots, comp_pos = _alpha_support_sets(cd, J)
    if alpha in comp_roots:
        return n < 0 if alpha in comp_pos else n <= 0
    return any(c > 0 for c in alpha)


def window_roots(cd: CartanData, window: int):
    """All affine roots with |level| bounded by the window."""
    out = []
    zero = tuple(0 for _ in cd.vertices)
    for n in range(-window, window + 1):
        for alpha in finite_roots(cd):
            out.append(AffineRealRoot(alpha, n))
        if n != 0:
            out.append(AffineRealRoot(zero, n))
    return out


@dataclass
class RootSetReport:
    ok: bool
    failures: list[str] = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)


def union_witness(cd: CartanData, beta: AffineRealRoot, J, lam: FiniteCoweight) -> int:
    """Minimal k with beta in the k-th set, for beta in the union."""
    alpha, n = beta.alpha, beta.n
    if is_zero(alpha) or n < 0 or in_Delta_J_k(cd, beta, J, 0, lam):
        return 0
    pairing = _pairing(cd, lam, alpha)
    k = floor(Fraction(n) / (2 * pairing)) + 1
    return max(k, 0)


def check_chain_and_union(
    cd: CartanData, J, lam: FiniteCoweight, k_max: int, window: int
) -> RootSetReport:
    """Chain inclusions up to k_max and union recovery with recorded witnesses."""
    _check_ample(cd, lam, J)
    report = RootSetReport(ok=True)
    for beta in window_roots(cd, window):
        for k in range(k_max):
            if in_Delta_J_k(cd, beta, J, k, lam) and not in_Delta_J_k(cd, beta, J, k + 1, lam):
                report.ok = False
                report.failures.append(f"chain break at k={k}: {beta}")
        if in_Delta_J(cd, beta, J, lam):
            k = union_witness(cd, beta, J, lam)
            if not in_Delta_J_k(cd, beta, J, k, lam):
                report.ok = False
                report.failures.append(f"union witness fails: {beta}")
            else:
                report.witnesses[beta] = k
        elif any(in_Delta_J_k(cd, beta, J, k, lam) for k in range(k_max + 1)):
            report.ok = False
            report.failures.append(f"set escapes the union: {beta}")
    return report


def positivity_axioms(cd: CartanData, J, lam: FiniteCoweight, window: int) -> RootSetReport:
    """Partition of the windowed roots into the set and its negative, plus
    additive closure inside the window."""
    _check_ample(cd, lam, J)
    report = RootSetReport(ok=True)
    roots = window_roots(cd, window)
    members: set[tuple[Root, int]] = set()
    for beta in roots:
        inside = in_Delta_J(cd, beta, J, lam)
        neg = AffineRealRoot(tuple(-c for c in beta.alpha), -beta.n)
        neg_inside = in_Delta_J(cd, neg, J, lam)
        if inside == neg_inside:
            report.ok = False
            report.failures.append(f"partition fails at {beta}")
        if inside:
            members.add((beta.alpha, beta.n))
    finite = finite_roots(cd)
    for a_alpha, a_n in members:
        for b_alpha, b_n in members:
            s_alpha = vadd(a_alpha, b_alpha)
            s_n = a_n + b_n
            if abs(s_n) > window:
                continue
            if is_zero(s_alpha):
                if s_n == 0:
                    continue
                total = AffineRealRoot(s_alpha, s_n)
            elif s_alpha in finite:
                total = AffineRealRoot(s_alpha, s_n)
            else:
                continue
            if not in_Delta_J(cd, total, J, lam):
                report.ok = False
                report.failures.append(
                    f"closure fails: {(a_alpha, a_n)} + {(b_alpha, b_n)}"
                )
    return report


# ---------------------------------------------------------------------------
# characters


@dataclass
class CharacterTable:
    """Map (weight vector, t-degree) -> dimension over a declared window."""

    entries: dict
    window: int
    t_max: int

    def dim(self, weight: Root, t: int) -> int:
        return self.entries.get((tuple(weight), t), 0)

    def rows(self) -> list[tuple[list[int], int, int]]:
        return [
            (list(w), t, d) for (w, t), d in sorted(self.entries.items()) if d
        ]

    def to_json(self) -> list[dict]:
        return [{"weight": w, "t": t, "dim": d} for w, t, d in self.rows()]

    def to_csv(self) -> str:
        lines = ["weight,t,dim"]
        for w, t, d in self.rows():
            lines.append('"' + " ".join(str(c) for c in w) + f'",{t},{d}')
        return "\n".join(lines)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CharacterTable):
            return NotImplemented
        keys = set(self.entries) | set(other.entries)
        return all(
            self.entries.get(k, 0) == other.entries.get(k, 0) for k in keys
        )


def _bump(entries: dict, weight: Root, t: int, amount: int) -> None:
    key = (tuple(weight), t)
    entries[key] = entries.get(key, 0) + amount
    if entries[key] == 0:
        del entries[key]


def character_n_ell_J(
    cd: CartanData, J, lam: FiniteCoweight, window: int, t_max: int
) -> tuple[CharacterTable, CharacterTable]:
    """The graded character two ways: from the root-set form and from the
    explicit loop/Levi/Heisenberg decomposition (overlap counted once)."""
    _check_ample(cd, lam, J)
    e = cd.e

    a_entries: dict = {}
    for beta in window_roots(cd, window):
        if not in_Delta_J(cd, beta, J, lam):
            continue
        dim = e if is_zero(beta.alpha) else 1
        w = beta.vector(cd)
        for t in range(t_max + 1):
            _bump(a_entries, w, t, dim)
    for k in range(-window, 0):
        for t in range(1, t_max + 1):
            _bump(a_entries, vscale(k, cd.marks), t, 1)

    comp = [i for i in cd.finite_vertices if i not in set(J)]
    comp_roots, comp_pos = _alpha_support_sets(cd, J)
    b_entries: dict = {}
    for alpha in finite_roots(cd):
        positive = any(c > 0 for c in alpha)
        if positive and alpha not in comp_pos:
            # loop piece: every level for J-supported positive roots
            for n in range(-window, window + 1):
                w = vadd(alpha, vscale(n, cd.marks))
                for t in range(t_max + 1):
                    _bump(b_entries, w, t, 1)
        if alpha in comp_roots:
            # affinized Levi: negative half at level zero, everything below
            levels = range(-window, 0 if positive else 1)
            for n in levels:
                w = vadd(alpha, vscale(n, cd.marks))
                for t in range(t_max + 1):
                    _bump(b_entries, w, t, 1)
    for n in range(-window, 0):
        w = vscale(n, cd.marks)
        for t in range(t_max + 1):
            _bump(b_entries, w, t, len(comp))   # Levi Cartan part
            _bump(b_entries, w, t, e)           # full Cartan string in s^{-1}
            _bump(b_entries, w, t, -len(comp))  # shared piece counted once
    for k in range(-window, 0):
        for t in range(1, t_max + 1):
            _bump(b_entries, vscale(k, cd.marks), t, 1)

    return (
        CharacterTable(a_entries, window, t_max),
        CharacterTable(b_entries, window, t_max),
    )


@dataclass
class PBWCharacter:
    """Multiset counts from the windowed basis, graded by symmetric degree."""

    per_degree: dict  # degree -> {(weight, t): count}
    window: int
    t_max: int
    max_degree: int

    def table(self, degree: int) -> CharacterTable:
        return CharacterTable(dict(self.per_degree.get(degree, {})), self.window, self.t_max)

    def total(self, weight: Root, t: int) -> int:
        key = (tuple(weight), t)
        return sum(self.per_degree.get(q, {}).get(key, 0) for q in self.per_degree)


def _basis_slots(cd: CartanData, J, lam, window: int, t_max: int, k: int | None):
    """Windowed basis families (weight, t-degree, dimension) of the chosen half."""
    slots = []
    for beta in window_roots(cd, window):
        member = (
            in_Delta_J(cd, beta, J, lam)
            if k is None
            else in_Delta_J_k(cd, beta, J, k, lam)
        )
        if not member:
            continue
        dim = cd.e if is_zero(beta.alpha) else 1
        w = beta.vector(cd)
        for t in range(t_max + 1):
            slots.append((w, t, dim))
    for kk in range(-window, 0):
        for t in range(1, t_max + 1):
            slots.append((vscale(kk, cd.marks), t, 1))
    return slots


def pbw_character(
    cd: CartanData,
    J,
    lam: FiniteCoweight,
    window: int,
    t_max: int,
    k: int | None = None,
    max_degree: int = 3,
    work_cap: int = 400_000,
) -> PBWCharacter:
    """Graded dimensions of the symmetric algebra on the windowed basis.

    Counts are exact per symmetric degree (a family of dimension D contributes
    multichoose(D, m) for m copies); totals are therefore truncations of the
    enveloping-algebra character, which has no finite weight spaces without
    the window.  Exceeding the work cap raises instead of degrading silently.
    """
    _check_ample(cd, lam, J)
    slots = _basis_slots(cd, J, lam, window, t_max, k)
    zero_w = tuple(0 for _ in cd.vertices)
    state: dict = {(zero_w, 0, 0): 1}
    for w, t, dim in slots:
        new_state = dict(state)
        for (weight, tdeg, degree), count in state.items():
            m = 1
            while degree + m <= max_degree:
                new_t = tdeg + m * t
                if new_t > max_degree * t_max:
                    break
                new_weight = vadd(weight, vscale(m, w))
                key = (tuple(new_weight), new_t, degree + m)
                ways = comb(dim + m - 1, m)
                new_state[key] = new_state.get(key, 0) + count * ways
                m += 1
        state = new_state
        if len(state) > work_cap:
            raise RuntimeError("window too large for the multiset enumeration")
    per_degree: dict = {}
    for (weight, tdeg, degree), count in state.items():
        if degree == 0:
            continue
        per_degree.setdefault(degree, {})
        key = (weight, tdeg)
        per_degree[degree][key] = per_degree[degree].get(key, 0) + count
    return PBWCharacter(per_degree, window, t_max, max_degree)
