"""Independent oracles shared between the unit tests and the acceptance suite."""

from __future__ import annotations

from heartlab.preproj import (
    _reduce_vector,
    _rref,
    is_semistable,
    quotient_rep,
    slope_of_dim,
    sub_rep,
    submodules,
    subspace_dim,
)


def graded_contains(space, sub, p):
    """Row-space containment per vertex (sub <= space)."""
    for i, rows in enumerate(sub):
        for v in rows:
            if any(_reduce_vector(v, space[i], len(v), p)):
                return False
    return True


def factor_rep(rep, lower, upper):
    """Subquotient upper/lower realized as a representation."""
    q = quotient_rep(rep, lower)
    keep = []
    for i in rep.cd.vertices:
        pivots = {next(j for j in range(rep.dim[i]) if row[j]) for row in lower[i]}
        keep.append([j for j in range(rep.dim[i]) if j not in pivots])
    image = tuple(
        _rref(
            [
                tuple(
                    _reduce_vector(v, lower[i], rep.dim[i], rep.p)[t] for t in keep[i]
                )
                for v in upper[i]
            ],
            len(keep[i]),
            rep.p,
        )
        for i in rep.cd.vertices
    )
    return sub_rep(q, image)


def exhaustive_hn_chains(rep, theta, subs=None):
    """All filtrations with semistable factors and strictly decreasing slopes."""
    subs = submodules(rep) if subs is None else subs
    zero = next(s for s in subs if sum(subspace_dim(s)) == 0)
    chains = []

    def extend(chain, last_slope):
        current = chain[-1]
        if subspace_dim(current) == rep.dim:
            chains.append(list(chain))
            return
        for cand in subs:
            d = subspace_dim(cand)
            if sum(d) <= sum(subspace_dim(current)):
                continue
            if not graded_contains(cand, current, rep.p):
                continue
            fac = factor_rep(rep, current, cand)
            mu = slope_of_dim(rep.cd, theta, fac.dim)
            if last_slope is not None and mu >= last_slope:
                continue
            if not is_semistable(fac, theta):
                continue
            extend(chain + [cand], mu)

    extend([zero], None)
    return chains
