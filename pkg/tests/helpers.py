"""Shared test corpus builders."""
from omegacat.constructions import opposite
from omegacat.fixtures import discrete, iso1
from omegacat.functors import identity_functor
from omegacat.presheaf import constant_presheaf, hom_presheaf, pullback_presheaf


def presheaves(P):
    out = [hom_presheaf(P, P.ids[b]) for b in P.objects()]
    out.append(constant_presheaf(P, iso1()))
    out.append(constant_presheaf(P, discrete(2)))
    H = hom_presheaf(P, P.ids[P.objects()[0]])
    out.append(pullback_presheaf(H, identity_functor(P)))
    Pop = opposite(P)
    out += [hom_presheaf(Pop, Pop.ids[b]) for b in Pop.objects()]
    return out


def cells_of_degree(V, n):
    """F(a)^n including identities above the truncation."""
    if n <= V.N:
        return [(j, 0) for j in V.cells(n)]
    return [V.e((j, 0), n - V.N) for j in V.cells(V.N)]
