"""Strict adjunctions: laws, hom-isomorphisms, composites and extensions."""
from dataclasses import dataclass, field

from .constructions import truncate
from .errors import NotComposable, OmegaCatError, RestrictionMismatch
from .functors import (FunctorData, ModificationData, check_functor, check_modification,
                       compose_functors, compose_modifications, identity_functor,
                       identity_modification, whisker_left, whisker_right)
from .presheaf import hom_cells
from .report import ValidationReport


@dataclass
class AdjunctionData:
    """F: L -> L' left adjoint to G: L' -> L with unit 1 -> GF and counit FG -> 1."""

    F: FunctorData
    G: FunctorData
    unit: ModificationData
    counit: ModificationData
    name: str = "adj"

    @property
    def L(self):
        return self.F.source

    @property
    def Lp(self):
        return self.F.target

    def to_dict(self):
        return {"name": self.name, "F": self.F.to_dict(), "G": self.G.to_dict(),
                "unit": self.unit.to_dict(), "counit": self.counit.to_dict()}


def identity_adjunction(P):
    I = identity_functor(P)
    e = identity_modification(I)
    return AdjunctionData(I, I, e, ModificationData(e.name, 0, I, I, e.comp), f"1_{P.name}")


def _same_map(X, Y):
    return X.source is Y.source and X.target is Y.target and X.arr == Y.arr


def check_strict_adjunction(A):
    """Functors, unit and counit naturality, both triangle identities on the nose."""
    F, G = A.F, A.G
    L, Lp = F.source, F.target
    rep = ValidationReport()
    if G.source is not Lp or G.target is not L:
        rep.add("typing", F.name, G.name)
        return rep
    for tag, X in (("functor-F", F), ("functor-G", G)):
        r = check_functor(X, strict=True)
        rep.count(tag, sum(r.counts.values()))
        if not r.ok:
            rep.add(tag, *r.laws())
    if rep.violations:
        return rep
    eta, eps = A.unit, A.counit
    GF, FG = compose_functors(G, F), compose_functors(F, G)
    if not (isinstance(eta.dom, FunctorData) and _same_map(eta.dom, identity_functor(L))
            and _same_map(eta.cod, GF)):
        rep.add("unit-type", eta.name)
    if not (isinstance(eps.dom, FunctorData) and _same_map(eps.dom, FG)
            and _same_map(eps.cod, identity_functor(Lp))):
        rep.add("counit-type", eps.name)
    if rep.violations:
        return rep
    for tag, M in (("unit-naturality", eta), ("counit-naturality", eps)):
        r = check_modification(M)
        rep.count(tag, r.counts.get("naturality", 0) + r.counts.get("component", 0))
        for law, wit in r.violations:
            rep.add(tag, law, *wit)
    if rep.violations:
        return rep
    for a in L.objects():
        rep.count("triangle-F")
        lhs = Lp.compose(1, eps(F((a, 0))[0]), F(eta(a)))
        if lhs != Lp.e(F((a, 0))):
            rep.add("triangle-F", L.ids[a], Lp.label(lhs))
    for b in Lp.objects():
        rep.count("triangle-G")
        lhs = L.compose(1, G(eps(b)), eta(G((b, 0))[0]))
        if lhs != L.e(G((b, 0))):
            rep.add("triangle-G", Lp.ids[b], L.label(lhs))
    return rep


@dataclass
class HomIsoPair:
    """theta[(a, b)]: L(a, G b) -> L'(F a, b) and theta_star back, as cell maps."""

    theta: dict = field(default_factory=dict)
    theta_star: dict = field(default_factory=dict)
    report: ValidationReport = field(default_factory=ValidationReport)

    def sizes(self):
        return {k: len(v) for k, v in self.theta.items()}


def theta_cell(A, b, f):
    """e^n(eps_b) o_{n+1} F(f) for f in L(a, G b)."""
    return A.Lp.horizontal(A.counit(b), A.F(f))


def theta_star_cell(A, a, g):
    """G(g) o_{n+1} e^n(eta_a) for g in L'(F a, b)."""
    return A.L.horizontal(A.G(g), A.unit(a))


def hom_iso_from_unit_counit(A):
    """Build theta, theta* on every hom-set and check inverse laws and naturality."""
    L, Lp, F, G = A.L, A.Lp, A.F, A.G
    pair = HomIsoPair()
    rep = pair.report
    for a in L.objects():
        for b in Lp.objects():
            Gb, Fa = G((b, 0))[0], F((a, 0))[0]
            src = hom_cells(L, a, Gb)
            tgt = hom_cells(Lp, Fa, b)
            th = {f: theta_cell(A, b, f) for f in src}
            ts = {g: theta_star_cell(A, a, g) for g in tgt}
            pair.theta[(a, b)] = th
            pair.theta_star[(a, b)] = ts
            for f, g in th.items():
                rep.count("inverse")
                if ts.get(g) != f:
                    rep.add("inverse", L.ids[a], Lp.ids[b], L.label(f))
            for g, f in ts.items():
                rep.count("inverse")
                if th.get(f) != g:
                    rep.add("inverse", L.ids[a], Lp.ids[b], Lp.label(g))
    _theta_naturality(A, pair)
    return pair


def _theta_naturality(A, pair):
    """theta(G(y) * f * x) = y * theta(f) * F(x), for x, y 1-cells and any f,
    and for f a 1-cell with x, y of equal higher degree."""
    L, Lp, F, G = A.L, A.Lp, A.F, A.G
    rep = pair.report
    by_deg = {}
    for m in range(1, L.N + 1):
        for i in L.cells(m):
            by_deg.setdefault(("L", m), []).append((i, 0))
    for m in range(1, Lp.N + 1):
        for i in Lp.cells(m):
            by_deg.setdefault(("Lp", m), []).append((i, 0))
    tops = min(L.N, Lp.N)
    for m in range(1, tops + 1):
        for x in by_deg.get(("L", m), []):
            a2, a = L.dk(x, m)[0], L.ck(x, m)[0]
            for y in by_deg.get(("Lp", m), []):
                b, b2 = Lp.dk(y, m)[0], Lp.ck(y, m)[0]
                th = pair.theta[(a, b)]
                for f in th:
                    if m > 1 and L.vdeg(f) != 1:
                        continue
                    rep.count("theta-naturality")
                    try:
                        left = pair.theta[(a2, b2)][L.horizontal(L.horizontal(G(y), f), x)]
                        right = Lp.horizontal(Lp.horizontal(y, th[f]), F(x))
                    except (KeyError, OmegaCatError):
                        rep.add("theta-naturality", L.label(x), Lp.label(y), L.label(f))
                        continue
                    if left != right:
                        rep.add("theta-naturality", L.label(x), Lp.label(y), L.label(f))


def compose_adjunctions(A1, A2):
    """F2 F1 -| G1 G2 with unit G1 eta2 F1 o eta1 and counit eps2 o F2 eps1 G2."""
    if A1.Lp is not A2.L:
        raise NotComposable("middle categories differ")
    F = compose_functors(A2.F, A1.F)
    G = compose_functors(A1.G, A2.G)
    eta = compose_modifications(1, whisker_left(A1.G, whisker_right(A2.unit, A1.F)), A1.unit)
    eps = compose_modifications(1, A2.counit, whisker_left(A2.F, whisker_right(A1.counit, A2.G)))
    eta = ModificationData(f"eta({A2.name}.{A1.name})", 0, identity_functor(F.source),
                           compose_functors(G, F), eta.comp)
    eps = ModificationData(f"eps({A2.name}.{A1.name})", 0, compose_functors(F, G),
                           identity_functor(F.target), eps.comp)
    return AdjunctionData(F, G, eta, eps, f"{A2.name}.{A1.name}")


def reverse_equivalence(A):
    """G -| F from an adjoint equivalence F -| G, with inverted unit and counit."""
    L, Lp = A.L, A.Lp
    eta_inv, eps_inv = {}, {}
    for a in L.objects():
        g = _strict_inverse(L, A.unit(a))
        if g is None:
            raise OmegaCatError(f"unit at {L.ids[a]} is not invertible")
        eta_inv[a] = g
    for b in Lp.objects():
        g = _strict_inverse(Lp, A.counit(b))
        if g is None:
            raise OmegaCatError(f"counit at {Lp.ids[b]} is not invertible")
        eps_inv[b] = g
    unit = ModificationData(f"{A.counit.name}^-1", 0, identity_functor(Lp),
                            compose_functors(A.F, A.G), eps_inv)
    counit = ModificationData(f"{A.unit.name}^-1", 0, compose_functors(A.G, A.F),
                              identity_functor(L), eta_inv)
    return AdjunctionData(A.G, A.F, unit, counit, f"rev({A.name})")


def _strict_inverse(P, f):
    a, b = P.d(f), P.c(f)
    for g in P.arrows(b, a):
        if P.compose(1, g, f) == P.e(a) and P.compose(1, f, g) == P.e(b):
            return g
    return None


# -- extension along truncation --------------------------------------------

def restrict_adjunction(A, n=1):
    """The part of A on cells of degree <= n."""
    L, Lp = truncate(A.L, n), truncate(A.Lp, n)

    def move(X, T, v):
        c = X.target.vc(v)
        return T.norm(T.index[c.base], c.power)

    def restrict(X, S, T):
        return FunctorData(X.name, S, T, {i: move(X, T, X(X.source.v(S.ids[i])))
                                          for i in range(len(S))})

    F, G = restrict(A.F, L, Lp), restrict(A.G, Lp, L)
    eta = ModificationData(A.unit.name, 0, identity_functor(L), compose_functors(G, F),
                           {a: move(A.G, L, A.unit(A.L.index[L.ids[a]])) for a in L.objects()})
    eps = ModificationData(A.counit.name, 0, compose_functors(F, G), identity_functor(Lp),
                           {b: move(A.F, Lp, A.counit(A.Lp.index[Lp.ids[b]])) for b in Lp.objects()})
    return AdjunctionData(F, G, eta, eps, A.name)


def check_extension_adjunction(A_low, A_full):
    """A_full is a strict adjunction given that it restricts to A_low.

    The unit and counit of A_full are set-theoretically those of A_low, so
    the triangle identities transfer; what remains is naturality of the
    extended unit and counit on the new higher cells and functoriality.
    """
    low = restrict_adjunction(A_full, A_low.L.N)
    for X, Y in ((low.L, A_low.L), (low.Lp, A_low.Lp)):
        if X.to_dict()["cells"] != Y.to_dict()["cells"]:
            raise RestrictionMismatch(f"{Y.name} is not the truncation of the extension")
    for X, Y in ((low.F, A_low.F), (low.G, A_low.G)):
        if dict(X.items()) != dict(Y.items()):
            raise RestrictionMismatch(f"{Y.name} differs from the restricted functor")
    for X, Y in ((low.unit, A_low.unit), (low.counit, A_low.counit)):
        if X.to_dict()["components"] != Y.to_dict()["components"]:
            raise RestrictionMismatch(f"{Y.name} differs from the restricted components")
    if not check_strict_adjunction(A_low).ok:
        raise RestrictionMismatch("the truncated situation is not an adjunction")
    return check_strict_adjunction(A_full).ok
