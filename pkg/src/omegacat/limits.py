"""Diagrams over finite graph presentations, cones, strict and weak limits."""
import itertools
from dataclasses import dataclass

from .constructions import hom_category, opposite
from .core import Category
from .errors import MalformedInput, OmegaCatError, SearchLimitExceeded
from .functors import (FunctorData, candidate_quasi_inverse, check_equivalence_pair,
                       check_functor, search_limit)


class GraphPresentation:
    """A globular set: nodes (id, degree, dom, cod) with d d = d c, c d = c c."""

    def __init__(self, name, nodes):
        self.name = name
        self.nodes = {}
        for rec in nodes:
            nid, deg, dom, cod = (list(rec) + [None, None])[:4]
            if nid in self.nodes:
                raise MalformedInput(f"duplicate node {nid}")
            self.nodes[nid] = (int(deg), dom, cod)
        for nid, (deg, dom, cod) in self.nodes.items():
            if deg == 0:
                continue
            for x in (dom, cod):
                if x not in self.nodes or self.nodes[x][0] != deg - 1:
                    raise MalformedInput(f"node {nid}: bad boundary {x}")
            if deg >= 2:
                if self.nodes[dom][1] != self.nodes[cod][1] or self.nodes[dom][2] != self.nodes[cod][2]:
                    raise MalformedInput(f"node {nid}: boundaries are not parallel")

    def objects(self):
        return sorted(n for n, r in self.nodes.items() if r[0] == 0)

    def degree(self, n):
        return self.nodes[n][0]

    def ends(self, n):
        """Source and target vertices of a node of positive degree."""
        s = t = n
        while self.nodes[s][0] > 0:
            s = self.nodes[s][1]
        while self.nodes[t][0] > 0:
            t = self.nodes[t][2]
        return s, t

    def opposite(self):
        recs = []
        for n, (deg, dom, cod) in sorted(self.nodes.items()):
            recs.append((n, deg, cod, dom) if deg == 1 else (n, deg, dom, cod))
        return GraphPresentation(f"op({self.name})", recs)

    def to_dict(self):
        out = []
        for n, (deg, dom, cod) in sorted(self.nodes.items()):
            row = {"id": n, "degree": deg}
            if deg:
                row.update(dom=dom, cod=cod)
            out.append(row)
        return {"name": self.name, "nodes": out}


class DiagramData:
    """A strict map of globular sets from a graph into a category."""

    def __init__(self, graph, target, assignment):
        self.graph = graph
        self.target = target
        self.at = {}
        for n, x in dict(assignment).items():
            self.at[n] = target.v(x) if isinstance(x, str) else x
        missing = set(graph.nodes) - set(self.at)
        if missing:
            raise MalformedInput(f"diagram misses nodes {sorted(missing)}")

    def __call__(self, n):
        return self.at[n]

    def check(self):
        P, G = self.target, self.graph
        bad = []
        for n, (deg, dom, cod) in G.nodes.items():
            x = self.at[n]
            if P.vdeg(x) != deg:
                bad.append(("degree", n))
            elif deg and (P.d(x) != self.at[dom] or P.c(x) != self.at[cod]):
                bad.append(("boundary", n))
        return bad

    def to_dict(self):
        return {"graph": self.graph.to_dict(), "target": self.target.name,
                "assignment": {n: self.target.label(x) for n, x in sorted(self.at.items())}}


def constant_diagram(P, a, graph):
    """Delta(a): every node of degree k goes to e^k(a)."""
    o = P.v(a) if isinstance(a, str) else (a, 0) if isinstance(a, int) else a
    return DiagramData(graph, P, {n: P.e(o, r[0]) for n, r in graph.nodes.items()})


def opposite_diagram(D, Pop=None):
    Pop = Pop or opposite(D.target)
    G = D.graph.opposite()
    return DiagramData(G, Pop, {n: Pop.norm(Pop.index[D.target.ids[x[0]]], x[1])
                                for n, x in D.at.items()})


# -- cones -------------------------------------------------------------------

class HomIndex:
    """Cells grouped by (source object, target object, degree), with e-iterates."""

    def __init__(self, P):
        self.P = P
        self.groups = {}
        for m in range(1, P.N + 1):
            for i in P.cells(m):
                v = (i, 0)
                key = (P.dk(v, m)[0], P.ck(v, m)[0], m)
                self.groups.setdefault(key, []).append(v)

    def cells(self, z, t, m):
        P = self.P
        if m <= P.N:
            return self.groups.get((z, t, m), [])
        return [P.e(x, m - P.N) for x in self.groups.get((z, t, P.N), [])]


@dataclass
class Cone:
    """A level-n family of components z -> D(g), one per vertex node g."""

    vertex: int
    level: int
    components: tuple  # aligned with graph.objects()

    def label(self, P):
        return f"{self.level}<" + "|".join(P.label(x) for x in self.components) + ">"


def cone_ok(D, z, comps, n, memo=None):
    """Naturality of a level-n family at nodes of degree >= n + 1, boundaries
    recursively valid, all squares strict."""
    P, G = D.target, D.graph
    key = (z, comps, n)
    if memo is not None and key in memo:
        return memo[key]
    objs = G.objects()
    pos = {g: i for i, g in enumerate(objs)}
    ok = True
    if n > 0:
        ds = tuple(P.d(x) for x in comps)
        cs = tuple(P.c(x) for x in comps)
        ok = cone_ok(D, z, ds, n - 1, memo) and cone_ok(D, z, cs, n - 1, memo)
    if ok:
        zc = (z, 0)
        for h, (deg, _, _) in G.nodes.items():
            if deg < max(n + 1, 1):
                continue
            s, t = G.ends(h)
            lhs = P.horizontal(comps[pos[t]], P.e(zc, deg))
            rhs = P.horizontal(D(h), comps[pos[s]])
            if lhs != rhs:
                ok = False
                break
    if memo is not None:
        memo[key] = ok
    return ok


def enumerate_cones(D, z, n, index=None, memo=None, budget=None):
    """All valid level-n cones with vertex z, in a deterministic order."""
    P, G = D.target, D.graph
    index = index or HomIndex(P)
    objs = G.objects()
    choices = [index.cells(z, D(g)[0], n + 1) for g in objs]
    total = 1
    for c in choices:
        total *= len(c)
    if budget is not None:
        budget[0] -= total
        if budget[0] < 0:
            raise SearchLimitExceeded(f"{total} candidate cones exceed the search limit")
    memo = {} if memo is None else memo
    return [Cone(z, n, comps) for comps in itertools.product(*choices)
            if cone_ok(D, z, comps, n, memo)]


def mediated(D, cone, m):
    """The cone obtained by composing the edges of ``cone`` with m: z -> v."""
    P = D.target
    n = P.vdeg(m) - 1
    return Cone(P.dk(m, n + 1)[0], n, tuple(P.horizontal(x, m) for x in cone.components))


def levels(P):
    """Cone levels that carry information; higher ones are e-iterates."""
    return range(max(P.N, 1))


def universality(D, cone, index=None, memo=None, budget=None):
    """For each (z, n): (#mediators, #cones, bijective?)."""
    P = D.target
    index = index or HomIndex(P)
    memo = {} if memo is None else memo
    v = cone.vertex
    cert = {}
    for z in P.objects():
        for n in levels(P):
            cones = enumerate_cones(D, z, n, index, memo, budget)
            meds = index.cells(z, v, n + 1)
            images = [mediated(D, cone, m).components for m in meds]
            target = {c.components for c in cones}
            bij = len(set(images)) == len(images) and set(images) == target
            cert[(P.ids[z], n)] = (len(meds), len(cones), bij)
    return cert


def find_strict_limit(D, vertices=None):
    """First (vertex, level-0 cone) whose mediating maps are bijective at
    every vertex z and level n; None when there is none.

    Returns a dict with the vertex, the edge components and the certificate.
    """
    P = D.target
    bad = D.check()
    if bad:
        raise MalformedInput(f"not a diagram: {bad[:3]}")
    index = HomIndex(P)
    memo = {}
    budget = [search_limit()]
    for v in vertices if vertices is not None else P.objects():
        for cone in enumerate_cones(D, v, 0, index, memo, budget):
            cert = universality(D, cone, index, memo, budget)
            if all(b for _, _, b in cert.values()):
                return {"vertex": P.ids[v], "cone": cone,
                        "edges": dict(zip(D.graph.objects(), (P.label(x) for x in cone.components))),
                        "certificate": cert}
    return None


def find_strict_colimit(D):
    """A strict limit of the opposite diagram in the opposite category."""
    Dop = opposite_diagram(D)
    res = find_strict_limit(Dop)
    if res is not None:
        res["opposite"] = Dop
    return res


# -- weak limits -------------------------------------------------------------

def cone_category(D, z, index=None, memo=None):
    """Cones with vertex z as a category: levels are degrees, d, c, e and
    composites componentwise."""
    P = D.target
    index = index or HomIndex(P)
    memo = {} if memo is None else memo
    top = max(P.N - 1, 0)
    by_level = {n: enumerate_cones(D, z, n, index, memo) for n in range(top + 1)}
    lab = {}
    cells = []
    for n, cs in by_level.items():
        for c in cs:
            lab[n, c.components] = c.label(P)
            if n == 0:
                cells.append((lab[n, c.components], 0, None, None))
            else:
                cells.append((lab[n, c.components], n,
                              lab[n - 1, tuple(P.d(x) for x in c.components)],
                              lab[n - 1, tuple(P.c(x) for x in c.components)]))
    idents, comps = [], []
    for n, cs in by_level.items():
        for c in cs:
            if n < top:
                idents.append((lab[n, c.components], lab[n + 1, tuple(P.e(x) for x in c.components)]))
        for x in cs:
            for y in cs:
                for k in range(1, n + 1):
                    if all(P.composable(k, a, b) for a, b in zip(x.components, y.components)):
                        r = tuple(P.compose(k, a, b) for a, b in zip(x.components, y.components))
                        if (n, r) not in lab:
                            raise OmegaCatError("cones not closed under composition")
                        comps.append((k, lab[n, x.components], lab[n, y.components], lab[n, r]))
    C = Category(f"Cones({P.ids[z]},{D.graph.name})", top, cells, idents, comps)
    return C, lab


def check_weak_limit(D, vertex, edges, inverses=None):
    """L(z, vertex) ~ Cones(z, D) for every z via cone composition.

    ``edges`` lists the level-0 components in graph.objects() order (ids or
    internal cells).  ``inverses`` optionally maps z to a cell map
    Cones -> L(z, vertex); otherwise a candidate is built and verified.
    """
    P = D.target
    v = P.v(vertex)[0] if isinstance(vertex, str) else int(vertex)
    comps = tuple(P.v(x) if isinstance(x, str) else x for x in edges)
    index = HomIndex(P)
    memo = {}
    out = {"vertex": P.ids[v], "per_object": {}}
    if not cone_ok(D, v, comps, 0, memo):
        out["limit"] = False
        out["reason"] = "edges do not form a cone"
        return out
    cone = Cone(v, 0, comps)
    ok = True
    for z in P.objects():
        H = hom_category(P, (z, 0), (v, 0))
        C, lab = cone_category(D, z, index, memo)
        m = {}
        for j in range(len(H)):
            x = (P.index[H.ids[j]], 0)
            m[j] = lab.get((H.vdeg((j, 0)), mediated(D, cone, x).components))
            if m[j] is None:
                m = None
                break
        if m is None:
            out["per_object"][P.ids[z]] = False
            ok = False
            continue
        Phi = FunctorData(f"nu_{P.ids[z]}", H, C, m)
        if inverses and z in inverses:
            Psi = FunctorData(f"nu'_{P.ids[z]}", C, H, inverses[z])
        elif inverses and P.ids[z] in inverses:
            Psi = FunctorData(f"nu'_{P.ids[z]}", C, H, inverses[P.ids[z]])
        else:
            Psi = candidate_quasi_inverse(Phi)
        good = Psi is not None and check_functor(Phi, strict=False).ok and \
            check_functor(Psi, strict=False).ok and check_equivalence_pair(Phi, Psi)["equivalence"]
        out["per_object"][P.ids[z]] = good
        ok = ok and good
    out["limit"] = ok
    return out
