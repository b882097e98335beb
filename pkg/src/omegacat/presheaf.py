"""Finite category-valued presheaves, hom-functors, Yoneda and representability."""
from dataclasses import dataclass, field

from .constructions import hom_category, opposite
from .equivalence import EquivalenceSolver
from .errors import OmegaCatError
from .functors import (FunctorData, ModificationData, candidate_quasi_inverse,
                       check_equivalence_pair, check_functor, check_modification)
from .report import ValidationReport


def _obj(P, a):
    """Object index from an index, an id or an internal cell."""
    if isinstance(a, int):
        return a
    return P.v(a)[0]


class PresheafData:
    """F: L^op -> CAT on a finite base.

    ``values[a]`` is a Category for each base object index a.
    ``action0[f]`` is a FunctorData values[c f] -> values[d f] for 1-cells f.
    ``actionN[f]`` maps object indices of values[c^m f] to cells of
    values[d^m f] for base cells f of degree m >= 2.
    """

    def __init__(self, name, base, values, action0, actionN):
        self.name = name
        self.base = base
        self.values = dict(values)
        self.action0 = dict(action0)
        self.actionN = {f: dict(m) for f, m in actionN.items()}

    def value(self, a):
        return self.values[a if isinstance(a, int) else a[0]]

    def ends(self, f):
        """(source object, target object) of a base cell f: source -> target."""
        P = self.base
        m = P.vdeg(f)
        return P.dk(f, m)[0], P.ck(f, m)[0]

    def act(self, f, x):
        """F(f)(x) for a base cell f: b -> a and a cell x of F(a).

        For deg f >= 2 only objects x are allowed.  Virtual base cells act
        as e-iterates of the action of their top cell.
        """
        P = self.base
        i, p = f
        if p > 0:
            b, _ = self.ends(f)
            V = self.value(b)
            if P.deg[i] == 0:
                # e^p of an object acts as the identity, lifted p - 1 times
                return V.e(x, p - 1) if p > 1 else x
            return V.e(self.act((i, 0), x), p)
        if P.deg[i] == 1:
            return self.action0[i](x)
        if P.deg[i] == 0:
            raise OmegaCatError("objects do not act")
        comps = self.actionN[i]
        if x[1] != 0 or x[0] not in comps:
            raise OmegaCatError(f"higher action of {P.ids[i]} is only defined on objects")
        return comps[x[0]]

    def modification(self, f):
        """The action of a base cell of degree m >= 2 as an (m-2)-modification."""
        P = self.base
        m = P.vdeg(f)
        b, a = self.ends(f)
        if m == 2:
            dom, cod = self.functor(P.d(f)), self.functor(P.c(f))
        else:
            dom, cod = self.modification(P.d(f)), self.modification(P.c(f))
        V = self.value(a)
        comps = {x: self.act(f, (x, 0)) for x in V.objects()}
        return ModificationData(f"{self.name}({P.label(f)})", m - 2, dom, cod, comps)

    def functor(self, f):
        if f[1] > 0:
            b, a = self.ends(f)
            V = self.value(a)
            return FunctorData(f"{self.name}(e)", V, V, {j: (j, 0) for j in range(len(V))})
        return self.action0[f[0]]


def hom_presheaf(P, a):
    """L(-, a) with precomposition, higher actions x -> mu(e^n x, f)."""
    ai = _obj(P, a)
    values = {b: hom_category(P, (b, 0), (ai, 0)) for b in P.objects()}

    def to_hom(H, v):
        return H.norm(H.index[P.ids[v[0]]], v[1])

    action0, actionN = {}, {}
    for f in P.cells(1):
        b, c = int(P.dom[f]), int(P.cod[f])
        src, tgt = values[c], values[b]
        m = {}
        for j in range(len(src)):
            x = (P.index[src.ids[j]], 0)
            m[j] = to_hom(tgt, P.horizontal(x, (f, 0)))
        action0[f] = FunctorData(f"L({P.ids[f]},{P.ids[ai]})", src, tgt, m)
    for k in range(2, P.N + 1):
        for f in P.cells(k):
            b, c = P.dk((f, 0), k)[0], P.ck((f, 0), k)[0]
            src, tgt = values[c], values[b]
            comps = {}
            for j in src.objects():
                x = (P.index[src.ids[j]], 0)
                comps[j] = to_hom(tgt, P.horizontal(x, (f, 0)))
            actionN[f] = comps
    return PresheafData(f"L(-,{P.ids[ai]})", P, values, action0, actionN)


def covariant_hom_functor(P, a, Pop=None):
    """L(a, -) presented as a presheaf on L^op."""
    return hom_presheaf(Pop or opposite(P), P.ids[_obj(P, a)])


def constant_presheaf(P, V, name=None):
    """Every object goes to V, every arrow acts as the identity."""
    ident = FunctorData(f"1_{V.name}", V, V, {j: (j, 0) for j in range(len(V))})
    values = {b: V for b in P.objects()}
    action0 = {f: ident for f in P.cells(1)}
    actionN = {}
    for k in range(2, P.N + 1):
        for f in P.cells(k):
            actionN[f] = {x: V.e((x, 0), k - 1) for x in V.objects()}
    return PresheafData(name or f"const({V.name})", P, values, action0, actionN)


def validate_presheaf(F):
    """Functoriality up to componentwise ~ and the modification conditions."""
    P = F.base
    rep = ValidationReport()
    sols = {}

    def sol(V):
        if id(V) not in sols:
            sols[id(V)] = EquivalenceSolver(V)
        return sols[id(V)]

    def same(V, x, y):
        return x == y or sol(V).equivalent(x, y)

    for f in P.cells(1):
        G = F.action0.get(f)
        b, a = int(P.dom[f]), int(P.cod[f])
        rep.count("action-typing")
        if G is None or G.source is not F.values[a] or G.target is not F.values[b]:
            rep.add("action-typing", P.ids[f])
            continue
        r = check_functor(G, strict=False, target_solver=sol(G.target))
        if not r.ok:
            rep.add("action-functor", P.ids[f], *r.laws())
    for k in range(2, P.N + 1):
        for f in P.cells(k):
            b, a = F.ends((f, 0))
            comps = F.actionN.get(f)
            rep.count("action-typing")
            if comps is None or set(comps) != set(F.values[a].objects()):
                rep.add("action-typing", P.ids[f])
    if rep.violations:
        return rep

    # F(e a) is the identity up to ~ on every cell
    for a in P.objects():
        if P.N < 1:
            break
        ea = P.e((a, 0))
        V = F.values[a]
        for j in range(len(V)):
            rep.count("unit")
            if not same(V, F.act(ea, (j, 0)), (j, 0)):
                rep.add("unit", P.ids[a], V.ids[j])

    # higher cells: boundaries, e and the naturality squares
    for k in range(2, P.N + 1):
        for f in P.cells(k):
            M = None
            try:
                M = F.modification((f, 0))
            except OmegaCatError:
                rep.add("action-boundary", P.ids[f])
                continue
            r = check_modification(M, sol(M.target))
            rep.count("action-boundary")
            if not r.ok:
                law = "action-boundary" if any(l.startswith("component") for l in r.laws()) \
                    else "action-naturality"
                rep.add(law, P.ids[f])
    for f in P.cells(1) if P.N >= 2 else []:
        ef = P.e((f, 0))
        b, a = F.ends(ef)
        V, W = F.values[a], F.values[b]
        for x in V.objects():
            rep.count("identity")
            if not same(W, F.act(ef, (x, 0)), W.e(F.act((f, 0), (x, 0)))):
                rep.add("identity", P.ids[f], V.ids[x])

    # composites, contravariantly
    for (k, f, g), h in sorted(P.entries.items()):
        fv, gv, hv = P.v(f), P.v(g), P.v(h)
        m = P.vdeg(fv)
        b, a = F.ends(hv)
        V, W = F.values[a], F.values[b]
        rep.count("composition")
        try:
            if m == 1:
                for j in range(len(V)):
                    x = (j, 0)
                    if not same(W, F.act(hv, x), F.act(gv, F.act(fv, x))):
                        rep.add("composition", k, f, g, V.ids[j])
                        break
            elif k < m:
                for x in V.objects():
                    lhs = F.act(hv, (x, 0))
                    rhs = W.compose(k, F.act(fv, (x, 0)), F.act(gv, (x, 0)))
                    if not same(W, lhs, rhs):
                        rep.add("composition", k, f, g, V.ids[x])
                        break
            else:
                # horizontal: F(f o_m g) = F(g) * F(f) in the opposite order
                fc = P.ck(fv, m - 1)
                gd = P.dk(gv, m - 1)
                for x in V.objects():
                    y = F.act(fc, (x, 0))
                    lhs = F.act(hv, (x, 0))
                    rhs = W.compose(m - 1, F.act(gv, y), F.act(gd, F.act(fv, (x, 0))))
                    if not same(W, lhs, rhs):
                        rep.add("composition", k, f, g, V.ids[x])
                        break
        except OmegaCatError:
            rep.add("composition", k, f, g)
    return rep


# -- Yoneda ------------------------------------------------------------------

@dataclass
class Transformation:
    """tau: L(-, a) -> F at level n.

    ``components[b]`` maps cells of L(b, a) (as base cells) to cells of F(b);
    for n > 0 only the 1-cells b -> a are mapped.
    """

    presheaf: PresheafData
    a: int
    level: int
    components: dict = field(default_factory=dict)

    def key(self):
        return tuple(sorted((b, tuple(sorted(m.items()))) for b, m in self.components.items()))


def hom_cells(P, b, a, exact_degree=None):
    """Cells x of L with d^m x = b, c^m x = a, m = deg x >= 1.

    When N = 0 the only arrow is the virtual identity of a.
    """
    if P.N == 0:
        return [P.e((a, 0))] if b == a and exact_degree in (None, 1) else []
    out = []
    for m in range(1, P.N + 1):
        if exact_degree is not None and m != exact_degree:
            continue
        for i in P.cells(m):
            v = (i, 0)
            if P.dk(v, m)[0] == b and P.ck(v, m)[0] == a:
                out.append(v)
    return out


def _squares(P, a, n):
    """Naturality squares (b, x, g, c): tau_c(x * g) against F(g)(tau_b(x)).

    For n = 0: every cell x with a 1-cell g, every arrow g on 1-cells x.
    For n > 0 only 1-cells x and 1-cells g.
    """
    out = []
    if P.N == 0:
        return out
    for m in range(1, P.N + 1):
        for gi in P.cells(m):
            g = (gi, 0)
            c, b = P.dk(g, m)[0], P.ck(g, m)[0]
            for x in hom_cells(P, b, a, None if (m == 1 and n == 0) else 1):
                if m > 1 and n > 0:
                    continue
                out.append((b, x, g, c))
    return out


def yoneda_backward(F, a, beta):
    """tau_b(f) = F(f)(beta); for beta of degree n > 0 only 1-cells f."""
    P = F.base
    ai = _obj(P, a)
    V = F.values[ai]
    bv = V.v(beta) if not (isinstance(beta, tuple) and isinstance(beta[0], int)) else beta
    n = V.vdeg(bv)
    comps = {}
    for b in P.objects():
        m = {}
        for f in hom_cells(P, b, ai, 1 if n > 0 else None):
            if n == 0 or P.vdeg(f) == 1:
                m[f] = F.act(f, bv)
        comps[b] = m
    return Transformation(F, ai, n, comps)


def yoneda_forward(tau):
    """tau -> tau_a(e a), after checking the naturality squares."""
    if not check_transformation(tau).ok:
        raise OmegaCatError("naturality-violated")
    P = tau.presheaf.base
    return tau.a, tau.components[tau.a][P.e((tau.a, 0))]


def check_transformation(tau):
    """Naturality squares of tau and functoriality of each tau_b."""
    F = tau.presheaf
    P = F.base
    rep = ValidationReport()
    for b, x, g, c in _squares(P, tau.a, tau.level):
        y = P.horizontal(x, g)
        rep.count("naturality")
        if tau.components[c].get(y) != F.act(g, tau.components[b][x]):
            rep.add("naturality", P.label(g), P.label(x))
    if tau.level == 0:
        for b in P.objects():
            comp = tau.components[b]
            W = F.values[b]
            for x, val in comp.items():
                m = P.vdeg(x)
                rep.count("component-functor")
                if W.vdeg(val) != m - 1:
                    rep.add("component-functor", P.ids[b], P.label(x))
                    continue
                if m >= 2 and (comp.get(P.d(x)) != W.d(val) or comp.get(P.c(x)) != W.c(val)):
                    rep.add("component-functor", P.ids[b], P.label(x))
    return rep


def transformation_count_bruteforce(F, a, n, collect=None):
    """Count level-n families L(-, a) -> F by enumerating all assignments.

    Independent of the Yoneda formula: every object of every L(b, a) (and
    for n = 0 every cell) receives a candidate value, and a family counts
    when all naturality squares and boundary conditions hold.  Valid
    families are appended to ``collect`` as Transformations when given.
    """
    P = F.base
    slots = []
    for b in P.objects():
        for x in hom_cells(P, b, a, 1 if n > 0 else None):
            deg = P.vdeg(x) - 1 + n
            W = F.values[b]
            slots.append((b, x, [(j, 0) for j in W.cells(deg)] if deg <= W.N else
                          [W.e((j, 0), deg - W.N) for j in W.cells(W.N)]))
    slots.sort(key=lambda s: (s[1] != P.e((a, 0)), P.vdeg(s[1]), P.label(s[1]), s[0]))
    order = {(s[0], s[1]): k for k, s in enumerate(slots)}
    constraints = _transformation_constraints(F, a, n)
    by_last = {}
    for con in constraints:
        last = max(order[s] for s in con[0] if s in order) if con[0] else -1
        by_last.setdefault(last, []).append(con)
    assign = {}
    count = 0

    def rec(k):
        nonlocal count
        if k == len(slots):
            count += 1
            if collect is not None:
                comps = {b: {} for b in P.objects()}
                for (b, x), v in assign.items():
                    comps[b][x] = v
                collect.append(Transformation(F, a, n, comps))
            return
        b, x, cands = slots[k]
        for v in cands:
            assign[(b, x)] = v
            if all(fn(assign) for _, fn in by_last.get(k, [])):
                rec(k + 1)
        assign.pop((b, x), None)

    if all(fn(assign) for _, fn in by_last.get(-1, [])):
        rec(0)
    return count


def _transformation_constraints(F, a, n):
    P = F.base
    cons = []
    for b, x, g, c in _squares(P, a, n):
        y = P.horizontal(x, g)
        cons.append(([(b, x), (c, y)],
                     lambda s, b=b, x=x, c=c, y=y, g=g: s[(c, y)] == F.act(g, s[(b, x)])))
    if n > 0:
        return cons
    for b in P.objects():
        W = F.values[b]
        cells = hom_cells(P, b, a)
        stored = set(cells)
        for x in cells:
            if P.vdeg(x) >= 2:
                cons.append(([(b, x), (b, P.d(x)), (b, P.c(x))],
                             lambda s, b=b, x=x, W=W:
                             W.d(s[(b, x)]) == s[(b, P.d(x))] and
                             W.c(s[(b, x)]) == s[(b, P.c(x))]))
            ex = P.e(x)
            if ex in stored:
                cons.append(([(b, x), (b, ex)],
                             lambda s, b=b, x=x, ex=ex, W=W: s[(b, ex)] == W.e(s[(b, x)])))
        for x in cells:
            m = P.vdeg(x)
            for y in cells:
                if P.vdeg(y) != m:
                    continue
                for k in range(1, m):
                    if P.composable(k, x, y):
                        z = P.compose(k, x, y)
                        if z in stored:
                            cons.append(([(b, x), (b, y), (b, z)],
                                         lambda s, b=b, x=x, y=y, z=z, k=k, W=W:
                                         _safe_eq(W, k, s[(b, x)], s[(b, y)], s[(b, z)])))
    return cons


def _safe_eq(W, k, x, y, z):
    try:
        return W.compose(k, x, y) == z
    except OmegaCatError:
        return False


# -- representability -------------------------------------------------------

def _value_cells(V, top):
    """Stored cells of V plus virtual identities, up to degree ``top``."""
    out = [(j, 0) for j in range(len(V))]
    for p in range(1, top - V.N + 1):
        out += [V.e((j, 0), p) for j in V.cells(V.N)]
    return out


def _hom_cells_all(P, b, a, top):
    """Cells of L(b, a) of hom-degree <= top (degree in L up to top + 1)."""
    out = hom_cells(P, b, a)
    if P.N == 0:
        return out
    for p in range(1, top + 2 - P.N):
        out += [P.e(x, p) for x in hom_cells(P, b, a) if P.vdeg(x) == P.N]
    return out


def strict_witness_ok(F, a, beta):
    """f -> F(f)(beta) is a bijection L(b, a) -> F(b) for every b."""
    P = F.base
    for b in P.objects():
        V = F.values[b]
        top = max(V.N, max(P.N - 1, 0))
        src = _hom_cells_all(P, b, a, top)
        img = {}
        for f in src:
            y = F.act(f, beta)
            if y in img:
                return False
            img[y] = f
        if set(img) != set(_value_cells(V, top)):
            return False
    return True


def check_representable(F, mode="strict", witness=None, inverses=None):
    """Search (strict) or verify (weak) a representing pair (a, beta).

    Returns a dict with ``representable`` and the witness when found.
    """
    P = F.base
    if mode == "strict":
        cands = [witness] if witness else [
            (a, (x, 0)) for a in P.objects() for x in F.values[a].objects()]
        for a, beta in cands:
            a = _obj(P, a)
            beta = F.values[a].v(beta) if isinstance(beta, str) else beta
            if strict_witness_ok(F, a, beta):
                return {"representable": True, "object": P.ids[a],
                        "element": F.values[a].label(beta)}
        return {"representable": False}
    if witness is None:
        raise OmegaCatError("weak representability needs a witness (a, beta)")
    a, beta = witness
    a = _obj(P, a)
    beta = F.values[a].v(beta) if isinstance(beta, str) else beta
    per = {}
    ok = True
    for b in P.objects():
        Phi, G = comparison_functors(F, a, beta, b, (inverses or {}).get(b))
        if G is None:
            per[P.ids[b]] = False
            ok = False
            continue
        if not (check_functor(Phi, strict=False).ok and check_functor(G, strict=False).ok):
            per[P.ids[b]] = False
            ok = False
            continue
        res = check_equivalence_pair(Phi, G)
        per[P.ids[b]] = res["equivalence"]
        ok = ok and res["equivalence"]
    return {"representable": ok, "object": P.ids[a],
            "element": F.values[a].label(beta), "per_object": per}


def comparison_functors(F, a, beta, b, inverse=None):
    """Phi: L(b, a) -> F(b), f -> F(f)(beta), and a chosen quasi-inverse."""
    P = F.base
    H = hom_category(P, (b, 0), (a, 0))
    V = F.values[b]
    m = {}
    for j in range(len(H)):
        f = (P.index[H.ids[j]], 0)
        m[j] = F.act(f, beta)
    Phi = FunctorData(f"Phi_{P.ids[b]}", H, V, m)
    if inverse is not None:
        return Phi, FunctorData(f"Psi_{P.ids[b]}", V, H, inverse)
    return Phi, candidate_quasi_inverse(Phi, f"Psi_{P.ids[b]}")


def pullback_presheaf(F, H, name=None):
    """F o H^op for a functor H: S -> base."""
    S = H.source
    values = {s: F.value(H((s, 0))) for s in S.objects()}
    action0 = {}
    for f in S.cells(1):
        b, c = int(S.dom[f]), int(S.cod[f])
        src, tgt = values[c], values[b]
        g = H((f, 0))
        action0[f] = FunctorData(f"{F.name}({S.ids[f]})", src, tgt,
                                 {j: F.act(g, (j, 0)) for j in range(len(src))})
    actionN = {}
    for k in range(2, S.N + 1):
        for f in S.cells(k):
            c = S.ck((f, 0), k)[0]
            g = H((f, 0))
            actionN[f] = {x: F.act(g, (x, 0)) for x in values[c].objects()}
    return PresheafData(name or f"{F.name}.{H.name}", S, values, action0, actionN)
