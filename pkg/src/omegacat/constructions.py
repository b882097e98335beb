"""New presentations from old: hom-categories, opposites, levels, quotients."""
from .core import Category, ename, empty
from .errors import DegreeMismatch, QuotientNotWellDefined


def hom_category(P, x, y):
    """L(x, y): cells above x and y with d^{j+1} = x, c^{j+1} = y."""
    vx, vy = P.v(x), P.v(y)
    base = P.vdeg(vx)
    if base != P.vdeg(vy):
        raise DegreeMismatch(f"{x} and {y} have different degrees")
    name = f"{P.name}({P.label(vx)},{P.label(vy)})"
    trunc = max(P.N - base - 1, 0)
    if base >= P.N:
        # only the virtual identity lives above a top cell
        if vx != vy:
            return empty(name, trunc)
        return Category(name, 0, [(P.label(P.e(vx)), 0, None, None)])
    keep = {}
    for i in range(len(P)):
        j = int(P.deg[i]) - base - 1
        if j < 0:
            continue
        v = (i, 0)
        if P.dk(v, j + 1) == vx and P.ck(v, j + 1) == vy:
            keep[i] = j
    cells = []
    for i, j in keep.items():
        if j == 0:
            cells.append((P.ids[i], 0, None, None))
        else:
            cells.append((P.ids[i], j, P.ids[P.dom[i]], P.ids[P.cod[i]]))
    idents = [(P.ids[i], P.ids[P.ide[i]]) for i in keep if P.ide[i] >= 0 and P.ide[i] in keep]
    comps = []
    for (k, f, g), h in P.entries.items():
        fi, gi = P.index[f], P.index[g]
        if fi in keep and gi in keep and k <= keep[fi]:
            comps.append((k, f, g, h))
    return Category(name, trunc, cells, idents, comps)


def op_name(name):
    return name[3:-1] if name.startswith("op(") and name.endswith(")") else f"op({name})"


def opposite(P):
    """Swap d and c on degree-1 cells; o_n of degree-n cells swaps its arguments."""
    cells = []
    for cid, degree, dom, cod in P.records():
        if degree == 1:
            dom, cod = cod, dom
        cells.append((cid, degree, dom, cod))
    comps = []
    for (k, f, g), h in P.entries.items():
        if k == P.degree_of(f):
            comps.append((k, g, f, h))
        else:
            comps.append((k, f, g, h))
    return Category(op_name(P.name), P.N, cells, P.identity_entries.items(), comps)


def level_category(P, n):
    """The 1-category with objects L^0, arrows L^n, d^n, c^n and o_n."""
    if not 0 <= n <= P.N:
        raise ValueError(f"level {n} outside 0..{P.N}")
    objs = [(P.ids[i], 0, None, None) for i in P.objects()]
    if n == 0:
        return Category(f"{P.name}^[0]", 0, objs)
    arrows = []
    for i in P.cells(n):
        v = (i, 0)
        arrows.append((P.ids[i], 1, P.label(P.dk(v, n)), P.label(P.ck(v, n))))
    idents = [(P.ids[i], P.label(P.e((i, 0), n))) for i in P.objects()]
    comps = [(1, f, g, h) for (k, f, g), h in P.entries.items()
             if k == n and P.degree_of(f) == n]
    return Category(f"{P.name}^[{n}]", 1, objs + arrows, idents, comps)


def fresh(P, stem):
    name = stem
    while name in P.index:
        name += "'"
    return name


def ambient_extend(P):
    """Attach two new objects alpha, beta and make P the hom-set L(alpha, beta)."""
    alpha, beta = fresh(P, "alpha"), fresh(P, "beta")
    N = P.N + 1
    cells = [(alpha, 0, None, None), (beta, 0, None, None)]
    for cid, degree, dom, cod in P.records():
        if degree == 0:
            cells.append((cid, 1, alpha, beta))
        else:
            cells.append((cid, degree + 1, dom, cod))
    idents = list(P.identity_entries.items())
    tower = {}
    for o in (alpha, beta):
        prev = o
        tower[o] = []
        for j in range(1, N + 1):
            cid = ename(o, j)
            cells.append((cid, j, prev, prev))
            idents.append((prev, cid))
            tower[o].append(cid)
            prev = cid
    comps = [(k, f, g, h) for (k, f, g), h in P.entries.items()]
    for m in range(1, N + 1):
        ea, eb = tower[alpha][m - 1], tower[beta][m - 1]
        for k in range(1, m + 1):
            comps.append((k, ea, ea, ea))
            comps.append((k, eb, eb, eb))
        for i in P.cells(m - 1):
            f = P.ids[i]
            comps.append((m, eb, f, f))
            comps.append((m, f, ea, f))
    Q = Category(f"ext({P.name})", N, cells, idents, comps)
    Q.ends = (alpha, beta)
    return Q


def approximation(P, n, equiv=None):
    """L^(n): degree-n cells replaced by their ~-classes, identities above.

    ``equiv`` maps each degree-n cell index to its class representative;
    computed with the equivalence module when not supplied.
    """
    if not 0 <= n <= P.N:
        raise ValueError(f"level {n} outside 0..{P.N}")
    if n == P.N:
        return P.with_name(f"{P.name}^({n})")
    if equiv is None:
        from .equivalence import EquivalenceSolver

        equiv = EquivalenceSolver(P).classes(n)
    rep = lambda i: equiv.get(i, i)  # noqa: E731
    cells = []
    for cid, degree, dom, cod in P.records():
        i = P.index[cid]
        if degree < n or (degree == n and rep(i) == i):
            cells.append((cid, degree, dom, cod))
    idents = []
    for z, e in P.identity_entries.items():
        dz = P.degree_of(z)
        if dz < n - 1:
            idents.append((z, e))
        elif dz == n - 1:
            idents.append((z, P.ids[rep(P.index[e])]))
    comps = {}
    for (k, f, g), h in sorted(P.entries.items()):
        m = P.degree_of(f)
        if m < n:
            comps[(k, f, g)] = h
        elif m == n:
            key = (k, P.ids[rep(P.index[f])], P.ids[rep(P.index[g])])
            val = P.ids[rep(P.index[h])]
            if comps.setdefault(key, val) != val:
                raise QuotientNotWellDefined(
                    f"{key[1]} o_{k} {key[2]} has results {comps[key]} and {val}", (f, g))
    return Category(f"{P.name}^({n})", n, cells, idents,
                    [(k, f, g, h) for (k, f, g), h in comps.items()])


def truncate(P, n):
    """The cells of degree <= n with their identities and composites."""
    if n >= P.N:
        return P
    cells = [r for r in P.records() if r[1] <= n]
    idents = [(z, e) for z, e in P.identity_entries.items() if P.degree_of(e) <= n]
    comps = [(k, f, g, h) for (k, f, g), h in P.entries.items() if P.degree_of(f) <= n]
    return Category(f"{P.name}<={n}", n, cells, idents, comps)
