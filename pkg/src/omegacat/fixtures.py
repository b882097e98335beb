"""Generators for the fixture corpus.

Every generator closes its composition table by brute force: results come
from unit laws, from e(x) o_{k+1} e(y) = e(x o_k y), or from an explicit rule
supplied per fixture (matrix products, codiscrete hom-categories, ...).
"""
import itertools

from .core import Category, ename


class Builder:
    """Mutable scratch space used to assemble a presentation."""

    def __init__(self, name, truncation):
        self.name = name
        self.N = truncation
        self.rec = {}
        self.ident = {}
        self.base = {}

    def cell(self, cid, degree=0, dom=None, cod=None):
        assert cid not in self.rec, cid
        self.rec[cid] = (degree, dom, cod)
        return cid

    def identity(self, z, cid=None):
        """Register e(z), creating the cell when needed."""
        if z in self.ident:
            return self.ident[z]
        cid = cid or ename(z)
        if cid not in self.rec:
            self.cell(cid, self.rec[z][0] + 1, z, z)
        self.ident[z] = cid
        self.base[cid] = z
        return cid

    def close_identities(self):
        changed = True
        while changed:
            changed = False
            for z in sorted(self.rec):
                if self.rec[z][0] < self.N and z not in self.ident:
                    self.identity(z)
                    changed = True

    def dk(self, x, k):
        for _ in range(k):
            x = self.rec[x][1]
        return x

    def ck(self, x, k):
        for _ in range(k):
            x = self.rec[x][2]
        return x

    def unit_rule(self, k, f, g, table):
        """Result forced by the unit laws or by e-compatibility, else None."""
        if self.is_iterated_identity(f, k) and f == self.e(self.ck(g, k), k):
            return g
        if self.is_iterated_identity(g, k) and g == self.e(self.dk(f, k), k):
            return f
        if k >= 2:
            f0, g0 = self.identity_base(f), self.identity_base(g)
            if f0 is not None and g0 is not None:
                inner = table.get((k - 1, f0, g0))
                if inner is not None:
                    return self.ident[inner]
        return None

    def e(self, x, k):
        for _ in range(k):
            x = self.ident[x]
        return x

    def identity_base(self, x):
        return self.base.get(x)

    def is_iterated_identity(self, x, k):
        for _ in range(k):
            x = self.identity_base(x)
            if x is None:
                return False
        return True

    def build(self, rule=None):
        """Close the table: unit laws first, then ``rule(k, f, g)``."""
        self.close_identities()
        by_deg = {}
        for cid, (degree, _, _) in sorted(self.rec.items()):
            by_deg.setdefault(degree, []).append(cid)
        table = {}
        for m in sorted(by_deg):
            for k in range(1, m + 1):
                for f in by_deg[m]:
                    for g in by_deg[m]:
                        if self.dk(f, k) != self.ck(g, k):
                            continue
                        r = self.unit_rule(k, f, g, table)
                        if r is None:
                            if rule is None:
                                raise ValueError(f"no rule for {f} o_{k} {g}")
                            r = rule(k, f, g)
                        table[(k, f, g)] = r
        cells = [(cid, d, dom, cod) for cid, (d, dom, cod) in self.rec.items()]
        comps = [(k, f, g, h) for (k, f, g), h in table.items()]
        return Category(self.name, self.N, cells, sorted(self.ident.items()), comps)


# -- one-dimensional shapes -------------------------------------------------

def category1(name, objects, arrows, rule=None, truncation=1):
    """A 1-category: ``arrows`` maps id -> (dom, cod)."""
    b = Builder(name, truncation)
    for o in objects:
        b.cell(o)
    for a, (s, t) in arrows.items():
        b.cell(a, 1, s, t)
    return b.build(rule)


def discrete(n=3, truncation=1):
    return category1(f"discrete{n}", [f"o{i}" for i in range(n)], {}, truncation=truncation)


def point(truncation=0):
    return category1("point", ["pt"], {}, truncation=truncation)


def free_arrow():
    return category1("free_arrow", ["a", "b"], {"f": ("a", "b")})


def iso1():
    table = {("g", "f"): ename("a"), ("f", "g"): ename("b")}
    return category1("Iso1", ["a", "b"], {"f": ("a", "b"), "g": ("b", "a")},
                     lambda k, x, y: table[(x, y)])


# -- two-dimensional shapes -------------------------------------------------

def locally_thin(name, objects, arrows, comp1, le, names=None, ident=None):
    """2-category whose 2-cells x => y exist iff ``le(x, y)`` (one at most).

    ``comp1(g, f)`` composes non-identity 1-cells.  Composites of 2-cells are
    forced by their boundaries, so the strict laws hold whenever the
    1-dimensional part is a category and ``le`` is a preorder compatible
    with composition.  ``ident`` optionally names the identity 1-cells.
    """
    names = names or {}
    ident = ident or {}
    b = Builder(name, 2)
    for o in objects:
        b.cell(o)
    for o in objects:
        b.identity(o, ident.get(o))
    for a, (s, t) in arrows.items():
        b.cell(a, 1, s, t)
    ones = sorted(x for x in b.rec if b.rec[x][0] == 1)

    two = {}
    for x in ones:
        for y in ones:
            if b.rec[x][1:] != b.rec[y][1:]:
                continue
            if x == y:
                two[(x, y)] = b.identity(x)
            elif le(x, y):
                two[(x, y)] = b.cell(names.get((x, y), f"{x}=>{y}"), 2, x, y)
    ends = {v: k for k, v in two.items()}

    def rule(k, f, g):
        if b.rec[f][0] == 1:
            return comp1(f, g)
        (x, y), (x2, y2) = ends[f], ends[g]
        if k == 1:
            return two[(x2, y)]
        return two[(c1(x, x2), c1(y, y2))]

    def c1(g, f):
        if g == b.ident.get(b.rec[f][2]):
            return f
        if f == b.ident.get(b.rec[g][1]):
            return g
        return comp1(g, f)

    return b.build(rule)


def walking2():
    return locally_thin("Walking2", ["a", "b"], {"f": ("a", "b"), "g": ("a", "b")},
                        None, lambda x, y: (x, y) == ("f", "g"), {("f", "g"): "sigma"})


def walkeq2():
    """Two objects with f, g whose composites are invertible up to 2-cells.

    The 1-cells are closed by f g f = f and g f g = g, so u = g f and v = f g
    are idempotents; each hom-category is codiscrete, making the 2-cells
    alpha: u => e(a), beta: v => e(b) invertible.  No strict inverse exists.
    """
    arrows = {"f": ("a", "b"), "g": ("b", "a"), "u": ("a", "a"), "v": ("b", "b")}
    table = {
        ("g", "f"): "u", ("f", "g"): "v", ("f", "u"): "f", ("u", "g"): "g",
        ("v", "f"): "f", ("g", "v"): "g", ("u", "u"): "u", ("v", "v"): "v",
    }
    names = {("u", ename("a")): "alpha", (ename("a"), "u"): "alpha_inv",
             ("v", ename("b")): "beta", (ename("b"), "v"): "beta_inv"}
    return locally_thin("WalkEq2", ["a", "b"], arrows, lambda g, f: table[(g, f)],
                        lambda x, y: True, names)


def bz2(tt2="1"):
    """One object, one 1-cell, 2-cells {1, t} with t o_1 t = 1 = t o_2 t.

    ``tt2`` overrides t o_2 t (used to build the non-strict variant).
    """
    b = Builder("BZ2", 2)
    b.cell("*")
    b.identity("*", "id")
    b.identity("id", "1")
    b.cell("t", 2, "id", "id")
    return b.build(lambda k, f, g: tt2 if k == 2 else "1")


def walkpar2():
    """f, g: a -> b with two parallel 2-cells sigma, tau: f => g."""
    b = Builder("WalkPar2", 2)
    b.cell("a")
    b.cell("b")
    b.cell("f", 1, "a", "b")
    b.cell("g", 1, "a", "b")
    b.cell("sigma", 2, "f", "g")
    b.cell("tau", 2, "f", "g")
    return b.build()


def vecf2(dim=2, truncation=1):
    """Skeleton of finite-dimensional F2-vector spaces V0..V_dim.

    hom(Vi, Vj) is the set of all j x i matrices; composition is the matrix
    product mod 2.  With ``truncation`` 2 every 2-cell is an identity.
    """
    b = Builder(f"VecF2_{dim}" + ("" if truncation == 1 else f"_N{truncation}"), truncation)
    objs = [f"V{i}" for i in range(dim + 1)]
    for o in objs:
        b.cell(o)
    mats = {}
    for i in range(dim + 1):
        for j in range(dim + 1):
            for bits in itertools.product((0, 1), repeat=i * j):
                m = tuple(tuple(bits[r * i:(r + 1) * i]) for r in range(j))
                cid = matrix_id(i, j, m)
                b.cell(cid, 1, objs[i], objs[j])
                mats[cid] = (i, j, m)
    for i in range(dim + 1):
        eye = tuple(tuple(int(r == c) for c in range(i)) for r in range(i))
        b.identity(objs[i], matrix_id(i, i, eye))

    def rule(k, g, f):
        i, _, F = mats[f]
        _, j, G = mats[g]
        return matrix_id(i, j, matmul(G, F, i))

    P = b.build(rule)
    P.matrices = mats
    return P


def matrix_id(i, j, m):
    bits = "/".join("".join(str(x) for x in row) for row in m)
    return f"M{j}x{i}[{bits}]"


def matmul(G, F, cols):
    inner = len(F)
    return tuple(
        tuple(sum(G[r][t] * F[t][c] for t in range(inner)) % 2 for c in range(cols))
        for r in range(len(G))
    )


def transpose(m, rows, cols):
    """Transpose of a rows x cols matrix given as a tuple of rows."""
    return tuple(tuple(m[r][c] for r in range(rows)) for c in range(cols))


# -- finite posets as a locally thin 2-category -----------------------------

POSETS = {
    "Empty": ([], []),
    "T": (["0"], []),
    "D2": (["p", "q"], []),
    "C2": (["0", "1"], [("0", "1")]),
    "D3": (["x", "y", "z"], []),
    "Sq": (["00", "01", "10", "11"], [("00", "01"), ("00", "10"), ("01", "11"), ("10", "11"), ("00", "11")]),
    "Lam": (["l", "r", "t"], [("l", "t"), ("r", "t")]),
    "C3": (["0", "1", "2"], [("0", "1"), ("1", "2"), ("0", "2")]),
}


def _leq(poset, table=POSETS):
    elems, rel = table[poset]
    return {(x, x) for x in elems} | set(rel)


def monotone_maps(src, tgt, table=POSETS):
    es, _ = table[src]
    et, _ = table[tgt]
    ls, lt = _leq(src, table), _leq(tgt, table)
    out = []
    for vals in itertools.product(et, repeat=len(es)):
        m = dict(zip(es, vals))
        if all((m[x], m[y]) in lt for x, y in ls):
            out.append(m)
    return out


def map_id(src, tgt, m, table=POSETS):
    es, _ = table[src]
    return f"{src}>{tgt}:" + ",".join(m[x] for x in es)


def posets2(objects=("Empty", "T", "D2", "C2", "Sq"), extra=None):
    """Full sub-2-category of finite preorders, monotone maps, pointwise order.

    ``extra`` adds preorders {name: (elements, relation)} to the built-in ones.
    """
    table = {**POSETS, **(extra or {})}
    arrows, maps = {}, {}
    for s in objects:
        for t in objects:
            for m in monotone_maps(s, t, table):
                cid = map_id(s, t, m, table)
                arrows[cid] = (s, t)
                maps[cid] = (s, t, m)
    ident = {o: map_id(o, o, {x: x for x in table[o][0]}, table) for o in objects}

    def comp1(g, f):
        s, _, mf = maps[f]
        _, t, mg = maps[g]
        return map_id(s, t, {x: mg[mf[x]] for x in mf}, table)

    def le(x, y):
        s, t, mx = maps[x]
        my = maps[y][2]
        lt = _leq(t, table)
        return all((mx[p], my[p]) in lt for p in mx)

    b_arrows = {a: st for a, st in arrows.items() if a not in ident.values()}
    P = locally_thin(f"Pos{len(objects)}", objects, b_arrows, comp1, le, ident=ident)
    P.maps = maps
    P.preorders = {o: table[o] for o in objects}
    return P


def codiscrete(elements):
    """A codiscrete category as a preorder: every pair related."""
    return (list(elements), [(x, y) for x in elements for y in elements if x != y])


def iso_pullback_objects(F1, F2, F0, fx, fy):
    """5-tuples (A, B, C, f, g) with f: fx(A) -> C and g: fy(B) -> C invertible.

    F0 is codiscrete, so each pair of objects has exactly one isomorphism,
    written ``u~v``.
    """
    out = []
    for A in F1:
        for B in F2:
            for C in F0:
                out.append(f"({A};{B};{C};{fx[A]}~{C};{fy[B]}~{C})")
    return out


def weak_pullback():
    """The pullback of T -> I <- T (both legs picking 0) in codiscrete categories.

    I is the walking isomorphism {0, 1}; W is the category of 5-tuples.  The
    strict pullback is T; W is equivalent but not isomorphic to it.  Returns
    the 2-category, the diagram data and the pseudo-projections of W.
    """
    one, iso = ["*"], ["0", "1"]
    fx = fy = {"*": "0"}
    W = iso_pullback_objects(one, one, iso, fx, fy)
    extra = {"T": codiscrete(one), "I": codiscrete(iso), "W": codiscrete(W)}
    P = posets2(("T", "I", "W"), extra)
    table = {**POSETS, **extra}
    legs = {
        "1": map_id("W", "T", {w: "*" for w in W}, table),
        "2": map_id("W", "T", {w: "*" for w in W}, table),
        "0": map_id("W", "I", {w: w.split(";")[2] for w in W}, table),
    }
    nodes = {"1": "T", "2": "T", "0": "I",
             "x": map_id("T", "I", fx, table), "y": map_id("T", "I", fy, table)}
    P.pseudo_projections = legs
    P.pullback_diagram = nodes
    return P


def corpus():
    """The named fixtures used throughout the tests and the CLI."""
    return {
        "Iso1": iso1(),
        "Walking2": walking2(),
        "BZ2": bz2(),
        "WalkEq2": walkeq2(),
        "WalkPar2": walkpar2(),
        "VecF2": vecf2(2),
        "discrete3": discrete(3),
        "free_arrow": free_arrow(),
        "point": point(),
    }
