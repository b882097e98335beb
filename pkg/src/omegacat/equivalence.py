"""Deciding x ~ y, degrees of equivalences, and arrow classification."""
from dataclasses import dataclass
from typing import Optional

from .core import Category
from .errors import DegreeMismatch, OmegaCatError


@dataclass(frozen=True)
class Witness:
    """Arrows exhibiting x ~ y.

    ``left`` relates backward o_1 forward with e(x), ``right`` relates
    forward o_1 backward with e(y).  ``None`` marks a leaf: the composite is
    the identity on the nose.  ``forward`` is None for the reflexive witness.
    """

    x: tuple
    y: tuple
    forward: Optional[tuple]
    backward: Optional[tuple]
    left: Optional["Witness"]
    right: Optional["Witness"]
    degree: int

    def depth(self):
        if self.forward is None:
            return 0
        return 1 + max((w.depth() for w in (self.left, self.right) if w), default=0)

    def arrows(self):
        """All (forward, backward) pairs appearing in the tree."""
        if self.forward is None:
            return []
        out = [(self.forward, self.backward)]
        for w in (self.left, self.right):
            if w is not None:
                out += w.arrows()
        return out

    def to_dict(self, P):
        if self.forward is None:
            return {"x": P.label(self.x), "y": P.label(self.y), "reflexive": True, "degree": 0}
        sub = lambda w: None if w is None else w.to_dict(P)  # noqa: E731
        return {
            "x": P.label(self.x),
            "y": P.label(self.y),
            "forward": P.label(self.forward),
            "backward": P.label(self.backward),
            "left": sub(self.left),
            "right": sub(self.right),
            "degree": self.degree,
        }


def _lift(d):
    return d + 1 if d > 0 else 0


class EquivalenceSolver:
    """Bottom-up decision of ~ with a memo per pair of (virtual) cells.

    At degree N and above ~ is equality.  Below, x ~ y iff some f: x -> y
    and g: y -> x have g o_1 f ~ e(x) and f o_1 g ~ e(y) one degree up.
    Among all witnesses the one of least degree is kept; ties go to the
    lexicographically smallest (forward, backward) ids.
    """

    def __init__(self, P: Category):
        self.P = P
        self._memo = {}

    def _key(self, v):
        return (self.P.ids[v[0]], v[1])

    def solve(self, x, y):
        """Minimal witness for x ~ y or None; x, y are internal cells."""
        P = self.P
        if x == y:
            return Witness(x, y, None, None, None, None, 0)
        if P.vdeg(x) != P.vdeg(y):
            raise DegreeMismatch(f"{P.label(x)} and {P.label(y)} differ in degree")
        if P.vdeg(x) >= P.N or not P.parallel(x, y):
            return None
        key = (x, y)
        if key in self._memo:
            return self._memo[key]
        best, best_rank = None, None
        ex, ey = P.e(x), P.e(y)
        backs = P.arrows(y, x)
        if backs:
            for f in P.arrows(x, y):
                for g in backs:
                    left = self._sub(P.compose(1, g, f), ex)
                    if left is False:
                        continue
                    right = self._sub(P.compose(1, f, g), ey)
                    if right is False:
                        continue
                    deg = max(1, *(_lift(w.degree) if w else 0 for w in (left, right)))
                    rank = (deg, self._key(f), self._key(g))
                    if best_rank is None or rank < best_rank:
                        best_rank = rank
                        best = Witness(x, y, f, g, left, right, deg)
        self._memo[key] = best
        return best

    def _sub(self, a, b):
        """None for a leaf (a == b), a Witness, or False when a !~ b."""
        if a == b:
            return None
        w = self.solve(a, b)
        return False if w is None else w

    def degree(self, x, y):
        w = self.solve(x, y)
        return None if w is None else w.degree

    def equivalent(self, x, y):
        return self.solve(x, y) is not None

    def classes(self, n):
        """Map each stored degree-n cell to the least id of its ~-class."""
        P = self.P
        cells = sorted(P.cells(n), key=lambda i: P.ids[i])
        rep = {}
        for i in cells:
            if i in rep:
                continue
            rep[i] = i
            for j in cells:
                if j not in rep and self.equivalent((i, 0), (j, 0)):
                    rep[j] = i
        return rep

    def inverse(self, f):
        """A quasi-inverse f' of the arrow f, or None."""
        P = self.P
        a, b = P.d(f), P.c(f)
        ea, eb = P.e(a), P.e(b)
        for g in P.arrows(b, a):
            if self._sub(P.compose(1, g, f), ea) is not False and \
                    self._sub(P.compose(1, f, g), eb) is not False:
                return g
        return None


def _cell(P, x):
    return x if isinstance(x, tuple) and isinstance(x[0], int) else P.v(x)


def decide_equiv(P, x, y, solver=None):
    solver = solver or EquivalenceSolver(P)
    return solver.solve(_cell(P, x), _cell(P, y))


def equiv_degree(P, x, y, solver=None):
    w = decide_equiv(P, x, y, solver)
    return None if w is None else w.degree


def category_degree(P, solver=None):
    """Largest minimal degree over pairs of equivalent objects."""
    solver = solver or EquivalenceSolver(P)
    objs = P.objects()
    best = 0
    for i in objs:
        for j in objs:
            if i < j:
                d = solver.degree((i, 0), (j, 0))
                if d is not None:
                    best = max(best, d)
    return best


def check_witness(P, w):
    """Re-verify every arrow and composite in a witness tree."""
    if w.forward is None:
        return w.x == w.y
    f, g = w.forward, w.backward
    if P.d(f) != w.x or P.c(f) != w.y or P.d(g) != w.y or P.c(g) != w.x:
        return False
    for sub, comp, ident in ((w.left, P.compose(1, g, f), P.e(w.x)),
                             (w.right, P.compose(1, f, g), P.e(w.y))):
        if sub is None:
            if comp != ident:
                return False
        elif (sub.x, sub.y) != (comp, ident) or not check_witness(P, sub):
            return False
    return True


def compose_witness(P, w1, w2, solver=None):
    """Transitivity: from x ~ y and y ~ z build x ~ z with arrows f'f, g g'."""
    if w1.y != w2.x:
        raise ValueError("witnesses do not chain")
    if w1.forward is None:
        return w2
    if w2.forward is None:
        return w1
    solver = solver or EquivalenceSolver(P)
    f = P.compose(1, w2.forward, w1.forward)
    g = P.compose(1, w1.backward, w2.backward)
    x, z = w1.x, w2.y
    if x == z:
        return Witness(x, z, None, None, None, None, 0)
    left = solver._sub(P.compose(1, g, f), P.e(x))
    right = solver._sub(P.compose(1, f, g), P.e(z))
    if left is False or right is False:
        return None
    deg = max(1, *(_lift(s.degree) if s else 0 for s in (left, right)))
    return Witness(x, z, f, g, left, right, deg)


def swap_witness(w):
    if w.forward is None:
        return w
    return Witness(w.y, w.x, w.backward, w.forward, w.right, w.left, w.degree)


def classify_arrow(P, f, solver=None):
    """Monic / epic / equivalence for an arrow f: a -> a'."""
    solver = solver or EquivalenceSolver(P)
    f = _cell(P, f)
    if P.vdeg(f) < 1:
        raise DegreeMismatch("objects are not arrows")
    a, b = P.d(f), P.c(f)
    sources = _parallel_cells(P, a)

    monic = True
    for z in sources:
        hom = P.arrows(z, a)
        for i, g in enumerate(hom):
            for h in hom[i + 1:]:
                if solver.equivalent(P.compose(1, f, g), P.compose(1, f, h)) and \
                        not solver.equivalent(g, h):
                    monic = False
                    break
            if not monic:
                break
        if not monic:
            break

    epic = True
    for w in _parallel_cells(P, b):
        hom = P.arrows(b, w)
        for i, g in enumerate(hom):
            for h in hom[i + 1:]:
                if solver.equivalent(P.compose(1, g, f), P.compose(1, h, f)) and \
                        not solver.equivalent(g, h):
                    epic = False
                    break
            if not epic:
                break
        if not epic:
            break

    inverse = solver.inverse(f)
    return {"monic": monic, "epic": epic, "equivalence": inverse is not None}


def _parallel_cells(P, a):
    """Cells z of the same degree as a with arrows z -> a possible."""
    if P.vdeg(a) >= P.N:
        return [a]
    return [(i, 0) for i in P.cells(P.vdeg(a)) if P.parallel((i, 0), a)]


def eq_subcategory(P, k, solver=None):
    """Cells of degree <= k plus the equivalences above with kept boundaries."""
    solver = solver or EquivalenceSolver(P)
    keep = set()
    for m in range(P.N + 1):
        for i in P.cells(m):
            if m <= k:
                keep.add(i)
            elif P.dom[i] in keep and P.cod[i] in keep and solver.inverse((i, 0)) is not None:
                keep.add(i)
    cells = [r for r in P.records() if P.index[r[0]] in keep]
    idents = [(z, e) for z, e in P.identity_entries.items()
              if P.index[z] in keep and P.index[e] in keep]
    comps = []
    for (kk, f, g), h in P.entries.items():
        if P.index[f] in keep and P.index[g] in keep:
            if P.index[h] not in keep:
                raise OmegaCatError(f"equivalences not closed: {f} o_{kk} {g} = {h}")
            comps.append((kk, f, g, h))
    return Category(f"{P.name}_{k}~", P.N, cells, idents, comps)


def check_mn_invariant(F, m, n):
    """Pairs of objects of degree <= m go to pairs of degree <= n; n is attained."""
    S, T = F.source, F.target
    ss, ts = EquivalenceSolver(S), EquivalenceSolver(T)
    attained = False
    for i in S.objects():
        for j in S.objects():
            if i >= j:
                continue
            d = ss.degree((i, 0), (j, 0))
            if d is None or d > m:
                continue
            dt = ts.degree(F((i, 0)), F((j, 0)))
            if dt is None or dt > n:
                return False
            attained = attained or dt == n
    return attained or n == 0
