"""Concrete dual adjunctions synthesized from schizophrenic objects.

The forgetfuls are the representables U = L(A0, -) and V = L'(B0, -).
A base arrow between hom-categories is an arrow of the category when it
is postcomposition with some cell; every lift below is a search for that
cell, made unique by faithfulness.

The dual adjunction G: L -> L', F: L' -> L (both contravariant) is stored
as the covariant adjunction F: L' -> op(L) left adjoint to G: op(L) -> L'.
"""
import itertools
from dataclasses import dataclass, field

from .adjunction import AdjunctionData, check_strict_adjunction, hom_iso_from_unit_counit
from .constructions import opposite
from .core import parse_cell
from .equivalence import decide_equiv
from .errors import AmbiguousLift, LiftNotFound, MalformedInput, SearchLimitExceeded
from .functors import FunctorData, ModificationData, compose_functors, identity_functor
from .presheaf import check_representable, hom_cells, hom_presheaf, pullback_presheaf
from .report import ValidationReport


@dataclass
class DualityInput:
    """Categories, anchors, schizophrenic objects and lifting tables.

    ``lift_lp[A] = (GA, iso)`` with iso: L'(B0, GA) -> L(A, At) on labels;
    ``lift_l[B] = (FB, iso)`` with iso: L(A0, FB) -> L'(B, Bt);
    ``comparison``: L(A0, At) -> L'(B0, Bt).
    """

    L: object
    Lp: object
    A0: str
    B0: str
    At: str
    Bt: str
    lift_lp: dict
    lift_l: dict
    comparison: dict

    def to_dict(self):
        def table(t, key, val):
            return [{key: a, val: ga, "iso": [{"from": x, "to": y} for x, y in sorted(iso.items())]}
                    for a, (ga, iso) in sorted(t.items())]
        return {"L": self.L.to_dict(), "Lp": self.Lp.to_dict(),
                "A0": self.A0, "B0": self.B0, "Atilde": self.At, "Btilde": self.Bt,
                "liftLp": table(self.lift_lp, "A", "GA"), "liftL": table(self.lift_l, "B", "FB"),
                "comparison": [{"from": x, "to": y} for x, y in sorted(self.comparison.items())]}

    @classmethod
    def from_dict(cls, data, L=None, Lp=None):
        from .core import Category
        try:
            L = L or Category.from_dict(data["L"])
            Lp = Lp or Category.from_dict(data["Lp"])

            def table(rows, key, val):
                out = {}
                for r in rows:
                    out[r[key]] = (r[val], {x["from"]: x["to"] for x in r["iso"]})
                return out
            return cls(L, Lp, data["A0"], data["B0"], data["Atilde"], data["Btilde"],
                       table(data["liftLp"], "A", "GA"), table(data["liftL"], "B", "FB"),
                       {x["from"]: x["to"] for x in data["comparison"]})
        except (KeyError, TypeError) as exc:
            raise MalformedInput(f"bad duality input: {exc}") from exc


class _Side:
    """A category P with anchor, schizophrenic object and lifting table into Q.

    iso[X]: Q(Q.anchor, lift X) -> P(X, P.tilde); comp: P(P.anchor, P.tilde)
    -> Q(Q.anchor, Q.tilde).
    """

    def __init__(self, tag, P, anchor, tilde):
        self.tag = tag
        self.P = P
        self.anchor = parse_cell(P, anchor)[0]
        self.tilde = parse_cell(P, tilde)[0]
        self.other = None
        self.lifted = {}
        self.iso = {}
        self.iso_inv = {}
        self.comp = {}

    @property
    def Q(self):
        return self.other.P


def _cells_deg(P, y, z, m):
    """Cells y -> z of degree m, e-iterated above the truncation."""
    top = min(m, max(P.N, 1))
    return [P.e(x, m - top) for x in hom_cells(P, y, z, top)]


def _check_iso(S, T, mapping, src, tgt, law, rep):
    """A cell bijection between hom-categories preserving d, c, e and every o_k."""
    rep.count(law)
    if set(mapping) != set(src) or set(mapping.values()) != set(tgt) or len(src) != len(tgt):
        rep.add(law, "not-bijective", len(src), len(tgt))
        return False
    ok = True
    for x, y in mapping.items():
        if S.vdeg(x) != T.vdeg(y):
            rep.add(law, "degree", S.label(x))
            ok = False
        elif S.vdeg(x) > 1:
            if mapping.get(S.d(x)) != T.d(y) or mapping.get(S.c(x)) != T.c(y):
                rep.add(law, "boundary", S.label(x))
                ok = False
    if not ok:
        return False
    for x in src:
        ex = S.e(x)
        if ex in mapping and mapping[ex] != T.e(mapping[x]):
            rep.add(law, "identity", S.label(x))
            ok = False
        for z in src:
            for k in range(1, S.vdeg(x)):
                if S.composable(k, x, z):
                    r = S.compose(k, x, z)
                    if mapping.get(r) != T.compose(k, mapping[x], mapping[z]):
                        rep.add(law, "composition", k, S.label(x), S.label(z))
                        ok = False
    return ok


def _sides(D, rep):
    """Parse and validate the tables; None when a base isomorphism is bad."""
    left = _Side("L", D.L, D.A0, D.At)
    right = _Side("Lp", D.Lp, D.B0, D.Bt)
    left.other, right.other = right, left
    for S, table in ((left, D.lift_lp), (right, D.lift_l)):
        P, Q = S.P, S.Q
        for X in P.objects():
            row = table.get(P.ids[X])
            if row is None:
                rep.add(f"lift-table-{S.tag}", "missing", P.ids[X])
                continue
            try:
                GX = parse_cell(Q, row[0])
                iso = {parse_cell(Q, a): parse_cell(P, b) for a, b in row[1].items()}
            except MalformedInput as exc:
                rep.add(f"lift-table-{S.tag}", P.ids[X], str(exc))
                continue
            if Q.vdeg(GX) != 0:
                rep.add(f"lift-table-{S.tag}", P.ids[X], "not an object")
                continue
            S.lifted[X] = GX[0]
            src = hom_cells(Q, S.other.anchor, GX[0])
            tgt = hom_cells(P, X, S.tilde)
            if _check_iso(Q, P, iso, src, tgt, f"base-iso-{S.tag}", rep):
                S.iso[X] = iso
                S.iso_inv[X] = {b: a for a, b in iso.items()}
    try:
        comp = {parse_cell(D.L, a): parse_cell(D.Lp, b) for a, b in D.comparison.items()}
    except MalformedInput as exc:
        rep.add("comparison", str(exc))
        return None
    ok = _check_iso(D.L, D.Lp, comp, hom_cells(D.L, left.anchor, left.tilde),
                    hom_cells(D.Lp, right.anchor, right.tilde), "comparison", rep)
    if ok:
        left.comp = comp
        right.comp = {b: a for a, b in comp.items()}
    return None if rep.violations else (left, right)


def solve(P, y, z, m, want, counter=None):
    """All cells phi: y -> z of degree m with phi * c = want[c] for every probe c."""
    out = []
    for phi in _cells_deg(P, y, z, m):
        for c, w in want.items():
            if counter is not None:
                counter[0] += 1
            if w is None or P.horizontal(phi, c) != w:
                break
        else:
            out.append(phi)
    return out


def _probes(P, anchor, y, m):
    cs = hom_cells(P, anchor, y)
    return cs if m == 1 else [c for c in cs if P.vdeg(c) == 1]


def _unique(found, what):
    if not found:
        raise LiftNotFound(what)
    if len(found) > 1:
        raise AmbiguousLift(what)
    return found[0]


def evaluation_cell(P, At, x):
    """L(x, At): precomposition with x on L(c^m x, At), landing in L(d^m x, At).

    Returned as a dict of hom cells; for deg x > 1 only on 1-cells, which
    are the components of the (m - 2)-modification.
    """
    At = parse_cell(P, At)[0] if isinstance(At, str) else At
    x = parse_cell(P, x) if isinstance(x, str) else x
    m = P.vdeg(x)
    A = P.ck(x, m)[0]
    return {h: P.horizontal(h, x) for h in _probes(P, A, At, m)}


def lift_evaluation(S, X, y, counter=None):
    """ev_{X,y} carried to Q: phi: lift X -> Q.tilde with
    phi * c = comp(iso(c) * y) for c in Q(Q.anchor, lift X)."""
    P, Q = S.P, S.Q
    m = P.vdeg(y)
    GX, iso = S.lifted[X], S.iso[X]
    want = {}
    for c in _probes(Q, S.other.anchor, GX, m):
        want[c] = S.comp.get(P.horizontal(iso[c], y))
    return solve(Q, GX, S.other.tilde, m, want, counter)


def lift_hom(S, f, counter=None):
    """The cell of Q realizing L(f, tilde) for f: X -> X' in P."""
    P, Q = S.P, S.Q
    m = P.vdeg(f)
    X, X2 = P.dk(f, m)[0], P.ck(f, m)[0]
    want = {}
    for c in _probes(Q, S.other.anchor, S.lifted[X2], m):
        want[c] = S.iso_inv[X].get(P.horizontal(S.iso[X2][c], f))
    return solve(Q, S.lifted[X2], S.lifted[X], m, want, counter)


def check_initial_lifting(D):
    """(i) every evaluation lifts uniquely; (ii) a base map V(Y) -> L(X, At)
    is an arrow iff all of its composites with evaluations are.

    (ii) is enumerated over maps of hom-sets, so only when every hom-category
    is discrete (truncation <= 1).
    """
    rep = ValidationReport()
    sides = _sides(D, rep)
    if sides is None:
        return rep
    for S in sides:
        P = S.P
        for X in P.objects():
            for y in hom_cells(P, S.anchor, X):
                rep.count(f"ev-lift-{S.tag}")
                found = lift_evaluation(S, X, y)
                if len(found) != 1:
                    rep.add(f"ev-lift-{S.tag}", "missing" if not found else "ambiguous",
                            P.ids[X], P.label(y))
    if rep.violations:
        return rep
    if D.L.N > 1 or D.Lp.N > 1:
        rep.count("initial-skipped")
        return rep
    for S in sides:
        _initial_side(S, rep)
    return rep


def _initial_side(S, rep):
    P, Q = S.P, S.Q
    qa = S.other.anchor
    law = f"initial-{S.tag}"
    # images of postcomposition, per (source, target) pair of Q
    realized = {}

    def arrows(y, z, src):
        key = (y, z)
        if key not in realized:
            realized[key] = {tuple(Q.horizontal(phi, c) for c in src)
                             for phi in _cells_deg(Q, y, z, 1)}
        return realized[key]

    for X in P.objects():
        tgt = hom_cells(P, X, S.tilde)
        xs = hom_cells(P, S.anchor, X)
        for Y in Q.objects():
            src = hom_cells(Q, qa, Y)
            direct_set = arrows(Y, S.lifted[X], src)
            via_sets = arrows(Y, S.other.tilde, src)
            for vals in itertools.product(tgt, repeat=len(src)):
                rep.count(law)
                direct = tuple(S.iso_inv[X][v] for v in vals) in direct_set
                via = all(tuple(S.comp[P.horizontal(v, x)] for v in vals) in via_sets for x in xs)
                if direct != via:
                    rep.add(law, P.ids[X], Q.ids[Y], ",".join(P.label(v) for v in vals))


@dataclass
class DualityWitness:
    input: DualityInput
    report: ValidationReport
    G: FunctorData = None
    F: FunctorData = None
    adjunction: AdjunctionData = None
    hom_iso: object = None
    evaluations: dict = field(default_factory=dict)

    @property
    def ok(self):
        return self.report.ok

    def to_dict(self):
        out = {"status": self.report.status, "input": self.input.to_dict(),
               "report": self.report.to_dict()}
        if self.adjunction is not None:
            A = self.adjunction
            out["G"] = self.G.to_dict()
            out["F"] = self.F.to_dict()
            out["unit"] = A.unit.to_dict()
            out["counit"] = A.counit.to_dict()
            out["hom_sizes"] = sorted(
                [A.L.ids[a], A.Lp.ids[b], n] for (a, b), n in self.hom_iso.sizes().items())
            out["evaluations"] = {tag: [[x, y, z] for x, y, z in rows]
                                  for tag, rows in sorted(self.evaluations.items())}
        return out


def synthesize_dual_adjunction(D):
    """G, F on cells as unique lifts of hom-precomposition, unit and counit as
    lifted evaluation families, then every adjunction law checked."""
    rep = ValidationReport()
    wit = DualityWitness(D, rep)
    sides = _sides(D, rep)
    if sides is None:
        return wit
    counter = [0]
    maps, evs = {}, {}
    try:
        for S in sides:
            P = S.P
            ev = {}
            for X in P.objects():
                for y in hom_cells(P, S.anchor, X):
                    ev[X, y] = _unique(lift_evaluation(S, X, y, counter),
                                       f"ev[{P.ids[X]},{P.label(y)}] in {S.tag}")
            evs[S.tag] = ev
            mp = {}
            for i in range(len(P)):
                f = (i, 0)
                if P.vdeg(f) == 0:
                    mp[i] = (S.lifted[i], 0)
                else:
                    mp[i] = _unique(lift_hom(S, f, counter), f"{P.ids[i]} in {S.tag}")
            maps[S.tag] = mp
        units = {}
        for S in sides:
            # unit-like family at X: X -> lift_other(lift_S(X)) in P
            P, T = S.P, S.other
            comps = {}
            for X in P.objects():
                FX = S.lifted[X]
                GFX = T.lifted[FX]
                want = {c: T.iso_inv[FX].get(evs[S.tag][X, c]) for c in hom_cells(P, S.anchor, X)}
                comps[X] = _unique(solve(P, X, GFX, 1, want, counter),
                                   f"component at {P.ids[X]} in {S.tag}")
            units[S.tag] = comps
    except LiftNotFound as exc:
        rep.add("lift-not-found", str(exc))
        return wit
    except AmbiguousLift as exc:
        rep.add("ambiguous-lift", str(exc))
        return wit
    rep.count("lift-search", counter[0])
    left, right = sides
    L, Lp = D.L, D.Lp
    wit.G = FunctorData("G", L, Lp, maps["L"])
    wit.F = FunctorData("F", Lp, L, maps["Lp"])
    wit.evaluations = {
        S.tag: [[S.P.ids[X], S.P.label(y), S.Q.label(phi)] for (X, y), phi in sorted(evs[S.tag].items())]
        for S in sides}
    A = covariant_adjunction(wit.F, wit.G, units["Lp"], units["L"])
    wit.adjunction = A
    rep.merge(check_strict_adjunction(A))
    if rep.violations:
        return wit
    pair = hom_iso_from_unit_counit(A)
    wit.hom_iso = pair
    rep.merge(pair.report)
    _double_dual(wit, right, units["Lp"])
    return wit


def search_comparison(D, limit=None):
    """First comparison L(A0, At) -> L'(B0, Bt), in lexicographic order of the
    images, under which synthesis succeeds; None when there is none.

    Candidates are degree-preserving bijections; each is vetted by the same
    iso check synthesis runs, and the number tried is capped by the search limit.
    """
    from .functors import search_limit
    limit = search_limit() if limit is None else limit
    L, Lp = D.L, D.Lp
    src = hom_cells(L, parse_cell(L, D.A0)[0], parse_cell(L, D.At)[0])
    tgt = hom_cells(Lp, parse_cell(Lp, D.B0)[0], parse_cell(Lp, D.Bt)[0])
    if len(src) != len(tgt):
        return None
    src = sorted(src, key=L.label)
    tgt = sorted(tgt, key=Lp.label)
    tried = 0
    for perm in itertools.permutations(tgt):
        if any(L.vdeg(x) != Lp.vdeg(y) for x, y in zip(src, perm)):
            continue
        tried += 1
        if tried > limit:
            raise SearchLimitExceeded(f"more than {limit} comparison candidates")
        mapping = dict(zip(src, perm))
        if not _check_iso(L, Lp, mapping, src, tgt, "comparison", ValidationReport()):
            continue
        cand = DualityInput(L, Lp, D.A0, D.B0, D.At, D.Bt, D.lift_lp, D.lift_l,
                            {L.label(x): Lp.label(y) for x, y in mapping.items()})
        if synthesize_dual_adjunction(cand).ok:
            return cand.comparison
    return None


def covariant_adjunction(F, G, eta, eps, Lop=None):
    """F: L' -> op(L) left adjoint to G: op(L) -> L' from contravariant F, G.

    ``eta[B]``: B -> GFB in L'; ``eps[A]``: A -> FGA in L.
    """
    L, Lp = G.source, F.source
    Lop = Lop or opposite(L)
    to_op = {i: Lop.v((L.ids[v[0]], v[1])) for i, v in enumerate(F.arr)}
    Fc = FunctorData("F", Lp, Lop, to_op)
    Gc = FunctorData("G", Lop, Lp, {L.ids[i]: v for i, v in enumerate(G.arr)})
    unit = ModificationData("eta", 0, identity_functor(Lp), compose_functors(Gc, Fc), eta)
    counit = ModificationData("eps", 0, compose_functors(Fc, Gc), identity_functor(Lop),
                              {L.ids[a]: Lop.v((L.ids[x[0]], x[1])) for a, x in eps.items()})
    return AdjunctionData(Fc, Gc, unit, counit, "dual")


def _double_dual(wit, right, eta):
    """V(eta_B): c -> eta_B * c is a bijection V(B) -> V(GFB)."""
    Lp, rep = right.P, wit.report
    for B, e in sorted(eta.items()):
        rep.count("double-dual")
        src = hom_cells(Lp, right.anchor, B)
        img = [Lp.horizontal(e, c) for c in src]
        tgt = hom_cells(Lp, right.anchor, right.other.lifted[right.lifted[B]])
        if len(set(img)) != len(src) or set(img) != set(tgt):
            rep.add("double-dual", Lp.ids[B])


def check_concrete_duality(F, G, anchors, At, Bt, comparison, factor_G, factor_F):
    """Both hom-functors factor through the forgetfuls, U(At) ~ V(Bt).

    F: L' -> L and G: L -> L' are the contravariant functors as cell maps;
    ``factor_G[A]``: V(GA) -> L(A, At) and ``factor_F[B]``: U(FB) -> L'(B, Bt)
    on labels; ``comparison``: L(A0, At) -> L'(B0, Bt).
    """
    L, Lp = G.source, F.source
    A0, B0 = anchors
    rep = ValidationReport()
    lift_lp = {A: (G.at(A), iso) for A, iso in factor_G.items()}
    lift_l = {B: (F.at(B), iso) for B, iso in factor_F.items()}
    D = DualityInput(L, Lp, A0, B0, At, Bt, lift_lp, lift_l, comparison)
    sides = _sides(D, rep)
    if sides is None:
        return rep
    for S, H in zip(sides, (G, F)):
        P, Q = S.P, S.Q
        for i in range(len(P)):
            f = (i, 0)
            m = P.vdeg(f)
            if m == 0:
                continue
            X, X2 = P.dk(f, m)[0], P.ck(f, m)[0]
            for c in _probes(Q, S.other.anchor, S.lifted[X2], m):
                rep.count(f"factorization-{S.tag}")
                lhs = S.iso[X].get(Q.horizontal(H(f), c))
                if lhs != P.horizontal(S.iso[X2][c], f):
                    rep.add(f"factorization-{S.tag}", P.ids[i], Q.label(c))
    # objects representing the lifted hom-functors
    left, right = sides
    rep.count("anchor-image")
    if not decide_equiv(L, F((right.anchor, 0)), (left.tilde, 0)):
        rep.add("anchor-image", "F(B0)", L.ids[left.tilde])
    if not decide_equiv(Lp, G((left.anchor, 0)), (right.tilde, 0)):
        rep.add("anchor-image", "G(A0)", Lp.ids[right.tilde])
    return rep


def check_witness_duality(wit, At=None):
    """check_concrete_duality on a synthesized witness; At may be overridden."""
    D = wit.input
    return check_concrete_duality(
        wit.F, wit.G, (D.A0, D.B0), At or D.At, D.Bt, D.comparison,
        {A: iso for A, (_, iso) in D.lift_lp.items()},
        {B: iso for B, (_, iso) in D.lift_l.items()})


def check_representability(A):
    """L'(F(-), b) is strictly representable by (G b, eps_b) for every b."""
    rep = ValidationReport()
    Lop = A.Lp
    for b in Lop.objects():
        rep.count("represented")
        pres = pullback_presheaf(hom_presheaf(Lop, b), A.F)
        Gb = A.G((b, 0))[0]
        beta = pres.values[Gb].v(Lop.label(A.counit(b)))
        res = check_representable(pres, "strict", witness=(Gb, beta))
        if not res["representable"]:
            rep.add("represented", Lop.ids[b])
    return rep


# -- the finite vector space instance ------------------------------------------

def vecf2_input(P=None, anchor="V1"):
    """Self-duality of the F2 skeleton at V1 with transpose as base isomorphisms.

    V(GA) = L(V1, A) holds column vectors, L(A, V1) row vectors; transpose
    matches them.  The same table serves both sides.  Identity cells above
    the arrows, present when the truncation is higher, go along.
    """
    from .fixtures import matrix_id, transpose, vecf2
    P = P or vecf2(2)
    mats = P.matrices

    def with_identities(m):
        out = dict(m)
        for x, y in m.items():
            vx, vy = P.v(x), P.v(y)
            for k in range(1, P.N):
                out[P.label(P.e(vx, k))] = P.label(P.e(vy, k))
        return out

    table = {}
    for i in range(len(P.objects())):
        A = f"V{i}"
        iso = {}
        for cid, (src, tgt, m) in mats.items():
            if src == 1 and tgt == i:
                iso[cid] = matrix_id(i, 1, transpose(m, i, 1))
        table[A] = (A, with_identities(iso))
    ident = with_identities({cid: cid for cid, (s, t, _) in mats.items() if s == 1 and t == 1})
    return DualityInput(P, P, anchor, anchor, anchor, anchor, table, dict(table), ident)
