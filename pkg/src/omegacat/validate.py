"""Axiom checks for presentations: globular structure and strict laws."""
import numpy as np

from . import kernels
from .errors import OmegaCatError
from .report import ValidationReport


def _dk_table(P):
    """dks[k][i] = index of d^k(cell i) (or -1), likewise cks."""
    n = len(P)
    dks = [np.arange(n, dtype=np.int64)]
    cks = [np.arange(n, dtype=np.int64)]
    for _ in range(P.N):
        prev_d, prev_c = dks[-1], cks[-1]
        nd = np.where(prev_d >= 0, P.dom[np.maximum(prev_d, 0)], -1)
        nc = np.where(prev_c >= 0, P.cod[np.maximum(prev_c, 0)], -1)
        dks.append(nd)
        cks.append(nc)
    return dks, cks


def composable_pairs(P, k, degree):
    """All (f, g) of the given degree with d^k f = c^k g, as index arrays."""
    cells = np.asarray(P.cells(degree), dtype=np.int64)
    if k > degree or len(cells) == 0:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    dks, cks = _dk_table(P)
    D = dks[k][cells]
    C = cks[k][cells]
    F, G = np.nonzero(D[:, None] == C[None, :])
    return cells[F], cells[G]


def validate_globular(P):
    rep = ValidationReport()
    ids = P.ids
    for i in range(len(P)):
        if P.deg[i] >= 2:
            rep.count("globularity")
            d, c = P.dom[i], P.cod[i]
            if P.dom[d] != P.dom[c] or P.cod[c] != P.cod[d]:
                rep.add("globularity", ids[i])

    for i in range(len(P)):
        if P.deg[i] < P.N:
            rep.count("identity-total")
            if P.ide[i] < 0:
                rep.add("identity-total", ids[i])
    for z, e in sorted(P.identity_entries.items()):
        rep.count("identity-boundary")
        zi, ei = P.index[z], P.index[e]
        if P.deg[ei] != P.deg[zi] + 1 or P.dom[ei] != zi or P.cod[ei] != zi:
            rep.add("identity-boundary", z, e)

    for (k, f, g), h in sorted(P.entries.items()):
        fi, gi, hi = P.index[f], P.index[g], P.index[h]
        m = P.deg[fi]
        rep.count("composition-degree")
        if P.deg[gi] != m or P.deg[hi] != m or k > m:
            rep.add("composition-degree", k, f, g, h)
            continue
        rep.count("composability")
        if P.dk((fi, 0), k) != P.ck((gi, 0), k):
            rep.add("composability", k, f, g)
            continue
        rep.count("composite-boundary")
        if k == 1:
            ok = P.dom[hi] == P.dom[gi] and P.cod[hi] == P.cod[fi]
        else:
            dd = P.comp[k - 1, P.dom[fi], P.dom[gi]]
            cc = P.comp[k - 1, P.cod[fi], P.cod[gi]]
            ok = (dd < 0 or P.dom[hi] == dd) and (cc < 0 or P.cod[hi] == cc)
        if not ok:
            rep.add("composite-boundary", k, f, g, h)

    for m in range(1, P.N + 1):
        for k in range(1, m + 1):
            F, G = composable_pairs(P, k, m)
            rep.count("composition-total", len(F))
            missing = np.nonzero(P.comp[k][F, G] < 0)[0]
            for j in missing:
                rep.add("composition-total", k, ids[F[j]], ids[G[j]])
    return rep


def validate_strict(P):
    rep = ValidationReport()
    ids = P.ids
    for k in range(1, P.N + 1):
        A = P.comp[k]
        wit, total = kernels.associativity(A)
        rep.count("associativity", int((A >= 0).sum()))
        for f, g, h in wit:
            rep.add("associativity", k, ids[f], ids[g], ids[h])
        if total > len(wit):
            rep.add("associativity", k, f"+{total - len(wit)} more")

    for i in range(len(P)):
        f = (i, 0)
        for k in range(1, P.vdeg(f) + 1):
            rep.count("unit")
            left = P.e(P.ck(f, k), k)
            right = P.e(P.dk(f, k), k)
            for law, a, b in (("unit-left", left, f), ("unit-right", f, right)):
                try:
                    ok = P.compose(k, a, b) == f
                except OmegaCatError:
                    ok = False
                if not ok:
                    rep.add(law, k, ids[i])

    for i in range(2, P.N + 1):
        for k in range(1, i):
            Ak, Ai = P.comp[k], P.comp[i]
            F, G = np.nonzero(Ak >= 0)
            keep = P.deg[F] >= i
            pairs = np.stack([F[keep], G[keep], Ak[F[keep], G[keep]]], axis=1)
            wit, total = kernels.interchange(Ak, Ai, pairs)
            rep.count("interchange", len(pairs) ** 2)
            for f, f2, g, g2 in wit:
                rep.add("interchange", k, i, ids[f], ids[f2], ids[g], ids[g2])
            if total > len(wit):
                rep.add("interchange", k, i, f"+{total - len(wit)} more")

    for (k, f, g), h in sorted(P.entries.items()):
        fi, gi = P.index[f], P.index[g]
        if k > P.N or P.deg[fi] >= P.N or P.comp[k, fi, gi] < 0:
            continue
        rep.count("identity-preservation")
        try:
            ok = P.compose(k + 1, P.e((fi, 0)), P.e((gi, 0))) == P.e(P.v(h))
        except OmegaCatError:
            ok = False
        if not ok:
            rep.add("identity-preservation", k, f, g)
    return rep


def validate(P):
    """Globular checks, then strict laws when the globular layer is clean."""
    rep = validate_globular(P)
    if rep.ok:
        rep.merge(validate_strict(P))
    return rep
