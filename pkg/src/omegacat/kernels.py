"""Enumeration kernels for the strict-law checks.

Composition tables are dense int64 arrays with -1 for "undefined".  Each
kernel has a numba version and a plain numpy version; ``OMEGACAT_KERNELS``
selects one (``numba`` by default when it imports, ``numpy`` otherwise).
Both return ``(violations, total)`` where ``violations`` holds at most
``cap`` witness rows.
"""
import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


CAP = 64


def backend():
    choice = os.environ.get("OMEGACAT_KERNELS", "").strip().lower()
    if choice == "numpy" or not HAVE_NUMBA:
        return "numpy"
    return "numba"


# -- associativity: (f o g) o h == f o (g o h) -----------------------------

@njit(cache=True)
def _assoc_numba(A, cap):
    n = A.shape[0]
    out = np.empty((cap, 3), dtype=np.int64)
    total = 0
    for f in range(n):
        for g in range(n):
            fg = A[f, g]
            if fg < 0:
                continue
            for h in range(n):
                gh = A[g, h]
                if gh < 0:
                    continue
                left = A[fg, h]
                right = A[f, gh]
                if left != right:
                    if total < cap:
                        out[total, 0] = f
                        out[total, 1] = g
                        out[total, 2] = h
                    total += 1
    return out[: min(total, cap)], total


def _assoc_numpy(A, cap):
    F, G = np.nonzero(A >= 0)
    FG = A[F, G]
    GH = A[G, :]
    left = A[FG, :]
    defined = GH >= 0
    right = np.where(defined, A[F[:, None], np.where(defined, GH, 0)], -1)
    bad = defined & (left != right)
    rows, hs = np.nonzero(bad)
    wit = np.stack([F[rows], G[rows], hs], axis=1).astype(np.int64)
    return wit[:cap], int(len(rows))


def associativity(A, cap=CAP):
    A = np.ascontiguousarray(A, dtype=np.int64)
    if A.shape[0] == 0:
        return np.empty((0, 3), dtype=np.int64), 0
    if backend() == "numba":
        out, total = _assoc_numba(A, cap)
        return out, int(total)
    return _assoc_numpy(A, cap)


# -- interchange: (f ok f') oi (g ok g') == (f oi g) ok (f' oi g'), k < i ---

@njit(cache=True)
def _interchange_numba(Ak, Ai, pairs, cap):
    m = pairs.shape[0]
    out = np.empty((cap, 4), dtype=np.int64)
    total = 0
    for a in range(m):
        f = pairs[a, 0]
        f2 = pairs[a, 1]
        top = pairs[a, 2]
        for b in range(m):
            g = pairs[b, 0]
            g2 = pairs[b, 1]
            bot = pairs[b, 2]
            lhs = Ai[top, bot]
            if lhs < 0:
                continue
            p = Ai[f, g]
            q = Ai[f2, g2]
            ok = p >= 0 and q >= 0
            if ok:
                ok = Ak[p, q] == lhs
            if not ok:
                if total < cap:
                    out[total, 0] = f
                    out[total, 1] = f2
                    out[total, 2] = g
                    out[total, 3] = g2
                total += 1
    return out[: min(total, cap)], total


def _interchange_numpy(Ak, Ai, pairs, cap):
    rows = []
    total = 0
    g, g2, bot = pairs[:, 0], pairs[:, 1], pairs[:, 2]
    for f, f2, top in pairs:
        lhs = Ai[top, bot]
        live = lhs >= 0
        if not live.any():
            continue
        p = Ai[f, g]
        q = Ai[f2, g2]
        both = (p >= 0) & (q >= 0)
        rhs = np.where(both, Ak[np.where(both, p, 0), np.where(both, q, 0)], -1)
        bad = live & (~both | (rhs != lhs))
        idx = np.nonzero(bad)[0]
        total += len(idx)
        for j in idx[: max(0, cap - len(rows))]:
            rows.append((f, f2, g[j], g2[j]))
    wit = np.array(rows, dtype=np.int64).reshape(-1, 4)
    return wit, total


def interchange(Ak, Ai, pairs, cap=CAP):
    """``pairs`` rows are (f, f', f ok f') over the k-composable pairs."""
    Ak = np.ascontiguousarray(Ak, dtype=np.int64)
    Ai = np.ascontiguousarray(Ai, dtype=np.int64)
    pairs = np.ascontiguousarray(pairs, dtype=np.int64).reshape(-1, 3)
    if len(pairs) == 0:
        return np.empty((0, 4), dtype=np.int64), 0
    if backend() == "numba":
        out, total = _interchange_numba(Ak, Ai, pairs, cap)
        return out, int(total)
    return _interchange_numpy(Ak, Ai, pairs, cap)


# -- group tables -----------------------------------------------------------

@njit(cache=True)
def _table_assoc_numba(T):
    n = T.shape[0]
    bad = 0
    for a in range(n):
        for b in range(n):
            ab = T[a, b]
            for c in range(n):
                if T[ab, c] != T[a, T[b, c]]:
                    bad += 1
    return bad


def table_associativity_failures(T):
    """Number of triples breaking associativity of a total operation table."""
    T = np.ascontiguousarray(T, dtype=np.int64)
    if T.shape[0] == 0:
        return 0
    if backend() == "numba":
        return int(_table_assoc_numba(T))
    left = T[T[:, :, None], np.arange(len(T))[None, None, :]]
    right = T[np.arange(len(T))[:, None, None], T[None, :, :]]
    return int((left != right).sum())
