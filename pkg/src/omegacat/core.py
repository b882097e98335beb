"""Finite truncated strict infinity-categories as explicit cell complexes.

A presentation stores cells of degree <= N together with d, c, e and one
total composition table per k.  Cells above N are never stored: they are
the e-iterates ``(x, p)`` of degree-N cells and every operation on them is
reduced to a table lookup through e^p(f o_k g) = e^p f o_{k+p} e^p g.

Internally a (virtual) cell is a pair ``(index, power)`` in canonical form:
``power > 0`` only when the base has degree N.  The public face uses
``VCell(id, power)``.
"""
import re
from typing import NamedTuple

import numpy as np

from .errors import DegreeMismatch, MalformedInput, NotComposable

CATEGORY_FIELDS = {"name", "truncation", "cells", "identities", "compositions"}


class VCell(NamedTuple):
    base: str
    power: int = 0

    def __str__(self):
        if self.power == 0:
            return self.base
        if self.power == 1:
            return f"e({self.base})"
        return f"e^{self.power}({self.base})"


def ename(x, p=1):
    return str(VCell(x, p))


class Category:
    """Immutable presentation of a finite N-truncated strict category."""

    def __init__(self, name, truncation, cells, identities=(), compositions=()):
        if not isinstance(truncation, int) or isinstance(truncation, bool) or truncation < 0:
            raise MalformedInput(f"truncation must be a non-negative integer, got {truncation!r}")
        self.name = str(name)
        self.N = truncation
        records = {}
        for rec in cells:
            cid, degree, dom, cod = rec
            if not isinstance(cid, str) or not cid:
                raise MalformedInput(f"bad cell id {cid!r}")
            if cid in records:
                raise MalformedInput(f"duplicate cell id {cid!r}")
            if not isinstance(degree, int) or isinstance(degree, bool) or degree < 0:
                raise MalformedInput(f"cell {cid!r}: bad degree {degree!r}")
            if degree > truncation:
                raise MalformedInput(f"cell {cid!r}: degree {degree} above truncation {truncation}")
            if degree == 0 and (dom is not None or cod is not None):
                raise MalformedInput(f"object {cid!r} must not have dom/cod")
            if degree > 0 and (dom is None or cod is None):
                raise MalformedInput(f"cell {cid!r} of degree {degree} needs dom and cod")
            records[cid] = (degree, dom, cod)
        self.ids = sorted(records)
        self.index = {cid: i for i, cid in enumerate(self.ids)}
        n = len(self.ids)
        self.deg = np.zeros(n, dtype=np.int64)
        self.dom = np.full(n, -1, dtype=np.int64)
        self.cod = np.full(n, -1, dtype=np.int64)
        for i, cid in enumerate(self.ids):
            degree, dom, cod = records[cid]
            self.deg[i] = degree
            if degree > 0:
                for end in (dom, cod):
                    if end not in records:
                        raise MalformedInput(f"cell {cid!r}: dangling boundary {end!r}")
                    if records[end][0] != degree - 1:
                        raise MalformedInput(f"cell {cid!r}: boundary {end!r} has wrong degree")
                self.dom[i] = self.index[dom]
                self.cod[i] = self.index[cod]

        self.ide = np.full(n, -1, dtype=np.int64)
        self.ident_of = np.full(n, -1, dtype=np.int64)
        self.identity_entries = {}
        for of, is_ in identities:
            for x in (of, is_):
                if x not in self.index:
                    raise MalformedInput(f"identity entry refers to unknown cell {x!r}")
            if of in self.identity_entries:
                raise MalformedInput(f"two identity entries for {of!r}")
            self.identity_entries[of] = is_
            self.ide[self.index[of]] = self.index[is_]
            self.ident_of[self.index[is_]] = self.index[of]

        self.entries = {}
        self.comp = np.full((truncation + 1, n, n), -1, dtype=np.int64)
        for k, left, right, result in compositions:
            if not isinstance(k, int) or isinstance(k, bool) or k < 1:
                raise MalformedInput(f"composition index must be >= 1, got {k!r}")
            for x in (left, right, result):
                if x not in self.index:
                    raise MalformedInput(f"composition entry refers to unknown cell {x!r}")
            key = (k, left, right)
            if key in self.entries and self.entries[key] != result:
                raise MalformedInput(f"conflicting results for {left} o_{k} {right}")
            self.entries[key] = result
            if k <= truncation:
                self.comp[k, self.index[left], self.index[right]] = self.index[result]

        self._by_degree = [np.nonzero(self.deg == j)[0] for j in range(truncation + 1)]
        self._arrows = {}
        for i in range(n):
            if self.deg[i] > 0:
                self._arrows.setdefault((int(self.dom[i]), int(self.cod[i])), []).append(i)

    # -- basic accessors ---------------------------------------------------

    def __len__(self):
        return len(self.ids)

    def __repr__(self):
        return f"Category({self.name!r}, N={self.N}, cells={len(self.ids)})"

    def __eq__(self, other):
        return isinstance(other, Category) and self.to_dict() == other.to_dict()

    __hash__ = None

    def cells(self, degree=None):
        if degree is None:
            return list(range(len(self.ids)))
        if degree > self.N or degree < 0:
            return []
        return [int(i) for i in self._by_degree[degree]]

    def objects(self):
        return self.cells(0)

    def degree_of(self, cid):
        return int(self.deg[self.index[cid]])

    # -- virtual cells -------------------------------------------------------

    def norm(self, i, p=0):
        while p > 0 and self.ide[i] >= 0:
            i = int(self.ide[i])
            p -= 1
        return (int(i), p)

    def v(self, x):
        """Intern a cell given as id, VCell or (id, power)."""
        if isinstance(x, str):
            if x not in self.index:
                raise KeyError(x)
            return (self.index[x], 0)
        base, p = x
        if isinstance(base, str):
            if base not in self.index:
                raise KeyError(base)
            base = self.index[base]
        return self.norm(base, p)

    def vc(self, v):
        return VCell(self.ids[v[0]], v[1])

    def label(self, v):
        return str(self.vc(v))

    def vdeg(self, v):
        return int(self.deg[v[0]]) + v[1]

    def d(self, v):
        i, p = v
        if p > 0:
            return (i, p - 1)
        if self.deg[i] == 0:
            raise DegreeMismatch(f"{self.ids[i]} is an object")
        return (int(self.dom[i]), 0)

    def c(self, v):
        i, p = v
        if p > 0:
            return (i, p - 1)
        if self.deg[i] == 0:
            raise DegreeMismatch(f"{self.ids[i]} is an object")
        return (int(self.cod[i]), 0)

    def e(self, v, k=1):
        for _ in range(k):
            i, p = v
            v = (int(self.ide[i]), 0) if p == 0 and self.ide[i] >= 0 else (i, p + 1)
        return v

    def dk(self, v, k):
        for _ in range(k):
            v = self.d(v)
        return v

    def ck(self, v, k):
        for _ in range(k):
            v = self.c(v)
        return v

    def is_identity(self, v):
        return v[1] > 0 or self.ident_of[v[0]] >= 0

    def identity_of(self, v):
        """The cell z with e(z) = v, or None."""
        if v[1] > 0:
            return (v[0], v[1] - 1)
        z = self.ident_of[v[0]]
        return None if z < 0 else (int(z), 0)

    def composable(self, k, f, g):
        m = self.vdeg(f)
        if self.vdeg(g) != m or k < 1 or k > m:
            return False
        return self.dk(f, k) == self.ck(g, k)

    def compose(self, k, f, g):
        """f o_k g, defined iff d^k f = c^k g."""
        m = self.vdeg(f)
        if self.vdeg(g) != m:
            raise DegreeMismatch(f"{self.label(f)} and {self.label(g)} differ in degree")
        if k < 1 or k > m or self.dk(f, k) != self.ck(g, k):
            raise NotComposable(f"{self.label(f)} o_{k} {self.label(g)} is not defined")
        if f[1] == 0 and g[1] == 0:
            r = int(self.comp[k, f[0], g[0]])
            if r < 0:
                raise NotComposable(f"missing table entry {self.label(f)} o_{k} {self.label(g)}")
            return (r, 0)
        p = f[1]
        if g[1] != p:
            raise DegreeMismatch("virtual cells not in canonical form")
        if k > p:
            r = self.compose(k - p, (f[0], 0), (g[0], 0))
            return self.norm(r[0], r[1] + p)
        # both sides are e^p of the same degree-N cell: unit law
        return f

    def horizontal(self, g, f, level=0):
        """g * f for g in L(b, c), f in L(a, b) with a, b, c of degree ``level``."""
        top = max(self.vdeg(g), self.vdeg(f))
        k = top - level
        if k < 1:
            raise NotComposable("horizontal composite needs cells above the object level")
        gg = self.e(g, top - self.vdeg(g))
        ff = self.e(f, top - self.vdeg(f))
        return self.compose(k, gg, ff)

    def arrows(self, x, y):
        """Cells one degree up from x to y (virtual identities above N)."""
        if self.vdeg(x) != self.vdeg(y):
            return []
        if x[1] > 0 or self.deg[x[0]] >= self.N:
            return [self.e(x)] if x == y else []
        return [(i, 0) for i in self._arrows.get((x[0], y[0]), [])]

    def parallel(self, f, g):
        if self.vdeg(f) != self.vdeg(g):
            return False
        if self.vdeg(f) == 0:
            return True
        return self.d(f) == self.d(g) and self.c(f) == self.c(g)

    # -- serialisation -------------------------------------------------------

    def records(self):
        out = []
        for i, cid in enumerate(self.ids):
            if self.deg[i] == 0:
                out.append((cid, 0, None, None))
            else:
                out.append((cid, int(self.deg[i]), self.ids[self.dom[i]], self.ids[self.cod[i]]))
        return out

    def to_dict(self):
        cells = []
        for cid, degree, dom, cod in self.records():
            rec = {"id": cid, "degree": degree}
            if degree > 0:
                rec["dom"] = dom
                rec["cod"] = cod
            cells.append(rec)
        identities = [{"of": z, "is": e} for z, e in sorted(self.identity_entries.items())]
        compositions = [
            {"k": k, "left": f, "right": g, "result": h}
            for (k, f, g), h in sorted(self.entries.items())
        ]
        return {
            "name": self.name,
            "truncation": self.N,
            "cells": cells,
            "identities": identities,
            "compositions": compositions,
        }

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise MalformedInput("category document must be a JSON object")
        extra = set(data) - CATEGORY_FIELDS
        if extra:
            raise MalformedInput(f"unknown fields {sorted(extra)}")
        missing = {"name", "truncation", "cells"} - set(data)
        if missing:
            raise MalformedInput(f"missing fields {sorted(missing)}")
        cells = []
        for rec in _list(data["cells"], "cells"):
            _check_keys(rec, {"id", "degree"}, {"dom", "cod"}, "cell")
            cells.append((rec["id"], rec["degree"], rec.get("dom"), rec.get("cod")))
        idents = []
        for rec in _list(data.get("identities", []), "identities"):
            _check_keys(rec, {"of", "is"}, set(), "identity")
            idents.append((rec["of"], rec["is"]))
        comps = []
        for rec in _list(data.get("compositions", []), "compositions"):
            _check_keys(rec, {"k", "left", "right", "result"}, set(), "composition")
            comps.append((rec["k"], rec["left"], rec["right"], rec["result"]))
        return cls(data["name"], data["truncation"], cells, idents, comps)

    def with_name(self, name):
        return build(name, self.N, self.records(), self.identity_entries.items(),
                     [(k, f, g, h) for (k, f, g), h in self.entries.items()])


def build(name, truncation, cells, identities, compositions):
    return Category(name, truncation, list(cells), list(identities), list(compositions))


def _list(x, what):
    if not isinstance(x, list):
        raise MalformedInput(f"{what} must be a list")
    return x


def _check_keys(rec, required, optional, what):
    if not isinstance(rec, dict):
        raise MalformedInput(f"{what} record must be an object")
    keys = set(rec)
    if not required <= keys:
        raise MalformedInput(f"{what} record missing {sorted(required - keys)}")
    if keys - required - optional:
        raise MalformedInput(f"{what} record has unknown fields {sorted(keys - required - optional)}")


def empty(name, truncation=0):
    return Category(name, truncation, [], [], [])


def table_from_function(cells, identities, ks, op):
    """Close a presentation by evaluating ``op(k, f, g)`` on all composable pairs.

    ``cells`` are (id, degree, dom, cod) records.  Used by fixture generators.
    """
    rec = {c[0]: c for c in cells}

    def dk(x, k):
        for _ in range(k):
            x = rec[x][2]
        return x

    def ck(x, k):
        for _ in range(k):
            x = rec[x][3]
        return x

    by_deg = {}
    for c in cells:
        by_deg.setdefault(c[1], []).append(c[0])
    comps = []
    for m, group in sorted(by_deg.items()):
        for k in ks:
            if k > m:
                continue
            for f in group:
                for g in group:
                    if dk(f, k) == ck(g, k):
                        comps.append((k, f, g, op(k, f, g)))
    return comps


def parse_cell(P, s):
    """Internal cell from a label, virtual identities written e(x) or e^p(x)."""
    if s in P.index:
        return (P.index[s], 0)
    m = re.fullmatch(r"e(?:\^(\d+))?\((.+)\)", s)
    if m and m.group(2) in P.index:
        return P.v((m.group(2), int(m.group(1) or 1)))
    raise MalformedInput(f"{s} is not a cell of {P.name}")
