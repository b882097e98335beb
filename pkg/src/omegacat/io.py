"""JSON interchange: canonical dumps and a workspace resolving references.

A reference is an inline object, a path relative to the referring file, or
``fixture:NAME`` for a member of the built-in corpus.
"""
import hashlib
import json
from pathlib import Path

from .core import Category
from .errors import MalformedInput, OmegaCatError
from .functors import FunctorData, ModificationData
from .limits import DiagramData, GraphPresentation
from .presheaf import PresheafData, hom_presheaf


def dumps(obj):
    """Canonical form: sorted keys, one-space indent, UTF-8, trailing newline."""
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=1) + "\n"


def write(path, obj):
    Path(path).write_text(dumps(obj), encoding="utf-8")


def checksum(text):
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def read_json(path):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise MalformedInput(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


class Workspace:
    """Loaded objects keyed by resolved reference, so shared refs share objects."""

    def __init__(self, root=".", eager=True):
        self.root = Path(root)
        self.eager = eager
        self.loaded = {}

    def _resolve(self, ref, base):
        """(key, data, directory) for a reference."""
        if isinstance(ref, dict):
            return None, ref, base
        if not isinstance(ref, str):
            raise MalformedInput(f"bad reference {ref!r}")
        if ref.startswith("fixture:"):
            return ref, None, base
        p = (Path(base) / ref).resolve()
        return str(p), read_json(p), p.parent

    def _cached(self, kind, ref, base, make):
        key, data, where = self._resolve(ref, base)
        if key is not None and (kind, key) in self.loaded:
            return self.loaded[kind, key]
        obj = make(key, data, where)
        if key is not None:
            self.loaded[kind, key] = obj
        return obj

    def category(self, ref, base=None):
        base = base or self.root

        def make(key, data, where):
            if data is None:
                from .fixtures import corpus
                name = key.split(":", 1)[1]
                fx = corpus()
                if name not in fx:
                    raise MalformedInput(f"unknown fixture {name}")
                return fx[name]
            if not isinstance(data, dict):
                raise MalformedInput("category document must be a JSON object")
            if "category" in data and "cells" not in data:
                return self.category(data["category"], where)
            P = Category.from_dict(data)
            if self.eager:
                from .validate import validate_globular
                rep = validate_globular(P)
                if not rep.ok:
                    law, wit = sorted(rep.violations)[0]
                    raise MalformedInput(f"{P.name}: {law} violated at {list(wit)}")
            return P
        return self._cached("category", ref, base, make)

    def functor(self, ref, base=None):
        base = base or self.root

        def make(key, data, where):
            _need(data, {"source", "target", "map"}, "functor")
            S = self.category(data["source"], where)
            T = self.category(data["target"], where)
            m = {}
            for row in data["map"]:
                _need(row, {"from", "to"}, "functor row")
                m[_id(S, row["from"])] = _vcell(T, row["to"], row.get("epower", 0))
            try:
                return FunctorData(data.get("name", "F"), S, T, m)
            except OmegaCatError as exc:
                raise MalformedInput(str(exc)) from exc
        return self._cached("functor", ref, base, make)

    def transformation(self, ref, base=None):
        """A functor or a modification document."""
        base = base or self.root
        key, data, where = self._resolve(ref, base)
        if data is not None and "level" in data:
            return self.modification(ref, base)
        return self.functor(ref, base)

    def modification(self, ref, base=None):
        base = base or self.root

        def make(key, data, where):
            _need(data, {"level", "stack", "components"}, "modification")
            if not isinstance(data["stack"], list) or len(data["stack"]) != 2:
                raise MalformedInput("stack must list the boundary pair [dom, cod]")
            dom = self.transformation(data["stack"][0], where)
            cod = self.transformation(data["stack"][1], where)
            T = dom.target
            comps = {}
            for row in data["components"]:
                _need(row, {"at", "cell"}, "component")
                comps[_id(dom.source, row["at"])] = _vcell(T, row["cell"], row.get("epower", 0))
            try:
                return ModificationData(data.get("name", "M"), int(data["level"]), dom, cod, comps)
            except OmegaCatError as exc:
                raise MalformedInput(str(exc)) from exc
        return self._cached("modification", ref, base, make)

    def diagram(self, ref, base=None):
        base = base or self.root
        key, data, where = self._resolve(ref, base)
        _need(data, {"graph", "target", "assignment"}, "diagram")
        g = data["graph"]
        if isinstance(g, str):
            g = read_json((Path(where) / g).resolve())
        _need(g, {"nodes"}, "graph")
        nodes = [(n["id"], n["degree"], n.get("dom"), n.get("cod")) for n in g["nodes"]]
        G = GraphPresentation(g.get("name", "graph"), nodes)
        P = self.category(data["target"], where)
        asg = data["assignment"]
        if isinstance(asg, list):
            asg = {r["node"]: r["cell"] for r in asg}
        for x in asg.values():
            _id(P, x)
        return DiagramData(G, P, asg)

    def presheaf(self, ref, base=None):
        base = base or self.root
        key, data, where = self._resolve(ref, base)
        _need(data, {"base"}, "presheaf")
        P = self.category(data["base"], where)
        if "hom" in data:
            return hom_presheaf(P, _id(P, data["hom"]))
        _need(data, {"values", "action0"}, "presheaf")
        values = {P.index[_id(P, a)]: self.category(r, where) for a, r in data["values"].items()}
        if set(values) != set(P.objects()):
            raise MalformedInput("presheaf values must cover every base object")
        action0 = {}
        for row in data["action0"]:
            _need(row, {"cell", "functor"}, "action0 row")
            action0[P.index[_id(P, row["cell"])]] = self.functor(row["functor"], where)
        actionN = {}
        for row in data.get("actionN", []):
            _need(row, {"cell", "map"}, "actionN row")
            f = P.index[_id(P, row["cell"])]
            m = P.degree_of(P.ids[f])
            src = values[P.ck((f, 0), m)[0]]
            tgt = values[P.dk((f, 0), m)[0]]
            actionN[f] = {src.index[_id(src, r["from"])]: _vcell(tgt, r["to"], r.get("epower", 0))
                          for r in row["map"]}
        return PresheafData(data.get("name", "F"), P, values, action0, actionN)

    def adjunction(self, ref, base=None):
        from .adjunction import AdjunctionData
        base = base or self.root
        key, data, where = self._resolve(ref, base)
        _need(data, {"F", "G", "unit", "counit"}, "adjunction")
        return AdjunctionData(self.functor(data["F"], where), self.functor(data["G"], where),
                              self.modification(data["unit"], where),
                              self.modification(data["counit"], where), data.get("name", "adj"))

    def duality_input(self, ref, base=None):
        from .duality import DualityInput
        base = base or self.root
        key, data, where = self._resolve(ref, base)
        _need(data, {"L", "Lp"}, "duality input")
        L = self.category(data["L"], where)
        Lp = L if data["Lp"] == data["L"] else self.category(data["Lp"], where)
        return DualityInput.from_dict(data, L, Lp)


def _need(data, keys, what):
    if not isinstance(data, dict):
        raise MalformedInput(f"{what} must be a JSON object")
    missing = keys - set(data)
    if missing:
        raise MalformedInput(f"{what}: missing fields {sorted(missing)}")


def _id(P, x):
    if not isinstance(x, str) or x not in P.index:
        raise MalformedInput(f"{x!r} is not a cell of {P.name}")
    return x


def _vcell(P, x, p=0):
    return P.v((_id(P, x), int(p)))
