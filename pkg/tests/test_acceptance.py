"""Acceptance criteria 1-11, one test each; each prints a PASS/FAIL line.

The lines are also gathered into the pytest terminal summary (see conftest.py).
Run alone with ``pytest tests/test_acceptance.py -s`` to see them inline.
"""
import io as _io
import json
import time

import pytest

from omegacat import cli
from omegacat.adjunction import (AdjunctionData, check_extension_adjunction,
                                 check_strict_adjunction, compose_adjunctions,
                                 hom_iso_from_unit_counit, identity_adjunction,
                                 reverse_equivalence)
from omegacat.constructions import truncate
from omegacat.duality import synthesize_dual_adjunction, vecf2_input
from omegacat.equivalence import EquivalenceSolver, check_witness, equiv_degree
from omegacat.errors import MalformedInput
from omegacat.fixtures import corpus, discrete, free_arrow, map_id, posets2, vecf2, walkpar2
from omegacat.functors import (ModificationData, compose_functors, functor,
                               identity_functor)
from omegacat.homotopy import (eckmann_hilton, formal_homotopy_group, functor_homomorphism,
                               is_trivial_homomorphism)
from omegacat.limits import DiagramData, GraphPresentation, find_strict_limit, levels
from omegacat.presheaf import (check_transformation, transformation_count_bruteforce,
                               yoneda_backward, yoneda_forward)
from omegacat.validate import validate_globular, validate_strict

from helpers import cells_of_degree, presheaves
from oracles import mutations, raw_universal, strict_inverse_pairs, unfold_equiv

RESULTS = {}

TITLES = {
    1: "axiom suite and single-entry mutations",
    2: "equivalence solver agrees with brute-force unfolding",
    3: "equivalence degrees 0, 1 and 2",
    4: "Yoneda counts and round trips",
    5: "Eckmann-Hilton on classes",
    6: "strict product and 2-cell equalizer",
    7: "adjunction laws and hom-set sizes",
    8: "dual adjunction synthesized from VecF2",
    9: "formal homotopy group of BZ2",
    10: "extension of the adjunction to N = 2",
    11: "byte-identical reruns",
}


def record(n, failures, t0):
    ok = not failures
    line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {TITLES[n]}  ({time.perf_counter() - t0:.1f}s)"
    if not ok:
        line += f"  first failure: {failures[0]}"
    RESULTS[n] = line
    print(line)
    assert ok, failures[:5]


def all_fixtures():
    fx = dict(corpus())
    fx["VecF2_d1"] = vecf2(1)
    fx["VecF2_N2"] = vecf2(2, 2)
    fx["discrete2_N2"] = discrete(2, 2)
    fx["free_arrow"] = free_arrow()
    return fx


def test_criterion_01_axioms_and_mutations():
    t0 = time.perf_counter()
    bad = []
    for name, P in sorted(all_fixtures().items()):
        if not validate_globular(P).ok or not validate_strict(P).ok:
            bad.append(f"{name} fails a law")
        if name == "point":
            continue  # a single object: nothing to mutate
        muts = mutations(P, 20)
        if len(muts) < 20:
            bad.append(f"{name}: only {len(muts)} mutations")
        for desc, M, laws in muts:
            try:
                found = set(validate_globular(M).laws()) | set(validate_strict(M).laws())
            except MalformedInput as exc:
                found = {str(exc)}
            if not found or (laws is not None and not laws & found):
                bad.append(f"{name}: {desc} gives {sorted(found)}")
    record(1, bad, t0)


def test_criterion_02_equivalence_oracle():
    t0 = time.perf_counter()
    bad = []
    for name, P in sorted(all_fixtures().items()):
        if len(P) > 200:
            continue
        sol = EquivalenceSolver(P)
        for m in range(P.N + 1):
            cells = [(i, 0) for i in P.cells(m)]
            for x in cells:
                for y in cells:
                    w = sol.solve(x, y)
                    if (w is not None) != unfold_equiv(P, x, y) or \
                            (w is not None and not check_witness(P, w)):
                        bad.append(f"{name}: {P.label(x)} ~ {P.label(y)}")
    record(2, bad, t0)


def test_criterion_03_degrees():
    t0 = time.perf_counter()
    bad = []
    for name, P in sorted(all_fixtures().items()):
        for a in P.objects():
            if equiv_degree(P, (a, 0), (a, 0)) != 0:
                bad.append(f"deg(e {P.ids[a]}) in {name}")
    I = corpus()["Iso1"]
    if equiv_degree(I, "a", "b") != 1:
        bad.append("Iso1 degree")
    E = corpus()["WalkEq2"]
    if equiv_degree(E, "a", "b") != 2:
        bad.append("WalkEq2 degree")
    if strict_inverse_pairs(E, E.v("a"), E.v("b")):
        bad.append("WalkEq2 has a degree-1 witness")
    record(3, bad, t0)


def test_criterion_04_yoneda():
    t0 = time.perf_counter()
    bad = []
    for name, P0 in sorted(corpus().items()):
        if len(P0) > 50:
            continue
        for F in presheaves(P0):
            P = F.base
            for a in P.objects():
                for n in range(max(P.N, 1) + 1):
                    want = cells_of_degree(F.values[a], n)
                    found = []
                    if transformation_count_bruteforce(F, a, n, collect=found) != len(want):
                        bad.append(f"{F.name} at {P.ids[a]}, n={n}: count")
                    for beta in want:
                        tau = yoneda_backward(F, a, beta)
                        if not check_transformation(tau).ok or yoneda_forward(tau) != (a, beta):
                            bad.append(f"{F.name}: backward then forward")
                    for tau in found:
                        a2, beta = yoneda_forward(tau)
                        if yoneda_backward(F, a2, beta).key() != tau.key():
                            bad.append(f"{F.name}: forward then backward")
    record(4, bad, t0)


def test_criterion_05_eckmann_hilton():
    t0 = time.perf_counter()
    bad = [name for name, P in sorted(all_fixtures().items()) if not eckmann_hilton(P).ok]
    record(5, bad, t0)


PAIR = GraphPresentation("pair", [("A", 0), ("B", 0)])
PAR2 = GraphPresentation("par2", [("A", 0), ("B", 0), ("F", 1, "A", "B"), ("G", 1, "A", "B"),
                                  ("al", 2, "F", "G")])


def _certified(D, res):
    P = D.target
    raw = raw_universal(D, P.index[res["vertex"]], res["cone"].components, levels(P))
    return raw == res["certificate"] and all(b for _, _, b in raw.values())


def test_criterion_06_limits():
    t0 = time.perf_counter()
    bad = []
    P = posets2(("Empty", "T", "D2", "C2", "Sq"))
    D = DiagramData(PAIR, P, {"A": "C2", "B": "C2"})
    res = find_strict_limit(D)
    pr = {map_id("Sq", "C2", {e: e[i] for e in ("00", "01", "10", "11")}) for i in (0, 1)}
    if res is None or res["vertex"] != "Sq" or set(res["edges"].values()) != pr:
        bad.append("product")
    elif not _certified(D, res):
        bad.append("product certificate")
    Q = posets2(("Empty", "T", "D2", "C2", "Lam", "C3"))
    F = map_id("D2", "C2", {"p": "0", "q": "0"})
    G = map_id("D2", "C2", {"p": "1", "q": "0"})
    al = [Q.ids[i] for i in Q.cells(2) if Q.ids[Q.dom[i]] == F and Q.ids[Q.cod[i]] == G]
    D2 = DiagramData(PAR2, Q, {"A": "D2", "B": "C2", "F": F, "G": G, "al": al[0]})
    res = find_strict_limit(D2)
    if res is None or res["vertex"] != "T" or res["edges"] != {"A": "T>D2:q", "B": "T>C2:0"}:
        bad.append("equalizer")
    elif not _certified(D2, res):
        bad.append("equalizer certificate")
    if len(Q.objects()) != 6:
        bad.append("equalizer fixture size")
    record(6, bad, t0)


@pytest.fixture(scope="module")
def vec_witness():
    return synthesize_dual_adjunction(vecf2_input())


def test_criterion_07_adjunctions(vec_witness):
    t0 = time.perf_counter()
    bad = []
    for name, P in sorted(corpus().items()):
        A = identity_adjunction(P)
        if not check_strict_adjunction(A).ok or not hom_iso_from_unit_counit(A).report.ok:
            bad.append(f"identity adjunction on {name}")
    A = vec_witness.adjunction
    C = compose_adjunctions(A, reverse_equivalence(A))
    if not check_strict_adjunction(C).ok:
        bad.append("composed duality")
    pair = hom_iso_from_unit_counit(A)
    if not pair.report.ok:
        bad.append(f"hom iso: {pair.report.laws()}")
    for (a, b), th in pair.theta.items():
        m, n = int(A.L.ids[a][1:]), int(A.Lp.ids[b][1:])
        ts = pair.theta_star[(a, b)]
        if not len(th) == len(ts) == 2 ** (m * n):
            bad.append(f"|hom| at V{m}, V{n}")
        if any(ts[g] != f for f, g in th.items()) or any(th[f] != g for g, f in ts.items()):
            bad.append(f"theta not inverse at V{m}, V{n}")
    record(7, bad, t0)


def test_criterion_08_dual_adjunction(vec_witness):
    t0 = time.perf_counter()
    bad = []
    wit = vec_witness
    if not wit.ok:
        bad.append(f"synthesis: {wit.report.laws()}")
    counts = wit.report.counts
    for law in ("functor-F", "functor-G", "unit-naturality", "counit-naturality",
                "triangle-F", "triangle-G", "theta-naturality", "double-dual"):
        if counts.get(law, 0) <= 0:
            bad.append(f"no checks logged for {law}")
    L = wit.input.L
    for X in L.objects():
        if wit.F(wit.G((X, 0))) != (X, 0):
            bad.append(f"GF at {L.ids[X]}")
    # one named failure per single-entry mutation of a lift table
    D = vecf2_input()
    for A, (GA, iso) in sorted(D.lift_lp.items()):
        for x in sorted(iso):
            for z in sorted(set(iso.values()) - {iso[x]}):
                M = vecf2_input()
                M.lift_lp = {**D.lift_lp, A: (GA, {**iso, x: z})}
                w = synthesize_dual_adjunction(M)
                if w.ok or not w.report.laws():
                    bad.append(f"mutation {A}[{x}] -> {z} not caught")
    record(8, bad, t0)


def test_criterion_09_homotopy():
    t0 = time.perf_counter()
    bad = []
    P = corpus()["BZ2"]
    G = formal_homotopy_group(P, "*", "*", "id", 1)
    t = next((i for i, cl in enumerate(G.elements) if cl == ["t"]), None)
    if G.order != 2 or t is None or G.op[t][t] != G.unit or G.op[G.unit][t] != t:
        bad.append("pi_1 is not Z/2")
    if not G.report.ok:
        bad.append(f"group table: {G.report.laws()}")
    K = functor("kill", P, P, lambda x: "1" if x == "t" else x)
    h = functor_homomorphism(K, "*", "*", "id", 1)
    if not h["report"].ok or not is_trivial_homomorphism(h):
        bad.append("kill functor")
    for n in (2, 3):
        if not formal_homotopy_group(P, "*", "*", "id", n).is_trivial():
            bad.append(f"pi_{n} not trivial")
    record(9, bad, t0)


def test_criterion_10_extension():
    t0 = time.perf_counter()
    bad = []
    low = synthesize_dual_adjunction(vecf2_input(vecf2(2, 1)))
    high = synthesize_dual_adjunction(vecf2_input(vecf2(2, 2)))
    if not (low.ok and high.ok):
        bad.append("VecF2 synthesis")
    elif not check_extension_adjunction(low.adjunction, high.adjunction):
        bad.append("trivial extension rejected")
    # swapping sigma and tau keeps the 1-truncation but breaks naturality above it
    W = walkpar2()
    sw = functor("swap", W, W, lambda x: {"sigma": "tau", "tau": "sigma"}.get(x, x))
    I = identity_functor(W)
    eta = ModificationData("eta", 0, I, compose_functors(I, sw), {"a": "e(a)", "b": "e(b)"})
    eps = ModificationData("eps", 0, compose_functors(sw, I), I, {"a": "e(a)", "b": "e(b)"})
    bad_ext = AdjunctionData(sw, I, eta, eps, "swap")
    if check_extension_adjunction(identity_adjunction(truncate(W, 1)), bad_ext):
        bad.append("non-natural extended unit accepted")
    record(10, bad, t0)


RERUN = [
    ("validate", "fx/WalkEq2.json"),
    ("equiv", "fx/WalkEq2.json", "a", "b", "--degree"),
    ("hom", "fx/WalkPar2.json", "f", "g"),
    ("op", "fx/BZ2.json"),
    ("approx", "fx/WalkEq2.json", "1"),
    ("level", "fx/BZ2.json", "2"),
    ("classify", "fx/WalkEq2.json", "f"),
    ("pi", "fx/BZ2.json", "--I", "*", "--a", "*", "--x", "id", "--n", "1"),
    ("check-functor", "functor.json"),
    ("check-mod", "mod.json"),
    ("represent", "hom.json"),
    ("limit", "pair.json"),
    ("check-adj", "adj.json"),
    ("duality", "synth", "fx/vecF2_duality.json"),
    ("duality", "check", "wit.json"),
    ("fixtures", "--out", "fx2"),
]


def _run(argv):
    buf = _io.StringIO()
    code = cli.run(list(argv), stdout=buf)
    return code, buf.getvalue()


def test_criterion_11_determinism(tmp_path, monkeypatch):
    t0 = time.perf_counter()
    monkeypatch.chdir(tmp_path)
    _run(["fixtures", "--out", "fx"])
    ident = {"source": "fx/Iso1.json", "target": "fx/Iso1.json",
             "map": [{"from": x, "to": x} for x in ("a", "b", "e(a)", "e(b)", "f", "g")]}
    (tmp_path / "functor.json").write_text(json.dumps(ident))
    unit = {"level": 0, "stack": ["functor.json", "functor.json"],
            "components": [{"at": "a", "cell": "e(a)"}, {"at": "b", "cell": "e(b)"}]}
    (tmp_path / "mod.json").write_text(json.dumps(unit))
    (tmp_path / "adj.json").write_text(json.dumps(
        {"F": "functor.json", "G": "functor.json", "unit": "mod.json", "counit": "mod.json"}))
    (tmp_path / "hom.json").write_text(json.dumps({"base": "fx/Iso1.json", "hom": "a"}))
    (tmp_path / "posets.json").write_text(json.dumps(posets2().to_dict()))
    (tmp_path / "pair.json").write_text(json.dumps(
        {"graph": {"nodes": [{"id": "A", "degree": 0}, {"id": "B", "degree": 0}]},
         "target": "posets.json", "assignment": {"A": "C2", "B": "C2"}}))
    _run(["duality", "synth", "fx/vecF2_duality.json", "-o", "wit.json"])
    bad = []
    for argv in RERUN:
        first, second = _run(argv), _run(argv)
        if first != second:
            bad.append(" ".join(argv) + " differs")
        if first[0] != 0:
            bad.append(" ".join(argv) + f" exit {first[0]}")
    a = (tmp_path / "fx" / "SHA256SUMS").read_text()
    b = (tmp_path / "fx2" / "SHA256SUMS").read_text()
    if a != b:
        bad.append("fixture checksums differ")
    record(11, bad, t0)
