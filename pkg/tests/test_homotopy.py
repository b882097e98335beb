import pytest
from hypothesis import given, settings, strategies as st

from omegacat.equivalence import EquivalenceSolver
from omegacat.errors import HypothesisNotMet
from omegacat.fixtures import bz2, corpus
from omegacat.functors import functor, identity_functor
from omegacat.homotopy import (check_group_axioms, check_homotopy_invariance, eckmann_hilton,
                               formal_homotopy_group, functor_homomorphism,
                               induced_homomorphism, is_trivial_homomorphism)

from oracles import unfold_equiv

FX = corpus()


def test_bz2_fundamental_group_is_z2():
    G = formal_homotopy_group(FX["BZ2"], "*", "*", "id", 1)
    assert G.order == 2
    t = next(i for i, cl in enumerate(G.elements) if cl == ["t"])
    assert t != G.unit
    assert G.op[t][t] == G.unit
    assert G.element_order(t) == 2
    assert check_group_axioms(G.op, G.unit, G.inverse).ok


def test_bz2_pointed_set_and_higher_groups():
    P = FX["BZ2"]
    S = formal_homotopy_group(P, "*", "*", "id", 0)
    assert S.elements == [["id"]] and S.point == 0
    for n in (2, 3):
        assert formal_homotopy_group(P, "*", "*", "id", n).is_trivial()


def test_truncation_kills_groups_above_n():
    for name, P in FX.items():
        for a in P.objects():
            x = P.label(P.e((a, 0)))
            if P.N == 0:
                continue
            G = formal_homotopy_group(P, P.ids[a], P.ids[a], x, P.N + 1)
            assert G.is_trivial(), name


def test_kill_functor_induces_trivial_map():
    P = FX["BZ2"]
    K = functor("kill", P, P, lambda x: "1" if x == "t" else x)
    h = functor_homomorphism(K, "*", "*", "id", 1)
    assert h["report"].ok
    assert is_trivial_homomorphism(h)
    h = functor_homomorphism(identity_functor(P), "*", "*", "id", 1)
    assert h["map"] == [0, 1] and not is_trivial_homomorphism(h)


def test_walking2_and_walkeq2_groups_are_trivial():
    assert formal_homotopy_group(FX["Walking2"], "a", "b", "f", 1).is_trivial()
    assert formal_homotopy_group(FX["WalkEq2"], "a", "b", "f", 1).is_trivial()


@pytest.mark.parametrize("name", sorted(FX))
def test_eckmann_hilton_on_corpus(name):
    assert eckmann_hilton(FX[name]).ok


def test_eckmann_hilton_fails_without_interchange():
    assert eckmann_hilton(bz2("t")).laws() == ["eckmann-hilton"]


def test_identity_induces_identity():
    P = FX["BZ2"]
    for n in (0, 1, 2):
        h = induced_homomorphism(P, "id", "*", "id", "id", n)
        assert h["map"] == list(range(len(h["source"].elements)))
        assert h["report"].ok


def test_equivalence_induces_isomorphism():
    E = FX["WalkEq2"]
    h = induced_homomorphism(E, "f", "a", "e(a)", "f", 1)
    assert h["report"].ok
    assert sorted(h["map"]) == list(range(h["target"].order))
    assert h["source"].order == h["target"].order


def test_homotopy_invariance():
    E = FX["WalkEq2"]
    for f, f2, x in [("e(a)", "u", "g"), ("e(a)", "u", "u"), ("e(b)", "v", "f"),
                     ("v", "e(b)", "v")]:
        assert check_homotopy_invariance(E, f, f2, E.label(E.d(E.v(x))), x)


def test_invariance_hypotheses():
    E = FX["WalkEq2"]
    with pytest.raises(HypothesisNotMet):
        check_homotopy_invariance(E, "e(a)", "u", "a", "e(a)")
    with pytest.raises(HypothesisNotMet):
        check_homotopy_invariance(E, "f", "e(a)", "a", "e(a)")
    with pytest.raises(HypothesisNotMet):
        formal_homotopy_group(FX["BZ2"], "*", "*", "t", 1)
    with pytest.raises(HypothesisNotMet):
        induced_homomorphism(E, "f", "a", "e(a)", "e(b)", 1)


def _naive_order(P, base):
    """Classes of automorphisms of base under the unfolding oracle."""
    autos = []
    for g in P.arrows(base, base):
        if any(unfold_equiv(P, P.compose(1, h, g), P.e(base))
               and unfold_equiv(P, P.compose(1, g, h), P.e(base))
               for h in P.arrows(base, base)):
            autos.append(g)
    reps = []
    for g in autos:
        if not any(unfold_equiv(P, r, g) for r in reps):
            reps.append(g)
    return len(reps)


_POINTS = [(name, a, n) for name, P in sorted(FX.items()) if P.N > 0
           for a in P.objects() for n in range(1, P.N + 1)]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(_POINTS))
def test_group_matches_oracle_and_axioms(case):
    name, a, n = case
    P = FX[name]
    x = P.e((a, 0))
    G = formal_homotopy_group(P, P.ids[a], P.ids[a], P.label(x), n)
    assert check_group_axioms(G.op, G.unit, G.inverse).ok
    assert G.order == _naive_order(P, P.e(x, n - 1))


def test_raw_and_quotient_agree_on_strict_inverses():
    P = FX["BZ2"]
    raw = formal_homotopy_group(P, "*", "*", "id", 1, quotient=False)
    assert raw.order == 2 and raw.report.ok


def test_group_axiom_checker_catches_non_groups():
    assert not check_group_axioms([[0, 1], [1, 1]], 0, [0, None]).ok
    solver = EquivalenceSolver(FX["BZ2"])
    assert solver.equivalent(FX["BZ2"].v("t"), FX["BZ2"].v("t"))


def test_induced_maps_above_one_need_the_strict_laws():
    P = bz2("t")
    h = induced_homomorphism(P, "id", "*", "id", "id", 1)
    assert h["report"].ok
    with pytest.raises(HypothesisNotMet):
        induced_homomorphism(P, "id", "*", "id", "id", 2)
