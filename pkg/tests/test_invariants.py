"""Structural laws checked exhaustively on small fixtures, or sampled by hypothesis."""
import itertools

import pytest
from hypothesis import given, settings, strategies as st

from omegacat.constructions import approximation, hom_category, level_category
from omegacat.core import parse_cell
from omegacat.equivalence import (EquivalenceSolver, check_mn_invariant, classify_arrow,
                                  decide_equiv, eq_subcategory)
from omegacat.errors import DegreeMismatch, NotComposable
from omegacat.fixtures import corpus, posets2
from omegacat.functors import (FunctorData, ModificationData, check_equivalence_pair,
                               check_functor, check_modification, check_preserves_equiv,
                               compose_functors, constant_functor, functor,
                               horizontal_modifications, identity_functor, natural_family,
                               quasiequal_depth)
from omegacat.homotopy import functor_homomorphism
from omegacat.limits import DiagramData, GraphPresentation, cone_category
from omegacat.presheaf import hom_presheaf, yoneda_backward
from omegacat.validate import validate

from oracles import cell_maps

FX = corpus()
SMALL = ["Iso1", "Walking2", "BZ2", "WalkEq2", "WalkPar2", "discrete3", "free_arrow", "point"]


def _cells(P, above=1):
    """Stored cells plus e-iterates up to ``above`` levels over the truncation."""
    out = [(i, 0) for i in range(len(P))]
    out += [P.e((i, 0), p) for i in range(len(P)) if P.deg[i] == P.N for p in range(1, above + 1)]
    return out


def _functors(S, T):
    out = []
    for m in cell_maps(S, T):
        F = FunctorData("F", S, T, m)
        if check_functor(F).ok:
            out.append(F)
    return out


ENDO = {name: _functors(FX[name], FX[name]) for name in ("Iso1", "BZ2", "Walking2", "WalkEq2")}


# -- globular core ---------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(FX))
def test_identity_commutes_with_composition(name):
    P = FX[name]
    for (k, f, g), h in P.entries.items():
        vf, vg, vh = P.v(f), P.v(g), P.v(h)
        for j in (1, 2):
            assert P.e(vh, j) == P.compose(k + j, P.e(vf, j), P.e(vg, j)), (k, f, g, j)


@pytest.mark.parametrize("name", SMALL)
def test_hom_categories_of_strict_categories_are_strict(name):
    P = FX[name]
    for m in range(P.N):
        cells = P.cells(m)
        for i in cells:
            for j in cells:
                if m == 0 or P.parallel((i, 0), (j, 0)):
                    assert validate(hom_category(P, P.ids[i], P.ids[j])).ok


@pytest.mark.parametrize("name", SMALL + ["VecF2"])
def test_monic_epic_equivalence_closed_under_composition(name):
    P = FX[name]
    solver = EquivalenceSolver(P)
    arrows = [(i, 0) for m in range(1, P.N + 1) for i in P.cells(m)]
    kinds = {f: classify_arrow(P, f, solver) for f in arrows}
    for f in arrows:
        for g in arrows:
            if not P.composable(1, g, f):
                continue
            gf = P.compose(1, g, f)
            both = classify_arrow(P, gf, solver)
            for prop in ("monic", "epic", "equivalence"):
                if kinds[f][prop] and kinds[g][prop]:
                    assert both[prop], (name, prop, P.label(g), P.label(f))


# -- equivalence -----------------------------------------------------------------

def _pairs(P):
    for m in range(P.N + 1):
        cells = P.cells(m)
        for i in cells:
            for j in cells:
                if m == 0 or P.parallel((i, 0), (j, 0)):
                    yield (i, 0), (j, 0)


@pytest.mark.parametrize("name", SMALL)
def test_witness_arrows_are_equivalences(name):
    P = FX[name]
    solver = EquivalenceSolver(P)
    for x, y in _pairs(P):
        w = decide_equiv(P, x, y, solver)
        if w is None:
            continue
        for f, g in w.arrows():
            assert classify_arrow(P, f, solver)["equivalence"]
            assert classify_arrow(P, g, solver)["equivalence"]


@pytest.mark.parametrize("name", SMALL)
def test_quasi_inverses_are_unique_up_to_equivalence(name):
    P = FX[name]
    solver = EquivalenceSolver(P)
    for x, y in _pairs(P):
        if x == y or P.vdeg(x) >= P.N:
            continue
        for f in P.arrows(x, y):
            invs = [g for g in P.arrows(y, x)
                    if solver.equivalent(P.compose(1, g, f), P.e(x))
                    and solver.equivalent(P.compose(1, f, g), P.e(y))]
            for g, g2 in itertools.combinations(invs, 2):
                assert decide_equiv(P, g, g2, solver) is not None


@pytest.mark.parametrize("name", SMALL + ["VecF2"])
def test_identities_are_equivalent_only_when_equal(name):
    P = FX[name]
    solver = EquivalenceSolver(P)
    for m in range(P.N):
        cells = P.cells(m)
        for i in cells:
            for j in cells:
                ex, ey = P.e((i, 0)), P.e((j, 0))
                same = P.parallel(ex, ey) and solver.equivalent(ex, ey)
                assert same == (i == j)


def test_eq_subcategory_examples():
    W = eq_subcategory(FX["Walking2"], 0)
    # sigma goes, and so do f and g: none of them is an equivalence
    assert sorted(W.ids) == ["a", "b", "e(a)", "e(b)", "e(e(a))", "e(e(b))"]
    I = FX["Iso1"]
    assert sorted(eq_subcategory(I, 0).ids) == sorted(I.ids)
    for name in SMALL:
        P = FX[name]
        assert sorted(eq_subcategory(P, P.N).ids) == sorted(P.ids)


def test_mn_invariant_examples():
    E, I = FX["WalkEq2"], FX["Iso1"]
    assert check_mn_invariant(constant_functor(E, FX["point"], "pt"), 2, 0)
    assert check_mn_invariant(identity_functor(I), 1, 1)
    collapse = functor("collapse", E, I, _collapse)
    assert check_functor(collapse).ok
    assert check_mn_invariant(collapse, 2, 1)
    assert not check_mn_invariant(collapse, 2, 0)


# u, v go to identities; 2-cells go to virtual identities one degree up
_COLLAPSE = {"u": "e(a)", "v": "e(b)",
             "alpha": ("e(a)", 1), "alpha_inv": ("e(a)", 1), "e(u)": ("e(a)", 1),
             "beta": ("e(b)", 1), "beta_inv": ("e(b)", 1), "e(v)": ("e(b)", 1),
             "e(f)": ("f", 1), "e(g)": ("g", 1), "e(e(a))": ("e(a)", 1), "e(e(b))": ("e(b)", 1)}


def _collapse(x):
    return _COLLAPSE.get(x, x)


# -- functor calculus ----------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(ENDO))
def test_quasiequal_functors_are_equal(name):
    P = FX[name]
    solver = EquivalenceSolver(P)
    Fs = ENDO[name]
    assert Fs
    for F, G in itertools.combinations(Fs, 2):
        if all(P.vdeg(F((i, 0))) == P.vdeg(G((i, 0)))
               and (P.vdeg(F((i, 0))) == 0 or P.parallel(F((i, 0)), G((i, 0))))
               and solver.equivalent(F((i, 0)), G((i, 0))) for i in range(len(P))):
            assert F == G


@pytest.mark.parametrize("name", sorted(ENDO))
def test_equivalence_preserving_functors_are_strict(name):
    P = FX[name]
    for F in ENDO[name]:
        if not check_preserves_equiv(F):
            continue
        for (k, f, g), h in P.entries.items():
            assert F(P.v(h)) == P.compose(k, F(P.v(f)), F(P.v(g)))


def test_functor_composition_is_associative_and_unital():
    Fs = ENDO["Iso1"]
    I = identity_functor(FX["Iso1"])
    for F in Fs:
        assert compose_functors(I, F) == F == compose_functors(F, I)
    for F, G, H in itertools.product(Fs, repeat=3):
        assert compose_functors(H, compose_functors(G, F)) == \
            compose_functors(compose_functors(H, G), F)


def _transformations(name):
    Fs = ENDO[name]
    return [(M, X, Y) for X in Fs for Y in Fs for M in natural_family(X, Y)]


@pytest.mark.parametrize("name", ["Iso1", "Walking2", "BZ2"])
def test_horizontal_composite_formulas_agree(name):
    mods = _transformations(name)
    assert mods
    for (M1, _, _), (M2, _, _) in itertools.product(mods, repeat=2):
        h1 = horizontal_modifications(M1, M2, 1)
        h2 = horizontal_modifications(M1, M2, 2)
        assert h1.comp == h2.comp
        assert check_modification(h1).ok


@pytest.mark.parametrize("name", ["Iso1", "Walking2", "WalkEq2"])
def test_quasiequality_depths_are_ordered(name):
    mods = _transformations(name)
    P = FX[name]
    solver = EquivalenceSolver(P)
    for (M1, X1, Y1), (M2, X2, Y2) in itertools.combinations(mods, 2):
        if X1 != X2 or Y1 != Y2:
            continue
        if quasiequal_depth(M1, M2, 0, solver):
            assert quasiequal_depth(M1, M2, 1, solver)
        if quasiequal_depth(M1, M2, 1, solver):
            assert M1.dom == M2.dom and M1.cod == M2.cod


@pytest.mark.parametrize("name", ["Walking2", "WalkEq2", "BZ2"])
def test_virtual_naturality_squares_add_nothing(name):
    P = FX[name]
    Fs = ENDO[name][:4]
    for X, Y in itertools.product(Fs, repeat=2):
        choices = [P.arrows(X((a, 0)), Y((a, 0))) for a in P.objects()]
        for combo in itertools.product(*choices):
            M = ModificationData("M", 0, X, Y, dict(zip(P.objects(), combo)))
            base = check_modification(M).ok
            assert check_modification(M, virtual_depth=2).ok == base


# -- presheaves and limits ---------------------------------------------------------

def _to_base(P, V, y):
    return parse_cell(P, V.label(y))


@pytest.mark.parametrize("name", ["Iso1", "Walking2", "WalkEq2", "discrete3", "free_arrow"])
def test_hom_presheaves_detect_equivalent_objects(name):
    P = FX[name]
    solver = EquivalenceSolver(P)
    H = {a: hom_presheaf(P, P.ids[a]) for a in P.objects()}

    def round_trip_is_identity(tau, back):
        # compared on objects of the values, i.e. on 1-cells x
        for c, comp in tau.components.items():
            V = tau.presheaf.values[c]
            for x, y in comp.items():
                if P.vdeg(x) != 1:
                    continue
                z = back.components[c][_to_base(P, V, y)]
                z = _to_base(P, back.presheaf.values[c], z)
                if not (P.parallel(z, x) and solver.equivalent(z, x)):
                    return False
        return True

    for a in P.objects():
        for b in P.objects():
            linked = False
            for f in P.arrows((a, 0), (b, 0)):
                for g in P.arrows((b, 0), (a, 0)):
                    tau = yoneda_backward(H[b], P.ids[a], P.label(f))
                    back = yoneda_backward(H[a], P.ids[b], P.label(g))
                    if round_trip_is_identity(tau, back) and round_trip_is_identity(back, tau):
                        linked = True
            assert linked == (decide_equiv(P, (a, 0), (b, 0), solver) is not None)


@pytest.mark.parametrize("name", ["Walking2", "WalkEq2", "WalkPar2"])
def test_yoneda_components_respect_boundaries(name):
    P = FX[name]
    for a in P.objects():
        F = hom_presheaf(P, P.ids[a])
        for b in P.objects():
            V = F.values[b]
            for i in V.cells(1):
                beta = (i, 0)
                tau = yoneda_backward(F, b, beta)
                lo = yoneda_backward(F, b, V.d(beta))
                hi = yoneda_backward(F, b, V.c(beta))
                for c, comp in tau.components.items():
                    W = F.values[c]
                    for x, y in comp.items():
                        assert W.d(y) == lo.components[c][x]
                        assert W.c(y) == hi.components[c][x]


def test_cone_categories_are_categories():
    P = posets2()
    G = GraphPresentation("pair", [("A", 0, None, None), ("B", 0, None, None)])
    D = DiagramData(G, P, {"A": "C2", "B": "T"})
    for z in P.objects():
        C, _ = cone_category(D, z)
        assert validate(C).ok


# -- homotopy -------------------------------------------------------------------------

def test_equivalence_preserving_endofunctors_induce_homomorphisms():
    for F in ENDO["BZ2"]:
        if check_preserves_equiv(F):
            assert functor_homomorphism(F, "*", "*", "id", 1)["report"].ok


# -- constructions, tagged examples ------------------------------------------------

def test_small_construction_examples():
    B = FX["BZ2"]
    A = approximation(B, 1)
    assert len(A.cells(0)) == 1 and len(A.cells(1)) == 1
    assert len(approximation(FX["Iso1"], 0).cells(0)) == 1
    L = level_category(B, 2)
    assert len(L.cells(1)) == 2 and L.entries[1, "t", "t"] == "1" == L.identity_entries["*"]
    W = hom_category(FX["Walking2"], "f", "g")
    assert [W.ids[i] for i in W.cells(0)] == ["sigma"]
    assert len(hom_category(FX["Iso1"], "f", "g")) == 0


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_composition_is_associative_when_defined(name, data):
    P = FX[name]
    cells = _cells(P)
    f, g, h = (data.draw(st.sampled_from(cells)) for _ in range(3))
    k = data.draw(st.integers(1, max(P.N, 1) + 1))
    try:
        left = P.compose(k, P.compose(k, f, g), h)
    except (NotComposable, DegreeMismatch):
        return
    try:
        right = P.compose(k, f, P.compose(k, g, h))
    except NotComposable:
        pytest.fail("one bracketing defined, the other not")
    assert left == right


def test_walking2_is_not_equivalent_to_its_one_truncation():
    # sigma cannot be inverted, so no functor pair in either direction works
    P = FX["Walking2"]
    A = approximation(P, 1)
    there, back = _functors(P, A), _functors(A, P)
    assert there and back
    for F in there:
        for G in back:
            assert not check_equivalence_pair(F, G)["equivalence"]
