import json

import pytest

from omegacat.core import Category, ename
from omegacat.errors import DegreeMismatch, MalformedInput, NotComposable
from omegacat.fixtures import corpus, vecf2


@pytest.mark.parametrize("name", sorted(corpus()))
def test_dict_round_trip(name):
    P = corpus()[name]
    doc = json.loads(json.dumps(P.to_dict()))
    Q = Category.from_dict(doc)
    assert Q == P
    assert Q.to_dict() == P.to_dict()


def test_duplicate_and_dangling_ids_rejected():
    with pytest.raises(MalformedInput, match="duplicate"):
        Category("x", 1, [("a", 0, None, None), ("a", 0, None, None)])
    with pytest.raises(MalformedInput, match="dangling"):
        Category("x", 1, [("a", 0, None, None), ("f", 1, "a", "b")])
    with pytest.raises(MalformedInput, match="above truncation"):
        Category("x", 0, [("a", 0, None, None), ("f", 1, "a", "a")])
    with pytest.raises(MalformedInput, match="conflicting"):
        Category("x", 1, [("a", 0, None, None), ("f", 1, "a", "a")], [],
                 [(1, "f", "f", "f"), (1, "f", "f", "a")])


def test_from_dict_rejects_unknown_fields():
    doc = corpus()["Iso1"].to_dict()
    doc["extra"] = 1
    with pytest.raises(MalformedInput):
        Category.from_dict(doc)


def test_virtual_identities_above_truncation():
    P = corpus()["Iso1"]
    f = P.v("f")
    ef = P.e(f)
    assert ef == (f[0], 1)
    assert P.vdeg(ef) == 2
    assert P.d(ef) == f and P.c(ef) == f
    assert P.label(P.e(f, 2)) == ename("f", 2)
    assert P.compose(1, ef, ef) == ef
    g = P.v("g")
    assert P.compose(2, P.e(g), ef) == P.e(P.compose(1, g, f))


def test_compose_checks_boundaries():
    P = corpus()["Iso1"]
    f, g = P.v("f"), P.v("g")
    assert P.compose(1, g, f) == P.e(P.v("a"))
    with pytest.raises(NotComposable):
        P.compose(1, f, f)
    with pytest.raises(DegreeMismatch):
        P.compose(1, f, P.v("a"))


def test_horizontal_lifts_lower_cell():
    P = corpus()["Walking2"]
    s = next((i, 0) for i in P.cells(2))
    f = P.d(s)
    # whiskering by an identity arrow leaves a 2-cell unchanged
    b = P.c(f)
    assert P.horizontal(P.e(b), s) == s
    assert P.horizontal(s, P.e(P.d(f))) == s


def test_vecf2_cell_counts():
    for d in (1, 2):
        P = vecf2(d)
        objs = len(P.objects())
        arrows = sum(2 ** (m * n) for m in range(d + 1) for n in range(d + 1))
        assert objs == d + 1
        assert len(P.cells(1)) == arrows
