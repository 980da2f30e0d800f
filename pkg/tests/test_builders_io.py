import json

import pytest

from kwising import AnglePi, gen_genus2_bouquet, gen_torus_lattice, star_construction
from kwising.errors import ParseError, SizeOverflow, ThetaOutOfRange
from kwising.mapio import MapDocument, load, read_map, save, write_map
from kwising.ribbon import check_hypotheses, is_isomorphic


@pytest.mark.parametrize("kind", ["square", "triangular", "hexagonal"])
@pytest.mark.parametrize("n, m", [(1, 1), (2, 3), (4, 4)])
def test_lattices_are_flat_tori(kind, n, m):
    g = gen_torus_lattice(kind, n, m)
    assert g.genus == 1
    assert set(g.primal_cone_angles) == {AnglePi(2)}
    assert set(g.dual_cone_angles) == {AnglePi(2)}
    assert check_hypotheses(g, "all_odd").passed


def test_lattice_shapes():
    g = gen_torus_lattice("square", 1, 1)
    assert (g.n_vertices, g.n_edges, g.n_faces) == (1, 2, 1)
    t = gen_torus_lattice("triangular", 2, 2)
    assert set(t.theta) == {AnglePi(1, 6)}
    assert {len(v) for v in t.vertices} == {6}
    h = gen_torus_lattice("hexagonal", 2, 2)
    assert {len(v) for v in h.vertices} == {3}
    assert {len(f) for f in h.faces} == {6}


def test_size_limit():
    with pytest.raises(SizeOverflow):
        gen_torus_lattice("square", 100, 100, max_darts=1000)
    with pytest.raises(ValueError):
        gen_torus_lattice("pentagonal", 1, 1)


def test_bouquet():
    b = gen_genus2_bouquet()
    assert b.euler_characteristic == -2
    assert b.primal_cone_angles[0].turns == 3
    assert b.n_faces == 1 and len(b.faces[0]) == 8
    order = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (3, 0), (2, 1), (3, 1)]
    again = star_construction([(0, 0)] * 4, AnglePi(3, 8), {0: order})
    assert again.rotation == b.rotation and again.theta == b.theta


def test_star_construction_constant_theta():
    k3 = star_construction([(0, 1), (1, 2), (2, 0)], AnglePi(1, 3))
    assert set(k3.theta) == {AnglePi(1, 3)}
    assert k3.primal_cone_angles == [AnglePi(4, 3)] * 3
    assert not check_hypotheses(k3, "all_odd").passed


def test_round_trip(tmp_path):
    g = gen_torus_lattice("square", 2, 2)
    doc = write_map(g, name="sq")
    again = read_map(doc.dumps())
    assert is_isomorphic(g, again)
    assert again.reversal == g.reversal and again.rotation == g.rotation and again.theta == g.theta
    path = tmp_path / "sq.map"
    save(doc, path)
    assert load(path) == doc
    assert MapDocument.loads(doc.dumps()).dumps() == doc.dumps()
    assert len(doc.sha256()) == 64


def test_theta_stored_as_fractions():
    doc = json.loads(write_map(gen_genus2_bouquet()).dumps())
    assert doc["theta"][0] == {"num": 3, "den": 8}


@pytest.mark.parametrize(
    "text, exc",
    [
        ('{"darts":3,"reversal":[1,0,2],"rotation":[0,1,2],"theta":[]}', ParseError),
        ('{"darts":2,"reversal":[1,0],"rotation":[1,0],"theta":[{"num":1,"den":2}]}', ThetaOutOfRange),
        ('{"darts":2,"reversal":[1,0],"rotation":[1,0],"theta":[0.25]}', ParseError),
        ('{"darts":2,"reversal":[1,0],"rotation":[1,0],"theta":[],"extra":1}', ParseError),
        ('{"darts":2,"reversal":[1,0],"rotation":[1,0],"theta":[]}', ParseError),
        ("not json", ParseError),
    ],
)
def test_bad_documents(text, exc):
    with pytest.raises(exc):
        read_map(text)
