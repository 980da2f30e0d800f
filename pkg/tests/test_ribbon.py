import pytest

from kwising import AnglePi, build_isoradial_map, gen_genus2_bouquet, gen_torus_lattice, star_construction
from kwising.angles import PI, ZERO
from kwising.errors import (
    BacktrackTransition,
    NonOrientableOrInconsistent,
    NotAnInvolution,
    NotAPermutation,
    ThetaOutOfRange,
)
from kwising.ribbon import (
    check_hypotheses,
    corner_beta,
    dual,
    gauss_bonnet_defect,
    is_isomorphic,
    quad_graph,
    topology,
    turning_alpha,
)

from _corpus import graph_corpus, ising_corpus

Q = AnglePi(1, 4)


def test_angle_arithmetic_is_exact():
    a = AnglePi(3, 8)
    assert a + a == AnglePi(3, 4)
    assert (a * 16).mod_2pi() == ZERO
    assert AnglePi(5).mod_2pi() == PI
    assert AnglePi(6).is_odd_multiple_of_2pi()
    assert not AnglePi(4).is_odd_multiple_of_2pi()
    assert AnglePi(1, 2).exp_i() == 1j
    assert AnglePi(-1).exp_i() == -1


def test_one_by_one_torus_from_raw_data():
    # darts h=0, hbar=1, v=2, vbar=3; rotation cycle (h v hbar vbar)
    m = build_isoradial_map(4, [1, 0, 3, 2], [2, 3, 1, 0], [Q, Q])
    assert (m.n_vertices, m.n_edges, m.n_faces, m.genus) == (1, 2, 1, 1)
    assert is_isomorphic(m, gen_torus_lattice("square", 1, 1))


@pytest.mark.parametrize(
    "reversal, rotation, theta, exc",
    [
        ([0, 1], [1, 0], [Q], NotAnInvolution),
        ([1, 0], [0, 0], [Q], NotAPermutation),
        ([1, 0], [1, 0], [AnglePi(1, 2)], ThetaOutOfRange),
        ([1, 0], [1, 0], [ZERO], ThetaOutOfRange),
        ([1, 0, 3, 2], [0, 1, 2, 3], [Q, Q], NonOrientableOrInconsistent),
    ],
)
def test_build_rejects(reversal, rotation, theta, exc):
    with pytest.raises(exc):
        build_isoradial_map(len(reversal), reversal, rotation, theta)


def test_topology_examples():
    t = topology(gen_torus_lattice("square", 2, 2))
    assert (t.euler_characteristic, t.genus) == (0, 1)
    assert set(t.primal_cone_angles) == set(t.dual_cone_angles) == {AnglePi(2)}

    b = topology(gen_genus2_bouquet())
    assert (b.euler_characteristic, b.genus) == (-2, 2)
    assert b.primal_cone_angles == [AnglePi(6)]
    assert b.dual_cone_angles == [AnglePi(2)]
    assert [len(f) for f in b.faces] == [8]


@pytest.mark.parametrize("name", sorted(graph_corpus()))
def test_gauss_bonnet_exact(name):
    assert gauss_bonnet_defect(graph_corpus()[name]) == ZERO


def test_hypothesis_modes():
    rep = check_hypotheses(gen_torus_lattice("square", 1, 1), "all_odd")
    assert rep.passed and rep.vertex_multipliers == [1]
    rep = check_hypotheses(gen_genus2_bouquet(), "all_odd")
    assert rep.passed and rep.vertex_multipliers == [3] and rep.face_multipliers == [1]
    star = star_construction([(0, k) for k in range(1, 6)], Q)
    rep = check_hypotheses(star, "all_odd")
    assert not rep.passed and 0 in rep.vertex_violators
    k3 = star_construction([(0, 1), (1, 2), (2, 0)], AnglePi(1, 3))
    assert set(k3.primal_cone_angles) == {AnglePi(4, 3)}
    assert not check_hypotheses(k3, "primal_odd").passed


def test_corner_beta_square_lattice():
    m = gen_torus_lattice("square", 3, 3)
    e = 0  # east-going dart at vertex 0, lands on vertex 1
    fan = m.vertices[m.terminus(e)]
    eb = m.reversal[e]
    k = fan.index(eb)
    straight = fan[(k + 2) % 4]
    left_turn = fan[(k + 3) % 4]  # one rotation step before the reversal
    assert corner_beta(m, e, straight) == PI
    assert corner_beta(m, e, left_turn) == AnglePi(1, 2)
    with pytest.raises(BacktrackTransition):
        corner_beta(m, e, eb)


def test_corner_beta_bouquet():
    m = gen_genus2_bouquet()
    e = 0
    nxt = m.rotation_inverse[m.reversal[e]]
    assert corner_beta(m, e, nxt) == AnglePi(3, 4)


def test_turning_alpha():
    m = gen_torus_lattice("square", 1, 1)
    assert turning_alpha(m, [0]) == ZERO  # straight horizontal loop
    assert turning_alpha(m, [2]) == ZERO
    face = m.faces[0]
    assert turning_alpha(m, face) == AnglePi(2)
    sq = gen_torus_lattice("square", 3, 2)
    for f in sq.faces:
        assert turning_alpha(sq, f).mod_2pi() == ZERO
    assert turning_alpha(sq, [0, 4, 8]) == ZERO  # horizontal row, darts 4v


@pytest.mark.parametrize("name", sorted(ising_corpus()))
def test_face_turning_equals_face_cone_angle(name):
    m = ising_corpus()[name]
    for f, walk in enumerate(m.faces):
        assert turning_alpha(m, walk) == m.dual_cone_angles[f]


def test_duals():
    for n in (1, 2, 3):
        sq = gen_torus_lattice("square", n, n)
        assert is_isomorphic(dual(sq), sq)
    tri = gen_torus_lattice("triangular", 2, 2)
    d = dual(tri)
    assert set(d.theta) == {AnglePi(1, 3)}
    assert is_isomorphic(d, gen_torus_lattice("hexagonal", 2, 2))
    b = gen_genus2_bouquet()
    assert dual(b).genus == 2
    assert is_isomorphic(dual(dual(b)), b)


@pytest.mark.parametrize("name", sorted(ising_corpus()))
def test_quad_graph_counts(name):
    m = ising_corpus()[name]
    q = quad_graph(m).quad_map
    assert q.n_vertices == m.n_vertices + m.n_faces
    assert q.n_edges == 2 * m.n_edges
    assert q.n_faces == m.n_edges
    assert all(len(f) == 4 for f in q.faces)
    assert q.genus == m.genus


def test_quad_graph_paths_connect_the_right_vertices():
    m = gen_torus_lattice("triangular", 2, 1)
    qg = quad_graph(m)
    q = qg.quad_map
    d = dual(m)
    for e in range(m.dart_count):
        a, b = qg.primal_edge_paths[e]
        assert q.origin[a] == qg.vertex_of_primal[m.origin[e]]
        assert q.terminus(a) == q.origin[b]
        assert q.terminus(b) == qg.vertex_of_primal[m.terminus(e)]
        a, b = qg.dual_edge_paths[e]
        assert q.origin[a] == qg.vertex_of_face[d.origin[e]]
        assert q.terminus(b) == qg.vertex_of_face[d.terminus(e)]
