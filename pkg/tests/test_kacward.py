import math

import numpy as np
import pytest

from kwising import AnglePi, gen_genus2_bouquet, gen_torus_lattice
from kwising.cohomology import (
    Cocycle,
    canonical_character,
    character_to_cocycle,
    random_character,
    sign_characters,
    spin_structures,
)
from kwising.errors import HypothesisViolation, NotASquare, TooLarge
from kwising.kacward import (
    WeightSystem,
    critical_coupling,
    critical_weights,
    kw_matrix,
    partition_function_kw,
    tau,
    tau_sqrt,
    tau_via_m,
    vdw_convert,
)
from kwising.linalg import det, row_norm_scale
from kwising.oracles import even_subgraph_z

from _corpus import ising_corpus

SQ2 = math.sqrt(2)


def _sign(m, a, b):
    return character_to_cocycle(m, canonical_character(m, [AnglePi(a), AnglePi(b)]))


def test_critical_weight_values():
    m = gen_torus_lattice("square", 1, 1)
    assert np.allclose(critical_weights(m, "nu").values, SQ2 - 1, rtol=1e-15)
    assert np.allclose(critical_weights(m, "c").values, 1)
    assert np.allclose(critical_weights(m, "mu").values, 1j)
    b = gen_genus2_bouquet()
    assert abs(critical_weights(b, "nu").values[0] - 0.66817864) < 1e-8
    with pytest.raises(ValueError):
        critical_weights(m, "zeta")


def test_matrix_structure_on_single_vertex_torus():
    m = gen_torus_lattice("square", 1, 1)
    a = kw_matrix(m)
    t = np.eye(4) - a
    assert np.count_nonzero(np.abs(t) > 1e-15) == 12
    # a loop continues straight into itself: T[h, h] = i exp(-i pi/2) nu = nu
    assert np.allclose(np.diag(t), SQ2 - 1)
    assert np.array_equal(kw_matrix(m, np.zeros(2)), np.eye(4))


@pytest.mark.parametrize("name", sorted(ising_corpus()))
def test_row_support(name):
    m = ising_corpus()[name]
    t = np.eye(m.dart_count) - kw_matrix(m)
    for e in range(m.dart_count):
        deg = len(m.vertices[m.terminus(e)])
        assert np.count_nonzero(np.abs(t[e]) > 0) <= deg - 1


@pytest.mark.parametrize("name", ["square-2x2", "triangular-2x1", "hexagonal-2x2", "rect-2x2"])
def test_coboundary_invariance(name):
    m = ising_corpus()[name]
    rng = np.random.default_rng(11)
    phi = character_to_cocycle(m, random_character(m, rng))
    g = np.exp(2j * np.pi * rng.random(m.n_vertices))
    psi = phi.times_coboundary(g)
    assert not np.allclose(kw_matrix(m, None, phi), kw_matrix(m, None, psi))
    t1, t2 = tau(m, None, phi), tau(m, None, psi)
    assert abs(t1 - t2) <= 1e-10 * abs(t1)


def test_worked_values_on_single_vertex_torus():
    m = gen_torus_lattice("square", 1, 1)
    assert abs(tau(m, None, _sign(m, 1, 1)) - 16 * (3 - 2 * SQ2)) < 1e-12
    assert abs(tau(m, None, _sign(m, 1, 0)) - 8 * (3 - 2 * SQ2)) < 1e-12
    a = kw_matrix(m)
    assert abs(tau(m)) <= 1e-9 * row_norm_scale(a)
    assert abs(tau_via_m(m)) <= 1e-12


@pytest.mark.parametrize("name", sorted(ising_corpus()))
def test_trivial_character_kills_tau(name):
    m = ising_corpus()[name]
    a = kw_matrix(m)
    assert abs(det(a)) <= 1e-9 * row_norm_scale(a)


def test_tau_via_m_on_sign_characters():
    m = gen_torus_lattice("square", 2, 2)
    for ch in sign_characters(m)[1:]:
        phi = character_to_cocycle(m, ch)
        t = tau(m, None, phi)
        assert abs(t - tau_via_m(m, phi)) <= 1e-10 * abs(t)


def test_tau_via_m_bouquet_random():
    m = gen_genus2_bouquet()
    rng = np.random.default_rng(5)
    for _ in range(5):
        phi = character_to_cocycle(m, random_character(m, rng))
        t = tau(m, None, phi)
        assert abs(t - tau_via_m(m, phi)) <= 1e-9 * abs(t)


@pytest.mark.parametrize("name", sorted(ising_corpus()))
def test_spin_structure_tau_is_real_nonnegative(name):
    m = ising_corpus()[name]
    for lam in spin_structures(m):
        t = tau(m, None, lam)
        scale = row_norm_scale(kw_matrix(m, None, lam))
        assert abs(t.imag) <= 1e-9 * scale
        assert t.real >= -1e-9 * scale
        p = tau_sqrt(m, None, lam)
        assert abs(p * p - t.real) <= 1e-8 * max(abs(t), 1e-300) or abs(t) <= 1e-9 * scale


def test_tau_sqrt_values():
    m = gen_torus_lattice("square", 1, 1)
    structures = {s.bits: s for s in spin_structures(m)}
    assert tau_sqrt(m, np.zeros(2), structures[(1, 1)]) == 1.0
    assert abs(tau_sqrt(m, None, structures[(1, 1)]) - 4 * (SQ2 - 1)) < 1e-12
    assert abs(tau_sqrt(m, None, structures[(1, 0)]) - (4 - 2 * SQ2)) < 1e-12
    assert abs(tau_sqrt(m, None, structures[(0, 1)]) - (4 - 2 * SQ2)) < 1e-12
    assert abs(tau_sqrt(m, None, structures[(0, 0)])) < 1e-12


def test_tau_sqrt_refuses_non_squares():
    m = gen_torus_lattice("square", 2, 2)
    rng = np.random.default_rng(3)
    phi = character_to_cocycle(m, random_character(m, rng))
    with pytest.raises(NotASquare):
        tau_sqrt(m, None, phi)


def test_tau_sqrt_size_cap():
    m = gen_torus_lattice("square", 9, 9)
    with pytest.raises(TooLarge):
        tau_sqrt(m, None, Cocycle.trivial(m))


def test_partition_function_small_cases():
    m = gen_torus_lattice("square", 1, 1)
    assert abs(partition_function_kw(m) - 2) < 1e-9
    b = gen_genus2_bouquet()
    expected = (1 + math.tan(3 * math.pi / 16)) ** 4
    assert abs(partition_function_kw(b) - expected) <= 1e-9 * expected


@pytest.mark.parametrize("name", sorted(ising_corpus()))
def test_partition_function_matches_even_subgraphs(name):
    m = ising_corpus()[name]
    rng = np.random.default_rng(len(name))
    for x in (None, rng.uniform(0.05, 0.9, m.n_edges)):
        z = partition_function_kw(m, x)
        ref = even_subgraph_z(m, x).real
        assert abs(z - ref) <= 1e-8 * ref


def test_partition_function_refusals():
    from kwising import star_construction

    k3 = star_construction([(0, 1), (1, 2), (2, 0)], AnglePi(1, 3))
    with pytest.raises(HypothesisViolation):
        partition_function_kw(k3)
    m = gen_torus_lattice("square", 1, 1)
    with pytest.raises(ValueError):
        partition_function_kw(m, np.array([0.3j, 0.2]))


def test_vdw_convert():
    m = gen_torus_lattice("square", 1, 1)
    jc = math.log(math.sqrt(1 + SQ2))
    pre, nu = vdw_convert(m, [jc, jc])
    assert np.allclose(nu.values, math.tan(math.pi / 8), rtol=1e-14)
    assert abs(pre - math.cosh(jc) ** 2 * 2) < 1e-12
    assert abs(pre * partition_function_kw(m, nu) - math.cosh(jc) ** 2 * 2 * 2) < 1e-9
    pre0, nu0 = vdw_convert(m, [0, 0])
    assert pre0 == 2 and np.all(nu0.values == 0)


def test_critical_coupling():
    assert abs(critical_coupling(math.pi / 4) - math.log(math.sqrt(1 + SQ2))) < 1e-15
    for t in np.linspace(0.01, math.pi / 2 - 0.01, 50):
        assert abs(math.sinh(2 * critical_coupling(t)) - math.tan(t)) <= 1e-12 * math.tan(t)


def test_weight_system_helpers():
    m = gen_torus_lattice("square", 2, 1)
    w = WeightSystem.coupling_J(m, 0.5)
    assert len(w) == 4 and w.is_real
    assert np.allclose(w.scaled(2).values, 1)
    with pytest.raises(ValueError):
        WeightSystem.coupling_J(m, -1)
