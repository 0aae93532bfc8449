import random

import pytest
from hypothesis import given, settings, strategies as st

from realmodcurves.checks import random_triple
from realmodcurves.errors import InvariantViolation
from realmodcurves.groups import Conjugation, Family, Mat2, Vec2, custom_group, family_group
from realmodcurves.modgraph import ELLIPTIC, PARABOLIC, ModularGraph, component_stats
from realmodcurves.oracle import OracleGuard, build_xi_oracle
from realmodcurves.xicore import (GeodesicClass, GeodesicTriple, build_xi, classify_edges,
                                  compute_xi, geodesics_at, intersects, parabolic_classes, rho,
                                  rho2_orbit, satisfies_c, witness_matrix)


def V(a, b, n):
    return Vec2.of(a, b, n)


@settings(max_examples=300)
@given(st.integers(3, 20), st.integers(0, 2**32))
def test_rho_order_and_negation(n, seed):
    t = random_triple(n, random.Random(seed))
    r = t
    for _ in range(4):
        r = rho(r)
    assert r == -t
    for _ in range(4):
        r = rho(r)
    assert r == t
    assert rho(t).w == 3 - t.w and rho(t).check_triple()


def test_rho_example_level5():
    t = GeodesicTriple(V(1, 0, 5), V(0, 1, 5), V(1, 1, 5), 1)
    assert rho(t) == GeodesicTriple(V(1, 1, 5), V(-1, 1, 5), V(0, 1, 5), 2)


@given(st.integers(3, 20), st.integers(0, 2**32))
def test_rho_squared_formula(n, seed):
    t = random_triple(n, random.Random(seed))
    wc = 3 - t.w
    assert rho(rho(t)) == GeodesicTriple(t.y, -t.x, t.z - t.x.scale(wc), t.w)


def test_geodesic_class_canonical():
    t = GeodesicTriple(V(1, 0, 7), V(0, 1, 7), V(1, 1, 7), 1)
    reps = {GeodesicClass.of(s) for s in rho2_orbit(t)}
    assert len(reps) == 1


@pytest.mark.parametrize("n", [5, 7, 12, 16])
def test_witness_properties(n):
    for fam in (Family.GAMMA0, Family.SPLIT, Family.FULL):
        spec = family_group(fam, n)
        for name in ("std", "inv"):
            conj = Conjugation.named(name, n)
            if not spec.is_c_stable(conj):
                continue
            for x in parabolic_classes(spec, conj):
                for t in geodesics_at(x, spec, conj):
                    assert t.check_triple()
                    g = t.witness
                    cg = conj.matrix @ g
                    one = Mat2.identity(n)
                    assert cg @ cg == one
                    assert cg @ t.x == t.x and cg @ t.y == -t.y
                    # the ρ²-images also satisfy (c)
                    for s in rho2_orbit(t):
                        assert satisfies_c(s, spec, conj) is not None


def test_witness_matrix_definition():
    n = 9
    x, y = V(1, 0, n), V(2, 1, n)
    conj = Conjugation.std(n)
    g = witness_matrix(x, y, 1, conj)
    cg = conj.matrix @ g
    for v in (V(1, 0, n), V(0, 1, n), V(4, 7, n)):
        assert cg @ v == v + y.scale(2 * v.pair(x))


@pytest.mark.parametrize("n", [3, 5, 9, 11])
def test_parabolic_classes_gamma_std_odd(n):
    from realmodcurves.modring import units
    spec, conj = family_group(Family.GAMMA, n), Conjugation.std(n)
    want = {min(V(a, 0, n), V(-a, 0, n)) for a in units(n)}
    want |= {min(V(0, a, n), V(0, -a, n)) for a in units(n)}
    assert set(parabolic_classes(spec, conj)) == want


@pytest.mark.parametrize("n", [6, 8, 10, 12])
def test_parabolic_classes_gamma_inv_even(n):
    from realmodcurves.modring import phi, units
    spec, conj = family_group(Family.GAMMA, n), Conjugation.inv(n)
    got = set(parabolic_classes(spec, conj))
    want = {min(V(a, a, n), V(-a, -a, n)) for a in units(n)}
    want |= {min(V(a, -a, n), V(-a, a, n)) for a in units(n)}
    assert got == want and len(got) == phi(n)


@pytest.mark.parametrize("n", range(1, 13))
def test_full_group_one_parabolic_class(n):
    assert len(parabolic_classes(family_group(Family.FULL, n), Conjugation.std(n))) == 1


@pytest.mark.parametrize("fam", [Family.GAMMA, Family.GAMMA1, Family.GAMMA0, Family.SPLIT])
@pytest.mark.parametrize("n", [3, 5, 7, 9, 15])
def test_odd_level_each_weight_present(fam, n):
    spec, conj = family_group(fam, n), Conjugation.std(n)
    for x in parabolic_classes(spec, conj):
        assert {t.w for t in geodesics_at(x, spec, conj)} == {1, 2}


def test_identity_graph_at_level_one():
    g = build_xi(family_group(Family.FULL, 1), Conjugation.std(1))
    assert component_stats(g) == [(1, 1, (1, 2))]
    assert sorted(classify_edges(g).values()) == ["T2", "T2"]


def test_gamma1_level4_triangle():
    g = build_xi(family_group(Family.GAMMA1, 4), Conjugation.std(4))
    assert component_stats(g) == [(3, 0, (1, 1, 2))]


def test_type_1b_loop():
    conj = Conjugation.std(2)
    g = build_xi(custom_group(2, [[[1, 1], [1, 0]]], conj), conj)
    assert component_stats(g) == [(1, 0, (1,))]
    assert classify_edges(g) == {0: "T1b"}


def test_full_level_one_geodesics_intersect():
    data = compute_xi(family_group(Family.FULL, 1), Conjugation.std(1))
    assert data.elliptic_pairs == [(0, 1)]
    assert intersects(data.geodesics[0], family_group(Family.FULL, 1)) == data.geodesics[1]


def test_gamma0_level2_has_one_elliptic_vertex():
    g = build_xi(family_group(Family.GAMMA0, 2), Conjugation.std(2))
    assert g.count(ELLIPTIC) == 1


def test_gamma0_level5_no_intersections():
    spec, conj = family_group(Family.GAMMA0, 5), Conjugation.std(5)
    data = compute_xi(spec, conj)
    assert all(intersects(c, spec) is None for c in data.geodesics)
    g = data.graph
    assert set(classify_edges(g).values()) == {"T1a"}
    assert component_stats(g) == [(2, 0, (1, 2))]


@pytest.mark.parametrize("n", range(3, 31))
def test_upper_triangular_means_no_elliptic(n):
    for fam in (Family.GAMMA0, Family.GAMMA1):
        assert build_xi(family_group(fam, n), Conjugation.std(n)).count(ELLIPTIC) == 0


def test_intersecting_geodesics_have_complementary_weights():
    for n in (5, 10, 13, 25):
        spec, conj = family_group(Family.SPLIT, n), Conjugation.std(n)
        data = compute_xi(spec, conj)
        for k, j in data.elliptic_pairs:
            assert data.geodesics[k].weight + data.geodesics[j].weight == 3


def test_classify_edges_rejects_elliptic_pairs():
    g = object.__new__(ModularGraph)
    object.__setattr__(g, "kinds", (ELLIPTIC, ELLIPTIC))
    object.__setattr__(g, "source", (0, 1))
    object.__setattr__(g, "weight", (1, 1))
    object.__setattr__(g, "tau", (1, 0))
    with pytest.raises(InvariantViolation):
        classify_edges(g)


@pytest.mark.parametrize("name,n", [("gamma", 3), ("full", 2)])
def test_oracle_examples(name, n):
    spec, conj = family_group(name, n), Conjugation.std(n)
    o = build_xi_oracle(spec, conj)
    if name == "gamma":
        assert component_stats(o) == [(2, 0, (1, 2))]
    assert component_stats(o) == component_stats(build_xi(spec, conj))


def test_oracle_guard():
    with pytest.raises(OracleGuard):
        build_xi_oracle(family_group(Family.FULL, 60), Conjugation.std(60))


def test_oracle_shares_no_xicore_code():
    import ast
    import inspect

    import realmodcurves.oracle as oracle
    tree = ast.parse(inspect.getsource(oracle))
    imported = {node.module for node in ast.walk(tree) if isinstance(node, ast.ImportFrom)}
    assert "xicore" not in imported and all("xicore" not in (m or "") for m in imported)
