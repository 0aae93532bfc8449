import itertools
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from realmodcurves.errors import InvariantViolation, ValenceError
from realmodcurves.groups import Conjugation, Family, family_group
from realmodcurves.modgraph import (ELLIPTIC, PARABOLIC, CycleSignature, ModularGraph,
                                    ProductPrecondition, canonical_signature, component_stats,
                                    cycles, disjoint_union, identity_graph, is_regular, isomorphic,
                                    product, relabel, verify_cyclic)
from realmodcurves.xicore import build_xi


@st.composite
def cycle_spec(draw):
    length = draw(st.integers(1, 6))
    kinds = []
    for i in range(length):
        prev_e = i > 0 and kinds[-1] == ELLIPTIC
        last_wrap = i == length - 1 and kinds and kinds[0] == ELLIPTIC
        if length == 1 or prev_e or last_wrap:
            kinds.append(PARABOLIC)
        else:
            kinds.append(draw(st.sampled_from([PARABOLIC, ELLIPTIC])))
    weights = draw(st.lists(st.sampled_from([1, 2]), min_size=length, max_size=length))
    return list(zip(kinds, weights))


def graph_from_cycles(specs):
    kinds, edges = [], []
    for spec in specs:
        base = len(kinds)
        kinds += [k for k, _ in spec]
        for i, (_, w) in enumerate(spec):
            edges.append((base + i, base + (i + 1) % len(spec), w))
    return ModularGraph.from_edges(kinds, edges)


graphs = st.lists(cycle_spec(), min_size=1, max_size=3)


def brute_isomorphic(g1, g2):
    """Search all kind-preserving vertex bijections (small graphs only)."""
    if sorted(g1.kinds) != sorted(g2.kinds):
        return False

    def edge_bag(g, perm):
        return Counter((min(perm[u], perm[v]), max(perm[u], perm[v]), w) for u, v, w in g.edges())

    target = edge_bag(g2, list(range(g2.num_vertices)))
    for perm in itertools.permutations(range(g1.num_vertices)):
        if all(g1.kinds[v] == g2.kinds[perm[v]] for v in range(g1.num_vertices)):
            if edge_bag(g1, perm) == target:
                return True
    return False


@given(cycle_spec(), st.integers(0, 10), st.booleans())
def test_signature_is_rotation_and_reflection_invariant(spec, k, flip):
    steps = spec[k % len(spec):] + spec[:k % len(spec)]
    if flip:
        # reversing a cycle pairs each vertex with the weight of the edge before it
        ks = [s[0] for s in steps]
        ws = [s[1] for s in steps]
        n = len(steps)
        steps = [(ks[-i % n], ws[(-i - 1) % n]) for i in range(n)]
    assert canonical_signature(steps) == canonical_signature(spec)


@given(graphs, st.randoms())
def test_relabel_preserves_isomorphism_class(specs, rnd):
    g = graph_from_cycles(specs)
    vperm = list(range(g.num_vertices))
    dperm = list(range(len(g.source)))
    rnd.shuffle(vperm)
    rnd.shuffle(dperm)
    h = relabel(g, vperm, dperm)
    assert isomorphic(g, h)
    assert verify_cyclic(h) == sorted(canonical_signature(s) for s in specs)


@settings(max_examples=60)
@given(st.lists(cycle_spec(), min_size=1, max_size=2), st.lists(cycle_spec(), min_size=1, max_size=2))
def test_isomorphic_agrees_with_brute_force(a, b):
    g1, g2 = graph_from_cycles(a), graph_from_cycles(b)
    if g1.num_vertices > 7 or g2.num_vertices > 7:
        return
    assert isomorphic(g1, g2) == brute_isomorphic(g1, g2)


def test_validation_rejects_bad_graphs():
    with pytest.raises(InvariantViolation):
        ModularGraph.from_edges([PARABOLIC, PARABOLIC], [(0, 1, 3)])
    with pytest.raises(InvariantViolation):
        ModularGraph.from_edges([ELLIPTIC, ELLIPTIC], [(0, 1, 1)])
    with pytest.raises(InvariantViolation):
        ModularGraph((PARABOLIC,), (0, 0), (1, 1), (0, 1))
    with pytest.raises(InvariantViolation):
        ModularGraph((PARABOLIC, PARABOLIC), (0, 1), (1, 2), (1, 0))


def test_valence_error():
    g = ModularGraph.from_edges([PARABOLIC] * 3, [(0, 1, 1), (1, 2, 2)])
    with pytest.raises(ValenceError) as info:
        cycles(g)
    assert info.value.valence == 1 and info.value.details["vertex"] in (0, 2)


def test_identity_graph():
    g = identity_graph()
    assert is_regular(g)
    assert component_stats(g) == [(1, 1, (1, 2))]
    assert str(verify_cyclic(g)[0]) == "cycle E–P, weights 1,2"


def test_loops_count_twice():
    g = ModularGraph.from_edges([PARABOLIC], [(0, 0, 1)])
    assert component_stats(g) == [(1, 0, (1,))]
    assert not is_regular(g)


def test_disjoint_union_stats():
    a = graph_from_cycles([[(PARABOLIC, 1), (PARABOLIC, 2)]])
    u = disjoint_union(a, identity_graph())
    assert component_stats(u) == sorted(component_stats(a) + component_stats(identity_graph()))


@pytest.mark.parametrize("fam,n", [(Family.GAMMA0, 5), (Family.SPLIT, 7), (Family.GAMMA1, 8),
                                   (Family.SPLIT, 8), (Family.FULL, 6)])
def test_identity_graph_is_product_unit(fam, n):
    g = build_xi(family_group(fam, n), Conjugation.std(n))
    assert isomorphic(product(g, identity_graph()), g)
    assert isomorphic(product(identity_graph(), g), g)


def test_product_needs_a_regular_factor():
    loop = ModularGraph.from_edges([PARABOLIC], [(0, 0, 2)])
    with pytest.raises(ProductPrecondition):
        product(loop, loop)


def test_cycle_signature_is_ordered():
    a = CycleSignature(((PARABOLIC, 1),))
    b = CycleSignature(((PARABOLIC, 2),))
    assert a < b and len(a) == 1
