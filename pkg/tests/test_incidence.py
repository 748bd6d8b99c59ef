import json
from itertools import combinations

import pytest

from cremona.automorphisms import find_isomorphism
from cremona.crspace import induced_map
from cremona.incidence import (
    ConfigurationError,
    IncidenceStructure,
    intersection_profile,
    is_automorphism,
    levi_graph,
    neighborhood,
    point_label_strings,
    verify_configuration,
)
from cremona.setcomb import ParameterError


@pytest.mark.parametrize(
    "nks,expected",
    [((6, 2, 3), (15, 3, 15, 3)), ((8, 2, 4), (28, 15, 105, 4)), ((7, 2, 3), (35, 9, 105, 3))],
)
def test_verify_configuration(cr, nks, expected):
    assert tuple(verify_configuration(cr(*nks).structure)) == expected


def test_verify_configuration_names_offender():
    S = IncidenceStructure(("a", "b", "c", "d"), ((0, 1), (1, 2), (2, 3)))
    with pytest.raises(ConfigurationError) as e:
        verify_configuration(S)
    assert e.value.point == 1
    T = IncidenceStructure(("a", "b", "c"), ((0, 1), (0, 1, 2)))
    with pytest.raises(ConfigurationError) as e:
        verify_configuration(T)
    assert e.value.block == 1


def test_construction_rejects_bad_blocks():
    with pytest.raises(ParameterError):
        IncidenceStructure(("a", "b"), ((0, 1), (1, 0)))
    with pytest.raises(ParameterError):
        IncidenceStructure(("a", "b"), ((0, 2),))
    with pytest.raises(ParameterError):
        IncidenceStructure(("a", "a"), ())


def test_profile_623(cr):
    prof = intersection_profile(cr(6, 2, 3).structure)
    assert set(prof) <= {0, 1}
    assert sum(prof.values()) == 15 * 14 // 2


def test_profile_824_brute(cr):
    S = cr(8, 2, 4).structure
    prof = intersection_profile(S)
    assert set(prof) == {0, 1, 2}
    brute = {}
    for b1, b2 in combinations(S.blocks, 2):
        c = len(set(b1) & set(b2))
        brute[c] = brute.get(c, 0) + 1
    assert prof == brute


def test_profile_single_block():
    assert intersection_profile(IncidenceStructure(("a", "b"), ((0, 1),))) == {}


def test_neighborhood_623(cr):
    S = cr(6, 2, 3).structure
    ref = cr(4, 2, 2).structure
    for a in range(S.num_points):
        N = neighborhood(S, a)
        assert (N.num_points, N.num_blocks) == (6, 3)
        assert all(len(b) == 2 for b in N.blocks)
        assert find_isomorphism(N, ref) is not None


def test_neighborhood_824_first_point(cr):
    N = neighborhood(cr(8, 2, 4).structure, 0)
    assert (N.num_points, N.num_blocks) == (15, 15)
    assert find_isomorphism(N, cr(6, 2, 3).structure) is not None


def test_neighborhood_isolated_point_and_bad_index():
    S = IncidenceStructure(("a", "b", "c"), ((0, 1),))
    N = neighborhood(S, 2)
    assert N.num_points == 0 and N.num_blocks == 0
    with pytest.raises(ParameterError):
        neighborhood(S, 3)


@pytest.mark.parametrize("nks,verts,edges", [((6, 2, 3), 30, 45), ((7, 2, 3), 140, 315)])
def test_levi_graph_sizes(cr, nks, verts, edges):
    L = levi_graph(cr(*nks).structure)
    assert L.num_vertices == verts
    assert len(L.edges) == edges
    # bipartite: every edge joins a point to a block
    assert all(u < L.num_points <= v for u, v in L.edges)


def test_levi_graph_empty():
    L = levi_graph(IncidenceStructure((), ()))
    assert L.num_vertices == 0 and L.edges == []


def test_dot_export(cr):
    S = cr(6, 2, 3).structure
    dot = levi_graph(S).to_dot(point_label_strings(S))
    assert dot.startswith("graph levi {")
    assert dot.count("shape=circle") == 15
    assert dot.count("shape=box") == 15
    assert dot.count(" -- ") == 45
    assert 'label="01"' in dot


def test_json_export(cr):
    data = json.loads(cr(6, 2, 3).structure.to_json())
    assert list(data) == ["points", "blocks"]
    assert data["points"][0] == [0, 1]
    assert len(data["blocks"]) == 15 and all(len(b) == 3 for b in data["blocks"])


def test_is_automorphism(cr):
    C = cr(6, 2, 3)
    S = C.structure
    assert is_automorphism(S, tuple(range(15)))
    with pytest.raises(ParameterError):
        is_automorphism(S, (0, 1))
    sigma = (1, 0, 2, 3, 4, 5)
    assert is_automorphism(S, induced_map(sigma, C))


def test_rank_breaking_transposition_is_not_automorphism():
    # points 0 and 1 share a block but have different ranks
    S = IncidenceStructure(("x", "y", "z"), ((0, 1), (0, 2)))
    assert not is_automorphism(S, (1, 0, 2))
