import pytest

from gdecomp import build_ball, verify_short_cycle_cosets
from gdecomp.cayley import (coset_subgraph, subgraph_diameter,
                            torsion_length_bound)
from gdecomp.errors import CapExceeded
from gdecomp.groups import multiply


def powers(group, g, n):
    out, acc = [], group.identity
    for _ in range(n):
        out.append(acc)
        acc = multiply(acc, g)
    return out


def test_sl2z_ball_sizes(sl2z, sl2z_ball10):
    assert build_ball(sl2z, 1).vertex_count == 5
    assert build_ball(sl2z, 8).vertex_count == 560
    assert sl2z_ball10.vertex_count == 1492
    layers = sl2z_ball10.layer_counts()
    assert layers[0] == 1 and layers[1] == 4
    assert sum(layers) == 1492


def test_f2_ball_is_tree(f2):
    ball = build_ball(f2, 2)
    assert ball.vertex_count == 17
    assert ball.edge_count == 16  # tree: V - 1


def test_z5_ball_is_cycle(z5):
    ball = build_ball(z5, 4)
    assert ball.vertex_count == 5
    assert ball.edge_count == 5
    assert all(len(ball.adj[v]) == 2 for v in range(5))


def test_ball_cap():
    from gdecomp.fixtures import load_fixture
    with pytest.raises(CapExceeded):
        build_ball(load_fixture("f2"), 8, cap=100)


def test_locate_and_edge_labels(sl2z, sl2z_ball10):
    S = sl2z.generators["S"]
    i = sl2z_ball10.locate(S)
    assert i is not None and sl2z_ball10.word_length[i] == 1
    assert sl2z_ball10.edge_label(0, i) == "S"


def test_coset_subgraphs(sl2z, sl2z_ball10):
    S = sl2z.generators["S"]
    T = sl2z.generators["T"]
    s_coset, complete = coset_subgraph(sl2z_ball10, powers(sl2z, S, 4),
                                       sl2z.identity)
    assert complete and len(s_coset) == 4
    assert subgraph_diameter(sl2z_ball10, s_coset) == 2
    st_coset, complete = coset_subgraph(sl2z_ball10,
                                        powers(sl2z, multiply(S, T), 6),
                                        sl2z.identity)
    assert complete and len(st_coset) == 6
    # <ST> cosets span no Cayley edges: no generator is a power of ST
    assert subgraph_diameter(sl2z_ball10, st_coset) is None


def test_short_cycle_cosets_r4(sl2z, sl2z_ball8):
    S = sl2z.generators["S"]
    ST = multiply(S, sl2z.generators["T"])
    candidates = [powers(sl2z, S, 4), powers(sl2z, ST, 6),
                  powers(sl2z, multiply(S, S), 2)]
    report = verify_short_cycle_cosets(sl2z_ball8, 4, candidates)
    # every 4-cycle is an <S>-coset square
    assert report["pass"] and report["cycles_checked"] == 105


def test_short_cycle_cosets_r6_violations(sl2z, sl2z_ball10):
    # the central commutator S^2 T S^-2 T^-1 is a 6-cycle in no single
    # coset; the coset claim fails at r = 6
    S = sl2z.generators["S"]
    ST = multiply(S, sl2z.generators["T"])
    candidates = [powers(sl2z, S, 4), powers(sl2z, ST, 6),
                  powers(sl2z, multiply(S, S), 2)]
    report = verify_short_cycle_cosets(sl2z_ball10, 6, candidates)
    assert not report["pass"]
    assert report["cycles_checked"] == 2707
    assert len(report["violations"]) == 2424
    labels = {v.canonical for v in report["violations"]}
    # the central square commutator is among the violating words
    assert any("T" in "".join(lab) for lab in labels)


def test_torsion_length_bound(c2c3, c4c2c6):
    # inverse generators make b^2 = b' and T^3 = S^2 short
    assert torsion_length_bound(c2c3) == 1
    assert torsion_length_bound(c4c2c6) == 2


def test_ball_json_deterministic(z5):
    a = build_ball(z5, 3).to_json()
    b = build_ball(z5, 3).to_json()
    assert a == b
    assert {"vertices", "edges", "radius"} <= set(a)
