from fractions import Fraction

import pytest

from gdecomp import (build_ball, build_truncated_cover, classify_cycle_lift,
                     enumerate_short_cycles, estimate_displacement,
                     lift_element_action, order_threshold,
                     verify_ball_preservation)
from gdecomp.groups import multiply, normal_form


def test_z5_cover_is_path(z5):
    ball = build_ball(z5, 8)
    cov = build_truncated_cover(ball, 4, 8)
    # the 5-cycle is not locally generated at r=4, so the cover unrolls
    # into a line segment
    assert cov.vertex_count == 17
    degrees = sorted(len(cov.adj[x]) for x in range(cov.vertex_count))
    assert degrees == [1, 1] + [2] * 15
    assert cov.certified_depth == 8


def test_z5_cover_closes_at_r5(z5):
    ball = build_ball(z5, 8)
    cov = build_truncated_cover(ball, 5, 5)
    assert cov.vertex_count == 5  # cover == base once the cycle closes


def test_z5_cycle_lift(z5):
    ball = build_ball(z5, 8)
    cyc = enumerate_short_cycles(ball, 5)[0]
    open_cov = build_truncated_cover(ball, 4, 8)
    closed_cov = build_truncated_cover(ball, 5, 5)
    assert classify_cycle_lift(open_cov, cyc) == "lifts-open"
    assert classify_cycle_lift(closed_cov, cyc) == "lifts-closed"


def test_z5_displacement_and_threshold(z5):
    ball = build_ball(z5, 8)
    cov = build_truncated_cover(ball, 4, 8)
    disp = estimate_displacement(cov)
    assert disp["delta"] == 5 and disp["exact"]
    assert order_threshold(5, 4) == Fraction(9, 4)


def test_z5_ball_preservation(z5):
    ball = build_ball(z5, 8)
    cov = build_truncated_cover(ball, 4, 8)
    assert verify_ball_preservation(cov, radius=2)["pass"]
    report = verify_ball_preservation(cov, radius=3)
    assert not report["pass"]
    assert report["witnesses"]  # cover radius-3 ball folds onto C5


def test_f2_cover_equals_ball(f2):
    ball = build_ball(f2, 4)
    cov = build_truncated_cover(ball, 3, 2)
    # trees have no cycles to unroll
    pool = [x for x in range(cov.vertex_count) if cov.node_depth[x] <= 2]
    assert len(pool) == build_ball(f2, 2).vertex_count
    assert estimate_displacement(cov)["delta"] is None


def test_sl2z_cover_frozen(sl2z, sl2z_ball10):
    cov = build_truncated_cover(sl2z_ball10, 6, 3)
    assert cov.vertex_count == 36
    assert cov.certified_depth == 3
    assert verify_ball_preservation(cov)["pass"]


def test_sl2z_relator_lifts_closed(sl2z, sl2z_ball10):
    # length-<=6 cycles already force the full set of relations: the
    # word S T S T S^-1 T is a simple 6-cycle equal to (ST)^3 S^-2
    # modulo the central square commutator, so the length-8 relator
    # closes too
    cov = build_truncated_cover(sl2z_ball10, 6, 3)
    relator = ["S", "S", "T'", "S'", "T'", "S'", "T'", "S'"]
    x = 0
    path = [sl2z_ball10.locate(normal_form(sl2z, relator[: i + 1]))
            for i in range(len(relator))]
    assert cov.walk(x, path) == x
    assert estimate_displacement(cov)["delta"] is None


def test_sl2z_deck_lift_order(sl2z, sl2z_ball10):
    cov = build_truncated_cover(sl2z_ball10, 6, 3)
    S = sl2z.generators["S"]
    lift = lift_element_action(cov, S)
    assert len(lift.mapping) == 24
    assert lift.order_on_region() == 4


def test_depth_guard(z5):
    ball = build_ball(z5, 4)
    with pytest.raises(ValueError):
        build_truncated_cover(ball, 4, 8)


def test_every_short_cycle_lifts_closed_all_fixtures(sl2z_ball10, c2c3, c4c2c6):
    cases = [(sl2z_ball10, 6), (build_ball(c2c3, 8), 4),
             (build_ball(c4c2c6, 8), 6)]
    for ball, r in cases:
        cov = build_truncated_cover(ball, r, 2)
        for cyc in enumerate_short_cycles(ball, r):
            if all(ball.word_length[v] <= 2 for v in cyc.vertices):
                assert classify_cycle_lift(cov, cyc) == "lifts-closed"
