import random

import pytest

from gdecomp import (build_tree_portion, classify_tree_automorphism,
                     locate_torsion, verify_equivariant_isomorphism)
from gdecomp.bassserre import (DecompositionTree, is_non_elementary,
                               perturb_tree_portion, small_index_threshold)
from gdecomp.errors import UncertifiedRegion, VerificationFailure
from gdecomp.groups import inverse, multiply, normal_form


def test_c2c3_tree_shape(c2c3):
    tree = build_tree_portion(c2c3, 4)
    assert tree.vertex_count == 19
    degrees = {len(tree.adj[x]) for x in tree.interior_vertices()}
    assert degrees == {2, 3}  # C2 cosets branch 2 ways, C3 cosets 3
    assert {tree.label(x) for x in range(tree.vertex_count)} == {2, 3}


def test_c2c3_classification(c2c3):
    tree = build_tree_portion(c2c3, 12)
    a = c2c3.generators["a"]
    b = c2c3.generators["b"]
    assert classify_tree_automorphism(tree, a).kind == "elliptic"
    assert classify_tree_automorphism(tree, b).kind == "elliptic"
    ab = multiply(a, b)
    act = classify_tree_automorphism(tree, ab)
    assert act.kind == "hyperbolic" and act.translation_length == 2


def test_translation_length_scales_linearly(c2c3):
    tree = build_tree_portion(c2c3, 12)
    ab = multiply(c2c3.generators["a"], c2c3.generators["b"])
    acc = ab
    for k in range(1, 5):
        act = classify_tree_automorphism(tree, acc)
        assert act.kind == "hyperbolic"
        assert act.translation_length == 2 * k
        acc = multiply(acc, ab)


def test_conjugates_of_torsion_stay_elliptic(c2c3):
    tree = build_tree_portion(c2c3, 8)
    rng = random.Random(1)
    gens = list(c2c3.generators.values())
    a = c2c3.generators["a"]
    for _ in range(50):
        w = c2c3.identity
        for _ in range(rng.randrange(3)):
            w = multiply(w, rng.choice(gens))
        gamma = multiply(multiply(w, a), inverse(w))
        try:
            act = classify_tree_automorphism(tree, gamma)
        except UncertifiedRegion:
            continue
        assert act.kind in ("elliptic", "reflection")


def test_c4c2c6_classification(c4c2c6):
    tree = build_tree_portion(c4c2c6, 3)
    assert tree.vertex_count == 11
    S = c4c2c6.generators["S"]
    T = c4c2c6.generators["T"]
    assert classify_tree_automorphism(tree, S).kind == "elliptic"
    assert classify_tree_automorphism(tree, multiply(S, T)).kind == "elliptic"


def test_non_elementary(c2c3, c4c2c6, zgroup):
    assert is_non_elementary(build_tree_portion(c2c3, 4))[0]
    assert is_non_elementary(build_tree_portion(c4c2c6, 3))[0]
    assert not is_non_elementary(build_tree_portion(zgroup, 4))[0]


def test_locate_torsion(c2c3, c4c2c6):
    ball_needed = 7  # decomposition context for the locator
    from gdecomp import build_ball, compute_global_decomposition
    ball = build_ball(c2c3, ball_needed)
    dec = compute_global_decomposition(ball, 3)
    tree = build_tree_portion(c2c3, 4)
    loc = locate_torsion(dec, tree, c2c3.generators["a"])
    assert loc["kind"] == "bag"
    assert loc["bag_size"] == 2
    assert loc["order"] == 2
    assert loc["tree_action"] == "elliptic"


def test_small_index_threshold():
    assert small_index_threshold(2, 6, 2) == 4
    assert small_index_threshold(1, 1, 0) == 1
    assert small_index_threshold(3, 4, 10) == 12
    with pytest.raises(ValueError):
        small_index_threshold(0, 1, 0)


def test_equivariant_isomorphism(sl2z_decomp, c4c2c6):
    dt = DecompositionTree(sl2z_decomp, 3)
    bt = build_tree_portion(c4c2c6, 3)
    report = verify_equivariant_isomorphism(dt, bt, ["S", "T"])
    assert report["pass"]
    assert report["isomorphism_size"] == 11


def test_equivariant_negative_control(sl2z_decomp, c4c2c6):
    dt = DecompositionTree(sl2z_decomp, 3)
    perturbed = perturb_tree_portion(build_tree_portion(c4c2c6, 3))
    report = verify_equivariant_isomorphism(dt, perturbed, ["S", "T"])
    assert not report["pass"]
    assert report["witness"]


def test_decomposition_tree_root(sl2z_decomp):
    dt = DecompositionTree(sl2z_decomp, 3)
    assert len(dt.nodes) == 11
    assert dt.label(dt.root) == 4  # smallest bag through the identity
