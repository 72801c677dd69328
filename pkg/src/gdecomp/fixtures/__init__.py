"""Bundled example groups and programmatic builders for their relatives."""

from __future__ import annotations

from pathlib import Path

from ..errors import SpecFormatError
from ..groups import (
    FiniteGroupTable,
    GogEdge,
    GraphOfGroups,
    GraphOfGroupsGroup,
    load_group,
)

_DIR = Path(__file__).parent

#: short names accepted by the CLI --group flag, mapped to bundled spec files
FIXTURES = {
    "f2": "f2.json",
    "sl2z": "sl2z.json",
    "sl3z": "sl3z.json",
    "c2*c3": "c2_c3.json",
    "c4*c2*c6": "c4_c2_c6.json",
    "z5": "z5.json",
    "z": "z.json",
    "amalgam": "amalgam_template.json",
}


def fixture_path(name):
    key = name.lower()
    if key not in FIXTURES:
        raise SpecFormatError(
            f"unknown fixture {name!r}; known: {', '.join(sorted(FIXTURES))}"
        )
    return _DIR / FIXTURES[key]


def load_fixture(name):
    return load_group(fixture_path(name))


def make_free_group(rank, labels=None):
    """Free group F_n as a rose: one trivial vertex, n non-tree loops."""
    if labels is None:
        labels = [chr(ord("a") + i) for i in range(rank)]
    triv = FiniteGroupTable.trivial()
    edges = [GogEdge(0, 0, FiniteGroupTable.trivial(), [0], [0], tree=False) for _ in range(rank)]
    gog = GraphOfGroups([triv], edges, ["base"], name=f"f{rank}")
    gens = {labels[i]: [("e", i, 1)] for i in range(rank)}
    return GraphOfGroupsGroup(gog, gens, name=f"f{rank}")


def make_cyclic_group(n, label="g"):
    gog = GraphOfGroups([FiniteGroupTable.cyclic(n, label)], [], [f"C{n}"], name=f"z{n}")
    return GraphOfGroupsGroup(gog, {label: [("v", 0, 1)]}, name=f"z{n}")


def make_cyclic_amalgam(a, c, b, labels=("x", "y")):
    """C_a *_{C_c} C_b with the edge group embedded as the index-(a/c) and
    index-(b/c) subgroups; requires c | a and c | b."""
    if c < 1 or a % c or b % c:
        raise SpecFormatError(f"C_{c} must embed in both C_{a} and C_{b}")
    la, lb = labels
    edge = GogEdge(
        0,
        1,
        FiniteGroupTable.cyclic(c, "c"),
        [i * (a // c) for i in range(c)],
        [i * (b // c) for i in range(c)],
        tree=True,
    )
    gog = GraphOfGroups(
        [FiniteGroupTable.cyclic(a, la), FiniteGroupTable.cyclic(b, lb)],
        [edge],
        [f"C{a}", f"C{b}"],
        name=f"c{a}_c{c}_c{b}",
    )
    gens = {la: [("v", 0, 1)], lb: [("v", 1, 1)]}
    return GraphOfGroupsGroup(gog, gens, name=f"c{a}_c{c}_c{b}")
