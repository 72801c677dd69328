"""JSON group-spec files.

One versioned format ("gdecomp-group/1") covers both backends:

    {"format": "gdecomp-group/1", "kind": "matrix", "name": "...",
     "dimension": 2, "special_linear": true,
     "generators": {"S": [[0,-1],[1,0]], "T": [[1,1],[0,1]]},
     "presentation": {"relators": [["S","S","S","S"], ...]},
     "torsion_words": [["S"], ["S","T"]]}

    {"format": "gdecomp-group/1", "kind": "graph-of-groups", "name": "...",
     "vertices": [{"cyclic": 4, "label": "S"}, ...],
     "edges": [{"u": 0, "v": 1, "group": {"cyclic": 2}, "into_u": [0, 2],
                "into_v": [0, 3], "tree": true}],
     "generators": {"S": [["v", 0, 1]], "T": [["v", 0, 3], ["v", 1, 1]]}}

Vertex/edge group tables may be given as {"cyclic": n}, {"trivial": true},
{"mul": [[...]], "labels": [...]}, or {"permutations": [...], "degree": d}.
"""

from __future__ import annotations

import json
from pathlib import Path

from ..errors import SpecFormatError
from .gog import GogEdge, GraphOfGroups, GraphOfGroupsGroup
from .matrix import MatrixGroup
from .table import FiniteGroupTable

FORMAT = "gdecomp-group/1"


def table_from_spec(spec):
    if spec.get("trivial"):
        return FiniteGroupTable.trivial()
    if "cyclic" in spec:
        return FiniteGroupTable.cyclic(spec["cyclic"], spec.get("label"))
    if "mul" in spec:
        return FiniteGroupTable(spec["mul"], spec.get("labels"))
    if "permutations" in spec:
        return FiniteGroupTable.from_permutations(spec["permutations"], spec["degree"])
    raise SpecFormatError(f"unrecognized group table spec: {sorted(spec)}")


def load_group(source):
    """Build a group backend from a spec dict, JSON string, or file path."""
    if isinstance(source, (str, Path)):
        p = Path(source)
        if p.exists():
            data = json.loads(p.read_text())
        else:
            data = json.loads(str(source))
    else:
        data = source
    if data.get("format") != FORMAT:
        raise SpecFormatError(f"expected format {FORMAT!r}, got {data.get('format')!r}")
    kind = data.get("kind")
    name = data.get("name", "group")
    if kind == "matrix":
        return MatrixGroup(
            name,
            data["dimension"],
            data["generators"],
            modulus=data.get("modulus"),
            special_linear=data.get("special_linear", False),
            presentation=data.get("presentation"),
            torsion_words=data.get("torsion_words"),
        )
    if kind == "graph-of-groups":
        vertices = [table_from_spec(v) for v in data["vertices"]]
        edges = [
            GogEdge(e["u"], e["v"], table_from_spec(e["group"]), e["into_u"], e["into_v"], e["tree"])
            for e in data["edges"]
        ]
        gog = GraphOfGroups(vertices, edges, data.get("vertex_names"), name=name)
        group = GraphOfGroupsGroup(gog, data.get("generators", {}), name=name)
        group.companion_matrix = data.get("companion_matrix")
        return group
    raise SpecFormatError(f"unknown group kind {kind!r}")
