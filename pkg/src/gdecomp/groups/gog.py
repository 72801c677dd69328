"""Graphs of finite groups and exact arithmetic in their fundamental groups.

Elements of the fundamental group (based at vertex 0) are stored as
reduced alternating path words

    g0  d1  g1  d2  ...  dn  gn

where each g_i is an element of the vertex group at the current path
position and each d_i is a directed edge traversal. A word is reduced
when it contains no pinch (d, g, d-reversed) with g in the edge-group
image on the head side, and canonical once every g_{i-1} preceding a
traversal is the fixed lowest-index representative of its left coset of
the tail-side edge-group image. With those conventions the canonical
form is unique, so equality is structural comparison and the word
problem is exact.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import SpecFormatError, VerificationFailure
from .element import GroupElement
from .table import FiniteGroupTable


class GogEdge:
    __slots__ = ("u", "v", "table", "into_u", "into_v", "tree")

    def __init__(self, u, v, table, into_u, into_v, tree):
        self.u = u
        self.v = v
        self.table = table
        self.into_u = tuple(into_u)
        self.into_v = tuple(into_v)
        self.tree = bool(tree)


class GraphOfGroups:
    """Finite connected graph with finite vertex/edge groups and embeddings."""

    def __init__(self, vertices, edges, vertex_names=None, name=None):
        self.vertices = list(vertices)
        self.edges = list(edges)
        self.vertex_names = list(vertex_names or [f"v{i}" for i in range(len(self.vertices))])
        self.name = name or "gog"
        self.verify()

    def verify(self):
        n = len(self.vertices)
        if n == 0:
            raise SpecFormatError("graph of groups needs at least one vertex")
        adj = {i: set() for i in range(n)}
        tree_adj = {i: set() for i in range(n)}
        tree_count = 0
        for e in self.edges:
            if not (0 <= e.u < n and 0 <= e.v < n):
                raise SpecFormatError("edge endpoint out of range")
            adj[e.u].add(e.v)
            adj[e.v].add(e.u)
            self._check_embedding(e.table, self.vertices[e.u], e.into_u)
            self._check_embedding(e.table, self.vertices[e.v], e.into_v)
            if e.tree:
                if e.u == e.v:
                    raise SpecFormatError("loop edge cannot be a tree edge")
                tree_adj[e.u].add(e.v)
                tree_adj[e.v].add(e.u)
                tree_count += 1
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != n:
            raise SpecFormatError("underlying graph is not connected")
        if tree_count != n - 1:
            raise SpecFormatError("tree-marked edges do not form a spanning tree")
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in tree_adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != n:
            raise SpecFormatError("tree-marked edges do not span the graph")

    @staticmethod
    def _check_embedding(src, dst, mapping):
        if len(mapping) != src.order:
            raise SpecFormatError("embedding has wrong domain size")
        if len(set(mapping)) != src.order or mapping[0] != 0:
            raise VerificationFailure("edge embedding is not injective or misses identity")
        for a in range(src.order):
            for b in range(src.order):
                if mapping[src.mul[a][b]] != dst.mul[mapping[a]][mapping[b]]:
                    raise VerificationFailure("edge embedding is not a homomorphism")

    def euler_characteristic(self):
        return sum(Fraction(1, t.order) for t in self.vertices) - sum(
            Fraction(1, e.table.order) for e in self.edges
        )

    def to_json(self):
        return {
            "vertices": [t.to_json() for t in self.vertices],
            "vertex_names": self.vertex_names,
            "edges": [
                {
                    "u": e.u,
                    "v": e.v,
                    "group": e.table.to_json(),
                    "into_u": list(e.into_u),
                    "into_v": list(e.into_v),
                    "tree": e.tree,
                }
                for e in self.edges
            ],
        }


# Path-word items: ("v", vertex_index, element_index) and ("e", edge_index, sign).
# sign +1 traverses u -> v, sign -1 traverses v -> u.


class GraphOfGroupsGroup:
    """Fundamental group of a GraphOfGroups, based at vertex 0."""

    backend = "normal-form"

    def __init__(self, gog, generator_sketches=None, name=None):
        self.gog = gog
        self.name = name or gog.name
        self._prepare_edge_data()
        self._prepare_tree_paths()
        self.identity = GroupElement("normal-form", (("v", 0, 0),), self)
        self.generators = {}
        for gname, sketch in (generator_sketches or {}).items():
            self.generators[gname] = self.loop_from_sketch(sketch)

    # -- precomputation -------------------------------------------------

    def _prepare_edge_data(self):
        # per (edge, sign): tail vertex, head vertex, tail/head embeddings,
        # image sets and preimage dicts, and lowest-index coset reps.
        self._dir = {}
        for ei, e in enumerate(self.gog.edges):
            for sign in (+1, -1):
                tail, head = (e.u, e.v) if sign == 1 else (e.v, e.u)
                emb_tail = e.into_u if sign == 1 else e.into_v
                emb_head = e.into_v if sign == 1 else e.into_u
                tail_tbl = self.gog.vertices[tail]
                image_tail = frozenset(emb_tail)
                pre_tail = {img: c for c, img in enumerate(emb_tail)}
                pre_head = {img: c for c, img in enumerate(emb_head)}
                # lowest-index representative of each left coset g * image_tail
                rep = [None] * tail_tbl.order
                for g in range(tail_tbl.order):
                    if rep[g] is None:
                        coset = sorted(tail_tbl.mul[g][h] for h in image_tail)
                        r = coset[0]
                        for x in coset:
                            rep[x] = r
                self._dir[(ei, sign)] = {
                    "tail": tail,
                    "head": head,
                    "emb_tail": emb_tail,
                    "emb_head": emb_head,
                    "image_tail": image_tail,
                    "image_head": frozenset(emb_head),
                    "pre_tail": pre_tail,
                    "pre_head": pre_head,
                    "rep": rep,
                }

    def _prepare_tree_paths(self):
        # BFS over tree edges from the base vertex; path[v] = list of
        # ("e", ei, sign) traversals leading base -> v.
        n = len(self.gog.vertices)
        path = {0: []}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for ei, e in enumerate(self.gog.edges):
                    if not e.tree:
                        continue
                    if e.u == x and e.v not in path:
                        path[e.v] = path[x] + [("e", ei, +1)]
                        nxt.append(e.v)
                    elif e.v == x and e.u not in path:
                        path[e.u] = path[x] + [("e", ei, -1)]
                        nxt.append(e.u)
            frontier = nxt
        if len(path) != n:
            raise SpecFormatError("spanning tree does not reach all vertices")
        self._tree_path = path

    # -- word assembly --------------------------------------------------

    def _interleave(self, traversals, start_vertex):
        """Turn a traversal list into word items with identity fillers."""
        items = []
        for t in traversals:
            items.append(("v", start_vertex, 0))
            items.append(t)
            start_vertex = self._dir[(t[1], t[2])]["head"]
        items.append(("v", start_vertex, 0))
        return items

    def loop_from_sketch(self, sketch):
        """Build a based loop from a sketch of vertex elements / edge letters.

        Sketch entries: ["v", vertex, elem_index] inserts that vertex-group
        element (reaching the vertex along the spanning tree), ["e", edge,
        sign] traverses the edge from its tail (reached along the tree).
        The loop is closed back to the base along the tree and normalized.
        """
        items = [("v", 0, 0)]
        cur = 0
        for entry in sketch:
            kind = entry[0]
            if kind == "v":
                _, vtx, idx = entry
                items += self._route(cur, vtx)
                cur = vtx
                items[-1] = self._vmul(items[-1], ("v", vtx, idx))
            elif kind == "e":
                _, ei, sign = entry
                tail = self._dir[(ei, sign)]["tail"]
                items += self._route(cur, tail)
                items.append(("e", ei, sign))
                cur = self._dir[(ei, sign)]["head"]
                items.append(("v", cur, 0))
            else:
                raise SpecFormatError(f"bad sketch entry {entry!r}")
        items += self._route(cur, 0)
        return GroupElement("normal-form", self._normalize(tuple(items)), self)

    def _route(self, a, b):
        """Tree traversal items from a to b (empty v-item removed at start)."""
        if a == b:
            return []
        back = [(ei, -sign) for (_, ei, sign) in reversed(self._tree_path[a])]
        fwd = [(ei, sign) for (_, ei, sign) in self._tree_path[b]]
        # cancel the common prefix of (reversed a-path) and b-path at the root
        while back and fwd and back[-1] == (fwd[0][0], -fwd[0][1]):
            back.pop()
            fwd.pop(0)
        items = []
        cur = a
        for ei, sign in back + fwd:
            items.append(("e", ei, sign))
            cur = self._dir[(ei, sign)]["head"]
            items.append(("v", cur, 0))
        return items

    def _vmul(self, item_a, item_b):
        _, vtx, a = item_a
        _, vtx2, b = item_b
        assert vtx == vtx2
        return ("v", vtx, self.gog.vertices[vtx].mul[a][b])

    # -- normalization --------------------------------------------------

    def _normalize(self, items):
        items = list(items)
        # Britton pinch removal to a fixpoint. Edge items sit at odd
        # positions; a pinch is (d, g, d-reversed) with g in the edge-group
        # image on d's head side.
        i = 1
        while i + 2 < len(items):
            d, g, d2 = items[i], items[i + 1], items[i + 2]
            if d2[1] == d[1] and d2[2] == -d[2]:
                info = self._dir[(d[1], d[2])]
                if g[2] in info["pre_head"]:
                    c = info["pre_head"][g[2]]
                    carried = ("v", info["tail"], info["emb_tail"][c])
                    merged = self._vmul(self._vmul(items[i - 1], carried), items[i + 3])
                    items[i - 1 : i + 4] = [merged]
                    i = max(1, i - 2)
                    continue
            i += 2
        # Left-to-right sweep into lowest-index coset representatives.
        for i in range(1, len(items), 2):
            d = items[i]
            info = self._dir[(d[1], d[2])]
            g_prev = items[i - 1]
            r = info["rep"][g_prev[2]]
            tbl = self.gog.vertices[info["tail"]]
            h = tbl.mul[tbl.inv[r]][g_prev[2]]  # r * h = g_prev, h in tail image
            c = info["pre_tail"][h]
            items[i - 1] = ("v", info["tail"], r)
            items[i + 1] = self._vmul(("v", info["head"], info["emb_head"][c]), items[i + 1])
        return tuple(items)

    # -- group operations -----------------------------------------------

    def op(self, a, b):
        items = list(a.data)
        other = list(b.data)
        items[-1] = self._vmul(items[-1], other[0])
        items += other[1:]
        return GroupElement("normal-form", self._normalize(tuple(items)), self)

    def inv(self, a):
        out = []
        for item in reversed(a.data):
            if item[0] == "v":
                _, vtx, idx = item
                out.append(("v", vtx, self.gog.vertices[vtx].inv[idx]))
            else:
                _, ei, sign = item
                out.append(("e", ei, -sign))
        return GroupElement("normal-form", self._normalize(tuple(out)), self)

    def key(self, g):
        return repr(g.data)

    def render(self, g):
        parts = []
        for item in g.data:
            if item[0] == "v":
                _, vtx, idx = item
                if idx != 0 or len(g.data) == 1:
                    parts.append(self.gog.vertices[vtx].labels[idx])
            else:
                _, ei, sign = item
                parts.append(f"t{ei}" if sign > 0 else f"t{ei}'")
        return "*".join(parts) or "1"

    def gen_symbols(self):
        out = []
        seen = set()
        for name, g in self.generators.items():
            if g.data not in seen:
                out.append((name, g))
                seen.add(g.data)
        for name, g in list(self.generators.items()):
            gi = self.inv(g)
            if gi.data not in seen:
                out.append((name + "'", gi))
                seen.add(gi.data)
        return out

    # -- based subgroup copies ------------------------------------------

    def based_vertex_element(self, vertex, idx):
        """The based loop (tree path) * g * (tree path back), normalized."""
        return self.loop_from_sketch([("v", vertex, idx)])

    def based_vertex_subgroup(self, vertex):
        """All based copies of the vertex group's elements."""
        tbl = self.gog.vertices[vertex]
        return [self.based_vertex_element(vertex, i) for i in range(tbl.order)]

    def based_edge_subgroup(self, edge_index):
        """Based copy of the edge group (through the tail-side vertex)."""
        e = self.gog.edges[edge_index]
        return [self.based_vertex_element(e.u, e.into_u[c]) for c in range(e.table.order)]

    def stable_letter(self, edge_index):
        """Based loop traversing the edge once (trivial for tree edges)."""
        return self.loop_from_sketch([("e", edge_index, +1)])
