"""Finite Cayley balls and coset bookkeeping on them.

A ball is the induced subgraph on all elements within a given word
distance of the identity, for a fixed symmetric generating set. Edges
run x -- x*s for each generator s; parallel edges (distinct generators
giving the same neighbor) collapse to one, keeping every label.
"""

from __future__ import annotations

import json
from collections import deque

from .errors import CapExceeded, UnknownGenerator, VerificationFailure
from .groups import GraphOfGroupsGroup, inverse, multiply

DEFAULT_CAP = 2 * 10**6


class CayleyBall:
    """Immutable once built; vertex 0 is the identity."""

    __slots__ = ("group", "radius", "generators", "elements", "index",
                 "word_length", "words", "adj", "_edge_labels")

    def __init__(self, group, radius, generators, elements, index,
                 word_length, words, adj, edge_labels):
        self.group = group
        self.radius = radius
        self.generators = generators  # list of (symbol, element), symmetric
        self.elements = elements
        self.index = index  # element data -> vertex index
        self.word_length = word_length
        self.words = words  # a shortest witness word per vertex
        self.adj = adj  # vertex -> sorted list of neighbor indices
        self._edge_labels = edge_labels  # (u, v) with u < v -> sorted labels

    @property
    def vertex_count(self):
        return len(self.elements)

    @property
    def edge_count(self):
        return len(self._edge_labels)

    def locate(self, g):
        """Vertex index of an element, or None if outside the ball."""
        return self.index.get(g.data)

    def __contains__(self, g):
        return g.data in self.index

    def edges(self):
        """Sorted (u, v, labels) triples with u < v."""
        return [(u, v, self._edge_labels[(u, v)])
                for u, v in sorted(self._edge_labels)]

    def interior(self, radius):
        """Vertex indices at word distance <= radius."""
        return [i for i, d in enumerate(self.word_length) if d <= radius]

    def layer_counts(self):
        counts = [0] * (self.radius + 1)
        for d in self.word_length:
            counts[d] += 1
        return counts

    def edge_label(self, u, v):
        """Least generator label along the edge u -> v (directed)."""
        labels = self._edge_labels.get((min(u, v), max(u, v)))
        if labels is None:
            raise VerificationFailure(f"no edge between vertices {u} and {v}")
        if u < v:
            return labels[0]
        # stored labels are for the u<v direction; search for the reverse one
        target = self.elements[v].data
        src = self.elements[u]
        best = None
        for sym, g in self.generators:
            if multiply(src, g).data == target:
                best = sym if best is None or sym < best else best
        if best is None:
            raise VerificationFailure(f"no generator maps vertex {u} to {v}")
        return best

    def to_json(self):
        return {
            "group": getattr(self.group, "name", "group"),
            "radius": self.radius,
            "generators": sorted(sym for sym, _ in self.generators),
            "vertex_count": self.vertex_count,
            "vertices": [
                {"index": i, "element": self.elements[i].key(),
                 "distance": self.word_length[i],
                 "word": list(self.words[i])}
                for i in range(self.vertex_count)
            ],
            "edges": [{"u": u, "v": v, "labels": labels}
                      for u, v, labels in self.edges()],
        }

    def to_dot(self):
        lines = ["graph ball {", "  node [shape=circle];"]
        for i in range(self.vertex_count):
            lines.append(f'  n{i} [label="{self.elements[i].key()}"];')
        for u, v, labels in self.edges():
            lines.append(f'  n{u} -- n{v} [label="{",".join(labels)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _resolve_generators(group, generators):
    symbolic = group.gen_symbols()
    if generators is None:
        pairs = list(symbolic)
    else:
        by_name = dict(symbolic)
        pairs = []
        for sym in generators:
            if sym not in by_name:
                raise UnknownGenerator(f"unknown generator {sym!r}")
            pairs.append((sym, by_name[sym]))
        # symmetric closure, recorded under primed labels
        have = {g.data for _, g in pairs}
        for sym, g in list(pairs):
            gi = inverse(g)
            if gi.data not in have:
                pairs.append((sym + "'", gi))
                have.add(gi.data)
    return pairs


def build_ball(group, radius, generators=None, cap=DEFAULT_CAP):
    """BFS out to word distance `radius` with all induced edges."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    pairs = _resolve_generators(group, generators)
    ident = group.identity
    elements = [ident]
    index = {ident.data: 0}
    word_length = [0]
    words = [()]
    queue = deque([0])
    while queue:
        i = queue.popleft()
        if word_length[i] == radius:
            continue
        x = elements[i]
        for sym, g in pairs:
            y = multiply(x, g)
            if y.data in index:
                continue
            if len(elements) >= cap:
                raise CapExceeded(
                    f"ball exceeded vertex cap {cap}", reached=len(elements))
            index[y.data] = len(elements)
            elements.append(y)
            word_length.append(word_length[i] + 1)
            words.append(words[i] + (sym,))
            queue.append(len(elements) - 1)

    adj = [set() for _ in elements]
    edge_labels = {}
    for i, x in enumerate(elements):
        for sym, g in pairs:
            j = index.get(multiply(x, g).data)
            if j is None or j == i:
                continue
            adj[i].add(j)
            u, v = (i, j) if i < j else (j, i)
            labels = edge_labels.setdefault((u, v), set())
            if i < j:
                labels.add(sym)
    # every undirected edge gets labels from its u -> v direction; an edge
    # discovered only v -> u still needs them
    for (u, v), labels in edge_labels.items():
        if not labels:
            x = elements[u]
            for sym, g in pairs:
                if index.get(multiply(x, g).data) == v:
                    labels.add(sym)
    return CayleyBall(group, radius, pairs, elements, index, word_length,
                      words, [sorted(s) for s in adj],
                      {k: sorted(v) for k, v in edge_labels.items()})


def coset_subgraph(ball, subgroup_elements, coset_rep):
    """Ball vertices in coset_rep * subgroup, plus an out-of-ball flag.

    Returns (vertex index list, complete) where complete is False when
    part of the coset falls outside the ball (partial result).
    """
    inside, complete = [], True
    for h in subgroup_elements:
        i = ball.locate(multiply(coset_rep, h))
        if i is None:
            complete = False
        else:
            inside.append(i)
    return sorted(set(inside)), complete


def subgraph_diameter(ball, vertices):
    """Diameter of the induced subgraph on `vertices` (None if disconnected)."""
    vs = set(vertices)
    best = 0
    for s in vs:
        dist = {s: 0}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in ball.adj[u]:
                if w in vs and w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if len(dist) < len(vs):
            return None
        best = max(best, max(dist.values()))
    return best


def verify_short_cycle_cosets(ball, r, candidate_subgroups):
    """Check that every cycle of length <= r stays in one left coset.

    candidate_subgroups: list of element lists, each closed under the
    operation. A cycle passes if its vertex set lies in g*H for some
    candidate H and some g (equivalently: for H fixed, all pairwise
    quotients x^-1 y land in H). Returns a report dict with the
    offending cycles.
    """
    from .cycles import enumerate_short_cycles  # local: avoids import cycle

    subs = [frozenset(h.data for h in hs) for hs in candidate_subgroups]
    cycles = enumerate_short_cycles(ball, r)
    violations = []
    for cyc in cycles:
        verts = [ball.elements[i] for i in cyc.vertices]
        base_inv = inverse(verts[0])
        quotients = {multiply(base_inv, x).data for x in verts}
        if not any(quotients <= h for h in subs):
            violations.append(cyc)
    return {
        "pass": not violations,
        "cycles_checked": len(cycles),
        "violations": violations,
    }


def torsion_length_bound(group, generators=None, max_radius=64):
    """Max word-metric diameter over vertex-group cosets.

    Left-invariance of the word metric reduces this to the diameters of
    the based vertex subgroups themselves; the ball is grown until every
    pairwise quotient inside each subgroup has a known word length.
    """
    if not isinstance(group, GraphOfGroupsGroup):
        raise VerificationFailure("torsion_length_bound needs a graph-of-groups backend")
    needed = set()
    for v in range(len(group.gog.vertices)):
        elems = group.based_vertex_subgroup(v)
        for a in elems:
            ai = inverse(a)
            for b in elems:
                needed.add(multiply(ai, b).data)
    radius = 1
    while radius <= max_radius:
        ball = build_ball(group, radius, generators)
        if all(d in ball.index for d in needed):
            return max(ball.word_length[ball.index[d]] for d in needed)
        radius *= 2
    raise CapExceeded(f"vertex-group cosets did not close within radius {max_radius}",
                      reached=max_radius)
