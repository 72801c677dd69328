"""Integer matrix groups with exact (arbitrary-precision) arithmetic.

Matrices are nested tuples of Python ints, so products never overflow
and elements hash/compare structurally. An optional modulus turns the
same machinery into a finite congruence quotient.
"""

from __future__ import annotations

from ..errors import CapExceeded, SpecFormatError, VerificationFailure
from .element import GroupElement
from .table import FiniteGroupTable


def mat_mul(a, b, modulus=None):
    n = len(a)
    if modulus is None:
        return tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
        )
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) % modulus for j in range(n))
        for i in range(n)
    )


def mat_det(a):
    n = len(a)
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    det = 0
    for j in range(n):
        minor = tuple(row[:j] + row[j + 1 :] for row in a[1:])
        det += (-1) ** j * a[0][j] * mat_det(minor)
    return det


def mat_identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_inv(a, modulus=None):
    """Inverse via the adjugate; requires det a unit (±1 over Z)."""
    n = len(a)
    det = mat_det(a)
    if modulus is not None:
        det %= modulus
        det_inv = pow(det, -1, modulus)
    else:
        if det not in (1, -1):
            raise VerificationFailure(f"matrix with det {det} is not invertible over Z")
        det_inv = det  # 1/±1 == ±1
    adj = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = tuple(
                tuple(a[r][c] for c in range(n) if c != i) for r in range(n) if r != j
            )
            cof = (-1) ** (i + j) * (mat_det(minor) if n > 1 else 1)
            row.append(cof * det_inv % modulus if modulus is not None else cof * det_inv)
        adj.append(tuple(row))
    return tuple(adj)


def mat_reduce(a, modulus):
    return tuple(tuple(x % modulus for x in row) for row in a)


class MatrixGroup:
    """Group generated by named integer matrices (optionally mod m)."""

    backend = "matrix"

    def __init__(
        self,
        name,
        dimension,
        generators,
        modulus=None,
        special_linear=False,
        presentation=None,
        torsion_words=None,
    ):
        self.name = name
        self.dimension = dimension
        self.modulus = modulus
        self.special_linear = special_linear
        self.presentation = presentation
        self.torsion_words = torsion_words or []
        self.gen_matrices = {}
        for gname, mat in generators.items():
            m = tuple(tuple(int(x) for x in row) for row in mat)
            if len(m) != dimension or any(len(r) != dimension for r in m):
                raise SpecFormatError(f"generator {gname} is not {dimension}x{dimension}")
            if special_linear and modulus is None and mat_det(m) != 1:
                raise VerificationFailure(f"generator {gname} has det {mat_det(m)} != 1")
            if modulus is not None:
                m = mat_reduce(m, modulus)
            self.gen_matrices[gname] = m
        self.identity = GroupElement("matrix", mat_identity(dimension), self)
        self.generators = {
            gname: GroupElement("matrix", m, self) for gname, m in self.gen_matrices.items()
        }

    def op(self, a, b):
        return GroupElement("matrix", mat_mul(a.data, b.data, self.modulus), self)

    def inv(self, a):
        return GroupElement("matrix", mat_inv(a.data, self.modulus), self)

    def key(self, g):
        return repr([list(r) for r in g.data])

    def render(self, g):
        return "[" + "; ".join(" ".join(str(x) for x in row) for row in g.data) + "]"

    def gen_symbols(self):
        """Symmetric closure as (label, element) pairs; inverses labeled X'."""
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

    def reduced(self, modulus):
        """The same generators over Z/modulus."""
        return MatrixGroup(
            f"{self.name} mod {modulus}",
            self.dimension,
            {n: m for n, m in self.gen_matrices.items()},
            modulus=modulus,
            presentation=self.presentation,
        )

    def reduce_element(self, g, quotient):
        return GroupElement("matrix", mat_reduce(g.data, quotient.modulus), quotient)


def _congruence_closure(group, modulus, cap):
    gens = [mat_reduce(m, modulus) for m in group.gen_matrices.values()]
    gens += [mat_inv(m, modulus) for m in gens]
    ident = mat_identity(group.dimension)
    elems = [ident]
    index = {ident: 0}
    i = 0
    while i < len(elems):
        for g in gens:
            h = mat_mul(elems[i], g, modulus)
            if h not in index:
                if len(elems) >= cap:
                    raise CapExceeded(f"congruence closure exceeded cap {cap}", len(elems))
                index[h] = len(elems)
                elems.append(h)
        i += 1
    return elems, index


def congruence_quotient_order(group, modulus, cap=10**6):
    """|image of the generated group in GL(n, Z/m)| by closure enumeration."""
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    elems, _ = _congruence_closure(group, modulus, cap)
    return len(elems)


def congruence_quotient_table(group, modulus, cap=5000):
    """Closure of the generator images mod m as a FiniteGroupTable.

    Returns (table, index_map from matrix tuple to table index, element list).
    The cap here is tighter than for order counting because the full
    multiplication table is materialized.
    """
    elems, index = _congruence_closure(group, modulus, cap)
    mul = [[index[mat_mul(a, b, modulus)] for b in elems] for a in elems]
    return FiniteGroupTable(mul), index, elems
