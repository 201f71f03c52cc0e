"""Coefficient rings with involution: Z, F2, and group rings Z[pi].

A group ring is given by an explicit element list, multiplication table,
identity index and orientation character w: pi -> {+-1}.  The involution is
g -> w(g) g^{-1}.  Group-ring matrices are realized over Z through the
regular representation, so every downstream computation reduces to integer
matrices.
"""

from __future__ import annotations

from .intmatrix import IntMatrix


class RingError(ValueError):
    pass


class RingSpec:
    """One of INTEGERS, FIELD_F2, or GROUP_RING(pi, w)."""

    def __init__(self, kind, elements=None, table=None, identity=None, w=None):
        if kind not in ("Z", "F2", "group"):
            raise RingError(f"unknown ring kind {kind!r}")
        self.kind = kind
        if kind == "group":
            self.elements = list(elements)
            self.table = [list(row) for row in table]
            self.identity = int(identity)
            self.w = [int(x) for x in w]
            self._validate_group()
            self.order = len(self.elements)
            self._inv = self._compute_inverses()
        else:
            self.order = 1

    # -- constructors --------------------------------------------------

    @classmethod
    def integers(cls):
        return cls("Z")

    @classmethod
    def f2(cls):
        return cls("F2")

    @classmethod
    def group_ring(cls, elements, table, identity, w=None):
        if w is None:
            w = [1] * len(elements)
        return cls("group", elements, table, identity, w)

    @classmethod
    def trivial_group(cls):
        return cls.group_ring(["e"], [[0]], 0)

    @classmethod
    def cyclic_group(cls, n, w=None):
        els = [f"t^{i}" if i else "e" for i in range(n)]
        table = [[(i + j) % n for j in range(n)] for i in range(n)]
        return cls.group_ring(els, table, 0, w)

    # -- group structure -----------------------------------------------

    def _validate_group(self):
        n = len(self.elements)
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise RingError("multiplication table has the wrong shape")
        if any(not (0 <= x < n) for row in self.table for x in row):
            raise RingError("multiplication table entry out of range")
        e = self.identity
        if not 0 <= e < n:
            raise RingError("identity index out of range")
        for i in range(n):
            if self.table[e][i] != i or self.table[i][e] != i:
                raise RingError("identity axiom fails")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if self.table[self.table[i][j]][k] != self.table[i][self.table[j][k]]:
                        raise RingError("associativity fails")
        for i in range(n):
            if e not in self.table[i]:
                raise RingError(f"element {i} has no inverse")
        if len(self.w) != n or any(x not in (1, -1) for x in self.w):
            raise RingError("w must map elements to +-1")
        for i in range(n):
            for j in range(n):
                if self.w[self.table[i][j]] != self.w[i] * self.w[j]:
                    raise RingError("w is not a homomorphism")

    def _compute_inverses(self):
        n = self.order
        return [self.table[i].index(self.identity) for i in range(n)]

    def mul(self, i, j):
        return self.table[i][j]

    def inv(self, i):
        return self._inv[i]

    def conj(self, i):
        """Index and sign of the involution: bar(g) = w(g) g^{-1}."""
        return self._inv[i], self.w[i]

    # -- ring-element arithmetic (coefficient vectors over the group) ---

    @property
    def block(self):
        """Z-rank of the ring as a module over itself."""
        return self.order if self.kind == "group" else 1

    def zero_element(self):
        return [0] * self.block

    def unit_element(self):
        v = self.zero_element()
        v[self.identity if self.kind == "group" else 0] = 1
        return v

    def elem_mul(self, a, b):
        """Product of two ring elements given as coefficient vectors."""
        if self.kind != "group":
            return [a[0] * b[0]]
        out = [0] * self.order
        for i, ai in enumerate(a):
            if ai:
                ti = self.table[i]
                for j, bj in enumerate(b):
                    if bj:
                        out[ti[j]] += ai * bj
        return out

    def elem_involution(self, a):
        if self.kind != "group":
            return list(a)
        out = [0] * self.order
        for i, ai in enumerate(a):
            if ai:
                out[self._inv[i]] += self.w[i] * ai
        return out

    def __eq__(self, other):
        if not isinstance(other, RingSpec):
            return NotImplemented
        if self.kind != other.kind:
            return False
        if self.kind != "group":
            return True
        return (self.elements == other.elements and self.table == other.table
                and self.identity == other.identity and self.w == other.w)

    def __repr__(self):
        if self.kind == "group":
            return f"RingSpec(group of order {self.order})"
        return f"RingSpec({self.kind})"

    # -- regular representation ------------------------------------------

    def right_translation_matrix(self, a):
        """Matrix of x -> x*a on the group basis, a a coefficient vector."""
        n = self.order
        m = IntMatrix(n, n)
        for g in range(n):
            for i, ai in enumerate(a):
                if ai:
                    m.data[self.table[g][i]][g] += ai
        return m

    def encode_block_matrix(self, entries, rows, cols):
        """Block-encode an A-matrix (entries[i][j] = coefficient vector)."""
        if self.kind != "group":
            return IntMatrix(rows, cols, [[entries[i][j][0] for j in range(cols)]
                                          for i in range(rows)])
        n = self.order
        out = IntMatrix(rows * n, cols * n)
        for i in range(rows):
            for j in range(cols):
                c = entries[i][j]
                if any(c):
                    for g in range(n):
                        for u, cu in enumerate(c):
                            if cu:
                                out.data[i * n + self.table[g][u]][j * n + g] += cu
        return out

    def extract_block_entry(self, M: IntMatrix, i, j):
        """A-entry c_ij of a block-encoded matrix (column at the identity)."""
        if self.kind != "group":
            return [M[i, j]]
        n = self.order
        return [M[i * n + h, j * n + self.identity] for h in range(n)]

    def validate_block_matrix(self, M: IntMatrix, rows, cols):
        """Check that a block integer matrix is A-linear (commutes with translation)."""
        if self.kind != "group":
            return True
        entries = [[self.extract_block_entry(M, i, j) for j in range(cols)]
                   for i in range(rows)]
        return self.encode_block_matrix(entries, rows, cols) == M
