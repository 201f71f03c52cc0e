"""Linear algebra over the field with two elements.

Vectors over F2 are bit-ints (bit j = coordinate j); matrices are packed
into numpy uint64 words so the row operations of Gaussian elimination run
vectorized.  This backend exists because the mod-2 cohomology of the larger
projective-space triangulations is out of reach for per-entry Python loops.
"""

from __future__ import annotations

import numpy as np


def pack_vector(vec):
    acc = 0
    for j, x in enumerate(vec):
        if x % 2:
            acc |= 1 << j
    return acc


def unpack_vector(acc, ncols):
    return [(acc >> j) & 1 for j in range(ncols)]


class F2Matrix:
    """Matrix over F2 with rows packed into uint64 words."""

    def __init__(self, nrows, ncols, packed):
        self.nrows = nrows
        self.ncols = ncols
        self.words = max(1, (ncols + 63) // 64)
        self.m = packed

    @classmethod
    def from_bitint_rows(cls, rows, ncols):
        words = max(1, (ncols + 63) // 64)
        out = np.zeros((len(rows), words), dtype=np.uint64)
        nbytes = words * 8
        for i, row in enumerate(rows):
            out[i] = np.frombuffer(row.to_bytes(nbytes, "little"), dtype=np.uint64)
        return cls(len(rows), ncols, out)

    @classmethod
    def from_int_rows(cls, rows, ncols):
        return cls.from_bitint_rows([pack_vector(r) for r in rows], ncols)

    def row_bitint(self, i):
        return int.from_bytes(self.m[i].tobytes(), "little")

    def rref(self):
        """(reduced matrix, {pivot column: row}) without modifying self."""
        R = self.m.copy()
        pivots = {}
        rank = 0
        one = np.uint64(1)
        for col in range(self.ncols):
            if rank == self.nrows:
                break
            w, b = col >> 6, np.uint64(col & 63)
            colbits = (R[rank:, w] >> b) & one
            nz = np.nonzero(colbits)[0]
            if nz.size == 0:
                continue
            piv = rank + int(nz[0])
            if piv != rank:
                R[[rank, piv]] = R[[piv, rank]]
            colbits_all = (R[:, w] >> b) & one
            hit = np.nonzero(colbits_all)[0]
            hit = hit[hit != rank]
            if hit.size:
                R[hit] ^= R[rank]
            pivots[col] = rank
            rank += 1
        return R, pivots

    def rank(self):
        return len(self.rref()[1])

    def kernel_basis(self):
        """Kernel vectors as bit-ints."""
        R, pivots = self.rref()
        piv_cols = set(pivots)
        basis = []
        for col in range(self.ncols):
            if col in piv_cols:
                continue
            w, b = col >> 6, col & 63
            vec = 1 << col
            for pcol, prow in pivots.items():
                if (int(R[prow, w]) >> b) & 1:
                    vec |= 1 << pcol
            basis.append(vec)
        return basis

    def apply_bitint(self, x):
        out = 0
        for i in range(self.nrows):
            if (self.row_bitint(i) & x).bit_count() & 1:
                out |= 1 << i
        return out


class F2Subquotient:
    """Coordinates in (span of kernel vectors)/(span of image vectors)."""

    def __init__(self, kernel_vectors, image_vectors, ncols):
        self.ncols = ncols
        self.echelon = {}  # leading bit -> (vector, tag); tag None for image rows
        for v in image_vectors:
            self._insert(v, None)
        self.gen_vectors = []
        for v in kernel_vectors:
            reduced = self._insert(v, len(self.gen_vectors))
            if reduced is not None:
                self.gen_vectors.append(reduced)
        self.dim = len(self.gen_vectors)

    def _insert(self, v, tag):
        while v:
            lead = v.bit_length() - 1
            if lead not in self.echelon:
                self.echelon[lead] = (v, tag)
                return v
            v ^= self.echelon[lead][0]
        return None

    def coordinates(self, cycle_bitint):
        """Coordinate bits of a cycle; None if the vector is not in the kernel span."""
        v = cycle_bitint
        coords = 0
        while v:
            lead = v.bit_length() - 1
            stored = self.echelon.get(lead)
            if stored is None:
                return None
            vec, tag = stored
            if tag is not None:
                coords |= 1 << tag
            v ^= vec
        return coords


class F2HomologyData:
    """ker(d_out)/im(d_in) over F2, from sparse column data.

    d_out_cols: bit-int column j of the outgoing boundary (length dim_r);
    d_in_cols: bit-int columns of the incoming boundary (bits over dim_r).
    """

    def __init__(self, d_in_cols, d_out_cols, dim_r):
        self.dim_chain = dim_r
        rows = self._equation_rows(d_out_cols, dim_r)
        kernel = F2Matrix.from_bitint_rows(rows, dim_r).kernel_basis() if rows \
            else [1 << j for j in range(dim_r)]
        image = [c for c in d_in_cols if c]
        self.sub = F2Subquotient(kernel, image, dim_r)
        self.dim = self.sub.dim

    @staticmethod
    def _equation_rows(cols, ncols):
        rows = {}
        for j, colbits in enumerate(cols):
            v = colbits
            while v:
                i = (v & -v).bit_length() - 1
                rows.setdefault(i, 0)
                rows[i] |= 1 << j
                v &= v - 1
        return [rows[i] for i in sorted(rows)]

    def coordinates(self, vec_or_bitint):
        x = vec_or_bitint if isinstance(vec_or_bitint, int) else pack_vector(vec_or_bitint)
        coords = self.sub.coordinates(x)
        if coords is None:
            raise ValueError("vector is not a cycle")
        return coords

    def is_zero_class(self, vec):
        return self.coordinates(vec) == 0

    def generator_cycles(self):
        """One cycle (as a 0/1 list) per homology generator."""
        return [unpack_vector(v, self.dim_chain) for v in self.sub.gen_vectors]
