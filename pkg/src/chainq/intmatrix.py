"""Exact integer matrix algebra: Smith normal form, kernels, linear solving.

All arithmetic uses Python's arbitrary-precision integers; there is no
floating point anywhere in this module.  The Smith normal form is the
classical row/column reduction with pivot selection by minimal absolute
value, so the output is deterministic for a fixed input.
"""

from __future__ import annotations

from math import gcd


class IntMatrix:
    """Dense integer matrix, row-major."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows, cols, data=None):
        self.rows = rows
        self.cols = cols
        if data is None:
            self.data = [[0] * cols for _ in range(rows)]
        else:
            if len(data) != rows or any(len(r) != cols for r in data):
                raise ValueError("shape mismatch")
            self.data = [[int(x) for x in row] for row in data]

    @classmethod
    def identity(cls, n):
        m = cls(n, n)
        for i in range(n):
            m.data[i][i] = 1
        return m

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols)

    @classmethod
    def from_rows(cls, rows_list):
        rows = len(rows_list)
        cols = len(rows_list[0]) if rows else 0
        return cls(rows, cols, rows_list)

    @classmethod
    def column(cls, entries):
        return cls(len(entries), 1, [[int(x)] for x in entries])

    def copy(self):
        return IntMatrix(self.rows, self.cols, self.data)

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self.data == other.data

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(r) for r in self.data)))

    def __getitem__(self, key):
        i, j = key
        return self.data[i][j]

    def __setitem__(self, key, value):
        i, j = key
        self.data[i][j] = int(value)

    def __mul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError("dimension mismatch in product")
            prod = IntMatrix(self.rows, other.cols)
            bdata = other.data
            for i, arow in enumerate(self.data):
                out = prod.data[i]
                for k, a in enumerate(arow):
                    if a:
                        for j, b in enumerate(bdata[k]):
                            if b:
                                out[j] += a * b
            return prod
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        c = int(c)
        return IntMatrix(self.rows, self.cols, [[c * x for x in row] for row in self.data])

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch in sum")
        return IntMatrix(self.rows, self.cols,
                         [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)])

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def transpose(self):
        return IntMatrix(self.cols, self.rows, [list(c) for c in zip(*self.data)]) \
            if self.rows and self.cols else IntMatrix(self.cols, self.rows)

    def is_zero(self):
        return all(x == 0 for row in self.data for x in row)

    def apply(self, vec):
        """Matrix-vector product on a plain list of ints."""
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch in apply")
        return [sum(a * b for a, b in zip(row, vec) if a) for row in self.data]

    def column_list(self, j):
        return [self.data[i][j] for i in range(self.rows)]

    def columns(self):
        return [self.column_list(j) for j in range(self.cols)]

    @classmethod
    def from_columns(cls, cols_list, rows=None):
        if not cols_list:
            return cls(rows or 0, 0)
        rows = len(cols_list[0])
        return cls(rows, len(cols_list), [list(r) for r in zip(*cols_list)])

    def hstack(self, other):
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        return IntMatrix(self.rows, self.cols + other.cols,
                         [r1 + r2 for r1, r2 in zip(self.data, other.data)])

    def mod(self, p):
        return IntMatrix(self.rows, self.cols, [[x % p for x in row] for row in self.data])

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols})"

    def pretty(self):
        return "\n".join(" ".join(str(x) for x in row) for row in self.data)


def _min_pivot(a, t):
    """Position of the minimal-|entry| nonzero pivot in the trailing block, lex tie-break."""
    best = None
    best_val = None
    for i in range(t, len(a)):
        row = a[i]
        for j in range(t, len(row)):
            v = row[j]
            if v:
                av = abs(v)
                if best_val is None or av < best_val:
                    best, best_val = (i, j), av
                    if av == 1:
                        return best
    return best


def smith_normal_form(M: IntMatrix):
    """Return (U, D, V) with U*M*V = D diagonal, d_1 | d_2 | ..., U, V unimodular.

    Deterministic: pivots are chosen by minimal absolute value with
    lexicographic tie-break, diagonal entries are normalized nonnegative.
    """
    rows, cols = M.rows, M.cols
    a = [list(r) for r in M.data]
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def swap_rows(i1, i2):
        if i1 != i2:
            a[i1], a[i2] = a[i2], a[i1]
            u[i1], u[i2] = u[i2], u[i1]

    def swap_cols(j1, j2):
        if j1 != j2:
            for row in a:
                row[j1], row[j2] = row[j2], row[j1]
            for row in v:
                row[j1], row[j2] = row[j2], row[j1]

    def addmul_row(dst, src, c):
        # row_dst += c * row_src
        ad, asrc = a[dst], a[src]
        for j in range(cols):
            if asrc[j]:
                ad[j] += c * asrc[j]
        ud, usrc = u[dst], u[src]
        for j in range(rows):
            if usrc[j]:
                ud[j] += c * usrc[j]

    def addmul_col(dst, src, c):
        for row in a:
            if row[src]:
                row[dst] += c * row[src]
        for row in v:
            if row[src]:
                row[dst] += c * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        piv = _min_pivot(a, t)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        dirty = True
        while dirty:
            dirty = False
            # clear column t
            for i in range(rows):
                if i != t and a[i][t]:
                    q = a[i][t] // a[t][t]
                    addmul_row(i, t, -q)
                    if a[i][t]:
                        # remainder smaller than pivot: promote it
                        swap_rows(t, i)
                        dirty = True
            # clear row t
            for j in range(cols):
                if j != t and a[t][j]:
                    q = a[t][j] // a[t][t]
                    addmul_col(j, t, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    # enforce the divisibility chain d_i | d_{i+1} on the diagonal
    rank = t
    changed = True
    while changed:
        changed = False
        for i in range(rank - 1):
            di, dj = a[i][i], a[i + 1][i + 1]
            if dj % di != 0:
                # fold column i+1 into column i and re-clean the 2x2 block
                addmul_col(i, i + 1, 1)
                g, x, y = _xgcd(a[i][i], a[i + 1][i])
                # row ops making (i,i) = gcd
                _combine_rows(a, u, i, i + 1, x, y, a[i + 1][i] // g, a[i][i] // g)
                # clear the off-diagonal remnants
                if a[i + 1][i]:
                    q = a[i + 1][i] // a[i][i]
                    addmul_row(i + 1, i, -q)
                if a[i][i + 1]:
                    q = a[i][i + 1] // a[i][i]
                    addmul_col(i + 1, i, -q)
                if a[i][i] < 0:
                    negate_row(i)
                if a[i + 1][i + 1] < 0:
                    negate_row(i + 1)
                changed = True

    U = IntMatrix(rows, rows, u)
    D = IntMatrix(rows, cols, a)
    V = IntMatrix(cols, cols, v)
    return U, D, V


def _xgcd(aa, bb):
    """g, x, y with x*aa + y*bb = g = gcd(aa, bb)."""
    old_r, r = aa, bb
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def _combine_rows(a, u, i, j, x, y, bg, ag):
    """Replace (row_i, row_j) by (x*row_i + y*row_j, -bg*row_i + ag*row_j); det = 1."""
    for mat in (a, u):
        ri, rj = mat[i], mat[j]
        mat[i] = [x * p + y * q for p, q in zip(ri, rj)]
        mat[j] = [-bg * p + ag * q for p, q in zip(ri, rj)]


class SNF:
    """Cached Smith normal form of a matrix, with kernel/solve helpers."""

    def __init__(self, M: IntMatrix):
        self.M = M
        self.U, self.D, self.V = smith_normal_form(M)
        self.diag = [self.D[t, t] for t in range(min(M.rows, M.cols))]
        self.rank = sum(1 for d in self.diag if d)
        self._Vcols = self.V.columns()

    def kernel_basis(self):
        """Columns spanning ker(M) over Z (a lattice basis)."""
        out = []
        for j in range(self.M.cols):
            if j >= len(self.diag) or self.diag[j] == 0:
                out.append(self._Vcols[j])
        return out

    def solve(self, b):
        """A particular integer solution of M x = b, or None.

        Deterministic: the solution has zero components in the SNF kernel
        coordinates.
        """
        if len(b) != self.M.rows:
            raise ValueError("dimension mismatch in solve")
        ub = self.U.apply(list(b))
        y = [0] * self.M.cols
        for t in range(self.M.rows):
            d = self.diag[t] if t < len(self.diag) else 0
            if d:
                if ub[t] % d != 0:
                    return None
                if t < self.M.cols:
                    y[t] = ub[t] // d
            elif ub[t] != 0:
                return None
        return self.V.apply(y)


def solve_linear(M: IntMatrix, b):
    """Integer solution of M x = b with zero kernel components, or None."""
    return SNF(M).solve(b)


def kernel_basis(M: IntMatrix):
    return SNF(M).kernel_basis()


class AbelianGroupPresentation:
    """A finitely generated abelian group in Smith normal form.

    free_rank copies of Z plus cyclic factors Z/d_1 + ... + Z/d_t with
    d_1 | d_2 | ... , every d_i > 1.  When produced by ``homology_at`` the
    presentation also carries a coordinate map sending cycle vectors to
    Z^free_rank (+) sum Z/d_i, vanishing exactly on boundaries.
    """

    def __init__(self, free_rank, torsion, ring="Z", _coord_data=None):
        self.free_rank = int(free_rank)
        self.torsion = [int(d) for d in torsion]
        for d1, d2 in zip(self.torsion, self.torsion[1:]):
            if d2 % d1 != 0:
                raise ValueError("torsion coefficients must form a divisibility chain")
        if any(d <= 1 for d in self.torsion):
            raise ValueError("torsion coefficients must exceed 1")
        self.ring = ring
        self._coord = _coord_data  # (K, Uinv_cols, free_pos, tors_pos, UX)

    # -- structure ---------------------------------------------------------

    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    def order(self):
        """Group order (None if infinite)."""
        if self.free_rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def __eq__(self, other):
        if not isinstance(other, AbelianGroupPresentation):
            return NotImplemented
        return (self.free_rank, self.torsion) == (other.free_rank, other.torsion)

    def __hash__(self):
        return hash((self.free_rank, tuple(self.torsion)))

    def __repr__(self):
        return f"AbelianGroupPresentation({self})"

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    # -- coordinates -------------------------------------------------------

    def coordinates(self, cycle):
        """Image of a cycle vector in Z^free (+) sum Z/d_i.

        Returns (free_coords, torsion_coords); torsion coordinates are
        reduced into [0, d_i).  Raises ValueError when the vector is not a
        cycle of the underlying complex.
        """
        if self._coord is None:
            raise ValueError("presentation carries no coordinate map")
        ksnf, free_pos, tors_pos = self._coord
        y = ksnf.solve(list(cycle))
        if y is None:
            raise ValueError("vector is not a cycle")
        # y = coefficients in the kernel basis; transform by UX
        ux = self._ux
        coords = ux.apply(y)
        free = [coords[p] for p in free_pos]
        tors = [coords[p] % d for p, d in zip(tors_pos, self.torsion)]
        return free, tors

    def is_zero_class(self, cycle):
        free, tors = self.coordinates(cycle)
        return all(x == 0 for x in free) and all(x == 0 for x in tors)

    def classes_equal(self, c1, c2):
        return self.is_zero_class([a - b for a, b in zip(c1, c2)])

    def generator_cycle(self, idx):
        """A cycle vector mapping to the idx-th standard generator.

        Generators are ordered: free generators first, then torsion
        generators in ascending d_i order.
        """
        if self._coord is None:
            raise ValueError("presentation carries no coordinate map")
        ksnf, free_pos, tors_pos = self._coord
        pos = list(free_pos) + list(tors_pos)
        if not 0 <= idx < len(pos):
            raise IndexError("generator index out of range")
        k = self._ux.rows
        e = [0] * k
        e[pos[idx]] = 1
        y = self._ux_inv.apply(e)
        K = ksnf.M  # columns = the chosen kernel basis of the chain complex
        out = [0] * K.rows
        for coef, col in zip(y, K.columns()):
            if coef:
                for i, ci in enumerate(col):
                    out[i] += coef * ci
        return out

    def generator_count(self):
        return self.free_rank + len(self.torsion)


def homology_at(d_in: IntMatrix, d_out: IntMatrix):
    """ker(d_out)/im(d_in) as an AbelianGroupPresentation with coordinates.

    d_in : C_{r+1} -> C_r, d_out : C_r -> C_{r-1}; requires d_out*d_in = 0.
    """
    if d_in.rows != d_out.cols:
        raise ValueError("dimension mismatch: d_in and d_out do not compose")
    if not (d_out * d_in).is_zero():
        raise ValueError("not a complex: d_out * d_in != 0")

    ksnf = SNF(d_out)
    kb = ksnf.kernel_basis()
    k = len(kb)
    K = IntMatrix.from_columns(kb, rows=d_out.cols)
    # express the image of d_in in kernel coordinates
    Ks = SNF(K) if k else None
    img_cols = []
    for j in range(d_in.cols):
        col = d_in.column_list(j)
        if all(x == 0 for x in col):
            img_cols.append([0] * k)
            continue
        y = Ks.solve(col) if Ks else None
        if y is None:
            raise ValueError("image of d_in does not lie in the kernel of d_out")
        img_cols.append(y)
    X = IntMatrix.from_columns(img_cols, rows=k) if img_cols else IntMatrix(k, 0)
    xs = SNF(X)
    diag = xs.diag
    tors, tors_pos, free_pos = [], [], []
    for t in range(k):
        d = diag[t] if t < len(diag) else 0
        if d == 0:
            free_pos.append(t)
        elif d > 1:
            tors.append(d)
            tors_pos.append(t)
    pres = AbelianGroupPresentation(len(free_pos), tors, ring="Z",
                                    _coord_data=(Ks, free_pos, tors_pos))
    pres._ux = xs.U
    pres._ux_inv = _unimodular_inverse(xs.U)
    if Ks is None:
        # zero kernel: coordinate map on the empty basis
        pres._coord = (SNF(IntMatrix(d_out.cols, 0)), free_pos, tors_pos)
    return pres


def _unimodular_inverse(U: IntMatrix):
    """Exact inverse of a unimodular integer matrix."""
    n = U.rows
    aug = [list(U.data[i]) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    # fraction-free Gauss-Jordan works since det = +-1
    for t in range(n):
        piv = None
        for i in range(t, n):
            if abs(aug[i][t]) == 1:
                piv = i
                break
        if piv is None:
            for i in range(t, n):
                if aug[i][t]:
                    piv = i
                    break
            # make the pivot +-1 by gcd row combinations
            for i in range(piv + 1, n):
                while aug[i][t]:
                    q = aug[piv][t] // aug[i][t]
                    aug[piv] = [p - q * r for p, r in zip(aug[piv], aug[i])]
                    aug[piv], aug[i] = aug[i], aug[piv]
            if abs(aug[piv][t]) != 1:
                raise ValueError("matrix is not unimodular")
        aug[t], aug[piv] = aug[piv], aug[t]
        if aug[t][t] < 0:
            aug[t] = [-x for x in aug[t]]
        for i in range(n):
            if i != t and aug[i][t]:
                c = aug[i][t]
                aug[i] = [p - c * r for p, r in zip(aug[i], aug[t])]
    return IntMatrix(n, n, [row[n:] for row in aug])
