"""Bounded f.g. free chain complexes over a ring with involution.

Differentials are stored as block integer matrices (via the regular
representation for group rings); d^2 = 0 is checked at construction.  The
elementary constructions live here: dual, tensor product, suspension,
algebraic mapping cone, tensor square with the signed transposition, and
the quasi-isomorphism test via acyclic cones.

Sign conventions (fixed once, used everywhere):
    d(x (x) y)   = x (x) d y + (-1)^{|y|} d x (x) y
    T(x (x) y)   = (-1)^{|x||y|} y (x) x
    dual complex d_{C^{n-*}} = (-1)^r d_C^* on (C^{n-*})_r = C^{n-r}
    cone(f)      d = [[d_D, (-1)^r f], [0, d_C]] on D_r (+) C_{r-1}
"""

from __future__ import annotations

import random

from .intmatrix import IntMatrix, homology_at
from .f2linalg import F2HomologyData
from .rings import RingSpec, RingError


class ChainError(ValueError):
    pass


class UnsupportedRingError(ChainError):
    pass


class ChainComplex:
    """A bounded complex: ranks per degree and differentials d_r: C_r -> C_{r-1}."""

    def __init__(self, ring: RingSpec, lo, hi, ranks, diffs, check=True):
        self.ring = ring
        self.lo = lo
        self.hi = hi
        self.ranks = dict(ranks)
        self.diffs = dict(diffs)
        e = ring.block
        for r in range(lo, hi + 1):
            self.ranks.setdefault(r, 0)
        for r in range(lo + 1, hi + 1):
            d = self.diffs.get(r)
            if d is None:
                d = IntMatrix(self.ranks[r - 1] * e, self.ranks[r] * e)
                self.diffs[r] = d
            if (d.rows, d.cols) != (self.ranks[r - 1] * e, self.ranks[r] * e):
                raise ChainError(f"differential at degree {r} has the wrong shape")
            if ring.kind == "group" and check:
                if not ring.validate_block_matrix(d, self.ranks[r - 1], self.ranks[r]):
                    raise ChainError(f"differential at degree {r} is not A-linear")
        if check:
            self._check_dd()

    def _check_dd(self)-> None:
        for r in range(self.lo + 2, self.hi + 1):
            prod = self.d(r - 1) * self.d(r)
            if self.ring.kind == "F2":
                prod = prod.mod(2)
            if not prod.is_zero():
                raise ChainError(f"not a complex: d_{r-1} d_{r} != 0")

    # -- accessors -------------------------------------------------------

    def rank(self, r):
        """Rank over the coefficient ring in degree r."""
        return self.ranks.get(r, 0)

    def zrank(self, r):
        return self.rank(r) * self.ring.block

    def d(self, r):
        """Differential C_r -> C_{r-1} as a block integer matrix."""
        d = self.diffs.get(r)
        if d is None:
            return IntMatrix(self.zrank(r - 1), self.zrank(r))
        return d

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def total_rank(self):
        return sum(self.zrank(r) for r in self.degrees())

    def is_zero(self):
        return all(self.rank(r) == 0 for r in self.degrees())

    def __repr__(self):
        ranks = ", ".join(f"{r}:{self.rank(r)}" for r in self.degrees())
        return f"ChainComplex({self.ring.kind}; {ranks})"

    # -- constructors ------------------------------------------------------

    @classmethod
    def sphere(cls, ring, m, rank=1):
        """The complex with a single module of the given rank in degree m."""
        return cls(ring, m, m, {m: rank}, {})

    @classmethod
    def zero(cls, ring):
        return cls(ring, 0, 0, {0: 0}, {})

    @classmethod
    def circle_model(cls, ring=None):
        """One vertex, one edge, d = [0]: the minimal model of a circle."""
        ring = ring or RingSpec.integers()
        return cls(ring, 0, 1, {0: 1, 1: 1}, {1: IntMatrix(1, 1, [[0]])})

    # -- homology ----------------------------------------------------------

    def homology(self, r):
        """Homology at degree r, as an AbelianGroupPresentation (or F2 variant)."""
        if self.ring.kind == "F2":
            d_in = self.d(r + 1).mod(2)
            d_out = self.d(r).mod(2)
            data = F2HomologyData(_bit_columns(d_in), _bit_columns(d_out), self.zrank(r))
            return F2Presentation(data)
        return homology_at(self.d(r + 1), self.d(r))

    def all_homology(self):
        return {r: self.homology(r) for r in self.degrees()}

    def is_acyclic(self):
        return all(self.homology(r).is_trivial() for r in self.degrees())


def _bit_columns(M: IntMatrix):
    cols = []
    for j in range(M.cols):
        acc = 0
        for i in range(M.rows):
            if M.data[i][j] % 2:
                acc |= 1 << i
        cols.append(acc)
    return cols


class F2Presentation:
    """Homology over F2 presented as a sum of Z/2 factors with coordinates."""

    def __init__(self, data: F2HomologyData):
        self._data = data
        self.free_rank = 0
        self.torsion = [2] * data.dim
        self.ring = "F2"

    def is_trivial(self):
        return not self.torsion

    def dim(self):
        return self._data.dim

    def coordinates(self, cycle):
        bits = self._data.coordinates(cycle)
        return [], [(bits >> i) & 1 for i in range(self._data.dim)]

    def is_zero_class(self, cycle):
        return self._data.coordinates(cycle) == 0

    def classes_equal(self, c1, c2):
        return self._data.coordinates(c1) == self._data.coordinates(c2)

    def generator_cycle(self, idx):
        return self._data.generator_cycles()[idx]

    def generator_count(self):
        return self._data.dim

    def __eq__(self, other):
        if isinstance(other, (F2Presentation,)):
            return self.torsion == other.torsion
        if hasattr(other, "free_rank"):
            return self.free_rank == other.free_rank and self.torsion == other.torsion
        return NotImplemented

    def __str__(self):
        return " + ".join("Z/2" for _ in self.torsion) if self.torsion else "0"

    def __repr__(self):
        return f"F2Presentation({self})"


class ChainMap:
    """A degree-0 chain map f: C -> D given by per-degree block matrices."""

    def __init__(self, source: ChainComplex, target: ChainComplex, mats, check=True):
        self.source = source
        self.target = target
        self.mats = dict(mats)
        for r in source.degrees():
            m = self.mats.get(r)
            if m is None:
                self.mats[r] = IntMatrix(target.zrank(r), source.zrank(r))
            elif (m.rows, m.cols) != (target.zrank(r), source.zrank(r)):
                raise ChainError(f"chain map component at degree {r} has the wrong shape")
        if check and not self.is_chain_map():
            raise ChainError("not a chain map: d f != f d")

    def mat(self, r):
        m = self.mats.get(r)
        if m is None:
            return IntMatrix(self.target.zrank(r), self.source.zrank(r))
        return m

    def is_chain_map(self):
        lo = min(self.source.lo, self.target.lo)
        hi = max(self.source.hi, self.target.hi)
        for r in range(lo + 1, hi + 1):
            lhs = self.target.d(r) * self.mat(r)
            rhs = self.mat(r - 1) * self.source.d(r)
            diff = lhs - rhs
            if self.source.ring.kind == "F2":
                diff = diff.mod(2)
            if not diff.is_zero():
                return False
        return True

    @classmethod
    def identity(cls, C):
        return cls(C, C, {r: IntMatrix.identity(C.zrank(r)) for r in C.degrees()},
                   check=False)

    @classmethod
    def scalar(cls, C, c):
        return cls(C, C, {r: IntMatrix.identity(C.zrank(r)).scale(c) for r in C.degrees()},
                   check=False)

    @classmethod
    def zero(cls, C, D):
        return cls(C, D, {}, check=False)

    def compose(self, other):
        """self o other."""
        if other.target is not self.source:
            raise ChainError("composition mismatch")
        mats = {r: self.mat(r) * other.mat(r) for r in other.source.degrees()}
        return ChainMap(other.source, self.target, mats, check=False)


class ChainHomotopy:
    """h: f ~ g, components h_r: C_r -> D_{r+1} with f - g = d h + h d."""

    def __init__(self, f: ChainMap, g: ChainMap, mats, check=True):
        self.f = f
        self.g = g
        self.source = f.source
        self.target = f.target
        self.mats = dict(mats)
        if check and not self.verifies():
            raise ChainError("not a chain homotopy: f - g != d h + h d")

    def mat(self, r):
        m = self.mats.get(r)
        if m is None:
            return IntMatrix(self.target.zrank(r + 1), self.source.zrank(r))
        return m

    def verifies(self):
        C, D = self.source, self.target
        for r in C.degrees():
            want = self.f.mat(r) - self.g.mat(r)
            got = D.d(r + 1) * self.mat(r) + self.mat(r - 1) * C.d(r)
            diff = want - got
            if C.ring.kind == "F2":
                diff = diff.mod(2)
            if not diff.is_zero():
                return False
        return True


# -- elementary constructions ----------------------------------------------


def suspension(C: ChainComplex, k=1):
    """S^k C: degree shift by k, same differentials."""
    ranks = {r + k: C.rank(r) for r in C.degrees()}
    diffs = {r + k: C.d(r) for r in range(C.lo + 1, C.hi + 1)}
    return ChainComplex(C.ring, C.lo + k, C.hi + k, ranks, diffs, check=False)


def dual(C: ChainComplex, n):
    """C^{n-*} with d = (-1)^r d_C^* (involution-transpose over group rings)."""
    lo, hi = n - C.hi, n - C.lo
    ranks = {r: C.rank(n - r) for r in range(lo, hi + 1)}
    diffs = {}
    ring = C.ring
    for r in range(lo + 1, hi + 1):
        # (C^{n-*})_r = C^{n-r} -> (C^{n-*})_{r-1} = C^{n-r+1}
        dm = C.d(n - r + 1)
        diffs[r] = _involution_transpose(ring, dm, C.rank(n - r + 1), C.rank(n - r)).scale((-1) ** r)
    return ChainComplex(ring, lo, hi, ranks, diffs, check=False)


def _involution_transpose(ring: RingSpec, M: IntMatrix, rows, cols):
    """Dual of an A-linear map: entries (f*)_ij = bar(f_ji)."""
    if ring.kind != "group":
        return M.transpose()
    entries = [[ring.elem_involution(ring.extract_block_entry(M, j, i))
                for j in range(rows)] for i in range(cols)]
    return ring.encode_block_matrix(entries, cols, rows)


def double_dual_iso(C: ChainComplex, n):
    """The canonical iso C -> (C^{n-*})^{n-*}: diag((-1)^{(n+1)r}) per degree."""
    return {r: IntMatrix.identity(C.zrank(r)).scale((-1) ** ((n + 1) * r))
            for r in C.degrees()}


class TensorBasis:
    """Ordered basis of (C (x)_A D)_n for all n: entries (p, i, q, j) with p+q = n.

    Over a group ring the middle index i runs over pairs (module index,
    group element) of the left factor's Z-basis and j over the right
    factor's module indices; the Z-basis vector is e_i (x) g f_j.
    """

    def __init__(self, C: ChainComplex, D: ChainComplex):
        ring = C.ring
        self.lo, self.hi = C.lo + D.lo, C.hi + D.hi
        self.by_degree = {}
        self.index = {}
        e = ring.block
        for n in range(self.lo, self.hi + 1):
            basis = []
            for p in range(C.lo, C.hi + 1):
                q = n - p
                if q < D.lo or q > D.hi:
                    continue
                if ring.kind == "group":
                    for i in range(C.rank(p)):
                        for g in range(e):
                            for j in range(D.rank(q)):
                                basis.append((p, i, g, j))
                else:
                    for i in range(C.rank(p)):
                        for j in range(D.rank(q)):
                            basis.append((p, i, 0, j))
            self.by_degree[n] = basis
            for pos, key in enumerate(basis):
                self.index[(n,) + key] = pos

    def dim(self, n):
        return len(self.by_degree.get(n, ()))

    def basis(self, n):
        return self.by_degree.get(n, [])

    def position(self, n, p, i, g, j):
        return self.index[(n, p, i, g, j)]


def tensor(C: ChainComplex, D: ChainComplex):
    """C (x)_A D as a chain complex over Z (or F2 for F2 inputs)."""
    if C.ring != D.ring:
        raise ChainError("ring mismatch in tensor product")
    ring = C.ring
    basis = TensorBasis(C, D)
    out_ring = RingSpec.f2() if ring.kind == "F2" else RingSpec.integers()
    ranks = {n: basis.dim(n) for n in range(basis.lo, basis.hi + 1)}
    diffs = {}
    for n in range(basis.lo + 1, basis.hi + 1):
        m = IntMatrix(basis.dim(n - 1), basis.dim(n))
        for pos, (p, i, g, j) in enumerate(basis.basis(n)):
            if ring.kind == "group":
                _tensor_group_column(ring, C, D, basis, n, pos, p, i, g, j, m)
                continue
            q = n - p
            if q > D.lo:  # x (x) d y
                dD = D.d(q)
                for row in range(D.rank(q - 1)):
                    c = dD[row, j]
                    if c:
                        m.data[basis.position(n - 1, p, i, 0, row)][pos] += c
            if p > C.lo:  # (-1)^q d x (x) y
                dC = C.d(p)
                sign = (-1) ** q
                for row in range(C.rank(p - 1)):
                    c = dC[row, i]
                    if c:
                        m.data[basis.position(n - 1, p - 1, row, 0, j)][pos] += sign * c
        diffs[n] = m
    return ChainComplex(out_ring, basis.lo, basis.hi, ranks, diffs, check=True)


def _tensor_group_column(ring, C, D, basis, n, pos, p, i, g, j, m):
    """Differential column for a group-ring tensor basis vector e_i (x) g f_j."""
    q = n - p
    # x (x) g d_D(f_j): expand g * c_{l j}
    if q > D.lo:
        dD = D.d(q)
        for l in range(D.rank(q - 1)):
            c = ring.extract_block_entry(dD, l, j)
            if any(c):
                for u, cu in enumerate(c):
                    if cu:
                        h = ring.mul(g, u)
                        m.data[basis.position(n - 1, p, i, h, l)][pos] += cu
    # (-1)^q d_C(e_i) (x) g f_j with a e_k (x) y = e_k (x) bar(a) y
    if p > C.lo:
        dC = C.d(p)
        sign = (-1) ** q
        for k in range(C.rank(p - 1)):
            c = ring.extract_block_entry(dC, k, i)
            if any(c):
                cbar = ring.elem_involution(c)
                for u, cu in enumerate(cbar):
                    if cu:
                        h = ring.mul(u, g)
                        m.data[basis.position(n - 1, p - 1, k, h, j)][pos] += sign * cu


class TensorSquare:
    """C (x)_A C with the signed transposition T, as explicit integer matrices."""

    def __init__(self, C: ChainComplex):
        self.source = C
        self.basis = TensorBasis(C, C)
        self.complex = tensor(C, C)
        self.ring = self.complex.ring
        self._t = {}

    def dim(self, n):
        return self.basis.dim(n)

    def involution(self, n):
        """The matrix of T on degree n."""
        if n in self._t:
            return self._t[n]
        ring = self.source.ring
        dim = self.dim(n)
        t = IntMatrix(dim, dim)
        for pos, (p, i, g, j) in enumerate(self.basis.basis(n)):
            q = n - p
            sign = (-1) ** (p * q)
            if ring.kind == "group":
                gi, wg = ring.conj(g)
                # T(e_i (x) g e_j) = (-1)^{pq} g e_j (x) e_i = (-1)^{pq} w(g) e_j (x) g^{-1} e_i
                t.data[self.basis.position(n, q, j, gi, i)][pos] += sign * wg
            else:
                t.data[self.basis.position(n, q, j, 0, i)][pos] += sign
        self._t[n] = t
        return t

    def bidegrees(self, n):
        """First-factor degree p of each basis vector of degree n."""
        return [p for (p, i, g, j) in self.basis.basis(n)]

    def zero_chain(self, n):
        return [0] * self.dim(n)


def tensor_square_with_involution(C: ChainComplex):
    ts = TensorSquare(C)
    # T^2 = 1 and T d = d T, verified on construction
    for n in ts.complex.degrees():
        t = ts.involution(n)
        if not (t * t - IntMatrix.identity(ts.dim(n))).is_zero():
            raise ChainError("involution does not square to the identity")
    for n in range(ts.complex.lo + 1, ts.complex.hi + 1):
        lhs = ts.involution(n - 1) * ts.complex.d(n)
        rhs = ts.complex.d(n) * ts.involution(n)
        if not (lhs - rhs).is_zero():
            raise ChainError("involution is not a chain map")
    return ts


def cone(f: ChainMap):
    """Algebraic mapping cone C(f)_r = D_r (+) C_{r-1}, with the maps g, h.

    Returns (cone_complex, g, h) where g: D -> C(f) and h: C(f) -> SC are
    the inclusion and projection of the short exact sequence.
    """
    C, D = f.source, f.target
    if not f.is_chain_map():
        raise ChainError("cone of a non chain map")
    lo = min(D.lo, C.lo + 1)
    hi = max(D.hi, C.hi + 1)
    ranks = {r: D.zrank(r) + C.zrank(r - 1) for r in range(lo, hi + 1)}
    ring = RingSpec.f2() if C.ring.kind == "F2" else RingSpec.integers()
    if C.ring.kind == "group":
        ring = C.ring
    diffs = {}
    for r in range(lo + 1, hi + 1):
        dD, dC = D.d(r), C.d(r - 1)
        fr = f.mat(r - 1)
        rows = D.zrank(r - 1) + C.zrank(r - 2)
        cols = D.zrank(r) + C.zrank(r - 1)
        m = IntMatrix(rows, cols)
        for i in range(dD.rows):
            for j in range(dD.cols):
                if dD[i, j]:
                    m.data[i][j] = dD[i, j]
        sign = (-1) ** r
        for i in range(fr.rows):
            for j in range(fr.cols):
                if fr[i, j]:
                    m.data[i][dD.cols + j] = sign * fr[i, j]
        for i in range(dC.rows):
            for j in range(dC.cols):
                if dC[i, j]:
                    m.data[dD.rows + i][dD.cols + j] = dC[i, j]
        diffs[r] = m
    ranks_mod = {r: ranks[r] // ring.block for r in ranks}
    cn = ChainComplex(ring, lo, hi, ranks_mod, diffs, check=True)
    g = ChainMap(D, cn, {r: _inclusion_matrix(cn.zrank(r), D.zrank(r), 0)
                         for r in D.degrees()}, check=False)
    sc = suspension(C)
    h = ChainMap(cn, sc, {r: _projection_matrix(cn.zrank(r), C.zrank(r - 1), D.zrank(r))
                          for r in cn.degrees()}, check=False)
    return cn, g, h


def _inclusion_matrix(rows, cols, offset):
    m = IntMatrix(rows, cols)
    for j in range(cols):
        m.data[offset + j][j] = 1
    return m


def _projection_matrix(cols, rows, offset):
    m = IntMatrix(rows, cols)
    for i in range(rows):
        m.data[i][offset + i] = 1
    return m


def is_quasi_isomorphism(f: ChainMap):
    """True iff f induces isomorphisms on all homology (acyclic cone test).

    Only supported over Z and F2; over a group ring the chain-equivalence
    question is stronger than a homology check and is not implemented.
    """
    if f.source.ring.kind == "group":
        raise UnsupportedRingError(
            "chain equivalence over a group ring is not decidable by homology alone")
    cn, _, _ = cone(f)
    return cn.is_acyclic()


def random_complex(rng: random.Random, max_rank=3, max_degree=3, bound=2):
    """A seeded random complex with d^2 = 0, ranks <= max_rank, entries in [-bound, bound]."""
    from .intmatrix import SNF
    ranks = [rng.randint(0, max_rank) for _ in range(max_degree + 1)]
    diffs = {}
    prev_kernel = None  # kernel basis of d_r constrains d_{r+1}
    for r in range(1, max_degree + 1):
        rows, cols = ranks[r - 1], ranks[r]
        for _ in range(60):
            if prev_kernel is None:
                cand = IntMatrix(rows, cols,
                                 [[rng.randint(-bound, bound) if rng.random() < 0.7 else 0
                                   for _ in range(cols)] for _ in range(rows)])
            else:
                k = len(prev_kernel)
                K = IntMatrix.from_columns(prev_kernel, rows=rows) if k else IntMatrix(rows, 0)
                A = IntMatrix(k, cols, [[rng.randint(-1, 1) for _ in range(cols)]
                                        for _ in range(k)])
                cand = K * A
            if all(abs(x) <= bound for row in cand.data for x in row):
                break
        else:
            cand = IntMatrix(rows, cols)
        diffs[r] = cand
        prev_kernel = SNF(cand).kernel_basis()
    return ChainComplex(RingSpec.integers(), 0, max_degree,
                        {r: ranks[r] for r in range(max_degree + 1)}, diffs)
