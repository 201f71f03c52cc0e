"""Finite ordered simplicial complexes and the chain-level symmetric
construction.

The diagonal approximation phi_0 is Alexander-Whitney (with the sign twist
forced by the tensor convention of :mod:`chainq.chains`); the higher
components phi_s for s >= 1 are cup-s chain homotopies solved once per
standard simplex by exact integer linear algebra and transported to
arbitrary complexes along vertex maps.  Any two natural choices are
equivariantly chain homotopic, so cup products, Steenrod squares and all
Q-group classes computed from the structure are independent of the choice.

The defining relation (s >= 0, phi_{-1} = 0):

    d phi_s + (-1)^{s-1} phi_s d + (-1)^{s-1} (phi_{s-1} + (-1)^s T phi_{s-1}) = 0

so phi_0 is a chain map and phi_1 : T phi_0 ~ phi_0.
"""

from __future__ import annotations

from itertools import combinations, permutations

from .intmatrix import IntMatrix, SNF, homology_at, solve_linear
from .f2linalg import F2HomologyData, F2Matrix, pack_vector
from .rings import RingSpec
from .chains import (ChainComplex, ChainError, ChainMap, TensorSquare,
                     tensor_square_with_involution, dual, is_quasi_isomorphism)
from .qgroups import SymmetricClass


class SimplicialError(ValueError):
    pass


class SimplicialComplex:
    """Vertices with a fixed total order, facets, and all derived faces."""

    def __init__(self, vertices, facets):
        self.vertices = list(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise SimplicialError("duplicate vertex labels")
        idx = {v: i for i, v in enumerate(self.vertices)}
        norm = []
        for f in facets:
            t = tuple(sorted(idx[v] if v in idx else v for v in f))
            if len(set(t)) != len(t):
                raise SimplicialError(f"facet with repeated vertices: {f}")
            if any(not (0 <= v < len(self.vertices)) for v in t):
                raise SimplicialError(f"facet vertex out of range: {f}")
            norm.append(t)
        if len(set(norm)) != len(norm):
            raise SimplicialError("duplicate facets")
        self.facets = norm
        faces = set()
        for f in norm:
            for k in range(1, len(f) + 1):
                faces.update(combinations(f, k))
        self.simplices = {}
        for face in faces:
            self.simplices.setdefault(len(face) - 1, []).append(face)
        for d in self.simplices:
            self.simplices[d].sort()
        self.dim = max(self.simplices) if self.simplices else -1
        self.index = {}
        for d, simps in self.simplices.items():
            for i, s in enumerate(simps):
                self.index[s] = (d, i)
        self._faces_signed = {}
        self._cohomology_f2 = {}
        self._z_cochain = {}

    # -- counting -----------------------------------------------------------

    def n_simplices(self, d):
        return len(self.simplices.get(d, ()))

    def f_vector(self):
        return [self.n_simplices(d) for d in range(self.dim + 1)]

    def euler_characteristic(self):
        return sum((-1) ** d * self.n_simplices(d) for d in range(self.dim + 1))

    # -- boundary structure --------------------------------------------------

    def faces_signed(self, d):
        """Per d-simplex: list of ((d-1)-face index, sign) dropping vertex i."""
        if d in self._faces_signed:
            return self._faces_signed[d]
        out = []
        for s in self.simplices.get(d, ()):
            row = []
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                row.append((self.index[face][1], (-1) ** i))
            out.append(row)
        self._faces_signed[d] = out
        return out

    def boundary_matrix(self, d):
        """The signed boundary C_d -> C_{d-1} as an IntMatrix."""
        rows, cols = self.n_simplices(d - 1), self.n_simplices(d)
        m = IntMatrix(rows, cols)
        for j, faces in enumerate(self.faces_signed(d)):
            for idx, sign in faces:
                m.data[idx][j] += sign
        return m

    def chain_complex(self, ring=None):
        ring = ring or RingSpec.integers()
        if ring.kind == "group":
            raise SimplicialError("simplicial chains are taken over Z or F2")
        diffs = {d: self.boundary_matrix(d) for d in range(1, self.dim + 1)}
        ranks = {d: self.n_simplices(d) for d in range(self.dim + 1)}
        return ChainComplex(ring, 0, max(self.dim, 0), ranks, diffs)

    # -- F2 (co)homology ------------------------------------------------------

    def _boundary_cols_f2(self, d):
        """Columns of the mod-2 boundary matrix as bit-ints."""
        cols = []
        for faces in self.faces_signed(d):
            acc = 0
            for idx, _sign in faces:
                acc ^= 1 << idx
            cols.append(acc)
        return cols

    def _coboundary_cols_f2(self, d):
        """Columns of delta_d : C^d -> C^{d+1} (= rows of the (d+1)-boundary)."""
        rows = {}
        for j, faces in enumerate(self.faces_signed(d + 1)):
            for idx, _sign in faces:
                rows[idx] = rows.get(idx, 0) ^ (1 << j)
        return [rows.get(i, 0) for i in range(self.n_simplices(d))]

    def cohomology_f2(self, r):
        """F2HomologyData for H^r(K; F2): basis cocycles and class coordinates."""
        if r not in self._cohomology_f2:
            d_out = self._coboundary_cols_f2(r) if r < self.dim else \
                [0] * self.n_simplices(r)
            d_in = self._coboundary_cols_f2(r - 1) if r >= 1 else []
            self._cohomology_f2[r] = F2HomologyData(d_in, d_out, self.n_simplices(r))
        return self._cohomology_f2[r]

    def betti_f2(self, r):
        if r < 0 or r > self.dim:
            return 0
        return self.cohomology_f2(r).dim

    def homology(self, r, ring=None):
        """Homology of the chain complex (integral by default)."""
        return self.chain_complex(ring).homology(r)

    def cohomology_z(self, r):
        """Integral cohomology at r (with cocycle coordinates), via SNF."""
        if r not in self._z_cochain:
            delta_r = self.boundary_matrix(r + 1).transpose() if r < self.dim \
                else IntMatrix(0, self.n_simplices(r))
            delta_rm1 = self.boundary_matrix(r).transpose() if r >= 1 \
                else IntMatrix(self.n_simplices(0), 0)
            self._z_cochain[r] = homology_at(delta_rm1, delta_r)
        return self._z_cochain[r]

    def semicharacteristic(self, m=None):
        """chi_half = sum of F2 Betti numbers below the middle, mod 2 (m odd)."""
        m = self.dim if m is None else m
        if m % 2 == 0:
            raise SimplicialError("the semicharacteristic needs odd dimension")
        return sum(self.betti_f2(i) for i in range(0, (m - 1) // 2 + 1)) % 2

    # -- fundamental cycles ---------------------------------------------------

    def fundamental_cycle_f2(self):
        """Sum of all top simplices; raises if it is not a mod-2 cycle."""
        vec = [1] * self.n_simplices(self.dim)
        cols = self._boundary_cols_f2(self.dim)
        acc = 0
        for j, c in enumerate(cols):
            acc ^= c
        if acc:
            raise SimplicialError("top simplices do not form a mod-2 cycle")
        return vec

    def orientation_cycle(self):
        """A coherent orientation: the +-1 kernel vector of the top boundary."""
        d = self.boundary_matrix(self.dim)
        basis = SNF(d).kernel_basis()
        for vec in basis:
            if all(abs(x) == 1 for x in vec):
                return vec
            neg = [-x for x in vec]
            if all(abs(x) == 1 for x in neg):
                return neg
        raise SimplicialError("no coherent orientation (complex not an oriented "
                              "closed pseudo-manifold)")

    def check_cycle(self, vec, ring=None):
        ring = ring or RingSpec.integers()
        b = self.boundary_matrix(self.dim).apply(list(vec))
        if ring.kind == "F2":
            return all(x % 2 == 0 for x in b)
        return all(x == 0 for x in b)


# -- the standard cup-i structure --------------------------------------------

_CUPI_CACHE = {}


def full_simplex(n):
    return SimplicialComplex(list(range(n + 1)), [tuple(range(n + 1))])


def _standard_ts(n):
    key = ("ts", n)
    if key not in _CUPI_CACHE:
        _CUPI_CACHE[key] = tensor_square_with_involution(
            full_simplex(n).chain_complex(RingSpec.integers()))
    return _CUPI_CACHE[key]


def _aw_chain(n):
    """phi_0 on the top simplex of Delta^n: front (x) back with the sign twist."""
    terms = {}
    top = tuple(range(n + 1))
    for p in range(n + 1):
        front, back = top[:p + 1], top[p:]
        terms[(front, back)] = (-1) ** (p * (n - p))
    return terms


def _chain_to_vector(ts: TensorSquare, K: SimplicialComplex, terms, deg):
    vec = [0] * ts.dim(deg)
    for (a, b), c in terms.items():
        p, ia = K.index[a]
        q, ib = K.index[b]
        if p + q != deg:
            raise SimplicialError("term of wrong degree")
        vec[ts.basis.position(deg, p, ia, 0, ib)] += c
    return vec


def _vector_to_chain(ts: TensorSquare, K: SimplicialComplex, vec, deg):
    terms = {}
    for pos, c in enumerate(vec):
        if c:
            p, ia, _g, ib = ts.basis.basis(deg)[pos]
            q = deg - p
            terms[(K.simplices[p][ia], K.simplices[q][ib])] = c
    return terms


def standard_cup_chain(n, s):
    """The cup-s chain phi_s(iota_n) on the standard n-simplex.

    Returned as a dict (face, face) -> coefficient, faces being tuples of
    vertex positions 0..n.  Computed once and cached; deterministic.
    """
    if s < 0:
        raise SimplicialError("negative cup index")
    key = (n, s)
    if key in _CUPI_CACHE:
        return _CUPI_CACHE[key]
    if s == 0:
        out = _aw_chain(n)
        _CUPI_CACHE[key] = out
        return out
    if n + s > 2 * n:
        # (C (x) C)_{n+s} of Delta^n vanishes above degree 2n
        _CUPI_CACHE[key] = {}
        return {}
    K = full_simplex(n)
    ts = _standard_ts(n)
    # rhs = -(-1)^{s-1} [ phi_s(d iota) + (1 + (-1)^s T) phi_{s-1}(iota) ]
    deg = n + s
    rhs = [0] * ts.dim(deg - 1)
    top = tuple(range(n + 1))
    for i in range(n + 1):
        face = top[:i] + top[i + 1:]
        sub = transport_cup_chain(n - 1, s, face)
        for (a, b), c in sub.items():
            p, ia = K.index[a]
            q, ib = K.index[b]
            rhs[ts.basis.position(deg - 1, p, ia, 0, ib)] += (-1) ** i * c
    prev = _chain_to_vector(ts, K, standard_cup_chain(n, s - 1), deg - 1)
    tmat = ts.involution(deg - 1)
    tprev = tmat.apply(prev)
    tsign = (-1) ** s
    for t in range(len(rhs)):
        rhs[t] += prev[t] + tsign * tprev[t]
    sign = -((-1) ** (s - 1))
    rhs = [sign * x for x in rhs]
    dmat = ts.complex.d(deg)
    if s == n:
        # top component: the closure relation at index s+1 (with phi_{s+1} = 0)
        # additionally demands (1 + (-1)^{s+1} T) phi_s(iota) = 0
        t_top = ts.involution(deg)
        extra = IntMatrix.identity(ts.dim(deg)) + t_top.scale((-1) ** (s + 1))
        stacked = IntMatrix(dmat.rows + extra.rows, dmat.cols,
                            dmat.data + extra.data)
        sol = solve_linear(stacked, rhs + [0] * extra.rows)
    else:
        sol = solve_linear(dmat, rhs)
    if sol is None:
        raise SimplicialError(f"cup-{s} chain homotopy has no solution at n={n}")
    out = _vector_to_chain(ts, K, sol, deg)
    _CUPI_CACHE[key] = out
    return out


def transport_cup_chain(n, s, simplex):
    """phi_s on an ordered simplex, as a dict over its (sub)face pairs."""
    std = standard_cup_chain(n, s)
    out = {}
    for (a, b), c in std.items():
        fa = tuple(simplex[i] for i in a)
        fb = tuple(simplex[i] for i in b)
        out[(fa, fb)] = c
    return out


def _diag_terms(n, s):
    """Terms of phi_s(iota_n) in the middle bidegree (used by Sq evaluation)."""
    key = ("diag", n, s)
    if key not in _CUPI_CACHE:
        deg = n + s
        if deg % 2:
            _CUPI_CACHE[key] = {}
        else:
            r = deg // 2
            _CUPI_CACHE[key] = {ab: c for ab, c in standard_cup_chain(n, s).items()
                                if len(ab[0]) - 1 == r}
    return _CUPI_CACHE[key]


class IsovariantStructure:
    """The cup-i structure of a complex: components phi_s for 0 <= s < order."""

    def __init__(self, K: SimplicialComplex, order):
        if order < 1:
            raise SimplicialError("order must be at least 1")
        self.K = K
        self.order = order
        # make sure the standard chains exist (and therefore verify)
        for n in range(K.dim + 1):
            for s in range(order):
                standard_cup_chain(n, s)

    def component(self, s, simplex):
        """phi_s(simplex) as a dict (face, face) -> coefficient."""
        return transport_cup_chain(len(simplex) - 1, s, simplex)

    def component_matrix(self, ts: TensorSquare, s, d):
        """phi_s : C_d -> (C (x) C)_{d+s} as a matrix in the tensor basis."""
        rows = ts.dim(d + s)
        cols = self.K.n_simplices(d)
        m = IntMatrix(rows, cols)
        for j, simp in enumerate(self.K.simplices.get(d, ())):
            for (a, b), c in self.component(s, simp).items():
                p, ia = self.K.index[a]
                q, ib = self.K.index[b]
                m.data[ts.basis.position(d + s, p, ia, 0, ib)][j] += c
        return m

    def verify(self, ts: TensorSquare = None):
        """Check the defining relation degreewise as matrix identities."""
        ts = ts or tensor_square_with_involution(
            self.K.chain_complex(RingSpec.integers()))
        C = ts.source
        for s in range(self.order):
            for d in range(self.K.dim + 1):
                phi_s = self.component_matrix(ts, s, d)
                lhs = ts.complex.d(d + s) * phi_s
                if d >= 1:
                    lhs = lhs + (self.component_matrix(ts, s, d - 1) * C.d(d)).scale(
                        (-1) ** (s - 1))
                if s >= 1:
                    prev = self.component_matrix(ts, s - 1, d)
                    tprev = ts.involution(d + s - 1) * prev
                    lhs = lhs + (prev + tprev.scale((-1) ** s)).scale((-1) ** (s - 1))
                if not lhs.is_zero():
                    return False
        return True


def symmetric_construction(K: SimplicialComplex, k):
    """The chain-level symmetric construction of order k (phi_0 ... phi_{k-1})."""
    return IsovariantStructure(K, k)


# -- cochain evaluation: cup products and Steenrod squares --------------------


class Cochain:
    """A cochain: degree plus a value per simplex of that degree."""

    def __init__(self, K, degree, values, ring=None):
        self.K = K
        self.degree = degree
        self.values = list(values)
        self.ring = ring or RingSpec.integers()
        if len(self.values) != K.n_simplices(degree):
            raise SimplicialError("cochain has the wrong length")

    def __call__(self, simplex):
        d, i = self.K.index[simplex]
        if d != self.degree:
            return 0
        return self.values[i]

    def is_cocycle(self):
        if self.degree >= self.K.dim:
            return True
        delta = self.K.boundary_matrix(self.degree + 1).transpose()
        out = delta.apply(self.values)
        if self.ring.kind == "F2":
            return all(x % 2 == 0 for x in out)
        return all(x == 0 for x in out)


def cup_product(K: SimplicialComplex, x: Cochain, y: Cochain):
    """(x cup y)(sigma) = <x (x) y, phi_0(sigma)>."""
    if not x.is_cocycle() or not y.is_cocycle():
        raise SimplicialError("cup product requires cocycles")
    p, q = x.degree, y.degree
    n = p + q
    ring = x.ring
    out = []
    for simp in K.simplices.get(n, ()):
        acc = 0
        for (a, b), c in transport_cup_chain(n, 0, simp).items():
            if len(a) - 1 == p:
                xa = x(a)
                if xa:
                    yb = y(b)
                    if yb:
                        acc += c * xa * yb
        out.append(acc % 2 if ring.kind == "F2" else acc)
    return Cochain(K, n, out, ring)


def steenrod_square(K: SimplicialComplex, i, x: Cochain):
    """Sq^i x, evaluated through phi_{r-i}: y -> <x (x) x, phi_{r-i}(y)>."""
    if x.ring.kind != "F2":
        raise SimplicialError("Steenrod squares are mod-2 operations")
    if not x.is_cocycle():
        raise SimplicialError("Steenrod square of a non-cocycle")
    r = x.degree
    target = r + i
    if i < 0:
        raise SimplicialError("negative Steenrod index")
    if i > r or target > K.dim:
        return Cochain(K, target, [0] * K.n_simplices(target), x.ring)
    s = r - i
    out = []
    for simp in K.simplices.get(target, ()):
        acc = 0
        for (a, b), c in _diag_terms(target, s).items():
            if c % 2:
                fa = tuple(simp[t] for t in a)
                xa = x(fa)
                if xa % 2:
                    fb = tuple(simp[t] for t in b)
                    if x(fb) % 2:
                        acc ^= 1
        out.append(acc)
    return Cochain(K, target, out, x.ring)


def _zero_cochain(K, degree, ring):
    if degree > K.dim:
        raise SimplicialError("degree above the dimension of the complex")
    return Cochain(K, degree, [0] * K.n_simplices(degree), ring)


# -- the symmetric Poincare complex -------------------------------------------


def evaluate_structure_on_cycle(K: SimplicialComplex, cycle, n, ring=None,
                                order=None, ts=None):
    """phi(X)([X]): the symmetric class of a fundamental cycle.

    Components phi_s(z) carry the sign (-1)^{n s}, the unique twist under
    which the evaluation of the isovariant structure on an n-cycle
    satisfies the symmetric closure relation.
    """
    ring = ring or RingSpec.integers()
    if not K.check_cycle(cycle, ring):
        raise SimplicialError("not a cycle")
    C = K.chain_complex(ring)
    ts = ts or tensor_square_with_involution(C)
    order = order if order is not None else (n + 2)
    chains = {}
    for s in range(order):
        deg = n + s
        if deg > 2 * K.dim:
            break
        vec = [0] * ts.dim(deg)
        for j, z in enumerate(cycle):
            if z:
                for (a, b), c in transport_cup_chain(n, s, K.simplices[n][j]).items():
                    p, ia = K.index[a]
                    q, ib = K.index[b]
                    vec[ts.basis.position(deg, p, ia, 0, ib)] += z * c
        sign = (-1) ** (n * s)
        vec = [sign * v for v in vec]
        if ring.kind == "F2":
            vec = [v % 2 for v in vec]
        if any(vec):
            chains[s] = vec
    phi = SymmetricClass(ts, n, 0, order, chains)
    if not phi.verify():
        raise SimplicialError("evaluated symmetric class fails the closure relation")
    return C, ts, phi


def slant_map(ts: TensorSquare, w_chains_deg_n, n):
    """The chain map C^{n-*} -> C determined by an n-cycle w in C (x) C."""
    C = ts.source
    Cd = dual(C, n)
    mats = {r: IntMatrix(C.zrank(r), C.zrank(n - r)) for r in Cd.degrees()}
    for pos, c in enumerate(w_chains_deg_n):
        if c:
            p, ia, _g, ib = ts.basis.basis(n)[pos]
            q = n - p
            # term e_ia (x) e_ib: dual basis element of C_p evaluates to e_ib in C_q
            mats[q].data[ib][ia] += c
    check = ts.ring.kind != "F2"
    f = ChainMap(Cd, C, mats, check=False)
    if not f.is_chain_map():
        raise ChainError("slant of a non-cycle is not a chain map")
    return f


def symmetric_poincare(K: SimplicialComplex, cycle, n, ring=None):
    """(C(X), phi(X)[X]) plus the duality map phi_0 cap [X]: C^{n-*} -> C."""
    ring = ring or RingSpec.integers()
    C, ts, phi = evaluate_structure_on_cycle(K, cycle, n, ring)
    cap = slant_map(ts, phi.component(0), n)
    return C, phi, cap


def poincare_duality_holds(K: SimplicialComplex, cycle, n, ring=None):
    _, _, cap = symmetric_poincare(K, cycle, n, ring)
    return is_quasi_isomorphism(cap)


# -- catalog of triangulations -------------------------------------------------


def sphere_complex(n):
    """S^n as the boundary of the (n+1)-simplex."""
    verts = list(range(n + 2))
    facets = list(combinations(verts, n + 1))
    return SimplicialComplex(verts, facets)


def circle_complex(k=3):
    verts = list(range(k))
    facets = [(i, (i + 1) % k) for i in range(k)]
    return SimplicialComplex(verts, [tuple(sorted(f)) for f in facets])


def rp2_minimal():
    """The 6-vertex triangulation of the projective plane."""
    facets = [(0, 1, 4), (0, 1, 5), (0, 2, 3), (0, 2, 4), (0, 3, 5),
              (1, 2, 3), (1, 2, 5), (1, 3, 4), (2, 4, 5), (3, 4, 5)]
    return SimplicialComplex(list(range(6)), facets)


def torus7():
    """The 7-vertex (Moebius-Kantor) triangulation of the torus."""
    facets = []
    for i in range(7):
        facets.append(tuple(sorted((i, (i + 1) % 7, (i + 3) % 7))))
        facets.append(tuple(sorted((i, (i + 2) % 7, (i + 3) % 7))))
    return SimplicialComplex(list(range(7)), facets)


def cross_polytope_boundary(n):
    """The boundary of the n-dimensional cross-polytope: S^{n-1}, 2n vertices.

    Vertex 2i is +e_i, vertex 2i+1 is -e_i; the antipode is i <-> i^1.
    """
    verts = list(range(2 * n))
    facets = []
    for signs in range(1 << n):
        facets.append(tuple(2 * i + ((signs >> i) & 1) for i in range(n)))
    return SimplicialComplex(verts, facets)


def barycentric_subdivision(K: SimplicialComplex):
    """sd(K): vertices are the simplices of K, facets are the maximal flags."""
    all_simps = []
    for d in sorted(K.simplices):
        all_simps.extend(K.simplices[d])
    vert_index = {s: i for i, s in enumerate(all_simps)}
    facets = set()
    for f in K.facets:
        for perm in permutations(f):
            flag = []
            for k in range(1, len(f) + 1):
                flag.append(tuple(sorted(perm[:k])))
            facets.add(tuple(sorted(vert_index[s] for s in flag)))
    return SimplicialComplex(list(range(len(all_simps))), sorted(facets)), all_simps


def quotient_complex(K: SimplicialComplex, vertex_map):
    """Quotient by a free simplicial involution given on vertex indices.

    The construction checks that the quotient is again simplicial: no facet
    image collapses and distinct orbits stay distinct.
    """
    n = len(K.vertices)
    orbit_rep = {}
    for v in range(n):
        w = vertex_map[v]
        if w == v:
            raise SimplicialError("involution has a fixed vertex")
        orbit_rep[v] = min(v, w)
    reps = sorted(set(orbit_rep.values()))
    rep_index = {r: i for i, r in enumerate(reps)}
    facets = set()
    for f in K.facets:
        img = tuple(sorted(rep_index[orbit_rep[v]] for v in f))
        if len(set(img)) != len(f):
            raise SimplicialError("quotient facet collapses; action not regular enough")
        facets.add(img)
    if 2 * len(facets) != len(K.facets):
        raise SimplicialError("facet orbits are not free; quotient not simplicial")
    return SimplicialComplex(list(range(len(reps))), sorted(facets))


_RP_CACHE = {}


def rp_space(n):
    """RP^n: the antipodal quotient of the subdivided cross-polytope boundary.

    For n = 2 the minimal 6-vertex triangulation is returned.
    """
    if n in _RP_CACHE:
        return _RP_CACHE[n]
    if n == 2:
        out = rp2_minimal()
    else:
        sphere = cross_polytope_boundary(n + 1)
        sd, simps = barycentric_subdivision(sphere)
        lookup = {s: i for i, s in enumerate(simps)}
        vmap = [lookup[tuple(sorted(v ^ 1 for v in s))] for s in simps]
        out = quotient_complex(sd, vmap)
    _RP_CACHE[n] = out
    return out


def suspension_complex(K: SimplicialComplex):
    """The suspension: two cone points appended after the original vertices."""
    nv = len(K.vertices)
    verts = list(range(nv + 2))
    npole, spole = nv, nv + 1
    facets = []
    for f in K.facets:
        facets.append(tuple(sorted(f + (npole,))))
        facets.append(tuple(sorted(f + (spole,))))
    return SimplicialComplex(verts, facets), npole, spole


def suspend_cochain_f2(K, SK, npole, spole, x: Cochain):
    """The suspension isomorphism on mod-2 cohomology, at cochain level."""
    d = x.degree + 1
    vals = []
    for simp in SK.simplices.get(d, ()):
        if npole in simp and spole not in simp:
            base = tuple(v for v in simp if v != npole)
            vals.append(x(base) % 2)
        else:
            vals.append(0)
    return Cochain(SK, d, vals, x.ring)


def product_complex(K: SimplicialComplex, L: SimplicialComplex):
    """The staircase triangulation of |K| x |L| on lexicographically ordered vertices."""
    nl = len(L.vertices)
    def encode(a, b):
        return a * nl + b
    facets = set()
    for f in K.facets:
        for g in L.facets:
            p, q = len(f) - 1, len(g) - 1
            # monotone lattice paths from (0,0) to (p,q)
            for path in _lattice_paths(p, q):
                facets.add(tuple(encode(f[a], g[b]) for (a, b) in path))
    verts = list(range(len(K.vertices) * nl))
    return SimplicialComplex(verts, sorted(facets))


def _lattice_paths(p, q):
    if p == 0 and q == 0:
        return [[(0, 0)]]
    out = []
    def rec(path):
        a, b = path[-1]
        if (a, b) == (p, q):
            out.append(list(path))
            return
        if a < p:
            rec(path + [(a + 1, b)])
        if b < q:
            rec(path + [(a, b + 1)])
    rec([(0, 0)])
    return out


def project_cochain(P: SimplicialComplex, K: SimplicialComplex, which, nl, x: Cochain):
    """Pullback of a cochain along a product projection (degenerate -> 0)."""
    d = x.degree
    vals = []
    for simp in P.simplices.get(d, ()):
        if which == 0:
            img = tuple(v // nl for v in simp)
        else:
            img = tuple(v % nl for v in simp)
        if len(set(img)) == len(img):
            vals.append(x(img) % 2 if x.ring.kind == "F2" else x(img))
        else:
            vals.append(0)
    return Cochain(P, d, vals, x.ring)


def disjoint_union(K: SimplicialComplex, L: SimplicialComplex):
    nk = len(K.vertices)
    verts = list(range(nk + len(L.vertices)))
    facets = list(K.facets) + [tuple(v + nk for v in f) for f in L.facets]
    return SimplicialComplex(verts, facets)
