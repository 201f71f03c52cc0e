"""Q-groups of a chain complex: the resolutions W[i,j], the symmetric,
quadratic and hyperquadratic groups, their structure maps and exact
sequences.

For a complex C with tensor square M = C (x)_A C (a Z[Z/2]-complex via the
signed transposition T), the chain groups are assembled directly:

    symmetric:  G_m = sum_{i <= s <= j} M_{m+s}
                (d z)_s = d_M z_s + (-1)^{m+s-1} (1 + (-1)^s T) z_{s-1}
    quadratic:  G_m = sum_{i <= s <= j} M_{m-s}
                (d z)_s = d_M z_s + (-1)^{m-s-1} (1 + (-1)^{s+1} T) z_{s+1}

both derived from d_W = 1 + (-1)^r T on W[i,j]_r and the fixed tensor/Hom
sign conventions of :mod:`chainq.chains`.  Infinite ranges are truncated
losslessly at the support of M (one index beyond, recorded in metadata).
Representative chains are carried alongside every computed group so that
downstream modules can work at chain level.
"""

from __future__ import annotations

import random

from .intmatrix import IntMatrix, SNF, homology_at, solve_linear
from .f2linalg import F2HomologyData
from .chains import (ChainComplex, ChainError, F2Presentation, TensorSquare,
                     suspension, tensor_square_with_involution)
from .rings import RingSpec

INF = None  # open range end


class QGroupError(ValueError):
    pass


def build_W(i, j):
    """The truncated standard free Z[Z/2]-resolution W[i,j], d = 1 + (-1)^r T."""
    if i > j:
        raise QGroupError("build_W requires i <= j")
    R = RingSpec.cyclic_group(2)
    ranks = {r: 1 for r in range(i, j + 1)}
    diffs = {}
    for r in range(i + 1, j + 1):
        diffs[r] = R.encode_block_matrix([[[1, (-1) ** r]]], 1, 1)
    return ChainComplex(R, i, j, ranks, diffs)


def _effective_range(kind, ts: TensorSquare, n, i, j, slack=1):
    """Truncate (i, j) to the degrees where the assembled groups can be nonzero."""
    a, b = ts.complex.lo, ts.complex.hi
    if kind == "sym":
        lo_s, hi_s = a - (n + slack), b - (n - slack)
    else:
        lo_s, hi_s = (n - slack) - b, (n + slack) - a
    i_eff = lo_s if i is INF else max(i, lo_s)
    j_eff = hi_s if j is INF else min(j, hi_s)
    return i_eff, j_eff


class AssembledWindow:
    """Degrees n-1, n, n+1 of an assembled symmetric or quadratic complex."""

    def __init__(self, ts: TensorSquare, kind, n, i, j):
        if kind not in ("sym", "quad"):
            raise QGroupError("kind must be 'sym' or 'quad'")
        self.ts = ts
        self.kind = kind
        self.n = n
        self.range_requested = (i, j)
        self.i, self.j = _effective_range(kind, ts, n, i, j)
        self.layout = {m: self._layout(m) for m in (n - 1, n, n + 1)}
        self.d_n = self._differential(n)
        self.d_np1 = self._differential(n + 1)
        self._presentation = None

    def tensor_degree(self, m, s):
        return m + s if self.kind == "sym" else m - s

    def _layout(self, m):
        out = []
        offset = 0
        for s in range(self.i, self.j + 1):
            dim = self.ts.dim(self.tensor_degree(m, s))
            out.append((s, offset, dim))
            offset += dim
        return out

    def dim(self, m):
        lay = self.layout[m]
        return lay[-1][1] + lay[-1][2] if lay else 0

    def offset(self, m, s):
        for s0, off, dim in self.layout[m]:
            if s0 == s:
                return off, dim
        return None, 0

    def _differential(self, m):
        """Matrix G_m -> G_{m-1}."""
        rows, cols = self.dim(m - 1), self.dim(m)
        out = IntMatrix(rows, cols)
        for s, off, dim in self.layout[m]:
            if dim == 0:
                continue
            deg = self.tensor_degree(m, s)
            # diagonal part: d_M on component s
            off_t, dim_t = self.offset(m - 1, s)
            if off_t is not None and dim_t:
                dM = self.ts.complex.d(deg)
                for c in range(dim):
                    col = dM.column_list(c)
                    for r, val in enumerate(col):
                        if val:
                            out.data[off_t + r][c + off] += val
            # off-diagonal part
            s2 = s + 1 if self.kind == "sym" else s - 1
            off_t, dim_t = self.offset(m - 1, s2)
            if off_t is not None and dim_t:
                if self.kind == "sym":
                    sign = (-1) ** (m + s)
                    tsign = (-1) ** (s + 1)
                else:
                    sign = (-1) ** (m - s)
                    tsign = (-1) ** s
                T = self.ts.involution(deg)
                for c in range(dim):
                    out.data[off_t + c][c + off] += sign
                    col = T.column_list(c)
                    for r, val in enumerate(col):
                        if val:
                            out.data[off_t + r][c + off] += sign * tsign * val
        return out

    # -- chains <-> component dictionaries --------------------------------

    def pack(self, chains, m=None):
        m = self.n if m is None else m
        vec = [0] * self.dim(m)
        for s, off, dim in self.layout[m]:
            comp = chains.get(s)
            if comp is None:
                continue
            if len(comp) != dim:
                raise QGroupError(f"component {s} has wrong length")
            for t, x in enumerate(comp):
                vec[off + t] = x
        stray = [s for s, c in chains.items()
                 if any(c) and not any(s == s0 for s0, _, d in self.layout[m] if d)]
        if stray:
            raise QGroupError(f"nonzero components outside the effective range: {stray}")
        return vec

    def unpack(self, vec, m=None):
        m = self.n if m is None else m
        if len(vec) != self.dim(m):
            raise QGroupError("vector length does not match the chain group")
        out = {}
        for s, off, dim in self.layout[m]:
            if dim:
                comp = vec[off:off + dim]
                if any(comp):
                    out[s] = comp
        return out

    def boundary_of(self, vec):
        """d_n applied to a degree-n vector."""
        return self.d_n.apply(vec)

    def is_cycle(self, vec):
        b = self.boundary_of(vec)
        if self.ts.ring.kind == "F2":
            return all(x % 2 == 0 for x in b)
        return all(x == 0 for x in b)

    def presentation(self):
        if self._presentation is None:
            if self.ts.ring.kind == "F2":
                d_in = self.d_np1.mod(2)
                d_out = self.d_n.mod(2)
                self._presentation = F2Presentation(
                    F2HomologyData(_bit_cols(d_in), _bit_cols(d_out), self.dim(self.n)))
            else:
                self._presentation = homology_at(self.d_np1, self.d_n)
        return self._presentation


def _bit_cols(M: IntMatrix):
    cols = []
    for j in range(M.cols):
        acc = 0
        for i in range(M.rows):
            if M.data[i][j] % 2:
                acc |= 1 << i
        cols.append(acc)
    return cols


class QClass:
    """A chain-level class: components s -> chain in the tensor square."""

    kind = None

    def __init__(self, ts: TensorSquare, n, i, j, chains):
        self.ts = ts
        self.n = n
        self.i = i
        self.j = j
        self.chains = {s: list(c) for s, c in chains.items() if any(c)}

    def component(self, s):
        deg = self.n + s if self.kind == "sym" else self.n - s
        c = self.chains.get(s)
        return list(c) if c is not None else [0] * self.ts.dim(deg)

    def window(self):
        return AssembledWindow(self.ts, self.kind, self.n, self.i, self.j)

    def verify(self):
        """The closure relation: the packed vector is a cycle."""
        w = self.window()
        return w.is_cycle(w.pack(self.chains))

    def is_chain_zero(self):
        return not self.chains

    def scaled(self, c):
        return type(self)(self.ts, self.n, self.i, self.j,
                          {s: [c * x for x in v] for s, v in self.chains.items()})

    def __repr__(self):
        comps = {s: sum(1 for x in v if x) for s, v in self.chains.items()}
        return f"{type(self).__name__}(n={self.n}, range=[{self.i},{self.j}], support={comps})"


class SymmetricClass(QClass):
    kind = "sym"


class QuadraticClass(QClass):
    kind = "quad"


class QGroupResult:
    """A computed Q-group: presentation, window, and generator representatives."""

    def __init__(self, window: AssembledWindow):
        self.window = window
        self.kind = window.kind
        self.n = window.n
        self.presentation = window.presentation()
        self.range_requested = window.range_requested
        self.range_effective = (window.i, window.j)

    def _class(self, chains):
        cls = SymmetricClass if self.kind == "sym" else QuadraticClass
        return cls(self.window.ts, self.n, self.window.i, self.window.j, chains)

    def generators(self):
        out = []
        for idx in range(self.presentation.generator_count()):
            vec = self.presentation.generator_cycle(idx)
            out.append(self._class(self.window.unpack(vec)))
        return out

    def coordinates(self, qclass: QClass):
        vec = self.window.pack(qclass.chains)
        if not self.window.is_cycle(vec):
            raise QGroupError("representative does not satisfy the closure relation")
        return self.presentation.coordinates(vec)

    def is_zero_class(self, qclass: QClass):
        free, tors = self.coordinates(qclass)
        return not any(free) and not any(tors)

    def classes_equal(self, c1, c2):
        f1, t1 = self.coordinates(c1)
        f2, t2 = self.coordinates(c2)
        return f1 == f2 and t1 == t2

    def random_class(self, rng: random.Random, bound=2):
        """A seeded random cycle, as a chain-level class."""
        d = self.window.d_n
        if self.window.ts.ring.kind == "F2":
            from .f2linalg import F2Matrix, unpack_vector
            rows = [[d.data[i][j] for j in range(d.cols)] for i in range(d.rows)]
            ker = F2Matrix.from_int_rows(rows, d.cols).kernel_basis()
            vec = [0] * d.cols
            for kv in ker:
                if rng.random() < 0.5:
                    for t, x in enumerate(unpack_vector(kv, d.cols)):
                        vec[t] = (vec[t] + x) % 2
        else:
            ker = SNF(d).kernel_basis()
            vec = [0] * d.cols
            for kv in ker:
                c = rng.randint(-bound, bound)
                if c:
                    for t, x in enumerate(kv):
                        vec[t] += c * x
        return self._class(self.window.unpack(vec))

    def __repr__(self):
        return (f"QGroupResult({self.kind}, n={self.n}, "
                f"range={self.range_effective}, group={self.presentation})")


def _as_tensor_square(C):
    if isinstance(C, TensorSquare):
        return C
    return tensor_square_with_involution(C)


def symmetric_Q(C, n, i=0, j=INF):
    """Q^n_{[i,j]}(C) with representatives."""
    return QGroupResult(AssembledWindow(_as_tensor_square(C), "sym", n, i, j))


def quadratic_Q(C, n, i=0, j=INF):
    """Q_n^{[i,j]}(C) with representatives."""
    return QGroupResult(AssembledWindow(_as_tensor_square(C), "quad", n, i, j))


def hyperquadratic_Q(C, n, k):
    """Qhat^n_k(C) = Q^n_{[-k, k-1]}(C)."""
    if k < 1:
        raise QGroupError("hyperquadratic range needs k >= 1")
    return symmetric_Q(C, n, -k, k - 1)


def stable_k(C, n):
    """Smallest k with Qhat^n_k = Qhat^n_infinity: [-k, k-1] covers the support."""
    ts = _as_tensor_square(C)
    a, b = ts.complex.lo, ts.complex.hi
    return max(1, n + 1 - a, b - n + 2)


# -- structure maps ----------------------------------------------------------


def symmetrization(psi: QuadraticClass):
    """(1+T): phi_0 = psi_0 + T psi_0, phi_s = 0 for s >= 1."""
    if psi.i < 0:
        raise QGroupError("symmetrization expects a class in range [0, k-1]")
    ts = psi.ts
    psi0 = psi.component(0)
    t = ts.involution(psi.n)
    phi0 = [a + b for a, b in zip(psi0, t.apply(psi0))]
    return SymmetricClass(ts, psi.n, 0, max(psi.j, 0), {0: phi0})


def J_map(phi: SymmetricClass, k):
    """Q^n -> Qhat^n_k: keep components 0..k-1, zero in negative degrees."""
    if phi.i < 0:
        raise QGroupError("J expects a class in range [0, j]")
    chains = {s: phi.chains[s] for s in phi.chains if 0 <= s <= k - 1}
    return SymmetricClass(phi.ts, phi.n, -k, k - 1, chains)


def H_map(phihat: SymmetricClass, k=None):
    """Qhat^n_k -> Q_{n-1}^{[0,k-1]}: (H phi)_s = phi_{-s-1}."""
    if k is None:
        k = -phihat.i
    if k < 1:
        raise QGroupError("H expects a hyperquadratic range [-k, k-1]")
    chains = {}
    for s in range(0, k):
        comp = phihat.chains.get(-s - 1)
        if comp is not None:
            chains[s] = comp
    return QuadraticClass(phihat.ts, phihat.n - 1, 0, k - 1, chains)


def flip_reindex(phi: SymmetricClass):
    """The chain-level iso Q^n_{[i,j]}(C) = Q_{n-1}^{[-1-j,-1-i]}(C)."""
    chains = {-1 - s: c for s, c in phi.chains.items()}
    return QuadraticClass(phi.ts, phi.n - 1, -1 - phi.j, -1 - phi.i, chains)


def suspend_tensor_chain(ts_src: TensorSquare, ts_tgt: TensorSquare, vec, deg, k):
    """Identify M_deg with M'_{deg+2k} (M' the tensor square of S^k C).

    Basis vectors map plainly with the sign (-1)^{k p} on first-factor
    degree p; this is the unique diagonal twist making the identification a
    chain map for the fixed sign conventions.
    """
    src = ts_src.basis.basis(deg)
    out = [0] * ts_tgt.dim(deg + 2 * k)
    for pos, x in enumerate(vec):
        if x:
            p, i, g, j = src[pos]
            sign = (-1) ** (k * p)
            out[ts_tgt.basis.position(deg + 2 * k, p + k, i, g, j)] += sign * x
    return out


def unsuspend_tensor_chain(ts_src: TensorSquare, ts_tgt: TensorSquare, vec, deg, k):
    """Inverse of :func:`suspend_tensor_chain` (vec in degree deg of ts_src of S^k C)."""
    src = ts_src.basis.basis(deg)
    out = [0] * ts_tgt.dim(deg - 2 * k)
    for pos, x in enumerate(vec):
        if x:
            p, i, g, j = src[pos]
            sign = (-1) ** (k * (p - k))
            out[ts_tgt.basis.position(deg - 2 * k, p - k, i, g, j)] += sign * x
    return out


def S_map(phi: SymmetricClass, ts_tgt: TensorSquare, k=1, out_range=None):
    """Suspension Q^n_{[i,j]}(C) -> Q^{n+k}_{[i+k,j+k]}(S^k C): (S phi)_s = phi_{s-k}."""
    i, j = (phi.i + k, phi.j + k) if out_range is None else out_range
    chains = {}
    for s, c in phi.chains.items():
        chains[s + k] = suspend_tensor_chain(phi.ts, ts_tgt, c, phi.n + s, k)
    return SymmetricClass(ts_tgt, phi.n + k, i, j, chains)


def H_les3(phi: SymmetricClass, ts_tgt: TensorSquare, k):
    """Q^{n+k}_{[0,*]}(S^k C) -> Q^{[0,k-1]}_{n-1}(C): psi_s = phi_{k-1-s} desuspended."""
    n_src = phi.n
    chains = {}
    for s in range(0, k):
        comp = phi.chains.get(k - 1 - s)
        if comp is not None:
            chains[s] = unsuspend_tensor_chain(phi.ts, ts_tgt, comp,
                                               n_src + (k - 1 - s), k)
    return QuadraticClass(ts_tgt, n_src - k - 1, 0, k - 1, chains)


def include_range(cls: QClass, i_new, j_new):
    """View a class in a larger range (chains unchanged)."""
    return type(cls)(cls.ts, cls.n, i_new, j_new, cls.chains)


def restrict_range(cls: QClass, i_new, j_new):
    """Forget components outside [i_new, j_new]."""
    chains = {s: c for s, c in cls.chains.items() if i_new <= s <= j_new}
    return type(cls)(cls.ts, cls.n, i_new, j_new, chains)


def boundary_les1_sym(phi: SymmetricClass, j, k_top):
    """Connecting map Q^n_{[i,j]} -> Q^{n-1}_{[j+1,k+1]} of the range sequence."""
    ts, n = phi.ts, phi.n
    comp = phi.chains.get(j)
    chains = {}
    if comp is not None:
        t = ts.involution(n + j)
        sign = (-1) ** (n + j)
        tsign = (-1) ** (j + 1)
        vec = [sign * (a + tsign * b) for a, b in zip(comp, t.apply(comp))]
        if any(vec):
            chains[j + 1] = vec
    return SymmetricClass(ts, n - 1, j + 1, k_top, chains)


def boundary_les1_quad(psi: QuadraticClass, i, j):
    """Connecting map Q_n^{[j+1,k+1]} -> Q_{n-1}^{[i,j]} of the range sequence."""
    ts, n = psi.ts, psi.n
    comp = psi.chains.get(j + 1)
    chains = {}
    if comp is not None:
        t = ts.involution(n - j - 1)
        sign = (-1) ** (n - j - 1)
        tsign = (-1) ** (j + 1)
        vec = [sign * (a + tsign * b) for a, b in zip(comp, t.apply(comp))]
        if any(vec):
            chains[j] = vec
    return QuadraticClass(ts, n - 1, i, j, chains)


# -- induced maps on presentations and exactness ------------------------------


def induced_matrix(res_src: QGroupResult, map_fn, res_tgt: QGroupResult):
    """Matrix of a chain-level map on coordinate groups (columns = generator images)."""
    cols = []
    for g in res_src.generators():
        img = map_fn(g)
        free, tors = res_tgt.coordinates(img)
        cols.append(list(free) + list(tors))
    nrows = res_tgt.presentation.generator_count()
    return IntMatrix.from_columns(cols, rows=nrows) if cols else IntMatrix(nrows, 0)


def _relation_columns(pres):
    """Diagonal relation lattice of a presentation's coordinate group."""
    free = pres.free_rank
    tors = pres.torsion
    n = free + len(tors)
    cols = []
    for t, d in enumerate(tors):
        col = [0] * n
        col[free + t] = d
        cols.append(col)
    return cols, n


def exact_at_middle(res_a, f_ab, res_b, g_bc, res_c):
    """Exactness of A -f-> B -g-> C at B, decided by integer SNF.

    Returns (ok, detail).  f_ab and g_bc take chain-level classes.
    """
    F = induced_matrix(res_a, f_ab, res_b)
    G = induced_matrix(res_b, g_bc, res_c)
    rel_b, nb = _relation_columns(res_b.presentation)
    rel_c, nc = _relation_columns(res_c.presentation)

    # g o f = 0 in C
    for jcol in range(F.cols):
        y = G.apply(F.column_list(jcol))
        if rel_c:
            sol = solve_linear(IntMatrix.from_columns(rel_c, rows=nc), y)
        else:
            sol = [] if all(x == 0 for x in y) else None
        if sol is None:
            return False, f"composite nonzero on generator {jcol}"

    # ker(G)/im(F) = 0
    stacked = IntMatrix.from_columns(G.columns() + rel_c, rows=nc) \
        if (G.cols + len(rel_c)) else IntMatrix(nc, 0)
    ker = SNF(stacked).kernel_basis() if stacked.cols else \
        [[1 if t == s else 0 for t in range(nb)] for s in range(nb)]
    span = IntMatrix.from_columns(F.columns() + rel_b, rows=nb) \
        if (F.cols + len(rel_b)) else IntMatrix(nb, 0)
    span_snf = SNF(span)
    for kv in ker:
        y = kv[:nb]
        if any(y):
            if span_snf.solve(y) is None:
                return False, f"kernel element {y} not in the image"
    return True, "exact"


def induced_is_isomorphism(res_src, map_fn, res_tgt):
    """True iff the induced map of presentations is an isomorphism."""
    M = induced_matrix(res_src, map_fn, res_tgt)
    rel_s, ns = _relation_columns(res_src.presentation)
    rel_t, nt = _relation_columns(res_tgt.presentation)
    # surjective: every generator of tgt lies in im(M) + relations
    span = IntMatrix.from_columns(M.columns() + rel_t, rows=nt) \
        if (M.cols + len(rel_t)) else IntMatrix(nt, 0)
    span_snf = SNF(span)
    for t in range(nt):
        e = [0] * nt
        e[t] = 1
        if span_snf.solve(e) is None:
            return False
    # injective: M x in rel_t implies x in rel_s
    stacked = IntMatrix.from_columns(M.columns() + rel_t, rows=nt) \
        if (M.cols + len(rel_t)) else IntMatrix(nt, 0)
    ker = SNF(stacked).kernel_basis() if stacked.cols else []
    rel_span = SNF(IntMatrix.from_columns(rel_s, rows=ns)) if rel_s else None
    for kv in ker:
        x = kv[:ns]
        if any(x):
            if rel_span is None or rel_span.solve(x) is None:
                return False
    return True
