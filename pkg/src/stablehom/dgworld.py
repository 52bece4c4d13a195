"""The dg layer: Hom-complexes between resolutions and the comparison maps.

Three constructions talk to each other here, all windowed and exact:

* ``build_dg_window`` assembles, for chosen complete resolutions, the
  Hom-complexes whose degree-t blocks are the module-map spaces
  Hom(P^j, P'^{t+j}), with the twisted differential
  (d f)^j = d' f^j - (-1)^t f^{j+1} d. Each block keeps its j label.
* ``augmentation_map`` is postcomposition with the augmentation p0 of the
  target resolution, a chain map into the Hom-complex toward the resolved
  module; its cohomology matches stable Hom through the syzygy operator,
  which is the module-level oracle used everywhere in the tests.
* for a single-object algebra A, ``build_transported`` endows the blockwise
  scalar extension A (x) Hom(P^j, P'^{i+j}) with the transported
  differential and composition; ``transport_comparison`` (a (x) f maps to
  b (x) x -> ab (x) f(x)) compares it degreewise with the Hom-complexes
  computed from scratch over the tensor category, and
  ``tensor_to_transported`` (a (x) f maps to (a (x) f^j)_j) is the dg
  functor from the plain tensor of A with the base dg window.

Cohomology is only trusted on a safe range that stays ``margin`` degrees
away from the window edges; everything outside is reported as unavailable,
never extrapolated.

Truncation caveat: the raw kernel-over-image numbers of a windowed
Hom-complex are wrong near degree zero (cutting the block direction on both
sides under-generates coboundaries, leaving spurious classes that no margin
in the degree direction removes). ``trusted_cohomology`` therefore computes
H^t from a restricted scheme: it keeps only blocks whose incoming boundary
rows are complete with respect to the stored square of blocks, imposes
cocycle conditions only on rows complete with respect to that support, and
quotients by the projection of the full differential. Restricted cocycles
are precisely restrictions of honest unbounded cocycles (the extension step
is the classical lifting argument along an acyclic complex of
projective-injectives), so these numbers agree with the unbounded ones on
the safe range.
"""

import random

from .complexes import (
    Complex,
    Window,
    cohomology,
    cohomology_map,
    boundary_space,
    make_complex,
)
from .errors import (
    ChainMismatch,
    EdgeDegree,
    RankDeficient,
    ShapeMismatch,
    WindowMismatch,
)
from .linalg import LinearSolver, Matrix, vec_is_zero, zero_vec
from .qmodules import Rep, RepMap, hom_space, tensor_rep

#: Degrees closer than this to a window edge are not trusted.
SAFE_MARGIN = 2


class ModuleComplex:
    """A windowed cochain complex of representations."""

    def __init__(self, category, window, comps, diffs):
        self.category = category
        self.window = window
        self.comps = comps
        self.diffs = diffs

    @classmethod
    def from_resolution(cls, R):
        return cls(R.category, R.window, dict(R.comps), dict(R.diffs))

    @classmethod
    def one_term(cls, M, degree=0):
        return cls(M.category, Window(degree, degree), {degree: M}, {})

    def component(self, i):
        return self.comps[i]

    def diff(self, i):
        return self.diffs.get(i)


class DGBlock:
    """A labelled block of a Hom-complex degree: maps P^j -> P'^{t+j}."""

    __slots__ = ("j", "basis", "offset")

    def __init__(self, j, basis, offset):
        self.j = j
        self.basis = basis
        self.offset = offset

    @property
    def size(self):
        return len(self.basis)

    def __repr__(self):
        return f"DGBlock(j={self.j}, size={self.size} @ {self.offset})"


class HomBlockComplex:
    """Hom-complex between two module complexes, with labelled blocks.

    Blocks at degree t are indexed by the source degree j; the coordinates of
    a block are taken in the computed basis of the module-map space.
    ``post``/``pre`` store the unsigned post- and pre-composition operators
    feeding the differential; the transported construction reuses them.
    """

    def __init__(self, source_mc, target_mc, underlying, blocks, post, pre, pair_data):
        self.source_mc = source_mc
        self.target_mc = target_mc
        self.complex = underlying
        self.blocks = blocks
        self.post = post
        self.pre = pre
        self._pair_data = pair_data  # (a, b) -> (basis, LinearSolver)

    def block_list(self, t):
        return self.blocks.get(t, [])

    def block_at(self, t, j):
        for b in self.block_list(t):
            if b.j == j:
                return b
        return None

    def pair_basis(self, a, b):
        entry = self._pair_data.get((a, b))
        return entry[0] if entry else []

    def express(self, a, b, rep_map):
        """Coordinates of a module map P^a -> P'^b in the stored basis."""
        entry = self._pair_data.get((a, b))
        if entry is None:
            raise ShapeMismatch(f"no Hom data at degrees ({a}, {b})")
        basis, solver = entry
        if not basis:
            if rep_map.is_zero():
                return []
            raise ShapeMismatch("nonzero map in a zero Hom space")
        coords = solver.solve(rep_map.flatten())
        if coords is None:
            raise ShapeMismatch("map does not lie in the computed Hom space")
        return coords

    def element_of(self, t, vec):
        """Unpack coordinates at degree t into a dict j -> RepMap."""
        out = {}
        for b in self.block_list(t):
            if b.size == 0:
                continue
            coeffs = vec[b.offset:b.offset + b.size]
            field = self.complex.field
            acc = None
            for c, u in zip(coeffs, b.basis):
                if field.is_zero(c):
                    continue
                term = u.scale(c)
                acc = term if acc is None else acc.add(term)
            if acc is None:
                acc = RepMap.zero(b.basis[0].source, b.basis[0].target)
            out[b.j] = acc
        return out

    def coords_of(self, t, parts):
        """Pack a dict j -> RepMap into coordinates at degree t."""
        vec = zero_vec(self.complex.field, self.complex.dim(t))
        for b in self.block_list(t):
            part = parts.get(b.j)
            if part is None or b.size == 0:
                continue
            coords = self.express(b.j, t + b.j, part)
            for k, c in enumerate(coords):
                vec[b.offset + k] = c
        return vec

    def identity_coords(self):
        parts = {
            j: RepMap.identity(self.source_mc.component(j))
            for j in self.source_mc.window.degrees()
        }
        return self.coords_of(0, parts)


def module_hom_complex(S, T):
    """Build the Hom-complex between two module complexes from scratch.

    Every block basis is computed by solving the naturality systems over the
    base category (hom_space), so two Hom-complexes over different categories
    are genuinely independent computations.
    """
    field = S.category.field
    window = Window(T.window.lo - S.window.hi, T.window.hi - S.window.lo)
    pair_data = {}

    def pair(a, b):
        key = (a, b)
        if key not in pair_data:
            basis = hom_space(S.component(a), T.component(b))
            cols = [u.flatten() for u in basis]
            solver = LinearSolver(Matrix.from_cols(field, cols)) if cols else None
            pair_data[key] = (basis, solver)
        return pair_data[key]

    blocks = {}
    dims = {}
    for t in window.degrees():
        blist = []
        offset = 0
        for j in S.window.degrees():
            if not T.window.contains(t + j):
                continue
            basis, _ = pair(j, t + j)
            blist.append(DGBlock(j, basis, offset))
            offset += len(basis)
        blocks[t] = blist
        dims[t] = offset

    post, pre = {}, {}
    diffs = {}
    minus_one = field.neg(field.one())
    for t in range(window.lo, window.hi):
        src = blocks[t]
        tgt = {b.j: b for b in blocks[t + 1]}
        M = [[field.zero()] * dims[t] for _ in range(dims[t + 1])]
        for b in src:
            j = b.j
            if j in tgt and T.diff(t + j) is not None and b.size and tgt[j].size:
                dT = T.diff(t + j)
                _, solver = pair(j, t + j + 1)
                op_cols = [solver.solve(dT.compose(u).flatten()) for u in b.basis]
                if any(c is None for c in op_cols):
                    raise ShapeMismatch("post-composition left the Hom space")
                op = Matrix.from_cols(field, op_cols)
                post[(t, j)] = op
                _write(M, op, tgt[j].offset, b.offset, field)
            if (j - 1) in tgt and S.diff(j - 1) is not None and b.size and tgt[j - 1].size:
                dS = S.diff(j - 1)
                tgt_basis, solver = pair(j - 1, t + j)
                op_cols = []
                for u in b.basis:
                    op_cols.append(solver.solve(u.compose(dS).flatten()))
                if any(c is None for c in op_cols):
                    raise ShapeMismatch("pre-composition left the Hom space")
                op = Matrix.from_cols(field, op_cols)
                pre[(t, j - 1)] = op
                signed = op.scale(minus_one) if t % 2 == 0 else op
                _write(M, signed, tgt[j - 1].offset, b.offset, field)
        diffs[t] = Matrix(field, dims[t + 1], dims[t], M)

    underlying = make_complex(field, window, dims, diffs)
    return HomBlockComplex(S, T, underlying, blocks, post, pre, pair_data)


def _write(M, block, row_off, col_off, field):
    for r in range(block.rows):
        row = M[row_off + r]
        brow = block.data[r]
        for c in range(block.cols):
            row[col_off + c] = field.add(row[col_off + c], brow[c])


def trusted_support(blocked, t):
    """Blocks at degree t whose incoming boundary rows are complete.

    A block j qualifies when block j exists at degree t - 1 (the
    post-composition contributor) and block j + 1 exists at degree t (the
    pre-composition contributor), so that projecting the full differential
    onto it yields true boundary values.
    """
    out = []
    for b in blocked.block_list(t):
        if blocked.block_at(t - 1, b.j) is not None and blocked.block_at(t, b.j + 1) is not None:
            out.append(b)
    return out


def _cells(blocks):
    cells = []
    for b in blocks:
        cells.extend(range(b.offset, b.offset + b.size))
    return cells


def _submatrix(M, rows, cols, field):
    return Matrix(field, len(rows), len(cols), [[M.data[r][c] for c in cols] for r in rows])


def trusted_cohomology(blocked, t):
    """Dimension and representatives of the honest H^t from windowed data.

    Returns (dim, reps) where reps are coordinate vectors at degree t of the
    stored complex, supported on the trusted blocks; they are restrictions
    of honest unbounded cocycles and their classes form a basis.
    """
    C = blocked.complex
    field = C.field
    if not C.window.interior(t):
        raise EdgeDegree(f"degree {t} is not interior to {C.window}")
    sup = trusted_support(blocked, t)
    sup_j = {b.j for b in sup}
    cols = _cells(sup)
    rows = []
    for b in blocked.block_list(t + 1):
        if b.j in sup_j and (b.j + 1) in sup_j:
            rows.extend(range(b.offset, b.offset + b.size))
    d_t = C.diff(t)
    Z = _submatrix(d_t, rows, cols, field).kernel_basis()
    d_prev = C.diff(t - 1)
    B = _submatrix(d_prev, cols, list(range(C.dim(t - 1))), field).image_basis()
    stacked = B.hstack(Z)
    _, pivots = stacked.rref()
    rep_cols = [c - B.cols for c in pivots if c >= B.cols]
    dim = Z.cols - B.rank()
    if len(rep_cols) != dim:
        raise ShapeMismatch("boundary projections escaped the cocycle space")
    reps = []
    for rc in rep_cols:
        v = zero_vec(field, C.dim(t))
        for local, cell in enumerate(cols):
            v[cell] = Z.entry(local, rc)
        reps.append(v)
    return dim, reps


def extend_cocycle(blocked, t, vec):
    """Extend a trusted-support cocycle to the full stored block range.

    Solves for the remaining components so that every differential row that
    is complete with respect to the stored blocks vanishes; the result is
    the window restriction of an honest unbounded cocycle extending vec.
    """
    C = blocked.complex
    field = C.field
    sup_cells = set(_cells(trusted_support(blocked, t)))
    all_j = {b.j for b in blocked.block_list(t)}
    rows = []
    for b in blocked.block_list(t + 1):
        if b.j in all_j and (b.j + 1) in all_j:
            rows.extend(range(b.offset, b.offset + b.size))
    free = [c for c in range(C.dim(t)) if c not in sup_cells]
    if not free:
        return list(vec)
    d_t = C.diff(t)
    A = _submatrix(d_t, rows, free, field)
    rhs = []
    for r in rows:
        acc = field.zero()
        for c in sup_cells:
            acc = field.add(acc, field.mul(d_t.data[r][c], vec[c]))
        rhs.append(field.neg(acc))
    sol = A.solve(rhs)
    if sol is None:
        raise ShapeMismatch("trusted cocycle does not extend across the window")
    out = list(vec)
    for c, val in zip(free, sol):
        out[c] = val
    return out


class DGWindow:
    """Chosen resolutions together with all pairwise Hom-complexes."""

    def __init__(self, category, resolutions, homs, margin=SAFE_MARGIN):
        self.category = category
        self.resolutions = resolutions
        self.mcs = [ModuleComplex.from_resolution(R) for R in resolutions]
        self.homs = homs
        self.margin = margin
        self.window = resolutions[0].window

    def hom(self, x, y):
        return self.homs[(x, y)]

    def safe_degrees(self, lo=None, hi=None):
        """Degrees where cohomology and oracle comparisons are trusted.

        Intersection of: margin-shrunk resolution window, the syzygy range,
        and the interior of the augmentation-target window.
        """
        w = self.window
        lo_s = max(w.lo + self.margin, 1 - w.hi, -w.hi + 1)
        hi_s = min(w.hi - self.margin, -w.lo, -w.lo - 1)
        if lo is not None:
            lo_s = max(lo_s, lo)
        if hi is not None:
            hi_s = min(hi_s, hi)
        return list(range(lo_s, hi_s + 1))

    def compose_coords(self, x, y, z, t_f, f_vec, t_g, g_vec):
        """Coordinates of the graded composite g after f.

        f lives at degree t_f in homs[(x, y)], g at t_g in homs[(y, z)];
        the result sits at degree t_f + t_g in homs[(x, z)].
        """
        H_f = self.homs[(x, y)]
        H_g = self.homs[(y, z)]
        H_out = self.homs[(x, z)]
        f_parts = H_f.element_of(t_f, f_vec)
        g_parts = H_g.element_of(t_g, g_vec)
        out_parts = {}
        for j, fj in f_parts.items():
            gj = g_parts.get(t_f + j)
            if gj is not None:
                out_parts[j] = gj.compose(fj)
        return H_out.coords_of(t_f + t_g, out_parts)

    def cocycle_composition_closed(self, x, y, z, t_f, t_g):
        """Check that composites of cocycles are cocycles (type invariant)."""
        H_f = self.homs[(x, y)]
        H_g = self.homs[(y, z)]
        H_out = self.homs[(x, z)]
        t = t_f + t_g
        if not (H_out.complex.window.lo <= t < H_out.complex.window.hi):
            return True
        Kf = H_f.complex.diff(t_f).kernel_basis()
        Kg = H_g.complex.diff(t_g).kernel_basis()
        for jf in range(Kf.cols):
            for jg in range(Kg.cols):
                vec = self.compose_coords(x, y, z, t_f, Kf.col(jf), t_g, Kg.col(jg))
                if not vec_is_zero(self.category.field, H_out.complex.diff(t).apply(vec)):
                    return False
        return True


def build_dg_window(resolutions, margin=SAFE_MARGIN):
    """Assemble all pairwise Hom-complexes for resolutions over one category."""
    if not resolutions:
        raise WindowMismatch("need at least one resolution")
    cat = resolutions[0].category
    window = resolutions[0].window
    for R in resolutions:
        if R.category is not cat and not R.category.same_category(cat):
            raise WindowMismatch("resolutions over different categories")
        if R.window != window:
            raise WindowMismatch(f"window {R.window} differs from {window}")
    mcs = [ModuleComplex.from_resolution(R) for R in resolutions]
    homs = {}
    for x in range(len(resolutions)):
        for y in range(len(resolutions)):
            homs[(x, y)] = module_hom_complex(mcs[x], mcs[y])
    return DGWindow(cat, resolutions, homs, margin=margin)


class DGMap:
    """A degreewise matrix map between two windowed complexes."""

    def __init__(self, kind, source, target, mats):
        self.kind = kind
        self.source = source
        self.target = target
        self.mats = mats

    def matrix(self, t):
        m = self.mats.get(t)
        if m is None:
            return Matrix.zero(self.source.field, self.target.dim(t), self.source.dim(t))
        return m

    def chain_failures(self):
        """Degrees where the map fails to commute with the differentials."""
        bad = []
        for t in sorted(self.mats):
            if (t + 1) not in self.mats:
                continue
            if not (self.source.window.contains(t) and self.source.window.contains(t + 1)):
                continue
            if not (self.target.window.contains(t) and self.target.window.contains(t + 1)):
                continue
            lhs = self.target.diff(t).mul(self.mats[t])
            rhs = self.mats[t + 1].mul(self.source.diff(t))
            if lhs != rhs:
                bad.append(t)
        return bad

    def cohomology_matrix(self, i):
        return cohomology_map(self.mats, self.source, self.target, i)

    def bijective_degrees(self, degrees):
        """Subset of degrees where the induced cohomology map is bijective."""
        out = []
        for i in degrees:
            M = self.cohomology_matrix(i)
            if M.rows == M.cols and M.is_invertible():
                out.append(i)
        return out

    def is_degreewise_bijective(self):
        for t, m in self.mats.items():
            if m.rows != m.cols or not m.is_invertible():
                return False
        return True


def augmentation_map(dg, x, y, target_hom=None):
    """Postcomposition with the augmentation of the target resolution.

    A chain map from Hom(P_x, P_y) to Hom(P_x, Y) where Y is the module
    resolved by P_y viewed as a one-term complex; at degree t it projects to
    the block j = -t and postcomposes with p0. Returns (DGMap, target Hom
    complex).
    """
    source = dg.hom(x, y)
    if target_hom is None:
        Y = dg.resolutions[y].base
        target_hom = module_hom_complex(dg.mcs[x], ModuleComplex.one_term(Y))
    p0 = dg.resolutions[y].p0
    field = dg.category.field
    mats = {}
    for t in target_hom.complex.window.degrees():
        rows = target_hom.complex.dim(t)
        cols = source.complex.dim(t)
        M = [[field.zero()] * cols for _ in range(rows)]
        sb = source.block_at(t, -t)
        tb = target_hom.block_at(t, -t)
        if sb is not None and tb is not None and sb.size and tb.size:
            for ui, u in enumerate(sb.basis):
                coords = target_hom.express(-t, 0, p0.compose(u))
                for k, c in enumerate(coords):
                    M[tb.offset + k][sb.offset + ui] = c
        mats[t] = Matrix(field, rows, cols, M)
    return DGMap("augmentation", source.complex, target_hom.complex, mats), target_hom


class TransportedBlock:
    __slots__ = ("j", "offset", "base_size", "dA")

    def __init__(self, j, offset, base_size, dA):
        self.j = j
        self.offset = offset
        self.base_size = base_size
        self.dA = dA

    @property
    def size(self):
        return self.dA * self.base_size


class TransportedPair:
    """Blockwise scalar extension of one Hom-complex, with the transported
    differential (a^j (x) d f^j - (-1)^t a^{j+1} (x) f^{j+1} d)."""

    def __init__(self, complex_, blocks, base_hom, dA):
        self.complex = complex_
        self.blocks = blocks
        self.base_hom = base_hom
        self.dA = dA

    def block_list(self, t):
        return self.blocks.get(t, [])

    def block_at(self, t, j):
        for b in self.block_list(t):
            if b.j == j:
                return b
        return None


class TransportedDG:
    """The transported dg structure over a single-object algebra A."""

    def __init__(self, algebra, base_dg, pairs, tensor_complexes):
        self.algebra = algebra
        self.base = base_dg
        self.pairs = pairs
        self.tensor_complexes = tensor_complexes
        star = algebra.objects[0]
        self.dA = algebra.dim(star, star)
        self._star = star

    def pair(self, x, y):
        return self.pairs[(x, y)]

    def tensor_complex(self, x, y):
        """The per-pair complex of A (x) Hom(P_x, P_y): the plain tensor side."""
        return self.tensor_complexes[(x, y)]

    def algebra_product(self, gi, fi):
        """Coefficients of the product (basis gi) * (basis fi) of A."""
        return self.algebra.compose_basis(self._star, self._star, self._star, gi, fi)

    def compose_coords(self, x, y, z, t_f, f_vec, t_g, g_vec):
        """Transported composition: block j picks (b^{t_f+j} a^j) (x) (g f)."""
        field = self.base.category.field
        Pf = self.pairs[(x, y)]
        Pg = self.pairs[(y, z)]
        Pout = self.pairs[(x, z)]
        t = t_f + t_g
        out = zero_vec(field, Pout.complex.dim(t))
        base = self.base
        for bf in Pf.block_list(t_f):
            bo = Pout.block_at(t, bf.j)
            bg = Pg.block_at(t_g, t_f + bf.j)
            if bo is None or bg is None or bf.base_size * bg.base_size == 0 or bo.base_size == 0:
                continue
            Hf = base.homs[(x, y)]
            Hg = base.homs[(y, z)]
            Hout = base.homs[(x, z)]
            fb = Hf.block_at(t_f, bf.j)
            gb = Hg.block_at(t_g, t_f + bf.j)
            for sf in range(self.dA):
                for uf in range(bf.base_size):
                    cf = f_vec[bf.offset + sf * bf.base_size + uf]
                    if field.is_zero(cf):
                        continue
                    for sg in range(self.dA):
                        for ug in range(bg.base_size):
                            cg = g_vec[bg.offset + sg * bg.base_size + ug]
                            if field.is_zero(cg):
                                continue
                            avec = self.algebra_product(sg, sf)
                            comp = gb.basis[ug].compose(fb.basis[uf])
                            bcoords = Hout.express(bf.j, t + bf.j, comp)
                            c = field.mul(cf, cg)
                            for r, ac in enumerate(avec):
                                if field.is_zero(ac):
                                    continue
                                for w, bc in enumerate(bcoords):
                                    if field.is_zero(bc):
                                        continue
                                    idx = bo.offset + r * bo.base_size + w
                                    out[idx] = field.add(out[idx], field.mul(c, field.mul(ac, bc)))
        return out


def build_transported(A, dg):
    """Endow the blockwise scalar extension of every Hom-complex with the
    transported differential, and build the plain tensor-side complexes."""
    if not A.single_object:
        raise ShapeMismatch("transported structure needs a single-object algebra")
    star = A.objects[0]
    dA = A.dim(star, star)
    field = dg.category.field
    eyeA = Matrix.identity(field, dA)
    pairs = {}
    tensors = {}
    minus_one = field.neg(field.one())
    for key, H in dg.homs.items():
        window = H.complex.window
        blocks = {}
        dims = {}
        for t in window.degrees():
            blist = []
            offset = 0
            for b in H.block_list(t):
                blist.append(TransportedBlock(b.j, offset, b.size, dA))
                offset += dA * b.size
            blocks[t] = blist
            dims[t] = offset
        diffs = {}
        for t in range(window.lo, window.hi):
            src = blocks[t]
            tgt = {b.j: b for b in blocks[t + 1]}
            M = [[field.zero()] * dims[t] for _ in range(dims[t + 1])]
            for b in src:
                if b.j in tgt and (t, b.j) in H.post:
                    op = eyeA.kron(H.post[(t, b.j)])
                    _write(M, op, tgt[b.j].offset, b.offset, field)
                if (b.j - 1) in tgt and (t, b.j - 1) in H.pre:
                    op = eyeA.kron(H.pre[(t, b.j - 1)])
                    if t % 2 == 0:
                        op = op.scale(minus_one)
                    _write(M, op, tgt[b.j - 1].offset, b.offset, field)
            diffs[t] = Matrix(field, dims[t + 1], dims[t], M)
        underlying = make_complex(field, window, dims, diffs)
        pairs[key] = TransportedPair(underlying, blocks, H, dA)

        tdims = {t: dA * H.complex.dim(t) for t in window.degrees()}
        tdiffs = {t: eyeA.kron(H.complex.diff(t)) for t in range(window.lo, window.hi)}
        tensors[key] = make_complex(field, window, tdims, tdiffs)
    return TransportedDG(A, dg, pairs, tensors)


def _left_mult_matrix(A, s):
    """Left multiplication by the s-th basis element of A."""
    star = A.objects[0]
    dA = A.dim(star, star)
    cols = [A.compose_basis(star, star, star, s, b) for b in range(dA)]
    return Matrix.from_cols(A.field, cols)


def transport_comparison(transported, direct):
    """The comparison a (x) f -> (b (x) x -> ab (x) f(x)) with the directly
    computed Hom-complexes over the tensor category.

    ``direct`` must be a DGWindow over the tensor category whose resolutions
    were produced by tensor_resolution (they carry the interleaving maps).
    Returns a dict (x, y) -> DGMap; raises RankDeficient if any degreewise
    matrix fails to be bijective, which would signal an implementation bug.
    """
    A = transported.algebra
    base = transported.base
    field = base.category.field
    dA = transported.dA
    lmult = {s: _left_mult_matrix(A, s) for s in range(dA)}
    out = {}
    for (x, y), P in transported.pairs.items():
        H_base = base.homs[(x, y)]
        H_dir = direct.homs[(x, y)]
        RX = direct.resolutions[x]
        RY = direct.resolutions[y]
        mats = {}
        for t in P.complex.window.degrees():
            rows = H_dir.complex.dim(t)
            cols = P.complex.dim(t)
            M = [[field.zero()] * cols for _ in range(rows)]
            for b in P.block_list(t):
                bb = H_base.block_at(t, b.j)
                db = H_dir.block_at(t, b.j)
                if db is None or b.base_size == 0:
                    continue
                perm_src = RX.tensor_structure[b.j]
                perm_tgt = RY.tensor_structure[t + b.j]
                for s in range(dA):
                    for u, base_map in enumerate(bb.basis):
                        comps = {}
                        for w in base.category.objects:
                            plain = lmult[s].kron(base_map.component(w))
                            comps[w] = perm_tgt.component(w).mul(plain).mul(
                                perm_src.component(w).transpose())
                        rep = RepMap(H_dir.source_mc.component(b.j),
                                     H_dir.target_mc.component(t + b.j),
                                     comps, validate=False)
                        coords = H_dir.express(b.j, t + b.j, rep)
                        col = b.offset + s * b.base_size + u
                        for k, c in enumerate(coords):
                            M[db.offset + k][col] = c
            mats[t] = Matrix(field, rows, cols, M)
            if rows != cols or not mats[t].is_invertible():
                raise RankDeficient(
                    f"transport comparison not bijective at pair {(x, y)}, degree {t}")
        out[(x, y)] = DGMap("transport-comparison", P.complex, H_dir.complex, mats)
    return out


def tensor_to_transported(transported):
    """The dg functor a (x) f -> (a (x) f^j)_j, as degreewise permutations
    from the plain tensor-side complexes to the transported complexes."""
    base = transported.base
    field = base.category.field
    dA = transported.dA
    out = {}
    for (x, y), P in transported.pairs.items():
        H = base.homs[(x, y)]
        mats = {}
        for t in P.complex.window.degrees():
            n_base = H.complex.dim(t)
            rows = P.complex.dim(t)
            cols = dA * n_base
            M = [[field.zero()] * cols for _ in range(rows)]
            for b in H.block_list(t):
                tb = P.block_at(t, b.j)
                for s in range(dA):
                    for u in range(b.size):
                        src = s * n_base + b.offset + u
                        tgt = tb.offset + s * b.size + u
                        M[tgt][src] = field.one()
            mats[t] = Matrix(field, rows, cols, M)
        out[(x, y)] = DGMap("tensor-functor", transported.tensor_complex(x, y),
                            P.complex, mats)
    return out


def tensor_side_compose(transported, x, y, z, t_f, f_vec, t_g, g_vec):
    """Composition in A (x) (base dg): (b (x) g)(a (x) f) = ba (x) gf.

    No Koszul signs appear since A sits in degree zero. Coordinates are
    taken in the plain tensor-side complexes.
    """
    base = transported.base
    field = base.category.field
    dA = transported.dA
    Hf = base.homs[(x, y)].complex
    Hg = base.homs[(y, z)].complex
    Hout = base.homs[(x, z)].complex
    nf, ng, nout = Hf.dim(t_f), Hg.dim(t_g), Hout.dim(t_f + t_g)
    out = zero_vec(field, dA * nout)
    for sf in range(dA):
        fpart = f_vec[sf * nf:(sf + 1) * nf]
        if vec_is_zero(field, fpart):
            continue
        for sg in range(dA):
            gpart = g_vec[sg * ng:(sg + 1) * ng]
            if vec_is_zero(field, gpart):
                continue
            avec = transported.algebra_product(sg, sf)
            comp = base.compose_coords(x, y, z, t_f, fpart, t_g, gpart)
            for r, ac in enumerate(avec):
                if field.is_zero(ac):
                    continue
                for w, bc in enumerate(comp):
                    if field.is_zero(bc):
                        continue
                    out[r * nout + w] = field.add(out[r * nout + w], field.mul(ac, bc))
    return out


def transported_identity_coords(transported, x):
    """Coordinates of the identity in the transported End at degree 0."""
    base = transported.base
    field = base.category.field
    H = base.homs[(x, x)]
    P = transported.pairs[(x, x)]
    base_id = H.identity_coords()
    star = transported.algebra.objects[0]
    unit = transported.algebra.identity_vector(star)
    vec = zero_vec(field, P.complex.dim(0))
    for b in P.block_list(0):
        hb = H.block_at(0, b.j)
        for s, uc in enumerate(unit):
            if field.is_zero(uc):
                continue
            for u in range(b.base_size):
                c = base_id[hb.offset + u]
                if field.is_zero(c):
                    continue
                idx = b.offset + s * b.base_size + u
                vec[idx] = field.add(vec[idx], field.mul(uc, c))
    return vec


def augmentation_target_comparison(transported, direct, x, y, base_target, direct_target):
    """The scalar-extension comparison on augmentation targets.

    Maps A (x) Hom(P_x^i, Y) degreewise to the directly computed
    Hom-complex from the tensored resolution of x into A (x) Y.
    """
    A = transported.algebra
    base = transported.base
    field = base.category.field
    dA = transported.dA
    lmult = {s: _left_mult_matrix(A, s) for s in range(dA)}
    RX = direct.resolutions[x]
    mats = {}
    for t in base_target.complex.window.degrees():
        n_base = base_target.complex.dim(t)
        rows = direct_target.complex.dim(t)
        cols = dA * n_base
        M = [[field.zero()] * cols for _ in range(rows)]
        bb = base_target.block_at(t, -t)
        db = direct_target.block_at(t, -t)
        if bb is not None and db is not None and bb.size:
            perm_src = RX.tensor_structure[-t]
            for s in range(dA):
                for u, base_map in enumerate(bb.basis):
                    comps = {}
                    for w in base.category.objects:
                        plain = lmult[s].kron(base_map.component(w))
                        comps[w] = plain.mul(perm_src.component(w).transpose())
                    rep = RepMap(direct_target.source_mc.component(-t),
                                 direct_target.target_mc.component(0),
                                 comps, validate=False)
                    coords = direct_target.express(-t, 0, rep)
                    col = s * n_base + bb.offset + u
                    for k, c in enumerate(coords):
                        M[db.offset + k][col] = c
        mats[t] = Matrix(field, rows, cols, M)
    src = make_complex(
        field, base_target.complex.window,
        {t: dA * base_target.complex.dim(t) for t in base_target.complex.window.degrees()},
        {t: Matrix.identity(field, dA).kron(base_target.complex.diff(t))
         for t in range(base_target.complex.window.lo, base_target.complex.window.hi)},
    )
    return DGMap("transport-comparison", src, direct_target.complex, mats)


def verify_augmentation_square(transported, direct):
    """Exact commutation of the square relating the two augmentation routes.

    For every object pair and shared degree compares (direct augmentation)
    after (transport comparison) after (tensor functor) against the target
    comparison after (identity of A tensor base augmentation). Returns a
    report dict with per-(pair, degree) mismatch counts (all zero on pass).
    """
    base = transported.base
    field = base.category.field
    dA = transported.dA
    eyeA = Matrix.identity(field, dA)
    rho = transport_comparison(transported, direct)
    phi = tensor_to_transported(transported)
    report = {"pairs": {}, "all_zero": True}
    for (x, y) in transported.pairs:
        psi_base, base_target = augmentation_map(base, x, y)
        psi_dir, direct_target = augmentation_map(direct, x, y)
        rho_t = augmentation_target_comparison(
            transported, direct, x, y, base_target, direct_target)
        entries = {}
        for t in base_target.complex.window.degrees():
            lhs = psi_dir.matrix(t).mul(rho[(x, y)].matrix(t)).mul(phi[(x, y)].matrix(t))
            rhs = rho_t.matrix(t).mul(eyeA.kron(psi_base.matrix(t)))
            diff = lhs.sub(rhs)
            bad = sum(1 for row in diff.data for v in row if not field.is_zero(v))
            entries[t] = bad
            if bad:
                report["all_zero"] = False
        report["pairs"][(x, y)] = entries
    return report


def augmentation_class_matrix(dg, x, y, t, psi=None, target=None):
    """The matrix of H^t of the augmentation map, from the trusted basis of
    H^t(Hom(P_x, P_y)) to the representative basis of the target cohomology.

    Bijectivity of this matrix at every safe degree is the windowed form of
    the quasi-isomorphism statement for the augmentation comparison.
    """
    if psi is None or target is None:
        psi, target = augmentation_map(dg, x, y)
    field = dg.category.field
    H = dg.hom(x, y)
    dim_s, reps_s = trusted_cohomology(H, t)
    dim_t, reps_t = cohomology(target.complex, t)
    bound = boundary_space(target.complex, t)
    basis = Matrix.from_cols(field, reps_t).hstack(bound) if dim_t else bound
    solver = LinearSolver(basis)
    cols = []
    for r in reps_s:
        img = psi.matrix(t).apply(r)
        sol = solver.solve(img)
        if sol is None:
            raise ChainMismatch(f"augmentation image not a cocycle at degree {t}")
        cols.append(sol[:dim_t])
    if not cols:
        return Matrix(field, dim_t, 0, [[] for _ in range(dim_t)])
    return Matrix.from_cols(field, cols)


class EndRing:
    """Cohomology dimensions of an End Hom-complex and pairwise products.

    products[(i, j)] is a list of lists of class-coefficient vectors over
    the chosen basis of H^{i+j} (entry [a][b] is the class of the a-th
    degree-i representative composed after the b-th degree-j one), or the
    string "unavailable" when i + j leaves the safe range.
    """

    def __init__(self, degrees, dims, products, identity_class, field):
        self.degrees = list(degrees)
        self.dims = dims
        self.products = products
        self.identity_class = identity_class
        self.field = field

    def product_is_zero(self, i, j):
        table = self.products[(i, j)]
        if table == "unavailable":
            return None
        return all(all(self.field.is_zero(c) for c in vec) for row in table for vec in row)

    def product_hits_identity(self, i, j):
        """Whether some product of degree-i and degree-j generators is a
        nonzero multiple of the identity class (needs i + j = 0)."""
        table = self.products[(i, j)]
        if table == "unavailable" or not self.identity_class:
            return None
        ident = self.identity_class
        for row in table:
            for vec in row:
                nz = [k for k, c in enumerate(vec) if not self.field.is_zero(c)]
                if not nz:
                    continue
                k0 = nz[0]
                if self.field.is_zero(ident[k0]):
                    continue
                lam = self.field.mul(vec[k0], self.field.inv(ident[k0]))
                if all(c == self.field.mul(lam, ident[k]) for k, c in enumerate(vec)):
                    return True
        return False


def end_ring(dg, x, degrees, rng=None):
    """Cohomology table of End(P_x) with products of class representatives.

    Dimensions come from the trusted windowed cohomology. Products compose
    window extensions of the representatives and identify the resulting
    class through the augmentation route (which only reads the block the
    truncation leaves exact), pulled back along the inverse of the
    augmentation class matrix. Products whose degree leaves the safe range
    are reported as "unavailable". The structure constants are recomputed
    with a second, boundary-perturbed representative set; a mismatch raises
    ChainMismatch since product classes are representative-independent.
    """
    H = dg.homs[(x, x)]
    safe = set(dg.safe_degrees())
    field = dg.category.field
    for i in degrees:
        if i not in safe or not H.complex.window.interior(i):
            raise EdgeDegree(f"degree {i} outside the safe range")
    psi, target = augmentation_map(dg, x, x)
    reps = {}
    dims = {}
    class_data = {}
    for i in degrees:
        dims[i], reps[i] = trusted_cohomology(H, i)
        dim_t, reps_t = cohomology(target.complex, i)
        bound = boundary_space(target.complex, i)
        basis = Matrix.from_cols(field, reps_t).hstack(bound) if dim_t else bound
        solver = LinearSolver(basis)
        cls = augmentation_class_matrix(dg, x, x, i, psi=psi, target=target)
        if cls.rows != cls.cols or (dims[i] and not cls.is_invertible()):
            raise RankDeficient(f"augmentation classes degenerate at degree {i}")
        inv = cls.inverse() if dims[i] else cls
        class_data[i] = (solver, dim_t, inv)

    def class_of(i, vec):
        """Trusted class coordinates of a (window-extended) cocycle at i."""
        solver, dim_t, inv = class_data[i]
        img = psi.matrix(i).apply(vec)
        sol = solver.solve(img)
        if sol is None:
            raise ChainMismatch(f"vector at degree {i} is not a cocycle class")
        return inv.apply(sol[:dim_t])

    rng = rng or random.Random(99)
    extended = {i: [extend_cocycle(H, i, r) for r in reps[i]] for i in degrees}

    def products_with(representatives):
        out = {}
        for i in degrees:
            for j in degrees:
                t = i + j
                if t not in safe or t not in degrees:
                    out[(i, j)] = "unavailable"
                    continue
                table = []
                for u in representatives[i]:
                    row = []
                    for v in representatives[j]:
                        comp = dg.compose_coords(x, x, x, j, v, i, u)
                        row.append(class_of(t, comp))
                    table.append(row)
                out[(i, j)] = table
        return out

    products = products_with(extended)

    # second representative set: perturb by random boundaries
    perturbed = {}
    for i in degrees:
        prev = H.complex.diff(i - 1)
        perturbed[i] = []
        for r in extended[i]:
            noise = [field.random(rng) for _ in range(prev.cols)]
            b = prev.apply(noise)
            perturbed[i].append([field.add(a, c) for a, c in zip(r, b)])
    products2 = products_with(perturbed)
    for key in products:
        if products[key] != products2[key]:
            raise ChainMismatch(f"product at {key} depends on representatives")

    identity_class = None
    if 0 in degrees:
        identity_class = class_of(0, H.identity_coords())
    return EndRing(degrees, dims, products, identity_class, field)


def oracle_stable_hom(dg, x, y, i):
    """The module-level oracle: stable Hom from the i-th syzygy of the base
    of P_x to the base of P_y."""
    from .qmodules import stable_hom
    Om, _ = dg.resolutions[x].omega(i)
    return stable_hom(Om, dg.resolutions[y].base)[0]
