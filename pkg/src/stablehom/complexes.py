"""Degree-windowed cochain complexes and the graded sign calculus.

Conventions, fixed once for the whole package:

* differentials raise degree by one and satisfy d(i+1) @ d(i) = 0 at every
  degree where both factors exist;
* the shift sign is d_{C[n]} = (-1)^n d_C, so that shifting is additive
  including signs and compatible with the tensor product;
* the tensor differential is d(v (x) w) = d(v) (x) w + (-1)^j v (x) d(w) for
  v of degree j, and the braiding inserts (-1)^{jk};
* the Hom-complex differential on a homogeneous f of degree t is
  (d f)^j = d_target^{t+j} @ f^j - (-1)^t f^{j+1} @ d_source^j.

Windows truncate the unbounded objects these formulas are written for, so
every operation produces the largest window on which all inputs are defined
and cohomology is only reported at interior degrees. Blocks that fall off a
window edge are treated as zero; consumers that need trustworthy numbers
must stay inside a safe range away from the edges.
"""

from dataclasses import dataclass

from .errors import ChainMismatch, EdgeDegree, ResourceLimit, ShapeMismatch, SquareNonZero
from .linalg import LinearSolver, Matrix

#: Cap on the total number of basis elements of a single complex.
MAX_TOTAL_DIM = 10_000


@dataclass(frozen=True)
class Window:
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ShapeMismatch(f"window [{self.lo}, {self.hi}] is empty")

    def contains(self, i):
        return self.lo <= i <= self.hi

    def interior(self, i):
        return self.lo < i < self.hi

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def shrink(self, margin):
        if self.lo + margin > self.hi - margin:
            return None
        return Window(self.lo + margin, self.hi - margin)

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


class Complex:
    """A cochain complex of finite-dimensional spaces on a finite window.

    ``dims`` gives the dimension at each degree of the window (zero outside);
    ``diffs[i]`` is the matrix of d^i: C^i -> C^{i+1} for lo <= i < hi.
    Construct through :func:`make_complex`, which validates d @ d = 0.
    """

    def __init__(self, field, window, dims, diffs):
        self.field = field
        self.window = window
        self._dims = dims
        self._diffs = diffs

    def dim(self, i):
        return self._dims.get(i, 0)

    def total_dim(self):
        return sum(self._dims.values())

    def diff(self, i):
        """The differential at degree i, zero-filled outside the window."""
        d = self._diffs.get(i)
        if d is None:
            return Matrix.zero(self.field, self.dim(i + 1), self.dim(i))
        return d

    def __eq__(self, other):
        return (
            isinstance(other, Complex)
            and other.field == self.field
            and other.window == self.window
            and all(other.dim(i) == self.dim(i) for i in self.window.degrees())
            and all(other.diff(i) == self.diff(i) for i in range(self.window.lo, self.window.hi))
        )

    def __repr__(self):
        dims = [self.dim(i) for i in self.window.degrees()]
        return f"Complex(window={self.window}, dims={dims})"


def make_complex(field, window, dims, diffs, max_total=MAX_TOTAL_DIM):
    """Validate and build a :class:`Complex`.

    Raises ShapeMismatch for inconsistent matrix shapes, SquareNonZero (with
    the offending degree) when d @ d != 0 at an interior degree, and
    ResourceLimit when the total dimension exceeds ``max_total``.
    """
    full_dims = {i: int(dims.get(i, 0)) for i in window.degrees()}
    if any(v < 0 for v in full_dims.values()):
        raise ShapeMismatch("negative dimension")
    total = sum(full_dims.values())
    if total > max_total:
        raise ResourceLimit(f"total dimension {total} exceeds cap {max_total}")
    full_diffs = {}
    for i in range(window.lo, window.hi):
        d = diffs.get(i)
        if d is None:
            d = Matrix.zero(field, full_dims[i + 1], full_dims[i])
        if d.rows != full_dims[i + 1] or d.cols != full_dims[i]:
            raise ShapeMismatch(
                f"d^{i} has shape {d.rows}x{d.cols}, expected {full_dims[i + 1]}x{full_dims[i]}"
            )
        if d.field != field:
            raise ShapeMismatch(f"d^{i} is over {d.field!r}, expected {field!r}")
        full_diffs[i] = d
    for i in range(window.lo, window.hi - 1):
        if not full_diffs[i + 1].mul(full_diffs[i]).is_zero():
            raise SquareNonZero(i)
    return Complex(field, window, full_dims, full_diffs)


def concentrated(field, degree=0, dim=1, window=None):
    """The complex with a single space placed in one degree."""
    if window is None:
        window = Window(degree, degree)
    if not window.contains(degree):
        raise ShapeMismatch(f"degree {degree} outside window {window}")
    return make_complex(field, window, {degree: dim}, {})


def shift(C, n):
    """The shifted complex C[n] with C[n]^i = C^{n+i} and d = (-1)^n d_C."""
    window = Window(C.window.lo - n, C.window.hi - n)
    dims = {i: C.dim(n + i) for i in window.degrees()}
    sign = C.field.one() if n % 2 == 0 else C.field.neg(C.field.one())
    diffs = {i: C.diff(n + i).scale(sign) for i in range(window.lo, window.hi)}
    return make_complex(C.field, window, dims, diffs)


def cocycle_space(C, i):
    """Basis matrix (columns) of ker d^i. Valid for any window degree."""
    return C.diff(i).kernel_basis()


def boundary_space(C, i):
    """Basis matrix (columns) of im d^{i-1}."""
    return C.diff(i - 1).image_basis()


def cohomology(C, i):
    """Cohomology at an interior degree: (dimension, representative cocycles).

    The representatives are kernel basis vectors completing the boundary
    space to a basis of the cocycles; their classes form a basis of H^i.
    Raises EdgeDegree unless lo < i < hi.
    """
    if not C.window.interior(i):
        raise EdgeDegree(f"degree {i} is not interior to {C.window}")
    K = cocycle_space(C, i)
    B = boundary_space(C, i)
    dim = K.cols - B.cols
    stacked = B.hstack(K)
    _, pivots = stacked.rref()
    reps = [K.col(c - B.cols) for c in pivots if c >= B.cols]
    if len(reps) != dim:
        raise ShapeMismatch("boundaries not contained in cocycles")
    return dim, reps


def _tensor_blocks(C, D, i):
    """Deterministic block layout of (C (x) D)^i: list of (j, k, dimC, dimD, offset)."""
    blocks = []
    offset = 0
    for j in C.window.degrees():
        k = i - j
        if not D.window.contains(k):
            continue
        a, b = C.dim(j), D.dim(k)
        if a * b == 0:
            continue
        blocks.append((j, k, a, b, offset))
        offset += a * b
    return blocks


def tensor(C, D):
    """Tensor product with the Koszul sign on the differential.

    Degree-i space is the direct sum over i = j + k of C^j (x) D^k, with
    basis vectors e_a (x) f_b ordered j ascending and a-major inside a block.
    """
    if C.field != D.field:
        raise ChainMismatch("tensor factors over different fields")
    field = C.field
    window = Window(C.window.lo + D.window.lo, C.window.hi + D.window.hi)
    dims = {}
    for i in window.degrees():
        dims[i] = sum(a * b for (_, _, a, b, _) in _tensor_blocks(C, D, i))
    diffs = {}
    minus_one = field.neg(field.one())
    for i in range(window.lo, window.hi):
        src = _tensor_blocks(C, D, i)
        tgt = _tensor_blocks(C, D, i + 1)
        tgt_offset = {(j, k): off for (j, k, _, _, off) in tgt}
        M = [[field.zero()] * dims[i] for _ in range(dims[i + 1])]
        for (j, k, a, b, off) in src:
            # d_C (x) id: block (j, k) -> (j + 1, k)
            if (j + 1, k) in tgt_offset:
                block = C.diff(j).kron(Matrix.identity(field, b))
                _write_block(M, block, tgt_offset[(j + 1, k)], off, field)
            # (-1)^j id (x) d_D: block (j, k) -> (j, k + 1)
            if (j, k + 1) in tgt_offset:
                block = Matrix.identity(field, a).kron(D.diff(k))
                if j % 2 != 0:
                    block = block.scale(minus_one)
                _write_block(M, block, tgt_offset[(j, k + 1)], off, field)
        diffs[i] = Matrix(field, dims[i + 1], dims[i], M)
    return make_complex(field, window, dims, diffs)


def _write_block(M, block, row_off, col_off, field):
    for r in range(block.rows):
        row = M[row_off + r]
        brow = block.data[r]
        for c in range(block.cols):
            row[col_off + c] = field.add(row[col_off + c], brow[c])


def braiding(C, D):
    """The chain map C (x) D -> D (x) C sending v (x) w to (-1)^{jk} w (x) v."""
    T1 = tensor(C, D)
    T2 = tensor(D, C)
    field = C.field
    comps = {}
    for i in T1.window.degrees():
        src = _tensor_blocks(C, D, i)
        tgt = {(k, j): off for (k, j, _, _, off) in _tensor_blocks(D, C, i)}
        M = [[field.zero()] * T1.dim(i) for _ in range(T2.dim(i))]
        for (j, k, a, b, off) in src:
            toff = tgt[(k, j)]
            sign = field.one() if (j * k) % 2 == 0 else field.neg(field.one())
            for x in range(a):
                for y in range(b):
                    M[toff + y * a + x][off + x * b + y] = sign
        comps[i] = Matrix(field, T2.dim(i), T1.dim(i), M)
    return GradedMap(T1, T2, 0, comps)


class GradedMap:
    """A homogeneous map of complexes: per-degree matrix components.

    A degree-t map has one component per degree j with j in the source
    window and t + j in the target window; missing components are zero.
    """

    def __init__(self, source, target, degree, components):
        self.source = source
        self.target = target
        self.degree = degree
        self.components = {}
        for j in source.window.degrees():
            if not target.window.contains(degree + j):
                continue
            m = components.get(j)
            if m is None:
                m = Matrix.zero(source.field, target.dim(degree + j), source.dim(j))
            if m.rows != target.dim(degree + j) or m.cols != source.dim(j):
                raise ShapeMismatch(
                    f"component {j} has shape {m.rows}x{m.cols}, expected "
                    f"{target.dim(degree + j)}x{source.dim(j)}"
                )
            self.components[j] = m
        for j in components:
            if j not in self.components:
                raise ShapeMismatch(f"component at degree {j} outside the admissible range")

    @classmethod
    def zero(cls, source, target, degree):
        return cls(source, target, degree, {})

    @classmethod
    def identity(cls, C):
        return cls(C, C, 0, {j: Matrix.identity(C.field, C.dim(j)) for j in C.window.degrees()})

    def component(self, j):
        m = self.components.get(j)
        if m is None:
            return Matrix.zero(self.source.field, self.target.dim(self.degree + j), self.source.dim(j))
        return m

    def add(self, other):
        if other.source is not self.source and other.source != self.source:
            raise ChainMismatch("adding maps with different sources")
        if other.target is not self.target and other.target != self.target:
            raise ChainMismatch("adding maps with different targets")
        if other.degree != self.degree:
            raise ChainMismatch("adding maps of different degrees")
        return GradedMap(
            self.source, self.target, self.degree,
            {j: self.component(j).add(other.component(j)) for j in self.components},
        )

    def scale(self, c):
        return GradedMap(
            self.source, self.target, self.degree,
            {j: m.scale(c) for j, m in self.components.items()},
        )

    def is_zero(self):
        return all(m.is_zero() for m in self.components.values())

    def __eq__(self, other):
        return (
            isinstance(other, GradedMap)
            and other.degree == self.degree
            and other.source == self.source
            and other.target == self.target
            and all(other.component(j) == self.component(j) for j in self.components)
        )

    def __repr__(self):
        return f"GradedMap(degree={self.degree}, blocks={sorted(self.components)})"


def compose(g, f):
    """Graded composition: (g @ f)^j = g^{deg f + j} @ f^j where both exist."""
    if g.source != f.target:
        raise ChainMismatch("compose: target of f is not source of g")
    degree = f.degree + g.degree
    comps = {}
    for j in f.source.window.degrees():
        if not g.target.window.contains(degree + j):
            continue
        mid = f.degree + j
        if f.components.get(j) is not None and g.components.get(mid) is not None:
            comps[j] = g.components[mid].mul(f.components[j])
    return GradedMap(f.source, g.target, degree, comps)


def apply_partial(f):
    """The Hom-complex differential of a homogeneous map.

    Returns the degree-(t+1) map with components
    d_target^{t+j} @ f^j - (-1)^t f^{j+1} @ d_source^j; blocks that fall
    outside a window contribute zero.
    """
    C, D, t = f.source, f.target, f.degree
    field = C.field
    comps = {}
    for j in C.window.degrees():
        if not D.window.contains(t + 1 + j):
            continue
        acc = Matrix.zero(field, D.dim(t + 1 + j), C.dim(j))
        if D.window.contains(t + j):
            acc = acc.add(D.diff(t + j).mul(f.component(j)))
        if C.window.contains(j + 1) and D.window.contains(t + j + 1):
            term = f.component(j + 1).mul(C.diff(j))
            if t % 2 == 0:
                acc = acc.sub(term)
            else:
                acc = acc.add(term)
        comps[j] = acc
    return GradedMap(C, D, t + 1, comps)


class Block:
    """One labelled block Hom(C^j, D^{t+j}) inside a Hom-complex degree."""

    __slots__ = ("j", "rows", "cols", "offset")

    def __init__(self, j, rows, cols, offset):
        self.j = j
        self.rows = rows
        self.cols = cols
        self.offset = offset

    @property
    def size(self):
        return self.rows * self.cols

    def __repr__(self):
        return f"Block(j={self.j}, {self.rows}x{self.cols} @ {self.offset})"


class HomComplex:
    """The complex of graded maps C -> D, with labelled (j)-blocks per degree.

    The degree-t space is the direct sum over admissible j of
    Hom(C^j, D^{t+j}); each Hom spot is flattened row-major. The block
    labels let later constructions project onto a named block instead of
    guessing offsets.
    """

    def __init__(self, source, target, underlying, blocks):
        self.source = source
        self.target = target
        self.complex = underlying
        self.blocks = blocks

    def block_list(self, t):
        return self.blocks.get(t, [])

    def block_at(self, t, j):
        for b in self.block_list(t):
            if b.j == j:
                return b
        return None

    def vector_of(self, f):
        """Flatten a GradedMap of matching degree into coordinates."""
        if f.source != self.source or f.target != self.target:
            raise ChainMismatch("graded map does not belong to this Hom-complex")
        t = f.degree
        out = []
        for b in self.block_list(t):
            m = f.component(b.j)
            for r in range(b.rows):
                out.extend(m.data[r])
        return out

    def map_of(self, t, vec):
        """Reassemble a coordinate vector at degree t into a GradedMap."""
        if len(vec) != self.complex.dim(t):
            raise ShapeMismatch(f"vector length {len(vec)} != {self.complex.dim(t)}")
        comps = {}
        for b in self.block_list(t):
            rows = []
            for r in range(b.rows):
                start = b.offset + r * b.cols
                rows.append(list(vec[start:start + b.cols]))
            comps[b.j] = Matrix(self.complex.field, b.rows, b.cols, rows)
        return GradedMap(self.source, self.target, t, comps)


def _left_mul_operator(A, cols):
    """Matrix of f -> A @ f on row-major flattened Hom spaces."""
    return A.kron(Matrix.identity(A.field, cols))


def _right_mul_operator(B, rows):
    """Matrix of f -> f @ B on row-major flattened Hom spaces."""
    return Matrix.identity(B.field, rows).kron(B.transpose())


def hom_complex(C, D, max_total=MAX_TOTAL_DIM):
    """The Hom-complex of graded maps C -> D with the twisted differential."""
    if C.field != D.field:
        raise ChainMismatch("Hom between complexes over different fields")
    field = C.field
    window = Window(D.window.lo - C.window.hi, D.window.hi - C.window.lo)
    blocks = {}
    dims = {}
    for t in window.degrees():
        blist = []
        offset = 0
        for j in C.window.degrees():
            if not D.window.contains(t + j):
                continue
            b = Block(j, D.dim(t + j), C.dim(j), offset)
            blist.append(b)
            offset += b.size
        blocks[t] = blist
        dims[t] = offset
    diffs = {}
    minus_one = field.neg(field.one())
    for t in range(window.lo, window.hi):
        src = blocks[t]
        tgt = {b.j: b for b in blocks[t + 1]}
        M = [[field.zero()] * dims[t] for _ in range(dims[t + 1])]
        for b in src:
            j = b.j
            # post-composition d_D^{t+j} @ f^j lands in block j of degree t+1
            if j in tgt and D.window.contains(t + j + 1) and b.size and tgt[j].size:
                op = _left_mul_operator(D.diff(t + j), b.cols)
                _write_block(M, op, tgt[j].offset, b.offset, field)
            # pre-composition -(-1)^t f^j @ d_C^{j-1} lands in block j-1
            if (j - 1) in tgt and C.window.contains(j - 1) and b.size and tgt[j - 1].size:
                op = _right_mul_operator(C.diff(j - 1), b.rows)
                if t % 2 == 0:
                    op = op.scale(minus_one)
                _write_block(M, op, tgt[j - 1].offset, b.offset, field)
        diffs[t] = Matrix(field, dims[t + 1], dims[t], M)
    underlying = make_complex(field, window, dims, diffs, max_total=max_total)
    return HomComplex(C, D, underlying, blocks)


def chain_map_components(F, C, D):
    """Check per-degree matrices F = {i: Matrix} form a chain map C -> D.

    Returns the list of degrees where commutation with the differentials
    fails (empty means chain map on the shared window).
    """
    bad = []
    for i in range(C.window.lo, C.window.hi):
        if i not in F or (i + 1) not in F:
            continue
        if not D.window.contains(i) or not D.window.contains(i + 1):
            continue
        lhs = D.diff(i).mul(F[i])
        rhs = F[i + 1].mul(C.diff(i))
        if lhs != rhs:
            bad.append(i)
    return bad


def cohomology_map(F, C, D, i):
    """The matrix of H^i of a chain map given by per-degree matrices F.

    Expressed from the representative basis of H^i(C) to that of H^i(D).
    """
    dim_c, reps_c = cohomology(C, i)
    dim_d, reps_d = cohomology(D, i)
    bound_d = boundary_space(D, i)
    basis = Matrix.from_cols(D.field, reps_d).hstack(bound_d) if dim_d else bound_d
    solver = LinearSolver(basis)
    cols = []
    for r in reps_c:
        v = F[i].apply(r)
        x = solver.solve(v)
        if x is None:
            raise ChainMismatch(f"image of a cocycle is not a cocycle at degree {i}")
        cols.append(x[:dim_d])
    if not cols:
        return Matrix(D.field, dim_d, 0, [[] for _ in range(dim_d)])
    return Matrix.from_cols(D.field, cols)
