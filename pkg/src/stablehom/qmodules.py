"""Right modules over a finite-dimensional category, as representations.

A right module M assigns a space M(q) to every object and, contravariantly,
a matrix M(y): M(q) -> M(q') to every basis morphism y: q' -> q. Everything
downstream (Hom spaces, covers, syzygies, stable Hom) is linear algebra over
these matrices.

Projective covers are computed by counting top multiplicities, which yields
the minimal cover exactly when End(q) = k . id + radical for every object
(every shape category here). Over other categories (e.g. after tensoring
with a semisimple algebra) the construction still returns a projective
presentation, which is all the stable-Hom and Ext computations need.
"""

import random

from .errors import CategoryMismatch, NotSelfInjective, ShapeMismatch, StablehomError
from .linalg import LinearSolver, Matrix, vec_is_zero, zero_vec
from .presentations import opposite


def op_category(cat):
    """The opposite category, cached so that op(op(C)) is C itself."""
    op = getattr(cat, "_opposite", None)
    if op is None:
        op = opposite(cat)
        op._opposite = cat
        cat._opposite = op
    return op


class Rep:
    """A finite-dimensional right module over an FDCategory.

    spaces: dict object -> dimension. action: dict (u, v, i) -> Matrix of
    shape spaces[u] x spaces[v], the action of the i-th basis morphism of
    Hom(u, v). Missing keys act as zero blocks of the right shape.
    """

    def __init__(self, category, spaces, action, validate=True, name=""):
        self.category = category
        self.spaces = {q: int(spaces.get(q, 0)) for q in category.objects}
        self.action = {}
        for (u, v, i), m in action.items():
            if m.rows != self.spaces[u] or m.cols != self.spaces[v]:
                raise ShapeMismatch(
                    f"action of basis {i} of Hom({u},{v}) has shape "
                    f"{m.rows}x{m.cols}, expected {self.spaces[u]}x{self.spaces[v]}"
                )
            self.action[(u, v, i)] = m
        self.name = name
        if validate:
            err = self.validate()
            if err is not None:
                raise ShapeMismatch(f"action is not functorial: {err}")

    def dim(self, q):
        return self.spaces[q]

    def total_dim(self):
        return sum(self.spaces.values())

    def act(self, u, v, i):
        m = self.action.get((u, v, i))
        if m is None:
            return Matrix.zero(self.category.field, self.spaces[u], self.spaces[v])
        return m

    def act_vector(self, u, v, coeffs):
        """Action of a morphism given by coefficients over the Hom(u,v) basis."""
        f = self.category.field
        out = Matrix.zero(f, self.spaces[u], self.spaces[v])
        for i, c in enumerate(coeffs):
            if not f.is_zero(c):
                out = out.add(self.act(u, v, i).scale(c))
        return out

    def validate(self):
        """Check units act as identities and composition is respected."""
        cat = self.category
        for q in cat.objects:
            if self.act_vector(q, q, cat.identity_vector(q)) != Matrix.identity(cat.field, self.spaces[q]):
                return f"unit at {q}"
        for a in cat.objects:
            for b in cat.objects:
                dab = cat.dim(a, b)
                if dab == 0 or self.spaces[a] + self.spaces[b] == 0:
                    continue
                for c in cat.objects:
                    dbc = cat.dim(b, c)
                    if dbc == 0:
                        continue
                    for fi in range(dab):
                        mf = self.act(a, b, fi)
                        for gi in range(dbc):
                            mg = self.act(b, c, gi)
                            composite = self.act_vector(a, c, cat.compose_basis(a, b, c, gi, fi))
                            if mf.mul(mg) != composite:
                                return f"composition Hom({a},{b})[{fi}] after Hom({b},{c})[{gi}]"
        return None

    def is_zero(self):
        return all(d == 0 for d in self.spaces.values())

    def __repr__(self):
        dims = {q: d for q, d in self.spaces.items() if d}
        return f"Rep({self.name or 'anon'}, dims={dims})"


class RepMap:
    """A natural transformation between representations: one matrix per object."""

    def __init__(self, source, target, components, validate=True, name=""):
        if source.category is not target.category and not source.category.same_category(target.category):
            raise CategoryMismatch("map between modules over different categories")
        self.source = source
        self.target = target
        self.components = {}
        for q in source.category.objects:
            m = components.get(q)
            if m is None:
                m = Matrix.zero(source.category.field, target.spaces[q], source.spaces[q])
            if m.rows != target.spaces[q] or m.cols != source.spaces[q]:
                raise ShapeMismatch(f"component at {q} has shape {m.rows}x{m.cols}")
            self.components[q] = m
        self.name = name
        if validate:
            bad = self.naturality_failure()
            if bad is not None:
                raise ShapeMismatch(f"map is not natural at {bad}")

    def component(self, q):
        return self.components[q]

    def naturality_failure(self):
        cat = self.source.category
        for (u, v, i) in cat.basis_morphisms():
            lhs = self.target.act(u, v, i).mul(self.components[v])
            rhs = self.components[u].mul(self.source.act(u, v, i))
            if lhs != rhs:
                return (u, v, i)
        return None

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, {}, validate=False)

    @classmethod
    def identity(cls, M):
        comps = {q: Matrix.identity(M.category.field, M.spaces[q]) for q in M.category.objects}
        return cls(M, M, comps, validate=False)

    def compose(self, other):
        """self after other."""
        if other.target is not self.source and other.target.spaces != self.source.spaces:
            raise CategoryMismatch("composition of incompatible module maps")
        comps = {q: self.components[q].mul(other.components[q]) for q in self.components}
        return RepMap(other.source, self.target, comps, validate=False)

    def add(self, other):
        comps = {q: self.components[q].add(other.components[q]) for q in self.components}
        return RepMap(self.source, self.target, comps, validate=False)

    def sub(self, other):
        comps = {q: self.components[q].sub(other.components[q]) for q in self.components}
        return RepMap(self.source, self.target, comps, validate=False)

    def scale(self, c):
        comps = {q: m.scale(c) for q, m in self.components.items()}
        return RepMap(self.source, self.target, comps, validate=False)

    def flatten(self):
        """Row-major entries concatenated in object order."""
        out = []
        for q in self.source.category.objects:
            for row in self.components[q].data:
                out.extend(row)
        return out

    def is_zero(self):
        return all(m.is_zero() for m in self.components.values())

    def is_injective(self):
        return all(m.kernel_basis().cols == 0 for m in self.components.values())

    def is_surjective(self):
        return all(m.rank() == m.rows for m in self.components.values())

    def is_isomorphism(self):
        return all(m.is_invertible() for m in self.components.values())

    def __eq__(self, other):
        return isinstance(other, RepMap) and self.components == other.components

    def __repr__(self):
        return f"RepMap({self.name or 'anon'}: {self.source!r} -> {self.target!r})"


def zero_rep(cat):
    return Rep(cat, {}, {}, validate=False, name="0")


def rep_map_from_flat(M, N, flat):
    """Inverse of RepMap.flatten for given source and target."""
    comps = {}
    pos = 0
    field = M.category.field
    for q in M.category.objects:
        r, c = N.spaces[q], M.spaces[q]
        rows = []
        for _ in range(r):
            rows.append([field.of(x) for x in flat[pos:pos + c]])
            pos += c
        comps[q] = Matrix(field, r, c, rows)
    return RepMap(M, N, comps, validate=False)


def hom_space(M, N):
    """A basis of the space of natural transformations M -> N.

    Solves the naturality system N(y) f_q = f_{q'} M(y) over all basis
    morphisms; the result does not depend on basis choices.
    """
    if M.category is not N.category and not M.category.same_category(N.category):
        raise CategoryMismatch("Hom between modules over different categories")
    cat = M.category
    field = cat.field
    offsets = {}
    total = 0
    for q in cat.objects:
        offsets[q] = total
        total += N.spaces[q] * M.spaces[q]
    if total == 0:
        return []
    rows = []
    for (u, v, i) in cat.basis_morphisms():
        nu, nv = N.spaces[u], N.spaces[v]
        mu, mv = M.spaces[u], M.spaces[v]
        if nu * mv == 0:
            continue
        act_n = N.act(u, v, i)
        act_m = M.act(u, v, i)
        # rows indexed by (r, c) entry of the constraint at (u, v, i):
        # sum_s N(y)[r][s] f_v[s][c] - sum_s f_u[r][s] M(y)[s][c] = 0
        for r in range(nu):
            for c in range(mv):
                row = zero_vec(field, total)
                for s in range(nv):
                    coeff = act_n.entry(r, s)
                    if not field.is_zero(coeff):
                        row[offsets[v] + s * mv + c] = field.add(
                            row[offsets[v] + s * mv + c], coeff)
                for s in range(mu):
                    coeff = act_m.entry(s, c)
                    if not field.is_zero(coeff):
                        row[offsets[u] + r * mu + s] = field.sub(
                            row[offsets[u] + r * mu + s], coeff)
                if not vec_is_zero(field, row):
                    rows.append(row)
    if rows:
        constraint = Matrix(field, len(rows), total, rows)
        K = constraint.kernel_basis()
        sols = [K.col(j) for j in range(K.cols)]
    else:
        sols = [c for c in Matrix.identity(field, total).columns()]
    return [rep_map_from_flat(M, N, s) for s in sols]


def representable(cat, q):
    """The representable module Hom(-, q), acting by precomposition."""
    cached = cat._rep_cache.get(q)
    if cached is not None:
        return cached
    spaces = {v: cat.dim(v, q) for v in cat.objects}
    action = {}
    for u in cat.objects:
        for v in cat.objects:
            duv = cat.dim(u, v)
            for i in range(duv):
                # basis morphism y: u -> v sends x in Hom(v, q) to x * y
                cols = [cat.compose_basis(u, v, q, xi, i) for xi in range(cat.dim(v, q))]
                action[(u, v, i)] = Matrix.from_cols(cat.field, cols) if cols else \
                    Matrix.zero(cat.field, spaces[u], spaces[v])
    M = Rep(cat, spaces, action, validate=False, name=f"P({q})")
    cat._rep_cache[q] = M
    return M


def stalk(cat, q):
    """The stalk module: k at q, zero elsewhere; the radical acts by zero."""
    rad = set(cat.radical_indices(q, q))
    if cat.dim(q, q) != 1 + len(rad):
        raise StablehomError(
            f"stalk at {q} needs End({q}) = k.id + radical; got dimension "
            f"{cat.dim(q, q)} with radical rank {len(rad)}"
        )
    field = cat.field
    action = {}
    for i in range(cat.dim(q, q)):
        val = field.zero() if i in rad else field.one()
        action[(q, q, i)] = Matrix(field, 1, 1, [[val]])
    return Rep(cat, {q: 1}, action, name=f"S({q})")


def radical_subspace(M):
    """Per-object basis matrices of the radical submodule M . rad."""
    cat = M.category
    field = cat.field
    out = {}
    for q in cat.objects:
        cols = []
        for v in cat.objects:
            for i in cat.radical_indices(q, v):
                act = M.act(q, v, i)
                cols.extend(act.col(j) for j in range(act.cols))
        stacked = Matrix.from_cols(field, cols) if cols else Matrix(field, M.spaces[q], 0, [[] for _ in range(M.spaces[q])])
        out[q] = stacked.image_basis()
    return out


def top_lifts(M):
    """For each object, vectors of M(q) lifting a basis of the top M / M.rad."""
    cat = M.category
    field = cat.field
    rad = radical_subspace(M)
    lifts = {}
    for q in cat.objects:
        n = M.spaces[q]
        B = rad[q]
        aug = B.hstack(Matrix.identity(field, n)) if n else B
        _, pivots = aug.rref()
        lifts[q] = [Matrix.identity(field, n).col(c - B.cols) for c in pivots if c >= B.cols]
    return lifts


def socle_subspace(M):
    """Per-object basis matrices of the socle (the radical-killed part)."""
    cat = M.category
    field = cat.field
    out = {}
    for q in cat.objects:
        rows = []
        for u in cat.objects:
            for i in cat.radical_indices(u, q):
                rows.extend(M.act(u, q, i).data)
        if rows:
            out[q] = Matrix(field, len(rows), M.spaces[q], [list(r) for r in rows]).kernel_basis()
        else:
            out[q] = Matrix.identity(field, M.spaces[q])
    return out


def direct_sum(cat, parts):
    """Direct sum with inclusion and projection maps per part."""
    field = cat.field
    spaces = {q: sum(p.spaces[q] for p in parts) for q in cat.objects}
    offsets = []
    running = {q: 0 for q in cat.objects}
    for p in parts:
        offsets.append(dict(running))
        for q in cat.objects:
            running[q] += p.spaces[q]
    action = {}
    for (u, v, i) in cat.basis_morphisms():
        if spaces[u] * spaces[v] == 0:
            continue
        block = [[field.zero()] * spaces[v] for _ in range(spaces[u])]
        for p, off in zip(parts, offsets):
            m = p.act(u, v, i)
            for r in range(m.rows):
                for c in range(m.cols):
                    block[off[u] + r][off[v] + c] = m.entry(r, c)
        action[(u, v, i)] = Matrix(field, spaces[u], spaces[v], block)
    total = Rep(cat, spaces, action, validate=False, name="(+)".join(p.name or "?" for p in parts))
    incs, projs = [], []
    for p, off in zip(parts, offsets):
        inc, proj = {}, {}
        for q in cat.objects:
            inc_m = Matrix.zero(field, spaces[q], p.spaces[q])
            proj_m = Matrix.zero(field, p.spaces[q], spaces[q])
            data_i = [list(r) for r in inc_m.data]
            data_p = [list(r) for r in proj_m.data]
            for j in range(p.spaces[q]):
                data_i[off[q] + j][j] = field.one()
                data_p[j][off[q] + j] = field.one()
            inc[q] = Matrix(field, spaces[q], p.spaces[q], data_i)
            proj[q] = Matrix(field, p.spaces[q], spaces[q], data_p)
        incs.append(RepMap(p, total, inc, validate=False))
        projs.append(RepMap(total, p, proj, validate=False))
    return total, incs, projs


def yoneda_map(M, q, w):
    """The map Hom(-, q) -> M classified by w in M(q): y maps to M(y) w."""
    cat = M.category
    P = representable(cat, q)
    comps = {}
    for u in cat.objects:
        cols = [M.act(u, q, i).apply(w) for i in range(cat.dim(u, q))]
        comps[u] = Matrix.from_cols(cat.field, cols) if cols else \
            Matrix.zero(cat.field, M.spaces[u], 0)
    return RepMap(P, M, comps, validate=False)


def projective_cover(M):
    """An epi from a direct sum of representables matching the top of M.

    Returns (P, epi, labels) where labels lists the representing object of
    each summand. Minimal (a genuine projective cover) whenever the category
    is objectwise elementary.
    """
    cat = M.category
    lifts = top_lifts(M)
    parts, labels, vectors = [], [], []
    for q in cat.objects:
        for w in lifts[q]:
            parts.append(representable(cat, q))
            labels.append(q)
            vectors.append((q, w))
    if not parts:
        if not M.is_zero():
            raise StablehomError("nonzero module with zero top")
        P = zero_rep(cat)
        return P, RepMap(P, M, {}, validate=False), []
    P, incs, projs = direct_sum(cat, parts)
    field = cat.field
    comps = {u: Matrix.zero(field, M.spaces[u], P.spaces[u]) for u in cat.objects}
    for (q, w), proj in zip(vectors, projs):
        piece = yoneda_map(M, q, w)
        for u in cat.objects:
            comps[u] = comps[u].add(piece.component(u).mul(proj.component(u)))
    epi = RepMap(P, M, comps, validate=False)
    if not epi.is_surjective():
        raise StablehomError("top lifts failed to generate the module")
    return P, epi, labels


def kernel(f):
    """Kernel subrepresentation with its inclusion."""
    cat = f.source.category
    field = cat.field
    basis = {q: f.component(q).kernel_basis() for q in cat.objects}
    spaces = {q: basis[q].cols for q in cat.objects}
    solvers = {q: LinearSolver(basis[q]) for q in cat.objects}
    action = {}
    for (u, v, i) in cat.basis_morphisms():
        if spaces[u] * spaces[v] == 0:
            continue
        target = f.source.act(u, v, i).mul(basis[v])
        sol = solvers[u].solve_matrix(target)
        if sol is None:
            raise ShapeMismatch("kernel is not a subrepresentation")
        action[(u, v, i)] = sol
    K = Rep(cat, spaces, action, validate=False, name=f"ker({f.name or '?'})")
    incl = RepMap(K, f.source, {q: basis[q] for q in cat.objects}, validate=False)
    return K, incl


def image(f):
    """Image subrepresentation: (I, mono into target, epi from source)."""
    cat = f.source.category
    field = cat.field
    basis = {q: f.component(q).image_basis() for q in cat.objects}
    spaces = {q: basis[q].cols for q in cat.objects}
    solvers = {q: LinearSolver(basis[q]) for q in cat.objects}
    action = {}
    for (u, v, i) in cat.basis_morphisms():
        if spaces[u] * spaces[v] == 0:
            continue
        target = f.target.act(u, v, i).mul(basis[v])
        sol = solvers[u].solve_matrix(target)
        if sol is None:
            raise ShapeMismatch("image is not a subrepresentation")
        action[(u, v, i)] = sol
    I = Rep(cat, spaces, action, validate=False, name=f"im({f.name or '?'})")
    mono = RepMap(I, f.target, {q: basis[q] for q in cat.objects}, validate=False)
    core = {}
    for q in cat.objects:
        sol = solvers[q].solve_matrix(f.component(q))
        if sol is None:
            raise ShapeMismatch("map does not factor through its image")
        core[q] = sol
    epi = RepMap(f.source, I, core, validate=False)
    return I, mono, epi


def cokernel(f):
    """Cokernel with its projection; the section picks complement coordinates."""
    cat = f.source.category
    field = cat.field
    proj_c, sect_c, dims = {}, {}, {}
    for q in cat.objects:
        n = f.target.spaces[q]
        B = f.component(q).image_basis()
        _, pivots = B.transpose().rref()
        pivot_rows = set(pivots)
        free = [r for r in range(n) if r not in pivot_rows]
        E = Matrix.from_cols(field, [Matrix.identity(field, n).col(r) for r in free]) if free \
            else Matrix(field, n, 0, [[] for _ in range(n)])
        full = B.hstack(E)
        inv = full.inverse()
        if inv is None:
            raise ShapeMismatch("complement choice failed")
        proj_c[q] = Matrix(field, len(free), n, inv.data[B.cols:]) if n else Matrix(field, 0, 0, [])
        sect_c[q] = E
        dims[q] = len(free)
    action = {}
    for (u, v, i) in cat.basis_morphisms():
        if dims[u] * dims[v] == 0:
            continue
        action[(u, v, i)] = proj_c[u].mul(f.target.act(u, v, i)).mul(sect_c[v])
    C = Rep(cat, dims, action, validate=False, name=f"coker({f.name or '?'})")
    proj = RepMap(f.target, C, proj_c, validate=False)
    return C, proj


def dual(M):
    """The dual module over the opposite category (transposed actions)."""
    cat = M.category
    op = op_category(cat)
    action = {}
    for u in op.objects:
        for v in op.objects:
            for i in range(op.dim(u, v)):
                action[(u, v, i)] = M.act(v, u, i).transpose()
    return Rep(op, dict(M.spaces), action, validate=False, name=f"D({M.name or '?'})")


def dual_map(f):
    """Contravariant dual of a module map: D(f): D(target) -> D(source)."""
    DN = dual(f.target)
    DM = dual(f.source)
    comps = {q: f.component(q).transpose() for q in f.source.category.objects}
    return RepMap(DN, DM, comps, validate=False)


def injective_envelope(M):
    """A mono into an injective hull, computed by dualizing a cover.

    Requires a self-injective category; the hull is normalized to a literal
    direct sum of representables via the iso given by its own cover.
    Returns (I, mono, labels).
    """
    ok, witness = check_self_injective(M.category)
    if not ok:
        raise NotSelfInjective(witness)
    DM = dual(M)
    P_op, epi_op, _ = projective_cover(DM)
    I_raw = dual(P_op)
    mono_raw_comps = {q: epi_op.component(q).transpose() for q in M.category.objects}
    mono_raw = RepMap(M, I_raw, mono_raw_comps, validate=False)
    # normalize: the cover of an injective=projective module is an iso
    P, epi, labels = projective_cover(I_raw)
    inv = {q: epi.component(q).inverse() for q in M.category.objects}
    if any(v is None for v in inv.values()):
        raise NotSelfInjective(message="injective hull is not projective")
    iso = RepMap(I_raw, P, inv, validate=False)
    mono = iso.compose(mono_raw)
    if not mono.is_injective():
        raise ShapeMismatch("envelope map failed to be injective")
    return P, mono, labels


def syzygy(M):
    """Kernel of the projective cover: (Omega, inclusion, P, epi)."""
    P, epi, _ = projective_cover(M)
    Om, incl = kernel(epi)
    return Om, incl, P, epi


def cosyzygy(M):
    """Cokernel of the injective envelope: (Omega^{-1}, projection, I, mono)."""
    I, mono, _ = injective_envelope(M)
    C, proj = cokernel(mono)
    return C, proj, I, mono


def _factoring_rank(through_maps, hom_basis):
    """Rank of the span of through_maps inside the span of hom_basis."""
    if not through_maps:
        return 0
    field = through_maps[0].source.category.field
    cols = [g.flatten() for g in through_maps]
    return Matrix.from_cols(field, cols).rank()


def stable_hom(M, N):
    """Hom(M, N) modulo maps factoring through a projective.

    The factoring test uses postcomposition with a projective epi onto N:
    any map through any projective lifts along it. Returns
    (dimension, coset representative basis).
    """
    basis = hom_space(M, N)
    P, epi, _ = projective_cover(N)
    through = [epi.compose(g) for g in hom_space(M, P)]
    field = M.category.field
    img_cols = [g.flatten() for g in through]
    rank = Matrix.from_cols(field, img_cols).rank() if img_cols else 0
    dim = len(basis) - rank
    reps = []
    if dim:
        stacked = Matrix.from_cols(field, img_cols + [h.flatten() for h in basis])
        _, pivots = stacked.rref()
        reps = [basis[c - len(img_cols)] for c in pivots if c >= len(img_cols)]
    return dim, reps


def stable_hom_via_injective(M, N):
    """Cross-check: quotient by maps factoring through the injective hull of M."""
    basis = hom_space(M, N)
    I, mono, _ = injective_envelope(M)
    through = [g.compose(mono) for g in hom_space(I, N)]
    field = M.category.field
    img_cols = [g.flatten() for g in through]
    rank = Matrix.from_cols(field, img_cols).rank() if img_cols else 0
    return len(basis) - rank


def ext1(M, N):
    """dim Ext^1(M, N) from the projective presentation of M."""
    if M.category is not N.category and not M.category.same_category(N.category):
        raise CategoryMismatch("Ext between modules over different categories")
    Om, incl, P, _ = syzygy(M)
    hom_pn = hom_space(P, N)
    hom_on = hom_space(Om, N)
    restricted = [g.compose(incl).flatten() for g in hom_pn]
    field = M.category.field
    rank = Matrix.from_cols(field, restricted).rank() if restricted else 0
    return len(hom_on) - rank


def check_self_injective(cat):
    """Whether every representable is injective: Ext^1(S_q', P_q) = 0 for all.

    Returns (bool, witness) where witness is the first failing pair
    (stalk object, representable object). Cached on the category.
    """
    if cat._self_injective is not None:
        return cat._self_injective
    if not cat.is_objectwise_elementary():
        raise StablehomError("self-injectivity test requires an objectwise elementary category")
    result = (True, None)
    for q2 in cat.objects:
        S = stalk(cat, q2)
        for q in cat.objects:
            if ext1(S, representable(cat, q)) != 0:
                result = (False, (q2, q))
                break
        if not result[0]:
            break
    cat._self_injective = result
    return result


def tensor_rep(T, M):
    """Extend scalars: the (A (x) Q)-module A (x) M with basis pairs A-major.

    Action of b (x) y: a (x) m maps to ab (x) M(y)(m); the matrix is the
    Kronecker product of right multiplication by b with M(y).
    """
    A, Q = T.tensor_factors
    if M.category is not Q and not M.category.same_category(Q):
        raise CategoryMismatch("module is not over the base factor of the tensor category")
    star = A.objects[0]
    dA = A.dim(star, star)
    field = T.field
    rmult = {}
    for bi in range(dA):
        cols = [A.compose_basis(star, star, star, s, bi) for s in range(dA)]
        rmult[bi] = Matrix.from_cols(field, cols)
    spaces = {q: dA * M.spaces[q] for q in Q.objects}
    action = {}
    for u in Q.objects:
        for v in Q.objects:
            dq = Q.dim(u, v)
            for bi in range(dA):
                for yi in range(dq):
                    action[(u, v, bi * dq + yi)] = rmult[bi].kron(M.act(u, v, yi))
    return Rep(T, spaces, action, validate=False, name=f"A⊗{M.name or '?'}")


def tensor_rep_map(T, f):
    """Extend scalars on a module map: identity of A Kronecker each component."""
    A, _ = T.tensor_factors
    star = A.objects[0]
    dA = A.dim(star, star)
    field = T.field
    src = tensor_rep(T, f.source)
    tgt = tensor_rep(T, f.target)
    eye = Matrix.identity(field, dA)
    comps = {q: eye.kron(f.component(q)) for q in f.source.category.objects}
    return RepMap(src, tgt, comps, validate=False)


def is_isomorphic(M, N, rng=None, trials=30):
    """Randomized isomorphism search with certificate.

    A True answer always carries an invertible RepMap. False means no
    isomorphism was found: certain when dimension vectors differ, otherwise
    heuristic with failure probability roughly (dim/|field|)^trials.
    """
    if M.category is not N.category and not M.category.same_category(N.category):
        raise CategoryMismatch("isomorphism test across categories")
    if M.spaces != N.spaces:
        return False, None
    if M.is_zero():
        return True, RepMap.zero(M, N)
    basis = hom_space(M, N)
    if not basis:
        return False, None
    for f in basis:
        if f.is_isomorphism():
            return True, f
    field = M.category.field
    acc = basis[0]
    for f in basis[1:]:
        acc = acc.add(f)
    if acc.is_isomorphism():
        return True, acc
    rng = rng or random.Random(2024)
    for _ in range(trials):
        cand = None
        for f in basis:
            g = f.scale(field.random(rng))
            cand = g if cand is None else cand.add(g)
        if cand is not None and cand.is_isomorphism():
            return True, cand
    return False, None
