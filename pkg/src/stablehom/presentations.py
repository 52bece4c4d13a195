"""Finite-dimensional categories presented by quivers with admissible relations.

A path is written in application order: the list ``[a, b]`` means "a then b",
i.e. the composite b * a. All composition tables store g      f (second argument
applied first), and a path's label renders in composition order ("b*a").

The morphism basis of a presented category consists of the standard monomials:
paths that are not leading terms of the relation ideal, computed by linear
algebra on truncated path spaces length by length. Identities and arrows are
always standard since admissible relations only involve paths of length >= 2.
"""

from dataclasses import dataclass

from .errors import BoundTooSmall, NotAdmissible, ResourceLimit, ShapeMismatch
from .linalg import zero_vec

#: Cap on the number of paths enumerated while presenting a category.
MAX_PATHS = 200_000


@dataclass(frozen=True)
class ArrowDecl:
    name: str
    source: str
    target: str


class QuiverPresentation:
    """A quiver with admissible relations and a nilpotency bound.

    relations: list of relations, each a list of (coefficient, path) terms
    where path is a tuple of arrow names in application order. Coefficients
    are ints or Fractions and are coerced into the ground field later.
    """

    def __init__(self, vertices, arrows, relations, path_length_bound):
        self.vertices = list(vertices)
        self.arrows = [a if isinstance(a, ArrowDecl) else ArrowDecl(*a) for a in arrows]
        self.relations = [[(c, tuple(p)) for (c, p) in rel] for rel in relations]
        self.path_length_bound = path_length_bound
        self._validate()

    def _validate(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise NotAdmissible("duplicate vertex names")
        names = set()
        by_name = {}
        for a in self.arrows:
            if a.name in names:
                raise NotAdmissible(f"duplicate arrow name {a.name!r}")
            names.add(a.name)
            if a.source not in self.vertices or a.target not in self.vertices:
                raise NotAdmissible(f"arrow {a.name!r} has unknown endpoints")
            by_name[a.name] = a
        if self.path_length_bound < 0:
            raise NotAdmissible("path length bound must be non-negative")
        for rel in self.relations:
            if not rel:
                raise NotAdmissible("empty relation")
            ends = None
            for (_, path) in rel:
                if len(path) < 2:
                    raise NotAdmissible(f"relation term {path} has length < 2")
                for n in path:
                    if n not in by_name:
                        raise NotAdmissible(f"relation references unknown arrow {n!r}")
                for x, y in zip(path, path[1:]):
                    if by_name[x].target != by_name[y].source:
                        raise NotAdmissible(f"relation path {path} is not composable")
                here = (by_name[path[0]].source, by_name[path[-1]].target)
                if ends is None:
                    ends = here
                elif ends != here:
                    raise NotAdmissible("relation mixes paths with different endpoints")

    def arrow(self, name):
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)


class _Path:
    __slots__ = ("source", "target", "names")

    def __init__(self, source, target, names):
        self.source = source
        self.target = target
        self.names = names

    def __len__(self):
        return len(self.names)

    def key(self):
        # longer paths first so that relation pivots prefer them and the
        # surviving standard monomials are the short paths
        return (-len(self.names), self.names)


def path_label(names, source):
    """Human-readable label: identities as e_q, paths in composition order."""
    if not names:
        return f"e_{source}"
    return "*".join(reversed(names))


class FDCategory:
    """A finite-dimensional category with chosen morphism bases.

    hom_basis[(q, q')]: ordered basis labels of Hom(q, q').
    comp[(q, q', q'')][gi][fi]: coefficient vector of the composite g * f
        over the basis of Hom(q, q''), for g in Hom(q', q''), f in Hom(q, q').
    unit[q]: coefficient vector of the identity in Hom(q, q).
    radical[(q, q')]: indices of the basis elements spanning the radical.
    """

    def __init__(self, field, objects, hom_basis, comp, unit, radical, name=""):
        self.field = field
        self.objects = list(objects)
        self.hom_basis = hom_basis
        self.comp = comp
        self.unit = unit
        self.radical = radical
        self.name = name
        self._rep_cache = {}
        self._self_injective = None

    def dim(self, q, q2):
        return len(self.hom_basis.get((q, q2), []))

    def labels(self, q, q2):
        return self.hom_basis.get((q, q2), [])

    def total_dim(self):
        return sum(len(v) for v in self.hom_basis.values())

    @property
    def single_object(self):
        return len(self.objects) == 1

    def compose_basis(self, q, q2, q3, gi, fi):
        """Coefficients of (basis gi of Hom(q2,q3)) * (basis fi of Hom(q,q2))."""
        table = self.comp.get((q, q2, q3))
        if table is None:
            return zero_vec(self.field, self.dim(q, q3))
        return table[gi][fi]

    def compose_vectors(self, q, q2, q3, gvec, fvec):
        """Bilinear extension of compose_basis."""
        f = self.field
        out = zero_vec(f, self.dim(q, q3))
        for gi, gc in enumerate(gvec):
            if f.is_zero(gc):
                continue
            for fi, fc in enumerate(fvec):
                if f.is_zero(fc):
                    continue
                c = f.mul(gc, fc)
                for k, v in enumerate(self.compose_basis(q, q2, q3, gi, fi)):
                    out[k] = f.add(out[k], f.mul(c, v))
        return out

    def identity_vector(self, q):
        return list(self.unit[q])

    def radical_indices(self, q, q2):
        return self.radical.get((q, q2), [])

    def basis_morphisms(self):
        """Yield (source, target, index) for every basis morphism."""
        for q in self.objects:
            for q2 in self.objects:
                for i in range(self.dim(q, q2)):
                    yield (q, q2, i)

    def is_objectwise_elementary(self):
        """Whether End(q) = k . id + radical for every object q."""
        return all(
            self.dim(q, q) - len(self.radical_indices(q, q)) == 1 for q in self.objects
        )

    def check_associativity(self):
        """Exhaustive associativity check; returns a violating tuple or None."""
        f = self.field
        for a in self.objects:
            for b in self.objects:
                for c in self.objects:
                    for d in self.objects:
                        for fi in range(self.dim(a, b)):
                            fvec = _unit_vec(f, self.dim(a, b), fi)
                            for gi in range(self.dim(b, c)):
                                gvec = _unit_vec(f, self.dim(b, c), gi)
                                for hi in range(self.dim(c, d)):
                                    hvec = _unit_vec(f, self.dim(c, d), hi)
                                    hg = self.compose_vectors(b, c, d, hvec, gvec)
                                    gf = self.compose_vectors(a, b, c, gvec, fvec)
                                    lhs = self.compose_vectors(a, b, d, hg, fvec)
                                    rhs = self.compose_vectors(a, c, d, hvec, gf)
                                    if lhs != rhs:
                                        return (a, b, c, d, fi, gi, hi)
        return None

    def check_units(self):
        """Two-sided identity check; returns a violating tuple or None."""
        f = self.field
        for (q, q2), basis in self.hom_basis.items():
            for i in range(len(basis)):
                v = _unit_vec(f, len(basis), i)
                left = self.compose_vectors(q, q2, q2, self.identity_vector(q2), v)
                right = self.compose_vectors(q, q, q2, v, self.identity_vector(q))
                if left != v or right != v:
                    return (q, q2, i)
        return None

    def same_category(self, other):
        return self is other or (
            self.field == other.field
            and self.objects == other.objects
            and self.hom_basis == other.hom_basis
            and self.comp == other.comp
            and self.unit == other.unit
        )

    def __repr__(self):
        dims = {k: len(v) for k, v in self.hom_basis.items() if v}
        return f"FDCategory({self.name or 'anon'}, objects={self.objects}, dims={dims})"


def _unit_vec(field, n, i):
    v = zero_vec(field, n)
    v[i] = field.one()
    return v


class _Echelon:
    """Fully reduced echelon basis of sparse path vectors, per (q, q') block.

    Vectors are dicts path-names-tuple -> coefficient; the pivot of a vector
    is its smallest coordinate under the (longest first, then lexicographic)
    order, so standard monomials come out as the short surviving paths.
    """

    def __init__(self, field):
        self.field = field
        self.rows = {}  # pivot names-tuple -> normalized vector

    @staticmethod
    def _key(names):
        return (-len(names), names)

    def reduce(self, vec):
        f = self.field
        vec = {k: v for k, v in vec.items() if not f.is_zero(v)}
        while vec:
            pivot = min(vec, key=self._key)
            row = self.rows.get(pivot)
            if row is None:
                return vec, pivot
            c = vec[pivot]
            for k, v in row.items():
                nv = f.sub(vec.get(k, f.zero()), f.mul(c, v))
                if f.is_zero(nv):
                    vec.pop(k, None)
                else:
                    vec[k] = nv
        return {}, None

    def insert(self, vec):
        """Reduce and, if nonzero, add to the basis. Returns True if added."""
        f = self.field
        rem, pivot = self.reduce(vec)
        if not rem:
            return False
        inv = f.inv(rem[pivot])
        rem = {k: f.mul(inv, v) for k, v in rem.items()}
        # keep the basis fully reduced
        for p, row in self.rows.items():
            if pivot in row:
                c = row[pivot]
                for k, v in rem.items():
                    nv = f.sub(row.get(k, f.zero()), f.mul(c, v))
                    if f.is_zero(nv):
                        row.pop(k, None)
                    else:
                        row[k] = nv
        self.rows[pivot] = rem
        return True

    def contains(self, vec):
        rem, _ = self.reduce(dict(vec))
        return not rem


def present(presentation, field):
    """Present the category: morphism bases, composition tables, radical.

    Paths are enumerated up to length bound + 1; the relation ideal is closed
    under composition with arrows inside the truncated path spaces, and the
    construction fails with BoundTooSmall if any path of maximal length
    survives (the presented category may then be infinite-dimensional).
    """
    p = presentation
    B = p.path_length_bound
    by_source = {}
    for a in p.arrows:
        by_source.setdefault(a.source, []).append(a)

    paths = {v: [_Path(v, v, ())] for v in p.vertices}
    frontier = {v: [_Path(v, v, ())] for v in p.vertices}
    count = len(p.vertices)
    for _ in range(B + 1):
        new_frontier = {v: [] for v in p.vertices}
        for v in p.vertices:
            for path in frontier[v]:
                for a in by_source.get(path.target, []):
                    np = _Path(v, a.target, path.names + (a.name,))
                    new_frontier[v].append(np)
                    paths[v].append(np)
                    count += 1
                    if count > MAX_PATHS:
                        raise ResourceLimit(f"more than {MAX_PATHS} paths enumerated")
        frontier = new_frontier

    by_block = {}
    for v in p.vertices:
        for path in paths[v]:
            by_block.setdefault((path.source, path.target), []).append(path)

    # ideal closure inside the truncation at length bound + 1
    ech = {block: _Echelon(field) for block in by_block}
    work = []
    for rel in p.relations:
        vec = {}
        block = None
        for (c, names) in rel:
            if len(names) > B + 1:
                continue  # dies in the truncation
            a0, a1 = p.arrow(names[0]), p.arrow(names[-1])
            block = (a0.source, a1.target)
            vec[names] = field.add(vec.get(names, field.zero()), field.of(c))
        if block is not None and vec:
            work.append((block, vec))

    arrows_by_target = {}
    for a in p.arrows:
        arrows_by_target.setdefault(a.target, []).append(a)

    while work:
        block, vec = work.pop()
        if block not in ech or not ech[block].insert(vec):
            continue
        src, tgt = block
        # post-compose: path then arrow out of tgt
        for a in by_source.get(tgt, []):
            nv = {names + (a.name,): c for names, c in vec.items() if len(names) < B + 1}
            if nv:
                work.append(((src, a.target), nv))
        # pre-compose: arrow into src, then path
        for a in arrows_by_target.get(src, []):
            nv = {(a.name,) + names: c for names, c in vec.items() if len(names) < B + 1}
            if nv:
                work.append(((a.source, tgt), nv))

    # nilpotency within the bound: every maximal-length path must die
    for block, plist in by_block.items():
        for path in plist:
            if len(path) == B + 1 and not ech[block].contains({path.names: field.one()}):
                raise BoundTooSmall(path_label(path.names, path.source))

    # standard monomials: non-pivot paths of length <= bound
    hom_basis = {}
    basis_names = {}
    for q in p.vertices:
        for q2 in p.vertices:
            block = (q, q2)
            plist = by_block.get(block, [])
            pivots = set(ech[block].rows) if block in ech else set()
            std = [path for path in plist if len(path) <= B and path.names not in pivots]
            std.sort(key=lambda path: (len(path), path.names))
            basis_names[block] = [path.names for path in std]
            hom_basis[block] = [path_label(path.names, q) for path in std]

    index_of = {
        block: {names: i for i, names in enumerate(namelist)}
        for block, namelist in basis_names.items()
    }

    def reduce_to_basis(block, vec):
        rem, _ = ech[block].reduce(dict(vec)) if block in ech else (dict(vec), None)
        out = zero_vec(field, len(basis_names[block]))
        for names, c in rem.items():
            if len(names) > B:
                raise ShapeMismatch("reduction left a path beyond the bound")
            out[index_of[block][names]] = c
        return out

    comp = {}
    for q in p.vertices:
        for q2 in p.vertices:
            fb = basis_names[(q, q2)]
            if not fb:
                continue
            for q3 in p.vertices:
                gb = basis_names[(q2, q3)]
                if not gb:
                    continue
                table = []
                for gnames in gb:
                    row = []
                    for fnames in fb:
                        names = fnames + gnames  # f applied first
                        if len(names) > B + 1:
                            row.append(zero_vec(field, len(basis_names[(q, q3)])))
                        else:
                            row.append(reduce_to_basis((q, q3), {names: field.one()}))
                    table.append(row)
                comp[(q, q2, q3)] = table

    unit = {}
    radical = {}
    for q in p.vertices:
        unit[q] = _unit_vec(field, len(basis_names[(q, q)]), index_of[(q, q)][()])
    for block, namelist in basis_names.items():
        radical[block] = [i for i, names in enumerate(namelist) if len(names) >= 1]

    cat = FDCategory(field, p.vertices, hom_basis, comp, unit, radical, name="presented")
    cat.presentation = p
    return cat


def tensor_with_algebra(A, Q):
    """The category A (x) Q for a single-object A: same objects as Q,
    Hom(q, q') = A (x) Q(q, q'), composition (b (x) y)(a (x) x) = ba (x) yx.

    Basis pairs are ordered with the A index major, matching the module-level
    tensor construction so that A (x) Q(-, q) is literally the representable.
    """
    if not A.single_object:
        raise ShapeMismatch("tensor algebra factor must have a single object")
    if A.field != Q.field:
        raise ShapeMismatch("tensor factors over different fields")
    field = Q.field
    star = A.objects[0]
    dA = A.dim(star, star)
    a_labels = A.labels(star, star)
    a_rad = set(A.radical_indices(star, star))

    hom_basis = {}
    radical = {}
    for (q, q2), labels in Q.hom_basis.items():
        pairs = [f"{la}⊗{lx}" for la in a_labels for lx in labels]
        hom_basis[(q, q2)] = pairs
        q_rad = set(Q.radical_indices(q, q2))
        radical[(q, q2)] = [
            i * len(labels) + j
            for i in range(dA)
            for j in range(len(labels))
            if i in a_rad or j in q_rad
        ]

    comp = {}
    for (q, q2, q3), table in Q.comp.items():
        dq12, dq23, dq13 = Q.dim(q, q2), Q.dim(q2, q3), Q.dim(q, q3)
        if dq12 == 0 or dq23 == 0:
            continue
        atable = A.comp[(star, star, star)]
        new = []
        for bi in range(dA):
            for yi in range(dq23):
                row = []
                for ai in range(dA):
                    for xi in range(dq12):
                        avec = atable[bi][ai]  # b * a over A basis
                        qvec = table[yi][xi]   # y * x over Q basis
                        out = zero_vec(field, dA * dq13)
                        for i, ac in enumerate(avec):
                            if field.is_zero(ac):
                                continue
                            for j, qc in enumerate(qvec):
                                if field.is_zero(qc):
                                    continue
                                out[i * dq13 + j] = field.mul(ac, qc)
                        row.append(out)
                new.append(row)
        comp[(q, q2, q3)] = new

    unit = {}
    ua = A.identity_vector(star)
    for q in Q.objects:
        uq = Q.identity_vector(q)
        d = Q.dim(q, q)
        vec = zero_vec(field, dA * d)
        for i, ac in enumerate(ua):
            for j, qc in enumerate(uq):
                vec[i * d + j] = field.mul(ac, qc)
        unit[q] = vec

    cat = FDCategory(field, Q.objects, hom_basis, comp, unit, radical,
                     name=f"{A.name or 'A'}⊗{Q.name or 'Q'}")
    cat.tensor_factors = (A, Q)
    return cat


def opposite(C):
    """The opposite category: Hom(q, q') of the result is Hom(q', q) of the
    input with reversed composition. An involution on the stored tables."""
    hom_basis = {(q, q2): list(C.hom_basis.get((q2, q), [])) for q in C.objects for q2 in C.objects}
    radical = {(q, q2): list(C.radical_indices(q2, q)) for q in C.objects for q2 in C.objects}
    comp = {}
    for q in C.objects:
        for q2 in C.objects:
            for q3 in C.objects:
                # g in Hom_op(q2,q3) = Hom(q3,q2); f in Hom_op(q,q2) = Hom(q2,q)
                # g *_op f := f * g in C, landing in Hom(q3, q) = Hom_op(q, q3)
                table = C.comp.get((q3, q2, q))
                if table is None:
                    continue
                d_g = C.dim(q3, q2)
                d_f = C.dim(q2, q)
                comp[(q, q2, q3)] = [
                    [table[fi][gi] for fi in range(d_f)] for gi in range(d_g)
                ]
    cat = FDCategory(C.field, C.objects, hom_basis, comp, dict(C.unit), radical,
                     name=f"{C.name or 'C'}^op")
    return cat


def collapse_to_algebra(C, object_name="*"):
    """Collapse a category to the single-object algebra of all its morphisms.

    The result has one object whose endomorphism basis is the disjoint union
    of the Hom bases of C (blocks compose to zero when the endpoints do not
    match) and whose unit is the sum of the identities. This is how
    non-local algebras such as k x k enter: present them on several vertices
    and collapse.
    """
    if C.single_object:
        return C
    field = C.field
    layout = []  # (q, q2, local index) in deterministic order
    offset = {}
    for q in C.objects:
        for q2 in C.objects:
            offset[(q, q2)] = len(layout)
            for i in range(C.dim(q, q2)):
                layout.append((q, q2, i))
    n = len(layout)
    labels = [f"{C.hom_basis[(q, q2)][i]}[{q}>{q2}]" for (q, q2, i) in layout]

    table = []
    for (gq, gq2, gi) in layout:
        row = []
        for (fq, fq2, fi) in layout:
            out = zero_vec(field, n)
            if fq2 == gq:  # composable: f: fq -> fq2, g: gq -> gq2
                vec = C.compose_basis(fq, gq, gq2, gi, fi)
                base = offset[(fq, gq2)]
                for k, c in enumerate(vec):
                    out[base + k] = c
            row.append(out)
        table.append(row)

    unit = zero_vec(field, n)
    for q in C.objects:
        base = offset[(q, q)]
        for k, c in enumerate(C.identity_vector(q)):
            unit[base + k] = field.add(unit[base + k], c)

    radical = []
    for (q, q2, i) in layout:
        if i in set(C.radical_indices(q, q2)):
            radical.append(offset[(q, q2)] + i)

    cat = FDCategory(
        field, [object_name],
        {(object_name, object_name): labels},
        {(object_name, object_name, object_name): table},
        {object_name: unit},
        {(object_name, object_name): sorted(radical)},
        name=f"alg({C.name or 'C'})",
    )
    return cat
