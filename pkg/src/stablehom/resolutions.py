"""Windowed complete projective resolutions over self-injective categories.

The resolution of X is spliced from the minimal projective resolution in
degrees <= 0 (iterated covers) and the minimal injective coresolution in
degrees >= 1 (iterated envelopes; injectives are projectives here), with

    d^0 = (X into P^1) after (P^0 onto X).

X is the image of d^0 and, more generally, the i-th syzygy is the image of
the differential at degree -i. Every component is stored as a literal direct
sum of representables together with the multiset of representing objects, so
that periodicity is observable on labels.
"""

from .errors import EdgeDegree, NotSelfInjective, WindowTooSmall
from .linalg import LinearSolver, Matrix
from .complexes import Window
from .qmodules import (
    Rep,
    RepMap,
    check_self_injective,
    cokernel,
    direct_sum,
    image,
    injective_envelope,
    kernel,
    projective_cover,
    radical_subspace,
    representable,
    tensor_rep,
    tensor_rep_map,
    zero_rep,
)


class CompleteResolution:
    """A windowed complete resolution of ``base`` with syzygy accessors.

    comps[i] (lo <= i <= hi) are direct sums of representables with summand
    labels[i]; diffs[i]: comps[i] -> comps[i+1] for lo <= i < hi; p0 is the
    augmentation epi comps[0] -> base.
    """

    def __init__(self, category, base, window, comps, labels, diffs, p0,
                 omegas, degenerate=False):
        self.category = category
        self.base = base
        self.window = window
        self.comps = comps
        self.labels = labels
        self.diffs = diffs
        self.p0 = p0
        self._omegas = omegas
        self.degenerate = degenerate

    def component(self, i):
        return self.comps[i]

    def diff(self, i):
        return self.diffs[i]

    def omega(self, i):
        """The i-th syzygy: image of the degree -i differential, with its
        inclusion into the component at degree -i + 1."""
        if i in self._omegas:
            return self._omegas[i]
        if -i not in self.diffs:
            raise EdgeDegree(f"syzygy index {i} needs degree {-i} inside {self.window}")
        I, mono, _ = image(self.diffs[-i])
        self._omegas[i] = (I, mono)
        return self._omegas[i]

    def omega_range(self):
        return range(1 - self.window.hi, -self.window.lo + 1)

    def validate(self):
        """Re-verify the structural invariants; returns a failure or None."""
        cat = self.category
        w = self.window
        for i in range(w.lo, w.hi - 1):
            comp = self.diffs[i + 1].compose(self.diffs[i])
            if not comp.is_zero():
                return ("square", i)
        for i in range(w.lo + 1, w.hi):
            for u in cat.objects:
                r1 = self.diffs[i - 1].component(u).rank()
                r2 = self.diffs[i].component(u).rank()
                if r1 + r2 != self.comps[i].spaces[u]:
                    return ("exactness", i, u)
        for i in w.degrees():
            expected = _sum_of_representables(cat, self.labels[i])
            if expected.spaces != self.comps[i].spaces:
                return ("labels", i)
            for key in set(expected.action) | set(self.comps[i].action):
                if expected.act(*key) != self.comps[i].act(*key):
                    return ("labels", i)
        if not self.degenerate:
            for i in range(w.lo, w.hi):
                rad = radical_subspace(self.comps[i + 1])
                for u in cat.objects:
                    solver = LinearSolver(rad[u])
                    d = self.diffs[i].component(u)
                    for j in range(d.cols):
                        if not solver.contains(d.col(j)):
                            return ("minimality", i, u)
        return None

    def __repr__(self):
        lbl = {i: self.labels[i] for i in self.window.degrees()}
        return f"CompleteResolution({self.base.name or '?'}, window={self.window}, labels={lbl})"


def _sum_of_representables(cat, labels):
    if not labels:
        return zero_rep(cat)
    total, _, _ = direct_sum(cat, [representable(cat, q) for q in labels])
    return total


def complete_resolution(X, window):
    """Build the windowed complete resolution of X by covers and envelopes.

    Requires a self-injective, objectwise elementary category and a window
    containing [-1, 1].
    """
    cat = X.category
    ok, witness = check_self_injective(cat)
    if not ok:
        raise NotSelfInjective(witness)
    if isinstance(window, tuple):
        window = Window(*window)
    if window.lo > -1 or window.hi < 1:
        raise WindowTooSmall(f"window {window} must contain [-1, 1]")

    comps, labels, diffs, omegas = {}, {}, {}, {}

    P0, e0, lab0 = projective_cover(X)
    comps[0], labels[0] = P0, lab0

    # degrees <= 0: iterated covers of kernels
    current_epi = e0          # comps[-m + 1] onto Omega^{m - 1}
    for m in range(1, -window.lo + 1):
        K, incl = kernel(current_epi)
        omegas[m] = (K, incl)  # inclusion into comps[-m + 1]
        P, e, lab = projective_cover(K)
        comps[-m], labels[-m] = P, lab
        diffs[-m] = incl.compose(e)
        current_epi = e

    # degrees >= 1: iterated envelopes of cokernels
    I1, mono1, lab1 = injective_envelope(X)
    comps[1], labels[1] = I1, lab1
    diffs[0] = mono1.compose(e0)
    omegas[0] = (X, mono1)
    current_mono = mono1
    for m in range(1, window.hi):
        C, proj = cokernel(current_mono)
        I, mono, lab = injective_envelope(C)
        comps[m + 1], labels[m + 1] = I, lab
        diffs[m] = mono.compose(proj)
        omegas[-m] = (C, mono)
        current_mono = mono

    degenerate = omegas[1][0].is_zero()

    res = CompleteResolution(cat, X, window, comps, labels, diffs, e0,
                             omegas, degenerate=degenerate)
    failure = res.validate()
    if failure is not None:
        raise NotSelfInjective(message=f"resolution invariant failed: {failure}")
    return res


def _interleave_permutation(T, base_parts_dims, u):
    """Permutation matrix from A (x) (concat of parts) to concat of (A (x) part).

    base_parts_dims: list of the part dimensions at object u; the A index is
    major on both sides, globally on the source and per part on the target.
    """
    A, _ = T.tensor_factors
    star = A.objects[0]
    dA = A.dim(star, star)
    total = sum(base_parts_dims)
    field = T.field
    n = dA * total
    data = [[field.zero()] * n for _ in range(n)]
    part_offsets = []
    acc = 0
    for d in base_parts_dims:
        part_offsets.append(acc)
        acc += d
    tgt_offsets = []
    acc = 0
    for d in base_parts_dims:
        tgt_offsets.append(acc)
        acc += dA * d
    for t, d in enumerate(base_parts_dims):
        for s in range(dA):
            for j in range(d):
                src = s * total + part_offsets[t] + j
                tgt = tgt_offsets[t] + s * d + j
                data[tgt][src] = field.one()
    return Matrix(field, n, n, data)


def tensor_resolution(T, R):
    """Extend scalars along A: components become direct sums of tensor-side
    representables and the differentials are 1_A (x) d, conjugated by the
    interleaving permutation that restores summand order.

    Returns the resolution together with per-degree permutation maps from the
    plain scalar extension of each component to the relabelled component
    (stored on the result as ``tensor_structure``).
    """
    A, Q = T.tensor_factors
    cat = R.category
    if cat is not Q and not cat.same_category(Q):
        raise NotSelfInjective(message="resolution is not over the base factor")
    window = R.window
    comps, labels, diffs = {}, {}, {}
    perms = {}
    for i in window.degrees():
        labels[i] = list(R.labels[i])
        comps[i] = _sum_of_representables(T, labels[i])
        plain = tensor_rep(T, R.comps[i])
        parts_dims = {u: [representable(Q, q).spaces[u] for q in labels[i]] for u in Q.objects}
        perm_comps = {u: _interleave_permutation(T, parts_dims[u], u) for u in Q.objects}
        perms[i] = RepMap(plain, comps[i], perm_comps, validate=False)
    for i in range(window.lo, window.hi):
        plain_d = tensor_rep_map(T, R.diffs[i])
        inv = {u: perms[i].component(u).transpose() for u in Q.objects}
        comp = {
            u: perms[i + 1].component(u).mul(plain_d.component(u)).mul(inv[u])
            for u in Q.objects
        }
        diffs[i] = RepMap(comps[i], comps[i + 1], comp, validate=False)
    base = tensor_rep(T, R.base)
    plain_p0 = tensor_rep_map(T, R.p0)
    p0 = RepMap(
        comps[0], base,
        {u: plain_p0.component(u).mul(perms[0].component(u).transpose()) for u in Q.objects},
        validate=False,
    )
    res = CompleteResolution(T, base, window, comps, labels, diffs, p0, {},
                             degenerate=R.degenerate)
    res.tensor_structure = perms
    failure = res.validate()
    if failure is not None:
        raise NotSelfInjective(message=f"tensored resolution invariant failed: {failure}")
    return res
