"""Bialgebroids over a finite-dimensional base and their comodule algebras.

A bialgebroid is an algebra A anchored over a base algebra R (an algebra
map s and an antialgebra map t with commuting images) together with a
coproduct into the centralizer subspace of A (x)_R A and a counit with
values in End(R).  Comodule algebras carry a three-leg coaction into
A (x)_R M (x)_R' A' and compose by an equalizer of the two one-sided
coactions; the unit laws of that composition split explicitly, which is
what check_unit_splitting verifies.

All structure maps are stored as raw matrices on the unquotiented tensor
spaces.  Checks that are only meaningful on quotient classes compare
after the chain projection, and the raw-representative checks carry a
perturbation guard so a representative-dependent answer is reported
rather than silently accepted.
"""

from __future__ import annotations

from .exactlin import Matrix, Subspace, corestrict, hstack, kernel_subspace
from .report import Report
from .takeuchi import (DoubleModule, FDAlgebra, TensorChain, end_element,
                       envelope_bimodule, induced_chain_map, t0)


def _decode_end(field, col, d):
    """Operator matrix from its t0 coordinates (row-major)."""
    return Matrix(field, [[col.rows[k * d + l][0] for l in range(d)]
                          for k in range(d)], d)


def pair_product(alg1, alg2, u, v):
    """Product of two vectors of alg1 (x) alg2 without the 4-fold matrix.

    Writing u as a (dim alg1) x (dim alg2) coefficient grid, each grid
    row contributes one sandwich L1_a * V * L2(u_a)^T, which keeps the
    cost at a few dim-sized matrix products instead of dim^4 ones.
    """
    d1, d2 = alg1.dim, alg2.dim
    f = alg1.field
    vmat = Matrix(f, [[v.rows[a * d2 + b][0] for b in range(d2)]
                      for a in range(d1)], d2)
    out = Matrix.zeros(f, d1, d2)
    for a in range(d1):
        row = [u.rows[a * d2 + b][0] for b in range(d2)]
        if not any(row):
            continue
        right = alg2.left_mult(Matrix.column(f, row)).transpose()
        out = out + alg1._left[a] * vmat * right
    return Matrix.column(f, [out.rows[a][b]
                             for a in range(d1) for b in range(d2)])


class Bialgebroid:
    """An algebra A over base R with coproduct into A x_R A and counit in End(R).

    delta is a raw matrix A -> A (x) A; its columns are representatives
    whose classes must land in the centralizer subspace.  epsilon is a
    (dim R)^2 x (dim A) matrix whose columns are t0 coordinates of the
    operators eps(a).  Nothing is validated on construction.
    """

    __slots__ = ("base", "total", "s_map", "t_map", "delta", "epsilon", "name",
                 "object_index", "morphism_index")

    def __init__(self, base, total, s_map, t_map, delta, epsilon, name="bialgebroid"):
        d, r = total.dim, base.dim
        if (s_map.nrows, s_map.ncols) != (d, r) or (t_map.nrows, t_map.ncols) != (d, r):
            raise ValueError("anchor maps must be (dim A) x (dim R)")
        if (delta.nrows, delta.ncols) != (d * d, d):
            raise ValueError("coproduct must be (dim A)^2 x (dim A)")
        if (epsilon.nrows, epsilon.ncols) != (r * r, d):
            raise ValueError("counit must be (dim R)^2 x (dim A)")
        self.base = base
        self.total = total
        self.s_map = s_map
        self.t_map = t_map
        self.delta = delta
        self.epsilon = epsilon
        self.name = name
        # filled in by the category linearization, None elsewhere
        self.object_index = None
        self.morphism_index = None

    @property
    def field(self):
        return self.base.field

    def module(self):
        return DoubleModule.anchored(self.base, self.base, self.total,
                                     self.s_map, self.t_map)

    def epsilon_operator(self, j):
        """eps(e_j) as an operator matrix on the base."""
        return _decode_end(self.field, self.epsilon.column_vector(j), self.base.dim)

    def epsilon_at_unit(self):
        """(dim R) x (dim A) matrix of eps(e_j)(1_R)."""
        one = self.base.unit_vector()
        cols = [(self.epsilon_operator(j) * one).entries()
                for j in range(self.total.dim)]
        return Matrix.from_columns(self.field, cols, self.base.dim)

    def same_as(self, other):
        return (isinstance(other, Bialgebroid)
                and self.base == other.base and self.total == other.total
                and self.s_map == other.s_map and self.t_map == other.t_map
                and self.delta == other.delta and self.epsilon == other.epsilon)

    def __repr__(self):
        return "Bialgebroid(%s: dim %d over %s)" % (
            self.name, self.total.dim, self.base.name)


def _anchor_report(rep, base, total, s_map, t_map, antihom_base=None):
    """Shared anchor check: s a unital map, t a unital antimap, images commute."""
    sb = antihom_base if antihom_base is not None else base
    bad = []
    one = total.unit_vector()
    if not s_map * base.unit_vector() == one:
        bad.append("s(1) != 1")
    if not t_map * sb.unit_vector() == one:
        bad.append("t(1) != 1")
    for i in range(base.dim):
        for j in range(base.dim):
            lhs = total.product(s_map.column_vector(i), s_map.column_vector(j))
            rhs = s_map * base.product(base.basis_vector(i), base.basis_vector(j))
            if not lhs == rhs:
                bad.append(("s not multiplicative", i, j))
    for i in range(sb.dim):
        for j in range(sb.dim):
            lhs = total.product(t_map.column_vector(i), t_map.column_vector(j))
            rhs = t_map * sb.product(sb.basis_vector(j), sb.basis_vector(i))
            if not lhs == rhs:
                bad.append(("t not antimultiplicative", i, j))
    for i in range(base.dim):
        for j in range(sb.dim):
            s_i, t_j = s_map.column_vector(i), t_map.column_vector(j)
            if not total.product(s_i, t_j) == total.product(t_j, s_i):
                bad.append(("anchor images do not commute", i, j))
    return rep.add("anchor maps are a unital algebra map and antimap with "
                   "commuting images", not bad, witness=bad[:3])


def _kernel_shift(chain):
    """A fixed nonzero element of ker(total projection), or None.

    Adding it to a representative changes the representative but not the
    class, which is how the representative-independence guards work.
    """
    ker = kernel_subspace(chain.total_proj)
    if not ker.dim:
        return None
    incl = ker.inclusion()
    shift = incl.column_vector(0)
    for i in range(1, ker.dim):
        shift = shift + incl.column_vector(i)
    return shift


def _perturb(mat, shift):
    if shift is None:
        return mat
    cols = [(mat.column_vector(j) + shift).entries() for j in range(mat.ncols)]
    return Matrix.from_columns(mat.field, cols, mat.nrows)


def left_counit_contraction(bgd, mod_alg=None, s_map=None):
    """Raw matrix A (x) X -> X for a (x) x -> s_X(eps(a)(1)) x.

    X defaults to A itself, which is the left counit diagram; comodules
    pass their own carrier and anchor.
    """
    if mod_alg is None:
        mod_alg, s_map = bgd.total, bgd.s_map
    eps1 = bgd.epsilon_at_unit()
    blocks = [mod_alg.left_mult(s_map * eps1.column_vector(a))
              for a in range(bgd.total.dim)]
    return hstack(blocks)


def right_counit_contraction(bgd, mod_alg=None, t_map=None):
    """Raw matrix X (x) A -> X for x (x) a -> t_X(eps(a)(1)) x."""
    if mod_alg is None:
        mod_alg, t_map = bgd.total, bgd.t_map
    eps1 = bgd.epsilon_at_unit()
    d, da = mod_alg.dim, bgd.total.dim
    tmats = [mod_alg.left_mult(t_map * eps1.column_vector(a))
             for a in range(da)]
    cols = [(tmats[a] * mod_alg.basis_vector(j)).entries()
            for j in range(d) for a in range(da)]
    return Matrix.from_columns(bgd.field, cols, d)


def check_bialgebroid(b):
    """Itemized axiom report; failures carry witnesses, never exceptions."""
    rep = Report("bialgebroid %s" % b.name)
    A, R = b.total, b.base
    d = A.dim
    if not _anchor_report(rep, R, A, b.s_map, b.t_map):
        return rep
    amod = b.module()
    i_d = Matrix.identity(b.field, d)

    chain2 = TensorChain([amod, amod])
    q2 = chain2.total_proj
    delta_q = q2 * b.delta
    rep.add("coproduct lands in the product subspace",
            all(chain2.subspace.contains(delta_q.column_vector(j)) for j in range(d)))

    bad = []
    for fam, outer in (("lro", [(m @ i_d) for m in amod.lro]),
                       ("rro", [(m @ i_d) for m in amod.rro]),
                       ("ls", [(i_d @ m) for m in amod.ls]),
                       ("rs", [(i_d @ m) for m in amod.rs])):
        own = getattr(amod, fam)
        for i, (inner, out) in enumerate(zip(own, outer)):
            if not q2 * b.delta * inner == q2 * out * b.delta:
                bad.append((fam, i))
    rep.add("coproduct is a module map", not bad, witness=bad[:3])

    chain3 = TensorChain([amod, amod, amod])
    route1 = chain3.total_proj * ((b.delta @ i_d) * b.delta)
    route2 = chain3.total_proj * ((i_d @ b.delta) * b.delta)
    rep.add("coassociativity (the two flattened routes agree)", route1 == route2)

    T0 = t0(R)
    bad = []
    # the anchor actions on A land on the opposite slot of End(R): right
    # multiplication by s(u) becomes precomposition with u, and so on
    for fam, paired in (("lro", "rs"), ("ls", "rro"), ("rro", "ls"), ("rs", "lro")):
        for i, (inner, outer) in enumerate(zip(getattr(amod, fam), getattr(T0, paired))):
            if not b.epsilon * inner == outer * b.epsilon:
                bad.append((fam, i))
    rep.add("counit is a module map", not bad, witness=bad[:3])

    c_left = left_counit_contraction(b)
    c_right = right_counit_contraction(b)
    rep.add("left counit diagram", c_left * b.delta == i_d)
    rep.add("right counit diagram", c_right * b.delta == i_d)
    shift = _kernel_shift(chain2)
    pert = _perturb(b.delta, shift)
    rep.add("counit diagrams are representative independent",
            c_left * pert == c_left * b.delta
            and c_right * pert == c_right * b.delta)

    # representative-wise product on the subspace
    reps = chain2.total_section * chain2.embed
    closed, stable = True, True
    products = {}
    for i in range(chain2.dim):
        for j in range(chain2.dim):
            w = pair_product(A, A, reps.column_vector(i), reps.column_vector(j))
            cls = q2 * w
            products[(i, j)] = cls
            if not chain2.subspace.contains(cls):
                closed = False
    rep.add("subspace is closed under the representative product", closed)
    if shift is not None and closed:
        for i in range(chain2.dim):
            u = reps.column_vector(i) + shift
            for j in range(chain2.dim):
                w = pair_product(A, A, u, reps.column_vector(j) + shift)
                if not q2 * w == products[(i, j)]:
                    stable = False
    rep.add("subspace product is representative independent", stable)

    bad = []
    for i in range(d):
        for j in range(d):
            lhs = delta_q * A.product(A.basis_vector(i), A.basis_vector(j))
            rhs = q2 * pair_product(A, A, b.delta.column_vector(i),
                                    b.delta.column_vector(j))
            if not lhs == rhs:
                bad.append((i, j))
    rep.add("coproduct is multiplicative", not bad, witness=bad[:3])
    one = A.unit_vector()
    one_pair = Matrix.column(b.field, [one.rows[p][0] * one.rows[q][0]
                                       for p in range(d) for q in range(d)])
    rep.add("coproduct preserves the unit", delta_q * one == q2 * one_pair)

    bad = []
    for i in range(d):
        for j in range(d):
            lhs = _decode_end(b.field, b.epsilon * A.product(
                A.basis_vector(i), A.basis_vector(j)), R.dim)
            rhs = b.epsilon_operator(i) * b.epsilon_operator(j)
            if not lhs == rhs:
                bad.append((i, j))
    rep.add("counit is multiplicative", not bad, witness=bad[:3])
    rep.add("counit preserves the unit",
            _decode_end(b.field, b.epsilon * one, R.dim).is_identity())

    rep.stats["base_dim"] = R.dim
    rep.stats["total_dim"] = d
    rep.stats["product_subspace_dim"] = chain2.dim
    return rep


# -- stock bialgebroids ---------------------------------------------------

def group_bialgebra(field, n):
    """kZ/n over the ground field: delta(g) = g (x) g, eps(g) = 1."""
    A = FDAlgebra.cyclic_group_algebra(field, n)
    k = FDAlgebra.field_algebra(field)
    unit_col = A.unit_vector()
    zero = field.zero
    cols = []
    for j in range(n):
        col = [zero] * (n * n)
        col[j * n + j] = field.one
        cols.append(col)
    delta = Matrix.from_columns(field, cols, n * n)
    epsilon = Matrix(field, [[field.one] * n], n)
    return Bialgebroid(k, A, unit_col, unit_col, delta, epsilon,
                       name="k[Z/%d]" % n)


def envelope_bialgebroid(r_alg):
    """The canonical bialgebroid on R (x) R° with the factorized coproduct."""
    _, A, s_map, t_map = envelope_bimodule(r_alg)
    d, dr = A.dim, r_alg.dim
    f = r_alg.field
    cols = []
    for i in range(dr):
        for j in range(dr):
            x1 = s_map.column_vector(i)
            x2 = t_map.column_vector(j)
            cols.append([x1.rows[p][0] * x2.rows[q][0]
                         for p in range(d) for q in range(d)])
    delta = Matrix.from_columns(f, cols, d * d)
    eps_cols = []
    for i in range(dr):
        for j in range(dr):
            op = r_alg.left_mult(r_alg.basis_vector(i)) \
                * r_alg.right_mult(r_alg.basis_vector(j))
            eps_cols.append(end_element(r_alg, op).entries())
    epsilon = Matrix.from_columns(f, eps_cols, dr * dr)
    return Bialgebroid(r_alg, A, s_map, t_map, delta, epsilon,
                       name="%s^e" % r_alg.name)


def linearize_category_dual(cat, field):
    """Function-dual bialgebroid of a finite category.

    The carrier is k^(morphisms) with pointwise product; the coproduct
    sums over factorizations of each morphism and the counit picks out
    identities.  The base is k^(objects).
    """
    obs = list(cat.objects)
    mors = list(cat.morphisms)
    o_at = {x: i for i, x in enumerate(obs)}
    m_at = {h: i for i, h in enumerate(mors)}
    no, nm = len(obs), len(mors)
    R = FDAlgebra.split(field, no)
    A = FDAlgebra.split(field, nm)
    zero, one = field.zero, field.one

    s_cols = [[one if cat.src[h] == x else zero for h in mors] for x in obs]
    t_cols = [[one if cat.tgt[h] == x else zero for h in mors] for x in obs]
    s_map = Matrix.from_columns(field, s_cols, nm)
    t_map = Matrix.from_columns(field, t_cols, nm)

    d_cols = [[zero] * (nm * nm) for _ in range(nm)]
    for (g, f), h in cat.comp.items():
        d_cols[m_at[h]][m_at[f] * nm + m_at[g]] = one
    delta = Matrix.from_columns(field, d_cols, nm * nm)

    e_cols = [[zero] * (no * no) for _ in range(nm)]
    for x in obs:
        i = o_at[x]
        e_cols[m_at[cat.identity[x]]][i * no + i] = one
    epsilon = Matrix.from_columns(field, e_cols, no * no)
    out = Bialgebroid(R, A, s_map, t_map, delta, epsilon,
                      name="k^%d-category" % nm)
    out.object_index = o_at
    out.morphism_index = m_at
    return out


# -- comodule algebras ----------------------------------------------------

class ComoduleAlgebra:
    """An algebra M between two bialgebroids with a three-leg coaction.

    delta is a raw matrix M -> A (x) M (x) A' whose column classes must
    land in the triple product subspace.  Anchors play the same role as
    for the bialgebroid itself.
    """

    __slots__ = ("left_bgd", "right_bgd", "total", "s_map", "t_map",
                 "delta", "name", "into_raw", "pair_chain", "element_index")

    def __init__(self, left_bgd, right_bgd, total, s_map, t_map, delta,
                 name="comodule"):
        d = total.dim
        da, db = left_bgd.total.dim, right_bgd.total.dim
        if (delta.nrows, delta.ncols) != (da * d * db, d):
            raise ValueError("coaction must be (dim A)(dim M)(dim A') x (dim M)")
        self.left_bgd = left_bgd
        self.right_bgd = right_bgd
        self.total = total
        self.s_map = s_map
        self.t_map = t_map
        self.delta = delta
        self.name = name
        self.into_raw = None
        self.pair_chain = None
        self.element_index = None

    @property
    def field(self):
        return self.total.field

    def module(self):
        return DoubleModule.anchored(self.left_bgd.base, self.right_bgd.base,
                                     self.total, self.s_map, self.t_map)

    def __repr__(self):
        return "ComoduleAlgebra(%s: dim %d, %s -> %s)" % (
            self.name, self.total.dim, self.left_bgd.name, self.right_bgd.name)


def unit_comodule(bgd):
    """A as a comodule over itself, with the iterated coproduct."""
    d = bgd.total.dim
    i_d = Matrix.identity(bgd.field, d)
    delta3 = (bgd.delta @ i_d) * bgd.delta
    return ComoduleAlgebra(bgd, bgd, bgd.total, bgd.s_map, bgd.t_map,
                           delta3, name="unit %s" % bgd.name)


def one_sided_coactions(m):
    """The two one-sided legs (delta_l: M -> A (x) M, delta_r: M -> M (x) A').

    Each is the full coaction with the far factor contracted away through
    the counit and the unit contraction; both are raw representatives.
    """
    da = m.left_bgd.total.dim
    db = m.right_bgd.total.dim
    d = m.total.dim
    f = m.field
    c_r = right_counit_contraction(m.right_bgd, m.total, m.t_map)
    dl = (Matrix.identity(f, da) @ c_r) * m.delta
    c_l = left_counit_contraction(m.left_bgd, m.total, m.s_map)
    dr = (c_l @ Matrix.identity(f, db)) * m.delta
    return dl, dr


def check_comodule_algebra(m):
    """Axiom report: landing, module map, coassociativity, counit, algebra map."""
    rep = Report("comodule algebra %s" % m.name)
    A, B = m.left_bgd, m.right_bgd
    M = m.total
    d, da, db = M.dim, A.total.dim, B.total.dim
    f = m.field
    if not _anchor_report(rep, A.base, M, m.s_map, m.t_map, antihom_base=B.base):
        return rep
    mmod = m.module()
    amod, bmod = A.module(), B.module()
    i_a, i_m, i_b = (Matrix.identity(f, da), Matrix.identity(f, d),
                     Matrix.identity(f, db))

    chain3 = TensorChain([amod, mmod, bmod])
    q3 = chain3.total_proj
    delta_q = q3 * m.delta
    rep.add("coaction lands in the product subspace",
            all(chain3.subspace.contains(delta_q.column_vector(j)) for j in range(d)))

    bad = []
    for fam, outer_tabs, mid in (("lro", amod.lro, True), ("rro", amod.rro, True),
                                 ("ls", bmod.ls, False), ("rs", bmod.rs, False)):
        own = getattr(mmod, fam)
        for i, (inner, tab) in enumerate(zip(own, outer_tabs)):
            out = (tab @ i_m @ i_b) if mid else (i_a @ i_m @ tab)
            if not q3 * m.delta * inner == q3 * out * m.delta:
                bad.append((fam, i))
    rep.add("coaction is a module map", not bad, witness=bad[:3])

    chain5 = TensorChain([amod, amod, mmod, bmod, bmod])
    inner_route = chain5.total_proj * ((i_a @ m.delta @ i_b) * m.delta)
    outer_route = chain5.total_proj * ((A.delta @ i_m @ B.delta) * m.delta)
    rep.add("coassociativity (inner and outer routes agree)",
            inner_route == outer_route)

    c_l = left_counit_contraction(A, M, m.s_map)
    c_r = right_counit_contraction(B, M, m.t_map)
    counit = c_l * (Matrix.identity(f, da) @ c_r) * m.delta
    rep.add("counit triangle", counit == i_m)
    shift = _kernel_shift(chain3)
    pert = _perturb(m.delta, shift)
    rep.add("counit triangle is representative independent",
            c_l * (Matrix.identity(f, da) @ c_r) * pert == counit)

    bad = []
    triple = _TripleProduct(A.total, M, B.total)
    for i in range(d):
        for j in range(d):
            lhs = delta_q * M.product(M.basis_vector(i), M.basis_vector(j))
            rhs = q3 * triple.product(m.delta.column_vector(i),
                                      m.delta.column_vector(j))
            if not lhs == rhs:
                bad.append((i, j))
    rep.add("coaction is multiplicative", not bad, witness=bad[:3])
    one = M.unit_vector()
    ones = [A.total.unit_vector(), one, B.total.unit_vector()]
    triple_one = Matrix.column(f, [
        ones[0].rows[p][0] * ones[1].rows[q][0] * ones[2].rows[r][0]
        for p in range(da) for q in range(d) for r in range(db)])
    rep.add("coaction preserves the unit", delta_q * one == q3 * triple_one)
    rep.stats["total_dim"] = d
    rep.stats["coaction_subspace_dim"] = chain3.dim
    return rep


class _TripleProduct:
    """Componentwise product on A (x) M (x) B vectors, evaluated lazily."""

    def __init__(self, a, m, b):
        self.a, self.m, self.b = a, m, b
        self.dm, self.db = m.dim, b.dim

    def product(self, u, v):
        a, m, b = self.a, self.m, self.b
        da, dm, db = a.dim, self.dm, self.db
        f = a.field
        out = [f.zero] * (da * dm * db)
        for i in range(da * dm * db):
            c = u.rows[i][0]
            if not c:
                continue
            p, rest = divmod(i, dm * db)
            q, r = divmod(rest, db)
            for i2 in range(da * dm * db):
                c2 = v.rows[i2][0]
                if not c2:
                    continue
                p2, rest2 = divmod(i2, dm * db)
                q2, r2 = divmod(rest2, db)
                pa = a.mult[p][p2]
                pm = m.mult[q][q2]
                pb = b.mult[r][r2]
                cc = c * c2
                for x in range(da):
                    if not pa[x]:
                        continue
                    for y in range(dm):
                        if not pm[y]:
                            continue
                        cxy = cc * pa[x] * pm[y]
                        for z in range(db):
                            if pb[z]:
                                out[(x * dm + y) * db + z] = \
                                    out[(x * dm + y) * db + z] + cxy * pb[z]
        return Matrix.column(f, out)


def check_comodule_map(fmat, src, dst):
    """Does a linear map respect coactions, products, and units."""
    rep = Report("comodule map")
    if not (src.left_bgd.same_as(dst.left_bgd)
            and src.right_bgd.same_as(dst.right_bgd)):
        rep.add("endpoints match", False,
                witness="source and target comodules live over different bialgebroids")
        return rep
    rep.add("endpoints match", True)
    f = src.field
    da = src.left_bgd.total.dim
    db = src.right_bgd.total.dim
    chain = TensorChain([src.left_bgd.module(), dst.module(),
                         src.right_bgd.module()])
    q3 = chain.total_proj
    moved = (Matrix.identity(f, da) @ fmat @ Matrix.identity(f, db)) * src.delta
    rep.add("respects the coactions", q3 * moved == q3 * dst.delta * fmat)
    bad = []
    for i in range(src.total.dim):
        for j in range(src.total.dim):
            lhs = fmat * src.total.product(src.total.basis_vector(i),
                                           src.total.basis_vector(j))
            rhs = dst.total.product(fmat.column_vector(i), fmat.column_vector(j))
            if not lhs == rhs:
                bad.append((i, j))
    rep.add("multiplicative", not bad, witness=bad[:3])
    rep.add("preserves the unit",
            fmat * src.total.unit_vector() == dst.total.unit_vector())
    return rep


def _submodule_tables(mod, sub):
    incl = sub.inclusion()
    cut = lambda tabs: [corestrict(t * incl, sub) for t in tabs]
    return DoubleModule(mod.r_alg, mod.s_alg, sub.dim,
                        cut(mod.lro), cut(mod.ls), cut(mod.rro), cut(mod.rs))


def _composition_equalizer(m1, m2):
    """Shared first half of compose: the pair chain and the equalizer."""
    if not m1.right_bgd.same_as(m2.left_bgd):
        raise ValueError("endpoint mismatch: the middle bialgebroids differ")
    x1, x2 = m1.module(), m2.module()
    P = TensorChain([x1, x2])
    mid = m1.right_bgd.module()
    legs_chain = TensorChain([x1, mid, x2])
    _, dr1 = one_sided_coactions(m1)
    dl2, _ = one_sided_coactions(m2)
    f = m1.field
    leg1 = dr1 @ Matrix.identity(f, m2.total.dim)
    leg2 = Matrix.identity(f, m1.total.dim) @ dl2
    reps = P.total_section * P.embed
    diff = legs_chain.total_proj * (leg1 - leg2) * reps
    esub = kernel_subspace(diff)
    return P, esub


def compose_dimension(m1, m2):
    """dim of the composite, skipping the induced structure (fast path)."""
    _, esub = _composition_equalizer(m1, m2)
    return esub.dim


def compose_modules(m1, m2):
    """The composite comodule algebra: equalizer of the one-sided coactions.

    Carries the induced representative-wise algebra structure and the
    outer coaction obtained by factoring the pair of remaining legs
    through the inclusion of the equalizer.
    """
    P, esub = _composition_equalizer(m1, m2)
    f = m1.field
    M1, M2 = m1.total, m2.total
    d1, d2 = M1.dim, M2.dim
    into_raw = P.total_section * P.embed * esub.inclusion()
    e_dim = esub.dim
    q2 = P.total_proj

    def to_e(raw_vec):
        cls = q2 * raw_vec
        sub_coords = P.subspace.coordinates(cls)
        if sub_coords is None:
            raise ValueError("composition product left the centralizer subspace")
        e_coords = esub.coordinates(sub_coords)
        if e_coords is None:
            raise ValueError("composition product left the equalizer")
        return e_coords

    mult = [[None] * e_dim for _ in range(e_dim)]
    for i in range(e_dim):
        for j in range(e_dim):
            w = pair_product(M1, M2, into_raw.column_vector(i),
                             into_raw.column_vector(j))
            mult[i][j] = to_e(w).entries()
    one1, one2 = M1.unit_vector(), M2.unit_vector()
    pair_one = Matrix.column(f, [one1.rows[p][0] * one2.rows[q][0]
                                 for p in range(d1) for q in range(d2)])
    unit = to_e(pair_one).entries()
    total = FDAlgebra(f, e_dim, unit, mult,
                      name="%s*%s" % (m1.name, m2.name))

    r1, r3 = m1.left_bgd.base, m2.right_bgd.base
    s_cols, t_cols = [], []
    for i in range(r1.dim):
        sv = m1.s_map.column_vector(i)
        vec = Matrix.column(f, [sv.rows[p][0] * one2.rows[q][0]
                                for p in range(d1) for q in range(d2)])
        s_cols.append(to_e(vec).entries())
    for i in range(r3.dim):
        tv = m2.t_map.column_vector(i)
        vec = Matrix.column(f, [one1.rows[p][0] * tv.rows[q][0]
                                for p in range(d1) for q in range(d2)])
        t_cols.append(to_e(vec).entries())
    s_map = Matrix.from_columns(f, s_cols, e_dim)
    t_map = Matrix.from_columns(f, t_cols, e_dim)

    # outer coaction: push the two outer legs through the equalizer inclusion
    a1mod = m1.left_bgd.module()
    a3mod = m2.right_bgd.module()
    da1, da3 = m1.left_bgd.total.dim, m2.right_bgd.total.dim
    p_mod = DoubleModule(r1, r3, P.flat_dim, P.outer["lro"], P.outer["ls"],
                         P.outer["rro"], P.outer["rs"])
    e_mod = _submodule_tables(_submodule_tables(p_mod, P.subspace), esub)
    big_chain = TensorChain([a1mod, p_mod, a3mod])
    e_chain = TensorChain([a1mod, e_mod, a3mod])
    dl1, _ = one_sided_coactions(m1)
    _, dr2 = one_sided_coactions(m2)
    raw4 = dl1 @ dr2
    mid_proj = Matrix.identity(f, da1) @ q2 @ Matrix.identity(f, da3)
    w = big_chain.total_proj * mid_proj * raw4 * into_raw
    w_sub = corestrict(w, big_chain.subspace)
    incl_mid = P.embed * esub.inclusion()
    j_map = induced_chain_map(
        [Matrix.identity(f, da1), incl_mid, Matrix.identity(f, da3)],
        e_chain, big_chain)
    delta_sub = j_map.solve(w_sub)
    if delta_sub is None or not j_map * delta_sub == w_sub:
        raise ValueError("composite coaction failed to factor through the equalizer")
    delta_raw = e_chain.total_section * e_chain.embed * delta_sub

    out = ComoduleAlgebra(m1.left_bgd, m2.right_bgd, total, s_map, t_map,
                          delta_raw, name="%s*%s" % (m1.name, m2.name))
    out.into_raw = into_raw
    out.pair_chain = P
    return out


def check_unit_splitting(bgd, m):
    """The three identities that split the unit composition A * M = M."""
    if not m.left_bgd.same_as(bgd):
        raise ValueError("endpoint mismatch: the comodule is not over this bialgebroid")
    rep = Report("unit splitting for %s" % m.name)
    f = m.field
    A, M = bgd.total, m.total
    da, d = A.dim, M.dim
    dl, _ = one_sided_coactions(m)
    c = left_counit_contraction(bgd, M, m.s_map)              # A (x) M -> M
    g = left_counit_contraction(bgd)            # A (x) A -> A
    h = g @ Matrix.identity(f, d)                            # A(x)A(x)M -> A(x)M
    i_am = Matrix.identity(f, da * d)
    rep.add("retraction after the coaction is the identity",
            c * dl == Matrix.identity(f, d))
    rep.add("contraction after the coproduct leg is the identity",
            h * (bgd.delta @ Matrix.identity(f, d)) == i_am)
    chain2 = TensorChain([bgd.module(), m.module()])
    q2 = chain2.total_proj
    lhs = q2 * (h * (Matrix.identity(f, da) @ dl))
    rhs = q2 * (dl * c)
    rep.add("contraction after the coaction leg equals the split projector",
            lhs == rhs)
    rep.stats["module_dim"] = d
    return rep


# -- associativity of the composition -------------------------------------

def associator_isomorphism(m1, m2, m3):
    """The canonical iso (M1*M2)*M3 -> M1*(M2*M3) through the flat product.

    Expanding both equalizer inclusions lands either bracketing in the
    classes of the flat three-factor chain; the isomorphism is the unique
    change of coordinates matching the two embeddings there.  Returns
    (iso, left, right); failure to solve exactly or to invert raises.
    """
    m12 = compose_modules(m1, m2)
    m23 = compose_modules(m2, m3)
    left = compose_modules(m12, m3)
    right = compose_modules(m1, m23)
    f = m1.field
    flat = TensorChain([m1.module(), m2.module(), m3.module()])
    i1 = Matrix.identity(f, m1.total.dim)
    i3 = Matrix.identity(f, m3.total.dim)
    iota_left = flat.total_proj * (m12.into_raw @ i3) * left.into_raw
    iota_right = flat.total_proj * (i1 @ m23.into_raw) * right.into_raw
    sol = iota_right.solve(iota_left)
    if sol is None or not iota_right * sol == iota_left:
        raise ValueError("the two bracketings do not meet in the flat product")
    if left.total.dim != right.total.dim or sol.rank() != left.total.dim:
        raise ValueError("the re-association map is not invertible")
    return sol, left, right


# -- profunctor linearization ----------------------------------------------

def linearize_profunctor(p, field, left=None, right=None):
    """Function-dual comodule algebra of a profunctor.

    The coaction of k^P sums over all ways of peeling a morphism action
    off each side of an element; composing two linearizations then has
    the Set-level composite's cardinality as its dimension.
    """
    if left is None:
        left = linearize_category_dual(p.source, field)
    if right is None:
        right = linearize_category_dual(p.target, field)
    els = list(p.elements)
    e_at = {e: i for i, e in enumerate(els)}
    n = len(els)
    nu, nv = len(p.source.morphisms), len(p.target.morphisms)
    u_at = left.morphism_index
    v_at = right.morphism_index
    zero, one = field.zero, field.one
    M = FDAlgebra.split(field, n)

    s_cols = [[one if p.src_obj[e] == x else zero for e in els]
              for x in p.source.objects]
    t_cols = [[one if p.tgt_obj[e] == x else zero for e in els]
              for x in p.target.objects]
    s_map = Matrix.from_columns(field, s_cols, n)
    t_map = Matrix.from_columns(field, t_cols, n)

    cols = [[zero] * (nu * n * nv) for _ in range(n)]
    for e in els:
        for u in p.left_applicable(e):
            ue = p.act_left(u, e)
            for v in p.right_applicable(ue):
                target = p.act_right(ue, v)
                idx = (u_at[u] * n + e_at[e]) * nv + v_at[v]
                cols[e_at[target]][idx] = one
    delta = Matrix.from_columns(field, cols, nu * n * nv)
    out = ComoduleAlgebra(left, right, M, s_map, t_map, delta,
                          name="k^%d-profunctor" % n)
    out.element_index = e_at
    return out


# -- random instances -------------------------------------------------------

def twisted_group_comodule(field, n, a, b):
    """kZ/n with the coaction g -> g^a (x) g (x) g^b (a, b group endos)."""
    bgd = group_bialgebra(field, n)
    zero, one = field.zero, field.one
    cols = []
    for j in range(n):
        col = [zero] * (n * n * n)
        col[((a * j) % n * n + j) * n + (b * j) % n] = one
        cols.append(col)
    delta = Matrix.from_columns(field, cols, n * n * n)
    return ComoduleAlgebra(bgd, bgd, bgd.total, bgd.s_map, bgd.t_map, delta,
                           name="k[Z/%d] twist (%d, %d)" % (n, a, b))


def random_unit_instance(rng, field):
    """A seeded (bialgebroid, comodule) pair exercising the unit laws."""
    kind = rng.randrange(3)
    if kind == 0:
        bgd = group_bialgebra(field, rng.randint(2, 4))
        return bgd, unit_comodule(bgd)
    if kind == 1:
        n = rng.randint(2, 4)
        bgd = group_bialgebra(field, n)
        return bgd, twisted_group_comodule(field, n, rng.randrange(n),
                                           rng.randrange(n))
    builders = [
        lambda: FDAlgebra.split(field, 2),
        lambda: FDAlgebra.split(field, 3),
        lambda: FDAlgebra.cyclic_group_algebra(field, 2),
        lambda: FDAlgebra.cyclic_group_algebra(field, 3),
        lambda: FDAlgebra.dual_numbers(field),
    ]
    bgd = envelope_bialgebroid(rng.choice(builders)())
    return bgd, unit_comodule(bgd)
