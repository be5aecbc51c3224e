"""Exact linear algebra over QQ and over prime fields.

Everything downstream (tensor quotients, equalizers, idempotent splittings)
reduces to row reduction over an exact field, so this module owns the one
pivot convention used across the package: leftmost nonzero column, topmost
unreduced row, leading entries normalized to 1.  Changing the rule would
silently change quotient sections and therefore every serialized report.

Scalars are `fractions.Fraction` over QQ and `Fp` wrappers over GF(p); both
support the arithmetic operators, truthiness as a zero test, and exact
equality, so the matrix code below is field agnostic.
"""

from __future__ import annotations

from fractions import Fraction


class Fp:
    """An element of the prime field GF(p).

    Wraps a canonical representative 0 <= value < p.  Arithmetic between
    elements of different characteristic is a bug, not a coercion.
    """

    __slots__ = ("value", "p")

    def __init__(self, value, p):
        self.value = value % p
        self.p = p

    def __add__(self, other):
        return Fp(self.value + other.value, self.p)

    def __sub__(self, other):
        return Fp(self.value - other.value, self.p)

    def __mul__(self, other):
        return Fp(self.value * other.value, self.p)

    def __truediv__(self, other):
        if other.value % other.p == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return Fp(self.value * pow(other.value, self.p - 2, self.p), self.p)

    def __neg__(self):
        return Fp(-self.value, self.p)

    def __eq__(self, other):
        return isinstance(other, Fp) and self.p == other.p and self.value == other.value

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return "Fp(%d, %d)" % (self.value, self.p)


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Field:
    """A computable field: QQ or GF(p).

    Instances know how to build, parse and print their scalars.  The string
    forms are part of the interchange format: "3/4" over QQ, "2 mod 7" over
    GF(7).
    """

    def __init__(self, char=0):
        if char:
            if not _is_prime(char):
                raise ValueError("field characteristic must be 0 or a prime, got %r" % char)
            self.p = char
            self.zero = Fp(0, char)
            self.one = Fp(1, char)
            self.name = "GF(%d)" % char
        else:
            self.p = 0
            self.zero = Fraction(0)
            self.one = Fraction(1)
            self.name = "QQ"

    def __call__(self, x):
        """Coerce an int, string or scalar into this field."""
        if self.p:
            if isinstance(x, Fp):
                if x.p != self.p:
                    raise ValueError("characteristic mismatch: %d vs %d" % (x.p, self.p))
                return x
            if isinstance(x, str):
                return self.parse(x)
            return Fp(int(x), self.p)
        if isinstance(x, Fraction):
            return x
        if isinstance(x, str):
            return self.parse(x)
        return Fraction(x)

    def parse(self, s):
        s = s.strip()
        if self.p:
            if "mod" in s:
                v, m = s.split("mod")
                if int(m) != self.p:
                    raise ValueError("scalar %r does not live in %s" % (s, self.name))
                return Fp(int(v), self.p)
            if "/" in s:
                num, den = s.split("/")
                return Fp(int(num), self.p) / Fp(int(den), self.p)
            return Fp(int(s), self.p)
        return Fraction(s)

    def show(self, x):
        if self.p:
            return "%d mod %d" % (x.value, self.p)
        return str(x)

    def random(self, rng, span=3):
        """Small random scalar, dense enough to exercise cancellation."""
        if self.p:
            return Fp(rng.randrange(self.p), self.p)
        return Fraction(rng.randint(-span, span))

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return self.name


QQ = Field(0)


def GF(p):
    return Field(p)


def field_from_name(name):
    name = name.strip()
    if name == "QQ":
        return QQ
    if name.startswith("GF(") and name.endswith(")"):
        return GF(int(name[3:-1]))
    raise ValueError("unknown field %r (expected QQ or GF(p))" % name)


class Matrix:
    """A dense matrix over an exact field.

    Rows are tuples; the object is treated as immutable.  A linear map
    V -> W is a (dim W) x (dim V) matrix acting on column vectors, so
    composition g after f is `g * f`.  The Kronecker product `a @ b` uses
    the left-factor-major basis order on tensor products: basis vector
    (i, k) of V (x) X sits at index i * dim X + k.
    """

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field, rows, ncols=None):
        self.field = field
        self.rows = tuple(tuple(field(x) for x in row) for row in rows)
        self.nrows = len(self.rows)
        if self.nrows:
            self.ncols = len(self.rows[0])
            if any(len(r) != self.ncols for r in self.rows):
                raise ValueError("ragged rows")
        else:
            if ncols is None:
                raise ValueError("empty matrix needs an explicit column count")
            self.ncols = ncols
        if ncols is not None and ncols != self.ncols:
            raise ValueError("column count mismatch")

    # -- constructors ---------------------------------------------------

    @staticmethod
    def _raw(field, rows, ncols):
        """Internal: build from already-coerced scalars, skipping coercion."""
        m = object.__new__(Matrix)
        m.field = field
        m.rows = tuple(tuple(r) for r in rows)
        m.nrows = len(m.rows)
        m.ncols = len(m.rows[0]) if m.rows else ncols
        return m

    @staticmethod
    def zeros(field, nrows, ncols):
        z = field.zero
        return Matrix._raw(field, [(z,) * ncols] * nrows, ncols)

    @staticmethod
    def identity(field, n):
        z, o = field.zero, field.one
        return Matrix._raw(field, [[o if i == j else z for j in range(n)]
                                   for i in range(n)], n)

    @staticmethod
    def column(field, entries):
        return Matrix(field, [[x] for x in entries], 1)

    @staticmethod
    def from_columns(field, cols, nrows=None):
        cols = list(cols)
        if cols:
            nrows = len(cols[0])
        if nrows is None:
            raise ValueError("empty column list needs an explicit row count")
        return Matrix(field, [[c[i] for c in cols] for i in range(nrows)], len(cols))

    @staticmethod
    def from_function(field, nrows, ncols, fn):
        return Matrix(field, [[fn(i, j) for j in range(ncols)] for i in range(nrows)], ncols)

    @staticmethod
    def random(field, nrows, ncols, rng, span=3):
        return Matrix(field, [[field.random(rng, span) for _ in range(ncols)]
                              for _ in range(nrows)], ncols)

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        self._align(other, same_shape=True)
        return Matrix._raw(self.field,
                           [[a + b for a, b in zip(ra, rb)]
                            for ra, rb in zip(self.rows, other.rows)],
                           self.ncols)

    def __sub__(self, other):
        self._align(other, same_shape=True)
        return Matrix._raw(self.field,
                           [[a - b for a, b in zip(ra, rb)]
                            for ra, rb in zip(self.rows, other.rows)],
                           self.ncols)

    def __neg__(self):
        return Matrix._raw(self.field, [[-a for a in row] for row in self.rows],
                           self.ncols)

    def scale(self, c):
        c = self.field(c)
        return Matrix._raw(self.field, [[c * a for a in row] for row in self.rows],
                           self.ncols)

    def __mul__(self, other):
        self._align(other)
        if self.ncols != other.nrows:
            raise ValueError("cannot compose %dx%d with %dx%d"
                             % (self.nrows, self.ncols, other.nrows, other.ncols))
        brows = other.rows
        n = other.ncols
        zero = self.field.zero
        zrow = (zero,) * n
        out = []
        # accumulate rows of the right factor; skips zero entries on both
        # sides, which matters because projections and sections are sparse
        for arow in self.rows:
            acc = None
            for a, brow in zip(arow, brows):
                if not a:
                    continue
                if acc is None:
                    acc = [a * x if x else zero for x in brow]
                else:
                    for j, x in enumerate(brow):
                        if x:
                            acc[j] = acc[j] + a * x
            out.append(zrow if acc is None else acc)
        return Matrix._raw(self.field, out, n)

    def __matmul__(self, other):
        """Kronecker product, left factor major."""
        self._align(other)
        zero = self.field.zero
        zrow = (zero,) * (self.ncols * other.ncols)
        out = []
        for ra in self.rows:
            for rb in other.rows:
                if any(ra):
                    out.append([a * b if a and b else zero for a in ra for b in rb])
                else:
                    out.append(zrow)
        return Matrix._raw(self.field, out, self.ncols * other.ncols)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.ncols == other.ncols and self.rows == other.rows)

    def __hash__(self):
        return hash((self.field, self.ncols, self.rows))

    def _align(self, other, same_shape=False):
        if not isinstance(other, Matrix) or other.field != self.field:
            raise TypeError("matrix arithmetic needs matching fields")
        if same_shape and (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch: %dx%d vs %dx%d"
                             % (self.nrows, self.ncols, other.nrows, other.ncols))

    # -- structure ------------------------------------------------------

    def transpose(self):
        rows = [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)]
        return Matrix._raw(self.field, rows, self.nrows)

    def column_vector(self, j):
        return Matrix._raw(self.field, [(row[j],) for row in self.rows], 1)

    def columns(self):
        return [self.column_vector(j) for j in range(self.ncols)]

    def entries(self):
        return [x for row in self.rows for x in row]

    def is_zero(self):
        return not any(any(row) for row in self.rows)

    def is_identity(self):
        if self.nrows != self.ncols:
            return False
        return self == Matrix.identity(self.field, self.nrows)

    def __repr__(self):
        if self.nrows == 0 or self.ncols == 0:
            return "Matrix(%s, %dx%d)" % (self.field, self.nrows, self.ncols)
        body = "; ".join(" ".join(self.field.show(x) for x in row) for row in self.rows)
        return "Matrix(%s, [%s])" % (self.field, body)

    # -- elimination ----------------------------------------------------

    def rref(self):
        """Reduced row echelon form.

        Returns (R, pivots) where pivots is the tuple of pivot column
        indices in increasing order.  Pivot rule: scan columns left to
        right, take the topmost unreduced row with a nonzero entry.  The
        rule is fixed package wide; sections of quotients depend on it.
        """
        rows = [list(r) for r in self.rows]
        nrows, ncols = self.nrows, self.ncols
        pivots = []
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            pivot_row = None
            for i in range(r, nrows):
                if rows[i][c]:
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
            inv = rows[r][c]
            if inv != self.field.one:
                rows[r] = [x / inv for x in rows[r]]
            lead = rows[r]
            for i in range(nrows):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [x - f * y if y else x for x, y in zip(rows[i], lead)]
            pivots.append(c)
            r += 1
        return Matrix._raw(self.field, rows, ncols), tuple(pivots)

    def rank(self):
        return len(self.rref()[1])

    def kernel(self):
        """Matrix whose columns are the canonical kernel basis.

        One column per non-pivot (free) column of the rref, with 1 in the
        free slot and the negated pivot-row entries above.
        """
        R, pivots = self.rref()
        pivot_set = set(pivots)
        free = [j for j in range(self.ncols) if j not in pivot_set]
        zero, one = self.field.zero, self.field.one
        cols = []
        for j in free:
            v = [zero] * self.ncols
            v[j] = one
            for i, p in enumerate(pivots):
                v[p] = -R.rows[i][j]
            cols.append(v)
        return Matrix._raw(self.field,
                           [[c[i] for c in cols] for i in range(self.ncols)],
                           len(cols))

    def solve(self, rhs):
        """One exact solution X of self * X = rhs, or None if inconsistent.

        Free variables are set to zero, so the solution is deterministic.
        """
        self._align(rhs)
        if rhs.nrows != self.nrows:
            raise ValueError("rhs has %d rows, expected %d" % (rhs.nrows, self.nrows))
        aug = Matrix._raw(self.field,
                          [tuple(a) + tuple(b) for a, b in zip(self.rows, rhs.rows)],
                          self.ncols + rhs.ncols)
        R, pivots = aug.rref()
        if any(p >= self.ncols for p in pivots):
            return None
        zero = self.field.zero
        out = [[zero] * rhs.ncols for _ in range(self.ncols)]
        for i, p in enumerate(pivots):
            for j in range(rhs.ncols):
                out[p][j] = R.rows[i][self.ncols + j]
        return Matrix._raw(self.field, out, rhs.ncols)

    def inverse(self):
        if self.nrows != self.ncols:
            raise ValueError("only square matrices invert")
        inv = self.solve(Matrix.identity(self.field, self.nrows))
        if inv is None or not (inv * self).is_identity():
            raise ValueError("matrix is singular")
        return inv


def hstack(blocks):
    blocks = list(blocks)
    field = blocks[0].field
    nrows = blocks[0].nrows
    if any(b.nrows != nrows for b in blocks):
        raise ValueError("hstack needs equal row counts")
    rows = [sum((list(b.rows[i]) for b in blocks), []) for i in range(nrows)]
    return Matrix._raw(field, rows, sum(b.ncols for b in blocks))


def vstack(blocks):
    blocks = list(blocks)
    field = blocks[0].field
    ncols = blocks[0].ncols
    if any(b.ncols != ncols for b in blocks):
        raise ValueError("vstack needs equal column counts")
    rows = [row for b in blocks for row in b.rows]
    return Matrix._raw(field, rows, ncols)


class Subspace:
    """A subspace of F^ambient in canonical form.

    The basis is stored as the nonzero rows of a reduced row echelon
    matrix, so two subspaces are equal iff their stored bases are equal.
    """

    __slots__ = ("field", "ambient", "basis", "pivots")

    def __init__(self, field, ambient, basis_rows, pivots):
        self.field = field
        self.ambient = ambient
        self.basis = basis_rows          # Matrix, dim x ambient, rref, no zero rows
        self.pivots = pivots

    @staticmethod
    def spanned_by(vectors, ambient=None, field=None):
        """Span of column vectors (each a Matrix with one column)."""
        vectors = list(vectors)
        if vectors:
            field = vectors[0].field
            ambient = vectors[0].nrows
        if ambient is None or field is None:
            raise ValueError("empty span needs explicit ambient and field")
        raw = Matrix(field, [[v.rows[i][0] for i in range(ambient)] for v in vectors], ambient)
        return Subspace.row_span(raw)

    @staticmethod
    def row_span(mat):
        R, pivots = mat.rref()
        rows = [R.rows[i] for i in range(len(pivots))]
        return Subspace(mat.field, mat.ncols, Matrix(mat.field, rows, mat.ncols), pivots)

    @staticmethod
    def full(field, ambient):
        return Subspace.row_span(Matrix.identity(field, ambient))

    @staticmethod
    def zero(field, ambient):
        return Subspace(field, ambient, Matrix(field, [], ambient), ())

    @property
    def dim(self):
        return self.basis.nrows

    def inclusion(self):
        """ambient x dim matrix whose columns are the basis vectors."""
        return self.basis.transpose()

    def reduce(self, vec):
        """Canonical representative of vec modulo this subspace."""
        v = [vec.rows[i][0] for i in range(self.ambient)]
        for i, p in enumerate(self.pivots):
            if v[p]:
                f = v[p]
                row = self.basis.rows[i]
                v = [x - f * y if y else x for x, y in zip(v, row)]
        return Matrix.column(self.field, v)

    def contains(self, vec):
        return self.reduce(vec).is_zero()

    def contains_columns(self, mat):
        return all(self.contains(mat.column_vector(j)) for j in range(mat.ncols))

    def coordinates(self, vec):
        """Coefficients of vec in the stored basis, or None if outside."""
        sol = self.inclusion().solve(vec)
        if sol is None:
            return None
        if not (self.inclusion() * sol == vec):
            return None
        return sol

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient == other.ambient
                and self.basis == other.basis)

    def __le__(self, other):
        return all(other.contains(self.basis.transpose().column_vector(j))
                   for j in range(self.dim))

    def __add__(self, other):
        if self.ambient != other.ambient:
            raise ValueError("ambient mismatch")
        return Subspace.row_span(vstack([self.basis, other.basis])
                                 if self.dim and other.dim
                                 else (self.basis if self.dim else other.basis))

    def __repr__(self):
        return "Subspace(dim %d of %d over %s)" % (self.dim, self.ambient, self.field)


class Quotient:
    """F^ambient modulo a subspace, with the canonical splitting.

    `proj` sends a vector to its coordinates at the non-pivot slots after
    reduction; `section` embeds those slots back as standard basis
    vectors.  proj * section is the identity by construction.
    """

    __slots__ = ("field", "ambient", "relations", "free", "proj", "section")

    def __init__(self, field, ambient, relations):
        if relations.ambient != ambient:
            raise ValueError("relations live in the wrong ambient space")
        self.field = field
        self.ambient = ambient
        self.relations = relations
        pivot_set = set(relations.pivots)
        self.free = tuple(j for j in range(ambient) if j not in pivot_set)
        zero, one = field.zero, field.one
        dim = len(self.free)
        # proj: reduce against relation rows, then read off the free slots
        proj_rows = []
        for j in self.free:
            row = [zero] * ambient
            row[j] = one
            for i, p in enumerate(relations.pivots):
                row[p] = -relations.basis.rows[i][j]
            proj_rows.append(row)
        self.proj = Matrix._raw(field, proj_rows, ambient)
        sec_rows = [[zero] * dim for _ in range(ambient)]
        for idx, j in enumerate(self.free):
            sec_rows[j][idx] = one
        self.section = Matrix._raw(field, sec_rows, dim)

    @property
    def dim(self):
        return len(self.free)

    def __repr__(self):
        return "Quotient(%d -> %d over %s)" % (self.ambient, self.dim, self.field)


def quotient_with_reversed_pivots(field, ambient, relations):
    """A second, independent splitting of the same quotient.

    Pivots are chosen scanning columns right to left (implemented by
    conjugating with the coordinate reversal), giving a different section
    for robustness checks; the underlying quotient is the same.
    """
    rev = Matrix.from_function(field, ambient, ambient,
                               lambda i, j: field.one if i + j == ambient - 1 else field.zero)
    flipped = Subspace.row_span(relations.basis * rev) if relations.dim \
        else Subspace.zero(field, ambient)
    q = Quotient(field, ambient, flipped)
    out = Quotient.__new__(Quotient)
    out.field = field
    out.ambient = ambient
    out.relations = relations
    out.free = tuple(ambient - 1 - j for j in q.free)
    out.proj = q.proj * rev
    out.section = rev * q.section
    return out


def equalizer(f, g):
    """Largest subspace of the common domain where f and g agree."""
    if (f.nrows, f.ncols) != (g.nrows, g.ncols):
        raise ValueError("equalizer needs parallel maps")
    return Subspace.row_span((f - g).kernel().transpose())


def kernel_subspace(f):
    return Subspace.row_span(f.kernel().transpose())


def image_subspace(f):
    return Subspace.row_span(f.transpose())


def coequalizer(f, g):
    """Quotient of the common codomain by im(f - g), with its splitting."""
    if (f.nrows, f.ncols) != (g.nrows, g.ncols):
        raise ValueError("coequalizer needs parallel maps")
    return Quotient(f.field, f.nrows, image_subspace(f - g))


def induced_on_quotients(f, src, dst, check=True):
    """The map on quotients induced by f, given f(rel_src) <= rel_dst."""
    if check and src.relations.dim:
        # ker(dst.proj) is exactly dst.relations, so descent is one multiply
        moved = f * src.relations.inclusion()
        if not (dst.proj * moved).is_zero():
            raise ValueError("map does not descend to the quotient")
    return dst.proj * f * src.section


def corestrict(f, sub):
    """Factor f through the inclusion of sub; raises if im f leaves sub."""
    g = sub.inclusion().solve(f)
    if g is None or not (sub.inclusion() * g == f):
        raise ValueError("map does not land in the subspace")
    return g


class NotIdempotent(ValueError):
    pass


def split_idempotent(e):
    """Split e through its image: returns (dim, i, p) with p*i = 1, i*p = e."""
    if e.nrows != e.ncols:
        raise NotIdempotent("idempotents are square")
    if not (e * e == e):
        raise NotIdempotent("matrix is not idempotent")
    img = image_subspace(e)
    incl = img.inclusion()
    proj = incl.solve(e)
    if proj is None:
        raise ValueError("failed to factor the idempotent")
    if not ((proj * incl).is_identity() and incl * proj == e):
        raise ValueError("idempotent splitting failed the exactness check")
    return img.dim, incl, proj
