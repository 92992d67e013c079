"""Exact linear algebra over the rationals and prime fields.

Everything downstream reduces to the primitives here.  Matrices are stored
as sparse rows (``dict`` column -> nonzero scalar).  Over Q the scalars are
:class:`fractions.Fraction`; eliminations run on integer rows that are kept
primitive, which keeps coefficient growth in check without Fraction
arithmetic in the inner loops.  Over GF(p) scalars are ints in ``range(p)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .errors import ComplexBroken

__all__ = [
    "FieldSpec",
    "QQ",
    "Mat",
    "Subspace",
    "Echelon",
    "rank",
    "kernel_basis",
    "solve",
    "quotient",
    "cohomology",
    "row_space",
    "column_space",
    "span",
]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The ground field: ``FieldSpec()`` is Q, ``FieldSpec.prime(p)`` is GF(p)."""

    kind: str = "rational"
    p: int | None = None

    def __post_init__(self):
        if self.kind == "rational":
            if self.p is not None:
                raise ValueError("rational field takes no characteristic")
        elif self.kind == "prime":
            if self.p is None or not _is_prime(self.p):
                raise ValueError(f"GF(p) needs a prime p, got {self.p!r}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls("prime", int(p))

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse ``rational`` / ``Q`` / ``prime:P`` / ``GF(P)``."""
        t = str(text).strip()
        if t.lower() in ("rational", "rationals", "q"):
            return cls()
        low = t.lower()
        if low.startswith("prime:"):
            return cls.prime(int(t[6:]))
        if low.startswith("gf(") and low.endswith(")"):
            return cls.prime(int(t[3:-1]))
        raise ValueError(f"cannot parse field {text!r}")

    @property
    def is_rational(self) -> bool:
        return self.kind == "rational"

    def __str__(self) -> str:
        return "rational" if self.is_rational else f"prime:{self.p}"

    # scalars -------------------------------------------------------------

    def __call__(self, x) -> Fraction | int:
        """Coerce an int, Fraction or decimal string ("-3/4") into the field."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.is_rational:
            return Fraction(x)
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(den, -1, self.p) % self.p
        if isinstance(x, bool) or not isinstance(x, int):
            raise TypeError(f"cannot coerce {x!r} into {self}")
        return x % self.p

    def zero(self):
        return Fraction(0) if self.is_rational else 0

    def one(self):
        return Fraction(1) if self.is_rational else 1

    def fmt(self, x) -> str:
        """Serialize a scalar: ``"-3/4"`` over Q, the plain residue over GF(p)."""
        return str(Fraction(x)) if self.is_rational else str(int(x) % self.p)

    def inv(self, x):
        if self.is_rational:
            return 1 / Fraction(x)
        return pow(int(x), -1, self.p)

    def random(self, rng, lo: int = -3, hi: int = 3):
        """A small random scalar drawn from ``rng`` (a ``random.Random``)."""
        return self(rng.randint(lo, hi))


QQ = FieldSpec()


# ---------------------------------------------------------------------------
# matrices


class Mat:
    """Immutable exact matrix with sparse row storage.

    ``entries`` gives the row-major sequence of scalars; ``rows``/``cols`` the
    shape.  Rows are never mutated after construction.
    """

    __slots__ = ("field", "rows", "cols", "_data")

    def __init__(self, field: FieldSpec, rows: int, cols: int, data=None):
        self.field = field
        self.rows = rows
        self.cols = cols
        if data is None:
            data = [{} for _ in range(rows)]
        elif len(data) != rows:
            raise ValueError(f"expected {rows} rows, got {len(data)}")
        self._data = data

    # construction --------------------------------------------------------

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, rows, cols)

    @classmethod
    def identity(cls, field, n):
        one = field.one()
        return cls(field, n, n, [{i: one} for i in range(n)])

    @classmethod
    def from_lists(cls, field, lists: Sequence[Sequence], cols: int | None = None):
        """Build from nested lists of ints / Fractions / scalar strings."""
        rows = len(lists)
        if cols is None:
            cols = len(lists[0]) if rows else 0
        data = []
        for r in lists:
            if len(r) != cols:
                raise ValueError("ragged matrix rows")
            row = {}
            for j, x in enumerate(r):
                v = field(x)
                if v:
                    row[j] = v
            data.append(row)
        return cls(field, rows, cols, data)

    @classmethod
    def from_rows(cls, field, rows: Sequence[Mapping[int, object]], cols: int):
        """Build from sparse rows already holding field scalars (zeros dropped)."""
        return cls(field, len(rows), cols, [{k: v for k, v in r.items() if v} for r in rows])

    @classmethod
    def from_columns(cls, field, columns: Sequence[Mapping[int, object]], rows: int):
        data = [{} for _ in range(rows)]
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    data[i][j] = v
        return cls(field, rows, len(columns), data)

    # access --------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> tuple:
        z = self.field.zero()
        return tuple(r.get(j, z) for r in self._data for j in range(self.cols))

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i].get(j, self.field.zero())

    def row(self, i: int) -> dict:
        return dict(self._data[i])

    def column(self, j: int) -> dict:
        return {i: r[j] for i, r in enumerate(self._data) if j in r}

    def tolist(self) -> list[list]:
        z = self.field.zero()
        return [[r.get(j, z) for j in range(self.cols)] for r in self._data]

    def to_strings(self) -> list[list[str]]:
        f = self.field.fmt
        return [[f(x) for x in row] for row in self.tolist()]

    def nnz(self) -> int:
        return sum(len(r) for r in self._data)

    def is_zero(self) -> bool:
        return not any(self._data)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and self._data == other._data
        )

    def __hash__(self):
        return hash((self.field, self.shape, tuple(tuple(sorted(r.items())) for r in self._data)))

    def __repr__(self):
        return f"Mat({self.field}, {self.rows}x{self.cols}, {self.tolist()})"

    # arithmetic ----------------------------------------------------------

    def _norm(self, x):
        return x % self.field.p if not self.field.is_rational else x

    @property
    def T(self) -> "Mat":
        data = [{} for _ in range(self.cols)]
        for i, r in enumerate(self._data):
            for j, v in r.items():
                data[j][i] = v
        return Mat(self.field, self.cols, self.rows, data)

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        p = None if self.field.is_rational else self.field.p
        odata = other._data
        out = []
        for r in self._data:
            acc: dict = {}
            for k, a in r.items():
                for j, b in odata[k].items():
                    acc[j] = acc.get(j, 0) + a * b
            if p is None:
                out.append({j: v for j, v in acc.items() if v})
            else:
                row = {}
                for j, v in acc.items():
                    v %= p
                    if v:
                        row[j] = v
                out.append(row)
        return Mat(self.field, self.rows, other.cols, out)

    def apply(self, vec: Mapping[int, object]) -> dict:
        """Sparse matrix-vector product ``self @ vec``."""
        out = {}
        for i, r in enumerate(self._data):
            s = 0
            if len(r) < len(vec):
                for j, a in r.items():
                    b = vec.get(j)
                    if b:
                        s += a * b
            else:
                for j, b in vec.items():
                    a = r.get(j)
                    if a:
                        s += a * b
            s = self._norm(s)
            if s:
                out[i] = s
        return out

    def _combine(self, other: "Mat", sign: int) -> "Mat":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        out = []
        for a, b in zip(self._data, other._data):
            row = dict(a)
            for j, v in b.items():
                s = self._norm(row.get(j, 0) + sign * v)
                if s:
                    row[j] = s
                else:
                    row.pop(j, None)
            out.append(row)
        return Mat(self.field, self.rows, self.cols, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "Mat":
        c = self.field(c) if not isinstance(c, (int, Fraction)) else c
        out = []
        for r in self._data:
            row = {}
            for j, v in r.items():
                s = self._norm(c * v)
                if s:
                    row[j] = s
            out.append(row)
        return Mat(self.field, self.rows, self.cols, out)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Mat":
        cpos = {c: k for k, c in enumerate(cols)}
        data = []
        for i in rows:
            r = self._data[i]
            data.append({cpos[j]: v for j, v in r.items() if j in cpos})
        return Mat(self.field, len(rows), len(cols), data)

    @staticmethod
    def hstack(mats: Sequence["Mat"]) -> "Mat":
        field, rows = mats[0].field, mats[0].rows
        data = [{} for _ in range(rows)]
        off = 0
        for m in mats:
            if m.rows != rows:
                raise ValueError("hstack row mismatch")
            for i, r in enumerate(m._data):
                for j, v in r.items():
                    data[i][off + j] = v
            off += m.cols
        return Mat(field, rows, off, data)

    @staticmethod
    def vstack(mats: Sequence["Mat"]) -> "Mat":
        field, cols = mats[0].field, mats[0].cols
        data = []
        for m in mats:
            if m.cols != cols:
                raise ValueError("vstack column mismatch")
            data.extend(dict(r) for r in m._data)
        return Mat(field, len(data), cols, data)


# ---------------------------------------------------------------------------
# incremental row reduction


class Echelon:
    """Reduced row echelon form of a growing set of sparse vectors.

    Rows are kept fully reduced (each row vanishes at every other row's
    pivot), so the coefficient of row ``r`` in any vector of the span is read
    off the vector's pivot entry.  The pivot of a new row is its smallest
    column.  Over Q rows are primitive integer vectors with positive pivot;
    over GF(p) rows are monic.
    """

    def __init__(self, field: FieldSpec, ncols: int):
        self.field = field
        self.ncols = ncols
        self._q = field.is_rational
        self._p = field.p
        self._rows: dict[int, dict[int, int]] = {}
        self._colrows: dict[int, set[int]] = {}

    def __len__(self):
        return len(self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def is_full(self) -> bool:
        return len(self._rows) == self.ncols

    def copy(self) -> "Echelon":
        e = Echelon(self.field, self.ncols)
        e._rows = {c: dict(r) for c, r in self._rows.items()}
        e._colrows = {c: set(s) for c, s in self._colrows.items()}
        return e

    # internal representation -------------------------------------------

    def _internal(self, vec: Mapping[int, object]) -> dict[int, int]:
        if self._q:
            den = 1
            for x in vec.values():
                if isinstance(x, Fraction) and x.denominator != 1:
                    den = lcm(den, x.denominator)
            if den == 1:
                row = {k: int(x) for k, x in vec.items() if x}
            else:
                row = {k: int(x * den) for k, x in vec.items() if x}
            return _primitive(row)
        p = self._p
        row = {}
        for k, x in vec.items():
            x = int(x) % p
            if x:
                row[k] = x
        return row

    def _reduce_int(self, v: dict[int, int]) -> tuple[dict[int, int], int]:
        """Reduce an internal row; returns (row, L) with row = L*v - (span part)."""
        hits = [c for c in v if c in self._rows]
        if not hits:
            return v, 1
        rows = self._rows
        if self._q:
            L = lcm(*(rows[c][c] for c in hits))
            out = {k: L * x for k, x in v.items()} if L != 1 else dict(v)
            for c in hits:
                r = rows[c]
                f = out.get(c)
                if not f:
                    continue
                f //= r[c]
                for k, x in r.items():
                    s = out.get(k, 0) - f * x
                    if s:
                        out[k] = s
                    else:
                        del out[k]
            return out, L
        p = self._p
        out = dict(v)
        for c in hits:
            f = out.get(c)
            if not f:
                continue
            for k, x in rows[c].items():
                s = (out.get(k, 0) - f * x) % p
                if s:
                    out[k] = s
                else:
                    del out[k]
        return out, 1

    def _insert(self, v: dict[int, int]) -> int:
        c = min(v)
        if self._q:
            v = _primitive(v)
            if v[c] < 0:
                v = {k: -x for k, x in v.items()}
        else:
            inv = pow(v[c], -1, self._p)
            if inv != 1:
                p = self._p
                v = {k: x * inv % p for k, x in v.items()}
        # clear column c from existing rows
        for pc in list(self._colrows.get(c, ())):
            r = self._rows[pc]
            f = r[c]
            if self._q:
                a = v[c]
                g = gcd(a, f)
                ra, fv = a // g, f // g
                new = {k: ra * x for k, x in r.items()}
                for k, x in v.items():
                    s = new.get(k, 0) - fv * x
                    if s:
                        new[k] = s
                    else:
                        del new[k]
                new = _primitive(new)
                if new[pc] < 0:
                    new = {k: -x for k, x in new.items()}
            else:
                p = self._p
                new = dict(r)
                for k, x in v.items():
                    s = (new.get(k, 0) - f * x) % p
                    if s:
                        new[k] = s
                    else:
                        del new[k]
            self._set_row(pc, new)
        self._set_row(c, v)
        return c

    def _set_row(self, pc: int, row: dict[int, int]):
        old = self._rows.get(pc)
        if old is not None:
            for k in old:
                if k not in row:
                    self._colrows[k].discard(pc)
        for k in row:
            if k != pc:
                self._colrows.setdefault(k, set()).add(pc)
        self._rows[pc] = row

    # public --------------------------------------------------------------

    def add(self, vec: Mapping[int, object]) -> bool:
        """Add a vector; returns True when it enlarged the span."""
        v = self._internal(vec)
        if not v:
            return False
        v, _ = self._reduce_int(v)
        if not v:
            return False
        self._insert(v)
        return True

    def add_many(self, vecs: Iterable[Mapping[int, object]]) -> int:
        n = 0
        for v in vecs:
            if len(self._rows) == self.ncols:
                break
            n += self.add(v)
        return n

    def contains(self, vec: Mapping[int, object]) -> bool:
        v = self._internal(vec)
        if not v:
            return True
        v, _ = self._reduce_int(v)
        return not v

    def residual(self, vec: Mapping[int, object]) -> dict:
        """Exact ``vec - (component in the span along the free columns)``."""
        if self._q:
            den = 1
            for x in vec.values():
                if isinstance(x, Fraction) and x.denominator != 1:
                    den = lcm(den, x.denominator)
            v = {k: int(x * den) for k, x in vec.items() if x}
            v, L = self._reduce_int(v)
            s = den * L
            if s == 1:
                return {k: Fraction(x) for k, x in v.items()}
            return {k: Fraction(x, s) for k, x in v.items()}
        v, _ = self._reduce_int(self._internal(vec))
        return v

    def coords(self, vec: Mapping[int, object]) -> dict[int, object]:
        """Coefficients (keyed by pivot column) of ``vec`` along the pivot-1 rows."""
        if self._q:
            return {c: Fraction(x) for c, x in vec.items() if x and c in self._rows}
        p = self._p
        return {c: int(x) % p for c, x in vec.items() if c in self._rows and int(x) % p}

    def row(self, pivot: int) -> dict:
        """Row with the given pivot as field scalars, normalized to pivot 1."""
        r = self._rows[pivot]
        if self._q:
            a = r[pivot]
            return {k: Fraction(x, a) for k, x in r.items()}
        return dict(r)

    def basis_rows(self) -> list[dict]:
        return [self.row(c) for c in sorted(self._rows)]

    def rows_touching(self, col: int) -> list[int]:
        """Pivots of rows with a nonzero entry in a non-pivot column."""
        return sorted(self._colrows.get(col, ()))

    def kernel_vectors(self) -> list[dict]:
        """Null space of the row set (solutions of ``row . x = 0``)."""
        out = []
        for f in range(self.ncols):
            if f in self._rows:
                continue
            vec = {f: self.field.one()}
            for pc in self._colrows.get(f, ()):
                r = self._rows[pc]
                if self._q:
                    vec[pc] = Fraction(-r[f], r[pc])
                else:
                    vec[pc] = (-r[f]) % self._p
            out.append(vec)
        return out

    def subspace(self) -> "Subspace":
        return Subspace(self.ncols, Mat(self.field, len(self._rows), self.ncols, self.basis_rows()))


def _primitive(row: dict[int, int]) -> dict[int, int]:
    if not row:
        return row
    g = gcd(*row.values())
    if g > 1:
        return {k: x // g for k, x in row.items()}
    return row


# ---------------------------------------------------------------------------
# subspaces and operations


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of k^ambient_dim; basis rows are linearly independent."""

    ambient_dim: int
    basis: Mat

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def field(self) -> FieldSpec:
        return self.basis.field

    def vectors(self) -> list[dict]:
        return [self.basis.row(i) for i in range(self.dim)]

    def echelon(self) -> Echelon:
        e = Echelon(self.field, self.ambient_dim)
        e.add_many(self.vectors())
        return e

    def contains(self, vec: Mapping[int, object]) -> bool:
        return self.echelon().contains(vec)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def span(field: FieldSpec, ambient_dim: int, vectors: Iterable[Mapping[int, object]]) -> Subspace:
    """Reduced basis of the span of some sparse vectors."""
    e = Echelon(field, ambient_dim)
    e.add_many(vectors)
    return e.subspace()


def _row_echelon(m: Mat) -> Echelon:
    e = Echelon(m.field, m.cols)
    e.add_many(m._data)
    return e


def rank(m: Mat) -> int:
    """Rank over ``m.field``."""
    if m.rows > m.cols:
        return _row_echelon(m.T).rank
    return _row_echelon(m).rank


def kernel_basis(m: Mat) -> Subspace:
    """Basis of ``{v : m v = 0}``, one vector per free column."""
    e = _row_echelon(m)
    vecs = e.kernel_vectors()
    return Subspace(m.cols, Mat(m.field, len(vecs), m.cols, vecs))


def row_space(m: Mat) -> Subspace:
    return _row_echelon(m).subspace()


def column_space(m: Mat) -> Subspace:
    return _row_echelon(m.T).subspace()


def solve(m: Mat, target: Sequence | Mapping[int, object]):
    """Some ``x`` with ``m x = target``, or ``None`` when target is not in the image.

    ``target`` may be a dense sequence or a sparse dict; the answer is a dense
    list of scalars (free variables set to zero).
    """
    field = m.field
    if isinstance(target, Mapping):
        b = {i: field(x) if not isinstance(x, (int, Fraction)) else x for i, x in target.items()}
    else:
        if len(target) != m.rows:
            raise ValueError("target length must equal the number of rows")
        b = {i: field(x) for i, x in enumerate(target) if x}
    n = m.cols
    e = Echelon(field, n + 1)
    for i, r in enumerate(m._data):
        row = dict(r)
        if i in b and b[i]:
            row[n] = b[i]
        e.add(row)
    if n in e._rows:
        return None
    x = [field.zero()] * n
    for pc in e.pivots:
        r = e.row(pc)
        if n in r:
            x[pc] = r[n]
    return x


def quotient(ambient_dim: int, sub: Subspace):
    """Complement representatives and the projection onto quotient coordinates.

    Representatives are the standard basis vectors at the non-pivot columns of
    the reduced basis of ``sub``.  The projection is a (q x ambient_dim) matrix
    killing ``sub`` and restricting to the identity on the representatives.
    """
    if sub.ambient_dim != ambient_dim:
        raise ValueError("subspace lives in a different ambient space")
    field = sub.field
    e = sub.echelon()
    free = [c for c in range(ambient_dim) if c not in e._rows]
    pos = {c: k for k, c in enumerate(free)}
    one = field.one()
    reps = Mat(field, len(free), ambient_dim, [{c: one} for c in free])
    proj = [{} for _ in free]
    for c in free:
        proj[pos[c]][c] = one
    for pc in e.pivots:
        for k, v in e.row(pc).items():
            if k != pc:
                proj[pos[k]][pc] = -v if field.is_rational else (-v) % field.p
    return Subspace(ambient_dim, reps), Mat(field, len(free), ambient_dim, proj)


def cohomology(d_in: Mat, d_out: Mat):
    """Cohomology at the middle of ``d_in`` then ``d_out``.

    Returns ``(dim, representatives)`` where the representatives are cocycles
    spanning a complement of the coboundaries.  Raises :class:`ComplexBroken`
    when ``d_out @ d_in`` is nonzero.
    """
    if d_out.cols != d_in.rows:
        raise ValueError(f"incompatible differentials {d_in.shape} then {d_out.shape}")
    if not (d_out @ d_in).is_zero():
        raise ComplexBroken("d_out . d_in != 0")
    z = kernel_basis(d_out)
    e = _row_echelon(d_in.T)
    nb = e.rank
    reps = []
    for v in z.vectors():
        if e.add(v):
            reps.append(v)
    dim = z.dim - nb
    assert dim == len(reps)
    return dim, Subspace(d_in.rows, Mat(d_in.field, len(reps), d_in.rows, reps))
