"""Quivers, twists, homogeneous relation ideals and the algebras they define.

Path convention: a word ``(a, b)`` denotes the composite ``a o b`` -- ``b`` is
traversed first.  So the tail of a word is the tail of its last letter and
the head is the head of its first letter, and a representation evaluates the
word as ``phi[a] @ phi[b]``.  Trivial paths ``e_i`` are the empty word at a
vertex.

Everything is graded by path length.  An :class:`AlgebraModel` stores the
graded pieces of the powers ``K^p`` of the relation ideal inside the path
algebra, and :func:`associated_graded` turns ``K^p / K^{p+1}`` into a finite
:class:`GradedSlice` using the degree cutoff ``(p+1)(N-1) + p*m``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import (
    CutoffExceeded,
    InhomogeneousRelation,
    InputError,
    MissingTwistEntry,
    NonParallelRelation,
    NotAdmissible,
)
from .linalg import Echelon, FieldSpec, Mat, QQ

__all__ = [
    "Arrow",
    "Quiver",
    "Twist",
    "Path",
    "RelationSet",
    "AlgebraModel",
    "GradedSlice",
    "expand_twist",
    "enumerate_paths",
    "ideal_graded_piece",
    "build_algebra",
    "associated_graded",
]


class Arrow(NamedTuple):
    name: str
    tail: object
    head: object


@dataclass(frozen=True)
class Quiver:
    """A finite quiver ``(I, E, h, t)``.

    >>> Quiver.build([1, 2], [("a", 1, 2), ("b", 1, 2)]).num_arrows
    2
    """

    vertices: tuple
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        if not self.vertices:
            raise InputError("a quiver needs at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex labels")
        vs = set(self.vertices)
        names = set()
        for a in self.arrows:
            if a.tail not in vs or a.head not in vs:
                raise InputError(f"arrow {a.name!r} references an unknown vertex")
            if a.name in names:
                raise InputError(f"duplicate arrow name {a.name!r}")
            names.add(a.name)

    @classmethod
    def build(cls, vertices: Iterable, arrows: Iterable[Sequence] = ()) -> "Quiver":
        return cls(tuple(vertices), tuple(Arrow(*a) for a in arrows))

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_arrows(self) -> int:
        return len(self.arrows)

    def vertex_index(self, label) -> int:
        try:
            return self.vertices.index(label)
        except ValueError:
            raise InputError(f"unknown vertex {label!r}") from None

    def arrow_index(self, name: str) -> int:
        for k, a in enumerate(self.arrows):
            if a.name == name:
                return k
        raise InputError(f"unknown arrow {name!r}")

    def arrow(self, name: str) -> Arrow:
        return self.arrows[self.arrow_index(name)]

    # integer views used by the heavy code
    def tails(self) -> list[int]:
        return [self.vertex_index(a.tail) for a in self.arrows]

    def heads(self) -> list[int]:
        return [self.vertex_index(a.head) for a in self.arrows]


@dataclass(frozen=True)
class Twist:
    """Per-arrow basis names of the twisting spaces ``M_a`` (rank = len)."""

    basis_names: Mapping[str, tuple[str, ...]]

    def __post_init__(self):
        for name, basis in self.basis_names.items():
            if len(basis) < 1:
                raise InputError(f"twist of arrow {name!r} must have rank >= 1")

    @classmethod
    def trivial(cls, quiver: Quiver) -> "Twist":
        return cls({a.name: (a.name,) for a in quiver.arrows})

    @classmethod
    def from_ranks(cls, ranks: Mapping[str, int]) -> "Twist":
        """Rank-``r`` twists with basis names ``name1 .. name_r`` (or ``name`` if r=1)."""
        return cls(
            {
                n: (n,) if r == 1 else tuple(f"{n}{k}" for k in range(1, r + 1))
                for n, r in ranks.items()
            }
        )

    def rank(self, name: str) -> int:
        return len(self.basis_names[name])


def expand_twist(q: Quiver, t: Twist) -> Quiver:
    """Replace every arrow of rank ``r`` by ``r`` parallel arrows."""
    for name in t.basis_names:
        q.arrow_index(name)
    arrows = []
    for a in q.arrows:
        if a.name not in t.basis_names:
            raise MissingTwistEntry(f"twist has no entry for arrow {a.name!r}")
        for b in t.basis_names[a.name]:
            arrows.append(Arrow(b, a.tail, a.head))
    return Quiver(q.vertices, tuple(arrows))


class Path(NamedTuple):
    """A path; ``word`` lists arrow names, leftmost traversed last."""

    word: tuple[str, ...]
    tail: object
    head: object

    def __len__(self):
        return len(self.word)

    def __str__(self):
        return "*".join(self.word) if self.word else f"e_{self.tail}"


def enumerate_paths(q: Quiver, d: int, src=None, tgt=None) -> list[Path]:
    """All paths of length ``d`` from ``src`` (tail) to ``tgt`` (head)."""
    if d == 0:
        out = [Path((), v, v) for v in q.vertices]
    else:
        out = []
        for w, t, h in _int_paths(q, d):
            out.append(
                Path(tuple(q.arrows[k].name for k in w), q.vertices[t], q.vertices[h])
            )
    return [p for p in out if (src is None or p.tail == src) and (tgt is None or p.head == tgt)]


def _int_paths(q: Quiver, d: int) -> list[tuple[tuple[int, ...], int, int]]:
    tails, heads = q.tails(), q.heads()
    layer = [((), v, v) for v in range(q.num_vertices)]
    for _ in range(d):
        nxt = []
        for w, t, h in layer:
            for a in range(q.num_arrows):
                if heads[a] == t:
                    nxt.append((w + (a,), tails[a], h))
        layer = nxt
    return layer


# ---------------------------------------------------------------------------
# relations


@dataclass(frozen=True)
class RelationSet:
    """Generators of a two-sided ideal; each is a list of ``(coefficient, word)``.

    Coefficients are stored as Fractions and coerced into the working field
    when an algebra is built.
    """

    generators: tuple[tuple[tuple[Fraction, tuple[str, ...]], ...], ...] = ()

    @classmethod
    def parse(cls, rels: Iterable[Iterable[tuple[object, Sequence[str]]]]) -> "RelationSet":
        gens = []
        for rel in rels:
            gens.append(tuple((Fraction(str(c)) if isinstance(c, str) else Fraction(c), tuple(w)) for c, w in rel))
        return cls(tuple(gens))

    def __len__(self):
        return len(self.generators)

    def __bool__(self):
        return bool(self.generators)

    def max_length(self) -> int:
        return max((len(w) for rel in self.generators for _, w in rel), default=0)

    def validate(self, q: Quiver) -> None:
        """Check that every relation is a parallel, length-homogeneous combination.

        Raises InhomogeneousRelation, NonParallelRelation or InputError.
        """
        for k, rel in enumerate(self.generators):
            if not rel:
                raise InputError(f"relation {k} is empty")
            lengths = {len(w) for _, w in rel}
            if len(lengths) > 1:
                raise InhomogeneousRelation(
                    f"relation {k} mixes word lengths {sorted(lengths)}"
                )
            (ell,) = lengths
            if ell < 2:
                raise InhomogeneousRelation(f"relation {k} has words of length {ell} < 2")
            ends = set()
            for _, w in rel:
                ends.add(_word_ends(q, w))
            if len(ends) > 1:
                raise NonParallelRelation(f"relation {k} joins different endpoints")


def _word_ends(q: Quiver, word: Sequence[str]) -> tuple:
    """(tail, head) of a composable word, raising InputError otherwise."""
    arrows = [q.arrow(n) for n in word]
    for left, right in zip(arrows, arrows[1:]):
        if left.tail != right.head:
            raise InputError(f"word {'*'.join(word)} is not composable")
    return arrows[-1].tail, arrows[0].head


# ---------------------------------------------------------------------------
# the algebra


class _Full:
    """Stand-in for an echelon spanning its whole ambient space."""

    def __init__(self, field: FieldSpec, n: int):
        self.field = field
        self.ncols = n

    rank = property(lambda self: self.ncols)

    def is_full(self):
        return True

    def contains(self, vec):
        return True

    def residual(self, vec):
        return {}

    def coords(self, vec):
        return dict(vec)

    @property
    def pivots(self):
        return list(range(self.ncols))

    def basis_rows(self):
        one = self.field.one()
        return [{i: one} for i in range(self.ncols)]


class AlgebraModel:
    """The finite-dimensional algebra ``Lambda = kQ / K``.

    Built by :func:`build_algebra`.  The graded pieces of ``K^p`` are computed
    on demand and cached, otherwise the object is read-only.  ``basis`` lists
    the normal monomials spanning Lambda (degree < ``N``), and ``left`` /
    ``right`` hold multiplication matrices by each arrow on that basis.
    """

    def __init__(self, quiver, twist, relations, field, max_degree, path_budget=200_000):
        self.quiver: Quiver = quiver
        self.twist: Twist = twist
        self.relations: RelationSet = relations
        self.field: FieldSpec = field
        self.max_degree = max_degree
        self.path_budget = path_budget
        self.tails = quiver.tails()
        self.heads = quiver.heads()
        self.m = relations.max_length()
        self._paths: dict[int, list] = {}
        self._pindex: dict[int, dict] = {}
        self._counts: dict[int, list[list[int]]] = {}
        self._ideal: dict[tuple[int, int], object] = {}
        self._slices: dict[int, GradedSlice] = {}
        self._gens = self._int_generators()

    # paths ----------------------------------------------------------------

    def num_paths(self, d: int) -> int:
        """Number of paths of length ``d`` (via adjacency powers, no enumeration)."""
        return sum(sum(r) for r in self._count_matrix(d))

    def _count_matrix(self, d):
        if d not in self._counts:
            n = self.quiver.num_vertices
            if d == 0:
                self._counts[0] = [[int(i == j) for j in range(n)] for i in range(n)]
            else:
                prev = self._count_matrix(d - 1)
                cur = [[0] * n for _ in range(n)]
                # cur[h][t]: paths of length d from t to h
                for a in range(self.quiver.num_arrows):
                    h, t0 = self.heads[a], self.tails[a]
                    for t in range(n):
                        cur[h][t] += prev[t0][t]
                self._counts[d] = cur
        return self._counts[d]

    def paths(self, d: int) -> list[tuple[tuple[int, ...], int, int]]:
        """Length-``d`` paths as ``(word, tail, head)`` with integer labels, sorted by block."""
        if d not in self._paths:
            if self.num_paths(d) > self.path_budget:
                raise CutoffExceeded(
                    f"{self.num_paths(d)} paths in degree {d} exceed the budget {self.path_budget}"
                )
            ps = sorted(_int_paths(self.quiver, d), key=lambda p: (p[2], p[1], p[0]))
            self._paths[d] = ps
            self._pindex[d] = {(w, t): k for k, (w, t, _) in enumerate(ps)}
        return self._paths[d]

    def path_index(self, d: int, word: tuple[int, ...], tail: int) -> int:
        self.paths(d)
        return self._pindex[d][(word, tail)]

    def mul_right(self, vec: Mapping[int, object], d: int, a: int) -> dict:
        """``vec * a`` for ``vec`` in the degree-``d`` path span (a traversed first)."""
        paths = self.paths(d)
        self.paths(d + 1)
        idx = self._pindex[d + 1]
        ha, ta = self.heads[a], self.tails[a]
        out = {}
        for k, c in vec.items():
            w, t, _ = paths[k]
            if t == ha:
                out[idx[(w + (a,), ta)]] = c
        return out

    def mul_left(self, a: int, vec: Mapping[int, object], d: int) -> dict:
        """``a * vec`` (a traversed last)."""
        paths = self.paths(d)
        self.paths(d + 1)
        idx = self._pindex[d + 1]
        ta = self.tails[a]
        out = {}
        for k, c in vec.items():
            w, t, h = paths[k]
            if h == ta:
                out[idx[((a,) + w, t)]] = c
        return out

    def mul_paths(self, left, dl, right, dr) -> dict:
        """Product of two path-span vectors of degrees ``dl`` and ``dr``."""
        pl, pr = self.paths(dl), self.paths(dr)
        self.paths(dl + dr)
        idx = self._pindex[dl + dr]
        out: dict = {}
        p = None if self.field.is_rational else self.field.p
        for i, x in left.items():
            wl, tl, _ = pl[i]
            for j, y in right.items():
                wr, tr, hr = pr[j]
                if tl != hr:
                    continue
                k = idx[(wl + wr, tr)]
                s = out.get(k, 0) + x * y
                out[k] = s if p is None else s % p
        return {k: v for k, v in out.items() if v}

    # relations ------------------------------------------------------------

    def _int_generators(self):
        q = self.quiver
        gens = []
        for rel in self.relations.generators:
            vec: dict = {}
            ell = len(rel[0][1])
            for c, w in rel:
                word = tuple(q.arrow_index(n) for n in w)
                k = self.path_index(ell, word, self.tails[word[-1]])
                vec[k] = self.field(c) + vec.get(k, 0)
                if not self.field.is_rational:
                    vec[k] %= self.field.p
            vec = {k: v for k, v in vec.items() if v}
            if vec:
                gens.append((ell, vec))
        return gens

    @property
    def generator_vectors(self) -> list[tuple[int, dict]]:
        """Relations as ``(length, sparse vector over paths of that length)``."""
        return list(self._gens)

    # ideal powers ---------------------------------------------------------

    def ideal_piece(self, p: int, d: int):
        """Echelon (or full marker) of ``(K^p)_d`` inside the degree-``d`` path span."""
        key = (p, d)
        if key in self._ideal:
            return self._ideal[key]
        n = self.num_paths(d)
        if p == 0 or n == 0:
            res = _Full(self.field, n)
        elif d > 0 and isinstance(self.ideal_piece(p, d - 1), _Full):
            # paths of length d are exactly (paths of length d-1) * arrows
            res = _Full(self.field, n)
        else:
            res = self._compute_piece(p, d, n)
        self._ideal[key] = res
        return res

    def _compute_piece(self, p, d, n):
        # (K^p)_d = (K^p)_{d-1} * arrows + sum_g (K^{p-1})_{d-|g|} * g
        e = Echelon(self.field, n)
        for ell, g in self._gens:
            if d - ell < 0:
                continue
            lower = self.ideal_piece(p - 1, d - ell)
            for row in lower.basis_rows():
                e.add(self.mul_paths(row, d - ell, g, ell))
                if e.is_full():
                    return _Full(self.field, n)
        if d > 0:
            prev = self.ideal_piece(p, d - 1)
            for row in prev.basis_rows():
                for a in range(self.quiver.num_arrows):
                    e.add(self.mul_right(row, d - 1, a))
                    if e.is_full():
                        return _Full(self.field, n)
        return e

    # Lambda ---------------------------------------------------------------

    def _finish(self):
        """Find N and set up the monomial basis of Lambda and its multiplication."""
        N = None
        for d in range(1, self.max_degree + 1):
            if self.ideal_piece(1, d).rank == self.num_paths(d):
                N = d
                break
        if N is None:
            raise NotAdmissible(
                f"Lambda has nonzero elements in every degree up to {self.max_degree}"
            )
        self.N = N
        basis = []  # (degree, path index)
        for d in range(N):
            piece = self.ideal_piece(1, d)
            piv = set(piece.pivots)
            for k in range(self.num_paths(d)):
                if k not in piv:
                    basis.append((d, k))
        self.basis = basis
        self._bindex = {b: i for i, b in enumerate(basis)}
        self.dims_by_degree = [sum(1 for b in basis if b[0] == d) for d in range(N)]
        self.basis_heads = [self.paths(d)[k][2] for d, k in basis]
        self.basis_tails = [self.paths(d)[k][1] for d, k in basis]
        na = self.quiver.num_arrows
        self.left = [self._mult_matrix(a, left=True) for a in range(na)]
        self.right = [self._mult_matrix(a, left=False) for a in range(na)]
        one = self.field.one()
        nv = self.quiver.num_vertices
        self.left_idempotents = [
            Mat(self.field, self.dim, self.dim, [{k: one} if h == i else {} for k, h in enumerate(self.basis_heads)])
            for i in range(nv)
        ]
        self.right_idempotents = [
            Mat(self.field, self.dim, self.dim, [{k: one} if t == i else {} for k, t in enumerate(self.basis_tails)])
            for i in range(nv)
        ]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_path(self, i: int) -> Path:
        d, k = self.basis[i]
        w, t, h = self.paths(d)[k]
        q = self.quiver
        return Path(tuple(q.arrows[a].name for a in w), q.vertices[t], q.vertices[h])

    def basis_word(self, i: int) -> tuple[tuple[int, ...], int, int]:
        d, k = self.basis[i]
        return self.paths(d)[k]

    def reduce(self, vec: Mapping[int, object], d: int) -> dict:
        """Coordinates in the Lambda basis of a degree-``d`` path-span vector."""
        if d >= self.N:
            return {}
        res = self.ideal_piece(1, d).residual(vec)
        return {self._bindex[(d, k)]: v for k, v in res.items()}

    def _mult_matrix(self, a, left):
        cols = []
        for d, k in self.basis:
            if d + 1 >= self.N:
                cols.append({})
                continue
            unit = {k: self.field.one()}
            v = self.mul_left(a, unit, d) if left else self.mul_right(unit, d, a)
            cols.append(self.reduce(v, d + 1))
        return Mat.from_columns(self.field, cols, self.dim)

    def multiply(self, x: Mapping[int, object], y: Mapping[int, object]) -> dict:
        """Product in Lambda of two coordinate vectors."""
        out: dict = {}
        p = None if self.field.is_rational else self.field.p
        for i, a in x.items():
            di, ki = self.basis[i]
            for j, b in y.items():
                dj, kj = self.basis[j]
                if di + dj >= self.N:
                    continue
                prod = self.mul_paths({ki: a}, di, {kj: b}, dj)
                for k, v in self.reduce(prod, di + dj).items():
                    s = out.get(k, 0) + v
                    out[k] = s if p is None else s % p
        return {k: v for k, v in out.items() if v}

    # slices ---------------------------------------------------------------

    def cutoff(self, p: int) -> int:
        """Degree bound ``(p+1)(N-1) + p*m`` past which ``K^p/K^{p+1}`` vanishes."""
        return (p + 1) * (self.N - 1) + p * self.m

    def slice(self, p: int, margin: int = 0) -> "GradedSlice":
        key = (p, margin)
        if key not in self._slices:
            self._slices[key] = _build_slice(self, p, margin)
        return self._slices[key]

    def __repr__(self):
        return (
            f"AlgebraModel(vertices={self.quiver.num_vertices}, arrows={self.quiver.num_arrows}, "
            f"relations={len(self._gens)}, field={self.field}, dim={self.dim}, N={self.N})"
        )


def ideal_graded_piece(model: AlgebraModel, p: int, d: int) -> Mat:
    """Reduced basis (rows over the degree-``d`` paths) of ``(K^p)_d``."""
    piece = model.ideal_piece(p, d)
    return Mat(model.field, piece.rank, model.num_paths(d), piece.basis_rows())


def build_algebra(
    q: Quiver,
    t: Twist | None = None,
    r: RelationSet | None = None,
    field: FieldSpec = QQ,
    max_degree: int = 12,
) -> AlgebraModel:
    """Build ``Lambda = kQ/K`` for the twist-expanded quiver.

    Raises NotAdmissible when ``Lambda`` does not vanish by ``max_degree``.
    """
    t = t if t is not None else Twist.trivial(q)
    r = r if r is not None else RelationSet()
    qe = expand_twist(q, t)
    r.validate(qe)
    model = AlgebraModel(qe, t, r, field, max_degree)
    model._finish()
    return model


# ---------------------------------------------------------------------------
# associated graded bimodules


@dataclass(eq=False)
class GradedSlice:
    """``A^p = K^p / K^{p+1}`` cut off at degree ``cutoff``.

    ``lifts[i]`` is a path-span vector (degree ``degrees[i]``) representing the
    i-th basis class.  ``left[a]`` / ``right[a]`` are the arrow actions in that
    basis; ``heads`` / ``tails`` give the vertex of each basis element under
    the left / right idempotents.
    """

    power: int
    cutoff: int
    field: FieldSpec
    degrees: list[int]
    lifts: list[dict]
    heads: list[int]
    tails: list[int]
    left: list[Mat] = dc_field(default_factory=list)
    right: list[Mat] = dc_field(default_factory=list)
    _model: AlgebraModel | None = None
    _quot: dict = dc_field(default_factory=dict)
    _offset: dict = dc_field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.lifts)

    def dims_by_degree(self) -> list[int]:
        out = [0] * (self.cutoff + 1)
        for d in self.degrees:
            out[d] += 1
        return out

    def indices_with_head(self, i: int) -> list[int]:
        return [k for k, h in enumerate(self.heads) if h == i]

    def project(self, vec: Mapping[int, object], d: int) -> dict:
        """Coordinates of the class of a ``(K^p)_d`` element (by global index)."""
        if d > self.cutoff or not vec:
            return {}
        m = self._model
        upper = m.ideal_piece(self.power + 1, d)
        res = upper.residual(vec)
        if not res:
            return {}
        q = self._quot.get(d)
        if q is None:
            raise ArithmeticError(f"vector of degree {d} is not in K^{self.power}")
        coords = q.coords(res)
        off = self._offset[d]
        return {off[c]: v for c, v in coords.items()}

    def left_projector(self, i: int) -> Mat:
        one = self.field.one()
        return Mat(self.field, self.dim, self.dim, [{k: one} if h == i else {} for k, h in enumerate(self.heads)])

    def right_projector(self, i: int) -> Mat:
        one = self.field.one()
        return Mat(self.field, self.dim, self.dim, [{k: one} if t == i else {} for k, t in enumerate(self.tails)])


def _build_slice(model: AlgebraModel, p: int, margin: int = 0) -> GradedSlice:
    D = model.cutoff(p)
    field = model.field
    degrees, lifts, heads, tails = [], [], [], []
    quot, offset = {}, {}
    for d in range(D + 1):
        upper = model.ideal_piece(p + 1, d)
        if upper.is_full():
            continue
        lower = model.ideal_piece(p, d)
        if isinstance(lower, _Full):
            e = Echelon(field, lower.ncols)
            piv = set(upper.pivots)
            one = field.one()
            for k in range(lower.ncols):
                if k not in piv:
                    e.add({k: one})
        else:
            if lower.rank == upper.rank:
                continue
            e = Echelon(field, lower.ncols)
            for row in lower.basis_rows():
                e.add(upper.residual(row))
        if e.rank == 0:
            continue
        # the two pieces must differ exactly by the quotient
        if lower.rank - upper.rank != e.rank:
            raise ArithmeticError(f"inconsistent ideal pieces at p={p}, d={d}")
        quot[d] = e
        offset[d] = {}
        paths = model.paths(d)
        for c in e.pivots:
            offset[d][c] = len(lifts)
            lifts.append(e.row(c))
            degrees.append(d)
            _, t, h = paths[c]
            heads.append(h)
            tails.append(t)
    for d in range(D + 1, D + model.m + margin + 1):
        if model.ideal_piece(p, d).rank != model.ideal_piece(p + 1, d).rank:
            raise CutoffExceeded(f"K^{p}/K^{p + 1} is nonzero in degree {d} > cutoff {D}")
    sl = GradedSlice(p, D, field, degrees, lifts, heads, tails, _model=model, _quot=quot, _offset=offset)
    na = model.quiver.num_arrows
    for a in range(na):
        lcols, rcols = [], []
        for i, v in enumerate(lifts):
            d = degrees[i]
            lcols.append(sl.project(model.mul_left(a, v, d), d + 1))
            rcols.append(sl.project(model.mul_right(v, d, a), d + 1))
        sl.left.append(Mat.from_columns(field, lcols, len(lifts)))
        sl.right.append(Mat.from_columns(field, rcols, len(lifts)))
    return sl


def associated_graded(model: AlgebraModel, p: int, margin: int = 0) -> GradedSlice:
    """The bimodule ``K^p/K^{p+1}`` with its graded basis and arrow actions."""
    return model.slice(p, margin)
