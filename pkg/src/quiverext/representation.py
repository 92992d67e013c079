"""Representations, their module incarnations, and Hom spaces.

A :class:`Representation` keeps one space per vertex and one matrix per
(expanded) arrow.  :func:`to_module_form` glues it into a single space with
idempotent projectors and arrow actions; :func:`to_representation` goes back.
Hom spaces are kernels of :func:`gamma_matrix`, whose domain is
``(+)_i Hom(V_i, W_i)`` with matrix-unit coordinates ``(i, row, col)`` in
row-major order and whose codomain is ``(+)_a Hom(V_t(a), W_h(a))``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping, Sequence

from .algebra import AlgebraModel, Quiver, RelationSet
from .errors import BlockInconsistency, ShapeMismatch
from .linalg import Echelon, FieldSpec, Mat, Subspace, kernel_basis, quotient, span

__all__ = [
    "Representation",
    "ModuleForm",
    "to_module_form",
    "to_representation",
    "check_relations",
    "evaluate_word",
    "gamma_matrix",
    "hom_basis",
    "hom_to_blocks",
    "blocks_to_hom",
    "random_module",
    "random_representation",
    "word_action",
    "path_vector_action",
]


@dataclass(frozen=True, eq=False)
class Representation:
    """Vertex dimensions plus one ``dims[h] x dims[t]`` matrix per arrow."""

    quiver: Quiver
    field: FieldSpec
    dims: tuple[int, ...]
    maps: tuple[Mat, ...]
    relations: RelationSet = RelationSet()

    def __post_init__(self):
        q = self.quiver
        if len(self.dims) != q.num_vertices:
            raise ShapeMismatch("one dimension per vertex expected")
        if len(self.maps) != q.num_arrows:
            raise ShapeMismatch("one matrix per arrow expected")
        tails, heads = q.tails(), q.heads()
        for a, m in enumerate(self.maps):
            want = (self.dims[heads[a]], self.dims[tails[a]])
            if m.shape != want:
                raise ShapeMismatch(
                    f"arrow {q.arrows[a].name!r}: matrix is {m.shape}, expected {want}"
                )

    @classmethod
    def from_dict(cls, quiver, field, dims: Mapping, maps: Mapping, relations=RelationSet()):
        """Build from ``{vertex: n}`` and ``{arrow name: nested list}``; absent arrows are zero."""
        d = tuple(int(dims.get(v, 0)) for v in quiver.vertices)
        unknown = set(maps) - {a.name for a in quiver.arrows}
        if unknown:
            raise ShapeMismatch(f"maps given for unknown arrows {sorted(unknown)}")
        tails, heads = quiver.tails(), quiver.heads()
        ms = []
        for k, a in enumerate(quiver.arrows):
            rows, cols = d[heads[k]], d[tails[k]]
            if a.name in maps:
                entries = maps[a.name]
                if len(entries) != rows or any(len(r) != cols for r in entries):
                    raise ShapeMismatch(
                        f"arrow {a.name!r} needs a {rows}x{cols} matrix"
                    )
                ms.append(Mat.from_lists(field, entries, cols))
            else:
                ms.append(Mat.zeros(field, rows, cols))
        return cls(quiver, field, d, tuple(ms), relations)

    @classmethod
    def zero(cls, quiver, field, relations=RelationSet()):
        return cls.from_dict(quiver, field, {}, {}, relations)

    @classmethod
    def simple(cls, quiver, field, vertex, relations=RelationSet()):
        return cls.from_dict(quiver, field, {vertex: 1}, {}, relations)

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def map(self, name: str) -> Mat:
        return self.maps[self.quiver.arrow_index(name)]

    def with_relations(self, relations: RelationSet) -> "Representation":
        return Representation(self.quiver, self.field, self.dims, self.maps, relations)

    def conjugate(self, changes: Sequence[Mat], inverses: Sequence[Mat]) -> "Representation":
        """Base change ``phi_a -> g_h phi_a g_t^-1`` by per-vertex invertible maps."""
        tails, heads = self.quiver.tails(), self.quiver.heads()
        maps = tuple(
            changes[heads[a]] @ m @ inverses[tails[a]] for a, m in enumerate(self.maps)
        )
        return Representation(self.quiver, self.field, self.dims, maps, self.relations)

    def __eq__(self, other):
        if not isinstance(other, Representation):
            return NotImplemented
        return (
            self.quiver == other.quiver
            and self.field == other.field
            and self.dims == other.dims
            and self.maps == other.maps
        )

    def __hash__(self):
        return hash((self.quiver, self.field, self.dims))

    def __repr__(self):
        return f"Representation(dims={self.dims}, arrows={[a.name for a in self.quiver.arrows]})"


@dataclass(frozen=True, eq=False)
class ModuleForm:
    """A module as one space with vertex projectors and arrow actions.

    ``offsets`` records the block layout when the module came from a
    representation (vertex ``i`` occupies ``offsets[i] : offsets[i] + dims[i]``).
    """

    quiver: Quiver
    field: FieldSpec
    total_dim: int
    projectors: tuple[Mat, ...]
    actions: tuple[Mat, ...]
    dims: tuple[int, ...] | None = None
    offsets: tuple[int, ...] | None = None
    relations: RelationSet = RelationSet()

    def __eq__(self, other):
        if not isinstance(other, ModuleForm):
            return NotImplemented
        return (
            self.quiver == other.quiver
            and self.total_dim == other.total_dim
            and self.projectors == other.projectors
            and self.actions == other.actions
        )

    def __hash__(self):
        return hash((self.quiver, self.total_dim))


def to_module_form(rep: Representation) -> ModuleForm:
    """Block-diagonal assembly ``V = (+)_i V_i`` with each arrow acting in its block."""
    q, field = rep.quiver, rep.field
    offsets, off = [], 0
    for n in rep.dims:
        offsets.append(off)
        off += n
    total = off
    one = field.one()
    projectors = []
    for i, n in enumerate(rep.dims):
        data = [{} for _ in range(total)]
        for k in range(offsets[i], offsets[i] + n):
            data[k] = {k: one}
        projectors.append(Mat(field, total, total, data))
    tails, heads = q.tails(), q.heads()
    actions = []
    for a, m in enumerate(rep.maps):
        data = [{} for _ in range(total)]
        ro, co = offsets[heads[a]], offsets[tails[a]]
        for r in range(m.rows):
            data[ro + r] = {co + c: v for c, v in m._data[r].items()}
        actions.append(Mat(field, total, total, data))
    return ModuleForm(
        q, field, total, tuple(projectors), tuple(actions), tuple(rep.dims), tuple(offsets), rep.relations
    )


def to_representation(mf: ModuleForm) -> Representation:
    """Recover per-vertex spaces (images of the projectors) and the arrow blocks."""
    q, field, n = mf.quiver, mf.field, mf.total_dim
    ident = Mat.identity(field, n)
    total = Mat.zeros(field, n, n)
    for i, e in enumerate(mf.projectors):
        if e @ e != e:
            raise BlockInconsistency(f"projector of vertex {q.vertices[i]!r} is not idempotent")
        for j, f in enumerate(mf.projectors):
            if i != j and not (e @ f).is_zero():
                raise BlockInconsistency("vertex projectors are not orthogonal")
        total = total + e
    if total != ident:
        raise BlockInconsistency("vertex projectors do not sum to the identity")
    bases = [span(field, n, [e.column(j) for j in range(n)]) for e in mf.projectors]
    tails, heads = q.tails(), q.heads()
    maps = []
    for a, act in enumerate(mf.actions):
        eh, et = mf.projectors[heads[a]], mf.projectors[tails[a]]
        if eh @ act @ et != act:
            raise BlockInconsistency(f"action of arrow {q.arrows[a].name!r} leaks outside its block")
        src, dst = bases[tails[a]], bases[heads[a]]
        dst_e = dst.echelon()
        piv = dst_e.pivots
        pos = {c: k for k, c in enumerate(piv)}
        cols = []
        for v in src.vectors():
            img = act.apply(v)
            cols.append({pos[c]: x for c, x in dst_e.coords(img).items()})
        maps.append(Mat.from_columns(field, cols, dst.dim))
    dims = tuple(b.dim for b in bases)
    return Representation(q, field, dims, tuple(maps), mf.relations)


def _blocks(x) -> Representation:
    return x if isinstance(x, Representation) else to_representation(x)


# ---------------------------------------------------------------------------
# relations


def evaluate_word(rep: Representation, word: Sequence[str]) -> Mat:
    """``phi[w0] @ phi[w1] @ ...`` -- the rightmost letter acts first."""
    out = rep.map(word[-1])
    for name in reversed(word[:-1]):
        out = rep.map(name) @ out
    return out


def check_relations(rep, rels: RelationSet | None = None) -> bool:
    """True iff every generator of ``rels`` evaluates to the zero matrix."""
    rep = _blocks(rep)
    rels = rep.relations if rels is None else rels
    field = rep.field
    for rel in rels.generators:
        acc = None
        for c, w in rel:
            term = evaluate_word(rep, w).scale(field(c))
            acc = term if acc is None else acc + term
        if acc is not None and not acc.is_zero():
            return False
    return True


# ---------------------------------------------------------------------------
# gamma and Hom


def _hom_offsets(dv, dw):
    offs, off = [], 0
    for n, m in zip(dv, dw):
        offs.append(off)
        off += n * m
    return offs, off


def gamma_matrix(V, W) -> Mat:
    """Matrix of ``f -> (f_h(a) phi_a - psi_a f_t(a))_a``."""
    V, W = _blocks(V), _blocks(W)
    q, field = V.quiver, V.field
    dv, dw = V.dims, W.dims
    doms, ndom = _hom_offsets(dv, dw)
    tails, heads = q.tails(), q.heads()
    rows = []
    for a in range(q.num_arrows):
        t, h = tails[a], heads[a]
        phi = V.maps[a]._data  # n_h x n_t
        psi = W.maps[a]._data  # m_h x m_t
        # phi columns: for each c, {k: phi[k][c]}
        phicols = [{} for _ in range(dv[t])]
        for k, r in enumerate(phi):
            for c, v in r.items():
                phicols[c][k] = v
        for r in range(dw[h]):
            psirow = psi[r]
            for c in range(dv[t]):
                row = {}
                base_h = doms[h] + r * dv[h]
                for k, v in phicols[c].items():
                    row[base_h + k] = v
                for k, v in psirow.items():
                    col = doms[t] + k * dv[t] + c
                    s = row.get(col, 0) - v
                    if not field.is_rational:
                        s %= field.p
                    if s:
                        row[col] = s
                    else:
                        row.pop(col, None)
                rows.append(row)
    return Mat(field, len(rows), ndom, rows)


def hom_basis(V, W) -> Subspace:
    """Basis of ``Hom(V, W)`` as the kernel of :func:`gamma_matrix`."""
    return kernel_basis(gamma_matrix(V, W))


def hom_to_blocks(vec: Mapping[int, object], V, W) -> list[Mat]:
    """Split a Hom-space coordinate vector into per-vertex matrices ``W_i x V_i``."""
    V, W = _blocks(V), _blocks(W)
    doms, _ = _hom_offsets(V.dims, W.dims)
    out = []
    for i, (n, m) in enumerate(zip(V.dims, W.dims)):
        data = [{} for _ in range(m)]
        for r in range(m):
            for c in range(n):
                x = vec.get(doms[i] + r * n + c)
                if x:
                    data[r][c] = x
        out.append(Mat(V.field, m, n, data))
    return out


def blocks_to_hom(blocks: Sequence[Mat], V, W) -> dict:
    V, W = _blocks(V), _blocks(W)
    doms, _ = _hom_offsets(V.dims, W.dims)
    out = {}
    for i, b in enumerate(blocks):
        n = V.dims[i]
        for r, row in enumerate(b._data):
            for c, x in row.items():
                out[doms[i] + r * n + c] = x
    return out


# ---------------------------------------------------------------------------
# random instances


def random_representation(quiver, field, dims, rng: random.Random, density=0.7) -> Representation:
    """Random matrices, no relations imposed (use on relation-free quivers)."""
    tails, heads = quiver.tails(), quiver.heads()
    dims = tuple(dims)
    maps = []
    for a in range(quiver.num_arrows):
        rows, cols = dims[heads[a]], dims[tails[a]]
        lists = [
            [rng.randint(-3, 3) if rng.random() < density else 0 for _ in range(cols)]
            for _ in range(rows)
        ]
        maps.append(Mat.from_lists(field, lists, cols))
    return Representation(quiver, field, dims, tuple(maps))


def random_module(model: AlgebraModel, generators: int, relators: int, seed: int) -> Representation:
    """``Lambda^g`` modulo the submodule generated by random radical elements.

    Each relator is a random homogeneous combination of basis elements of
    some positive degree, so the quotient keeps the top of the free module.
    The result satisfies the relations by construction.
    """
    if generators < 1:
        raise ValueError("need at least one generator")
    rng = random.Random(seed)
    field, q = model.field, model.quiver
    nv = q.num_vertices
    # free module basis grouped by vertex: (generator, Lambda basis index)
    blocks = [
        [(j, b) for j in range(generators) for b in range(model.dim) if model.basis_heads[b] == i]
        for i in range(nv)
    ]
    where = {}
    for i, blk in enumerate(blocks):
        for k, jb in enumerate(blk):
            where[jb] = (i, k)
    left = [m._data for m in model.left]  # row-major: left[a][row] = {col: v}
    # columns of the left action: for basis b, a*b = sum_r left[a][r][b] r
    lcols = []
    for a in range(q.num_arrows):
        cols = [{} for _ in range(model.dim)]
        for r, row in enumerate(left[a]):
            for c, v in row.items():
                cols[c][r] = v
        lcols.append(cols)

    subs = [Echelon(field, len(blk)) for blk in blocks]
    pending = []
    top = model.N - 1
    for _ in range(relators):
        if top < 1:
            break
        d = rng.randint(1, top)
        cand = [(j, b) for j in range(generators) for b in range(model.dim) if model.basis[b][0] == d]
        if not cand:
            continue
        vec = {}
        while not any(vec.values()):
            vec = {jb: field(rng.randint(-3, 3)) for jb in cand}
        for i in range(nv):
            comp = {where[jb][1]: v for jb, v in vec.items() if v and where[jb][0] == i}
            if comp:
                pending.append((i, comp))
    # close under the arrow actions
    while pending:
        i, v = pending.pop()
        if not subs[i].add(v):
            continue
        for a in range(q.num_arrows):
            if model.tails[a] != i:
                continue
            h = model.heads[a]
            img = {}
            for k, x in v.items():
                j, b = blocks[i][k]
                for r, y in lcols[a][b].items():
                    key = where[(j, r)][1]
                    img[key] = img.get(key, 0) + x * y
            img = {k: (y if field.is_rational else y % field.p) for k, y in img.items()}
            img = {k: y for k, y in img.items() if y}
            if img:
                pending.append((h, img))
    reps, projs = [], []
    for i, blk in enumerate(blocks):
        r, pmat = quotient(len(blk), subs[i].subspace())
        reps.append(r)
        projs.append(pmat)
    maps = []
    for a in range(q.num_arrows):
        t, h = model.tails[a], model.heads[a]
        cols = []
        for rv in reps[t].vectors():
            img = {}
            for k, x in rv.items():
                j, b = blocks[t][k]
                for r, y in lcols[a][b].items():
                    key = where[(j, r)][1]
                    img[key] = img.get(key, 0) + x * y
            cols.append(projs[h].apply(img))
        maps.append(Mat.from_columns(field, cols, reps[h].dim))
    dims = tuple(r.dim for r in reps)
    return Representation(q, field, dims, tuple(maps), model.relations)


def word_action(rep: Representation, word: Sequence[int], vertex: int) -> Mat:
    """Matrix of a path given by integer arrow labels; the empty word is ``1_vertex``."""
    if not word:
        return Mat.identity(rep.field, rep.dims[vertex])
    out = rep.maps[word[-1]]
    for a in reversed(word[:-1]):
        out = rep.maps[a] @ out
    return out


def path_vector_action(model: AlgebraModel, rep: Representation, vec: Mapping[int, object], d: int) -> Mat:
    """Matrix by which a degree-``d`` path-span vector (one block) acts on ``rep``."""
    paths = model.paths(d)
    acc = None
    for k, c in sorted(vec.items()):
        w, t, _ = paths[k]
        term = word_action(rep, w, t).scale(c)
        acc = term if acc is None else acc + term
    return acc
