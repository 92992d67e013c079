"""Ext through minimal projective resolutions.

This is the classical route, kept independent of the coresolution engine so
the two can be compared.  ``Lambda e_i`` is spanned by the basis elements of
Lambda with tail ``i``; a cover of ``M`` sends one copy of it onto each
element of a basis of the top ``M / rad M``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import AlgebraModel
from .linalg import Mat, Subspace, kernel_basis, quotient, rank, span
from .representation import Representation, _blocks, word_action

__all__ = ["ResolutionStep", "projective_cover", "resolve", "ext_dims_oracle"]


@dataclass(frozen=True, eq=False)
class ResolutionStep:
    """One cover ``P -> M`` with its kernel.

    ``generators[g] = (vertex, element of M at that vertex)``.  The cover's
    vertex-``j`` basis is ``cover_basis[j]``, a list of ``(g, b)`` with ``b``
    a Lambda basis index of head ``j`` and tail ``vertex(g)``.
    ``surjection[j]`` maps cover coordinates onto ``M_j``; ``inclusion[j]``
    embeds kernel coordinates into cover coordinates.
    """

    multiplicities: tuple[int, ...]
    generators: tuple
    cover: Representation
    cover_basis: tuple
    surjection: tuple[Mat, ...]
    kernel: Representation
    inclusion: tuple[Mat, ...]


def _radical(M: Representation) -> list[Subspace]:
    q = M.quiver
    heads = q.heads()
    out = []
    for i, n in enumerate(M.dims):
        cols = []
        for a, m in enumerate(M.maps):
            if heads[a] == i:
                cols.extend(m.column(c) for c in range(m.cols))
        out.append(span(M.field, n, cols))
    return out


def _restrict(field, src: Subspace, dst: Subspace, f: Mat) -> Mat:
    """Matrix of ``f`` from ``src`` to ``dst`` in their basis coordinates."""
    e = dst.echelon()
    pos = {c: k for k, c in enumerate(e.pivots)}
    cols = []
    for v in src.vectors():
        img = f.apply(v)
        cols.append({pos[c]: x for c, x in e.coords(img).items()})
    return Mat.from_columns(field, cols, dst.dim)


def _path_actions(model: AlgebraModel, M: Representation) -> list[Mat]:
    return [word_action(M, w, t) for w, t, _ in (model.basis_word(b) for b in range(model.dim))]


def projective_cover(model: AlgebraModel, M) -> ResolutionStep:
    """Minimal projective cover of ``M`` and its kernel."""
    M = _blocks(M)
    field, q = model.field, model.quiver
    nv = q.num_vertices
    gens = []
    for i, rad in enumerate(_radical(M)):
        reps, _ = quotient(M.dims[i], rad)
        gens.extend((i, v) for v in reps.vectors())
    mult = tuple(sum(1 for g in gens if g[0] == i) for i in range(nv))
    basis = [[] for _ in range(nv)]
    for g, (i, _) in enumerate(gens):
        for b in range(model.dim):
            if model.basis_tails[b] == i:
                basis[model.basis_heads[b]].append((g, b))
    where = {}
    for j, blk in enumerate(basis):
        for k, gb in enumerate(blk):
            where[gb] = k
    # cover as a representation: left multiplication by arrows
    maps = []
    for a in range(q.num_arrows):
        t, h = model.tails[a], model.heads[a]
        left = model.left[a]
        cols = []
        for g, b in basis[t]:
            col = left.column(b)
            cols.append({where[(g, r)]: x for r, x in col.items()})
        maps.append(Mat.from_columns(field, cols, len(basis[h])))
    cover = Representation(q, field, tuple(len(b) for b in basis), tuple(maps), M.relations)
    acts = _path_actions(model, M)
    surj, kers, incl = [], [], []
    for j in range(nv):
        cols = []
        for g, b in basis[j]:
            cols.append(acts[b].apply(gens[g][1]))
        s = Mat.from_columns(field, cols, M.dims[j])
        surj.append(s)
        kers.append(span(field, s.cols, kernel_basis(s).vectors()))
    kmaps = [_restrict(field, kers[model.tails[a]], kers[model.heads[a]], cover.maps[a])
             for a in range(q.num_arrows)]
    kernel = Representation(q, field, tuple(k.dim for k in kers), tuple(kmaps), M.relations)
    for j in range(nv):
        incl.append(Mat.from_columns(field, kers[j].vectors(), cover.dims[j]))
    return ResolutionStep(mult, tuple(gens), cover, tuple(tuple(b) for b in basis),
                          tuple(surj), kernel, tuple(incl))


def resolve(model: AlgebraModel, M, length: int) -> list[ResolutionStep]:
    """Steps ``0..length`` of the minimal projective resolution of ``M``."""
    steps = []
    cur = _blocks(M)
    for _ in range(length + 1):
        st = projective_cover(model, cur)
        steps.append(st)
        cur = st.kernel
    return steps


def _hom_dual(model, steps, W, acts):
    """Matrices of ``Hom(P_p, W) -> Hom(P_{p+1}, W)``, ``f -> f . delta``."""
    field = model.field
    offs = []
    for st in steps:
        o, off = [], 0
        for i, _ in st.generators:
            o.append(off)
            off += W.dims[i]
        offs.append((o, off))
    mats = []
    for p in range(len(steps) - 1):
        src, dst = steps[p], steps[p + 1]
        (so, sn), (do, dn) = offs[p], offs[p + 1]
        rows = [{} for _ in range(dn)]
        for g2, (j, elt) in enumerate(dst.generators):
            delta = src.inclusion[j].apply(elt)  # cover coordinates at vertex j
            for k, lam in delta.items():
                g, b = src.cover_basis[j][k]
                rho = acts[b]  # W_j x W_{vertex(g)}
                for r in range(rho.rows):
                    row = rows[do[g2] + r]
                    for c, x in rho._data[r].items():
                        col = so[g] + c
                        s = row.get(col, 0) + lam * x
                        if not field.is_rational:
                            s %= field.p
                        row[col] = s
        rows = [{c: x for c, x in r.items() if x} for r in rows]
        mats.append(Mat(field, dn, sn, rows))
    return [o[1] for o in offs], mats


def ext_dims_oracle(model: AlgebraModel, V, W, P: int) -> list[int]:
    """``dim Ext^p(V, W)`` for ``0 <= p <= P`` from the minimal resolution of ``V``."""
    V, W = _blocks(V), _blocks(W)
    steps = resolve(model, V, P + 1)
    acts = _path_actions(model, W)
    sizes, mats = _hom_dual(model, steps, W, acts)
    ranks = [rank(m) for m in mats]
    return [sizes[p] - ranks[p] - (ranks[p - 1] if p else 0) for p in range(P + 1)]
