"""Injective coresolutions built from the graded pieces of the ideal filtration.

With ``A^q = K^q / K^{q+1}`` the terms are

    C^{2q}   = (+)_i Hom_k(e_i A^q, W_i)
    C^{2q+1} = (+)_a Hom_k(e_t(a) A^q, W_h(a))

made into left modules by ``(b f)(s) = f(s b)``.  A basis element of either
term is a matrix unit ``f_{xi,w}`` sending the class ``xi`` to the basis vector
``w`` (tagged with an arrow in the odd case); it sits at the vertex ``t(xi)``.

The even differential is gamma for ``A^q``.  The odd one is
``iota . dbar^-1 . pi``: project onto coker gamma_{A^q}, pull back along the
connecting isomorphism ``dbar: Hom(A^{q+1}, W) -> coker gamma_{A^q}`` and
include into ``C^{2q+2}``.  ``dbar`` is the snake-lemma map for
``0 -> K^{q+1} -> K^q -> A^q -> 0``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .algebra import AlgebraModel
from .errors import HasRelations, SingularConnectingMap
from .linalg import Echelon, Mat, column_space, kernel_basis, quotient, rank
from .representation import (
    Representation,
    _blocks,
    blocks_to_hom,
    gamma_matrix,
    hom_basis,
    hom_to_blocks,
    path_vector_action,
    to_module_form,
)

__all__ = [
    "CoresolutionSegment",
    "ExtResult",
    "VerificationReport",
    "coresolution",
    "connecting_matrix",
    "verify_coresolution",
    "ext_dims",
    "ext_hereditary",
    "spectral_page",
]


def _clean(field, vec):
    if field.is_rational:
        return {k: v for k, v in vec.items() if v}
    p = field.p
    out = {}
    for k, v in vec.items():
        v %= p
        if v:
            out[k] = v
    return out


def _axpy(out, vec, c):
    for k, v in vec.items():
        out[k] = out.get(k, 0) + c * v


# ---------------------------------------------------------------------------
# terms


@dataclass(frozen=True, eq=False)
class _Term:
    labels: list  # (xi, w) or (a, xi, w), in block order
    index: dict
    rep: Representation
    power: int


def _offsets(dims):
    out, off = [], 0
    for n in dims:
        out.append(off)
        off += n
    return out


def _make_term(model: AlgebraModel, W: Representation, sl, odd: bool) -> _Term:
    q = model.quiver
    nv = q.num_vertices
    if odd:
        raw = [
            (a, xi, w)
            for a in range(q.num_arrows)
            for xi in range(sl.dim)
            if sl.heads[xi] == model.tails[a]
            for w in range(W.dims[model.heads[a]])
        ]
        vert = lambda lab: sl.tails[lab[1]]
    else:
        raw = [(xi, w) for xi in range(sl.dim) for w in range(W.dims[sl.heads[xi]])]
        vert = lambda lab: sl.tails[lab[0]]
    by_vertex = [[lab for lab in raw if vert(lab) == i] for i in range(nv)]
    labels = [lab for blk in by_vertex for lab in blk]
    index = {lab: k for k, lab in enumerate(labels)}
    local = {}
    for blk in by_vertex:
        for k, lab in enumerate(blk):
            local[lab] = k
    dims = tuple(len(b) for b in by_vertex)
    maps = []
    for b in range(q.num_arrows):
        rb = sl.right[b]._data
        h = model.heads[b]
        cols = []
        for lab in by_vertex[model.tails[b]]:
            xi = lab[-2]
            col = {}
            for eta, c in rb[xi].items():
                new = lab[:-2] + (eta, lab[-1])
                col[local[new]] = c
            cols.append(col)
        maps.append(Mat.from_columns(model.field, cols, dims[h]))
    rep = Representation(q, model.field, dims, tuple(maps), model.relations)
    return _Term(labels, index, rep, sl.power)


def _even_differential(model, W, sl, src: _Term, dst: _Term) -> Mat:
    field = model.field
    q = model.quiver
    out_arrows = [[a for a in range(q.num_arrows) if model.heads[a] == i] for i in range(q.num_vertices)]
    in_arrows = [[a for a in range(q.num_arrows) if model.tails[a] == i] for i in range(q.num_vertices)]
    cols = []
    for xi, w in src.labels:
        i = sl.heads[xi]
        col = {}
        for a in out_arrows[i]:
            for eta, c in sl.left[a]._data[xi].items():
                k = dst.index[(a, eta, w)]
                col[k] = col.get(k, 0) + c
        for a in in_arrows[i]:
            psi = W.maps[a]
            for w2 in range(psi.rows):
                c = psi._data[w2].get(w)
                if c:
                    k = dst.index[(a, xi, w2)]
                    col[k] = col.get(k, 0) - c
        cols.append(_clean(field, col))
    return Mat.from_columns(field, cols, len(dst.labels))


def _augmentation(model, W, sl, term: _Term) -> Mat:
    field = model.field
    acts = [path_vector_action(model, W, sl.lifts[xi], sl.degrees[xi]) for xi in range(sl.dim)]
    cols = []
    for j, n in enumerate(W.dims):
        for w in range(n):
            col = {}
            for xi in range(sl.dim):
                if sl.tails[xi] != j:
                    continue
                rho = acts[xi]
                for w2 in range(rho.rows):
                    c = rho._data[w2].get(w)
                    if c:
                        col[term.index[(xi, w2)]] = c
            cols.append(col)
    return Mat.from_columns(field, cols, len(term.labels))


def _inverse(m: Mat) -> Mat:
    n = m.rows
    e = Echelon(m.field, 2 * n)
    one = m.field.one()
    for r in range(n):
        row = dict(m._data[r])
        row[n + r] = one
        e.add(row)
    if any(c >= n for c in e.pivots):
        raise SingularConnectingMap("connecting map is not invertible")
    rows = [{k - n: v for k, v in e.row(i).items() if k >= n} for i in range(n)]
    return Mat(m.field, n, n, rows)


def _connecting(model, W, q, sl_q, sl_q1, odd_term, even_next, dnext, d_even, seed=None):
    """Return (dbar, kernel basis matrix, cokernel projection)."""
    field = model.field
    kers = kernel_basis(dnext)
    gs = kers.vectors()
    img = column_space(d_even)
    reps, proj = quotient(len(odd_term.labels), img)
    rng = random.Random(seed) if seed is not None else None
    # arbitrary values on the complement of K^{q+1} in K^q (zero by default)
    rand = []
    for xi in range(sl_q.dim):
        n = W.dims[sl_q.heads[xi]]
        rand.append([field.random(rng) for _ in range(n)] if rng else [0] * n)
    # x = a . lift(xi) = k + sum c_eta lift(eta), k in K^{q+1}
    pieces = []
    for a in range(model.quiver.num_arrows):
        for xi in range(sl_q.dim):
            if sl_q.heads[xi] != model.tails[a]:
                continue
            d = sl_q.degrees[xi]
            x = model.mul_left(a, sl_q.lifts[xi], d)
            c = sl_q.project(x, d + 1)
            k = dict(x)
            for eta, ce in c.items():
                _axpy(k, sl_q.lifts[eta], -ce)
            k = _clean(field, k)
            kc = sl_q1.project(k, d + 1)
            pieces.append((a, xi, c, kc))
    cols = []
    for g in gs:
        h = {}
        for a, xi, c, kc in pieces:
            psi = W.maps[a]
            hw = model.heads[a]
            val = [0] * W.dims[hw]
            for zeta, cz in kc.items():
                for w in range(W.dims[hw]):
                    gv = g.get(even_next.index[(zeta, w)])
                    if gv:
                        val[w] += cz * gv
            for eta, ce in c.items():
                for w, r in enumerate(rand[eta]):
                    val[w] += ce * r
            for w2 in range(psi.rows):
                for w, r in enumerate(rand[xi]):
                    if r:
                        val[w2] -= psi._data[w2].get(w, 0) * r
            for w, v in enumerate(val):
                if v:
                    h[odd_term.index[(a, xi, w)]] = v
        cols.append(proj.apply(_clean(field, h)))
    dbar = Mat.from_columns(field, cols, reps.dim)
    if dbar.rows != dbar.cols or rank(dbar) != dbar.cols:
        raise SingularConnectingMap(
            f"connecting map for q={q} is {dbar.rows}x{dbar.cols} of rank {rank(dbar)}"
        )
    gmat = Mat.from_columns(field, gs, len(even_next.labels))
    return dbar, gmat, proj


# ---------------------------------------------------------------------------
# segments


@dataclass(frozen=True, eq=False)
class CoresolutionSegment:
    """Terms ``C^0..C^{P+1}``, differentials ``d_0..d_P`` and the augmentation."""

    model: AlgebraModel
    W: Representation
    P: int
    terms: tuple[Representation, ...]
    differentials: tuple[Mat, ...]
    augmentation: Mat
    connecting: tuple[Mat, ...] = ()
    labels: tuple = ()

    @property
    def max_index(self) -> int:
        return self.P + 1

    def term_module(self, p: int):
        return to_module_form(self.terms[p])

    def term_dims(self) -> list[int]:
        return [t.total_dim for t in self.terms]


def _build(model, W, P, margin, seed):
    W = _blocks(W)
    nq = (P + 1) // 2  # highest q with A^q needed
    slices = [model.slice(q, margin) for q in range(nq + 1)]
    terms = []
    for p in range(P + 2):
        terms.append(_make_term(model, W, slices[p // 2], odd=p % 2 == 1))
    evens = {}

    def even(q):
        if q not in evens:
            src = terms[2 * q] if 2 * q < len(terms) else _make_term(model, W, slices[q], False)
            dst = terms[2 * q + 1] if 2 * q + 1 < len(terms) else _make_term(model, W, slices[q], True)
            evens[q] = (src, dst, _even_differential(model, W, slices[q], src, dst))
        return evens[q]

    diffs, conn = [], []
    for p in range(P + 1):
        q = p // 2
        if p % 2 == 0:
            diffs.append(even(q)[2])
        else:
            _, odd_term, d_even = even(q)
            nxt, _, dnext = even(q + 1)
            dbar, gmat, proj = _connecting(
                model, W, q, slices[q], slices[q + 1], odd_term, nxt, dnext, d_even, seed
            )
            conn.append(dbar)
            diffs.append(gmat @ _inverse(dbar) @ proj)
    aug = _augmentation(model, W, slices[0], terms[0])
    return CoresolutionSegment(
        model, W, P, tuple(t.rep for t in terms), tuple(diffs), aug, tuple(conn),
        tuple(tuple(t.labels) for t in terms),
    )


def coresolution(model: AlgebraModel, W, P: int, margin: int = 0, seed=None) -> CoresolutionSegment:
    """Coresolution of ``W`` through ``C^{P+1}``.

    ``seed`` picks random values for the extension used inside the connecting
    maps; the resulting differentials do not depend on it.
    """
    return _build(model, W, P, margin, seed)


def connecting_matrix(model: AlgebraModel, q: int, W, margin: int = 0, seed=None) -> Mat:
    """Matrix of ``Hom(A^{q+1}, W) -> coker gamma_{A^q, W}``."""
    W = _blocks(W)
    sl_q, sl_q1 = model.slice(q, margin), model.slice(q + 1, margin)
    ev = _make_term(model, W, sl_q, False)
    od = _make_term(model, W, sl_q, True)
    ev1 = _make_term(model, W, sl_q1, False)
    od1 = _make_term(model, W, sl_q1, True)
    d_even = _even_differential(model, W, sl_q, ev, od)
    dnext = _even_differential(model, W, sl_q1, ev1, od1)
    return _connecting(model, W, q, sl_q, sl_q1, od, ev1, dnext, d_even, seed)[0]


# ---------------------------------------------------------------------------
# verification


@dataclass
class VerificationReport:
    checks: dict = dc_field(default_factory=dict)  # name -> (ok, detail)

    @property
    def ok(self) -> bool:
        return all(v[0] for v in self.checks.values())

    def failures(self) -> list[str]:
        return [f"{k}: {v[1]}" for k, v in self.checks.items() if not v[0]]

    def as_dict(self) -> dict:
        return {k: {"ok": v[0], "detail": v[1]} for k, v in self.checks.items()}


def _lambda_linear(src: Representation, dst: Representation, d: Mat) -> str | None:
    so, do = _offsets(src.dims), _offsets(dst.dims)
    sv = [i for i, n in enumerate(src.dims) for _ in range(n)]
    dv = [i for i, n in enumerate(dst.dims) for _ in range(n)]
    for r, row in enumerate(d._data):
        for c in row:
            if sv[c] != dv[r]:
                return "does not preserve vertex components"
    q = src.quiver
    for a in range(q.num_arrows):
        t, h = q.tails()[a], q.heads()[a]
        dt = d.submatrix(range(do[t], do[t] + dst.dims[t]), range(so[t], so[t] + src.dims[t]))
        dh = d.submatrix(range(do[h], do[h] + dst.dims[h]), range(so[h], so[h] + src.dims[h]))
        if dst.maps[a] @ dt != dh @ src.maps[a]:
            return f"does not commute with arrow {q.arrows[a].name!r}"
    return None


def verify_coresolution(seg: CoresolutionSegment, injectivity: bool = True) -> VerificationReport:
    """Run the six structural checks; failures are recorded, never raised."""
    from .oracle import ext_dims_oracle
    from .representation import Representation as Rep

    rep = VerificationReport()
    W = seg.W
    aug = seg.augmentation
    ds = seg.differentials
    try:
        r_aug = rank(aug)
        rep.checks["augmentation_injective"] = (r_aug == W.total_dim, f"rank {r_aug} of {W.total_dim}")
        if ds:
            zero = (ds[0] @ aug).is_zero()
            ker0 = ds[0].cols - rank(ds[0])
            rep.checks["augmentation_image"] = (
                zero and ker0 == r_aug,
                f"d0.aug zero: {zero}, dim ker d0 {ker0}, rank aug {r_aug}",
            )
        else:
            rep.checks["augmentation_image"] = (True, "no differentials")
        bad = [p for p in range(len(ds) - 1) if not (ds[p + 1] @ ds[p]).is_zero()]
        rep.checks["d_squared_zero"] = (not bad, f"nonzero d_{{p+1}} d_p at p in {bad}" if bad else "ok")
        ranks = [rank(d) for d in ds]
        inexact = [p for p in range(1, len(ds)) if ds[p].cols - ranks[p] != ranks[p - 1]]
        rep.checks["exact"] = (
            not inexact and not bad,
            f"inexact at {inexact}" if inexact else "ok",
        )
        nonlin = []
        for p, d in enumerate(ds):
            why = _lambda_linear(seg.terms[p], seg.terms[p + 1], d)
            if why:
                nonlin.append(f"d_{p} {why}")
        rep.checks["lambda_linear"] = (not nonlin, "; ".join(nonlin) or "ok")
        if injectivity:
            model = seg.model
            q = model.quiver
            bad_terms = []
            for p, t in enumerate(seg.terms[: seg.P + 1]):
                for i in range(q.num_vertices):
                    s = Rep.simple(q, model.field, q.vertices[i], model.relations)
                    e1 = ext_dims_oracle(model, s, t, 1)[1]
                    if e1:
                        bad_terms.append(f"Ext^1(S_{q.vertices[i]}, C^{p}) = {e1}")
            rep.checks["injective_terms"] = (not bad_terms, "; ".join(bad_terms) or "ok")
    except Exception as exc:  # report, do not raise
        rep.checks["error"] = (False, f"{type(exc).__name__}: {exc}")
    return rep


# ---------------------------------------------------------------------------
# Ext


@dataclass(frozen=True)
class ExtResult:
    dims: list[int]
    cocycles: list[list[dict]]
    hom_dims: list[int] = dc_field(default_factory=list)


def _vertex_blocks(d: Mat, src: Representation, dst: Representation) -> list[Mat]:
    so, do = _offsets(src.dims), _offsets(dst.dims)
    return [
        d.submatrix(range(do[i], do[i] + dst.dims[i]), range(so[i], so[i] + src.dims[i]))
        for i in range(len(src.dims))
    ]


def ext_dims(model: AlgebraModel, V, W, P: int, margin: int = 0, segment: CoresolutionSegment | None = None) -> ExtResult:
    """``dim Ext^p(V, W)`` for ``0 <= p <= P`` via ``Hom(V, C^*(W))``."""
    V = _blocks(V)
    seg = segment if segment is not None else coresolution(model, W, P, margin)
    field = model.field
    homs = [hom_basis(V, seg.terms[p]).vectors() for p in range(P + 1)]
    images = []
    for p in range(P + 1):
        src, dst = seg.terms[p], seg.terms[p + 1]
        blocks = _vertex_blocks(seg.differentials[p], src, dst)
        imgs = []
        for f in homs[p]:
            fb = hom_to_blocks(f, V, src)
            imgs.append(blocks_to_hom([b @ x for b, x in zip(blocks, fb)], V, dst))
        images.append(imgs)
    dims, cocycles = [], []
    prev_echelon = None
    for p in range(P + 1):
        n = sum(a * b for a, b in zip(V.dims, seg.terms[p + 1].dims))
        m = Mat.from_columns(field, images[p], n)
        lam = kernel_basis(m).vectors()
        cyc = []
        for vec in lam:
            z = {}
            for j, c in vec.items():
                _axpy(z, homs[p][j], c)
            cyc.append(_clean(field, z))
        e = prev_echelon if prev_echelon is not None else Echelon(field, sum(a * b for a, b in zip(V.dims, seg.terms[p].dims)))
        reps = [z for z in cyc if e.add(z)]
        dims.append(len(reps))
        cocycles.append(reps)
        e_next = Echelon(field, n)
        e_next.add_many(images[p])
        prev_echelon = e_next
    return ExtResult(dims, cocycles, [len(h) for h in homs])


def ext_hereditary(V, W) -> tuple[int, int]:
    """``(dim ker gamma, dim coker gamma)``; valid only without relations."""
    V, W = _blocks(V), _blocks(W)
    if V.relations or W.relations:
        raise HasRelations("hereditary formula needs an empty relation set")
    g = gamma_matrix(V, W)
    r = rank(g)
    return g.cols - r, g.rows - r


def spectral_page(model: AlgebraModel, V, W, P: int, margin: int = 0) -> list[list[int]]:
    """First page ``E_1^{p,q}`` as rows ``q = 0..P``; only row 0 is nonzero."""
    seg = coresolution(model, W, P, margin)
    V = _blocks(V)
    row0 = [hom_basis(V, seg.terms[p]).dim for p in range(P + 1)]
    return [row0] + [[0] * (P + 1) for _ in range(P)]
