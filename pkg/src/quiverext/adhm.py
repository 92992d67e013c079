"""Commuting matrix data on the doubled Jordan quiver.

One vertex, two loops ``x`` and ``y`` twisted by spaces of ranks ``r1`` and
``r2``; the relations are all commutators ``[x_j, y_l]``.  The polynomial
ring is not admissible, so Ext for rank ``(1, 1)`` comes from the Koszul
complex

    Hom(V, W) -> Hom(V, W)^2 -> Hom(V, W)

rather than from the coresolution engine.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import Quiver, RelationSet, Twist, build_algebra, expand_twist
from .errors import NotCommuting, ShapeMismatch, UnsupportedRank
from .linalg import QQ, FieldSpec, Mat, rank
from .representation import Representation

__all__ = [
    "ADHMInstance",
    "check_adhm",
    "koszul_complex",
    "ext_adhm",
    "serre_check",
    "euler_char",
    "random_commuting_instance",
    "doubled_jordan",
    "as_representation",
    "nilpotent_model",
]


@dataclass(frozen=True, eq=False)
class ADHMInstance:
    """``n``-dimensional space with ``r1`` matrices ``X`` and ``r2`` matrices ``Y``."""

    n: int
    X: tuple[Mat, ...]
    Y: tuple[Mat, ...]
    field: FieldSpec = QQ

    def __post_init__(self):
        for m in self.X + self.Y:
            if m.shape != (self.n, self.n):
                raise ShapeMismatch(f"expected {self.n}x{self.n} matrices, got {m.shape}")

    @classmethod
    def from_lists(cls, n, X, Y, field=QQ):
        """``X`` and ``Y`` are one matrix each or lists of matrices (nested lists)."""

        def norm(ms):
            if not ms:
                return ()
            if n and not isinstance(ms[0][0], (list, tuple)):
                ms = [ms]
            elif not n and ms and ms[0] == []:
                ms = [ms]
            for m in ms:
                if len(m) != n or any(len(r) != n for r in m):
                    raise ShapeMismatch(f"expected {n}x{n} matrices")
            return tuple(Mat.from_lists(field, m, n) for m in ms)

        return cls(n, norm(X), norm(Y), field)

    @property
    def r1(self) -> int:
        return len(self.X)

    @property
    def r2(self) -> int:
        return len(self.Y)

    def __eq__(self, other):
        if not isinstance(other, ADHMInstance):
            return NotImplemented
        return (self.n, self.X, self.Y, self.field) == (other.n, other.X, other.Y, other.field)

    def __hash__(self):
        return hash((self.n, self.r1, self.r2))


def check_adhm(inst: ADHMInstance) -> bool:
    """True iff every ``X_j`` commutes with every ``Y_l``."""
    return all(x @ y == y @ x for x in inst.X for y in inst.Y)


def _sylvester(field, A: Mat, B: Mat, m: int, n: int) -> Mat:
    """Matrix of ``f -> A f - f B`` on ``m x n`` matrices, ``f[r][c]`` at ``r*n + c``."""
    rows = [{} for _ in range(m * n)]
    for r in range(m):
        for c in range(n):
            row = rows[r * n + c]
            for k, v in A._data[r].items():
                row[k * n + c] = row.get(k * n + c, 0) + v
            for k in range(n):
                v = B._data[k].get(c)
                if v:
                    row[r * n + k] = row.get(r * n + k, 0) - v
    if not field.is_rational:
        rows = [{k: v % field.p for k, v in r.items()} for r in rows]
    return Mat(field, m * n, m * n, [{k: v for k, v in r.items() if v} for r in rows])


def _validate(V: ADHMInstance, W: ADHMInstance):
    for inst in (V, W):
        if inst.r1 != 1 or inst.r2 != 1:
            raise UnsupportedRank(f"Ext is implemented for ranks (1, 1), got ({inst.r1}, {inst.r2})")
        if not check_adhm(inst):
            raise NotCommuting("X and Y do not commute")
    if V.field != W.field:
        raise ValueError("instances live over different fields")


def koszul_complex(V: ADHMInstance, W: ADHMInstance) -> tuple[Mat, Mat]:
    """The two differentials of the three-term complex."""
    _validate(V, W)
    field = V.field
    m, n = W.n, V.n
    dx = _sylvester(field, W.X[0], V.X[0], m, n)
    dy = _sylvester(field, W.Y[0], V.Y[0], m, n)
    d0 = Mat.vstack([dx, dy])
    d1 = Mat.hstack([dy, -dx])
    return d0, d1


def ext_adhm(V: ADHMInstance, W: ADHMInstance) -> tuple[int, int, int]:
    """``(h0, h1, h2)``; higher Ext vanishes because the complex stops."""
    d0, d1 = koszul_complex(V, W)
    size = d0.cols
    r0, r1 = rank(d0), rank(d1)
    return size - r0, 2 * size - r0 - r1, size - r1


def serre_check(V: ADHMInstance, W: ADHMInstance) -> bool:
    a, b = ext_adhm(V, W), ext_adhm(W, V)
    return all(a[p] == b[2 - p] for p in range(3))


def euler_char(V: ADHMInstance, W: ADHMInstance) -> int:
    h0, h1, h2 = ext_adhm(V, W)
    return h0 - h1 + h2


def random_commuting_instance(n: int, rng: random.Random, field: FieldSpec = QQ,
                              nilpotent: bool = False, degree: int = 3) -> ADHMInstance:
    """``(A, q(A))`` for a random ``A`` and a random polynomial ``q``.

    With ``nilpotent`` set, ``A`` is strictly upper triangular and ``q(0) = 0``.
    """
    lists = [
        [field.random(rng) if (c > r or not nilpotent) else field.zero() for c in range(n)]
        for r in range(n)
    ]
    A = Mat.from_lists(field, lists, n)
    coeffs = [field.random(rng) for _ in range(degree + 1)]
    if nilpotent:
        coeffs[0] = field.zero()
    Y = Mat.zeros(field, n, n)
    power = Mat.identity(field, n)
    for c in coeffs:
        Y = Y + power.scale(c)
        power = power @ A
    if rng.random() < 0.5:
        A, Y = Y, A
    return ADHMInstance(n, (A,), (Y,), field)


# ---------------------------------------------------------------------------
# the quiver side


def doubled_jordan(r1: int = 1, r2: int = 1):
    """Quiver, twist and commutator relations on the expanded arrows."""
    q = Quiver.build(["o"], [("x", "o", "o"), ("y", "o", "o")])
    t = Twist.from_ranks({"x": r1, "y": r2})
    qe = expand_twist(q, t)
    xs, ys = t.basis_names["x"], t.basis_names["y"]
    rels = RelationSet.parse([[(1, (a, b)), (-1, (b, a))] for a in xs for b in ys])
    return q, t, qe, rels


def as_representation(inst: ADHMInstance, relations=RelationSet()) -> Representation:
    _, _, qe, rels = doubled_jordan(inst.r1, inst.r2)
    return Representation(qe, inst.field, (inst.n,), inst.X + inst.Y, relations or rels)


def nilpotent_model(n: int, field: FieldSpec = QQ):
    """Admissible quotient ``k<x,y>/([x,y], x^n, y^n)`` for nilpotent data of size ``<= n``."""
    q, t, qe, rels = doubled_jordan(1, 1)
    k = max(n, 2)
    extra = RelationSet.parse([[(1, ("x",) * k)], [(1, ("y",) * k)]])
    rels = RelationSet(rels.generators + extra.generators)
    return build_algebra(q, t, rels, field, max_degree=2 * k + 2)
