"""Regenerate the regression corpus under src/quiverext/corpus/.

Each file holds one algebra and a pair (V, W) of modules drawn with
``random_module`` (or random matrices when there are no relations).  Seeds
are scanned until the modules fit the size limits, have integer entries, and
give the same Ext dimensions over Q and GF(32749).
"""

import json
import random
import sys
from pathlib import Path

from quiverext.algebra import Quiver, RelationSet, Twist, build_algebra
from quiverext.cli import dump_problem, parse_problem, ProblemFile
from quiverext.ext import ext_dims
from quiverext.linalg import QQ
from quiverext.representation import check_relations, random_module, random_representation

OUT = Path(__file__).resolve().parent.parent / "src" / "quiverext" / "corpus"
MAX_DIM = 4
P = 4


def word(*w):
    return [(1, tuple(w))]


ALGEBRAS = {
    "jordan2": (["o"], [("x", "o", "o")], {}, [word("x", "x")]),
    "jordan3": (["o"], [("x", "o", "o")], {}, [word("x", "x", "x")]),
    "jordan4": (["o"], [("x", "o", "o")], {}, [word("x", "x", "x", "x")]),
    "commuting": (["o"], [("x", "o", "o"), ("y", "o", "o")], {},
                  [[(1, ("x", "y")), (-1, ("y", "x"))], word("x", "x"), word("y", "y")]),
    "radsq_loops": (["o"], [("x", "o", "o"), ("y", "o", "o")], {},
                    [word(a, b) for a in "xy" for b in "xy"]),
    "a2": (["1", "2"], [("a", "1", "2")], {}, []),
    "a3": (["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")], {}, []),
    "a3_zero": (["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")], {}, [word("b", "a")]),
    "kronecker": (["1", "2"], [("m", "1", "2")], {"m": 2}, []),
    "cycle2_zero": (["1", "2"], [("a", "1", "2"), ("b", "2", "1")], {}, [word("a", "b"), word("b", "a")]),
    "cycle2_long": (["1", "2"], [("a", "1", "2"), ("b", "2", "1")], {}, [word("a", "b", "a"), word("b", "a", "b")]),
    "cycle3_zero": (["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")], {},
                    [word("b", "a"), word("c", "b"), word("a", "c")]),
    "square": (["1", "2", "3"], [("a", "1", "2"), ("c", "1", "2"), ("b", "2", "3"), ("d", "2", "3")], {},
               [[(1, ("b", "a")), (-1, ("d", "c"))], word("b", "c"), word("d", "a")]),
    "loop_arrow": (["1", "2"], [("x", "1", "1"), ("a", "1", "2")], {}, [word("x", "x"), word("a", "x")]),
}

# (name, algebra, (generators, relators) for V, same for W)
INSTANCES = [
    ("jordan2_simple", "jordan2", (1, 1), (1, 1)),
    ("jordan2_free", "jordan2", (1, 0), (2, 1)),
    ("jordan3_mixed", "jordan3", (1, 1), (1, 0)),
    ("jordan3_pair", "jordan3", (2, 2), (1, 1)),
    ("jordan4_mixed", "jordan4", (1, 1), (1, 2)),
    ("commuting_simple", "commuting", (1, 2), (1, 2)),
    ("commuting_mixed", "commuting", (1, 1), (1, 1)),
    ("commuting_free", "commuting", (1, 0), (1, 1)),
    ("radsq_loops_a", "radsq_loops", (1, 1), (1, 1)),
    ("radsq_loops_b", "radsq_loops", (2, 3), (1, 0)),
    ("a2_random", "a2", (1, 2), (2, 2)),
    ("a3_random", "a3", (1, 1, 2), (2, 1, 1)),
    ("a3_zero_a", "a3_zero", (1, 0), (1, 1)),
    ("a3_zero_b", "a3_zero", (2, 1), (1, 0)),
    ("kronecker_random", "kronecker", (1, 2), (2, 3)),
    ("kronecker_simple", "kronecker", (1, 0), (0, 1)),
    ("cycle2_zero_a", "cycle2_zero", (1, 1), (1, 0)),
    ("cycle2_zero_b", "cycle2_zero", (2, 2), (1, 1)),
    ("cycle2_long_a", "cycle2_long", (1, 1), (1, 1)),
    ("cycle2_long_b", "cycle2_long", (1, 0), (2, 3)),
    ("cycle3_zero_a", "cycle3_zero", (1, 1), (1, 0)),
    ("cycle3_zero_b", "cycle3_zero", (2, 2), (1, 1)),
    ("square_a", "square", (1, 1), (1, 0)),
    ("square_b", "square", (1, 2), (1, 1)),
    ("loop_arrow", "loop_arrow", (1, 1), (1, 1)),
]


def build(name):
    verts, arrows, ranks, rels = ALGEBRAS[name]
    q = Quiver.build(verts, arrows)
    t = Twist.from_ranks({a[0]: ranks.get(a[0], 1) for a in arrows})
    return q, t, RelationSet.parse(rels)


def integral(rep):
    return all(x.denominator == 1 for m in rep.maps for row in m.tolist() for x in row)


def draw(model, spec, seed, hereditary):
    if hereditary:
        rng = random.Random(seed)
        return random_representation(model.quiver, QQ, spec, rng).with_relations(model.relations)
    g, r = spec
    return random_module(model, g, r, seed)


def fits(rep):
    return max(rep.dims) <= MAX_DIM and rep.total_dim > 0 and integral(rep)


def make(inst, start_seed):
    name, alg, vs, ws = inst
    q, t, rels = build(alg)
    model = build_algebra(q, t, rels, QQ)
    hereditary = not rels
    pick = []
    seed = start_seed
    for spec in (vs, ws):
        while True:
            rep = draw(model, spec, seed, hereditary)
            seed += 1
            if fits(rep):
                pick.append(rep)
                break
    V, W = pick
    pf = ProblemFile(QQ, q, t, rels, {"V": V, "W": W}, {},
                     {"max_degree": P, "margin": 0, "seed": 0, "nilpotency_bound": 12},
                     [{"V": "V", "W": "W"}])
    doc = dump_problem(pf)
    doc.pop("adhm")
    # must survive reduction mod the test primes with unchanged dimensions
    dims_q = ext_dims(model, V, W, P).dims
    for prime in (101, 32749):
        red = parse_problem(doc, field_override=f"prime:{prime}")
        if not all(check_relations(r) for r in red.representations.values()):
            return None
        m = red.model()
        if m.dim != model.dim:
            return None
        if prime == 32749 and ext_dims(m, red.representations["V"], red.representations["W"], P).dims != dims_q:
            return None
    doc["expected_ext"] = dims_q
    return doc


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for k, inst in enumerate(INSTANCES):
        base = 1000 * k
        while True:
            doc = make(inst, base)
            if doc is not None:
                break
            base += 17
        expected = doc.pop("expected_ext")
        path = OUT / f"{k:02d}_{inst[0]}.json"
        path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        print(path.name, doc["representations"]["V"]["dims"], doc["representations"]["W"]["dims"], expected)


if __name__ == "__main__":
    sys.exit(main())
