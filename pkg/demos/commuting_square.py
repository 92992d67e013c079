"""k<x,y>/(xy - yx, x^2, y^2) over Q and over GF(101).

Ext^p(S, S) grows linearly, and the structural checks on the coresolution
all pass.
"""

from quiverext import FieldSpec, QQ, Quiver, RelationSet, Representation, build_algebra
from quiverext import coresolution, ext_dims, verify_coresolution

q = Quiver.build(["o"], [("x", "o", "o"), ("y", "o", "o")])
rels = RelationSet.parse([[(1, ("x", "y")), (-1, ("y", "x"))], [(1, ("x", "x"))], [(1, ("y", "y"))]])

for field in (QQ, FieldSpec.prime(101)):
    model = build_algebra(q, r=rels, field=field)
    S = Representation.simple(q, field, "o", rels)
    report = verify_coresolution(coresolution(model, S, 4))
    print(f"{field}: dim {model.dim}, Ext {ext_dims(model, S, S, 4).dims}")
    for name, (ok, detail) in report.checks.items():
        print(f"  {name:24} {'pass' if ok else 'FAIL'}  {detail}")
