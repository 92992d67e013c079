"""Ext of the simple module over k[x]/(x^2), computed two ways.

The simple module has an infinite minimal resolution, yet every
coresolution term stays two-dimensional and Ext is one-dimensional in
every degree.
"""

from quiverext import Quiver, RelationSet, Representation, build_algebra, coresolution, ext_dims, ext_dims_oracle

q = Quiver.build(["o"], [("x", "o", "o")])
model = build_algebra(q, r=RelationSet.parse([[(1, ("x", "x"))]]))
S = Representation.simple(q, model.field, "o", model.relations)

seg = coresolution(model, S, 6)
print("term dimensions:", seg.term_dims())
print("engine:", ext_dims(model, S, S, 6).dims)
print("oracle:", ext_dims_oracle(model, S, S, 6))
