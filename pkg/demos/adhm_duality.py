"""Commuting pairs (X, Y) on k^n: vanishing above degree 2 and duality.

Each pair is (A, q(A)) for a random matrix A and a random polynomial q.
"""

import random

from quiverext import ADHMInstance, euler_char, ext_adhm, serre_check
from quiverext.adhm import random_commuting_instance

origin = ADHMInstance.from_lists(1, [[0]], [[0]])
print("origin with itself:", ext_adhm(origin, origin))

rng = random.Random(1)
for k in range(8):
    # nilpotent pairs are supported at the origin, so their Ext is nonzero
    nil = k % 2 == 0
    V = random_commuting_instance(rng.randint(1, 5), rng, nilpotent=nil)
    W = random_commuting_instance(rng.randint(1, 5), rng, nilpotent=nil)
    print(f"n=({V.n},{W.n})  Ext(V,W)={ext_adhm(V, W)}  Ext(W,V)={ext_adhm(W, V)}"
          f"  dual={serre_check(V, W)}  euler={euler_char(V, W)}")
