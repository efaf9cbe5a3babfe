"""
A Koszul resolution for the Rost motive
=======================================

The ideal I(2, n-2) = (2, v1, ..., v_{n-2}) is resolved by the Koszul
complex.  We check exactness, compute Tor with Z/2, list syzygy
codimensions and run one descent step on a relation of the model.
"""

from fglforge.bp import BPContext
from fglforge.ops import SteenrodContext
from fglforge.resolutions import (
    build_koszul,
    descent_step,
    exactness_report,
    rost_oracle,
    rost_relation,
    syzygy_report,
    tor_with_residue,
)

n = 5
K = build_koszul(n)
print("ranks:", [K.rank(j) for j in range(K.top + 1)])
print("d^2 = 0:", all(K.check_d_squared().values()))
print("exact:", exactness_report(K)["pass"])
print("Tor over Z/2:", tor_with_residue(K)["ranks"])

# codimension of the generator e_I is (2^(n-1) - 1) - sum (2^i - 1)
report = syzygy_report(n)
for row in report["rows"]:
    print(row["I"], "codim", row["codim"])
top = report["topGenerator"]
print("top generator codim:", top["codimFormula"], "stated:", top["codimStatedInText"], "flagged:", top["discrepancy"])

# one descent step for the relation (v1^3 + 2 v2) e0 at n = 3
sctx = SteenrodContext(BPContext(2, 10))
u = sctx.ctx.v(1) ** 3 + sctx.ctx.v(2).scale(2)
step = descent_step(sctx, rost_relation(3, u), rost_oracle(3))
print("alpha1:", step["alpha1"]["e0"]["terms"])
print("beta1:", step["beta1"]["e0"]["terms"])
print("contracts hold:", step["pass"])
