"""Randomized property suites and replaying a failure.

Run: python demos/property_harness.py
"""
import hocat.chain as ch
from hocat.cli import harness
from hocat.excat import FGAB, VECTQ

rep = harness.run("chain", FGAB, 10, 1)
print(rep.to_text(timing=False))

# Break the cone (drop the map from its differential) and watch the suite fail.
real_cone = ch.cone
ch.cone = lambda f: real_cone(ch.ChainMap.zero(f.src, f.dst))
try:
    bad = harness.run("chain", VECTQ, 10, 1)
finally:
    ch.cone = real_cone
print("\nwith a broken cone:", len(bad.failures), "failures")
f = bad.failures[0]
print("  first:", f.invariant, "case seed", f.seed)

# Each failure carries a workspace that reproduces it; with the cone fixed
# the same case seed now passes.
out, _ = harness.replay(f.invariant, VECTQ, f.seed)
print("  replayed with the real cone:", "pass" if out is not False else "fail")
