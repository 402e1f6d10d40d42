"""
Hankel constructions: the same savings over tiny fields
=======================================================

GF(2^111) is fine for a proof but slow for storage.  When rF <= rI the
Hankel schemes build both parity matrices from one superregular Hankel
array, and the field only has to be a little larger than the stripe.
"""
import random

from convcodes import MergeParams, MessageBuffer, convert, encode_initial, field_new, hankel1, hankel2
from convcodes.verify import is_block_constructible, is_mds_by_erasure

# Hankel-I: rF <= floor(rI / lam).  Here (9,5) + (9,5) -> (12,10) over GF(11).
p1 = MergeParams(lam=2, kI=5, rI=4, rF=2)
h1 = hankel1(p1, field_new(11))
print("Hankel-I array strategy:", h1.hankel.strategy, " b =", h1.hankel.b)
print("initial MDS:", is_mds_by_erasure(h1.GI), " final MDS:", is_mds_by_erasure(h1.GF))

msg = MessageBuffer.random(h1.field, p1.kF, 4, random.Random(1))
_, report = convert(encode_initial(msg, h1), h1)
print("Hankel-I access:", report.total_access, "bound:", report.lower_bound)

# %% Hankel-II allows rF up to rI - lam + 1.  Each stripe's share of
# PF comes from its own pair of PI columns; no single column works.
p2 = MergeParams(lam=2, kI=4, rI=3, rF=2)
h2 = hankel2(p2, field_new(13))
print("PI columns used:", [c + 1 for c in h2.pi_columns])
print("per-stripe witnesses with t=2:", is_block_constructible(h2.PF, h2.PI, 2))
print("with t=1:", is_block_constructible(h2.PF, h2.PI, 1))

msg = MessageBuffer.random(h2.field, p2.kF, 4, random.Random(2))
_, report = convert(encode_initial(msg, h2), h2)
print("Hankel-II access:", report.total_access, "bound:", report.lower_bound)
