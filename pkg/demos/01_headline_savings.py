"""
Merging two (14,10) stripes into one (24,20) stripe
===================================================

A storage system that keeps data in 10+4 stripes sometimes wants wider,
cheaper 20+4 stripes.  Re-encoding from scratch reads all 20 data blocks
and writes 4 parities.  A convertible code gets there reading 8 and
writing 4.
"""
import random
import time

from convcodes import (
    MergeParams,
    MessageBuffer,
    access_lower_bound,
    baseline_access,
    convert,
    encode_initial,
    general_construction,
    reencode_baseline,
    verify_conversion,
)

p = MergeParams(lam=2, kI=10, rI=4, rF=4)
print(p)
print("bound on conversion access:", access_lower_bound(p))
print("re-encoding access:        ", baseline_access(p))

# The general construction works over GF(2^(E*+1)); for these parameters
# that is GF(2^111), so every symbol is a 14-byte integer.
t0 = time.perf_counter()
code = general_construction(p)
print(f"built and checked superregular over {code.field} in {time.perf_counter() - t0:.2f}s")

# %% encode some random data, then convert both ways
msg = MessageBuffer.random(code.field, p.kF, 8, random.Random(0))
stripes = encode_initial(msg, code)

fast, fast_report = convert(stripes, code)
slow, slow_report = reencode_baseline(stripes, code)

print("convert  :", fast_report.reads, "reads,", fast_report.writes, "writes")
print("reencode :", slow_report.reads, "reads,", slow_report.writes, "writes")
assert fast == slow
assert verify_conversion(msg, fast, code)

# which blocks were read?  Only parities, 4 from each stripe.
print("read set (stripe, block), 1-based:", [(i + 1, j + 1) for i, j in code.plan.read_set])
