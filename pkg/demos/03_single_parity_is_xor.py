"""
The smallest case: single parity over GF(2)
===========================================

With rI = rF = 1 every parity is a plain XOR.  Merging (3,2) + (3,2)
into (5,4) just XORs the two old parities together.
"""
import random

from convcodes import MergeParams, MessageBuffer, convert, encode_initial, general_construction

code = general_construction(MergeParams(lam=2, kI=2, rI=1, rF=1))
print("field:", code.field)

msg = MessageBuffer.random(code.field, 4, 16, random.Random(3))
a, b = encode_initial(msg, code)
final, report = convert([a, b], code)

old1, old2 = a.blocks[2].payload, b.blocks[2].payload
new = final.blocks[4].payload
print("parity 1:", "".join(map(str, old1)))
print("parity 2:", "".join(map(str, old2)))
print("merged  :", "".join(map(str, new)))
assert new == tuple(x ^ y for x, y in zip(old1, old2))
print("reads:", report.reads, "writes:", report.writes)
