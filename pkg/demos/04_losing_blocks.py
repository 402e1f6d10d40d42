"""
Losing blocks before and after a merge
======================================

Both stripe shapes are MDS, so any k surviving blocks give back the data.
Conversion itself needs its read set, and a missing one is reported.
"""
import random

from convcodes import MergeParams, MessageBuffer, convert, decode, encode_initial, field_new, hankel1
from convcodes.errors import MissingBlock

code = hankel1(MergeParams(lam=2, kI=5, rI=4, rF=2), field_new(11))
msg = MessageBuffer.random(code.field, 10, 6, random.Random(4))
stripes = encode_initial(msg, code)

# lose four blocks of stripe 1, including three data blocks
survivors = [j for j in range(9) if j not in (0, 2, 4, 7)]
rows = decode(stripes[0], survivors, code.PI)
print("stripe 1 recovered from blocks", [j + 1 for j in survivors], ":", rows == list(msg.symbols[:5]))

# a read-set block that is gone stops the conversion
i, j = code.plan.read_set[0]
broken = [stripes[0].erase([j]) if i == 0 else stripes[0], stripes[1].erase([j]) if i == 1 else stripes[1]]
try:
    convert(broken, code)
except MissingBlock as exc:
    print("convert refused:", exc)

# after the merge: drop two blocks of the wide stripe
final, _ = convert(stripes, code)
rows = decode(final, [x for x in range(12) if x not in (3, 10)], code.PF)
print("merged stripe recovered:", rows == list(msg.symbols))
