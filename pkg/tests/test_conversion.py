import random
from itertools import combinations

import pytest

from convcodes.constructions import hankel1
from convcodes.conversion import (
    MessageBuffer,
    Stripe,
    convert,
    decode,
    encode_final,
    encode_initial,
    encode_systematic,
    reencode_baseline,
    verify_conversion,
)
from convcodes.errors import CodeMismatch, DimensionMismatch, MissingBlock, TooFewBlocks
from convcodes.params import MergeParams


def test_xor_parity(xor_code):
    msg = MessageBuffer(xor_code.field, ((1, 0, 1), (1, 1, 0), (0, 1, 1), (1, 1, 1)))
    s1, s2 = encode_initial(msg, xor_code)
    assert s1.blocks[2].payload == (0, 1, 1)
    assert s2.blocks[2].payload == (1, 0, 0)
    final, report = convert([s1, s2], xor_code)
    assert final.blocks[4].payload == tuple(a ^ b for a, b in zip(s1.blocks[2].payload, s2.blocks[2].payload))
    assert (report.reads, report.writes, report.total_access) == (2, 1, 3)


def test_zero_message(h1_code):
    msg = MessageBuffer.zeros(h1_code.field, 10, 4)
    stripes = encode_initial(msg, h1_code)
    assert all(b.payload == (0,) * 4 for s in stripes for b in s.blocks)
    final, _ = convert(stripes, h1_code)
    assert all(b.payload == (0,) * 4 for b in final.blocks)
    assert verify_conversion(msg, final, h1_code)


def test_initial_decode_every_subset(h1_code):
    rng = random.Random(3)
    msg = MessageBuffer.random(h1_code.field, 10, 5, rng)
    stripe = encode_initial(msg, h1_code)[0]
    want = list(msg.symbols[:5])
    for S in combinations(range(9), 5):
        assert decode(stripe, S, h1_code.PI) == want


def test_final_decode_xor(xor_code):
    msg = MessageBuffer.random(xor_code.field, 4, 8, random.Random(1))
    final = encode_final(msg, xor_code)
    for S in combinations(range(5), 4):
        assert decode(final, S, xor_code.PF) == list(msg.symbols)


def test_decode_identity_copy_and_errors(h1_code):
    msg = MessageBuffer.random(h1_code.field, 10, 2, random.Random(0))
    stripe = encode_initial(msg, h1_code)[1]
    assert decode(stripe, range(5), h1_code.PI) == list(msg.symbols[5:])
    with pytest.raises(TooFewBlocks):
        decode(stripe, [0, 1, 2, 3], h1_code.PI)
    with pytest.raises(MissingBlock):
        decode(stripe.erase([0]), range(5), h1_code.PI)


def test_report_fields(h1_code):
    msg = MessageBuffer.random(h1_code.field, 10, 2, random.Random(0))
    _, rep = convert(encode_initial(msg, h1_code), h1_code)
    assert rep.reads_per_stripe == (2, 2)
    assert (rep.reads, rep.writes, rep.total_access, rep.lower_bound) == (4, 2, 6, 6)
    assert rep.access_optimal and rep.baseline_access == 12 and rep.unchanged == 10
    assert rep.to_dict()["totalAccess"] == 6


def test_baseline_matches_convert(h2_code):
    rng = random.Random(11)
    for _ in range(20):
        msg = MessageBuffer.random(h2_code.field, 8, 3, rng)
        stripes = encode_initial(msg, h2_code)
        a, ra = convert(stripes, h2_code)
        b, rb = reencode_baseline(stripes, h2_code)
        assert a == b
        assert rb.total_access == 8 + 2 == rb.baseline_access
        assert not rb.access_optimal and ra.access_optimal


def test_convert_needs_only_plan_blocks(h1_code):
    msg = MessageBuffer.random(h1_code.field, 10, 2, random.Random(5))
    stripes = encode_initial(msg, h1_code)
    read = set(h1_code.plan.read_set)
    # erase every parity outside the read set; data blocks are unchanged and
    # never read, so conversion still works
    pruned = [s.erase([j for j in range(5, 9) if (i, j) not in read]) for i, s in enumerate(stripes)]
    final, _ = convert(pruned, h1_code)
    assert verify_conversion(msg, final, h1_code)
    i, j = h1_code.plan.read_set[0]
    broken = list(stripes)
    broken[i] = stripes[i].erase([j])
    with pytest.raises(MissingBlock):
        convert(broken, h1_code)


def test_code_mismatch(h1_code, h2_code):
    msg = MessageBuffer.random(h1_code.field, 10, 2, random.Random(5))
    stripes = encode_initial(msg, h1_code)
    with pytest.raises(CodeMismatch):
        convert(stripes[:1], h1_code)
    with pytest.raises(CodeMismatch):
        convert(stripes, h2_code)
    with pytest.raises(DimensionMismatch):
        encode_initial(MessageBuffer.zeros(h1_code.field, 9, 1), h1_code)


def test_verify_conversion_detects_tamper(h1_code):
    msg = MessageBuffer.random(h1_code.field, 10, 3, random.Random(2))
    final, _ = convert(encode_initial(msg, h1_code), h1_code)
    assert verify_conversion(msg, final, h1_code)
    blocks = list(final.blocks)
    b = blocks[11]
    blocks[11] = type(b)(b.index, b.role, ((b.payload[0] + 1) % 11,) + b.payload[1:])
    assert not verify_conversion(msg, Stripe(final.n, final.k, final.block_length, tuple(blocks)), h1_code)


def test_stripe_order_permutes_unchanged_placement(h1_code):
    # swapping the two input stripes swaps the two data halves of the output,
    # exactly as the unchanged map prescribes
    msg = MessageBuffer.random(h1_code.field, 10, 2, random.Random(9))
    s1, s2 = encode_initial(msg, h1_code)
    final, _ = convert([s2, s1], h1_code)
    swapped = MessageBuffer(h1_code.field, msg.symbols[5:] + msg.symbols[:5])
    assert verify_conversion(swapped, final, h1_code)
    for i, j, pos in h1_code.plan.unchanged:
        assert final.blocks[pos].payload == [s2, s1][i].blocks[j].payload


def test_encode_systematic_shape(gf11):
    code = hankel1(MergeParams(2, 5, 4, 2), gf11)
    s = encode_systematic([(1,), (2,), (3,), (4,), (5,)], code.PI)
    assert (s.n, s.k, s.block_length) == (9, 5, 1)
    with pytest.raises(DimensionMismatch):
        encode_systematic([(1,)], code.PI)
    with pytest.raises(DimensionMismatch):
        Stripe(2, 1, 2, (None,))
