"""Stripes, systematic encoding/decoding and the merge conversion itself.

Codes are scalar: a block is a vector of ``B`` field symbols and every
position is encoded independently with the same generator matrix.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .bounds import access_lower_bound, baseline_access
from .constructions import ConvertibleCode
from .errors import (
    CodeMismatch,
    DimensionMismatch,
    MissingBlock,
    SingularMatrix,
    SingularSubmatrix,
    TooFewBlocks,
)
from .gf import FieldSpec
from .matrix import Matrix, inverse

DATA = "data"
PARITY = "parity"


@dataclass(frozen=True)
class Block:
    index: int
    role: str
    payload: tuple[int, ...]  # canonical element encodings


@dataclass(frozen=True)
class Stripe:
    """``n`` blocks, data first.  A ``None`` block is unavailable."""

    n: int
    k: int
    block_length: int
    blocks: tuple[Optional[Block], ...]
    code_ref: str = ""

    def __post_init__(self):
        if len(self.blocks) != self.n:
            raise DimensionMismatch(f"{len(self.blocks)} blocks for n = {self.n}")
        for b in self.blocks:
            if b is not None and len(b.payload) != self.block_length:
                raise DimensionMismatch(f"block {b.index} has {len(b.payload)} symbols, expected {self.block_length}")

    def erase(self, indices: Iterable[int]) -> Stripe:
        gone = set(indices)
        return Stripe(self.n, self.k, self.block_length,
                      tuple(None if i in gone else b for i, b in enumerate(self.blocks)), self.code_ref)

    @property
    def available(self) -> list[int]:
        return [i for i, b in enumerate(self.blocks) if b is not None]


@dataclass(frozen=True)
class MessageBuffer:
    """lam*kI rows of ``B`` symbols; row ``g*kI + t`` is data block t of stripe g."""

    field: FieldSpec
    symbols: tuple[tuple[int, ...], ...]

    @property
    def block_length(self) -> int:
        return len(self.symbols[0]) if self.symbols else 0

    @classmethod
    def random(cls, field: FieldSpec, rows: int, block_length: int, rng: random.Random) -> MessageBuffer:
        return cls(field, tuple(tuple(rng.randrange(field.q) for _ in range(block_length)) for _ in range(rows)))

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, block_length: int) -> MessageBuffer:
        return cls(field, tuple((0,) * block_length for _ in range(rows)))


@dataclass(frozen=True)
class AccessCostReport:
    reads_per_stripe: tuple[int, ...]
    reads: int
    writes: int
    total_access: int
    unchanged: int
    lower_bound: int
    access_optimal: bool
    baseline_access: int

    def to_dict(self) -> dict:
        return {
            "readsPerStripe": list(self.reads_per_stripe),
            "reads": self.reads,
            "writes": self.writes,
            "totalAccess": self.total_access,
            "unchanged": self.unchanged,
            "lowerBound": self.lower_bound,
            "accessOptimal": self.access_optimal,
            "baselineAccess": self.baseline_access,
        }


def _combine(field: FieldSpec, terms: Iterable[tuple[int, Sequence[int]]], length: int) -> tuple[int, ...]:
    """sum(c * v) over (c, v) pairs, position by position."""
    add, mul = field.add_int, field.mul_int
    acc = [0] * length
    for c, vec in terms:
        if c == 0:
            continue
        if c == 1:
            acc = [add(a, x) for a, x in zip(acc, vec)]
        else:
            acc = [add(a, mul(c, x)) if x else a for a, x in zip(acc, vec)]
    return tuple(acc)


def encode_systematic(data: Sequence[Sequence[int]], parity: Matrix, code_ref: str = "") -> Stripe:
    """Stripe of the systematic code [I | parity] holding ``data`` rows."""
    k, r = parity.rows, parity.cols
    if len(data) != k:
        raise DimensionMismatch(f"{len(data)} data rows for k = {k}")
    B = len(data[0]) if data else 0
    blocks = [Block(t, DATA, tuple(row)) for t, row in enumerate(data)]
    for j in range(r):
        col = parity.column_values(j)
        blocks.append(Block(k + j, PARITY, _combine(parity.field, zip(col, data), B)))
    return Stripe(k + r, k, B, tuple(blocks), code_ref)


def encode_initial(msg: MessageBuffer, code: ConvertibleCode) -> list[Stripe]:
    p = code.params
    if len(msg.symbols) != p.kF or msg.field != code.field:
        raise DimensionMismatch(f"message has {len(msg.symbols)} rows over {msg.field}; code expects {p.kF} over {code.field}")
    return [encode_systematic(msg.symbols[g * p.kI:(g + 1) * p.kI], code.PI) for g in range(p.lam)]


def encode_final(msg: MessageBuffer, code: ConvertibleCode) -> Stripe:
    if len(msg.symbols) != code.params.kF:
        raise DimensionMismatch(f"message has {len(msg.symbols)} rows, code expects {code.params.kF}")
    return encode_systematic(msg.symbols, code.PF)


def _check_stripes(stripes: Sequence[Stripe], code: ConvertibleCode) -> int:
    p = code.params
    if len(stripes) != p.lam:
        raise CodeMismatch(f"{len(stripes)} stripes given, code merges {p.lam}")
    lengths = {s.block_length for s in stripes}
    if len(lengths) != 1:
        raise CodeMismatch("stripes have different block lengths")
    for s in stripes:
        if (s.n, s.k) != (p.nI, p.kI):
            raise CodeMismatch(f"stripe is [{s.n},{s.k}], code's initial code is [{p.nI},{p.kI}]")
    return lengths.pop()


def _payload(stripes: Sequence[Stripe], i: int, j: int) -> tuple[int, ...]:
    blk = stripes[i].blocks[j]
    if blk is None:
        raise MissingBlock(f"block {j + 1} of stripe {i + 1} is unavailable")
    return blk.payload


def _final_data_blocks(stripes, code):
    out = [None] * code.params.kF
    for i, j, pos in code.plan.unchanged:
        blk = stripes[i].blocks[j]
        out[pos] = None if blk is None else Block(pos, DATA, blk.payload)
    return out


def convert(stripes: Sequence[Stripe], code: ConvertibleCode) -> tuple[Stripe, AccessCostReport]:
    """Run the code's conversion plan, reading only its read set."""
    p = code.params
    B = _check_stripes(stripes, code)
    read = {(i, j): _payload(stripes, i, j) for i, j in code.plan.read_set}
    blocks = _final_data_blocks(stripes, code)
    for l, sources in enumerate(code.plan.new_blocks):
        payload = _combine(code.field, ((s.coeff.value, read[s.stripe, s.block]) for s in sources), B)
        blocks.append(Block(p.kF + l, PARITY, payload))
    rps = tuple(code.plan.reads_per_stripe(p.lam))
    total = code.plan.reads + code.plan.writes
    bound = access_lower_bound(p)
    report = AccessCostReport(rps, code.plan.reads, code.plan.writes, total, len(code.plan.unchanged),
                              bound, total == bound, baseline_access(p))
    return Stripe(p.nF, p.kF, B, tuple(blocks)), report


def reencode_baseline(stripes: Sequence[Stripe], code: ConvertibleCode) -> tuple[Stripe, AccessCostReport]:
    """Read every data block and recompute all final parities."""
    p = code.params
    B = _check_stripes(stripes, code)
    data = [_payload(stripes, i, t) for i in range(p.lam) for t in range(p.kI)]
    blocks = _final_data_blocks(stripes, code)
    for l in range(p.rF):
        blocks.append(Block(p.kF + l, PARITY, _combine(code.field, zip(code.PF.column_values(l), data), B)))
    total = p.kF + p.rF
    bound = access_lower_bound(p)
    report = AccessCostReport((p.kI,) * p.lam, p.kF, p.rF, total, len(code.plan.unchanged),
                              bound, total == bound, baseline_access(p))
    return Stripe(p.nF, p.kF, B, tuple(blocks)), report


def decode(stripe: Stripe, available: Iterable[int], parity: Matrix) -> list[tuple[int, ...]]:
    """Recover the k data rows of a systematic [I | parity] stripe.

    Surviving data blocks are copied; erased ones are solved from the
    lowest-indexed available parities.
    """
    k = parity.rows
    avail = sorted(set(available))
    if len(avail) < k:
        raise TooFewBlocks(f"{len(avail)} blocks available, need {k}")
    for i in avail:
        if not 0 <= i < stripe.n or stripe.blocks[i] is None:
            raise MissingBlock(f"block {i + 1} is not available")
    field, B = parity.field, stripe.block_length
    have = set(avail)
    erased = [t for t in range(k) if t not in have]
    rows: list[Optional[tuple[int, ...]]] = [stripe.blocks[t].payload if t in have else None for t in range(k)]
    if not erased:
        return rows
    parities = [j - k for j in avail if j >= k][: len(erased)]
    known = [t for t in range(k) if t in have]
    # residual_j = parity_j - sum over known data of P[t, j] * d_t
    neg = field.neg_int
    residuals = []
    for j in parities:
        terms = [(1, stripe.blocks[k + j].payload)]
        terms += [(neg(parity.value(t, j)), rows[t]) for t in known]
        residuals.append(_combine(field, terms, B))
    A = Matrix._raw(field, len(erased), len(erased),
                    tuple(parity.value(t, j) for j in parities for t in erased))
    try:
        Ainv = inverse(A)
    except SingularMatrix as exc:
        raise SingularSubmatrix(f"parity submatrix on data {erased} x parities {parities} is singular") from exc
    for u, t in enumerate(erased):
        rows[t] = _combine(field, zip(Ainv.row_values(u), residuals), B)
    return rows


def verify_conversion(msg: MessageBuffer, final: Stripe, code: ConvertibleCode) -> bool:
    """True iff ``final`` is exactly the final-code encoding of ``msg``."""
    expected = encode_final(msg, code)
    if (final.n, final.k, final.block_length) != (expected.n, expected.k, expected.block_length):
        return False
    for got, want in zip(final.blocks, expected.blocks):
        if got is None or got.payload != want.payload:
            return False
    return True
