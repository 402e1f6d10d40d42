"""Brute-force oracles for MDS-ness, constructibility and read-set size.

Nothing here looks at how a construction built its plan.  The checks
start from the parity matrices alone and rebuild everything else from
the embedded generator, so a bug in a construction shows up as a
disagreement rather than being copied into the oracle.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Optional, Sequence

from .bounds import read_lower_bound_per_stripe
from .constructions import ConvertibleCode
from .errors import InstanceTooLarge
from .gf import FieldSpec
from .matrix import Matrix, _echelon, hconcat, identity, rank, submatrix

# Refuse exhaustive searches beyond these sizes.
MDS_SUBSET_LIMIT = 250_000
BAND_SUBSET_LIMIT = 1 << 20
FULL_SEARCH_COLUMN_LIMIT = 16


@dataclass(frozen=True)
class EmbeddedGenerator:
    """The lam*kI x lam*nI matrix whose column (i, j) is GI's column j in band i."""

    field: FieldSpec
    lam: int
    kI: int
    nI: int
    matrix: Matrix

    def column(self, i: int, j: int) -> tuple[int, ...]:
        return self.matrix.column_values(i * self.nI + j)

    def band(self, i: int) -> range:
        return range(i * self.kI, (i + 1) * self.kI)

    def project(self, vec: Sequence[int], i: int) -> tuple[int, ...]:
        return tuple(vec[r] for r in self.band(i))


def embedded_generator(PI: Matrix, lam: int) -> EmbeddedGenerator:
    field, kI, rI = PI.field, PI.rows, PI.cols
    nI = kI + rI
    GI = hconcat(identity(field, kI), PI)
    data = [0] * (lam * kI * lam * nI)
    width = lam * nI
    for i in range(lam):
        for r in range(kI):
            for j in range(nI):
                data[(i * kI + r) * width + i * nI + j] = GI.value(r, j)
    return EmbeddedGenerator(field, lam, kI, nI, Matrix._raw(field, lam * kI, width, tuple(data)))


def _rank_of_columns(field: FieldSpec, cols: Sequence[Sequence[int]], height: int) -> int:
    if not cols:
        return 0
    return _echelon(field, [[c[r] for c in cols] for r in range(height)])[0]


def is_mds_by_erasure(G: Matrix, limit: int = MDS_SUBSET_LIMIT) -> bool:
    """Every k-subset of the columns of the k x n generator ``G`` has rank k."""
    k, n = G.shape
    if k > n:
        return False
    if comb(n, k) > limit:
        raise InstanceTooLarge(f"C({n},{k}) = {comb(n, k)} subsets exceeds the limit {limit}")
    for cols in combinations(range(n), k):
        if rank(submatrix(G, range(k), cols)) < k:
            return False
    return True


def is_constructible(M: Matrix, PI: Matrix, t: int) -> Optional[tuple[int, ...]]:
    """First t-subset S of PI's columns (lexicographic) whose span contains
    every column of ``M``; None if there is none."""
    kI, rI = PI.shape
    if M.rows != kI:
        raise ValueError(f"{M.rows} rows against kI = {kI}")
    if not 0 <= t <= rI:
        return None
    field = PI.field
    for S in combinations(range(rI), t):
        base = [[PI.value(r, c) for c in S] for r in range(kI)]
        r0 = _echelon(field, [row[:] for row in base])[0]
        if _echelon(field, [base[r] + list(M.row_values(r)) for r in range(kI)])[0] == r0:
            return S
    return None


def is_block_constructible(PF: Matrix, PI: Matrix, t: int) -> Optional[tuple[tuple[int, ...], ...]]:
    """Per-band witnesses that PF is block-constructible from PI with t columns.

    Band i (rows i*kI .. i*kI + kI - 1 of PF) may use its own t columns of
    PI.  Returns the lexicographically first subset for each band, or None
    as soon as one band has none.
    """
    kI = PI.rows
    if PF.rows % kI:
        raise ValueError(f"PF has {PF.rows} rows, not a multiple of kI = {kI}")
    witness = []
    for i in range(PF.rows // kI):
        S = is_constructible(submatrix(PF, range(i * kI, (i + 1) * kI), range(PF.cols)), PI, t)
        if S is None:
            return None
        witness.append(S)
    return tuple(witness)


def _band_minimum(field: FieldSpec, GI_cols: Sequence[Sequence[int]], targets: Sequence[Sequence[int]], kI: int) -> int:
    """Fewest columns of GI whose span contains every target (length-kI vectors)."""
    nI = len(GI_cols)
    need = _rank_of_columns(field, targets, kI)
    if need == 0:
        return 0
    for size in range(need, nI + 1):
        for S in combinations(range(nI), size):
            cols = [GI_cols[j] for j in S]
            r = _rank_of_columns(field, cols, kI)
            if r >= need and _rank_of_columns(field, cols + list(targets), kI) == r:
                return size
    raise AssertionError("targets are not in the span of the initial code")


def min_read_set_for(code: ConvertibleCode, targets: Sequence[Sequence[int]]) -> int:
    """Smallest number of initial blocks whose span contains every target.

    Targets are length-kF vectors.  Embedded columns of different stripes
    have disjoint supports, so a target lies in the span of a read set D
    exactly when each band projection lies in the span of that stripe's
    part of D, and the minimum splits into one search per stripe.
    """
    p = code.params
    if 2 ** p.nI > BAND_SUBSET_LIMIT:
        raise InstanceTooLarge(f"2^{p.nI} subsets per stripe exceeds the limit {BAND_SUBSET_LIMIT}")
    emb = embedded_generator(code.PI, p.lam)
    total = 0
    for i in range(p.lam):
        cols = [emb.project(emb.column(i, j), i) for j in range(p.nI)]
        total += _band_minimum(code.field, cols, [emb.project(v, i) for v in targets], p.kI)
    return total


def _new_columns(code: ConvertibleCode) -> list[tuple[int, ...]]:
    return [code.PF.column_values(l) for l in range(code.params.rF)]


def min_read_set_search(code: ConvertibleCode) -> int:
    """Minimum |D| over read sets that can produce every new final column."""
    return min_read_set_for(code, _new_columns(code))


def min_read_set_brute_force(code: ConvertibleCode, limit: int = FULL_SEARCH_COLUMN_LIMIT) -> int:
    """Same quantity by enumerating subsets of all lam*nI embedded columns.

    Used to cross-check the per-stripe decomposition on small instances.
    """
    p = code.params
    total_cols = p.lam * p.nI
    if total_cols > limit:
        raise InstanceTooLarge(f"{total_cols} embedded columns exceeds the limit {limit}")
    emb = embedded_generator(code.PI, p.lam)
    targets = _new_columns(code)
    cols = [emb.matrix.column_values(c) for c in range(total_cols)]
    need = _rank_of_columns(code.field, targets, p.kF)
    if need == 0:
        return 0
    for size in range(need, total_cols + 1):
        for S in combinations(range(total_cols), size):
            chosen = [cols[c] for c in S]
            r = _rank_of_columns(code.field, chosen, p.kF)
            if r >= need and _rank_of_columns(code.field, chosen + targets, p.kF) == r:
                return size
    raise AssertionError("new columns are not in the span of the initial codes")


def nonstable_access(code: ConvertibleCode, retired: Sequence[int]) -> int:
    """Least access cost when the data blocks at final positions ``retired``
    are rewritten as new blocks instead of being kept unchanged."""
    p = code.params
    units = []
    for pos in retired:
        e = [0] * p.kF
        e[pos] = 1
        units.append(tuple(e))
    targets = _new_columns(code) + units
    return min_read_set_for(code, targets) + len(targets)


def check_stability(code: ConvertibleCode) -> bool:
    """Exactly rF new blocks and lam*kI unchanged data blocks, at most kI per
    stripe, each landing on a final column equal to its embedded column."""
    p = code.params
    if len(code.plan.new_blocks) != p.rF or len(code.plan.unchanged) != p.kF:
        return False
    emb = embedded_generator(code.PI, p.lam)
    per_stripe = [0] * p.lam
    positions = set()
    for i, j, pos in code.plan.unchanged:
        if not (0 <= i < p.lam and 0 <= j < p.nI and 0 <= pos < p.kF):
            return False
        per_stripe[i] += 1
        positions.add(pos)
        final_col = tuple(1 if r == pos else 0 for r in range(p.kF))
        if emb.column(i, j) != final_col:
            return False
    return len(positions) == p.kF and max(per_stripe, default=0) <= p.kI


def check_plan_soundness(code: ConvertibleCode) -> bool:
    """Each new block's weighted sum of embedded columns equals its final
    column, and every source is in the declared read set."""
    p = code.params
    if len(code.plan.new_blocks) != p.rF:
        return False
    field = code.field
    emb = embedded_generator(code.PI, p.lam)
    reads = set(code.plan.read_set)
    for l, sources in enumerate(code.plan.new_blocks):
        acc = [0] * p.kF
        for s in sources:
            if (s.stripe, s.block) not in reads or not (0 <= s.stripe < p.lam and 0 <= s.block < p.nI):
                return False
            col = emb.column(s.stripe, s.block)
            c = s.coeff.value
            acc = [field.add_int(a, field.mul_int(c, x)) for a, x in zip(acc, col)]
        if tuple(acc) != code.PF.column_values(l):
            return False
    return True


def tightness(code: ConvertibleCode) -> tuple[int, int]:
    """(min read set size, lam * per-stripe read lower bound)."""
    p = code.params
    return min_read_set_search(code), p.lam * read_lower_bound_per_stripe(p)
