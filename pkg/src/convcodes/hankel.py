"""Triangular superregular Hankel arrays.

``T_m`` has entry ``b[i + j]`` at 0-based position ``(i, j)`` whenever
``i + j < m`` and is undefined below the anti-diagonal.  Every square
submatrix lying inside the triangle must be nonsingular.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .errors import OutsideTriangle, SearchExhausted, SizeExceedsField
from .gf import FieldElement, FieldSpec
from .matrix import Matrix, _det_rows

CAUCHY = "cauchy"
GREEDY = "greedy"


@dataclass(frozen=True)
class HankelArray:
    field: FieldSpec
    b: tuple[int, ...]
    strategy: str = GREEDY

    @property
    def m(self) -> int:
        return len(self.b)

    def defined(self, i: int, j: int) -> bool:
        return i >= 0 and j >= 0 and i + j < self.m

    def entry(self, i: int, j: int) -> FieldElement:
        if not self.defined(i, j):
            raise OutsideTriangle(f"({i}, {j}) lies outside T_{self.m}")
        return FieldElement(self.field, self.b[i + j])

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
        """Submatrix on arbitrary row/column index lists (all inside the triangle)."""
        if rows and cols and max(rows) + max(cols) >= self.m:
            raise OutsideTriangle(f"rows up to {max(rows)} and columns up to {max(cols)} exceed T_{self.m}")
        if any(i < 0 for i in rows) or any(j < 0 for j in cols):
            raise OutsideTriangle("negative index")
        return Matrix._raw(self.field, len(rows), len(cols), tuple(self.b[i + j] for i in rows for j in cols))


def hankel_submatrix(t: HankelArray, row_start: int, row_count: int, col_start: int, col_count: int) -> Matrix:
    """Contiguous block of ``t`` starting at 0-based ``(row_start, col_start)``."""
    return t.submatrix(range(row_start, row_start + row_count), range(col_start, col_start + col_count))


def _forbidden_values(field: FieldSpec, b: list[int]) -> set[int]:
    """Values that would make some minor ending at the next index singular.

    The new entry only appears in the bottom-right corner of such a minor,
    so the determinant is ``x * C + R`` with ``C`` an already-checked
    (nonzero) minor; each minor rules out exactly ``x = -R / C``.
    """
    k = len(b)  # 0-based index of the entry being chosen
    forbidden = {0}
    neg, div = field.neg_int, field.div_int
    for r_last in range(k + 1):
        c_last = k - r_last
        for t in range(2, min(r_last, c_last) + 2):
            for rs in combinations(range(r_last), t - 1):
                rows = rs + (r_last,)
                for cs in combinations(range(c_last), t - 1):
                    cols = cs + (c_last,)
                    a = [[b[i + j] if i + j < k else 0 for j in cols] for i in rows]
                    cof = _det_rows(field, [row[:-1] for row in a[:-1]])
                    rest = _det_rows(field, a)
                    forbidden.add(neg(div(rest, cof)))
    return forbidden


def _greedy(field: FieldSpec, m: int) -> tuple[int, ...]:
    # depth-first search for the lexicographically least valid b-vector
    b: list[int] = []
    stack: list[list[int]] = []
    while len(b) < m:
        if len(stack) == len(b):
            bad = _forbidden_values(field, b)
            stack.append([v for v in range(field.q - 1, 0, -1) if v not in bad])
        options = stack[-1]
        if options:
            b.append(options.pop())
            continue
        stack.pop()
        if not b:
            raise SearchExhausted(f"no superregular Hankel array T_{m} over {field}")
        b.pop()
    return tuple(b)


def build_superregular_hankel(field: FieldSpec, m: int) -> HankelArray:
    """Deterministic superregular ``T_m`` over ``field``.

    Prime fields with q > m use the closed form ``b_t = 1/t`` (every minor
    is then a Cauchy matrix); otherwise a backtracking search returns the
    lexicographically least array.
    """
    if m > field.q:
        raise SizeExceedsField(f"T_{m} needs q >= {m}, field has q = {field.q}")
    if m < 0:
        raise ValueError("negative size")
    if field.m == 1 and field.q >= m + 1:
        return HankelArray(field, tuple(field.inv_int(t) for t in range(1, m + 1)), CAUCHY)
    return HankelArray(field, _greedy(field, m), GREEDY)


def is_superregular_hankel(t: HankelArray) -> bool:
    """Exhaustively check every square submatrix inside the triangle."""
    b, m, field = t.b, t.m, t.field
    for k in range(m):
        for r_last in range(k + 1):
            c_last = k - r_last
            for size in range(1, min(r_last, c_last) + 2):
                for rs in combinations(range(r_last), size - 1):
                    for cs in combinations(range(c_last), size - 1):
                        rows, cols = rs + (r_last,), cs + (c_last,)
                        if _det_rows(field, [[b[i + j] for j in cols] for i in rows]) == 0:
                            return False
    return True
