"""Closed-form access-cost lower bounds for merge conversions."""
from __future__ import annotations

from typing import TYPE_CHECKING

from .params import MergeParams

if TYPE_CHECKING:
    from .conversion import AccessCostReport


def read_lower_bound_per_stripe(p: MergeParams) -> int:
    """Minimum number of blocks any linear MDS conversion reads per initial stripe."""
    if p.rI >= p.rF:
        return min(p.kI, p.rF)
    return p.kI


def access_lower_bound(p: MergeParams) -> int:
    """Minimum reads + writes over all linear MDS convertible codes."""
    return p.rF + p.lam * read_lower_bound_per_stripe(p)


def max_unchanged(p: MergeParams) -> int:
    return p.lam * p.kI


def baseline_access(p: MergeParams) -> int:
    """Cost of re-encoding: read every data block, write every parity."""
    return p.lam * p.kI + p.rF


def is_access_optimal(report: AccessCostReport, p: MergeParams) -> bool:
    return report.total_access == access_lower_bound(p)
