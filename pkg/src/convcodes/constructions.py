"""Access-optimal MDS convertible codes for the merge regime.

Every construction returns a :class:`ConvertibleCode`: two systematic
parity matrices ``PI`` (kI x rI) and ``PF`` (kF x rF) plus an explicit
:class:`ConversionPlan` saying which initial blocks to read and how to
combine them into the new parity blocks of the final stripe.

All stripe, block and column indices are 0-based.  Block ``j`` of an
initial stripe is data when ``j < kI`` and parity ``j - kI`` otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field, replace
from typing import Optional, Sequence

from sympy import factorint

from .errors import (
    InvalidParams,
    NotRestrictable,
    PreconditionViolated,
    SizeExceedsField,
)
from .gf import FieldElement, FieldSpec, field_new, primitive_element, smallest_prime_at_least
from .hankel import HankelArray, build_superregular_hankel
from .matrix import Matrix, find_singular_minor, hconcat, identity, submatrix
from .params import MergeParams

GENERAL = "general"
HANKEL1 = "hankel1"
HANKEL2 = "hankel2"
HANKEL_S = "hankel_s"
TRIVIAL = "trivial"
SCHEMES = (GENERAL, HANKEL1, HANKEL2, HANKEL_S, TRIVIAL)


@dataclass(frozen=True)
class Source:
    stripe: int
    block: int
    coeff: FieldElement


@dataclass(frozen=True)
class ConversionPlan:
    """How a conversion is executed.

    ``new_blocks[l]`` lists the weighted initial blocks summed into new
    parity ``l``; ``read_set`` is every (stripe, block) read, each once;
    ``unchanged`` maps (stripe, block) to its position in the final stripe.
    """

    new_blocks: tuple[tuple[Source, ...], ...]
    read_set: tuple[tuple[int, int], ...]
    unchanged: tuple[tuple[int, int, int], ...]

    def reads_per_stripe(self, lam: int) -> list[int]:
        counts = [0] * lam
        for i, _ in self.read_set:
            counts[i] += 1
        return counts

    @property
    def reads(self) -> int:
        return len(self.read_set)

    @property
    def writes(self) -> int:
        return len(self.new_blocks)


def canonical_unchanged(p: MergeParams) -> tuple[tuple[int, int, int], ...]:
    """Data blocks keep their order: stripe 0's data, then stripe 1's, ..."""
    return tuple((i, t, i * p.kI + t) for i in range(p.lam) for t in range(p.kI))


def make_plan(p: MergeParams, new_blocks: Sequence[Sequence[Source]], extra_reads=()) -> ConversionPlan:
    reads = {(s.stripe, s.block) for blk in new_blocks for s in blk} | set(extra_reads)
    return ConversionPlan(
        tuple(tuple(blk) for blk in new_blocks),
        tuple(sorted(reads)),
        canonical_unchanged(p),
    )


@dataclass(frozen=True)
class ConvertibleCode:
    params: MergeParams
    field: FieldSpec
    PI: Matrix
    PF: Matrix
    plan: ConversionPlan
    scheme: str
    s: Optional[int] = None
    hankel: Optional[HankelArray] = None
    pi_columns: Optional[tuple[int, ...]] = None  # Hankel columns holding PI's columns
    selection: str = dc_field(default="explicit", compare=False)

    def __post_init__(self):
        p = self.params
        if self.PI.shape != (p.kI, p.rI):
            raise InvalidParams(f"PI has shape {self.PI.shape}, expected {(p.kI, p.rI)}")
        if self.PF.shape != (p.kF, p.rF):
            raise InvalidParams(f"PF has shape {self.PF.shape}, expected {(p.kF, p.rF)}")
        if self.PI.field != self.field or self.PF.field != self.field:
            raise InvalidParams("parity matrices are over a different field")
        if self.scheme not in SCHEMES:
            raise InvalidParams(f"unknown scheme {self.scheme!r}")

    @property
    def GI(self) -> Matrix:
        return hconcat(identity(self.field, self.params.kI), self.PI)

    @property
    def GF(self) -> Matrix:
        return hconcat(identity(self.field, self.params.kF), self.PF)

    def same_code(self, other: ConvertibleCode) -> bool:
        """Equal matrices, plan, field and array, ignoring the scheme tag."""
        return (
            self.params == other.params
            and self.field == other.field
            and self.PI == other.PI
            and self.PF == other.PF
            and self.plan == other.plan
            and (self.hankel.b if self.hankel else None) == (other.hankel.b if other.hankel else None)
            and self.pi_columns == other.pi_columns
        )


# ---------------------------------------------------------------------------
# general (Vandermonde-like) construction
# ---------------------------------------------------------------------------
def degree_bound_E(p: MergeParams) -> int:
    """Largest theta-degree of any minor of PI or PF in the general construction."""
    lam, kI, rI, rF = p.lam, p.kI, p.rI, p.rF
    return max(
        rF * (rF - 1) * (3 * lam * kI - rF - 1),
        rI * (rI - 1) * (3 * kI - rI - 1),
        kI * (kI - 1) * (3 * rI - kI - 1),
    ) // 6


def _theta_power_matrix(theta: FieldElement, rows: int, cols: int) -> Matrix:
    f = theta.field
    return Matrix._raw(f, rows, cols, tuple(f.pow_int(theta.value, i * j) for i in range(rows) for j in range(cols)))


def general_construction(p: MergeParams, char: int = 2, verify: bool = True) -> ConvertibleCode:
    """Entries theta^(i*j) over GF(char^D), D = degree_bound_E + 1.

    New parity ``l`` is the sum over stripes ``i`` of initial parity ``l``
    scaled by theta^(i*kI*l).
    """
    if p.rF > min(p.rI, p.kI):
        raise InvalidParams(f"rF <= min(rI, kI) required for the general construction (rF={p.rF}, rI={p.rI}, kI={p.kI})")
    D = degree_bound_E(p) + 1
    field = field_new(char, D)
    theta = primitive_element(field)
    PI = _theta_power_matrix(theta, p.kI, p.rI)
    PF = _theta_power_matrix(theta, p.kF, p.rF)
    new_blocks = [
        [Source(i, p.kI + l, theta ** (i * p.kI * l)) for i in range(p.lam)]
        for l in range(p.rF)
    ]
    code = ConvertibleCode(p, field, PI, PF, make_plan(p, new_blocks), GENERAL)
    if verify:
        for name, m in (("PI", PI), ("PF", PF)):
            bad = find_singular_minor(m)
            if bad is not None:
                raise AssertionError(f"{name} has a singular minor at {bad}; degree bound too small")
    return code


# ---------------------------------------------------------------------------
# Hankel constructions
# ---------------------------------------------------------------------------
def hankel1_field_size(p: MergeParams) -> int:
    return max(p.nI - 1, p.nF - 1)


def hankel2_field_size(p: MergeParams) -> int:
    return p.kI * p.rI


def hankel_s_field_size(s: int, p: MergeParams) -> int:
    return s * p.kI + p.rI // s - 1


def hankel_s_coverage(s: int, p: MergeParams) -> int:
    """Largest rF the s-group layout supports."""
    return (s - p.lam + 1) * (p.rI // s) + max(p.rI % s - p.lam + 1, 0)


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise PreconditionViolated(message)


def _require_field(field: FieldSpec, needed: int, scheme: str) -> None:
    if field.q < needed:
        raise SizeExceedsField(f"q >= {needed} required for {scheme}, got q = {field.q}")


def _sum_plan(p: MergeParams, pi_columns: Sequence[int], hankel_cols: Sequence[Sequence[int]], field: FieldSpec):
    """New parity l sums, over stripes i, the parity holding Hankel column hankel_cols[l][i]."""
    pos = {c: j for j, c in enumerate(pi_columns)}
    one = field.one
    return make_plan(p, [[Source(i, p.kI + pos[c], one) for i, c in enumerate(cols)] for cols in hankel_cols])


def hankel1(p: MergeParams, field: FieldSpec) -> ConvertibleCode:
    """Low-field construction for rF <= floor(rI / lambda), q >= max(nI, nF) - 1."""
    lam, kI, rI, rF = p.lam, p.kI, p.rI, p.rF
    _require(rF <= rI // lam, f"rF <= floor(rI/lambda) required for hankel1 (rF={rF}, floor(rI/lambda)={rI // lam})")
    _require(rF <= kI, f"rF <= kI required for hankel1 (rF={rF}, kI={kI})")
    m = hankel1_field_size(p)
    _require_field(field, m, "hankel1")
    T = build_superregular_hankel(field, m)
    width = m - kI + 1  # columns of the top kI rows that stay inside the triangle
    designated = [[i * kI + l for i in range(lam)] for l in range(rF)]
    chosen = {c for cols in designated for c in cols}
    for c in range(width):
        if len(chosen) == rI:
            break
        chosen.add(c)
    pi_columns = tuple(sorted(chosen))
    PI = T.submatrix(range(kI), pi_columns)
    PF = T.submatrix(range(p.kF), range(rF))
    plan = _sum_plan(p, pi_columns, designated, field)
    return ConvertibleCode(p, field, PI, PF, plan, HANKEL1, hankel=T, pi_columns=pi_columns)


def hankel2(p: MergeParams, field: FieldSpec) -> ConvertibleCode:
    """Construction for rF <= rI - lambda + 1, q >= kI * rI."""
    lam, kI, rI, rF = p.lam, p.kI, p.rI, p.rF
    _require(rF <= rI - lam + 1, f"rF <= rI - lambda + 1 required for hankel2 (rF={rF}, rI={rI}, lambda={lam})")
    _require(rF <= kI, f"rF <= kI required for hankel2 (rF={rF}, kI={kI})")
    m = hankel2_field_size(p)
    _require_field(field, m, "hankel2")
    T = build_superregular_hankel(field, m)
    pi_columns = tuple(j * kI for j in range(rI))
    PI = T.submatrix(range(kI), pi_columns)
    PF = T.submatrix(range(p.kF), [l * kI for l in range(rF)])
    plan = _sum_plan(p, pi_columns, [[(l + i) * kI for i in range(lam)] for l in range(rF)], field)
    return ConvertibleCode(p, field, PI, PF, plan, HANKEL2, hankel=T, pi_columns=pi_columns)


def _group_sizes(s: int, rI: int) -> list[int]:
    g, extra = divmod(rI, s)
    return [g + 1 if a < extra else g for a in range(s)]


def hankel_family(s: int, p: MergeParams, field: FieldSpec) -> ConvertibleCode:
    """Intermediate Hankel constructions: initial parities split into ``s`` groups.

    Group ``a`` occupies Hankel columns ``a*kI, a*kI + 1, ...`` of the top
    kI rows.  A final column reads the same within-group offset from
    ``lambda`` consecutive groups, which the Hankel form stacks into one
    column of the top kF rows.
    """
    lam, kI, rI, rF = p.lam, p.kI, p.rI, p.rF
    _require(lam <= s <= rI, f"lambda <= s <= rI required for hankel_s (s={s}, lambda={lam}, rI={rI})")
    cover = hankel_s_coverage(s, p)
    _require(rF <= cover, f"rF <= (s-lambda+1)*floor(rI/s) + max((rI mod s)-lambda+1, 0) = {cover} required for hankel_s (rF={rF})")
    _require(rF <= kI, f"rF <= kI required for hankel_s (rF={rF}, kI={kI})")
    sizes = _group_sizes(s, rI)
    _require(max(sizes) <= kI, f"ceil(rI/s) <= kI required for hankel_s (group size {max(sizes)}, kI={kI})")
    m = hankel_s_field_size(s, p)
    _require_field(field, m, "hankel_s")
    T = build_superregular_hankel(field, m)
    pi_columns = tuple(a * kI + c for a in range(s) for c in range(sizes[a]))
    candidates = sorted(
        (a * kI + c, a, c)
        for a in range(s - lam + 1)
        for c in range(min(sizes[a:a + lam]))
    )[:rF]
    PI = T.submatrix(range(kI), pi_columns)
    PF = T.submatrix(range(p.kF), [col for col, _, _ in candidates])
    plan = _sum_plan(p, pi_columns, [[(a + i) * kI + c for i in range(lam)] for _, a, c in candidates], field)
    return ConvertibleCode(p, field, PI, PF, plan, HANKEL_S, s=s, hankel=T, pi_columns=pi_columns)


# ---------------------------------------------------------------------------
# trivial construction and restriction
# ---------------------------------------------------------------------------
def cauchy_matrix(field: FieldSpec, rows: int, cols: int) -> Matrix:
    """1 / (x_i - y_j) with x_i, y_j the distinct elements 0..rows+cols-1."""
    if rows + cols > field.q:
        raise SizeExceedsField(f"a {rows}x{cols} Cauchy matrix needs q >= {rows + cols}")
    sub, inv = field.sub_int, field.inv_int
    return Matrix._raw(field, rows, cols, tuple(inv(sub(i, rows + j)) for i in range(rows) for j in range(cols)))


def trivial_construction(p: MergeParams, field: FieldSpec) -> ConvertibleCode:
    """Independent Cauchy codes; conversion reads every data block."""
    need = max(p.nI, p.nF)
    _require_field(field, need, "the trivial construction")
    PI = cauchy_matrix(field, p.kI, p.rI)
    PF = cauchy_matrix(field, p.kF, p.rF)
    new_blocks = [
        [Source(i, t, PF[i * p.kI + t, l]) for i in range(p.lam) for t in range(p.kI)]
        for l in range(p.rF)
    ]
    return ConvertibleCode(p, field, PI, PF, make_plan(p, new_blocks), TRIVIAL)


def restrict(code: ConvertibleCode, lam_new: int, rF_new: int) -> ConvertibleCode:
    """Reuse a Hankel code's initial code for fewer stripes or parities."""
    if code.scheme not in (HANKEL1, HANKEL2, HANKEL_S):
        raise NotRestrictable(f"{code.scheme} codes cannot be restricted")
    p = code.params
    _require(2 <= lam_new <= p.lam, f"2 <= lambda' <= {p.lam} required (got {lam_new})")
    _require(0 <= rF_new <= p.rF, f"0 <= rF' <= {p.rF} required (got {rF_new})")
    q = MergeParams(lam_new, p.kI, p.rI, rF_new)
    PF = submatrix(code.PF, range(q.kF), range(rF_new))
    new_blocks = [[s for s in code.plan.new_blocks[l] if s.stripe < lam_new] for l in range(rF_new)]
    return replace(code, params=q, PF=PF, plan=make_plan(q, new_blocks))


# ---------------------------------------------------------------------------
# scheme selection
# ---------------------------------------------------------------------------
def field_of_order(q: int) -> FieldSpec:
    f = factorint(q)
    if len(f) != 1:
        raise InvalidParams(f"{q} is not a prime power")
    (p, m), = f.items()
    return field_new(p, m)


def _hankel_field(needed: int, field: Optional[FieldSpec]) -> FieldSpec:
    return field if field is not None else field_new(smallest_prime_at_least(needed))


def construct(
    scheme: str,
    p: MergeParams,
    field: Optional[FieldSpec] = None,
    s: Optional[int] = None,
    char: int = 2,
) -> ConvertibleCode:
    """Build a code with the named scheme; the field defaults to the smallest
    prime satisfying the scheme's field-size requirement."""
    if scheme == "auto":
        return construct_best(p, field, char)
    if scheme == GENERAL:
        code = general_construction(p, char)
        if field is not None and field.q != code.field.q:
            raise PreconditionViolated(f"the general construction needs q = {char}^{code.field.m}, got q = {field.q}")
        return code
    if scheme == HANKEL1:
        return hankel1(p, _hankel_field(hankel1_field_size(p), field))
    if scheme == HANKEL2:
        return hankel2(p, _hankel_field(hankel2_field_size(p), field))
    if scheme in (HANKEL_S, "hankel-s"):
        if s is None:
            raise PreconditionViolated("hankel_s needs the group count s")
        return hankel_family(s, p, _hankel_field(hankel_s_field_size(s, p), field))
    if scheme == TRIVIAL:
        return trivial_construction(p, _hankel_field(max(p.nI, p.nF), field))
    raise InvalidParams(f"unknown scheme {scheme!r}")


def construct_best(p: MergeParams, field: Optional[FieldSpec] = None, char: int = 2) -> ConvertibleCode:
    """First feasible of hankel1, hankel_s (smallest s), hankel2, general, trivial."""
    attempts: list[tuple[str, Optional[int]]] = []
    if p.rF <= min(p.rI, p.kI):
        attempts.append((HANKEL1, None))
        attempts += [(HANKEL_S, s) for s in range(p.lam + 1, p.rI)]
        attempts.append((HANKEL2, None))
        if field is None:
            attempts.append((GENERAL, None))
    attempts.append((TRIVIAL, None))
    for scheme, s in attempts:
        try:
            code = construct(scheme, p, field, s, char)
        except (PreconditionViolated, SizeExceedsField):
            continue
        return replace(code, selection="auto")
    raise PreconditionViolated(f"no scheme applies to {p} over {field}")
