import random
from itertools import combinations, permutations

import pytest

from convcodes.bounds import access_lower_bound
from convcodes.constructions import (
    GENERAL,
    HANKEL1,
    HANKEL2,
    HANKEL_S,
    TRIVIAL,
    cauchy_matrix,
    construct,
    construct_best,
    degree_bound_E,
    field_of_order,
    general_construction,
    hankel1,
    hankel2,
    hankel_family,
    hankel_s_coverage,
    hankel_s_field_size,
    restrict,
    trivial_construction,
)
from convcodes.conversion import MessageBuffer, convert, encode_initial, verify_conversion
from convcodes.errors import InvalidParams, NotRestrictable, PreconditionViolated, SizeExceedsField
from convcodes.gf import field_new, primitive_element
from convcodes.matrix import is_superregular, submatrix, vconcat
from convcodes.params import MergeParams
from convcodes.verify import check_plan_soundness, check_stability


def brute_E(p):
    """Largest sum of (i*j) exponents along a diagonal of any square submatrix."""
    best = 0
    for rows, cols in ((p.kI, p.rI), (p.kF, p.rF)):
        for t in range(1, min(rows, cols) + 1):
            for cs in combinations(range(cols), t):
                for rs in combinations(range(rows), t):
                    best = max(best, max(sum(r * cs[k] for r, k in zip(rs, perm)) for perm in permutations(range(t))))
    return best


def assert_invariants(code):
    p = code.params
    assert is_superregular(code.PI) and is_superregular(code.PF)
    assert check_plan_soundness(code)
    assert check_stability(code)
    assert code.plan.reads + code.plan.writes == access_lower_bound(p)


# -- general construction -------------------------------------------------------
@pytest.mark.parametrize("params,expected", [((2, 3, 3, 3), 14), ((2, 10, 4, 4), 110), ((2, 2, 1, 1), 0), ((3, 2, 1, 0), 0)])
def test_degree_bound(params, expected):
    p = MergeParams(*params)
    assert degree_bound_E(p) == expected
    assert brute_E(p) == expected


@pytest.mark.parametrize("params", [(2, 4, 3, 2), (3, 2, 2, 2), (2, 5, 2, 1), (4, 1, 3, 1)])
def test_degree_bound_brute_force_more(params):
    p = MergeParams(*params)
    assert degree_bound_E(p) == brute_E(p)


def test_general_theta_pattern(gen_code):
    F = gen_code.field
    assert (F.p, F.m) == (2, 15)
    theta = primitive_element(F)
    for i in range(3):
        for j in range(3):
            assert gen_code.PI[i, j] == theta ** (i * j)
    for i in range(6):
        for j in range(3):
            assert gen_code.PF[i, j] == theta ** (i * j)
    assert gen_code.PF.row_values(5) == (1, (theta ** 5).value, (theta ** 10).value)
    assert_invariants(gen_code)


def test_general_headline_plan(headline_code):
    F = headline_code.field
    assert F.m == 111
    theta = primitive_element(F)
    for l, sources in enumerate(headline_code.plan.new_blocks):
        assert [(s.stripe, s.block) for s in sources] == [(0, 10 + l), (1, 10 + l)]
        assert [s.coeff for s in sources] == [F.one, theta ** (10 * l)]
    assert check_plan_soundness(headline_code)


def test_general_precondition():
    with pytest.raises(InvalidParams):
        general_construction(MergeParams(2, 3, 2, 3))
    with pytest.raises(InvalidParams):
        general_construction(MergeParams(2, 2, 4, 3))


def test_general_odd_characteristic():
    code = general_construction(MergeParams(2, 2, 2, 2), char=3)
    assert code.field.p == 3
    assert_invariants(code)


# -- Hankel-I ---------------------------------------------------------------------
def test_hankel1_fixture(h1_code):
    assert h1_code.scheme == HANKEL1 and h1_code.field.q == 11
    PI = h1_code.PI
    top = submatrix(PI, range(5), [0, 1])
    bottom = submatrix(PI, range(5), [2, 3])
    assert h1_code.PF == vconcat(top, bottom)
    assert_invariants(h1_code)
    # every new block sums two parities with coefficient 1
    for sources in h1_code.plan.new_blocks:
        assert [s.coeff.value for s in sources] == [1, 1]
        assert [s.stripe for s in sources] == [0, 1]


def test_hankel1_rf1_and_rf0(gf11):
    one = hankel1(MergeParams(2, 5, 4, 1), gf11)
    assert_invariants(one)
    assert len(one.plan.new_blocks[0]) == 2
    zero = hankel1(MergeParams(2, 5, 4, 0), gf11)
    assert zero.PF.shape == (10, 0) and zero.plan.new_blocks == () and zero.plan.read_set == ()


def test_hankel1_preconditions(gf11):
    with pytest.raises(PreconditionViolated, match="floor"):
        hankel1(MergeParams(2, 5, 4, 3), gf11)
    with pytest.raises(SizeExceedsField):
        hankel1(MergeParams(2, 5, 4, 2), field_new(7))


def test_hankel1_wide_initial_code(gf13):
    # rI > kI needs an array at least nI - 1 long
    code = hankel1(MergeParams(2, 2, 5, 2), gf13)
    assert_invariants(code)


# -- Hankel-II --------------------------------------------------------------------
def test_hankel2_fixture(h2_code):
    assert h2_code.scheme == HANKEL2 and h2_code.field.q == 13
    PI = h2_code.PI
    p1, p2, p3 = (submatrix(PI, range(4), [j]) for j in range(3))
    assert submatrix(h2_code.PF, range(8), [0]) == vconcat(p1, p2)
    assert submatrix(h2_code.PF, range(8), [1]) == vconcat(p2, p3)
    assert h2_code.pi_columns == (0, 4, 8)
    assert_invariants(h2_code)


def test_hankel2_three_stripes():
    code = hankel2(MergeParams(3, 2, 3, 1), field_new(7))
    assert code.hankel.m == 6
    assert [(s.stripe, s.block) for s in code.plan.new_blocks[0]] == [(0, 2), (1, 3), (2, 4)]
    assert_invariants(code)


def test_hankel2_preconditions(gf13):
    with pytest.raises(PreconditionViolated):
        hankel2(MergeParams(2, 4, 3, 3), gf13)
    with pytest.raises(SizeExceedsField):
        hankel2(MergeParams(2, 4, 3, 2), field_new(11))
    assert hankel2(MergeParams(2, 4, 3, 0), gf13).plan.new_blocks == ()


# -- s-family ---------------------------------------------------------------------
def test_hankel_s_example():
    p = MergeParams(2, 3, 4, 2)
    assert hankel_s_coverage(3, p) == 2
    assert hankel_s_field_size(3, p) == 9
    code = hankel_family(3, p, field_new(11))
    assert code.scheme == HANKEL_S and code.s == 3
    assert_invariants(code)
    with pytest.raises(PreconditionViolated):
        hankel_family(3, MergeParams(2, 3, 4, 3), field_new(11))
    with pytest.raises(SizeExceedsField):
        hankel_family(3, p, field_new(7))


def test_hankel_s_range(gf13):
    with pytest.raises(PreconditionViolated):
        hankel_family(1, MergeParams(2, 4, 3, 1), gf13)
    with pytest.raises(PreconditionViolated):
        hankel_family(4, MergeParams(2, 4, 3, 1), gf13)


def test_endpoint_identities(h1_code, h2_code):
    assert hankel_family(2, h1_code.params, h1_code.field).same_code(h1_code)
    assert hankel_family(3, h2_code.params, h2_code.field).same_code(h2_code)


@pytest.mark.parametrize("params,s,q", [((2, 4, 5, 1), 3, 13), ((2, 4, 6, 2), 3, 13), ((3, 2, 6, 2), 4, 11), ((2, 3, 5, 2), 4, 13)])
def test_hankel_s_invariants(params, s, q):
    code = hankel_family(s, MergeParams(*params), field_new(q))
    assert_invariants(code)


# -- trivial, restriction, selection -----------------------------------------------
def test_trivial_examples(gf11):
    code = trivial_construction(MergeParams(2, 2, 1, 2), gf11)
    assert code.plan.reads == 4 and code.plan.writes == 2
    assert code.plan.reads + code.plan.writes == access_lower_bound(code.params) == 6
    assert check_plan_soundness(code)
    small = trivial_construction(MergeParams(2, 1, 1, 1), gf11)
    assert (small.plan.reads, small.plan.writes) == (2, 1)
    assert trivial_construction(MergeParams(2, 2, 1, 0), gf11).plan.reads == 0
    with pytest.raises(SizeExceedsField):
        trivial_construction(MergeParams(2, 5, 1, 2), gf11)


def test_trivial_optimality_condition(gf13):
    for lam, kI, rI, rF in [(2, 2, 1, 1), (2, 2, 2, 1), (2, 3, 3, 2), (2, 2, 1, 2), (2, 3, 1, 3), (2, 2, 3, 2), (3, 2, 2, 1)]:
        p = MergeParams(lam, kI, rI, rF)
        code = trivial_construction(p, gf13)
        optimal = code.plan.reads + code.plan.writes == access_lower_bound(p)
        assert optimal == (rF > min(rI, kI) or rF >= kI)


def test_cauchy_is_superregular(gf13):
    assert is_superregular(cauchy_matrix(gf13, 6, 5))


def test_restrict(h1_code, h2_code):
    r1 = restrict(h1_code, 2, 1)
    assert r1.plan.reads + r1.plan.writes == 3
    assert_invariants(r1)
    assert restrict(h1_code, 2, 2).same_code(h1_code)
    r2 = restrict(h2_code, 2, 1)
    assert [(s.stripe, s.block) for s in r2.plan.new_blocks[0]] == [(0, 4), (1, 5)]
    assert_invariants(r2)
    with pytest.raises(NotRestrictable):
        restrict(general_construction(MergeParams(2, 2, 1, 1)), 2, 1)
    with pytest.raises(PreconditionViolated):
        restrict(h1_code, 3, 1)


def test_restrict_fewer_stripes():
    code = hankel2(MergeParams(3, 2, 4, 2), field_new(11))
    smaller = restrict(code, 2, 2)
    assert smaller.params == MergeParams(2, 2, 4, 2)
    assert_invariants(smaller)


def test_construct_dispatch():
    assert construct("hankel1", MergeParams(2, 5, 4, 2)).field.q == 11
    assert construct("hankel2", MergeParams(2, 4, 3, 2)).field.q == 13
    assert construct("hankel-s", MergeParams(2, 3, 4, 2), s=3).field.q == 11
    assert construct("trivial", MergeParams(2, 2, 1, 2)).field.q == 7
    with pytest.raises(PreconditionViolated):
        construct("hankel_s", MergeParams(2, 3, 4, 2))
    with pytest.raises(InvalidParams):
        construct("nope", MergeParams(2, 3, 4, 2))
    with pytest.raises(PreconditionViolated):
        construct("general", MergeParams(2, 3, 3, 3), field=field_new(13))


def test_construct_best_order():
    best = construct_best(MergeParams(2, 5, 4, 2))
    assert best.scheme == HANKEL1 and best.selection == "auto"
    assert construct_best(MergeParams(2, 4, 3, 2)).scheme == HANKEL2
    assert construct_best(MergeParams(2, 2, 1, 2)).scheme == TRIVIAL
    assert construct_best(MergeParams(2, 3, 3, 3)).scheme == GENERAL
    # with a fixed small field the general construction is not an option
    assert construct_best(MergeParams(2, 3, 3, 3), field=field_new(13)).scheme == TRIVIAL


def test_field_of_order():
    assert field_of_order(11).q == 11
    F = field_of_order(32768)
    assert (F.p, F.m) == (2, 15)
    with pytest.raises(InvalidParams):
        field_of_order(12)


@pytest.mark.parametrize("scheme,params,extra", [
    ("hankel1", (3, 3, 6, 2), {}),
    ("hankel2", (2, 3, 4, 3), {}),
    ("hankel2", (3, 3, 3, 1), {}),
    ("hankel-s", (2, 4, 6, 2), {"s": 3}),
    ("general", (3, 2, 2, 2), {}),
    ("general", (2, 4, 2, 2), {}),
])
def test_schemes_end_to_end(scheme, params, extra):
    code = construct(scheme, MergeParams(*params), **extra)
    assert_invariants(code)
    msg = MessageBuffer.random(code.field, code.params.kF, 3, random.Random(7))
    final, report = convert(encode_initial(msg, code), code)
    assert verify_conversion(msg, final, code) and report.access_optimal
