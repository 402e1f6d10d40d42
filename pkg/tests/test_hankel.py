from itertools import combinations

import pytest

from convcodes.errors import OutsideTriangle, SizeExceedsField
from convcodes.gf import field_new
from convcodes.hankel import (
    CAUCHY,
    GREEDY,
    HankelArray,
    build_superregular_hankel,
    hankel_submatrix,
    is_superregular_hankel,
)
from convcodes.matrix import det, is_superregular


def all_triangle_minors_nonzero(t):
    """Independent check: enumerate row/column sets inside the triangle."""
    m = t.m
    for size in range(1, m + 1):
        for rs in combinations(range(m), size):
            for cs in combinations(range(m), size):
                if rs[-1] + cs[-1] >= m:
                    continue
                if not det(t.submatrix(rs, cs)):
                    return False
    return True


def test_m1_canonical():
    t = build_superregular_hankel(field_new(11), 1)
    assert t.b == (1,)


def test_cauchy_closed_form_gf13():
    F = field_new(13)
    t = build_superregular_hankel(F, 12)
    assert t.strategy == CAUCHY
    assert t.b == tuple(F(k).inv().value for k in range(1, 13))
    assert all_triangle_minors_nonzero(t)


def test_greedy_gf11_m11():
    t = build_superregular_hankel(field_new(11), 11)
    assert t.strategy == GREEDY
    assert t.m == 11
    assert all_triangle_minors_nonzero(t)
    assert is_superregular_hankel(t)


@pytest.mark.parametrize("p,m", [(2, 3), (3, 2), (5, 1), (7, 1)])
def test_greedy_full_size(p, m):
    F = field_new(p, m)
    t = build_superregular_hankel(F, F.q)
    assert t.strategy == GREEDY
    assert all_triangle_minors_nonzero(t)


def test_greedy_gf16():
    t = build_superregular_hankel(field_new(2, 4), 16)
    assert is_superregular_hankel(t)


def test_greedy_is_lexicographically_least_small():
    # brute-force over all b vectors in GF(5) of length 5
    from itertools import product

    F = field_new(5)
    t = build_superregular_hankel(F, 5)
    first = next(
        b for b in product(range(1, 5), repeat=5) if all_triangle_minors_nonzero(HankelArray(F, b))
    )
    assert t.b == first


def test_size_exceeds_field():
    with pytest.raises(SizeExceedsField):
        build_superregular_hankel(field_new(11), 12)


def test_hankel_identity_and_support():
    t = build_superregular_hankel(field_new(11), 11)
    for i in range(11):
        for j in range(11):
            if t.defined(i, j) and t.defined(i - 1, j + 1):
                assert t.entry(i, j) == t.entry(i - 1, j + 1)
    with pytest.raises(OutsideTriangle):
        t.entry(6, 5)
    with pytest.raises(OutsideTriangle):
        hankel_submatrix(t, 0, 10, 0, 3)


def test_submatrix_layouts():
    F = field_new(13)
    t = build_superregular_hankel(F, 3)
    assert hankel_submatrix(t, 0, 1, 0, 3).row_values(0) == t.b
    T11 = build_superregular_hankel(field_new(11), 11)
    pf = hankel_submatrix(T11, 0, 10, 0, 2)
    assert pf.shape == (10, 2) and is_superregular(pf)
    T12 = build_superregular_hankel(F, 12)
    cols = [hankel_submatrix(T12, 0, 4, c, 1) for c in (0, 4, 8)]
    assert [c.column_values(0) for c in cols] == [T12.submatrix(range(4), [c]).column_values(0) for c in (0, 4, 8)]


@pytest.mark.parametrize("m", range(1, 11))
def test_spot_check_extracted_blocks(m):
    t = build_superregular_hankel(field_new(11), m)
    for r in range(1, m + 1):
        c = m - r + 1
        assert is_superregular(hankel_submatrix(t, 0, r, 0, c))


def test_checker_rejects_bad_array():
    F = field_new(11)
    assert not is_superregular_hankel(HankelArray(F, (1, 1, 1)))
    assert not is_superregular_hankel(HankelArray(F, (1, 0)))
