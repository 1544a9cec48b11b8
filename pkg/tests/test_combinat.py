import json
import random
from itertools import permutations

import pytest

from tnncells import (
    CauchonDiagram,
    RestrictedPermutation,
    SizeCapError,
    block_decompose,
    bruhat_leq,
    count_diagrams,
    enumerate_diagrams,
    enumerate_restricted_perms,
    index_set_leq,
    is_cauchon,
    random_diagram,
    w_max,
)
from tnncells.combinat import as_index_set, compose, longest_element

COUNTS = {(1, 1): 2, (2, 2): 14, (2, 3): 46, (3, 3): 230}


class TestDiagrams:
    def test_counts(self):
        for (m, p), n in COUNTS.items():
            assert count_diagrams(m, p) == n

    def test_condition_goldens(self):
        # black cell needs everything left black, or everything above black
        assert is_cauchon(2, 2, [(2, 2), (1, 2)])      # column above is black
        assert is_cauchon(2, 2, [(2, 2), (2, 1)])      # row to the left is black
        assert not is_cauchon(2, 2, [(2, 2)])
        assert is_cauchon(1, 1, [(1, 1)])
        assert is_cauchon(3, 3, [(1, 1), (1, 3), (2, 1), (2, 2)])

    def test_out_of_range_black_rejected(self):
        with pytest.raises(ValueError):
            is_cauchon(2, 2, [(3, 1)])

    def test_enumeration_is_exhaustive_filter(self):
        got = {C.mask for C in enumerate_diagrams(2, 3)}
        expected = set()
        for mask in range(1 << 6):
            black = [(i + 1, a + 1) for i in range(2) for a in range(3) if mask >> (i * 3 + a) & 1]
            if is_cauchon(2, 3, black):
                expected.add(mask)
        assert got == expected

    def test_black_white_partition(self):
        C = CauchonDiagram.from_black(2, 2, [(1, 2), (2, 2)])
        assert C.black_cells() == ((1, 2), (2, 2))
        assert C.white_cells() == ((1, 1), (2, 1))
        assert C.is_black(1, 2) and not C.is_black(1, 1)

    def test_invalid_diagram_rejected(self):
        with pytest.raises(ValueError):
            CauchonDiagram.from_black(2, 2, [(2, 2)])

    def test_json_roundtrip(self):
        C = CauchonDiagram.from_black(3, 3, [(1, 1), (1, 3), (2, 1), (2, 2)])
        obj = C.to_json_obj()
        assert obj == {"m": 3, "p": 3, "black": [[1, 1], [1, 3], [2, 1], [2, 2]]}
        assert CauchonDiagram.from_json_obj(json.loads(json.dumps(obj))) == C

    def test_random_diagram_is_valid_and_seeded(self):
        r1 = random.Random(99)
        r2 = random.Random(99)
        for _ in range(30):
            C = random_diagram(3, 4, r1)
            assert is_cauchon(3, 4, C.black_cells())
            assert C == random_diagram(3, 4, r2)

    def test_size_cap(self):
        with pytest.raises(SizeCapError):
            CauchonDiagram.from_black(9, 9, [])


class TestRestrictedPerms:
    def test_counts_match_diagrams(self):
        for (m, p), n in COUNTS.items():
            assert sum(1 for _ in enumerate_restricted_perms(m, p)) == n

    def test_enumeration_matches_naive_filter(self):
        m, p = 2, 3
        got = [w.w for w in enumerate_restricted_perms(m, p)]
        expected = sorted(
            w
            for w in permutations(range(1, m + p + 1))
            if all(-p <= w[j] - (j + 1) <= m for j in range(m + p))
        )
        assert got == expected

    def test_shift_bounds_enforced(self):
        with pytest.raises(ValueError):
            RestrictedPermutation(1, 2, (3, 1, 2))  # w(1)-1 = 2 > m = 1
        with pytest.raises(ValueError):
            RestrictedPermutation(2, 1, (2, 3, 1))  # w(3)-3 = -2 < -p = -1
        with pytest.raises(ValueError):
            RestrictedPermutation(2, 2, (1, 1, 2, 3))

    def test_w_max(self):
        wm = w_max(3, 4)
        assert wm.w == (4, 5, 6, 7, 1, 2, 3)
        assert wm(1) == 4 and wm(7) == 3

    def test_everything_below_w_max(self):
        for m, p in ((2, 2), (2, 3)):
            wm = w_max(m, p)
            restricted = {w.w for w in enumerate_restricted_perms(m, p)}
            below = {
                w
                for w in permutations(range(1, m + p + 1))
                if bruhat_leq(w, wm.w)
            }
            assert restricted == below

    def test_inverse_and_call(self):
        w = RestrictedPermutation(3, 4, (3, 1, 4, 2, 7, 6, 5))
        inv = w.inverse()
        assert [inv[w(j) - 1] for j in range(1, 8)] == list(range(1, 8))

    def test_json_roundtrip(self):
        w = RestrictedPermutation(3, 4, (3, 1, 4, 2, 7, 6, 5))
        obj = w.to_json_obj()
        assert obj == {"m": 3, "p": 4, "w": [3, 1, 4, 2, 7, 6, 5]}
        assert RestrictedPermutation.from_json_obj(obj) == w


def _subword_leq(w: tuple, z: tuple) -> bool:
    """Bruhat oracle: some subword of a reduced word for z multiplies to w."""
    n = len(z)
    word = []
    arr = list(z)
    for i in range(n):  # bubble sort records a reduced word of z (in reverse)
        for j in range(n - 1):
            if arr[j] > arr[j + 1]:
                arr[j], arr[j + 1] = arr[j + 1], arr[j]
                word.append(j)
    word.reverse()
    for mask in range(1 << len(word)):
        cur = list(range(1, n + 1))
        for t, s in enumerate(word):
            if mask >> t & 1:
                cur[s], cur[s + 1] = cur[s + 1], cur[s]
        if tuple(cur) == w:
            return True
    return False


class TestBruhat:
    def test_matches_subword_oracle_s3_s4(self):
        for n in (3, 4):
            perms = list(permutations(range(1, n + 1)))
            for w in perms:
                for z in perms:
                    assert bruhat_leq(w, z) == _subword_leq(w, z), (w, z)

    def test_poset_basics(self):
        e = (1, 2, 3, 4)
        w0 = (4, 3, 2, 1)
        for z in permutations(range(1, 5)):
            assert bruhat_leq(e, z)
            assert bruhat_leq(z, w0)
        assert not bruhat_leq(w0, e)

    def test_accepts_wrapper_type(self):
        w = RestrictedPermutation(2, 2, (1, 2, 3, 4))
        z = w_max(2, 2)
        assert bruhat_leq(w, z)


class TestBlocksAndHelpers:
    def test_block_shapes_and_sums(self):
        w = RestrictedPermutation(3, 4, (3, 1, 4, 2, 7, 6, 5))
        b = block_decompose(w, 3, 4)
        assert len(b.w11) == 3 and len(b.w11[0]) == 4
        assert len(b.w12) == 3 and len(b.w12[0]) == 3
        assert len(b.w21) == 4 and len(b.w21[0]) == 4
        assert len(b.w22) == 4 and len(b.w22[0]) == 3
        # stacked blocks reassemble the permutation matrix: every row/col sums to 1
        n = 7
        full = [[0] * n for _ in range(n)]
        for i in range(3):
            for a in range(4):
                full[i][a] = b.w11[i][a]
            for j in range(3):
                full[i][4 + j] = b.w12[i][j]
        for c in range(4):
            for a in range(4):
                full[3 + c][a] = b.w21[c][a]
            for j in range(3):
                full[3 + c][4 + j] = b.w22[c][j]
        assert all(sum(row) == 1 for row in full)
        assert all(sum(full[i][j] for i in range(n)) == 1 for j in range(n))

    def test_block_golden(self):
        # reversing the rows of the upper-left block of w = 3,1,4,2,7,6,5
        w = RestrictedPermutation(3, 4, (3, 1, 4, 2, 7, 6, 5))
        b = block_decompose(w, 3, 4)
        reversed_w11 = list(reversed(b.w11))
        assert [list(r) for r in reversed_w11] == [
            [1, 0, 0, 0],
            [0, 0, 0, 1],
            [0, 1, 0, 0],
        ]

    def test_longest_and_compose(self):
        assert longest_element(4) == (4, 3, 2, 1)
        u, v = (2, 1, 3), (3, 1, 2)
        assert compose(u, v) == tuple(u[v[j] - 1] for j in range(3))

    def test_index_sets(self):
        assert as_index_set([3, 1, 2]) == (1, 2, 3)
        with pytest.raises(ValueError):
            as_index_set([1, 1])
        with pytest.raises(ValueError):
            as_index_set([0, 1])
        assert index_set_leq((1, 2), (2, 3))
        assert not index_set_leq((1, 3), (2, 2))
        with pytest.raises(ValueError):
            index_set_leq((1,), (1, 2))
