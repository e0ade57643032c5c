import itertools

import numpy as np
import pytest

from prefixsort.errors import SizeTooLarge
from prefixsort.harness import XorShift64Star, random_permutation
from prefixsort.oracle import (
    MAGIC,
    UNREACHED,
    OpSet,
    diameter,
    distance_table,
    exact_distance,
    legal_ops,
    neighbors,
    rank,
    read_table,
    unrank,
)
from prefixsort.perm import OpKind, Permutation, PrefixOp, apply_op

from conftest import all_perms


def P(*values):
    return Permutation(tuple(values))


def brute_force(n, kinds):
    """Forward BFS from every state, with r_min by exhaustive level DP."""
    ops = []
    for j in range(3, n + 2):
        if OpKind.REVERSAL in kinds:
            ops.append(PrefixOp.reversal(j))
    for j in range(2, n + 1):
        for k in range(j + 1, n + 2):
            if OpKind.TRANSPOSITION in kinds:
                ops.append(PrefixOp.transposition(j, k))
            if OpKind.TRANSREVERSAL in kinds:
                ops.append(PrefixOp.transreversal(j, k))
    ident = Permutation.identity(n)
    dist, rmin = {}, {}

    def solve(perm):
        seen, frontier, depth = {perm}, [perm], 0
        while ident not in seen:
            nxt = []
            for p in frontier:
                for o in ops:
                    q = apply_op(p, o)
                    if q not in seen:
                        seen.add(q)
                        nxt.append(q)
            frontier, depth = nxt, depth + 1
        return depth

    for perm in all_perms(n):
        dist[perm] = solve(perm)
    for perm in sorted(dist, key=dist.get):
        if dist[perm] == 0:
            rmin[perm] = 0
            continue
        rmin[perm] = min(
            rmin[q] + (o.kind is OpKind.REVERSAL)
            for o in ops
            for q in [apply_op(perm, o)]
            if dist[q] == dist[perm] - 1
        )
    return dist, rmin


class TestOpSet:
    @pytest.mark.parametrize("name, mask", [("r", 1), ("rt", 3), ("rtr", 5), ("all", 7)])
    def test_names(self, name, mask):
        opset = OpSet.parse(name)
        assert opset.bitmask == mask and opset.name == name
        assert OpSet.from_bitmask(mask) == opset

    def test_unknown(self):
        with pytest.raises(ValueError):
            OpSet.parse("x")


class TestNeighbors:
    def test_reversals_of_identity(self):
        assert set(neighbors(Permutation.identity(3), "r")) == {P(0, 2, 1, 3, 4), P(0, 3, 2, 1, 4)}

    @pytest.mark.parametrize("n", range(2, 8))
    def test_rt_count(self, n):
        expected = (n - 1) + n * (n - 1) // 2
        assert len(legal_ops(n, "rt")) == expected
        assert len(neighbors(Permutation.identity(n), "rt")) == expected

    def test_rt_count_n4(self):
        assert len(neighbors(P(0, 2, 4, 1, 3, 5), "rt")) == 9

    @pytest.mark.parametrize("n", range(2, 6))
    @pytest.mark.parametrize("opset", ["r", "rt", "rtr", "all"])
    def test_inverse_round_trip(self, n, opset):
        for perm in all_perms(n):
            for op in legal_ops(n, opset):
                assert perm in neighbors(apply_op(perm, op), opset, inverse=True)


class TestExactDistance:
    @pytest.mark.parametrize("perm, opset, d", [
        (Permutation.identity(5), "rt", 0),
        (P(0, 3, 2, 1, 4), "rt", 1),
        (P(0, 2, 1, 4, 3, 5), "rt", 2),
        (P(0, 1, 3, 2, 4), "r", 3),
    ])
    def test_examples(self, perm, opset, d):
        assert exact_distance(perm, opset) == d

    def test_exhibited_two_op_trace(self):
        perm = apply_op(apply_op(P(0, 2, 1, 4, 3, 5), PrefixOp.reversal(5)), PrefixOp.transposition(3, 5))
        assert perm == Permutation.identity(4)

    def test_size_limit(self):
        with pytest.raises(SizeTooLarge):
            exact_distance(Permutation.identity(12), "rt")

    def test_largest_supported_size(self):
        perm = P(0, 11, 10, 9, 8, 7, 6, 5, 4, 3, 2, 1, 12)
        assert exact_distance(perm, "r") == 1


class TestDistanceTable:
    @pytest.mark.parametrize("n", range(0, 6))
    @pytest.mark.parametrize("opset", ["r", "rt", "rtr", "all"])
    def test_matches_brute_force(self, n, opset):
        dist, rmin = brute_force(n, OpSet.parse(opset).kinds)
        table = distance_table(n, opset)
        assert table.dist.size == len(dist)
        for perm, d in dist.items():
            assert table.distance(perm) == d
            assert table.reversals(perm) == rmin[perm]

    def test_r_min_examples(self):
        table = distance_table(3, "rt")
        assert table.reversals(P(0, 3, 2, 1, 4)) == 1
        assert table.reversals(P(0, 2, 3, 1, 4)) == 0

    def test_n3_reversals(self):
        table = distance_table(3, "r")
        assert int(table.dist.max()) == 3
        assert table.distance(Permutation.identity(3)) == 0

    @pytest.mark.parametrize("n", range(1, 8))
    @pytest.mark.parametrize("opset", ["r", "rt", "rtr", "all"])
    def test_every_state_reached(self, n, opset):
        table = distance_table(n, opset)
        assert table.dist.size == len(list(all_perms(n)))
        assert not (table.dist == UNREACHED).any()

    def test_cross_check_with_forward_search(self):
        table = distance_table(7, "rt")
        rng = XorShift64Star(2024)
        for _ in range(25):
            perm = random_permutation(7, rng)
            assert table.distance(perm) == exact_distance(perm, "rt")

    def test_size_limit(self):
        with pytest.raises(SizeTooLarge):
            distance_table(10, "r")

    def test_file_format(self, tmp_path):
        table = distance_table(4, "rt")
        path = tmp_path / "t.bin"
        table.write(path)
        raw = path.read_bytes()
        assert raw[:4] == MAGIC and raw[4:7] == bytes([1, 4, 3]) and raw[7:16] == bytes(9)
        assert len(raw) == 16 + 24
        n, opset, dist = read_table(path)
        assert (n, opset) == (4, OpSet.parse("rt"))
        assert np.array_equal(dist, table.dist)


class TestDiameter:
    @pytest.mark.parametrize("n, opset, d", [
        (1, "r", 0), (1, "all", 0), (3, "r", 3), (7, "r", 8), (7, "rt", 5), (7, "all", 4),
    ])
    def test_values(self, n, opset, d):
        assert diameter(n, opset) == d

    @pytest.mark.parametrize("n", range(1, 8))
    def test_monotone_in_opset(self, n):
        r, rt, rtr, al = (diameter(n, o) for o in ("r", "rt", "rtr", "all"))
        assert al <= rt <= r and al <= rtr <= r


class TestRank:
    @pytest.mark.parametrize("n", range(0, 6))
    def test_lexicographic(self, n):
        for idx, middle in enumerate(itertools.permutations(range(1, n + 1))):
            assert rank(middle) == idx
            assert unrank(idx, n).middle == middle
