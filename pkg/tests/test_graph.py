import pytest

from prefixsort.errors import CursorNotSorted, NoMatch, NoTrappedEdge, Unclassifiable
from prefixsort.graph import (
    BreakpointGraph,
    Convention,
    EdgeType,
    build_graph,
    classify,
    grey_partners,
    match_fm,
    match_rt3,
    trapped_black,
)
from prefixsort.perm import (
    Permutation,
    PrefixOp,
    apply_op,
    breakpoints_fm,
    breakpoints_std,
    sorted_prefix_length,
)

from conftest import unsorted_perms

STD = Convention.STANDARD
FM = Convention.FORWARD_MARCH


def P(*values):
    return Permutation(tuple(values))


class TestBuild:
    def test_standard(self):
        g = build_graph(P(0, 3, 1, 2, 4), STD)
        assert g.black_edges == {1, 2, 4}
        assert g.grey_edges == {(0, 2), (1, 3), (1, 4)}

    def test_identity(self):
        g = build_graph(Permutation.identity(4), STD)
        assert g.black_edges == {1}
        assert g.grey_edges == frozenset()

    def test_forward_march(self):
        g = build_graph(P(0, 2, 1, 3), FM, 0)
        assert g.black_edges == {0, 2}
        assert g.grey_edges == {(0, 2), (1, 3)}

    def test_cursor_must_be_sorted(self):
        with pytest.raises(CursorNotSorted):
            build_graph(P(0, 2, 1, 3), FM, 1)
        with pytest.raises(CursorNotSorted):
            build_graph(P(0, 1, 2, 3), STD, 1)

    def test_cursor_restricts_suffix(self):
        g = build_graph(P(0, 1, 4, 3, 2, 5), FM, 1)
        assert g.black_edges == {1, 4}
        assert g.grey_edges == {(1, 4), (2, 5)}

    @pytest.mark.parametrize("n", range(0, 7))
    def test_black_edges_match_breakpoint_counts(self, n):
        for perm in unsorted_perms(n):
            assert len(build_graph(perm, STD).black_edges) == breakpoints_std(perm)
            c = sorted_prefix_length(perm)
            assert len(build_graph(perm, FM, c).black_edges) == breakpoints_fm(perm, c)

    @pytest.mark.parametrize("n", range(2, 7))
    def test_grey_edges_join_consecutive_values(self, n):
        for perm in unsorted_perms(n):
            for p, q in build_graph(perm, STD).grey_edges:
                assert q > p + 1 and abs(perm[p] - perm[q]) == 1

    def test_dump(self):
        g = build_graph(P(0, 1, 4, 3, 2, 5), FM, 1)
        assert g.dump() == "B 0\nB 3\nG 0 3\nG 1 4\n"


class TestGreyPartners:
    def test_examples(self):
        g = build_graph(P(0, 3, 1, 2, 4))
        assert grey_partners(g, 1) == [3, 4]
        assert grey_partners(g, 2) == [0]

    @pytest.mark.parametrize("p", range(0, 6))
    def test_identity_has_none(self, p):
        assert grey_partners(build_graph(Permutation.identity(4)), p) == []


class TestClassify:
    def test_type1(self):
        assert classify(build_graph(P(0, 3, 1, 2, 4)), (1, 3)) is EdgeType.TYPE1

    def test_type2(self):
        assert classify(build_graph(P(0, 3, 2, 1, 4)), (1, 4)) is EdgeType.TYPE2

    def test_type4_after_sorted_prefix(self):
        assert classify(build_graph(P(0, 1, 4, 3, 2, 5)), (1, 4)) is EdgeType.TYPE4

    def test_type3_after_sorted_prefix(self):
        assert classify(build_graph(P(0, 1, 3, 4, 2, 5)), (1, 4)) is EdgeType.TYPE3

    def test_not_a_grey_edge(self):
        with pytest.raises(Unclassifiable):
            classify(build_graph(P(0, 3, 1, 2, 4)), (1, 2))

    def test_not_a_context_endpoint(self):
        with pytest.raises(Unclassifiable):
            classify(build_graph(P(0, 3, 1, 2, 4)), (2, 0))

    @pytest.mark.parametrize("n", range(2, 8))
    def test_total_on_sorter_edges(self, n):
        for perm in unsorted_perms(n):
            g = build_graph(perm)
            if perm[1] != 1:
                edges = [(1, q) for q in g.grey_partners(1)]
            else:
                m = sorted_prefix_length(perm)
                edges = [(m, g.position(m + 1))]
            for edge in edges:
                classify(g, edge)


class TestTrappedBlack:
    def test_standard(self):
        assert trapped_black(build_graph(P(0, 3, 1, 2, 4)), (1, 3)) == 2

    def test_standard_longer(self):
        assert trapped_black(build_graph(P(0, 4, 2, 3, 5, 1, 6)), (1, 4)) == 2

    def test_forward_march(self):
        assert trapped_black(build_graph(P(0, 2, 5, 4, 3, 1, 6), FM), (1, 5)) == 2

    def test_missing(self):
        with pytest.raises(NoTrappedEdge):
            trapped_black(build_graph(P(0, 3, 1, 2, 4)), (1, 1))


class TestMatchRT3:
    @pytest.mark.parametrize("perm, scenario, op", [
        (P(0, 3, 1, 2, 4), "RT3-S1", PrefixOp.transposition(2, 4)),
        (P(0, 3, 2, 1, 4), "RT3-S2", PrefixOp.reversal(4)),
        (P(0, 1, 4, 3, 2, 5), "RT3-S4", PrefixOp.reversal(5)),
        (P(0, 1, 3, 4, 2, 5), "RT3-S3", PrefixOp.transposition(2, 4)),
    ])
    def test_examples(self, perm, scenario, op):
        m = match_rt3(build_graph(perm))
        assert (m.scenario, m.op) == (scenario, op)

    def test_sorted_has_no_match(self):
        with pytest.raises(NoMatch):
            match_rt3(build_graph(Permutation.identity(3)))

    @pytest.mark.parametrize("n", range(2, 8))
    def test_exhaustive_delta(self, n):
        for perm in unsorted_perms(n):
            m = match_rt3(build_graph(perm))
            out = apply_op(perm, m.op)
            assert breakpoints_std(perm) - breakpoints_std(out) >= m.predicted_delta


class TestMatchFM:
    def test_s5_after_initial_march(self):
        m = match_fm(build_graph(P(0, 1, 4, 3, 2, 5), FM, 1))
        assert (m.scenario, m.op) == ("S5", PrefixOp.reversal(4, 1))
        assert apply_op(P(0, 1, 4, 3, 2, 5), m.op) == Permutation.identity(4)

    def test_s5_small(self):
        m = match_fm(build_graph(P(0, 2, 1, 3), FM, 0))
        assert (m.scenario, m.op) == ("S5", PrefixOp.reversal(3))

    def test_s1(self):
        perm = P(0, 3, 1, 2, 4)
        m = match_fm(build_graph(perm, FM))
        assert (m.scenario, m.op, m.forward_march) == ("S1", PrefixOp.transposition(2, 4), True)
        assert breakpoints_fm(perm) - breakpoints_fm(apply_op(perm, m.op)) >= 2

    def test_sorted_suffix_has_no_match(self):
        with pytest.raises(NoMatch):
            match_fm(build_graph(Permutation.identity(3), FM, 3))

    @pytest.mark.parametrize("n", range(2, 8))
    def test_exhaustive(self, n):
        seen = set()
        for perm in unsorted_perms(n):
            c = sorted_prefix_length(perm)
            g = build_graph(perm, FM, c)
            m = match_fm(g)
            seen.add(m.scenario)
            assert m.op.offset == c
            out = apply_op(perm, m.op)
            assert out.values[: c + 1] == perm.values[: c + 1]
            assert breakpoints_fm(perm, c) - breakpoints_fm(out, c) >= m.predicted_delta
            if m.forward_march:
                assert sorted_prefix_length(out) > c
        if n >= 5:
            assert seen == {"S1", "S2", "S3", "S4", "S5"}

    def test_incremental_graph_equals_rebuild(self):
        for perm in unsorted_perms(5):
            g = BreakpointGraph(perm, STD)
            op = match_rt3(g).op
            after = g.after(op)
            fresh = BreakpointGraph(apply_op(perm, op), STD)
            assert (after.black_edges, after.grey_edges) == (fresh.black_edges, fresh.grey_edges)
