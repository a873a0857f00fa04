import random

import pytest

from pph import Alphabet, InputError, bfs_order, build_from_strings, build_pcst, canonicalize, PString
from pph.oracle import oracle_pcst
from pph.pcst import char_iter, node_text, pcst_char

from conftest import find_trie_node

FIG_PCST_STRINGS = ["", "x", "xx", "yx", "xxx", "axx", "zyx", "ayx",
                    "axxx", "xaxx", "yaxx", "azyx", "yayx", "xaxxx", "zazyx"]

FIG_ORIGINS = {
    1: [1], 2: [2, 3, 4], 3: [5, 7], 4: [6, 8, 9], 5: [11, 14], 6: [10, 13],
    7: [12, 15, 17], 8: [16], 9: [20], 10: [22], 11: [18, 19, 21], 12: [24],
    13: [23], 14: [25], 15: [26],
}


@pytest.fixture(scope="module")
def fig_pcst(fig_trie):
    return build_pcst(fig_trie)


class TestBuild:
    def test_node_count(self, fig_pcst):
        assert len(fig_pcst) == 15

    def test_node_strings(self, fig_pcst):
        assert [node_text(fig_pcst, i) for i in range(1, 16)] == FIG_PCST_STRINGS

    def test_origin_lists(self, fig_pcst):
        assert {i: fig_pcst.nodes[i].origins for i in range(1, 16)} == FIG_ORIGINS

    def test_depth_sequence(self, fig_pcst):
        assert [fig_pcst.nodes[i].depth for i in range(1, 16)] == \
            [0, 1, 2, 2, 3, 3, 3, 3, 4, 4, 4, 4, 4, 5, 5]

    def test_single_parameters_merge(self, fig_trie, fig_pcst):
        node = fig_pcst.nodes[2]
        assert node_text(fig_pcst, 2) == "x"
        assert node.origins == [find_trie_node(fig_trie, s) for s in ("x", "y", "z")]

    def test_depth_four_merges(self, fig_trie, fig_pcst):
        merged = fig_pcst.nodes[11]
        assert node_text(fig_pcst, 11) == "yaxx"
        assert sorted(merged.origins) == sorted(
            find_trie_node(fig_trie, s) for s in ("yaxx", "zaxx", "xayy"))
        lone = fig_pcst.nodes[10]
        assert node_text(fig_pcst, 10) == "xaxx"
        assert lone.origins == [find_trie_node(fig_trie, "yayy")]

    def test_origin_count_totals(self, fig_trie, fig_pcst):
        assert sum(len(n.origins) for n in fig_pcst.nodes[1:]) == len(fig_trie)

    def test_strings_are_root_side_canonical(self, fig_pcst):
        a = fig_pcst.alphabet
        for i in range(1, 16):
            rev = node_text(fig_pcst, i)[::-1]
            assert canonicalize(PString(rev, a)).string == rev

    def test_sibling_label_rank_rule(self, fig_pcst):
        a = fig_pcst.alphabet
        for i in range(1, 16):
            w = node_text(fig_pcst, i)
            r = len({c for c in w if a.is_param(c)})
            for b in fig_pcst.nodes[i].children:
                assert a.is_static(b) or a.rank(b) <= r + 1


class TestOrder:
    def test_bfs_order_is_id_order(self, fig_pcst):
        order = bfs_order(fig_pcst)
        assert order == list(range(1, 16))
        assert order[0] == 1
        for i in order[1:]:
            assert fig_pcst.nodes[i].parent < i

    def test_canonical_insertion_sequence(self, fig_pcst):
        a = fig_pcst.alphabet
        forms = [canonicalize(PString(node_text(fig_pcst, i), a)).string for i in range(1, 16)]
        assert forms == ["", "x", "xx", "xy", "xxx", "axx", "xyz", "axy",
                         "axxx", "xaxx", "xayy", "axyz", "xaxy", "xaxxx", "xaxyz"]


class TestCharAccess:
    def test_first_position_is_own_label(self, fig_pcst):
        for i in range(2, 16):
            assert pcst_char(fig_pcst, i, 1) == fig_pcst.nodes[i].label

    def test_middle_position(self, fig_pcst):
        i = FIG_PCST_STRINGS.index("axx") + 1
        assert pcst_char(fig_pcst, i, 2) == "x"

    def test_last_position_is_depth_one_ancestor(self, fig_pcst):
        for i in range(2, 16):
            n = fig_pcst.nodes[i]
            assert pcst_char(fig_pcst, i, n.depth) == node_text(fig_pcst, i)[-1]

    def test_out_of_range(self, fig_pcst):
        with pytest.raises(InputError):
            pcst_char(fig_pcst, 2, 2)
        with pytest.raises(InputError):
            pcst_char(fig_pcst, 2, 0)

    def test_char_iter_matches_text(self, fig_pcst):
        for i in range(1, 16):
            w = node_text(fig_pcst, i)
            for start in range(1, len(w) + 2):
                assert "".join(char_iter(fig_pcst, i, start)) == w[start - 1:]


class TestAgainstOracle:
    def test_fig_partition(self, fig_trie, fig_pcst):
        assert {frozenset(n.origins) for n in fig_pcst.nodes[2:]} == oracle_pcst(fig_trie)

    def test_random_partitions(self):
        rng = random.Random(11)
        for _ in range(60):
            ns, np_ = rng.randint(0, 2), rng.randint(0, 3)
            if ns + np_ == 0:
                np_ = 1
            a = Alphabet("ab"[:ns], "xyz"[:np_])
            syms = a.sigma + a.pi
            W = list({"".join(rng.choice(syms) for _ in range(rng.randint(1, 7)))
                      for _ in range(rng.randint(1, 6))})
            t = build_from_strings(W, a)
            p = build_pcst(t)
            assert {frozenset(n.origins) for n in p.nodes[2:]} == oracle_pcst(t)
            depths = [p.nodes[i].depth for i in range(1, len(p) + 1)]
            assert depths == sorted(depths)
