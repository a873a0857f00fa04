import pytest

from pph import (
    Alphabet,
    FormatError,
    InputError,
    build_from_strings,
    expand_occurrence,
    load_trie,
    node_string,
    save_trie,
)
from pph.cstrie import load_strings, save_strings

from conftest import FIG_STRINGS, find_trie_node


class TestBuild:
    def test_node_count_is_distinct_suffixes(self, fig_trie):
        assert len(fig_trie) == 26

    def test_two_letter_static(self):
        t = build_from_strings(["ab"], Alphabet("ab", ""))
        assert len(t) == 3  # root, b, ab

    def test_shared_suffix(self):
        t = build_from_strings(["xy", "y"], Alphabet("", "xy"))
        assert len(t) == 3  # root, y, xy

    def test_suffix_string_marks_interior_node(self):
        t = build_from_strings(["xy", "y"], Alphabet("", "xy"))
        assert t.string_ends[find_trie_node(t, "y")] == [2]
        assert t.string_ends[find_trie_node(t, "xy")] == [1]

    def test_duplicates_warn_and_drop(self):
        with pytest.warns(UserWarning):
            t = build_from_strings(["xy", "xy"], Alphabet("", "xy"))
        assert t.string_count == 1

    def test_empty_string_rejected(self):
        with pytest.raises(InputError):
            build_from_strings([""], Alphabet("a", ""))

    def test_foreign_symbol_rejected(self):
        with pytest.raises(InputError):
            build_from_strings(["aq"], Alphabet("a", "x"))

    def test_ids_are_breadth_first(self, fig_trie):
        for v in range(2, len(fig_trie) + 1):
            assert fig_trie.nodes[v].parent < v
        depths = [fig_trie.nodes[v].depth for v in range(1, len(fig_trie) + 1)]
        assert depths == sorted(depths)

    def test_empty_set_gives_root_only(self):
        t = build_from_strings([], Alphabet("a", "x"))
        assert len(t) == 1 and t.string_count == 0


class TestNodeString:
    def test_root_is_empty(self, fig_trie):
        assert node_string(fig_trie, 1).text == ""

    def test_full_string_node(self, fig_trie):
        v = find_trie_node(fig_trie, "yayxz")
        assert node_string(fig_trie, v).text == "yayxz"
        assert v in fig_trie.string_ends

    def test_parent_drops_first_symbol(self, fig_trie):
        for v in range(2, len(fig_trie) + 1):
            n = fig_trie.nodes[v]
            assert node_string(fig_trie, v).text[1:] == node_string(fig_trie, n.parent).text

    def test_unknown_id_rejected(self, fig_trie):
        with pytest.raises(InputError):
            node_string(fig_trie, 99)


class TestExpand:
    def test_single_occurrence(self, fig_trie):
        v = find_trie_node(fig_trie, "axz")
        assert expand_occurrence(fig_trie, v) == [(10, 2)]  # xaxz from offset 2

    def test_depth_one_parameter(self, fig_trie):
        v = find_trie_node(fig_trie, "x")
        # strings ending in the symbol x: xaxxx@5, yaxx@4, zaxx@4, zyx@3
        assert expand_occurrence(fig_trie, v) == [(1, 5), (2, 4), (3, 4), (4, 3)]

    def test_root_expands_to_nothing(self, fig_trie):
        assert expand_occurrence(fig_trie, 1) == []

    def test_pairs_are_real_suffixes(self, fig_trie):
        for v in range(2, len(fig_trie) + 1):
            s = node_string(fig_trie, v).text
            for sid, off in expand_occurrence(fig_trie, v):
                assert FIG_STRINGS[sid - 1][off - 1:] == s

    def test_unavailable_without_end_markers(self, tmp_path):
        t = build_from_strings(["xy"], Alphabet("", "xy"))
        path = tmp_path / "t.trie"
        save_trie(t, str(path))
        # strip the end lines to simulate a bare ingested trie
        lines = [ln for ln in path.read_text().splitlines() if not ln.startswith("end ")]
        path.write_text("\n".join(lines) + "\n")
        bare = load_trie(str(path))
        with pytest.raises(InputError):
            expand_occurrence(bare, 2)


class TestTrieFormat:
    def test_round_trip(self, fig_trie, tmp_path):
        p1, p2 = tmp_path / "a.trie", tmp_path / "b.trie"
        save_trie(fig_trie, str(p1))
        loaded = load_trie(str(p1))
        save_trie(loaded, str(p2))
        assert p1.read_bytes() == p2.read_bytes()
        assert len(loaded) == len(fig_trie)
        assert loaded.string_ends == fig_trie.string_ends
        for v in range(2, len(fig_trie) + 1):
            a, b = fig_trie.nodes[v], loaded.nodes[v]
            assert (a.parent, a.label, a.depth) == (b.parent, b.label, b.depth)

    def test_single_root_file(self, tmp_path):
        p = tmp_path / "r.trie"
        p.write_text("PPH-TRIE v1\nsigma: a\npi: x\n")
        t = load_trie(str(p))
        assert len(t) == 1 and not t.has_ends

    def test_bad_header(self, tmp_path):
        p = tmp_path / "bad.trie"
        p.write_text("NOPE v9\n")
        with pytest.raises(FormatError):
            load_trie(str(p))

    def test_duplicate_sibling_label(self, tmp_path):
        p = tmp_path / "dup.trie"
        p.write_text("PPH-TRIE v1\nsigma: a\npi: x\n2 1 a\n3 1 a\n")
        with pytest.raises(FormatError):
            load_trie(str(p))

    def test_dangling_parent(self, tmp_path):
        p = tmp_path / "dangle.trie"
        p.write_text("PPH-TRIE v1\nsigma: a\npi: x\n2 5 a\n")
        with pytest.raises(FormatError):
            load_trie(str(p))

    def test_nonconsecutive_ids(self, tmp_path):
        p = tmp_path / "gap.trie"
        p.write_text("PPH-TRIE v1\nsigma: a\npi: x\n3 1 a\n")
        with pytest.raises(FormatError):
            load_trie(str(p))

    def test_label_outside_alphabet(self, tmp_path):
        p = tmp_path / "lbl.trie"
        p.write_text("PPH-TRIE v1\nsigma: a\npi: x\n2 1 q\n")
        with pytest.raises(FormatError):
            load_trie(str(p))

    def test_end_marker_unknown_node(self, tmp_path):
        p = tmp_path / "end.trie"
        p.write_text("PPH-TRIE v1\nsigma: a\npi: x\n2 1 a\nend 7 1\n")
        with pytest.raises(FormatError):
            load_trie(str(p))


class TestStringsFormat:
    def test_round_trip(self, fig_alphabet, tmp_path):
        p = tmp_path / "w.strings"
        save_strings(FIG_STRINGS, fig_alphabet, str(p))
        W, a = load_strings(str(p))
        assert W == FIG_STRINGS and a == fig_alphabet

    def test_foreign_symbol_rejected(self, tmp_path):
        p = tmp_path / "w.strings"
        p.write_text("PPH-STRINGS v1\nsigma: a\npi: x\naq\n")
        with pytest.raises(FormatError):
            load_strings(str(p))
