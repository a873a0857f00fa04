import pytest

from pph import Alphabet, build_from_strings, build_index

# Running example: ten strings over sigma={a}, pi={x,y,z}.
FIG_STRINGS = ["xaxxx", "yaxx", "zaxx", "zyx", "yyy", "yayy", "xayy", "xzy", "yayxz", "xaxz"]


@pytest.fixture(scope="session")
def fig_alphabet():
    return Alphabet("a", "xyz")


@pytest.fixture(scope="session")
def fig_trie(fig_alphabet):
    return build_from_strings(FIG_STRINGS, fig_alphabet)


@pytest.fixture(scope="session")
def fig_index(fig_trie):
    return build_index(fig_trie)


def find_trie_node(trie, text):
    """Id of the trie node whose node-to-root string equals ``text``."""
    v = 1
    for c in reversed(text):
        v = trie.nodes[v].children[c]
    return v


def find_heap_node(heap, text):
    """Id of the heap node whose root-to-node string equals ``text``."""
    v = 1
    for c in text:
        v = heap.nodes[v].children[c]
    return v
