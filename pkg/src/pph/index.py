"""Assembly of the full query index from an input trie."""

from __future__ import annotations

from dataclasses import dataclass

from .cstrie import InputTrie
from .heap import Heap, build_fast, build_naive, compute_mrp, finalize, mrp_oracle, reconstruct_rsl
from .pcst import Pcst, build_pcst
from .pstrings import Alphabet

__all__ = ["PPHIndex", "build_index"]


@dataclass
class PPHIndex:
    alphabet: Alphabet
    trie: InputTrie
    pcst: Pcst
    heap: Heap


def build_index(trie: InputTrie, naive: bool = False) -> PPHIndex:
    """Build merged trie, position heap, reach pointers, and preorder.

    ``naive=True`` selects the definitional builders (insertion replay,
    link reconstruction, reach by root descent); the result must be
    indistinguishable from the default link-driven construction.
    """
    pcst = build_pcst(trie)
    if naive:
        heap = build_naive(pcst)
        reconstruct_rsl(heap)
        for i in range(1, len(pcst) + 1):
            heap.nodes[i].mrp = mrp_oracle(heap, pcst, i)
    else:
        heap = build_fast(pcst)
        compute_mrp(heap, pcst)
    finalize(heap)
    return PPHIndex(trie.alphabet, trie, pcst, heap)
