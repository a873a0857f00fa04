"""Parameterized pattern matching index for sets of strings stored as a
common-suffix trie.

Build an index over a string set (or a pre-built reversed trie) and answer
queries of the form "report every trie node whose node-to-root string starts,
up to a bijective renaming of parameter symbols, with the pattern".
"""

from .errors import FormatError, InputError, InvariantError, PphError
from .pstrings import (
    Alphabet,
    CanonicalResult,
    NameAssignment,
    NameEntry,
    PString,
    SHIFT_FRESH,
    SHIFT_STATIC,
    ShiftMode,
    canonical_extend,
    canonicalize,
    p_match,
    prepend_shift,
    reverse,
    shift_bound,
)
from .cstrie import InputTrie, TrieNode, build_from_strings, expand_occurrence, load_trie, node_string, save_trie
from .pcst import Pcst, PcstNode, bfs_order, build_pcst, pcst_char
from .heap import Heap, HeapNode, build_fast, build_naive, compute_mrp, finalize, mrp_oracle
from .index import PPHIndex, build_index
from .matcher import MatchResult, Pattern, factorize, is_descendant, locate, query, verify_candidate
from .oracle import CheckReport, cross_check, oracle_match, oracle_pcst
from .indexio import export_dot, load_index, save_index, stats

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "CanonicalResult",
    "CheckReport",
    "FormatError",
    "Heap",
    "HeapNode",
    "InputError",
    "InputTrie",
    "InvariantError",
    "MatchResult",
    "NameAssignment",
    "NameEntry",
    "PPHIndex",
    "PString",
    "Pattern",
    "Pcst",
    "PcstNode",
    "PphError",
    "SHIFT_FRESH",
    "SHIFT_STATIC",
    "ShiftMode",
    "TrieNode",
    "bfs_order",
    "build_fast",
    "build_from_strings",
    "build_index",
    "build_naive",
    "build_pcst",
    "canonical_extend",
    "canonicalize",
    "compute_mrp",
    "cross_check",
    "expand_occurrence",
    "export_dot",
    "factorize",
    "finalize",
    "is_descendant",
    "load_index",
    "load_trie",
    "locate",
    "mrp_oracle",
    "node_string",
    "oracle_match",
    "oracle_pcst",
    "p_match",
    "pcst_char",
    "prepend_shift",
    "query",
    "reverse",
    "save_index",
    "save_trie",
    "shift_bound",
    "stats",
    "verify_candidate",
]
