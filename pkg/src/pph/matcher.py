"""Pattern queries over the finalized index.

A pattern matches a trie node when the node's node-to-root string is at least
as long as the pattern and its prefix of that length matches the pattern up
to parameter renaming.  If the pattern's whole canonical form is present in
the heap, the matches are read off preorder intervals and reach pointers
(case 1).  Otherwise the canonical form is factorized greedily into
represented pieces and candidates are filtered through the reach-pointer
chain those pieces induce, then confirmed by a direct scan (case 2); the
chain conditions are necessary but not sufficient, since factors forget
parameter identities across their boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .cstrie import expand_occurrence
from .errors import InputError
from .heap import Heap
from .index import PPHIndex
from .pcst import char_iter
from .pstrings import NameAssignment, PString, canonicalize, _canon_text

__all__ = [
    "Pattern",
    "Factor",
    "MatchResult",
    "locate",
    "factorize",
    "query",
    "verify_candidate",
    "is_descendant",
]


@dataclass(frozen=True)
class Pattern:
    raw: PString
    canonical: str
    assignment: NameAssignment
    m: int

    @classmethod
    def make(cls, p: PString) -> "Pattern":
        if len(p) == 0:
            raise InputError("patterns must be nonempty")
        c = canonicalize(p)
        return cls(p, c.string, c.assignment, len(p))


class Factor(NamedTuple):
    text: str   # canonical factor content
    node: int   # heap node representing it (root when text is empty)


@dataclass
class MatchResult:
    pcst_hits: set[int]
    trie_hits: set[int]
    expanded: list[tuple[int, int]] | None
    pocc: int


def locate(h: Heap, s: str) -> tuple[int, int]:
    """Deepest node whose string prefixes canonical ``s``, with its depth."""
    nodes = h.nodes
    v = nodes[1]
    matched = 0
    for ch in s:
        nxt = v.children.get(ch)
        if nxt is None:
            break
        v = nodes[nxt]
        matched += 1
    return v.id, matched


def is_descendant(h: Heap, u: int, v: int) -> bool:
    """True iff ``u`` is an ancestor of ``v`` or ``v`` itself (preorder test)."""
    un = h.nodes[u]
    return un.pre_in <= h.nodes[v].pre_in <= un.pre_out


def factorize(q: Pattern, h: Heap) -> list[Factor]:
    """Greedy factorization of the pattern into represented pieces.

    Each factor is the longest represented prefix of the canonical form of
    the remaining raw pattern, recomputed from scratch after every cut.  A
    zero-length factor ends the list and means the remainder is not
    represented even one symbol deep; callers report no matches then.
    """
    alphabet = h.alphabet
    rest = q.raw.text
    out: list[Factor] = []
    while rest:
        c = _canon_text(rest, alphabet)
        node, matched = locate(h, c)
        out.append(Factor(c[:matched], node))
        if matched == 0:
            break
        rest = rest[matched:]
    return out


def verify_candidate(index: PPHIndex, i: int, pattern: Pattern) -> bool:
    """Directly compare the pattern against the candidate's string prefix.

    Reads the merged-trie symbols one ancestor at a time and maintains the
    renaming in both directions; the candidate must be at least pattern-long.
    """
    ranks = index.alphabet._param_rank
    fwd: dict[str, str] = {}
    bwd: dict[str, str] = {}
    it = char_iter(index.pcst, i, 1)
    for a in pattern.raw.text:
        b = next(it)
        if a in ranks:
            if b not in ranks:
                return False
            if fwd.setdefault(a, b) != b or bwd.setdefault(b, a) != a:
                return False
        elif a != b:
            return False
    return True


def _chain_ok(index: PPHIndex, i: int, factors: list[Factor]) -> bool:
    """Reach-pointer chain conditions induced by the factorization.

    For every factor but the last, the reach pointer of the merged-trie
    ancestor at the accumulated offset must be exactly the factor's node; for
    the last factor, that node must be an ancestor-or-self of the reach
    pointer.
    """
    nodes = index.heap.nodes
    pnodes = index.pcst.nodes
    anc = i
    last = len(factors) - 1
    for idx, f in enumerate(factors):
        reach = nodes[anc].mrp
        if idx < last:
            if reach != f.node:
                return False
            for _ in range(len(f.text)):
                anc = pnodes[anc].parent
        else:
            qn = nodes[f.node]
            if not (qn.pre_in <= nodes[reach].pre_in <= qn.pre_out):
                return False
    return True


def query(index: PPHIndex, p: PString | str, expand: bool = False,
          stats: dict | None = None) -> MatchResult:
    """Report every input-trie node whose length-m prefix matches ``p``.

    Case 1 (canonical form fully represented at node u): matches are the ids
    in u's subtree plus the ids on the root-to-u path whose reach pointer
    lands inside that subtree.  Case 2 (form absent): candidates lie on the
    root path of the first factor's node, must be at least pattern-deep, and
    must pass the factor chain conditions and the direct check.
    """
    alphabet = index.alphabet
    if isinstance(p, str):
        p = PString(p, alphabet)
    elif p.alphabet != alphabet:
        raise InputError("pattern alphabet differs from the index alphabet")
    pat = Pattern.make(p)
    m = pat.m
    h = index.heap
    nodes = h.nodes
    pnodes = index.pcst.nodes

    hits: set[int] = set()
    u, matched = locate(h, pat.canonical)
    if matched == m:
        un = nodes[u]
        hits.update(h.preorder[un.pre_in - 1: un.pre_out])
        a = un.parent
        while a is not None and a != 1:
            an = nodes[a]
            mn = nodes[an.mrp]
            if un.pre_in <= mn.pre_in <= un.pre_out:
                hits.add(a)
            a = an.parent
    else:
        factors = factorize(pat, h)
        if factors and all(f.text for f in factors):
            cand = factors[0].node
            while cand is not None and cand != 1:
                if pnodes[cand].depth >= m and _chain_ok(index, cand, factors):
                    if verify_candidate(index, cand, pat):
                        hits.add(cand)
                    elif stats is not None:
                        stats["chain_rejected"] = stats.get("chain_rejected", 0) + 1
                cand = nodes[cand].parent

    trie_hits: set[int] = set()
    for i in hits:
        trie_hits.update(pnodes[i].origins)

    expanded = None
    if expand:
        expanded = []
        for v in sorted(trie_hits):
            expanded.extend(expand_occurrence(index.trie, v))
    return MatchResult(hits, trie_hits, expanded, len(trie_hits))
