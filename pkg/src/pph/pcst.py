"""Quotient of the input trie under matching up to parameter renaming.

Every input-trie node carries a node-to-root string; two nodes are merged
when those strings match up to a bijective renaming of parameters.  The
merged node keeps the renaming-class representative obtained by
canonicalizing the string *read from the root side* (canonicalize the
reversed string, then reverse back), which makes the representative of a node
an extension of its parent's representative, so the quotient is again a
reversed trie.

The build is a single breadth-first pass over the input trie.  Each input
node extends its parent's root-side renaming by one symbol; the resulting
canonical name is the merged node's edge label.  Renamings are shared as
per-parameter delta chains, so the whole pass stores O(N) entries and each
name lookup walks at most |pi| of them.
"""

from __future__ import annotations

from typing import Iterator

from .cstrie import InputTrie
from .errors import InputError
from .pstrings import Alphabet

__all__ = ["PcstNode", "Pcst", "build_pcst", "pcst_char", "char_iter", "bfs_order", "node_text"]


class PcstNode:
    __slots__ = ("id", "parent", "label", "depth", "children", "origins", "heap_node")

    def __init__(self, id: int, parent: int | None, label: str | None, depth: int):
        self.id = id
        self.parent = parent
        self.label = label
        self.depth = depth
        self.children: dict[str, int] = {}
        self.origins: list[int] = []     # input-trie node ids merged into this node
        self.heap_node: int | None = None


class Pcst:
    """Merged trie; ids 1..N_p follow a breadth-first order (root = 1)."""

    __slots__ = ("alphabet", "nodes")

    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet
        self.nodes: list[PcstNode | None] = [None]

    def __len__(self) -> int:
        return len(self.nodes) - 1

    @property
    def root(self) -> PcstNode:
        return self.nodes[1]

    def node(self, v: int) -> PcstNode:
        if not 1 <= v < len(self.nodes):
            raise InputError(f"no merged-trie node with id {v}")
        return self.nodes[v]


class _RightEntry:
    """One link of a shared root-side renaming chain."""

    __slots__ = ("source", "rank", "prev")

    def __init__(self, source: str, rank: int, prev: "_RightEntry | None"):
        self.source = source
        self.rank = rank
        self.prev = prev


def _child_sort_key(alphabet: Alphabet):
    # Parameters sort before statics.  The position heap inserts canonical
    # forms in this breadth-first order, so node numbering everywhere
    # downstream depends on this tie-break.
    order = {c: (0, i) for i, c in enumerate(alphabet.pi)}
    order.update({c: (1, i) for i, c in enumerate(alphabet.sigma)})
    return order.__getitem__


def build_pcst(t: InputTrie) -> Pcst:
    """Merge the input trie's nodes into their renaming classes.

    Processes input nodes in id order (parents first), extending the parent's
    root-side renaming chain by the node's own label.  Afterwards the merged
    nodes are renumbered breadth-first with the deterministic sibling order.
    """
    alphabet = t.alphabet
    ranks = alphabet._param_rank
    pi = alphabet.pi
    N = len(t)

    children: list[dict[str, int] | None] = [None, {}]
    parents: list[int] = [0, 0]
    labels: list[str | None] = [None, None]
    origins: list[list[int] | None] = [None, [1]]
    pcst_of = [0] * (N + 1)
    pcst_of[1] = 1
    chain: list[_RightEntry | None] = [None] * (N + 1)

    for u in range(2, N + 1):
        node = t.nodes[u]
        p = node.parent
        a = node.label
        head = chain[p]
        if a in ranks:
            e = head
            while e is not None and e.source != a:
                e = e.prev
            if e is not None:
                b = pi[e.rank - 1]
                chain[u] = head
            else:
                r = head.rank + 1 if head is not None else 1
                b = pi[r - 1]
                chain[u] = _RightEntry(a, r, head)
        else:
            b = a
            chain[u] = head
        pp = pcst_of[p]
        cid = children[pp].get(b)
        if cid is None:
            children.append({})
            parents.append(pp)
            labels.append(b)
            origins.append([])
            cid = len(children) - 1
            children[pp][b] = cid
        origins[cid].append(u)
        pcst_of[u] = cid

    key = _child_sort_key(alphabet)
    order = [1]
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        ch = children[v]
        for c in sorted(ch, key=key):
            order.append(ch[c])
    new_id = {old: new for new, old in enumerate(order, 1)}

    pcst = Pcst(alphabet)
    pcst.nodes = [None]
    for new, old in enumerate(order, 1):
        if old == 1:
            n = PcstNode(1, None, None, 0)
        else:
            par = new_id[parents[old]]
            n = PcstNode(new, par, labels[old], pcst.nodes[par].depth + 1)
            pcst.nodes[par].children[labels[old]] = new
        n.origins = origins[old]
        pcst.nodes.append(n)
    return pcst


def bfs_order(p: Pcst) -> list[int]:
    """Node ids in nondecreasing depth; the heap's insertion sequence."""
    return list(range(1, len(p) + 1))


def pcst_char(p: Pcst, c: int, beta: int) -> str:
    """Symbol at position ``beta`` of node ``c``'s node-to-root string.

    That symbol is the label of the ancestor at distance ``beta - 1``, found
    by walking parent links.
    """
    n = p.node(c)
    if not 1 <= beta <= n.depth:
        raise InputError(f"position {beta} outside 1..{n.depth} for node {c}")
    for _ in range(beta - 1):
        n = p.nodes[n.parent]
    return n.label


def char_iter(p: Pcst, c: int, start: int = 1) -> Iterator[str]:
    """Yield the symbols of node ``c``'s string from position ``start`` on.

    Steps one ancestor per symbol, so consuming k symbols after the initial
    positioning walk costs k parent steps.
    """
    n = p.node(c)
    if start < 1:
        raise InputError("positions are 1-based")
    for _ in range(start - 1):
        if n.parent is None:
            return
        n = p.nodes[n.parent]
    while n.parent is not None:
        yield n.label
        n = p.nodes[n.parent]


def node_text(p: Pcst, c: int) -> str:
    """Node-to-root string of merged node ``c`` as plain text."""
    return "".join(char_iter(p, c))
