"""Common-suffix trie over a set of p-strings.

The trie is reversed: every edge points toward the root, and each node
represents the string read from that node up to the root.  Inserting a string
therefore walks from the root along the string's symbols in reverse order,
and the non-root nodes end up being exactly the distinct nonempty suffixes of
the input set.  Nodes where a whole input string ends carry string-id
markers, which is what turns node hits into (string, offset) reports.
"""

from __future__ import annotations

import warnings

from .errors import FormatError, InputError
from .pstrings import Alphabet, PString

__all__ = [
    "TrieNode",
    "InputTrie",
    "build_from_strings",
    "node_string",
    "expand_occurrence",
    "save_trie",
    "load_trie",
    "load_strings",
    "save_strings",
]

TRIE_HEADER = "PPH-TRIE v1"
STRINGS_HEADER = "PPH-STRINGS v1"


class TrieNode:
    __slots__ = ("id", "parent", "label", "depth", "children")

    def __init__(self, id: int, parent: int | None, label: str | None, depth: int):
        self.id = id
        self.parent = parent
        self.label = label          # first symbol of this node's node-to-root string
        self.depth = depth
        self.children: dict[str, int] = {}


class InputTrie:
    """Reversed trie; node ids are 1-based with the root at id 1."""

    __slots__ = ("alphabet", "nodes", "string_ends", "string_count", "has_ends")

    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet
        self.nodes: list[TrieNode | None] = [None, TrieNode(1, None, None, 0)]
        self.string_ends: dict[int, list[int]] = {}
        self.string_count = 0
        self.has_ends = False

    def __len__(self) -> int:
        """Number of nodes, root included."""
        return len(self.nodes) - 1

    @property
    def root(self) -> TrieNode:
        return self.nodes[1]

    def node(self, v: int) -> TrieNode:
        if not 1 <= v < len(self.nodes):
            raise InputError(f"no trie node with id {v}")
        return self.nodes[v]

    def add_node(self, parent: int, label: str) -> TrieNode:
        p = self.nodes[parent]
        if label in p.children:
            raise InputError(f"node {parent} already has a child labeled {label!r}")
        n = TrieNode(len(self.nodes), parent, label, p.depth + 1)
        self.nodes.append(n)
        p.children[label] = n.id
        return n


def _child_sort_key(alphabet: Alphabet):
    """Static symbols first (declared order), then parameters (declared order)."""
    order = {c: (0, i) for i, c in enumerate(alphabet.sigma)}
    order.update({c: (1, i) for i, c in enumerate(alphabet.pi)})
    return order.__getitem__


def build_from_strings(W: list[str], alphabet: Alphabet) -> InputTrie:
    """Build the suffix-sharing trie of the string set ``W``.

    Node ids are assigned by a breadth-first pass with siblings ordered by
    label, so identical inputs always produce the identical trie.  Duplicate
    strings are dropped with a warning; a string that is a suffix of another
    simply marks an interior node as a string end.
    """
    for w in W:
        if not w:
            raise InputError("input strings must be nonempty")
        alphabet.validate_text(w)

    # Provisional build: children maps over a flat node list, root at index 1.
    children: list[dict[str, int]] = [{}, {}]
    parents: list[int] = [0, 0]
    labels: list[str | None] = [None, None]
    ends: dict[int, list[int]] = {}
    seen: set[str] = set()
    sid = 0
    for w in W:
        if w in seen:
            warnings.warn(f"duplicate input string {w!r} ignored")
            continue
        seen.add(w)
        sid += 1
        v = 1
        for c in reversed(w):
            nxt = children[v].get(c)
            if nxt is None:
                children.append({})
                parents.append(v)
                labels.append(c)
                nxt = len(children) - 1
                children[v][c] = nxt
            v = nxt
        ends.setdefault(v, []).append(sid)

    # Renumber breadth-first with deterministic sibling order.
    key = _child_sort_key(alphabet)
    order = [1]
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        for c in sorted(children[v], key=key):
            order.append(children[v][c])
    new_id = {old: new for new, old in enumerate(order, 1)}

    trie = InputTrie(alphabet)
    for old in order[1:]:
        trie.add_node(new_id[parents[old]], labels[old])
    trie.string_ends = dict(sorted((new_id[v], sids) for v, sids in ends.items()))
    trie.string_count = sid
    trie.has_ends = True
    return trie


def node_string(t: InputTrie, v: int) -> PString:
    """The p-string read from node ``v`` to the root (length = depth of v)."""
    n = t.node(v)
    out = []
    while n.parent is not None:
        out.append(n.label)
        n = t.nodes[n.parent]
    return PString("".join(out), t.alphabet)


def expand_occurrence(t: InputTrie, v: int) -> list[tuple[int, int]]:
    """All (string id, offset) pairs whose suffix at that offset is node v's string.

    A string w contributes the pair (id, |w| - depth(v) + 1) exactly when its
    end node lies in v's subtree.  The root expands to nothing: patterns have
    length >= 1, so the empty suffix never reports.
    """
    if not t.has_ends:
        raise InputError("trie has no string-end markers; expansion unavailable")
    n = t.node(v)
    if n.parent is None:
        return []
    out = []
    stack = [n.id]
    while stack:
        u = stack.pop()
        for sid in t.string_ends.get(u, ()):
            out.append((sid, t.nodes[u].depth - n.depth + 1))
        stack.extend(t.nodes[u].children.values())
    out.sort()
    return out


# ---------------------------------------------------------------------------
# Text formats


def _format_alphabet_lines(alphabet: Alphabet) -> list[str]:
    return ["sigma: " + "".join(alphabet.sigma), "pi: " + "".join(alphabet.pi)]


def _parse_alphabet_lines(lines: list[str], at: int) -> Alphabet:
    def field(idx, tag):
        if idx >= len(lines) or not lines[idx].startswith(tag):
            raise FormatError(f"expected a {tag!r} line", line=idx + 1)
        return lines[idx][len(tag):].strip()

    sigma = field(at, "sigma:")
    pi = field(at + 1, "pi:")
    try:
        return Alphabet(tuple(sigma), tuple(pi))
    except InputError as exc:
        raise FormatError(str(exc), line=at + 1) from None


def save_trie(t: InputTrie, path: str) -> None:
    lines = [TRIE_HEADER]
    lines += _format_alphabet_lines(t.alphabet)
    for n in t.nodes[2:]:
        lines.append(f"{n.id} {n.parent} {n.label}")
    by_sid = sorted((sid, v) for v, sids in t.string_ends.items() for sid in sids)
    for sid, v in by_sid:
        lines.append(f"end {v} {sid}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def load_trie(path: str) -> InputTrie:
    """Read a trie file, validating structure as it goes."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    if not lines or lines[0] != TRIE_HEADER:
        raise FormatError(f"expected header {TRIE_HEADER!r}", line=1)
    alphabet = _parse_alphabet_lines(lines, 1)
    trie = InputTrie(alphabet)
    next_id = 2
    saw_end = False
    for idx in range(3, len(lines)):
        ln = lines[idx]
        if not ln.strip():
            continue
        parts = ln.split()
        if parts[0] == "end":
            saw_end = True
            if len(parts) != 3:
                raise FormatError("end lines are 'end <node-id> <string-id>'", line=idx + 1)
            try:
                v, sid = int(parts[1]), int(parts[2])
            except ValueError:
                raise FormatError("end ids must be integers", line=idx + 1) from None
            if not 1 <= v < next_id:
                raise FormatError(f"end marker references unknown node {v}", line=idx + 1)
            if sid < 1:
                raise FormatError("string ids are positive", line=idx + 1)
            trie.string_ends.setdefault(v, []).append(sid)
            trie.string_count = max(trie.string_count, sid)
            continue
        if saw_end:
            raise FormatError("node lines must precede end lines", line=idx + 1)
        if len(parts) != 3:
            raise FormatError("node lines are '<id> <parent-id> <label>'", line=idx + 1)
        try:
            nid, parent = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError("node ids must be integers", line=idx + 1) from None
        label = parts[2]
        if nid != next_id:
            raise FormatError(f"node ids must be consecutive; expected {next_id}, got {nid}", line=idx + 1)
        if not 1 <= parent < nid:
            raise FormatError(f"parent {parent} of node {nid} must be an earlier node", line=idx + 1)
        if len(label) != 1 or not (alphabet.is_static(label) or alphabet.is_param(label)):
            raise FormatError(f"label {label!r} not in alphabet", line=idx + 1)
        if label in trie.nodes[parent].children:
            raise FormatError(f"duplicate sibling label {label!r} under node {parent}", line=idx + 1)
        trie.add_node(parent, label)
        next_id += 1
    trie.has_ends = saw_end
    for sids in trie.string_ends.values():
        sids.sort()
    return trie


def save_strings(W: list[str], alphabet: Alphabet, path: str) -> None:
    lines = [STRINGS_HEADER]
    lines += _format_alphabet_lines(alphabet)
    lines += list(W)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def load_strings(path: str) -> tuple[list[str], Alphabet]:
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    if not lines or lines[0] != STRINGS_HEADER:
        raise FormatError(f"expected header {STRINGS_HEADER!r}", line=1)
    alphabet = _parse_alphabet_lines(lines, 1)
    W = []
    for idx in range(3, len(lines)):
        w = lines[idx].strip()
        if not w:
            continue
        try:
            alphabet.validate_text(w)
        except InputError as exc:
            raise FormatError(str(exc), line=idx + 1) from None
        W.append(w)
    return W, alphabet
