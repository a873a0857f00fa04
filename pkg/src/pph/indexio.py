"""Index serialization, DOT export, and structural statistics.

The index file is versioned UTF-8 text with LF line endings: sections
``[alphabet] [trie] [pcst] [heap] [rsl] [mrp]``, one space-separated record
per line, decimal ids, and a trailing ``sha256: <hex>`` line over every
preceding byte.  Saving is deterministic, loading re-validates both the
checksum and the full structural invariant suite, and save-load-save is
byte-identical.
"""

from __future__ import annotations

import hashlib

from .cstrie import InputTrie
from .errors import FormatError, InputError, InvariantError
from .heap import FRESH_KEY, Heap, HeapNode
from .index import PPHIndex
from .pcst import Pcst, PcstNode
from .pstrings import Alphabet

__all__ = ["save_index", "load_index", "export_dot", "stats"]

INDEX_HEADER = "PPH-INDEX v1"


def _key_str(key) -> str:
    return "*" if key is FRESH_KEY else key


def _render(index: PPHIndex) -> str:
    a = index.alphabet
    trie, pcst, heap = index.trie, index.pcst, index.heap
    lines = [INDEX_HEADER]
    lines.append("[alphabet]")
    lines.append("sigma " + "".join(a.sigma))
    lines.append("pi " + "".join(a.pi))

    lines.append("[trie]")
    lines.append(f"nodes {len(trie)}")
    lines.append(f"strings {trie.string_count}")
    lines.append(f"ends {1 if trie.has_ends else 0}")
    for n in trie.nodes[2:]:
        lines.append(f"node {n.id} {n.parent} {n.label}")
    for sid, v in sorted((sid, v) for v, sids in trie.string_ends.items() for sid in sids):
        lines.append(f"end {v} {sid}")

    lines.append("[pcst]")
    lines.append(f"nodes {len(pcst)}")
    for n in pcst.nodes[2:]:
        lines.append(f"node {n.id} {n.parent} {n.label}")
    for n in pcst.nodes[1:]:
        lines.append("origins " + " ".join(str(x) for x in [n.id] + n.origins))

    lines.append("[heap]")
    lines.append(f"root {heap.root.pre_in} {heap.root.pre_out}")
    for n in heap.nodes[2:]:
        lines.append(f"node {n.id} {n.parent} {n.label} {n.pre_in} {n.pre_out}")

    lines.append("[rsl]")
    links = sorted(
        (v.id, _key_str(k), z) for v in heap.nodes[1:] for k, z in v.rsl_out.items()
    )
    for src, key, dst in links:
        lines.append(f"link {src} {key} {dst}")

    lines.append("[mrp]")
    for n in heap.nodes[1:]:
        lines.append(f"mrp {n.id} {n.mrp}")

    body = "\n".join(lines) + "\n"
    digest = hashlib.sha256(body.encode("utf-8")).hexdigest()
    return body + f"sha256: {digest}\n"


def save_index(index: PPHIndex, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(_render(index))


class _Cursor:
    def __init__(self, lines: list[str]):
        self.lines = lines
        self.at = 0

    def peek(self) -> str | None:
        return self.lines[self.at] if self.at < len(self.lines) else None

    def take(self) -> str:
        ln = self.peek()
        if ln is None:
            raise FormatError("unexpected end of file", line=self.at + 1)
        self.at += 1
        return ln

    def expect(self, text: str) -> None:
        ln = self.take()
        if ln != text:
            raise FormatError(f"expected {text!r}, got {ln!r}", line=self.at)

    def fields(self, head: str, count: int) -> list[str]:
        ln = self.take()
        parts = ln.split(" ")
        if parts[0] != head or len(parts) != count + 1:
            raise FormatError(f"expected a {head!r} record with {count} fields, got {ln!r}",
                              line=self.at)
        return parts[1:]

    def error(self, msg: str) -> FormatError:
        return FormatError(msg, line=self.at)


def _int(cur: _Cursor, s: str) -> int:
    try:
        return int(s)
    except ValueError:
        raise cur.error(f"expected an integer, got {s!r}") from None


def load_index(path: str) -> PPHIndex:
    """Parse, checksum-verify, rebuild, and invariant-check an index file."""
    with open(path, "rb") as fh:
        raw = fh.read()
    text = raw.decode("utf-8")
    # Split off the final checksum line.
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or not lines[-1].startswith("sha256: "):
        raise FormatError("missing trailing checksum line", line=len(lines))
    declared = lines[-1][len("sha256: "):]
    body = "\n".join(lines[:-1]) + "\n"
    if hashlib.sha256(body.encode("utf-8")).hexdigest() != declared:
        raise FormatError("checksum mismatch; file corrupted", line=len(lines))

    cur = _Cursor(lines[:-1])
    if cur.take() != INDEX_HEADER:
        raise FormatError(f"expected header {INDEX_HEADER!r}", line=1)
    cur.expect("[alphabet]")
    sig = cur.take()
    if not sig.startswith("sigma"):
        raise cur.error("expected a sigma record")
    pil = cur.take()
    if not pil.startswith("pi"):
        raise cur.error("expected a pi record")
    try:
        alphabet = Alphabet(tuple(sig[6:]), tuple(pil[3:]))
    except InputError as exc:
        raise cur.error(str(exc)) from None

    # --- trie ---
    cur.expect("[trie]")
    n_nodes = _int(cur, cur.fields("nodes", 1)[0])
    n_strings = _int(cur, cur.fields("strings", 1)[0])
    has_ends = _int(cur, cur.fields("ends", 1)[0]) == 1
    trie = InputTrie(alphabet)
    for i in range(2, n_nodes + 1):
        f = cur.fields("node", 3)
        nid, parent, label = _int(cur, f[0]), _int(cur, f[1]), f[2]
        if nid != i:
            raise cur.error(f"trie node ids must be consecutive, got {nid}")
        if not 1 <= parent < nid:
            raise cur.error(f"trie node {nid}: bad parent {parent}")
        try:
            trie.add_node(parent, label)
        except InputError as exc:
            raise cur.error(str(exc)) from None
    while (ln := cur.peek()) is not None and ln.startswith("end "):
        f = cur.fields("end", 2)
        v, sid = _int(cur, f[0]), _int(cur, f[1])
        if not 1 <= v <= n_nodes or sid < 1:
            raise cur.error(f"bad end marker {v} {sid}")
        trie.string_ends.setdefault(v, []).append(sid)
    trie.string_count = n_strings
    trie.has_ends = has_ends

    # --- merged trie ---
    cur.expect("[pcst]")
    n_p = _int(cur, cur.fields("nodes", 1)[0])
    pcst = Pcst(alphabet)
    pcst.nodes.append(PcstNode(1, None, None, 0))
    for i in range(2, n_p + 1):
        f = cur.fields("node", 3)
        nid, parent, label = _int(cur, f[0]), _int(cur, f[1]), f[2]
        if nid != i or not 1 <= parent < nid:
            raise cur.error(f"bad merged-trie node record {f}")
        par = pcst.nodes[parent]
        if label in par.children:
            raise cur.error(f"duplicate sibling label {label!r} under merged node {parent}")
        node = PcstNode(nid, parent, label, par.depth + 1)
        par.children[label] = nid
        pcst.nodes.append(node)
    for i in range(1, n_p + 1):
        ln = cur.take()
        parts = ln.split(" ")
        if parts[0] != "origins" or len(parts) < 3 or _int(cur, parts[1]) != i:
            raise cur.error(f"expected origins record for merged node {i}")
        pcst.nodes[i].origins = [_int(cur, x) for x in parts[2:]]
        pcst.nodes[i].heap_node = i

    # --- heap ---
    cur.expect("[heap]")
    f = cur.fields("root", 2)
    heap = Heap(alphabet)
    heap.root.pre_in, heap.root.pre_out = _int(cur, f[0]), _int(cur, f[1])
    for i in range(2, n_p + 1):
        f = cur.fields("node", 5)
        nid, parent, label = _int(cur, f[0]), _int(cur, f[1]), f[2]
        if nid != i or not 1 <= parent < nid:
            raise cur.error(f"bad heap node record {f}")
        par = heap.nodes[parent]
        if label in par.children:
            raise cur.error(f"duplicate heap sibling label {label!r} under node {parent}")
        node = HeapNode(nid, parent, label, par.depth + 1)
        node.pre_in, node.pre_out = _int(cur, f[3]), _int(cur, f[4])
        par.children[label] = nid
        heap.nodes.append(node)

    cur.expect("[rsl]")
    while (ln := cur.peek()) is not None and ln.startswith("link "):
        f = cur.fields("link", 3)
        src, key, dst = _int(cur, f[0]), f[1], _int(cur, f[2])
        if not (1 <= src <= n_p and 2 <= dst <= n_p):
            raise cur.error(f"link endpoints out of range: {ln!r}")
        k = FRESH_KEY if key == "*" else key
        if k is not FRESH_KEY and not (alphabet.is_static(k) or alphabet.is_param(k)):
            raise cur.error(f"link key {key!r} outside alphabet")
        if k in heap.nodes[src].rsl_out:
            raise cur.error(f"duplicate link key at node {src}")
        heap.nodes[src].rsl_out[k] = dst
        if heap.nodes[dst].rsl_in is not None:
            raise cur.error(f"node {dst} has two incoming links")
        heap.nodes[dst].rsl_in = (src, k)

    cur.expect("[mrp]")
    for i in range(1, n_p + 1):
        f = cur.fields("mrp", 2)
        nid, tgt = _int(cur, f[0]), _int(cur, f[1])
        if nid != i or not 1 <= tgt <= n_p:
            raise cur.error(f"bad reach record {f}")
        heap.nodes[i].mrp = tgt
    if cur.peek() is not None:
        raise FormatError(f"trailing content {cur.peek()!r}", line=cur.at + 1)

    heap.preorder = sorted(range(1, n_p + 1), key=lambda v: heap.nodes[v].pre_in)
    index = PPHIndex(alphabet, trie, pcst, heap)
    from .invariants import validate_index
    try:
        validate_index(index)
    except InvariantError as exc:
        raise FormatError(f"invariant violation in loaded index: {exc}") from None
    return index


# ---------------------------------------------------------------------------
# DOT export


def export_dot(index: PPHIndex, what: str, path: str) -> None:
    """Write a deterministic Graphviz rendering of one structure.

    Heap exports draw tree edges solid and labeled, reversed suffix links
    dashed with their key ('*' for the fresh slot), and non-self reach
    pointers as bold double-headed edges; node captions are the ids.
    """
    if what == "trie":
        lines = _dot_trie(index)
    elif what == "pcst":
        lines = _dot_pcst(index)
    elif what == "heap":
        lines = _dot_heap(index)
    else:
        raise InputError(f"unknown export target {what!r}; use trie, pcst, or heap")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _dot_trie(index: PPHIndex) -> list[str]:
    t = index.trie
    lines = ["digraph trie {", "  rankdir=BT;"]
    for n in t.nodes[1:]:
        caption = str(n.id)
        sids = t.string_ends.get(n.id)
        if sids:
            caption += "\\n" + " ".join(f"s{s}" for s in sids)
        lines.append(f'  n{n.id} [label="{caption}"];')
    for n in t.nodes[2:]:
        lines.append(f'  n{n.id} -> n{n.parent} [label="{n.label}"];')
    lines.append("}")
    return lines


def _dot_pcst(index: PPHIndex) -> list[str]:
    p = index.pcst
    lines = ["digraph pcst {", "  rankdir=BT;"]
    for n in p.nodes[1:]:
        tup = "(" + ", ".join(str(u) for u in n.origins) + ")"
        lines.append(f'  n{n.id} [label="{n.id}\\n{tup}"];')
    for n in p.nodes[2:]:
        lines.append(f'  n{n.id} -> n{n.parent} [label="{n.label}"];')
    lines.append("}")
    return lines


def _dot_heap(index: PPHIndex) -> list[str]:
    h = index.heap
    lines = ["digraph heap {", "  rankdir=TB;"]
    for n in h.nodes[1:]:
        lines.append(f'  n{n.id} [label="{n.id}"];')
    for n in h.nodes[2:]:
        lines.append(f'  n{n.parent} -> n{n.id} [label="{n.label}"];')
    links = sorted((v.id, _key_str(k), z) for v in h.nodes[1:] for k, z in v.rsl_out.items())
    for src, key, dst in links:
        lines.append(f'  n{src} -> n{dst} [style=dashed, label="{key}"];')
    for n in h.nodes[1:]:
        if n.mrp != n.id:
            lines.append(f'  n{n.id} -> n{n.mrp} [style=bold, dir=both];')
    lines.append("}")
    return lines


# ---------------------------------------------------------------------------
# Statistics


def stats(index: PPHIndex) -> dict:
    """Structural metrics: sizes, compression, shape, and build counters."""
    h = index.heap
    n_p = len(h)
    depths = [n.depth for n in h.nodes[1:]]
    return {
        "sigma": len(index.alphabet.sigma),
        "pi": len(index.alphabet.pi),
        "trie_nodes": len(index.trie),
        "strings": index.trie.string_count,
        "pcst_nodes": n_p,
        "compression_ratio": n_p / len(index.trie),
        "heap_height": max(depths),
        "heap_mean_depth": sum(depths) / n_p,
        "rsl_links": sum(len(n.rsl_out) for n in h.nodes[1:]),
        "build_counters": dict(h.counters),
    }
