"""Structural invariant suite run after builds and on every index load."""

from __future__ import annotations

from .errors import InvariantError
from .index import PPHIndex
from .heap import FRESH_KEY
from .pstrings import p_match_texts, _canon_text

__all__ = ["validate_index"]


def _fail(msg: str) -> None:
    raise InvariantError(msg)


def validate_index(index: PPHIndex) -> None:
    """Re-derive and check every structural invariant; raises on violation."""
    alphabet = index.alphabet
    trie, pcst, heap = index.trie, index.pcst, index.heap
    ranks = alphabet._param_rank
    pi = alphabet.pi

    # --- input trie ------------------------------------------------------
    N = len(trie)
    for v in range(2, N + 1):
        n = trie.nodes[v]
        if n.parent is None or not 1 <= n.parent < v:
            _fail(f"trie node {v}: parent must be an earlier node")
        p = trie.nodes[n.parent]
        if n.depth != p.depth + 1:
            _fail(f"trie node {v}: depth {n.depth} != parent depth + 1")
        if p.children.get(n.label) != v:
            _fail(f"trie node {v}: parent child map disagrees")
        if not (alphabet.is_static(n.label) or alphabet.is_param(n.label)):
            _fail(f"trie node {v}: label {n.label!r} outside alphabet")
    for v, sids in trie.string_ends.items():
        if not 1 <= v <= N:
            _fail(f"string end marker on unknown node {v}")
        if any(s < 1 for s in sids):
            _fail("string ids must be positive")

    # --- merged trie ------------------------------------------------------
    Np = len(pcst)
    if Np > N:
        _fail(f"merged trie has {Np} nodes but input trie only {N}")
    texts = [None] * (Np + 1)
    texts[1] = ""
    seen_origins: set[int] = set()
    if pcst.nodes[1].origins != [1]:
        _fail("merged root must originate from the trie root alone")
    for i in range(2, Np + 1):
        n = pcst.nodes[i]
        if n.parent is None or not 1 <= n.parent < i:
            _fail(f"merged node {i}: parent must be an earlier node")
        p = pcst.nodes[n.parent]
        if n.depth != p.depth + 1:
            _fail(f"merged node {i}: bad depth")
        if n.depth < pcst.nodes[i - 1].depth:
            _fail(f"merged node {i}: ids must be in nondecreasing depth")
        if p.children.get(n.label) != i:
            _fail(f"merged node {i}: parent child map disagrees")
        texts[i] = n.label + texts[n.parent]
        w = texts[i]
        rev = w[::-1]
        if _canon_text(rev, alphabet) != rev:
            _fail(f"merged node {i}: string {w!r} is not root-side canonical")
        if not n.origins:
            _fail(f"merged node {i}: empty origin list")
        for u in n.origins:
            if not 2 <= u <= N:
                _fail(f"merged node {i}: origin {u} out of range")
            if u in seen_origins:
                _fail(f"trie node {u} appears in two origin lists")
            seen_origins.add(u)
            if trie.nodes[u].depth != n.depth:
                _fail(f"merged node {i}: origin {u} has different depth")
            chars = []
            t = trie.nodes[u]
            while t.parent is not None:
                chars.append(t.label)
                t = trie.nodes[t.parent]
            if not p_match_texts("".join(chars), w, alphabet):
                _fail(f"merged node {i}: origin {u} does not match {w!r}")
        if n.heap_node != i:
            _fail(f"merged node {i}: heap back-reference {n.heap_node}")
    if len(seen_origins) != N - 1:
        _fail("origin lists do not partition the non-root trie nodes")
    for i in range(1, Np + 1):
        n = pcst.nodes[i]
        r = sum(1 for c in set(texts[i]) if c in ranks)
        for b in n.children:
            if b in ranks and ranks[b] > r + 1:
                _fail(f"merged node {i}: child label {b!r} skips ranks")

    # --- heap -------------------------------------------------------------
    if len(heap) != Np:
        _fail(f"heap has {len(heap)} nodes, expected {Np}")
    strings = [None] * (Np + 1)
    strings[1] = ""
    incoming: dict[int, tuple[int, object]] = {}
    for i in range(2, Np + 1):
        n = heap.nodes[i]
        if n.parent is None or not 1 <= n.parent < i:
            _fail(f"heap node {i}: parent must be an earlier node")
        p = heap.nodes[n.parent]
        if n.depth != p.depth + 1:
            _fail(f"heap node {i}: bad depth")
        if p.children.get(n.label) != i:
            _fail(f"heap node {i}: parent child map disagrees")
        if n.pcst != i:
            _fail(f"heap node {i}: merged-trie reference {n.pcst}")
        strings[i] = strings[n.parent] + n.label
        s = strings[i]
        if _canon_text(s, alphabet) != s:
            _fail(f"heap node {i}: string {s!r} not canonical")
        if n.depth > pcst.nodes[i].depth:
            _fail(f"heap node {i}: deeper than its source string is long")
    for i in range(1, Np + 1):
        n = heap.nodes[i]
        r = sum(1 for c in set(strings[i]) if c in ranks)
        for b in n.children:
            if b in ranks and ranks[b] > r + 1:
                _fail(f"heap node {i}: child label {b!r} skips ranks")
        for key, z in n.rsl_out.items():
            if z in incoming:
                _fail(f"heap node {z}: more than one incoming link")
            incoming[z] = (i, key)
            if key is FRESH_KEY:
                used = {c for c in strings[i] if c in ranks}
                witness = next((c for c in pi if c not in used), None)
                if witness is None:
                    _fail(f"link ({i}, FRESH): no parameter left to witness it")
            else:
                if key in ranks and key not in strings[i]:
                    _fail(f"link ({i}, {key!r}): parameter key absent from source string")
                witness = key
            if _canon_text(witness + strings[i], alphabet) != strings[z]:
                _fail(f"link ({i}, {key!r}) -> {z}: canonical extension mismatch")
    for i in range(2, Np + 1):
        n = heap.nodes[i]
        if n.rsl_in is not None and incoming.get(i) != n.rsl_in:
            _fail(f"heap node {i}: incoming link record disagrees with tables")
        if n.rsl_in is None and i in incoming:
            _fail(f"heap node {i}: missing incoming link record")

    # --- reach pointers and preorder ---------------------------------------
    order = {c: (0, k) for k, c in enumerate(alphabet.pi)}
    order.update({c: (1, k) for k, c in enumerate(alphabet.sigma)})
    counter = 0
    pre_in = [0] * (Np + 1)
    pre_out = [0] * (Np + 1)
    preorder = []
    stack = [(1, False)]
    while stack:
        v, done = stack.pop()
        if done:
            pre_out[v] = counter
            continue
        counter += 1
        pre_in[v] = counter
        preorder.append(v)
        stack.append((v, True))
        ch = heap.nodes[v].children
        for c in sorted(ch, key=order.__getitem__, reverse=True):
            stack.append((ch[c], False))
    for i in range(1, Np + 1):
        n = heap.nodes[i]
        if (n.pre_in, n.pre_out) != (pre_in[i], pre_out[i]):
            _fail(f"heap node {i}: preorder interval "
                  f"({n.pre_in}, {n.pre_out}) != ({pre_in[i]}, {pre_out[i]})")
        t = heap.nodes[n.mrp]
        if not (n.pre_in <= t.pre_in <= n.pre_out):
            _fail(f"heap node {i}: reach pointer {n.mrp} is not a descendant-or-self")
        if not strings[n.mrp].startswith(strings[i]):
            _fail(f"heap node {i}: reach node string does not extend its own")
    if heap.preorder != preorder:
        _fail("stored preorder sequence disagrees with traversal")
