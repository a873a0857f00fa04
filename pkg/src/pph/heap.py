"""Parameterized position heap of the merged trie.

The heap is a sequence hash tree: the canonical forms of the merged-trie node
strings are inserted in breadth-first (length-nondecreasing) order, and every
insertion adds exactly one node, namely the shortest prefix of the inserted
form that is not yet present.  Node i is created while processing merged node
i, a one-to-one correspondence the matcher relies on.

Two builders are provided.  `build_naive` replays that definition and serves
as the construction oracle.  `build_fast` finds each insertion point without
re-reading whole strings: it climbs from the parent's heap node to the lowest
ancestor that carries a reversed suffix link for the prepended symbol; the
link target is the new node's parent, and the new edge label follows from the
stored renaming by a rank shift.  A reversed suffix link under key ``a``
answers "which node represents the canonical form of ``a`` prepended to this
node's string"; all parameters absent from a node's string provably share one
target, so they are stored under a single fresh-slot key.

`compute_mrp` fills in maximal reach pointers (for each node, the deepest
node representing a prefix of its source string's canonical form) using the
same climb followed by a descent along further canonical symbols.
`finalize` assigns preorder intervals so the matcher can test ancestry in
constant time.

Climbs and merged-trie symbol reads walk parent pointers one step at a time;
construction is near-linear on realistic inputs but not worst-case linear.
"""

from __future__ import annotations

from .errors import InvariantError
from .pcst import Pcst, char_iter, node_text
from .pstrings import (
    SHIFT_FRESH,
    SHIFT_STATIC,
    NameAssignment,
    NameEntry,
    ShiftMode,
    canonical_extend,
    prepend_shift,
    shift_bound,
    _canon_text,
)

__all__ = [
    "FRESH_KEY",
    "HeapNode",
    "Heap",
    "build_naive",
    "build_fast",
    "reconstruct_rsl",
    "compute_mrp",
    "mrp_oracle",
    "finalize",
    "node_string",
]


class _FreshKey:
    """Link-table key shared by every parameter absent from a node's string."""

    __slots__ = ()

    def __repr__(self):
        return "FRESH"


FRESH_KEY = _FreshKey()


class HeapNode:
    __slots__ = (
        "id", "parent", "label", "depth", "children",
        "rsl_out", "rsl_in", "pending", "sub", "msub", "mrp", "pcst", "pre_in", "pre_out",
    )

    def __init__(self, id: int, parent: int | None, label: str | None, depth: int):
        self.id = id
        self.parent = parent
        self.label = label
        self.depth = depth
        self.children: dict[str, int] = {}
        self.rsl_out: dict = {}            # symbol or FRESH_KEY -> node id
        self.rsl_in: tuple | None = None   # (source id, key); at most one
        self.pending: dict | None = None   # links awaiting a not-yet-created source
        self.sub: NameAssignment | None = None
        self.msub: NameAssignment | None = None
        self.mrp: int = id
        self.pcst: int = id
        self.pre_in = 0
        self.pre_out = 0


class Heap:
    """Position heap; node ids equal the merged-trie ids they were built for."""

    __slots__ = ("alphabet", "nodes", "preorder", "counters")

    def __init__(self, alphabet):
        self.alphabet = alphabet
        self.nodes: list[HeapNode | None] = [None, HeapNode(1, None, None, 0)]
        self.preorder: list[int] = []
        self.counters: dict[str, int] = {}

    def __len__(self) -> int:
        return len(self.nodes) - 1

    @property
    def root(self) -> HeapNode:
        return self.nodes[1]

    def node(self, v: int) -> HeapNode:
        if not 1 <= v < len(self.nodes):
            raise InvariantError(f"no heap node with id {v}")
        return self.nodes[v]


def node_string(h: Heap, v: int) -> str:
    """Root-to-node edge labels of heap node ``v`` (a canonical string)."""
    out = []
    n = h.node(v)
    while n.parent is not None:
        out.append(n.label)
        n = h.nodes[n.parent]
    return "".join(reversed(out))


# ---------------------------------------------------------------------------
# Definitional construction (the oracle)


def build_naive(p: Pcst) -> Heap:
    """Replay the sequence-hash-tree definition insertion by insertion."""
    h = Heap(p.alphabet)
    alphabet = p.alphabet
    nodes = h.nodes
    for i in range(2, len(p) + 1):
        s = _canon_text(node_text(p, i), alphabet)
        v = nodes[1]
        matched = 0
        for ch in s:
            nxt = v.children.get(ch)
            if nxt is None:
                break
            v = nodes[nxt]
            matched += 1
        if matched == len(s):
            raise InvariantError(
                f"canonical form {s!r} of merged node {i} already fully represented"
            )
        n = HeapNode(i, v.id, s[matched], v.depth + 1)
        v.children[s[matched]] = i
        nodes.append(n)
        p.nodes[i].heap_node = i
    return h


def reconstruct_rsl(h: Heap) -> None:
    """Attach every reversed suffix link by its definition.

    For a node z with string s, the only possible link source is the node
    representing the canonical form of s minus its first symbol; the key
    there is s[0] itself (static), its canonical name in the remainder, or
    the fresh slot.  Used by the naive pipeline and as the link oracle.
    """
    alphabet = h.alphabet
    ranks = alphabet._param_rank
    pi = alphabet.pi
    nodes = h.nodes
    for z in nodes[2:]:
        s = node_string(h, z.id)
        names: dict[str, int] = {}
        ct = []
        for c in s[1:]:
            if c in ranks:
                r = names.setdefault(c, len(names) + 1)
                ct.append(pi[r - 1])
            else:
                ct.append(c)
        v = nodes[1]
        ok = True
        for c in ct:
            nxt = v.children.get(c)
            if nxt is None:
                ok = False
                break
            v = nodes[nxt]
        if not ok:
            continue
        a0 = s[0]
        if a0 not in ranks:
            key = a0
        elif a0 in names:
            key = pi[names[a0] - 1]
        else:
            key = FRESH_KEY
        if key in v.rsl_out:
            raise InvariantError(
                f"two nodes claim the link ({v.id}, {key!r}); uniqueness broken"
            )
        v.rsl_out[key] = z.id
        z.rsl_in = (v.id, key)


# ---------------------------------------------------------------------------
# Link-driven construction


def _climb(nodes, v, static_key, kappa, alpha, counters):
    """From ``v`` upward (self included), find the lowest node whose link
    table has the effective key: ``static_key`` if given, else ``kappa`` once
    the node is deep enough to contain the bound parameter's first
    occurrence, else the fresh slot.

    Returns (target id, node below the stop, stop node); (None, None, None)
    when no ancestor carries the key.
    """
    prev = None
    steps = 0
    while v is not None:
        if static_key is not None:
            k = static_key
        elif kappa is not None and alpha <= v.depth:
            k = kappa
        else:
            k = FRESH_KEY
        tgt = v.rsl_out.get(k)
        if tgt is not None:
            counters["climb_steps"] = counters.get("climb_steps", 0) + steps
            return tgt, prev, v
        prev = v
        v = nodes[v.parent] if v.parent is not None else None
        steps += 1
    counters["climb_steps"] = counters.get("climb_steps", 0) + steps
    return None, None, None


def _shift_rank(rank: int, shift: ShiftMode) -> int:
    if shift.kind == "static":
        return rank
    if shift.kind == "fresh":
        return rank + 1
    t = shift.bound_rank
    if rank == t:
        return 1
    return rank + 1 if rank < t else rank


def _pcst_symbol(p: Pcst, c: int, beta: int, counters) -> str:
    n = p.nodes[c]
    for _ in range(beta - 1):
        n = p.nodes[n.parent]
    counters["char_steps"] = counters.get("char_steps", 0) + beta
    return n.label


def _insert_fast(h: Heap, p: Pcst, i: int) -> None:
    """Insert node i given nodes 1..i-1, their renamings, and their links."""
    alphabet = h.alphabet
    pi = alphabet.pi
    nodes = h.nodes
    c = p.nodes[i]
    j = c.parent
    hj = nodes[j]
    a0 = c.label
    a0_param = alphabet.is_param(a0)

    # Mode of the prepended symbol relative to the parent's stored renaming.
    kappa = alpha = bound_rank = None
    static_key = None
    if not a0_param:
        static_key = a0
    else:
        ent = hj.sub.entry_for(a0)
        if ent is not None:
            bound_rank, alpha = ent.rank, ent.first_pos
            kappa = pi[bound_rank - 1]

    tgt, prev, _stop = _climb(nodes, hj, static_key, kappa, alpha, h.counters)

    corner = False
    e = s_raw = None
    if tgt is None:
        # Nothing links even at the root: the canonical form's first symbol
        # is new, so the node becomes a child of the root.
        u = nodes[1]
        b = a0 if not a0_param else pi[0]
        base = hj.sub
        shift = SHIFT_STATIC  # no surviving entries to shift
        limit = 0
    else:
        u = nodes[tgt]
        limit = u.depth               # new node's depth minus one
        corner = prev is None         # the key sat on the parent's heap node itself
        if not corner:
            # prev is the ancestor of the parent's heap node at depth `limit`;
            # its label is the next canonical symbol of the parent's string.
            e = prev.label
            base = hj.sub
        else:
            if hj.depth + 1 >= c.depth:
                raise InvariantError(
                    f"merged node {i}: canonical form already fully represented"
                )
            s_raw = _pcst_symbol(p, j, hj.depth + 1, h.counters)
            e, base = canonical_extend(hj.sub, s_raw, alphabet)
            h.counters["corner_extends"] = h.counters.get("corner_extends", 0) + 1
        if static_key is not None:
            shift = SHIFT_STATIC
        elif kappa is not None:
            shift = shift_bound(bound_rank) if alpha <= limit else SHIFT_FRESH
        elif corner and s_raw == a0:
            # The prepended parameter first occurs in the parent string at the
            # extension position itself; prepending it therefore behaves like
            # a bound symbol whose rank is the freshly assigned one.
            shift = shift_bound(base.entries[-1].rank)
        else:
            shift = SHIFT_FRESH
        b = prepend_shift(e, shift, alphabet)

    if b in u.children:
        raise InvariantError(
            f"merged node {i}: insertion point {u.id} already has child {b!r}; "
            "links disagree with the definitional build"
        )

    n = HeapNode(i, u.id, b, u.depth + 1)
    u.children[b] = i
    nodes.append(n)
    p.nodes[i].heap_node = i

    # The new node may be the source some earlier corner insertion waited
    # for; attaching now keeps the stored links definitional at all times.
    if u.pending:
        for pkey, zid in u.pending.pop(b, ()):
            if pkey in n.rsl_out:
                raise InvariantError(
                    f"pending link key {pkey!r} duplicated at node {i}"
                )
            n.rsl_out[pkey] = zid
            nodes[zid].rsl_in = (i, pkey)

    # Renaming of the new node's covered prefix: the prepended symbol takes
    # rank 1 and position 1; surviving parent entries shift rank and move one
    # position right.
    entries = []
    if a0_param:
        entries.append(NameEntry(a0, 1, 1))
    for ent in base.entries:
        if ent.first_pos > limit:
            break
        if ent.source == a0:
            continue
        entries.append(NameEntry(ent.source, _shift_rank(ent.rank, shift), ent.first_pos + 1))
    n.sub = NameAssignment(tuple(entries), n.depth)

    # Attach the new node's one incoming reversed suffix link.  The source is
    # the node representing the new string minus its first symbol: the
    # ancestor of the parent's heap node one level above the insertion point,
    # or, in the corner case, that node's one-longer extension, which may not
    # exist yet (then no link is attached).
    depth_below = n.depth - 1
    vstar = key = None
    if tgt is None:
        vstar = nodes[1]
        key = static_key if static_key is not None else FRESH_KEY
    elif not corner:
        vstar = prev
        if static_key is not None:
            key = static_key
        elif kappa is not None and alpha <= depth_below:
            key = kappa
        else:
            key = FRESH_KEY
    else:
        if static_key is not None:
            key = static_key
        elif kappa is not None:          # alpha <= parent depth < depth_below
            key = kappa
        elif s_raw == a0:
            key = e                      # a0 occurs there, named by the extension
        else:
            key = FRESH_KEY
        cid = hj.children.get(e)
        if cid is not None:
            vstar = nodes[cid]
        else:
            # Source node absent so far; park the link on the parent node so
            # the child labeled e attaches it on creation.
            if hj.pending is None:
                hj.pending = {}
            hj.pending.setdefault(e, []).append((key, i))
            key = None
    if vstar is not None:
        if key in vstar.rsl_out:
            raise InvariantError(
                f"link slot ({vstar.id}, {key!r}) already occupied when attaching node {i}"
            )
        vstar.rsl_out[key] = i
        n.rsl_in = (vstar.id, key)


def build_fast(p: Pcst) -> Heap:
    """Link-driven construction; must agree with `build_naive` node for node."""
    h = Heap(p.alphabet)
    h.root.sub = NameAssignment()
    for i in range(2, len(p) + 1):
        _insert_fast(h, p, i)
    return h


# ---------------------------------------------------------------------------
# Maximal reach pointers


def mrp_oracle(h: Heap, p: Pcst, i: int) -> int:
    """Deepest node on the root path of merged node i's canonical form."""
    s = _canon_text(node_text(p, i), h.alphabet)
    nodes = h.nodes
    v = nodes[1]
    for ch in s:
        nxt = v.children.get(ch)
        if nxt is None:
            break
        v = nodes[nxt]
    return v.id


def compute_mrp(h: Heap, p: Pcst) -> None:
    """Fill in every maximal reach pointer over the completed heap.

    For node i with merged-trie parent j, climb from mrp(j) exactly as during
    insertion but against the renaming stored for mrp(j); the link target is
    a node on i's canonical root path.  From there descend: keep reading the
    next raw symbol of i's source string off the merged trie, name it under
    the growing renaming, and follow the matching child while one exists.
    """
    alphabet = h.alphabet
    ranks = alphabet._param_rank
    pi = alphabet.pi
    nodes = h.nodes
    root = nodes[1]
    root.mrp = 1
    root.msub = NameAssignment()
    for i in range(2, len(p) + 1):
        c = p.nodes[i]
        j = c.parent
        mj = nodes[nodes[j].mrp]
        msub_j = nodes[j].msub
        a0 = c.label

        kappa = alpha = bound_rank = None
        static_key = None
        if a0 not in ranks:
            static_key = a0
        else:
            ent = msub_j.entry_for(a0)
            if ent is not None:
                bound_rank, alpha = ent.rank, ent.first_pos
                kappa = pi[bound_rank - 1]

        tgt, _prev, _stop = _climb(nodes, mj, static_key, kappa, alpha, h.counters)
        t = nodes[tgt] if tgt is not None else root

        entries: list[NameEntry] = []
        if t is not root:
            limit = t.depth - 1
            if static_key is not None:
                shift = SHIFT_STATIC
            elif kappa is not None and alpha <= limit:
                shift = shift_bound(bound_rank)
            else:
                shift = SHIFT_FRESH
            if a0 in ranks:
                entries.append(NameEntry(a0, 1, 1))
            for ent in msub_j.entries:
                if ent.first_pos > limit:
                    break
                if ent.source == a0:
                    continue
                entries.append(NameEntry(ent.source, _shift_rank(ent.rank, shift), ent.first_pos + 1))
        cov = t.depth

        # Descend along further canonical symbols of i's source string.
        cur = t
        sources = {ent.source: ent.rank for ent in entries}
        for s_raw in char_iter(p, i, cov + 1):
            if s_raw not in ranks:
                name = s_raw
                fresh = False
            else:
                r = sources.get(s_raw)
                fresh = r is None
                name = pi[len(sources)] if fresh else pi[r - 1]
            nxt = cur.children.get(name)
            if nxt is None:
                break
            cur = nodes[nxt]
            cov += 1
            h.counters["descend_steps"] = h.counters.get("descend_steps", 0) + 1
            if s_raw in ranks and fresh:
                r = len(sources) + 1
                sources[s_raw] = r
                entries.append(NameEntry(s_raw, r, cov))

        me = nodes[i]
        me.mrp = cur.id
        me.msub = NameAssignment(tuple(entries), cov)


# ---------------------------------------------------------------------------
# Finalization


def finalize(h: Heap) -> None:
    """Assign preorder intervals (children in label order) and drop the
    construction-only renamings kept for maximal reach computation."""
    alphabet = h.alphabet
    order = {c: (0, k) for k, c in enumerate(alphabet.pi)}
    order.update({c: (1, k) for k, c in enumerate(alphabet.sigma)})
    nodes = h.nodes
    counter = 0
    preorder: list[int] = []
    stack: list[tuple[int, bool]] = [(1, False)]
    while stack:
        v, done = stack.pop()
        node = nodes[v]
        if done:
            node.pre_out = counter
            continue
        counter += 1
        node.pre_in = counter
        preorder.append(v)
        stack.append((v, True))
        for c in sorted(node.children, key=order.__getitem__, reverse=True):
            stack.append((node.children[c], False))
    h.preorder = preorder
    for n in nodes[1:]:
        n.msub = None
        n.pending = None
