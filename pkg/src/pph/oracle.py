"""Brute-force references and the randomized cross-checker.

`oracle_match` and `oracle_pcst` are deliberately structure-free: they answer
straight from the p-string definitions over the input trie and never read the
heap or the merged trie.  `cross_check` generates random instances, builds
everything twice (definitional and link-driven), and compares structures,
reach pointers, link tables, partitions, and every short pattern's answer
against the oracle, shrinking the first failing instance it finds.
"""

from __future__ import annotations

import itertools
import random
import warnings
from dataclasses import dataclass, field

from .cstrie import InputTrie, build_from_strings, node_string
from .errors import PphError
from .heap import build_fast, build_naive, compute_mrp, finalize, mrp_oracle, reconstruct_rsl
from .index import PPHIndex
from .matcher import query
from .pcst import build_pcst
from .pstrings import Alphabet, PString, p_match_texts, _canon_text

__all__ = ["oracle_match", "oracle_pcst", "cross_check", "CheckReport", "check_instance"]

_SIGMA_POOL = "abcdefgh"
_PI_POOL = "stuvwxyz"


def oracle_match(t: InputTrie, p: PString) -> set[int]:
    """Scan every node deep enough and test its prefix against the pattern."""
    m = len(p)
    if m < 1:
        raise PphError("oracle patterns must be nonempty")
    alphabet = t.alphabet
    hits = set()
    for v in range(2, len(t) + 1):
        node = t.nodes[v]
        if node.depth < m:
            continue
        chars = []
        n = node
        for _ in range(m):
            chars.append(n.label)
            n = t.nodes[n.parent]
        if p_match_texts("".join(chars), p.text, alphabet):
            hits.add(v)
    return hits


def oracle_pcst(t: InputTrie) -> set[frozenset[int]]:
    """Partition the non-root nodes by the canonical form of their reversed
    node-to-root strings; must equal the merged trie's origin lists."""
    alphabet = t.alphabet
    groups: dict[str, set[int]] = {}
    for v in range(2, len(t) + 1):
        key = _canon_text(node_string(t, v).text[::-1], alphabet)
        groups.setdefault(key, set()).add(v)
    return {frozenset(g) for g in groups.values()}


def _prefix_table(t: InputTrie, max_len: int) -> dict[str, set[int]]:
    """Batched form of `oracle_match`: canonical prefix -> matching nodes.

    Because the canonical form of a prefix is the prefix of the canonical
    form, a pattern p of length m matches node v exactly when v is deep
    enough and the length-m canonical prefix of v's string equals p's
    canonical form.
    """
    alphabet = t.alphabet
    table: dict[str, set[int]] = {}
    for v in range(2, len(t) + 1):
        c = _canon_text(node_string(t, v).text, alphabet)
        for m in range(1, min(len(c), max_len) + 1):
            table.setdefault(c[:m], set()).add(v)
    return table


def check_instance(W: list[str], alphabet: Alphabet, pattern_len_max: int = 4,
                   counters: dict | None = None) -> str | None:
    """Run every comparison on one instance; return a failure description or None."""
    if counters is None:
        counters = {}
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            trie = build_from_strings(W, alphabet)
        pcst = build_pcst(trie)

        partition = {frozenset(n.origins) for n in pcst.nodes[2:]}
        if partition != oracle_pcst(trie):
            return "merged-trie partition differs from the grouping oracle"

        fast = build_fast(pcst)
        naive = build_naive(pcst)
        for i in range(2, len(pcst) + 1):
            f, n = fast.nodes[i], naive.nodes[i]
            if (f.parent, f.label) != (n.parent, n.label):
                return (f"node {i}: fast build placed ({f.parent}, {f.label!r}), "
                        f"definitional build ({n.parent}, {n.label!r})")

        reconstruct_rsl(naive)
        fast_links = {(v.id, k): z for v in fast.nodes[1:] for k, z in v.rsl_out.items()}
        naive_links = {(v.id, k): z for v in naive.nodes[1:] for k, z in v.rsl_out.items()}
        if fast_links != naive_links:
            return "reversed suffix links differ from the definitional reconstruction"

        compute_mrp(fast, pcst)
        for i in range(1, len(pcst) + 1):
            want = mrp_oracle(fast, pcst, i)
            if fast.nodes[i].mrp != want:
                return f"node {i}: reach pointer {fast.nodes[i].mrp}, oracle {want}"

        finalize(fast)
        index = PPHIndex(alphabet, trie, pcst, fast)

        from .invariants import validate_index
        validate_index(index)

        table = _prefix_table(trie, pattern_len_max)
        symbols = list(alphabet.sigma + alphabet.pi)
        stats: dict = {}
        npat = 0
        for m in range(1, pattern_len_max + 1):
            for tup in itertools.product(symbols, repeat=m):
                text = "".join(tup)
                npat += 1
                got = query(index, text, stats=stats).trie_hits
                want = table.get(_canon_text(text, alphabet), set())
                want = {v for v in want if trie.nodes[v].depth >= m}
                if got != want:
                    return f"pattern {text!r}: query {sorted(got)}, oracle {sorted(want)}"
        counters["patterns"] = counters.get("patterns", 0) + npat
        counters["chain_rejected"] = counters.get("chain_rejected", 0) + stats.get("chain_rejected", 0)
    except PphError as exc:
        return f"exception: {exc}"
    return None


@dataclass
class CheckReport:
    passed: bool
    seed: int
    instances: int = 0
    patterns: int = 0
    chain_rejections: int = 0
    failure: str | None = None
    failing_strings: list[str] = field(default_factory=list)
    failing_alphabet: tuple[str, str] | None = None

    def summary(self) -> str:
        if self.passed:
            return (f"PASS seed={self.seed} instances={self.instances} "
                    f"patterns={self.patterns} chain_rejections={self.chain_rejections}")
        sigma, pi = self.failing_alphabet or ("", "")
        return (f"FAIL seed={self.seed} after {self.instances} instances: {self.failure}\n"
                f"  sigma={sigma!r} pi={pi!r} strings={self.failing_strings}")


def _shrink(W: list[str], alphabet: Alphabet, plen: int) -> tuple[list[str], str]:
    """Greedy minimization: drop whole strings, then chop final symbols."""
    cur = list(W)
    detail = check_instance(cur, alphabet, plen) or ""
    changed = True
    while changed:
        changed = False
        for k in range(len(cur)):
            cand = cur[:k] + cur[k + 1:]
            if cand:
                d = check_instance(cand, alphabet, plen)
                if d is not None:
                    cur, detail, changed = cand, d, True
                    break
        if changed:
            continue
        for k in range(len(cur)):
            if len(cur[k]) > 1:
                cand = cur[:k] + [cur[k][:-1]] + cur[k + 1:]
                d = check_instance(cand, alphabet, plen)
                if d is not None:
                    cur, detail, changed = cand, d, True
                    break
    return cur, detail


def cross_check(seed: int = 1, samples: int = 100, sigma_max: int = 2, pi_max: int = 3,
                len_max: int = 8, max_strings: int = 8, pattern_len_max: int = 4) -> CheckReport:
    """Randomized equivalence suite; deterministic for a fixed seed."""
    if sigma_max > len(_SIGMA_POOL) or pi_max > len(_PI_POOL):
        raise PphError(f"alphabet caps are {len(_SIGMA_POOL)} static / {len(_PI_POOL)} parameter symbols")
    if sigma_max + pi_max == 0:
        raise PphError("at least one alphabet must be allowed symbols")
    rng = random.Random(seed)
    counters: dict = {}
    report = CheckReport(passed=True, seed=seed)
    for _ in range(samples):
        ns = rng.randint(0, sigma_max)
        np_ = rng.randint(0, pi_max)
        if ns + np_ == 0:
            if pi_max > 0:
                np_ = 1
            else:
                ns = 1
        alphabet = Alphabet(tuple(_SIGMA_POOL[:ns]), tuple(_PI_POOL[:np_]))
        symbols = alphabet.sigma + alphabet.pi
        W = ["".join(rng.choice(symbols) for _ in range(rng.randint(1, len_max)))
             for _ in range(rng.randint(1, max_strings))]
        report.instances += 1
        detail = check_instance(W, alphabet, pattern_len_max, counters)
        if detail is not None:
            small, detail = _shrink(W, alphabet, pattern_len_max)
            report.passed = False
            report.failure = detail
            report.failing_strings = small
            report.failing_alphabet = ("".join(alphabet.sigma), "".join(alphabet.pi))
            break
    report.patterns = counters.get("patterns", 0)
    report.chain_rejections = counters.get("chain_rejected", 0)
    return report
