"""Parameterized strings and their canonical form.

A p-string mixes *static* symbols (drawn from an alphabet ``sigma``) with
*parameter* symbols (drawn from a disjoint alphabet ``pi``).  Two p-strings of
equal length match when a bijection over the symbols, fixing every static
symbol, maps one onto the other position by position; in other words the
parameters may be renamed consistently.  Renaming parameters to the first,
second, ... symbols of ``pi`` in order of first occurrence yields a canonical
form, so match testing reduces to string equality of canonical forms.

``NameAssignment`` records such a renaming for a prefix of a string and can be
extended one symbol at a time.  ``prepend_shift`` describes how canonical
names move when a single symbol is prepended to an already-canonical string.
Both are the workhorses of the index construction modules.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import InputError, InvariantError

__all__ = [
    "Alphabet",
    "PString",
    "NameEntry",
    "NameAssignment",
    "CanonicalResult",
    "ShiftMode",
    "SHIFT_STATIC",
    "SHIFT_FRESH",
    "shift_bound",
    "p_match",
    "canonicalize",
    "canonical_extend",
    "prepend_shift",
    "reverse",
]

# Reserved by the text formats (separators / fresh-link marker).
_FORBIDDEN_SYMBOLS = set(" \t\r\n*")


@dataclass(frozen=True)
class Alphabet:
    """Ordered static symbols ``sigma`` and parameter symbols ``pi``.

    The declared order of ``pi`` defines canonical parameter names: the
    parameter of rank ``s`` (1-based) is written as ``pi[s-1]``.
    """

    sigma: tuple[str, ...]
    pi: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(self.sigma))
        object.__setattr__(self, "pi", tuple(self.pi))
        for c in self.sigma + self.pi:
            if not isinstance(c, str) or len(c) != 1:
                raise InputError(f"alphabet symbols must be single characters, got {c!r}")
            if c in _FORBIDDEN_SYMBOLS:
                raise InputError(f"symbol {c!r} is reserved and cannot be used")
        if len(set(self.sigma)) != len(self.sigma) or len(set(self.pi)) != len(self.pi):
            raise InputError("alphabet symbols must be distinct")
        if set(self.sigma) & set(self.pi):
            raise InputError("static and parameter alphabets must be disjoint")
        object.__setattr__(self, "_param_rank", {c: i + 1 for i, c in enumerate(self.pi)})
        object.__setattr__(self, "_static", frozenset(self.sigma))

    # Membership helpers.  `_param_rank` maps each parameter to its 1-based rank.
    def is_static(self, c: str) -> bool:
        return c in self._static

    def is_param(self, c: str) -> bool:
        return c in self._param_rank

    def rank(self, c: str) -> int:
        """1-based rank of parameter ``c`` in the declared order."""
        try:
            return self._param_rank[c]
        except KeyError:
            raise InputError(f"{c!r} is not a parameter symbol") from None

    def name_for_rank(self, s: int) -> str:
        """Canonical parameter name of rank ``s`` (1-based)."""
        if not 1 <= s <= len(self.pi):
            raise InvariantError(f"parameter rank {s} outside 1..{len(self.pi)}")
        return self.pi[s - 1]

    def validate_text(self, text: str) -> None:
        for c in text:
            if c not in self._static and c not in self._param_rank:
                raise InputError(f"symbol {c!r} not in alphabet")


@dataclass(frozen=True)
class PString:
    """A string over ``alphabet.sigma + alphabet.pi``; validated on creation."""

    text: str
    alphabet: Alphabet

    def __post_init__(self):
        self.alphabet.validate_text(self.text)

    def __len__(self) -> int:
        return len(self.text)

    def __getitem__(self, i):
        return self.text[i]

    def __iter__(self):
        return iter(self.text)


class NameEntry(NamedTuple):
    source: str      # parameter symbol as it appears in the source string
    rank: int        # 1-based canonical rank
    first_pos: int   # 1-based position of the source symbol's first occurrence


@dataclass(frozen=True)
class NameAssignment:
    """First-occurrence renaming of the parameters in a string prefix.

    ``entries`` lists the distinct parameters of the covered prefix in order
    of first occurrence; entry k has rank k+1.  ``coverage`` is the prefix
    length the assignment canonicalizes.
    """

    entries: tuple[NameEntry, ...] = ()
    coverage: int = 0

    def __post_init__(self):
        last_pos = 0
        for k, e in enumerate(self.entries):
            if e.rank != k + 1:
                raise InvariantError(f"entry ranks must be 1..n in order, got {self.entries}")
            if not last_pos < e.first_pos <= self.coverage:
                raise InvariantError(f"first positions must increase within coverage, got {self.entries}")
            last_pos = e.first_pos

    def rank_of(self, c: str) -> int | None:
        """Rank assigned to source parameter ``c``, or None if not yet named."""
        for e in self.entries:
            if e.source == c:
                return e.rank
        return None

    def entry_for(self, c: str) -> NameEntry | None:
        for e in self.entries:
            if e.source == c:
                return e
        return None


class CanonicalResult(NamedTuple):
    string: str
    assignment: NameAssignment


def _canon_text(text: str, alphabet: Alphabet) -> str:
    """Canonical form of ``text`` without building an assignment (hot path)."""
    ranks = alphabet._param_rank
    pi = alphabet.pi
    names: dict[str, str] = {}
    out = []
    for c in text:
        if c in ranks:
            n = names.get(c)
            if n is None:
                n = pi[len(names)]
                names[c] = n
            out.append(n)
        else:
            out.append(c)
    return "".join(out)


def canonicalize(x: PString) -> CanonicalResult:
    """Rename parameters in first-occurrence order to pi[1], pi[2], ...

    Static symbols pass through unchanged.  Two p-strings match exactly when
    their canonical strings are equal, and the canonical form of any prefix is
    the corresponding prefix of the canonical form.
    """
    alphabet = x.alphabet
    ranks = alphabet._param_rank
    pi = alphabet.pi
    entries: list[NameEntry] = []
    seen: dict[str, str] = {}
    out = []
    for pos, c in enumerate(x.text, 1):
        if c in ranks:
            n = seen.get(c)
            if n is None:
                n = pi[len(entries)]
                entries.append(NameEntry(c, len(entries) + 1, pos))
                seen[c] = n
            out.append(n)
        else:
            out.append(c)
    assignment = NameAssignment(tuple(entries), len(x.text))
    return CanonicalResult("".join(out), assignment)


def canonical_extend(a: NameAssignment, c: str, alphabet: Alphabet) -> tuple[str, NameAssignment]:
    """Extend ``a`` by the symbol at position ``coverage + 1``.

    Returns the canonical name of ``c`` at that position together with the
    extended assignment.  Replaying a string symbol by symbol reproduces
    `canonicalize`.
    """
    pos = a.coverage + 1
    if alphabet.is_static(c):
        return c, NameAssignment(a.entries, pos)
    r = a.rank_of(c)
    if r is not None:
        return alphabet.name_for_rank(r), NameAssignment(a.entries, pos)
    r = len(a.entries) + 1
    name = alphabet.name_for_rank(r)
    return name, NameAssignment(a.entries + (NameEntry(c, r, pos),), pos)


@dataclass(frozen=True)
class ShiftMode:
    """Selects the rank permutation applied by `prepend_shift`.

    kind "static":  the prepended symbol is static.
    kind "fresh":   the prepended symbol is a parameter absent from the string.
    kind "bound":   the prepended symbol is a parameter already named in the
                    string, with canonical rank ``bound_rank``.
    """

    kind: str
    bound_rank: int = 0

    def __post_init__(self):
        if self.kind not in ("static", "fresh", "bound"):
            raise InputError(f"unknown shift mode {self.kind!r}")
        if self.kind == "bound" and self.bound_rank < 1:
            raise InputError("bound shift requires a rank >= 1")


SHIFT_STATIC = ShiftMode("static")
SHIFT_FRESH = ShiftMode("fresh")


def shift_bound(rank: int) -> ShiftMode:
    return ShiftMode("bound", rank)


def prepend_shift(e: str, mode: ShiftMode, alphabet: Alphabet) -> str:
    """Map one canonical symbol of v to its name in the canonical form of a.v.

    Static symbols never move.  Prepending a fresh parameter pushes every rank
    up by one.  Prepending a parameter already named with rank t sends rank t
    to rank 1, ranks below t up by one, and leaves ranks above t unchanged.
    """
    if alphabet.is_static(e):
        return e
    s = alphabet.rank(e)
    if mode.kind == "static":
        return e
    if mode.kind == "fresh":
        return alphabet.name_for_rank(s + 1)
    t = mode.bound_rank
    if s == t:
        return alphabet.name_for_rank(1)
    if s < t:
        return alphabet.name_for_rank(s + 1)
    return e


def p_match(x: PString, y: PString) -> bool:
    """True iff x and y match up to a bijective renaming of parameters.

    Built as a single scan maintaining the renaming in both directions, which
    rejects non-injective maps.
    """
    if x.alphabet != y.alphabet:
        raise InputError("p_match requires both strings over the same alphabet")
    return p_match_texts(x.text, y.text, x.alphabet)


def p_match_texts(x: str, y: str, alphabet: Alphabet) -> bool:
    """`p_match` on raw strings assumed valid over ``alphabet``."""
    if len(x) != len(y):
        return False
    ranks = alphabet._param_rank
    fwd: dict[str, str] = {}
    bwd: dict[str, str] = {}
    for a, b in zip(x, y):
        if a in ranks:
            if b not in ranks:
                return False
            if fwd.setdefault(a, b) != b or bwd.setdefault(b, a) != a:
                return False
        elif a != b:
            return False
    return True


def reverse(x: PString) -> PString:
    return PString(x.text[::-1], x.alphabet)
