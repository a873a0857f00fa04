import itertools
import random

import pytest

from pph import (
    Alphabet,
    InputError,
    InvariantError,
    NameAssignment,
    NameEntry,
    PString,
    SHIFT_FRESH,
    SHIFT_STATIC,
    canonical_extend,
    canonicalize,
    p_match,
    prepend_shift,
    reverse,
    shift_bound,
)

AB2 = Alphabet("ab", "xyz")
A1 = Alphabet("a", "xyz")


def ps(text, a=AB2):
    return PString(text, a)


class TestAlphabet:
    def test_rank_and_names(self):
        assert AB2.rank("x") == 1 and AB2.rank("z") == 3
        assert AB2.name_for_rank(2) == "y"
        assert AB2.is_static("a") and not AB2.is_static("x")

    def test_overlap_rejected(self):
        with pytest.raises(InputError):
            Alphabet("ax", "xy")

    def test_duplicates_rejected(self):
        with pytest.raises(InputError):
            Alphabet("aa", "x")

    def test_reserved_symbols_rejected(self):
        with pytest.raises(InputError):
            Alphabet("a*", "x")
        with pytest.raises(InputError):
            Alphabet("a", "x y")

    def test_rank_of_static_rejected(self):
        with pytest.raises(InputError):
            AB2.rank("a")

    def test_bad_rank(self):
        with pytest.raises(InvariantError):
            AB2.name_for_rank(4)


class TestPString:
    def test_validates_symbols(self):
        with pytest.raises(InputError):
            ps("axq")

    def test_len_and_index(self):
        s = ps("axb")
        assert len(s) == 3 and s[1] == "x"


class TestPMatch:
    def test_renaming_bijection(self):
        assert p_match(ps("axbzzayx"), ps("azbyyaxz"))

    def test_empty(self):
        assert p_match(ps(""), ps(""))

    def test_noninjective_rejected(self):
        # position 1 forces x->y while position 3 forces x->x
        assert not p_match(ps("xax"), ps("yax"))

    def test_length_mismatch(self):
        assert not p_match(ps("x"), ps("xx"))

    def test_static_must_be_identical(self):
        assert not p_match(ps("a"), ps("b"))

    def test_param_static_never_match(self):
        assert not p_match(ps("x"), ps("a"))

    def test_alphabet_mismatch_rejected(self):
        with pytest.raises(InputError):
            p_match(ps("x"), PString("x", Alphabet("b", "xy")))

    def test_symmetry_random(self):
        rng = random.Random(3)
        syms = "abxyz"
        for _ in range(300):
            n = rng.randint(0, 6)
            x = ps("".join(rng.choice(syms) for _ in range(n)))
            y = ps("".join(rng.choice(syms) for _ in range(n)))
            assert p_match(x, y) == p_match(y, x)

    def test_reversal_compatibility(self):
        rng = random.Random(4)
        syms = "abxyz"
        for _ in range(300):
            n = rng.randint(0, 6)
            x = ps("".join(rng.choice(syms) for _ in range(n)))
            y = ps("".join(rng.choice(syms) for _ in range(n)))
            assert p_match(x, y) == p_match(reverse(x), reverse(y))


class TestCanonicalize:
    def test_first_occurrence_renaming(self):
        assert canonicalize(ps("axbzzayx")).string == "axbyyazx"

    def test_statics_only(self):
        got = canonicalize(ps("abba"))
        assert got.string == "abba" and got.assignment.entries == ()

    def test_parameter_heavy(self):
        assert canonicalize(PString("zazyx", A1)).string == "xaxyz"

    def test_assignment_records_positions(self):
        a = canonicalize(PString("zazyx", A1)).assignment
        assert a.coverage == 5
        assert a.entries == (NameEntry("z", 1, 1), NameEntry("y", 2, 4), NameEntry("x", 3, 5))

    def test_idempotent(self):
        rng = random.Random(5)
        syms = "abxyz"
        for _ in range(300):
            x = ps("".join(rng.choice(syms) for _ in range(rng.randint(0, 8))))
            c = canonicalize(x).string
            assert canonicalize(ps(c)).string == c

    def test_prefix_consistency(self):
        rng = random.Random(6)
        syms = "abxyz"
        for _ in range(300):
            x = "".join(rng.choice(syms) for _ in range(rng.randint(0, 8)))
            c = canonicalize(ps(x)).string
            for l in range(len(x) + 1):
                assert canonicalize(ps(x[:l])).string == c[:l]

    def test_equivalence_with_p_match_exhaustive(self):
        # sigma = pi = 2, all strings up to length 5, every same-length pair
        a = Alphabet("ab", "xy")
        for n in range(0, 6):
            strings = ["".join(t) for t in itertools.product("abxy", repeat=n)]
            canon = {s: canonicalize(PString(s, a)).string for s in strings}
            for s in strings:
                xs = PString(s, a)
                for t in strings:
                    assert p_match(xs, PString(t, a)) == (canon[s] == canon[t])


class TestCanonicalExtend:
    def test_first_parameter_gets_smallest_name(self):
        name, a = canonical_extend(NameAssignment(), "z", AB2)
        assert name == "x"
        assert a.entries == (NameEntry("z", 1, 1),) and a.coverage == 1

    def test_static_extends_coverage_only(self):
        _, a = canonical_extend(NameAssignment(), "z", AB2)
        name, b = canonical_extend(a, "a", AB2)
        assert name == "a" and b.entries == a.entries and b.coverage == 2

    def test_streaming_matches_batch(self):
        rng = random.Random(7)
        cases = ["zazyx"] + ["".join(rng.choice("axyz") for _ in range(rng.randint(0, 8)))
                             for _ in range(200)]
        for text in cases:
            a = NameAssignment()
            out = []
            for c in text:
                name, a = canonical_extend(a, c, A1)
                out.append(name)
            batch = canonicalize(PString(text, A1))
            assert "".join(out) == batch.string
            assert a == batch.assignment


class TestPrependShift:
    def test_static_symbol_never_moves(self):
        for mode in (SHIFT_STATIC, SHIFT_FRESH, shift_bound(2)):
            assert prepend_shift("a", mode, AB2) == "a"

    def test_fresh_bumps_rank(self):
        assert prepend_shift("x", SHIFT_FRESH, AB2) == "y"
        assert prepend_shift("y", SHIFT_FRESH, AB2) == "z"

    def test_bound_permutation(self):
        assert prepend_shift("z", shift_bound(2), AB2) == "z"
        assert prepend_shift("x", shift_bound(2), AB2) == "y"
        assert prepend_shift("y", shift_bound(2), AB2) == "x"

    def test_static_mode_keeps_parameters(self):
        assert prepend_shift("y", SHIFT_STATIC, AB2) == "y"

    def test_fresh_rank_overflow_is_internal_error(self):
        with pytest.raises(InvariantError):
            prepend_shift("z", SHIFT_FRESH, AB2)

    def test_consistency_with_canonicalize(self):
        # For every string v (canonicalized) over sigma={a}, pi={x,y,z} up to
        # length 4 and every prepended symbol, the position-wise shift must
        # reproduce the canonical form of the extended string.
        syms = "axyz"
        seen = set()
        for n in range(0, 5):
            for tup in itertools.product(syms, repeat=n):
                v = canonicalize(PString("".join(tup), A1)).string
                if v in seen:
                    continue
                seen.add(v)
                params_in_v = {c for c in v if A1.is_param(c)}
                for a in syms:
                    if A1.is_static(a):
                        mode = SHIFT_STATIC
                    elif a in params_in_v:
                        mode = shift_bound(A1.rank(a))
                    else:
                        if len(params_in_v) == len(A1.pi):
                            continue  # no fresh parameter left to prepend
                        mode = SHIFT_FRESH
                    shifted = "".join(prepend_shift(c, mode, A1) for c in v)
                    assert shifted == canonicalize(PString(a + v, A1)).string[1:]


class TestReverse:
    def test_examples(self):
        assert reverse(ps("")).text == ""
        assert reverse(ps("xaz")).text == "zax"

    def test_involution(self):
        rng = random.Random(8)
        for _ in range(100):
            x = ps("".join(rng.choice("abxyz") for _ in range(rng.randint(0, 8))))
            assert reverse(reverse(x)) == x


class TestNameAssignment:
    def test_bad_rank_order_rejected(self):
        with pytest.raises(InvariantError):
            NameAssignment((NameEntry("x", 2, 1),), 1)

    def test_positions_must_increase(self):
        with pytest.raises(InvariantError):
            NameAssignment((NameEntry("x", 1, 2), NameEntry("y", 2, 2)), 3)

    def test_positions_within_coverage(self):
        with pytest.raises(InvariantError):
            NameAssignment((NameEntry("x", 1, 3),), 2)
