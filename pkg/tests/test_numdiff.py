import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from springkit import numdiff
from springkit.numdiff import Reason, Tolerance, compare, numbers_equal, tokenize

PAPER_TOL = Tolerance(1e-6, 1e-8)


def kinds(text):
    return [(t.raw, t.value) for t in tokenize(text)]


class TestTokenize:
    def test_line(self):
        assert kinds("final z: -1.5e3") == [("final", None), ("z:", None), ("-1.5e3", -1500.0)]

    def test_tiny_number(self):
        assert kinds("4.863e-19") == [("4.863e-19", 4.863e-19)]

    @pytest.mark.parametrize("raw", ["abc1.0", "1.0abc", "1e", "e5", "--1", "1.2.3", "nan", "inf",
                                     "+", ".", "1e+", "0x10", "1,5"])
    def test_words(self, raw):
        assert kinds(raw) == [(raw, None)]

    @pytest.mark.parametrize("raw,value", [("42", 42.0), ("+3", 3.0), ("-.5", -0.5), (".5E+2", 50.0),
                                           ("7.", 7.0), ("1E-2", 0.01), ("-0", 0.0)])
    def test_numbers(self, raw, value):
        assert kinds(raw) == [(raw, value)]

    def test_positions(self):
        toks = tokenize("a  1\n\n  b\t2.5\n")
        assert [(t.raw, t.line, t.column) for t in toks] == [
            ("a", 1, 1), ("1", 1, 4), ("b", 3, 3), ("2.5", 3, 5)]

    def test_unicode_whitespace(self):
        assert [t.raw for t in tokenize("1 2 3")] == ["1", "2", "3"]


class TestNumbersEqual:
    @pytest.mark.parametrize("a,b,tol,expected", [
        (1e-20, 0.0, PAPER_TOL, True),
        (4.863e-19, 2.489e-19, PAPER_TOL, True),
        (1.2345, 1.2346, PAPER_TOL, False),
        (1e8 + 1, 1e8, Tolerance(0, 1e-8), True),
        (1e8 + 2, 1e8, Tolerance(0, 1e-8), False),
        (0.5, 0.75, Tolerance(0.25, 0), True),
        (0.0, 1e-300, Tolerance(0, 1), False),
        (math.nan, math.nan, Tolerance(1, 1), False),
        (math.nan, 1.0, Tolerance(1, 1), False),
        (math.inf, math.inf, Tolerance(0, 0), True),
        (-math.inf, -math.inf, Tolerance(0, 0), True),
        (math.inf, -math.inf, Tolerance(1, 1), False),
        (math.inf, 1e308, Tolerance(1e308, 1), False),
    ])
    def test_cases(self, a, b, tol, expected):
        assert numbers_equal(a, b, tol) is expected

    @pytest.mark.parametrize("a,r", [(-1, 0), (0, -1e-8), (math.nan, 0), (0, math.inf)])
    def test_invalid_tolerance(self, a, r):
        with pytest.raises(ValueError):
            Tolerance(a, r)


class TestCompare:
    def test_identical(self):
        text = "final position body 1: 1.0 2.0 3.0\n"
        assert compare(text, text, Tolerance()).equal

    def test_paper_zero(self):
        assert compare("0.000000000e+00", "4.863e-19", Tolerance(1e-6, 0)).equal
        assert not compare("0.000000000e+00", "4.863e-19", Tolerance()).equal

    def test_extra_token(self):
        report = compare("ok 1.0", "ok 1.0 extra", Tolerance())
        assert [m.reason for m in report.mismatches] == [Reason.TOKEN_COUNT]
        assert report.mismatches[0].reference is None
        assert report.mismatches[0].candidate.raw == "extra"

    def test_mismatch_kinds_in_order(self):
        report = compare("a 1.0 b\nc 2.0", "a 1.5 B\nc 2.0 d", Tolerance(0.1, 0))
        assert [m.reason for m in report.mismatches] == [Reason.VALUE, Reason.WORD, Reason.TOKEN_COUNT]
        assert [m.line for m in report.mismatches] == [1, 1, 2]

    def test_number_vs_word_needs_same_text(self):
        assert [m.reason for m in compare("1.0", "one", Tolerance(1, 1)).mismatches] == [Reason.WORD]

    def test_report_text(self):
        report = compare("x 1.0\ny 2.0\n", "x 1.0\ny 2.5\n", Tolerance())
        assert report.format() == "line 2: expected '2.0' got '2.5'\n1 differences\n"
        assert not report


number_text = st.floats(allow_nan=False, allow_infinity=False, width=64).map(lambda x: f"{x:.9e}")
word = st.sampled_from(["final", "position", "body", "1:", "x", "velocity", "abc1.0"])
token = st.one_of(number_text, word)
separator = st.sampled_from([" ", "  ", "\t", "\n", " \n "])
tolerance = st.builds(Tolerance, st.floats(0, 10), st.floats(0, 10))


@st.composite
def texts(draw, tokens=None):
    tokens = tokens if tokens is not None else draw(st.lists(token, max_size=12))
    out = ""
    for tok in tokens:
        out += tok + draw(separator)
    return out


def perturbed(draw, tokens):
    """Same word tokens, numbers nudged a little."""
    out = []
    for tok in tokens:
        value = tokenize(tok)[0].value
        if value is not None and draw(st.booleans()):
            tok = f"{value * (1 + draw(st.floats(-1e-6, 1e-6))) + draw(st.floats(-1e-6, 1e-6)):.9e}"
        out.append(tok)
    return out


@st.composite
def text_pairs(draw):
    tokens = draw(st.lists(token, max_size=12))
    if draw(st.booleans()):
        other = perturbed(draw, tokens)
    else:
        other = draw(st.lists(token, max_size=12))
    return draw(texts(tokens)), draw(texts(other))


class TestProperties:
    @given(texts(), tolerance)
    def test_reflexive(self, text, tol):
        assert compare(text, text, tol).equal

    @given(text_pairs(), tolerance)
    def test_symmetric(self, pair, tol):
        a, b = pair
        assert compare(a, b, tol).equal == compare(b, a, tol).equal

    @given(text_pairs(), tolerance, st.floats(0, 10), st.floats(0, 10))
    def test_monotone(self, pair, tol, extra_a, extra_r):
        a, b = pair
        looser = Tolerance(tol.absolute + extra_a, tol.relative + extra_r)
        assume(compare(a, b, tol).equal)
        assert compare(a, b, looser).equal

    @given(text_pairs())
    def test_zero_tolerance_is_exact(self, pair):
        a, b = pair
        ta, tb = tokenize(a), tokenize(b)
        exact = len(ta) == len(tb) and all(
            (x.value == y.value) if (x.is_number and y.is_number) else x.raw == y.raw
            for x, y in zip(ta, tb))
        assert compare(a, b, Tolerance(0, 0)).equal == exact

    @given(st.data(), st.lists(token, max_size=12), st.lists(token, max_size=12), tolerance)
    def test_whitespace_insensitive(self, data, ref, out, tol):
        a1, a2 = data.draw(texts(ref)), data.draw(texts(ref))
        b1, b2 = data.draw(texts(out)), data.draw(texts(out))
        assert compare(a1, b1, tol).equal == compare(a2, b2, tol).equal


class TestCli:
    def write(self, tmp_path, ref, out):
        r, o = tmp_path / "ref.txt", tmp_path / "out.txt"
        r.write_text(ref)
        o.write_text(out)
        return str(r), str(o)

    def test_equal_exit_zero(self, tmp_path, capsys):
        r, o = self.write(tmp_path, "z 0.000000000e+00\n", "z 4.863e-19\n")
        assert numdiff.main(["-a", "1e-6", "-r", "1e-8", r, o]) == 0
        assert capsys.readouterr().out == ""

    def test_default_is_exact(self, tmp_path, capsys):
        r, o = self.write(tmp_path, "z 0.000000000e+00\n", "z 4.863e-19\n")
        assert numdiff.main([r, o]) == 1
        assert capsys.readouterr().out == "line 1: expected '0.000000000e+00' got '4.863e-19'\n1 differences\n"

    def test_missing_file_exit_two(self, tmp_path, capsys):
        assert numdiff.main([str(tmp_path / "nope"), str(tmp_path / "nope2")]) == 2
        assert "numdiff:" in capsys.readouterr().err

    def test_bad_tolerance_exit_two(self, tmp_path):
        r, o = self.write(tmp_path, "1", "1")
        with pytest.raises(SystemExit) as info:
            numdiff.main(["-a", "-1", r, o])
        assert info.value.code == 2
