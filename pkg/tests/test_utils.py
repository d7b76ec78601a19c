from fractions import Fraction

import pytest

from application.errors import ScalarParseError
from application.scalar_series import I, ExactScalar, HbarSeries
from utilities import config as settings
from utilities.utils import (check_references, check_value, format_scalar, format_series, parse_scalar,
                             parse_series)


@pytest.mark.parametrize("text, expected", [
    ("1/3", ExactScalar(Fraction(1, 3))),
    ("-2", ExactScalar(-2)),
    ("3/5+1/2 i", ExactScalar(Fraction(3, 5), Fraction(1, 2))),
    ("3/5-1/2i", ExactScalar(Fraction(3, 5), Fraction(-1, 2))),
    ("-i", -I),
    ("2i", ExactScalar(0, 2)),
    (" 7 ", ExactScalar(7)),
])
def test_parse_scalar(text, expected):
    assert parse_scalar(text) == expected


@pytest.mark.parametrize("text", ["", "1.5", "1/0", "x", "1/2+", "i i", "3/5+1/2+1"])
def test_parse_scalar_rejects(text):
    with pytest.raises(ScalarParseError):
        parse_scalar(text)


def test_parse_scalar_rejects_floats():
    with pytest.raises(ScalarParseError):
        parse_scalar(0.5)


def test_formatted_scalars_parse_back():
    for value in (ExactScalar(Fraction(-3, 7), Fraction(5, 2)), -I, ExactScalar(4), ExactScalar(0, Fraction(-1, 3))):
        assert parse_scalar(format_scalar(value)) == value


def test_series_strings():
    s = parse_series(["1", "0", "-1/6"], 3)
    assert s == HbarSeries([1, 0, Fraction(-1, 6), 0], 3)
    assert format_series(s) == ["1", "0", "-1/6"]


def test_check_references():
    assert check_value(check_references, "yang_baxter").startswith("R12")
    assert check_value(check_references, "no_such_check") == "x"


def test_thread_count_reads_the_environment(monkeypatch):
    monkeypatch.setenv(settings.THREADS_VARIABLE, "3")
    assert settings.thread_count() == 3
    monkeypatch.setenv(settings.THREADS_VARIABLE, "zero")
    assert settings.thread_count() == 1
    monkeypatch.setenv(settings.THREADS_VARIABLE, "-4")
    assert settings.thread_count() == 1


def test_config_defaults():
    assert settings.config.get('contraction', 'epsilon') == "1/10"
    assert settings.config.getint('verify', 'sl2_order') == 4
