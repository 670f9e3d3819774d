import json
from decimal import Decimal
from fractions import Fraction

import pytest

from powtwo import beta as B
from powtwo.bounds import UpperBound
from powtwo.report import emit_report, fraction_decimal, to_plain


def test_fraction_decimal():
    assert fraction_decimal(Fraction(8, 3), 2) == "2.67"
    assert fraction_decimal(Fraction(1, 8), 2) == "0.12"     # half-even
    assert fraction_decimal(Fraction(3, 8), 2) == "0.38"
    assert fraction_decimal(Fraction(-1, 3), 4) == "-0.3333"
    assert fraction_decimal(Fraction(5), 0) == "5"


def test_to_plain_types():
    doc = to_plain({"q": Fraction(1, 3), "b": UpperBound.exact(Fraction(1, 3)),
                    "r": B.beta_l(3, 1, 2), "x": [1, "a", None]})
    assert doc["q"]["fraction"] == "1/3" and doc["q"]["exact"] is True
    assert doc["b"]["rounded_up"] == "0.33333334"
    assert doc["r"]["beta_2dp"] == "2.67" and doc["r"]["N_l"] == "6"
    json.dumps(doc)


def test_json_is_deterministic():
    data = {"b": 1, "a": [Fraction(2, 7)]}
    assert emit_report(data) == emit_report(dict(reversed(list(data.items()))))


def test_csv_and_text():
    rows = [{"l": 2, "c0": Fraction(803, 1000)}, {"l": 3, "c0": Fraction(391, 500)}]
    assert emit_report({"rows": rows}, "csv") == "l,c0\n2,0.80300000\n3,0.78200000\n"
    text = emit_report({"rows": rows}, "text")
    assert "- c0: 803/1000" in text
    with pytest.raises(ValueError):
        emit_report({"x": 1}, "csv")
    with pytest.raises(ValueError):
        emit_report({}, "xml")


def test_unserializable():
    with pytest.raises(TypeError):
        to_plain(object())
