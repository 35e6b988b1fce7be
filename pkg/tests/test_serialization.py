"""Scheme documents, exact-number strings and fingerprints."""

from fractions import Fraction

import pytest

from conftest import make_scheme
from fatpoints.errors import InvalidInputError
from fatpoints.fields import PrimeField, QQ, field_from_descriptor
from fatpoints.serialization import (
    dumps_canonical,
    scheme_fingerprint,
    scheme_from_obj,
    scheme_to_obj,
)


def test_rational_scalar_strings():
    assert QQ.to_string(Fraction(-3, 2)) == "-3/2"
    assert QQ.to_string(Fraction(4, 2)) == "2"
    assert QQ.from_string("  -3/2 ") == Fraction(-3, 2)
    assert QQ.from_string("7") == 7
    with pytest.raises(InvalidInputError):
        QQ.from_string("1.5")
    with pytest.raises(InvalidInputError):
        QQ.from_string("x")


def test_prime_scalar_strings():
    f = PrimeField(7)
    assert f.from_string("9") == 2
    assert f.to_string(13) == "6"
    with pytest.raises(InvalidInputError):
        f.from_string("1/2")


def test_prime_field_requires_prime_modulus():
    with pytest.raises(InvalidInputError):
        PrimeField(10)
    with pytest.raises(InvalidInputError):
        PrimeField(1)


def test_field_descriptor_round_trip():
    assert field_from_descriptor({"kind": "rational"}) == QQ
    assert field_from_descriptor({"kind": "prime", "p": 13}) == PrimeField(13)
    with pytest.raises(InvalidInputError):
        field_from_descriptor({"kind": "real"})
    with pytest.raises(InvalidInputError):
        field_from_descriptor({"kind": "prime"})
    with pytest.raises(InvalidInputError):
        field_from_descriptor("rational")


def test_scheme_document_shape():
    z = make_scheme(2, [((2, 3, 5), 2), ((1, 0, 0), 1)])
    obj = scheme_to_obj(z)
    assert obj["n"] == 2
    assert obj["field"] == {"kind": "rational"}
    # normalized: leading coordinate 1, fractions as canonical strings
    assert obj["points"][0] == {"coords": ["1", "3/2", "5/2"], "m": 2}
    assert scheme_from_obj(obj) == z


def test_scheme_document_validation():
    base = scheme_to_obj(make_scheme(1, [((1, 2), 1)]))
    bad = dict(base)
    bad["points"] = [{"coords": ["1"], "m": 1}]
    with pytest.raises(InvalidInputError):
        scheme_from_obj(bad)
    bad = dict(base)
    bad["points"] = [{"coords": ["1", "0.5"], "m": 1}]
    with pytest.raises(InvalidInputError):
        scheme_from_obj(bad)
    bad = dict(base)
    bad["points"] = [{"coords": ["1", "2"], "m": "two"}]
    with pytest.raises(InvalidInputError):
        scheme_from_obj(bad)
    with pytest.raises(InvalidInputError):
        scheme_from_obj([1, 2, 3])
    with pytest.raises(InvalidInputError):
        scheme_from_obj({"n": 1, "points": []})


def test_fingerprint_stability_and_sensitivity():
    z = make_scheme(2, [((1, 2, 3), 2), ((1, 0, 0), 1)])
    fp = scheme_fingerprint(z)
    assert fp == scheme_fingerprint(z)
    assert len(fp) == 16
    other = make_scheme(2, [((1, 2, 3), 2), ((1, 0, 0), 2)])
    assert scheme_fingerprint(other) != fp


def test_canonical_dumps_sorted_and_compact():
    assert dumps_canonical({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}'
