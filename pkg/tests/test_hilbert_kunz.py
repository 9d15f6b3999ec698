import os
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hkcalc.cache import RECORD_FILE, CacheConflictError, HKCache, HKRecord, load_file, store_file
from hkcalc.colength import SizeLimitError
from hkcalc.hilbert_kunz import PhiSample, hk_value, hk_values, phi_sample
from hkcalc.poly import Poly2, parse_poly

from oracles import brute_colength

NODAL = parse_poly("x^3+y^3+x*y*z", "xyz")


def test_hk_value_examples():
    assert hk_value(NODAL, 1, 1) == 7
    assert hk_value(NODAL, 2, 1) == 8
    for n in range(4):
        assert hk_value(NODAL, 0, n) == 0


def test_hk_values_match_oracle():
    got = hk_values(NODAL, 2, range(5))
    assert got == [brute_colength(NODAL.terms, 3, 4, i) for i in range(5)]


def test_hk_values_threaded_same_as_serial():
    assert hk_values(NODAL, 3, range(9), threads=4) == hk_values(NODAL, 3, range(9), threads=1)


def test_phi_linear_ramp():
    x = parse_poly("x", "x")
    for n in range(5):
        q = 2**n
        assert phi_sample(x, n).values == tuple(Fraction(min(i, q), q) for i in range(q + 1))


def test_phi_uv_closed_form():
    uv = parse_poly("u*v", "uv")
    for n in range(4):
        q = 2**n
        assert phi_sample(uv, n).values == tuple(Fraction(q * q - (q - i) ** 2, q * q) for i in range(q + 1))


def test_phi_level_zero():
    assert phi_sample(NODAL, 0).values == (0, 1)


def test_phi_requires_no_constant():
    with pytest.raises(ValueError):
        phi_sample(parse_poly("1+x", "x"), 2)


def test_phi_sample_validation():
    with pytest.raises(ValueError):
        PhiSample(1, (0, Fraction(3, 4), Fraction(1, 2)))


def test_size_guard_propagates():
    with pytest.raises(SizeLimitError):
        hk_value(NODAL, 1, 3, size_limit=64)
    with pytest.raises(SizeLimitError):
        phi_sample(NODAL, 3, size_limit=64)


terms2 = st.sets(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=4).filter(
    lambda ts: (0, 0) not in ts)


@settings(max_examples=25, deadline=None)
@given(terms2, st.integers(0, 3))
def test_nestedness(terms, n):
    f = Poly2(frozenset(terms), ("x", "y"))
    fine, coarse = phi_sample(f, n + 1), phi_sample(f, n)
    assert fine.values[::2] == coarse.values


@settings(max_examples=25, deadline=None)
@given(terms2, st.integers(0, 4))
def test_phi_monotone_and_ends_at_one(terms, n):
    vals = phi_sample(Poly2(frozenset(terms), ("x", "y")), n).values
    assert list(vals) == sorted(vals)
    assert vals[0] == 0 and vals[-1] == 1


# -- cache ---------------------------------------------------------------------

def test_record_line_roundtrip():
    rec = HKRecord(NODAL.key(), 1, 1, 7)
    assert rec.to_line() == "x^3+x*y*z+y^3@x:y:z,1,1,7"
    assert HKRecord.from_line(rec.to_line()) == rec


def test_store_load_roundtrip(tmp_path):
    path = tmp_path / "records.csv"
    rec = HKRecord(NODAL.key(), 1, 1, 7)
    store_file(path, [rec])
    records, errors = load_file(path)
    assert records == [rec] and errors == []


def test_duplicate_equal_is_idempotent(tmp_path):
    path = tmp_path / "records.csv"
    rec = HKRecord("x@x", 1, 2, 3)
    store_file(path, [rec])
    assert store_file(path, [rec, rec]) == 1
    assert path.read_text() == "x@x,1,2,3\n"


def test_conflict_is_fatal(tmp_path):
    path = tmp_path / RECORD_FILE
    store_file(path, [HKRecord("x@x", 1, 2, 3)])
    with pytest.raises(CacheConflictError):
        store_file(path, [HKRecord("x@x", 1, 2, 4)])
    assert path.read_text() == "x@x,1,2,3\n"
    cache = HKCache(tmp_path)
    with pytest.raises(CacheConflictError):
        cache.put("x@x", 1, 2, 4)


def test_corrupt_lines_reported_and_skipped(tmp_path):
    path = tmp_path / "hk_records.csv"
    path.write_text("x@x,1,2,3\ngarbage\nx@x,1,two,3\n\ny@y,0,0,0\n")
    cache = HKCache(tmp_path)
    assert len(cache) == 2
    assert len(cache.errors) == 2


def test_no_temporary_files_left(tmp_path):
    store_file(tmp_path / "r.csv", [HKRecord("x@x", 1, 1, 1)])
    assert sorted(os.listdir(tmp_path)) == ["r.csv"]


def test_cache_populated_and_persisted(tmp_path):
    cache = HKCache(tmp_path)
    phi_sample(NODAL, 2, cache=cache)
    assert len(cache) == 5
    cache.flush()
    again = HKCache(tmp_path)
    assert again.get(NODAL.key(), 1, 2) == hk_value(NODAL, 1, 2)
    assert hk_value(NODAL, 3, 2, cache=again) == again.get(NODAL.key(), 3, 2)


def test_cache_hit_is_used(tmp_path):
    cache = HKCache()
    cache.put(NODAL.key(), 1, 1, 7)
    assert hk_value(NODAL, 1, 1, cache=cache) == 7
    poisoned = HKCache()
    poisoned.put(NODAL.key(), 1, 1, 5)
    assert hk_value(NODAL, 1, 1, cache=poisoned) == 5
