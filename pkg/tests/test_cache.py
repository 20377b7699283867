import json

import pytest

from conftest import K22
from patex.cache import CacheStore
from patex.errors import CacheError
from patex.matrix import ZeroOneMatrix, canonical_key
from patex.search import ExtremalRecord, brute_force_ex, deletion_lower_bound


def make_record(n, value, status, witness):
    return ExtremalRecord(
        pattern_key=canonical_key(K22),
        n=n,
        value=value,
        status=status,
        witness=witness,
        provenance={"solver": "test"},
    )


def free_witness(n, weight):
    # one 1 per row from the left, at most one per column: K22-free
    masks = [1 << i if i < weight else 0 for i in range(n)]
    return ZeroOneMatrix(masks, n)


class TestPrecedence:
    def test_exact_beats_lower(self, tmp_path):
        cache = CacheStore(tmp_path)
        exact = brute_force_ex(3, K22)
        cache.put(K22, exact)
        cache.put(K22, make_record(3, 3, "lowerBound", free_witness(3, 3)))
        got = cache.get(K22, 3)
        assert got.status == "exact" and got.value == 6

    def test_larger_lower_bound_wins(self, tmp_path):
        cache = CacheStore(tmp_path)
        cache.put(K22, make_record(4, 3, "lowerBound", free_witness(4, 3)))
        cache.put(K22, make_record(4, 4, "lowerBound", free_witness(4, 4)))
        assert cache.get(K22, 4).value == 4
        cache.put(K22, make_record(4, 2, "lowerBound", free_witness(4, 2)))
        assert cache.get(K22, 4).value == 4  # no downgrade

    def test_empty_cache(self, tmp_path):
        assert CacheStore(tmp_path).get(K22, 3) is None


class TestRoundTrip:
    def test_bit_identical_reread(self, tmp_path):
        cache = CacheStore(tmp_path)
        rec = deletion_lower_bound(8, K22, 5)
        cache.put(K22, rec)
        got = cache.get(K22, 8)
        assert got.witness == rec.witness
        assert got.to_json_dict() == rec.to_json_dict()

    def test_distinct_patterns_distinct_files(self, tmp_path):
        cache = CacheStore(tmp_path)
        other = ZeroOneMatrix.ones(1, 2)
        cache.put(K22, brute_force_ex(2, K22))
        cache.put(other, brute_force_ex(2, other))
        assert len(list(tmp_path.glob("*.json"))) == 2


class TestCorruption:
    def test_unreadable_file(self, tmp_path):
        cache = CacheStore(tmp_path)
        cache.put(K22, brute_force_ex(2, K22))
        path = next(tmp_path.glob("*.json"))
        path.write_text("{not json")
        with pytest.raises(CacheError, match="rebuild"):
            cache.get(K22, 2)

    def test_witness_containing_pattern_rejected(self, tmp_path):
        cache = CacheStore(tmp_path)
        cache.put(K22, brute_force_ex(2, K22))
        path = next(tmp_path.glob("*.json"))
        doc = json.loads(path.read_text())
        doc["records"][0]["witness"]["data"] = ["11", "11"]
        doc["records"][0]["value"] = 4
        path.write_text(json.dumps(doc))
        with pytest.raises(CacheError, match="contains the pattern"):
            cache.get(K22, 2)

    def test_weight_mismatch_rejected(self, tmp_path):
        cache = CacheStore(tmp_path)
        cache.put(K22, brute_force_ex(2, K22))
        path = next(tmp_path.glob("*.json"))
        doc = json.loads(path.read_text())
        doc["records"][0]["value"] = 99
        path.write_text(json.dumps(doc))
        with pytest.raises(CacheError, match="weight"):
            cache.get(K22, 2)
