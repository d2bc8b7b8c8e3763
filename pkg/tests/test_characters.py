import json
import random
from fractions import Fraction

import pytest

from immstab.characters import (
    CharacterTable, TableCache, TableValidationError, character_table,
    class_function, inner_product, load_table, mn_character,
    mn_character_uncached, save_table, telemetry,
)
from immstab.combinatorics import Partition, enumerate_partitions

P = Partition


def test_s3_against_standard_representation_traces():
    # trace of the 2-dim standard representation on the plane x+y+z=0:
    # permutation rep trace (fixed points) minus the trivial rep
    fixed = {(1, 1, 1): 3, (2, 1): 1, (3,): 0}
    for t, f in fixed.items():
        assert mn_character(P((2, 1)), P(t)) == f - 1
        assert mn_character(P((3,)), P(t)) == 1
    assert mn_character(P((1, 1, 1)), P((2, 1))) == -1


def test_known_values():
    assert mn_character(P((3, 2)), P((2, 2, 1))) == 1
    assert mn_character(P((2, 2)), P((2, 1, 1))) == 0
    assert mn_character(P((3, 3)), P((3, 3))) == 2


def test_memo_agrees_with_uncached():
    rng = random.Random(7)
    for _ in range(100):
        n = rng.randint(1, 9)
        parts = enumerate_partitions(n)
        p, t = rng.choice(parts), rng.choice(parts)
        assert mn_character(p, t) == mn_character_uncached(p, t)


def test_size_mismatch():
    with pytest.raises(ValueError):
        mn_character(P((2, 1)), P((2, 2)))


@pytest.mark.parametrize("n", range(1, 8))
def test_table_validates(n):
    character_table(n).validate()


def test_inner_products():
    n = 5
    table = character_table(n)
    for a in table.partitions:
        for b in table.partitions:
            ip = inner_product(class_function(table, a), class_function(table, b), n)
            assert ip == Fraction(int(a == b))
    with pytest.raises(ValueError):
        inner_product({P((2,)): 1}, class_function(table, P((5,))), n)


def test_tampered_table_rejected():
    data = character_table(4).to_json()
    data["values"][1][0] = "4"
    with pytest.raises(TableValidationError):
        CharacterTable.from_json(data)


def test_save_load_round_trip(tmp_path):
    table = character_table(5)
    path = tmp_path / "t.json"
    save_table(table, path)
    assert load_table(path) == table
    with pytest.raises(FileNotFoundError):
        load_table(tmp_path / "missing.json")


def test_cache_hits(tmp_path):
    cache = TableCache(tmp_path)
    before = telemetry["table_cache_hits"]
    t1 = cache.get(4)
    t2 = TableCache(tmp_path).get(4)
    assert t1 == t2
    assert telemetry["table_cache_hits"] == before + 1
    assert json.loads(cache.path(4).read_text())["n"] == 4


def test_cache_rejects_corruption(tmp_path):
    cache = TableCache(tmp_path)
    cache.get(3)
    data = json.loads(cache.path(3).read_text())
    data["values"][0][0] = "2"
    cache.path(3).write_text(json.dumps(data))
    with pytest.raises(TableValidationError):
        TableCache(tmp_path).get(3)
