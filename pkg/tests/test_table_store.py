from __future__ import annotations

import pytest

from app import table_store
from app.errors import AxiomError, TableFormatError
from app.exactq import Base


def test_fixture_files_match_fresh_builds(fixtures_dir, table_3_2, table_4_3):
    for table in (table_3_2, table_4_3):
        path = table_store.default_path(table.base, fixtures_dir)
        assert path.read_text(encoding="utf-8") == table_store.format_table(table)
        assert table_store.load_table(path) == table


def test_witness_file_text(table_3_2):
    assert table_store.format_table(table_3_2) == "LNS1\nP=3\nQ=2\nSEZ=1\n0 1\n1 2\n"


def test_save_then_load(tmp_path, table_1025_1024):
    path = table_store.save_table(table_1025_1024, tmp_path / "big.txt")
    loaded = table_store.load_table(path)
    assert loaded == table_1025_1024


def test_default_path(tmp_path):
    assert table_store.default_path(Base(p=4, q=3), tmp_path) == tmp_path / "lns1-4-3.txt"


def test_get_table_caches():
    base = Base(p=5, q=4)
    assert table_store.get_table(base) is table_store.get_table(base)


@pytest.mark.parametrize(
    "text",
    [
        "LNS1\nP=3\nQ=2\nSEZ=1\n0 1\n1 2",  # no final newline
        "LNS2\nP=3\nQ=2\nSEZ=1\n0 1\n1 2\n",
        "LNS1\nQ=2\nP=3\nSEZ=1\n0 1\n1 2\n",
        "LNS1\nP=3\nQ=2\nSEZ=1\n0 1\n",
        "LNS1\nP=3\nQ=2\nSEZ=1\n0 1\n2 2\n",
        "LNS1\nP=3\nQ=2\nSEZ=1\n0 1\n1 2 \n",
        "LNS1\nP=03\nQ=2\nSEZ=1\n0 1\n1 2\n",
        "LNS1\nP=2\nQ=3\nSEZ=1\n0 1\n1 2\n",
    ],
)
def test_malformed_files_are_rejected(text):
    with pytest.raises(TableFormatError):
        table_store.parse_table(text)


def test_well_formed_file_with_wrong_entries_fails_axioms():
    with pytest.raises(AxiomError) as info:
        table_store.parse_table("LNS1\nP=3\nQ=2\nSEZ=1\n0 1\n1 3\n")
    assert info.value.axiom == 5
    assert info.value.index == 1
