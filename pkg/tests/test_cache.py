from fractions import Fraction

import pytest

from haarwell.weingarten import GroupKind, TableStore, build_table, clear_memo, default_cache_dir, get_table
from haarwell.weingarten.cache import dumps, loads

CASES = [("unitary", 4, None), ("unitary", 5, 3), ("orthogonal", 6, None), ("orthogonal", 6, 2),
         ("free", 6, None), ("free", 6, Fraction(5, 2)), ("free", 4, 2)]


@pytest.mark.parametrize("group,k,n0", CASES)
def test_text_round_trip(group, k, n0):
    t = build_table(group, k, n0)
    back = loads(dumps(t))
    assert back.values == t.values
    assert (back.group, back.k, back.n0, back.pseudo) == (t.group, t.k, t.n0, t.pseudo)
    assert dumps(back) == dumps(t)


def test_format_header():
    text = dumps(build_table("unitary", 2))
    lines = text.splitlines()
    assert lines[1:7] == ["schema: 1", "group: unitary", "k: 2", "mode: symbolic", "pseudo: false", "---"]
    assert any(line.startswith("(2) -> ") for line in lines)


@pytest.mark.parametrize("group,k,n0", CASES)
def test_store_save_load(tmp_path, group, k, n0):
    store = TableStore(tmp_path)
    t = build_table(group, k, n0)
    path = store.save(t)
    assert path.exists() and path.suffix == ".wgt"
    assert store.load(group, k, n0).values == t.values


def test_missing_and_corrupt_files(tmp_path, caplog):
    store = TableStore(tmp_path)
    assert store.load("unitary", 3) is None
    path = store.path_for("unitary", 3, None)
    path.write_text("garbage")
    assert store.load("unitary", 3) is None
    t = build_table("unitary", 3)
    text = dumps(t).replace("schema: 1", "schema: 99")
    path.write_text(text)
    assert store.load("unitary", 3) is None


def test_tampered_values_rejected(tmp_path):
    store = TableStore(tmp_path)
    t = build_table("unitary", 3)
    path = store.save(t)
    text = path.read_text().replace("(3) -> 2*n^0", "(3) -> 3*n^0")
    assert text != path.read_text()
    path.write_text(text)
    assert store.load("unitary", 3) is None


def test_misnamed_file_rejected(tmp_path):
    store = TableStore(tmp_path)
    t = build_table("unitary", 3)
    store.path_for("unitary", 4, None).write_text(dumps(t))
    assert store.load("unitary", 4) is None


def test_get_table_uses_store(tmp_path):
    store = TableStore(tmp_path)
    clear_memo()
    a = get_table(GroupKind.ORTHOGONAL, 8, store=store)
    assert store.path_for("orthogonal", 8, None).exists()
    clear_memo()
    b = get_table(GroupKind.ORTHOGONAL, 8, store=store)
    assert a is not b and a.values == b.values


def test_default_dir_env(monkeypatch, tmp_path):
    monkeypatch.setenv("HAARWELL_CACHE", str(tmp_path / "x"))
    assert default_cache_dir() == tmp_path / "x"
    monkeypatch.delenv("HAARWELL_CACHE")
    monkeypatch.setenv("XDG_CACHE_HOME", str(tmp_path / "xdg"))
    assert default_cache_dir() == tmp_path / "xdg" / "haarwell"
