import hashlib
from importlib import resources

import pytest

from smalldefect.appendix import ChecksumMismatch, diff_table, load_tables
from smalldefect.engine import DecompMatrix
from smalldefect.weight3 import CaseDescriptor, census, exceptional_partitions


def test_fixture_shape(tables):
    assert len(tables) == 40
    counts = {2: 0, 3: 0, 4: 0}
    for t in tables:
        counts[t.descriptor.case] += 1
        assert all(len(entries) == len(t.cols) for _, entries in t.rows)
        assert set("".join(e for _, e in t.rows)) <= {".", "1"}
    c = census(5)
    assert counts == {2: c[2], 3: c[3], 4: c[4]}
    assert len({t.descriptor for t in tables}) == 40


def test_rows_are_exceptional(tables):
    for t in tables:
        names = {lam for _, lam in exceptional_partitions(t.descriptor)}
        assert set(t.expected()) <= names


def test_first_case2_table(tables):
    t = next(t for t in tables if t.descriptor == CaseDescriptor(2, 5, 5, 6))
    assert len(t.rows) == 15


def test_checksum_guard(tmp_path, monkeypatch):
    raw = resources.files("smalldefect.data").joinpath("appendix_p5.json").read_bytes()
    digest = resources.files("smalldefect.data").joinpath("appendix_p5.json.sha256").read_text()
    assert digest.split()[0] == hashlib.sha256(raw).hexdigest()

    import smalldefect.appendix as appendix
    tampered = raw.replace(b'"1', b'".', 1)
    real = appendix._read
    monkeypatch.setattr(appendix, "_read",
                        lambda name: tampered if name.endswith(".json") else real(name))
    with pytest.raises(ChecksumMismatch):
        load_tables()
    assert len(load_tables(check=False)) == 40


def test_diff_reports_mismatch(solver5, tables):
    t = next(t for t in tables if t.descriptor == CaseDescriptor(4, 5, 5, 6, 6))
    M = solver5.solve_block(t.descriptor.block())
    assert diff_table(t, M).ok
    broken = DecompMatrix.from_json(M.to_json())
    lam = list(t.expected())[-1]
    mu = next(m for m in broken.cells[lam] if broken.cells[lam][m][1] > 0)
    broken.cells[lam][mu] = [2, 2]
    diff = diff_table(t, broken)
    assert not diff.ok and "table says" in diff.problems[0]


def test_all_tables_match(solver5, tables):
    for t in tables:
        M = solver5.solve_block(t.descriptor.block())
        assert diff_table(t, M).ok, (str(t.descriptor), diff_table(t, M).problems)
        assert M.determined and M.max_entry() <= 1
