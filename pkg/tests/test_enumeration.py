import json

import pytest

from conftest import brute_force_classes, from_nx, to_nx
from hfree.enumeration import (CheckpointError, EnumerationError, EnumerationTask, RunRecord,
                               enumerate_connected, extremal_search, make_record, new_checkpoint,
                               read_records, resume, save_checkpoint)
from hfree.families import make_complete, make_path, make_s, make_s_minus, make_star
from hfree.graph import canonical_form, is_connected, has_isolated_vertex
from hfree.spectral import odd_bound
from hfree.subgraph import is_h43_free, named_pattern

H43 = named_pattern("h43")
H33 = named_pattern("h33")


def _collect(task, **kw):
    out = []
    enumerate_connected(task, out.append, **kw)
    return out


def _forms(records):
    return {canonical_form(r.graph()) for r in records}


@pytest.mark.parametrize("m", range(1, 7))
def test_counts_match_brute_force(m):
    got = _forms(_collect(EnumerationTask(m), compute_rho=False))
    ref = {canonical_form(from_nx(h)) for h in brute_force_classes(m)}
    assert got == ref


@pytest.mark.parametrize("m", [5, 6])
def test_filtered_counts_match_brute_force(m):
    task = EnumerationTask(m, (H33, named_pattern("c4")))
    got = _forms(_collect(task, compute_rho=False))
    ref = {canonical_form(from_nx(h)) for h in brute_force_classes(m, [to_nx(H33), to_nx(named_pattern("c4"))])}
    assert got == ref


def test_known_connected_counts():
    expected = {1: 1, 2: 1, 3: 3, 4: 5, 5: 12, 6: 30, 7: 79, 8: 227}
    for m, count in expected.items():
        assert enumerate_connected(EnumerationTask(m), lambda r: None, compute_rho=False) == count


@pytest.mark.parametrize("m", [7, 8])
def test_isomorph_free(m):
    recs = _collect(EnumerationTask(m, (H43,)), compute_rho=False)
    forms = [canonical_form(r.graph()) for r in recs]
    assert len(forms) == len(set(forms))
    for r in recs:
        g = r.graph()
        assert g.m == m and is_connected(g) and is_h43_free(g)


def test_m3_classes():
    forms = _forms(_collect(EnumerationTask(3)))
    assert forms == {canonical_form(g) for g in (make_complete(3), make_path(4), make_star(3))}
    res = extremal_search(3)
    assert canonical_form(res.graph) == canonical_form(make_complete(3))
    assert abs(res.rho - 2.0) < 1e-12 and res.unique


@pytest.mark.parametrize("m", [9, 10])
def test_extremal_two_patterns(m):
    res = extremal_search(m, (H33, H43))
    target = make_s((m + 3) // 2) if m % 2 else make_s_minus((m + 4) // 2)
    assert res.unique
    assert canonical_form(res.graph) == canonical_form(target)
    if m == 9:
        assert abs(res.rho - odd_bound(9)) < 1e-10


def test_extremal_search_m4_paw():
    res = extremal_search(4)
    paw = make_complete(3).add_edge(0, 3)
    assert res.unique and res.count == 5
    assert canonical_form(res.graph) == canonical_form(paw)


def test_checkpoint_interrupt_and_resume(tmp_path):
    task = EnumerationTask(7, prefix_depth=4)
    full = _forms(_collect(task, compute_rho=False))
    path = str(tmp_path / "ck.json")
    got = []
    state = new_checkpoint(task)
    half = len(state["prefixes"]) // 2
    enumerate_connected(task, got.append, checkpoint=path, stop_after=half, compute_rho=False)
    assert len(json.load(open(path))["completed"]) == half
    total = enumerate_connected(task, got.append, checkpoint=path, compute_rho=False)
    assert total == len(full) == len(got)
    assert _forms(got) == full


def test_checkpoint_fingerprint_mismatch(tmp_path):
    path = str(tmp_path / "ck.json")
    enumerate_connected(EnumerationTask(5), lambda r: None, checkpoint=path, stop_after=1)
    with pytest.raises(CheckpointError):
        resume(path, EnumerationTask(6))
    with pytest.raises(CheckpointError):
        resume(path, EnumerationTask(5, (H43,)))


def test_checkpoint_corrupt(tmp_path):
    path = tmp_path / "ck.json"
    path.write_text("{not json")
    with pytest.raises(CheckpointError):
        resume(str(path), EnumerationTask(5))
    task = EnumerationTask(5)
    state = new_checkpoint(task)
    state["completed"] = [0, 0]
    save_checkpoint(str(path), state)
    with pytest.raises(CheckpointError):
        resume(str(path), task)


def test_fresh_checkpoint(tmp_path):
    task = EnumerationTask(6)
    state = resume(str(tmp_path / "missing.json"), task)
    assert state["completed"] == [] and state["count"] == 0
    assert state["fingerprint"] == task.fingerprint()


def test_parallel_split_matches_serial():
    task = EnumerationTask(8, (H43,))
    serial = _forms(_collect(task, compute_rho=False))
    parallel = _forms(_collect(task, workers=2, compute_rho=False))
    assert serial == parallel


@pytest.mark.parametrize("m", range(1, 5))
def test_no_isolated_mode(m):
    recs = _collect(EnumerationTask(m, restrict_connected=False), compute_rho=False)
    ref = {canonical_form(from_nx(h)) for h in brute_force_classes(m, connected=False)}
    assert _forms(recs) == ref
    assert all(not has_isolated_vertex(r.graph()) for r in recs)


def test_task_limits():
    with pytest.raises(EnumerationError):
        EnumerationTask(15)
    with pytest.raises(EnumerationError):
        EnumerationTask(0)
    t = EnumerationTask(10)
    assert (t.n_min, t.n_max) == (5, 11)


def test_record_roundtrip():
    rec = make_record(make_s_minus(7), ("h43",))
    back = RunRecord.from_json(rec.to_json())
    assert back == rec
    assert rec.is_extremal and rec.flags == {"h43": True}


def test_read_records_counts_bad_lines():
    good = [make_record(make_star(k)).to_json() for k in range(1, 100)]
    lines = good[:50] + ["{broken"] + good[50:]
    recs, bad = read_records(lines)
    assert len(recs) == 99 and bad == 1
    bad_record = json.dumps({"graph6": "Bw", "m": 5, "n": 3, "rho": 2.0})
    assert read_records([bad_record]) == ([], 1)
