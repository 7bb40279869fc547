"""Durability of the append-log + snapshot document store."""

import json
import threading

from automcq.service.store import DocumentStore


def test_put_get_items(tmp_path):
    store = DocumentStore(tmp_path)
    store.put("quizzes", "a", {"v": 1})
    store.put("quizzes", "b", {"v": 2})
    store.put("quizzes", "a", {"v": 3})
    assert store.get("quizzes", "a") == {"v": 3}
    assert store.get("quizzes", "missing") is None
    assert [k for k, _ in store.items("quizzes")] == ["a", "b"]
    assert store.count("quizzes") == 2
    store.close()


def test_returned_documents_are_copies(tmp_path):
    store = DocumentStore(tmp_path)
    store.put("c", "k", {"nested": {"n": 1}})
    doc = store.get("c", "k")
    doc["nested"]["n"] = 99
    assert store.get("c", "k") == {"nested": {"n": 1}}
    store.close()


def test_acknowledged_writes_survive_a_crash(tmp_path):
    store = DocumentStore(tmp_path)
    for i in range(10):
        store.put("sheets", f"s{i}", {"i": i})
    # no close(): simulate the process dying after acknowledgement
    reopened = DocumentStore(tmp_path)
    assert reopened.count("sheets") == 10
    assert reopened.get("sheets", "s7") == {"i": 7}
    assert reopened.seq == 10
    reopened.close()


def test_snapshot_compacts_and_replay_continues(tmp_path):
    store = DocumentStore(tmp_path)
    store.put("c", "a", {"v": 1})
    store.snapshot()
    assert (tmp_path / "write.log").read_text() == ""
    store.put("c", "b", {"v": 2})
    # crash after the post-snapshot write
    reopened = DocumentStore(tmp_path)
    assert reopened.get("c", "a") == {"v": 1}
    assert reopened.get("c", "b") == {"v": 2}
    reopened.close()


def test_torn_final_log_line_is_ignored(tmp_path):
    store = DocumentStore(tmp_path)
    store.put("c", "a", {"v": 1})
    store._log_file.close()
    with open(tmp_path / "write.log", "a", encoding="utf-8") as log:
        log.write('{"seq": 2, "op": "put", "collection": "c", "key": "b", "doc"')
    reopened = DocumentStore(tmp_path)
    assert reopened.get("c", "a") == {"v": 1}
    assert reopened.get("c", "b") is None
    reopened.close()


def test_write_log_is_monotonic(tmp_path):
    store = DocumentStore(tmp_path)
    for i in range(5):
        store.put("c", f"k{i}", {})
    store._log_file.flush()
    seqs = [
        json.loads(line)["seq"]
        for line in (tmp_path / "write.log").read_text().splitlines()
    ]
    assert seqs == sorted(seqs) == list(range(1, 6))
    store.close()


def test_concurrent_puts_do_not_corrupt(tmp_path):
    store = DocumentStore(tmp_path)

    def writer(worker):
        for i in range(25):
            store.put("c", f"{worker}:{i}", {"w": worker, "i": i})

    threads = [threading.Thread(target=writer, args=(w,)) for w in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert store.count("c") == 100
    reopened = DocumentStore(tmp_path)
    assert reopened.count("c") == 100
    assert reopened.seq == 100
    reopened.close()
    store.close()
