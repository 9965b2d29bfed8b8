import json
import re

import pytest

from stindex import container
from stindex.cli import main


@pytest.fixture()
def abra(tmp_path):
    p = tmp_path / "abra.txt"
    p.write_bytes(b"abracadabra")
    return p


def test_build_query_round_trip(tmp_path, abra, capsys):
    out = tmp_path / "abra.idx"
    stats = tmp_path / "stats.json"
    assert main(["build", str(abra), "-o", str(out), "--stats", str(stats)]) == 0
    capsys.readouterr()
    pairs = tmp_path / "pairs.txt"
    pairs.write_text("1 4\n8 11\n5 7\n")
    assert main(["query", str(out), "--pairs", str(pairs)]) == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert re.fullmatch(r"1\t4\texplicit\t\d+\t4", lines[0])
    assert lines[0].split("\t")[3] == lines[1].split("\t")[3]  # same "abra" node
    assert lines[2].split("\t")[2] == "implicit"
    st = json.loads(stats.read_text())
    assert st["total_words"] > 0 and st["mode"] == "standard"


def test_query_occurrences(tmp_path, abra, capsys):
    out = tmp_path / "i.idx"
    main(["build", str(abra), "-o", str(out)])
    capsys.readouterr()
    pairs = tmp_path / "p.txt"
    pairs.write_text("1 4\n")
    main(["query", str(out), "--pairs", str(pairs), "--report-occurrences"])
    line = capsys.readouterr().out.strip()
    assert line.endswith("1,8")


def test_query_bad_lines_nonfatal(tmp_path, abra, capsys):
    out = tmp_path / "i.idx"
    main(["build", str(abra), "-o", str(out)])
    capsys.readouterr()
    pairs = tmp_path / "p.txt"
    pairs.write_text("0 5\n2 3\n")
    assert main(["query", str(out), "--pairs", str(pairs)]) == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert lines[0].startswith("error")
    assert lines[1].startswith("2\t3\t")


def test_verify_exit_codes(tmp_path, capsys):
    p = tmp_path / "t.txt"
    p.write_bytes(b"abracadabra" * 3)
    assert main(["verify", str(p), "--max-n", "64"]) == 0
    capsys.readouterr()


def test_bench_reports(tmp_path, abra, capsys):
    out = tmp_path / "i.idx"
    main(["build", str(abra), "-o", str(out), "--mode", "compact"])
    capsys.readouterr()
    pairs = tmp_path / "p.txt"
    pairs.write_text("1 11\n1 4\n3 3\n")
    assert main(["bench", str(out), "--pairs", str(pairs)]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["queries"] == 3
    assert rep["max_probes"] >= 1
    assert rep["total_words"] > 0


def test_missing_file_exit_2(tmp_path, capsys):
    assert main(["build", str(tmp_path / "nope.txt"), "-o", str(tmp_path / "x")]) == 2


def test_container_round_trip_bytes(tmp_path, abra):
    out1 = tmp_path / "a.idx"
    out2 = tmp_path / "b.idx"
    main(["build", str(abra), "-o", str(out1)])
    idx = container.load(str(out1))
    container.save(idx, str(out2))
    assert out1.read_bytes() == out2.read_bytes()


def test_serialized_queries_match_memory(tmp_path):
    import random

    from stindex.waindex import WaIndex

    rng = random.Random(4)
    w = [rng.randrange(3) for _ in range(80)]
    for mode in ("standard", "compact"):
        idx = WaIndex(w, mode=mode)
        path = tmp_path / f"{mode}.idx"
        container.save(idx, str(path))
        idx2 = container.load(str(path))
        for i in range(1, 81):
            for j in range(i, 81):
                assert idx.substring_locus(i, j) == idx2.substring_locus(i, j)
