"""Tests for the benchmark harness."""

import csv
import io
import random

from src.bench import HEADER, draw_pairs, run_bench
from src.frontends import balanced_slp, lz78_to_linear_slp


def rows_of(output):
    return list(csv.reader(io.StringIO(output)))


def test_no_queries_prints_header_only(cfg, example_linear):
    out = io.StringIO()
    run_bench(example_linear, cfg, 0, None, 1, out)
    assert out.getvalue() == ",".join(HEADER) + "\n"


def test_linear_rows(cfg):
    """A Linear SLP gets plain, finger and finger-predecessor rows."""
    text = bytes(random.Random(2).choice(b"ab") for _ in range(3000))
    out = io.StringIO()
    run_bench(lz78_to_linear_slp(text), cfg, 50, 16, 7, out)
    rows = rows_of(out.getvalue())
    assert rows[0] == HEADER
    ops = [row[0] for row in rows[1:]]
    assert ops == ["access", "fp", "lce", "fp_finger", "lce_finger", "finger_pred"]
    for row in rows[1:]:
        assert row[2] == "3000"
        assert row[3] == "local:16"
        assert float(row[4]) >= 0


def test_slp_rows(cfg):
    """An SLP gets access, fp and lce rows."""
    out = io.StringIO()
    run_bench(balanced_slp(b"abcab" * 100), cfg, 20, None, 3, out)
    rows = rows_of(out.getvalue())
    assert [row[0] for row in rows[1:]] == ["access", "fp", "lce"]
    assert all(row[3] == "uniform" for row in rows[1:])


def test_local_pairs_stay_close():
    """Local pairs respect the distance and the text bounds."""
    pairs = draw_pairs(100, 500, 5, random.Random(0))
    assert all(abs(i - j) <= 5 and 1 <= i <= 100 and 1 <= j <= 100 for i, j in pairs)


def test_finger_heights_grow_with_distance(cfg):
    """Queries close to the finger climb less of the tree on average."""
    text = bytes(random.Random(5).choice(b"abc") for _ in range(20000))
    heights = []
    for distance in (16, 10000):
        out = io.StringIO()
        run_bench(lz78_to_linear_slp(text), cfg, 300, distance, 11, out)
        finger = next(row for row in rows_of(out.getvalue()) if row[0] == "finger_pred")
        heights.append(float(finger[5]))
    assert heights[0] <= heights[1]
