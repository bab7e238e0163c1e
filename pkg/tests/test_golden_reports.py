"""Golden-file checks of the structured report schema.

The comparison is schema-exact (same keys in the same order, same
non-numeric values) and numerically tolerant (floats within 1e-9), so the
goldens survive BLAS or library-version changes while still pinning the
report grammar and every reported quantity.
"""

import io
import pathlib
from contextlib import redirect_stdout

import pytest

from hypharm.cli import run

GOLDEN = pathlib.Path(__file__).parent / "golden"

CASES = {
    "p2_tree_q2_r40.report": [
        "p2", "--family", "tree_radial", "--q", "2", "--radius", "40",
        "--format", "structured",
    ],
    "characters_irr_s3.report": [
        "characters", "--family", "irr", "--group", "s3",
        "--format", "structured",
    ],
    "quantum_suq2_r12.report": [
        "quantum", "--q", "1/2", "--radius", "12", "--format", "structured",
    ],
}


def _tokenize(text):
    lines = text.rstrip("\n").split("\n")
    assert lines[0] == "hypharm-report v1"
    assert lines[-1] == "end"
    for line in lines[1:-1]:
        key, _, rest = line.partition(" ")
        yield key, rest.split(" ")


def _values_close(a, b, tol=1e-9):
    try:
        fa, fb = complex(a), complex(b)
    except ValueError:
        return a == b
    return abs(fa - fb) <= tol * max(1.0, abs(fa))


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_report(name):
    buf = io.StringIO()
    with redirect_stdout(buf):
        assert run(CASES[name]) == 0
    got = list(_tokenize(buf.getvalue()))
    want = list(_tokenize((GOLDEN / name).read_text()))
    assert [k for k, _ in got] == [k for k, _ in want]
    for (k, gv), (_, wv) in zip(got, want):
        assert len(gv) == len(wv), k
        for a, b in zip(gv, wv):
            assert _values_close(a, b), (k, a, b)
