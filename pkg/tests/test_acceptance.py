"""The eleven acceptance criteria at their stated sizes.

Each criterion prints one PASS/FAIL line as it finishes; the lines are
repeated in the terminal summary.  Seed: ``HOCAT_SEED`` or the
default in :mod:`hocat.cli.acceptance`.
"""

import sys

import pytest

from hocat.cli.acceptance import CRITERIA, run_acceptance

_lines = []


@pytest.fixture(scope="module")
def results():
    out = run_acceptance(stream=sys.__stdout__)
    _lines.extend(r.line() for r in out)
    return {r.number: r for r in out}


def test_there_are_eleven_criteria():
    assert [c.number for c in CRITERIA] == list(range(1, 12))


@pytest.mark.slow
@pytest.mark.parametrize("number", range(1, 12))
def test_criterion(results, number):
    r = results[number]
    print(r.line())
    assert r.ok, "\n".join(f"{f.invariant} (case seed {f.seed}): {f.detail}" for f in r.failures[:5])
