"""Instance files: seeded generation and parsing"""

import numpy as np
import pytest

from src.convex import convex_distance_moment
from src.core.errors import DomainError
from src.empirical import bernstein_tail_check
from src.instances import (
    InstanceKind,
    generate_instance,
    parse_instance,
    parse_pattern_set,
    parse_process,
    pattern_set_to_text,
    process_to_text,
    write_instance,
)
from src.transport import DiscreteMeasure


@pytest.mark.parametrize(
    "kind, params",
    [
        (InstanceKind.PATTERN_SET, {"n": 4, "density": 0.4}),
        (InstanceKind.PATTERN_SET, {"n": 3, "points": 3, "uniform": False}),
        (InstanceKind.MEASURE, {"size": 5, "dim": 2}),
        (InstanceKind.PROCESS, {"n": 3, "N": 2, "space_size": 3}),
    ],
)
def test_generation_is_deterministic(kind, params):
    first = generate_instance(kind, params, seed=42)
    assert first == generate_instance(kind, params, seed=42)
    assert first != generate_instance(kind, params, seed=43)


def test_pattern_set_file_round_trip():
    text = generate_instance("pattern_set", {"n": 4, "density": 0.4}, seed=1)
    A = parse_pattern_set(text)
    assert A.base.dimension == 4
    assert pattern_set_to_text(A) == text
    assert convex_distance_moment(A, 1 / 4).passed


def test_measure_file_parses():
    text = generate_instance("measure", {"size": 6}, seed=2)
    mu = parse_instance("measure", text)
    assert isinstance(mu, DiscreteMeasure)
    assert mu.size == 6
    assert mu.weights.sum() == pytest.approx(1.0)


def test_process_file_round_trip():
    text = generate_instance("process", {"n": 3, "N": 2, "nonnegative": True}, seed=3)
    inst = parse_process(text)
    assert (inst.n, inst.N) == (3, 2)
    assert inst.is_nonnegative()
    reparsed = parse_process(process_to_text(inst))
    assert reparsed.scale == inst.scale
    for a, b in zip(reparsed.tables, inst.tables):
        np.testing.assert_array_equal(a, b)
    assert all(r.passed for r in bernstein_tail_check(inst, [0.5, 1.0]))


def test_invalid_generation_requests():
    with pytest.raises(DomainError):
        generate_instance("pattern_set", {"n": 0}, seed=1)
    with pytest.raises(DomainError):
        generate_instance("graph", {}, seed=1)
    with pytest.raises(DomainError):
        generate_instance("measure", {}, seed=-1)
    with pytest.raises(DomainError):
        generate_instance("measure", {}, seed=2**64)


def test_malformed_files_are_rejected():
    with pytest.raises(DomainError):
        parse_pattern_set("n 2\nfactor 0.5 0.5\n")
    with pytest.raises(DomainError):
        parse_pattern_set("# pattern_set v1\nn 2\nfactor 0.5 0.5\nmember 0 0\n")
    with pytest.raises(DomainError):
        parse_process("# process v1\nn 1 N 1 scale 1.0\nspace 0.5 0.5\n")


def test_members_are_checked_against_the_base():
    text = "# pattern_set v1\nn 1\nfactor 0.5 0.5\nmember 0 1\n"
    with pytest.raises(DomainError):
        parse_pattern_set(text)


def test_write_instance(tmp_path):
    text = generate_instance("measure", {"size": 3}, seed=4)
    path = tmp_path / "mu.txt"
    write_instance(path, text)
    assert path.read_text() == text
    np.testing.assert_allclose(parse_instance("measure", text).weights.sum(), 1.0)
