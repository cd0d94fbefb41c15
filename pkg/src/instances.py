"""
Instance files: seeded generators and parsers for the three on-disk formats.

    # pattern_set v1          # measure v1             # process v1
    n <n>                     dim <d>                  n <n> N <N> scale <s>
    factor <w_0> ... <w_k>    <w> <x_1> ... <x_d>      space <w_0> ... <w_k>
    member <i_1> ... <i_n>                             g <v_0> ... <v_k>   (N lines per space)

Floats are written with repr, so the same (kind, params, seed) always gives the
same bytes.
"""

from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Mapping, Union

import numpy as np
from loguru import logger
from pydantic import BaseModel, Field, ValidationError

from .convex.patterns import PatternSet
from .core.errors import DomainError
from .core.random import lab_rng
from .empirical.process import ProcessInstance, random_instance
from .measure.spaces import FiniteSpace, ProductSpace
from .transport.measures import DiscreteMeasure

PATTERN_HEADER = "# pattern_set v1"
PROCESS_HEADER = "# process v1"
MAX_SEED = 2**64


class InstanceKind(str, Enum):
    PATTERN_SET = "pattern_set"
    MEASURE = "measure"
    PROCESS = "process"


class PatternSetParams(BaseModel):
    n: int = Field(..., ge=1, le=14, description="Number of factors")
    density: float = Field(default=0.3, gt=0.0, le=1.0, description="Membership probability")
    points: int = Field(default=2, ge=2, le=4, description="Points per factor")
    uniform: bool = Field(default=True, description="Uniform factor laws")


class MeasureParams(BaseModel):
    size: int = Field(default=8, ge=1, le=256, description="Support size")
    dim: int = Field(default=1, ge=1, le=2)
    spread: float = Field(default=1.5, gt=0.0, description="Std of the support points")


class ProcessParams(BaseModel):
    n: int = Field(..., ge=1, description="Number of independent variables")
    N: int = Field(default=4, ge=1, description="Family size")
    space_size: int = Field(default=2, ge=2)
    nonnegative: bool = False
    symmetric: bool = False


PARAMS = {
    InstanceKind.PATTERN_SET: PatternSetParams,
    InstanceKind.MEASURE: MeasureParams,
    InstanceKind.PROCESS: ProcessParams,
}


def _floats(values: Any) -> str:
    return " ".join(repr(float(v)) for v in np.asarray(values, dtype=float).reshape(-1))


def _lines(text: str, header: str) -> List[str]:
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines or lines[0] != header:
        raise DomainError(f"instance file must start with '{header}'")
    return lines[1:]


def _keyed(line: str, key: str) -> List[str]:
    fields = line.split()
    if not fields or fields[0] != key:
        raise DomainError(f"expected a '{key}' line, got '{line}'")
    return fields[1:]


# Pattern sets


def pattern_set_to_text(A: PatternSet) -> str:
    lines = [PATTERN_HEADER, f"n {A.base.dimension}"]
    lines.extend(f"factor {_floats(factor.weights)}" for factor in A.base.factors)
    lines.extend("member " + " ".join(str(int(i)) for i in row) for row in A.member_grid)
    return "\n".join(lines) + "\n"


def parse_pattern_set(text: str) -> PatternSet:
    """Factors are labelled 0..k-1 in file order"""
    lines = _lines(text, PATTERN_HEADER)
    if not lines:
        raise DomainError("missing 'n <n>' line")
    n = int(_keyed(lines[0], "n")[0])
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    factor_lines, member_lines = lines[1 : n + 1], lines[n + 1 :]
    if len(factor_lines) != n:
        raise DomainError(f"expected {n} factor lines, got {len(factor_lines)}")
    factors = []
    for line in factor_lines:
        weights = [float(w) for w in _keyed(line, "factor")]
        factors.append(FiniteSpace(tuple(range(len(weights))), weights))
    base = ProductSpace(tuple(factors))
    members = []
    for line in member_lines:
        indices = [int(i) for i in _keyed(line, "member")]
        if len(indices) != n:
            raise DomainError(f"member line has {len(indices)} indices for n = {n}")
        members.append(indices)
    return PatternSet.from_tuples(base, members)


def _generate_pattern_set(params: PatternSetParams, rng: np.random.Generator) -> str:
    factors = []
    for _ in range(params.n):
        weights = (
            np.full(params.points, 1.0 / params.points)
            if params.uniform
            else rng.dirichlet(np.ones(params.points))
        )
        factors.append(FiniteSpace(tuple(range(params.points)), weights))
    base = ProductSpace(tuple(factors))
    members = np.flatnonzero(rng.random(base.cardinality) < params.density)
    if members.size == 0:
        members = np.array([int(rng.integers(base.cardinality))])
    return pattern_set_to_text(PatternSet(base, tuple(int(m) for m in members)))


# Measures


def parse_measure(text: str) -> DiscreteMeasure:
    return DiscreteMeasure.from_text(text)


def _generate_measure(params: MeasureParams, rng: np.random.Generator) -> str:
    support = rng.normal(scale=params.spread, size=(params.size, params.dim))
    return DiscreteMeasure(support, rng.dirichlet(np.ones(params.size))).to_text()


# Processes


def process_to_text(inst: ProcessInstance) -> str:
    lines = [PROCESS_HEADER, f"n {inst.n} N {inst.N} scale {inst.scale!r}"]
    for space, table in zip(inst.spaces, inst.tables):
        lines.append(f"space {_floats(space.weights)}")
        lines.extend(f"g {_floats(row)}" for row in table)
    return "\n".join(lines) + "\n"


def parse_process(text: str) -> ProcessInstance:
    lines = _lines(text, PROCESS_HEADER)
    if not lines:
        raise DomainError("missing 'n <n> N <N> scale <s>' line")
    fields = lines[0].split()
    if len(fields) != 6 or fields[0::2] != ["n", "N", "scale"]:
        raise DomainError(f"malformed process header line '{lines[0]}'")
    n, N, scale = int(fields[1]), int(fields[3]), float(fields[5])
    if n < 1 or N < 1:
        raise DomainError(f"need n >= 1 and N >= 1, got n={n}, N={N}")
    body = lines[1:]
    if len(body) != n * (N + 1):
        raise DomainError(f"expected {n * (N + 1)} space and function lines, got {len(body)}")
    spaces, tables = [], []
    for i in range(n):
        block = body[i * (N + 1) : (i + 1) * (N + 1)]
        weights = [float(w) for w in _keyed(block[0], "space")]
        spaces.append(FiniteSpace(tuple(range(len(weights))), weights))
        tables.append(np.array([[float(v) for v in _keyed(line, "g")] for line in block[1:]]))
    return ProcessInstance(tuple(spaces), tuple(tables), scale)


def _generate_process(params: ProcessParams, rng: np.random.Generator) -> str:
    inst = random_instance(
        rng,
        params.n,
        params.N,
        space_size=params.space_size,
        nonnegative=params.nonnegative,
        symmetric=params.symmetric,
    )
    return process_to_text(inst)


GENERATORS = {
    InstanceKind.PATTERN_SET: _generate_pattern_set,
    InstanceKind.MEASURE: _generate_measure,
    InstanceKind.PROCESS: _generate_process,
}


def generate_instance(
    kind: Union[InstanceKind, str], params: Mapping[str, Any], seed: int
) -> str:
    """
    Seeded instance file contents.

    Args:
        kind: pattern_set, measure or process
        params: generator parameters for the kind (see the *Params models)
        seed: 64-bit seed; kind k draws from stream (seed, k's position)

    Returns:
        File text; identical (kind, params, seed) give identical bytes

    Raises:
        DomainError: unknown kind, invalid params or seed
    """
    try:
        kind = InstanceKind(kind)
    except ValueError as e:
        raise DomainError(f"unknown instance kind '{kind}'") from e
    if not 0 <= seed < MAX_SEED:
        raise DomainError(f"seed must lie in [0, 2^64), got {seed}")
    try:
        validated = PARAMS[kind](**dict(params))
    except ValidationError as e:
        raise DomainError(f"invalid {kind.value} params: {e}") from e
    stream = list(InstanceKind).index(kind)
    text = GENERATORS[kind](validated, lab_rng(seed, stream))
    logger.debug(f"Generated {kind.value} instance ({len(text)} bytes) for seed {seed}")
    return text


def parse_instance(kind: Union[InstanceKind, str], text: str) -> Any:
    parsers: Dict[InstanceKind, Any] = {
        InstanceKind.PATTERN_SET: parse_pattern_set,
        InstanceKind.MEASURE: parse_measure,
        InstanceKind.PROCESS: parse_process,
    }
    return parsers[InstanceKind(kind)](text)


def write_instance(path: Union[str, Path], text: str) -> None:
    Path(path).write_text(text)
    logger.info(f"Instance written to {path}")
