"""Seeded random formal-context generators.

Two models. The single-parameter model fills every cell independently
with probability p. The multi-parametric model partitions attributes
into three classes with different column probabilities: ubiquitous
attributes (U, indices ``[0, u_size)``) with ``p = 1 - min(x/m, 1)``,
rare attributes (R, indices ``[u_size, u_size + r_size)``) with
``p = 1/ln(n)``, and free attributes (F, the rest) with ``p = f_prob``.

Randomness: PCG64, one substream per column derived as
``SeedSequence(seed, spawn_key=(column,))``. Per-column substreams make
output independent of evaluation order and let both models share one
stream-derivation rule, so a multi spec with no U and no R produces the
same context, bit for bit, as the single model at ``p = f_prob``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .context import FormalContext


@dataclass(frozen=True)
class SingleParamSpec:
    """Every cell is a cross independently with probability p."""

    n_objects: int
    n_attributes: int
    p: float
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_objects < 0 or self.n_attributes < 0:
            raise ValueError("counts must be >= 0")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must be in [0, 1], got {self.p}")
        if self.seed < 0:
            raise ValueError("seed must be a non-negative integer")

    @property
    def q(self) -> float:
        """Probability that a cell is blank."""
        return 1.0 - self.p


@dataclass(frozen=True)
class MultiParamSpec:
    """Per-attribute probabilities by class partition U | R | F."""

    n_objects: int
    n_attributes: int
    u_size: int
    r_size: int
    x: float = 2.0
    f_prob: float = 0.5
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_objects < 0 or self.n_attributes < 0:
            raise ValueError("counts must be >= 0")
        if self.u_size < 0 or self.r_size < 0:
            raise ValueError("class sizes must be >= 0")
        if self.u_size + self.r_size > self.n_attributes:
            raise ValueError("u_size + r_size exceeds attribute count")
        if self.r_size > 0 and self.n_attributes < 3:
            raise ValueError(
                "rare attributes require n_attributes >= 3 (1/ln n must be < 1)")
        if self.x < 0:
            raise ValueError("x must be >= 0")
        if not 0.0 <= self.f_prob <= 1.0:
            raise ValueError(f"f_prob must be in [0, 1], got {self.f_prob}")
        if self.seed < 0:
            raise ValueError("seed must be a non-negative integer")

    @property
    def f_size(self) -> int:
        return self.n_attributes - self.u_size - self.r_size


def effective_probabilities(spec: MultiParamSpec) -> list[float]:
    """Resolved per-attribute cross probabilities, in attribute order."""
    m = spec.n_objects
    p_u = 1.0 if m == 0 else 1.0 - min(spec.x / m, 1.0)
    p_r = 1.0 / math.log(spec.n_attributes) if spec.r_size > 0 else 0.0
    probs = [p_u] * spec.u_size
    probs += [p_r] * spec.r_size
    probs += [spec.f_prob] * spec.f_size
    return probs


def _sample_columns(n_objects: int, n_attributes: int,
                    probs: list[float], seed: int) -> FormalContext:
    rows = [0] * n_objects
    for a in range(n_attributes):
        rng = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(a,))))
        draws = rng.random(n_objects)
        for o in np.flatnonzero(draws < probs[a]):
            rows[o] |= 1 << a
    return FormalContext.from_row_masks(n_objects, n_attributes, rows)


def gen_single(spec: SingleParamSpec) -> FormalContext:
    """Sample the single-parameter model; pure function of the spec."""
    return _sample_columns(spec.n_objects, spec.n_attributes,
                           [spec.p] * spec.n_attributes, spec.seed)


def gen_multi(spec: MultiParamSpec) -> FormalContext:
    """Sample the multi-parametric model; pure function of the spec."""
    return _sample_columns(spec.n_objects, spec.n_attributes,
                           effective_probabilities(spec), spec.seed)


# -- flat key-value serialization ------------------------------------------------


def spec_to_keyvalues(spec: SingleParamSpec | MultiParamSpec) -> list[str]:
    """`key=value` lines; embedded as header comments in generated files."""
    if isinstance(spec, SingleParamSpec):
        return [
            "model=single",
            f"objects={spec.n_objects}",
            f"attributes={spec.n_attributes}",
            f"p={spec.p!r}",
            f"seed={spec.seed}",
        ]
    lines = [
        "model=multi",
        f"objects={spec.n_objects}",
        f"attributes={spec.n_attributes}",
        f"u_size={spec.u_size}",
        f"r_size={spec.r_size}",
        f"x={spec.x!r}",
        f"f_prob={spec.f_prob!r}",
        f"seed={spec.seed}",
    ]
    probs = effective_probabilities(spec)
    lines.append("column_probs=" + ",".join(repr(p) for p in probs))
    return lines


def spec_from_keyvalues(text: str) -> SingleParamSpec | MultiParamSpec:
    """Parse the key-value form (one pair per line, '#' prefixes and
    blank lines ignored)."""
    pairs: dict[str, str] = {}
    for raw in text.split("\n"):
        line = raw.strip()
        if line.startswith("#"):
            line = line[1:].strip()
        if not line or "=" not in line:
            continue
        key, value = line.split("=", 1)
        pairs[key.strip()] = value.strip()
    model = pairs.get("model")
    if model == "single":
        return SingleParamSpec(
            n_objects=int(pairs["objects"]),
            n_attributes=int(pairs["attributes"]),
            p=float(pairs["p"]),
            seed=int(pairs["seed"]),
        )
    if model == "multi":
        return MultiParamSpec(
            n_objects=int(pairs["objects"]),
            n_attributes=int(pairs["attributes"]),
            u_size=int(pairs["u_size"]),
            r_size=int(pairs["r_size"]),
            x=float(pairs["x"]),
            f_prob=float(pairs["f_prob"]),
            seed=int(pairs["seed"]),
        )
    raise ValueError(f"unknown or missing model in key-value spec: {model!r}")
