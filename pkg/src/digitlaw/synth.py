"""Seeded generation of digit-law-conforming samples and controlled
rounding-up manipulation.

The significand is sampled as 10**U with U uniform on [0, 1), which
makes the first-digit, second-digit, and first-two-digit laws all hold
exactly in distribution.  The generator is numpy's PCG64 (the
default_rng algorithm): named, seedable, and portable, so sampled
sequences are reproducible bit for bit and the algorithm is recorded in
report metadata.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass

import numpy as np

from .digits import DecimalValue, from_number, render, second_digit
from .errors import DomainError

GENERATOR_NAME = "numpy PCG64 (default_rng)"

_SCALE = 10 ** 14  # significands carry 15 significant digits


@dataclass(frozen=True)
class SynthConfig:
    """Parameters of one synthetic sample."""

    n: int
    seed: int
    exponent_range: tuple = (0, 6)
    negative_fraction: float = 0.0
    inject_rounding_strength: float = 0.0

    def __post_init__(self):
        n = operator.index(self.n)
        if n < 0:
            raise DomainError(f"sample size must be nonnegative, got {n}")
        operator.index(self.seed)
        lo, hi = self.exponent_range
        if operator.index(lo) > operator.index(hi):
            raise DomainError(f"empty exponent range {self.exponent_range!r}")
        for name in ("negative_fraction", "inject_rounding_strength"):
            p = float(getattr(self, name))
            if not 0.0 <= p <= 1.0:
                raise DomainError(f"{name} must lie in [0, 1], got {p}")


def sample_benford(config: SynthConfig):
    """Draw config.n values whose digits follow all three laws exactly.

    Deterministic given the seed.  The draw order is part of the
    contract: significand uniforms first, then exponents, then sign
    uniforms.  Significands are rounded to 15 significant digits to form
    the canonical digit strings.
    """
    n = operator.index(config.n)
    lo, hi = config.exponent_range
    rng = np.random.default_rng(config.seed)
    uniforms = rng.random(n)
    significands = 10.0 ** uniforms
    exponents = rng.integers(operator.index(lo), operator.index(hi) + 1, size=n)
    negatives = rng.random(n) < config.negative_fraction

    scaled = np.rint(significands * _SCALE).astype(np.int64)
    overflow = scaled >= 10 * _SCALE  # 9.99...9x rounded up to 10.0
    scaled[overflow] = _SCALE
    exponents = exponents + overflow.astype(np.int64)

    return [
        DecimalValue(-1 if neg else 1, str(s).rstrip("0"), e)
        for s, e, neg in zip(scaled.tolist(), exponents.tolist(), negatives.tolist())
    ]


def _round_up(value: DecimalValue) -> DecimalValue:
    first = int(value.digits[0])
    if first == 9:
        return DecimalValue(value.sign, "1", value.exponent + 1)
    return DecimalValue(value.sign, str(first + 1), value.exponent)


def inject_rounding(values, strength, seed):
    """Round second-digit-9 values up to the next round value with
    probability `strength`; leave everything else untouched.

    A significand d.9xx becomes d+1, and 9.9xx wraps to 1.0 with the
    exponent incremented.  Deterministic given the seed: one uniform is
    consumed per qualifying value, in sequence order.
    """
    strength = float(strength)
    if not 0.0 <= strength <= 1.0:
        raise DomainError(f"strength must lie in [0, 1], got {strength}")
    rng = np.random.default_rng(seed)
    out = []
    for raw in values:
        value = from_number(raw)
        if isinstance(value, DecimalValue) and second_digit(value) == 9 and rng.random() < strength:
            out.append(_round_up(value))
        else:
            out.append(value)
    return out


def generate(config: SynthConfig):
    """Sample per the config, then apply its injection strength (if any)
    with the same seed."""
    values = sample_benford(config)
    if config.inject_rounding_strength > 0.0:
        values = inject_rounding(values, config.inject_rounding_strength, config.seed)
    return values


def render_sample_csv(values, variable: str = "SYNTH") -> str:
    """Long-form panel CSV that load_panel ingests unchanged."""
    lines = ["company,year,variable,value"]
    for i, value in enumerate(values):
        lines.append(f"S{i:07d},2009,{variable},{render(from_number(value))}")
    return "\n".join(lines) + "\n"
