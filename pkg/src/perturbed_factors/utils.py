from __future__ import annotations

import math
from collections.abc import Iterable, Iterator
from decimal import Decimal
from fractions import Fraction

from .errors import ParameterError

Rational = Fraction | int | float | str | Decimal


def as_fraction(value: Rational) -> Fraction:
    """
    Coerce a user-supplied probability or ratio into an exact rational.

    Strings may be written as ``"p/q"`` or as a decimal. Floats are read through
    their shortest repr so ``0.1`` becomes ``1/10`` rather than the binary value.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParameterError(f"expected a rational number, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ParameterError(f"expected a finite rational number, got {value!r}")
        return Fraction(repr(value))
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ParameterError(f"cannot read {value!r} as a rational number") from e


def format_fraction(value: Fraction) -> str:
    """Render as the ``"p/q"`` form used by every JSON artefact."""
    return f"{value.numerator}/{value.denominator}"


def iter_bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def low_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def canonical(vertices: Iterable[int], n: int) -> tuple[int, ...]:
    """
    Sort and deduplicate a vertex-set argument, rejecting labels outside ``[0, n)``.
    """
    out = sorted(set(vertices))
    if out and (out[0] < 0 or out[-1] >= n):
        bad = out[0] if out[0] < 0 else out[-1]
        raise ParameterError(f"vertex {bad} is out of range for a graph on {n} vertices")
    return tuple(out)


def lcm_all(values: Iterable[int]) -> int:
    result = 1
    for v in values:
        result = result * v // math.gcd(result, v)
    return result
