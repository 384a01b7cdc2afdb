"""Bit-position helpers and the parent/sister navigation of the internal tree.

Bit positions are 1-indexed: the lowest bit is position 1.
"""

MAX_KEYS = 2 ** 31


def lssb_position(x: int) -> int:
    """Position of the least significant set bit of ``x`` (1-indexed)."""
    if x < 1:
        raise ValueError(f"lssb_position needs x >= 1, got {x}")
    return (x & -x).bit_length()


def mssb_position(x: int) -> int:
    """Position of the most significant set bit of ``x`` (1-indexed)."""
    if x < 1:
        raise ValueError(f"mssb_position needs x >= 1, got {x}")
    return x.bit_length()


def global_sister(n: int) -> int:
    return n ^ 1


def global_parent(n: int) -> int:
    return n >> 1
