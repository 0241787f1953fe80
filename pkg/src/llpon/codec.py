"""Cantor pairing and the list codec used for tree shapes and K2 queries.

The list codec is fixed repo-wide::

    code([])        = 0
    code(x :: rest) = pair(x, code(rest)) + 1

Since ``pair(a, b) >= max(a, b)`` the code of a non-empty list is strictly
greater than each element and than the code of its tail.  Every natural
number decodes to exactly one list.
"""

from math import isqrt
from typing import Sequence


def pair(a: int, b: int) -> int:
    s = a + b
    return s * (s + 1) // 2 + b


def unpair(z: int) -> tuple[int, int]:
    if z < 0:
        raise ValueError("cannot unpair a negative number")
    w = (isqrt(8 * z + 1) - 1) // 2
    b = z - w * (w + 1) // 2
    return w - b, b


def list_encode(xs: Sequence[int]) -> int:
    code = 0
    for x in reversed(xs):
        if x < 0:
            raise ValueError("list codec only handles naturals")
        code = pair(x, code) + 1
    return code


def list_decode(code: int) -> list[int]:
    out = []
    while code:
        x, code = unpair(code - 1)
        out.append(x)
    return out
