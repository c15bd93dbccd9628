"""Sign and index conventions shared by the twisted layers.

Type AI uses ``theta_i = 1`` and ``i' = i``.  Type AII pairs the indices
``(1,2), (3,4), ...`` and uses ``theta_i = (-1)**i``.
"""

from __future__ import annotations

AI = "AI"
AII = "AII"
SIGN_TYPES = (AI, AII)


def check_sign(sign: str) -> str:
    if sign not in SIGN_TYPES:
        raise ValueError(f"unknown sign type {sign!r}; expected AI or AII")
    return sign


def theta(sign: str, i: int) -> int:
    if sign == AI:
        return 1
    return -1 if i % 2 else 1


def prime(sign: str, i: int) -> int:
    if sign == AI:
        return i
    return i - 1 if i % 2 == 0 else i + 1


def gmatrix(sign: str, n: int) -> list[list[int]]:
    """The matrix G = (delta_{i j'} theta_i)."""
    return [[theta(sign, i) if j == prime(sign, i) else 0
             for j in range(1, n + 1)] for i in range(1, n + 1)]


def lie_name(sign: str, n: int) -> str:
    return f"so_{n}" if sign == AI else f"sp_{n}"
