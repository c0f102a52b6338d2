"""Even-graded integer polynomials in ``t``.

A :class:`PoincarePoly` stores coefficients ``a_q`` of ``t^(2q)``; all
degrees exposed to callers (truncation bounds, ``degree``) are t-degrees.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = ["PoincarePoly", "DegreeTooHigh", "T2", "ONE", "ZERO"]


class DegreeTooHigh(ValueError):
    pass


def _strip(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = [int(a) for a in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class PoincarePoly:
    """``sum(a_q * t**(2*q))`` with arbitrary-precision integer coefficients."""

    coeffs: tuple[int, ...] = ()

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _strip(coeffs))

    @classmethod
    def monomial(cls, q: int, a: int = 1) -> "PoincarePoly":
        return cls([0] * q + [a])

    def __getitem__(self, q: int) -> int:
        return self.coeffs[q] if 0 <= q < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def degree(self) -> int:
        """t-degree; ``-1`` for the zero polynomial."""
        return 2 * (len(self.coeffs) - 1) if self.coeffs else -1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return self.leading == 1

    def is_nonnegative(self) -> bool:
        return all(a >= 0 for a in self.coeffs)

    def __add__(self, other: "PoincarePoly | int") -> "PoincarePoly":
        other = _coerce(other)
        n = max(len(self), len(other))
        return PoincarePoly(self[q] + other[q] for q in range(n))

    __radd__ = __add__

    def __neg__(self) -> "PoincarePoly":
        return PoincarePoly(-a for a in self.coeffs)

    def __sub__(self, other: "PoincarePoly | int") -> "PoincarePoly":
        return self + (-_coerce(other))

    def __rsub__(self, other: "PoincarePoly | int") -> "PoincarePoly":
        return _coerce(other) - self

    def __mul__(self, other: "PoincarePoly | int") -> "PoincarePoly":
        other = _coerce(other)
        if not self or not other:
            return ZERO
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return PoincarePoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "PoincarePoly":
        if k < 0:
            raise ValueError("negative power")
        out = ONE
        for _ in range(k):
            out = out * self
        return out

    def truncate_below(self, j: int) -> "PoincarePoly":
        """Keep exactly the terms of t-degree ``< j``."""
        if j < 0:
            raise ValueError("truncation bound must be >= 0")
        return PoincarePoly(a for q, a in enumerate(self.coeffs) if 2 * q < j)

    def duality_transform(self, n: int) -> "PoincarePoly":
        """``t^(2n) * p(1/t)``."""
        if self.degree > 2 * n:
            raise DegreeTooHigh(f"degree {self.degree} exceeds 2n = {2 * n}")
        return PoincarePoly(self[n - q] for q in range(n + 1))

    def is_palindromic(self, n: int) -> bool:
        return self.degree <= 2 * n and self.duality_transform(n) == self

    def as_h_vector(self) -> tuple[int, ...]:
        return self.coeffs if self.coeffs else (0,)

    def g_vector(self, n: int) -> tuple[int, ...]:
        return tuple(self[q] - (self[q - 1] if q else 0) for q in range(n // 2 + 1))

    def series_div(self, k: int, upto_q: int) -> list[int]:
        """Coefficients of ``self / (1 - t^2)^k`` for q = 0..upto_q."""
        out = [self[q] for q in range(upto_q + 1)]
        for _ in range(k):
            for q in range(1, upto_q + 1):
                out[q] += out[q - 1]
        return out

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    @classmethod
    def from_json(cls, data: Sequence[int]) -> "PoincarePoly":
        return cls(data)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for q, a in enumerate(self.coeffs):
            if a == 0:
                continue
            mag = abs(a)
            if q == 0:
                body = str(mag)
            else:
                power = f"t^{2 * q}"
                body = power if mag == 1 else f"{mag}{power}"
            if not parts:
                parts.append(body if a > 0 else f"-{body}")
            else:
                parts.append(("+ " if a > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"PoincarePoly({list(self.coeffs)})"


def _coerce(x: "PoincarePoly | int") -> PoincarePoly:
    if isinstance(x, PoincarePoly):
        return x
    if isinstance(x, int):
        return PoincarePoly([x])
    raise TypeError(f"cannot combine PoincarePoly with {type(x).__name__}")


ZERO = PoincarePoly()
ONE = PoincarePoly([1])
T2 = PoincarePoly([0, 1])
