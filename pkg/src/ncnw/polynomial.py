"""Dense polynomials in t with exact integer coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True)
class Polynomial:
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @classmethod
    def of(cls, coeffs: Iterable[int]) -> Polynomial:
        return cls(tuple(coeffs))

    @classmethod
    def monomial(cls, power: int, coeff: int = 1) -> Polynomial:
        return cls((0,) * power + (coeff,))

    @classmethod
    def from_powers(cls, powers: Iterable[int]) -> Polynomial:
        """Sum of t**p over the given exponents."""
        c: list[int] = []
        for p in powers:
            if p >= len(c):
                c.extend([0] * (p + 1 - len(c)))
            c[p] += 1
        return cls(tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, power: int) -> int:
        return self.coeffs[power] if 0 <= power < len(self.coeffs) else 0

    def __add__(self, other: Polynomial) -> Polynomial:
        size = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(tuple(self[i] + other[i] for i in range(size)))

    def __mul__(self, other: Polynomial | int) -> Polynomial:
        if isinstance(other, int):
            return Polynomial(tuple(other * x for x in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Polynomial:
        out = Polynomial((1,))
        for _ in range(e):
            out = out * self
        return out

    def shift(self, by: int = 1) -> Polynomial:
        """Multiply by t**by."""
        return Polynomial((0,) * by + self.coeffs) if self.coeffs else self

    def __call__(self, t: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def first_mismatch(self, other: Polynomial) -> int | None:
        for i in range(max(len(self.coeffs), len(other.coeffs))):
            if self[i] != other[i]:
                return i
        return None

    def to_json(self) -> dict:
        return {"coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> Polynomial:
        return cls(tuple(int(c) for c in data["coeffs"]))

    def __str__(self) -> str:
        terms = []
        for p, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if p == 0 else ("t" if p == 1 else f"t^{p}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}{mono}")
        return " + ".join(terms) if terms else "0"


T = Polynomial((0, 1))
ONE = Polynomial((1,))
