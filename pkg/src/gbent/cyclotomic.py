"""Exact arithmetic in Z[zeta_q] for q = 2**k.

For q = 2**k the ring Z[zeta_q] is Z[x]/(x**(q/2) + 1): the power basis
{1, z, ..., z**(q/2 - 1)} is a free Z-basis and the single reduction rule
z**(q/2) = -1 keeps every element canonical.  Two values are equal iff
their coefficient tuples are equal, so spectral flatness tests carry no
floating-point ambiguity.  Coefficients are plain Python ints, hence
arbitrary precision.

k=1 degenerates to Z itself (z = -1, one coefficient); every operation
still works so the classical q=2 theory is the same code path.
"""

from __future__ import annotations

import cmath
from typing import Iterable, Optional


def basis_len(k: int) -> int:
    """Length of the power basis: q/2, except 1 when k = 1."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return max(1, 1 << (k - 1))


class CyclotomicInteger:
    """An element of Z[zeta_q], q = 2**k, in the canonical power basis."""

    __slots__ = ("k", "coeffs")

    def __init__(self, k: int, coeffs: Iterable[int]):
        m = basis_len(k)
        cs = tuple(int(c) for c in coeffs)
        if len(cs) != m:
            raise ValueError(f"need {m} coefficients for k={k}, got {len(cs)}")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, name, value):
        raise AttributeError("CyclotomicInteger is immutable")

    # --- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, k: int) -> "CyclotomicInteger":
        return cls(k, (0,) * basis_len(k))

    @classmethod
    def one(cls, k: int) -> "CyclotomicInteger":
        return cls.from_int(1, k)

    @classmethod
    def from_int(cls, value: int, k: int) -> "CyclotomicInteger":
        cs = [0] * basis_len(k)
        cs[0] = int(value)
        return cls(k, cs)

    @classmethod
    def root(cls, a: int, k: int) -> "CyclotomicInteger":
        """zeta**a for 0 <= a < q: basis vector e_a, or -e_{a - q/2}."""
        q = 1 << k
        if not 0 <= a < q:
            raise ValueError(f"exponent {a} out of range for q={q}")
        m = basis_len(k)
        cs = [0] * m
        if k == 1:
            cs[0] = 1 if a == 0 else -1
        elif a < m:
            cs[a] = 1
        else:
            cs[a - m] = -1
        return cls(k, cs)

    # --- ring operations ---------------------------------------------------

    def _check_same_ring(self, other: "CyclotomicInteger") -> None:
        if self.k != other.k:
            raise ValueError(f"mixed rings: k={self.k} vs k={other.k}")

    def __add__(self, other: "CyclotomicInteger") -> "CyclotomicInteger":
        self._check_same_ring(other)
        return CyclotomicInteger(self.k, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CyclotomicInteger") -> "CyclotomicInteger":
        self._check_same_ring(other)
        return CyclotomicInteger(self.k, (a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CyclotomicInteger":
        return CyclotomicInteger(self.k, (-a for a in self.coeffs))

    def __mul__(self, other) -> "CyclotomicInteger":
        if isinstance(other, int):
            return CyclotomicInteger(self.k, (a * other for a in self.coeffs))
        if not isinstance(other, CyclotomicInteger):
            return NotImplemented
        self._check_same_ring(other)
        m = len(self.coeffs)
        out = [0] * m
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b == 0:
                    continue
                d = i + j
                if d < m:
                    out[d] += a * b
                else:
                    out[d - m] -= a * b  # z**m = -1
        return CyclotomicInteger(self.k, out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self == CyclotomicInteger.from_int(other, self.k)
        if not isinstance(other, CyclotomicInteger):
            return NotImplemented
        return self.k == other.k and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.k, self.coeffs))

    def __bool__(self) -> bool:
        return any(self.coeffs)

    # --- involutions and readouts ------------------------------------------

    def conjugate(self) -> "CyclotomicInteger":
        """Image under zeta -> zeta**(-1); matches complex conjugation."""
        m = len(self.coeffs)
        if self.k == 1:
            return self
        out = [0] * m
        out[0] = self.coeffs[0]
        for j in range(1, m):
            out[m - j] -= self.coeffs[j]  # z**(-j) = z**(q-j) = -z**(m-j)
        return CyclotomicInteger(self.k, out)

    def norm_squared(self) -> "CyclotomicInteger":
        """x * conjugate(x); a rational integer when all z-terms vanish."""
        return self * self.conjugate()

    def is_integer(self) -> Optional[int]:
        """The constant coefficient iff every other coefficient is zero."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def to_complex(self) -> complex:
        q = 1 << self.k
        return sum(
            c * cmath.exp(2j * cmath.pi * j / q)
            for j, c in enumerate(self.coeffs)
            if c
        ) + 0j

    # --- rendering ----------------------------------------------------------

    def __str__(self) -> str:
        terms = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if j == 0:
                terms.append(str(c))
            elif j == 1:
                terms.append(f"{c}*z")
            else:
                terms.append(f"{c}*z^{j}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"CyclotomicInteger(k={self.k}, coeffs={self.coeffs})"

    def to_json_dict(self) -> dict:
        return {"k": self.k, "coeffs": list(self.coeffs)}
