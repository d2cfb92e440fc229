"""Prime-field arithmetic and binomial/multinomial coefficients modulo a prime."""

from __future__ import annotations

from functools import lru_cache
from typing import Hashable, Sequence

import numpy as np

from .errors import FieldError

MAX_PRIME = 97


@lru_cache(maxsize=None)
def _is_prime(value: int) -> bool:
    if value < 2:
        return False
    i = 2
    while i * i <= value:
        if value % i == 0:
            return False
        i += 1
    return True


class Prime(int):
    """An integer certified prime by trial division."""

    def __new__(cls, value):
        if isinstance(value, Prime):
            return value
        if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
            raise FieldError(f"prime must be an integer, got {value!r}")
        value = int(value)
        if not _is_prime(value):
            raise FieldError(f"{value} is not prime")
        if value > MAX_PRIME:
            raise FieldError(f"prime {value} exceeds desk-scale cap {MAX_PRIME}")
        return super().__new__(cls, value)


class Fp:
    __slots__ = ("residue", "modulus")

    def __init__(self, value: int, modulus: int):
        self.modulus = Prime(modulus)
        self.residue = int(value) % self.modulus

    def _coerce(self, other) -> int:
        if isinstance(other, Fp):
            if other.modulus != self.modulus:
                raise FieldError(
                    f"modulus mismatch: F_{self.modulus} vs F_{other.modulus}"
                )
            return other.residue
        if isinstance(other, (int, np.integer)) and not isinstance(other, bool):
            return int(other) % self.modulus
        return NotImplemented

    def _new(self, value: int) -> "Fp":
        out = Fp.__new__(Fp)
        out.modulus = self.modulus
        out.residue = value % self.modulus
        return out

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.residue + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.residue - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(o - self.residue)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.residue * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.residue)

    def inv(self) -> "Fp":
        if self.residue == 0:
            raise FieldError("inversion of zero")
        return self._new(pow(self.residue, self.modulus - 2, self.modulus))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * self._new(o).inv()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inv() ** (-exponent)
        return self._new(pow(self.residue, exponent, self.modulus))

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.modulus == other.modulus and self.residue == other.residue
        if isinstance(other, int):
            return self.residue == other % self.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.residue, int(self.modulus)))

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"Fp({self.residue}, {self.modulus})"


def base_digits(m: int, p: int) -> list[int]:
    digits = []
    while m:
        m, r = divmod(m, p)
        digits.append(r)
    return digits


@lru_cache(maxsize=None)
def _small_binom_table(p: int) -> tuple[tuple[int, ...], ...]:
    table = [[0] * p for _ in range(p)]
    for a in range(p):
        table[a][0] = 1
        for b in range(1, a + 1):
            table[a][b] = (table[a - 1][b - 1] + table[a - 1][b]) % p if a else 0
    return tuple(tuple(row) for row in table)


def binom_mod(m: int, s: int, p: int) -> int:
    """C(m, s) mod p by Lucas' theorem. Negative arguments give 0."""
    if s < 0 or m < 0 or s > m:
        return 0
    table = _small_binom_table(int(p))
    out = 1
    while s:
        m, mi = divmod(m, p)
        s, si = divmod(s, p)
        if si > mi:
            return 0
        out = out * table[mi][si] % p
    return out


def multinom_mod(m: int, parts: Sequence[int], p: int) -> int:
    """Multinomial coefficient mod p as the telescoping product of binomials.

    Returns 0 when a part is negative or the parts do not sum to ``m``.
    """
    if any(x < 0 for x in parts) or sum(parts) != m:
        return 0
    out = 1
    running = 0
    for x in parts:
        running += x
        out = out * binom_mod(running, x, p) % p
        if not out:
            return 0
    return out


def binom_period_bound(s: int, p: int) -> int:
    """Smallest power p**k with p**k > s; a period of m -> C(m, s) mod p."""
    bound = 1
    while bound <= s:
        bound *= p
    return bound


def smallest_exponent_above(base: int, threshold: int) -> int:
    k, power = 0, 1
    while power <= threshold:
        power *= base
        k += 1
    return k


def is_period(values: Sequence[Hashable], r: int) -> bool:
    return all(values[m + r] == values[m] for m in range(len(values) - r))


def seq_min_period(values: Sequence[Hashable]) -> int:
    """Smallest r >= 1 with values[m + r] == values[m] for every valid m.

    For a sequence indexed 0..n this is at most n + 1, which is returned when
    nothing shorter works.
    """
    values = list(values)
    if not values:
        raise ValueError("period of an empty sequence is undefined")
    for r in range(1, len(values)):
        if is_period(values, r):
            return r
    return len(values)


def solve_mod(a, b, q: int) -> np.ndarray | None:
    """Solve ``a @ x = b`` over F_q by Gaussian elimination.

    Pivots are taken column by column in index order (first usable row);
    free variables are set to 0. Returns None when the system is infeasible.
    """
    a = np.asarray(a, dtype=np.int64) % q
    b = np.asarray(b, dtype=np.int64) % q
    rows, cols = a.shape
    aug = np.concatenate([a, b.reshape(-1, 1)], axis=1)
    pivots: list[int] = []
    row = 0
    for col in range(cols):
        if row == rows:
            break
        nz = np.nonzero(aug[row:, col])[0]
        if nz.size == 0:
            continue
        pr = row + int(nz[0])
        if pr != row:
            aug[[row, pr]] = aug[[pr, row]]
        inv = pow(int(aug[row, col]), q - 2, q)
        aug[row] = aug[row] * inv % q
        rows_nz = np.nonzero(aug[:, col])[0]
        rows_nz = rows_nz[rows_nz != row]
        if rows_nz.size:
            sub = aug[rows_nz, col:] - np.outer(aug[rows_nz, col], aug[row, col:])
            aug[rows_nz, col:] = sub % q
        pivots.append(col)
        row += 1
    if np.any(aug[row:, cols] != 0):
        return None
    x = np.zeros(cols, dtype=np.int64)
    for i, col in enumerate(pivots):
        x[col] = aug[i, cols]
    return x
