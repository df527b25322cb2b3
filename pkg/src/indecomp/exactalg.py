"""Exact matrices over prime fields and exact rationals.

Matrices are stored as read-only ``int64`` numpy arrays with entries in
``[0, p)``.  All elimination is deterministic: pivots are the first nonzero
entry scanning rows top to bottom, columns left to right.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

DEFAULT_PRIME = 101

# Largest modulus for which a length-n dot product stays inside int64.
_INT64_MAX = np.iinfo(np.int64).max


class NotInvertible(ArithmeticError):
    """Raised when a square matrix has rank below its size."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise ValueError(f"field characteristic must be prime, got {p!r}")
    if p >= 2**31:
        raise ValueError(f"prime {p} too large for int64 arithmetic")
    return int(p)


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse a decimal or fraction literal exactly, e.g. ``"1.86"`` -> 93/50."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    return Fraction(str(text).strip())


class FieldMatrix:
    """Immutable matrix over F_p."""

    __slots__ = ("p", "_a")

    def __init__(self, entries, p: int = DEFAULT_PRIME, *, rows: int | None = None, cols: int | None = None):
        p = check_prime(p)
        a = np.array(entries, dtype=np.int64)
        if a.size == 0:
            r = rows if rows is not None else (a.shape[0] if a.ndim >= 1 else 0)
            c = cols if cols is not None else (a.shape[1] if a.ndim == 2 else 0)
            a = np.zeros((r, c), dtype=np.int64)
        if a.ndim != 2:
            raise ValueError(f"matrix entries must be two-dimensional, got shape {a.shape}")
        if (rows is not None and a.shape[0] != rows) or (cols is not None and a.shape[1] != cols):
            raise ValueError(f"declared shape ({rows}, {cols}) does not match entries {a.shape}")
        a = np.mod(a, p)
        a.setflags(write=False)
        self.p = p
        self._a = a

    @classmethod
    def _wrap(cls, a: np.ndarray, p: int) -> "FieldMatrix":
        m = object.__new__(cls)
        a = np.ascontiguousarray(a, dtype=np.int64)
        a.setflags(write=False)
        m.p = p
        m._a = a
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int = DEFAULT_PRIME) -> "FieldMatrix":
        return cls._wrap(np.zeros((rows, cols), dtype=np.int64), check_prime(p))

    @classmethod
    def identity(cls, n: int, p: int = DEFAULT_PRIME) -> "FieldMatrix":
        return cls._wrap(np.eye(n, dtype=np.int64), check_prime(p))

    @property
    def array(self) -> np.ndarray:
        return self._a

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def entries(self) -> list[list[int]]:
        return self._a.tolist()

    @property
    def T(self) -> "FieldMatrix":
        return FieldMatrix._wrap(self._a.T, self.p)

    def __repr__(self) -> str:
        return f"FieldMatrix(p={self.p}, shape={self.shape}, entries={self.entries})"

    def _same_field(self, other: "FieldMatrix") -> None:
        if not isinstance(other, FieldMatrix):
            raise TypeError(f"expected FieldMatrix, got {type(other).__name__}")
        if other.p != self.p:
            raise ValueError(f"field mismatch: F_{self.p} vs F_{other.p}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return self.p == other.p and self.shape == other.shape and bool(np.array_equal(self._a, other._a))

    def __hash__(self) -> int:
        return hash((self.p, self.shape, self._a.tobytes()))

    def __add__(self, other: "FieldMatrix") -> "FieldMatrix":
        self._same_field(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return FieldMatrix._wrap((self._a + other._a) % self.p, self.p)

    def __sub__(self, other: "FieldMatrix") -> "FieldMatrix":
        self._same_field(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} - {other.shape}")
        return FieldMatrix._wrap((self._a - other._a) % self.p, self.p)

    def __neg__(self) -> "FieldMatrix":
        return FieldMatrix._wrap((-self._a) % self.p, self.p)

    def __mul__(self, scalar: int) -> "FieldMatrix":
        if not isinstance(scalar, (int, np.integer)):
            return NotImplemented
        return FieldMatrix._wrap((self._a * (int(scalar) % self.p)) % self.p, self.p)

    __rmul__ = __mul__

    def __matmul__(self, other: "FieldMatrix") -> "FieldMatrix":
        self._same_field(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return FieldMatrix._wrap(matmul_mod(self._a, other._a, self.p), self.p)

    def is_zero(self) -> bool:
        return not self._a.any()

    def is_identity(self) -> bool:
        return self.rows == self.cols and bool(np.array_equal(self._a, np.eye(self.rows, dtype=np.int64)))

    def rank(self) -> int:
        return rank(self)

    def to_json(self) -> dict:
        return {"p": self.p, "rows": self.rows, "cols": self.cols, "entries": self.entries}

    @classmethod
    def from_json(cls, data: dict, p: int | None = None) -> "FieldMatrix":
        mp = data.get("p", p)
        if mp is None:
            raise ValueError("matrix JSON lacks a field characteristic")
        if p is not None and mp != p:
            raise ValueError(f"matrix over F_{mp} where F_{p} expected")
        return cls(data["entries"], mp, rows=data["rows"], cols=data["cols"])


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    inner = a.shape[-1]
    if inner == 0:
        return np.zeros(a.shape[:-1] + b.shape[-1:], dtype=np.int64)
    if inner * (p - 1) ** 2 < _INT64_MAX:
        return (a @ b) % p
    # chunk the inner dimension so partial sums never overflow
    step = max(1, _INT64_MAX // ((p - 1) ** 2) - 1)
    out = np.zeros(a.shape[:-1] + b.shape[-1:], dtype=np.int64)
    for s in range(0, inner, step):
        out = (out + (a[..., s:s + step] @ b[s:s + step]) % p) % p
    return out


def _inv_mod(x: int, p: int) -> int:
    return pow(int(x), p - 2, p)


def rref_array(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of an integer array mod p, with pivot columns."""
    a = np.array(a, dtype=np.int64) % p
    m, n = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        piv = int(a[r, c])
        if piv != 1:
            a[r] = (a[r] * _inv_mod(piv, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rref(m: FieldMatrix) -> tuple[FieldMatrix, list[int]]:
    r, piv = rref_array(m.array, m.p)
    return FieldMatrix._wrap(r, m.p), piv


def rank(m: FieldMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    # eliminate along the shorter side
    a = m.array if m.rows <= m.cols else m.array.T
    return len(rref_array(a, m.p)[1])


def kernel_array(a: np.ndarray, p: int) -> np.ndarray:
    """Columns form a basis of the right kernel of ``a`` (mod p)."""
    m, n = a.shape
    if m == 0:
        return np.eye(n, dtype=np.int64)
    r, piv = rref_array(a, p)
    free = [c for c in range(n) if c not in set(piv)]
    basis = np.zeros((n, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        basis[f, j] = 1
        for i, pc in enumerate(piv):
            basis[pc, j] = (-r[i, f]) % p
    return basis


def kernel_basis(m: FieldMatrix) -> FieldMatrix:
    return FieldMatrix._wrap(kernel_array(m.array, m.p), m.p)


def try_inverse(m: FieldMatrix) -> FieldMatrix:
    """Inverse of a square matrix; raises NotInvertible when singular."""
    if m.rows != m.cols:
        raise ValueError(f"inverse of non-square matrix {m.shape}")
    n = m.rows
    aug = np.concatenate([m.array, np.eye(n, dtype=np.int64)], axis=1)
    r, piv = rref_array(aug, m.p)
    if piv[:n] != list(range(n)):
        raise NotInvertible(f"matrix of shape {m.shape} has rank {rank(m)}")
    return FieldMatrix._wrap(r[:, n:], m.p)


def is_invertible(m: FieldMatrix) -> bool:
    return m.rows == m.cols and rank(m) == m.rows


def batch_invertible(blocks: np.ndarray, p: int) -> np.ndarray:
    """Invertibility of a stack of square matrices, shape ``(B, n, n)``."""
    b, n, _ = blocks.shape
    ok = np.ones(b, dtype=bool)
    if n == 0:
        return ok
    a = blocks % p
    idx = np.arange(b)
    inv_table = np.array([0] + [_inv_mod(x, p) for x in range(1, p)], dtype=np.int64)
    for c in range(n):
        sub = a[:, c:, c] != 0
        has = sub.any(axis=1)
        ok &= has
        prow = c + np.argmax(sub, axis=1)
        # swap pivot row into place
        top = a[idx, c].copy()
        a[idx, c] = a[idx, prow]
        a[idx, prow] = top
        pv = inv_table[a[:, c, c]]
        a[:, c] = (a[:, c] * pv[:, None]) % p
        factors = a[:, c + 1:, c].copy()
        a[:, c + 1:] = (a[:, c + 1:] - factors[:, :, None] * a[:, c, None, :]) % p
    return ok


def is_nilpotent(m: FieldMatrix) -> bool:
    if m.rows != m.cols:
        raise ValueError("nilpotency needs a square matrix")
    power = m
    for _ in range(max(1, m.rows.bit_length())):
        if power.is_zero():
            return True
        power = power @ power
    return power.is_zero()


def jordan_cell(d: int, lam: int, p: int = DEFAULT_PRIME) -> FieldMatrix:
    """d x d matrix with ``lam`` on the diagonal and 1 on the superdiagonal."""
    if d < 1:
        raise ValueError(f"Jordan cell size must be positive, got {d}")
    a = np.eye(d, dtype=np.int64) * (lam % p) + np.eye(d, k=1, dtype=np.int64)
    return FieldMatrix._wrap(a % p, check_prime(p))


def block(rows: Sequence[Sequence[FieldMatrix]]) -> FieldMatrix:
    """Assemble a block matrix; every block must already have its final shape."""
    p = rows[0][0].p
    return FieldMatrix._wrap(np.block([[b.array for b in row] for row in rows]), p)


def hstack(mats: Iterable[FieldMatrix]) -> FieldMatrix:
    mats = list(mats)
    return FieldMatrix._wrap(np.concatenate([m.array for m in mats], axis=1), mats[0].p)


def vstack(mats: Iterable[FieldMatrix]) -> FieldMatrix:
    mats = list(mats)
    return FieldMatrix._wrap(np.concatenate([m.array for m in mats], axis=0), mats[0].p)


def direct_sum_matrix(a: FieldMatrix, b: FieldMatrix) -> FieldMatrix:
    out = np.zeros((a.rows + b.rows, a.cols + b.cols), dtype=np.int64)
    out[: a.rows, : a.cols] = a.array
    out[a.rows:, a.cols:] = b.array
    return FieldMatrix._wrap(out, a.p)


def solve(a: np.ndarray, rhs: np.ndarray, p: int) -> np.ndarray | None:
    """One solution of ``a x = rhs`` (columns of rhs solved jointly), or None."""
    m, n = a.shape
    aug = np.concatenate([a % p, rhs % p], axis=1)
    r, piv = rref_array(aug, p)
    if any(c >= n for c in piv):
        return None
    x = np.zeros((n, rhs.shape[1]), dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = r[i, n:]
    return x
