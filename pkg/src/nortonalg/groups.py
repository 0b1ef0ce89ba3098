"""Finite abelian groups Z_e^n and Mat_{d,e}(F_q), with their linear characters.

Group elements are plain tuples of residues (matrices flattened row-major).
Characters are indexed by group elements: the character indexed by u takes
x to w^(u.x) where u.x is the entrywise dot product mod the modulus.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .cyclotomic import Cyclotomic, root_power
from .errors import BudgetExceededError

Word = tuple[int, ...]

DEFAULT_ENUM_BUDGET = 2**20


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    k = 2
    while k * k <= m:
        if m % k == 0:
            return False
        k += 1
    return True


class WordGroup:
    """Z_e^n: words of length n over residues mod e, added entrywise."""

    def __init__(self, n: int, e: int) -> None:
        if n < 1:
            raise ValueError(f"word length must be >= 1, got {n}")
        if e < 2:
            raise ValueError(f"alphabet modulus must be >= 2, got {e}")
        self.n = n
        self.e = e

    @property
    def length(self) -> int:
        return self.n

    @property
    def modulus(self) -> int:
        return self.e

    @property
    def order(self) -> int:
        return self.e**self.n

    def zero(self) -> Word:
        return (0,) * self.n

    def _check(self, x: Word) -> None:
        if len(x) != self.n:
            raise ValueError(f"element length {len(x)} does not match group length {self.n}")

    def add(self, x: Word, y: Word) -> Word:
        self._check(x)
        self._check(y)
        e = self.e
        return tuple((a + b) % e for a, b in zip(x, y))

    def neg(self, x: Word) -> Word:
        self._check(x)
        e = self.e
        return tuple((-a) % e for a in x)

    def dot(self, u: Word, x: Word) -> int:
        """Exponent of the character indexed by u at x, an integer mod e."""
        self._check(u)
        self._check(x)
        return sum(a * b for a, b in zip(u, x)) % self.e

    def support(self, x: Word) -> tuple[int, ...]:
        """1-based positions of the nonzero entries."""
        return tuple(j + 1 for j, a in enumerate(x) if a)

    def weight(self, x: Word) -> int:
        return sum(1 for a in x if a)

    def elements(self, budget: int | None = None) -> list[Word]:
        limit = DEFAULT_ENUM_BUDGET if budget is None else budget
        if self.order > limit:
            raise BudgetExceededError(
                f"group order {self.order} exceeds enumeration budget {limit}")
        return _word_elements(self.n, self.e)

    def character_value(self, u: Word, x: Word) -> Cyclotomic:
        return root_power(self.e, self.dot(u, x))

    def __eq__(self, other) -> bool:
        return isinstance(other, WordGroup) and (self.n, self.e) == (other.n, other.e)

    def __hash__(self) -> int:
        return hash(("WordGroup", self.n, self.e))

    def __repr__(self) -> str:
        return f"WordGroup(n={self.n}, e={self.e})"


@lru_cache(maxsize=None)
def _word_elements(n: int, e: int) -> list[Word]:
    out: list[Word] = [()]
    for _ in range(n):
        out = [w + (a,) for w in out for a in range(e)]
    return out


class MatrixGroup:
    """Additive group of rows x cols matrices over F_q (prime q), flattened row-major."""

    def __init__(self, rows: int, cols: int, q: int) -> None:
        if rows < 1 or cols < 1:
            raise ValueError(f"matrix shape must be positive, got {rows}x{cols}")
        if not is_prime(q):
            raise ValueError(f"matrix group requires a prime modulus, got {q}")
        self.rows = rows
        self.cols = cols
        self.q = q

    @property
    def length(self) -> int:
        return self.rows * self.cols

    @property
    def modulus(self) -> int:
        return self.q

    @property
    def order(self) -> int:
        return self.q ** (self.rows * self.cols)

    def zero(self) -> Word:
        return (0,) * self.length

    def _check(self, x: Word) -> None:
        if len(x) != self.length:
            raise ValueError(
                f"element length {len(x)} does not match matrix size {self.length}")

    def add(self, x: Word, y: Word) -> Word:
        self._check(x)
        self._check(y)
        q = self.q
        return tuple((a + b) % q for a, b in zip(x, y))

    def neg(self, x: Word) -> Word:
        self._check(x)
        q = self.q
        return tuple((-a) % q for a in x)

    def dot(self, u: Word, x: Word) -> int:
        """tr(u^t x) mod q, which is the entrywise dot of the flattened matrices."""
        self._check(u)
        self._check(x)
        return sum(a * b for a, b in zip(u, x)) % self.q

    def support(self, x: Word) -> tuple[int, ...]:
        return tuple(j + 1 for j, a in enumerate(x) if a)

    def weight(self, x: Word) -> int:
        return sum(1 for a in x if a)

    def as_matrix(self, x: Word) -> tuple[tuple[int, ...], ...]:
        self._check(x)
        c = self.cols
        return tuple(x[r * c:(r + 1) * c] for r in range(self.rows))

    def flatten(self, m: Sequence[Sequence[int]]) -> Word:
        return tuple(entry % self.q for row in m for entry in row)

    def elements(self, budget: int | None = None) -> list[Word]:
        limit = DEFAULT_ENUM_BUDGET if budget is None else budget
        if self.order > limit:
            raise BudgetExceededError(
                f"group order {self.order} exceeds enumeration budget {limit}")
        return _word_elements(self.length, self.q)

    def character_value(self, u: Word, x: Word) -> Cyclotomic:
        return root_power(self.q, self.dot(u, x))

    def __eq__(self, other) -> bool:
        return isinstance(other, MatrixGroup) and (
            (self.rows, self.cols, self.q) == (other.rows, other.cols, other.q))

    def __hash__(self) -> int:
        return hash(("MatrixGroup", self.rows, self.cols, self.q))

    def __repr__(self) -> str:
        return f"MatrixGroup({self.rows}x{self.cols}, q={self.q})"


Group = WordGroup | MatrixGroup


def enumerate_elements(group: Group, budget: int | None = None) -> list[Word]:
    """All group elements in lexicographic order on entry vectors."""
    return group.elements(budget)


def character_table(group: Group, u: Word, domain: Sequence[Word] | None = None) -> list[Cyclotomic]:
    """Values of the character indexed by u over the given domain (default: all of G)."""
    xs = group.elements() if domain is None else domain
    return [group.character_value(u, x) for x in xs]


def inner_product(phi: Sequence[Cyclotomic], psi: Sequence[Cyclotomic]) -> Cyclotomic:
    """Hermitian inner product (1/|G|) sum of phi(g) * conj(psi(g)) over the domain."""
    if len(phi) != len(psi):
        raise ValueError(f"table length mismatch: {len(phi)} vs {len(psi)}")
    if not phi:
        raise ValueError("empty function tables")
    total = Cyclotomic.zero(phi[0].order)
    for a, b in zip(phi, psi):
        total = total + a * b.conj()
    return total / len(phi)


def word_text(x: Word, modulus: int) -> str:
    """Digit-string form for small alphabets, comma-separated residues otherwise."""
    if modulus <= 10:
        return "".join(str(a) for a in x)
    return ",".join(str(a) for a in x)
