"""The six graph families: vertex sets, connection sets, eigenspace bases,
closed-form Norton product rules, and predicted spectra.

Basis labels are plain hashable values: words (tuples of residues) for the
Hamming family, sorted tuples of 1-based positions for the cube variants, and
flattened matrices for the bilinear forms family.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product
from math import comb

import numpy as np

from .cayley import CayleyGraph
from .errors import BudgetExceededError
from .groups import MatrixGroup, Word, WordGroup, is_prime, word_text

Subset = tuple[int, ...]

DEFAULT_VERTEX_BUDGET = 2**20


def qbinom(d: int, i: int, q: int) -> int:
    """Gaussian binomial coefficient, the number of i-dim subspaces of F_q^d."""
    if not 0 <= i <= d:
        raise ValueError(f"qbinom index {i} out of range 0..{d}")
    num = 1
    den = 1
    for k in range(i):
        num *= q ** (d - k) - 1
        den *= q ** (k + 1) - 1
    if num % den:
        raise AssertionError("gaussian binomial division not exact")
    return num // den


def rank_fq(matrix, q: int) -> int:
    """Rank of a matrix over F_q (prime q) by row reduction."""
    if not is_prime(q):
        raise ValueError(f"rank over F_q requires a prime q, got {q}")
    rows = [[entry % q for entry in row] for row in matrix]
    rank = 0
    cols = len(rows[0]) if rows else 0
    pivot_col = 0
    for _ in range(len(rows)):
        while pivot_col < cols:
            pivot_row = next(
                (r for r in range(rank, len(rows)) if rows[r][pivot_col]), None)
            if pivot_row is None:
                pivot_col += 1
                continue
            rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
            inv = pow(rows[rank][pivot_col], -1, q)
            rows[rank] = [(inv * v) % q for v in rows[rank]]
            for r in range(len(rows)):
                if r != rank and rows[r][pivot_col]:
                    c = rows[r][pivot_col]
                    rows[r] = [(a - c * b) % q for a, b in zip(rows[r], rows[rank])]
            rank += 1
            pivot_col += 1
            break
        else:
            break
    return rank


def symmetric_difference_feasible(n: int, i: int, j: int) -> bool:
    """Whether i-subsets S, T of [n] with |S symdiff T| = j exist."""
    if not 0 <= i <= n:
        raise ValueError(f"subset size {i} out of range 0..{n}")
    return j % 2 == 0 and 0 <= j <= min(2 * i, 2 * (n - i))


def _canon_complement(subset: frozenset, n: int) -> Subset:
    """Canonical representative of the character class {S, complement of S}:
    the smaller set, or on ties the one containing 1."""
    comp = frozenset(range(1, n + 1)) - subset
    if len(subset) < len(comp):
        keep = subset
    elif len(subset) > len(comp):
        keep = comp
    else:
        keep = subset if 1 in subset else comp
    return tuple(sorted(keep))


class FamilySpec:
    """One graph family instance; subclasses fill in the family-specific rules."""

    kind: str = ""

    def __init__(self) -> None:
        self._vertices: list[Word] | None = None
        self._connection: list[Word] | None = None
        self._bases: dict[int, list] = {}
        self._basis_sets: dict[int, frozenset] = {}
        self._basis_pos: dict[int, dict] = {}

    # family-specific interface -------------------------------------------------

    @property
    def modulus(self) -> int:
        raise NotImplementedError

    @property
    def length(self) -> int:
        raise NotImplementedError

    @property
    def diameter(self) -> int:
        raise NotImplementedError

    def vertex_count(self) -> int:
        raise NotImplementedError

    def _vertex_iter(self):
        raise NotImplementedError

    def _connection_pred(self, x: Word) -> bool:
        raise NotImplementedError

    def _make_basis(self, i: int) -> list:
        raise NotImplementedError

    def index_vector(self, label) -> Word:
        """Exponent-index vector of the character with the given basis label."""
        raise NotImplementedError

    def predicted_eigenvalue(self, i: int) -> int:
        raise NotImplementedError

    def predicted_dimension(self, i: int) -> int:
        raise NotImplementedError

    def closed_product(self, i: int, a, b):
        """Closed-form Norton product of two basis characters of V_i: a basis
        label (unit coefficient) or None for the zero product."""
        raise NotImplementedError

    def label_text(self, label) -> str:
        raise NotImplementedError

    def label_json(self, label):
        raise NotImplementedError

    @property
    def key(self) -> tuple:
        raise NotImplementedError

    # shared machinery ------------------------------------------------------------

    def _check_space(self, i: int) -> None:
        if not 0 <= i <= self.diameter:
            raise ValueError(f"eigenspace index {i} out of range 0..{self.diameter}")

    def vertices(self, budget: int | None = None) -> list[Word]:
        if self._vertices is None:
            limit = DEFAULT_VERTEX_BUDGET if budget is None else budget
            if self.vertex_count() > limit:
                raise BudgetExceededError(
                    f"{self.describe()} has {self.vertex_count()} vertices"
                    f", over the budget {limit}")
            self._vertices = list(self._vertex_iter())
            if len(self._vertices) != self.vertex_count():
                raise AssertionError("vertex enumeration disagrees with the count formula")
        return self._vertices

    def connection(self, budget: int | None = None) -> list[Word]:
        if self._connection is None:
            self._connection = [x for x in self.vertices(budget) if self._connection_pred(x)]
        return self._connection

    def basis(self, i: int) -> list:
        self._check_space(i)
        if i not in self._bases:
            basis = self._make_basis(i)
            if len(basis) != self.predicted_dimension(i):
                raise AssertionError(
                    f"basis size {len(basis)} != predicted dimension "
                    f"{self.predicted_dimension(i)} for {self.describe()} i={i}")
            self._bases[i] = basis
            self._basis_sets[i] = frozenset(basis)
            self._basis_pos[i] = {lbl: k for k, lbl in enumerate(basis)}
        return self._bases[i]

    def basis_set(self, i: int) -> frozenset:
        self.basis(i)
        return self._basis_sets[i]

    def basis_position(self, i: int) -> dict:
        self.basis(i)
        return self._basis_pos[i]

    def _require_basis(self, i: int, label) -> None:
        if label not in self.basis_set(i):
            raise ValueError(f"{self.label_text(label)} is not in the V_{i} basis")

    def eigenspaces(self) -> range:
        return range(self.diameter + 1)

    def all_labels(self) -> list[tuple[int, object]]:
        return [(i, lbl) for i in self.eigenspaces() for lbl in self.basis(i)]

    def cayley_graph(self, budget: int | None = None) -> CayleyGraph:
        chars = [self.index_vector(lbl) for _, lbl in self.all_labels()]
        return CayleyGraph(
            group=self.group,
            vertices=self.vertices(budget),
            connection=self.connection(budget),
            characters=chars,
        )

    def basis_array(self, i: int) -> np.ndarray:
        """Index vectors of the V_i basis as an integer array (dim x length)."""
        return np.array([self.index_vector(lbl) for lbl in self.basis(i)],
                        dtype=np.int64).reshape(len(self.basis(i)), self.length)

    def vertex_array(self, budget: int | None = None) -> np.ndarray:
        return np.array(self.vertices(budget), dtype=np.int64)

    def describe(self) -> str:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<FamilySpec {self.describe()}>"


class HammingFamily(FamilySpec):
    """Hamming graph H(n,e): Cayley graph of Z_e^n with weight-1 connection set."""

    kind = "hamming"

    def __init__(self, n: int, e: int) -> None:
        super().__init__()
        if n < 1:
            raise ValueError(f"hamming requires n >= 1, got {n}")
        if e < 2:
            raise ValueError(f"hamming requires e >= 2, got {e}")
        self.n = n
        self.e = e
        self.group = WordGroup(n, e)

    @property
    def modulus(self) -> int:
        return self.e

    @property
    def length(self) -> int:
        return self.n

    @property
    def diameter(self) -> int:
        return self.n

    @property
    def key(self) -> tuple:
        return ("hamming", self.n, self.e)

    def vertex_count(self) -> int:
        return self.e**self.n

    def _vertex_iter(self):
        return product(range(self.e), repeat=self.n)

    def _connection_pred(self, x: Word) -> bool:
        return self.group.weight(x) == 1

    def _make_basis(self, i: int) -> list[Word]:
        out = []
        for positions in combinations(range(self.n), i):
            for values in product(range(1, self.e), repeat=i):
                word = [0] * self.n
                for p, v in zip(positions, values):
                    word[p] = v
                out.append(tuple(word))
        out.sort()
        return out

    def index_vector(self, label: Word) -> Word:
        return label

    def predicted_eigenvalue(self, i: int) -> int:
        self._check_space(i)
        return (self.n - i) * self.e - self.n

    def predicted_dimension(self, i: int) -> int:
        self._check_space(i)
        return comb(self.n, i) * (self.e - 1) ** i

    def closed_product(self, i: int, a: Word, b: Word):
        self._require_basis(i, a)
        self._require_basis(i, b)
        w = self.group.add(a, b)
        return w if self.group.weight(w) == i else None

    def label_text(self, label: Word) -> str:
        return word_text(label, self.e)

    def label_json(self, label: Word):
        return self.label_text(label)

    def describe(self) -> str:
        return f"hamming({self.n},{self.e})"


class _CubeFamily(FamilySpec):
    """Shared machinery for the hypercube and its halved/folded variants.

    Labels are sorted tuples of 1-based positions; the character indexed by a
    subset S sends a vertex x to (-1) raised to the sum of x over S.
    """

    def __init__(self, n: int) -> None:
        super().__init__()
        self.n = n
        self.group = WordGroup(n, 2)

    @property
    def modulus(self) -> int:
        return 2

    @property
    def length(self) -> int:
        return self.n

    def index_vector(self, label: Subset) -> Word:
        vec = [0] * self.n
        for j in label:
            vec[j - 1] = 1
        return tuple(vec)

    def label_text(self, label: Subset) -> str:
        if not label:
            return "{}"
        if self.n <= 9:
            return "".join(str(j) for j in label)
        return "{" + ",".join(str(j) for j in label) + "}"

    def label_json(self, label: Subset):
        return list(label)


class HypercubeFamily(_CubeFamily):
    """Hypercube Q_n = H(n,2), with subset-indexed characters."""

    kind = "hypercube"

    def __init__(self, n: int) -> None:
        if n < 1:
            raise ValueError(f"hypercube requires n >= 1, got {n}")
        super().__init__(n)

    @property
    def diameter(self) -> int:
        return self.n

    @property
    def key(self) -> tuple:
        return ("hypercube", self.n)

    def vertex_count(self) -> int:
        return 2**self.n

    def _vertex_iter(self):
        return product(range(2), repeat=self.n)

    def _connection_pred(self, x: Word) -> bool:
        return sum(x) == 1

    def _make_basis(self, i: int) -> list[Subset]:
        return list(combinations(range(1, self.n + 1), i))

    def predicted_eigenvalue(self, i: int) -> int:
        self._check_space(i)
        return self.n - 2 * i

    def predicted_dimension(self, i: int) -> int:
        self._check_space(i)
        return comb(self.n, i)

    def closed_product(self, i: int, a: Subset, b: Subset):
        self._require_basis(i, a)
        self._require_basis(i, b)
        d = frozenset(a) ^ frozenset(b)
        return tuple(sorted(d)) if len(d) == i else None

    def describe(self) -> str:
        return f"hypercube({self.n})"


class HalvedCubeFamily(_CubeFamily):
    """Halved cube: even-weight vertices of Q_n, connected at Hamming distance 2."""

    kind = "halved_cube"

    def __init__(self, n: int) -> None:
        if n < 2:
            raise ValueError(f"halved_cube requires n >= 2, got {n}")
        super().__init__(n)

    @property
    def diameter(self) -> int:
        return self.n // 2

    @property
    def key(self) -> tuple:
        return ("halved_cube", self.n)

    def vertex_count(self) -> int:
        return 2 ** (self.n - 1)

    def _vertex_iter(self):
        return (x for x in product(range(2), repeat=self.n) if sum(x) % 2 == 0)

    def _connection_pred(self, x: Word) -> bool:
        return sum(x) == 2

    def _make_basis(self, i: int) -> list[Subset]:
        if 2 * i < self.n:
            return list(combinations(range(1, self.n + 1), i))
        return [(1,) + rest for rest in combinations(range(2, self.n + 1), i - 1)]

    def predicted_eigenvalue(self, i: int) -> int:
        self._check_space(i)
        return ((self.n - 2 * i) ** 2 - self.n) // 2

    def predicted_dimension(self, i: int) -> int:
        self._check_space(i)
        full = comb(self.n, i)
        return full if 2 * i < self.n else full // 2

    def canonical_label(self, subset) -> Subset:
        """Canonical representative of the character class {S, S complement}."""
        return _canon_complement(frozenset(subset), self.n)

    def closed_product(self, i: int, a: Subset, b: Subset):
        self._require_basis(i, a)
        self._require_basis(i, b)
        d = frozenset(a) ^ frozenset(b)
        if len(d) not in (i, self.n - i):
            return None
        return self.canonical_label(d)

    def describe(self) -> str:
        return f"halved_cube({self.n})"


class FoldedCubeFamily(_CubeFamily):
    """Folded cube: Z_2^(n-1) x {0} with weight-1 and weight-(n-1) connections."""

    kind = "folded_cube"

    def __init__(self, n: int) -> None:
        # n = 2 degenerates: the two connection classes coincide there
        if n < 3:
            raise ValueError(f"folded_cube requires n >= 3, got {n}")
        super().__init__(n)

    @property
    def diameter(self) -> int:
        return self.n // 2

    @property
    def key(self) -> tuple:
        return ("folded_cube", self.n)

    def vertex_count(self) -> int:
        return 2 ** (self.n - 1)

    def _vertex_iter(self):
        return (x + (0,) for x in product(range(2), repeat=self.n - 1))

    def _connection_pred(self, x: Word) -> bool:
        return sum(x) in (1, self.n - 1)

    def _make_basis(self, i: int) -> list[Subset]:
        return list(combinations(range(1, self.n + 1), 2 * i))

    def predicted_eigenvalue(self, i: int) -> int:
        self._check_space(i)
        return self.n - 4 * i

    def predicted_dimension(self, i: int) -> int:
        self._check_space(i)
        return comb(self.n, 2 * i)

    def canonical_label(self, subset) -> Subset:
        """Even-cardinality representative, toggling position n."""
        s = frozenset(subset)
        if len(s) % 2:
            s = s ^ {self.n}
        return tuple(sorted(s))

    def closed_product(self, i: int, a: Subset, b: Subset):
        self._require_basis(i, a)
        self._require_basis(i, b)
        d = frozenset(a) ^ frozenset(b)
        return tuple(sorted(d)) if len(d) == 2 * i else None

    def describe(self) -> str:
        return f"folded_cube({self.n})"


class FoldedHalfCubeFamily(_CubeFamily):
    """Folded half-cube: even-weight vertices of Z_2^(n-1) x {0}, connected at
    Hamming distance 2 or n - 2; defined for even n >= 6."""

    kind = "folded_half_cube"

    def __init__(self, n: int) -> None:
        if n < 6 or n % 2:
            raise ValueError(f"folded_half_cube requires even n >= 6, got {n}")
        super().__init__(n)

    @property
    def diameter(self) -> int:
        return self.n // 4

    @property
    def key(self) -> tuple:
        return ("folded_half_cube", self.n)

    def vertex_count(self) -> int:
        return 2 ** (self.n - 2)

    def _vertex_iter(self):
        return (x + (0,) for x in product(range(2), repeat=self.n - 1)
                if sum(x) % 2 == 0)

    def _connection_pred(self, x: Word) -> bool:
        return sum(x) in (2, self.n - 2)

    def _make_basis(self, i: int) -> list[Subset]:
        if 4 * i < self.n:
            return list(combinations(range(1, self.n + 1), 2 * i))
        return [(1,) + rest for rest in combinations(range(2, self.n + 1), 2 * i - 1)]

    def predicted_eigenvalue(self, i: int) -> int:
        self._check_space(i)
        return ((self.n - 4 * i) ** 2 - self.n) // 2

    def predicted_dimension(self, i: int) -> int:
        self._check_space(i)
        full = comb(self.n, 2 * i)
        return full if 4 * i < self.n else full // 2

    def canonical_label(self, subset) -> Subset:
        s = frozenset(subset)
        if len(s) % 2:
            s = s ^ {self.n}
        return _canon_complement(s, self.n)

    def closed_product(self, i: int, a: Subset, b: Subset):
        self._require_basis(i, a)
        self._require_basis(i, b)
        d = frozenset(a) ^ frozenset(b)
        if len(d) not in (2 * i, self.n - 2 * i):
            return None
        return self.canonical_label(d)

    def describe(self) -> str:
        return f"folded_half_cube({self.n})"


class BilinearFamily(FamilySpec):
    """Bilinear forms graph H_q(d,e): d x e matrices over F_q, rank-1 connections."""

    kind = "bilinear"

    def __init__(self, q: int, d: int, e: int) -> None:
        super().__init__()
        if not is_prime(q):
            raise ValueError(f"bilinear requires a prime q, got {q}")
        if not 1 <= d <= e:
            raise ValueError(f"bilinear requires 1 <= d <= e, got d={d}, e={e}")
        self.q = q
        self.d = d
        self.cols = e
        self.group = MatrixGroup(d, e, q)

    @property
    def modulus(self) -> int:
        return self.q

    @property
    def length(self) -> int:
        return self.d * self.cols

    @property
    def diameter(self) -> int:
        return self.d

    @property
    def key(self) -> tuple:
        return ("bilinear", self.q, self.d, self.cols)

    def vertex_count(self) -> int:
        return self.q ** (self.d * self.cols)

    def _vertex_iter(self):
        return product(range(self.q), repeat=self.length)

    def rank(self, flat: Word) -> int:
        return rank_fq(self.group.as_matrix(flat), self.q)

    def _connection_pred(self, x: Word) -> bool:
        return self.rank(x) == 1

    def _make_basis(self, i: int) -> list[Word]:
        return [x for x in self.vertices() if self.rank(x) == i]

    def index_vector(self, label: Word) -> Word:
        return label

    def predicted_eigenvalue(self, i: int) -> int:
        self._check_space(i)
        q, d, e = self.q, self.d, self.cols
        num = q ** (d + e - i) - q**d - q**e + 1
        if num % (q - 1):
            raise AssertionError("bilinear eigenvalue is not an integer")
        return num // (q - 1)

    def predicted_dimension(self, i: int) -> int:
        self._check_space(i)
        q, d, e = self.q, self.d, self.cols
        out = qbinom(d, i, q)
        for k in range(i):
            out *= q**e - q**k
        return out

    def closed_product(self, i: int, a: Word, b: Word):
        self._require_basis(i, a)
        self._require_basis(i, b)
        w = self.group.add(a, b)
        return w if self.rank(w) == i else None

    def label_text(self, label: Word) -> str:
        rows = self.group.as_matrix(label)
        return "[" + ";".join(word_text(r, self.q) for r in rows) + "]"

    def label_json(self, label: Word):
        return [list(r) for r in self.group.as_matrix(label)]

    def describe(self) -> str:
        return f"bilinear({self.q},{self.d},{self.cols})"


_KINDS = {
    "hamming": HammingFamily,
    "hypercube": HypercubeFamily,
    "halved_cube": HalvedCubeFamily,
    "folded_cube": FoldedCubeFamily,
    "folded_half_cube": FoldedHalfCubeFamily,
    "bilinear": BilinearFamily,
}


@lru_cache(maxsize=None)
def _cached_family(key: tuple) -> FamilySpec:
    kind = key[0]
    return _KINDS[kind](*key[1:])


def make_family(kind: str, *, n: int | None = None, e: int | None = None,
                q: int | None = None, d: int | None = None) -> FamilySpec:
    """Build a family instance.  Instances are cached, so basis and vertex
    enumerations are shared across callers."""
    kind = kind.replace("-", "_")
    if kind not in _KINDS:
        raise ValueError(f"unknown family kind {kind!r}; expected one of {sorted(_KINDS)}")
    if kind == "hamming":
        if n is None or e is None:
            raise ValueError("hamming requires --n and --e")
        return _cached_family(("hamming", n, e))
    if kind == "bilinear":
        if q is None or d is None or e is None:
            raise ValueError("bilinear requires --q, --d and --e")
        return _cached_family(("bilinear", q, d, e))
    if n is None:
        raise ValueError(f"{kind} requires --n")
    return _cached_family((kind, n))
