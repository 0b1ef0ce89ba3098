"""Norton algebra vectors on family eigenspaces: the independent projection
oracle, the closed-form product, idempotent and nilpotent machinery, identity
detection, and isomorphism verification.

The projection oracle multiplies materialized value tables entrywise and
projects back via character inner products; it never looks at the index-level
product rule, so agreement with the closed form is a genuine cross-check.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .cayley import exponent_matrix
from .cyclotomic import Cyclotomic, root_power, root_reduction_matrix
from .errors import BudgetExceededError
from .families import FamilySpec, make_family
from .groups import inner_product

DEFAULT_ORACLE_VERTEX_BUDGET = 4096
DEFAULT_IDENTITY_DIM_BUDGET = 256


class AlgebraVector:
    """Sparse vector in one eigenspace V_i, with exact cyclotomic coefficients."""

    __slots__ = ("family", "i", "coeffs")

    def __init__(self, family: FamilySpec, i: int, coeffs: dict) -> None:
        basis = family.basis_set(i)
        clean = {}
        for label, c in coeffs.items():
            if label not in basis:
                raise ValueError(
                    f"label {family.label_text(label)} is not in the V_{i} basis")
            if not isinstance(c, Cyclotomic):
                c = Cyclotomic.from_rational(family.modulus, c)
            if not c.is_zero():
                clean[label] = c
        self.family = family
        self.i = i
        self.coeffs = clean

    @classmethod
    def zero(cls, family: FamilySpec, i: int) -> "AlgebraVector":
        return cls(family, i, {})

    @classmethod
    def basis_vector(cls, family: FamilySpec, i: int, label) -> "AlgebraVector":
        return cls(family, i, {label: Cyclotomic.one(family.modulus)})

    def _check_space(self, other: "AlgebraVector") -> None:
        if self.family.key != other.family.key or self.i != other.i:
            raise ValueError(
                f"eigenspace mismatch: {self.family.describe()} V_{self.i} vs "
                f"{other.family.describe()} V_{other.i}")

    def __add__(self, other: "AlgebraVector") -> "AlgebraVector":
        self._check_space(other)
        out = dict(self.coeffs)
        for label, c in other.coeffs.items():
            out[label] = out.get(label, Cyclotomic.zero(self.family.modulus)) + c
        return AlgebraVector(self.family, self.i, out)

    def __sub__(self, other: "AlgebraVector") -> "AlgebraVector":
        return self + (-other)

    def __neg__(self) -> "AlgebraVector":
        return AlgebraVector(self.family, self.i,
                             {label: -c for label, c in self.coeffs.items()})

    def __mul__(self, scalar) -> "AlgebraVector":
        return AlgebraVector(self.family, self.i,
                             {label: c * scalar for label, c in self.coeffs.items()})

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraVector):
            return NotImplemented
        return (self.family.key == other.family.key and self.i == other.i
                and self.coeffs == other.coeffs)

    def __hash__(self) -> int:
        return hash((self.family.key, self.i,
                     tuple(sorted((label, c.coeffs) for label, c in self.coeffs.items()))))

    def value_table(self, budget: int | None = None) -> list[Cyclotomic]:
        """Values over the vertex set, materialized exactly."""
        fam = self.family
        e = fam.modulus
        xs = fam.vertices(budget)
        dot = fam.group.dot
        out = [Cyclotomic.zero(e) for _ in xs]
        for label, c in self.coeffs.items():
            vec = fam.index_vector(label)
            for k, x in enumerate(xs):
                out[k] = out[k] + c * root_power(e, dot(vec, x))
        return out

    def to_json(self) -> dict:
        fam = self.family
        return {
            "family": fam.describe(),
            "i": self.i,
            "coeffs": {fam.label_text(label): c.to_json()
                       for label, c in sorted(self.coeffs.items())},
        }

    def __repr__(self) -> str:
        if self.is_zero():
            return "AlgebraVector(0)"
        parts = [f"({c})*chi_{self.family.label_text(label)}"
                 for label, c in sorted(self.coeffs.items())]
        return " + ".join(parts)


def closed_form_product(v: AlgebraVector, w: AlgebraVector) -> AlgebraVector:
    """Bilinear extension of the family's closed product rule; no vertex enumeration."""
    v._check_space(w)
    fam, i = v.family, v.i
    e = fam.modulus
    out: dict = {}
    for a, ca in v.coeffs.items():
        for b, cb in w.coeffs.items():
            label = fam.closed_product(i, a, b)
            if label is not None:
                c = ca * cb
                out[label] = out.get(label, Cyclotomic.zero(e)) + c
    return AlgebraVector(fam, i, out)


def oracle_product(v: AlgebraVector, w: AlgebraVector,
                   vertex_budget: int = DEFAULT_ORACLE_VERTEX_BUDGET) -> AlgebraVector:
    """Entrywise product of value tables projected back onto V_i via character
    inner products, exactly.  Independent of the closed-form rule."""
    v._check_space(w)
    fam, i = v.family, v.i
    e = fam.modulus
    xs = fam.vertices(vertex_budget)
    dot = fam.group.dot
    tv = v.value_table(vertex_budget)
    tw = w.value_table(vertex_budget)
    prod = [a * b for a, b in zip(tv, tw)]
    out: dict = {}
    for label in fam.basis(i):
        vec = fam.index_vector(label)
        chi = [root_power(e, dot(vec, x)) for x in xs]
        coeff = inner_product(prod, chi)
        if not coeff.is_zero():
            out[label] = coeff
    return AlgebraVector(fam, i, out)


def _expected_product_positions(family: FamilySpec, i: int) -> np.ndarray:
    labels = family.basis(i)
    pos = family.basis_position(i)
    dim = len(labels)
    out = np.full((dim, dim), -1, dtype=np.int64)
    for a_idx, a in enumerate(labels):
        for b_idx, b in enumerate(labels):
            c = family.closed_product(i, a, b)
            if c is not None:
                out[a_idx, b_idx] = pos[c]
    return out


def verify_oracle_space(family: FamilySpec, i: int,
                        vertex_budget: int = DEFAULT_ORACLE_VERTEX_BUDGET,
                        threads: int = 1) -> bool:
    """Projection-oracle check of the closed product on every V_i basis pair.

    For each pair (u, v) and every basis character w, the inner product
    <chi_u . chi_v, chi_w> is accumulated as an exact residue histogram of
    character exponents (batched as integer-valued float64 matmuls) and
    reduced mod Phi_e; the result must match the closed-form rule entry.
    """
    xs = family.vertices(vertex_budget)
    n_x = len(xs)
    e = family.modulus
    graph_exps = np.asarray(
        (family.basis_array(i) @ family.vertex_array().T) % e, dtype=np.uint8)
    dim = graph_exps.shape[0]
    bits = n_x.bit_length()
    if bits * e > 52:
        raise BudgetExceededError(
            f"oracle packing infeasible for |X|={n_x}, e={e}")
    expected = _expected_product_positions(family, i)
    packed = np.left_shift(np.int64(1), bits * graph_exps.astype(np.int64))
    packed_t = packed.T.astype(np.float64)  # (|X|, dim), exact powers of two
    red = np.array(root_reduction_matrix(e), dtype=np.int64)
    mask = (1 << bits) - 1
    rows = np.arange(dim)

    def check_row(u: int) -> bool:
        s = (graph_exps[u].astype(np.int16) + graph_exps) % e
        counts_jb = np.empty((e, e, dim, dim), dtype=np.int64)
        for j in range(e):
            c_j = np.rint((s == j).astype(np.float64) @ packed_t).astype(np.int64)
            for b in range(e):
                counts_jb[j, b] = (c_j >> (bits * b)) & mask
        cnt = np.zeros((e, dim, dim), dtype=np.int64)
        for r in range(e):
            for j in range(e):
                cnt[r] += counts_jb[j, (j - r) % e]
        exp_row = expected[u]
        hit = exp_row >= 0
        cnt[0][rows[hit], exp_row[hit]] -= n_x
        return not np.tensordot(red, cnt, axes=([1], [0])).any()

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return all(pool.map(check_row, range(dim)))
    return all(check_row(u) for u in range(dim))


def verify_oracle_family(family: FamilySpec,
                         vertex_budget: int = DEFAULT_ORACLE_VERTEX_BUDGET,
                         threads: int = 1) -> dict[int, bool]:
    return {i: verify_oracle_space(family, i, vertex_budget, threads)
            for i in family.eigenspaces()}


# ---------------------------------------------------------------------------
# Idempotents of V_1(H(1,e))
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Idempotent:
    """A verified idempotent of V_1(H(1,e)) with its eta-basis support."""

    vector: AlgebraVector
    support: frozenset[int]

    @property
    def support_size(self) -> int:
        return len(self.support)


def _v1_family(e: int) -> FamilySpec:
    return make_family("hamming", n=1, e=e)


def eta(e: int, j: int) -> Idempotent:
    """The idempotent eta_j = (1/(e-2)) sum_k w^(jk) chi_k of V_1(H(1,e))."""
    if e < 3:
        raise ValueError(f"eta requires e >= 3 (division by e-2), got {e}")
    if not 0 <= j < e:
        raise ValueError(f"eta index {j} out of range 0..{e - 1}")
    fam = _v1_family(e)
    coeffs = {(k,): root_power(e, j * k) / (e - 2) for k in range(1, e)}
    vec = AlgebraVector(fam, 1, coeffs)
    if closed_form_product(vec, vec) != vec:
        raise AssertionError(f"eta({e},{j}) failed the idempotency check")
    support = frozenset({j}) if j else frozenset(range(1, e))
    return Idempotent(vec, support)


def classified_idempotents(e: int) -> list[Idempotent]:
    """All nonzero idempotents of V_1(H(1,e)): one per nonempty subset of
    {1,...,e-1} of size l != e/2, scaled by (e-2)/(e-2l); each verified."""
    if e < 3:
        raise ValueError(f"idempotent classification requires e >= 3, got {e}")
    etas = {j: eta(e, j).vector for j in range(1, e)}
    out: list[Idempotent] = []
    seen = set()
    for size in range(1, e):
        if 2 * size == e:
            continue
        scale = Fraction(e - 2, e - 2 * size)
        for subset in combinations(range(1, e), size):
            vec = etas[subset[0]]
            for j in subset[1:]:
                vec = vec + etas[j]
            vec = scale * vec
            if vec.is_zero() or closed_form_product(vec, vec) != vec:
                raise AssertionError(
                    f"classified idempotent with support {subset} failed verification")
            key = tuple(sorted((label, c.coeffs) for label, c in vec.coeffs.items()))
            if key in seen:
                raise AssertionError("classified idempotents are not distinct")
            seen.add(key)
            out.append(Idempotent(vec, frozenset(subset)))
    return out


def nilpotents_order2_classified(e: int) -> list[AlgebraVector]:
    """One square-zero representative per (e/2)-subset of {1,...,e-1} (even e)."""
    if e < 3:
        raise ValueError(f"nilpotent classification requires e >= 3, got {e}")
    if e % 2:
        return []
    etas = {j: eta(e, j).vector for j in range(1, e)}
    fam = _v1_family(e)
    out = []
    for subset in combinations(range(1, e), e // 2):
        vec = AlgebraVector.zero(fam, 1)
        for j in subset:
            vec = vec + etas[j]
        if vec.is_zero() or not closed_form_product(vec, vec).is_zero():
            raise AssertionError(
                f"nilpotent representative with support {subset} failed verification")
        out.append(vec)
    return out


def eta_relations_check(e: int) -> bool:
    """eta_j * eta_j = eta_j, eta_j * eta_k = -(eta_j + eta_k)/(e-2) for j != k,
    and the eta_j sum to zero; all exact."""
    etas = [eta(e, j).vector for j in range(e)]
    fam = _v1_family(e)
    total = AlgebraVector.zero(fam, 1)
    for j, vj in enumerate(etas):
        total = total + vj
        for k, vk in enumerate(etas):
            prod = closed_form_product(vj, vk)
            expected = vj if j == k else (vj + vk) * Fraction(-1, e - 2)
            if prod != expected:
                return False
    return total.is_zero()


def primitivity_facts_check(e: int, bound: int = 7) -> bool:
    """Pairwise nonorthogonality of the classified idempotents, plus the scaled-sum
    laws: disjoint equal-size supports give the idempotent (e-2l)/(e-4l)(x+y),
    nested supports with sizes (l, e-l) give (e-2l)/(3e-4l)(x+y), and exactly the
    degenerate denominators produce square-zero sums instead."""
    if e < 3:
        raise ValueError(f"primitivity check requires e >= 3, got {e}")
    if e > bound:
        raise BudgetExceededError(f"primitivity check bound is {bound}, got e={e}")
    idems = classified_idempotents(e)
    for p in range(len(idems)):
        for q in range(p + 1, len(idems)):
            x, y = idems[p], idems[q]
            if closed_form_product(x.vector, y.vector).is_zero():
                return False
            a_sup, b_sup = x.support, y.support
            la, lb = len(a_sup), len(b_sup)
            total = x.vector + y.vector
            scale = None
            degenerate = False
            if not (a_sup & b_sup) and la == lb:
                if e == 4 * la:
                    degenerate = True
                else:
                    scale = Fraction(e - 2 * la, e - 4 * la)
            elif (a_sup >= b_sup and lb == e - la) or (b_sup >= a_sup and la == e - lb):
                big = la if a_sup >= b_sup else lb
                if 3 * e == 4 * big:
                    degenerate = True
                else:
                    scale = Fraction(e - 2 * big, 3 * e - 4 * big)
            if scale is not None:
                cand = scale * total
                if cand.is_zero() or closed_form_product(cand, cand) != cand:
                    return False
            elif degenerate:
                if not closed_form_product(total, total).is_zero():
                    return False
            else:
                # no scalar multiple of the sum may be a nonzero idempotent
                if _scaled_sum_idempotent_exists(e, a_sup, b_sup, la, lb):
                    return False
    return True


def _scaled_sum_idempotent_exists(e, a_sup, b_sup, la, lb) -> bool:
    ca = Fraction(e - 2, e - 2 * la)
    cb = Fraction(e - 2, e - 2 * lb)
    coords = {j: ca for j in a_sup}
    for j in b_sup:
        coords[j] = coords.get(j, Fraction(0)) + cb
    nonzero = {j: c for j, c in coords.items() if c}
    if not nonzero or len(set(nonzero.values())) != 1:
        return False
    return 2 * len(nonzero) != e


# ---------------------------------------------------------------------------
# Identity elements
# ---------------------------------------------------------------------------

def _solve_rational(rows: list[list[Fraction]], rhs: list[Fraction]):
    """One exact solution of rows . x = rhs over Q (free variables zero), or None."""
    m = [row + [b] for row, b in zip(rows, rhs)]
    n_cols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for col in range(n_cols):
        pivot = next((k for k in range(r, len(m)) if m[k][col]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][col]
        m[r] = [v * inv for v in m[r]]
        for k in range(len(m)):
            if k != r and m[k][col]:
                c = m[k][col]
                m[k] = [a - c * b for a, b in zip(m[k], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    for k in range(r, len(m)):
        if m[k][n_cols]:
            return None
    x = [Fraction(0)] * n_cols
    for row_idx, col in enumerate(pivots):
        x[col] = m[row_idx][n_cols]
    return x


def find_identity(family: FamilySpec, i: int,
                  dim_budget: int = DEFAULT_IDENTITY_DIM_BUDGET):
    """Solve sum_u c_u (chi_u * chi_v) = chi_v for all basis v exactly; returns
    the identity element of V_i or None."""
    labels = family.basis(i)
    dim = len(labels)
    if dim > dim_budget:
        raise BudgetExceededError(f"identity solve over dimension {dim} > {dim_budget}")
    pos = family.basis_position(i)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for v_idx, v in enumerate(labels):
        by_target: dict[int, list[int]] = {}
        for u_idx, u in enumerate(labels):
            w = family.closed_product(i, u, v)
            if w is not None:
                by_target.setdefault(pos[w], []).append(u_idx)
        for w_idx in range(dim):
            us = by_target.get(w_idx, [])
            b = Fraction(1 if w_idx == v_idx else 0)
            if not us and not b:
                continue
            row = [Fraction(0)] * dim
            for u_idx in us:
                row[u_idx] += 1
            rows.append(row)
            rhs.append(b)
    sol = _solve_rational(rows, rhs)
    if sol is None:
        return None
    candidate = AlgebraVector(family, i,
                              {labels[k]: sol[k] for k in range(dim) if sol[k]})
    for v in labels:
        chi_v = AlgebraVector.basis_vector(family, i, v)
        if closed_form_product(candidate, chi_v) != chi_v:
            raise AssertionError("linear solve produced a non-identity solution")
    return candidate


# ---------------------------------------------------------------------------
# Isomorphism verification
# ---------------------------------------------------------------------------

class BasisAlgebra:
    """A finite basis with a multiplicity-free product: each basis product is
    either zero or a single basis element with unit coefficient."""

    def __init__(self, labels: list, product, name: str) -> None:
        self.labels = list(labels)
        self._product = product
        self.name = name

    @classmethod
    def from_eigenspace(cls, family: FamilySpec, i: int) -> "BasisAlgebra":
        return cls(family.basis(i), lambda a, b: family.closed_product(i, a, b),
                   f"{family.describe()}[V_{i}]")

    @classmethod
    def direct_product(cls, parts: list["BasisAlgebra"]) -> "BasisAlgebra":
        labels = [(k, lbl) for k, part in enumerate(parts) for lbl in part.labels]

        def product(a, b):
            (ka, la), (kb, lb) = a, b
            if ka != kb:
                return None
            c = parts[ka].product(la, lb)
            return None if c is None else (ka, c)

        return cls(labels, product, " x ".join(p.name for p in parts))

    def product(self, a, b):
        return self._product(a, b)


def verify_isomorphism(mapping: dict, dom: BasisAlgebra, cod: BasisAlgebra) -> bool:
    """Whether the basis bijection respects products: map(a*b) = map(a)*map(b)
    for all basis pairs, with zero mapping to zero."""
    if set(mapping) != set(dom.labels):
        raise ValueError("mapping does not cover the domain basis")
    values = set(mapping.values())
    if len(values) != len(mapping) or values != set(cod.labels):
        raise ValueError("mapping is not a bijection onto the codomain basis")
    for a in dom.labels:
        for b in dom.labels:
            c = dom.product(a, b)
            lhs = None if c is None else mapping[c]
            rhs = cod.product(mapping[a], mapping[b])
            if lhs != rhs:
                return False
    return True


def shipped_isomorphism_checks() -> list[tuple[str, dict, BasisAlgebra, BasisAlgebra]]:
    """The named algebra isomorphisms this artifact certifies, as
    (name, basis bijection, domain, codomain) tuples."""
    checks = []
    dom = BasisAlgebra.from_eigenspace(make_family("folded_cube", n=4), 1)
    cod = BasisAlgebra.from_eigenspace(make_family("hypercube", n=4), 2)
    checks.append(("V_1(folded_cube(4)) = V_2(hypercube(4))",
                   {lbl: lbl for lbl in dom.labels}, dom, cod))

    dom = BasisAlgebra.from_eigenspace(make_family("halved_cube", n=4), 2)
    cod = BasisAlgebra.from_eigenspace(make_family("hypercube", n=3), 2)
    checks.append(("V_2(halved_cube(4)) = V_2(hypercube(3))",
                   {(1, 2): (1, 2), (1, 3): (1, 3), (1, 4): (2, 3)}, dom, cod))

    for (i, n) in ((1, 4), (1, 5), (2, 7)):
        dom = BasisAlgebra.from_eigenspace(make_family("halved_cube", n=n), i)
        cod = BasisAlgebra.from_eigenspace(make_family("hypercube", n=n), i)
        checks.append((f"V_{i}(halved_cube({n})) = V_{i}(hypercube({n}))",
                       {lbl: lbl for lbl in dom.labels}, dom, cod))

    dom = BasisAlgebra.from_eigenspace(make_family("folded_half_cube", n=8), 1)
    cod = BasisAlgebra.from_eigenspace(make_family("halved_cube", n=8), 2)
    checks.append(("V_1(folded_half_cube(8)) = V_2(halved_cube(8))",
                   {lbl: lbl for lbl in dom.labels}, dom, cod))

    dom = BasisAlgebra.from_eigenspace(make_family("hamming", n=2, e=3), 2)
    line = BasisAlgebra.from_eigenspace(make_family("hamming", n=1, e=3), 1)
    cod = BasisAlgebra.direct_product([line, line])
    mapping = {(1, 1): (0, (1,)), (2, 2): (0, (2,)),
               (1, 2): (1, (1,)), (2, 1): (1, (2,))}
    checks.append(("V_2(hamming(2,3)) = V_1(H(1,3)) x V_1(H(1,3))", mapping, dom, cod))
    return checks


def vector_map_preserves_products(images: dict, family: FamilySpec, i: int) -> bool:
    """Whether the linear map sending each basis character to the given vector
    is an algebra automorphism: invertible and product-preserving on basis pairs."""
    labels = family.basis(i)
    if set(images) != set(labels):
        raise ValueError("images must be given on the full basis")
    matrix = [[images[b].coeffs.get(a, Cyclotomic.zero(family.modulus))
               for b in labels] for a in labels]
    if _rank_cyclotomic(matrix) != len(labels):
        return False

    def apply(vec: AlgebraVector) -> AlgebraVector:
        out = AlgebraVector.zero(family, i)
        for label, c in vec.coeffs.items():
            out = out + c * images[label]
        return out

    for a in labels:
        for b in labels:
            chi_a = AlgebraVector.basis_vector(family, i, a)
            chi_b = AlgebraVector.basis_vector(family, i, b)
            lhs = apply(closed_form_product(chi_a, chi_b))
            rhs = closed_form_product(apply(chi_a), apply(chi_b))
            if lhs != rhs:
                return False
    return True


def _rank_cyclotomic(matrix: list[list[Cyclotomic]]) -> int:
    """Exact rank by Gaussian elimination with first-nonzero pivoting."""
    m = [row[:] for row in matrix]
    rank = 0
    n_cols = len(m[0]) if m else 0
    for col in range(n_cols):
        pivot = next((k for k in range(rank, len(m)) if not m[k][col].is_zero()), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = m[rank][col].inv()
        m[rank] = [v * inv for v in m[rank]]
        for k in range(len(m)):
            if k != rank and not m[k][col].is_zero():
                c = m[k][col]
                m[k] = [a - c * b for a, b in zip(m[k], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank
