"""Exact basis-blade arithmetic for real Clifford algebras.

Blades are stored as bitmasks over generator indices; coefficients are exact
`fractions.Fraction`.  Generator indices are 1-based throughout the public
API (index i squares to ``diag[i-1]``).  The default frame puts the +1
generators first: ``Signature(3, 3)`` has e1..e3 squaring to +1 and e4..e6
squaring to -1.

Matrix representations are built by recursive (1,1)-doubling with entries in
{-1, 0, +1}, so the anticommutator identity can be checked in exact integer
arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

import numpy as np

from .errors import ArgumentError, ResourceLimitError, UnsupportedSignatureError

Scalar = Union[int, Fraction]

MAX_GENERATORS = 16  # blade masks must fit comfortably in machine words


# ---------------------------------------------------------------------------
# signatures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Signature:
    """Metric signature (p pluses, q minuses) with an explicit diagonal."""

    p: int
    q: int
    diag: tuple[int, ...] = field(default=())

    def __post_init__(self):
        diag = self.diag or (1,) * self.p + (-1,) * self.q
        if len(diag) != self.p + self.q:
            raise ArgumentError(f"diag length {len(diag)} != p+q = {self.p + self.q}")
        if sum(1 for d in diag if d == 1) != self.p or sum(1 for d in diag if d == -1) != self.q:
            raise ArgumentError("diag entries do not match (p, q)")
        if any(d not in (1, -1) for d in diag):
            raise ArgumentError("diag entries must be +1 or -1")
        object.__setattr__(self, "diag", tuple(diag))

    @property
    def n(self) -> int:
        return self.p + self.q

    def g(self, i: int) -> int:
        """Metric entry g_ii for 1-based generator index i."""
        if not 1 <= i <= self.n:
            raise ArgumentError(f"generator index {i} out of range 1..{self.n}")
        return self.diag[i - 1]


#: The default frame: indices 1,2,3 square to +1 and 4,5,6 to -1.
FRAME33 = Signature(3, 3)


# ---------------------------------------------------------------------------
# blade combinatorics (shared with the Grassmann module, which passes zeros
# on the diagonal so repeated generators annihilate instead of contracting)
# ---------------------------------------------------------------------------

def reorder_sign(mask_a: int, mask_b: int) -> int:
    """Sign from sorting the concatenation of two index sets.

    Counts pairs (i in a, j in b) with i > j; each costs one transposition.
    """
    swaps = 0
    a = mask_a >> 1
    while a:
        swaps += (a & mask_b).bit_count()
        a >>= 1
    return -1 if swaps & 1 else 1


def mul_masks(mask_a: int, mask_b: int, diag: tuple[int, ...]) -> tuple[int, int]:
    """Product of two basis blades: result mask and integer scale.

    Repeated indices contract with the metric diagonal; a zero diagonal entry
    (Grassmann case) kills the product.
    """
    scale = reorder_sign(mask_a, mask_b)
    common = mask_a & mask_b
    while common:
        low = common & -common
        scale *= diag[low.bit_length() - 1]
        common ^= low
    return (mask_a ^ mask_b, scale)


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        bit = 1 << (i - 1)
        if mask & bit:
            raise ArgumentError(f"repeated generator index {i} in blade")
        mask |= bit
    return mask


def indices_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@dataclass(frozen=True)
class Blade:
    """Signed basis monomial: a sorted index set with a sign."""

    mask: int
    sign: int = 1

    def indices(self) -> tuple[int, ...]:
        return indices_of(self.mask)

    @property
    def grade(self) -> int:
        return self.mask.bit_count()


def blade_product(a: Blade, b: Blade, sig: Signature) -> Blade:
    """Signed product of two blades in the given signature.

    The scale (metric contractions included) is folded into the sign; it is
    always +-1 for a +-1 diagonal.
    """
    if a.mask >> sig.n or b.mask >> sig.n:
        raise ArgumentError("blade index out of range for signature")
    mask, scale = mul_masks(a.mask, b.mask, sig.diag)
    return Blade(mask, a.sign * b.sign * scale)


# ---------------------------------------------------------------------------
# algebra elements
# ---------------------------------------------------------------------------

class CliffordElement:
    """Sparse real element: blade mask -> Fraction coefficient."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "CliffordAlgebra", terms: Mapping[int, Scalar] | None = None):
        self.algebra = algebra
        clean: dict[int, Fraction] = {}
        for mask, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[mask] = c
        self.terms = clean

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: "CliffordElement | Scalar") -> "CliffordElement":
        other = self.algebra.coerce(other)
        out = dict(self.terms)
        for mask, c in other.terms.items():
            s = out.get(mask, Fraction(0)) + c
            if s:
                out[mask] = s
            else:
                out.pop(mask, None)
        return CliffordElement(self.algebra, out)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self) -> "CliffordElement":
        return CliffordElement(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self.algebra.coerce(other))

    def __rsub__(self, other):
        return self.algebra.coerce(other) + (-self)

    def __mul__(self, other: "CliffordElement | Scalar") -> "CliffordElement":
        if isinstance(other, (int, Fraction)):
            return CliffordElement(self.algebra, {m: c * other for m, c in self.terms.items()})
        other = self.algebra.coerce(other)
        diag = self.algebra.signature.diag
        out: dict[int, Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                mask, scale = mul_masks(ma, mb, diag)
                s = out.get(mask, Fraction(0)) + ca * cb * scale
                if s:
                    out[mask] = s
                else:
                    out.pop(mask, None)
        return CliffordElement(self.algebra, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__mul__(other)
        return self.algebra.coerce(other).__mul__(self)

    def commutator(self, other: "CliffordElement") -> "CliffordElement":
        return self * other - other * self

    def anticommutator(self, other: "CliffordElement") -> "CliffordElement":
        return self * other + other * self

    # -- structure ------------------------------------------------------------

    def grade_project(self, k: int) -> "CliffordElement":
        return CliffordElement(
            self.algebra, {m: c for m, c in self.terms.items() if m.bit_count() == k}
        )

    def grades(self) -> set[int]:
        return {m.bit_count() for m in self.terms}

    def scalar_part(self) -> Fraction:
        return self.terms.get(0, Fraction(0))

    def coefficient(self, *indices: int) -> Fraction:
        return self.terms.get(mask_of(indices), Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.algebra.coerce(other)
        if not isinstance(other, CliffordElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mask in sorted(self.terms, key=lambda m: (m.bit_count(), m)):
            c = self.terms[mask]
            name = "1" if mask == 0 else "e" + "".join(str(i) for i in indices_of(mask))
            parts.append(f"{c}*{name}" if mask else f"{c}")
        return " + ".join(parts)


class CliffordAlgebra:
    """Handle for Cliff(p,q): unit, generators, and blade products.

    Immutable after construction; all operations are pure.
    """

    def __init__(self, sig: Signature):
        if sig.n > MAX_GENERATORS:
            raise ResourceLimitError(
                f"{sig.n} generators exceed the {MAX_GENERATORS}-generator cap"
            )
        self.signature = sig
        self.dim = 1 << sig.n

    def coerce(self, x) -> CliffordElement:
        if isinstance(x, CliffordElement):
            if x.algebra.signature != self.signature:
                raise ArgumentError("elements belong to different algebras")
            return x
        if isinstance(x, (int, Fraction)):
            return CliffordElement(self, {0: Fraction(x)})
        raise ArgumentError(f"cannot coerce {type(x).__name__} to CliffordElement")

    @property
    def unit(self) -> CliffordElement:
        return CliffordElement(self, {0: Fraction(1)})

    def zero(self) -> CliffordElement:
        return CliffordElement(self, {})

    def gamma(self, i: int) -> CliffordElement:
        """Generator e_i (1-based)."""
        self.signature.g(i)  # validates the index
        return CliffordElement(self, {1 << (i - 1): Fraction(1)})

    def blade(self, *indices: int, coeff: Scalar = 1) -> CliffordElement:
        """Product e_{i1} e_{i2} ... for strictly increasing indices."""
        idx = list(indices)
        if idx != sorted(idx):
            raise ArgumentError("blade indices must be strictly increasing")
        for i in idx:
            self.signature.g(i)
        return CliffordElement(self, {mask_of(idx): Fraction(coeff)})

    def basis_masks(self) -> range:
        return range(self.dim)

    def element_from_blade(self, b: Blade) -> CliffordElement:
        return CliffordElement(self, {b.mask: Fraction(b.sign)})

    def random_element(self, rng: np.random.Generator, span: int = 8) -> CliffordElement:
        """Small random element with integer coefficients (for property tests)."""
        terms = {}
        for _ in range(rng.integers(1, 6)):
            mask = int(rng.integers(0, self.dim))
            terms[mask] = terms.get(mask, 0) + int(rng.integers(-span, span + 1))
        return CliffordElement(self, terms)


def make_algebra(sig: Signature) -> CliffordAlgebra:
    """Algebra handle for the given signature (cap: 16 generators)."""
    return CliffordAlgebra(sig)


# ---------------------------------------------------------------------------
# matrix representations
# ---------------------------------------------------------------------------

_SX = np.array([[0, 1], [1, 0]], dtype=np.int64)        # squares to +1
_SZ = np.array([[1, 0], [0, -1]], dtype=np.int64)       # squares to +1
_SJ = np.array([[0, 1], [-1, 0]], dtype=np.int64)       # squares to -1


@dataclass(frozen=True)
class GammaRep:
    """Real matrix representation: gammas[i-1] represents generator i."""

    signature: Signature
    dim: int
    gammas: tuple[np.ndarray, ...]

    def gamma(self, i: int) -> np.ndarray:
        self.signature.g(i)
        return self.gammas[i - 1]

    def element_matrix(self, x: CliffordElement) -> np.ndarray:
        """Dense matrix of a Clifford element (float64; exact for dyadics)."""
        out = np.zeros((self.dim, self.dim))
        eye = np.eye(self.dim, dtype=np.int64)
        for mask, coeff in x.terms.items():
            m = eye
            for i in indices_of(mask):
                m = m @ self.gammas[i - 1]
            out += float(coeff) * m
        return out

    def anticommutator_defect(self) -> int:
        """Max absolute deviation of {g_a, g_b} - 2 g_ab from zero (integer)."""
        worst = 0
        n = self.signature.n
        eye = np.eye(self.dim, dtype=np.int64)
        for a in range(1, n + 1):
            ga = self.gammas[a - 1]
            for b in range(a, n + 1):
                gb = self.gammas[b - 1]
                target = 2 * self.signature.g(a) * eye if a == b else 0
                defect = ga @ gb + gb @ ga - target
                worst = max(worst, int(np.max(np.abs(defect))))
        return worst


def _double(gammas: list[np.ndarray]) -> list[np.ndarray]:
    """(1,1)-doubling: old generators keep their squares; appends one +1 and
    one -1 generator."""
    out = [np.kron(g, _SZ) for g in gammas]
    dim = gammas[0].shape[0] if gammas else 1
    eye = np.eye(dim, dtype=np.int64)
    out.append(np.kron(eye, _SX))
    out.append(np.kron(eye, _SJ))
    return out


@lru_cache(maxsize=None)
def matrix_rep(sig: Signature) -> GammaRep:
    """Minimal real irreducible representation by recursive doubling.

    Supported families: p == q (neutral) and p == q + 2, both of which are
    real matrix algebras of dimension 2^(n/2).  Other even signatures hit
    quaternionic cases the doubling construction cannot reach.
    """
    n = sig.n
    if n % 2 != 0 or n > 8:
        raise UnsupportedSignatureError(
            f"matrix_rep needs an even number of generators <= 8, got {n}"
        )
    if sig.p == sig.q:
        gammas: list[np.ndarray] = []
        steps = sig.p
    elif sig.p == sig.q + 2:
        gammas = [_SZ.copy(), _SX.copy()]
        steps = sig.q
    else:
        raise UnsupportedSignatureError(
            f"Cliff({sig.p},{sig.q}) is not in the p==q or p==q+2 doubling family"
        )
    for _ in range(steps):
        gammas = _double(gammas)

    dim = gammas[0].shape[0] if gammas else 1
    if not gammas:
        return GammaRep(sig, 1, ())

    # order the generators to match the requested diagonal
    plus = [g for g in gammas if np.array_equal(g @ g, np.eye(dim, dtype=np.int64))]
    minus = [g for g in gammas if not np.array_equal(g @ g, np.eye(dim, dtype=np.int64))]
    ordered = []
    for d in sig.diag:
        ordered.append(plus.pop(0) if d == 1 else minus.pop(0))
    for g in ordered:
        g.setflags(write=False)
    return GammaRep(sig, dim, tuple(ordered))


def grade_project(x: CliffordElement, k: int) -> CliffordElement:
    """Sum of terms of grade k (0 <= k <= n)."""
    n = x.algebra.signature.n
    if not 0 <= k <= n:
        raise ArgumentError(f"grade {k} outside 0..{n}")
    return x.grade_project(k)


# ---------------------------------------------------------------------------
# rank-dimension ladder
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RankDimension:
    """Dimension and increment of the iterated power space at a given rank.

    ``dim`` and ``delta`` are exact ints up to rank 4 and symbolic exponent
    towers (strings like ``2^65536``) beyond, where materialization is
    impossible.
    """

    rank: int
    dim: int | str
    delta: int | str


def _tower(rank: int) -> str:
    """Symbolic 2^2^...^65536 tower for ranks >= 5."""
    expr = "65536"
    for _ in range(rank - 4):
        expr = f"2^{expr}"
    return expr


def rank_dimensions(rank: int) -> RankDimension:
    """dim(r) = 2^dim(r-1) with dim(0) = 1; delta(r) = dim(r) - dim(r-1)."""
    if rank < 0:
        raise ArgumentError("rank must be a non-negative integer")
    if rank <= 4:
        dims = [1]
        for _ in range(rank):
            dims.append(1 << dims[-1])
        dim = dims[rank]
        delta = 1 if rank == 0 else dim - dims[rank - 1]
        return RankDimension(rank, dim, delta)
    if rank == 5:
        return RankDimension(5, _tower(5), "2^65536 - 65536")
    return RankDimension(rank, _tower(rank), f"{_tower(rank)} - {_tower(rank - 1)}")
