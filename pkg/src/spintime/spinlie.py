"""Bivector Lie algebras so(p,q) inside Clifford algebras.

Generators are (scaled) products g_a g_b with a < b.  Structure constants,
Killing form, and inertia are exact rational; the adjoint (left-minus-right
multiplication) operators act on the full 2^n blade basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .clifford import CliffordAlgebra, CliffordElement
from .errors import ArgumentError, ClosureError, ResourceLimitError
from .ratlinalg import inertia


@dataclass(frozen=True)
class SoGenerator:
    """Bivector generator J_ab = c * g_a g_b for an ordered pair a < b."""

    pair: tuple[int, int]
    element: CliffordElement

    def __repr__(self) -> str:
        return f"J{self.pair}"


def so_generators(alg: CliffordAlgebra, half: bool = True) -> list[SoGenerator]:
    """All C(n,2) bivector generators; coefficient 1/2 when half else 1."""
    n = alg.signature.n
    if n < 2:
        raise ArgumentError("need at least 2 generators to form bivectors")
    coeff = Fraction(1, 2) if half else Fraction(1)
    gens = []
    for a, b in combinations(range(1, n + 1), 2):
        gens.append(SoGenerator((a, b), alg.blade(a, b, coeff=coeff)))
    return gens


@dataclass
class StructureTensor:
    """Bracket constants [J_i, J_j] = sum_k C[i][j][k] J_k (exact rationals)."""

    basis: list[SoGenerator]
    C: list[list[dict[int, Fraction]]]

    def bracket_coeffs(self, i: int, j: int) -> dict[int, Fraction]:
        return self.C[i][j]

    def index_of(self, pair: tuple[int, int]) -> int:
        for k, gen in enumerate(self.basis):
            if gen.pair == pair:
                return k
        raise ArgumentError(f"pair {pair} not in basis")

    def ad_matrix(self, i: int) -> np.ndarray:
        """Adjoint action of basis[i] on the span, as a float64 matrix."""
        dim = len(self.basis)
        m = np.zeros((dim, dim))
        for j in range(dim):
            for k, c in self.C[i][j].items():
                m[k, j] = float(c)
        return m


def _expand_in_basis(
    x: CliffordElement, basis: list[SoGenerator]
) -> dict[int, Fraction] | None:
    """Expand a grade-2 element in the generator basis; None if it escapes."""
    by_mask = {}
    for k, gen in enumerate(basis):
        ((mask, coeff),) = gen.element.terms.items()
        by_mask[mask] = (k, coeff)
    out: dict[int, Fraction] = {}
    for mask, c in x.terms.items():
        hit = by_mask.get(mask)
        if hit is None:
            return None
        k, gen_coeff = hit
        out[k] = c / gen_coeff
    return out


def structure_constants(gens: list[SoGenerator]) -> StructureTensor:
    """Exact structure constants; raises ClosureError naming a bad pair."""
    dim = len(gens)
    C: list[list[dict[int, Fraction]]] = [[{} for _ in range(dim)] for _ in range(dim)]
    for i in range(dim):
        for j in range(dim):
            br = gens[i].element.commutator(gens[j].element)
            coeffs = _expand_in_basis(br, gens)
            if coeffs is None:
                raise ClosureError(
                    f"bracket [{gens[i]}, {gens[j]}] leaves the generator span"
                )
            C[i][j] = coeffs
    return StructureTensor(list(gens), C)


def jacobi_defect(st: StructureTensor) -> Fraction:
    """Max |[[a,b],c] + [[b,c],a] + [[c,a],b]| coefficient over all triples."""
    dim = len(st.basis)
    worst = Fraction(0)
    for a in range(dim):
        for b in range(a + 1, dim):
            for c in range(b + 1, dim):
                acc: dict[int, Fraction] = {}
                for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                    for k, cxy in st.C[x][y].items():
                        for m, ckz in st.C[k][z].items():
                            acc[m] = acc.get(m, Fraction(0)) + cxy * ckz
                for v in acc.values():
                    worst = max(worst, abs(v))
    return worst


# ---------------------------------------------------------------------------
# Killing form
# ---------------------------------------------------------------------------

@dataclass
class KillingMatrix:
    """K_ij = tr(ad_i ad_j) over the generator basis, with exact inertia."""

    basis: list[SoGenerator]
    K: list[list[Fraction]]
    signature: tuple[int, int, int]

    def entry(self, i: int, j: int) -> Fraction:
        return self.K[i][j]

    def as_array(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.K])


def killing_form(st: StructureTensor) -> KillingMatrix:
    """Exact Killing form tr(ad_a ad_b) with Sylvester inertia."""
    dim = len(st.basis)
    K = [[Fraction(0)] * dim for _ in range(dim)]
    for a in range(dim):
        for b in range(a, dim):
            total = Fraction(0)
            for c in range(dim):
                for d, cac in st.C[a][c].items():
                    total += cac * st.C[b][d].get(c, Fraction(0))
            K[a][b] = total
            K[b][a] = total
    pos, neg, zero = inertia(K)
    return KillingMatrix(st.basis, K, (pos, neg, zero))


# ---------------------------------------------------------------------------
# adjoint operators on the full Clifford algebra
# ---------------------------------------------------------------------------

@dataclass
class AdjointOperator:
    """Matrix of y -> xy - yx on the blade basis, stored sparsely."""

    source: CliffordElement
    dim: int
    entries: dict[tuple[int, int], Fraction]

    def dense(self) -> np.ndarray:
        m = np.zeros((self.dim, self.dim))
        for (r, c), v in self.entries.items():
            m[r, c] = float(v)
        return m

    def apply(self, x: CliffordElement) -> CliffordElement:
        return self.source.commutator(x)


def adjoint_operator(x: CliffordElement, alg: CliffordAlgebra) -> AdjointOperator:
    """Left-minus-right multiplication by x, over all 2^n blades."""
    if alg.dim > 256:
        raise ResourceLimitError(f"adjoint carrier {alg.dim} exceeds the 256 cap")
    x = alg.coerce(x)
    entries: dict[tuple[int, int], Fraction] = {}
    for col in range(alg.dim):
        basis_elem = CliffordElement(alg, {col: Fraction(1)})
        image = x.commutator(basis_elem)
        for row, coeff in image.terms.items():
            entries[(row, col)] = coeff
    return AdjointOperator(x, alg.dim, entries)


def adjoint_trace(a: AdjointOperator, b: AdjointOperator) -> Fraction:
    """tr(a b) using sparsity: sum of a[i,j] * b[j,i]."""
    total = Fraction(0)
    for (i, j), v in a.entries.items():
        w = b.entries.get((j, i))
        if w is not None:
            total += v * w
    return total


def adjoint_trace_form(
    gens: list[SoGenerator], alg: CliffordAlgebra
) -> list[list[Fraction]]:
    """Matrix tr(Dg_a Dg_b) over the full algebra (the cell trace form)."""
    adjoints = [adjoint_operator(g.element, alg) for g in gens]
    dim = len(gens)
    out = [[Fraction(0)] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(i, dim):
            t = adjoint_trace(adjoints[i], adjoints[j])
            out[i][j] = t
            out[j][i] = t
    return out


def proportionality_constant(
    form: list[list[Fraction]], K: KillingMatrix
) -> Fraction:
    """The single lambda with form = lambda * K; raises if no single constant."""
    lam: Fraction | None = None
    dim = len(K.basis)
    for i in range(dim):
        for j in range(dim):
            k = K.K[i][j]
            f = form[i][j]
            if k == 0:
                if f != 0:
                    raise ArgumentError("forms are not proportional (zero pattern)")
                continue
            ratio = f / k
            if lam is None:
                lam = ratio
            elif lam != ratio:
                raise ArgumentError(f"ratio varies: {lam} vs {ratio} at ({i},{j})")
    if lam is None:
        raise ArgumentError("Killing matrix is identically zero")
    return lam


# ---------------------------------------------------------------------------
# block decomposition of the so(3,3) Killing form
# ---------------------------------------------------------------------------

@dataclass
class BlockReport:
    """Restricted signatures per block and the off-block maximum."""

    blocks: dict[str, tuple[int, int, int]]
    block_signature: dict[str, int]
    off_block_max: Fraction
    total: int


def standard_partition() -> dict[tuple[int, int], str]:
    """The position/momentum/rotation/center split of the 15 so(3,3) pairs."""
    part: dict[tuple[int, int], str] = {}
    for m in range(1, 5):
        part[(m, 6)] = "x"
        part[(m, 5)] = "p"
    for a, b in combinations(range(1, 5), 2):
        part[(a, b)] = "lorentz"
    part[(5, 6)] = "c"
    return part


def proposition_blocks(
    K: KillingMatrix, partition: dict[tuple[int, int], str]
) -> BlockReport:
    """Check K is block-diagonal under the partition; report block inertias."""
    pairs = {g.pair for g in K.basis}
    if set(partition) != pairs:
        missing = pairs - set(partition)
        extra = set(partition) - pairs
        raise ArgumentError(
            f"partition must cover the basis exactly (missing {missing}, extra {extra})"
        )
    index = {g.pair: i for i, g in enumerate(K.basis)}
    names = sorted(set(partition.values()))
    members = {name: [index[p] for p, n in partition.items() if n == name] for name in names}

    off_max = Fraction(0)
    dim = len(K.basis)
    block_of = [partition[K.basis[i].pair] for i in range(dim)]
    for i in range(dim):
        for j in range(dim):
            if block_of[i] != block_of[j]:
                off_max = max(off_max, abs(K.K[i][j]))

    blocks: dict[str, tuple[int, int, int]] = {}
    signature: dict[str, int] = {}
    for name in names:
        idx = members[name]
        sub = [[K.K[i][j] for j in idx] for i in idx]
        pos, neg, zero = inertia(sub)
        blocks[name] = (pos, neg, zero)
        signature[name] = pos - neg
    return BlockReport(blocks, signature, off_max, sum(signature.values()))
