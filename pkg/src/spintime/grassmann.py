"""Grassmann algebra, the 16-element hyperbinary flavor basis, isospin
generators, and the triality pairing on the three 8-dimensional spaces.

The Grassmann algebra on n generators is the zero-square limit of the blade
machinery: repeated generators annihilate.  Left multiplication mu_a and the
left derivation delta_a satisfy the canonical anticommutation relations
{mu_a, delta_b} = delta_ab, {mu, mu} = {delta, delta} = 0, which makes
(mu_a + delta_a) and (mu_a - delta_a) a neutral-signature Clifford family.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

import numpy as np
import scipy.sparse as sp

from .clifford import Signature, matrix_rep, mul_masks
from .errors import ArgumentError, ClosureError, ResourceLimitError
from .ratlinalg import rank_pivoted

MAX_GRASSMANN_GENERATORS = 16


# ---------------------------------------------------------------------------
# Grassmann algebra
# ---------------------------------------------------------------------------

class GrassmannElement:
    """Sparse exterior-algebra element: subset mask -> Fraction."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[int, Fraction | int] | None = None):
        self.n = n
        clean: dict[int, Fraction] = {}
        for mask, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[mask] = c
        self.terms = clean

    def __add__(self, other: "GrassmannElement") -> "GrassmannElement":
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Fraction(0)) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return GrassmannElement(self.n, out)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GrassmannElement(self.n, {m: c * other for m, c in self.terms.items()})
        zeros = (0,) * self.n
        out: dict[int, Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                mask, scale = mul_masks(ma, mb, zeros)
                if scale == 0:
                    continue
                s = out.get(mask, Fraction(0)) + ca * cb * scale
                if s:
                    out[mask] = s
                else:
                    out.pop(mask, None)
        return GrassmannElement(self.n, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, GrassmannElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms


def _insertion_sign(mask: int, a: int) -> int:
    """Sign of moving e_a from the left into sorted position inside mask."""
    below = mask & ((1 << (a - 1)) - 1)
    return -1 if below.bit_count() & 1 else 1


class GrassmannAlgebra:
    """2^n-dimensional exterior algebra with left-mult and left-derivation
    operators as sparse matrices over the subset basis."""

    def __init__(self, n: int):
        if n > MAX_GRASSMANN_GENERATORS:
            raise ResourceLimitError(
                f"{n} generators exceed the {MAX_GRASSMANN_GENERATORS}-generator cap"
            )
        if n < 1:
            raise ArgumentError("need at least one generator")
        self.n = n
        self.dim = 1 << n
        self._mu: dict[int, sp.csr_matrix] = {}
        self._delta: dict[int, sp.csr_matrix] = {}

    def unit(self) -> GrassmannElement:
        return GrassmannElement(self.n, {0: Fraction(1)})

    def e(self, *indices: int) -> GrassmannElement:
        mask = 0
        for i in indices:
            if not 1 <= i <= self.n:
                raise ArgumentError(f"generator index {i} out of range 1..{self.n}")
            mask |= 1 << (i - 1)
        return GrassmannElement(self.n, {mask: Fraction(1)})

    def mu(self, a: int) -> sp.csr_matrix:
        """Left multiplication by e_a."""
        if not 1 <= a <= self.n:
            raise ArgumentError(f"generator index {a} out of range 1..{self.n}")
        if a not in self._mu:
            bit = 1 << (a - 1)
            rows, cols, vals = [], [], []
            for s in range(self.dim):
                if s & bit:
                    continue
                rows.append(s | bit)
                cols.append(s)
                vals.append(_insertion_sign(s, a))
            self._mu[a] = sp.csr_matrix(
                (vals, (rows, cols)), shape=(self.dim, self.dim), dtype=np.int64
            )
        return self._mu[a]

    def delta(self, a: int) -> sp.csr_matrix:
        """Left derivation with respect to e_a (adjoint of mu)."""
        if not 1 <= a <= self.n:
            raise ArgumentError(f"generator index {a} out of range 1..{self.n}")
        if a not in self._delta:
            self._delta[a] = self.mu(a).T.tocsr()
        return self._delta[a]

    def element_vector(self, x: GrassmannElement) -> np.ndarray:
        v = np.zeros(self.dim)
        for m, c in x.terms.items():
            v[m] = float(c)
        return v

    def vector_element(self, v: np.ndarray) -> GrassmannElement:
        return GrassmannElement(
            self.n, {m: Fraction(v[m]).limit_denominator(1 << 30) for m in range(self.dim) if v[m]}
        )


def grassmann_algebra(n: int) -> GrassmannAlgebra:
    """Exterior algebra handle (cap: 16 generators)."""
    return GrassmannAlgebra(n)


def flavor_gammas(alg: GrassmannAlgebra | None = None) -> list[sp.csr_matrix]:
    """Eight operators on the 16-dim space: mu_1..mu_4 then delta_1..delta_4.

    In the (mu + delta, mu - delta) basis they satisfy a neutral-signature
    Clifford anticommutator.
    """
    alg = alg or grassmann_algebra(4)
    if alg.n < 4:
        raise ArgumentError("flavor generators need 4 Grassmann generators")
    return [alg.mu(a) for a in range(1, 5)] + [alg.delta(a) for a in range(1, 5)]


# ---------------------------------------------------------------------------
# hyperbinary flavor basis
# ---------------------------------------------------------------------------

COLOR_NAMES = {4: "R", 8: "G", 12: "B"}
ISOSPIN_NAMES = {1: "U", 2: "D"}


@dataclass(frozen=True)
class FlavorLabel:
    """Classification of one of the 16 basis elements by tier and tags."""

    serial: int
    symbol: str
    tier: int
    kind: str           # "lepton" | "quark"
    color: str | None   # None | "R" | "G" | "B"
    isospin_slot: str | None  # None | "U" | "D"


def _tier(serial: int) -> int:
    """Rank of the smallest iterated power space containing the serial."""
    for rank, dim in enumerate((1, 2, 4, 16)):
        if serial < dim:
            return rank
    raise ArgumentError(f"serial {serial} out of range 0..15")


def classify_flavor(serial: int) -> FlavorLabel:
    """Tier partition (sizes 1, 1, 2, 12) with quark = lepton-tag ^ color."""
    if not 0 <= serial <= 15:
        raise ArgumentError(f"serial {serial} out of range 0..15")
    tier = _tier(serial)
    kind = "quark" if tier == 3 else "lepton"
    lepton_bits = serial & 0b0011
    color_bits = serial & 0b1100
    color = COLOR_NAMES.get(color_bits) if kind == "quark" else None
    return FlavorLabel(
        serial=serial,
        symbol=format(serial, "04b"),
        tier=tier,
        kind=kind,
        color=color,
        isospin_slot=ISOSPIN_NAMES.get(lepton_bits),
    )


def hyperbinary_basis() -> list[tuple[FlavorLabel, np.ndarray]]:
    """All 16 labels with their one-hot basis vectors (serial-indexed)."""
    out = []
    for serial in range(16):
        vec = np.zeros(16)
        vec[serial] = 1.0
        out.append((classify_flavor(serial), vec))
    return out


def flavor_table_rows() -> list[dict]:
    """Rows for the CSV export: serial, symbol, tier, kind, color, isospin."""
    rows = []
    for label, _ in hyperbinary_basis():
        rows.append(
            {
                "serial": label.serial,
                "symbol": label.symbol,
                "tier": label.tier,
                "kind": label.kind,
                "color": label.color or "none",
                "isospin_slot": label.isospin_slot or "none",
            }
        )
    return rows


# ---------------------------------------------------------------------------
# isospin generators
# ---------------------------------------------------------------------------

#: Real trace-free 2x2 basis on each doublet.
TAU_BASIS = (
    np.array([[0, 1], [1, 0]], dtype=np.int64),
    np.array([[0, -1], [1, 0]], dtype=np.int64),
    np.array([[1, 0], [0, -1]], dtype=np.int64),
)

DOUBLETS = ((5, 6), (7, 8))


def isospin_generators(
    alg: GrassmannAlgebra | None = None,
    doublets: tuple[tuple[int, int], ...] = DOUBLETS,
    taus: tuple[np.ndarray, ...] = TAU_BASIS,
) -> list[sp.csr_matrix]:
    """Quadratic operators I_k = sum over doublets of e^{k'} tau_k d_{k'}."""
    alg = alg or grassmann_algebra(8)
    for d1, d2 in doublets:
        if max(d1, d2) > alg.n:
            raise ArgumentError("doublet index exceeds generator count")
    out = []
    for tau in taus:
        op = sp.csr_matrix((alg.dim, alg.dim), dtype=np.int64)
        for pair in doublets:
            for i in range(2):
                for j in range(2):
                    if tau[i, j]:
                        op = op + int(tau[i, j]) * (alg.mu(pair[i]) @ alg.delta(pair[j]))
        out.append(op.tocsr())
    return out


def isospin_structure_constants(
    gens: list[sp.csr_matrix], tol: float = 1e-9
) -> np.ndarray:
    """Measured constants c[a][b][k] with [I_a, I_b] = sum_k c I_k.

    Solved by least squares on the flattened operators and verified exactly;
    non-closure raises.
    """
    mats = [g.toarray().astype(float) for g in gens]
    basis = np.stack([m.ravel() for m in mats], axis=1)
    n = len(gens)
    c = np.zeros((n, n, n))
    for a in range(n):
        for b in range(n):
            br = (mats[a] @ mats[b] - mats[b] @ mats[a]).ravel()
            coeffs, res, *_ = np.linalg.lstsq(basis, br, rcond=None)
            recon = basis @ coeffs
            if np.max(np.abs(recon - br)) > tol:
                raise ClosureError(f"[I_{a+1}, I_{b+1}] escapes the isospin span")
            c[a, b] = coeffs
    return c


# ---------------------------------------------------------------------------
# triality
# ---------------------------------------------------------------------------

@dataclass
class TrialityTriple:
    """The 8-dim vector space and the two half-spinor spaces of Cliff(4,4),
    with the trilinear pairing built from the spinor conjugation."""

    signature: Signature
    dim: int
    basis_plus: np.ndarray    # 16 x 8, orthonormal columns spanning S+
    basis_minus: np.ndarray   # 16 x 8
    intertwiner: np.ndarray   # A with A g_a A^-1 = g_a^T for all generators
    gammas: tuple[np.ndarray, ...]
    raised: tuple[int, ...]

    def vector_matrix(self, v: np.ndarray) -> np.ndarray:
        """Matrix of the grade-1 element with raised components."""
        v = np.asarray(v, dtype=float)
        if v.shape != (8,):
            raise ArgumentError("vector slot expects 8 components")
        out = np.zeros((16, 16))
        for n in range(8):
            out += v[n] * self.raised[n] * self.gammas[n]
        return out

    def quadratic_form(self, v: np.ndarray) -> float:
        v = np.asarray(v, dtype=float)
        return float(sum(self.raised[n] * v[n] ** 2 for n in range(8)))


def _eigenspace_basis(mat: np.ndarray, value: float) -> np.ndarray:
    # projector onto the eigenspace has singular values exactly 0 and 1,
    # so an SVD split is rank-revealing
    proj = 0.5 * (np.eye(mat.shape[0]) + value * mat)
    u, s, _ = np.linalg.svd(proj)
    return u[:, s > 0.5]


def triality_triple(sig: Signature | None = None) -> TrialityTriple:
    """Half-spinor split and conjugation intertwiner for Cliff(4,4).

    The chirality element (product of all eight generators) squares to +1
    and anticommutes with grade-1; its eigenspaces are the half-spinor
    spaces.  The intertwiner is the product of the negative-square
    generators: it commutes with symmetric generators and anticommutes with
    antisymmetric ones, which is exactly the transpose pattern.
    """
    sig = sig or Signature(4, 4)
    if (sig.p, sig.q) != (4, 4):
        raise ArgumentError("triality is built on the neutral Cliff(4,4)")
    rep = matrix_rep(sig)
    gammas = rep.gammas
    omega = np.eye(rep.dim, dtype=np.int64)
    for g in gammas:
        omega = omega @ g
    if not np.array_equal(omega @ omega, np.eye(rep.dim, dtype=np.int64)):
        raise ArgumentError("chirality element does not square to +1")
    b_plus = _eigenspace_basis(omega.astype(float), +1.0)
    b_minus = _eigenspace_basis(omega.astype(float), -1.0)
    if b_plus.shape[1] != 8 or b_minus.shape[1] != 8:
        raise ArgumentError("half-spinor spaces are not 8-dimensional")
    inter = np.eye(rep.dim, dtype=np.int64)
    for i in range(1, 9):
        if sig.g(i) == -1:
            inter = inter @ rep.gamma(i)
    raised = tuple(sig.g(i) for i in range(1, 9))
    return TrialityTriple(
        sig, rep.dim, b_plus, b_minus, inter.astype(float), gammas, raised
    )


def triality_form(
    triple: TrialityTriple, v: np.ndarray, psi_plus: np.ndarray, psi_minus: np.ndarray
) -> float:
    """Trilinear scalar: conjugated plus-spinor paired with v acting on the
    minus-spinor."""
    psi_plus = np.asarray(psi_plus, dtype=float)
    psi_minus = np.asarray(psi_minus, dtype=float)
    if psi_plus.shape != (8,) or psi_minus.shape != (8,):
        raise ArgumentError("spinor slots expect 8 components")
    big_plus = triple.basis_plus @ psi_plus
    big_minus = triple.basis_minus @ psi_minus
    return float(big_plus @ triple.intertwiner @ triple.vector_matrix(v) @ big_minus)


def triality_pairing(
    triple: TrialityTriple, fixed: str, vec: np.ndarray
) -> np.ndarray:
    """8x8 pairing of the two remaining spaces for a fixed vector in one."""
    vec = np.asarray(vec, dtype=float)
    if not np.any(vec):
        raise ArgumentError("fixed vector must be nonzero")
    if fixed == "vector":
        core = triple.intertwiner @ triple.vector_matrix(vec)
        return triple.basis_plus.T @ core @ triple.basis_minus
    eye = np.eye(8)
    if fixed == "plus":
        rows = [
            [
                triality_form(triple, eye[n], vec, eye[j])
                for j in range(8)
            ]
            for n in range(8)
        ]
        return np.array(rows)
    if fixed == "minus":
        rows = [
            [
                triality_form(triple, eye[n], eye[i], vec)
                for i in range(8)
            ]
            for n in range(8)
        ]
        return np.array(rows)
    raise ArgumentError("fixed must be one of 'vector', 'plus', 'minus'")


@dataclass
class DualityReport:
    fixed: str
    rank: int
    full: bool
    pairing: np.ndarray


def triality_duality(
    triple: TrialityTriple, fixed: str, vec: np.ndarray, tol: float = 1e-9
) -> DualityReport:
    """Rank of the induced pairing (pivoted elimination); full rank means the
    fixed vector sets up a duality between the remaining two spaces."""
    pairing = triality_pairing(triple, fixed, vec)
    rank = rank_pivoted(pairing, tol=tol)
    return DualityReport(fixed, rank, rank == 8, pairing)
