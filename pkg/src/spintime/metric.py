"""Metric machinery: curvature commutators, Killing operators, and the
quantified metric with its symmetric/skew decomposition.

The Killing operator of an index-pair pair is the composition of the two
adjoint operators on the cell algebra; its trace is the cell trace form
(proportional to the Killing form).  Quantifying both factors over N cells
and splitting under pair exchange isolates a skew part equal to half the
quantified commutator: it vanishes identically when all four indices are
distinct and shrinks relative to the symmetric part as N grows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.sparse as sp

from .clifford import FRAME33, CliffordAlgebra, CliffordElement, Signature, make_algebra, matrix_rep
from .errors import ArgumentError, ContractError, ResourceLimitError
from .grassmann import GrassmannAlgebra
from .quantify import (
    MATERIALIZE_MAX_DIM,
    cell_bivector,
    dimension_cap,
    quantify_operator,
)
from .spinlie import adjoint_operator

SPEED_OF_LIGHT = 299792458.0  # m/s


# ---------------------------------------------------------------------------
# curvature commutator
# ---------------------------------------------------------------------------

@dataclass
class CurvatureResult:
    """[g_m g_w, g_m' g_w] reduced to a single bivector with its scale."""

    m: int
    m_prime: int
    middle: int
    element: CliffordElement
    scale: Fraction  # coefficient on g_m g_m' (0 when m == m')


def curvature_commutator(
    m: int, m_prime: int, sig: Signature = FRAME33, middle: int = 5
) -> CurvatureResult:
    """Commutator of two momentum-type bivectors sharing the middle index.

    Requires the middle index to square to -1; the result is +-2 times the
    rotation bivector of the two outer indices.
    """
    if sig.g(middle) != -1:
        raise ContractError(
            f"index {middle} squares to {sig.g(middle)}; the commutator "
            "identity needs a -1 square"
        )
    alg = make_algebra(sig)
    a = alg.gamma(m) * alg.gamma(middle)
    b = alg.gamma(m_prime) * alg.gamma(middle)
    comm = a.commutator(b)
    if m == m_prime:
        if not comm.is_zero():
            raise ContractError("commutator with itself must vanish")
        return CurvatureResult(m, m_prime, middle, comm, Fraction(0))
    target = alg.gamma(m) * alg.gamma(m_prime)
    ((mask, tcoeff),) = target.terms.items()
    if set(comm.terms) != {mask}:
        raise ContractError("commutator is not proportional to the rotation bivector")
    scale = comm.terms[mask] / tcoeff
    return CurvatureResult(m, m_prime, middle, comm, scale)


# ---------------------------------------------------------------------------
# Killing operators
# ---------------------------------------------------------------------------

Entries = dict[tuple[int, int], Fraction]


def _compose(a: Entries, b: Entries) -> Entries:
    rows: dict[int, list[tuple[int, Fraction]]] = {}
    for (j, k), v in b.items():
        rows.setdefault(j, []).append((k, v))
    out: Entries = {}
    for (i, j), va in a.items():
        for k, vb in rows.get(j, ()):
            key = (i, k)
            s = out.get(key, Fraction(0)) + va * vb
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


def _trace(entries: Entries) -> Fraction:
    return sum((v for (i, j), v in entries.items() if i == j), Fraction(0))


@dataclass
class KillingOperatorPair:
    """Composition of two adjoint bivector operators on the cell algebra."""

    pair_a: tuple[int, int]
    pair_b: tuple[int, int]
    dim: int
    entries: Entries
    trace: Fraction

    def dense(self) -> np.ndarray:
        m = np.zeros((self.dim, self.dim))
        for (r, c), v in self.entries.items():
            m[r, c] = float(v)
        return m


def _pair_element(
    alg: CliffordAlgebra, pair: tuple[int, int], half: bool
) -> CliffordElement:
    a, b = pair
    if a == b:
        raise ArgumentError("index pair must have distinct entries")
    coeff = Fraction(1, 2) if half else Fraction(1)
    return (alg.gamma(a) * alg.gamma(b)) * coeff


def killing_operator(
    pair_a: tuple[int, int],
    pair_b: tuple[int, int],
    alg: CliffordAlgebra | None = None,
    half: bool = True,
) -> KillingOperatorPair:
    """Adjoint composition whose trace is the cell trace-form entry."""
    alg = alg or make_algebra(FRAME33)
    if alg.dim > 256:
        raise ResourceLimitError(f"cell algebra dimension {alg.dim} exceeds 256")
    da = adjoint_operator(_pair_element(alg, pair_a, half), alg)
    db = adjoint_operator(_pair_element(alg, pair_b, half), alg)
    entries = _compose(da.entries, db.entries)
    return KillingOperatorPair(pair_a, pair_b, alg.dim, entries, _trace(entries))


# -- adjoint closure: left/right multiplications over the blade basis ------

def _parity_matrix(dim: int, n: int) -> np.ndarray:
    signs = np.array([1 if bin(m).count("1") % 2 == 0 else -1 for m in range(dim)])
    return np.diag(signs).astype(np.int64)


def left_gamma_matrix(alg: CliffordAlgebra, a: int) -> np.ndarray:
    """Left multiplication by g_a on the blade basis, as mu_a + g_aa delta_a."""
    gr = GrassmannAlgebra(alg.signature.n)
    mat = gr.mu(a) + alg.signature.g(a) * gr.delta(a)
    return mat.toarray().astype(np.int64)


def right_gamma_matrix(alg: CliffordAlgebra, a: int) -> np.ndarray:
    """Right multiplication by g_a: (mu_a - g_aa delta_a) after parity."""
    gr = GrassmannAlgebra(alg.signature.n)
    mat = (gr.mu(a) - alg.signature.g(a) * gr.delta(a)).toarray().astype(np.int64)
    return mat @ _parity_matrix(alg.dim, alg.signature.n)


def adjoint_reconstruction_defect(
    alg: CliffordAlgebra, pair: tuple[int, int]
) -> int:
    """Rebuild the adjoint of a bivector from mu/delta operators.

    Delta g_ab = L_a L_b - R_b R_a with L and R expressed through left
    multiplications and left derivations; the defect is 0 exactly.
    """
    a, b = pair
    la, lb = left_gamma_matrix(alg, a), left_gamma_matrix(alg, b)
    ra, rb = right_gamma_matrix(alg, a), right_gamma_matrix(alg, b)
    rebuilt = la @ lb - rb @ ra
    direct = adjoint_operator(alg.gamma(a) * alg.gamma(b), alg).dense()
    return int(np.max(np.abs(rebuilt - np.rint(direct).astype(np.int64))))


# ---------------------------------------------------------------------------
# quantified metric
# ---------------------------------------------------------------------------

@dataclass
class QuantifiedMetric:
    """Product of two quantified adjoint factors with its exchange split."""

    n_cells: int
    pair_a: tuple[int, int]
    pair_b: tuple[int, int]
    carrier: str
    cell_dim: int
    sym_norm: float
    skew_norm: float
    materialized: bool
    op: sp.csr_matrix | None = None
    sym_part: sp.csr_matrix | None = None
    skew_part: sp.csr_matrix | None = None

    @property
    def ratio(self) -> float:
        return self.skew_norm / self.sym_norm if self.sym_norm else math.inf

    def shares_index(self) -> bool:
        return bool(set(self.pair_a) & set(self.pair_b))


def _coproduct_frobenius_sq(cell: np.ndarray, n: int) -> float:
    """||Q(c, N)||_F^2 in closed form from cell traces."""
    d = cell.shape[0]
    frob = float(np.sum(cell * cell))
    tr = float(np.trace(cell))
    return n * d ** (n - 1) * frob + n * (n - 1) * d ** (n - 2) * tr**2


def _pair_product_norms(
    cell_a: np.ndarray, cell_b: np.ndarray, n: int
) -> tuple[float, float]:
    """Frobenius norms of the exchange-symmetric and skew parts of
    Q(a, N) Q(b, N), in closed form for traceless cells."""
    d = cell_a.shape[0]
    if abs(np.trace(cell_a)) > 1e-12 or abs(np.trace(cell_b)) > 1e-12:
        raise ArgumentError("closed-form norms require traceless cell operators")
    comm = cell_a @ cell_b - cell_b @ cell_a
    sym_cell = 0.5 * (cell_a @ cell_b + cell_b @ cell_a)
    skew_sq = 0.25 * _coproduct_frobenius_sq(comm, n)
    cross = 0.0
    if n >= 2:
        fa = float(np.sum(cell_a * cell_a))
        fb = float(np.sum(cell_b * cell_b))
        fab = float(np.sum(cell_a * cell_b))  # tr(a^T b)
        cross = n * (n - 1) * d ** (n - 2) * (fa * fb + fab**2)
    sym_sq = _coproduct_frobenius_sq(sym_cell, n) + cross
    return math.sqrt(sym_sq), math.sqrt(skew_sq)


def _adjoint_cell_matrix(
    alg: CliffordAlgebra, pair: tuple[int, int], half: bool
) -> np.ndarray:
    return adjoint_operator(_pair_element(alg, pair, half), alg).dense()


def quantified_metric(
    pair_a: tuple[int, int],
    pair_b: tuple[int, int],
    n_cells: int,
    carrier: str = "auto",
    sig: Signature = FRAME33,
    half: bool = True,
) -> QuantifiedMetric:
    """Quantified Killing-operator pair with its exchange decomposition.

    carrier "adjoint" uses the full cell-algebra adjoint action (dimension
    2^n per cell); "spinor" uses the spinor representation's bivectors,
    which obey the same commutation relations, for larger N.  Norms come
    from exact closed-form trace identities; small N also materializes the
    sparse operators as a cross-check and for downstream use.
    """
    if n_cells < 1:
        raise ArgumentError("cell count must be >= 1")
    alg = make_algebra(sig)
    if carrier == "auto":
        carrier = "adjoint" if alg.dim**n_cells <= dimension_cap() else "spinor"
    if carrier == "adjoint":
        if alg.dim**n_cells > dimension_cap():
            raise ResourceLimitError(
                f"adjoint carrier needs dimension {alg.dim ** n_cells}"
            )
        cell_a = _adjoint_cell_matrix(alg, pair_a, half)
        cell_b = _adjoint_cell_matrix(alg, pair_b, half)
    elif carrier == "spinor":
        rep = matrix_rep(sig)
        cell_a = cell_bivector(*pair_a, sig, half, rep)
        cell_b = cell_bivector(*pair_b, sig, half, rep)
    else:
        raise ArgumentError("carrier must be 'auto', 'adjoint', or 'spinor'")

    sym_norm, skew_norm = _pair_product_norms(cell_a, cell_b, n_cells)
    d = cell_a.shape[0]
    qm = QuantifiedMetric(
        n_cells, pair_a, pair_b, carrier, d, sym_norm, skew_norm, False
    )
    if d**n_cells <= MATERIALIZE_MAX_DIM:
        qa = quantify_operator(cell_a, n_cells).to_sparse()
        qb = quantify_operator(cell_b, n_cells).to_sparse()
        op = (qa @ qb).tocsr()
        exchanged = (qb @ qa).tocsr()
        qm.op = op
        qm.sym_part = ((op + exchanged) * 0.5).tocsr()
        qm.skew_part = ((op - exchanged) * 0.5).tocsr()
        qm.materialized = True
    return qm


def sparse_frobenius(mat: sp.spmatrix) -> float:
    data = mat.tocoo().data
    return float(np.sqrt(np.sum(data * data))) if data.size else 0.0


@dataclass
class SymmetryReport:
    n_cells: int
    pair_a: tuple[int, int]
    pair_b: tuple[int, int]
    sym_norm: float
    skew_norm: float
    ratio: float
    shared_indices: tuple[int, ...]
    carrier: str


def metric_symmetry_analysis(qm: QuantifiedMetric) -> SymmetryReport:
    """Norms of the exchange-symmetric and skew parts with the repeated-index
    pattern that triggers the asymmetry."""
    shared = tuple(sorted(set(qm.pair_a) & set(qm.pair_b)))
    return SymmetryReport(
        qm.n_cells, qm.pair_a, qm.pair_b,
        qm.sym_norm, qm.skew_norm, qm.ratio, shared, qm.carrier,
    )


# ---------------------------------------------------------------------------
# curvature unit
# ---------------------------------------------------------------------------

def curvature_unit(t_seconds: float, speed_of_light: float = SPEED_OF_LIGHT) -> float:
    """One quantum unit of curvature, 1/(c T)^2, in m^-2 for SI inputs.

    Pass speed_of_light=1 for natural-units mode.
    """
    if t_seconds <= 0:
        raise ArgumentError("duration must be positive")
    return 1.0 / (speed_of_light * t_seconds) ** 2
