"""Coproduct quantification: per-cell summed operators on tensor powers.

A cell operator c (default: a bivector of the 8-dimensional Cliff(3,3)
spinor representation) is promoted to N cells as

    Q(c, N) = sum_k  I x ... x c (slot k) x ... x I,

which is a Lie-algebra homomorphism: [Q(a), Q(b)] = Q([a, b]) exactly.
Spectra of quantified bivectors are sumsets of cell eigenvalues, hence
integer-spaced (coefficient-1 convention), symmetric, and bounded by
N times the cell extremum; extremal values add under cell composition,
so there is no wraparound of the momentum spectrum.

Index raising in the orbital-variable table is cosmetic (the source
convention defines the raised symbol by the lowered sum), so the orbital
operators are built directly from the lowered bivectors.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .clifford import (
    FRAME33,
    CliffordElement,
    GammaRep,
    Signature,
    matrix_rep,
)
from .errors import (
    ArgumentError,
    ConstructionError,
    ContractError,
    ResourceLimitError,
)
from .kernels import coproduct_matvec

DEFAULT_DIM_CAP = 1 << 24
MATERIALIZE_MAX_DIM = 1 << 20
DENSE_EIG_MAX_DIM = 1 << 13


def dimension_cap() -> int:
    """Hard cap on carrier dimension; SPINTIME_MAX_DIM can only lower it."""
    cap = DEFAULT_DIM_CAP
    env = os.environ.get("SPINTIME_MAX_DIM")
    if env:
        try:
            cap = min(cap, int(env))
        except ValueError as exc:
            raise ArgumentError(f"SPINTIME_MAX_DIM={env!r} is not an integer") from exc
    return cap


def _check_cap(dim: int) -> None:
    cap = dimension_cap()
    if dim > cap:
        raise ResourceLimitError(f"carrier dimension {dim} exceeds cap {cap}")


# ---------------------------------------------------------------------------
# quantified operators
# ---------------------------------------------------------------------------

@dataclass
class QuantifiedOperator:
    """Coproduct sum of one cell operator over N tensor slots."""

    n_cells: int
    cell_dim: int
    cell: np.ndarray
    label: str = ""
    scale: float = 1.0
    op: sp.csr_matrix | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return self.cell_dim ** self.n_cells

    def scaled_cell(self) -> np.ndarray:
        return self.scale * self.cell

    def matvec(self, x: np.ndarray) -> np.ndarray:
        if self.op is not None:
            return self.op @ x
        return coproduct_matvec(self.scaled_cell(), np.asarray(x), self.n_cells)

    def to_sparse(self) -> sp.csr_matrix:
        if self.op is None:
            if self.dim > MATERIALIZE_MAX_DIM:
                raise ResourceLimitError(
                    f"dimension {self.dim} too large to materialize"
                )
            self.op = _materialize(self.scaled_cell(), self.n_cells)
        return self.op

    def linear_operator(self) -> spla.LinearOperator:
        return spla.LinearOperator(
            (self.dim, self.dim), matvec=self.matvec, dtype=np.float64
        )

    def is_antisymmetric(self) -> bool:
        c = self.scaled_cell()
        return bool(np.allclose(c, -c.T, atol=0.0))

    def is_symmetric(self) -> bool:
        c = self.scaled_cell()
        return bool(np.allclose(c, c.T, atol=0.0))


def _materialize(cell: np.ndarray, n: int) -> sp.csr_matrix:
    d = cell.shape[0]
    cell_sp = sp.csr_matrix(cell)
    total: sp.csr_matrix | None = None
    for k in range(n):
        left = sp.identity(d**k, format="csr")
        right = sp.identity(d ** (n - 1 - k), format="csr")
        term = sp.kron(sp.kron(left, cell_sp, format="csr"), right, format="csr")
        total = term if total is None else total + term
    total.sum_duplicates()
    return total.tocsr()


def quantify_operator(
    cell: CliffordElement | np.ndarray,
    n_cells: int,
    rep: GammaRep | None = None,
    label: str = "",
) -> QuantifiedOperator:
    """Promote a cell operator (matrix or Clifford element) to N cells."""
    if n_cells < 1:
        raise ArgumentError("cell count must be >= 1")
    if isinstance(cell, CliffordElement):
        rep = rep or matrix_rep(cell.algebra.signature)
        mat = rep.element_matrix(cell)
        label = label or repr(cell)
    else:
        mat = np.asarray(cell, dtype=float)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ArgumentError("cell operator must be a square matrix")
    d = mat.shape[0]
    _check_cap(d**n_cells)
    qop = QuantifiedOperator(n_cells, d, mat, label=label)
    if qop.dim <= MATERIALIZE_MAX_DIM:
        qop.to_sparse()
    return qop


def bracket_defect(
    cell_a: np.ndarray, cell_b: np.ndarray, n_cells: int
) -> float:
    """max |[Q(a), Q(b)] - Q([a, b])|; zero exactly for the coproduct."""
    qa = quantify_operator(cell_a, n_cells).to_sparse()
    qb = quantify_operator(cell_b, n_cells).to_sparse()
    qc = quantify_operator(cell_a @ cell_b - cell_b @ cell_a, n_cells).to_sparse()
    diff = (qa @ qb - qb @ qa - qc).tocoo()
    return float(np.max(np.abs(diff.data))) if diff.nnz else 0.0


# ---------------------------------------------------------------------------
# orbital variables
# ---------------------------------------------------------------------------

def cell_bivector(
    a: int, b: int, sig: Signature = FRAME33, half: bool = True,
    rep: GammaRep | None = None,
) -> np.ndarray:
    """Cell matrix of c * g_a g_b (c = 1/2 when half); exact dyadic entries."""
    if a == b:
        raise ArgumentError("bivector needs two distinct indices")
    rep = rep or matrix_rep(sig)
    mat = (rep.gamma(a) @ rep.gamma(b)).astype(float)
    return 0.5 * mat if half else mat


@dataclass
class YangVariables:
    """Orbital operators on N cells: positions, momenta, the i-operator,
    and the rotation sector.  p and ihat carry the 1/N scale."""

    n_cells: int
    signature: Signature
    half: bool
    x: dict[int, QuantifiedOperator]
    p: dict[int, QuantifiedOperator]
    ihat: QuantifiedOperator
    J: dict[tuple[int, int], QuantifiedOperator]

    @property
    def scaleN(self) -> float:
        return 1.0 / self.n_cells


def yang_orbitals(
    n_cells: int, sig: Signature = FRAME33, half: bool = True
) -> YangVariables:
    """x^m = Q(c g_m6), p_m = (1/N) Q(c g_m5), ihat = (1/N) Q(c g_65)."""
    if sig.n < 6:
        raise ArgumentError("orbital construction needs at least 6 generators")
    rep = matrix_rep(sig)
    inv_n = 1.0 / n_cells

    def q(a: int, b: int, scale: float, name: str) -> QuantifiedOperator:
        qop = quantify_operator(
            cell_bivector(a, b, sig, half, rep), n_cells, label=name
        )
        qop.scale = scale
        if qop.op is not None:
            qop.op = (qop.op * scale).tocsr()
        return qop

    x = {m: q(m, 6, 1.0, f"x^{m}") for m in range(1, 5)}
    p = {m: q(m, 5, inv_n, f"p_{m}") for m in range(1, 5)}
    ihat = q(6, 5, inv_n, "ihat")
    J = {}
    for a in range(1, 5):
        for b in range(a + 1, 5):
            J[(a, b)] = q(a, b, 1.0, f"J_{a}{b}")
    return YangVariables(n_cells, sig, half, x, p, ihat, J)


# ---------------------------------------------------------------------------
# spectra
# ---------------------------------------------------------------------------

def _cell_eigenvalues(cell: np.ndarray) -> np.ndarray:
    """Real spectrum data of a symmetric or antisymmetric cell matrix:
    eigenvalues for symmetric, imaginary parts for antisymmetric."""
    if np.allclose(cell, cell.T, atol=0.0):
        return np.linalg.eigvalsh(cell)
    if np.allclose(cell, -cell.T, atol=0.0):
        return np.linalg.eigvalsh(1j * cell)
    raise ContractError("cell operator is neither symmetric nor antisymmetric")


def _sumset_spectrum(cell_vals: np.ndarray, n: int) -> np.ndarray:
    """Multiset of all N-fold sums of cell eigenvalues."""
    out = np.zeros(1)
    for _ in range(n):
        out = (out[:, None] + cell_vals[None, :]).ravel()
    return np.sort(out)


def _certify_product_spectrum(
    qop: QuantifiedOperator, tol: float, samples: int, seed: int = 7
) -> float:
    """Residual of Q on sampled tensor products of cell eigenvectors.

    Each product of per-cell eigenvectors must be an eigenvector of the
    coproduct with the summed eigenvalue; the max matvec residual certifies
    the sumset spectrum.
    """
    cell = qop.scaled_cell()
    d = qop.cell_dim
    if np.allclose(cell, cell.T, atol=0.0):
        vals, vecs = np.linalg.eigh(cell)
        vecs = vecs.astype(complex)
        factors = [(vals[i], vecs[:, i]) for i in range(d)]
    else:
        # (iA)v = hv means Av = -ih v for antisymmetric A
        hvals, hvecs = np.linalg.eigh(1j * cell)
        factors = [(hvals[i], hvecs[:, i]) for i in range(d)]
    antisym = not np.allclose(cell, cell.T, atol=0.0)
    rng = np.random.default_rng(seed)
    n = qop.n_cells
    worst = 0.0
    for _ in range(samples):
        tup = rng.integers(0, d, size=n)
        vec = np.ones(1, dtype=complex)
        lam = 0.0
        for k in tup:
            vec = np.kron(vec, factors[k][1])
            lam += factors[k][0]
        ev = -1j * lam if antisym else lam
        res = np.linalg.norm(qop.matvec(vec) - ev * vec)
        worst = max(worst, float(res))
    return worst


def spectrum(
    op: QuantifiedOperator | np.ndarray | sp.spmatrix,
    method: str = "auto",
    tol: float = 1e-9,
    extremal_k: int = 4,
) -> np.ndarray:
    """Sorted real spectrum data of a symmetric/antisymmetric real operator.

    Antisymmetric operators have purely imaginary eigenvalues; their
    imaginary parts are returned.  Coproduct operators use the exact sumset
    of cell eigenvalues, certified by product-eigenvector matvec residuals.
    Dense solves are limited to dimension 2^13; beyond that only extremal
    values are computed.
    """
    if isinstance(op, QuantifiedOperator):
        if method in ("auto", "coproduct"):
            vals = _sumset_spectrum(_cell_eigenvalues(op.scaled_cell()), op.n_cells)
            # certification matvecs build full product vectors; keep the
            # sample count proportionate for very large carriers
            samples = min(64 if op.dim <= 1 << 18 else 8, op.dim)
            resid = _certify_product_spectrum(op, tol, samples)
            if resid > tol * max(1.0, float(np.max(np.abs(vals)))):
                raise ContractError(
                    f"product-eigenvector certification failed: residual {resid}"
                )
            return vals
        mat = op.to_sparse()
    else:
        mat = op

    dense = mat.toarray() if sp.issparse(mat) else np.asarray(mat, dtype=float)
    if dense.shape[0] <= DENSE_EIG_MAX_DIM:
        if np.allclose(dense, dense.T, atol=0.0):
            return np.sort(np.linalg.eigvalsh(dense))
        if np.allclose(dense, -dense.T, atol=0.0):
            return np.sort(np.linalg.eigvalsh(1j * dense))
        raise ContractError("operator is neither symmetric nor antisymmetric")
    # iterative extremal values only
    smat = sp.csr_matrix(mat)
    sym = (abs(smat - smat.T)).max() == 0.0
    if sym:
        lo = spla.eigsh(smat, k=extremal_k, which="SA", return_eigenvectors=False)
        hi = spla.eigsh(smat, k=extremal_k, which="LA", return_eigenvectors=False)
        return np.sort(np.concatenate([lo, hi]))
    if (abs(smat + smat.T)).max() != 0.0:
        raise ContractError("operator is neither symmetric nor antisymmetric")
    gram = (smat.T @ smat).tocsr()
    top = spla.eigsh(gram, k=extremal_k, which="LA", return_eigenvectors=False)
    mags = np.sqrt(np.maximum(top, 0.0))
    return np.sort(np.concatenate([-mags, mags]))


# ---------------------------------------------------------------------------
# polarized states
# ---------------------------------------------------------------------------

@dataclass
class PolarizedState:
    """Product of per-cell extremal eigenvectors of the 65-bivector.

    The vector is complex: the cell operator is antisymmetric, so its
    extremal eigenvectors live in the complexification.  j65 is the
    (imaginary-part) eigenvalue of the quantified 65-bivector on the state,
    equal to N times the cell extremum.
    """

    n_cells: int
    vector: np.ndarray
    j65: float
    cell_vector: np.ndarray
    cell_real_vector: np.ndarray
    cell_extremum: float


def polarized_state(
    n_cells: int, sig: Signature = FRAME33, half: bool = True
) -> PolarizedState:
    """Extremal product eigenstate of the quantified 65-bivector."""
    rep = matrix_rep(sig)
    cell = cell_bivector(6, 5, sig, half, rep)
    _check_cap(rep.dim**n_cells)
    if not np.allclose(cell, -cell.T, atol=0.0):
        raise ConstructionError(
            "the 65-bivector is not antisymmetric in this frame; polarization "
            "needs indices 5 and 6 of equal metric sign"
        )
    himag = np.linalg.eigvalsh(1j * cell)
    s = float(np.max(himag))
    if s <= 1e-12:
        raise ConstructionError("cell 65-bivector has zero extremal eigenvalue")
    u1 = np.zeros(rep.dim)
    u1[0] = 1.0
    w = cell @ u1 / s
    v = (u1 - 1j * w) / math.sqrt(2.0)
    # the square of the cell bivector is -s^2, so every real vector lies in
    # an extremal rotation plane and v is an exact eigenvector; verify
    if np.linalg.norm(cell @ v - 1j * s * v) > 1e-12 * max(1.0, s):
        raise ConstructionError("cell rotation planes are not all extremal")
    vec = np.ones(1, dtype=complex)
    for _ in range(n_cells):
        vec = np.kron(vec, v)
    return PolarizedState(n_cells, vec, n_cells * s, v, u1, s)


def expectation(qop: QuantifiedOperator, psi: np.ndarray) -> complex:
    return complex(np.vdot(psi, qop.matvec(psi)))


# ---------------------------------------------------------------------------
# contraction experiment
# ---------------------------------------------------------------------------

@dataclass
class ContractionRow:
    n_cells: int
    commutator_residual: float
    centralization_residual: float
    eigenstate_residual: float
    ihat_expectation: float


@dataclass
class ContractionResult:
    m: int
    half: bool
    rows: list[ContractionRow]
    slope: float
    intercept: float

    def residuals(self) -> list[float]:
        return [r.centralization_residual for r in self.rows]


def contraction_experiment(
    n_list: list[int],
    m: int = 1,
    sig: Signature = FRAME33,
    half: bool = True,
) -> ContractionResult:
    """Centralization residuals of the i-operator on polarized states.

    Exact complex product eigenstates of the 65-bivector centralize the
    i-operator exactly at every N (residual reported in the eigenstate
    column).  The trend columns therefore use the real section of the
    per-cell polarized plane, whose dispersion decays like N^(-1/2):
    for each N the table reports

        d(N)   = || ([x^m, p_m] + g_mm * c) psi_N ||,  c = <ihat> on psi_N
        r(N)   = || (ihat - c) psi_N ||

    plus a log-log slope/intercept fit of r(N).
    """
    if not n_list:
        raise ArgumentError("N list must be nonempty")
    if not 1 <= m <= 4:
        raise ArgumentError("orbital index m must be in 1..4")
    g_mm = sig.g(m)
    rows = []
    for n in n_list:
        yv = yang_orbitals(n, sig, half)
        pol = polarized_state(n, sig, half)
        psi = np.ones(1)
        for _ in range(n):
            psi = np.kron(psi, pol.cell_real_vector)
        x_op, p_op, ihat = yv.x[m], yv.p[m], yv.ihat

        c_val = float(np.real(expectation(ihat, psi)))
        comm = x_op.matvec(p_op.matvec(psi)) - p_op.matvec(x_op.matvec(psi))
        d_n = float(np.linalg.norm(comm + g_mm * c_val * psi))
        r_n = float(np.linalg.norm(ihat.matvec(psi) - c_val * psi))

        c_eig = expectation(ihat, pol.vector)
        r_eig = float(np.linalg.norm(ihat.matvec(pol.vector) - c_eig * pol.vector))
        rows.append(ContractionRow(n, d_n, r_n, r_eig, c_val))

    slope = intercept = float("nan")
    pts = [(math.log(r.n_cells), math.log(r.centralization_residual))
           for r in rows if r.centralization_residual > 0]
    if len({p[0] for p in pts}) >= 2:
        xs = np.array([p[0] for p in pts])
        ys = np.array([p[1] for p in pts])
        slope, intercept = np.polyfit(xs, ys, 1)
    return ContractionResult(m, half, rows, float(slope), float(intercept))


# ---------------------------------------------------------------------------
# Umklapp absence
# ---------------------------------------------------------------------------

@dataclass
class UmklappReport:
    n1: int
    n2: int
    max_n1: float
    max_n2: float
    max_combined: float
    bound_j: float
    additive_defect: float
    bound_defect: float
    symmetry_defect: float

    def additive_ok(self, tol: float = 1e-9) -> bool:
        return self.additive_defect <= tol

    def bounded_ok(self, tol: float = 1e-9) -> bool:
        return self.bound_defect <= tol

    def symmetric_ok(self, tol: float = 1e-9) -> bool:
        return self.symmetry_defect <= tol


def umklapp_check(
    n1: int, n2: int, m: int = 1, sig: Signature = FRAME33, half: bool = True
) -> UmklappReport:
    """Momentum spectra are bounded intervals, not cycles.

    Extremal eigenvalues add under cell-count composition (like angular
    momenta) and every eigenvalue of the combined operator stays within
    [-j, +j] with j = N * cell extremum: no wraparound.
    """
    rep = matrix_rep(sig)
    cell = cell_bivector(m, 5, sig, half, rep)
    _check_cap(rep.dim ** (n1 + n2))

    spec1 = spectrum(quantify_operator(cell, n1, label=f"p_{m}@{n1}"))
    spec2 = spectrum(quantify_operator(cell, n2, label=f"p_{m}@{n2}"))
    spec12 = spectrum(quantify_operator(cell, n1 + n2, label=f"p_{m}@{n1+n2}"))

    s_cell = float(np.max(np.abs(_cell_eigenvalues(cell))))
    j = (n1 + n2) * s_cell
    additive = abs(float(spec12.max()) - float(spec1.max()) - float(spec2.max()))
    bound = max(0.0, float(np.max(np.abs(spec12))) - j)
    ordered = np.sort(spec12)
    symmetry = float(np.max(np.abs(ordered + ordered[::-1])))
    return UmklappReport(
        n1, n2, float(spec1.max()), float(spec2.max()), float(spec12.max()),
        j, additive, bound, symmetry,
    )


# ---------------------------------------------------------------------------
# the tail-slot action (association wrap/unwrap)
# ---------------------------------------------------------------------------

def tail_operator(cell: np.ndarray, n_cells: int) -> sp.csr_matrix:
    """Cell operator acting on the tail slot only: I x ... x I x cell.

    The wrap/unwrap pair between a cell and its enclosing composite reduces,
    in the tensor model, to embedding the action at the tail slot; unwrap
    after wrap is the identity on cell operators (see tail_restrict).
    """
    cell = np.asarray(cell, dtype=float)
    d = cell.shape[0]
    _check_cap(d**n_cells)
    left = sp.identity(d ** (n_cells - 1), format="csr")
    return sp.kron(left, sp.csr_matrix(cell), format="csr")


def tail_restrict(op: sp.spmatrix, cell_dim: int) -> np.ndarray:
    """Left-inverse of tail_operator: recover the cell block."""
    dense = op.tocsr()[:cell_dim, :cell_dim].toarray()
    return dense
