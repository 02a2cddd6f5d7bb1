"""Toy-scale dynamics: the invariant cubic bivector contraction, exponential
dynamics vectors, finite Green's-function traces, and a Clifford-word trace
engine.

The cubic operator contracts three quantified bivector factors over all
index triples with the metric; because the contraction pattern is a full
invariant, it commutes with every quantified rotation generator.  At one
cell the fully contracted expression collapses to a scalar; its higher
multi-cell grade content comes from cross-cell terms, profiled by
`grade_profile`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp

from .clifford import (
    FRAME33,
    CliffordElement,
    GammaRep,
    Signature,
    make_algebra,
    matrix_rep,
    mul_masks,
)
from .errors import ArgumentError, ContractError, ParseError
from .quantify import quantify_operator

TOL_EXP = 1e-10


# ---------------------------------------------------------------------------
# the cubic invariant operator
# ---------------------------------------------------------------------------

def _index_triples(n: int):
    for m in range(1, n + 1):
        for mp in range(1, n + 1):
            for mpp in range(1, n + 1):
                if m != mp and mp != mpp and m != mpp:
                    yield m, mp, mpp


def yang_dirac_operator(
    n_cells: int, sig: Signature = FRAME33, half: bool = True
) -> sp.csr_matrix:
    """Sum over index triples of Q(g^{m''m'}) Q(g_{m'}^m) Q(g_{mm''}).

    Outer factors carry the generator coefficient (1/2 when half); the
    middle bivector enters with coefficient 1.  Raised indices contribute
    metric signs.
    """
    rep = matrix_rep(sig)
    n = sig.n
    cache: dict[tuple[int, int], sp.csr_matrix] = {}

    def q(a: int, b: int) -> sp.csr_matrix:
        if (a, b) not in cache:
            cell = (rep.gamma(a) @ rep.gamma(b)).astype(float)
            cache[(a, b)] = quantify_operator(cell, n_cells).to_sparse()
        return cache[(a, b)]

    dim = rep.dim**n_cells
    total = sp.csr_matrix((dim, dim))
    for m, mp, mpp in _index_triples(n):
        sign = sig.g(mpp) * sig.g(mp) * sig.g(m)
        total = total + sign * (q(mpp, mp) @ q(mp, m) @ q(m, mpp))
    coeff = 0.25 if half else 1.0
    return (coeff * total).tocsr()


def yang_dirac_cell_element(
    sig: Signature = FRAME33, half: bool = True
) -> CliffordElement:
    """The one-cell contraction as a Clifford element (blade arithmetic)."""
    alg = make_algebra(sig)
    total = alg.zero()
    for m, mp, mpp in _index_triples(sig.n):
        sign = sig.g(mpp) * sig.g(mp) * sig.g(m)
        term = (
            (alg.gamma(mpp) * alg.gamma(mp))
            * (alg.gamma(mp) * alg.gamma(m))
            * (alg.gamma(m) * alg.gamma(mpp))
        )
        total = total + term * sign
    coeff = Fraction(1, 4) if half else Fraction(1)
    return total * coeff


def grade_profile(
    n_cells: int, sig: Signature = FRAME33, half: bool = True
) -> dict[int, float]:
    """Multi-cell grade content of the cubic operator.

    Every term is a tensor monomial of cell blades; the multi-cell grade of
    a monomial is the sum of per-slot blade grades.  Returns the summed
    squared coefficients per grade (relative weights).
    """
    n = sig.n
    diag = sig.diag
    terms: dict[tuple[int, ...], float] = {}
    for m, mp, mpp in _index_triples(n):
        metric_sign = sig.g(mpp) * sig.g(mp) * sig.g(m)
        factors = [(mpp, mp), (mp, m), (m, mpp)]
        for slots in np.ndindex(*(n_cells,) * 3):
            masks = [0] * n_cells
            scale = metric_sign
            dead = False
            for (a, b), slot in zip(factors, slots):
                for idx in (a, b):
                    mask, s = mul_masks(masks[slot], 1 << (idx - 1), diag)
                    scale *= s
                    masks[slot] = mask
                    if s == 0:
                        dead = True
                        break
                if dead:
                    break
            if dead:
                continue
            key = tuple(masks)
            terms[key] = terms.get(key, 0.0) + scale
    coeff = 0.25 if half else 1.0
    profile: dict[int, float] = {}
    for masks, c in terms.items():
        if abs(c) < 1e-12:
            continue
        grade = sum(m.bit_count() for m in masks)
        profile[grade] = profile.get(grade, 0.0) + (coeff * c) ** 2
    return profile


def invariance_defect(
    n_cells: int, sig: Signature = FRAME33, half: bool = True
) -> dict[tuple[int, int], float]:
    """Max |[A, Q(g_ab)]| per rotation generator: a direct claim check.

    Zero for every generator confirms invariance under simultaneous
    rotation of all factors.
    """
    rep = matrix_rep(sig)
    a_op = yang_dirac_operator(n_cells, sig, half)
    out = {}
    for a in range(1, sig.n + 1):
        for b in range(a + 1, sig.n + 1):
            cell = (rep.gamma(a) @ rep.gamma(b)).astype(float)
            q = quantify_operator(cell, n_cells).to_sparse()
            diff = (a_op @ q - q @ a_op).tocoo()
            out[(a, b)] = float(np.max(np.abs(diff.data))) if diff.nnz else 0.0
    return out


# ---------------------------------------------------------------------------
# dynamics vectors
# ---------------------------------------------------------------------------

@dataclass
class DynamicsVector:
    """Orthogonal matrix exp of the antisymmetrized isovector contraction."""

    exponent: np.ndarray
    matrix: np.ndarray
    discarded_symmetric_norm: float
    orthogonality_defect: float


def _check_antisymmetric(mat: np.ndarray, name: str) -> np.ndarray:
    mat = np.asarray(mat, dtype=float)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ArgumentError(f"{name} must be a square matrix")
    if not np.allclose(mat, -mat.T, atol=1e-12):
        raise ContractError(f"{name} is not antisymmetric")
    return mat


def dynamics_vector(
    s_iso: list[np.ndarray], ihat_iso: list[np.ndarray], tol_exp: float = TOL_EXP
) -> DynamicsVector:
    """exp of the isovector scalar product sum_k ihat_k S_k.

    The product of two antisymmetric factors need not be antisymmetric;
    the contraction is projected to its antisymmetric part (the discarded
    symmetric norm is reported) so the exponential is orthogonal, checked
    at tol_exp.
    """
    if len(s_iso) != len(ihat_iso):
        raise ArgumentError("isovector components must pair up")
    if not s_iso:
        raise ArgumentError("need at least one isovector component")
    s_iso = [_check_antisymmetric(s, f"S[{k}]") for k, s in enumerate(s_iso)]
    ihat_iso = [_check_antisymmetric(i, f"ihat[{k}]") for k, i in enumerate(ihat_iso)]
    if any(s.shape != s_iso[0].shape for s in s_iso + ihat_iso):
        raise ArgumentError("all components must share one dimension")
    raw = sum(i @ s for i, s in zip(ihat_iso, s_iso))
    exponent = 0.5 * (raw - raw.T)
    discarded = float(np.linalg.norm(0.5 * (raw + raw.T)))
    matrix = sla.expm(exponent)
    defect = float(np.linalg.norm(matrix.T @ matrix - np.eye(matrix.shape[0])))
    if defect > tol_exp:
        raise ContractError(
            f"exponential lost orthogonality: defect {defect:.3e} > {tol_exp:.1e}"
        )
    return DynamicsVector(exponent, matrix, discarded, defect)


# ---------------------------------------------------------------------------
# history ports and Green contractions
# ---------------------------------------------------------------------------

@dataclass
class HistoryPort:
    """Ordered port factors Psi_n ... Psi_1 with their composed product."""

    factors: list[np.ndarray]
    product: np.ndarray = field(init=False)

    def __post_init__(self):
        if not self.factors:
            raise ArgumentError("history port needs at least one factor")
        mats = [np.asarray(f, dtype=float) for f in self.factors]
        dims = {m.shape for m in mats}
        if len(dims) != 1 or mats[0].ndim != 2 or mats[0].shape[0] != mats[0].shape[1]:
            raise ArgumentError("port factors must be square matrices of one size")
        self.factors = mats
        self.product = reduce(lambda x, y: x @ y, mats)


def coherent_port(state: np.ndarray) -> np.ndarray:
    """Real projector port built from a (possibly complex) state vector.

    Complex polarized product states span a real 2-plane (real and imaginary
    parts); the port is the orthogonal projector onto that plane, which keeps
    the history algebra real.  Real states give the usual rank-1 projector.
    """
    state = np.asarray(state)
    cols = [np.real(state)]
    if np.iscomplexobj(state) and np.linalg.norm(np.imag(state)) > 1e-14:
        cols.append(np.imag(state))
    basis = np.stack(cols, axis=1)
    q, _ = np.linalg.qr(basis)
    return q @ q.T


@dataclass
class GreenResult:
    """Normalized finite trace tr(D E)/tr(D); unnormalized value always set."""

    value: float | None
    trace_de: float
    trace_d: float
    normalized: bool


def green_contraction(
    dynamics: DynamicsVector | np.ndarray, port: HistoryPort
) -> GreenResult:
    """Finite contraction of dynamics against a history port.

    The normalizing trace can vanish; the unnormalized trace is still
    reported and value is None in that case.
    """
    d_mat = dynamics.matrix if isinstance(dynamics, DynamicsVector) else np.asarray(dynamics, dtype=float)
    if d_mat.shape != port.product.shape:
        raise ArgumentError(
            f"dimension mismatch: dynamics {d_mat.shape} vs port {port.product.shape}"
        )
    trace_de = float(np.trace(d_mat @ port.product))
    trace_d = float(np.trace(d_mat))
    if abs(trace_d) < 1e-300:
        return GreenResult(None, trace_de, trace_d, False)
    return GreenResult(trace_de / trace_d, trace_de, trace_d, True)


# ---------------------------------------------------------------------------
# Clifford-word traces
# ---------------------------------------------------------------------------

MAX_WORD_LENGTH = 10_000

_TERM_RE = re.compile(
    r"^\s*(?:(?P<coeff>-?\d+(?:/\d+)?)\s*(?:\*)?)?\s*(?P<gammas>(?:g\(\d+\)\s*)*)$"
)
_GAMMA_RE = re.compile(r"g\((\d+)\)")


def parse_polynomial(text: str) -> list[tuple[Fraction, list[int]]]:
    """Parse `c * g(a) g(b) ... + ...` with '#' comments; 1-based indices.

    A term may also be a bare coefficient (scalar) or a bare word
    (coefficient 1).
    """
    body = " ".join(line.split("#", 1)[0] for line in text.splitlines()).strip()
    if not body:
        raise ParseError("empty polynomial")
    terms = []
    for chunk in body.split("+"):
        chunk = chunk.strip()
        if not chunk:
            continue
        m = _TERM_RE.match(chunk)
        if not m or (m.group("coeff") is None and not m.group("gammas").strip()):
            raise ParseError(f"cannot parse term: {chunk!r}")
        coeff = Fraction(m.group("coeff")) if m.group("coeff") else Fraction(1)
        gammas = [int(g) for g in _GAMMA_RE.findall(m.group("gammas"))]
        terms.append((coeff, gammas))
    if not terms:
        raise ParseError("empty polynomial")
    if sum(len(g) for _, g in terms) > MAX_WORD_LENGTH:
        raise ParseError(f"word length exceeds {MAX_WORD_LENGTH}")
    return terms


def format_polynomial(terms: list[tuple[Fraction, list[int]]]) -> str:
    """Canonical form: explicit coefficient per term, single spaces."""
    parts = []
    for coeff, gammas in terms:
        if gammas:
            parts.append(f"{coeff} * " + " ".join(f"g({i})" for i in gammas))
        else:
            parts.append(str(coeff))
    return " + ".join(parts)


def trace_polynomial(expr: str, rep: GammaRep) -> Fraction | float:
    """Trace of a polynomial word in the generators, by sequential
    multiplication; exact (Fraction) when the representation is integer."""
    terms = parse_polynomial(expr)
    n = rep.signature.n
    exact = all(g.dtype.kind in "iu" for g in rep.gammas) if rep.gammas else True
    total_exact = Fraction(0)
    total_float = 0.0
    for coeff, gammas in terms:
        for i in gammas:
            if not 1 <= i <= n:
                raise ParseError(f"unknown generator symbol g({i}); valid range 1..{n}")
        if exact:
            acc = np.eye(rep.dim, dtype=object)
            for i in gammas:
                acc = acc @ rep.gammas[i - 1].astype(object)
            total_exact += coeff * Fraction(int(np.trace(acc)))
        else:
            acc = np.eye(rep.dim)
            for i in gammas:
                acc = acc @ rep.gammas[i - 1]
            total_float += float(coeff) * float(np.trace(acc))
    return total_exact if exact else total_float
