r"""Consequences of the identity hierarchy: spin-chain Lax traces and flatness.

Two applications are implemented.

Trace-power correspondence.  The block Lax operator of an N-spin
elliptic Calogero type system,

.. math::

    L_{ab} = \delta_{ab}\, p_a\, \mathrm{Id}
        + \nu (1 - \delta_{ab})\, R_{ab}(z_a - z_b),

is an n x n matrix of operators on the n-site quantum space, with the
R factor embedded at sites (a, b).  The cyclic identities make the
diagonal blocks of its matrix powers scalar, with scalars reproduced by
the ordinary n x n spectral-parameter Lax matrix

.. math::

    l_{ab} = \delta_{ab}\, p_a + \nu (1 - \delta_{ab})\,
        N \phi(N\hbar, z_a - z_b).

Flatness checks.  The classical coefficients r and m of the expansion
R = Id/hbar + r + hbar m + ... satisfy the commutator identity

.. math::

    [r_{ab}, m_{ac} + m_{bc}] + [r_{ac}, m_{ab} + m_{bc}] = 0

(the flatness condition of a KZB type connection) and, on n sites, the
anticommutator relation

.. math::

    \sum_{c < a < b} \bigl(\{r_{ca}, r_{ab}\} + \{r_{ab}, r_{bc}\}
        + \{r_{bc}, r_{ca}\}\bigr)
    = -(n - 2) \sum_{b \ne c} m_{bc}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, QuadratureNotConverged, UsageError
from .identities import IdentityReport, default_tolerance
from .rmatrix import (
    _default_radius,
    _laurent_coefficients,
    classical_closed_form,
    r_matrix,
)
from .special_functions import kronecker_phi
from .tensor_ops import (
    DEFAULT_SIZE_CAP,
    embed_two_site,
    frobenius_distance,
    is_scalar_operator,
)

__all__ = [
    "CalogeroConfig",
    "lax_rmatrix",
    "lax_krichever",
    "block_matrix_power",
    "check_trace_power_guess",
    "check_kzb_flatness",
    "check_hbar_order_relation",
]


@dataclass(frozen=True)
class CalogeroConfig:
    """Particle data for the block Lax construction.

    Parameters
    ----------
    rspec : RMatrixSpec
    momenta : tuple of complex
    positions : tuple of complex
        Same length as momenta; pairwise differences must avoid the
        pole set of the R-matrix.
    coupling : complex
        The constant multiplying every off-diagonal block.
    """

    rspec: object
    momenta: tuple
    positions: tuple
    coupling: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "momenta", tuple(complex(p) for p in self.momenta))
        object.__setattr__(
            self, "positions", tuple(complex(z) for z in self.positions)
        )
        object.__setattr__(self, "coupling", complex(self.coupling))
        if len(self.momenta) != len(self.positions):
            raise DimensionMismatch(
                f"{len(self.momenta)} momenta vs {len(self.positions)} positions"
            )
        if len(self.momenta) < 2:
            raise UsageError("need at least two particles")

    @property
    def n_particles(self):
        return len(self.momenta)


def lax_rmatrix(config, size_cap=DEFAULT_SIZE_CAP):
    """Block Lax operator, shape (n, n, N**n, N**n)."""
    spec = config.rspec
    n = config.n_particles
    N = spec.site_dim
    zs = config.positions
    dim = N ** n
    blocks = np.zeros((n, n, dim, dim), dtype=complex)
    eye = np.eye(dim, dtype=complex)
    for a in range(n):
        blocks[a, a] = config.momenta[a] * eye
        for b in range(n):
            if a != b:
                rm = r_matrix(spec, zs[a] - zs[b])
                blocks[a, b] = config.coupling * embed_two_site(
                    rm, a + 1, b + 1, N, n, size_cap
                )
    return blocks


def lax_krichever(config):
    """Scalar n x n Lax matrix with the same-site R-matrix value off-diagonal."""
    spec = config.rspec
    n = config.n_particles
    N = spec.site_dim
    zs = config.positions
    out = np.zeros((n, n), dtype=complex)
    for a in range(n):
        out[a, a] = config.momenta[a]
        for b in range(n):
            if a != b:
                out[a, b] = config.coupling * N * kronecker_phi(
                    N * spec.hbar, zs[a] - zs[b], spec.lattice
                )
    return out


def block_matrix_power(blocks, power):
    """Power of an (n, n, D, D) block matrix under block matrix multiplication."""
    if power < 1:
        raise UsageError(f"power must be >= 1, got {power}")
    out = blocks
    for _ in range(power - 1):
        out = np.einsum("abij,bcjk->acik", out, blocks)
    return out


def check_trace_power_guess(config, power, tolerance=None, size_cap=DEFAULT_SIZE_CAP):
    """Diagonal blocks of the k-th block Lax power against the scalar Lax power.

    For each particle a the block (L^k)_aa must be scalar, and its
    coefficient must equal the (a, a) entry of l^k for the scalar Lax
    matrix l.  Residuals over all a are combined.  The details record
    the per-block coefficients, the worst non-scalar residual, the
    residual of the summed traces, and whether the case extends past the
    k = n trace the guess was calibrated on.
    """
    spec = config.rspec
    n = config.n_particles
    if tolerance is None:
        tolerance = default_tolerance(spec.kind, spec.site_dim, max(power, 2))
    blocks = block_matrix_power(lax_rmatrix(config, size_cap), power)
    scalar = np.linalg.matrix_power(lax_krichever(config), power)

    dim = blocks.shape[-1]
    coeffs = []
    nonscalar = 0.0
    for a in range(n):
        _, c, resid = is_scalar_operator(blocks[a, a], tol=np.inf)
        coeffs.append(c)
        nonscalar = max(nonscalar, resid)
    diag = np.array([scalar[a, a] for a in range(n)])
    scale = max(1.0, float(np.max(np.abs(diag))))
    coeff_resid = float(np.max(np.abs(np.array(coeffs) - diag))) / scale
    trace_resid = abs(sum(coeffs) - np.trace(scalar)) / max(
        1.0, abs(np.trace(scalar))
    )
    residual = max(coeff_resid, nonscalar)
    return IdentityReport(
        name=f"trace-power k={power}",
        passed=residual < tolerance,
        residual=residual,
        tolerance=tolerance,
        details={
            "coefficients": coeffs,
            "nonscalar_residual": nonscalar,
            "trace_residual": trace_resid,
            "extended_guess": power < n,
        },
    )


def _pair_classical(spec, z, quadrature_points, contour_radius):
    """(r, m) at spectral parameter z from an hbar contour with the given nodes."""
    radius = contour_radius if contour_radius is not None else _default_radius(spec, z)
    coeffs = _laurent_coefficients(spec, z, radius, quadrature_points)
    return coeffs[0], coeffs[1]


def check_kzb_flatness(
    spec,
    points,
    quadrature_points=32,
    contour_radius=None,
    tolerance=None,
    use_closed_form=False,
):
    """Flatness of the classical connection on a triple of points.

    Builds r and m for the three pairwise differences, embeds them on
    three sites, and measures

        [r_12, m_13 + m_23] + [r_13, m_12 + m_23]

    relative to the product of the r and m norms.  By default the
    coefficients come from contour quadrature with ``quadrature_points``
    nodes, so the residual decreases as the node count grows;
    ``use_closed_form=True`` bypasses quadrature entirely.
    """
    if len(points) != 3:
        raise DimensionMismatch(f"flatness takes three points, got {len(points)}")
    if not use_closed_form and quadrature_points < 2:
        raise QuadratureNotConverged("need at least 2 quadrature points")
    N = spec.site_dim
    if tolerance is None:
        tolerance = default_tolerance(spec.kind, N, 3)
    z1, z2, z3 = (complex(p) for p in points)

    rm = {}
    for (i, j) in ((1, 2), (1, 3), (2, 3)):
        zij = (z1, z2, z3)[i - 1] - (z1, z2, z3)[j - 1]
        if use_closed_form:
            rm[(i, j)] = classical_closed_form(spec, zij)
        else:
            rm[(i, j)] = _pair_classical(spec, zij, quadrature_points, contour_radius)

    def emb(m, i, j):
        return embed_two_site(m, i, j, N, 3)

    r12 = emb(rm[(1, 2)][0], 1, 2)
    r13 = emb(rm[(1, 3)][0], 1, 3)
    m12 = emb(rm[(1, 2)][1], 1, 2)
    m13 = emb(rm[(1, 3)][1], 1, 3)
    m23 = emb(rm[(2, 3)][1], 2, 3)

    def comm(x, y):
        return x @ y - y @ x

    lhs = comm(r12, m13 + m23) + comm(r13, m12 + m23)
    r_norm = max(np.linalg.norm(rm[p][0]) for p in rm)
    m_norm = max(np.linalg.norm(rm[p][1]) for p in rm)
    scale = max(1.0, r_norm * m_norm)
    residual = float(np.linalg.norm(lhs)) / scale
    return IdentityReport(
        name="kzb-flatness",
        passed=residual < tolerance,
        residual=residual,
        tolerance=tolerance,
        details={
            "r_norm": float(r_norm),
            "m_norm": float(m_norm),
            "quadrature_points": None if use_closed_form else quadrature_points,
        },
    )


def check_hbar_order_relation(
    spec, n, points, tolerance=None, size_cap=DEFAULT_SIZE_CAP
):
    """Anticommutator relation between r and m on n >= 3 sites.

    Checks

        sum_(c<a<b) ({r_ca, r_ab} + {r_ab, r_bc} + {r_bc, r_ca})
            = -(n - 2) sum_(b != c) m_bc

    with every pair coefficient in closed form and embedded at its sites.
    """
    if n < 3:
        raise DimensionMismatch("the relation needs n >= 3 sites")
    if len(points) != n:
        raise DimensionMismatch(f"expected {n} points, got {len(points)}")
    N = spec.site_dim
    if tolerance is None:
        tolerance = default_tolerance(spec.kind, N, 3)
    pts = [complex(p) for p in points]

    r_emb = {}
    m_emb = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                r_ij, m_ij = classical_closed_form(spec, pts[i - 1] - pts[j - 1])
                r_emb[(i, j)] = embed_two_site(r_ij, i, j, N, n, size_cap)
                m_emb[(i, j)] = embed_two_site(m_ij, i, j, N, n, size_cap)

    def anti(x, y):
        return x @ y + y @ x

    dim = N ** n
    lhs = np.zeros((dim, dim), dtype=complex)
    for c, a, b in itertools.combinations(range(1, n + 1), 3):
        lhs += anti(r_emb[(c, a)], r_emb[(a, b)])
        lhs += anti(r_emb[(a, b)], r_emb[(b, c)])
        lhs += anti(r_emb[(b, c)], r_emb[(c, a)])
    rhs = -(n - 2) * sum(m_emb.values())
    # the anticommutators cancel pairwise, so condition on their size,
    # not on the (possibly zero) right-hand side
    r_scale = max(np.linalg.norm(v) for v in r_emb.values())
    scale = max(1.0, float(np.linalg.norm(rhs)), r_scale * r_scale)
    residual = float(np.linalg.norm(lhs - rhs)) / scale
    return IdentityReport(
        name=f"hbar-order-{n}",
        passed=residual < tolerance,
        residual=residual,
        tolerance=tolerance,
        details={
            "lhs_norm": float(np.linalg.norm(lhs)),
            "rhs_norm": float(np.linalg.norm(rhs)),
        },
    )
