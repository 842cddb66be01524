"""Interpolation-basis engines and the independent verification oracle.

``iterative_mib`` processes the constraints one by one, M-Pade style:
at each constraint it computes a scalar discrepancy per basis row,
eliminates it from all rows using the minimal row, multiplies that row by
(X - x), and finally normalizes the accumulated weak Popov basis to the
canonical shifted Popov form.  It is the reference engine every other
path is checked against.

``minimal_interpolation_basis`` is the generic divide-and-conquer engine:
it splits the constraint space in two, solves the left half, pushes the
residual through, solves the right half with the shift bumped by the left
pivot degrees, and multiplies the two bases.  Its output is a shifted
diagonal weak Popov basis, not normalized.

``kernel_oracle`` ignores all of that and sets up the degree-bounded
interpolants as a plain kernel computation over the base field; it is the
independent certificate used by the acceptance suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import linalg
from .ff_poly import Modulus, Poly, poly_mul_x_plus, poly_sub_scaled, poly_trim
from .jordan_module import (
    JordanSpec,
    ModuleRows,
    residual,
    residual_direct,
    standardize,
)
from .polymat import PolyMat, matmul, pivot_degrees, weak_popov_to_popov

MinimalDegree = Tuple[int, ...]


@dataclass
class InterpInstance:
    """An interpolation problem: module rows E, Jordan data J, shift s."""

    field: Modulus
    E: ModuleRows
    jordan: JordanSpec
    shift: Tuple[int, ...]

    def __post_init__(self):
        self.shift = tuple(int(v) for v in self.shift)
        sigma = self.jordan.total
        if len(self.E) != len(self.shift):
            raise ValueError("shift length must equal the number of rows of E")
        if not self.E:
            raise ValueError("E needs at least one row")
        if any(len(r) != sigma for r in self.E):
            raise ValueError("E columns do not match the Jordan matrix size")
        p = self.field.p
        self.E = [[c % p for c in r] for r in self.E]

    @property
    def m(self) -> int:
        return len(self.E)

    @property
    def sigma(self) -> int:
        return self.jordan.total


def interpolant_check(row: Sequence[Poly], inst: InterpInstance) -> bool:
    """True iff row . E vanishes under the module action."""
    if len(row) != inst.m:
        raise ValueError("row length does not match the instance")
    rmat = PolyMat(inst.field, [[list(e) for e in row]])
    res = residual_direct(rmat, inst.E, inst.jordan)
    return not any(res[0])


def _iterative_engine(inst: InterpInstance, preference: Optional[Sequence[int]] = None):
    """Constraint-by-constraint elimination.

    Returns the raw basis rows, their s-degrees and the per-row count of
    (X - x) multiplications.  With the default row preference the basis
    stays in s-diagonal weak Popov form throughout, so that count is the
    pivot degree tuple.
    """
    field = inst.field
    p = field.p
    m = inst.m
    s = inst.shift
    pref = list(range(m)) if preference is None else list(preference)
    if sorted(pref) != list(range(m)):
        raise ValueError("preference must be a permutation of the row indices")

    basis: List[List[Poly]] = [
        [[1] if j == i else [] for j in range(m)] for i in range(m)
    ]
    res = [list(r) for r in inst.E]
    sdeg = list(s)
    steps = [0] * m

    for b, ((x, size), off) in enumerate(zip(inst.jordan.blocks, inst.jordan.offsets)):
        for ell in range(size):
            pos = off + ell
            cands = [i for i in range(m) if res[i][pos]]
            if not cands:
                continue
            pi = min(cands, key=lambda i: (sdeg[i], pref[i]))
            inv_d = pow(res[pi][pos], p - 2, p)
            brow = basis[pi]
            rrow = res[pi]
            for i in cands:
                if i == pi:
                    continue
                c = res[i][pos] * inv_d % p
                target = basis[i]
                for j in range(m):
                    if brow[j]:
                        target[j] = poly_sub_scaled(target[j], brow[j], c, p)
                ri = res[i]
                ri[pos:] = [(a - c * v) % p for a, v in zip(ri[pos:], rrow[pos:])]
            basis[pi] = [poly_mul_x_plus(e, -x, p) if e else [] for e in brow]
            # (X - x) acts blockwise; on the current block the eigenvalue
            # difference vanishes, leaving a plain coefficient shift
            for t in range(off + size - 1, pos, -1):
                rrow[t] = rrow[t - 1]
            rrow[pos] = 0
            for bb in range(b + 1, len(inst.jordan.blocks)):
                xb, nb = inst.jordan.blocks[bb]
                ob = inst.jordan.offsets[bb]
                cb = (xb - x) % p
                for t in range(ob + nb - 1, ob, -1):
                    rrow[t] = (rrow[t - 1] + cb * rrow[t]) % p
                rrow[ob] = cb * rrow[ob] % p
            sdeg[pi] += 1
            steps[pi] += 1
    return basis, sdeg, steps


def iterative_weak_popov(inst: InterpInstance) -> Tuple[PolyMat, MinimalDegree]:
    """Un-normalized s-diagonal weak Popov basis and its pivot degrees."""
    basis, _, steps = _iterative_engine(inst)
    return PolyMat(inst.field, basis), tuple(steps)


def iterative_mib(
    inst: InterpInstance, preference: Optional[Sequence[int]] = None
) -> Tuple[PolyMat, MinimalDegree]:
    """The s-Popov interpolation basis and its diagonal degrees.

    The optional row preference permutes tie-breaking between rows of
    equal s-degree; any preference yields the same canonical output.
    """
    basis, _, _ = _iterative_engine(inst, preference)
    popov = weak_popov_to_popov(PolyMat(inst.field, basis), inst.shift)
    delta = tuple(len(popov.rows[i][i]) - 1 for i in range(inst.m))
    return popov, delta


def linear_algebra_mib(inst: InterpInstance) -> Tuple[PolyMat, MinimalDegree]:
    """Base-case solver for sigma <= m; same contract as iterative_mib."""
    return iterative_mib(inst)


def split_leading(inst: InterpInstance):
    """Leading sub-instance at cut ceil(sigma/2), plus the trailing blocks.

    The cut may fall inside a block, in which case the block is divided
    into its leading and trailing principal parts with the same
    eigenvalue.  The leading half is re-standardized here (with the
    matching column permutation of its module rows); the trailing blocks
    are returned raw for the caller to standardize once the residual
    columns are known.
    """
    sigma = inst.sigma
    cut = -(-sigma // 2)
    blocks1, blocks2 = [], []
    pos = 0
    for x, n in inst.jordan.blocks:
        if pos + n <= cut:
            blocks1.append((x, n))
        elif pos >= cut:
            blocks2.append((x, n))
        else:
            blocks1.append((x, cut - pos))
            blocks2.append((x, pos + n - cut))
        pos += n
    j1, e1 = standardize(blocks1, [r[:cut] for r in inst.E])
    inst1 = InterpInstance(inst.field, e1, j1, inst.shift)
    return inst1, blocks2, cut


def minimal_interpolation_basis(
    inst: InterpInstance, base_threshold: Optional[int] = None
) -> PolyMat:
    """A shifted diagonal weak Popov interpolation basis (not normalized).

    Below the base-case threshold (sigma <= max(m, base_threshold)) the
    iterative engine's raw output is returned; otherwise the constraints
    split in half, the residual of the first basis feeds the second call
    with the shift increased by the first pivot degrees, and the product
    of the two bases is returned.
    """
    m = inst.m
    thr = max(m, base_threshold) if base_threshold is not None else m
    if inst.sigma <= thr:
        return iterative_weak_popov(inst)[0]
    inst1, blocks2, cut = split_leading(inst)
    p1 = minimal_interpolation_basis(inst1, base_threshold)
    d1 = pivot_degrees(p1, inst.shift)
    rem = residual(p1, inst.E, inst.jordan)
    j2, e2 = standardize(blocks2, [r[cut:] for r in rem])
    shift2 = tuple(sv + dv for sv, dv in zip(inst.shift, d1))
    inst2 = InterpInstance(inst.field, e2, j2, shift2)
    p2 = minimal_interpolation_basis(inst2, base_threshold)
    return matmul(p2, p1)


def kernel_oracle(inst: InterpInstance, bound: int) -> List[List[Poly]]:
    """Basis of the space of interpolants with s-degree at most bound.

    Enumerates the monomial candidates X**k * e_i with k + s_i <= bound,
    maps each to its residual vector by the direct module action, and
    extracts the left kernel by Gaussian elimination over the base field.
    Completely independent of the basis engines.
    """
    field = inst.field
    p = field.p
    m = inst.m
    s = inst.shift
    sigma = inst.sigma
    counts = [max(0, bound - si + 1) for si in s]
    total = sum(counts)
    if total == 0:
        return []

    if sigma == 0:
        vectors = np.eye(total, dtype=np.int64)
    else:
        blocks = inst.jordan.blocks
        offsets = inst.jordan.offsets
        rows = np.zeros((total, sigma), dtype=np.int64)
        at = 0
        for i in range(m):
            if counts[i] == 0:
                continue
            v = np.array(inst.E[i], dtype=np.int64) % p
            rows[at] = v
            at += 1
            for _ in range(1, counts[i]):
                w = np.zeros(sigma, dtype=np.int64)
                for (x, n), off in zip(blocks, offsets):
                    w[off + 1 : off + n] = v[off : off + n - 1]
                    w[off : off + n] = (w[off : off + n] + x * v[off : off + n]) % p
                v = w
                rows[at] = v
                at += 1
        vectors = linalg.left_nullspace(rows, p)

    out = []
    for vec in vectors:
        prow: List[Poly] = [[] for _ in range(m)]
        at = 0
        for i in range(m):
            coeffs = [int(vec[at + k]) for k in range(counts[i])]
            prow[i] = poly_trim(coeffs)
            at += counts[i]
        out.append(prow)
    return out
