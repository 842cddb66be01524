"""The multiplication module defined by a Jordan matrix.

A Jordan matrix J, given as eigenvalue/block-size data, turns row vectors
of length sigma into a module over the polynomial ring via
``p . e = e * p(J)``.  Identifying each block with a truncated power
series, the action of p on block j with eigenvalue x_j is
``p(X + x_j) * f_j  mod  X**(size_j)``, which is how everything here is
computed; blocks are upper bidiagonal and act on row vectors from the
right.

Residuals ``P . E`` of a polynomial matrix against a module matrix are
computed by partial column linearization: high-degree columns of P are
split into chunks of degree below ceil(sigma/m) against an
expansion-compression gadget, which keeps every truncated product small.
A direct evaluation path is kept as a bit-identical fallback and oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, List, Sequence, Tuple

from .ff_poly import Modulus, Poly, poly_shift_up, poly_trim
from .ff_poly import poly_mul_trunc, taylor_shift
from .polymat import PolyMat, column_degree

Block = Tuple[int, int]  # (eigenvalue, size)
ModuleRows = List[List[int]]


@dataclass(frozen=True)
class JordanSpec:
    """Standard representation: groups of blocks sharing an eigenvalue.

    Eigenvalues are pairwise distinct across groups, sizes within a group
    are non-increasing, and groups are ordered by non-increasing block
    count.
    """

    groups: Tuple[Tuple[int, Tuple[int, ...]], ...]

    def __post_init__(self):
        eigs = [x for x, _ in self.groups]
        if len(set(eigs)) != len(eigs):
            raise ValueError("eigenvalues must be pairwise distinct across groups")
        counts = []
        for _, sizes in self.groups:
            if not sizes:
                raise ValueError("empty block group")
            if any(n <= 0 for n in sizes):
                raise ValueError("block sizes must be positive")
            if any(sizes[i] < sizes[i + 1] for i in range(len(sizes) - 1)):
                raise ValueError("block sizes must be non-increasing within a group")
            counts.append(len(sizes))
        if any(counts[i] < counts[i + 1] for i in range(len(counts) - 1)):
            raise ValueError("groups must have non-increasing block counts")

    @cached_property
    def blocks(self) -> Tuple[Block, ...]:
        return tuple((x, n) for x, sizes in self.groups for n in sizes)

    @cached_property
    def offsets(self) -> Tuple[int, ...]:
        out = []
        pos = 0
        for _, n in self.blocks:
            out.append(pos)
            pos += n
        return tuple(out)

    @property
    def total(self) -> int:
        return sum(n for _, n in self.blocks)

    def to_json(self) -> dict:
        return {"groups": [[x, list(sizes)] for x, sizes in self.groups]}

    @classmethod
    def from_json(cls, data: dict, p: int) -> "JordanSpec":
        groups = []
        for x, sizes in data["groups"]:
            if not isinstance(x, int) or any(not isinstance(n, int) for n in sizes):
                raise ValueError("eigenvalues and block sizes must be integers")
            groups.append((x % p, tuple(sizes)))
        return cls(tuple(groups))


def standardize(blocks: Iterable[Block], rows: ModuleRows):
    """Standard representation of a block list, permuting E accordingly.

    Blocks group by eigenvalue, sizes sort non-increasing within a group,
    groups sort by non-increasing count with ties broken by ascending
    eigenvalue residue; the same block permutation is applied to the
    column blocks of the given module rows.
    """
    blocks = list(blocks)
    if any(n <= 0 for _, n in blocks):
        raise ValueError("block sizes must be positive")
    sigma = sum(n for _, n in blocks)
    if any(len(r) != sigma for r in rows):
        raise ValueError("module rows do not match the block sizes")
    offsets = []
    pos = 0
    for _, n in blocks:
        offsets.append(pos)
        pos += n

    by_eig = {}
    for idx, (x, n) in enumerate(blocks):
        by_eig.setdefault(x, []).append((n, idx))
    groups = sorted(by_eig.items(), key=lambda kv: (-len(kv[1]), kv[0]))

    spec_groups = []
    order = []
    for x, members in groups:
        members = sorted(members, key=lambda t: (-t[0], t[1]))
        spec_groups.append((x, tuple(n for n, _ in members)))
        order.extend(idx for _, idx in members)

    new_rows = []
    for r in rows:
        out = []
        for idx in order:
            off = offsets[idx]
            out.extend(r[off : off + blocks[idx][1]])
        new_rows.append(out)
    return JordanSpec(tuple(spec_groups)), new_rows


def apply_poly_row(pl: Poly, row: Sequence[int], jordan: JordanSpec, field: Modulus) -> List[int]:
    """The module action of pl on one row."""
    if len(row) != jordan.total:
        raise ValueError("row length does not match the Jordan matrix")
    p = field.p
    out = [0] * len(row)
    for (x, n), off in zip(jordan.blocks, jordan.offsets):
        f = poly_trim([c % p for c in row[off : off + n]])
        if not f or not pl:
            continue
        g = poly_mul_trunc(taylor_shift(pl, x, field), f, n, field)
        out[off : off + len(g)] = g
    return out


def apply_poly(pl: Poly, rows: ModuleRows, jordan: JordanSpec, field: Modulus) -> ModuleRows:
    """The module action of pl on every row of E."""
    return [apply_poly_row(pl, r, jordan, field) for r in rows]


def x_minus_action(row: List[int], jordan: JordanSpec, x0: int, field: Modulus,
                   start_block: int = 0) -> None:
    """In-place action of (X - x0) on a row, from start_block onward.

    On a block with eigenvalue x this is multiplication by (X + x - x0)
    truncated to the block size: an O(size) bidiagonal update.
    """
    p = field.p
    blocks = jordan.blocks
    offsets = jordan.offsets
    for b in range(start_block, len(blocks)):
        x, n = blocks[b]
        off = offsets[b]
        c = (x - x0) % p
        for t in range(off + n - 1, off, -1):
            row[t] = (row[t - 1] + c * row[t]) % p
        row[off] = c * row[off] % p


def residual_direct(pmat: PolyMat, rows: ModuleRows, jordan: JordanSpec) -> ModuleRows:
    """P . E straight from the definition: row i is sum_j p_ij . E_j."""
    field = pmat.field
    p = field.p
    if pmat.ncols != len(rows):
        raise ValueError("dimension mismatch between P and E")
    sigma = jordan.total
    out = []
    for prow in pmat.rows:
        acc = [0] * sigma
        for j, entry in enumerate(prow):
            if not entry:
                continue
            part = apply_poly_row(entry, rows[j], jordan, field)
            for t in range(sigma):
                acc[t] = (acc[t] + part[t]) % p
        out.append(acc)
    return out


def _expand_columns(pmat: PolyMat, chunk: int, alphas: Sequence[int]) -> List[List[Poly]]:
    """Split column i of P into alphas[i] chunks of degree < chunk."""
    rows = []
    for prow in pmat.rows:
        out = []
        for j, a in enumerate(alphas):
            e = prow[j]
            for k in range(a):
                out.append(poly_trim(e[k * chunk : (k + 1) * chunk]))
        rows.append(out)
    return rows


def residual(pmat: PolyMat, rows: ModuleRows, jordan: JordanSpec) -> ModuleRows:
    """P . E through partial column linearization.

    Columns of P are expanded into chunks of degree < ceil(sigma/m); each
    chunk row of the expanded E is a monomial action X**(k*chunk) . E_j,
    and the blocked truncated products of the two expansions reassemble
    the residual exactly.  Falls back to direct evaluation when sigma < m
    or the matrix has no high-degree column; both paths agree bit for
    bit.
    """
    field = pmat.field
    m = pmat.ncols
    if m != len(rows):
        raise ValueError("dimension mismatch between P and E")
    sigma = jordan.total
    if sigma < m:
        return residual_direct(pmat, rows, jordan)
    chunk = -(-sigma // m)  # ceil
    alphas = [
        int(d) // chunk + 1 if isinstance(d, int) and d > 0 else 1
        for d in column_degree(pmat)
    ]
    if all(a == 1 for a in alphas):
        return residual_direct(pmat, rows, jordan)
    expanded = _expand_columns(pmat, chunk, alphas)
    ebar: ModuleRows = []
    for j, a in enumerate(alphas):
        for k in range(a):
            if k == 0:
                ebar.append(list(rows[j]))
            else:
                ebar.append(
                    apply_poly_row(poly_shift_up([1], k * chunk), rows[j], jordan, field)
                )
    pbar = PolyMat(field, expanded)
    return residual_direct(pbar, ebar, jordan)
