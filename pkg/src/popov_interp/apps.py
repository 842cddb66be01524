"""Applications of the interpolation solver.

* order bases / Hermite-Pade approximation: all rows p with
  p . F_j = 0 mod X**(order_j), solved by encoding each column of F as a
  nilpotent block;
* constrained multivariate interpolation (Guruswami-Sudan and
  Koetter-Vardy style): a polynomial Q(X, Y_1..Y_r) with prescribed Y
  support that vanishes at given points with given multiplicities,
  linearized over the Y monomials;
* shift-range reduction: replaces a shift by an equivalent one with
  min 0, max at most (m-1)*sigma, and sum at most m**2*sigma/2;
* an adversarial Hermite-Pade family whose un-normalized minimal bases
  are quadratically larger than their Popov forms.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb
from typing import List, Optional, Sequence, Tuple

from .ff_poly import Modulus, Poly, poly_deg, poly_trim, taylor_shift
from .jordan_module import standardize
from .mib_engine import InterpInstance, MinimalDegree
from .polymat import PolyMat
from .popov_mib import popov_mib

Point = Tuple[int, Tuple[int, ...]]


@dataclass
class ApproximantProblem:
    """Simultaneous approximation orders for the columns of F."""

    field: Modulus
    F: PolyMat
    orders: Tuple[int, ...]
    shift: Tuple[int, ...]

    def __post_init__(self):
        self.orders = tuple(int(v) for v in self.orders)
        self.shift = tuple(int(v) for v in self.shift)
        if any(o <= 0 for o in self.orders):
            raise ValueError("order <= 0")
        if len(self.orders) != self.F.ncols:
            raise ValueError("one order per column of F is required")
        if len(self.shift) != self.F.nrows:
            raise ValueError("shift length must equal the number of rows of F")
        for j, o in enumerate(self.orders):
            for i in range(self.F.nrows):
                if poly_deg(self.F.rows[i][j]) >= o:
                    raise ValueError(f"column {j} of F must have degree below {o}")


@dataclass
class GSProblem:
    """Multivariate interpolation with multiplicities and degree weights.

    ``exponents`` is the division-stable support of Q in the Y variables;
    ``multiplicities`` holds one triangular multiplicity support
    {(a, b) : a + |b| < mu} per point.  An explicit collection of exponent
    tuples may be supplied instead of an integer mu, but only if it equals
    a triangular support.
    """

    field: Modulus
    num_y: int
    exponents: Tuple[Tuple[int, ...], ...]
    points: Tuple[Point, ...]
    multiplicities: Tuple[object, ...]
    weights: Tuple[int, ...]

    def __post_init__(self):
        self.exponents = tuple(tuple(int(g) for g in ex) for ex in self.exponents)
        self.weights = tuple(int(w) for w in self.weights)
        self.multiplicities = tuple(self.multiplicities)
        self.points = tuple(
            (int(x) % self.field.p, tuple(int(y) % self.field.p for y in ys))
            for x, ys in self.points
        )
        r = self.num_y
        if r < 1:
            raise ValueError("at least one Y variable is required")
        if len(self.weights) != r:
            raise ValueError("one weight per Y variable is required")
        if len(self.multiplicities) != len(self.points):
            raise ValueError("one multiplicity support per point is required")
        if any(len(ex) != r for ex in self.exponents):
            raise ValueError("exponent tuples must have num_y entries")
        if any(len(ys) != r for _, ys in self.points):
            raise ValueError("points must have num_y Y-coordinates")

    @property
    def m(self) -> int:
        return len(self.exponents)


def _triangular_support(mu: int, r: int) -> set:
    out = set()

    def rec(prefix, left):
        if len(prefix) == r + 1:
            out.add(tuple(prefix))
            return
        for v in range(left + 1):
            rec(prefix + [v], left - v)

    for a in range(mu):
        rec([a], mu - 1 - a)
    return out


def _multiplicity_of(support, r: int) -> int:
    """The integer mu of a triangular support, or an error."""
    if isinstance(support, int):
        if support < 1:
            raise ValueError("multiplicity must be at least 1")
        return support
    given = {tuple(int(v) for v in t) for t in support}
    mu = 1
    while mu <= len(given) + 1:
        if given == _triangular_support(mu, r):
            return mu
        mu += 1
    raise ValueError("only triangular multiplicity supports are supported")


def _derivative_indices(mu: int, r: int) -> List[Tuple[int, ...]]:
    """All b in N**r with |b| < mu, graded lexicographic."""
    out = []

    def rec(prefix, left):
        if len(prefix) == r:
            out.append(tuple(prefix))
            return
        for v in range(left + 1):
            rec(prefix + [v], left - v)

    for total in range(mu):
        start = len(out)
        rec([], total)
        # keep only tuples of this total degree, in lex order
        out[start:] = sorted(t for t in out[start:] if sum(t) == total)
    return out


def gs_instance(prob: GSProblem) -> InterpInstance:
    """The (E, J, s) encoding of a multivariate interpolation problem.

    One Jordan block (x_k, mu_k - |b|) per point k and Y-derivative index
    b with |b| < mu_k; the block column of row gamma holds the constant
    prod_i C(gamma_i, b_i) * y_i**(gamma_i - b_i) in its degree-0 slot,
    which encodes the Hasse-derivative vanishing conditions.  The shift
    is the weighted Y-degree of each monomial.
    """
    field = prob.field
    p = field.p
    r = prob.num_y
    if len(set(prob.points)) != len(prob.points):
        raise ValueError("duplicate points")
    for ex in prob.exponents:
        for i in range(r):
            if ex[i] > 0:
                low = ex[:i] + (ex[i] - 1,) + ex[i + 1 :]
                if low not in prob.exponents:
                    raise ValueError("non-division-stable exponent set")
    mus = [_multiplicity_of(sup, r) for sup in prob.multiplicities]

    blocks = []
    columns = []  # (point index, derivative index) per block
    for k, mu in enumerate(mus):
        for b in _derivative_indices(mu, r):
            blocks.append((prob.points[k][0], mu - sum(b)))
            columns.append((k, b))

    rows = []
    for ex in prob.exponents:
        row: List[int] = []
        for (k, b), (_, size) in zip(columns, blocks):
            _, ys = prob.points[k]
            c = 1
            for gi, bi, yi in zip(ex, b, ys):
                if bi > gi:
                    c = 0
                    break
                c = c * (comb(gi, bi) % p) % p * pow(yi, gi - bi, p) % p
            row.extend([c] + [0] * (size - 1))
        rows.append(row)

    shift = tuple(sum(g * w for g, w in zip(ex, prob.weights)) for ex in prob.exponents)
    jordan, rows = standardize(blocks, rows)
    return InterpInstance(field, rows, jordan, shift)


def approximant_instance(prob: ApproximantProblem) -> InterpInstance:
    """The (E, J, s) encoding of an approximation problem.

    One nilpotent block of size sigma_j per column of F, whose module
    column holds the coefficients of that column.
    """
    blocks = [(0, o) for o in prob.orders]
    rows = []
    for i in range(prob.F.nrows):
        row: List[int] = []
        for j, o in enumerate(prob.orders):
            e = prob.F.rows[i][j]
            row.extend(list(e) + [0] * (o - len(e)))
        rows.append(row)
    jordan, rows = standardize(blocks, rows)
    return InterpInstance(prob.field, rows, jordan, prob.shift)


def order_basis(prob: ApproximantProblem) -> Tuple[PolyMat, MinimalDegree]:
    """The shifted-Popov basis of all p with p . F_j = 0 mod X**sigma_j."""
    return popov_mib(approximant_instance(prob))


def reduce_shift(shift: Sequence[int], sigma: int) -> Tuple[int, ...]:
    """An equivalent shift with min 0, max <= (m-1)*sigma, sum <= m**2*sigma/2.

    Sort the shift, cap each consecutive gap at sigma, and un-sort.  The
    Popov basis is unchanged whenever the determinant degree is below
    sigma.
    """
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    s = [int(v) for v in shift]
    order = sorted(range(len(s)), key=lambda i: (s[i], i))
    out = [0] * len(s)
    prev_s = None
    prev_t = 0
    for i in order:
        if prev_s is None:
            out[i] = 0
        else:
            out[i] = prev_t + min(sigma, s[i] - prev_s)
        prev_s, prev_t = s[i], out[i]
    return tuple(out)


def adversarial_instance(
    m: int, sigma: int, seed: int, field: Optional[Modulus] = None
) -> ApproximantProblem:
    """A 2m x 1 Hermite-Pade input whose minimal bases are size Theta(m^2 sigma).

    The column stacks f, then X**t * (f + X*f) for t = 0..m-2, then m
    pseudo-random polynomials, all truncated mod X**sigma, under the shift
    (0, ..., 0, sigma, ..., sigma); f always has a nonzero constant term.
    """
    if not (sigma >= m >= 2):
        raise ValueError("requires sigma >= m >= 2")
    if field is None:
        field = Modulus(97)
    p = field.p
    rng = random.Random(seed)
    f = [rng.randrange(1, p)] + [rng.randrange(p) for _ in range(sigma - 1)]
    fpxf = [(f[t] + (f[t - 1] if t else 0)) % p for t in range(sigma)]
    rows: List[List[Poly]] = [[poly_trim(list(f))]]
    for t in range(m - 1):
        rows.append([poly_trim([0] * t + fpxf[: sigma - t])])
    for _ in range(m):
        rows.append([poly_trim([rng.randrange(p) for _ in range(sigma)])])
    shift = (0,) * m + (sigma,) * m
    return ApproximantProblem(field, PolyMat(field, rows), (sigma,), shift)


def q_vanishes_at(prob: GSProblem, row: Sequence[Poly], k: int) -> bool:
    """Explicit multivariate check of one interpolation condition.

    Reassembles Q = sum_gamma row[gamma] * Y**gamma, expands
    Q(X + x_k, Y + y_k) by brute force (products of the shifted factors,
    no derivative shortcuts), and inspects every coefficient whose
    exponent lies in the multiplicity support.
    """
    field = prob.field
    p = field.p
    r = prob.num_y
    x, ys = prob.points[k]
    mu = _multiplicity_of(prob.multiplicities[k], r)

    # coefficients of Q(X+x, Y+y): Y-exponent tuple -> X-polynomial
    expanded: dict = {}
    for ex, e in zip(prob.exponents, row):
        if not e:
            continue
        px = taylor_shift(list(e), x, field)
        ypart = {(0,) * r: 1}  # running expansion of prod_i (Y_i + y_i)**g_i
        for i, gi in enumerate(ex):
            for _ in range(gi):
                nxt: dict = {}
                for b, c in ypart.items():
                    up = b[:i] + (b[i] + 1,) + b[i + 1 :]
                    nxt[up] = (nxt.get(up, 0) + c) % p
                    nxt[b] = (nxt.get(b, 0) + c * ys[i]) % p
                ypart = nxt
        for b, c in ypart.items():
            if c == 0:
                continue
            acc = expanded.setdefault(b, [])
            acc.extend([0] * (len(px) - len(acc)))
            for t, v in enumerate(px):
                acc[t] = (acc[t] + c * v) % p

    for b in _derivative_indices(mu, r):
        acc = expanded.get(b, [])
        if any(acc[: mu - sum(b)]):
            return False
    return True
