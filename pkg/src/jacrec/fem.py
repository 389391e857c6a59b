"""Triangle basis functions and sparse mass-matrix assembly.

The basis on a triangle splits into vertex hats (barycentric coordinates),
edge bubbles, and interior bubbles built from integrated Legendre/Jacobi
polynomials.  On the reference element (vertices (-1,-1), (1,-1), (0,1))
the collapsed-coordinate substitution z = 2x/(1-y) factorizes every
product of two functions built on the [V1,V2]+V3 frame into two 1D
integrals of the canonical table families, which is what the recursive
assembler exploits:

    psi_{i,j} psi_{k,l}  ->  I^{(0)}[i,k] * I^{(i+k+1, 2i-1, 2k-1)}[j,l]

with the edge bubbles of edge [V1,V2] entering as the degenerate case
j = 0 (no transverse factor).  Pairs involving a vertex function or one of
the other two edges do not factorize in this frame; the assembler computes
those boundary blocks with the same degree-exact tensor quadrature that
the oracle assembler uses throughout.  Basis ordering (vertices, then
edges, then interior lexicographic) is fixed and shared by both
assemblers, so their outputs are entrywise comparable.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .integrals import INTEGRATED, IntegralSpec, single_integrated_direct
from .jacobi import (integrated_all_array, integrated_any,
                     integrated_jacobi, integrated_legendre)
from .numerics import gauss_legendre
from .scalars import EXACT, FLOAT, RAT
from .tables import fill_recint

#: reference element
REFERENCE_VERTICES = ((-1.0, -1.0), (1.0, -1.0), (0.0, 1.0))
#: edge list as (start, end) vertex numbers, 1-based
EDGES = ((1, 2), (2, 3), (3, 1))


@dataclass(frozen=True)
class Triangle:
    v1: tuple
    v2: tuple
    v3: tuple

    def __post_init__(self):
        if self.signed_area == 0:
            raise ValueError("degenerate triangle")

    @property
    def signed_area(self):
        (x1, y1), (x2, y2), (x3, y3) = self.v1, self.v2, self.v3
        return ((x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1)) / 2

    @property
    def area(self):
        return abs(self.signed_area)

    @property
    def vertices(self):
        return (self.v1, self.v2, self.v3)


def reference_triangle() -> Triangle:
    return Triangle(*REFERENCE_VERTICES)


def barycentric(tri: Triangle, point) -> tuple:
    """(lambda_1, lambda_2, lambda_3) of a point; affine, lambda_i(V_j) = delta_ij.

    Works for float or exact rational coordinates alike.
    """
    (x1, y1), (x2, y2), (x3, y3) = tri.vertices
    x, y = point
    det = (x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1)
    l2 = ((x - x1) * (y3 - y1) - (x3 - x1) * (y - y1)) / det
    l3 = ((x2 - x1) * (y - y1) - (x - x1) * (y2 - y1)) / det
    return (1 - l2 - l3, l2, l3)


class BasisFn(NamedTuple):
    """kind 'vertex' (a = vertex number), 'edge' (a = edge number, b = i),
    or 'interior' (a = i, b = j)."""

    kind: str
    a: int
    b: int = 0


def basis_functions(p: int) -> list:
    """Canonical basis enumeration for total degree p: count (p+1)(p+2)/2."""
    if p < 1:
        raise ValueError("degree must be >= 1")
    fns = [BasisFn("vertex", m) for m in (1, 2, 3)]
    for e in (1, 2, 3):
        fns.extend(BasisFn("edge", e, i) for i in range(2, p + 1))
    for i in range(2, p):
        fns.extend(BasisFn("interior", i, j) for j in range(1, p - i + 1))
    return fns


def interior_count(p: int) -> int:
    return max(0, (p - 1) * (p - 2) // 2)


def eval_basis(tri: Triangle, fn: BasisFn, point):
    """Value of one basis function at a point of the (closed) triangle."""
    lam = barycentric(tri, point)
    if fn.kind == "vertex":
        return lam[fn.a - 1]
    if fn.kind == "edge":
        e1, e2 = EDGES[fn.a - 1]
        return _edge_value(lam[e1 - 1], lam[e2 - 1], fn.b)
    if fn.kind == "interior":
        i, j = fn.a, fn.b
        g = _edge_value(lam[0], lam[1], i)
        h = integrated_jacobi(j, 2 * i - 1, 2 * lam[2] - 1)
        return g * h
    raise ValueError(f"unknown basis kind {fn.kind!r}")


def _edge_value(l1, l2, i: int):
    s = l1 + l2
    if s == 0:
        # opposite vertex: the (l1+l2)^i factor wins, i >= 2
        return 0 * l1
    return integrated_legendre(i, (l2 - l1) / s) * s ** i


def interior_pattern(i: int, j: int, k: int, l: int) -> bool:
    """Index predicate for possibly-nonzero interior-interior mass entries.

    The axial factor vanishes unless |i - k| is 0 or 2 (parity plus
    orthogonality of the integrated Legendre pair), and the transverse
    factor vanishes once the total degrees i+j and k+l differ by more than
    4 (the excess weight folds into the Jacobi orthogonality weight).
    Both bounds are sharp; the oracle assembler confirms them entrywise.
    """
    return abs((i + j) - (k + l)) <= 4 and abs(i - k) in (0, 2)


def duffy_factor(i: int, j: int, k: int, l: int):
    """The two 1D integral specs whose product is the interior pair integral."""
    first = IntegralSpec(i, k, 0, 0, 0, 0, 0, 0, INTEGRATED)
    second = IntegralSpec(j, l, 2 * i - 1, 0, 2 * k - 1, 0, i + k + 1, 0, INTEGRATED)
    return first, second


# ---------------------------------------------------------------------------
# sparse COO container and exports
# ---------------------------------------------------------------------------

@dataclass
class MassMatrixCOO:
    """Symmetric element matrix, upper triangle stored (row <= col)."""

    dimension: int
    entries: list = field(default_factory=list)
    symmetric: bool = True

    def add(self, row: int, col: int, value: float):
        if row > col:
            row, col = col, row
        self.entries.append((row, col, float(value)))

    def finalize(self):
        self.entries.sort(key=lambda e: (e[0], e[1]))
        for (r1, c1, _), (r2, c2, _) in zip(self.entries, self.entries[1:]):
            if r1 == r2 and c1 == c2:
                raise ValueError(f"duplicate entry ({r1}, {c1})")
        return self

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.dimension, self.dimension))
        for r, c, v in self.entries:
            out[r, c] = v
            out[c, r] = v
        return out

    def scaled(self, factor: float) -> "MassMatrixCOO":
        out = MassMatrixCOO(self.dimension, [(r, c, v * factor)
                                             for r, c, v in self.entries])
        return out

    def to_matrix_market(self, path):
        # symmetric coordinate format stores the lower triangle
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("%%MatrixMarket matrix coordinate real symmetric\n")
            fh.write(f"{self.dimension} {self.dimension} {self.nnz}\n")
            for r, c, v in self.entries:
                fh.write(f"{c + 1} {r + 1} {v:.17g}\n")

    def to_pbm(self, path):
        present = set()
        for r, c, _ in self.entries:
            present.add((r, c))
            present.add((c, r))
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("P1\n")
            fh.write(f"{self.dimension} {self.dimension}\n")
            for r in range(self.dimension):
                fh.write(" ".join("1" if (r, c) in present else "0"
                                  for c in range(self.dimension)) + "\n")


# ---------------------------------------------------------------------------
# quadrature (oracle) assembly
# ---------------------------------------------------------------------------

def duffy_rule(p: int):
    """Tensor rule on the collapsed square: points (x, y) and weights.

    q = p + 2 points per axis integrates every basis-pair product exactly
    (degrees <= 2p per axis plus the (1-y)/2 Jacobian).
    """
    q = math.ceil((2 * p + 4) / 2)
    rule = gauss_legendre(q)
    z = np.asarray(rule.nodes)
    wz = np.asarray(rule.weights)
    zz, yy = np.meshgrid(z, z, indexing="ij")
    ww = np.outer(wz, wz) * (1.0 - yy) / 2.0
    xx = zz * (1.0 - yy) / 2.0
    return xx.ravel(), yy.ravel(), ww.ravel()


def _basis_matrix(p: int, lam1, lam2, lam3, rows=None) -> np.ndarray:
    """Tabulate basis functions (all, or a subset of rows) at points."""
    fns = basis_functions(p)
    if rows is None:
        rows = range(len(fns))
    npts = lam1.shape[0]
    lams = (lam1, lam2, lam3)

    edge_vals = {}
    for e, (e1, e2) in enumerate(EDGES, start=1):
        a, b = lams[e1 - 1], lams[e2 - 1]
        s = a + b
        ratio = np.divide(b - a, s, out=np.zeros_like(s), where=s != 0)
        ph = integrated_all_array(p, 0, ratio)
        edge_vals[e] = ph * s ** np.arange(0, p + 1)[:, None]

    interior_h = {}
    for i in range(2, p):
        interior_h[i] = integrated_all_array(p - i, 2 * i - 1, 2 * lam3 - 1)

    out = np.empty((len(list(rows)), npts))
    for out_row, idx in enumerate(rows):
        fn = fns[idx]
        if fn.kind == "vertex":
            out[out_row] = lams[fn.a - 1]
        elif fn.kind == "edge":
            out[out_row] = edge_vals[fn.a][fn.b]
        else:
            out[out_row] = edge_vals[1][fn.a] * interior_h[fn.a][fn.b]
    return out


def _reference_points(p: int):
    x, y, w = duffy_rule(p)
    lam1 = (1.0 - y - 2.0 * x) / 4.0
    lam2 = (2.0 * x + 1.0 - y) / 4.0
    lam3 = (1.0 + y) / 2.0
    return lam1, lam2, lam3, w


def assemble_mass_quadrature(p: int, tri: Triangle) -> MassMatrixCOO:
    """Dense oracle assembly by degree-exact tensor quadrature (all pairs)."""
    if p < 2:
        raise ValueError("degree must be >= 2")
    lam1, lam2, lam3, w = _reference_points(p)
    B = _basis_matrix(p, lam1, lam2, lam3)
    M = (B * w) @ B.T
    M *= tri.area / 2.0
    coo = MassMatrixCOO(len(M))
    for r in range(len(M)):
        for c in range(r, len(M)):
            coo.add(r, c, M[r, c])
    return coo.finalize()


# ---------------------------------------------------------------------------
# recursive assembly
# ---------------------------------------------------------------------------

class _Tables:
    """Memoized exact tables for one assembly run."""

    def __init__(self, p: int):
        self.p = p
        self.axial = fill_recint(0, RAT(0), RAT(0), p, mode=EXACT)
        self._transverse = {}
        self._mixed = {}

    def transverse(self, i, k):
        key = (i, k)
        tab = self._transverse.get(key)
        if tab is None:
            tab = fill_recint(i + k + 1, RAT(2 * i - 1), RAT(2 * k - 1),
                              self.p - i, self.p - k, mode=EXACT)
            self._transverse[key] = tab
        return tab

    def mixed(self, i, k, l):
        # edge x interior: no transverse factor on the edge side
        key = (i + k + 1, 2 * k - 1, l)
        val = self._mixed.get(key)
        if val is None:
            val = single_integrated_direct(key[0], key[1], l, mode=EXACT)
            self._mixed[key] = val
        return val


def _interior_pairs(p: int):
    ints = [(i, j) for i in range(2, p) for j in range(1, p - i + 1)]
    for a, (i, j) in enumerate(ints):
        for b in range(a, len(ints)):
            k, l = ints[b]
            if interior_pattern(i, j, k, l):
                yield (a, i, j, b, k, l)


def assemble_mass_recursive(p: int, tri: Triangle, threads: int = 1) -> MassMatrixCOO:
    """Assembly from recursion tables; per-entry work after table fill is O(1).

    Interior-interior entries outside the sparsity pattern are omitted.
    Vertex rows and the blocks of the two non-factorizing edges fall back
    to the degree-exact tensor oracle (a bounded boundary share of the
    matrix).  Output is deterministic for any thread count.
    """
    if p < 2:
        raise ValueError("degree must be >= 2")
    fns = basis_functions(p)
    nb = len(fns)
    scale = tri.area / 2.0
    n_edge = p - 1
    edge0_off = 3
    int_off = 3 + 3 * n_edge

    tables = _Tables(p)
    # prefill transverse tables serially so worker threads only read
    for i in range(2, p):
        for k in range(i, p):
            if abs(i - k) in (0, 2):
                tables.transverse(i, k)

    coo = MassMatrixCOO(nb)

    # interior x interior via the factorized tables
    pairs = list(_interior_pairs(p))

    def emit_chunk(chunk):
        buf = []
        for a, i, j, b, k, l in chunk:
            ii, kk = (i, k) if i <= k else (k, i)
            jj, ll = (j, l) if i <= k else (l, j)
            v = tables.axial.get(ii, kk) * tables.transverse(ii, kk).get(jj, ll)
            buf.append((int_off + a, int_off + b, float(v) * scale))
        return buf

    if threads > 1 and pairs:
        chunksz = max(1, len(pairs) // threads)
        chunks = [pairs[i:i + chunksz] for i in range(0, len(pairs), chunksz)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for buf in pool.map(emit_chunk, chunks):
                coo.entries.extend(buf)
    else:
        coo.entries.extend(emit_chunk(pairs))

    # edge [V1,V2] x interior and edge [V1,V2] x itself: same factorization,
    # degenerate transverse index
    ints = [(i, j) for i in range(2, p) for j in range(1, p - i + 1)]
    for ei, i in enumerate(range(2, p + 1)):
        row = edge0_off + ei
        for ek in range(ei, n_edge):
            k = 2 + ek
            if abs(i - k) not in (0, 2):
                continue
            axial = tables.axial.get(i, k)
            if axial == 0:
                continue
            v = axial * RAT(2, i + k + 2)
            coo.add(row, edge0_off + ek, float(v) * scale)
        for b, (k, l) in enumerate(ints):
            if abs(i - k) not in (0, 2):
                continue
            axial = tables.axial.get(i, k)
            if axial == 0:
                continue
            v = axial * tables.mixed(i, k, l)
            if v != 0:
                coo.add(row, int_off + b, float(v) * scale)

    # boundary blocks that do not factorize in this frame: quadrature
    lam1, lam2, lam3, w = _reference_points(p)
    bnd_rows = list(range(3)) + list(range(3 + n_edge, 3 + 3 * n_edge))
    B_bnd = _basis_matrix(p, lam1, lam2, lam3, rows=bnd_rows)
    B_all = _basis_matrix(p, lam1, lam2, lam3)
    blk = (B_bnd * w) @ B_all.T
    drop = 5e-14 * max(1.0, float(np.max(np.abs(blk))))
    done = set()
    for br, r in enumerate(bnd_rows):
        for c in range(nb):
            lo, hi = (r, c) if r <= c else (c, r)
            if (lo, hi) in done:
                continue
            done.add((lo, hi))
            v = blk[br, c]
            if abs(v) > drop:
                coo.add(lo, hi, v * scale)
    return coo.finalize()
