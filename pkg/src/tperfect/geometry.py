"""Exact rational polytope machinery: inequality systems, vertex enumeration
by the double description method, an exact simplex solver, and the 0/1-hull
helper used by round-trip tests.

All arithmetic is exact.  Internally points are stored in homogeneous integer
coordinates (den, x_1*den, ..., x_d*den); the public API speaks
``fractions.Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

from .errors import (
    InfeasibleError,
    PreconditionError,
    UnboundedPolytopeError,
)

Rational = Fraction
QVec = tuple  # tuple of Fractions


def qvec(values) -> QVec:
    return tuple(Fraction(v) for v in values)


def constant_vector(dim: int, value) -> QVec:
    return tuple(Fraction(value) for _ in range(dim))


@dataclass(frozen=True)
class Inequality:
    """coeffs . x <= rhs, with a provenance tag citing the generating set."""

    coeffs: QVec
    rhs: Rational
    tag: str = ""
    source: tuple = ()

    def evaluate(self, x: QVec) -> Rational:
        return sum(c * v for c, v in zip(self.coeffs, x))

    def satisfied_by(self, x: QVec) -> bool:
        return self.evaluate(x) <= self.rhs

    def tight_at(self, x: QVec) -> bool:
        return self.evaluate(x) == self.rhs


@dataclass(frozen=True)
class HPolytope:
    dim: int
    inequalities: tuple

    def __post_init__(self):
        for ineq in self.inequalities:
            if len(ineq.coeffs) != self.dim:
                raise PreconditionError("inequality dimension mismatch")

    def contains(self, x: QVec) -> bool:
        if len(x) != self.dim:
            raise PreconditionError("point dimension mismatch")
        return all(ineq.satisfied_by(x) for ineq in self.inequalities)

    def tight_inequalities(self, x: QVec) -> tuple:
        return tuple(ineq for ineq in self.inequalities if ineq.tight_at(x))


@dataclass(frozen=True)
class VRep:
    """Deduplicated, lexicographically sorted vertex list."""

    vertices: tuple

    @staticmethod
    def from_points(points: Iterable[QVec]) -> "VRep":
        return VRep(tuple(sorted(set(tuple(p) for p in points))))

    @property
    def dim(self) -> int:
        return len(self.vertices[0]) if self.vertices else 0


# ---------------------------------------------------------------------------
# homogeneous integer helpers
# ---------------------------------------------------------------------------


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _row_to_int(ineq: Inequality):
    """(b - a.x >= 0) as an integer vector (b, -a1, ..., -ad)."""
    den = 1
    for c in list(ineq.coeffs) + [ineq.rhs]:
        den = _lcm(den, Fraction(c).denominator)
    row = [int(Fraction(ineq.rhs) * den)] + [-int(Fraction(c) * den) for c in ineq.coeffs]
    g = 0
    for v in row:
        g = gcd(g, abs(v))
    if g > 1:
        row = [v // g for v in row]
    return tuple(row)


def _normalize_point(vec):
    """gcd-reduce a homogeneous point; leading coordinate kept positive."""
    g = 0
    for v in vec:
        g = gcd(g, abs(v))
    if g > 1:
        vec = tuple(v // g for v in vec)
    return tuple(vec)


def _dot(row, point) -> int:
    return sum(r * p for r, p in zip(row, point))


def _dd_enumerate(int_rows, dim):
    """Double description on integer rows (b, -a) meaning a.x <= b.

    Starts from a simplex strictly containing [-1, 1]^dim; returns the list of
    (homogeneous point, tight row mask) pairs plus the count of artificial
    rows (whose mask bits come first).  Raises if the feasible set touches the
    artificial simplex, which signals unboundedness or an out-of-box input.
    """
    d = dim
    # artificial rows: x_i >= -2 and sum x <= 2d + 1
    art_rows = [tuple((2 if j == 0 else (1 if j == i + 1 else 0)) for j in range(d + 1)) for i in range(d)]
    art_rows.append(tuple([2 * d + 1] + [-1] * d))
    n_art = len(art_rows)

    verts = []
    base = [-2] * d
    verts.append((tuple([1] + base), sum(1 << i for i in range(d))))
    for j in range(d):
        coords = list(base)
        coords[j] = 4 * d - 1
        mask = sum(1 << i for i in range(d) if i != j) | (1 << d)
        verts.append((tuple([1] + coords), mask))

    rows = sorted(set(int_rows))
    for k, row in enumerate(rows):
        bit = 1 << (n_art + k)
        vals = [_dot(row, p) for p, _ in verts]
        if all(v >= 0 for v in vals):
            verts = [(p, m | bit) if vals[i] == 0 else (p, m) for i, (p, m) in enumerate(verts)]
            continue
        pos = [i for i, v in enumerate(vals) if v > 0]
        zer = [i for i, v in enumerate(vals) if v == 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        masks = [m for _, m in verts]
        new_points = {}
        for i in pos:
            mi = masks[i]
            for j in neg:
                common = mi & masks[j]
                if common.bit_count() < d - 1:
                    continue
                # combinatorial adjacency: no third vertex is tight on all
                # rows that are tight on both endpoints
                adjacent = True
                for t, m in enumerate(masks):
                    if t != i and t != j and m & common == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                pi, pj = verts[i][0], verts[j][0]
                si, sj = vals[i], vals[j]
                w = _normalize_point(tuple(si * b - sj * a for a, b in zip(pi, pj)))
                key = w
                nm = (common | bit)
                if key in new_points:
                    new_points[key] |= nm
                else:
                    new_points[key] = nm
        kept = [(verts[i][0], masks[i]) for i in pos]
        kept += [(verts[i][0], masks[i] | bit) for i in zer]
        kept += list(new_points.items())
        verts = kept
        if not verts:
            return [], n_art, rows

    art_mask = (1 << n_art) - 1
    for p, m in verts:
        if m & art_mask:
            raise UnboundedPolytopeError(
                "input system is unbounded or escapes the bounding box; a ray survives"
            )
    return verts, n_art, rows


def _homogeneous_to_qvec(point) -> QVec:
    den = point[0]
    return tuple(Fraction(n, den) for n in point[1:])


def enumerate_vertices(p: HPolytope) -> VRep:
    """Exact vertex set of a bounded H-polytope inside [-1,1]^dim.

    Output is canonical (lexicographically sorted) and independent of the
    order in which inequalities are listed.
    """
    int_rows = [_row_to_int(ineq) for ineq in p.inequalities]
    verts, _, _ = _dd_enumerate(int_rows, p.dim)
    return VRep.from_points(_homogeneous_to_qvec(pt) for pt, _ in verts)


# ---------------------------------------------------------------------------
# exact simplex
# ---------------------------------------------------------------------------


def solve_lp(a_rows, b, c):
    """max c.x subject to a_rows . x <= b, x >= 0, everything Fraction-exact.

    Returns (value, x, y) where y are the dual prices of the rows.  Bland's
    rule (lowest index), two phases.  Raises InfeasibleError on an empty
    feasible region and UnboundedPolytopeError when the objective is
    unbounded above.
    """
    m_orig = len(a_rows)
    n = len(c)
    a_rows = [[Fraction(v) for v in row] for row in a_rows]
    b = [Fraction(v) for v in b]
    c = [Fraction(v) for v in c]

    # tableau columns: n structural + m slack (+ possibly 1 auxiliary);
    # one extra column for the right-hand side
    aux = any(bi < 0 for bi in b)
    aux_col = n + m_orig
    ncols = n + m_orig + (1 if aux else 0)
    rows = []
    for i in range(m_orig):
        row = a_rows[i] + [Fraction(0)] * (ncols - n) + [b[i]]
        row[n + i] = Fraction(1)
        if aux:
            row[aux_col] = Fraction(-1)
        rows.append(row)
    basis = [n + i for i in range(m_orig)]

    def pivot(r, col):
        piv = rows[r][col]
        rows[r] = [v / piv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [vi - f * vr for vi, vr in zip(rows[i], rows[r])]
        basis[r] = col

    def run_simplex(obj):
        """Maximize obj (coefficients per column); returns the final z-row,
        whose entries are the reduced costs and whose last entry is the
        negated objective value."""
        z = list(obj) + [Fraction(0)]
        for i, bv in enumerate(basis):
            if z[bv] != 0:
                f = z[bv]
                for jcol in range(len(z)):
                    z[jcol] -= f * rows[i][jcol]
        while True:
            enter = next((j for j in range(ncols) if z[j] > 0), -1)
            if enter < 0:
                return z
            leave, best = -1, None
            for i in range(len(rows)):
                if rows[i][enter] > 0:
                    ratio = rows[i][ncols] / rows[i][enter]
                    if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                        best, leave = ratio, i
            if leave < 0:
                raise UnboundedPolytopeError("linear program is unbounded")
            pivot(leave, enter)
            f = z[enter]
            for jcol in range(ncols + 1):
                z[jcol] -= f * rows[leave][jcol]

    if aux:
        # make the auxiliary variable basic in the most negative row, which
        # yields a feasible dictionary, then minimize it
        r0 = min(range(m_orig), key=lambda i: (rows[i][ncols], i))
        pivot(r0, aux_col)
        obj1 = [Fraction(0)] * ncols
        obj1[aux_col] = Fraction(-1)
        z1 = run_simplex(obj1)
        if -z1[-1] < 0:
            raise InfeasibleError("linear program infeasible")
        if aux_col in basis:
            r = basis.index(aux_col)
            col = next((j for j in range(aux_col) if rows[r][j] != 0), -1)
            if col >= 0:
                pivot(r, col)
            else:
                rows.pop(r)
                basis.pop(r)
        # strip the auxiliary column so phase 2 cannot re-enter it
        for i in range(len(rows)):
            rows[i] = rows[i][:aux_col] + rows[i][ncols:]
        ncols = aux_col

    obj2 = c + [Fraction(0)] * (ncols - n)
    z2 = run_simplex(obj2)
    value = -z2[-1]
    x = [Fraction(0)] * n
    for i, bv in enumerate(basis):
        if bv < n:
            x[bv] = rows[i][ncols]
    y = tuple(-z2[n + i] for i in range(m_orig))
    return value, tuple(x), y


def lp_optimize(p: HPolytope, objective: QVec, sense: str = "max"):
    """Exact LP over an H-polytope contained in the nonnegative unit box.

    Returns (value, argpoint) where argpoint is an optimal vertex.  The
    polytope must satisfy x >= 0 (all builders in this package do), since the
    simplex runs in nonnegative variables.
    """
    if sense not in ("max", "min"):
        raise PreconditionError("sense must be 'max' or 'min'")
    c = [Fraction(v) for v in objective]
    if sense == "min":
        c = [-v for v in c]
    a_rows = [list(ineq.coeffs) for ineq in p.inequalities]
    b = [ineq.rhs for ineq in p.inequalities]
    value, x, _ = solve_lp(a_rows, b, c)
    if sense == "min":
        value = -value
    return value, tuple(x)


def point_in_hull(points: Sequence[QVec], x: QVec) -> bool:
    """Exact membership of x in conv(points), decided by LP feasibility."""
    pts = [qvec(p) for p in points]
    x = qvec(x)
    if not pts:
        return False
    d = len(x)
    # find lambda >= 0 with sum lambda = 1 and P lambda = x:
    # feasibility via phase 1 of: max 0 s.t. equalities split into <= pairs
    a_rows, b = [], []
    for i in range(d):
        row = [p[i] for p in pts]
        a_rows.append(row)
        b.append(x[i])
        a_rows.append([-v for v in row])
        b.append(-x[i])
    a_rows.append([Fraction(1)] * len(pts))
    b.append(Fraction(1))
    a_rows.append([Fraction(-1)] * len(pts))
    b.append(Fraction(-1))
    try:
        solve_lp(a_rows, b, [Fraction(0)] * len(pts))
    except InfeasibleError:
        return False
    return True


# ---------------------------------------------------------------------------
# hulls of 0/1 points and redundancy removal
# ---------------------------------------------------------------------------


def _rank(rows_of_fracs) -> int:
    mat = [list(map(Fraction, r)) for r in rows_of_fracs]
    rank, ncols = 0, (len(mat[0]) if mat else 0)
    for col in range(ncols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        pr = mat[rank]
        for i in range(len(mat)):
            if i != rank and mat[i][col] != 0:
                f = mat[i][col] / pr[col]
                mat[i] = [a - f * bb for a, bb in zip(mat[i], pr)]
        rank += 1
        if rank == len(mat):
            break
    return rank


def hull_of_01_points(points: Sequence) -> HPolytope:
    """Facet system of the convex hull of a full-dimensional set of 0/1 points.

    Facets are recovered as the extreme rays of the cone of valid inequalities
    (a, b) with a.p <= b for every point p, enumerated inside a bounding box.
    """
    pts = sorted(set(tuple(int(v) for v in p) for p in points))
    if not pts:
        raise PreconditionError("no points")
    d = len(pts[0])
    for p in pts:
        if any(v not in (0, 1) for v in p):
            raise PreconditionError("points must be 0/1 vectors")
    p0 = pts[0]
    if len(pts) <= d or _rank([[pi - qi for pi, qi in zip(p, p0)] for p in pts[1:]]) < d:
        raise PreconditionError("hull helper requires a full-dimensional point set")

    # cone rows over z = (a, b): a.p - b <= 0  ->  (0, -(p, -1))
    int_rows = [tuple([0] + [-v for v in p] + [1]) for p in pts]
    # box |z_i| <= 1
    for i in range(d + 1):
        e = [0] * (d + 1)
        e[i] = 1
        int_rows.append(tuple([1] + [-v for v in e]))
        int_rows.append(tuple([1] + list(e)))
    verts, _, _ = _dd_enumerate(int_rows, d + 1)

    cone_rows = [tuple([-v for v in p] + [1]) for p in pts]  # as vectors in R^{d+1}
    facets = {}
    for pt, _mask in verts:
        z = _homogeneous_to_qvec(pt)
        if all(v == 0 for v in z):
            continue
        tight = [r for r in cone_rows if sum(Fraction(ri) * zi for ri, zi in zip(r, z)) == 0]
        if not tight or _rank(tight) != d:
            continue
        den = 1
        for v in z:
            den = _lcm(den, v.denominator)
        vec = [int(v * den) for v in z]
        g = 0
        for v in vec:
            g = gcd(g, abs(v))
        vec = tuple(v // g for v in vec)
        a, bb = vec[:d], vec[d]
        if all(v == 0 for v in a):
            continue  # trivial ray 0 <= b
        facets[(a, bb)] = Inequality(qvec(a), Fraction(bb), tag="hull", source=())
    return HPolytope(dim=d, inequalities=tuple(facets[k] for k in sorted(facets)))


def remove_redundant(p: HPolytope) -> HPolytope:
    """Drop inequalities implied by the rest.

    Redundancy is probed by exact LP inside the shifted box [-1, 2]^dim, which
    is conservative and exact for polytopes contained in the unit box.
    """
    kept = list(p.inequalities)
    i = 0
    while i < len(kept):
        probe = kept[:i] + kept[i + 1 :]
        # variables u = x + 1 in [0, 3]
        a_rows, b = [], []
        for ineq in probe:
            a_rows.append(list(ineq.coeffs))
            b.append(ineq.rhs + sum(ineq.coeffs))
        for j in range(p.dim):
            e = [Fraction(0)] * p.dim
            e[j] = Fraction(1)
            a_rows.append(e)
            b.append(Fraction(3))
        target = kept[i]
        try:
            value, _, _ = solve_lp(a_rows, b, list(target.coeffs))
        except InfeasibleError:
            kept.pop(i)
            continue
        if value - sum(target.coeffs) <= target.rhs:
            kept.pop(i)
        else:
            i += 1
    return HPolytope(dim=p.dim, inequalities=tuple(kept))


# ---------------------------------------------------------------------------
# serialization (line-oriented exact-rational text)
# ---------------------------------------------------------------------------


def _frac_str(v: Fraction) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def _parse_frac(s: str) -> Fraction:
    num, den = s.split("/")
    return Fraction(int(num), int(den))


def serialize_hpolytope(p: HPolytope) -> str:
    lines = [f"H {p.dim} {len(p.inequalities)}"]
    for ineq in p.inequalities:
        coeffs = " ".join(_frac_str(c) for c in ineq.coeffs)
        src = ",".join(str(s) for s in ineq.source)
        lines.append(f"{coeffs} | {_frac_str(ineq.rhs)} | {ineq.tag} | {src}")
    return "\n".join(lines) + "\n"


def parse_hpolytope(text: str) -> HPolytope:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    tag_line = lines[0].split()
    if tag_line[0] != "H":
        raise PreconditionError("not an H-polytope document")
    dim, m = int(tag_line[1]), int(tag_line[2])
    ineqs = []
    for ln in lines[1 : 1 + m]:
        coeff_part, rhs_part, tag, src = (part.strip() for part in ln.split("|"))
        coeffs = qvec([_parse_frac(s) for s in coeff_part.split()])
        source = tuple(s for s in src.split(",") if s)
        ineqs.append(Inequality(coeffs, _parse_frac(rhs_part), tag=tag, source=source))
    return HPolytope(dim=dim, inequalities=tuple(ineqs))


def serialize_vrep(v: VRep) -> str:
    lines = [f"V {v.dim} {len(v.vertices)}"]
    for pt in v.vertices:
        lines.append(" ".join(_frac_str(c) for c in pt))
    return "\n".join(lines) + "\n"


def parse_vrep(text: str) -> VRep:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    tag_line = lines[0].split()
    if tag_line[0] != "V":
        raise PreconditionError("not a V-representation document")
    k = int(tag_line[2])
    return VRep(tuple(tuple(_parse_frac(s) for s in ln.split()) for ln in lines[1 : 1 + k]))
