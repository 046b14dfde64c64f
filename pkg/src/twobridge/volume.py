"""Hyperbolic volume: the Lobachevsky function, the volume functional,
its maximisation over the angle polytope, and complexity bounds.

Vol(Delta(a, b, c)) = L(a) + L(b) + L(c) where L is the Lobachevsky
function L(t) = -integral_0^t log|2 sin u| du.  L is odd, pi-periodic,
and maximal at pi/6; the volume of the regular ideal tetrahedron is
v3 = 3 L(pi/3) = 1.0149416...

The volume functional V(theta) = sum of L over all angles is concave on
the polytope cut out by the per-tetrahedron (sum pi) and per-edge-class
(sum 2 pi) equations; its interior critical point, when it exists, gives
the hyperbolic volume of the manifold.  maximize_volume runs a damped
Newton ascent in a null-space parametrisation of those equations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import linprog
from scipy.special import zeta as _zeta

from .angles import AngleAssignment, SHAPES, Shape, assign_angles, theorem_family
from .triangulation import Triangulation, edge_classes
from .word import Word, inner_word

# zeta(2m) for the power series of L; the tail beyond m = 40 is below
# double precision for |t| <= pi/2.
_ZETA_EVEN = [float(_zeta(2 * _m)) for _m in range(1, 41)]


def lobachevsky(theta: float) -> float:
    """The Lobachevsky function, accurate to about 1e-14 absolute.

    Evaluated through the series L(t) = t - t log|2t| + t * sum_m
    zeta(2m)/(m(2m+1)) (t/pi)^(2m), after reduction by periodicity and
    oddness to |t| <= pi/2 where the series converges geometrically.
    """
    t = math.remainder(theta, math.pi)  # reduce to [-pi/2, pi/2]
    if t == 0.0:
        return 0.0
    sign = 1.0
    if t < 0:
        sign, t = -1.0, -t
    ratio = (t / math.pi) ** 2
    term = 1.0
    series = 0.0
    for m, z in enumerate(_ZETA_EVEN, start=1):
        term *= ratio
        series += z * term / (m * (2 * m + 1))
        if z * term < 1e-18:
            break
    return sign * (t - t * math.log(2.0 * t) + t * series)


def v3() -> float:
    """Volume of the regular ideal tetrahedron, 3 L(pi/3)."""
    return 3.0 * lobachevsky(math.pi / 3.0)


def _angle_value(x: Fraction | float) -> float:
    return float(x) * math.pi if isinstance(x, Fraction) else float(x)


def tet_volume(shape: Shape | tuple) -> float:
    """Volume of the ideal tetrahedron with the given angle triple."""
    angles = shape.angles if isinstance(shape, Shape) else shape
    return sum(lobachevsky(_angle_value(a)) for a in angles)


def volume_functional(angle_map: dict[tuple[int, int], Fraction | float]) -> float:
    """Total volume of a per-(tetrahedron, edge) angle map.

    Each tetrahedron contributes the Lobachevsky sum over one edge of each
    of its three opposite pairs.
    """
    tets = {t for t, _ in angle_map}
    total = 0.0
    for t in sorted(tets):
        total += sum(lobachevsky(_angle_value(angle_map[(t, e)])) for e in (0, 1, 2))
    return total


def assignment_volume(assignment: AngleAssignment) -> float:
    """Volume of a per-layer assignment (two tetrahedra per layer)."""
    return 2.0 * sum(tet_volume(la.triple) for la in assignment.layers)


def _constraint_system(tri: Triangulation) -> tuple[np.ndarray, np.ndarray]:
    """Equations A x = b for angle structures; x has 3 entries per tet.

    Variable 3t + p is the angle on the opposite-edge pair p of
    tetrahedron t (pairs are edges (0,5), (1,4), (2,3)).
    """
    n = tri.tet_count
    rows = []
    rhs = []
    for t in range(n):
        row = np.zeros(3 * n)
        row[3 * t : 3 * t + 3] = 1.0
        rows.append(row)
        rhs.append(math.pi)
    for cls in edge_classes(tri).classes:
        row = np.zeros(3 * n)
        for t, e in cls.embeddings:
            pair = e if e < 3 else 5 - e
            row[3 * t + pair] += 1.0
        rows.append(row)
        rhs.append(2.0 * math.pi)
    return np.array(rows), np.array(rhs)


def _interior_point(A: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """A strictly positive solution of A x = b via slack maximisation."""
    n = A.shape[1]
    # maximise t subject to A x = b, t <= x_i <= pi - t
    c = np.zeros(n + 1)
    c[-1] = -1.0
    A_eq = np.hstack([A, np.zeros((A.shape[0], 1))])
    A_ub = np.vstack(
        [
            np.hstack([-np.eye(n), np.ones((n, 1))]),
            np.hstack([np.eye(n), np.ones((n, 1))]),
        ]
    )
    b_ub = np.concatenate([np.zeros(n), np.full(n, math.pi)])
    res = linprog(
        c,
        A_ub=A_ub,
        b_ub=b_ub,
        A_eq=A_eq,
        b_eq=b,
        bounds=[(None, None)] * n + [(None, math.pi / 2)],
        method="highs",
    )
    if not res.success or res.x[-1] <= 1e-9:
        return None
    return res.x[:-1]


@dataclass
class MaximizeResult:
    angles: np.ndarray          # shape (tets, 3), pair angles in radians
    volume: float
    gradient_norm: float        # projected onto the constraint null space
    iterations: int
    converged: bool

    def triple(self, tet: int) -> tuple[float, float, float]:
        return tuple(self.angles[tet])

    @property
    def on_boundary(self) -> bool:
        """True when the iterate sits against the positivity walls.

        A non-converged run that ends here means the supremum is attained
        on the boundary of the closed polytope (no interior critical
        point); callers should not treat the value as a hyperbolic volume.
        """
        return bool(self.angles.min() < 1e-6 or self.angles.max() > math.pi - 1e-6)


def maximize_volume(
    tri: Triangulation,
    seed: AngleAssignment | None = None,
    tolerance: float = 1e-10,
    max_iters: int = 200,
) -> MaximizeResult:
    """Maximise the volume functional over the angle polytope.

    Concavity makes the interior critical point unique; on a geometric
    triangulation it computes the hyperbolic volume.  Raises ValueError if
    the constraint system admits no strictly positive solution.
    """
    A, b = _constraint_system(tri)
    n = 3 * tri.tet_count

    if seed is not None:
        # Variable order per tetrahedron is (horizontal, vertical, diagonal)
        # to match the edge-pair numbering (0,5), (1,4), (2,3).
        x = np.array(
            [
                float(q) * math.pi
                for la in seed.layers
                for _ in (0, 1)
                for q in (la.h, la.v, la.d)
            ]
        )
        if np.max(np.abs(A @ x - b)) > 1e-9:
            raise ValueError("seed assignment does not satisfy the angle equations")
    else:
        x = _interior_point(A, b)
        if x is None:
            raise ValueError("no strict angle structure: constraint system infeasible")

    # Orthonormal basis of the null space of A.
    u, s, vt = np.linalg.svd(A)
    rank = int(np.sum(s > s[0] * 1e-12))
    N = vt[rank:].T  # n x k
    if N.shape[1] == 0:
        vol = sum(lobachevsky(v) for v in x)
        return MaximizeResult(x.reshape(-1, 3), vol, 0.0, 0, True)

    def value(x):
        return sum(lobachevsky(v) for v in x)

    def grad(x):
        return -np.log(np.abs(2.0 * np.sin(x)))

    fx = value(x)
    converged = False
    it = 0
    for it in range(1, max_iters + 1):
        g = grad(x)
        gy = N.T @ g
        gnorm = float(np.linalg.norm(gy))
        if gnorm <= tolerance:
            converged = True
            break
        # Reduced Newton step with Levenberg damping; second derivative of
        # the Lobachevsky function is -cot.
        H = (N.T * (-1.0 / np.tan(x))) @ N
        lam = 1e-12
        while True:
            try:
                step = np.linalg.solve(-(H - lam * np.eye(H.shape[0])), gy)
                break
            except np.linalg.LinAlgError:
                lam = max(lam * 10, 1e-8)
        direction = N @ step
        if float(direction @ g) <= 0:
            direction = N @ gy  # fall back to projected gradient ascent
        alpha = 1.0
        margin = 1e-12
        accepted = False
        noise = 1e-12 * max(1.0, abs(fx))  # V is flat to rounding at the top
        for _ in range(60):
            x_new = x + alpha * direction
            if np.all(x_new > margin) and np.all(x_new < math.pi - margin):
                f_new = value(x_new)
                if f_new > fx - noise:
                    x, fx = x_new, f_new
                    accepted = True
                    break
            alpha *= 0.5
        if not accepted:
            break
    g = grad(x)
    gnorm = float(np.linalg.norm(N.T @ g))
    converged = gnorm <= tolerance or converged
    return MaximizeResult(x.reshape(-1, 3), value(x), gnorm, it, converged)


@dataclass
class BoundsReport:
    """All complexity bounds for one word."""

    word: str
    tet_count: int
    n_inner: int
    C: int
    explicit_volume: float | None
    lower_mult: float | None
    lower_additive: float | None
    upper_additive: float | None
    ishikawa_nemoto: int
    petronio_vesnin: float
    best_lower: float
    best_upper: float
    crossover: bool | None

    def to_dict(self) -> dict:
        return {
            "schema_version": 1,
            "word": self.word,
            "tet_count": self.tet_count,
            "n_inner": self.n_inner,
            "C": self.C,
            "explicit_volume": self.explicit_volume,
            "lower_mult": self.lower_mult,
            "lower_additive": self.lower_additive,
            "upper_additive": self.upper_additive,
            "ishikawa_nemoto": self.ishikawa_nemoto,
            "petronio_vesnin": self.petronio_vesnin,
            "best_lower": self.best_lower,
            "best_upper": self.best_upper,
            "crossover": self.crossover,
        }


CSV_COLUMNS = [
    "word",
    "tet_count",
    "n_inner",
    "C",
    "explicit_volume",
    "lower_mult",
    "lower_additive",
    "upper_additive",
    "ishikawa_nemoto",
    "petronio_vesnin",
    "best_lower",
    "best_upper",
    "crossover",
]


def bounds_report(w: Word) -> BoundsReport:
    """Complexity bounds for one normalised hyperbolic word.

    Words with inner exponents in {1, 2} get the full set of volume-based
    bounds; other words get only the triangulation size, the twist-number
    upper bound and the syllable-count lower bound.
    """
    if w.n < 2:
        raise ValueError(f"{w} is not hyperbolic")
    tet_count = 2 * (w.ell - 1)
    exps = w.exponents
    ishikawa = w.ell + 2 * (w.n - 1) - sum(1 for e in exps if e == 1)
    if w.ell >= 3:
        inner = inner_word(w)
        n_inner = inner.n
        C = inner.ell - inner.n
    else:
        n_inner, C = 0, 0
    petronio = max(2.0, 2.0 * n_inner - 2.6667)

    in_family = theorem_family(w)
    explicit = lower_mult = lower_add = upper_add = None
    crossover = None
    if in_family:
        assignment = assign_angles(w)
        explicit = assignment_volume(assignment)
        lower_mult = explicit / v3()
        lower_add = 2 * n_inner + 1 + (0.9632 * C + 0.393)
        upper_add = 2 * n_inner + 1 + (2 * C + 1)
        crossover = C >= 0.628 * n_inner - 0.325

    lowers = [petronio] + [x for x in (lower_mult, lower_add) if x is not None]
    best_lower = max(lowers)
    best_upper = float(min(tet_count, ishikawa))
    return BoundsReport(
        word=str(w),
        tet_count=tet_count,
        n_inner=n_inner,
        C=C,
        explicit_volume=explicit,
        lower_mult=lower_mult,
        lower_additive=lower_add,
        upper_additive=upper_add,
        ishikawa_nemoto=ishikawa,
        petronio_vesnin=petronio,
        best_lower=best_lower,
        best_upper=best_upper,
        crossover=crossover,
    )


def _ratio(shape_names: list[str], extra: float = 0.0) -> float:
    """sum of catalogue shape volumes (plus extra), per tetrahedron pair."""
    return sum(tet_volume(SHAPES[s]) for s in shape_names) + extra


def theorem_ratio_table() -> list[tuple[str, float]]:
    """The eleven block-family volume ratios from the 0.8 lower bound.

    Each entry is (label, ratio) with ratio = V / (|T| v3) evaluated from
    full-precision shape volumes at the stated block parameters.
    """
    V3 = v3()

    def over(shapes, layers):
        return 2 * _ratio(shapes) / (2 * layers * V3)

    entries = [
        ("start B2, k=1", over(["VII", "I", "VI"], 3)),
        ("start B3, m=1", over(["V", "I", "II", "IV", "VI"], 5)),
        ("middle B3, m=1", over(["I", "VI", "IV", "II"], 4)),
        ("end B2, k=2", over(["V", "V", "V", "IX"], 4)),
        ("end B2, k=3", over(["V", "V", "V", "V", "IX", "III"], 6)),
        (
            "B3 + end B2, m=1",
            over(["V", "I", "II", "IV", "VI"] + ["V", "V", "V", "IX"], 9),
        ),
        (
            "B2 + B3 + end B2, k=m=1",
            over(["VII", "I", "VI"] + ["I", "VI", "IV", "II"] + ["V", "V", "V", "IX"], 11),
        ),
        ("unfinished B3, m=2", over(["I", "VI", "III", "III", "III", "VIII"], 6)),
        ("all B2, k=2", over(["VII", "VII", "III", "III", "III"], 5)),
        ("all B2, k=1", over(["VII", "VII", "III"], 3)),
        ("all B2, k=1, revised", over(["II", "II", "X2"], 3)),
    ]
    return entries
