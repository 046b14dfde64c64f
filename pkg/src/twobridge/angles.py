"""Explicit angle structures on layered 2-bridge triangulations.

Angles are stored exactly, as Fractions in units of pi.  Every layer's two
tetrahedra share one triple (v, h, d): the angle on the vertical pair, the
horizontal pair and the diagonal pair of opposite edges (volume is
maximised with the two tetrahedra of a layer agreeing, so nothing is lost).

The assignment is built in two steps.  First the block decomposition of
the inner word fixes the hyperbolic shape of every layer: B1 blocks are
regular ideal, B2/B3 blocks use a small catalogue of shapes, and the first
and last layers get substitute shapes that absorb the folds at the two
ends.  Second, each shape triple is oriented onto (v, h, d) so that the
angle sums around the edge classes hold; around the layered construction
those sums are chains that an R letter starts and stops on vertical pairs
and an L letter on horizontal pairs, so the orientation is recovered by a
deterministic layer-by-layer recurrence over the letter pattern.

verify_angle_structure checks the result against the triangulation itself
(exact rational sums over union-find edge classes) and is kept independent
of the synthesis above.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .blocks import ALL_B2, B1, B2_END, B2_START, B3, UNFINISHED_B3, Block, BlockDecomposition, decompose
from .triangulation import (
    DIAGONAL_EDGES,
    HORIZONTAL_EDGES,
    VERTICAL_EDGES,
    Triangulation,
    VerificationError,
    edge_classes,
)
from .word import Word, inner_word, is_hyperbolic

F = Fraction


@dataclass(frozen=True)
class Shape:
    """An ideal tetrahedron shape: dihedral angles as multiples of pi."""

    name: str
    angles: tuple[Fraction, Fraction, Fraction]


_CATALOG: tuple[Shape, ...] = (
    Shape("0", (F(1, 3), F(1, 3), F(1, 3))),
    Shape("I", (F(1, 3), F(3, 8), F(7, 24))),
    Shape("II", (F(1, 3), F(1, 4), F(5, 12))),
    Shape("III", (F(1, 4), F(1, 4), F(1, 2))),
    Shape("IV", (F(5, 24), F(7, 24), F(1, 2))),
    Shape("V", (F(1, 6), F(1, 2), F(1, 3))),
    Shape("VI", (F(1, 6), F(1, 4), F(7, 12))),
    Shape("VII", (F(1, 8), F(3, 8), F(1, 2))),
    Shape("VIII", (F(1, 8), F(1, 4), F(5, 8))),
    Shape("IX", (F(1, 12), F(7, 12), F(1, 3))),
    Shape("X2", (F(2, 3), F(1, 6), F(1, 6))),
)

SHAPES: dict[str, Shape] = {s.name: s for s in _CATALOG}


def shape_catalog() -> list[Shape]:
    """The shapes used by the explicit angle structures."""
    return list(_CATALOG)


def angle_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator} π" if q.denominator != 1 else f"{q.numerator} π"


@dataclass(frozen=True)
class LayerAngles:
    shape: str
    triple: tuple[Fraction, Fraction, Fraction]  # (vertical, horizontal, diagonal)

    @property
    def v(self) -> Fraction:
        return self.triple[0]

    @property
    def h(self) -> Fraction:
        return self.triple[1]

    @property
    def d(self) -> Fraction:
        return self.triple[2]


@dataclass(frozen=True)
class AngleAssignment:
    word: Word
    layers: tuple[LayerAngles, ...]

    def to_json(self) -> str:
        return json.dumps(
            [
                {
                    "shape": la.shape,
                    "vertical": angle_str(la.v),
                    "horizontal": angle_str(la.h),
                    "diagonal": angle_str(la.d),
                }
                for la in self.layers
            ]
        )


@dataclass(frozen=True)
class DeficitTriple:
    """Angle deficits on the three boundary edge classes of a block end."""

    horizontal: Fraction
    vertical: Fraction
    diagonal: Fraction

    def __iter__(self):
        return iter((self.horizontal, self.vertical, self.diagonal))


def theorem_family(w: Word) -> bool:
    """True iff w is normalised, hyperbolic, and has inner exponents in {1,2}."""
    if not is_hyperbolic(w) or w.syllables[0][0] != "R" or w.ell < 3:
        return False
    return all(e in (1, 2) for e in inner_word(w).exponents)


def _shape_sequence(
    w: Word, dec: BlockDecomposition, k1_override: bool
) -> list[str]:
    """Shape name per layer (layer 0 under the outer fold, one per inner letter)."""
    inner = dec.inner
    exps = inner.exponents

    def unit(lengths):
        # Shapes for the squared runs of a B3-like body: each non-final run
        # contributes its padding of half-turn-square layers and closes with
        # a 5pi/8 layer; the final run only pads (its closing layers vary).
        out: list[str] = []
        for mlen in lengths[:-1]:
            out += ["III"] * (2 * (mlen - 1)) + ["III", "III", "VIII"]
        out += ["III"] * (2 * (lengths[-1] - 1))
        return out

    seq: list[str] = []
    for bi, b in enumerate(dec.blocks):
        at_end = bi == len(dec.blocks) - 1
        n_letters = sum(exps[b.start : b.end])
        if b.kind == B1:
            body = ["0"] * n_letters
            if at_end:
                body[-1] = "V"
        elif b.kind == B2_START:
            body = ["III"] * (2 * b.k - 2) + ["VI", "I"]
        elif b.kind == B3:
            body = ["I", "VI"] + unit(b.b2_lengths)
            body += ["III", "VIII"] if at_end else ["IV", "II"]
        elif b.kind == UNFINISHED_B3:
            body = ["I", "VI"]
            for mlen in b.b2_lengths[:-1]:
                body += ["III"] * (2 * (mlen - 1)) + ["III", "III", "VIII"]
            body += ["VII"]
        elif b.kind == B2_END:
            body = ["IX"] + ["III", "V"] * (b.k - 2) + ["V", "V", "V"]
        elif b.kind == ALL_B2:
            if b.k == 1 and k1_override:
                body = ["X2", "II"]
            else:
                body = ["III"] * (2 * b.k - 1) + ["VII"]
        else:  # pragma: no cover
            raise AssertionError(b.kind)
        if len(body) != n_letters:
            raise VerificationError(
                f"shape sequence for block {b} has {len(body)} layers, expected {n_letters}"
            )
        seq.extend(body)

    first = dec.blocks[0]
    if first.kind == B2_START or (first.kind == ALL_B2 and first.k >= 2):
        delta1 = "VII"
    elif first.kind == ALL_B2:  # k == 1
        delta1 = "II" if k1_override else "VII"
    else:
        delta1 = "V"
    return [delta1] + seq


def _orient_layers(letters: str, shapes: list[str]) -> list[tuple[Fraction, ...]] | None:
    """Distribute each layer's shape angles onto (v, h, d) via chain sums.

    Every edge class of the layered complex is a chain: an R letter ends
    the running vertical chain with the layer's diagonal angle and starts a
    new one, an L letter does the same for horizontal chains, and the two
    end folds close the remaining chains (the fold at an R end absorbs the
    final diagonal into the horizontal chain, an L end into the vertical
    chain; the outer fold always feeds diagonal and horizontal of layer 0
    into one chain of half weight).  Returns the first consistent
    orientation in a fixed search order, or None.
    """
    two_pi = F(2)
    pi = F(1)
    n_layers = len(shapes)

    def arrangements(name: str):
        angles = SHAPES[name].angles
        seen = []
        for i in range(3):
            for j in range(3):
                if j == i:
                    continue
                k = 3 - i - j
                t = (angles[i], angles[j], angles[k])
                if t not in seen:
                    seen.append(t)
        return seen

    end_letter = letters[-1]

    def search(j, sh, sv, acc):
        if j == n_layers:
            d_last = acc[-1][2]
            if end_letter == "R":
                return acc if (sh + d_last == pi and sv == two_pi) else None
            return acc if (sv + d_last == pi and sh == two_pi) else None
        if j == 0:
            for v, h, d in arrangements(shapes[0]):
                result = search(1, d + 2 * h, 2 * v, [(v, h, d)])
                if result is not None:
                    return result
            return None
        letter = letters[j]
        prev_d = acc[-1][2]
        multiset = list(SHAPES[shapes[j]].angles)
        target = pi if j == 1 and letter == "L" else two_pi
        # The chain the letter closes has target 2*pi except for the chain
        # born at the outer fold (half weight): that is the horizontal
        # chain, closed by the first L letter.
        need = (target - sh) if letter == "L" else (target - sv)
        if need not in multiset or not (0 < need < pi):
            return None
        rest = list(multiset)
        rest.remove(need)
        options = [(rest[0], rest[1])]
        if rest[0] != rest[1]:
            options.append((rest[1], rest[0]))
        for v, h in sorted(set(options)):
            if letter == "L":
                nsh, nsv = prev_d + 2 * h, sv + 2 * v
            else:
                nsh, nsv = sh + 2 * h, prev_d + 2 * v
            result = search(j + 1, nsh, nsv, acc + [(v, h, need)])
            if result is not None:
                return result
        return None

    return search(0, F(0), F(0), [])


def assign_angles(
    w: Word,
    dec: BlockDecomposition | None = None,
    *,
    k1_override: bool = True,
) -> AngleAssignment:
    """The explicit angle structure for a word with inner exponents in {1,2}.

    With k1_override (default) the single-squared-syllable word gets the
    higher-volume three-layer assignment through the obtuse shape X2
    instead of the generic squared-run pattern.
    """
    if not is_hyperbolic(w) or w.syllables[0][0] != "R":
        raise ValueError(f"{w} must be normalised and hyperbolic")
    if w.ell < 3:
        raise ValueError(f"{w} has no inner word")
    inner = inner_word(w)
    if any(e not in (1, 2) for e in inner.exponents):
        raise ValueError(f"inner exponents of {w} must lie in {{1, 2}}")
    if dec is None:
        dec = decompose(inner)
    elif dec.inner != inner:
        raise ValueError(f"decomposition is for {dec.inner}, not the inner word of {w}")

    shapes = _shape_sequence(w, dec, k1_override)
    letters = w.letters
    if len(shapes) != len(letters) - 1:
        raise VerificationError("shape sequence length mismatch")
    oriented = _orient_layers(letters, shapes)
    if oriented is None:
        raise VerificationError(f"no consistent orientation of shapes {shapes} for {w}")
    layers = tuple(
        LayerAngles(name, triple) for name, triple in zip(shapes, oriented)
    )
    return AngleAssignment(w, layers)


def expand_to_tetrahedra(
    assignment: AngleAssignment, tri: Triangulation
) -> dict[tuple[int, int], Fraction]:
    """Per-(tetrahedron, edge) angles; both tetrahedra of a layer agree."""
    if tri.layer_of is None:
        raise ValueError("triangulation carries no layer metadata")
    if tri.tet_count != 2 * len(assignment.layers):
        raise ValueError("assignment and triangulation have different layer counts")
    out: dict[tuple[int, int], Fraction] = {}
    for t in range(tri.tet_count):
        la = assignment.layers[tri.layer_of[t]]
        for e in VERTICAL_EDGES:
            out[(t, e)] = la.v
        for e in HORIZONTAL_EDGES:
            out[(t, e)] = la.h
        for e in DIAGONAL_EDGES:
            out[(t, e)] = la.d
    return out


@dataclass
class AngleVerification:
    """Outcome of checking an angle map against a triangulation."""

    range_ok: bool
    tet_sums_ok: bool
    edge_sums_ok: bool
    bad_angles: list[tuple[int, int]]
    bad_tets: list[int]
    bad_edge_classes: list[int]

    @property
    def passed(self) -> bool:
        return self.range_ok and self.tet_sums_ok and self.edge_sums_ok


def verify_angle_structure(
    tri: Triangulation, angle_map: dict[tuple[int, int], Fraction | float]
) -> AngleVerification:
    """Check positivity, per-tetrahedron sums pi and per-edge-class sums 2*pi.

    Exact rational arithmetic when all values are Fractions (in units of
    pi); with float entries (radians) a 1e-9 tolerance is used instead.
    """
    exact = all(isinstance(x, Fraction) for x in angle_map.values())
    pi_val = F(1) if exact else 3.141592653589793
    tol = 0 if exact else 1e-9

    def close(a, b):
        return a == b if exact else abs(a - b) <= tol

    bad_angles = []
    for t in range(tri.tet_count):
        for e in range(6):
            if (t, e) not in angle_map:
                raise ValueError(f"angle map missing entry for tetrahedron {t} edge {e}")
            x = angle_map[(t, e)]
            if not (0 < x < pi_val):
                bad_angles.append((t, e))

    bad_tets = []
    for t in range(tri.tet_count):
        pairs_ok = all(close(angle_map[(t, e)], angle_map[(t, 5 - e)]) for e in range(3))
        total = sum(angle_map[(t, e)] for e in (0, 1, 2))
        if not pairs_ok or not close(total, pi_val):
            bad_tets.append(t)

    bad_classes = []
    for cls in edge_classes(tri).classes:
        total = sum(angle_map[emb] for emb in cls.embeddings)
        if not close(total, 2 * pi_val):
            bad_classes.append(cls.index)

    return AngleVerification(
        range_ok=not bad_angles,
        tet_sums_ok=not bad_tets,
        edge_sums_ok=not bad_classes,
        bad_angles=bad_angles,
        bad_tets=bad_tets,
        bad_edge_classes=bad_classes,
    )


def _letter_span(dec_inner: Word, block: Block) -> tuple[int, int]:
    exps = dec_inner.exponents
    lo = sum(exps[: block.start])
    hi = sum(exps[: block.end])
    return lo, hi


def boundary_deficits(
    block: Block, assignment: AngleAssignment
) -> tuple[DeficitTriple, DeficitTriple]:
    """Angle deficits on the three boundary classes at each end of a block.

    Deficits are what the rest of the complex must contribute for the edge
    sums through the block boundary to reach 2*pi; they are computed from
    the chain structure (horizontal chains run between consecutive L
    letters, vertical chains between consecutive R letters, and the end
    folds absorb the final diagonals).  Ordered (horizontal, vertical,
    diagonal).
    """
    w = assignment.word
    letters = w.letters
    triples = assignment.layers
    inner = inner_word(w)
    lo, hi = _letter_span(inner, block)
    s, e = lo + 1, hi  # first and last layer of the block (0-based layers)
    n_layers = len(triples)
    two_pi = F(2)

    def chain_below(kind: str, start_layer: int) -> Fraction:
        target = "L" if kind == "h" else "R"
        c = start_layer
        while letters[c] != target:
            c -= 1
        total = sum(
            2 * (triples[j].h if kind == "h" else triples[j].v)
            for j in range(c, start_layer)
        )
        if c >= 1:
            total += triples[c - 1].d
        return total

    def chain_above(kind: str, end_layer: int) -> Fraction:
        target = "L" if kind == "h" else "R"
        c = end_layer + 1
        while c <= n_layers - 1 and letters[c] != target:
            c += 1
        stop = min(c, n_layers)
        total = sum(
            2 * (triples[j].h if kind == "h" else triples[j].v)
            for j in range(end_layer + 1, stop)
        )
        if c <= n_layers - 1:
            total += triples[c].d
        elif letters[-1] != target:
            # The end fold absorbs the top diagonal into the chain of the
            # other kind: an R end feeds horizontal chains, an L end
            # vertical ones.
            total += triples[n_layers - 1].d
        return total

    delta = DeficitTriple(
        horizontal=chain_below("h", s),
        vertical=chain_below("v", s),
        diagonal=two_pi - triples[s].d,
    )
    epsilon = DeficitTriple(
        horizontal=chain_above("h", e),
        vertical=chain_above("v", e),
        diagonal=two_pi - triples[e].d,
    )
    return delta, epsilon
