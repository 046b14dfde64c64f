"""Ideal triangulations: data model, layered builder and combinatorial checks.

Tetrahedron vertices are labelled 0..3.  Facet i is the face opposite
vertex i, and edges within a tetrahedron are numbered 0..5 for the vertex
pairs 01, 02, 03, 12, 13, 23 (so edges e and 5-e are opposite pairs).
A face gluing is stored as (adjacent tetrahedron, permutation) where the
permutation maps vertex labels of this tetrahedron to vertex labels of the
adjacent one; facet f is glued to facet perm[f].  Gluings are kept
involutive at all times.

The layered builder assembles the standard triangulation of a 2-bridge
link complement from its twist word: one layer of two ideal tetrahedra per
letter transition, with the outermost and innermost four faces folded up
in pairs.  In builder output every tetrahedron carries the same edge-role
pattern: edges 02/13 form the vertical pair, 01/23 the horizontal pair and
03/12 the diagonal pair (03 faces the previous layer, 12 the next).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .word import Word, is_hyperbolic

Perm = tuple[int, int, int, int]

IDENTITY: Perm = (0, 1, 2, 3)

EDGE_VERTS: tuple[tuple[int, int], ...] = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
EDGE_INDEX: dict[tuple[int, int], int] = {}
for _i, (_a, _b) in enumerate(EDGE_VERTS):
    EDGE_INDEX[(_a, _b)] = _i
    EDGE_INDEX[(_b, _a)] = _i

# Role of each in-tetrahedron edge in builder output.
ROLE_OF_EDGE = ("horizontal", "vertical", "diagonal", "diagonal", "vertical", "horizontal")
VERTICAL_EDGES = (1, 4)
HORIZONTAL_EDGES = (0, 5)
DIAGONAL_EDGES = (2, 3)
BOTTOM_DIAGONAL_EVEN, TOP_DIAGONAL_EVEN = 2, 3   # edges 03 / 12 of even tets
BOTTOM_DIAGONAL_ODD, TOP_DIAGONAL_ODD = 3, 2     # reversed for odd tets


def compose(p: Perm, q: Perm) -> Perm:
    """The permutation applying q first, then p."""
    return (p[q[0]], p[q[1]], p[q[2]], p[q[3]])


def invert(p: Perm) -> Perm:
    inv = [0, 0, 0, 0]
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


class VerificationError(RuntimeError):
    """An internal consistency check failed (signals a bug, not bad input)."""


class Triangulation:
    """A generalised triangulation given by face gluings between tetrahedra."""

    def __init__(self, tet_count: int, layer_of: tuple[int, ...] | None = None):
        if tet_count < 0:
            raise ValueError("tet_count must be non-negative")
        self.tet_count = tet_count
        self._glue: list[list[tuple[int, Perm] | None]] = [
            [None] * 4 for _ in range(tet_count)
        ]
        # For builder output: 0-based layer index per tetrahedron.
        self.layer_of = layer_of

    def glue(self, t: int, f: int, t2: int, perm: Perm) -> None:
        """Glue facet f of tetrahedron t to tetrahedron t2 via perm."""
        f2 = perm[f]
        if t == t2 and f == f2:
            raise ValueError("cannot glue a facet to itself")
        if self._glue[t][f] is not None or self._glue[t2][f2] is not None:
            raise ValueError(f"facet already glued: ({t},{f}) or ({t2},{f2})")
        self._glue[t][f] = (t2, perm)
        self._glue[t2][f2] = (t, invert(perm))

    def gluing(self, t: int, f: int) -> tuple[int, Perm] | None:
        return self._glue[t][f]

    def is_closed(self) -> bool:
        return all(g is not None for row in self._glue for g in row)

    def is_connected(self) -> bool:
        if self.tet_count == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            t = stack.pop()
            for f in range(4):
                g = self._glue[t][f]
                if g is not None and g[0] not in seen:
                    seen.add(g[0])
                    stack.append(g[0])
        return len(seen) == self.tet_count

    def copy(self) -> "Triangulation":
        out = Triangulation(self.tet_count, self.layer_of)
        out._glue = [list(row) for row in self._glue]
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Triangulation)
            and self.tet_count == other.tet_count
            and self._glue == other._glue
        )

    def to_json(self) -> str:
        gluings = [
            [None if g is None else [g[0], "".join(map(str, g[1]))] for g in row]
            for row in self._glue
        ]
        doc = {
            "schema_version": 1,
            "tet_count": self.tet_count,
            "gluings": gluings,
        }
        if self.layer_of is not None:
            doc["layer_of"] = list(self.layer_of)
        return json.dumps(doc)

    @classmethod
    def from_json(cls, text: str) -> "Triangulation":
        doc = json.loads(text)
        tri = cls(doc["tet_count"])
        seen = set()
        for t, row in enumerate(doc["gluings"]):
            for f, g in enumerate(row):
                if g is None or (t, f) in seen:
                    continue
                t2, digits = g
                perm = tuple(int(c) for c in digits)
                tri.glue(t, f, t2, perm)
                seen.add((t, f))
                seen.add((t2, perm[f]))
        if "layer_of" in doc:
            tri.layer_of = tuple(doc["layer_of"])
        return tri


# Junction and folding rules for the layered builder, fitted to the
# standard construction.  Within layer i the even tetrahedron E = 2i and
# odd tetrahedron O = 2i+1 share edges but no faces.  A letter L between
# two layers exchanges horizontal and diagonal edges, a letter R exchanges
# vertical and diagonal edges; the corresponding face gluings are below.

_SWAP01: Perm = (1, 0, 2, 3)
_SWAP02: Perm = (2, 1, 0, 3)
_SWAP13: Perm = (0, 3, 2, 1)
_SWAP23: Perm = (0, 1, 3, 2)


def build_sakuma_weeks(w: Word) -> Triangulation:
    """Build the layered triangulation of the 2-bridge link complement of w.

    The word must be normalised (start with R) and hyperbolic (at least two
    syllables).  The result has 2(ell-1) tetrahedra arranged in ell-1 layers
    of two; layer i holds tetrahedra 2i and 2i+1 (0-based).
    """
    if not is_hyperbolic(w):
        raise ValueError(f"{w} is not hyperbolic (needs at least two syllables)")
    if w.syllables[0][0] != "R":
        raise ValueError("word must be normalised to start with R")
    letters = w.letters
    n_layers = len(letters) - 1
    tri = Triangulation(2 * n_layers, layer_of=tuple(i // 2 for i in range(2 * n_layers)))

    # Outermost fold: fixed since the first letter is always R.
    tri.glue(0, 2, 1, _SWAP02)  # face 013 of E <-> face 123 of O
    tri.glue(0, 1, 1, _SWAP13)  # face 023 of E <-> face 012 of O

    # Layer-to-layer gluings, driven by the letters strictly between the ends.
    for i in range(n_layers - 1):
        e, o = 2 * i, 2 * i + 1
        e2, o2 = 2 * i + 2, 2 * i + 3
        if letters[i + 1] == "L":
            tri.glue(e, 3, e2, _SWAP13)   # 012 -> 032
            tri.glue(e, 0, o2, _SWAP13)   # 123 -> 321
            tri.glue(o, 2, e2, _SWAP13)   # 013 -> 031
            tri.glue(o, 1, o2, _SWAP13)   # 023 -> 021
        else:
            tri.glue(e, 3, o2, _SWAP01)   # 012 -> 102
            tri.glue(e, 0, e2, _SWAP01)   # 123 -> 023
            tri.glue(o, 2, e2, _SWAP01)   # 013 -> 103
            tri.glue(o, 1, o2, _SWAP01)   # 023 -> 123

    # Innermost fold: depends on the final letter.
    e, o = 2 * n_layers - 2, 2 * n_layers - 1
    if letters[-1] == "R":
        tri.glue(e, 3, o, _SWAP13)  # 012 <-> 023
        tri.glue(e, 0, o, _SWAP02)  # 123 <-> 013
    else:
        tri.glue(e, 3, o, _SWAP23)  # 012 <-> 013
        tri.glue(e, 0, o, _SWAP01)  # 123 <-> 023
    return tri


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


@dataclass(frozen=True)
class EdgeClass:
    """One edge of the quotient complex, as a set of in-tetrahedron edges."""

    index: int
    embeddings: tuple[tuple[int, int], ...]  # (tetrahedron, edge 0..5)
    roles: tuple[str, ...] | None = None     # per embedding, builder output only

    @property
    def degree(self) -> int:
        return len(self.embeddings)


@dataclass
class EdgeClassTable:
    classes: list[EdgeClass]
    class_of: dict[tuple[int, int], int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.classes)

    def degrees(self) -> list[int]:
        return [c.degree for c in self.classes]


def edge_classes(tri: Triangulation) -> EdgeClassTable:
    """Edge classes computed by closing edge identifications under gluings."""
    uf = _UnionFind(6 * tri.tet_count)
    for t in range(tri.tet_count):
        for f in range(4):
            g = tri.gluing(t, f)
            if g is None:
                continue
            t2, perm = g
            verts = [v for v in range(4) if v != f]
            for i in range(3):
                for j in range(i + 1, 3):
                    a, b = verts[i], verts[j]
                    e1 = EDGE_INDEX[(a, b)]
                    e2 = EDGE_INDEX[(perm[a], perm[b])]
                    uf.union(6 * t + e1, 6 * t2 + e2)
    groups: dict[int, list[int]] = {}
    for x in range(6 * tri.tet_count):
        groups.setdefault(uf.find(x), []).append(x)
    classes = []
    class_of = {}
    for idx, root in enumerate(sorted(groups)):
        members = tuple((x // 6, x % 6) for x in sorted(groups[root]))
        roles = None
        if tri.layer_of is not None:
            roles = tuple(ROLE_OF_EDGE[e] for _, e in members)
        classes.append(EdgeClass(idx, members, roles))
        for emb in members:
            class_of[emb] = idx
    return EdgeClassTable(classes, class_of)


@dataclass
class ValidationReport:
    """Checks that a closed ideal triangulation with torus cusps must pass."""

    involution_ok: bool
    all_faces_glued: bool
    edge_count_ok: bool
    vertex_links_ok: bool
    edge_class_count: int
    vertex_link_eulers: list[int]
    failures: list[str]

    @property
    def passed(self) -> bool:
        return not self.failures


def validate(tri: Triangulation) -> ValidationReport:
    failures = []

    involution_ok = True
    for t in range(tri.tet_count):
        for f in range(4):
            g = tri.gluing(t, f)
            if g is None:
                continue
            t2, perm = g
            back = tri.gluing(t2, perm[f])
            if back is None or back[0] != t or back[1] != invert(perm) or invert(perm)[perm[f]] != f:
                involution_ok = False
    if not involution_ok:
        failures.append("gluing map is not an involution")

    all_glued = tri.is_closed()
    if not all_glued:
        failures.append("not all faces are glued")

    table = edge_classes(tri)
    edge_count_ok = len(table) == tri.tet_count
    if not edge_count_ok:
        failures.append(
            f"edge class count {len(table)} differs from tetrahedron count {tri.tet_count}"
        )

    eulers: list[int] = []
    links_ok = True
    if all_glued and tri.tet_count:
        # The link of an ideal vertex is glued from one triangle per
        # (tetrahedron, vertex) incidence; its corners correspond to the
        # in-tetrahedron edges at that vertex.  Euler characteristic is
        # V - E + F = corners - F/2 since every link edge is shared by two.
        vert_uf = _UnionFind(4 * tri.tet_count)
        corner_ids: dict[tuple[int, int, int], int] = {}
        for t in range(tri.tet_count):
            for v in range(4):
                for e in range(6):
                    if v in EDGE_VERTS[e]:
                        corner_ids[(t, v, e)] = len(corner_ids)
        corner_uf = _UnionFind(len(corner_ids))
        for t in range(tri.tet_count):
            for f in range(4):
                g = tri.gluing(t, f)
                if g is None:
                    continue
                t2, perm = g
                for v in range(4):
                    if v == f:
                        continue
                    vert_uf.union(4 * t + v, 4 * t2 + perm[v])
                    for w_ in range(4):
                        if w_ == f or w_ == v:
                            continue
                        e1 = EDGE_INDEX[(v, w_)]
                        e2 = EDGE_INDEX[(perm[v], perm[w_])]
                        corner_uf.union(
                            corner_ids[(t, v, e1)], corner_ids[(t2, perm[v], e2)]
                        )
        vertex_groups: dict[int, list[int]] = {}
        for x in range(4 * tri.tet_count):
            vertex_groups.setdefault(vert_uf.find(x), []).append(x)
        for root in sorted(vertex_groups):
            members = vertex_groups[root]
            f_count = len(members)
            corner_roots = set()
            for x in members:
                t, v = x // 4, x % 4
                for e in range(6):
                    if v in EDGE_VERTS[e]:
                        corner_roots.add(corner_uf.find(corner_ids[(t, v, e)]))
            euler = len(corner_roots) - (3 * f_count) // 2 + f_count
            eulers.append(euler)
        links_ok = all(x == 0 for x in eulers)
        if not links_ok:
            failures.append(f"vertex links have Euler characteristics {eulers}, expected all 0")
    elif tri.tet_count:
        links_ok = False
        failures.append("vertex links not checked: triangulation has unglued faces")

    return ValidationReport(
        involution_ok=involution_ok,
        all_faces_glued=all_glued,
        edge_count_ok=edge_count_ok,
        vertex_links_ok=links_ok,
        edge_class_count=len(table),
        vertex_link_eulers=eulers,
        failures=failures,
    )


def degree_predicates(tri: Triangulation, w: Word) -> tuple[bool, bool]:
    """(has degree-3 edge, has degree-4 edge) for builder output of w.

    Cross-checked against the syllable criteria: a degree-3 edge exists iff
    a_1 > 1 or a_n > 1, and a degree-4 edge exists iff some interior
    exponent is >= 2, an end exponent is >= 3, or the word is the
    three-letter RLR.  (RLR is a boundary case: its vertical edge classes
    run fold-to-fold through both layers without meeting a diagonal, giving
    degree 2(ell-1) = 4 even though every exponent is 1.)  A mismatch with
    the criteria means the builder is broken and raises VerificationError.
    """
    degrees = edge_classes(tri).degrees()
    has3 = 3 in degrees
    has4 = 4 in degrees
    exps = w.exponents
    lemma3 = exps[0] > 1 or exps[-1] > 1
    lemma4 = (
        any(e >= 2 for e in exps[1:-1])
        or exps[0] >= 3
        or exps[-1] >= 3
        or w.letters == "RLR"
    )
    if (has3, has4) != (lemma3, lemma4):
        raise VerificationError(
            f"degree predicates {(has3, has4)} disagree with syllable criteria "
            f"{(lemma3, lemma4)} for {w}"
        )
    return has3, has4


_FACE_COLUMNS = ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))


def gluing_table(tri: Triangulation) -> str:
    """Regina-style gluing table with columns Face 012 / 013 / 023 / 123."""
    header = ["Tetrahedron"] + [f"Face {''.join(map(str, c))}" for c in _FACE_COLUMNS]
    rows = [header]
    for t in range(tri.tet_count):
        row = [str(t)]
        for verts in _FACE_COLUMNS:
            f = next(v for v in range(4) if v not in verts)
            g = tri.gluing(t, f)
            if g is None:
                row.append("boundary")
            else:
                t2, perm = g
                row.append(f"{t2} ({''.join(str(perm[v]) for v in verts)})")
        rows.append(row)
    widths = [max(len(r[c]) for r in rows) for c in range(5)]
    return "\n".join(
        "  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows
    )
