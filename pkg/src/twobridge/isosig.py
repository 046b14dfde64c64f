"""Isomorphism signatures for generalised triangulations.

Implements the signature scheme used by Regina (Burton's canonical
encoding for generalised triangulations), so that signatures computed here
agree character-for-character with published ones.  A signature encodes,
for the lexicographically smallest candidate labelling over all choices of
starting tetrahedron and starting vertex relabelling:

* the number of tetrahedra,
* a facet-action sequence (0 = boundary, 1 = glued to a new tetrahedron,
  2 = glued to an already-seen tetrahedron), packed three 2-bit values per
  character,
* the destination tetrahedron for each action-2 facet,
* the gluing permutation for each action-2 facet, encoded as an index into
  the lexicographic ordering of the 24 vertex permutations.

Equality of signatures is equivalent to combinatorial isomorphism.
"""

from __future__ import annotations

from itertools import permutations

from .triangulation import Perm, Triangulation, compose, invert

ALPHABET = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789+-"
_CHAR_INDEX = {c: i for i, c in enumerate(ALPHABET)}


# Gluing permutations are encoded by their index in the lexicographic
# ordering of all 24 vertex permutations.
ORDERED_S4: tuple[Perm, ...] = tuple(sorted(permutations(range(4))))
ORDERED_S4_INDEX: dict[Perm, int] = {p: i for i, p in enumerate(ORDERED_S4)}

_ALL_PERMS: tuple[Perm, ...] = ORDERED_S4


def _candidate(tri: Triangulation, start: int, start_perm: Perm) -> str:
    """Signature string for one choice of starting tetrahedron/labelling."""
    n = tri.tet_count
    image = [-1] * n
    vertex_map: list[Perm | None] = [None] * n
    image[start] = 0
    vertex_map[start] = start_perm
    preimage = [start]
    facet_done = [[False] * 4 for _ in range(n)]

    type_seq: list[int] = []
    dest_seq: list[int] = []
    perm_seq: list[int] = []

    lab = 0
    while lab < len(preimage):
        t = preimage[lab]
        vm = vertex_map[t]
        for f_new in range(4):
            f_old = vm.index(f_new)
            if facet_done[t][f_old]:
                continue
            g = tri.gluing(t, f_old)
            facet_done[t][f_old] = True
            if g is None:
                type_seq.append(0)
                continue
            adj, perm = g
            facet_done[adj][perm[f_old]] = True
            if image[adj] == -1:
                type_seq.append(1)
                image[adj] = len(preimage)
                # Choose the new labelling so the gluing becomes the identity.
                vertex_map[adj] = compose(vm, invert(perm))
                preimage.append(adj)
            else:
                type_seq.append(2)
                dest_seq.append(image[adj])
                perm_seq.append(ORDERED_S4_INDEX[compose(vertex_map[adj], compose(perm, invert(vm)))])
        lab += 1

    if len(preimage) != n:
        raise ValueError("triangulation is disconnected")

    chars = [ALPHABET[n]]
    for i in range(0, len(type_seq), 3):
        block = type_seq[i : i + 3]
        value = sum(v << (2 * k) for k, v in enumerate(block))
        chars.append(ALPHABET[value])
    for d in dest_seq:
        chars.append(ALPHABET[d])
    for p in perm_seq:
        chars.append(ALPHABET[p])
    return "".join(chars)


def encode_isosig(tri: Triangulation) -> str:
    """Canonical signature: lexicographic minimum over all starts."""
    if tri.tet_count == 0:
        raise ValueError("cannot encode an empty triangulation")
    if tri.tet_count >= 63:
        raise ValueError("signatures for >= 63 tetrahedra are not supported")
    if not tri.is_connected():
        raise ValueError("triangulation is disconnected")
    best: str | None = None
    for start in range(tri.tet_count):
        for perm in _ALL_PERMS:
            cand = _candidate(tri, start, perm)
            if best is None or cand < best:
                best = cand
    return best


def decode_isosig(sig: str) -> Triangulation:
    """Reconstruct a triangulation from a signature string.

    Raises ValueError for characters outside the signature alphabet, for a
    truncated string, or for structurally inconsistent data.
    """
    if not sig:
        raise ValueError("empty signature")
    for c in sig:
        if c not in _CHAR_INDEX:
            raise ValueError(f"illegal character {c!r} in signature")
    n = _CHAR_INDEX[sig[0]]
    if n == 0 or n >= 63:
        raise ValueError(f"unsupported tetrahedron count {n}")
    pos = 1

    # Facet actions: each accounts for one facet (boundary) or two (gluing);
    # the sequence ends once all 4n facet slots are accounted for.
    type_seq: list[int] = []
    slots = 0
    buffered: list[int] = []
    while slots < 4 * n:
        if not buffered:
            if pos >= len(sig):
                raise ValueError("signature truncated in facet-action sequence")
            value = _CHAR_INDEX[sig[pos]]
            pos += 1
            buffered = [(value >> 0) & 3, (value >> 2) & 3, (value >> 4) & 3]
        action = buffered.pop(0)
        if action == 3:
            raise ValueError("invalid facet action 3")
        type_seq.append(action)
        slots += 1 if action == 0 else 2
    if slots != 4 * n:
        raise ValueError("facet actions overrun the facet count")

    n_joins = sum(1 for a in type_seq if a == 2)
    if pos + 2 * n_joins > len(sig):
        raise ValueError("signature truncated in destination or permutation sequence")
    dest_seq = [_CHAR_INDEX[c] for c in sig[pos : pos + n_joins]]
    pos += n_joins
    perm_seq = [_CHAR_INDEX[c] for c in sig[pos : pos + n_joins]]
    pos += n_joins
    if pos != len(sig):
        raise ValueError("trailing characters after signature data")
    if any(p >= 24 for p in perm_seq):
        raise ValueError("permutation index out of range")

    tri = Triangulation(n)
    created = 1
    type_iter = iter(type_seq)
    dest_iter = iter(dest_seq)
    perm_iter = iter(perm_seq)
    for lab in range(n):
        if lab >= created:
            raise ValueError("facet actions never reach all tetrahedra")
        for f in range(4):
            if tri.gluing(lab, f) is not None:
                continue
            try:
                action = next(type_iter)
            except StopIteration:
                raise ValueError("facet actions exhausted early") from None
            if action == 0:
                continue
            if action == 1:
                if created >= n:
                    raise ValueError("more new-tetrahedron actions than tetrahedra")
                tri.glue(lab, f, created, (0, 1, 2, 3))
                created += 1
            else:
                dest = next(dest_iter)
                perm = ORDERED_S4[next(perm_iter)]
                if dest >= created:
                    raise ValueError("destination tetrahedron not yet labelled")
                if tri.gluing(dest, perm[f]) is not None or (dest, perm[f]) == (lab, f):
                    raise ValueError("inconsistent gluing in signature")
                tri.glue(lab, f, dest, perm)
    return tri


def are_isomorphic(a: Triangulation, b: Triangulation) -> bool:
    """True iff the two triangulations are combinatorially isomorphic."""
    if a.tet_count != b.tet_count:
        return False
    return encode_isosig(a) == encode_isosig(b)
