import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twobridge.isosig import are_isomorphic, decode_isosig, encode_isosig
from twobridge.triangulation import Triangulation, build_sakuma_weeks, compose, invert
from twobridge.word import parse_word

GOLDEN = [
    "cPcbbbiht",
    "fLLQcbcdeeetsfxxh",
    "iLLMLQcbcdefhghhmvftgafqa",
    "hLLMPkbcdfggfgmvfafwkf",
]


@pytest.mark.parametrize("sig", GOLDEN)
def test_decode_encode_roundtrip(sig):
    assert encode_isosig(decode_isosig(sig)) == sig


def test_figure_eight_matches_census_signature():
    fig8 = build_sakuma_weeks(parse_word("RL"))
    assert encode_isosig(fig8) == "cPcbbbiht"
    assert are_isomorphic(fig8, decode_isosig("cPcbbbiht"))


def relabel(tri, rng):
    """A random combinatorially-equal copy: permute tetrahedra and vertices."""
    sigma = list(range(tri.tet_count))
    rng.shuffle(sigma)
    rhos = [tuple(rng.sample(range(4), 4)) for _ in range(tri.tet_count)]
    out = Triangulation(tri.tet_count)
    for t in range(tri.tet_count):
        for f in range(4):
            g = tri.gluing(t, f)
            if g is None:
                continue
            t2, perm = g
            nt, nf = sigma[t], rhos[t][f]
            if out.gluing(nt, nf) is None:
                out.glue(nt, nf, sigma[t2], compose(rhos[t2], compose(perm, invert(rhos[t]))))
    return out


@pytest.mark.parametrize("word", ["RL", "RLR", "R^2LR", "RL^3R", "RLRLR"])
def test_signature_invariant_under_relabelling(word):
    tri = build_sakuma_weeks(parse_word(word))
    sig = encode_isosig(tri)
    rng = random.Random(20240 + len(word))
    for _ in range(5):
        assert encode_isosig(relabel(tri, rng)) == sig


@given(st.integers(min_value=0, max_value=2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_relabelling_isomorphic_property(seed):
    tri = build_sakuma_weeks(parse_word("R^2LR"))
    assert are_isomorphic(tri, relabel(tri, random.Random(seed)))


def test_are_isomorphic_different_sizes():
    a = build_sakuma_weeks(parse_word("R^2LR"))
    b = build_sakuma_weeks(parse_word("RL^3R"))
    assert not are_isomorphic(a, b)


def test_signature_length_linear():
    lengths = {}
    for n in range(1, 8):
        w = parse_word("R" + "LR" * n)
        tri = build_sakuma_weeks(w)
        lengths[tri.tet_count] = len(encode_isosig(tri))
    # 3 chars per extra tetrahedron for closed complexes, plus packing slack
    for tets, length in lengths.items():
        assert length <= 3 * tets + 4


@pytest.mark.parametrize(
    "bad",
    [
        "",
        "!!",
        "c",               # truncated action sequence
        "cPcbbbih",        # truncated permutation sequence
        "cPcbbbihtz",      # trailing characters
        "aPcbbbiht",       # zero tetrahedra
    ],
)
def test_decode_errors(bad):
    with pytest.raises(ValueError):
        decode_isosig(bad)


def test_encode_rejects_disconnected():
    tri = Triangulation(4)
    # two separate copies of the figure-eight complex
    fig8 = build_sakuma_weeks(parse_word("RL"))
    for base in (0, 2):
        for t in range(2):
            for f in range(4):
                t2, perm = fig8.gluing(t, f)
                if tri.gluing(base + t, f) is None:
                    tri.glue(base + t, f, base + t2, perm)
    with pytest.raises(ValueError):
        encode_isosig(tri)
