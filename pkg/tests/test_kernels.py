from __future__ import annotations

import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_tree
from forts import kernels
from forts.fort_enum import enumerate_minimal_forts
from forts.graph import VertexSet
from forts.treegen import path, special_tree, star, tree_from_levels


def test_default_backend_is_compiled_when_built():
    assert kernels.BACKEND in ("cython", "python")
    assert "python" in kernels.available_backends()


@pytest.mark.parametrize("n", [1, 2, 3, 7, 12])
def test_generation_identical_across_backends(n):
    streams = [list(b.free_tree_levels(n)) for b in kernels.available_backends().values()]
    assert all(s == streams[0] for s in streams)


def test_chunks_cover_stream(backend):
    whole = list(backend.free_tree_levels(11))
    chunks = list(backend.free_tree_chunks(11, 50))
    assert all(c.dtype == np.uint8 for c in chunks)
    assert np.concatenate(chunks).tolist() == whole
    assert max(len(c) for c in chunks) == 50


def test_levels_to_masks(backend):
    levels = [0, 1, 2, 1, 1]
    masks = backend.levels_to_masks(levels)
    assert [int(m) for m in masks] == list(tree_from_levels(levels).masks)


def test_count_examples(backend):
    assert backend.count_tree_forts(list(path(3).masks)) == 1
    assert backend.count_tree_forts(list(star(18).masks)) == 136
    assert backend.count_tree_forts(list(special_tree(20, 4, 4, 1).masks)) == 213
    assert backend.count_tree_forts([]) == 0
    assert backend.count_tree_forts([0]) == 1
    assert backend.count_tree_forts([0], 1) == 0


def test_count_levels_batch(backend):
    arr = np.concatenate(list(backend.free_tree_chunks(9)))
    counts = backend.count_forts_levels(arr)
    expect = [len(enumerate_minimal_forts(tree_from_levels(r))) for r in arr.tolist()]
    assert counts.tolist() == expect


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 64), st.randoms(use_true_random=False), st.integers(0, (1 << 64) - 1))
def test_backends_agree(n, r, forb):
    t = random_tree(n, r)
    forb &= (1 << n) - 1
    forb &= r.getrandbits(64)
    got = {name: b.count_tree_forts(list(t.masks), forb) for name, b in kernels.available_backends().items()}
    assert len(set(got.values())) == 1
    if n <= 18:
        assert got["python"] == len(enumerate_minimal_forts(t, VertexSet(forb)))


def test_pure_python_switch():
    env = dict(os.environ, FORTS_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from forts import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
