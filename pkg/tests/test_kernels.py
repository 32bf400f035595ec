"""The compiled and pure-Python kernels must agree on values and witnesses."""

import random

import pytest

from twsep import kernels
from twsep.generators import random_gnp

BACKENDS = kernels.backends()
FUNCS = ["tw_order", "cutwidth_order", "vsn_order", "sumcut_order", "cutsize_search", "bsep_search", "sn_search"]

needs_both = pytest.mark.skipif("cython" not in BACKENDS, reason="compiled extension not built")


def _graphs(count, max_n, seed):
    rng = random.Random(seed)
    for i in range(count):
        yield random_gnp(rng.randint(1, max_n), rng.uniform(0.1, 0.8), seed * 1000 + i)


def test_backend_exposed():
    assert kernels.BACKEND in BACKENDS


@needs_both
@pytest.mark.parametrize("name", FUNCS)
def test_backends_agree(name):
    py, cy = getattr(BACKENDS["python"], name), getattr(BACKENDS["cython"], name)
    max_n = 9 if name == "sn_search" else 11
    for g in _graphs(60, max_n, seed=FUNCS.index(name)):
        adj = list(g.adj)
        assert py(adj) == cy(adj), (name, g.n, sorted(g.edges))


@pytest.mark.parametrize("backend", sorted(BACKENDS))
def test_empty_graph(backend):
    mod = BACKENDS[backend]
    assert mod.tw_order([])[0] == -1
    assert mod.cutwidth_order([])[0] == 0


@pytest.mark.parametrize("backend", sorted(BACKENDS))
def test_tw_order_is_permutation(backend):
    g = random_gnp(10, 0.4, seed=2)
    width, order = BACKENDS[backend].tw_order(list(g.adj))
    assert sorted(order) == list(range(10))


def test_pure_python_switch():
    import os
    import subprocess
    import sys

    code = "from twsep import kernels, treewidth_exact; from twsep.generators import grid_graph; " \
           "print(kernels.BACKEND, treewidth_exact(grid_graph(3, 3))[0])"
    env = dict(os.environ, TWSEP_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["python", "3"]
