import os
import subprocess
import sys

import pytest

from mvcr import kernel
from mvcr.mvcrystal import context, crystal
from mvcr.rootdata import build_cartan

needs_ext = pytest.mark.skipif(kernel._kernel_c is None, reason="compiled kernel not built")


@needs_ext
@pytest.mark.parametrize("name,lam", [("A2", (2, 1)), ("A3", (1, 1, 0)), ("D4", (0, 1, 0, 0))])
def test_backends_agree(name, lam):
    cd = build_cartan(name)
    ctx = context(cd)
    plan = ctx.plan(ctx.base_word)
    for P in crystal(cd, lam):
        n = P.lusztig().n
        assert kernel.rebuild(plan, n, lam, "cython") == kernel.rebuild(plan, n, lam, "python")
        assert kernel.transport(plan, n, "cython") == kernel.transport(plan, n, "python")


def test_python_rebuild_lowest_vertex():
    cd = build_cartan("A2")
    ctx = context(cd)
    plan = ctx.plan(ctx.base_word)
    mu, bad = kernel.rebuild(plan, (0, 1, 0), (1, 1), "python")
    assert bad == -1 and mu[0] == (0, 0)


def test_env_var_selects_fallback():
    env = dict(os.environ, MVCR_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import mvcr; print(mvcr.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_fallback_gives_same_crystal():
    code = ("from mvcr.rootdata import build_cartan; from mvcr.mvcrystal import crystal;"
            "print([P.mu for P in crystal(build_cartan('A3'), (1, 0, 1))])")
    env = dict(os.environ, MVCR_PURE_PYTHON="1")
    slow = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                          text=True, check=True).stdout
    fast = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True,
                          check=True).stdout
    assert slow == fast
