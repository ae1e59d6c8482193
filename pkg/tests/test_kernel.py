import random
import subprocess
import sys

import pytest

from artifact import _closure_py, kernel

try:
    from artifact import _closure as compiled
except ImportError:
    compiled = None


def test_chain():
    # 0 -> 1 -> 2, and 3 needs both 2 and 4
    heads, bodies = [1, 2, 3], [1 << 0, 1 << 1, (1 << 2) | (1 << 4)]
    assert _closure_py.closure(heads, bodies, 1) == 0b111
    assert _closure_py.closure(heads, bodies, 0b10001) == 0b11111


def test_wide_masks():
    heads, bodies = [130, 200], [1 << 5, 1 << 130]
    assert _closure_py.closure(heads, bodies, 1 << 5, 256) == (1 << 5) | (1 << 130) | (1 << 200)


def test_closure_many_matches_single_calls():
    heads, bodies = [1, 2, 3], [1, 2, 4]
    got = _closure_py.closure_many(heads, bodies, [1, 1], [[0, 1], [1, 2]])
    assert got == [0b111, 0b1]


@pytest.mark.skipif(compiled is None, reason="compiled kernel not built")
def test_backends_agree_on_random_rule_sets():
    rng = random.Random(3)
    for _ in range(300):
        width = rng.choice([8, 64, 65, 150])
        n = rng.randint(0, 30)
        heads = [rng.randrange(width) for _ in range(n)]
        bodies = [sum(1 << rng.randrange(width) for _ in range(rng.randint(0, 3))) for _ in range(n)]
        seed = sum(1 << rng.randrange(width) for _ in range(2))
        assert compiled.closure(heads, bodies, seed, width) == _closure_py.closure(heads, bodies, seed, width)
        sel = [sorted(rng.sample(range(n), rng.randint(0, n))) for _ in range(3)]
        assert (compiled.closure_many(heads, bodies, [seed] * 3, sel, width)
                == _closure_py.closure_many(heads, bodies, [seed] * 3, sel, width))


def test_backend_choice():
    assert kernel.BACKEND == ("python" if compiled is None else "cython")
    out = subprocess.run([sys.executable, "-c", "from artifact.kernel import BACKEND; print(BACKEND)"],
                         env={"ARTIFACT_PURE_PYTHON": "1", "PATH": ""}, capture_output=True, text=True)
    assert out.stdout.strip() == "python"
