import math
import pathlib

import pytest

from tropilinear import (
    NEG_INF,
    POS_INF,
    RenderSpec,
    project_exponential,
    project_orthogonal,
    reach_k,
    render,
)
from tropilinear.viz import TRIANGLE

from conftest import rng_for

E = NEG_INF
GOLDEN = pathlib.Path(__file__).parent / "golden"


def close(p, q, tol=1e-9):
    return abs(p[0] - q[0]) <= tol and abs(p[1] - q[1]) <= tol


def test_exponential_examples():
    assert close(project_exponential((0, E, E)), TRIANGLE[0])
    centroid = (sum(v[0] for v in TRIANGLE) / 3, sum(v[1] for v in TRIANGLE) / 3)
    for t in (-3, 0, 11):
        assert close(project_exponential((t, t, t)), centroid)
    mid = ((TRIANGLE[0][0] + TRIANGLE[1][0]) / 2,
           (TRIANGLE[0][1] + TRIANGLE[1][1]) / 2)
    assert close(project_exponential((0, 0, E)), mid)


def test_exponential_errors():
    with pytest.raises(ValueError):
        project_exponential((E, E, E))
    with pytest.raises(ValueError):
        project_exponential((0, POS_INF, 1))
    with pytest.raises(ValueError):
        project_exponential((0, 0, 0), beta=0)


def test_orthogonal_examples():
    assert close(project_orthogonal((1, 1, 1)), (0.0, 0.0))
    x = (4, -1, 2)
    shifted = tuple(e + 7 for e in x)
    assert close(project_orthogonal(x), project_orthogonal(shifted))
    with pytest.raises(ValueError):
        project_orthogonal((0, E, 0))


def test_projective_invariance_random():
    rng = rng_for("proj-invariance")
    for _ in range(10_000):
        x = tuple(rng.randint(-40, 40) for _ in range(3))
        lam = rng.randint(-25, 25)
        shifted = tuple(e + lam for e in x)
        pe, pe2 = project_exponential(x), project_exponential(shifted)
        po, po2 = project_orthogonal(x), project_orthogonal(shifted)
        assert close(pe, pe2)
        assert close(po, po2)


def test_periodic_columns_are_collinear(exab):
    """Orthogonal images of the periodic reachability columns sit on one
    line; the two transient columns are not finite and are skipped."""
    cols = reach_k(exab, 12).columns()
    finite = [c for c in cols if all(isinstance(e, int) for e in c)]
    pts = [project_orthogonal(c) for c in finite]
    (x0, y0), (x1, y1) = pts[0], pts[1]
    dx, dy = x1 - x0, y1 - y0
    for (x, y) in pts[2:]:
        cross = (x - x0) * dy - (y - y0) * dx
        assert abs(cross) < 1e-9


def test_render_empty_inputs():
    svg = render([], [], RenderSpec(mode="exponential"))
    assert svg.startswith("<svg") and "<polygon" in svg and "<circle" not in svg
    svg2 = render([], [], RenderSpec(mode="orthogonal"))
    assert "<line" in svg2


def test_render_skips_nonfinite_in_orthogonal(exab):
    cols = reach_k(exab, 4).columns()
    svg = render(cols, [(0, 2), (2, 3)], RenderSpec(mode="orthogonal"))
    assert "skipped 2 point(s)" in svg
    assert svg.count("<circle") == 2
    # the 0-2 segment references a skipped point and is dropped
    assert svg.count("<polyline") == 1


def test_render_deterministic_and_golden(exab):
    cols = reach_k(exab, 6).columns()
    pairs = [(i, j) for i in range(6) for j in range(i + 1, 6)]
    spec = RenderSpec(mode="exponential", beta=1.0)
    svg = render(cols, pairs, spec)
    assert svg == render(cols, pairs, spec)
    assert svg.count("<circle") == 6
    golden = (GOLDEN / "reach6_exponential.svg").read_text()
    assert svg == golden


def test_render_golden_orthogonal(exab):
    cols = reach_k(exab, 12).columns()
    svg = render(cols, [], RenderSpec(mode="orthogonal"))
    golden = (GOLDEN / "reach12_orthogonal.svg").read_text()
    assert svg == golden


def test_fixed_decimal_precision(exab):
    svg = render(reach_k(exab, 6).columns(), [], RenderSpec())
    for token in ("cx=", "cy="):
        for chunk in svg.split(token)[1:]:
            value = chunk.split('"')[1]
            whole, frac = value.split(".")
            assert len(frac) == 6
