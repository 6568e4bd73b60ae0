import math

import numpy as np
import pytest

from csflow.geometry import polygon_length, signed_area
from csflow.shapes import KINDS, ShapeSpec, generate, mode_projection, verify_symmetry


def test_every_kind_generates_with_defaults():
    for kind in KINDS:
        P = generate(ShapeSpec(kind, samples=64))
        assert P.dim == 2 and len(P) >= 3


def test_spec_validation():
    with pytest.raises(ValueError):
        ShapeSpec("trefoil")
    with pytest.raises(ValueError):
        ShapeSpec("circle", {"radius": 1, "colour": 3})
    with pytest.raises(ValueError):
        ShapeSpec("circle", samples=7)
    with pytest.raises(ValueError):
        generate(ShapeSpec("circle", {"radius": -1}))
    with pytest.raises(ValueError):
        generate(ShapeSpec("nfold_circle", {"n": 1.5}))
    with pytest.raises(ValueError):
        generate(ShapeSpec("dcs_polygon", {"x1": -1.0}))


def test_circle_oracle():
    P = generate(ShapeSpec("circle", {"radius": 1}, 256))
    np.testing.assert_allclose(np.linalg.norm(P.points, axis=1), 1.0, atol=1e-12)
    # relative: the inscribed 256-gon is short by pi^3 / (3 N^2) ~ 1.6e-4 in absolute terms
    assert abs(polygon_length(P) - 2 * math.pi) / (2 * math.pi) < 1e-4


def test_nfold_circle_length():
    P = generate(ShapeSpec("nfold_circle", {"radius": 1, "n": 2}, 512))
    assert polygon_length(P) == pytest.approx(4 * math.pi, rel=1e-4)


def test_dcs_polygon_out_and_back():
    P = generate(ShapeSpec("dcs_polygon", {"x0": -1, "y0": 0, "x1": 1, "y1": 0}, 64)).points
    assert np.all(P[:, 1] == 0) and np.all(np.abs(P[:, 0]) <= 1)
    np.testing.assert_array_equal(P[0], [-1, 0])
    np.testing.assert_array_equal(P[32], [1, 0])
    assert np.all(np.diff(P[:33, 0]) > 0) and np.all(np.diff(P[32:, 0]) < 0)
    assert signed_area(P) == 0.0


def test_dcs_smooth_length():
    P = generate(ShapeSpec("dcs_smooth", {"length": 2.0}, 512))
    assert polygon_length(P) == pytest.approx(2.0, rel=1e-12)
    assert np.all(P.points[:, 1] == 0)


def test_square_is_uniform_on_the_boundary():
    P = generate(ShapeSpec("square", {"side": 2.0}, 64))
    assert polygon_length(P) == pytest.approx(8.0)
    np.testing.assert_allclose(np.linalg.norm(np.diff(P.points, axis=0), axis=1), 0.125)


def test_figure_eight_starts_at_right_extreme():
    P = generate(ShapeSpec("infinity_xy", {"scale": 2.0}, 512)).points
    np.testing.assert_allclose(P[0], [2, 0], atol=1e-15)
    assert P[:, 0].max() == P[0, 0]
    # the crossing at the origin is visited at r = 1/4 and 3/4
    np.testing.assert_allclose(P[[128, 384]], 0, atol=1e-15)


@pytest.mark.parametrize("sym", ["x_axis", "y_axis", "mirror_y"])
def test_symmetric_eight_symmetries(sym):
    assert verify_symmetry(generate(ShapeSpec("infinity_xy", {}, 512)), sym) < 1e-14


def test_perturbed_eight_breaks_x_symmetry():
    spec = ShapeSpec("infinity_perturbed", {}, 512)
    amp = spec.resolved()["amplitude"]
    assert verify_symmetry(generate(spec), "x_axis") >= amp / 2
    assert abs(signed_area(generate(spec))) > 1e-3


def test_central_and_antipodal():
    circle = generate(ShapeSpec("circle", {}, 128))
    assert verify_symmetry(circle, "antipodal") < 1e-14
    # the reflection form about s = 1/2 fixes a point that is not the centre
    assert verify_symmetry(circle, "central") > 1.0


def test_partial_symmetry_eights():
    y = generate(ShapeSpec("infinity_y", {}, 512))
    c = generate(ShapeSpec("infinity_central", {}, 512))
    assert verify_symmetry(y, "mirror_y") < 1e-14
    assert verify_symmetry(y, "antipodal") > 0.1
    assert verify_symmetry(c, "central") < 1e-14
    assert verify_symmetry(c, "mirror_y") > 0.1
    for P in (y, c):
        assert abs(signed_area(P)) < 1e-14
        assert verify_symmetry(P, "x_axis") > 0.1


def test_two_circle_infinity():
    P = generate(ShapeSpec("two_circle_infinity", {"r_small": 0.25, "r_big": 0.75}, 512)).points
    np.testing.assert_allclose(P[0], 0, atol=1e-15)
    assert P[:, 0].min() == pytest.approx(-0.5, abs=1e-4)
    assert P[:, 0].max() == pytest.approx(1.5, abs=1e-4)
    # loops of opposite orientation: area of the big loop minus the small one
    assert signed_area(P) == pytest.approx(math.pi * (0.25**2 - 0.75**2), rel=1e-3)


def test_convoluted_formula():
    P = generate(ShapeSpec("convoluted", {}, 1024)).points
    r = np.arange(1024) / 1024
    np.testing.assert_allclose(P, np.column_stack([3 * np.cos(6 * np.pi * r), np.sin(16 * np.pi * r)]))


def test_symmetry_argument_checks():
    P = generate(ShapeSpec("circle", {}, 60))
    with pytest.raises(ValueError):
        verify_symmetry(P, "x_axis")
    with pytest.raises(ValueError):
        verify_symmetry(P, "diagonal")


def test_mode_projection():
    P = generate(ShapeSpec("ellipse", {"a": 3, "b": 1}, 64))
    assert mode_projection(P, 1, (1, "cos")) == pytest.approx(1.5)
    assert mode_projection(P, 2, (1, "sin")) == pytest.approx(0.5)
    assert abs(mode_projection(P, 1, (1, "sin"))) < 1e-15
    with pytest.raises(ValueError):
        mode_projection(P, 3, (1, "cos"))
    with pytest.raises(KeyError):
        mode_projection(P, 1, (1, "tan"))


def test_eight_mode_signature():
    P = generate(ShapeSpec("infinity_xy", {}, 512))
    assert mode_projection(P, 1, (1, "cos")) == pytest.approx(0.5)
    assert mode_projection(P, 2, (2, "sin")) == pytest.approx(0.5)
    for comp, mode in [(1, (1, "sin")), (2, (1, "cos")), (2, (1, "sin"))]:
        assert abs(mode_projection(P, comp, mode)) < 1e-15
