from __future__ import annotations

import math
import re
import xml.etree.ElementTree as ET

import pytest

from orblab.geometry import TWO_PI, LeaderStyle, PolarPoint, Port
from orblab.instance import Feature, GeneratorConfig, Instance, generate
from orblab.labeling import Labeling, place_from_order
from orblab.render import RenderStyle, render_svg, write_svg
from orblab.solver_nonuniform import HeuristicConfig, solve_heuristic

SVG = "{http://www.w3.org/2000/svg}"
R = 200.0


def solved(n=8, seed=3, style=LeaderStyle.OR):
    inst = generate(GeneratorConfig(n=n, seed=seed))
    lab, _ = solve_heuristic(inst, HeuristicConfig(style=style))
    return inst, lab


def to_px(r, theta):
    s = 220.0 / R
    return 240 + s * r * math.cos(theta), 240 - s * r * math.sin(theta)


def leader_paths(svg):
    root = ET.fromstring(svg)
    return [p for p in root.iter(SVG + "path") if p.get("class") == "leader"]


def numbers(d):
    return [float(x) for x in re.findall(r"-?\d+\.\d+|-?\d+", d)]


def test_style_invariant():
    st = RenderStyle()
    assert st.total_diameter_px == st.boundary_diameter_px + 2 * st.label_band_px == 480


def test_root_size_and_well_formed():
    inst, lab = solved()
    root = ET.fromstring(render_svg(inst, lab))
    assert root.get("width") == "480" and root.get("height") == "480"


def test_deterministic(tmp_path):
    inst, lab = solved()
    assert render_svg(inst, lab) == render_svg(inst, lab)
    write_svg(inst, lab, tmp_path / "a.svg")
    write_svg(inst, lab, tmp_path / "b.svg")
    assert (tmp_path / "a.svg").read_bytes() == (tmp_path / "b.svg").read_bytes()


def test_single_or_leader_structure():
    inst = Instance(R, (Feature(PolarPoint(100.0, 1.0), "x", TWO_PI * R),))
    lab = place_from_order(inst, (0,), LeaderStyle.OR)
    (p,) = leader_paths(render_svg(inst, lab))
    cmds = re.findall(r"[A-Za-z]", p.get("d"))
    assert cmds.count("A") == 1 and cmds.count("L") == 1


@pytest.mark.parametrize("style", list(LeaderStyle))
def test_leader_endpoints_match_pixels(style):
    inst, lab = solved(n=10, seed=5, style=style)
    for p in leader_paths(render_svg(inst, lab)):
        i = int(p.get("data-feature"))
        f, beta = inst.features[i].position, lab.ports[i].beta
        nums = numbers(p.get("d"))
        start, end = nums[:2], nums[-2:]
        assert math.dist(start, to_px(f.r, f.theta)) < 0.01
        assert math.dist(end, to_px(R, beta)) < 0.01
        if style is LeaderStyle.OR:
            corner = nums[-4:-2] if len(nums) >= 4 else None
            assert math.dist(corner, to_px(f.r, beta)) < 0.01


def test_sl_leaders_are_straight():
    inst, lab = solved(style=LeaderStyle.SL)
    for p in leader_paths(render_svg(inst, lab)):
        assert re.findall(r"[A-Za-z]", p.get("d")) == ["M", "L"]


def test_text_follows_label_arc():
    inst, lab = solved()
    root = ET.fromstring(render_svg(inst, lab))
    tps = list(root.iter(SVG + "textPath"))
    assert len(tps) == inst.n
    assert all(tp.get("href").startswith("#tp") for tp in tps)


def test_highlight():
    inst, lab = solved()
    svg = render_svg(inst, lab, RenderStyle(highlight_target=2))
    root = ET.fromstring(svg)
    reds = [c for c in root.iter(SVG + "circle") if c.get("fill") == "#ff0000"]
    assert [c.get("data-feature") for c in reds] == ["2"]
    svg = render_svg(inst, lab, RenderStyle(highlight_target=2, highlight_part="label"))
    assert svg.count('fill="#ff0000"') == 1
    with pytest.raises(ValueError):
        render_svg(inst, lab, RenderStyle(highlight_target=99))


def test_label_text_is_escaped():
    inst = Instance(R, (Feature(PolarPoint(10.0, 1.0), "a<b&c", TWO_PI * R),))
    svg = render_svg(inst, place_from_order(inst, (0,)))
    assert ET.fromstring(svg) is not None


def test_inconsistent_labeling_rejected():
    inst, lab = solved()
    bad = Labeling(lab.style, (Port(0.123),) + lab.ports[1:], lab.label_arcs, lab.order)
    with pytest.raises(ValueError):
        render_svg(inst, bad)
