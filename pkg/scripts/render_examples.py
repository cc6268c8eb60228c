"""Write SVG drawings of each builder on small instances into a directory.

    python3 scripts/render_examples.py out/
"""
import sys
from pathlib import Path

from hopspan.gen import gen_circle8, gen_circle_uniform, gen_cluster, gen_uniform
from hopspan.geometry import udg_build
from hopspan.spanners import BUILDERS
from hopspan.svg import render_svg
from hopspan.verify import audit_bounds


def main(out: Path):
    out.mkdir(parents=True, exist_ok=True)
    scenes = {
        "uniform": gen_uniform(120, 3.0, 1),
        "cluster": gen_cluster(80, 2)[0],
    }
    for name, ps in scenes.items():
        g = udg_build(ps)
        for algo in ("hop5", "hop3", "hop2"):
            s = BUILDERS[algo](g)
            rep = audit_bounds(g, s, algo)
            (out / f"{name}_{algo}.svg").write_text(render_svg(ps.xy, s.edges, cells=True))
            print(f"{name:8} {algo}: {s.m:5d} edges, stretch {rep.stretch}")
    for name, ps in {"circle8": gen_circle8()[0], "arc": gen_circle_uniform(80, 2.0, 0)}.items():
        g = udg_build(ps)
        s = BUILDERS["circle4"](g)
        rep = audit_bounds(g, s, "circle4")
        (out / f"{name}_circle4.svg").write_text(render_svg(ps.xy, s.edges))
        print(f"{name:8} circle4: {s.m:5d} edges, stretch {rep.stretch}, plane {rep.planar}")


if __name__ == "__main__":
    main(Path(sys.argv[1] if len(sys.argv) > 1 else "figures"))
