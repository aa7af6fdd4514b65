"""Double blow-ups of CP^2 x CP^1: three complexes, one cohomology ring."""

import time
from dataclasses import asdict, dataclass

from _common import emit, parse_config
from toricrig.cohomology import cohomology_summary, ordinary_cohomology
from toricrig.fan import example_4_3_stage_one, example_4_3_triple, underlying_complex
from toricrig.isosearch import classify_family


@dataclass
class Config:
    bound: int = 3


def run(cfg: Config) -> dict:
    t = time.perf_counter()
    y = example_4_3_stage_one()
    xs = example_4_3_triple()
    members = []
    for k, x in enumerate(xs, start=1):
        s = cohomology_summary(x, ordinary_cohomology(x))
        cx = underlying_complex(x)
        members.append(
            {
                "id": f"example43_{k}",
                "fan": x.to_dict(),
                "vertex_degrees": sorted(len(cx.neighbours(v)) for v in range(cx.vertex_count)),
                "betti": s["betti"],
                "f_vector": s["f_vector"],
                "pontrjagin_numbers": s["pontrjagin_numbers"],
                "chern_numbers": s["chern_numbers"],
            }
        )
    rep = classify_family(list(xs), cfg.bound, [m["id"] for m in members])
    return {
        "config": asdict(cfg),
        "single_blowup": {"rays": len(y.rays), "cones": len(y.max_cones)},
        "members": members,
        "report": rep.to_dict(),
        "seconds": round(time.perf_counter() - t, 3),
    }


if __name__ == "__main__":
    cfg, out = parse_config(Config, __doc__)
    emit(run(cfg), out)
