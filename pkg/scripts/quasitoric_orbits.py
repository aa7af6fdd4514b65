"""Count characteristic functions over small polygons up to GL(n, Z) and Aut(P).

Sign changes v -> -v are kept distinct, so counts are over signed values.
"""

import time
from dataclasses import asdict, dataclass

from _common import emit, parse_config
from toricrig.quasitoric import enumerate_characteristic, is_toric_realizable
from toricrig.simplicial import polygon


@dataclass
class Config:
    max_vertices: int = 5
    bound: int = 1


def run(cfg: Config) -> dict:
    t = time.perf_counter()
    rows = []
    for m in range(3, cfg.max_vertices + 1):
        rep = enumerate_characteristic(polygon(m), 2, cfg.bound)
        toric = sum(is_toric_realizable(r) for r in rep.representatives)
        rows.append(
            {
                "vertices": m,
                "total_valid": rep.total_valid,
                "orbits_under_gl": rep.orbits_under_gl,
                "orbits_under_gl_and_aut": rep.orbits_under_gl_and_aut,
                "toric_orbit_representatives": toric,
            }
        )
    return {"config": asdict(cfg), "polygons": rows, "sign_changes_quotiented": False, "seconds": round(time.perf_counter() - t, 3)}


if __name__ == "__main__":
    cfg, out = parse_config(Config, __doc__)
    emit(run(cfg), out)
