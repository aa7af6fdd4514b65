"""Do ring isomorphisms between toric manifolds preserve Pontrjagin classes?

For every ring-isomorphic pair in a few small families, record whether some,
all or none of the isomorphisms found within the bound preserve the total
Pontrjagin class (and, as a stronger diagnostic, the total Chern class).
"""

import time
from dataclasses import asdict, dataclass

from _common import emit, parse_config
from toricrig.fan import BottTowerData, bott_tower, example_4_3_triple, hirzebruch, projective_space, stellar_subdivide
from toricrig.isosearch import classify_family


@dataclass
class Config:
    bound: int = 2
    hirzebruch_max: int = 4


def families(cfg: Config):
    h = cfg.hirzebruch_max
    yield "hirzebruch", [(f"F{a}", hirzebruch(a)) for a in range(-h, h + 1)]
    yield "example43", [(f"X{k}", f) for k, f in enumerate(example_4_3_triple(), start=1)]
    cp3 = projective_space(3)
    three = [(f"bott21[{t}]", bott_tower(BottTowerData((2, 1), (((t,),),)))) for t in range(-2, 3)]
    three += [(f"bott12[{t}]", bott_tower(BottTowerData((1, 2), (((t,), (0,)),)))) for t in range(-2, 3)]
    three.append(("cp3#1", stellar_subdivide(cp3, cp3.max_cones[0])))
    yield "betti_1221", three


def run(cfg: Config) -> dict:
    t = time.perf_counter()
    out = {}
    tally = {"all preserve": 0, "some preserve": 0, "none found preserve": 0}
    for name, fam in families(cfg):
        rep = classify_family([f for _, f in fam], cfg.bound, [i for i, _ in fam])
        pairs = []
        for p in rep.pairs:
            if p["ring_isomorphisms_found"]:
                tally[p["pontrjagin"]] += 1
                pairs.append({k: p[k] for k in ("a", "b", "ring_isomorphisms_found", "pontrjagin", "chern")})
        out[name] = {"ring_iso_classes": rep.ring_iso_classes, "pairs": pairs}
    return {
        "config": asdict(cfg),
        "families": out,
        "pontrjagin_tally": tally,
        "seconds": round(time.perf_counter() - t, 3),
    }


if __name__ == "__main__":
    cfg, out = parse_config(Config, __doc__)
    emit(run(cfg), out)
