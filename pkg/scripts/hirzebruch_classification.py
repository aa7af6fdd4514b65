"""Classify Hirzebruch surfaces F_a by fan, complex and cohomology ring."""

import time
from dataclasses import asdict, dataclass

from _common import emit, parse_config
from toricrig.fan import hirzebruch
from toricrig.isosearch import classify_family


@dataclass
class Config:
    a_min: int = -3
    a_max: int = 3
    bound: int = 3


def run(cfg: Config) -> dict:
    t = time.perf_counter()
    ids = [f"F{a}" for a in range(cfg.a_min, cfg.a_max + 1)]
    rep = classify_family([hirzebruch(a) for a in range(cfg.a_min, cfg.a_max + 1)], cfg.bound, ids)
    ring_matches_parity = all(
        len({int(i[1:]) % 2 for i in cls}) == 1 for cls in rep.ring_iso_classes
    ) and len(rep.ring_iso_classes) == min(2, len(ids))
    fan_matches_abs = all(len({abs(int(i[1:])) for i in cls}) == 1 for cls in rep.fan_iso_classes)
    return {
        "config": asdict(cfg),
        "ring_classes_are_parity_classes": ring_matches_parity,
        "fan_classes_are_abs_classes": fan_matches_abs,
        "report": rep.to_dict(),
        "seconds": round(time.perf_counter() - t, 3),
    }


if __name__ == "__main__":
    cfg, out = parse_config(Config, __doc__)
    emit(run(cfg), out)
