"""Built-in fan corpus used by the tests, the scripts and ``classify``."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .fan import (
    BottTowerData,
    Fan,
    bott_tower,
    cp2_times_cp1,
    example_4_3_stage_one,
    example_4_3_triple,
    hirzebruch,
    product,
    projective_space,
)

RANDOM_BOTT_SEED = 20071


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    fan: Fan
    provenance: str

    def to_dict(self) -> dict:
        return {"id": self.id, "provenance": self.provenance, **self.fan.to_dict()}


def random_bott_data(rng: random.Random, max_total: int = 4, twist_range: int = 3) -> BottTowerData:
    total = rng.randint(2, max_total)
    dims = []
    while sum(dims) < total:
        dims.append(rng.randint(1, total - sum(dims)))
    twists = tuple(
        tuple(tuple(rng.randint(-twist_range, twist_range) for _ in range(j)) for _ in range(dims[j]))
        for j in range(1, len(dims))
    )
    return BottTowerData(tuple(dims), twists)


def random_bott_towers(count: int = 10, seed: int = RANDOM_BOTT_SEED) -> list[BottTowerData]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        data = random_bott_data(rng)
        if len(data.stage_dims) >= 2:
            out.append(data)
    return out


@lru_cache(maxsize=None)
def build_corpus() -> tuple[CorpusEntry, ...]:
    out = []
    for n in range(1, 5):
        out.append(CorpusEntry(f"cp{n}", projective_space(n), f"projective_space({n})"))
    for a in range(-3, 4):
        out.append(CorpusEntry(f"hirzebruch_{a}", hirzebruch(a), f"hirzebruch({a})"))
    out.append(CorpusEntry("cp1xcp1", product(projective_space(1), projective_space(1)), "product(cp1, cp1)"))
    out.append(CorpusEntry("cp2xcp1", cp2_times_cp1(), "product(cp2, cp1)"))
    for k, data in enumerate(random_bott_towers()):
        prov = f"bott_tower(dims={list(data.stage_dims)}, twists={json.dumps([list(map(list, s)) for s in data.twists])}) seed={RANDOM_BOTT_SEED}"
        out.append(CorpusEntry(f"bott_random_{k}", bott_tower(data), prov))
    out.append(CorpusEntry("example43_stage1", example_4_3_stage_one(), "cp2xcp1 blown up at its first maximal cone"))
    for k, f in enumerate(example_4_3_triple(), start=1):
        out.append(CorpusEntry(f"example43_{k}", f, f"example_4_3_triple()[{k - 1}]"))
    return tuple(out)


def corpus_fans() -> dict[str, Fan]:
    return {e.id: e.fan for e in build_corpus()}


def data_path(name: str):
    return resources.files("toricrig") / "data" / name


def load_data_fan(name: str) -> Fan:
    return Fan.from_json(data_path(name).read_text(encoding="utf-8"))
