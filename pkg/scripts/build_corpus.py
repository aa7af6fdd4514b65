"""Regenerate the JSON files under src/toricrig/data from the constructors."""

import json
from pathlib import Path

from toricrig.corpus import build_corpus
from toricrig.fan import hirzebruch, projective_space
from toricrig.quasitoric import CharacteristicFunction, from_fan
from toricrig.simplicial import polygon, simplex_boundary

DATA = Path(__file__).resolve().parents[1] / "src" / "toricrig" / "data"


def write(name, obj):
    (DATA / name).write_text(json.dumps(obj, indent=2) + "\n", encoding="utf-8")


def main():
    DATA.mkdir(parents=True, exist_ok=True)
    index = []
    for entry in build_corpus():
        write(f"{entry.id}.json", entry.to_dict())
        index.append({"id": entry.id, "file": f"{entry.id}.json", "provenance": entry.provenance})
    write("corpus_index.json", index)
    write("square.json", polygon(4).to_dict())
    write("triangle.json", simplex_boundary(2).to_dict())
    write("charfun_cp2.json", from_fan(projective_space(2)).to_dict())
    write("charfun_hirzebruch_1.json", from_fan(hirzebruch(1)).to_dict())
    # characteristic but not toric: cone on (1,1) sits inside cone(e1, e2)
    bad = CharacteristicFunction(polygon(4), ((1, 0), (0, 1), (1, 1), (0, -1)))
    write("charfun_not_toric.json", bad.to_dict())


if __name__ == "__main__":
    main()
