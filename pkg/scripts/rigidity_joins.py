"""Search for counterexamples to rigidity of joins of simplex boundaries.

The underlying complex of a generalized Bott tower with stage dimensions
(n_1, ..., n_k) is the join of the boundaries of simplices of those
dimensions. A counterexample would be a toric manifold whose cohomology ring
matches such a tower while its complex is not a join. The family below mixes
Bott towers with iterated point blow-ups sharing their Betti numbers; the
search is bounded, so a clean run only means no counterexample was found in
this corpus.
"""

import itertools
import time
from collections import defaultdict
from dataclasses import asdict, dataclass

from _common import emit, parse_config
from toricrig.cohomology import ordinary_cohomology
from toricrig.fan import BottTowerData, bott_tower, cp2_times_cp1, projective_space, stellar_subdivide, underlying_complex
from toricrig.isosearch import classify_family, complexes_isomorphic
from toricrig.simplicial import join, simplex_boundary


@dataclass
class Config:
    twist_range: int = 1
    bound: int = 2


def family(cfg: Config):
    r = range(-cfg.twist_range, cfg.twist_range + 1)
    out = []
    for t1, t2, t3 in itertools.product(r, repeat=3):
        out.append((f"bott111[{t1},{t2},{t3}]", bott_tower(BottTowerData((1, 1, 1), (((t1,),), ((t2, t3),))))))
    for t1 in r:
        out.append((f"bott21[{t1}]", bott_tower(BottTowerData((2, 1), (((t1,),),)))))
        out.append((f"bott12[{t1}]", bott_tower(BottTowerData((1, 2), (((t1,), (0,)),)))))
    cp3 = projective_space(3)
    once = stellar_subdivide(cp3, cp3.max_cones[0])
    out.append(("cp3#1", once))
    for k, c in enumerate(once.max_cones):
        out.append((f"cp3#2[{k}]", stellar_subdivide(once, c)))
    base = cp2_times_cp1()
    out.append(("cp2xcp1#1", stellar_subdivide(base, base.max_cones[0])))
    return out


def is_join_of_boundaries(cx, dims):
    target = simplex_boundary(dims[0])
    for d in dims[1:]:
        target = join(target, simplex_boundary(d))
    return complexes_isomorphic(cx, target) is not None


def run(cfg: Config) -> dict:
    t = time.perf_counter()
    fam = family(cfg)
    groups = defaultdict(list)
    for name, f in fam:
        groups[ordinary_cohomology(f).ranks].append((name, f))
    joins = {(1, 1, 1): [1, 1, 1], (2, 1): [2, 1]}
    results = []
    counterexamples = []
    for betti, members in sorted(groups.items()):
        if len(members) < 2:
            continue
        ids = [m[0] for m in members]
        rep = classify_family([m[1] for m in members], cfg.bound, ids)
        join_flags = {}
        for name, f in members:
            cx = underlying_complex(f)
            join_flags[name] = any(is_join_of_boundaries(cx, list(d)) for d in joins.values() if sum(x + 1 for x in d) == f.nrays)
        for a, b in rep.rigidity_witnesses:
            if join_flags[a] != join_flags[b]:
                counterexamples.append([a, b])
        results.append(
            {
                "betti": list(betti),
                "members": ids,
                "join_members": [k for k, v in join_flags.items() if v],
                "ring_iso_classes": rep.ring_iso_classes,
                "complex_iso_classes": rep.complex_iso_classes,
            }
        )
    return {
        "config": asdict(cfg),
        "family_size": len(fam),
        "groups": results,
        "join_counterexamples": counterexamples,
        "verdict": "counterexample found" if counterexamples else "no counterexample found in corpus",
        "search_bound": cfg.bound,
        "seconds": round(time.perf_counter() - t, 3),
    }


if __name__ == "__main__":
    cfg, out = parse_config(Config, __doc__)
    emit(run(cfg), out)
