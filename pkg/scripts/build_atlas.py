"""Freeze the surface atlas: one triangulation, twist-generator system and
seed list per supported surface type, written as versioned JSON."""

import json
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from curvegraphs import ATLAS_VERSION
from curvegraphs.surface import ATLAS_TYPES, Surface

OUT = os.path.join(os.path.dirname(__file__), "..", "src", "curvegraphs",
                   "atlas")


def main():
    os.makedirs(OUT, exist_ok=True)
    for g, b in ATLAS_TYPES:
        name = "S%d,%d" % (g, b)
        fname = os.path.join(OUT, "S%d_%d.json" % (g, b))
        if b == 0:
            data = {
                "version": ATLAS_VERSION,
                "name": name,
                "genus": g,
                "punctures": 0,
                "closed": True,
                "cover": {"genus": 0, "punctures": 2 * g + 2},
            }
        else:
            s = Surface(g, b)
            gens = s.twist_generators
            data = {
                "version": ATLAS_VERSION,
                "name": name,
                "genus": g,
                "punctures": b,
                "closed": False,
                "triangulation": s.tri.to_json(),
                "twist_generators": [list(c.word) for c in gens],
                "seeds": [list(c.word) for c in gens[:4]],
            }
        with open(fname, "w") as f:
            json.dump(data, f, indent=1, sort_keys=True)
            f.write("\n")
        print("wrote", fname, "gens" if b else "closed",
              len(data.get("twist_generators", [])))


if __name__ == "__main__":
    main()
