"""Depth-zero parameters: Frobenius-stable Weyl orbits of torsion points of the dual torus.

Run with ``python3 demos/depth_zero.py``.
"""

from ramdepth import dlparams as dl
from ramdepth import rootdata as rdm

if __name__ == "__main__":
    for name in ("GL1", "SL2", "GL2", "SL3"):
        rd = rdm.RootDatum.parse(name)
        for q in (2, 3):
            orbits = dl.depth_zero_space(rd, q)
            print(f"{name} q={q}: {len(orbits)} classes")
            for o in orbits[:6]:
                print("   ", o.to_json()["orbit"])
            if len(orbits) > 6:
                print("    ...")
