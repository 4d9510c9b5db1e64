"""Deligne-Lusztig parameters of Moy-Prasad types for GL_2 and SL_2 over F_3.

Run with ``python3 demos/dl_parameters.py``.
"""

from collections import Counter
from fractions import Fraction

from ramdepth import dlparams as dl
from ramdepth import rootdata as rdm
from ramdepth.finitefield import get_field

F3 = get_field(3)

if __name__ == "__main__":
    GL2, SL2 = rdm.RootDatum("GL", 2), rdm.RootDatum("SL", 2)
    for rd, x, r in ((GL2, rdm.ApartmentPoint.origin(GL2), 1), (SL2, rdm.ApartmentPoint.barycenter(SL2), Fraction(1, 2))):
        types = dl.sweep(rd, x, r, F3)
        classes = Counter(dl.dl_parameter(m).class_string() for m in types)
        degenerate = sum(not dl.is_nondegenerate(m).flag for m in types)
        print(f"{rd} at {x.to_json()}, r = {r}: {len(types)} types, {degenerate} degenerate")
        for cls, count in sorted(classes.items()):
            print(f"  {count:3d} x {cls}")
        w = rdm.affine_weyl_word(rd, ["s0", "s1"])
        m = types[-1]
        print(f"  transport by s0 s1 moves x to {w.act_point(x).to_json()}; parameter unchanged:",
              dl.same_parameter(dl.dl_parameter(m), dl.dl_parameter(m.transported(w))))
        print()
