"""Walk through the ramification calculus on a few realized towers.

Run with ``python3 demos/ramification_tour.py``.
"""

from fractions import Fraction

from ramdepth import localfield as lf
from ramdepth import ramification as rm
from ramdepth.rationals import fmt
from ramdepth.suites import catalog_by_name


def show(name):
    desc = catalog_by_name()[name]
    ext = lf.realize_tower(desc)
    D = lf.realize_ramdatum(ext)
    b = rm.breaks(D)
    print(f"{name}: degree {ext.degree}, e = {ext.e}, group order {D.order}")
    print(f"  depths  {[fmt(d) for d in sorted(D.depth.values())]}")
    print(f"  phi     {rm.hh_phi(D).segments()}")
    print(f"  ell = {fmt(b.ell)}, u = {fmt(b.u)}, c = {fmt(b.c)}")
    grid = [Fraction(k, D.e) for k in range(0, int(b.u * D.e) + 2)]
    print("  s      shift=c  beyond-break  next-group-trivial  norm-onto")
    for s in grid:
        f = rm.check_tfae_combinatorial(D, s)
        print(f"  {fmt(s):6} {f.shift_is_conductor!s:8} {f.beyond_last_break!s:13} "
              f"{f.next_group_trivial!s:19} {lf.check_tfae_field(ext, s)}")
    print()


if __name__ == "__main__":
    for name in ("F3:as1", "F3:as1/tame2", "F3:tame2/as1 (S3)"):
        show(name)
    print("The S3 tower has a tame abelian quotient, so class field theory makes the norm")
    print("onto the principal units even where the combinatorial conditions fail.")
