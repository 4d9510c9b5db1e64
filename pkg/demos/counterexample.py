"""The unit quotient whose last ramification group is cyclic although the quotient is not.

Run with ``python3 demos/counterexample.py [p]``.
"""

import json
import sys

from ramdepth.cft import counterexample_report

if __name__ == "__main__":
    p = int(sys.argv[1]) if len(sys.argv) > 1 else 3
    rep = counterexample_report(p)
    print(f"p = {p}, exponent set S = {{{rep['S']}}}")
    print(f"quotient invariants {rep['quotient_invariants']}, upper breaks {rep['breaks']}")
    print(f"last break d = {rep['d']}: Gamma^d has order {rep['gamma_d_order']}, cyclic: {rep['gamma_d_cyclic']}")
    print("full report:")
    print(json.dumps(rep, indent=2, sort_keys=True))
