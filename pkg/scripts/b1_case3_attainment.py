"""Is the bound 4 reached by the first binary family off Gamma1?"""

import collections
import sys

from cdu.analysis import c_uniformity_max
from cdu.families import as_lut, instantiate
from cdu.gf import build_field


def main(m):
    ctx = build_field(2, 3 * m)
    sub = set(ctx.subfield(m).tolist())
    hist = collections.Counter()
    first = None
    for delta in range(ctx.q):
        if ctx.rel_trace(delta, m) == 1:
            continue
        t = as_lut(instantiate("b1", ctx, m, delta))
        for c in range(ctx.q):
            if c in sub:
                continue
            v = c_uniformity_max(t, c)
            hist[v] += 1
            if v == 4 and first is None:
                first = (delta, c)
    print(f"m={m}: uniformity histogram {dict(sorted(hist.items()))}, first (delta, c) reaching 4: {first}")


if __name__ == "__main__":
    for m in map(int, sys.argv[1:] or ["1", "2"]):
        main(m)
