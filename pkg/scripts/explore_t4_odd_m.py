"""Exploratory run of the ternary family at odd m, outside its stated hypothesis."""

import collections
import sys

from cdu.analysis import c_uniformity_max, is_permutation
from cdu.families import as_lut, instantiate
from cdu.gf import build_field


def main(m):
    ctx = build_field(3, 2 * m)
    sub = set(ctx.subfield(m).tolist())
    for delta in range(ctx.q):
        t = as_lut(instantiate("t4", ctx, m, delta, strict=False))
        tr = ctx.rel_trace(delta, m)
        inside = collections.Counter(c_uniformity_max(t, c) for c in sorted(sub - {1}))
        outside = collections.Counter(c_uniformity_max(t, c) for c in range(ctx.q) if c not in sub)
        print(f"delta={delta:3d} Tr={tr} perm={is_permutation(t)!s:5s} "
              f"c in subfield: {dict(sorted(inside.items()))}  outside: {dict(sorted(outside.items()))}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 1)
