"""Walsh coefficients of Tr(u x^(2^m + 1)) on F_{2^{3m}} at trace-zero points.

Prints, for each u in F_{2^m}^*, how many trace-zero v have a nonzero
coefficient. At m = 1 all vanish; at m = 2, u = 1 half of them do not.
"""

import sys

from cdu.analysis import FunctionTable, walsh_coefficient
from cdu.gf import build_field


def scan(m):
    ctx = build_field(2, 3 * m)
    e = ctx.elements()
    vs = [v for v in range(ctx.q) if ctx.trace(v) == 0]
    for u in ctx.subfield(m).tolist():
        if not u:
            continue
        f = FunctionTable(ctx, ctx.vtrace(ctx.vmul(u, ctx.vpow(e, 2**m + 1))))
        bad = [(v, walsh_coefficient(f, v).to_int()) for v in vs]
        bad = [(v, w) for v, w in bad if w]
        print(f"m={m} u={u}: {len(bad)}/{len(vs)} trace-zero v with W != 0")
        for v, w in bad[:4]:
            print(f"    v={v}  W={w}")


if __name__ == "__main__":
    for m in map(int, sys.argv[1:] or ["1", "2"]):
        scan(m)
