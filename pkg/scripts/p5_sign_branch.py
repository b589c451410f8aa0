"""Which sign of the (p-1)-th power condition matches the permutation property."""

from cdu.analysis import is_permutation
from cdu.families import as_lut, instantiate, p5_branches
from cdu.gf import build_field


def main():
    for p, m in [(3, 1), (5, 1), (3, 2), (7, 1)]:
        ctx = build_field(p, 2 * m)
        nz = [d for d in range(ctx.q) if ctx.rel_trace(d, m)]
        perm = {d for d in nz if is_permutation(as_lut(instantiate("p5", ctx, m, d, strict=False)))}
        line = [f"p={p} m={m}: {len(perm)}/{len(nz)} nonzero-trace deltas permute"]
        for key in ("plus", "minus"):
            hit = {d for d in nz if p5_branches(ctx, m, d)[key]}
            line.append(f"{key}: {len(hit & perm)}/{len(hit)} permute, characterizes={hit == perm}")
        print("; ".join(line))


if __name__ == "__main__":
    main()
