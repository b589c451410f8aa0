"""c-differential uniformity laboratory for permutation polynomials over finite fields."""

from cdu.gf import FieldCtx, FieldSpec, build_field

__all__ = ["FieldCtx", "FieldSpec", "build_field"]
__version__ = "0.1.0"
