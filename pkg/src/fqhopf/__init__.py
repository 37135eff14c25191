"""Shuffle and stuffle Hopf algebras on the composition space over F_q.

Quick start::

    >>> from fqhopf import field, LinComb, shuffle, coproduct_shuffle
    >>> F = field(3)
    >>> print(shuffle(LinComb.word(F, [1]), LinComb.word(F, [2])))
    x1x2 + x2x1 + x3
    >>> print(coproduct_shuffle(F, (3,)))
    1⊗x3 + x3⊗1
"""

from .coalgebra import (
    CoproductCache,
    antipode_shuffle,
    antipode_stuffle,
    antipode_stuffle_recursive,
    coproduct_depth_one_closed,
    coproduct_depth_one_small,
    coproduct_shi,
    coproduct_shuffle,
    coproduct_stuffle,
    counit,
    tensor_product,
)
from .compspace import (
    LinComb,
    Tensor2,
    Tensor3,
    concat,
    make_word,
    parse_lincomb,
    parse_tensor,
    parse_word,
    serialize,
    to_latex,
    weight_of,
)
from .powersums import (
    BudgetExceeded,
    RatFunc,
    carlitz_sum_Si,
    carlitz_sum_Silt,
    check_partial_fraction,
    ell,
    hoffman_basis,
    hoffman_dimension,
    monic_polys,
    power_sum_S,
    power_sum_Slt,
)
from .products import bracket, diamond, shuffle, star_q, stuffle, triangle
from .scalar import FieldSpec, Scalar, chen_delta, delta_j, delta_jk, field, field_from_q, lucas_binomial, nabla

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
