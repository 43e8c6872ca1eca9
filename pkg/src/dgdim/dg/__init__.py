from .dgring import (
    AElem,
    DGRing,
    ProductDGRing,
    build_koszul_dg,
    build_ring_dg,
    build_trivial_extension,
    product_dg,
)
from .dgmodule import (
    DGGen,
    DGMap,
    DGModule,
    cone_dg,
    cocone_dg,
    dg_module_from_h0_module,
    dg_module_from_presentation,
    direct_sum_dg,
    free_dg_module,
    h0_cyclic_dg_module,
    hom_semifree_into_dg,
    koszul_dg_module,
    multiplication_map,
    residue_dg_module,
    shift_dg,
    twist_dg,
)
from .product import (
    ProductDGModule,
    build_split_trivial_extension,
    factor_module,
    factor_residue_module,
    product_free_module,
    product_koszul_module,
    product_module,
    shift_product,
    twist_product,
    zero_dg_module,
)
from .tower import (
    SemifreeResolution,
    SppjStage,
    coreduce_dg_module,
    reduce_dg_module,
    reduce_to_h0,
    semifree_resolution,
    sppj_step,
    tensor_reduce,
)

__all__ = [
    "AElem",
    "DGRing",
    "ProductDGRing",
    "build_koszul_dg",
    "build_ring_dg",
    "build_trivial_extension",
    "product_dg",
    "DGGen",
    "DGMap",
    "DGModule",
    "cone_dg",
    "cocone_dg",
    "dg_module_from_h0_module",
    "dg_module_from_presentation",
    "direct_sum_dg",
    "free_dg_module",
    "h0_cyclic_dg_module",
    "hom_semifree_into_dg",
    "koszul_dg_module",
    "multiplication_map",
    "residue_dg_module",
    "shift_dg",
    "twist_dg",
    "ProductDGModule",
    "build_split_trivial_extension",
    "factor_module",
    "factor_residue_module",
    "product_free_module",
    "product_koszul_module",
    "product_module",
    "shift_product",
    "twist_product",
    "zero_dg_module",
    "SemifreeResolution",
    "SppjStage",
    "coreduce_dg_module",
    "reduce_dg_module",
    "reduce_to_h0",
    "semifree_resolution",
    "sppj_step",
    "tensor_reduce",
]
