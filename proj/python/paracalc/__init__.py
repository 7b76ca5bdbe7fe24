"""Numerical paradifferential-operator calculus on periodic grids."""

try:
    from . import _paracalc as _impl  # installed wheel layout
except ImportError:  # build-tree layout: module next to the package
    import _paracalc as _impl

__all__ = [
    "CapabilityError",
    "ClassViolationError",
    "ConfigError",
    "ElementarySymbols",
    "Field",
    "FilterBank",
    "FourWaySplit",
    "Grid",
    "HypothesisError",
    "InputError",
    "Symbol",
    "catalogue_symbol",
    "commutator_apply",
    "elementary_decompose",
    "four_way_split",
    "op_apply_dense",
    "op_apply_elementary",
    "poisson_n",
    "random_band_limited",
    "remainder_apply",
    "run_experiment",
    "seminorm_M",
    "seminorm_N",
    "sharp_n",
    "smooth_coefficient",
    "zygmund_norm",
]

for _name in __all__:
    globals()[_name] = getattr(_impl, _name)
del _name
