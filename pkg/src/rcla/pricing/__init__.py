from .contract import PricingResult, RclaContract
from .deterministic import price_deterministic, ruin_time
from .mc import mc_convergence, price_mc
from .pde import GridSpec, price_pde
from .table import PriceTable, gmwb_embedded_value, price, table2

__all__ = [
    "GridSpec",
    "PriceTable",
    "PricingResult",
    "RclaContract",
    "gmwb_embedded_value",
    "mc_convergence",
    "price",
    "price_deterministic",
    "price_mc",
    "price_pde",
    "ruin_time",
    "table2",
]
