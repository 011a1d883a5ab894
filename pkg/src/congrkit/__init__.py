"""Congruences on transformation monoids, matrix monoids and their products."""

from .congruence_fn import CongruenceFn, principal_fn, related_fn
from .congruence_qn import CongruenceQn, congruence_chain, principal_qn, related_qn
from .landscape import DlockLandscape, enumerate_landscapes, validate_landscape
from .matrix_product import principal_fmfn
from .oracle import all_congruences, build_table, congruence_closure
from .product import principal_product
from .render import parse_landscape, render_landscape

__version__ = "0.1.0"
