"""Rhombic alternative tableaux, assemblées of permutations and the two-species ASEP."""

from .algebra import ALPHA, BETA, Q, LaurentPolynomial, format_rational, parse_rational
from .asep import build_generator, stationary_distribution, verify_stationarity
from .assemblees import (Assemblee, canonicalize, enumerate_assemblees, insert, lrs, rho, rls,
                         statistics, word_of_assemblee)
from .bijections import fusion_exchange, label_passing, label_passing_trace, termination_report
from .rat import (Fill, Tableau, closed_form_partition, enumerate_fillings, partition_function,
                  state_weight, tableau_weight, tiling_weight)
from .shapes import (StateWord, Tile, TileKind, Tiling, build_diagram, canonical_tiling,
                     enumerate_tilings, flip_closure, parse_word)

__version__ = "0.1.0"
