"""Low-SNR analysis of BICM with probabilistically shaped constellations."""

from .constellation import (Constellation, ConstellationError, DegenerateShapingError,
                            InvalidLabelingError, catalog, labeling_matrix, nbc,
                            normalize_to_nbc, symbol_distribution)
from .foo import FooReport, is_foo, is_foo_uniform, is_foo_via_transform, translate_to_zero_mean
from .gmi import (ChannelSpec, GmiCurve, GmiPoint, NumericError, alpha_numeric, bicm_gmi,
                  cm_mi, gmi_point, gmi_sweep, mc_gmi)
from .hadamard import hadamard_matrix, ht, iht
from .low_gmi import (LOG2E, LowGmiParams, ZeroEnergyError, cm_alpha, params, params_ht,
                      params_uniform, params_via_transform)
from .transform import TMatrix, forward, gamma, inverse, psi, t_matrix

__version__ = "0.1.0"
