"""Zero counting for quasimodular forms on translates of the SL2(Z) fundamental domain."""
from .kernels import BACKEND
from .qseries import PowerSeries
from .rings import (QuasiModularForm, d_form, delta_form, e2_form, e4_form, e6_form, eisenstein_form,
                    extremal_form, frak_d, gap_form, modular, serre_theta)
from .evaluate import EvalConfig, eval_qm, hat_eval
from .boundary import BoundarySpectrum, arc_zeros, line_zeros, spectrum
from .counting import ContourConfig, ZeroCountReport, count_series_zeros, count_zeros, count_zeros_gamma02
from .formulas import LambdaClass, n_crit, n_depth1, n_depth1_all, n_infinity_depth1, n_mixed, pair_sum
from .equivariant import HFamily, find_threshold, h_depth1, h_roots, sample_curves
from .expressions import parse_form

__version__ = "0.1.0"
