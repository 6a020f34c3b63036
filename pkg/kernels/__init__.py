"""
平面区域上的 Evans-Selberg 势、Evans 核、圆环 Green 核与基本度量
"""
from .base_kernel import BoundaryKind, BoundaryTarget, PotentialKernel
from .errors import (ConvergenceError, DomainError, FitError, KernelError, NumericalError,
                     ParameterError, PoleError, SolveError, TruncationError)
from .geometry import CPoint
from .green_kernel import (AnnulusGreenKernel, AnnulusSpec, TruncationPlan, green_negative,
                           nakai_shifted_green, normalization_residual, truncation_plan)
from .metric import (MetricParams, fundamental_metric_limit, fundamental_metric_punctured,
                     fundamental_metric_twice, metric_params_for)
from .punctured_kernel import (PuncturedEvansKernel, PuncturedParams, PuncturedPotential,
                               evans_kernel_punctured, evans_selberg_punctured)
from .twice_punctured_kernel import (TwicePuncturedEvansKernel, TwicePuncturedParams,
                                     TwicePuncturedPotential, evans_kernel_twice, evans_selberg_twice)
