"""windarea: integer winding-number fields of chord-closed planar curves,
winding area measures, and their Cauchy-limit Monte Carlo estimators."""

from ._kernels import BACKEND
from ._seeds import RngSeed, as_seed, derive_seed
from .area_measure import (
    TailTable,
    WindingMeasure,
    measure_from_field,
    moment_sum,
    position_parameter,
    scale_parameter,
    tails,
)
from .cauchy import (
    CauchyParams,
    cauchy_cdf,
    cauchy_quantile,
    ks_statistic,
    ks_two_sample,
    quantile_fit,
    sample_cauchy,
    sine_estimator,
    truncated_mean_estimator,
)
from .curves import (
    Dissection,
    PlanarPath,
    bridge_refine,
    brownian_lineage,
    circle_path,
    curve_length,
    dyadic_dissections,
    figure_eight_path,
    line_path,
    p_variation,
    parabola_path,
    pl_skeleton,
    read_path_csv,
    restrict,
    reverse,
    sample_brownian,
    scale,
    translate,
    unit_square,
    write_path_csv,
)
from .errors import (
    BadExponent,
    BadRange,
    BadRate,
    BadWindow,
    NonUniformPath,
    NotAVertex,
    PointOnCurve,
    TooFewSamples,
    WindAreaError,
)
from .integrals import (
    IntegralResult,
    StokesResult,
    ito_sum,
    levy_area,
    line_integral_x_dy,
    shoelace_area,
    stokes_residual,
    young_integral,
)
from .poisson_mc import (
    PointCloud,
    TrialEnsemble,
    Window,
    WindingSumResult,
    cauchy_trial_ensemble,
    hull_window,
    poissonization_check,
    sample_poisson,
    winding_sum,
)
from .winding import (
    GridSpec,
    WindingField,
    angle_winding_oracle,
    grid_for_path,
    winding_field,
    winding_number,
    winding_numbers,
)

__version__ = "0.1.0"
