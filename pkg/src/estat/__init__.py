"""Memory-efficient energy statistics."""
from .dataset import (
    CSVFormatError,
    Dataset,
    as_dataset,
    generate_gaussian,
    load_csv,
    load_iris,
    write_csv,
)
from .estimators import (
    CollinearityError,
    DCorResult,
    EnergyMatrix,
    UndefinedCorrelationError,
    dcor,
    dcor_sqr,
    dcov,
    dcov_sqr,
    dvar,
    dvar_sqr,
    edist,
    edist_matrix,
    energy_distance,
    pdcor,
)
from .kernels import (
    CrossSums,
    GammaSums,
    cross_pairwise_sum,
    dcov_sums,
    dvar_sums,
    pairwise_sum,
    row_sums,
)
from .univariate import dcov_univariate_fast, dvar_univariate

__version__ = "0.1.0"
