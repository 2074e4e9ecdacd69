"""
    kgsa
    ~~~~

    Kernel-embedding global sensitivity analysis from a single
    input-output data set. This is where we initialize the
    library wide config object.
"""

from kgsa.config import Config

config = Config()  # pylint: disable=invalid-name


from kgsa.data import DataSet
from kgsa.kernels import (KernelSpec, GramMatrix, cross_gram, eval_kernel,
                          gram_matrix, mahalanobis_metric, median_heuristic,
                          spread_heuristic)
from kgsa.embedding import (CmeModel, IndexEstimate, NormalizationStats,
                            beta_cme, fit_cme, isf_dist, isf_norm,
                            isf_profile, mmd2_unbiased, normalization_stats)
from kgsa.knn import (NeighborIndex, beta_nn_full, beta_nn_subsample,
                      nearest_neighbor)
from kgsa.decomposition import (IndexTable, anova_effects,
                                conditional_anova_check, conditional_index,
                                ols_alternatives, ols_decomposition,
                                screen_inputs, shapley_effects)
from kgsa.model_selection import (cv_loss, nelder_mead, tune_cme,
                                  tune_cme_replicates)
from kgsa.analysis import SensitivityReport, run_analysis, summed_mse


__version__ = '0.1.0'
