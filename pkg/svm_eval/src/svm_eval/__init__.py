"""Nested cross-validation harness for precomputed graph-kernel matrices."""

from .cv import CVResult, fold_assignment, nested_cv
from .gram_io import (ExperimentGrid, GramFormatError, GridEntry,
                      grid_from_files, params_from_filename, read_csv,
                      read_labels, read_precomputed)
from .reporting import (selection_frequencies, write_results_tsv,
                        write_selection_chart, write_selection_tsv)

__version__ = "0.1.0"
