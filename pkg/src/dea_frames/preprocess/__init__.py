from .preprocessors import (PRESCORERS, OrderKind, PreprocessorOutput, default_subset_size, dimension_sort,
                            prescore, preprocess, processing_order, select_initial_subset)
