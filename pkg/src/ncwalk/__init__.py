"""Walk-based node refinement and node-centric walk graph kernels."""

from .errors import (BudgetExceededError, ContractViolation, NcwalkError,
                     ParseError, StructuralError, WalkCountOverflowWarning)
from .graphs import (GraphCollection, LabeledGraph, adjacency_matvec,
                     disjoint_union, disjoint_union_all, parse_tudataset)
from .refinement import (RefinementSequence, UnfoldingTree, WalkPartitionMatrix,
                         intern_labels, morgan_ec, partitions_equal, refines,
                         tree_root_to_leaf_sequences, unfolding_tree,
                         walk_labels_oracle, walk_partition, wl_refine,
                         wl_stable_labeling)
from .product import (ProductGraph, count_walks, direct_product,
                      iterate_walk_vectors, union_product_parts)
from .node_kernels import (INF_ALPHA, NodeKernelParams, NodePairKernels,
                           WalkVectors, node_kernel_oracle,
                           node_partition_from_kernels, walk_node_kernels)
from .graph_kernels import (GramMatrix, GraphKernelSpec, KERNEL_KINDS,
                            gram_matrix, label_histogram_kernel, ncw_gram_grid,
                            ncw_kernel, ncw_unlabeled_fast, rw_gram_grid,
                            rw_kernel, wl_gram_grid, wl_subtree_kernel,
                            write_gram_csv, write_gram_precomputed)
from .evaluation import (IsomorphismCertificate, certificate_is_valid,
                         completeness_ratio, dedup_isomorphic,
                         find_isomorphism, normalize_gram)

__version__ = "0.1.0"
