"""Exact arithmetic for positive definite integral lattices.

Core surface: build lattices from Gram matrices, enumerate short
vectors, test isometry and embeddings, decide p-adic representation and
genus questions, decide rank-3 buriedness of binary pairs, and run the
bundled verification checks. The `qlat` command line and the HTTP
service expose the same operations.
"""

__version__ = "0.1.0"

from .forms_core import (  # noqa: F401
    Lattice,
    NotPositiveDefinite,
    NotPositiveSemidefinite,
    NotSymmetric,
    diagonal,
    direct_sum,
    even_sublattice,
    make_lattice,
    named_K,
    named_L,
    named_M,
    ramanujan_ternary,
    root_A,
    root_E,
    scale,
    unit_lattice,
)
from .enumerate import (  # noqa: F401
    Isometry,
    ShortVectorList,
    enumerate_binary_by_det,
    is_isometric,
    is_primitive,
    minimum,
    short_vectors,
    successive_minima,
    superlattices,
)
from .represent import (  # noqa: F401
    BoundsExhausted,
    CandidateSet,
    EmbeddingWitness,
    RankTooSmall,
    common_rep_candidates,
    embeds,
    orthogonal_complement,
    primitive_reps,
    primitive_value_map,
    represented_values,
    represents_integer,
    run_script,
    split_unary,
)
from .localfield import (  # noqa: F401
    REAL_PLACE,
    JordanForm,
    QpSpaceInv,
    buried_in_genus,
    buried_over_qp,
    buried_over_zp,
    hilbert,
    jacobi,
    jordan_decomposition,
    qp_invariants,
    qp_space_represents,
    same_genus,
    square_class,
    zp_represents,
)
from .buried import (  # noqa: F401
    AlreadyBuriedInRank2,
    BuriedVerdict,
    NotPrimitiveInput,
    ScanReport,
    buried3,
    conjecture_scan,
    scan_discriminant,
    witness_L,
)
from .paperlab import (  # noqa: F401
    CHECK_GROUPS,
    AvoidingBinary,
    CheckResult,
    InvalidAlpha,
    SameSquareClass,
    ThirdInteger,
    VerifyConfig,
    construct_avoiding_binary,
    even_theorem_counts,
    find_third_integer,
    n_alpha,
    n_alpha_variants,
    prop_conditions_check,
    results_to_json,
    run_checks,
    run_group,
    verify_kappa13,
    verify_progressions,
    verify_ramanujan_odd,
    verify_remark33,
    verify_remark35,
    verify_section4,
)
