//! Conjecturing forbidden-pattern descriptions of finite permutation sets.
//!
//! Given any finite set of permutations, the pipeline scans it for the mesh
//! patterns it allows ([`mine`]), infers the minimal forbidden shadings per
//! classical pattern ([`ForbiddenTable`]), and returns a conjectured basis of
//! forbidden mesh patterns ([`bisc`]). Listing avoiders, verifying a
//! conjectured description against the input, and pruning redundant patterns
//! round out the toolkit, together with generators for the sorting-machine,
//! subgroup, and tableau-shape classes used to exercise it.
//!
//! The data-parallel inner loops (mining, avoider listing, verification) run
//! on rayon when the default `parallel` feature is enabled and fall back to
//! sequential scans without it; results are identical either way.

pub mod classes;
pub mod error;
pub mod forbid;
pub mod mesh;
pub mod mine;
pub mod perm;
pub mod pipeline;
pub mod render;

pub use error::Error;

pub use classes::{
    alternating, dihedral, quicksort_pass, quicksortable, restricted_stack_sortable,
    restricted_stack_sortable_up_to, rsk_shape, rsk_shape_avoiders, stack_sort, stack_sortable,
    west_2_stack_sortable, ClassSpec, YoungShape,
};
pub use forbid::{eliminate_consequences, minimal_forbidden, ForbiddenTable};
pub use mesh::{
    maximal_shading, mesh_contains, mesh_implies, region_points, Cell, MeshPattern, Shading,
    MAX_PATTERN_LEN,
};
pub use mine::{mine, mine_sequential, MinedTable, ShadingAntichain, MAX_PATTERN_BOUND};
pub use perm::{
    all_of_length, factorial, nth_of_length, parse_permutation_lines, read_permutation_file,
    select_of_length, select_up_to, Occurrence, Permutation,
};
pub use pipeline::{
    avoiders, avoiders_sequential, avoiders_with_cap, bisc, prune, verify_equality, verify_subset,
    AvoidanceSet, Basis, EqualityCheck, DEFAULT_LENGTH_CAP,
};
pub use render::{ascii_grid, tikz};
