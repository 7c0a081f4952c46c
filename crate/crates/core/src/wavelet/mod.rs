//! Wavelet bases and the wavelet-tree partition.
//!
//! 2D coefficient vectors use the Mallat layout on a `side × side` array,
//! vectorized row-major. After `levels` decompositions the approximation
//! block occupies the top-left `(side >> levels)²` corner; the three detail
//! subbands of level `ℓ` (1 = finest) have size `s = side >> ℓ` and sit at
//! `(0, s)`, `(s, 0)` and `(s, s)` (orientations 0, 1, 2).

mod daubechies;
mod haar;
mod partition;

pub use daubechies::{daubechies5_basis_2d, Dwt2d, OrthogonalFilter};
pub use haar::{haar_basis, haar_children, haar_forward, haar_inverse, haar_level, haar_support};
pub use partition::{
    coefficient_index, set_strength, tree_partition, SetRole, TreePartition, TreeRoot,
    TREE_ROOT_LEVEL,
};
