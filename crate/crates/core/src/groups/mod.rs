//! Matrix groups GL_n and U_n over finite fields and their F-fixed points.

pub mod group;
pub mod jordan;
pub mod matrix;
pub mod scan;
pub mod spec;

pub use group::{Group, GroupElement};
pub use jordan::{
    block_eigen, centralizer_type, sigma_log, eigen_data, jordan, BlockEigen, CentralizerFactor, CentralizerType,
    EigenOrbit, JordanPair,
};
pub use matrix::Mat;
pub use scan::{conjugacy_classes, conjugate_into, nset, transporter_count, ConjClass, NSet};
pub use spec::{group_order, signed_order, Context, Factor, Family, GroupSpec};
