//! Dense complex linear algebra: Hessenberg and Schur reduction, Schur
//! reordering, spectrum clustering, Jordan-structure checks and a PSD solver.

pub mod cluster;
pub mod hessenberg;
pub mod psd;
pub mod reorder;
mod rotation;
pub mod schur;
pub mod structure;

pub use cluster::{cluster_and_order, cluster_and_order_defective, Cluster, SpectrumClustering};
pub use hessenberg::hessenberg;
pub use psd::{solve_psd_consistent, PsdPseudoInverse, PsdSolution};
pub use reorder::{reorder_by_rank, reorder_schur, swap_adjacent};
pub use schur::{schur, schur_with_budget, SchurForm};
pub use structure::{is_nonderogatory, nonderogatory_margin, settle_cluster_blocks};
