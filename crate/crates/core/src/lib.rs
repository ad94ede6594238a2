//! Exact divisor theory on finite multigraphs.
//!
//! [`divisor`] holds chip-firing and rank. Exhaustive
//! gonality searches and the independence bound live in [`gonality`];
//! scramble and bramble certificates in [`certificates`].

pub mod certificates;
pub mod divisor;
pub mod error;
pub mod factory;
mod flow;
pub mod format;
pub mod gonality;
pub mod graph;

pub use certificates::{
    bramble_order_r, certify_lower_bound, egg_cut_number, hitting_number_r, scramble_order,
    treewidth_r_lower_bound, verify_bramble, verify_scramble, vertex_scramble, BrambleCertificate,
    CertificateFile, CertificateKind, EggCut, Hitting, OrderReport, ScrambleCertificate, Verdict,
    Violation,
};
pub use divisor::{
    apply_script, fire_set, first_failing_debt, is_winnable, mdba, q_reduce, rank, rank_at_least,
    BurnOutcome, BurnReport, Divisor, FiringScript,
};
pub use error::{Error, Result};
pub use factory::{
    bipartite_extension, complete, complete_bipartite, crown, cycle, detect_bipartition,
    generalized_banana, path, BipartitionLabels, Block, Extension, Role,
};
pub use gonality::{
    alpha_r, bound_preconditions, gonality, independence_divisor, is_r_independent, mf_gonality,
    upper_bound, IndependenceReport, SearchOptions, SearchReport,
};
pub use graph::{Cut, Girth, Multigraph, VertexMultiset, VertexSet};
