//! Exact combinatorics of compositions, hook-length factors and the
//! critical pairs they produce, with brute-force oracles and an exact
//! nonsymmetric Jack polynomial engine to cross-check them.

pub mod composition;
pub mod critical;
pub mod deformed;
pub mod error;
pub mod hooks;
pub mod jack;
pub mod kappa;
pub mod multipoly;
pub mod oracle;

pub use composition::{dominates, triangle_greater, Composition, SortInfo};
pub use critical::{
    chain, check_critical_pair, closure, construct_beta, construct_beta_in, detect_extra_hooks,
    exhaustive_steps, is_critical_pair, AlgorithmTrace, Closure, ClosureMember, Construction,
    CriticalPairCertificate, ExtraHook, Verdict,
};
pub use deformed::{deformed, deformed_all, deformed_rank_vector, DeformedValue};
pub use error::{Error, Result};
pub use hooks::{
    factor_multiplicity, hook_factor, hook_factors_all, leg_length, leg_length_deformed, nodes,
    nodes_with_factor, reduce_pair, Affine, HookFactor, Node,
};
pub use jack::{
    hook_product, knop_sahi_report, knop_sahi_report_with_cap, u_apply, u_apply_monomial,
    xi_eigenvalue, xi_specialization_match, zeta, zeta_with_cap, JackReport, PoleFactor,
    DEFAULT_MONOMIAL_CAP,
};
pub use kappa::{KappaPoly, KappaRational};
pub use multipoly::MultiPoly;
pub use oracle::{
    enumerate_partners, negative_existence_scan, uniqueness_scan, NegativeReport, ScanRecord,
    SearchBounds, SearchMode, SignViolation, UniquenessReport,
};
