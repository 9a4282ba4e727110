//! Residual intersections and the duality and socle checks built on them.

pub mod codim2;
pub mod duality;
pub mod setup;
pub mod socle;

pub use codim2::{build_residual_matrix_codim2, check_codim2, sym_power_hilbert, Codim2Report, Codim2Residual, PolyMatrix, SymRow};
pub use duality::{
    algebra_socle_dimension, duality_suite, pairing_report, product_table, rees_truncation_check, self_duality,
    DualityOptions, HomMethod, PairingReport, PairingVerdict, ReesReport, ResidualModules, SelfDualityReport,
};
pub use setup::{
    artinian_slice, check_intersection_lemma, evaluate_hypotheses, general_elements, general_residual, make_setup,
    DepthCheck, HypothesisReport, ResidualSetup, SetupFlags, RETRY_CAP,
};
pub use socle::{element_generates_socle, h0_module, simple_socle_check, ElementSocleReport, SimpleSocleReport, SocleVerdict};
