//! Ping-pong tables, W-set membership and the certification loop.

mod engine;
mod table;

pub use engine::{
    b2_power_disk, certify_bound, certify_bound_with, check_prerequisites, default_cap, level_words,
    relator_implication_report, subword_guarantee, w_membership, w_membership_matrix, CertOptions, CertReport,
    WMembership, WSet,
};
pub use table::{CheckResult, Flavor, ParamDomain, PingPongTable};
