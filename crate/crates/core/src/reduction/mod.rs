//! Reduction artifacts: OV → SMLG gadget graphs, the set-intersection DAG,
//! and the generic reduction/index-transfer framework.

pub mod gadget;
pub mod lic;
pub mod sic;

pub use gadget::{
    assemble_graph, build_pattern, build_universal_component, build_w_component, chain_len,
    ComponentKind, Gadget, GadgetComponent, ReductionGraph, Variant,
};
pub use lic::{
    compose, ov_to_smlg_reduction, transfer_index, BruteForceOvScheme, CostExponents,
    IdentityReduction, IndexScheme, LicReduction, OnlineMatcherScheme, OvToSmlg, TransferredScheme,
};
pub use sic::{build_sic_graph, sic_query, SetFamily, SicGraph};
