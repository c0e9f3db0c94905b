//! Decision procedures for automata over Z.
//!
//! Everything here works on the de Bruijn graph of the rule's window and on
//! its pair graph, both generated on demand from the window table.

mod crosscheck;
mod decide;
mod graphs;
mod inverse;
mod preimage;
mod tower;

pub use crosscheck::{goe_crosscheck, CrosscheckRow};
pub use decide::{
    decide_injective, decide_preinjective, decide_surjective, decide_surjective_with, image_at, same_image,
    verify_orphan, DiamondWitness, EventuallyPeriodic, InjectivityVerdict, InjectivityWitness, PreinjectivityVerdict,
    SurjectivityMethod, SurjectivityVerdict, SurjectivityWitness, POWERSET_VERTEX_LIMIT,
};
pub use graphs::{build_debruijn, build_pair, build_windowed, DeBruijnGraph, PairGraph, WindowedRule};
pub use inverse::{certify, default_max_radius, synthesize_inverse, InverseOutcome};
pub use preimage::preimage_periodic;
pub use tower::{padic_tower_report, TowerReport, TowerRow};
