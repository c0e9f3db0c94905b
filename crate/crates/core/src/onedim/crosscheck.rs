//! Surjectivity against pre-injectivity over a corpus of rules.

use crate::ca::CellularAutomaton;
use crate::error::Result;
use crate::parallel;

use super::decide::{decide_preinjective, decide_surjective, SurjectivityMethod};
use super::graphs::build_windowed;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrosscheckRow {
    pub surjective: bool,
    pub preinjective: bool,
    pub method: SurjectivityMethod,
}

impl CrosscheckRow {
    pub fn agrees(&self) -> bool {
        self.surjective == self.preinjective
    }
}

/// Runs both deciders on every rule. Rows come back in corpus order.
pub fn goe_crosscheck(corpus: &[CellularAutomaton], budget: u64) -> Result<Vec<CrosscheckRow>> {
    parallel::map_slice(corpus, |ca| {
        let wr = build_windowed(ca, budget)?;
        let sur = decide_surjective(&wr, budget)?;
        let pre = decide_preinjective(&wr, budget)?;
        Ok(CrosscheckRow {
            surjective: sur.surjective,
            preinjective: pre.preinjective,
            method: sur.method,
        })
    })
    .into_iter()
    .collect()
}
