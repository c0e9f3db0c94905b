//! Rule corpora: the elementary rules and seeded random automata.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::{Alphabet, LocalRule, Matrix};
use crate::builtin::elementary_ca;
use crate::ca::CellularAutomaton;
use crate::error::{check_budget, pow_sat, Result};
use crate::lattice::GroupElement;

/// A reproducible generator for the random corpora.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All 256 width-3 binary rules, by number.
pub fn elementary_corpus() -> Vec<CellularAutomaton> {
    (0..=255u8).map(elementary_ca).collect()
}

/// A uniformly random table rule on `Z` with memory `left..left + width`.
pub fn random_table_ca(
    rng: &mut impl Rng,
    source: &Alphabet,
    target: &Alphabet,
    left: i64,
    width: usize,
    budget: u64,
) -> Result<CellularAutomaton> {
    let memory: Vec<GroupElement> = (0..width as i64).map(|k| GroupElement::scalar(left + k)).collect();
    random_table_ca_with_memory(rng, source, target, 1, memory, budget)
}

/// A uniformly random table rule with the given memory set.
pub fn random_table_ca_with_memory(
    rng: &mut impl Rng,
    source: &Alphabet,
    target: &Alphabet,
    dim: usize,
    memory: Vec<GroupElement>,
    budget: u64,
) -> Result<CellularAutomaton> {
    let n = pow_sat(source.size() as u64, memory.len());
    check_budget("random rule table", n, budget)?;
    let nb = target.size();
    let entries = (0..n).map(|_| rng.gen_range(0..nb)).collect();
    let rule = LocalRule::table(source.clone(), target.clone(), memory.len(), entries)?;
    CellularAutomaton::new(dim, memory, rule)
}

/// A random linear rule over a structured alphabet with the given memory.
pub fn random_linear_ca(
    rng: &mut impl Rng,
    alphabet: &Alphabet,
    dim: usize,
    memory: Vec<GroupElement>,
) -> Result<CellularAutomaton> {
    let k = alphabet.rank();
    let q = alphabet.ring().map_or(alphabet.size(), |r| r.size());
    let mats = memory
        .iter()
        .map(|_| {
            let rows = (0..k).map(|_| (0..k).map(|_| rng.gen_range(0..q)).collect()).collect();
            Matrix::from_rows(rows)
        })
        .collect::<Result<Vec<_>>>()?;
    let rule = LocalRule::linear(alphabet.clone(), alphabet.clone(), mats)?;
    CellularAutomaton::new(dim, memory, rule)
}

/// `count` distinct points of the box `[-radius, radius]^dim`, sorted.
pub fn random_memory(rng: &mut impl Rng, dim: usize, radius: i64, count: usize) -> Vec<GroupElement> {
    let side = (2 * radius + 1) as usize;
    let total = side.pow(dim as u32);
    let mut picks: Vec<usize> = (0..total).collect();
    picks.shuffle(rng);
    let mut out: Vec<GroupElement> = picks[..count.min(total)]
        .iter()
        .map(|&idx| {
            let mut rest = idx;
            let coords = (0..dim)
                .map(|_| {
                    let c = (rest % side) as i64 - radius;
                    rest /= side;
                    c
                })
                .collect();
            GroupElement(coords)
        })
        .collect();
    out.sort();
    out
}
