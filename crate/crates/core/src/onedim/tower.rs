//! The tower `x(n) - p x(n+1)` over `Z/p^e` for increasing `e`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::builtin::padic_step_ca;
use crate::error::Result;
use crate::parallel;

use super::decide::decide_injective;
use super::graphs::build_windowed;
use super::inverse::{synthesize_inverse, InverseOutcome};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerRow {
    pub e: u32,
    pub injective: bool,
    pub bijective: bool,
    /// Memory of the minimized inverse, when one was found.
    pub inverse_memory: Option<Vec<i64>>,
    /// Linear coefficients of the inverse, one per memory element.
    pub inverse_coefficients: Option<Vec<u32>>,
    /// The inverse is `y -> sum_{k<e} p^k y(n+k)`, checked on coefficients
    /// and by evaluation.
    pub matches_series: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerReport {
    pub p: u32,
    pub rows: Vec<TowerRow>,
    /// Inverse memory sets grow strictly with `e`.
    pub memory_strictly_increasing: bool,
}

impl TowerReport {
    pub fn all_match(&self) -> bool {
        self.memory_strictly_increasing && self.rows.iter().all(|r| r.bijective && r.matches_series)
    }
}

const EVAL_SAMPLES: usize = 2048;

pub fn padic_tower_report(p: u32, max_e: u32, budget: u64) -> Result<TowerReport> {
    let rows: Vec<Result<TowerRow>> = parallel::map_range(max_e as usize, |i| tower_row(p, i as u32 + 1, budget));
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let memory_strictly_increasing = rows
        .windows(2)
        .all(|w| match (&w[0].inverse_memory, &w[1].inverse_memory) {
            (Some(a), Some(b)) => a.len() < b.len() && a.iter().all(|m| b.contains(m)),
            _ => false,
        })
        && rows.iter().all(|r| r.inverse_memory.is_some());
    Ok(TowerReport {
        p,
        rows,
        memory_strictly_increasing,
    })
}

fn tower_row(p: u32, e: u32, budget: u64) -> Result<TowerRow> {
    let ca = padic_step_ca(p, e)?;
    let wr = build_windowed(&ca, budget)?;
    let injective = decide_injective(&wr, budget)?.injective;
    let outcome = synthesize_inverse(&ca, None, budget)?;
    let InverseOutcome::Found { inverse, .. } = outcome else {
        return Ok(TowerRow {
            e,
            injective,
            bijective: false,
            inverse_memory: None,
            inverse_coefficients: None,
            matches_series: false,
        });
    };
    let memory: Vec<i64> = inverse.memory().iter().map(|g| g.0[0]).collect();
    let coeffs: Vec<u32> = inverse
        .rule()
        .as_linear()
        .map(|ms| ms.iter().map(|m| m.get(0, 0)).collect())
        .unwrap_or_default();
    let modulus = (p as u64).pow(e);
    let series: Vec<u32> = (0..e).map(|k| ((p as u64).pow(k) % modulus) as u32).collect();
    let coefficients_ok = memory == (0..e as i64).collect::<Vec<_>>() && coeffs == series;

    let mut rng = ChaCha8Rng::seed_from_u64(u64::from(p) << 32 | u64::from(e));
    let arity = inverse.memory().len();
    let evaluation_ok = (0..EVAL_SAMPLES).all(|_| {
        let args: Vec<u32> = (0..arity).map(|_| rng.gen_range(0..modulus) as u32).collect();
        let expect = args
            .iter()
            .zip(&series)
            .fold(0u64, |acc, (&y, &c)| (acc + y as u64 * c as u64) % modulus) as u32;
        let syms: Vec<crate::Symbol> = args.iter().map(|&a| crate::Symbol(a)).collect();
        inverse.rule().eval_rule(&syms).map(|s| s.0) == Ok(expect)
    });

    Ok(TowerRow {
        e,
        injective,
        bijective: true,
        inverse_memory: Some(memory),
        inverse_coefficients: Some(coeffs),
        matches_series: coefficients_ok && evaluation_ok,
    })
}
