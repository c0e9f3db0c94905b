//! Inverse automata of bijective one-dimensional automata.

use crate::alphabet::{common_ring, tuple_decode, LocalRule, Matrix, RuleBody};
use crate::ca::{compose, CellularAutomaton};
use crate::error::{check_budget, pow_sat, Result};
use crate::lattice::GroupElement;
use crate::linsolve;

use super::decide::{decide_injective, decide_surjective};
use super::graphs::{build_windowed, WindowedRule};

#[derive(Debug, Clone, PartialEq)]
pub enum InverseOutcome {
    /// A certified inverse, minimized, found at window radius `radius`.
    Found {
        inverse: CellularAutomaton,
        radius: usize,
    },
    NotBijective {
        injective: bool,
        surjective: bool,
    },
    /// The automaton is bijective but no inverse was found within the caps.
    Inconclusive {
        reason: String,
    },
}

/// Default radius cap: `|A|^(2(w-1))` beyond the smallest radius whose
/// window reaches the origin, where `w` is the window width.
pub fn default_max_radius(wr: &WindowedRule) -> usize {
    let bound = pow_sat(wr.source_size() as u64, 2 * (wr.width().max(1) - 1));
    let bound = usize::try_from(bound).unwrap_or(usize::MAX).max(1);
    min_radius(wr).saturating_add(bound)
}

fn min_radius(wr: &WindowedRule) -> usize {
    wr.left().max(-wr.right()).max(0) as usize
}

pub fn synthesize_inverse(ca: &CellularAutomaton, max_radius: Option<usize>, budget: u64) -> Result<InverseOutcome> {
    let wr = build_windowed(ca, budget)?;
    let injective = decide_injective(&wr, budget)?.injective;
    let surjective = if injective && wr.source_size() == wr.target_size() {
        true
    } else {
        decide_surjective(&wr, budget)?.surjective
    };
    if !(injective && surjective) {
        return Ok(InverseOutcome::NotBijective { injective, surjective });
    }
    let max_radius = max_radius.unwrap_or_else(|| default_max_radius(&wr));
    let linear = matches!(ca.rule().body(), RuleBody::Linear(_)) && common_ring(ca.source(), ca.target()).is_ok();
    for radius in min_radius(&wr)..=max_radius {
        let candidate = if linear {
            linear_candidate(ca, &wr, radius)?
        } else {
            match table_candidate(ca, &wr, radius, budget) {
                Ok(c) => c,
                Err(crate::Error::BudgetExceeded { needed, .. }) => {
                    return Ok(InverseOutcome::Inconclusive {
                        reason: format!(
                            "radius {radius} needs {needed} window evaluations, over the budget of {budget}"
                        ),
                    });
                }
                Err(e) => return Err(e),
            }
        };
        let Some(nu) = candidate else { continue };
        let nu = nu.minimize(budget)?;
        if certify(ca, &nu, budget)? {
            return Ok(InverseOutcome::Found { inverse: nu, radius });
        }
    }
    Ok(InverseOutcome::Inconclusive {
        reason: format!("no inverse with radius at most {max_radius}"),
    })
}

/// Both composites minimize to the identity.
pub fn certify(tau: &CellularAutomaton, nu: &CellularAutomaton, budget: u64) -> Result<bool> {
    Ok(compose(nu, tau, budget)?.minimize(budget)?.is_identity()
        && compose(tau, nu, budget)?.minimize(budget)?.is_identity())
}

/// Reads `x(0)` off the outputs at `-radius..=radius`, provided those
/// outputs determine it.
fn table_candidate(
    ca: &CellularAutomaton,
    wr: &WindowedRule,
    radius: usize,
    budget: u64,
) -> Result<Option<CellularAutomaton>> {
    let (na, nb) = (wr.source_size(), wr.target_size());
    let w = wr.width();
    let k = 2 * radius + 1;
    let len = 2 * radius + w;
    check_budget("inverse input words", pow_sat(na as u64, len), budget)?;
    check_budget("inverse table", pow_sat(nb as u64, k), budget)?;
    let centre = (radius as i64 - wr.left()) as usize;
    let mut table = vec![u32::MAX; pow_sat(nb as u64, k) as usize];
    let mut word = vec![0u32; len];
    for idx in 0..pow_sat(na as u64, len) as usize {
        tuple_decode(idx, na, &mut word);
        let out = (0..k).fold(0usize, |acc, j| acc * nb as usize + wr.output(&word[j..j + w]) as usize);
        let c = word[centre];
        match table[out] {
            u32::MAX => table[out] = c,
            prev if prev != c => return Ok(None),
            _ => {}
        }
    }
    // Words outside the image never occur for a surjective map.
    for slot in table.iter_mut().filter(|s| **s == u32::MAX) {
        *slot = 0;
    }
    let memory = (-(radius as i64)..=radius as i64).map(GroupElement::scalar).collect();
    let rule = LocalRule::table(ca.target().clone(), ca.source().clone(), k, table)?;
    Ok(Some(CellularAutomaton::new(1, memory, rule)?))
}

/// Solves `sum_{j + m = s} N_j M_m = [s = 0] I` for coefficient matrices
/// `N_j`, `|j| <= radius`.
fn linear_candidate(ca: &CellularAutomaton, wr: &WindowedRule, radius: usize) -> Result<Option<CellularAutomaton>> {
    let ring = common_ring(ca.source(), ca.target())?;
    let mats = ca.rule().as_linear().expect("linear rule");
    let ka = ca.source().rank();
    let kb = ca.target().rank();
    let r = radius as i64;
    let offsets: Vec<i64> = ca.memory().iter().map(|m| m.0[0]).collect();
    let coeff = |m: i64| offsets.iter().position(|&o| o == m).map(|i| &mats[i]);
    let (lo, hi) = (wr.left() - r, wr.right() + r);
    let rows = ((hi - lo + 1) as usize) * ka;
    let cols = (2 * radius + 1) * kb;
    let mut a = Matrix::zeros(rows, cols);
    for s in lo..=hi {
        for c in 0..ka {
            let row = (s - lo) as usize * ka + c;
            for j in -r..=r {
                if let Some(m) = coeff(s - j) {
                    for b in 0..kb {
                        a.set(row, (j + r) as usize * kb + b, m.get(b, c));
                    }
                }
            }
        }
    }
    let mut n = vec![Matrix::zeros(ka, kb); 2 * radius + 1];
    for i in 0..ka {
        let mut rhs = vec![0u32; rows];
        rhs[(0 - lo) as usize * ka + i] = ring.one();
        let Some(sol) = linsolve::solve(ring, &a, &rhs) else {
            return Ok(None);
        };
        for (j, nj) in n.iter_mut().enumerate() {
            for b in 0..kb {
                nj.set(i, b, sol[j * kb + b]);
            }
        }
    }
    let memory = (-r..=r).map(GroupElement::scalar).collect();
    let rule = LocalRule::linear(ca.target().clone(), ca.source().clone(), n)?;
    Ok(Some(CellularAutomaton::new(1, memory, rule)?))
}
