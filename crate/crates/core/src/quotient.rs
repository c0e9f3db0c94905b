//! Finite quotient automata.
//!
//! For a full-rank lattice H, configurations fixed by H are exactly the maps
//! `H\Z^d -> A`, so an endomorphic automaton restricts to a self-map of the
//! finite set `A^{H\Z^d}`. Its component at coset `t` reads the coordinates
//! `y(t + m)` (reduced mod H) for `m` in the memory set. Since the quotient
//! is finite, injective and surjective coincide on it; a scan reporting
//! otherwise points at a bug in the construction.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::{tuple_decode, tuple_index, Alphabet, LocalRule, DEFAULT_BUDGET};
use crate::ca::{apply_with_neighbors, CellularAutomaton, PeriodicConfig};
use crate::error::{pow_sat, Error, Result};
use crate::lattice::{same_dim, CosetTable, GroupElement, Index, Lattice};
use crate::parallel;

/// Points at or below this count are checked exhaustively for commutation in scans.
const EXHAUSTIVE_COMMUTATION: u128 = 1 << 16;
const SAMPLED_COMMUTATION: usize = 4096;

/// The self-map of `A^{H\Z^d}` induced by an endomorphic automaton.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    ca: CellularAutomaton,
    rule: LocalRule,
    cosets: Arc<CosetTable>,
    neighbors: Vec<u32>,
    /// Image index of every point, when materialized.
    explicit: Option<Vec<u32>>,
}

pub fn quotient_map(ca: &CellularAutomaton, h: &Lattice, budget: u64) -> Result<QuotientMap> {
    if !ca.is_endomorphic() {
        return Err(Error::AlphabetMismatch(
            "quotient maps need an automaton with equal source and target".into(),
        ));
    }
    same_dim(ca.dim(), h.dim())?;
    if h.index() == Index::Infinite {
        return Err(Error::InfiniteIndex {
            rank: h.rank(),
            dim: h.dim(),
        });
    }
    let cosets = Arc::new(h.cosets()?);
    let neighbors = cosets.neighbor_table(ca.memory())?;
    let rule = ca.fast_rule().into_owned();
    let mut q = QuotientMap {
        ca: ca.clone(),
        rule,
        cosets,
        neighbors,
        explicit: None,
    };
    let points = q.num_points();
    if points <= budget as u128 && points <= u32::MAX as u128 {
        let n = points as usize;
        let base = q.alphabet().size();
        let size = q.cosets.size();
        let mut map = vec![0u32; n];
        parallel::fill_chunks(&mut map, 256, |start, chunk| {
            let mut y = vec![0u32; size];
            for (off, slot) in chunk.iter_mut().enumerate() {
                tuple_decode(start + off, base, &mut y);
                *slot = tuple_index(&q.eval_point(&y), base) as u32;
            }
        });
        q.explicit = Some(map);
    }
    Ok(q)
}

impl QuotientMap {
    pub fn ca(&self) -> &CellularAutomaton {
        &self.ca
    }

    pub fn cosets(&self) -> &CosetTable {
        &self.cosets
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.ca.source()
    }

    /// `|A|^{[Z^d : H]}`.
    pub fn num_points(&self) -> u128 {
        pow_sat(self.alphabet().size() as u64, self.cosets.size())
    }

    pub fn is_explicit(&self) -> bool {
        self.explicit.is_some()
    }

    /// The materialized map on point indices, if within budget.
    pub fn explicit(&self) -> Option<&[u32]> {
        self.explicit.as_deref()
    }

    /// Per-coordinate evaluation: component `t` is the rule applied to
    /// `(y(t + m))_m`.
    pub fn eval_point(&self, y: &[u32]) -> Vec<u32> {
        apply_with_neighbors(&self.rule, &self.neighbors, self.ca.memory().len(), y)
    }

    /// Image of the point with the given mixed-radix index.
    pub fn image_index(&self, idx: usize) -> usize {
        match &self.explicit {
            Some(m) => m[idx] as usize,
            None => {
                let base = self.alphabet().size();
                let mut y = vec![0u32; self.cosets.size()];
                tuple_decode(idx, base, &mut y);
                tuple_index(&self.eval_point(&y), base)
            }
        }
    }

    /// The periodic configuration corresponding to a point of the quotient.
    pub fn embed(&self, y: &[u32]) -> Result<PeriodicConfig> {
        PeriodicConfig::from_raw(self.alphabet().clone(), Arc::clone(&self.cosets), y.to_vec())
    }

    /// Checks `embed(map(y)) == apply(embed(y))` on one point.
    pub fn commutes_at(&self, y: &[u32]) -> Result<bool> {
        let lhs = self.ca.apply(&self.embed(y)?)?;
        Ok(lhs.values() == self.eval_point(y).as_slice())
    }

    /// Commutation on every point (requires the explicit map's budget).
    pub fn commutes_everywhere(&self) -> Result<bool> {
        let n = self.require_explicit()?.len();
        let base = self.alphabet().size();
        let size = self.cosets.size();
        let results = parallel::map_range(n, |idx| {
            let mut y = vec![0u32; size];
            tuple_decode(idx, base, &mut y);
            self.commutes_at(&y)
        });
        for r in results {
            if !r? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Commutation on `samples` pseudo-random points.
    pub fn commutes_sampled(&self, samples: usize, seed: u64) -> Result<bool> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = self.alphabet().size();
        for _ in 0..samples {
            let y: Vec<u32> = (0..self.cosets.size()).map(|_| rng.gen_range(0..base)).collect();
            if !self.commutes_at(&y)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn require_explicit(&self) -> Result<&[u32]> {
        self.explicit.as_deref().ok_or(Error::BudgetExceeded {
            what: "explicit quotient map",
            needed: self.num_points(),
            budget: DEFAULT_BUDGET,
        })
    }

    /// Searches `samples` random points for two with the same image. A hit
    /// certifies non-injectivity; a miss proves nothing.
    pub fn sampled_collision(&self, samples: usize, seed: u64) -> Option<(Vec<u32>, Vec<u32>)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = self.alphabet().size();
        let mut seen = std::collections::HashMap::new();
        for _ in 0..samples {
            let y: Vec<u32> = (0..self.cosets.size()).map(|_| rng.gen_range(0..base)).collect();
            let img = self.eval_point(&y);
            if let Some(prev) = seen.insert(img.clone(), y.clone()) {
                if prev != y {
                    return Some((prev, y));
                }
            }
        }
        None
    }
}

/// Exact injectivity of the quotient map by enumeration.
pub fn quotient_injective(q: &QuotientMap) -> Result<bool> {
    let map = q.require_explicit()?;
    let mut hit = vec![false; map.len()];
    for &v in map {
        if std::mem::replace(&mut hit[v as usize], true) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact surjectivity of the quotient map by enumeration.
pub fn quotient_surjective(q: &QuotientMap) -> Result<bool> {
    let map = q.require_explicit()?;
    let mut hit = vec![false; map.len()];
    for &v in map {
        hit[v as usize] = true;
    }
    Ok(hit.into_iter().all(|h| h))
}

/// One lattice of a surjunctivity scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRow {
    pub lattice: Lattice,
    pub index: u64,
    pub injective: Option<bool>,
    pub surjective: Option<bool>,
    /// Commutation result and whether it was checked on every point.
    pub commutes: Option<bool>,
    pub commutation_exhaustive: bool,
    pub flags: Vec<String>,
    pub skipped: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    pub dim: usize,
    pub max_index: u64,
    pub rows: Vec<ScanRow>,
    pub notes: Vec<String>,
}

impl ScanReport {
    /// Rows where the quotient is injective but not surjective.
    pub fn surjunctivity_violations(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| r.injective == Some(true) && r.surjective == Some(false))
            .count()
    }

    pub fn commutation_failures(&self) -> usize {
        self.rows.iter().filter(|r| r.commutes == Some(false)).count()
    }

    pub fn flagged(&self) -> usize {
        self.rows.iter().filter(|r| !r.flags.is_empty()).count()
    }

    pub fn skipped(&self) -> usize {
        self.rows.iter().filter(|r| r.skipped.is_some()).count()
    }
}

/// Builds every quotient for full-rank lattices of index `1..=max_index`
/// and records injectivity, surjectivity and commutation.
pub fn surjunctivity_scan(ca: &CellularAutomaton, max_index: u64, budget: u64) -> Result<ScanReport> {
    if !ca.is_endomorphic() {
        return Err(Error::AlphabetMismatch(
            "surjunctivity scans need an endomorphic automaton".into(),
        ));
    }
    let mut lattices = Vec::new();
    for n in 1..=max_index {
        lattices.extend(Lattice::all_of_index(ca.dim(), n)?);
    }
    let rows = parallel::map_slice(&lattices, |l| scan_one(ca, l, budget));
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let mut notes = Vec::new();
    if ca.dim() >= 2 {
        notes.push(
            "dimension >= 2: no decision of injectivity or surjectivity on the full shift is attempted; \
             quotient scans are the only evidence"
                .to_string(),
        );
    }
    Ok(ScanReport {
        dim: ca.dim(),
        max_index,
        rows,
        notes,
    })
}

fn scan_one(ca: &CellularAutomaton, lattice: &Lattice, budget: u64) -> Result<ScanRow> {
    let index = match lattice.index() {
        Index::Finite(n) => n,
        Index::Infinite => unreachable!("enumerated lattices are full rank"),
    };
    let mut row = ScanRow {
        lattice: lattice.clone(),
        index,
        injective: None,
        surjective: None,
        commutes: None,
        commutation_exhaustive: false,
        flags: Vec::new(),
        skipped: None,
    };
    let q = quotient_map(ca, lattice, budget)?;
    if !q.is_explicit() {
        row.skipped = Some(format!("{} points exceed the budget of {budget}", q.num_points()));
        let commutes = q.commutes_sampled(SAMPLED_COMMUTATION, index)?;
        row.commutes = Some(commutes);
        if !commutes {
            row.flags.push("commutation failure".into());
        }
        return Ok(row);
    }
    let inj = quotient_injective(&q)?;
    let surj = quotient_surjective(&q)?;
    row.injective = Some(inj);
    row.surjective = Some(surj);
    if inj && !surj {
        row.flags.push("injective but not surjective".into());
    }
    let exhaustive = q.num_points() <= EXHAUSTIVE_COMMUTATION;
    let commutes = if exhaustive {
        q.commutes_everywhere()?
    } else {
        q.commutes_sampled(SAMPLED_COMMUTATION, index)?
    };
    row.commutes = Some(commutes);
    row.commutation_exhaustive = exhaustive;
    if !commutes {
        row.flags.push("commutation failure".into());
    }
    Ok(row)
}

/// A periodic configuration agreeing with `pattern` on the box `lo..=hi`.
///
/// The pattern lists the box cells in lexicographic order and is tiled with
/// period lattice `diag(hi - lo + 1)`.
pub fn periodic_density_check(
    alphabet: &Alphabet,
    dim: usize,
    lo: &[i64],
    hi: &[i64],
    pattern: &[u32],
) -> Result<PeriodicConfig> {
    same_dim(dim, lo.len())?;
    same_dim(dim, hi.len())?;
    let extents: Vec<i64> = lo.iter().zip(hi).map(|(a, b)| b - a + 1).collect();
    if extents.iter().any(|&e| e <= 0) {
        return Err(Error::InvalidParameter("empty window".into()));
    }
    let cells: i64 = extents.iter().product();
    if pattern.len() as i64 != cells {
        return Err(Error::InvalidParameter(format!(
            "pattern has {} cells, window has {cells}",
            pattern.len()
        )));
    }
    let cosets = Arc::new(Lattice::diagonal(&extents)?.cosets()?);
    PeriodicConfig::from_fn(alphabet.clone(), cosets, |t: &GroupElement| {
        let offset =
            t.0.iter()
                .zip(lo)
                .zip(&extents)
                .fold(0i64, |acc, ((&x, &l), &e)| acc * e + (x - l).rem_euclid(e));
        pattern[offset as usize]
    })
}
