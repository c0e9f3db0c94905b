//! Projective sequences of finite sets, universal elements and limit threads.

use crate::ca::PeriodicConfig;
use crate::error::{check_budget, Error, Result};
use crate::onedim::WindowedRule;

/// Finite sets `X_0, ..., X_N` (elements `0..sizes[n]`) with step maps
/// `g_n: X_{n+1} -> X_n` stored as `steps[n][x] = g_n(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveSequence {
    sizes: Vec<usize>,
    steps: Vec<Vec<u32>>,
}

/// The stable image `f_{nN}(X_N)` inside `X_n`, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalSet {
    pub elements: Vec<u32>,
    /// The image chain became constant before the horizon.
    pub certified: bool,
}

impl ProjectiveSequence {
    pub fn new(sizes: Vec<usize>, steps: Vec<Vec<u32>>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::InvalidParameter("a sequence needs at least one set".into()));
        }
        if steps.len() + 1 != sizes.len() {
            return Err(Error::InvalidParameter(format!(
                "{} sets need {} step maps, got {}",
                sizes.len(),
                sizes.len() - 1,
                steps.len()
            )));
        }
        for (n, g) in steps.iter().enumerate() {
            if g.len() != sizes[n + 1] {
                return Err(Error::InvalidParameter(format!(
                    "step {n} has {} entries, X_{} has {} elements",
                    g.len(),
                    n + 1,
                    sizes[n + 1]
                )));
            }
            if let Some(&bad) = g.iter().find(|&&x| x as usize >= sizes[n]) {
                return Err(Error::SymbolOutOfRange {
                    symbol: bad as u64,
                    size: sizes[n] as u64,
                });
            }
        }
        Ok(ProjectiveSequence { sizes, steps })
    }

    /// Index `N` of the last set.
    pub fn horizon(&self) -> usize {
        self.sizes.len() - 1
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn steps(&self) -> &[Vec<u32>] {
        &self.steps
    }

    fn check_level(&self, n: usize) -> Result<()> {
        if n > self.horizon() {
            return Err(Error::InvalidParameter(format!(
                "level {n} beyond horizon {}",
                self.horizon()
            )));
        }
        Ok(())
    }

    /// `f_{nm} = g_n o ... o g_{m-1}` as a table on `X_m`.
    pub fn composite(&self, n: usize, m: usize) -> Result<Vec<u32>> {
        self.check_level(m)?;
        if n > m {
            return Err(Error::InvalidParameter(format!(
                "composite needs n <= m, got {n} > {m}"
            )));
        }
        Ok((0..self.sizes[m] as u32)
            .map(|mut x| {
                for k in (n..m).rev() {
                    x = self.steps[k][x as usize];
                }
                x
            })
            .collect())
    }

    pub fn universal_elements(&self, n: usize) -> Result<UniversalSet> {
        self.check_level(n)?;
        // image[m] marks f_{nm}(X_m); walk m upward, pulling images back.
        let mut current: Vec<bool> = vec![true; self.sizes[n]];
        let mut level_map: Vec<u32> = (0..self.sizes[n] as u32).collect();
        let mut certified = n == self.horizon();
        for m in n..self.horizon() {
            level_map = self.steps[m].iter().map(|&x| level_map[x as usize]).collect();
            let mut next = vec![false; self.sizes[n]];
            for &x in &level_map {
                next[x as usize] = true;
            }
            certified = next == current;
            current = next;
        }
        Ok(UniversalSet {
            elements: (0..self.sizes[n] as u32).filter(|&x| current[x as usize]).collect(),
            certified,
        })
    }

    /// The sequence of universal-element sets `X_n'`.
    pub fn universal_sets(&self) -> Vec<Vec<u32>> {
        (0..=self.horizon())
            .map(|n| self.universal_elements(n).expect("level in range").elements)
            .collect()
    }

    pub fn limit_nonempty(&self) -> bool {
        self.extract_limit().is_some()
    }

    /// A thread `(x_0, ..., x_N)` with `x_n = g_n(x_{n+1})`, chosen greedily
    /// from the least universal element upward. Each restricted step map is
    /// onto, so the greedy choice never gets stuck.
    pub fn extract_limit(&self) -> Option<Vec<u32>> {
        if self.sizes.contains(&0) {
            return None;
        }
        let universal = self.universal_sets();
        let mut thread = vec![*universal[0].first()?];
        for n in 0..self.horizon() {
            let below = thread[n];
            let next = universal[n + 1]
                .iter()
                .copied()
                .find(|&x| self.steps[n][x as usize] == below)?;
            thread.push(next);
        }
        self.is_thread(&thread).then_some(thread)
    }

    pub fn is_thread(&self, thread: &[u32]) -> bool {
        thread.len() == self.sizes.len()
            && thread.iter().zip(&self.sizes).all(|(&x, &s)| (x as usize) < s)
            && (0..self.horizon()).all(|n| self.steps[n][thread[n + 1] as usize] == thread[n])
    }

    /// All threads whose entries lie in `allowed[n]` at each level, in
    /// lexicographic order.
    pub fn threads_within(&self, allowed: &[Vec<u32>]) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut partial = Vec::with_capacity(self.sizes.len());
        for &x in allowed.first().map(Vec::as_slice).unwrap_or(&[]) {
            partial.push(x);
            self.extend_threads(allowed, &mut partial, &mut out);
            partial.pop();
        }
        out
    }

    fn extend_threads(&self, allowed: &[Vec<u32>], partial: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let n = partial.len() - 1;
        if n == self.horizon() {
            out.push(partial.clone());
            return;
        }
        for &x in &allowed[n + 1] {
            if self.steps[n][x as usize] == partial[n] {
                partial.push(x);
                self.extend_threads(allowed, partial, out);
                partial.pop();
            }
        }
    }

    /// Every thread of the sequence.
    pub fn threads(&self) -> Vec<Vec<u32>> {
        let all: Vec<Vec<u32>> = self.sizes.iter().map(|&s| (0..s as u32).collect()).collect();
        self.threads_within(&all)
    }
}

/// A preimage window produced by [`closed_image_demo`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedImageThread {
    /// Leftmost position of the window.
    pub lo: i64,
    /// Input symbols on `lo..lo + window.len()`.
    pub window: Vec<u32>,
    /// The sequence of windowed preimage sets that was searched.
    pub sequence: ProjectiveSequence,
}

/// Builds `X_n = { u in A^{E_n} : tau(u) = y on F_n }` for
/// `E_n = [-n-c, n+c]`, with `F_n` the positions whose neighbourhood lies
/// in `E_n` and cropping as step maps, then extracts a thread. `None`
/// means some `X_n` is empty, so `y` is not in the image.
pub fn closed_image_demo(
    wr: &WindowedRule,
    y: &PeriodicConfig,
    horizon: Option<usize>,
    budget: u64,
) -> Result<Option<ClosedImageThread>> {
    if y.cosets().dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: y.cosets().dim(),
        });
    }
    if y.alphabet() != wr.ca().target() {
        return Err(Error::AlphabetMismatch(
            "configuration is not over the target alphabet".into(),
        ));
    }
    let period = y.values().len() as i64;
    let horizon = horizon.unwrap_or(period as usize + 4);
    let (l, r) = (wr.left(), wr.right());
    let c = l.abs().max(r.abs());
    let w = wr.width();
    let na = wr.source_size();
    let target = |j: i64| y.values()[j.rem_euclid(period) as usize];
    // u covers E_n = [-n-c, n+c]; output j needs u on [j+l, j+r].
    let consistent = |u: &[u32], lo: i64, js: &[i64]| {
        js.iter().all(|&j| {
            let s = (j + l - lo) as usize;
            wr.output(&u[s..s + w]) == target(j)
        })
    };

    let base_len = (2 * c + 1) as usize;
    check_budget(
        "closed-image base level",
        crate::error::pow_sat(na as u64, base_len),
        budget,
    )?;
    let mut levels: Vec<Vec<Vec<u32>>> = Vec::with_capacity(horizon + 1);
    let mut level0 = Vec::new();
    let mut u = vec![0u32; base_len];
    let base_outputs: Vec<i64> = (-c - l..=c - r).collect();
    for idx in 0..(na as usize).pow(base_len as u32) {
        crate::alphabet::tuple_decode(idx, na, &mut u);
        if consistent(&u, -c, &base_outputs) {
            level0.push(u.clone());
        }
    }
    levels.push(level0);
    let mut steps = Vec::with_capacity(horizon);
    let mut total: u128 = levels[0].len() as u128;
    for n in 1..=horizon as i64 {
        let prev = &levels[n as usize - 1];
        total += (prev.len() as u128) * u128::from(na) * u128::from(na);
        check_budget("closed-image levels", total, budget)?;
        let lo = -n - c;
        let mut next = Vec::new();
        let mut step = Vec::new();
        for (pi, core) in prev.iter().enumerate() {
            for a in 0..na {
                for b in 0..na {
                    let mut v = Vec::with_capacity(core.len() + 2);
                    v.push(a);
                    v.extend_from_slice(core);
                    v.push(b);
                    if consistent(&v, lo, &[-n - c - l, n + c - r]) {
                        next.push(v);
                        step.push(pi as u32);
                    }
                }
            }
        }
        levels.push(next);
        steps.push(step);
    }
    let sizes: Vec<usize> = levels.iter().map(Vec::len).collect();
    let sequence = ProjectiveSequence::new(sizes, steps)?;
    let Some(thread) = sequence.extract_limit() else {
        return Ok(None);
    };
    let top = levels[horizon][thread[horizon] as usize].clone();
    Ok(Some(ClosedImageThread {
        lo: -(horizon as i64) - c,
        window: top,
        sequence,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::*;
    use crate::onedim::{build_windowed, preimage_periodic};
    use crate::{Alphabet, DEFAULT_BUDGET};

    fn seq(sizes: &[usize], steps: &[&[u32]]) -> ProjectiveSequence {
        ProjectiveSequence::new(sizes.to_vec(), steps.iter().map(|s| s.to_vec()).collect()).unwrap()
    }

    #[test]
    fn composites_obey_laws() {
        let s = seq(&[2, 3, 3], &[&[0, 1, 1], &[2, 0, 1]]);
        assert_eq!(s.composite(1, 1).unwrap(), vec![0, 1, 2]);
        assert_eq!(s.composite(0, 2).unwrap(), vec![1, 0, 1]);
        assert!(s.composite(2, 1).is_err());
        assert!(s.composite(0, 3).is_err());
    }

    #[test]
    fn universal_examples() {
        let s = seq(&[2, 2, 2], &[&[1, 0], &[0, 1]]);
        assert_eq!(s.universal_elements(0).unwrap().elements, vec![0, 1]);
        let s = seq(&[2, 2, 2, 2], &[&[0, 0], &[0, 0], &[0, 0]]);
        let u = s.universal_elements(0).unwrap();
        assert_eq!(u.elements, vec![0]);
        assert!(u.certified);
    }

    #[test]
    fn empty_level_has_no_limit() {
        let s = seq(&[2, 0], &[&[]]);
        assert!(!s.limit_nonempty());
        let s = seq(&[1, 1, 1], &[&[0], &[0]]);
        assert_eq!(s.extract_limit(), Some(vec![0, 0, 0]));
    }

    #[test]
    fn malformed_sequences_rejected() {
        assert!(ProjectiveSequence::new(vec![1, 2], vec![vec![0]]).is_err());
        assert!(ProjectiveSequence::new(vec![1, 1], vec![vec![1]]).is_err());
        assert!(ProjectiveSequence::new(vec![], vec![]).is_err());
    }

    #[test]
    fn identity_demo_reproduces_y() {
        let a = Alphabet::finite(3).unwrap();
        let id = identity_ca(a.clone(), 1);
        let wr = build_windowed(&id, DEFAULT_BUDGET).unwrap();
        let y = PeriodicConfig::from_word(a, &[2, 0, 1]).unwrap();
        let t = closed_image_demo(&wr, &y, None, DEFAULT_BUDGET).unwrap().unwrap();
        for (k, &s) in t.window.iter().enumerate() {
            assert_eq!(s, y.values()[(t.lo + k as i64).rem_euclid(3) as usize]);
        }
    }

    #[test]
    fn demo_agrees_with_periodic_preimages() {
        let b = Alphabet::binary();
        for (ca, y) in [
            (xor_ca(), vec![0u32, 1]),
            (majority_ca(), vec![0, 1, 0, 1, 1, 0]),
            (majority_ca(), vec![1, 1, 0, 1, 0, 0]),
            (elementary_ca(110), vec![1, 1, 1, 1, 1]),
        ] {
            let wr = build_windowed(&ca, DEFAULT_BUDGET).unwrap();
            let y = PeriodicConfig::from_word(b.clone(), &y).unwrap();
            let demo = closed_image_demo(&wr, &y, None, DEFAULT_BUDGET).unwrap();
            let pre = preimage_periodic(&wr, &y, DEFAULT_BUDGET).unwrap();
            assert_eq!(demo.is_some(), pre.is_some());
        }
    }
}
