//! Periodic preimages through the product of the de Bruijn graph with a cycle.

use crate::ca::PeriodicConfig;
use crate::error::{check_budget, Error, Result};

use super::graphs::WindowedRule;

/// A periodic `x` with `tau(x) = y`, or `None` when `y` has no preimage at
/// all. A periodic configuration with any preimage has a periodic one, so
/// `None` is a proof of non-membership in the image.
pub fn preimage_periodic(wr: &WindowedRule, y: &PeriodicConfig, budget: u64) -> Result<Option<PeriodicConfig>> {
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
    let wr = wr.padded(2)?;
    let n = y.values().len();
    let nv = wr.num_vertices();
    let na = wr.source_size() as usize;
    let total = nv * n;
    check_budget("preimage product graph", total as u128, budget)?;
    let yv = y.values();
    let table = wr.table();
    let succ = |id: usize, f: &mut dyn FnMut(usize)| {
        let (v, ph) = (id / n, id % n);
        for a in 0..na {
            let e = v * na + a;
            if table[e] == yv[ph] {
                f((e % nv) * n + (ph + 1) % n);
            }
        }
    };

    // Keep vertices with an infinite future.
    let mut deg: Vec<u32> = crate::parallel::map_range(total, |id| {
        let mut d = 0;
        succ(id, &mut |_| d += 1);
        d
    });
    let mut alive = vec![true; total];
    let mut queue: Vec<usize> = (0..total).filter(|&id| deg[id] == 0).collect();
    while let Some(id) = queue.pop() {
        alive[id] = false;
        let (v, ph) = (id / n, id % n);
        let prev = (ph + n - 1) % n;
        for a in 0..na {
            let e = a * nv + v;
            if table[e] == yv[prev] {
                let s = (e / na) * n + prev;
                deg[s] -= 1;
                if deg[s] == 0 {
                    queue.push(s);
                }
            }
        }
    }
    let Some(start) = (0..total).find(|&id| alive[id]) else {
        return Ok(None);
    };

    let mut first_seen = vec![usize::MAX; total];
    let mut path = vec![start];
    first_seen[start] = 0;
    let k = loop {
        let cur = *path.last().expect("nonempty");
        let mut next = None;
        succ(cur, &mut |t| {
            if next.is_none() && alive[t] {
                next = Some(t);
            }
        });
        let t = next.expect("live vertices keep a live successor");
        if first_seen[t] != usize::MAX {
            break first_seen[t];
        }
        first_seen[t] = path.len();
        path.push(t);
    };
    let cycle = &path[k..];
    let period = cycle.len();
    let ph0 = cycle[0] % n;
    // Edge i leaves phase ph0 + i and appends x(ph0 + i + left + w - 1).
    let shift = ph0 as i64 + wr.left() + wr.width() as i64 - 1;
    let mut x = vec![0u32; period];
    for i in 0..period {
        let target = cycle[(i + 1) % period];
        let pos = (shift + i as i64).rem_euclid(period as i64) as usize;
        x[pos] = ((target / n) % na) as u32;
    }
    let x = PeriodicConfig::from_word(wr.ca().source().clone(), &x)?;
    let image = wr.ca().apply(&x)?;
    let ok = image.values().iter().enumerate().all(|(j, &b)| b == yv[j % n]);
    if !ok {
        return Err(Error::InvalidParameter("internal: preimage failed verification".into()));
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::super::graphs::build_windowed;
    use super::*;
    use crate::builtin::*;
    use crate::{Alphabet, DEFAULT_BUDGET};

    fn word(ws: &[u32]) -> PeriodicConfig {
        PeriodicConfig::from_word(Alphabet::binary(), ws).unwrap()
    }

    #[test]
    fn majority_preimages() {
        let wr = build_windowed(&majority_ca(), DEFAULT_BUDGET).unwrap();
        for y in [vec![0u32, 1], vec![0, 0, 1, 1], vec![1]] {
            let x = preimage_periodic(&wr, &word(&y), DEFAULT_BUDGET).unwrap().unwrap();
            assert_eq!(x.values().len() % y.len(), 0);
        }
        // An isolated 1 comes from a 101 block.
        let y = word(&[0, 1, 0, 0, 0]);
        assert!(preimage_periodic(&wr, &y, DEFAULT_BUDGET).unwrap().is_some());
    }

    #[test]
    fn constant_map_has_no_preimage_of_other_symbol() {
        let a = Alphabet::binary();
        let c = constant_ca(a.clone(), a, crate::Symbol(1), 1).unwrap();
        let wr = build_windowed(&c, DEFAULT_BUDGET).unwrap();
        assert!(preimage_periodic(&wr, &word(&[0, 1]), DEFAULT_BUDGET)
            .unwrap()
            .is_none());
        assert!(preimage_periodic(&wr, &word(&[1]), DEFAULT_BUDGET).unwrap().is_some());
    }

    #[test]
    fn agrees_with_brute_force_for_rule_110() {
        let ca = elementary_ca(110);
        let wr = build_windowed(&ca, DEFAULT_BUDGET).unwrap();
        for n in 1..=6usize {
            for idx in 0..(1usize << n) {
                let y: Vec<u32> = (0..n).map(|i| ((idx >> i) & 1) as u32).collect();
                let brute = (0..(1usize << n)).any(|xi| {
                    let x: Vec<u32> = (0..n).map(|i| ((xi >> i) & 1) as u32).collect();
                    ca.apply(&word(&x)).unwrap().values() == y.as_slice()
                });
                let found = preimage_periodic(&wr, &word(&y), DEFAULT_BUDGET).unwrap();
                // `None` rules out preimages of every period.
                if brute {
                    assert!(found.is_some());
                }
            }
        }
    }
}
