//! Injectivity, surjectivity and pre-injectivity of one-dimensional automata.

use std::collections::{HashMap, VecDeque};

use crate::alphabet::{tuple_decode, Symbol};
use crate::ca::CellularAutomaton;
use crate::error::{check_budget, Error, Result};
use crate::parallel;

use super::graphs::{build_pair, PairGraph, WindowedRule};

/// A configuration of Z that is periodic to the left and to the right.
/// `middle` occupies positions `0..middle.len()`, `left` fills
/// `-left.len()..0` and repeats leftwards, `right` repeats after `middle`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventuallyPeriodic {
    pub left: Vec<u32>,
    pub middle: Vec<u32>,
    pub right: Vec<u32>,
}

impl EventuallyPeriodic {
    pub fn new(left: Vec<u32>, middle: Vec<u32>, right: Vec<u32>) -> Result<Self> {
        if left.is_empty() || right.is_empty() {
            return Err(Error::InvalidParameter("periodic tails must be nonempty".into()));
        }
        Ok(EventuallyPeriodic { left, middle, right })
    }

    pub fn at(&self, i: i64) -> u32 {
        let m = self.middle.len() as i64;
        if i < 0 {
            self.left[i.rem_euclid(self.left.len() as i64) as usize]
        } else if i < m {
            self.middle[i as usize]
        } else {
            self.right[((i - m) as usize) % self.right.len()]
        }
    }

    /// Positions in `lo..=hi` where the two configurations differ.
    pub fn differences(&self, other: &EventuallyPeriodic, lo: i64, hi: i64) -> Vec<i64> {
        (lo..=hi).filter(|&i| self.at(i) != other.at(i)).collect()
    }

    fn horizon(&self) -> i64 {
        (self.left.len() + self.middle.len() + self.right.len()) as i64
    }
}

/// `tau(x)(j)` computed from the automaton's own local rule.
pub fn image_at(ca: &CellularAutomaton, x: &EventuallyPeriodic, j: i64) -> u32 {
    let args: Vec<Symbol> = ca.memory().iter().map(|m| Symbol(x.at(j + m.0[0]))).collect();
    ca.rule()
        .eval_rule(&args)
        .expect("symbols come from the source alphabet")
        .0
}

/// Whether `tau(x) = tau(y)` everywhere. Both images are periodic outside a
/// bounded window, so a window covering one full period of each tail beyond
/// the memory span decides equality.
pub fn same_image(ca: &CellularAutomaton, x: &EventuallyPeriodic, y: &EventuallyPeriodic) -> bool {
    let span = ca.memory().iter().map(|m| m.0[0].abs()).max().unwrap_or(0) + 1;
    let reach = x.horizon().max(y.horizon()) * 2 + 2 * span;
    parallel::all_range((2 * reach + 1) as usize, |k| {
        let j = k as i64 - reach;
        image_at(ca, x, j) == image_at(ca, y, j)
    })
}

/// Two distinct configurations with the same image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InjectivityWitness {
    pub first: EventuallyPeriodic,
    pub second: EventuallyPeriodic,
}

impl InjectivityWitness {
    pub fn verify(&self, ca: &CellularAutomaton) -> bool {
        let h = self.first.horizon().max(self.second.horizon()) * 2;
        !self.first.differences(&self.second, -h, h).is_empty() && same_image(ca, &self.first, &self.second)
    }
}

/// Two asymptotic configurations, differing exactly on `lo..=hi`, with the
/// same image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiamondWitness {
    pub first: EventuallyPeriodic,
    pub second: EventuallyPeriodic,
    pub lo: i64,
    pub hi: i64,
}

impl DiamondWitness {
    pub fn verify(&self, ca: &CellularAutomaton) -> bool {
        let h = self.first.horizon().max(self.second.horizon()) * 2;
        let diff = self.first.differences(&self.second, -h, h);
        self.first.left == self.second.left
            && self.first.right == self.second.right
            && diff.first() == Some(&self.lo)
            && diff.last() == Some(&self.hi)
            && same_image(ca, &self.first, &self.second)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurjectivityWitness {
    /// A finite word over the target alphabet with no preimage.
    Orphan(Vec<u32>),
    /// A failure of pre-injectivity; by the Garden of Eden theorem this
    /// implies an orphan exists.
    Diamond(DiamondWitness),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurjectivityMethod {
    Powerset,
    PreInjectivity,
    Counting,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InjectivityVerdict {
    pub injective: bool,
    pub witness: Option<InjectivityWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurjectivityVerdict {
    pub surjective: bool,
    pub method: SurjectivityMethod,
    pub witness: Option<SurjectivityWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreinjectivityVerdict {
    pub preinjective: bool,
    pub witness: Option<DiamondWitness>,
}

/// Vertices of the pair graph lying on a bi-infinite walk in the given
/// direction: `backward` keeps those with an infinite past, otherwise those
/// with an infinite future.
fn trim(pg: &PairGraph<'_>, backward: bool) -> Vec<bool> {
    let n = pg.num_vertices();
    let mut deg: Vec<u32> = parallel::map_range(n, |p| {
        let mut d = 0u32;
        if backward {
            pg.for_each_predecessor(p, |_, _, _| d += 1);
        } else {
            pg.for_each_successor(p, |_, _, _| d += 1);
        }
        d
    });
    let mut alive = vec![true; n];
    let mut queue: Vec<usize> = (0..n).filter(|&p| deg[p] == 0).collect();
    while let Some(p) = queue.pop() {
        alive[p] = false;
        let mut release = |t: usize, _: u32, _: u32| {
            deg[t] -= 1;
            if deg[t] == 0 {
                queue.push(t);
            }
        };
        if backward {
            pg.for_each_successor(p, &mut release);
        } else {
            pg.for_each_predecessor(p, &mut release);
        }
    }
    alive
}

/// Walks from `start` inside `alive` until a vertex repeats. Returns the
/// visited vertices and the index of the first occurrence of the repeat.
fn walk_to_cycle(start: usize, alive: &[bool], step: impl Fn(usize, &mut dyn FnMut(usize))) -> (Vec<usize>, usize) {
    let mut seen: HashMap<usize, usize> = HashMap::new();
    let mut path = vec![start];
    seen.insert(start, 0);
    loop {
        let cur = *path.last().expect("nonempty");
        let mut next = None;
        step(cur, &mut |t| {
            if next.is_none() && alive[t] {
                next = Some(t);
            }
        });
        let t = next.expect("trimmed vertices keep a live neighbour");
        if let Some(&k) = seen.get(&t) {
            return (path, k);
        }
        seen.insert(t, path.len());
        path.push(t);
    }
}

fn unverified(what: &str) -> Error {
    Error::InvalidParameter(format!("internal: {what} failed verification"))
}

fn stream_symbols(pg: &PairGraph<'_>, na: usize, verts: &[usize]) -> (Vec<u32>, Vec<u32>) {
    verts
        .iter()
        .map(|&p| {
            let (u, v) = pg.split(p);
            ((u % na) as u32, (v % na) as u32)
        })
        .unzip()
}

pub fn decide_injective(wr: &WindowedRule, budget: u64) -> Result<InjectivityVerdict> {
    let wr2 = wr.padded(2)?;
    let pg = build_pair(&wr2, budget)?;
    let has_past = trim(&pg, true);
    let has_future = trim(&pg, false);
    let Some(p) = (0..pg.num_vertices()).find(|&p| !pg.is_diagonal(p) && has_past[p] && has_future[p]) else {
        return Ok(InjectivityVerdict {
            injective: true,
            witness: None,
        });
    };

    // Backward: p = b0 <- b1 <- ... with b_j = b_k.
    let (back, k) = walk_to_cycle(p, &has_past, |v, f| pg.for_each_predecessor(v, |s, _, _| f(s)));
    let j = back.len();
    let mut left_cycle = vec![back[k]];
    left_cycle.extend(back[k + 1..j].iter().rev());
    let mut left_block: Vec<usize> = left_cycle[1..].to_vec();
    left_block.push(left_cycle[0]);
    let mut middle: Vec<usize> = back[..k].iter().rev().copied().collect();

    // Forward: p = f0 -> f1 -> ... with f_j = f_k.
    let (fwd, k) = walk_to_cycle(p, &has_future, |v, f| pg.for_each_successor(v, |t, _, _| f(t)));
    middle.extend(&fwd[1..=k]);
    let mut right_block: Vec<usize> = fwd[k + 1..].to_vec();
    right_block.push(fwd[k]);

    let na = wr2.source_size() as usize;
    let (l1, l2) = stream_symbols(&pg, na, &left_block);
    let (m1, m2) = stream_symbols(&pg, na, &middle);
    let (r1, r2) = stream_symbols(&pg, na, &right_block);
    let witness = InjectivityWitness {
        first: EventuallyPeriodic::new(l1, m1, r1)?,
        second: EventuallyPeriodic::new(l2, m2, r2)?,
    };
    if !witness.verify(wr.ca()) {
        return Err(unverified("injectivity witness"));
    }
    Ok(InjectivityVerdict {
        injective: false,
        witness: Some(witness),
    })
}

fn bfs_from_diagonal(pg: &PairGraph<'_>, forward: bool) -> Vec<usize> {
    let n = pg.num_vertices();
    let mut link = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for u in 0..pg.base_vertices() {
        let p = u * pg.base_vertices() + u;
        link[p] = p;
        queue.push_back(p);
    }
    while let Some(p) = queue.pop_front() {
        let mut visit = |t: usize, _: u32, _: u32| {
            if link[t] == usize::MAX {
                link[t] = p;
                queue.push_back(t);
            }
        };
        if forward {
            pg.for_each_successor(p, &mut visit);
        } else {
            pg.for_each_predecessor(p, &mut visit);
        }
    }
    link
}

fn vertex_word(v: usize, na: u32, len: usize) -> Vec<u32> {
    let mut w = vec![0u32; len];
    tuple_decode(v, na, &mut w);
    w
}

pub fn decide_preinjective(wr: &WindowedRule, budget: u64) -> Result<PreinjectivityVerdict> {
    let wr2 = wr.padded(2)?;
    let pg = build_pair(&wr2, budget)?;
    let parent = bfs_from_diagonal(&pg, true);
    let child = bfs_from_diagonal(&pg, false);
    let Some(p) =
        (0..pg.num_vertices()).find(|&p| !pg.is_diagonal(p) && parent[p] != usize::MAX && child[p] != usize::MAX)
    else {
        return Ok(PreinjectivityVerdict {
            preinjective: true,
            witness: None,
        });
    };

    let mut before = vec![p];
    while !pg.is_diagonal(*before.last().expect("nonempty")) {
        before.push(parent[*before.last().expect("nonempty")]);
    }
    before.reverse();
    let mut path = before;
    let mut cur = p;
    while !pg.is_diagonal(cur) {
        cur = child[cur];
        path.push(cur);
    }

    let na = wr2.source_size();
    let vlen = wr2.width() - 1;
    let start = pg.split(path[0]).0;
    let end = pg.split(*path.last().expect("nonempty")).0;
    let left = vertex_word(start, na, vlen);
    let right = vertex_word(end, na, vlen);
    let (m1, m2) = stream_symbols(&pg, na as usize, &path[1..]);
    let first = EventuallyPeriodic::new(left.clone(), m1, right.clone())?;
    let second = EventuallyPeriodic::new(left, m2, right)?;
    let diff = first.differences(&second, 0, first.middle.len() as i64);
    let witness = DiamondWitness {
        lo: diff[0],
        hi: *diff.last().expect("path leaves the diagonal"),
        first,
        second,
    };
    if !witness.verify(wr.ca()) {
        return Err(unverified("diamond witness"));
    }
    Ok(PreinjectivityVerdict {
        preinjective: false,
        witness: Some(witness),
    })
}

/// Largest de Bruijn graph handled by the subset construction.
pub const POWERSET_VERTEX_LIMIT: usize = 20;

pub fn decide_surjective(wr: &WindowedRule, budget: u64) -> Result<SurjectivityVerdict> {
    decide_surjective_with(wr, budget, POWERSET_VERTEX_LIMIT)
}

pub fn decide_surjective_with(wr: &WindowedRule, budget: u64, powerset_limit: usize) -> Result<SurjectivityVerdict> {
    let nv = wr.num_vertices();
    if nv <= powerset_limit.min(31) {
        let orphan = shortest_orphan(wr, budget)?;
        if orphan.as_ref().is_some_and(|o| !verify_orphan(wr, o)) {
            return Err(unverified("orphan"));
        }
        return Ok(SurjectivityVerdict {
            surjective: orphan.is_none(),
            method: SurjectivityMethod::Powerset,
            witness: orphan.map(SurjectivityWitness::Orphan),
        });
    }
    let (na, nb) = (wr.source_size(), wr.target_size());
    if nb > na {
        return Ok(SurjectivityVerdict {
            surjective: false,
            method: SurjectivityMethod::Counting,
            witness: None,
        });
    }
    if nb < na {
        return Err(Error::BudgetExceeded {
            what: "subset construction",
            needed: nv as u128,
            budget: powerset_limit as u64,
        });
    }
    let pre = decide_preinjective(wr, budget)?;
    Ok(SurjectivityVerdict {
        surjective: pre.preinjective,
        method: SurjectivityMethod::PreInjectivity,
        witness: pre.witness.map(SurjectivityWitness::Diamond),
    })
}

/// Lexicographically least among the shortest orphans, via breadth-first
/// search over sets of de Bruijn vertices.
fn shortest_orphan(wr: &WindowedRule, budget: u64) -> Result<Option<Vec<u32>>> {
    let nv = wr.num_vertices();
    let (na, nb) = (wr.source_size() as usize, wr.target_size() as usize);
    let mut trans = vec![0u32; nv * nb];
    for v in 0..nv {
        for a in 0..na {
            let e = v * na + a;
            trans[v * nb + wr.table()[e] as usize] |= 1 << (e % nv);
        }
    }
    let full: u32 = if nv == 32 { u32::MAX } else { (1u32 << nv) - 1 };
    let mut parent: HashMap<u32, (u32, u32)> = HashMap::new();
    parent.insert(full, (full, u32::MAX));
    let mut queue = VecDeque::from([full]);
    while let Some(s) = queue.pop_front() {
        for b in 0..nb {
            let mut t = 0u32;
            let mut bits = s;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                t |= trans[v * nb + b];
            }
            if parent.contains_key(&t) {
                continue;
            }
            parent.insert(t, (s, b as u32));
            if t == 0 {
                let mut word = Vec::new();
                let mut cur = 0u32;
                while cur != full {
                    let (prev, sym) = parent[&cur];
                    word.push(sym);
                    cur = prev;
                }
                word.reverse();
                return Ok(Some(word));
            }
            check_budget("subset construction states", parent.len() as u128, budget)?;
            queue.push_back(t);
        }
    }
    Ok(None)
}

/// Independent check that `word` has no preimage: tracks every window
/// suffix consistent with the prefix read so far.
pub fn verify_orphan(wr: &WindowedRule, word: &[u32]) -> bool {
    let w = wr.width();
    let na = wr.source_size();
    let mut window = vec![0u32; w];
    // Sets of the last w-1 input symbols, kept as explicit words.
    let mut states: std::collections::BTreeSet<Vec<u32>> = std::collections::BTreeSet::new();
    let mut seed = vec![0u32; w.saturating_sub(1)];
    for idx in 0..(na as usize).pow(w.saturating_sub(1) as u32) {
        tuple_decode(idx, na, &mut seed);
        states.insert(seed.clone());
    }
    for &b in word {
        let mut next = std::collections::BTreeSet::new();
        for s in &states {
            for a in 0..na {
                window[..w - 1].copy_from_slice(s);
                window[w - 1] = a;
                if wr.output(&window) == b {
                    next.insert(window[1..].to_vec());
                }
            }
        }
        states = next;
    }
    states.is_empty()
}
