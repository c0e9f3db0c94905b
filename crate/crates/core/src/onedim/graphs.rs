//! Windowed rules, de Bruijn graphs and pair graphs over Z.

use crate::alphabet::{tuple_decode, DEFAULT_BUDGET};
use crate::ca::CellularAutomaton;
use crate::error::{check_budget, pow_sat, Error, Result};

/// A one-dimensional automaton tabulated over the full interval spanned by
/// its memory set. Table index is the window word in mixed radix, leftmost
/// symbol most significant.
#[derive(Debug, Clone)]
pub struct WindowedRule {
    ca: CellularAutomaton,
    left: i64,
    width: usize,
    na: u32,
    nb: u32,
    table: Vec<u32>,
}

pub fn build_windowed(ca: &CellularAutomaton, budget: u64) -> Result<WindowedRule> {
    if ca.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: ca.dim(),
        });
    }
    let offsets: Vec<i64> = ca.memory().iter().map(|m| m.0[0]).collect();
    let (left, right) = match (offsets.first(), offsets.last()) {
        (Some(&l), Some(&r)) => (l, r),
        _ => (0, 0),
    };
    let width =
        usize::try_from(right - left + 1).map_err(|_| Error::InvalidParameter("memory span too large".into()))?;
    let na = ca.source().size();
    check_budget("window table", pow_sat(na as u64, width), budget)?;
    let rule = ca.fast_rule();
    let positions: Vec<usize> = offsets.iter().map(|&m| (m - left) as usize).collect();
    let n = pow_sat(na as u64, width) as usize;
    let mut table = vec![0u32; n];
    crate::parallel::fill_chunks(&mut table, 4096, |start, chunk| {
        let mut word = vec![0u32; width];
        let mut args = vec![0u32; positions.len()];
        for (off, slot) in chunk.iter_mut().enumerate() {
            tuple_decode(start + off, na, &mut word);
            for (a, &p) in args.iter_mut().zip(&positions) {
                *a = word[p];
            }
            *slot = rule.eval_raw(&args);
        }
    });
    Ok(WindowedRule {
        ca: ca.clone(),
        left,
        width,
        na,
        nb: ca.target().size(),
        table,
    })
}

impl WindowedRule {
    pub fn ca(&self) -> &CellularAutomaton {
        &self.ca
    }

    /// Leftmost offset of the window.
    pub fn left(&self) -> i64 {
        self.left
    }

    pub fn right(&self) -> i64 {
        self.left + self.width as i64 - 1
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn source_size(&self) -> u32 {
        self.na
    }

    pub fn target_size(&self) -> u32 {
        self.nb
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// Number of de Bruijn vertices, `|A|^(w-1)`.
    pub fn num_vertices(&self) -> usize {
        self.table.len() / self.na as usize
    }

    /// Output on a window word.
    pub fn output(&self, word: &[u32]) -> u32 {
        self.table[crate::alphabet::tuple_index(word, self.na)]
    }

    /// The same rule on a window widened to the right to at least `width`.
    pub(crate) fn padded(&self, width: usize) -> Result<WindowedRule> {
        if self.width >= width {
            return Ok(self.clone());
        }
        let extra = width - self.width;
        let factor = pow_sat(self.na as u64, extra);
        check_budget(
            "padded window table",
            (self.table.len() as u128).saturating_mul(factor),
            DEFAULT_BUDGET.max(self.table.len() as u64 * factor as u64),
        )?;
        let factor = factor as usize;
        let table = self
            .table
            .iter()
            .flat_map(|&v| std::iter::repeat_n(v, factor))
            .collect();
        Ok(WindowedRule {
            ca: self.ca.clone(),
            left: self.left,
            width,
            na: self.na,
            nb: self.nb,
            table,
        })
    }
}

/// The de Bruijn graph of a windowed rule: vertices are words of length
/// `w - 1`, edges are words of length `w` labelled by the rule output.
#[derive(Debug, Clone, Copy)]
pub struct DeBruijnGraph<'a> {
    rule: &'a WindowedRule,
}

pub fn build_debruijn(wr: &WindowedRule) -> DeBruijnGraph<'_> {
    DeBruijnGraph { rule: wr }
}

impl DeBruijnGraph<'_> {
    pub fn num_vertices(&self) -> usize {
        self.rule.num_vertices()
    }

    pub fn num_edges(&self) -> usize {
        self.rule.table.len()
    }

    pub fn source(&self, edge: usize) -> usize {
        edge / self.rule.na as usize
    }

    pub fn target(&self, edge: usize) -> usize {
        edge % self.num_vertices()
    }

    pub fn label(&self, edge: usize) -> u32 {
        self.rule.table[edge]
    }

    /// Outgoing edges of `v`, by appended symbol.
    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = usize> {
        let na = self.rule.na as usize;
        (0..na).map(move |a| v * na + a)
    }

    /// Incoming edges of `v`, by prepended symbol.
    pub fn in_edges(&self, v: usize) -> impl Iterator<Item = usize> {
        let nv = self.num_vertices();
        (0..self.rule.na as usize).map(move |a| a * nv + v)
    }
}

/// Compressed lists `(vertex, label) -> symbols`.
#[derive(Debug, Clone)]
struct LabelIndex {
    offsets: Vec<u32>,
    symbols: Vec<u32>,
}

impl LabelIndex {
    fn get(&self, slot: usize) -> &[u32] {
        &self.symbols[self.offsets[slot] as usize..self.offsets[slot + 1] as usize]
    }
}

/// Pairs of de Bruijn edges with equal labels. Vertex `(u, v)` has index
/// `u * |V| + v`; it is diagonal when `u == v`. Edges are generated on demand.
#[derive(Debug, Clone)]
pub struct PairGraph<'a> {
    rule: &'a WindowedRule,
    nv: usize,
    forward: LabelIndex,
    backward: LabelIndex,
}

pub fn build_pair(wr: &WindowedRule, budget: u64) -> Result<PairGraph<'_>> {
    let nv = wr.num_vertices();
    check_budget("pair graph vertices", (nv as u128) * (nv as u128), budget)?;
    let na = wr.na as usize;
    let nb = wr.nb as usize;
    let index = |edge_of: &dyn Fn(usize, usize) -> usize| {
        let mut offsets = Vec::with_capacity(nv * nb + 1);
        let mut symbols = Vec::with_capacity(nv * na);
        offsets.push(0u32);
        for v in 0..nv {
            for b in 0..nb {
                for a in 0..na {
                    if wr.table[edge_of(v, a)] as usize == b {
                        symbols.push(a as u32);
                    }
                }
                offsets.push(symbols.len() as u32);
            }
        }
        LabelIndex { offsets, symbols }
    };
    let forward = index(&|v, a| v * na + a);
    let backward = index(&|v, a| a * nv + v);
    Ok(PairGraph {
        rule: wr,
        nv,
        forward,
        backward,
    })
}

impl PairGraph<'_> {
    pub fn num_vertices(&self) -> usize {
        self.nv * self.nv
    }

    pub fn base_vertices(&self) -> usize {
        self.nv
    }

    pub fn split(&self, p: usize) -> (usize, usize) {
        (p / self.nv, p % self.nv)
    }

    pub fn is_diagonal(&self, p: usize) -> bool {
        let (u, v) = self.split(p);
        u == v
    }

    pub fn num_edges(&self) -> u64 {
        let nb = self.rule.nb as usize;
        let mut per_label = vec![0u64; nb];
        for v in 0..self.nv {
            for (b, slot) in per_label.iter_mut().enumerate() {
                *slot += self.forward.get(v * nb + b).len() as u64;
            }
        }
        per_label.iter().map(|c| c * c).sum()
    }

    /// Calls `f(target, a, a2)` for every edge leaving `p`, where `a`, `a2`
    /// are the symbols appended on each side.
    pub fn for_each_successor(&self, p: usize, mut f: impl FnMut(usize, u32, u32)) {
        let (u, v) = self.split(p);
        let na = self.rule.na as usize;
        let nb = self.rule.nb as usize;
        for a in 0..na {
            let e1 = u * na + a;
            let b = self.rule.table[e1] as usize;
            let t1 = e1 % self.nv;
            for &a2 in self.forward.get(v * nb + b) {
                let t2 = (v * na + a2 as usize) % self.nv;
                f(t1 * self.nv + t2, a as u32, a2);
            }
        }
    }

    /// Calls `f(source, a, a2)` for every edge entering `p`, where `a`, `a2`
    /// are the symbols prepended on each side.
    pub fn for_each_predecessor(&self, p: usize, mut f: impl FnMut(usize, u32, u32)) {
        let (u, v) = self.split(p);
        let na = self.rule.na as usize;
        let nb = self.rule.nb as usize;
        for a in 0..na {
            let e1 = a * self.nv + u;
            let b = self.rule.table[e1] as usize;
            let s1 = e1 / na;
            for &a2 in self.backward.get(v * nb + b) {
                let s2 = (a2 as usize * self.nv + v) / na;
                f(s1 * self.nv + s2, a as u32, a2);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::*;
    use crate::Alphabet;

    #[test]
    fn majority_graph_sizes() {
        let wr = build_windowed(&majority_ca(), DEFAULT_BUDGET).unwrap();
        let g = build_debruijn(&wr);
        assert_eq!((g.num_vertices(), g.num_edges()), (4, 8));
    }

    #[test]
    fn width_one_has_single_vertex() {
        let id = identity_ca(Alphabet::finite(3).unwrap(), 1);
        let wr = build_windowed(&id, DEFAULT_BUDGET).unwrap();
        let g = build_debruijn(&wr);
        assert_eq!((g.num_vertices(), g.num_edges()), (1, 3));
        assert!((0..3).all(|e| g.source(e) == 0 && g.target(e) == 0));
    }

    #[test]
    fn marker_graph_labels() {
        let wr = build_windowed(&hedlund_marker_ca(), DEFAULT_BUDGET).unwrap();
        let g = build_debruijn(&wr);
        assert_eq!((g.num_vertices(), g.num_edges()), (8, 16));
        // Window (x(-1), x(0), x(1), x(2)) = 0,1,1,0 flips the centre.
        assert_eq!(g.label(0b0110), 0);
        assert_eq!(g.label(0b0010), 1);
        assert_eq!(g.label(0b1110), 1);
        for v in 0..8 {
            assert_eq!(g.out_edges(v).count(), 2);
            assert_eq!(g.in_edges(v).count(), 2);
        }
    }

    #[test]
    fn pair_graph_diagonal_is_de_bruijn() {
        let wr = build_windowed(&elementary_ca(30), DEFAULT_BUDGET).unwrap();
        let pg = build_pair(&wr, DEFAULT_BUDGET).unwrap();
        assert_eq!(pg.num_vertices(), 16);
        for u in 0..4 {
            let mut diag_succ = Vec::new();
            pg.for_each_successor(u * 4 + u, |t, a, a2| {
                if a == a2 {
                    diag_succ.push(t);
                }
            });
            let g = build_debruijn(&wr);
            let expect: Vec<usize> = g.out_edges(u).map(|e| g.target(e) * 4 + g.target(e)).collect();
            assert_eq!(diag_succ, expect);
        }
        // Successor and predecessor relations are converse.
        for p in 0..16 {
            pg.for_each_successor(p, |t, _, _| {
                let mut found = false;
                pg.for_each_predecessor(t, |s, _, _| found |= s == p);
                assert!(found);
            });
        }
        let mut count = 0u64;
        for p in 0..16 {
            pg.for_each_successor(p, |_, _, _| count += 1);
        }
        assert_eq!(count, pg.num_edges());
    }
}
