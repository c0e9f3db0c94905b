//! Cellular automata over Z^d and their periodic configurations.
//!
//! A [`CellularAutomaton`] evaluates its local rule on the memory window:
//! `tau(x)(g) = mu(x(g + m_1), ..., x(g + m_k))` for the memory set
//! `{m_1 < ... < m_k}` in lexicographic order. Configurations are periodic:
//! a [`PeriodicConfig`] stores one symbol per coset of a full-rank period
//! lattice, which is enough to describe every configuration fixed by that
//! lattice.

use std::borrow::Cow;
use std::collections::BTreeMap;
use std::sync::Arc;

use crate::alphabet::{common_ring, tuple_decode, tuple_index, Alphabet, LocalRule, Matrix, RuleBody, Symbol};
use crate::error::{check_budget, pow_sat, Error, Result};
use crate::lattice::{same_dim, CosetTable, GroupElement, Lattice};
use crate::parallel;

/// Rules with at most this many table entries are tabulated before bulk evaluation.
const EAGER_TABLE: u128 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellularAutomaton {
    dim: usize,
    memory: Vec<GroupElement>,
    rule: LocalRule,
}

impl CellularAutomaton {
    /// Builds an automaton; memory is sorted and the rule's arguments follow.
    pub fn new(dim: usize, memory: Vec<GroupElement>, rule: LocalRule) -> Result<Self> {
        if memory.len() != rule.arity() {
            return Err(Error::ArityMismatch {
                expected: rule.arity(),
                found: memory.len(),
            });
        }
        for m in &memory {
            same_dim(dim, m.dim())?;
        }
        let mut perm: Vec<usize> = (0..memory.len()).collect();
        perm.sort_by(|&a, &b| memory[a].cmp(&memory[b]));
        if perm.windows(2).any(|w| memory[w[0]] == memory[w[1]]) {
            return Err(Error::InvalidParameter("memory set has repeated elements".into()));
        }
        let sorted = perm.iter().all(|&i| perm[i] == i);
        let (memory, rule) = if sorted {
            (memory, rule)
        } else {
            let rule = rule.permute_args(&perm)?;
            (perm.iter().map(|&i| memory[i].clone()).collect(), rule)
        };
        Ok(CellularAutomaton { dim, memory, rule })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn memory(&self) -> &[GroupElement] {
        &self.memory
    }

    pub fn rule(&self) -> &LocalRule {
        &self.rule
    }

    pub fn source(&self) -> &Alphabet {
        self.rule.source()
    }

    pub fn target(&self) -> &Alphabet {
        self.rule.target()
    }

    pub fn is_endomorphic(&self) -> bool {
        self.source() == self.target()
    }

    /// True for the identity automaton in canonical form: memory `{0}` and
    /// a rule fixing every symbol.
    pub fn is_identity(&self) -> bool {
        self.is_endomorphic()
            && self.memory.len() == 1
            && self.memory[0].0.iter().all(|&c| c == 0)
            && self.source().symbols().all(|s| self.rule.eval_raw(&[s.0]) == s.0)
    }

    /// The rule in the form best suited to bulk evaluation.
    pub(crate) fn fast_rule(&self) -> Cow<'_, LocalRule> {
        if !self.rule.is_table() && self.rule.table_len() <= EAGER_TABLE {
            if let Ok(t) = self.rule.lower_to_table(EAGER_TABLE as u64) {
                return Cow::Owned(t);
            }
        }
        Cow::Borrowed(&self.rule)
    }

    /// `tau(x)` for a periodic configuration `x`.
    pub fn apply(&self, x: &PeriodicConfig) -> Result<PeriodicConfig> {
        if x.alphabet() != self.source() {
            return Err(Error::AlphabetMismatch(
                "configuration alphabet differs from the automaton's source".into(),
            ));
        }
        same_dim(self.dim, x.cosets().dim())?;
        let nbr = x.cosets().neighbor_table(&self.memory)?;
        let rule = self.fast_rule();
        let values = apply_with_neighbors(&rule, &nbr, self.memory.len(), x.values());
        Ok(PeriodicConfig {
            alphabet: self.target().clone(),
            cosets: Arc::clone(&x.cosets),
            values,
        })
    }

    /// Iterates `apply` `steps` times, returning every intermediate state
    /// (the input first).
    pub fn trajectory(&self, x: &PeriodicConfig, steps: usize) -> Result<Vec<PeriodicConfig>> {
        let mut out = vec![x.clone()];
        for _ in 0..steps {
            let next = self.apply(out.last().unwrap())?;
            out.push(next);
        }
        Ok(out)
    }

    /// The extensionally equal automaton whose memory is exactly the set of
    /// coordinates its rule depends on.
    pub fn minimize(&self, budget: u64) -> Result<CellularAutomaton> {
        if let RuleBody::Linear(ms) = self.rule.body() {
            let keep: Vec<usize> = (0..ms.len()).filter(|&i| !ms[i].is_zero()).collect();
            let rule = LocalRule::linear(
                self.source().clone(),
                self.target().clone(),
                keep.iter().map(|&i| ms[i].clone()).collect(),
            )?;
            return Ok(CellularAutomaton {
                dim: self.dim,
                memory: keep.iter().map(|&i| self.memory[i].clone()).collect(),
                rule,
            });
        }
        check_budget(
            "minimize table",
            pow_sat(self.source().size() as u64, self.memory.len()),
            budget,
        )?;
        let table = self.rule.lower_to_table(budget)?;
        let RuleBody::Table(entries) = table.body() else {
            unreachable!()
        };
        let base = self.source().size() as usize;
        let arity = self.memory.len();
        let keep: Vec<usize> = parallel::map_range(arity, |i| depends_on(entries, base, arity, i))
            .into_iter()
            .enumerate()
            .filter_map(|(i, dep)| dep.then_some(i))
            .collect();

        let n = pow_sat(base as u64, keep.len()) as usize;
        let mut small = vec![0u32; keep.len()];
        let mut full = vec![0u32; arity];
        let new_entries: Vec<u32> = (0..n)
            .map(|j| {
                tuple_decode(j, base as u32, &mut small);
                full.iter_mut().for_each(|x| *x = 0);
                for (&slot, &v) in keep.iter().zip(&small) {
                    full[slot] = v;
                }
                entries[tuple_index(&full, base as u32)]
            })
            .collect();
        let rule = LocalRule::table(self.source().clone(), self.target().clone(), keep.len(), new_entries)?;
        Ok(CellularAutomaton {
            dim: self.dim,
            memory: keep.iter().map(|&i| self.memory[i].clone()).collect(),
            rule,
        })
    }

    /// Restriction to a subgroup H containing the memory set, written in the
    /// coordinates of H = Z^rank(H).
    pub fn restrict(&self, h: &Lattice) -> Result<CellularAutomaton> {
        same_dim(self.dim, h.dim())?;
        let iso = h.snf_isomorphism();
        let memory = self.memory.iter().map(|m| iso.forward(m)).collect::<Result<Vec<_>>>()?;
        CellularAutomaton::new(iso.rank(), memory, self.rule.clone())
    }

    /// Induction from H = Z^rank(H) to the ambient Z^d along the lattice `h`.
    pub fn induce(&self, h: &Lattice) -> Result<CellularAutomaton> {
        same_dim(h.rank(), self.dim)?;
        let iso = h.snf_isomorphism();
        let memory = self
            .memory
            .iter()
            .map(|m| iso.backward(m))
            .collect::<Result<Vec<_>>>()?;
        CellularAutomaton::new(h.dim(), memory, self.rule.clone())
    }
}

/// Does the table depend on argument `i`?
fn depends_on(entries: &[u32], base: usize, arity: usize, i: usize) -> bool {
    let stride = base.pow((arity - 1 - i) as u32);
    let block = stride * base;
    (0..entries.len())
        .filter(|idx| idx % block < stride)
        .any(|idx| (1..base).any(|k| entries[idx + k * stride] != entries[idx]))
}

pub(crate) fn apply_with_neighbors(rule: &LocalRule, nbr: &[u32], arity: usize, values: &[u32]) -> Vec<u32> {
    let n = nbr.len().checked_div(arity).unwrap_or(values.len());
    let mut out = vec![0u32; n];
    parallel::fill_chunks(&mut out, 1024, |start, chunk| {
        let mut args = vec![0u32; arity];
        for (off, slot) in chunk.iter_mut().enumerate() {
            let t = start + off;
            for (a, &j) in args.iter_mut().zip(&nbr[t * arity..(t + 1) * arity]) {
                *a = values[j as usize];
            }
            *slot = rule.eval_raw(&args);
        }
    });
    out
}

/// Composite `sigma o tau` (apply `tau` first).
///
/// The memory set is `S + T`. For two linear rules over a common ring the
/// coefficients are the convolution `C_g = sum_{s + t = g} S_s T_t`;
/// otherwise the rule is tabulated: on `y in A^{S+T}` each `s in S` reads
/// the block `y(s + T)`, feeds it to tau, and sigma combines the results.
pub fn compose(sigma: &CellularAutomaton, tau: &CellularAutomaton, budget: u64) -> Result<CellularAutomaton> {
    same_dim(sigma.dim, tau.dim)?;
    if tau.target() != sigma.source() {
        return Err(Error::AlphabetMismatch(
            "middle alphabets of the composition differ".into(),
        ));
    }
    let mut st: Vec<GroupElement> = Vec::with_capacity(sigma.memory.len() * tau.memory.len());
    for s in &sigma.memory {
        for t in &tau.memory {
            st.push(s.checked_add(t)?);
        }
    }
    st.sort();
    st.dedup();
    let position = |g: &GroupElement| st.binary_search(g).expect("sum lies in S+T");

    if let (Some(ms), Some(mt)) = (sigma.rule.as_linear(), tau.rule.as_linear()) {
        if let Ok(ring) = common_ring(tau.source(), sigma.target()) {
            let mut coeffs: Vec<Matrix> = vec![Matrix::zeros(sigma.target().rank(), tau.source().rank()); st.len()];
            for (s, a) in sigma.memory.iter().zip(ms) {
                for (t, b) in tau.memory.iter().zip(mt) {
                    let g = position(&s.checked_add(t)?);
                    coeffs[g] = coeffs[g].add(&a.mul(b, ring), ring);
                }
            }
            let rule = LocalRule::linear(tau.source().clone(), sigma.target().clone(), coeffs)?;
            return CellularAutomaton::new(sigma.dim, st, rule);
        }
    }

    let n = pow_sat(tau.source().size() as u64, st.len());
    check_budget("composite rule table", n, budget)?;
    let blocks: Vec<Vec<usize>> = sigma
        .memory
        .iter()
        .map(|s| {
            tau.memory
                .iter()
                .map(|t| Ok(position(&s.checked_add(t)?)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let inner = tau.fast_rule();
    let outer = sigma.fast_rule();
    let base = tau.source().size();
    let arity = st.len();
    let mut entries = vec![0u32; n as usize];
    parallel::fill_chunks(&mut entries, 4096, |start, chunk| {
        let mut y = vec![0u32; arity];
        let mut block_args = vec![0u32; tau.memory.len()];
        let mut outer_args = vec![0u32; sigma.memory.len()];
        for (off, slot) in chunk.iter_mut().enumerate() {
            tuple_decode(start + off, base, &mut y);
            for (phi, block) in outer_args.iter_mut().zip(&blocks) {
                for (a, &p) in block_args.iter_mut().zip(block) {
                    *a = y[p];
                }
                *phi = inner.eval_raw(&block_args);
            }
            *slot = outer.eval_raw(&outer_args);
        }
    });
    let rule = LocalRule::table(tau.source().clone(), sigma.target().clone(), arity, entries)?;
    CellularAutomaton::new(sigma.dim, st, rule)
}

/// A configuration fixed by a full-rank lattice of translations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicConfig {
    alphabet: Alphabet,
    cosets: Arc<CosetTable>,
    values: Vec<u32>,
}

impl PeriodicConfig {
    pub fn new(alphabet: Alphabet, cosets: Arc<CosetTable>, values: Vec<Symbol>) -> Result<Self> {
        Self::from_raw(alphabet, cosets, values.into_iter().map(|s| s.0).collect())
    }

    pub(crate) fn from_raw(alphabet: Alphabet, cosets: Arc<CosetTable>, values: Vec<u32>) -> Result<Self> {
        if values.len() != cosets.size() {
            return Err(Error::InvalidParameter(format!(
                "{} values for {} cosets",
                values.len(),
                cosets.size()
            )));
        }
        for &v in &values {
            alphabet.check(Symbol(v))?;
        }
        Ok(PeriodicConfig {
            alphabet,
            cosets,
            values,
        })
    }

    /// A configuration on Z with the given period word.
    pub fn from_word(alphabet: Alphabet, word: &[u32]) -> Result<Self> {
        let cosets = Lattice::multiples(word.len() as i64)?.cosets()?;
        Self::from_raw(alphabet, Arc::new(cosets), word.to_vec())
    }

    /// The configuration whose value at rep `t` is `f(t)`.
    pub fn from_fn(alphabet: Alphabet, cosets: Arc<CosetTable>, f: impl Fn(&GroupElement) -> u32) -> Result<Self> {
        let values = cosets.reps().iter().map(f).collect();
        Self::from_raw(alphabet, cosets, values)
    }

    /// The `idx`-th configuration of the lattice in mixed-radix order (rep 0 most significant).
    pub fn from_index(alphabet: Alphabet, cosets: Arc<CosetTable>, idx: usize) -> Result<Self> {
        let mut values = vec![0u32; cosets.size()];
        tuple_decode(idx, alphabet.size(), &mut values);
        Self::from_raw(alphabet, cosets, values)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn cosets(&self) -> &CosetTable {
        &self.cosets
    }

    pub fn cosets_arc(&self) -> &Arc<CosetTable> {
        &self.cosets
    }

    pub fn lattice(&self) -> &Lattice {
        self.cosets.lattice()
    }

    /// Values at the coset representatives, in canonical order.
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        self.values.iter().map(|&v| Symbol(v)).collect()
    }

    pub fn value_at(&self, g: &GroupElement) -> Result<Symbol> {
        Ok(Symbol(self.values[self.cosets.index_of(g)?]))
    }

    /// Position of this configuration in mixed-radix order.
    pub fn to_index(&self) -> usize {
        tuple_index(&self.values, self.alphabet.size())
    }

    /// The translate `g x`, i.e. `(g x)(h) = x(h - g)`.
    pub fn shift(&self, g: &GroupElement) -> Result<PeriodicConfig> {
        let neg = g.neg();
        let values = self
            .cosets
            .reps()
            .iter()
            .map(|t| Ok(self.values[self.cosets.index_of(&t.checked_add(&neg)?)?]))
            .collect::<Result<Vec<_>>>()?;
        Ok(PeriodicConfig {
            alphabet: self.alphabet.clone(),
            cosets: Arc::clone(&self.cosets),
            values,
        })
    }

    /// The same configuration described with a finer (sub)lattice of periods.
    pub fn refine(&self, finer: Arc<CosetTable>) -> Result<PeriodicConfig> {
        for col in finer.lattice().columns() {
            if !self.lattice().contains(&GroupElement(col.clone()))? {
                return Err(Error::InvalidParameter(
                    "refinement lattice is not contained in the period lattice".into(),
                ));
            }
        }
        let values = finer
            .reps()
            .iter()
            .map(|t| Ok(self.values[self.cosets.index_of(t)?]))
            .collect::<Result<Vec<_>>>()?;
        Ok(PeriodicConfig {
            alphabet: self.alphabet.clone(),
            cosets: finer,
            values,
        })
    }

    /// Values on the integer points of a box `lo..=hi`, lexicographic.
    pub fn window(&self, lo: &[i64], hi: &[i64]) -> Result<Vec<u32>> {
        let mut out = Vec::new();
        let mut cur = lo.to_vec();
        if lo.iter().zip(hi).any(|(a, b)| a > b) {
            return Ok(out);
        }
        loop {
            out.push(self.value_at(&GroupElement(cur.clone()))?.0);
            let mut i = cur.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                if cur[i] < hi[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = lo[i];
            }
        }
    }

    /// Symbol counts, for quick summaries.
    pub fn histogram(&self) -> BTreeMap<u32, usize> {
        let mut h = BTreeMap::new();
        for &v in &self.values {
            *h.entry(v).or_insert(0) += 1;
        }
        h
    }
}
