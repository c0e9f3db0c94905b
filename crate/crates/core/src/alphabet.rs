//! Alphabets and local rules.
//!
//! Three alphabet backends are supported: plain finite sets, vector spaces
//! `F_q^k`, and modules `(Z/p^e)^k`. Structured symbols are coordinate
//! vectors over the scalar [`Ring`]; the symbol index is the mixed-radix
//! number with the first coordinate most significant.
//!
//! A [`LocalRule`] maps `A^arity -> B`. Table bodies are indexed in the same
//! mixed-radix way over the argument tuple (first memory element most
//! significant). Linear bodies hold one `target_rank x source_rank` matrix per
//! memory element; polynomial bodies hold one polynomial per target
//! coordinate in `arity * source_rank` variables, variable `m * k + j` being
//! coordinate `j` of argument `m`.

use std::fmt;

use crate::error::{check_budget, pow_sat, Error, Result};
use crate::field::{prime_power, Ring};

/// Default enumeration budget used throughout the crate.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// A symbol of some alphabet, by its index in the canonical enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(pub u32);

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlphabetKind {
    FiniteSet { size: u32 },
    VectorSpace { q: u32, dim: u32 },
    Module { p: u32, e: u32, rank: u32 },
}

/// A finite alphabet, optionally carrying module structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    kind: AlphabetKind,
    ring: Option<Ring>,
    size: u32,
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self.kind() {
            AlphabetKind::FiniteSet { size } => write!(f, "finite({size})"),
            AlphabetKind::VectorSpace { q, dim } => write!(f, "GF({q})^{dim}"),
            AlphabetKind::Module { p, e, rank } => write!(f, "(Z/{p}^{e})^{rank}"),
        }
    }
}

impl Alphabet {
    pub fn finite(size: u32) -> Result<Alphabet> {
        if size == 0 {
            return Err(Error::InvalidParameter("alphabet must be nonempty".into()));
        }
        Ok(Alphabet {
            kind: AlphabetKind::FiniteSet { size },
            ring: None,
            size,
        })
    }

    /// `F_q^dim`.
    pub fn vector(q: u32, dim: u32) -> Result<Alphabet> {
        if prime_power(q as u64).is_none() {
            return Err(Error::InvalidParameter(format!("{q} is not a prime power")));
        }
        let ring = Ring::field(q as u64)?;
        let size = structured_size(q, dim)?;
        Ok(Alphabet {
            kind: AlphabetKind::VectorSpace { q, dim },
            ring: Some(ring),
            size,
        })
    }

    /// `(Z/p^e)^rank`.
    pub fn module(p: u32, e: u32, rank: u32) -> Result<Alphabet> {
        let ring = Ring::zmod(p, e)?;
        let size = structured_size(ring.size(), rank)?;
        Ok(Alphabet {
            kind: AlphabetKind::Module { p, e, rank },
            ring: Some(ring),
            size,
        })
    }

    pub fn binary() -> Alphabet {
        Alphabet::finite(2).expect("nonempty")
    }

    pub fn kind(&self) -> &AlphabetKind {
        &self.kind
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn ring(&self) -> Option<&Ring> {
        self.ring.as_ref()
    }

    pub fn is_structured(&self) -> bool {
        self.ring.is_some()
    }

    /// Number of ring coordinates; 0 for plain sets.
    pub fn rank(&self) -> usize {
        match self.kind {
            AlphabetKind::FiniteSet { .. } => 0,
            AlphabetKind::VectorSpace { dim, .. } => dim as usize,
            AlphabetKind::Module { rank, .. } => rank as usize,
        }
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> {
        (0..self.size).map(Symbol)
    }

    pub fn check(&self, s: Symbol) -> Result<()> {
        if s.0 < self.size {
            Ok(())
        } else {
            Err(Error::SymbolOutOfRange {
                symbol: s.0 as u64,
                size: self.size as u64,
            })
        }
    }

    /// Coordinates of a structured symbol, first coordinate first.
    pub fn decode(&self, s: Symbol, out: &mut [u32]) {
        let q = self.ring_size();
        let mut x = s.0;
        for slot in out.iter_mut().rev() {
            *slot = x % q;
            x /= q;
        }
    }

    pub fn encode(&self, coords: &[u32]) -> Symbol {
        let q = self.ring_size();
        Symbol(coords.iter().fold(0u32, |acc, &c| acc * q + c))
    }

    pub fn coords(&self, s: Symbol) -> Vec<u32> {
        let mut v = vec![0; self.rank()];
        self.decode(s, &mut v);
        v
    }

    pub fn zero(&self) -> Symbol {
        Symbol(0)
    }

    fn ring_size(&self) -> u32 {
        self.ring.as_ref().map_or(self.size, Ring::size)
    }

    /// Coordinate-wise sum of two structured symbols.
    pub fn add(&self, a: Symbol, b: Symbol) -> Result<Symbol> {
        let ring = self.require_ring()?;
        let (ca, cb) = (self.coords(a), self.coords(b));
        let sum: Vec<u32> = ca.iter().zip(&cb).map(|(&x, &y)| ring.add(x, y)).collect();
        Ok(self.encode(&sum))
    }

    pub fn scale(&self, c: u32, a: Symbol) -> Result<Symbol> {
        let ring = self.require_ring()?;
        let v: Vec<u32> = self.coords(a).iter().map(|&x| ring.mul(c, x)).collect();
        Ok(self.encode(&v))
    }

    fn require_ring(&self) -> Result<&Ring> {
        self.ring
            .as_ref()
            .ok_or_else(|| Error::AlphabetMismatch("plain finite set has no module structure".into()))
    }
}

fn structured_size(q: u32, dim: u32) -> Result<u32> {
    (q as u64)
        .checked_pow(dim)
        .filter(|&s| s <= u32::MAX as u64 && s >= 1)
        .map(|s| s as u32)
        .ok_or_else(|| Error::InvalidParameter(format!("alphabet {q}^{dim} too large")))
}

/// Dense matrix over a ring, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidParameter("ragged matrix".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.data
            .chunks(self.cols.max(1))
            .map(<[u32]>::to_vec)
            .take(self.rows)
            .collect()
    }

    pub fn mul(&self, other: &Matrix, ring: &Ring) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = ring.add(out.get(i, j), ring.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix, ring: &Ring) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| ring.add(a, b))
                .collect(),
        }
    }

    /// `acc += self * v`.
    fn apply_into(&self, v: &[u32], acc: &mut [u32], ring: &Ring) {
        for (i, slot) in acc.iter_mut().enumerate() {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            for (&a, &x) in row.iter().zip(v) {
                if a != 0 && x != 0 {
                    *slot = ring.add(*slot, ring.mul(a, x));
                }
            }
        }
    }
}

/// A monomial term `coef * prod x_i^{exps[i]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub coef: u32,
    pub exps: Vec<u32>,
}

/// A polynomial over `F_q` as a list of terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    pub terms: Vec<Term>,
}

impl Polynomial {
    pub fn eval(&self, vars: &[u32], ring: &Ring) -> u32 {
        self.terms.iter().fold(0, |acc, t| {
            let mono =
                t.exps.iter().zip(vars).fold(
                    t.coef,
                    |m, (&e, &x)| {
                        if e == 0 {
                            m
                        } else {
                            ring.mul(m, ring.pow(x, e as u64))
                        }
                    },
                );
            ring.add(acc, mono)
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RuleBody {
    Table(Vec<u32>),
    Linear(Vec<Matrix>),
    Polynomial(Vec<Polynomial>),
}

/// A local defining map `A^arity -> B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalRule {
    source: Alphabet,
    target: Alphabet,
    arity: usize,
    body: RuleBody,
}

/// Which concrete category a table is claimed to be a morphism of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorphismClass {
    Set,
    Linear,
    Polynomial,
}

/// Index of a tuple in mixed radix, first element most significant.
pub(crate) fn tuple_index(args: &[u32], base: u32) -> usize {
    args.iter().fold(0usize, |acc, &a| acc * base as usize + a as usize)
}

/// Inverse of [`tuple_index`].
pub(crate) fn tuple_decode(mut idx: usize, base: u32, out: &mut [u32]) {
    for slot in out.iter_mut().rev() {
        *slot = (idx % base as usize) as u32;
        idx /= base as usize;
    }
}

impl LocalRule {
    pub fn table(source: Alphabet, target: Alphabet, arity: usize, entries: Vec<u32>) -> Result<LocalRule> {
        let expected = pow_sat(source.size() as u64, arity);
        if entries.len() as u128 != expected {
            return Err(Error::InvalidParameter(format!(
                "table has {} entries, expected {expected}",
                entries.len()
            )));
        }
        if let Some(&bad) = entries.iter().find(|&&e| e >= target.size()) {
            return Err(Error::SymbolOutOfRange {
                symbol: bad as u64,
                size: target.size() as u64,
            });
        }
        Ok(LocalRule {
            source,
            target,
            arity,
            body: RuleBody::Table(entries),
        })
    }

    /// Table rule from a function of the argument tuple.
    pub fn from_fn(
        source: Alphabet,
        target: Alphabet,
        arity: usize,
        budget: u64,
        f: impl Fn(&[u32]) -> u32,
    ) -> Result<LocalRule> {
        let n = pow_sat(source.size() as u64, arity);
        check_budget("rule table", n, budget)?;
        let mut args = vec![0u32; arity];
        let entries = (0..n as usize)
            .map(|i| {
                tuple_decode(i, source.size(), &mut args);
                f(&args)
            })
            .collect();
        LocalRule::table(source, target, arity, entries)
    }

    pub fn linear(source: Alphabet, target: Alphabet, matrices: Vec<Matrix>) -> Result<LocalRule> {
        common_ring(&source, &target)?;
        let ring = source.ring().unwrap();
        for m in &matrices {
            if m.rows != target.rank() || m.cols != source.rank() {
                return Err(Error::InvalidParameter(format!(
                    "linear coefficient is {}x{}, expected {}x{}",
                    m.rows,
                    m.cols,
                    target.rank(),
                    source.rank()
                )));
            }
            if m.data.iter().any(|&x| x >= ring.size()) {
                return Err(Error::InvalidParameter("matrix entry outside the ring".into()));
            }
        }
        Ok(LocalRule {
            arity: matrices.len(),
            source,
            target,
            body: RuleBody::Linear(matrices),
        })
    }

    pub fn polynomial(source: Alphabet, target: Alphabet, arity: usize, coords: Vec<Polynomial>) -> Result<LocalRule> {
        let ring = common_ring(&source, &target)?;
        if !ring.is_field() {
            return Err(Error::AlphabetMismatch(
                "polynomial rules need F_q alphabets on both sides".into(),
            ));
        }
        if coords.len() != target.rank() {
            return Err(Error::InvalidParameter(format!(
                "{} polynomials for target rank {}",
                coords.len(),
                target.rank()
            )));
        }
        let nvars = arity * source.rank();
        for poly in &coords {
            for t in &poly.terms {
                if t.exps.len() != nvars || t.coef >= ring.size() {
                    return Err(Error::InvalidParameter(format!(
                        "polynomial term must have {nvars} exponents and a coefficient in the field"
                    )));
                }
            }
        }
        Ok(LocalRule {
            source,
            target,
            arity,
            body: RuleBody::Polynomial(coords),
        })
    }

    pub fn source(&self) -> &Alphabet {
        &self.source
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn body(&self) -> &RuleBody {
        &self.body
    }

    pub fn is_table(&self) -> bool {
        matches!(self.body, RuleBody::Table(_))
    }

    pub fn as_linear(&self) -> Option<&[Matrix]> {
        match &self.body {
            RuleBody::Linear(ms) => Some(ms),
            _ => None,
        }
    }

    /// Number of entries the tabulated rule would have.
    pub fn table_len(&self) -> u128 {
        pow_sat(self.source.size() as u64, self.arity)
    }

    /// Evaluates the rule on a tuple of symbols.
    pub fn eval_rule(&self, args: &[Symbol]) -> Result<Symbol> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: args.len(),
            });
        }
        for &a in args {
            self.source.check(a)?;
        }
        let raw: Vec<u32> = args.iter().map(|s| s.0).collect();
        Ok(Symbol(self.eval_raw(&raw)))
    }

    /// Evaluation without validation; callers guarantee arity and ranges.
    pub(crate) fn eval_raw(&self, args: &[u32]) -> u32 {
        match &self.body {
            RuleBody::Table(t) => t[tuple_index(args, self.source.size())],
            RuleBody::Linear(ms) => {
                let ring = self.source.ring().expect("linear rules are structured");
                let mut acc = vec![0u32; self.target.rank()];
                let mut coords = vec![0u32; self.source.rank()];
                for (m, &a) in ms.iter().zip(args) {
                    if a == 0 {
                        continue;
                    }
                    self.source.decode(Symbol(a), &mut coords);
                    m.apply_into(&coords, &mut acc, ring);
                }
                self.target.encode(&acc).0
            }
            RuleBody::Polynomial(ps) => {
                let ring = self.source.ring().expect("polynomial rules are structured");
                let k = self.source.rank();
                let mut vars = vec![0u32; self.arity * k];
                for (m, &a) in args.iter().enumerate() {
                    self.source.decode(Symbol(a), &mut vars[m * k..(m + 1) * k]);
                }
                let out: Vec<u32> = ps.iter().map(|p| p.eval(&vars, ring)).collect();
                self.target.encode(&out).0
            }
        }
    }

    /// The extensionally equal table rule.
    pub fn lower_to_table(&self, budget: u64) -> Result<LocalRule> {
        if self.is_table() {
            return Ok(self.clone());
        }
        check_budget("rule lowering", self.table_len(), budget)?;
        let n = self.table_len() as usize;
        let mut entries = vec![0u32; n];
        let base = self.source.size();
        let arity = self.arity;
        crate::parallel::fill_chunks(&mut entries, 4096, |start, chunk| {
            let mut args = vec![0u32; arity];
            for (off, slot) in chunk.iter_mut().enumerate() {
                tuple_decode(start + off, base, &mut args);
                *slot = self.eval_raw(&args);
            }
        });
        Ok(LocalRule {
            source: self.source.clone(),
            target: self.target.clone(),
            arity: self.arity,
            body: RuleBody::Table(entries),
        })
    }

    /// Permutes the argument positions: new argument `i` is old argument `perm[i]`.
    pub(crate) fn permute_args(&self, perm: &[usize]) -> Result<LocalRule> {
        debug_assert_eq!(perm.len(), self.arity);
        let body = match &self.body {
            RuleBody::Linear(ms) => RuleBody::Linear(perm.iter().map(|&i| ms[i].clone()).collect()),
            RuleBody::Polynomial(ps) => {
                let k = self.source.rank();
                let ps = ps
                    .iter()
                    .map(|p| Polynomial {
                        terms: p
                            .terms
                            .iter()
                            .map(|t| {
                                let mut exps = vec![0; t.exps.len()];
                                for (new, &old) in perm.iter().enumerate() {
                                    exps[new * k..(new + 1) * k].copy_from_slice(&t.exps[old * k..(old + 1) * k]);
                                }
                                Term { coef: t.coef, exps }
                            })
                            .collect(),
                    })
                    .collect();
                RuleBody::Polynomial(ps)
            }
            RuleBody::Table(t) => {
                let base = self.source.size();
                let mut new_args = vec![0u32; self.arity];
                let mut old_args = vec![0u32; self.arity];
                let entries = (0..t.len())
                    .map(|i| {
                        tuple_decode(i, base, &mut new_args);
                        for (new, &old) in perm.iter().enumerate() {
                            old_args[old] = new_args[new];
                        }
                        t[tuple_index(&old_args, base)]
                    })
                    .collect();
                RuleBody::Table(entries)
            }
        };
        Ok(LocalRule {
            source: self.source.clone(),
            target: self.target.clone(),
            arity: self.arity,
            body,
        })
    }

    /// Whether this table is a morphism of the claimed category.
    ///
    /// `Set` always holds. `Linear` extracts a witness from the images of
    /// coordinate unit vectors and then verifies it on every tuple.
    /// `Polynomial` holds exactly when both sides are vector spaces over the
    /// same finite field, since every map between finite `F_q`-spaces is
    /// polynomial.
    pub fn is_morphism(&self, claimed: MorphismClass, budget: u64) -> Result<bool> {
        match claimed {
            MorphismClass::Set => Ok(true),
            MorphismClass::Polynomial => Ok(common_ring(&self.source, &self.target)
                .map(|r| r.is_field())
                .unwrap_or(false)),
            MorphismClass::Linear => {
                if common_ring(&self.source, &self.target).is_err() {
                    return Ok(false);
                }
                Ok(self.linear_witness(budget)?.is_some())
            }
        }
    }

    /// The linear rule reproducing this one, if any.
    pub fn linear_witness(&self, budget: u64) -> Result<Option<LocalRule>> {
        if common_ring(&self.source, &self.target).is_err() {
            return Ok(None);
        }
        if let RuleBody::Linear(_) = self.body {
            return Ok(Some(self.clone()));
        }
        check_budget("linearity check", self.table_len(), budget)?;
        let ks = self.source.rank();
        let kt = self.target.rank();
        let mut args = vec![0u32; self.arity];
        if self.eval_raw(&args) != 0 {
            return Ok(None);
        }
        let mut unit = vec![0u32; ks];
        let mut matrices = Vec::with_capacity(self.arity);
        for m in 0..self.arity {
            let mut mat = Matrix::zeros(kt, ks);
            for j in 0..ks {
                unit.iter_mut().for_each(|u| *u = 0);
                unit[j] = 1;
                args[m] = self.source.encode(&unit).0;
                let col = self.target.coords(Symbol(self.eval_raw(&args)));
                for (i, &c) in col.iter().enumerate() {
                    mat.set(i, j, c);
                }
            }
            args[m] = 0;
            matrices.push(mat);
        }
        let candidate = LocalRule::linear(self.source.clone(), self.target.clone(), matrices)?;
        let n = self.table_len() as usize;
        let base = self.source.size();
        let agrees = crate::parallel::all_range(n, |i| {
            let mut a = vec![0u32; self.arity];
            tuple_decode(i, base, &mut a);
            candidate.eval_raw(&a) == self.eval_raw(&a)
        });
        Ok(agrees.then_some(candidate))
    }
}

/// The scalar ring shared by two structured alphabets.
pub(crate) fn common_ring<'a>(a: &'a Alphabet, b: &Alphabet) -> Result<&'a Ring> {
    match (a.ring(), b.ring()) {
        (Some(ra), Some(rb)) if ra == rb => Ok(ra),
        _ => Err(Error::AlphabetMismatch(format!(
            "{:?} and {:?} are not structured over a common ring",
            a.kind(),
            b.kind()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn majority_rule() -> LocalRule {
        LocalRule::from_fn(Alphabet::binary(), Alphabet::binary(), 3, DEFAULT_BUDGET, |a| {
            u32::from(a.iter().sum::<u32>() >= 2)
        })
        .unwrap()
    }

    fn syms(v: &[u32]) -> Vec<Symbol> {
        v.iter().map(|&x| Symbol(x)).collect()
    }

    #[test]
    fn carrier_sizes() {
        assert_eq!(Alphabet::finite(7).unwrap().size(), 7);
        assert_eq!(Alphabet::vector(4, 2).unwrap().size(), 16);
        assert_eq!(Alphabet::module(2, 3, 2).unwrap().size(), 64);
        assert!(Alphabet::finite(0).is_err());
        assert!(Alphabet::vector(6, 1).is_err());
    }

    #[test]
    fn module_axioms_spot_check() {
        let a = Alphabet::module(3, 2, 2).unwrap();
        let ring = a.ring().unwrap().clone();
        for x in a.symbols().step_by(7) {
            assert_eq!(a.add(x, a.zero()).unwrap(), x);
            for y in a.symbols().step_by(11) {
                assert_eq!(a.add(x, y).unwrap(), a.add(y, x).unwrap());
                for c in 0..ring.size() {
                    let lhs = a.scale(c, a.add(x, y).unwrap()).unwrap();
                    let rhs = a.add(a.scale(c, x).unwrap(), a.scale(c, y).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn majority_values() {
        let r = majority_rule();
        assert_eq!(r.eval_rule(&syms(&[0, 1, 0])).unwrap(), Symbol(0));
        assert_eq!(r.eval_rule(&syms(&[1, 0, 1])).unwrap(), Symbol(1));
        assert!(matches!(r.eval_rule(&syms(&[0, 1])), Err(Error::ArityMismatch { .. })));
        assert!(matches!(
            r.eval_rule(&syms(&[0, 2, 0])),
            Err(Error::SymbolOutOfRange { .. })
        ));
    }

    #[test]
    fn zero_linear_rule() {
        let a = Alphabet::vector(9, 2).unwrap();
        let r = LocalRule::linear(a.clone(), a.clone(), vec![Matrix::zeros(2, 2); 3]).unwrap();
        for x in (0..81).step_by(5) {
            assert_eq!(r.eval_rule(&syms(&[x, 80 - x, 17])).unwrap(), Symbol(0));
        }
    }

    #[test]
    fn lowering_is_idempotent() {
        let t = majority_rule();
        assert_eq!(t.lower_to_table(DEFAULT_BUDGET).unwrap(), t);
        let a = Alphabet::module(2, 2, 1).unwrap();
        let lin = LocalRule::linear(
            a.clone(),
            a,
            vec![Matrix::from_rows(vec![vec![3]]).unwrap(), Matrix::identity(1)],
        )
        .unwrap();
        let once = lin.lower_to_table(DEFAULT_BUDGET).unwrap();
        assert_eq!(once.lower_to_table(DEFAULT_BUDGET).unwrap(), once);
    }

    #[test]
    fn laplacian_style_rule_over_f5() {
        // mu(y) = y(0) - 3 (y(-1) + y(1)); memory order (-1, 0, 1).
        let a = Alphabet::vector(5, 1).unwrap();
        let m = |x: u32| Matrix::from_rows(vec![vec![x]]).unwrap();
        let lin = LocalRule::linear(a.clone(), a, vec![m(2), m(1), m(2)]).unwrap();
        let table = lin.lower_to_table(DEFAULT_BUDGET).unwrap();
        let RuleBody::Table(entries) = table.body() else {
            unreachable!()
        };
        assert_eq!(entries.len(), 125);
        for l in 0..5i64 {
            for c in 0..5i64 {
                for r in 0..5i64 {
                    let direct = (c - 3 * (l + r)).rem_euclid(5) as u32;
                    let idx = (l * 25 + c * 5 + r) as usize;
                    assert_eq!(entries[idx], direct);
                    assert_eq!(lin.eval_rule(&syms(&[l as u32, c as u32, r as u32])).unwrap().0, direct);
                }
            }
        }
    }

    #[test]
    fn polynomial_rule_over_f3() {
        // mu(y) = y(1) - y(0)^2, memory (0, 1): variables x0 = y(0), x1 = y(1).
        let a = Alphabet::vector(3, 1).unwrap();
        let poly = Polynomial {
            terms: vec![
                Term {
                    coef: 1,
                    exps: vec![0, 1],
                },
                Term {
                    coef: 2,
                    exps: vec![2, 0],
                },
            ],
        };
        let rule = LocalRule::polynomial(a.clone(), a, 2, vec![poly]).unwrap();
        let table = rule.lower_to_table(DEFAULT_BUDGET).unwrap();
        for y0 in 0..3i64 {
            for y1 in 0..3i64 {
                let expect = (y1 - y0 * y0).rem_euclid(3) as u32;
                assert_eq!(table.eval_rule(&syms(&[y0 as u32, y1 as u32])).unwrap().0, expect);
            }
        }
    }

    #[test]
    fn polynomial_rules_need_fields() {
        let a = Alphabet::module(2, 2, 1).unwrap();
        assert!(LocalRule::polynomial(a.clone(), a, 1, vec![Polynomial::default()]).is_err());
    }

    #[test]
    fn morphism_checks() {
        let a = Alphabet::vector(3, 2).unwrap();
        let lin = LocalRule::linear(
            a.clone(),
            a.clone(),
            vec![
                Matrix::from_rows(vec![vec![1, 2], vec![0, 1]]).unwrap(),
                Matrix::identity(2),
            ],
        )
        .unwrap();
        let table = lin.lower_to_table(DEFAULT_BUDGET).unwrap();
        assert!(table.is_morphism(MorphismClass::Linear, DEFAULT_BUDGET).unwrap());
        assert_eq!(table.linear_witness(DEFAULT_BUDGET).unwrap().unwrap(), lin);

        // Majority over F_2 is not additive.
        let f2 = Alphabet::vector(2, 1).unwrap();
        let maj = LocalRule::from_fn(f2.clone(), f2.clone(), 3, DEFAULT_BUDGET, |a| {
            u32::from(a.iter().sum::<u32>() >= 2)
        })
        .unwrap();
        let e = |v: &[u32]| maj.eval_rule(&syms(v)).unwrap().0;
        assert_ne!((e(&[1, 0, 0]) + e(&[0, 1, 0])) % 2, e(&[1, 1, 0]));
        assert!(!maj.is_morphism(MorphismClass::Linear, DEFAULT_BUDGET).unwrap());
        assert!(maj.is_morphism(MorphismClass::Polynomial, DEFAULT_BUDGET).unwrap());

        let id = LocalRule::linear(a.clone(), a.clone(), vec![Matrix::identity(2)])
            .unwrap()
            .lower_to_table(DEFAULT_BUDGET)
            .unwrap();
        assert!(id.is_morphism(MorphismClass::Linear, DEFAULT_BUDGET).unwrap());

        // Plain sets are never linear.
        assert!(!majority_rule()
            .is_morphism(MorphismClass::Linear, DEFAULT_BUDGET)
            .unwrap());
    }

    #[test]
    fn permute_args_reorders_table() {
        let a = Alphabet::finite(3).unwrap();
        let r = LocalRule::from_fn(a.clone(), a, 2, DEFAULT_BUDGET, |x| (x[0] + 2 * x[1]) % 3).unwrap();
        let p = r.permute_args(&[1, 0]).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(p.eval_raw(&[y, x]), r.eval_raw(&[x, y]));
            }
        }
    }
}
