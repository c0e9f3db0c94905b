//! Integer lattices in Z^d.
//!
//! A [`Lattice`] is stored by its column Hermite normal form: columns are
//! in echelon form with strictly increasing pivot rows, each pivot is
//! positive, and every entry of an earlier column sitting in a later
//! column's pivot row is reduced into `[0, pivot)`. Two generating sets of
//! the same subgroup therefore produce identical `Lattice` values, which is
//! what makes lattice documents reserialize bit-exactly.
//!
//! Full-rank lattices have finite index; their coset representatives are the
//! points of the half-open box `[0, h_0) x ... x [0, h_{d-1})` spanned by the
//! HNF diagonal, listed lexicographically.

use std::fmt;

use crate::error::{Error, Result};

/// Desk-scale ceiling on the index of lattices whose cosets are tabulated.
pub const MAX_COSET_INDEX: u64 = 1_000_000;

/// A point of Z^d.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(pub Vec<i64>);

impl GroupElement {
    pub fn new(coords: Vec<i64>) -> Self {
        GroupElement(coords)
    }

    pub fn zero(dim: usize) -> Self {
        GroupElement(vec![0; dim])
    }

    /// The single-coordinate element `(k)` of Z.
    pub fn scalar(k: i64) -> Self {
        GroupElement(vec![k])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn checked_add(&self, other: &GroupElement) -> Result<GroupElement> {
        same_dim(self.dim(), other.dim())?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow("group addition")))
            .collect::<Result<Vec<_>>>()
            .map(GroupElement)
    }

    pub fn checked_sub(&self, other: &GroupElement) -> Result<GroupElement> {
        same_dim(self.dim(), other.dim())?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b).ok_or(Error::Overflow("group subtraction")))
            .collect::<Result<Vec<_>>>()
            .map(GroupElement)
    }

    pub fn neg(&self) -> GroupElement {
        GroupElement(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<i64>> for GroupElement {
    fn from(v: Vec<i64>) -> Self {
        GroupElement(v)
    }
}

pub(crate) fn same_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Index of a subgroup of Z^d.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Index {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(n) => write!(f, "{n}"),
            Index::Infinite => write!(f, "infinite"),
        }
    }
}

/// A subgroup of Z^d, stored as its canonical column HNF basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    dim: usize,
    /// Basis columns, each of length `dim`.
    basis: Vec<Vec<i64>>,
    /// Pivot row of each column.
    pivots: Vec<usize>,
}

/// Computes the canonical HNF of the subgroup generated by `vectors` in Z^`dim`.
pub fn hnf(dim: usize, vectors: &[GroupElement]) -> Result<Lattice> {
    let mut cols: Vec<Vec<i128>> = Vec::with_capacity(vectors.len());
    for v in vectors {
        same_dim(dim, v.dim())?;
        if v.0.iter().any(|&c| c != 0) {
            cols.push(v.0.iter().map(|&c| c as i128).collect());
        }
    }

    let mut pivots = Vec::new();
    let mut next = 0usize;
    for row in 0..dim {
        if next >= cols.len() {
            break;
        }
        loop {
            // Move the smallest nonzero entry of this row into position `next`.
            let best = (next..cols.len())
                .filter(|&k| cols[k][row] != 0)
                .min_by_key(|&k| cols[k][row].unsigned_abs());
            let Some(best) = best else { break };
            cols.swap(next, best);
            let pivot = cols[next][row];
            let mut done = true;
            for k in next + 1..cols.len() {
                let entry = cols[k][row];
                if entry != 0 {
                    let q = entry.div_euclid(pivot);
                    axpy(&mut cols, k, next, q)?;
                    if cols[k][row] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if cols[next][row] == 0 {
            continue;
        }
        if cols[next][row] < 0 {
            for c in cols[next].iter_mut() {
                *c = -*c;
            }
        }
        let pivot = cols[next][row];
        for k in 0..next {
            let q = cols[k][row].div_euclid(pivot);
            if q != 0 {
                axpy(&mut cols, k, next, q)?;
            }
        }
        pivots.push(row);
        next += 1;
    }
    cols.truncate(next);

    let basis = cols
        .into_iter()
        .map(|col| {
            col.into_iter()
                .map(|c| i64::try_from(c).map_err(|_| Error::Overflow("hnf")))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Lattice { dim, basis, pivots })
}

/// `cols[target] -= q * cols[src]` with overflow checks.
fn axpy(cols: &mut [Vec<i128>], target: usize, src: usize, q: i128) -> Result<()> {
    for i in 0..cols[target].len() {
        let delta = q.checked_mul(cols[src][i]).ok_or(Error::Overflow("hnf"))?;
        let v = cols[target][i].checked_sub(delta).ok_or(Error::Overflow("hnf"))?;
        if v.unsigned_abs() > i64::MAX as u128 {
            return Err(Error::Overflow("hnf"));
        }
        cols[target][i] = v;
    }
    Ok(())
}

impl Lattice {
    /// Z^d itself.
    pub fn full(dim: usize) -> Lattice {
        let basis = (0..dim)
            .map(|j| (0..dim).map(|i| i64::from(i == j)).collect())
            .collect();
        Lattice {
            dim,
            basis,
            pivots: (0..dim).collect(),
        }
    }

    /// The lattice `n_0 Z x ... x n_{d-1} Z`.
    pub fn diagonal(diag: &[i64]) -> Result<Lattice> {
        let d = diag.len();
        let gens: Vec<GroupElement> = (0..d)
            .map(|j| GroupElement((0..d).map(|i| if i == j { diag[j] } else { 0 }).collect()))
            .collect();
        hnf(d, &gens)
    }

    /// `n Z` inside Z.
    pub fn multiples(n: i64) -> Result<Lattice> {
        Lattice::diagonal(&[n])
    }

    /// Builds a lattice from basis columns, re-canonicalizing them.
    pub fn from_columns(dim: usize, columns: &[Vec<i64>]) -> Result<Lattice> {
        let gens: Vec<GroupElement> = columns.iter().map(|c| GroupElement(c.clone())).collect();
        hnf(dim, &gens)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Basis columns in canonical HNF.
    pub fn columns(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.dim
    }

    pub fn index(&self) -> Index {
        if !self.is_full_rank() {
            return Index::Infinite;
        }
        let mut acc: u64 = 1;
        for (j, col) in self.basis.iter().enumerate() {
            acc = match acc.checked_mul(col[self.pivots[j]] as u64) {
                Some(v) => v,
                None => return Index::Finite(u64::MAX),
            };
        }
        Index::Finite(acc)
    }

    /// Coordinates of `g` in the HNF basis, or `None` when `g` is not in the lattice.
    pub fn coordinates(&self, g: &GroupElement) -> Result<Option<Vec<i64>>> {
        same_dim(self.dim, g.dim())?;
        let mut residual: Vec<i128> = g.0.iter().map(|&c| c as i128).collect();
        let mut coords = Vec::with_capacity(self.rank());
        for (col, &p) in self.basis.iter().zip(&self.pivots) {
            let pivot = col[p] as i128;
            if residual[p] % pivot != 0 {
                return Ok(None);
            }
            let c = residual[p] / pivot;
            for (r, &b) in residual.iter_mut().zip(col) {
                *r -= c * b as i128;
            }
            coords.push(i64::try_from(c).map_err(|_| Error::Overflow("lattice coordinates"))?);
        }
        if residual.iter().all(|&r| r == 0) {
            Ok(Some(coords))
        } else {
            Ok(None)
        }
    }

    pub fn contains(&self, g: &GroupElement) -> Result<bool> {
        Ok(self.coordinates(g)?.is_some())
    }

    /// The lattice point with the given basis coordinates.
    pub fn point(&self, coords: &[i64]) -> Result<GroupElement> {
        same_dim(self.rank(), coords.len())?;
        let mut out = vec![0i64; self.dim];
        for (col, &c) in self.basis.iter().zip(coords) {
            for (o, &b) in out.iter_mut().zip(col) {
                *o = c
                    .checked_mul(b)
                    .and_then(|t| o.checked_add(t))
                    .ok_or(Error::Overflow("lattice point"))?;
            }
        }
        Ok(GroupElement(out))
    }

    /// Coset table of a full-rank lattice.
    pub fn cosets(&self) -> Result<CosetTable> {
        CosetTable::new(self.clone())
    }

    /// Explicit isomorphism between this lattice and Z^rank.
    ///
    /// The HNF basis already identifies the lattice with Z^r: forward maps a
    /// lattice point to its basis coordinates, backward takes the integer
    /// combination of basis columns.
    pub fn snf_isomorphism(&self) -> LatticeIsomorphism {
        LatticeIsomorphism { lattice: self.clone() }
    }

    /// Every full-rank lattice of Z^`dim` with index exactly `n`, in canonical order.
    pub fn all_of_index(dim: usize, n: u64) -> Result<Vec<Lattice>> {
        if n == 0 {
            return Err(Error::InvalidParameter("index must be positive".into()));
        }
        if dim == 0 {
            return Ok(if n == 1 { vec![Lattice::full(0)] } else { vec![] });
        }
        let mut out = Vec::new();
        for diag in factorizations(n, dim) {
            // Below-pivot entries: column k, row i > k, ranges over [0, diag[i]).
            let slots: Vec<(usize, usize)> = (0..dim).flat_map(|k| (k + 1..dim).map(move |i| (k, i))).collect();
            let radices: Vec<u64> = slots.iter().map(|&(_, i)| diag[i]).collect();
            let count: u64 = radices.iter().product();
            for mut code in 0..count {
                let mut basis: Vec<Vec<i64>> = (0..dim)
                    .map(|j| (0..dim).map(|i| if i == j { diag[j] as i64 } else { 0 }).collect())
                    .collect();
                for (s, &(k, i)) in slots.iter().enumerate().rev() {
                    basis[k][i] = (code % radices[s]) as i64;
                    code /= radices[s];
                }
                out.push(Lattice {
                    dim,
                    basis,
                    pivots: (0..dim).collect(),
                });
            }
        }
        Ok(out)
    }
}

/// Ordered factorizations of `n` into `parts` positive factors.
fn factorizations(n: u64, parts: usize) -> Vec<Vec<u64>> {
    if parts == 1 {
        return vec![vec![n]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        if n.is_multiple_of(first) {
            for mut rest in factorizations(n / first, parts - 1) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
    }
    out
}

/// Coordinate maps between a lattice H and Z^rank(H).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeIsomorphism {
    lattice: Lattice,
}

impl LatticeIsomorphism {
    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// H -> Z^r. Fails when `h` is not a lattice point.
    pub fn forward(&self, h: &GroupElement) -> Result<GroupElement> {
        self.lattice
            .coordinates(h)?
            .map(GroupElement)
            .ok_or_else(|| Error::NotInLattice(h.to_string()))
    }

    /// Z^r -> H.
    pub fn backward(&self, c: &GroupElement) -> Result<GroupElement> {
        self.lattice.point(&c.0)
    }
}

/// Coset representatives of a full-rank lattice, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    lattice: Lattice,
    diag: Vec<i64>,
    reps: Vec<GroupElement>,
}

impl CosetTable {
    pub fn new(lattice: Lattice) -> Result<CosetTable> {
        if !lattice.is_full_rank() {
            return Err(Error::InfiniteIndex {
                rank: lattice.rank(),
                dim: lattice.dim(),
            });
        }
        let index = match lattice.index() {
            Index::Finite(n) => n,
            Index::Infinite => unreachable!(),
        };
        if index > MAX_COSET_INDEX {
            return Err(Error::BudgetExceeded {
                what: "coset table",
                needed: index as u128,
                budget: MAX_COSET_INDEX,
            });
        }
        let diag: Vec<i64> = (0..lattice.dim()).map(|i| lattice.basis[i][i]).collect();
        let mut reps = Vec::with_capacity(index as usize);
        let mut cur = vec![0i64; lattice.dim()];
        for _ in 0..index {
            reps.push(GroupElement(cur.clone()));
            for i in (0..cur.len()).rev() {
                cur[i] += 1;
                if cur[i] < diag[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
        Ok(CosetTable { lattice, diag, reps })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn reps(&self) -> &[GroupElement] {
        &self.reps
    }

    pub fn size(&self) -> usize {
        self.reps.len()
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    /// Position in `reps` of the coset containing `g`.
    pub fn index_of(&self, g: &GroupElement) -> Result<usize> {
        same_dim(self.dim(), g.dim())?;
        let mut residual: Vec<i128> = g.0.iter().map(|&c| c as i128).collect();
        let mut idx = 0usize;
        for i in 0..self.dim() {
            let h = self.diag[i] as i128;
            let q = residual[i].div_euclid(h);
            if q != 0 {
                for (r, &b) in residual.iter_mut().zip(&self.lattice.basis[i]).skip(i) {
                    *r -= q * b as i128;
                }
            }
            idx = idx * self.diag[i] as usize + residual[i] as usize;
        }
        Ok(idx)
    }

    /// The representative congruent to `g`.
    pub fn reduce(&self, g: &GroupElement) -> Result<GroupElement> {
        Ok(self.reps[self.index_of(g)?].clone())
    }

    /// For every rep `t` and every offset `m`, the rep index of `t + m`.
    /// Flat, row-major in `(rep, offset)`.
    pub fn neighbor_table(&self, offsets: &[GroupElement]) -> Result<Vec<u32>> {
        for m in offsets {
            same_dim(self.dim(), m.dim())?;
        }
        let mut out = Vec::with_capacity(self.size() * offsets.len());
        for t in &self.reps {
            for m in offsets {
                out.push(self.index_of(&t.checked_add(m)?)? as u32);
            }
        }
        Ok(out)
    }
}
