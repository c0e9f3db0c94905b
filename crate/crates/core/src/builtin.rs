//! Constructors for the standard automata.

use crate::alphabet::{Alphabet, LocalRule, Matrix, Symbol, DEFAULT_BUDGET};
use crate::ca::CellularAutomaton;
use crate::error::{Error, Result};
use crate::lattice::GroupElement;

fn line(range: impl IntoIterator<Item = i64>) -> Vec<GroupElement> {
    range.into_iter().map(GroupElement::scalar).collect()
}

fn identity_rule(a: &Alphabet) -> LocalRule {
    if a.is_structured() {
        LocalRule::linear(a.clone(), a.clone(), vec![Matrix::identity(a.rank())])
            .expect("identity matrix has the alphabet's rank")
    } else {
        LocalRule::table(a.clone(), a.clone(), 1, (0..a.size()).collect()).expect("valid table")
    }
}

/// Identity map of `A^{Z^d}`, memory `{0}`.
pub fn identity_ca(a: Alphabet, dim: usize) -> CellularAutomaton {
    CellularAutomaton::new(dim, vec![GroupElement::zero(dim)], identity_rule(&a))
        .expect("identity automaton is well formed")
}

/// The constant map onto `b0`, memory empty.
pub fn constant_ca(a: Alphabet, b: Alphabet, b0: Symbol, dim: usize) -> Result<CellularAutomaton> {
    b.check(b0)?;
    let rule = LocalRule::table(a, b, 0, vec![b0.0])?;
    CellularAutomaton::new(dim, vec![], rule)
}

/// `tau(x)(g) = x(g + g0)`.
pub fn shift_ca(a: Alphabet, g0: GroupElement) -> CellularAutomaton {
    let dim = g0.dim();
    CellularAutomaton::new(dim, vec![g0], identity_rule(&a)).expect("single memory element")
}

/// Majority vote over `{-1, 0, 1}` on binary configurations of Z.
pub fn majority_ca() -> CellularAutomaton {
    let a = Alphabet::binary();
    let rule = LocalRule::from_fn(a.clone(), a, 3, DEFAULT_BUDGET, |x| {
        u32::from(x.iter().sum::<u32>() >= 2)
    })
    .expect("8 entries");
    CellularAutomaton::new(1, line(-1..=1), rule).expect("valid")
}

/// Hedlund's marker: flips `x(0)` exactly when `(x(-1), x(1), x(2)) = (0, 1, 0)`.
pub fn hedlund_marker_ca() -> CellularAutomaton {
    let a = Alphabet::binary();
    let rule = LocalRule::from_fn(a.clone(), a, 4, DEFAULT_BUDGET, |x| {
        if (x[0], x[2], x[3]) == (0, 1, 0) {
            1 - x[1]
        } else {
            x[1]
        }
    })
    .expect("16 entries");
    CellularAutomaton::new(1, line(-1..=2), rule).expect("valid")
}

/// Conway's Life on Z^2 with memory `{-1,0,1}^2`.
///
/// The rule sums the whole 3x3 block including the centre: the centre
/// becomes live when that sum is 3, or when it is 4 and the centre is live.
pub fn game_of_life_ca() -> CellularAutomaton {
    let a = Alphabet::binary();
    let mut memory = Vec::with_capacity(9);
    for i in -1..=1 {
        for j in -1..=1 {
            memory.push(GroupElement(vec![i, j]));
        }
    }
    let centre = memory.iter().position(|g| g.0 == [0, 0]).expect("centre in block");
    let rule = LocalRule::from_fn(a.clone(), a, 9, DEFAULT_BUDGET, move |y| {
        let sum: u32 = y.iter().sum();
        u32::from(sum == 3 || (sum == 4 && y[centre] == 1))
    })
    .expect("512 entries");
    CellularAutomaton::new(2, memory, rule).expect("valid")
}

/// Discrete Laplacian over `F_q`: `x(g) - |S|^{-1} sum_{s in S} x(g + s)`.
pub fn laplacian_ca(q: u32, s: &[GroupElement]) -> Result<CellularAutomaton> {
    let dim = s
        .first()
        .map(GroupElement::dim)
        .ok_or_else(|| Error::InvalidParameter("Laplacian needs a nonempty S".into()))?;
    let a = Alphabet::vector(q, 1)?;
    let ring = a.ring().expect("vector alphabet").clone();
    let inv = ring
        .inv(ring.from_int(s.len() as i64))
        .ok_or_else(|| Error::InvalidParameter(format!("|S| = {} is not invertible in F_{q}", s.len())))?;
    let mut coeffs: Vec<(GroupElement, u32)> = vec![(GroupElement::zero(dim), 1)];
    for g in s {
        crate::lattice::same_dim(dim, g.dim())?;
        match coeffs.iter_mut().find(|(h, _)| h == g) {
            Some((_, c)) => *c = ring.sub(*c, inv),
            None => coeffs.push((g.clone(), ring.neg(inv))),
        }
    }
    let (memory, mats): (Vec<_>, Vec<_>) = coeffs
        .into_iter()
        .map(|(g, c)| (g, Matrix::from_rows(vec![vec![c]]).expect("1x1")))
        .unzip();
    CellularAutomaton::new(dim, memory, LocalRule::linear(a.clone(), a, mats)?)
}

/// `tau(x)(n) = x(n) - p x(n + 1)` over `Z/p^e`.
pub fn padic_step_ca(p: u32, e: u32) -> Result<CellularAutomaton> {
    let a = Alphabet::module(p, e, 1)?;
    let ring = a.ring().expect("module alphabet").clone();
    let mats = vec![
        Matrix::identity(1),
        Matrix::from_rows(vec![vec![ring.neg(ring.from_int(p as i64))]])?,
    ];
    CellularAutomaton::new(1, line(0..=1), LocalRule::linear(a.clone(), a, mats)?)
}

/// Elementary (width-3 binary) rule by Wolfram number: the output for
/// `(x(-1), x(0), x(1))` is bit `4 x(-1) + 2 x(0) + x(1)` of `number`.
pub fn elementary_ca(number: u8) -> CellularAutomaton {
    let a = Alphabet::binary();
    let entries = (0..8).map(|i| u32::from((number >> i) & 1)).collect();
    let rule = LocalRule::table(a.clone(), a, 3, entries).expect("8 entries");
    CellularAutomaton::new(1, line(-1..=1), rule).expect("valid")
}

/// `x(0) + x(1) mod 2`.
pub fn xor_ca() -> CellularAutomaton {
    let a = Alphabet::binary();
    let rule = LocalRule::table(a.clone(), a, 2, vec![0, 1, 1, 0]).expect("4 entries");
    CellularAutomaton::new(1, line(0..=1), rule).expect("valid")
}

/// Looks up a built-in automaton by name.
pub fn by_name(name: &str) -> Result<CellularAutomaton> {
    let ca = match name {
        "majority" => majority_ca(),
        "hedlund-marker" | "marker" => hedlund_marker_ca(),
        "game-of-life" | "life" => game_of_life_ca(),
        "xor" => xor_ca(),
        "identity" => identity_ca(Alphabet::binary(), 1),
        "shift" => shift_ca(Alphabet::binary(), GroupElement::scalar(1)),
        other => {
            if let Some(n) = other.strip_prefix("elementary-") {
                let n: u8 = n
                    .parse()
                    .map_err(|_| Error::InvalidParameter(format!("bad rule number in {other}")))?;
                elementary_ca(n)
            } else if let Some(rest) = other.strip_prefix("padic-") {
                let mut it = rest.split('-');
                let parse = |s: Option<&str>| -> Result<u32> {
                    s.and_then(|t| t.parse().ok())
                        .ok_or_else(|| Error::InvalidParameter(format!("expected padic-<p>-<e>, got {other}")))
                };
                let p = parse(it.next())?;
                let e = parse(it.next())?;
                padic_step_ca(p, e)?
            } else {
                return Err(Error::InvalidParameter(format!("unknown built-in automaton {other}")));
            }
        }
    };
    Ok(ca)
}

/// Names accepted by [`by_name`] (parametrised families shown by pattern).
pub const BUILTIN_NAMES: &[&str] = &[
    "majority",
    "hedlund-marker",
    "game-of-life",
    "xor",
    "identity",
    "shift",
    "elementary-<n>",
    "padic-<p>-<e>",
];
