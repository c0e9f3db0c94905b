//! Scalar rings for structured alphabets: `Z/p^e` and the Galois fields `F_{p^e}`.
//!
//! Ring elements are `u32` indices. For `Z/p^e` the index is the residue. For
//! `F_{p^e}` (e > 1) an element `c_0 + c_1 a + ... + c_{e-1} a^{e-1}` has index
//! `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`, where `a` is a root of the field's
//! defining polynomial.
//!
//! The defining polynomial of `F_{p^e}` is the monic irreducible polynomial
//! `x^e + c_{e-1} x^{e-1} + ... + c_0` of degree `e` over `F_p` whose code
//! `c_0 + c_1 p + ... + c_{e-1} p^{e-1}` is smallest. Examples: `F_4`:
//! `x^2 + x + 1`, `F_8`: `x^3 + x + 1`, `F_9`: `x^2 + 1`, `F_16`: `x^4 + x + 1`,
//! `F_25`: `x^2 + 2`, `F_27`: `x^3 + 2x + 1`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported ring size.
pub const MAX_RING_SIZE: u64 = 1 << 16;

/// Scalar ring shared by the coordinates of a structured alphabet.
#[derive(Clone)]
pub enum Ring {
    /// `Z/p^e`; `e = 1` is the prime field.
    Zmod { p: u32, e: u32, modulus: u32 },
    /// `F_{p^e}` with `e > 1`.
    Galois(Arc<GaloisField>),
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.params() == other.params()
    }
}
impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Zmod { p, e, .. } => write!(f, "Z/{p}^{e}"),
            Ring::Galois(g) => write!(f, "GF({}^{})", g.p, g.e),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits a prime power `q = p^e`.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p as u32, e))
}

fn checked_pow(p: u32, e: u32) -> Result<u32> {
    let size = (p as u64).checked_pow(e).filter(|&s| s <= MAX_RING_SIZE);
    size.map(|s| s as u32)
        .ok_or_else(|| Error::InvalidParameter(format!("ring of size {p}^{e} exceeds {MAX_RING_SIZE}")))
}

impl Ring {
    /// `Z/p^e`.
    pub fn zmod(p: u32, e: u32) -> Result<Ring> {
        if !is_prime(p as u64) || e == 0 {
            return Err(Error::InvalidParameter(format!(
                "Z/p^e needs a prime p and e >= 1, got p={p}, e={e}"
            )));
        }
        Ok(Ring::Zmod {
            p,
            e,
            modulus: checked_pow(p, e)?,
        })
    }

    /// The field with `q` elements.
    pub fn field(q: u64) -> Result<Ring> {
        let (p, e) = prime_power(q).ok_or_else(|| Error::InvalidParameter(format!("{q} is not a prime power")))?;
        if e == 1 {
            Ring::zmod(p, 1)
        } else {
            Ok(Ring::Galois(Arc::new(GaloisField::new(p, e)?)))
        }
    }

    /// `(p, e, is_field)`.
    pub fn params(&self) -> (u32, u32, bool) {
        match self {
            Ring::Zmod { p, e, .. } => (*p, *e, *e == 1),
            Ring::Galois(g) => (g.p, g.e, true),
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.params().0
    }

    pub fn size(&self) -> u32 {
        match self {
            Ring::Zmod { modulus, .. } => *modulus,
            Ring::Galois(g) => g.q,
        }
    }

    pub fn is_field(&self) -> bool {
        self.params().2
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    /// The image of an integer under `Z -> ring`.
    pub fn from_int(&self, n: i64) -> u32 {
        match self {
            Ring::Zmod { modulus, .. } => n.rem_euclid(*modulus as i64) as u32,
            Ring::Galois(g) => n.rem_euclid(g.p as i64) as u32,
        }
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        match self {
            Ring::Zmod { modulus, .. } => ((a as u64 + b as u64) % *modulus as u64) as u32,
            Ring::Galois(g) => g.add(a, b),
        }
    }

    pub fn neg(&self, a: u32) -> u32 {
        match self {
            Ring::Zmod { modulus, .. } => {
                if a == 0 {
                    0
                } else {
                    modulus - a
                }
            }
            Ring::Galois(g) => g.neg(a),
        }
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match self {
            Ring::Zmod { modulus, .. } => ((a as u64 * b as u64) % *modulus as u64) as u32,
            Ring::Galois(g) => g.mul(a, b),
        }
    }

    pub fn pow(&self, mut a: u32, mut k: u64) -> u32 {
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            k >>= 1;
        }
        acc
    }

    /// `p`-adic valuation; `None` for zero. Fields report 0 for every unit.
    pub fn valuation(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        match self {
            Ring::Zmod { p, .. } => {
                let mut v = 0;
                let mut x = a;
                while x.is_multiple_of(*p) {
                    x /= p;
                    v += 1;
                }
                Some(v)
            }
            Ring::Galois(_) => Some(0),
        }
    }

    pub fn is_unit(&self, a: u32) -> bool {
        self.valuation(a) == Some(0)
    }

    /// Multiplicative inverse of a unit.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if !self.is_unit(a) {
            return None;
        }
        match self {
            Ring::Zmod { modulus, .. } => {
                let (g, x, _) = ext_gcd(a as i64, *modulus as i64);
                debug_assert_eq!(g, 1);
                Some(x.rem_euclid(*modulus as i64) as u32)
            }
            Ring::Galois(g) => g.inv(a),
        }
    }

    /// Some `x` with `b * x = a`, when one exists.
    pub fn divide(&self, a: u32, b: u32) -> Option<u32> {
        if a == 0 {
            return Some(0);
        }
        let vb = self.valuation(b)?;
        let va = self.valuation(a)?;
        if va < vb {
            return None;
        }
        match self {
            Ring::Zmod { p, .. } => {
                let pv = p.pow(vb);
                let unit = b / pv;
                Some(self.mul(a / pv, self.inv(unit)?))
            }
            Ring::Galois(g) => Some(g.mul(a, g.inv(b)?)),
        }
    }
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// `F_{p^e}` with log/antilog multiplication tables.
pub struct GaloisField {
    p: u32,
    e: u32,
    q: u32,
    /// Coefficients `c_0..c_{e-1}` of the monic defining polynomial.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl GaloisField {
    pub fn new(p: u32, e: u32) -> Result<GaloisField> {
        if !is_prime(p as u64) || e < 2 {
            return Err(Error::InvalidParameter(format!(
                "GF(p^e) construction needs prime p and e >= 2, got p={p}, e={e}"
            )));
        }
        let q = checked_pow(p, e)?;
        let modulus = (0..q)
            .map(|code| digits(code, p, e))
            .find(|c| is_irreducible(c, p))
            .expect("an irreducible polynomial of every degree exists");

        let mut field = GaloisField {
            p,
            e,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        let generator = (2..q)
            .chain(std::iter::once(1))
            .find(|&g| field.slow_order(g) == q - 1)
            .expect("multiplicative group is cyclic");
        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for k in 0..q - 1 {
            exp.push(x);
            log[x as usize] = k;
            x = field.slow_mul(x, generator);
        }
        field.exp = exp;
        field.log = log;
        Ok(field)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    /// Coefficients `c_0..c_{e-1}` of the defining polynomial (leading 1 implied).
    pub fn defining_polynomial(&self) -> &[u32] {
        &self.modulus
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.e {
            out += ((a % self.p + b % self.p) % self.p) * scale;
            a /= self.p;
            b /= self.p;
            scale *= self.p;
        }
        out
    }

    fn neg(&self, a: u32) -> u32 {
        let mut a = a;
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.e {
            out += ((self.p - a % self.p) % self.p) * scale;
            a /= self.p;
            scale *= self.p;
        }
        out
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let k = (self.log[a as usize] + self.log[b as usize]) % (self.q - 1);
        self.exp[k as usize]
    }

    fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let k = (self.q - 1 - self.log[a as usize]) % (self.q - 1);
        Some(self.exp[k as usize])
    }

    /// Schoolbook multiplication modulo the defining polynomial.
    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let (p, e) = (self.p as u64, self.e as usize);
        let da = digits(a, self.p, self.e);
        let db = digits(b, self.p, self.e);
        let mut prod = vec![0u64; 2 * e];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for deg in (e..2 * e).rev() {
            let c = prod[deg];
            if c != 0 {
                prod[deg] = 0;
                // x^e = -(c_0 + ... + c_{e-1} x^{e-1})
                for (k, &m) in self.modulus.iter().enumerate() {
                    let sub = c * m as u64 % p;
                    prod[deg - e + k] = (prod[deg - e + k] + p - sub) % p;
                }
            }
        }
        prod[..e].iter().rev().fold(0u64, |acc, &c| acc * p + c) as u32
    }

    fn slow_order(&self, g: u32) -> u32 {
        if g == 0 {
            return 0;
        }
        let mut x = g;
        let mut k = 1;
        while x != 1 {
            x = self.slow_mul(x, g);
            k += 1;
            if k > self.q {
                return 0;
            }
        }
        k
    }
}

fn digits(mut code: u32, p: u32, e: u32) -> Vec<u32> {
    (0..e)
        .map(|_| {
            let d = code % p;
            code /= p;
            d
        })
        .collect()
}

/// Is the monic polynomial `x^e + c_{e-1}x^{e-1} + ... + c_0` irreducible over `F_p`?
fn is_irreducible(coeffs: &[u32], p: u32) -> bool {
    let e = coeffs.len();
    let mut f: Vec<u32> = coeffs.to_vec();
    f.push(1);
    for deg in 1..=e / 2 {
        let count = (p as u64).pow(deg as u32);
        for code in 0..count {
            let mut g = digits(code as u32, p, deg as u32);
            g.push(1);
            if poly_rem(&f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Remainder of `f` by monic `g` over `F_p`; coefficients low to high.
fn poly_rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let dg = g.len() - 1;
    let p = p as u64;
    while r.len() > dg {
        let lead = *r.last().unwrap() % p;
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (k, &gc) in g.iter().enumerate() {
                r[shift + k] = (r[shift + k] + p * p - lead * gc as u64 % p) % p;
            }
        }
        r.pop();
    }
    r.into_iter().map(|c| c as u32).collect()
}
