//! Linear systems over `Z/p^e` and `F_q`.
//!
//! Both rings are local, so diagonalizing with a pivot of minimal valuation
//! always works: the pivot divides every other entry of the remaining block.

use crate::alphabet::Matrix;
use crate::field::Ring;

/// Some `x` with `a x = b`, or `None` when the system is inconsistent.
// Index loops mirror the elimination steps on rows and columns.
#[allow(clippy::needless_range_loop)]
pub(crate) fn solve(ring: &Ring, a: &Matrix, b: &[u32]) -> Option<Vec<u32>> {
    let (m, n) = (a.rows, a.cols);
    assert_eq!(b.len(), m);
    let mut w: Vec<Vec<u32>> = a.to_rows();
    if m == 0 {
        return Some(vec![0; n]);
    }
    let mut rhs = b.to_vec();
    let mut q = Matrix::identity(n);
    let mut rank = 0;

    for k in 0..m.min(n) {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in w.iter().enumerate().skip(k) {
            for (j, &x) in row.iter().enumerate().skip(k) {
                if let Some(v) = ring.valuation(x) {
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        w.swap(k, pi);
        rhs.swap(k, pi);
        for row in w.iter_mut() {
            row.swap(k, pj);
        }
        for i in 0..n {
            let (x, y) = (q.get(i, k), q.get(i, pj));
            q.set(i, k, y);
            q.set(i, pj, x);
        }
        let pivot = w[k][k];
        for i in k + 1..m {
            if w[i][k] != 0 {
                let f = ring.divide(w[i][k], pivot).expect("minimal valuation pivot divides");
                for j in k..n {
                    let v = ring.sub(w[i][j], ring.mul(f, w[k][j]));
                    w[i][j] = v;
                }
                rhs[i] = ring.sub(rhs[i], ring.mul(f, rhs[k]));
            }
        }
        for j in k + 1..n {
            if w[k][j] != 0 {
                let f = ring.divide(w[k][j], pivot).expect("minimal valuation pivot divides");
                w[k][j] = 0;
                for i in 0..n {
                    let v = ring.sub(q.get(i, j), ring.mul(f, q.get(i, k)));
                    q.set(i, j, v);
                }
            }
        }
        rank = k + 1;
    }

    let mut y = vec![0u32; n];
    for k in 0..rank {
        y[k] = ring.divide(rhs[k], w[k][k])?;
    }
    if rhs[rank..].iter().any(|&r| r != 0) {
        return None;
    }
    let x: Vec<u32> = (0..n)
        .map(|i| (0..n).fold(0, |acc, j| ring.add(acc, ring.mul(q.get(i, j), y[j]))))
        .collect();
    debug_assert!((0..m).all(|i| { (0..n).fold(0, |acc, j| ring.add(acc, ring.mul(a.get(i, j), x[j]))) == b[i] }));
    Some(x)
}
