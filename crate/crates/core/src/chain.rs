//! Smith normal form over the finite chain rings `F_p[π]/(π^e)` and `Z/p^s`.
//!
//! Every ideal of such a ring is `(t^v)` for the uniformizer `t`, so a matrix
//! diagonalizes to entries `t^{v_r}` using only the valuation and division by
//! powers of `t`.

use crate::ring::{BaseRing, Scalar};

pub type Matrix = Vec<Vec<Scalar>>;

#[derive(Clone, Debug)]
pub struct Smith {
    pub rows: usize,
    pub cols: usize,
    /// Valuation of each diagonal pivot `t^{v_r}`, in pivot order.
    pub valuations: Vec<u32>,
    /// Invertible row transform `P` with `P · M · Q = D`.
    pub p: Matrix,
    /// Invertible column transform `Q`.
    pub q: Matrix,
}

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Scalar::ONE } else { Scalar::ZERO }).collect())
        .collect()
}

/// Computes `P · M · Q = diag(t^{v_0}, …)`.
pub fn smith(ring: BaseRing, m: &Matrix, ncols: usize) -> Smith {
    let nrows = m.len();
    let mut a = m.clone();
    let mut p = identity(nrows);
    let mut q = identity(ncols);
    let mut valuations = Vec::new();
    let mut r = 0;
    while r < nrows.min(ncols) {
        // pivot of minimal valuation in the remaining block
        let mut best: Option<(u32, usize, usize)> = None;
        'search: for i in r..nrows {
            for j in r..ncols {
                if let Some(v) = ring.valuation(a[i][j]) {
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                        if v == 0 {
                            break 'search;
                        }
                    }
                }
            }
        }
        let Some((v, pi, pj)) = best else { break };
        a.swap(r, pi);
        p.swap(r, pi);
        if pj != r {
            for row in a.iter_mut() {
                row.swap(r, pj);
            }
            for row in q.iter_mut() {
                row.swap(r, pj);
            }
        }
        // normalize pivot to t^v
        let unit = ring.shift_down(a[r][r], v);
        let uinv = ring.inv(unit).expect("pivot cofactor is a unit");
        for x in a[r].iter_mut() {
            *x = ring.mul(*x, uinv);
        }
        for x in p[r].iter_mut() {
            *x = ring.mul(*x, uinv);
        }
        // clear the column
        for i in 0..nrows {
            if i == r || a[i][r].is_zero() {
                continue;
            }
            let c = ring.shift_down(a[i][r], v);
            let (pivot_row, prow) = (a[r].clone(), p[r].clone());
            for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                *x = ring.sub(*x, ring.mul(c, *y));
            }
            for (x, y) in p[i].iter_mut().zip(&prow) {
                *x = ring.sub(*x, ring.mul(c, *y));
            }
        }
        // clear the row
        for j in 0..ncols {
            if j == r || a[r][j].is_zero() {
                continue;
            }
            let c = ring.shift_down(a[r][j], v);
            for row in a.iter_mut() {
                let y = row[r];
                row[j] = ring.sub(row[j], ring.mul(c, y));
            }
            for row in q.iter_mut() {
                let y = row[r];
                row[j] = ring.sub(row[j], ring.mul(c, y));
            }
        }
        valuations.push(v);
        r += 1;
    }
    Smith { rows: nrows, cols: ncols, valuations, p, q }
}

/// Structure of the submodule of `R^n` spanned by the given vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanStructure {
    /// Number of cyclic summands, `dim_k(B/𝔪B)`.
    pub minimal_generators: usize,
    /// Length of the module, `dim_k(B)`.
    pub length: usize,
    /// True when every summand is `R` itself.
    pub free: bool,
}

pub fn span_structure(ring: BaseRing, vectors: &[Vec<Scalar>], n: usize) -> SpanStructure {
    let s = smith(ring, &vectors.to_vec(), n);
    let l = ring.length();
    let length: u32 = s.valuations.iter().map(|v| l - v).sum();
    SpanStructure {
        minimal_generators: s.valuations.len(),
        length: length as usize,
        free: s.valuations.iter().all(|&v| v == 0),
    }
}

/// Generators of `{x ∈ R^n : M x = 0}` where `M` has `n` columns.
pub fn kernel(ring: BaseRing, m: &Matrix, n: usize) -> Vec<Vec<Scalar>> {
    let s = smith(ring, m, n);
    let l = ring.length();
    let mut out = Vec::new();
    for j in 0..n {
        let factor = match s.valuations.get(j) {
            Some(&0) => continue,
            Some(&v) => ring.t_pow(l - v),
            None => Scalar::ONE,
        };
        let col: Vec<Scalar> = (0..n).map(|i| ring.mul(s.q[i][j], factor)).collect();
        if col.iter().any(|c| !c.is_zero()) {
            out.push(col);
        }
    }
    out
}

/// Some solution of `M x = b`, if one exists.
pub fn solve(ring: BaseRing, m: &Matrix, n: usize, b: &[Scalar]) -> Option<Vec<Scalar>> {
    let s = smith(ring, m, n);
    let c: Vec<Scalar> = s
        .p
        .iter()
        .map(|row| row.iter().zip(b).fold(Scalar::ZERO, |acc, (x, y)| ring.add(acc, ring.mul(*x, *y))))
        .collect();
    let mut y = vec![Scalar::ZERO; n];
    for (i, ci) in c.iter().enumerate() {
        match s.valuations.get(i) {
            Some(&v) => {
                if let Some(w) = ring.valuation(*ci) {
                    if w < v {
                        return None;
                    }
                    y[i] = ring.shift_down(*ci, v);
                }
            }
            None => {
                if !ci.is_zero() {
                    return None;
                }
            }
        }
    }
    Some(
        (0..n)
            .map(|i| (0..n).fold(Scalar::ZERO, |acc, j| ring.add(acc, ring.mul(s.q[i][j], y[j]))))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat_vec(ring: BaseRing, m: &Matrix, x: &[Scalar]) -> Vec<Scalar> {
        m.iter()
            .map(|row| row.iter().zip(x).fold(Scalar::ZERO, |a, (u, v)| ring.add(a, ring.mul(*u, *v))))
            .collect()
    }

    #[test]
    fn freeness_examples() {
        let r = BaseRing::fp_pi(2, 2).unwrap();
        let pi = r.pi();
        // R·1 + R·πx inside R^2 (basis 1, x): not free, length 3
        let s = span_structure(r, &[vec![Scalar::ONE, Scalar::ZERO], vec![Scalar::ZERO, pi]], 2);
        assert_eq!(s, SpanStructure { minimal_generators: 2, length: 3, free: false });
        let id: Vec<Vec<Scalar>> = identity(4);
        let s = span_structure(r, &id, 4);
        assert_eq!(s, SpanStructure { minimal_generators: 4, length: 8, free: true });
        let s = span_structure(r, &[], 3);
        assert_eq!(s, SpanStructure { minimal_generators: 0, length: 0, free: true });
    }

    #[test]
    fn kernel_and_solve_over_z4() {
        let r = BaseRing::zmod(2, 2).unwrap();
        let two = r.from_int(2);
        // M = [2 0; 0 1]; kernel generated by (2, 0)
        let m = vec![vec![two, Scalar::ZERO], vec![Scalar::ZERO, Scalar::ONE]];
        let k = kernel(r, &m, 2);
        assert_eq!(k.len(), 1);
        assert!(mat_vec(r, &m, &k[0]).iter().all(|c| c.is_zero()));
        assert!(!k[0].iter().all(|c| c.is_zero()));
        let x = solve(r, &m, 2, &[two, r.from_int(3)]).unwrap();
        assert_eq!(mat_vec(r, &m, &x), vec![two, r.from_int(3)]);
        assert!(solve(r, &m, 2, &[Scalar::ONE, Scalar::ZERO]).is_none());
    }

    #[test]
    fn random_solve_roundtrip() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let r = BaseRing::fp_pi(3, 2).unwrap();
        for _ in 0..50 {
            let (rows, cols) = (rng.random_range(1..5), rng.random_range(1..5));
            let m: Matrix = (0..rows)
                .map(|_| (0..cols).map(|_| Scalar(rng.random_range(0..r.size()))).collect())
                .collect();
            let x: Vec<Scalar> = (0..cols).map(|_| Scalar(rng.random_range(0..r.size()))).collect();
            let b = mat_vec(r, &m, &x);
            let y = solve(r, &m, cols, &b).unwrap();
            assert_eq!(mat_vec(r, &m, &y), b);
            for k in kernel(r, &m, cols) {
                assert!(mat_vec(r, &m, &k).iter().all(|c| c.is_zero()));
            }
        }
    }
}
