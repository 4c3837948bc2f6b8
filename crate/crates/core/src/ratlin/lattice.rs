//! Integer lattice utilities: kernels over Z, saturation, Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{primitive_vector, QVector};

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// Zero rows are dropped; pivots are positive and entries above a pivot lie in
/// `[0, pivot)`. The result depends only on the lattice, not on the generators.
pub fn hermite_rows(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        loop {
            // smallest nonzero |entry| in column c at or below row r
            let best = (r..m.len())
                .filter(|&i| !m[i][c].is_zero())
                .min_by(|&a, &b| m[a][c].abs().cmp(&m[b][c].abs()));
            let Some(p) = best else { break };
            m.swap(r, p);
            let mut done = true;
            for i in r + 1..m.len() {
                if m[i][c].is_zero() {
                    continue;
                }
                let q = m[i][c].div_floor(&m[r][c]);
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
                if !m[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < m.len() && !m[r][c].is_zero() {
            if m[r][c].is_negative() {
                for x in m[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            let pivot_row = m[r].clone();
            for row in m.iter_mut().take(r) {
                let q = row[c].div_floor(&pivot_row[c]);
                if !q.is_zero() {
                    for (x, y) in row.iter_mut().zip(&pivot_row) {
                        *x -= &q * y;
                    }
                }
            }
            r += 1;
        }
    }
    m.truncate(r);
    m
}

/// A Z-basis of `{x in Z^cols : M x = 0}` where `M` has the given integer rows.
///
/// Computed by unimodular column operations bringing `M` to column echelon
/// form, then put in Hermite normal form so the basis is canonical.
pub fn integer_kernel_basis(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    // u[j] is column j of the transform, stored as a row vector
    let mut u: Vec<Vec<BigInt>> = (0..cols)
        .map(|j| {
            (0..cols)
                .map(|i| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let mut c = 0;
    for i in 0..m.len() {
        if c == cols {
            break;
        }
        loop {
            let best = (c..cols)
                .filter(|&j| !m[i][j].is_zero())
                .min_by(|&a, &b| m[i][a].abs().cmp(&m[i][b].abs()));
            let Some(p) = best else { break };
            swap_cols(&mut m, &mut u, c, p);
            let mut done = true;
            for j in c + 1..cols {
                if m[i][j].is_zero() {
                    continue;
                }
                let q = m[i][j].div_floor(&m[i][c]);
                for row in m.iter_mut() {
                    let d = &q * &row[c];
                    row[j] -= d;
                }
                let uc = u[c].clone();
                for (x, y) in u[j].iter_mut().zip(&uc) {
                    *x -= &q * y;
                }
                if !m[i][j].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !m[i][c].is_zero() {
            c += 1;
        }
    }
    hermite_rows(&u[c..], cols)
}

fn swap_cols(m: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in m.iter_mut() {
        row.swap(a, b);
    }
    u.swap(a, b);
}

/// A Z-basis (in Hermite normal form) of `span(vectors) ∩ Z^n`.
pub fn saturated_lattice_basis(vectors: &[QVector], n: usize) -> Vec<Vec<BigInt>> {
    let rows: Vec<Vec<BigInt>> = vectors.iter().filter_map(|v| primitive_vector(v).ok()).collect();
    let annihilator = integer_kernel_basis(&rows, n);
    integer_kernel_basis(&annihilator, n)
}

/// Finds integer coefficients `c` with `sum c_i * values_i = gcd(values)`.
/// Returns `(gcd, c)`; the gcd is nonnegative.
pub fn gcd_combination(values: &[BigInt]) -> (BigInt, Vec<BigInt>) {
    let mut g = BigInt::zero();
    let mut coeffs: Vec<BigInt> = vec![BigInt::zero(); values.len()];
    for (i, v) in values.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let e = g.extended_gcd(v);
        // e.gcd = e.x * g + e.y * v
        for c in coeffs.iter_mut().take(i) {
            *c *= &e.x;
        }
        coeffs[i] = e.y.clone();
        g = e.gcd;
    }
    if g.is_negative() {
        g = -g;
        for c in coeffs.iter_mut() {
            *c = -c.clone();
        }
    }
    (g, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_of_all_ones() {
        let k = integer_kernel_basis(&[bi(&[1, 1, 1, 1])], 4);
        assert_eq!(
            k,
            vec![bi(&[1, 0, 0, -1]), bi(&[0, 1, 0, -1]), bi(&[0, 0, 1, -1])]
        );
    }

    #[test]
    fn kernel_is_saturated() {
        // x + 2y + 4z = 0 over Z has basis of index 1 in the rational kernel.
        let k = integer_kernel_basis(&[bi(&[2, 4, 8])], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(&v[0] * 2 + &v[1] * 4 + &v[2] * 8, BigInt::zero());
        }
        // (−2, 1, 0) must be an integer combination of the basis
        let h = hermite_rows(&[k[0].clone(), k[1].clone(), bi(&[-2, 1, 0])], 3);
        assert_eq!(h, hermite_rows(&k, 3));
    }

    #[test]
    fn saturation_of_a_scaled_vector() {
        let b = saturated_lattice_basis(&[QVector::from_ints(&[2, 4])], 2);
        assert_eq!(b, vec![bi(&[1, 2])]);
    }

    #[test]
    fn gcd_combination_hits_gcd() {
        let vals = bi(&[6, -10, 15]);
        let (g, c) = gcd_combination(&vals);
        assert_eq!(g, BigInt::one());
        let s: BigInt = vals.iter().zip(&c).map(|(a, b)| a * b).sum();
        assert_eq!(s, g);
    }
}
