//! Small exact linear algebra over `Rational64`, sized for Cartan matrices.

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

pub(crate) type RatMatrix = Vec<Vec<Rational64>>;

pub(crate) fn to_rational(m: &[Vec<i64>]) -> RatMatrix {
    m.iter()
        .map(|row| row.iter().map(|&x| Rational64::from_integer(x)).collect())
        .collect()
}

pub(crate) fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut RatMatrix) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                let pivot = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot) {
                    *x -= f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right kernel `{v : m v = 0}`.
pub(crate) fn nullspace(m: &[Vec<i64>]) -> Vec<Vec<Rational64>> {
    let mut a = to_rational(m);
    let cols = if a.is_empty() { 0 } else { a[0].len() };
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational64::zero(); cols];
            v[f] = Rational64::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f];
            }
            v
        })
        .collect()
}

/// Scales a rational vector to the primitive integer vector with positive
/// first nonzero entry.
pub(crate) fn primitive_integer(v: &[Rational64]) -> Vec<i64> {
    let den = v.iter().fold(1i64, |acc, x| acc.lcm(x.denom()));
    let ints: Vec<i64> = v.iter().map(|x| (x * den).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    let sign = ints.iter().find(|x| **x != 0).map_or(1, |x| x.signum());
    ints.iter().map(|&x| sign * x / g.max(1)).collect()
}

pub(crate) fn inverse(m: &[Vec<i64>]) -> Option<RatMatrix> {
    let n = m.len();
    let mut a: RatMatrix = to_rational(m)
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.extend((0..n).map(|j| {
                if i == j {
                    Rational64::one()
                } else {
                    Rational64::zero()
                }
            }));
            row
        })
        .collect();
    let pivots = rref(&mut a);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
        return None;
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

#[cfg(test)]
pub(crate) fn determinant(m: &[Vec<Rational64>]) -> Rational64 {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rational64::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational64::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c];
        for i in c + 1..n {
            let f = a[i][c] / a[c][c];
            let pivot = a[c].clone();
            for (x, p) in a[i][c..].iter_mut().zip(&pivot[c..]) {
                *x -= f * p;
            }
        }
    }
    det
}

/// All leading principal minors strictly positive.
#[cfg(test)]
pub(crate) fn is_positive_definite(m: &[Vec<Rational64>]) -> bool {
    (1..=m.len()).all(|k| {
        let minor: RatMatrix = m[..k].iter().map(|row| row[..k].to_vec()).collect();
        determinant(&minor).is_positive()
    })
}
