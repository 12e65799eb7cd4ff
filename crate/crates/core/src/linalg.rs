//! Dense exact elimination over a field.

use crate::scalar::Field;

/// Reduces `m` (rows × cols) to reduced row echelon form in place and
/// returns the pivot columns.
pub fn rref<F: Field>(m: &mut Vec<Vec<F>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row >= m.len() {
            break;
        }
        let Some(pr) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pr);
        let inv = m[row][col].inv().expect("pivot is non-zero");
        for x in m[row].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let f = other[col].clone();
            for (x, p) in other.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = x.clone() - f.clone() * p.clone();
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    pivots
}

/// Basis of {x : m·x = 0}, one vector per free column, read off the RREF.
pub fn nullspace<F: Field>(rows: Vec<Vec<F>>, cols: usize) -> Vec<Vec<F>> {
    let mut m = rows;
    let pivots = rref(&mut m, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|c| !is_pivot[*c])
        .map(|free| {
            let mut v = vec![F::zero(); cols];
            v[free] = F::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][free].clone();
            }
            v
        })
        .collect()
}

pub fn rank<F: Field>(rows: Vec<Vec<F>>, cols: usize) -> usize {
    let mut m = rows;
    rref(&mut m, cols).len()
}

/// Inverse of a square matrix, or None if singular.
pub fn invert<F: Field>(a: &[Vec<F>]) -> Option<Vec<Vec<F>>> {
    let n = a.len();
    let mut m: Vec<Vec<F>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut m, n);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, p)| *p != i) {
        return None;
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn determinant<F: Field>(a: &[Vec<F>]) -> F {
    let n = a.len();
    let mut m: Vec<Vec<F>> = a.to_vec();
    let mut det = F::one();
    for col in 0..n {
        let Some(pr) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return F::zero();
        };
        if pr != col {
            m.swap(pr, col);
            det = -det;
        }
        let piv = m[col][col].clone();
        det = det * piv.clone();
        let inv = piv.inv().expect("non-zero pivot");
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone() * inv.clone();
            for c in col..n {
                let t = f.clone() * m[col][c].clone();
                m[r][c] = m[r][c].clone() - t;
            }
        }
    }
    det
}
