//! Matrix permanents.
//!
//! [`permanent_naive`] sums over all permutations and is kept as the reference
//! for everything else. [`permanent_fast`] uses Glynn's formula with the sign
//! vectors visited in Gray-code order, so each step touches one row and the
//! total cost is `O(n·2ⁿ)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

pub const NAIVE_MAX_SIZE: usize = 8;
pub const FAST_MAX_SIZE: usize = 30;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn check_square(m: &ComplexMatrix) -> Result<usize> {
    if !m.is_square() {
        return Err(Error::Dimension(format!("permanent needs a square matrix, got {}x{}", m.rows(), m.cols())));
    }
    Ok(m.rows())
}

/// `Σ_σ Π_i m[i, σ(i)]` over all permutations, via Heap's algorithm.
pub fn permanent_naive(m: &ComplexMatrix) -> Result<Complex64> {
    let n = check_square(m)?;
    if n > NAIVE_MAX_SIZE {
        return Err(Error::Guard { what: "naive permanent size", got: n, limit: NAIVE_MAX_SIZE });
    }
    let mut sigma: Vec<usize> = (0..n).collect();
    let term = |s: &[usize]| s.iter().enumerate().map(|(i, &j)| m[(i, j)]).product::<Complex64>();
    let mut total = term(&sigma);
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                sigma.swap(0, i);
            } else {
                sigma.swap(c[i], i);
            }
            total += term(&sigma);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(total)
}

/// Glynn's formula with Gray-code updates.
pub fn permanent_fast(m: &ComplexMatrix) -> Result<Complex64> {
    let n = check_square(m)?;
    if n > FAST_MAX_SIZE {
        return Err(Error::Guard { what: "permanent size", got: n, limit: FAST_MAX_SIZE });
    }
    Ok(glynn(m, n))
}

fn glynn(m: &ComplexMatrix, rows: usize) -> Complex64 {
    let cols = rows;
    match rows {
        0 => return ONE,
        1 => return m[(0, 0)],
        _ => {}
    }
    // Column sums with every sign at +1.
    let mut sums: Vec<Complex64> = (0..cols).map(|j| (0..rows).map(|i| m[(i, j)]).sum()).collect();
    let mut signs = vec![1.0f64; rows];
    let mut parity = 1.0f64;
    let mut total: Complex64 = sums.iter().product();
    // Row 0 keeps sign +1; the Gray code runs over rows 1..rows.
    let steps: u64 = 1 << (rows - 1);
    for g in 1..steps {
        let row = g.trailing_zeros() as usize + 1;
        let s = -signs[row];
        signs[row] = s;
        parity = -parity;
        let r = m.row(row);
        let mut prod = ONE;
        for (acc, &x) in sums.iter_mut().zip(&r[..cols]) {
            *acc += x * (2.0 * s);
            prod *= *acc;
        }
        total += prod * parity;
    }
    total / (steps as f64)
}

/// Permanents of every column-deleted minor of a `r × (r+1)` block.
///
/// `rows` holds `r` row slices of length at least `r + 1`; the result has
/// `r + 1` entries, entry `l` being the permanent with column `l` removed.
/// Runs one Glynn/Gray pass over the rows and extracts every
/// "product except one column" with prefix and suffix products.
pub(crate) fn column_minor_permanents(rows: &[&[Complex64]], out: &mut Vec<Complex64>) {
    let r = rows.len();
    let width = r + 1;
    out.clear();
    out.resize(width, ZERO);
    if r == 0 {
        out[0] = ONE;
        return;
    }
    let mut sums: Vec<Complex64> = (0..width).map(|j| rows.iter().map(|row| row[j]).sum()).collect();
    let mut prefix = vec![ONE; width + 1];
    let mut suffix = vec![ONE; width + 1];
    let mut accumulate = |sums: &[Complex64], parity: f64, out: &mut [Complex64]| {
        for j in 0..width {
            prefix[j + 1] = prefix[j] * sums[j];
        }
        for j in (0..width).rev() {
            suffix[j] = suffix[j + 1] * sums[j];
        }
        for l in 0..width {
            out[l] += prefix[l] * suffix[l + 1] * parity;
        }
    };
    let mut signs = vec![1.0f64; r];
    let mut parity = 1.0f64;
    accumulate(&sums, parity, out);
    let steps: u64 = 1 << (r - 1);
    for g in 1..steps {
        let row = g.trailing_zeros() as usize + 1;
        let s = -signs[row];
        signs[row] = s;
        parity = -parity;
        for (acc, &x) in sums.iter_mut().zip(&rows[row][..width]) {
            *acc += x * (2.0 * s);
        }
        accumulate(&sums, parity, out);
    }
    let scale = 1.0 / steps as f64;
    for v in out.iter_mut() {
        *v *= scale;
    }
}
