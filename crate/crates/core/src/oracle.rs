//! Independent checks that share only the ring and matrix layers (plus the
//! column Hermite form) with the Smith-based pipeline.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::normal_form::hermite_col;
use crate::ring::{exact_div, Int, Ring};

/// Default ceiling on the number of candidate matrices enumerated by
/// [`exhaustive_solutions`].
pub const EXHAUSTIVE_CEILING: u128 = 100_000;

/// Solves `B·X = A` column by column through the column Hermite form of `B`.
/// Returns `None` when no solution exists.
pub fn hnf_solve<R: Ring>(b: &DenseMatrix<R>, a: &DenseMatrix<R>) -> Result<Option<DenseMatrix<R>>> {
    let n = b.rows();
    if !b.is_square() || a.shape() != (n, n) {
        return Err(Error::dims("hnf_solve", "B and A must both be n x n"));
    }
    let hd = hermite_col(b);
    let rank = hd.rank();
    let mut y: DenseMatrix<R> = DenseMatrix::zeros(n, n);
    for col in 0..n {
        for (c, &r) in hd.pivot_rows.iter().enumerate() {
            let mut rhs = a[(r, col)].clone();
            for l in 0..c {
                rhs = rhs - hd.h[(r, l)].clone() * y[(l, col)].clone();
            }
            match exact_div(&rhs, &hd.h[(r, c)]) {
                Ok(v) => y[(c, col)] = v,
                Err(_) => return Ok(None),
            }
        }
    }
    // Rows without a pivot are only checked, never solved for.
    debug_assert!((rank..n).all(|c| (0..n).all(|i| hd.h[(i, c)].is_zero())));
    if &hd.h * &y != *a {
        return Ok(None);
    }
    Ok(Some(&hd.w * &y))
}

/// Column module of a family of `n`-row generator blocks, represented by the
/// nonzero columns of its column Hermite form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnModule<R> {
    pub canonical: DenseMatrix<R>,
}

pub fn column_module<R: Ring>(generators: &[DenseMatrix<R>]) -> Result<ColumnModule<R>> {
    let Some(first) = generators.first() else {
        return Err(Error::dims("column_module", "no generators"));
    };
    let rows = first.rows();
    if generators.iter().any(|g| g.rows() != rows) {
        return Err(Error::dims("column_module", "generators differ in row count"));
    }
    let blocks: Vec<&DenseMatrix<R>> = generators.iter().collect();
    let stacked = DenseMatrix::block_compose(&[blocks])?;
    let hd = hermite_col(&stacked);
    Ok(ColumnModule {
        canonical: hd.h.block_extract(0, 0, rows, hd.rank())?,
    })
}

/// Every `X` with entries in `[-bound, bound]` and `B·X = A`.
pub fn exhaustive_solutions(b: &DenseMatrix<Int>, a: &DenseMatrix<Int>, bound: u32) -> Result<Vec<DenseMatrix<Int>>> {
    exhaustive_solutions_with_ceiling(b, a, bound, EXHAUSTIVE_CEILING)
}

pub fn exhaustive_solutions_with_ceiling(
    b: &DenseMatrix<Int>,
    a: &DenseMatrix<Int>,
    bound: u32,
    ceiling: u128,
) -> Result<Vec<DenseMatrix<Int>>> {
    let n = b.rows();
    if !b.is_square() || a.shape() != (n, n) {
        return Err(Error::dims("exhaustive_solutions", "B and A must both be n x n"));
    }
    let side = 2 * u128::from(bound) + 1;
    let cells = (n * n) as u32;
    let states = side.checked_pow(cells).unwrap_or(u128::MAX);
    if states > ceiling {
        return Err(Error::TooLarge { states, ceiling });
    }
    let bound = i64::from(bound);
    let mut digits = vec![-bound; n * n];
    let mut found = Vec::new();
    loop {
        let x = DenseMatrix::from_fn(n, n, |i, j| Int::from(digits[i * n + j]));
        if &(b * &x) == a {
            found.push(x);
        }
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                return Ok(found);
            }
            if digits[pos] < bound {
                digits[pos] += 1;
                break;
            }
            digits[pos] = -bound;
            pos += 1;
        }
    }
}
