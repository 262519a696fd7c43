//! Seeded random matrices, unimodular transforms and equation instances.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::matrix::DenseMatrix;
use crate::ring::{Int, Poly, Ring};

/// Entry size parameters. Integers use `bound` only; polynomials draw a
/// degree up to `max_degree` and coefficients with numerators in
/// `[-bound, bound]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScalarRange {
    pub bound: i64,
    pub max_degree: usize,
}

impl ScalarRange {
    pub fn new(bound: i64, max_degree: usize) -> Self {
        ScalarRange { bound, max_degree }
    }
}

pub trait RandomScalar: Ring {
    fn default_scalar_range() -> ScalarRange;

    fn random<G: Rng + ?Sized>(rng: &mut G, range: &ScalarRange) -> Self;

    /// A random unit of the domain.
    fn random_unit<G: Rng + ?Sized>(rng: &mut G) -> Self;
}

impl RandomScalar for Int {
    fn default_scalar_range() -> ScalarRange {
        ScalarRange::new(5, 0)
    }

    fn random<G: Rng + ?Sized>(rng: &mut G, range: &ScalarRange) -> Self {
        Int::from(rng.gen_range(-range.bound..=range.bound))
    }

    fn random_unit<G: Rng + ?Sized>(rng: &mut G) -> Self {
        if rng.gen_bool(0.5) {
            Int::one()
        } else {
            Int::from(-1)
        }
    }
}

impl RandomScalar for Poly {
    fn default_scalar_range() -> ScalarRange {
        ScalarRange::new(3, 2)
    }

    fn random<G: Rng + ?Sized>(rng: &mut G, range: &ScalarRange) -> Self {
        let degree = rng.gen_range(0..=range.max_degree);
        let coeffs = (0..=degree)
            .map(|_| {
                let num = rng.gen_range(-range.bound..=range.bound);
                let den = if rng.gen_ratio(1, 4) { 2 } else { 1 };
                BigRational::new(BigInt::from(num), BigInt::from(den))
            })
            .collect();
        Poly::new(coeffs)
    }

    fn random_unit<G: Rng + ?Sized>(rng: &mut G) -> Self {
        let num = *[1i64, -1, 2, -2, 3].get(rng.gen_range(0..5)).unwrap();
        let den = rng.gen_range(1i64..=2);
        Poly::from_rationals(vec![(num, den)])
    }
}

pub fn random_matrix<R: RandomScalar, G: Rng + ?Sized>(
    rng: &mut G,
    rows: usize,
    cols: usize,
    range: &ScalarRange,
) -> DenseMatrix<R> {
    DenseMatrix::from_fn(rows, cols, |_, _| R::random(rng, range))
}

/// Random singular matrix with entries still inside `range`: between one
/// and `n-1` columns are replaced by zero or by a copy of another column.
pub fn random_rank_deficient<R: RandomScalar, G: Rng + ?Sized>(
    rng: &mut G,
    n: usize,
    range: &ScalarRange,
) -> DenseMatrix<R> {
    let mut m: DenseMatrix<R> = random_matrix(rng, n, n, range);
    if n < 2 {
        return DenseMatrix::zeros(n, n);
    }
    let hits = rng.gen_range(1..n);
    for _ in 0..hits {
        let dst = rng.gen_range(0..n);
        let src = rng.gen_range(0..n);
        for i in 0..n {
            m[(i, dst)] = if src == dst { R::zero() } else { m[(i, src)].clone() };
        }
    }
    m
}

/// Random unimodular `W` together with `W⁻¹`, built from `steps`
/// elementary row operations with small multipliers.
pub fn random_unimodular<R: RandomScalar, G: Rng + ?Sized>(
    rng: &mut G,
    n: usize,
    steps: usize,
) -> (DenseMatrix<R>, DenseMatrix<R>) {
    let mut w = DenseMatrix::identity(n);
    let mut w_inv = DenseMatrix::identity(n);
    if n == 0 {
        return (w, w_inv);
    }
    let small = ScalarRange::new(2, 1);
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match rng.gen_range(0..6) {
            0 => {
                w.swap_rows(i, j);
                w_inv.swap_cols(i, j);
            }
            1 => {
                let u = R::random_unit(rng);
                let u_inv = u.unit_inverse().expect("random_unit returns a unit");
                w.scale_row(i, &u);
                w_inv.scale_col(i, &u_inv);
            }
            _ if i != j => {
                let c = R::random(rng, &small);
                w.add_row_multiple(i, j, &c);
                w_inv.add_col_multiple(j, i, &-c);
            }
            _ => {}
        }
    }
    (w, w_inv)
}

/// `(B, A)` with `A = B·C` for random `B` and `C`, hence solvable. A third
/// of the coefficient matrices are singular.
pub fn solvable_instance<R: RandomScalar, G: Rng + ?Sized>(
    rng: &mut G,
    n: usize,
    range: &ScalarRange,
) -> (DenseMatrix<R>, DenseMatrix<R>) {
    let b: DenseMatrix<R> = if rng.gen_ratio(1, 3) {
        random_rank_deficient(rng, n, range)
    } else {
        random_matrix(rng, n, n, range)
    };
    let c: DenseMatrix<R> = random_matrix(rng, n, n, range);
    let a = &b * &c;
    (b, a)
}
