//! Smith and column-Hermite normal forms with unimodular transforms.

use std::cmp::Ordering;

use crate::matrix::DenseMatrix;
use crate::ring::{divides, exact_div, ext_gcd, Ring};

/// `P·A·Q = E`, with `E` diagonal, `E = diag(ε₁, …, ε_r, 0, …)` and
/// `εᵢ | εᵢ₊₁`. Equivalently `A = P⁻¹·E·Q⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition<R> {
    pub p: DenseMatrix<R>,
    pub p_inv: DenseMatrix<R>,
    pub e: DenseMatrix<R>,
    /// Canonical nonzero diagonal entries in divisibility order.
    pub inv_factors: Vec<R>,
    pub q: DenseMatrix<R>,
    pub q_inv: DenseMatrix<R>,
    pub rank: usize,
}

impl<R: Ring> SmithDecomposition<R> {
    /// Checks every structural invariant against the source matrix `a`.
    /// Returns a description of the first violation.
    pub fn verify(&self, a: &DenseMatrix<R>) -> Result<(), String> {
        let (m, n) = a.shape();
        if self.p.shape() != (m, m) || self.p_inv.shape() != (m, m) {
            return Err("row transform has wrong shape".into());
        }
        if self.q.shape() != (n, n) || self.q_inv.shape() != (n, n) {
            return Err("column transform has wrong shape".into());
        }
        if &(&self.p * a) * &self.q != self.e {
            return Err("P·A·Q != E".into());
        }
        if &self.p * &self.p_inv != DenseMatrix::identity(m) {
            return Err("P·P⁻¹ != I".into());
        }
        if &self.q * &self.q_inv != DenseMatrix::identity(n) {
            return Err("Q·Q⁻¹ != I".into());
        }
        if self.inv_factors.len() != self.rank {
            return Err("rank differs from the number of invariant factors".into());
        }
        for i in 0..m {
            for j in 0..n {
                let expected = if i == j && i < self.rank {
                    self.inv_factors[i].clone()
                } else {
                    R::zero()
                };
                if self.e[(i, j)] != expected {
                    return Err(format!("E({i},{j}) is not the expected diagonal entry"));
                }
            }
        }
        for (i, f) in self.inv_factors.iter().enumerate() {
            if f.is_zero() || f.normalize().0 != *f {
                return Err(format!("invariant factor {i} is zero or not canonical"));
            }
        }
        for w in self.inv_factors.windows(2) {
            if !divides(&w[0], &w[1]) {
                return Err(format!("{} does not divide {}", w[0], w[1]));
            }
        }
        Ok(())
    }
}

/// Unimodular transforms tracked alongside the working matrix.
struct Transforms<R> {
    p: DenseMatrix<R>,
    p_inv: DenseMatrix<R>,
    q: DenseMatrix<R>,
    q_inv: DenseMatrix<R>,
}

struct SmithWork<R> {
    a: DenseMatrix<R>,
    tr: Option<Transforms<R>>,
}

impl<R: Ring> SmithWork<R> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(t) = &mut self.tr {
            t.p.swap_rows(i, j);
            t.p_inv.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(t) = &mut self.tr {
            t.q.swap_cols(i, j);
            t.q_inv.swap_rows(i, j);
        }
    }

    /// Left-multiplies rows `(i, j)` by `g`, whose inverse is `g_inv`.
    fn row_op(&mut self, i: usize, j: usize, g: [[R; 2]; 2], g_inv: [[R; 2]; 2]) {
        self.a.row_transform(i, j, &g);
        if let Some(t) = &mut self.tr {
            t.p.row_transform(i, j, &g);
            t.p_inv.col_transform(i, j, &g_inv);
        }
    }

    /// Right-multiplies columns `(i, j)` by `h`, whose inverse is `h_inv`.
    fn col_op(&mut self, i: usize, j: usize, h: [[R; 2]; 2], h_inv: [[R; 2]; 2]) {
        self.a.col_transform(i, j, &h);
        if let Some(t) = &mut self.tr {
            t.q.col_transform(i, j, &h);
            t.q_inv.row_transform(i, j, &h_inv);
        }
    }

    /// Zeroes `a[i][s]` against the pivot `a[s][s]`.
    fn clear_below(&mut self, s: usize, i: usize) {
        let p = self.a[(s, s)].clone();
        let b = self.a[(i, s)].clone();
        let (g, g_inv) = if divides(&p, &b) {
            let q = exact_div(&b, &p).expect("checked divisibility");
            (
                [[R::one(), R::zero()], [-q.clone(), R::one()]],
                [[R::one(), R::zero()], [q, R::one()]],
            )
        } else {
            let bz = ext_gcd(&p, &b);
            let pg = exact_div(&p, &bz.g).expect("gcd divides");
            let bg = exact_div(&b, &bz.g).expect("gcd divides");
            (
                [[bz.u.clone(), bz.v.clone()], [-bg.clone(), pg.clone()]],
                [[pg, -bz.v], [bg, bz.u]],
            )
        };
        self.row_op(s, i, g, g_inv);
    }

    /// Zeroes `a[s][j]` against the pivot `a[s][s]`.
    fn clear_right(&mut self, s: usize, j: usize) {
        let p = self.a[(s, s)].clone();
        let b = self.a[(s, j)].clone();
        let (h, h_inv) = column_clearing(&p, &b);
        self.col_op(s, j, h, h_inv);
    }

    fn pivot_position(&self, s: usize) -> Option<(usize, usize)> {
        let (m, n) = self.a.shape();
        let mut best: Option<(usize, usize)> = None;
        for i in s..m {
            for j in s..n {
                let v = &self.a[(i, j)];
                if v.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => v.cmp_size(&self.a[(bi, bj)]) == Ordering::Less,
                };
                if better {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn run(&mut self) -> usize {
        let (m, n) = self.a.shape();
        let mut rank = 0;
        for s in 0..m.min(n) {
            let Some((pi, pj)) = self.pivot_position(s) else {
                break;
            };
            self.swap_rows(s, pi);
            self.swap_cols(s, pj);
            loop {
                for i in s + 1..m {
                    if !self.a[(i, s)].is_zero() {
                        self.clear_below(s, i);
                    }
                }
                for j in s + 1..n {
                    if !self.a[(s, j)].is_zero() {
                        self.clear_right(s, j);
                    }
                }
                if (s + 1..m).any(|i| !self.a[(i, s)].is_zero()) {
                    continue;
                }
                // The pivot must divide the whole trailing block before the
                // next position is processed.
                let pivot = self.a[(s, s)].clone();
                let offender = (s + 1..m)
                    .find(|&i| (s + 1..n).any(|j| !divides(&pivot, &self.a[(i, j)])));
                match offender {
                    Some(i) => self.row_op(
                        s,
                        i,
                        [[R::one(), R::one()], [R::zero(), R::one()]],
                        [[R::one(), -R::one()], [R::zero(), R::one()]],
                    ),
                    None => break,
                }
            }
            let (canon, unit) = self.a[(s, s)].normalize();
            if !unit.is_one() {
                let inv = unit.unit_inverse().expect("normalize returns a unit");
                self.a.scale_row(s, &inv);
                if let Some(t) = &mut self.tr {
                    t.p.scale_row(s, &inv);
                    t.p_inv.scale_col(s, &unit);
                }
            }
            debug_assert_eq!(self.a[(s, s)], canon);
            rank = s + 1;
        }
        rank
    }
}

/// Column operation `h` (and its inverse) on columns `(s, j)` that moves
/// `gcd(p, b)` into column `s` and zero into column `j`.
fn column_clearing<R: Ring>(p: &R, b: &R) -> ([[R; 2]; 2], [[R; 2]; 2]) {
    if divides(p, b) {
        let q = exact_div(b, p).expect("checked divisibility");
        (
            [[R::one(), -q.clone()], [R::zero(), R::one()]],
            [[R::one(), q], [R::zero(), R::one()]],
        )
    } else {
        let bz = ext_gcd(p, b);
        let pg = exact_div(p, &bz.g).expect("gcd divides");
        let bg = exact_div(b, &bz.g).expect("gcd divides");
        (
            [[bz.u.clone(), -bg.clone()], [bz.v.clone(), pg.clone()]],
            [[pg, bg], [-bz.v, bz.u]],
        )
    }
}

/// Smith normal form of `a` with all four transforms.
pub fn smith<R: Ring>(a: &DenseMatrix<R>) -> SmithDecomposition<R> {
    let (m, n) = a.shape();
    let mut work = SmithWork {
        a: a.clone(),
        tr: Some(Transforms {
            p: DenseMatrix::identity(m),
            p_inv: DenseMatrix::identity(m),
            q: DenseMatrix::identity(n),
            q_inv: DenseMatrix::identity(n),
        }),
    };
    let rank = work.run();
    let t = work.tr.take().expect("transforms tracked");
    let inv_factors = (0..rank).map(|i| work.a[(i, i)].clone()).collect();
    let dec = SmithDecomposition {
        p: t.p,
        p_inv: t.p_inv,
        e: work.a,
        inv_factors,
        q: t.q,
        q_inv: t.q_inv,
        rank,
    };
    debug_assert_eq!(dec.verify(a), Ok(()));
    dec
}

/// Canonical nonzero invariant factors of any rectangular matrix.
pub fn invariant_factors<R: Ring>(a: &DenseMatrix<R>) -> Vec<R> {
    let mut work = SmithWork {
        a: a.clone(),
        tr: None,
    };
    let rank = work.run();
    (0..rank).map(|i| work.a[(i, i)].clone()).collect()
}

/// `A·W = H` with `W` unimodular and `H` in canonical column echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteDecomposition<R> {
    pub h: DenseMatrix<R>,
    pub w: DenseMatrix<R>,
    /// Row index of the pivot of each of the first `rank` columns.
    pub pivot_rows: Vec<usize>,
}

impl<R: Ring> HermiteDecomposition<R> {
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }
}

/// Column-style Hermite normal form.
///
/// Column `c < rank` has its pivot in row `pivot_rows[c]` (strictly
/// increasing), zeros above it, and a canonical pivot entry. In a pivot row
/// the entries of earlier columns are reduced modulo the pivot. Columns from
/// `rank` on are zero. `H` depends only on the column module of `A`.
pub fn hermite_col<R: Ring>(a: &DenseMatrix<R>) -> HermiteDecomposition<R> {
    let (m, n) = a.shape();
    let mut h = a.clone();
    let mut w = DenseMatrix::identity(n);
    let mut pivot_rows = Vec::new();
    let mut c = 0;
    for r in 0..m {
        if c == n {
            break;
        }
        for j in c + 1..n {
            if h[(r, j)].is_zero() {
                continue;
            }
            if h[(r, c)].is_zero() {
                h.swap_cols(c, j);
                w.swap_cols(c, j);
                continue;
            }
            let (op, _) = column_clearing(&h[(r, c)], &h[(r, j)]);
            h.col_transform(c, j, &op);
            w.col_transform(c, j, &op);
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        let (pivot, unit) = h[(r, c)].normalize();
        if !unit.is_one() {
            let inv = unit.unit_inverse().expect("normalize returns a unit");
            h.scale_col(c, &inv);
            w.scale_col(c, &inv);
        }
        for l in 0..c {
            let (q, _) = h[(r, l)].div_rem(&pivot);
            if !q.is_zero() {
                let neg = -q;
                h.add_col_multiple(l, c, &neg);
                w.add_col_multiple(l, c, &neg);
            }
        }
        pivot_rows.push(r);
        c += 1;
    }
    HermiteDecomposition { h, w, pivot_rows }
}
