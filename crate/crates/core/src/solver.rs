//! Solvability of `B·X = A` and the parametrization of all solutions.
//!
//! With `A = P⁻¹·E·Q⁻¹` and `B = V⁻¹·Φ·U⁻¹` (Smith forms of ranks `k` and
//! `t`), substituting `S = U⁻¹·X·Q` turns the equation into `Φ·S = L·E` with
//! `L = V·P⁻¹`. Row `i ≤ t` of `S` is forced on its first `k` columns to
//! `lᵢⱼ·εⱼ/φᵢ` and is zero after them; rows past `t` are free. Hence the
//! system is solvable iff `φᵢ | lᵢⱼ·εⱼ` for `i ≤ t, j ≤ k` and `lᵢⱼ = 0` for
//! `i > t, j ≤ k`, and every solution has the form
//!
//! ```text
//! X = U · [ M  0 ] · Q⁻¹       M = [M1; M2] (t×k), [T3 T4] free.
//!         [ T3 T4]
//! ```

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::normal_form::{invariant_factors, smith, SmithDecomposition};
use crate::ring::{divides, exact_div, Ring};

/// The first cell of `L·E` that rules out a solution (0-based indices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    /// `φᵢ ∤ lᵢⱼ·εⱼ` for `i < t`, `j < k`.
    Divisibility { row: usize, col: usize },
    /// `lᵢⱼ ≠ 0` below the rank of `B` (`i ≥ t`, `j < k`).
    BelowRank { row: usize, col: usize },
}

impl std::fmt::Display for Obstruction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Obstruction::Divisibility { row, col } => write!(
                f,
                "cell ({},{}): phi_{} does not divide l_{},{}*eps_{}",
                row + 1,
                col + 1,
                row + 1,
                row + 1,
                col + 1,
                col + 1
            ),
            Obstruction::BelowRank { row, col } => write!(
                f,
                "cell ({},{}): l_{},{} must vanish below rank(B)",
                row + 1,
                col + 1,
                row + 1,
                col + 1
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolvabilityCertificate<R> {
    /// `P·A·Q = E`, rank `k`.
    pub snf_a: SmithDecomposition<R>,
    /// `V·B·U = Φ`, rank `t`.
    pub snf_b: SmithDecomposition<R>,
    /// `L = V·P⁻¹`.
    pub l: DenseMatrix<R>,
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub solvable: bool,
    /// Set exactly when `solvable` is false.
    pub obstruction: Option<Obstruction>,
}

impl<R: Ring> SolvabilityCertificate<R> {
    pub fn eps(&self) -> &[R] {
        &self.snf_a.inv_factors
    }

    pub fn phi(&self) -> &[R] {
        &self.snf_b.inv_factors
    }
}

fn check_pair<R: Ring>(op: &'static str, b: &DenseMatrix<R>, a: &DenseMatrix<R>) -> Result<usize> {
    let n = b.rows();
    if !b.is_square() || a.shape() != (n, n) {
        return Err(Error::dims(
            op,
            format!(
                "B is {}x{}, A is {}x{}; both must be n x n",
                b.rows(),
                b.cols(),
                a.rows(),
                a.cols()
            ),
        ));
    }
    Ok(n)
}

/// Decides whether `B·X = A` is solvable from fixed Smith decompositions.
pub fn certify<R: Ring>(b: &DenseMatrix<R>, a: &DenseMatrix<R>) -> Result<SolvabilityCertificate<R>> {
    let n = check_pair("certify", b, a)?;
    let snf_a = smith(a);
    let snf_b = smith(b);
    let l = &snf_b.p * &snf_a.p_inv;
    let (k, t) = (snf_a.rank, snf_b.rank);

    let obstruction = pattern_obstruction(&l, &snf_a.inv_factors, &snf_b.inv_factors);
    let solvable = obstruction.is_none();
    if solvable {
        assert!(t >= k, "solvable system with rank(B) < rank(A)");
        for i in 0..k {
            assert!(
                divides(&snf_b.inv_factors[i], &snf_a.inv_factors[i]),
                "solvable system with phi_{i} not dividing eps_{i}"
            );
        }
    }
    Ok(SolvabilityCertificate {
        snf_a,
        snf_b,
        l,
        n,
        k,
        t,
        solvable,
        obstruction,
    })
}

/// First cell where `L` violates the membership pattern for `Φ·S = L·E`:
/// `φᵢ | lᵢⱼ·εⱼ` for `i < t`, `lᵢⱼ = 0` for `i ≥ t`, both over `j < k`.
/// `eps` and `phi` are the nonzero invariant factors of `A` and `B`.
pub fn pattern_obstruction<R: Ring>(l: &DenseMatrix<R>, eps: &[R], phi: &[R]) -> Option<Obstruction> {
    let t = phi.len();
    for i in 0..l.rows() {
        for (j, e) in eps.iter().enumerate() {
            let lij = &l[(i, j)];
            if i < t {
                if !divides(&phi[i], &(lij.clone() * e.clone())) {
                    return Some(Obstruction::Divisibility { row: i, col: j });
                }
            } else if !lij.is_zero() {
                return Some(Obstruction::BelowRank { row: i, col: j });
            }
        }
    }
    None
}

/// The forced `t×k` block `M = [M1; M2]` with `mᵢⱼ = lᵢⱼ·εⱼ/φᵢ`.
pub fn forced_block<R: Ring>(l: &DenseMatrix<R>, eps: &[R], phi: &[R]) -> Result<DenseMatrix<R>> {
    let (t, k) = (phi.len(), eps.len());
    let mut m = DenseMatrix::zeros(t, k);
    for (i, p) in phi.iter().enumerate() {
        for (j, e) in eps.iter().enumerate() {
            m[(i, j)] = exact_div(&(l[(i, j)].clone() * e.clone()), p)?;
        }
    }
    Ok(m)
}

/// Solvable iff `B` and `[A B]` have the same invariant factors.
pub fn check_solvable_augmented<R: Ring>(b: &DenseMatrix<R>, a: &DenseMatrix<R>) -> Result<bool> {
    check_pair("check_solvable_augmented", b, a)?;
    let augmented = a.hcat(b)?;
    Ok(invariant_factors(b) == invariant_factors(&augmented))
}

/// Forced part of `S` together with the transforms needed to emit solutions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSet<R> {
    /// `[M1; M2]`, a `t×k` block.
    pub m: DenseMatrix<R>,
    pub u: DenseMatrix<R>,
    pub u_inv: DenseMatrix<R>,
    pub q: DenseMatrix<R>,
    pub q_inv: DenseMatrix<R>,
    pub n: usize,
    pub k: usize,
    pub t: usize,
}

/// Free block `[T3 T4]` of a solution: `T3` is `(n-t)×t`, `T4` is `(n-t)×(n-t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionParameter<R> {
    pub t3: DenseMatrix<R>,
    pub t4: DenseMatrix<R>,
}

impl<R: Ring> SolutionParameter<R> {
    pub fn zero(n: usize, t: usize) -> Self {
        SolutionParameter {
            t3: DenseMatrix::zeros(n - t, t),
            t4: DenseMatrix::zeros(n - t, n - t),
        }
    }

    /// `T3 = 0, T4 = I`: the parameter of the left g.c.d.
    pub fn gcd(n: usize, t: usize) -> Self {
        SolutionParameter {
            t3: DenseMatrix::zeros(n - t, t),
            t4: DenseMatrix::identity(n - t),
        }
    }

    /// Splits an `(n-t)×n` block `[T3 T4]`.
    pub fn from_block(block: &DenseMatrix<R>, t: usize) -> Result<Self> {
        let (rows, cols) = block.shape();
        if t > cols || rows != cols - t {
            return Err(Error::dims(
                "solution parameter",
                format!("[T3 T4] must be (n-t) x n with t={t}, got {rows}x{cols}"),
            ));
        }
        Ok(SolutionParameter {
            t3: block.block_extract(0, 0, rows, t)?,
            t4: block.block_extract(0, t, rows, rows)?,
        })
    }

    pub fn block(&self) -> DenseMatrix<R> {
        self.t3.hcat(&self.t4).expect("parameter blocks share row count")
    }
}

/// `D` in `Ann_r(B) = { U·[0; D] }`, an `(n-t)×n` block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnihilatorParameter<R> {
    pub d: DenseMatrix<R>,
}

impl<R: Ring> SolutionSet<R> {
    pub fn m1(&self) -> DenseMatrix<R> {
        self.m.block_extract(0, 0, self.k, self.k).expect("k <= t")
    }

    pub fn m2(&self) -> DenseMatrix<R> {
        self.m
            .block_extract(self.k, 0, self.t - self.k, self.k)
            .expect("k <= t")
    }

    /// The `t×n` top of `S`: `[M 0]`.
    pub fn forced_rows(&self) -> DenseMatrix<R> {
        let zero = DenseMatrix::zeros(self.t, self.n - self.k);
        self.m.hcat(&zero).expect("row counts agree")
    }

    /// `S = [M 0; T3 T4]`.
    pub fn inner(&self, p: &SolutionParameter<R>) -> Result<DenseMatrix<R>> {
        let free = self.n - self.t;
        if p.t3.shape() != (free, self.t) || p.t4.shape() != (free, free) {
            return Err(Error::dims(
                "solution parameter",
                format!(
                    "expected T3 {free}x{} and T4 {free}x{free}, got {}x{} and {}x{}",
                    self.t,
                    p.t3.rows(),
                    p.t3.cols(),
                    p.t4.rows(),
                    p.t4.cols()
                ),
            ));
        }
        self.forced_rows().vcat(&p.block())
    }

    /// Recovers the parameter of `x` if it lies in the solution coset, i.e.
    /// if the top `t` rows of `U⁻¹·X·Q` equal `[M 0]`.
    pub fn coset_parameter(&self, x: &DenseMatrix<R>) -> Result<Option<SolutionParameter<R>>> {
        if x.shape() != (self.n, self.n) {
            return Err(Error::dims("coset_parameter", "X must be n x n"));
        }
        let s = &(&self.u_inv * x) * &self.q;
        if s.block_extract(0, 0, self.t, self.n)? != self.forced_rows() {
            return Ok(None);
        }
        let bottom = s.block_extract(self.t, 0, self.n - self.t, self.n)?;
        SolutionParameter::from_block(&bottom, self.t).map(Some)
    }
}

/// Fills `M = [M1; M2]` with `mᵢⱼ = lᵢⱼ·εⱼ/φᵢ`.
pub fn build_solution_set<R: Ring>(cert: &SolvabilityCertificate<R>) -> Result<SolutionSet<R>> {
    if !cert.solvable {
        return Err(Error::NotSolvable);
    }
    let m = forced_block(&cert.l, cert.eps(), cert.phi())?;
    Ok(SolutionSet {
        m,
        u: cert.snf_b.q.clone(),
        u_inv: cert.snf_b.q_inv.clone(),
        q: cert.snf_a.q.clone(),
        q_inv: cert.snf_a.q_inv.clone(),
        n: cert.n,
        k: cert.k,
        t: cert.t,
    })
}

/// `C = U·[M 0; 0 0]·Q⁻¹`; this is also the left l.c.m. of all solutions.
pub fn particular_solution<R: Ring>(ss: &SolutionSet<R>) -> DenseMatrix<R> {
    general_solution(ss, &SolutionParameter::zero(ss.n, ss.t)).expect("zero parameter fits")
}

/// `X(T3, T4) = U·[M 0; T3 T4]·Q⁻¹`.
pub fn general_solution<R: Ring>(ss: &SolutionSet<R>, p: &SolutionParameter<R>) -> Result<DenseMatrix<R>> {
    let s = ss.inner(p)?;
    Ok(&(&ss.u * &s) * &ss.q_inv)
}

/// `Z = U·[0_{t×n}; D]`, an element of the right annihilator of `B`.
pub fn annihilator_element<R: Ring>(
    snf_b: &SmithDecomposition<R>,
    d: &AnnihilatorParameter<R>,
) -> Result<DenseMatrix<R>> {
    let n = snf_b.q.rows();
    let t = snf_b.rank;
    if d.d.shape() != (n - t, n) {
        return Err(Error::dims(
            "annihilator_element",
            format!("D must be {}x{n}, got {}x{}", n - t, d.d.rows(), d.d.cols()),
        ));
    }
    let padded = DenseMatrix::zeros(t, n).vcat(&d.d)?;
    Ok(&snf_b.q * &padded)
}

/// The `n-t` generators obtained from unit rows `D = e_i·e_1ᵀ`; as a column
/// module their first columns span `Ann_r(B)`.
pub fn annihilator_generators<R: Ring>(snf_b: &SmithDecomposition<R>) -> Vec<DenseMatrix<R>> {
    let n = snf_b.q.rows();
    let t = snf_b.rank;
    (0..n - t)
        .map(|i| {
            let mut d = DenseMatrix::zeros(n - t, n);
            d[(i, 0)] = R::one();
            annihilator_element(snf_b, &AnnihilatorParameter { d }).expect("shape fits")
        })
        .collect()
}

/// `U·diag(0_t, I_{n-t})`, whose columns generate `Ann_r(B)`.
pub fn annihilator_basis<R: Ring>(snf_b: &SmithDecomposition<R>) -> DenseMatrix<R> {
    let n = snf_b.q.rows();
    let t = snf_b.rank;
    let d = DenseMatrix::zeros(n - t, t)
        .hcat(&DenseMatrix::identity(n - t))
        .expect("row counts agree");
    annihilator_element(snf_b, &AnnihilatorParameter { d }).expect("shape fits")
}
