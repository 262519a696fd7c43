//! Left g.c.d. and left l.c.m. of the solution set of `B·X = A`.
//!
//! With `M = [M1; M2]` the forced block of a [`SolutionSet`]:
//!
//! ```text
//! F = U·[M 0; 0 I_{n-t}]·Q⁻¹        N = U·[M 0; 0 0]·Q⁻¹
//! X(T3,T4) = F · Q·[I_t 0; T3 T4]·Q⁻¹
//! N = K·X    for every solution X, K = U·diag(I_t, 0)·U⁻¹
//! ```
//!
//! Both `F` and `N` are solutions themselves.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::ring::Ring;
use crate::solver::{build_solution_set, certify, general_solution, particular_solution, SolutionParameter, SolutionSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdLcmPair<R> {
    /// Left g.c.d. of all solutions.
    pub f: DenseMatrix<R>,
    /// Left l.c.m. of all solutions.
    pub n: DenseMatrix<R>,
    /// Projector with `N = K·X` for every solution `X`.
    pub k: DenseMatrix<R>,
}

pub fn left_gcd<R: Ring>(ss: &SolutionSet<R>) -> DenseMatrix<R> {
    general_solution(ss, &SolutionParameter::gcd(ss.n, ss.t)).expect("gcd parameter fits")
}

pub fn left_lcm<R: Ring>(ss: &SolutionSet<R>) -> DenseMatrix<R> {
    particular_solution(ss)
}

/// `K = U·diag(I_t, 0)·U⁻¹`.
pub fn projector<R: Ring>(ss: &SolutionSet<R>) -> DenseMatrix<R> {
    let mut d = DenseMatrix::zeros(ss.n, ss.n);
    for i in 0..ss.t {
        d[(i, i)] = R::one();
    }
    &(&ss.u * &d) * &ss.u_inv
}

pub fn gcd_lcm_pair<R: Ring>(ss: &SolutionSet<R>) -> GcdLcmPair<R> {
    GcdLcmPair {
        f: left_gcd(ss),
        n: left_lcm(ss),
        k: projector(ss),
    }
}

/// `Q·[I_t 0; T3 T4]·Q⁻¹`, the right cofactor taking `F` to `X(T3, T4)`.
pub fn cofactor<R: Ring>(ss: &SolutionSet<R>, p: &SolutionParameter<R>) -> Result<DenseMatrix<R>> {
    let free = ss.n - ss.t;
    if p.t3.shape() != (free, ss.t) || p.t4.shape() != (free, free) {
        return Err(Error::dims("cofactor", "parameter blocks do not match n - t"));
    }
    let top = DenseMatrix::identity(ss.t).hcat(&DenseMatrix::zeros(ss.t, free))?;
    let inner = top.vcat(&p.block())?;
    Ok(&(&ss.q * &inner) * &ss.q_inv)
}

/// Outcome of a divisibility query; `witness` is present iff `holds`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divisibility<R> {
    pub holds: bool,
    pub witness: Option<DenseMatrix<R>>,
}

/// Whether `D·W = A` for some `W`; returns such a `W`.
pub fn left_divides<R: Ring>(d: &DenseMatrix<R>, a: &DenseMatrix<R>) -> Result<Divisibility<R>> {
    let cert = certify(d, a)?;
    if !cert.solvable {
        return Ok(Divisibility {
            holds: false,
            witness: None,
        });
    }
    let ss = build_solution_set(&cert)?;
    Ok(Divisibility {
        holds: true,
        witness: Some(particular_solution(&ss)),
    })
}

/// Whether `G·X = N` for some `G`; decided on transposes, which is valid
/// because the ring is commutative.
pub fn right_divides<R: Ring>(x: &DenseMatrix<R>, n: &DenseMatrix<R>) -> Result<Divisibility<R>> {
    let t = left_divides(&x.transpose(), &n.transpose())?;
    Ok(Divisibility {
        holds: t.holds,
        witness: t.witness.map(|w| w.transpose()),
    })
}

/// Mutual left divisibility. For invertible matrices this is right
/// association; for singular ones the witnesses need not be unimodular.
pub fn mutually_associate<R: Ring>(m1: &DenseMatrix<R>, m2: &DenseMatrix<R>) -> Result<bool> {
    if m1.shape() != m2.shape() {
        return Err(Error::dims("mutually_associate", "operands differ in shape"));
    }
    Ok(left_divides(m1, m2)?.holds && left_divides(m2, m1)?.holds)
}
