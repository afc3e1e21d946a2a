//! Quadratic moment maps `A ↦ A^t A`, `A ↦ A A^t` on `Hom(V_0, V_1)` and
//! the identities relating their invariants, in exact rational arithmetic.
//!
//! `V_0` carries the identity Gram matrix and `V_1` the standard symplectic
//! form `J_1 = [[0, I], [-I, 0]]`. The adjoint is `A^t = G_0^{-1} A^T J_1`,
//! which satisfies `(v, A^t w) = ⟨A v, w⟩`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::odd_roots::{OspRootData, Parity};
use crate::par;

pub type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Q) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_fn(rows.len(), cols, |i, j| q(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..self.cols).all(|j| self[(i, j)] == -self[(j, i)].clone()))
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    fn zip(&self, other: &Self, f: impl Fn(&Q, &Q) -> Q) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect() }
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> Result<Q> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Q::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !m[(i, k)].is_zero()) else {
                return Ok(Q::zero());
            };
            if p != k {
                m.swap_rows(p, k);
                det = -det;
            }
            let pivot = m[(k, k)].clone();
            det *= &pivot;
            for i in k + 1..n {
                let t = &m[(i, k)] / &pivot;
                if t.is_zero() {
                    continue;
                }
                for j in k..n {
                    let d = &t * &m[(k, j)];
                    m[(i, j)] -= d;
                }
            }
        }
        Ok(det)
    }

    /// Inverse by Gauss-Jordan elimination, `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = Self::identity(n);
        for k in 0..n {
            let p = (k..n).find(|&i| !m[(i, k)].is_zero())?;
            m.swap_rows(p, k);
            inv.swap_rows(p, k);
            let pivot = m[(k, k)].clone();
            for j in 0..n {
                m[(k, j)] /= &pivot;
                inv[(k, j)] /= &pivot;
            }
            for i in 0..n {
                if i == k || m[(i, k)].is_zero() {
                    continue;
                }
                let t = m[(i, k)].clone();
                for j in 0..n {
                    let a = &t * &m[(k, j)];
                    m[(i, j)] -= a;
                    let b = &t * &inv[(k, j)];
                    inv[(i, j)] -= b;
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &RationalMatrix {
    type Output = RationalMatrix;
    fn add(self, rhs: &RationalMatrix) -> RationalMatrix {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub for &RationalMatrix {
    type Output = RationalMatrix;
    fn sub(self, rhs: &RationalMatrix) -> RationalMatrix {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Neg for &RationalMatrix {
    type Output = RationalMatrix;
    fn neg(self) -> RationalMatrix {
        self.scale(&q(-1))
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;
    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        self.try_mul(rhs).expect("shape mismatch")
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Gram matrices of the two forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormsSpec {
    pub dim0: usize,
    pub dim1: usize,
    pub gram0: RationalMatrix,
    pub gram1: RationalMatrix,
    gram0_inv: RationalMatrix,
}

impl FormsSpec {
    pub fn new(dim0: usize, dim1: usize) -> Result<Self> {
        if dim1 % 2 == 1 {
            return Err(Error::DimensionMismatch(format!("symplectic space of odd dimension {dim1}")));
        }
        let h = dim1 / 2;
        let gram1 = RationalMatrix::from_fn(dim1, dim1, |i, j| {
            if j == i + h {
                q(1)
            } else if i == j + h {
                q(-1)
            } else {
                Q::zero()
            }
        });
        let gram0 = RationalMatrix::identity(dim0);
        Ok(Self { dim0, dim1, gram0_inv: gram0.clone(), gram0, gram1 })
    }

    pub fn for_osp(data: &OspRootData) -> Self {
        Self::new(data.dim_v0(), data.dim_v1()).expect("dim V_1 is even")
    }

    /// `(v, v')_{V_0}`.
    pub fn form0(&self, v: &[Q], w: &[Q]) -> Q {
        bilinear(&self.gram0, v, w)
    }

    /// `⟨w, w'⟩_{V_1}`.
    pub fn form1(&self, v: &[Q], w: &[Q]) -> Q {
        bilinear(&self.gram1, v, w)
    }

    fn check_a(&self, a: &RationalMatrix) -> Result<()> {
        if a.rows != self.dim1 || a.cols != self.dim0 {
            return Err(Error::DimensionMismatch(format!(
                "expected a {}x{} matrix, got {}x{}",
                self.dim1, self.dim0, a.rows, a.cols
            )));
        }
        Ok(())
    }

    /// Parity of `N` implied by the dimensions.
    pub fn parity(&self) -> Parity {
        if self.dim0 == self.dim1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

fn bilinear(g: &RationalMatrix, v: &[Q], w: &[Q]) -> Q {
    let mut s = Q::zero();
    for (i, vi) in v.iter().enumerate() {
        if vi.is_zero() {
            continue;
        }
        for (j, wj) in w.iter().enumerate() {
            s += vi * &g[(i, j)] * wj;
        }
    }
    s
}

/// `A^t = G_0^{-1} A^T J_1 : V_1 → V_0`.
pub fn adjoint(spec: &FormsSpec, a: &RationalMatrix) -> Result<RationalMatrix> {
    spec.check_a(a)?;
    spec.gram0_inv.try_mul(&a.transpose())?.try_mul(&spec.gram1)
}

/// The adjoint of `B : V_1 → V_0`, `J_1^{-1} B^T G_0 : V_0 → V_1`.
pub fn adjoint_back(spec: &FormsSpec, b: &RationalMatrix) -> Result<RationalMatrix> {
    if b.rows != spec.dim0 || b.cols != spec.dim1 {
        return Err(Error::DimensionMismatch(format!("expected a {}x{} matrix", spec.dim0, spec.dim1)));
    }
    let j_inv = spec.gram1.scale(&q(-1));
    j_inv.try_mul(&b.transpose())?.try_mul(&spec.gram0)
}

pub fn q0(spec: &FormsSpec, a: &RationalMatrix) -> Result<RationalMatrix> {
    adjoint(spec, a)?.try_mul(a)
}

pub fn q1(spec: &FormsSpec, a: &RationalMatrix) -> Result<RationalMatrix> {
    a.try_mul(&adjoint(spec, a)?)
}

/// `M^T G_0 + G_0 M = 0`.
pub fn in_so(spec: &FormsSpec, m: &RationalMatrix) -> bool {
    (&(&m.transpose() * &spec.gram0) + &(&spec.gram0 * m)).is_zero()
}

/// `M^T J_1 + J_1 M = 0`.
pub fn in_sp(spec: &FormsSpec, m: &RationalMatrix) -> bool {
    (&(&m.transpose() * &spec.gram1) + &(&spec.gram1 * m)).is_zero()
}

/// Characteristic polynomial `det(z - M)`, lowest degree first, by
/// Faddeev-LeVerrier.
pub fn char_poly(m: &RationalMatrix) -> Result<Vec<Q>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("characteristic polynomial of a non-square matrix".into()));
    }
    let n = m.rows;
    let mut coeffs = vec![Q::zero(); n + 1];
    coeffs[n] = Q::one();
    let mut mk = RationalMatrix::zeros(n, n);
    for k in 1..=n {
        let mut next = m * &mk;
        for i in 0..n {
            next[(i, i)] += &coeffs[n - k + 1];
        }
        mk = next;
        coeffs[n - k] = -(m * &mk).trace() / q(k as i64);
    }
    Ok(coeffs)
}

/// `Σ c_k M^k`.
pub fn eval_poly_at(coeffs: &[Q], m: &RationalMatrix) -> RationalMatrix {
    let n = m.rows;
    let mut acc = RationalMatrix::zeros(n, n);
    for c in coeffs.iter().rev() {
        acc = &acc * m;
        for i in 0..n {
            acc[(i, i)] += c;
        }
    }
    acc
}

/// Pfaffian by congruence elimination: clear row `k` past column `k+1`
/// with paired row and column operations, then expand along row `k`.
pub fn pfaffian(m: &RationalMatrix) -> Result<Q> {
    if !m.is_antisymmetric() {
        return Err(Error::Unsupported("pfaffian of a matrix that is not antisymmetric".into()));
    }
    if m.rows % 2 == 1 {
        return Err(Error::Unsupported("pfaffian of an odd-dimensional matrix".into()));
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut pf = Q::one();
    for k in (0..n).step_by(2) {
        let Some(p) = (k + 1..n).find(|&j| !a[(k, j)].is_zero()) else {
            return Ok(Q::zero());
        };
        if p != k + 1 {
            a.swap_rows(p, k + 1);
            a.swap_cols(p, k + 1);
            pf = -pf;
        }
        let pivot = a[(k, k + 1)].clone();
        pf *= &pivot;
        for i in k + 2..n {
            let t = &a[(k, i)] / &pivot;
            if t.is_zero() {
                continue;
            }
            for r in 0..n {
                let d = &t * &a[(r, k + 1)];
                a[(r, i)] -= d;
            }
            for c in 0..n {
                let d = &t * &a[(k + 1, c)];
                a[(i, c)] -= d;
            }
        }
    }
    Ok(pf)
}

pub fn verify_char_identity(spec: &FormsSpec, a: &RationalMatrix) -> Result<bool> {
    let c0 = char_poly(&q0(spec, a)?)?;
    let c1 = char_poly(&q1(spec, a)?)?;
    let shift = spec.dim0 - spec.dim1;
    if shift == 0 {
        return Ok(c0 == c1);
    }
    // z^shift · Char_{AA^t}
    let mut shifted = vec![Q::zero(); shift];
    shifted.extend(c1);
    Ok(c0 == shifted)
}

pub fn verify_pfaffian_vanishing(spec: &FormsSpec, a: &RationalMatrix) -> Result<bool> {
    if spec.parity() == Parity::Odd {
        return Err(Error::Unsupported("the Pfaffian identity concerns the even case".into()));
    }
    let m = q0(spec, a)?;
    // in the orthonormal basis q_0(A) is already antisymmetric
    let anti = (&m - &m.transpose()).scale(&Q::new(BigInt::from(1), BigInt::from(2)));
    Ok(pfaffian(&anti)?.is_zero())
}

fn unit(dim: usize, i: usize) -> Vec<Q> {
    (0..dim).map(|j| if j == i { Q::one() } else { Q::zero() }).collect()
}

/// `A = Σ_k e_k ⊗ A e_k` as rank-one tensors `(v_0, v_1)`.
pub fn rank_one_terms(spec: &FormsSpec, a: &RationalMatrix) -> Result<Vec<(Vec<Q>, Vec<Q>)>> {
    spec.check_a(a)?;
    Ok((0..spec.dim0).map(|k| (unit(spec.dim0, k), a.column(k))).filter(|(_, w)| w.iter().any(|x| !x.is_zero())).collect())
}

/// `p_i(v_0 ⊗ v_1) = (v_0, e_i) v_1`.
fn project(spec: &FormsSpec, i: usize, v0: &[Q], v1: &[Q]) -> Vec<Q> {
    let c = spec.form0(v0, &unit(spec.dim0, i));
    v1.iter().map(|x| x * &c).collect()
}

/// `Q_{ij}(A) = Σ_{s,t} ⟨p_i(x_s), p_j(x_t)⟩` over a rank-one
/// decomposition `A = Σ_s x_s`.
pub fn q_generator(spec: &FormsSpec, a: &RationalMatrix, i: usize, j: usize) -> Result<Q> {
    let terms = rank_one_terms(spec, a)?;
    let mut s = Q::zero();
    for (v0, v1) in &terms {
        let pi = project(spec, i, v0, v1);
        for (w0, w1) in &terms {
            s += spec.form1(&pi, &project(spec, j, w0, w1));
        }
    }
    Ok(s)
}

pub fn verify_fft_generators(spec: &FormsSpec, a: &RationalMatrix) -> Result<bool> {
    let m = q0(spec, a)?;
    for i in 0..spec.dim0 {
        for j in i + 1..spec.dim0 {
            if m[(i, j)] != q_generator(spec, a, i, j)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn random_q(rng: &mut ChaCha8Rng) -> Q {
    Q::new(BigInt::from(rng.random_range(-5i64..=5)), BigInt::from(rng.random_range(1i64..=4)))
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = random_q(rng);
        }
    }
    m
}

/// Cayley transform `(I - X)^{-1}(I + X)`; maps the Lie algebra of a form
/// to its group whenever `I - X` is invertible.
pub fn cayley(x: &RationalMatrix) -> Option<RationalMatrix> {
    let id = RationalMatrix::identity(x.rows);
    Some(&(&id - x).inverse()? * &(&id + x))
}

/// A random rational element of `SO(V_0)`.
pub fn random_orthogonal(rng: &mut ChaCha8Rng, dim: usize) -> RationalMatrix {
    loop {
        let r = random_matrix(rng, dim, dim);
        let x = (&r - &r.transpose()).scale(&Q::new(BigInt::from(1), BigInt::from(2)));
        if let Some(g) = cayley(&x) {
            return g;
        }
    }
}

/// A random rational element of `Sp(V_1)`: Cayley transform of `J_1 S`
/// with `S` symmetric.
pub fn random_symplectic(rng: &mut ChaCha8Rng, spec: &FormsSpec) -> RationalMatrix {
    loop {
        let r = random_matrix(rng, spec.dim1, spec.dim1);
        let s = (&r + &r.transpose()).scale(&Q::new(BigInt::from(1), BigInt::from(2)));
        if let Some(g) = cayley(&(&spec.gram1 * &s)) {
            return g;
        }
    }
}

/// `q_0(g_1 A g_0^{-1}) = g_0 q_0(A) g_0^{-1}` and the same for `q_1`.
pub fn verify_equivariance(spec: &FormsSpec, a: &RationalMatrix, g0: &RationalMatrix, g1: &RationalMatrix) -> Result<bool> {
    let g0_inv = g0.inverse().ok_or_else(|| Error::Internal("singular g_0".into()))?;
    let g1_inv = g1.inverse().ok_or_else(|| Error::Internal("singular g_1".into()))?;
    let moved = &(g1 * a) * &g0_inv;
    let lhs0 = q0(spec, &moved)?;
    let rhs0 = &(g0 * &q0(spec, a)?) * &g0_inv;
    let lhs1 = q1(spec, &moved)?;
    let rhs1 = &(g1 * &q1(spec, a)?) * &g1_inv;
    Ok(lhs0 == rhs0 && lhs1 == rhs1)
}

/// The generator for trial `t` under `seed`, independent of scheduling.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MomentReport {
    pub big_n: usize,
    pub trials: usize,
    pub seed: u64,
    pub membership_failures: usize,
    pub char_identity_failures: usize,
    /// `None` in the odd case.
    pub pfaffian_failures: Option<usize>,
    /// `None` in the even case.
    pub fft_failures: Option<usize>,
    pub equivariance_failures: usize,
    pub ok: bool,
}

#[derive(Default, Clone, Copy)]
struct TrialOutcome {
    membership: bool,
    char_identity: bool,
    pfaffian: bool,
    fft: bool,
    equivariance: bool,
}

fn run_trial(spec: &FormsSpec, seed: u64, t: u64, equivariance: bool) -> Result<TrialOutcome> {
    let mut rng = trial_rng(seed, t);
    let a = random_matrix(&mut rng, spec.dim1, spec.dim0);
    let m0 = q0(spec, &a)?;
    let m1 = q1(spec, &a)?;
    let even = spec.parity() == Parity::Even;
    Ok(TrialOutcome {
        membership: in_so(spec, &m0) && in_sp(spec, &m1),
        char_identity: verify_char_identity(spec, &a)?,
        pfaffian: !even || verify_pfaffian_vanishing(spec, &a)?,
        fft: even || verify_fft_generators(spec, &a)?,
        equivariance: !equivariance || {
            let g0 = random_orthogonal(&mut rng, spec.dim0);
            let g1 = random_symplectic(&mut rng, spec);
            verify_equivariance(spec, &a, &g0, &g1)?
        },
    })
}

/// Seeded random trials of every identity; equivariance is sampled on
/// every tenth trial.
pub fn run_trials(data: &OspRootData, trials: usize, seed: u64) -> Result<MomentReport> {
    let spec = FormsSpec::for_osp(data);
    let outcomes = par::map_range(trials, |t| run_trial(&spec, seed, t as u64, t % 10 == 0));
    let outcomes: Vec<TrialOutcome> = outcomes.into_iter().collect::<Result<_>>()?;
    let count = |f: fn(&TrialOutcome) -> bool| outcomes.iter().filter(|o| !f(o)).count();
    let even = data.parity() == Parity::Even;
    let membership_failures = count(|o| o.membership);
    let char_identity_failures = count(|o| o.char_identity);
    let pfaffian_failures = even.then(|| count(|o| o.pfaffian));
    let fft_failures = (!even).then(|| count(|o| o.fft));
    let equivariance_failures = count(|o| o.equivariance);
    let ok = membership_failures == 0
        && char_identity_failures == 0
        && pfaffian_failures.unwrap_or(0) == 0
        && fft_failures.unwrap_or(0) == 0
        && equivariance_failures == 0;
    Ok(MomentReport {
        big_n: data.big_n(),
        trials,
        seed,
        membership_failures,
        char_identity_failures,
        pfaffian_failures,
        fft_failures,
        equivariance_failures,
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: usize) -> FormsSpec {
        FormsSpec::for_osp(&OspRootData::new(n).unwrap())
    }

    #[test]
    fn adjoint_defining_identity() {
        let s = spec(5);
        let mut rng = trial_rng(7, 0);
        let a = random_matrix(&mut rng, 4, 4);
        let at = adjoint(&s, &a).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let (v, w) = (unit(4, i), unit(4, j));
                let av: Vec<Q> = a.column(i);
                let atw = at.column(j);
                assert_eq!(s.form0(&v, &atw), s.form1(&av, &w));
            }
        }
        assert_eq!(adjoint_back(&s, &at).unwrap(), -&a);
        assert!(adjoint(&s, &RationalMatrix::zeros(4, 4)).unwrap().is_zero());
        assert!(adjoint(&s, &RationalMatrix::zeros(3, 4)).is_err());
    }

    #[test]
    fn moment_maps_land_in_the_lie_algebras() {
        for n in 3..=6 {
            let s = spec(n);
            let mut rng = trial_rng(1, n as u64);
            let a = random_matrix(&mut rng, s.dim1, s.dim0);
            let m0 = q0(&s, &a).unwrap();
            assert!(in_so(&s, &m0));
            assert!(in_sp(&s, &q1(&s, &a).unwrap()));
            assert_eq!(q0(&s, &a.scale(&q(3))).unwrap(), m0.scale(&q(9)));
        }
        let s = spec(4);
        assert!(q0(&s, &RationalMatrix::zeros(2, 4)).unwrap().is_zero());
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(char_poly(&RationalMatrix::zeros(3, 3)).unwrap(), vec![q(0), q(0), q(0), q(1)]);
        assert_eq!(char_poly(&RationalMatrix::identity(2)).unwrap(), vec![q(1), q(-2), q(1)]);
        let mut rng = trial_rng(3, 0);
        let m = random_matrix(&mut rng, 5, 5);
        assert!(eval_poly_at(&char_poly(&m).unwrap(), &m).is_zero());
        assert_eq!(char_poly(&m).unwrap()[0], -m.det().unwrap());
    }

    #[test]
    fn pfaffian_examples() {
        let m = RationalMatrix::from_i64(&[vec![0, 7], vec![-7, 0]]);
        assert_eq!(pfaffian(&m).unwrap(), q(7));
        assert_eq!(pfaffian(&RationalMatrix::zeros(4, 4)).unwrap(), q(0));
        // a_{12}a_{34} - a_{13}a_{24} + a_{14}a_{23}
        let m = RationalMatrix::from_i64(&[vec![0, 1, 2, 3], vec![-1, 0, 4, 5], vec![-2, -4, 0, 6], vec![-3, -5, -6, 0]]);
        assert_eq!(pfaffian(&m).unwrap(), q(6 - 10 + 12));
        for t in 0..20 {
            let mut rng = trial_rng(11, t);
            let r = random_matrix(&mut rng, 6, 6);
            let x = &r - &r.transpose();
            let pf = pfaffian(&x).unwrap();
            assert_eq!(&pf * &pf, x.det().unwrap());
        }
        assert!(pfaffian(&RationalMatrix::identity(2)).is_err());
        assert!(pfaffian(&RationalMatrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn identities_at_zero() {
        for n in [3, 4] {
            let s = spec(n);
            let a = RationalMatrix::zeros(s.dim1, s.dim0);
            assert!(verify_char_identity(&s, &a).unwrap());
        }
        let s = spec(4);
        assert!(verify_pfaffian_vanishing(&s, &RationalMatrix::zeros(2, 4)).unwrap());
        assert!(verify_pfaffian_vanishing(&spec(3), &RationalMatrix::zeros(2, 2)).is_err());
        assert!(verify_fft_generators(&spec(5), &RationalMatrix::zeros(4, 4)).unwrap());
    }

    #[test]
    fn rank_one_generator() {
        // A = e_1 ⊗ w: only the first column of A is nonzero
        let s = spec(5);
        let mut a = RationalMatrix::zeros(4, 4);
        for (i, x) in [1, 2, 0, -1].into_iter().enumerate() {
            a[(i, 0)] = q(x);
        }
        for i in 0..4 {
            for j in i + 1..4 {
                assert!(q_generator(&s, &a, i, j).unwrap().is_zero());
            }
        }
        let mut b = a.clone();
        b[(2, 1)] = q(1);
        // ⟨A e_1, A e_2⟩ = ⟨(1,2,0,-1), (0,0,1,0)⟩ = 1
        assert_eq!(q_generator(&s, &b, 0, 1).unwrap(), q(1));
        assert!(verify_fft_generators(&s, &b).unwrap());
    }

    #[test]
    fn random_group_elements_preserve_forms() {
        let s = spec(6);
        let mut rng = trial_rng(5, 0);
        let g0 = random_orthogonal(&mut rng, s.dim0);
        assert_eq!(&g0.transpose() * &g0, RationalMatrix::identity(s.dim0));
        let g1 = random_symplectic(&mut rng, &s);
        assert_eq!(&(&g1.transpose() * &s.gram1) * &g1, s.gram1);
    }

    #[test]
    fn seeded_trials_pass() {
        for n in 3..=6 {
            let report = run_trials(&OspRootData::new(n).unwrap(), 30, 42).unwrap();
            assert!(report.ok, "{report:?}");
        }
    }

    #[test]
    fn trials_are_deterministic() {
        let mut a = trial_rng(9, 4);
        let mut b = trial_rng(9, 4);
        assert_eq!(random_matrix(&mut a, 3, 3), random_matrix(&mut b, 3, 3));
    }
}
