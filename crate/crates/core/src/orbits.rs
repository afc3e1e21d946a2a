//! `SO(N-1, O)`-orbits on the affine Grassmannian of `SO_N`: labels,
//! closure order, dimensions, stalk tables, signature embeddings,
//! stabilizer data, lattice representatives and the `GL` adjacency order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kostka::KostkaEngine;
use crate::odd_roots::{BiWeight, OspRootData, Parity};
use crate::par;
use crate::root_data::{self, GroupType, Weight};

/// `(λ_s, λ_b)`: a dominant coweight of `SO_{N-1}` and one of `SO_N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrbitLabel {
    pub lam_s: Weight,
    pub lam_b: Weight,
}

impl OrbitLabel {
    pub fn new(lam_s: Weight, lam_b: Weight) -> Self {
        Self { lam_s, lam_b }
    }

    pub fn zero(data: &OspRootData) -> Self {
        Self::from_pair(data, &data.zero())
    }

    /// The pair `(λ_0, λ_1)` on the odd-root side.
    pub fn to_pair(&self, data: &OspRootData) -> Result<BiWeight> {
        let pair = match data.parity() {
            Parity::Odd => BiWeight::new(self.lam_s.clone(), self.lam_b.clone()),
            Parity::Even => BiWeight::new(self.lam_b.clone(), self.lam_s.clone()),
        };
        data.check_shape(&pair).map_err(|_| self.invalid(data))?;
        if !data.is_dominant(&pair) {
            return Err(self.invalid(data));
        }
        Ok(pair)
    }

    pub fn from_pair(data: &OspRootData, pair: &BiWeight) -> Self {
        match data.parity() {
            Parity::Odd => Self::new(pair.eps.clone(), pair.delta.clone()),
            Parity::Even => Self::new(pair.delta.clone(), pair.eps.clone()),
        }
    }

    pub fn validate(&self, data: &OspRootData) -> Result<()> {
        self.to_pair(data).map(|_| ())
    }

    fn invalid(&self, data: &OspRootData) -> Error {
        Error::InvalidLabel(format!("{self} is not a dominant label for N = {}", data.big_n()))
    }

    /// The bipartition with the sign of the type-D entry dropped.
    pub fn abs_reduced(&self, data: &OspRootData) -> Self {
        let mut out = self.clone();
        let d = match data.parity() {
            Parity::Odd => &mut out.lam_s,
            Parity::Even => &mut out.lam_b,
        };
        if let Some(x) = d.last_mut() {
            *x = x.abs();
        }
        out
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", BiWeight::new(self.lam_s.clone(), self.lam_b.clone()))
    }
}

/// `"s_1,..;b_1,.."`.
impl FromStr for OrbitLabel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let w: BiWeight = s.parse()?;
        Ok(Self::new(w.eps, w.delta))
    }
}

/// `Σ ⟨λ, 2ρ⟩` for `SO_{2m+1}` (`2ρ = (2m-1, ..., 1)`) or `SO_{2m}`
/// (`2ρ = (2m-2, ..., 0)`).
fn two_rho_pairing(so_dim: usize, lambda: &[i64]) -> i64 {
    let m = lambda.len() as i64;
    let top = if so_dim % 2 == 1 { 2 * m - 1 } else { 2 * m - 2 };
    lambda.iter().enumerate().map(|(i, x)| x * (top - 2 * i as i64)).sum()
}

pub fn orbit_dim(data: &OspRootData, o: &OrbitLabel) -> Result<i64> {
    o.validate(data)?;
    let n = data.big_n();
    Ok(two_rho_pairing(n - 1, &o.lam_s) + two_rho_pairing(n, &o.lam_b))
}

/// `o1` lies in the closure of `o2`.
pub fn closure_le(data: &OspRootData, o1: &OrbitLabel, o2: &OrbitLabel) -> Result<bool> {
    data.dominance_ge(&o2.to_pair(data)?, &o1.to_pair(data)?)
}

/// One row of an IC stalk table: cohomological degree and dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StalkEntry {
    pub degree: i64,
    pub dim: i64,
}

/// Stalk of the IC sheaf of `λ` at a point of `μ`, from `K_{λ,μ}`.
pub fn stalk_poincare(data: &OspRootData, lambda: &OrbitLabel, mu: &OrbitLabel) -> Result<Vec<StalkEntry>> {
    stalk_poincare_with(&KostkaEngine::new(data), data, lambda, mu)
}

pub fn stalk_poincare_with(engine: &KostkaEngine, data: &OspRootData, lambda: &OrbitLabel, mu: &OrbitLabel) -> Result<Vec<StalkEntry>> {
    if !closure_le(data, mu, lambda)? {
        return Err(Error::NotInClosure);
    }
    let k = engine.kostka(&lambda.to_pair(data)?, &mu.to_pair(data)?)?;
    let base = orbit_dim(data, mu)?;
    Ok(k.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(d, &c)| StalkEntry { degree: -(base + d as i64), dim: c })
        .collect())
}

/// A signature, or one of the permitted sequences with a single ascent at
/// the middle pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SignatureSeq {
    pub entries: Vec<i64>,
    pub inverted: bool,
}

impl SignatureSeq {
    pub fn signature(entries: Vec<i64>) -> Result<Self> {
        let s = Self { entries, inverted: false };
        s.check()?;
        Ok(s)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn check(&self) -> Result<()> {
        let len = self.entries.len();
        for i in 1..len {
            let ascent = self.entries[i - 1] < self.entries[i];
            let middle = len.is_multiple_of(2) && i == len / 2;
            if ascent && !(self.inverted && middle) {
                return Err(Error::MalformedSequence(format!("{:?} is not non-increasing", self.entries)));
            }
        }
        Ok(())
    }

    /// Antisymmetric under reversal with negation.
    fn is_antisymmetric(&self) -> bool {
        let e = &self.entries;
        (0..e.len()).all(|i| e[i] == -e[e.len() - 1 - i])
    }

    /// The same sequence with the middle pair put in non-increasing order.
    pub fn reduced(&self) -> Vec<i64> {
        let mut e = self.entries.clone();
        if self.inverted {
            let h = e.len() / 2;
            e.swap(h - 1, h);
        }
        e
    }
}

fn symmetric(half: &[i64], center: bool) -> Vec<i64> {
    let mut out = half.to_vec();
    if center {
        out.push(0);
    }
    out.extend(half.iter().rev().map(|x| -x));
    out
}

/// `(𝛍, 𝛎)` of lengths `N-1` and `N`.
pub fn embed_signatures(data: &OspRootData, o: &OrbitLabel) -> Result<(SignatureSeq, SignatureSeq)> {
    o.validate(data)?;
    let (mu, nu) = match data.parity() {
        Parity::Odd => {
            let mu = SignatureSeq {
                entries: symmetric(&o.lam_s, false),
                inverted: o.lam_s.last().is_some_and(|&x| x < 0),
            };
            (mu, SignatureSeq { entries: symmetric(&o.lam_b, true), inverted: false })
        }
        Parity::Even => {
            let nu = SignatureSeq {
                entries: symmetric(&o.lam_b, false),
                inverted: o.lam_b.last().is_some_and(|&x| x < 0),
            };
            (SignatureSeq { entries: symmetric(&o.lam_s, true), inverted: false }, nu)
        }
    };
    Ok((mu, nu))
}

fn check_pair(data: &OspRootData, mu: &SignatureSeq, nu: &SignatureSeq) -> Result<()> {
    let n = data.big_n();
    if mu.len() != n - 1 || nu.len() != n {
        return Err(Error::MalformedSequence(format!(
            "expected lengths {} and {n}, got {} and {}",
            n - 1,
            mu.len(),
            nu.len()
        )));
    }
    let (sig, var) = match data.parity() {
        Parity::Odd => (nu, mu),
        Parity::Even => (mu, nu),
    };
    if sig.inverted {
        return Err(Error::MalformedSequence("only the type-D sequence may be inverted".into()));
    }
    sig.check()?;
    var.check()?;
    if !sig.is_antisymmetric() || !var.is_antisymmetric() {
        return Err(Error::MalformedSequence("sequences must be antisymmetric".into()));
    }
    if var.inverted && var.entries[var.len() / 2] <= 0 {
        return Err(Error::MalformedSequence("an inverted sequence needs a nonzero middle pair".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilizerData {
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
    /// Multiplicity of each integer in `β`.
    pub n: BTreeMap<i64, usize>,
    /// `⌊n_i / 2⌋`.
    pub m: BTreeMap<i64, usize>,
    pub reductive: String,
}

fn interleave(nu: &[i64], mu: &[i64]) -> Vec<i64> {
    let mut out = Vec::with_capacity(nu.len() + mu.len());
    for (i, &x) in nu.iter().enumerate() {
        out.push(x);
        if let Some(&y) = mu.get(i) {
            out.push(y);
        }
    }
    out
}

pub fn shuffled_alpha_beta(data: &OspRootData, mu: &SignatureSeq, nu: &SignatureSeq) -> Result<StabilizerData> {
    check_pair(data, mu, nu)?;
    let alpha = interleave(&nu.reduced(), &mu.reduced());
    let beta: Vec<i64> = alpha.windows(2).map(|w| w[0] + w[1]).collect();
    let mut n = BTreeMap::new();
    for &b in &beta {
        *n.entry(b).or_insert(0) += 1;
    }
    let m: BTreeMap<i64, usize> = n.iter().map(|(&i, &c)| (i, c / 2)).collect();
    let mut factors = Vec::new();
    if let Some(&m0) = m.get(&0).filter(|&&x| x > 0) {
        factors.push(format!("SO_{m0}"));
    }
    for &mi in m.range(1..).map(|(_, v)| v) {
        if mi > 0 {
            factors.push(format!("GL_{mi}"));
        }
    }
    let reductive = if factors.is_empty() { "trivial".to_string() } else { factors.join(" × ") };
    Ok(StabilizerData { alpha, beta, n, m, reductive })
}

/// Stabilizer data of the orbit with the given label.
pub fn stabilizer(data: &OspRootData, o: &OrbitLabel) -> Result<StabilizerData> {
    let (mu, nu) = embed_signatures(data, o)?;
    shuffled_alpha_beta(data, &mu, &nu)
}

/// Signature of the `GL(N, F)`-orbit containing the pair of lattices.
pub fn theta_signature(data: &OspRootData, mu: &SignatureSeq, nu: &SignatureSeq) -> Result<SignatureSeq> {
    check_pair(data, mu, nu)?;
    let (m, v) = (mu.reduced(), nu.reduced());
    let n = data.n();
    let half: Vec<i64> = match data.parity() {
        Parity::Odd => (0..n).map(|i| m[i] + v[i]).collect(),
        Parity::Even => (0..n - 1).map(|i| m[i] + v[i]).chain([v[n - 1]]).collect(),
    };
    SignatureSeq::signature(symmetric(&half, data.parity() == Parity::Odd))
}

/// One generator `Σ t^{k} e_j` of a lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeRow {
    /// `(j, k)` pairs with `j` 1-based.
    pub terms: Vec<(usize, i64)>,
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeModel {
    pub rows: Vec<LatticeRow>,
}

fn monomial(k: i64, j: usize) -> String {
    format!("t^{k}e_{j}")
}

/// `⊕_{i<N} O(t^{-μ_i-ν_i} e_i + t^{-ν_i} e_N) ⊕ O t^{-ν_N} e_N`.
pub fn lattice_representative(mu: &SignatureSeq, nu: &SignatureSeq) -> Result<LatticeModel> {
    let n = nu.len();
    if n == 0 || mu.len() + 1 != n {
        return Err(Error::DimensionMismatch(format!("lengths {} and {n}", mu.len())));
    }
    let mut rows = Vec::with_capacity(n);
    for i in 0..n - 1 {
        let a = -mu.entries[i] - nu.entries[i];
        let b = -nu.entries[i];
        rows.push(LatticeRow {
            terms: vec![(i + 1, a), (n, b)],
            description: format!("{}+{}", monomial(a, i + 1), monomial(b, n)),
        });
    }
    let c = -nu.entries[n - 1];
    rows.push(LatticeRow { terms: vec![(n, c)], description: monomial(c, n) });
    Ok(LatticeModel { rows })
}

/// `(θ_0, θ_1)` of the `GL(N-1, O)`-orbit containing the given orbit; it
/// depends only on the absolute-value reduced label.
pub fn gl_bisignature(data: &OspRootData, o: &OrbitLabel) -> Result<(Vec<i64>, Vec<i64>)> {
    let (mu, nu) = embed_signatures(data, &o.abs_reduced(data))?;
    Ok((mu.entries, nu.entries))
}

fn check_bisignature(theta0: &[i64], theta1: &[i64]) -> Result<()> {
    if theta1.len() != theta0.len() + 1 {
        return Err(Error::MalformedSequence(format!("bisignature lengths {} and {}", theta0.len(), theta1.len())));
    }
    SignatureSeq::signature(theta0.to_vec())?;
    SignatureSeq::signature(theta1.to_vec())?;
    Ok(())
}

/// Adjacency order: interleaved partial sums `θ_1^{(1)}, θ_0^{(1)},
/// θ_1^{(2)}, ...` dominate and the totals agree.
pub fn gl_bisignature_ge(theta: (&[i64], &[i64]), zeta: (&[i64], &[i64])) -> Result<bool> {
    check_bisignature(theta.0, theta.1)?;
    check_bisignature(zeta.0, zeta.1)?;
    if theta.0.len() != zeta.0.len() {
        return Err(Error::MalformedSequence("bisignatures of different sizes".into()));
    }
    let a = interleave(theta.1, theta.0);
    let b = interleave(zeta.1, zeta.0);
    let (mut sa, mut sb) = (0, 0);
    for (i, (x, y)) in a.iter().zip(&b).enumerate() {
        sa += x;
        sb += y;
        if i + 1 < a.len() && sa < sb {
            return Ok(false);
        }
    }
    Ok(sa == sb)
}

/// All labels whose entries are bounded by `bound` in absolute value.
pub fn labels_in_box(data: &OspRootData, bound: i64) -> Vec<OrbitLabel> {
    let mut out: Vec<OrbitLabel> = data.dominant_pairs_in_box(bound).iter().map(|p| OrbitLabel::from_pair(data, p)).collect();
    out.sort();
    out
}

/// Covering relations of `closure_le` on a set of labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hasse {
    pub nodes: Vec<OrbitLabel>,
    pub dims: Vec<i64>,
    /// `(lower, upper)` index pairs.
    pub edges: Vec<(usize, usize)>,
}

pub fn closure_hasse(data: &OspRootData, nodes: Vec<OrbitLabel>) -> Result<Hasse> {
    let k = nodes.len();
    let rows = par::map_range(k, |i| -> Result<Vec<bool>> {
        (0..k).map(|j| closure_le(data, &nodes[i], &nodes[j])).collect()
    });
    let le: Vec<Vec<bool>> = rows.into_iter().collect::<Result<_>>()?;
    let mut edges = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i == j || !le[i][j] {
                continue;
            }
            let covered = (0..k).any(|c| c != i && c != j && le[i][c] && le[c][j]);
            if !covered {
                edges.push((i, j));
            }
        }
    }
    let dims = nodes.iter().map(|o| orbit_dim(data, o)).collect::<Result<_>>()?;
    Ok(Hasse { nodes, dims, edges })
}

impl Hasse {
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph closure {\n  rankdir=BT;\n");
        for (i, (o, d)) in self.nodes.iter().zip(&self.dims).enumerate() {
            s.push_str(&format!("  n{i} [label=\"{o}\\ndim {d}\"];\n"));
        }
        for (a, b) in &self.edges {
            s.push_str(&format!("  n{a} -> n{b};\n"));
        }
        s.push_str("}\n");
        s
    }
}

/// `⟨λ, 2ρ⟩` read off the root data of a single factor; used as a cross
/// check of [`orbit_dim`] in tests.
pub fn two_rho(ty: GroupType) -> Weight {
    let mut sum = vec![0; ty.rank];
    for r in root_data::positive_roots(ty) {
        for (s, x) in sum.iter_mut().zip(r) {
            *s += x;
        }
    }
    sum
}
