//! Classical root data for the even part: type D for `so(V_0)` on the
//! `ε` coordinates and type C for `sp(V_1)` on the `δ` coordinates.

use std::fmt;
use std::sync::{Arc, OnceLock};

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer coordinates on `ε_1..ε_n` or `δ_1..δ_m` (or a concatenation).
pub type Weight = Vec<i64>;

/// Largest rank for which Weyl groups are enumerated.
pub const MAX_ENUM_RANK: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    D,
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupType {
    pub family: Family,
    pub rank: usize,
}

impl GroupType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Unsupported(format!("{family:?}_0 is not a valid group type")));
        }
        Ok(Self { family, rank })
    }

    pub fn d(rank: usize) -> Self {
        Self::new(Family::D, rank).expect("rank must be positive")
    }

    pub fn c(rank: usize) -> Self {
        Self::new(Family::C, rank).expect("rank must be positive")
    }

    /// Order of the Weyl group: `2^{r-1} r!` for D, `2^r r!` for C.
    pub fn weyl_order(&self) -> u64 {
        let fact: u64 = (1..=self.rank as u64).product();
        match self.family {
            Family::D => fact << (self.rank - 1),
            Family::C => fact << self.rank,
        }
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}_{}", self.family, self.rank)
    }
}

/// Positive roots `ε_i ± ε_j (i<j)` for D and `δ_i ± δ_j (i<j)`, `2δ_i` for C,
/// in lexicographic order of `(i, j, sign)` with the long roots `2δ_i` last.
pub fn positive_roots(ty: GroupType) -> Vec<Weight> {
    let r = ty.rank;
    let mut roots = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            for s in [-1, 1] {
                let mut v = vec![0; r];
                v[i] = 1;
                v[j] = s;
                roots.push(v);
            }
        }
    }
    if ty.family == Family::C {
        for i in 0..r {
            let mut v = vec![0; r];
            v[i] = 2;
            roots.push(v);
        }
    }
    roots
}

/// Half the sum of the positive roots: `(r-1, ..., 1, 0)` for D_r and
/// `(r, ..., 1)` for C_r.
pub fn rho(ty: GroupType) -> Weight {
    let mut sum = vec![0i64; ty.rank];
    for root in positive_roots(ty) {
        for (s, x) in sum.iter_mut().zip(root) {
            *s += x;
        }
    }
    sum.into_iter()
        .map(|x| {
            debug_assert!(x % 2 == 0);
            x / 2
        })
        .collect()
}

pub fn is_dominant(ty: GroupType, lambda: &[i64]) -> bool {
    if lambda.len() != ty.rank {
        return false;
    }
    let decreasing = lambda.windows(2).all(|w| w[0] >= w[1]);
    match ty.family {
        Family::C => decreasing && lambda.last().is_none_or(|&x| x >= 0),
        Family::D => {
            let r = ty.rank;
            if r == 1 {
                return true;
            }
            lambda[..r - 1].windows(2).all(|w| w[0] >= w[1]) && lambda[r - 2] >= lambda[r - 1].abs()
        }
    }
}

/// Dominant and not fixed by any reflection (so `λ - ρ` is dominant).
pub fn is_regular_dominant(ty: GroupType, v: &[i64]) -> bool {
    if v.len() != ty.rank {
        return false;
    }
    match ty.family {
        Family::C => v.windows(2).all(|w| w[0] > w[1]) && v.last().is_none_or(|&x| x > 0),
        Family::D => {
            let r = ty.rank;
            if r == 1 {
                return true;
            }
            v[..r - 1].windows(2).all(|w| w[0] > w[1]) && v[r - 2] > v[r - 1].abs()
        }
    }
}

/// A signed permutation: `(w·λ)_i = signs[i] · λ[perm⁻¹(i)]`, so basis
/// vector `e_j` is sent to `signs[perm[j]] · e_{perm[j]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let r = perm.len();
        if signs.len() != r {
            return Err(Error::RankMismatch { expected: r, got: signs.len() });
        }
        let mut seen = vec![false; r];
        for &p in &perm {
            if p >= r || seen[p] {
                return Err(Error::Unsupported(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Unsupported("signs must be ±1".into()));
        }
        Ok(Self { perm, signs })
    }

    pub fn identity(rank: usize) -> Self {
        Self { perm: (0..rank).collect(), signs: vec![1; rank] }
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.signs.iter().all(|&s| s == 1)
    }

    /// Number of `-1` signs.
    pub fn flips(&self) -> usize {
        self.signs.iter().filter(|&&s| s < 0).count()
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), got: other.rank() });
        }
        let r = self.rank();
        let perm: Vec<usize> = (0..r).map(|j| self.perm[other.perm[j]]).collect();
        let inv = self.inverse_perm();
        let signs = (0..r).map(|i| self.signs[i] * other.signs[inv[i]]).collect();
        Ok(Self { perm, signs })
    }

    fn inverse_perm(&self) -> Vec<usize> {
        let mut inv = vec![0; self.rank()];
        for (j, &p) in self.perm.iter().enumerate() {
            inv[p] = j;
        }
        inv
    }

    /// Apply to a weight.
    pub fn act(&self, lambda: &[i64]) -> Result<Weight> {
        if lambda.len() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), got: lambda.len() });
        }
        Ok(self.act_unchecked(lambda))
    }

    pub(crate) fn act_unchecked(&self, lambda: &[i64]) -> Weight {
        let mut out = vec![0; lambda.len()];
        for (j, &x) in lambda.iter().enumerate() {
            let i = self.perm[j];
            out[i] = self.signs[i] as i64 * x;
        }
        out
    }

    /// Determinant of the signed permutation matrix, `(-1)^{ℓ(w)}`.
    pub fn sign(&self) -> i64 {
        let r = self.rank();
        let mut visited = vec![false; r];
        let mut parity = 0usize;
        for start in 0..r {
            if visited[start] {
                continue;
            }
            let mut len = 0;
            let mut j = start;
            while !visited[j] {
                visited[j] = true;
                j = self.perm[j];
                len += 1;
            }
            parity += len - 1;
        }
        parity += self.flips();
        if parity.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// All Weyl group elements, ordered by permutation (lexicographic) and then
/// by sign vector (lexicographic with `+1` before `-1`).
pub fn weyl_elements(ty: GroupType) -> Result<Vec<SignedPermutation>> {
    let r = ty.rank;
    if r > MAX_ENUM_RANK {
        return Err(Error::EnumerationTooLarge { rank: r, bound: MAX_ENUM_RANK });
    }
    let mut out = Vec::with_capacity(ty.weyl_order() as usize);
    let mut perm: Vec<usize> = (0..r).collect();
    loop {
        for mask in 0u32..(1 << r) {
            // bit (r-1-i) set means coordinate i is negated
            let signs: Vec<i8> = (0..r).map(|i| if mask >> (r - 1 - i) & 1 == 1 { -1 } else { 1 }).collect();
            if ty.family == Family::D && signs.iter().filter(|&&s| s < 0).count() % 2 == 1 {
                continue;
            }
            out.push(SignedPermutation { perm: perm.clone(), signs });
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(out)
}

/// The unique dominant element of the W-orbit of `v`, with a Weyl element
/// `w` such that `w·v` equals it.
pub fn dominant_conjugate(ty: GroupType, v: &[i64]) -> Result<(Weight, SignedPermutation)> {
    let r = ty.rank;
    if v.len() != r {
        return Err(Error::RankMismatch { expected: r, got: v.len() });
    }
    if ty.family == Family::D && r == 1 {
        return Ok((v.to_vec(), SignedPermutation::identity(1)));
    }
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by(|&a, &b| v[b].abs().cmp(&v[a].abs()).then(a.cmp(&b)));
    let mut perm = vec![0; r];
    let mut signs = vec![1i8; r];
    let mut out = vec![0; r];
    for (i, &src) in order.iter().enumerate() {
        perm[src] = i;
        out[i] = v[src].abs();
        if v[src] < 0 {
            signs[i] = -1;
        }
    }
    if ty.family == Family::D && signs.iter().filter(|&&s| s < 0).count() % 2 == 1 {
        signs[r - 1] = -signs[r - 1];
        out[r - 1] = -out[r - 1];
    }
    Ok((out, SignedPermutation { perm, signs }))
}

/// Product of classical groups acting on the concatenation of their
/// coordinate blocks. The Weyl group is realized as block-diagonal signed
/// permutations of the flat coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProductType {
    pub factors: Vec<GroupType>,
}

impl ProductType {
    pub fn new(factors: Vec<GroupType>) -> Self {
        Self { factors }
    }

    pub fn single(ty: GroupType) -> Self {
        Self { factors: vec![ty] }
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(|t| t.rank).sum()
    }

    pub fn max_factor_rank(&self) -> usize {
        self.factors.iter().map(|t| t.rank).max().unwrap_or(0)
    }

    /// Split a flat weight into per-factor slices.
    pub fn split<'a>(&self, v: &'a [i64]) -> Vec<&'a [i64]> {
        let mut out = Vec::with_capacity(self.factors.len());
        let mut start = 0;
        for t in &self.factors {
            out.push(&v[start..start + t.rank]);
            start += t.rank;
        }
        out
    }

    pub fn check_rank(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), got: v.len() });
        }
        Ok(())
    }

    pub fn rho(&self) -> Weight {
        self.factors.iter().flat_map(|&t| rho(t)).collect()
    }

    pub fn positive_roots(&self) -> Vec<Weight> {
        let r = self.rank();
        let mut out = Vec::new();
        let mut start = 0;
        for &t in &self.factors {
            for root in positive_roots(t) {
                let mut v = vec![0; r];
                v[start..start + t.rank].copy_from_slice(&root);
                out.push(v);
            }
            start += t.rank;
        }
        out
    }

    pub fn is_dominant(&self, v: &[i64]) -> bool {
        v.len() == self.rank() && self.factors.iter().zip(self.split(v)).all(|(&t, x)| is_dominant(t, x))
    }

    pub fn is_regular_dominant(&self, v: &[i64]) -> bool {
        v.len() == self.rank()
            && self.factors.iter().zip(self.split(v)).all(|(&t, x)| is_regular_dominant(t, x))
    }

    pub fn weyl_order(&self) -> u64 {
        self.factors.iter().map(|t| t.weyl_order()).product()
    }

    /// Block-diagonal Weyl elements, cached per product type.
    pub fn weyl_group(&self) -> Result<Arc<Vec<SignedPermutation>>> {
        static CACHE: OnceLock<DashMap<ProductType, Arc<Vec<SignedPermutation>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(DashMap::new);
        if let Some(g) = cache.get(self) {
            return Ok(Arc::clone(&g));
        }
        let mut group = vec![SignedPermutation::identity(0)];
        for &t in &self.factors {
            let factor = weyl_elements(t)?;
            let mut next = Vec::with_capacity(group.len() * factor.len());
            for g in &group {
                for w in &factor {
                    let off = g.rank();
                    let mut perm = g.perm.clone();
                    perm.extend(w.perm.iter().map(|&p| p + off));
                    let mut signs = g.signs.clone();
                    signs.extend_from_slice(&w.signs);
                    next.push(SignedPermutation { perm, signs });
                }
            }
            group = next;
        }
        let group = Arc::new(group);
        cache.insert(self.clone(), Arc::clone(&group));
        Ok(group)
    }

    pub fn dominant_conjugate(&self, v: &[i64]) -> Result<(Weight, SignedPermutation)> {
        self.check_rank(v)?;
        let mut out = Vec::with_capacity(v.len());
        let mut perm = Vec::with_capacity(v.len());
        let mut signs = Vec::with_capacity(v.len());
        for (&t, x) in self.factors.iter().zip(self.split(v)) {
            let (d, w) = dominant_conjugate(t, x)?;
            let off = perm.len();
            out.extend(d);
            perm.extend(w.perm.iter().map(|&p| p + off));
            signs.extend(w.signs);
        }
        Ok((out, SignedPermutation { perm, signs }))
    }
}
