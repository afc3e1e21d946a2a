//! Odd root data of the mixed Borel subalgebra: the shuffle, the positive
//! odd roots, the simple odd roots and the dominance order on pairs of
//! dominant weights.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_data::{self, GroupType, ProductType, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    Odd,
    Even,
}

/// `N = 2n+1` (odd) or `N = 2n` (even); `dim V_0 = 2n`, `dim V_1 = 2·delta_rank`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OspRootData {
    big_n: usize,
    parity: Parity,
    n: usize,
}

impl OspRootData {
    pub fn new(big_n: usize) -> Result<Self> {
        if big_n < 3 {
            return Err(Error::InvalidN(big_n));
        }
        let parity = if big_n % 2 == 1 { Parity::Odd } else { Parity::Even };
        Ok(Self { big_n, parity, n: big_n / 2 })
    }

    pub fn big_n(&self) -> usize {
        self.big_n
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eps_rank(&self) -> usize {
        self.n
    }

    pub fn delta_rank(&self) -> usize {
        match self.parity {
            Parity::Odd => self.n,
            Parity::Even => self.n - 1,
        }
    }

    /// Total rank of the weight lattice `t_0^* ⊕ t_1^*`.
    pub fn rank(&self) -> usize {
        self.eps_rank() + self.delta_rank()
    }

    pub fn dim_v0(&self) -> usize {
        2 * self.eps_rank()
    }

    pub fn dim_v1(&self) -> usize {
        2 * self.delta_rank()
    }

    pub fn eps_type(&self) -> GroupType {
        GroupType::d(self.eps_rank())
    }

    pub fn delta_type(&self) -> GroupType {
        GroupType::c(self.delta_rank())
    }

    pub fn product_type(&self) -> ProductType {
        ProductType::new(vec![self.eps_type(), self.delta_type()])
    }

    /// `(ρ_0, ρ_1)`.
    pub fn rho(&self) -> BiWeight {
        BiWeight::new(root_data::rho(self.eps_type()), root_data::rho(self.delta_type()))
    }

    pub fn zero(&self) -> BiWeight {
        BiWeight::new(vec![0; self.eps_rank()], vec![0; self.delta_rank()])
    }

    pub fn check_shape(&self, w: &BiWeight) -> Result<()> {
        if w.eps.len() != self.eps_rank() {
            return Err(Error::RankMismatch { expected: self.eps_rank(), got: w.eps.len() });
        }
        if w.delta.len() != self.delta_rank() {
            return Err(Error::RankMismatch { expected: self.delta_rank(), got: w.delta.len() });
        }
        Ok(())
    }

    pub fn is_dominant(&self, w: &BiWeight) -> bool {
        self.check_shape(w).is_ok()
            && root_data::is_dominant(self.eps_type(), &w.eps)
            && root_data::is_dominant(self.delta_type(), &w.delta)
    }

    /// Shape check plus dominance of both factors; `name` labels the error.
    pub fn check_dominant(&self, w: &BiWeight, name: &str) -> Result<()> {
        self.check_shape(w)?;
        if !root_data::is_dominant(self.eps_type(), &w.eps) {
            return Err(Error::NotDominant { factor: format!("{name}_0"), weight: w.eps.clone() });
        }
        if !root_data::is_dominant(self.delta_type(), &w.delta) {
            return Err(Error::NotDominant { factor: format!("{name}_1"), weight: w.delta.clone() });
        }
        Ok(())
    }

    /// The shuffle `σ^N`.
    pub fn shuffle(&self) -> Vec<usize> {
        let n = self.n;
        match self.parity {
            Parity::Odd => (1..=n).flat_map(|i| [n + i, i]).collect(),
            Parity::Even => {
                let mut s: Vec<usize> = (1..n).flat_map(|i| [i, n + i]).collect();
                s.push(n);
                s
            }
        }
    }

    /// Positive odd roots, in the printed order of the three families.
    pub fn odd_positive_roots(&self) -> Vec<BiWeight> {
        let (n, m) = (self.eps_rank(), self.delta_rank());
        let mut roots = Vec::with_capacity(self.dim_v0() * self.dim_v1() / 2);
        for i in 0..n {
            for j in 0..m {
                roots.push(self.eps_delta(i, 1, j, 1));
            }
        }
        // ε_i - δ_j: i < j (odd), i <= j (even); δ_i - ε_j: i <= j (odd), i < j (even)
        let strict = self.parity == Parity::Odd;
        for i in 0..n {
            for j in 0..m {
                if (strict && i < j) || (!strict && i <= j) {
                    roots.push(self.eps_delta(i, 1, j, -1));
                }
            }
        }
        for i in 0..m {
            for j in 0..n {
                if (strict && i <= j) || (!strict && i < j) {
                    roots.push(self.eps_delta(j, -1, i, 1));
                }
            }
        }
        roots
    }

    fn eps_delta(&self, i: usize, a: i64, j: usize, b: i64) -> BiWeight {
        let mut w = self.zero();
        w.eps[i] = a;
        w.delta[j] = b;
        w
    }

    /// Simple odd roots in the printed order; they form a basis of the lattice.
    pub fn simple_odd_roots(&self) -> Vec<BiWeight> {
        let n = self.n;
        let mut out = Vec::with_capacity(self.rank());
        match self.parity {
            Parity::Odd => {
                for i in 0..n {
                    out.push(self.eps_delta(i, -1, i, 1));
                    if i + 1 < n {
                        out.push(self.eps_delta(i, 1, i + 1, -1));
                    }
                }
                out.push(self.eps_delta(n - 1, 1, n - 1, 1));
            }
            Parity::Even => {
                for i in 0..n - 1 {
                    out.push(self.eps_delta(i, 1, i, -1));
                    out.push(self.eps_delta(i + 1, -1, i, 1));
                }
                out.push(self.eps_delta(n - 1, 1, n - 2, 1));
            }
        }
        out
    }

    pub fn simple_basis(&self) -> SimpleBasis {
        SimpleBasis::new(self.simple_odd_roots().iter().map(BiWeight::flat).collect(), self.rank())
            .expect("simple odd roots are linearly independent")
    }

    pub fn simple_root_coordinates(&self, alpha: &BiWeight) -> Option<Vec<i64>> {
        self.check_shape(alpha).ok()?;
        self.simple_basis().coordinates(&alpha.flat())
    }

    /// The shuffled sequence `(λ_1^{(1)}, λ_0^{(1)}, …)` (odd) or
    /// `(λ_0^{(1)}, λ_1^{(1)}, …, λ_0^{(n)})` (even).
    pub fn interleave(&self, w: &BiWeight) -> Vec<i64> {
        let n = self.n;
        match self.parity {
            Parity::Odd => (0..n).flat_map(|i| [w.delta[i], w.eps[i]]).collect(),
            Parity::Even => {
                let mut s: Vec<i64> = (0..n - 1).flat_map(|i| [w.eps[i], w.delta[i]]).collect();
                s.push(w.eps[n - 1]);
                s
            }
        }
    }

    /// `λ ≥ μ` via the partial-sum inequalities of the shuffled sequences.
    pub fn dominance_ge(&self, lambda: &BiWeight, mu: &BiWeight) -> Result<bool> {
        self.check_dominant(lambda, "λ")?;
        self.check_dominant(mu, "μ")?;
        Ok(partial_sum_order(&self.interleave(lambda), &self.interleave(mu)))
    }

    /// Dominance plus, when it holds, the simple-root coordinates of `λ - μ`.
    pub fn dominance_certificate(&self, lambda: &BiWeight, mu: &BiWeight) -> Result<Option<Vec<i64>>> {
        if !self.dominance_ge(lambda, mu)? {
            return Ok(None);
        }
        let coords = self
            .simple_root_coordinates(&lambda.sub(mu))
            .ok_or_else(|| Error::Internal(format!("no cone certificate for {lambda} - {mu}")))?;
        Ok(Some(coords))
    }

    /// All dominant pairs with every entry of absolute value at most `bound`
    /// (the last `ε` entry may be negative).
    pub fn dominant_pairs_in_box(&self, bound: i64) -> Vec<BiWeight> {
        let eps = dominant_in_box(self.eps_type(), bound);
        let delta = dominant_in_box(self.delta_type(), bound);
        let mut out = Vec::with_capacity(eps.len() * delta.len());
        for e in &eps {
            for d in &delta {
                out.push(BiWeight::new(e.clone(), d.clone()));
            }
        }
        out
    }
}

/// Dominant weights of `ty` with all entries in `[-bound, bound]`, sorted.
pub fn dominant_in_box(ty: GroupType, bound: i64) -> Vec<Weight> {
    let r = ty.rank;
    let mut out = Vec::new();
    let mut cur = vec![-bound; r];
    loop {
        if root_data::is_dominant(ty, &cur) {
            out.push(cur.clone());
        }
        let mut k = r;
        loop {
            if k == 0 {
                out.sort();
                return out;
            }
            k -= 1;
            if cur[k] < bound {
                cur[k] += 1;
                for c in cur.iter_mut().skip(k + 1) {
                    *c = -bound;
                }
                break;
            }
        }
    }
}

/// The printed inequalities on shuffled sequences `a` (for λ) and `b` (for μ)
/// of common length `m`: partial sums `S_1..S_{m-1}` nonnegative, the total
/// in `2ℕ`, and `S_{m-1} - x_m ≥ 0`, where `x = a - b`.
fn partial_sum_order(a: &[i64], b: &[i64]) -> bool {
    let m = a.len();
    let x: Vec<i64> = a.iter().zip(b).map(|(p, q)| p - q).collect();
    let mut s = 0;
    for &xi in &x[..m - 1] {
        s += xi;
        if s < 0 {
            return false;
        }
    }
    let total = s + x[m - 1];
    total >= 0 && total % 2 == 0 && s - x[m - 1] >= 0
}

/// An element of `t_0^* ⊕ t_1^*`: `ε`-coordinates and `δ`-coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BiWeight {
    pub eps: Weight,
    pub delta: Weight,
}

impl BiWeight {
    pub fn new(eps: Weight, delta: Weight) -> Self {
        Self { eps, delta }
    }

    pub fn flat(&self) -> Weight {
        self.eps.iter().chain(&self.delta).copied().collect()
    }

    pub fn from_flat(v: &[i64], eps_rank: usize) -> Self {
        Self { eps: v[..eps_rank].to_vec(), delta: v[eps_rank..].to_vec() }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(zip_with(&self.eps, &other.eps, |a, b| a + b), zip_with(&self.delta, &other.delta, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(zip_with(&self.eps, &other.eps, |a, b| a - b), zip_with(&self.delta, &other.delta, |a, b| a - b))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.eps.iter().map(|x| -x).collect(), self.delta.iter().map(|x| -x).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.eps.iter().chain(&self.delta).all(|&x| x == 0)
    }

    pub fn max_abs(&self) -> i64 {
        self.eps.iter().chain(&self.delta).map(|x| x.abs()).max().unwrap_or(0)
    }
}

fn zip_with(a: &[i64], b: &[i64], f: impl Fn(i64, i64) -> i64) -> Weight {
    a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect()
}

impl fmt::Display for BiWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{};{}", join(&self.eps), join(&self.delta))
    }
}

/// Parses `"a1,a2;b1,b2"`: the part before `;` holds the `ε` coordinates,
/// the part after it the `δ` coordinates. Either part may be empty.
impl FromStr for BiWeight {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let mut parts = s.split(';');
        let eps = parts.next().unwrap_or("");
        let delta = parts.next().ok_or_else(|| format!("expected \"eps;delta\", found {s:?} (missing ';')"))?;
        if parts.next().is_some() {
            return Err(format!("expected exactly one ';' in {s:?}"));
        }
        Ok(Self::new(parse_int_list(eps)?, parse_int_list(delta)?))
    }
}

/// Parses a comma-separated integer list; the empty string is the empty list.
pub fn parse_int_list(s: &str) -> std::result::Result<Vec<i64>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .enumerate()
        .map(|(k, t)| t.trim().parse::<i64>().map_err(|e| format!("entry {} ({:?}): {e}", k + 1, t.trim())))
        .collect()
}

type Q = Ratio<i128>;

/// Solves `α = Σ c_k s_k` over a linearly independent list of integer
/// vectors `s_k`, returning `c` only when it is a nonnegative integer vector.
#[derive(Debug, Clone)]
pub struct SimpleBasis {
    vectors: Vec<Vec<i64>>,
    dim: usize,
    pivot_rows: Vec<usize>,
    inverse: Vec<Vec<i128>>,
    denominator: i128,
}

impl SimpleBasis {
    pub fn new(vectors: Vec<Vec<i64>>, dim: usize) -> Result<Self> {
        let k = vectors.len();
        if vectors.iter().any(|v| v.len() != dim) {
            return Err(Error::InvalidRootSet("simple vector of wrong length".into()));
        }
        // Row-reduce the k × dim matrix whose rows are the vectors to find k
        // pivot coordinates; the k × k block on those coordinates is invertible.
        let mut rows: Vec<Vec<Q>> = vectors.iter().map(|v| v.iter().map(|&x| Q::from(x as i128)).collect()).collect();
        let mut pivot_rows = Vec::with_capacity(k);
        let mut r = 0;
        for col in 0..dim {
            if r == k {
                break;
            }
            let Some(p) = (r..k).find(|&i| !rows[i][col].is_zero()) else { continue };
            rows.swap(r, p);
            for i in 0..k {
                if i != r && !rows[i][col].is_zero() {
                    let f = rows[i][col] / rows[r][col];
                    let pivot = rows[r].clone();
                    for (x, p) in rows[i][col..].iter_mut().zip(&pivot[col..]) {
                        *x -= *p * f;
                    }
                }
            }
            pivot_rows.push(col);
            r += 1;
        }
        if r < k {
            return Err(Error::InvalidRootSet("simple vectors are linearly dependent".into()));
        }
        // block[a][b] = vectors[b][pivot_rows[a]]
        let block: Vec<Vec<Q>> =
            pivot_rows.iter().map(|&p| vectors.iter().map(|v| Q::from(v[p] as i128)).collect()).collect();
        let inv = invert(block).ok_or_else(|| Error::Internal("singular simple-root block".into()))?;
        let denominator = inv.iter().flatten().fold(1i128, |acc, q| lcm(acc, *q.denom()));
        let inverse = inv
            .iter()
            .map(|row| row.iter().map(|q| q.numer() * (denominator / q.denom())).collect())
            .collect();
        Ok(Self { vectors, dim, pivot_rows, inverse, denominator })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<i64>] {
        &self.vectors
    }

    /// Unique rational coordinates, if `alpha` lies in the span.
    pub fn rational_coordinates(&self, alpha: &[i64]) -> Option<Vec<Q>> {
        if alpha.len() != self.dim {
            return None;
        }
        let coords: Vec<Q> = self
            .inverse
            .iter()
            .map(|row| {
                let num: i128 = row.iter().zip(&self.pivot_rows).map(|(a, &p)| a * alpha[p] as i128).sum();
                Q::new(num, self.denominator)
            })
            .collect();
        // consistency on the non-pivot coordinates
        for (c, &target) in alpha.iter().enumerate() {
            let s: Q = coords.iter().zip(&self.vectors).map(|(q, v)| *q * Q::from(v[c] as i128)).sum();
            if s != Q::from(target as i128) {
                return None;
            }
        }
        Some(coords)
    }

    /// Nonnegative integer coordinates, or `None`.
    pub fn coordinates(&self, alpha: &[i64]) -> Option<Vec<i64>> {
        let q = self.rational_coordinates(alpha)?;
        q.into_iter()
            .map(|c| (c.is_integer() && !c.is_negative()).then(|| c.to_integer() as i64))
            .collect()
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: i128, b: i128) -> i128 {
    a / gcd(a, b) * b
}

fn invert(mut m: Vec<Vec<Q>>) -> Option<Vec<Vec<Q>>> {
    let k = m.len();
    let mut inv: Vec<Vec<Q>> = (0..k).map(|i| (0..k).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect();
    for col in 0..k {
        let p = (col..k).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, p);
        inv.swap(col, p);
        let piv = m[col][col];
        for c in 0..k {
            m[col][c] /= piv;
            inv[col][c] /= piv;
        }
        for i in 0..k {
            if i != col && !m[i][col].is_zero() {
                let f = m[i][col];
                for c in 0..k {
                    let t = m[col][c] * f;
                    m[i][c] -= t;
                    let t = inv[col][c] * f;
                    inv[i][c] -= t;
                }
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bw(s: &str) -> BiWeight {
        s.parse().unwrap()
    }

    #[test]
    fn shapes() {
        let d5 = OspRootData::new(5).unwrap();
        assert_eq!((d5.eps_rank(), d5.delta_rank(), d5.dim_v0(), d5.dim_v1()), (2, 2, 4, 4));
        let d4 = OspRootData::new(4).unwrap();
        assert_eq!((d4.eps_rank(), d4.delta_rank(), d4.dim_v0(), d4.dim_v1()), (2, 1, 4, 2));
        assert!(matches!(OspRootData::new(2), Err(Error::InvalidN(2))));
    }

    #[test]
    fn shuffle_examples() {
        assert_eq!(OspRootData::new(5).unwrap().shuffle(), vec![3, 1, 4, 2]);
        assert_eq!(OspRootData::new(4).unwrap().shuffle(), vec![1, 3, 2]);
        assert_eq!(OspRootData::new(3).unwrap().shuffle(), vec![2, 1]);
        assert_eq!(OspRootData::new(7).unwrap().shuffle(), vec![4, 1, 5, 2, 6, 3]);
        assert_eq!(OspRootData::new(8).unwrap().shuffle(), vec![1, 5, 2, 6, 3, 7, 4]);
    }

    #[test]
    fn odd_root_examples() {
        let d3 = OspRootData::new(3).unwrap();
        assert_eq!(d3.odd_positive_roots(), vec![bw("1;1"), bw("-1;1")]);
        assert_eq!(OspRootData::new(5).unwrap().odd_positive_roots().len(), 8);
        assert_eq!(OspRootData::new(4).unwrap().odd_positive_roots().len(), 4);
        assert_eq!(
            OspRootData::new(4).unwrap().odd_positive_roots(),
            vec![bw("1,0;1"), bw("0,1;1"), bw("1,0;-1"), bw("0,-1;1")]
        );
    }

    #[test]
    fn simple_root_examples() {
        assert_eq!(OspRootData::new(3).unwrap().simple_odd_roots(), vec![bw("-1;1"), bw("1;1")]);
        assert_eq!(
            OspRootData::new(4).unwrap().simple_odd_roots(),
            vec![bw("1,0;-1"), bw("0,-1;1"), bw("0,1;1")]
        );
        assert_eq!(
            OspRootData::new(5).unwrap().simple_odd_roots(),
            vec![bw("-1,0;1,0"), bw("1,0;0,-1"), bw("0,-1;0,1"), bw("0,1;0,1")]
        );
    }

    #[test]
    fn coordinate_examples() {
        let d3 = OspRootData::new(3).unwrap();
        assert_eq!(d3.simple_root_coordinates(&bw("0;0")), Some(vec![0, 0]));
        assert_eq!(d3.simple_root_coordinates(&bw("1;1")), Some(vec![0, 1]));
        assert_eq!(d3.simple_root_coordinates(&bw("1;0")), None);
        let q = d3.simple_basis().rational_coordinates(&[1, 0]).unwrap();
        assert_eq!(q, vec![Q::new(-1, 2), Q::new(1, 2)]);
        assert_eq!(d3.simple_root_coordinates(&bw("-1;-1")), None);
    }

    #[test]
    fn dominance_examples() {
        let d3 = OspRootData::new(3).unwrap();
        assert!(d3.dominance_ge(&bw("2;3"), &bw("2;3")).unwrap());
        assert!(d3.dominance_ge(&bw("1;1"), &bw("0;0")).unwrap());
        assert!(!d3.dominance_ge(&bw("1;0"), &bw("0;0")).unwrap());
        assert!(matches!(
            d3.dominance_ge(&bw("0;-1"), &bw("0;0")),
            Err(Error::NotDominant { ref factor, .. }) if factor == "λ_1"
        ));
        let d5 = OspRootData::new(5).unwrap();
        assert!(matches!(
            d5.dominance_ge(&bw("0,0;0,0"), &bw("1,2;0,0")),
            Err(Error::NotDominant { ref factor, .. }) if factor == "μ_0"
        ));
    }

    #[test]
    fn certificate_is_simple_coordinates() {
        let d4 = OspRootData::new(4).unwrap();
        let cert = d4.dominance_certificate(&bw("1,0;1"), &bw("0,0;0")).unwrap().unwrap();
        let sum = d4
            .simple_odd_roots()
            .iter()
            .zip(&cert)
            .fold(d4.zero(), |acc, (s, &c)| (0..c).fold(acc, |a, _| a.add(s)));
        assert_eq!(sum, bw("1,0;1"));
    }

    #[test]
    fn parse_and_display() {
        let w = bw("1,-2;3");
        assert_eq!(w.eps, vec![1, -2]);
        assert_eq!(w.to_string(), "1,-2;3");
        assert!("1,2".parse::<BiWeight>().is_err());
        assert!("1,x;2".parse::<BiWeight>().is_err());
        assert_eq!(bw(";"), BiWeight::new(vec![], vec![]));
    }

    #[test]
    fn box_enumeration() {
        assert_eq!(dominant_in_box(GroupType::d(2), 3).len(), 16);
        assert_eq!(dominant_in_box(GroupType::c(2), 3).len(), 10);
        assert_eq!(dominant_in_box(GroupType::d(1), 2).len(), 5);
        assert_eq!(OspRootData::new(5).unwrap().dominant_pairs_in_box(3).len(), 160);
    }

    #[test]
    fn simple_basis_rejects_dependent_vectors() {
        assert!(SimpleBasis::new(vec![vec![1, 1], vec![2, 2]], 2).is_err());
        let b = SimpleBasis::new(vec![vec![1, 0, 1]], 3).unwrap();
        assert_eq!(b.coordinates(&[2, 0, 2]), Some(vec![2]));
        assert_eq!(b.coordinates(&[2, 1, 2]), None);
    }
}
