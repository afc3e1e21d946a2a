//! Graded equivariant Euler characteristics on the even flag variety,
//! compared degree by degree against the Kostka expansion.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::character::{dual_label_product, irreducible_character, weyl_character, CharElt, WeightMult};
use crate::error::{Error, Result};
use crate::kostka::{KostkaEngine, PartitionCounter};
use crate::odd_roots::{BiWeight, OspRootData};
use crate::par;

/// Coefficients of `q^0..q^qmax`, each a virtual character of the even group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedChar {
    pub degrees: Vec<CharElt>,
}

impl GradedChar {
    pub fn qmax(&self) -> usize {
        self.degrees.len() - 1
    }
}

/// Largest `qmax` accepted for the given largest factor rank.
pub fn qmax_limit(rank: usize) -> usize {
    match rank {
        0..=2 => 8,
        3 => 4,
        _ => 2,
    }
}

fn check_qmax(data: &OspRootData, qmax: usize) -> Result<()> {
    let rank = data.product_type().max_factor_rank();
    let limit = qmax_limit(rank);
    if qmax > limit {
        return Err(Error::DegreeGuard { qmax, limit, rank });
    }
    Ok(())
}

/// Euler characteristic of the line bundle whose fiber carries the Borel
/// character `ν`. Normalized so that `ν = -μ` with `μ` dominant gives the
/// irreducible character with highest weight `μ*`.
pub fn euler_line(data: &OspRootData, nu: &BiWeight) -> Result<CharElt> {
    data.check_shape(nu)?;
    let lattice = data.product_type();
    // w_0 ν = -(ν*)
    let twisted: Vec<i64> = dual_label_product(&lattice, &nu.flat()).iter().map(|x| -x).collect();
    weyl_character(&lattice, &twisted)
}

fn dual_irreducible(data: &OspRootData, lambda: &BiWeight) -> Result<CharElt> {
    let lattice = data.product_type();
    let label = dual_label_product(&lattice, &lambda.flat());
    Ok((*irreducible_character(&lattice, &label)?).clone())
}

/// `Σ_α p_d(α) · euler_line(-μ-α)` for each `d ≤ qmax`.
pub fn bryl_lhs(data: &OspRootData, mu: &BiWeight, qmax: usize) -> Result<GradedChar> {
    data.check_dominant(mu, "μ")?;
    check_qmax(data, qmax)?;
    let table = PartitionCounter::for_osp(data).partition_table(qmax);
    let lattice = data.product_type();
    let degrees = par::map_range(qmax + 1, |d| {
        let mut acc = CharElt::zero(lattice.clone());
        for (alpha, &count) in table.degree(d) {
            let line = euler_line(data, &mu.add(alpha).neg())?;
            acc.add_assign_scaled(&line, count as i64)?;
        }
        Ok(acc)
    });
    Ok(GradedChar { degrees: degrees.into_iter().collect::<Result<_>>()? })
}

/// Every dominant `λ` whose Kostka polynomial against `μ` can have a term of
/// degree `≤ qmax`: the dominant conjugates of `μ + ρ + α` shifted back by
/// `ρ`, over `α` reachable with at most `qmax` odd roots.
pub fn rhs_candidates(data: &OspRootData, mu: &BiWeight, qmax: usize) -> Result<Vec<BiWeight>> {
    let table = PartitionCounter::for_osp(data).partition_table(qmax);
    let lattice = data.product_type();
    let rho = data.rho();
    let mut out = BTreeSet::new();
    for d in 0..=qmax {
        for alpha in table.degree(d).keys() {
            let v = mu.add(alpha).add(&rho).flat();
            let (dom, _) = lattice.dominant_conjugate(&v)?;
            if lattice.is_regular_dominant(&dom) {
                let lambda = BiWeight::from_flat(&dom, data.eps_rank()).sub(&rho);
                if data.dominance_ge(&lambda, mu)? {
                    out.insert(lambda);
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// `Σ_{λ ≥ μ} K_{λ,μ}(q) · χ_{λ*}`, truncated at `qmax`.
pub fn bryl_rhs(data: &OspRootData, mu: &BiWeight, qmax: usize) -> Result<GradedChar> {
    bryl_rhs_with(&KostkaEngine::new(data), data, mu, qmax)
}

pub fn bryl_rhs_with(engine: &KostkaEngine, data: &OspRootData, mu: &BiWeight, qmax: usize) -> Result<GradedChar> {
    data.check_dominant(mu, "μ")?;
    check_qmax(data, qmax)?;
    let lattice = data.product_type();
    let candidates = rhs_candidates(data, mu, qmax)?;
    let terms = par::map(&candidates, |lambda| -> Result<_> {
        let k = engine.kostka(lambda, mu)?.truncate(qmax);
        if k.is_zero() {
            return Ok(None);
        }
        Ok(Some((k, dual_irreducible(data, lambda)?)))
    });
    let mut degrees = vec![CharElt::zero(lattice); qmax + 1];
    for t in terms {
        if let Some((k, ch)) = t? {
            for (d, &c) in k.coeffs().iter().enumerate() {
                degrees[d].add_assign_scaled(&ch, c)?;
            }
        }
    }
    Ok(GradedChar { degrees })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeDiff {
    pub degree: usize,
    /// `lhs - rhs`, empty when the degree agrees.
    pub diff: Vec<WeightMult>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BrylReport {
    pub big_n: usize,
    pub mu: String,
    pub qmax: usize,
    pub ok: bool,
    pub degrees: Vec<DegreeDiff>,
}

pub fn verify_bryl(data: &OspRootData, mu: &BiWeight, qmax: usize) -> Result<BrylReport> {
    verify_bryl_with(&KostkaEngine::new(data), data, mu, qmax)
}

pub fn verify_bryl_with(engine: &KostkaEngine, data: &OspRootData, mu: &BiWeight, qmax: usize) -> Result<BrylReport> {
    let lhs = bryl_lhs(data, mu, qmax)?;
    let rhs = bryl_rhs_with(engine, data, mu, qmax)?;
    let mut degrees = Vec::with_capacity(qmax + 1);
    for (d, (l, r)) in lhs.degrees.iter().zip(&rhs.degrees).enumerate() {
        degrees.push(DegreeDiff { degree: d, diff: l.sub(r)?.rows() });
    }
    let ok = degrees.iter().all(|d| d.diff.is_empty());
    Ok(BrylReport { big_n: data.big_n(), mu: mu.to_string(), qmax, ok, degrees })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::decompose;

    fn bw(s: &str) -> BiWeight {
        s.parse().unwrap()
    }

    #[test]
    fn euler_line_normalization() {
        let data = OspRootData::new(4).unwrap();
        let lattice = data.product_type();
        assert_eq!(euler_line(&data, &data.zero()).unwrap(), CharElt::trivial(lattice.clone()));
        for mu in data.dominant_pairs_in_box(2) {
            let line = euler_line(&data, &mu.neg()).unwrap();
            assert_eq!(line, dual_irreducible(&data, &mu).unwrap(), "{mu}");
        }
    }

    #[test]
    fn euler_line_singular_vanishes() {
        let data = OspRootData::new(5).unwrap();
        // the δ part of w_0 ν + ρ is (1,1)
        let line = euler_line(&data, &bw("0,0;1,0")).unwrap();
        assert!(line.is_zero());
    }

    #[test]
    fn degree_zero_is_the_dual_irreducible() {
        let data = OspRootData::new(4).unwrap();
        let mu = bw("1,0;1");
        let lhs = bryl_lhs(&data, &mu, 0).unwrap();
        assert_eq!(lhs.degrees[0], dual_irreducible(&data, &mu).unwrap());
        assert!(verify_bryl(&data, &mu, 0).unwrap().ok);
    }

    #[test]
    fn n3_degree_one_lhs() {
        let data = OspRootData::new(3).unwrap();
        let lhs = bryl_lhs(&data, &data.zero(), 1).unwrap();
        let dec = decompose(&lhs.degrees[1]).unwrap();
        assert_eq!(dec.into_iter().collect::<Vec<_>>(), vec![(vec![-1, 1], 1), (vec![1, 1], 1)]);
    }

    #[test]
    fn n3_rhs_candidates() {
        let data = OspRootData::new(3).unwrap();
        let c = rhs_candidates(&data, &data.zero(), 2).unwrap();
        let expected: Vec<BiWeight> = ["-2;2", "-1;1", "0;0", "0;2", "1;1", "2;2"].iter().map(|s| bw(s)).collect();
        assert_eq!(c, expected);
    }

    #[test]
    fn identity_holds_on_small_cases() {
        for (n, mu, qmax) in [(3, "0;0", 4), (3, "1;2", 3), (4, "1,0;1", 3), (5, "1,0;1,0", 2)] {
            let data = OspRootData::new(n).unwrap();
            let report = verify_bryl(&data, &bw(mu), qmax).unwrap();
            assert!(report.ok, "N={n} μ={mu}: {report:?}");
        }
    }

    #[test]
    fn lhs_decomposes_positively() {
        let data = OspRootData::new(4).unwrap();
        let lhs = bryl_lhs(&data, &bw("1,1;0"), 3).unwrap();
        for ch in &lhs.degrees {
            assert!(decompose(ch).unwrap().values().all(|&m| m > 0));
        }
    }

    #[test]
    fn qmax_guard() {
        let data = OspRootData::new(7).unwrap();
        assert!(matches!(bryl_lhs(&data, &data.zero(), 5), Err(Error::DegreeGuard { .. })));
    }
}
