//! Characters of `SO(V_0)`, `Sp(V_1)` and their product as finitely
//! supported functions on the weight lattice.
//!
//! Irreducible characters come from exact division of the alternant
//! `A_{λ+ρ} = Σ_w (-1)^w e^{w(λ+ρ)}` by the Weyl denominator `A_ρ`, using
//! long division in the lexicographic term order on `ℤ^r`. Lex order is
//! compatible with addition and `e^ρ` is the leading term of `A_ρ`, so a
//! nonzero remainder means the division was not exact.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use dashmap::DashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kostka::MAX_KOSTKA_RANK;
use crate::root_data::{Family, GroupType, ProductType, Weight};

/// A virtual character: weight ↦ multiplicity, zero entries absent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharElt {
    lattice: ProductType,
    terms: BTreeMap<Weight, i64>,
}

/// One `(weight, multiplicity)` row in serialized output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightMult {
    pub weight: Weight,
    pub mult: i64,
}

impl CharElt {
    pub fn zero(lattice: ProductType) -> Self {
        Self { lattice, terms: BTreeMap::new() }
    }

    pub fn trivial(lattice: ProductType) -> Self {
        let r = lattice.rank();
        Self::monomial(lattice, vec![0; r], 1)
    }

    pub fn monomial(lattice: ProductType, weight: Weight, mult: i64) -> Self {
        let mut ch = Self::zero(lattice);
        ch.add_term(weight, mult);
        ch
    }

    pub fn from_terms(lattice: ProductType, terms: impl IntoIterator<Item = (Weight, i64)>) -> Result<Self> {
        let mut ch = Self::zero(lattice);
        for (w, m) in terms {
            ch.lattice.check_rank(&w)?;
            ch.add_term(w, m);
        }
        Ok(ch)
    }

    pub fn lattice(&self) -> &ProductType {
        &self.lattice
    }

    pub fn terms(&self) -> &BTreeMap<Weight, i64> {
        &self.terms
    }

    pub fn mult(&self, weight: &[i64]) -> i64 {
        self.terms.get(weight).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, weight: Weight, mult: i64) {
        if mult == 0 {
            return;
        }
        match self.terms.entry(weight) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += mult;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(mult);
            }
        }
    }

    fn add_scaled_shifted(&mut self, other: &CharElt, scale: i64, shift: &[i64]) {
        for (w, &m) in &other.terms {
            let v: Weight = w.iter().zip(shift).map(|(a, b)| a + b).collect();
            match self.terms.entry(v) {
                Entry::Occupied(mut e) => {
                    *e.get_mut() += scale * m;
                    if *e.get() == 0 {
                        e.remove();
                    }
                }
                Entry::Vacant(e) => {
                    if scale * m != 0 {
                        e.insert(scale * m);
                    }
                }
            }
        }
    }

    pub fn add(&self, other: &CharElt) -> Result<CharElt> {
        self.check_context(other)?;
        let mut out = self.clone();
        out.add_scaled_shifted(other, 1, &vec![0; self.lattice.rank()]);
        Ok(out)
    }

    pub fn sub(&self, other: &CharElt) -> Result<CharElt> {
        self.check_context(other)?;
        let mut out = self.clone();
        out.add_scaled_shifted(other, -1, &vec![0; self.lattice.rank()]);
        Ok(out)
    }

    pub fn add_assign_scaled(&mut self, other: &CharElt, scale: i64) -> Result<()> {
        self.check_context(other)?;
        let zero = vec![0; self.lattice.rank()];
        self.add_scaled_shifted(other, scale, &zero);
        Ok(())
    }

    pub fn scale(&self, c: i64) -> CharElt {
        let mut out = Self::zero(self.lattice.clone());
        if c != 0 {
            out.terms = self.terms.iter().map(|(w, m)| (w.clone(), m * c)).collect();
        }
        out
    }

    fn check_context(&self, other: &CharElt) -> Result<()> {
        if self.lattice != other.lattice {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    /// Tensor product of characters (convolution of supports).
    pub fn product(&self, other: &CharElt) -> Result<CharElt> {
        self.check_context(other)?;
        let mut out = Self::zero(self.lattice.clone());
        for (w, &m) in &self.terms {
            out.add_scaled_shifted(other, m, w);
        }
        Ok(out)
    }

    /// Character of the dual module: weights negated.
    pub fn dual(&self) -> CharElt {
        CharElt {
            lattice: self.lattice.clone(),
            terms: self.terms.iter().map(|(w, &m)| (w.iter().map(|x| -x).collect(), m)).collect(),
        }
    }

    /// Sum of multiplicities.
    pub fn dim(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn is_weyl_invariant(&self) -> Result<bool> {
        let group = self.lattice.weyl_group()?;
        Ok(self.terms.iter().all(|(w, &m)| group.iter().all(|g| self.mult(&g.act_unchecked(w)) == m)))
    }

    /// Rows sorted lexicographically by weight.
    pub fn rows(&self) -> Vec<WeightMult> {
        self.terms.iter().map(|(w, &m)| WeightMult { weight: w.clone(), mult: m }).collect()
    }
}

fn check_guard(lattice: &ProductType) -> Result<()> {
    let rank = lattice.max_factor_rank();
    if rank > MAX_KOSTKA_RANK {
        return Err(Error::EnumerationTooLarge { rank, bound: MAX_KOSTKA_RANK });
    }
    Ok(())
}

/// `Σ_w (-1)^w e^{w·v}`.
pub fn alternant(lattice: &ProductType, v: &[i64]) -> Result<CharElt> {
    lattice.check_rank(v)?;
    let group = lattice.weyl_group()?;
    let mut ch = CharElt::zero(lattice.clone());
    for w in group.iter() {
        ch.add_term(w.act_unchecked(v), w.sign());
    }
    Ok(ch)
}

/// The Weyl denominator `A_ρ`.
pub fn weyl_denominator(lattice: &ProductType) -> Result<CharElt> {
    alternant(lattice, &lattice.rho())
}

/// Exact quotient `numerator / A_ρ`; a nonzero remainder is reported as an
/// internal error.
pub fn divide_by_denominator(numerator: &CharElt) -> Result<CharElt> {
    let lattice = numerator.lattice.clone();
    let denom = weyl_denominator(&lattice)?;
    let rho = lattice.rho();
    let mut quotient = CharElt::zero(lattice.clone());
    let Some(num_min) = numerator.terms.keys().next() else {
        return Ok(quotient);
    };
    let den_min = denom.terms.keys().next().expect("A_ρ is nonzero");
    let low: Weight = num_min.iter().zip(den_min).map(|(a, b)| a - b).collect();
    let mut rem = numerator.clone();
    while let Some((top, &c)) = rem.terms.iter().next_back() {
        let q: Weight = top.iter().zip(&rho).map(|(a, b)| a - b).collect();
        if q < low {
            return Err(Error::Internal("alternant division left a nonzero remainder".into()));
        }
        rem.add_scaled_shifted(&denom, -c, &q);
        quotient.add_term(q, c);
    }
    Ok(quotient)
}

/// `A_{v+ρ} / A_ρ` for arbitrary `v`: zero when `v+ρ` is singular, otherwise
/// `±` an irreducible character.
pub fn weyl_character(lattice: &ProductType, v: &[i64]) -> Result<CharElt> {
    check_guard(lattice)?;
    lattice.check_rank(v)?;
    let shifted: Weight = v.iter().zip(lattice.rho()).map(|(a, b)| a + b).collect();
    divide_by_denominator(&alternant(lattice, &shifted)?)
}

/// Character of the irreducible module with highest weight `λ`.
pub fn irreducible_character(lattice: &ProductType, lambda: &[i64]) -> Result<Arc<CharElt>> {
    static CACHE: OnceLock<DashMap<(ProductType, Weight), Arc<CharElt>>> = OnceLock::new();
    lattice.check_rank(lambda)?;
    if !lattice.is_dominant(lambda) {
        return Err(Error::NotDominant { factor: "highest".into(), weight: lambda.to_vec() });
    }
    check_guard(lattice)?;
    let cache = CACHE.get_or_init(DashMap::new);
    let key = (lattice.clone(), lambda.to_vec());
    if let Some(hit) = cache.get(&key) {
        return Ok(Arc::clone(&hit));
    }
    let ch = Arc::new(weyl_character(lattice, lambda)?);
    if ch.mult(lambda) != 1 {
        return Err(Error::Internal(format!("highest weight {lambda:?} has multiplicity {}", ch.mult(lambda))));
    }
    cache.insert(key, Arc::clone(&ch));
    Ok(ch)
}

/// Multiplicities `m_λ` with `ch = Σ m_λ χ_λ`, read off `ch · A_ρ` at the
/// strictly dominant points `λ + ρ`.
pub fn decompose(ch: &CharElt) -> Result<BTreeMap<Weight, i64>> {
    let lattice = ch.lattice.clone();
    check_guard(&lattice)?;
    if !ch.is_weyl_invariant()? {
        return Err(Error::NotInvariant);
    }
    let rho = lattice.rho();
    let lifted = ch.product(&weyl_denominator(&lattice)?)?;
    let mut out = BTreeMap::new();
    for (v, &m) in &lifted.terms {
        if lattice.is_regular_dominant(v) {
            out.insert(v.iter().zip(&rho).map(|(a, b)| a - b).collect::<Weight>(), m);
        }
    }
    let mut rebuilt = CharElt::zero(lattice.clone());
    for (lambda, &m) in &out {
        rebuilt.add_assign_scaled(&*irreducible_character(&lattice, lambda)?, m)?;
    }
    if &rebuilt != ch {
        return Err(Error::Internal("decomposition does not reconstruct the character".into()));
    }
    Ok(out)
}

/// `λ* = -w_0 λ`: the highest weight of the dual module.
pub fn dual_label(ty: GroupType, lambda: &[i64]) -> Weight {
    let mut out = lambda.to_vec();
    if ty.family == Family::D && ty.rank % 2 == 1 {
        if let Some(last) = out.last_mut() {
            *last = -*last;
        }
    }
    out
}

pub fn dual_label_product(lattice: &ProductType, lambda: &[i64]) -> Weight {
    lattice.factors.iter().zip(lattice.split(lambda)).flat_map(|(&t, x)| dual_label(t, x)).collect()
}
