#![allow(dead_code)]

use std::collections::BTreeMap;

use osp_kostka::{BiWeight, OspRootData, QPoly};

/// Every multiset of odd positive roots of size at most `dmax`, listed
/// literally as nondecreasing index sequences and tallied by `(sum, size)`.
pub struct MultisetOracle {
    pub dmax: usize,
    pub counts: BTreeMap<(BiWeight, usize), u64>,
}

impl MultisetOracle {
    pub fn new(data: &OspRootData, dmax: usize) -> Self {
        let roots = data.odd_positive_roots();
        let mut counts = BTreeMap::new();
        let mut stack = Vec::new();
        walk(&roots, 0, dmax, &mut stack, &mut counts, data);
        Self { dmax, counts }
    }

    /// `L_α` truncated at `dmax`.
    pub fn l_poly(&self, alpha: &BiWeight) -> QPoly {
        let coeffs = (0..=self.dmax).map(|d| self.counts.get(&(alpha.clone(), d)).copied().unwrap_or(0) as i64).collect();
        QPoly::new(coeffs)
    }

    /// Weyl-alternating sum of the truncated `L`, i.e. `K_{λ,μ}` modulo
    /// `q^{dmax+1}`.
    pub fn kostka(&self, data: &OspRootData, lambda: &BiWeight, mu: &BiWeight) -> QPoly {
        let lattice = data.product_type();
        let rho = data.rho();
        let shifted = lambda.add(&rho).flat();
        let target = mu.add(&rho).flat();
        let mut total = QPoly::zero();
        for w in lattice.weyl_group().unwrap().iter() {
            let moved = w.act(&shifted).unwrap();
            let diff: Vec<i64> = moved.iter().zip(&target).map(|(a, b)| a - b).collect();
            total += &self.l_poly(&BiWeight::from_flat(&diff, data.eps_rank())).scale(w.sign());
        }
        total
    }
}

fn walk(
    roots: &[BiWeight],
    start: usize,
    left: usize,
    stack: &mut Vec<usize>,
    counts: &mut BTreeMap<(BiWeight, usize), u64>,
    data: &OspRootData,
) {
    let sum = stack.iter().fold(data.zero(), |acc, &i| acc.add(&roots[i]));
    *counts.entry((sum, stack.len())).or_insert(0) += 1;
    if left == 0 {
        return;
    }
    for i in start..roots.len() {
        stack.push(i);
        walk(roots, i, left - 1, stack, counts, data);
        stack.pop();
    }
}

/// Every weight pair in `[-bound, bound]^rank`, dominant or not.
pub fn all_in_box(data: &OspRootData, bound: i64) -> Vec<BiWeight> {
    let r = data.rank();
    let mut out = Vec::new();
    let mut cur = vec![-bound; r];
    loop {
        out.push(BiWeight::from_flat(&cur, data.eps_rank()));
        let mut i = 0;
        while i < r && cur[i] == bound {
            cur[i] = -bound;
            i += 1;
        }
        if i == r {
            return out;
        }
        cur[i] += 1;
    }
}

/// Closed form for `N = 3`: `q^{b-b'}` when `b - b' ≥ |a - a'|` with equal
/// parity, else `0`, for `λ = (a; b)`, `μ = (a'; b')`.
pub fn closed_form_n3(lambda: &BiWeight, mu: &BiWeight) -> QPoly {
    let da = lambda.eps[0] - mu.eps[0];
    let db = lambda.delta[0] - mu.delta[0];
    if db >= da.abs() && (db - da) % 2 == 0 {
        QPoly::monomial(1, db as usize)
    } else {
        QPoly::zero()
    }
}
