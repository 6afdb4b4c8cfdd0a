use std::collections::HashMap;

use num_traits::{One, Zero};

use super::{free_compose_direct, free_jacobian_at_zero, FreeMap};
use crate::commseries::{GeneralPath, InversionPath};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::trees::sums::PlanarAlternatingSums;
use crate::trees::{planar_energy, planar_proper_trees, WordWeights};
use crate::word::Word;

/// `H_{i,κ} = -F_{i,κ}` for `|κ| ≥ 2`, zero below.
struct NegatedNonlinear<'a>(&'a FreeMap);

impl WordWeights for NegatedNonlinear<'_> {
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn weight(&self, ty: usize, mu: &Word) -> Option<Rational> {
        match mu.len() {
            l if l > self.0.truncation() => None,
            0 | 1 => Some(Rational::zero()),
            _ => Some(-self.0.coeff(ty, mu)),
        }
    }
}

/// Inverse of a free map with zero constant term and identity linear term.
pub fn free_invert(f: &FreeMap, path: InversionPath, limits: &Limits) -> Result<FreeMap> {
    f.require_zero_constant()?;
    if !free_jacobian_at_zero(f).is_identity() {
        return Err(Error::NonIdentityLinearTerm);
    }
    match path {
        InversionPath::TreeSum => tree_sum_inverse(f, limits),
        InversionPath::Recursive => recursive_inverse(f, limits),
    }
}

fn tree_sum_inverse(f: &FreeMap, limits: &Limits) -> Result<FreeMap> {
    let (n, trunc) = (f.dim(), f.truncation());
    limits.check_leaves(trunc)?;
    let h = NegatedNonlinear(f);
    let mut g = FreeMap::identity(n, trunc);
    for w in Word::all_up_to(n, trunc) {
        if w.len() < 2 {
            continue;
        }
        for i in 0..n {
            let mut acc = Rational::zero();
            for t in planar_proper_trees(n, i, &w, limits)? {
                acc += planar_energy(&t, &h)?;
            }
            g.component_mut(i).set(w.clone(), acc);
        }
    }
    Ok(g)
}

/// Coefficients `[G_{w_1} ⋯ G_{w_b}]_κ` of a partially known map.
struct ProductCoefficients {
    g: Vec<HashMap<Word, Rational>>,
    memo: HashMap<(Word, Word), Rational>,
    limits: Limits,
}

impl ProductCoefficients {
    fn get(&mut self, w: &Word, kappa: &Word) -> Result<Rational> {
        if kappa.len() < w.len() {
            return Ok(Rational::zero());
        }
        match w.len() {
            0 => {
                return Ok(if kappa.is_empty() {
                    Rational::one()
                } else {
                    Rational::zero()
                })
            }
            1 => {
                return Ok(self.g[w.letters()[0]]
                    .get(kappa)
                    .cloned()
                    .unwrap_or_else(Rational::zero))
            }
            _ => {}
        }
        let key = (w.clone(), kappa.clone());
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let b = w.len();
        let head = w.slice(0, b - 1);
        let last = w.letters()[b - 1];
        let mut acc = Rational::zero();
        for cut in (b - 1)..kappa.len() {
            let Some(c) = self.g[last].get(&kappa.slice(cut, kappa.len())).cloned() else {
                continue;
            };
            let p = self.get(&head, &kappa.slice(0, cut))?;
            if !p.is_zero() {
                acc += c * p;
            }
        }
        self.limits.check_cells(self.memo.len() + 1)?;
        self.memo.insert(key, acc.clone());
        Ok(acc)
    }
}

/// Solves `G_{i,κ} = Σ_{|w| ≥ 2} H_{i,w} [G_{w_1} ⋯ G_{w_b}]_κ` by length.
fn recursive_inverse(f: &FreeMap, limits: &Limits) -> Result<FreeMap> {
    let (n, trunc) = (f.dim(), f.truncation());
    let h: Vec<Vec<(Word, Rational)>> = f
        .components()
        .iter()
        .map(|c| {
            c.terms()
                .filter(|(w, _)| w.len() >= 2)
                .map(|(w, v)| (w.clone(), -v))
                .collect()
        })
        .collect();
    let mut products = ProductCoefficients {
        g: (0..n)
            .map(|i| HashMap::from([(Word::letter(i), Rational::one())]))
            .collect(),
        memo: HashMap::new(),
        limits: *limits,
    };
    let mut g = FreeMap::identity(n, trunc);
    for kappa in Word::all_up_to(n, trunc) {
        if kappa.len() < 2 {
            continue;
        }
        let mut row = Vec::with_capacity(n);
        for hi in &h {
            let mut acc = Rational::zero();
            for (w, c) in hi.iter().take_while(|(w, _)| w.len() <= kappa.len()) {
                let p = products.get(w, &kappa)?;
                if !p.is_zero() {
                    acc += c * p;
                }
            }
            row.push(acc);
        }
        for (i, v) in row.into_iter().enumerate() {
            if !v.is_zero() {
                products.g[i].insert(kappa.clone(), v.clone());
                g.component_mut(i).set(kappa.clone(), v);
            }
        }
    }
    Ok(g)
}

/// Inverse of a free map with zero constant term and invertible linear term.
pub fn free_invert_general(f: &FreeMap, path: GeneralPath, limits: &Limits) -> Result<FreeMap> {
    f.require_zero_constant()?;
    let q = free_jacobian_at_zero(f)
        .inverse()
        .ok_or(Error::NotInvertible)?;
    match path {
        GeneralPath::Alternating => alternating_inverse(f, &q, limits),
        GeneralPath::Reduction => {
            let ql = FreeMap::linear(&q, f.truncation());
            let g_tilde = recursive_inverse(&free_compose_direct(f, &ql)?, limits)?;
            free_compose_direct(&ql, &g_tilde)
        }
    }
}

fn alternating_inverse(f: &FreeMap, q: &Matrix, limits: &Limits) -> Result<FreeMap> {
    let (n, trunc) = (f.dim(), f.truncation());
    limits.check_leaves(trunc)?;
    let h = NegatedNonlinear(f);
    let mut sums = PlanarAlternatingSums::new(&h, q, limits);
    let mut g = FreeMap::zero(n, trunc);
    for w in Word::all_up_to(n, trunc) {
        if w.is_empty() {
            continue;
        }
        for i in 0..n {
            let v = sums.sum(i, &w)?;
            g.component_mut(i).set(w.clone(), v);
        }
    }
    Ok(g)
}
