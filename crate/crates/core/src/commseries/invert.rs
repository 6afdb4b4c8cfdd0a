use std::collections::HashMap;

use num_traits::{One, Zero};

use super::{compose_direct, jacobian_linear_term, CommMap};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::matrix::Matrix;
use crate::multi_index::{enumerate_multi_indices, mi_binomial, mi_factorial, MultiIndex};
use crate::rational::{from_bigint, Rational};
use crate::trees::sums::AlternatingSums;
use crate::trees::{proper_trees, tree_energy, OutdegreeWeights};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InversionPath {
    /// Explicit enumeration of proper trees.
    TreeSum,
    /// Degree-by-degree recursion with memoized power coefficients.
    Recursive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneralPath {
    /// Energy sums over alternating trees.
    Alternating,
    /// Conjugate by the inverse linear term and invert the identity-linear map.
    Reduction,
}

/// `H_{i,α} = -F_{i,α}` for `|α| ≥ 2`, zero below.
struct NegatedNonlinear<'a>(&'a CommMap);

impl OutdegreeWeights for NegatedNonlinear<'_> {
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn weight(&self, ty: usize, mu: &MultiIndex) -> Option<Rational> {
        match mu.degree() {
            d if d > self.0.truncation() => None,
            0 | 1 => Some(Rational::zero()),
            _ => Some(-self.0.coeff(ty, mu)),
        }
    }
}

/// Inverse of a map with zero constant term and identity linear term.
pub fn invert_identity_linear(
    f: &CommMap,
    path: InversionPath,
    limits: &Limits,
) -> Result<CommMap> {
    f.require_zero_constant()?;
    if !jacobian_linear_term(f).is_identity() {
        return Err(Error::NonIdentityLinearTerm);
    }
    match path {
        InversionPath::TreeSum => tree_sum_inverse(f, limits),
        InversionPath::Recursive => recursive_inverse(f, limits),
    }
}

fn tree_sum_inverse(f: &CommMap, limits: &Limits) -> Result<CommMap> {
    let (n, trunc) = (f.dim(), f.truncation());
    limits.check_degree(trunc)?;
    let h = NegatedNonlinear(f);
    let mut g = CommMap::identity(n, trunc);
    for alpha in enumerate_multi_indices(n, trunc)? {
        if alpha.degree() < 2 {
            continue;
        }
        for i in 0..n {
            let mut acc = Rational::zero();
            for t in proper_trees(n, i, &alpha, limits)? {
                acc += tree_energy(&t, &h)?;
            }
            g.component_mut(i).set(alpha.clone(), acc);
        }
    }
    Ok(g)
}

/// Coefficients `[G^β]_α` of powers of a partially known map whose linear
/// term is fixed and whose constant term is zero.
struct PowerCoefficients {
    dim: usize,
    g: Vec<HashMap<MultiIndex, Rational>>,
    memo: HashMap<(MultiIndex, MultiIndex), Rational>,
    limits: Limits,
}

impl PowerCoefficients {
    fn get(&mut self, beta: &MultiIndex, alpha: &MultiIndex) -> Result<Rational> {
        if alpha.degree() < beta.degree() {
            return Ok(Rational::zero());
        }
        let Some(j) = beta.exponents().iter().position(|&b| b > 0) else {
            return Ok(if alpha.is_zero() {
                Rational::one()
            } else {
                Rational::zero()
            });
        };
        if beta.degree() == 1 {
            return Ok(self.g[j].get(alpha).cloned().unwrap_or_else(Rational::zero));
        }
        let key = (beta.clone(), alpha.clone());
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let rest = beta
            .checked_sub(&MultiIndex::unit(self.dim, j))
            .expect("b_j > 0");
        let support: Vec<(MultiIndex, Rational)> = self.g[j]
            .iter()
            .filter(|(d, _)| d.divides(alpha))
            .map(|(d, c)| (d.clone(), c.clone()))
            .collect();
        let mut acc = Rational::zero();
        for (delta, c) in support {
            let gamma = alpha.checked_sub(&delta).expect("δ ≤ α");
            if gamma.degree() < rest.degree() {
                continue;
            }
            let p = self.get(&rest, &gamma)?;
            if !p.is_zero() {
                acc += from_bigint(mi_binomial(alpha, &delta)) * c * p;
            }
        }
        self.limits.check_cells(self.memo.len() + 1)?;
        self.memo.insert(key, acc.clone());
        Ok(acc)
    }
}

/// Solves `G_{i,α} = Σ_{|β| ≥ 2} H_{i,β} [G^β / β!]_α` degree by degree.
fn recursive_inverse(f: &CommMap, limits: &Limits) -> Result<CommMap> {
    let (n, trunc) = (f.dim(), f.truncation());
    let h: Vec<Vec<(MultiIndex, Rational)>> = f
        .nonlinear_part()
        .components()
        .iter()
        .map(|c| {
            c.terms()
                .map(|(b, v)| (b.clone(), -v / from_bigint(mi_factorial(b))))
                .collect()
        })
        .collect();
    let mut powers = PowerCoefficients {
        dim: n,
        g: (0..n)
            .map(|i| HashMap::from([(MultiIndex::unit(n, i), Rational::one())]))
            .collect(),
        memo: HashMap::new(),
        limits: *limits,
    };
    let mut g = CommMap::identity(n, trunc);
    for alpha in enumerate_multi_indices(n, trunc)? {
        if alpha.degree() < 2 {
            continue;
        }
        let mut row = Vec::with_capacity(n);
        for hi in &h {
            let mut acc = Rational::zero();
            for (beta, c) in hi.iter().take_while(|(b, _)| b.degree() <= alpha.degree()) {
                let p = powers.get(beta, &alpha)?;
                if !p.is_zero() {
                    acc += c * p;
                }
            }
            row.push(acc);
        }
        for (i, v) in row.into_iter().enumerate() {
            if !v.is_zero() {
                powers.g[i].insert(alpha.clone(), v.clone());
                g.component_mut(i).set(alpha.clone(), v);
            }
        }
    }
    Ok(g)
}

/// Inverse of a map with zero constant term and invertible linear term.
pub fn invert_general(f: &CommMap, path: GeneralPath, limits: &Limits) -> Result<CommMap> {
    f.require_zero_constant()?;
    let q = jacobian_linear_term(f)
        .inverse()
        .ok_or(Error::NotInvertible)?;
    match path {
        GeneralPath::Alternating => alternating_inverse(f, &q, limits),
        GeneralPath::Reduction => {
            let ql = CommMap::linear(&q, f.truncation());
            let g_tilde = recursive_inverse(&compose_direct(f, &ql)?, limits)?;
            compose_direct(&ql, &g_tilde)
        }
    }
}

fn alternating_inverse(f: &CommMap, q: &Matrix, limits: &Limits) -> Result<CommMap> {
    let (n, trunc) = (f.dim(), f.truncation());
    limits.check_degree(trunc)?;
    let h = NegatedNonlinear(f);
    let mut sums = AlternatingSums::new(&h, q, limits);
    let mut g = CommMap::zero(n, trunc);
    for alpha in enumerate_multi_indices(n, trunc)? {
        if alpha.is_zero() {
            continue;
        }
        for i in 0..n {
            let v = sums.sum(i, &alpha)?;
            g.component_mut(i).set(alpha.clone(), v);
        }
    }
    Ok(g)
}

/// `Φ(H)`: the nonlinear coefficients `-G` of the inverse of `X - H`.
pub fn phi_involution(h: &CommMap, path: InversionPath, limits: &Limits) -> Result<CommMap> {
    for (i, c) in h.components().iter().enumerate() {
        if let Some((a, _)) = c.terms().find(|(a, _)| a.degree() < 2) {
            return Err(Error::invalid(format!(
                "component {} has a term {a} of degree below two",
                i + 1
            )));
        }
    }
    let f = CommMap::identity(h.dim(), h.truncation()).add(&h.scale(&-Rational::one()))?;
    let g = invert_identity_linear(&f, path, limits)?;
    Ok(g.nonlinear_part().scale(&-Rational::one()))
}
