use std::collections::HashMap;

use num_traits::Zero;

use super::{series_mul, CommMap, CommSeries};
use crate::error::{check_dim, Error, Result};
use crate::limits::Limits;
use crate::multi_index::{enumerate_multi_indices, mi_factorial, MultiIndex};
use crate::rational::{from_bigint, Rational};
use crate::trees::sums::FinalSums;

/// Powers `G^β` of an inner map, built lazily from `G^{β - e_j} · G_j`.
struct Powers<'a> {
    g: &'a CommMap,
    trunc: usize,
    cache: HashMap<MultiIndex, CommSeries>,
}

impl<'a> Powers<'a> {
    fn new(g: &'a CommMap, trunc: usize) -> Self {
        Powers {
            g,
            trunc,
            cache: HashMap::new(),
        }
    }

    fn get(&mut self, beta: &MultiIndex) -> Result<CommSeries> {
        if let Some(p) = self.cache.get(beta) {
            return Ok(p.clone());
        }
        let n = self.g.dim();
        let p = match beta.exponents().iter().position(|&b| b > 0) {
            None => CommSeries::constant(n, self.trunc, Rational::from_integer(1.into())),
            Some(j) => {
                let rest = beta.checked_sub(&MultiIndex::unit(n, j)).expect("b_j > 0");
                let head = self.get(&rest)?;
                series_mul(&head, &self.g.component(j).truncate(self.trunc))?
            }
        };
        self.cache.insert(beta.clone(), p.clone());
        Ok(p)
    }
}

/// `F ∘ G` by substituting `G_j` for `X_j` in every monomial of `F`.
pub fn compose_direct(f: &CommMap, g: &CommMap) -> Result<CommMap> {
    check_dim(f.dim(), g.dim())?;
    g.require_zero_constant()?;
    let trunc = f.truncation().min(g.truncation());
    let mut powers = Powers::new(g, trunc);
    let mut components = Vec::with_capacity(f.dim());
    for fi in f.components() {
        let mut out = CommSeries::zero(f.dim(), trunc);
        for (beta, c) in fi.terms() {
            if beta.degree() > trunc {
                break;
            }
            let scale = c / from_bigint(mi_factorial(beta));
            for (alpha, v) in powers.get(beta)?.terms() {
                out.add_to(alpha.clone(), v * &scale);
            }
        }
        components.push(out);
    }
    CommMap::new(components)
}

/// `F^{(1)} ∘ … ∘ F^{(m)}` as energy sums over final trees `𝔽_{i,α}(m)`.
pub fn compose_fdb(chain: &[CommMap], limits: &Limits) -> Result<CommMap> {
    if chain.len() < 2 {
        return Err(Error::invalid(
            "a composition chain needs at least two maps",
        ));
    }
    let n = chain[0].dim();
    for f in chain {
        check_dim(n, f.dim())?;
        f.require_zero_constant()?;
    }
    let trunc = chain
        .iter()
        .map(CommMap::truncation)
        .min()
        .expect("nonempty");
    limits.check_degree(trunc)?;
    let mut sums = FinalSums::new(chain, limits);
    let mut out = CommMap::zero(n, trunc);
    for alpha in enumerate_multi_indices(n, trunc)? {
        if alpha.is_zero() {
            continue;
        }
        for i in 0..n {
            let v = sums.sum(i, &alpha)?;
            if !v.is_zero() {
                out.component_mut(i).set(alpha.clone(), v);
            }
        }
    }
    Ok(out)
}
