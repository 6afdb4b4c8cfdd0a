use std::collections::HashMap;

use num_traits::{One, Zero};

use super::{free_mul, FreeMap, FreeSeries};
use crate::error::{check_dim, Error, Result};
use crate::limits::Limits;
use crate::rational::Rational;
use crate::trees::sums::PlanarFinalSums;
use crate::word::Word;

/// `F ∘ G` by substituting `G_j` for each letter `X_j` of every word of `F`.
pub fn free_compose_direct(f: &FreeMap, g: &FreeMap) -> Result<FreeMap> {
    check_dim(f.dim(), g.dim())?;
    g.require_zero_constant()?;
    let (n, trunc) = (f.dim(), f.truncation().min(g.truncation()));
    let inner: Vec<FreeSeries> = g.components().iter().map(|c| c.truncate(trunc)).collect();
    let mut products: HashMap<Word, FreeSeries> = HashMap::new();
    products.insert(
        Word::empty(),
        FreeSeries::constant(n, trunc, Rational::one()),
    );
    let mut components = Vec::with_capacity(n);
    for fi in f.components() {
        let mut out = FreeSeries::zero(n, trunc);
        for (w, c) in fi.terms() {
            if w.len() > trunc {
                break;
            }
            for (v, x) in product(&mut products, &inner, w)?.terms() {
                out.add_to(v.clone(), x * c);
            }
        }
        components.push(out);
    }
    FreeMap::new(components)
}

/// `G_{w_1} ⋯ G_{w_k}`, cached by prefix.
fn product(
    cache: &mut HashMap<Word, FreeSeries>,
    g: &[FreeSeries],
    w: &Word,
) -> Result<FreeSeries> {
    if let Some(p) = cache.get(w) {
        return Ok(p.clone());
    }
    let k = w.len();
    let head = product(cache, g, &w.slice(0, k - 1))?;
    let p = free_mul(&head, &g[w.letters()[k - 1]])?;
    cache.insert(w.clone(), p.clone());
    Ok(p)
}

/// `F^{(1)} ∘ … ∘ F^{(m)}` as energy sums over planar final trees.
pub fn free_compose_fdb(chain: &[FreeMap], limits: &Limits) -> Result<FreeMap> {
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
        .map(FreeMap::truncation)
        .min()
        .expect("nonempty");
    limits.check_leaves(trunc)?;
    let mut sums = PlanarFinalSums::new(chain, limits);
    let mut out = FreeMap::zero(n, trunc);
    for w in Word::all_up_to(n, trunc) {
        if w.is_empty() {
            continue;
        }
        for i in 0..n {
            let v = sums.sum(i, &w)?;
            if !v.is_zero() {
                out.component_mut(i).set(w.clone(), v);
            }
        }
    }
    Ok(out)
}
