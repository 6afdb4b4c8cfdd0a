//! Classical combinatorial identities computed as partition and tree sums.
//!
//! Each quantity has a second route (recurrence, series product or series
//! inversion) so the two can be compared.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::commseries::{invert_identity_linear, CommMap, CommSeries, InversionPath};
use crate::error::{check_dim, Error, Result};
use crate::limits::Limits;
use crate::multi_index::{count_slots, enumerate_multi_indices, factorial, label_set, MultiIndex};
use crate::partitions::for_each_partition;
use crate::rational::{from_bigint, int, Rational};
use crate::trees::proper_trees_with_arity;

/// Polynomial in one variable with exact coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: BTreeMap<usize, Rational>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(degree: usize, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(degree, c);
        p
    }

    /// From dense coefficients, lowest degree first.
    pub fn from_coeffs(coeffs: impl IntoIterator<Item = Rational>) -> Self {
        let mut p = Self::zero();
        for (d, c) in coeffs.into_iter().enumerate() {
            p.add_term(d, c);
        }
        p
    }

    pub fn coeff(&self, degree: usize) -> Rational {
        self.coeffs
            .get(&degree)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    /// Dense coefficients, lowest degree first; empty for the zero polynomial.
    pub fn coefficients(&self) -> Vec<Rational> {
        match self.degree() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|k| self.coeff(k)).collect(),
        }
    }

    pub fn add_term(&mut self, degree: usize, c: Rational) {
        let v = self.coeff(degree) + c;
        if v.is_zero() {
            self.coeffs.remove(&degree);
        } else {
            self.coeffs.insert(degree, v);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in &other.coeffs {
            out.add_term(*d, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (d, v) in &self.coeffs {
            out.add_term(*d, v * c);
        }
        out
    }

    pub fn mul_x(&self) -> Self {
        IntPolynomial {
            coeffs: self
                .coeffs
                .iter()
                .map(|(d, c)| (d + 1, c.clone()))
                .collect(),
        }
    }
}

/// Stirling number of the second kind `B(k, j)`, counted over set partitions.
pub fn bell_stirling(k: usize, j: usize, limits: &Limits) -> Result<u64> {
    if j > k {
        return Err(Error::invalid(format!(
            "block count {j} exceeds ground set size {k}"
        )));
    }
    limits.check_partition_ground(k)?;
    let mut count = 0;
    for_each_partition(k, |_, blocks| count += u64::from(blocks == j));
    Ok(count)
}

/// Number of set partitions of `[k]`.
pub fn bell(k: usize, limits: &Limits) -> Result<u64> {
    (0..=k).map(|j| bell_stirling(k, j, limits)).sum()
}

/// Probabilists' Hermite polynomial as a signed matching sum:
/// `He_k = Σ_π (-1)^{k+#π} ∏_Γ (x 1_{#Γ=1} + 1_{#Γ=2})`.
pub fn hermite_polynomial(k: usize, limits: &Limits) -> Result<IntPolynomial> {
    limits.check_partition_ground(k)?;
    let mut counts: BTreeMap<usize, i64> = BTreeMap::new();
    for_each_partition(k, |rgs, nblocks| {
        let mut sizes = vec![0usize; nblocks];
        for &b in rgs {
            sizes[b] += 1;
        }
        if sizes.iter().any(|&s| s > 2) {
            return;
        }
        let singletons = sizes.iter().filter(|&&s| s == 1).count();
        let sign = if (k + nblocks) % 2 == 0 { 1 } else { -1 };
        *counts.entry(singletons).or_default() += sign;
    });
    let mut p = IntPolynomial::zero();
    for (d, c) in counts {
        p.add_term(d, int(c));
    }
    Ok(p)
}

/// `He_{k+1} = x He_k - k He_{k-1}`.
pub fn hermite_by_recurrence(k: usize) -> IntPolynomial {
    let mut prev = IntPolynomial::zero();
    let mut cur = IntPolynomial::monomial(0, Rational::one());
    for n in 0..k {
        let next = cur.mul_x().add(&prev.scale(&-int(n as i64)));
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Multivariate moment or cumulant data keyed by nonzero multi-index.
pub type MomentTable = BTreeMap<MultiIndex, Rational>;

fn check_table(dim: usize, trunc: usize, table: &MomentTable, limits: &Limits) -> Result<()> {
    if dim == 0 {
        return Err(Error::invalid("dimension must be at least 1"));
    }
    limits.check_partition_ground(trunc)?;
    for alpha in table.keys() {
        check_dim(dim, alpha.dim())?;
        if alpha.is_zero() {
            return Err(Error::invalid(
                "tables are indexed by nonzero multi-indices",
            ));
        }
        if alpha.degree() > trunc {
            return Err(Error::invalid(format!(
                "entry {alpha} has degree above the truncation {trunc}"
            )));
        }
    }
    Ok(())
}

/// `Σ_{π ∈ 𝒫_{[α]}} weight(#π) ∏_Γ value(#Γ)` for every `1 ≤ |α| ≤ trunc`.
fn partition_transform(
    dim: usize,
    trunc: usize,
    value: impl Fn(&MultiIndex) -> Rational,
    weight: impl Fn(usize) -> Rational,
) -> Result<MomentTable> {
    let mut out = MomentTable::new();
    for alpha in enumerate_multi_indices(dim, trunc)? {
        if alpha.is_zero() {
            continue;
        }
        let slots = label_set(&alpha);
        let mut acc = Rational::zero();
        for_each_partition(slots.len(), |rgs, nblocks| {
            let mut blocks = vec![Vec::new(); nblocks];
            for (s, &b) in slots.iter().zip(rgs) {
                blocks[b].push(*s);
            }
            let mut term = weight(nblocks);
            for b in &blocks {
                if term.is_zero() {
                    return;
                }
                term *= value(&count_slots(dim, b));
            }
            acc += term;
        });
        if !acc.is_zero() {
            out.insert(alpha, acc);
        }
    }
    Ok(out)
}

/// `m_α = Σ_π ∏_Γ κ_{#Γ}`.
pub fn cumulants_to_moments(
    dim: usize,
    kappa: &MomentTable,
    trunc: usize,
    limits: &Limits,
) -> Result<MomentTable> {
    check_table(dim, trunc, kappa, limits)?;
    let get = |a: &MultiIndex| kappa.get(a).cloned().unwrap_or_else(Rational::zero);
    partition_transform(dim, trunc, get, |_| Rational::one())
}

/// `κ_α = Σ_π (-1)^{#π-1} (#π-1)! ∏_Γ m_{#Γ}`.
pub fn moments_to_cumulants(
    dim: usize,
    moments: &MomentTable,
    trunc: usize,
    limits: &Limits,
) -> Result<MomentTable> {
    check_table(dim, trunc, moments, limits)?;
    let get = |a: &MultiIndex| moments.get(a).cloned().unwrap_or_else(Rational::zero);
    partition_transform(dim, trunc, get, |b| {
        let f = from_bigint(factorial(b as u32 - 1));
        if b % 2 == 1 {
            f
        } else {
            -f
        }
    })
}

/// `1/f` for `f_0 = 1`: `h_α = Σ_π (-1)^{#π} #π! ∏_Γ f_{#Γ}`.
pub fn series_reciprocal(f: &CommSeries, limits: &Limits) -> Result<CommSeries> {
    let (dim, trunc) = (f.dim(), f.truncation());
    if f.coeff(&MultiIndex::zero(dim)) != Rational::one() {
        return Err(Error::invalid("the constant term must be exactly 1"));
    }
    limits.check_partition_ground(trunc)?;
    let table = partition_transform(
        dim,
        trunc,
        |a| f.coeff(a),
        |b| {
            let v = from_bigint(factorial(b as u32));
            if b % 2 == 0 {
                v
            } else {
                -v
            }
        },
    )?;
    CommSeries::from_coeffs(
        dim,
        trunc,
        std::iter::once((MultiIndex::zero(dim), Rational::one())).chain(table),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeFilter {
    All,
    EvenOutdegreesOnly,
}

impl TreeFilter {
    fn allows(self, outdegree: usize) -> bool {
        match self {
            TreeFilter::All => true,
            TreeFilter::EvenOutdegreesOnly => outdegree % 2 == 0,
        }
    }
}

/// `#𝕊_k` (or its even-outdegree subset) by two routes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProperTreeCount {
    /// Coefficient of `X^k/k!` in the inverse of `X - Σ_{allowed j} X^j/j!`.
    pub by_series: BigInt,
    /// Number of enumerated trees.
    pub by_enumeration: BigInt,
}

impl ProperTreeCount {
    pub fn agree(&self) -> bool {
        self.by_series == self.by_enumeration
    }
}

pub fn count_proper_trees(
    k: usize,
    filter: TreeFilter,
    limits: &Limits,
) -> Result<ProperTreeCount> {
    if k == 0 {
        return Err(Error::invalid("trees need at least one leaf"));
    }
    limits.check_leaves(k)?;
    let mut f = CommSeries::from_coeffs(1, k, [(MultiIndex::unit(1, 0), Rational::one())])?;
    for j in (2..=k).filter(|&j| filter.allows(j)) {
        f = f.add(&CommSeries::from_coeffs(
            1,
            k,
            [(MultiIndex::new(vec![j as u32]), -Rational::one())],
        )?)?;
    }
    let g = invert_identity_linear(&CommMap::new(vec![f])?, InversionPath::Recursive, limits)?;
    let by_series = g.coeff(0, &MultiIndex::new(vec![k as u32]));
    debug_assert!(by_series.is_integer() && !by_series.is_negative());
    let arity = match filter {
        TreeFilter::All => (|_| true) as fn(usize) -> bool,
        TreeFilter::EvenOutdegreesOnly => |d| d % 2 == 0,
    };
    let trees = proper_trees_with_arity(1, 0, &MultiIndex::new(vec![k as u32]), arity, limits)?;
    Ok(ProperTreeCount {
        by_series: by_series.to_integer(),
        by_enumeration: BigInt::from(trees.len()),
    })
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::commseries::series_mul;
    use crate::rational::ratio;

    fn lim() -> Limits {
        Limits::default()
    }

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_coeffs(c.iter().map(|&v| int(v)))
    }

    #[test]
    fn stirling_and_bell() {
        assert_eq!(bell_stirling(3, 2, &lim()).unwrap(), 3);
        for k in 0..=6 {
            assert_eq!(bell_stirling(k, k, &lim()).unwrap(), 1);
            assert_eq!(bell_stirling(k, 0, &lim()).unwrap(), u64::from(k == 0));
        }
        assert_eq!(bell(5, &lim()).unwrap(), 52);
        // B(n+1) = Σ C(n, j) B(j)
        let b: Vec<u64> = (0..=8).map(|k| bell(k, &lim()).unwrap()).collect();
        for n in 0..8 {
            let rhs: u64 = (0..=n)
                .map(|j| {
                    u64::try_from(crate::multi_index::binomial(n as u32, j as u32)).unwrap() * b[j]
                })
                .sum();
            assert_eq!(b[n + 1], rhs);
        }
        assert!(bell_stirling(2, 3, &lim()).is_err());
        assert!(bell(13, &lim()).unwrap_err().is_resource_limit());
    }

    #[test]
    fn hermite_examples() {
        assert_eq!(hermite_polynomial(0, &lim()).unwrap(), poly(&[1]));
        assert_eq!(hermite_polynomial(1, &lim()).unwrap(), poly(&[0, 1]));
        assert_eq!(hermite_polynomial(2, &lim()).unwrap(), poly(&[-1, 0, 1]));
        assert_eq!(hermite_polynomial(3, &lim()).unwrap(), poly(&[0, -3, 0, 1]));
        assert_eq!(
            hermite_polynomial(4, &lim()).unwrap(),
            poly(&[3, 0, -6, 0, 1])
        );
        for k in 0..=10 {
            assert_eq!(
                hermite_polynomial(k, &lim()).unwrap(),
                hermite_by_recurrence(k)
            );
        }
    }

    #[test]
    fn gaussian_moments() {
        let kappa: MomentTable = [(MultiIndex::new(vec![2]), int(1))].into_iter().collect();
        let m = cumulants_to_moments(1, &kappa, 6, &lim()).unwrap();
        assert_eq!(m.get(&MultiIndex::new(vec![2])), Some(&int(1)));
        assert_eq!(m.get(&MultiIndex::new(vec![4])), Some(&int(3)));
        assert_eq!(m.get(&MultiIndex::new(vec![6])), Some(&int(15)));
        assert!(m.get(&MultiIndex::new(vec![3])).is_none());
    }

    #[test]
    fn low_order_cumulants() {
        let m: MomentTable = [
            (MultiIndex::new(vec![1]), ratio(3, 2)),
            (MultiIndex::new(vec![2]), int(5)),
        ]
        .into_iter()
        .collect();
        let k = moments_to_cumulants(1, &m, 2, &lim()).unwrap();
        assert_eq!(k[&MultiIndex::new(vec![1])], ratio(3, 2));
        assert_eq!(k[&MultiIndex::new(vec![2])], int(5) - ratio(9, 4));
    }

    #[test]
    fn moment_cumulant_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..5 {
            let table: MomentTable = enumerate_multi_indices(2, 4)
                .unwrap()
                .into_iter()
                .filter(|a| !a.is_zero())
                .map(|a| (a, ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4))))
                .filter(|(_, v)| !v.is_zero())
                .collect();
            let m = cumulants_to_moments(2, &table, 4, &lim()).unwrap();
            assert_eq!(moments_to_cumulants(2, &m, 4, &lim()).unwrap(), table);
            let k = moments_to_cumulants(2, &table, 4, &lim()).unwrap();
            assert_eq!(cumulants_to_moments(2, &k, 4, &lim()).unwrap(), table);
        }
        let bad: MomentTable = [(MultiIndex::zero(1), int(1))].into_iter().collect();
        assert!(cumulants_to_moments(1, &bad, 2, &lim()).is_err());
    }

    #[test]
    fn reciprocal_examples() {
        let one = CommSeries::constant(2, 4, int(1));
        assert_eq!(series_reciprocal(&one, &lim()).unwrap(), one);

        let geometric = CommSeries::from_coeffs(
            1,
            5,
            (0..=5u32).map(|k| (MultiIndex::new(vec![k]), from_bigint(factorial(k)))),
        )
        .unwrap();
        let h = series_reciprocal(&geometric, &lim()).unwrap();
        let want = CommSeries::from_coeffs(
            1,
            5,
            [
                (MultiIndex::new(vec![0]), int(1)),
                (MultiIndex::new(vec![1]), int(-1)),
            ],
        )
        .unwrap();
        assert_eq!(h, want);

        let exp =
            CommSeries::from_coeffs(1, 5, (0..=5u32).map(|k| (MultiIndex::new(vec![k]), int(1))))
                .unwrap();
        let h = series_reciprocal(&exp, &lim()).unwrap();
        for k in 0..=5u32 {
            assert_eq!(
                h.coeff(&MultiIndex::new(vec![k])),
                int(if k % 2 == 0 { 1 } else { -1 })
            );
        }
        assert_eq!(
            series_mul(&exp, &h).unwrap(),
            CommSeries::constant(1, 5, int(1))
        );
        assert!(series_reciprocal(&CommSeries::constant(1, 3, int(2)), &lim()).is_err());
    }

    #[test]
    fn reciprocal_multiplies_to_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for dim in 1..=2 {
            let f = CommSeries::from_coeffs(
                dim,
                5,
                enumerate_multi_indices(dim, 5)
                    .unwrap()
                    .into_iter()
                    .map(|a| {
                        let v = if a.is_zero() {
                            int(1)
                        } else {
                            ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3))
                        };
                        (a, v)
                    }),
            )
            .unwrap();
            let h = series_reciprocal(&f, &lim()).unwrap();
            assert_eq!(
                series_mul(&f, &h).unwrap(),
                CommSeries::constant(dim, 5, int(1))
            );
        }
    }

    #[test]
    fn proper_tree_counts() {
        let expect = [1, 1, 4, 26, 236];
        for k in 1..=5 {
            let c = count_proper_trees(k, TreeFilter::All, &lim()).unwrap();
            assert!(c.agree());
            assert_eq!(c.by_series, BigInt::from(expect[k - 1]));
        }
        for k in 1..=6 {
            assert!(
                count_proper_trees(k, TreeFilter::EvenOutdegreesOnly, &lim())
                    .unwrap()
                    .agree()
            );
        }
        let c = count_proper_trees(2, TreeFilter::EvenOutdegreesOnly, &lim()).unwrap();
        assert_eq!(c.by_series, BigInt::from(1));
        let c = count_proper_trees(4, TreeFilter::EvenOutdegreesOnly, &lim()).unwrap();
        assert_eq!(c.by_series, BigInt::from(1 + 4 * 3 + 3));
        assert!(count_proper_trees(0, TreeFilter::All, &lim()).is_err());
    }
}
