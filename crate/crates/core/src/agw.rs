//! The twelve-dimensional relation `L = 8 A(T) - 32 Â`, checked as an identity of
//! polynomials in the Pontryagin classes.
//!
//! Genus products are expanded over formal roots `x_1..x_N` and stored in the
//! monomial symmetric basis. Degrees are cohomological: a root has degree 2,
//! `p_k` has degree `4k`.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{rat_int, solve_rational_system, Rational};
use crate::invariants::{r, Report};
use crate::localization::{partitions, zero_one_matrices};
use crate::series::{genus_series, GenusKind, UniSeries};

pub const ROOTS: usize = 6;
pub const TOP_DEGREE: usize = 12;

/// Symmetric polynomial in `N` roots: coefficient of each monomial symmetric
/// function `m_lambda`, keyed by the exponent partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootPoly {
    nroots: usize,
    degree: usize,
    coeffs: BTreeMap<Vec<u32>, Rational>,
}

fn exponent_partitions(max_total: usize, max_len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for w in 1..=max_total {
        out.extend(partitions(w).into_iter().map(|p| p.parts().to_vec()).filter(|p| p.len() <= max_len));
    }
    out
}

impl RootPoly {
    pub fn nroots(&self) -> usize {
        self.nroots
    }

    /// Cohomological truncation degree.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff(&self, lambda: &[u32]) -> Rational {
        self.coeffs.get(lambda).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.coeffs.iter()
    }

    /// Coefficient-wise construction: `f(alpha)` is the coefficient of the
    /// monomial with exponent vector `alpha` (padded to `N` entries).
    fn from_monomial_fn(nroots: usize, degree: usize, f: impl Fn(&[u32]) -> Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        for lambda in exponent_partitions(degree / 2, nroots) {
            let mut alpha = lambda.clone();
            alpha.resize(nroots, 0);
            let c = f(&alpha);
            if !c.is_zero() {
                coeffs.insert(lambda, c);
            }
        }
        Self { nroots, degree, coeffs }
    }

    /// Terms of cohomological degree exactly `d`.
    pub fn homogeneous(&self, d: usize) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(l, _)| 2 * l.iter().sum::<u32>() as usize == d)
            .map(|(l, c)| (l.clone(), c.clone()))
            .collect();
        Self { nroots: self.nroots, degree: self.degree, coeffs }
    }

    /// True when no monomial has an odd exponent.
    pub fn is_even(&self) -> bool {
        self.coeffs.keys().all(|l| l.iter().all(|e| e % 2 == 0))
    }
}

/// `prod_{i=1}^N g(x_i)` truncated at cohomological degree `degree`.
pub fn expand_genus_product(g: &UniSeries, nroots: usize, degree: usize) -> Result<RootPoly> {
    let top = degree / 2;
    if (1..=top).step_by(2).any(|k| !g.coeff(k).is_zero()) {
        return Err(Error::Parity("genus series has odd-degree terms".into()));
    }
    Ok(RootPoly::from_monomial_fn(nroots, degree, |alpha| alpha.iter().map(|&e| g.coeff(e as usize)).product()))
}

/// `prod_j Â(x_j) * sum_j (e^{x_j} + e^{-x_j})`.
pub fn twisted_ahat(nroots: usize, degree: usize) -> RootPoly {
    let top = degree / 2;
    let ahat = genus_series(GenusKind::AHat, top);
    let twisted = ahat.mul(&UniSeries::two_cosh(top));
    RootPoly::from_monomial_fn(nroots, degree, |alpha| {
        (0..alpha.len())
            .map(|j| {
                alpha
                    .iter()
                    .enumerate()
                    .map(|(i, &e)| if i == j { twisted.coeff(e as usize) } else { ahat.coeff(e as usize) })
                    .product::<Rational>()
            })
            .sum()
    })
}

/// Polynomial in `p_1, p_2, ...`, keyed by the multiset of indices.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PontryaginPoly {
    coeffs: BTreeMap<Vec<u32>, Rational>,
}

impl PontryaginPoly {
    pub fn from_terms(terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (mut k, c) in terms {
            k.sort_unstable_by(|a, b| b.cmp(a));
            if !c.is_zero() {
                *coeffs.entry(k).or_insert_with(Rational::zero) += c;
            }
        }
        coeffs.retain(|_, c: &mut Rational| !c.is_zero());
        Self { coeffs }
    }

    /// Coefficient of `prod p_{k_j}`; index order does not matter.
    pub fn coeff(&self, monomial: &[u32]) -> Rational {
        let mut k = monomial.to_vec();
        k.sort_unstable_by(|a, b| b.cmp(a));
        self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.coeffs.iter()
    }

    pub fn linear_combination(&self, a: &Rational, other: &Self, b: &Rational) -> Self {
        Self::from_terms(
            self.coeffs
                .iter()
                .map(|(k, c)| (k.clone(), c * a))
                .chain(other.coeffs.iter().map(|(k, c)| (k.clone(), c * b))),
        )
    }

    /// Value at `p_k = values[k - 1]`.
    pub fn evaluate(&self, values: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .map(|(k, c)| k.iter().map(|&i| values[i as usize - 1].clone()).product::<Rational>() * c)
            .sum()
    }

    /// Back to the root basis, with `p_k = e_k(x_1^2, ..., x_N^2)`.
    pub fn to_roots(&self, nroots: usize, degree: usize) -> RootPoly {
        let mut coeffs: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (k, c) in &self.coeffs {
            if k.is_empty() {
                *coeffs.entry(Vec::new()).or_insert_with(Rational::zero) += c;
                continue;
            }
            let w: u32 = k.iter().sum();
            for mu in partitions(w as usize) {
                if mu.len() > nroots {
                    continue;
                }
                let n = zero_one_matrices(k, mu.parts());
                if n == 0 {
                    continue;
                }
                let lambda: Vec<u32> = mu.parts().iter().map(|e| 2 * e).collect();
                *coeffs.entry(lambda).or_insert_with(Rational::zero) += c * rat_int(n);
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        RootPoly { nroots, degree, coeffs }
    }
}

impl fmt::Display for PontryaginPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (n, (k, c)) in self.coeffs.iter().enumerate() {
            let mono = k
                .iter()
                .rev()
                .chunk_by(|&&i| i)
                .into_iter()
                .map(|(i, g)| match g.count() {
                    1 => format!("p{i}"),
                    e => format!("p{i}^{e}"),
                })
                .join("*");
            let sign = if c.is_negative() { "-" } else { "+" };
            let lead = match (n, c.is_negative()) {
                (0, false) => String::new(),
                (0, true) => "-".to_owned(),
                _ => format!(" {sign} "),
            };
            let abs = c.abs();
            if mono.is_empty() {
                write!(f, "{lead}{abs}")?;
            } else if abs.is_one() {
                write!(f, "{lead}{mono}")?;
            } else {
                write!(f, "{lead}{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

/// Rewrites the degree-`degree` part of an even symmetric polynomial in the
/// Pontryagin basis by solving the `e -> m` transition system exactly.
pub fn to_pontryagin(rp: &RootPoly, degree: usize) -> Result<PontryaginPoly> {
    let part = rp.homogeneous(degree);
    if !part.is_even() {
        return Err(Error::Parity("polynomial has odd exponents; it is not a polynomial in Pontryagin classes".into()));
    }
    if part.coeffs.is_empty() {
        return Ok(PontryaginPoly::default());
    }
    if !degree.is_multiple_of(4) {
        return Err(Error::Parity(format!("degree {degree} is not a multiple of 4")));
    }
    let w = degree / 4;
    if w == 0 {
        return Ok(PontryaginPoly::from_terms([(Vec::new(), part.coeff(&[]))]));
    }
    let n = rp.nroots;
    // unknowns: p-monomials with indices <= N; equations: m-basis in squared roots with <= N parts
    let unknowns: Vec<Vec<u32>> =
        partitions(w).into_iter().map(|p| p.parts().to_vec()).filter(|k| k[0] as usize <= n).collect();
    let equations: Vec<Vec<u32>> =
        partitions(w).into_iter().map(|p| p.parts().to_vec()).filter(|m| m.len() <= n).collect();
    let a: Vec<Vec<Rational>> =
        equations.iter().map(|mu| unknowns.iter().map(|k| rat_int(zero_one_matrices(k, mu))).collect()).collect();
    let b: Vec<Rational> =
        equations.iter().map(|mu| part.coeff(&mu.iter().map(|e| 2 * e).collect::<Vec<_>>())).collect();
    let sol = solve_rational_system(&a, &b)?;
    Ok(PontryaginPoly::from_terms(unknowns.into_iter().zip(sol)))
}

/// Degree-`degree` parts of the L-product, the twisted Â-product and the
/// Â-product in the Pontryagin basis.
pub fn genus_parts(degree: usize) -> Result<(PontryaginPoly, PontryaginPoly, PontryaginPoly)> {
    let top = TOP_DEGREE.max(degree);
    let l = expand_genus_product(&genus_series(GenusKind::L, top / 2), ROOTS, top)?;
    let t = twisted_ahat(ROOTS, top);
    let a = expand_genus_product(&genus_series(GenusKind::AHat, top / 2), ROOTS, top)?;
    Ok((to_pontryagin(&l, degree)?, to_pontryagin(&t, degree)?, to_pontryagin(&a, degree)?))
}

pub fn verify_agw() -> Result<Report> {
    verify_agw_with(&rat_int(8), &rat_int(32))
}

/// Checks `L_12 = t * T_12 - a * Â_12` coefficientwise in
/// `{p_3, p_1 p_2, p_1^3}`. The report's sides are the number of matching
/// coefficients and the number of monomials.
pub fn verify_agw_with(t_coeff: &Rational, ahat_coeff: &Rational) -> Result<Report> {
    let (l, t, a) = genus_parts(TOP_DEGREE)?;
    let combo = t.linear_combination(t_coeff, &a, &-ahat_coeff.clone());
    let monomials: Vec<Vec<u32>> = partitions(TOP_DEGREE / 4).into_iter().map(|p| p.parts().to_vec()).collect();
    let rows: Vec<Value> = monomials
        .iter()
        .map(|k| {
            json!({
                "monomial": PontryaginPoly::from_terms([(k.clone(), Rational::one())]).to_string(),
                "L": r(&l.coeff(k)),
                "twisted_ahat": r(&t.coeff(k)),
                "ahat": r(&a.coeff(k)),
                "combination": r(&combo.coeff(k)),
            })
        })
        .collect();
    let matching = monomials.iter().filter(|k| l.coeff(k) == combo.coeff(k)).count();
    let (l4, t4, a4) = genus_parts(4)?;
    Ok(Report::new("agw", "universal", rat_int(matching), rat_int(monomials.len()))
        .with("coefficients", rows)
        .with("t_coefficient", r(t_coeff))
        .with("ahat_coefficient", r(ahat_coeff))
        .with("L_12", l.to_string())
        .with("twisted_ahat_12", t.to_string())
        .with("ahat_12", a.to_string())
        .with("degree_4", json!({ "L": l4.to_string(), "twisted_ahat": t4.to_string(), "ahat": a4.to_string() })))
}
