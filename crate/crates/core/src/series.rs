//! Truncated power series: the univariate genus series and polynomials in
//! the facet classes `v_1, ..., v_m` truncated at a total degree.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{rat_int, Rational};
use crate::polytope::factorial;

/// `sum_{k <= D} c_k x^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniSeries {
    coeffs: Vec<Rational>,
}

impl UniSeries {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series keeps at least its constant term");
        Self { coeffs }
    }

    pub fn from_fn(degree: usize, f: impl Fn(usize) -> Rational) -> Self {
        Self::new((0..=degree).map(f).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn truncate(&self, degree: usize) -> Self {
        Self::from_fn(degree, |k| self.coeff(k))
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = self.degree().min(other.degree());
        Self::from_fn(d, |k| (0..=k).map(|i| self.coeff(i) * other.coeff(k - i)).sum())
    }

    /// Exact quotient; the divisor must have a nonzero constant term.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let c0 = other.coeff(0);
        if c0.is_zero() {
            return Err(Error::Singular);
        }
        let d = self.degree().min(other.degree());
        let mut q: Vec<Rational> = Vec::with_capacity(d + 1);
        for k in 0..=d {
            let acc: Rational = (0..k).map(|i| &q[i] * other.coeff(k - i)).sum();
            q.push((self.coeff(k) - acc) / &c0);
        }
        Ok(Self::new(q))
    }

    pub fn exp(degree: usize) -> Self {
        Self::from_fn(degree, inverse_factorial)
    }

    /// `e^x + e^{-x}`.
    pub fn two_cosh(degree: usize) -> Self {
        Self::from_fn(degree, |k| if k % 2 == 0 { inverse_factorial(k) * rat_int(2) } else { Rational::zero() })
    }
}

fn inverse_factorial(k: usize) -> Rational {
    Rational::new(1.into(), factorial(k))
}

fn power_of_half(k: usize) -> Rational {
    Rational::new(1.into(), num_bigint::BigInt::from(2).pow(k as u32))
}

// x / (1 - e^{-x}) and friends, each as numerator / denominator with
// nonzero constant terms.
fn sinh_over_x(degree: usize, scale_half: bool) -> UniSeries {
    UniSeries::from_fn(degree, |k| {
        if k % 2 == 1 {
            return Rational::zero();
        }
        let c = inverse_factorial(k + 1);
        if scale_half {
            c * power_of_half(k)
        } else {
            c
        }
    })
}

fn cosh(degree: usize, scale_half: bool) -> UniSeries {
    UniSeries::from_fn(degree, |k| {
        if k % 2 == 1 {
            return Rational::zero();
        }
        let c = inverse_factorial(k);
        if scale_half {
            c * power_of_half(k)
        } else {
            c
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenusKind {
    /// `x / (1 - e^{-x})`
    Todd,
    /// `(x/2) / tanh(x/2)`
    SignatureHalf,
    /// `(x/2) / sinh(x/2)`
    AHat,
    /// `x / tanh(x)`
    L,
}

impl FromStr for GenusKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "todd" => Ok(Self::Todd),
            "signature-half" | "signature" => Ok(Self::SignatureHalf),
            "ahat" => Ok(Self::AHat),
            "l" | "L" => Ok(Self::L),
            other => Err(Error::Shape(format!("unknown genus series {other:?}"))),
        }
    }
}

pub fn genus_series(kind: GenusKind, degree: usize) -> UniSeries {
    let one = UniSeries::from_fn(degree, |k| if k == 0 { Rational::one() } else { Rational::zero() });
    let q = match kind {
        GenusKind::Todd => {
            // (1 - e^{-x}) / x = sum (-1)^k x^k / (k+1)!
            let den = UniSeries::from_fn(degree, |k| {
                let c = inverse_factorial(k + 1);
                if k % 2 == 0 {
                    c
                } else {
                    -c
                }
            });
            one.div(&den)
        }
        GenusKind::SignatureHalf => cosh(degree, true).div(&sinh_over_x(degree, true)),
        GenusKind::AHat => one.div(&sinh_over_x(degree, true)),
        GenusKind::L => cosh(degree, false).div(&sinh_over_x(degree, false)),
    };
    q.expect("denominators have constant term 1")
}

/// Exponent vector over the facet variables.
pub type Exponent = Vec<u32>;

/// Polynomial in `v_1, ..., v_m` with every term of total degree above the
/// truncation dropped. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    degree: usize,
    terms: BTreeMap<Exponent, Rational>,
}

pub fn total_degree(e: &[u32]) -> usize {
    e.iter().map(|&x| x as usize).sum()
}

impl MultiPoly {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        Self { nvars, degree, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, degree: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars, degree);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize, degree: usize) -> Self {
        Self::constant(nvars, degree, Rational::one())
    }

    pub fn var(nvars: usize, degree: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, degree, e, Rational::one())
    }

    pub fn monomial(nvars: usize, degree: usize, exponent: Exponent, c: Rational) -> Self {
        assert_eq!(exponent.len(), nvars);
        let mut p = Self::zero(nvars, degree);
        p.add_term(exponent, c);
        p
    }

    /// `sum c_i v_i`.
    pub fn linear(coeffs: &[Rational], degree: usize) -> Self {
        let m = coeffs.len();
        let mut p = Self::zero(m, degree);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; m];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c * v^e`, dropping it if it exceeds the truncation.
    pub fn add_term(&mut self, e: Exponent, c: Rational) {
        assert_eq!(e.len(), self.nvars, "exponent length");
        if c.is_zero() || total_degree(&e) > self.degree {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars || self.degree != other.degree {
            return Err(Error::Shape(format!(
                "({} vars, degree {}) vs ({} vars, degree {})",
                self.nvars, self.degree, other.nvars, other.degree
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.nvars, self.degree);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = Self::zero(self.nvars, self.degree);
        for (ea, ca) in &self.terms {
            let da = total_degree(ea);
            for (eb, cb) in &other.terms {
                if da + total_degree(eb) > self.degree {
                    continue;
                }
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(self.nvars, self.degree), |acc, _| acc.mul(self).expect("same shape"))
    }

    /// Terms of total degree exactly `d`.
    pub fn homogeneous(&self, d: usize) -> Self {
        let mut out = Self::zero(self.nvars, self.degree);
        for (e, c) in &self.terms {
            if total_degree(e) == d {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }

    /// `g(self)` for a series `g`, truncated at this polynomial's degree.
    /// `self` should have no constant term for the truncation to be exact.
    pub fn compose(&self, g: &UniSeries) -> Self {
        let mut acc = Self::zero(self.nvars, self.degree);
        let mut power = Self::one(self.nvars, self.degree);
        for k in 0..=self.degree.min(g.degree()) {
            acc = acc.add(&power.scale(&g.coeff(k))).expect("same shape");
            power = power.mul(self).expect("same shape");
        }
        acc
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        // lowest total degree first, then by exponent
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(e, _)| (total_degree(e), std::cmp::Reverse((*e).clone())));
        for (e, c) in terms {
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| if p == 1 { format!("v{}", i + 1) } else { format!("v{}^{}", i + 1, p) })
                .collect();
            let (neg, abs) = if c < &Rational::zero() { (true, -c.clone()) } else { (false, c.clone()) };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// `prod_{i=1}^m g(v_i)` truncated at total degree `degree`.
pub fn product_over_facets(g: &UniSeries, m: usize, degree: usize) -> MultiPoly {
    (0..m).fold(MultiPoly::one(m, degree), |acc, i| {
        let factor = MultiPoly::var(m, degree, i).compose(g);
        acc.mul(&factor).expect("same shape")
    })
}

/// `exp(sum c_i v_i)` truncated at total degree `degree`.
pub fn exp_linear(coeffs: &[Rational], degree: usize) -> MultiPoly {
    MultiPoly::linear(coeffs, degree).compose(&UniSeries::exp(degree))
}

/// Elementary symmetric polynomial `e_k(v_1, ..., v_m)`.
pub fn elementary_symmetric(m: usize, k: usize, degree: usize) -> MultiPoly {
    let mut p = MultiPoly::zero(m, degree);
    for subset in itertools::Itertools::combinations(0..m, k) {
        let mut e = vec![0; m];
        for i in subset {
            e[i] = 1;
        }
        p.add_term(e, Rational::one());
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn series(c: &[(i64, i64)]) -> UniSeries {
        UniSeries::new(c.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    /// Oracle: coefficients by the defining identity `g(x) * den(x) = num(x)`
    /// solved one coefficient at a time, without the division routine.
    fn solve_by_identity(num: &[Rational], den: &[Rational]) -> Vec<Rational> {
        let mut g: Vec<Rational> = Vec::new();
        for k in 0..num.len() {
            let known: Rational = (0..k).map(|i| &g[i] * &den[k - i]).sum();
            g.push((&num[k] - known) / &den[0]);
        }
        g
    }

    #[test]
    fn genus_series_low_degree() {
        assert_eq!(genus_series(GenusKind::Todd, 2), series(&[(1, 1), (1, 2), (1, 12)]));
        assert_eq!(genus_series(GenusKind::SignatureHalf, 2), series(&[(1, 1), (0, 1), (1, 12)]));
        assert_eq!(genus_series(GenusKind::AHat, 2), series(&[(1, 1), (0, 1), (-1, 24)]));
        assert_eq!(genus_series(GenusKind::L, 2), series(&[(1, 1), (0, 1), (1, 3)]));
    }

    #[test]
    fn genus_series_known_higher_terms() {
        // x/tanh x = 1 + x^2/3 - x^4/45 + 2x^6/945
        assert_eq!(
            genus_series(GenusKind::L, 6),
            series(&[(1, 1), (0, 1), (1, 3), (0, 1), (-1, 45), (0, 1), (2, 945)])
        );
        // (x/2)/sinh(x/2) = 1 - x^2/24 + 7x^4/5760 - 31x^6/967680
        assert_eq!(
            genus_series(GenusKind::AHat, 6),
            series(&[(1, 1), (0, 1), (-1, 24), (0, 1), (7, 5760), (0, 1), (-31, 967680)])
        );
        // Todd: Bernoulli numbers, x^4 coefficient -1/720
        assert_eq!(genus_series(GenusKind::Todd, 4).coeff(4), rat(-1, 720));
        assert_eq!(genus_series(GenusKind::Todd, 4).coeff(3), rat(0, 1));
    }

    #[test]
    fn todd_matches_identity_oracle() {
        let d = 8;
        // x = Td(x) * (1 - e^{-x}); divide both by x
        let den: Vec<Rational> = (0..=d)
            .map(|k| {
                let c = Rational::new(1.into(), factorial(k + 1));
                if k % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect();
        let mut num = vec![Rational::zero(); d + 1];
        num[0] = Rational::one();
        assert_eq!(genus_series(GenusKind::Todd, d).coeffs(), solve_by_identity(&num, &den).as_slice());
    }

    #[test]
    fn parity_and_scaling_relations() {
        let d = 10;
        let l = genus_series(GenusKind::L, d);
        let sh = genus_series(GenusKind::SignatureHalf, d);
        let td = genus_series(GenusKind::Todd, d);
        assert!(l.is_even() && sh.is_even() && genus_series(GenusKind::AHat, d).is_even());
        for k in 0..=d {
            assert_eq!(sh.coeff(k), l.coeff(k) * power_of_half(k));
            // Td(x) = (x/2)coth(x/2) + x/2
            let expected = sh.coeff(k) + if k == 1 { rat(1, 2) } else { rat(0, 1) };
            assert_eq!(td.coeff(k), expected);
        }
        assert_eq!(genus_series(GenusKind::L, 4), l.truncate(4));
    }

    #[test]
    fn product_examples() {
        let g = series(&[(1, 1), (1, 1)]);
        let p = product_over_facets(&g, 2, 2);
        let mut expected = MultiPoly::one(2, 2);
        for e in [vec![1, 0], vec![0, 1], vec![1, 1]] {
            expected.add_term(e, rat(1, 1));
        }
        assert_eq!(p, expected);

        let p = product_over_facets(&genus_series(GenusKind::Todd, 2), 1, 2);
        assert_eq!(p.to_string(), "1 + 1/2*v1 + 1/12*v1^2");

        let p = product_over_facets(&genus_series(GenusKind::SignatureHalf, 2), 3, 2);
        assert_eq!(p.to_string(), "1 + 1/12*v1^2 + 1/12*v2^2 + 1/12*v3^2");
    }

    #[test]
    fn exp_linear_examples() {
        assert_eq!(exp_linear(&vec![rat(0, 1); 3], 3), MultiPoly::one(3, 3));
        assert_eq!(exp_linear(&[rat(1, 1)], 2).to_string(), "1 + v1 + 1/2*v1^2");
        assert_eq!(exp_linear(&[rat(1, 1), rat(-1, 1)], 1).to_string(), "1 + v1 - v2");
    }

    #[test]
    fn multiply_examples() {
        let v1 = MultiPoly::var(2, 2, 0);
        let v2 = MultiPoly::var(2, 2, 1);
        let one = MultiPoly::one(2, 2);
        assert_eq!(v1.mul(&one).unwrap(), v1);
        let a = one.add(&v1).unwrap();
        let b = one.sub(&v1).unwrap();
        assert_eq!(a.mul(&b).unwrap().to_string(), "1 - v1^2");
        let s = v1.add(&v2).unwrap();
        assert_eq!(s.mul(&s).unwrap().to_string(), "v1^2 + 2*v1*v2 + v2^2");
        assert!(v1.mul(&MultiPoly::one(3, 2)).is_err());
        assert!(v1.add(&MultiPoly::one(2, 3)).is_err());
    }

    #[test]
    fn truncation_drops_high_terms() {
        let v = MultiPoly::var(1, 2, 0);
        assert!(v.pow(3).is_empty());
        assert_eq!(elementary_symmetric(3, 2, 3).len(), 3);
        assert!(elementary_symmetric(3, 2, 1).is_empty());
    }
}
