//! Integration over the toric manifold of a Delzant polytope by summing
//! fixed-point contributions over the vertices.
//!
//! At a vertex `p` with incident facets `i_1 < ... < i_n`, the class `v_i`
//! restricts to `t_{p,i} = <mu_{p,i}, u>` when `i` is incident and to zero
//! otherwise, and the equivariant Euler class is `prod_j t_{p,i_j}`. The
//! generic vector `u` is numeric; independence of `u` is checked by
//! evaluating twice.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{dot, rat_int, IntMatrix, Rational};
use crate::polytope::{factorial, format_point, SimplePolytope, VertexChart};
use crate::series::{elementary_symmetric, total_degree, MultiPoly};

/// Integer vector pairing to a nonzero value with every vertex weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenericVector(pub Vec<i64>);

impl GenericVector {
    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    fn big(&self) -> Vec<BigInt> {
        self.0.iter().map(|&v| BigInt::from(v)).collect()
    }
}

impl FromStr for GenericVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .map(|x| x.trim().parse::<i64>().map_err(|e| Error::Shape(format!("bad vector entry {x:?}: {e}"))))
            .collect::<Result<Vec<_>>>()
            .map(GenericVector)
    }
}

impl fmt::Display for GenericVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(", "))
    }
}

/// Weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::Partition(format!("parts must be positive, got {parts:?}")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|&w| w as usize).sum()
    }

    /// Product of factorials of part multiplicities.
    pub fn automorphisms(&self) -> BigInt {
        self.0.iter().chunk_by(|&&w| w).into_iter().map(|(_, g)| factorial(g.count())).product()
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|e| Error::Partition(format!("bad part {x:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for w in (1..=rest.min(max)).rev() {
            prefix.push(w);
            go(rest - w, w, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n as u32, n as u32, &mut Vec::new(), &mut out);
    }
    out
}

/// Number of 0/1 matrices with the given row and column sums; these are the
/// coefficients of `e_rows` in the monomial basis `m_cols`.
pub fn zero_one_matrices(rows: &[u32], cols: &[u32]) -> u64 {
    fn go(rows: &[u32], capacity: &mut Vec<u32>) -> u64 {
        let Some((&r, rest)) = rows.split_first() else {
            return capacity.iter().all(|&c| c == 0) as u64;
        };
        let open: Vec<usize> = (0..capacity.len()).filter(|&j| capacity[j] > 0).collect();
        let mut total = 0;
        for chosen in open.into_iter().combinations(r as usize) {
            for &j in &chosen {
                capacity[j] -= 1;
            }
            total += go(rest, capacity);
            for &j in &chosen {
                capacity[j] += 1;
            }
        }
        total
    }
    if rows.iter().sum::<u32>() != cols.iter().sum::<u32>() {
        return 0;
    }
    go(rows, &mut cols.to_vec())
}

fn primes() -> impl Iterator<Item = i64> {
    (2i64..).filter(|&k| (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0))
}

/// Candidate generic vectors in policy order: `(1, t, ..., t^{n-1})` for
/// primes `t = 2, 3, 5, ...`; in dimension one `(1), (-1), (2), (-2), ...`.
pub fn generic_candidates(n: usize) -> Box<dyn Iterator<Item = GenericVector>> {
    if n == 1 {
        Box::new((1i64..).flat_map(|k| [GenericVector(vec![k]), GenericVector(vec![-k])]))
    } else {
        Box::new(primes().map(move |t| GenericVector((0..n as u32).map(|k| t.pow(k)).collect())))
    }
}

pub fn is_generic(charts: &[VertexChart], u: &GenericVector) -> bool {
    let ub = u.big();
    charts.iter().all(|c| c.mu.as_ref().is_some_and(|mu| (0..mu.rows()).all(|j| !dot(mu.row(j), &ub).is_zero())))
}

/// First candidate that pairs nonzero with every `mu` row.
pub fn choose_generic(charts: &[VertexChart]) -> GenericVector {
    generic_vectors(charts, 1).remove(0)
}

/// The first `count` distinct accepted candidates.
pub fn generic_vectors(charts: &[VertexChart], count: usize) -> Vec<GenericVector> {
    let n = charts.first().map_or(1, |c| c.facets.len());
    generic_candidates(n).filter(|u| is_generic(charts, u)).take(count).collect()
}

#[derive(Clone, Debug)]
struct FixedPoint {
    facets: Vec<usize>,
    mu: IntMatrix,
    label: String,
}

/// Fixed-point data of a Delzant polytope.
#[derive(Clone, Debug)]
pub struct Localizer {
    dim: usize,
    normals: Vec<Vec<BigInt>>,
    points: Vec<FixedPoint>,
    charts: Vec<VertexChart>,
}

/// Per-vertex top-degree contributions of an integral.
#[derive(Clone, Debug, PartialEq)]
pub struct Contribution {
    pub vertex: String,
    pub value: Rational,
}

/// A Chern number with both evaluation routes recorded.
#[derive(Clone, Debug, PartialEq)]
pub struct ChernNumber {
    pub partition: Partition,
    pub value: BigInt,
    pub fixed_point_route: Rational,
    pub symmetric_route: Rational,
    pub generic_vector: GenericVector,
}

impl Localizer {
    pub fn new(s: &SimplePolytope) -> Result<Self> {
        let points = s
            .charts()
            .iter()
            .map(|c| {
                let mu = c.mu.clone().ok_or_else(|| Error::NotDelzant { vertex: c.to_string(), det: c.det.clone() })?;
                Ok(FixedPoint { facets: c.facets.clone(), mu, label: format_point(&c.vertex) })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            dim: s.dim(),
            normals: s.polytope().facets().iter().map(|f| f.normal_big()).collect(),
            points,
            charts: s.charts().to_vec(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_facets(&self) -> usize {
        self.normals.len()
    }

    pub fn num_fixed_points(&self) -> usize {
        self.points.len()
    }

    pub fn choose_generic(&self) -> GenericVector {
        choose_generic(&self.charts)
    }

    /// The default vector and the next accepted one.
    pub fn generic_pair(&self) -> (GenericVector, GenericVector) {
        let mut v = generic_vectors(&self.charts, 2);
        let second = v.pop().unwrap();
        (v.pop().unwrap(), second)
    }

    /// Next accepted candidate different from `u`.
    pub fn alternate_to(&self, u: &GenericVector) -> GenericVector {
        generic_candidates(self.dim)
            .find(|c| c != u && is_generic(&self.charts, c))
            .expect("candidate sequence is infinite")
    }

    /// `t_{p,i_j} = <mu_{p,i_j}, u>` for every vertex, in chart order.
    pub fn weights(&self, u: &GenericVector) -> Result<Vec<Vec<BigInt>>> {
        if u.0.len() != self.dim {
            return Err(Error::Dimension(format!("generic vector has length {}, expected {}", u.0.len(), self.dim)));
        }
        let ub = u.big();
        self.points
            .iter()
            .enumerate()
            .map(|(vi, p)| {
                let w: Vec<BigInt> = (0..self.dim).map(|j| dot(p.mu.row(j), &ub)).collect();
                if w.iter().any(Zero::is_zero) {
                    return Err(Error::NotGeneric { u: u.0.clone(), vertex: vi });
                }
                Ok(w)
            })
            .collect()
    }

    fn check_exponent(&self, e: &[u32]) -> Result<()> {
        if e.len() != self.num_facets() {
            return Err(Error::Shape(format!("exponent has {} entries, expected {}", e.len(), self.num_facets())));
        }
        if total_degree(e) > self.dim {
            return Err(Error::Shape(format!("monomial degree {} exceeds dimension {}", total_degree(e), self.dim)));
        }
        Ok(())
    }

    /// `v^e` restricted to each vertex, divided by the Euler class there.
    fn monomial_terms(&self, e: &[u32], weights: &[Vec<BigInt>]) -> Vec<Rational> {
        self.points
            .iter()
            .zip(weights)
            .map(|(p, w)| {
                let incident = e.iter().enumerate().all(|(i, &k)| k == 0 || p.facets.contains(&i));
                if !incident {
                    return Rational::zero();
                }
                let num: BigInt = p.facets.iter().zip(w).map(|(&i, t)| t.pow(e[i])).product();
                let den: BigInt = w.iter().product();
                Rational::new(num, den)
            })
            .collect()
    }

    /// `<v^e, [M]>`; exactly zero when `|e| < n`.
    pub fn integrate_monomial(&self, e: &[u32], u: &GenericVector) -> Result<Rational> {
        self.check_exponent(e)?;
        let weights = self.weights(u)?;
        let total: Rational = self.monomial_terms(e, &weights).into_iter().sum();
        if total_degree(e) < self.dim && !total.is_zero() {
            return Err(Error::Inconsistent(format!("localization of sub-top monomial {e:?} gave {total}")));
        }
        Ok(total)
    }

    /// Per-vertex contributions of the top-degree part of `f`. Every
    /// lower-degree part is checked to localize to exactly zero.
    pub fn contributions(&self, f: &MultiPoly, u: &GenericVector) -> Result<Vec<Contribution>> {
        if f.nvars() != self.num_facets() {
            return Err(Error::Shape(format!(
                "polynomial has {} variables, expected {}",
                f.nvars(),
                self.num_facets()
            )));
        }
        if f.degree() > self.dim {
            return Err(Error::Shape(format!("truncation {} exceeds dimension {}", f.degree(), self.dim)));
        }
        let weights = self.weights(u)?;
        let mut by_degree = vec![vec![Rational::zero(); self.points.len()]; self.dim + 1];
        for (e, c) in f.terms() {
            let d = total_degree(e);
            for (slot, term) in by_degree[d].iter_mut().zip(self.monomial_terms(e, &weights)) {
                *slot += term * c;
            }
        }
        for (d, terms) in by_degree.iter().enumerate().take(self.dim) {
            let s: Rational = terms.iter().sum();
            if !s.is_zero() {
                return Err(Error::Inconsistent(format!("degree-{d} part localized to {s}, expected 0")));
            }
        }
        Ok(self
            .points
            .iter()
            .zip(by_degree.pop().unwrap())
            .map(|(p, value)| Contribution { vertex: p.label.clone(), value })
            .collect())
    }

    pub fn integrate_poly(&self, f: &MultiPoly, u: &GenericVector) -> Result<Rational> {
        Ok(self.contributions(f, u)?.into_iter().map(|c| c.value).sum())
    }

    /// `<v_i^k, [M]>` by the vertex sum over the facet: each vertex on facet
    /// `i` contributes `t_i^{n-1} / prod_{j != i} t_j`.
    pub fn gysin_power(&self, facet: usize, k: usize, u: &GenericVector) -> Result<Rational> {
        if facet >= self.num_facets() {
            return Err(Error::Shape(format!("facet {facet} out of range")));
        }
        if k != self.dim {
            return Err(Error::Shape(format!("power must equal the dimension {}, got {k}", self.dim)));
        }
        let weights = self.weights(u)?;
        let mut total = Rational::zero();
        for (p, w) in self.points.iter().zip(&weights) {
            let Some(local) = p.facets.iter().position(|&i| i == facet) else {
                continue;
            };
            let num = w[local].pow(self.dim as u32 - 1);
            let den: BigInt = w.iter().enumerate().filter(|&(j, _)| j != local).map(|(_, t)| t.clone()).product();
            total += Rational::new(num, den);
        }
        Ok(total)
    }

    /// Three-dimensional form of `<v_i^3, [M]>` written with oriented volumes
    /// of facet normals only:
    /// `sum [l1,l2,u]^2 / ([li,l1,u] [l2,li,u])` over vertices `{i, i1 < i2}`.
    pub fn gysin_cube_triple_product(&self, facet: usize, u: &GenericVector) -> Result<Rational> {
        if self.dim != 3 {
            return Err(Error::Dimension(format!("triple-product form needs dimension 3, got {}", self.dim)));
        }
        if facet >= self.num_facets() {
            return Err(Error::Shape(format!("facet {facet} out of range")));
        }
        let ub = u.big();
        let bracket = |a: &[BigInt], b: &[BigInt]| -> Result<BigInt> {
            let m = IntMatrix::from_columns(&[a.to_vec(), b.to_vec(), ub.clone()])?;
            crate::exact::det(&m)
        };
        let li = &self.normals[facet];
        let mut total = Rational::zero();
        for (vi, p) in self.points.iter().enumerate() {
            if !p.facets.contains(&facet) {
                continue;
            }
            let others: Vec<usize> = p.facets.iter().copied().filter(|&j| j != facet).collect();
            let (l1, l2) = (&self.normals[others[0]], &self.normals[others[1]]);
            let num = bracket(l1, l2)?.pow(2);
            let den = bracket(li, l1)? * bracket(l2, li)?;
            if den.is_zero() {
                return Err(Error::NotGeneric { u: u.0.clone(), vertex: vi });
            }
            total += Rational::new(num, den);
        }
        Ok(total)
    }

    /// Fixed-point sum over ordered index choices at each vertex: for every
    /// `l`-subset `I_1` of the incident facets and every `sigma` in `S_l`,
    /// `prod_j t_{i_j}^{w_sigma(j) - 1} / prod_{i not in I_1} t_i`.
    /// This evaluates the augmented monomial symmetric function
    /// `sum_sigma sum_{I_1} prod t^{w_sigma}` of the Chern roots.
    pub fn fixed_point_monomial_number(&self, w: &Partition, u: &GenericVector) -> Result<Rational> {
        if w.weight() != self.dim {
            return Err(Error::Partition(format!("{w} is not a partition of {}", self.dim)));
        }
        let weights = self.weights(u)?;
        let l = w.len();
        let perms: Vec<Vec<usize>> = (0..l).permutations(l).collect();
        let mut total = Rational::zero();
        for t in &weights {
            for chosen in (0..self.dim).combinations(l) {
                let den: BigInt = (0..self.dim).filter(|j| !chosen.contains(j)).map(|j| t[j].clone()).product();
                for sigma in &perms {
                    let num: BigInt =
                        chosen.iter().enumerate().map(|(pos, &j)| t[j].pow(w.parts()[sigma[pos]] - 1)).product();
                    total += Rational::new(num, den.clone());
                }
            }
        }
        Ok(total)
    }

    /// `c_w` from the fixed-point monomial numbers, converting from the
    /// monomial basis with the 0/1-matrix counts.
    pub fn chern_number_fixed_point(&self, w: &Partition, u: &GenericVector) -> Result<Rational> {
        let mut total = Rational::zero();
        for lambda in partitions(self.dim) {
            let coeff = zero_one_matrices(w.parts(), lambda.parts());
            if coeff == 0 {
                continue;
            }
            let augmented = self.fixed_point_monomial_number(&lambda, u)?;
            total += augmented * rat_int(coeff) / rat_int(lambda.automorphisms());
        }
        Ok(total)
    }

    /// `c_w` as the integral of `prod_j e_{w_j}(v_1, ..., v_m)`.
    pub fn chern_number_symmetric(&self, w: &Partition, u: &GenericVector) -> Result<Rational> {
        if w.weight() != self.dim {
            return Err(Error::Partition(format!("{w} is not a partition of {}", self.dim)));
        }
        let m = self.num_facets();
        let class = w.parts().iter().fold(MultiPoly::one(m, self.dim), |acc, &k| {
            acc.mul(&elementary_symmetric(m, k as usize, self.dim)).expect("same shape")
        });
        self.integrate_poly(&class, u)
    }

    /// Both routes at `u`; they must agree and be integral.
    pub fn chern_number_at(&self, w: &Partition, u: &GenericVector) -> Result<ChernNumber> {
        let fixed_point_route = self.chern_number_fixed_point(w, u)?;
        let symmetric_route = self.chern_number_symmetric(w, u)?;
        if fixed_point_route != symmetric_route {
            return Err(Error::Inconsistent(format!(
                "Chern number {w}: fixed-point route {fixed_point_route} != symmetric route {symmetric_route}"
            )));
        }
        if !symmetric_route.is_integer() {
            return Err(Error::Inconsistent(format!("Chern number {w} = {symmetric_route} is not an integer")));
        }
        Ok(ChernNumber {
            partition: w.clone(),
            value: symmetric_route.to_integer(),
            fixed_point_route,
            symmetric_route,
            generic_vector: u.clone(),
        })
    }

    pub fn chern_number(&self, w: &Partition) -> Result<ChernNumber> {
        self.chern_number_at(w, &self.choose_generic())
    }
}

impl ChernNumber {
    pub fn is_one(&self) -> bool {
        self.value.is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::polytope::{Facet, HPolytope};

    fn delzant(dim: usize, facets: &[(&[i64], i64)]) -> (SimplePolytope, Localizer) {
        let p = HPolytope::new(dim, facets.iter().map(|(n, a)| Facet::new(n.to_vec(), *a)).collect(), None).unwrap();
        let s = SimplePolytope::delzant(p).unwrap();
        let l = Localizer::new(&s).unwrap();
        (s, l)
    }

    fn square() -> Localizer {
        delzant(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[-1, 0], -1), (&[0, -1], -1)]).1
    }

    fn cp2() -> Localizer {
        delzant(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[-1, -1], -1)]).1
    }

    fn simplex3() -> Localizer {
        delzant(3, &[(&[1, 0, 0], 0), (&[0, 1, 0], 0), (&[0, 0, 1], 0), (&[-1, -1, -1], -1)]).1
    }

    #[test]
    fn generic_choice() {
        assert_eq!(square().choose_generic(), GenericVector(vec![1, 2]));
        assert_eq!(cp2().choose_generic(), GenericVector(vec![1, 2]));
        let interval = delzant(1, &[(&[1], 0), (&[-1], -3)]).1;
        assert_eq!(interval.choose_generic(), GenericVector(vec![1]));
        assert_eq!(interval.generic_pair().1, GenericVector(vec![-1]));
        // (1,1) is orthogonal to the weight (1,-1) at a CP^2 vertex
        assert!(matches!(cp2().weights(&GenericVector(vec![1, 1])), Err(Error::NotGeneric { .. })));
    }

    #[test]
    fn cp2_self_intersection_by_hand() {
        // oracle: u1/u2 - (u1 - u2)/u2 for the two vertices on facet 0
        let (u1, u2) = (1i64, 2i64);
        let expected = rat(u1, u2) - rat(u1 - u2, u2);
        assert_eq!(expected, rat(1, 1));
        let u = GenericVector(vec![u1, u2]);
        assert_eq!(cp2().integrate_monomial(&[2, 0, 0], &u).unwrap(), expected);
    }

    #[test]
    fn square_intersections() {
        let l = square();
        let u = l.choose_generic();
        assert_eq!(l.integrate_monomial(&[1, 0, 1, 0], &u).unwrap(), rat(0, 1));
        assert_eq!(l.integrate_monomial(&[1, 1, 0, 0], &u).unwrap(), rat(1, 1));
        assert_eq!(l.integrate_monomial(&[2, 0, 0, 0], &u).unwrap(), rat(0, 1));
        assert_eq!(l.integrate_monomial(&[1, 0, 0, 0], &u).unwrap(), rat(0, 1));
        assert!(l.integrate_monomial(&[3, 0, 0, 0], &u).is_err());
    }

    #[test]
    fn integrate_poly_examples() {
        let l = cp2();
        let u = l.choose_generic();
        assert_eq!(l.integrate_poly(&MultiPoly::one(3, 2), &u).unwrap(), rat(0, 1));
        let mut f = MultiPoly::zero(3, 2);
        f.add_term(vec![1, 1, 0], rat(1, 1));
        f.add_term(vec![0, 1, 1], rat(1, 1));
        assert_eq!(l.integrate_poly(&f, &u).unwrap(), rat(2, 1));
        let c1 = MultiPoly::linear(&[rat(1, 1), rat(1, 1), rat(1, 1)], 2);
        assert_eq!(l.integrate_poly(&c1.pow(2), &u).unwrap(), rat(9, 1));
        assert!(l.integrate_poly(&MultiPoly::one(2, 2), &u).is_err());
    }

    #[test]
    fn gysin_examples() {
        let t = simplex3();
        let u = t.choose_generic();
        for i in 0..4 {
            assert_eq!(t.gysin_power(i, 3, &u).unwrap(), rat(1, 1));
            assert_eq!(t.gysin_cube_triple_product(i, &u).unwrap(), rat(1, 1));
        }
        let c = cp2();
        let u = c.choose_generic();
        for i in 0..3 {
            let mut e = vec![0; 3];
            e[i] = 2;
            assert_eq!(c.gysin_power(i, 2, &u).unwrap(), c.integrate_monomial(&e, &u).unwrap());
            assert_eq!(c.gysin_power(i, 2, &u).unwrap(), rat(1, 1));
        }
        let s = square();
        let u = s.choose_generic();
        assert!((0..4).all(|i| s.gysin_power(i, 2, &u).unwrap().is_zero()));
        assert!(s.gysin_power(0, 1, &u).is_err());
        assert!(s.gysin_cube_triple_product(0, &u).is_err());
    }

    #[test]
    fn chern_examples() {
        let c = cp2();
        assert_eq!(c.chern_number(&"2".parse().unwrap()).unwrap().value, BigInt::from(3));
        assert_eq!(c.chern_number(&"1,1".parse().unwrap()).unwrap().value, BigInt::from(9));
        let s = square();
        assert_eq!(s.chern_number(&"1,1".parse().unwrap()).unwrap().value, BigInt::from(8));
        assert_eq!(s.chern_number(&"2".parse().unwrap()).unwrap().value, BigInt::from(4));
        assert!(s.chern_number(&"3".parse().unwrap()).is_err());
    }

    #[test]
    fn fixed_point_formula_is_monomial_basis() {
        // The literal vertex sum gives <m~_w>, e.g. 2<e_2> for w = (1,1).
        let c = cp2();
        let u = c.choose_generic();
        let w: Partition = "1,1".parse().unwrap();
        assert_eq!(c.fixed_point_monomial_number(&w, &u).unwrap(), rat(6, 1));
        let w: Partition = "2".parse().unwrap();
        // <v1^2 + v2^2 + v3^2> on CP^2
        assert_eq!(c.fixed_point_monomial_number(&w, &u).unwrap(), rat(3, 1));
    }

    #[test]
    fn partition_helpers() {
        let ps: Vec<String> = partitions(4).iter().map(|p| p.to_string()).collect();
        assert_eq!(ps, ["(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]);
        assert_eq!(Partition::new(vec![1, 2, 1]).unwrap().parts(), &[2, 1, 1]);
        assert!(Partition::new(vec![0, 1]).is_err());
        assert_eq!(Partition::new(vec![2, 1, 1]).unwrap().automorphisms(), BigInt::from(2));
        assert_eq!(zero_one_matrices(&[1, 1], &[1, 1]), 2);
        assert_eq!(zero_one_matrices(&[2], &[2]), 0);
        assert_eq!(zero_one_matrices(&[2, 1], &[1, 1, 1]), 3);
    }
}
