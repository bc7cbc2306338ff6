//! Brute-force lattice point counts over a polytope and all of its faces.
//!
//! This is the independent side of the Pick-type identities, so it shares
//! nothing with the localization code: points are enumerated in the integer
//! bounding box and each is filed under the face whose relative interior
//! contains it (the face cut out by exactly the tight inequalities).

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{rat, rat_int, Rational};
use crate::polytope::{HPolytope, SimplePolytope};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceCount {
    pub face: usize,
    pub dim: usize,
    pub closed: u64,
    pub relint: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceCounts {
    pub dim: usize,
    /// Indexed by face id of the polytope's face lattice.
    pub faces: Vec<FaceCount>,
}

impl FaceCounts {
    /// `#(P ∩ Z^n)`.
    pub fn total(&self) -> u64 {
        self.faces.iter().map(|f| f.relint).sum()
    }

    pub fn closed_by_dim(&self, k: usize) -> u64 {
        self.faces.iter().filter(|f| f.dim == k).map(|f| f.closed).sum()
    }

    pub fn relint_by_dim(&self, k: usize) -> u64 {
        self.faces.iter().filter(|f| f.dim == k).map(|f| f.relint).sum()
    }

    /// Lattice points on the boundary.
    pub fn boundary(&self) -> u64 {
        (0..self.dim).map(|k| self.relint_by_dim(k)).sum()
    }

    pub fn interior(&self) -> u64 {
        self.relint_by_dim(self.dim)
    }
}

/// Integer box `[lo_i, hi_i]` containing the polytope.
pub fn bounding_box(s: &SimplePolytope) -> Result<Vec<(i64, i64)>> {
    let n = s.dim();
    (0..n)
        .map(|i| {
            let coords = s.charts().iter().map(|c| &c.vertex[i]);
            let lo = coords.clone().min().ok_or(Error::Empty)?.floor().to_integer();
            let hi = coords.max().ok_or(Error::Empty)?.ceil().to_integer();
            let (Some(lo), Some(hi)) = (lo.to_i64(), hi.to_i64()) else {
                return Err(Error::Unbounded("bounding box does not fit in 64 bits".into()));
            };
            Ok((lo, hi))
        })
        .collect()
}

/// Visits every integer point of the box in lexicographic order.
pub(crate) fn for_each_box_point(bounds: &[(i64, i64)], mut visit: impl FnMut(&[i64])) {
    if bounds.iter().any(|(lo, hi)| lo > hi) {
        return;
    }
    let mut x: Vec<i64> = bounds.iter().map(|b| b.0).collect();
    loop {
        visit(&x);
        let mut k = x.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            if x[k] < bounds[k].1 {
                x[k] += 1;
                break;
            }
            x[k] = bounds[k].0;
        }
    }
}

/// Set of facets tight at `x`, or `None` if `x` violates an inequality.
pub(crate) fn tight_facets(p: &HPolytope, x: &[i64]) -> Option<Vec<usize>> {
    let mut tight = Vec::new();
    for (i, f) in p.facets().iter().enumerate() {
        let v: BigInt = f.normal.iter().zip(x).map(|(&a, &b)| BigInt::from(a) * b).sum();
        let slack = v - f.offset;
        if slack < BigInt::zero() {
            return None;
        }
        if slack.is_zero() {
            tight.push(i);
        }
    }
    Some(tight)
}

pub fn count_points(s: &SimplePolytope) -> Result<FaceCounts> {
    let fl = s.faces();
    let mut relint = vec![0u64; fl.faces().len()];
    let mut stray = None;
    for_each_box_point(&bounding_box(s)?, |x| {
        if let Some(tight) = tight_facets(s.polytope(), x) {
            match fl.find(&tight) {
                Some(face) => relint[face] += 1,
                None => stray = Some(tight),
            }
        }
    });
    if let Some(facets) = stray {
        return Err(Error::NotSimple { vertex: "lattice point".into(), facets });
    }
    let faces = fl
        .faces()
        .iter()
        .enumerate()
        .map(|(id, f)| FaceCount {
            face: id,
            dim: f.dim,
            closed: fl.closure(id).iter().map(|&g| relint[g]).sum(),
            relint: relint[id],
        })
        .collect();
    Ok(FaceCounts { dim: s.dim(), faces })
}

/// `#(P ∩ Z^n) + sum_k (-1/2)^k sum_{dim F = n-k} #(F ∩ Z^n)`.
pub fn weighted_sum_closed(fc: &FaceCounts) -> Rational {
    weighted(fc, rat(-1, 2), |f| f.closed)
}

/// `#(relint P ∩ Z^n) + sum_k (1/2)^k sum_{dim F = n-k} #(relint F ∩ Z^n)`.
pub fn weighted_sum_relint(fc: &FaceCounts) -> Rational {
    weighted(fc, rat(1, 2), |f| f.relint)
}

fn weighted(fc: &FaceCounts, base: Rational, count: impl Fn(&FaceCount) -> u64) -> Rational {
    let n = fc.dim;
    let mut weight = Rational::from_integer(1.into());
    let mut total = Rational::zero();
    for k in 0..=n {
        let sum: u64 = fc.faces.iter().filter(|f| f.dim == n - k).map(&count).sum();
        total += &weight * rat_int(sum);
        weight *= &base;
    }
    total
}

/// `Int + Fac/2 + Edg/4 + Vert/8` from relative-interior counts of a 3-polytope.
pub fn pick_rhs_3d(fc: &FaceCounts) -> Result<Rational> {
    if fc.dim != 3 {
        return Err(Error::Dimension(format!("expected a 3-polytope, got dimension {}", fc.dim)));
    }
    Ok(rat_int(fc.relint_by_dim(3))
        + rat(1, 2) * rat_int(fc.relint_by_dim(2))
        + rat(1, 4) * rat_int(fc.relint_by_dim(1))
        + rat(1, 8) * rat_int(fc.relint_by_dim(0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::Facet;

    fn simple(dim: usize, facets: &[(&[i64], i64)]) -> SimplePolytope {
        let p = HPolytope::new(dim, facets.iter().map(|(n, a)| Facet::new(n.to_vec(), *a)).collect(), None).unwrap();
        SimplePolytope::new(p).unwrap()
    }

    fn square(side: i64) -> SimplePolytope {
        simple(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[-1, 0], -side), (&[0, -1], -side)])
    }

    fn simplex3(side: i64) -> SimplePolytope {
        simple(3, &[(&[1, 0, 0], 0), (&[0, 1, 0], 0), (&[0, 0, 1], 0), (&[-1, -1, -1], -side)])
    }

    #[test]
    fn unit_square_counts() {
        let fc = count_points(&square(1)).unwrap();
        assert_eq!(fc.total(), 4);
        assert_eq!(fc.interior(), 0);
        assert!(fc.faces.iter().filter(|f| f.dim == 1).all(|f| f.closed == 2));
        assert_eq!(weighted_sum_closed(&fc), rat(1, 1));
        assert_eq!(weighted_sum_relint(&fc), rat(1, 1));
    }

    #[test]
    fn side_two_square_counts() {
        let fc = count_points(&square(2)).unwrap();
        assert_eq!(fc.total(), 9);
        assert_eq!(fc.interior(), 1);
        assert!(fc.faces.iter().filter(|f| f.dim == 1).all(|f| f.closed == 3));
    }

    #[test]
    fn simplex_counts() {
        let fc = count_points(&simplex3(1)).unwrap();
        assert_eq!(fc.total(), 4);
        assert!(fc.faces.iter().all(|f| (f.dim == 0) == (f.relint == 1)));
        assert_eq!(pick_rhs_3d(&fc).unwrap(), rat(1, 2));

        let fc = count_points(&simplex3(2)).unwrap();
        assert_eq!(weighted_sum_relint(&fc), rat(2, 1));
        assert_eq!(pick_rhs_3d(&fc).unwrap(), rat(2, 1));
    }

    #[test]
    fn triangle_and_interval_closed_sums() {
        let tri = simple(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[-1, -1], -1)]);
        assert_eq!(weighted_sum_closed(&count_points(&tri).unwrap()), rat(3, 4));
        let interval = simple(1, &[(&[1], 0), (&[-1], -2)]);
        let fc = count_points(&interval).unwrap();
        assert_eq!(weighted_sum_closed(&fc), rat(2, 1));
        assert!(pick_rhs_3d(&fc).is_err());
    }

    #[test]
    fn cube_pick_rhs() {
        let cube = simple(
            3,
            &[
                (&[1, 0, 0], 0),
                (&[0, 1, 0], 0),
                (&[0, 0, 1], 0),
                (&[-1, 0, 0], -1),
                (&[0, -1, 0], -1),
                (&[0, 0, -1], -1),
            ],
        );
        assert_eq!(pick_rhs_3d(&count_points(&cube).unwrap()).unwrap(), rat(1, 1));
    }

    #[test]
    fn box_iteration_covers_box() {
        let mut n = 0;
        for_each_box_point(&[(-1, 1), (0, 2)], |_| n += 1);
        assert_eq!(n, 9);
    }
}
