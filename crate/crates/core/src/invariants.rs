//! Identity checks tying the localization side to the combinatorial side.
//!
//! Each check computes its two sides by separate code paths (fixed-point sums
//! versus lattice enumeration, or genus series versus the h-vector) and
//! returns a [`Report`]. A report with `holds == false` is a valid result.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{rat, rat_int, Rational};
use crate::lattice::{count_points, pick_rhs_3d, weighted_sum_closed, weighted_sum_relint, FaceCounts};
use crate::localization::{partitions, GenericVector, Localizer};
use crate::polytope::{factorial, signature_from_h, HPolytope, SimplePolytope};
use crate::series::{exp_linear, genus_series, product_over_facets, GenusKind, MultiPoly};

/// Both sides of an identity plus supporting detail.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub identity: String,
    pub polytope: String,
    #[serde(with = "rational_string")]
    pub lhs: Rational,
    #[serde(with = "rational_string")]
    pub rhs: Rational,
    pub holds: bool,
    pub breakdown: BTreeMap<String, Value>,
    pub generic_vectors: Vec<Vec<i64>>,
}

impl Report {
    pub fn new(identity: &str, polytope: &str, lhs: Rational, rhs: Rational) -> Self {
        let holds = lhs == rhs;
        Self {
            identity: identity.to_owned(),
            polytope: polytope.to_owned(),
            lhs,
            rhs,
            holds,
            breakdown: BTreeMap::new(),
            generic_vectors: Vec::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.breakdown.insert(key.to_owned(), value.into());
        self
    }

    pub fn with_vectors(mut self, vectors: &[&GenericVector]) -> Self {
        self.generic_vectors = vectors.iter().map(|u| u.0.clone()).collect();
        self
    }
}

pub(crate) mod rational_string {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    use crate::exact::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).ok_or_else(|| D::Error::custom(format!("not a rational: {s:?}")))
    }
}

pub(crate) fn r(v: &Rational) -> Value {
    Value::String(v.to_string())
}

/// A Delzant polytope together with its fixed-point data.
#[derive(Clone, Debug)]
pub struct DelzantPolytope {
    simple: SimplePolytope,
    localizer: Localizer,
}

impl DelzantPolytope {
    pub fn new(p: HPolytope) -> Result<Self> {
        let simple = SimplePolytope::delzant(p)?;
        let localizer = Localizer::new(&simple)?;
        Ok(Self { simple, localizer })
    }

    pub fn simple(&self) -> &SimplePolytope {
        &self.simple
    }

    pub fn polytope(&self) -> &HPolytope {
        self.simple.polytope()
    }

    pub fn localizer(&self) -> &Localizer {
        &self.localizer
    }

    pub fn dim(&self) -> usize {
        self.simple.dim()
    }

    pub fn num_facets(&self) -> usize {
        self.simple.num_facets()
    }

    pub fn name(&self) -> &str {
        self.polytope().name().unwrap_or("unnamed")
    }

    pub fn counts(&self) -> Result<FaceCounts> {
        count_points(&self.simple)
    }
}

/// `-sum a_i v_i`, truncated at the dimension.
pub fn kahler_class(p: &HPolytope) -> MultiPoly {
    let coeffs: Vec<Rational> = p.facets().iter().map(|f| rat_int(-f.offset)).collect();
    MultiPoly::linear(&coeffs, p.dim())
}

/// `exp(w)` truncated at the dimension.
pub fn exp_kahler(p: &HPolytope) -> MultiPoly {
    let coeffs: Vec<Rational> = p.facets().iter().map(|f| rat_int(-f.offset)).collect();
    exp_linear(&coeffs, p.dim())
}

/// `<exp(w) prod g(v_i), [M]>`.
pub fn twisted_genus(dp: &DelzantPolytope, kind: GenusKind, u: &GenericVector) -> Result<Rational> {
    let n = dp.dim();
    let genus = product_over_facets(&genus_series(kind, n), dp.num_facets(), n);
    let class = exp_kahler(dp.polytope()).mul(&genus)?;
    dp.localizer().integrate_poly(&class, u)
}

/// `<prod g(v_i), [M]>` with no Kähler twist.
pub fn untwisted_genus(dp: &DelzantPolytope, kind: GenusKind, u: &GenericVector) -> Result<Rational> {
    let n = dp.dim();
    let genus = product_over_facets(&genus_series(kind, n), dp.num_facets(), n);
    dp.localizer().integrate_poly(&genus, u)
}

/// `<w^n / n!, [M]>`.
pub fn kahler_volume(dp: &DelzantPolytope, u: &GenericVector) -> Result<Rational> {
    let n = dp.dim();
    let top = kahler_class(dp.polytope()).pow(n).scale(&Rational::new(1.into(), factorial(n)));
    dp.localizer().integrate_poly(&top, u)
}

pub fn twisted_todd(dp: &DelzantPolytope) -> Result<Rational> {
    twisted_genus(dp, GenusKind::Todd, &dp.localizer().choose_generic())
}

pub fn twisted_signature(dp: &DelzantPolytope) -> Result<Rational> {
    twisted_genus(dp, GenusKind::SignatureHalf, &dp.localizer().choose_generic())
}

fn second_vector(dp: &DelzantPolytope, u: &GenericVector) -> GenericVector {
    dp.localizer().alternate_to(u)
}

fn agree(what: &str, a: &Rational, b: &Rational) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::Inconsistent(format!("{what}: {a} != {b}")))
    }
}

/// Twisted signature versus the face-weighted lattice count.
pub fn check_pick(dp: &DelzantPolytope) -> Result<Report> {
    check_pick_with(dp, &dp.localizer().choose_generic())
}

pub fn check_pick_with(dp: &DelzantPolytope, u: &GenericVector) -> Result<Report> {
    let n = dp.dim();
    let u2 = second_vector(dp, u);
    let lhs = twisted_genus(dp, GenusKind::SignatureHalf, u)?;
    let lhs2 = twisted_genus(dp, GenusKind::SignatureHalf, &u2)?;
    agree("twisted signature at two generic vectors", &lhs, &lhs2)?;

    let counts = dp.counts()?;
    let rhs = weighted_sum_closed(&counts);
    let relint = weighted_sum_relint(&counts);
    agree("closed and relative-interior weighted sums", &rhs, &relint)?;

    let genus = product_over_facets(&genus_series(GenusKind::SignatureHalf, n), dp.num_facets(), n);
    let class = exp_kahler(dp.polytope()).mul(&genus)?;
    let contributions: Vec<Value> = dp
        .localizer()
        .contributions(&class, u)?
        .into_iter()
        .map(|c| json!({ "vertex": c.vertex, "value": r(&c.value) }))
        .collect();
    let subtotals: Vec<Value> = (0..=n)
        .map(|k| {
            let closed: u64 = counts.closed_by_dim(n - k);
            r(&(rat(-1, 2).pow(k as i32) * rat_int(closed)))
        })
        .collect();
    let volume = kahler_volume(dp, u)?;
    let constant = untwisted_genus(dp, GenusKind::SignatureHalf, u)?;

    let mut report = Report::new("pick", dp.name(), lhs, rhs)
        .with("lhs_second_vector", r(&lhs2))
        .with("rhs_relint_form", r(&relint))
        .with("weighted_subtotals_by_codim", subtotals)
        .with("vertex_contributions", contributions)
        .with("kahler_volume", r(&volume))
        .with("constant_genus_term", r(&constant))
        .with_vectors(&[u, &u2]);
    if n == 2 {
        let int = counts.interior();
        let bd = counts.boundary();
        let classical = rat_int(int) + rat(1, 2) * rat_int(bd) - rat(1, 1);
        report = report
            .with("area", r(&volume))
            .with("interior", int)
            .with("boundary", bd)
            .with("classical_pick_rhs", r(&classical))
            .with("classical_pick_holds", volume == classical);
    }
    Ok(report)
}

/// Twisted Todd genus versus the number of lattice points.
pub fn check_twisted_todd(dp: &DelzantPolytope) -> Result<Report> {
    check_twisted_todd_with(dp, &dp.localizer().choose_generic())
}

pub fn check_twisted_todd_with(dp: &DelzantPolytope, u: &GenericVector) -> Result<Report> {
    let u2 = second_vector(dp, u);
    let lhs = twisted_genus(dp, GenusKind::Todd, u)?;
    agree("twisted Todd genus at two generic vectors", &lhs, &twisted_genus(dp, GenusKind::Todd, &u2)?)?;
    let total = dp.counts()?.total();
    Ok(Report::new("todd", dp.name(), lhs, rat_int(total)).with_vectors(&[u, &u2]))
}

/// Degree-`n` part of `prod (v_i/2)/tanh(v_i/2)` versus `(-1)^n h_P(-1) / 2^n`.
pub fn check_untwisted_signature(dp: &DelzantPolytope) -> Result<Report> {
    check_untwisted_signature_with(dp, &dp.localizer().choose_generic())
}

pub fn check_untwisted_signature_with(dp: &DelzantPolytope, u: &GenericVector) -> Result<Report> {
    let n = dp.dim();
    let u2 = second_vector(dp, u);
    let lhs = untwisted_genus(dp, GenusKind::SignatureHalf, u)?;
    agree("untwisted genus at two generic vectors", &lhs, &untwisted_genus(dp, GenusKind::SignatureHalf, &u2)?)?;
    let h = dp.simple().h_vector();
    let sigma = signature_from_h(&h);
    let rhs = &sigma / rat_int(BigInt::from(2).pow(n as u32));
    Ok(Report::new("signature", dp.name(), lhs, rhs)
        .with("h_vector", h.h.iter().map(|v| v.to_string()).collect::<Vec<_>>())
        .with("signature", r(&sigma))
        .with("facets", dp.num_facets())
        .with_vectors(&[u, &u2]))
}

/// `Int + Fac/2 + Edg/4 + Vert/8 = Vol(P) - sum a_j / 3` for a Delzant tetrahedron.
pub fn check_tetrahedron(dp: &DelzantPolytope) -> Result<Report> {
    check_tetrahedron_with(dp, &dp.localizer().choose_generic())
}

pub fn check_tetrahedron_with(dp: &DelzantPolytope, u: &GenericVector) -> Result<Report> {
    if dp.dim() != 3 || dp.num_facets() != 4 {
        return Err(Error::Shape(format!(
            "tetrahedron check needs a 3-polytope with 4 facets, got dimension {} with {} facets",
            dp.dim(),
            dp.num_facets()
        )));
    }
    let counts = dp.counts()?;
    let lhs = pick_rhs_3d(&counts)?;
    let volume = dp.simple().volume();
    let offsets: i64 = dp.polytope().offsets().iter().sum();
    let rhs = &volume - rat(offsets, 3);
    let sig = twisted_genus(dp, GenusKind::SignatureHalf, u)?;
    Ok(Report::new("tetrahedron", dp.name(), lhs, rhs)
        .with("volume", r(&volume))
        .with("offset_sum", offsets)
        .with("interior", counts.relint_by_dim(3))
        .with("facet_interiors", counts.relint_by_dim(2))
        .with("edge_interiors", counts.relint_by_dim(1))
        .with("vertices", counts.relint_by_dim(0))
        .with("twisted_signature", r(&sig))
        .with_vectors(&[u]))
}

/// Per-face record of the twisted Todd genus of the face's toric submanifold.
#[derive(Clone, Debug, PartialEq)]
pub struct FaceTodd {
    pub facet_set: Vec<usize>,
    pub dim: usize,
    pub todd: Rational,
    pub count: u64,
}

pub fn face_todd_table(dp: &DelzantPolytope) -> Result<Vec<FaceTodd>> {
    let counts = dp.counts()?;
    let faces = dp.simple().faces();
    faces
        .faces()
        .iter()
        .enumerate()
        .map(|(id, f)| {
            let todd = if f.dim == 0 {
                Rational::from_integer(1.into())
            } else if f.dim == dp.dim() {
                twisted_todd(dp)?
            } else {
                let chart = dp.simple().induce_face_polytope(id)?;
                twisted_todd(&DelzantPolytope::new(chart.polytope)?)?
            };
            Ok(FaceTodd { facet_set: f.facet_set.clone(), dim: f.dim, todd, count: counts.faces[id].closed })
        })
        .collect()
}

/// Every face: twisted Todd genus of `M_F` equals `#(F ∩ Z^n)`. The report's
/// sides are the number of matching faces and the number of faces.
pub fn check_face_todd(dp: &DelzantPolytope) -> Result<Report> {
    let table = face_todd_table(dp)?;
    let matching = table.iter().filter(|f| f.todd == rat_int(f.count)).count();
    let n = dp.dim();
    let weighted = |vals: &dyn Fn(&FaceTodd) -> Rational| -> Rational {
        table.iter().map(|f| rat(-1, 2).pow((n - f.dim) as i32) * vals(f)).sum()
    };
    let todd_sum = weighted(&|f| f.todd.clone());
    let count_sum = weighted(&|f| rat_int(f.count));
    let rows: Vec<Value> = table
        .iter()
        .map(|f| json!({ "facets": f.facet_set.iter().map(|i| i + 1).collect::<Vec<_>>(), "dim": f.dim, "todd": r(&f.todd), "count": f.count }))
        .collect();
    Ok(Report::new("face-todd", dp.name(), rat_int(matching), rat_int(table.len()))
        .with("faces", rows)
        .with("weighted_todd_sum", r(&todd_sum))
        .with("weighted_count_sum", r(&count_sum)))
}

/// Evaluates every integral the checks use at two generic vectors. The
/// report's sides are the number of agreeing quantities and the total.
pub fn check_u_independence(dp: &DelzantPolytope) -> Result<Report> {
    let (u, u2) = dp.localizer().generic_pair();
    let mut rows = Vec::new();
    let mut push = |name: String, a: Rational, b: Rational| {
        rows.push((name, a, b));
    };
    for kind in [GenusKind::Todd, GenusKind::SignatureHalf] {
        push(format!("twisted {kind:?}"), twisted_genus(dp, kind, &u)?, twisted_genus(dp, kind, &u2)?);
        push(format!("untwisted {kind:?}"), untwisted_genus(dp, kind, &u)?, untwisted_genus(dp, kind, &u2)?);
    }
    push("kahler volume".into(), kahler_volume(dp, &u)?, kahler_volume(dp, &u2)?);
    for w in partitions(dp.dim()) {
        let a = dp.localizer().chern_number_at(&w, &u)?;
        let b = dp.localizer().chern_number_at(&w, &u2)?;
        push(format!("c{w}"), a.symmetric_route, b.symmetric_route);
    }
    let agreeing = rows.iter().filter(|(_, a, b)| a == b).count();
    let detail: Vec<Value> =
        rows.iter().map(|(name, a, b)| json!({ "quantity": name, "first": r(a), "second": r(b) })).collect();
    Ok(Report::new("u-independence", dp.name(), rat_int(agreeing), rat_int(rows.len()))
        .with("quantities", detail)
        .with_vectors(&[&u, &u2]))
}
