//! Lattice polytopes given by inequalities `<x, normal_i> >= offset_i`.
//!
//! Vertices are always derived from the H-representation. A
//! [`SimplePolytope`] bundles the validated input with its vertex charts and
//! face lattice so the downstream modules do not re-enumerate.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    cofactor_vector, det, dot, gcd_all, hermite_normal_form, inverse_unimodular, rat_int, rational_det, rational_rank,
    solve_rational, IntMatrix, Rational,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Facet {
    pub fn new(normal: impl Into<Vec<i64>>, offset: i64) -> Self {
        Self { normal: normal.into(), offset }
    }

    pub fn normal_big(&self) -> Vec<BigInt> {
        self.normal.iter().map(|&v| BigInt::from(v)).collect()
    }
}

/// `{x in R^n : <x, normal_i> >= offset_i}` with primitive integer normals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolytope {
    dim: usize,
    facets: Vec<Facet>,
    name: Option<String>,
}

impl HPolytope {
    /// Checks the syntactic invariants (dimension, primitivity, duplicates).
    /// Boundedness, simplicity and irredundancy need vertex enumeration and
    /// are checked by [`SimplePolytope::new`].
    pub fn new(dim: usize, facets: Vec<Facet>, name: Option<String>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidPolytope("dimension must be at least 1".into()));
        }
        let mut seen = HashSet::new();
        for (i, f) in facets.iter().enumerate() {
            if f.normal.len() != dim {
                return Err(Error::InvalidPolytope(format!(
                    "facet {i}: normal has length {}, expected {dim}",
                    f.normal.len()
                )));
            }
            let g = gcd_all(&f.normal_big());
            if g.is_zero() {
                return Err(Error::InvalidPolytope(format!("facet {i}: zero normal")));
            }
            if !g.is_one() {
                return Err(Error::InvalidPolytope(format!(
                    "facet {i}: normal {:?} is not primitive (gcd {g})",
                    f.normal
                )));
            }
            if !seen.insert(f.clone()) {
                return Err(Error::InvalidPolytope(format!("facet {i} duplicates an earlier facet")));
            }
        }
        if facets.len() < dim + 1 {
            return Err(Error::Unbounded(format!(
                "{} facets cannot bound a polytope in dimension {dim}",
                facets.len()
            )));
        }
        Ok(Self { dim, facets, name })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn facet(&self, i: usize) -> &Facet {
        &self.facets[i]
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn offsets(&self) -> Vec<i64> {
        self.facets.iter().map(|f| f.offset).collect()
    }

    /// Image under the lattice map `x -> g x + t` (`g` unimodular).
    pub fn transformed(&self, g: &IntMatrix, t: &[i64]) -> Result<Self> {
        if g.rows() != self.dim || t.len() != self.dim {
            return Err(Error::Dimension("transform does not match polytope dimension".into()));
        }
        let g_inv_t = inverse_unimodular(g)?.transpose();
        let t_big: Vec<BigInt> = t.iter().map(|&v| BigInt::from(v)).collect();
        let facets = self
            .facets
            .iter()
            .map(|f| {
                let normal = g_inv_t.mul_vec(&f.normal_big())?;
                let offset = BigInt::from(f.offset) + dot(&t_big, &normal);
                Ok(Facet { normal: normal.iter().map(to_i64).collect::<Result<_>>()?, offset: to_i64(&offset)? })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.dim, facets, self.name.clone())
    }

    /// Shifts by the lattice vector `t`: `offset_i -> offset_i + <t, normal_i>`.
    pub fn translated(&self, t: &[i64]) -> Result<Self> {
        self.transformed(&IntMatrix::identity(self.dim), t)
    }

    fn slack(&self, i: usize, x: &[Rational]) -> Rational {
        let f = &self.facets[i];
        let lhs: Rational = f.normal.iter().zip(x).map(|(&a, v)| v * rat_int(a)).sum();
        lhs - rat_int(f.offset)
    }
}

pub(crate) fn to_i64(v: &BigInt) -> Result<i64> {
    v.to_i64().ok_or_else(|| Error::InvalidPolytope(format!("integer {v} does not fit in 64 bits")))
}

pub(crate) fn format_point(x: &[Rational]) -> String {
    format!("({})", x.iter().map(|v| v.to_string()).join(", "))
}

/// Local data at a vertex: the incident facets in ascending order, the
/// matrix whose columns are their normals, and its inverse when unimodular.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexChart {
    pub vertex: Vec<Rational>,
    pub facets: Vec<usize>,
    pub lambda: IntMatrix,
    pub det: BigInt,
    /// Rows are the edge/weight vectors `mu_{p,i}`; `None` when `|det| != 1`.
    pub mu: Option<IntMatrix>,
}

impl VertexChart {
    pub fn is_unimodular(&self) -> bool {
        self.det.abs().is_one()
    }

    pub fn is_integral(&self) -> bool {
        self.vertex.iter().all(|v| v.is_integer())
    }

    pub fn integral_vertex(&self) -> Option<Vec<BigInt>> {
        self.is_integral().then(|| self.vertex.iter().map(|v| v.to_integer()).collect())
    }

    /// Position of `facet` among the incident facets.
    pub fn local_index(&self, facet: usize) -> Option<usize> {
        self.facets.binary_search(&facet).ok()
    }

    pub fn mu_row(&self, facet: usize) -> Option<&[BigInt]> {
        let j = self.local_index(facet)?;
        self.mu.as_ref().map(|m| m.row(j))
    }
}

impl fmt::Display for VertexChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_point(&self.vertex))
    }
}

/// Recession-cone test. The normals must span `R^n`, and no extreme ray of
/// `{d : <d, normal_i> >= 0}` may exist; extreme rays are cut out by `n - 1`
/// independent tight normals.
pub fn check_bounded(p: &HPolytope) -> Result<()> {
    let n = p.dim();
    let normals: Vec<Vec<BigInt>> = p.facets().iter().map(Facet::normal_big).collect();
    let as_rat: Vec<Vec<Rational>> = normals.iter().map(|v| v.iter().map(|x| rat_int(x.clone())).collect()).collect();
    if rational_rank(&as_rat) < n {
        return Err(Error::Unbounded("facet normals do not span the ambient space".into()));
    }
    for subset in (0..p.num_facets()).combinations(n - 1) {
        let vs: Vec<Vec<BigInt>> = subset.iter().map(|&i| normals[i].clone()).collect();
        let d = cofactor_vector(&vs, n)?;
        if d.iter().all(Zero::is_zero) {
            continue;
        }
        for sign in [1, -1] {
            let dir: Vec<BigInt> = d.iter().map(|x| x * sign).collect();
            if normals.iter().all(|nv| !dot(nv, &dir).is_negative()) {
                return Err(Error::Unbounded(format!(
                    "recession direction ({})",
                    dir.iter().map(|v| v.to_string()).join(", ")
                )));
            }
        }
    }
    Ok(())
}

/// All vertices with their charts, in lexicographic order of facet subsets.
/// Also validates boundedness, simplicity, full dimension and irredundancy.
pub fn enumerate_vertices(p: &HPolytope) -> Result<Vec<VertexChart>> {
    check_bounded(p)?;
    let n = p.dim();
    let m = p.num_facets();
    let mut charts = Vec::new();
    let mut seen: HashSet<Vec<Rational>> = HashSet::new();
    for subset in (0..m).combinations(n) {
        let columns: Vec<Vec<BigInt>> = subset.iter().map(|&i| p.facet(i).normal_big()).collect();
        let lambda = IntMatrix::from_columns(&columns)?;
        let d = det(&lambda)?;
        if d.is_zero() {
            continue;
        }
        let rhs: Vec<BigInt> = subset.iter().map(|&i| BigInt::from(p.facet(i).offset)).collect();
        let x = solve_rational(&lambda.transpose(), &rhs)?;
        let mut feasible = true;
        let mut extra_tight = Vec::new();
        for j in (0..m).filter(|j| !subset.contains(j)) {
            let s = p.slack(j, &x);
            if s.is_negative() {
                feasible = false;
                break;
            }
            if s.is_zero() {
                extra_tight.push(j);
            }
        }
        if !feasible {
            continue;
        }
        if !extra_tight.is_empty() {
            let mut facets = subset.clone();
            facets.extend(extra_tight);
            facets.sort_unstable();
            return Err(Error::NotSimple { vertex: format_point(&x), facets });
        }
        if !seen.insert(x.clone()) {
            continue;
        }
        let mu = if d.abs().is_one() { Some(inverse_unimodular(&lambda)?) } else { None };
        charts.push(VertexChart { vertex: x, facets: subset, lambda, det: d, mu });
    }
    if charts.is_empty() {
        return Err(Error::Empty);
    }
    if affine_rank(charts.iter().map(|c| &c.vertex)) < n {
        return Err(Error::InvalidPolytope("polytope is not full-dimensional".into()));
    }
    for i in 0..m {
        let on_facet = charts.iter().filter(|c| c.facets.contains(&i)).map(|c| &c.vertex);
        if affine_rank(on_facet) + 1 < n || !charts.iter().any(|c| c.facets.contains(&i)) {
            return Err(Error::RedundantFacet { facet: i });
        }
    }
    Ok(charts)
}

fn affine_rank<'a>(points: impl Iterator<Item = &'a Vec<Rational>>) -> usize {
    let pts: Vec<&Vec<Rational>> = points.collect();
    let Some((first, rest)) = pts.split_first() else {
        return 0;
    };
    let diffs: Vec<Vec<Rational>> =
        rest.iter().map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect()).collect();
    rational_rank(&diffs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DelzantVerdict {
    Delzant,
    NotDelzant { vertex: Vec<Rational>, det: BigInt },
}

impl DelzantVerdict {
    pub fn is_delzant(&self) -> bool {
        matches!(self, DelzantVerdict::Delzant)
    }
}

pub fn is_delzant(p: &HPolytope) -> Result<DelzantVerdict> {
    Ok(delzant_verdict(&enumerate_vertices(p)?))
}

fn delzant_verdict(charts: &[VertexChart]) -> DelzantVerdict {
    match charts.iter().find(|c| !c.is_unimodular()) {
        Some(c) => DelzantVerdict::NotDelzant { vertex: c.vertex.clone(), det: c.det.clone() },
        None => DelzantVerdict::Delzant,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub facet_set: Vec<usize>,
    pub dim: usize,
    pub vertices: Vec<usize>,
}

impl Face {
    pub fn is_vertex(&self) -> bool {
        self.dim == 0
    }
}

/// Faces of a simple polytope, sorted by dimension and then by vertex set.
/// `P` itself is the last face.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    dim: usize,
    faces: Vec<Face>,
    by_dim: Vec<Vec<usize>>,
    by_facets: BTreeMap<Vec<usize>, usize>,
    closure: Vec<Vec<usize>>,
    f_vector: Vec<u64>,
}

impl FaceLattice {
    pub fn from_charts(dim: usize, charts: &[VertexChart]) -> Result<Self> {
        let mut vertex_sets: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (vi, chart) in charts.iter().enumerate() {
            for k in 0..=chart.facets.len() {
                for s in chart.facets.iter().copied().combinations(k) {
                    vertex_sets.entry(s).or_default().push(vi);
                }
            }
        }
        // Keyed by vertex set; the facet set must be recovered exactly from it.
        let mut keyed: BTreeMap<(usize, Vec<usize>), Vec<usize>> = BTreeMap::new();
        for (facet_set, vertices) in vertex_sets {
            let common: BTreeSet<usize> = vertices
                .iter()
                .map(|&v| charts[v].facets.iter().copied().collect::<BTreeSet<_>>())
                .reduce(|a, b| a.intersection(&b).copied().collect())
                .unwrap_or_default();
            if common.into_iter().collect::<Vec<_>>() != facet_set {
                let vertex = format_point(&charts[vertices[0]].vertex);
                return Err(Error::NotSimple { vertex, facets: facet_set });
            }
            if facet_set.len() > dim {
                return Err(Error::NotSimple { vertex: format_point(&charts[vertices[0]].vertex), facets: facet_set });
            }
            let face_dim = dim - facet_set.len();
            if keyed.insert((face_dim, vertices.clone()), facet_set).is_some() {
                return Err(Error::NotSimple { vertex: format_point(&charts[vertices[0]].vertex), facets: vec![] });
            }
        }
        let faces: Vec<Face> =
            keyed.into_iter().map(|((dim, vertices), facet_set)| Face { facet_set, dim, vertices }).collect();
        let mut by_dim = vec![Vec::new(); dim + 1];
        let mut by_facets = BTreeMap::new();
        for (id, f) in faces.iter().enumerate() {
            by_dim[f.dim].push(id);
            by_facets.insert(f.facet_set.clone(), id);
        }
        let closure = faces
            .iter()
            .map(|outer| {
                faces
                    .iter()
                    .enumerate()
                    .filter(|(_, inner)| outer.facet_set.iter().all(|i| inner.facet_set.contains(i)))
                    .map(|(id, _)| id)
                    .collect()
            })
            .collect();
        let f_vector = by_dim.iter().map(|v| v.len() as u64).collect();
        Ok(Self { dim, faces, by_dim, by_facets, closure, f_vector })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> &Face {
        &self.faces[id]
    }

    pub fn faces_of_dim(&self, k: usize) -> &[usize] {
        &self.by_dim[k]
    }

    pub fn find(&self, facet_set: &[usize]) -> Option<usize> {
        self.by_facets.get(facet_set).copied()
    }

    /// The whole polytope.
    pub fn top(&self) -> usize {
        self.by_dim[self.dim][0]
    }

    /// Every face `G <= F`, including `F` itself.
    pub fn closure(&self, id: usize) -> &[usize] {
        &self.closure[id]
    }

    /// Codimension-one faces of `F`.
    pub fn facets_of(&self, id: usize) -> Vec<usize> {
        let d = self.faces[id].dim;
        if d == 0 {
            return Vec::new();
        }
        self.closure[id].iter().copied().filter(|&g| self.faces[g].dim + 1 == d).collect()
    }

    pub fn f_vector(&self) -> &[u64] {
        &self.f_vector
    }
}

/// h-vector `(h_0, ..., h_n)` of a simple polytope: `h_P(t) = sum f_i (t-1)^i`
/// with `h_k` the coefficient of `t^(n-k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HVector {
    pub h: Vec<BigInt>,
}

impl HVector {
    pub fn dim(&self) -> usize {
        self.h.len() - 1
    }

    /// Coefficients of `h_P(t)` in ascending powers of `t`.
    pub fn polynomial(&self) -> Vec<BigInt> {
        self.h.iter().rev().cloned().collect()
    }

    pub fn evaluate(&self, t: &BigInt) -> BigInt {
        self.polynomial().iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    pub fn is_palindromic(&self) -> bool {
        self.h.iter().eq(self.h.iter().rev())
    }
}

pub fn h_vector(fl: &FaceLattice) -> HVector {
    let n = fl.dim();
    let f = fl.f_vector();
    // coefficient of t^j in sum_i f_i (t - 1)^i
    let coeff = |j: usize| -> BigInt {
        (j..=n)
            .map(|i| {
                let c = BigInt::from(f[i]) * binomial(i, j);
                if (i - j).is_multiple_of(2) {
                    c
                } else {
                    -c
                }
            })
            .sum()
    };
    HVector { h: (0..=n).map(|k| coeff(n - k)).collect() }
}

pub fn signature_from_h(h: &HVector) -> Rational {
    let s: BigInt = h.h.iter().enumerate().map(|(k, v)| if k % 2 == 0 { v.clone() } else { -v }).sum();
    rat_int(s)
}

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

pub(crate) fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Face `F` re-expressed in its own lattice chart: `x = base + basis^T y`
/// for `y` in `Z^k`. Lattice points of `F` and of `polytope` correspond.
#[derive(Clone, Debug)]
pub struct FaceChart {
    pub polytope: HPolytope,
    pub base: Vec<BigInt>,
    /// `k x n`; rows form a basis of the direction lattice of `F`.
    pub basis: IntMatrix,
    /// Original facet index of each facet of `polytope`.
    pub facet_map: Vec<usize>,
}

/// A validated simple polytope with its vertex charts and face lattice.
#[derive(Clone, Debug)]
pub struct SimplePolytope {
    polytope: HPolytope,
    charts: Vec<VertexChart>,
    faces: FaceLattice,
}

impl SimplePolytope {
    pub fn new(polytope: HPolytope) -> Result<Self> {
        let charts = enumerate_vertices(&polytope)?;
        let faces = FaceLattice::from_charts(polytope.dim(), &charts)?;
        Ok(Self { polytope, charts, faces })
    }

    /// Like [`SimplePolytope::new`] but also requires `|det| = 1` at every vertex.
    pub fn delzant(polytope: HPolytope) -> Result<Self> {
        let s = Self::new(polytope)?;
        if let DelzantVerdict::NotDelzant { vertex, det } = s.delzant_verdict() {
            return Err(Error::NotDelzant { vertex: format_point(&vertex), det });
        }
        Ok(s)
    }

    pub fn polytope(&self) -> &HPolytope {
        &self.polytope
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }

    pub fn num_facets(&self) -> usize {
        self.polytope.num_facets()
    }

    pub fn charts(&self) -> &[VertexChart] {
        &self.charts
    }

    pub fn faces(&self) -> &FaceLattice {
        &self.faces
    }

    pub fn delzant_verdict(&self) -> DelzantVerdict {
        delzant_verdict(&self.charts)
    }

    pub fn h_vector(&self) -> HVector {
        h_vector(&self.faces)
    }

    /// Euclidean volume from a pulling triangulation: each face is coned
    /// from its lowest-indexed vertex over the triangulations of the faces
    /// of codimension one that miss that vertex.
    pub fn volume(&self) -> Rational {
        let n = self.dim();
        let top = self.faces.top();
        let total: Rational = self
            .triangulate(top)
            .iter()
            .map(|simplex| {
                let apex = &self.charts[simplex[0]].vertex;
                let rows: Vec<Vec<Rational>> = simplex[1..]
                    .iter()
                    .map(|&v| self.charts[v].vertex.iter().zip(apex).map(|(a, b)| a - b).collect())
                    .collect();
                rational_det(&rows).abs()
            })
            .sum();
        total / rat_int(factorial(n))
    }

    /// Simplices (as vertex-index lists) triangulating the face.
    pub fn triangulate(&self, face: usize) -> Vec<Vec<usize>> {
        let f = self.faces.face(face);
        if f.dim == 0 {
            return vec![vec![f.vertices[0]]];
        }
        let apex = f.vertices[0];
        self.faces
            .facets_of(face)
            .into_iter()
            .filter(|&g| !self.faces.face(g).vertices.contains(&apex))
            .flat_map(|g| self.triangulate(g))
            .map(|mut s| {
                s.insert(0, apex);
                s
            })
            .collect()
    }

    /// Writes a proper face of positive dimension as a lattice polytope in
    /// its own coordinates. The base point is the face's first vertex; the
    /// direction lattice is spanned by the edge vectors leaving it along the
    /// face, put into Hermite normal form.
    pub fn induce_face_polytope(&self, face: usize) -> Result<FaceChart> {
        let f = self.faces.face(face);
        let n = self.dim();
        if f.dim == 0 || f.dim == n {
            return Err(Error::Dimension(format!(
                "face induction needs a proper face of positive dimension, got dimension {}",
                f.dim
            )));
        }
        let chart = &self.charts[f.vertices[0]];
        let mu =
            chart.mu.as_ref().ok_or_else(|| Error::NotDelzant { vertex: chart.to_string(), det: chart.det.clone() })?;
        let base = chart
            .integral_vertex()
            .ok_or_else(|| Error::InvalidPolytope(format!("vertex {chart} is not a lattice point")))?;
        let free: Vec<usize> =
            chart.facets.iter().enumerate().filter(|(_, i)| !f.facet_set.contains(i)).map(|(j, _)| j).collect();
        let rows: Vec<BigInt> = free.iter().flat_map(|&j| mu.row(j).to_vec()).collect();
        let basis = hermite_normal_form(&IntMatrix::new(free.len(), n, rows)?);
        let mut facets = Vec::new();
        let mut facet_map = Vec::new();
        for (j, facet) in self.polytope.facets().iter().enumerate() {
            if f.facet_set.contains(&j) {
                continue;
            }
            let mut s = f.facet_set.clone();
            s.push(j);
            s.sort_unstable();
            if self.faces.find(&s).is_none() {
                continue;
            }
            let lambda = facet.normal_big();
            let normal = basis.mul_vec(&lambda)?;
            let offset = BigInt::from(facet.offset) - dot(&base, &lambda);
            facets.push(Facet { normal: normal.iter().map(to_i64).collect::<Result<_>>()?, offset: to_i64(&offset)? });
            facet_map.push(j);
        }
        let name = format!("{}/face{:?}", self.polytope.name().unwrap_or("P"), f.facet_set);
        let polytope = HPolytope::new(f.dim, facets, Some(name))?;
        Ok(FaceChart { polytope, base, basis, facet_map })
    }
}
