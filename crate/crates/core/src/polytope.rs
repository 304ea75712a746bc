//! Delzant polytopes: validation, face lattice, primitive sets, dual cones,
//! centroids and the lattice of relations among the normals.

use crate::error::{Error, Result};
use crate::rational::{
    det, dot_int_rat, gcd_all, int, integer_kernel, solve_rat, to_i64, unimodular_inverse, Rat,
};
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A face, identified by the sorted set of facets containing it. The empty set is the polytope.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FaceId(pub Vec<usize>);

impl FaceId {
    pub fn contains_facet(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    /// True when `self` is a subface of `other` (lies on every facet of `other`).
    pub fn is_subface_of(&self, other: &FaceId) -> bool {
        other.0.iter().all(|i| self.contains_facet(*i))
    }
}

impl fmt::Display for FaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "Δ");
        }
        let parts: Vec<String> = self.0.iter().map(|i| format!("D{}", i + 1)).collect();
        write!(f, "{}", parts.join("∩"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub support: Rat,
    pub label: Option<String>,
}

#[derive(Debug, Clone)]
pub struct Vertex {
    pub point: Vec<Rat>,
    /// The `n` facets through the vertex, sorted.
    pub facets: Vec<usize>,
    /// Inverse of the matrix whose columns are the normals of `facets`.
    inverse: Vec<Vec<i64>>,
}

impl Vertex {
    /// Coefficients of `v` in the basis of normals at this vertex, aligned with `facets`.
    pub fn coords(&self, v: &[i64]) -> Vec<i64> {
        self.inverse
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Edge directions leaving the vertex: the `j`-th leaves facet `facets[j]`.
    pub fn edge_directions(&self) -> Vec<Vec<i64>> {
        let n = self.facets.len();
        (0..n).map(|j| (0..n).map(|r| -self.inverse[j][r]).collect()).collect()
    }
}

#[derive(Debug, Clone)]
pub struct Face {
    pub id: FaceId,
    pub dim: usize,
    /// Indices into the polytope's vertex list, ascending.
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct DelzantPolytope {
    pub name: String,
    pub dim: usize,
    pub facets: Vec<Facet>,
    /// Sorted lexicographically by coordinates.
    pub vertices: Vec<Vertex>,
    pub faces: BTreeMap<FaceId, Face>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct H2Class {
    pub pairings: Vec<i64>,
}

impl H2Class {
    pub fn omega(&self, p: &DelzantPolytope) -> Rat {
        p.facets
            .iter()
            .zip(&self.pairings)
            .map(|(f, a)| &f.support * int(*a))
            .sum()
    }

    pub fn c1(&self) -> i64 {
        self.pairings.iter().sum()
    }
}

#[derive(Debug, Clone)]
pub struct PrimitiveSet {
    pub indices: Vec<usize>,
    /// Facets `j` with coefficients `c_j > 0` such that `Σ_I η_i = Σ c_j η_j`.
    pub complement: BTreeMap<usize, i64>,
    pub beta: H2Class,
    pub c1: i64,
    pub omega: Rat,
}

impl fmt::Display for PrimitiveSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn rank(rows: &[Vec<i64>], n: usize) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for j in 0..n {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

fn fmt_set(s: &[usize]) -> String {
    let parts: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

impl DelzantPolytope {
    /// Validates raw facet data and builds vertices and the face lattice.
    pub fn new(name: &str, dim: usize, facets: Vec<Facet>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Malformed("dimension must be at least 1".into()));
        }
        for (i, f) in facets.iter().enumerate() {
            if f.normal.len() != dim {
                return Err(Error::Malformed(format!(
                    "normal of facet {} has length {}, expected {dim}",
                    i + 1,
                    f.normal.len()
                )));
            }
            if gcd_all(&f.normal) != 1 {
                return Err(Error::NonPrimitiveNormal(i));
            }
        }
        let normals: Vec<Vec<i64>> = facets.iter().map(|f| f.normal.clone()).collect();
        if facets.len() < dim + 1 || rank(&normals, dim) < dim {
            return Err(Error::Unbounded);
        }

        // Candidate vertices: solutions of n tight constraints with independent normals.
        let mut points: BTreeMap<Vec<Rat>, BTreeSet<usize>> = BTreeMap::new();
        for subset in combinations(facets.len(), dim) {
            let m: Vec<Vec<i64>> = subset.iter().map(|&i| normals[i].clone()).collect();
            if det(&m) == 0 {
                continue;
            }
            let mr: Vec<Vec<Rat>> = m.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
            let b: Vec<Rat> = subset.iter().map(|&i| facets[i].support.clone()).collect();
            let x = solve_rat(&mr, &b).expect("nonsingular");
            let mut tight = BTreeSet::new();
            let mut feasible = true;
            for (i, f) in facets.iter().enumerate() {
                let val = dot_int_rat(&f.normal, &x);
                if val > f.support {
                    feasible = false;
                    break;
                }
                if val == f.support {
                    tight.insert(i);
                }
            }
            if feasible {
                points.insert(x, tight);
            }
        }
        if points.is_empty() {
            return Err(Error::NotFullDimensional);
        }

        let mut vertices = Vec::new();
        for (point, tight) in points {
            let fs: Vec<usize> = tight.into_iter().collect();
            if fs.len() > dim {
                return Err(Error::NotSimple(fmt_set(&fs)));
            }
            // Columns are the normals at the vertex.
            let cols: Vec<Vec<i64>> = (0..dim).map(|r| fs.iter().map(|&i| normals[i][r]).collect()).collect();
            let d = det(&cols);
            let inverse = unimodular_inverse(&cols)
                .ok_or_else(|| Error::NotSmooth { facets: fmt_set(&fs), det: d })?;
            vertices.push(Vertex { point, facets: fs, inverse });
        }

        // Every edge leaving a vertex must end at another constraint.
        for v in &vertices {
            for d in v.edge_directions() {
                let bounded = facets
                    .iter()
                    .enumerate()
                    .any(|(i, f)| !v.facets.contains(&i) && f.normal.iter().zip(&d).map(|(a, b)| a * b).sum::<i64>() > 0);
                if !bounded {
                    return Err(Error::Unbounded);
                }
            }
        }
        for i in 0..facets.len() {
            if !vertices.iter().any(|v| v.facets.contains(&i)) {
                return Err(Error::RedundantFacet(i));
            }
        }

        let mut faces: BTreeMap<FaceId, Face> = BTreeMap::new();
        for (vi, v) in vertices.iter().enumerate() {
            for mask in 0u32..(1 << dim) {
                let ids: Vec<usize> = (0..dim).filter(|j| mask & (1 << j) != 0).map(|j| v.facets[j]).collect();
                let id = FaceId(ids);
                let dimf = dim - id.0.len();
                faces
                    .entry(id.clone())
                    .or_insert_with(|| Face { id, dim: dimf, vertices: Vec::new() })
                    .vertices
                    .push(vi);
            }
        }
        let p = DelzantPolytope { name: name.to_string(), dim, facets, vertices, faces };
        for f in 0..p.facets.len() {
            if p.faces[&FaceId(vec![f])].dim + 1 != dim {
                return Err(Error::RedundantFacet(f));
            }
        }
        Ok(p)
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn normals(&self) -> Vec<Vec<i64>> {
        self.facets.iter().map(|f| f.normal.clone()).collect()
    }

    pub fn label(&self, i: usize) -> String {
        self.facets[i].label.clone().unwrap_or_else(|| format!("D{}", i + 1))
    }

    pub fn face(&self, id: &FaceId) -> Result<&Face> {
        self.faces.get(id).ok_or_else(|| Error::UnknownFace(id.to_string()))
    }

    /// Whether the facets in `set` have a common point.
    pub fn intersects(&self, set: &[usize]) -> bool {
        let mut s = set.to_vec();
        s.sort_unstable();
        s.dedup();
        self.faces.contains_key(&FaceId(s))
    }

    /// Faces of dimension `dim - 1` inside `face`.
    pub fn facets_of_face(&self, face: &FaceId) -> Vec<FaceId> {
        (0..self.facets.len())
            .filter(|i| !face.contains_facet(*i))
            .filter_map(|i| {
                let mut s = face.0.clone();
                s.push(i);
                s.sort_unstable();
                let id = FaceId(s);
                self.faces.contains_key(&id).then_some(id)
            })
            .collect()
    }

    /// All primitive sets, by increasing size, with their relation data.
    pub fn primitive_sets(&self) -> Result<Vec<PrimitiveSet>> {
        let n = self.facets.len();
        let mut out = Vec::new();
        for k in 2..=n {
            for set in combinations(n, k) {
                if self.intersects(&set) {
                    continue;
                }
                let proper_ok = (0..k).all(|skip| {
                    let sub: Vec<usize> = set.iter().enumerate().filter(|(j, _)| *j != skip).map(|(_, &i)| i).collect();
                    self.intersects(&sub)
                });
                if !proper_ok {
                    continue;
                }
                let mut sum = vec![0i64; self.dim];
                for &i in &set {
                    for (s, x) in sum.iter_mut().zip(&self.facets[i].normal) {
                        *s += x;
                    }
                }
                let (_, coeffs) = self.dual_cone_face(&sum);
                let mut complement = BTreeMap::new();
                for (j, c) in coeffs {
                    let c = to_i64(&c).ok_or_else(|| Error::NonIntegralCoefficient(fmt_set(&set)))?;
                    complement.insert(j, c);
                }
                debug_assert!(set.iter().all(|i| !complement.contains_key(i)));
                let mut pairings = vec![0i64; n];
                for &i in &set {
                    pairings[i] = 1;
                }
                for (&j, &c) in &complement {
                    pairings[j] -= c;
                }
                let beta = H2Class { pairings };
                let omega = beta.omega(self);
                if !omega.is_positive() {
                    return Err(Error::NonPositiveEnergy(fmt_set(&set)));
                }
                let c1 = beta.c1();
                out.push(PrimitiveSet { indices: set, complement, beta, c1, omega });
            }
        }
        Ok(out)
    }

    /// The unique face whose dual cone contains `v`, with the positive coefficients
    /// expressing `v` in the normals of that face.
    pub fn dual_cone_face(&self, v: &[i64]) -> (FaceId, BTreeMap<usize, Rat>) {
        for vert in &self.vertices {
            let a = vert.coords(v);
            if a.iter().all(|&x| x >= 0) {
                let mut coeffs = BTreeMap::new();
                for (j, &x) in a.iter().enumerate() {
                    if x > 0 {
                        coeffs.insert(vert.facets[j], int(x));
                    }
                }
                let id = FaceId(coeffs.keys().copied().collect());
                return (id, coeffs);
            }
        }
        unreachable!("the normal fan of a bounded polytope is complete")
    }

    /// A basis of `{a ∈ ℤ^N : Σ a_i η_i = 0}`.
    pub fn h2_lattice(&self) -> Vec<H2Class> {
        let rows: Vec<Vec<i64>> = (0..self.dim).map(|r| self.facets.iter().map(|f| f.normal[r]).collect()).collect();
        integer_kernel(&rows, self.facets.len())
            .into_iter()
            .map(|pairings| H2Class { pairings })
            .collect()
    }

    /// Simplices (as vertex index lists) triangulating `face`, coning from least vertices.
    fn triangulate(&self, face: &FaceId) -> Vec<Vec<usize>> {
        let f = &self.faces[face];
        if f.dim == 0 {
            return vec![vec![f.vertices[0]]];
        }
        let apex = f.vertices[0];
        let mut out = Vec::new();
        for sub in self.facets_of_face(face) {
            if self.faces[&sub].vertices.contains(&apex) {
                continue;
            }
            for mut s in self.triangulate(&sub) {
                s.push(apex);
                out.push(s);
            }
        }
        out
    }

    /// Exact barycenter of the polytope.
    pub fn centroid(&self) -> Vec<Rat> {
        let n = self.dim;
        let mut total = Rat::zero();
        let mut acc = vec![Rat::zero(); n];
        for simplex in self.triangulate(&FaceId(vec![])) {
            let base = &self.vertices[simplex[0]].point;
            let m: Vec<Vec<Rat>> = simplex[1..]
                .iter()
                .map(|&v| (0..n).map(|k| &self.vertices[v].point[k] - &base[k]).collect())
                .collect();
            let vol = rat_det(m).abs();
            for k in 0..n {
                let s: Rat = simplex.iter().map(|&v| self.vertices[v].point[k].clone()).sum();
                acc[k] += &vol * s / int(n as i64 + 1);
            }
            total += vol;
        }
        acc.into_iter().map(|x| x / &total).collect()
    }

    /// Translates so that the centroid is the origin.
    pub fn normalize(&self) -> Result<DelzantPolytope> {
        let c = self.centroid();
        let facets = self
            .facets
            .iter()
            .map(|f| Facet {
                normal: f.normal.clone(),
                support: &f.support - dot_int_rat(&f.normal, &c),
                label: f.label.clone(),
            })
            .collect();
        DelzantPolytope::new(&self.name, self.dim, facets)
    }

    pub fn is_normalized(&self) -> bool {
        self.centroid().iter().all(|x| x.is_zero())
    }

    /// Betti numbers (by complex degree) from counting descending edges at each vertex.
    pub fn morse_betti(&self, xi: &[i64]) -> Result<Vec<usize>> {
        self.face_betti(&FaceId(vec![]), xi)
    }

    /// Betti numbers of the toric submanifold over `face`, by index counting inside the face.
    pub fn face_betti(&self, face: &FaceId, xi: &[i64]) -> Result<Vec<usize>> {
        let f = self.face(face)?;
        let mut betti = vec![0usize; f.dim + 1];
        for &vi in &f.vertices {
            let v = &self.vertices[vi];
            let mut down = 0;
            for (j, d) in v.edge_directions().iter().enumerate() {
                if face.contains_facet(v.facets[j]) {
                    continue;
                }
                let slope: i64 = xi.iter().zip(d).map(|(a, b)| a * b).sum();
                if slope == 0 {
                    return Err(Error::NonGenericVector(format!("{xi:?}")));
                }
                if slope < 0 {
                    down += 1;
                }
            }
            betti[down] += 1;
        }
        Ok(betti)
    }

    /// A deterministic vector that is generic for every edge: `(1, M, M², …)`.
    pub fn generic_vector(&self) -> Vec<i64> {
        let m = 1 + self
            .vertices
            .iter()
            .flat_map(|v| v.edge_directions())
            .flatten()
            .map(|x| x.abs())
            .max()
            .unwrap_or(0);
        (0..self.dim).map(|k| m.pow(k as u32)).collect()
    }

    pub fn vertex_by_facets(&self, facets: &[usize]) -> Option<usize> {
        self.vertices.iter().position(|v| v.facets == facets)
    }
}

fn rat_det(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut d = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else { return Rat::zero() };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        for r in c + 1..n {
            let f = &m[r][c] / &m[c][c];
            for k in c..n {
                let v = &m[c][k] * &f;
                m[r][k] -= v;
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use crate::rational::rat;

    fn facets(data: &[(Vec<i64>, Rat)]) -> Vec<Facet> {
        data.iter()
            .map(|(n, s)| Facet { normal: n.clone(), support: s.clone(), label: None })
            .collect()
    }

    #[test]
    fn square_is_valid() {
        let p = examples::s2xs2(&int(2)).unwrap();
        assert_eq!(p.vertices.len(), 4);
        assert_eq!(p.faces.values().filter(|f| f.dim == 1).count(), 4);
        assert_eq!(p.faces.values().filter(|f| f.dim == 2).count(), 1);
    }

    #[test]
    fn rejects_bad_inputs() {
        let two = facets(&[(vec![1, 0], int(1)), (vec![-1, 0], int(1))]);
        assert_eq!(DelzantPolytope::new("x", 2, two).unwrap_err(), Error::Unbounded);
        let strip = facets(&[(vec![1, 0], int(1)), (vec![-1, 0], int(1)), (vec![0, 1], int(1))]);
        assert_eq!(DelzantPolytope::new("x", 2, strip).unwrap_err(), Error::Unbounded);
        let singular = facets(&[(vec![-1, 0], int(0)), (vec![0, -1], int(0)), (vec![2, 1], int(2))]);
        match DelzantPolytope::new("x", 2, singular).unwrap_err() {
            Error::NotSmooth { facets, det } => {
                assert_eq!(facets, "{2,3}");
                assert_eq!(det.abs(), 2);
            }
            e => panic!("unexpected {e:?}"),
        }
        let nonprim = facets(&[(vec![-2, 0], int(0)), (vec![0, -1], int(0)), (vec![1, 1], int(1))]);
        assert_eq!(DelzantPolytope::new("x", 2, nonprim).unwrap_err(), Error::NonPrimitiveNormal(0));
        let empty = facets(&[(vec![-1, 0], int(-1)), (vec![0, -1], int(0)), (vec![1, 1], int(0))]);
        assert_eq!(DelzantPolytope::new("x", 2, empty).unwrap_err(), Error::NotFullDimensional);
        // A square with a cut through a vertex: three facets meet there.
        let nonsimple = facets(&[
            (vec![1, 0], int(1)),
            (vec![-1, 0], int(1)),
            (vec![0, 1], int(1)),
            (vec![0, -1], int(1)),
            (vec![1, 1], int(2)),
        ]);
        assert!(matches!(DelzantPolytope::new("x", 2, nonsimple).unwrap_err(), Error::NotSimple(_)));
        let redundant = facets(&[
            (vec![1, 0], int(1)),
            (vec![-1, 0], int(1)),
            (vec![0, 1], int(1)),
            (vec![0, -1], int(1)),
            (vec![1, 1], int(5)),
        ]);
        assert_eq!(DelzantPolytope::new("x", 2, redundant).unwrap_err(), Error::RedundantFacet(4));
    }

    #[test]
    fn blowup_faces_and_primitive_sets() {
        let p = examples::blowup_cp2(&rat(1, 2)).unwrap();
        assert_eq!(p.vertices.len(), 4);
        assert!(!p.intersects(&[0, 1]));
        assert!(!p.intersects(&[2, 3]));
        let prims = p.primitive_sets().unwrap();
        assert_eq!(prims.len(), 2);
        let p12 = prims.iter().find(|s| s.indices == vec![0, 1]).unwrap();
        assert_eq!(p12.complement, BTreeMap::from([(3, 1)]));
        assert_eq!(p12.beta.pairings, vec![1, 1, 0, -1]);
        assert_eq!(p12.c1, 1);
        assert_eq!(p12.omega, rat(1, 4));
        let p34 = prims.iter().find(|s| s.indices == vec![2, 3]).unwrap();
        assert!(p34.complement.is_empty());
        assert_eq!(p34.c1, 2);
        assert_eq!(p34.omega, rat(3, 4));
    }

    #[test]
    fn simplex_has_one_primitive_set() {
        let p = examples::cp2().unwrap();
        assert_eq!(p.faces.values().filter(|f| f.dim == 1).count(), 3);
        let prims = p.primitive_sets().unwrap();
        assert_eq!(prims.len(), 1);
        assert_eq!(prims[0].indices, vec![0, 1, 2]);
        assert_eq!(prims[0].omega, int(1));
        assert_eq!(prims[0].c1, 3);
    }

    #[test]
    fn dual_cones() {
        let b = examples::blowup_cp2(&rat(1, 2)).unwrap();
        let (f, c) = b.dual_cone_face(&[-1, -1]);
        assert_eq!(f, FaceId(vec![3]));
        assert_eq!(c[&3], int(1));
        let (f, c) = b.dual_cone_face(&[0, 0]);
        assert_eq!(f, FaceId(vec![]));
        assert!(c.is_empty());
        let s = examples::s2xs2(&int(2)).unwrap();
        let (f, c) = s.dual_cone_face(&[1, 2]);
        assert_eq!(f, FaceId(vec![0, 2]));
        assert_eq!((c[&0].clone(), c[&2].clone()), (int(1), int(2)));
    }

    #[test]
    fn h2_lattices() {
        let s = examples::s2xs2(&int(2)).unwrap();
        let basis = s.h2_lattice();
        assert_eq!(basis.len(), 2);
        for b in &basis {
            for r in 0..2 {
                let sum: i64 = s.facets.iter().zip(&b.pairings).map(|(f, a)| f.normal[r] * a).sum();
                assert_eq!(sum, 0);
            }
        }
        let c = examples::cp2().unwrap();
        let basis = c.h2_lattice();
        assert_eq!(basis.len(), 1);
        let g = &basis[0];
        assert_eq!(g.c1().abs(), 3);
        assert_eq!(g.omega(&c).abs(), int(1));
    }

    #[test]
    fn centroids() {
        let s = examples::s2xs2(&int(3)).unwrap();
        assert_eq!(s.centroid(), vec![int(0), int(0)]);
        let b = examples::blowup_cp2(&rat(1, 3)).unwrap();
        assert!(b.is_normalized());
        let h = examples::hirzebruch2(&rat(5, 2)).unwrap();
        assert!(h.is_normalized());
        let shifted = DelzantPolytope::new(
            "t",
            2,
            facets(&[(vec![-1, 0], int(0)), (vec![0, -1], int(0)), (vec![1, 1], int(3))]),
        )
        .unwrap();
        assert_eq!(shifted.centroid(), vec![int(1), int(1)]);
        let n = shifted.normalize().unwrap();
        assert!(n.is_normalized());
        assert_eq!(n.normalize().unwrap().facets, n.facets);
    }

    #[test]
    fn morse_betti_numbers() {
        let b = examples::blowup_cp2(&rat(1, 2)).unwrap();
        assert_eq!(b.morse_betti(&[1, 2]).unwrap(), vec![1, 2, 1]);
        assert_eq!(b.morse_betti(&b.generic_vector()).unwrap(), vec![1, 2, 1]);
        assert!(b.morse_betti(&[1, 0]).is_err());
        let c = examples::cp2().unwrap();
        assert_eq!(c.morse_betti(&[1, 2]).unwrap(), vec![1, 1, 1]);
        assert_eq!(c.face_betti(&FaceId(vec![0]), &[1, 2]).unwrap(), vec![1, 1]);
        assert_eq!(c.face_betti(&FaceId(vec![0, 1]), &[1, 2]).unwrap(), vec![1]);
    }
}
