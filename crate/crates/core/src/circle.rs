//! Circle subgroups `Λ_ξ` of the torus: moment values, fixed components,
//! weights, isotropy and the (K, −m) invariant.

use crate::error::{Error, Result};
use crate::polytope::{DelzantPolytope, FaceId};
use crate::rational::{common_denominator, dot_int_rat, gcd_all, solve_integer, Rat};
use num_traits::ToPrimitive;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// Isotropy of the generic point over a face.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Isotropy {
    Order(u64),
    Fixed,
}

impl fmt::Display for Isotropy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Isotropy::Order(q) => write!(f, "{q}"),
            Isotropy::Fixed => write!(f, "fixed"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixedComponent {
    pub face: FaceId,
    pub k: Rat,
    /// Weight on the normal direction of each facet containing the face.
    pub weights: BTreeMap<usize, i64>,
    pub m: i64,
    /// Morse index `2·#negative weights`.
    pub index: usize,
    pub coindex: usize,
    pub semifree: bool,
    /// Real dimension of the component.
    pub dim: usize,
}

impl FixedComponent {
    pub fn positive_weights(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.weights.iter().filter(|(_, w)| **w > 0).map(|(i, w)| (*i, *w))
    }

    pub fn negative_weights(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.weights.iter().filter(|(_, w)| **w < 0).map(|(i, w)| (*i, *w))
    }
}

pub fn check_xi(p: &DelzantPolytope, xi: &[i64]) -> Result<()> {
    if xi.len() != p.dim {
        return Err(Error::VectorLength { expected: p.dim, got: xi.len() });
    }
    if xi.iter().all(|&x| x == 0) {
        return Err(Error::ZeroVector);
    }
    Ok(())
}

/// `K(v) = ⟨ξ, v⟩` at a vertex.
pub fn k_at_vertex(p: &DelzantPolytope, xi: &[i64], vi: usize) -> Rat {
    dot_int_rat(xi, &p.vertices[vi].point)
}

/// `(facet, weight)` at a vertex, in the vertex's facet order.
pub fn vertex_weights(p: &DelzantPolytope, xi: &[i64], vi: usize) -> Vec<(usize, i64)> {
    let v = &p.vertices[vi];
    v.facets.iter().zip(v.coords(xi)).map(|(&i, a)| (i, -a)).collect()
}

pub fn m_at_vertex(p: &DelzantPolytope, xi: &[i64], vi: usize) -> i64 {
    vertex_weights(p, xi, vi).iter().map(|(_, w)| w).sum()
}

/// Maximal faces on which `ξ` lies in the span of the normals, sorted by decreasing `K`.
pub fn fixed_components(p: &DelzantPolytope, xi: &[i64]) -> Result<Vec<FixedComponent>> {
    check_xi(p, xi)?;
    let mut by_face: BTreeMap<FaceId, Vec<usize>> = BTreeMap::new();
    for vi in 0..p.vertices.len() {
        let support: Vec<usize> = vertex_weights(p, xi, vi).into_iter().filter(|(_, w)| *w != 0).map(|(i, _)| i).collect();
        let mut s = support;
        s.sort_unstable();
        by_face.entry(FaceId(s)).or_default().push(vi);
    }
    let mut out = Vec::new();
    for (face, verts) in by_face {
        let f = p.face(&face)?;
        debug_assert_eq!(f.vertices, verts);
        let k = k_at_vertex(p, xi, f.vertices[0]);
        let mut weights: Option<BTreeMap<usize, i64>> = None;
        for &vi in &f.vertices {
            if k_at_vertex(p, xi, vi) != k {
                return Err(Error::InconsistentWeights(face.to_string()));
            }
            let w: BTreeMap<usize, i64> = vertex_weights(p, xi, vi).into_iter().filter(|(i, _)| face.contains_facet(*i)).collect();
            match &weights {
                None => weights = Some(w),
                Some(prev) if *prev != w => return Err(Error::InconsistentWeights(face.to_string())),
                _ => {}
            }
        }
        let weights = weights.expect("faces have vertices");
        let neg = weights.values().filter(|w| **w < 0).count();
        let pos = weights.values().filter(|w| **w > 0).count();
        out.push(FixedComponent {
            m: weights.values().sum(),
            index: 2 * neg,
            coindex: 2 * pos,
            semifree: weights.values().all(|w| w.abs() == 1),
            dim: 2 * f.dim,
            face,
            k,
            weights,
        });
    }
    out.sort_by(|a, b| b.k.cmp(&a.k).then_with(|| a.face.cmp(&b.face)));
    Ok(out)
}

/// Isotropy order over a face: the content of the image of `ξ` in `ℓ / span(η_T)`.
pub fn isotropy_order(p: &DelzantPolytope, xi: &[i64], face: &FaceId) -> Result<Isotropy> {
    let f = p.face(face)?;
    let v = &p.vertices[f.vertices[0]];
    let a: Vec<i64> = v.coords(xi).into_iter().zip(&v.facets).filter(|(_, i)| !face.contains_facet(**i)).map(|(x, _)| x).collect();
    let g = gcd_all(&a);
    Ok(if g == 0 { Isotropy::Fixed } else { Isotropy::Order(g as u64) })
}

/// Largest moment value over the vertices of a face.
pub fn face_k_max(p: &DelzantPolytope, xi: &[i64], face: &FaceId) -> Result<Rat> {
    let f = p.face(face)?;
    Ok(f.vertices.iter().map(|&vi| k_at_vertex(p, xi, vi)).max().expect("faces have vertices"))
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsotropyStratum {
    pub q: u64,
    pub faces: Vec<FaceId>,
    pub components: Vec<Vec<FaceId>>,
}

impl IsotropyStratum {
    pub fn component_of(&self, face: &FaceId) -> Option<usize> {
        self.components.iter().position(|c| c.contains(face))
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Faces of `M^{ℤ/q}` (those with `q | order`, plus fixed faces), grouped by containment.
pub fn isotropy_components(p: &DelzantPolytope, xi: &[i64], q: u64) -> Result<IsotropyStratum> {
    check_xi(p, xi)?;
    let mut faces = Vec::new();
    for id in p.faces.keys() {
        match isotropy_order(p, xi, id)? {
            Isotropy::Fixed => faces.push(id.clone()),
            Isotropy::Order(o) if o % q == 0 => faces.push(id.clone()),
            _ => {}
        }
    }
    let mut parent: Vec<usize> = (0..faces.len()).collect();
    for i in 0..faces.len() {
        for j in 0..i {
            if faces[i].is_subface_of(&faces[j]) || faces[j].is_subface_of(&faces[i]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<FaceId>> = BTreeMap::new();
    for (i, f) in faces.iter().enumerate() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(f.clone());
    }
    let mut components: Vec<Vec<FaceId>> = groups.into_values().collect();
    components.sort();
    Ok(IsotropyStratum { q, faces, components })
}

/// Largest `q` such that both faces lie in one component of `M^{ℤ/q}`.
pub fn q_pair(p: &DelzantPolytope, xi: &[i64], a: &FaceId, b: &FaceId) -> Result<u64> {
    let mut best = 1;
    let mut orders: Vec<u64> = Vec::new();
    for id in p.faces.keys() {
        if let Isotropy::Order(o) = isotropy_order(p, xi, id)? {
            orders.push(o);
        }
    }
    let max = orders.iter().copied().max().unwrap_or(1);
    for q in 2..=max {
        if !orders.iter().any(|o| o % q == 0) {
            continue;
        }
        let s = isotropy_components(p, xi, q)?;
        if let (Some(x), Some(y)) = (s.component_of(a), s.component_of(b)) {
            if x == y {
                best = q;
            }
        }
    }
    Ok(best)
}

/// Maximal finite isotropy over faces reaching above `c` (`None` means no bound on `K`).
pub fn superlevel_isotropy_bound(p: &DelzantPolytope, xi: &[i64], c: Option<&Rat>) -> Result<u64> {
    check_xi(p, xi)?;
    let mut best = 1;
    for id in p.faces.keys() {
        if let Isotropy::Order(o) = isotropy_order(p, xi, id)? {
            if c.is_none_or(|c| face_k_max(p, xi, id).is_ok_and(|k| &k > c)) {
                best = best.max(o);
            }
        }
    }
    Ok(best)
}

/// Largest isotropy order anywhere.
pub fn global_isotropy(p: &DelzantPolytope, xi: &[i64]) -> Result<u64> {
    superlevel_isotropy_bound(p, xi, None)
}

/// `(K, −m)` at the maximum, after checking that all vertex values differ by
/// integer combinations of `(ω(B), c1(B))`.
pub fn action_invariant(p: &DelzantPolytope, xi: &[i64]) -> Result<(Rat, i64)> {
    check_xi(p, xi)?;
    let vals: Vec<(Rat, i64)> = (0..p.vertices.len()).map(|vi| (k_at_vertex(p, xi, vi), -m_at_vertex(p, xi, vi))).collect();
    let basis = p.h2_lattice();
    let omegas: Vec<Rat> = basis.iter().map(|b| b.omega(p)).collect();
    let c1s: Vec<i64> = basis.iter().map(|b| b.c1()).collect();
    let (k0, m0) = vals[0].clone();
    for (vi, (k, m)) in vals.iter().enumerate().skip(1) {
        let dk = k - &k0;
        let mut all = omegas.clone();
        all.push(dk.clone());
        let den = common_denominator(&all);
        let scale = |r: &Rat| -> Option<i128> { (r * Rat::from_integer(den.clone())).to_integer().to_i128() };
        let row_w: Option<Vec<i128>> = omegas.iter().map(scale).collect();
        let rhs_w = scale(&dk);
        let ok = match (row_w, rhs_w) {
            (Some(rw), Some(bw)) => {
                let rc: Vec<i128> = c1s.iter().map(|&c| c as i128).collect();
                solve_integer(&[rw, rc], &[bw, (m - m0) as i128]).is_some()
            }
            _ => false,
        };
        if !ok {
            return Err(Error::InvariantMismatch(p.vertices[vi].facets.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")));
        }
    }
    let top = vals.iter().max_by(|a, b| a.0.cmp(&b.0)).expect("polytopes have vertices");
    Ok(top.clone())
}

/// Betti numbers of the submanifold over a face (sphere for an edge, point for a vertex).
pub fn face_betti(p: &DelzantPolytope, face: &FaceId, xi: &[i64]) -> Result<Vec<usize>> {
    p.face_betti(face, xi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use crate::rational::{int, rat};

    fn blowup() -> DelzantPolytope {
        examples::blowup_cp2(&rat(1, 2)).unwrap()
    }

    fn f(ids: &[usize]) -> FaceId {
        FaceId(ids.to_vec())
    }

    #[test]
    fn blowup_facet_circle() {
        let p = blowup();
        let comps = fixed_components(&p, &[-1, 0]).unwrap();
        let faces: Vec<FaceId> = comps.iter().map(|c| c.face.clone()).collect();
        assert_eq!(faces, vec![f(&[0]), f(&[1, 3]), f(&[1, 2])]);
        assert_eq!(comps[0].k, rat(7, 20));
        assert_eq!(comps[2].k, rat(7, 20) - int(1));
        assert_eq!(comps[1].k, rat(7, 20) - rat(1, 4));
        assert!(comps[0].semifree);
        assert_eq!(comps[0].m, -1);
        assert_eq!(comps[0].dim, 2);
    }

    #[test]
    fn weights_at_vertices() {
        let p = blowup();
        let comps = fixed_components(&p, &[-2, -1]).unwrap();
        let c13 = comps.iter().find(|c| c.face == f(&[0, 2])).unwrap();
        assert_eq!(c13.weights, BTreeMap::from([(0, -1), (2, 1)]));
        assert!(c13.semifree);
        assert_eq!(c13.k, rat(1, 20));
        let c24 = comps.iter().find(|c| c.face == f(&[1, 3])).unwrap();
        assert_eq!(c24.weights, BTreeMap::from([(1, 1), (3, -2)]));
        assert!(!c24.semifree);
        let ks: Vec<Rat> = comps.iter().map(|c| c.k.clone()).collect();
        assert_eq!(ks, vec![rat(16, 20), rat(11, 20), rat(1, 20), rat(-19, 20)]);
        let sq = examples::s2xs2(&int(2)).unwrap();
        let c = fixed_components(&sq, &[1, 2]).unwrap();
        let v13 = c.iter().find(|c| c.face == f(&[0, 2])).unwrap();
        assert_eq!(v13.weights, BTreeMap::from([(0, -1), (2, -2)]));
        assert_eq!(v13.m, -3);
        assert_eq!(fixed_components(&sq, &[1, 1]).unwrap().len(), 4);
    }

    #[test]
    fn cp2_components() {
        let p = examples::cp2().unwrap();
        let ks: Vec<Rat> = fixed_components(&p, &[2, 1]).unwrap().iter().map(|c| c.k.clone()).collect();
        assert_eq!(ks, vec![int(1), int(0), int(-1)]);
        let comps = fixed_components(&p, &[2, 1]).unwrap();
        assert_eq!(comps[0].m, -3);
        assert_eq!(comps[2].m, 3);
        assert_eq!(isotropy_order(&p, &[2, 1], &f(&[1])).unwrap(), Isotropy::Order(2));
        assert_eq!(q_pair(&p, &[2, 1], &comps[0].face, &comps[2].face).unwrap(), 2);
    }

    #[test]
    fn isotropy_orders() {
        let h = examples::hirzebruch2(&int(2)).unwrap();
        assert_eq!(isotropy_order(&h, &[1, 2], &f(&[2])).unwrap(), Isotropy::Order(3));
        assert_eq!(global_isotropy(&h, &[1, 2]).unwrap(), 3);
        let top = &fixed_components(&h, &[1, 2]).unwrap()[0];
        let mut w: Vec<i64> = top.weights.values().copied().collect();
        w.sort_unstable();
        assert_eq!(w, vec![-3, -1]);
        let p = blowup();
        assert_eq!(isotropy_order(&p, &[1, -1], &f(&[2])).unwrap(), Isotropy::Order(2));
        let sq = examples::s2xs2(&int(2)).unwrap();
        assert_eq!(global_isotropy(&sq, &[1, 1]).unwrap(), 1);
        assert_eq!(superlevel_isotropy_bound(&sq, &[1, 2], None).unwrap(), 2);
        assert_eq!(isotropy_order(&sq, &[1, 0], &f(&[0])).unwrap(), Isotropy::Fixed);
        let c13 = rat(1, 20);
        assert_eq!(superlevel_isotropy_bound(&p, &[-2, -1], Some(&c13)).unwrap(), 2);
        assert_eq!(isotropy_components(&sq, &[1, 1], 1).unwrap().components.len(), 1);
        assert_eq!(q_pair(&sq, &[1, 1], &f(&[0, 2]), &f(&[1, 3])).unwrap(), 1);
    }

    #[test]
    fn invariants() {
        let p = blowup();
        assert_eq!(action_invariant(&p, &[-1, 0]).unwrap(), (rat(7, 20), 1));
        let sq = examples::s2xs2(&int(2)).unwrap();
        assert_eq!(action_invariant(&sq, &[1, 1]).unwrap(), (rat(3, 2), 2));
        let (k, m) = action_invariant(&p, &[2, 1]).unwrap();
        let comps = fixed_components(&p, &[-2, -1]).unwrap();
        let last = comps.last().unwrap();
        assert_eq!((k, m), (-last.k.clone(), last.m));
    }

    #[test]
    fn betti_of_faces() {
        let sq = examples::s2xs2(&int(2)).unwrap();
        let g = sq.generic_vector();
        assert_eq!(face_betti(&sq, &f(&[0]), &g).unwrap(), vec![1, 1]);
        assert_eq!(face_betti(&sq, &f(&[0, 2]), &g).unwrap(), vec![1]);
        assert_eq!(face_betti(&sq, &f(&[]), &g).unwrap(), vec![1, 2, 1]);
    }
}
