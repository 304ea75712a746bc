//! Rational cohomology of a toric manifold, ℚ[x_1..x_N] / (linear relations + Stanley–Reisner ideal).

use crate::error::{Error, Result};
use crate::groebner::{GroebnerBasis, TraceStep};
use crate::poly::{Monomial, PolyQ};
use crate::polytope::{DelzantPolytope, FaceId};
use crate::rational::{int, Rat};
use num_traits::Zero;
use std::collections::BTreeSet;

#[derive(Debug, Clone)]
pub struct ClassicalRing {
    /// Complex dimension.
    pub dim: usize,
    pub nvars: usize,
    pub gb: GroebnerBasis,
    /// Number of leading linear generators; the rest are Stanley–Reisner monomials.
    pub linear_count: usize,
    /// Variable sets of the Stanley–Reisner generators, in generator order.
    pub sr_sets: Vec<Vec<usize>>,
    /// Standard monomials grouped by polynomial degree `0..=dim`.
    pub basis: Vec<Vec<Monomial>>,
    /// Variable sets of the vertices; the first is the integration reference.
    pub vertices: Vec<Vec<usize>>,
    top: Monomial,
    reference_value: Rat,
}

fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial(vec![]));
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

/// Minimal subsets of `0..n` that are not in the face complex `cones`.
fn minimal_nonfaces(n: usize, cones: &BTreeSet<Vec<usize>>) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for k in 2..=n {
        let mut combos = Vec::new();
        let mut cur = Vec::new();
        fn rec(s: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in s..n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut cur, &mut combos);
        for set in combos {
            if cones.contains(&set) {
                continue;
            }
            let ok = (0..k).all(|skip| {
                let sub: Vec<usize> = set.iter().enumerate().filter(|(j, _)| *j != skip).map(|(_, &i)| i).collect();
                cones.contains(&sub)
            });
            if ok {
                out.push(set);
            }
        }
    }
    out
}

impl ClassicalRing {
    fn build(dim: usize, nvars: usize, linear: Vec<PolyQ>, cones: &BTreeSet<Vec<usize>>, vertices: Vec<Vec<usize>>) -> Self {
        let linear_count = linear.len();
        let sr_sets = minimal_nonfaces(nvars, cones);
        let mut gens = linear;
        for s in &sr_sets {
            gens.push(PolyQ::term(Monomial::from_vars(nvars, s), Rat::from_integer(1.into())));
        }
        let gb = GroebnerBasis::new(nvars, gens);
        let basis: Vec<Vec<Monomial>> = (0..=dim as u32)
            .map(|d| monomials_of_degree(nvars, d).into_iter().filter(|m| gb.is_standard(m)).collect())
            .collect();
        assert_eq!(basis[dim].len(), 1, "top cohomology must be one-dimensional");
        let top = basis[dim][0].clone();
        let reference = PolyQ::term(Monomial::from_vars(nvars, &vertices[0]), int(1));
        let reference_value = gb.normal_form(&reference).coeff(&top);
        assert!(!reference_value.is_zero(), "vertex class must be nonzero");
        ClassicalRing { dim, nvars, gb, linear_count, sr_sets, basis, vertices, top, reference_value }
    }

    /// The ring of the whole manifold, with linear relations from the standard dual basis.
    pub fn new(p: &DelzantPolytope) -> Self {
        let nvars = p.num_facets();
        let linear: Vec<PolyQ> = (0..p.dim)
            .map(|r| PolyQ::from_terms(nvars, (0..nvars).map(|i| (Monomial::var(nvars, i), int(p.facets[i].normal[r])))))
            .collect();
        let cones: BTreeSet<Vec<usize>> = p.faces.keys().map(|f| f.0.clone()).collect();
        let vertices = p.vertices.iter().map(|v| v.facets.clone()).collect();
        Self::build(p.dim, nvars, linear, &cones, vertices)
    }

    /// The ring of the toric submanifold over `face`; variable `j` is the facet `vars[j]` of the face.
    pub fn of_face(p: &DelzantPolytope, face: &FaceId) -> Result<(Self, Vec<usize>)> {
        let f = p.face(face)?;
        let vars: Vec<usize> = p.facets_of_face(face).iter().map(|g| *g.0.iter().find(|i| !face.contains_facet(**i)).unwrap()).collect();
        let idx = |k: usize| vars.iter().position(|&v| v == k);
        let nvars = vars.len();
        let v = &p.vertices[f.vertices[0]];
        let free: Vec<usize> = (0..p.dim).filter(|&j| !face.contains_facet(v.facets[j])).collect();
        let linear: Vec<PolyQ> = free
            .iter()
            .map(|&r| {
                PolyQ::from_terms(
                    nvars,
                    vars.iter().enumerate().map(|(j, &k)| (Monomial::var(nvars, j), int(v.coords(&p.facets[k].normal)[r]))),
                )
            })
            .collect();
        let cones: BTreeSet<Vec<usize>> = p
            .faces
            .keys()
            .filter(|g| g.is_subface_of(face))
            .map(|g| {
                let mut s: Vec<usize> = g.0.iter().filter(|i| !face.contains_facet(**i)).map(|&i| idx(i).unwrap()).collect();
                s.sort_unstable();
                s
            })
            .collect();
        let vertices: Vec<Vec<usize>> = f
            .vertices
            .iter()
            .map(|&vi| {
                let mut s: Vec<usize> =
                    p.vertices[vi].facets.iter().filter(|i| !face.contains_facet(**i)).map(|&i| idx(i).unwrap()).collect();
                s.sort_unstable();
                s
            })
            .collect();
        Ok((Self::build(f.dim, nvars, linear, &cones, vertices), vars))
    }

    pub fn normal_form(&self, f: &PolyQ) -> PolyQ {
        self.gb.normal_form(f)
    }

    pub fn normal_form_traced(&self, f: &PolyQ) -> (PolyQ, Vec<TraceStep>) {
        self.gb.normal_form_traced(f)
    }

    pub fn betti(&self) -> Vec<usize> {
        self.basis.iter().map(|b| b.len()).collect()
    }

    pub fn all_basis(&self) -> Vec<Monomial> {
        self.basis.iter().flatten().cloned().collect()
    }

    pub fn var(&self, i: usize) -> PolyQ {
        PolyQ::var(self.nvars, i)
    }

    pub fn monomial_class(&self, vars: &[usize]) -> PolyQ {
        PolyQ::term(Monomial::from_vars(self.nvars, vars), int(1))
    }

    /// Integral over the manifold of a top-degree class.
    pub fn integrate(&self, f: &PolyQ) -> Result<Rat> {
        if f.is_zero() {
            return Ok(Rat::zero());
        }
        match f.homogeneous_degree() {
            Some(d) if d as usize == self.dim => {}
            other => {
                return Err(Error::WrongDegree {
                    expected: 2 * self.dim as i64,
                    got: other.map_or("inhomogeneous".to_string(), |d| (2 * d).to_string()),
                })
            }
        }
        Ok(self.normal_form(f).coeff(&self.top) / &self.reference_value)
    }

    /// `∫ a·b` over the top-degree part; zero for non-complementary degrees.
    pub fn poincare_pair(&self, a: &PolyQ, b: &PolyQ) -> Rat {
        let top = (a * b).degree_part(self.dim as u32);
        self.integrate(&top).expect("top-degree part")
    }

    /// Pairing matrix between standard monomials of degrees `k` and `dim - k`.
    pub fn pd_matrix(&self, k: usize) -> Vec<Vec<Rat>> {
        let one = int(1);
        self.basis[k]
            .iter()
            .map(|a| {
                self.basis[self.dim - k]
                    .iter()
                    .map(|b| self.poincare_pair(&PolyQ::term(a.clone(), one.clone()), &PolyQ::term(b.clone(), one.clone())))
                    .collect()
            })
            .collect()
    }

    /// Morse-theoretic Betti numbers from vertex indices of `xi`.
    pub fn betti_morse(p: &DelzantPolytope, xi: &[i64]) -> Result<Vec<usize>> {
        p.morse_betti(xi)
    }
}

/// Restriction of a class of the manifold to the toric submanifold over `face`.
pub fn restrict_to_face(p: &DelzantPolytope, f: &PolyQ, face: &FaceId) -> Result<(ClassicalRing, PolyQ)> {
    let (ring, vars) = ClassicalRing::of_face(p, face)?;
    let n = ring.nvars;
    let to_face = |k: usize| -> PolyQ {
        match vars.iter().position(|&v| v == k) {
            Some(j) => PolyQ::var(n, j),
            None => PolyQ::zero(n),
        }
    };
    let v = &p.vertices[p.face(face)?.vertices[0]];
    let images: Vec<PolyQ> = (0..p.num_facets())
        .map(|k| {
            if !face.contains_facet(k) {
                return to_face(k);
            }
            // x_k = -Σ ⟨e*_k, η_i⟩ x_i over the facets i away from the vertex.
            let pos = v.facets.iter().position(|&i| i == k).unwrap();
            let mut img = PolyQ::zero(n);
            for i in 0..p.num_facets() {
                if v.facets.contains(&i) {
                    continue;
                }
                let c = v.coords(&p.facets[i].normal)[pos];
                if c != 0 {
                    img = &img - &to_face(i).scale(&int(c));
                }
            }
            img
        })
        .collect();
    let g = ring.normal_form(&f.substitute(&images, n));
    Ok((ring, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use crate::rational::rat;

    fn m(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn generators() {
        let p = examples::blowup_cp2(&rat(1, 2)).unwrap();
        let r = ClassicalRing::new(&p);
        assert_eq!(r.linear_count, 2);
        assert_eq!(r.sr_sets, vec![vec![0, 1], vec![2, 3]]);
        let g = &r.gb.generators;
        assert_eq!(g[0].to_string(), "-x1 + x3 - x4");
        assert_eq!(g[1].to_string(), "-x2 + x3 - x4");
        let c = ClassicalRing::new(&examples::cp2().unwrap());
        assert_eq!(c.sr_sets, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn standard_bases() {
        let b = ClassicalRing::new(&examples::blowup_cp2(&rat(1, 2)).unwrap());
        assert_eq!(b.all_basis(), vec![m(&[0, 0, 0, 0]), m(&[0, 0, 1, 0]), m(&[0, 0, 0, 1]), m(&[0, 0, 0, 2])]);
        assert_eq!(b.betti(), vec![1, 2, 1]);
        let c = ClassicalRing::new(&examples::cp2().unwrap());
        assert_eq!(c.all_basis(), vec![m(&[0, 0, 0]), m(&[0, 0, 1]), m(&[0, 0, 2])]);
        let s = ClassicalRing::new(&examples::s2xs2(&int(2)).unwrap());
        assert_eq!(s.betti(), vec![1, 2, 1]);
        let s2 = ClassicalRing::new(&examples::s2(&int(1)).unwrap());
        assert_eq!(s2.betti(), vec![1, 1]);
    }

    #[test]
    fn integrals() {
        let p = examples::blowup_cp2(&rat(1, 2)).unwrap();
        let r = ClassicalRing::new(&p);
        for v in &r.vertices {
            assert_eq!(r.integrate(&r.monomial_class(v)).unwrap(), int(1));
        }
        assert_eq!(r.integrate(&r.monomial_class(&[1, 2])).unwrap(), int(1));
        assert_eq!(r.integrate(&r.monomial_class(&[3, 3])).unwrap(), int(-1));
        assert_eq!(r.integrate(&r.monomial_class(&[2, 2])).unwrap(), int(1));
        assert!(matches!(r.integrate(&r.var(0)), Err(Error::WrongDegree { .. })));
        assert_eq!(r.poincare_pair(&r.var(2), &r.var(2)), int(1));
        assert_eq!(r.poincare_pair(&r.var(2), &r.var(3)), int(0));
        assert_eq!(r.poincare_pair(&r.var(2), &PolyQ::one(4)), int(0));
    }

    #[test]
    fn pairings_nondegenerate() {
        for name in examples::NAMES {
            let p = examples::by_name(name, None).unwrap();
            let r = ClassicalRing::new(&p);
            for k in 0..=r.dim {
                let mut mat = r.pd_matrix(k);
                let n = mat.len();
                let mut rank = 0;
                for c in 0..n {
                    if let Some(piv) = (rank..n).find(|&i| !mat[i][c].is_zero()) {
                        mat.swap(rank, piv);
                        for i in 0..n {
                            if i != rank && !mat[i][c].is_zero() {
                                let f = &mat[i][c] / &mat[rank][c];
                                for j in 0..n {
                                    let v = &mat[rank][j] * &f;
                                    mat[i][j] -= v;
                                }
                            }
                        }
                        rank += 1;
                    }
                }
                assert_eq!(rank, n, "{name} degree {k}");
            }
        }
    }

    #[test]
    fn restrictions() {
        let s = examples::s2xs2(&int(2)).unwrap();
        let (_, g) = restrict_to_face(&s, &PolyQ::var(4, 0), &FaceId(vec![0])).unwrap();
        assert!(g.is_zero());
        let b = examples::blowup_cp2(&rat(1, 2)).unwrap();
        let (ring, g) = restrict_to_face(&b, &PolyQ::var(4, 3), &FaceId(vec![3])).unwrap();
        assert_eq!(ring.integrate(&g).unwrap(), int(-1));
        let (ring, g) = restrict_to_face(&b, &PolyQ::var(4, 2), &FaceId(vec![2])).unwrap();
        assert_eq!(ring.integrate(&g).unwrap(), int(1));
        let (ring, g) = restrict_to_face(&b, &PolyQ::var(4, 0), &FaceId(vec![0])).unwrap();
        assert_eq!(ring.integrate(&g).unwrap(), int(0));
        // A vertex ring is ℚ; facet classes through it restrict to zero.
        let (ring, g) = restrict_to_face(&b, &PolyQ::var(4, 0), &FaceId(vec![0, 2])).unwrap();
        assert_eq!(ring.betti(), vec![1]);
        assert!(g.is_zero());
    }

    #[test]
    fn normal_form_is_idempotent() {
        let r = ClassicalRing::new(&examples::hirzebruch2(&int(2)).unwrap());
        let f = &(&r.var(0) * &r.var(1)) + &(&r.var(2) * &r.var(3));
        let nf = r.normal_form(&f);
        assert_eq!(r.normal_form(&nf), nf);
    }
}
