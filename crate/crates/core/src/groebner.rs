//! Buchberger's algorithm over ℚ, tracking how each basis element is built
//! from the original generators, and normal forms that record their reduction steps.

use crate::poly::{Monomial, PolyQ};
use crate::rational::Rat;
use num_traits::One;

#[derive(Debug, Clone)]
pub struct GbElement {
    /// Monic polynomial.
    pub poly: PolyQ,
    /// `poly = Σ_g cofactors[g] · generators[g]`.
    pub cofactors: Vec<PolyQ>,
}

/// One reduction step: subtract `coeff · multiplier · elements[element]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceStep {
    pub element: usize,
    pub multiplier: Monomial,
    pub coeff: Rat,
}

#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    pub nvars: usize,
    pub generators: Vec<PolyQ>,
    pub elements: Vec<GbElement>,
}

fn combine(a: &[PolyQ], ca: &Rat, ma: &Monomial, b: &[PolyQ], cb: &Rat, mb: &Monomial) -> Vec<PolyQ> {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let mut out = x.scale(ca).mul_monomial(ma);
            out.add_scaled(y, &-cb.clone(), mb);
            out
        })
        .collect()
}

/// Reduces `p` (with cofactors `cof`) fully against `basis`.
fn reduce_tracked(mut p: PolyQ, mut cof: Vec<PolyQ>, basis: &[GbElement]) -> (PolyQ, Vec<PolyQ>) {
    let nvars = p.nvars();
    let mut rem = PolyQ::zero(nvars);
    while let Some((m, c)) = p.leading().map(|(m, c)| (m.clone(), c.clone())) {
        match basis.iter().find(|e| e.poly.leading().unwrap().0.divides(&m)) {
            Some(e) => {
                let mult = m.div(e.poly.leading().unwrap().0);
                p.add_scaled(&e.poly, &-c.clone(), &mult);
                for (x, y) in cof.iter_mut().zip(&e.cofactors) {
                    x.add_scaled(y, &-c.clone(), &mult);
                }
            }
            None => {
                p.add_term(m.clone(), -c.clone());
                rem.add_term(m, c);
            }
        }
    }
    (rem, cof)
}

fn make_monic(p: PolyQ, cof: Vec<PolyQ>) -> GbElement {
    let lc = p.leading().unwrap().1.clone();
    let inv = Rat::one() / lc;
    GbElement { poly: p.scale(&inv), cofactors: cof.iter().map(|c| c.scale(&inv)).collect() }
}

impl GroebnerBasis {
    /// Reduced Gröbner basis of the ideal generated by `generators`.
    pub fn new(nvars: usize, generators: Vec<PolyQ>) -> Self {
        let ng = generators.len();
        let unit = |g: usize| -> Vec<PolyQ> {
            (0..ng).map(|k| if k == g { PolyQ::one(nvars) } else { PolyQ::zero(nvars) }).collect()
        };
        let mut basis: Vec<GbElement> = Vec::new();
        for (g, p) in generators.iter().enumerate() {
            let (r, cof) = reduce_tracked(p.clone(), unit(g), &basis);
            if !r.is_zero() {
                basis.push(make_monic(r, cof));
            }
        }
        let mut pairs: Vec<(usize, usize)> = (0..basis.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        while let Some((i, j)) = pairs.pop() {
            let (li, lj) = (basis[i].poly.leading().unwrap().0.clone(), basis[j].poly.leading().unwrap().0.clone());
            if li.coprime(&lj) {
                continue;
            }
            let l = li.lcm(&lj);
            let (mi, mj) = (l.div(&li), l.div(&lj));
            let one = Rat::one();
            let mut s = basis[i].poly.mul_monomial(&mi);
            s.add_scaled(&basis[j].poly, &-one.clone(), &mj);
            let cof = combine(&basis[i].cofactors, &one, &mi, &basis[j].cofactors, &one, &mj);
            let (r, cof) = reduce_tracked(s, cof, &basis);
            if !r.is_zero() {
                let k = basis.len();
                basis.push(make_monic(r, cof));
                pairs.extend((0..k).map(|i| (i, k)));
            }
        }
        // Minimize, then inter-reduce.
        let mut keep: Vec<GbElement> = Vec::new();
        for (idx, e) in basis.iter().enumerate() {
            let lm = e.poly.leading().unwrap().0;
            let redundant = basis.iter().enumerate().any(|(k, o)| {
                let lo = o.poly.leading().unwrap().0;
                k != idx && lo.divides(lm) && (lo != lm || k < idx)
            });
            if !redundant {
                keep.push(e.clone());
            }
        }
        let mut reduced = Vec::with_capacity(keep.len());
        for idx in 0..keep.len() {
            let others: Vec<GbElement> =
                keep.iter().enumerate().filter(|(k, _)| *k != idx).map(|(_, e)| e.clone()).collect();
            let e = &keep[idx];
            let (lm, lc) = e.poly.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
            let mut tail = e.poly.clone();
            tail.add_term(lm.clone(), -lc.clone());
            let (r, cof) = reduce_tracked(tail, e.cofactors.clone(), &others);
            let mut poly = r;
            poly.add_term(lm, lc);
            reduced.push(GbElement { poly, cofactors: cof });
        }
        reduced.sort_by(|a, b| a.poly.leading().unwrap().0.cmp(b.poly.leading().unwrap().0));
        GroebnerBasis { nvars, generators, elements: reduced }
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|e| e.poly.leading().unwrap().0.clone()).collect()
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.elements.iter().any(|e| e.poly.leading().unwrap().0.divides(m))
    }

    /// Normal form together with the reduction steps taken.
    pub fn normal_form_traced(&self, f: &PolyQ) -> (PolyQ, Vec<TraceStep>) {
        let mut p = f.clone();
        let mut rem = PolyQ::zero(self.nvars);
        let mut trace = Vec::new();
        while let Some((m, c)) = p.leading().map(|(m, c)| (m.clone(), c.clone())) {
            match self.elements.iter().position(|e| e.poly.leading().unwrap().0.divides(&m)) {
                Some(k) => {
                    let e = &self.elements[k];
                    let mult = m.div(e.poly.leading().unwrap().0);
                    p.add_scaled(&e.poly, &-c.clone(), &mult);
                    trace.push(TraceStep { element: k, multiplier: mult, coeff: c });
                }
                None => {
                    p.add_term(m.clone(), -c.clone());
                    rem.add_term(m, c);
                }
            }
        }
        (rem, trace)
    }

    pub fn normal_form(&self, f: &PolyQ) -> PolyQ {
        self.normal_form_traced(f).0
    }

    /// Expands a trace into one quotient per original generator:
    /// `f - nf(f) = Σ_g quotients[g] · generators[g]`.
    pub fn expand_trace(&self, trace: &[TraceStep]) -> Vec<PolyQ> {
        let mut q = vec![PolyQ::zero(self.nvars); self.generators.len()];
        for step in trace {
            for (acc, cof) in q.iter_mut().zip(&self.elements[step.element].cofactors) {
                acc.add_scaled(cof, &step.coeff, &step.multiplier);
            }
        }
        q
    }
}
