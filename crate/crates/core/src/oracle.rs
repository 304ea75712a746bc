//! Brute-force consistency checks over a built presentation.

use crate::circle;
use crate::cohomology::ClassicalRing;
use crate::error::{Error, Result};
use crate::poly::{Monomial, PolyQ};
use crate::quantum::{degree, fmt_class, QuantumPresentation};
use crate::rational::fmt_rat;
use crate::seidel;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const DEFAULT_SEED: u64 = 0x5e1de1;

fn basis(qp: &QuantumPresentation) -> Vec<PolyQ> {
    qp.ring.all_basis().into_iter().map(|m| PolyQ::term(m, crate::rational::int(1))).collect()
}

fn name(m: &PolyQ) -> String {
    m.leading().map_or("0".to_string(), |(m, _): (&Monomial, _)| m.to_string())
}

/// Triples of standard monomials whose two bracketings differ.
pub fn check_associativity(qp: &QuantumPresentation) -> Result<Vec<String>> {
    let b = basis(qp);
    let mut out = Vec::new();
    for x in &b {
        for y in &b {
            let xy = qp.qprod(&qp.class(x.clone()), &qp.class(y.clone()))?;
            for z in &b {
                let left = qp.qprod(&xy, &qp.class(z.clone()))?;
                let yz = qp.qprod(&qp.class(y.clone()), &qp.class(z.clone()))?;
                let right = qp.qprod(&qp.class(x.clone()), &yz)?;
                let diff = qp.quantum_nf(&left.checked_sub(&right)?)?;
                if !diff.is_zero() {
                    out.push(format!("({0}*{1})*{2} - {0}*({1}*{2}) = {3}", name(x), name(y), name(z), fmt_class(&diff)));
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HomomorphismReport {
    pub seed: u64,
    pub trials: usize,
    pub violations: Vec<String>,
}

fn random_xi(rng: &mut ChaCha8Rng, n: usize) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

/// `𝒮(ξ₁ + ξ₂) = 𝒮(ξ₁) * 𝒮(ξ₂)` on random pairs drawn from `seed`, plus `𝒮(ξ) * 𝒮(−ξ) = 1`.
pub fn check_homomorphism(qp: &QuantumPresentation, trials: usize, seed: u64) -> Result<HomomorphismReport> {
    let n = qp.polytope.dim;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    for _ in 0..trials {
        let a = random_xi(&mut rng, n);
        let b = random_xi(&mut rng, n);
        let sum: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let prod = qp.qprod(&seidel::seidel_element(qp, &a)?.value, &seidel::seidel_element(qp, &b)?.value)?;
        let expected = if sum.iter().all(|&x| x == 0) { qp.one() } else { seidel::seidel_element(qp, &sum)?.value };
        if !qp.quantum_nf(&prod.checked_sub(&expected)?)?.is_zero() {
            violations.push(format!("S({a:?}) * S({b:?}) != S({sum:?})"));
        }
        let neg: Vec<i64> = a.iter().map(|x| -x).collect();
        let inv = qp.qprod(&seidel::seidel_element(qp, &a)?.value, &seidel::seidel_element(qp, &neg)?.value)?;
        if !qp.quantum_nf(&inv.checked_sub(&qp.one())?)?.is_zero() {
            violations.push(format!("S({a:?}) * S({neg:?}) != 1"));
        }
    }
    Ok(HomomorphismReport { seed, trials, violations })
}

/// Every product of degree-2 basis classes differs from the cup product only
/// at valuation `≥ ħ`.
pub fn check_classical_limit(qp: &QuantumPresentation) -> Result<bool> {
    let deg2: Vec<PolyQ> = basis(qp).into_iter().filter(|m| m.homogeneous_degree() == Some(1)).collect();
    for a in &deg2 {
        for b in &deg2 {
            match qp.classical_limit_defect(a, b) {
                Ok(_) => {}
                Err(Error::InvariantMismatch(_)) => return Ok(false),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(true)
}

/// Relations are homogeneous (`deg x = 2`, `deg q = 2`) and the Betti numbers
/// of the presentation match the Morse count.
pub fn check_grading_and_betti(qp: &QuantumPresentation) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let n = qp.nvars();
    for (s, delta) in qp.primitive_sets.iter().zip(&qp.corrections) {
        let lhs = 2 * s.indices.len() as i64;
        if degree(delta).is_some_and(|d| d != lhs) || degree(delta).is_none() && !delta.is_zero() {
            out.push(format!("relation {} = {} is not homogeneous", Monomial::from_vars(n, &s.indices), fmt_class(delta)));
        }
    }
    let p = &qp.polytope;
    let morse = ClassicalRing::betti_morse(p, &p.generic_vector())?;
    if qp.ring.betti() != morse {
        out.push(format!("betti {:?} != morse {:?}", qp.ring.betti(), morse));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleSuite {
    pub associativity: Vec<String>,
    pub homomorphism: HomomorphismReport,
    pub classical_limit: bool,
    pub hbar: String,
    pub grading_and_betti: Vec<String>,
    pub vertex_independence: Vec<String>,
}

impl OracleSuite {
    pub fn passed(&self) -> bool {
        self.associativity.is_empty()
            && self.homomorphism.violations.is_empty()
            && self.classical_limit
            && self.grading_and_betti.is_empty()
            && self.vertex_independence.is_empty()
    }
}

/// Seidel elements of a few circles computed from every vertex agree.
pub fn check_vertex_independence(qp: &QuantumPresentation, xis: &[Vec<i64>]) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for xi in xis {
        circle::check_xi(&qp.polytope, xi)?;
        let s = seidel::seidel_element(qp, xi)?.value;
        for vi in 0..qp.polytope.vertices.len() {
            let other = seidel::seidel_at_vertex(qp, xi, vi)?;
            if !qp.quantum_nf(&s.checked_sub(&other)?)?.is_zero() {
                out.push(format!("S({xi:?}) differs at vertex {}", vi + 1));
            }
        }
    }
    Ok(out)
}

pub fn run_suite(qp: &QuantumPresentation, trials: usize, seed: u64) -> Result<OracleSuite> {
    let n = qp.polytope.dim;
    let xis: Vec<Vec<i64>> = (0..n).map(|k| (0..n).map(|r| i64::from(r == k)).collect()).chain(std::iter::once(vec![-1; n])).collect();
    Ok(OracleSuite {
        associativity: check_associativity(qp)?,
        homomorphism: check_homomorphism(qp, trials, seed)?,
        classical_limit: check_classical_limit(qp)?,
        hbar: fmt_rat(&qp.hbar),
        grading_and_betti: check_grading_and_betti(qp)?,
        vertex_independence: check_vertex_independence(qp, &xis)?,
    })
}
