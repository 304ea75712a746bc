//! Seidel elements of torus circles in cohomology orientation, their leading
//! terms, and the translation into named homology classes.

use crate::circle::{self, FixedComponent};
use crate::error::{Error, Result};
use crate::novikov::{fmt_qt, Level};
use crate::poly::{Monomial, PolyQ};
use crate::polytope::{DelzantPolytope, FaceId};
use crate::quantum::{Mode, QClass, QuantumPresentation};
use crate::rational::{fmt_rat, int, solve_rat, Rat};
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub struct SeidelElement {
    pub xi: Vec<i64>,
    pub value: QClass,
    pub mode: Mode,
    pub fmax: FaceId,
    pub m_max: i64,
    pub k_max: Rat,
}

/// `𝒮(Λ_i) = Y_i ⊗ q^{-1} t^{-s_i}`; in Fano mode `Y_i = x_i`.
pub fn facet_seidel(qp: &QuantumPresentation, i: usize) -> Result<QClass> {
    let y = match qp.mode {
        Mode::Fano => qp.var(i),
        Mode::Nef => qp.ytable.entries.get(&i).cloned().ok_or(Error::MissingYEntry(i))?,
    };
    qp.quantum_nf(&y.shift(-1, &-qp.polytope.facets[i].support.clone()))
}

/// `Π 𝒮(Λ_{i_j})^{a_j}` for the decomposition `ξ = Σ a_j η_{i_j}` at vertex `vi`.
pub fn seidel_at_vertex(qp: &QuantumPresentation, xi: &[i64], vi: usize) -> Result<QClass> {
    circle::check_xi(&qp.polytope, xi)?;
    let v = &qp.polytope.vertices[vi];
    let mut out = qp.one();
    for (&i, a) in v.facets.iter().zip(v.coords(xi)) {
        if a != 0 {
            out = qp.qprod(&out, &qp.qpow(&facet_seidel(qp, i)?, a)?)?;
        }
    }
    Ok(out)
}

/// The Seidel element, decomposed at the vertex where `ξ` is maximized so that
/// only nonnegative powers occur.
pub fn seidel_element(qp: &QuantumPresentation, xi: &[i64]) -> Result<SeidelElement> {
    let p = &qp.polytope;
    let comps = circle::fixed_components(p, xi)?;
    let top = &comps[0];
    let vi = p.face(&top.face)?.vertices[0];
    let value = seidel_at_vertex(qp, xi, vi)?;
    Ok(SeidelElement { xi: xi.to_vec(), value, mode: qp.mode, fmax: top.face.clone(), m_max: top.m, k_max: top.k.clone() })
}

/// `c1` of the sphere over an edge, `∫ (Σ x_i) · x^{edge facets}`.
pub fn edge_chern(qp: &QuantumPresentation, edge: &FaceId) -> Result<Rat> {
    let ring = &qp.ring;
    let sum = (0..ring.nvars).fold(PolyQ::zero(ring.nvars), |acc, i| &acc + &ring.var(i));
    ring.integrate(&(&sum * &ring.monomial_class(&edge.0)))
}

/// Edges meeting `face` that are not contained in it.
pub fn transverse_edges(p: &DelzantPolytope, face: &FaceId) -> Result<Vec<FaceId>> {
    let f = p.face(face)?;
    let mut out = Vec::new();
    for &vi in &f.vertices {
        let v = &p.vertices[vi];
        for &j in v.facets.iter().filter(|j| face.contains_facet(**j)) {
            let e = FaceId(v.facets.iter().copied().filter(|&k| k != j).collect());
            if !out.contains(&e) {
                out.push(e);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Exactness {
    /// No claim that lower-order terms vanish.
    NotClaimed,
    /// The element was expected to equal the quantum monomial of `F_max` and does.
    Holds { assumption: Option<String> },
    /// The element was expected to equal that quantum monomial but does not.
    Fails,
}

#[derive(Debug, Clone, Serialize)]
pub struct LeadingTermCheck {
    pub fmax: String,
    pub m_max: i64,
    pub k_max: String,
    /// The leading-term formula is only asserted for a semifree maximum.
    pub semifree_max: bool,
    /// The minimal-valuation level is `x^{F_max} ⊗ q^{m_max} t^{-K_max}` with nothing below it.
    pub leading_ok: bool,
    pub exactness: Exactness,
}

pub fn verify_leading_term(qp: &QuantumPresentation, s: &SeidelElement) -> Result<LeadingTermCheck> {
    let p = &qp.polytope;
    let comps = circle::fixed_components(p, &s.xi)?;
    let top: &FixedComponent = &comps[0];
    let level: Level = (-s.k_max.clone(), s.m_max);
    let expected = qp.ring.normal_form(&qp.ring.monomial_class(&s.fmax.0));
    let below = s.value.terms().any(|(k, _)| k.0 < level.0);
    let at_level: Vec<_> = s.value.terms().filter(|(k, _)| k.0 == level.0).collect();
    let leading_ok = !below && at_level.len() == 1 && at_level[0].0 == &level && at_level[0].1 == &expected;
    // Exact means equal to the quantum product of the facets through F_max, with no further terms.
    let mut qmono = qp.one();
    for &i in &s.fmax.0 {
        qmono = qp.qprod(&qmono, &qp.var(i))?;
    }
    let single = qp.quantum_nf(&s.value.checked_sub(&qmono.shift(s.m_max, &level.0))?)?.is_zero();
    let codim = 2 * p.dim - top.dim;
    let mut claim = None;
    if qp.mode == Mode::Fano && top.semifree {
        if top.face.0.len() == 1 {
            claim = Some(None);
        } else {
            let mut ok = true;
            for e in transverse_edges(p, &top.face)? {
                if edge_chern(qp, &e)? * int(2) < int(codim as i64) {
                    ok = false;
                }
            }
            if ok {
                claim = Some(Some("only toric edge classes were checked for 2c1 >= codim F_max".to_string()));
            }
        }
    }
    let exactness = match claim {
        None => Exactness::NotClaimed,
        Some(assumption) if single && leading_ok => Exactness::Holds { assumption },
        Some(_) => Exactness::Fails,
    };
    Ok(LeadingTermCheck { fmax: top.face.to_string(), m_max: s.m_max, k_max: fmt_rat(&s.k_max), semifree_max: top.semifree, leading_ok, exactness })
}

/// Named classes for reporting: facet labels, `[M]`, and (for surfaces) a
/// quantum lift of the point class.
#[derive(Debug, Clone)]
pub struct GeometricDictionary {
    pub labels: Vec<String>,
    /// Classical normal forms of the facet classes.
    pub facet_classes: Vec<PolyQ>,
    pub point_lift: Option<QClass>,
    /// Vertex (facet set) whose circle defines the point lift.
    pub point_vertex: Option<Vec<usize>>,
}

/// Builds the dictionary; for surfaces the point lift comes from the first
/// vertex whose two edges both have `c1 ≥ 2`.
pub fn build_dictionary(qp: &QuantumPresentation) -> Result<GeometricDictionary> {
    let p = &qp.polytope;
    let labels: Vec<String> = (0..p.num_facets()).map(|i| p.label(i)).collect();
    let facet_classes: Vec<PolyQ> = (0..p.num_facets()).map(|i| qp.ring.normal_form(&qp.ring.var(i))).collect();
    let mut dict = GeometricDictionary { labels, facet_classes, point_lift: None, point_vertex: None };
    if p.dim != 2 {
        return Ok(dict);
    }
    for facets in p.vertices.iter().map(|v| &v.facets) {
        let mut ok = true;
        for &k in facets {
            if edge_chern(qp, &FaceId(vec![k]))? * int(2) < int(4) {
                ok = false;
            }
        }
        if !ok {
            continue;
        }
        let xi: Vec<i64> = (0..p.dim).map(|r| facets.iter().map(|&i| p.facets[i].normal[r]).sum()).collect();
        let s = seidel_element(qp, &xi)?;
        let lift = s.value.shift(-s.m_max, &s.k_max);
        let classical = lift.get(&(Rat::zero(), 0)).cloned().unwrap_or_else(|| PolyQ::zero(qp.nvars()));
        if qp.ring.integrate(&classical.degree_part(2))? != Rat::one() {
            return Err(Error::InvariantMismatch(format!("point lift at vertex {}", FaceId(facets.clone()))));
        }
        dict.point_lift = Some(lift);
        dict.point_vertex = Some(facets.clone());
        return Ok(dict);
    }
    Err(Error::NoEligibleVertex)
}

/// One named term `coeff · name ⊗ q^d t^κ` in homology orientation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedTerm {
    pub name: String,
    pub coeff: String,
    pub q: i64,
    pub t: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HomologyReport {
    pub terms: Vec<NamedTerm>,
    /// Homology-orientation bound: terms with `t`-exponent at least this are exact.
    pub precision: Option<String>,
}

impl HomologyReport {
    pub fn render(&self) -> String {
        let mut s = String::new();
        for t in &self.terms {
            let c = crate::rational::parse_rat(&t.coeff).expect("rendered rational");
            let qt = fmt_qt(t.q, &crate::rational::parse_rat(&t.t).expect("rendered rational"));
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let name = if t.name.contains([' ', '+', '-']) { format!("({})", t.name) } else { t.name.clone() };
            if !a.is_one() {
                s.push_str(&fmt_rat(&a));
                s.push(' ');
            }
            s.push_str(&name);
            if !qt.is_empty() {
                s.push_str(" ⊗ ");
                s.push_str(&qt);
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        if let Some(p) = &self.precision {
            s.push_str(&format!(" + O(t^{{{p}}})"));
        }
        s
    }
}

fn name_linear(dict: &GeometricDictionary, v: &PolyQ) -> Vec<(String, Rat)> {
    // A single facet class when possible.
    for (i, c) in dict.facet_classes.iter().enumerate() {
        if let Some((m, a)) = c.leading() {
            let lambda = v.coeff(m) / a;
            if !lambda.is_zero() && &c.scale(&lambda) == v {
                return vec![(dict.labels[i].clone(), lambda)];
            }
        }
    }
    // Otherwise a combination over the first facets spanning H².
    let mut chosen: Vec<usize> = Vec::new();
    let mut monos: Vec<Monomial> = Vec::new();
    for c in &dict.facet_classes {
        for (m, _) in c.terms() {
            if !monos.contains(m) {
                monos.push(m.clone());
            }
        }
    }
    for (m, _) in v.terms() {
        if !monos.contains(m) {
            monos.push(m.clone());
        }
    }
    for i in 0..dict.facet_classes.len() {
        let mut trial = chosen.clone();
        trial.push(i);
        let rows: Vec<Vec<Rat>> = monos.iter().map(|m| trial.iter().map(|&j| dict.facet_classes[j].coeff(m)).collect()).collect();
        if rank(&rows) == trial.len() {
            chosen = trial;
        }
    }
    // Solve the normal equations (exact: v lies in the span).
    let a: Vec<Vec<Rat>> = chosen
        .iter()
        .map(|&r| chosen.iter().map(|&c| monos.iter().map(|m| dict.facet_classes[r].coeff(m) * dict.facet_classes[c].coeff(m)).sum()).collect())
        .collect();
    let b: Vec<Rat> = chosen.iter().map(|&r| monos.iter().map(|m| dict.facet_classes[r].coeff(m) * v.coeff(m)).sum()).collect();
    let x = solve_rat(&a, &b).expect("facet classes span degree 2");
    chosen.iter().zip(x).filter(|(_, c)| !c.is_zero()).map(|(&i, c)| (dict.labels[i].clone(), c)).collect()
}

fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for j in 0..ncols {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// The quantum class behind a name: `[M]`, a facet label, or `p` for the point lift.
pub fn named_class(dict: &GeometricDictionary, qp: &QuantumPresentation, name: &str) -> Result<QClass> {
    if name == "[M]" {
        return Ok(qp.one());
    }
    if name == "p" {
        return dict.point_lift.clone().ok_or(Error::DictionaryIncomplete(4));
    }
    match dict.labels.iter().position(|l| l == name) {
        Some(i) => Ok(qp.var(i)),
        None => Err(Error::Parse(format!("unknown class name {name}"))),
    }
}

/// Renders `a * b = …` for two named classes.
pub fn product_line(dict: &GeometricDictionary, qp: &QuantumPresentation, a: &str, b: &str) -> Result<String> {
    let z = qp.qprod(&named_class(dict, qp, a)?, &named_class(dict, qp, b)?)?;
    Ok(format!("{a} * {b} = {}", to_homology_report(dict, qp, &z)?.render()))
}

/// Rewrites a reduced class in named homology classes with exponents flipped.
pub fn to_homology_report(dict: &GeometricDictionary, qp: &QuantumPresentation, z: &QClass) -> Result<HomologyReport> {
    let n = qp.polytope.dim as u32;
    let mut rest = qp.quantum_nf(z)?;
    let mut terms: Vec<(Level, String, Rat)> = Vec::new();
    loop {
        let Some((level, poly)) = rest.terms().next().map(|(k, c)| (k.clone(), c.clone())) else { break };
        let mut handled = PolyQ::zero(qp.nvars());
        for deg in 0..=n {
            let part = poly.degree_part(deg);
            if part.is_zero() {
                continue;
            }
            if deg == 2 && n == 2 {
                // Rewrite through the point lift; its higher levels feed later iterations.
                let lift = dict.point_lift.as_ref().ok_or(Error::DictionaryIncomplete(4))?;
                let base = lift.get(&(Rat::zero(), 0)).expect("point lift has a classical part");
                let (m, a) = base.leading().expect("point class is nonzero");
                let lambda = part.coeff(m) / a;
                terms.push((level.clone(), "p".to_string(), lambda.clone()));
                rest = rest.checked_sub(&lift.shift(level.1, &level.0).scale(&lambda))?;
                continue;
            }
            handled = &handled + &part;
            if deg == 0 {
                terms.push((level.clone(), "[M]".to_string(), part.coeff(&Monomial::one(qp.nvars()))));
            } else if deg == 1 {
                for (name, c) in name_linear(dict, &part) {
                    terms.push((level.clone(), name, c));
                }
            } else {
                return Err(Error::DictionaryIncomplete(2 * deg as i64));
            }
        }
        let done = qp.class(handled).shift(level.1, &level.0);
        rest = rest.checked_sub(&done)?;
    }
    terms.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(HomologyReport {
        terms: terms
            .into_iter()
            .map(|((k, d), name, c)| NamedTerm { name, coeff: fmt_rat(&c), q: -d, t: fmt_rat(&-k) })
            .collect(),
        precision: rest.precision().map(|p| fmt_rat(&-p)),
    })
}

/// Homology report of a Seidel element, e.g. `B ⊗ q t^{7/20}`.
pub fn report_element(dict: &GeometricDictionary, qp: &QuantumPresentation, s: &SeidelElement) -> Result<HomologyReport> {
    to_homology_report(dict, qp, &s.value)
}

/// Seidel elements of several circles, keyed by vector, for batch reporting.
pub fn seidel_table(qp: &QuantumPresentation, xis: &[Vec<i64>]) -> Result<BTreeMap<Vec<i64>, QClass>> {
    xis.iter().map(|xi| Ok((xi.clone(), seidel_element(qp, xi)?.value))).collect()
}
