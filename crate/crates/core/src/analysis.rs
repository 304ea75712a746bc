//! Obstruction battery for essentiality of torus circles in `Ham(M, ω)`.
//!
//! Every rule either certifies that the loop is essential or stays silent;
//! nothing here certifies inessentiality.

use crate::circle::{self, FixedComponent};
use crate::cohomology::{restrict_to_face, ClassicalRing};
use crate::error::Result;
use crate::poly::PolyQ;
use crate::polytope::DelzantPolytope;
use crate::quantum::{fmt_class, Mode, QuantumPresentation};
use crate::rational::{fmt_rat, int, Rat};
use crate::seidel;
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Essential,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Essential => "ESSENTIAL",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Finding {
    pub rule: String,
    pub triggered: bool,
    /// False when the conclusion rests on unverified input (an explicit Y-table).
    pub definitive: bool,
    pub certificate: Vec<String>,
    pub assumptions: Vec<String>,
}

impl Finding {
    fn new(rule: &str) -> Self {
        Finding { rule: rule.to_string(), triggered: false, definitive: true, certificate: Vec::new(), assumptions: Vec::new() }
    }

    fn hit(&mut self, line: String) {
        self.triggered = true;
        self.certificate.push(line);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainBound {
    pub min_cost: String,
    pub k_max: String,
    /// Minimal-cost sequences of fixed components, by face name.
    pub optimal_paths: Vec<Vec<String>>,
    /// Whether some minimal sequence realizes `m_max` (only meaningful when `min_cost = K_max`).
    pub m_condition: bool,
    pub triggered: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ObstructionReport {
    pub xi: Vec<i64>,
    pub verdict: Verdict,
    pub findings: Vec<Finding>,
    pub chain: ChainBound,
    pub seidel_summary: Option<String>,
}

impl ObstructionReport {
    pub fn triggered_rules(&self) -> Vec<&str> {
        self.findings.iter().filter(|f| f.triggered && f.definitive).map(|f| f.rule.as_str()).collect()
    }

    /// First line `VERDICT [rules]`, then one line per finding.
    pub fn render_text(&self) -> String {
        let mut s = format!("{} [{}]\n", self.verdict, self.triggered_rules().join(", "));
        for f in &self.findings {
            let state = match (f.triggered, f.definitive) {
                (true, true) => "triggered",
                (true, false) => "triggered (conditional)",
                _ => "silent",
            };
            s.push_str(&format!("{}: {}\n", f.rule, state));
            for c in &f.certificate {
                s.push_str(&format!("  {c}\n"));
            }
            for a in &f.assumptions {
                s.push_str(&format!("  assumes {a}\n"));
            }
        }
        if let Some(sd) = &self.seidel_summary {
            s.push_str(&format!("seidel: {sd}\n"));
        }
        s
    }
}

fn monomial(ring: &ClassicalRing, powers: impl Iterator<Item = (usize, i64)>) -> PolyQ {
    let mut out = PolyQ::one(ring.nvars);
    for (i, e) in powers {
        out = &out * &ring.var(i).pow(e.unsigned_abs() as u32);
    }
    ring.normal_form(&out)
}

/// Whether `F` is homologically visible: positive weights all `+1` and the
/// obstruction bundle's Euler class `Π (x_j|_F)^{k_j−1}` is nonzero.
pub fn homologically_visible(p: &DelzantPolytope, ring: &ClassicalRing, c: &FixedComponent) -> Result<bool> {
    if c.positive_weights().any(|(_, w)| w != 1) {
        return Ok(false);
    }
    let mut euler = PolyQ::one(ring.nvars);
    for (j, w) in c.negative_weights() {
        euler = &euler * &ring.var(j).pow((w.unsigned_abs() - 1) as u32);
    }
    let (_, restricted) = restrict_to_face(p, &euler, &c.face)?;
    Ok(!restricted.is_zero())
}

fn face_poincare(p: &DelzantPolytope, c: &FixedComponent, shift: usize) -> Result<Vec<usize>> {
    let b = p.face_betti(&c.face, &p.generic_vector())?;
    let mut out = vec![0; shift / 2 + b.len()];
    for (k, x) in b.into_iter().enumerate() {
        out[shift / 2 + k] += x;
    }
    Ok(out)
}

fn add_into(acc: &mut Vec<usize>, v: &[usize]) {
    if acc.len() < v.len() {
        acc.resize(v.len(), 0);
    }
    for (a, b) in acc.iter_mut().zip(v) {
        *a += b;
    }
}

fn trim(mut v: Vec<usize>) -> Vec<usize> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Shortest chains of fixed components from `F_max` to `F_min` with cost
/// `|ΔK| / q_pair`, and whether a minimal chain realizes `m_max`.
pub fn chain_bound(p: &DelzantPolytope, xi: &[i64]) -> Result<ChainBound> {
    let comps = circle::fixed_components(p, xi)?;
    let n = comps.len();
    let mut cost = vec![vec![None::<Rat>; n]; n];
    let mut qs = vec![vec![1u64; n]; n];
    for a in 0..n {
        for b in 0..a {
            if comps[a].k != comps[b].k {
                let q = circle::q_pair(p, xi, &comps[a].face, &comps[b].face)?;
                let c = (&comps[a].k - &comps[b].k).abs() / int(q as i64);
                cost[a][b] = Some(c.clone());
                cost[b][a] = Some(c);
                qs[a][b] = q;
                qs[b][a] = q;
            }
        }
    }
    let (src, dst) = (0, n - 1);
    // Distances to the target, for pruning the path enumeration.
    let mut dist: Vec<Option<Rat>> = vec![None; n];
    let mut done = vec![false; n];
    dist[dst] = Some(Rat::zero());
    loop {
        let next = (0..n).filter(|&i| !done[i] && dist[i].is_some()).min_by(|&a, &b| dist[a].cmp(&dist[b]));
        let Some(u) = next else { break };
        done[u] = true;
        for v in 0..n {
            if let Some(c) = &cost[u][v] {
                let cand = dist[u].clone().expect("settled") + c;
                if dist[v].as_ref().is_none_or(|d| &cand < d) {
                    dist[v] = Some(cand);
                }
            }
        }
    }
    let min_cost = dist[src].clone().expect("the fixed-point graph is complete across levels");
    let k_max = comps[src].k.clone();
    let m_max = int(comps[src].m);
    let mut paths = Vec::new();
    let mut m_condition = false;
    if min_cost == k_max {
        let mut stack = vec![src];
        let mut seen = vec![false; n];
        seen[src] = true;
        enumerate(&comps, &cost, &qs, &dist, &min_cost, &mut stack, &mut seen, Rat::zero(), Rat::zero(), &mut |path, m| {
            if m == &m_max {
                m_condition = true;
            }
            paths.push(path.iter().map(|&i| comps[i].face.to_string()).collect());
        });
    }
    let triggered = min_cost > k_max || (min_cost == k_max && !m_condition);
    Ok(ChainBound { min_cost: fmt_rat(&min_cost), k_max: fmt_rat(&k_max), optimal_paths: paths, m_condition, triggered })
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    comps: &[FixedComponent],
    cost: &[Vec<Option<Rat>>],
    qs: &[Vec<u64>],
    dist: &[Option<Rat>],
    target: &Rat,
    stack: &mut Vec<usize>,
    seen: &mut [bool],
    spent: Rat,
    m_acc: Rat,
    visit: &mut dyn FnMut(&[usize], &Rat),
) {
    let u = *stack.last().expect("nonempty path");
    if u == comps.len() - 1 {
        if &spent == target {
            visit(stack, &m_acc);
        }
        return;
    }
    for v in 0..comps.len() {
        let (Some(c), Some(rest)) = (&cost[u][v], &dist[v]) else { continue };
        if seen[v] || &(&spent + c + rest) > target {
            continue;
        }
        let dk = &comps[u].k - &comps[v].k;
        let sign = if dk.is_positive() { int(1) } else { int(-1) };
        let dm = Rat::from_integer((comps[u].m - comps[v].m).into()) / int(qs[u][v] as i64) * sign;
        seen[v] = true;
        stack.push(v);
        enumerate(comps, cost, qs, dist, target, stack, seen, &spent + c, &m_acc + dm, visit);
        stack.pop();
        seen[v] = false;
    }
}

/// Runs all rules on the mean-normalized polytope; `qp` enables the Seidel rule.
pub fn analyze(p: &DelzantPolytope, xi: &[i64], qp: Option<&QuantumPresentation>) -> Result<ObstructionReport> {
    let p = &p.normalize()?;
    let comps = circle::fixed_components(p, xi)?;
    let ring = ClassicalRing::new(p);
    let top = &comps[0];
    let bottom = comps.last().expect("fixed components exist");
    let zero_km = |c: &FixedComponent| c.k.is_zero() && c.m == 0;
    let mut findings = Vec::new();

    let mut t1 = Finding::new("T1");
    for (c, which) in [(top, "maximum"), (bottom, "minimum")] {
        if c.semifree {
            t1.hit(format!("{which} {} is semifree", c.face));
        }
    }
    findings.push(t1);

    let mut t2 = Finding::new("T2");
    for c in &comps {
        let is_top = c.face == top.face;
        if !is_top && circle::superlevel_isotropy_bound(p, xi, Some(&c.k))? > 2 {
            continue;
        }
        if !homologically_visible(p, &ring, c)? {
            if !is_top {
                t2.certificate.push(format!("{} not visible", c.face));
            }
            continue;
        }
        if is_top {
            t2.hit(format!("{} is a visible maximum", c.face));
        } else if !zero_km(c) || !c.semifree {
            t2.hit(format!("{} visible with K = {}, m = {}, semifree = {}", c.face, fmt_rat(&c.k), c.m, c.semifree));
        }
    }
    findings.push(t2);

    let mut p4 = Finding::new("P4");
    for c in comps.iter().filter(|c| c.semifree) {
        let fp = monomial(&ring, c.positive_weights());
        let fm = monomial(&ring, c.negative_weights());
        if !zero_km(c) {
            p4.hit(format!("semifree {} has K = {}, m = {}", c.face, fmt_rat(&c.k), c.m));
        } else if fp != fm {
            p4.hit(format!("semifree {} has [f+] != [f-]", c.face));
        }
    }
    findings.push(p4);

    let mut r5 = Finding::new("R5");
    for c in &comps {
        let xp = monomial(&ring, c.positive_weights());
        let xm = monomial(&ring, c.negative_weights());
        if xp.is_zero() || xm.is_zero() {
            continue;
        }
        if !zero_km(c) {
            r5.hit(format!("{} has X+, X- nonzero with K = {}, m = {}", c.face, fmt_rat(&c.k), c.m));
        } else if xp != xm {
            r5.hit(format!("{} has X+ != X-", c.face));
        }
    }
    findings.push(r5);

    let k = circle::global_isotropy(p, xi)?;
    let mut s2 = Finding::new("S2");
    if k <= 2 {
        if top.k != -bottom.k.clone() {
            s2.hit(format!("K_max = {} but K_min = {}", fmt_rat(&top.k), fmt_rat(&bottom.k)));
        }
        if top.m != -bottom.m {
            s2.hit(format!("m_max = {} but m_min = {}", top.m, bottom.m));
        }
        let strata = circle::isotropy_components(p, xi, 2)?;
        let mut groups: BTreeSet<(usize, Rat, i64)> = BTreeSet::new();
        for c in &comps {
            groups.insert((strata.component_of(&c.face).expect("fixed faces lie in every stratum"), c.k.clone(), c.m));
        }
        for (n, mu, m) in groups {
            let mut lhs = Vec::new();
            let mut rhs = Vec::new();
            for c in &comps {
                let cn = strata.component_of(&c.face).expect("fixed faces lie in every stratum");
                if cn != n {
                    continue;
                }
                if c.k == mu && c.m == m {
                    add_into(&mut lhs, &face_poincare(p, c, c.index)?);
                }
                if c.k == -mu.clone() && c.m == -m {
                    add_into(&mut rhs, &face_poincare(p, c, c.coindex)?);
                }
            }
            if trim(lhs) != trim(rhs) {
                s2.hit(format!("homology at K = {}, m = {m} has no mirror in its Z/2 component", fmt_rat(&mu)));
            }
        }
    } else {
        s2.certificate.push(format!("not applicable: isotropy {k} > 2"));
    }
    findings.push(s2);

    let mut cr = Finding::new("C");
    let kmin_abs = bottom.k.abs();
    let km1 = int(k as i64 - 1);
    let same_k_component = {
        let s = circle::isotropy_components(p, xi, k)?;
        s.component_of(&top.face) == s.component_of(&bottom.face)
    };
    let forward = top.k <= kmin_abs
        && kmin_abs <= &km1 * &top.k
        && (kmin_abs != &km1 * &top.k || (int(bottom.m) == &km1 * int(top.m.abs()) && same_k_component));
    let backward = kmin_abs <= top.k
        && top.k <= &km1 * &kmin_abs
        && (top.k != &km1 * &kmin_abs || (int(-top.m) == &km1 * int(bottom.m.abs()) && same_k_component));
    if !forward && !backward {
        cr.hit(format!("K_max = {}, K_min = {} violate the {k}-fold isotropy bound in both orientations", fmt_rat(&top.k), fmt_rat(&bottom.k)));
    }
    findings.push(cr);

    let chain = chain_bound(p, xi)?;
    let mut p6 = Finding::new("P6");
    if chain.triggered {
        p6.hit(format!("min chain cost {} vs K_max {}, m condition {}", chain.min_cost, chain.k_max, chain.m_condition));
    }
    findings.push(p6);

    let mut seidel_summary = None;
    if let Some(qp) = qp {
        let mut sd = Finding::new("SD");
        let normalized;
        let qp = if qp.polytope.is_normalized() {
            Some(qp)
        } else if qp.mode == Mode::Fano {
            normalized = QuantumPresentation::fano(p, Some(qp.cutoff.clone()))?;
            Some(&normalized)
        } else {
            sd.certificate.push("skipped: Y-table given for a polytope that is not mean normalized".into());
            None
        };
        if let Some(qp) = qp {
            let s = seidel::seidel_element(qp, xi)?;
            if !qp.quantum_nf(&s.value.checked_sub(&qp.one())?)?.is_zero() {
                sd.hit(format!("S = {} != 1", fmt_class(&s.value)));
            }
            if qp.mode == Mode::Nef {
                sd.definitive = false;
                sd.assumptions.push("the supplied Y-table is correct".into());
            }
            seidel_summary = Some(fmt_class(&s.value));
        }
        findings.push(sd);
    }

    let verdict = if findings.iter().any(|f| f.triggered && f.definitive) { Verdict::Essential } else { Verdict::Inconclusive };
    Ok(ObstructionReport { xi: xi.to_vec(), verdict, findings, chain, seidel_summary })
}

/// Rules that fired, keyed by rule id, for quick lookups in tests and the CLI.
pub fn triggered_map(r: &ObstructionReport) -> BTreeMap<String, bool> {
    r.findings.iter().map(|f| (f.rule.clone(), f.triggered)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use crate::rational::rat;

    fn fano(p: &DelzantPolytope) -> QuantumPresentation {
        QuantumPresentation::fano(p, None).unwrap()
    }

    #[test]
    fn blowup_facet_circle() {
        let p = examples::blowup_cp2(&rat(1, 2)).unwrap();
        let r = analyze(&p, &[-1, 0], Some(&fano(&p))).unwrap();
        assert_eq!(r.verdict, Verdict::Essential);
        let t = triggered_map(&r);
        assert!(t["T1"] && t["SD"]);
    }

    #[test]
    fn blowup_twofold_visibility() {
        let p = examples::blowup_cp2(&rat(1, 2)).unwrap();
        let r = analyze(&p, &[-2, -1], None).unwrap();
        assert_eq!(r.verdict, Verdict::Essential);
        let t2 = r.findings.iter().find(|f| f.rule == "T2").unwrap();
        assert!(t2.triggered);
        assert!(t2.certificate.iter().any(|c| c.starts_with("D1∩D3 visible with K = 1/20")));
        assert!(t2.certificate.iter().any(|c| c == "D2∩D4 not visible"));
    }

    #[test]
    fn square_diagonal() {
        let p = examples::s2xs2(&int(2)).unwrap();
        let r = analyze(&p, &[1, 1], Some(&fano(&p))).unwrap();
        assert!(r.render_text().starts_with("ESSENTIAL [T1, "));
        let t1 = r.findings.iter().find(|f| f.rule == "T1").unwrap();
        assert_eq!(t1.certificate.len(), 2);
    }

    #[test]
    fn chains() {
        let cp2 = examples::cp2().unwrap();
        let c = chain_bound(&cp2, &[2, 1]).unwrap();
        assert_eq!((c.min_cost.as_str(), c.k_max.as_str()), ("1", "1"));
        assert!(c.m_condition);
        assert!(!c.triggered);
        let sq = examples::s2xs2(&int(2)).unwrap();
        let c = chain_bound(&sq, &[1, 0]).unwrap();
        assert_eq!((c.min_cost.as_str(), c.k_max.as_str()), ("2", "1"));
        assert!(c.triggered);
    }

    #[test]
    fn vertex_visibility_matches_semifree() {
        let p = examples::hirzebruch2(&int(2)).unwrap();
        let ring = ClassicalRing::new(&p);
        for xi in [[1, 2], [2, 1], [1, -3]] {
            for c in circle::fixed_components(&p, &xi).unwrap().iter().filter(|c| c.dim == 0 && c.positive_weights().all(|(_, w)| w == 1)) {
                assert_eq!(homologically_visible(&p, &ring, c).unwrap(), c.semifree, "{xi:?} {}", c.face);
            }
        }
    }
}
