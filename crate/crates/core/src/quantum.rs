//! Small quantum cohomology as a quotient of the classical presentation by
//! Novikov-deformed Stanley–Reisner relations.

use crate::cohomology::ClassicalRing;
use crate::error::{Error, Result};
use crate::novikov::{Level, NovScalar, Series};
use crate::poly::{Monomial, PolyQ};
use crate::polytope::{DelzantPolytope, PrimitiveSet};
use crate::rational::{fmt_rat, int, Rat};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Series whose coefficients are polynomials in the facet variables.
pub type NovPoly = Series<PolyQ>;

/// A quantum cohomology class, represented on standard monomials once reduced.
pub type QClass = NovPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Fano,
    Nef,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Fano => "fano",
            Mode::Nef => "nef",
        })
    }
}

/// Full expressions `Y_i = x_i + (higher order)`; missing entries mean `Y_i = x_i`.
#[derive(Debug, Clone, Default)]
pub struct YTable {
    pub entries: BTreeMap<usize, NovPoly>,
}

#[derive(Debug, Clone)]
pub struct QuantumPresentation {
    pub polytope: DelzantPolytope,
    pub ring: ClassicalRing,
    pub primitive_sets: Vec<PrimitiveSet>,
    /// `Δ_I` for each Stanley–Reisner generator, so that `x^I = Δ_I` holds quantumly.
    pub corrections: Vec<NovPoly>,
    pub hbar: Rat,
    pub cutoff: Rat,
    pub mode: Mode,
    pub ytable: YTable,
}

/// Default cutoff: four times the largest relation energy.
pub fn default_cutoff(p: &DelzantPolytope) -> Result<Rat> {
    let sets = p.primitive_sets()?;
    Ok(sets.iter().map(|s| s.omega.clone()).max().unwrap_or_else(Rat::one) * int(4))
}

fn monomial_class(m: Monomial, c: Rat, level: Level, cutoff: &Rat) -> NovPoly {
    Series::from_terms([(level, PolyQ::term(m, c))], cutoff.clone())
}

impl QuantumPresentation {
    pub fn fano(p: &DelzantPolytope, cutoff: Option<Rat>) -> Result<Self> {
        Self::build(p, Mode::Fano, YTable::default(), cutoff)
    }

    pub fn nef(p: &DelzantPolytope, ytable: YTable, cutoff: Option<Rat>) -> Result<Self> {
        Self::build(p, Mode::Nef, ytable, cutoff)
    }

    fn build(p: &DelzantPolytope, mode: Mode, ytable: YTable, cutoff: Option<Rat>) -> Result<Self> {
        let cutoff = match cutoff {
            Some(c) => c,
            None => default_cutoff(p)?,
        };
        let ring = ClassicalRing::new(p);
        let sets = p.primitive_sets()?;
        debug_assert_eq!(sets.iter().map(|s| s.indices.clone()).collect::<Vec<_>>(), ring.sr_sets);
        let n = ring.nvars;
        for (&i, y) in &ytable.entries {
            check_y_entry(n, i, y)?;
        }
        let y = |i: usize| -> NovPoly {
            ytable.entries.get(&i).cloned().unwrap_or_else(|| monomial_class(Monomial::var(n, i), Rat::one(), (Rat::zero(), 0), &cutoff))
        };
        let mut corrections = Vec::new();
        for s in &sets {
            let lhs = Monomial::from_vars(n, &s.indices);
            let mut rhs_m = Monomial::one(n);
            for (&j, &c) in &s.complement {
                rhs_m.0[j] += c as u32;
            }
            let delta = match mode {
                Mode::Fano => monomial_class(rhs_m, Rat::one(), (s.omega.clone(), s.c1), &cutoff),
                Mode::Nef => {
                    let mut prod_i = NovPoly::from_terms([((Rat::zero(), 0), PolyQ::one(n))], cutoff.clone());
                    for &i in &s.indices {
                        prod_i = prod_i.checked_mul(&y(i))?;
                    }
                    let mut prod_j = NovPoly::from_terms([((Rat::zero(), 0), PolyQ::one(n))], cutoff.clone());
                    for (&j, &c) in &s.complement {
                        for _ in 0..c {
                            prod_j = prod_j.checked_mul(&y(j))?;
                        }
                    }
                    let x_i = monomial_class(lhs.clone(), Rat::one(), (Rat::zero(), 0), &cutoff);
                    x_i.checked_sub(&prod_i)?.checked_add(&prod_j.shift(s.c1, &s.omega))?
                }
            };
            match delta.valuation() {
                Ok(v) if !v.is_positive() => return Err(Error::NonPositiveEnergy(s.to_string())),
                _ => {}
            }
            corrections.push(delta);
        }
        let hbar = corrections.iter().filter_map(|d| d.valuation().ok()).min().unwrap_or_else(|| cutoff.clone());
        Ok(QuantumPresentation { polytope: p.clone(), ring, primitive_sets: sets, corrections, hbar, cutoff, mode, ytable })
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars
    }

    /// A classical polynomial as a quantum class at level zero.
    pub fn class(&self, f: PolyQ) -> QClass {
        Series::from_terms([((Rat::zero(), 0), f)], self.cutoff.clone())
    }

    pub fn one(&self) -> QClass {
        self.class(PolyQ::one(self.nvars()))
    }

    pub fn var(&self, i: usize) -> QClass {
        self.class(PolyQ::var(self.nvars(), i))
    }

    pub fn zero(&self) -> QClass {
        Series::zero(self.cutoff.clone())
    }

    /// `Y_i` (equal to `x_i` unless the table says otherwise).
    pub fn y(&self, i: usize) -> QClass {
        self.ytable.entries.get(&i).cloned().unwrap_or_else(|| self.var(i))
    }

    /// Scalar times class.
    pub fn scalar_mul(&self, s: &NovScalar, z: &QClass) -> Result<QClass> {
        let n = self.nvars();
        let lifted = s.map_coeffs(|c| PolyQ::constant(n, c.clone()));
        lifted.checked_mul(z)
    }

    /// Reduces `z` to standard monomials modulo the quantum ideal.
    ///
    /// Levels are processed by increasing `t`-exponent; each use of a
    /// Stanley–Reisner generator `x^I` during classical reduction is replaced
    /// by `Δ_I`, which sits at least `ħ` higher.
    pub fn quantum_nf(&self, z: &QClass) -> Result<QClass> {
        if z.cutoff() != &self.cutoff {
            return Err(Error::CutoffMismatch);
        }
        let n = self.nvars();
        let mut precision = z.precision().cloned();
        let mut pending: BTreeMap<Level, PolyQ> = z.terms().map(|(k, c)| (k.clone(), c.clone())).collect();
        let mut out: Vec<(Level, PolyQ)> = Vec::new();
        while let Some((level, poly)) = pending.pop_first() {
            let bound = match &precision {
                Some(p) if p < &self.cutoff => p.clone(),
                _ => self.cutoff.clone(),
            };
            if level.0 > bound {
                if level.0 > self.cutoff {
                    precision = Some(precision.map_or(self.cutoff.clone(), |p| p.min(self.cutoff.clone())));
                }
                continue;
            }
            let (nf, trace) = self.ring.normal_form_traced(&poly);
            if !nf.is_zero() {
                out.push((level.clone(), nf));
            }
            if trace.is_empty() {
                continue;
            }
            let quotients = self.ring.gb.expand_trace(&trace);
            for (k, delta) in self.corrections.iter().enumerate() {
                let q = &quotients[self.ring.linear_count + k];
                if q.is_zero() {
                    continue;
                }
                if let Some(p) = delta.precision() {
                    let p = &level.0 + p;
                    precision = Some(precision.map_or(p.clone(), |x| x.min(p)));
                }
                for ((kappa, d), c) in delta.terms() {
                    let key = (&level.0 + kappa, level.1 + d);
                    let add = q * c;
                    let slot = pending.entry(key).or_insert_with(|| PolyQ::zero(n));
                    *slot = &*slot + &add;
                }
            }
        }
        Ok(Series::from_terms(out, self.cutoff.clone()).with_precision(precision))
    }

    pub fn qprod(&self, a: &QClass, b: &QClass) -> Result<QClass> {
        self.quantum_nf(&a.checked_mul(b)?)
    }

    /// Coefficients of a reduced class on the standard basis.
    pub fn coefficients(&self, z: &QClass) -> BTreeMap<Monomial, NovScalar> {
        let mut out: BTreeMap<Monomial, NovScalar> = BTreeMap::new();
        for ((k, d), poly) in z.terms() {
            for (m, c) in poly.terms() {
                let term = NovScalar::monomial(c.clone(), *d, k.clone(), self.cutoff.clone());
                let slot = out.entry(m.clone()).or_insert_with(|| NovScalar::zero(self.cutoff.clone()));
                *slot = &*slot + &term;
            }
        }
        if let Some(p) = z.precision() {
            for v in out.values_mut() {
                *v = v.clone().with_precision(Some(p.clone()));
            }
        }
        out
    }

    fn assemble(&self, coeffs: &[(Monomial, NovScalar)]) -> QClass {
        let mut out = self.zero();
        for (m, s) in coeffs {
            let lifted = s.map_coeffs(|c| PolyQ::term(m.clone(), c.clone()));
            out = &out + &lifted;
        }
        out
    }

    /// Multiplicative inverse, by Gaussian elimination over the Novikov field on
    /// the matrix of multiplication by `a` in the standard basis.
    pub fn qinv(&self, a: &QClass) -> Result<QClass> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        if degree(a).is_none() {
            return Err(Error::Malformed("only homogeneous classes can be inverted".into()));
        }
        let basis = self.ring.all_basis();
        let m = basis.len();
        let zero = NovScalar::zero(self.cutoff.clone());
        // mat[i][j] = coefficient of basis[i] in a * basis[j]; last column is the unit vector.
        let mut mat: Vec<Vec<NovScalar>> = vec![vec![zero.clone(); m + 1]; m];
        for (j, b) in basis.iter().enumerate() {
            let col = self.qprod(a, &self.class(PolyQ::term(b.clone(), Rat::one())))?;
            let coeffs = self.coefficients(&col);
            for (i, bi) in basis.iter().enumerate() {
                if let Some(c) = coeffs.get(bi) {
                    mat[i][j] = c.clone();
                }
            }
        }
        mat[0][m] = NovScalar::one(self.cutoff.clone());
        let mut pivots = Vec::with_capacity(m);
        let mut row = 0;
        for col in 0..m {
            let piv = (row..m)
                .filter(|&i| !mat[i][col].is_zero())
                .min_by(|&x, &y| mat[x][col].valuation().unwrap().cmp(&mat[y][col].valuation().unwrap()));
            let Some(piv) = piv else { return Err(Error::NotAUnit) };
            mat.swap(row, piv);
            let inv = mat[row][col].invert()?;
            for x in mat[row].iter_mut() {
                *x = x.checked_mul(&inv)?;
            }
            for i in 0..m {
                if i == row || mat[i][col].is_zero() {
                    continue;
                }
                let f = mat[i][col].clone();
                for j in 0..=m {
                    let sub = f.checked_mul(&mat[row][j])?;
                    mat[i][j] = mat[i][j].checked_sub(&sub)?;
                }
            }
            pivots.push(col);
            row += 1;
        }
        let coeffs: Vec<(Monomial, NovScalar)> = (0..m).map(|i| (basis[pivots[i]].clone(), mat[i][m].clone())).collect();
        Ok(self.assemble(&coeffs))
    }

    /// Integer power; negative exponents go through [`Self::qinv`].
    pub fn qpow(&self, a: &QClass, e: i64) -> Result<QClass> {
        let base = if e < 0 { self.qinv(a)? } else { a.clone() };
        let mut out = self.one();
        for _ in 0..e.unsigned_abs() {
            out = self.qprod(&out, &base)?;
        }
        Ok(out)
    }

    /// Valuation of `a * b - a ∪ b`; `None` when they agree.
    pub fn classical_limit_defect(&self, a: &PolyQ, b: &PolyQ) -> Result<Option<Rat>> {
        let q = self.qprod(&self.class(a.clone()), &self.class(b.clone()))?;
        let c = self.class(self.ring.normal_form(&(a * b)));
        let diff = q.checked_sub(&c)?;
        let v = diff.valuation().ok();
        if let Some(v) = &v {
            if v < &self.hbar {
                return Err(Error::InvariantMismatch(format!("defect valuation {} below hbar {}", fmt_rat(v), fmt_rat(&self.hbar))));
            }
        }
        Ok(v)
    }

    /// Relations `x^I = Δ_I` as strings.
    pub fn relation_strings(&self) -> Vec<String> {
        self.primitive_sets
            .iter()
            .zip(&self.corrections)
            .map(|(s, d)| format!("{} = {}", Monomial::from_vars(self.nvars(), &s.indices), fmt_class(d)))
            .collect()
    }
}

fn check_y_entry(n: usize, i: usize, y: &NovPoly) -> Result<()> {
    if i >= n {
        return Err(Error::Malformed(format!("Y-table entry for unknown facet {}", i + 1)));
    }
    let x = Series::from_terms([((Rat::zero(), 0), PolyQ::var(n, i))], y.cutoff().clone());
    let corr = y.checked_sub(&x)?;
    for ((k, d), c) in corr.terms() {
        if !k.is_positive() {
            return Err(Error::BadCorrectionValuation(i));
        }
        match c.homogeneous_degree() {
            Some(deg) if deg as i64 + d == 1 => {}
            _ => return Err(Error::BadCorrectionDegree(i)),
        }
    }
    Ok(())
}

/// Cohomological degree (`2·deg x + 2·d`) when all terms agree.
pub fn degree(z: &QClass) -> Option<i64> {
    let mut deg = None;
    for ((_, d), poly) in z.terms() {
        for (m, _) in poly.terms() {
            let g = 2 * m.total_degree() as i64 + 2 * d;
            match deg {
                None => deg = Some(g),
                Some(x) if x != g => return None,
                _ => {}
            }
        }
    }
    deg
}

/// Renders a class as a sum of `coefficient · polynomial · q^d t^κ` terms,
/// ordered by valuation, then q-degree.
pub fn fmt_class(z: &QClass) -> String {
    let mut s = String::new();
    for ((k, d), poly) in z.terms() {
        let qt = crate::novikov::fmt_qt(*d, k);
        let mut terms: Vec<(&Monomial, &Rat)> = poly.terms().collect();
        terms.reverse();
        let single = terms.len() == 1;
        let (neg, body) = if single {
            let (m, c) = terms[0];
            let a = c.abs();
            let body = match (m.is_one(), a.is_one()) {
                (true, _) if qt.is_empty() || !a.is_one() => fmt_rat(&a),
                (true, _) => String::new(),
                (false, true) => m.to_string(),
                (false, false) => format!("{}*{m}", fmt_rat(&a)),
            };
            (c.is_negative(), body)
        } else {
            (false, format!("({poly})"))
        };
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        match (body.is_empty(), qt.is_empty()) {
            (true, _) => s.push_str(&qt),
            (false, true) => s.push_str(&body),
            (false, false) => s.push_str(&format!("{body} {qt}")),
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    if let Some(p) = z.precision() {
        s.push_str(&format!(" + O(t^{{{}}})", fmt_rat(p)));
    }
    s
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassTerm {
    pub monomial: Vec<u32>,
    pub q: i64,
    pub t: String,
    pub c: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassRepr {
    pub nvars: usize,
    pub cutoff: String,
    pub precision: Option<String>,
    pub terms: Vec<ClassTerm>,
}

/// Canonical structured form: terms sorted by valuation, q-degree, then monomial.
pub fn class_repr(z: &QClass, nvars: usize) -> ClassRepr {
    let mut terms = Vec::new();
    for ((k, d), poly) in z.terms() {
        for (m, c) in poly.terms() {
            terms.push(ClassTerm { monomial: m.0.clone(), q: *d, t: fmt_rat(k), c: fmt_rat(c) });
        }
    }
    ClassRepr {
        nvars,
        cutoff: fmt_rat(z.cutoff()),
        precision: z.precision().map(fmt_rat),
        terms,
    }
}

pub fn class_from_repr(r: &ClassRepr) -> Result<QClass> {
    use crate::rational::parse_rat;
    let mut terms = Vec::new();
    for t in &r.terms {
        if t.monomial.len() != r.nvars {
            return Err(Error::Parse("monomial length does not match nvars".into()));
        }
        terms.push(((parse_rat(&t.t)?, t.q), PolyQ::term(Monomial(t.monomial.clone()), parse_rat(&t.c)?)));
    }
    let precision = r.precision.as_deref().map(parse_rat).transpose()?;
    Ok(Series::from_terms(terms, parse_rat(&r.cutoff)?).with_precision(precision))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use crate::rational::rat;

    fn mono_class(qp: &QuantumPresentation, vars: &[usize], d: i64, k: Rat) -> QClass {
        let n = qp.nvars();
        monomial_class(Monomial::from_vars(n, vars), Rat::one(), (k, d), &qp.cutoff)
    }

    fn same(qp: &QuantumPresentation, a: &QClass, b: &QClass) -> bool {
        qp.quantum_nf(&a.checked_sub(b).unwrap()).unwrap().is_zero()
    }

    fn blowup() -> QuantumPresentation {
        QuantumPresentation::fano(&examples::blowup_cp2(&rat(1, 2)).unwrap(), None).unwrap()
    }

    #[test]
    fn fano_relations() {
        let qp = blowup();
        assert_eq!(qp.relation_strings(), vec!["x1*x2 = x4 q t^{1/4}", "x3*x4 = q^2 t^{3/4}"]);
        assert_eq!(qp.hbar, rat(1, 4));
        assert_eq!(qp.cutoff, int(3));
        let sq = QuantumPresentation::fano(&examples::s2xs2(&int(2)).unwrap(), None).unwrap();
        assert_eq!(sq.relation_strings(), vec!["x1*x2 = q^2 t^2", "x3*x4 = q^2 t"]);
        let cp2 = QuantumPresentation::fano(&examples::cp2().unwrap(), None).unwrap();
        assert_eq!(cp2.relation_strings(), vec!["x1*x2*x3 = q^3 t"]);
    }

    #[test]
    fn normal_forms() {
        let qp = blowup();
        let z = qp.quantum_nf(&mono_class(&qp, &[2, 3], 0, int(0))).unwrap();
        assert_eq!(z, mono_class(&qp, &[], 2, rat(3, 4)));
        let lhs = &(&mono_class(&qp, &[2, 2], 0, int(0)) + &mono_class(&qp, &[3, 3], 0, int(0)))
            - &(&mono_class(&qp, &[3], 1, rat(1, 4)) + &mono_class(&qp, &[], 2, rat(3, 4)).scale(&int(2)));
        assert!(qp.quantum_nf(&lhs).unwrap().is_zero());
        let nf = qp.quantum_nf(&mono_class(&qp, &[0, 2], 0, int(0))).unwrap();
        assert_eq!(qp.quantum_nf(&nf).unwrap(), nf);
    }

    #[test]
    fn products() {
        let sq = QuantumPresentation::fano(&examples::s2xs2(&int(2)).unwrap(), None).unwrap();
        let p = sq.qprod(&sq.var(0), &sq.var(0)).unwrap();
        assert_eq!(p, mono_class(&sq, &[], 2, int(2)));
        let x = sq.var(3);
        assert_eq!(sq.qprod(&sq.one(), &x).unwrap(), x);
        assert_eq!(sq.qprod(&sq.one(), &sq.var(2)).unwrap(), x);
        let qp = blowup();
        assert!(same(&qp, &qp.qprod(&qp.var(0), &qp.var(0)).unwrap(), &mono_class(&qp, &[3], 1, rat(1, 4))));
    }

    #[test]
    fn inverses() {
        let sq = QuantumPresentation::fano(&examples::s2xs2(&int(2)).unwrap(), Some(int(5))).unwrap();
        assert_eq!(sq.qinv(&sq.one()).unwrap(), sq.one());
        let a = mono_class(&sq, &[0], -1, int(-1));
        assert!(same(&sq, &sq.qinv(&a).unwrap(), &a));
        let s = &sq.var(0) + &sq.var(2);
        let inv = sq.qinv(&s).unwrap();
        let back = sq.qprod(&s, &inv).unwrap();
        assert!(back.agrees_with(&sq.one()).unwrap());
        assert!(matches!(sq.qinv(&sq.zero()), Err(Error::ZeroElement)));
        // (x1 + x3)^{-1} = (x3 - x1) q^{-2} t^{-1} (1 + t + t^2 + ...) with μ = 2.
        let lead = &mono_class(&sq, &[2], -2, int(-1)) - &mono_class(&sq, &[0], -2, int(-1));
        let expected = (0..=6).fold(sq.zero(), |acc, k| &acc + &lead.shift(0, &int(k)));
        assert!(same(&sq, &inv, &expected));
        assert!(inv.is_truncated());
    }

    #[test]
    fn classical_limit() {
        let qp = blowup();
        let n = qp.nvars();
        assert_eq!(qp.classical_limit_defect(&PolyQ::var(n, 2), &PolyQ::var(n, 3)).unwrap(), Some(rat(3, 4)));
        assert_eq!(qp.classical_limit_defect(&PolyQ::one(n), &PolyQ::var(n, 3)).unwrap(), None);
        let sq = QuantumPresentation::fano(&examples::s2xs2(&int(2)).unwrap(), None).unwrap();
        assert_eq!(sq.classical_limit_defect(&PolyQ::var(4, 0), &PolyQ::var(4, 2)).unwrap(), None);
    }

    #[test]
    fn degrees() {
        let qp = blowup();
        assert_eq!(degree(&mono_class(&qp, &[0], 1, int(1))), Some(4));
        assert_eq!(degree(&(&qp.one() + &qp.var(0))), None);
        for d in &qp.corrections {
            assert!(degree(d).is_some());
        }
    }

    #[test]
    fn nef_validation() {
        let p = examples::hirzebruch2(&int(2)).unwrap();
        let c = int(5);
        let n = 4;
        let bad = YTable {
            entries: BTreeMap::from([(0, Series::from_terms([((int(0), 0), &PolyQ::var(n, 0) + &PolyQ::var(n, 1))], c.clone()))]),
        };
        assert_eq!(QuantumPresentation::nef(&p, bad, Some(c.clone())).unwrap_err(), Error::BadCorrectionValuation(0));
        let bad_deg = YTable { entries: BTreeMap::from([(0, &mono_class_raw(n, &[0], 0, int(0), &c) + &mono_class_raw(n, &[], 0, int(1), &c))]) };
        assert_eq!(QuantumPresentation::nef(&p, bad_deg, Some(c.clone())).unwrap_err(), Error::BadCorrectionDegree(0));
        let sq = examples::s2xs2(&int(2)).unwrap();
        let a = QuantumPresentation::nef(&sq, YTable::default(), None).unwrap();
        let b = QuantumPresentation::fano(&sq, None).unwrap();
        assert_eq!(a.corrections, b.corrections);
    }

    fn mono_class_raw(n: usize, vars: &[usize], d: i64, k: Rat, c: &Rat) -> QClass {
        monomial_class(Monomial::from_vars(n, vars), Rat::one(), (k, d), c)
    }

    #[test]
    fn repr_roundtrip() {
        let qp = blowup();
        let z = qp.qprod(&qp.var(0), &qp.var(2)).unwrap();
        let r = class_repr(&z, qp.nvars());
        let json = serde_json::to_string(&r).unwrap();
        let back: ClassRepr = serde_json::from_str(&json).unwrap();
        assert_eq!(class_from_repr(&back).unwrap(), z);
    }
}
