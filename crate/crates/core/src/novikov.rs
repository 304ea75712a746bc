//! Truncated Novikov series: finite sums of `c · q^d t^κ` with rational `κ`,
//! in cohomology orientation (series extend towards large `κ`).
//!
//! Every series carries the global `cutoff` and a `precision`: terms with
//! `κ ≤ precision` are exact, anything above may be missing. Terms above
//! `min(cutoff, precision)` are never stored.

use crate::error::{Error, Result};
use crate::poly::PolyQ;
use crate::rational::{fmt_rat, parse_rat, Rat};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Coefficient ring of a [`Series`].
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn is_zero_coeff(&self) -> bool;
    fn add_to(&mut self, other: &Self);
    fn times(&self, other: &Self) -> Self;
    fn scaled(&self, r: &Rat) -> Self;
}

impl Coeff for Rat {
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn add_to(&mut self, other: &Self) {
        *self += other;
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scaled(&self, r: &Rat) -> Self {
        self * r
    }
}

impl Coeff for PolyQ {
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn add_to(&mut self, other: &Self) {
        *self = &*self + other;
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scaled(&self, r: &Rat) -> Self {
        self.scale(r)
    }
}

/// Key of a Novikov monomial `q^d t^κ`, ordered by `κ` first.
pub type Level = (Rat, i64);

fn min_opt(a: Option<Rat>, b: Option<Rat>) -> Option<Rat> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if x < y { x } else { y }),
        (x, None) => x,
        (None, y) => y,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series<C: Coeff> {
    terms: BTreeMap<Level, C>,
    cutoff: Rat,
    precision: Option<Rat>,
}

/// Element of the Novikov ring with rational coefficients.
pub type NovScalar = Series<Rat>;

impl<C: Coeff> Series<C> {
    pub fn zero(cutoff: Rat) -> Self {
        Series { terms: BTreeMap::new(), cutoff, precision: None }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Level, C)>, cutoff: Rat) -> Self {
        let mut s = Series::zero(cutoff);
        for (k, c) in terms {
            s.add_term(k, c);
        }
        s.normalize();
        s
    }

    pub fn with_precision(mut self, p: Option<Rat>) -> Self {
        self.precision = min_opt(self.precision.take(), p);
        self.normalize();
        self
    }

    pub fn cutoff(&self) -> &Rat {
        &self.cutoff
    }

    /// Bound below which (inclusive) all terms are exact; `None` when nothing was truncated.
    pub fn precision(&self) -> Option<&Rat> {
        self.precision.as_ref()
    }

    pub fn is_truncated(&self) -> bool {
        self.precision.is_some()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Level, &C)> {
        self.terms.iter()
    }

    pub fn get(&self, k: &Level) -> Option<&C> {
        self.terms.get(k)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Minimal `κ`.
    pub fn valuation(&self) -> Result<Rat> {
        self.terms.keys().next().map(|(k, _)| k.clone()).ok_or(Error::ZeroElement)
    }

    fn add_term(&mut self, k: Level, c: C) {
        if c.is_zero_coeff() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_to(&c);
                if o.get().is_zero_coeff() {
                    o.remove();
                }
            }
        }
    }

    /// Drops terms above the cutoff (recording the truncation) or above the precision.
    fn normalize(&mut self) {
        if self.terms.keys().any(|(k, _)| k > &self.cutoff) {
            self.precision = min_opt(self.precision.take(), Some(self.cutoff.clone()));
        }
        let bound = self.precision.clone().unwrap_or_else(|| self.cutoff.clone());
        self.terms.retain(|(k, _), c| k <= &bound && !c.is_zero_coeff());
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.cutoff != other.cutoff {
            return Err(Error::CutoffMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out.precision = min_opt(self.precision.clone(), other.precision.clone());
        out.normalize();
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rat::one())
    }

    pub fn scale(&self, r: &Rat) -> Self {
        let mut out = Series::zero(self.cutoff.clone());
        out.precision = self.precision.clone();
        if r.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(k, c)| (k.clone(), c.scaled(r))).collect();
        out
    }

    /// Multiplies by `q^d t^κ`.
    pub fn shift(&self, d: i64, kappa: &Rat) -> Self {
        let mut out = Series::zero(self.cutoff.clone());
        out.precision = self.precision.as_ref().map(|p| p + kappa);
        out.terms = self.terms.iter().map(|((k, e), c)| ((k + kappa, e + d), c.clone())).collect();
        out.normalize();
        out
    }

    /// Precision of a product with the given valuations (`None` = zero) and precisions.
    fn product_precision(va: Option<Rat>, pa: Option<&Rat>, vb: Option<Rat>, pb: Option<&Rat>) -> Option<Rat> {
        let mut p = None;
        if let (Some(v), Some(q)) = (va, pb) {
            p = min_opt(p, Some(v + q));
        }
        if let (Some(v), Some(q)) = (vb, pa) {
            p = min_opt(p, Some(v + q));
        }
        if let (Some(x), Some(y)) = (pa, pb) {
            p = min_opt(p, Some(x + y));
        }
        p
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Series::zero(self.cutoff.clone());
        out.precision = Self::product_precision(
            self.valuation().ok(),
            self.precision(),
            other.valuation().ok(),
            other.precision(),
        );
        let bound = out.precision.clone();
        let mut dropped = false;
        for ((k1, d1), c1) in &self.terms {
            for ((k2, d2), c2) in &other.terms {
                let k = k1 + k2;
                if k > self.cutoff {
                    dropped = true;
                    continue;
                }
                if bound.as_ref().is_some_and(|b| &k > b) {
                    continue;
                }
                out.add_term((k, d1 + d2), c1.times(c2));
            }
        }
        if dropped {
            out.precision = min_opt(out.precision.take(), Some(self.cutoff.clone()));
        }
        out.normalize();
        Ok(out)
    }

    /// Distinct q-exponents present.
    pub fn q_degrees(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.terms.keys().map(|(_, d)| *d).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        let mut out = Series::zero(self.cutoff.clone());
        out.precision = self.precision.clone();
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(c));
        }
        out
    }

    /// True when the two agree at every `κ` where both are exact.
    pub fn agrees_with(&self, other: &Self) -> Result<bool> {
        Ok(self.checked_sub(other)?.is_zero())
    }
}

impl NovScalar {
    pub fn one(cutoff: Rat) -> Self {
        Self::monomial(Rat::one(), 0, Rat::zero(), cutoff)
    }

    pub fn constant(c: Rat, cutoff: Rat) -> Self {
        Self::monomial(c, 0, Rat::zero(), cutoff)
    }

    /// `c · q^d t^κ`.
    pub fn monomial(c: Rat, d: i64, kappa: Rat, cutoff: Rat) -> Self {
        Series::from_terms([((kappa, d), c)], cutoff)
    }

    pub fn coeff(&self, d: i64, kappa: &Rat) -> Rat {
        self.terms.get(&(kappa.clone(), d)).cloned().unwrap_or_else(Rat::zero)
    }

    /// Inverse by factoring out the leading monomial and summing the geometric series.
    pub fn invert(&self) -> Result<Self> {
        let ((k0, d0), c0) = self.terms.iter().next().map(|(k, c)| (k.clone(), c.clone())).ok_or(Error::ZeroElement)?;
        if self.terms.keys().nth(1).is_some_and(|(k, _)| k == &k0) {
            return Err(Error::NotAUnit);
        }
        // self = L (1 - r) with L = c0 q^d0 t^k0 and v(r) > 0.
        let bound = &self.cutoff + &k0;
        let r: BTreeMap<Level, Rat> = self
            .terms
            .iter()
            .skip(1)
            .map(|((k, d), c)| ((k - &k0, d - d0), -(c / &c0)))
            .collect();
        let mut sum: BTreeMap<Level, Rat> = BTreeMap::from([((Rat::zero(), 0), Rat::one())]);
        let mut power = sum.clone();
        let mut truncated = false;
        while !power.is_empty() && !r.is_empty() {
            let mut next: BTreeMap<Level, Rat> = BTreeMap::new();
            for ((k1, d1), c1) in &power {
                for ((k2, d2), c2) in &r {
                    let k = k1 + k2;
                    if k > bound {
                        truncated = true;
                        continue;
                    }
                    *next.entry((k, d1 + d2)).or_insert_with(Rat::zero) += c1 * c2;
                }
            }
            next.retain(|_, c| !c.is_zero());
            for (k, c) in &next {
                *sum.entry(k.clone()).or_insert_with(Rat::zero) += c;
            }
            power = next;
        }
        let inv_c0 = Rat::one() / &c0;
        let mut out = Series::from_terms(
            sum.into_iter().map(|((k, d), c)| ((k - &k0, d - d0), c * &inv_c0)),
            self.cutoff.clone(),
        );
        let mut p = self.precision.as_ref().map(|p| p - &k0 - &k0);
        if truncated {
            p = min_opt(p, Some(self.cutoff.clone()));
        }
        out.precision = min_opt(out.precision.take(), p);
        out.normalize();
        Ok(out)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut out = NovScalar::one(self.cutoff.clone());
        for _ in 0..e.unsigned_abs() {
            out = out.checked_mul(&base)?;
        }
        Ok(out)
    }
}

impl<C: Coeff> std::ops::Add for &Series<C> {
    type Output = Series<C>;
    fn add(self, rhs: &Series<C>) -> Series<C> {
        self.checked_add(rhs).expect("series with different cutoffs")
    }
}

impl<C: Coeff> std::ops::Sub for &Series<C> {
    type Output = Series<C>;
    fn sub(self, rhs: &Series<C>) -> Series<C> {
        self.checked_sub(rhs).expect("series with different cutoffs")
    }
}

impl<C: Coeff> std::ops::Mul for &Series<C> {
    type Output = Series<C>;
    fn mul(self, rhs: &Series<C>) -> Series<C> {
        self.checked_mul(rhs).expect("series with different cutoffs")
    }
}

/// Renders `q^d t^κ` with exponent 1 suppressed; empty string for the unit.
pub fn fmt_qt(d: i64, kappa: &Rat) -> String {
    let mut parts = Vec::new();
    match d {
        0 => {}
        1 => parts.push("q".to_string()),
        d if d > 0 => parts.push(format!("q^{d}")),
        d => parts.push(format!("q^{{{d}}}")),
    }
    if !kappa.is_zero() {
        if kappa.is_one() {
            parts.push("t".to_string());
        } else if kappa.is_integer() && kappa.is_positive() {
            parts.push(format!("t^{kappa}"));
        } else {
            parts.push(format!("t^{{{}}}", fmt_rat(kappa)));
        }
    }
    parts.join(" ")
}

impl fmt::Display for NovScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for ((k, d), c) in &self.terms {
            let mono = fmt_qt(*d, k);
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            match (mono.is_empty(), a.is_one()) {
                (true, _) => s.push_str(&fmt_rat(&a)),
                (false, true) => s.push_str(&mono),
                (false, false) => s.push_str(&format!("{} {mono}", fmt_rat(&a))),
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        if let Some(p) = &self.precision {
            s.push_str(&format!(" + O(t^{{{}}})", fmt_rat(p)));
        }
        write!(f, "{s}")
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    q: i64,
    t: String,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    cutoff: String,
    precision: Option<String>,
    terms: Vec<TermRepr>,
}

impl Serialize for NovScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ScalarRepr {
            cutoff: fmt_rat(&self.cutoff),
            precision: self.precision.as_ref().map(fmt_rat),
            terms: self
                .terms
                .iter()
                .map(|((k, d), c)| TermRepr { q: *d, t: fmt_rat(k), c: fmt_rat(c) })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for NovScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = ScalarRepr::deserialize(d)?;
        let p = |s: &str| parse_rat(s).map_err(D::Error::custom);
        let cutoff = p(&r.cutoff)?;
        let precision = r.precision.as_deref().map(p).transpose()?;
        let mut terms = Vec::new();
        for t in &r.terms {
            terms.push(((p(&t.t)?, t.q), p(&t.c)?));
        }
        Ok(Series::from_terms(terms, cutoff).with_precision(precision))
    }
}
