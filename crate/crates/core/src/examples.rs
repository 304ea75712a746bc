//! Bundled example polytopes, all with centroid at the origin.

use crate::error::{Error, Result};
use crate::polytope::{DelzantPolytope, Facet};
use crate::rational::{int, rat, Rat};
use num_traits::{One, Signed};

pub const NAMES: [&str; 5] = ["s2", "cp2", "blowup_cp2", "s2xs2", "hirzebruch2"];

fn facet(normal: &[i64], support: Rat, label: &str) -> Facet {
    Facet { normal: normal.to_vec(), support, label: Some(label.to_string()) }
}

/// Default parameter for each family.
pub fn default_mu(name: &str) -> Option<Rat> {
    match name {
        "s2" | "cp2" => Some(int(1)),
        "blowup_cp2" => Some(rat(1, 2)),
        "s2xs2" | "hirzebruch2" => Some(int(2)),
        _ => None,
    }
}

/// Looks up a family by name; `mu` falls back to the family default.
pub fn by_name(name: &str, mu: Option<&Rat>) -> Result<DelzantPolytope> {
    let default = default_mu(name).ok_or_else(|| Error::Parse(format!("unknown example {name:?}")))?;
    let mu = mu.cloned().unwrap_or(default);
    match name {
        "s2" => s2(&mu),
        "cp2" => cp2(),
        "blowup_cp2" => blowup_cp2(&mu),
        "s2xs2" => s2xs2(&mu),
        _ => hirzebruch2(&mu),
    }
}

/// The sphere of area `area` as a segment.
pub fn s2(area: &Rat) -> Result<DelzantPolytope> {
    if !area.is_positive() {
        return Err(Error::Malformed("area must be positive".into()));
    }
    let h = area / int(2);
    DelzantPolytope::new("s2", 1, vec![facet(&[1], h.clone(), "[pt]"), facet(&[-1], h, "[pt]")])
}

/// The projective plane with a line of area 1.
pub fn cp2() -> Result<DelzantPolytope> {
    let e = rat(1, 3);
    DelzantPolytope::new(
        "cp2",
        2,
        vec![
            facet(&[-1, 0], e.clone(), "L"),
            facet(&[0, -1], e.clone(), "L"),
            facet(&[1, 1], e, "L"),
        ],
    )
}

/// One-point blowup of the projective plane; the exceptional divisor has area `mu²`.
pub fn blowup_cp2(mu: &Rat) -> Result<DelzantPolytope> {
    if !mu.is_positive() || mu >= &Rat::one() {
        return Err(Error::Malformed("blowup parameter must lie in (0,1)".into()));
    }
    let mu2 = mu * mu;
    let mu4 = &mu2 * &mu2;
    let mu6 = &mu4 * &mu2;
    let eps = (Rat::one() - mu6) / (int(3) * (Rat::one() - mu4));
    DelzantPolytope::new(
        "blowup_cp2",
        2,
        vec![
            facet(&[-1, 0], eps.clone(), "B"),
            facet(&[0, -1], eps.clone(), "B"),
            facet(&[1, 1], Rat::one() - int(2) * &eps, "L"),
            facet(&[-1, -1], int(2) * &eps - mu2, "E"),
        ],
    )
}

/// Product of spheres with areas `mu` (class A) and 1 (class B), as a rectangle.
pub fn s2xs2(mu: &Rat) -> Result<DelzantPolytope> {
    if mu < &Rat::one() {
        return Err(Error::Malformed("product parameter must be at least 1".into()));
    }
    let h = mu / int(2);
    let half = rat(1, 2);
    DelzantPolytope::new(
        "s2xs2",
        2,
        vec![
            facet(&[1, 0], h.clone(), "B"),
            facet(&[-1, 0], h, "B"),
            facet(&[0, 1], half.clone(), "A"),
            facet(&[0, -1], half, "A"),
        ],
    )
}

/// The same product manifold with its second toric structure (a Hirzebruch trapezoid).
pub fn hirzebruch2(mu: &Rat) -> Result<DelzantPolytope> {
    if mu <= &Rat::one() {
        return Err(Error::Malformed("Hirzebruch parameter must exceed 1".into()));
    }
    let half = rat(1, 2);
    let eps = mu / int(2) + Rat::one() / (int(6) * mu);
    DelzantPolytope::new(
        "hirzebruch2",
        2,
        vec![
            facet(&[0, 1], &half + mu / int(2) - &eps, "A+B"),
            facet(&[0, -1], &eps + &half - mu / int(2), "A-B"),
            facet(&[1, -1], eps.clone(), "B"),
            facet(&[-1, -1], eps, "B"),
        ],
    )
}

/// The Y-table of the Hirzebruch structure, as expressions in the facet variables.
pub fn hirzebruch2_ytable(mu: &Rat) -> Vec<(usize, String)> {
    let s = mu - Rat::one();
    vec![
        (0, "x1".to_string()),
        (1, format!("x2 / (1 - t^{{{s}}})")),
        (2, format!("x3 - x2 * t^{{{s}}} / (1 - t^{{{s}}})")),
        (3, format!("x4 - x2 * t^{{{s}}} / (1 - t^{{{s}}})")),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blowup_epsilon() {
        let p = blowup_cp2(&rat(1, 2)).unwrap();
        assert_eq!(p.facets[0].support, rat(7, 20));
        assert_eq!(p.facets[3].support, rat(9, 20));
    }

    #[test]
    fn hirzebruch_supports() {
        let p = hirzebruch2(&int(2)).unwrap();
        assert_eq!(p.facets[0].support, rat(5, 12));
        assert_eq!(p.facets[1].support, rat(7, 12));
        assert_eq!(p.facets[2].support, rat(13, 12));
    }

    #[test]
    fn all_examples_are_normalized() {
        for name in NAMES {
            let p = by_name(name, None).unwrap();
            assert!(p.is_normalized(), "{name}");
        }
        assert!(by_name("nope", None).is_err());
    }
}
