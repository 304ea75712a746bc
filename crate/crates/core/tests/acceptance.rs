//! Acceptance suite: eight criteria, one PASS/FAIL line each.

use num_traits::Zero;
use std::process::ExitCode;
use toriq::analysis::{analyze, chain_bound, Verdict};
use toriq::circle::{self, Isotropy};
use toriq::examples;
use toriq::expr::parse_expr;
use toriq::io::ytable_json;
use toriq::oracle;
use toriq::polytope::{DelzantPolytope, FaceId};
use toriq::quantum::{fmt_class, QClass, QuantumPresentation};
use toriq::rational::{fmt_rat, int, rat, Rat};
use toriq::seidel::{self, build_dictionary, product_line, to_homology_report, GeometricDictionary};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T, E: std::fmt::Debug>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|x| format!("{x:?}"))
}

/// `z` equals the cohomology expression `s` after reduction.
fn matches(qp: &QuantumPresentation, z: &QClass, s: &str) -> Check {
    let want = e(parse_expr(s, qp.nvars(), &qp.cutoff))?;
    let diff = e(qp.quantum_nf(&e(z.checked_sub(&want))?))?;
    ensure(diff.is_zero(), || format!("{} != {s} (difference {})", fmt_class(z), fmt_class(&diff)))
}

fn report(dict: &GeometricDictionary, qp: &QuantumPresentation, z: &QClass) -> Result<String, String> {
    Ok(e(to_homology_report(dict, qp, z))?.render())
}

fn products(dict: &GeometricDictionary, qp: &QuantumPresentation, table: &[(&str, &str, &str)]) -> Check {
    for (a, b, want) in table {
        let got = e(product_line(dict, qp, a, b))?;
        let want = format!("{a} * {b} = {want}");
        ensure(got == want, || format!("{got} (expected {want})"))?;
    }
    Ok(())
}

fn blowup() -> Result<QuantumPresentation, String> {
    e(QuantumPresentation::fano(&e(examples::blowup_cp2(&rat(1, 2)))?, None))
}

fn criterion1() -> Check {
    let qp = blowup()?;
    let rels = qp.relation_strings();
    for want in ["x1*x2 = x4 q t^{1/4}", "x3*x4 = q^2 t^{3/4}"] {
        ensure(rels.iter().any(|r| r == want), || format!("relation {want} missing from {rels:?}"))?;
    }
    let dict = e(build_dictionary(&qp))?;
    products(
        &dict,
        &qp,
        &[
            ("B", "B", "E ⊗ q^{-1} t^{-1/4}"),
            ("L", "E", "[M] ⊗ q^{-2} t^{-3/4}"),
            ("B", "L", "p"),
            ("p", "p", "L ⊗ q^{-3} t^{-1}"),
            ("E", "p", "B ⊗ q^{-2} t^{-3/4}"),
            ("p", "B", "[M] ⊗ q^{-3} t^{-1}"),
        ],
    )
}

fn criterion2() -> Check {
    let qp = blowup()?;
    let dict = e(build_dictionary(&qp))?;
    let s = |xi: &[i64]| -> Result<QClass, String> { Ok(e(seidel::seidel_element(&qp, xi))?.value) };
    let cases: [(&[i64], &str); 6] = [
        (&[-1, 0], "B ⊗ q t^{7/20}"),
        (&[0, -1], "B ⊗ q t^{7/20}"),
        (&[1, 1], "L ⊗ q t^{3/10}"),
        (&[-1, -1], "E ⊗ q t^{9/20}"),
        (&[1, 0], "p ⊗ q^2 t^{13/20}"),
        (&[-2, -1], "p ⊗ q^2 t^{4/5} - E ⊗ q t^{11/20}"),
    ];
    for (xi, want) in cases {
        let got = report(&dict, &qp, &s(xi)?)?;
        ensure(got == want, || format!("S({xi:?}) = {got} (expected {want})"))?;
    }
    let s3 = s(&[1, 1])?;
    let s4inv = e(qp.qinv(&s(&[-1, -1])?))?;
    let s1m2 = e(qp.qpow(&s(&[-1, 0])?, -2))?;
    ensure(e(qp.quantum_nf(&e(s3.checked_sub(&s4inv))?))?.is_zero(), || "S(L3) != S(L4)^-1".into())?;
    ensure(e(qp.quantum_nf(&e(s3.checked_sub(&s1m2))?))?.is_zero(), || "S(L3) != S(L1)^-2".into())
}

fn criterion3() -> Check {
    let sq = e(QuantumPresentation::fano(&e(examples::s2xs2(&int(2)))?, None))?;
    let dict = e(build_dictionary(&sq))?;
    products(
        &dict,
        &sq,
        &[
            ("B", "B", "[M] ⊗ q^{-2} t^{-2}"),
            ("A", "A", "[M] ⊗ q^{-2} t^{-1}"),
            ("A", "B", "p"),
            ("p", "A", "B ⊗ q^{-2} t^{-1}"),
            ("p", "B", "A ⊗ q^{-2} t^{-2}"),
        ],
    )?;

    // Second toric structure, mu = 2: eps = 13/12, c1 = 5/12.
    let mu = int(2);
    let p = e(examples::hirzebruch2(&mu))?;
    let cutoff = int(5);
    let y = e(toriq::io::parse_ytable(&ytable_json(&examples::hirzebruch2_ytable(&mu)), 4, &cutoff))?;
    let qp = e(QuantumPresentation::nef(&p, y, Some(cutoff)))?;
    let s = |xi: &[i64]| -> Result<QClass, String> { Ok(e(seidel::seidel_element(&qp, xi))?.value) };
    let g1 = s(&[0, 1])?;
    matches(&qp, &g1, "x1 q^-1 t^{-5/12}")?;
    let g2 = s(&[0, -1])?;
    matches(&qp, &g2, "x2 q^-1 t^{-7/12} / (1 - t)")?;
    let inv = e(qp.qinv(&g1))?;
    matches(&qp, &inv, "x2 q^-1 t^{-7/12} / (1 - t)")?;
    // At least three terms of the geometric series survive the cutoff.
    ensure(g2.len() >= 3, || format!("S(G2) keeps only {} terms: {}", g2.len(), fmt_class(&g2)))?;
    let g3 = s(&[1, -1])?;
    matches(&qp, &g3, "(x3 - x2 t / (1 - t)) q^-1 t^{-13/12}")?;
    ensure(g3.len() >= 3, || format!("S(G3) keeps only {} terms", g3.len()))?;
    let dict = e(build_dictionary(&qp))?;
    let pt = dict.point_lift.clone().ok_or("no point lift")?;
    let gt = s(&[1, 2])?;
    let two_q2t2 = e(parse_expr("2 q^2 t^2", 4, &qp.cutoff))?;
    let expected = e(e(pt.checked_add(&pt.shift(0, &int(1))))?.checked_add(&two_q2t2))?.shift(-2, &-rat(4, 3));
    let diff = e(qp.quantum_nf(&e(gt.checked_sub(&expected))?))?;
    ensure(diff.is_zero(), || format!("S(G~) = {} differs by {}", fmt_class(&gt), fmt_class(&diff)))?;
    let g1p = s(&[1, 0])?;
    let via = e(qp.qprod(&e(qp.qpow(&g1, 2))?, &g1p))?;
    ensure(e(qp.quantum_nf(&e(gt.checked_sub(&via))?))?.is_zero(), || "S(G~) != S(G1)^2 * S(G')".into())
}

fn criterion4() -> Check {
    let qp = e(QuantumPresentation::fano(&e(examples::cp2())?, None))?;
    let dict = e(build_dictionary(&qp))?;
    let s = e(seidel::seidel_element(&qp, &[-1, -1]))?;
    ensure(s.fmax.0.len() == 2, || format!("maximum {} is not a vertex", s.fmax))?;
    for (name, want) in [("[M]", "p ⊗ q^2 t^{2/3}"), ("L", "[M] ⊗ q^{-1} t^{-1/3}"), ("p", "L ⊗ q^{-1} t^{-1/3}")] {
        let a = e(seidel::named_class(&dict, &qp, name))?;
        let got = report(&dict, &qp, &e(qp.qprod(&s.value, &a))?)?;
        ensure(got == want, || format!("S({name}) = {got} (expected {want})"))?;
    }
    Ok(())
}

fn criterion5() -> Check {
    let manifolds = [
        e(examples::blowup_cp2(&rat(1, 2)))?,
        e(examples::s2xs2(&int(2)))?,
        e(examples::cp2())?,
    ];
    for p in &manifolds {
        let qp = e(QuantumPresentation::fano(p, None))?;
        let suite = e(oracle::run_suite(&qp, 20, oracle::DEFAULT_SEED))?;
        ensure(suite.passed(), || format!("{}: {suite:?}", p.name))?;
        for xi in [vec![1, 0], vec![0, 1], vec![1, 1], vec![2, -1]] {
            let s = e(seidel::seidel_element(&qp, &xi))?.value;
            let one = e(qp.qprod(&s, &e(qp.qinv(&s))?))?;
            ensure(e(qp.quantum_nf(&e(one.checked_sub(&qp.one()))?))?.is_zero(), || format!("{}: inverse law fails at {xi:?}", p.name))?;
        }
    }
    Ok(())
}

fn centered(p: &DelzantPolytope) -> Check {
    let c = p.centroid();
    ensure(c.iter().all(Rat::is_zero), || format!("{} centroid {:?}", p.name, c.iter().map(fmt_rat).collect::<Vec<_>>()))
}

fn criterion6() -> Check {
    for mu in [rat(1, 2), rat(1, 3), rat(2, 3), rat(1, 5), rat(3, 4)] {
        centered(&e(examples::blowup_cp2(&mu))?)?;
    }
    for mu in [int(2), rat(3, 2), rat(5, 2), rat(4, 3), int(3)] {
        centered(&e(examples::hirzebruch2(&mu))?)?;
    }
    Ok(())
}

fn criterion7() -> Check {
    let b = e(examples::blowup_cp2(&rat(1, 2)))?;
    let qb = e(QuantumPresentation::fano(&b, None))?;
    let r = e(analyze(&b, &[-1, 0], Some(&qb)))?;
    let rules = r.triggered_rules();
    ensure(r.verdict == Verdict::Essential && rules.contains(&"T1") && rules.contains(&"SD"), || r.render_text())?;

    let r = e(analyze(&b, &[-2, -1], None))?;
    let t2 = r.findings.iter().find(|f| f.rule == "T2").ok_or("no T2 finding")?;
    ensure(r.verdict == Verdict::Essential && t2.triggered, || r.render_text())?;
    ensure(t2.certificate.iter().any(|c| c.starts_with("D1∩D3 visible with K = 1/20")), || r.render_text())?;
    ensure(t2.certificate.iter().any(|c| c == "D2∩D4 not visible"), || r.render_text())?;

    let sq = e(examples::s2xs2(&int(2)))?;
    let r = e(analyze(&sq, &[1, 1], None))?;
    ensure(r.verdict == Verdict::Essential && r.triggered_rules().contains(&"T1"), || r.render_text())?;

    let c = e(chain_bound(&e(examples::cp2())?, &[2, 1]))?;
    ensure(c.min_cost == "1" && c.k_max == "1" && c.m_condition && !c.triggered, || format!("{c:?}"))
}

fn criterion8() -> Check {
    let b = e(examples::blowup_cp2(&rat(1, 2)))?;
    let o = e(circle::isotropy_order(&b, &[1, -1], &FaceId(vec![2])))?;
    ensure(o == Isotropy::Order(2), || format!("D3 isotropy {o}"))?;

    let h = e(examples::hirzebruch2(&int(2)))?;
    let xi = [1, 2];
    let mut order3 = false;
    for (id, f) in &h.faces {
        if f.dim == 1 && e(circle::isotropy_order(&h, &xi, id))? == Isotropy::Order(3) {
            order3 = true;
        }
    }
    ensure(order3, || "no edge with Z/3 isotropy".into())?;
    let top = e(circle::fixed_components(&h, &xi))?.remove(0);
    let mut w: Vec<i64> = top.weights.values().copied().collect();
    w.sort_unstable();
    ensure(top.dim == 0 && w == [-3, -1], || format!("maximum {} has weights {w:?}", top.face))?;

    let sq = e(examples::s2xs2(&int(2)))?;
    let k = e(circle::global_isotropy(&sq, &[1, 1]))?;
    ensure(k == 1, || format!("diagonal has isotropy {k}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 blowup relations and product table", criterion1),
        ("2 blowup Seidel elements and identities", criterion2),
        ("3 S2xS2 products and second toric structure", criterion3),
        ("4 CP2 vertex-maximum Seidel action", criterion4),
        ("5 property suites", criterion5),
        ("6 centroid normalization", criterion6),
        ("7 obstruction battery", criterion7),
        ("8 isotropy", criterion8),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = std::time::Instant::now();
        match std::panic::catch_unwind(run) {
            Ok(Ok(())) => println!("PASS criterion {name} ({:.2?})", start.elapsed()),
            Ok(Err(msg)) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg}");
            }
            Err(_) => {
                failed += 1;
                println!("FAIL criterion {name}: panicked");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
