//! One test per acceptance criterion. Each prints a single `criterion N PASS|FAIL` line;
//! run with `--nocapture` to see them.

use std::collections::BTreeSet;

use glplane::bundle::IndecBundle;
use glplane::classify::{
    classify, dom_plus_pairs, dom_plus_sweep, line_only_cliques, max_line_clique, ClusterSubcatDesc,
};
use glplane::domain::{dom_classify, roofs, DomVerdict};
use glplane::endo::{almost_2ri_check, emit_quiver, two_ri_check_with_roofs};
use glplane::error::Error;
use glplane::fixtures;
use glplane::lattice::{interval_elements, GradedDegree, TwistClass, Weight};
use glplane::oracle;
use glplane::sheaf::rigid_lines;
use glplane::symbolic::{format_bundle, parse_bundle, parse_degree};
use glplane::tilting::{
    assemble, build_h, for_each_assembled_form, for_each_normalized_form, line_rigidity_capacity, s_part,
    BundleCollection,
};
use glplane::upset::enumerate_upsets;
use glplane::verify;

fn report(n: u32, what: &str, r: Result<String, String>) {
    match r {
        Ok(detail) => println!("criterion {n} PASS: {what} ({detail})"),
        Err(detail) => {
            println!("criterion {n} FAIL: {what} ({detail})");
            panic!("criterion {n} failed: {detail}");
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn deg(w: Weight, s: &str) -> GradedDegree {
    parse_degree(w, s).unwrap()
}

#[test]
fn criterion_01_rigid_line_truth_tables() {
    let r = (|| {
        let mut n = 0;
        for p in 2..=6 {
            let w = Weight::new(p).unwrap();
            let om = w.omega();
            let mut check = |x: GradedDegree, want: bool, label: String| -> Result<(), String> {
                let got = rigid_lines(w.zero(), x);
                ensure(got == want, || format!("p={p}, {label}: got {got}"))?;
                ensure(oracle::lines_rigid_by_ext(w.zero(), x) == want, || {
                    format!("p={p}, {label}: Ext oracle disagrees")
                })?;
                n += 1;
                Ok(())
            };
            for l in -6..=6 {
                check(om.scale(l), [-2, 0, 2].contains(&l), format!("{l}w"))?;
            }
            for l in -(2 * p + 6)..=2 * p + 6 {
                check(om + w.x4(l), (1..=p + 1).contains(&l), format!("w+{l}x4"))?;
                check(-om + w.x4(l), (1..=p + 1).contains(&-l), format!("-w+{l}x4"))?;
                for a in 1..=3 {
                    for b in (1..=3).filter(|&b| b != a) {
                        check(w.x(a) - w.x(b) + w.x4(l), (-p..=p).contains(&l), format!("x{a}-x{b}+{l}x4"))?;
                    }
                }
            }
        }
        Ok(format!("{n} pairs over p = 2..6, all confirmed by Ext^2 vanishing"))
    })();
    report(1, "rigid line pairs along omega, omega + x4 and x_i - x_j + x4", r);
}

#[test]
fn criterion_02_rigid_domain_p4() {
    let r = (|| {
        let w = Weight::new(4).unwrap();
        let (plus, minus) = fixtures::DOMAIN_P4.expand().map_err(|e| e.to_string())?;
        let e = fixtures::DOMAIN_P4.e;
        let mut seen_plus = BTreeSet::new();
        let mut seen_minus = BTreeSet::new();
        let mut universe: Vec<IndecBundle> = Vec::new();
        for i in 0..3 {
            for k in -12..=12 {
                universe.push(IndecBundle::ext(i, k));
            }
        }
        for g in TwistClass::ALL {
            for m in -16..=16 {
                universe.push(IndecBundle::Line(w.x4(m) + w.twist(g)));
                universe.push(IndecBundle::Line(w.omega() + w.x4(m) + w.twist(g)));
            }
        }
        for x in universe {
            match dom_classify(w, x, e) {
                v if v.is_plus() => {
                    seen_plus.insert(x);
                }
                DomVerdict::DomMinus => {
                    seen_minus.insert(x);
                }
                _ => {}
            }
        }
        ensure(seen_plus == plus, || {
            let d: Vec<String> = seen_plus.symmetric_difference(&plus).map(|b| format_bundle(*b)).collect();
            format!("Dom+ differs on {}", d.join(", "))
        })?;
        ensure(seen_minus == minus, || {
            let d: Vec<String> = seen_minus.symmetric_difference(&minus).map(|b| format_bundle(*b)).collect();
            format!("Dom- differs on {}", d.join(", "))
        })?;
        Ok(format!("{} objects in Dom+, {} in Dom-", plus.len(), minus.len()))
    })();
    report(2, "rigid domain of <1,0> at p = 4", r);
}

#[test]
fn criterion_03_roofs_and_single_bundle_p4() {
    let r = (|| {
        let w = Weight::new(4).unwrap();
        let (left, right) = roofs(w, (1, 0), TwistClass::E, TwistClass::E);
        let want_left: BTreeSet<_> = interval_elements(deg(w, "-c-x4"), deg(w, "x4")).into_iter().collect();
        let want_right: BTreeSet<_> = interval_elements(deg(w, "w-2x4"), deg(w, "w+c")).into_iter().collect();
        ensure(left == want_left, || "left roof is not [-c-x4, x4]".into())?;
        ensure(right == want_right, || "right roof is not [w-2x4, w+c]".into())?;
        ensure(left.len() == 16 && right.len() == 16, || {
            format!("roof sizes {} and {}", left.len(), right.len())
        })?;
        let c = assemble(w, &fixtures::single_p4_form()).map_err(|e| e.to_string())?;
        ensure(c.len() == 27 && c.is_rigid(), || format!("{} summands", c.len()))?;
        Ok("two roofs of 16, 27 rigid summands".into())
    })();
    report(3, "roofs of <1,0> and the assembled bundle at p = 4", r);
}

#[test]
fn criterion_04_two_level_form_p5() {
    let r = (|| {
        let w = Weight::new(5).unwrap();
        let form = fixtures::two_level_p5_form(w).map_err(|e| e.to_string())?;
        let h = build_h(w, &form).map_err(|e| e.to_string())?;
        let want_h = BTreeSet::from([deg(w, "x13bar-4x4"), deg(w, "x23bar-4x4")]);
        ensure(h == want_h, || format!("H = {h:?}"))?;
        let ups = enumerate_upsets(&h);
        ensure(ups.len() == 4, || format!("{} upsets", ups.len()))?;
        let s = s_part(w, &h, &BTreeSet::from([deg(w, "x13bar-4x4")]));
        ensure(s == BTreeSet::from([deg(w, "x13bar-4x4"), deg(w, "-x1+2x4")]), || format!("S = {s:?}"))?;
        let c = assemble(w, &form).map_err(|e| e.to_string())?;
        let want = fixtures::two_level_p5_collection().map_err(|e| e.to_string())?;
        ensure(c == want, || "assembled bundle differs from the listed one".into())?;
        Ok("H of 2, 4 upsets, S of 2, 32 summands as listed".into())
    })();
    report(4, "H-set, upsets, S-part and assembly for <1,0> + <2,0> at p = 5", r);
}

#[test]
fn criterion_05_line_only_search() {
    let r = (|| {
        for p in [2, 3] {
            let w = Weight::new(p).unwrap();
            let found = line_only_cliques(w);
            let canonical: BTreeSet<IndecBundle> = interval_elements(w.zero(), w.c().scale(2))
                .into_iter()
                .map(IndecBundle::Line)
                .collect();
            ensure(found.len() == 1, || format!("p={p}: {} collections", found.len()))?;
            ensure(found[0].members() == &canonical, || format!("p={p}: the one found is not [0, 2c]"))?;
        }
        Ok("p = 2, 3: exactly one, the interval [0, 2c]".into())
    })();
    report(5, "rigid line-only collections of size 5p+7 through O(0)", r);
}

#[test]
fn criterion_06_form_sweep() {
    let r = (|| {
        let mut summary = Vec::new();
        for p in 3..=5 {
            let w = Weight::new(p).unwrap();
            let size = BundleCollection::tilting_size(w);
            let mut forms = 0usize;
            let mut bad = None;
            for_each_normalized_form(w, &mut |f| {
                forms += 1;
                match assemble(w, f) {
                    Ok(c) if c.len() == size => {}
                    Ok(c) => bad = bad.take().or(Some(format!("{f}: {} summands", c.len()))),
                    Err(e) => bad = bad.take().or(Some(format!("{f}: {e}"))),
                }
            });
            if let Some(b) = bad {
                return Err(format!("p={p}: {b}"));
            }
            let rows = dom_plus_sweep(w);
            let cliques: usize = rows.iter().map(|r| r.cliques).sum();
            for row in &rows {
                ensure(row.unexplained.is_empty() && row.missing.is_empty(), || {
                    format!(
                        "p={p}, rank-four part {:?}: {} unexplained, {} missing",
                        row.rank_four,
                        row.unexplained.len(),
                        row.missing.len()
                    )
                })?;
            }
            summary.push(format!("p={p}: {forms} forms, {} rank-four parts, {cliques} rigid completions", rows.len()));
        }
        Ok(summary.join("; "))
    })();
    report(6, "every form is tilting-sized and rigid; every rigid completion is a form", r);
}

#[test]
fn criterion_07_line_capacity() {
    let r = (|| {
        let mut n = 0;
        for p in [4, 5] {
            let w = Weight::new(p).unwrap();
            for (a, b) in dom_plus_pairs(w) {
                let ws: Vec<(i64, i64)> = if a == b { vec![a] } else { vec![a, b] };
                let got = max_line_clique(w, &ws).len() as i64;
                let want = line_rigidity_capacity(w, a.0, b.0);
                ensure(got == want, || format!("p={p}, {a:?} {b:?}: clique {got}, expected {want}"))?;
                n += 1;
            }
        }
        Ok(format!("{n} pairs over p = 4, 5"))
    })();
    report(7, "largest rigid line set next to E_i + E_j has 5p+i-j+6 members", r);
}

#[test]
fn criterion_08_two_representation_infinite() {
    let r = (|| {
        let mut total = 0usize;
        for p in 2..=6 {
            let w = Weight::new(p).unwrap();
            let two = w.omega().scale(2);
            let mut bad = None;
            for_each_assembled_form(w, &mut |f, c, roof| {
                total += 1;
                if bad.is_some() {
                    return;
                }
                if !almost_2ri_check(c) {
                    bad = Some(format!("{f}: Ext^1 against an omega-shift"));
                    return;
                }
                let rep = two_ri_check_with_roofs(c, roof);
                let expect = f.i == 0 && f.j == p - 2;
                if rep.holds != expect {
                    bad = Some(format!("{f}: 2-RI is {}, expected {expect}", rep.holds));
                } else if !rep.holds {
                    match rep.roof_witness {
                        Some((x, y)) if roof.contains(&x) && roof.contains(&y) && x - y == two => {}
                        _ => bad = Some(format!("{f}: no roof pair differing by 2omega")),
                    }
                }
            });
            if let Some(b) = bad {
                return Err(format!("p={p}: {b}"));
            }
        }
        Ok(format!("{total} forms over p = 2..6"))
    })();
    report(8, "almost 2-RI always; 2-RI exactly for (i, j) = (0, p-2), with roof witnesses", r);
}

type Arrows = Vec<(IndecBundle, IndecBundle)>;

fn quiver_diff() -> (usize, Arrows, Arrows) {
    let w = Weight::new(4).unwrap();
    let c = assemble(w, &fixtures::single_p4_form()).unwrap();
    let q = emit_quiver(&c).unwrap();
    let got = q.arrow_multiset();
    let drawn = fixtures::single_p4_quiver().unwrap();
    let extra = got.iter().filter(|a| !drawn.contains(a)).copied().collect();
    let missing = drawn.iter().filter(|a| !got.contains(a)).copied().collect();
    (q.vertices.len(), extra, missing)
}

/// The hand-drawn quiver omits twelve irreducible maps, so an exact match is not
/// reachable. The exact comparison is kept, ignored; run it with `--ignored`.
#[test]
#[ignore = "the hand-drawn quiver omits 12 irreducible maps"]
fn criterion_09_quiver_exact() {
    let (n, extra, missing) = quiver_diff();
    let r = if n == 27 && extra.is_empty() && missing.is_empty() {
        Ok("27 vertices, 44 arrows".to_string())
    } else {
        Err(format!("{} extra arrows, {} missing", extra.len(), missing.len()))
    };
    report(9, "endomorphism quiver equals the hand-drawn one", r);
}

#[test]
fn criterion_09_quiver_status() {
    let w = Weight::new(4).unwrap();
    let (n, extra, missing) = quiver_diff();
    let undrawn = fixtures::pairs(w, fixtures::SINGLE_P4_UNDRAWN).unwrap();
    let c = assemble(w, &fixtures::single_p4_form()).unwrap();
    // every extra arrow is one monomial with no summand to factor through
    for &(a, b) in &extra {
        let d = b.line_degree().unwrap() - a.line_degree().unwrap();
        assert_eq!(oracle::graded_piece_by_monomials(d), 1);
        for z in c.iter().filter(|&z| z != a && z != b) {
            assert!(oracle::euler_by_monomials(w, a, z) == 0 || oracle::euler_by_monomials(w, z, b) == 0);
        }
    }
    assert_eq!(n, 27);
    assert!(missing.is_empty());
    assert_eq!(extra, undrawn);
    let labels: Vec<String> = extra
        .iter()
        .map(|(a, b)| format!("{} -> {}", format_bundle(*a), format_bundle(*b)))
        .collect();
    println!(
        "criterion 9 FAIL: endomorphism quiver equals the hand-drawn one (27 vertices and all 44 drawn arrows \
         reproduced; {} further irreducible maps found: {})",
        extra.len(),
        labels.join(", ")
    );
}

#[test]
fn criterion_10_oracle_equivalences() {
    let r = (|| {
        let mut n = 0;
        for p in 2..=6 {
            let w = Weight::new(p).unwrap();
            for check in verify::oracle_checks(w) {
                ensure(check.passed, || format!("{}: {}", check.name, check.detail))?;
                n += 1;
            }
        }
        for p in 7..=8 {
            verify::stable_homs(Weight::new(p).unwrap())?;
            n += 1;
        }
        Ok(format!("{n} deterministic checks; randomized versions live in the properties target"))
    })();
    report(10, "closed forms agree with the brute-force oracles", r);
}

#[test]
fn criterion_11_outside_standard_subcategory() {
    let r = (|| {
        let c = fixtures::off_slice_p5_collection().map_err(|e| e.to_string())?;
        let w = c.weight();
        ensure(c.len() == 32, || format!("{} summands", c.len()))?;
        ensure(c.is_rigid(), || "not rigid".into())?;
        let u = ClusterSubcatDesc::standard(w);
        match classify(&c, &u) {
            Err(Error::NotInSubcategory(b)) => {
                let outside = parse_bundle(w, "<3,-2>").unwrap();
                ensure(b == outside.to_string(), || format!("flagged {b}"))?;
                Ok(format!("rigid, 32 summands, {b} flagged outside the subcategory"))
            }
            Ok(v) => Err(format!("classified as {}", v.name())),
            Err(e) => Err(e.to_string()),
        }
    })();
    report(11, "the p = 5 rigid bundle is flagged as outside the classifier's scope", r);
}
