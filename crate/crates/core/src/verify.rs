//! Self-checks run by `glplane verify`: the worked examples, and closed forms
//! against the brute-force oracles.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::bundle::IndecBundle;
use crate::classify::{classify, ClusterSubcatDesc};
use crate::domain::{dom_classify, dom_l, roofs, rigid_pair, DomVerdict};
use crate::endo::emit_quiver;
use crate::error::Error;
use crate::fixtures::{self, DOMAIN_P4};
use crate::lattice::{dim_graded_piece, interval_elements, GradedDegree, TwistClass, Weight};
use crate::oracle;
use crate::sheaf::{euler, rigid_lines};
use crate::stable::stable_hom_dim;
use crate::symbolic::{format_bundle, parse_bundle, parse_degree};
use crate::tilting::{assemble, build_h, s_part};
use crate::upset::enumerate_upsets;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    fn from_result(name: impl Into<String>, r: Result<String, String>) -> Self {
        match r {
            Ok(d) => Check::new(name, true, d),
            Err(d) => Check::new(name, false, d),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Figures,
    Oracles,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Result<Self, Error> {
        match s {
            "figures" => Ok(Suite::Figures),
            "oracles" => Ok(Suite::Oracles),
            "all" => Ok(Suite::All),
            _ => Err(Error::InvalidForm(format!("unknown suite {s:?} (figures, oracles, all)"))),
        }
    }
}

/// Runs `suite`. Oracle checks use the weights in `ps`. With `corrupt`, one
/// character of one hand-written label is changed first, so the run must fail.
pub fn run(suite: Suite, ps: &[i64], corrupt: bool) -> Vec<Check> {
    let mut out = Vec::new();
    if matches!(suite, Suite::Figures | Suite::All) {
        out.extend(figure_checks(corrupt));
    }
    if matches!(suite, Suite::Oracles | Suite::All) {
        for &p in ps {
            match Weight::new(p) {
                Ok(w) => out.extend(oracle_checks(w)),
                Err(e) => out.push(Check::new(format!("weight {p}"), false, e.to_string())),
            }
        }
    }
    out
}

fn err(e: Error) -> String {
    e.to_string()
}

/// Replaces the last digit of `s` by the next digit.
fn flip(s: &str) -> String {
    let mut b = s.as_bytes().to_vec();
    if let Some(pos) = b.iter().rposition(u8::is_ascii_digit) {
        b[pos] = b'0' + (b[pos] - b'0' + 1) % 10;
    }
    String::from_utf8(b).expect("ascii digit swap")
}

pub fn figure_checks(corrupt: bool) -> Vec<Check> {
    vec![
        Check::from_result("rigid line pairs along omega, x4 and x_i - x_j, p = 2..6", line_tables()),
        Check::from_result("rigid domain of <1,0>, p = 4", domain_p4(corrupt)),
        Check::from_result("roofs of <1,0> and the 27-summand bundle, p = 4", roofs_p4()),
        Check::from_result("H-set, upsets and S-part of <1,0> + <2,0>, p = 5", two_level_p5()),
        Check::from_result("rigid bundle outside the standard subcategory, p = 5", off_slice_p5()),
        Check::from_result("endomorphism quiver of the 27-summand bundle, p = 4", quiver_p4()),
    ]
}

/// Expected truth tables for `O(0) + O(x)`; each entry is also checked against `Ext^2`.
pub fn line_tables() -> Result<String, String> {
    let mut n = 0;
    for p in 2..=6 {
        let w = Weight::new(p).map_err(err)?;
        let om = w.omega();
        let mut cases: Vec<(GradedDegree, bool, String)> = Vec::new();
        for l in -6..=6 {
            cases.push((om.scale(l), [-2, 0, 2].contains(&l), format!("{l}w")));
        }
        for l in -(2 * p + 6)..=2 * p + 6 {
            cases.push((om + w.x4(l), (1..=p + 1).contains(&l), format!("w+{l}x4")));
            cases.push((-om + w.x4(l), (1..=p + 1).contains(&-l), format!("-w+{l}x4")));
            for (a, b) in [(1, 2), (1, 3), (2, 3), (2, 1), (3, 1), (3, 2)] {
                cases.push((w.x(a) - w.x(b) + w.x4(l), (-p..=p).contains(&l), format!("x{a}-x{b}+{l}x4")));
            }
        }
        for (x, want, label) in cases {
            let got = rigid_lines(w.zero(), x);
            if got != want {
                return Err(format!("p={p}, {label}: rigid = {got}, expected {want}"));
            }
            if oracle::lines_rigid_by_ext(w.zero(), x) != want {
                return Err(format!("p={p}, {label}: Ext oracle disagrees"));
            }
            n += 1;
        }
    }
    Ok(format!("{n} pairs"))
}

fn domain_p4(corrupt: bool) -> Result<String, String> {
    let w = Weight::new(DOMAIN_P4.p).map_err(err)?;
    let (mut plus, minus) = DOMAIN_P4.expand().map_err(err)?;
    if corrupt {
        let first = DOMAIN_P4.plus_ext[0];
        plus.remove(&parse_bundle(w, first).map_err(err)?);
        plus.insert(parse_bundle(w, &flip(first)).map_err(err)?);
    }
    let mut candidates: BTreeSet<IndecBundle> = BTreeSet::new();
    for i in 0..w.p() - 1 {
        for k in -10..=10 {
            candidates.insert(IndecBundle::ext(i, k));
        }
    }
    for g in TwistClass::ALL {
        for m in -14..=14 {
            candidates.insert(IndecBundle::Line(w.x4(m) + w.twist(g)));
            candidates.insert(IndecBundle::Line(w.omega() + w.x4(m) + w.twist(g)));
        }
    }
    candidates.extend(plus.iter().copied());
    candidates.extend(minus.iter().copied());
    for x in candidates {
        let v = dom_classify(w, x, DOMAIN_P4.e);
        let want_plus = plus.contains(&x);
        let want_minus = minus.contains(&x);
        if v.is_plus() != want_plus || (v == DomVerdict::DomMinus) != want_minus {
            return Err(format!("{}: classified {v:?}", format_bundle(x)));
        }
    }
    Ok(format!("{} in Dom+, {} in Dom-", plus.len(), minus.len()))
}

fn roofs_p4() -> Result<String, String> {
    let w = Weight::new(4).map_err(err)?;
    let (left, right) = roofs(w, (1, 0), TwistClass::E, TwistClass::E);
    let interval = |(a, b): (&str, &str)| -> Result<BTreeSet<GradedDegree>, String> {
        let (x, y) = (parse_degree(w, a).map_err(err)?, parse_degree(w, b).map_err(err)?);
        Ok(interval_elements(x, y).into_iter().collect())
    };
    if left != interval(fixtures::SINGLE_P4_LEFT_ROOF)? {
        return Err("left roof differs from its interval".into());
    }
    if right != interval(fixtures::SINGLE_P4_RIGHT_ROOF)? {
        return Err("right roof differs from its interval".into());
    }
    if left.len() != 16 || right.len() != 16 {
        return Err(format!("roof sizes {} and {}, expected 16", left.len(), right.len()));
    }
    let c = assemble(w, &fixtures::single_p4_form()).map_err(err)?;
    Ok(format!("roofs of 16, assembled {} summands, rigid", c.len()))
}

fn two_level_p5() -> Result<String, String> {
    let w = Weight::new(5).map_err(err)?;
    let form = fixtures::two_level_p5_form(w).map_err(err)?;
    let h = build_h(w, &form).map_err(err)?;
    let want_h: BTreeSet<GradedDegree> = ["x13bar-4x4", "x23bar-4x4"]
        .iter()
        .map(|s| parse_degree(w, s))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    if h != want_h {
        return Err(format!("H has {} elements, expected the two lowest x13bar, x23bar lines", h.len()));
    }
    let ups = enumerate_upsets(&h).len();
    if ups != 4 {
        return Err(format!("{ups} upsets, expected 4"));
    }
    let s = s_part(w, &h, &form.upset);
    let want_s: BTreeSet<GradedDegree> = fixtures::TWO_LEVEL_P5_S_LINES
        .iter()
        .map(|t| parse_degree(w, t))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    if s != want_s {
        return Err("S-part differs".into());
    }
    let c = assemble(w, &form).map_err(err)?;
    let want = fixtures::two_level_p5_collection().map_err(err)?;
    if c != want {
        return Err(format!("assembled {} summands, differs from the listed 32", c.len()));
    }
    Ok("32 summands as listed".into())
}

fn off_slice_p5() -> Result<String, String> {
    let c = fixtures::off_slice_p5_collection().map_err(err)?;
    if c.len() != 32 {
        return Err(format!("{} summands", c.len()));
    }
    if let Some((a, b, why)) = c.rigidity_violation() {
        return Err(format!("{a} and {b} not rigid: {why}"));
    }
    let u = ClusterSubcatDesc::standard(c.weight());
    match classify(&c, &u) {
        Err(Error::NotInSubcategory(b)) => Ok(format!("rigid, 32 summands; {b} lies outside")),
        Ok(v) => Err(format!("classified as {}", v.name())),
        Err(e) => Err(e.to_string()),
    }
}

fn quiver_p4() -> Result<String, String> {
    let w = Weight::new(4).map_err(err)?;
    let c = assemble(w, &fixtures::single_p4_form()).map_err(err)?;
    let q = emit_quiver(&c).map_err(err)?;
    let drawn = fixtures::single_p4_quiver().map_err(err)?;
    let undrawn = fixtures::pairs(w, fixtures::SINGLE_P4_UNDRAWN).map_err(err)?;
    let mut expected: Vec<_> = drawn.iter().chain(&undrawn).copied().collect();
    expected.sort();
    if q.arrow_multiset() != expected {
        return Err(format!("{} arrows, expected {}", q.arrow_count(), expected.len()));
    }
    Ok(format!(
        "{} vertices, {} arrows: the {} hand-drawn ones and {} single-monomial maps",
        q.vertices.len(),
        q.arrow_count(),
        drawn.len(),
        undrawn.len()
    ))
}

pub fn oracle_checks(w: Weight) -> Vec<Check> {
    let p = w.p();
    vec![
        Check::from_result(format!("graded piece dimensions, p = {p}"), graded_pieces(w)),
        Check::from_result(format!("stable Hom by knitting and by intervals, p = {p}"), stable_homs(w)),
        Check::from_result(format!("Dom+ closed form and Hom conditions, p = {p}"), dom_plus(w)),
        Check::from_result(format!("line part of the rigid domain, p = {p}"), dom_lines_brute(w)),
        Check::from_result(format!("Euler form and graded pieces on lines, p = {p}"), euler_lines(w)),
    ]
}

/// The closed form against monomial counting on `[-3c, 3c]`.
pub fn graded_pieces(w: Weight) -> Result<String, String> {
    let c3 = w.c().scale(3);
    let xs = interval_elements(-c3, c3);
    for &x in &xs {
        let (a, b) = (dim_graded_piece(x), oracle::graded_piece_by_monomials(x));
        if a != b {
            return Err(format!("{x}: {a} by formula, {b} by monomials"));
        }
    }
    Ok(format!("{} degrees", xs.len()))
}

pub fn stable_homs(w: Weight) -> Result<String, String> {
    let p = w.p();
    let span = 2 * p + 2;
    let mut n = 0;
    for i in 0..p - 1 {
        for j in 0..p - 1 {
            for k in -span..=span {
                let (a, b) = ((i, 0), (j, k));
                let (x, y) = (stable_hom_dim(w, a, b), oracle::stable_hom_by_intervals(w, a, b));
                if x != y {
                    return Err(format!("<{i},0> -> <{j},{k}>: {x} by knitting, {y} by intervals"));
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} pairs"))
}

fn window(w: Weight) -> Vec<IndecBundle> {
    let p = w.p();
    let mut out = Vec::new();
    for i in 0..p - 1 {
        for k in -2 * p - 4..=2 * p + 4 {
            out.push(IndecBundle::ext(i, k));
        }
    }
    for g in TwistClass::ALL {
        for m in -3 * p - 6..=3 * p + 6 {
            out.push(IndecBundle::Line(w.x4(m) + w.twist(g)));
            out.push(IndecBundle::Line(w.omega() + w.x4(m) + w.twist(g)));
        }
    }
    out
}

pub fn dom_plus(w: Weight) -> Result<String, String> {
    let mut n = 0;
    let xs = window(w);
    for i in 0..w.p() - 1 {
        for &x in &xs {
            let closed = dom_classify(w, x, (i, 0)).is_plus();
            if closed != oracle::in_dom_plus_by_hom(w, (i, 0), x) {
                return Err(format!("{} against <{i},0>: closed form says {closed}", format_bundle(x)));
            }
            n += 1;
        }
    }
    Ok(format!("{n} pairs"))
}

pub fn dom_lines_brute(w: Weight) -> Result<String, String> {
    let xs = window(w);
    for i in 0..w.p() - 1 {
        let closed: BTreeSet<IndecBundle> = dom_l(w, (i, 0)).into_iter().map(|c| c.to_bundle(w)).collect();
        for &x in xs.iter().filter(|b| b.is_line()) {
            let brute = rigid_pair(w, x, IndecBundle::ext(i, 0));
            if brute != closed.contains(&x) {
                return Err(format!("{} against <{i},0>: scan says {brute}", format_bundle(x)));
            }
        }
        if closed.iter().any(|b| !xs.contains(b)) {
            return Err(format!("line domain of <{i},0> leaves the scanned window"));
        }
    }
    Ok(format!("{} lines scanned per level", xs.iter().filter(|b| b.is_line()).count()))
}

pub fn euler_lines(w: Weight) -> Result<String, String> {
    let xs = interval_elements(-w.c(), w.c());
    let mut n = 0;
    for &x in &xs {
        for &y in &xs {
            if !rigid_lines(x, y) {
                continue;
            }
            let (a, b) = (IndecBundle::Line(x), IndecBundle::Line(y));
            let e = euler(w, a, b);
            let direct = oracle::graded_piece_by_monomials(y - x) as i64;
            if e != direct {
                return Err(format!("{x} -> {y}: Euler form {e}, dim R {direct}"));
            }
            n += 1;
        }
    }
    Ok(format!("{n} rigid pairs"))
}

/// `true` when every check passed.
pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}
