//! Hom nonvanishing, rigidity of pairs, rigid domains of a rank-four bundle and roofs.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::bundle::{desuspend, shift, suspend, ExtCoord, IndecBundle};
use crate::lattice::{interval_elements, GradedDegree, TwistClass, Weight};
use crate::sheaf::rigid_lines;
use crate::stable::stable_hom_dim;

/// `Hom(a, b) != 0`.
///
/// When one side has rank four this is `offset(a) <= offset(b)` together with
/// `level(a) + offset(a) <= level(b) + offset(b)`; the twist of a line does not
/// matter. Between lines it is effectivity of the degree difference.
pub fn hom_nonzero(w: Weight, a: ExtCoord, b: ExtCoord) -> bool {
    let is_line = |c: ExtCoord| c.level == -1 || c.level == w.p() - 1;
    if is_line(a) && is_line(b) {
        let (x, y) = (a.to_bundle(w), b.to_bundle(w));
        return (y.line_degree().unwrap() - x.line_degree().unwrap()).is_effective();
    }
    a.offset <= b.offset && a.level + a.offset <= b.level + b.offset
}

pub fn hom_nonzero_bundles(w: Weight, a: IndecBundle, b: IndecBundle) -> bool {
    match (a, b) {
        (IndecBundle::Line(x), IndecBundle::Line(y)) => x.le(y),
        _ => hom_nonzero(w, ExtCoord::of(w, a), ExtCoord::of(w, b)),
    }
}

/// Why `a + b` fails to be rigid, or `None` if it is rigid.
pub fn rigidity_violation(w: Weight, a: IndecBundle, b: IndecBundle) -> Option<&'static str> {
    match (a, b) {
        (IndecBundle::Line(x), IndecBundle::Line(y)) => {
            (!rigid_lines(x, y)).then_some("line degrees differ by more than 2c")
        }
        (IndecBundle::Line(_), IndecBundle::Ext2 { .. }) => ext_line_violation(w, b, a),
        (IndecBundle::Ext2 { .. }, IndecBundle::Line(_)) => ext_line_violation(w, a, b),
        (IndecBundle::Ext2 { .. }, IndecBundle::Ext2 { i: j, k: l }) => {
            if let Some(v) = ext_line_violation(w, a, b) {
                return Some(v);
            }
            let e_minus = desuspend(w, a).unwrap().ext_pair().unwrap();
            let e_plus = suspend(w, a).unwrap().ext_pair().unwrap();
            if stable_hom_dim(w, e_minus, (j, l)) > 0 {
                return Some("stable Hom(E[-1], X) is nonzero");
            }
            if stable_hom_dim(w, (j, l), e_plus) > 0 {
                return Some("stable Hom(X, E[1]) is nonzero");
            }
            None
        }
    }
}

/// The Hom part of the rigidity test for a rank-four `e` against any `x`:
/// `Hom(x, e(omega)) = 0` and `Hom(e(-omega), x) = 0`.
fn ext_line_violation(w: Weight, e: IndecBundle, x: IndecBundle) -> Option<&'static str> {
    let xc = ExtCoord::of(w, x);
    let e_om = ExtCoord::of(w, shift(e, w.omega()));
    let e_mom = ExtCoord::of(w, shift(e, -w.omega()));
    if hom_nonzero(w, xc, e_om) {
        return Some("Hom(X, E(omega)) is nonzero");
    }
    if hom_nonzero(w, e_mom, xc) {
        return Some("Hom(E(-omega), X) is nonzero");
    }
    None
}

pub fn rigid_pair(w: Weight, a: IndecBundle, b: IndecBundle) -> bool {
    rigidity_violation(w, a, b).is_none()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum DomVerdict {
    Outside,
    /// In the triangle part below E only.
    DomPlusUp,
    /// In the inverted triangle part above E only.
    DomPlusDown,
    DomPlusBoth,
    DomMinus,
}

impl DomVerdict {
    pub fn is_plus(self) -> bool {
        matches!(self, DomVerdict::DomPlusUp | DomVerdict::DomPlusDown | DomVerdict::DomPlusBoth)
    }
}

/// Membership in the closed-form triangle `<i-n1-n2, k+n2>` (n1, n2 >= 0, n1+n2 <= i+1).
pub fn in_triangle(e: (i64, i64), x: ExtCoord) -> bool {
    let (i, k) = e;
    let n = i - x.level;
    let n2 = x.offset - k;
    (0..=i + 1).contains(&n) && (0..=n).contains(&n2)
}

/// Membership in the closed-form inverted triangle `<i+n1+n2, k-n2>` (n1, n2 >= 0, n1+n2 <= p-1-i).
pub fn in_inverted_triangle(w: Weight, e: (i64, i64), x: ExtCoord) -> bool {
    let (i, k) = e;
    let n = x.level - i;
    let n2 = k - x.offset;
    (0..=w.p() - 1 - i).contains(&n) && (0..=n).contains(&n2)
}

/// The two Hom conditions singling out `Dom+` inside the rigid domain:
/// `Hom(X, E(-x4)) = 0` and `Hom(E(x4), X) = 0`.
pub fn dom_plus_extra(w: Weight, e: (i64, i64), x: IndecBundle) -> bool {
    let xc = ExtCoord::of(w, x);
    let below = ExtCoord::of(w, IndecBundle::ext(e.0, e.1 - 1));
    let above = ExtCoord::of(w, IndecBundle::ext(e.0, e.1 + 1));
    !hom_nonzero(w, xc, below) && !hom_nonzero(w, above, xc)
}

pub fn dom_classify(w: Weight, x: IndecBundle, e: (i64, i64)) -> DomVerdict {
    let eb = IndecBundle::ext(e.0, e.1);
    if !rigid_pair(w, x, eb) {
        return DomVerdict::Outside;
    }
    let xc = ExtCoord::of(w, x);
    let up = in_triangle(e, xc);
    let down = in_inverted_triangle(w, e, xc);
    if !(up || down) || !dom_plus_extra(w, e, x) {
        return DomVerdict::DomMinus;
    }
    match (up, down) {
        (true, true) => DomVerdict::DomPlusBoth,
        (true, false) => DomVerdict::DomPlusUp,
        _ => DomVerdict::DomPlusDown,
    }
}

/// `E_a` and `E_b` lie in each other's `Dom+`.
pub fn in_dom_plus(w: Weight, a: (i64, i64), b: (i64, i64)) -> bool {
    dom_classify(w, IndecBundle::ext(b.0, b.1), a).is_plus()
}

/// Offsets of the bottom (`<-1,n>`) and top (`<p-1,n+1>`) line positions rigid with `<i,k>`.
pub fn dom_line_ranges(w: Weight, e: (i64, i64)) -> ((i64, i64), (i64, i64)) {
    let (i, k) = e;
    let p = w.p();
    ((i + k - p + 1, k + p), (k - p - 1, i + k))
}

/// Line part of the rigid domain of `<i,k>`, as extended coordinates.
pub fn dom_l(w: Weight, e: (i64, i64)) -> BTreeSet<ExtCoord> {
    let ((b0, b1), (t0, t1)) = dom_line_ranges(w, e);
    let mut out = BTreeSet::new();
    for twist in TwistClass::ALL {
        for n in b0..=b1 {
            out.insert(ExtCoord { level: -1, offset: n, twist });
        }
        for n in t0..=t1 {
            out.insert(ExtCoord {
                level: w.p() - 1,
                offset: n + 1,
                twist,
            });
        }
    }
    out
}

/// Degrees of all lines rigid with every rank-four bundle in `es`.
pub fn dom_lines(w: Weight, es: &[(i64, i64)]) -> BTreeSet<GradedDegree> {
    let mut sets = es.iter().map(|&e| dom_l(w, e));
    let Some(mut acc) = sets.next() else {
        return BTreeSet::new();
    };
    for s in sets {
        acc = acc.intersection(&s).copied().collect();
    }
    acc.into_iter()
        .map(|c| c.to_bundle(w).line_degree().unwrap())
        .collect()
}

/// The m-th left roof `[l_m + g, l_m + (p+2)x4 + g]` with `l_m = (k+m-p-2)x4`.
pub fn left_roof(w: Weight, e: (i64, i64), m: i64, g: TwistClass) -> Vec<GradedDegree> {
    let (_, k) = e;
    let lo = w.x4(k + m - w.p() - 2) + w.twist(g);
    interval_elements(lo, lo + w.x4(w.p() + 2))
}

/// The n-th right roof `[r_n + h, r_n + (p+2)x4 + h]` with `r_n = omega + (i+k+n-p)x4`.
pub fn right_roof(w: Weight, e: (i64, i64), n: i64, h: TwistClass) -> Vec<GradedDegree> {
    let (i, k) = e;
    let lo = w.omega() + w.x4(i + k + n - w.p()) + w.twist(h);
    interval_elements(lo, lo + w.x4(w.p() + 2))
}

/// Unions of the left roofs `m = 1..=i` (twist g) and the right roofs `n = 1..=p-i-2` (twist h).
pub fn roofs(
    w: Weight,
    e: (i64, i64),
    g: TwistClass,
    h: TwistClass,
) -> (BTreeSet<GradedDegree>, BTreeSet<GradedDegree>) {
    let (i, _) = e;
    let left = (1..=i).flat_map(|m| left_roof(w, e, m, g)).collect();
    let right = (1..=w.p() - i - 2).flat_map(|n| right_roof(w, e, n, h)).collect();
    (left, right)
}

/// Rank-four bundles certified to lie in the thick subcategory generated by `e` and
/// the given line bundles, by closing under the four roof rules:
/// `<i-1,k>` from the i-th left roof, `<i-1,k+1>` from the first left roof,
/// `<i+1,k>` from the first right roof and `<i+1,k-1>` from the (p-i-2)-th right roof.
pub fn thick_reach(w: Weight, e: (i64, i64), lines: &BTreeSet<GradedDegree>) -> BTreeSet<(i64, i64)> {
    let p = w.p();
    let covered = |roof: Vec<GradedDegree>| roof.iter().all(|x| lines.contains(x));
    let mut reached = BTreeSet::from([e]);
    let mut stack = vec![e];
    while let Some(f) = stack.pop() {
        let (i, k) = f;
        let mut next = Vec::new();
        for g in TwistClass::ALL {
            if i >= 1 {
                if covered(left_roof(w, f, i, g)) {
                    next.push((i - 1, k));
                }
                if covered(left_roof(w, f, 1, g)) {
                    next.push((i - 1, k + 1));
                }
            }
            if i <= p - 3 {
                if covered(right_roof(w, f, 1, g)) {
                    next.push((i + 1, k));
                }
                if covered(right_roof(w, f, p - i - 2, g)) {
                    next.push((i + 1, k - 1));
                }
            }
        }
        for n in next {
            if reached.insert(n) {
                stack.push(n);
            }
        }
    }
    reached
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ec(level: i64, offset: i64) -> ExtCoord {
        ExtCoord {
            level,
            offset,
            twist: TwistClass::E,
        }
    }

    #[test]
    fn hom_criterion() {
        let w = Weight::new(4).unwrap();
        assert!(hom_nonzero(w, ec(1, 0), ec(2, 0)));
        assert!(!hom_nonzero(w, ec(1, 0), ec(0, 0)));
        let o = IndecBundle::Line(w.zero());
        let x4 = IndecBundle::Line(w.x4(1));
        assert!(hom_nonzero_bundles(w, o, x4));
        assert!(!hom_nonzero_bundles(w, x4, o));
    }

    #[test]
    fn rigid_pairs() {
        let w = Weight::new(4).unwrap();
        let e = IndecBundle::ext;
        assert!(rigid_pair(w, e(1, 0), e(2, -1)));
        assert!(!rigid_pair(w, e(1, 0), e(1, 1)));
        let two_c = w.c().scale(2);
        assert!(!rigid_pair(w, IndecBundle::Line(w.zero()), IndecBundle::Line(two_c + w.x4(1))));
    }

    #[test]
    fn classify_small() {
        let w = Weight::new(4).unwrap();
        let e = (1, 0);
        assert_eq!(dom_classify(w, IndecBundle::ext(0, -2), e), DomVerdict::DomMinus);
        assert_eq!(dom_classify(w, IndecBundle::ext(0, 0), e), DomVerdict::DomPlusUp);
        assert_eq!(dom_classify(w, IndecBundle::ext(2, 0), e), DomVerdict::DomPlusDown);
        assert_eq!(dom_classify(w, IndecBundle::ext(1, 0), e), DomVerdict::DomPlusBoth);
        assert_eq!(dom_classify(w, IndecBundle::ext(1, 1), e), DomVerdict::Outside);
        let d = dom_l(w, e);
        assert_eq!(d.len(), 4 * (7 + 7));
        for n in -2..=4 {
            assert!(d.contains(&ec(-1, n)));
        }
        for n in -5..=1 {
            assert!(d.contains(&ec(3, n + 1)));
        }
    }

    #[test]
    fn roof_example() {
        let w = Weight::new(4).unwrap();
        let (left, right) = roofs(w, (1, 0), TwistClass::E, TwistClass::E);
        let lo = -w.c() - w.x4(1);
        assert_eq!(left, interval_elements(lo, w.x4(1)).into_iter().collect());
        let ro = w.omega() - w.x4(2);
        assert_eq!(right, interval_elements(ro, w.omega() + w.c()).into_iter().collect());
        assert_eq!(left.len(), 16);
        assert_eq!(right.len(), 16);
        let (l0, _) = roofs(w, (0, 3), TwistClass::E, TwistClass::G12);
        assert!(l0.is_empty());
    }

    #[test]
    fn thick_closure() {
        let w = Weight::new(4).unwrap();
        let (left, _) = roofs(w, (1, 0), TwistClass::E, TwistClass::E);
        let r = thick_reach(w, (1, 0), &left);
        assert!(r.contains(&(0, 0)) && r.contains(&(0, 1)));
        assert_eq!(thick_reach(w, (1, 0), &BTreeSet::new()), BTreeSet::from([(1, 0)]));
        let w5 = Weight::new(5).unwrap();
        let (_, right) = roofs(w5, (1, 0), TwistClass::E, TwistClass::G13);
        let r = thick_reach(w5, (1, 0), &right);
        for f in [(2, 0), (2, -1), (3, 0), (3, -1), (3, -2)] {
            assert!(r.contains(&f), "missing {f:?}");
        }
    }
}
