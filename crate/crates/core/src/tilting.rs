//! The trichotomy form of tilting bundles: rank-four bundles `E_i..E_j`, the
//! left/right roofs `L_g(E_i)`, `R_h(E_j)` and a line part `S_I` cut out by an
//! upset `I` of the finite set `H`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bundle::IndecBundle;
use crate::domain::{roofs, rigidity_violation};
use crate::error::Error;
use crate::lattice::{GradedDegree, TwistClass, Weight};
use crate::upset::{enumerate_upsets, is_upset};

/// A basic collection of indecomposable bundles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BundleCollection {
    weight: Weight,
    members: BTreeSet<IndecBundle>,
}

impl BundleCollection {
    pub fn new(weight: Weight, members: impl IntoIterator<Item = IndecBundle>) -> Self {
        BundleCollection {
            weight,
            members: members.into_iter().collect(),
        }
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &BTreeSet<IndecBundle> {
        &self.members
    }

    pub fn contains(&self, b: &IndecBundle) -> bool {
        self.members.contains(b)
    }

    pub fn iter(&self) -> impl Iterator<Item = IndecBundle> + '_ {
        self.members.iter().copied()
    }

    /// Rank-four members as `(i, k)`, sorted by level then offset.
    pub fn rank_four(&self) -> Vec<(i64, i64)> {
        self.iter().filter_map(IndecBundle::ext_pair).collect()
    }

    pub fn line_degrees(&self) -> BTreeSet<GradedDegree> {
        self.iter().filter_map(IndecBundle::line_degree).collect()
    }

    /// First pair that is not rigid, with the failing condition.
    pub fn rigidity_violation(&self) -> Option<(IndecBundle, IndecBundle, &'static str)> {
        let v: Vec<_> = self.iter().collect();
        for (n, &a) in v.iter().enumerate() {
            for &b in &v[n..] {
                if let Some(reason) = rigidity_violation(self.weight, a, b) {
                    return Some((a, b, reason));
                }
            }
        }
        None
    }

    pub fn is_rigid(&self) -> bool {
        self.rigidity_violation().is_none()
    }

    /// Number of summands of a tilting bundle, the rank of the Grothendieck group.
    pub fn tilting_size(w: Weight) -> usize {
        (5 * w.p() + 7) as usize
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.iter().map(IndecBundle::to_json).collect())
    }

    pub fn from_json(w: Weight, v: &serde_json::Value) -> Result<Self, Error> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::InvalidBundle("a collection is a JSON array of bundles".into()))?;
        let mut members = BTreeSet::new();
        for item in arr {
            let b = IndecBundle::from_json(w, item)?;
            if !members.insert(b) {
                return Err(Error::InvalidBundle(format!("{b} listed twice")));
            }
        }
        Ok(BundleCollection { weight: w, members })
    }
}

/// Descriptor `(i, j, (k_n), g, h, I)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TiltingForm {
    pub i: i64,
    pub j: i64,
    pub k: Vec<i64>,
    pub g: TwistClass,
    pub h: TwistClass,
    pub upset: BTreeSet<GradedDegree>,
}

impl fmt::Display for TiltingForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ks: Vec<String> = self.k.iter().map(|k| k.to_string()).collect();
        let ups: Vec<String> = self.upset.iter().map(|x| x.to_string()).collect();
        write!(
            f,
            "i={} j={} k=[{}] g={} h={} upset={{{}}}",
            self.i,
            self.j,
            ks.join(","),
            self.g,
            self.h,
            ups.join(", ")
        )
    }
}

#[derive(Deserialize)]
struct FormWire {
    i: i64,
    j: i64,
    k: Vec<i64>,
    #[serde(default)]
    g: Option<String>,
    #[serde(default)]
    h: Option<String>,
    #[serde(default)]
    upset: Vec<DegreeWire>,
}

/// A degree as a normal-form tuple or a symbolic literal.
#[derive(Deserialize)]
#[serde(untagged)]
enum DegreeWire {
    Tuple([i64; 5]),
    Text(String),
}

impl TiltingForm {
    pub fn from_json(w: Weight, v: &serde_json::Value) -> Result<Self, Error> {
        let wire: FormWire = serde_json::from_value(v.clone())?;
        let upset = wire
            .upset
            .iter()
            .map(|d| match d {
                DegreeWire::Tuple(nf) => w.from_normal_form(*nf),
                DegreeWire::Text(t) => crate::symbolic::parse_degree(w, t),
            })
            .collect::<Result<_, _>>()?;
        let twist = |s: Option<String>| s.map(|s| TwistClass::parse(&s)).transpose();
        TiltingForm::with_default_twists(w, wire.i, wire.j, wire.k, twist(wire.g)?, twist(wire.h)?, upset)
    }

    /// Builds a form, filling in twists that the form does not depend on
    /// (`g` when `i = 0`, `h` when `j = p-2`) and rejecting missing ones.
    pub fn with_default_twists(
        w: Weight,
        i: i64,
        j: i64,
        k: Vec<i64>,
        g: Option<TwistClass>,
        h: Option<TwistClass>,
        upset: BTreeSet<GradedDegree>,
    ) -> Result<Self, Error> {
        let g_free = i == 0;
        let h_free = j == w.p() - 2;
        let (g, h) = match (g, h) {
            (Some(g), Some(h)) => (g, h),
            (None, Some(h)) if g_free => (first_other(h), h),
            (Some(g), None) if h_free => (g, first_other(g)),
            (None, None) if g_free && h_free => (TwistClass::E, TwistClass::G12),
            (None, None) if g_free => return Err(Error::InvalidForm("twist h is required when j < p-2".into())),
            (None, _) => return Err(Error::InvalidForm("twist g is required when i > 0".into())),
            (Some(_), None) => return Err(Error::InvalidForm("twist h is required when j < p-2".into())),
        };
        let form = TiltingForm { i, j, k, g, h, upset };
        form.check(w)?;
        Ok(form)
    }

    pub fn k_at(&self, n: i64) -> i64 {
        self.k[(n - self.i) as usize]
    }

    pub fn rank_four(&self) -> Vec<(i64, i64)> {
        (self.i..=self.j).map(|n| (n, self.k_at(n))).collect()
    }

    /// Everything except the upset is well formed.
    pub fn check_shape(&self, w: Weight) -> Result<(), Error> {
        let p = w.p();
        if !(0 <= self.i && self.i <= self.j && self.j <= p - 2) {
            return Err(Error::InvalidForm(format!(
                "levels must satisfy 0 <= i <= j <= p-2, got i={} j={} p={p}",
                self.i, self.j
            )));
        }
        if self.k.len() as i64 != self.j - self.i + 1 {
            return Err(Error::InvalidForm(format!(
                "expected {} offsets k_i..k_j, got {}",
                self.j - self.i + 1,
                self.k.len()
            )));
        }
        for win in self.k.windows(2) {
            let (prev, cur) = (win[0], win[1]);
            if !(cur <= prev && prev <= cur + 1) {
                return Err(Error::InvalidForm(format!(
                    "offsets must satisfy k_n <= k_(n-1) <= k_n + 1, got {prev} then {cur}"
                )));
            }
        }
        if self.g == self.h {
            return Err(Error::InvalidForm(format!("twists g and h must differ, both are {}", self.g)));
        }
        Ok(())
    }

    pub fn check(&self, w: Weight) -> Result<(), Error> {
        self.check_shape(w)?;
        let h = build_h(w, self)?;
        if !is_upset(&h, &self.upset) {
            return Err(Error::InvalidForm("upset is not an up-closed subset of H".into()));
        }
        Ok(())
    }

    /// Replaces twists the form does not depend on by their canonical choice.
    pub fn normalized(&self, w: Weight) -> TiltingForm {
        let mut f = self.clone();
        let g_free = f.i == 0;
        let h_free = f.j == w.p() - 2;
        match (g_free, h_free) {
            (true, true) => (f.g, f.h) = (TwistClass::E, TwistClass::G12),
            (true, false) => f.g = first_other(f.h),
            (false, true) => f.h = first_other(f.g),
            (false, false) => {}
        }
        f
    }
}

fn first_other(t: TwistClass) -> TwistClass {
    TwistClass::ALL.into_iter().find(|&g| g != t).unwrap()
}

/// The twist set `G'`: drop `g` unless `i = 0` and drop `h` unless `j = p-2`.
fn twist_support(w: Weight, form: &TiltingForm) -> Vec<TwistClass> {
    TwistClass::ALL
        .into_iter()
        .filter(|&q| (form.i == 0 || q != form.g) && (form.j == w.p() - 2 || q != form.h))
        .collect()
}

/// `H = U_{q in G'} ({omega + a*x4 + q : a in J1} U {b*x4 + q : b in J2})`.
pub fn build_h(w: Weight, form: &TiltingForm) -> Result<BTreeSet<GradedDegree>, Error> {
    form.check_shape(w)?;
    let p = w.p();
    let (i, j) = (form.i, form.j);
    let (ki, kj) = (form.k_at(i), form.k_at(j));
    let d_up = if i == 0 { 0 } else { 1 };
    let d_lo = if j == p - 2 { 1 } else { 0 };
    let j1 = kj - d_lo..=ki - d_up;
    let j2 = i + ki + d_up - p - 1..=j + kj + d_lo - p - 1;
    let mut h = BTreeSet::new();
    for q in twist_support(w, form) {
        let tq = w.twist(q);
        for a in j1.clone() {
            h.insert(w.omega() + w.x4(a) + tq);
        }
        for b in j2.clone() {
            h.insert(w.x4(b) + tq);
        }
    }
    Ok(h)
}

/// `S_I = I U ((H - omega) \ (I - omega))`.
pub fn s_part(w: Weight, h: &BTreeSet<GradedDegree>, upset: &BTreeSet<GradedDegree>) -> BTreeSet<GradedDegree> {
    let mut s = upset.clone();
    for &x in h.difference(upset) {
        s.insert(x - w.omega());
    }
    s
}

/// `L_g(E_i) U R_h(E_j)`, empty sides for `i = 0` and `j = p-2`.
pub fn roof_lines(w: Weight, form: &TiltingForm) -> BTreeSet<GradedDegree> {
    let (left, _) = roofs(w, (form.i, form.k_at(form.i)), form.g, form.h);
    let (_, right) = roofs(w, (form.j, form.k_at(form.j)), form.g, form.h);
    left.union(&right).copied().collect()
}

/// The collection described by `form`, without checking rigidity or size.
pub fn assemble_unchecked(w: Weight, form: &TiltingForm) -> Result<BundleCollection, Error> {
    let h = build_h(w, form)?;
    let mut members: BTreeSet<IndecBundle> =
        form.rank_four().into_iter().map(|(n, k)| IndecBundle::ext(n, k)).collect();
    for x in roof_lines(w, form).into_iter().chain(s_part(w, &h, &form.upset)) {
        members.insert(IndecBundle::Line(x));
    }
    Ok(BundleCollection { weight: w, members })
}

/// The collection described by `form`; fails if it is not rigid of size `5p+7`.
pub fn assemble(w: Weight, form: &TiltingForm) -> Result<BundleCollection, Error> {
    form.check(w)?;
    let c = assemble_unchecked(w, form)?;
    if let Some((a, b, reason)) = c.rigidity_violation() {
        return Err(Error::NotRigid {
            a: a.to_string(),
            b: b.to_string(),
            reason: reason.to_string(),
        });
    }
    let want = BundleCollection::tilting_size(w);
    if c.len() != want {
        return Err(Error::InvalidForm(format!(
            "assembled {} summands, a tilting bundle has {want}",
            c.len()
        )));
    }
    Ok(c)
}

/// Twist pairs `(g, h)` giving distinct forms for levels `i..=j`.
pub fn twist_pairs(w: Weight, i: i64, j: i64) -> Vec<(TwistClass, TwistClass)> {
    let mut out = Vec::new();
    for g in TwistClass::ALL {
        for h in TwistClass::ALL {
            if g == h {
                continue;
            }
            let f = TiltingForm {
                i,
                j,
                k: vec![0; (j - i + 1) as usize],
                g,
                h,
                upset: BTreeSet::new(),
            }
            .normalized(w);
            if (f.g, f.h) == (g, h) {
                out.push((g, h));
            }
        }
    }
    out
}

/// Offset sequences with `k_i = 0` and each step 0 or -1.
pub fn normalized_k_sequences(i: i64, j: i64) -> Vec<Vec<i64>> {
    let len = (j - i + 1) as usize;
    (0u32..1 << (len - 1))
        .map(|mask| {
            let mut k = vec![0i64; len];
            for n in 1..len {
                k[n] = k[n - 1] - ((mask >> (n - 1)) & 1) as i64;
            }
            k
        })
        .collect()
}

/// Visits every normalized form: `k_i = 0`, canonical twists, every upset of H.
pub fn for_each_normalized_form(w: Weight, visit: &mut dyn FnMut(&TiltingForm)) {
    for i in 0..=w.p() - 2 {
        for j in i..=w.p() - 2 {
            for k in normalized_k_sequences(i, j) {
                for (g, h) in twist_pairs(w, i, j) {
                    let mut form = TiltingForm {
                        i,
                        j,
                        k: k.clone(),
                        g,
                        h,
                        upset: BTreeSet::new(),
                    };
                    let hset = build_h(w, &form).expect("well-formed shape");
                    for upset in enumerate_upsets(&hset) {
                        form.upset = upset;
                        visit(&form);
                    }
                }
            }
        }
    }
}

/// [`for_each_normalized_form`] together with the assembled collection and its roofs.
///
/// The roofs and `H - omega` are computed once per shape and shared by its upsets.
pub fn for_each_assembled_form(
    w: Weight,
    visit: &mut dyn FnMut(&TiltingForm, &BundleCollection, &BTreeSet<GradedDegree>),
) {
    for i in 0..=w.p() - 2 {
        for j in i..=w.p() - 2 {
            for k in normalized_k_sequences(i, j) {
                for (g, h) in twist_pairs(w, i, j) {
                    let mut form = TiltingForm {
                        i,
                        j,
                        k: k.clone(),
                        g,
                        h,
                        upset: BTreeSet::new(),
                    };
                    let hset = build_h(w, &form).expect("well-formed shape");
                    let lowered: Vec<(GradedDegree, GradedDegree)> =
                        hset.iter().map(|&x| (x, x - w.omega())).collect();
                    let roofs = roof_lines(w, &form);
                    let mut base: BTreeSet<IndecBundle> =
                        form.rank_four().into_iter().map(|(n, k)| IndecBundle::ext(n, k)).collect();
                    base.extend(roofs.iter().map(|&x| IndecBundle::Line(x)));
                    for upset in enumerate_upsets(&hset) {
                        let mut members = base.clone();
                        for &(x, y) in &lowered {
                            members.insert(IndecBundle::Line(if upset.contains(&x) { x } else { y }));
                        }
                        form.upset = upset;
                        visit(&form, &BundleCollection { weight: w, members }, &roofs);
                    }
                }
            }
        }
    }
}

/// Recovers the form of a collection, if it has one.
///
/// Twist pairs are tried in canonical order; when several descriptors assemble to
/// the same collection the first is returned and the others are logged.
pub fn validate_form(c: &BundleCollection) -> Option<TiltingForm> {
    let w = c.weight();
    let ranks = c.rank_four();
    let (&(i, _), &(j, _)) = (ranks.first()?, ranks.last()?);
    if ranks.len() as i64 != j - i + 1 || ranks.iter().zip(i..).any(|(&(n, _), m)| n != m) {
        return None;
    }
    let k: Vec<i64> = ranks.iter().map(|&(_, k)| k).collect();
    let lines = c.line_degrees();
    let mut found: Vec<TiltingForm> = Vec::new();
    for (g, h) in twist_pairs(w, i, j) {
        let mut form = TiltingForm {
            i,
            j,
            k: k.clone(),
            g,
            h,
            upset: BTreeSet::new(),
        };
        let Ok(hset) = build_h(w, &form) else {
            return None;
        };
        form.upset = lines.intersection(&hset).copied().collect();
        if !is_upset(&hset, &form.upset) {
            continue;
        }
        if assemble_unchecked(w, &form).ok().as_ref() == Some(c) {
            found.push(form);
        }
    }
    if found.len() > 1 {
        for extra in &found[1..] {
            log::debug!("collection also has the descriptor {extra}");
        }
    }
    found.into_iter().next()
}

/// Upper bound `5p+i-j+6` on the number of lines rigid with `E_i + E_j`.
pub fn line_rigidity_capacity(w: Weight, i: i64, j: i64) -> i64 {
    5 * w.p() + i - j + 6
}

/// Numbers of (omega,2)- and (omega,1)-segments in the common line domain of `E_i, E_j`.
pub fn segment_profile(w: Weight, i: i64, j: i64) -> (i64, i64) {
    (w.p() + i - j - 2, j - i + 4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::interval_elements;

    fn example_49(upset: BTreeSet<GradedDegree>) -> TiltingForm {
        TiltingForm {
            i: 1,
            j: 2,
            k: vec![0, 0],
            g: TwistClass::G12,
            h: TwistClass::E,
            upset,
        }
    }

    #[test]
    fn h_set_example() {
        let w = Weight::new(5).unwrap();
        let h = build_h(w, &example_49(BTreeSet::new())).unwrap();
        let expect = BTreeSet::from([w.xbar(1, 3) - w.x4(4), w.xbar(2, 3) - w.x4(4)]);
        assert_eq!(h, expect);
        assert_eq!(enumerate_upsets(&h).len(), 4);
        let i = BTreeSet::from([w.xbar(1, 3) - w.x4(4)]);
        let s = s_part(w, &h, &i);
        assert_eq!(s, BTreeSet::from([w.xbar(1, 3) - w.x4(4), -w.x(1) + w.x4(2)]));
        let c = assemble(w, &example_49(i.clone())).unwrap();
        assert_eq!(c.len(), 32);
        assert_eq!(validate_form(&c), Some(example_49(i)));
    }

    #[test]
    fn single_bundle_example() {
        let w = Weight::new(4).unwrap();
        let form = TiltingForm {
            i: 1,
            j: 1,
            k: vec![0],
            g: TwistClass::G12,
            h: TwistClass::E,
            upset: BTreeSet::new(),
        };
        assert!(build_h(w, &form).unwrap().is_empty());
        let c = assemble(w, &form).unwrap();
        assert_eq!(c.len(), 27);
        assert_eq!(validate_form(&c), Some(form));
    }

    #[test]
    fn roof_unions_are_intervals() {
        for p in 3..=6 {
            let w = Weight::new(p).unwrap();
            for i in 1..=p - 2 {
                for k in [-1, 0, 2] {
                    let g = TwistClass::G13;
                    let (left, _) = roofs(w, (i, k), g, TwistClass::E);
                    let lo = w.x4(k - p - 1) + w.twist(g);
                    let hi = w.x4(i + k) + w.twist(g);
                    let iv: BTreeSet<_> = interval_elements(lo, hi).into_iter().collect();
                    assert_eq!(left, iv, "p={p} i={i} k={k}");
                }
            }
            for j in 0..=p - 3 {
                let h = TwistClass::G23;
                let (_, right) = roofs(w, (j, 1), TwistClass::E, h);
                let lo = w.omega() + w.x4(j + 1 - p + 1) + w.twist(h);
                let hi = w.omega() + w.x4(1 + p) + w.twist(h);
                let iv: BTreeSet<_> = interval_elements(lo, hi).into_iter().collect();
                assert_eq!(right, iv, "p={p} j={j}");
            }
        }
    }

    #[test]
    fn form_shape_errors() {
        let w = Weight::new(4).unwrap();
        let bad_k = TiltingForm {
            i: 0,
            j: 1,
            k: vec![0, 2],
            g: TwistClass::E,
            h: TwistClass::G12,
            upset: BTreeSet::new(),
        };
        assert!(bad_k.check(w).is_err());
        let same = TiltingForm {
            i: 1,
            j: 1,
            k: vec![0],
            g: TwistClass::E,
            h: TwistClass::E,
            upset: BTreeSet::new(),
        };
        assert!(build_h(w, &same).is_err());
        let w2 = Weight::new(2).unwrap();
        let f = TiltingForm::with_default_twists(w2, 0, 0, vec![0], None, None, BTreeSet::new()).unwrap();
        assert_eq!(assemble(w2, &f).unwrap().len(), 17);
    }

    #[test]
    fn k_sequences() {
        assert_eq!(normalized_k_sequences(1, 1), vec![vec![0]]);
        assert_eq!(normalized_k_sequences(0, 2).len(), 4);
        assert!(normalized_k_sequences(0, 2).contains(&vec![0, -1, -1]));
    }
}
