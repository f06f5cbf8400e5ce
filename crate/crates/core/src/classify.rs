//! Classification of tilting bundles inside a 2-cluster tilting subcategory
//! `add{U(l*omega), O(x)}` of vector bundles, and exhaustive clique searches.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::bundle::{shift, shift_omega, IndecBundle};
use crate::clique::{BitSet, Graph};
use crate::domain::{dom_lines, hom_nonzero_bundles, in_dom_plus, rigid_pair};
use crate::error::Error;
use crate::lattice::{interval_elements, line_canonical_coord, GradedDegree, TwistClass, Weight};
use crate::sheaf::rigid_lines;
use crate::tilting::{assemble, validate_form, BundleCollection, TiltingForm};

/// Orbit of a line under the omega-shift: `(g, m mod p+2)` of its top-row representative.
pub fn line_orbit_key(x: GradedDegree) -> (TwistClass, i64) {
    let lc = line_canonical_coord(x);
    (lc.twist, lc.m.rem_euclid(x.weight().p() + 2))
}

/// Orbit of `<i,k>` under the omega-shift, `(i,k) -> (p-2-i, i+k-p)`.
pub fn ext_orbit_key(w: Weight, (i, k): (i64, i64)) -> (i64, i64) {
    let p = w.p();
    let a = (i, k.rem_euclid(p + 2));
    let b = (p - 2 - i, (i + k - p).rem_euclid(p + 2));
    a.min(b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrbitKey {
    Line(TwistClass, i64),
    Ext(i64, i64),
}

pub fn orbit_key(w: Weight, b: IndecBundle) -> OrbitKey {
    match b {
        IndecBundle::Line(x) => {
            let (g, m) = line_orbit_key(x);
            OrbitKey::Line(g, m)
        }
        IndecBundle::Ext2 { i, k } => {
            let (a, b) = ext_orbit_key(w, (i, k));
            OrbitKey::Ext(a, b)
        }
    }
}

/// The subcategory `add{U(l*omega), O(x)}` for `U = E_0 + ... + E_{p-2}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClusterSubcatDesc {
    pub base: Vec<(i64, i64)>,
}

impl ClusterSubcatDesc {
    /// `U` with offsets `k_0..k_{p-2}`; consecutive offsets satisfy `k_n <= k_(n-1) <= k_n + 1`.
    pub fn new(w: Weight, offsets: &[i64]) -> Result<Self, Error> {
        if offsets.len() as i64 != w.p() - 1 {
            return Err(Error::InvalidForm(format!(
                "a cluster tilting base needs {} offsets, got {}",
                w.p() - 1,
                offsets.len()
            )));
        }
        for win in offsets.windows(2) {
            if !(win[1] <= win[0] && win[0] <= win[1] + 1) {
                return Err(Error::InvalidForm(format!(
                    "base offsets must satisfy k_n <= k_(n-1) <= k_n + 1, got {} then {}",
                    win[0], win[1]
                )));
            }
        }
        Ok(ClusterSubcatDesc {
            base: offsets.iter().enumerate().map(|(n, &k)| (n as i64, k)).collect(),
        })
    }

    /// The row `<0,0>, ..., <p-2,0>`.
    pub fn standard(w: Weight) -> Self {
        ClusterSubcatDesc::new(w, &vec![0; (w.p() - 1) as usize]).unwrap()
    }

    pub fn contains(&self, w: Weight, b: IndecBundle) -> bool {
        match b.ext_pair() {
            None => true,
            Some(e) => {
                let key = ext_orbit_key(w, e);
                self.base.iter().any(|&f| ext_orbit_key(w, f) == key)
            }
        }
    }

    pub fn check_members(&self, c: &BundleCollection) -> Result<(), Error> {
        match c.iter().find(|&b| !self.contains(c.weight(), b)) {
            Some(b) => Err(Error::NotInSubcategory(b.to_string())),
            None => Ok(()),
        }
    }

    /// Number of omega-orbits of indecomposables: `4(p+2)` of lines and `p-1` of rank four.
    pub fn orbit_count(w: Weight) -> usize {
        (4 * (w.p() + 2) + w.p() - 1) as usize
    }
}

/// `c = {O(L + x) : 0 <= x <= 2c}` for some `L`; returns `L`.
pub fn is_canonical(c: &BundleCollection) -> Option<GradedDegree> {
    let w = c.weight();
    let lines = c.line_degrees();
    if lines.len() != c.len() {
        return None;
    }
    let &low = lines.iter().next()?;
    let window: BTreeSet<_> = interval_elements(low, low + w.c().scale(2)).into_iter().collect();
    (window == lines).then_some(low)
}

/// Shifts `l` worth checking for `Hom(a, b(l*omega)) = 0` for every `l > 0`.
///
/// `-2omega = c + 2x4` is effective, so between lines a nonzero Hom at `l >= 3`
/// already gives one at `l - 2`; with a rank-four side the Hom condition only
/// weakens as `l` grows, so `l = 1` decides it.
fn forward_shifts(a: IndecBundle, b: IndecBundle) -> &'static [i64] {
    if a.is_line() && b.is_line() {
        &[1, 2]
    } else {
        &[1]
    }
}

fn forward_hom_vanishes(c: &BundleCollection, shifts: impl Fn(IndecBundle, IndecBundle) -> Vec<i64>) -> bool {
    let w = c.weight();
    c.iter().all(|a| {
        c.iter()
            .all(|b| shifts(a, b).into_iter().all(|l| !hom_nonzero_bundles(w, a, shift_omega(w, b, l))))
    })
}

/// Each omega-orbit of `u` meets `c` once and `Hom(c, c(l*omega)) = 0` for `l > 0`.
pub fn is_slice(c: &BundleCollection, u: &ClusterSubcatDesc) -> Result<bool, Error> {
    u.check_members(c)?;
    Ok(meets_orbits_once(c) && forward_hom_vanishes(c, |a, b| forward_shifts(a, b).to_vec()))
}

/// [`is_slice`] with the Hom condition checked directly for `1 <= l <= lmax`.
pub fn is_slice_wide(c: &BundleCollection, u: &ClusterSubcatDesc, lmax: i64) -> Result<bool, Error> {
    u.check_members(c)?;
    Ok(meets_orbits_once(c) && forward_hom_vanishes(c, |_, _| (1..=lmax).collect()))
}

fn meets_orbits_once(c: &BundleCollection) -> bool {
    let w = c.weight();
    let keys: BTreeSet<OrbitKey> = c.iter().map(|b| orbit_key(w, b)).collect();
    keys.len() == c.len() && keys.len() == ClusterSubcatDesc::orbit_count(w)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ClassVerdict {
    Canonical { shift: GradedDegree },
    Slice,
    Form22 { form: TiltingForm },
    NotTilting { reason: String },
}

impl ClassVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            ClassVerdict::Canonical { .. } => "canonical",
            ClassVerdict::Slice => "slice",
            ClassVerdict::Form22 { .. } => "form22",
            ClassVerdict::NotTilting { .. } => "not_tilting",
        }
    }

    /// The number of rank-four summands each positive verdict allows.
    pub fn rank_four_count_ok(&self, w: Weight, n: usize) -> bool {
        let n = n as i64;
        match self {
            ClassVerdict::Canonical { .. } => n == 0,
            ClassVerdict::Form22 { .. } => (1..=w.p() - 2).contains(&n),
            ClassVerdict::Slice => n == w.p() - 1,
            ClassVerdict::NotTilting { .. } => true,
        }
    }
}

/// Why `c` cannot be tilting, if a basic obstruction applies.
pub fn tilting_obstruction(c: &BundleCollection) -> Option<String> {
    let w = c.weight();
    let mut seen: BTreeMap<(i64, i64), (i64, i64)> = BTreeMap::new();
    for e in c.rank_four() {
        if let Some(prev) = seen.insert(ext_orbit_key(w, e), e) {
            return Some(format!(
                "<{},{}> and <{},{}> lie in one omega-orbit; a tilting bundle has at most one summand per orbit",
                prev.0, prev.1, e.0, e.1
            ));
        }
    }
    if let Some((a, b, reason)) = c.rigidity_violation() {
        return Some(format!("{a} and {b} are not rigid: {reason}"));
    }
    let want = BundleCollection::tilting_size(w);
    if c.len() != want {
        return Some(format!("{} summands, a tilting bundle has {want}", c.len()));
    }
    None
}

/// Sorts `c` into exactly one of the three tilting shapes or explains why it is none.
pub fn classify(c: &BundleCollection, u: &ClusterSubcatDesc) -> Result<ClassVerdict, Error> {
    u.check_members(c)?;
    let w = c.weight();
    let mut hits = Vec::new();
    if let Some(s) = is_canonical(c) {
        hits.push(ClassVerdict::Canonical { shift: s });
    }
    if is_slice(c, u)? {
        hits.push(ClassVerdict::Slice);
    }
    if let Some(form) = validate_form(c) {
        if form.i != 0 || form.j != w.p() - 2 {
            hits.push(ClassVerdict::Form22 { form });
        }
    }
    if hits.len() > 1 {
        let names: Vec<_> = hits.iter().map(ClassVerdict::name).collect();
        return Err(Error::InvalidBundle(format!(
            "collection matches several shapes at once: {}",
            names.join(", ")
        )));
    }
    if let Some(v) = hits.pop() {
        if let Some(reason) = tilting_obstruction(c) {
            return Err(Error::InvalidBundle(format!("{} shape but {reason}", v.name())));
        }
        return Ok(v);
    }
    let reason = tilting_obstruction(c)
        .unwrap_or_else(|| "rigid of full size but of none of the three shapes".to_string());
    Ok(ClassVerdict::NotTilting { reason })
}

/// Verdict without a fixed subcategory: canonical, a tilting form, or unclassified.
pub fn classify_unscoped(c: &BundleCollection) -> ClassVerdict {
    let w = c.weight();
    if let Some(s) = is_canonical(c) {
        return ClassVerdict::Canonical { shift: s };
    }
    if let Some(form) = validate_form(c) {
        return if form.i == 0 && form.j == w.p() - 2 {
            ClassVerdict::Slice
        } else {
            ClassVerdict::Form22 { form }
        };
    }
    let reason = tilting_obstruction(c)
        .unwrap_or_else(|| "rigid of full size but not of tilting form".to_string());
    ClassVerdict::NotTilting { reason }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchRecord {
    pub collection: serde_json::Value,
    #[serde(flatten)]
    pub verdict: ClassVerdict,
    pub witnesses: Vec<String>,
}

/// All rigid line collections of size `5p+7` containing `O(0)`, translated so that
/// their smallest degree is 0.
pub fn line_only_cliques(w: Weight) -> Vec<BundleCollection> {
    let two_c = w.c().scale(2);
    let verts: Vec<GradedDegree> = interval_elements(-two_c, two_c);
    let zero = verts.iter().position(|&x| x == w.zero()).unwrap();
    let mut g = Graph::from_predicate(verts.len(), |a, b| rigid_lines(verts[a], verts[b]));
    add_line_orbit_caps(&mut g, &verts);
    let target = BundleCollection::tilting_size(w);
    let mut out = BTreeSet::new();
    g.for_each_clique_of_size(target, &[zero], &BitSet::full(verts.len()), &mut |cl| {
        let degs: BTreeSet<GradedDegree> = cl.iter().map(|&v| verts[v]).collect();
        let low = *degs.iter().next().unwrap();
        let normalized: BTreeSet<IndecBundle> = degs.iter().map(|&x| IndecBundle::Line(x - low)).collect();
        out.insert(normalized);
        true
    });
    out.into_iter().map(|m| BundleCollection::new(w, m)).collect()
}

/// At most two lines of one omega-orbit are pairwise rigid.
fn add_line_orbit_caps(g: &mut Graph, verts: &[GradedDegree]) {
    let mut groups: BTreeMap<(TwistClass, i64), Vec<usize>> = BTreeMap::new();
    for (n, &x) in verts.iter().enumerate() {
        groups.entry(line_orbit_key(x)).or_default().push(n);
    }
    for (_, members) in groups {
        if members.len() > 2 {
            g.add_group_cap(members, 2);
        }
    }
}

/// Rigid line sets completing `ws` to `5p+7` summands.
pub fn line_completions(w: Weight, ws: &[(i64, i64)]) -> Vec<BundleCollection> {
    let verts: Vec<GradedDegree> = dom_lines(w, ws).into_iter().collect();
    let target = BundleCollection::tilting_size(w) as i64 - ws.len() as i64;
    if target < 0 || (verts.len() as i64) < target {
        return Vec::new();
    }
    let mut g = Graph::from_predicate(verts.len(), |a, b| rigid_lines(verts[a], verts[b]));
    add_line_orbit_caps(&mut g, &verts);
    let mut out = Vec::new();
    g.for_each_clique_of_size(target as usize, &[], &BitSet::full(verts.len()), &mut |cl| {
        let members = ws
            .iter()
            .map(|&(i, k)| IndecBundle::ext(i, k))
            .chain(cl.iter().map(|&v| IndecBundle::Line(verts[v])));
        out.push(BundleCollection::new(w, members));
        true
    });
    out.sort_by(|a, b| a.members().cmp(b.members()));
    out
}

/// A largest set of pairwise rigid lines that are rigid with every bundle in `ws`.
pub fn max_line_clique(w: Weight, ws: &[(i64, i64)]) -> Vec<GradedDegree> {
    let verts: Vec<GradedDegree> = dom_lines(w, ws).into_iter().collect();
    let mut g = Graph::from_predicate(verts.len(), |a, b| rigid_lines(verts[a], verts[b]));
    add_line_orbit_caps(&mut g, &verts);
    g.max_clique().into_iter().map(|v| verts[v]).collect()
}

/// Rank-four pairs `(<i,0>, <j,k>)`, `i <= j`, lying in each other's `Dom+`.
pub fn dom_plus_pairs(w: Weight) -> Vec<((i64, i64), (i64, i64))> {
    let p = w.p();
    let mut out = Vec::new();
    for i in 0..=p - 2 {
        for j in i..=p - 2 {
            for k in -(j - i)..=0 {
                if i == j && k != 0 {
                    continue;
                }
                if in_dom_plus(w, (i, 0), (j, k)) && in_dom_plus(w, (j, k), (i, 0)) {
                    out.push(((i, 0), (j, k)));
                }
            }
        }
    }
    out
}

/// Sets of rank-four bundles with distinct levels, pairwise in each other's `Dom+`,
/// whose lowest-level member has offset 0.
pub fn normalized_dom_plus_sets(w: Weight) -> Vec<Vec<(i64, i64)>> {
    let p = w.p();
    let mut out = Vec::new();
    for i0 in 0..=p - 2 {
        let mut cur = vec![(i0, 0)];
        extend_dom_plus(w, &mut cur, &mut out);
    }
    out
}

fn extend_dom_plus(w: Weight, cur: &mut Vec<(i64, i64)>, out: &mut Vec<Vec<(i64, i64)>>) {
    out.push(cur.clone());
    let p = w.p();
    let &(last, k_last) = cur.last().unwrap();
    for i in last + 1..=p - 2 {
        // offsets of the higher member are bounded by the inverted triangle of the anchor
        for k in k_last - (i - last)..=k_last {
            if cur.iter().all(|&e| in_dom_plus(w, e, (i, k)) && in_dom_plus(w, (i, k), e)) {
                cur.push((i, k));
                extend_dom_plus(w, cur, out);
                cur.pop();
            }
        }
    }
}

/// Outcome of comparing clique completions with assembled forms for one rank-four part.
#[derive(Clone, Debug, Serialize)]
pub struct FormSweepRow {
    pub rank_four: Vec<(i64, i64)>,
    pub cliques: usize,
    pub forms: usize,
    /// Cliques that are not assembled forms.
    pub unexplained: Vec<serde_json::Value>,
    /// Assembled forms missing from the cliques.
    pub missing: Vec<String>,
}

/// For every normalized pairwise-`Dom+` rank-four part: every rigid completion to
/// `5p+7` summands is an assembled form, and every assembled form is found.
pub fn dom_plus_sweep(w: Weight) -> Vec<FormSweepRow> {
    let mut assembled: BTreeMap<Vec<(i64, i64)>, BTreeSet<BTreeSet<IndecBundle>>> = BTreeMap::new();
    crate::tilting::for_each_normalized_form(w, &mut |f| {
        if let Ok(c) = assemble(w, f) {
            assembled.entry(f.rank_four()).or_default().insert(c.members().clone());
        }
    });
    let mut rows = Vec::new();
    for ws in normalized_dom_plus_sets(w) {
        let cliques = line_completions(w, &ws);
        let forms = assembled.remove(&ws).unwrap_or_default();
        let found: BTreeSet<BTreeSet<IndecBundle>> = cliques.iter().map(|c| c.members().clone()).collect();
        let unexplained = cliques
            .iter()
            .filter(|c| !forms.contains(c.members()))
            .map(BundleCollection::to_json)
            .collect();
        let missing = forms
            .iter()
            .filter(|m| !found.contains(*m))
            .map(|m| m.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        rows.push(FormSweepRow {
            rank_four: ws,
            cliques: cliques.len(),
            forms: forms.len(),
            unexplained,
            missing,
        });
    }
    for (ws, forms) in assembled {
        rows.push(FormSweepRow {
            rank_four: ws,
            cliques: 0,
            forms: forms.len(),
            unexplained: Vec::new(),
            missing: vec![format!("{} assembled forms outside the Dom+ enumeration", forms.len())],
        });
    }
    rows
}

/// Rank-four parts drawn from `U(l*omega)` with `0 <= l <= window`, at most one per
/// orbit, pairwise rigid, using `l = 0` at least once.
fn cluster_rank_four_sets(w: Weight, u: &ClusterSubcatDesc, window: i64) -> Vec<Vec<(i64, i64)>> {
    let mut pool: Vec<((i64, i64), i64)> = Vec::new();
    for l in 0..=window {
        for &(i, k) in &u.base {
            let e = shift_omega(w, IndecBundle::ext(i, k), l).ext_pair().unwrap();
            pool.push((e, l));
        }
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    fn rec(
        w: Weight,
        pool: &[((i64, i64), i64)],
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<(i64, i64)>>,
    ) {
        if cur.iter().any(|&n| pool[n].1 == 0) {
            let mut s: Vec<(i64, i64)> = cur.iter().map(|&n| pool[n].0).collect();
            s.sort();
            out.push(s);
        }
        for n in start..pool.len() {
            let (e, _) = pool[n];
            let ok = cur.iter().all(|&m| {
                let f = pool[m].0;
                ext_orbit_key(w, f) != ext_orbit_key(w, e)
                    && rigid_pair(w, IndecBundle::ext(e.0, e.1), IndecBundle::ext(f.0, f.1))
            });
            if ok {
                cur.push(n);
                rec(w, pool, n + 1, cur, out);
                cur.pop();
            }
        }
    }
    rec(w, &pool, 0, &mut cur, &mut out);
    out.sort();
    out.dedup();
    out
}

/// Every rigid collection of `5p+7` summands inside `u` up to degree shift, with its
/// verdict: line-only collections anchored at `O(0)`, and collections whose
/// rank-four part comes from `U(l*omega)` for `0 <= l <= window`.
pub fn exhaustive_search(w: Weight, u: &ClusterSubcatDesc, window: i64, cap: i64) -> Result<Vec<SearchRecord>, Error> {
    if w.p() > cap {
        return Err(Error::CapExceeded { p: w.p(), cap });
    }
    let mut found: Vec<BundleCollection> = line_only_cliques(w);
    for ws in cluster_rank_four_sets(w, u, window) {
        found.extend(line_completions(w, &ws));
    }
    found.sort_by(|a, b| a.members().cmp(b.members()));
    found.dedup();
    let mut out = Vec::new();
    for c in found {
        let verdict = classify(&c, u)?;
        let witnesses = match &verdict {
            ClassVerdict::NotTilting { .. } => c.rank_four().iter().map(|e| format!("<{},{}>", e.0, e.1)).collect(),
            _ => Vec::new(),
        };
        out.push(SearchRecord {
            collection: c.to_json(),
            verdict,
            witnesses,
        });
    }
    Ok(out)
}

/// Degree shift of every summand by `y`.
pub fn translate_collection(c: &BundleCollection, y: GradedDegree) -> BundleCollection {
    BundleCollection::new(c.weight(), c.iter().map(|b| shift(b, y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::parse_degree;

    fn canonical(w: Weight) -> BundleCollection {
        BundleCollection::new(
            w,
            interval_elements(w.zero(), w.c().scale(2)).into_iter().map(IndecBundle::Line),
        )
    }

    #[test]
    fn orbit_keys() {
        for p in 2..=6 {
            let w = Weight::new(p).unwrap();
            for i in 0..=p - 2 {
                for k in -4..4 {
                    let e = IndecBundle::ext(i, k);
                    let key = orbit_key(w, e);
                    for l in -3..=3 {
                        assert_eq!(orbit_key(w, shift_omega(w, e, l)), key);
                    }
                    assert_ne!(orbit_key(w, IndecBundle::ext(i, k + 1)), key);
                }
            }
            let x = parse_degree(w, "x13bar-2x4").unwrap();
            for l in -3..=3 {
                assert_eq!(line_orbit_key(x + w.omega().scale(l)), line_orbit_key(x));
            }
            let keys: BTreeSet<_> = TwistClass::ALL
                .into_iter()
                .flat_map(|g| (0..p + 2).map(move |m| line_orbit_key(w.twist(g) + w.x4(m))))
                .collect();
            assert_eq!(keys.len() as i64, 4 * (p + 2));
        }
    }

    #[test]
    fn canonical_detection() {
        let w = Weight::new(3).unwrap();
        let c = canonical(w);
        assert_eq!(c.len(), 22);
        assert_eq!(is_canonical(&c), Some(w.zero()));
        let t = translate_collection(&c, w.omega());
        assert_eq!(is_canonical(&t), Some(w.omega()));
        let u = ClusterSubcatDesc::standard(w);
        assert!(!is_slice(&c, &u).unwrap());
        assert_eq!(classify(&c, &u).unwrap(), ClassVerdict::Canonical { shift: w.zero() });
        assert!(validate_form(&c).is_none());
    }

    #[test]
    fn slices_from_full_forms() {
        for p in 2..=5 {
            let w = Weight::new(p).unwrap();
            let u = ClusterSubcatDesc::standard(w);
            let form = TiltingForm::with_default_twists(
                w,
                0,
                p - 2,
                vec![0; (p - 1) as usize],
                None,
                None,
                BTreeSet::new(),
            )
            .unwrap();
            let c = assemble(w, &form).unwrap();
            assert!(is_slice(&c, &u).unwrap(), "p={p}");
            assert!(is_slice_wide(&c, &u, 10).unwrap());
            assert_eq!(classify(&c, &u).unwrap(), ClassVerdict::Slice);
        }
    }

    #[test]
    fn same_orbit_pair_is_rejected() {
        let w = Weight::new(4).unwrap();
        let u = ClusterSubcatDesc::standard(w);
        let e = IndecBundle::ext(1, 0);
        let c = BundleCollection::new(w, [e, shift_omega(w, e, 1)]);
        match classify(&c, &u).unwrap() {
            ClassVerdict::NotTilting { reason } => assert!(reason.contains("one omega-orbit"), "{reason}"),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn line_only_search_p2() {
        let w = Weight::new(2).unwrap();
        let found = line_only_cliques(w);
        assert_eq!(found, vec![canonical(w)]);
    }

    #[test]
    fn dom_plus_sets_small() {
        let w = Weight::new(3).unwrap();
        let sets = normalized_dom_plus_sets(w);
        assert!(sets.contains(&vec![(0, 0)]));
        assert!(sets.contains(&vec![(0, 0), (1, 0)]));
        assert!(sets.contains(&vec![(0, 0), (1, -1)]));
        assert!(!sets.iter().any(|s| s.contains(&(1, 1)) && s.len() == 2));
    }
}
