//! Hom and Ext between line bundles, Grothendieck group classes and the Euler form.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bundle::IndecBundle;
use crate::lattice::{dim_graded_piece, GradedDegree, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExtTriple {
    pub hom: u64,
    pub ext1: u64,
    pub ext2: u64,
}

/// `Ext^i(O(x), O(y))`: `R_{y-x}` for i = 0, zero for i = 1, `D R_{x-y+omega}` for i = 2.
pub fn line_ext_dims(x: GradedDegree, y: GradedDegree) -> ExtTriple {
    let w = x.weight();
    ExtTriple {
        hom: dim_graded_piece(y - x),
        ext1: 0,
        ext2: dim_graded_piece(x - y + w.omega()),
    }
}

/// `O(x) + O(y)` is rigid iff `-2c <= y-x <= 2c`.
pub fn rigid_lines(x: GradedDegree, y: GradedDegree) -> bool {
    let two_c = x.weight().c().scale(2);
    let d = y - x;
    (-two_c).le(d) && d.le(two_c)
}

/// A formal integer combination of line bundle classes `[O(x)]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct K0Class {
    terms: BTreeMap<GradedDegree, i64>,
}

impl K0Class {
    pub fn line(x: GradedDegree) -> Self {
        let mut c = K0Class::default();
        c.add_term(x, 1);
        c
    }

    pub fn add_term(&mut self, x: GradedDegree, coef: i64) {
        let e = self.terms.entry(x).or_insert(0);
        *e += coef;
        if *e == 0 {
            self.terms.remove(&x);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (GradedDegree, i64)> + '_ {
        self.terms.iter().map(|(&x, &n)| (x, n))
    }

    pub fn rank(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn translate(&self, y: GradedDegree) -> Self {
        K0Class {
            terms: self.terms.iter().map(|(&x, &n)| (x + y, n)).collect(),
        }
    }
}

impl Serialize for K0Class {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter())
    }
}

/// Class of an indecomposable bundle. For `<i,k>` with `L = O(k*x4)` and `x = i*x4`
/// the four-term sequence `0 -> L(omega) -> E -> L<x> -> L(x) -> 0` gives
/// `[L(omega)] + sum_{j<=3} [L(x-x_j)] + [L(-x4)] - [L(x)]`.
pub fn k0_class(w: Weight, b: IndecBundle) -> K0Class {
    match b {
        IndecBundle::Line(x) => K0Class::line(x),
        IndecBundle::Ext2 { i, k } => {
            let l = w.x4(k);
            let x = w.x4(i);
            let mut c = K0Class::default();
            c.add_term(l + w.omega(), 1);
            for j in 1..=3 {
                c.add_term(l + x - w.x(j), 1);
            }
            c.add_term(l - w.x4(1), 1);
            c.add_term(l + x, -1);
            c
        }
    }
}

fn chi_lines(x: GradedDegree, y: GradedDegree) -> i64 {
    let t = line_ext_dims(x, y);
    t.hom as i64 - t.ext1 as i64 + t.ext2 as i64
}

pub fn euler_form(a: &K0Class, b: &K0Class) -> i64 {
    let mut total = 0;
    for (x, m) in a.terms() {
        for (y, n) in b.terms() {
            total += m * n * chi_lines(x, y);
        }
    }
    total
}

/// `chi(a, b)`; equals `dim Hom(a, b)` when `a + b` is rigid.
pub fn euler(w: Weight, a: IndecBundle, b: IndecBundle) -> i64 {
    euler_form(&k0_class(w, a), &k0_class(w, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::shift;

    #[test]
    fn ext_dims() {
        let w = Weight::new(4).unwrap();
        let o = w.zero();
        let t = line_ext_dims(o, w.x4(1));
        assert_eq!((t.hom, t.ext1, t.ext2), (1, 0, 0));
        let t = line_ext_dims(o, o);
        assert_eq!((t.hom, t.ext1, t.ext2), (1, 0, 0));
        let t = line_ext_dims(o, w.omega().scale(3));
        assert_eq!(t.ext2, dim_graded_piece(w.c() + w.x4(2)));
        assert!(t.ext2 > 0);
    }

    #[test]
    fn line_rigidity() {
        let w = Weight::new(3).unwrap();
        let two_c = w.c().scale(2);
        assert!(rigid_lines(w.zero(), two_c));
        assert!(!rigid_lines(w.zero(), two_c + w.x4(1)));
    }

    #[test]
    fn classes() {
        let w = Weight::new(5).unwrap();
        let e = IndecBundle::ext(0, 0);
        let cls = k0_class(w, e);
        assert_eq!(cls.rank(), 4);
        assert_eq!(cls.terms().filter(|&(_, n)| n > 0).count(), 5);
        assert_eq!(cls.terms().filter(|&(_, n)| n < 0).count(), 1);
        // equal in K0: compare Euler pairings against a window of line bundles
        let y = w.x(2) + w.x4(3);
        let (lhs, rhs) = (k0_class(w, shift(e, y)), cls.translate(y));
        for z in crate::lattice::interval_elements(-w.c().scale(2), w.c().scale(2)) {
            let probe = K0Class::line(z);
            assert_eq!(euler_form(&lhs, &probe), euler_form(&rhs, &probe));
            assert_eq!(euler_form(&probe, &lhs), euler_form(&probe, &rhs));
        }
        assert_eq!(euler(w, IndecBundle::Line(w.zero()), IndecBundle::Line(w.zero())), 1);
        for i in 0..=3 {
            for k in -2..=2 {
                let e = IndecBundle::ext(i, k);
                assert_eq!(k0_class(w, e).rank(), 4);
                assert_eq!(euler(w, e, e), 1, "<{i},{k}> is exceptional");
            }
        }
    }
}
