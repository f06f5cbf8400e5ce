//! The grading group L of weight type (2,2,2,p).
//!
//! L is generated by x1, x2, x3, x4 and c subject to 2x1 = 2x2 = 2x3 = p*x4 = c.
//! Every element has a unique normal form
//! `lam1*x1 + lam2*x2 + lam3*x3 + lam4*x4 + ell*c` with `lam1..lam3 in {0,1}`
//! and `0 <= lam4 < p`, and that normal form is the only representation used.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::error::Error;

/// The fourth weight `p` of the type (2,2,2,p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    p: i64,
}

impl Weight {
    pub fn new(p: i64) -> Result<Self, Error> {
        if p < 2 {
            return Err(Error::InvalidWeight(p));
        }
        Ok(Weight { p })
    }

    pub fn p(self) -> i64 {
        self.p
    }

    /// Normal form of `a1*x1 + a2*x2 + a3*x3 + a4*x4 + ac*c`.
    pub fn normalize(self, raw: [i64; 5]) -> GradedDegree {
        let mut ell = raw[4];
        let mut lam = [0u8; 3];
        for (slot, &a) in lam.iter_mut().zip(&raw[..3]) {
            ell += a.div_euclid(2);
            *slot = a.rem_euclid(2) as u8;
        }
        ell += raw[3].div_euclid(self.p);
        GradedDegree {
            p: self.p,
            lam,
            lam4: raw[3].rem_euclid(self.p),
            ell,
        }
    }

    pub fn zero(self) -> GradedDegree {
        self.normalize([0; 5])
    }

    /// The generator `x_i` for `i` in 1..=4.
    pub fn x(self, i: usize) -> GradedDegree {
        assert!((1..=4).contains(&i), "generator index {i} out of range");
        let mut raw = [0; 5];
        raw[i - 1] = 1;
        self.normalize(raw)
    }

    pub fn c(self) -> GradedDegree {
        self.normalize([0, 0, 0, 0, 1])
    }

    /// The dualizing element `c - x1 - x2 - x3 - x4`.
    pub fn omega(self) -> GradedDegree {
        self.normalize([-1, -1, -1, -1, 1])
    }

    /// `m * x4`.
    pub fn x4(self, m: i64) -> GradedDegree {
        self.normalize([0, 0, 0, m, 0])
    }

    /// `c - x_a - x_b`, which coincides with the twist `x_a - x_b`.
    pub fn xbar(self, a: usize, b: usize) -> GradedDegree {
        self.c() - self.x(a) - self.x(b)
    }

    pub fn twist(self, g: TwistClass) -> GradedDegree {
        match g {
            TwistClass::E => self.zero(),
            TwistClass::G12 => self.x(1) - self.x(2),
            TwistClass::G13 => self.x(1) - self.x(3),
            TwistClass::G23 => self.x(2) - self.x(3),
        }
    }

    /// Rebuilds a degree from a serialized normal form, rejecting entries out of range.
    pub fn from_normal_form(self, nf: [i64; 5]) -> Result<GradedDegree, Error> {
        let in_range = nf[..3].iter().all(|&l| l == 0 || l == 1) && (0..self.p).contains(&nf[3]);
        if !in_range {
            return Err(Error::InvalidDegree(format!(
                "{nf:?} is not a normal form for p = {}",
                self.p
            )));
        }
        Ok(self.normalize(nf))
    }

    /// Inverse of [`line_canonical_coord`].
    pub fn from_line_coord(self, coord: LineCoord) -> GradedDegree {
        let base = self.twist(coord.twist) + self.x4(coord.m);
        match coord.branch {
            Branch::Top => base,
            Branch::Bottom => base + self.omega(),
        }
    }
}

/// An element of L in normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GradedDegree {
    p: i64,
    lam: [u8; 3],
    lam4: i64,
    ell: i64,
}

impl GradedDegree {
    pub fn weight(self) -> Weight {
        Weight { p: self.p }
    }

    /// `[lam1, lam2, lam3, lam4, ell]`.
    pub fn normal_form(self) -> [i64; 5] {
        [
            self.lam[0] as i64,
            self.lam[1] as i64,
            self.lam[2] as i64,
            self.lam4,
            self.ell,
        ]
    }

    pub fn lam(self, i: usize) -> i64 {
        match i {
            1..=3 => self.lam[i - 1] as i64,
            4 => self.lam4,
            _ => panic!("coefficient index {i} out of range"),
        }
    }

    pub fn ell(self) -> i64 {
        self.ell
    }

    /// `x >= 0`, i.e. `R_x != 0`.
    pub fn is_effective(self) -> bool {
        self.ell >= 0
    }

    pub fn scale(self, n: i64) -> GradedDegree {
        let nf = self.normal_form();
        self.weight().normalize(nf.map(|a| a * n))
    }

    /// `self <= other` in the partial order given by the effective cone.
    pub fn le(self, other: GradedDegree) -> bool {
        // ell of other - self, read off the borrows of the componentwise difference
        let borrows = (0..3).filter(|&n| other.lam[n] < self.lam[n]).count() as i64
            + (other.lam4 < self.lam4) as i64;
        other.ell - self.ell - borrows >= 0
    }

    pub fn compare(self, other: GradedDegree) -> Comparison {
        match (self.le(other), other.le(self)) {
            (true, true) => Comparison::Both,
            (true, false) => Comparison::LessEq,
            (false, true) => Comparison::GreaterEq,
            (false, false) => Comparison::Incomparable,
        }
    }

    /// Exactly one of `x >= 0` and `x <= omega + 2c` holds.
    pub fn dichotomy(self) -> Dichotomy {
        if self.is_effective() {
            Dichotomy::Effective
        } else {
            Dichotomy::BelowOmegaPlus2c
        }
    }
}

impl Add for GradedDegree {
    type Output = GradedDegree;
    fn add(self, rhs: GradedDegree) -> GradedDegree {
        assert_eq!(self.p, rhs.p, "degrees of different weights");
        let a = self.normal_form();
        let b = rhs.normal_form();
        self.weight().normalize(std::array::from_fn(|i| a[i] + b[i]))
    }
}

impl Neg for GradedDegree {
    type Output = GradedDegree;
    fn neg(self) -> GradedDegree {
        self.scale(-1)
    }
}

impl Sub for GradedDegree {
    type Output = GradedDegree;
    fn sub(self, rhs: GradedDegree) -> GradedDegree {
        assert_eq!(self.p, rhs.p, "degrees of different weights");
        let a = self.normal_form();
        let b = rhs.normal_form();
        self.weight().normalize(std::array::from_fn(|i| a[i] - b[i]))
    }
}

/// Canonical total order `(ell, lam4, lam1, lam2, lam3)`. It refines the partial order.
impl Ord for GradedDegree {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ell, self.lam4, self.lam, self.p).cmp(&(other.ell, other.lam4, other.lam, other.p))
    }
}

impl PartialOrd for GradedDegree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for GradedDegree {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.normal_form().serialize(s)
    }
}

/// Prints the normal form as a sum, e.g. `x1+x3+2x4-c`.
impl fmt::Display for GradedDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(i64, &str)> = Vec::new();
        for (i, name) in ["x1", "x2", "x3"].iter().enumerate() {
            if self.lam[i] == 1 {
                terms.push((1, name));
            }
        }
        if self.lam4 != 0 {
            terms.push((self.lam4, "x4"));
        }
        if self.ell != 0 {
            terms.push((self.ell, "c"));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (coef, name)) in terms.into_iter().enumerate() {
            let sign = if coef < 0 { "-" } else if n > 0 { "+" } else { "" };
            let mag = coef.abs();
            if mag == 1 {
                write!(f, "{sign}{name}")?;
            } else {
                write!(f, "{sign}{mag}{name}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    LessEq,
    GreaterEq,
    Both,
    Incomparable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dichotomy {
    Effective,
    BelowOmegaPlus2c,
}

/// The subgroup G = {0, x1-x2, x1-x3, x2-x3}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TwistClass {
    E,
    G12,
    G13,
    G23,
}

impl TwistClass {
    pub const ALL: [TwistClass; 4] = [TwistClass::E, TwistClass::G12, TwistClass::G13, TwistClass::G23];

    pub fn name(self) -> &'static str {
        match self {
            TwistClass::E => "e",
            TwistClass::G12 => "g12",
            TwistClass::G13 => "g13",
            TwistClass::G23 => "g23",
        }
    }

    pub fn parse(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "e" | "0" => Ok(TwistClass::E),
            "g12" => Ok(TwistClass::G12),
            "g13" => Ok(TwistClass::G13),
            "g23" => Ok(TwistClass::G23),
            other => Err(Error::InvalidTwist(other.to_string())),
        }
    }

    /// The twist whose `lam1..lam3` pattern matches, if any (even patterns only).
    fn from_lambdas(lam: [u8; 3]) -> Option<Self> {
        match lam {
            [0, 0, 0] => Some(TwistClass::E),
            [1, 1, 0] => Some(TwistClass::G12),
            [1, 0, 1] => Some(TwistClass::G13),
            [0, 1, 1] => Some(TwistClass::G23),
            _ => None,
        }
    }
}

impl fmt::Display for TwistClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for TwistClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    /// `x = g + m*x4`, extended coordinate `<p-1, m+1>_g`.
    Top,
    /// `x = omega + g + m*x4`, extended coordinate `<-1, m>_g`.
    Bottom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LineCoord {
    pub branch: Branch,
    pub twist: TwistClass,
    pub m: i64,
}

/// Writes `x` as `g + m*x4` or `omega + g + m*x4`.
///
/// The parity of `lam1 + lam2 + lam3` picks the branch: G has only even patterns
/// and omega has the odd pattern (1,1,1).
pub fn line_canonical_coord(x: GradedDegree) -> LineCoord {
    let w = x.weight();
    let odd = x.lam.iter().map(|&l| l as u32).sum::<u32>() % 2 == 1;
    let (branch, rest) = if odd {
        (Branch::Bottom, x - w.omega())
    } else {
        (Branch::Top, x)
    };
    let twist = TwistClass::from_lambdas(rest.lam).expect("even pattern lies in G");
    let m_part = rest - w.twist(twist);
    debug_assert_eq!(m_part.lam, [0, 0, 0]);
    LineCoord {
        branch,
        twist,
        m: m_part.lam4 + w.p * m_part.ell,
    }
}

/// `dim_k R_x` for `R = k[X1..X4]/(X1^2+X2^2+X3^2+X4^p)`.
///
/// R is free over `k[X2,X3,X4]` on `{1, X1}`, so a basis of `R_x` is the set of
/// `X1^e1 X2^e2 X3^e3 X4^e4` with `e1 in {0,1}` of degree x. The parities of
/// e1..e4 are fixed by the normal form of x and the remaining freedom is a
/// split of `ell` into three nonnegative parts.
pub fn dim_graded_piece(x: GradedDegree) -> u64 {
    if x.ell < 0 {
        return 0;
    }
    let n = x.ell as u64;
    (n + 2) * (n + 1) / 2
}

/// All `z` with `x <= z <= y`, in canonical order.
pub fn interval_elements(x: GradedDegree, y: GradedDegree) -> Vec<GradedDegree> {
    let w = x.weight();
    let span = y - x;
    if !span.is_effective() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for ell in 0..=span.ell + 3 {
        for lam4 in 0..w.p {
            for bits in 0..8u8 {
                let d = w.normalize([
                    (bits & 1) as i64,
                    ((bits >> 1) & 1) as i64,
                    ((bits >> 2) & 1) as i64,
                    lam4,
                    ell,
                ]);
                if d.le(span) {
                    out.push(x + d);
                }
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(p: i64) -> Weight {
        Weight::new(p).unwrap()
    }

    #[test]
    fn normal_forms() {
        let w4 = w(4);
        assert_eq!(w4.normalize([2, 0, 0, 0, 0]), w4.c());
        assert_eq!(w4.normalize([2, 0, 0, 0, 0]).normal_form(), [0, 0, 0, 0, 1]);
        assert_eq!(w4.zero().normal_form(), [0; 5]);
        assert_eq!(w4.omega().normal_form(), [1, 1, 1, 3, -3]);
        assert_eq!(w(7).omega().normal_form(), [1, 1, 1, 6, -3]);
        assert_eq!(w4.x4(4), w4.c());
    }

    #[test]
    fn group_ops() {
        for p in 2..=6 {
            let w = w(p);
            let om = w.omega();
            assert_eq!(om + om, -w.c() - w.x4(2));
            // -2 omega = c + 2x4, which folds to 2c when p = 2
            let expect = if p == 2 { [0, 0, 0, 0, 2] } else { [0, 0, 0, 2, 1] };
            assert_eq!(om.scale(-2).normal_form(), expect);
            assert_eq!(-w.zero(), w.zero());
            assert_eq!(om - om, w.zero());
        }
    }

    #[test]
    fn comparisons() {
        let w = w(3);
        assert_eq!(w.zero().compare(w.x(4)), Comparison::LessEq);
        assert_eq!(w.x(1).compare(w.x(2)), Comparison::Incomparable);
        assert_eq!(w.x(1).compare(w.x(1)), Comparison::Both);
        assert_eq!(w.omega().dichotomy(), Dichotomy::BelowOmegaPlus2c);
        assert_eq!(w.c().dichotomy(), Dichotomy::Effective);
    }

    #[test]
    fn graded_pieces() {
        let w = w(4);
        assert_eq!(dim_graded_piece(w.zero()), 1);
        assert_eq!(dim_graded_piece(w.c()), 3);
        assert_eq!(dim_graded_piece(w.omega()), 0);
        assert_eq!(dim_graded_piece(w.c() + w.x4(2)), 3);
        assert_eq!(dim_graded_piece(w.c().scale(2)), 6);
    }

    #[test]
    fn intervals() {
        for p in 2..=6 {
            let w = w(p);
            // a roof [x, x+(p+2)x4] has p+12 members; for p = 2 it is [x, x+2c]
            let roof = w.x4(p + 2);
            let roof_len = if p == 2 { 17 } else { p + 12 };
            for base in [w.zero(), w.omega(), w.x(1) - w.x4(3)] {
                assert_eq!(interval_elements(base, base + roof).len() as i64, roof_len);
            }
            assert_eq!(interval_elements(w.zero(), w.c().scale(2)).len() as i64, 5 * p + 7);
            assert_eq!(interval_elements(w.zero(), w.zero()), vec![w.zero()]);
            assert!(interval_elements(w.x(1), w.x(2)).is_empty());
        }
    }

    #[test]
    fn line_coords() {
        let w = w(4);
        let top0 = line_canonical_coord(w.zero());
        assert_eq!((top0.branch, top0.twist, top0.m), (Branch::Top, TwistClass::E, 0));
        let bot = line_canonical_coord(w.omega());
        assert_eq!((bot.branch, bot.twist, bot.m), (Branch::Bottom, TwistClass::E, 0));
        let mx1 = line_canonical_coord(-w.x(1));
        assert_eq!((mx1.branch, mx1.twist, mx1.m), (Branch::Bottom, TwistClass::G23, 1));
        assert_eq!(w.xbar(1, 2), w.twist(TwistClass::G12));
    }

    #[test]
    fn display() {
        let w = w(5);
        assert_eq!(w.zero().to_string(), "0");
        assert_eq!(w.omega().to_string(), "x1+x2+x3+4x4-3c");
        assert_eq!((-w.x(1)).to_string(), "x1-c");
    }
}
