//! Indecomposable ACM bundles: line bundles `O(x)` and the rank-four bundles `<i,k>`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::lattice::{line_canonical_coord, Branch, GradedDegree, TwistClass, Weight};

/// `Line(x)` is `O(x)`; `Ext2 { i, k }` is the 2-extension bundle `E<i*x4>(k*x4)`,
/// written `<i,k>`, with `0 <= i <= p-2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IndecBundle {
    Ext2 { i: i64, k: i64 },
    Line(GradedDegree),
}

impl IndecBundle {
    pub fn ext(i: i64, k: i64) -> Self {
        IndecBundle::Ext2 { i, k }
    }

    pub fn rank(self) -> u32 {
        match self {
            IndecBundle::Line(_) => 1,
            IndecBundle::Ext2 { .. } => 4,
        }
    }

    pub fn is_line(self) -> bool {
        matches!(self, IndecBundle::Line(_))
    }

    pub fn line_degree(self) -> Option<GradedDegree> {
        match self {
            IndecBundle::Line(x) => Some(x),
            IndecBundle::Ext2 { .. } => None,
        }
    }

    pub fn ext_pair(self) -> Option<(i64, i64)> {
        match self {
            IndecBundle::Ext2 { i, k } => Some((i, k)),
            IndecBundle::Line(_) => None,
        }
    }

    pub fn validate(self, w: Weight) -> Result<Self, Error> {
        match self {
            IndecBundle::Ext2 { i, .. } if !(0..=w.p() - 2).contains(&i) => Err(Error::InvalidBundle(
                format!("level {i} outside [0, {}]", w.p() - 2),
            )),
            IndecBundle::Line(x) if x.weight() != w => {
                Err(Error::InvalidBundle(format!("degree {x} has the wrong weight")))
            }
            b => Ok(b),
        }
    }

    pub fn to_json(self) -> serde_json::Value {
        serde_json::to_value(BundleWire::from(self)).expect("bundle serializes")
    }

    pub fn from_json(w: Weight, v: &serde_json::Value) -> Result<Self, Error> {
        let wire: BundleWire = serde_json::from_value(v.clone())?;
        let b = match wire {
            BundleWire::Line { x } => IndecBundle::Line(w.from_normal_form(x)?),
            BundleWire::Ext { i, k } => IndecBundle::Ext2 { i, k },
        };
        b.validate(w)
    }
}

impl fmt::Display for IndecBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndecBundle::Line(x) => write!(f, "O({x})"),
            IndecBundle::Ext2 { i, k } => write!(f, "<{i},{k}>"),
        }
    }
}

impl Serialize for IndecBundle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        BundleWire::from(*self).serialize(s)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum BundleWire {
    Line { x: [i64; 5] },
    Ext { i: i64, k: i64 },
}

impl From<IndecBundle> for BundleWire {
    fn from(b: IndecBundle) -> Self {
        match b {
            IndecBundle::Line(x) => BundleWire::Line { x: x.normal_form() },
            IndecBundle::Ext2 { i, k } => BundleWire::Ext { i, k },
        }
    }
}

/// Extended coordinate `<level, offset>_twist` with `level in [-1, p-1]`.
///
/// Levels `0..=p-2` are rank-four bundles (twist normalized to `e`), level `-1`
/// is `O(omega + offset*x4 + twist)` and level `p-1` is `O((offset-1)*x4 + twist)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ExtCoord {
    pub level: i64,
    pub offset: i64,
    #[serde(rename = "g")]
    pub twist: TwistClass,
}

impl ExtCoord {
    pub fn of(w: Weight, b: IndecBundle) -> Self {
        match b {
            IndecBundle::Ext2 { i, k } => ExtCoord {
                level: i,
                offset: k,
                twist: TwistClass::E,
            },
            IndecBundle::Line(x) => {
                let lc = line_canonical_coord(x);
                match lc.branch {
                    Branch::Top => ExtCoord {
                        level: w.p() - 1,
                        offset: lc.m + 1,
                        twist: lc.twist,
                    },
                    Branch::Bottom => ExtCoord {
                        level: -1,
                        offset: lc.m,
                        twist: lc.twist,
                    },
                }
            }
        }
    }

    pub fn to_bundle(self, w: Weight) -> IndecBundle {
        let p = w.p();
        if self.level == -1 {
            IndecBundle::Line(w.omega() + w.x4(self.offset) + w.twist(self.twist))
        } else if self.level == p - 1 {
            IndecBundle::Line(w.x4(self.offset - 1) + w.twist(self.twist))
        } else {
            assert!((0..p - 1).contains(&self.level), "level {} out of range", self.level);
            IndecBundle::Ext2 {
                i: self.level,
                k: self.offset,
            }
        }
    }
}

/// Degree shift `b(y)`.
pub fn shift(b: IndecBundle, y: GradedDegree) -> IndecBundle {
    match b {
        IndecBundle::Line(x) => IndecBundle::Line(x + y),
        IndecBundle::Ext2 { mut i, mut k } => {
            let p = y.weight().p();
            let nf = y.normal_form();
            for &lam in &nf[..3] {
                if lam == 1 {
                    // shift by x_j (j <= 3) is the suspension
                    (i, k) = (p - 2 - i, i + k + 1);
                }
            }
            k += nf[3] + p * nf[4];
            IndecBundle::Ext2 { i, k }
        }
    }
}

fn expect_ext(b: IndecBundle) -> Result<(i64, i64), Error> {
    b.ext_pair()
        .ok_or_else(|| Error::InvalidBundle(format!("{b} is a line bundle; its shift leaves ACM bundles")))
}

/// Suspension `[1]` in the stable category: `<i,k> -> <p-2-i, i+k+1>`.
pub fn suspend(w: Weight, b: IndecBundle) -> Result<IndecBundle, Error> {
    let (i, k) = expect_ext(b)?;
    Ok(IndecBundle::ext(w.p() - 2 - i, i + k + 1))
}

/// Desuspension `[-1]`.
pub fn desuspend(w: Weight, b: IndecBundle) -> Result<IndecBundle, Error> {
    let (i, k) = expect_ext(b)?;
    let i0 = w.p() - 2 - i;
    Ok(IndecBundle::ext(i0, k - i0 - 1))
}

/// Auslander-Reiten translate `<i,k> -> <i,k-1>`.
pub fn tau(b: IndecBundle) -> Result<IndecBundle, Error> {
    let (i, k) = expect_ext(b)?;
    Ok(IndecBundle::ext(i, k - 1))
}

/// Shift by `n * omega`.
pub fn shift_omega(w: Weight, b: IndecBundle, n: i64) -> IndecBundle {
    shift(b, w.omega().scale(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_rules() {
        for p in 2..=6 {
            let w = Weight::new(p).unwrap();
            for i in 0..=p - 2 {
                for k in -3..=3 {
                    let e = IndecBundle::ext(i, k);
                    assert_eq!(shift(e, w.omega()), IndecBundle::ext(p - 2 - i, i + k - p));
                    assert_eq!(shift(e, w.twist(TwistClass::G12)), e);
                    assert_eq!(shift(shift(e, w.x(1)), w.x(1)), IndecBundle::ext(i, k + p));
                    assert_eq!(shift(e, w.c()), IndecBundle::ext(i, k + p));
                    let s = suspend(w, e).unwrap();
                    assert_eq!(desuspend(w, s).unwrap(), e);
                    assert_eq!(suspend(w, s).unwrap(), shift(e, w.c()));
                    // tau = (omega) then [1]
                    assert_eq!(tau(e).unwrap(), suspend(w, shift(e, w.omega())).unwrap());
                    assert_eq!(shift_omega(w, shift_omega(w, e, 1), -1), e);
                }
            }
        }
        let w4 = Weight::new(4).unwrap();
        assert_eq!(suspend(w4, IndecBundle::ext(1, -2)).unwrap(), IndecBundle::ext(1, 0));
        assert!(suspend(w4, IndecBundle::Line(w4.zero())).is_err());
    }

    #[test]
    fn ext_coords_round_trip() {
        let w = Weight::new(4).unwrap();
        let o = ExtCoord::of(w, IndecBundle::Line(w.omega()));
        assert_eq!((o.level, o.offset), (-1, 0));
        let z = ExtCoord::of(w, IndecBundle::Line(w.zero()));
        assert_eq!((z.level, z.offset), (3, 1));
        let mx4 = ExtCoord::of(w, IndecBundle::Line(w.x4(-1)));
        assert_eq!((mx4.level, mx4.offset), (3, 0));
        for level in -1..=3 {
            for offset in -5..=5 {
                for twist in TwistClass::ALL {
                    let c = ExtCoord { level, offset, twist };
                    let b = c.to_bundle(w);
                    let back = ExtCoord::of(w, b);
                    if (0..=2).contains(&level) {
                        assert_eq!((back.level, back.offset), (level, offset));
                    } else {
                        assert_eq!(back, c);
                    }
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let w = Weight::new(5).unwrap();
        for b in [IndecBundle::ext(2, -3), IndecBundle::Line(w.omega() + w.x(2))] {
            let v = b.to_json();
            assert_eq!(IndecBundle::from_json(w, &v).unwrap(), b);
        }
        assert_eq!(
            IndecBundle::ext(1, 0).to_json().to_string(),
            r#"{"type":"ext","i":1,"k":0}"#
        );
        let bad = serde_json::json!({"type": "ext", "i": 4, "k": 0});
        assert!(IndecBundle::from_json(w, &bad).is_err());
        let bad_line = serde_json::json!({"type": "line", "x": [2, 0, 0, 0, 0]});
        assert!(IndecBundle::from_json(w, &bad_line).is_err());
    }
}
