//! Worked examples written out by hand, used by `verify` and the test suites.

use std::collections::BTreeSet;

use crate::bundle::IndecBundle;
use crate::error::Error;
use crate::lattice::{TwistClass, Weight};
use crate::symbolic::{parse_bundle, parse_degree};
use crate::tilting::{BundleCollection, TiltingForm};

/// Expands a line label to its four twists `x + g`, `g` in G.
pub fn with_twists(w: Weight, label: &str) -> Result<Vec<IndecBundle>, Error> {
    let x = parse_degree(w, label)?;
    Ok(TwistClass::ALL
        .into_iter()
        .map(|g| IndecBundle::Line(x + w.twist(g)))
        .collect())
}

pub fn bundles(w: Weight, labels: &[&str]) -> Result<BTreeSet<IndecBundle>, Error> {
    labels.iter().map(|s| parse_bundle(w, s)).collect()
}

/// A rigid domain split into its `Dom+` and `Dom-` parts. Line labels stand for
/// all four twists.
pub struct DomainPicture {
    pub p: i64,
    pub e: (i64, i64),
    pub plus_ext: &'static [&'static str],
    pub plus_lines: &'static [&'static str],
    pub minus_ext: &'static [&'static str],
    pub minus_lines: &'static [&'static str],
}

/// The domain of `<1,0>` at p = 4.
pub const DOMAIN_P4: DomainPicture = DomainPicture {
    p: 4,
    e: (1, 0),
    plus_ext: &["<0,0>", "<0,1>", "<1,0>", "<2,-1>", "<2,0>"],
    plus_lines: &["w", "w+x4", "w+2x4", "-3x4", "-2x4", "-x4"],
    minus_ext: &["<2,-3>", "<0,-2>", "<2,2>", "<0,3>"],
    minus_lines: &["-c-x4", "-c", "w-2x4", "w-x4", "0", "x4", "w+3x4", "w+c"],
};

impl DomainPicture {
    pub fn expand(&self) -> Result<(BTreeSet<IndecBundle>, BTreeSet<IndecBundle>), Error> {
        let w = Weight::new(self.p)?;
        let mut plus = bundles(w, self.plus_ext)?;
        for l in self.plus_lines {
            plus.extend(with_twists(w, l)?);
        }
        let mut minus = bundles(w, self.minus_ext)?;
        for l in self.minus_lines {
            minus.extend(with_twists(w, l)?);
        }
        Ok((plus, minus))
    }
}

/// One rank-four bundle with both roofs at p = 4.
pub const SINGLE_P4_LEFT_ROOF: (&str, &str) = ("-c-x4", "x4");
pub const SINGLE_P4_RIGHT_ROOF: (&str, &str) = ("w-2x4", "w+c");

/// `<1,0>` with the left roof twisted by `x1-x2` and the untwisted right roof, p = 4.
pub fn single_p4_form() -> TiltingForm {
    TiltingForm {
        i: 1,
        j: 1,
        k: vec![0],
        g: TwistClass::G12,
        h: TwistClass::E,
        upset: BTreeSet::new(),
    }
}

/// Summands of the p = 5 example with rank-four part `<1,0> + <2,0>`.
pub const TWO_LEVEL_P5_EXT: &[&str] = &["<1,0>", "<2,0>"];
pub const TWO_LEVEL_P5_ROOF_LINES: &[&str] = &[
    "-x1-x2-x4", "-x1-x2", "x12bar-4x4", "x23bar-3x4", "x13bar-3x4", "x12bar-3x4",
    "x23bar-2x4", "x13bar-2x4", "x12bar-2x4", "x23bar-x4", "x13bar-x4", "x12bar-x4",
    "x12bar", "x12bar+x4", "w-2x4", "w-x4", "-x2-x4", "-x1-x4", "w", "-x2", "-x1",
    "w+x4", "-x2+x4", "-x1+x4", "w+2x4", "w+3x4", "w+4x4", "w+c",
];
pub const TWO_LEVEL_P5_S_LINES: &[&str] = &["x13bar-4x4", "-x1+2x4"];

pub fn two_level_p5_form(w: Weight) -> Result<TiltingForm, Error> {
    Ok(TiltingForm {
        i: 1,
        j: 2,
        k: vec![0, 0],
        g: TwistClass::G12,
        h: TwistClass::E,
        upset: BTreeSet::from([parse_degree(w, "x13bar-4x4")?]),
    })
}

pub fn two_level_p5_collection() -> Result<BundleCollection, Error> {
    let w = Weight::new(5)?;
    let mut m = bundles(w, TWO_LEVEL_P5_EXT)?;
    m.extend(bundles(w, TWO_LEVEL_P5_ROOF_LINES)?);
    m.extend(bundles(w, TWO_LEVEL_P5_S_LINES)?);
    Ok(BundleCollection::new(w, m))
}

/// A p = 5 tilting bundle whose rank-four part `<3,-2> + <1,0> + <3,0>` is not
/// contained in any subcategory `add{U(l*omega), O(x)}` with a hereditary `U`.
pub const OFF_SLICE_P5_EXT: &[&str] = &["<3,-2>", "<1,0>", "<3,0>"];
pub const OFF_SLICE_P5_LEFT_ROOF: &[&str] = &[
    "-x1-x2-x4", "-x1-x2", "x12bar-4x4", "x12bar-3x4", "x12bar-2x4", "x12bar-x4",
    "x12bar", "x12bar+x4", "-x2-x4", "-x1-x4", "w", "-x2", "-x1", "w+x4", "-x2+x4",
    "-x1+x4", "w+2x4",
];
pub const OFF_SLICE_P5_S: &[&str] = &[
    "-4x4", "x23bar-4x4", "x13bar-4x4", "-3x4", "x23bar-3x4", "x13bar-3x4", "-2x4",
    "x23bar-2x4", "x13bar-2x4", "-x4", "x23bar-x4", "x13bar-x4",
];

pub fn off_slice_p5_collection() -> Result<BundleCollection, Error> {
    let w = Weight::new(5)?;
    let mut m = bundles(w, OFF_SLICE_P5_EXT)?;
    m.extend(bundles(w, OFF_SLICE_P5_LEFT_ROOF)?);
    m.extend(bundles(w, OFF_SLICE_P5_S)?);
    Ok(BundleCollection::new(w, m))
}

/// Gabriel quiver of the endomorphism algebra of the p = 4 single-bundle form.
pub const SINGLE_P4_QUIVER: &[(&str, &str)] = &[
    ("x12bar-3x4", "x12bar-2x4"),
    ("x12bar-3x4", "<1,0>"),
    ("x12bar-2x4", "x12bar-x4"),
    ("x12bar-x4", "w+c"),
    ("x12bar-x4", "x12bar"),
    ("-x1-x2", "x12bar-3x4"),
    ("x13bar-3x4", "<1,0>"),
    ("x13bar-3x4", "x13bar-2x4"),
    ("x13bar-2x4", "x13bar-x4"),
    ("x13bar-x4", "w+c"),
    ("x12bar", "x12bar+x4"),
    ("-x1-x2-x4", "-x2-x4"),
    ("-x1-x2-x4", "-x1-x4"),
    ("-x1-x2-x4", "w"),
    ("-x1-x2-x4", "-x1-x2"),
    ("x23bar-3x4", "<1,0>"),
    ("x23bar-3x4", "x23bar-2x4"),
    ("x23bar-2x4", "x23bar-x4"),
    ("x23bar-x4", "w+c"),
    ("<1,0>", "x12bar-x4"),
    ("<1,0>", "x13bar-x4"),
    ("<1,0>", "x23bar-x4"),
    ("<1,0>", "w+2x4"),
    ("<1,0>", "-x1+x4"),
    ("<1,0>", "-x2+x4"),
    ("w-2x4", "x23bar-3x4"),
    ("w-2x4", "x13bar-3x4"),
    ("w-2x4", "x12bar-3x4"),
    ("w-2x4", "w-x4"),
    ("-x2-x4", "<1,0>"),
    ("-x2-x4", "-x2"),
    ("-x2", "-x2+x4"),
    ("-x2+x4", "x12bar+x4"),
    ("w-x4", "w"),
    ("-x1-x4", "<1,0>"),
    ("-x1-x4", "-x1"),
    ("-x1", "-x1+x4"),
    ("-x1+x4", "x12bar+x4"),
    ("w+3x4", "w+c"),
    ("w", "<1,0>"),
    ("w", "w+x4"),
    ("w+x4", "w+2x4"),
    ("w+2x4", "x12bar+x4"),
    ("w+2x4", "w+3x4"),
];

/// Irreducible maps between summands of the same bundle that the hand-drawn
/// quiver above leaves out. Each is a single monomial with no summand in between.
pub const SINGLE_P4_UNDRAWN: &[(&str, &str)] = &[
    ("w-x4", "x12bar-2x4"),
    ("w-x4", "x13bar-2x4"),
    ("w-x4", "x23bar-2x4"),
    ("-x1-x2", "w+x4"),
    ("-x1-x2", "w+x13bar+x4"),
    ("-x1-x2", "w+x23bar+x4"),
    ("w+x4", "x12bar"),
    ("w+x13bar+x4", "x12bar"),
    ("w+x23bar+x4", "x12bar"),
    ("x12bar-2x4", "w+3x4"),
    ("x13bar-2x4", "w+3x4"),
    ("x23bar-2x4", "w+3x4"),
];

pub fn pairs(w: Weight, list: &[(&str, &str)]) -> Result<Vec<(IndecBundle, IndecBundle)>, Error> {
    let mut out = list
        .iter()
        .map(|(a, b)| Ok((parse_bundle(w, a)?, parse_bundle(w, b)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    out.sort();
    Ok(out)
}

/// The quiver above as sorted `(src, dst)` pairs, one per arrow.
pub fn single_p4_quiver() -> Result<Vec<(IndecBundle, IndecBundle)>, Error> {
    pairs(Weight::new(4)?, SINGLE_P4_QUIVER)
}
