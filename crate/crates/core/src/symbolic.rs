//! Degree and bundle literals.
//!
//! Degrees are sums of integer multiples of `x1 x2 x3 x4 c w` (also `ω`) and of
//! `x12bar x13bar x23bar`, or raw 5-tuples `(a1,a2,a3,a4,ell)` meaning
//! `a1 x1 + a2 x2 + a3 x3 + a4 x4 + ell c`. Bundles are `<i,k>` or `O(degree)`;
//! a bare degree also denotes a line bundle.

use crate::bundle::IndecBundle;
use crate::error::Error;
use crate::lattice::{line_canonical_coord, Branch, GradedDegree, TwistClass, Weight};

fn atom(w: Weight, name: &str) -> Option<GradedDegree> {
    Some(match name {
        "x1" => w.x(1),
        "x2" => w.x(2),
        "x3" => w.x(3),
        "x4" => w.x(4),
        "c" => w.c(),
        "w" | "ω" | "omega" => w.omega(),
        "x12bar" | "xbar12" => w.xbar(1, 2),
        "x13bar" | "xbar13" => w.xbar(1, 3),
        "x23bar" | "xbar23" => w.xbar(2, 3),
        _ => return None,
    })
}

pub fn parse_degree(w: Weight, s: &str) -> Result<GradedDegree, Error> {
    let bad = |why: &str| Error::InvalidDegree(format!("{s:?}: {why}"));
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(bad("empty"));
    }
    if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 5 {
            return Err(bad("a tuple needs five integers"));
        }
        let mut raw = [0i64; 5];
        for (slot, part) in raw.iter_mut().zip(parts) {
            *slot = part.parse().map_err(|_| bad("tuple entries must be integers"))?;
        }
        return Ok(w.normalize(raw));
    }
    let t = t.replace('−', "-");
    let mut total = w.zero();
    let mut rest = t.as_str();
    let mut first = true;
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'+' => (1, &rest[1..]),
            b'-' => (-1, &rest[1..]),
            _ if first => (1, rest),
            _ => return Err(bad("expected + or - between terms")),
        };
        first = false;
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let term = &body[..end];
        rest = &body[end..];
        let digits = term.chars().take_while(char::is_ascii_digit).count();
        let (num, name) = term.split_at(digits);
        let coef: i64 = if num.is_empty() {
            1
        } else {
            num.parse().map_err(|_| bad("coefficient out of range"))?
        };
        let value = if name.is_empty() {
            if coef != 0 {
                return Err(bad("bare integers other than 0 are not degrees"));
            }
            w.zero()
        } else {
            atom(w, name).ok_or_else(|| bad(&format!("unknown symbol {name:?}")))?
        };
        total = total + value.scale(sign * coef);
    }
    Ok(total)
}

/// Splits on commas outside brackets, after stripping one pair of `[...]`.
fn split_list(s: &str) -> Vec<&str> {
    let t = s.trim();
    let t = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')).unwrap_or(t);
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (n, ch) in t.char_indices() {
        match ch {
            '(' | '<' | '⟨' => depth += 1,
            ')' | '>' | '⟩' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&t[start..n]);
                start = n + 1;
            }
            _ => {}
        }
    }
    out.push(&t[start..]);
    out.into_iter().map(str::trim).filter(|x| !x.is_empty()).collect()
}

/// `[d1, d2, ...]`; the brackets are optional and `[]` is the empty list.
pub fn parse_degree_list(w: Weight, s: &str) -> Result<Vec<GradedDegree>, Error> {
    split_list(s).into_iter().map(|d| parse_degree(w, d)).collect()
}

pub fn parse_bundle(w: Weight, s: &str) -> Result<IndecBundle, Error> {
    let t = s.trim();
    let inner = t
        .strip_prefix('<')
        .and_then(|r| r.strip_suffix('>'))
        .or_else(|| t.strip_prefix('⟨').and_then(|r| r.strip_suffix('⟩')));
    if let Some(inner) = inner {
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        let nums: Vec<i64> = parts
            .iter()
            .map(|p| p.replace('−', "-").parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| Error::InvalidBundle(format!("{s:?}: expected <i,k> with integers")))?;
        if nums.len() != 2 {
            return Err(Error::InvalidBundle(format!("{s:?}: expected <i,k>")));
        }
        return IndecBundle::ext(nums[0], nums[1]).validate(w);
    }
    let deg = t
        .strip_prefix("O(")
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(t);
    Ok(IndecBundle::Line(parse_degree(w, deg)?))
}

pub fn parse_bundle_list(w: Weight, s: &str) -> Result<Vec<IndecBundle>, Error> {
    split_list(s).into_iter().map(|b| parse_bundle(w, b)).collect()
}

fn twist_token(g: TwistClass) -> &'static str {
    match g {
        TwistClass::E => "",
        TwistClass::G12 => "x12bar",
        TwistClass::G13 => "x13bar",
        TwistClass::G23 => "x23bar",
    }
}

/// Short form `[w+][xABbar]±m x4`, readable back by [`parse_degree`].
pub fn format_degree(x: GradedDegree) -> String {
    let lc = line_canonical_coord(x);
    let mut parts: Vec<String> = Vec::new();
    if lc.branch == Branch::Bottom {
        parts.push("w".into());
    }
    let g = twist_token(lc.twist);
    if !g.is_empty() {
        parts.push(g.into());
    }
    let mut s = parts.join("+");
    let m = lc.m;
    if m != 0 {
        let sign = if m < 0 { "-" } else if s.is_empty() { "" } else { "+" };
        let mag = m.abs();
        if mag == 1 {
            s.push_str(&format!("{sign}x4"));
        } else {
            s.push_str(&format!("{sign}{mag}x4"));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

pub fn format_bundle(b: IndecBundle) -> String {
    match b {
        IndecBundle::Line(x) => format!("O({})", format_degree(x)),
        IndecBundle::Ext2 { i, k } => format!("<{i},{k}>"),
    }
}
