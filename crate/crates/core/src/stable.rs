//! Stable Hom between rank-four bundles.
//!
//! The stable category of ACM bundles has Auslander-Reiten quiver `ZA_{p-1}` on
//! the vertices `<i,k>`, with arrows `<i,k> -> <i+1,k>` and `<i,k> -> <i-1,k+1>`
//! and translation `<i,k> -> <i,k-1>`. The dimension of the stable Hom from a
//! fixed vertex is its hammock, obtained by knitting along the meshes.

use crate::bundle::IndecBundle;
use crate::error::Error;
use crate::lattice::Weight;

/// Arrows increase `i + 2k` by one.
fn time(i: i64, k: i64) -> i64 {
    i + 2 * k
}

/// Dimension of the stable Hom from `<a.0, a.1>` to `<b.0, b.1>`.
pub fn stable_hom_dim(w: Weight, a: (i64, i64), b: (i64, i64)) -> i64 {
    let rows = (w.p() - 1) as usize;
    let (t0, t1) = (time(a.0, a.1), time(b.0, b.1));
    if t1 < t0 {
        return 0;
    }
    let mut prev2 = vec![0i64; rows];
    let mut prev = vec![0i64; rows];
    prev[a.0 as usize] = 1;
    for _ in t0..t1 {
        let mut cur = vec![0i64; rows];
        for i in 0..rows {
            let below = if i > 0 { prev[i - 1] } else { 0 };
            let above = if i + 1 < rows { prev[i + 1] } else { 0 };
            cur[i] = (below + above - prev2[i]).max(0);
        }
        if cur.iter().all(|&v| v == 0) && prev.iter().all(|&v| v == 0) {
            return 0;
        }
        prev2 = prev;
        prev = cur;
    }
    prev[b.0 as usize]
}

pub fn stable_hom_nonzero(w: Weight, a: IndecBundle, b: IndecBundle) -> Result<bool, Error> {
    match (a.ext_pair(), b.ext_pair()) {
        (Some(x), Some(y)) => Ok(stable_hom_dim(w, x, y) > 0),
        _ => Err(Error::InvalidBundle(
            "stable Hom is only defined here between rank-four bundles".into(),
        )),
    }
}
