//! DOT and TikZ text for windows of the Auslander-Reiten quiver and for endomorphism quivers.
//!
//! Output depends only on the input, so repeated runs are byte-identical.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::bundle::{ExtCoord, IndecBundle};
use crate::endo::QuiverGraph;
use crate::lattice::{TwistClass, Weight};
use crate::symbolic::format_bundle;

/// Vertices `<level, offset>_g` of the window, levels `-1..=p-1`, offsets `lo..=hi`.
///
/// Levels `-1` and `p-1` are line bundles and appear once per twist.
pub fn ar_window(w: Weight, lo: i64, hi: i64) -> Vec<ExtCoord> {
    let p = w.p();
    let mut out = Vec::new();
    for level in -1..=p - 1 {
        let twists: &[TwistClass] = if level == -1 || level == p - 1 {
            &TwistClass::ALL
        } else {
            &[TwistClass::E]
        };
        for offset in lo..=hi {
            for &twist in twists {
                out.push(ExtCoord { level, offset, twist });
            }
        }
    }
    out
}

/// Arrows `<l,k> -> <l+1,k>` and `<l,k> -> <l-1,k+1>` inside the window. A line
/// vertex connects to the neighbouring rank-four vertex; lines are never adjacent
/// to each other.
pub fn ar_arrows(w: Weight, verts: &[ExtCoord]) -> Vec<(usize, usize)> {
    let p = w.p();
    let is_line = |c: &ExtCoord| c.level == -1 || c.level == p - 1;
    let mut out = Vec::new();
    for (a, u) in verts.iter().enumerate() {
        for (b, v) in verts.iter().enumerate() {
            let up = v.level == u.level + 1 && v.offset == u.offset;
            let down = v.level == u.level - 1 && v.offset == u.offset + 1;
            if !(up || down) {
                continue;
            }
            // p = 2 has one rank-four level; both line rows touch it
            if is_line(u) && is_line(v) {
                continue;
            }
            out.push((a, b));
        }
    }
    out
}

fn node_id(c: &ExtCoord) -> String {
    let lvl = if c.level < 0 { format!("m{}", -c.level) } else { c.level.to_string() };
    let off = if c.offset < 0 { format!("m{}", -c.offset) } else { c.offset.to_string() };
    format!("n{lvl}_{off}_{}", c.twist.name())
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT text for the window; members of `highlight` are filled.
pub fn ar_dot(w: Weight, lo: i64, hi: i64, highlight: Option<&BTreeSet<IndecBundle>>) -> String {
    let verts = ar_window(w, lo, hi);
    let mut s = String::new();
    writeln!(s, "digraph ar {{").unwrap();
    writeln!(s, "  node [shape=plaintext, fontsize=10];").unwrap();
    for level in -1..=w.p() - 1 {
        let row: Vec<String> = verts.iter().filter(|c| c.level == level).map(node_id).collect();
        writeln!(s, "  {{ rank=same; {} }}", row.join("; ")).unwrap();
    }
    for c in &verts {
        let b = c.to_bundle(w);
        let fill = match highlight {
            Some(h) if h.contains(&b) => ", style=filled, fillcolor=\"#f4b6b6\"",
            _ => "",
        };
        writeln!(s, "  {} [label=\"{}\"{fill}];", node_id(c), dot_escape(&format_bundle(b))).unwrap();
    }
    for (a, b) in ar_arrows(w, &verts) {
        writeln!(s, "  {} -> {};", node_id(&verts[a]), node_id(&verts[b])).unwrap();
    }
    s.push_str("}\n");
    s
}

fn tikz_label(b: IndecBundle) -> String {
    match b {
        IndecBundle::Ext2 { i, k } => format!("$\\langle {i},{k}\\rangle$"),
        IndecBundle::Line(_) => {
            let t = format_bundle(b);
            let inner = &t[2..t.len() - 1];
            format!("\\texttt{{{inner}}}")
        }
    }
}

/// TikZ picture of the window: offsets run left to right, levels bottom to top,
/// and the four twists of a line share a position (only the untwisted one is drawn).
pub fn ar_tikz(w: Weight, lo: i64, hi: i64, highlight: Option<&BTreeSet<IndecBundle>>) -> String {
    let verts: Vec<ExtCoord> = ar_window(w, lo, hi)
        .into_iter()
        .filter(|c| c.twist == TwistClass::E)
        .collect();
    let mut s = String::from("\\begin{tikzpicture}[x=1.1cm, y=0.9cm, every node/.style={font=\\tiny}]\n");
    for c in &verts {
        let b = c.to_bundle(w);
        // the diagonal arrows climb one level per half step
        let x = 2 * c.offset + c.level;
        let mark = match highlight {
            Some(h) if h.contains(&b) => "[fill=red!25]",
            _ => "",
        };
        writeln!(
            s,
            "  \\node{mark} ({}) at ({}, {}) {{{}}};",
            node_id(c),
            x,
            c.level,
            tikz_label(b)
        )
        .unwrap();
    }
    for (a, b) in ar_arrows(w, &verts) {
        writeln!(s, "  \\draw[->] ({}) -- ({});", node_id(&verts[a]), node_id(&verts[b])).unwrap();
    }
    s.push_str("\\end{tikzpicture}\n");
    s
}

/// Length of the longest path ending at each vertex.
fn layers(q: &QuiverGraph) -> Vec<usize> {
    let n = q.vertices.len();
    let mut layer = vec![0usize; n];
    // arrows follow a topological order, so n relaxation rounds settle every path
    for _ in 0..n {
        let mut changed = false;
        for a in &q.arrows {
            if layer[a.dst] < layer[a.src] + 1 {
                layer[a.dst] = layer[a.src] + 1;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    layer
}

/// TikZ picture of the quiver, one column per longest-path layer.
pub fn endo_tikz(q: &QuiverGraph) -> String {
    let layer = layers(q);
    let mut s = String::from("\\begin{tikzpicture}[x=2.2cm, y=0.8cm, every node/.style={font=\\tiny}]\n");
    let depth = layer.iter().copied().max().unwrap_or(0);
    for col in 0..=depth {
        let members: Vec<usize> = (0..q.vertices.len()).filter(|&v| layer[v] == col).collect();
        for (row, &v) in members.iter().enumerate() {
            writeln!(
                s,
                "  \\node (v{v}) at ({col}, {}) {{{}}};",
                -(row as i64),
                tikz_label(q.vertices[v])
            )
            .unwrap();
        }
    }
    for a in &q.arrows {
        let dashed = if q.uncertain.contains(&(a.src, a.dst)) { ", dashed" } else { "" };
        for m in 0..a.multiplicity {
            let bend = if a.multiplicity > 1 { format!(", bend left={}", 8 * m) } else { String::new() };
            writeln!(s, "  \\draw[->{dashed}{bend}] (v{}) to (v{});", a.src, a.dst).unwrap();
        }
    }
    s.push_str("\\end{tikzpicture}\n");
    s
}
