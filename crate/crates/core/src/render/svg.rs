use std::fmt::Write;

use super::{check, slot_labels, Layout, RenderError};
use crate::engine::rational::decimal;
use crate::engine::StatsReport;
use crate::network::Network;

const MARGIN: usize = 30;
const TOP: usize = 40;
const PITCH_Y: usize = 30;
const CHAR_W: usize = 7;
const DOT_R: usize = 3;

/// Standalone SVG using only `line`, `circle` and `text`. Every element is
/// one vertical `line` (class `link` or `fused`) with filled dots at its
/// endpoints and open circles at fused interior joints. Coordinates are
/// integers, so output is byte-identical for identical inputs.
pub fn render_svg(network: &Network, stats: Option<&StatsReport>) -> Result<String, RenderError> {
    check(network, stats)?;
    let n = network.order();
    let layout = Layout::new(network);
    let labels = stats.map(slot_labels);
    let elements = network.elements();

    let mut xs = Vec::with_capacity(layout.columns.len());
    let mut x = MARGIN + 20;
    for col in &layout.columns {
        xs.push(x);
        let widest = col
            .iter()
            .flat_map(|&i| labels.as_ref().map(|l| l[i].clone()).unwrap_or_default())
            .map(|s| s.len())
            .max()
            .unwrap_or(0);
        x += 20 + widest * CHAR_W;
    }
    let wire_end = x + 10;
    let width = wire_end + MARGIN;
    let height = TOP + n.saturating_sub(1) * PITCH_Y + MARGIN;
    let y = |w: usize| TOP + (w - 1) * PITCH_Y;

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    if let Some(st) = stats {
        let _ = writeln!(
            s,
            "<text class=\"header\" x=\"{MARGIN}\" y=\"20\" font-family=\"monospace\" font-size=\"12\">{}/{} {}</text>",
            st.links,
            st.max_swaps,
            decimal(&st.avg_swaps, 3)
        );
        let _ = writeln!(
            s,
            "<text class=\"disorder\" x=\"{}\" y=\"20\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"end\">{}</text>",
            width - MARGIN,
            st.disorder
        );
    }
    for w in 1..=n {
        let _ = writeln!(
            s,
            "<line class=\"wire\" x1=\"{MARGIN}\" y1=\"{0}\" x2=\"{wire_end}\" y2=\"{0}\" stroke=\"black\" stroke-width=\"1\"/>",
            y(w)
        );
    }
    for (idx, e) in elements.iter().enumerate() {
        let ex = xs[layout.column_of[idx]];
        let class = if e.is_link() { "link" } else { "fused" };
        let (lo, hi) = (e.min_wire(), e.max_wire());
        let _ = writeln!(
            s,
            "<line class=\"{class}\" x1=\"{ex}\" y1=\"{}\" x2=\"{ex}\" y2=\"{}\" stroke=\"black\" stroke-width=\"2\"/>",
            y(lo),
            y(hi)
        );
        for &w in e.wires().as_slice() {
            if w == lo || w == hi {
                let _ = writeln!(
                    s,
                    "<circle class=\"dot\" cx=\"{ex}\" cy=\"{}\" r=\"{DOT_R}\" fill=\"black\"/>",
                    y(w)
                );
            } else {
                let _ = writeln!(
                    s,
                    "<circle class=\"joint\" cx=\"{ex}\" cy=\"{}\" r=\"{}\" fill=\"white\" stroke=\"black\" stroke-width=\"1\"/>",
                    y(w),
                    DOT_R + 1
                );
            }
        }
        if let Some(l) = &labels {
            for ((top, _), text) in e.slots().iter().zip(&l[idx]) {
                let _ = writeln!(
                    s,
                    "<text class=\"prob\" x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"10\">{text}</text>",
                    ex + 4,
                    y(*top) + 14
                );
            }
        }
    }
    if let Some(st) = stats {
        for &w in &st.settled {
            let _ = writeln!(
                s,
                "<text class=\"settled\" x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"12\">x</text>",
                wire_end + 6,
                y(w) + 4
            );
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}
