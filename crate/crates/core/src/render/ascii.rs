use super::{check, slot_labels, Layout, RenderError};
use crate::engine::rational::decimal;
use crate::engine::StatsReport;
use crate::network::{Element, Network};

#[derive(Debug, Clone, Copy)]
pub struct AsciiOptions {
    /// Widest diagram accepted, in characters.
    pub max_width: usize,
}

impl Default for AsciiOptions {
    fn default() -> Self {
        AsciiOptions { max_width: 400 }
    }
}

pub fn render_ascii(network: &Network, stats: Option<&StatsReport>) -> Result<String, RenderError> {
    render_ascii_with(network, stats, &AsciiOptions::default())
}

const LEAD: usize = 2;

/// Text diagram, wire 1 on top. Each wire is a row of `-`; elements are
/// vertical connectors (`+` at endpoints, `o` at fused interior joints, `|`
/// in between). With statistics, each slot's swap probability is printed
/// beside the connector just below the slot's upper wire, the header shows
/// `links/max avg` and the disorder, and settled wires end in `x`.
pub fn render_ascii_with(
    network: &Network,
    stats: Option<&StatsReport>,
    options: &AsciiOptions,
) -> Result<String, RenderError> {
    check(network, stats)?;
    let n = network.order();
    let layout = Layout::new(network);
    let labels = stats.map(slot_labels);
    let elements = network.elements();

    let widths: Vec<usize> = layout
        .columns
        .iter()
        .map(|col| {
            let widest = col
                .iter()
                .flat_map(|&i| labels.as_ref().map(|l| l[i].clone()).unwrap_or_default())
                .map(|s| s.len())
                .max()
                .unwrap_or(0);
            // connector, label, one dash of spacing on each side
            widest + 3
        })
        .collect();
    let body = LEAD + widths.iter().sum::<usize>() + LEAD;
    let margin = if stats.is_some() { 2 } else { 0 };
    let width = body + margin;

    // rows: wire w at 2(w-1), spacer below it at 2(w-1)+1
    let rows = if n == 0 { 0 } else { 2 * n - 1 };
    let mut grid: Vec<Vec<char>> = (0..rows)
        .map(|r| {
            let fill = if r % 2 == 0 { '-' } else { ' ' };
            let mut row = vec![fill; body];
            row.resize(width, ' ');
            row
        })
        .collect();

    let mut x = LEAD;
    for (c, col) in layout.columns.iter().enumerate() {
        let at = x + 1;
        for &idx in col {
            draw(&mut grid, &elements[idx], at);
            if let Some(l) = &labels {
                for ((top, _), text) in elements[idx].slots().iter().zip(&l[idx]) {
                    let row = &mut grid[2 * (top - 1) + 1];
                    for (k, ch) in text.chars().enumerate() {
                        row[at + 1 + k] = ch;
                    }
                }
            }
        }
        x += widths[c];
    }

    let mut out = String::new();
    if let Some(s) = stats {
        let left = format!("{}/{} {}", s.links, s.max_swaps, decimal(&s.avg_swaps, 3));
        let right = s.disorder.to_string();
        let pad = width.saturating_sub(left.len() + right.len()).max(1);
        let header = format!("{left}{}{right}", " ".repeat(pad));
        check_width(header.len(), options)?;
        out.push_str(&header);
        out.push('\n');
        for &w in &s.settled {
            grid[2 * (w - 1)][body + 1] = 'x';
        }
    }
    check_width(width, options)?;
    for row in grid {
        let line: String = row.into_iter().collect();
        out.push_str(line.trim_end());
        out.push('\n');
    }
    Ok(out)
}

fn check_width(width: usize, options: &AsciiOptions) -> Result<(), RenderError> {
    if width > options.max_width {
        Err(RenderError::TooWide {
            width,
            limit: options.max_width,
        })
    } else {
        Ok(())
    }
}

fn draw(grid: &mut [Vec<char>], element: &Element, x: usize) {
    let (lo, hi) = (element.min_wire(), element.max_wire());
    for w in lo..=hi {
        let glyph = if w == lo || w == hi {
            '+'
        } else if element.touches(w) {
            'o'
        } else {
            '|'
        };
        grid[2 * (w - 1)][x] = glyph;
        if w < hi {
            grid[2 * (w - 1) + 1][x] = '|';
        }
    }
}
