//! SVG drawings of lattice paths on a unit grid.
//!
//! Output is a pure function of the input: integer coordinates only and a
//! fixed element order, so equal inputs give byte-identical files.

use std::fmt::Write;

use crate::bijections::{BijectionTrace, PathRole, Position};
use crate::error::{domain, Result};
use crate::paths::{enumerate, FamilySpec, LatticePath, Step};

/// Pixels per lattice unit.
const UNIT: i64 = 24;
const MARGIN: i64 = 16;
/// Room above each panel for its caption.
const CAPTION: i64 = 20;

/// Largest family `render_family` will draw.
pub const FAMILY_CAP: usize = 64;

struct Mark {
    label: String,
    at: Position,
}

struct Panel {
    caption: String,
    path: LatticePath,
    marks: Vec<Mark>,
}

impl Panel {
    fn bare(caption: String, path: LatticePath) -> Self {
        Panel {
            caption,
            path,
            marks: Vec::new(),
        }
    }

    /// Lowest and highest level drawn; always spans at least one unit.
    fn level_span(&self) -> (i64, i64) {
        let lo = self.path.min_level().min(0);
        let hi = self.path.height().max(lo + 1);
        (lo, hi)
    }

    fn width(&self) -> i64 {
        (self.path.len() as i64).max(1) * UNIT + 2 * MARGIN
    }

    fn height(&self) -> i64 {
        let (lo, hi) = self.level_span();
        (hi - lo) * UNIT + 2 * MARGIN + CAPTION
    }

    fn draw(&self, out: &mut String, ox: i64, oy: i64) {
        let (lo, hi) = self.level_span();
        let cols = (self.path.len() as i64).max(1);
        let x = |i: usize| ox + MARGIN + i as i64 * UNIT;
        let y = |level: i64| oy + CAPTION + MARGIN + (hi - level) * UNIT;

        let _ = writeln!(out, r#"<g class="panel">"#);
        let _ = writeln!(
            out,
            r#"<text class="caption" x="{}" y="{}">{}</text>"#,
            ox + MARGIN,
            oy + CAPTION - 4,
            escape(&self.caption)
        );
        for c in 0..=cols {
            let gx = ox + MARGIN + c * UNIT;
            let _ = writeln!(
                out,
                r#"<line class="grid" x1="{gx}" y1="{}" x2="{gx}" y2="{}"/>"#,
                y(hi),
                y(lo)
            );
        }
        for level in lo..=hi {
            let class = if level == 0 { "axis" } else { "grid" };
            let _ = writeln!(
                out,
                r#"<line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                x(0),
                y(level),
                x(cols as usize),
                y(level)
            );
        }

        let levels = self.path.levels();
        let highlighted: Vec<bool> = (1..=self.path.len())
            .map(|step| {
                self.marks.iter().any(|m| match m.at {
                    Position::Range([a, b]) => a < step && step <= b,
                    Position::Point(_) => false,
                })
            })
            .collect();
        for (i, step) in self.path.steps().iter().enumerate() {
            let class = match (step, highlighted[i]) {
                (Step::Up, false) => "up",
                (Step::Down, false) => "down",
                (Step::Up, true) => "up wedge",
                (Step::Down, true) => "down wedge",
            };
            let _ = writeln!(
                out,
                r#"<line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                x(i),
                y(levels[i]),
                x(i + 1),
                y(levels[i + 1])
            );
        }

        for m in &self.marks {
            let (px, py) = match m.at {
                Position::Point(p) => {
                    let (px, py) = (x(p), y(levels[p]));
                    let _ = writeln!(out, r#"<circle class="mark" cx="{px}" cy="{py}" r="3"/>"#);
                    (px, py)
                }
                Position::Range([a, b]) => {
                    let top = levels[a..=b].iter().copied().max().unwrap_or(levels[a]);
                    ((x(a) + x(b)) / 2, y(top))
                }
            };
            let _ = writeln!(
                out,
                r#"<text class="label" x="{}" y="{}">{}</text>"#,
                px + 4,
                py - 6,
                escape(&m.label)
            );
        }
        let _ = writeln!(out, "</g>");
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

const STYLE: &str = "line.grid{stroke:#ccc;stroke-width:1}\
line.axis{stroke:#888;stroke-width:1}\
line.up,line.down{stroke:#000;stroke-width:2;stroke-linecap:round}\
line.wedge{stroke:#c33;stroke-width:3}\
circle.mark{fill:#c33}\
text{font-family:monospace;font-size:11px}";

/// Lays panels out left to right, wrapping after `columns`.
fn compose(panels: &[Panel], columns: usize) -> String {
    let columns = columns.max(1);
    let cell_w = panels.iter().map(Panel::width).max().unwrap_or(2 * MARGIN);
    let cell_h = panels.iter().map(Panel::height).max().unwrap_or(2 * MARGIN);
    let rows = panels.len().div_ceil(columns).max(1);
    let (w, h) = (
        cell_w * columns.min(panels.len().max(1)) as i64,
        cell_h * rows as i64,
    );

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(out, "<style>{STYLE}</style>");
    let _ = writeln!(out, r##"<rect width="{w}" height="{h}" fill="#fff"/>"##);
    for (k, panel) in panels.iter().enumerate() {
        let (col, row) = ((k % columns) as i64, (k / columns) as i64);
        panel.draw(&mut out, col * cell_w, row * cell_h);
    }
    out.push_str("</svg>\n");
    out
}

pub fn render_path(p: &LatticePath) -> String {
    compose(&[Panel::bare(p.to_bits(), p.clone())], 1)
}

/// Input, intermediate (if any) and output side by side, each carrying the
/// landmarks recorded on it.
pub fn render_trace(t: &BijectionTrace) -> String {
    let mut panels = Vec::new();
    let mut stages = vec![(PathRole::Input, "input", &t.input)];
    if let Some(mid) = &t.intermediate {
        stages.push((PathRole::Intermediate, "intermediate", mid));
    }
    stages.push((PathRole::Output, "output", &t.output));
    for (role, what, path) in stages {
        let marks = t
            .landmarks
            .iter()
            .filter(|(_, l)| l.on == role)
            .map(|(label, l)| Mark {
                label: label.clone(),
                at: l.at.clone(),
            })
            .collect();
        panels.push(Panel {
            caption: format!("{} {what}: {}", t.name, path.to_bits()),
            path: path.clone(),
            marks,
        });
    }
    let columns = panels.len();
    compose(&panels, columns)
}

/// Every member of a family with at most [`FAMILY_CAP`] members.
pub fn render_family(spec: FamilySpec) -> Result<String> {
    let paths: Vec<LatticePath> = enumerate(spec)?.take(FAMILY_CAP + 1).collect();
    if paths.len() > FAMILY_CAP {
        return Err(domain(format!(
            "{spec} has more than {FAMILY_CAP} members; render a single path instead"
        )));
    }
    let columns = (paths.len() as f64).sqrt().ceil() as usize;
    let panels: Vec<Panel> = paths
        .into_iter()
        .map(|p| Panel::bare(p.to_bits(), p))
        .collect();
    Ok(compose(&panels, columns))
}
