//! Text and SVG charts of a page in (stem, filtration) coordinates.

use std::fmt::Write as _;

use crate::coefficients::{CoeffKind, CyclicModule};
use crate::page::{find_rule, CellKey, DifferentialRule, Page};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Glyph {
    /// `W[[u_B]]`
    Square,
    /// `F_q[[u_B]]` with `B` nonempty, possibly divided or localized
    FilledDot,
    /// `F_q`
    OpenDot,
    /// formal `Z/2` cells
    Cross,
    /// divisible `E_0/(2^inf, ...)`
    Diamond,
}

impl Glyph {
    pub fn text(self) -> char {
        match self {
            Glyph::Square => '#',
            Glyph::FilledDot => '*',
            Glyph::OpenDot => 'o',
            Glyph::Cross => 'x',
            Glyph::Diamond => '%',
        }
    }
}

#[derive(Debug, Clone)]
pub struct ChartStyle {
    pub cell: i64,
    pub margin: i64,
    pub glyph_radius: i64,
    /// Stroke colours indexed by `log2(r + 1)`, cycled.
    pub arrow_colours: Vec<&'static str>,
    /// Spacing of vertical guide lines; 0 disables them.
    pub period: i64,
}

impl Default for ChartStyle {
    fn default() -> Self {
        Self {
            cell: 24,
            margin: 32,
            glyph_radius: 5,
            arrow_colours: vec!["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"],
            period: 0,
        }
    }
}

impl ChartStyle {
    pub fn glyph(&self, m: &CyclicModule) -> Glyph {
        match m.kind {
            CoeffKind::Witt => Glyph::Square,
            CoeffKind::WittDivided => Glyph::Diamond,
            CoeffKind::Z2 => Glyph::Cross,
            CoeffKind::Mod2 if m.is_residue_field() => Glyph::OpenDot,
            CoeffKind::Mod2 => Glyph::FilledDot,
        }
    }

    fn colour(&self, r: u32) -> &'static str {
        let i = (32 - (r + 1).leading_zeros()) as usize;
        self.arrow_colours[i % self.arrow_colours.len()]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Arrow {
    pub r: u32,
    pub from: CellKey,
    pub to: CellKey,
}

/// The `d_r` arrows on page `p`, where `r = p.r`, between cells of the window.
pub fn arrows(p: &Page, rules: &[DifferentialRule]) -> Vec<Arrow> {
    let mut out = Vec::new();
    for (k, s) in p.summands() {
        let Some(rule) = find_rule(&s.generator, p.r, rules) else { continue };
        let target = s.generator.times(rule.delta);
        if p.find(&target).is_some() {
            let to = p.key_of(&target);
            if p.window.contains(k) && p.window.contains(&to) {
                out.push(Arrow { r: p.r, from: *k, to });
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn render_text(p: &Page, style: &ChartStyle) -> String {
    let (s0, s1) = p.window.stems;
    let (f0, f1) = p.window.filts;
    let mut out = String::new();
    let _ = writeln!(out, "{} n={} E_{} stems [{s0},{s1}) filtrations [{f0},{f1})", p.preset, p.height, p.r);
    for f in (f0..f1).rev() {
        let _ = write!(out, "{f:>4} |");
        for s in s0..s1 {
            let here: Vec<_> = p
                .cells
                .iter()
                .filter(|(k, _)| k.stem == s && k.filt == f && p.window.contains(k))
                .flat_map(|(_, v)| v.iter())
                .collect();
            let c = match here.as_slice() {
                [] => ' ',
                [one] => style.glyph(&one.module).text(),
                many => char::from_digit(many.len().min(9) as u32, 10).unwrap_or('+'),
            };
            out.push(c);
        }
        out.push('\n');
    }
    let _ = write!(out, "     +");
    for s in s0..s1 {
        out.push(if s.rem_euclid(4) == 0 { '+' } else { '-' });
    }
    out.push('\n');
    let _ = write!(out, "      ");
    let mut s = s0;
    while s < s1 {
        if s.rem_euclid(4) == 0 {
            let label = s.to_string();
            out.push_str(&label);
            let pad = 4usize.saturating_sub(label.len());
            out.push_str(&" ".repeat(pad));
            s += 4.max(label.len() as i64);
        } else {
            out.push(' ');
            s += 1;
        }
    }
    out.push('\n');
    out.push_str("legend: # W[[u]]  * F_q[[u]]  o F_q  x Z/2  % divisible  digit = several summands\n");
    out
}

pub fn render_svg(p: &Page, arrows: &[Arrow], style: &ChartStyle) -> String {
    let (s0, s1) = p.window.stems;
    let (f0, f1) = p.window.filts;
    let c = style.cell;
    let m = style.margin;
    let w = (s1 - s0) * c + 2 * m;
    let h = (f1 - f0) * c + 2 * m;
    let x = |s: i64| m + (s - s0) * c + c / 2;
    let y = |f: i64| h - m - (f - f0) * c - c / 2;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="monospace" font-size="10">"#
    );
    let _ = writeln!(out, r#"<title>{} n={} E_{}</title>"#, p.preset, p.height, p.r);
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#);
    for s in s0..=s1 {
        let gx = m + (s - s0) * c;
        let stroke = if style.period > 0 && s.rem_euclid(style.period) == 0 { "#888" } else { "#eee" };
        let _ = writeln!(out, r#"<line x1="{gx}" y1="{m}" x2="{gx}" y2="{}" stroke="{stroke}"/>"#, h - m);
    }
    for f in f0..=f1 {
        let gy = h - m - (f - f0) * c;
        let _ = writeln!(out, r##"<line x1="{m}" y1="{gy}" x2="{}" y2="{gy}" stroke="#eee"/>"##, w - m);
    }
    for s in (s0..s1).filter(|s| s.rem_euclid(4) == 0) {
        let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="middle">{s}</text>"#, x(s), h - m / 3);
    }
    for f in (f0..f1).filter(|f| f.rem_euclid(4) == 0) {
        let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="end">{f}</text>"#, m - 4, y(f) + 3);
    }
    for a in arrows {
        let col = style.colour(a.r);
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{col}" stroke-width="1"><title>d{}</title></line>"#,
            x(a.from.stem),
            y(a.from.filt),
            x(a.to.stem),
            y(a.to.filt),
            a.r
        );
    }
    let r = style.glyph_radius;
    for (k, v) in p.cells.iter().filter(|(k, _)| p.window.contains(k)) {
        let count = v.len() as i64;
        for (i, s) in v.iter().enumerate() {
            let cx = x(k.stem) + (2 * i as i64 - (count - 1)) * (r + 1);
            let cy = y(k.filt);
            let title = format!("{} {}", s.label, s.module);
            let shape = match style.glyph(&s.module) {
                Glyph::Square => format!(
                    r#"<rect x="{}" y="{}" width="{}" height="{}" fill="black">"#,
                    cx - r,
                    cy - r,
                    2 * r,
                    2 * r
                ),
                Glyph::FilledDot => format!(r#"<circle cx="{cx}" cy="{cy}" r="{r}" fill="black">"#),
                Glyph::OpenDot => {
                    format!(r#"<circle cx="{cx}" cy="{cy}" r="{r}" fill="white" stroke="red" stroke-width="1.5">"#)
                }
                Glyph::Diamond => format!(
                    r#"<polygon points="{},{} {},{} {},{} {},{}" fill="gray">"#,
                    cx,
                    cy - r,
                    cx + r,
                    cy,
                    cx,
                    cy + r,
                    cx - r,
                    cy
                ),
                Glyph::Cross => format!(
                    r#"<path d="M{} {} L{} {} M{} {} L{} {}" stroke="black" stroke-width="2">"#,
                    cx - r,
                    cy - r,
                    cx + r,
                    cy + r,
                    cx - r,
                    cy + r,
                    cx + r,
                    cy - r
                ),
            };
            let close = shape.split_whitespace().next().unwrap_or("<g").trim_start_matches('<').to_string();
            let _ = writeln!(out, "{shape}<title>{}</title></{close}>", escape(&title));
        }
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
