//! SVG scenes of a family, with optional highlighted roles.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::geom::{rational_to_f64, CurveFamily, Rational};
use crate::structures::{BracketJson, Skeleton};

/// Stroke class of a curve; later variants win.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Role {
    Curve,
    Highlight,
    BracketMember,
    Support,
    Anchor,
}

impl Role {
    fn class(self) -> &'static str {
        match self {
            Role::Curve => "curve",
            Role::Highlight => "highlight",
            Role::BracketMember => "member",
            Role::Support => "support",
            Role::Anchor => "anchor",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct RenderOptions {
    pub highlight: Vec<String>,
    pub skeleton: Option<Skeleton>,
    pub brackets: Vec<BracketJson>,
}

impl RenderOptions {
    fn roles(&self) -> BTreeMap<String, Role> {
        let mut roles = BTreeMap::new();
        let mut assign = |id: &str, r: Role| {
            let e = roles.entry(id.to_string()).or_insert(Role::Curve);
            *e = (*e).max(r);
        };
        for id in &self.highlight {
            assign(id, Role::Highlight);
        }
        for b in &self.brackets {
            b.p.iter().for_each(|id| assign(id, Role::BracketMember));
            b.s.iter().for_each(|id| assign(id, Role::Support));
        }
        if let Some(sk) = &self.skeleton {
            sk.supports.iter().for_each(|id| assign(id, Role::Support));
            assign(&sk.u, Role::Anchor);
            assign(&sk.v, Role::Anchor);
        }
        roles
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.4}");
    if s == "-0.0000" {
        "0.0000".into()
    } else {
        s
    }
}

fn coord(r: &Rational) -> f64 {
    rational_to_f64(r)
}

/// Renders `family` with the baseline as a horizontal rule. The viewBox is
/// the bounding box of the curves and the baseline with a 5% margin; `y` grows upward.
pub fn render_svg(family: &CurveFamily, opts: &RenderOptions) -> String {
    let pts: Vec<(f64, f64)> = family
        .curves()
        .iter()
        .flat_map(|c| c.vertices().iter().map(|p| (coord(&p.x), coord(&p.y))))
        .collect();
    let (mut x0, mut x1, y1) = pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY, 0f64), |(a, b, c), &(x, y)| {
        (a.min(x), b.max(x), c.max(y))
    });
    if pts.is_empty() {
        (x0, x1) = (0.0, 1.0);
    }
    let w = if x1 > x0 { x1 - x0 } else { 1.0 };
    let h = if y1 > 0.0 { y1 } else { 1.0 };
    let (mx, my) = (0.05 * w, 0.05 * h);
    let stroke = 0.004 * w.max(h);
    let flip = |y: f64| y1 - y;
    let roles = opts.roles();

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        num(x0 - mx),
        num(flip(h) - my),
        num(w + 2.0 * mx),
        num(h + 2.0 * my)
    );
    let _ = writeln!(
        s,
        "<style>\n.baseline {{ stroke: #000; stroke-width: {sw}; }}\n\
         .curve {{ stroke: #555; }}\n.highlight {{ stroke: #d62728; }}\n.member {{ stroke: #1f77b4; }}\n\
         .support {{ stroke: #2ca02c; }}\n.anchor {{ stroke: #9467bd; }}\n\
         polyline {{ fill: none; stroke-width: {sw}; stroke-linejoin: round; }}\n</style>",
        sw = num(stroke)
    );
    let _ = writeln!(
        s,
        r#"<line class="baseline" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
        num(x0 - mx),
        num(flip(0.0)),
        num(x1 + mx),
        num(flip(0.0))
    );
    for c in family.curves() {
        let role = roles.get(c.id()).copied().unwrap_or(Role::Curve);
        let points: Vec<String> = c
            .vertices()
            .iter()
            .map(|p| format!("{},{}", num(coord(&p.x)), num(flip(coord(&p.y)))))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline id="{}" class="{}" points="{}"/>"#,
            escape(c.id()),
            role.class(),
            points.join(" ")
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(id: &str) -> String {
    id.replace('&', "&amp;").replace('"', "&quot;").replace('<', "&lt;").replace('>', "&gt;")
}
