//! ASCII and SVG drawings of terms (slices left to right) and strategies
//! (two move columns with dependency arrows).

use std::fmt::Write;

use diagrammar::{MoveRef, Result, Side, Slice, Strategy, Term};

/// Wire rows before and after one slice, and where the generator sits.
struct Layer {
    name: String,
    left: usize,
    src: usize,
    tgt: usize,
    right: usize,
}

impl Layer {
    fn from_slice(s: &Slice) -> Layer {
        Layer {
            name: s.gen.name.clone(),
            left: s.left.len(),
            src: s.gen.source.len(),
            tgt: s.gen.target.len(),
            right: s.right.len(),
        }
    }

    fn box_rows(&self) -> usize {
        self.src.max(self.tgt).max(1)
    }

    fn height(&self) -> usize {
        self.left + self.box_rows() + self.right
    }
}

fn layers(t: &Term) -> Result<(usize, Vec<Layer>)> {
    let width = t.source()?.len();
    Ok((width, t.slice_form()?.iter().map(Layer::from_slice).collect()))
}

pub fn term_ascii(t: &Term) -> Result<String> {
    let (src, target) = t.boundary()?;
    let (width, layers) = layers(t)?;
    let rows = layers.iter().map(Layer::height).chain([width, 1]).max().unwrap_or(1);
    let mut grid: Vec<String> = vec![String::new(); rows];
    let mut current = width;
    let pad = |grid: &mut Vec<String>, live: usize, cols: usize| {
        for (r, line) in grid.iter_mut().enumerate() {
            let c = if r < live { '─' } else { ' ' };
            line.extend(std::iter::repeat_n(c, cols));
        }
    };
    pad(&mut grid, current, 2);
    for l in &layers {
        let label = format!("[{}]", l.name);
        let w = label.chars().count() + 2;
        for (r, line) in grid.iter_mut().enumerate() {
            let cell = if r < l.left {
                "─".repeat(w)
            } else if r < l.left + l.box_rows() {
                let inner = if r == l.left {
                    label.clone()
                } else {
                    format!("[{}]", " ".repeat(l.name.chars().count()))
                };
                let into = if r - l.left < l.src { '─' } else { ' ' };
                let out = if r - l.left < l.tgt { '─' } else { ' ' };
                format!("{into}{inner}{out}")
            } else {
                let k = r - l.left - l.box_rows();
                if k < l.right {
                    let shift = match l.tgt.max(1).cmp(&l.src.max(1)) {
                        std::cmp::Ordering::Equal => '─',
                        std::cmp::Ordering::Greater => '╲',
                        std::cmp::Ordering::Less => '╱',
                    };
                    let mut cells = vec!['─'; w];
                    cells[w / 2] = shift;
                    cells.into_iter().collect()
                } else {
                    " ".repeat(w)
                }
            };
            line.push_str(&cell);
        }
        current = l.left + l.tgt + l.right;
        pad(&mut grid, current, 1);
    }
    let mut out = format!("{} → {}\n", show_word(&src), show_word(&target));
    for line in grid {
        out.push_str(line.trim_end());
        out.push('\n');
    }
    Ok(out)
}

fn show_word(w: &diagrammar::TypeWord) -> String {
    if w.is_empty() {
        "I".to_string()
    } else {
        w.atoms().iter().map(|a| a.0).collect()
    }
}

const STEP_X: f64 = 70.0;
const STEP_Y: f64 = 30.0;

pub fn term_svg(t: &Term) -> Result<String> {
    let (width, layers) = layers(t)?;
    let rows = layers.iter().map(Layer::height).chain([width, 1]).max().unwrap_or(1);
    let total_w = STEP_X * (layers.len() as f64 + 1.0);
    let total_h = STEP_Y * (rows as f64 + 1.0);
    let y = |r: usize| STEP_Y * (r as f64 + 1.0);
    let mut body = String::new();
    let mut live = width;
    let mut x = 0.0;
    for l in &layers {
        let mid = x + STEP_X;
        let box_top = y(l.left) - STEP_Y * 0.4;
        let box_h = STEP_Y * (l.box_rows() as f64 - 1.0) + STEP_Y * 0.8;
        for r in 0..l.left {
            line(&mut body, x, y(r), x + STEP_X * 2.0 - 20.0, y(r));
        }
        for k in 0..l.src {
            line(&mut body, x, y(l.left + k), mid - 15.0, y(l.left + k));
        }
        for k in 0..l.tgt {
            line(&mut body, mid + 15.0, y(l.left + k), x + STEP_X * 2.0 - 20.0, y(l.left + k));
        }
        for k in 0..l.right {
            line(&mut body, x, y(l.left + l.src + k), x + STEP_X * 2.0 - 20.0, y(l.left + l.tgt + k));
        }
        let _ = writeln!(
            body,
            r#"<rect x="{:.1}" y="{box_top:.1}" width="30" height="{box_h:.1}" fill="white" stroke="black"/>"#,
            mid - 15.0
        );
        let _ = writeln!(
            body,
            r#"<text x="{mid:.1}" y="{:.1}" font-size="9" text-anchor="middle">{}</text>"#,
            box_top - 3.0,
            escape(&l.name)
        );
        live = l.left + l.tgt + l.right;
        x += STEP_X;
    }
    for r in 0..live {
        line(&mut body, x + STEP_X - 20.0, y(r), x + STEP_X * 1.5, y(r));
    }
    Ok(svg_doc(total_w + STEP_X, total_h, &body))
}

fn line(out: &mut String, x1: f64, y1: f64, x2: f64, y2: f64) {
    let _ = writeln!(
        out,
        r#"<line x1="{x1:.1}" y1="{y1:.1}" x2="{x2:.1}" y2="{y2:.1}" stroke="black"/>"#
    );
}

fn svg_doc(w: f64, h: f64, body: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\">\n\
         <defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\">\
         <path d=\"M0,0 L10,5 L0,10 z\"/></marker></defs>\n{body}</svg>\n"
    )
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Moves touched by no dependency get a stub ending in a small circle.
fn is_isolated(s: &Strategy, m: MoveRef) -> bool {
    !s.deps.iter().any(|&(a, b)| a == m || b == m)
}

pub fn strategy_ascii(s: &Strategy) -> String {
    let mut out = format!("{} → {}\n", s.src, s.tgt);
    for m in s.moves() {
        let head = format!("{m} {}", s.letter(m).letter());
        let targets: Vec<String> = s.deps.iter().filter(|d| d.0 == m).map(|d| d.1.to_string()).collect();
        if !targets.is_empty() {
            let _ = writeln!(out, "{head} ──▶ {}", targets.join(", "));
        } else if is_isolated(s, m) {
            let _ = writeln!(out, "{head} ──o");
        } else {
            let _ = writeln!(out, "{head}");
        }
    }
    out
}

pub fn strategy_svg(s: &Strategy) -> String {
    let rows = s.src.len().max(s.tgt.len()).max(1);
    let (w, h) = (260.0, STEP_Y * (rows as f64 + 2.0));
    let pos = |m: MoveRef| {
        let x = if m.side == Side::Src { 60.0 } else { 200.0 };
        (x, STEP_Y * (m.index as f64 + 2.0))
    };
    let mut body = String::new();
    let _ = writeln!(body, r#"<text x="60" y="20" text-anchor="middle">{}</text>"#, s.src);
    let _ = writeln!(body, r#"<text x="200" y="20" text-anchor="middle">{}</text>"#, s.tgt);
    for m in s.moves() {
        let (x, y) = pos(m);
        let _ = writeln!(
            body,
            r#"<text x="{x:.1}" y="{:.1}" font-size="12" text-anchor="middle">{}</text>"#,
            y + 4.0,
            s.letter(m).letter()
        );
        if is_isolated(s, m) {
            let dx = if m.side == Side::Src { 25.0 } else { -25.0 };
            line(&mut body, x + dx * 0.4, y, x + dx, y);
            let _ = writeln!(
                body,
                r#"<circle cx="{:.1}" cy="{y:.1}" r="3" fill="white" stroke="black"/>"#,
                x + dx
            );
        }
    }
    for &(a, b) in &s.deps {
        let ((x1, y1), (x2, y2)) = (pos(a), pos(b));
        let (x1, x2) = if x1 < x2 { (x1 + 10.0, x2 - 10.0) } else if x1 > x2 { (x1 - 10.0, x2 + 10.0) } else { (x1 + 10.0, x2 + 10.0) };
        let _ = writeln!(
            body,
            r#"<line x1="{x1:.1}" y1="{y1:.1}" x2="{x2:.1}" y2="{y2:.1}" stroke="black" marker-end="url(#arrow)"/>"#
        );
    }
    svg_doc(w, h, &body)
}

#[cfg(test)]
mod tests {
    use super::*;
    use diagrammar::{builtin_theory, parse_term};

    #[test]
    fn term_drawing_mentions_each_generator() {
        let th = builtin_theory("B").unwrap();
        let t = parse_term(&th, "delta ; mu").unwrap();
        let a = term_ascii(&t).unwrap();
        assert!(a.contains("[delta]") && a.contains("[mu]"), "{a}");
        assert!(a.starts_with("1 → 1"));
        let svg = term_svg(&t).unwrap();
        assert_eq!(svg.matches("<rect").count(), 2);
    }

    #[test]
    fn strategy_drawing_marks_isolated_moves() {
        let s: Strategy = "src: I\ntgt: OP\n".parse().unwrap();
        let a = strategy_ascii(&s);
        assert_eq!(a.matches("──o").count(), 2, "{a}");
        let s: Strategy = "src: I\ntgt: OP\n(tgt,0)->(tgt,1)\n".parse().unwrap();
        assert!(strategy_ascii(&s).contains("(tgt,0) O ──▶ (tgt,1)"));
        let svg = strategy_svg(&s);
        assert_eq!(svg.matches("marker-end").count(), 1);
        assert_eq!(svg.matches("<circle").count(), 0);
    }
}
