//! Static SVG bar charts for rankings and sensitivity indices.

use std::fmt::Write;

/// Vertical bars with labels underneath and an optional dashed threshold line.
pub fn bar_chart(title: &str, bars: &[(String, f64)], threshold: Option<f64>) -> String {
    let (w_bar, gap, left, top, height, bottom) = (28.0, 8.0, 60.0, 40.0, 260.0, 70.0);
    let width = left + bars.len() as f64 * (w_bar + gap) + 20.0;
    let ymax = bars.iter().map(|b| b.1).chain(threshold).fold(0.0f64, f64::max).max(f64::MIN_POSITIVE) * 1.05;
    let y = |v: f64| top + height * (1.0 - v / ymax);

    let mut s = String::new();
    let total_h = top + height + bottom;
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{total_h:.0}" font-family="sans-serif" font-size="11">"#
    )
    .unwrap();
    writeln!(s, r#"<text x="{:.1}" y="20" text-anchor="middle" font-size="14">{}</text>"#, width / 2.0, escape(title))
        .unwrap();
    writeln!(s, r#"<line x1="{left}" y1="{top}" x2="{left}" y2="{:.1}" stroke="black"/>"#, top + height).unwrap();
    writeln!(
        s,
        r#"<line x1="{left}" y1="{0:.1}" x2="{1:.1}" y2="{0:.1}" stroke="black"/>"#,
        top + height,
        width - 10.0
    )
    .unwrap();
    for t in 0..=4 {
        let v = ymax * t as f64 / 4.0;
        writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{v:.3}</text>"#, left - 4.0, y(v) + 4.0).unwrap();
    }
    for (j, (label, v)) in bars.iter().enumerate() {
        let x = left + gap + j as f64 * (w_bar + gap);
        let h = (top + height) - y(v.max(0.0));
        writeln!(
            s,
            r#"<rect x="{x:.1}" y="{:.1}" width="{w_bar}" height="{h:.1}" fill="steelblue"><title>{} = {v:.6}</title></rect>"#,
            y(v.max(0.0)),
            escape(label)
        )
        .unwrap();
        let (lx, ly) = (x + w_bar / 2.0, top + height + 12.0);
        writeln!(
            s,
            r#"<text x="{lx:.1}" y="{ly:.1}" text-anchor="end" transform="rotate(-45 {lx:.1} {ly:.1})">{}</text>"#,
            escape(label)
        )
        .unwrap();
    }
    if let Some(t) = threshold {
        writeln!(
            s,
            r#"<line x1="{left}" y1="{0:.1}" x2="{1:.1}" y2="{0:.1}" stroke="crimson" stroke-dasharray="6 4"/>"#,
            y(t),
            width - 10.0
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_rect_per_bar() {
        let svg = bar_chart("r(i)", &[("x1".into(), 0.5), ("x2".into(), 0.3), ("x<3>".into(), 0.2)], Some(0.02));
        assert_eq!(svg.matches("<rect").count(), 3);
        assert!(svg.contains("stroke-dasharray"));
        assert!(svg.contains("x&lt;3&gt;"));
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
    }
}
