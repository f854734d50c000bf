//! CSV tables and small SVG diagrams of multiplicities.

use std::fmt::Write;

pub fn csv(d: usize, rows: &[(Vec<i64>, i64)]) -> String {
    let mut out = String::new();
    let header: Vec<String> = (1..=d).map(|i| format!("w{i}")).collect();
    out.push_str(&header.join(","));
    out.push_str(",mult\n");
    for (w, m) in rows {
        for x in w {
            write!(out, "{x},").unwrap();
        }
        writeln!(out, "{m}").unwrap();
    }
    out
}

fn color(m: i64, max: i64) -> String {
    if m == 0 {
        return "#ffffff".into();
    }
    let t = (m.abs() as f64 / max.max(1) as f64).clamp(0.0, 1.0);
    let fade = (230.0 * (1.0 - t)) as u8 + 25;
    if m > 0 {
        format!("#{fade:02x}{fade:02x}ff")
    } else {
        format!("#ff{fade:02x}{fade:02x}")
    }
}

/// Stem plot for `d = 1`, heat grid for `d = 2`; `None` otherwise.
pub fn svg(d: usize, rows: &[(Vec<i64>, i64)]) -> Option<String> {
    if rows.is_empty() {
        return None;
    }
    let max = rows.iter().map(|(_, m)| m.abs()).max().unwrap_or(1).max(1);
    let mut out = String::new();
    match d {
        1 => {
            let (w, h, mid) = (12 * rows.len() + 20, 220usize, 110i64);
            writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}">"#).unwrap();
            writeln!(out, r#"<line x1="0" y1="{mid}" x2="{w}" y2="{mid}" stroke="black"/>"#).unwrap();
            for (i, (p, m)) in rows.iter().enumerate() {
                let x = 16 + 12 * i as i64;
                let y = mid - 90 * m / max;
                writeln!(
                    out,
                    r#"<line x1="{x}" y1="{mid}" x2="{x}" y2="{y}" stroke="{}"/><circle cx="{x}" cy="{y}" r="3"><title>{} : {m}</title></circle>"#,
                    color(*m, max),
                    p[0]
                )
                .unwrap();
            }
        }
        2 => {
            let xs: Vec<i64> = rows.iter().map(|(p, _)| p[0]).collect();
            let ys: Vec<i64> = rows.iter().map(|(p, _)| p[1]).collect();
            let (x0, x1) = (*xs.iter().min()?, *xs.iter().max()?);
            let (y0, y1) = (*ys.iter().min()?, *ys.iter().max()?);
            let cell = 14;
            let (w, h) = ((x1 - x0 + 1) * cell, (y1 - y0 + 1) * cell);
            writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}">"#).unwrap();
            for (p, m) in rows {
                let x = (p[0] - x0) * cell;
                let y = (y1 - p[1]) * cell;
                writeln!(
                    out,
                    r#"<rect x="{x}" y="{y}" width="{cell}" height="{cell}" fill="{}" stroke="silver"><title>({}, {}) : {m}</title></rect>"#,
                    color(*m, max),
                    p[0],
                    p[1]
                )
                .unwrap();
            }
        }
        _ => return None,
    }
    out.push_str("</svg>\n");
    Some(out)
}
