//! SVG rendering of image curves.

use std::fmt::Write;

use suffridge_core::{Complex64, Error, Result};

/// Canvas and sampling for a rendered curve.
#[derive(Debug, Clone)]
pub struct RenderSpec {
    pub width: u32,
    pub height: u32,
    pub samples: usize,
    pub stroke: String,
}

impl RenderSpec {
    pub fn new(width: u32, height: u32, samples: usize, stroke: &str) -> Result<Self> {
        if samples < 256 {
            return Err(Error::InvalidParameter(format!(
                "rendering needs at least 256 samples, got {samples}"
            )));
        }
        if width < 64 || height < 64 {
            return Err(Error::InvalidParameter(format!(
                "canvas must be at least 64x64, got {width}x{height}"
            )));
        }
        Ok(Self {
            width,
            height,
            samples,
            stroke: stroke.to_string(),
        })
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

/// A closed path through `curve` and a dot at each of `marks`, scaled to fit
/// the canvas with a 5% margin and the imaginary axis pointing up.
pub fn render(spec: &RenderSpec, curve: &[Complex64], marks: &[Complex64]) -> String {
    let (mut x0, mut x1, mut y0, mut y1) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for w in curve.iter().chain(marks) {
        x0 = x0.min(w.re);
        x1 = x1.max(w.re);
        y0 = y0.min(w.im);
        y1 = y1.max(w.im);
    }
    let (w, h) = (spec.width as f64, spec.height as f64);
    let (mx, my) = (0.05 * w, 0.05 * h);
    let span_x = (x1 - x0).max(f64::MIN_POSITIVE);
    let span_y = (y1 - y0).max(f64::MIN_POSITIVE);
    let scale = ((w - 2.0 * mx) / span_x).min((h - 2.0 * my) / span_y);
    let ox = mx + 0.5 * (w - 2.0 * mx - scale * span_x);
    let oy = my + 0.5 * (h - 2.0 * my - scale * span_y);
    let map = |z: &Complex64| (ox + scale * (z.re - x0), h - oy - scale * (z.im - y0));

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        spec.width, spec.height, spec.width, spec.height
    );
    let mut d = String::new();
    for (i, z) in curve.iter().enumerate() {
        let (x, y) = map(z);
        let _ = write!(
            d,
            "{}{} {} ",
            if i == 0 { "M" } else { "L" },
            num(x),
            num(y)
        );
    }
    d.push('Z');
    let _ = writeln!(
        s,
        r#"<path d="{d}" fill="none" stroke="{}" stroke-width="1"/>"#,
        spec.stroke
    );
    for z in marks {
        let (x, y) = map(z);
        let _ = writeln!(
            s,
            r#"<circle cx="{}" cy="{}" r="3" fill="{}"/>"#,
            num(x),
            num(y),
            spec.stroke
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_validation() {
        assert!(RenderSpec::new(512, 512, 100, "black").is_err());
        assert!(RenderSpec::new(32, 512, 1024, "black").is_err());
    }

    #[test]
    fn closed_path_inside_margin() {
        let spec = RenderSpec::new(200, 100, 256, "black").unwrap();
        let curve: Vec<Complex64> = (0..256)
            .map(|k| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / 256.0))
            .collect();
        let svg = render(&spec, &curve, &[Complex64::new(1.0, 0.0)]);
        assert!(svg.contains("Z\""));
        assert_eq!(svg.matches("<circle").count(), 1);
        let d = svg.split("d=\"").nth(1).unwrap().split('"').next().unwrap();
        for pair in d
            .trim_end_matches('Z')
            .split(['M', 'L'])
            .filter(|p| !p.trim().is_empty())
        {
            let xy: Vec<f64> = pair
                .split_whitespace()
                .map(|v| v.parse().unwrap())
                .collect();
            assert!(xy[0] >= 5.0 - 1e-9 && xy[0] <= 195.0 + 1e-9);
            assert!(xy[1] >= 5.0 - 1e-9 && xy[1] <= 95.0 + 1e-9);
        }
    }
}
