//! Minimal static SVG line charts.
//!
//! Just enough plotting for the sweep outputs: linear axes, a handful of
//! tick labels, solid/dashed/dotted polylines and a legend. The renderer is
//! deterministic; identical inputs produce identical bytes.

use std::fmt::Write;

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 78.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 42.0;
const MARGIN_BOTTOM: f64 = 58.0;

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#555555"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineStyle {
    Solid,
    Dashed,
    Dotted,
    /// Markers only, no connecting line.
    Points,
}

impl LineStyle {
    fn dash_array(&self) -> Option<&'static str> {
        match self {
            LineStyle::Solid | LineStyle::Points => None,
            LineStyle::Dashed => Some("9,6"),
            LineStyle::Dotted => Some("2,5"),
        }
    }
}

#[derive(Debug, Clone)]
struct Series {
    label: String,
    style: LineStyle,
    points: Vec<(f64, f64)>,
}

/// A single-panel line chart.
#[derive(Debug, Clone)]
pub struct LineChart {
    title: String,
    x_label: String,
    y_label: String,
    series: Vec<Series>,
}

impl LineChart {
    pub fn new(
        title: impl Into<String>,
        x_label: impl Into<String>,
        y_label: impl Into<String>,
    ) -> Self {
        Self {
            title: title.into(),
            x_label: x_label.into(),
            y_label: y_label.into(),
            series: Vec::new(),
        }
    }

    /// Adds a series; non-finite points are dropped.
    pub fn add_series(
        &mut self,
        label: impl Into<String>,
        style: LineStyle,
        points: impl IntoIterator<Item = (f64, f64)>,
    ) -> &mut Self {
        let points: Vec<(f64, f64)> = points
            .into_iter()
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .collect();
        self.series.push(Series { label: label.into(), style, points });
        self
    }

    /// Renders the chart to a standalone SVG document.
    pub fn render(&self) -> String {
        let mut svg = String::with_capacity(8192);
        let _ = write!(
            svg,
            r##"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"##
        );
        svg.push_str(r##"<rect width="100%" height="100%" fill="white"/>"##);

        let (x_range, y_range) = self.data_ranges();
        let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
        let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
        let to_px = |x: f64, y: f64| -> (f64, f64) {
            let px = MARGIN_LEFT + (x - x_range.0) / (x_range.1 - x_range.0) * plot_w;
            let py = MARGIN_TOP + (1.0 - (y - y_range.0) / (y_range.1 - y_range.0)) * plot_h;
            (px, py)
        };

        // frame and axes ticks
        let _ = write!(
            svg,
            r##"<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="#333" stroke-width="1"/>"##
        );
        for i in 0..=5 {
            let fx = i as f64 / 5.0;
            let x_val = x_range.0 + fx * (x_range.1 - x_range.0);
            let y_val = y_range.0 + fx * (y_range.1 - y_range.0);
            let (px, _) = to_px(x_val, y_range.0);
            let (_, py) = to_px(x_range.0, y_val);
            let bottom = MARGIN_TOP + plot_h;
            let _ = write!(
                svg,
                r##"<line x1="{px:.2}" y1="{bottom}" x2="{px:.2}" y2="{:.2}" stroke="#333"/>"##,
                bottom + 5.0
            );
            let _ = write!(
                svg,
                r##"<text x="{px:.2}" y="{:.2}" font-size="12" text-anchor="middle" font-family="sans-serif">{}</text>"##,
                bottom + 19.0,
                tick_label(x_val)
            );
            let _ = write!(
                svg,
                r##"<line x1="{:.2}" y1="{py:.2}" x2="{MARGIN_LEFT}" y2="{py:.2}" stroke="#333"/>"##,
                MARGIN_LEFT - 5.0
            );
            let _ = write!(
                svg,
                r##"<text x="{:.2}" y="{py:.2}" font-size="12" text-anchor="end" dominant-baseline="middle" font-family="sans-serif">{}</text>"##,
                MARGIN_LEFT - 9.0,
                tick_label(y_val)
            );
        }

        // zero line when the y range straddles zero
        if y_range.0 < 0.0 && y_range.1 > 0.0 {
            let (_, py) = to_px(x_range.0, 0.0);
            let _ = write!(
                svg,
                r##"<line x1="{MARGIN_LEFT}" y1="{py:.2}" x2="{:.2}" y2="{py:.2}" stroke="#bbb" stroke-width="0.7"/>"##,
                MARGIN_LEFT + plot_w
            );
        }

        // series
        for (index, series) in self.series.iter().enumerate() {
            let color = PALETTE[index % PALETTE.len()];
            if series.style == LineStyle::Points {
                for &(x, y) in &series.points {
                    let (px, py) = to_px(x, y);
                    let _ = write!(
                        svg,
                        r##"<circle cx="{px:.2}" cy="{py:.2}" r="3" fill="{color}"/>"##
                    );
                }
            } else if series.points.len() > 1 {
                let mut path = String::new();
                for &(x, y) in &series.points {
                    let (px, py) = to_px(x, y);
                    if path.is_empty() {
                        let _ = write!(path, "M{px:.2},{py:.2}");
                    } else {
                        let _ = write!(path, " L{px:.2},{py:.2}");
                    }
                }
                let dash = series
                    .style
                    .dash_array()
                    .map(|d| format!(r##" stroke-dasharray="{d}""##))
                    .unwrap_or_default();
                let _ = write!(
                    svg,
                    r##"<path d="{path}" fill="none" stroke="{color}" stroke-width="1.8"{dash}/>"##
                );
            }
        }

        // legend
        for (index, series) in self.series.iter().enumerate() {
            let color = PALETTE[index % PALETTE.len()];
            let ly = MARGIN_TOP + 16.0 + 18.0 * index as f64;
            let lx = MARGIN_LEFT + plot_w - 190.0;
            let dash = series
                .style
                .dash_array()
                .map(|d| format!(r##" stroke-dasharray="{d}""##))
                .unwrap_or_default();
            let _ = write!(
                svg,
                r##"<line x1="{lx}" y1="{ly}" x2="{:.2}" y2="{ly}" stroke="{color}" stroke-width="1.8"{dash}/>"##,
                lx + 28.0
            );
            let _ = write!(
                svg,
                r##"<text x="{:.2}" y="{ly}" font-size="12" dominant-baseline="middle" font-family="sans-serif">{}</text>"##,
                lx + 34.0,
                escape(&series.label)
            );
        }

        // labels
        let _ = write!(
            svg,
            r##"<text x="{:.2}" y="24" font-size="15" text-anchor="middle" font-family="sans-serif">{}</text>"##,
            MARGIN_LEFT + plot_w / 2.0,
            escape(&self.title)
        );
        let _ = write!(
            svg,
            r##"<text x="{:.2}" y="{:.2}" font-size="13" text-anchor="middle" font-family="sans-serif">{}</text>"##,
            MARGIN_LEFT + plot_w / 2.0,
            HEIGHT - 14.0,
            escape(&self.x_label)
        );
        let _ = write!(
            svg,
            r##"<text x="18" y="{:.2}" font-size="13" text-anchor="middle" font-family="sans-serif" transform="rotate(-90 18 {:.2})">{}</text>"##,
            MARGIN_TOP + plot_h / 2.0,
            MARGIN_TOP + plot_h / 2.0,
            escape(&self.y_label)
        );

        svg.push_str("</svg>\n");
        svg
    }

    fn data_ranges(&self) -> ((f64, f64), (f64, f64)) {
        let mut x = (f64::INFINITY, f64::NEG_INFINITY);
        let mut y = (f64::INFINITY, f64::NEG_INFINITY);
        for series in &self.series {
            for &(px, py) in &series.points {
                x.0 = x.0.min(px);
                x.1 = x.1.max(px);
                y.0 = y.0.min(py);
                y.1 = y.1.max(py);
            }
        }
        if !x.0.is_finite() || !x.1.is_finite() {
            x = (0.0, 1.0);
            y = (0.0, 1.0);
        }
        let pad = |range: (f64, f64)| -> (f64, f64) {
            let span = range.1 - range.0;
            if span <= 0.0 {
                let scale = range.0.abs().max(1.0);
                (range.0 - 0.05 * scale, range.1 + 0.05 * scale)
            } else {
                (range.0 - 0.05 * span, range.1 + 0.05 * span)
            }
        };
        (pad(x), pad(y))
    }
}

fn tick_label(value: f64) -> String {
    if value == 0.0 {
        return "0".to_string();
    }
    let magnitude = value.abs();
    if (1e-3..1e4).contains(&magnitude) {
        let text = format!("{value:.3}");
        let trimmed = text.trim_end_matches('0').trim_end_matches('.');
        trimmed.to_string()
    } else {
        format!("{value:.2e}")
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_wellformed_svg() {
        let mut chart = LineChart::new("two-lobe profile", "x (m)", "intensity");
        chart.add_series(
            "exact",
            LineStyle::Solid,
            (0..100).map(|i| {
                let x = i as f64 / 50.0 - 1.0;
                (x, x * x * (-x * x).exp())
            }),
        );
        chart.add_series("input", LineStyle::Dotted, [(-1.0, 0.2), (0.0, 1.0), (1.0, 0.2)]);
        let svg = chart.render();
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<path").count(), 2);
        assert!(svg.contains("stroke-dasharray"));
        assert!(svg.contains("two-lobe profile"));
        // deterministic output
        assert_eq!(svg, chart.render());
    }

    #[test]
    fn drops_non_finite_points_and_handles_empty() {
        let mut chart = LineChart::new("t", "x", "y");
        chart.add_series("s", LineStyle::Solid, [(0.0, f64::NAN), (1.0, 1.0)]);
        let svg = chart.render();
        assert!(svg.contains("</svg>"));

        let empty = LineChart::new("empty", "x", "y").render();
        assert!(empty.contains("</svg>"));
    }

    #[test]
    fn tick_labels_are_compact() {
        assert_eq!(tick_label(0.0), "0");
        assert_eq!(tick_label(2.5), "2.5");
        assert_eq!(tick_label(1.0), "1");
        assert_eq!(tick_label(4.4e-6), "4.40e-6");
    }
}
