//! Static SVG emission. Output is plain shapes with fixed precision,
//! so rendering is deterministic for a given input.

use std::fmt::Write as _;

use sup_core::{FrequencyPolygon, PointSet, Valley};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const PAD: f64 = 40.0;

/// Cluster colors, reused cyclically past twelve clusters.
pub const PALETTE: [&str; 12] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
    "#bcbd22", "#7f7f7f", "#aec7e8", "#98df8a",
];

fn header(out: &mut String) {
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(
        out,
        "<rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\" stroke=\"#cccccc\"/>"
    );
}

/// Affine map from data space onto the padded canvas, y inverted.
struct Frame {
    x0: f64,
    y0: f64,
    x_scale: f64,
    y_scale: f64,
}

impl Frame {
    fn fit(xs: impl Iterator<Item = (f64, f64)> + Clone) -> Frame {
        let mut lo = (f64::INFINITY, f64::INFINITY);
        let mut hi = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for (x, y) in xs {
            lo.0 = lo.0.min(x);
            lo.1 = lo.1.min(y);
            hi.0 = hi.0.max(x);
            hi.1 = hi.1.max(y);
        }
        let span = |a: f64, b: f64| if b - a > 0.0 { b - a } else { 1.0 };
        Frame {
            x0: lo.0,
            y0: lo.1,
            x_scale: (WIDTH - 2.0 * PAD) / span(lo.0, hi.0),
            y_scale: (HEIGHT - 2.0 * PAD) / span(lo.1, hi.1),
        }
    }

    fn x(&self, v: f64) -> f64 {
        PAD + (v - self.x0) * self.x_scale
    }

    fn y(&self, v: f64) -> f64 {
        HEIGHT - PAD - (v - self.y0) * self.y_scale
    }
}

fn cluster_sizes(labels: &[usize]) -> Vec<usize> {
    let k = labels.iter().max().map_or(0, |&m| m + 1);
    let mut sizes = vec![0usize; k];
    for &l in labels {
        sizes[l] += 1;
    }
    sizes
}

/// Scatter of the first two coordinates, one color per cluster. Tiny
/// clusters (size ≤ `tiny_threshold`) render as gray crosses so
/// isolated noise stands out from the real groups.
pub fn scatter_svg(points: &PointSet, labels: &[usize], tiny_threshold: usize) -> String {
    assert_eq!(points.n_points(), labels.len());
    assert!(points.dim() >= 2, "scatter needs two coordinates");
    let sizes = cluster_sizes(labels);
    let frame = Frame::fit((0..points.n_points()).map(|i| (points.row(i)[0], points.row(i)[1])));
    let mut out = String::new();
    header(&mut out);
    for i in 0..points.n_points() {
        let (x, y) = (frame.x(points.row(i)[0]), frame.y(points.row(i)[1]));
        if sizes[labels[i]] <= tiny_threshold {
            let _ = writeln!(
                out,
                "<path d=\"M {:.2} {:.2} l 6 6 m 0 -6 l -6 6\" stroke=\"#555555\" stroke-width=\"1.5\" fill=\"none\"/>",
                x - 3.0,
                y - 3.0
            );
        } else {
            let _ = writeln!(
                out,
                "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" fill=\"{}\"/>",
                PALETTE[labels[i] % PALETTE.len()]
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Frequency polygon with valley and peak markers.
pub fn polygon_svg(polygon: &FrequencyPolygon, valleys: &[Valley], peaks: &[f64]) -> String {
    let top = polygon.counts.iter().copied().max().unwrap_or(1).max(1) as f64;
    let frame = Frame::fit(
        polygon
            .bin_midpoints
            .iter()
            .map(|&m| (m, 0.0))
            .chain(polygon.bin_midpoints.iter().map(|&m| (m, top))),
    );
    let mut out = String::new();
    header(&mut out);
    let mut path = String::from("<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"");
    for (m, &c) in polygon.bin_midpoints.iter().zip(&polygon.counts) {
        let _ = write!(path, "{:.2},{:.2} ", frame.x(*m), frame.y(c as f64));
    }
    path.push_str("\"/>");
    out.push_str(&path);
    out.push('\n');
    for valley in valleys {
        let x = frame.x(valley.distance);
        let _ = writeln!(
            out,
            "<line x1=\"{x:.2}\" y1=\"{:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"#d62728\" stroke-dasharray=\"4 3\"/>",
            frame.y(0.0),
            frame.y(top)
        );
        let _ = writeln!(
            out,
            "<circle cx=\"{x:.2}\" cy=\"{:.2}\" r=\"4\" fill=\"#d62728\"/>",
            frame.y(polygon.counts[valley.bin] as f64)
        );
    }
    for &peak in peaks {
        let _ = writeln!(
            out,
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"4\" fill=\"#2ca02c\"/>",
            frame.x(peak),
            frame.y(top)
        );
    }
    // x-axis baseline
    let _ = writeln!(
        out,
        "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#333333\"/>",
        PAD,
        frame.y(0.0),
        WIDTH - PAD,
        frame.y(0.0)
    );
    out.push_str("</svg>\n");
    out
}

/// Motion up to `frame`: each point's path as a light polyline, with
/// its position at that frame drawn on top in its final cluster color.
pub fn trajectory_svg(snapshots: &[PointSet], frame_index: usize, labels: &[usize]) -> String {
    assert!(!snapshots.is_empty());
    let frame_index = frame_index.min(snapshots.len() - 1);
    let n = snapshots[0].n_points();
    let frame = Frame::fit(
        snapshots
            .iter()
            .flat_map(|s| (0..n).map(move |i| (s.row(i)[0], s.row(i)[1]))),
    );
    let mut out = String::new();
    header(&mut out);
    for i in 0..n {
        let mut path = String::from("<polyline fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"0.8\" points=\"");
        for snapshot in &snapshots[..=frame_index] {
            let _ = write!(
                path,
                "{:.2},{:.2} ",
                frame.x(snapshot.row(i)[0]),
                frame.y(snapshot.row(i)[1])
            );
        }
        path.push_str("\"/>");
        out.push_str(&path);
        out.push('\n');
    }
    let positions = &snapshots[frame_index];
    for i in 0..n {
        let _ = writeln!(
            out,
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"{}\"/>",
            frame.x(positions.row(i)[0]),
            frame.y(positions.row(i)[1]),
            PALETTE[labels[i] % PALETTE.len()]
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Expression-style heat map: one row per point, ordered by cluster
/// size (descending) then cluster id, with a diverging color scale
/// anchored at zero.
pub fn heatmap_svg(points: &PointSet, labels: &[usize]) -> String {
    assert_eq!(points.n_points(), labels.len());
    let sizes = cluster_sizes(labels);
    let mut order: Vec<usize> = (0..points.n_points()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(sizes[labels[i]]), labels[i], i));
    let peak = points
        .as_slice()
        .iter()
        .fold(0.0f64, |acc, &v| acc.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    let cell_w = (WIDTH - 2.0 * PAD) / points.dim() as f64;
    let cell_h = (HEIGHT - 2.0 * PAD) / points.n_points() as f64;
    let mut out = String::new();
    header(&mut out);
    for (r, &i) in order.iter().enumerate() {
        for (c, &v) in points.row(i).iter().enumerate() {
            let strength = (v.abs() / peak * 255.0).round() as u8;
            let color = if v >= 0.0 {
                format!("#ff{:02x}{:02x}", 255 - strength, 255 - strength)
            } else {
                format!("#{:02x}{:02x}ff", 255 - strength, 255 - strength)
            };
            let _ = writeln!(
                out,
                "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{cell_w:.2}\" height=\"{cell_h:.2}\" fill=\"{color}\"/>",
                PAD + c as f64 * cell_w,
                PAD + r as f64 * cell_h
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> (PointSet, Vec<usize>) {
        let points = PointSet::from_rows(&[
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![10.0, 10.0],
        ])
        .unwrap();
        (points, vec![0, 0, 0, 1])
    }

    #[test]
    fn scatter_is_deterministic_and_marks_tiny_clusters() {
        let (points, labels) = square();
        let a = scatter_svg(&points, &labels, 2);
        let b = scatter_svg(&points, &labels, 2);
        assert_eq!(a, b);
        assert!(a.starts_with("<?xml"));
        assert!(a.ends_with("</svg>\n"));
        assert_eq!(a.matches("<circle").count(), 3);
        assert_eq!(a.matches("<path").count(), 1, "singleton drawn as a cross");
    }

    #[test]
    fn polygon_plot_includes_all_bins_and_markers() {
        let polygon = sup_core::params::frequency_polygon(&[1.0, 1.1, 1.2, 5.0, 5.1], 6).unwrap();
        let report = sup_core::params::find_valleys(&polygon, 0.05);
        let svg = polygon_svg(&polygon, &report.valleys, &report.peaks);
        assert!(svg.contains("<polyline"));
        assert_eq!(
            svg.matches("stroke-dasharray").count(),
            report.valleys.len()
        );
    }

    #[test]
    fn trajectory_draws_one_path_per_point() {
        let (points, labels) = square();
        let later = PointSet::from_rows(&[
            vec![0.2, 0.2],
            vec![0.8, 0.2],
            vec![0.2, 0.8],
            vec![10.0, 10.0],
        ])
        .unwrap();
        let svg = trajectory_svg(&[points, later], 1, &labels);
        assert_eq!(svg.matches("<polyline").count(), 4);
        assert_eq!(svg.matches("<circle").count(), 4);
    }

    #[test]
    fn heatmap_emits_a_cell_per_value() {
        let (points, labels) = square();
        let svg = heatmap_svg(&points, &labels);
        assert_eq!(svg.matches("<rect").count(), 1 + 4 * 2); // background + cells
    }
}
