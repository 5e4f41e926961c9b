//! Static SVG drawing of the Abel-Jacobi image of a curve: each edge is a
//! colored segment between exactly computed positions in the Jacobian,
//! projected to the plane. Everything stays rational until the final
//! four-decimal formatting.

use ceresa_core::{MetricGraph, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];

const SIZE: i64 = 600;
const MARGIN: i64 = 40;

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Projects a point of `R^g` to the drawing plane. Low genus embeds
/// directly; from genus three on we take an oblique view of the first
/// three coordinates.
fn project(p: &[BigRational]) -> (BigRational, BigRational) {
    match p.len() {
        0 => (BigRational::zero(), BigRational::zero()),
        1 => (p[0].clone(), BigRational::zero()),
        2 => (p[0].clone(), p[1].clone()),
        _ => (
            &p[0] - &(&p[1] * ratio(1, 2)),
            &p[2] - &(&p[1] * ratio(1, 3)),
        ),
    }
}

fn constant_vec(v: &[Scalar]) -> Option<Vec<BigRational>> {
    v.iter().map(Scalar::as_rational).collect()
}

/// Fixed-point rendering with four decimals, rounding half away from zero.
fn format_fixed(r: &BigRational) -> String {
    let scaled = r * BigRational::from_integer(BigInt::from(10_000));
    let rounded = scaled.round().to_integer();
    let neg = rounded.is_negative();
    let abs = rounded.magnitude().to_string();
    let padded = format!("{abs:0>5}");
    let (int, frac) = padded.split_at(padded.len() - 4);
    format!("{}{}.{}", if neg { "-" } else { "" }, int, frac)
}

struct Viewport {
    min_x: BigRational,
    min_y: BigRational,
    scale: BigRational,
    height: BigRational,
}

impl Viewport {
    fn fit(points: &[(BigRational, BigRational)]) -> Viewport {
        let mut min_x = points[0].0.clone();
        let mut max_x = points[0].0.clone();
        let mut min_y = points[0].1.clone();
        let mut max_y = points[0].1.clone();
        for (x, y) in points {
            if x < &min_x {
                min_x = x.clone();
            }
            if x > &max_x {
                max_x = x.clone();
            }
            if y < &min_y {
                min_y = y.clone();
            }
            if y > &max_y {
                max_y = y.clone();
            }
        }
        let one = BigRational::from_integer(BigInt::from(1));
        let mut width = &max_x - &min_x;
        let mut height = &max_y - &min_y;
        if width.is_zero() {
            width = one.clone();
            min_x -= ratio(1, 2);
        }
        if height.is_zero() {
            height = one;
            min_y -= ratio(1, 2);
        }
        let span = BigRational::from_integer(BigInt::from(SIZE - 2 * MARGIN));
        let sx = &span / &width;
        let sy = &span / &height;
        let scale = if sx < sy { sx } else { sy };
        Viewport { min_x, min_y, scale, height }
    }

    fn to_svg(&self, x: &BigRational, y: &BigRational) -> (String, String) {
        let m = BigRational::from_integer(BigInt::from(MARGIN));
        let sx = &m + &(&(x - &self.min_x) * &self.scale);
        // svg y grows downward, so flip within the fitted height
        let sy = &m + &(&(&(&self.min_y + &self.height) - y) * &self.scale);
        (format_fixed(&sx), format_fixed(&sy))
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders the Abel-Jacobi image of the curve as an SVG document. Requires
/// every edge length to be a rational constant.
pub fn render_aj_svg(graph: &MetricGraph) -> Result<String, String> {
    if graph.edges.iter().any(|e| !e.length.is_constant()) {
        return Err("plotting needs numeric edge lengths; substitute values first".into());
    }
    let basis = graph
        .cycle_basis()
        .map_err(|e| format!("cannot build a cycle basis: {e}"))?;
    let positions = graph.vertex_positions(&basis, graph.basepoint);
    let pts: Vec<Vec<BigRational>> = positions
        .iter()
        .map(|p| constant_vec(p).expect("numeric lengths give numeric positions"))
        .collect();
    let projected: Vec<(BigRational, BigRational)> = pts.iter().map(|p| project(p)).collect();

    let mut anchors = projected.clone();
    for (i, e) in graph.edges.iter().enumerate() {
        let disp = constant_vec(&graph.displacement(&basis, i)).unwrap();
        let head: Vec<BigRational> = pts[e.from]
            .iter()
            .zip(&disp)
            .map(|(p, d)| p + d)
            .collect();
        anchors.push(project(&head));
    }
    let view = Viewport::fit(&anchors);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n"
    ));
    svg.push_str(&format!(
        "  <rect width=\"{SIZE}\" height=\"{SIZE}\" fill=\"white\"/>\n"
    ));

    for (i, e) in graph.edges.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let disp = constant_vec(&graph.displacement(&basis, i)).unwrap();
        let tail = &pts[e.from];
        let head: Vec<BigRational> = tail.iter().zip(&disp).map(|(p, d)| p + d).collect();
        let (tx, ty) = project(tail);
        let (hx, hy) = project(&head);
        let (x1, y1) = view.to_svg(&tx, &ty);
        let (x2, y2) = view.to_svg(&hx, &hy);
        let name = escape(&e.name);
        if disp.iter().all(|d| d.is_zero()) {
            // the edge lies in no basis cycle, so its image is a point
            svg.push_str(&format!(
                "  <circle cx=\"{x1}\" cy=\"{y1}\" r=\"4\" fill=\"{color}\"><title>{name}</title></circle>\n"
            ));
        } else {
            svg.push_str(&format!(
                "  <line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"{color}\" stroke-width=\"2.5\"><title>{name}</title></line>\n"
            ));
        }
        let half = ratio(1, 2);
        let mx = &(&tx + &hx) * &half;
        let my = &(&ty + &hy) * &half;
        let (lx, ly) = view.to_svg(&mx, &my);
        svg.push_str(&format!(
            "  <text x=\"{lx}\" y=\"{ly}\" dx=\"5\" dy=\"-5\" font-family=\"sans-serif\" font-size=\"13\" fill=\"{color}\">{name}</text>\n"
        ));
    }

    for (v, name) in graph.vertex_names.iter().enumerate() {
        let (px, py) = &projected[v];
        let (cx, cy) = view.to_svg(px, py);
        let name = escape(name);
        svg.push_str(&format!(
            "  <circle cx=\"{cx}\" cy=\"{cy}\" r=\"3\" fill=\"#333333\"/>\n"
        ));
        svg.push_str(&format!(
            "  <text x=\"{cx}\" y=\"{cy}\" dx=\"-5\" dy=\"14\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#333333\">{name}</text>\n"
        ));
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}
