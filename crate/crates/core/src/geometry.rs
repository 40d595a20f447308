//! Small planar helpers for hull-distance statistics and plotting.

/// Convex hull in counter-clockwise order (Andrew's monotone chain), without
/// collinear points.
pub fn convex_hull(points: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: [f64; 2], a: [f64; 2], b: [f64; 2]| {
        (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    };
    let mut hull: Vec<[f64; 2]> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &[f64; 2]>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2
                && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

fn segment_distance(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2).clamp(0.0, 1.0)
    };
    let (cx, cy) = (a[0] + t * dx, a[1] + t * dy);
    ((p[0] - cx).powi(2) + (p[1] - cy).powi(2)).sqrt()
}

/// Euclidean distance from `p` to a convex polygon given counter-clockwise
/// (zero inside).
pub fn distance_to_convex_polygon(p: [f64; 2], polygon: &[[f64; 2]]) -> f64 {
    match polygon.len() {
        0 => f64::INFINITY,
        1 => ((p[0] - polygon[0][0]).powi(2) + (p[1] - polygon[0][1]).powi(2)).sqrt(),
        _ => {
            let inside = polygon.len() >= 3
                && (0..polygon.len()).all(|i| {
                    let a = polygon[i];
                    let b = polygon[(i + 1) % polygon.len()];
                    (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]) >= 0.0
                });
            if inside {
                return 0.0;
            }
            (0..polygon.len())
                .map(|i| segment_distance(p, polygon[i], polygon[(i + 1) % polygon.len()]))
                .fold(f64::INFINITY, f64::min)
        }
    }
}

/// Orders the vertices of a convex polygon counter-clockwise around their centroid.
pub fn order_counter_clockwise(points: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let n = points.len() as f64;
    let cx = points.iter().map(|p| p[0]).sum::<f64>() / n;
    let cy = points.iter().map(|p| p[1]).sum::<f64>() / n;
    let mut out = points.to_vec();
    out.sort_by(|a, b| {
        (a[1] - cy)
            .atan2(a[0] - cx)
            .total_cmp(&(b[1] - cy).atan2(b[0] - cx))
    });
    out
}
