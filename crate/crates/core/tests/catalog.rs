//! Catalog entries against the published feature table, their reference
//! points, and the deep-drawing problems against an exact vertex oracle.

use cohort_core::catalog::deep_drawing::{
    blank_holder_force_kn, coupled_process_vars, die_radius, DeepDrawParams, HOLDING_PRESSURE,
};
use cohort_core::catalog::{self, deep_drawing};
use cohort_core::penalty::evaluate_violations;
use cohort_core::{Interval, ProblemKind, ProblemSpec};

#[test]
fn feature_table() {
    use ProblemKind::*;
    let table = [
        ("G01", 13, Quadratic, [9, 0, 0, 0]),
        ("G02", 20, NonLinear, [0, 2, 0, 0]),
        ("G03", 10, Polynomial, [0, 0, 0, 1]),
        ("G04", 5, Quadratic, [0, 6, 0, 0]),
        ("G05", 4, Cubic, [2, 0, 0, 3]),
        ("G06", 2, Cubic, [0, 2, 0, 0]),
        ("G07", 10, Quadratic, [3, 5, 0, 0]),
        ("G08", 2, NonLinear, [0, 2, 0, 0]),
        ("G09", 7, Polynomial, [0, 4, 0, 0]),
        ("G10", 8, Linear, [3, 3, 0, 0]),
        ("G11", 2, Quadratic, [0, 0, 0, 1]),
        ("G12", 3, Quadratic, [0, 1, 0, 0]),
        ("G14", 10, NonLinear, [0, 0, 3, 0]),
        ("G15", 3, Quadratic, [0, 0, 1, 1]),
        ("G17", 6, NonLinear, [0, 0, 0, 4]),
        ("G18", 9, Quadratic, [0, 13, 0, 0]),
        ("G24", 2, Linear, [0, 2, 0, 0]),
    ];
    for (name, n, kind, [li, ni, le, ne]) in table {
        let spec = catalog::lookup(name).unwrap();
        let f = spec.features();
        assert_eq!(spec.dimension(), n, "{name}");
        assert_eq!(
            (f.kind, f.li, f.ni, f.le, f.ne),
            (kind, li, ni, le, ne),
            "{name}"
        );
        assert_eq!(spec.constraints().inequality_count(), li + ni, "{name}");
        assert_eq!(spec.constraints().equality_count(), le + ne, "{name}");
    }
}

#[test]
fn every_entry_resolves_by_name() {
    let all = catalog::all();
    assert_eq!(all.len(), 23);
    for spec in &all {
        let again = catalog::lookup(&spec.name().to_ascii_lowercase()).unwrap();
        assert_eq!(again.name(), spec.name());
        assert!(
            spec.bounds().iter().all(Interval::is_valid),
            "{}",
            spec.name()
        );
    }
}

/// Objective and constraint values at each reference point.
#[test]
fn reference_points_match_reference_values() {
    for spec in catalog::all() {
        let (Some(best), Some(x)) = (spec.known_best(), spec.known_best_point()) else {
            continue;
        };
        let f = spec.objective(x);
        assert!(
            (f - best).abs() <= 1e-4 * best.abs().max(1.0),
            "{}: f = {f}, listed {best}",
            spec.name()
        );
        let v = evaluate_violations(spec.constraints(), x).unwrap();
        assert!(
            v.total() <= 1e-3,
            "{}: violation {}",
            spec.name(),
            v.total()
        );
    }
}

#[test]
fn inequality_only_entries() {
    let with_equalities: Vec<String> = catalog::all()
        .iter()
        .filter(|p| p.constraints().equality_count() > 0)
        .map(|p| p.name().to_string())
        .collect();
    assert_eq!(with_equalities, ["G03", "G05", "G11", "G14", "G15", "G17"]);
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
fn solve4(mut a: [[f64; 4]; 4], mut b: [f64; 4]) -> Option<[f64; 4]> {
    for col in 0..4 {
        let piv = (col..4).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..4 {
            let k = a[row][col] / a[col][col];
            let pivot = a[col];
            for (v, p) in a[row][col..].iter_mut().zip(&pivot[col..]) {
                *v -= k * p;
            }
            b[row] -= k * b[col];
        }
    }
    let mut x = [0.0; 4];
    for row in (0..4).rev() {
        let s: f64 = (row + 1..4).map(|c| a[row][c] * x[c]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    Some(x)
}

/// Minimum of an affine objective over the box plus `3 x2 <= x3 <= 6 x2`,
/// by enumerating every vertex of the polytope.
fn vertex_minimum(spec: &ProblemSpec) -> (f64, [f64; 4]) {
    let b = spec.bounds();
    // Rows `a . x = rhs` for every bounding hyperplane.
    let mut planes: Vec<([f64; 4], f64)> = Vec::new();
    for (d, iv) in b.iter().enumerate() {
        let mut e = [0.0; 4];
        e[d] = 1.0;
        planes.push((e, iv.lo));
        planes.push((e, iv.hi));
    }
    planes.push(([0.0, 0.0, 3.0, -1.0], 0.0));
    planes.push(([0.0, 0.0, -6.0, 1.0], 0.0));
    let feasible = |x: &[f64; 4]| {
        b.iter()
            .zip(x)
            .all(|(iv, v)| *v >= iv.lo - 1e-9 && *v <= iv.hi + 1e-9)
            && 3.0 * x[2] - x[3] <= 1e-9
            && x[3] - 6.0 * x[2] <= 1e-9
    };
    let mut best = (f64::INFINITY, [0.0; 4]);
    let n = planes.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    let rows = [planes[i], planes[j], planes[k], planes[l]];
                    let a = rows.map(|r| r.0);
                    let rhs = rows.map(|r| r.1);
                    if let Some(x) = solve4(a, rhs) {
                        if feasible(&x) {
                            let f = spec.objective(&x);
                            if f < best.0 {
                                best = (f, x);
                            }
                        }
                    }
                }
            }
        }
    }
    best
}

#[test]
fn deep_drawing_references_are_vertex_optima() {
    for spec in [
        deep_drawing::springback(),
        deep_drawing::thinning(),
        deep_drawing::thickening(),
    ] {
        let (oracle, x) = vertex_minimum(&spec);
        let listed = spec.known_best().unwrap();
        assert!(
            (oracle - listed).abs() < 1e-12,
            "{}: oracle {oracle} at {x:?}, listed {listed}",
            spec.name()
        );
    }
    assert!((vertex_minimum(&deep_drawing::springback()).0 - 0.0636178124).abs() < 1e-9);
    assert!((vertex_minimum(&deep_drawing::thinning()).0 + 1.052055).abs() < 1e-9);
    assert!((vertex_minimum(&deep_drawing::thickening()).0 - 1.2430806).abs() < 1e-9);
}

/// Smallest `v` in `[lo, hi]` with `f(v) >= target`, for increasing `f`.
fn bisect(f: impl Fn(f64) -> f64, target: f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn coupled_variables_invert() {
    // Geometry recovered by bisection reproduces the requested force and radius.
    let (z, s0) = (2.0, 0.8);
    for (bhf, r_d) in [(16.931, 2.886), (3.89, 2.5), (21.99, 3.2)] {
        let d0 = bisect(
            |d| blank_holder_force_kn(d, z, HOLDING_PRESSURE),
            bhf,
            0.0,
            1e3,
        );
        let d1 = -bisect(|d| die_radius(d0, -d, s0), r_d, -1e3, 1e3);
        assert!((blank_holder_force_kn(d0, z, HOLDING_PRESSURE) - bhf).abs() < 1e-9);
        assert!((die_radius(d0, d1, s0) - r_d).abs() < 1e-9);
        let p = DeepDrawParams::new(d0, d1, z, 0.1, s0);
        match coupled_process_vars(&p) {
            Ok(v) => {
                assert!((v.bhf - bhf).abs() < 1e-9);
                assert!((v.r_d - r_d).abs() < 1e-9);
                assert_eq!(v.r_p, Interval::new(3.0 * v.r_d, 6.0 * v.r_d));
            }
            // The published force and radius cannot both come from a
            // positive-diameter geometry: the radius needs d0 - d1 > d0.
            Err(_) => assert!(d1 <= 0.0, "d0 {d0} d1 {d1}"),
        }
    }
    let d0 = 60.0;
    let v = coupled_process_vars(&DeepDrawParams::new(d0, 40.0, z, 0.1, s0)).unwrap();
    let back = bisect(
        |d| blank_holder_force_kn(d, z, HOLDING_PRESSURE),
        v.bhf,
        0.0,
        1e3,
    );
    assert!((back - d0).abs() < 1e-9);
}
