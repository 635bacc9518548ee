use num_traits::Zero;
use chazylab::classifier::table1;
use chazylab::conformal::{
    barrier_radius, barrier_radius_geometric, invert_to_puiseux_rational, vertices, SchwarzMap,
};

#[test]
fn radius_oracles_agree_on_base_rows() {
    for row in table1().iter().filter(|r| !r.is_starred()) {
        for k in [7, 8, 12] {
            let t = row.triangle_at(k).unwrap();
            let closed = barrier_radius(&t).unwrap();
            let geo = barrier_radius_geometric(&t).unwrap();
            let rel = (closed - geo.radius).abs() / closed;
            assert!(rel < 1e-10, "{} k={k}: {closed} vs {}", row.label, geo.radius);
            assert!((geo.d * geo.d - geo.r * geo.r - geo.radius * geo.radius).abs() < 1e-12 * closed * closed);
            assert!((geo.x - geo.z1.norm()).abs() == 0.0);
            let (z1, zinf) = vertices(&SchwarzMap::new(&t).unwrap()).unwrap();
            assert!(z1.norm() < closed && zinf.norm() < closed);
        }
    }
}

#[test]
fn schwarzian_on_all_rows() {
    for row in table1() {
        for k in [7, 8, 12] {
            let t = row.triangle_at(k).unwrap();
            let m = SchwarzMap::new(&t).unwrap();
            let p = invert_to_puiseux_rational(&m, 6).unwrap();
            assert!(
                p.schwarzian_residual(&t).iter().all(|v| v.is_zero()),
                "{} k={k}",
                row.label
            );
        }
    }
}
