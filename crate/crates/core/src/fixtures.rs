//! Bundled triangulations.
//!
//! * the five triangulations `T0..T4` of a digon with two orbifold points,
//!   related by flips at arcs `1, 3, 2, 3` (the affine type C̃₂ tower);
//! * a hexagon with two orbifold points;
//! * disks with one orbifold point and 3–5 marked points;
//! * the two local configurations used by the mutation case tables: a
//!   quadrilateral inside an octagon, and a triangle with a pending side.

use crate::orbifold::Triangulation;

const C2TILDE: [&str; 5] = [
    include_str!("../fixtures/c2tilde_t0.json"),
    include_str!("../fixtures/c2tilde_t1.json"),
    include_str!("../fixtures/c2tilde_t2.json"),
    include_str!("../fixtures/c2tilde_t3.json"),
    include_str!("../fixtures/c2tilde_t4.json"),
];

const DISK: [&str; 3] = [
    include_str!("../fixtures/disk_one_orbifold_point_m3.json"),
    include_str!("../fixtures/disk_one_orbifold_point_m4.json"),
    include_str!("../fixtures/disk_one_orbifold_point_m5.json"),
];

fn load(s: &str) -> Triangulation {
    serde_json::from_str(s).expect("bundled fixture parses")
}

/// `T0 .. T4`; `T_{j+1}` is the flip of `T_j` along the address `(1, 3, 2, 3)`.
pub fn c2tilde_triangulations() -> Vec<Triangulation> {
    C2TILDE.iter().map(|s| load(s)).collect()
}

/// Flip address from `T0` to `T4`, 0-based.
pub const C2TILDE_ADDRESS: [usize; 4] = [0, 2, 1, 2];

pub fn hexagon_two_orbifold_points() -> Triangulation {
    load(include_str!("../fixtures/hexagon_two_orbifold_points.json"))
}

/// Disk with one orbifold point and `m ∈ {3, 4, 5}` marked points.
pub fn disk_one_orbifold_point(m: usize) -> Triangulation {
    assert!((3..=5).contains(&m), "bundled disks have 3 to 5 marked points");
    load(DISK[m - 3])
}

/// Digon whose triangulation has a single internal triangle with two pending sides.
pub fn digon_two_orbifold_points() -> Triangulation {
    load(include_str!("../fixtures/digon_two_orbifold_points.json"))
}

/// Quadrilateral `q, p, j, i` with diagonal `k`, all sides arcs (bordered by ears).
pub fn octagon_quadrilateral() -> Triangulation {
    load(include_str!("../fixtures/octagon_quadrilateral.json"))
}

/// Triangle `R, K, L` with pending side `K`, the other sides bordered by ears.
pub fn pending_triangle() -> Triangulation {
    load(include_str!("../fixtures/pending_triangle.json"))
}

/// Every bundled triangulation with a short name.
pub fn all() -> Vec<(String, Triangulation)> {
    let mut v: Vec<(String, Triangulation)> =
        c2tilde_triangulations().into_iter().enumerate().map(|(i, t)| (format!("c2tilde-t{i}"), t)).collect();
    v.push(("hexagon".into(), hexagon_two_orbifold_points()));
    for m in 3..=5 {
        v.push((format!("disk-m{m}"), disk_one_orbifold_point(m)));
    }
    v.push(("digon".into(), digon_two_orbifold_points()));
    v.push(("octagon".into(), octagon_quadrilateral()));
    v.push(("pending-triangle".into(), pending_triangle()));
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_is_valid_and_flip_compatible() {
        for (name, t) in all() {
            assert!(t.validate().is_empty(), "{name}: {:?}", t.validate());
            let b = t.b_matrix().unwrap();
            for k in 0..t.n() {
                let f = t.flip(k).unwrap();
                assert!(f.validate().is_empty(), "{name} flip {k}");
                assert_eq!(f.b_matrix().unwrap(), b.mutate(k).unwrap(), "{name} flip {k}");
            }
        }
    }

    #[test]
    fn disk_with_three_marked_points() {
        let t = disk_one_orbifold_point(3);
        assert_eq!(t.b_matrix().unwrap().b, vec![vec![0, -1], vec![2, 0]]);
    }
}
