//! Combinatorial triangulations of unpunctured orbifolds with order-two
//! orbifold points, their flips, exchange matrices and gentle quivers.
//!
//! A triangulation is a list of side triples. Each triple is listed in
//! clockwise order as seen from inside the triangle, and a pending arc (the
//! arc cutting out a monogon around an orbifold point) occurs in exactly one
//! triple. Within a triple, whenever side `y` follows side `x` and both are
//! arcs, the quiver has an arrow `y → x`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed::ExchangeMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ArcSpec {
    pub id: String,
    #[serde(default)]
    pub pending: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triangulation {
    pub arcs: Vec<ArcSpec>,
    #[serde(default)]
    pub boundary: Vec<String>,
    pub triangles: Vec<[String; 3]>,
}

fn rotate_to(t: &[String; 3], side: &str) -> Option<[String; 3]> {
    let p = t.iter().position(|s| s == side)?;
    Some([t[p].clone(), t[(p + 1) % 3].clone(), t[(p + 2) % 3].clone()])
}

/// Rotation-normal form of a triple (smallest rotation).
fn normal_triple(t: &[String; 3]) -> [String; 3] {
    (0..3)
        .map(|r| [t[r].clone(), t[(r + 1) % 3].clone(), t[(r + 2) % 3].clone()])
        .min()
        .unwrap()
}

impl Triangulation {
    pub fn n(&self) -> usize {
        self.arcs.len()
    }

    pub fn arc_index(&self, id: &str) -> Option<usize> {
        self.arcs.iter().position(|a| a.id == id)
    }

    pub fn is_pending(&self, i: usize) -> bool {
        self.arcs[i].pending
    }

    pub fn arc_ids(&self) -> Vec<String> {
        self.arcs.iter().map(|a| a.id.clone()).collect()
    }

    /// Symmetrizer entries: 2 for pending arcs, 1 otherwise.
    pub fn symmetrizer(&self) -> Vec<i64> {
        self.arcs.iter().map(|a| if a.pending { 2 } else { 1 }).collect()
    }

    /// Every violated invariant, as human-readable lines.
    pub fn validate(&self) -> Vec<String> {
        let mut report = Vec::new();
        let mut seen = BTreeSet::new();
        for id in self.arcs.iter().map(|a| &a.id).chain(&self.boundary) {
            if !seen.insert(id.clone()) {
                report.push(format!("duplicate id `{id}`"));
            }
        }
        let mut count: BTreeMap<&str, usize> = BTreeMap::new();
        for (t, tri) in self.triangles.iter().enumerate() {
            for s in tri {
                if !seen.contains(s) {
                    report.push(format!("triangle {t}: unknown side `{s}`"));
                }
                *count.entry(s.as_str()).or_default() += 1;
            }
            if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
                report.push(format!("triangle {t}: repeated side (self-folded triangles are not supported)"));
            }
        }
        for a in &self.arcs {
            let c = count.get(a.id.as_str()).copied().unwrap_or(0);
            let want = if a.pending { 1 } else { 2 };
            if c != want {
                report.push(format!(
                    "arc multiplicity: `{}` ({}) occurs in {c} triangle slots, expected {want}",
                    a.id,
                    if a.pending { "pending" } else { "ordinary" }
                ));
            }
        }
        for b in &self.boundary {
            let c = count.get(b.as_str()).copied().unwrap_or(0);
            if c != 1 {
                report.push(format!("boundary multiplicity: `{b}` occurs in {c} triangle slots, expected 1"));
            }
        }
        report
    }

    pub fn check(&self) -> Result<()> {
        let r = self.validate();
        if r.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidTriangulation(r.join("; ")))
        }
    }

    fn triangles_with(&self, id: &str) -> Vec<usize> {
        (0..self.triangles.len()).filter(|&t| self.triangles[t].iter().any(|s| s == id)).collect()
    }

    /// Flip at arc `k` (by index).
    pub fn flip(&self, k: usize) -> Result<Self> {
        let arc = self.arcs.get(k).ok_or_else(|| Error::NotAnArc(format!("#{k}")))?;
        self.flip_id(&arc.id.clone())
    }

    /// Flip at the arc with the given id.
    pub fn flip_id(&self, id: &str) -> Result<Self> {
        let k = self.arc_index(id).ok_or_else(|| Error::NotAnArc(id.to_string()))?;
        self.check()?;
        let ts = self.triangles_with(id);
        let mut out = self.clone();
        if self.arcs[k].pending {
            // the monogon's orbifold point moves to the other side: reverse orientation
            let t = ts[0];
            let tri = &self.triangles[t];
            out.triangles[t] = [tri[2].clone(), tri[1].clone(), tri[0].clone()];
        } else {
            let (ta, tb) = (ts[0], ts[1]);
            let a = rotate_to(&self.triangles[ta], id).unwrap();
            let b = rotate_to(&self.triangles[tb], id).unwrap();
            out.triangles[ta] = [a[0].clone(), a[2].clone(), b[1].clone()];
            out.triangles[tb] = [b[0].clone(), b[2].clone(), a[1].clone()];
        }
        Ok(out)
    }

    /// Equality of triangle multisets up to cyclic rotation of each triple.
    pub fn same_triangles(&self, other: &Self) -> bool {
        let norm = |t: &Self| {
            let mut v: Vec<[String; 3]> = t.triangles.iter().map(normal_triple).collect();
            v.sort();
            v
        };
        self.arcs == other.arcs && norm(self) == norm(other)
    }

    /// A canonical copy (triangles rotation-normalised and sorted), for hashing.
    pub fn normalized(&self) -> Self {
        let mut t = self.clone();
        t.triangles = t.triangles.iter().map(normal_triple).collect();
        t.triangles.sort();
        t
    }

    /// Arc–arc pairs `(x, y)` with `y` following `x` in some triangle, with the triangle index.
    fn consecutive_arc_pairs(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (t, tri) in self.triangles.iter().enumerate() {
            for s in 0..3 {
                let (x, y) = (&tri[s], &tri[(s + 1) % 3]);
                if let (Some(xi), Some(yi)) = (self.arc_index(x), self.arc_index(y)) {
                    out.push((xi, yi, t));
                }
            }
        }
        out
    }

    /// The exchange matrix with its symmetrizer.
    pub fn b_matrix(&self) -> Result<ExchangeMatrix> {
        self.check()?;
        let n = self.n();
        let mut b = vec![vec![0i64; n]; n];
        for (x, y, _) in self.consecutive_arc_pairs() {
            b[x][y] += if self.arcs[y].pending { 2 } else { 1 };
            b[y][x] -= if self.arcs[x].pending { 2 } else { 1 };
        }
        ExchangeMatrix::new(b, self.symmetrizer())
    }

    /// The gentle quiver with relations.
    pub fn quiver(&self) -> Result<GentleQuiver> {
        self.check()?;
        let n = self.n();
        let mut arrows: Vec<Arrow> = Vec::new();
        let mut per_triangle: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut used: BTreeMap<String, usize> = BTreeMap::new();
        for (x, y, t) in self.consecutive_arc_pairs() {
            let base = format!("{}>{}", self.arcs[y].id, self.arcs[x].id);
            let c = used.entry(base.clone()).or_insert(0);
            *c += 1;
            let label = if *c == 1 { base } else { format!("{base}#{c}") };
            per_triangle.entry(t).or_default().push(arrows.len());
            arrows.push(Arrow { label, source: y, target: x, triangle: Some(t), is_loop: false });
        }
        let mut forbidden = Vec::new();
        for ids in per_triangle.values() {
            for &p in ids {
                for &q in ids {
                    if p != q && arrows[p].target == arrows[q].source {
                        forbidden.push((p, q));
                    }
                }
            }
        }
        let d: Vec<usize> = self.arcs.iter().map(|a| if a.pending { 2 } else { 1 }).collect();
        let mut q = GentleQuiver { vertices: self.arc_ids(), d, arrows, forbidden };
        for i in 0..n {
            if self.arcs[i].pending {
                q.add_loop(i);
            }
        }
        Ok(q)
    }
}

/// An arrow in traversal convention: it goes from `source` to `target`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
    /// Triangle the arrow was read from, if it came from a triangulation.
    pub triangle: Option<usize>,
    pub is_loop: bool,
}

/// A quiver with monomial relations of length two. Loops `ε_i` are ordinary
/// arrows flagged `is_loop`, present exactly at vertices with `d_i = 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GentleQuiver {
    pub vertices: Vec<String>,
    pub d: Vec<usize>,
    pub arrows: Vec<Arrow>,
    /// Pairs `(p, q)` of arrow indices such that the path "first `p`, then `q`" vanishes.
    pub forbidden: Vec<(usize, usize)>,
}

impl GentleQuiver {
    /// Assemble a quiver from labeled arrows and forbidden pairs (by label,
    /// in traversal order). Loops and `ε²` relations are added for `d_i = 2`.
    pub fn from_parts(
        vertices: Vec<String>,
        d: Vec<usize>,
        arrows: Vec<(String, usize, usize)>,
        forbidden: Vec<(String, String)>,
    ) -> Result<Self> {
        let arrows: Vec<Arrow> = arrows
            .into_iter()
            .map(|(label, source, target)| Arrow { label, source, target, triangle: None, is_loop: false })
            .collect();
        let mut q = GentleQuiver { vertices, d, arrows, forbidden: vec![] };
        for (p, r) in forbidden {
            let pi = q.arrow_index(&p).ok_or_else(|| Error::Parse(format!("unknown arrow `{p}`")))?;
            let ri = q.arrow_index(&r).ok_or_else(|| Error::Parse(format!("unknown arrow `{r}`")))?;
            q.forbidden.push((pi, ri));
        }
        for i in 0..q.n() {
            if q.d[i] == 2 {
                q.add_loop(i);
            }
        }
        Ok(q)
    }

    fn add_loop(&mut self, i: usize) {
        let idx = self.arrows.len();
        self.arrows.push(Arrow {
            label: format!("eps{}", self.vertices[i]),
            source: i,
            target: i,
            triangle: None,
            is_loop: true,
        });
        self.forbidden.push((idx, idx));
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    pub fn loop_at(&self, i: usize) -> Option<usize> {
        self.arrows.iter().position(|a| a.is_loop && a.source == i)
    }

    /// Non-loop arrows, as indices.
    pub fn proper_arrows(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(|&a| !self.arrows[a].is_loop)
    }

    pub fn arrows_between(&self, source: usize, target: usize) -> Vec<usize> {
        self.proper_arrows().filter(|&a| self.arrows[a].source == source && self.arrows[a].target == target).collect()
    }

    pub fn is_forbidden(&self, first: usize, then: usize) -> bool {
        self.forbidden.contains(&(first, then))
    }

    /// Arrows `j → k` (into `k`) and `k → i` (out of `k`), loops excluded.
    pub fn arrows_in(&self, k: usize) -> Vec<usize> {
        self.proper_arrows().filter(|&a| self.arrows[a].target == k).collect()
    }

    pub fn arrows_out(&self, k: usize) -> Vec<usize> {
        self.proper_arrows().filter(|&a| self.arrows[a].source == k).collect()
    }

    /// Human-readable arrow list `label: s -> t`.
    pub fn describe(&self) -> Vec<String> {
        self.arrows
            .iter()
            .map(|a| format!("{}: {} -> {}", a.label, self.vertices[a.source], self.vertices[a.target]))
            .collect()
    }

    /// The opposite quiver (all arrows reversed, relations reversed).
    pub fn opposite(&self) -> Self {
        GentleQuiver {
            vertices: self.vertices.clone(),
            d: self.d.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { source: a.target, target: a.source, ..a.clone() })
                .collect(),
            forbidden: self.forbidden.iter().map(|&(p, q)| (q, p)).collect(),
        }
    }

    /// Set of directed `(source, target)` pairs over proper arrows.
    pub fn arrow_pairs(&self) -> BTreeSet<(usize, usize)> {
        self.proper_arrows().map(|a| (self.arrows[a].source, self.arrows[a].target)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn ids(v: &[&str]) -> [String; 3] {
        [v[0].to_string(), v[1].to_string(), v[2].to_string()]
    }

    #[test]
    fn t0_valid_and_flips() {
        let ts = fixtures::c2tilde_triangulations();
        assert!(ts[0].validate().is_empty());
        let addr = [0usize, 2, 1, 2];
        let mut t = ts[0].clone();
        for (step, &k) in addr.iter().enumerate() {
            t = t.flip(k).unwrap();
            assert!(t.same_triangles(&ts[step + 1]), "step {step}: {:?}", t.triangles);
        }
    }

    #[test]
    fn bad_multiplicities_are_reported() {
        let mut t = fixtures::c2tilde_triangulations()[0].clone();
        t.triangles.push(ids(&["2", "X", "Y"]));
        t.boundary.extend(["X".to_string(), "Y".to_string()]);
        assert!(t.validate().iter().any(|v| v.contains("arc multiplicity")));

        let mut u = fixtures::c2tilde_triangulations()[0].clone();
        u.triangles[1] = ids(&["3", "2", "1"]);
        assert!(!u.validate().is_empty());
    }

    #[test]
    fn flip_is_involutive_and_keeps_pending() {
        for t in fixtures::c2tilde_triangulations() {
            for k in 0..t.n() {
                let f = t.flip(k).unwrap();
                assert_eq!(f.arcs, t.arcs);
                assert!(f.flip(k).unwrap().same_triangles(&t));
                assert_eq!(f.b_matrix().unwrap(), t.b_matrix().unwrap().mutate(k).unwrap());
            }
        }
        assert!(matches!(fixtures::c2tilde_triangulations()[0].flip_id("R"), Err(Error::NotAnArc(_))));
    }

    #[test]
    fn exchange_matrices_of_the_tower() {
        let want = [
            vec![vec![0, -1, 0], vec![2, 0, -2], vec![0, 1, 0]],
            vec![vec![0, 1, 0], vec![-2, 0, -2], vec![0, 1, 0]],
            vec![vec![0, 1, 0], vec![-2, 0, 2], vec![0, -1, 0]],
            vec![vec![0, -1, 2], vec![2, 0, -2], vec![-2, 1, 0]],
            vec![vec![0, 1, -2], vec![-2, 0, 2], vec![2, -1, 0]],
        ];
        for (t, w) in fixtures::c2tilde_triangulations().iter().zip(want) {
            assert_eq!(t.b_matrix().unwrap().b, w);
        }
    }

    #[test]
    fn triangle_with_one_pending_side() {
        let t = Triangulation {
            arcs: vec![
                ArcSpec { id: "1".into(), pending: false },
                ArcSpec { id: "2".into(), pending: false },
                ArcSpec { id: "3".into(), pending: true },
            ],
            boundary: ["p", "q", "r", "s"].iter().map(|s| s.to_string()).collect(),
            triangles: vec![ids(&["2", "1", "3"]), ids(&["1", "p", "q"]), ids(&["2", "r", "s"])],
        };
        assert_eq!(t.b_matrix().unwrap().b, vec![vec![0, -1, 2], vec![1, 0, -2], vec![-1, 1, 0]]);
    }

    #[test]
    fn quiver_of_t0() {
        let q = fixtures::c2tilde_triangulations()[0].quiver().unwrap();
        let pairs: Vec<(usize, usize)> = q.arrow_pairs().into_iter().collect();
        assert_eq!(pairs, vec![(0, 1), (1, 2)]);
        assert!(q.loop_at(0).is_some() && q.loop_at(2).is_some() && q.loop_at(1).is_none());
        // only the two ε² relations
        assert_eq!(q.forbidden.len(), 2);
    }

    #[test]
    fn quiver_of_digon_with_two_orbifold_points() {
        let t = fixtures::digon_two_orbifold_points();
        let q = t.quiver().unwrap();
        let v = |s: &str| q.vertex_index(s).unwrap();
        assert_eq!(q.arrow_pairs(), [(v("3"), v("1")), (v("1"), v("2")), (v("2"), v("3"))].into_iter().collect());
        assert_eq!(q.forbidden.len(), 5);
        let a = q.arrows_between(v("3"), v("1"))[0];
        let b = q.arrows_between(v("1"), v("2"))[0];
        let c = q.arrows_between(v("2"), v("3"))[0];
        assert!(q.is_forbidden(a, b) && q.is_forbidden(b, c) && q.is_forbidden(c, a));
    }

    #[test]
    fn boundary_adjacent_arcs_give_no_cycles() {
        for m in 3..=5 {
            let t = fixtures::disk_one_orbifold_point(m);
            let q = t.quiver().unwrap();
            assert!(q.forbidden.iter().all(|&(p, r)| p == r), "disk m={m} has a 3-cycle");
        }
    }
}
