//! JSON encodings of representations.
//!
//! A module is stored against a known quiver: vertices by arc id, arrows by
//! label.  Matrices are row-major with exact rationals written as `"p/q"`
//! strings (plain JSON integers are accepted on input).  Missing arrows and
//! missing `eps` entries are read as zero maps.
//!
//! ```json
//! {
//!   "vertices": [{"id": "3", "dim": 2, "eps": [["0", "0"], ["1", "0"]]}],
//!   "arrows": [{"label": "2>3", "matrix": [["1"], ["0"]]}],
//!   "decoration": {"1": [1, 0]}
//! }
//! ```

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::orbifold::GentleQuiver;
use crate::rep::{DecoratedRep, Rep};
use crate::Q;

pub fn parse_rational(s: &str) -> Result<Q> {
    let t = s.trim();
    let q = Q::from_str(t).map_err(|_| Error::Parse(format!("not a rational: `{s}`")))?;
    Ok(q)
}

pub fn format_rational(q: &Q) -> String {
    q.to_string()
}

/// A matrix entry as found in input JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

impl Entry {
    fn value(&self) -> Result<Q> {
        match self {
            Entry::Int(v) => Ok(Q::from_integer((*v).into())),
            Entry::Text(s) => parse_rational(s),
        }
    }
}

pub fn matrix_to_rows(m: &Matrix<Q>) -> Vec<Vec<Entry>> {
    (0..m.rows()).map(|r| (0..m.cols()).map(|c| Entry::Text(format_rational(&m[(r, c)]))).collect()).collect()
}

/// Read a `rows × cols` matrix; an empty list stands for any matrix with no rows.
pub fn matrix_from_rows(rows: &[Vec<Entry>], nrows: usize, ncols: usize, what: &str) -> Result<Matrix<Q>> {
    if rows.len() != nrows || (nrows > 0 && rows.iter().any(|r| r.len() != ncols)) {
        let found_cols = rows.first().map_or(0, |r| r.len());
        return Err(Error::Parse(format!(
            "{what}: expected a {nrows}×{ncols} matrix, found {}×{found_cols}",
            rows.len()
        )));
    }
    let mut m = Matrix::zeros(nrows, ncols);
    for (r, row) in rows.iter().enumerate() {
        for (c, e) in row.iter().enumerate() {
            m[(r, c)] = e.value()?;
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<Vec<Vec<Entry>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub label: String,
    pub matrix: Vec<Vec<Entry>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub vertices: Vec<VertexJson>,
    #[serde(default)]
    pub arrows: Vec<ArrowJson>,
    #[serde(default)]
    pub decoration: BTreeMap<String, [usize; 2]>,
}

pub fn module_to_json(m: &DecoratedRep<Q>) -> ModuleJson {
    let q = &m.module.quiver;
    let vertices = (0..q.n())
        .map(|i| VertexJson {
            id: q.vertices[i].clone(),
            dim: m.module.dims[i],
            eps: q.loop_at(i).map(|l| matrix_to_rows(&m.module.maps[l])),
        })
        .collect();
    let arrows = q
        .proper_arrows()
        .filter(|&a| !m.module.maps[a].is_zero())
        .map(|a| ArrowJson { label: q.arrows[a].label.clone(), matrix: matrix_to_rows(&m.module.maps[a]) })
        .collect();
    let decoration = (0..q.n())
        .filter(|&i| m.decoration[i] != (0, 0))
        .map(|i| (q.vertices[i].clone(), [m.decoration[i].0, m.decoration[i].1]))
        .collect();
    ModuleJson { vertices, arrows, decoration }
}

/// Interpret `j` over `q` and validate the relations.
pub fn module_from_json(j: &ModuleJson, q: Arc<GentleQuiver>) -> Result<DecoratedRep<Q>> {
    let n = q.n();
    let mut dims = vec![0; n];
    let mut seen = vec![false; n];
    for v in &j.vertices {
        let i = q.vertex_index(&v.id).ok_or_else(|| Error::Parse(format!("unknown vertex `{}`", v.id)))?;
        if seen[i] {
            return Err(Error::Parse(format!("vertex `{}` listed twice", v.id)));
        }
        seen[i] = true;
        dims[i] = v.dim;
    }
    let mut rep = Rep::zeros_with_dims(q.clone(), dims.clone());
    for v in &j.vertices {
        let i = q.vertex_index(&v.id).expect("checked above");
        if let Some(rows) = &v.eps {
            let l = q.loop_at(i).ok_or_else(|| Error::Parse(format!("vertex `{}` carries no loop", v.id)))?;
            rep.maps[l] = matrix_from_rows(rows, dims[i], dims[i], &format!("eps at `{}`", v.id))?;
        }
    }
    for a in &j.arrows {
        let ai = q.arrow_index(&a.label).ok_or_else(|| Error::Parse(format!("unknown arrow `{}`", a.label)))?;
        let arrow = &q.arrows[ai];
        rep.maps[ai] = matrix_from_rows(&a.matrix, dims[arrow.target], dims[arrow.source], &format!("arrow `{}`", a.label))?;
    }
    let module = Rep::new(q.clone(), rep.dims, rep.maps)?;
    let mut decoration = vec![(0, 0); n];
    for (id, [a, b]) in &j.decoration {
        let i = q.vertex_index(id).ok_or_else(|| Error::Parse(format!("unknown decoration vertex `{id}`")))?;
        if q.d[i] == 1 && *b != 0 {
            return Err(Error::Parse(format!("decoration at ordinary vertex `{id}` cannot have socle excess")));
        }
        decoration[i] = (*a, *b);
    }
    Ok(DecoratedRep { module, decoration })
}

pub fn read_module(text: &str, q: Arc<GentleQuiver>) -> Result<DecoratedRep<Q>> {
    let j: ModuleJson = serde_json::from_str(text)?;
    module_from_json(&j, q)
}

pub fn write_module(m: &DecoratedRep<Q>) -> String {
    serde_json::to_string_pretty(&module_to_json(m)).expect("module JSON serializes")
}

/// A bare exchange matrix, optionally with its symmetrizer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    #[serde(rename = "B", alias = "b")]
    pub b: Vec<Vec<i64>>,
    #[serde(default, rename = "D", alias = "d", skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<i64>>,
}
