//! String and band modules from combinatorial words, and the local mutation
//! case tables for segments of curves crossing a quadrilateral or a digon.
//!
//! A word is a walk in `Q(T)`: each letter is an arrow (loops included)
//! traversed forwards (`+`) or backwards (`-`).  Position `p` of the walk
//! contributes one basis vector at its vertex; a forward letter `a` between
//! positions `p` and `p + 1` sends `e_p ↦ s·e_{p+1}`, a backward one sends
//! `e_{p+1} ↦ s·e_p`, where `s` is the letter's scale (default 1).  Bands
//! close the walk up and multiply the closing letter by `λ`.
//!
//! Per-letter scales are an extension of the usual string combinatorics; they
//! let a local segment of a band carry its parameter wherever it sits.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixtures;
use crate::io::{format_rational, parse_rational};
use crate::matrix::Matrix;
use crate::mutation::{mutate_decorated, LocalDiagram};
use crate::orbifold::{GentleQuiver, Triangulation};
use crate::rep::{DecoratedRep, Rep};
use crate::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Dir {
    #[serde(rename = "+")]
    Direct,
    #[serde(rename = "-")]
    Inverse,
}

mod opt_rational {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Q>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match v {
            Some(q) => s.serialize_some(&format_rational(q)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Q>, D::Error> {
        let raw: Option<String> = Option::deserialize(d)?;
        raw.map(|s| parse_rational(&s).map_err(serde::de::Error::custom)).transpose()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Letter {
    pub arrow: String,
    pub dir: Dir,
    #[serde(default, with = "opt_rational", skip_serializing_if = "Option::is_none")]
    pub scale: Option<Q>,
}

impl Letter {
    pub fn new(arrow: &str, dir: Dir) -> Self {
        Letter { arrow: arrow.to_string(), dir, scale: None }
    }
}

/// A string (open walk) or band (closed walk with parameter `λ`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StringWord {
    pub letters: Vec<Letter>,
    #[serde(default)]
    pub band: bool,
    #[serde(default, with = "opt_rational", skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Q>,
    /// Vertex of the walk's first position; required for the trivial walk.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<String>,
}

/// Accepted JSON shapes: a bare list of letters, or the full object.
#[derive(Deserialize)]
#[serde(untagged)]
enum WordInput {
    List(Vec<Letter>),
    Full(StringWord),
}

impl StringWord {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(match serde_json::from_str::<WordInput>(text)? {
            WordInput::List(letters) => StringWord { letters, band: false, lambda: None, start: None },
            WordInput::Full(w) => w,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("word serializes")
    }

    /// Compact text form: whitespace-separated tokens `label+` or `label-`,
    /// optionally followed by `*s` with `s` a rational, `L` (the given
    /// `lambda`) or `-L`; `@v` fixes the start vertex; `band` closes the walk.
    ///
    /// `"L>K+ epsK+ L>K-*L"` is `L → K —ε→ K ← L` with the last arrow scaled.
    pub fn parse_compact(text: &str, lambda: &Q) -> Result<Self> {
        let mut w = StringWord { letters: Vec::new(), band: false, lambda: None, start: None };
        for (pos, tok) in text.split_whitespace().enumerate() {
            let bad = |reason: &str| Error::InvalidWord { position: pos, reason: format!("`{tok}`: {reason}") };
            if let Some(v) = tok.strip_prefix('@') {
                w.start = Some(v.to_string());
                continue;
            }
            if tok == "band" {
                w.band = true;
                w.lambda.get_or_insert_with(|| lambda.clone());
                continue;
            }
            let (body, scale) = match tok.split_once('*') {
                Some((b, s)) => {
                    let v = match s {
                        "L" => lambda.clone(),
                        "-L" => -lambda.clone(),
                        other => parse_rational(other).map_err(|_| bad("bad scale"))?,
                    };
                    (b, Some(v))
                }
                None => (tok, None),
            };
            let (label, dir) = if let Some(l) = body.strip_suffix('+') {
                (l, Dir::Direct)
            } else if let Some(l) = body.strip_suffix('-') {
                (l, Dir::Inverse)
            } else {
                return Err(bad("letter must end in + or -"));
            };
            w.letters.push(Letter { arrow: label.to_string(), dir, scale });
        }
        Ok(w)
    }

    /// Check the word against `q`; returns the vertex of every position
    /// (for bands the closing position is not repeated).
    pub fn validate(&self, q: &GentleQuiver) -> Result<Vec<usize>> {
        let bad = |position: usize, reason: String| Error::InvalidWord { position, reason };
        let start = match &self.start {
            Some(v) => Some(q.vertex_index(v).ok_or_else(|| bad(0, format!("unknown vertex `{v}`")))?),
            None => None,
        };
        if self.letters.is_empty() {
            if self.band {
                return Err(bad(0, "a band needs at least one letter".into()));
            }
            return Ok(start.into_iter().collect());
        }
        let mut arrows = Vec::with_capacity(self.letters.len());
        for (p, l) in self.letters.iter().enumerate() {
            let a = q.arrow_index(&l.arrow).ok_or_else(|| bad(p, format!("unknown arrow `{}`", l.arrow)))?;
            if l.scale.as_ref().is_some_and(|s| s.is_zero()) {
                return Err(bad(p, "zero scale".into()));
            }
            arrows.push(a);
        }
        let ends = |p: usize| {
            let a = &q.arrows[arrows[p]];
            match self.letters[p].dir {
                Dir::Direct => (a.source, a.target),
                Dir::Inverse => (a.target, a.source),
            }
        };
        let mut verts = vec![ends(0).0];
        if let Some(s) = start {
            if s != verts[0] {
                return Err(bad(0, format!("walk starts at `{}`, not `{}`", q.vertices[verts[0]], q.vertices[s])));
            }
        }
        for p in 0..self.letters.len() {
            let (from, to) = ends(p);
            if from != verts[p] {
                return Err(bad(p, format!("letter does not start at `{}`", q.vertices[verts[p]])));
            }
            verts.push(to);
        }
        let m = self.letters.len();
        let mut pairs: Vec<(usize, usize)> = (1..m).map(|p| (p - 1, p)).collect();
        if self.band {
            if verts[m] != verts[0] {
                return Err(bad(m - 1, "band does not close up".into()));
            }
            pairs.push((m - 1, 0));
            if self.lambda.as_ref().is_some_and(|l| l.is_zero()) {
                return Err(bad(m - 1, "band parameter must be nonzero".into()));
            }
            for period in 1..m {
                if m % period == 0 && (0..m).all(|p| self.letters[p] == self.letters[(p + period) % m]) {
                    return Err(bad(0, format!("band is a proper power (period {period})")));
                }
            }
            verts.pop();
        }
        for (p, r) in pairs {
            let (lp, lr) = (&self.letters[p], &self.letters[r]);
            if arrows[p] == arrows[r] && lp.dir != lr.dir {
                return Err(bad(r, "letter followed by its own inverse".into()));
            }
            let forbidden = match (lp.dir, lr.dir) {
                (Dir::Direct, Dir::Direct) => q.is_forbidden(arrows[p], arrows[r]),
                (Dir::Inverse, Dir::Inverse) => q.is_forbidden(arrows[r], arrows[p]),
                _ => false,
            };
            if forbidden {
                return Err(bad(r, "consecutive letters compose to a relation".into()));
            }
        }
        Ok(verts)
    }
}

impl fmt::Display for StringWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut toks: Vec<String> = Vec::new();
        if let Some(s) = &self.start {
            toks.push(format!("@{s}"));
        }
        for l in &self.letters {
            let d = if l.dir == Dir::Direct { '+' } else { '-' };
            match &l.scale {
                Some(s) => toks.push(format!("{}{d}*{}", l.arrow, format_rational(s))),
                None => toks.push(format!("{}{d}", l.arrow)),
            }
        }
        if self.band {
            toks.push(format!("band(λ={})", format_rational(self.lambda.as_ref().unwrap_or(&Q::one()))));
        }
        write!(f, "{}", toks.join(" "))
    }
}

/// The string or band module of `w`.
pub fn string_module(q: Arc<GentleQuiver>, w: &StringWord) -> Result<Rep<Q>> {
    let verts = w.validate(&q)?;
    let n = q.n();
    let mut dims = vec![0; n];
    // index of each position inside its vertex space
    let mut slot = Vec::with_capacity(verts.len());
    for &v in &verts {
        slot.push(dims[v]);
        dims[v] += 1;
    }
    let mut rep = Rep::zeros_with_dims(q.clone(), dims.clone());
    let npos = verts.len();
    let m = w.letters.len();
    for (p, l) in w.letters.iter().enumerate() {
        let a = q.arrow_index(&l.arrow).expect("validated");
        let mut s = l.scale.clone().unwrap_or_else(Q::one);
        if w.band && p == m - 1 {
            s *= w.lambda.clone().unwrap_or_else(Q::one);
        }
        let (from, to) = match l.dir {
            Dir::Direct => (p, (p + 1) % npos),
            Dir::Inverse => ((p + 1) % npos, p),
        };
        rep.maps[a][(slot[to], slot[from])] = s;
    }
    Rep::new(q, rep.dims, rep.maps)
}

// ---------------------------------------------------------------------------
// Case tables.

/// The two local configurations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Configuration {
    /// Quadrilateral `q, p, j, i` with diagonal `k` (arc ids as written).
    Quadrilateral,
    /// Triangle `R, K, L` with pending side `K`.
    PendingTriangle,
}

impl Configuration {
    pub fn triangulation(self) -> Triangulation {
        match self {
            Configuration::Quadrilateral => fixtures::octagon_quadrilateral(),
            Configuration::PendingTriangle => fixtures::pending_triangle(),
        }
    }

    pub fn flipped_arc(self) -> &'static str {
        match self {
            Configuration::Quadrilateral => "k",
            Configuration::PendingTriangle => "K",
        }
    }
}

/// One side of a case: a word, or a zero module with a decoration at the
/// flipped arc, given as `(free rank, socle excess)`.
#[derive(Clone, Copy, Debug)]
pub enum CaseSide {
    Word(&'static str),
    Negative(usize, usize),
}

#[derive(Clone, Debug)]
pub struct CaseSpec {
    pub id: &'static str,
    pub configuration: Configuration,
    /// The input lives on the flipped triangulation (and the output on the
    /// original one).
    pub from_flipped: bool,
    pub input: CaseSide,
    pub expected: CaseSide,
    /// Dimensions of `M_in`, `M(k)`, `M_out` and of the mutated space at `k`.
    pub diagram: [usize; 4],
}

impl CaseSpec {
    pub fn uses_lambda(&self) -> bool {
        let has = |s: &CaseSide| matches!(s, CaseSide::Word(w) if w.contains("*L") || w.contains("*-L"));
        has(&self.input) || has(&self.expected)
    }
}

use CaseSide::{Negative, Word};
use Configuration::{PendingTriangle as Pend, Quadrilateral as Quad};

/// The eighteen local cases.  Quadrilateral vertices: `k` the diagonal, with
/// arrows `q→k, j→k, k→p, k→i` before the flip and `p→k, i→k, k→q, k→j`
/// after it.  Pending triangle: `L→K→R→L` before, `K→L→R→K` after.
pub const CASES: [CaseSpec; 18] = [
    CaseSpec { id: "0.a", configuration: Quad, from_flipped: false, input: Word("@k"), expected: Negative(1, 0), diagram: [0, 1, 0, 0] },
    CaseSpec { id: "0.b", configuration: Quad, from_flipped: true, input: Negative(1, 0), expected: Word("@k"), diagram: [0, 0, 0, 1] },
    CaseSpec { id: "1.a", configuration: Quad, from_flipped: false, input: Word("k>i- k>p+*L"), expected: Word("i>k+*-L p>k-"), diagram: [0, 1, 2, 1] },
    CaseSpec { id: "1.b", configuration: Quad, from_flipped: true, input: Word("i>k+*L p>k-"), expected: Word("k>i- k>p+*-L"), diagram: [2, 1, 0, 1] },
    CaseSpec { id: "2.a", configuration: Quad, from_flipped: false, input: Word("q>k+*L k>i+"), expected: Word("q>i+*L"), diagram: [1, 1, 1, 0] },
    CaseSpec { id: "2.b", configuration: Quad, from_flipped: true, input: Word("q>i+*L"), expected: Word("q>k+*L k>i+"), diagram: [1, 0, 1, 1] },
    CaseSpec { id: "3.a", configuration: Pend, from_flipped: false, input: Word("R>L+*L"), expected: Word("R>K+*L epsK+ K>L+"), diagram: [2, 0, 2, 2] },
    CaseSpec { id: "3.b", configuration: Pend, from_flipped: true, input: Word("R>K+*L epsK+ K>L+"), expected: Word("R>L+*L"), diagram: [2, 2, 2, 0] },
    CaseSpec { id: "4.a", configuration: Pend, from_flipped: false, input: Word("L>K+ epsK+ L>K-*L"), expected: Word("K>L-*-L epsK+ K>L+"), diagram: [4, 2, 0, 2] },
    CaseSpec { id: "4.b", configuration: Pend, from_flipped: true, input: Word("K>L-*L epsK+ K>L+"), expected: Word("L>K+ epsK+ L>K-*-L"), diagram: [0, 2, 4, 2] },
    CaseSpec { id: "5.a", configuration: Pend, from_flipped: false, input: Word("epsK+"), expected: Negative(1, 0), diagram: [0, 2, 0, 0] },
    CaseSpec { id: "5.b", configuration: Pend, from_flipped: true, input: Negative(1, 0), expected: Word("epsK+"), diagram: [0, 0, 0, 2] },
    CaseSpec { id: "6.a", configuration: Pend, from_flipped: false, input: Word("L>K+*L epsK+ L>K-"), expected: Word("K>L- epsK+ K>L+*-L"), diagram: [4, 2, 0, 2] },
    CaseSpec { id: "6.b", configuration: Pend, from_flipped: true, input: Word("K>L- epsK+ K>L+*L"), expected: Word("L>K+*-L epsK+ L>K-"), diagram: [0, 2, 4, 2] },
    CaseSpec { id: "7.a", configuration: Pend, from_flipped: false, input: Word("L>K+"), expected: Word("K>L+"), diagram: [2, 1, 0, 1] },
    CaseSpec { id: "7.b", configuration: Pend, from_flipped: true, input: Word("K>L+"), expected: Word("L>K+"), diagram: [0, 1, 2, 1] },
    CaseSpec { id: "8.a", configuration: Pend, from_flipped: false, input: Word("@K"), expected: Negative(0, 1), diagram: [0, 1, 0, 0] },
    CaseSpec { id: "8.b", configuration: Pend, from_flipped: true, input: Negative(0, 1), expected: Word("@K"), diagram: [0, 0, 0, 1] },
];

pub fn case(id: &str) -> Result<&'static CaseSpec> {
    CASES.iter().find(|c| c.id == id).ok_or_else(|| Error::UnknownCase(id.to_string()))
}

/// Outcome of one successful replay.
#[derive(Clone, Debug)]
pub struct CaseReport {
    pub id: &'static str,
    pub lambda: Q,
    /// Observed `(dim M_in, dim M(k), dim M_out, dim M̄(k))`.
    pub diagram: [usize; 4],
    pub input: DecoratedRep<Q>,
    pub output: DecoratedRep<Q>,
}

fn build_side(side: &CaseSide, q: Arc<GentleQuiver>, k: usize, lambda: &Q) -> Result<DecoratedRep<Q>> {
    match side {
        CaseSide::Word(text) => {
            let w = StringWord::parse_compact(text, lambda)?;
            Ok(DecoratedRep::plain(string_module(q, &w)?))
        }
        CaseSide::Negative(a, b) => {
            let mut d = DecoratedRep::plain(Rep::zero(q));
            d.decoration[k] = (*a, *b);
            Ok(d)
        }
    }
}

/// Build the input of case `id`, mutate it at the flipped arc and compare the
/// result with the expected row up to isomorphism (which absorbs any
/// rescaling of `λ`).  The diagram dimensions are compared as well.
pub fn replay_case_table(id: &str, lambda: &Q) -> Result<CaseReport> {
    replay_spec(case(id)?, lambda)
}

pub fn replay_spec(spec: &CaseSpec, lambda: &Q) -> Result<CaseReport> {
    let id = spec.id;
    if lambda.is_zero() {
        return Err(Error::InvalidWord { position: 0, reason: "λ must be nonzero".into() });
    }
    let base = spec.configuration.triangulation();
    let k = base.arc_index(spec.configuration.flipped_arc()).expect("fixture has the flipped arc");
    let start = if spec.from_flipped { base.flip(k)? } else { base };
    let q = Arc::new(start.quiver()?);
    let input = build_side(&spec.input, q.clone(), k, lambda)?;
    let (_, output) = mutate_decorated(&start, &input, k)?;
    let expected = build_side(&spec.expected, output.module.quiver.clone(), k, lambda)?;

    // the decoration is not part of the diagram; it re-enters at k afterwards
    let dd = LocalDiagram::new(&input.module, k)?.dims();
    let diagram = [dd.m_in, dd.m_k, dd.m_out, output.module.dims[k]];

    let unchanged = (0..q.n()).all(|v| v == k || output.module.dims[v] == input.module.dims[v]);
    if diagram != spec.diagram || !unchanged || !output.is_isomorphic(&expected) {
        return Err(Error::CaseMismatch {
            case: format!("{id} (λ = {})", format_rational(lambda)),
            got: format!("{output:?}; diagram {diagram:?}"),
            expected: format!("{expected:?}; diagram {:?}", spec.diagram),
        });
    }
    Ok(CaseReport { id, lambda: lambda.clone(), diagram, input, output })
}

/// The λ values exercised for `spec`.
pub fn lambdas_for(spec: &CaseSpec) -> Vec<Q> {
    if spec.uses_lambda() {
        ["1", "2", "-1"].iter().map(|s| Q::from_str(s).expect("literal")).collect()
    } else {
        vec![Q::one()]
    }
}

/// Replay every case for every applicable λ; one entry per run.
pub fn replay_all() -> Vec<(String, Result<CaseReport>)> {
    let mut out = Vec::new();
    for spec in &CASES {
        for l in lambdas_for(spec) {
            out.push((format!("{} λ={}", spec.id, format_rational(&l)), replay_case_table(spec.id, &l)));
        }
    }
    out
}

/// Matrix of `arrow` in a string module, for inspection.
pub fn arrow_matrix<'a>(m: &'a Rep<Q>, label: &str) -> Option<&'a Matrix<Q>> {
    m.quiver.arrow_index(label).map(|a| &m.maps[a])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q_of(t: &Triangulation) -> Arc<GentleQuiver> {
        Arc::new(t.quiver().unwrap())
    }

    fn rat(s: &str) -> Q {
        parse_rational(s).unwrap()
    }

    #[test]
    fn empty_word_is_zero_and_trivial_walk_is_simple() {
        let t = fixtures::pending_triangle();
        let q = q_of(&t);
        let z = string_module(q.clone(), &StringWord::parse_compact("", &Q::one()).unwrap()).unwrap();
        assert!(z.is_zero());
        let s = string_module(q.clone(), &StringWord::parse_compact("@K", &Q::one()).unwrap()).unwrap();
        assert_eq!(s.dims, Rep::<Q>::simple(q.clone(), t.arc_index("K").unwrap()).dims);
    }

    #[test]
    fn scaled_pending_segment_has_the_expected_matrices() {
        let t = fixtures::pending_triangle();
        let q = q_of(&t);
        let w = StringWord::parse_compact("L>K+ epsK+ L>K-*L", &rat("5")).unwrap();
        let m = string_module(q.clone(), &w).unwrap();
        let k = t.arc_index("K").unwrap();
        assert_eq!(m.dims[k], 2);
        let expect = |rows: [[i64; 2]; 2]| Matrix::from_fn(2, 2, |r, c| Q::from_integer(rows[r][c].into()));
        assert_eq!(arrow_matrix(&m, "L>K").unwrap(), &expect([[1, 0], [0, 5]]));
        assert_eq!(arrow_matrix(&m, "epsK").unwrap(), &expect([[0, 0], [1, 0]]));
        assert!(m.is_locally_free());
        assert_eq!(crate::rep::indecomposable_summands(&m, 0).len(), 1);
    }

    #[test]
    fn invalid_words_report_the_position() {
        let q = q_of(&fixtures::pending_triangle());
        let one = Q::one();
        let check = |text: &str, pos: usize| {
            let w = StringWord::parse_compact(text, &one).unwrap();
            match string_module(q.clone(), &w) {
                Err(Error::InvalidWord { position, .. }) => assert_eq!(position, pos, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        };
        check("L>K+ K>R+", 1); // consecutive arrows of a triangle
        check("L>K+ L>K-", 1); // backtrack
        check("L>K+ R>L+", 1); // not composable
        check("epsK+ epsK+", 1); // ε²
        check("nope+", 0);
        check("K>R- L>K-", 1); // inverse of the relation L>K·K>R
    }

    #[test]
    fn bands_close_up_and_reject_powers() {
        // 1 →ε 1 → 2 → 3 →ε 3 ← 2 ← 1 closes up on the C̃₂ quiver of T0.
        let t = fixtures::c2tilde_triangulations()[0].clone();
        let q = q_of(&t);
        let w = StringWord::parse_compact("eps1+ 1>2+ 2>3+ eps3+ 2>3- 1>2- band", &rat("3")).unwrap();
        let m = string_module(q.clone(), &w).unwrap();
        assert_eq!(m.dims, vec![2, 2, 2]);
        assert!(m.is_locally_free());
        assert_eq!(crate::rep::indecomposable_summands(&m, 0).len(), 1);
        let other = StringWord::parse_compact("eps1+ 1>2+ 2>3+ eps3+ 2>3- 1>2- band", &rat("-1")).unwrap();
        assert!(!m.is_isomorphic(&string_module(q.clone(), &other).unwrap()));
        let open = StringWord::parse_compact("eps1+ 1>2+ band", &Q::one()).unwrap();
        assert!(matches!(string_module(q.clone(), &open), Err(Error::InvalidWord { .. })));
        let power = StringWord::parse_compact("eps1+ 1>2+ 2>3+ eps3+ 2>3- 1>2- eps1+ 1>2+ 2>3+ eps3+ 2>3- 1>2- band", &Q::one()).unwrap();
        assert!(matches!(string_module(q.clone(), &power), Err(Error::InvalidWord { position: 0, .. })));
    }

    #[test]
    fn json_round_trip() {
        let w = StringWord::from_json(r#"[{"arrow":"L>K","dir":"+"},{"arrow":"epsK","dir":"+","scale":"-2/3"}]"#).unwrap();
        assert_eq!(w.letters.len(), 2);
        assert_eq!(w.letters[1].scale, Some(rat("-2/3")));
        let back = StringWord::from_json(&w.to_json()).unwrap();
        assert_eq!(back, w);
        let full = StringWord::from_json(r#"{"letters":[{"arrow":"L>K","dir":"-"}],"band":false,"start":"K"}"#).unwrap();
        assert_eq!(full.start.as_deref(), Some("K"));
    }

    #[test]
    fn every_case_replays() {
        for (name, r) in replay_all() {
            if let Err(e) = r {
                panic!("{name}: {e}");
            }
        }
    }

    #[test]
    fn unknown_case_and_zero_lambda_are_rejected() {
        assert!(matches!(replay_case_table("9.z", &Q::one()), Err(Error::UnknownCase(_))));
        assert!(replay_case_table("1.a", &Q::zero()).is_err());
    }

    #[test]
    fn wrong_expectations_are_caught() {
        // wrong module
        let mut spec = case("7.a").unwrap().clone();
        spec.expected = Word("@K");
        assert!(matches!(replay_spec(&spec, &Q::one()), Err(Error::CaseMismatch { .. })));
        // expectation missing an arrow
        let mut spec = case("1.a").unwrap().clone();
        spec.expected = Word("i>k+*L");
        assert!(matches!(replay_spec(&spec, &rat("2")), Err(Error::CaseMismatch { .. })));
        // wrong diagram dimensions
        let mut spec = case("4.a").unwrap().clone();
        spec.diagram = [2, 2, 0, 2];
        assert!(matches!(replay_spec(&spec, &rat("2")), Err(Error::CaseMismatch { .. })));
    }
}
