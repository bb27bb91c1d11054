//! Skew-symmetrizable cluster patterns: exchange matrices, labeled seeds with
//! principal or trivial coefficients, g-vectors and F-polynomials of cluster
//! variables, and depth-bounded exchange-graph exploration.
//!
//! Indices are 0-based throughout the library.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{var_names, IntPoly, LaurentPoly};

fn pos(x: i64) -> i64 {
    x.max(0)
}

/// An integer matrix `B` together with a positive diagonal symmetrizer `D`
/// such that `DB` is skew-symmetric.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExchangeMatrix {
    #[serde(rename = "B")]
    pub b: Vec<Vec<i64>>,
    #[serde(rename = "D")]
    pub d: Vec<i64>,
}

impl ExchangeMatrix {
    pub fn new(b: Vec<Vec<i64>>, d: Vec<i64>) -> Result<Self> {
        let m = ExchangeMatrix { b, d };
        m.check()?;
        Ok(m)
    }

    /// Build from `B` alone, computing the smallest integral symmetrizer.
    pub fn from_b(b: Vec<Vec<i64>>) -> Result<Self> {
        let n = b.len();
        if b.iter().any(|r| r.len() != n) {
            return Err(Error::NotSkewSymmetrizable);
        }
        // d_j / d_i = -b_ij / b_ji along every nonzero entry; propagate over components.
        let mut ratio: Vec<Option<num_rational::Ratio<i64>>> = vec![None; n];
        for start in 0..n {
            if ratio[start].is_some() {
                continue;
            }
            ratio[start] = Some(num_rational::Ratio::from_integer(1));
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for j in 0..n {
                    if i == j || b[i][j] == 0 {
                        continue;
                    }
                    if b[j][i] == 0 || (b[i][j] > 0) == (b[j][i] > 0) {
                        return Err(Error::NotSkewSymmetrizable);
                    }
                    let r = ratio[i].unwrap() * num_rational::Ratio::new(-b[i][j], b[j][i]);
                    match ratio[j] {
                        None => {
                            ratio[j] = Some(r);
                            queue.push_back(j);
                        }
                        Some(existing) if existing != r => return Err(Error::NotSkewSymmetrizable),
                        _ => {}
                    }
                }
            }
        }
        let l = ratio.iter().fold(1i64, |acc, r| acc.lcm(r.unwrap().denom()));
        let d: Vec<i64> = ratio.iter().map(|r| (r.unwrap() * l).to_integer()).collect();
        let g = d.iter().fold(0i64, |acc, &x| acc.gcd(&x)).max(1);
        Self::new(b, d.into_iter().map(|x| x / g).collect())
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.b[i][j]
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> Vec<i64> {
        self.b.iter().map(|r| r[j]).collect()
    }

    pub fn is_skew_symmetrizable(&self) -> bool {
        self.check().is_ok()
    }

    fn check(&self) -> Result<()> {
        let n = self.n();
        if self.d.len() != n || self.b.iter().any(|r| r.len() != n) || self.d.iter().any(|&x| x <= 0) {
            return Err(Error::NotSkewSymmetrizable);
        }
        for i in 0..n {
            for j in 0..n {
                if self.d[i] * self.b[i][j] != -self.d[j] * self.b[j][i] {
                    return Err(Error::NotSkewSymmetrizable);
                }
            }
        }
        Ok(())
    }

    /// Matrix mutation in direction `k`.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        let n = self.n();
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k, n });
        }
        let b = &self.b;
        let nb = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == k || j == k {
                            -b[i][j]
                        } else {
                            b[i][j] + pos(-b[i][k]) * b[k][j] + b[i][k] * pos(b[k][j])
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(ExchangeMatrix { b: nb, d: self.d.clone() })
    }

    /// Simultaneously permute rows and columns: new index `i` is old `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.n();
        ExchangeMatrix {
            b: (0..n).map(|i| (0..n).map(|j| self.b[perm[i]][perm[j]]).collect()).collect(),
            d: perm.iter().map(|&p| self.d[p]).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoefficientMode {
    /// Coefficients in `Trop(y_1..y_n)`, initialised to the generators.
    Principal,
    /// All coefficients equal to one.
    CoefficientFree,
}

/// A labeled seed. In principal mode cluster variables are Laurent
/// polynomials in `x1..xn, y1..yn` (polynomial in the `y`s) and
/// coefficients are tropical exponent vectors over the `y`s.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Seed {
    pub matrix: ExchangeMatrix,
    pub mode: CoefficientMode,
    pub cluster: Vec<LaurentPoly>,
    pub coeffs: Vec<Vec<i64>>,
}

/// Variable list for a rank-`n` pattern in the given mode.
pub fn pattern_vars(n: usize, mode: CoefficientMode) -> Vec<String> {
    let mut v = var_names("x", n);
    if mode == CoefficientMode::Principal {
        v.extend(var_names("y", n));
    }
    v
}

impl Seed {
    pub fn initial(matrix: ExchangeMatrix, mode: CoefficientMode) -> Self {
        let n = matrix.n();
        let vars = pattern_vars(n, mode);
        let cluster = (0..n).map(|i| LaurentPoly::var(&vars, i)).collect();
        let coeffs = (0..n)
            .map(|i| match mode {
                CoefficientMode::Principal => (0..n).map(|j| i64::from(i == j)).collect(),
                CoefficientMode::CoefficientFree => vec![0; n],
            })
            .collect();
        Seed { matrix, mode, cluster, coeffs }
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn vars(&self) -> Vec<String> {
        pattern_vars(self.n(), self.mode)
    }

    /// Seed mutation in direction `k`.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        let n = self.n();
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k, n });
        }
        let vars = self.vars();
        let b = &self.matrix.b;
        let c = &self.coeffs[k];
        // y^{[c]+} prod x^{[b_ik]+} + y^{[-c]+} prod x^{[-b_ik]+}, in terms of the current cluster
        let mut plus = self.coeff_monomial(&vars, c, 1);
        let mut minus = self.coeff_monomial(&vars, c, -1);
        for i in 0..n {
            let e = b[i][k];
            if e > 0 {
                plus = &plus * &self.cluster[i].pow(e as u32);
            } else if e < 0 {
                minus = &minus * &self.cluster[i].pow((-e) as u32);
            }
        }
        let numer = &plus + &minus;
        let new_var = numer.div_exact(&self.cluster[k]).map_err(|_| Error::NonLaurentResult)?;
        let mut cluster = self.cluster.clone();
        cluster[k] = new_var;

        let mut coeffs = self.coeffs.clone();
        for j in 0..n {
            if j == k {
                coeffs[j] = c.iter().map(|x| -x).collect();
            } else {
                let bkj = b[k][j];
                coeffs[j] = (0..n).map(|t| self.coeffs[j][t] + pos(bkj) * c[t] - bkj * c[t].min(0)).collect();
            }
        }
        Ok(Seed { matrix: self.matrix.mutate(k)?, mode: self.mode, cluster, coeffs })
    }

    /// `y^{[sign*c]+}` as a polynomial in the ambient variables.
    fn coeff_monomial(&self, vars: &[String], c: &[i64], sign: i64) -> LaurentPoly {
        let n = self.n();
        let mut e = vec![0i64; vars.len()];
        if self.mode == CoefficientMode::Principal {
            for t in 0..n {
                e[n + t] = pos(sign * c[t]);
            }
        }
        LaurentPoly::monomial(vars, e, BigInt::one())
    }

    /// Canonical representative of the unlabeled seed: cluster entries sorted,
    /// `B`, `D` and coefficients permuted accordingly, ties broken by columns of `B`.
    pub fn canonical(&self) -> (Seed, Vec<usize>) {
        let n = self.n();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by(|&a, &b| {
            self.cluster[a].cmp(&self.cluster[b]).then_with(|| self.matrix.column(a).cmp(&self.matrix.column(b)))
        });
        let seed = Seed {
            matrix: self.matrix.permuted(&perm),
            mode: self.mode,
            cluster: perm.iter().map(|&p| self.cluster[p].clone()).collect(),
            coeffs: perm.iter().map(|&p| self.coeffs[p].clone()).collect(),
        };
        (seed, perm)
    }
}

/// Degree of a monomial `x^a y^c` under `deg x_i = e_i`, `deg y_j = -b_j`.
fn principal_degree(e: &[i64], b0: &ExchangeMatrix) -> Vec<i64> {
    let n = b0.n();
    let mut g: Vec<i64> = e[..n].to_vec();
    for j in 0..n {
        let yj = e[n + j];
        if yj != 0 {
            for i in 0..n {
                g[i] -= yj * b0.b[i][j];
            }
        }
    }
    g
}

/// The g-vector of a principal-coefficient cluster variable with respect to
/// the initial exchange matrix `b0`.
pub fn extract_g_vector(x: &LaurentPoly, b0: &ExchangeMatrix) -> Result<Vec<i64>> {
    let n = b0.n();
    if x.nvars() != 2 * n {
        return Err(Error::NotHomogeneous(format!("expected {} variables, found {}", 2 * n, x.nvars())));
    }
    let mut g: Option<Vec<i64>> = None;
    for (e, _) in x.terms() {
        let d = principal_degree(e, b0);
        match &g {
            None => g = Some(d),
            Some(prev) if *prev != d => return Err(Error::NotHomogeneous(x.to_string())),
            _ => {}
        }
    }
    g.ok_or_else(|| Error::NotHomogeneous("zero polynomial".into()))
}

/// The F-polynomial: set every `x_i` to one.
pub fn extract_f_polynomial(x: &LaurentPoly, n: usize) -> Result<IntPoly> {
    let f = x.specialize_to_one(&(0..n).collect::<Vec<_>>());
    if !f.is_polynomial() {
        return Err(Error::NotPolynomial(f.to_string()));
    }
    Ok(f)
}

/// Tropical h-vector of an F-polynomial: `y_i ↦ x_i^{-1} prod_{j≠i} x_j^{[-b_ji]+}`.
pub fn cluster_h_vector(f: &IntPoly, b: &ExchangeMatrix) -> Result<Vec<i64>> {
    let n = b.n();
    let bindings: Vec<Vec<i64>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { -1 } else { pos(-b.b[j][i]) }).collect()).collect();
    f.tropical_eval(&bindings)
}

/// `x^g F(ŷ)` with `ŷ_i = prod_j x_j^{b_ji}` (coefficient-free) or
/// `ŷ_i = y_i prod_j x_j^{b_ji}` (principal), over the pattern variables.
pub fn reconstruct(g: &[i64], f: &IntPoly, b0: &ExchangeMatrix, mode: CoefficientMode) -> Result<LaurentPoly> {
    let n = b0.n();
    let vars = pattern_vars(n, mode);
    let images: Vec<LaurentPoly> = (0..n)
        .map(|i| {
            let mut e = vec![0i64; vars.len()];
            for j in 0..n {
                e[j] = b0.b[j][i];
            }
            if mode == CoefficientMode::Principal {
                e[n + i] = 1;
            }
            LaurentPoly::monomial(&vars, e, BigInt::one())
        })
        .collect();
    let mut ge = vec![0i64; vars.len()];
    ge[..n].copy_from_slice(g);
    Ok(f.substitute_into(&images, &vars)?.shift(&ge))
}

/// Cancel adjacent repeated directions.
pub fn reduce_address(address: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for &k in address {
        if out.last() == Some(&k) {
            out.pop();
        } else {
            out.push(k);
        }
    }
    out
}

/// A vertex of the n-regular tree together with its seed.
#[derive(Clone, Debug)]
pub struct PatternNode {
    pub address: Vec<usize>,
    pub seed: Seed,
}

/// Walk the pattern from `root` along `address` (reduced first).
pub fn pattern_walk(root: &Seed, address: &[usize]) -> Result<PatternNode> {
    let address = reduce_address(address);
    let mut seed = root.clone();
    for &k in &address {
        seed = seed.mutate(k)?;
    }
    Ok(PatternNode { address, seed })
}

/// Memoised pattern walks from a fixed root.
pub struct Pattern {
    root: Seed,
    cache: HashMap<Vec<usize>, Seed>,
}

impl Pattern {
    pub fn new(root: Seed) -> Self {
        Pattern { root, cache: HashMap::new() }
    }

    pub fn root(&self) -> &Seed {
        &self.root
    }

    pub fn walk(&mut self, address: &[usize]) -> Result<PatternNode> {
        let address = reduce_address(address);
        let mut seed = self.root.clone();
        for depth in 0..address.len() {
            let prefix = &address[..=depth];
            seed = match self.cache.get(prefix) {
                Some(s) => s.clone(),
                None => {
                    let s = seed.mutate(address[depth])?;
                    self.cache.insert(prefix.to_vec(), s.clone());
                    s
                }
            };
        }
        Ok(PatternNode { address, seed })
    }

    /// `(g, F)` for every cluster variable at `address`.
    pub fn g_and_f(&mut self, address: &[usize]) -> Result<Vec<(Vec<i64>, IntPoly)>> {
        let node = self.walk(address)?;
        let b0 = self.root.matrix.clone();
        node.seed
            .cluster
            .iter()
            .map(|x| Ok((extract_g_vector(x, &b0)?, extract_f_polynomial(x, b0.n())?)))
            .collect()
    }
}

/// All reduced addresses of length at most `depth` over `n` directions.
pub fn reduced_addresses(n: usize, depth: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..depth {
        let mut next = Vec::new();
        for a in &frontier {
            for k in 0..n {
                if a.last() != Some(&k) {
                    let mut b: Vec<usize> = a.clone();
                    b.push(k);
                    next.push(b);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// A rational expression `N · (1 + y_k)^e` with `N` a Laurent polynomial.
#[derive(Clone, Debug)]
pub struct PowerOfOnePlus {
    pub numer: LaurentPoly,
    pub exp: i64,
    pub k: usize,
}

impl PowerOfOnePlus {
    fn one_plus(vars: &[String], k: usize) -> LaurentPoly {
        &LaurentPoly::one(vars) + &LaurentPoly::var(vars, k)
    }

    /// Multiply by `(1 + y_k)^t` and return the result as a Laurent polynomial,
    /// if the division is exact.
    pub fn times_power(&self, t: i64) -> Result<LaurentPoly> {
        let e = self.exp + t;
        let base = Self::one_plus(self.numer.vars(), self.k);
        if e >= 0 {
            Ok(&self.numer * &base.pow(e as u32))
        } else {
            self.numer.div_exact(&base.pow((-e) as u32))
        }
    }
}

/// The right-hand side `(y'_k + 1)^{h'} F'(y')` of the F-recurrence, rewritten
/// in the variables `y` via `y'_k = y_k^{-1}` and
/// `y'_i = y_i y_k^{[b_ki]+} (1 + y_k)^{-b_ki}`.
pub fn f_recurrence_rhs(f_prime: &IntPoly, b: &ExchangeMatrix, k: usize, h_prime: i64) -> PowerOfOnePlus {
    let n = b.n();
    let vars = f_prime.vars().to_vec();
    // each term: c · y^{mono} (1+y_k)^{p}
    let mut parts: Vec<(Vec<i64>, BigInt, i64)> = Vec::new();
    for (e, c) in f_prime.terms() {
        let mut mono = vec![0i64; n];
        let mut p = 0i64;
        for i in 0..n {
            if i == k {
                mono[k] -= e[k];
            } else {
                mono[i] += e[i];
                mono[k] += pos(b.b[k][i]) * e[i];
                p -= b.b[k][i] * e[i];
            }
        }
        // (y'_k + 1)^{h'} = (1 + y_k)^{h'} y_k^{-h'}
        mono[k] -= h_prime;
        parts.push((mono, c.clone(), p + h_prime));
    }
    let min_p = parts.iter().map(|t| t.2).min().unwrap_or(0);
    let base = PowerOfOnePlus::one_plus(&vars, k);
    let mut numer = LaurentPoly::zero(&vars);
    for (mono, c, p) in parts {
        let t = LaurentPoly::monomial(&vars, mono, c);
        numer = &numer + &(&t * &base.pow((p - min_p) as u32));
    }
    PowerOfOnePlus { numer, exp: min_p, k }
}

/// Check `(y_k + 1)^{h} F(y) = (y'_k + 1)^{h'} F'(y')`.
pub fn f_recurrence_holds(f: &IntPoly, f_prime: &IntPoly, b: &ExchangeMatrix, k: usize, h: i64, h_prime: i64) -> bool {
    let rhs = f_recurrence_rhs(f_prime, b, k, h_prime);
    let base = PowerOfOnePlus::one_plus(f.vars(), k);
    let shift = h - rhs.exp;
    if shift >= 0 {
        f * &base.pow(shift as u32) == rhs.numer
    } else {
        rhs.times_power(-h).map(|r| &r == f).unwrap_or(false)
    }
}

/// Solve the F-recurrence for `F` given `F'`, `h` and `h'`.
pub fn f_from_recurrence(f_prime: &IntPoly, b: &ExchangeMatrix, k: usize, h: i64, h_prime: i64) -> Result<IntPoly> {
    let rhs = f_recurrence_rhs(f_prime, b, k, h_prime);
    let f = rhs.times_power(-h).map_err(|_| Error::NonPolynomialResult)?;
    if !f.is_polynomial() {
        return Err(Error::NonPolynomialResult);
    }
    Ok(f)
}

/// g-vector transformation under a change of initial seed by `μ_k`.
pub fn g_recurrence(g: &[i64], b: &ExchangeMatrix, k: usize, h_k: i64) -> Vec<i64> {
    (0..g.len())
        .map(|j| if j == k { -g[k] } else { g[j] + pos(b.b[j][k]) * g[k] - b.b[j][k] * h_k })
        .collect()
}

/// Failures found by [`check_initial_seed_recurrences`].
#[derive(Clone, Debug, Default)]
pub struct RecurrenceReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

/// For every reduced address of length `≤ depth` and every direction `k`,
/// compare `(g, F)` computed from the root with `(g', F')` computed from
/// `μ_k(root)` at the same vertex of the tree.
pub fn check_initial_seed_recurrences(b0: &ExchangeMatrix, depth: usize) -> Result<RecurrenceReport> {
    let n = b0.n();
    let mut base = Pattern::new(Seed::initial(b0.clone(), CoefficientMode::Principal));
    let mut report = RecurrenceReport::default();
    for k in 0..n {
        let b1 = b0.mutate(k)?;
        let mut shifted = Pattern::new(Seed::initial(b1.clone(), CoefficientMode::Principal));
        for addr in reduced_addresses(n, depth) {
            let here = base.g_and_f(&addr)?;
            let mut addr1 = vec![k];
            addr1.extend(&addr);
            let there = shifted.g_and_f(&addr1)?;
            for (l, ((g, f), (g1, f1))) in here.iter().zip(&there).enumerate() {
                report.checked += 1;
                let h = cluster_h_vector(f, b0)?;
                let h1 = cluster_h_vector(f1, &b1)?;
                let expected = g_recurrence(g, b0, k, h[k]);
                if expected != *g1 {
                    report.failures.push(format!("g at {addr:?} var {l} dir {k}: {expected:?} vs {g1:?}"));
                }
                if g[k] != h[k] - h1[k] {
                    report.failures.push(format!("g_k = h_k - h'_k at {addr:?} var {l} dir {k}"));
                }
                if !f_recurrence_holds(f, f1, b0, k, h[k], h1[k]) {
                    report.failures.push(format!("F at {addr:?} var {l} dir {k}"));
                }
            }
        }
    }
    Ok(report)
}

/// Exchange graph of unlabeled seeds found within a BFS depth.
#[derive(Clone, Debug)]
pub struct ExchangeGraph {
    pub nodes: Vec<Seed>,
    pub edges: Vec<(usize, usize)>,
    /// True when the frontier emptied before the depth bound was reached.
    pub closed: bool,
    /// Pairs of labeled seeds with equal clusters but different matrices.
    pub collisions: Vec<String>,
    pub root_matrix: ExchangeMatrix,
}

pub fn exchange_graph_bfs(root: &Seed, depth: usize) -> Result<ExchangeGraph> {
    let key = |s: &Seed| s.canonical().0.cluster;
    let (root_canon, _) = root.canonical();
    let mut index: HashMap<Vec<LaurentPoly>, usize> = HashMap::new();
    let mut nodes = vec![root_canon.clone()];
    index.insert(root_canon.cluster.clone(), 0);
    let mut edges = std::collections::BTreeSet::new();
    let mut collisions = Vec::new();
    let mut frontier = vec![(0usize, root.clone())];
    let mut closed = false;
    for level in 0..=depth {
        if frontier.is_empty() {
            closed = true;
            break;
        }
        if level == depth {
            break;
        }
        let mut next = Vec::new();
        for (id, seed) in &frontier {
            for k in 0..seed.n() {
                let m = seed.mutate(k)?;
                let (canon, _) = m.canonical();
                let kkey = key(&m);
                let target = match index.get(&kkey) {
                    Some(&t) => {
                        if nodes[t].matrix != canon.matrix {
                            collisions.push(format!("cluster {:?} carries two matrices", kkey));
                        }
                        t
                    }
                    None => {
                        let t = nodes.len();
                        nodes.push(canon);
                        index.insert(kkey, t);
                        next.push((t, m));
                        t
                    }
                };
                edges.insert(((*id).min(target), (*id).max(target)));
            }
        }
        frontier = next;
    }
    if frontier.is_empty() {
        closed = true;
    }
    Ok(ExchangeGraph { nodes, edges: edges.into_iter().collect(), closed, collisions, root_matrix: root.matrix.clone() })
}

impl ExchangeGraph {
    /// Graphviz rendering; principal-coefficient nodes are labeled by their
    /// g-vector matrix (columns = cluster variables), others by the cluster.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph exchange {\n  node [shape=box, fontname=\"monospace\"];\n");
        for (i, seed) in self.nodes.iter().enumerate() {
            let label = match seed.mode {
                CoefficientMode::Principal => {
                    let gs: Vec<Vec<i64>> = seed
                        .cluster
                        .iter()
                        .map(|x| extract_g_vector(x, &self.root_matrix).unwrap_or_default())
                        .collect();
                    let n = seed.n();
                    (0..n)
                        .map(|r| gs.iter().map(|g| g.get(r).copied().unwrap_or(0).to_string()).collect::<Vec<_>>().join(" "))
                        .collect::<Vec<_>>()
                        .join("\\n")
                }
                CoefficientMode::CoefficientFree => {
                    seed.cluster.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("\\n")
                }
            };
            let _ = writeln!(s, "  n{i} [label=\"{label}\"];");
        }
        for (a, b) in &self.edges {
            let _ = writeln!(s, "  n{a} -- n{b};");
        }
        s.push_str("}\n");
        s
    }
}

/// JSON form of a seed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeedJson {
    pub n: usize,
    #[serde(rename = "B")]
    pub b: Vec<Vec<i64>>,
    #[serde(rename = "D")]
    pub d: Vec<i64>,
    pub mode: CoefficientMode,
    pub cluster: Vec<String>,
    pub coeffs: Vec<Vec<i64>>,
}

impl Seed {
    pub fn to_json(&self) -> SeedJson {
        SeedJson {
            n: self.n(),
            b: self.matrix.b.clone(),
            d: self.matrix.d.clone(),
            mode: self.mode,
            cluster: self.cluster.iter().map(|x| x.to_string()).collect(),
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn from_json(j: &SeedJson) -> Result<Self> {
        let matrix = ExchangeMatrix::new(j.b.clone(), j.d.clone())?;
        if matrix.n() != j.n || j.cluster.len() != j.n || j.coeffs.len() != j.n {
            return Err(Error::Parse("seed sizes disagree".into()));
        }
        let vars = pattern_vars(j.n, j.mode);
        let cluster = j.cluster.iter().map(|s| LaurentPoly::parse(s, &vars)).collect::<Result<Vec<_>>>()?;
        Ok(Seed { matrix, mode: j.mode, cluster, coeffs: j.coeffs.clone() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bt0() -> ExchangeMatrix {
        ExchangeMatrix::new(vec![vec![0, -1, 0], vec![2, 0, -2], vec![0, 1, 0]], vec![2, 1, 2]).unwrap()
    }

    #[test]
    fn matrix_mutation_examples() {
        let b1 = bt0().mutate(0).unwrap();
        assert_eq!(b1.b, vec![vec![0, 1, 0], vec![-2, 0, -2], vec![0, 1, 0]]);
        let b2 = ExchangeMatrix::new(vec![vec![0, 1, 0], vec![-2, 0, 2], vec![0, -1, 0]], vec![2, 1, 2]).unwrap();
        assert_eq!(b2.mutate(1).unwrap().b, vec![vec![0, -1, 2], vec![2, 0, -2], vec![-2, 1, 0]]);
        for k in 0..3 {
            let m = bt0().mutate(k).unwrap();
            assert!(m.is_skew_symmetrizable());
            assert_eq!(m.mutate(k).unwrap(), bt0());
        }
        assert!(matches!(bt0().mutate(3), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn symmetrizer_inference() {
        let m = ExchangeMatrix::from_b(vec![vec![0, 1], vec![-2, 0]]).unwrap();
        assert_eq!(m.d, vec![2, 1]);
        assert_eq!(ExchangeMatrix::from_b(bt0().b).unwrap().d, vec![2, 1, 2]);
        assert!(ExchangeMatrix::from_b(vec![vec![0, 1], vec![1, 0]]).is_err());
    }

    #[test]
    fn first_mutation_of_principal_seed() {
        let s = Seed::initial(bt0(), CoefficientMode::Principal);
        let m = s.mutate(2).unwrap();
        let vars = s.vars();
        assert_eq!(m.cluster[2], LaurentPoly::parse("x2^2 x3^-1 + y3 x3^-1", &vars).unwrap());
        assert_eq!(extract_g_vector(&m.cluster[2], &bt0()).unwrap(), vec![0, 2, -1]);
        assert_eq!(extract_f_polynomial(&m.cluster[2], 3).unwrap().to_string(), "1 + y3");
        assert_eq!(m.mutate(2).unwrap(), s);
        assert_eq!(extract_g_vector(&s.cluster[1], &bt0()).unwrap(), vec![0, 1, 0]);
        assert!(extract_f_polynomial(&s.cluster[1], 3).unwrap().is_one());
    }

    #[test]
    fn walk_reaches_t4() {
        let s = Seed::initial(bt0(), CoefficientMode::Principal);
        let node = pattern_walk(&s, &[0, 2, 1, 2]).unwrap();
        assert_eq!(node.seed.matrix.b, vec![vec![0, 1, -2], vec![-2, 0, 2], vec![2, -1, 0]]);
        assert_eq!(pattern_walk(&s, &[1, 1]).unwrap().seed, s);
        assert!(pattern_walk(&s, &[]).unwrap().address.is_empty());
    }

    #[test]
    fn reconstruction_from_g_and_f() {
        let b0 = bt0();
        let mut p = Pattern::new(Seed::initial(b0.clone(), CoefficientMode::Principal));
        for addr in reduced_addresses(3, 3) {
            let node = p.walk(&addr).unwrap();
            for x in &node.seed.cluster {
                let g = extract_g_vector(x, &b0).unwrap();
                let f = extract_f_polynomial(x, 3).unwrap();
                assert_eq!(&reconstruct(&g, &f, &b0, CoefficientMode::Principal).unwrap(), x);
            }
        }
    }

    #[test]
    fn h_vector_of_simple_f() {
        let ys = var_names("y", 3);
        assert_eq!(cluster_h_vector(&LaurentPoly::one(&ys), &bt0()).unwrap(), vec![0, 0, 0]);
        let f = LaurentPoly::parse("1 + y3", &ys).unwrap();
        assert_eq!(cluster_h_vector(&f, &bt0()).unwrap(), vec![0, 0, -1]);
    }

    #[test]
    fn quadrilateral_exchange_relation() {
        // Coefficient-free A1 x A1 neighbourhood of a square: X X' = X1 X3 + X2 X4
        // realised by an A3 pattern mutating the middle vertex.
        let b = ExchangeMatrix::from_b(vec![vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]]).unwrap();
        let s = Seed::initial(b, CoefficientMode::CoefficientFree);
        let m = s.mutate(1).unwrap();
        let prod = &s.cluster[1] * &m.cluster[1];
        let vars = s.vars();
        assert_eq!(prod, LaurentPoly::parse("x1 + x3", &vars).unwrap());
    }

    #[test]
    fn initial_seed_recurrences_rank_two() {
        let b = ExchangeMatrix::from_b(vec![vec![0, 1], vec![-2, 0]]).unwrap();
        let r = check_initial_seed_recurrences(&b, 4).unwrap();
        assert!(r.failures.is_empty(), "{:?}", r.failures);
        assert!(r.checked > 0);
    }

    #[test]
    fn rank_two_closures() {
        let a2 = Seed::initial(ExchangeMatrix::from_b(vec![vec![0, 1], vec![-1, 0]]).unwrap(), CoefficientMode::Principal);
        let g = exchange_graph_bfs(&a2, 10).unwrap();
        assert!(g.closed);
        assert_eq!(g.nodes.len(), 5);
        assert_eq!(g.edges.len(), 5);
        let c2 = Seed::initial(ExchangeMatrix::from_b(vec![vec![0, 1], vec![-2, 0]]).unwrap(), CoefficientMode::Principal);
        let g = exchange_graph_bfs(&c2, 10).unwrap();
        assert!(g.closed);
        assert_eq!(g.nodes.len(), 6);
        assert!(g.collisions.is_empty());
        assert!(g.to_dot().contains("--"));
        assert_eq!(exchange_graph_bfs(&c2, 0).unwrap().nodes.len(), 1);
        assert!(exchange_graph_bfs(&c2, 0).unwrap().edges.is_empty());
    }

    #[test]
    fn seed_json_roundtrip() {
        let s = Seed::initial(bt0(), CoefficientMode::Principal).mutate(2).unwrap().mutate(1).unwrap();
        let j = serde_json::to_string(&s.to_json()).unwrap();
        let back: SeedJson = serde_json::from_str(&j).unwrap();
        assert_eq!(Seed::from_json(&back).unwrap(), s);
    }
}
