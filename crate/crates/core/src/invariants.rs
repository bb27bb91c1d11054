//! Representation-theoretic invariants of decorated representations:
//! g-vectors, h-vectors, locally free F-polynomials (by point counting over
//! prime fields, or by unwinding the mutation recurrence), Caldero–Chapoton
//! functions and the E-invariant.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Field, Fp};
use crate::gentle::PathAlgebra;
use crate::laurent::{interpolate_int_poly, var_names, IntPoly, LaurentPoly};
use crate::matrix::{complement, coordinates, Matrix};
use crate::mutation::{is_free, mutate_decorated, LocalDiagram};
use crate::orbifold::Triangulation;
use crate::rep::{DecoratedRep, Rep};
use crate::seed::{f_from_recurrence, f_recurrence_holds, g_recurrence, reconstruct, CoefficientMode};
use crate::Q;

/// `(free rank)` of each decoration summand; errors on socle excess.
fn decoration_ranks<F: Field>(m: &DecoratedRep<F>) -> Result<Vec<i64>> {
    m.decoration
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| {
            if b == 0 {
                Ok(a as i64)
            } else {
                Err(Error::GVectorUndefined(format!("decoration at `{}` is not free", m.module.quiver.vertices[i])))
            }
        })
        .collect()
}

/// `g_k = rk ker γ_k − rk M(k) + rk V(k)`.
pub fn g_vector<F: Field>(m: &DecoratedRep<F>) -> Result<Vec<i64>> {
    let rv = m.module.rank_vector()?;
    let dec = decoration_ranks(m)?;
    let q = &m.module.quiver;
    (0..q.n())
        .map(|k| {
            let diag = LocalDiagram::new(&m.module, k)?;
            let ker = diag.gamma.kernel().cols();
            let d = q.d[k];
            if ker % d != 0 {
                return Err(Error::NotLocallyFree(format!("ker γ at `{}`", q.vertices[k])));
            }
            Ok((ker / d) as i64 - rv[k] as i64 + dec[k])
        })
        .collect()
}

/// `g_k = −p_k + q_k + rk V(k)` where `0 → M → ⊕ I_k^{p_k} → ⊕ I_k^{q_k}` is
/// the start of a minimal injective copresentation, obtained as the dual of a
/// minimal projective presentation of `DM` over the opposite algebra.
pub fn g_vector_from_copresentation<F: Field>(m: &DecoratedRep<F>) -> Result<Vec<i64>> {
    let dec = decoration_ranks(m)?;
    let n = m.module.n();
    let dual = m.module.dual();
    let alg = PathAlgebra::build(dual.quiver.clone())?;
    let pres = alg.projective_presentation(&dual);
    let p = pres.multiplicities0(n);
    let q = pres.multiplicities1(n);
    debug_assert_eq!(p, m.module.socle_dims());
    Ok((0..n).map(|k| -(p[k] as i64) + q[k] as i64 + dec[k]).collect())
}

/// h-vector with a definedness mask: `h_k = −rk ker β_k` where `ker β_k` is free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HVector {
    pub values: Vec<i64>,
    pub defined: Vec<bool>,
}

pub fn h_vector<F: Field>(m: &Rep<F>) -> Result<HVector> {
    let n = m.n();
    let mut values = vec![0; n];
    let mut defined = vec![false; n];
    for k in 0..n {
        let diag = LocalDiagram::new(m, k)?;
        let kb = diag.beta.kernel();
        let d = m.quiver.d[k];
        if is_free(&kb, &diag.eps_k, d) {
            defined[k] = true;
            values[k] = -((kb.cols() / d) as i64);
        }
    }
    Ok(HVector { values, defined })
}

fn h_at<F: Field>(m: &Rep<F>, k: usize) -> Result<i64> {
    let h = h_vector(m)?;
    if h.defined[k] {
        Ok(h.values[k])
    } else {
        Err(Error::NotLocallyFree(format!("ker β at `{}`", m.quiver.vertices[k])))
    }
}

// ---------------------------------------------------------------------------
// Point counting of locally free submodules over prime fields.

/// Limits for the point-counting oracle.
#[derive(Clone, Debug)]
pub struct OracleConfig {
    /// Refuse modules of larger total dimension.
    pub max_dim: usize,
    /// Samples beyond the degree bound, used to confirm the interpolation.
    pub extra_samples: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_dim: 12, extra_samples: 1 }
    }
}

/// Primes used as sample points.
pub const SAMPLE_PRIMES: [u64; 16] = [5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61];

/// Bases of all `k`-dimensional subspaces of `F^n`, one per reduced echelon form.
fn rref_subspaces<F: Field>(n: usize, k: usize, elems: &[F]) -> Vec<Matrix<F>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        // free slots (row, col): col > pivot[row], col not a pivot
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                let pv = pivots.clone();
                ((pv[r] + 1)..n).filter(move |c| !pv.contains(c)).map(move |c| (r, c))
            })
            .collect();
        let mut digits = vec![0usize; free.len()];
        loop {
            let mut b = Matrix::zeros(n, k);
            for (r, &p) in pivots.iter().enumerate() {
                b[(p, r)] = F::one();
            }
            for (slot, &(r, c)) in free.iter().enumerate() {
                b[(c, r)] = elems[digits[slot]].clone();
            }
            out.push(b);
            // mixed-radix increment
            let mut i = 0;
            while i < digits.len() {
                digits[i] += 1;
                if digits[i] < elems.len() {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == digits.len() {
                break;
            }
        }
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if pivots[i] < n - k + i {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
        if k == 0 {
            return out;
        }
    }
}

/// All `ε`-stable subspaces of `M(v) ≅ H^a` that are free of rank `r`.
/// With `t` spanning a complement of `ker ε`, such a subspace is spanned by
/// `t X + ε t Y` and `ε t X` for `X` in echelon form and `Y` vanishing on the
/// pivot rows of `X`.
fn free_submodules<F: Field>(eps: &Matrix<F>, r: usize, elems: &[F]) -> Vec<Matrix<F>> {
    let n = eps.rows();
    let a = n / 2;
    let kernel = eps.kernel();
    let t = complement(&kernel, &Matrix::identity(n));
    let et = eps * &t;
    let mut out = Vec::new();
    for x in rref_subspaces(a, r, elems) {
        let pivot_rows: Vec<usize> = (0..r).map(|c| (0..a).find(|&row| !x[(row, c)].is_zero()).unwrap()).collect();
        let slots: Vec<(usize, usize)> =
            (0..a).filter(|row| !pivot_rows.contains(row)).flat_map(|row| (0..r).map(move |c| (row, c))).collect();
        let tx = &t * &x;
        let etx = &et * &x;
        let mut digits = vec![0usize; slots.len()];
        loop {
            let mut y = Matrix::zeros(a, r);
            for (s, &(row, c)) in slots.iter().enumerate() {
                y[(row, c)] = elems[digits[s]].clone();
            }
            let gens = &tx + &(&et * &y);
            out.push(Matrix::hstack(&[&gens, &etx], n));
            let mut i = 0;
            while i < digits.len() {
                digits[i] += 1;
                if digits[i] < elems.len() {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == digits.len() {
                break;
            }
        }
    }
    out
}

/// Rows spanning the annihilator: `A v = 0` iff `v` lies in the column span of `b`.
fn annihilator<F: Field>(b: &Matrix<F>, n: usize) -> Matrix<F> {
    if b.cols() == 0 {
        return Matrix::identity(n);
    }
    b.transpose().kernel().transpose()
}

/// Number of `k`-dimensional subspaces of `F_q^n`.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

struct Counter<'a, F: Field> {
    dims: &'a [usize],
    d: &'a [usize],
    r: &'a [usize],
    /// proper arrows `(source, target, matrix)`
    arrows: Vec<(usize, usize, Matrix<F>)>,
    eps: Vec<Option<Matrix<F>>>,
    elems: Vec<F>,
    order: Vec<usize>,
    counted: Vec<usize>,
    pending_candidates: Vec<Vec<(Matrix<F>, Matrix<F>)>>,
    p: u64,
}

impl<F: Field> Counter<'_, F> {
    /// `(W, Z)`: columns that must lie in `U_v` and rows that must kill `U_v`,
    /// from arrows to and from already assigned vertices.
    fn bounds(&self, v: usize, assigned: &[Option<(Matrix<F>, Matrix<F>)>]) -> (Matrix<F>, Matrix<F>) {
        let n = self.dims[v];
        let mut w_parts = Vec::new();
        let mut z_parts = Vec::new();
        for (s, t, m) in &self.arrows {
            if *t == v {
                if let Some((bs, _)) = &assigned[*s] {
                    w_parts.push(m * bs);
                }
            }
            if *s == v {
                if let Some((_, at)) = &assigned[*t] {
                    z_parts.push(at * m);
                }
            }
        }
        let w = Matrix::hstack(&w_parts.iter().collect::<Vec<_>>(), n);
        let z = Matrix::vstack(&z_parts.iter().collect::<Vec<_>>(), n);
        (w, z)
    }

    fn search(&self, pos: usize, assigned: &mut Vec<Option<(Matrix<F>, Matrix<F>)>>) -> u128 {
        if pos == self.order.len() {
            let mut total: u128 = 1;
            for &v in &self.counted {
                let (w, z) = self.bounds(v, assigned);
                let wspan = w.column_space();
                let upper = if z.rows() == 0 { Matrix::identity(self.dims[v]) } else { z.kernel() };
                if coordinates(&upper, &wspan).is_none() {
                    return 0;
                }
                let (lo, hi) = (wspan.cols(), upper.cols());
                if self.r[v] < lo || self.r[v] > hi {
                    return 0;
                }
                total *= gaussian_binomial(hi - lo, self.r[v] - lo, self.p);
                if total == 0 {
                    return 0;
                }
            }
            return total;
        }
        let v = self.order[pos];
        let n = self.dims[v];
        let (w, z) = self.bounds(v, assigned);
        let mut total = 0u128;
        let mut visit = |b: Matrix<F>, a: Matrix<F>, assigned: &mut Vec<Option<(Matrix<F>, Matrix<F>)>>| {
            assigned[v] = Some((b, a));
            total += self.search(pos + 1, assigned);
            assigned[v] = None;
        };
        if self.d[v] == 2 {
            for (b, a) in &self.pending_candidates[v] {
                if (w.cols() == 0 || (a * &w).is_zero()) && (z.rows() == 0 || (&z * b).is_zero()) {
                    visit(b.clone(), a.clone(), assigned);
                }
            }
        } else {
            let wspan = w.column_space();
            let upper = if z.rows() == 0 { Matrix::identity(n) } else { z.kernel() };
            if coordinates(&upper, &wspan).is_none() || self.r[v] < wspan.cols() || self.r[v] > upper.cols() {
                return 0;
            }
            let c = complement(&wspan, &upper);
            for s in rref_subspaces(c.cols(), self.r[v] - wspan.cols(), &self.elems) {
                let b = Matrix::hstack(&[&wspan, &(&c * &s)], n);
                let a = annihilator(&b, n);
                visit(b, a, assigned);
            }
        }
        let _ = &self.eps;
        total
    }
}

fn to_field<F: Field>(m: &Matrix<Q>) -> Option<Matrix<F>> {
    let ok = std::cell::Cell::new(true);
    let out = m.map(|x| {
        F::from_rational(x).unwrap_or_else(|| {
            ok.set(false);
            F::zero()
        })
    });
    ok.get().then_some(out)
}

/// Number of locally free submodules of rank vector `r`, over `F_P`;
/// `None` if the matrices of `m` do not reduce modulo `P`.
fn count_generic<const P: u64>(m: &Rep<Q>, r: &[usize]) -> Option<u128> {
    type F<const P: u64> = Fp<P>;
    let q = &m.quiver;
    let n = q.n();
    let elems: Vec<F<P>> = (0..P as i64).map(F::<P>::from_i64).collect();
    let mut arrows = Vec::new();
    for a in q.proper_arrows() {
        arrows.push((q.arrows[a].source, q.arrows[a].target, to_field::<F<P>>(&m.maps[a])?));
    }
    let mut eps = vec![None; n];
    let mut pending_candidates = vec![Vec::new(); n];
    for v in 0..n {
        if q.d[v] == 2 {
            let e = to_field::<F<P>>(&m.maps[q.loop_at(v).expect("pending vertex has a loop")])?;
            pending_candidates[v] = free_submodules(&e, r[v], &elems)
                .into_iter()
                .map(|b| {
                    let a = annihilator(&b, m.dims[v]);
                    (b, a)
                })
                .collect();
            eps[v] = Some(e);
        }
    }
    // ordinary vertices with no arrows among them are counted in closed form
    let mut counted: Vec<usize> = Vec::new();
    let mut ordinary: Vec<usize> = (0..n).filter(|&v| q.d[v] == 1).collect();
    ordinary.sort_by_key(|&v| std::cmp::Reverse(m.dims[v]));
    for v in ordinary {
        let adjacent = counted.iter().any(|&u| arrows.iter().any(|(s, t, _)| (*s == u && *t == v) || (*s == v && *t == u)));
        if !adjacent {
            counted.push(v);
        }
    }
    let mut order: Vec<usize> = (0..n).filter(|v| !counted.contains(v)).collect();
    order.sort_by_key(|&v| (q.d[v] == 1, pending_candidates[v].len()));
    let counter = Counter {
        dims: &m.dims,
        d: &q.d,
        r,
        arrows,
        eps,
        elems,
        order,
        counted,
        pending_candidates,
        p: P,
    };
    let mut assigned = vec![None; n];
    Some(counter.search(0, &mut assigned))
}

/// Count locally free submodules of rank vector `r` over `F_p` for a
/// supported sample prime `p`.
pub fn count_lf_submodules(m: &Rep<Q>, r: &[usize], p: u64) -> Result<Option<u128>> {
    macro_rules! dispatch {
        ($($p:literal),*) => {
            match p {
                $($p => Ok(count_generic::<$p>(m, r)),)*
                _ => Err(Error::Unsupported(format!("sample prime {p}"))),
            }
        };
    }
    dispatch!(5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61)
}

/// Upper bound `Σ r_i (dim M(i) − d_i r_i)` on the degree of the point count.
pub fn degree_bound(m: &Rep<Q>, r: &[usize]) -> usize {
    (0..m.n()).map(|i| r[i] * (m.dims[i] - m.quiver.d[i] * r[i])).sum()
}

fn rank_vectors(bound: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &b in bound {
        out = out.into_iter().flat_map(|v| (0..=b).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

/// Euler characteristic of the locally free quiver Grassmannian of rank `r`,
/// read off as `P(1)` from the interpolated point count `P(q)`.
pub fn grassmannian_euler_characteristic(m: &Rep<Q>, r: &[usize], cfg: &OracleConfig) -> Result<BigInt> {
    let need = degree_bound(m, r) + 1 + cfg.extra_samples;
    let mut samples: Vec<(i64, BigInt)> = Vec::new();
    for &p in &SAMPLE_PRIMES {
        if samples.len() == need {
            break;
        }
        if let Some(c) = count_lf_submodules(m, r, p)? {
            samples.push((p as i64, BigInt::from(c)));
        }
    }
    if samples.len() < need {
        return Err(Error::SizeBound { dim: need, bound: SAMPLE_PRIMES.len() });
    }
    let fit = &samples[..need - cfg.extra_samples];
    let poly = interpolate_int_poly(fit)?;
    for (q, c) in &samples[need - cfg.extra_samples..] {
        let v = poly.evaluate(&[Q::from_integer(BigInt::from(*q))]);
        if v != Q::from_integer(c.clone()) {
            return Err(Error::NonIntegerCoefficient(format!(
                "point count for rank {r:?} is not a polynomial of degree ≤ {}",
                need - 1 - cfg.extra_samples
            )));
        }
    }
    Ok(poly.evaluate(&[Q::one()]).to_integer())
}

/// Locally free F-polynomial `Σ_r χ(Gr_lf(r, M)) y^r` by point counting.
pub fn lf_f_polynomial(m: &Rep<Q>, cfg: &OracleConfig) -> Result<IntPoly> {
    let total = m.total_dim();
    if total > cfg.max_dim {
        return Err(Error::SizeBound { dim: total, bound: cfg.max_dim });
    }
    let rank = m.rank_vector()?;
    let n = m.n();
    let vars = var_names("y", n);
    let chis: Vec<(Vec<usize>, BigInt)> = rank_vectors(&rank)
        .into_par_iter()
        .map(|r| grassmannian_euler_characteristic(m, &r, cfg).map(|c| (r, c)))
        .collect::<Result<Vec<_>>>()?;
    Ok(LaurentPoly::from_terms(
        &vars,
        chis.into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(r, c)| (r.into_iter().map(|x| x as i64).collect(), c)),
    ))
}

// ---------------------------------------------------------------------------
// Mutation chains.

/// One step of a mutation chain: the object and the triangulation it lives on.
#[derive(Clone, Debug)]
pub struct ChainStep {
    pub triangulation: Triangulation,
    pub rep: DecoratedRep<Q>,
}

/// `E_ℓ⁻` over `start`, followed by mutations at `sequence` (applied in order).
pub fn mutation_chain(start: &Triangulation, l: usize, sequence: &[usize]) -> Result<Vec<ChainStep>> {
    let q = Arc::new(start.quiver()?);
    if l >= q.n() {
        return Err(Error::IndexOutOfRange { index: l, n: q.n() });
    }
    let mut steps = vec![ChainStep { triangulation: start.clone(), rep: DecoratedRep::negative_simple(q, l) }];
    for &k in sequence {
        let last = steps.last().unwrap();
        let (t, rep) = mutate_decorated(&last.triangulation, &last.rep, k)?;
        steps.push(ChainStep { triangulation: t, rep });
    }
    Ok(steps)
}

/// Triangulation reached from `t0` by flipping along `address`.
pub fn flip_along(t0: &Triangulation, address: &[usize]) -> Result<Triangulation> {
    address.iter().try_fold(t0.clone(), |t, &k| t.flip(k))
}

/// The decorated representation over `t0` attached to the cluster variable
/// `x_{ℓ;t}`, where `t` is reached from the root by `address`:
/// `μ_{k_1} ⋯ μ_{k_s}(E_ℓ⁻(T_t))`. The result is re-expressed over the
/// quiver of `t0` itself.
pub fn cluster_module(t0: &Triangulation, l: usize, address: &[usize]) -> Result<DecoratedRep<Q>> {
    let tt = flip_along(t0, address)?;
    let rev: Vec<usize> = address.iter().rev().copied().collect();
    let chain = mutation_chain(&tt, l, &rev)?;
    let last = chain.last().unwrap();
    let q0 = Arc::new(t0.quiver()?);
    Ok(DecoratedRep { module: last.rep.module.transport(q0)?, decoration: last.rep.decoration.clone() })
}

/// F-polynomial of the last object of `E_ℓ⁻(start)` mutated along `sequence`,
/// computed only from h-vectors and the recurrence
/// `(y_k+1)^{h_k} F(M)(y) = (y'_k+1)^{h'_k} F(μ_k M)(y')`.
pub fn f_polynomial_by_recurrence(start: &Triangulation, l: usize, sequence: &[usize]) -> Result<IntPoly> {
    let chain = mutation_chain(start, l, sequence)?;
    let n = start.n();
    let mut f = IntPoly::one(&var_names("y", n));
    for (i, &k) in sequence.iter().enumerate() {
        let prev = &chain[i];
        let cur = &chain[i + 1];
        // cur = μ_k(prev), and prev = μ_k(cur) over the triangulation of cur
        let b = cur.triangulation.b_matrix()?;
        let h = h_at(&cur.rep.module, k)?;
        let h_prev = h_at(&prev.rep.module, k)?;
        f = f_from_recurrence(&f, &b, k, h, h_prev)?;
    }
    Ok(f)
}

/// Coefficient-free Caldero–Chapoton function `x^g F(ŷ)`, `ŷ_i = ∏_j x_j^{b_ji}`.
pub fn cc_function(t: &Triangulation, m: &DecoratedRep<Q>, f: &IntPoly) -> Result<LaurentPoly> {
    let g = g_vector(m)?;
    reconstruct(&g, f, &t.b_matrix()?, CoefficientMode::CoefficientFree)
}

// ---------------------------------------------------------------------------
// E-invariant and τ-rigidity.

/// `E^inj(𝓜, 𝓝) = dim Hom(M, N) + Σ_i dim M(i) · g_i(𝓝)`.
pub fn e_inj<F: Field>(m: &DecoratedRep<F>, n: &DecoratedRep<F>) -> Result<i64> {
    let g = g_vector(n)?;
    let hom = m.module.hom_dim(&n.module)? as i64;
    Ok(hom + m.module.dims.iter().zip(&g).map(|(&d, &g)| d as i64 * g).sum::<i64>())
}

/// `E(𝓜) = E^inj(𝓜, 𝓜)`.
pub fn e_invariant<F: Field>(m: &DecoratedRep<F>) -> Result<i64> {
    e_inj(m, m)
}

/// The same quantity through the inverse translate:
/// `dim Hom(τ⁻¹N, M) + Σ_i dim M(i) · rk W(i)`.
pub fn e_inj_ar<F: Field>(alg: &PathAlgebra, m: &DecoratedRep<F>, n: &DecoratedRep<F>) -> Result<i64> {
    let w = decoration_ranks(n)?;
    let tn = alg.ar_translate_inverse(&n.module)?;
    let hom = tn.hom_dim(&m.module)? as i64;
    Ok(hom + m.module.dims.iter().zip(&w).map(|(&d, &w)| d as i64 * w).sum::<i64>())
}

/// `Hom(M, τM) = 0` and `Hom(P(V), M) = 0`.
pub fn is_tau_rigid_pair<F: Field>(alg: &PathAlgebra, m: &DecoratedRep<F>) -> Result<bool> {
    let tau = alg.ar_translate(&m.module);
    if m.module.hom_dim(&tau)? != 0 {
        return Ok(false);
    }
    Ok(m.decoration.iter().enumerate().all(|(i, &(a, b))| (a == 0 && b == 0) || m.module.dims[i] == 0))
}

// ---------------------------------------------------------------------------
// Recurrences across one mutation.

/// How F-polynomials are obtained inside [`verify_recurrences`].
#[derive(Clone, Debug)]
pub enum FSource {
    Oracle(OracleConfig),
    /// Skip the F identity.
    None,
}

/// Named identities, each with its outcome.
#[derive(Clone, Debug, Default)]
pub struct IdentityReport {
    pub items: Vec<(String, bool)>,
}

impl IdentityReport {
    pub fn push(&mut self, name: impl Into<String>, ok: bool) {
        self.items.push((name.into(), ok));
    }

    pub fn all_hold(&self) -> bool {
        self.items.iter().all(|(_, ok)| *ok)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.items.iter().filter(|(_, ok)| !ok).map(|(s, _)| s.as_str()).collect()
    }
}

/// Across `𝓜 ↦ μ_k 𝓜`: the g-recurrence, `g_k = h_k − h'_k`, the F identity
/// and `E(𝓜) = E(μ_k 𝓜)`.
pub fn verify_recurrences(t: &Triangulation, m: &DecoratedRep<Q>, k: usize, fsrc: &FSource) -> Result<IdentityReport> {
    let mut rep = IdentityReport::default();
    let b = t.b_matrix()?;
    let (_, mbar) = mutate_decorated(t, m, k)?;
    let g = g_vector(m)?;
    let gbar = g_vector(&mbar)?;
    let h = h_at(&m.module, k)?;
    let hbar = h_at(&mbar.module, k)?;
    rep.push("g-recurrence", g_recurrence(&g, &b, k, h) == gbar);
    rep.push("g_k = h_k - h'_k", g[k] == h - hbar);
    if let FSource::Oracle(cfg) = fsrc {
        let f = lf_f_polynomial(&m.module, cfg)?;
        let fbar = lf_f_polynomial(&mbar.module, cfg)?;
        rep.push("F recurrence", f_recurrence_holds(&f, &fbar, &b, k, h, hbar));
    }
    rep.push("E preserved", e_invariant(m)? == e_invariant(&mbar)?);
    Ok(rep)
}

/// Integer value of a one-variable point-count polynomial at `q`.
pub fn eval_count(poly: &IntPoly, q: i64) -> Option<i64> {
    poly.evaluate(&[Q::from_integer(BigInt::from(q))]).to_integer().to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn ys(n: usize) -> Vec<String> {
        var_names("y", n)
    }

    #[test]
    fn subspace_enumeration_matches_gaussian_binomials() {
        type F = Fp<5>;
        let elems: Vec<F> = (0..5).map(F::from_i64).collect();
        for n in 0..5 {
            for k in 0..=n {
                assert_eq!(rref_subspaces(n, k, &elems).len() as u128, gaussian_binomial(n, k, 5), "{n} {k}");
            }
        }
    }

    #[test]
    fn free_submodules_of_free_modules() {
        // free rank-r submodules of H^a number Gr(r, a)·q^{r(a−r)}
        type F = Fp<7>;
        let elems: Vec<F> = (0..7).map(F::from_i64).collect();
        for a in 1..=3 {
            let eps = Matrix::block_diag(&vec![&crate::rep::shift_matrix::<F>(2); a]);
            for r in 0..=a {
                let expected = gaussian_binomial(a, r, 7) * 7u128.pow((r * (a - r)) as u32);
                assert_eq!(free_submodules(&eps, r, &elems).len() as u128, expected);
            }
        }
    }

    #[test]
    fn oracle_on_small_modules() {
        let t = fixtures::pending_triangle();
        let q = Arc::new(t.quiver().unwrap());
        let cfg = OracleConfig::default();
        let k = t.arc_index("K").unwrap();
        let zero: Rep<Q> = Rep::zero(q.clone());
        assert!(lf_f_polynomial(&zero, &cfg).unwrap().is_one());
        let e = Rep::<Q>::local_free(q, k);
        let mut expected = IntPoly::one(&ys(3));
        expected = &expected + &IntPoly::var(&ys(3), k);
        assert_eq!(lf_f_polynomial(&e, &cfg).unwrap(), expected);
    }

    #[test]
    fn g_vector_of_negative_simple() {
        let t = &fixtures::c2tilde_triangulations()[0];
        let q = Arc::new(t.quiver().unwrap());
        for l in 0..3 {
            let e = DecoratedRep::<Q>::negative_simple(q.clone(), l);
            let g = g_vector(&e).unwrap();
            assert_eq!(g, (0..3).map(|i| i64::from(i == l)).collect::<Vec<_>>());
            assert_eq!(g_vector_from_copresentation(&e).unwrap(), g);
        }
    }

    #[test]
    fn h_vector_of_local_free() {
        let t = &fixtures::c2tilde_triangulations()[0];
        let q = Arc::new(t.quiver().unwrap());
        for k in 0..3 {
            let h = h_vector(&Rep::<Q>::local_free(q.clone(), k)).unwrap();
            assert!(h.defined.iter().all(|&x| x));
            assert_eq!(h.values, (0..3).map(|i| if i == k { -1 } else { 0 }).collect::<Vec<_>>());
        }
    }
}
