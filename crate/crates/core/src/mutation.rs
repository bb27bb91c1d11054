//! Mutation of (decorated) locally free representations at an arc `k`.
//!
//! The local picture at `k` is the triangle of `H_k`-linear maps
//!
//! ```text
//!            M(k)
//!        α ↗      ↘ β
//!   M_in  ←──γ───  M_out
//! ```
//!
//! where `M_in = ⊕_{a: j→k} H_k ⊗ M(j)` and `M_out = ⊕_{b: k→i} H_k ⊗ M(i)`.
//! Both are stored with coordinates `(arrow, f, m)`: the vector `ε_k^f ⊗ e_m`,
//! `0 ≤ f < d_k`, so that `ε_k` shifts `f` up by one and kills `f = d_k − 1`.
//!
//! * `α(a, f, m) = ε^f M(a) e_m`
//! * `β(m) = Σ_f (b, f, M(b) ε^{d−1−f} m)` for every outgoing `b`
//! * `γ(b, f, m) = (a, f, M(c) m)` whenever `a`, `b` and `c: i → j` bound a
//!   common triangle, and zero otherwise.
//!
//! The mutated space is `ker γ / im β ⊕ im γ ⊕ ker α / im γ (⊕ V_k)`, glued
//! back with an `H_k`-linear retraction `ρ` of `ker γ ⊆ M_out` and an
//! `H_k`-linear section `σ` of `ker α → ker α / im γ`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{complement, coordinates, intersect, Matrix};
use crate::orbifold::{GentleQuiver, Triangulation};
use crate::rep::{shift_matrix, DecoratedRep, Rep};

/// One summand `H_k ⊗ M(v)` of `M_in` or `M_out`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    /// Arrow of the original quiver (`v → k` for inputs, `k → v` for outputs).
    pub arrow: usize,
    pub vertex: usize,
    pub offset: usize,
    pub dim: usize,
}

impl Block {
    fn index(&self, f: usize, m: usize) -> usize {
        self.offset + f * self.dim + m
    }
}

/// The maps `α`, `β`, `γ` at one vertex.
#[derive(Clone, Debug)]
pub struct LocalDiagram<F: Field> {
    pub k: usize,
    pub d: usize,
    pub inputs: Vec<Block>,
    pub outputs: Vec<Block>,
    pub dim_in: usize,
    pub dim_out: usize,
    pub eps_k: Matrix<F>,
    pub eps_in: Matrix<F>,
    pub eps_out: Matrix<F>,
    pub alpha: Matrix<F>,
    pub beta: Matrix<F>,
    pub gamma: Matrix<F>,
}

fn blocks(q: &GentleQuiver, arrows: &[usize], d: usize, dims: &[usize], incoming: bool) -> (Vec<Block>, usize) {
    let mut offset = 0;
    let mut out = Vec::new();
    for &a in arrows {
        let v = if incoming { q.arrows[a].source } else { q.arrows[a].target };
        out.push(Block { arrow: a, vertex: v, offset, dim: dims[v] });
        offset += d * dims[v];
    }
    (out, offset)
}

fn shift_on_blocks<F: Field>(bs: &[Block], d: usize, total: usize) -> Matrix<F> {
    let mut e = Matrix::zeros(total, total);
    for b in bs {
        for f in 0..d.saturating_sub(1) {
            for m in 0..b.dim {
                e[(b.index(f + 1, m), b.index(f, m))] = F::one();
            }
        }
    }
    e
}

/// Reject configurations outside the scope of the construction: a vertex
/// that is both a source and a target of arrows at `k`, or parallel arrows.
fn check_simple_neighbourhood(q: &GentleQuiver, k: usize) -> Result<()> {
    let ins: Vec<usize> = q.arrows_in(k).iter().map(|&a| q.arrows[a].source).collect();
    let outs: Vec<usize> = q.arrows_out(k).iter().map(|&a| q.arrows[a].target).collect();
    let name = &q.vertices[k];
    for (i, v) in ins.iter().enumerate() {
        if ins[i + 1..].contains(v) {
            return Err(Error::Unsupported(format!("parallel arrows into `{name}`")));
        }
        if outs.contains(v) {
            return Err(Error::Unsupported(format!("2-cycle through `{name}`")));
        }
    }
    for (i, v) in outs.iter().enumerate() {
        if outs[i + 1..].contains(v) {
            return Err(Error::Unsupported(format!("parallel arrows out of `{name}`")));
        }
    }
    Ok(())
}

impl<F: Field> LocalDiagram<F> {
    pub fn new(m: &Rep<F>, k: usize) -> Result<Self> {
        let q = &*m.quiver;
        if k >= q.n() {
            return Err(Error::IndexOutOfRange { index: k, n: q.n() });
        }
        check_simple_neighbourhood(q, k)?;
        let d = q.d[k];
        let (inputs, dim_in) = blocks(q, &q.arrows_in(k), d, &m.dims, true);
        let (outputs, dim_out) = blocks(q, &q.arrows_out(k), d, &m.dims, false);
        let eps_k = m.eps(k);
        let dk = m.dims[k];

        let mut alpha = Matrix::zeros(dk, dim_in);
        for blk in &inputs {
            let mut img = m.maps[blk.arrow].clone();
            for f in 0..d {
                alpha.set_block(0, blk.index(f, 0), &img);
                img = &eps_k * &img;
            }
        }

        let mut beta = Matrix::zeros(dim_out, dk);
        for blk in &outputs {
            for f in 0..d {
                let blockmap = &m.maps[blk.arrow] * &eps_k.pow(d - 1 - f);
                beta.set_block(blk.index(f, 0), 0, &blockmap);
            }
        }

        let mut gamma = Matrix::zeros(dim_in, dim_out);
        for bo in &outputs {
            let tb = q.arrows[bo.arrow].triangle;
            for bi in &inputs {
                let ta = q.arrows[bi.arrow].triangle;
                if ta.is_none() || ta != tb {
                    continue;
                }
                let c = q
                    .arrows_between(bo.vertex, bi.vertex)
                    .into_iter()
                    .find(|&c| q.arrows[c].triangle == ta);
                if let Some(c) = c {
                    for f in 0..d {
                        gamma.set_block(bi.index(f, 0), bo.index(f, 0), &m.maps[c]);
                    }
                }
            }
        }

        Ok(LocalDiagram {
            k,
            d,
            eps_in: shift_on_blocks(&inputs, d, dim_in),
            eps_out: shift_on_blocks(&outputs, d, dim_out),
            inputs,
            outputs,
            dim_in,
            dim_out,
            eps_k,
            alpha,
            beta,
            gamma,
        })
    }

    /// `αγ = 0` and `γβ = 0`; both follow from the relations of the algebra.
    pub fn check_composites(&self) -> Result<()> {
        if !(&self.alpha * &self.gamma).is_zero() {
            return Err(Error::RelationViolated("α γ ≠ 0".into()));
        }
        if !(&self.gamma * &self.beta).is_zero() {
            return Err(Error::RelationViolated("γ β ≠ 0".into()));
        }
        Ok(())
    }

    /// `ker β / (ker β ∩ im α)` as an `H_k`-module: `(free rank, socle excess)`.
    pub fn negative_part(&self) -> (usize, usize) {
        let kb = self.beta.kernel();
        let ia = self.alpha.column_space();
        let x = intersect(&kb, &ia);
        let c = complement(&x, &kb);
        let dim = c.cols();
        if self.d == 1 || dim == 0 {
            return (dim, 0);
        }
        let both = Matrix::hstack(&[&x, &c], self.alpha.rows());
        let coords = coordinates(&both, &(&self.eps_k * &c)).expect("ker β is ε-stable");
        let induced = coords.row_range(x.cols(), x.cols() + dim);
        let a = induced.rank();
        (a, dim - 2 * a)
    }
}

/// Dimensions of the kernels and images in the local diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramDims {
    pub m_k: usize,
    pub m_in: usize,
    pub m_out: usize,
    pub ker_alpha: usize,
    pub im_alpha: usize,
    pub ker_beta: usize,
    pub im_beta: usize,
    pub ker_gamma: usize,
    pub im_gamma: usize,
}

impl<F: Field> LocalDiagram<F> {
    pub fn dims(&self) -> DiagramDims {
        let (ra, rb, rg) = (self.alpha.rank(), self.beta.rank(), self.gamma.rank());
        DiagramDims {
            m_k: self.alpha.rows(),
            m_in: self.dim_in,
            m_out: self.dim_out,
            ker_alpha: self.dim_in - ra,
            im_alpha: ra,
            ker_beta: self.alpha.rows() - rb,
            im_beta: rb,
            ker_gamma: self.dim_out - rg,
            im_gamma: rg,
        }
    }
}

fn kron<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    Matrix::from_fn(a.rows() * b.rows(), a.cols() * b.cols(), |r, c| {
        a[(r / b.rows(), c / b.cols())].clone() * b[(r % b.rows(), c % b.cols())].clone()
    })
}

fn vec_col<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    // column-major
    Matrix::from_fn(m.rows() * m.cols(), 1, |i, _| m[(i % m.rows(), i / m.rows())].clone())
}

fn unvec<F: Field>(v: &Matrix<F>, rows: usize, cols: usize) -> Matrix<F> {
    Matrix::from_fn(rows, cols, |r, c| v[(c * rows + r, 0)].clone())
}

/// Solve for a `p × q` matrix `X` subject to a list of equations
/// `Σ_t L_t X R_t = C`. Returns a particular solution plus a basis of the
/// homogeneous solutions.
fn solve_matrix_equations<F: Field>(
    p: usize,
    q: usize,
    equations: &[(Vec<(Matrix<F>, Matrix<F>)>, Matrix<F>)],
) -> Option<(Matrix<F>, Vec<Matrix<F>>)> {
    let unknowns = p * q;
    let mut rows: Vec<Matrix<F>> = Vec::new();
    let mut rhs: Vec<Matrix<F>> = Vec::new();
    for (terms, c) in equations {
        let mut coeff = Matrix::zeros(c.rows() * c.cols(), unknowns);
        for (l, r) in terms {
            // vec(L X R) = (Rᵀ ⊗ L) vec X
            coeff = &coeff + &kron(&r.transpose(), l);
        }
        rows.push(coeff);
        rhs.push(vec_col(c));
    }
    let a = Matrix::vstack(&rows.iter().collect::<Vec<_>>(), unknowns);
    let b = Matrix::vstack(&rhs.iter().collect::<Vec<_>>(), 1);
    if unknowns == 0 {
        return if b.is_zero() { Some((Matrix::zeros(p, q), vec![])) } else { None };
    }
    let x = a.solve(&b)?;
    let kern = a.kernel();
    let homog = (0..kern.cols()).map(|c| unvec(&kern.col(c), p, q)).collect();
    Some((unvec(&x, p, q), homog))
}

/// The choices entering the mutated space: an `H_k`-linear retraction of
/// `ker γ ⊆ M_out` and an `H_k`-linear section of `ker α → ker α / im γ`.
/// `variant > 0` perturbs both by a homogeneous solution, which must not
/// change the isomorphism class of the result.
#[derive(Clone, Debug)]
pub struct Pieces<F: Field> {
    /// `ker γ` basis in `M_out` coordinates.
    pub ker_gamma: Matrix<F>,
    /// Projection `ker γ → ker γ / im β` in `ker γ` coordinates.
    pub proj1: Matrix<F>,
    pub eps_q1: Matrix<F>,
    /// `im γ` basis in `M_in` coordinates.
    pub im_gamma: Matrix<F>,
    pub eps_im: Matrix<F>,
    /// `ker α` basis in `M_in` coordinates.
    pub ker_alpha: Matrix<F>,
    pub eps_q3: Matrix<F>,
    /// `ρ: M_out → ker γ` (in `ker γ` coordinates).
    pub rho: Matrix<F>,
    /// `σ: ker α / im γ → ker α` (in `ker α` coordinates).
    pub sigma: Matrix<F>,
}

fn induced<F: Field>(eps: &Matrix<F>, basis: &Matrix<F>) -> Matrix<F> {
    coordinates(basis, &(eps * basis)).expect("subspace is ε-stable")
}

impl<F: Field> LocalDiagram<F> {
    pub fn pieces(&self, variant: usize) -> Result<Pieces<F>> {
        self.check_composites()?;
        let kg = self.gamma.kernel();
        let ib = self.beta.column_space();
        let c1 = complement(&ib, &kg);
        let both1 = Matrix::hstack(&[&ib, &c1], self.dim_out);
        let proj1 = coordinates(&both1, &kg).expect("im β ⊆ ker γ").row_range(ib.cols(), ib.cols() + c1.cols());
        let eps_q1 = coordinates(&both1, &(&self.eps_out * &c1))
            .expect("ker γ is ε-stable")
            .row_range(ib.cols(), ib.cols() + c1.cols());

        let ig = self.gamma.column_space();
        let eps_im = induced(&self.eps_in, &ig);
        let ka = self.alpha.kernel();
        let c3 = complement(&ig, &ka);
        let both3 = Matrix::hstack(&[&ig, &c3], self.dim_in);
        let proj3 = coordinates(&both3, &ka).expect("im γ ⊆ ker α").row_range(ig.cols(), ig.cols() + c3.cols());
        let eps_q3 = coordinates(&both3, &(&self.eps_in * &c3))
            .expect("ker α is ε-stable")
            .row_range(ig.cols(), ig.cols() + c3.cols());

        // ρ: R · K = I, R ε_out = ε_{ker γ} R
        let eps_kg = induced(&self.eps_out, &kg);
        let (r, s) = (kg.cols(), self.dim_out);
        let rho_eqs = vec![
            (vec![(Matrix::identity(r), kg.clone())], Matrix::identity(r)),
            (
                vec![(Matrix::identity(r), self.eps_out.clone()), (-&eps_kg, Matrix::identity(s))],
                Matrix::zeros(r, s),
            ),
        ];
        let (mut rho, rho_h) = solve_matrix_equations(r, s, &rho_eqs)
            .ok_or_else(|| Error::NoSplitting("ker γ is not an H-direct summand of M_out".into()))?;

        // σ: P3 · S = I, ε_{ker α} S = S ε_{q3}
        let eps_ka = induced(&self.eps_in, &ka);
        let (p, t) = (ka.cols(), c3.cols());
        let sigma_eqs = vec![
            (vec![(proj3.clone(), Matrix::identity(t))], Matrix::identity(t)),
            (vec![(eps_ka, Matrix::identity(t)), (-&Matrix::identity(p), eps_q3.clone())], Matrix::zeros(p, t)),
        ];
        let (mut sigma, sigma_h) = solve_matrix_equations(p, t, &sigma_eqs)
            .ok_or_else(|| Error::NoSplitting("im γ is not an H-direct summand of ker α".into()))?;

        if variant > 0 {
            if !rho_h.is_empty() {
                let h = &rho_h[(variant - 1) % rho_h.len()];
                rho = &rho + &h.scale(&F::from_i64(variant as i64));
            }
            if !sigma_h.is_empty() {
                let h = &sigma_h[(variant - 1) % sigma_h.len()];
                sigma = &sigma + &h.scale(&F::from_i64(-(variant as i64)));
            }
        }

        Ok(Pieces { ker_gamma: kg, proj1, eps_q1, im_gamma: ig, eps_im, ker_alpha: ka, eps_q3, rho, sigma })
    }
}

/// The mutated local data: `ᾱ: M_out → M̄(k)`, `β̄: M̄(k) → M_in` and `ε` on `M̄(k)`.
#[derive(Clone, Debug)]
pub struct MutatedVertex<F: Field> {
    pub alpha_bar: Matrix<F>,
    pub beta_bar: Matrix<F>,
    pub eps_bar: Matrix<F>,
    /// Dimensions of the three summands `ker γ/im β`, `im γ`, `ker α/im γ`.
    pub parts: [usize; 3],
}

impl<F: Field> LocalDiagram<F> {
    pub fn mutated_vertex(&self, variant: usize) -> Result<MutatedVertex<F>> {
        let p = self.pieces(variant)?;
        let (q1, ig, q3) = (p.proj1.rows(), p.im_gamma.cols(), p.sigma.cols());
        let first = &p.proj1 * &p.rho;
        let second = coordinates(&p.im_gamma, &self.gamma).expect("columns of γ span im γ");
        let third = Matrix::zeros(q3, self.dim_out);
        let alpha_bar = Matrix::vstack(&[&first, &second, &third], self.dim_out);
        let zero = Matrix::zeros(self.dim_in, q1);
        let sec = &p.ker_alpha * &p.sigma;
        let beta_bar = Matrix::hstack(&[&zero, &p.im_gamma, &sec], self.dim_in);
        let eps_bar = Matrix::block_diag(&[&p.eps_q1, &p.eps_im, &p.eps_q3]);
        let mv = MutatedVertex { alpha_bar, beta_bar, eps_bar, parts: [q1, ig, q3] };
        // both maps must be H_k-linear
        if &mv.alpha_bar * &self.eps_out != &mv.eps_bar * &mv.alpha_bar
            || &mv.beta_bar * &mv.eps_bar != &self.eps_in * &mv.beta_bar
        {
            return Err(Error::NoSplitting("mutated maps are not H-linear".into()));
        }
        Ok(mv)
    }
}

/// Free `H`-module of rank `a` plus `b` copies of the simple, as an `ε` matrix.
pub fn local_module_eps<F: Field>(d: usize, a: usize, b: usize) -> Matrix<F> {
    if d == 1 {
        return Matrix::zeros(a + b, a + b);
    }
    let mut parts: Vec<Matrix<F>> = (0..a).map(|_| shift_matrix(2)).collect();
    parts.extend((0..b).map(|_| Matrix::zeros(1, 1)));
    Matrix::block_diag(&parts.iter().collect::<Vec<_>>())
}

fn local_dim(d: usize, (a, b): (usize, usize)) -> usize {
    d * a + b
}

/// Mutation at `k` with a given choice of splitting; returns the flipped
/// triangulation and the mutated decorated representation.
pub fn mutate_with_variant<F: Field>(
    t: &Triangulation,
    m: &DecoratedRep<F>,
    k: usize,
    variant: usize,
) -> Result<(Triangulation, DecoratedRep<F>)> {
    let q_old = t.quiver()?;
    if *m.module.quiver != q_old {
        return Err(Error::AlgebraMismatch);
    }
    let rep = &m.module;
    let diag = LocalDiagram::new(rep, k)?;
    let mv = diag.mutated_vertex(variant)?;
    let d = diag.d;

    // append the decoration at k as a direct summand of M̄(k)
    let (va, vb) = m.decoration[k];
    let extra = local_dim(d, (va, vb));
    let core = mv.eps_bar.rows();
    let new_dim_k = core + extra;
    let alpha_bar = Matrix::vstack(&[&mv.alpha_bar, &Matrix::zeros(extra, diag.dim_out)], diag.dim_out);
    let beta_bar = Matrix::hstack(&[&mv.beta_bar, &Matrix::zeros(diag.dim_in, extra)], diag.dim_in);
    let eps_bar = Matrix::block_diag(&[&mv.eps_bar, &local_module_eps(d, va, vb)]);

    let t_new = t.flip(k)?;
    let q_new = Arc::new(t_new.quiver()?);
    check_simple_neighbourhood(&q_new, k)?;
    let mut dims = rep.dims.clone();
    dims[k] = new_dim_k;

    let in_vertices: Vec<usize> = diag.inputs.iter().map(|b| b.vertex).collect();
    let out_vertices: Vec<usize> = diag.outputs.iter().map(|b| b.vertex).collect();
    let through = |j: usize, i: usize| -> Option<Matrix<F>> {
        let a = diag.inputs.iter().find(|b| b.vertex == j)?.arrow;
        let b = diag.outputs.iter().find(|b| b.vertex == i)?.arrow;
        if d == 1 && q_old.is_forbidden(a, b) {
            return None;
        }
        Some(&(&rep.maps[b] * &diag.eps_k.pow(d - 1)) * &rep.maps[a])
    };

    let mut maps = Vec::with_capacity(q_new.arrows.len());
    for arrow in &q_new.arrows {
        let (s, tg) = (arrow.source, arrow.target);
        let mat = if arrow.is_loop {
            if s == k {
                eps_bar.clone()
            } else {
                rep.maps[q_old.loop_at(s).ok_or(Error::AlgebraMismatch)?].clone()
            }
        } else if tg == k {
            let blk = diag
                .outputs
                .iter()
                .find(|b| b.vertex == s)
                .ok_or_else(|| Error::Unsupported(format!("unexpected arrow {} after flip", arrow.label)))?;
            alpha_bar.col_range(blk.index(0, 0), blk.index(0, 0) + blk.dim)
        } else if s == k {
            let blk = diag
                .inputs
                .iter()
                .find(|b| b.vertex == tg)
                .ok_or_else(|| Error::Unsupported(format!("unexpected arrow {} after flip", arrow.label)))?;
            beta_bar.row_range(blk.index(d - 1, 0), blk.index(d - 1, 0) + blk.dim)
        } else {
            let old = q_old.arrow_index(&arrow.label).filter(|&o| {
                let oa = &q_old.arrows[o];
                (oa.source, oa.target) == (s, tg) && !oa.is_loop
            });
            let new_path = if in_vertices.contains(&s) && out_vertices.contains(&tg) { through(s, tg) } else { None };
            match (old, new_path) {
                (Some(o), None) => rep.maps[o].clone(),
                (None, Some(p)) => p,
                (Some(_), Some(_)) => {
                    return Err(Error::Unsupported(format!("arrow {} is both kept and created", arrow.label)))
                }
                (None, None) => {
                    return Err(Error::Unsupported(format!("no source for arrow {} after flip", arrow.label)))
                }
            }
        };
        maps.push(mat);
    }
    let module = Rep::new(q_new, dims, maps)?;
    let mut decoration = m.decoration.clone();
    decoration[k] = diag.negative_part();
    Ok((t_new, DecoratedRep { module, decoration }))
}

/// Mutation of a decorated representation at `k`.
pub fn mutate_decorated<F: Field>(
    t: &Triangulation,
    m: &DecoratedRep<F>,
    k: usize,
) -> Result<(Triangulation, DecoratedRep<F>)> {
    mutate_with_variant(t, m, k, 0)
}

/// Mutation of an undecorated representation; the negative part is dropped.
pub fn mutate_rep<F: Field>(t: &Triangulation, m: &Rep<F>, k: usize) -> Result<(Triangulation, Rep<F>)> {
    let (t2, dm) = mutate_decorated(t, &DecoratedRep::plain(m.clone()), k)?;
    Ok((t2, dm.module))
}

/// Mutate along an address (0-based vertex indices, applied left to right).
pub fn mutate_along<F: Field>(
    t: &Triangulation,
    m: &DecoratedRep<F>,
    address: &[usize],
) -> Result<(Triangulation, DecoratedRep<F>)> {
    let mut cur = (t.clone(), m.clone());
    for &k in address {
        cur = mutate_decorated(&cur.0, &cur.1, k)?;
    }
    Ok(cur)
}

/// `H^a ⊕ S^b` concentrated at vertex `k`.
pub fn local_rep<F: Field>(q: Arc<GentleQuiver>, k: usize, a: usize, b: usize) -> Rep<F> {
    let d = q.d[k];
    let mut dims = vec![0; q.n()];
    dims[k] = local_dim(d, (a, b));
    let mut r = Rep::zeros_with_dims(q.clone(), dims);
    if let Some(l) = q.loop_at(k) {
        r.maps[l] = local_module_eps(d, a, b);
    }
    r
}

/// Outcome of applying the mutation twice at the same vertex.
#[derive(Clone, Debug)]
pub struct InvolutionReport {
    /// `ker β` and `im α` are free `H_k`-modules.
    pub free_case: bool,
    /// `ker β / (ker β ∩ im α)` as `(free rank, socle excess)`.
    pub defect: (usize, usize),
    /// Decorated `μ_k μ_k 𝓜 ≅ 𝓜` (meaningful in the free case).
    pub decorated_iso: bool,
    /// Undecorated `M ≅ μ_k μ_k M ⊕ ker β / (ker β ∩ im α)`.
    pub plain_iso: bool,
}

impl InvolutionReport {
    pub fn holds(&self) -> bool {
        if self.free_case {
            self.decorated_iso && self.plain_iso
        } else {
            self.plain_iso
        }
    }
}

pub(crate) fn is_free<F: Field>(basis: &Matrix<F>, eps: &Matrix<F>, d: usize) -> bool {
    if d == 1 {
        return true;
    }
    // a submodule of dimension 2a + b is free iff ε has rank a on it with b = 0
    let dim = basis.cols();
    let img = eps * basis;
    let r = img.rank();
    dim == 2 * r
}

pub fn check_involution<F: Field>(t: &Triangulation, m: &DecoratedRep<F>, k: usize) -> Result<InvolutionReport> {
    let diag = LocalDiagram::new(&m.module, k)?;
    let d = diag.d;
    let free_case = is_free(&diag.beta.kernel(), &diag.eps_k, d) && is_free(&diag.alpha.column_space(), &diag.eps_k, d);
    let defect = diag.negative_part();

    let q0 = m.module.quiver.clone();
    let (t1, once) = mutate_decorated(t, m, k)?;
    let (_, twice) = mutate_decorated(&t1, &once, k)?;
    let back = DecoratedRep { module: twice.module.transport(q0.clone())?, decoration: twice.decoration };
    let decorated_iso = back.is_isomorphic(m);

    let (t1p, p1) = mutate_rep(t, &m.module, k)?;
    let (_, p2) = mutate_rep(&t1p, &p1, k)?;
    let p2 = p2.transport(q0.clone())?;
    let sum = Rep::direct_sum(&[&p2, &local_rep(q0, k, defect.0, defect.1)])?;
    let plain_iso = sum.is_isomorphic(&m.module);
    Ok(InvolutionReport { free_case, defect, decorated_iso, plain_iso })
}

/// Checks of the identities relating the two local diagrams: with `M̄ = μ_k M`
/// over the flipped triangulation, `γ̄ = β α`, `ker α = im β̄` and
/// `ker ᾱ = im β`. Each entry is `(name, holds)`.
pub fn check_local_identities<F: Field>(t: &Triangulation, m: &Rep<F>, k: usize) -> Result<Vec<(String, bool)>> {
    let diag = LocalDiagram::new(m, k)?;
    let mv = diag.mutated_vertex(0)?;
    let (_, mbar) = mutate_rep(t, m, k)?;
    let dbar = LocalDiagram::new(&mbar, k)?;
    // M̄_in ↔ M_out and M̄_out ↔ M_in, matched by neighbouring vertex
    let perm = |new: &[Block], old: &[Block], total: usize| -> Matrix<F> {
        let mut p = Matrix::zeros(total, total);
        for nb in new {
            let ob = old.iter().find(|b| b.vertex == nb.vertex).expect("same neighbours");
            for f in 0..diag.d {
                for x in 0..nb.dim {
                    p[(ob.index(f, x), nb.index(f, x))] = F::one();
                }
            }
        }
        p
    };
    if dbar.dim_in != diag.dim_out || dbar.dim_out != diag.dim_in {
        return Ok(vec![("neighbour spaces match".into(), false)]);
    }
    let p_in = perm(&dbar.inputs, &diag.outputs, diag.dim_out); // M̄_in → M_out
    let p_out = perm(&dbar.outputs, &diag.inputs, diag.dim_in); // M̄_out → M_in
    // γ̄ in old coordinates: M_in → M_out
    let gamma_bar = &(&p_in * &dbar.gamma) * &p_out.transpose();
    let ba = &diag.beta * &diag.alpha;
    let mut out = vec![("γ̄ = β α".to_string(), gamma_bar == ba)];
    let ker_a = diag.alpha.kernel();
    let im_bb = mv.beta_bar.column_space();
    out.push(("ker α = im β̄".into(), ker_a.cols() == im_bb.cols() && intersect(&ker_a, &im_bb).cols() == ker_a.cols()));
    let ker_ab = mv.alpha_bar.kernel();
    let im_b = diag.beta.column_space();
    out.push(("ker ᾱ = im β".into(), ker_ab.cols() == im_b.cols() && intersect(&ker_ab, &im_b).cols() == im_b.cols()));
    Ok(out)
}
