//! Finite-dimensional representations of a quiver with monomial relations,
//! decorated representations, and the linear algebra on top of them:
//! homomorphism spaces, isomorphism search, direct sums and splitting into
//! indecomposable summands.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{complement, coordinates, Matrix};
use crate::orbifold::GentleQuiver;

/// A representation: a space per vertex and a matrix per arrow (loops
/// included); the matrix of `a: s → t` has shape `dims[t] × dims[s]`.
#[derive(Clone, PartialEq)]
pub struct Rep<F: Field> {
    pub quiver: Arc<GentleQuiver>,
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix<F>>,
}

/// A homomorphism: one matrix per vertex, `dims_N[i] × dims_M[i]`.
pub type Morphism<F> = Vec<Matrix<F>>;

impl<F: Field> fmt::Debug for Rep<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep {{ dims: {:?}", self.dims)?;
        for (a, m) in self.quiver.arrows.iter().zip(&self.maps) {
            if m.rows() > 0 && m.cols() > 0 && !m.is_zero() {
                write!(f, ", {}: {:?}", a.label, m)?;
            }
        }
        write!(f, " }}")
    }
}

impl<F: Field> Rep<F> {
    pub fn zero(q: Arc<GentleQuiver>) -> Self {
        Self::zeros_with_dims(q.clone(), vec![0; q.n()])
    }

    /// All maps zero, with prescribed dimensions.
    pub fn zeros_with_dims(q: Arc<GentleQuiver>, dims: Vec<usize>) -> Self {
        let maps = q.arrows.iter().map(|a| Matrix::zeros(dims[a.target], dims[a.source])).collect();
        Rep { quiver: q, dims, maps }
    }

    /// Build and validate.
    pub fn new(q: Arc<GentleQuiver>, dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Result<Self> {
        let r = Rep { quiver: q, dims, maps };
        let report = r.validate();
        if report.is_empty() {
            Ok(r)
        } else {
            Err(Error::RelationViolated(report.join("; ")))
        }
    }

    /// The simple module at `i`.
    pub fn simple(q: Arc<GentleQuiver>, i: usize) -> Self {
        let mut dims = vec![0; q.n()];
        dims[i] = 1;
        Self::zeros_with_dims(q, dims)
    }

    /// `E_i`: the local algebra `H_i` placed at vertex `i`.
    pub fn local_free(q: Arc<GentleQuiver>, i: usize) -> Self {
        let d = q.d[i];
        let mut dims = vec![0; q.n()];
        dims[i] = d;
        let mut r = Self::zeros_with_dims(q, dims);
        if d == 2 {
            let l = r.quiver.loop_at(i).unwrap();
            r.maps[l] = shift_matrix(2);
        }
        r
    }

    pub fn n(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// The `ε_i` action (the zero endomorphism when `d_i = 1`).
    pub fn eps(&self, i: usize) -> Matrix<F> {
        match self.quiver.loop_at(i) {
            Some(l) => self.maps[l].clone(),
            None => Matrix::zeros(self.dims[i], self.dims[i]),
        }
    }

    pub fn map(&self, arrow: usize) -> &Matrix<F> {
        &self.maps[arrow]
    }

    /// Every violated shape constraint or relation.
    pub fn validate(&self) -> Vec<String> {
        let q = &self.quiver;
        let mut report = Vec::new();
        if self.dims.len() != q.n() {
            report.push(format!("expected {} vertex spaces, found {}", q.n(), self.dims.len()));
            return report;
        }
        if self.maps.len() != q.arrows.len() {
            report.push(format!("expected {} arrow maps, found {}", q.arrows.len(), self.maps.len()));
            return report;
        }
        let mut shapes_ok = true;
        for (a, m) in q.arrows.iter().zip(&self.maps) {
            if (m.rows(), m.cols()) != (self.dims[a.target], self.dims[a.source]) {
                shapes_ok = false;
                report.push(format!(
                    "arrow {}: matrix is {}x{}, expected {}x{}",
                    a.label,
                    m.rows(),
                    m.cols(),
                    self.dims[a.target],
                    self.dims[a.source]
                ));
            }
        }
        if !shapes_ok {
            return report;
        }
        for &(p, r) in &q.forbidden {
            if !(&self.maps[r] * &self.maps[p]).is_zero() {
                let (lp, lr) = (&q.arrows[p].label, &q.arrows[r].label);
                if p == r {
                    report.push(format!("{lp} squared is nonzero"));
                } else {
                    report.push(format!("relation {lp} then {lr} violated"));
                }
            }
        }
        report
    }

    /// `(free rank, socle excess)` of `M(i)` as an `H_i`-module.
    pub fn local_structure(&self, i: usize) -> (usize, usize) {
        if self.quiver.d[i] == 1 {
            (self.dims[i], 0)
        } else {
            let a = self.eps(i).rank();
            (a, self.dims[i] - 2 * a)
        }
    }

    pub fn is_locally_free(&self) -> bool {
        (0..self.n()).all(|i| self.local_structure(i).1 == 0)
    }

    /// Ranks over the local algebras; errors if some `M(i)` is not free.
    pub fn rank_vector(&self) -> Result<Vec<usize>> {
        (0..self.n())
            .map(|i| {
                let (a, b) = self.local_structure(i);
                if b == 0 {
                    Ok(a)
                } else {
                    Err(Error::NotLocallyFree(self.quiver.vertices[i].clone()))
                }
            })
            .collect()
    }

    fn same_algebra(&self, o: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.quiver, &o.quiver) || *self.quiver == *o.quiver {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// Basis of `Hom(self, other)`.
    pub fn hom_basis(&self, other: &Self) -> Result<Vec<Morphism<F>>> {
        self.same_algebra(other)?;
        let n = self.n();
        let (dm, dn) = (&self.dims, &other.dims);
        let mut off = vec![0usize; n + 1];
        for i in 0..n {
            off[i + 1] = off[i] + dn[i] * dm[i];
        }
        let unknowns = off[n];
        if unknowns == 0 {
            return Ok(vec![]);
        }
        let mut rows: Vec<Vec<F>> = Vec::new();
        for (ai, a) in self.quiver.arrows.iter().enumerate() {
            let (s, t) = (a.source, a.target);
            let (ma, na) = (&self.maps[ai], &other.maps[ai]);
            for r in 0..dn[t] {
                for c in 0..dm[s] {
                    let mut row = vec![F::zero(); unknowns];
                    // (phi_t M(a))[r][c]
                    for m in 0..dm[t] {
                        let v = &ma[(m, c)];
                        if !v.is_zero() {
                            let idx = off[t] + r * dm[t] + m;
                            row[idx] = row[idx].clone() + v.clone();
                        }
                    }
                    // -(N(a) phi_s)[r][c]
                    for m in 0..dn[s] {
                        let v = &na[(r, m)];
                        if !v.is_zero() {
                            let idx = off[s] + m * dm[s] + c;
                            row[idx] = row[idx].clone() - v.clone();
                        }
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        let sys = Matrix::from_rows(rows, unknowns);
        let k = sys.kernel();
        Ok((0..k.cols())
            .map(|j| (0..n).map(|i| Matrix::from_fn(dn[i], dm[i], |r, c| k[(off[i] + r * dm[i] + c, j)].clone())).collect())
            .collect())
    }

    pub fn hom_dim(&self, other: &Self) -> Result<usize> {
        Ok(self.hom_basis(other)?.len())
    }

    pub fn is_morphism(&self, other: &Self, phi: &Morphism<F>) -> bool {
        self.quiver.arrows.iter().enumerate().all(|(ai, a)| {
            &phi[a.target] * &self.maps[ai] == &other.maps[ai] * &phi[a.source]
        })
    }

    /// Search `Hom(self, other)` for an isomorphism: basis elements first,
    /// then up to `trials` random combinations with coefficients in `[-3, 3]`.
    pub fn find_isomorphism(&self, other: &Self, seed: u64, trials: usize) -> Result<Option<Morphism<F>>> {
        self.same_algebra(other)?;
        if self.dims != other.dims {
            return Ok(None);
        }
        if self.total_dim() == 0 {
            return Ok(Some(vec![Matrix::zeros(0, 0); self.n()]));
        }
        let basis = self.hom_basis(other)?;
        if basis.is_empty() {
            return Ok(None);
        }
        let invertible = |phi: &Morphism<F>| phi.iter().all(|m| m.is_invertible());
        for b in &basis {
            if invertible(b) {
                return Ok(Some(b.clone()));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let phi = random_combination(&basis, &mut rng);
            if invertible(&phi) {
                return Ok(Some(phi));
            }
        }
        Ok(None)
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        matches!(self.find_isomorphism(other, 0, 200), Ok(Some(_)))
    }

    /// Direct sum of representations over the same quiver.
    pub fn direct_sum(parts: &[&Self]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::Unsupported("empty direct sum".into()))?;
        for p in parts {
            first.same_algebra(p)?;
        }
        let q = first.quiver.clone();
        let n = q.n();
        let dims = (0..n).map(|i| parts.iter().map(|p| p.dims[i]).sum()).collect();
        let maps = (0..q.arrows.len())
            .map(|a| Matrix::block_diag(&parts.iter().map(|p| &p.maps[a]).collect::<Vec<_>>()))
            .collect();
        Ok(Rep { quiver: q, dims, maps })
    }

    /// Subrepresentation spanned by the columns of `basis[i]` at each vertex,
    /// expressed in those bases. `None` if the subspaces are not arrow-stable.
    pub fn restrict(&self, basis: &[Matrix<F>]) -> Option<Self> {
        let dims: Vec<usize> = basis.iter().map(|b| b.cols()).collect();
        let mut maps = Vec::with_capacity(self.maps.len());
        for (ai, a) in self.quiver.arrows.iter().enumerate() {
            let img = &self.maps[ai] * &basis[a.source];
            maps.push(coordinates(&basis[a.target], &img)?);
        }
        Some(Rep { quiver: self.quiver.clone(), dims, maps })
    }

    /// Quotient by the arrow-stable subspaces `sub[i]`, realised on the
    /// complements chosen from the standard basis.
    pub fn quotient(&self, sub: &[Matrix<F>]) -> Option<(Self, Vec<Matrix<F>>)> {
        let comps: Vec<Matrix<F>> =
            (0..self.n()).map(|i| complement(&sub[i], &Matrix::identity(self.dims[i]))).collect();
        let dims: Vec<usize> = comps.iter().map(|c| c.cols()).collect();
        let mut maps = Vec::with_capacity(self.maps.len());
        for (ai, a) in self.quiver.arrows.iter().enumerate() {
            let (s, t) = (a.source, a.target);
            if !crate::matrix::is_subspace(&(&self.maps[ai] * &sub[s]), &sub[t]) {
                return None;
            }
            let joined = Matrix::hstack(&[&sub[t], &comps[t]], self.dims[t]);
            let coords = coordinates(&joined, &(&self.maps[ai] * &comps[s]))?;
            maps.push(coords.row_range(sub[t].cols(), joined.cols()));
        }
        Some((Rep { quiver: self.quiver.clone(), dims, maps }, comps))
    }

    /// Transport along invertible per-vertex base changes `p[i]` (new = p · old).
    pub fn conjugate(&self, p: &[Matrix<F>]) -> Self {
        let maps = self
            .quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(ai, a)| &(&p[a.target] * &self.maps[ai]) * &p[a.source].inverse().expect("invertible base change"))
            .collect();
        Rep { quiver: self.quiver.clone(), dims: self.dims.clone(), maps }
    }

    /// The `k`-dual `D M` as a representation of the opposite quiver.
    pub fn dual(&self) -> Self {
        Rep {
            quiver: Arc::new(self.quiver.opposite()),
            dims: self.dims.clone(),
            maps: self.maps.iter().map(|m| m.transpose()).collect(),
        }
    }

    /// Same data viewed over another (equal) quiver handle.
    pub fn with_quiver(&self, q: Arc<GentleQuiver>) -> Self {
        Rep { quiver: q, dims: self.dims.clone(), maps: self.maps.clone() }
    }

    /// The same representation over a quiver with the same vertices whose
    /// arrows may be listed in another order; arrows are matched by label.
    pub fn transport(&self, q: Arc<GentleQuiver>) -> Result<Self> {
        if q.vertices != self.quiver.vertices || q.d != self.quiver.d || q.arrows.len() != self.quiver.arrows.len() {
            return Err(Error::AlgebraMismatch);
        }
        let maps = q
            .arrows
            .iter()
            .map(|a| {
                let old = self.quiver.arrow_index(&a.label).ok_or(Error::AlgebraMismatch)?;
                let o = &self.quiver.arrows[old];
                if (o.source, o.target) != (a.source, a.target) {
                    return Err(Error::AlgebraMismatch);
                }
                Ok(self.maps[old].clone())
            })
            .collect::<Result<Vec<_>>>()?;
        let mut sorted_new: Vec<(usize, usize)> = q.forbidden.iter().map(|&(x, y)| (x, y)).collect();
        let mut mapped_old: Vec<(usize, usize)> = self
            .quiver
            .forbidden
            .iter()
            .map(|&(x, y)| {
                let lx = &self.quiver.arrows[x].label;
                let ly = &self.quiver.arrows[y].label;
                (q.arrow_index(lx).unwrap_or(usize::MAX), q.arrow_index(ly).unwrap_or(usize::MAX))
            })
            .collect();
        sorted_new.sort();
        mapped_old.sort();
        if sorted_new != mapped_old {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Rep { quiver: q, dims: self.dims.clone(), maps })
    }

    /// Dimension of the socle: vectors killed by every arrow (and loop).
    pub fn socle_dims(&self) -> Vec<usize> {
        (0..self.n())
            .map(|i| {
                let outs: Vec<&Matrix<F>> = self
                    .quiver
                    .arrows
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| a.source == i)
                    .map(|(ai, _)| &self.maps[ai])
                    .collect();
                if outs.is_empty() {
                    return self.dims[i];
                }
                let stacked = Matrix::vstack(&outs, self.dims[i]);
                stacked.kernel().cols()
            })
            .collect()
    }

    /// Dimension of the top `M / rad M` at every vertex.
    pub fn top_dims(&self) -> Vec<usize> {
        self.radical().iter().zip(&self.dims).map(|(r, d)| d - r.cols()).collect()
    }

    /// Basis of `rad M = Σ im M(a)` at every vertex.
    pub fn radical(&self) -> Vec<Matrix<F>> {
        (0..self.n())
            .map(|i| {
                let ins: Vec<&Matrix<F>> = self
                    .quiver
                    .arrows
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| a.target == i)
                    .map(|(ai, _)| &self.maps[ai])
                    .collect();
                if ins.is_empty() {
                    return Matrix::zeros(self.dims[i], 0);
                }
                Matrix::hstack(&ins, self.dims[i]).column_space()
            })
            .collect()
    }
}

/// The nilpotent Jordan block with ones below the diagonal.
pub fn shift_matrix<F: Field>(n: usize) -> Matrix<F> {
    Matrix::from_fn(n, n, |r, c| if r == c + 1 { F::one() } else { F::zero() })
}

pub fn random_combination<F: Field>(basis: &[Morphism<F>], rng: &mut ChaCha8Rng) -> Morphism<F> {
    let mut acc: Morphism<F> = basis[0].iter().map(|m| Matrix::zeros(m.rows(), m.cols())).collect();
    for b in basis {
        let c = F::from_i64(rng.gen_range(-3..=3));
        if c.is_zero() {
            continue;
        }
        for (a, m) in acc.iter_mut().zip(b) {
            *a = &*a + &m.scale(&c);
        }
    }
    acc
}

pub fn compose<F: Field>(psi: &Morphism<F>, phi: &Morphism<F>) -> Morphism<F> {
    psi.iter().zip(phi).map(|(a, b)| a * b).collect()
}

/// A representation together with a decoration `(free rank, socle excess)`
/// per vertex: `V_i ≅ H_i^a ⊕ S_i^b`.
#[derive(Clone, PartialEq)]
pub struct DecoratedRep<F: Field> {
    pub module: Rep<F>,
    pub decoration: Vec<(usize, usize)>,
}

impl<F: Field> fmt::Debug for DecoratedRep<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, V = {:?})", self.module, self.decoration)
    }
}

impl<F: Field> DecoratedRep<F> {
    pub fn plain(module: Rep<F>) -> Self {
        let n = module.n();
        DecoratedRep { module, decoration: vec![(0, 0); n] }
    }

    /// The negative simple `E_ℓ⁻ = (0, H_ℓ)`.
    pub fn negative_simple(q: Arc<GentleQuiver>, l: usize) -> Self {
        let mut d = Self::plain(Rep::zero(q));
        d.decoration[l] = (1, 0);
        d
    }

    pub fn is_locally_free(&self) -> bool {
        self.module.is_locally_free() && self.decoration.iter().all(|&(_, b)| b == 0)
    }

    pub fn direct_sum(parts: &[&Self]) -> Result<Self> {
        let module = Rep::direct_sum(&parts.iter().map(|p| &p.module).collect::<Vec<_>>())?;
        let n = module.n();
        let decoration = (0..n)
            .map(|i| parts.iter().fold((0, 0), |acc, p| (acc.0 + p.decoration[i].0, acc.1 + p.decoration[i].1)))
            .collect();
        Ok(DecoratedRep { module, decoration })
    }

    /// Isomorphism of decorated representations.
    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.decoration == other.decoration && self.module.is_isomorphic(&other.module)
    }

    pub fn is_zero(&self) -> bool {
        self.module.is_zero() && self.decoration.iter().all(|&(a, b)| a == 0 && b == 0)
    }
}

// ---------------------------------------------------------------------------
// Splitting into indecomposable summands (over the rationals).

/// Characteristic polynomial coefficients `c_0..c_n` (monic, `c_n = 1`) by
/// the Faddeev–LeVerrier recursion.
pub fn char_poly(a: &Matrix<BigRational>) -> Vec<BigRational> {
    let n = a.rows();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut m = Matrix::<BigRational>::zeros(n, n);
    let id = Matrix::<BigRational>::identity(n);
    for k in 1..=n {
        m = &(a * &m) + &id.scale(&coeffs[n - k + 1]);
        let am = a * &m;
        let tr = (0..n).fold(BigRational::zero(), |acc, i| acc + am[(i, i)].clone());
        coeffs[n - k] = -tr / BigRational::from_integer(BigInt::from(k as i64));
    }
    coeffs
}

fn small_divisors(v: &BigInt) -> Option<Vec<BigInt>> {
    let v = v.abs().to_u64()?;
    if v == 0 || v > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            out.push(BigInt::from(d));
            if d != v / d {
                out.push(BigInt::from(v / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Rational roots of a polynomial given by its coefficients.
pub fn rational_roots(coeffs: &[BigRational]) -> Vec<BigRational> {
    let mut c: Vec<BigRational> = coeffs.to_vec();
    let mut roots = Vec::new();
    // strip zero roots
    while c.len() > 1 && c[0].is_zero() {
        c.remove(0);
        if !roots.contains(&BigRational::zero()) {
            roots.push(BigRational::zero());
        }
    }
    if c.len() <= 1 {
        return roots;
    }
    let l = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = c.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let (Some(ps), Some(qs)) = (small_divisors(&ints[0]), small_divisors(ints.last().unwrap())) else {
        return roots;
    };
    for p in &ps {
        for q in &qs {
            for sign in [1i64, -1] {
                let r = BigRational::new(p * BigInt::from(sign), q.clone());
                if roots.contains(&r) {
                    continue;
                }
                let val = c.iter().rev().fold(BigRational::zero(), |acc, x| acc * r.clone() + x.clone());
                if val.is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots
}

/// Try to split `m` using the Fitting decomposition of `φ - λ` for a rational
/// eigenvalue `λ` of the endomorphism `φ`.
fn fitting_split(m: &Rep<BigRational>, phi: &Morphism<BigRational>) -> Option<(Rep<BigRational>, Rep<BigRational>)> {
    let total = m.total_dim();
    let mut eigen: Vec<BigRational> = Vec::new();
    for p in phi {
        if p.rows() == 0 {
            continue;
        }
        for r in rational_roots(&char_poly(p)) {
            if !eigen.contains(&r) {
                eigen.push(r);
            }
        }
    }
    for lambda in eigen {
        let shifted: Vec<Matrix<BigRational>> =
            phi.iter().map(|p| p - &Matrix::identity(p.rows()).scale(&lambda)).collect();
        let powered: Vec<Matrix<BigRational>> = shifted.iter().map(|s| s.pow(total.max(1))).collect();
        let kers: Vec<Matrix<BigRational>> = powered.iter().map(|p| p.kernel()).collect();
        let ims: Vec<Matrix<BigRational>> = powered.iter().map(|p| p.column_space()).collect();
        let kd: usize = kers.iter().map(|k| k.cols()).sum();
        if kd == 0 || kd == total {
            continue;
        }
        let a = m.restrict(&kers)?;
        let b = m.restrict(&ims)?;
        return Some((a, b));
    }
    None
}

/// Split into indecomposable summands by Fitting decompositions of
/// endomorphisms with rational eigenvalues. The pieces always sum to `m`;
/// a summand whose endomorphisms never reveal a split is returned whole.
pub fn indecomposable_summands(m: &Rep<BigRational>, seed: u64) -> Vec<Rep<BigRational>> {
    if m.is_zero() {
        return vec![];
    }
    let basis = match m.hom_basis(m) {
        Ok(b) => b,
        Err(_) => return vec![m.clone()],
    };
    if basis.len() <= 1 {
        return vec![m.clone()];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut candidates: Vec<Morphism<BigRational>> = basis.clone();
    for _ in 0..20 {
        candidates.push(random_combination(&basis, &mut rng));
    }
    for phi in &candidates {
        if let Some((a, b)) = fitting_split(m, phi) {
            let mut out = indecomposable_summands(&a, seed.wrapping_add(1));
            out.extend(indecomposable_summands(&b, seed.wrapping_add(2)));
            return out;
        }
    }
    vec![m.clone()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::Q;

    fn q(v: i64) -> Q {
        Q::from_i64(v)
    }

    fn t0_quiver() -> Arc<GentleQuiver> {
        Arc::new(fixtures::c2tilde_triangulations()[0].quiver().unwrap())
    }

    #[test]
    fn validation_of_loops() {
        let quiv = t0_quiver();
        let mut dims = vec![0, 0, 2];
        let mut m: Rep<Q> = Rep::zeros_with_dims(quiv.clone(), dims.clone());
        let l = quiv.loop_at(2).unwrap();
        m.maps[l] = Matrix::from_i64_rows(&[&[0, 1], &[0, 0]]);
        assert!(m.validate().is_empty());
        m.maps[l] = Matrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert!(m.validate().iter().any(|v| v.contains("squared")));
        dims[2] = 0;
        assert!(Rep::<Q>::zeros_with_dims(quiv, dims).validate().is_empty());
    }

    #[test]
    fn local_structure_cases() {
        let quiv = t0_quiver();
        let e = Rep::<Q>::local_free(quiv.clone(), 2);
        assert_eq!(e.local_structure(2), (1, 0));
        let s = Rep::<Q>::simple(quiv.clone(), 2);
        assert_eq!(s.local_structure(2), (0, 1));
        assert!(!s.is_locally_free());
        let mut two = Rep::<Q>::zeros_with_dims(quiv, vec![0, 2, 0]);
        two.dims[1] = 2;
        assert_eq!(two.local_structure(1), (2, 0));
    }

    #[test]
    fn hom_dimensions() {
        let quiv = t0_quiver();
        let s = Rep::<Q>::simple(quiv.clone(), 1);
        assert_eq!(s.hom_dim(&s).unwrap(), 1);
        let e = Rep::<Q>::local_free(quiv.clone(), 0);
        assert_eq!(e.hom_dim(&e).unwrap(), 2);
        let s0 = Rep::<Q>::simple(quiv, 0);
        assert_eq!(e.hom_dim(&s0).unwrap(), 1);
        assert_eq!(s0.hom_dim(&e).unwrap(), 1);
    }

    #[test]
    fn hom_dimension_is_basis_independent() {
        let quiv = t0_quiver();
        // a module 1 -> 2 with M(1) = H
        let mut m = Rep::<Q>::zeros_with_dims(quiv.clone(), vec![2, 1, 0]);
        let l = quiv.loop_at(0).unwrap();
        m.maps[l] = shift_matrix(2);
        let a = quiv.arrows_between(0, 1)[0];
        m.maps[a] = Matrix::from_i64_rows(&[&[0, 1]]);
        assert!(m.validate().is_empty());
        let p = vec![Matrix::from_i64_rows(&[&[2, 1], &[1, 1]]), Matrix::from_i64_rows(&[&[-3]]), Matrix::zeros(0, 0)];
        let c = m.conjugate(&p);
        assert_eq!(m.hom_dim(&m).unwrap(), c.hom_dim(&c).unwrap());
        assert!(m.is_isomorphic(&c));
        let iso = m.find_isomorphism(&c, 0, 200).unwrap().unwrap();
        assert!(m.is_morphism(&c, &iso));
    }

    #[test]
    fn isomorphism_negative() {
        let quiv = t0_quiver();
        let e = Rep::<Q>::local_free(quiv.clone(), 2);
        let s = Rep::<Q>::simple(quiv, 2);
        assert!(!e.is_isomorphic(&s));
        assert!(e.is_isomorphic(&e));
    }

    #[test]
    fn summands_of_sums() {
        let quiv = t0_quiver();
        let s1 = Rep::<Q>::simple(quiv.clone(), 0);
        let s2 = Rep::<Q>::simple(quiv.clone(), 1);
        let e = Rep::<Q>::local_free(quiv.clone(), 2);
        let sum = Rep::direct_sum(&[&s1, &s2]).unwrap();
        assert_eq!(indecomposable_summands(&sum, 0).len(), 2);
        assert_eq!(indecomposable_summands(&e, 0).len(), 1);
        let big = Rep::direct_sum(&[&s1, &e, &s1, &e]).unwrap();
        let parts = indecomposable_summands(&big, 0);
        assert_eq!(parts.len(), 4);
        assert_eq!(parts.iter().map(|p| p.total_dim()).sum::<usize>(), big.total_dim());
    }

    #[test]
    fn char_poly_and_roots() {
        let a: Matrix<Q> = Matrix::from_i64_rows(&[&[2, 0], &[1, 3]]);
        let cp = char_poly(&a);
        assert_eq!(cp, vec![q(6), q(-5), q(1)]);
        let mut r = rational_roots(&cp);
        r.sort();
        assert_eq!(r, vec![q(2), q(3)]);
        assert!(rational_roots(&[q(-2), q(0), q(1)]).is_empty());
    }

    #[test]
    fn quotient_and_restrict() {
        let quiv = t0_quiver();
        let e = Rep::<Q>::local_free(quiv, 0);
        let soc = vec![Matrix::from_i64_rows(&[&[0], &[1]]), Matrix::zeros(0, 0), Matrix::zeros(0, 0)];
        let sub = e.restrict(&soc).unwrap();
        assert_eq!(sub.dims, vec![1, 0, 0]);
        let (quo, _) = e.quotient(&soc).unwrap();
        assert_eq!(quo.dims, vec![1, 0, 0]);
        let top = vec![Matrix::from_i64_rows(&[&[1], &[0]]), Matrix::zeros(0, 0), Matrix::zeros(0, 0)];
        assert!(e.restrict(&top).is_none());
        assert_eq!(e.socle_dims(), vec![1, 0, 0]);
        assert_eq!(e.top_dims(), vec![1, 0, 0]);
    }
}
