//! Multivariate Laurent polynomials with arbitrary-precision integer
//! coefficients, over a named, ordered variable list.
//!
//! Terms live in a `BTreeMap` keyed by dense exponent vectors, so iteration
//! (and therefore printing and hashing) follows the lexicographic order of
//! exponent vectors and equal polynomials serialize identically.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::rational_to_integer;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

/// A Laurent polynomial all of whose exponents are nonnegative.
///
/// Kept as an alias: polynomiality is a property checked where it matters
/// (see [`LaurentPoly::is_polynomial`]) rather than a separate representation.
pub type IntPoly = LaurentPoly;

/// Variable names `prefix1 .. prefixn`.
pub fn var_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

impl LaurentPoly {
    pub fn zero(vars: &[String]) -> Self {
        LaurentPoly { vars: vars.to_vec(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &[String]) -> Self {
        Self::constant(vars, BigInt::one())
    }

    pub fn constant(vars: &[String], c: BigInt) -> Self {
        Self::monomial(vars, vec![0; vars.len()], c)
    }

    pub fn monomial(vars: &[String], exps: Vec<i64>, c: BigInt) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// The variable with index `i`.
    pub fn var(vars: &[String], i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, BigInt::one())
    }

    pub fn from_terms(vars: &[String], terms: impl IntoIterator<Item = (Vec<i64>, BigInt)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(&vec![0; self.nvars()]).is_one()
    }

    pub fn coeff(&self, exps: &[i64]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Single term with coefficient `±1`, if the polynomial is one.
    pub fn as_unit_monomial(&self) -> Option<(Vec<i64>, BigInt)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        (c.abs().is_one()).then(|| (e.clone(), c.clone()))
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    fn add_term(&mut self, e: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        assert_eq!(e.len(), self.vars.len(), "exponent vector length");
        let slot = self.terms.entry(e.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    fn check_vars(&self, o: &Self) -> Result<()> {
        if self.vars != o.vars {
            return Err(Error::VariableMismatch(self.vars.clone(), o.vars.clone()));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check_vars(o)?;
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check_vars(o)?;
        let mut acc: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly { vars: self.vars.clone(), terms: acc })
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        LaurentPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    /// Multiply by the monomial `x^e`.
    pub fn shift(&self, e: &[i64]) -> Self {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.iter().zip(e).map(|(a, b)| a + b).collect(), v.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Componentwise minimum of all exponent vectors (zero vector for the zero polynomial).
    pub fn min_exponents(&self) -> Vec<i64> {
        let mut m: Option<Vec<i64>> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(cur) => cur.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.nvars()])
    }

    pub fn max_exponents(&self) -> Vec<i64> {
        let mut m: Option<Vec<i64>> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(cur) => cur.iter().zip(e).map(|(a, b)| *a.max(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.nvars()])
    }

    /// Exact quotient `self / b` in the Laurent ring.
    ///
    /// Both sides are shifted to polynomials without monomial factors and
    /// divided with respect to the lexicographic order; any remainder (or a
    /// non-integral coefficient quotient) means the division is not exact.
    pub fn div_exact(&self, b: &Self) -> Result<Self> {
        self.check_vars(b)?;
        if b.is_zero() {
            return Err(Error::DivNotExact);
        }
        if self.is_zero() {
            return Ok(Self::zero(&self.vars));
        }
        let ua = self.min_exponents();
        let ub = b.min_exponents();
        let neg = |v: &[i64]| v.iter().map(|x| -x).collect::<Vec<_>>();
        let mut rem = self.shift(&neg(&ua));
        let bb = b.shift(&neg(&ub));
        let (lead_e, lead_c) = bb.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut quot = Self::zero(&self.vars);
        while let Some((re, rc)) = rem.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let qe: Vec<i64> = re.iter().zip(&lead_e).map(|(a, b)| a - b).collect();
            if qe.iter().any(|&x| x < 0) {
                return Err(Error::DivNotExact);
            }
            let (qc, r) = rc.div_rem(&lead_c);
            if !r.is_zero() {
                return Err(Error::DivNotExact);
            }
            let term = Self::monomial(&self.vars, qe, qc);
            rem = &rem - &(&term * &bb);
            quot = &quot + &term;
        }
        let shift: Vec<i64> = ua.iter().zip(&ub).map(|(a, b)| a - b).collect();
        Ok(quot.shift(&shift))
    }

    /// Substitute a Laurent polynomial for every variable. All bindings must
    /// share one ambient variable list. Negative powers are only allowed for
    /// bindings that are unit monomials.
    pub fn substitute(&self, bindings: &BTreeMap<String, LaurentPoly>) -> Result<Self> {
        let mut images = Vec::with_capacity(self.nvars());
        for v in &self.vars {
            images.push(bindings.get(v).ok_or_else(|| Error::UnboundVariable(v.clone()))?);
        }
        let Some(first) = images.first() else {
            // no variables: a constant
            return Err(Error::Parse("substitution into a polynomial without variables needs a target ring".into()));
        };
        let target = first.vars.clone();
        for im in &images {
            if im.vars != target {
                return Err(Error::VariableMismatch(target.clone(), im.vars.clone()));
            }
        }
        self.substitute_into(&images.into_iter().cloned().collect::<Vec<_>>(), &target)
    }

    /// Positional substitution: variable `i` maps to `images[i]`, all of which
    /// live in the ring on `target`.
    pub fn substitute_into(&self, images: &[LaurentPoly], target: &[String]) -> Result<Self> {
        assert_eq!(images.len(), self.nvars(), "one image per variable");
        let mut inverses: Vec<Option<LaurentPoly>> = vec![None; images.len()];
        let mut acc = Self::zero(target);
        for (e, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for (i, &p) in e.iter().enumerate() {
                if p == 0 {
                    continue;
                }
                let base = if p > 0 {
                    images[i].clone()
                } else {
                    if inverses[i].is_none() {
                        let (me, mc) = images[i].as_unit_monomial().ok_or_else(|| {
                            Error::NotPolynomial(format!("negative power of non-monomial binding for {}", self.vars[i]))
                        })?;
                        inverses[i] = Some(Self::monomial(target, me.iter().map(|x| -x).collect(), mc));
                    }
                    inverses[i].clone().unwrap()
                };
                term = &term * &base.pow(p.unsigned_abs() as u32);
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Rename into a larger (or permuted) variable list: variable `i` becomes
    /// `target[map[i]]`.
    pub fn embed(&self, target: &[String], map: &[usize]) -> Self {
        let mut p = Self::zero(target);
        for (e, c) in &self.terms {
            let mut ne = vec![0; target.len()];
            for (i, &x) in e.iter().enumerate() {
                ne[map[i]] += x;
            }
            p.add_term(ne, c.clone());
        }
        p
    }

    /// Set the variables with indices in `ones` to 1 and keep the others, in order.
    pub fn specialize_to_one(&self, ones: &[usize]) -> Self {
        let keep: Vec<usize> = (0..self.nvars()).filter(|i| !ones.contains(i)).collect();
        let vars: Vec<String> = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let mut p = Self::zero(&vars);
        for (e, c) in &self.terms {
            p.add_term(keep.iter().map(|&i| e[i]).collect(), c.clone());
        }
        p
    }

    /// Evaluate at rational values.
    pub fn evaluate(&self, values: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (v, &p) in values.iter().zip(e) {
                if p >= 0 {
                    t *= num_traits::pow(v.clone(), p as usize);
                } else {
                    t /= num_traits::pow(v.clone(), (-p) as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Evaluate in the tropical semifield `Trop(x_1..x_m)`: each variable maps
    /// to an exponent vector, products add, sums take componentwise minima.
    pub fn tropical_eval(&self, bindings: &[Vec<i64>]) -> Result<Vec<i64>> {
        assert_eq!(bindings.len(), self.nvars(), "one binding per variable");
        let m = bindings.first().map_or(0, |b| b.len());
        let mut acc: Option<Vec<i64>> = None;
        for (e, c) in &self.terms {
            if !c.is_positive() {
                return Err(Error::NegativeCoefficient(c.to_string()));
            }
            let mut img = vec![0i64; m];
            for (i, &p) in e.iter().enumerate() {
                for (slot, b) in img.iter_mut().zip(&bindings[i]) {
                    *slot += p * b;
                }
            }
            acc = Some(match acc {
                None => img,
                Some(cur) => cur.iter().zip(&img).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        Ok(acc.unwrap_or_else(|| vec![0; m]))
    }

    /// Parse `c * x1^a1 x2^a2 + ...` over the given variables. Exponents may be
    /// negative (`x1^-2` or `x1^(-2)`); `*` between factors is optional.
    pub fn parse(s: &str, vars: &[String]) -> Result<Self> {
        let mut p = Self::zero(vars);
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut negative = false;
        let mut dangling = false;
        let mut prev: Option<char> = None;
        let mut depth = 0i32;
        for ch in s.chars() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            if (ch == '+' || ch == '-') && depth == 0 && prev != Some('^') {
                if !cur.trim().is_empty() {
                    terms.push((negative, std::mem::take(&mut cur)));
                    negative = false;
                }
                cur.clear();
                if ch == '-' {
                    negative = !negative;
                }
                dangling = true;
            } else {
                if !ch.is_whitespace() {
                    dangling = false;
                }
                cur.push(ch);
            }
            if !ch.is_whitespace() {
                prev = Some(ch);
            }
        }
        if dangling {
            return Err(Error::Parse(format!("trailing sign in `{s}`")));
        }
        if !cur.trim().is_empty() {
            terms.push((negative, cur));
        }
        for (neg, body) in terms {
            let (e, c) = Self::parse_term(&body, vars)?;
            p.add_term(e, if neg { -c } else { c });
        }
        Ok(p)
    }

    fn parse_term(body: &str, vars: &[String]) -> Result<(Vec<i64>, BigInt)> {
        let mut coeff = BigInt::one();
        let mut e = vec![0i64; vars.len()];
        let cleaned = body.replace('*', " ").replace("( -", "(-");
        for tok in cleaned.split_whitespace() {
            if let Ok(c) = tok.parse::<BigInt>() {
                coeff *= c;
                continue;
            }
            let (name, pow) = match tok.split_once('^') {
                Some((n, p)) => {
                    let p = p.trim_start_matches('(').trim_end_matches(')');
                    (n, p.parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?)
                }
                None => (tok, 1),
            };
            let idx = vars
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
            e[idx] += pow;
        }
        Ok((e, coeff))
    }

    fn fmt_monomial(&self, e: &[i64]) -> String {
        let mut parts = Vec::new();
        for (v, &p) in self.vars.iter().zip(e) {
            match p {
                0 => {}
                1 => parts.push(v.clone()),
                _ => parts.push(format!("{v}^{p}")),
            }
        }
        parts.join(" ")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let mono = self.fmt_monomial(e);
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{mag} * {mono}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        self.try_add(o).expect("adding polynomials over different variables")
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        self.try_add(&-o).expect("subtracting polynomials over different variables")
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        self.try_mul(o).expect("multiplying polynomials over different variables")
    }
}

impl<'a> Neg for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

/// Coefficients `c_0..c_d` of the unique polynomial of degree `< samples.len()`
/// through the given `(q, count)` points, required to be integral.
pub fn interpolate_coeffs(samples: &[(i64, BigInt)]) -> Result<Vec<BigInt>> {
    let n = samples.len();
    for i in 0..n {
        for j in 0..i {
            if samples[i].0 == samples[j].0 {
                return Err(Error::Parse(format!("repeated sample point {}", samples[i].0)));
            }
        }
    }
    // Lagrange basis accumulated in the monomial basis over Q.
    let mut coeffs = vec![BigRational::zero(); n];
    for (i, (qi, ci)) in samples.iter().enumerate() {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, (qj, _)) in samples.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (d, b) in basis.iter().enumerate() {
                next[d + 1] += b.clone();
                next[d] -= b.clone() * BigRational::from_integer(BigInt::from(*qj));
            }
            basis = next;
            denom *= BigRational::from_integer(BigInt::from(qi - qj));
        }
        let scale = BigRational::from_integer(ci.clone()) / denom;
        for (d, b) in basis.into_iter().enumerate() {
            coeffs[d] += b * scale.clone();
        }
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    coeffs
        .iter()
        .map(|c| rational_to_integer(c).ok_or_else(|| Error::NonIntegerCoefficient(crate::field::format_rational(c))))
        .collect()
}

/// Interpolate point counts into an integer polynomial in the variable `q`.
pub fn interpolate_int_poly(samples: &[(i64, BigInt)]) -> Result<IntPoly> {
    let coeffs = interpolate_coeffs(samples)?;
    let vars = vec!["q".to_string()];
    Ok(LaurentPoly::from_terms(&vars, coeffs.into_iter().enumerate().map(|(d, c)| (vec![d as i64], c))))
}
