//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept in canonical form: sorted descending by the global
//! graded reverse-lexicographic order, no zero coefficients, no duplicate
//! monomials. Equality is therefore structural equality.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::rat::{rat_to_f64, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    /// `(monomial, coefficient)` pairs, leading term first.
    terms: Vec<(Monomial, Rat)>,
}

impl Polynomial {
    /// The zero polynomial (empty term list).
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Polynomial { nvars, terms: vec![(Monomial::one(nvars), c)] }
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        Polynomial {
            nvars,
            terms: vec![(Monomial::var(nvars, i), Rat::one())],
        }
    }

    /// Builds a polynomial from an arbitrary term list, merging duplicates
    /// and dropping zeros.
    pub fn from_terms(nvars: usize, terms: Vec<(Monomial, Rat)>) -> Self {
        let mut terms = terms;
        for (m, _) in &terms {
            assert_eq!(m.nvars(), nvars, "monomial arity mismatch");
        }
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut merged: Vec<(Monomial, Rat)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = merged.last_mut() {
                if last.0 == m {
                    last.1 += c;
                    continue;
                }
            }
            merged.push((m, c));
        }
        merged.retain(|(_, c)| !c.is_zero());
        Polynomial { nvars, terms: merged }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Rat)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// Leading term in the global order, if any.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Number of stored terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    fn assert_same_ring(&self, other: &Polynomial) {
        assert_eq!(
            self.nvars, other.nvars,
            "polynomials from different rings: {} vs {} variables",
            self.nvars, other.nvars
        );
    }

    /// Checked addition; errors on variable-count mismatch.
    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self + other)
    }

    /// Checked subtraction; errors on variable-count mismatch.
    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self - other)
    }

    /// Checked multiplication; errors on variable-count mismatch.
    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self * other)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VarCountMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Multiplies by the single term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(tm, tc)| (tm.mul(m), tc * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::constant(self.nvars, Rat::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Scaled by a rational so all coefficients become integers with no
    /// common factor and the leading coefficient is positive. The scale
    /// is a unit, so leading monomial, zero set, and ideal memberships
    /// are untouched; unlike `monic`, repeated arithmetic on the result
    /// does not accumulate large denominators.
    pub fn primitive(&self) -> Polynomial {
        use num_integer::Integer;
        if self.terms.is_empty() {
            return self.clone();
        }
        let mut den_lcm = num_bigint::BigInt::from(1);
        for (_, c) in &self.terms {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = num_bigint::BigInt::from(0);
        for (_, c) in &self.terms {
            num_gcd = num_gcd.gcd(&(c.numer() * (&den_lcm / c.denom())));
        }
        let mut scale = Rat::new(den_lcm, num_gcd);
        if self.terms[0].1 < Rat::zero() {
            scale = -scale;
        }
        self.scale(&scale)
    }

    /// Leading coefficient normalized to 1.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = Rat::one() / c.clone();
                self.scale(&inv)
            }
        }
    }

    /// Exact partial derivative with respect to variable `var`.
    pub fn partial(&self, var: usize) -> Result<Polynomial> {
        if var >= self.nvars {
            return Err(Error::VarIndexOutOfRange { index: var, nvars: self.nvars });
        }
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[var] = e - 1;
            terms.push((Monomial::new(exps), c * Rat::from_integer(e.into())));
        }
        Ok(Polynomial::from_terms(self.nvars, terms))
    }

    /// Exact evaluation at a rational point, with per-variable power caching.
    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.nvars {
            return Err(Error::PointLength { expected: self.nvars, got: point.len() });
        }
        let mut max_exp = vec![0u32; self.nvars];
        for (m, _) in &self.terms {
            for (i, e) in m.exps().iter().enumerate() {
                max_exp[i] = max_exp[i].max(*e);
            }
        }
        let mut pows: Vec<Vec<Rat>> = Vec::with_capacity(self.nvars);
        for (i, &me) in max_exp.iter().enumerate() {
            let mut col = Vec::with_capacity(me as usize + 1);
            col.push(Rat::one());
            for e in 1..=me {
                let prev = col[(e - 1) as usize].clone();
                col.push(prev * &point[i]);
            }
            pows.push(col);
        }
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t *= &pows[i][e as usize];
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitutes `values[i]` for `x_i`; all values must live in a common
    /// ring, which becomes the ring of the result.
    pub fn substitute(&self, values: &[Polynomial]) -> Result<Polynomial> {
        if values.len() != self.nvars {
            return Err(Error::PointLength { expected: self.nvars, got: values.len() });
        }
        let out_vars = values.first().map(|p| p.nvars()).unwrap_or(0);
        for v in values {
            if v.nvars() != out_vars {
                return Err(Error::VarCountMismatch { left: out_vars, right: v.nvars() });
            }
        }
        let mut acc = Polynomial::zero(out_vars);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(out_vars, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = &t * &values[i].pow(e);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Coefficients rounded to binary-64 for the numerical pipelines.
    pub fn to_float(&self) -> FloatPoly {
        FloatPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.exps().to_vec(), rat_to_f64(c)))
                .collect(),
        }
    }

    /// Renders the polynomial in the problem-file expression grammar
    /// (explicit `*`, integer `^`, rational literals). `names[i]` is the
    /// display name of `x_i`.
    pub fn render<S: AsRef<str>>(&self, names: &[S]) -> String {
        assert_eq!(names.len(), self.nvars, "name list arity mismatch");
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_one() {
                let mut s = String::new();
                let _ = write!(s, "{mag}");
                factors.push(s);
            }
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let mut s = String::from(names[i].as_ref());
                if e > 1 {
                    let _ = write!(s, "^{e}");
                }
                factors.push(s);
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_ring(rhs);
        // merge of two canonically sorted term lists
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            match self.terms[i].0.cmp(&rhs.terms[j].0) {
                core::cmp::Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                core::cmp::Ordering::Less => {
                    out.push(rhs.terms[j].clone());
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    let c = &self.terms[i].1 + &rhs.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&rhs.terms[j..]);
        Polynomial { nvars: self.nvars, terms: out }
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_ring(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                terms.push((ma.mul(mb), ca * cb));
            }
        }
        Polynomial::from_terms(self.nvars, terms)
    }
}

/// Polynomial with binary-64 coefficients, used only by the sampling and
/// perturbation paths.
#[derive(Debug, Clone)]
pub struct FloatPoly {
    nvars: usize,
    terms: Vec<(Vec<u32>, f64)>,
}

impl FloatPoly {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Evaluation in f64, deterministic term order.
    pub fn eval(&self, point: &[f64]) -> f64 {
        debug_assert_eq!(point.len(), self.nvars);
        let mut acc = 0.0;
        for (exps, c) in &self.terms {
            let mut t = *c;
            for (i, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    t *= point[i];
                }
            }
            acc += t;
        }
        acc
    }
}
