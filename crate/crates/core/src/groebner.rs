//! Buchberger's algorithm, normal forms, ideal membership, and finite
//! power certificates `m^k (cofactors) <= ideal`.
//!
//! Membership is decided in the polynomial ideal. That is a sufficient
//! condition for membership in the corresponding ideal of germs, so a
//! positive certificate is sound; a negative one is only "inconclusive"
//! for the germ-level question.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use num_traits::One;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::rat::Rat;
use crate::util::monomials_of_degree;

/// A reduced Groebner basis under the global monomial order.
///
/// Generators are monic, pairwise tail-reduced, and sorted descending by
/// leading term, which pins down the division algorithm completely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    nvars: usize,
    gens: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// The zero ideal has an empty basis.
    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    /// The whole ring: the reduced basis is exactly `{1}`.
    pub fn is_unit_ideal(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_constant() && !self.gens[0].is_zero()
    }

    /// Multivariate-division remainder of `p` against the basis.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        Ok(self.normal_form_with_quotients(p)?.0)
    }

    /// Remainder plus the quotient against each basis element, so that
    /// `p = sum_i q_i * g_i + r` exactly.
    pub fn normal_form_with_quotients(
        &self,
        p: &Polynomial,
    ) -> Result<(Polynomial, Vec<Polynomial>)> {
        if p.nvars() != self.nvars {
            return Err(Error::VarCountMismatch { left: p.nvars(), right: self.nvars });
        }
        Ok(divide(p, &self.gens))
    }

    /// True iff `p` lies in the polynomial ideal spanned by the basis.
    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }
}

/// Full-reduction division of `p` by `gens`: returns `(r, q)` with
/// `p = sum q_i gens_i + r` and no term of `r` divisible by any leading
/// term. Ties go to the first dividing generator in list order.
fn divide(p: &Polynomial, gens: &[Polynomial]) -> (Polynomial, Vec<Polynomial>) {
    let nvars = p.nvars();
    let mut quots = vec![Polynomial::zero(nvars); gens.len()];
    let mut rem_terms: Vec<(Monomial, Rat)> = Vec::new();
    let mut work = p.clone();
    'outer: while let Some((lm, lc)) = work.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        for (gi, g) in gens.iter().enumerate() {
            let (gm, gc) = g.leading_term().expect("basis elements are nonzero");
            if gm.divides(&lm) {
                let qm = gm.quotient_into(&lm);
                let qc = &lc / gc;
                work = &work - &g.mul_term(&qm, &qc);
                quots[gi] =
                    &quots[gi] + &Polynomial::from_terms(nvars, vec![(qm, qc)]);
                continue 'outer;
            }
        }
        // leading term is irreducible: move it to the remainder
        rem_terms.push((lm.clone(), lc.clone()));
        work = &work - &Polynomial::from_terms(nvars, vec![(lm, lc)]);
    }
    // rem_terms were collected in strictly descending order, so the list
    // is already canonical
    (Polynomial::from_terms(nvars, rem_terms), quots)
}

/// The S-polynomial of two nonzero polynomials: both leading terms are
/// scaled onto their least common multiple and cancelled. Every pair
/// drawn from a completed basis must reduce to zero against it.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fm, fc) = f.leading_term().expect("nonzero");
    let (gm, gc) = g.leading_term().expect("nonzero");
    let l = fm.lcm(gm);
    let uf = fm.quotient_into(&l);
    let ug = gm.quotient_into(&l);
    let inv_fc = Rat::one() / fc.clone();
    let inv_gc = Rat::one() / gc.clone();
    &f.mul_term(&uf, &inv_fc) - &g.mul_term(&ug, &inv_gc)
}

/// Computes the reduced Groebner basis of the ideal spanned by `gens`
/// inside the ring with `nvars` variables. Zero generators are discarded;
/// an empty list (after discarding) yields the zero ideal.
pub fn groebner(nvars: usize, gens: &[Polynomial]) -> Result<GroebnerBasis> {
    for g in gens {
        if g.nvars() != nvars {
            return Err(Error::VarCountMismatch { left: nvars, right: g.nvars() });
        }
    }
    let mut basis: Vec<Polynomial> =
        gens.iter().filter(|g| !g.is_zero()).map(|g| g.primitive()).collect();
    // min-heap on (pair lcm, i, j): normal selection with index ties,
    // keys computed once since basis elements are append-only
    let mut pairs: BinaryHeap<Reverse<(Monomial, usize, usize)>> = BinaryHeap::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pairs.push(Reverse((pair_lcm(&basis, i, j), i, j)));
        }
    }
    while let Some(Reverse((lcm, i, j))) = pairs.pop() {
        let lt_i = basis[i].leading_term().unwrap().0;
        let lt_j = basis[j].leading_term().unwrap().0;
        // coprime leading terms: the S-polynomial reduces to zero
        if lt_i.coprime(lt_j) {
            continue;
        }
        // chain criterion: if some third leading term divides this pair's
        // lcm and both bridging pairs have strictly smaller lcms, those
        // pairs were already popped (selection is ascending), so this
        // S-polynomial reduces through them
        let redundant = (0..basis.len()).any(|k| {
            if k == i || k == j {
                return false;
            }
            let lt_k = basis[k].leading_term().unwrap().0;
            lt_k.divides(&lcm) && lt_i.lcm(lt_k) != lcm && lt_j.lcm(lt_k) != lcm
        });
        if redundant {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j]);
        let (r, _) = divide(&s, &basis);
        if !r.is_zero() {
            let new = r.primitive();
            let new_lt = new.leading_term().unwrap().0.clone();
            let t = basis.len();
            for k in 0..t {
                let key = basis[k].leading_term().unwrap().0.lcm(&new_lt);
                pairs.push(Reverse((key, k, t)));
            }
            basis.push(new);
        }
    }
    Ok(reduce_basis(nvars, basis))
}

fn pair_lcm(basis: &[Polynomial], i: usize, j: usize) -> Monomial {
    let a = basis[i].leading_term().unwrap().0;
    let b = basis[j].leading_term().unwrap().0;
    a.lcm(b)
}

/// Minimizes and tail-reduces a Groebner basis, yielding the unique
/// reduced basis sorted descending by leading term.
fn reduce_basis(nvars: usize, basis: Vec<Polynomial>) -> GroebnerBasis {
    let mut sorted = basis;
    // ascending pass: a divisor is never larger than its multiple, so
    // keeping smaller leading terms first makes one sweep sufficient
    sorted.sort_by(|a, b| {
        a.leading_term().unwrap().0.cmp(b.leading_term().unwrap().0)
    });
    // minimal basis: drop any element whose leading term another kept
    // element's leading term divides
    let mut kept: Vec<Polynomial> = Vec::new();
    for g in sorted {
        let lm = g.leading_term().unwrap().0.clone();
        if kept
            .iter()
            .all(|h| !h.leading_term().unwrap().0.divides(&lm))
        {
            kept.push(g);
        }
    }
    // tail-reduce each element against the others; leading terms are
    // pairwise non-divisible, so one pass is enough
    let mut reduced = Vec::with_capacity(kept.len());
    for i in 0..kept.len() {
        let others: Vec<Polynomial> = kept
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let (r, _) = divide(&kept[i], &others);
        reduced.push(r.monic());
    }
    reduced.sort_by(|a, b| {
        b.leading_term().unwrap().0.cmp(a.leading_term().unwrap().0)
    });
    GroebnerBasis { nvars, gens: reduced }
}

/// Reduction trace for one product `monomial * cofactor`: the quotients
/// against the basis generators that witness its membership.
#[derive(Debug, Clone)]
pub struct MembershipTrace {
    pub product: Polynomial,
    pub quotients: Vec<Polynomial>,
}

/// Result of the finite flatness surrogate: the smallest exponent `k` at
/// which every degree-`k` monomial (times every cofactor) lies in the
/// ideal, together with the witnessing reduction traces.
#[derive(Debug, Clone)]
pub struct PowerCertificate {
    pub k: Option<u32>,
    pub k_max: u32,
    pub traces: Vec<MembershipTrace>,
}

/// Searches `k = 0, 1, ..., k_max` for the first `k` with
/// `m^k * (cofactors) <= ideal`, where `m` is the maximal ideal at the
/// origin of the ambient ring. An empty cofactor list means the plain
/// inclusion `m^k <= ideal`.
///
/// A found `k` certifies the infinite-order inclusion, since every
/// function flat at the origin lies in every power of `m`. A "none"
/// outcome is inconclusive, not a refutation.
pub fn power_certificate(
    gb: &GroebnerBasis,
    k_max: u32,
    cofactors: &[Polynomial],
) -> Result<PowerCertificate> {
    let nvars = gb.nvars();
    for c in cofactors {
        if c.nvars() != nvars {
            return Err(Error::VarCountMismatch { left: nvars, right: c.nvars() });
        }
    }
    let one = [Polynomial::constant(nvars, Rat::one())];
    let cofs: &[Polynomial] = if cofactors.is_empty() { &one } else { cofactors };
    'search: for k in 0..=k_max {
        let monos = monomials_of_degree(nvars, k);
        let mut traces = Vec::new();
        for m in &monos {
            let mp = Polynomial::from_terms(nvars, vec![(m.clone(), Rat::one())]);
            for c in cofs {
                let prod = &mp * c;
                let (r, q) = gb.normal_form_with_quotients(&prod)?;
                if !r.is_zero() {
                    continue 'search;
                }
                traces.push(MembershipTrace { product: prod, quotients: q });
            }
        }
        return Ok(PowerCertificate { k: Some(k), k_max, traces });
    }
    Ok(PowerCertificate { k: None, k_max, traces: Vec::new() })
}
