//! Graded exterior algebra over the generator coframe.

use super::scalar::Scalar;
use crate::error::Error;
use crate::liealg::{StructureAlgebra, RADIAL};
use std::collections::BTreeMap;
use std::fmt;

/// A differential form: sorted index tuples mapped to scalar coefficients.
///
/// Invariants: every key has length `degree`, strictly increasing indices,
/// and a nonzero coefficient.
#[derive(Clone, PartialEq, Debug)]
pub struct FormExpr<S: Scalar> {
    pub degree: usize,
    pub terms: BTreeMap<Vec<usize>, S>,
}

/// Sort an index tuple, returning the permutation sign; None if repeated.
fn sort_tuple(mut idx: Vec<usize>) -> Option<(Vec<usize>, i32)> {
    // insertion sort with transposition counting; tuples are short
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    for w in idx.windows(2) {
        if w[0] == w[1] {
            return None;
        }
    }
    Some((idx, sign))
}

impl<S: Scalar> FormExpr<S> {
    pub fn zero(degree: usize) -> Self {
        FormExpr {
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// A scalar (0-form).
    pub fn scalar(c: S) -> Self {
        let mut f = FormExpr::zero(0);
        f.add_term(vec![], c);
        f
    }

    /// Single term `c · e^{i1} ∧ … ∧ e^{ik}`; indices need not be sorted.
    pub fn term(indices: Vec<usize>, c: S) -> Self {
        let deg = indices.len();
        let mut f = FormExpr::zero(deg);
        f.add_term(indices, c);
        f
    }

    pub fn generator(i: usize) -> Self {
        FormExpr::term(vec![i], S::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Add `c · e^I`, re-sorting indices and dropping zeros.
    pub fn add_term(&mut self, indices: Vec<usize>, c: S) {
        assert_eq!(indices.len(), self.degree, "degree mismatch");
        if c.is_zero() {
            return;
        }
        let Some((key, sign)) = sort_tuple(indices) else {
            return; // repeated index: term vanishes
        };
        let c = if sign < 0 { c.neg() } else { c };
        let entry = self.terms.entry(key);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.degree, rhs.degree, "degree mismatch in add");
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = FormExpr::zero(self.degree);
        for (k, v) in &self.terms {
            out.terms.insert(k.clone(), v.neg());
        }
        out
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = FormExpr::zero(self.degree);
        for (k, v) in &self.terms {
            let cv = v.mul(c);
            if !cv.is_zero() {
                out.terms.insert(k.clone(), cv);
            }
        }
        out
    }

    /// Graded wedge product.
    pub fn wedge(&self, rhs: &Self) -> Self {
        let mut out = FormExpr::zero(self.degree + rhs.degree);
        for (ka, va) in &self.terms {
            for (kb, vb) in &rhs.terms {
                let mut idx = ka.clone();
                idx.extend_from_slice(kb);
                out.add_term(idx, va.mul(vb));
            }
        }
        out
    }

    /// ω ∧ … ∧ ω, k factors. Degree overflow past the generator count just
    /// produces the zero form.
    pub fn top_power(&self, k: usize) -> Result<Self, Error> {
        if self.degree % 2 != 0 {
            return Err(Error::InvalidArg(
                "top_power requires an even-degree form".into(),
            ));
        }
        let mut acc = FormExpr::scalar(S::one());
        for _ in 0..k {
            acc = acc.wedge(self);
        }
        Ok(acc)
    }

    /// Exterior derivative: radial differentiation of coefficients plus the
    /// structure-constant action on generators, combined by the Leibniz rule.
    pub fn d(&self, alg: &StructureAlgebra) -> Self {
        let mut out = FormExpr::zero(self.degree + 1);
        for (key, coeff) in &self.terms {
            // (∂f/∂r) dr ∧ e^I
            let df = coeff.deriv();
            if !df.is_zero() {
                let mut idx = Vec::with_capacity(key.len() + 1);
                idx.push(RADIAL);
                idx.extend_from_slice(key);
                out.add_term(idx, df);
            }
            // f · Σ_j (−1)^{j} e^{i1..} ∧ d e^{ij} ∧ ..e^{ik}
            for (pos, &g) in key.iter().enumerate() {
                if g == RADIAL {
                    continue; // d(dr) = 0
                }
                let sign_neg = pos % 2 == 1;
                for &(i, j, ref t) in &alg.d_table[g] {
                    let mut c = coeff.mul(&S::from_rational(t));
                    if sign_neg {
                        c = c.neg();
                    }
                    let mut idx = Vec::with_capacity(key.len() + 1);
                    idx.extend_from_slice(&key[..pos]);
                    idx.push(i);
                    idx.push(j);
                    idx.extend_from_slice(&key[pos + 1..]);
                    out.add_term(idx, c);
                }
            }
        }
        out
    }

    /// Deterministic rendering for golden files.
    pub fn render(&self, alg: &StructureAlgebra) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, v) in &self.terms {
            if !s.is_empty() {
                s.push_str(" + ");
            }
            s.push('(');
            s.push_str(&v.to_string());
            s.push(')');
            for g in k {
                s.push('*');
                s.push_str(&alg.basis.name(*g));
            }
        }
        s
    }
}

impl<S: Scalar> fmt::Display for FormExpr<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, v) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", v)?;
            for g in k {
                write!(f, "*e{}", g)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::scalar::{rat, ExactRat, Poly};
    use crate::liealg::{build_algebra, LAMBDA, NU1, NU2};

    type F = FormExpr<ExactRat>;

    fn r_pow(k: usize) -> ExactRat {
        ExactRat::from_poly(Poly::monomial(num::rational::BigRational::from(
            num::bigint::BigInt::from(1),
        ), k))
    }

    #[test]
    fn wedge_antisymmetry() {
        let e1 = F::generator(1);
        let e2 = F::generator(2);
        assert_eq!(e1.wedge(&e2), e2.wedge(&e1).neg());
    }

    #[test]
    fn odd_square_vanishes() {
        let w = F::generator(1).add(&F::generator(2));
        assert!(w.wedge(&w).is_zero());
    }

    #[test]
    fn disjoint_wedge() {
        // (r dr ∧ λ) ∧ (ν₁ ∧ ν₂) = r dr∧λ∧ν₁∧ν₂
        let a = F::term(vec![0, LAMBDA], r_pow(1));
        let b = F::term(vec![NU1, NU2], <ExactRat as Scalar>::one());
        let w = a.wedge(&b);
        assert_eq!(w.terms.len(), 1);
        let (k, v) = w.terms.iter().next().unwrap();
        assert_eq!(k, &vec![0, LAMBDA, NU1, NU2]);
        assert_eq!(v, &r_pow(1));
    }

    #[test]
    fn d_of_r_squared() {
        let alg = build_algebra(1).unwrap();
        let f = F::scalar(r_pow(2));
        let df = f.d(&alg);
        // 2r dr
        let mut expect = F::zero(1);
        expect.add_term(vec![0], ExactRat::from_rational(&rat(2, 1)).mul(&r_pow(1)));
        assert_eq!(df, expect);
    }

    #[test]
    fn d_squared_zero_on_generators() {
        for n in 1..=3 {
            let alg = build_algebra(n).unwrap();
            for g in 1..alg.basis.dim() {
                let dd = F::generator(g).d(&alg).d(&alg);
                assert!(dd.is_zero(), "d^2 e^{} != 0 for n={}", g, n);
            }
        }
    }

    #[test]
    fn d_of_radial_generator_vanishes() {
        let alg = build_algebra(1).unwrap();
        assert!(F::generator(0).d(&alg).is_zero());
    }

    #[test]
    fn top_power_simple() {
        // (e1∧e2 + e3∧e4)^2 = 2 e1∧e2∧e3∧e4
        let w = F::term(vec![1, 2], <ExactRat as Scalar>::one()).add(&F::term(vec![3, 4], <ExactRat as Scalar>::one()));
        let sq = w.top_power(2).unwrap();
        assert_eq!(sq.terms.len(), 1);
        let (k, v) = sq.terms.iter().next().unwrap();
        assert_eq!(k, &vec![1, 2, 3, 4]);
        assert_eq!(v, &ExactRat::from_rational(&rat(2, 1)));
    }

    #[test]
    fn top_power_rejects_odd() {
        assert!(F::generator(1).top_power(2).is_err());
    }

    #[test]
    fn top_power_overflow_is_zero() {
        let alg = build_algebra(1).unwrap();
        let dim = alg.basis.dim();
        let w = F::term(vec![1, 2], <ExactRat as Scalar>::one());
        let p = w.top_power(dim).unwrap();
        assert!(p.is_zero());
    }
}
