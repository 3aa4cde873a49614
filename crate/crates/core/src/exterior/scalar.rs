//! Scalar coefficient backends for the exterior kernel.
//!
//! Two interchangeable types sit behind the [`Scalar`] trait:
//! [`ExactRat`], a rational function of `r` with exact rational
//! coefficients, and [`Jet`], a numeric value carrying first and second
//! r-derivatives through every operation.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Common interface of the two coefficient backends.
pub trait Scalar: Clone + PartialEq + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    /// The radial coordinate `r` as a scalar.
    fn var_r() -> Self;
    fn from_rational(q: &BigRational) -> Self;
    fn from_int(k: i64) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Derivative with respect to `r`.
    fn deriv(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// `(√2)^k` when representable in this backend; the exact backend only
    /// supports even powers.
    fn sqrt2_pow(k: i64) -> Option<Self>;
}

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

// ---------------------------------------------------------------------------
// Polynomials over the rationals
// ---------------------------------------------------------------------------

/// Dense polynomial in `r`, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    pub coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Poly { coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    /// The monomial `c * r^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn var() -> Self {
        Poly::monomial(BigRational::one(), 1)
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn deriv(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigRational::from(BigInt::from(k)))
            .collect();
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rational_to_f64(c);
        }
        acc
    }

    pub fn pow(&self, mut k: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Euclidean division: returns (quotient, remainder).
    pub fn divmod(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quo = Poly::zero();
        let dd = d.degree().unwrap();
        let dl = d.leading();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.leading() / dl.clone();
            let t = Poly::monomial(c, rd - dd);
            quo = &quo + &t;
            rem = &rem - &(&t * d);
        }
        (quo, rem)
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.leading();
        a.scale(&(BigRational::one() / lead))
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        let mut p = Poly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        };
        p.trim();
        p
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero);
            let b = rhs.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero);
            coeffs.push(a + b);
        }
        let mut p = Poly { coeffs };
        p.trim();
        p
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &rhs.scale(&-BigRational::one())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs =
            vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        let mut p = Poly { coeffs };
        p.trim();
        p
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "{}*r", c)?,
                _ => write!(f, "{}*r^{}", c, k)?,
            }
        }
        Ok(())
    }
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    // BigRational has no direct f64 conversion; go through a scaled split
    // to stay accurate for large numerators.
    let n = q.numer();
    let d = q.denom();
    match (n.to_string().parse::<f64>(), d.to_string().parse::<f64>()) {
        (Ok(nf), Ok(df)) if nf.is_finite() && df.is_finite() && df != 0.0 => nf / df,
        _ => {
            // fall back to integer division with remainder
            let (quo, rem) = num::Integer::div_rem(n, d);
            quo.to_string().parse::<f64>().unwrap_or(f64::NAN)
                + rem.to_string().parse::<f64>().unwrap_or(f64::NAN)
                    / d.to_string().parse::<f64>().unwrap_or(f64::NAN)
        }
    }
}

// ---------------------------------------------------------------------------
// Exact rational functions of r
// ---------------------------------------------------------------------------

/// Canonical ratio of polynomials: gcd-reduced, monic denominator.
#[derive(Clone, Debug)]
pub struct ExactRat {
    pub num: Poly,
    pub den: Poly,
}

impl ExactRat {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut x = ExactRat { num, den };
        x.canonicalize();
        x
    }

    pub fn from_poly(p: Poly) -> Self {
        ExactRat {
            num: p,
            den: Poly::one(),
        }
    }

    fn canonicalize(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if g.degree().unwrap_or(0) > 0 {
            self.num = self.num.divmod(&g).0;
            self.den = self.den.divmod(&g).0;
        }
        let lead = self.den.leading();
        let inv = BigRational::one() / lead;
        self.num = self.num.scale(&inv);
        self.den = self.den.scale(&inv);
    }

    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.num.eval_f64(x) / self.den.eval_f64(x)
    }

    pub fn recip(&self) -> ExactRat {
        assert!(!self.num.is_zero(), "reciprocal of zero");
        ExactRat::new(self.den.clone(), self.num.clone())
    }
}

impl PartialEq for ExactRat {
    fn eq(&self, other: &Self) -> bool {
        // canonical form makes structural equality sound
        self.num == other.num && self.den == other.den
    }
}

impl Add for &ExactRat {
    type Output = ExactRat;
    fn add(self, rhs: &ExactRat) -> ExactRat {
        ExactRat::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &ExactRat {
    type Output = ExactRat;
    fn sub(self, rhs: &ExactRat) -> ExactRat {
        self + &Scalar::neg(rhs)
    }
}

impl Mul for &ExactRat {
    type Output = ExactRat;
    fn mul(self, rhs: &ExactRat) -> ExactRat {
        ExactRat::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &ExactRat {
    type Output = ExactRat;
    fn div(self, rhs: &ExactRat) -> ExactRat {
        self * &rhs.recip()
    }
}

impl fmt::Display for ExactRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Scalar for ExactRat {
    fn zero() -> Self {
        ExactRat::from_poly(Poly::zero())
    }
    fn one() -> Self {
        ExactRat::from_poly(Poly::one())
    }
    fn var_r() -> Self {
        ExactRat::from_poly(Poly::var())
    }
    fn from_rational(q: &BigRational) -> Self {
        ExactRat::from_poly(Poly::constant(q.clone()))
    }
    fn from_int(k: i64) -> Self {
        Self::from_rational(&BigRational::from(BigInt::from(k)))
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg(&self) -> Self {
        ExactRat {
            num: self.num.scale(&-BigRational::one()),
            den: self.den.clone(),
        }
    }
    fn deriv(&self) -> Self {
        // (n/d)' = (n'd - nd')/d^2
        ExactRat::new(
            &(&self.num.deriv() * &self.den) - &(&self.num * &self.den.deriv()),
            &self.den * &self.den,
        )
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn sqrt2_pow(k: i64) -> Option<Self> {
        if k % 2 != 0 {
            return None;
        }
        let h = k / 2;
        let two = BigRational::from(BigInt::from(2));
        let q = if h >= 0 {
            num::pow::pow(two, h as usize)
        } else {
            BigRational::one() / num::pow::pow(two, (-h) as usize)
        };
        Some(Self::from_rational(&q))
    }
}

// ---------------------------------------------------------------------------
// Second-order jets (value + first/second r-derivative)
// ---------------------------------------------------------------------------

/// Numeric scalar carrying `(f, f', f'')` through arithmetic.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Jet {
    pub v: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Jet {
    pub fn constant(v: f64) -> Self {
        Jet { v, d1: 0.0, d2: 0.0 }
    }

    /// The coordinate `r` evaluated at `r0`.
    pub fn var(r0: f64) -> Self {
        Jet { v: r0, d1: 1.0, d2: 0.0 }
    }

    pub fn sqrt(self) -> Jet {
        let s = self.v.sqrt();
        Jet {
            v: s,
            d1: self.d1 / (2.0 * s),
            d2: self.d2 / (2.0 * s) - self.d1 * self.d1 / (4.0 * s * self.v),
        }
    }

    pub fn recip(self) -> Jet {
        let iv = 1.0 / self.v;
        Jet {
            v: iv,
            d1: -self.d1 * iv * iv,
            d2: (2.0 * self.d1 * self.d1 / self.v - self.d2) * iv * iv,
        }
    }

    pub fn powi(self, k: i32) -> Jet {
        if k < 0 {
            return self.recip().powi(-k);
        }
        let mut acc = Jet::constant(1.0);
        for _ in 0..k {
            acc = acc * self;
        }
        acc
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        Jet {
            v: self.v + rhs.v,
            d1: self.d1 + rhs.d1,
            d2: self.d2 + rhs.d2,
        }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        Jet {
            v: self.v - rhs.v,
            d1: self.d1 - rhs.d1,
            d2: self.d2 - rhs.d2,
        }
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        Jet {
            v: self.v * rhs.v,
            d1: self.d1 * rhs.v + self.v * rhs.d1,
            d2: self.d2 * rhs.v + 2.0 * self.d1 * rhs.d1 + self.v * rhs.d2,
        }
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, rhs: Jet) -> Jet {
        self * rhs.recip()
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet {
            v: -self.v,
            d1: -self.d1,
            d2: -self.d2,
        }
    }
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.12e}", self.v)
    }
}

impl Scalar for Jet {
    fn zero() -> Self {
        Jet::constant(0.0)
    }
    fn one() -> Self {
        Jet::constant(1.0)
    }
    fn var_r() -> Self {
        // a free variable with unspecified base point is not meaningful here
        panic!("Jet::var_r requires an evaluation point; use Jet::var(r0)")
    }
    fn from_rational(q: &BigRational) -> Self {
        Jet::constant(rational_to_f64(q))
    }
    fn from_int(k: i64) -> Self {
        Jet::constant(k as f64)
    }
    fn add(&self, rhs: &Self) -> Self {
        *self + *rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        *self - *rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        *self * *rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        *self / *rhs
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn deriv(&self) -> Self {
        // second derivative of the shifted jet is not tracked; callers in
        // the curvature path never differentiate twice
        Jet {
            v: self.d1,
            d1: self.d2,
            d2: f64::NAN,
        }
    }
    fn is_zero(&self) -> bool {
        self.v == 0.0 && self.d1 == 0.0 && self.d2 == 0.0
    }
    fn sqrt2_pow(k: i64) -> Option<Self> {
        Some(Jet::constant(2f64.powf(k as f64 / 2.0)))
    }
}
