//! Real structure constants of su(n+2) in the orbit-adapted basis.
//!
//! The complex left-invariant coframe `L_A^B` on SU(n+2) satisfies
//! `dL_A^B = i L_A^C ∧ L_C^B`, with conjugation acting as the index swap
//! `conj(L_A^B) = L_B^A` and `Σ_A L_A^A = 0`. The horizontal coframe is
//! built from
//!
//! ```text
//! σ_β = L_1^β = σ_{1β} + i σ_{2β}
//! Σ_β = L_2^β = Σ_{1β} + i Σ_{2β}
//! ν   = L_1^2 = ν_1 + i ν_2
//! λ   = L_1^1 − L_2^2            (real)
//! ```
//!
//! and the vertical (isotropy) generators are the real and imaginary parts
//! of the u(n)-block forms `L_β^γ`. Expanding the Maurer–Cartan relations
//! in this real basis yields exact rational structure constants.

use crate::error::Error;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::Zero;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Classification of a generator index.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GenKind {
    Radial,
    Lambda,
    Nu1,
    Nu2,
    /// β in 1..=n
    Sigma1(usize),
    Sigma2(usize),
    BigSigma1(usize),
    BigSigma2(usize),
    /// a in 0..n²
    Vertical(usize),
}

/// Metric class of a generator; every generator in a class shares one
/// squared coefficient function in the cohomogeneity-one ansatz.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GenClass {
    Radial,
    Lambda,
    Nu,
    Sigma,
    BigSigma,
    Vertical,
}

/// Index bookkeeping for the adapted basis at a given n.
///
/// Layout: 0 radial, 1 λ, 2 ν₁, 3 ν₂, then interleaved σ_{1β}, σ_{2β},
/// then Σ_{1β}, Σ_{2β}, then n² vertical generators.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Basis {
    pub n: usize,
}

pub const RADIAL: usize = 0;
pub const LAMBDA: usize = 1;
pub const NU1: usize = 2;
pub const NU2: usize = 3;

impl Basis {
    pub fn new(n: usize) -> Self {
        Basis { n }
    }

    /// Total generator count including the radial slot.
    pub fn dim(&self) -> usize {
        4 * self.n + 4 + self.n * self.n
    }

    /// Radial + horizontal count = 4n+4 (the frame of the metric).
    pub fn frame_dim(&self) -> usize {
        4 * self.n + 4
    }

    pub fn horizontal_count(&self) -> usize {
        4 * self.n + 3
    }

    pub fn vertical_count(&self) -> usize {
        self.n * self.n
    }

    pub fn sigma1(&self, beta: usize) -> usize {
        debug_assert!(beta >= 1 && beta <= self.n);
        4 + 2 * (beta - 1)
    }

    pub fn sigma2(&self, beta: usize) -> usize {
        self.sigma1(beta) + 1
    }

    pub fn big_sigma1(&self, beta: usize) -> usize {
        debug_assert!(beta >= 1 && beta <= self.n);
        4 + 2 * self.n + 2 * (beta - 1)
    }

    pub fn big_sigma2(&self, beta: usize) -> usize {
        self.big_sigma1(beta) + 1
    }

    pub fn vertical(&self, a: usize) -> usize {
        debug_assert!(a < self.n * self.n);
        4 * self.n + 4 + a
    }

    /// Diagonal vertical D_β = L_β^β, β in 1..=n.
    fn vert_diag(&self, beta: usize) -> usize {
        self.vertical(beta - 1)
    }

    /// Off-diagonal vertical: real (im=false) or imaginary (im=true) part
    /// of L_β^γ for β<γ.
    fn vert_off(&self, beta: usize, gamma: usize, im: bool) -> usize {
        debug_assert!(beta < gamma && gamma <= self.n);
        // pairs (β,γ) with β<γ in lex order
        let mut p = 0;
        for b in 1..beta {
            p += self.n - b;
        }
        p += gamma - beta - 1;
        self.vertical(self.n + 2 * p + if im { 1 } else { 0 })
    }

    pub fn is_vertical(&self, idx: usize) -> bool {
        idx >= self.frame_dim()
    }

    pub fn kind(&self, idx: usize) -> GenKind {
        let n = self.n;
        match idx {
            RADIAL => GenKind::Radial,
            LAMBDA => GenKind::Lambda,
            NU1 => GenKind::Nu1,
            NU2 => GenKind::Nu2,
            i if i < 4 + 2 * n => {
                let k = i - 4;
                if k % 2 == 0 {
                    GenKind::Sigma1(k / 2 + 1)
                } else {
                    GenKind::Sigma2(k / 2 + 1)
                }
            }
            i if i < 4 + 4 * n => {
                let k = i - 4 - 2 * n;
                if k % 2 == 0 {
                    GenKind::BigSigma1(k / 2 + 1)
                } else {
                    GenKind::BigSigma2(k / 2 + 1)
                }
            }
            i if i < self.dim() => GenKind::Vertical(i - 4 * n - 4),
            _ => panic!("generator index {} out of range for n={}", idx, n),
        }
    }

    pub fn class(&self, idx: usize) -> GenClass {
        match self.kind(idx) {
            GenKind::Radial => GenClass::Radial,
            GenKind::Lambda => GenClass::Lambda,
            GenKind::Nu1 | GenKind::Nu2 => GenClass::Nu,
            GenKind::Sigma1(_) | GenKind::Sigma2(_) => GenClass::Sigma,
            GenKind::BigSigma1(_) | GenKind::BigSigma2(_) => GenClass::BigSigma,
            GenKind::Vertical(_) => GenClass::Vertical,
        }
    }

    pub fn name(&self, idx: usize) -> String {
        match self.kind(idx) {
            GenKind::Radial => "dr".into(),
            GenKind::Lambda => "lambda".into(),
            GenKind::Nu1 => "nu1".into(),
            GenKind::Nu2 => "nu2".into(),
            GenKind::Sigma1(b) => format!("sigma1_{}", b),
            GenKind::Sigma2(b) => format!("sigma2_{}", b),
            GenKind::BigSigma1(b) => format!("Sigma1_{}", b),
            GenKind::BigSigma2(b) => format!("Sigma2_{}", b),
            GenKind::Vertical(a) => format!("vert_{}", a),
        }
    }
}

// ---------------------------------------------------------------------------
// Complex rational coefficients used only during construction
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Debug)]
struct CRat {
    re: BigRational,
    im: BigRational,
}

impl CRat {
    fn new(re: BigRational, im: BigRational) -> Self {
        CRat { re, im }
    }
    fn real(p: i64, q: i64) -> Self {
        CRat::new(BigRational::new(BigInt::from(p), BigInt::from(q)), BigRational::zero())
    }
    fn imag(p: i64, q: i64) -> Self {
        CRat::new(BigRational::zero(), BigRational::new(BigInt::from(p), BigInt::from(q)))
    }
    fn zero() -> Self {
        CRat::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn mul(&self, o: &CRat) -> CRat {
        CRat::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
    fn add_assign(&mut self, o: &CRat) {
        self.re += &o.re;
        self.im += &o.im;
    }
    fn times_i(&self) -> CRat {
        CRat::new(-self.im.clone(), self.re.clone())
    }
    fn scale(&self, q: &CRat) -> CRat {
        self.mul(q)
    }
}

/// A complex-linear combination of real generators.
type Combo = Vec<(CRat, usize)>;

// ---------------------------------------------------------------------------
// Structure algebra
// ---------------------------------------------------------------------------

/// Exact structure constants in the adapted real basis.
///
/// `d_table[k]` lists `(i, j, t)` with `i < j` such that
/// `d e^k = Σ t e^i ∧ e^j`; equivalently `c^k_{ij} = −t` in
/// `[e_i, e_j] = c^k_{ij} e_k`.
#[derive(Clone, Debug)]
pub struct StructureAlgebra {
    pub basis: Basis,
    pub d_table: Vec<Vec<(usize, usize, BigRational)>>,
}

impl StructureAlgebra {
    /// Structure constant `c^k_{ij}` with full antisymmetry in (i, j).
    pub fn c(&self, k: usize, i: usize, j: usize) -> BigRational {
        if i == j {
            return BigRational::zero();
        }
        let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
        for &(x, y, ref t) in &self.d_table[k] {
            if x == a && y == b {
                return -t * BigRational::from(BigInt::from(sign));
            }
        }
        BigRational::zero()
    }

    /// Sparse bracket [e_i, e_j] as a list of (k, c^k_{ij}).
    pub fn bracket(&self, i: usize, j: usize) -> Vec<(usize, BigRational)> {
        let mut out = Vec::new();
        for k in 0..self.basis.dim() {
            let c = self.c(k, i, j);
            if !c.is_zero() {
                out.push((k, c));
            }
        }
        out
    }

    /// Max |Jacobi residual| over all index quadruples; zero for a Lie algebra.
    pub fn jacobi_residual(&self) -> BigRational {
        let dim = self.basis.dim();
        // dense bracket table keyed by (i,j), i<j
        let mut tbl: BTreeMap<(usize, usize), Vec<(usize, BigRational)>> = BTreeMap::new();
        for i in 1..dim {
            for j in (i + 1)..dim {
                let b = self.bracket(i, j);
                if !b.is_empty() {
                    tbl.insert((i, j), b);
                }
            }
        }
        let get = |i: usize, j: usize| -> Vec<(usize, BigRational)> {
            if i == j {
                return vec![];
            }
            let (a, b, s) = if i < j { (i, j, 1) } else { (j, i, -1) };
            match tbl.get(&(a, b)) {
                None => vec![],
                Some(v) => v
                    .iter()
                    .map(|(k, c)| (*k, c * BigRational::from(BigInt::from(s))))
                    .collect(),
            }
        };
        let mut worst = BigRational::zero();
        for i in 1..dim {
            for j in (i + 1)..dim {
                for k in (j + 1)..dim {
                    let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (m, q) in get(a, b) {
                            for (l, p) in get(m, c) {
                                *acc.entry(l).or_insert_with(BigRational::zero) += q.clone() * p;
                            }
                        }
                    }
                    for (_, v) in acc {
                        let av = if v < BigRational::zero() { -v } else { v };
                        if av > worst {
                            worst = av;
                        }
                    }
                }
            }
        }
        worst
    }

    /// Check the reductive split: [vert, vert] ⊂ vert and [vert, horiz] ⊂ horiz.
    pub fn reductive_split_ok(&self) -> bool {
        let basis = self.basis;
        for i in 1..basis.dim() {
            for j in (i + 1)..basis.dim() {
                let iv = basis.is_vertical(i);
                let jv = basis.is_vertical(j);
                for (k, _) in self.bracket(i, j) {
                    let kv = basis.is_vertical(k);
                    if iv && jv && !kv {
                        return false;
                    }
                    if iv != jv && kv {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Deterministic listing of the d-table, for golden-file tests.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for k in 0..self.basis.dim() {
            let mut terms = self.d_table[k].clone();
            terms.sort_by_key(|&(i, j, _)| (i, j));
            let _ = write!(s, "d {} =", self.basis.name(k));
            if terms.is_empty() {
                s.push_str(" 0");
            }
            for (i, j, t) in terms {
                let _ = write!(s, " {:+}*{}^{}", t, self.basis.name(i), self.basis.name(j));
            }
            s.push('\n');
        }
        s
    }
}

/// The complex form `L_A^B` (matrix indices 0-based: 0,1 are the two
/// distinguished slots, 2+k is β=k+1) as a combination of real generators.
fn l_form(basis: Basis, a: usize, b: usize) -> Combo {
    let n = basis.n;
    let half = || CRat::real(1, 2);
    let mhalf = || CRat::real(-1, 2);
    match (a, b) {
        (0, 0) => {
            // L_1^1 = λ/2 − (1/2) Σ_γ D_γ   (trace constraint)
            let mut v = vec![(half(), LAMBDA)];
            for g in 1..=n {
                v.push((mhalf(), basis.vert_diag(g)));
            }
            v
        }
        (1, 1) => {
            let mut v = vec![(mhalf(), LAMBDA)];
            for g in 1..=n {
                v.push((mhalf(), basis.vert_diag(g)));
            }
            v
        }
        (0, 1) => vec![(CRat::real(1, 1), NU1), (CRat::imag(1, 1), NU2)],
        (1, 0) => vec![(CRat::real(1, 1), NU1), (CRat::imag(-1, 1), NU2)],
        (0, bb) if bb >= 2 => vec![
            (CRat::real(1, 1), basis.sigma1(bb - 1)),
            (CRat::imag(1, 1), basis.sigma2(bb - 1)),
        ],
        (aa, 0) if aa >= 2 => vec![
            (CRat::real(1, 1), basis.sigma1(aa - 1)),
            (CRat::imag(-1, 1), basis.sigma2(aa - 1)),
        ],
        (1, bb) if bb >= 2 => vec![
            (CRat::real(1, 1), basis.big_sigma1(bb - 1)),
            (CRat::imag(1, 1), basis.big_sigma2(bb - 1)),
        ],
        (aa, 1) if aa >= 2 => vec![
            (CRat::real(1, 1), basis.big_sigma1(aa - 1)),
            (CRat::imag(-1, 1), basis.big_sigma2(aa - 1)),
        ],
        (aa, bb) if aa == bb => vec![(CRat::real(1, 1), basis.vert_diag(aa - 1))],
        (aa, bb) if aa < bb => vec![
            (CRat::real(1, 1), basis.vert_off(aa - 1, bb - 1, false)),
            (CRat::imag(1, 1), basis.vert_off(aa - 1, bb - 1, true)),
        ],
        (aa, bb) => vec![
            (CRat::real(1, 1), basis.vert_off(bb - 1, aa - 1, false)),
            (CRat::imag(-1, 1), basis.vert_off(bb - 1, aa - 1, true)),
        ],
    }
}

/// `dL_A^B = i Σ_C L_A^C ∧ L_C^B` as a complex 2-form over real generator
/// pairs (i<j), accumulated into `acc` with prefactor `pre`.
fn accumulate_dl(
    basis: Basis,
    a: usize,
    b: usize,
    pre: &CRat,
    acc: &mut BTreeMap<(usize, usize), CRat>,
) {
    let m = basis.n + 2;
    for c in 0..m {
        let lac = l_form(basis, a, c);
        let lcb = l_form(basis, c, b);
        for (q1, g1) in &lac {
            for (q2, g2) in &lcb {
                if g1 == g2 {
                    continue;
                }
                let coeff = pre.scale(&q1.mul(q2).times_i());
                if coeff.is_zero() {
                    continue;
                }
                let (i, j, flip) = if g1 < g2 { (*g1, *g2, false) } else { (*g2, *g1, true) };
                let coeff = if flip {
                    CRat::new(-coeff.re, -coeff.im)
                } else {
                    coeff
                };
                acc.entry((i, j)).or_insert_with(CRat::zero).add_assign(&coeff);
            }
        }
    }
}

/// Build the exact structure constants for su(n+2) in the adapted basis.
pub fn build_algebra(n: usize) -> Result<StructureAlgebra, Error> {
    if n < 1 {
        return Err(Error::InvalidArg(format!("n must be >= 1, got {}", n)));
    }
    let basis = Basis::new(n);
    let mut d_table: Vec<Vec<(usize, usize, BigRational)>> = vec![Vec::new(); basis.dim()];

    // d of each real generator as complex combinations of dL_A^B
    for idx in 1..basis.dim() {
        let mut acc: BTreeMap<(usize, usize), CRat> = BTreeMap::new();
        match basis.kind(idx) {
            GenKind::Radial => unreachable!(),
            GenKind::Lambda => {
                accumulate_dl(basis, 0, 0, &CRat::real(1, 1), &mut acc);
                accumulate_dl(basis, 1, 1, &CRat::real(-1, 1), &mut acc);
            }
            GenKind::Nu1 => {
                accumulate_dl(basis, 0, 1, &CRat::real(1, 2), &mut acc);
                accumulate_dl(basis, 1, 0, &CRat::real(1, 2), &mut acc);
            }
            GenKind::Nu2 => {
                // Im z = (z − conj z) / (2i)
                accumulate_dl(basis, 0, 1, &CRat::imag(-1, 2), &mut acc);
                accumulate_dl(basis, 1, 0, &CRat::imag(1, 2), &mut acc);
            }
            GenKind::Sigma1(bb) => {
                accumulate_dl(basis, 0, bb + 1, &CRat::real(1, 2), &mut acc);
                accumulate_dl(basis, bb + 1, 0, &CRat::real(1, 2), &mut acc);
            }
            GenKind::Sigma2(bb) => {
                accumulate_dl(basis, 0, bb + 1, &CRat::imag(-1, 2), &mut acc);
                accumulate_dl(basis, bb + 1, 0, &CRat::imag(1, 2), &mut acc);
            }
            GenKind::BigSigma1(bb) => {
                accumulate_dl(basis, 1, bb + 1, &CRat::real(1, 2), &mut acc);
                accumulate_dl(basis, bb + 1, 1, &CRat::real(1, 2), &mut acc);
            }
            GenKind::BigSigma2(bb) => {
                accumulate_dl(basis, 1, bb + 1, &CRat::imag(-1, 2), &mut acc);
                accumulate_dl(basis, bb + 1, 1, &CRat::imag(1, 2), &mut acc);
            }
            GenKind::Vertical(a) => {
                if a < n {
                    // D_β = L_β^β
                    accumulate_dl(basis, a + 2, a + 2, &CRat::real(1, 1), &mut acc);
                } else {
                    // off-diagonal pair p: recover (β, γ, re/im)
                    let off = a - n;
                    let (p, im) = (off / 2, off % 2 == 1);
                    let (mut beta, mut rem) = (1usize, p);
                    while rem >= n - beta {
                        rem -= n - beta;
                        beta += 1;
                    }
                    let gamma = beta + 1 + rem;
                    if !im {
                        accumulate_dl(basis, beta + 1, gamma + 1, &CRat::real(1, 2), &mut acc);
                        accumulate_dl(basis, gamma + 1, beta + 1, &CRat::real(1, 2), &mut acc);
                    } else {
                        accumulate_dl(basis, beta + 1, gamma + 1, &CRat::imag(-1, 2), &mut acc);
                        accumulate_dl(basis, gamma + 1, beta + 1, &CRat::imag(1, 2), &mut acc);
                    }
                }
            }
        }
        let mut terms = Vec::new();
        for ((i, j), q) in acc {
            if !q.im.is_zero() {
                return Err(Error::Internal(format!(
                    "nonreal structure constant for generator {}: im {} at ({}, {})",
                    basis.name(idx),
                    q.im,
                    i,
                    j
                )));
            }
            if !q.re.is_zero() {
                terms.push((i, j, q.re));
            }
        }
        d_table[idx] = terms;
    }

    let alg = StructureAlgebra { basis, d_table };
    if !alg.reductive_split_ok() {
        return Err(Error::Internal("reductive split violated".into()));
    }
    Ok(alg)
}

// ---------------------------------------------------------------------------
// n=1 basis dictionary
// ---------------------------------------------------------------------------

/// Direction of the n=1 dictionary between the orbit coframe and the
/// 3-Sasakian coframe η₁..η₇ (λ = 2η₁, ν₁ = η₃, ν₂ = η₂, Σ_i = √2 η_{3+i},
/// σ_i = √2 η_{5+i}).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TranslateDirection {
    CglpToEta,
    EtaToCglp,
}

/// In the η basis the radial generator keeps index 0 and η_i sits at index i.
///
/// Returns for a source index the (target index, power of √2 multiplying the
/// coefficient). Vertical generators are not covered by the dictionary.
fn dictionary(src: usize, dir: TranslateDirection) -> Option<(usize, i64)> {
    // (cglp index, eta index, √2-power picked up going cglp → eta)
    const MAP: [(usize, usize, i64); 8] = [
        (RADIAL, 0, 0),
        (LAMBDA, 1, 2), // λ = 2 η₁
        (NU1, 3, 0),    // ν₁ = η₃
        (NU2, 2, 0),    // ν₂ = η₂
        (4, 6, 1),      // σ₁ = √2 η₆
        (5, 7, 1),      // σ₂ = √2 η₇
        (6, 4, 1),      // Σ₁ = √2 η₄
        (7, 5, 1),      // Σ₂ = √2 η₅
    ];
    match dir {
        TranslateDirection::CglpToEta => MAP
            .iter()
            .find(|&&(c, _, _)| c == src)
            .map(|&(_, e, k)| (e, k)),
        TranslateDirection::EtaToCglp => MAP
            .iter()
            .find(|&&(_, e, _)| e == src)
            .map(|&(c, _, k)| (c, -k)),
    }
}

/// Rescale and re-index a form through the n=1 dictionary.
///
/// Exact coefficients reject terms that pick up an odd power of √2.
pub fn translate_basis<S: crate::exterior::Scalar>(
    form: &crate::exterior::FormExpr<S>,
    dir: TranslateDirection,
    n: usize,
) -> Result<crate::exterior::FormExpr<S>, Error> {
    if n != 1 {
        return Err(Error::InvalidArg(
            "the basis dictionary is stated only for n = 1".into(),
        ));
    }
    let mut out = crate::exterior::FormExpr::zero(form.degree);
    for (key, coeff) in &form.terms {
        let mut idx = Vec::with_capacity(key.len());
        let mut pow = 0i64;
        for &g in key {
            let (t, k) = dictionary(g, dir).ok_or_else(|| {
                Error::InvalidArg(format!(
                    "generator index {} is outside the n=1 dictionary",
                    g
                ))
            })?;
            idx.push(t);
            pow += k;
        }
        let scale = S::sqrt2_pow(pow).ok_or_else(|| {
            Error::InvalidArg(format!(
                "term picks up (√2)^{}, not representable in exact mode",
                pow
            ))
        })?;
        out.add_term(idx, coeff.mul(&scale));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::scalar::rat;

    #[test]
    fn generator_counts() {
        for n in 1..=4 {
            let b = Basis::new(n);
            assert_eq!(b.horizontal_count(), 4 * n + 3);
            assert_eq!(b.vertical_count(), n * n);
            assert_eq!(b.dim(), 4 * n + 4 + n * n);
            // every index classifies uniquely
            for i in 0..b.dim() {
                let _ = b.kind(i);
            }
        }
    }

    #[test]
    fn rejects_n_zero() {
        assert!(build_algebra(0).is_err());
    }

    #[test]
    fn d_lambda_matches_hand_expansion() {
        // dλ = 4 ν₁∧ν₂ + 2 Σ_β σ₁∧σ₂ − 2 Σ_β Σ₁∧Σ₂
        for n in 1..=3 {
            let alg = build_algebra(n).unwrap();
            let b = alg.basis;
            let mut expect = vec![(NU1, NU2, rat(4, 1))];
            for beta in 1..=n {
                expect.push((b.sigma1(beta), b.sigma2(beta), rat(2, 1)));
                expect.push((b.big_sigma1(beta), b.big_sigma2(beta), rat(-2, 1)));
            }
            expect.sort_by_key(|&(i, j, _)| (i, j));
            let mut got = alg.d_table[LAMBDA].clone();
            got.sort_by_key(|&(i, j, _)| (i, j));
            assert_eq!(got, expect, "n={}", n);
        }
    }

    #[test]
    fn jacobi_holds_exactly() {
        for n in 1..=2 {
            let alg = build_algebra(n).unwrap();
            assert!(alg.jacobi_residual().is_zero(), "n={}", n);
        }
    }

    #[test]
    fn jacobi_holds_n3_n4() {
        for n in 3..=4 {
            let alg = build_algebra(n).unwrap();
            assert!(alg.jacobi_residual().is_zero(), "n={}", n);
        }
    }

    #[test]
    fn antisymmetry_of_constants() {
        let alg = build_algebra(2).unwrap();
        let d = alg.basis.dim();
        for k in 0..d {
            for i in 0..d {
                for j in 0..d {
                    assert_eq!(alg.c(k, i, j), -alg.c(k, j, i));
                }
            }
        }
    }

    #[test]
    fn reductive_split() {
        for n in 1..=3 {
            assert!(build_algebra(n).unwrap().reductive_split_ok());
        }
    }

    #[test]
    fn dictionary_lambda_and_sigma() {
        use crate::exterior::{ExactRat, FormExpr, Jet, Scalar};
        // λ → 2 η₁
        let lam = FormExpr::<ExactRat>::generator(LAMBDA);
        let t = translate_basis(&lam, TranslateDirection::CglpToEta, 1).unwrap();
        let mut expect = FormExpr::zero(1);
        expect.add_term(vec![1], ExactRat::from_rational(&rat(2, 1)));
        assert_eq!(t, expect);
        // η₄ → Σ₁/√2 (numeric backend; odd √2 power)
        let eta4 = FormExpr::<Jet>::generator(4);
        let back = translate_basis(&eta4, TranslateDirection::EtaToCglp, 1).unwrap();
        let b = Basis::new(1);
        let (k, v) = back.terms.iter().next().unwrap();
        assert_eq!(k, &vec![b.big_sigma1(1)]);
        assert!((v.v - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        // exact backend rejects the odd power
        assert!(
            translate_basis(&FormExpr::<ExactRat>::generator(4), TranslateDirection::EtaToCglp, 1)
                .is_err()
        );
    }

    #[test]
    fn dictionary_round_trip() {
        use crate::exterior::{FormExpr, Jet};
        // random-ish 2-form over the seven η generators
        let mut f = FormExpr::<Jet>::zero(2);
        let mut x = 0.37;
        for i in 1..=7usize {
            for j in (i + 1)..=7 {
                x = (x * 97.0 + 13.0) % 5.0 - 2.5;
                f.add_term(vec![i, j], Jet::constant(x));
            }
        }
        let g = translate_basis(&f, TranslateDirection::EtaToCglp, 1).unwrap();
        let h = translate_basis(&g, TranslateDirection::CglpToEta, 1).unwrap();
        for (k, v) in &f.terms {
            let w = h.terms.get(k).expect("term survives round trip");
            assert!((v.v - w.v).abs() < 1e-14);
        }
        assert_eq!(f.terms.len(), h.terms.len());
        // rejects n != 1
        assert!(translate_basis(&f, TranslateDirection::CglpToEta, 2).is_err());
    }

    #[test]
    fn dump_is_deterministic() {
        let a = build_algebra(1).unwrap().dump();
        let b = build_algebra(1).unwrap().dump();
        assert_eq!(a, b);
        assert!(a.contains("d lambda ="));
    }
}
