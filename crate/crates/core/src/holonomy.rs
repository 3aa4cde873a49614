//! Kähler form, compatible complex structure, and holonomy-algebra
//! dimension estimates from curvature spans.

use crate::curvature::{riemann, Frame};
use crate::error::Error;
use crate::exterior::{ExactRat, FormExpr, Scalar};
use crate::liealg::{StructureAlgebra, LAMBDA, NU1, NU2, RADIAL};
use crate::metrics::MetricAnsatz;
use nalgebra::{DMatrix, DVector};
use num::rational::BigRational;

/// The 2-form Ω = r dr∧λ + 2r² ν₁∧ν₂ − (r²+α²) Σ_β Σ_{1β}∧Σ_{2β}
/// + (r²−α²) Σ_β σ_{1β}∧σ_{2β}, exact in r for rational α.
pub fn build_omega(n: usize, alpha: &BigRational) -> Result<FormExpr<ExactRat>, Error> {
    if n < 1 {
        return Err(Error::InvalidArg("n must be >= 1".into()));
    }
    let basis = crate::liealg::Basis::new(n);
    let r = <ExactRat as Scalar>::var_r();
    let r2 = r.mul(&r);
    let a2 = ExactRat::from_rational(&(alpha * alpha));
    let mut omega = FormExpr::zero(2);
    omega.add_term(vec![RADIAL, LAMBDA], r.clone());
    omega.add_term(vec![NU1, NU2], <ExactRat as Scalar>::from_int(2).mul(&r2));
    for beta in 1..=n {
        omega.add_term(
            vec![basis.big_sigma1(beta), basis.big_sigma2(beta)],
            r2.add(&a2).neg(),
        );
        omega.add_term(vec![basis.sigma1(beta), basis.sigma2(beta)], r2.sub(&a2));
    }
    Ok(omega)
}

/// dΩ after canonicalization; closed iff the residual is the zero form.
pub fn check_closed(
    omega: &FormExpr<ExactRat>,
    alg: &StructureAlgebra,
) -> (bool, FormExpr<ExactRat>) {
    let residual = omega.d(alg);
    (residual.is_zero(), residual)
}

/// Coefficient of the top frame form in Ω^{2(n+1)} (nondegeneracy witness).
pub fn omega_top_power_coefficient(
    n: usize,
    alpha: &BigRational,
) -> Result<ExactRat, Error> {
    let basis = crate::liealg::Basis::new(n);
    let omega = build_omega(n, alpha)?;
    let top = omega.top_power(2 * (n + 1))?;
    let key: Vec<usize> = (0..basis.frame_dim()).collect();
    let mut out = <ExactRat as Scalar>::zero();
    for (k, v) in &top.terms {
        if k == &key {
            out = v.clone();
        } else {
            return Err(Error::Internal(
                "top power contains a non-frame term".into(),
            ));
        }
    }
    Ok(out)
}

/// Ω in the orthonormal frame: matrix Ω_{ab} = Ω(θ_a, θ_b) at r.
pub fn omega_frame_matrix(
    metric: &MetricAnsatz,
    alg: &StructureAlgebra,
    r: f64,
) -> Result<DMatrix<f64>, Error> {
    let basis = alg.basis;
    let n = basis.n;
    let frame = Frame::from_metric(metric, alg, r)?;
    let m = basis.frame_dim();
    let a2 = metric.alpha() * metric.alpha();
    let r2 = r * r;
    let mut om = DMatrix::zeros(m, m);
    let mut put = |i: usize, j: usize, raw: f64| {
        let v = raw / (frame.f[i].v * frame.f[j].v);
        om[(i, j)] = v;
        om[(j, i)] = -v;
    };
    put(RADIAL, LAMBDA, r);
    put(NU1, NU2, 2.0 * r2);
    for beta in 1..=n {
        put(basis.big_sigma1(beta), basis.big_sigma2(beta), -(r2 + a2));
        put(basis.sigma1(beta), basis.sigma2(beta), r2 - a2);
    }
    Ok(om)
}

/// The compatible almost complex structure J = s·Ω_frame with the single
/// global scale s fixed by a least-squares fit of J² ≈ −Id.
pub fn complex_structure(
    metric: &MetricAnsatz,
    alg: &StructureAlgebra,
    r: f64,
    tol: f64,
) -> Result<DMatrix<f64>, Error> {
    let om = omega_frame_matrix(metric, alg, r)?;
    let m = om.nrows();
    let sq = &om * &om;
    // minimize ||s² sq + I||_F → s² = −tr(sq)/||sq||²
    let denom: f64 = sq.iter().map(|x| x * x).sum();
    let s2 = -sq.trace() / denom;
    if !(s2 > 0.0) {
        return Err(Error::Convention(format!(
            "Ω² not negative-proportional to identity (fit s² = {})",
            s2
        )));
    }
    let j = om * s2.sqrt();
    let jj = &j * &j;
    let mut worst = (0usize, 0usize, 0.0f64);
    for a in 0..m {
        for b in 0..m {
            let target = if a == b { -1.0 } else { 0.0 };
            let e = (jj[(a, b)] - target).abs();
            if e > worst.2 {
                worst = (a, b, e);
            }
        }
    }
    if worst.2 > tol {
        return Err(Error::Convention(format!(
            "J² + Id has entry {:.3e} at plane ({}, {})",
            worst.2, worst.0, worst.1
        )));
    }
    Ok(j)
}

/// Result of the curvature-span holonomy estimate.
#[derive(Clone, Debug)]
pub struct HolonomyEstimate {
    pub dim: usize,
    pub target_su: usize,
    pub target_sp: usize,
    pub so_dim: usize,
    /// Ratio of the last kept to the first dropped singular value.
    pub spectral_gap: f64,
    /// Fraction of curvature generators commuting with J to 1e−9.
    pub j_commute_fraction: f64,
    /// max |tr(J ∘ R(e_a, e_b))| over generators (Ricci-form components).
    pub max_ricci_form_trace: f64,
    pub rank_tol: f64,
    pub stabilized: bool,
    pub closure_rounds: usize,
}

fn vectorize_so(mat: &DMatrix<f64>) -> DVector<f64> {
    let m = mat.nrows();
    let mut v = DVector::zeros(m * (m - 1) / 2);
    let mut k = 0;
    for i in 0..m {
        for j in (i + 1)..m {
            v[k] = mat[(i, j)];
            k += 1;
        }
    }
    v
}

fn rank_and_gap(vectors: &[DVector<f64>], rank_tol: f64) -> (usize, f64, Vec<DMatrix<f64>>, usize) {
    // returns (rank, gap, orthonormal basis as matrices, so_dim)
    let dim = vectors[0].len();
    let mut a = DMatrix::zeros(dim, vectors.len());
    for (c, v) in vectors.iter().enumerate() {
        a.set_column(c, v);
    }
    let svd = a.clone().svd(true, false);
    let sv = &svd.singular_values;
    let smax = sv.iter().cloned().fold(0.0f64, f64::max);
    let mut rank = 0;
    while rank < sv.len() && sv[rank] > rank_tol * smax {
        rank += 1;
    }
    let gap = if rank < sv.len() && sv[rank] > 0.0 {
        sv[rank - 1] / sv[rank]
    } else {
        f64::INFINITY
    };
    // orthonormal basis of the span from the left singular vectors
    let u = svd.u.expect("svd with u");
    let m = ((1.0 + (1.0 + 8.0 * dim as f64).sqrt()) / 2.0).round() as usize;
    let mut basis = Vec::with_capacity(rank);
    for c in 0..rank {
        let col = u.column(c);
        let mut mat = DMatrix::zeros(m, m);
        let mut k = 0;
        for i in 0..m {
            for j in (i + 1)..m {
                mat[(i, j)] = col[k];
                mat[(j, i)] = -col[k];
                k += 1;
            }
        }
        basis.push(mat);
    }
    (rank, gap, basis, dim)
}

/// Estimate the holonomy algebra dimension from curvature endomorphisms at
/// the given radii, closed under matrix commutators.
pub fn holonomy_dimension(
    metric: &MetricAnsatz,
    alg: &StructureAlgebra,
    points: &[f64],
    rank_tol: f64,
) -> Result<HolonomyEstimate, Error> {
    if points.is_empty() {
        return Err(Error::InvalidArg("need at least one sample point".into()));
    }
    let n = alg.basis.n;
    let m = alg.basis.frame_dim();
    let target_su = (2 * n + 2) * (2 * n + 2) - 1;
    let target_sp = (n + 1) * (2 * n + 3);

    let mut generators: Vec<DMatrix<f64>> = Vec::new();
    let mut j_commute = 0usize;
    let mut max_trace = 0.0f64;
    for &r in points {
        let frame = Frame::from_metric(metric, alg, r)?;
        let curv = riemann(&frame, alg)?;
        let j = complex_structure(metric, alg, r, 1e-8)?;
        for a in 0..m {
            for b in (a + 1)..m {
                let op = curv.curvature_operator(a, b);
                let mat = DMatrix::from_fn(m, m, |c, d| op[c * m + d]);
                let norm = mat.norm();
                if norm < 1e-14 {
                    continue;
                }
                let comm = (&j * &mat - &mat * &j).norm() / norm;
                if comm < 1e-9 {
                    j_commute += 1;
                }
                let tr = (&j * &mat).trace().abs() / norm;
                max_trace = max_trace.max(tr);
                generators.push(mat / norm);
            }
        }
    }
    if generators.is_empty() {
        return Err(Error::Inconclusive("all curvature operators vanish".into()));
    }
    let total = generators.len();
    let j_fraction = j_commute as f64 / total as f64;

    let mut collected: Vec<DVector<f64>> = generators.iter().map(vectorize_so).collect();
    let (mut rank, mut gap, mut basis, so_vec_dim) = rank_and_gap(&collected, rank_tol);
    let mut stabilized = false;
    let mut rounds = 0;
    for _ in 0..10 {
        rounds += 1;
        let before = rank;
        let mut new_vecs = Vec::new();
        for i in 0..basis.len() {
            for j in (i + 1)..basis.len() {
                let c = &basis[i] * &basis[j] - &basis[j] * &basis[i];
                // do NOT normalize: a bracket that vanishes in exact
                // arithmetic would otherwise blow its noise up to unit size
                if c.norm() > 1e-10 {
                    new_vecs.push(vectorize_so(&c));
                }
            }
        }
        collected.extend(new_vecs);
        let (r2, g2, b2, _) = rank_and_gap(&collected, rank_tol);
        rank = r2;
        gap = g2;
        basis = b2;
        if rank == before {
            stabilized = true;
            break;
        }
    }
    let so_dim = so_vec_dim; // dim so(m) as a vector space of antisym matrices
    Ok(HolonomyEstimate {
        dim: rank,
        target_su,
        target_sp,
        so_dim,
        spectral_gap: gap,
        j_commute_fraction: j_fraction,
        max_ricci_form_trace: max_trace,
        rank_tol,
        stabilized,
        closure_rounds: rounds,
    })
}
