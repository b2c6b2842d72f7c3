//! Pointwise residuals of the nonlinear field equations.
//!
//! Two equivalent forms are provided. The G-form
//!
//! ```text
//! R^i = ∂_t H^{it} − ∂_k H^{ik} + 2 (H^{jt} G_tj^i − H^{jk} G_kj^i)
//! ```
//!
//! is polynomial in (α, β) and is the one to use. The P-form contains 1/α
//! and satisfies `R^k = Σ_j E_j (P⁻¹)^{jk}` wherever α ≠ 0.
//!
//! A [`RotorJet`] carries everything a pointwise evaluation needs (value,
//! first and second derivatives), so it doubles as the field-point type.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{RotorField, RotorJet, TIME};
use crate::grid::RotorGrid;
use crate::kinematics::{nye_fd, nye_slot, nye_slot_derivative, Moduli};
use crate::linalg::{delta, eps, Mat3, Vec3};
use crate::scalar::Scalar;

pub type FieldPoint<T> = RotorJet<T>;

/// |α| below this makes P and Q singular.
pub const SINGULAR_GAUGE_THRESHOLD: f64 = 1e-8;

fn check_gauge<T: Scalar>(alpha: T) -> Result<()> {
    if alpha.abs() < T::lit(SINGULAR_GAUGE_THRESHOLD) {
        Err(Error::SingularGauge {
            alpha: alpha.to_f64().unwrap_or(f64::NAN),
            threshold: SINGULAR_GAUGE_THRESHOLD,
        })
    } else {
        Ok(())
    }
}

/// P_ij = ε_ijl β_l + (δ_ij (1 − β²) + β_i β_j)/α.
pub fn p_matrix<T: Scalar>(r: &crate::so3::Rotor<T>) -> Result<Mat3<T>> {
    check_gauge(r.alpha)?;
    let b = r.beta;
    let b2 = b.norm_sq();
    Ok(Mat3::from_fn(|i, j| {
        let e = (0..3).fold(T::zero(), |s, l| s + eps::<T>(i, j, l) * b[l]);
        e + (delta::<T>(i, j) * (T::one() - b2) + b[i] * b[j]) / r.alpha
    }))
}

/// (P⁻¹)^{jk} = α δ_jk − ε_jkn β_n.
pub fn p_inverse<T: Scalar>(r: &crate::so3::Rotor<T>) -> Mat3<T> {
    Mat3::identity().scale(r.alpha) + Mat3::hat(&r.beta)
}

/// `G_μj^i = Q_μjl (P⁻¹)^{li}` for one derivative slot, stored as entry
/// `(j, i)`. Expanded:
/// ε_jil (α ∂_μ β_l − β_l ∂_μ α) + β_i ∂_μ β_j − β_j ∂_μ β_i.
pub fn g_tensor<T: Scalar>(fp: &FieldPoint<T>, mu: usize) -> Mat3<T> {
    let (a, b) = (fp.rotor.alpha, fp.rotor.beta);
    let db = fp.d_beta[mu];
    let dab = Vec3::from_fn(|l| a * db[l] - fp.d_alpha[mu] * b[l]);
    Mat3::from_fn(|j, i| {
        let e = (0..3).fold(T::zero(), |s, l| s + eps::<T>(j, i, l) * dab[l]);
        e + b[i] * db[j] - b[j] * db[i]
    })
}

/// `G_kj^i` for k = 0..2.
pub fn g_tensor_space<T: Scalar>(fp: &FieldPoint<T>) -> [Mat3<T>; 3] {
    std::array::from_fn(|k| g_tensor(fp, k))
}

pub fn g_tensor_time<T: Scalar>(fp: &FieldPoint<T>) -> Mat3<T> {
    g_tensor(fp, TIME)
}

/// H^{it} = 2 A_it and H^{ik} = 2λ1 tr(A) δ_ik + λ2 (A_ik − A_ki).
pub fn h_tensors<T: Scalar>(a: &Mat3<T>, a_t: &Vec3<T>, m: &Moduli<T>) -> (Vec3<T>, Mat3<T>) {
    let h_t = a_t.scale(T::two());
    let tr = a.trace();
    let h_s = Mat3::from_fn(|i, k| {
        T::two() * m.lambda1 * tr * delta::<T>(i, k) + m.lambda2 * (a[(i, k)] - a[(k, i)])
    });
    (h_t, h_s)
}

/// Everything both residual forms share: H and the divergence term.
struct Pieces<T> {
    h_t: Vec3<T>,
    h_s: Mat3<T>,
    /// ∂_t H^{it} − ∂_k H^{ik}
    div: Vec3<T>,
}

fn pieces<T: Scalar>(fp: &FieldPoint<T>, m: &Moduli<T>) -> Pieces<T> {
    let a = Mat3::from_fn(|l, k| nye_slot(fp, k)[l]);
    let a_t = nye_slot(fp, TIME);
    let (h_t, h_s) = h_tensors(&a, &a_t, m);
    // da[μ] column ν = ∂_μ A_{·ν}
    let da: [[Vec3<T>; 4]; 4] = std::array::from_fn(|mu| std::array::from_fn(|nu| nye_slot_derivative(fp, mu, nu)));
    let grad_tr = Vec3::from_fn(|i| (0..3).fold(T::zero(), |s, l| s + da[i][l][l]));
    let div = Vec3::from_fn(|i| {
        let skew = (0..3).fold(T::zero(), |s, k| s + da[k][k][i] - da[k][i][k]);
        let dh_s = T::two() * m.lambda1 * grad_tr[i] + m.lambda2 * skew;
        T::two() * da[TIME][TIME][i] - dh_s
    });
    Pieces { h_t, h_s, div }
}

fn coupling_g<T: Scalar>(h_t: &Vec3<T>, h_s: &Mat3<T>, g_t: &Mat3<T>, g_s: &[Mat3<T>; 3]) -> Vec3<T> {
    Vec3::from_fn(|i| {
        let mut s = T::zero();
        for j in 0..3 {
            s = s + h_t[j] * g_t[(j, i)];
            for k in 0..3 {
                s = s - h_s[(j, k)] * g_s[k][(j, i)];
            }
        }
        T::two() * s
    })
}

/// G-form residual at a field point.
pub fn residual_eqs2_jet<T: Scalar>(fp: &FieldPoint<T>, m: &Moduli<T>) -> Vec3<T> {
    let p = pieces(fp, m);
    p.div + coupling_g(&p.h_t, &p.h_s, &g_tensor_time(fp), &g_tensor_space(fp))
}

pub fn residual_eqs2<T: Scalar, F: RotorField<T> + ?Sized>(field: &F, x: &Vec3<T>, t: T, m: &Moduli<T>) -> Vec3<T> {
    residual_eqs2_jet(&field.jet(x, t), m)
}

/// `Q_μij` for one slot as a matrix with entry `(i, j)`:
/// Σ_l [ε_ijl − (δ_ij β_l − δ_il β_j)/α] ∂_μ β_l.
pub fn q_tensor<T: Scalar>(fp: &FieldPoint<T>, mu: usize) -> Result<Mat3<T>> {
    let a = fp.rotor.alpha;
    check_gauge(a)?;
    let b = fp.rotor.beta;
    let db = fp.d_beta[mu];
    Ok(Mat3::from_fn(|i, j| {
        (0..3).fold(T::zero(), |s, l| {
            let coef = eps::<T>(i, j, l) - (delta::<T>(i, j) * b[l] - delta::<T>(i, l) * b[j]) / a;
            s + coef * db[l]
        })
    }))
}

/// P-form residual E_j = (∂_t H^{it} − ∂_k H^{ik}) P_ij + 2 (H^{it} Q_tij − H^{ik} Q_kij).
pub fn residual_eqs_jet<T: Scalar>(fp: &FieldPoint<T>, m: &Moduli<T>) -> Result<Vec3<T>> {
    let p = p_matrix(&fp.rotor)?;
    let q_t = q_tensor(fp, TIME)?;
    let q_s = [q_tensor(fp, 0)?, q_tensor(fp, 1)?, q_tensor(fp, 2)?];
    let pc = pieces(fp, m);
    Ok(Vec3::from_fn(|j| {
        let mut s = T::zero();
        for i in 0..3 {
            s = s + pc.div[i] * p[(i, j)] + T::two() * pc.h_t[i] * q_t[(i, j)];
            for (k, q) in q_s.iter().enumerate() {
                s = s - T::two() * pc.h_s[(i, k)] * q[(i, j)];
            }
        }
        s
    }))
}

pub fn residual_eqs<T: Scalar, F: RotorField<T> + ?Sized>(field: &F, x: &Vec3<T>, t: T, m: &Moduli<T>) -> Result<Vec3<T>> {
    residual_eqs_jet(&field.jet(x, t), m)
}

/// Static G-form residual at an interior grid cell from nested central
/// differences: H from finite-difference Nye tensors at the six neighbours,
/// then central differences of H. Time derivatives are taken as zero, so a
/// grid stands for a static field. Needs two cells of margin.
pub fn residual_eqs2_grid<T: Scalar>(grid: &RotorGrid<T>, idx: [usize; 3], m: &Moduli<T>) -> Result<Vec3<T>> {
    grid.check_interior(idx, 2)?;
    let inv2h = T::half() / grid.spacing();
    let zero_t = Vec3::zeros();
    let mut div_s = Vec3::zeros();
    for k in 0..3 {
        let (_, hp) = h_tensors(&nye_fd(grid, RotorGrid::<T>::shifted(idx, k, 1))?, &zero_t, m);
        let (_, hm) = h_tensors(&nye_fd(grid, RotorGrid::<T>::shifted(idx, k, -1))?, &zero_t, m);
        div_s += Vec3::from_fn(|i| (hp[(i, k)] - hm[(i, k)]) * inv2h);
    }
    let (_, h_s) = h_tensors(&nye_fd(grid, idx)?, &zero_t, m);

    let r = *grid.get(idx);
    let mut fp = RotorJet::constant(r);
    for k in 0..3 {
        let up = grid.get(RotorGrid::<T>::shifted(idx, k, 1));
        let dn = grid.get(RotorGrid::<T>::shifted(idx, k, -1));
        fp.d_alpha[k] = (up.alpha - dn.alpha) * inv2h;
        fp.d_beta[k] = (up.beta - dn.beta).scale(inv2h);
    }
    let coupling = coupling_g(&zero_t, &h_s, &Mat3::zeros(), &g_tensor_space(&fp));
    Ok(-div_s + coupling)
}

/// Max-norm of [`residual_eqs2_grid`] over the interior cells whose position
/// satisfies `select`.
pub fn max_residual_eqs2_grid<T, S>(grid: &RotorGrid<T>, m: &Moduli<T>, select: S) -> Result<T>
where
    T: Scalar,
    S: Fn(&Vec3<T>) -> bool + Sync,
{
    let cells = grid.interior_indices(2);
    let norms: Vec<T> = cells
        .par_iter()
        .filter_map(|&lin| {
            let idx = grid.multi_index(lin);
            select(&grid.position(idx)).then(|| residual_eqs2_grid(grid, idx, m).map(|r| r.max_abs()))
        })
        .collect::<Result<_>>()?;
    Ok(norms.into_iter().fold(T::zero(), T::max))
}
