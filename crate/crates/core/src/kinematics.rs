//! Nye tensor, torsion matrix, irreducible decomposition and energy densities.
//!
//! The Nye tensor of an orthogonal matrix field `u` is
//! `A_lk = ½ ε_lij (u ∂_k uᵀ)_ij`, i.e. column `k` of `A` is the axial vector
//! of the skew matrix `u ∂_k uᵀ` (sign as in [`Mat3::axial`]). In rotor
//! variables this is
//! `A_lk = 2 (ε_lij β_i ∂_k β_j + β_l ∂_k α − α ∂_k β_l)`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{MatrixJet, RotorField, RotorJet, TIME};
use crate::grid::RotorGrid;
use crate::linalg::{eps, Mat3, Vec3};
use crate::scalar::Scalar;

/// Elastic moduli and the two couplings of the reduced Lagrangian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moduli<T> {
    pub lambda1: T,
    pub lambda2: T,
    /// `(c1, c2, c3)` when the moduli were built from them.
    pub elastic: Option<[T; 3]>,
}

impl<T: Scalar> Moduli<T> {
    /// λ1 = (4/3)(c3 + c1/2), λ2 = c1 + c2.
    pub fn from_elastic(c1: T, c2: T, c3: T) -> Result<Self> {
        for (name, c) in [("c1", c1), ("c2", c2), ("c3", c3)] {
            if !(c.is_finite() && c >= T::zero()) {
                return Err(Error::Config(format!("{name} must be finite and >= 0, got {c}")));
            }
        }
        Ok(Moduli {
            lambda1: T::lit(4.0 / 3.0) * (c3 + c1 * T::half()),
            lambda2: c1 + c2,
            elastic: Some([c1, c2, c3]),
        })
    }

    pub fn from_couplings(lambda1: T, lambda2: T) -> Result<Self> {
        for (name, l) in [("lambda1", lambda1), ("lambda2", lambda2)] {
            if !(l.is_finite() && l >= T::zero()) {
                return Err(Error::Config(format!("{name} must be finite and >= 0, got {l}")));
            }
        }
        Ok(Moduli {
            lambda1,
            lambda2,
            elastic: None,
        })
    }

    /// Solvers dividing by λ1 call this first.
    pub fn require_positive_lambda1(&self) -> Result<()> {
        if self.lambda1 > T::zero() {
            Ok(())
        } else {
            Err(Error::Config(format!("lambda1 must be > 0, got {}", self.lambda1)))
        }
    }

    /// ρ = λ2/λ1.
    pub fn ratio(&self) -> T {
        self.lambda2 / self.lambda1
    }
}

/// Column `ν` of the Nye tensor (ν = 0..2 spatial, [`TIME`] for the velocity).
pub fn nye_slot<T: Scalar>(jet: &RotorJet<T>, nu: usize) -> Vec3<T> {
    let (a, b) = (jet.rotor.alpha, jet.rotor.beta);
    let db = jet.d_beta[nu];
    let da = jet.d_alpha[nu];
    let c = b.cross(&db);
    Vec3::from_fn(|l| T::two() * (c[l] + b[l] * da - a * db[l]))
}

/// ∂_μ of column `ν` of the Nye tensor; needs second derivatives of the jet.
pub fn nye_slot_derivative<T: Scalar>(jet: &RotorJet<T>, mu: usize, nu: usize) -> Vec3<T> {
    let (a, b) = (jet.rotor.alpha, jet.rotor.beta);
    let (db_m, db_n) = (jet.d_beta[mu], jet.d_beta[nu]);
    let ddb = jet.dd_beta[mu][nu];
    let c = db_m.cross(&db_n) + b.cross(&ddb);
    Vec3::from_fn(|l| {
        T::two()
            * (c[l] + db_m[l] * jet.d_alpha[nu] + b[l] * jet.dd_alpha[mu][nu]
                - jet.d_alpha[mu] * db_n[l]
                - a * ddb[l])
    })
}

/// Spatial Nye tensor from a rotor jet; row `l`, column `k`.
pub fn nye_from_jet<T: Scalar>(jet: &RotorJet<T>) -> Mat3<T> {
    let cols = [nye_slot(jet, 0), nye_slot(jet, 1), nye_slot(jet, 2)];
    Mat3::from_fn(|l, k| cols[k][l])
}

pub fn nye_analytic<T: Scalar, F: RotorField<T> + ?Sized>(field: &F, x: &Vec3<T>, t: T) -> Mat3<T> {
    nye_from_jet(&field.jet(x, t))
}

/// `A_lt`, the velocity of the deformation.
pub fn nye_velocity<T: Scalar, F: RotorField<T> + ?Sized>(field: &F, x: &Vec3<T>, t: T) -> Vec3<T> {
    nye_slot(&field.jet(x, t), TIME)
}

/// Axial vector of `u duᵀ` for one derivative direction.
pub fn nye_column_from_matrix<T: Scalar>(u: &Mat3<T>, du: &Mat3<T>) -> Vec3<T> {
    (*u * du.transpose()).axial()
}

pub fn nye_from_matrix_jet<T: Scalar>(mj: &MatrixJet<T>) -> Mat3<T> {
    let cols: [Vec3<T>; 3] = std::array::from_fn(|k| nye_column_from_matrix(&mj.u, &mj.du[k]));
    Mat3::from_fn(|l, k| cols[k][l])
}

pub fn nye_velocity_from_matrix_jet<T: Scalar>(mj: &MatrixJet<T>) -> Vec3<T> {
    nye_column_from_matrix(&mj.u, &mj.du[TIME])
}

/// Nye tensor at an interior grid cell from central differences of the
/// matrix entries of `u`.
pub fn nye_fd<T: Scalar>(grid: &RotorGrid<T>, idx: [usize; 3]) -> Result<Mat3<T>> {
    grid.check_interior(idx, 1)?;
    let u = grid.get(idx).to_matrix();
    let inv2h = T::half() / grid.spacing();
    let cols: [Vec3<T>; 3] = std::array::from_fn(|k| {
        let up = grid.get(RotorGrid::<T>::shifted(idx, k, 1)).to_matrix();
        let dn = grid.get(RotorGrid::<T>::shifted(idx, k, -1)).to_matrix();
        nye_column_from_matrix(&u, &((up - dn) * inv2h))
    });
    Ok(Mat3::from_fn(|l, k| cols[k][l]))
}

/// T = A − tr(A) I.
pub fn torsion_from_nye<T: Scalar>(a: &Mat3<T>) -> Mat3<T> {
    *a - Mat3::identity().scale(a.trace())
}

/// Inverse of [`torsion_from_nye`]: tr T = −2 tr A.
pub fn nye_from_torsion<T: Scalar>(t: &Mat3<T>) -> Mat3<T> {
    *t - Mat3::identity().scale(t.trace() * T::half())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NyeDecomposition<T> {
    /// tr m; the trace part itself is (tr m / 3) I.
    pub trace_part: T,
    pub antisym_part: Mat3<T>,
    pub sym_traceless_part: Mat3<T>,
}

impl<T: Scalar> NyeDecomposition<T> {
    pub fn trace_matrix(&self) -> Mat3<T> {
        Mat3::identity().scale(self.trace_part / T::lit(3.0))
    }

    pub fn recompose(&self) -> Mat3<T> {
        self.trace_matrix() + self.antisym_part + self.sym_traceless_part
    }
}

pub fn decompose<T: Scalar>(m: &Mat3<T>) -> NyeDecomposition<T> {
    let tr = m.trace();
    let sym = m.symmetric_part();
    NyeDecomposition {
        trace_part: tr,
        antisym_part: m.skew_part(),
        sym_traceless_part: sym - Mat3::identity().scale(tr / T::lit(3.0)),
    }
}

/// Densities of the three irreducible torsion squares, each the Frobenius
/// square of the corresponding part of the torsion matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IrreducibleSquares<T> {
    /// symmetric traceless part
    pub tensor_sq: T,
    /// antisymmetric part
    pub trace_sq: T,
    /// trace part, (tr t)²/3
    pub axial_sq: T,
}

impl<T: Scalar> IrreducibleSquares<T> {
    /// c1·tensor + c2·trace + c3·axial.
    pub fn elastic_energy(&self, c: [T; 3]) -> T {
        c[0] * self.tensor_sq + c[1] * self.trace_sq + c[2] * self.axial_sq
    }
}

pub fn quadratic_invariants<T: Scalar>(t: &Mat3<T>) -> IrreducibleSquares<T> {
    let d = decompose(t);
    IrreducibleSquares {
        tensor_sq: d.sym_traceless_part.frobenius_norm_sq(),
        trace_sq: d.antisym_part.frobenius_norm_sq(),
        axial_sq: d.trace_part * d.trace_part / T::lit(3.0),
    }
}

/// λ1 (A^k_k)² + λ2 A_[lk] A^[lk] with A_[lk] = (a_lk − a_kl)/2.
pub fn potential_density<T: Scalar>(a: &Mat3<T>, m: &Moduli<T>) -> T {
    let tr = a.trace();
    m.lambda1 * tr * tr + m.lambda2 * a.skew_part().frobenius_norm_sq()
}

pub fn kinetic_density<T: Scalar>(a_t: &Vec3<T>) -> T {
    a_t.norm_sq()
}

/// L^kin − L^pot.
pub fn lagrangian_density<T: Scalar>(a: &Mat3<T>, a_t: &Vec3<T>, m: &Moduli<T>) -> T {
    kinetic_density(a_t) - potential_density(a, m)
}

/// 4β̇² − 4λ1 (div β)² − 2λ2 |curl β|², with `grad_beta[(l, k)]` = ∂_k β_l.
pub fn linearized_lagrangian<T: Scalar>(beta_dot: &Vec3<T>, grad_beta: &Mat3<T>, m: &Moduli<T>) -> T {
    let div = grad_beta.trace();
    let curl = Vec3::from_fn(|i| {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        grad_beta[(k, j)] - grad_beta[(j, k)]
    });
    let four = T::lit(4.0);
    four * beta_dot.norm_sq() - four * m.lambda1 * div * div - T::two() * m.lambda2 * curl.norm_sq()
}

/// Vector density of the exact-form term, V_γ = −2 ε_γab T_ab, so that
/// pointwise tensor_sq = trace_sq + ½ axial_sq − ∂_γ V_γ.
pub fn exact_form_vector<T: Scalar>(t: &Mat3<T>) -> Vec3<T> {
    Vec3::from_fn(|g| {
        let mut s = T::zero();
        for a in 0..3 {
            for b in 0..3 {
                s = s + eps::<T>(g, a, b) * t[(a, b)];
            }
        }
        -T::two() * s
    })
}

/// |tensor_sq − trace_sq − ½ axial_sq + div V| at one cell at least two cells
/// from the boundary.
pub fn identity_tt_residual_at<T: Scalar>(grid: &RotorGrid<T>, idx: [usize; 3]) -> Result<T> {
    grid.check_interior(idx, 2)?;
    let t = torsion_from_nye(&nye_fd(grid, idx)?);
    let sq = quadratic_invariants(&t);
    let inv2h = T::half() / grid.spacing();
    let mut div = T::zero();
    for k in 0..3 {
        let vp = exact_form_vector(&torsion_from_nye(&nye_fd(grid, RotorGrid::<T>::shifted(idx, k, 1))?));
        let vm = exact_form_vector(&torsion_from_nye(&nye_fd(grid, RotorGrid::<T>::shifted(idx, k, -1))?));
        div = div + (vp[k] - vm[k]) * inv2h;
    }
    Ok((sq.tensor_sq - sq.trace_sq - T::half() * sq.axial_sq + div).abs())
}

/// Max pointwise residual of the torsion-square identity over all cells at
/// least two cells from the boundary. Needs at least 5 cells per axis.
pub fn check_identity_tt<T: Scalar>(grid: &RotorGrid<T>) -> Result<T> {
    let dims = grid.dims();
    if dims.iter().any(|&n| n < 5) {
        return Err(Error::GridTooSmall { dims, min: 5 });
    }
    let cells = grid.interior_indices(2);
    let res: Vec<T> = cells
        .par_iter()
        .map(|&lin| identity_tt_residual_at(grid, grid.multi_index(lin)))
        .collect::<Result<_>>()?;
    Ok(res.into_iter().fold(T::zero(), T::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ConstantField;
    use crate::fields::{BumpField, PlaneWave};
    use crate::so3::Rotor;
    use proptest::prelude::*;

    fn lambdas(l1: f64, l2: f64) -> Moduli<f64> {
        Moduli::from_couplings(l1, l2).unwrap()
    }

    #[test]
    fn couplings_from_elastic_moduli() {
        let m = Moduli::from_elastic(1.0f64, 2.0, 3.0).unwrap();
        assert!((m.lambda1 - 4.0 / 3.0 * 3.5).abs() < 1e-15);
        assert_eq!(m.lambda2, 3.0);
        assert!(Moduli::from_elastic(-1.0, 0.0, 0.0).is_err());
        assert!(lambdas(0.0, 1.0).require_positive_lambda1().is_err());
    }

    #[test]
    fn constant_field_has_no_nye_tensor() {
        let r = Rotor::normalized(0.3, Vec3::new(0.1, -0.5, 0.7)).unwrap();
        let f = ConstantField(r);
        assert_eq!(nye_analytic(&f, &Vec3::new(1.0, 2.0, 3.0), 0.0), Mat3::zeros());
        assert_eq!(nye_velocity(&f, &Vec3::zeros(), 1.0), Vec3::zeros());
    }

    #[test]
    fn analytic_nye_matches_matrix_definition() {
        let f = BumpField::<f64>::random(3, 4, 2.0);
        for p in [[0.2, -0.1, 0.3], [0.7, 0.4, -0.6]] {
            let jet = f.jet(&Vec3(p), 0.0);
            let a = nye_from_jet(&jet);
            let b = nye_from_matrix_jet(&jet.matrix_jet());
            assert!((a - b).max_abs() < 1e-13);
        }
    }

    #[test]
    fn linear_field_linearizes_to_minus_two_grad() {
        // β = εMx: A = −2εM + O(ε²)
        let m = Mat3([[0.3, -0.2, 0.5], [0.1, 0.4, -0.7], [-0.6, 0.2, 0.1]]);
        let x = Vec3::new(0.4, -0.3, 0.2);
        let mut errs = vec![];
        for e in [1e-2, 5e-3] {
            let beta = m.mul_vec(&x).scale(e);
            let d_beta = std::array::from_fn(|k| if k < 3 { m.column(k).scale(e) } else { Vec3::zeros() });
            let jet = RotorJet::from_beta_jet(beta, d_beta, [[Vec3::zeros(); 4]; 4], false);
            errs.push((nye_from_jet(&jet) + m.scale(2.0 * e)).max_abs());
        }
        let ratio = errs[0] / errs[1];
        assert!(ratio > 3.5 && ratio < 4.5, "ratio {ratio}");
    }

    #[test]
    fn rigid_rotation_velocity_matches_time_differences() {
        let f = PlaneWave {
            amplitude: 0.5,
            polarization: Vec3::new(0.6, 0.0, 0.8),
            wave_vector: Vec3::zeros(),
            omega: 1.3,
            phase: 0.2,
        };
        let (x, t, h) = (Vec3::zeros(), 0.4, 1e-5);
        let u = f.rotor(&x, t).to_matrix();
        let du = (f.rotor(&x, t + h).to_matrix() - f.rotor(&x, t - h).to_matrix()) * (0.5 / h);
        let oracle = nye_column_from_matrix(&u, &du);
        assert!((nye_velocity(&f, &x, t) - oracle).max_abs() < 1e-9);
    }

    #[test]
    fn nye_fd_contract() {
        let g = RotorGrid::sample_centered(&ConstantField(Rotor::<f64>::identity()), 3, 0.5, 0.0).unwrap();
        assert_eq!(nye_fd(&g, [1, 1, 1]).unwrap(), Mat3::zeros());
        assert!(matches!(nye_fd(&g, [0, 0, 0]), Err(Error::Range { .. })));
    }

    #[test]
    fn nye_fd_is_second_order() {
        let f = BumpField::<f64>::random(11, 3, 2.0);
        let probe = Vec3::new(0.3, -0.2, 0.1);
        let err = |h: f64| {
            let origin = probe - Vec3::new(h, h, h);
            let g = RotorGrid::sample(&f, [3, 3, 3], h, origin, 0.0).unwrap();
            (nye_fd(&g, [1, 1, 1]).unwrap() - nye_analytic(&f, &probe, 0.0)).max_abs()
        };
        let ratio = err(0.04) / err(0.02);
        assert!(ratio > 3.5, "ratio {ratio}");
    }

    #[test]
    fn torsion_examples() {
        let i = Mat3::<f64>::identity();
        assert_eq!(torsion_from_nye(&i), i.scale(-2.0));
        assert_eq!(torsion_from_nye(&Mat3::<f64>::zeros()), Mat3::zeros());
    }

    #[test]
    fn decomposition_examples() {
        let d = decompose(&Mat3::<f64>::identity());
        assert_eq!(d.trace_part, 3.0);
        assert_eq!(d.antisym_part, Mat3::zeros());
        assert!(d.sym_traceless_part.max_abs() < 1e-15);
        let s = Mat3::hat(&Vec3::new(1.0, -2.0, 0.5));
        let d = decompose(&s);
        assert_eq!(d.antisym_part, s);
        assert_eq!(d.trace_part, 0.0);
        assert_eq!(d.sym_traceless_part, Mat3::zeros());
    }

    #[test]
    fn quadratic_invariant_examples() {
        let z = quadratic_invariants(&Mat3::<f64>::zeros());
        assert_eq!((z.trace_sq, z.axial_sq), (0.0, 0.0));
        // direct index sums for t = I
        let q = quadratic_invariants(&Mat3::<f64>::identity());
        assert_eq!(q.trace_sq, 0.0);
        assert!((q.axial_sq - 3.0).abs() < 1e-15);
        assert!(q.tensor_sq.abs() < 1e-30);
    }

    #[test]
    fn potential_and_kinetic_examples() {
        assert_eq!(potential_density(&Mat3::zeros(), &lambdas(1.0, 5.0)), 0.0);
        assert_eq!(potential_density(&Mat3::identity(), &lambdas(1.0, 7.0)), 9.0);
        assert_eq!(kinetic_density(&Vec3::new(1.0, 2.0, 2.0)), 9.0);
        let m = lambdas(1.3, 0.7);
        assert_eq!(linearized_lagrangian(&Vec3::zeros(), &Mat3::zeros(), &m), 0.0);
        assert_eq!(linearized_lagrangian(&Vec3::new(1.0, 0.0, 0.0), &Mat3::zeros(), &m), 4.0);
    }

    #[test]
    fn potential_in_terms_of_torsion_squares() {
        // λ1 (tr A)² + λ2 |skew A|² = (3/4) λ1 axial + λ2 trace
        let a = Mat3([[0.3, -1.2, 0.5], [0.1, 0.4, -0.7], [-0.6, 2.0, 0.9]]);
        let m = Moduli::from_elastic(0.7f64, 0.2, 1.1).unwrap();
        let q = quadratic_invariants(&torsion_from_nye(&a));
        let via_t = 0.75 * m.lambda1 * q.axial_sq + m.lambda2 * q.trace_sq;
        assert!((potential_density(&a, &m) - via_t).abs() < 1e-12);
    }

    #[test]
    fn linearized_lagrangian_error_is_cubic() {
        let f = BumpField::<f64>::random(5, 3, 2.0);
        let m = lambdas(1.2, 0.8);
        let x = Vec3::new(0.1, 0.2, -0.1);
        let diff = |s: f64| {
            let jet0 = f.jet(&x, 0.0);
            let scale = |v: Vec3<f64>| v.scale(s);
            let jet = RotorJet::from_beta_jet(
                scale(jet0.rotor.beta),
                jet0.d_beta.map(scale),
                jet0.dd_beta.map(|r| r.map(scale)),
                false,
            );
            // give the field a time dependence by reusing the x-derivative
            let mut jet = jet;
            jet.d_beta[TIME] = jet.d_beta[0];
            jet.d_alpha[TIME] = jet.d_alpha[0];
            let full = lagrangian_density(&nye_from_jet(&jet), &nye_slot(&jet, TIME), &m);
            let lin = linearized_lagrangian(&jet.d_beta[TIME], &jet.grad_beta(), &m);
            (full - lin).abs()
        };
        let ratio = diff(0.02) / diff(0.01);
        assert!(ratio > 7.0, "ratio {ratio}");
    }

    #[test]
    fn identity_tt_on_identity_grid() {
        let g = RotorGrid::sample_centered(&ConstantField(Rotor::<f64>::identity()), 5, 0.5, 0.0).unwrap();
        assert_eq!(check_identity_tt(&g).unwrap(), 0.0);
        let small = RotorGrid::sample_centered(&ConstantField(Rotor::<f64>::identity()), 4, 0.5, 0.0).unwrap();
        assert!(matches!(check_identity_tt(&small), Err(Error::GridTooSmall { .. })));
    }

    #[test]
    fn identity_tt_converges_at_second_order() {
        let f = BumpField::<f64>::random(21, 3, 1.5);
        let r1 = check_identity_tt(&RotorGrid::sample_centered(&f, 31, 0.1, 0.0).unwrap()).unwrap();
        let r2 = check_identity_tt(&RotorGrid::sample_centered(&f, 61, 0.05, 0.0).unwrap()).unwrap();
        assert!(r1 / r2 > 3.0, "{r1} {r2}");
    }

    fn rotor_strategy() -> impl Strategy<Value = Rotor<f64>> {
        (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64)
            .prop_filter("nonzero", |(a, b, c, d)| a * a + b * b + c * c + d * d > 1e-3)
            .prop_map(|(a, b, c, d)| Rotor::normalized(a, Vec3::new(b, c, d)).unwrap())
    }

    proptest! {
        #[test]
        fn decomposition_is_orthogonal_and_exact(v in proptest::array::uniform9(-5.0..5.0f64)) {
            let m = Mat3::from_row_slice(&v);
            let d = decompose(&m);
            prop_assert!((d.recompose() - m).max_abs() < 1e-12);
            prop_assert!(d.trace_matrix().frobenius_dot(&d.antisym_part).abs() < 1e-12);
            prop_assert!(d.trace_matrix().frobenius_dot(&d.sym_traceless_part).abs() < 1e-12);
            prop_assert!(d.antisym_part.frobenius_dot(&d.sym_traceless_part).abs() < 1e-12);
            prop_assert!(d.sym_traceless_part.trace().abs() < 1e-12);
            prop_assert!((torsion_from_nye(&m).trace() + 2.0 * m.trace()).abs() < 1e-12);
            prop_assert!((nye_from_torsion(&torsion_from_nye(&m)) - m).max_abs() < 1e-12);
        }

        #[test]
        fn potential_is_non_negative(
            v in proptest::array::uniform9(-5.0..5.0f64),
            c in proptest::array::uniform3(0.0..3.0f64),
        ) {
            let m = Moduli::from_elastic(c[0], c[1], c[2]).unwrap();
            prop_assert!(potential_density(&Mat3::from_row_slice(&v), &m) >= 0.0);
        }

        #[test]
        fn gauge_rotation_preserves_densities(
            r in rotor_strategy(),
            l in rotor_strategy(),
            d in proptest::array::uniform12(-1.0..1.0f64),
        ) {
            let jet = RotorJet::from_beta_jet(
                r.beta,
                std::array::from_fn(|m| Vec3::new(d[3 * m], d[3 * m + 1], d[3 * m + 2])),
                [[Vec3::zeros(); 4]; 4],
                r.alpha < 0.0,
            );
            prop_assume!(r.alpha.abs() > 0.05);
            let mj = jet.matrix_jet();
            let lm = l.to_matrix();
            // u ↦ L u together with derivatives along the rotated frame
            let rotated = MatrixJet {
                u: lm * mj.u,
                du: std::array::from_fn(|rho| {
                    if rho == TIME {
                        lm * mj.du[TIME]
                    } else {
                        (0..3).fold(Mat3::zeros(), |acc, k| acc + (lm * mj.du[k]).scale(lm[(rho, k)]))
                    }
                }),
            };
            let a = nye_from_matrix_jet(&mj);
            let a2 = nye_from_matrix_jet(&rotated);
            prop_assert!((a2 - lm * a * lm.transpose()).max_abs() < 1e-10);
            let m = Moduli::from_couplings(1.1, 0.6).unwrap();
            prop_assert!((potential_density(&a, &m) - potential_density(&a2, &m)).abs() < 1e-10);
            let (v, v2) = (nye_velocity_from_matrix_jet(&mj), nye_velocity_from_matrix_jet(&rotated));
            prop_assert!((kinetic_density(&v) - kinetic_density(&v2)).abs() < 1e-10);
        }
    }
}
