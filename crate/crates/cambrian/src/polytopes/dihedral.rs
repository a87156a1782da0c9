//! The dihedral group of order 2m acting on the complex plane: exact
//! arithmetic in the model where a point is re + im * (i sin(pi/m)) with
//! re, im in Q(2cos(pi/m)).

use std::sync::Arc;

use crate::coxeter::CoxeterSystem;
use crate::fans::weight_coords;
use crate::linalg::Vector;
use crate::scalar::{NumberField, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CPoint {
    pub re: Scalar,
    /// Coefficient of i*sin(pi/m).
    pub im: Scalar,
}

pub struct DihedralModel {
    pub m: u32,
    pub field: Arc<NumberField>,
    cos: Scalar,
    sin2: Scalar,
}

impl DihedralModel {
    pub fn new(m: u32) -> DihedralModel {
        let field = NumberField::two_cos_pi_over(m);
        let cos = Scalar::cos_pi_over(&field, m);
        let sin2 = &Scalar::one(&field) - &(&cos * &cos);
        DihedralModel { m, field, cos, sin2 }
    }

    pub fn zero(&self) -> CPoint {
        CPoint {
            re: Scalar::zero(&self.field),
            im: Scalar::zero(&self.field),
        }
    }

    pub fn add(&self, a: &CPoint, b: &CPoint) -> CPoint {
        CPoint {
            re: &a.re + &b.re,
            im: &a.im + &b.im,
        }
    }

    pub fn mul(&self, a: &CPoint, b: &CPoint) -> CPoint {
        // (x + y*is)(u + v*is) = xu - yv sin^2 + (xv + yu) is
        CPoint {
            re: &(&a.re * &b.re) - &(&(&a.im * &b.im) * &self.sin2),
            im: &(&a.re * &b.im) + &(&a.im * &b.re),
        }
    }

    pub fn scale(&self, c: &Scalar, a: &CPoint) -> CPoint {
        CPoint {
            re: c * &a.re,
            im: c * &a.im,
        }
    }

    /// e^{i k pi / m}, any integer k.
    pub fn unit(&self, k: i64) -> CPoint {
        let ka = k.unsigned_abs() as u32;
        // cos(k theta) via C_k(2 cos theta) / 2
        let z = &self.cos + &self.cos;
        let mut c_prev = Scalar::from_int(&self.field, 2);
        let mut c_cur = z.clone();
        let mut u_prev = Scalar::zero(&self.field); // U_{-1}
        let mut u_cur = Scalar::one(&self.field); // U_0
        for _ in 1..ka.max(1) {
            let c_next = &(&z * &c_cur) - &c_prev;
            c_prev = c_cur;
            c_cur = c_next;
            let u_next = &(&z * &u_cur) - &u_prev;
            u_prev = u_cur;
            u_cur = u_next;
        }
        let (re, sin_coeff) = if ka == 0 {
            (Scalar::one(&self.field), Scalar::zero(&self.field))
        } else {
            (
                &c_cur / &Scalar::from_int(&self.field, 2),
                u_cur, // sin(k theta) / sin(theta) = U_{k-1}(cos theta)
            )
        };
        let im = if k < 0 { -sin_coeff } else { sin_coeff };
        CPoint { re, im }
    }

    /// The closed-form extra vertex P = i sin(pi/m) / (cos(pi/m) - 1).
    pub fn closed_form_p(&self) -> CPoint {
        CPoint {
            re: Scalar::zero(&self.field),
            im: (&self.cos - &Scalar::one(&self.field)).inverse(),
        }
    }

    /// The geometric sum of the non-singleton orbit points,
    /// sum_{k=1}^{m-1} e^{-ik pi/m}, computed term by term.
    pub fn nonsingleton_sum(&self) -> CPoint {
        let mut acc = self.zero();
        for k in 1..self.m as i64 {
            acc = self.add(&acc, &self.unit(-k));
        }
        acc
    }

    /// The mirror point of the first generator, v_s = (1 + e^{i pi/m}) / 2;
    /// the reflection s fixes the line through it.
    pub fn mirror_s(&self) -> CPoint {
        let half = Scalar::from_rat(&self.field, crate::scalar::rat_frac(1, 2));
        self.scale(&half, &self.add(&self.unit(0), &self.unit(1)))
    }

    pub fn mirror_t(&self) -> CPoint {
        let half = Scalar::from_rat(&self.field, crate::scalar::rat_frac(1, 2));
        self.scale(&half, &self.add(&self.unit(0), &self.unit(-1)))
    }

    /// Model image of the fundamental weight of the first generator. The
    /// weight is fixed by the other reflection, so it lies on the mirror
    /// of t; the scale puts the base point v_s + v_t at 1.
    pub fn weight_s(&self) -> CPoint {
        let norm = (&Scalar::one(&self.field) + &self.cos).inverse();
        self.scale(&norm, &self.mirror_t())
    }

    pub fn weight_t(&self) -> CPoint {
        let norm = (&Scalar::one(&self.field) + &self.cos).inverse();
        self.scale(&norm, &self.mirror_s())
    }

    /// Map a point from the I2(m) pipeline (simple-root basis, unit-root
    /// convention) into the complex model. The map sends the fundamental
    /// weights to their model images, which makes it the intertwiner of
    /// the two actions normalized so the all-ones base point goes to 1.
    pub fn from_pipeline(&self, sys: &CoxeterSystem, x: &Vector) -> CPoint {
        assert_eq!(sys.rank(), 2);
        let q = weight_coords(sys, x);
        let lift = |c: &Scalar| -> Scalar {
            if sys.field.degree() == 1 {
                Scalar::from_rat(&self.field, c.as_rat().unwrap().clone())
            } else {
                assert_eq!(sys.field.generator_order(), self.m);
                let mut out = Scalar::zero(&self.field);
                let z = Scalar::z(&self.field);
                let mut pow = Scalar::one(&self.field);
                for coef in c.coeffs() {
                    out += &(&Scalar::from_rat(&self.field, coef.clone()) * &pow);
                    pow = &pow * &z;
                }
                out
            }
        };
        self.add(
            &self.scale(&lift(&q[0]), &self.weight_s()),
            &self.scale(&lift(&q[1]), &self.weight_t()),
        )
    }

    pub fn to_f64(&self, p: &CPoint) -> (f64, f64) {
        let sin = (std::f64::consts::PI / self.m as f64).sin();
        (p.re.to_f64(), p.im.to_f64() * sin)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn units_and_conjugation() {
        for m in [2u32, 3, 4, 5, 7, 12] {
            let model = DihedralModel::new(m);
            // e^{i m theta} = e^{i pi} = -1
            let top = model.unit(m as i64);
            assert_eq!(top.re, -Scalar::one(&model.field));
            assert!(top.im.is_zero());
            // multiplicativity: e^{i2theta} = (e^{itheta})^2
            let sq = model.mul(&model.unit(1), &model.unit(1));
            assert_eq!(sq, model.unit(2));
            // conjugate multiplies to 1
            let one = model.mul(&model.unit(3), &model.unit(-3));
            assert_eq!(one, model.unit(0));
        }
    }

    #[test]
    fn sum_identity_exact() {
        for m in 2u32..=12 {
            let model = DihedralModel::new(m);
            assert_eq!(
                model.nonsingleton_sum(),
                model.closed_form_p(),
                "m = {m}"
            );
        }
    }

    #[test]
    fn closed_form_values() {
        // m = 2: P = -i
        let model = DihedralModel::new(2);
        let p = model.closed_form_p();
        let (re, im) = model.to_f64(&p);
        assert!(re.abs() < 1e-15 && (im + 1.0).abs() < 1e-15);
        // m = 4: P = i (sqrt2/2) / (sqrt2/2 - 1)
        let model = DihedralModel::new(4);
        let (re, im) = model.to_f64(&model.closed_form_p());
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!(re.abs() < 1e-12);
        assert!((im - s / (s - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn pipeline_map_is_equivariant() {
        for m in [2u32, 3, 5, 8] {
            let model = DihedralModel::new(m);
            let sys = CoxeterSystem::build_named(&format!("I2({m})")).unwrap();
            let mut a = vec![Scalar::zero(&sys.field); 2];
            for s in 0..2 {
                for (r, c) in sys.weights[s].iter().enumerate() {
                    a[r] = &a[r] + c;
                }
            }
            // the base point goes to M(e) = 1 and its reflections go to
            // the neighbouring orbit points e^{+-i pi/m}
            assert_eq!(model.from_pipeline(&sys, &a), model.unit(0), "m = {m}");
            let sa = sys.act_on_vector(&sys.generator(0), &a);
            assert_eq!(model.from_pipeline(&sys, &sa), model.unit(1), "m = {m}");
            let ta = sys.act_on_vector(&sys.generator(1), &a);
            assert_eq!(model.from_pipeline(&sys, &ta), model.unit(-1), "m = {m}");
        }
    }
}
