use crate::core::{PlantError, SmoothDynamics};
use crate::numeric::{solve_dense, Scalar};

/// Cart with two serial links, each modelled as a point mass at the link
/// tip. Angles are absolute, measured from the downward vertical.
///
/// State: (cart position, θ₁, θ₂, cart velocity, θ̇₁, θ̇₂).
/// Control: horizontal force on the cart.
#[derive(Debug, Clone)]
pub struct DoubleCartPolePlant {
    pub cart_mass: f64,
    pub link1_mass: f64,
    pub link2_mass: f64,
    pub link1_length: f64,
    pub link2_length: f64,
    pub gravity: f64,
}

impl Default for DoubleCartPolePlant {
    fn default() -> Self {
        Self {
            cart_mass: 3.0,
            link1_mass: 1.0,
            link2_mass: 20.0,
            link1_length: 1.5,
            link2_length: 1.5,
            gravity: 9.81,
        }
    }
}

impl DoubleCartPolePlant {
    /// Total mechanical energy; conserved along unforced motion.
    pub fn energy(&self, x: &[f64]) -> f64 {
        let (mc, m1, m2) = (self.cart_mass, self.link1_mass, self.link2_mass);
        let (l1, l2, g) = (self.link1_length, self.link2_length, self.gravity);
        let (t1, t2, v, w1, w2) = (x[1], x[2], x[3], x[4], x[5]);
        let kinetic = 0.5 * (mc + m1 + m2) * v * v
            + 0.5 * (m1 + m2) * l1 * l1 * w1 * w1
            + 0.5 * m2 * l2 * l2 * w2 * w2
            + (m1 + m2) * l1 * t1.cos() * v * w1
            + m2 * l2 * t2.cos() * v * w2
            + m2 * l1 * l2 * (t1 - t2).cos() * w1 * w2;
        let potential = -(m1 + m2) * g * l1 * t1.cos() - m2 * g * l2 * t2.cos();
        kinetic + potential
    }

    /// Mass matrix at a configuration, for conditioning diagnostics.
    pub fn mass_matrix(&self, t1: f64, t2: f64) -> nalgebra::DMatrix<f64> {
        let (mc, m1, m2) = (self.cart_mass, self.link1_mass, self.link2_mass);
        let (l1, l2) = (self.link1_length, self.link2_length);
        let (c1, c2, c12) = (t1.cos(), t2.cos(), (t1 - t2).cos());
        nalgebra::DMatrix::from_row_slice(
            3,
            3,
            &[
                mc + m1 + m2,
                (m1 + m2) * l1 * c1,
                m2 * l2 * c2,
                (m1 + m2) * l1 * c1,
                (m1 + m2) * l1 * l1,
                m2 * l1 * l2 * c12,
                m2 * l2 * c2,
                m2 * l1 * l2 * c12,
                m2 * l2 * l2,
            ],
        )
    }
}

impl SmoothDynamics for DoubleCartPolePlant {
    fn state_dim(&self) -> usize {
        6
    }

    fn control_dim(&self) -> usize {
        1
    }

    fn eval<T: Scalar>(&self, x: &[T], u: &[T], _t: f64) -> Result<Vec<T>, PlantError> {
        let (mc, m1, m2) = (self.cart_mass, self.link1_mass, self.link2_mass);
        let (l1, l2, g) = (self.link1_length, self.link2_length, self.gravity);
        let (t1, t2, v, w1, w2) = (x[1], x[2], x[3], x[4], x[5]);
        let (s1, c1) = (t1.sin(), t1.cos());
        let (s2, c2) = (t2.sin(), t2.cos());
        let d12 = t1 - t2;
        let (s12, c12) = (d12.sin(), d12.cos());

        let mut mass = vec![
            vec![
                T::constant(mc + m1 + m2),
                T::constant((m1 + m2) * l1) * c1,
                T::constant(m2 * l2) * c2,
            ],
            vec![
                T::constant((m1 + m2) * l1) * c1,
                T::constant((m1 + m2) * l1 * l1),
                T::constant(m2 * l1 * l2) * c12,
            ],
            vec![
                T::constant(m2 * l2) * c2,
                T::constant(m2 * l1 * l2) * c12,
                T::constant(m2 * l2 * l2),
            ],
        ];
        let mut rhs = vec![
            u[0] + T::constant((m1 + m2) * l1) * s1 * w1 * w1
                + T::constant(m2 * l2) * s2 * w2 * w2,
            -T::constant(m2 * l1 * l2) * s12 * w2 * w2 - T::constant((m1 + m2) * g * l1) * s1,
            T::constant(m2 * l1 * l2) * s12 * w1 * w1 - T::constant(m2 * g * l2) * s2,
        ];
        let acc = solve_dense(&mut mass, &mut rhs).ok_or(PlantError::SingularMassMatrix)?;
        Ok(vec![v, w1, w2, acc[0], acc[1], acc[2]])
    }
}
