use crate::core::{PlantError, SmoothDynamics};
use crate::numeric::{solve_dense, Scalar};

/// Pendulum-on-cart with the link mass concentrated at the tip.
///
/// State: (cart position, link angle, cart velocity, link rate), with the
/// angle measured from the stable downward equilibrium (θ = 0 down,
/// θ = π upright). Control: horizontal force on the cart.
#[derive(Debug, Clone)]
pub struct CartPolePlant {
    pub cart_mass: f64,
    pub link_mass: f64,
    pub link_length: f64,
    pub gravity: f64,
}

impl Default for CartPolePlant {
    fn default() -> Self {
        Self {
            cart_mass: 1.0,
            link_mass: 5.0,
            link_length: 1.5,
            gravity: 9.81,
        }
    }
}

impl CartPolePlant {
    /// Total mechanical energy; conserved along unforced motion.
    pub fn energy(&self, x: &[f64]) -> f64 {
        let (m_c, m_l, l, g) = (self.cart_mass, self.link_mass, self.link_length, self.gravity);
        let (theta, v, w) = (x[1], x[2], x[3]);
        0.5 * (m_c + m_l) * v * v
            + m_l * l * v * w * theta.cos()
            + 0.5 * m_l * l * l * w * w
            - m_l * g * l * theta.cos()
    }
}

impl SmoothDynamics for CartPolePlant {
    fn state_dim(&self) -> usize {
        4
    }

    fn control_dim(&self) -> usize {
        1
    }

    fn eval<T: Scalar>(&self, x: &[T], u: &[T], _t: f64) -> Result<Vec<T>, PlantError> {
        let (m_c, m_l, l, g) = (self.cart_mass, self.link_mass, self.link_length, self.gravity);
        let theta = x[1];
        let v = x[2];
        let w = x[3];
        let (s, c) = (theta.sin(), theta.cos());

        // Lagrangian equations of motion:
        //   (M+m) v̇ + m l c ẇ = u + m l s w²
        //   m l c v̇ + m l² ẇ  = −m g l s
        let mut mass = vec![
            vec![T::constant(m_c + m_l), T::constant(m_l * l) * c],
            vec![T::constant(m_l * l) * c, T::constant(m_l * l * l)],
        ];
        let mut rhs = vec![
            u[0] + T::constant(m_l * l) * s * w * w,
            -T::constant(m_l * g * l) * s,
        ];
        let acc = solve_dense(&mut mass, &mut rhs).ok_or(PlantError::SingularMassMatrix)?;
        Ok(vec![v, w, acc[0], acc[1]])
    }
}
