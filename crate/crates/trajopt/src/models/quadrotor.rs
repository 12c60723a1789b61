use crate::core::{PlantError, SmoothDynamics};
use crate::numeric::Scalar;

const PITCH_SINGULARITY_TOL: f64 = 1e-6;

/// Rigid-body quadrotor in plus configuration with per-rotor thrust
/// controls.
///
/// State layout (n = 12): position (3), velocity (3), roll-pitch-yaw (3),
/// body angular rates (3). Controls (m = 4): rotor thrusts, rotors 1..4
/// on the +x, +y, −x, −y arms.
///
/// Torque mixing: roll = arm·(f₂ − f₄), pitch = arm·(f₃ − f₁),
/// yaw = k_yaw·(f₁ − f₂ + f₃ − f₄).
#[derive(Debug, Clone)]
pub struct QuadrotorPlant {
    pub mass: f64,
    pub inertia: [f64; 3],
    pub arm_length: f64,
    pub yaw_torque_coeff: f64,
    pub gravity: f64,
}

impl Default for QuadrotorPlant {
    fn default() -> Self {
        Self {
            mass: 1.0,
            inertia: [8.1e-3, 8.1e-3, 14.2e-3],
            arm_length: 0.24,
            yaw_torque_coeff: 0.016,
            gravity: 9.81,
        }
    }
}

impl QuadrotorPlant {
    /// Per-rotor thrust that exactly balances gravity in level attitude.
    pub fn hover_thrust(&self) -> f64 {
        self.mass * self.gravity / 4.0
    }
}

impl SmoothDynamics for QuadrotorPlant {
    fn state_dim(&self) -> usize {
        12
    }

    fn control_dim(&self) -> usize {
        4
    }

    fn eval<T: Scalar>(&self, x: &[T], u: &[T], _t: f64) -> Result<Vec<T>, PlantError> {
        let pitch = x[7].re();
        let margin = (pitch.abs() - std::f64::consts::FRAC_PI_2).abs();
        if margin < PITCH_SINGULARITY_TOL {
            return Err(PlantError::KinematicSingularity {
                pitch,
                tol: PITCH_SINGULARITY_TOL,
            });
        }

        let (jx, jy, jz) = (self.inertia[0], self.inertia[1], self.inertia[2]);
        let (roll, pitch, yaw) = (x[6], x[7], x[8]);
        let (p, q, r) = (x[9], x[10], x[11]);
        let (sph, cph) = (roll.sin(), roll.cos());
        let (sth, cth) = (pitch.sin(), pitch.cos());
        let (sps, cps) = (yaw.sin(), yaw.cos());

        let thrust = u[0] + u[1] + u[2] + u[3];
        let inv_mass = T::constant(1.0 / self.mass);

        // Third column of R = Rz(ψ) Ry(θ) Rx(φ): world direction of the
        // body thrust axis.
        let rz_x = cps * sth * cph + sps * sph;
        let rz_y = sps * sth * cph - cps * sph;
        let rz_z = cth * cph;

        let acc_x = rz_x * thrust * inv_mass;
        let acc_y = rz_y * thrust * inv_mass;
        let acc_z = rz_z * thrust * inv_mass - T::constant(self.gravity);

        // Euler-angle kinematics.
        let tth = sth / cth;
        let roll_rate = p + (q * sph + r * cph) * tth;
        let pitch_rate = q * cph - r * sph;
        let yaw_rate = (q * sph + r * cph) / cth;

        // Rotor-arm torque mixing and Euler's rotational equations.
        let arm = T::constant(self.arm_length);
        let kyaw = T::constant(self.yaw_torque_coeff);
        let tau_x = arm * (u[1] - u[3]);
        let tau_y = arm * (u[2] - u[0]);
        let tau_z = kyaw * (u[0] - u[1] + u[2] - u[3]);

        let p_dot = (tau_x - T::constant(jz - jy) * q * r) / T::constant(jx);
        let q_dot = (tau_y - T::constant(jx - jz) * r * p) / T::constant(jy);
        let r_dot = (tau_z - T::constant(jy - jx) * p * q) / T::constant(jz);

        Ok(vec![
            x[3], x[4], x[5], acc_x, acc_y, acc_z, roll_rate, pitch_rate, yaw_rate, p_dot,
            q_dot, r_dot,
        ])
    }
}
