use nalgebra::DVector;

/// Block structure of the collocation decision vector
///   [X₀, X₁ … X_K, X_f, U₁ … U_K]
/// with n-dimensional state blocks and m-dimensional control blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecisionLayout {
    pub k: usize,
    pub n: usize,
    pub m: usize,
}

impl DecisionLayout {
    pub fn new(k: usize, n: usize, m: usize) -> Self {
        assert!(k >= 1, "need at least one collocation node");
        Self { k, n, m }
    }

    pub fn dim(&self) -> usize {
        self.n * (self.k + 2) + self.m * self.k
    }

    /// Offset of state block `i`: i = 0 is X₀, i = 1..K the node states,
    /// i = K + 1 is X_f.
    pub fn state_offset(&self, i: usize) -> usize {
        assert!(i <= self.k + 1);
        i * self.n
    }

    /// Offset of control block `j`, j = 0..K−1 for U₁..U_K.
    pub fn control_offset(&self, j: usize) -> usize {
        assert!(j < self.k);
        self.n * (self.k + 2) + j * self.m
    }

    /// Assemble a decision vector from K+2 state blocks (X₀ through X_f)
    /// and K control blocks.
    pub fn pack(&self, states: &[DVector<f64>], controls: &[DVector<f64>]) -> DVector<f64> {
        assert_eq!(states.len(), self.k + 2);
        assert_eq!(controls.len(), self.k);
        let mut z = DVector::zeros(self.dim());
        for (i, x) in states.iter().enumerate() {
            assert_eq!(x.len(), self.n);
            z.rows_mut(self.state_offset(i), self.n).copy_from(x);
        }
        for (j, u) in controls.iter().enumerate() {
            assert_eq!(u.len(), self.m);
            z.rows_mut(self.control_offset(j), self.m).copy_from(u);
        }
        z
    }

    /// Split a decision vector back into state and control blocks.
    pub fn unpack(&self, z: &DVector<f64>) -> (Vec<DVector<f64>>, Vec<DVector<f64>>) {
        assert_eq!(z.len(), self.dim());
        let states = (0..=self.k + 1)
            .map(|i| z.rows(self.state_offset(i), self.n).into_owned())
            .collect();
        let controls = (0..self.k)
            .map(|j| z.rows(self.control_offset(j), self.m).into_owned())
            .collect();
        (states, controls)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn offsets_partition_the_vector() {
        let layout = DecisionLayout::new(4, 3, 2);
        assert_eq!(layout.dim(), 3 * 6 + 2 * 4);
        // State blocks are contiguous and end where controls begin.
        for i in 0..=4 {
            assert_eq!(layout.state_offset(i + 1), layout.state_offset(i) + 3);
        }
        assert_eq!(layout.control_offset(0), layout.state_offset(5) + 3);
        for j in 0..3 {
            assert_eq!(layout.control_offset(j + 1), layout.control_offset(j) + 2);
        }
        assert_eq!(layout.control_offset(3) + 2, layout.dim());
    }

    #[test]
    fn pack_unpack_roundtrip() {
        let layout = DecisionLayout::new(3, 2, 1);
        let states: Vec<_> = (0..5)
            .map(|i| DVector::from_vec(vec![i as f64, -(i as f64) * 0.5]))
            .collect();
        let controls: Vec<_> = (0..3).map(|j| DVector::from_vec(vec![10.0 + j as f64])).collect();
        let z = layout.pack(&states, &controls);
        let (s2, c2) = layout.unpack(&z);
        assert_eq!(states, s2);
        assert_eq!(controls, c2);
        assert_eq!(z, layout.pack(&s2, &c2));
    }
}
