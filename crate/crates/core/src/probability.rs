use num_complex::Complex;

use crate::scalar::Real;

/// A transition or retention probability together with the overlap
/// amplitude it was computed from.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityResult<T: Real> {
    pub value: T,
    pub amplitude: Complex<T>,
    pub scenario: &'static str,
    pub params: Vec<(&'static str, T)>,
}

impl<T: Real> ProbabilityResult<T> {
    /// Builds the result from an amplitude; `value = |amplitude|²`.
    pub fn from_amplitude(scenario: &'static str, amplitude: Complex<T>, params: Vec<(&'static str, T)>) -> Self {
        Self { value: amplitude.norm_sqr(), amplitude, scenario, params }
    }

    pub fn param(&self, name: &str) -> Option<T> {
        self.params.iter().find(|(n, _)| *n == name).map(|&(_, v)| v)
    }

    pub fn in_unit_interval(&self) -> bool {
        self.value >= T::zero() && self.value <= T::one()
    }
}
