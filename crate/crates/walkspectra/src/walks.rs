//! The three walk measures, shared by the exact oracle, the closed-form
//! spectra, and the simulator.

use crate::perm::Perm;

/// A random walk on the alternating group A_n, given by one step measure.
///
/// Positions are 1-based in the descriptions below; code is 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Walk {
    /// Mass 1/(2n-3) on the identity and on each of the 3-cycles
    /// (i, n-1, n) and (i, n, n-1) for 1 <= i <= n-2: transpose the top two
    /// cards, then insert one at a uniform position.
    TransposeTop2,
    /// Uniform measure on all 3-cycles: mass 3/(n(n-1)(n-2)) each, no mass
    /// on the identity.
    ThreeCycle,
    /// Mass 1/(n-1) on the identity and 1/(n-1)^2 on each of (i, j, n) and
    /// (j, i, n) for 1 <= i < j <= n-1: every 3-cycle through the last
    /// position, both orientations.
    StarThreeCycle,
}

impl Walk {
    /// Smallest n for which the step measure is defined.
    pub fn min_n(self) -> usize {
        3
    }

    /// Coefficient of (ln n + c) in the mixing-time schedule.
    pub fn schedule_coefficient(self, n: usize) -> f64 {
        match self {
            Walk::TransposeTop2 => n as f64 - 1.5,
            Walk::ThreeCycle => n as f64 / 3.0,
            Walk::StarThreeCycle => (n as f64 - 1.0) / 2.0,
        }
    }

    /// The step measure as (permutation, probability) pairs.
    ///
    /// Every listed permutation is distinct and even, the weights sum to 1,
    /// and the measure is symmetric under inversion (both orientations of a
    /// 3-cycle carry the same mass).
    pub fn support(self, n: usize) -> crate::Result<Vec<(Perm, f64)>> {
        if n < self.min_n() {
            return Err(crate::Error::InvalidArgument(format!(
                "walk support needs n >= 3, got {n}"
            )));
        }
        let mut out = Vec::new();
        match self {
            Walk::TransposeTop2 => {
                let w = 1.0 / (2 * n - 3) as f64;
                out.push((Perm::identity(n), w));
                for a in 0..n - 2 {
                    out.push((Perm::three_cycle(n, a, n - 2, n - 1), w));
                    out.push((Perm::three_cycle(n, a, n - 1, n - 2), w));
                }
            }
            Walk::ThreeCycle => {
                let w = 3.0 / (n * (n - 1) * (n - 2)) as f64;
                for a in 0..n {
                    for b in a + 1..n {
                        for c in b + 1..n {
                            out.push((Perm::three_cycle(n, a, b, c), w));
                            out.push((Perm::three_cycle(n, a, c, b), w));
                        }
                    }
                }
            }
            Walk::StarThreeCycle => {
                let unit = 1.0 / (n - 1) as f64;
                out.push((Perm::identity(n), unit));
                let w = unit * unit;
                for a in 0..n - 2 {
                    for b in a + 1..n - 1 {
                        out.push((Perm::three_cycle(n, a, b, n - 1), w));
                        out.push((Perm::three_cycle(n, b, a, n - 1), w));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Stable lowercase token used in CLI output.
    pub fn token(self) -> &'static str {
        match self {
            Walk::TransposeTop2 => "tt2r",
            Walk::ThreeCycle => "cycles3",
            Walk::StarThreeCycle => "tprime",
        }
    }
}
