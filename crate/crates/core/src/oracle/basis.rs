//! Chebyshev polynomial basis `T_0, ..., T_p` on `[-1, 1]`.
//!
//! Coefficients are modal rather than nodal: on a thin radial interval the
//! profiles are nearly constant, and derivatives recovered from nodal values
//! would lose digits to cancellation.

/// `T_0 .. T_p` with values and first derivatives by three-term recurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChebyshevBasis {
    degree: usize,
}

impl ChebyshevBasis {
    pub fn new(degree: usize) -> Self {
        assert!(degree >= 1);
        Self { degree }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.degree + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `T_k(x)` for every `k`.
    pub fn values(&self, x: f64) -> Vec<f64> {
        self.values_and_derivatives(x).0
    }

    /// `T_k(x)` and `T_k'(x)`.
    pub fn values_and_derivatives(&self, x: f64) -> (Vec<f64>, Vec<f64>) {
        let n = self.len();
        let mut t = vec![0.0; n];
        let mut d = vec![0.0; n];
        t[0] = 1.0;
        if n > 1 {
            t[1] = x;
            d[1] = 1.0;
        }
        for k in 1..n - 1 {
            t[k + 1] = 2.0 * x * t[k] - t[k - 1];
            d[k + 1] = 2.0 * t[k] + 2.0 * x * d[k] - d[k - 1];
        }
        (t, d)
    }

    /// Chebyshev coefficients of the polynomial `sum a_j x^j`; `None` when
    /// its degree exceeds the basis degree.
    pub fn from_monomial(&self, a: &[f64]) -> Option<Vec<f64>> {
        let deg = a.iter().rposition(|&c| c != 0.0).unwrap_or(0);
        if deg > self.degree {
            return None;
        }
        // Horner's rule with multiplication by x done in Chebyshev form:
        // x T_0 = T_1, x T_k = (T_{k+1} + T_{k-1}) / 2
        let mut acc = vec![0.0; self.len() + 1];
        for &aj in a[..=deg].iter().rev() {
            let mut next = vec![0.0; self.len() + 1];
            for (k, &c) in acc.iter().enumerate() {
                if c == 0.0 {
                    continue;
                }
                if k == 0 {
                    next[1] += c;
                } else {
                    next[k + 1] += 0.5 * c;
                    next[k - 1] += 0.5 * c;
                }
            }
            next[0] += aj;
            acc = next;
        }
        acc.truncate(self.len());
        Some(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recurrence_matches_trig_definition() {
        let b = ChebyshevBasis::new(9);
        for x in [-1.0, -0.73, 0.0, 0.2, 0.999, 1.0] {
            let (v, d) = b.values_and_derivatives(x);
            let th = f64::acos(x);
            for k in 0..=9 {
                assert!((v[k] - (k as f64 * th).cos()).abs() < 1e-13, "k={k} x={x}");
                if x.abs() < 1.0 {
                    let dk = k as f64 * (k as f64 * th).sin() / th.sin();
                    assert!((d[k] - dk).abs() < 1e-11, "k={k} x={x}");
                }
            }
        }
        let (_, d) = b.values_and_derivatives(1.0);
        assert_eq!(d[9], 81.0);
    }

    #[test]
    fn monomial_conversion_round_trip() {
        let b = ChebyshevBasis::new(6);
        let a = [1.0, -2.0, 0.0, 0.5, 0.0, 0.0, 1.0];
        let c = b.from_monomial(&a).unwrap();
        for x in [-0.9f64, 0.1, 0.55, 1.0] {
            let want: f64 = a.iter().enumerate().map(|(j, aj)| aj * x.powi(j as i32)).sum();
            let got: f64 = b.values(x).iter().zip(&c).map(|(t, ci)| t * ci).sum();
            assert!((got - want).abs() < 1e-14);
        }
        assert!(b.from_monomial(&[0.0; 8].iter().chain([1.0].iter()).copied().collect::<Vec<_>>()).is_none());
    }
}
