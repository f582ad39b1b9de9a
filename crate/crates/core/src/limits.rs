//! Limits of sample sequences indexed by a shrinking width.
//!
//! Every exactly-evaluable set function in the catalog produces sample
//! curves that are eventually constant (step-type parts) or eventually affine
//! in the width (length-type parts), so the limit as the width goes to zero
//! is read off exactly: either the tail is constant, or an affine fit through
//! the last two samples is validated against the third-to-last one.

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub enum Certificate<S> {
    /// All samples from this width onward are equal.
    Stabilized { width: S },
    /// Affine fit `value = intercept + slope·width` through the last two
    /// samples; `residual` is the misfit at the third-to-last sample and is
    /// zero when the extrapolation is trusted.
    Extrapolated { slope: S, intercept: S, residual: S },
}

impl<S: Scalar> Certificate<S> {
    pub fn is_trusted(&self) -> bool {
        match self {
            Certificate::Stabilized { .. } => true,
            Certificate::Extrapolated { residual, .. } => residual.is_zero(),
        }
    }
}

/// Limit of `samples` (ordered by strictly decreasing width) as width → 0.
/// Returns `None` for fewer than two samples.
pub fn limit_of<S: Scalar>(samples: &[(S, S)]) -> Option<(S, Certificate<S>)> {
    let n = samples.len();
    if n < 2 {
        return None;
    }
    let (w1, v1) = &samples[n - 1];
    let (w0, v0) = &samples[n - 2];
    if v0 == v1 {
        let mut first = n - 1;
        while first > 0 && samples[first - 1].1 == *v1 {
            first -= 1;
        }
        let width = samples[first].0.clone();
        return Some((v1.clone(), Certificate::Stabilized { width }));
    }
    let slope = (v1.clone() - v0.clone()) / (w1.clone() - w0.clone());
    let intercept = v1.clone() - slope.clone() * w1.clone();
    let residual = if n >= 3 {
        let (w, v) = &samples[n - 3];
        v.clone() - (intercept.clone() + slope.clone() * w.clone())
    } else {
        // nothing to validate against
        S::one()
    };
    Some((intercept.clone(), Certificate::Extrapolated { slope, intercept, residual }))
}

/// Widths `1/4, 1/8, …, 1/2^(count+1)`.
pub fn dyadic_widths<S: Scalar>(count: usize) -> Vec<S> {
    let mut w = S::ratio(1, 4);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push(w.clone());
        w = w / S::two();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    #[test]
    fn stabilized_tail() {
        let s = vec![(q(1, 4), q(0, 1)), (q(1, 8), q(1, 1)), (q(1, 16), q(1, 1))];
        let (v, c) = limit_of(&s).unwrap();
        assert_eq!(v, q(1, 1));
        assert_eq!(c, Certificate::Stabilized { width: q(1, 8) });
    }

    #[test]
    fn affine_tail() {
        let s: Vec<_> = dyadic_widths::<Rational>(5).into_iter().map(|w| (w.clone(), q(1, 1) - w)).collect();
        let (v, c) = limit_of(&s).unwrap();
        assert_eq!(v, q(1, 1));
        assert!(c.is_trusted());
    }

    #[test]
    fn non_affine_tail_is_flagged() {
        let s: Vec<_> = dyadic_widths::<Rational>(4).into_iter().map(|w| (w.clone(), w.clone() * w)).collect();
        let (_, c) = limit_of(&s).unwrap();
        assert!(!c.is_trusted());
    }
}
