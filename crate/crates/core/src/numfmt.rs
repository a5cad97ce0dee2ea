//! Fixed-precision float formatting shared by the CSV and JSON writers.

/// Significant digits used for every serialized float.
pub(crate) const SIG_DIGITS: usize = 9;

/// Rounds `x` to [`SIG_DIGITS`] significant digits. Idempotent.
pub(crate) fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIG_DIGITS - 1, x).parse().unwrap_or(x)
}

/// Shortest decimal text for `x` once rounded to [`SIG_DIGITS`] digits.
pub(crate) fn fmt_sig(x: f64) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let r = round_sig(x);
    if r == 0.0 {
        return "0".into();
    }
    format!("{r}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_is_idempotent() {
        for &x in &[1.0 / 3.0, 12.345678912345, -0.000123456789123, 1e300, 7.0] {
            let r = round_sig(x);
            assert_eq!(r, round_sig(r));
            assert!((r - x).abs() <= 5e-9 * x.abs());
        }
        assert_eq!(fmt_sig(f64::INFINITY), "inf");
        assert_eq!(fmt_sig(0.5), "0.5");
    }
}
