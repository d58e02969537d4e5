//! Deterministic number formatting for exported documents.

/// Formats a float with 12 significant digits in scientific notation.
/// Identical inputs always yield identical bytes.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0.00000000000e0".into();
    }
    format!("{:.11e}", x)
}

#[cfg(test)]
mod tests {
    use super::sig12;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(sig12(0.5), "5.00000000000e-1");
        assert_eq!(sig12(-1.0 / 3.0), "-3.33333333333e-1");
        assert_eq!(sig12(0.0), "0.00000000000e0");
        assert_eq!(sig12(12345.6789), "1.23456789000e4");
    }

    #[test]
    fn deterministic() {
        for &x in &[1.0e-15, 3.25, -7.1e9] {
            assert_eq!(sig12(x), sig12(x));
        }
    }
}
