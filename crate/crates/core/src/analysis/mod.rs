//! Code verification: exhaustive weight enumeration, minimum distance,
//! parity classification, enumerator fitting, MacWilliams self-check and the
//! self-dual extremality bound.

mod distribution;
mod enumerate;
mod macwilliams;
mod template;

pub use distribution::{ParityClass, WeightDistribution};
pub use enumerate::{
    weight_distribution_gray, weight_distribution_naive, GRAY_MAX_ROWS, NAIVE_MAX_ROWS,
};
pub use macwilliams::{krawtchouk_table, macwilliams_selfcheck, macwilliams_transform};
pub use template::{fit_template, EnumeratorTemplate, Residual, TemplateFit, TemplateTerm};

use crate::bits::BitMatrix;
use crate::error::{Error, Result};

/// Upper bound on the minimum distance of a binary self-dual code of length `n`.
pub fn extremal_bound(n: usize) -> usize {
    if n % 24 == 22 {
        4 * (n / 24) + 6
    } else {
        4 * (n / 24) + 4
    }
}

/// Self-orthogonal with rank `cols / 2`.
pub fn is_self_dual(g: &BitMatrix) -> Result<bool> {
    if !g.num_cols().is_multiple_of(2) {
        return Err(Error::param(format!(
            "self-duality needs an even length, got {}",
            g.num_cols()
        )));
    }
    Ok(g.is_self_orthogonal() && g.rank() == g.num_cols() / 2)
}

/// Every row shifted by `l` stays in the row space.
pub fn is_quasi_cyclic(g: &BitMatrix, l: usize) -> bool {
    g.rows()
        .iter()
        .all(|r| g.contains(&r.rotate(l)).unwrap_or(false))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&str]) -> BitMatrix {
        BitMatrix::from_rows(rows.iter().map(|r| r.parse().unwrap()).collect()).unwrap()
    }

    #[test]
    fn extremal_bound_examples() {
        assert_eq!(extremal_bound(72), 16);
        assert_eq!(extremal_bound(24), 8);
        assert_eq!(extremal_bound(22), 6);
        assert_eq!(extremal_bound(60), 12);
    }

    #[test]
    fn self_dual_examples() {
        assert!(is_self_dual(&mat(&["01010101", "00111100", "00001111", "11000011"])).unwrap());
        assert!(!is_self_dual(&mat(&["11110000", "00111100", "00001111", "11000011"])).unwrap());
        assert!(is_self_dual(&mat(&["110"])).is_err());
    }

    #[test]
    fn quasi_cyclic_examples() {
        let toy = mat(&["01010101", "00111100", "00001111", "11000011"]);
        assert!(is_quasi_cyclic(&toy, 2));
        assert!(!is_quasi_cyclic(&toy, 1));
        assert!(is_quasi_cyclic(
            &mat(&["11110000", "00111100", "00001111", "11000011"]),
            2
        ));
    }
}
