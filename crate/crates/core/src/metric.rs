use thiserror::Error;

use crate::rational::Rat;

/// First metric axiom a distance matrix fails. Indices are 0-based rows/columns.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("distance matrix is not {n}x{n}")]
    DimensionMismatch { n: usize },
    #[error("d({i},{i}) is not 0")]
    NonZeroDiagonal { i: usize },
    #[error("d({i},{j}) != d({j},{i})")]
    Asymmetric { i: usize, j: usize },
    #[error("d({i},{j}) is negative")]
    Negative { i: usize, j: usize },
    #[error("d({i},{k}) > d({i},{j}) + d({j},{k})")]
    Triangle { i: usize, j: usize, k: usize },
}

/// Checks that `d` is an `n`x`n` (pseudo)metric: zero diagonal, symmetric,
/// non-negative, and satisfying the triangle inequality.
pub fn validate_metric(d: &[Vec<Rat>], n: usize) -> Result<(), MetricError> {
    if n == 0 || d.len() != n || d.iter().any(|row| row.len() != n) {
        return Err(MetricError::DimensionMismatch { n });
    }
    for (i, row) in d.iter().enumerate() {
        if !row[i].is_zero() {
            return Err(MetricError::NonZeroDiagonal { i });
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if d[i][j] != d[j][i] {
                return Err(MetricError::Asymmetric { i, j });
            }
            if d[i][j].is_negative() {
                return Err(MetricError::Negative { i, j });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if d[i][k] > &d[i][j] + &d[j][k] {
                    return Err(MetricError::Triangle { i, j, k });
                }
            }
        }
    }
    Ok(())
}

/// L1 distance matrix over integer grid points.
pub fn manhattan_matrix(points: &[(i64, i64)]) -> Vec<Vec<Rat>> {
    points
        .iter()
        .map(|&(x1, y1)| {
            points
                .iter()
                .map(|&(x2, y2)| Rat::from_int((x1 - x2).abs() + (y1 - y2).abs()))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Rat::from_int(x)).collect())
            .collect()
    }

    #[test]
    fn degenerate_and_two_point() {
        assert_eq!(validate_metric(&m(&[&[0]]), 1), Ok(()));
        assert_eq!(validate_metric(&m(&[&[0, 1], &[1, 0]]), 2), Ok(()));
    }

    #[test]
    fn reports_asymmetry() {
        assert_eq!(
            validate_metric(&m(&[&[0, 5], &[4, 0]]), 2),
            Err(MetricError::Asymmetric { i: 0, j: 1 })
        );
    }

    #[test]
    fn reports_other_axioms() {
        assert_eq!(
            validate_metric(&m(&[&[0, 1], &[1, 0]]), 3),
            Err(MetricError::DimensionMismatch { n: 3 })
        );
        assert_eq!(
            validate_metric(&m(&[&[0, 1], &[1, 2]]), 2),
            Err(MetricError::NonZeroDiagonal { i: 1 })
        );
        assert_eq!(
            validate_metric(&m(&[&[0, -1], &[-1, 0]]), 2),
            Err(MetricError::Negative { i: 0, j: 1 })
        );
        assert_eq!(
            validate_metric(&m(&[&[0, 1, 5], &[1, 0, 1], &[5, 1, 0]]), 3),
            Err(MetricError::Triangle { i: 0, j: 1, k: 2 })
        );
    }

    proptest! {
        #[test]
        fn manhattan_is_metric(pts in proptest::collection::vec((-20i64..20, -20i64..20), 1..10)) {
            let d = manhattan_matrix(&pts);
            prop_assert_eq!(validate_metric(&d, pts.len()), Ok(()));
        }
    }
}
