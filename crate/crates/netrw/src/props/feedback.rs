use super::baff::BaffElem;
use super::matrix::{Matrix, Semiring};
use crate::core::BoolMat;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FeedbackError {
    #[error("feedback pattern is not nilpotent")]
    PatternNotNilpotent,
    #[error("entry ({0},{1}) of the fed-back block lies outside the pattern")]
    PatternViolated(usize, usize),
    #[error("cannot feed back {n} wires of a {rows}x{cols} matrix with a {p}x{p} pattern")]
    Shape { n: usize, rows: usize, cols: usize, p: usize },
}

/// Formal feedback `A₁₁ + A₁₂ A₂₂* A₂₁` of the last `n` outputs into the
/// last `n` inputs. The star is the finite sum `Σ_{k<n} A₂₂ᵏ`, which is exact
/// because the support of `A₂₂` lies below the nilpotent `pattern`.
pub fn matrix_feedback<T: Semiring>(a: &Matrix<T>, n: usize, pattern: &BoolMat) -> Result<Matrix<T>, FeedbackError> {
    let (rows, cols) = a.shape();
    if n > rows || n > cols || pattern.shape() != (n, n) {
        return Err(FeedbackError::Shape { n, rows, cols, p: pattern.rows() });
    }
    if !pattern.is_nilpotent().expect("square") {
        return Err(FeedbackError::PatternNotNilpotent);
    }
    let (k, l) = (rows - n, cols - n);
    let a22 = a.block(k, rows, l, cols);
    for i in 0..n {
        for j in 0..n {
            if !a22.get(i, j).is_zero() && !pattern.get(i, j) {
                return Err(FeedbackError::PatternViolated(i + 1, j + 1));
            }
        }
    }
    let a11 = a.block(0, k, 0, l);
    let a12 = a.block(0, k, l, cols);
    let a21 = a.block(k, rows, 0, l);
    let mut star = Matrix::identity(n);
    let mut power = Matrix::identity(n);
    for _ in 1..n {
        power = power.mul(&a22);
        star = star.add(&power);
    }
    Ok(a11.add(&a12.mul(&star).mul(&a21)))
}

/// Feedback in the biaffine PROP: the same formula on the padded matrix.
pub fn baff_feedback(a: &BaffElem, n: usize, pattern: &BoolMat) -> Result<BaffElem, FeedbackError> {
    let full = matrix_feedback(a.full(), n, pattern)?;
    Ok(BaffElem::from_full(full).expect("feedback keeps the padding"))
}
