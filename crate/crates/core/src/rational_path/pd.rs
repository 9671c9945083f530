use crate::arith::RatFun;
use crate::error::{Error, Result};
use crate::matrix::{PrincipalPartition, RfMatrix};

/// One block-inverse step. Given `N_{i-1}^{-1}` and the split of `N_i`,
/// returns `(E, f, g)` with
///
/// ```text
/// N_i^{-1} = [ E    f ]
///            [ f^T  g ]
/// ```
///
/// where `g = 1 / (n_ii - l^T N_{i-1}^{-1} l)`, `f = -g N_{i-1}^{-1} l` and
/// `E = N_{i-1}^{-1} + f f^T / g`.
pub fn pd_block_step(ninv_prev: &RfMatrix, part: &PrincipalPartition) -> Result<(RfMatrix, RfMatrix, RatFun)> {
    let stage = ninv_prev.rows() + 1;
    let ninv_l = ninv_prev.mul(&part.l)?;
    let quad = part.l.transpose().mul(&ninv_l)?;
    let schur = &part.n_ii - scalar(&quad)?;
    if schur.is_zero() {
        return Err(Error::Singular { stage: Some(stage) });
    }
    let g = schur.inv()?;
    let f = ninv_l.scale(&-&g);
    let e = ninv_prev.add(&f.mul(&f.transpose())?.scale(&schur))?;
    Ok((e, f, g))
}

/// Joins the blocks returned by [`pd_block_step`].
pub(crate) fn assemble_block(e: &RfMatrix, f: &RfMatrix, g: &RatFun) -> Result<RfMatrix> {
    let top = e.hstack(f)?;
    let bottom = f.transpose().hstack(&RfMatrix::scalar(g.clone()))?;
    top.vstack(&bottom)
}

/// `N_1^{-1} = 1 / n_11`.
pub(crate) fn pd_init(n_weight: &RfMatrix) -> Result<RfMatrix> {
    let n11 = n_weight.get(0, 0);
    if n11.is_zero() {
        return Err(Error::Singular { stage: Some(1) });
    }
    Ok(RfMatrix::scalar(n11.inv()?))
}

pub(crate) fn scalar(m: &RfMatrix) -> Result<&RatFun> {
    m.as_scalar().ok_or(Error::Internal("expected a 1x1 product"))
}

/// Inverse of a symmetric matrix by bordering: `N_1^{-1}, N_2^{-1}, ...`,
/// each obtained from the previous one by [`pd_block_step`].
///
/// Every leading principal block must be nonsingular; the first singular
/// one is reported by its size.
pub fn pd_inverse(n_weight: &RfMatrix) -> Result<RfMatrix> {
    if !n_weight.is_square() {
        return Err(Error::NotSquare {
            what: "inverted matrix",
            rows: n_weight.rows(),
            cols: n_weight.cols(),
        });
    }
    if !n_weight.is_symmetric() {
        return Err(Error::NotSymmetric { what: "inverted matrix" });
    }
    let n = n_weight.rows();
    if n == 0 {
        return Ok(RfMatrix::zeros(0, 0));
    }
    let mut ninv = pd_init(n_weight)?;
    for i in 2..=n {
        let part = n_weight.principal_partition(i)?;
        let (e, f, g) = pd_block_step(&ninv, &part)?;
        ninv = assemble_block(&e, &f, &g)?;
    }
    Ok(ninv)
}
