//! Left multiplication `θ_c` by a grouplike and the coinner maps `q_c`, `r_c`.

use crate::algebra::{AlgebraInstance, Check, Report, Value, Witness};
use crate::integrals::is_grouplike;
use crate::scalars::{Field, Matrix};
use crate::tensors::{SparseTensor, Variance};

use super::maps::{require_antipode, SigmaMap};
use super::PipelineError;

fn require_grouplike<K: Field>(h: &AlgebraInstance<K>, c: &SparseTensor<K>) -> Result<(), PipelineError> {
    if is_grouplike(h, c) {
        Ok(())
    } else {
        Err(PipelineError::NotGrouplike(h.format_element(c)))
    }
}

fn element_columns<K: Field>(n: usize, cols: &[SparseTensor<K>]) -> Matrix<K> {
    let dense: Vec<Vec<K>> = cols.iter().map(SparseTensor::to_dense).collect();
    Matrix::from_columns(n, &dense)
}

/// `θ_c(h) = c h`.
pub fn theta_c<K: Field>(h: &AlgebraInstance<K>, c: &SparseTensor<K>) -> Result<Matrix<K>, PipelineError> {
    require_grouplike(h, c)?;
    let cols: Vec<_> = (0..h.dim()).map(|i| h.mul(c, &h.basis(i))).collect();
    Ok(element_columns(h.dim(), &cols))
}

/// `u(c, S(c), h₁) h₂ v(c, S(c), h₃)` for reassociator-like functionals `u`, `v`.
fn coinner<K: Field>(
    h: &AlgebraInstance<K>,
    c: &SparseTensor<K>,
    u: &SparseTensor<K>,
    v: &SparseTensor<K>,
    ceiling: usize,
) -> Result<Matrix<K>, PipelineError> {
    require_grouplike(h, c)?;
    require_antipode(h)?;
    let n = h.dim();
    let sc = h.apply_antipode(c);
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        let mut out = h.zero_vec();
        for (l, coef) in h.iterated_coproduct(2, i, ceiling)?.iter() {
            let left = h.eval3(u, c, &sc, &h.basis(l[0]));
            if left.is_zero() {
                continue;
            }
            let right = h.eval3(v, c, &sc, &h.basis(l[2]));
            out.add_entry(vec![l[1]], coef.clone() * &left * &right);
        }
        cols.push(out);
    }
    Ok(element_columns(n, &cols))
}

/// `q_c(h) = φ⁻¹(c, S(c), h₁) h₂ φ(c, S(c), h₃)`.
pub fn q_c<K: Field>(
    h: &AlgebraInstance<K>,
    sigma: &SigmaMap<K>,
    c: &SparseTensor<K>,
    ceiling: usize,
) -> Result<Matrix<K>, PipelineError> {
    coinner(h, c, sigma.phi_inv(), sigma.phi(), ceiling)
}

/// `r_c(h) = φ(c, S(c), h₁) h₂ φ⁻¹(c, S(c), h₃)`.
pub fn r_c<K: Field>(
    h: &AlgebraInstance<K>,
    sigma: &SigmaMap<K>,
    c: &SparseTensor<K>,
    ceiling: usize,
) -> Result<Matrix<K>, PipelineError> {
    coinner(h, c, sigma.phi(), sigma.phi_inv(), ceiling)
}

/// Exact matrix comparison; the first differing entry `(row, col)` is the witness.
pub fn matrix_check<K: Field>(name: &str, lhs: &Matrix<K>, rhs: &Matrix<K>) -> Check<K> {
    if lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols() {
        return Check::fail(
            name,
            Witness {
                indices: vec![],
                lhs: Value::Note(format!("{}x{}", lhs.rows(), lhs.cols())),
                rhs: Value::Note(format!("{}x{}", rhs.rows(), rhs.cols())),
            },
        );
    }
    for j in 0..lhs.cols() {
        for i in 0..lhs.rows() {
            if lhs[(i, j)] != rhs[(i, j)] {
                return Check::fail(
                    name,
                    Witness {
                        indices: vec![i, j],
                        lhs: Value::Scalar(lhs[(i, j)].clone()),
                        rhs: Value::Scalar(rhs[(i, j)].clone()),
                    },
                );
            }
        }
    }
    Check::pass(name)
}

fn product<K: Field>(a: &Matrix<K>, b: &Matrix<K>) -> Matrix<K> {
    a.mul(b).expect("square matrices of equal size")
}

/// The identities around `θ_c` for a grouplike `c`, with `c⁻¹ = S(c)`:
/// `θ_c∘θ_{S(c)} = r_c`, `θ_{S(c)}∘θ_c = r_{S(c)}`, `q_c∘r_c = r_c∘q_c = id`,
/// and `θ_c⁻¹ = θ_{S(c)}∘q_c = q_{S(c)}∘θ_{S(c)}`.
pub fn check_theta_lemma<K: Field>(
    h: &AlgebraInstance<K>,
    sigma: &SigmaMap<K>,
    c: &SparseTensor<K>,
    ceiling: usize,
) -> Result<Report<K>, PipelineError> {
    require_antipode(h)?;
    let n = h.dim();
    let mut report = Report::new();
    if !is_grouplike(h, c) {
        report.push(Check::fail(
            "lemma.grouplike",
            Witness {
                indices: vec![],
                lhs: Value::Tensor(c.clone()),
                rhs: Value::Note("not grouplike".into()),
            },
        ));
        return Ok(report);
    }
    report.push(Check::pass("lemma.grouplike"));
    let sc = h.apply_antipode(c);
    let one = h.unit().clone().with_variance(Variance::Element);
    let inv_ok = h.mul(c, &sc) == one && h.mul(&sc, c) == one;
    report.push(Check::expect(
        "lemma.inverse",
        inv_ok,
        Value::Tensor(h.mul(c, &sc)),
        Value::Tensor(one.clone()),
    ));
    if !is_grouplike(h, &sc) {
        report.push(Check::fail(
            "lemma.antipode_grouplike",
            Witness {
                indices: vec![],
                lhs: Value::Tensor(sc),
                rhs: Value::Note("not grouplike".into()),
            },
        ));
        return Ok(report);
    }
    let id = Matrix::identity(n);
    let th = theta_c(h, c)?;
    let th_inv = theta_c(h, &sc)?;
    let q = q_c(h, sigma, c, ceiling)?;
    let r = r_c(h, sigma, c, ceiling)?;
    let q_inv = q_c(h, sigma, &sc, ceiling)?;
    let r_inv = r_c(h, sigma, &sc, ceiling)?;
    report.push(matrix_check("lemma.theta_r", &product(&th, &th_inv), &r));
    report.push(matrix_check("lemma.theta_r_inverse", &product(&th_inv, &th), &r_inv));
    report.push(matrix_check("lemma.q_r", &product(&q, &r), &id));
    report.push(matrix_check("lemma.r_q", &product(&r, &q), &id));
    match th.inverse() {
        Ok(inv) => {
            report.push(matrix_check("lemma.theta_inverse.left", &inv, &product(&th_inv, &q)));
            report.push(matrix_check("lemma.theta_inverse.right", &inv, &product(&q_inv, &th_inv)));
        }
        Err(_) => {
            let fail = |name: &str| {
                Check::fail(
                    name,
                    Witness {
                        indices: vec![],
                        lhs: Value::Count(th.rank()),
                        rhs: Value::Count(n),
                    },
                )
            };
            report.push(fail("lemma.theta_inverse.left"));
            report.push(fail("lemma.theta_inverse.right"));
        }
    }
    Ok(report)
}
