//! Hand-coded axiom checks, evaluated by direct contraction of structure constants.
//!
//! Checks whose names match a built-in Sweedler identity (`e1` … `e6b`)
//! enumerate the same variable tuples in the same order as the DSL
//! evaluator, so both paths report the same first witness.

use std::convert::Infallible;
use std::str::FromStr;

use thiserror::Error;

use crate::convolution::ConvContext;
use crate::scalars::Field;
use crate::tensors::SparseTensor;

use super::instance::AlgebraInstance;
use super::report::{exhaustive, Check, Report, Value};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("instance has no antipode/alpha/beta data")]
    MissingAntipodeData,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Level {
    Coalgebra,
    Bialgebra,
    Hopf,
}

impl FromStr for Level {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "coalgebra" => Ok(Level::Coalgebra),
            "bialgebra" => Ok(Level::Bialgebra),
            "hopf" => Ok(Level::Hopf),
            other => Err(format!("unknown level `{other}` (coalgebra|bialgebra|hopf)")),
        }
    }
}

fn all<K: Field>(name: &str, n: usize, arity: usize, mut f: impl FnMut(&[usize]) -> (Value<K>, Value<K>)) -> Check<K> {
    match exhaustive::<K, Infallible>(name, n, arity, |t| Ok(f(t))) {
        Ok(c) => c,
        Err(never) => match never {},
    }
}

/// Expands `e_i` into `legs` Sweedler legs by repeatedly splitting the first leg.
fn split_first<K: Field>(h: &AlgebraInstance<K>, i: usize, legs: usize) -> Vec<(Vec<usize>, K)> {
    let mut terms = vec![(vec![i], h.one())];
    for _ in 1..legs {
        let mut next = Vec::new();
        for (idx, c) in &terms {
            for (a, b, v) in h.delta(idx[0]) {
                let mut k = vec![a, b];
                k.extend_from_slice(&idx[1..]);
                next.push((k, c.clone() * v));
            }
        }
        terms = next;
    }
    terms
}

fn element<K: Field>(t: SparseTensor<K>) -> Value<K> {
    Value::Tensor(t)
}

/// Coassociativity and both counit laws.
pub fn check_coalgebra<K: Field>(h: &AlgebraInstance<K>) -> Report<K> {
    let n = h.dim();
    let mut r = Report::new();
    r.push(all("coassoc", n, 1, |t| {
        let mut lhs = SparseTensor::element(vec![n; 3]);
        let mut rhs = SparseTensor::element(vec![n; 3]);
        for (a, b, c) in h.delta(t[0]) {
            for (a1, a2, c2) in h.delta(a) {
                lhs.add_entry(vec![a1, a2, b], c.clone() * c2);
            }
            for (b1, b2, c2) in h.delta(b) {
                rhs.add_entry(vec![a, b1, b2], c.clone() * c2);
            }
        }
        (element(lhs), element(rhs))
    }));
    r.push(all("counit.left", n, 1, |t| {
        let mut lhs = h.zero_vec();
        for (a, b, c) in h.delta(t[0]) {
            lhs.add_entry(vec![b], h.eps(a) * c);
        }
        (element(lhs), element(h.basis(t[0])))
    }));
    r.push(all("counit.right", n, 1, |t| {
        let mut lhs = h.zero_vec();
        for (a, b, c) in h.delta(t[0]) {
            lhs.add_entry(vec![a], h.eps(b) * c);
        }
        (element(lhs), element(h.basis(t[0])))
    }));
    r
}

/// Coalgebra-map conditions on `M` and `u`, quasi-associativity, unitality,
/// the 3-cocycle condition and normalization of `φ`, and invertibility of `φ`.
pub fn check_dual_quasi_bialgebra<K: Field>(h: &AlgebraInstance<K>) -> Report<K> {
    let n = h.dim();
    let phi = h.phi();
    let mut r = Report::new();

    r.push(all("mult.comult", n, 2, |t| {
        let mut lhs = SparseTensor::element(vec![n, n]);
        for (k, m) in h.mul_basis(t[0], t[1]) {
            for (x, y, c) in h.delta(k) {
                lhs.add_entry(vec![x, y], m.clone() * c);
            }
        }
        let mut rhs = SparseTensor::element(vec![n, n]);
        for (a1, a2, ca) in h.delta(t[0]) {
            for (b1, b2, cb) in h.delta(t[1]) {
                let coef = ca.clone() * cb;
                for (x, m1) in h.mul_basis(a1, b1) {
                    for (y, m2) in h.mul_basis(a2, b2) {
                        rhs.add_entry(vec![x, y], coef.clone() * m1 * m2);
                    }
                }
            }
        }
        (element(lhs), element(rhs))
    }));
    r.push(all("mult.counit", n, 2, |t| {
        let lhs = h
            .mul_basis(t[0], t[1])
            .fold(h.zero(), |acc, (k, m)| acc + m.clone() * h.eps(k));
        (Value::Scalar(lhs), Value::Scalar(h.eps(t[0]) * h.eps(t[1])))
    }));
    r.push(all("unit.comult", n, 0, |_| {
        let mut lhs = SparseTensor::element(vec![n, n]);
        for (i, u) in h.unit().iter() {
            for (x, y, c) in h.delta(i[0]) {
                lhs.add_entry(vec![x, y], u.clone() * c);
            }
        }
        let rhs = h.unit().outer(h.unit()).expect("same variance");
        (element(lhs), element(rhs))
    }));
    r.push(all("unit.counit", n, 0, |_| {
        (Value::Scalar(h.eval(h.counit(), h.unit())), Value::Scalar(h.one()))
    }));

    // h1(g1 f1) φ(h2,g2,f2) = φ(h1,g1,f1) (h2 g2) f2
    r.push(all("e1", n, 3, |t| {
        let mut lhs = h.zero_vec();
        let mut rhs = h.zero_vec();
        for (h1, h2, ch) in h.delta(t[0]) {
            for (g1, g2, cg) in h.delta(t[1]) {
                for (f1, f2, cf) in h.delta(t[2]) {
                    let coef = ch.clone() * cg * cf;
                    let p2 = h.phi_at(h2, g2, f2);
                    if !p2.is_zero() {
                        let gf = h.mul(&h.basis(g1), &h.basis(f1));
                        let v = h.mul(&h.basis(h1), &gf);
                        lhs = lhs.add(&v.scale(&(coef.clone() * &p2))).expect("shape");
                    }
                    let p1 = h.phi_at(h1, g1, f1);
                    if !p1.is_zero() {
                        let hg = h.mul(&h.basis(h2), &h.basis(g2));
                        let v = h.mul(&hg, &h.basis(f2));
                        rhs = rhs.add(&v.scale(&(coef * &p1))).expect("shape");
                    }
                }
            }
        }
        (element(lhs), element(rhs))
    }));
    r.push(all("e2a", n, 1, |t| {
        (element(h.mul(h.unit(), &h.basis(t[0]))), element(h.basis(t[0])))
    }));
    r.push(all("e2b", n, 1, |t| {
        (element(h.mul(&h.basis(t[0]), h.unit())), element(h.basis(t[0])))
    }));

    // φ(h1,g1,f1e1) φ(h2g2,f2,e2) = φ(g1,f1,e1) φ(h1,g2f2,e2) φ(h2,g3,f3)
    r.push(all("e3", n, 4, |t| {
        let (th, tg, tf, te) = (t[0], t[1], t[2], t[3]);
        let mut lhs = h.zero();
        for (h1, h2, ch) in h.delta(th) {
            for (g1, g2, cg) in h.delta(tg) {
                let hg = h.mul(&h.basis(h2), &h.basis(g2));
                for (f1, f2, cf) in h.delta(tf) {
                    for (e1, e2, ce) in h.delta(te) {
                        let fe = h.mul(&h.basis(f1), &h.basis(e1));
                        let a = h.eval3(phi, &h.basis(h1), &h.basis(g1), &fe);
                        if a.is_zero() {
                            continue;
                        }
                        let b = h.eval3(phi, &hg, &h.basis(f2), &h.basis(e2));
                        lhs = lhs + ch.clone() * cg * cf * ce * a * b;
                    }
                }
            }
        }
        let mut rhs = h.zero();
        for (gs, cg) in split_first(h, tg, 3) {
            for (fs, cf) in split_first(h, tf, 3) {
                for (h1, h2, ch) in h.delta(th) {
                    for (e1, e2, ce) in h.delta(te) {
                        let a = h.phi_at(gs[0], fs[0], e1);
                        let c = h.phi_at(h2, gs[2], fs[2]);
                        if a.is_zero() || c.is_zero() {
                            continue;
                        }
                        let gf = h.mul(&h.basis(gs[1]), &h.basis(fs[1]));
                        let b = h.eval3(phi, &h.basis(h1), &gf, &h.basis(e2));
                        rhs = rhs + cg.clone() * &cf * ch * ce * a * b * c;
                    }
                }
            }
        }
        (Value::Scalar(lhs), Value::Scalar(rhs))
    }));
    // φ(h,1,g) = ε(h)ε(g)
    r.push(all("e4", n, 2, |t| {
        let lhs = h.eval3(phi, &h.basis(t[0]), h.unit(), &h.basis(t[1]));
        (Value::Scalar(lhs), Value::Scalar(h.eps(t[0]) * h.eps(t[1])))
    }));
    r.push(match ConvContext::new(h, 3).and_then(|ctx| ctx.inverse(phi)) {
        Ok(_) => Check::pass("phi.invertible"),
        Err(e) => Check::expect(
            "phi.invertible",
            false,
            Value::Note(e.to_string()),
            Value::Note("two-sided inverse".into()),
        ),
    });
    r
}

/// Anti-coalgebra property of `S`, and the `α`/`β` identities.
///
/// `α`/`β` invertibility is recorded as informational.
pub fn check_dual_quasi_hopf<K: Field>(h: &AlgebraInstance<K>) -> Result<Report<K>, CheckError> {
    let hd = h.hopf().ok_or(CheckError::MissingAntipodeData)?;
    let n = h.dim();
    let (alpha, beta) = (&hd.alpha, &hd.beta);
    let s = |i: usize| h.apply_antipode(&h.basis(i));
    let mut r = Report::new();

    r.push(all("antipode.comult", n, 1, |t| {
        let mut lhs = SparseTensor::element(vec![n, n]);
        for (k, v) in s(t[0]).iter() {
            for (x, y, c) in h.delta(k[0]) {
                lhs.add_entry(vec![x, y], v.clone() * c);
            }
        }
        let mut rhs = SparseTensor::element(vec![n, n]);
        for (a, b, c) in h.delta(t[0]) {
            let sb = s(b).outer(&s(a)).expect("same variance");
            rhs = rhs.add(&sb.scale(c)).expect("shape");
        }
        (element(lhs), element(rhs))
    }));
    r.push(all("antipode.counit", n, 1, |t| {
        (Value::Scalar(h.eval(h.counit(), &s(t[0]))), Value::Scalar(h.eps(t[0])))
    }));
    // S(h1) α(h2) h3 = α(h) 1
    r.push(all("e5a", n, 1, |t| {
        let mut lhs = h.zero_vec();
        for (legs, c) in split_first(h, t[0], 3) {
            let a = alpha.coeff(&[legs[1]]);
            if !a.is_zero() {
                lhs = lhs.add(&h.mul(&s(legs[0]), &h.basis(legs[2])).scale(&(c * a))).expect("shape");
            }
        }
        (element(lhs), element(h.unit().scale(&alpha.coeff(&[t[0]]))))
    }));
    // h1 β(h2) S(h3) = β(h) 1
    r.push(all("e5b", n, 1, |t| {
        let mut lhs = h.zero_vec();
        for (legs, c) in split_first(h, t[0], 3) {
            let b = beta.coeff(&[legs[1]]);
            if !b.is_zero() {
                lhs = lhs.add(&h.mul(&h.basis(legs[0]), &s(legs[2])).scale(&(c * b))).expect("shape");
            }
        }
        (element(lhs), element(h.unit().scale(&beta.coeff(&[t[0]]))))
    }));
    // φ(h1 β(h2), S(h3), α(h4) h5) = ε(h)
    r.push(all("e6a", n, 1, |t| {
        let mut lhs = h.zero();
        for (legs, c) in split_first(h, t[0], 5) {
            let coef = c * beta.coeff(&[legs[1]]) * alpha.coeff(&[legs[3]]);
            if !coef.is_zero() {
                lhs = lhs + coef * h.eval3(h.phi(), &h.basis(legs[0]), &s(legs[2]), &h.basis(legs[4]));
            }
        }
        (Value::Scalar(lhs), Value::Scalar(h.eps(t[0])))
    }));
    // φ⁻¹(S(h1), α(h2) h3, β(h4) S(h5)) = ε(h)
    let phi_inv = ConvContext::new(h, 3).and_then(|ctx| ctx.inverse(h.phi()));
    r.push(match &phi_inv {
        Ok(phi_inv) => all("e6b", n, 1, |t| {
            let mut lhs = h.zero();
            for (legs, c) in split_first(h, t[0], 5) {
                let coef = c * alpha.coeff(&[legs[1]]) * beta.coeff(&[legs[3]]);
                if !coef.is_zero() {
                    lhs = lhs + coef * h.eval3(phi_inv, &s(legs[0]), &h.basis(legs[2]), &s(legs[4]));
                }
            }
            (Value::Scalar(lhs), Value::Scalar(h.eps(t[0])))
        }),
        Err(e) => Check::expect("e6b", false, Value::Note(e.to_string()), Value::Note("phi invertible".into())),
    });
    let ctx = ConvContext::new(h, 1).expect("arity 1");
    for (name, f) in [("alpha.invertible", alpha), ("beta.invertible", beta)] {
        let ok = ctx.inverse(f).is_ok();
        r.push(
            Check::expect(name, ok, Value::Note("not invertible".into()), Value::Note("invertible".into()))
                .informational(),
        );
    }
    Ok(r)
}

/// Runs the checks up to `level`; a stage whose predecessor failed is reported as skipped.
pub fn check_level<K: Field>(h: &AlgebraInstance<K>, level: Level) -> Result<Report<K>, CheckError> {
    if level == Level::Hopf && h.hopf().is_none() {
        return Err(CheckError::MissingAntipodeData);
    }
    let mut report = check_coalgebra(h);
    if level >= Level::Bialgebra {
        let ok = report.passed();
        let bi = check_dual_quasi_bialgebra(h);
        report.extend(if ok { bi } else { bi.into_skipped() });
    }
    if level >= Level::Hopf {
        let ok = report.passed();
        let hopf = check_dual_quasi_hopf(h)?;
        report.extend(if ok { hopf } else { hopf.into_skipped() });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::report::Status;
    use crate::examples::*;
    use crate::scalars::{FieldSpec, Rational};

    fn q(v: i64) -> Rational {
        Rational::from_i64_in(&FieldSpec::Rationals, v)
    }

    fn kw2() -> AlgebraInstance<Rational> {
        twisted_group_algebra(&CyclicGroupSpec::new(2, FieldSpec::Rationals, q(-1)).unwrap()).unwrap()
    }

    #[test]
    fn group_algebra_passes_everything() {
        let h = group_algebra::<Rational>(2, FieldSpec::Rationals);
        let r = check_level(&h, Level::Hopf).unwrap();
        assert!(r.passed(), "{:?}", r.render(h.labels()));
        assert!(r.checks().iter().all(|c| c.status == Status::Pass));
    }

    #[test]
    fn h4_passes_everything() {
        let h = sweedler_h4::<Rational>(FieldSpec::Rationals).unwrap();
        let r = check_level(&h, Level::Hopf).unwrap();
        assert!(r.passed(), "{:?}", r.render(h.labels()));
    }

    #[test]
    fn corrupted_h4_comult_fails_coassoc_at_x() {
        let h = sweedler_h4::<Rational>(FieldSpec::Rationals).unwrap();
        let bad = mutate(&h, &Mutation::corrupt_h4_comult()).unwrap();
        let r = check_level(&bad, Level::Hopf).unwrap();
        let c = r.get("coassoc").unwrap();
        assert_eq!(c.status, Status::Fail);
        assert_eq!(c.witness.as_ref().unwrap().indices, vec![bad.index_of("x").unwrap()]);
        // later stages are skipped
        assert_eq!(r.get("e3").unwrap().status, Status::Skipped);
    }

    #[test]
    fn non_cocycle_fails_e3() {
        let h = group_algebra::<Rational>(2, FieldSpec::Rationals);
        let bad = mutate(&h, &Mutation::non_cocycle_z2()).unwrap();
        let r = check_dual_quasi_bialgebra(&bad);
        assert!(r.get("e1").unwrap().status == Status::Pass);
        let c = r.get("e3").unwrap();
        assert_eq!(c.status, Status::Fail);
        // φ(g^a,g^b,g^c) = (−1)^{ab}: the first failing (h,g,f,e) has h = g = g
        let w = c.witness.as_ref().unwrap();
        assert_eq!(&w.indices[..2], &[1, 1]);
        assert_ne!(w.lhs, w.rhs);
    }

    #[test]
    fn twisted_beta_is_needed() {
        let h = kw2();
        assert!(check_level(&h, Level::Hopf).unwrap().passed());
        let bad = mutate(&h, &Mutation::beta_eps_on_twist()).unwrap();
        let r = check_dual_quasi_hopf(&bad).unwrap();
        // e5b only sees β(g)·g·g = β(g)·1, so it still holds
        assert_eq!(r.get("e5b").unwrap().status, Status::Pass);
        let e6 = r.get("e6a").unwrap();
        assert_eq!(e6.status, Status::Fail);
        assert_eq!(e6.witness.as_ref().unwrap().indices, vec![1]);
        assert_eq!(e6.witness.as_ref().unwrap().lhs, Value::Scalar(q(-1)));
    }

    #[test]
    fn flipped_phi_fails_e6() {
        let bad = mutate(&kw2(), &Mutation::flip_phi_ggg()).unwrap();
        let r = check_level(&bad, Level::Hopf).unwrap();
        assert_eq!(r.first_failure().unwrap().name, "e6a");
        assert_eq!(r.get("e5b").unwrap().status, Status::Pass);
    }

    #[test]
    fn missing_antipode_is_an_error() {
        let mut parts = group_algebra::<Rational>(2, FieldSpec::Rationals).into_parts();
        parts.hopf = None;
        let h = AlgebraInstance::from_parts(parts).unwrap();
        assert_eq!(check_dual_quasi_hopf(&h), Err(CheckError::MissingAntipodeData));
        assert!(check_level(&h, Level::Bialgebra).unwrap().passed());
    }

    #[test]
    fn level_parsing() {
        assert_eq!("hopf".parse::<Level>(), Ok(Level::Hopf));
        assert!("ring".parse::<Level>().is_err());
    }
}
