use super::ast::SweedlerIdentity;
use super::parser::parse_identity;

/// The defining identities of a dual quasi-Hopf algebra, with scalar factors
/// pulled out of the arguments.
pub const CORPUS: [(&str, &str); 9] = [
    ("e1", "phi(h2,g2,f2) (h1 (g1 f1)) = phi(h1,g1,f1) ((h2 g2) f2)"),
    ("e2a", "(1 h1) = h1"),
    ("e2b", "(h1 1) = h1"),
    (
        "e3",
        "phi(h1,g1,(f1 e1)) phi((h2 g2),f2,e2) = phi(g1,f1,e1) phi(h1,(g2 f2),e2) phi(h2,g3,f3)",
    ),
    ("e4", "phi(h1,1,g1) = eps(h1) eps(g1)"),
    ("e5a", "alpha(h2) (S(h1) h3) = alpha(h1) 1"),
    ("e5b", "beta(h2) (h1 S(h3)) = beta(h1) 1"),
    ("e6a", "beta(h2) alpha(h4) phi(h1,S(h3),h5) = eps(h1)"),
    ("e6b", "alpha(h2) beta(h4) phiinv(S(h1),h3,S(h5)) = eps(h1)"),
];

pub fn builtin_corpus() -> Vec<(String, SweedlerIdentity)> {
    CORPUS
        .iter()
        .map(|(name, text)| (name.to_string(), parse_identity(text).expect("corpus identities parse")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Status;
    use crate::examples::group_algebra;
    use crate::scalars::{FieldSpec, Rational};
    use crate::sweedler::{evaluate_all, Binding};
    use crate::DEFAULT_CEILING;

    #[test]
    fn corpus_shape() {
        let c = builtin_corpus();
        assert_eq!(c.len(), 9);
        let e4 = &c[4].1;
        assert_eq!(e4.variables(), vec!["h", "g"]);
        assert_eq!(e4.lhs.depths()["h"], 1);
    }

    #[test]
    fn corpus_round_trips() {
        for (_, id) in builtin_corpus() {
            assert_eq!(parse_identity(&id.to_string()).unwrap(), id);
        }
    }

    #[test]
    fn corpus_passes_on_group_algebra() {
        let h = group_algebra::<Rational>(2, FieldSpec::Rationals);
        let r = evaluate_all(&builtin_corpus(), &h, &Binding::standard(&h), DEFAULT_CEILING).unwrap();
        assert!(r.checks().iter().all(|c| c.status == Status::Pass));
    }
}
