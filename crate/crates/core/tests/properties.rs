mod common;

use std::collections::BTreeMap;

use common::{visit, Visitor};
use proptest::prelude::*;

use dqhopf::sweedler::{
    builtin_corpus, evaluate_identity, parse_identity, Binding, ElemExpr, ElemOp, ScalarFactor, Side,
    SweedlerIdentity,
};
use dqhopf::{AlgebraInstance, Field, DEFAULT_CEILING};

const VARS: [&str; 3] = ["h", "g", "f"];

fn leaf() -> impl Strategy<Value = ElemExpr> {
    prop_oneof![
        4 => (0..VARS.len()).prop_map(|i| ElemExpr::var(VARS[i], 0)),
        1 => Just(ElemExpr::One),
    ]
}

fn elem() -> impl Strategy<Value = ElemExpr> {
    leaf().prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ElemExpr::product(a, b)),
            inner.clone().prop_map(|a| ElemExpr::apply(ElemOp::S, a)),
            inner.prop_map(|a| ElemExpr::apply(ElemOp::Sl, a)),
        ]
    })
}

fn factor() -> impl Strategy<Value = ScalarFactor> {
    let named = |name: &'static str, arity: usize| {
        prop::collection::vec(elem(), arity).prop_map(move |args| ScalarFactor {
            name: name.to_string(),
            args,
        })
    };
    prop_oneof![named("phi", 3), named("eps", 1), named("alpha", 1), named("beta", 1), named("u", 2)]
}

fn raw_side(scalar: bool) -> impl Strategy<Value = Side> {
    let element = if scalar { Just(None).boxed() } else { elem().prop_map(Some).boxed() };
    // a side needs at least one factor
    let min = usize::from(scalar);
    (prop::collection::vec(factor(), min..3), element).prop_map(|(scalars, element)| Side { scalars, element })
}

fn vars_of(side: &Side) -> Vec<String> {
    let mut out = Vec::new();
    let mut collect = |e: &ElemExpr| {
        collect_vars(e, &mut out);
    };
    side.scalars.iter().flat_map(|f| &f.args).for_each(&mut collect);
    if let Some(e) = &side.element {
        collect(e);
    }
    out
}

fn collect_vars(e: &ElemExpr, out: &mut Vec<String>) {
    match e {
        ElemExpr::Var { name, .. } => {
            if !out.contains(name) {
                out.push(name.clone());
            }
        }
        ElemExpr::One => {}
        ElemExpr::Apply { arg, .. } => collect_vars(arg, out),
        ElemExpr::Product(a, b) => {
            collect_vars(a, out);
            collect_vars(b, out);
        }
    }
}

fn number(e: &mut ElemExpr, next: &mut BTreeMap<String, usize>) {
    match e {
        ElemExpr::Var { name, sub } => {
            let n = next.entry(name.clone()).or_insert(0);
            *n += 1;
            *sub = *n;
        }
        ElemExpr::One => {}
        ElemExpr::Apply { arg, .. } => number(arg, next),
        ElemExpr::Product(a, b) => {
            number(a, next);
            number(b, next);
        }
    }
}

/// Gives every occurrence a distinct consecutive subscript and makes both
/// sides mention the same variables.
fn well_formed(mut lhs: Side, mut rhs: Side) -> SweedlerIdentity {
    let (lv, rv) = (vars_of(&lhs), vars_of(&rhs));
    for (side, missing) in [(&mut lhs, &lv), (&mut rhs, &rv)] {
        for v in VARS {
            if (lv.iter().chain(&rv)).any(|x| x == v) && !missing.iter().any(|x| x == v) {
                side.scalars.push(ScalarFactor {
                    name: "eps".into(),
                    args: vec![ElemExpr::var(v, 0)],
                });
            }
        }
    }
    for side in [&mut lhs, &mut rhs] {
        let mut next = BTreeMap::new();
        for f in &mut side.scalars {
            for a in &mut f.args {
                number(a, &mut next);
            }
        }
        if let Some(e) = &mut side.element {
            number(e, &mut next);
        }
    }
    SweedlerIdentity { lhs, rhs }
}

fn identity() -> impl Strategy<Value = SweedlerIdentity> {
    any::<bool>()
        .prop_flat_map(|scalar| (raw_side(scalar), raw_side(scalar)))
        .prop_map(|(l, r)| well_formed(l, r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn printed_identities_parse_back(id in identity()) {
        let text = id.to_string();
        let parsed = parse_identity(&text);
        prop_assert_eq!(parsed.as_ref(), Ok(&id), "{}", text);
        prop_assert_eq!(parsed.unwrap().to_string(), text);
    }
}

/// Appends `eps(v_{m+1})` to one side, where `m` is the depth of `v` there.
fn pad(id: &SweedlerIdentity, var: &str, on_left: bool) -> SweedlerIdentity {
    let mut out = id.clone();
    let side = if on_left { &mut out.lhs } else { &mut out.rhs };
    let depth = side.depths().get(var).copied().unwrap_or(0);
    side.scalars.push(ScalarFactor {
        name: "eps".into(),
        args: vec![ElemExpr::var(var, depth + 1)],
    });
    out
}

struct Padding {
    corpus_index: usize,
    var_index: usize,
    on_left: bool,
}

impl Visitor for Padding {
    fn visit<K: Field>(&mut self, name: &str, h: &AlgebraInstance<K>) {
        let corpus = builtin_corpus();
        let (cname, id) = &corpus[self.corpus_index % corpus.len()];
        let vars = id.variables();
        let var = &vars[self.var_index % vars.len()];
        let padded = pad(id, var, self.on_left);
        assert_eq!(parse_identity(&padded.to_string()).unwrap(), padded);
        let b = Binding::standard(h);
        let before = evaluate_identity(id, h, &b, cname, DEFAULT_CEILING).unwrap();
        let after = evaluate_identity(&padded, h, &b, cname, DEFAULT_CEILING).unwrap();
        assert_eq!(before.status, after.status, "{name} {cname} padded on {var}");
    }
}

// instances whose coalgebra axioms hold, mutants included
const COALGEBRAS: [&str; 8] = ["kz2", "kz3_f7", "kw2", "kw3_f7", "h4", "noncocycle", "kw2_flipped", "kw2_beta_eps"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn counit_padding_keeps_verdict(
        inst in 0..COALGEBRAS.len(),
        corpus_index in 0..9usize,
        var_index in 0..3usize,
        on_left in any::<bool>(),
    ) {
        visit(COALGEBRAS[inst], &mut Padding { corpus_index, var_index, on_left });
    }
}
