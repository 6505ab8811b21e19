//! Exhaustive evaluation of identities over all basis assignments.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::report::exhaustive;
use crate::algebra::{AlgebraInstance, Check, Report, Value};
use crate::convolution::ConvContext;
use crate::scalars::{Field, ScalarError};
use crate::tensors::{contract, LinMap, SparseTensor, TensorError};

use super::ast::{ElemExpr, ElemOp, ScalarFactor, Side, SweedlerIdentity};
use super::parser::{builtin_arity, is_function_name};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("`{0}` is not bound")]
    UnboundName(String),
    #[error("`{name}` is bound with arity {bound} but used with {used} argument(s)")]
    ArityMismatch { name: String, bound: usize, used: usize },
    #[error("expansion needs {terms} terms, above the ceiling of {ceiling}")]
    CostExceeded { terms: usize, ceiling: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BindingError {
    #[error("bindings line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("bindings line {line}: expected {expected} scalars, found {found}")]
    WrongCount { line: usize, expected: usize, found: usize },
    #[error("bindings line {line}: {source}")]
    Scalar { line: usize, source: ScalarError },
}

/// Basis-index tuples with coefficients.
type Terms<K> = Vec<(Vec<usize>, K)>;

/// Functionals and element operators available to identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Binding<K> {
    functionals: BTreeMap<String, SparseTensor<K>>,
    operators: BTreeMap<ElemOp, LinMap<K>>,
}

impl<K: Field> Binding<K> {
    pub fn empty() -> Self {
        Self {
            functionals: BTreeMap::new(),
            operators: BTreeMap::new(),
        }
    }

    /// `phi`, `phiinv` (when `φ` is invertible), `eps`, and, with antipode data,
    /// `alpha`, `beta`, `S`, and `Sl` (when `S` is invertible).
    pub fn standard(h: &AlgebraInstance<K>) -> Self {
        let mut b = Self::empty();
        b.functionals.insert("phi".into(), h.phi().clone());
        if let Ok(inv) = ConvContext::new(h, 3).and_then(|c| c.inverse(h.phi())) {
            b.functionals.insert("phiinv".into(), inv);
        }
        b.functionals.insert("eps".into(), h.counit().clone());
        if let Some(hd) = h.hopf() {
            b.functionals.insert("alpha".into(), hd.alpha.clone());
            b.functionals.insert("beta".into(), hd.beta.clone());
            b.operators.insert(ElemOp::S, hd.antipode.clone());
            if let Ok(inv) = hd.antipode.to_matrix().inverse() {
                b.operators.insert(ElemOp::Sl, LinMap::from_matrix(&inv));
            }
        }
        b
    }

    pub fn with_functional(mut self, name: impl Into<String>, f: SparseTensor<K>) -> Self {
        self.functionals.insert(name.into(), f);
        self
    }

    pub fn with_operator(mut self, op: ElemOp, m: LinMap<K>) -> Self {
        self.operators.insert(op, m);
        self
    }

    pub fn functional(&self, name: &str) -> Option<&SparseTensor<K>> {
        self.functionals.get(name)
    }

    pub fn operator(&self, op: ElemOp) -> Option<&LinMap<K>> {
        self.operators.get(&op)
    }
}

/// Parses lines `NAME/ARITY s0 s1 …` giving `n^ARITY` values in lexicographic index order.
/// `#` starts a comment.
pub fn parse_bindings<K: Field>(
    text: &str,
    h: &AlgebraInstance<K>,
) -> Result<Vec<(String, SparseTensor<K>)>, BindingError> {
    let n = h.dim();
    let field = h.field();
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut words = body.split_whitespace();
        let head = words.next().expect("nonempty");
        let (name, arity) = head.split_once('/').ok_or_else(|| BindingError::Syntax {
            line,
            message: format!("expected NAME/ARITY, found `{head}`"),
        })?;
        let valid_name = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            && is_function_name(name);
        if !valid_name {
            return Err(BindingError::Syntax {
                line,
                message: format!("invalid functional name `{name}`"),
            });
        }
        let arity: usize = arity.parse().map_err(|_| BindingError::Syntax {
            line,
            message: format!("invalid arity `{arity}`"),
        })?;
        if arity == 0 {
            return Err(BindingError::Syntax {
                line,
                message: "arity must be at least 1".into(),
            });
        }
        if let Some(k) = builtin_arity(name) {
            if k != arity {
                return Err(BindingError::Syntax {
                    line,
                    message: format!("`{name}` has fixed arity {k}"),
                });
            }
        }
        let values: Vec<&str> = words.collect();
        let expected = n.pow(arity as u32);
        if values.len() != expected {
            return Err(BindingError::WrongCount {
                line,
                expected,
                found: values.len(),
            });
        }
        let mut t = SparseTensor::functional(vec![n; arity]);
        for (flat, v) in values.iter().enumerate() {
            let k = K::parse_in(&field, v).map_err(|source| BindingError::Scalar { line, source })?;
            let mut idx = vec![0; arity];
            let mut rest = flat;
            for slot in idx.iter_mut().rev() {
                *slot = rest % n;
                rest /= n;
            }
            t.add_entry(idx, k);
        }
        out.push((name.to_string(), t));
    }
    Ok(out)
}

fn check_bindings<K: Field>(id: &SweedlerIdentity, b: &Binding<K>) -> Result<(), EvalError> {
    for (name, used) in id.functionals() {
        let f = b.functional(&name).ok_or_else(|| EvalError::UnboundName(name.clone()))?;
        if f.arity() != used {
            return Err(EvalError::ArityMismatch {
                name,
                bound: f.arity(),
                used,
            });
        }
    }
    for op in id.operators() {
        if b.operator(op).is_none() {
            return Err(EvalError::UnboundName(op.name().to_string()));
        }
    }
    Ok(())
}

struct Evaluator<'a, K> {
    h: &'a AlgebraInstance<K>,
    b: &'a Binding<K>,
    one: SparseTensor<K>,
}

impl<'a, K: Field> Evaluator<'a, K> {
    fn element(&self, e: &ElemExpr, env: &BTreeMap<(&str, usize), usize>) -> SparseTensor<K> {
        match e {
            ElemExpr::Var { name, sub } => self.h.basis(env[&(name.as_str(), *sub)]),
            ElemExpr::One => self.one.clone(),
            ElemExpr::Apply { op, arg } => self
                .b
                .operator(*op)
                .expect("checked")
                .apply(&self.element(arg, env))
                .expect("endomorphism of H"),
            ElemExpr::Product(a, b) => self.h.mul(&self.element(a, env), &self.element(b, env)),
        }
    }

    fn scalar(&self, sf: &ScalarFactor, env: &BTreeMap<(&str, usize), usize>) -> K {
        let f = self.b.functional(&sf.name).expect("checked");
        let mut args = sf.args.iter().map(|a| self.element(a, env));
        let first = args.next().expect("at least one argument");
        let x = args.fold(first, |acc, a| acc.outer(&a).expect("elements"));
        contract(f, &x).expect("arity checked")
    }

    /// Sums the side over the Sweedler expansions of its variables.
    fn side(
        &self,
        side: &'a Side,
        vars: &'a [String],
        tuple: &[usize],
        ceiling: usize,
    ) -> Result<Value<K>, EvalError> {
        let depths = side.depths();
        let mut expansions: Vec<(&str, Terms<K>)> = Vec::new();
        let mut total: usize = 1;
        for (v, &i) in vars.iter().zip(tuple) {
            let Some(&m) = depths.get(v) else { continue };
            let t = self.h.iterated_coproduct(m - 1, i, ceiling).map_err(cost)?;
            let terms: Vec<_> = t.iter().map(|(k, c)| (k.to_vec(), c.clone())).collect();
            total = total.saturating_mul(terms.len());
            expansions.push((v.as_str(), terms));
        }
        if total > ceiling {
            return Err(EvalError::CostExceeded { terms: total, ceiling });
        }
        let mut scalar_acc = self.h.zero();
        let mut elem_acc = self.h.zero_vec();
        let mut env: BTreeMap<(&str, usize), usize> = BTreeMap::new();
        let mut odometer = vec![0usize; expansions.len()];
        if expansions.iter().all(|(_, t)| !t.is_empty()) {
            loop {
                let mut coef = self.h.one();
                for ((name, terms), &pos) in expansions.iter().zip(&odometer) {
                    let (legs, c) = &terms[pos];
                    coef = coef * c;
                    for (j, &leg) in legs.iter().enumerate() {
                        env.insert((name, j + 1), leg);
                    }
                }
                for sf in &side.scalars {
                    if coef.is_zero() {
                        break;
                    }
                    coef = coef * self.scalar(sf, &env);
                }
                if !coef.is_zero() {
                    match &side.element {
                        None => scalar_acc = scalar_acc + coef,
                        Some(e) => {
                            elem_acc = elem_acc.add(&self.element(e, &env).scale(&coef)).expect("same shape");
                        }
                    }
                }
                let mut k = odometer.len();
                loop {
                    if k == 0 {
                        break;
                    }
                    k -= 1;
                    odometer[k] += 1;
                    if odometer[k] < expansions[k].1.len() {
                        break;
                    }
                    odometer[k] = 0;
                    if k == 0 {
                        k = usize::MAX;
                        break;
                    }
                }
                if k == usize::MAX || odometer.is_empty() {
                    break;
                }
            }
        }
        Ok(match side.element {
            None => Value::Scalar(scalar_acc),
            Some(_) => Value::Tensor(elem_acc),
        })
    }
}

fn cost(e: TensorError) -> EvalError {
    match e {
        TensorError::CostExceeded { terms, ceiling } => EvalError::CostExceeded { terms, ceiling },
        other => unreachable!("iterated coproduct of a basis vector: {other}"),
    }
}

/// Checks `id` for every assignment of basis elements to its free variables,
/// in lexicographic order; the first failing assignment is the witness.
pub fn evaluate_identity<K: Field>(
    id: &SweedlerIdentity,
    h: &AlgebraInstance<K>,
    binding: &Binding<K>,
    name: &str,
    ceiling: usize,
) -> Result<Check<K>, EvalError> {
    check_bindings(id, binding)?;
    let vars = id.variables();
    let ev = Evaluator {
        h,
        b: binding,
        one: h.unit().clone().with_variance(crate::tensors::Variance::Element),
    };
    exhaustive(name, h.dim(), vars.len(), |t| {
        Ok((ev.side(&id.lhs, &vars, t, ceiling)?, ev.side(&id.rhs, &vars, t, ceiling)?))
    })
}

/// Evaluates several named identities into one report.
pub fn evaluate_all<K: Field>(
    ids: &[(String, SweedlerIdentity)],
    h: &AlgebraInstance<K>,
    binding: &Binding<K>,
    ceiling: usize,
) -> Result<Report<K>, EvalError> {
    let mut r = Report::new();
    for (name, id) in ids {
        r.push(evaluate_identity(id, h, binding, name, ceiling)?);
    }
    Ok(r)
}
