use std::collections::BTreeMap;
use std::fmt;

/// Unary operators on elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ElemOp {
    /// The antipode.
    S,
    /// Its left inverse.
    Sl,
}

impl ElemOp {
    pub fn name(self) -> &'static str {
        match self {
            ElemOp::S => "S",
            ElemOp::Sl => "Sl",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElemExpr {
    /// Sweedler leg `name_sub`, `sub ≥ 1`.
    Var { name: String, sub: usize },
    /// The unit `1`.
    One,
    Apply { op: ElemOp, arg: Box<ElemExpr> },
    /// `(a b)`; the multiplication need not be associative.
    Product(Box<ElemExpr>, Box<ElemExpr>),
}

impl ElemExpr {
    pub fn var(name: &str, sub: usize) -> Self {
        ElemExpr::Var {
            name: name.to_string(),
            sub,
        }
    }

    pub fn apply(op: ElemOp, arg: ElemExpr) -> Self {
        ElemExpr::Apply { op, arg: Box::new(arg) }
    }

    pub fn product(a: ElemExpr, b: ElemExpr) -> Self {
        ElemExpr::Product(Box::new(a), Box::new(b))
    }

    pub(crate) fn visit_vars<'a>(&'a self, f: &mut impl FnMut(&'a str, usize)) {
        match self {
            ElemExpr::Var { name, sub } => f(name, *sub),
            ElemExpr::One => {}
            ElemExpr::Apply { arg, .. } => arg.visit_vars(f),
            ElemExpr::Product(a, b) => {
                a.visit_vars(f);
                b.visit_vars(f);
            }
        }
    }

    pub(crate) fn visit_ops(&self, f: &mut impl FnMut(ElemOp)) {
        match self {
            ElemExpr::Var { .. } | ElemExpr::One => {}
            ElemExpr::Apply { op, arg } => {
                f(*op);
                arg.visit_ops(f);
            }
            ElemExpr::Product(a, b) => {
                a.visit_ops(f);
                b.visit_ops(f);
            }
        }
    }
}

impl fmt::Display for ElemExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElemExpr::Var { name, sub } => write!(f, "{name}{sub}"),
            ElemExpr::One => write!(f, "1"),
            ElemExpr::Apply { op, arg } => write!(f, "{}({arg})", op.name()),
            ElemExpr::Product(a, b) => write!(f, "({a} {b})"),
        }
    }
}

/// A functional applied to element arguments, e.g. `phi(h1, g1, (f1 e1))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarFactor {
    pub name: String,
    pub args: Vec<ElemExpr>,
}

impl fmt::Display for ScalarFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = self.args.iter().map(ToString::to_string).collect();
        write!(f, "{}({})", self.name, args.join(","))
    }
}

/// A product of scalar factors and at most one element expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Side {
    pub scalars: Vec<ScalarFactor>,
    pub element: Option<ElemExpr>,
}

impl Side {
    pub fn is_scalar(&self) -> bool {
        self.element.is_none()
    }

    /// Variables in traversal order (scalars first, then the element), with repeats.
    pub(crate) fn occurrences(&self) -> Vec<(&str, usize)> {
        let mut out = Vec::new();
        for sf in &self.scalars {
            for a in &sf.args {
                a.visit_vars(&mut |n, s| out.push((n, s)));
            }
        }
        if let Some(e) = &self.element {
            e.visit_vars(&mut |n, s| out.push((n, s)));
        }
        out
    }

    /// Maximal subscript of each variable on this side.
    pub fn depths(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for (n, s) in self.occurrences() {
            let e = out.entry(n.to_string()).or_insert(0);
            *e = (*e).max(s);
        }
        out
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.scalars.iter().map(ToString::to_string).collect();
        if let Some(e) = &self.element {
            parts.push(e.to_string());
        }
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweedlerIdentity {
    pub lhs: Side,
    pub rhs: Side,
}

impl SweedlerIdentity {
    /// Free variables in order of first appearance: left scalars, left element,
    /// right scalars, right element.
    pub fn variables(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for side in [&self.lhs, &self.rhs] {
            for (n, _) in side.occurrences() {
                if !out.iter().any(|v| v == n) {
                    out.push(n.to_string());
                }
            }
        }
        out
    }

    pub fn is_scalar(&self) -> bool {
        self.lhs.is_scalar()
    }

    /// Functional names with the arities they are used at, in first-use order.
    pub fn functionals(&self) -> Vec<(String, usize)> {
        let mut out: Vec<(String, usize)> = Vec::new();
        for side in [&self.lhs, &self.rhs] {
            for sf in &side.scalars {
                let key = (sf.name.clone(), sf.args.len());
                if !out.contains(&key) {
                    out.push(key);
                }
            }
        }
        out
    }

    /// Element operators used anywhere in the identity.
    pub fn operators(&self) -> Vec<ElemOp> {
        let mut out = Vec::new();
        let mut push = |op| {
            if !out.contains(&op) {
                out.push(op);
            }
        };
        for side in [&self.lhs, &self.rhs] {
            for sf in &side.scalars {
                for a in &sf.args {
                    a.visit_ops(&mut push);
                }
            }
            if let Some(e) = &side.element {
                e.visit_ops(&mut push);
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for SweedlerIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}
