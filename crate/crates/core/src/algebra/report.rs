use std::fmt;

use crate::scalars::Field;
use crate::tensors::{format_terms, SparseTensor};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        })
    }
}

/// One evaluated side of a failed check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value<K> {
    Scalar(K),
    Tensor(SparseTensor<K>),
    Count(usize),
    Note(String),
}

impl<K: Field> Value<K> {
    pub fn render(&self, labels: &[String]) -> String {
        match self {
            Value::Scalar(k) => k.to_string(),
            Value::Tensor(t) => format_terms(t, labels),
            Value::Count(c) => c.to_string(),
            Value::Note(s) => s.clone(),
        }
    }
}

/// Where a check first failed: the basis tuple and both side values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness<K> {
    pub indices: Vec<usize>,
    pub lhs: Value<K>,
    pub rhs: Value<K>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check<K> {
    pub name: String,
    pub status: Status,
    /// Present iff `status == Fail`.
    pub witness: Option<Witness<K>>,
    /// Informational checks never make a report fail.
    pub informational: bool,
}

impl<K: Field> Check<K> {
    pub fn pass(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: Status::Pass,
            witness: None,
            informational: false,
        }
    }

    pub fn fail(name: impl Into<String>, witness: Witness<K>) -> Self {
        Self {
            name: name.into(),
            status: Status::Fail,
            witness: Some(witness),
            informational: false,
        }
    }

    pub fn skipped(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: Status::Skipped,
            witness: None,
            informational: false,
        }
    }

    /// Pass when `ok`, otherwise fail with a note-only witness.
    pub fn expect(name: impl Into<String>, ok: bool, lhs: Value<K>, rhs: Value<K>) -> Self {
        if ok {
            Self::pass(name)
        } else {
            Self::fail(
                name,
                Witness {
                    indices: Vec::new(),
                    lhs,
                    rhs,
                },
            )
        }
    }

    pub fn informational(mut self) -> Self {
        self.informational = true;
        self
    }

    pub fn is_failure(&self) -> bool {
        self.status == Status::Fail && !self.informational
    }

    /// `<name> PASS` or `<name> FAIL at (i,j): lhs=… rhs=…`.
    pub fn render(&self, labels: &[String]) -> String {
        let tag = if self.informational && self.status == Status::Fail {
            "WARN".to_string()
        } else {
            self.status.to_string()
        };
        match &self.witness {
            None => format!("{} {}", self.name, tag),
            Some(w) => {
                let at: Vec<&str> = w
                    .indices
                    .iter()
                    .map(|&i| labels.get(i).map_or("?", String::as_str))
                    .collect();
                format!(
                    "{} {} at ({}): lhs={} rhs={}",
                    self.name,
                    tag,
                    at.join(","),
                    w.lhs.render(labels),
                    w.rhs.render(labels)
                )
            }
        }
    }
}

/// Ordered list of named checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report<K> {
    checks: Vec<Check<K>>,
}

impl<K: Field> Default for Report<K> {
    fn default() -> Self {
        Self { checks: Vec::new() }
    }
}

impl<K: Field> Report<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check<K>) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report<K>) {
        self.checks.extend(other.checks);
    }

    pub fn checks(&self) -> &[Check<K>] {
        &self.checks
    }

    pub fn get(&self, name: &str) -> Option<&Check<K>> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self) -> bool {
        !self.checks.iter().any(Check::is_failure)
    }

    pub fn first_failure(&self) -> Option<&Check<K>> {
        self.checks.iter().find(|c| c.is_failure())
    }

    /// Marks every check as skipped, dropping witnesses.
    pub fn into_skipped(self) -> Self {
        Self {
            checks: self
                .checks
                .into_iter()
                .map(|c| Check {
                    status: Status::Skipped,
                    witness: None,
                    ..c
                })
                .collect(),
        }
    }

    pub fn render(&self, labels: &[String]) -> Vec<String> {
        self.checks.iter().map(|c| c.render(labels)).collect()
    }
}

/// Compares two sides over every tuple in `[0, n)^arity`, lexicographically.
///
/// The first tuple where the sides differ becomes the witness.
pub fn exhaustive<K: Field, E>(
    name: &str,
    n: usize,
    arity: usize,
    mut sides: impl FnMut(&[usize]) -> Result<(Value<K>, Value<K>), E>,
) -> Result<Check<K>, E> {
    for tuple in Tuples::new(n, arity) {
        let (lhs, rhs) = sides(&tuple)?;
        if lhs != rhs {
            return Ok(Check::fail(
                name,
                Witness {
                    indices: tuple,
                    lhs,
                    rhs,
                },
            ));
        }
    }
    Ok(Check::pass(name))
}

/// Lexicographic enumeration of `[0, n)^arity`.
#[derive(Debug, Clone)]
pub struct Tuples {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Tuples {
    pub fn new(n: usize, arity: usize) -> Self {
        let current = if n == 0 && arity > 0 {
            None
        } else {
            Some(vec![0; arity])
        };
        Self { n, current }
    }
}

impl Iterator for Tuples {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let mut next = out.clone();
        let mut pos = next.len();
        loop {
            if pos == 0 {
                self.current = None;
                break;
            }
            pos -= 1;
            next[pos] += 1;
            if next[pos] < self.n {
                self.current = Some(next);
                break;
            }
            next[pos] = 0;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Rational;

    #[test]
    fn tuples_are_lexicographic() {
        let all: Vec<_> = Tuples::new(2, 2).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(Tuples::new(3, 0).count(), 1);
        assert_eq!(Tuples::new(3, 3).count(), 27);
    }

    #[test]
    fn first_witness_wins() {
        let check = exhaustive::<Rational, ()>("t", 3, 2, |t| {
            let v = Value::Count(t[0] * t[1]);
            Ok((v, Value::Count(0)))
        })
        .unwrap();
        assert_eq!(check.witness.unwrap().indices, vec![1, 1]);
    }

    #[test]
    fn informational_failures_do_not_fail_report() {
        let mut r = Report::<Rational>::new();
        r.push(Check::expect("info", false, Value::Count(1), Value::Count(2)).informational());
        assert!(r.passed());
        r.push(Check::expect("hard", false, Value::Count(1), Value::Count(2)));
        assert!(!r.passed());
        assert_eq!(r.first_failure().unwrap().name, "hard");
    }
}
